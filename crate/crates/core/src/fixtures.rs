//! Vendored graph6 fixtures: Rook's 4×4 and Shrikhande graphs, and the
//! srg(25,12,5,6) and srg(26,10,3,4) families, checked against SHA256SUMS.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::{parse_graph6, Graph};

const ROOK_SHRIKHANDE: &str = include_str!("../fixtures/rook_shrikhande.g6");
const SRG_25: &str = include_str!("../fixtures/srg_25_12_5_6.g6");
const SRG_26: &str = include_str!("../fixtures/srg_26_10_3_4.g6");
const SUMS: &str = include_str!("../fixtures/SHA256SUMS");

/// A vendored graph family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RookShrikhande,
    Srg25,
    Srg26,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::RookShrikhande, Family::Srg25, Family::Srg26];

    pub fn name(self) -> &'static str {
        match self {
            Family::RookShrikhande => "rook_shrikhande",
            Family::Srg25 => "srg_25_12_5_6",
            Family::Srg26 => "srg_26_10_3_4",
        }
    }

    fn file(self) -> (&'static str, &'static str) {
        match self {
            Family::RookShrikhande => ("rook_shrikhande.g6", ROOK_SHRIKHANDE),
            Family::Srg25 => ("srg_25_12_5_6.g6", SRG_25),
            Family::Srg26 => ("srg_26_10_3_4.g6", SRG_26),
        }
    }

    /// Parses the family after verifying its checksum.
    pub fn graphs(self) -> Result<Vec<Graph>> {
        let (name, text) = self.file();
        verify(name, text)?;
        parse_lines(text)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

fn parse_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_graph6)
        .collect()
}

fn hex_digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn verify(name: &str, text: &str) -> Result<()> {
    let expected = SUMS
        .lines()
        .filter_map(|l| l.split_once("  "))
        .find(|(_, file)| file.trim() == name)
        .map(|(sum, _)| sum);
    match expected {
        Some(sum) if sum == hex_digest(text) => Ok(()),
        _ => Err(Error::Checksum { name: name.into() }),
    }
}

/// Verifies every vendored file against SHA256SUMS.
pub fn verify_checksums() -> Result<()> {
    Family::ALL.iter().try_for_each(|f| {
        let (name, text) = f.file();
        verify(name, text)
    })
}

/// Rook's 4×4 graph `K4 □ K4`.
pub fn rook_4x4() -> Graph {
    Family::RookShrikhande.graphs().expect("vendored fixture")[0].clone()
}

pub fn shrikhande() -> Graph {
    Family::RookShrikhande.graphs().expect("vendored fixture")[1].clone()
}
