//! graph6 input, one graph per line. Blank lines are skipped; line numbers
//! are 1-based and kept for error reporting.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;

use qpe_core::{parse_graph6, Graph};

use crate::error::CliError;

pub struct Record {
    pub index: usize,
    pub source: String,
    pub line: usize,
    pub graph: Result<Graph, CliError>,
}

/// Streams the graphs of every input file in order. `-` reads stdin.
pub struct GraphReader {
    paths: std::vec::IntoIter<PathBuf>,
    current: Option<(String, Box<dyn BufRead>)>,
    line: usize,
    index: usize,
}

impl GraphReader {
    pub fn new(paths: Vec<PathBuf>) -> Self {
        GraphReader {
            paths: paths.into_iter(),
            current: None,
            line: 0,
            index: 0,
        }
    }

    fn open(path: &PathBuf) -> Result<Box<dyn BufRead>, CliError> {
        if path.as_os_str() == "-" {
            return Ok(Box::new(BufReader::new(std::io::stdin())));
        }
        let f = File::open(path).map_err(|e| CliError::io(path, e))?;
        Ok(Box::new(BufReader::new(f)))
    }
}

impl Iterator for GraphReader {
    type Item = Result<Record, CliError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.current.is_none() {
                let path = self.paths.next()?;
                match Self::open(&path) {
                    Ok(r) => self.current = Some((path.display().to_string(), r)),
                    Err(e) => return Some(Err(e)),
                }
                self.line = 0;
            }
            let (name, reader) = self.current.as_mut().expect("opened above");
            let mut buf = String::new();
            match reader.read_line(&mut buf) {
                Err(e) => {
                    let e = CliError::Io {
                        context: name.clone(),
                        source: e,
                    };
                    self.current = None;
                    return Some(Err(e));
                }
                Ok(0) => {
                    self.current = None;
                    continue;
                }
                Ok(_) => {}
            }
            self.line += 1;
            if buf.trim().is_empty() {
                continue;
            }
            let graph = parse_graph6(buf.trim()).map_err(|source| CliError::AtLine {
                path: name.clone(),
                line: self.line,
                source,
            });
            let rec = Record {
                index: self.index,
                source: name.clone(),
                line: self.line,
                graph,
            };
            self.index += 1;
            return Some(Ok(rec));
        }
    }
}

/// Reads every graph, failing on the first parse error.
pub fn read_all(paths: Vec<PathBuf>) -> Result<Vec<Graph>, CliError> {
    GraphReader::new(paths)
        .map(|r| r.and_then(|rec| rec.graph))
        .collect()
}
