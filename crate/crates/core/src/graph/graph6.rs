use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const LONG_MARK: u8 = 126;
const SHORT_MAX: usize = 62;
const LONG_MAX: usize = 258_047;
const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    base: usize,
}

impl Reader<'_> {
    fn sextet(&self, i: usize) -> Result<u8> {
        let b = *self
            .bytes
            .get(i)
            .ok_or_else(|| err(self.base + i, "unexpected end of record"))?;
        if !(BIAS..=LONG_MARK).contains(&b) {
            return Err(err(
                self.base + i,
                format!("byte 0x{b:02x} outside graph6 range"),
            ));
        }
        Ok(b - BIAS)
    }
}

/// Parses one graph6 record. Trailing line terminators and an optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let mut text = line.trim_end_matches(['\n', '\r']);
    let mut base = 0;
    if let Some(rest) = text.strip_prefix(HEADER) {
        text = rest;
        base = HEADER.len();
    }
    let r = Reader {
        bytes: text.as_bytes(),
        base,
    };
    let len = r.bytes.len();
    if len == 0 {
        return Err(err(base, "empty record"));
    }

    let (n, start) = if r.bytes[0] == LONG_MARK {
        if r.bytes.get(1) == Some(&LONG_MARK) {
            return Err(err(base + 1, "graphs above 258047 nodes are not supported"));
        }
        let mut n = 0usize;
        for i in 1..4 {
            n = (n << 6) | r.sextet(i)? as usize;
        }
        if n <= SHORT_MAX {
            return Err(err(
                base + 1,
                format!("long-form header encodes small order {n}"),
            ));
        }
        (n, 4)
    } else {
        let n = r
            .sextet(0)
            .map_err(|_| err(base, format!("invalid header byte 0x{:02x}", r.bytes[0])))?;
        (n as usize, 1)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if len - start < needed {
        return Err(err(
            base + len,
            format!(
                "truncated payload: expected {needed} bytes, found {}",
                len - start
            ),
        ));
    }
    if len - start > needed {
        return Err(err(
            base + start + needed,
            format!("{} unexpected trailing bytes", len - start - needed),
        ));
    }

    let mut g = Graph::empty(n);
    let mut pos = start;
    let mut k = 0usize;
    let mut word = 0u8;
    for j in 1..n {
        for i in 0..j {
            if k.is_multiple_of(6) {
                word = r.sextet(pos)?;
                pos += 1;
            }
            if (word >> (5 - k % 6)) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes a graph as a graph6 record (no trailing newline).
///
/// # Panics
///
/// If the graph has more than 258047 nodes.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= LONG_MAX, "graph6 supports at most {LONG_MAX} nodes");
    let mut out: Vec<u8> = Vec::with_capacity(4 + n * n / 12 + 1);
    if n <= SHORT_MAX {
        out.push(BIAS + n as u8);
    } else {
        out.push(LONG_MARK);
        for shift in [12, 6, 0] {
            out.push(BIAS + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut word = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k.is_multiple_of(6) {
                out.push(BIAS + word);
                word = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        word <<= 6 - k % 6;
        out.push(BIAS + word);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decodes_small_records() {
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6("A?").unwrap(), Graph::empty(2));
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
    }

    #[test]
    fn encodes_small_graphs() {
        assert_eq!(write_graph6(&Graph::complete(2)), "A_");
        assert_eq!(write_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
    }

    #[test]
    fn five_node_reference_record() {
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc\n").unwrap(), g);
    }

    #[test]
    fn accepts_header_and_line_endings() {
        assert_eq!(
            parse_graph6(">>graph6<<Bw\r\n").unwrap(),
            Graph::complete(3)
        );
    }

    #[test]
    fn long_form_round_trip() {
        let g = Graph::cycle(70);
        let s = write_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn reports_malformed_input_with_offsets() {
        match parse_graph6("") {
            Err(Error::Graph6 { offset: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph6(" _") {
            Err(Error::Graph6 { offset: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        // K3 needs one payload byte
        match parse_graph6("B") {
            Err(Error::Graph6 { offset: 1, reason }) => assert!(reason.contains("truncated")),
            other => panic!("{other:?}"),
        }
        match parse_graph6("Bw?") {
            Err(Error::Graph6 { offset: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph6("C~\x7f") {
            Err(Error::Graph6 { offset: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph6(">>graph6<<B") {
            Err(Error::Graph6 { offset: 11, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=62).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.set_edge(i, j, true);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn round_trip(g in arb_graph()) {
            let s = write_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
