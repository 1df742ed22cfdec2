//! graph6 text encoding (n ≤ 62 only, which covers every supported size).

use thiserror::Error;


#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0:#x} outside the printable graph6 range")]
    BadByte(u8),
    #[error("graph6 body has {found} bytes, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("only graphs with at most 10 vertices are supported, got {0}")]
    TooLarge(usize),
}

pub fn to_graph6(m: usize, adj: u64) -> String {
    let pairs = m * m.saturating_sub(1) / 2;
    let mut out = vec![(m as u8) + 63];
    let mut k = 0;
    while k < pairs {
        let mut byte = 0u8;
        for b in 0..6 {
            byte <<= 1;
            if k + b < pairs && adj >> (k + b) & 1 == 1 {
                byte |= 1;
            }
        }
        out.push(byte + 63);
        k += 6;
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Vertex count and adjacency bits in column order.
pub fn from_graph6(s: &str) -> Result<(usize, u64), Graph6Error> {
    let bytes = s.trim().as_bytes();
    let (&first, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Graph6Error::BadByte(bad));
    }
    let m = (first - 63) as usize;
    if m > 10 {
        return Err(Graph6Error::TooLarge(m));
    }
    let pairs = m * m.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::Length { expected, found: body.len() });
    }
    let mut adj = 0u64;
    for (chunk, &b) in body.iter().enumerate() {
        let v = b - 63;
        for bit in 0..6 {
            let k = chunk * 6 + bit;
            if k < pairs && v >> (5 - bit) & 1 == 1 {
                adj |= 1 << k;
            }
        }
    }
    Ok((m, adj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        // standard examples: K1 = "@", empty on 2 = "A?", K2 = "A_", K4 = "C~", P3 (0-1-2) = "Bg"
        assert_eq!(to_graph6(1, 0), "@");
        assert_eq!(to_graph6(2, 0), "A?");
        assert_eq!(to_graph6(2, 1), "A_");
        assert_eq!(to_graph6(4, 0b111111), "C~");
        assert_eq!(to_graph6(3, 0b101), "Bg");
        assert_eq!(from_graph6("C~").unwrap(), (4, 0b111111));
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C~~").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(m in 1usize..=10, bits in any::<u64>()) {
            let pairs = m * (m - 1) / 2;
            let adj = if pairs == 0 { 0 } else { bits & ((1u64 << pairs) - 1) };
            prop_assert_eq!(from_graph6(&to_graph6(m, adj)).unwrap(), (m, adj));
        }
    }
}
