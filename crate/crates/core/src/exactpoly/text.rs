//! One-line text form: `"<var>: c0 c1 … cn"`, ascending coefficients.

use num_bigint::BigInt;

use super::poly::UniPoly;
use super::{PolyError, Var};

pub fn poly_to_text(p: &UniPoly, var: Var) -> String {
    let mut s = format!("{}:", var.tag());
    if p.is_zero() {
        s.push_str(" 0");
    }
    for c in p.coeffs() {
        s.push(' ');
        s.push_str(&c.to_string());
    }
    s
}

pub fn parse_poly_text(s: &str) -> Result<(UniPoly, Var), PolyError> {
    let (tag, rest) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| PolyError::Parse("missing ':' after variable tag".into()))?;
    let var = Var::from_tag(tag.trim())
        .ok_or_else(|| PolyError::Parse(format!("unknown variable tag {:?}", tag.trim())))?;
    let coeffs = rest
        .split_whitespace()
        .map(|t| t.parse::<BigInt>().map_err(|e| PolyError::Parse(format!("{t:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() {
        return Err(PolyError::Parse("no coefficients".into()));
    }
    Ok((UniPoly::new(coeffs), var))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sextic_round_trip() {
        let line = "tau: 729 -4374 5265 -2358 450 -36 1";
        let (p, v) = parse_poly_text(line).unwrap();
        assert_eq!(v, Var::Tau);
        assert_eq!(p.degree(), Some(6));
        assert_eq!(poly_to_text(&p, v), line);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly_text("tau 1 2").is_err());
        assert!(parse_poly_text("x: 1 2").is_err());
        assert!(parse_poly_text("T: 1 two").is_err());
        assert!(parse_poly_text("T:").is_err());
        assert_eq!(poly_to_text(&UniPoly::zero(), Var::A), "a: 0");
    }

    proptest! {
        #[test]
        fn round_trip(cs in proptest::collection::vec(-1_000_000i64..1_000_000, 0..12)) {
            let p = UniPoly::from_i64s(&cs);
            for v in [Var::Lambda, Var::T, Var::Tau, Var::A] {
                let (q, w) = parse_poly_text(&poly_to_text(&p, v)).unwrap();
                prop_assert_eq!(&q, &p);
                prop_assert_eq!(w, v);
            }
        }
    }
}
