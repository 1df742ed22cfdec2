//! Per-matrix spread computation: characteristic polynomial → ρ(τ) → the
//! isolating interval of its largest root.

use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};

use crate::bohemian::{berkowitz, Sym, SymBohemian};
use crate::exactpoly::{
    largest_real_root, poly_to_text, spread_rho, squarefree_mod_prime, squarefree_part, squarefree_part_za, IsolatedRoots, Poly,
    RatInterval, UniPoly, Var, ZaPoly,
};

/// Integer characteristic polynomial of a matrix with fixed `a`, after
/// scaling by the denominator of `a` (roots scale, spreads scale uniformly).
///
/// Returns the polynomial and the scale `q`; the true spread² is the
/// computed one divided by `q²`.
pub fn scaled_charpoly(s: &SymBohemian) -> (UniPoly, BigInt) {
    let a = s.a().fixed().expect("fixed a required");
    if a.is_integer() {
        if let Some(p) = small_charpoly(s, a) {
            return (p, BigInt::one());
        }
    }
    let (m, q) = s.scaled_integer_matrix();
    (berkowitz(&m), q)
}

// i128 fast path for small integer `a`.
fn small_charpoly(s: &SymBohemian, a: &BigRational) -> Option<UniPoly> {
    let av: i64 = num_traits::ToPrimitive::to_i64(&a.to_integer())?;
    if av.abs() > 4 {
        return None;
    }
    let m = s.dim();
    let mat: Vec<Vec<i128>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if s.entry(i, j) == Sym::One { 1 } else { av as i128 })
                .collect()
        })
        .collect();
    let p = berkowitz(&mat);
    Some(UniPoly::new(p.coeffs().iter().map(|&c| BigInt::from(c)).collect()))
}

/// Deflated spread polynomial ρ(τ) as a primitive integer polynomial.
pub fn rho_of(s: &SymBohemian) -> UniPoly {
    let (p, q) = scaled_charpoly(s);
    rho_from_charpoly(&p, &q)
}

/// ρ for `p(λ)` monic over ℤ (q = 1) or for the scaled charpoly with leading
/// coefficient 1 and scale q (the scaled matrix is integer, so p is monic).
pub fn rho_from_charpoly(p: &UniPoly, q: &BigInt) -> UniPoly {
    let rho = spread_rho(p).expect("characteristic polynomials are monic");
    if q.is_one() {
        return rho;
    }
    // roots of the scaled matrix are q·λ, so τ_true = τ / q²: ρ_true(τ) = ρ(q² τ)
    let q2 = q * q;
    let mut pow = BigInt::one();
    let coeffs: Vec<BigInt> = rho
        .coeffs()
        .iter()
        .map(|c| {
            let v = c * &pow;
            pow *= &q2;
            v
        })
        .collect();
    UniPoly::new(coeffs).primitive_part()
}

/// Key used to count distinct resultants: the primitive square-free part of
/// ρ with every factor τ removed, so that only nonzero spreads matter.
pub fn rho_key(rho: &UniPoly) -> UniPoly {
    let low = rho.lowest_degree().unwrap_or(0);
    let rest = UniPoly::new(rho.coeffs()[low..].to_vec());
    if squarefree_mod_prime(&rest) {
        return rest.primitive_part();
    }
    squarefree_part(&rest)
}

/// The same over ℤ[a], with the integer content removed as well.
pub fn rho_key_symbolic(rho: &ZaPoly) -> ZaPoly {
    let sq = squarefree_part_za(rho);
    let low = sq.coeffs().iter().take_while(|c| c.is_zero()).count();
    let sq: ZaPoly = Poly::new(sq.coeffs()[low..].to_vec());
    let g = sq
        .coeffs()
        .iter()
        .flat_map(|c| c.coeffs().iter())
        .fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
    if g.is_zero() || g.is_one() {
        return sq;
    }
    Poly::new(
        sq.coeffs()
            .iter()
            .map(|c| UniPoly::new(c.coeffs().iter().map(|x| x / &g).collect()))
            .collect(),
    )
}

/// True when the key is constant, i.e. the spread vanishes identically.
pub fn is_trivial_key(key: &UniPoly) -> bool {
    key.degree().unwrap_or(0) == 0
}

pub fn is_trivial_key_symbolic(key: &ZaPoly) -> bool {
    key.degree().unwrap_or(0) == 0
}

pub fn digest_uni(key: &UniPoly) -> String {
    hex::encode(Sha256::digest(poly_to_text(key, Var::Tau).as_bytes()))
}

pub fn digest_symbolic(key: &ZaPoly) -> String {
    let mut text = String::from("tau/a:");
    for c in key.coeffs() {
        text.push_str(" [");
        text.push_str(&poly_to_text(c, Var::A));
        text.push(']');
    }
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Largest root of ρ, kept refinable.
#[derive(Clone, Debug)]
pub struct LargestRoot {
    roots: Option<(IsolatedRoots, usize)>,
}

impl LargestRoot {
    pub fn of(rho: &UniPoly, width: &BigRational) -> Self {
        let roots = largest_real_root(rho, width).expect("ρ is never the zero polynomial");
        LargestRoot { roots }
    }

    /// The isolating interval; `[0, 0]` when ρ has no real roots (m = 1).
    pub fn interval(&self) -> RatInterval {
        match &self.roots {
            Some((iso, i)) => iso.intervals()[*i].clone(),
            None => RatInterval::point(BigRational::zero()),
        }
    }

    pub fn refine(&mut self, width: &BigRational) {
        if let Some((iso, i)) = &mut self.roots {
            iso.refine(*i, width);
        }
    }

    /// Exact comparison of the largest root with `x`.
    pub fn compare(&mut self, x: &BigRational) -> Ordering {
        match &mut self.roots {
            Some((iso, i)) => iso.locate(*i, x),
            None => BigRational::zero().cmp(x),
        }
    }
}

/// The squared spread of a matrix with fixed `a` as an isolating interval.
pub fn spread_sq_interval(s: &SymBohemian, width: &BigRational) -> RatInterval {
    LargestRoot::of(&rho_of(s), width).interval()
}

/// Shared memo of the spread key and largest root, keyed by characteristic
/// polynomial. Entries stay small since large runs hold millions of them.
#[derive(Default)]
pub struct SpreadCache {
    map: DashMap<CharKey, Arc<CachedSpread>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum CharKey {
    Small(Box<[i64]>),
    Big(UniPoly, BigInt),
}

impl CharKey {
    fn of((p, q): &(UniPoly, BigInt)) -> Self {
        if q.is_one() {
            let small: Option<Box<[i64]>> = p.coeffs().iter().map(num_traits::ToPrimitive::to_i64).collect();
            if let Some(c) = small {
                return CharKey::Small(c);
            }
        }
        CharKey::Big(p.clone(), q.clone())
    }
}

pub struct CachedSpread {
    pub digest: String,
    pub trivial: bool,
    /// Characteristic polynomial λ^m.
    pub nilpotent: bool,
    interval: OnceLock<RatInterval>,
}

impl CachedSpread {
    /// Isolating interval of the largest root for any matrix `s` with this
    /// entry's characteristic polynomial; the width of the first call sticks.
    pub fn interval(&self, s: &SymBohemian, width: &BigRational) -> &RatInterval {
        self.interval.get_or_init(|| {
            if self.nilpotent {
                return RatInterval::point(BigRational::zero());
            }
            LargestRoot::of(&rho_of(s), width).interval()
        })
    }
}

impl SpreadCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, s: &SymBohemian) -> Arc<CachedSpread> {
        let cp = scaled_charpoly(s);
        let ck = CharKey::of(&cp);
        if let Some(hit) = self.map.get(&ck) {
            return hit.clone();
        }
        let nilpotent = cp.0.coeffs().iter().rev().skip(1).all(Zero::is_zero);
        let key = rho_key(&rho_from_charpoly(&cp.0, &cp.1));
        let entry = Arc::new(CachedSpread {
            digest: digest_uni(&key),
            trivial: is_trivial_key(&key),
            nilpotent,
            interval: OnceLock::new(),
        });
        self.map.entry(ck).or_insert(entry).clone()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// ρ(τ; a) for a symbolic matrix.
pub fn rho_symbolic(s: &SymBohemian) -> ZaPoly {
    spread_rho(&s.charpoly_symbolic()).expect("characteristic polynomials are monic")
}

/// ρ(τ; a₀) at a rational point, as a primitive integer polynomial in τ.
pub fn specialize(rho: &ZaPoly, a0: &BigRational) -> UniPoly {
    let coeffs: Vec<BigRational> = rho
        .coeffs()
        .iter()
        .map(|c| c.eval_rational(a0))
        .collect();
    UniPoly::from_rational(&Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bohemian::{build_fallat_xing, AValue};

    fn with_a(s: &SymBohemian, a: &BigRational) -> SymBohemian {
        s.with_a(AValue::Fixed(a.clone()))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn all_ones_is_exact() {
        for m in 2..=5 {
            let iv = spread_sq_interval(&SymBohemian::ones(m, AValue::zero()), &q(1, 1 << 20));
            assert_eq!(iv, RatInterval::point(q((m * m) as i64, 1)));
        }
    }

    #[test]
    fn rational_a_scales_back() {
        // [[a,1],[1,1]]: spread² = (a−1)² + 4
        let s = build_fallat_xing(2, 1, AValue::Fixed(q(1, 3)));
        let mut lr = LargestRoot::of(&rho_of(&s), &q(1, 1 << 20));
        assert_eq!(lr.compare(&q(40, 9)), Ordering::Equal);
    }

    #[test]
    fn specialisation_matches_fixed_route() {
        let s = SymBohemian::from_rows(&["a111", "1a11", "111a", "11aa"], AValue::Symbolic).unwrap();
        let rho = rho_symbolic(&s);
        for a0 in [q(0, 1), q(-1, 2), q(24, 25), q(3, 7)] {
            let fixed = rho_of(&with_a(&s, &a0));
            assert_eq!(specialize(&rho, &a0), fixed.primitive_part());
        }
    }

    #[test]
    fn trivial_keys() {
        let zero = SymBohemian::from_fn(3, AValue::zero(), |_, _| Sym::A);
        assert!(is_trivial_key(&rho_key(&rho_of(&zero))));
        assert!(!is_trivial_key(&rho_key(&rho_of(&SymBohemian::ones(3, AValue::zero())))));
    }

    // Diagonal (1, 1, a, a), ones elsewhere: rank 3, eigenvalues a − 1 and
    // (a + 3 ± √(a² − 2a + 17))/2, so spread (5 − a)/2 + √(a² − 2a + 17)/2.
    #[test]
    fn rank_three_runner_up() {
        let s = SymBohemian::from_rows(&["1111", "1111", "11a1", "111a"], AValue::Fixed(q(1, 2))).unwrap();
        assert_eq!(s.rank_exact(), 3);
        let key = rho_key(&rho_of(&s));
        // at a = 1/2, τ = ((9 + √65)/4)² is the larger root of 4τ² − 73τ + 4
        let quad = UniPoly::from_i64s(&[4, -73, 4]);
        let rest = key.div_exact(&quad).unwrap();
        let w = q(1, 1 << 40);
        let top = LargestRoot::of(&quad, &w).interval();
        assert!(LargestRoot::of(&rest, &w).interval().hi < top.lo);
        let want = (9.0 + 65f64.sqrt()) / 4.0;
        assert!((top.lo_f64().sqrt() - want).abs() < 1e-10);
        // (1 − a)/2 + √(a² − 2a + 17) is larger and not a root
        let other = 0.25 + 16.25f64.sqrt();
        assert!(other - want > 1e-2);
    }
}
