//! Polynomial gcd over ℤ and ℤ[a] by primitive pseudo-remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::poly::{Poly, UniPoly, ZaPoly};
use super::ring::Ring;

/// A ring with a normalized gcd (a unique factorization domain).
pub trait GcdRing: Ring {
    /// Normalized gcd; `gcd(0, x)` is the normal form of `x`.
    fn gcd_with(&self, other: &Self) -> Self;
    /// Sign of the innermost leading integer coefficient (0 for zero).
    fn lead_sign(&self) -> i32;
}

impl GcdRing for BigInt {
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn lead_sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl<R: GcdRing> GcdRing for Poly<R> {
    fn gcd_with(&self, other: &Self) -> Self {
        let c = content(self).gcd_with(&content(other));
        let g = poly_gcd(self, other).scale(&c);
        if g.lead_sign() < 0 {
            g.negate()
        } else {
            g
        }
    }

    fn lead_sign(&self) -> i32 {
        self.leading().map_or(0, R::lead_sign)
    }
}

fn content<R: GcdRing>(p: &Poly<R>) -> R {
    p.coeffs().iter().fold(R::zero(), |g, c| g.gcd_with(c))
}

/// `p` divided by its content, with positive leading sign.
pub fn primitive<R: GcdRing>(p: &Poly<R>) -> Poly<R> {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content(p);
    let q = Poly::new(
        p.coeffs()
            .iter()
            .map(|x| x.try_div(&c).expect("content divides every coefficient"))
            .collect(),
    );
    if q.lead_sign() < 0 {
        q.negate()
    } else {
        q
    }
}

/// Primitive gcd with positive leading sign; the content gcd is dropped.
pub fn poly_gcd<R: GcdRing>(p: &Poly<R>, q: &Poly<R>) -> Poly<R> {
    if p.is_zero() {
        return primitive(q);
    }
    if q.is_zero() {
        return primitive(p);
    }
    let (mut a, mut b) = (primitive(p), primitive(q));
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = primitive(&r);
    }
    primitive(&a)
}

const SQF_PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % SQF_PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

// Remainder of `a` by `b` in place, both with nonzero leading entries.
fn rem_mod(a: &mut Vec<u64>, b: &[u64]) {
    let inv = powmod(*b.last().unwrap(), SQF_PRIME - 2);
    while a.len() >= b.len() {
        let f = mulmod(*a.last().unwrap(), inv);
        let off = a.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            a[off + i] = (a[off + i] + SQF_PRIME - mulmod(f, c)) % SQF_PRIME;
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

/// Whether `p` is certainly square-free: its gcd with `p'` is trivial modulo
/// a large prime that does not divide the leading coefficient. `false` means
/// "unknown".
pub fn squarefree_mod_prime(p: &UniPoly) -> bool {
    let prime = BigInt::from(SQF_PRIME);
    let reduce = |c: &BigInt| -> u64 { u64::try_from(c.mod_floor(&prime)).expect("reduced") };
    let mut a: Vec<u64> = p.coeffs().iter().map(reduce).collect();
    if a.len() < 2 || *a.last().unwrap() == 0 {
        return a.len() == 1 && a[0] != 0;
    }
    let mut b: Vec<u64> = (1..a.len()).map(|i| mulmod(a[i], i as u64 % SQF_PRIME)).collect();
    while b.last() == Some(&0) {
        b.pop();
    }
    while !b.is_empty() {
        rem_mod(&mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// Primitive square-free part `p / gcd(p, p')`.
pub fn squarefree_part<R: GcdRing>(p: &Poly<R>) -> Poly<R> {
    if p.degree().unwrap_or(0) == 0 {
        return primitive(p);
    }
    let g = poly_gcd(p, &p.derivative());
    let q = p.div_exact(&g).expect("gcd divides the polynomial");
    primitive(&q)
}

/// Gcd over ℤ[a] with a heuristic fast path: evaluate `a` at a large
/// integer ξ, take the gcd in ℤ[τ] and read each coefficient back as
/// balanced base-ξ digits. The lift is kept only if it divides both inputs,
/// which certifies it; otherwise ξ grows and after a few tries the plain
/// sequence is used.
pub fn poly_gcd_za(p: &ZaPoly, q: &ZaPoly) -> ZaPoly {
    if p.is_zero() || q.is_zero() {
        return poly_gcd(p, q);
    }
    let norm = p
        .coeffs()
        .iter()
        .chain(q.coeffs())
        .flat_map(|c| c.coeffs().iter())
        .map(|x| x.abs())
        .max()
        .unwrap_or_default();
    let mut xi: BigInt = norm * 2 + 29;
    for _ in 0..6 {
        let at = |f: &ZaPoly| UniPoly::new(f.coeffs().iter().map(|c| c.eval(&xi)).collect());
        let g = poly_gcd(&at(p), &at(q));
        let lifted: ZaPoly = Poly::new(g.coeffs().iter().map(|c| balanced_digits(c, &xi)).collect());
        let h = primitive(&lifted);
        if !h.is_zero() && p.div_exact(&h).is_ok() && q.div_exact(&h).is_ok() {
            return h;
        }
        xi = xi * 73794 / 27011;
    }
    poly_gcd(p, q)
}

fn balanced_digits(c: &BigInt, base: &BigInt) -> UniPoly {
    let half: BigInt = base / 2;
    let mut v = c.clone();
    let mut digits = Vec::new();
    while !Ring::is_zero(&v) {
        let mut d = v.mod_floor(base);
        if d > half {
            d -= base;
        }
        v = (&v - &d) / base;
        digits.push(d);
    }
    UniPoly::new(digits)
}

/// [`squarefree_part`] for ℤ[a] coefficients using [`poly_gcd_za`].
pub fn squarefree_part_za(p: &ZaPoly) -> ZaPoly {
    if p.degree().unwrap_or(0) == 0 {
        return primitive(p);
    }
    let g = poly_gcd_za(p, &p.derivative());
    primitive(&p.div_exact(&g).expect("gcd divides the polynomial"))
}
