//! Real-root isolation by Descartes' rule of signs with dyadic bisection.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::squarefree_part;
use super::poly::{sign_of, UniPoly};
use super::PolyError;

/// Rational interval. `lo == hi` means the root is known exactly; otherwise
/// the root lies strictly inside `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    /// Closed-interval membership.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        rat_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        rat_to_f64(&self.hi)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

/// Isolated real roots of a polynomial, kept together with its square-free
/// part so that single roots can be refined later.
#[derive(Clone, Debug)]
pub struct IsolatedRoots {
    sqf: UniPoly,
    deriv: UniPoly,
    roots: Vec<RatInterval>,
}

impl IsolatedRoots {
    pub fn squarefree(&self) -> &UniPoly {
        &self.sqf
    }

    pub fn intervals(&self) -> &[RatInterval] {
        &self.roots
    }

    pub fn into_intervals(self) -> Vec<RatInterval> {
        self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    // Sign of sqf immediately to the right of x.
    fn sign_right_of(&self, x: &BigRational) -> i32 {
        match self.sqf.sign_at(x) {
            0 => self.deriv.sign_at(x),
            s => s,
        }
    }

    /// One bisection step on root `i`.
    fn bisect(&mut self, i: usize) {
        let iv = &self.roots[i];
        if iv.is_point() {
            return;
        }
        let mid = iv.midpoint();
        let s = self.sqf.sign_at(&mid);
        let left_sign = self.sign_right_of(&iv.lo);
        let iv = &mut self.roots[i];
        if s == 0 {
            *iv = RatInterval::point(mid);
        } else if s == left_sign {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }

    /// Refine root `i` until its width is at most `width`.
    pub fn refine(&mut self, i: usize, width: &BigRational) {
        while self.roots[i].width() > *width {
            self.bisect(i);
        }
    }

    pub fn refine_all(&mut self, width: &BigRational) {
        for i in 0..self.roots.len() {
            self.refine(i, width);
        }
    }

    /// Exact comparison of root `i` with a rational.
    pub fn compare_root(&mut self, i: usize, x: &BigRational) -> Ordering {
        loop {
            let iv = &self.roots[i];
            if iv.is_point() {
                return iv.lo.cmp(x);
            }
            if x <= &iv.lo {
                return Ordering::Greater;
            }
            if x >= &iv.hi {
                return Ordering::Less;
            }
            if self.sqf.sign_at(x) == 0 {
                // x is a root strictly inside the isolating interval, so it is this one
                self.roots[i] = RatInterval::point(x.clone());
                return Ordering::Equal;
            }
            self.bisect(i);
        }
    }

    /// Refine root `i` until `x` lies outside its closed interval, and report
    /// on which side the root is. `Equal` means `x` is the root itself.
    pub fn locate(&mut self, i: usize, x: &BigRational) -> Ordering {
        loop {
            let iv = &self.roots[i];
            if iv.is_point() {
                return iv.lo.cmp(x);
            }
            if x < &iv.lo {
                return Ordering::Greater;
            }
            if x > &iv.hi {
                return Ordering::Less;
            }
            if self.sqf.sign_at(x) == 0 && x != &iv.lo && x != &iv.hi {
                self.roots[i] = RatInterval::point(x.clone());
                return Ordering::Equal;
            }
            self.bisect(i);
        }
    }

    // Shrink neighbours until consecutive closed intervals are disjoint.
    fn separate(&mut self) {
        for i in 0..self.roots.len().saturating_sub(1) {
            while self.roots[i].hi >= self.roots[i + 1].lo {
                if self.roots[i].is_point() {
                    self.bisect(i + 1);
                } else {
                    self.bisect(i);
                }
            }
        }
    }
}

/// Smallest `b` such that every real root of `p` has absolute value below `2^b`.
pub fn root_bound_pow2(p: &UniPoly) -> u64 {
    let Some(lead) = p.leading() else {
        return 0;
    };
    let lead = lead.abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    // Cauchy: |x| < 1 + max|c_i| / |c_n|
    let bound: BigInt = BigInt::one() + (&max + &lead - BigInt::one()) / &lead;
    bound.bits()
}

fn taylor_shift_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let next = c[j + 1].clone();
            c[j] += next;
        }
    }
}

fn sign_changes(c: &[BigInt]) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in c.iter().map(sign_of) {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

// Descartes bound for roots of q in (0, 1).
fn descartes_01(q: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    sign_changes(&r)
}

/// Positive roots of a square-free `p` with `p(0) ≠ 0`, as dyadic intervals.
fn positive_roots(p: &UniPoly) -> Vec<RatInterval> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let b = root_bound_pow2(p);
    // s(x) = p(2^b x), roots in (0, 1)
    let s: Vec<BigInt> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c << (b as usize * i))
        .collect();
    let scale = BigRational::from_integer(BigInt::one() << b as usize);
    let to_interval = |k: &BigInt, j: u64, lo_only: bool| -> RatInterval {
        let den = BigInt::one() << j as usize;
        let lo = BigRational::new(k.clone(), den.clone()) * &scale;
        if lo_only {
            RatInterval::point(lo)
        } else {
            let hi = BigRational::new(k + BigInt::one(), den) * &scale;
            RatInterval::new(lo, hi)
        }
    };

    let mut out = Vec::new();
    // (poly on (0,1), k, j): the box is (k/2^j, (k+1)/2^j)
    let mut stack: Vec<(Vec<BigInt>, BigInt, u64)> = vec![(s, BigInt::zero(), 0)];
    while let Some((q, k, j)) = stack.pop() {
        match descartes_01(&q) {
            0 => continue,
            1 => {
                out.push(to_interval(&k, j, false));
                continue;
            }
            _ => {}
        }
        let deg = q.len() - 1;
        // left half: 2^deg q(x/2)
        let left: Vec<BigInt> = q.iter().enumerate().map(|(i, c)| c << (deg - i)).collect();
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        let k2 = &k << 1usize;
        if right[0].is_zero() {
            out.push(to_interval(&(&k2 + BigInt::one()), j + 1, true));
            right.remove(0);
        }
        stack.push((left, k2.clone(), j + 1));
        stack.push((right, k2 + BigInt::one(), j + 1));
    }
    out
}

fn isolate_coarse(p: &UniPoly) -> Result<IsolatedRoots, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let sqf = squarefree_part(p);
    let low = sqf.lowest_degree().unwrap_or(0);
    let core = UniPoly::new(sqf.coeffs()[low..].to_vec());
    let mut roots: Vec<RatInterval> = positive_roots(&core.reflect())
        .into_iter()
        .map(|iv| RatInterval::new(-iv.hi, -iv.lo))
        .collect();
    if low > 0 {
        roots.push(RatInterval::point(BigRational::zero()));
    }
    roots.extend(positive_roots(&core));
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    let deriv = sqf.derivative();
    let mut iso = IsolatedRoots { sqf, deriv, roots };
    iso.separate();
    Ok(iso)
}

/// Disjoint isolating intervals for every distinct real root of `p`, sorted
/// ascending, each of width at most `width`.
pub fn isolate_real_roots(p: &UniPoly, width: &BigRational) -> Result<IsolatedRoots, PolyError> {
    let mut iso = isolate_coarse(p)?;
    iso.refine_all(width);
    Ok(iso)
}

/// Interval around the largest real root, refined to `width`; `None` if there are no real roots.
/// The other roots are left coarse.
pub fn largest_real_root(p: &UniPoly, width: &BigRational) -> Result<Option<(IsolatedRoots, usize)>, PolyError> {
    let mut iso = isolate_coarse(p)?;
    if iso.is_empty() {
        return Ok(None);
    }
    let last = iso.len() - 1;
    iso.refine(last, width);
    Ok(Some((iso, last)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(cs)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn tol() -> BigRational {
        rat(1, 1 << 20)
    }

    #[test]
    fn isolates_sqrt_two() {
        let iso = isolate_real_roots(&p(&[-2, 0, 1]), &tol()).unwrap();
        let iv = iso.intervals();
        assert_eq!(iv.len(), 2);
        let s = std::f64::consts::SQRT_2;
        assert!(iv[1].lo_f64() < s && s < iv[1].hi_f64());
        assert!(iv[0].lo_f64() < -s && -s < iv[0].hi_f64());
        assert!(iv[1].width() <= tol());
    }

    #[test]
    fn exact_rational_roots() {
        // x (x - 1/2)(x + 3) → roots 0, 1/2, -3
        let f = &p(&[0, 1]) * &(&p(&[-1, 2]) * &p(&[3, 1]));
        let iso = isolate_real_roots(&f, &tol()).unwrap();
        let iv = iso.intervals();
        assert_eq!(iv.len(), 3);
        assert!(iv[0].contains(&rat(-3, 1)));
        assert_eq!(iv[1], RatInterval::point(rat(0, 1)));
        assert!(iv[2].contains(&rat(1, 2)));
    }

    #[test]
    fn repeated_roots_and_no_roots() {
        let sq = &p(&[-1, 1]) * &p(&[-1, 1]);
        assert_eq!(isolate_real_roots(&sq, &tol()).unwrap().len(), 1);
        assert!(isolate_real_roots(&p(&[1, 0, 1]), &tol()).unwrap().is_empty());
        assert!(isolate_real_roots(&p(&[5]), &tol()).unwrap().is_empty());
        assert!(isolate_real_roots(&UniPoly::zero(), &tol()).is_err());
    }

    #[test]
    fn close_roots_are_separated() {
        // (1000x - 1)(1001x - 1)
        let f = &p(&[-1, 1000]) * &p(&[-1, 1001]);
        let iso = isolate_real_roots(&f, &rat(1, 1 << 30)).unwrap();
        let iv = iso.intervals();
        assert_eq!(iv.len(), 2);
        assert!(iv[0].hi < iv[1].lo);
        assert!(iv[0].contains(&rat(1, 1001)));
        assert!(iv[1].contains(&rat(1, 1000)));
    }

    #[test]
    fn compare_with_rationals() {
        let (mut iso, i) = largest_real_root(&p(&[-21, 0, 1]), &tol()).unwrap().unwrap();
        assert_eq!(iso.compare_root(i, &rat(458, 100)), Ordering::Greater);
        assert_eq!(iso.compare_root(i, &rat(459, 100)), Ordering::Less);
        let (mut iso, i) = largest_real_root(&p(&[-9, 0, 1]), &tol()).unwrap().unwrap();
        assert_eq!(iso.compare_root(i, &rat(3, 1)), Ordering::Equal);
        assert!(largest_real_root(&p(&[1, 0, 1]), &tol()).unwrap().is_none());
    }

    #[test]
    fn bound_is_a_bound() {
        assert!(root_bound_pow2(&p(&[-21, 0, 1])) >= 5);
        assert!(root_bound_pow2(&p(&[-1, 1])) >= 1);
    }

    proptest! {
        #[test]
        fn finds_every_rational_root(roots in proptest::collection::btree_set((-20i64..=20, 1i64..=4), 1..=6)) {
            let mut f = p(&[1]);
            let mut vals: Vec<BigRational> = Vec::new();
            for &(n, d) in &roots {
                let r = rat(n, d);
                if vals.contains(&r) { continue; }
                vals.push(r);
                f = &f * &p(&[-n, d]);
            }
            vals.sort();
            let iso = isolate_real_roots(&f, &tol()).unwrap();
            prop_assert_eq!(iso.len(), vals.len());
            for (iv, r) in iso.intervals().iter().zip(&vals) {
                prop_assert!(iv.contains(r));
                prop_assert!(iv.width() <= tol());
            }
            for w in iso.intervals().windows(2) {
                prop_assert!(w[0].hi < w[1].lo);
            }
        }
    }
}
