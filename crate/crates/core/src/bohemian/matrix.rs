use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactpoly::UniPoly;

/// Largest dimension whose bit payload fits in one `u64`.
pub const MAX_DIM: usize = 10;

/// Value substituted for the symbol `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AValue {
    Fixed(BigRational),
    Symbolic,
}

impl AValue {
    pub fn zero() -> Self {
        AValue::Fixed(BigRational::zero())
    }

    pub fn fixed(&self) -> Option<&BigRational> {
        match self {
            AValue::Fixed(x) => Some(x),
            AValue::Symbolic => None,
        }
    }
}

impl fmt::Display for AValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AValue::Fixed(x) => write!(f, "{x}"),
            AValue::Symbolic => f.write_str("sym"),
        }
    }
}

impl FromStr for AValue {
    type Err = MatrixParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "sym" {
            return Ok(AValue::Symbolic);
        }
        parse_rational(s).map(AValue::Fixed).ok_or_else(|| MatrixParseError::BadA(s.to_string()))
    }
}

/// Parse `p` or `p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// One entry of a Bohemian matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    One,
    A,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixParseError {
    #[error("empty input")]
    Empty,
    #[error("bad header {0:?}; expected \"<m> a=<p/q|sym>\"")]
    BadHeader(String),
    #[error("bad value for a: {0:?}")]
    BadA(String),
    #[error("dimension {0} outside 1..={MAX_DIM}")]
    BadDim(usize),
    #[error("row {row}: expected {expected} symbols, found {found}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row}, column {col}: symbol {sym:?} is not 1 or a")]
    BadSymbol { row: usize, col: usize, sym: String },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

/// Index of the strict-upper-triangle position `(i, j)`, `i < j`, in column order.
#[inline]
pub fn upper_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Symmetric matrix with entries from `{a, 1}`.
///
/// A set bit means the entry is 1, a clear bit means `a`. `diag` holds the m
/// diagonal bits, `upper` the strict upper triangle in column order
/// (0,1), (0,2), (1,2), (0,3), …
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymBohemian {
    m: usize,
    diag: u64,
    upper: u64,
    a: AValue,
}

impl SymBohemian {
    pub fn new(m: usize, diag: u64, upper: u64, a: AValue) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        let pairs = m * (m - 1) / 2;
        let dmask = (1u64 << m) - 1;
        let umask = if pairs == 64 { u64::MAX } else { (1u64 << pairs) - 1 };
        assert!(diag & !dmask == 0 && upper & !umask == 0, "stray bits for m = {m}");
        SymBohemian { m, diag, upper, a }
    }

    /// Matrix with every entry equal to 1.
    pub fn ones(m: usize, a: AValue) -> Self {
        let pairs = m * (m - 1) / 2;
        Self::new(m, (1u64 << m) - 1, (1u64 << pairs) - 1, a)
    }

    pub fn from_fn(m: usize, a: AValue, f: impl Fn(usize, usize) -> Sym) -> Self {
        let mut diag = 0;
        let mut upper = 0;
        for j in 0..m {
            if f(j, j) == Sym::One {
                diag |= 1 << j;
            }
            for i in 0..j {
                if f(i, j) == Sym::One {
                    upper |= 1 << upper_index(i, j);
                }
            }
        }
        Self::new(m, diag, upper, a)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn diag_bits(&self) -> u64 {
        self.diag
    }

    pub fn upper_bits(&self) -> u64 {
        self.upper
    }

    pub fn a(&self) -> &AValue {
        &self.a
    }

    pub fn with_a(&self, a: AValue) -> Self {
        SymBohemian { a, ..self.clone() }
    }

    /// Single integer key ordering matrices of one dimension.
    pub fn encoding(&self) -> u64 {
        (self.upper << self.m) | self.diag
    }

    pub fn entry(&self, i: usize, j: usize) -> Sym {
        let bit = match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.diag >> i & 1,
            std::cmp::Ordering::Less => self.upper >> upper_index(i, j) & 1,
            std::cmp::Ordering::Greater => self.upper >> upper_index(j, i) & 1,
        };
        if bit == 1 {
            Sym::One
        } else {
            Sym::A
        }
    }

    /// Number of `a` entries (counting both triangles).
    pub fn count_a(&self) -> usize {
        let pairs = self.m * (self.m - 1) / 2;
        (self.m - self.diag.count_ones() as usize) + 2 * (pairs - self.upper.count_ones() as usize)
    }

    /// Exact rational entries; panics for symbolic `a`.
    pub fn rational_matrix(&self) -> Vec<Vec<BigRational>> {
        let a = self.a.fixed().expect("rational_matrix needs a fixed value of a").clone();
        self.map_entries(|s| match s {
            Sym::One => BigRational::one(),
            Sym::A => a.clone(),
        })
    }

    /// Integer matrix `q·S` for `a = p/q`, together with `q`.
    pub fn scaled_integer_matrix(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let a = self.a.fixed().expect("scaled_integer_matrix needs a fixed value of a");
        let (p, q) = (a.numer().clone(), a.denom().clone());
        (
            self.map_entries(|s| match s {
                Sym::One => q.clone(),
                Sym::A => p.clone(),
            }),
            q,
        )
    }

    /// Entries as polynomials in `a`.
    pub fn symbolic_matrix(&self) -> Vec<Vec<UniPoly>> {
        self.map_entries(|s| match s {
            Sym::One => UniPoly::from_i64s(&[1]),
            Sym::A => UniPoly::from_i64s(&[0, 1]),
        })
    }

    pub fn float_matrix(&self) -> Vec<Vec<f64>> {
        let a = self.a.fixed().map(crate::exactpoly::rat_to_f64).expect("float_matrix needs a fixed a");
        self.map_entries(|s| match s {
            Sym::One => 1.0,
            Sym::A => a,
        })
    }

    fn map_entries<T>(&self, f: impl Fn(Sym) -> T) -> Vec<Vec<T>> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| f(self.entry(i, j))).collect())
            .collect()
    }

    /// `P S Pᵀ` where row/column `i` of the result is row/column `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.m, self.a.clone(), |i, j| self.entry(perm[i], perm[j]))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} a={}\n", self.m, self.a);
        for i in 0..self.m {
            let row: Vec<&str> = (0..self.m)
                .map(|j| match self.entry(i, j) {
                    Sym::One => "1",
                    Sym::A => "a",
                })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self, MatrixParseError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or(MatrixParseError::Empty)?;
        let bad_header = || MatrixParseError::BadHeader(header.to_string());
        let mut parts = header.split_whitespace();
        let m: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad_header)?;
        let a_tok = parts.next().and_then(|t| t.strip_prefix("a=")).ok_or_else(bad_header)?;
        if parts.next().is_some() {
            return Err(bad_header());
        }
        if !(1..=MAX_DIM).contains(&m) {
            return Err(MatrixParseError::BadDim(m));
        }
        let a: AValue = a_tok.parse()?;
        let mut grid = Vec::with_capacity(m);
        for (row, line) in lines.enumerate() {
            let syms = line
                .split_whitespace()
                .enumerate()
                .map(|(col, t)| match t {
                    "1" => Ok(Sym::One),
                    "a" => Ok(Sym::A),
                    _ => Err(MatrixParseError::BadSymbol { row, col, sym: t.to_string() }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if syms.len() != m {
                return Err(MatrixParseError::RowLength { row, expected: m, found: syms.len() });
            }
            grid.push(syms);
        }
        if grid.len() != m {
            return Err(MatrixParseError::RowCount { expected: m, found: grid.len() });
        }
        for i in 0..m {
            for j in 0..i {
                if grid[i][j] != grid[j][i] {
                    return Err(MatrixParseError::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self::from_fn(m, a, |i, j| grid[i][j]))
    }

    /// Rows as strings like `"1a11"`.
    pub fn rows_compact(&self) -> Vec<String> {
        (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| if self.entry(i, j) == Sym::One { '1' } else { 'a' })
                    .collect()
            })
            .collect()
    }

    /// Build from compact rows such as `["1111", "1110", …]`; `0` is accepted for `a`.
    pub fn from_rows(rows: &[&str], a: AValue) -> Result<Self, MatrixParseError> {
        let m = rows.len();
        if !(1..=MAX_DIM).contains(&m) {
            return Err(MatrixParseError::BadDim(m));
        }
        let mut text = format!("{m} a={a}\n");
        for r in rows {
            let syms: Vec<String> = r
                .chars()
                .map(|c| match c {
                    '0' => "a".to_string(),
                    c => c.to_string(),
                })
                .collect();
            text.push_str(&syms.join(" "));
            text.push('\n');
        }
        Self::parse_text(&text)
    }
}

impl fmt::Display for SymBohemian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
