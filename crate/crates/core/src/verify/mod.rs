//! Exhaustive checks of the rank-two maximum: one at `a = 0` over the
//! canonical candidate stream, one with `a` symbolic over every interval on
//! which the conjectured block size is constant.

mod report;
mod spread;
mod symbolic;
mod unique;
mod zero;

use std::path::PathBuf;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::bohemian::{AValue, SymBohemian};
use crate::exactpoly::RatInterval;

pub use report::{rat_string, Timing, REPORT_VERSION};
pub use spread::{
    digest_symbolic, digest_uni, is_trivial_key, is_trivial_key_symbolic, rho_from_charpoly,
    rho_key, rho_key_symbolic, rho_of, rho_symbolic, scaled_charpoly, specialize,
    spread_sq_interval, CachedSpread, LargestRoot, SpreadCache,
};
pub use symbolic::{verify_symbolic, verify_symbolic_with, SymbolicConfig};
pub use unique::{unique_resultants, UniqueMode};
pub use zero::{verify_zero, verify_zero_with, ZeroConfig};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("m = {m} outside the supported range {lo}..={hi}")]
    OutOfRange { m: usize, lo: usize, hi: usize },
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
}

/// Called after each finished chunk with `(units done, units total)`.
pub type Progress = Arc<dyn Fn(usize, usize) + Send + Sync>;

/// One matrix with its squared spread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadResult {
    pub matrix: SymBohemian,
    pub spread_sq_interval: RatInterval,
    /// SHA-256 of the square-free deflated spread polynomial.
    pub resultant_hash: String,
}

/// Where an exact squared spread sits relative to the conjectured maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Below,
    Equal,
    Above,
}

impl Relation {
    pub fn from_ordering(o: std::cmp::Ordering) -> Self {
        match o {
            std::cmp::Ordering::Less => Relation::Below,
            std::cmp::Ordering::Equal => Relation::Equal,
            std::cmp::Ordering::Greater => Relation::Above,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Below => "below",
            Relation::Equal => "equal",
            Relation::Above => "above",
        }
    }
}

/// A reported near-maximal candidate from the `a = 0` run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivor {
    pub result: SpreadResult,
    pub rank: usize,
    /// Interval after re-isolation at width 2⁻⁵³.
    pub refined: RatInterval,
    pub relation: Relation,
}

/// One interval of `a` with constant optimal block size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subinterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub k: usize,
    pub anchor: BigRational,
    /// Matrices whose ρ vanishes identically on the conjectured curve.
    pub equal_spread: usize,
    /// Matrices whose Z(a) has roots strictly inside.
    pub with_roots: usize,
    /// Total multiplicity of the endpoint factors divided out of Z(a).
    pub endpoint_factors: usize,
}

/// Anything other than "strictly below the curve everywhere" for one
/// matrix on one subinterval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicFinding {
    pub matrix: SymBohemian,
    pub subinterval: usize,
    /// Power of `τ − c_k(a)` dividing ρ; zero when Z(a) ≢ 0.
    pub equal_multiplicity: usize,
    /// Distinct roots of Z(a) in the open subinterval.
    pub sturm_count: usize,
    pub roots: Vec<RatInterval>,
    /// First anchor where the largest root lies above the curve.
    pub exceeds_at: Option<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ConjectureHolds,
    Counterexample,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConjectureHolds => "conjecture-holds",
            Verdict::Counterexample => "counterexample",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniqueResultants {
    /// Distinct square-free deflated spread polynomials, trivial one included.
    pub inclusive: usize,
    /// Same, without the keys whose roots are all zero.
    pub nontrivial: usize,
    pub digests: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub m: usize,
    pub a: AValue,
    pub tolerance: BigRational,
    /// `a = 0` runs only.
    pub report_factor: Option<BigRational>,
    pub mirsky_pruning: bool,
    pub candidates_examined: usize,
    pub pruned_by_mirsky: usize,
    pub pruned_by_rank2: usize,
    pub resolved: usize,
    pub unique_resultants: UniqueResultants,
    /// Optimal block sizes at `a = 0`, or per subinterval in symbolic runs.
    pub conjectured_k: Vec<usize>,
    pub conjectured_spread_sq: Option<BigRational>,
    /// Established maximum with a matrix attaining it.
    pub max_spread_sq: Option<BigRational>,
    pub max_matrix: Option<SymBohemian>,
    pub survivors: Vec<Survivor>,
    pub breakpoints: Vec<BigRational>,
    pub subintervals: Vec<Subinterval>,
    pub findings: Vec<SymbolicFinding>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn pruned(&self) -> usize {
        self.pruned_by_mirsky + self.pruned_by_rank2
    }
}

pub(crate) fn build_pool(workers: Option<usize>) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .expect("thread pool")
}
