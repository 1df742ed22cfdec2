//! JSON form of a [`VerificationReport`].

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{
    Relation, SpreadResult, Subinterval, Survivor, SymbolicFinding, VerificationReport,
};
use crate::bohemian::{parse_rational, SymBohemian};
use crate::exactpoly::RatInterval;

pub const REPORT_VERSION: u32 = 1;

/// `n` or `n/d`, reduced.
pub fn rat_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_rat(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("bad rational {s:?}"))
}

/// Wall-clock data; kept out of the report unless asked for, since it is
/// the only part that differs between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub workers: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct IntervalJson {
    lo: String,
    hi: String,
}

impl IntervalJson {
    fn from(iv: &RatInterval) -> Self {
        IntervalJson { lo: rat_string(&iv.lo), hi: rat_string(&iv.hi) }
    }

    fn to_interval(&self) -> Result<RatInterval, String> {
        Ok(RatInterval::new(parse_rat(&self.lo)?, parse_rat(&self.hi)?))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct SurvivorJson {
    matrix: String,
    spread_sq_interval: IntervalJson,
    resultant_hash: String,
    rank: usize,
    refined: IntervalJson,
    relation: String,
}

impl SurvivorJson {
    pub(crate) fn from_survivor(s: &Survivor) -> Self {
        SurvivorJson {
            matrix: s.result.matrix.to_text(),
            spread_sq_interval: IntervalJson::from(&s.result.spread_sq_interval),
            resultant_hash: s.result.resultant_hash.clone(),
            rank: s.rank,
            refined: IntervalJson::from(&s.refined),
            relation: s.relation.as_str().to_string(),
        }
    }

    pub(crate) fn to_survivor(&self) -> Result<Survivor, String> {
        let relation = match self.relation.as_str() {
            "below" => Relation::Below,
            "equal" => Relation::Equal,
            "above" => Relation::Above,
            r => return Err(format!("bad relation {r:?}")),
        };
        Ok(Survivor {
            result: SpreadResult {
                matrix: SymBohemian::parse_text(&self.matrix).map_err(|e| e.to_string())?,
                spread_sq_interval: self.spread_sq_interval.to_interval()?,
                resultant_hash: self.resultant_hash.clone(),
            },
            rank: self.rank,
            refined: self.refined.to_interval()?,
            relation,
        })
    }
}

#[derive(Serialize)]
struct UniqueJson {
    inclusive: usize,
    nontrivial: usize,
    /// SHA-256 over the sorted digest list, one per line.
    digest_set: String,
}

#[derive(Serialize)]
struct SubintervalJson {
    lo: String,
    hi: String,
    k: usize,
    anchor: String,
    equal_spread: usize,
    with_roots: usize,
    endpoint_factors: usize,
}

impl SubintervalJson {
    fn from(s: &Subinterval) -> Self {
        SubintervalJson {
            lo: rat_string(&s.lo),
            hi: rat_string(&s.hi),
            k: s.k,
            anchor: rat_string(&s.anchor),
            equal_spread: s.equal_spread,
            with_roots: s.with_roots,
            endpoint_factors: s.endpoint_factors,
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct FindingJson {
    matrix: String,
    subinterval: usize,
    equal_multiplicity: usize,
    sturm_count: usize,
    roots: Vec<IntervalJson>,
    exceeds_at: Option<String>,
}

impl FindingJson {
    pub(crate) fn to_finding(&self) -> Result<SymbolicFinding, String> {
        Ok(SymbolicFinding {
            matrix: SymBohemian::parse_text(&self.matrix).map_err(|e| e.to_string())?,
            subinterval: self.subinterval,
            equal_multiplicity: self.equal_multiplicity,
            sturm_count: self.sturm_count,
            roots: self.roots.iter().map(IntervalJson::to_interval).collect::<Result<_, _>>()?,
            exceeds_at: self.exceeds_at.as_deref().map(parse_rat).transpose()?,
        })
    }

    pub(crate) fn from(f: &SymbolicFinding) -> Self {
        FindingJson {
            matrix: f.matrix.to_text(),
            subinterval: f.subinterval,
            equal_multiplicity: f.equal_multiplicity,
            sturm_count: f.sturm_count,
            roots: f.roots.iter().map(IntervalJson::from).collect(),
            exceeds_at: f.exceeds_at.as_ref().map(rat_string),
        }
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    report_version: u32,
    m: usize,
    a: String,
    tolerance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report_factor: Option<String>,
    mirsky_pruning: bool,
    candidates_examined: usize,
    pruned_by_mirsky: usize,
    pruned_by_rank2: usize,
    resolved: usize,
    unique_resultants: UniqueJson,
    conjectured_k: &'a [usize],
    conjectured_spread_sq: Option<String>,
    max_spread_sq: Option<String>,
    max_matrix: Option<String>,
    survivors: Vec<SurvivorJson>,
    breakpoints: Vec<String>,
    subintervals: Vec<SubintervalJson>,
    findings: Vec<FindingJson>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<&'a Timing>,
}

impl VerificationReport {
    /// Pretty JSON with a trailing newline; byte-identical for identical
    /// inputs when `timing` is `None`.
    pub fn to_json(&self, timing: Option<&Timing>) -> String {
        let mut set = Sha256::new();
        for d in &self.unique_resultants.digests {
            set.update(d.as_bytes());
            set.update(b"\n");
        }
        let doc = ReportJson {
            report_version: REPORT_VERSION,
            m: self.m,
            a: match self.a.fixed() {
                Some(x) => rat_string(x),
                None => "sym".to_string(),
            },
            tolerance: rat_string(&self.tolerance),
            report_factor: self.report_factor.as_ref().map(rat_string),
            mirsky_pruning: self.mirsky_pruning,
            candidates_examined: self.candidates_examined,
            pruned_by_mirsky: self.pruned_by_mirsky,
            pruned_by_rank2: self.pruned_by_rank2,
            resolved: self.resolved,
            unique_resultants: UniqueJson {
                inclusive: self.unique_resultants.inclusive,
                nontrivial: self.unique_resultants.nontrivial,
                digest_set: hex::encode(set.finalize()),
            },
            conjectured_k: &self.conjectured_k,
            conjectured_spread_sq: self.conjectured_spread_sq.as_ref().map(rat_string),
            max_spread_sq: self.max_spread_sq.as_ref().map(rat_string),
            max_matrix: self.max_matrix.as_ref().map(SymBohemian::to_text),
            survivors: self.survivors.iter().map(SurvivorJson::from_survivor).collect(),
            breakpoints: self.breakpoints.iter().map(rat_string).collect(),
            subintervals: self.subintervals.iter().map(SubintervalJson::from).collect(),
            findings: self.findings.iter().map(FindingJson::from).collect(),
            verdict: self.verdict.as_str(),
            timing,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
        s.push('\n');
        s
    }
}
