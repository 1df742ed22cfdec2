use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{self, SurvivorJson};
use super::spread::{rho_of, LargestRoot, SpreadCache};
use super::{
    build_pool, Progress, Relation, SpreadResult, Survivor, UniqueResultants, Verdict,
    VerificationReport, VerifyError,
};
use crate::bohemian::{build_fallat_xing, conjectured_max_sq, mirsky_bound_sq, optimal_k, AValue};
use crate::enumerate::{assemble, nonisomorphic_graphs, DiagonalMask, GraphClass};

const M_RANGE: (usize, usize) = (2, 9);

pub struct ZeroConfig {
    pub m: usize,
    pub tolerance: BigRational,
    pub report_factor: BigRational,
    /// `None` uses the available parallelism.
    pub workers: Option<usize>,
    pub mirsky_pruning: bool,
    pub checkpoint: Option<PathBuf>,
    /// Graph classes per chunk; a checkpoint is written after each chunk.
    pub chunk_units: usize,
    pub progress: Option<Progress>,
}

impl ZeroConfig {
    pub fn new(m: usize) -> Self {
        ZeroConfig {
            m,
            tolerance: BigRational::new(BigInt::from(1), BigInt::from(1) << 20),
            report_factor: BigRational::new(BigInt::from(999), BigInt::from(1000)),
            workers: None,
            mirsky_pruning: true,
            checkpoint: None,
            chunk_units: 256,
            progress: None,
        }
    }
}

/// Exhaustive `a = 0` check with default pool and no checkpointing.
pub fn verify_zero(
    m: usize,
    tolerance: &BigRational,
    report_factor: &BigRational,
) -> Result<VerificationReport, VerifyError> {
    let mut cfg = ZeroConfig::new(m);
    cfg.tolerance = tolerance.clone();
    cfg.report_factor = report_factor.clone();
    verify_zero_with(&cfg)
}

#[derive(Default, Serialize, Deserialize)]
struct Tally {
    examined: usize,
    rank2: usize,
    mirsky: usize,
    resolved: usize,
    /// digest → trivial
    keys: BTreeMap<String, bool>,
    #[serde(skip)]
    survivors: Vec<Survivor>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.examined += other.examined;
        self.rank2 += other.rank2;
        self.mirsky += other.mirsky;
        self.resolved += other.resolved;
        self.keys.extend(other.keys);
        self.survivors.extend(other.survivors);
    }
}

struct Ctx<'a> {
    cache: &'a SpreadCache,
    conj: BigRational,
    threshold: BigRational,
    tolerance: BigRational,
    fine: BigRational,
    pruning: bool,
}

fn run_unit(g: &GraphClass, ctx: &Ctx) -> Tally {
    let mut t = Tally::default();
    let full = (1u64 << g.m()) - 1;
    for d in 0..full {
        let s = assemble(g, DiagonalMask(d), AValue::zero());
        t.examined += 1;
        let entry = ctx.cache.get(&s);
        t.keys.insert(entry.digest.clone(), entry.trivial);
        if entry.nilpotent {
            t.resolved += 1;
            continue;
        }
        let rank = s.rank_exact();
        if rank == 2 {
            t.rank2 += 1;
            continue;
        }
        if ctx.pruning && mirsky_bound_sq(&s) < ctx.conj {
            t.mirsky += 1;
            continue;
        }
        t.resolved += 1;
        let interval = entry.interval(&s, &ctx.tolerance);
        if interval.hi <= ctx.threshold {
            continue;
        }
        let mut lr = LargestRoot::of(&rho_of(&s), &ctx.fine);
        let refined = lr.interval();
        let relation = Relation::from_ordering(lr.compare(&ctx.conj));
        t.survivors.push(Survivor {
            result: SpreadResult {
                matrix: s,
                spread_sq_interval: interval.clone(),
                resultant_hash: entry.digest.clone(),
            },
            rank,
            refined,
            relation,
        });
    }
    t
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    report_version: u32,
    m: usize,
    tolerance: String,
    report_factor: String,
    mirsky_pruning: bool,
    units_done: usize,
    units_total: usize,
    tally: Tally,
    survivors: Vec<SurvivorJson>,
}

impl Checkpoint {
    fn matches(&self, cfg: &ZeroConfig, total: usize) -> bool {
        self.report_version == report::REPORT_VERSION
            && self.m == cfg.m
            && self.tolerance == report::rat_string(&cfg.tolerance)
            && self.report_factor == report::rat_string(&cfg.report_factor)
            && self.mirsky_pruning == cfg.mirsky_pruning
            && self.units_total == total
    }
}

fn checkpoint_err(path: &std::path::Path, reason: impl ToString) -> VerifyError {
    VerifyError::Checkpoint { path: path.to_path_buf(), reason: reason.to_string() }
}

fn load_checkpoint(cfg: &ZeroConfig, total: usize) -> Result<Option<(usize, Tally)>, VerifyError> {
    let Some(path) = &cfg.checkpoint else {
        return Ok(None);
    };
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path).map_err(|e| checkpoint_err(path, e))?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| checkpoint_err(path, e))?;
    if !cp.matches(cfg, total) {
        return Err(checkpoint_err(path, "parameters differ from this run"));
    }
    let mut tally = cp.tally;
    tally.survivors = cp
        .survivors
        .iter()
        .map(SurvivorJson::to_survivor)
        .collect::<Result<_, _>>()
        .map_err(|e| checkpoint_err(path, e))?;
    Ok(Some((cp.units_done, tally)))
}

fn save_checkpoint(cfg: &ZeroConfig, done: usize, total: usize, tally: &Tally) -> Result<(), VerifyError> {
    let Some(path) = &cfg.checkpoint else {
        return Ok(());
    };
    let cp = Checkpoint {
        report_version: report::REPORT_VERSION,
        m: cfg.m,
        tolerance: report::rat_string(&cfg.tolerance),
        report_factor: report::rat_string(&cfg.report_factor),
        mirsky_pruning: cfg.mirsky_pruning,
        units_done: done,
        units_total: total,
        tally: Tally {
            examined: tally.examined,
            rank2: tally.rank2,
            mirsky: tally.mirsky,
            resolved: tally.resolved,
            keys: tally.keys.clone(),
            survivors: Vec::new(),
        },
        survivors: tally.survivors.iter().map(SurvivorJson::from_survivor).collect(),
    };
    let text = serde_json::to_string(&cp).map_err(|e| checkpoint_err(path, e))?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text).map_err(|e| checkpoint_err(path, e))?;
    std::fs::rename(&tmp, path).map_err(|e| checkpoint_err(path, e))
}

pub fn verify_zero_with(cfg: &ZeroConfig) -> Result<VerificationReport, VerifyError> {
    let m = cfg.m;
    if !(M_RANGE.0..=M_RANGE.1).contains(&m) {
        return Err(VerifyError::OutOfRange { m, lo: M_RANGE.0, hi: M_RANGE.1 });
    }
    let zero = BigRational::zero();
    let ks = optimal_k(m, &zero).values();
    let conj = conjectured_max_sq(m, &zero);
    let ctx = Ctx {
        cache: &SpreadCache::new(),
        threshold: &cfg.report_factor * &cfg.report_factor * &conj,
        conj: conj.clone(),
        tolerance: cfg.tolerance.clone(),
        fine: BigRational::new(BigInt::from(1), BigInt::from(1) << 53),
        pruning: cfg.mirsky_pruning,
    };

    let graphs = nonisomorphic_graphs(m).expect("range checked above");
    let total = graphs.len();
    let (mut done, mut tally) = load_checkpoint(cfg, total)?.unwrap_or_default();
    let pool = build_pool(cfg.workers);
    let chunk = cfg.chunk_units.max(1);
    while done < total {
        let end = (done + chunk).min(total);
        let parts: Vec<Tally> =
            pool.install(|| graphs[done..end].par_iter().map(|g| run_unit(g, &ctx)).collect());
        for p in parts {
            tally.merge(p);
        }
        done = end;
        save_checkpoint(cfg, done, total, &tally)?;
        if let Some(cb) = &cfg.progress {
            cb(done, total);
        }
    }

    let mut survivors = tally.survivors;
    survivors.sort_by_key(|s| s.result.matrix.encoding());
    let counterexample = survivors.iter().any(|s| s.relation == Relation::Above);

    // the conjectured value is attained by the rank-two block matrix
    let witness = build_fallat_xing(m, ks[0], AValue::zero());
    let mut lr = LargestRoot::of(&rho_of(&witness), &cfg.tolerance);
    let attained = lr.compare(&conj) == std::cmp::Ordering::Equal;

    let verdict = if counterexample {
        Verdict::Counterexample
    } else if attained {
        Verdict::ConjectureHolds
    } else {
        Verdict::Inconclusive
    };
    let (max_spread_sq, max_matrix) = if verdict == Verdict::ConjectureHolds {
        (Some(conj.clone()), Some(witness))
    } else {
        (None, None)
    };
    let nontrivial = tally.keys.values().filter(|&&t| !t).count();
    Ok(VerificationReport {
        m,
        a: AValue::zero(),
        tolerance: cfg.tolerance.clone(),
        report_factor: Some(cfg.report_factor.clone()),
        mirsky_pruning: cfg.mirsky_pruning,
        candidates_examined: tally.examined,
        pruned_by_mirsky: tally.mirsky,
        pruned_by_rank2: tally.rank2,
        resolved: tally.resolved,
        unique_resultants: UniqueResultants {
            inclusive: tally.keys.len(),
            nontrivial,
            digests: tally.keys.into_keys().collect(),
        },
        conjectured_k: ks,
        conjectured_spread_sq: Some(conj),
        max_spread_sq,
        max_matrix,
        survivors,
        breakpoints: Vec::new(),
        subintervals: Vec::new(),
        findings: Vec::new(),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::report::rat_string;

    fn quick(m: usize, pruning: bool) -> VerificationReport {
        let mut cfg = ZeroConfig::new(m);
        cfg.mirsky_pruning = pruning;
        verify_zero_with(&cfg).unwrap()
    }

    #[test]
    fn small_runs_hold() {
        for (m, c) in [(2, 5), (3, 12), (4, 21)] {
            let r = quick(m, true);
            assert_eq!(r.verdict, Verdict::ConjectureHolds, "m={m}");
            assert_eq!(r.max_spread_sq, Some(BigRational::from_integer(c.into())));
            assert_eq!(r.candidates_examined, r.pruned() + r.resolved);
        }
    }

    #[test]
    fn pruning_does_not_change_outcome() {
        for m in 2..=4 {
            let (a, b) = (quick(m, true), quick(m, false));
            assert_eq!(a.verdict, b.verdict);
            assert_eq!(a.survivors, b.survivors);
            assert_eq!(b.pruned_by_mirsky, 0);
        }
    }

    #[test]
    fn worker_count_is_invisible() {
        let mut one = ZeroConfig::new(4);
        one.workers = Some(1);
        one.chunk_units = 3;
        let mut many = ZeroConfig::new(4);
        many.workers = Some(4);
        assert_eq!(verify_zero_with(&one).unwrap(), verify_zero_with(&many).unwrap());
    }

    #[test]
    fn resumes_from_checkpoint() {
        let dir = std::env::temp_dir().join(format!("bsp-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m4.json");
        let _ = std::fs::remove_file(&path);
        let mut cfg = ZeroConfig::new(4);
        cfg.checkpoint = Some(path.clone());
        cfg.chunk_units = 2;
        let first = verify_zero_with(&cfg).unwrap();
        // a completed checkpoint resumes straight to the report
        let again = verify_zero_with(&cfg).unwrap();
        assert_eq!(first, again);
        let mut other = ZeroConfig::new(4);
        other.checkpoint = Some(path.clone());
        other.mirsky_pruning = false;
        assert!(matches!(verify_zero_with(&other), Err(VerifyError::Checkpoint { .. })));
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(rat_string(&cfg.tolerance), "1/1048576");
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            verify_zero(1, &ZeroConfig::new(1).tolerance, &ZeroConfig::new(1).report_factor),
            Err(VerifyError::OutOfRange { m: 1, .. })
        ));
    }
}
