use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{self, FindingJson};
use super::spread::{digest_symbolic, is_trivial_key_symbolic, rho_key_symbolic, specialize, LargestRoot};
use super::{
    build_pool, Progress, Subinterval, SymbolicFinding, UniqueResultants, Verdict,
    VerificationReport, VerifyError,
};
use crate::bohemian::{breakpoints, conjectured_spread_sq_poly, optimal_k, AValue};
use crate::enumerate::{assemble, nonisomorphic_graphs, DiagonalMask, GraphClass};
use crate::exactpoly::{
    deflate_rational_root, isolate_real_roots, spread_rho, sturm_count, Poly, RatInterval, Ring,
    UniPoly, ZaPoly,
};

const M_RANGE: (usize, usize) = (2, 8);

pub struct SymbolicConfig {
    pub m: usize,
    pub workers: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub chunk_units: usize,
    pub progress: Option<Progress>,
}

impl SymbolicConfig {
    pub fn new(m: usize) -> Self {
        SymbolicConfig { m, workers: None, checkpoint: None, chunk_units: 64, progress: None }
    }
}

pub fn verify_symbolic(m: usize) -> Result<VerificationReport, VerifyError> {
    verify_symbolic_with(&SymbolicConfig::new(m))
}

struct Piece {
    lo: BigRational,
    hi: BigRational,
    k: usize,
    curve: UniPoly,
    anchor: BigRational,
}

fn pieces(m: usize) -> Vec<Piece> {
    let one = BigRational::from_integer(BigInt::from(1));
    let mut cuts = vec![-one.clone()];
    cuts.extend(breakpoints(m));
    cuts.push(one);
    cuts.windows(2)
        .map(|w| {
            let anchor = (&w[0] + &w[1]) / BigInt::from(2);
            let k = optimal_k(m, &anchor).first();
            Piece { lo: w[0].clone(), hi: w[1].clone(), k, curve: conjectured_spread_sq_poly(m, k), anchor }
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
struct Outcome {
    equal_multiplicity: usize,
    sturm_count: usize,
    roots: Vec<RatInterval>,
    exceeds_at: Option<BigRational>,
    endpoint_factors: usize,
}

impl Outcome {
    fn notable(&self) -> bool {
        self.equal_multiplicity > 0 || self.sturm_count > 0 || self.exceeds_at.is_some()
    }
}

// Largest root of ρ(τ; x) against c(x); never equal when Z(x) ≠ 0.
fn above_at(rho: &ZaPoly, curve: &UniPoly, x: &BigRational) -> bool {
    let spec = specialize(rho, x);
    let width = BigRational::new(BigInt::from(1), BigInt::from(1) << 20);
    let mut lr = LargestRoot::of(&spec, &width);
    lr.compare(&curve.eval_rational(x)) == Ordering::Greater
}

fn analyse(rho: &ZaPoly, piece: &Piece) -> Outcome {
    let mut out = Outcome::default();
    let c = &piece.curve;
    let lin: ZaPoly = Poly::new(vec![c.negate(), UniPoly::one()]);
    let mut q = rho.clone();
    let mut z = q.eval(c);
    while z.is_zero() {
        q = q.div_exact(&lin).expect("τ − c(a) is monic in τ");
        out.equal_multiplicity += 1;
        z = q.eval(c);
    }
    let (z, e_lo) = deflate_rational_root(&z, &piece.lo);
    let (z, e_hi) = deflate_rational_root(&z, &piece.hi);
    out.endpoint_factors = e_lo + e_hi;
    out.sturm_count = sturm_count(&z, &piece.lo, &piece.hi).expect("endpoint roots divided out");

    let mut anchors = Vec::new();
    if out.sturm_count == 0 {
        anchors.push(piece.anchor.clone());
    } else {
        let width = BigRational::new(BigInt::from(1), BigInt::from(1) << 20);
        let mut iso = isolate_real_roots(&z, &width).expect("Z is nonzero");
        let inside: Vec<usize> = (0..iso.len())
            .filter(|&i| {
                iso.locate(i, &piece.lo) == Ordering::Greater && iso.locate(i, &piece.hi) == Ordering::Less
            })
            .collect();
        debug_assert_eq!(inside.len(), out.sturm_count);
        out.roots = inside.iter().map(|&i| iso.intervals()[i].clone()).collect();
        let mut left = piece.lo.clone();
        for iv in &out.roots {
            anchors.push((&left + &iv.lo) / BigInt::from(2));
            left = iv.hi.clone();
        }
        anchors.push((&left + &piece.hi) / BigInt::from(2));
    }
    out.exceeds_at = anchors.into_iter().find(|x| above_at(&q, c, x));
    out
}

type Memo = DashMap<ZaPoly, Arc<(String, bool, Vec<Outcome>)>>;

#[derive(Default, Serialize, Deserialize)]
struct Tally {
    examined: usize,
    keys: BTreeMap<String, bool>,
    /// per piece: (equal_spread, with_roots, endpoint_factors)
    pieces: Vec<(usize, usize, usize)>,
    #[serde(skip)]
    findings: Vec<SymbolicFinding>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.examined += other.examined;
        self.keys.extend(other.keys);
        if self.pieces.is_empty() {
            self.pieces = other.pieces;
        } else {
            for (a, b) in self.pieces.iter_mut().zip(other.pieces) {
                a.0 += b.0;
                a.1 += b.1;
                a.2 += b.2;
            }
        }
        self.findings.extend(other.findings);
    }
}

fn run_unit(g: &GraphClass, pieces: &[Piece], memo: &Memo) -> Tally {
    let mut t = Tally { pieces: vec![(0, 0, 0); pieces.len()], ..Tally::default() };
    let full = (1u64 << g.m()) - 1;
    for d in 0..full {
        let s = assemble(g, DiagonalMask(d), AValue::Symbolic);
        t.examined += 1;
        let cp = s.charpoly_symbolic();
        let hit = memo.get(&cp).map(|e| e.clone());
        let entry = hit.unwrap_or_else(|| {
            let rho = spread_rho(&cp).expect("characteristic polynomials are monic");
            let key = rho_key_symbolic(&rho);
            let outcomes = pieces.iter().map(|p| analyse(&rho, p)).collect();
            let e = Arc::new((digest_symbolic(&key), is_trivial_key_symbolic(&key), outcomes));
            memo.entry(cp).or_insert(e).clone()
        });
        t.keys.insert(entry.0.clone(), entry.1);
        for (j, o) in entry.2.iter().enumerate() {
            let tp = &mut t.pieces[j];
            tp.0 += usize::from(o.equal_multiplicity > 0);
            tp.1 += usize::from(o.sturm_count > 0);
            tp.2 += o.endpoint_factors;
            if o.notable() {
                t.findings.push(SymbolicFinding {
                    matrix: s.clone(),
                    subinterval: j,
                    equal_multiplicity: o.equal_multiplicity,
                    sturm_count: o.sturm_count,
                    roots: o.roots.clone(),
                    exceeds_at: o.exceeds_at.clone(),
                });
            }
        }
    }
    t
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    report_version: u32,
    kind: String,
    m: usize,
    units_done: usize,
    units_total: usize,
    tally: Tally,
    findings: Vec<FindingJson>,
}

fn checkpoint_err(path: &std::path::Path, reason: impl ToString) -> VerifyError {
    VerifyError::Checkpoint { path: path.to_path_buf(), reason: reason.to_string() }
}

fn load_checkpoint(cfg: &SymbolicConfig, total: usize) -> Result<Option<(usize, Tally)>, VerifyError> {
    let Some(path) = cfg.checkpoint.as_ref().filter(|p| p.exists()) else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path).map_err(|e| checkpoint_err(path, e))?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| checkpoint_err(path, e))?;
    if cp.report_version != report::REPORT_VERSION || cp.kind != "symbolic" || cp.m != cfg.m || cp.units_total != total {
        return Err(checkpoint_err(path, "parameters differ from this run"));
    }
    let mut tally = cp.tally;
    tally.findings = cp
        .findings
        .iter()
        .map(FindingJson::to_finding)
        .collect::<Result<_, _>>()
        .map_err(|e| checkpoint_err(path, e))?;
    Ok(Some((cp.units_done, tally)))
}

fn save_checkpoint(cfg: &SymbolicConfig, done: usize, total: usize, tally: &Tally) -> Result<(), VerifyError> {
    let Some(path) = &cfg.checkpoint else {
        return Ok(());
    };
    let cp = Checkpoint {
        report_version: report::REPORT_VERSION,
        kind: "symbolic".into(),
        m: cfg.m,
        units_done: done,
        units_total: total,
        tally: Tally {
            examined: tally.examined,
            keys: tally.keys.clone(),
            pieces: tally.pieces.clone(),
            findings: Vec::new(),
        },
        findings: tally.findings.iter().map(FindingJson::from).collect(),
    };
    let text = serde_json::to_string(&cp).map_err(|e| checkpoint_err(path, e))?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text).map_err(|e| checkpoint_err(path, e))?;
    std::fs::rename(&tmp, path).map_err(|e| checkpoint_err(path, e))
}

pub fn verify_symbolic_with(cfg: &SymbolicConfig) -> Result<VerificationReport, VerifyError> {
    let m = cfg.m;
    if !(M_RANGE.0..=M_RANGE.1).contains(&m) {
        return Err(VerifyError::OutOfRange { m, lo: M_RANGE.0, hi: M_RANGE.1 });
    }
    let pieces = pieces(m);
    let graphs = nonisomorphic_graphs(m).expect("range checked above");
    let total = graphs.len();
    let (mut done, mut tally) = load_checkpoint(cfg, total)?.unwrap_or_default();
    if tally.pieces.is_empty() {
        tally.pieces = vec![(0, 0, 0); pieces.len()];
    }
    let memo = Memo::new();
    let pool = build_pool(cfg.workers);
    let chunk = cfg.chunk_units.max(1);
    while done < total {
        let end = (done + chunk).min(total);
        let parts: Vec<Tally> =
            pool.install(|| graphs[done..end].par_iter().map(|g| run_unit(g, &pieces, &memo)).collect());
        for p in parts {
            tally.merge(p);
        }
        done = end;
        save_checkpoint(cfg, done, total, &tally)?;
        if let Some(cb) = &cfg.progress {
            cb(done, total);
        }
    }

    let mut findings = tally.findings;
    findings.sort_by_key(|f| (f.matrix.encoding(), f.subinterval));
    let counterexample = findings.iter().any(|f| f.exceeds_at.is_some());
    // every piece must see its own rank-two maximiser on the curve
    let attained = tally.pieces.iter().all(|p| p.0 > 0);
    let verdict = if counterexample {
        Verdict::Counterexample
    } else if attained {
        Verdict::ConjectureHolds
    } else {
        Verdict::Inconclusive
    };
    let subintervals = pieces
        .iter()
        .zip(&tally.pieces)
        .map(|(p, t)| Subinterval {
            lo: p.lo.clone(),
            hi: p.hi.clone(),
            k: p.k,
            anchor: p.anchor.clone(),
            equal_spread: t.0,
            with_roots: t.1,
            endpoint_factors: t.2,
        })
        .collect();
    let nontrivial = tally.keys.values().filter(|&&t| !t).count();
    Ok(VerificationReport {
        m,
        a: AValue::Symbolic,
        tolerance: BigRational::new(BigInt::from(1), BigInt::from(1) << 20),
        report_factor: None,
        mirsky_pruning: false,
        candidates_examined: tally.examined,
        pruned_by_mirsky: 0,
        pruned_by_rank2: 0,
        resolved: tally.examined,
        unique_resultants: UniqueResultants {
            inclusive: tally.keys.len(),
            nontrivial,
            digests: tally.keys.into_keys().collect(),
        },
        conjectured_k: pieces.iter().map(|p| p.k).collect(),
        conjectured_spread_sq: None,
        max_spread_sq: None,
        max_matrix: None,
        survivors: Vec::new(),
        breakpoints: breakpoints(m),
        subintervals,
        findings,
        verdict,
    })
}
