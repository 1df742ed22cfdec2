//! Monte Carlo distribution of the normalized spread of random symmetric
//! matrices with entries uniform on [−1, 1].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

const MAX_SWEEPS: usize = 100;
/// Samples per RNG stream; stream `i` covers samples `i·CHUNK ..`.
const CHUNK: usize = 1024;

#[derive(Debug, Error, PartialEq)]
pub enum SampleError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("invalid sampling parameters: {0}")]
    Config(String),
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub bins: usize,
    pub workers: Option<usize>,
}

impl SampleConfig {
    pub fn new(m: usize, n: usize, seed: u64) -> Self {
        SampleConfig { m, n, seed, bins: 200, workers: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpreadHistogram {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    /// `bins + 1` edges on [0, 1].
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub mean: f64,
    /// Sample variance (divisor n − 1; 0 when n = 1).
    pub variance: f64,
    pub min: f64,
    pub max: f64,
}

/// Symmetric matrix with i.i.d. uniform upper triangle, mirrored.
pub fn sample_matrix(m: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let x = rng.random_range(-1.0..=1.0);
            a[i][j] = x;
            a[j][i] = x;
        }
    }
    a
}

fn off_norm_sq(a: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for x in &row[i + 1..] {
            s += 2.0 * x * x;
        }
    }
    s
}

// Cyclic Jacobi; returns the diagonalised matrix and, if requested, the
// accumulated rotation (columns are eigenvectors).
fn jacobi(mut a: Vec<Vec<f64>>, tol: f64, vectors: bool) -> Result<(Vec<f64>, Option<Vec<Vec<f64>>>), SampleError> {
    let m = a.len();
    let mut v = vectors.then(|| {
        (0..m).map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect::<Vec<f64>>()).collect::<Vec<_>>()
    });
    let tol_sq = tol * tol;
    for _ in 0..MAX_SWEEPS {
        if off_norm_sq(&a) < tol_sq {
            let d = (0..m).map(|i| a[i][i]).collect();
            return Ok((d, v));
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                if let Some(v) = v.as_mut() {
                    for row in v.iter_mut() {
                        let (vp, vq) = (row[p], row[q]);
                        row[p] = c * vp - s * vq;
                        row[q] = s * vp + c * vq;
                    }
                }
            }
        }
    }
    Err(SampleError::NoConvergence { sweeps: MAX_SWEEPS, off: off_norm_sq(&a).sqrt() })
}

/// Eigenvalues in ascending order.
pub fn symmetric_eigenvalues(a: &[Vec<f64>], tol: f64) -> Result<Vec<f64>, SampleError> {
    let (mut d, _) = jacobi(a.to_vec(), tol, false)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues ascending with unit eigenvectors, `vectors[i]` belonging to `values[i]`.
pub fn symmetric_eigen(a: &[Vec<f64>], tol: f64) -> Result<(Vec<f64>, Vec<Vec<f64>>), SampleError> {
    let (d, v) = jacobi(a.to_vec(), tol, true)?;
    let v = v.expect("requested");
    let mut idx: Vec<usize> = (0..d.len()).collect();
    idx.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = idx.iter().map(|&i| d[i]).collect();
    let vectors = idx.iter().map(|&i| v.iter().map(|row| row[i]).collect()).collect();
    Ok((values, vectors))
}

/// Spread bound for entries in [−1, 1]: √(2m²) for even m, √(2m²−1) for odd.
pub fn zhan_bound(m: usize) -> f64 {
    let m2 = (m * m) as f64;
    if m % 2 == 0 {
        (2.0 * m2).sqrt()
    } else {
        (2.0 * m2 - 1.0).sqrt()
    }
}

fn rng_for_chunk(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Normalized spreads of samples `chunk·CHUNK ..` in order.
fn chunk_spreads(cfg: &SampleConfig, chunk: usize) -> Result<Vec<f64>, SampleError> {
    let mut rng = rng_for_chunk(cfg.seed, chunk);
    let len = CHUNK.min(cfg.n - chunk * CHUNK);
    let norm = zhan_bound(cfg.m);
    let tol = 1e-12 * cfg.m as f64;
    (0..len)
        .map(|_| {
            let a = sample_matrix(cfg.m, &mut rng);
            let ev = symmetric_eigenvalues(&a, tol)?;
            Ok((ev[ev.len() - 1] - ev[0]) / norm)
        })
        .collect()
}

/// All normalized spreads in sample order; independent of the worker count.
pub fn normalized_spreads(cfg: &SampleConfig) -> Result<Vec<f64>, SampleError> {
    if cfg.m == 0 || cfg.n == 0 {
        return Err(SampleError::Config("m and n must be at least 1".into()));
    }
    let chunks = cfg.n.div_ceil(CHUNK);
    let pool = crate::verify::build_pool(cfg.workers);
    let parts: Vec<Result<Vec<f64>, SampleError>> =
        pool.install(|| (0..chunks).into_par_iter().map(|c| chunk_spreads(cfg, c)).collect());
    let mut out = Vec::with_capacity(cfg.n);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

pub fn histogram(cfg: &SampleConfig, spreads: &[f64]) -> SpreadHistogram {
    let bins = cfg.bins;
    let mut counts = vec![0u64; bins];
    for &x in spreads {
        let b = ((x * bins as f64) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let n = spreads.len();
    let mean = spreads.iter().sum::<f64>() / n as f64;
    let variance = if n > 1 {
        spreads.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    SpreadHistogram {
        m: cfg.m,
        n,
        seed: cfg.seed,
        edges: (0..=bins).map(|i| i as f64 / bins as f64).collect(),
        counts,
        mean,
        variance,
        min: spreads.iter().copied().fold(f64::INFINITY, f64::min),
        max: spreads.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

pub fn run_distribution(cfg: &SampleConfig) -> Result<SpreadHistogram, SampleError> {
    if cfg.bins < 2 {
        return Err(SampleError::Config("bins must be at least 2".into()));
    }
    let spreads = normalized_spreads(cfg)?;
    Ok(histogram(cfg, &spreads))
}

#[derive(Serialize)]
struct Summary {
    m: usize,
    n: usize,
    seed: u64,
    bins: usize,
    mean: f64,
    variance: f64,
    min: f64,
    max: f64,
}

impl SpreadHistogram {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("bin_lo,bin_hi,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            s.push_str(&format!("{},{},{}\n", self.edges[i], self.edges[i + 1], c));
        }
        s
    }

    pub fn summary_json(&self) -> String {
        let doc = Summary {
            m: self.m,
            n: self.n,
            seed: self.seed,
            bins: self.counts.len(),
            mean: self.mean,
            variance: self.variance,
            min: self.min,
            max: self.max,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("summary serialises");
        s.push('\n');
        s
    }
}
