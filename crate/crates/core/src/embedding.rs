//! Random-subset (Bourgain-style) embedding of a finite graph metric into
//! `l_1^K`, plus the coordinate-sum projection onto the line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::exact_gap::{lambda_exact, GapError, GapOptions};
use crate::graph::{DistanceMatrix, Graph};
use crate::rational::Rational;
use crate::spectral::{lambda_r, SpectralError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum EmbeddingError {
    #[error("metric has {0} points, need at least 2")]
    TooFewPoints(usize),
    #[error("metric is disconnected")]
    Disconnected,
    #[error("embedding has {got} points, metric has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Gap(#[from] GapError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingResult {
    /// One row of `dim` coordinates per point.
    pub points: Vec<Vec<f64>>,
    pub dim: usize,
    pub scales: usize,
    pub reps: usize,
    pub seed: u64,
}

/// `ceil(log2 k)` for `k >= 2`.
fn ceil_log2(k: usize) -> usize {
    (usize::BITS - (k - 1).leading_zeros()) as usize
}

/// Embeds the metric with `ceil(log2 k)` scales of `ceil(log2 k)` repetitions.
///
/// Cell `(t, r)` draws its subset from a ChaCha8 stream seeded by `seed` and
/// selected by the cell index, so the result does not depend on thread
/// scheduling.
pub fn bourgain_embed(dist: &DistanceMatrix, seed: u64) -> Result<EmbeddingResult, EmbeddingError> {
    let k = dist.k();
    if k < 2 {
        return Err(EmbeddingError::TooFewPoints(k));
    }
    if !dist.is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    let scales = ceil_log2(k);
    let reps = scales;
    let columns: Vec<Vec<f64>> = (0..scales * reps)
        .into_par_iter()
        .map(|cell| {
            let t = cell / reps + 1;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(cell as u64);
            let p = 0.5f64.powi(t as i32);
            let mut subset = sample(&mut rng, k, p);
            if subset.is_empty() {
                subset = sample(&mut rng, k, p);
            }
            (0..k)
                .map(|x| {
                    subset
                        .iter()
                        .map(|&s| dist.raw(x, s))
                        .min()
                        .map_or(0.0, f64::from)
                })
                .collect()
        })
        .collect();
    let points = (0..k)
        .map(|x| columns.iter().map(|col| col[x]).collect())
        .collect();
    Ok(EmbeddingResult {
        points,
        dim: scales * reps,
        scales,
        reps,
        seed,
    })
}

fn sample(rng: &mut ChaCha8Rng, k: usize, p: f64) -> Vec<usize> {
    (0..k).filter(|_| rng.gen_bool(p)).collect()
}

/// `phi(v) = sum_i v_i` for each embedded point.
pub fn project_line(e: &EmbeddingResult) -> Vec<f64> {
    e.points.iter().map(|row| row.iter().sum()).collect()
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn serialize_maybe_inf<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

/// Worst-case stretch in each direction over all pairs. Collapsed pairs make
/// `contraction` and `distortion` infinite (serialized as `null`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stretch {
    pub expansion: f64,
    #[serde(serialize_with = "serialize_maybe_inf")]
    pub contraction: f64,
    #[serde(serialize_with = "serialize_maybe_inf")]
    pub distortion: f64,
}

impl Stretch {
    fn scan(dist: &DistanceMatrix, embedded: impl Fn(usize, usize) -> f64) -> Stretch {
        let mut expansion = 0.0f64;
        let mut contraction = 0.0f64;
        for x in 0..dist.k() {
            for y in x + 1..dist.k() {
                let d = f64::from(dist.raw(x, y));
                let e = embedded(x, y);
                expansion = expansion.max(e / d);
                contraction = contraction.max(if e == 0.0 { f64::INFINITY } else { d / e });
            }
        }
        Stretch {
            expansion,
            contraction,
            distortion: if contraction.is_finite() {
                expansion * contraction
            } else {
                f64::INFINITY
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistortionReport {
    pub l1: Stretch,
    pub line: Stretch,
}

pub fn distortion(
    dist: &DistanceMatrix,
    e: &EmbeddingResult,
) -> Result<DistortionReport, EmbeddingError> {
    let k = dist.k();
    if k < 2 {
        return Err(EmbeddingError::TooFewPoints(k));
    }
    if !dist.is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    if e.points.len() != k {
        return Err(EmbeddingError::SizeMismatch {
            expected: k,
            got: e.points.len(),
        });
    }
    let phi = project_line(e);
    Ok(DistortionReport {
        l1: Stretch::scan(dist, |x, y| l1(&e.points[x], &e.points[y])),
        line: Stretch::scan(dist, |x, y| (phi[x] - phi[y]).abs()),
    })
}

/// One row of the `lambda(G, H) log2^2(k) / lambda(G, R)` comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRecord {
    pub lambda_h: Rational,
    pub lambda_r: f64,
    pub k: usize,
    pub ratio: f64,
}

pub fn relate_to_r_report(
    g: &Graph,
    h: &Graph,
    opts: &GapOptions,
) -> Result<RatioRecord, EmbeddingError> {
    if !g.is_connected() || g.n() < 2 {
        return Err(EmbeddingError::Disconnected);
    }
    let lambda_h = lambda_exact(g, h, opts)?.value;
    let lambda_r = lambda_r(g)?.lambda1;
    let log_k = (h.n() as f64).log2();
    let ratio = lambda_h.to_f64() * log_k * log_k / lambda_r;
    Ok(RatioRecord {
        lambda_h,
        lambda_r,
        k: h.n(),
        ratio,
    })
}

/// Smallest ratio over the given pairs, with its index.
pub fn minimum_ratio(records: &[RatioRecord]) -> Option<(usize, &RatioRecord)> {
    records
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.ratio.total_cmp(&b.1.ratio))
}
