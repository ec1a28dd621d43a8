//! Random state generation under the product measure.
//!
//! Mixed states are drawn from the measure "Haar-random eigenbasis times
//! flat eigenvalue simplex": the eigenvector frame is a Haar-distributed
//! orthogonal (Real kind, both determinant signs) or unitary (Complex
//! kind) matrix, and the spectrum is an independent uniform point of the
//! probability simplex. Pure states are uniform on the unit sphere of the
//! coefficient space.
//!
//! Reproducibility contract: every sampler consumes a [`SampleRng`], and
//! worker substreams come from [`derive_substream`], which maps
//! `(seed, worker_index)` onto the stream-counter space of a ChaCha
//! cipher. Streams are disjoint by construction rather than by hashing
//! luck, so a fixed `(seed, workers)` pair yields byte-identical sample
//! sequences no matter how the work is scheduled.

use crate::linalg::{qr_positive_diagonal, Matrix4};
use crate::scalar::{Complex64, Quaternion, ScalarKind};
use crate::states::{DensityMatrix, PureState, SimplexPoint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Open01, StandardNormal};
use thiserror::Error;

/// The base generator: a counter-mode stream cipher with 2^64 independent
/// streams per seed.
pub type SampleRng = ChaCha8Rng;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplingError {
    #[error("kind {kind} is not supported for {context}")]
    UnsupportedKind {
        kind: ScalarKind,
        context: &'static str,
    },
    #[error("invalid sample configuration: {reason}")]
    InvalidConfig { reason: &'static str },
}

/// Configuration of one sampling run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    pub kind: ScalarKind,
    pub seed: u64,
    pub count: u64,
    pub workers: u64,
}

impl SampleConfig {
    pub fn new(kind: ScalarKind, seed: u64, count: u64, workers: u64) -> Result<Self, SamplingError> {
        let cfg = SampleConfig {
            kind,
            seed,
            count,
            workers,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SamplingError> {
        if self.count == 0 {
            return Err(SamplingError::InvalidConfig {
                reason: "count must be positive",
            });
        }
        if self.workers == 0 {
            return Err(SamplingError::InvalidConfig {
                reason: "workers must be positive",
            });
        }
        Ok(())
    }

    /// Number of samples assigned to `worker`; the remainder spreads over
    /// the leading workers.
    pub fn worker_count(&self, worker: u64) -> u64 {
        let base = self.count / self.workers;
        let rem = self.count % self.workers;
        base + u64::from(worker < rem)
    }
}

/// The generator for one worker's substream.
///
/// Every `(seed, worker_index)` pair selects a distinct cipher stream, so
/// substreams never collide regardless of how many samples each consumes.
pub fn derive_substream(seed: u64, worker_index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker_index);
    rng
}

fn randn(rng: &mut SampleRng) -> f64 {
    StandardNormal.sample(rng)
}

/// Uniform point of the probability simplex via normalized exponential
/// spacings.
pub fn sample_simplex(rng: &mut SampleRng) -> SimplexPoint {
    let mut e = [0.0; 4];
    let mut sum = 0.0;
    for v in e.iter_mut() {
        let u: f64 = Open01.sample(rng);
        *v = -u.ln();
        sum += *v;
    }
    SimplexPoint::new(e.map(|x| x / sum))
        .expect("normalized exponential spacings form a simplex point")
}

/// A Haar-distributed frame of the given kind.
#[derive(Clone, Copy, Debug)]
pub enum HaarMatrix {
    Real(Matrix4<f64>),
    Complex(Matrix4<Complex64>),
}

/// Haar-random orthogonal matrix over the full group (determinants +1 and
/// -1 each occur with probability 1/2).
pub fn sample_orthogonal(rng: &mut SampleRng) -> Matrix4<f64> {
    let g = Matrix4::from_fn(|_, _| randn(rng));
    let (q, _) = qr_positive_diagonal(&g);
    q
}

/// Haar-random unitary matrix.
pub fn sample_unitary(rng: &mut SampleRng) -> Matrix4<Complex64> {
    let g = Matrix4::from_fn(|_, _| Complex64::new(randn(rng), randn(rng)));
    let (q, _) = qr_positive_diagonal(&g);
    q
}

/// Haar-random frame of the given kind (Real or Complex).
pub fn sample_haar(kind: ScalarKind, rng: &mut SampleRng) -> Result<HaarMatrix, SamplingError> {
    match kind {
        ScalarKind::Real => Ok(HaarMatrix::Real(sample_orthogonal(rng))),
        ScalarKind::Complex => Ok(HaarMatrix::Complex(sample_unitary(rng))),
        ScalarKind::Quaternion => Err(SamplingError::UnsupportedKind {
            kind,
            context: "Haar frame sampling",
        }),
    }
}

/// Random mixed state together with the simplex draw that became its
/// spectrum.
pub fn sample_mixed_decomposed(
    kind: ScalarKind,
    rng: &mut SampleRng,
) -> Result<(SimplexPoint, DensityMatrix), SamplingError> {
    let p = sample_simplex(rng);
    let d = Matrix4::<f64>::diagonal_real(*p.weights());
    let rho = match sample_haar(kind, rng)? {
        HaarMatrix::Real(q) => {
            let m = q.matmul(&d).matmul(&q.transpose());
            // Exact symmetry despite floating-point products.
            let m = m.add(&m.transpose()).scale(0.5);
            DensityMatrix::new_unchecked(m.embed_complex(), ScalarKind::Real)
        }
        HaarMatrix::Complex(q) => {
            let m = q
                .matmul(&d.embed_complex())
                .matmul(&q.adjoint());
            let m = m.add(&m.adjoint()).scale(0.5);
            DensityMatrix::new_unchecked(m, ScalarKind::Complex)
        }
    };
    Ok((p, rho))
}

/// Random mixed state of the given kind under the product measure.
pub fn sample_mixed(kind: ScalarKind, rng: &mut SampleRng) -> Result<DensityMatrix, SamplingError> {
    sample_mixed_decomposed(kind, rng).map(|(_, rho)| rho)
}

/// Random pure state, uniform on the unit sphere of the coefficient
/// space (normalized Gaussian components).
pub fn sample_pure(kind: ScalarKind, rng: &mut SampleRng) -> Result<PureState, SamplingError> {
    match kind {
        ScalarKind::Real => loop {
            let v = [randn(rng), randn(rng), randn(rng), randn(rng)];
            let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.0 {
                let c = v.map(|x| Complex64::new(x / n, 0.0));
                return Ok(PureState::new_unchecked(c, ScalarKind::Real));
            }
        },
        ScalarKind::Complex => loop {
            let mut v = [Complex64::new(0.0, 0.0); 4];
            for z in v.iter_mut() {
                *z = Complex64::new(randn(rng), randn(rng));
            }
            let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n > 0.0 {
                return Ok(PureState::new_unchecked(
                    v.map(|z| z / n),
                    ScalarKind::Complex,
                ));
            }
        },
        ScalarKind::Quaternion => Err(SamplingError::UnsupportedKind {
            kind,
            context: "product-basis pure state sampling",
        }),
    }
}

/// Uniform random unit quaternion (normalized 4-dimensional Gaussian).
pub fn sample_unit_quaternion(rng: &mut SampleRng) -> Quaternion {
    loop {
        let q = Quaternion::new(randn(rng), randn(rng), randn(rng), randn(rng));
        let n = q.norm();
        if n > 0.0 {
            return q.scale(1.0 / n);
        }
    }
}

/// Run `per_sample` across all workers' substreams and concatenate the
/// results in worker order.
///
/// The output is a pure function of the configuration: worker `i` draws
/// `cfg.worker_count(i)` samples from `derive_substream(cfg.seed, i)`,
/// and scheduling cannot reorder the concatenation.
pub fn collect_samples<T, F>(cfg: &SampleConfig, per_sample: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut SampleRng) -> T + Sync,
{
    let worker_chunk = |worker: u64| -> Vec<T> {
        let mut rng = derive_substream(cfg.seed, worker);
        let n = cfg.worker_count(worker);
        (0..n).map(|_| per_sample(&mut rng)).collect()
    };

    #[cfg(feature = "parallel")]
    {
        if cfg.workers > 1 {
            use rayon::prelude::*;
            return (0..cfg.workers)
                .into_par_iter()
                .map(worker_chunk)
                .collect::<Vec<Vec<T>>>()
                .into_iter()
                .flatten()
                .collect();
        }
    }

    (0..cfg.workers).flat_map(worker_chunk).collect()
}
