//! Lower-bound estimation of sup-type norms over the unit ball.
//!
//! Every norm here is the supremum of a continuous objective over the open
//! ball. The estimator scans a dyadic radius ladder r_j = 1 - 2^{-j} with a
//! fixed budget of directions per radius, then refines by golden section in
//! the radius along the direction of the best sample. Estimates are
//! therefore lower bounds, and they are monotone in the budget: extra
//! directions extend each radius's deterministic direction stream and a
//! deeper ladder appends radii, so neither can decrease the maximum.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::Holomorphic;
use crate::series::BallPoint;
use crate::testfns::log_weight;

/// Deepest ladder rung used by default: 1 - 2^{-14} keeps the log factors
/// in the objectives well conditioned in double precision.
pub const DEFAULT_LADDER_DEPTH: u32 = 14;

/// Default golden-section refinement budget.
pub const DEFAULT_REFINE_ITERS: usize = 40;

/// Default seed for the direction sampler.
pub const DEFAULT_SEED: u64 = 42;

/// Sampling plan for the sup estimators.
#[derive(Clone, Debug)]
pub struct SamplerConfig {
    /// Directions drawn at every ladder radius. In dimension one the
    /// directions are equispaced angles instead of random draws.
    pub directions_per_radius: usize,
    /// Ladder radii are r_j = 1 - 2^{-j} for j = 1..=ladder_depth.
    pub ladder_depth: u32,
    /// Golden-section evaluations spent refining the radius.
    pub refinement_iters: usize,
    /// Seed for the per-radius direction streams.
    pub rng_seed: u64,
    /// Unit directions injected at every radius, ahead of the random ones;
    /// used to pin known peak directions such as a normalized anchor.
    pub extra_directions: Vec<Vec<Complex64>>,
}

impl SamplerConfig {
    /// Defaults for ambient dimension `dim`: 512 equispaced angles when
    /// dim = 1, otherwise 256 random directions per radius.
    pub fn for_dim(dim: usize) -> Self {
        SamplerConfig {
            directions_per_radius: if dim == 1 { 512 } else { 256 },
            ladder_depth: DEFAULT_LADDER_DEPTH,
            refinement_iters: DEFAULT_REFINE_ITERS,
            rng_seed: DEFAULT_SEED,
            extra_directions: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    /// Registers a direction to sample at every radius. The vector must be
    /// unit length already; only its direction is meaningful.
    pub fn with_extra_direction(mut self, dir: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = dir.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "extra direction has norm {norm}, expected a unit vector"
            )));
        }
        self.extra_directions.push(dir);
        Ok(self)
    }

    /// The ladder radii in ascending order.
    pub fn ladder(&self) -> Vec<f64> {
        (1..=self.ladder_depth)
            .map(|j| 1.0 - 0.5f64.powi(j as i32))
            .collect()
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if dim == 0 {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        if self.directions_per_radius == 0 && self.extra_directions.is_empty() {
            return Err(Error::InvalidConfig(
                "no directions to sample: directions_per_radius is 0 and no extras given".into(),
            ));
        }
        if self.ladder_depth == 0 || self.ladder_depth > 50 {
            return Err(Error::InvalidConfig(format!(
                "ladder depth {} outside 1..=50",
                self.ladder_depth
            )));
        }
        for dir in &self.extra_directions {
            if dir.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: dir.len(),
                });
            }
        }
        Ok(())
    }
}

/// Result of a sup estimation: a certified lower bound together with the
/// point achieving it.
#[derive(Clone, Debug)]
pub struct NormEstimate {
    /// Lower bound for the supremum; exactly the objective at `argmax`.
    pub value: f64,
    /// The sampled or refined point where `value` was attained.
    pub argmax: BallPoint,
    /// Total objective evaluations spent.
    pub samples_used: usize,
    /// Whether golden-section refinement improved on the grid maximum.
    pub refined: bool,
}

/// Unit directions for ladder rung `j` (1-based): the extras first, then the
/// deterministic per-rung stream.
fn directions(cfg: &SamplerConfig, dim: usize, j: u32) -> Vec<Vec<Complex64>> {
    let mut dirs = cfg.extra_directions.clone();
    if dim == 1 {
        for m in 0..cfg.directions_per_radius {
            let theta = 2.0 * std::f64::consts::PI * m as f64 / cfg.directions_per_radius as f64;
            dirs.push(vec![Complex64::from_polar(1.0, theta)]);
        }
    } else {
        // Fresh stream per rung so that deepening the ladder leaves earlier
        // rungs untouched, keeping estimates monotone in the budget.
        let mut rng = ChaCha8Rng::seed_from_u64(
            cfg.rng_seed
                .wrapping_add(u64::from(j).wrapping_mul(0x9E3779B97F4A7C15)),
        );
        for _ in 0..cfg.directions_per_radius {
            loop {
                let mut v = Vec::with_capacity(dim);
                let mut norm_sqr = 0.0;
                for _ in 0..dim {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    norm_sqr += re * re + im * im;
                    v.push(Complex64::new(re, im));
                }
                if norm_sqr > 1e-24 {
                    let inv = norm_sqr.sqrt().recip();
                    dirs.push(v.into_iter().map(|c| c * inv).collect());
                    break;
                }
            }
        }
    }
    dirs
}

/// The full deterministic sample set: every ladder radius times every
/// direction for that rung, in ladder order.
pub fn sample_points(cfg: &SamplerConfig, dim: usize) -> Result<Vec<BallPoint>> {
    cfg.validate(dim)?;
    let mut points = Vec::new();
    for (j, r) in (1..).zip(cfg.ladder()) {
        for dir in directions(cfg, dim, j) {
            let coords = dir.iter().map(|c| c * r).collect();
            points.push(BallPoint::new(coords).expect("ladder radii stay inside the ball"));
        }
    }
    Ok(points)
}

/// Golden-section maximization on [a, b] for a unimodal objective,
/// returning (argmax, value, evaluations). The reported pair is always an
/// actually evaluated point, never an interpolated one.
pub fn golden_section_max(
    mut a: f64,
    mut b: f64,
    iters: usize,
    mut h: impl FnMut(f64) -> Result<f64>,
) -> Result<(f64, f64, usize)> {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = h(c)?;
    let mut fd = h(d)?;
    let mut used = 2;
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = h(c)?;
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = h(d)?;
            if fd > best.1 {
                best = (d, fd);
            }
        }
        used += 1;
    }
    Ok((best.0, best.1, used))
}

/// Shared sup estimator: deterministic grid scan with rayon fan-out, then
/// radial golden-section refinement through the best direction.
fn estimate_sup(
    dim: usize,
    cfg: &SamplerConfig,
    objective: &(dyn Fn(&BallPoint) -> f64 + Sync),
) -> Result<NormEstimate> {
    let points = sample_points(cfg, dim)?;
    let (grid_val, grid_idx) = points
        .par_iter()
        .enumerate()
        .map(|(i, z)| {
            let v = objective(z);
            if v.is_finite() {
                Ok((v, i))
            } else {
                Err(Error::NonFiniteSample {
                    context: "scanning a norm objective over the sample grid",
                })
            }
        })
        .try_reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            // Ties keep the earliest point in sample order, so the parallel
            // reduction is order-independent and deterministic.
            |a, b| {
                Ok(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                })
            },
        )?;

    let mut samples_used = points.len();
    let mut best_val = grid_val;
    let mut best_point = points[grid_idx].clone();
    let mut refined = false;

    if cfg.refinement_iters > 0 {
        let r0 = best_point.norm();
        if r0 > 0.0 {
            let inv = r0.recip();
            let dir: Vec<Complex64> = best_point.coords().iter().map(|c| c * inv).collect();
            let ladder = cfg.ladder();
            let jstar = ladder
                .iter()
                .enumerate()
                .min_by(|(_, ra), (_, rb)| {
                    (*ra - r0)
                        .abs()
                        .partial_cmp(&(*rb - r0).abs())
                        .expect("ladder radii are finite")
                })
                .map(|(i, _)| i)
                .expect("ladder is nonempty");
            let lo = if jstar == 0 { 0.0 } else { ladder[jstar - 1] };
            let hi = if jstar + 1 < ladder.len() {
                ladder[jstar + 1]
            } else {
                ladder[ladder.len() - 1]
            };
            let probe = |r: f64| -> Result<f64> {
                let coords = dir.iter().map(|c| c * r).collect();
                let z = BallPoint::new(coords).expect("refinement radii stay inside the ball");
                let v = objective(&z);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NonFiniteSample {
                        context: "refining a norm objective along a radius",
                    })
                }
            };
            let (r_best, v_best, used) = golden_section_max(lo, hi, cfg.refinement_iters, probe)?;
            samples_used += used;
            if v_best > best_val {
                best_val = v_best;
                best_point =
                    BallPoint::new(dir.iter().map(|c| c * r_best).collect()).expect("inside ball");
                refined = true;
            }
        }
    }

    Ok(NormEstimate {
        value: best_val,
        argmax: best_point,
        samples_used,
        refined,
    })
}

/// sup |F| over the ball.
pub fn sup_norm(f: &dyn Holomorphic, cfg: &SamplerConfig) -> Result<NormEstimate> {
    estimate_sup(f.dim(), cfg, &|z| f.eval(z).norm())
}

/// sup (1 - |z|^2) |RF(z)|.
pub fn bloch_seminorm(f: &dyn Holomorphic, cfg: &SamplerConfig) -> Result<NormEstimate> {
    estimate_sup(f.dim(), cfg, &|z| {
        (1.0 - z.norm_sqr()) * f.radial_eval(z).norm()
    })
}

/// sup (1 - |z|^2) |RF(z)| log(2/(1 - |z|^2)).
pub fn log_bloch_seminorm(f: &dyn Holomorphic, cfg: &SamplerConfig) -> Result<NormEstimate> {
    estimate_sup(f.dim(), cfg, &|z| {
        let x = z.norm_sqr();
        (1.0 - x) * log_weight(x) * f.radial_eval(z).norm()
    })
}

/// |F(0)| + sup (1 - |z|^2) |RRF(z)|, the Bloch seminorm of RF plus the
/// value at the origin.
pub fn zygmund_norm(f: &dyn Holomorphic, cfg: &SamplerConfig) -> Result<NormEstimate> {
    let origin = BallPoint::origin(f.dim());
    let at_zero = f.eval(&origin).norm();
    if !at_zero.is_finite() {
        return Err(Error::NonFiniteSample {
            context: "evaluating at the origin for the Zygmund norm",
        });
    }
    let mut est = estimate_sup(f.dim(), cfg, &|z| {
        (1.0 - z.norm_sqr()) * f.radial2_eval(z).norm()
    })?;
    est.value += at_zero;
    est.samples_used += 1;
    Ok(est)
}

/// Empirical constant in the pointwise growth bound
/// |F(z) - F(0)| <= C log(2/(1 - |z|^2)) bloch(F): the max of the ratio over
/// the sample grid. Zero for functions with vanishing Bloch seminorm. The
/// grid starts at radius 1/2, so the degenerate z = 0 ratio never arises.
pub fn pointwise_log_bound(f: &dyn Holomorphic, cfg: &SamplerConfig) -> Result<f64> {
    let bloch = bloch_seminorm(f, cfg)?;
    if bloch.value == 0.0 {
        return Ok(0.0);
    }
    let f0 = f.eval(&BallPoint::origin(f.dim()));
    let points = sample_points(cfg, f.dim())?;
    points
        .par_iter()
        .map(|z| {
            let ratio = (f.eval(z) - f0).norm() / (log_weight(z.norm_sqr()) * bloch.value);
            if ratio.is_finite() {
                Ok(ratio)
            } else {
                Err(Error::NonFiniteSample {
                    context: "evaluating the pointwise growth ratio",
                })
            }
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}
