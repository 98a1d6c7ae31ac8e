//! Shared fixtures for the benchmark suite.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cesaro_lab::{BallPoint, CompositeRadial, SamplerConfig, TruncatedSeries};

/// A reproducible random polynomial pair in the given dimension.
pub fn polynomial_pair(dim: usize, degree: u32, cap: u32) -> (TruncatedSeries, TruncatedSeries) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBE9C);
    let f = TruncatedSeries::random_polynomial(dim, cap, degree, &mut rng).unwrap();
    let g = TruncatedSeries::random_polynomial(dim, cap, degree, &mut rng).unwrap();
    (f, g)
}

/// The anchored bump at radius r along the first axis.
pub fn bump(dim: usize, r: f64) -> CompositeRadial {
    let mut coords = vec![Complex64::new(0.0, 0.0); dim];
    coords[0] = Complex64::new(r, 0.0);
    CompositeRadial::h_a(&BallPoint::new(coords).unwrap())
}

/// A sampler small enough for tight benchmark loops.
pub fn small_sampler(dim: usize) -> SamplerConfig {
    let mut cfg = SamplerConfig::for_dim(dim);
    cfg.directions_per_radius = 64;
    cfg.ladder_depth = 8;
    cfg.refinement_iters = 10;
    cfg
}

/// An interior evaluation point with nonzero components.
pub fn probe_point(dim: usize) -> BallPoint {
    let coords: Vec<Complex64> = (0..dim)
        .map(|j| Complex64::new(0.4 / (j as f64 + 1.0), -0.2 / (j as f64 + 2.0)))
        .collect();
    BallPoint::new(coords).unwrap()
}
