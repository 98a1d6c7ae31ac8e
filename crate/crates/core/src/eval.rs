//! A common evaluation interface for everything the toolkit can sample.
//!
//! Truncated series, anchored composite functions, and lazily evaluated
//! operator images all expose pointwise values of F, RF, and RRF, which is
//! exactly what the norm objectives and quadrature routines consume.

use num_complex::Complex64;

use crate::series::{BallPoint, TruncatedSeries};

/// A holomorphic function on the unit ball with first and second radial
/// derivatives available pointwise.
///
/// Implementations panic on dimension mismatch; callers are expected to pair
/// functions and points of the same ambient dimension.
pub trait Holomorphic: Sync {
    /// Ambient dimension n of the ball the function lives on.
    fn dim(&self) -> usize;

    /// F(z).
    fn eval(&self, z: &BallPoint) -> Complex64;

    /// RF(z), the radial derivative.
    fn radial_eval(&self, z: &BallPoint) -> Complex64;

    /// RRF(z), the second radial derivative.
    fn radial2_eval(&self, z: &BallPoint) -> Complex64;
}

impl Holomorphic for TruncatedSeries {
    fn dim(&self) -> usize {
        TruncatedSeries::dim(self)
    }

    fn eval(&self, z: &BallPoint) -> Complex64 {
        self.evaluate(z).expect("series/point dimension mismatch")
    }

    fn radial_eval(&self, z: &BallPoint) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, c) in self.terms() {
            if idx.order() == 0 {
                continue;
            }
            let mut mono = c * idx.order() as f64;
            for (e, zj) in idx.entries().iter().zip(z.coords()) {
                if *e > 0 {
                    mono *= zj.powu(*e);
                }
            }
            acc += mono;
        }
        acc
    }

    fn radial2_eval(&self, z: &BallPoint) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, c) in self.terms() {
            if idx.order() == 0 {
                continue;
            }
            let k = idx.order() as f64;
            let mut mono = c * (k * k);
            for (e, zj) in idx.entries().iter().zip(z.coords()) {
                if *e > 0 {
                    mono *= zj.powu(*e);
                }
            }
            acc += mono;
        }
        acc
    }
}

impl<T: Holomorphic + ?Sized> Holomorphic for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn eval(&self, z: &BallPoint) -> Complex64 {
        (**self).eval(z)
    }

    fn radial_eval(&self, z: &BallPoint) -> Complex64 {
        (**self).radial_eval(z)
    }

    fn radial2_eval(&self, z: &BallPoint) -> Complex64 {
        (**self).radial2_eval(z)
    }
}
