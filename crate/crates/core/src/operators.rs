//! Integral operators with holomorphic symbol and their coefficient-space
//! realizations.
//!
//! For a symbol g on the ball,
//!
//!   (T_g f)(z) = int_0^1 f(tz) Rg(tz) dt/t,
//!   (I_g f)(z) = int_0^1 Rf(tz) g(tz) dt/t,
//!   (M_g f)(z) = g(z) f(z),
//!
//! related by T_g f + I_g f = M_g f - f(0) g(0). Applying R under the
//! integral sign gives R(T_g f) = f Rg and R(I_g f) = (Rf) g, so on
//! truncated series both operators are radial antiderivatives of products
//! and are computed exactly. Direct Gauss-Legendre quadrature of the
//! defining integrals supplies an independent pointwise route.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::Holomorphic;
use crate::quad::{GaussLegendre, DEFAULT_NODES};
use crate::series::{BallPoint, TruncatedSeries};

/// T_g f on coefficients: the radial antiderivative of f Rg.
pub fn apply_tg(g: &TruncatedSeries, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.multiply(&g.radial_derivative())?.radial_antiderivative()
}

/// I_g f on coefficients: the radial antiderivative of (Rf) g.
pub fn apply_ig(g: &TruncatedSeries, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.radial_derivative().multiply(g)?.radial_antiderivative()
}

/// M_g f = g f on coefficients.
pub fn apply_mg(g: &TruncatedSeries, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    g.multiply(f)
}

/// Largest coefficient of T_g f + I_g f - M_g f + f(0) g(0), which is zero
/// in exact arithmetic.
pub fn splitting_residual(g: &TruncatedSeries, f: &TruncatedSeries) -> Result<f64> {
    let t = apply_tg(g, f)?;
    let i = apply_ig(g, f)?;
    let m = apply_mg(g, f)?;
    let offset = TruncatedSeries::constant(
        f.dim(),
        f.cap().min(g.cap()),
        f.constant_term() * g.constant_term(),
    );
    let residual = t.add(&i)?.sub(&m)?.add(&offset)?;
    Ok(residual.max_abs_coeff())
}

/// Coefficients of the classical Cesaro mean: b_j = (a_0 + ... + a_j)/(j + 1).
pub fn classical_cesaro(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    coeffs
        .iter()
        .enumerate()
        .map(|(j, a)| {
            acc += a;
            acc / (j as f64 + 1.0)
        })
        .collect()
}

fn check_same_dim(g: &dyn Holomorphic, f: &dyn Holomorphic) -> Result<usize> {
    if g.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            got: f.dim(),
        });
    }
    Ok(g.dim())
}

fn finite(v: Complex64, context: &'static str) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteSample { context })
    }
}

/// (T_g f)(z) by quadrature of the defining integral. The integrand extends
/// continuously to t = 0 because Rg vanishes at the origin; an open rule
/// never evaluates there.
pub fn quadrature_tg(
    g: &dyn Holomorphic,
    f: &dyn Holomorphic,
    z: &BallPoint,
    nodes: usize,
) -> Result<Complex64> {
    check_same_dim(g, f)?;
    let rule = GaussLegendre::new(nodes);
    let v = rule.integrate(|t| {
        let tz = z.scale(t);
        f.eval(&tz) * g.radial_eval(&tz) / t
    });
    finite(v, "integrating T_g by quadrature")
}

/// (I_g f)(z) by quadrature of the defining integral.
pub fn quadrature_ig(
    g: &dyn Holomorphic,
    f: &dyn Holomorphic,
    z: &BallPoint,
    nodes: usize,
) -> Result<Complex64> {
    check_same_dim(g, f)?;
    let rule = GaussLegendre::new(nodes);
    let v = rule.integrate(|t| {
        let tz = z.scale(t);
        f.radial_eval(&tz) * g.eval(&tz) / t
    });
    finite(v, "integrating I_g by quadrature")
}

/// int_0^1 ((1 - t<z, w>)^{-(n+1+beta)} - 1) dt/t, the ray integral of the
/// weighted reproducing kernel. Its modulus stays comparable to
/// |1 - <z, w>|^{-(n+beta)} as <z, w> approaches the sphere.
pub fn kernel_ray_integral(
    z: &BallPoint,
    w: &BallPoint,
    beta: f64,
    nodes: usize,
) -> Result<Complex64> {
    if z.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: z.dim(),
            got: w.dim(),
        });
    }
    let u = z.pairing(w.coords());
    let p = z.dim() as f64 + 1.0 + beta;
    let one = Complex64::new(1.0, 0.0);
    let rule = GaussLegendre::new(nodes);
    let v = rule.integrate(|t| ((one - t * u).powf(-p) - one) / t);
    finite(v, "integrating the kernel along a ray")
}

/// Which of the three operators an image represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Tg,
    Ig,
    Mg,
}

impl OperatorKind {
    pub fn label(self) -> &'static str {
        match self {
            OperatorKind::Tg => "tg",
            OperatorKind::Ig => "ig",
            OperatorKind::Mg => "mg",
        }
    }
}

/// Lazily evaluated operator image. Values of the image itself come from
/// quadrature (or a plain product for M_g); its radial derivatives come from
/// the exact differentiation identities, so norm objectives never integrate.
pub struct OperatorImage<'a> {
    kind: OperatorKind,
    g: &'a dyn Holomorphic,
    f: &'a dyn Holomorphic,
    rule: GaussLegendre,
}

impl<'a> OperatorImage<'a> {
    pub fn new(kind: OperatorKind, g: &'a dyn Holomorphic, f: &'a dyn Holomorphic) -> Result<Self> {
        check_same_dim(g, f)?;
        Ok(OperatorImage {
            kind,
            g,
            f,
            rule: GaussLegendre::new(DEFAULT_NODES),
        })
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.rule = GaussLegendre::new(nodes);
        self
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }
}

impl Holomorphic for OperatorImage<'_> {
    fn dim(&self) -> usize {
        self.g.dim()
    }

    fn eval(&self, z: &BallPoint) -> Complex64 {
        match self.kind {
            OperatorKind::Tg => self.rule.integrate(|t| {
                let tz = z.scale(t);
                self.f.eval(&tz) * self.g.radial_eval(&tz) / t
            }),
            OperatorKind::Ig => self.rule.integrate(|t| {
                let tz = z.scale(t);
                self.f.radial_eval(&tz) * self.g.eval(&tz) / t
            }),
            OperatorKind::Mg => self.g.eval(z) * self.f.eval(z),
        }
    }

    fn radial_eval(&self, z: &BallPoint) -> Complex64 {
        match self.kind {
            OperatorKind::Tg => self.f.eval(z) * self.g.radial_eval(z),
            OperatorKind::Ig => self.f.radial_eval(z) * self.g.eval(z),
            OperatorKind::Mg => {
                self.g.radial_eval(z) * self.f.eval(z) + self.g.eval(z) * self.f.radial_eval(z)
            }
        }
    }

    fn radial2_eval(&self, z: &BallPoint) -> Complex64 {
        match self.kind {
            OperatorKind::Tg => {
                self.f.radial_eval(z) * self.g.radial_eval(z)
                    + self.f.eval(z) * self.g.radial2_eval(z)
            }
            OperatorKind::Ig => {
                self.f.radial2_eval(z) * self.g.eval(z)
                    + self.f.radial_eval(z) * self.g.radial_eval(z)
            }
            OperatorKind::Mg => {
                self.g.radial2_eval(z) * self.f.eval(z)
                    + 2.0 * self.g.radial_eval(z) * self.f.radial_eval(z)
                    + self.g.eval(z) * self.f.radial2_eval(z)
            }
        }
    }
}
