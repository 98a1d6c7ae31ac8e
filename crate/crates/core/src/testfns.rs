//! Anchored test functions F(z) = phi(<z, a>) and an exact algebra for
//! their one-variable profiles phi.
//!
//! Profiles live in the ring C[w, l, s] where l = log(2/(1 - w)) and
//! s = 1/(1 - w). The ring is closed under d/dw (since dl/dw = s and
//! ds/dw = s^2), and the relation w s = s - 1 normalizes every monomial to
//! carry powers of w or powers of s but never both. Radial derivatives of
//! anchored functions reduce to profile derivatives because R<z, a> = <z, a>:
//!
//!   R F(z) = w phi'(w),   R R F(z) = w phi'(w) + w^2 phi''(w),  w = <z, a>.
//!
//! Differentiating in this ring is exact, so the families keep their defining
//! cancellations (for instance R of the h-family profile collapses to a
//! single monomial) even at anchors within 1e-4 of the sphere, where
//! numerical differentiation of the raw logarithms loses most of its digits.

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::Holomorphic;
use crate::series::{BallPoint, MultiIndex, TruncatedSeries};

/// Anchor radius below which log(2/(1 - |a|^2)) drops under 1, making the
/// normalized families grow instead of shrink. Constructors warn below it.
pub fn anchor_threshold() -> f64 {
    (1.0 - 2.0 / E).sqrt()
}

/// log(2/(1 - x)), the weight the normalized families are scaled by.
pub fn log_weight(x: f64) -> f64 {
    (2.0 / (1.0 - x)).ln()
}

fn insert_reduced(
    terms: &mut BTreeMap<(u16, u16, u16), Complex64>,
    (i, j, k): (u16, u16, u16),
    c: Complex64,
) {
    // w s = s - 1, applied until no monomial carries both symbols.
    if i > 0 && k > 0 {
        insert_reduced(terms, (i - 1, j, k), c);
        insert_reduced(terms, (i - 1, j, k - 1), -c);
        return;
    }
    *terms.entry((i, j, k)).or_insert(Complex64::new(0.0, 0.0)) += c;
}

/// Polynomial in w, l = log(2/(1 - w)), and s = 1/(1 - w), kept in the
/// normal form where no monomial mixes w-powers with s-powers.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPolynomial {
    terms: BTreeMap<(u16, u16, u16), Complex64>,
}

impl LogPolynomial {
    pub fn zero() -> Self {
        LogPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if c.norm() > 0.0 {
            terms.insert((0, 0, 0), c);
        }
        LogPolynomial { terms }
    }

    /// The identity profile w.
    pub fn var_w() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0, 0), Complex64::new(1.0, 0.0));
        LogPolynomial { terms }
    }

    /// The profile l = log(2/(1 - w)).
    pub fn var_log() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 1, 0), Complex64::new(1.0, 0.0));
        LogPolynomial { terms }
    }

    /// The profile s = 1/(1 - w).
    pub fn var_inv() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0, 1), Complex64::new(1.0, 0.0));
        LogPolynomial { terms }
    }

    fn prune(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() >= 1e-300);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&key, &c) in &other.terms {
            *terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        LogPolynomial { terms }.prune()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        LogPolynomial {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
        .prune()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(i1, j1, k1), &c1) in &self.terms {
            for (&(i2, j2, k2), &c2) in &other.terms {
                insert_reduced(&mut terms, (i1 + i2, j1 + j2, k1 + k2), c1 * c2);
            }
        }
        LogPolynomial { terms }.prune()
    }

    /// d/dw, exact on the ring.
    pub fn differentiate(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(i, j, k), &c) in &self.terms {
            if i > 0 {
                insert_reduced(&mut terms, (i - 1, j, k), c * i as f64);
            }
            if j > 0 {
                insert_reduced(&mut terms, (i, j - 1, k + 1), c * j as f64);
            }
            if k > 0 {
                insert_reduced(&mut terms, (i, j, k + 1), c * k as f64);
            }
        }
        LogPolynomial { terms }.prune()
    }

    fn mul_w(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(i, j, k), &c) in &self.terms {
            insert_reduced(&mut terms, (i + 1, j, k), c);
        }
        LogPolynomial { terms }.prune()
    }

    /// The profile of the radial derivative: w d/dw.
    pub fn radial(&self) -> Self {
        self.differentiate().mul_w()
    }

    /// Evaluates at w with Re(1 - w) > 0, where the principal logarithm of
    /// 2/(1 - w) agrees with the analytic continuation from (-1, 1).
    pub fn eval(&self, w: Complex64) -> Complex64 {
        debug_assert!(
            1.0 - w.re > 0.0,
            "profile evaluated at w = {w} past the slit"
        );
        let one = Complex64::new(1.0, 0.0);
        let s = one / (one - w);
        let l = (2.0 * s).ln();
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j, k), &c) in &self.terms {
            let mut t = c;
            if i > 0 {
                t *= w.powu(i as u32);
            }
            if j > 0 {
                t *= l.powu(j as u32);
            }
            if k > 0 {
                t *= s.powu(k as u32);
            }
            acc += t;
        }
        acc
    }

    /// One-variable Taylor expansion truncated at `cap`, using
    /// l = log 2 + sum_{m >= 1} w^m / m and s = sum_{m >= 0} w^m.
    pub fn taylor(&self, cap: u32) -> TruncatedSeries {
        let mut lhat_terms = vec![(MultiIndex::new(vec![0]), Complex64::new(LN_2, 0.0))];
        let mut shat_terms = vec![(MultiIndex::new(vec![0]), Complex64::new(1.0, 0.0))];
        for m in 1..=cap {
            lhat_terms.push((
                MultiIndex::new(vec![m]),
                Complex64::new(1.0 / m as f64, 0.0),
            ));
            shat_terms.push((MultiIndex::new(vec![m]), Complex64::new(1.0, 0.0)));
        }
        let lhat = TruncatedSeries::new(1, cap, lhat_terms).expect("valid log expansion");
        let shat = TruncatedSeries::new(1, cap, shat_terms).expect("valid inverse expansion");

        let mut acc = TruncatedSeries::zero(1, cap);
        for (&(i, j, k), &c) in &self.terms {
            if i as u32 > cap {
                continue;
            }
            let mut t = TruncatedSeries::monomial(1, cap, MultiIndex::new(vec![i as u32]), c)
                .expect("monomial within cap");
            for _ in 0..j {
                t = t.multiply(&lhat).expect("same dimension");
            }
            for _ in 0..k {
                t = t.multiply(&shat).expect("same dimension");
            }
            acc = acc.add(&t).expect("same dimension");
        }
        acc
    }
}

fn check_anchor(anchor: &[Complex64]) -> Result<f64> {
    let norm_sqr: f64 = anchor.iter().map(|c| c.norm_sqr()).sum();
    if !norm_sqr.is_finite() || norm_sqr > 1.0 + 1e-12 {
        return Err(Error::AnchorOutsideBall {
            norm: norm_sqr.sqrt(),
        });
    }
    Ok(norm_sqr.min(1.0))
}

fn warn_if_weak(norm: f64, family: &str) {
    if norm < anchor_threshold() {
        log::warn!(
            "{family} anchor has |a| = {norm:.4} below {:.4}; its log weight is under 1 \
             and the normalized profile grows instead of decaying",
            anchor_threshold()
        );
    }
}

/// (1 + l)^2 + 1 = l^2 + 2l + 2 as a profile.
fn bracket_profile() -> LogPolynomial {
    let l = LogPolynomial::var_log();
    l.mul(&l)
        .add(&l.scale(Complex64::new(2.0, 0.0)))
        .add(&LogPolynomial::constant(Complex64::new(2.0, 0.0)))
}

/// lambda (w - 1) ((1 + l)^2 + 1), the bounded log-squared bump.
fn h_profile(lambda: f64) -> LogPolynomial {
    let w_minus_1 = LogPolynomial::var_w().sub(&LogPolynomial::constant(Complex64::new(1.0, 0.0)));
    w_minus_1
        .mul(&bracket_profile())
        .scale(Complex64::new(lambda, 0.0))
}

/// int_0^1 w l(tw) dt = log 2 + w - (1 - w) l, the radial antiderivative of l.
fn log_antiderivative_profile() -> LogPolynomial {
    let l = LogPolynomial::var_log();
    let wl = LogPolynomial::var_w().mul(&l);
    LogPolynomial::constant(Complex64::new(LN_2, 0.0))
        .add(&LogPolynomial::var_w())
        .sub(&l)
        .add(&wl)
}

/// int_0^w l(u)^3 du = c3 - (1 - w)(l^3 + 3l^2 + 6l + 6) with
/// c3 = (log 2)^3 + 3 (log 2)^2 + 6 log 2 + 6.
fn log_cubed_antiderivative_profile() -> LogPolynomial {
    let l = LogPolynomial::var_log();
    let l2 = l.mul(&l);
    let l3 = l2.mul(&l);
    let poly = l3
        .add(&l2.scale(Complex64::new(3.0, 0.0)))
        .add(&l.scale(Complex64::new(6.0, 0.0)))
        .add(&LogPolynomial::constant(Complex64::new(6.0, 0.0)));
    let c3 = LN_2.powi(3) + 3.0 * LN_2.powi(2) + 6.0 * LN_2 + 6.0;
    let one_minus_w =
        LogPolynomial::constant(Complex64::new(1.0, 0.0)).sub(&LogPolynomial::var_w());
    LogPolynomial::constant(Complex64::new(c3, 0.0)).sub(&one_minus_w.mul(&poly))
}

/// Holomorphic function of the single variable w = <z, a> for a fixed anchor.
#[derive(Clone, Debug)]
pub struct CompositeRadial {
    anchor: Vec<Complex64>,
    tag: String,
    profile: LogPolynomial,
    d1: LogPolynomial,
    d2: LogPolynomial,
}

impl CompositeRadial {
    /// Wraps a profile around the pairing with `anchor` (closed unit ball).
    pub fn from_profile(
        anchor: &[Complex64],
        profile: LogPolynomial,
        tag: impl Into<String>,
    ) -> Result<Self> {
        check_anchor(anchor)?;
        let d1 = profile.radial();
        let d2 = d1.radial();
        Ok(CompositeRadial {
            anchor: anchor.to_vec(),
            tag: tag.into(),
            profile,
            d1,
            d2,
        })
    }

    /// log(2/(1 - <z, a>)) for an anchor in the closed unit ball; on the
    /// sphere this is the unbounded logarithmic symbol.
    pub fn log_kernel(anchor: &[Complex64]) -> Result<Self> {
        Self::from_profile(anchor, LogPolynomial::var_log(), "log_kernel")
    }

    /// The bounded bump h_a(z) = lambda (w - 1)((1 + l)^2 + 1) with
    /// lambda = 1/log(2/(1 - |a|^2)); its second radial derivative blows up
    /// near the anchor while the function itself stays uniformly bounded.
    pub fn h_a(a: &BallPoint) -> Self {
        let lambda = 1.0 / log_weight(a.norm_sqr());
        warn_if_weak(a.norm(), "h_a");
        Self::from_profile(a.coords(), h_profile(lambda), "h_a")
            .expect("ball point is a valid anchor")
    }

    /// h_a corrected by the radial antiderivative of l, which kills the first
    /// radial derivative at the anchor: R f_a(a) = 0.
    pub fn f_a(a: &BallPoint) -> Self {
        let lambda = 1.0 / log_weight(a.norm_sqr());
        warn_if_weak(a.norm(), "f_a");
        let profile = h_profile(lambda).sub(&log_antiderivative_profile());
        Self::from_profile(a.coords(), profile, "f_a").expect("ball point is a valid anchor")
    }

    /// h_a corrected by the cubed-log antiderivative, scaled by the inverse
    /// square of nu = log(2/(1 - |a|^2)); again R f_k(a) = 0, with the
    /// opposite-signed second derivative certificate.
    pub fn f_k(zk: &BallPoint) -> Self {
        let nu = log_weight(zk.norm_sqr());
        warn_if_weak(zk.norm(), "f_k");
        let profile = h_profile(1.0 / nu)
            .sub(&log_cubed_antiderivative_profile().scale(Complex64::new(1.0 / (nu * nu), 0.0)));
        Self::from_profile(zk.coords(), profile, "f_k").expect("ball point is a valid anchor")
    }

    pub fn anchor(&self) -> &[Complex64] {
        &self.anchor
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn profile(&self) -> &LogPolynomial {
        &self.profile
    }

    /// Profile of RF, exposed for coefficient-level checks.
    pub fn radial_profile(&self) -> &LogPolynomial {
        &self.d1
    }

    /// The pairing w = <z, a> the profile is evaluated at.
    pub fn pairing(&self, z: &BallPoint) -> Complex64 {
        z.pairing(&self.anchor)
    }

    /// R^order F as another composite function with the same anchor.
    pub fn radial_derivative(&self, order: u32) -> Self {
        let mut profile = self.profile.clone();
        for _ in 0..order {
            profile = profile.radial();
        }
        let d1 = profile.radial();
        let d2 = d1.radial();
        let mut tag = self.tag.clone();
        for _ in 0..order {
            tag = format!("R {tag}");
        }
        CompositeRadial {
            anchor: self.anchor.clone(),
            tag,
            profile,
            d1,
            d2,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        CompositeRadial {
            anchor: self.anchor.clone(),
            tag: self.tag.clone(),
            profile: self.profile.scale(c),
            d1: self.d1.scale(c),
            d2: self.d2.scale(c),
        }
    }
}

impl Holomorphic for CompositeRadial {
    fn dim(&self) -> usize {
        self.anchor.len()
    }

    fn eval(&self, z: &BallPoint) -> Complex64 {
        assert_eq!(
            z.dim(),
            self.anchor.len(),
            "point/anchor dimension mismatch"
        );
        self.profile.eval(z.pairing(&self.anchor))
    }

    fn radial_eval(&self, z: &BallPoint) -> Complex64 {
        assert_eq!(
            z.dim(),
            self.anchor.len(),
            "point/anchor dimension mismatch"
        );
        self.d1.eval(z.pairing(&self.anchor))
    }

    fn radial2_eval(&self, z: &BallPoint) -> Complex64 {
        assert_eq!(
            z.dim(),
            self.anchor.len(),
            "point/anchor dimension mismatch"
        );
        self.d2.eval(z.pairing(&self.anchor))
    }
}
