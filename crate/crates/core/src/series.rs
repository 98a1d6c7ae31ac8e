//! Sparse truncated multivariate power series on the unit ball of C^n.
//!
//! A holomorphic function is represented by its Taylor coefficients,
//! f(z) = sum_alpha a_alpha z^alpha, stored sparsely and truncated at a total
//! degree cap. Addition and multiplication truncate back to the cap, so the
//! type is closed under the ring operations. The radial derivative
//!
//!   Rf(z) = sum_alpha |alpha| a_alpha z^alpha
//!
//! and its inverse (defined when the constant term vanishes) act diagonally
//! on coefficients and are therefore exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped during normalization.
pub const COEFF_FLOOR: f64 = 1e-300;

/// Exponent vector alpha of a monomial z^alpha = z_1^{alpha_1} ... z_n^{alpha_n}.
///
/// Ordered by total order |alpha| first and lexicographically within an
/// order, so iterating a coefficient map visits monomials degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// Index of the pure first-power monomial z_{j+1}.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        MultiIndex(e)
    }

    /// Total order |alpha| = alpha_1 + ... + alpha_n.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise sum, the exponent of a product of monomials.
    pub fn concat(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices of the given dimension with total order at most
/// `max_order`, in ascending `MultiIndex` order.
pub fn multi_indices_up_to(dim: usize, max_order: u32) -> Vec<MultiIndex> {
    fn rec(out: &mut Vec<MultiIndex>, prefix: &mut Vec<u32>, left: u32, slots: usize) {
        if slots == 1 {
            prefix.push(left);
            out.push(MultiIndex::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(out, prefix, left - v, slots - 1);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=max_order {
        rec(&mut out, &mut Vec::with_capacity(dim), d, dim);
    }
    out
}

/// A point of the open unit ball B_n = { z in C^n : |z| < 1 }.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint {
    coords: Vec<Complex64>,
}

impl BallPoint {
    /// Construction rejects points with Euclidean norm >= 1.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = coords.iter().map(|c| c.norm_sqr()).sum();
        if !norm_sqr.is_finite() || norm_sqr >= 1.0 {
            return Err(Error::OutsideBall {
                norm: norm_sqr.sqrt(),
            });
        }
        Ok(BallPoint { coords })
    }

    pub fn origin(dim: usize) -> Self {
        BallPoint {
            coords: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Hermitian pairing <z, a> = sum_j z_j conj(a_j).
    pub fn pairing(&self, anchor: &[Complex64]) -> Complex64 {
        debug_assert_eq!(self.coords.len(), anchor.len());
        self.coords
            .iter()
            .zip(anchor)
            .map(|(z, a)| z * a.conj())
            .sum()
    }

    /// The dilate tz, staying inside the ball for 0 <= t <= 1.
    pub fn scale(&self, t: f64) -> BallPoint {
        assert!(
            (0.0..=1.0).contains(&t),
            "dilation factor {t} outside [0, 1]"
        );
        BallPoint {
            coords: self.coords.iter().map(|c| c * t).collect(),
        }
    }
}

/// Sparse power series truncated at a total degree cap.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    dim: usize,
    cap: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from (index, coefficient) terms. Duplicate indices are
    /// summed. Terms must match `dim` and stay within `cap`.
    pub fn new(
        dim: usize,
        cap: u32,
        terms: impl IntoIterator<Item = (MultiIndex, Complex64)>,
    ) -> Result<Self> {
        let mut coeffs: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (idx, c) in terms {
            if idx.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: idx.dim(),
                });
            }
            if idx.order() > cap {
                return Err(Error::OrderExceedsCap {
                    order: idx.order(),
                    cap,
                });
            }
            *coeffs.entry(idx).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        coeffs.retain(|_, c| c.norm() >= COEFF_FLOOR);
        Ok(TruncatedSeries { dim, cap, coeffs })
    }

    pub fn zero(dim: usize, cap: u32) -> Self {
        TruncatedSeries {
            dim,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, cap: u32, c: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c.norm() >= COEFF_FLOOR {
            coeffs.insert(MultiIndex::new(vec![0; dim]), c);
        }
        TruncatedSeries { dim, cap, coeffs }
    }

    pub fn one(dim: usize, cap: u32) -> Self {
        Self::constant(dim, cap, Complex64::new(1.0, 0.0))
    }

    /// The coordinate function z_{j+1}.
    pub fn coordinate(dim: usize, cap: u32, j: usize) -> Result<Self> {
        if j >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: j + 1,
            });
        }
        Self::monomial(dim, cap, MultiIndex::unit(dim, j), Complex64::new(1.0, 0.0))
    }

    pub fn monomial(dim: usize, cap: u32, index: MultiIndex, c: Complex64) -> Result<Self> {
        Self::new(dim, cap, [(index, c)])
    }

    /// A polynomial with independent coefficients drawn uniformly from the
    /// complex square [-1, 1] x [-1, 1]i on every monomial of order <= degree.
    pub fn random_polynomial(
        dim: usize,
        cap: u32,
        degree: u32,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        if degree > cap {
            return Err(Error::OrderExceedsCap { order: degree, cap });
        }
        let terms = multi_indices_up_to(dim, degree)
            .into_iter()
            .map(|idx| {
                let re = rng.gen_range(-1.0..=1.0);
                let im = rng.gen_range(-1.0..=1.0);
                (idx, Complex64::new(re, im))
            })
            .collect::<Vec<_>>();
        Self::new(dim, cap, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of z^index, zero when absent.
    pub fn coeff(&self, index: &MultiIndex) -> Complex64 {
        debug_assert_eq!(index.dim(), self.dim);
        self.coeffs
            .get(index)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&MultiIndex::new(vec![0; self.dim]))
    }

    /// Terms in ascending (order, lex) index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, Complex64)> {
        self.coeffs.iter().map(|(k, v)| (k, *v))
    }

    /// Largest coefficient magnitude, zero for the zero series.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest stored total order, zero for the zero series.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|idx| idx.order()).max().unwrap_or(0)
    }

    /// The same coefficients under a different cap. Shrinking below a stored
    /// term's order is an error rather than a silent truncation.
    pub fn with_cap(&self, cap: u32) -> Result<Self> {
        if self.degree() > cap {
            return Err(Error::OrderExceedsCap {
                order: self.degree(),
                cap,
            });
        }
        Ok(TruncatedSeries {
            dim: self.dim,
            cap,
            coeffs: self.coeffs.clone(),
        })
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    /// Sum, truncated at the smaller of the two caps.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let cap = self.cap.min(other.cap);
        let mut coeffs = BTreeMap::new();
        for (idx, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if idx.order() > cap {
                continue;
            }
            *coeffs
                .entry(idx.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        coeffs.retain(|_, c| c.norm() >= COEFF_FLOOR);
        Ok(TruncatedSeries {
            dim: self.dim,
            cap,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut coeffs: BTreeMap<MultiIndex, Complex64> = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.clone(), v * c))
            .collect();
        coeffs.retain(|_, c| c.norm() >= COEFF_FLOOR);
        TruncatedSeries {
            dim: self.dim,
            cap: self.cap,
            coeffs,
        }
    }

    /// Product, truncated at the smaller of the two caps. Term pairs whose
    /// combined order exceeds the cap are skipped; since terms iterate in
    /// ascending order the inner loop can stop at the first overflow.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let cap = self.cap.min(other.cap);
        let mut coeffs: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            if a.order() > cap {
                break;
            }
            for (b, cb) in &other.coeffs {
                if a.order() + b.order() > cap {
                    break;
                }
                *coeffs
                    .entry(a.concat(b))
                    .or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        coeffs.retain(|_, c| c.norm() >= COEFF_FLOOR);
        Ok(TruncatedSeries {
            dim: self.dim,
            cap,
            coeffs,
        })
    }

    /// Evaluates the truncation at a point of the open ball, summing terms
    /// degree by degree.
    pub fn evaluate(&self, z: &BallPoint) -> Result<Complex64> {
        if z.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.dim(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, c) in &self.coeffs {
            let mut mono = *c;
            for (e, zj) in idx.entries().iter().zip(z.coords()) {
                if *e > 0 {
                    mono *= zj.powu(*e);
                }
            }
            acc += mono;
        }
        Ok(acc)
    }

    /// Radial derivative Rf = sum |alpha| a_alpha z^alpha.
    pub fn radial_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(idx, _)| idx.order() > 0)
            .map(|(idx, c)| (idx.clone(), c * idx.order() as f64))
            .collect();
        TruncatedSeries {
            dim: self.dim,
            cap: self.cap,
            coeffs,
        }
    }

    /// Second radial derivative R(Rf) = sum |alpha|^2 a_alpha z^alpha.
    pub fn radial_derivative2(&self) -> Self {
        self.radial_derivative().radial_derivative()
    }

    /// Inverse of the radial derivative: divides each coefficient by
    /// |alpha|. Defined only when the constant term vanishes.
    pub fn radial_antiderivative(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.norm() > 0.0 {
            return Err(Error::NonzeroConstantTerm {
                magnitude: c0.norm(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(idx, c)| (idx.clone(), c / idx.order() as f64))
            .collect();
        Ok(TruncatedSeries {
            dim: self.dim,
            cap: self.cap,
            coeffs,
        })
    }
}
