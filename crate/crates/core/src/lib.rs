//! Numerical toolkit for the extended Cesaro operator and its companions
//! on the unit ball of C^n.
//!
//! The crate works with holomorphic functions in two interchangeable
//! representations: sparse truncated power series with exact
//! coefficient-space operators, and anchored radial test functions built
//! from a small symbolic algebra in `w`, `log(2/(1-w))`, and `1/(1-w)`.
//! On top of those sit Gauss-Legendre quadrature for the defining
//! integrals, deterministic Monte-Carlo estimators for the sup, Bloch,
//! log-Bloch, and Zygmund norms, and a harness of reproducible
//! experiments that check the boundedness and compactness certificates
//! numerically.
//!
//! Entry points:
//!
//! * [`TruncatedSeries`] and [`CompositeRadial`] for building functions;
//! * [`operators`] for T_g, I_g, M_g in coefficient space and through
//!   quadrature;
//! * [`norms`] for the norm estimators;
//! * [`harness`] for the experiment suite behind the `cesaro-lab` binary.

pub mod error;
pub mod eval;
pub mod harness;
pub mod io;
pub mod norms;
pub mod operators;
pub mod quad;
pub mod series;
pub mod testfns;

pub use error::{Error, Result};
pub use eval::Holomorphic;
pub use harness::{
    corollary_experiment, elementary_probes, standard_family, theorem1_experiment,
    theorem2_experiment, theorem3_experiment, BoundednessExpectation, ExperimentReport, Family,
    HarnessConfig, ReportConfig, Row,
};
pub use io::{parse_function_spec, series_to_json, FunctionSpec};
pub use norms::{
    bloch_seminorm, golden_section_max, log_bloch_seminorm, pointwise_log_bound, sup_norm,
    zygmund_norm, NormEstimate, SamplerConfig,
};
pub use operators::{
    apply_ig, apply_mg, apply_tg, classical_cesaro, kernel_ray_integral, quadrature_ig,
    quadrature_tg, splitting_residual, OperatorImage, OperatorKind,
};
pub use quad::{GaussLegendre, DEFAULT_NODES};
pub use series::{BallPoint, MultiIndex, TruncatedSeries};
pub use testfns::{anchor_threshold, log_weight, CompositeRadial, LogPolynomial};
