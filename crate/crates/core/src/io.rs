//! Function specifications as JSON, plus the named presets the command
//! line accepts.
//!
//! A spec is either a truncated power series given by its coefficients or
//! one of the anchored radial test functions, tagged by `kind`:
//!
//! ```json
//! {"kind":"series","dim":1,"cap":2,"terms":[[[2],1,0]]}
//! {"kind":"h_a","a":[[0.9,0.0]]}
//! ```
//!
//! Complex scalars are `[re, im]` pairs throughout.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::eval::Holomorphic;
use crate::series::{BallPoint, MultiIndex, TruncatedSeries};
use crate::testfns::CompositeRadial;

/// Truncation cap used by presets and padded coefficient lists.
pub const PRESET_CAP: u32 = 32;

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum SpecJson {
    #[serde(rename = "series")]
    Series {
        dim: usize,
        cap: u32,
        terms: Vec<(Vec<u32>, f64, f64)>,
    },
    #[serde(rename = "h_a")]
    BumpH { a: Vec<(f64, f64)> },
    #[serde(rename = "f_a")]
    BumpF { a: Vec<(f64, f64)> },
    #[serde(rename = "f_k")]
    BumpK { a: Vec<(f64, f64)> },
    #[serde(rename = "log_kernel")]
    LogKernel { a: Vec<(f64, f64)> },
}

/// A parsed function: either explicit coefficients or an anchored radial
/// test function.
pub enum FunctionSpec {
    Series(TruncatedSeries),
    Composite(CompositeRadial),
}

impl FunctionSpec {
    pub fn dim(&self) -> usize {
        match self {
            FunctionSpec::Series(s) => s.dim(),
            FunctionSpec::Composite(c) => c.dim(),
        }
    }

    /// View through the evaluation trait.
    pub fn as_holomorphic(&self) -> &dyn Holomorphic {
        match self {
            FunctionSpec::Series(s) => s,
            FunctionSpec::Composite(c) => c,
        }
    }

    /// The underlying series, when the spec is one.
    pub fn series(&self) -> Option<&TruncatedSeries> {
        match self {
            FunctionSpec::Series(s) => Some(s),
            FunctionSpec::Composite(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FunctionSpec::Series(s) => format!(
                "series(dim={}, cap={}, {} terms)",
                s.dim(),
                s.cap(),
                s.len()
            ),
            FunctionSpec::Composite(c) => c.tag().to_string(),
        }
    }
}

fn complex_coords(pairs: &[(f64, f64)]) -> Vec<Complex64> {
    pairs
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect()
}

fn ball_anchor(pairs: &[(f64, f64)]) -> Result<BallPoint> {
    BallPoint::new(complex_coords(pairs))
}

/// Parses an inline JSON spec.
pub fn parse_function_json(json: &str) -> Result<FunctionSpec> {
    let spec: SpecJson =
        serde_json::from_str(json).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    match spec {
        SpecJson::Series { dim, cap, terms } => {
            let entries: Vec<_> = terms
                .into_iter()
                .map(|(idx, re, im)| (MultiIndex::new(idx), Complex64::new(re, im)))
                .collect();
            Ok(FunctionSpec::Series(TruncatedSeries::new(
                dim, cap, entries,
            )?))
        }
        SpecJson::BumpH { a } => Ok(FunctionSpec::Composite(CompositeRadial::h_a(&ball_anchor(
            &a,
        )?))),
        SpecJson::BumpF { a } => Ok(FunctionSpec::Composite(CompositeRadial::f_a(&ball_anchor(
            &a,
        )?))),
        SpecJson::BumpK { a } => Ok(FunctionSpec::Composite(CompositeRadial::f_k(&ball_anchor(
            &a,
        )?))),
        SpecJson::LogKernel { a } => Ok(FunctionSpec::Composite(CompositeRadial::log_kernel(
            &complex_coords(&a),
        )?)),
    }
}

/// Parses a preset name in ambient dimension `dim`.
///
/// Recognized: `one`, `zj` or `zj(j)` for the j-th coordinate (1-based),
/// `log-kernel` or `log-kernel(r)` anchored at r*e_1 (sphere anchor by
/// default), and `random-poly(seed,deg)`.
pub fn parse_preset(name: &str, dim: usize) -> Result<FunctionSpec> {
    let bad = |msg: String| Error::InvalidSpec(msg);
    if name == "one" {
        return Ok(FunctionSpec::Series(TruncatedSeries::one(dim, PRESET_CAP)));
    }
    if name == "zj" {
        return Ok(FunctionSpec::Series(TruncatedSeries::coordinate(
            dim, PRESET_CAP, 0,
        )?));
    }
    if let Some(arg) = name.strip_prefix("zj(").and_then(|s| s.strip_suffix(')')) {
        let j: usize = arg
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad coordinate index in preset: {name}")))?;
        if j == 0 || j > dim {
            return Err(bad(format!("coordinate {j} out of range for dim {dim}")));
        }
        return Ok(FunctionSpec::Series(TruncatedSeries::coordinate(
            dim,
            PRESET_CAP,
            j - 1,
        )?));
    }
    if name == "log-kernel" {
        let mut coords = vec![Complex64::new(0.0, 0.0); dim];
        coords[0] = Complex64::new(1.0, 0.0);
        return Ok(FunctionSpec::Composite(CompositeRadial::log_kernel(
            &coords,
        )?));
    }
    if let Some(arg) = name
        .strip_prefix("log-kernel(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let r: f64 = arg
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad anchor radius in preset: {name}")))?;
        let mut coords = vec![Complex64::new(0.0, 0.0); dim];
        coords[0] = Complex64::new(r, 0.0);
        return Ok(FunctionSpec::Composite(CompositeRadial::log_kernel(
            &coords,
        )?));
    }
    if let Some(args) = name
        .strip_prefix("random-poly(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(bad(format!("random-poly takes (seed,deg): {name}")));
        }
        let seed: u64 = parts[0]
            .parse()
            .map_err(|_| bad(format!("bad seed in preset: {name}")))?;
        let deg: u32 = parts[1]
            .parse()
            .map_err(|_| bad(format!("bad degree in preset: {name}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(FunctionSpec::Series(TruncatedSeries::random_polynomial(
            dim, PRESET_CAP, deg, &mut rng,
        )?));
    }
    Err(bad(format!("unrecognized function spec: {name}")))
}

/// Parses a spec string: inline JSON when it starts with `{`, a file when
/// it starts with `@` or names an existing path, a preset otherwise.
pub fn parse_function_spec(text: &str, dim: usize) -> Result<FunctionSpec> {
    let text = text.trim();
    if text.starts_with('{') {
        return parse_function_json(text);
    }
    if let Some(path) = text.strip_prefix('@') {
        let body = fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpec(format!("cannot read {path}: {e}")))?;
        return parse_function_json(&body);
    }
    if Path::new(text).is_file() {
        let body = fs::read_to_string(text)
            .map_err(|e| Error::InvalidSpec(format!("cannot read {text}: {e}")))?;
        return parse_function_json(&body);
    }
    parse_preset(text, dim)
}

/// Renders a series back to the spec JSON format, terms in index order.
pub fn series_to_json(s: &TruncatedSeries) -> String {
    let terms: Vec<serde_json::Value> = s
        .terms()
        .map(|(idx, c)| serde_json::json!([idx.entries().to_vec(), c.re, c.im]))
        .collect();
    let doc = serde_json::json!({
        "kind": "series",
        "dim": s.dim(),
        "cap": s.cap(),
        "terms": terms,
    });
    serde_json::to_string(&doc).expect("series serializes")
}

/// Parses a 1-D coefficient list: entries are plain numbers or `[re, im]`
/// pairs.
pub fn parse_coeff_list(text: &str) -> Result<Vec<Complex64>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let arr = value
        .as_array()
        .ok_or_else(|| Error::InvalidSpec("coefficient list must be a JSON array".into()))?;
    let mut out = Vec::with_capacity(arr.len());
    for entry in arr {
        if let Some(x) = entry.as_f64() {
            out.push(Complex64::new(x, 0.0));
        } else if let Some(pair) = entry.as_array() {
            if pair.len() != 2 {
                return Err(Error::InvalidSpec(
                    "complex coefficient must be [re, im]".into(),
                ));
            }
            let re = pair[0]
                .as_f64()
                .ok_or_else(|| Error::InvalidSpec("non-numeric coefficient".into()))?;
            let im = pair[1]
                .as_f64()
                .ok_or_else(|| Error::InvalidSpec("non-numeric coefficient".into()))?;
            out.push(Complex64::new(re, im));
        } else {
            return Err(Error::InvalidSpec("non-numeric coefficient".into()));
        }
    }
    Ok(out)
}

/// Renders a coefficient list; real entries print as plain numbers.
pub fn coeff_list_to_json(coeffs: &[Complex64]) -> String {
    let entries: Vec<serde_json::Value> = coeffs
        .iter()
        .map(|c| {
            if c.im == 0.0 {
                serde_json::json!(c.re)
            } else {
                serde_json::json!([c.re, c.im])
            }
        })
        .collect();
    serde_json::to_string(&serde_json::Value::Array(entries)).expect("list serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::BallPoint;

    #[test]
    fn parses_series_spec_and_evaluates() {
        let spec = parse_function_json(r#"{"kind":"series","dim":1,"cap":2,"terms":[[[2],1,0]]}"#)
            .unwrap();
        let z = BallPoint::new(vec![Complex64::new(0.5, 0.0)]).unwrap();
        let v = spec.as_holomorphic().eval(&z);
        assert!((v - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        assert!(spec.series().is_some());
    }

    #[test]
    fn rejects_unknown_keys_and_kinds() {
        let unknown_key =
            parse_function_json(r#"{"kind":"series","dim":1,"cap":2,"terms":[],"extra":1}"#);
        assert!(matches!(unknown_key, Err(Error::InvalidSpec(_))));
        let unknown_kind = parse_function_json(r#"{"kind":"mystery","a":[[0.9,0]]}"#);
        assert!(matches!(unknown_kind, Err(Error::InvalidSpec(_))));
        let garbage = parse_function_json("{not json");
        assert!(matches!(garbage, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn parses_anchored_specs() {
        let spec = parse_function_json(r#"{"kind":"h_a","a":[[0.9,0.0],[0.0,0.0]]}"#).unwrap();
        assert_eq!(spec.dim(), 2);
        assert_eq!(spec.describe(), "h_a");
        let origin = BallPoint::origin(2);
        assert!(spec.as_holomorphic().eval(&origin).norm() < 10.0);

        let outside = parse_function_json(r#"{"kind":"f_a","a":[[1.5,0.0]]}"#);
        assert!(outside.is_err());
    }

    #[test]
    fn presets_cover_documented_names() {
        let one = parse_preset("one", 2).unwrap();
        assert_eq!(one.dim(), 2);
        let z2 = parse_preset("zj(2)", 3).unwrap();
        let z = BallPoint::new(vec![
            Complex64::new(0.1, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.2, 0.0),
        ])
        .unwrap();
        assert!((z2.as_holomorphic().eval(&z) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(parse_preset("zj(4)", 3).is_err());

        let lk = parse_preset("log-kernel", 1).unwrap();
        assert_eq!(lk.describe(), "log_kernel");
        assert!(parse_preset("log-kernel(0.9)", 2).unwrap().dim() == 2);

        let p1 = parse_preset("random-poly(7,4)", 1).unwrap();
        let p2 = parse_preset("random-poly(7,4)", 1).unwrap();
        assert_eq!(
            series_to_json(p1.series().unwrap()),
            series_to_json(p2.series().unwrap())
        );
        assert!(parse_preset("random-poly(7)", 1).is_err());
        assert!(parse_preset("frobnicate", 1).is_err());
    }

    #[test]
    fn spec_strings_route_to_files() {
        let dir = std::env::temp_dir();
        let path = dir.join("cesaro_lab_spec_test.json");
        std::fs::write(
            &path,
            r#"{"kind":"series","dim":1,"cap":4,"terms":[[[1],2,0]]}"#,
        )
        .unwrap();
        let text = path.to_str().unwrap().to_string();
        let by_path = parse_function_spec(&text, 1).unwrap();
        let by_at = parse_function_spec(&format!("@{text}"), 1).unwrap();
        assert_eq!(
            series_to_json(by_path.series().unwrap()),
            series_to_json(by_at.series().unwrap())
        );
        std::fs::remove_file(&path).ok();
        assert!(parse_function_spec("@/no/such/file.json", 1).is_err());
    }

    #[test]
    fn series_json_round_trips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let s = TruncatedSeries::random_polynomial(2, 8, 3, &mut rng).unwrap();
        let json = series_to_json(&s);
        let back = parse_function_json(&json).unwrap();
        let z = BallPoint::new(vec![Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)]).unwrap();
        let diff = (s.eval(&z) - back.as_holomorphic().eval(&z)).norm();
        assert!(diff < 1e-15);
    }

    #[test]
    fn coeff_lists_accept_reals_and_pairs() {
        let c = parse_coeff_list("[1, 0.5, [0, 1]]").unwrap();
        assert_eq!(c[0], Complex64::new(1.0, 0.0));
        assert_eq!(c[2], Complex64::new(0.0, 1.0));
        assert_eq!(coeff_list_to_json(&c), "[1.0,0.5,[0.0,1.0]]");
        assert!(parse_coeff_list("{}").is_err());
        assert!(parse_coeff_list("[\"x\"]").is_err());
    }
}
