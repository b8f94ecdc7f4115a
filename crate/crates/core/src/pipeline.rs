//! End-to-end fingerprinting of arbitrary forms and generic equivalence
//! verdicts.
//!
//! Exact forms that already lie in the slice are fingerprinted exactly.
//! Everything else goes through the float route: diagonalize the quadratic
//! part, rotate into the slice, read off coordinates, evaluate.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::{fingerprint, fingerprint_exact, Fingerprint, GenericityFlag, InvariantVariant};
use crate::scalar::{Rational, ScalarMode};
use crate::slice::{is_in_slice, move_to_slice, GenericityReport, Shape, SliceBasis, SLICE_TOL};
use crate::text::AnyForm;

pub const DEFAULT_ATOL: f64 = 1e-9;
pub const DEFAULT_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    /// Forces a route; `None` picks exact whenever possible.
    pub mode: Option<ScalarMode>,
    pub variant: InvariantVariant,
    pub atol: f64,
    pub rtol: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { mode: None, variant: InvariantVariant::default(), atol: DEFAULT_ATOL, rtol: DEFAULT_RTOL }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyFingerprint {
    Exact(Fingerprint<Rational>),
    Float(Fingerprint<f64>),
}

impl AnyFingerprint {
    pub fn to_float(&self) -> Fingerprint<f64> {
        match self {
            AnyFingerprint::Exact(f) => f.to_float(),
            AnyFingerprint::Float(f) => f.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyFingerprint::Exact(f) => f.to_json(),
            AnyFingerprint::Float(f) => f.to_json(),
        }
    }

    pub fn flags(&self) -> &[GenericityFlag] {
        match self {
            AnyFingerprint::Exact(f) => &f.flags,
            AnyFingerprint::Float(f) => &f.flags,
        }
    }

    pub fn is_generic(&self) -> bool {
        self.flags().is_empty()
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            AnyFingerprint::Exact(_) => ScalarMode::Exact,
            AnyFingerprint::Float(_) => ScalarMode::Float,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FingerprintRun {
    pub fingerprint: AnyFingerprint,
    /// Eigenvalue report of the float route; `None` on the exact route.
    pub report: Option<GenericityReport>,
}

impl FingerprintRun {
    pub fn warnings(&self) -> Vec<String> {
        self.fingerprint.flags().iter().map(|f| f.to_string()).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut doc = self.fingerprint.to_json();
        if let Some(report) = &self.report {
            doc["eigenvalues"] = json!(report.eigenvalues);
        }
        doc
    }
}

fn repeated_point_values(values: &[Rational]) -> bool {
    values.iter().enumerate().any(|(i, a)| values[i + 1..].contains(a))
}

pub fn fingerprint_form(form: &AnyForm, config: &PipelineConfig) -> Result<FingerprintRun> {
    let shape = Shape::new(form.n(), form.degree())?;
    let basis = SliceBasis::cached(shape);
    if let (AnyForm::Exact(f), Some(ScalarMode::Exact) | None) = (form, config.mode) {
        if is_in_slice(f, 0.0)?.0 {
            let c = basis.coordinates(f, 0.0)?;
            let mut fp = fingerprint_exact(&c, config.variant);
            if repeated_point_values(c.point_values()) {
                fp.flags.insert(0, GenericityFlag::RepeatedEigenvalues { min_gap: 0.0 });
            }
            return Ok(FingerprintRun { fingerprint: AnyFingerprint::Exact(fp), report: None });
        }
    }
    if config.mode == Some(ScalarMode::Exact) {
        return Err(Error::ModeMismatch(
            "exact mode needs an exact form whose quadratic part is already diagonal; use float mode".into(),
        ));
    }
    let moved = move_to_slice(&form.to_float())?;
    let c = basis.coordinates(&moved.form, SLICE_TOL)?;
    let mut fp = fingerprint(&c, config.variant);
    if moved.report.warning.is_some() {
        fp.flags.insert(0, GenericityFlag::RepeatedEigenvalues { min_gap: moved.report.min_gap });
    }
    Ok(FingerprintRun { fingerprint: AnyFingerprint::Float(fp), report: Some(moved.report) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrepancy {
    pub max_abs: f64,
    /// Largest `|a-b| / max(|a|,|b|)` over nonzero pairs.
    pub max_rel: f64,
    /// Every entry satisfies `|a-b| <= atol + rtol * max(|a|,|b|)`.
    pub within_tolerance: bool,
}

pub fn compare(a: &Fingerprint<f64>, b: &Fingerprint<f64>, atol: f64, rtol: f64) -> Discrepancy {
    let mut out = Discrepancy { max_abs: 0.0, max_rel: 0.0, within_tolerance: a.len() == b.len() };
    for (x, y) in a.values().zip(b.values()) {
        let diff = (x - y).abs();
        let scale = x.abs().max(y.abs());
        out.max_abs = out.max_abs.max(diff);
        if scale > 0.0 {
            out.max_rel = out.max_rel.max(diff / scale);
        }
        if !(diff <= atol + rtol * scale) {
            out.within_tolerance = false;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    EquivalentGeneric,
    Distinct,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::EquivalentGeneric => "equivalent (generic)",
            Verdict::Distinct => "distinct",
            Verdict::Inconclusive => "inconclusive (non-generic)",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct Equivalence {
    pub verdict: Verdict,
    pub first: FingerprintRun,
    pub second: FingerprintRun,
    pub discrepancy: Discrepancy,
    pub atol: f64,
    pub rtol: f64,
}

impl Equivalence {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict.as_str(),
            "max_abs_discrepancy": self.discrepancy.max_abs,
            "max_rel_discrepancy": self.discrepancy.max_rel,
            "atol": self.atol,
            "rtol": self.rtol,
            "first": self.first.to_json(),
            "second": self.second.to_json(),
        })
    }
}

/// Generic `O(n)`-equivalence test. Equal fingerprints certify equivalence
/// only when neither side raised a genericity flag.
pub fn equivalent(a: &AnyForm, b: &AnyForm, config: &PipelineConfig) -> Result<Equivalence> {
    if a.n() != b.n() {
        return Err(Error::ArityMismatch { expected: a.n(), got: b.n() });
    }
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { expected: a.degree(), got: b.degree() });
    }
    let first = fingerprint_form(a, config)?;
    let second = fingerprint_form(b, config)?;
    let discrepancy = compare(&first.fingerprint.to_float(), &second.fingerprint.to_float(), config.atol, config.rtol);
    let matching = match (&first.fingerprint, &second.fingerprint) {
        (AnyFingerprint::Exact(x), AnyFingerprint::Exact(y)) => x.values_eq(y),
        _ => discrepancy.within_tolerance,
    };
    let verdict = if !first.fingerprint.is_generic() || !second.fingerprint.is_generic() {
        Verdict::Inconclusive
    } else if matching {
        Verdict::EquivalentGeneric
    } else {
        Verdict::Distinct
    };
    Ok(Equivalence { verdict, first, second, discrepancy, atol: config.atol, rtol: config.rtol })
}
