//! Line-oriented form file format.
//!
//! ```text
//! # comment
//! vars: 3
//! degree: 4
//! 6 2 2 0
//! -1 4 0 0
//! 1/2 0 0 4
//! ```
//!
//! Coefficients are `p/q` or integers (exact) or decimal literals (float).
//! A file may hold several forms; each starts at its own `vars:` header.

use std::fmt::Write as _;

use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::scalar::{Field, Rational, Scalar, ScalarMode};

/// A parsed form whose coefficient domain is only known at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyForm {
    Exact(Form<Rational>),
    Float(Form<f64>),
}

impl AnyForm {
    pub fn n(&self) -> usize {
        match self {
            AnyForm::Exact(f) => f.n(),
            AnyForm::Float(f) => f.n(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            AnyForm::Exact(f) => f.degree(),
            AnyForm::Float(f) => f.degree(),
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            AnyForm::Exact(_) => ScalarMode::Exact,
            AnyForm::Float(_) => ScalarMode::Float,
        }
    }

    pub fn to_float(&self) -> Form<f64> {
        match self {
            AnyForm::Exact(f) => f.to_float(),
            AnyForm::Float(f) => f.clone(),
        }
    }
}

/// Writes one form, optionally preceded by `# ` comment lines.
pub fn write_form<F: Field>(form: &Form<F>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "vars: {}", form.n());
    let _ = writeln!(out, "degree: {}", form.degree());
    for (mu, c) in form.terms() {
        let _ = write!(out, "{}", c.to_scalar());
        for e in mu.entries() {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_form(text: &str) -> Result<AnyForm> {
    let mut forms = parse_forms(text)?;
    match forms.len() {
        1 => Ok(forms.remove(0)),
        0 => Err(Error::Parse { line: 0, message: "no form found (missing `vars:` header)".into() }),
        k => Err(Error::Parse { line: 0, message: format!("expected one form, found {k}") }),
    }
}

struct Pending {
    n: usize,
    degree: Option<u32>,
    header_line: usize,
    terms: Vec<(MultiIndex, Scalar, usize)>,
}

pub fn parse_forms(text: &str) -> Result<Vec<AnyForm>> {
    let mut out = Vec::new();
    let mut current: Option<Pending> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        if let Some(rest) = line.strip_prefix("vars:") {
            if let Some(p) = current.take() {
                out.push(finish(p)?);
            }
            let n = rest.trim().parse().map_err(|_| err(format!("bad variable count {:?}", rest.trim())))?;
            current = Some(Pending { n, degree: None, header_line: line_no, terms: Vec::new() });
            continue;
        }
        let pending = current.as_mut().ok_or_else(|| err("expected `vars:` header first".into()))?;
        if let Some(rest) = line.strip_prefix("degree:") {
            if pending.degree.is_some() {
                return Err(err("duplicate `degree:` header".into()));
            }
            pending.degree = Some(rest.trim().parse().map_err(|_| err(format!("bad degree {:?}", rest.trim())))?);
            continue;
        }
        let degree = pending.degree.ok_or_else(|| err("expected `degree:` header before terms".into()))?;
        let mut tokens = line.split_whitespace();
        let coefficient = Scalar::parse(tokens.next().expect("non-empty line")).map_err(err)?;
        let exps = tokens
            .map(|t| t.parse::<u32>().map_err(|_| err(format!("bad exponent {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if exps.len() != pending.n {
            return Err(err(format!("expected {} exponents, found {}", pending.n, exps.len())));
        }
        let mu = MultiIndex::new(exps);
        if mu.degree() != degree {
            return Err(err(format!("monomial {mu} has degree {}, header says {degree}", mu.degree())));
        }
        pending.terms.push((mu, coefficient, line_no));
    }
    if let Some(p) = current.take() {
        out.push(finish(p)?);
    }
    Ok(out)
}

fn finish(p: Pending) -> Result<AnyForm> {
    let degree = p
        .degree
        .ok_or(Error::Parse { line: p.header_line, message: "missing `degree:` header".into() })?;
    let is_float = p.terms.iter().any(|(_, c, _)| c.mode() == ScalarMode::Float);
    let has_fraction = p.terms.iter().any(|(_, c, _)| matches!(c, Scalar::Exact(r) if !r.is_integer()));
    if is_float && has_fraction {
        let line = p.terms.iter().find(|(_, c, _)| c.mode() == ScalarMode::Float).map_or(p.header_line, |t| t.2);
        return Err(Error::Parse { line, message: "mixed exact fractions and decimal coefficients".into() });
    }
    if is_float {
        Form::from_terms(p.n, degree, p.terms.into_iter().map(|(mu, c, _)| (mu, c.as_f64()))).map(AnyForm::Float)
    } else {
        Form::from_terms(
            p.n,
            degree,
            p.terms.into_iter().map(|(mu, c, _)| match c {
                Scalar::Exact(r) => (mu, r),
                Scalar::Float(_) => unreachable!("checked above"),
            }),
        )
        .map(AnyForm::Exact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_and_float() {
        let exact = parse_form("# demo\nvars: 3\ndegree: 4\n6 2 2 0\n-1 4 0 0  # trailing\n1/2 0 0 4\n").unwrap();
        let AnyForm::Exact(f) = &exact else { panic!("expected exact") };
        assert_eq!(f.len(), 3);
        assert_eq!(write_form(f, &[]), "vars: 3\ndegree: 4\n-1 4 0 0\n6 2 2 0\n1/2 0 0 4\n");
        assert_eq!(parse_form(&write_form(f, &[])).unwrap(), exact);

        let float = parse_form("vars: 2\ndegree: 2\n0.5 2 0\n3 1 1\n").unwrap();
        assert_eq!(float.mode(), ScalarMode::Float);
        let AnyForm::Float(g) = &float else { panic!() };
        assert_eq!(parse_form(&write_form(g, &[])).unwrap(), float);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("vars: 2\ndegree: 2\n1 2 1\n", 3),
            ("vars: 2\ndegree: 2\n1 2\n", 3),
            ("1 2 0\n", 1),
            ("vars: 2\n1 2 0\n", 2),
            ("vars: 2\ndegree: 2\n1/2 2 0\n0.5 0 2\n", 4),
            ("vars: 2\ndegree: 2\nx 2 0\n", 3),
        ];
        for (text, line) in cases {
            match parse_form(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn multiple_blocks() {
        let text = "vars: 1\ndegree: 1\n1 1\n\nvars: 2\ndegree: 2\n2 1 1\n";
        let forms = parse_forms(text).unwrap();
        assert_eq!(forms.len(), 2);
        assert!(parse_form(text).is_err());
    }
}
