//! Multivariate polynomials with rational coefficients in abstract variables.
//!
//! Used to evaluate the invariant formulas on symbolic coordinates, which
//! yields the generators as explicit polynomials and exposes structural
//! coincidences between them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::combinatorics::MultiIndex;
use crate::error::Result;
use crate::form::Form;
use crate::scalar::{Rational, Ring};

/// Exponent vectors are stored with trailing zeros removed, so the number of
/// variables is implicit and constants need no context.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymbolicPoly {
    terms: BTreeMap<Vec<u16>, Rational>,
}

fn trim(mut e: Vec<u16>) -> Vec<u16> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl SymbolicPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = SymbolicPoly::default();
        p.add_term(Vec::new(), c);
        p
    }

    /// The `k`-th variable (0-based).
    pub fn var(k: usize) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        let mut p = SymbolicPoly::default();
        p.terms.insert(e, Rational::one());
        p
    }

    fn add_term(&mut self, e: Vec<u16>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&a| a as u32).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().map(|&a| a as u32).sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// Highest variable index used, plus one.
    pub fn var_count(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn eval<R: Ring>(&self, values: &[R], lift: impl Fn(&Rational) -> R) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = lift(c);
            for (k, &a) in e.iter().enumerate() {
                if a > 0 {
                    t = t * values[k].pow(a as u32);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// As a homogeneous [`Form`] in `n` variables; fails if not homogeneous
    /// or if a variable index is out of range.
    pub fn to_form(&self, n: usize) -> Result<Form<Rational>> {
        let degree = self.degree().unwrap_or(0);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut full: Vec<u32> = e.iter().map(|&a| a as u32).collect();
            full.resize(n.max(full.len()), 0);
            (MultiIndex::new(full), c.clone())
        });
        Form::from_terms(n, degree, terms)
    }

    /// Renders with variable names from `name(k)`.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(k, &a)| if a == 1 { name(k) } else { format!("{}^{a}", name(k)) })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|k| format!("v{k}")))
    }
}

impl Add for SymbolicPoly {
    type Output = SymbolicPoly;
    fn add(mut self, rhs: SymbolicPoly) -> SymbolicPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for SymbolicPoly {
    type Output = SymbolicPoly;
    fn sub(self, rhs: SymbolicPoly) -> SymbolicPoly {
        self + (-rhs)
    }
}

impl Neg for SymbolicPoly {
    type Output = SymbolicPoly;
    fn neg(mut self) -> SymbolicPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for SymbolicPoly {
    type Output = SymbolicPoly;
    fn mul(self, rhs: SymbolicPoly) -> SymbolicPoly {
        let mut out = SymbolicPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let len = ea.len().max(eb.len());
                let e = (0..len)
                    .map(|k| ea.get(k).copied().unwrap_or(0) + eb.get(k).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Zero for SymbolicPoly {
    fn zero() -> Self {
        SymbolicPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymbolicPoly {
    fn one() -> Self {
        SymbolicPoly::constant(Rational::one())
    }
}

impl Ring for SymbolicPoly {
    fn from_i64(v: i64) -> Self {
        SymbolicPoly::constant(Rational::from_integer(v.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> SymbolicPoly {
        SymbolicPoly::from_i64(v)
    }

    #[test]
    fn arithmetic() {
        let (x, y) = (SymbolicPoly::var(0), SymbolicPoly::var(1));
        let sq = (x.clone() + y.clone()) * (x.clone() + y.clone());
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.degree(), Some(2));
        let diff = sq - x.clone() * x.clone() - y.clone() * y.clone() - c(2) * x.clone() * y.clone();
        assert!(diff.is_zero());
        assert_eq!((x.clone() - x.clone()), SymbolicPoly::zero());
        assert_eq!(x.pow(3).degree(), Some(3));
        assert_eq!(format!("{:?}", c(2) * x.clone() - y.clone() + c(1)), "2*v0 - v1 + 1");
    }

    #[test]
    fn evaluation_and_forms() {
        let (x, z) = (SymbolicPoly::var(0), SymbolicPoly::var(2));
        let p = c(3) * x.clone() * z.clone() - z.clone() * z.clone();
        let vals: Vec<Rational> = [2, 5, 7].iter().map(|&v| Rational::from_integer(v.into())).collect();
        assert_eq!(p.eval(&vals, Rational::clone), Rational::from_integer(42.into() ) - Rational::from_integer(49.into()));
        assert!(p.is_homogeneous());
        let f = p.to_form(3).unwrap();
        assert_eq!(f, Form::from_integers(3, 2, &[(3, &[1, 0, 1]), (-1, &[0, 0, 2])]).unwrap());
        assert!(!(p + x).is_homogeneous());
    }
}
