//! Sparse homogeneous polynomials ("forms").

use std::collections::BTreeMap;

use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};
use crate::linalg::{OrthogonalMatrix, ORTHOGONALITY_TOL};
use crate::scalar::{Field, Rational, Ring};

/// Homogeneous polynomial of a fixed degree in `n` variables.
///
/// Stored sparsely; zero coefficients are never kept, so structural equality
/// is polynomial equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<F> {
    n: usize,
    degree: u32,
    terms: BTreeMap<MultiIndex, F>,
}

impl<F: Ring> Form<F> {
    pub fn zero(n: usize, degree: u32) -> Self {
        Form { n, degree, terms: BTreeMap::new() }
    }

    /// Collects `(exponent, coefficient)` pairs, summing repeats and dropping
    /// zeros. Every exponent must have length `n` and the given degree.
    pub fn from_terms(n: usize, degree: u32, terms: impl IntoIterator<Item = (MultiIndex, F)>) -> Result<Self> {
        let mut f = Form::zero(n, degree);
        for (mu, c) in terms {
            if mu.len() != n {
                return Err(Error::ArityMismatch { expected: n, got: mu.len() });
            }
            if mu.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: mu.degree() });
            }
            f.add_term(mu, c);
        }
        Ok(f)
    }

    pub fn monomial(coefficient: F, mu: MultiIndex) -> Self {
        let mut f = Form::zero(mu.len(), mu.degree());
        f.add_term(mu, coefficient);
        f
    }

    pub fn constant(n: usize, c: F) -> Self {
        Form::monomial(c, MultiIndex::zeros(n))
    }

    pub fn variable(n: usize, i: usize) -> Self {
        Form::monomial(F::one(), MultiIndex::unit(n, i, 1))
    }

    /// `|x|^2 = x_1^2 + ... + x_n^2`.
    pub fn norm_squared(n: usize) -> Self {
        let mut f = Form::zero(n, 2);
        for i in 0..n {
            f.add_term(MultiIndex::unit(n, i, 2), F::one());
        }
        f
    }

    fn add_term(&mut self, mu: MultiIndex, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mu) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(mu, sum);
                }
            }
            None => {
                self.terms.insert(mu, c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mu: &MultiIndex) -> F {
        self.terms.get(mu).cloned().unwrap_or_else(F::zero)
    }

    fn check_shape(&self, other: &Form<F>) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch { expected: self.n, got: other.n });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: other.degree });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Form<F>) -> Result<Form<F>> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Form<F>) -> Result<Form<F>> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &F) -> Form<F> {
        let mut out = Form::zero(self.n, self.degree);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn neg(&self) -> Form<F> {
        self.scale(&-F::one())
    }

    pub fn checked_mul(&self, other: &Form<F>) -> Result<Form<F>> {
        if self.n != other.n {
            return Err(Error::ArityMismatch { expected: self.n, got: other.n });
        }
        let mut out = Form::zero(self.n, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Form<F> {
        let mut acc = Form::constant(self.n, F::one());
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same arity");
        }
        acc
    }

    /// `sum_i d^2 f / dx_i^2`. Forms of degree below 2 map to the zero form of
    /// degree 0.
    pub fn laplacian(&self) -> Form<F> {
        let mut out = Form::zero(self.n, self.degree.saturating_sub(2));
        if self.degree < 2 {
            return out;
        }
        for (mu, c) in &self.terms {
            for i in 0..self.n {
                let e = mu.get(i);
                if e >= 2 {
                    let factor = F::from_i64((e * (e - 1)) as i64);
                    let lowered = mu.checked_sub(&MultiIndex::unit(self.n, i, 2)).expect("e >= 2");
                    out.add_term(lowered, c.clone() * factor);
                }
            }
        }
        out
    }

    pub fn laplacian_power(&self, k: u32) -> Form<F> {
        (0..k).fold(self.clone(), |f, _| f.laplacian())
    }

    /// `|x|^{2k} * f`.
    pub fn mul_norm_power(&self, k: u32) -> Form<F> {
        let norm = Form::norm_squared(self.n);
        (0..k).fold(self.clone(), |f, _| f.checked_mul(&norm).expect("same arity"))
    }

    /// Relabels monomials through `map`, multiplying each coefficient by the
    /// returned sign. `map` must preserve degree and length.
    pub(crate) fn relabel(&self, mut map: impl FnMut(&MultiIndex) -> (MultiIndex, bool)) -> Form<F> {
        let mut out = Form::zero(self.n, self.degree);
        for (mu, c) in &self.terms {
            let (nu, negate) = map(mu);
            out.add_term(nu, if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn map_coefficients<G: Ring>(&self, f: impl Fn(&F) -> G) -> Form<G> {
        let mut out = Form::zero(self.n, self.degree);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), f(c));
        }
        out
    }
}

impl<F: Field> Form<F> {
    /// Explicit lossy conversion to double precision.
    pub fn to_float(&self) -> Form<f64> {
        self.map_coefficients(|c| c.to_f64())
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }
}

impl Form<Rational> {
    pub fn from_integers(n: usize, degree: u32, terms: &[(i64, &[u32])]) -> Result<Self> {
        Form::from_terms(
            n,
            degree,
            terms.iter().map(|(c, e)| (MultiIndex::new(e.to_vec()), Rational::from_i64(*c))),
        )
    }
}

impl Form<f64> {
    /// The action `f -> f o g^{-1}`: substitutes `x -> g^T x` and re-expands.
    pub fn apply_orthogonal(&self, g: &OrthogonalMatrix) -> Result<Form<f64>> {
        if g.dim() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, got: g.dim() });
        }
        let deviation = crate::linalg::orthogonality_defect(g.matrix());
        if deviation >= ORTHOGONALITY_TOL {
            return Err(Error::NotOrthogonal { deviation });
        }
        let n = self.n;
        // x_k -> sum_l g[l][k] x_l
        let images: Vec<Form<f64>> = (0..n)
            .map(|k| {
                Form::from_terms(n, 1, (0..n).map(|l| (MultiIndex::unit(n, l, 1), g.get(l, k))))
                    .expect("linear form")
            })
            .collect();
        let max_exp = self.terms.keys().flat_map(|mu| mu.entries().iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<Form<f64>>> = images
            .iter()
            .map(|lin| {
                let mut p = vec![Form::constant(n, 1.0)];
                for e in 1..=max_exp as usize {
                    let next = p[e - 1].checked_mul(lin).expect("same arity");
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = Form::zero(n, self.degree);
        for (mu, c) in &self.terms {
            let mut term = Form::constant(n, *c);
            for (k, &e) in mu.entries().iter().enumerate() {
                if e > 0 {
                    term = term.checked_mul(&powers[k][e as usize]).expect("same arity");
                }
            }
            for (nu, v) in term.terms {
                out.add_term(nu, v);
            }
        }
        Ok(out)
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Form<f64>) -> f64 {
        let mut keys: Vec<&MultiIndex> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|mu| (self.coefficient(mu) - other.coefficient(mu)).abs())
            .fold(0.0, f64::max)
    }

    /// Drops coefficients with magnitude at most `tol`.
    pub fn prune(&self, tol: f64) -> Form<f64> {
        let mut out = self.clone();
        out.terms.retain(|_, c| c.abs() > tol);
        out
    }
}
