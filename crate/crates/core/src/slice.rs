//! The slice of forms with diagonal quadratic part, its `B(n)`-equivariant
//! basis, and coordinate extraction.
//!
//! Every form of degree `2d` splits as `|x|^{2d-2} q + w` with `q` quadratic
//! and `Δ^{d-1} w = 0`. The slice consists of the forms whose `q` is
//! diagonal; a general form is moved there by diagonalizing `q`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::{enumerate_multi_indices, enumerate_partitions, multinomial, IntegerPartition, MultiIndex};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::linalg::{invert_exact, OrthogonalMatrix};
use crate::scalar::{Field, Rational, Ring, ScalarMode};

/// Relative tolerance for float slice membership (scaled by the largest
/// coefficient of the form).
pub const SLICE_TOL: f64 = 1e-8;
/// Eigenvalue gap below which the quadratic part is treated as degenerate.
pub const EIGEN_GAP_TOL: f64 = 1e-6;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of variables and half-degree of the forms under study.
///
/// Only `n >= 3` and even degree `2d >= 4` are supported: for `2d = 2` the
/// harmonic part vanishes, and for `n = 2` the two pair sums `u_1`, `u_2`
/// coincide so the point block is never invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    n: usize,
    d: u32,
}

impl Shape {
    pub fn new(n: usize, degree: u32) -> Result<Shape> {
        if degree % 2 == 1 {
            return Err(Error::OddDegree { degree });
        }
        if n < 3 || degree < 4 {
            return Err(Error::UnsupportedShape {
                n,
                degree,
                reason: "need n >= 3 variables and even degree >= 4".into(),
            });
        }
        Ok(Shape { n, d: degree / 2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Half the degree.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> u32 {
        2 * self.d
    }

    /// `dim V = C(n+2d-1, 2d)`.
    pub fn form_dim(&self) -> usize {
        binomial(self.n + self.degree() as usize - 1, self.degree() as usize)
    }

    /// `dim Λ = C(n+2d-1, 2d) - C(n, 2)`.
    pub fn slice_dim(&self) -> usize {
        self.form_dim() - binomial(self.n, 2)
    }

    pub fn pair_count(&self) -> usize {
        binomial(self.n, 2)
    }

    /// Size of the enumerated generating set: `dim Λ + n`.
    pub fn generator_count(&self) -> usize {
        self.slice_dim() + self.n
    }

    /// The closed-form count `C(n+2d-1, 2d) - C(n-1, 2)`. It is one less than
    /// [`Shape::generator_count`].
    pub fn closed_form_generator_count(&self) -> usize {
        self.form_dim() - binomial(self.n - 1, 2)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, degree={})", self.n, self.degree())
    }
}

/// Multi-indices of the harmonic part of degree `2d` that index `W_2`: at
/// least two nonzero entries and not of the shape `{2d-1, 1}`.
fn is_w2_index(mu: &MultiIndex, degree: u32) -> bool {
    let nz = mu.nonzero_count();
    if nz < 2 {
        return false;
    }
    !(nz == 2 && mu.entries().contains(&(degree - 1)) && mu.entries().contains(&1))
}

/// Admissible invariant blocks: partitions of `2d` of length `2..=n`, except
/// `(2d-1, 1)`.
pub fn admissible_partitions(shape: Shape) -> Vec<IntegerPartition> {
    let excluded = IntegerPartition::new(vec![shape.degree() - 1, 1]);
    enumerate_partitions(shape.degree(), 2, shape.n(), &[excluded])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaBlock {
    pub partition: IntegerPartition,
    /// Positions into [`SliceLayout::mu_indices`], ascending (graded-lex).
    pub members: Vec<usize>,
}

/// Index tables for slice coordinates of one [`Shape`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceLayout {
    shape: Shape,
    pairs: Vec<(usize, usize)>,
    mu: Vec<MultiIndex>,
    mu_position: HashMap<MultiIndex, usize>,
    blocks: Vec<LambdaBlock>,
}

impl SliceLayout {
    fn build(shape: Shape) -> SliceLayout {
        let n = shape.n();
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mu: Vec<MultiIndex> = enumerate_multi_indices(n, shape.degree())
            .into_iter()
            .filter(|m| is_w2_index(m, shape.degree()))
            .collect();
        let mu_position = mu.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let blocks = admissible_partitions(shape)
            .into_iter()
            .map(|partition| LambdaBlock {
                members: (0..mu.len()).filter(|&k| mu[k].partition() == partition).collect(),
                partition,
            })
            .collect();
        SliceLayout { shape, pairs, mu, mu_position, blocks }
    }

    pub fn cached(shape: Shape) -> Arc<SliceLayout> {
        SliceBasis::cached(shape).layout().clone()
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Position of `c_ij` for `i < j`.
    pub fn pair_position(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n());
        let n = self.n();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn mu_indices(&self) -> &[MultiIndex] {
        &self.mu
    }

    pub fn mu_position(&self, mu: &MultiIndex) -> Option<usize> {
        self.mu_position.get(mu).copied()
    }

    pub fn blocks(&self) -> &[LambdaBlock] {
        &self.blocks
    }

    pub fn block(&self, partition: &IntegerPartition) -> Option<&LambdaBlock> {
        self.blocks.iter().find(|b| &b.partition == partition)
    }

    pub fn dim(&self) -> usize {
        self.n() + self.pairs.len() + self.mu.len()
    }
}

/// Coordinates `c_i`, `c_ij` (`i < j`), `c_μ` of a slice element in the
/// equivariant basis. `c_ji = -c_ij` is realized on access.
#[derive(Debug, Clone)]
pub struct SliceCoordinates<R> {
    layout: Arc<SliceLayout>,
    point: Vec<R>,
    pair: Vec<R>,
    mu: Vec<R>,
}

impl<R: PartialEq> PartialEq for SliceCoordinates<R> {
    fn eq(&self, other: &Self) -> bool {
        self.layout.shape == other.layout.shape
            && self.point == other.point
            && self.pair == other.pair
            && self.mu == other.mu
    }
}

impl<R: Ring> SliceCoordinates<R> {
    pub fn new(layout: Arc<SliceLayout>, point: Vec<R>, pair: Vec<R>, mu: Vec<R>) -> Result<Self> {
        let check = |expected: usize, got: usize| {
            if expected == got {
                Ok(())
            } else {
                Err(Error::ArityMismatch { expected, got })
            }
        };
        check(layout.n(), point.len())?;
        check(layout.pairs.len(), pair.len())?;
        check(layout.mu.len(), mu.len())?;
        Ok(SliceCoordinates { layout, point, pair, mu })
    }

    pub fn zero(layout: Arc<SliceLayout>) -> Self {
        SliceCoordinates {
            point: vec![R::zero(); layout.n()],
            pair: vec![R::zero(); layout.pairs.len()],
            mu: vec![R::zero(); layout.mu.len()],
            layout,
        }
    }

    /// Inverse of [`SliceCoordinates::flatten`].
    pub fn from_flat(layout: Arc<SliceLayout>, mut values: Vec<R>) -> Result<Self> {
        if values.len() != layout.dim() {
            return Err(Error::ArityMismatch { expected: layout.dim(), got: values.len() });
        }
        let mu = values.split_off(layout.n() + layout.pairs.len());
        let pair = values.split_off(layout.n());
        Ok(SliceCoordinates { layout, point: values, pair, mu })
    }

    /// Point block, pair block, then `W_2` block.
    pub fn flatten(&self) -> Vec<R> {
        self.point.iter().chain(&self.pair).chain(&self.mu).cloned().collect()
    }

    pub fn layout(&self) -> &Arc<SliceLayout> {
        &self.layout
    }

    pub fn shape(&self) -> Shape {
        self.layout.shape
    }

    pub fn n(&self) -> usize {
        self.layout.n()
    }

    pub fn point_values(&self) -> &[R] {
        &self.point
    }

    pub fn pair_values(&self) -> &[R] {
        &self.pair
    }

    pub fn mu_values(&self) -> &[R] {
        &self.mu
    }

    pub fn c_point(&self, i: usize) -> &R {
        &self.point[i]
    }

    /// `c_ij` with the skew convention; panics for `i == j`.
    pub fn c_pair(&self, i: usize, j: usize) -> R {
        assert_ne!(i, j, "c_ii is not a coordinate");
        if i < j {
            self.pair[self.layout.pair_position(i, j)].clone()
        } else {
            -self.pair[self.layout.pair_position(j, i)].clone()
        }
    }

    pub fn c_mu(&self, mu: &MultiIndex) -> Option<&R> {
        self.layout.mu_position(mu).map(|k| &self.mu[k])
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&R) -> G) -> SliceCoordinates<G> {
        SliceCoordinates {
            layout: self.layout.clone(),
            point: self.point.iter().map(&f).collect(),
            pair: self.pair.iter().map(&f).collect(),
            mu: self.mu.iter().map(&f).collect(),
        }
    }

    pub(crate) fn with_blocks(&self, point: Vec<R>, pair: Vec<R>, mu: Vec<R>) -> Self {
        SliceCoordinates { layout: self.layout.clone(), point, pair, mu }
    }
}

impl<F: Field> SliceCoordinates<F> {
    pub fn to_float(&self) -> SliceCoordinates<f64> {
        self.map(|c| c.to_f64())
    }
}

/// The map `q -> Δ^{d-1}(|x|^{2d-2} q)` on quadratic forms, as an exact
/// matrix in the monomial basis of degree 2 (`matrix[row][col]`, columns are
/// images of basis monomials).
pub fn l_map(n: usize, d: u32) -> Vec<Vec<Rational>> {
    let basis = enumerate_multi_indices(n, 2);
    let mut matrix = vec![vec![Rational::zero(); basis.len()]; basis.len()];
    for (col, mu) in basis.iter().enumerate() {
        let image = Form::monomial(Rational::from_i64(1), mu.clone())
            .mul_norm_power(d - 1)
            .laplacian_power(d - 1);
        for (row, nu) in basis.iter().enumerate() {
            matrix[row][col] = image.coefficient(nu);
        }
    }
    matrix
}

/// A quadratic form `x^T M x` with `M` symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm<F> {
    matrix: Vec<Vec<F>>,
}

impl<F: Field> QuadraticForm<F> {
    pub fn from_form(q: &Form<F>) -> Result<Self> {
        if q.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, got: q.degree() });
        }
        let n = q.n();
        let half = F::one() / F::from_i64(2);
        let mut matrix = vec![vec![F::zero(); n]; n];
        for (mu, c) in q.terms() {
            let idx: Vec<usize> = (0..n).filter(|&i| mu.get(i) > 0).collect();
            match idx.as_slice() {
                [i] => matrix[*i][*i] = c.clone(),
                [i, j] => {
                    matrix[*i][*j] = c.clone() * half.clone();
                    matrix[*j][*i] = c.clone() * half.clone();
                }
                _ => unreachable!("degree-2 monomial"),
            }
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<F>] {
        &self.matrix
    }

    pub fn to_form(&self) -> Form<F> {
        let n = self.n();
        let two = F::from_i64(2);
        let terms = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| {
            let mu = MultiIndex::unit(n, i, 1).add(&MultiIndex::unit(n, j, 1));
            let c = if i == j { self.matrix[i][i].clone() } else { self.matrix[i][j].clone() * two.clone() };
            (mu, c)
        });
        Form::from_terms(n, 2, terms).expect("quadratic monomials")
    }

    /// Largest `|M_ij|` over `i != j`.
    pub fn off_diagonal_max(&self) -> f64 {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.matrix[i][j].to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal_exactly(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[i][j].is_zero()))
    }

    pub fn to_float(&self) -> QuadraticForm<f64> {
        QuadraticForm { matrix: self.matrix.iter().map(|r| r.iter().map(|c| c.to_f64()).collect()).collect() }
    }
}

/// The unique `q` with `f - |x|^{2d-2} q` in `ker Δ^{d-1}`, computed as
/// `l_map^{-1}(Δ^{d-1} f)`.
pub fn quadratic_part<F: Field>(f: &Form<F>) -> Result<QuadraticForm<F>> {
    let degree = f.degree();
    if degree % 2 == 1 {
        return Err(Error::OddDegree { degree });
    }
    if degree == 0 {
        return Err(Error::UnsupportedShape { n: f.n(), degree, reason: "constant form has no quadratic part".into() });
    }
    let n = f.n();
    let d = degree / 2;
    let image = f.laplacian_power(d - 1);
    let basis = enumerate_multi_indices(n, 2);
    let l: Vec<Vec<F>> = l_map(n, d).iter().map(|r| r.iter().map(F::from_rational).collect()).collect();
    let rhs: Vec<Vec<F>> = basis.iter().map(|mu| vec![image.coefficient(mu)]).collect();
    let sol = F::solve_system(&l, &rhs).expect("l_map is invertible");
    let q = Form::from_terms(n, 2, basis.into_iter().zip(sol.into_iter().map(|mut r| r.remove(0))))?;
    QuadraticForm::from_form(&q)
}

#[derive(Debug, Clone)]
pub struct Diagonalization {
    /// Columns are orthonormal eigenvectors: `g^T M g = diag(eigenvalues)`.
    pub g: OrthogonalMatrix,
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Smallest difference between consecutive eigenvalues.
    pub min_gap: f64,
}

impl Diagonalization {
    pub fn is_degenerate(&self) -> bool {
        self.min_gap < EIGEN_GAP_TOL
    }
}

/// Spectral decomposition with a canonical choice of `g`: eigenvalues
/// descending, each eigenvector's largest-magnitude entry positive.
pub fn diagonalize(q: &QuadraticForm<f64>) -> Diagonalization {
    let n = q.n();
    let m = DMatrix::from_fn(n, n, |i, j| q.matrix[i][j]);
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut g = DMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        let lead = (0..n).fold(0, |best, i| if v[i].abs() > v[best].abs() + 1e-12 { i } else { best });
        let sign = if v[lead] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            g[(i, col)] = sign * v[i];
        }
    }
    let min_gap = eigenvalues.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    Diagonalization {
        g: OrthogonalMatrix::new(g).expect("symmetric eigenvectors are orthonormal"),
        eigenvalues,
        min_gap,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenericityReport {
    pub eigenvalues: Vec<f64>,
    pub min_gap: f64,
    /// Largest mixed coefficient of the moved form's quadratic part.
    pub off_diagonal_residual: f64,
    pub warning: Option<String>,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.warning.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct SliceMove {
    /// `f` moved into the slice: `apply_orthogonal(f, g)`.
    pub form: Form<f64>,
    pub g: OrthogonalMatrix,
    pub report: GenericityReport,
}

/// Moves `f` into the slice by diagonalizing its quadratic part.
pub fn move_to_slice(f: &Form<f64>) -> Result<SliceMove> {
    let degree = f.degree();
    if degree % 2 == 1 {
        return Err(Error::OddDegree { degree });
    }
    if degree < 4 {
        return Err(Error::UnsupportedShape { n: f.n(), degree, reason: "even degree >= 4 required".into() });
    }
    let diag = diagonalize(&quadratic_part(f)?);
    let g = diag.g.transpose();
    let form = f.apply_orthogonal(&g)?;
    let off_diagonal_residual = quadratic_part(&form)?.off_diagonal_max();
    let warning = diag.is_degenerate().then(|| {
        format!(
            "non-generic: repeated eigenvalues (gap {:.3e}); invariants may not separate",
            diag.min_gap
        )
    });
    Ok(SliceMove {
        form,
        g,
        report: GenericityReport { eigenvalues: diag.eigenvalues, min_gap: diag.min_gap, off_diagonal_residual, warning },
    })
}

/// Whether every mixed monomial of the quadratic part vanishes (exactly for
/// rationals, within `tol` for floats), together with the largest mixed
/// coefficient.
pub fn is_in_slice<F: Field>(f: &Form<F>, tol: f64) -> Result<(bool, f64)> {
    let q = quadratic_part(f)?;
    let residual = q.off_diagonal_max();
    let inside = match F::MODE {
        ScalarMode::Exact => q.is_diagonal_exactly(),
        ScalarMode::Float => residual <= tol,
    };
    Ok((inside, residual))
}

/// Equivariant basis `m_i`, `m_ij`, `m_μ` of the slice for one shape.
#[derive(Debug)]
pub struct SliceBasis {
    layout: Arc<SliceLayout>,
    point: Vec<Form<Rational>>,
    pair: Vec<Form<Rational>>,
    mu: Vec<Form<Rational>>,
    solver: OnceLock<CoordinateSolver>,
}

/// Dual functionals of the basis, extended by the mixed quadratic directions
/// `|x|^{2d-2} x_i x_j` to a basis of all forms.
#[derive(Debug)]
struct CoordinateSolver {
    monomial_position: HashMap<MultiIndex, usize>,
    /// For each monomial, the nonzero entries of its inverse column.
    columns: Vec<Vec<(usize, Rational)>>,
}

fn rat(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

/// Basis element for a multi-index of degree `2d` (the three-case
/// construction). Returns the zero form for `μ = 2d ε_i`.
pub fn basis_element(n: usize, d: u32, mu: &MultiIndex) -> Form<Rational> {
    let degree = 2 * d;
    let lead = Form::monomial(rat(&multinomial(degree, mu).expect("degree 2d")), mu.clone());
    let odd = mu.odd_positions();
    match odd.len() {
        0 => {
            let half = mu.halve().expect("all even");
            let mut f = lead;
            for i in (0..n).filter(|&i| mu.get(i) != 0) {
                let lowered = half.checked_sub(&MultiIndex::unit(n, i, 1)).expect("mu_i >= 2");
                let c = rat(&multinomial(d - 1, &lowered).expect("degree d-1"));
                let pure = Form::monomial(c, MultiIndex::unit(n, i, degree));
                f = f.checked_sub(&pure).expect("same shape");
            }
            f
        }
        2 => {
            let (i, j) = (odd[0], odd[1]);
            let reduced = mu
                .checked_sub(&MultiIndex::unit(n, i, 1).add(&MultiIndex::unit(n, j, 1)))
                .and_then(|m| m.halve())
                .expect("remaining entries even");
            let c = rat(&(multinomial(d - 1, &reduced).expect("degree d-1") * BigInt::from(d)));
            let pair_terms = Form::from_terms(
                n,
                degree,
                [
                    (MultiIndex::unit(n, i, degree - 1).add(&MultiIndex::unit(n, j, 1)), c.clone()),
                    (MultiIndex::unit(n, i, 1).add(&MultiIndex::unit(n, j, degree - 1)), c),
                ],
            )
            .expect("degree 2d");
            lead.checked_sub(&pair_terms).expect("same shape")
        }
        _ => Form::monomial(Rational::from_i64(1), mu.clone()),
    }
}

impl SliceBasis {
    pub fn build(shape: Shape) -> SliceBasis {
        let layout = Arc::new(SliceLayout::build(shape));
        let (n, d) = (shape.n(), shape.d());
        let point = (0..n)
            .map(|i| Form::monomial(Rational::from_i64(1), MultiIndex::unit(n, i, 2)).mul_norm_power(d - 1))
            .collect();
        let pair = layout
            .pairs
            .iter()
            .map(|&(i, j)| {
                basis_element(n, d, &MultiIndex::unit(n, i, 2 * d - 1).add(&MultiIndex::unit(n, j, 1)))
            })
            .collect();
        let mu = layout.mu.iter().map(|m| basis_element(n, d, m)).collect();
        SliceBasis { layout, point, pair, mu, solver: OnceLock::new() }
    }

    /// Shared, lazily built basis for `shape`. Safe under concurrent readers.
    pub fn cached(shape: Shape) -> Arc<SliceBasis> {
        static CACHE: OnceLock<RwLock<HashMap<Shape, Arc<SliceBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.read().expect("cache poisoned").get(&shape) {
            return b.clone();
        }
        let mut w = cache.write().expect("cache poisoned");
        w.entry(shape).or_insert_with(|| Arc::new(SliceBasis::build(shape))).clone()
    }

    pub fn layout(&self) -> &Arc<SliceLayout> {
        &self.layout
    }

    pub fn shape(&self) -> Shape {
        self.layout.shape
    }

    pub fn point_elements(&self) -> &[Form<Rational>] {
        &self.point
    }

    pub fn pair_elements(&self) -> &[Form<Rational>] {
        &self.pair
    }

    pub fn mu_elements(&self) -> &[Form<Rational>] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.point.len() + self.pair.len() + self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All elements in coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = &Form<Rational>> {
        self.point.iter().chain(&self.pair).chain(&self.mu)
    }

    /// `sum c_k m_k`.
    pub fn combine<F: Field>(&self, c: &SliceCoordinates<F>) -> Form<F> {
        assert_eq!(c.shape(), self.shape(), "coordinate shape");
        let s = self.shape();
        let mut acc = Form::zero(s.n(), s.degree());
        for (m, ck) in self.elements().zip(c.flatten()) {
            if ck.is_zero() {
                continue;
            }
            let term = m.map_coefficients(F::from_rational).scale(&ck);
            acc = acc.checked_add(&term).expect("same shape");
        }
        acc
    }

    fn solver(&self) -> &CoordinateSolver {
        self.solver.get_or_init(|| {
            let s = self.shape();
            let (n, d) = (s.n(), s.d());
            let monomials = enumerate_multi_indices(n, s.degree());
            let complement = self.layout.pairs.iter().map(|&(i, j)| {
                let mixed = MultiIndex::unit(n, i, 1).add(&MultiIndex::unit(n, j, 1));
                Form::monomial(Rational::from_i64(1), mixed).mul_norm_power(d - 1)
            });
            let columns: Vec<Form<Rational>> = self.elements().cloned().chain(complement).collect();
            assert_eq!(columns.len(), monomials.len(), "basis plus complement spans all forms");
            let matrix: Vec<Vec<Rational>> = monomials
                .iter()
                .map(|mu| columns.iter().map(|f| f.coefficient(mu)).collect())
                .collect();
            let inverse = invert_exact(&matrix).expect("slice basis and mixed directions are independent");
            let columns = (0..monomials.len())
                .map(|m| {
                    (0..monomials.len())
                        .filter(|&k| !inverse[k][m].is_zero())
                        .map(|k| (k, inverse[k][m].clone()))
                        .collect()
                })
                .collect();
            CoordinateSolver {
                monomial_position: monomials.into_iter().enumerate().map(|(k, m)| (m, k)).collect(),
                columns,
            }
        })
    }

    /// Coordinates of a slice element. Rational input must lie in the slice
    /// exactly; float input within `tol` times its largest coefficient.
    pub fn coordinates<F: Field>(&self, s: &Form<F>, tol: f64) -> Result<SliceCoordinates<F>> {
        let shape = self.shape();
        if s.n() != shape.n() {
            return Err(Error::ArityMismatch { expected: shape.n(), got: s.n() });
        }
        if s.degree() != shape.degree() {
            return Err(Error::DegreeMismatch { expected: shape.degree(), got: s.degree() });
        }
        let solver = self.solver();
        let k = self.len();
        let mut full = vec![F::zero(); solver.columns.len()];
        for (mu, c) in s.terms() {
            let m = solver.monomial_position[mu];
            for (row, v) in &solver.columns[m] {
                full[*row] = full[*row].clone() + F::from_rational(v) * c.clone();
            }
        }
        let scale = tol * s.max_abs_coefficient().max(1.0);
        let offending: Vec<String> = self
            .layout
            .pairs
            .iter()
            .zip(&full[k..])
            .filter(|(_, v)| match F::MODE {
                ScalarMode::Exact => !v.is_zero(),
                ScalarMode::Float => v.to_f64().abs() > scale,
            })
            .map(|(&(i, j), v)| format!("x{}*x{}: {}", i + 1, j + 1, v.to_scalar()))
            .collect();
        if !offending.is_empty() {
            return Err(Error::NotInSlice { offending });
        }
        full.truncate(k);
        SliceCoordinates::from_flat(self.layout.clone(), full)
    }
}
