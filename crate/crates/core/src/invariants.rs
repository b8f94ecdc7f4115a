//! Generating rational invariants of `B(n)` on slice coordinates.
//!
//! The fingerprint consists of
//! - the `W_1` block: `p_l = Σ c_ij^{2l}` (`1 <= l <= C(n,2)`),
//!   `q_l = Σ u_i^l` (`2 <= l <= n`) and `z`;
//! - the point block `r0_t = Σ u_i^t c_i` (`0 <= t < n`);
//! - one block per admissible partition `λ`:
//!   `r_{λ,t} = Σ_{μ∼λ} u_μ^t d_μ c_μ` (`0 <= t < #{μ∼λ}`).
//!
//! The point and `λ` blocks are Vandermonde systems in the nodes `u_i`
//! resp. `u_μ`, scaled by `d_μ`; when the nodes are distinct and every
//! `d_μ` is nonzero they can be solved back for `c_i` and `c_μ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use serde_json::{json, Map, Value};

use crate::combinatorics::{IntegerPartition, MultiIndex};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::scalar::{Field, Rational, Ring};
use crate::slice::{LambdaBlock, Shape, SliceCoordinates, SliceLayout};
use crate::symbolic::SymbolicPoly;
use crate::text::write_form;

/// Tolerance for float node collisions and vanishing `d_μ`.
pub const COLLISION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UMode {
    /// `u_μ = Σ_i μ_i u_i`.
    Weighted,
    /// Product of `u_I` over the classes of equal `μ`-values.
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DMode {
    /// One matching sum over all odd positions of `μ`.
    AllOddMatching,
    /// Product of `d_I` over classes of equal odd values.
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvariantVariant {
    pub u_mode: UMode,
    pub d_mode: DMode,
}

impl Default for InvariantVariant {
    fn default() -> Self {
        InvariantVariant { u_mode: UMode::Weighted, d_mode: DMode::AllOddMatching }
    }
}

impl InvariantVariant {
    pub fn paper_literal() -> Self {
        InvariantVariant { u_mode: UMode::PaperLiteral, d_mode: DMode::PaperLiteral }
    }

    pub fn tag(&self) -> &'static str {
        match (self.u_mode, self.d_mode) {
            (UMode::Weighted, DMode::AllOddMatching) => "repaired",
            (UMode::PaperLiteral, DMode::PaperLiteral) => "paper-literal",
            (UMode::PaperLiteral, DMode::AllOddMatching) => "paper-u",
            (UMode::Weighted, DMode::PaperLiteral) => "paper-d",
        }
    }
}

impl fmt::Display for InvariantVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for InvariantVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (u_mode, d_mode) = match s {
            "default" | "repaired" => return Ok(Self::default()),
            "paper-literal" => return Ok(Self::paper_literal()),
            "paper-u" => (UMode::PaperLiteral, DMode::AllOddMatching),
            "paper-d" => (UMode::Weighted, DMode::PaperLiteral),
            other => {
                return Err(format!(
                    "unknown variant {other:?} (expected default, paper-literal, paper-u or paper-d)"
                ))
            }
        };
        Ok(InvariantVariant { u_mode, d_mode })
    }
}

/// Why a fingerprint may fail to separate orbits at this point.
#[derive(Debug, Clone, PartialEq)]
pub enum GenericityFlag {
    /// Two Vandermonde nodes of one block coincide.
    NodeCollision { block: String, first: String, second: String },
    /// A diagonal factor `d_μ` vanishes.
    VanishingD { block: String, mu: String },
    /// The quadratic part of the input had (nearly) repeated eigenvalues.
    RepeatedEigenvalues { min_gap: f64 },
}

impl fmt::Display for GenericityFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenericityFlag::NodeCollision { block, first, second } => {
                write!(f, "singular block {block}: node collision {first} = {second}")
            }
            GenericityFlag::VanishingD { block, mu } => write!(f, "singular block {block}: degenerate d at {mu}"),
            GenericityFlag::RepeatedEigenvalues { min_gap } => {
                write!(f, "non-generic: repeated eigenvalues (gap {min_gap:.3e})")
            }
        }
    }
}

/// All `u_i = Σ_{j≠i} c_ij^2`.
pub fn u_points<R: Ring>(c: &SliceCoordinates<R>) -> Vec<R> {
    let n = c.n();
    let mut u = vec![R::zero(); n];
    for (&(i, j), cij) in c.layout().pairs().iter().zip(c.pair_values()) {
        let sq = cij.clone() * cij.clone();
        u[i] = u[i].clone() + sq.clone();
        u[j] = u[j].clone() + sq;
    }
    u
}

pub fn u_point<R: Ring>(i: usize, c: &SliceCoordinates<R>) -> R {
    (0..c.n()).filter(|&j| j != i).fold(R::zero(), |acc, j| {
        let v = c.c_pair(i, j);
        acc + v.clone() * v
    })
}

/// `u_I`: the singleton case is `u_i`, otherwise `Σ_{i<j in I} c_ij^2`.
pub fn u_set<R: Ring>(set: &[usize], c: &SliceCoordinates<R>) -> R {
    assert!(!set.is_empty(), "u_I needs a nonempty index set");
    if let [i] = set {
        return u_point(*i, c);
    }
    let mut acc = R::zero();
    for (a, &i) in set.iter().enumerate() {
        for &j in &set[a + 1..] {
            let v = c.c_pair(i, j);
            acc = acc + v.clone() * v;
        }
    }
    acc
}

/// Classes of positions with equal entries, in order of first occurrence.
fn value_classes(mu: &MultiIndex, keep: impl Fn(u32) -> bool) -> Vec<Vec<usize>> {
    let mut classes: Vec<(u32, Vec<usize>)> = Vec::new();
    for (i, &v) in mu.entries().iter().enumerate().filter(|(_, &v)| keep(v)) {
        match classes.iter_mut().find(|(w, _)| *w == v) {
            Some((_, members)) => members.push(i),
            None => classes.push((v, vec![i])),
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

fn u_mu_with<R: Ring>(mu: &MultiIndex, c: &SliceCoordinates<R>, u: &[R], mode: UMode) -> R {
    match mode {
        UMode::Weighted => mu
            .entries()
            .iter()
            .zip(u)
            .filter(|(&m, _)| m > 0)
            .fold(R::zero(), |acc, (&m, ui)| acc + R::from_i64(m as i64) * ui.clone()),
        UMode::PaperLiteral => value_classes(mu, |_| true)
            .iter()
            .fold(R::one(), |acc, class| acc * if class.len() == 1 { u[class[0]].clone() } else { u_set(class, c) }),
    }
}

pub fn u_mu<R: Ring>(mu: &MultiIndex, c: &SliceCoordinates<R>, variant: InvariantVariant) -> R {
    u_mu_with(mu, c, &u_points(c), variant.u_mode)
}

/// `Σ` over perfect matchings of `set` of `∏ c_ij (u_i - u_j)`; 1 for the
/// empty set, 0 for odd cardinality.
fn matching_sum<R: Ring>(set: &[usize], c: &SliceCoordinates<R>, u: &[R]) -> R {
    match set {
        [] => R::one(),
        [_] => R::zero(),
        [first, rest @ ..] => {
            let mut acc = R::zero();
            for (k, &j) in rest.iter().enumerate() {
                let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &x)| x).collect();
                let sub = matching_sum(&remaining, c, u);
                if sub.is_zero() {
                    continue;
                }
                let factor = c.c_pair(*first, j) * (u[*first].clone() - u[j].clone());
                acc = acc + factor * sub;
            }
            acc
        }
    }
}

fn d_mu_with<R: Ring>(mu: &MultiIndex, c: &SliceCoordinates<R>, u: &[R], mode: DMode) -> R {
    match mode {
        DMode::AllOddMatching => matching_sum(&mu.odd_positions(), c, u),
        DMode::PaperLiteral => value_classes(mu, |v| v % 2 == 1)
            .iter()
            .fold(R::one(), |acc, class| acc * matching_sum(class, c, u)),
    }
}

pub fn d_mu<R: Ring>(mu: &MultiIndex, c: &SliceCoordinates<R>, variant: InvariantVariant) -> R {
    d_mu_with(mu, c, &u_points(c), variant.d_mode)
}

pub fn p_w1<R: Ring>(l: u32, c: &SliceCoordinates<R>) -> Result<R> {
    let max = c.shape().pair_count();
    if l < 1 || l as usize > max {
        return Err(Error::OutOfRange { what: "p_l index", value: l as usize, min: 1, max });
    }
    Ok(c.pair_values().iter().fold(R::zero(), |acc, v| acc + v.pow(2 * l)))
}

pub fn q_w1<R: Ring>(l: u32, c: &SliceCoordinates<R>) -> Result<R> {
    let max = c.n();
    if l < 2 || l as usize > max {
        return Err(Error::OutOfRange { what: "q_l index", value: l as usize, min: 2, max });
    }
    Ok(u_points(c).iter().fold(R::zero(), |acc, v| acc + v.pow(l)))
}

fn z_with<R: Ring>(c: &SliceCoordinates<R>, u: &[R]) -> R {
    let n = c.n();
    let mut acc = R::zero();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let diffs = (u[i].clone() - u[j].clone()) * (u[j].clone() - u[k].clone()) * (u[k].clone() - u[i].clone());
                acc = acc + diffs * c.c_pair(i, j) * c.c_pair(j, k) * c.c_pair(k, i);
            }
        }
    }
    acc
}

pub fn z_w1<R: Ring>(c: &SliceCoordinates<R>) -> R {
    z_with(c, &u_points(c))
}

/// `p_1..p_{C(n,2)}, q_2..q_n, z`.
pub fn w1_block<R: Ring>(c: &SliceCoordinates<R>) -> Vec<R> {
    let u = u_points(c);
    let mut out: Vec<R> = (1..=c.shape().pair_count() as u32)
        .map(|l| c.pair_values().iter().fold(R::zero(), |acc, v| acc + v.pow(2 * l)))
        .collect();
    out.extend((2..=c.n() as u32).map(|l| u.iter().fold(R::zero(), |acc, v| acc + v.pow(l))));
    out.push(z_with(c, &u));
    out
}

/// `Σ_k w_k nodes_k^t` for `t = 0..len`.
fn power_sums<R: Ring>(nodes: &[R], weights: Vec<R>) -> Vec<R> {
    let mut w = weights;
    let mut out = Vec::with_capacity(nodes.len());
    for t in 0..nodes.len() {
        out.push(w.iter().fold(R::zero(), |acc, x| acc + x.clone()));
        if t + 1 < nodes.len() {
            for (x, node) in w.iter_mut().zip(nodes) {
                *x = x.clone() * node.clone();
            }
        }
    }
    out
}

pub fn r0_block<R: Ring>(c: &SliceCoordinates<R>) -> Vec<R> {
    power_sums(&u_points(c), c.point_values().to_vec())
}

/// Vandermonde nodes `u_μ` and diagonal factors `d_μ` of one block.
fn block_nodes<R: Ring>(block: &LambdaBlock, layout: &SliceLayout, c: &SliceCoordinates<R>, u: &[R], variant: InvariantVariant) -> (Vec<R>, Vec<R>) {
    block
        .members
        .iter()
        .map(|&k| {
            let mu = &layout.mu_indices()[k];
            (u_mu_with(mu, c, u, variant.u_mode), d_mu_with(mu, c, u, variant.d_mode))
        })
        .unzip()
}

pub fn r_lambda_block<R: Ring>(lambda: &IntegerPartition, c: &SliceCoordinates<R>, variant: InvariantVariant) -> Result<Vec<R>> {
    let layout = c.layout().clone();
    let block = layout.block(lambda).ok_or_else(|| Error::UnsupportedShape {
        n: c.n(),
        degree: c.shape().degree(),
        reason: format!("partition {lambda} is not an admissible block"),
    })?;
    let (nodes, d) = block_nodes(block, &layout, c, &u_points(c), variant);
    let weights = d.into_iter().zip(&block.members).map(|(dk, &k)| dk * c.mu_values()[k].clone()).collect();
    Ok(power_sums(&nodes, weights))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fingerprint<R> {
    pub shape: Shape,
    pub variant: InvariantVariant,
    /// `p_1..p_{C(n,2)}, q_2..q_n, z`.
    pub q: Vec<R>,
    pub r0: Vec<R>,
    /// One entry per admissible partition, in canonical order.
    pub r: Vec<(IntegerPartition, Vec<R>)>,
    pub flags: Vec<GenericityFlag>,
}

fn collisions<R: Ring>(block: &str, nodes: &[R], names: impl Fn(usize) -> String, tol: f64, flags: &mut Vec<GenericityFlag>) {
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if nodes[a].near(&nodes[b], tol) {
                flags.push(GenericityFlag::NodeCollision { block: block.to_string(), first: names(a), second: names(b) });
            }
        }
    }
}

/// Evaluates every generator at `c`. Node collisions and vanishing `d_μ` are
/// detected with `R::near` at [`COLLISION_TOL`].
pub fn fingerprint<R: Ring>(c: &SliceCoordinates<R>, variant: InvariantVariant) -> Fingerprint<R> {
    let layout = c.layout().clone();
    let u = u_points(c);
    let mut flags = Vec::new();
    collisions("r0", &u, |i| format!("u_{}", i + 1), COLLISION_TOL, &mut flags);
    let r0 = power_sums(&u, c.point_values().to_vec());
    let r = layout
        .blocks()
        .iter()
        .map(|block| {
            let (nodes, d) = block_nodes(block, &layout, c, &u, variant);
            let name = block.partition.to_string();
            let mu_name = |k: usize| layout.mu_indices()[block.members[k]].to_string();
            collisions(&name, &nodes, mu_name, COLLISION_TOL, &mut flags);
            for (k, dk) in d.iter().enumerate() {
                if dk.near(&R::zero(), COLLISION_TOL) {
                    flags.push(GenericityFlag::VanishingD { block: name.clone(), mu: mu_name(k) });
                }
            }
            let weights = d.into_iter().zip(&block.members).map(|(dk, &k)| dk * c.mu_values()[k].clone()).collect();
            (block.partition.clone(), power_sums(&nodes, weights))
        })
        .collect();
    Fingerprint { shape: c.shape(), variant, q: w1_block(c), r0, r, flags }
}

/// An integer standing for `num / D^deg`, for a scale `D` fixed by the
/// caller. Homogeneous evaluation never adds terms of different degrees, so
/// no rescaling (and no gcd) is needed until the end.
#[derive(Debug, Clone)]
struct Graded {
    num: BigInt,
    deg: u32,
}

impl PartialEq for Graded {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && (self.deg == other.deg || self.num.is_zero())
    }
}

impl Add for Graded {
    type Output = Graded;
    fn add(self, rhs: Graded) -> Graded {
        if self.num.is_zero() {
            return rhs;
        }
        if rhs.num.is_zero() {
            return self;
        }
        assert_eq!(self.deg, rhs.deg, "inhomogeneous sum");
        Graded { num: self.num + rhs.num, deg: self.deg }
    }
}

impl Sub for Graded {
    type Output = Graded;
    fn sub(self, rhs: Graded) -> Graded {
        self + (-rhs)
    }
}

impl Neg for Graded {
    type Output = Graded;
    fn neg(self) -> Graded {
        Graded { num: -self.num, deg: self.deg }
    }
}

impl Mul for Graded {
    type Output = Graded;
    fn mul(self, rhs: Graded) -> Graded {
        Graded { num: self.num * rhs.num, deg: self.deg + rhs.deg }
    }
}

impl Zero for Graded {
    fn zero() -> Self {
        Graded { num: BigInt::zero(), deg: 0 }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Graded {
    fn one() -> Self {
        Graded { num: BigInt::one(), deg: 0 }
    }
}

impl Ring for Graded {
    fn from_i64(v: i64) -> Self {
        Graded { num: v.into(), deg: 0 }
    }
}

/// Same values as [`fingerprint`] over the rationals, evaluated over the
/// integers after clearing a common denominator `D`.
pub fn fingerprint_exact(c: &SliceCoordinates<Rational>, variant: InvariantVariant) -> Fingerprint<Rational> {
    let scale = c.flatten().iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled = c.map(|v| Graded { num: v.numer() * (&scale / v.denom()), deg: 1 });
    let fp = fingerprint(&scaled, variant);
    let mut powers = vec![BigInt::one()];
    fp.map(|g| {
        while powers.len() <= g.deg as usize {
            let next = powers.last().expect("nonempty") * &scale;
            powers.push(next);
        }
        Rational::new(g.num.clone(), powers[g.deg as usize].clone())
    })
}

impl<R: Ring> Fingerprint<R> {
    pub fn len(&self) -> usize {
        self.q.len() + self.r0.len() + self.r.iter().map(|(_, v)| v.len()).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All values in canonical order: `q`, `r0`, then the `λ` blocks.
    pub fn values(&self) -> impl Iterator<Item = &R> {
        self.q.iter().chain(&self.r0).chain(self.r.iter().flat_map(|(_, v)| v))
    }

    /// Whether no genericity flag is raised.
    pub fn is_generic(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn values_eq(&self, other: &Fingerprint<R>) -> bool {
        self.shape == other.shape && self.values().eq(other.values())
    }

    pub fn map<G: Ring>(&self, mut f: impl FnMut(&R) -> G) -> Fingerprint<G> {
        Fingerprint {
            shape: self.shape,
            variant: self.variant,
            q: self.q.iter().map(&mut f).collect(),
            r0: self.r0.iter().map(&mut f).collect(),
            r: self.r.iter().map(|(p, v)| (p.clone(), v.iter().map(&mut f).collect())).collect(),
            flags: self.flags.clone(),
        }
    }

    /// Names of the entries of [`Fingerprint::values`].
    pub fn labels(&self) -> Vec<String> {
        generator_labels(self.shape, &self.r)
    }
}

fn generator_labels<T>(shape: Shape, r: &[(IntegerPartition, Vec<T>)]) -> Vec<String> {
    let n = shape.n();
    let mut out: Vec<String> = (1..=shape.pair_count()).map(|l| format!("p{l}")).collect();
    out.extend((2..=n).map(|l| format!("q{l}")));
    out.push("z".into());
    out.extend((0..n).map(|t| format!("r0_t{t}")));
    for (p, v) in r {
        out.extend((0..v.len()).map(|t| format!("r[{p}]_t{t}")));
    }
    out
}

impl<F: Field> Fingerprint<F> {
    pub fn to_float(&self) -> Fingerprint<f64> {
        self.map(|v| v.to_f64())
    }

    /// JSON document: exact values as `"p/q"` strings, floats as numbers.
    pub fn to_json(&self) -> Value {
        let enc = |v: &F| match v.to_scalar() {
            crate::scalar::Scalar::Exact(r) => Value::String(r.to_string()),
            crate::scalar::Scalar::Float(x) => json!(x),
        };
        let mut r = Map::new();
        for (p, vals) in &self.r {
            r.insert(p.to_string(), Value::Array(vals.iter().map(enc).collect()));
        }
        json!({
            "n": self.shape.n(),
            "degree": self.shape.degree(),
            "mode": F::MODE.as_str(),
            "variant": self.variant.tag(),
            "q": self.q.iter().map(enc).collect::<Vec<_>>(),
            "r0": self.r0.iter().map(enc).collect::<Vec<_>>(),
            "r": r,
            "flags": self.flags.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn solve_block<F: Field>(name: &str, nodes: &[F], d: &[F], rhs: &[F], node_name: impl Fn(usize) -> String) -> Result<Vec<F>> {
    let mut flags = Vec::new();
    collisions(name, nodes, &node_name, 0.0, &mut flags);
    for (k, dk) in d.iter().enumerate() {
        if dk.is_zero() {
            flags.push(GenericityFlag::VanishingD { block: name.to_string(), mu: node_name(k) });
        }
    }
    let singular = |detail: String| Error::SingularBlock { block: name.to_string(), detail };
    if !flags.is_empty() {
        return Err(singular(flags.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ")));
    }
    let m = nodes.len();
    let matrix: Vec<Vec<F>> = (0..m)
        .map(|t| (0..m).map(|k| nodes[k].pow(t as u32) * d[k].clone()).collect())
        .collect();
    let b: Vec<Vec<F>> = rhs.iter().map(|v| vec![v.clone()]).collect();
    let sol = F::solve_system(&matrix, &b).ok_or_else(|| singular("numerically singular".into()))?;
    Ok(sol.into_iter().map(|mut row| row.remove(0)).collect())
}

/// Recovers `c_i` and `c_μ` from the `r0` and `λ` blocks of `fp` and the
/// `W_1` coordinates `c_pair` (in layout order).
pub fn reconstruct<F: Field>(fp: &Fingerprint<F>, c_pair: &[F]) -> Result<SliceCoordinates<F>> {
    let layout = SliceLayout::cached(fp.shape);
    let zero_mu = vec![F::zero(); layout.mu_indices().len()];
    let partial = SliceCoordinates::new(layout.clone(), vec![F::zero(); layout.n()], c_pair.to_vec(), zero_mu)?;
    let u = u_points(&partial);
    let ones = vec![F::one(); u.len()];
    let point = solve_block("r0", &u, &ones, &fp.r0, |i| format!("u_{}", i + 1))?;
    let mut mu = vec![F::zero(); layout.mu_indices().len()];
    for (block, (p, values)) in layout.blocks().iter().zip(&fp.r) {
        debug_assert_eq!(&block.partition, p);
        let (nodes, d) = block_nodes(block, &layout, &partial, &u, fp.variant);
        let name = p.to_string();
        let sol = solve_block(&name, &nodes, &d, values, |k| layout.mu_indices()[block.members[k]].to_string())?;
        for (&k, v) in block.members.iter().zip(sol) {
            mu[k] = v;
        }
    }
    SliceCoordinates::new(layout, point, c_pair.to_vec(), mu)
}

/// Slice coordinates whose entries are independent symbolic variables.
pub fn symbolic_coordinates(shape: Shape) -> SliceCoordinates<SymbolicPoly> {
    let layout = SliceLayout::cached(shape);
    let flat = (0..layout.dim()).map(SymbolicPoly::var).collect();
    SliceCoordinates::from_flat(layout, flat).expect("dimension matches")
}

/// Names of the symbolic coordinate variables, in coordinate order.
pub fn variable_names(shape: Shape) -> Vec<String> {
    let layout = SliceLayout::cached(shape);
    let mut out: Vec<String> = (1..=layout.n()).map(|i| format!("c{i}")).collect();
    out.extend(layout.pairs().iter().map(|(i, j)| format!("c{}_{}", i + 1, j + 1)));
    out.extend(layout.mu_indices().iter().map(|mu| format!("c{mu}")));
    out
}

/// The generating invariants as explicit polynomials in the coordinates.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub shape: Shape,
    pub variant: InvariantVariant,
    pub variables: Vec<String>,
    /// `(label, polynomial)` in fingerprint order.
    pub generators: Vec<(String, SymbolicPoly)>,
    /// Flags that hold identically, e.g. structurally equal nodes.
    pub structural_flags: Vec<GenericityFlag>,
}

pub fn emit_generators(shape: Shape, variant: InvariantVariant) -> GeneratorSet {
    let fp = fingerprint(&symbolic_coordinates(shape), variant);
    let generators = fp.labels().into_iter().zip(fp.values().cloned()).collect();
    GeneratorSet { shape, variant, variables: variable_names(shape), generators, structural_flags: fp.flags }
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&SymbolicPoly> {
        self.generators.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    /// Count summary, including the closed-form count for comparison.
    pub fn count_note(&self) -> String {
        let s = self.shape;
        format!(
            "{} generators = dim Λ ({}) + n ({}); the closed form C(n+2d-1,2d) - C(n-1,2) gives {}, one fewer than the enumerated set",
            self.len(),
            s.slice_dim(),
            s.n(),
            s.closed_form_generator_count()
        )
    }

    /// Form-file text: one block per generator, variables in the order of
    /// the `# variables:` line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# generators for {} variant {}\n# {}\n# variables: {}\n",
            self.shape,
            self.variant,
            self.count_note(),
            self.variables.join(" ")
        );
        for flag in &self.structural_flags {
            out.push_str(&format!("# structural: {flag}\n"));
        }
        for (label, poly) in &self.generators {
            let form: Form<Rational> = poly.to_form(self.variables.len()).expect("generators are homogeneous");
            out.push('\n');
            out.push_str(&write_form(&form, &[label.clone()]));
        }
        out
    }
}
