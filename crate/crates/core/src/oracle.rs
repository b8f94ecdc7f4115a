//! Brute force over the signed permutation group `B(n)` and the symmetric
//! group, used to check invariance, orbit separation and the graph example.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::invariants::{fingerprint_exact, reconstruct, w1_block, Fingerprint, GenericityFlag, InvariantVariant};
use crate::linalg::OrthogonalMatrix;
use crate::scalar::{Rational, Ring};
use crate::slice::{Shape, SliceCoordinates, SliceLayout};

/// Largest `n` for which [`enumerate_group`] runs.
pub const GROUP_LIMIT: usize = 6;
/// Largest `n` for [`same_orbit_bruteforce`].
pub const ORBIT_LIMIT: usize = 5;
/// Largest `n` for sweeps and separation experiments.
pub const SWEEP_LIMIT: usize = 4;

/// `g e_k = tau_k e_{sigma(k)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    sigma: Vec<usize>,
    tau: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(sigma: Vec<usize>, tau: Vec<i8>) -> Result<Self> {
        let n = sigma.len();
        if tau.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: tau.len() });
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(format!("sigma {sigma:?} is not a permutation")));
            }
        }
        if tau.iter().any(|&t| t != 1 && t != -1) {
            return Err(Error::InvalidPermutation(format!("tau {tau:?} must have entries +1/-1")));
        }
        Ok(SignedPermutation { sigma, tau })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { sigma: (0..n).collect(), tau: vec![1; n] }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn tau(&self) -> &[i8] {
        &self.tau
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.n(), other.n(), "composing different sizes");
        let sigma = other.sigma.iter().map(|&s| self.sigma[s]).collect();
        let tau = (0..self.n()).map(|k| other.tau[k] * self.tau[other.sigma[k]]).collect();
        SignedPermutation { sigma, tau }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.n();
        let mut sigma = vec![0; n];
        let mut tau = vec![1; n];
        for k in 0..n {
            sigma[self.sigma[k]] = k;
            tau[self.sigma[k]] = self.tau[k];
        }
        SignedPermutation { sigma, tau }
    }

    /// The monomial matrix with `M[sigma(k)][k] = tau_k`.
    pub fn to_matrix(&self) -> OrthogonalMatrix {
        let n = self.n();
        let mut rows = vec![vec![0.0; n]; n];
        for k in 0..n {
            rows[self.sigma[k]][k] = self.tau[k] as f64;
        }
        OrthogonalMatrix::from_rows(&rows).expect("signed permutation matrices are orthogonal")
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma: Vec<String> = self.sigma.iter().map(|s| (s + 1).to_string()).collect();
        let tau: String = self.tau.iter().map(|&t| if t > 0 { '+' } else { '-' }).collect();
        write!(f, "sigma=[{}] tau={tau}", sigma.join(","))
    }
}

/// Next permutation in lexicographic order; `false` after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// All `2^n n!` elements: permutations in lexicographic order, and for each
/// the sign vectors by bitmask (bit `k` set means `tau_k = -1`). The identity
/// comes first.
pub fn enumerate_group(n: usize) -> Result<Vec<SignedPermutation>> {
    if n > GROUP_LIMIT {
        return Err(Error::GroupTooLarge { n, limit: GROUP_LIMIT });
    }
    let mut out = Vec::with_capacity((1 << n) * (1..=n).product::<usize>());
    for sigma in permutations(n) {
        for mask in 0u32..(1 << n) {
            let tau = (0..n).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPermutation { sigma: sigma.clone(), tau });
        }
    }
    Ok(out)
}

/// The induced action on slice coordinates: `c'_{σ(i)} = c_i`,
/// `c'_{σ(i)σ(j)} = τ_i τ_j c_ij`, `c'_ν = τ^μ c_μ` where `ν_{σ(k)} = μ_k`.
pub fn act_coords<R: Ring>(g: &SignedPermutation, c: &SliceCoordinates<R>) -> SliceCoordinates<R> {
    let layout = c.layout();
    let n = layout.n();
    assert_eq!(g.n(), n, "group element and coordinates disagree on n");
    let mut point = vec![R::zero(); n];
    for (i, v) in c.point_values().iter().enumerate() {
        point[g.sigma[i]] = v.clone();
    }
    let mut pair = vec![R::zero(); layout.pairs().len()];
    for (&(i, j), v) in layout.pairs().iter().zip(c.pair_values()) {
        let (a, b) = (g.sigma[i], g.sigma[j]);
        let negate = (g.tau[i] * g.tau[j] < 0) != (a > b);
        let slot = if a < b { layout.pair_position(a, b) } else { layout.pair_position(b, a) };
        pair[slot] = if negate { -v.clone() } else { v.clone() };
    }
    let mut mu = vec![R::zero(); layout.mu_indices().len()];
    for (m, v) in layout.mu_indices().iter().zip(c.mu_values()) {
        let (nu, negate) = relabel_index(g, m);
        let slot = layout.mu_position(&nu).expect("B(n) preserves the index set");
        mu[slot] = if negate { -v.clone() } else { v.clone() };
    }
    c.with_blocks(point, pair, mu)
}

/// `x^μ -> τ^μ x^ν` with `ν_{σ(k)} = μ_k`; the flag is `τ^μ = -1`.
fn relabel_index(g: &SignedPermutation, mu: &MultiIndex) -> (MultiIndex, bool) {
    let mut nu = vec![0; mu.len()];
    let mut negate = false;
    for (k, &e) in mu.entries().iter().enumerate() {
        nu[g.sigma[k]] = e;
        negate ^= g.tau[k] < 0 && e % 2 == 1;
    }
    (MultiIndex::new(nu), negate)
}

/// `f ∘ g^{-1}`, i.e. the substitution `x_k -> τ_k x_{σ(k)}`.
pub fn act_form<R: Ring>(g: &SignedPermutation, f: &Form<R>) -> Form<R> {
    assert_eq!(g.n(), f.n(), "group element and form disagree on n");
    f.relabel(|mu| relabel_index(g, mu))
}

/// Some `g` with `act_coords(g, a) = b`, searching the group in
/// [`enumerate_group`] order.
pub fn same_orbit_bruteforce<R: Ring>(a: &SliceCoordinates<R>, b: &SliceCoordinates<R>) -> Result<Option<SignedPermutation>> {
    let n = a.n();
    if n > ORBIT_LIMIT {
        return Err(Error::GroupTooLarge { n, limit: ORBIT_LIMIT });
    }
    if a.shape() != b.shape() {
        return Ok(None);
    }
    Ok(enumerate_group(n)?.into_iter().find(|g| &act_coords(g, a) == b))
}

/// Independent reproducible stream `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Numerator uniform in `[-99, 99] \ {0}`, denominator in `[1, 9]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num = loop {
        let v: i64 = rng.random_range(-99..=99);
        if v != 0 {
            break v;
        }
    };
    Rational::new(num.into(), rng.random_range(1i64..=9).into())
}

pub fn random_point<R: Rng + ?Sized>(shape: Shape, rng: &mut R) -> SliceCoordinates<Rational> {
    let layout = SliceLayout::cached(shape);
    let flat = (0..layout.dim()).map(|_| random_rational(rng)).collect();
    SliceCoordinates::from_flat(layout, flat).expect("dimension matches")
}

fn guard_sweep(n: usize) -> Result<()> {
    if n > SWEEP_LIMIT {
        return Err(Error::GroupTooLarge { n, limit: SWEEP_LIMIT });
    }
    Ok(())
}

fn point_strings(c: &SliceCoordinates<Rational>) -> Vec<String> {
    c.flatten().iter().map(|v| v.to_string()).collect()
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct InvarianceViolation {
    pub point_index: usize,
    pub point: Vec<String>,
    pub element: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct InvarianceReport {
    pub seed: Option<u64>,
    pub variant: String,
    pub points: usize,
    pub group_order: usize,
    pub pairs_checked: usize,
    pub violations: Vec<InvarianceViolation>,
}

/// Checks `fingerprint(g·c) = fingerprint(c)` exactly for every point and
/// every `g ∈ B(n)`.
pub fn invariance_sweep(points: &[SliceCoordinates<Rational>], variant: InvariantVariant, seed: Option<u64>) -> Result<InvarianceReport> {
    let Some(first) = points.first() else {
        return Ok(InvarianceReport { seed, variant: variant.tag().into(), points: 0, group_order: 0, pairs_checked: 0, violations: Vec::new() });
    };
    let n = first.n();
    guard_sweep(n)?;
    let group = enumerate_group(n)?;
    let violations: Vec<InvarianceViolation> = points
        .par_iter()
        .enumerate()
        .flat_map_iter(|(idx, c)| {
            let base = fingerprint_exact(c, variant);
            group
                .iter()
                .filter(|g| !fingerprint_exact(&act_coords(g, c), variant).values_eq(&base))
                .map(|g| InvarianceViolation { point_index: idx, point: point_strings(c), element: g.to_string() })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(InvarianceReport {
        seed,
        variant: variant.tag().into(),
        points: points.len(),
        group_order: group.len(),
        pairs_checked: points.len() * group.len(),
        violations,
    })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SeparationFailure {
    pub trial: u64,
    pub first: Vec<String>,
    pub second: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SeparationReport {
    pub seed: u64,
    pub n: usize,
    pub degree: u32,
    pub variant: String,
    pub trials: u64,
    /// Pairs certified to lie on different orbits.
    pub off_orbit: u64,
    /// Off-orbit pairs whose fingerprints differ.
    pub distinguished: u64,
    /// Off-orbit pairs with equal fingerprints where a flag was raised.
    pub flagged_collisions: u64,
    /// Points (of `2 * trials`) carrying at least one genericity flag.
    pub flagged_points: u64,
    /// Blocks named by any flag, sorted.
    pub singular_blocks: Vec<String>,
    /// Flag-free points where reconstruction did not return the point.
    pub reconstruction_mismatches: u64,
    /// Points where reconstruction refused (singular block).
    pub reconstruction_refused: u64,
    /// Off-orbit pairs with equal fingerprints and no flag.
    pub failures: Vec<SeparationFailure>,
}

struct TrialOutcome {
    off_orbit: bool,
    distinguished: bool,
    flagged_collision: bool,
    failure: Option<SeparationFailure>,
    flagged_points: u64,
    blocks: Vec<String>,
    mismatches: u64,
    refused: u64,
}

fn flag_block(f: &GenericityFlag) -> Option<String> {
    match f {
        GenericityFlag::NodeCollision { block, .. } | GenericityFlag::VanishingD { block, .. } => Some(block.clone()),
        GenericityFlag::RepeatedEigenvalues { .. } => None,
    }
}

fn run_trial(shape: Shape, seed: u64, trial: u64, variant: InvariantVariant) -> Result<TrialOutcome> {
    let mut rng = trial_rng(seed, trial);
    let a = random_point(shape, &mut rng);
    let b = random_point(shape, &mut rng);
    let off_orbit = same_orbit_bruteforce(&a, &b)?.is_none();
    let fa = fingerprint_exact(&a, variant);
    let fb = fingerprint_exact(&b, variant);
    let collide = fa.values_eq(&fb);
    let flagged = !fa.is_generic() || !fb.is_generic();
    let mut outcome = TrialOutcome {
        off_orbit,
        distinguished: off_orbit && !collide,
        flagged_collision: off_orbit && collide && flagged,
        failure: (off_orbit && collide && !flagged).then(|| SeparationFailure { trial, first: point_strings(&a), second: point_strings(&b) }),
        flagged_points: 0,
        blocks: Vec::new(),
        mismatches: 0,
        refused: 0,
    };
    for (c, fp) in [(&a, &fa), (&b, &fb)] {
        if !fp.is_generic() {
            outcome.flagged_points += 1;
            outcome.blocks.extend(fp.flags.iter().filter_map(flag_block));
        }
        match reconstruct(fp, c.pair_values()) {
            Ok(back) if fp.is_generic() && &back != c => outcome.mismatches += 1,
            Ok(_) => {}
            Err(_) => outcome.refused += 1,
        }
    }
    Ok(outcome)
}

/// Draws `trials` independent pairs of random points and checks that
/// fingerprints differ whenever brute force certifies different orbits.
pub fn separation_experiment(shape: Shape, trials: u64, seed: u64, variant: InvariantVariant) -> Result<SeparationReport> {
    guard_sweep(shape.n())?;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(shape, seed, t, variant))
        .collect::<Result<Vec<_>>>()?;
    let mut report = SeparationReport {
        seed,
        n: shape.n(),
        degree: shape.degree(),
        variant: variant.tag().into(),
        trials,
        off_orbit: 0,
        distinguished: 0,
        flagged_collisions: 0,
        flagged_points: 0,
        singular_blocks: Vec::new(),
        reconstruction_mismatches: 0,
        reconstruction_refused: 0,
        failures: Vec::new(),
    };
    let mut blocks = BTreeSet::new();
    for o in outcomes {
        report.off_orbit += o.off_orbit as u64;
        report.distinguished += o.distinguished as u64;
        report.flagged_collisions += o.flagged_collision as u64;
        report.flagged_points += o.flagged_points;
        report.reconstruction_mismatches += o.mismatches;
        report.reconstruction_refused += o.refused;
        report.failures.extend(o.failure);
        blocks.extend(o.blocks);
    }
    report.singular_blocks = blocks.into_iter().collect();
    Ok(report)
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphSpec {
    /// Edges are 0-based and stored as `(min, max)`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) out of range for {n} vertices", a + 1, b + 1)));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", a + 1)));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", a + 1, b + 1)));
            }
        }
        Ok(GraphSpec { n, edges: set })
    }

    /// `vertices: n` header followed by 1-based `i j` lines; `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: idx + 1, message };
            if let Some(rest) = line.strip_prefix("vertices:") {
                if n.is_some() {
                    return Err(err("duplicate `vertices:` header".into()));
                }
                n = Some(rest.trim().parse::<usize>().map_err(|_| err(format!("bad vertex count {:?}", rest.trim())))?);
                continue;
            }
            if n.is_none() {
                return Err(err("expected `vertices:` header first".into()));
            }
            let ends: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(|| err(format!("bad vertex {t:?}"))))
                .collect::<Result<_>>()?;
            match ends.as_slice() {
                [a, b] => edges.push((a - 1, b - 1)),
                _ => return Err(err(format!("expected two vertices, found {}", ends.len()))),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, message: "missing `vertices:` header".into() })?;
        GraphSpec::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.n);
        for (a, b) in &self.edges {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }

    pub fn complete_bipartite_3_3() -> Self {
        GraphSpec::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).expect("valid graph")
    }

    /// Two triangles joined by a perfect matching.
    pub fn triangular_prism() -> Self {
        GraphSpec::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).expect("valid graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }
}

/// `c_ij = 1` on edges and `0` elsewhere; all other coordinates zero.
pub fn graph_point(g: &GraphSpec, degree: u32) -> Result<SliceCoordinates<Rational>> {
    let layout = SliceLayout::cached(Shape::new(g.n(), degree)?);
    let pair = layout
        .pairs()
        .iter()
        .map(|&(i, j)| Rational::from_i64(g.has_edge(i, j) as i64))
        .collect();
    SliceCoordinates::new(layout.clone(), vec![Rational::from_i64(0); layout.n()], pair, vec![Rational::from_i64(0); layout.mu_indices().len()])
}

/// A vertex relabeling mapping `a` onto `b`, by exhaustive search.
pub fn isomorphism_bruteforce(a: &GraphSpec, b: &GraphSpec) -> Result<(Option<Vec<usize>>, usize)> {
    if a.n() > 8 {
        return Err(Error::GroupTooLarge { n: a.n(), limit: 8 });
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok((None, 0));
    }
    let mut checked = 0;
    for p in permutations(a.n()) {
        checked += 1;
        if a.edges().all(|&(i, j)| b.has_edge(p[i], p[j])) {
            return Ok((Some(p), checked));
        }
    }
    Ok((None, checked))
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct GraphValues {
    pub name: String,
    pub edges: usize,
    /// `p_1..p_15`, `q_2..q_6`, `z`.
    pub labels: Vec<String>,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct GraphDemoReport {
    pub graphs: Vec<GraphValues>,
    pub w1_values_equal: bool,
    pub permutations_checked: usize,
    pub isomorphic: bool,
    pub summary: String,
}

fn graph_values(name: &str, g: &GraphSpec) -> Result<GraphValues> {
    let c = graph_point(g, 4)?;
    let fp: Fingerprint<Rational> = fingerprint_exact(&c, InvariantVariant::default());
    let labels = fp.labels()[..fp.q.len()].to_vec();
    Ok(GraphValues { name: name.into(), edges: g.edge_count(), labels, values: w1_block(&c).iter().map(|v| v.to_string()).collect() })
}

/// Two 3-regular graphs on six vertices that the `W_1` generators cannot
/// tell apart although they are not isomorphic.
pub fn graph_demo() -> Result<GraphDemoReport> {
    let (k33, prism) = (GraphSpec::complete_bipartite_3_3(), GraphSpec::triangular_prism());
    let graphs = vec![graph_values("K3,3", &k33)?, graph_values("triangular prism", &prism)?];
    let w1_values_equal = graphs[0].values == graphs[1].values;
    let (iso, permutations_checked) = isomorphism_bruteforce(&k33, &prism)?;
    let isomorphic = iso.is_some();
    let summary = format!(
        "W1 generator values {} on K3,3 and the triangular prism; brute force over {} vertex permutations {}",
        if w1_values_equal { "agree" } else { "differ" },
        permutations_checked,
        if isomorphic { "found an isomorphism" } else { "finds no isomorphism" }
    );
    Ok(GraphDemoReport { graphs, w1_values_equal, permutations_checked, isomorphic, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::SliceBasis;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn sp(sigma: &[usize], tau: &[i8]) -> SignedPermutation {
        SignedPermutation::new(sigma.to_vec(), tau.to_vec()).unwrap()
    }

    #[test]
    fn group_sizes_and_axioms() {
        assert_eq!(enumerate_group(1).unwrap().len(), 2);
        assert_eq!(enumerate_group(3).unwrap().len(), 48);
        assert_eq!(enumerate_group(4).unwrap().len(), 384);
        assert_eq!(enumerate_group(7), Err(Error::GroupTooLarge { n: 7, limit: GROUP_LIMIT }));
        for n in 1..=3 {
            let group = enumerate_group(n).unwrap();
            assert_eq!(group[0], SignedPermutation::identity(n));
            let set: std::collections::HashSet<_> = group.iter().cloned().collect();
            assert_eq!(set.len(), group.len());
            for g in &group {
                assert!(set.contains(&g.inverse()));
                assert_eq!(g.compose(&g.inverse()), SignedPermutation::identity(n));
                for h in group.iter().step_by(5) {
                    assert!(set.contains(&g.compose(h)));
                    let prod = g.to_matrix().compose(&h.to_matrix());
                    assert_eq!(prod, g.compose(h).to_matrix());
                }
            }
        }
        assert!(SignedPermutation::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(SignedPermutation::new(vec![0, 1], vec![1, 2]).is_err());
    }

    #[test]
    fn act_form_examples() {
        let f = Form::from_integers(2, 4, &[(1, &[3, 1])]).unwrap();
        assert_eq!(act_form(&sp(&[1, 0], &[1, 1]), &f), Form::from_integers(2, 4, &[(1, &[1, 3])]).unwrap());
        assert_eq!(act_form(&sp(&[0, 1], &[-1, 1]), &f), f.neg());
        // agrees with the orthogonal substitution by the matrix
        let mut rng = trial_rng(1, 0);
        let g = sp(&[2, 0, 1], &[-1, 1, -1]);
        let s = SliceBasis::cached(Shape::new(3, 4).unwrap()).combine(&random_point(Shape::new(3, 4).unwrap(), &mut rng));
        let via_matrix = s.to_float().apply_orthogonal(&g.to_matrix()).unwrap();
        assert!(act_form(&g, &s).to_float().max_abs_diff(&via_matrix) < 1e-9);
    }

    #[test]
    fn act_coords_examples() {
        let shape = Shape::new(3, 4).unwrap();
        let mut rng = trial_rng(2, 0);
        let c = random_point(shape, &mut rng);
        assert_eq!(act_coords(&SignedPermutation::identity(3), &c), c);
        let flipped = act_coords(&sp(&[0, 1, 2], &[-1, 1, 1]), &c);
        assert_eq!(flipped.c_pair(0, 1), -c.c_pair(0, 1));
        assert_eq!(flipped.c_pair(0, 2), -c.c_pair(0, 2));
        assert_eq!(flipped.c_pair(1, 2), c.c_pair(1, 2));
        for mu in c.layout().mu_indices() {
            let sign = if mu.get(0) % 2 == 1 { -1 } else { 1 };
            assert_eq!(flipped.c_mu(mu).unwrap(), &(c.c_mu(mu).unwrap() * q(sign)));
        }
    }

    #[test]
    fn act_coords_matches_act_form() {
        for (n, degree) in [(3, 4), (3, 6), (4, 4)] {
            let shape = Shape::new(n, degree).unwrap();
            let basis = SliceBasis::cached(shape);
            let group = enumerate_group(n).unwrap();
            let mut rng = trial_rng(3, n as u64);
            for k in 0..10 {
                let c = random_point(shape, &mut rng);
                let s = basis.combine(&c);
                let g = &group[(k * 37 + 5) % group.len()];
                assert_eq!(basis.coordinates(&act_form(g, &s), 0.0).unwrap(), act_coords(g, &c), "g = {g}");
            }
        }
    }

    #[test]
    fn orbit_search() {
        let shape = Shape::new(3, 4).unwrap();
        let mut rng = trial_rng(4, 0);
        let c = random_point(shape, &mut rng);
        let g = sp(&[1, 2, 0], &[1, -1, 1]);
        let image = act_coords(&g, &c);
        let found = same_orbit_bruteforce(&c, &image).unwrap().unwrap();
        assert_eq!(act_coords(&found, &c), image);
        let zero = SliceCoordinates::<Rational>::zero(c.layout().clone());
        assert_eq!(same_orbit_bruteforce(&zero, &zero).unwrap(), Some(SignedPermutation::identity(3)));
        let other = random_point(shape, &mut rng);
        assert_eq!(same_orbit_bruteforce(&c, &other).unwrap(), None);
    }

    #[test]
    fn graphs() {
        let k33 = GraphSpec::complete_bipartite_3_3();
        assert_eq!(k33.edge_count(), 9);
        let c = graph_point(&k33, 4).unwrap();
        assert_eq!(c.pair_values().iter().filter(|v| **v == q(1)).count(), 9);
        assert_eq!(c.pair_values().len(), 15);
        let tri = GraphSpec::parse("vertices: 3\n1 2\n2 3 # edge\n1 3\n").unwrap();
        assert!(graph_point(&tri, 4).unwrap().pair_values().iter().all(|v| *v == q(1)));
        assert_eq!(GraphSpec::parse(&tri.to_text()).unwrap(), tri);
        assert!(matches!(GraphSpec::parse("vertices: 3\n1 1\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(GraphSpec::parse("vertices: 3\n1 2\n2 1\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(GraphSpec::parse("1 2\n"), Err(Error::Parse { line: 1, .. })));
        let empty = GraphSpec::new(4, []).unwrap();
        assert!(graph_point(&empty, 4).unwrap().flatten().iter().all(|v| *v == q(0)));
        let (iso, _) = isomorphism_bruteforce(&k33, &k33).unwrap();
        assert!(iso.is_some());
    }
}
