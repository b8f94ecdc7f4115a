//! Multi-indices, multinomials and integer partitions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically with `x_1 > x_2 > ... > x_n`, where the
/// larger monomial sorts *first*: `(2,0) < (1,1) < (0,2)` in `Ord`, so sorted
/// containers iterate in canonical output order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `ε_i` scaled by `power`.
    pub fn unit(n: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; n];
        e[i] = power;
        MultiIndex(e)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Entry-wise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Divides every entry by 2, `None` unless all entries are even.
    pub fn halve(&self) -> Option<MultiIndex> {
        self.0
            .iter()
            .map(|&a| (a % 2 == 0).then_some(a / 2))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn odd_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] % 2 == 1).collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&a| a != 0).count()
    }

    /// Nonzero entries sorted weakly decreasing.
    pub fn partition(&self) -> IntegerPartition {
        IntegerPartition::new(self.0.iter().copied().filter(|&a| a != 0).collect())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
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
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

fn factorial(k: u32) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `m! / prod(mu_i!)`.
pub fn multinomial(m: u32, mu: &MultiIndex) -> Result<BigInt> {
    if mu.degree() != m {
        return Err(Error::MultinomialArity { expected: m, got: mu.degree() });
    }
    let denom = mu.entries().iter().fold(BigInt::one(), |acc, &e| acc * factorial(e));
    Ok(factorial(m) / denom)
}

/// All exponent vectors of length `n` summing to `degree`, in canonical
/// (graded-lex, `x_1` largest) order.
pub fn enumerate_multi_indices(n: usize, degree: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            rec(n, remaining - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if degree == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(n, degree, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition(Vec<u32>);

impl IntegerPartition {
    /// Sorts `parts` into weakly decreasing order and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl std::str::FromStr for IntegerPartition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.split('+')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad part {p:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(IntegerPartition::new)
    }
}

/// Partitions of `weight` with length in `min_len..=max_len`, minus
/// `exclusions`, in reverse lexicographic order (`2+2` before `2+1+1`).
pub fn enumerate_partitions(
    weight: u32,
    min_len: usize,
    max_len: usize,
    exclusions: &[IntegerPartition],
) -> Vec<IntegerPartition> {
    fn rec(remaining: u32, cap: u32, parts: &mut Vec<u32>, max_len: usize, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(parts.clone());
            return;
        }
        if parts.len() == max_len {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            parts.push(p);
            rec(remaining - p, p, parts, max_len, out);
            parts.pop();
        }
    }
    let mut raw = Vec::new();
    rec(weight, weight, &mut Vec::new(), max_len, &mut raw);
    raw.into_iter()
        .filter(|p| p.len() >= min_len)
        .map(IntegerPartition)
        .filter(|p| !exclusions.contains(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(4, &mi(&[2, 2, 0])).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(6, &mi(&[6, 0, 0])).unwrap(), BigInt::from(1));
        // 720 / (6 * 2 * 1)
        assert_eq!(multinomial(6, &mi(&[3, 2, 1])).unwrap(), BigInt::from(60));
        assert_eq!(
            multinomial(5, &mi(&[2, 2, 0])),
            Err(Error::MultinomialArity { expected: 5, got: 4 })
        );
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(enumerate_multi_indices(2, 2), vec![mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]);
        assert_eq!(enumerate_multi_indices(3, 4).len(), 15);
        assert_eq!(enumerate_multi_indices(1, 5), vec![mi(&[5])]);
        for n in 1..=5usize {
            for deg in 0..=8u32 {
                let all = enumerate_multi_indices(n, deg);
                assert_eq!(all.len() as u64, binomial(n as u64 + deg as u64 - 1, deg as u64));
                assert!(all.windows(2).all(|w| w[0] < w[1]), "not sorted for n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn sub_and_halve_guard_domain() {
        assert_eq!(mi(&[2, 1]).checked_sub(&mi(&[1, 1])), Some(mi(&[1, 0])));
        assert_eq!(mi(&[0, 1]).checked_sub(&mi(&[1, 0])), None);
        assert_eq!(mi(&[4, 2, 0]).halve(), Some(mi(&[2, 1, 0])));
        assert_eq!(mi(&[3, 1]).halve(), None);
    }

    #[test]
    fn partitions() {
        let p = |v: &[u32]| IntegerPartition::new(v.to_vec());
        let ex = [p(&[3, 1])];
        assert_eq!(enumerate_partitions(4, 2, 3, &ex), vec![p(&[2, 2]), p(&[2, 1, 1])]);
        assert_eq!(enumerate_partitions(4, 2, 2, &ex), vec![p(&[2, 2])]);
        assert_eq!(enumerate_partitions(2, 2, 3, &[]), vec![p(&[1, 1])]);
        // p(6) = 11
        assert_eq!(enumerate_partitions(6, 1, 6, &[]).len(), 11);
        assert_eq!("2+1+1".parse::<IntegerPartition>().unwrap(), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 2, 1]).to_string(), "2+1+1");
    }
}
