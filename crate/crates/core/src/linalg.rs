//! Dense linear algebra: exact fraction-free solves, pivoted float solves,
//! and orthogonal matrices.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Tolerance on `|g^T g - I|_inf` for accepting a matrix as orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Solves `a x = b` exactly with fraction-free Gauss-Jordan elimination.
///
/// Each row of `[a | b]` is first scaled to integers; elimination then runs
/// entirely over `BigInt`, every division being exact. Pivots are chosen by
/// largest magnitude within the column.
pub fn solve_fraction_free(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side row count");
    let rhs_cols = b.first().map_or(0, Vec::len);
    let width = n + rhs_cols;

    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            assert_eq!(ra.len(), n, "matrix must be square");
            let lcm = ra
                .iter()
                .chain(rb)
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            ra.iter()
                .chain(rb)
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&r| !m[r][k].is_zero())
            .max_by(|&r, &s| m[r][k].abs().cmp(&m[s][k].abs()).then(s.cmp(&r)))?;
        m.swap(k, pivot);
        let (head, tail) = m.split_at_mut(k);
        let (pivot_row, tail) = tail.split_first_mut().expect("row k exists");
        let pkk = pivot_row[k].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let rk = std::mem::take(&mut row[k]);
            for j in 0..width {
                if j == k {
                    continue;
                }
                if rk.is_zero() && row[j].is_zero() {
                    continue;
                }
                let num = &pkk * &row[j] - &rk * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free division must be exact");
                row[j] = q;
            }
        }
        prev = pkk;
    }
    // Every diagonal entry now equals the final pivot (the determinant up to
    // sign) and the right-hand block holds det * x.
    let det = prev;
    Some(
        (0..n)
            .map(|i| {
                (n..width)
                    .map(|j| Rational::new(m[i][j].clone(), det.clone()))
                    .collect()
            })
            .collect(),
    )
}

/// Gaussian elimination with partial pivoting in double precision.
pub fn solve_partial_pivot(a: &[Vec<f64>], b: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let rhs_cols = b.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).copied().collect())
        .collect();
    let scale = m.iter().flat_map(|r| r[..n].iter()).fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 && n > 0 {
        return None;
    }
    for k in 0..n {
        let pivot = (k..n).max_by(|&r, &s| m[r][k].abs().total_cmp(&m[s][k].abs()))?;
        if m[pivot][k].abs() <= scale * f64::EPSILON * n as f64 {
            return None;
        }
        m.swap(k, pivot);
        for i in k + 1..n {
            let factor = m[i][k] / m[k][k];
            if factor == 0.0 {
                continue;
            }
            for j in k..n + rhs_cols {
                m[i][j] -= factor * m[k][j];
            }
        }
    }
    let mut x = vec![vec![0.0; rhs_cols]; n];
    for c in 0..rhs_cols {
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j][c]).sum();
            x[i][c] = (m[i][n + c] - s) / m[i][i];
        }
    }
    Some(x)
}

/// Exact inverse, `None` if singular.
pub fn invert_exact(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let identity: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    solve_fraction_free(a, &identity)
}

/// A real orthogonal matrix, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMatrix(DMatrix<f64>);

impl OrthogonalMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotOrthogonal { deviation: f64::INFINITY });
        }
        let deviation = orthogonality_defect(&m);
        if deviation.is_nan() || deviation >= ORTHOGONALITY_TOL {
            return Err(Error::NotOrthogonal { deviation });
        }
        Ok(OrthogonalMatrix(m))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotOrthogonal { deviation: f64::INFINITY });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(n: usize) -> Self {
        OrthogonalMatrix(DMatrix::identity(n, n))
    }

    /// Rotation by `angle` in the `(i, j)` coordinate plane, taking `e_i`
    /// towards `e_j`.
    pub fn rotation(n: usize, i: usize, j: usize, angle: f64) -> Self {
        let mut m = DMatrix::identity(n, n);
        let (s, c) = angle.sin_cos();
        m[(i, i)] = c;
        m[(j, j)] = c;
        m[(j, i)] = s;
        m[(i, j)] = -s;
        OrthogonalMatrix(m)
    }

    /// Haar-distributed random orthogonal matrix (QR of a Gaussian matrix with
    /// the sign of `R`'s diagonal folded into `Q`).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let gaussian = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let qr = gaussian.qr();
        let r = qr.r();
        let mut q = qr.q();
        for j in 0..n {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        OrthogonalMatrix(q)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn transpose(&self) -> Self {
        OrthogonalMatrix(self.0.transpose())
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &OrthogonalMatrix) -> Self {
        OrthogonalMatrix(&self.0 * &other.0)
    }
}

pub fn orthogonality_defect(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let gram = m.transpose() * m;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (gram[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Textbook Gaussian elimination over rationals; independent of the
    /// fraction-free path.
    fn naive_solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
        let n = a.len();
        let mut m: Vec<Vec<Rational>> =
            a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
        for k in 0..n {
            let p = (k..n).find(|&r| !m[r][k].is_zero())?;
            m.swap(k, p);
            for i in 0..n {
                if i != k {
                    let f = &m[i][k] / &m[k][k];
                    for j in 0..=n {
                        let v = &m[k][j] * &f;
                        m[i][j] -= v;
                    }
                }
            }
        }
        Some((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
    }

    #[test]
    fn fraction_free_matches_naive_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in 1..=7 {
            for _ in 0..20 {
                let a: Vec<Vec<Rational>> = (0..size)
                    .map(|_| (0..size).map(|_| q(rng.random_range(-9..=9), rng.random_range(1..=5))).collect())
                    .collect();
                let b: Vec<Rational> = (0..size).map(|_| q(rng.random_range(-9..=9), rng.random_range(1..=5))).collect();
                let bm: Vec<Vec<Rational>> = b.iter().map(|x| vec![x.clone()]).collect();
                let fast = solve_fraction_free(&a, &bm).map(|x| x.into_iter().map(|r| r[0].clone()).collect::<Vec<_>>());
                assert_eq!(fast, naive_solve(&a, &b));
            }
        }
    }

    #[test]
    fn singular_systems_are_detected() {
        let a = vec![vec![q(1, 1), q(2, 1)], vec![q(1, 2), q(1, 1)]];
        assert!(solve_fraction_free(&a, &[vec![q(1, 1)], vec![q(0, 1)]]).is_none());
        let af = vec![vec![1.0, 2.0], vec![0.5, 1.0]];
        assert!(solve_partial_pivot(&af, &[vec![1.0], vec![0.0]]).is_none());
    }

    #[test]
    fn exact_inverse() {
        let a = vec![vec![q(2, 1), q(1, 3)], vec![q(-1, 1), q(5, 2)]];
        let inv = invert_exact(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let s: Rational = (0..2).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { q(1, 1) } else { q(0, 1) });
            }
        }
    }

    #[test]
    fn float_solve() {
        let a = vec![vec![0.0, 2.0], vec![3.0, 1.0]];
        let x = solve_partial_pivot(&a, &[vec![4.0], vec![5.0]]).unwrap();
        assert!((x[0][0] - 1.0).abs() < 1e-15 && (x[1][0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonality_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..6 {
            let g = OrthogonalMatrix::random(n, &mut rng);
            assert!(orthogonality_defect(g.matrix()) < 1e-12);
        }
        assert!(matches!(
            OrthogonalMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]),
            Err(Error::NotOrthogonal { .. })
        ));
        let r = OrthogonalMatrix::rotation(2, 0, 1, std::f64::consts::FRAC_PI_2);
        assert!((r.get(1, 0) - 1.0).abs() < 1e-15);
    }
}
