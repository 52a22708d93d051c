//! Fraction-free (Bareiss) elimination over the rationals: rank, right
//! kernels, linear solves, and coordinates in a kernel basis.
//!
//! Pivot rule: scan columns left to right and take the first row (lowest
//! index at or below the current row) with a nonzero entry. The result is
//! deterministic for a given input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{integer_row, Scalar, Q};

/// Row echelon form over the integers produced by Bareiss elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows only, in pivot order.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn echelon(m: &Matrix<Q>) -> Echelon {
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| integer_row(m.row(i))).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = piv * &row[j] - &lead * &pivot_row[j];
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = quo;
            }
            row[c] = BigInt::zero();
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, cols }
}

/// Rank over the rational field.
pub fn rank(m: &Matrix<Q>) -> usize {
    echelon(m).rank()
}

/// Converts a matrix over any scalar ring to a rational one; rejects
/// truncated-polynomial entries.
pub fn rational_matrix<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<Q>> {
    if S::zero().coefficients().len() != 1 {
        return Err(Error::NonRational);
    }
    Ok(m.map(|x| x.coefficients().swap_remove(0)))
}

pub fn rank_of<S: Scalar>(m: &Matrix<S>) -> Result<usize> {
    Ok(rank(&rational_matrix(m)?))
}

/// Back substitution on an echelon form: the unique solution with the
/// given values on the free columns, against right-hand side `rhs`
/// (one entry per echelon row).
fn back_substitute(e: &Echelon, free_values: &[(usize, Q)], rhs: Option<&[BigInt]>) -> Vec<Q> {
    let mut x = vec![Q::zero(); e.cols];
    for (c, v) in free_values {
        x[*c] = v.clone();
    }
    for (r, &pc) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[r];
        let mut acc = match rhs {
            Some(b) => Q::from_integer(b[r].clone()),
            None => Q::zero(),
        };
        for (j, xj) in x.iter().enumerate().skip(pc + 1) {
            if !row[j].is_zero() && !xj.is_zero() {
                acc -= Q::from_integer(row[j].clone()) * xj;
            }
        }
        x[pc] = acc / Q::from_integer(row[pc].clone());
    }
    x
}

fn free_columns(e: &Echelon) -> Vec<usize> {
    let mut is_pivot = vec![false; e.cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..e.cols).filter(|&c| !is_pivot[c]).collect()
}

/// Basis of the right null space. Vector `k` has a 1 in the `k`-th free
/// column and 0 in every other free column.
pub fn kernel_basis(m: &Matrix<Q>) -> Vec<Vec<Q>> {
    let e = echelon(m);
    free_columns(&e)
        .into_iter()
        .map(|f| back_substitute(&e, &[(f, Q::one())], None))
        .collect()
}

/// A particular solution and a kernel basis.
pub type Solution = (Vec<Q>, Vec<Vec<Q>>);

/// One solution of `m x = b` together with a kernel basis, or `None` when
/// the system is inconsistent.
pub fn solve(m: &Matrix<Q>, b: &[Q]) -> Result<Option<Solution>> {
    if b.len() != m.rows() {
        return Err(Error::Shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let aug = Matrix::from_fn(
        m.rows(),
        n + 1,
        |i, j| {
            if j < n {
                m.get(i, j).clone()
            } else {
                b[i].clone()
            }
        },
    );
    let e = echelon(&aug);
    if e.pivots.last() == Some(&n) {
        return Ok(None);
    }
    // Drop the augmented column to recover the echelon form of `m`.
    let rhs: Vec<BigInt> = e.rows.iter().map(|r| r[n].clone()).collect();
    let core = Echelon {
        rows: e.rows.iter().map(|r| r[..n].to_vec()).collect(),
        pivots: e.pivots.clone(),
        cols: n,
    };
    let particular = back_substitute(&core, &[], Some(&rhs));
    let kernel = free_columns(&core)
        .into_iter()
        .map(|f| back_substitute(&core, &[(f, Q::one())], None))
        .collect();
    Ok(Some((particular, kernel)))
}

/// Exact inverse of a square matrix.
pub fn inverse(m: &Matrix<Q>) -> Result<Matrix<Q>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "cannot invert a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if rank(m) < n {
        return Err(Error::NotInvertible);
    }
    let cols = (0..n)
        .map(|j| {
            let e: Vec<Q> = crate::matrix::unit(n, j);
            solve(m, &e).map(|s| s.expect("full rank").0)
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(n, &cols)
}

/// A subspace of `Q^n` given by the kernel basis of some matrix. The basis
/// is in reduced form on `free`, so coordinates are read off directly.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<Q>>,
    pub free: Vec<usize>,
}

impl Subspace {
    pub fn kernel_of(m: &Matrix<Q>) -> Subspace {
        let e = echelon(m);
        let free = free_columns(&e);
        let basis = free
            .iter()
            .map(|&f| back_substitute(&e, &[(f, Q::one())], None))
            .collect();
        Subspace {
            ambient: m.cols(),
            basis,
            free,
        }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: (0..n).map(|i| crate::matrix::unit(n, i)).collect(),
            free: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, coords: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            crate::matrix::axpy(&mut v, c, b);
        }
        v
    }

    /// Coordinates of `v` in the basis; fails if `v` is not in the span.
    pub fn coords(&self, v: &[Q]) -> Result<Vec<Q>> {
        let c: Vec<Q> = self.free.iter().map(|&f| v[f].clone()).collect();
        if self.combine(&c) != v {
            return Err(Error::Membership("vector lies outside the subspace".into()));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, q};

    fn m(rows: Vec<Vec<i64>>) -> Matrix {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(3, 5)), 0);
        assert_eq!(rank(&m(vec![vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&m(vec![vec![1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-2)];
        let (x, k) = solve(&Matrix::identity(2), &b).unwrap().unwrap();
        assert_eq!(x, b);
        assert!(k.is_empty());
        assert!(solve(&Matrix::zeros(2, 2), &[q(1), q(0)]).unwrap().is_none());
        let (x, _) = solve(&m(vec![vec![2]]), &[q(3)]).unwrap().unwrap();
        assert_eq!(x, vec![frac(3, 2)]);
        assert!(solve(&Matrix::identity(2), &[q(1)]).is_err());
    }

    #[test]
    fn truncated_entries_are_rejected() {
        let t = Matrix::<crate::scalar::Trunc<2>>::identity(2);
        assert_eq!(rank_of(&t), Err(Error::NonRational));
        assert_eq!(rank_of(&Matrix::<Q>::identity(2)), Ok(2));
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::kernel_of(&m(vec![vec![1, 1, 0]]));
        assert_eq!(s.dim(), 2);
        let v = vec![q(-2), q(2), q(5)];
        let c = s.coords(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        assert!(s.coords(&[q(1), q(0), q(0)]).is_err());
    }
}
