//! Exact rational linear algebra: rank, solve, nullspace.
//!
//! Rows are first scaled to integers, then reduced by fraction-free (Bareiss)
//! elimination over BigInt, which keeps intermediate entries polynomially
//! bounded instead of letting rational gcd work blow up. Back-substitution
//! happens in rationals. Pivoting is deterministic: columns are scanned left
//! to right and the first row with a nonzero entry wins, so repeated runs
//! produce identical representatives. Underdetermined solves set every free
//! variable to zero.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Rat;

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: alloc::vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rat>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self.get(i, j).is_zero() && !x[j].is_zero() {
                        acc += self.get(i, j) * &x[j];
                    }
                }
                acc
            })
            .collect()
    }
}

/// Integer echelon form produced by Bareiss elimination.
struct Echelon {
    mat: Vec<Vec<BigInt>>,
    /// (row, col) of each pivot, in order.
    pivots: Vec<(usize, usize)>,
}

/// Clear denominators row by row: multiply each row by the lcm of its
/// denominators. Solution sets are unchanged.
fn to_integer_rows(a: &QMat, rhs: Option<&[Rat]>) -> Vec<Vec<BigInt>> {
    let extra = usize::from(rhs.is_some());
    let mut rows = Vec::with_capacity(a.rows);
    for i in 0..a.rows {
        let mut lcm = BigInt::one();
        for j in 0..a.cols {
            lcm = lcm.lcm(a.get(i, j).denom());
        }
        if let Some(b) = rhs {
            lcm = lcm.lcm(b[i].denom());
        }
        let mut row = Vec::with_capacity(a.cols + extra);
        for j in 0..a.cols {
            let r = a.get(i, j);
            row.push(r.numer() * (&lcm / r.denom()));
        }
        if let Some(b) = rhs {
            row.push(b[i].numer() * (&lcm / b[i].denom()));
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free elimination. `lock_cols` marks how many trailing columns are
/// augmented and therefore never searched for pivots.
fn bareiss(mut mat: Vec<Vec<BigInt>>, lock_cols: usize) -> Echelon {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    // A matrix with no rows has no stored columns either; saturate so the
    // degenerate case falls through to an empty pivot list.
    let pivot_cols = cols.saturating_sub(lock_cols);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..pivot_cols {
        if r >= rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &mat[r][c] * &mat[i][j] - &mat[i][c] * &mat[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                mat[i][j] = q;
            }
            mat[i][c] = BigInt::zero();
        }
        prev = mat[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    Echelon { mat, pivots }
}

pub fn rank(a: &QMat) -> usize {
    bareiss(to_integer_rows(a, None), 0).pivots.len()
}

/// Back-substitute one solution with the given values preassigned to the free
/// columns. `rhs_col` is the augmented column index.
fn back_substitute(e: &Echelon, free_values: &[(usize, Rat)], rhs_col: usize) -> Vec<Rat> {
    let n = rhs_col;
    let mut x = alloc::vec![Rat::zero(); n];
    for &(c, ref v) in free_values {
        x[c] = v.clone();
    }
    for &(r, c) in e.pivots.iter().rev() {
        let mut acc = Rat::from(e.mat[r][rhs_col].clone());
        for j in c + 1..n {
            if !e.mat[r][j].is_zero() && !x[j].is_zero() {
                acc -= Rat::from(e.mat[r][j].clone()) * &x[j];
            }
        }
        x[c] = acc / Rat::from(e.mat[r][c].clone());
    }
    x
}

/// Solve A x = b exactly. Returns None when inconsistent. Underdetermined
/// systems get the representative with all free variables zero.
pub fn solve(a: &QMat, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), a.rows, "rhs length");
    let e = bareiss(to_integer_rows(a, Some(b)), 1);
    let rhs_col = a.cols;
    let pivot_rows = e.pivots.len();
    for row in e.mat.iter().skip(pivot_rows) {
        if !row[rhs_col].is_zero() {
            return None;
        }
    }
    Some(back_substitute(&e, &[], rhs_col))
}

/// Basis of the right nullspace of A, one vector per free column, each with a
/// single free variable set to one. Deterministic order (ascending free column).
pub fn nullspace(a: &QMat) -> Vec<Vec<Rat>> {
    let zero_rhs = alloc::vec![Rat::zero(); a.rows];
    let e = bareiss(to_integer_rows(a, Some(&zero_rhs)), 1);
    let pivot_set: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for c in 0..a.cols {
        if pivot_set.contains(&c) {
            continue;
        }
        basis.push(back_substitute(&e, &[(c, Rat::one())], a.cols));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use proptest::prelude::*;

    /// Plain rational Gauss-Jordan, used as an independent oracle.
    fn rref(a: &QMat, b: &[Rat]) -> (Vec<Vec<Rat>>, Vec<usize>) {
        let cols = a.ncols() + 1;
        let mut m: Vec<Vec<Rat>> = (0..a.nrows())
            .map(|i| {
                let mut row: Vec<Rat> = (0..a.ncols()).map(|j| a.get(i, j).clone()).collect();
                row.push(b[i].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.ncols() {
            let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = m[r][c].clone();
            for j in 0..cols {
                m[r][j] = &m[r][j] / &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..cols {
                        m[i][j] = &m[i][j] - &f * &m[r][j];
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        (m, pivots)
    }

    fn oracle_solve(a: &QMat, b: &[Rat]) -> Option<Vec<Rat>> {
        let (m, pivots) = rref(a, b);
        for (i, row) in m.iter().enumerate() {
            if i >= pivots.len() && !row[a.ncols()].is_zero() {
                return None;
            }
        }
        let mut x = alloc::vec![Rat::zero(); a.ncols()];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = m[r][a.ncols()].clone();
        }
        Some(x)
    }

    #[test]
    fn solve_2x2() {
        // x + 2y = 5, 3x - y = 1 -> x = 1, y = 2
        let a = QMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => rat_int(1),
            (0, 1) => rat_int(2),
            (1, 0) => rat_int(3),
            (1, 1) => rat_int(-1),
            _ => unreachable!(),
        });
        let x = solve(&a, &[rat_int(5), rat_int(1)]).unwrap();
        assert_eq!(x, alloc::vec![rat_int(1), rat_int(2)]);
    }

    #[test]
    fn solve_underdetermined_sets_free_vars_to_zero() {
        // x + y + z = 3 with pivot at column 0: x = 3, y = z = 0
        let a = QMat::from_fn(1, 3, |_, _| rat_int(1));
        let x = solve(&a, &[rat_int(3)]).unwrap();
        assert_eq!(x, alloc::vec![rat_int(3), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn solve_inconsistent_returns_none() {
        // x + y = 1, x + y = 2
        let a = QMat::from_fn(2, 2, |_, _| rat_int(1));
        assert!(solve(&a, &[rat_int(1), rat_int(2)]).is_none());
    }

    #[test]
    fn solve_rational_entries() {
        // (1/2) x = 3 -> x = 6
        let a = QMat::from_fn(1, 1, |_, _| rat(1, 2));
        assert_eq!(solve(&a, &[rat_int(3)]).unwrap(), alloc::vec![rat_int(6)]);
    }

    #[test]
    fn rank_examples() {
        let a = QMat::from_fn(3, 3, |i, j| rat_int((i * 3 + j) as i64 + 1));
        assert_eq!(rank(&a), 2); // 1..9 matrix has rank 2
        let id = QMat::from_fn(3, 3, |i, j| if i == j { rat_int(1) } else { rat_int(0) });
        assert_eq!(rank(&id), 3);
        assert_eq!(rank(&QMat::zeros(2, 4)), 0);
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        // x + y + z = 0 twice: nullspace dim 2
        let a = QMat::from_fn(2, 3, |_, _| rat_int(1));
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Rat::is_zero));
        }
        // vectors are set up with one free column at 1 each
        assert_eq!(ns[0][1], rat_int(1));
        assert_eq!(ns[1][2], rat_int(1));
    }

    #[test]
    fn nullspace_of_full_rank_is_empty() {
        let a = QMat::from_fn(2, 2, |i, j| if i == j { rat_int(2) } else { rat_int(1) });
        assert!(nullspace(&a).is_empty());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_mat(rows: usize, cols: usize) -> impl Strategy<Value = QMat> {
        proptest::collection::vec(arb_rat(), rows * cols).prop_map(move |v| {
            let mut k = 0;
            QMat::from_fn(rows, cols, |_, _| {
                let x = v[k].clone();
                k += 1;
                x
            })
        })
    }

    proptest! {
        #[test]
        fn solve_agrees_with_oracle(a in arb_mat(4, 3), b in proptest::collection::vec(arb_rat(), 4)) {
            let ours = solve(&a, &b);
            let oracle = oracle_solve(&a, &b);
            prop_assert_eq!(ours.is_some(), oracle.is_some());
            if let Some(x) = ours {
                // both are valid solutions, and both use free-vars-zero with
                // the same pivot order, so they must be identical
                prop_assert_eq!(&a.mul_vec(&x), &b);
                prop_assert_eq!(x, oracle.unwrap());
            }
        }

        #[test]
        fn rank_plus_nullity_is_cols(a in arb_mat(3, 5)) {
            let r = rank(&a);
            let ns = nullspace(&a);
            prop_assert_eq!(r + ns.len(), 5);
            for v in &ns {
                prop_assert!(a.mul_vec(v).iter().all(Rat::is_zero));
            }
        }

        #[test]
        fn solve_square_then_verify(a in arb_mat(3, 3), b in proptest::collection::vec(arb_rat(), 3)) {
            if let Some(x) = solve(&a, &b) {
                prop_assert_eq!(a.mul_vec(&x), b);
            }
        }
    }
}
