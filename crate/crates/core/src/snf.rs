//! Smith normal form with unimodular transforms.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{Int, Matrix};

/// `u * m * v == d`, with `u_inv = u^{-1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

/// Computes the Smith normal form of `m`.
pub fn smith_normal_form(m: &Matrix) -> Smith {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = Matrix::identity(rows);
    let mut u_inv = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);

    // row op `row[dst] += k * row[src]` on d and u, inverse column op on u_inv
    let row_add = |d: &mut Matrix, u: &mut Matrix, ui: &mut Matrix, dst, src, k: &Int| {
        d.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        ui.add_col_multiple(src, dst, &(-k));
    };
    let row_swap = |d: &mut Matrix, u: &mut Matrix, ui: &mut Matrix, a, b| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    };

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if x.abs() >= d.get(bi, bj).abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Smith { u, u_inv, d, v };
            };
            row_swap(&mut d, &mut u, &mut u_inv, t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                row_add(&mut d, &mut u, &mut u_inv, i, t, &(-q));
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                let nq = -q;
                d.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let p = d.get(t, t).clone();
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !d.get(i, j).is_multiple_of(&p) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => row_add(&mut d, &mut u, &mut u_inv, t, i, &Int::one()),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    Smith { u, u_inv, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(m.rows()));
        assert_eq!(s.u.determinant().abs(), Int::one());
        assert_eq!(s.v.determinant().abs(), Int::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&Matrix::identity(2));
        assert_eq!(s.d, Matrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&Matrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.diagonal(), alloc::vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&Matrix::zeros(2, 2));
        assert!(s.d.is_zero());
    }

    #[test]
    fn non_square_shapes() {
        check(&Matrix::from_i64(2, 3, &[6, 4, 10, 9, 15, 3]));
        check(&Matrix::from_i64(3, 1, &[4, 6, 10]));
        check(&Matrix::zeros(0, 3));
    }
}
