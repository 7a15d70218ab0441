//! Integer lattices via column Hermite normal form.
//!
//! A lattice in `Z^m` is stored by its canonical basis: the columns of a
//! matrix in column echelon form with positive pivots and off-pivot entries in
//! pivot rows reduced into `[0, pivot)`. Two lattices are equal iff their
//! bases are equal.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::{Int, Matrix};

/// Result of column echelon reduction `A * V = H`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    /// Echelon form; the first `rank` columns are nonzero.
    pub h: Matrix,
    /// Unimodular transform, present if requested.
    pub v: Option<Matrix>,
    /// Pivot row of each nonzero column, strictly increasing.
    pub pivots: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn floor_div(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

/// Column echelon (Hermite) form with an optional unimodular transform.
pub fn column_echelon(a: &Matrix, track: bool) -> ColumnEchelon {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut v = if track { Some(Matrix::identity(n)) } else { None };
    let mut pivots = Vec::new();
    let mut k = 0usize;
    for row in 0..m {
        if k == n {
            break;
        }
        loop {
            // pick the column with the smallest nonzero entry in this row
            let mut best: Option<usize> = None;
            for c in k..n {
                let x = h.get(row, c);
                if !x.is_zero() {
                    match best {
                        None => best = Some(c),
                        Some(b) if x.abs() < h.get(row, b).abs() => best = Some(c),
                        _ => {}
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(k, b);
            if let Some(v) = v.as_mut() {
                v.swap_cols(k, b);
            }
            let mut done = true;
            for c in k + 1..n {
                if h.get(row, c).is_zero() {
                    continue;
                }
                let q = floor_div(h.get(row, c), h.get(row, k));
                let nq = -q;
                h.add_col_multiple(c, k, &nq);
                if let Some(v) = v.as_mut() {
                    v.add_col_multiple(c, k, &nq);
                }
                if !h.get(row, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(row, k).is_zero() {
            continue;
        }
        if h.get(row, k).is_negative() {
            h.negate_col(k);
            if let Some(v) = v.as_mut() {
                v.negate_col(k);
            }
        }
        for i in 0..k {
            let q = floor_div(h.get(row, i), h.get(row, k));
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(i, k, &nq);
                if let Some(v) = v.as_mut() {
                    v.add_col_multiple(i, k, &nq);
                }
            }
        }
        pivots.push(row);
        k += 1;
    }
    ColumnEchelon { h, v, pivots }
}

/// Kernel of `a` as a matrix whose columns form a basis (in echelon form).
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let ce = column_echelon(a, true);
    let r = ce.rank();
    let v = ce.v.expect("transform tracked");
    let k = v.select_columns(r..a.cols());
    Lattice::from_generators(&k).basis
}

/// Some integer solution of `a * x = b`, if one exists.
pub fn solve(a: &Matrix, b: &[Int]) -> Option<Vec<Int>> {
    let ce = column_echelon(a, true);
    let z = echelon_coords(&ce.h, &ce.pivots, b)?;
    let v = ce.v.expect("transform tracked");
    let mut x = alloc::vec![Int::zero(); a.cols()];
    for (j, zj) in z.iter().enumerate() {
        if zj.is_zero() {
            continue;
        }
        for (i, xi) in x.iter_mut().enumerate() {
            let e = v.get(i, j);
            if !e.is_zero() {
                *xi += e * zj;
            }
        }
    }
    Some(x)
}

/// Coordinates of `b` in the echelon columns `h[:, ..pivots.len()]`.
fn echelon_coords(h: &Matrix, pivots: &[usize], b: &[Int]) -> Option<Vec<Int>> {
    let mut rest: Vec<Int> = b.to_vec();
    let mut coords = Vec::with_capacity(pivots.len());
    let mut next_row = 0usize;
    for (j, &p) in pivots.iter().enumerate() {
        if rest[next_row..p].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rest[p].div_rem(h.get(p, j));
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (i, x) in rest.iter_mut().enumerate().skip(p) {
                let e = h.get(i, j);
                if !e.is_zero() {
                    *x -= &q * e;
                }
            }
        }
        coords.push(q);
        next_row = p + 1;
    }
    if rest[next_row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(coords)
}

/// A sublattice of `Z^m` with a canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Matrix::zeros(dim, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Matrix::identity(dim),
            pivots: (0..dim).collect(),
        }
    }

    /// Lattice spanned by the columns of `g`.
    pub fn from_generators(g: &Matrix) -> Self {
        let ce = column_echelon(g, false);
        let r = ce.rank();
        Lattice {
            dim: g.rows(),
            basis: ce.h.select_columns(0..r),
            pivots: ce.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical basis as matrix columns.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim && (0..self.dim).all(|j| self.basis.get(j, j) == &Int::from(1))
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.dim, "vector length does not match lattice dimension");
        echelon_coords(&self.basis, &self.pivots, v)
    }

    pub fn contains_all(&self, g: &Matrix) -> bool {
        g.columns().all(|c| self.contains(&c))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        self.contains_all(&other.basis)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Lattice::from_generators(&self.basis.hcat(&other.basis))
    }

    pub fn add_generators(&self, g: &Matrix) -> Lattice {
        Lattice::from_generators(&self.basis.hcat(g))
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.dim);
        }
        let k = kernel_basis(&self.basis.hcat(&other.basis.scale(&Int::from(-1))));
        let x = k.select_rows(0..self.rank());
        Lattice::from_generators(&self.basis.mul(&x))
    }

    /// `{x : a * x in self}` for a matrix `a` with `self.dim()` rows.
    pub fn preimage(&self, a: &Matrix) -> Lattice {
        assert_eq!(a.rows(), self.dim);
        let k = kernel_basis(&a.hcat(&self.basis.scale(&Int::from(-1))));
        Lattice::from_generators(&k.select_rows(0..a.cols()))
    }

    /// Image of the lattice under `a`.
    pub fn image(&self, a: &Matrix) -> Lattice {
        assert_eq!(a.cols(), self.dim);
        Lattice::from_generators(&a.mul(&self.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;

    #[test]
    fn echelon_transform_is_consistent() {
        let a = Matrix::from_i64(3, 4, &[2, 4, 6, 1, 3, 5, 7, 0, 1, 1, 1, 1]);
        let ce = column_echelon(&a, true);
        let v = ce.v.clone().unwrap();
        assert_eq!(a.mul(&v), ce.h);
        assert_eq!(v.determinant().abs(), Int::from(1));
    }

    #[test]
    fn kernel_annihilates() {
        let a = Matrix::from_i64(2, 4, &[1, 2, 3, 4, 2, 4, 6, 9]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn membership_and_intersection() {
        let two = Lattice::from_generators(&Matrix::from_i64(1, 1, &[2]));
        let three = Lattice::from_generators(&Matrix::from_i64(1, 1, &[3]));
        let six = two.intersect(&three);
        assert_eq!(six, Lattice::from_generators(&Matrix::from_i64(1, 1, &[6])));
        assert!(two.sum(&three).is_full());
        assert!(six.contains(&ivec(&[-12])));
        assert!(!six.contains(&ivec(&[4])));
    }

    #[test]
    fn solve_finds_solutions() {
        let a = Matrix::from_i64(2, 3, &[2, 3, 0, 0, 5, 7]);
        let b = ivec(&[1, 2]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let a = Matrix::from_i64(1, 1, &[2]);
        assert!(solve(&a, &ivec(&[3])).is_none());
    }

    #[test]
    fn canonical_basis_identifies_equal_lattices() {
        let a = Lattice::from_generators(&Matrix::from_i64(2, 2, &[1, 1, 0, 2]));
        let b = Lattice::from_generators(&Matrix::from_i64(2, 3, &[3, 1, 2, 2, 0, 2]));
        assert_eq!(a, b);
    }
}
