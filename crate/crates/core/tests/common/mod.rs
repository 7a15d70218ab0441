#![allow(dead_code)]

use num_integer::Integer;
use num_traits::{Signed, Zero};
use obstruct_core::exactalg::Invariants;
use obstruct_core::matrix::{Int, Matrix};
use proptest::prelude::*;

pub fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| Matrix::from_i64(r, c, &v))
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k × k` minors (zero when there are none or all vanish).
pub fn determinantal_divisor(m: &Matrix, k: usize) -> Int {
    let mut g = Int::zero();
    for rows in subsets(m.rows(), k) {
        let sub = m.select_rows(rows.iter().copied());
        for cols in subsets(m.cols(), k) {
            let minor = sub.select_columns(cols.iter().copied()).determinant();
            g = g.gcd(&minor);
        }
    }
    g
}

/// Invariant factors from determinantal divisors.
pub fn invariant_factors(m: &Matrix) -> Vec<Int> {
    let mut out = Vec::new();
    let mut prev = Int::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let dk = determinantal_divisor(m, k);
        if dk.is_zero() {
            break;
        }
        out.push(&dk / &prev);
        prev = dk;
    }
    out
}

/// Invariants of `Z^gens / span(relations)` by the minor oracle.
pub fn invariants_by_minors(gens: usize, relations: &Matrix) -> Invariants {
    let f = invariant_factors(relations);
    Invariants {
        free_rank: gens - f.len(),
        torsion: f.into_iter().map(|x| x.abs()).filter(|x| x > &Int::from(1)).collect(),
    }
}
