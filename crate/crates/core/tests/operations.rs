use std::sync::Arc;

use obstruct_core::sq2::{
    diagonal_differential_assembly, sq2, suspension_check, twisted_phi, verify_assembly, ChowClass, ChowRing, Monomial,
};
use proptest::prelude::*;

fn binomial_odd(n: u32, k: u32) -> bool {
    // Lucas: C(n, k) is odd iff the bits of k are among those of n
    k <= n && (n & k) == k
}

/// Codimension `c + 1` part of `Π (h_i + h_i²)^{e_i}` for the monomial `h^e`
/// of codimension `c`, expanded by binomials mod 2.
fn cartan_oracle(ring: &Arc<ChowRing>, m: &[u32]) -> ChowClass {
    let codim: u32 = m.iter().sum();
    let mut terms: Vec<Monomial> = Vec::new();
    // choose k_i extra powers with Σ k_i = 1
    for i in 0..m.len() {
        let mut coeff = binomial_odd(m[i], 1);
        for (j, &e) in m.iter().enumerate() {
            if j != i {
                coeff &= binomial_odd(e, 0);
            }
        }
        if coeff {
            let mut n = m.to_vec();
            n[i] += 1;
            if ring.admits(&n) {
                terms.push(n);
            }
        }
    }
    ChowClass::from_monomials(ring, codim as i64 + 1, &terms).unwrap()
}

fn random_class(ring: &Arc<ChowRing>, codim: i64, bits: u64) -> ChowClass {
    let basis = ring.basis(codim);
    let chosen: Vec<Monomial> = basis.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, m)| m.clone()).collect();
    ChowClass::from_monomials(ring, codim, &chosen).unwrap()
}

#[test]
fn sq2_of_powers_on_projective_spaces() {
    for n in 1..=8 {
        let r = ChowRing::projective(n);
        for i in 0..=n {
            let h = ChowClass::power(&r, 0, i);
            let expect = if i % 2 == 1 && i < n { ChowClass::power(&r, 0, i + 1) } else { ChowClass::zero(&r, i as i64 + 1) };
            assert_eq!(sq2(&h), expect, "h^{i} on P^{n}");
            assert_eq!(sq2(&h), cartan_oracle(&r, &[i]));
        }
    }
}

#[test]
fn twisted_phi_squares_to_zero_on_projective_spaces() {
    for n in 1..=8 {
        let r = ChowRing::projective(n);
        let h = ChowClass::power(&r, 0, 1);
        for c1 in [ChowClass::zero(&r, 1), h.clone()] {
            for i in 0..=n {
                let x = ChowClass::power(&r, 0, i);
                assert!(twisted_phi(&c1, &twisted_phi(&c1, &x).unwrap()).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn assembly_reproduces_the_operation() {
    for n in 1..=8 {
        let r = ChowRing::projective(n);
        for c1 in [ChowClass::zero(&r, 1), ChowClass::power(&r, 0, 1)] {
            for band in 0..=n as i64 {
                let a = diagonal_differential_assembly(&r, &c1, band).unwrap();
                assert!(verify_assembly(&a).unwrap(), "P^{n} band {band}");
            }
        }
    }
    let r = ChowRing::product(&[2, 3]);
    let c1 = ChowClass::from_monomials(&r, 1, &[vec![1, 0], vec![0, 1]]).unwrap();
    for band in 0..=5 {
        assert!(verify_assembly(&diagonal_differential_assembly(&r, &c1, band).unwrap()).unwrap());
    }
}

proptest! {
    #[test]
    fn cartan_formula_on_products(a in 0i64..=5, b in 0i64..=5, xb in any::<u64>(), yb in any::<u64>()) {
        let r = ChowRing::product(&[2, 3]);
        let (x, y) = (random_class(&r, a, xb), random_class(&r, b, yb));
        let lhs = sq2(&x.mul(&y).unwrap());
        let rhs = sq2(&x).mul(&y).unwrap().add(&x.mul(&sq2(&y)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        for m in r.basis(a) {
            prop_assert_eq!(sq2(&ChowClass::monomial(&r, &m)), cartan_oracle(&r, &m));
        }
    }

    #[test]
    fn twisted_phi_squares_to_zero_on_products(a in 0i64..=5, xb in any::<u64>(), cb in 0u64..4) {
        let r = ChowRing::product(&[2, 3]);
        let c1 = random_class(&r, 1, cb);
        let x = random_class(&r, a, xb);
        prop_assert!(twisted_phi(&c1, &twisted_phi(&c1, &x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn operation_commutes_with_restriction(m in 1u32..=8, n in 1u32..=8, i in 0u32..=8, twist in any::<bool>()) {
        let (big, small) = (m.max(n), m.min(n));
        let (rb, rs) = (ChowRing::projective(big), ChowRing::projective(small));
        let i = i.min(big);
        let c = |r: &Arc<ChowRing>| if twist { ChowClass::power(r, 0, 1) } else { ChowClass::zero(r, 1) };
        let x = ChowClass::power(&rb, 0, i);
        let there = twisted_phi(&c(&rb), &x).unwrap().restrict(&rs).unwrap();
        let here = twisted_phi(&c(&rs), &x.restrict(&rs).unwrap()).unwrap();
        prop_assert_eq!(there, here);
    }

    #[test]
    fn suspension_is_stable(a in 0i64..=5, xb in any::<u64>()) {
        let r = ChowRing::product(&[2, 3]);
        prop_assert!(suspension_check(&random_class(&r, a, xb)).unwrap().holds());
    }
}
