mod common;

use common::invariants_by_minors;
use obstruct_core::error::{Error, FiltrationViolation};
use obstruct_core::exactalg::{Homo, Presentation, Subgroup};
use obstruct_core::filtcomplex::{cohomology, truncate_with_inclusion, CochainComplex, FilteredComplex};
use obstruct_core::fixtures::{random_filtered, rng, RandomShape};
use obstruct_core::lattice::Lattice;
use obstruct_core::matrix::{Int, Matrix};
use proptest::prelude::*;

/// `H^i` as cocycle lattice modulo boundaries plus relations, through the
/// lattice module and determinantal divisors only.
fn cohomology_oracle(c: &CochainComplex, i: i64) -> obstruct_core::exactalg::Invariants {
    let g = c.group(i);
    let next_rel = c.group(i + 1).relation_lattice().clone();
    let cocycles = next_rel.preimage(c.d(i).matrix());
    let mut b = g.relations().clone();
    b = b.hcat(c.d(i - 1).matrix());
    let k = cocycles.basis().cols();
    let kl = Lattice::from_generators(cocycles.basis());
    let cols: Vec<Vec<Int>> = b.columns().map(|v| kl.coords(&v).expect("boundaries are cocycles")).collect();
    invariants_by_minors(k, &Matrix::from_columns(k, &cols))
}

fn image_in(h: &Homo, s: &Subgroup) -> Subgroup {
    Subgroup::generated(h.target(), &h.matrix().mul(s.generators())).unwrap()
}

fn same(a: &Subgroup, b: &Subgroup) -> bool {
    a.is_subgroup_of(b) && b.is_subgroup_of(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cohomology_matches_the_lattice_oracle(seed in any::<u64>()) {
        let shape = RandomShape { max_rank: 4, ..RandomShape::default() };
        let f = random_filtered(&mut rng(seed), shape);
        let c = f.complex();
        for i in c.degrees() {
            prop_assert_eq!(cohomology(c, i).group().invariants(), cohomology_oracle(c, i));
        }
    }

    #[test]
    fn truncation_composes(seed in any::<u64>(), a in 0i64..4, b in 0i64..4) {
        let f = random_filtered(&mut rng(seed), RandomShape::default());
        let top = f.p_max() + 1;
        let j = (f.p_min() + a).min(top);
        let j2 = (f.p_min() + b).min(top);
        let (t1, i1) = truncate_with_inclusion(&f, j).unwrap();
        let (t2, i2) = truncate_with_inclusion(&t1, j2).unwrap();
        let jm = j.max(j2);
        prop_assert_eq!(t2.p_min(), jm.max(f.p_min()));
        let comp = i2.then(&i1).unwrap();
        for p in t2.p_min()..=t2.p_max() + 1 {
            for i in f.complex().degrees() {
                let img = image_in(&comp.map(i), &t2.level(p, i));
                prop_assert!(same(&img, &f.level(p.max(jm), i)), "level {} degree {}", p, i);
            }
        }
    }
}

fn z_to_z(k: i64) -> CochainComplex {
    let z = Presentation::free(1);
    CochainComplex::from_matrices(0, vec![z.clone(), z], vec![Matrix::from_i64(1, 1, &[k])]).unwrap()
}

fn levels(c: &CochainComplex, gens: &[[i64; 2]]) -> Vec<Vec<Subgroup>> {
    gens.iter()
        .map(|pair| {
            pair.iter()
                .zip(c.groups())
                .map(|(&g, p)| Subgroup::generated(p, &Matrix::from_i64(1, 1, &[g])).unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn validation_names_each_violation() {
    let c = z_to_z(1);
    let not_decreasing = FilteredComplex::new(c.clone(), 0, levels(&c, &[[1, 1], [2, 2], [1, 1], [0, 0]]));
    let not_bounded = FilteredComplex::new(c.clone(), 0, levels(&c, &[[2, 1], [0, 0]]));
    let not_compatible = FilteredComplex::new(c.clone(), 0, levels(&c, &[[1, 1], [1, 0], [0, 0]]));
    let kinds: Vec<(FiltrationViolation, String)> = [not_decreasing, not_bounded, not_compatible]
        .into_iter()
        .map(|r| match r {
            Err(e) => match &e {
                Error::Filtration(v) => (v.clone(), e.to_string()),
                other => panic!("expected a filtration error, got {other:?}"),
            },
            other => panic!("expected a filtration error, got {other:?}"),
        })
        .collect();
    assert!(matches!(kinds[0].0, FiltrationViolation::NotDecreasing { .. }));
    assert!(matches!(kinds[1].0, FiltrationViolation::NotBounded { .. }));
    assert!(matches!(kinds[2].0, FiltrationViolation::NotCompatible { .. }));
    assert!(kinds[0].1 != kinds[1].1 && kinds[1].1 != kinds[2].1 && kinds[0].1 != kinds[2].1);
    assert!(FilteredComplex::new(c.clone(), 0, levels(&c, &[[1, 1], [1, 1], [0, 0]])).is_ok());
}
