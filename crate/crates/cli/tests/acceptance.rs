//! Acceptance run: one PASS/FAIL line per criterion. All checks are exact
//! integer computations (zero tolerance); each criterion also has a pinned
//! wall-clock limit.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use obstruct_cli::commands::{self, load_text};
use obstruct_cli::format::{InstanceFile, Metadata};
use obstruct_core::exactalg::enumerate_elements;
use obstruct_core::filtcomplex::{cohomology, induced_on_cohomology, FilteredComplex};
use obstruct_core::fixtures::{self, random_filtered, random_mw_instance, rng, uniform, RandomShape, NAMES};
use obstruct_core::matrix::Int;
use obstruct_core::milnor::symbol::{degree_sum, weil_product};
use obstruct_core::milnor::{
    gersten_complex, kgroup_bruteforce, reduction_map, Elem, FiniteField, FunctionField, Poly, RatFn, Space,
};
use obstruct_core::obstruction::{check_declared_band, secondary_from_comparison, vanishing_equivalence, TowerContext, Verdict};
use obstruct_core::specseq::{
    compare_with_oracle, comparison_sequences, e_infinity, page, page_by_homology_all, stabilization_index,
    verify_convergence,
};
use obstruct_core::sq2::{diagonal_differential_assembly, sq2, twisted_phi, verify_assembly, ChowClass, ChowRing};
use serde_json::json;

type Outcome = Result<String, String>;

/// Number, name, time limit and check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spectral_engine() -> Outcome {
    let mut r = rng(1);
    for k in 0..200 {
        let f = random_filtered(&mut r, RandomShape::default());
        let oracle = page_by_homology_all(&f, stabilization_index(&f)).map_err(|e| e.to_string())?;
        for (i, o) in oracle.iter().enumerate() {
            let p = page(&f, i as i64 + 1).map_err(|e| e.to_string())?;
            ensure(p.square_zero_violation().is_none(), || format!("instance {k}: d^2 != 0 on page {}", i + 2))?;
            compare_with_oracle(&p, o).map_err(|e| format!("instance {k}, page {}: {e}", i + 2))?;
        }
        let conv = verify_convergence(&f).map_err(|e| e.to_string())?;
        ensure(conv.passed(), || format!("instance {k}: E_inf differs from gr H at {:?}", conv.first_failure()))?;
    }
    Ok("200 random complexes: pages equal homology of the previous page, E_inf = gr H".into())
}

fn tower_equivalence() -> Outcome {
    let mut r = rng(3);
    let mut instances: Vec<FilteredComplex> = NAMES.iter().map(|n| fixtures::named(n).unwrap().filtered).collect();
    for _ in 0..200 {
        instances.push(random_filtered(&mut r, RandomShape::default()));
    }
    let (mut groups, mut classes) = (0, 0);
    for (k, f) in instances.iter().enumerate() {
        for d in f.complex().degrees() {
            let v = vanishing_equivalence(f, d, &mut rng(k as u64), 0).map_err(|e| e.to_string())?;
            if !v.exhaustive {
                continue;
            }
            ensure(v.passed(), || format!("instance {k}, degree {d}: class {:?}", v.failures[0]))?;
            groups += 1;
            classes += v.checked;
        }
    }
    Ok(format!("{groups} groups H^d with at most 1024 elements, {classes} classes, all exhaustive"))
}

fn comparison() -> Outcome {
    for name in ["sl3", "killing", "z4"] {
        let fx = fixtures::named(name).unwrap();
        let rep = comparison_sequences(&fx.comparison().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{name}: {:?}", rep.first_failure()))?;
    }
    let mut r = rng(2);
    for k in 0..50 {
        let fx = random_mw_instance(&mut r, RandomShape::default());
        let rep = comparison_sequences(&fx.comparison().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("random instance {k}: {:?}", rep.first_failure()))?;
    }
    Ok("exact on sl3, killing, z4 and 50 random top replacements".into())
}

fn sl3_facts() -> Outcome {
    let l = load_text(&commands::fixture("sl3").map_err(|e| e.to_string())?.to_text()).map_err(|e| e.to_string())?;
    let rep = commands::pages(&l, Some(3), 1).map_err(|e| e.to_string())?.to_json();
    let p2 = &rep["result"]["pages"][0];
    let entries = json!([{"degree": 1, "weight": 2, "group": "Z/2"}, {"degree": 2, "weight": 3, "group": "Z/2"}]);
    ensure(p2["entries"] == entries, || format!("E_2 = {}", p2["entries"]))?;
    let d = &p2["differentials"];
    ensure(
        d.as_array().map(Vec::len) == Some(1)
            && d[0]["from"] == json!([1, 2])
            && d[0]["to"] == json!([2, 3])
            && d[0]["isomorphism"] == json!(true),
        || format!("d_2 = {d}"),
    )?;
    ensure(rep["result"]["pages"][1]["zero"] == json!(true), || "E_3 is not zero".into())?;
    Ok("E_2^{1,2} = E_2^{2,3} = Z/2, d_2 an isomorphism, E_3 = 0".into())
}

fn gersten() -> Outcome {
    for q in [3u32, 5] {
        for d in 1..=3u32 {
            let mut h1s = Vec::new();
            for bound in [d, d + 1] {
                let int = gersten_complex(Space::ProjectiveLine, q, 1, bound, false).map_err(|e| e.to_string())?;
                let m2 = gersten_complex(Space::ProjectiveLine, q, 1, bound, true).map_err(|e| e.to_string())?;
                let h1 = cohomology(&int.complex, 1).group().invariants();
                ensure(h1.free_rank == 1 && h1.torsion.is_empty(), || format!("q={q} D={bound}: H^1 = {h1}"))?;
                let h0 = cohomology(&int.complex, 0).group().invariants();
                ensure(h0.free_rank == 0 && h0.torsion == vec![Int::from(q - 1)], || {
                    format!("q={q} D={bound}: H^0 = {h0}")
                })?;
                let red = reduction_map(&int, &m2).map_err(|e| e.to_string())?;
                let on_h1 = induced_on_cohomology(&red, 1).map_err(|e| e.to_string())?;
                ensure(on_h1.is_surjective() && on_h1.target().invariants().torsion == vec![Int::from(2)], || {
                    format!("q={q} D={bound}: mod 2 reduction on H^1 is not onto Z/2")
                })?;
                h1s.push(h1);
            }
            ensure(h1s[0] == h1s[1], || format!("q={q}: H^1 changes from D={d} to D={}", d + 1))?;
        }
    }
    Ok("H^1 = Z for q in {3, 5}, D = 1..3 and D + 1, onto Z/2 mod 2, H^0 = Z/(q-1)".into())
}

fn rational(ff: &FunctionField, places: &[Poly], exps: &[i64], c: i64) -> RatFn {
    let r = &ff.ring;
    let mut num = Poly::constant(ff.field().exp(c));
    let mut den = Poly::constant(Elem::ONE);
    for (p, &e) in places.iter().zip(exps) {
        if e >= 0 {
            num = r.mul(&num, &r.pow(p, e as u32));
        } else {
            den = r.mul(&den, &r.pow(p, (-e) as u32));
        }
    }
    RatFn::new(r, num, den).unwrap()
}

fn milnor() -> Outcome {
    for q in [3u32, 5] {
        let f = FiniteField::gf(q).map_err(|e| e.to_string())?;
        let k = kgroup_bruteforce(&f, 2, None).map_err(|e| e.to_string())?;
        ensure(k.dictionary.len() == ((q - 1) * (q - 1)) as usize, || format!("F_{q}: not every symbol enumerated"))?;
        ensure(k.presentation.is_trivial(), || format!("K_2(F_{q})/2 = {}", k.presentation.invariants()))?;
    }
    let mut r = rng(6);
    let mut pairs = 0;
    for q in [3u32, 5] {
        let ff = FunctionField::new(q).map_err(|e| e.to_string())?;
        for d in 1..=3u32 {
            let places = ff.ring.irreducibles(d);
            let keep = places.len().min(6);
            for _ in 0..40 {
                let mut exps = || (0..keep).map(|_| uniform(&mut r, -2, 2)).collect::<Vec<_>>();
                let (e1, e2) = (exps(), exps());
                let f = rational(&ff, &places[..keep], &e1, uniform(&mut r, 0, q as i64 - 2));
                let g = rational(&ff, &places[..keep], &e2, uniform(&mut r, 0, q as i64 - 2));
                ensure(degree_sum(&ff, &f).map_err(|e| e.to_string())? == 0, || format!("q={q}: degree sum of {f:?}"))?;
                ensure(weil_product(&ff, &f, &g).map_err(|e| e.to_string())? == Elem::ONE, || {
                    format!("q={q}: Weil product of {f:?}, {g:?}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("K_2(F_3)/2 = K_2(F_5)/2 = 0 over all symbols; reciprocity on {pairs} pairs on P^1, degree <= 3"))
}

fn lucas_sq2(ring: &Arc<ChowRing>, i: u32) -> ChowClass {
    // Sq^2 h^i = C(i, 1) h^{i+1}, with C(i, 1) odd iff bit 0 of i is set
    if i & 1 == 1 {
        ChowClass::power(ring, 0, i + 1)
    } else {
        ChowClass::zero(ring, i as i64 + 1)
    }
}

fn operations() -> Outcome {
    let mut checked = 0;
    for n in 1..=8u32 {
        let ring = ChowRing::projective(n);
        let h = ChowClass::power(&ring, 0, 1);
        let zero1 = ChowClass::zero(&ring, 1);
        for i in 0..=n {
            let x = ChowClass::power(&ring, 0, i);
            ensure(sq2(&x) == lucas_sq2(&ring, i), || format!("Sq^2 h^{i} on P^{n}"))?;
            for c1 in [&zero1, &h] {
                for y in [x.clone(), ChowClass::zero(&ring, i as i64)] {
                    let phi = twisted_phi(c1, &y).map_err(|e| e.to_string())?;
                    let direct = sq2(&y).add(&c1.mul(&y).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    ensure(phi == direct, || format!("twisted formula on P^{n}"))?;
                    ensure(twisted_phi(c1, &phi).map_err(|e| e.to_string())?.is_zero(), || {
                        format!("Phi o Phi != 0 on h^{i} in P^{n}")
                    })?;
                    checked += 1;
                }
                let a = diagonal_differential_assembly(&ring, c1, i as i64).map_err(|e| e.to_string())?;
                ensure(verify_assembly(&a).map_err(|e| e.to_string())?, || format!("assembly of P^{n} at {i}"))?;
            }
        }
    }
    Ok(format!("Sq^2 h^i = i h^(i+1) for n <= 8, Phi o Phi = 0 on {checked} classes, assemblies reproduce Phi"))
}

fn secondary() -> Outcome {
    for name in NAMES {
        let fx = fixtures::named(name).unwrap();
        let sys = fx.comparison().map_err(|e| e.to_string())?;
        let sec = secondary_from_comparison(&sys, None).map_err(|e| e.to_string())?;
        ensure(sec.isomorphic, || {
            format!("{name}: cokernel {} vs E_inf {}", sec.result.cokernel.invariants(), sec.e_infinity.invariants())
        })?;
        let inf = e_infinity(&sys.mw).map_err(|e| e.to_string())?;
        let direct = inf.page.group(fx.d + 1, -1).invariants();
        ensure(sec.result.cokernel.invariants() == direct, || format!("{name}: cokernel order"))?;
    }
    let cd1 = secondary_from_comparison(&fixtures::cd_one().comparison().map_err(|e| e.to_string())?, None)
        .map_err(|e| e.to_string())?;
    ensure(cd1.result.cokernel.is_trivial(), || "cd = 1 cokernel is not zero".into())?;
    Ok(format!("cokernel = E_inf on {} fixtures, zero when cd = 1", NAMES.len()))
}

fn classes_of(ctx: &TowerContext, next: &mut dyn FnMut() -> i64) -> Vec<Vec<Int>> {
    let g = ctx.cohomology().group();
    match enumerate_elements(g, 1 << 10) {
        Some((nf, elems)) => elems.iter().map(|e| nf.from.apply(e)).collect(),
        None => (0..16).map(|_| (0..g.generator_count()).map(|_| Int::from(next())).collect()).collect(),
    }
}

fn truncation_band() -> Outcome {
    let mut r = rng(4);
    let (mut held, mut flagged) = (0, 0);
    let mut instances: Vec<(FilteredComplex, i64, i64)> = ["z4", "cd_one"]
        .iter()
        .map(|n| {
            let fx = fixtures::named(n).unwrap();
            (fx.filtered, fx.d, fx.declared_s.unwrap())
        })
        .collect();
    for _ in 0..100 {
        let f = random_filtered(&mut r, RandomShape::default());
        let width = f.p_max() - f.p_min() + 1;
        for d in f.complex().degrees() {
            instances.push((f.clone(), d, uniform(&mut r, 0, width)));
        }
    }
    for (k, (f, d, s)) in instances.iter().enumerate() {
        let band = check_declared_band(f, *d, *s).map_err(|e| e.to_string())?;
        let inf = e_infinity(f).map_err(|e| e.to_string())?;
        let violated = (f.p_min() + s..=f.p_max()).any(|p| !inf.page.group(p, d - p).is_trivial());
        ensure(band.holds() != violated, || format!("instance {k}: band check disagrees with E_inf"))?;
        if violated {
            let file = InstanceFile::new(Metadata { name: None, d: Some(*d), s: Some(*s), twist: None }, f, None);
            let l = load_text(&file.to_text()).map_err(|e| e.to_string())?;
            let zero = vec!["0"; f.complex().group(*d).generator_count()].join(",");
            match commands::tower(&l, None, Some(&zero), 0) {
                Err(obstruct_cli::error::CliError::Failed(_)) => flagged += 1,
                other => return Err(format!("instance {k}: violated band not flagged: {other:?}")),
            }
            continue;
        }
        let ctx = TowerContext::new(f, *d).map_err(|e| e.to_string())?;
        for c in classes_of(&ctx, &mut || uniform(&mut r, -3, 3)) {
            let t = ctx.tower_of_class(&c).map_err(|e| e.to_string())?;
            ensure(t.stages.iter().all(|st| st.n < *s || !st.nonzero), || {
                format!("instance {k}: a stage past s = {s} is nonzero")
            })?;
            let truncated = match t.stages.iter().find(|st| st.nonzero && st.n < *s) {
                Some(st) => Verdict::FirstNonzero(st.n),
                None => Verdict::Vanishes,
            };
            ensure(truncated == t.verdict, || format!("instance {k}: truncated verdict differs"))?;
        }
        held += 1;
    }
    Ok(format!("{held} instances within their band, {flagged} violations flagged"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "spectral sequence engine", Duration::from_secs(60), spectral_engine),
        (2, "obstruction tower equivalence", Duration::from_secs(30), tower_equivalence),
        (3, "comparison exact sequences", Duration::from_secs(60), comparison),
        (4, "SL_3 band", Duration::from_secs(1), sl3_facts),
        (5, "Gersten complex of P^1", Duration::from_secs(10), gersten),
        (6, "Milnor K facts", Duration::from_secs(60), milnor),
        (7, "operation identities", Duration::from_secs(60), operations),
        (8, "secondary obstruction pipeline", Duration::from_secs(60), secondary),
        (9, "truncation band", Duration::from_secs(60), truncation_band),
    ];
    println!("tolerance: exact integer arithmetic, zero tolerance on every criterion");
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|m| {
            if took <= limit {
                Ok(m)
            } else {
                Err(format!("{m}, but over the time limit"))
            }
        });
        let (tag, msg) = match outcome {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {n} {tag} {name}: {msg} [{:.2} s, limit {} s]", took.as_secs_f64(), limit.as_secs());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
