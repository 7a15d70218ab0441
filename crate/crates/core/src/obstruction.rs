//! The obstruction tower of a cohomology class and the secondary obstruction.
//!
//! For a class `α ∈ H^d` of a filtered complex, stage `n` looks at level
//! `s = p_min + n`. If `α ∈ F^sH^d`, write `α = [z]` with `z ∈ F^sC^d` a
//! cocycle; `Ψ^n(α)` is the class of `z` in `E_∞^{s,d-s}`. The tower stops at
//! the first nonzero stage. Past `p_max` the filtration is exhausted and the
//! class vanishes.

use alloc::vec::Vec;

use rand_chacha::rand_core::RngCore;

use crate::error::{bail, Result};
use crate::exactalg::{enumerate_elements, image, quotient, Homo, Presentation, Subquotient};
use crate::filtcomplex::{cohomology, filtration_on_cohomology, Cohomology, CohomologyClass, FilteredComplex};
use crate::fixtures::uniform;
use crate::lattice::solve;
use crate::matrix::{Int, Matrix};
use crate::specseq::{e_infinity, lifting_map, page, ComparisonSystem, InfinityPage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Vanishes,
    FirstNonzero(i64),
}

#[derive(Clone, Debug)]
pub struct TowerStage {
    pub n: i64,
    /// Filtration level `p_min + n`.
    pub level: i64,
    pub group: Presentation,
    /// Coordinates of `Ψ^n(α)` in `group`.
    pub value: Vec<Int>,
    pub nonzero: bool,
    /// Whether the value matches the image of `α` in `F^sH / F^{s+1}H`.
    pub matches_direct: bool,
}

#[derive(Clone, Debug)]
pub struct ObstructionTower {
    pub degree: i64,
    pub alpha: CohomologyClass,
    pub stages: Vec<TowerStage>,
    pub verdict: Verdict,
}

impl ObstructionTower {
    /// Verdict agrees with `α = 0` and every stage agrees with the direct quotient.
    pub fn is_sound(&self) -> bool {
        let vanishes = self.verdict == Verdict::Vanishes;
        vanishes == self.alpha.is_zero() && self.stages.iter().all(|s| s.matches_direct)
    }
}

/// Precomputed data for towers of many classes in one degree.
#[derive(Clone, Debug)]
pub struct TowerContext {
    f: FilteredComplex,
    degree: i64,
    h: Cohomology,
    filtration: Vec<Subquotient>,
    inf: InfinityPage,
    /// `E_∞^{s,d-s} -> F^sH/F^{s+1}H`, one per level.
    to_graded: Vec<Homo>,
}

impl TowerContext {
    pub fn new(f: &FilteredComplex, degree: i64) -> Result<Self> {
        if !f.complex().in_range(degree) {
            bail!(Precondition, "degree {degree} is outside the complex ({}..={})", f.lo(), f.hi());
        }
        let (h, flt) = filtration_on_cohomology(f, degree);
        let inf = e_infinity(f)?;
        let mut filtration = Vec::new();
        let mut to_graded = Vec::new();
        for (k, s) in (f.p_min()..=f.p_max()).enumerate() {
            let q = Subquotient::new(flt[k].clone(), flt[k + 1].clone())?;
            let e = inf.page.entry(s, degree - s).expect("entry in range");
            let cols: Vec<Vec<Int>> = e
                .generators()
                .columns()
                .map(|z| {
                    let c = h.project(&z).expect("E_inf representatives are cocycles");
                    q.project(&c).expect("and lie in F^sH")
                })
                .collect();
            let m = Matrix::from_columns(q.group().generator_count(), &cols);
            to_graded.push(Homo::new(e.group().clone(), q.group().clone(), m)?);
            filtration.push(q);
        }
        Ok(TowerContext {
            f: f.clone(),
            degree,
            h,
            filtration,
            inf,
            to_graded,
        })
    }

    pub fn cohomology(&self) -> &Cohomology {
        &self.h
    }

    pub fn filtered(&self) -> &FilteredComplex {
        &self.f
    }

    /// Tower of the class with coordinates `class` in `H^d`.
    pub fn tower_of_class(&self, class: &[Int]) -> Result<ObstructionTower> {
        let rep = self.h.lift(class);
        let alpha = CohomologyClass::new(self.f.complex(), self.degree, rep)?;
        self.tower(&alpha)
    }

    pub fn tower(&self, alpha: &CohomologyClass) -> Result<ObstructionTower> {
        if alpha.degree != self.degree {
            bail!(Precondition, "class has degree {}, tower is for degree {}", alpha.degree, self.degree);
        }
        let f = &self.f;
        let d = self.degree;
        let c = f.complex();
        let x = &alpha.representative;
        let class = self.h.project(x).expect("representative is a cocycle");
        let dm1 = c.d(d - 1).matrix().clone();
        let rel = c.group(d).relations().clone();
        let mut stages = Vec::new();
        let mut verdict = Verdict::Vanishes;
        for (k, s) in (f.p_min()..=f.p_max()).enumerate() {
            let n = k as i64;
            let zs = self.h.cocycles().intersect(&f.level(s, d))?;
            let a = zs.generators().hcat(&dm1).hcat(&rel);
            let Some(y) = solve(&a, x) else {
                bail!(Consistency, "stage {n} reached but the class is not in F^{s}H^{d}");
            };
            let z = zs.generators().mul_vec(&y[..zs.generators().cols()]);
            let e = self.inf.page.entry(s, d - s).expect("entry in range");
            let value = e.project(&z).expect("filtered cocycles lie in Z_inf");
            let nonzero = !e.group().is_zero_element(&value);
            let q = &self.filtration[k];
            let direct = q.project(&class).expect("class lies in F^sH");
            let via = self.to_graded[k].apply(&value);
            let matches_direct = q.group().elements_equal(&via, &direct);
            stages.push(TowerStage {
                n,
                level: s,
                group: e.group().clone(),
                value,
                nonzero,
                matches_direct,
            });
            if nonzero {
                verdict = Verdict::FirstNonzero(n);
                break;
            }
        }
        Ok(ObstructionTower {
            degree: d,
            alpha: alpha.clone(),
            stages,
            verdict,
        })
    }
}

pub fn psi_tower(f: &FilteredComplex, alpha: &CohomologyClass, d: i64) -> Result<ObstructionTower> {
    TowerContext::new(f, d)?.tower(alpha)
}

#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub degree: i64,
    pub group: Presentation,
    pub checked: usize,
    pub exhaustive: bool,
    /// Classes (in `H^d` coordinates) where the tower disagrees with `α = 0`.
    pub failures: Vec<Vec<Int>>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Largest group checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 10;

/// Checks `α = 0 ⇔ tower vanishes` on all of `H^d` when it has at most
/// 1024 elements, otherwise on `samples` random classes.
pub fn vanishing_equivalence(f: &FilteredComplex, d: i64, rng: &mut impl RngCore, samples: usize) -> Result<VanishingReport> {
    let ctx = TowerContext::new(f, d)?;
    let g = ctx.h.group().clone();
    let nf = g.normal_form();
    let (classes, exhaustive): (Vec<Vec<Int>>, bool) = match enumerate_elements(&g, EXHAUSTIVE_LIMIT) {
        Some((n, elems)) => (elems.iter().map(|e| n.from.apply(e)).collect(), true),
        None => {
            let mut v = Vec::new();
            for _ in 0..samples {
                let e: Vec<Int> = nf
                    .orders()
                    .iter()
                    .map(|o| {
                        if o == &Int::from(0) {
                            Int::from(uniform(rng, -5, 5))
                        } else {
                            let m = o.clone().min(Int::from(1_000_000));
                            let m: i64 = m.try_into().unwrap_or(1_000_000);
                            Int::from(uniform(rng, 0, m - 1))
                        }
                    })
                    .collect();
                v.push(nf.from.apply(&e));
            }
            (v, false)
        }
    };
    let mut failures = Vec::new();
    for c in &classes {
        let t = ctx.tower_of_class(c)?;
        if !t.is_sound() {
            failures.push(c.clone());
        }
    }
    Ok(VanishingReport {
        degree: d,
        group: g,
        checked: classes.len(),
        exhaustive,
        failures,
    })
}

/// Last stage that can carry an obstruction for declared 2-cohomological
/// dimension `s`.
pub fn cd_bound(_d: i64, s: i64) -> i64 {
    s - 1
}

#[derive(Clone, Debug)]
pub struct BandReport {
    pub degree: i64,
    pub declared_s: i64,
    pub bound: i64,
    /// Stages `n >= s` whose `E_∞` entry is nonzero.
    pub violations: Vec<(i64, Presentation)>,
}

impl BandReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `E_∞^{p_min+n, d-p_min-n}` vanishes for every `n >= s`.
pub fn check_declared_band(f: &FilteredComplex, d: i64, s: i64) -> Result<BandReport> {
    if s < 0 {
        bail!(Precondition, "declared dimension must be nonnegative, got {s}");
    }
    if !f.complex().in_range(d) {
        bail!(Precondition, "degree {d} is outside the complex");
    }
    let inf = e_infinity(f)?;
    let mut violations = Vec::new();
    for level in f.p_min() + s..=f.p_max() {
        let e = inf.page.entry(level, d - level).expect("entry in range");
        if !e.is_zero() {
            violations.push((level - f.p_min(), e.group().clone()));
        }
    }
    Ok(BandReport {
        degree: d,
        declared_s: s,
        bound: cd_bound(d, s),
        violations,
    })
}

/// Tower restricted to the stages `n <= cd_bound(d, s)`, with the band
/// certificate that makes it decisive.
#[derive(Clone, Debug)]
pub struct TruncatedTower {
    pub tower: ObstructionTower,
    pub band: BandReport,
}

impl TruncatedTower {
    /// `Some` verdict when the declared band holds, `None` if it is violated.
    pub fn verdict(&self) -> Option<Verdict> {
        self.band.holds().then_some(self.tower.verdict)
    }
}

pub fn truncated_tower(ctx: &TowerContext, alpha: &CohomologyClass, s: i64) -> Result<TruncatedTower> {
    let band = check_declared_band(ctx.filtered(), ctx.degree, s)?;
    let mut tower = ctx.tower(alpha)?;
    let bound = cd_bound(ctx.degree, s);
    tower.stages.retain(|st| st.n <= bound);
    tower.verdict = match tower.stages.iter().find(|st| st.nonzero) {
        Some(st) => Verdict::FirstNonzero(st.n),
        None => Verdict::Vanishes,
    };
    Ok(TruncatedTower { tower, band })
}

/// `integral --reduction--> mod2 --operation--> target` with a class in the target.
#[derive(Clone, Debug)]
pub struct SecondaryPipeline {
    pub integral_group: Presentation,
    pub mod2_group: Presentation,
    pub reduction: Homo,
    pub operation: Homo,
    pub lifted_class: Vec<Int>,
}

impl SecondaryPipeline {
    pub fn new(reduction: Homo, operation: Homo, lifted_class: Vec<Int>) -> Result<Self> {
        if !reduction.target().same_as(operation.source()) {
            bail!(AmbientMismatch, "reduction target is not the operation source");
        }
        operation.target().check_element(&lifted_class)?;
        Ok(SecondaryPipeline {
            integral_group: reduction.source().clone(),
            mod2_group: reduction.target().clone(),
            reduction,
            operation,
            lifted_class,
        })
    }

    pub fn composite(&self) -> Result<Homo> {
        self.reduction.then(&self.operation)
    }
}

#[derive(Clone, Debug)]
pub struct SecondaryResult {
    pub cokernel: Presentation,
    /// Coordinates of the class in `cokernel` (same generators as the target).
    pub class: Vec<Int>,
    pub is_zero: bool,
}

pub fn secondary_obstruction(p: &SecondaryPipeline) -> Result<SecondaryResult> {
    let comp = p.composite()?;
    let (coker, proj) = quotient(&image(&comp));
    let class = proj.apply(&p.lifted_class);
    let is_zero = coker.is_zero_element(&class);
    Ok(SecondaryResult {
        cokernel: coker,
        class,
        is_zero,
    })
}

/// Secondary pipeline read off a comparison system, checked against the tower.
#[derive(Clone, Debug)]
pub struct SecondaryComparison {
    pub pipeline: SecondaryPipeline,
    pub result: SecondaryResult,
    /// `E(MW)_∞^{d+1,-1}`.
    pub e_infinity: Presentation,
    /// The cokernel maps isomorphically onto `E(MW)_∞^{d+1,-1}`.
    pub isomorphic: bool,
    /// Tower of the class on the top-replaced filtration.
    pub tower: Option<ObstructionTower>,
    /// The cokernel class maps to `Ψ^1` of the tower.
    pub class_agrees: bool,
}

/// Builds the secondary pipeline of `sys` for a class of `H^d` of the
/// top-replaced complex, given by its representative, and compares the
/// cokernel with `E(MW)_∞^{d+1,-1}` and the class with `Ψ^1`.
///
/// With `representative = None` the lifted class is zero and only the groups
/// are compared.
pub fn secondary_from_comparison(sys: &ComparisonSystem, representative: Option<&[Int]>) -> Result<SecondaryComparison> {
    let d = sys.d;
    let reduction = sys.reduction()?;
    let p1 = page(&sys.full, 1)?;
    let operation = p1.differential(d, -1);
    let target = p1.entry(d + 1, -1);
    let inf_mw = e_infinity(&sys.mw)?;
    let mw_entry = inf_mw.page.entry(d + 1, -1);

    let mut tower = None;
    let mut lifted = operation.target().zero_element();
    if let Some(x) = representative {
        let alpha = CohomologyClass::new(sys.mw.complex(), d, x.to_vec())?;
        let t = psi_tower(&sys.mw, &alpha, d)?;
        if t.stages.first().is_some_and(|s| s.nonzero) {
            bail!(Precondition, "the class has nonzero primary obstruction, no secondary class is defined");
        }
        if let Some(te) = target {
            let h = cohomology(sys.mw.complex(), d);
            let zs = h.cocycles().intersect(&sys.mw.level(d + 1, d))?;
            let a = zs
                .generators()
                .hcat(sys.mw.complex().d(d - 1).matrix())
                .hcat(sys.mw.complex().group(d).relations());
            let y = solve(&a, x).ok_or_else(|| crate::error::Error::Consistency("class not in F^{d+1}".into()))?;
            let z = zs.generators().mul_vec(&y[..zs.generators().cols()]);
            let phi = sys.mw_to_full()?;
            let image = phi.map.map(d).apply(&z);
            lifted = te.project(&image).expect("lies in Z_1");
        }
        tower = Some(t);
    }
    let pipeline = SecondaryPipeline::new(reduction, operation, lifted)?;
    let result = secondary_obstruction(&pipeline)?;

    let (isomorphic, class_agrees, e_inf) = match (target, mw_entry) {
        (Some(te), Some(me)) => {
            let eps = lifting_map(&sys.mw_to_full()?, te, me, &sys.mw)?;
            let induced = Homo::new(result.cokernel.clone(), me.group().clone(), eps.matrix().clone());
            let iso = induced.as_ref().map(|h| h.is_isomorphism()).unwrap_or(false);
            let agrees = match &tower {
                None => true,
                Some(t) => {
                    let img = eps.apply(&pipeline.lifted_class);
                    match t.stages.get(1) {
                        Some(st) => me.group().elements_equal(&img, &st.value),
                        None => me.group().is_zero_element(&img),
                    }
                }
            };
            (iso, agrees, me.group().clone())
        }
        _ => (result.cokernel.is_trivial(), true, Presentation::zero()),
    };
    Ok(SecondaryComparison {
        pipeline,
        result,
        e_infinity: e_inf,
        isomorphic,
        class_agrees,
        tower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::ivec;

    #[test]
    fn z4_towers() {
        let fx = fixtures::z4();
        let ctx = TowerContext::new(&fx.filtered, 0).unwrap();
        let t = ctx.tower_of_class(&ivec(&[2])).unwrap();
        assert_eq!(t.verdict, Verdict::FirstNonzero(1));
        assert!(!t.stages[0].nonzero);
        assert!(t.is_sound());
        let t = ctx.tower_of_class(&ivec(&[1])).unwrap();
        assert_eq!(t.verdict, Verdict::FirstNonzero(0));
        assert_eq!(t.stages.len(), 1);
        let t = ctx.tower_of_class(&ivec(&[0])).unwrap();
        assert_eq!(t.verdict, Verdict::Vanishes);
        assert!(t.stages.iter().all(|s| !s.nonzero));
    }

    #[test]
    fn degree_out_of_range() {
        assert!(TowerContext::new(&fixtures::z4().filtered, 3).is_err());
    }

    #[test]
    fn cd_bounds() {
        assert_eq!(cd_bound(3, 1), 0);
        assert_eq!(cd_bound(3, 2), 1);
        assert_eq!(cd_bound(3, 0), -1);
    }

    #[test]
    fn secondary_examples() {
        let z2 = Presentation::cyclic(2);
        let red = Homo::identity(&z2);
        let op = Homo::zero(z2.clone(), z2.clone());
        let p = SecondaryPipeline::new(red.clone(), op, ivec(&[1])).unwrap();
        let r = secondary_obstruction(&p).unwrap();
        assert_eq!(r.cokernel.invariants().torsion, ivec(&[2]));
        assert!(!r.is_zero);

        let op = Homo::zero(z2.clone(), Presentation::zero());
        let p = SecondaryPipeline::new(red.clone(), op, Vec::new()).unwrap();
        let r = secondary_obstruction(&p).unwrap();
        assert!(r.cokernel.is_trivial() && r.is_zero);

        let p = SecondaryPipeline::new(red.clone(), Homo::identity(&z2), ivec(&[1])).unwrap();
        assert!(secondary_obstruction(&p).unwrap().is_zero);
    }
}
