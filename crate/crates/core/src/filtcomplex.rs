//! Bounded cochain complexes of presented groups and their filtrations.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{bail, Error, FiltrationViolation, Result};
use crate::exactalg::{direct_sum, image, kernel, quotient, Homo, Presentation, Subgroup, Subquotient};
use crate::matrix::{Int, Matrix};

/// A cochain complex `C^lo -> ... -> C^hi`, zero outside `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    lo: i64,
    groups: Vec<Presentation>,
    diffs: Vec<Homo>,
}

impl CochainComplex {
    /// `diffs[k]` is `d^{lo+k}`; there must be one fewer than groups.
    pub fn new(lo: i64, groups: Vec<Presentation>, diffs: Vec<Homo>) -> Result<Self> {
        if diffs.len() + 1 != groups.len() && !(groups.is_empty() && diffs.is_empty()) {
            bail!(
                Dimension,
                "{} groups need {} differentials, got {}",
                groups.len(),
                groups.len().saturating_sub(1),
                diffs.len()
            );
        }
        for (k, d) in diffs.iter().enumerate() {
            if !d.source().same_as(&groups[k]) || !d.target().same_as(&groups[k + 1]) {
                bail!(
                    AmbientMismatch,
                    "differential in degree {} does not connect C^{} and C^{}",
                    lo + k as i64,
                    lo + k as i64,
                    lo + k as i64 + 1
                );
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            let dd = diffs[k].then(&diffs[k + 1])?;
            if !dd.is_zero_map() {
                bail!(IllDefined, "d^{} composed with d^{} is not zero", lo + k as i64 + 1, lo + k as i64);
            }
        }
        Ok(CochainComplex { lo, groups, diffs })
    }

    /// Builds differentials from matrices, checking each one.
    pub fn from_matrices(lo: i64, groups: Vec<Presentation>, mats: Vec<Matrix>) -> Result<Self> {
        if mats.len() + 1 != groups.len() && !(groups.is_empty() && mats.is_empty()) {
            bail!(Dimension, "{} groups need {} differential matrices", groups.len(), groups.len().saturating_sub(1));
        }
        let mut diffs = Vec::with_capacity(mats.len());
        for (k, m) in mats.into_iter().enumerate() {
            let d = Homo::new(groups[k].clone(), groups[k + 1].clone(), m).map_err(|e| match e {
                Error::IllDefined(s) => Error::IllDefined(format!("d^{}: {s}", lo + k as i64)),
                Error::Dimension(s) => Error::Dimension(format!("d^{}: {s}", lo + k as i64)),
                other => other,
            })?;
            diffs.push(d);
        }
        CochainComplex::new(lo, groups, diffs)
    }

    pub fn empty() -> Self {
        CochainComplex {
            lo: 0,
            groups: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A single group in one degree.
    pub fn concentrated(degree: i64, g: Presentation) -> Self {
        CochainComplex {
            lo: degree,
            groups: alloc::vec![g],
            diffs: Vec::new(),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top degree; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.groups.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi()
    }

    pub fn in_range(&self, i: i64) -> bool {
        i >= self.lo && i <= self.hi()
    }

    pub fn group(&self, i: i64) -> Presentation {
        if self.in_range(i) {
            self.groups[(i - self.lo) as usize].clone()
        } else {
            Presentation::zero()
        }
    }

    pub fn groups(&self) -> &[Presentation] {
        &self.groups
    }

    /// `d^i: C^i -> C^{i+1}`.
    pub fn d(&self, i: i64) -> Homo {
        if self.in_range(i) && self.in_range(i + 1) {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            Homo::zero(self.group(i), self.group(i + 1))
        }
    }

    pub fn differentials(&self) -> &[Homo] {
        &self.diffs
    }
}

/// Degreewise maps commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    lo: i64,
    maps: Vec<Homo>,
}

impl ChainMap {
    /// `maps[k]` acts in degree `source.lo() + k`.
    pub fn new(source: CochainComplex, target: CochainComplex, maps: Vec<Homo>) -> Result<Self> {
        let lo = source.lo();
        if maps.len() != source.groups.len() {
            bail!(Dimension, "chain map needs one map per source degree");
        }
        for (k, f) in maps.iter().enumerate() {
            let i = lo + k as i64;
            if !f.source().same_as(&source.group(i)) || !f.target().same_as(&target.group(i)) {
                bail!(AmbientMismatch, "chain map component in degree {i} has wrong source or target");
            }
        }
        let cm = ChainMap {
            source,
            target,
            lo,
            maps,
        };
        let mut degrees: Vec<i64> = cm.source.degrees().collect();
        if let Some(&first) = degrees.first() {
            degrees.insert(0, first - 1);
        }
        for i in degrees {
            let a = cm.source.d(i).then(&cm.map(i + 1))?;
            let b = cm.map(i).then(&cm.target.d(i))?;
            if !a.same_map(&b) {
                bail!(IllDefined, "chain map does not commute with differentials in degree {i}");
            }
        }
        Ok(cm)
    }

    pub fn from_matrices(source: CochainComplex, target: CochainComplex, mats: Vec<Matrix>) -> Result<Self> {
        let lo = source.lo();
        let mut maps = Vec::new();
        for (k, m) in mats.into_iter().enumerate() {
            let i = lo + k as i64;
            maps.push(Homo::new(source.group(i), target.group(i), m)?);
        }
        ChainMap::new(source, target, maps)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            lo: c.lo(),
            maps: c.groups.iter().map(Homo::identity).collect(),
        }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn map(&self, i: i64) -> Homo {
        if self.source.in_range(i) {
            self.maps[(i - self.lo) as usize].clone()
        } else {
            Homo::zero(self.source.group(i), self.target.group(i))
        }
    }

    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        let mut maps = Vec::new();
        for i in self.source.degrees() {
            maps.push(self.map(i).then(&next.map(i))?);
        }
        Ok(ChainMap {
            source: self.source.clone(),
            target: next.target.clone(),
            lo: self.lo,
            maps,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(Homo::is_injective)
    }
}

/// Cohomology `ker d^i / im d^{i-1}` with representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i64,
    sq: Subquotient,
}

impl Cohomology {
    pub fn group(&self) -> &Presentation {
        self.sq.group()
    }

    pub fn cocycles(&self) -> &Subgroup {
        self.sq.numerator()
    }

    pub fn coboundaries(&self) -> &Subgroup {
        self.sq.denominator()
    }

    /// Class of a cocycle; `None` if `v` is not a cocycle.
    pub fn project(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.sq.project(v)
    }

    /// Representative cocycle of a class.
    pub fn lift(&self, class: &[Int]) -> Vec<Int> {
        self.sq.lift(class)
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sq
    }
}

/// `H^i(C)`; the zero group outside the degree range.
pub fn cohomology(c: &CochainComplex, i: i64) -> Cohomology {
    let z = kernel(&c.d(i));
    let b = image(&c.d(i - 1));
    Cohomology {
        degree: i,
        sq: Subquotient::new(z, b).expect("boundaries are cocycles"),
    }
}

/// Map induced on `H^i` by a chain map.
pub fn induced_on_cohomology(f: &ChainMap, i: i64) -> Result<Homo> {
    let src = cohomology(f.source(), i);
    let tgt = cohomology(f.target(), i);
    src.subquotient().map_to(&f.map(i), tgt.subquotient())
}

/// A cohomology class given by a cocycle.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    pub degree: i64,
    pub representative: Vec<Int>,
    pub class_group: Presentation,
    /// Coordinates in `class_group`.
    pub class: Vec<Int>,
}

impl CohomologyClass {
    pub fn new(c: &CochainComplex, degree: i64, representative: Vec<Int>) -> Result<Self> {
        if !c.in_range(degree) {
            bail!(Dimension, "degree {degree} is outside the complex");
        }
        c.group(degree).check_element(&representative)?;
        let h = cohomology(c, degree);
        let Some(class) = h.project(&representative) else {
            bail!(Precondition, "representative is not a cocycle in degree {degree}");
        };
        Ok(CohomologyClass {
            degree,
            representative,
            class_group: h.group().clone(),
            class,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.class_group.is_zero_element(&self.class)
    }
}

/// A complex with a decreasing filtration `F^{p_min} = C ⊇ ... ⊇ F^{p_max+1} = 0`.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    complex: CochainComplex,
    p_min: i64,
    /// `levels[k][i - lo]` is `F^{p_min+k}C^i`; the last level is `p_max + 1`.
    levels: Vec<Vec<Subgroup>>,
}

impl FilteredComplex {
    /// Validates and builds a filtered complex.
    pub fn new(complex: CochainComplex, p_min: i64, levels: Vec<Vec<Subgroup>>) -> Result<Self> {
        if levels.is_empty() {
            bail!(Dimension, "a filtration needs at least the level p_max + 1");
        }
        for (k, lv) in levels.iter().enumerate() {
            if lv.len() != complex.groups.len() {
                bail!(Dimension, "level {} has {} subgroups for {} degrees", p_min + k as i64, lv.len(), complex.groups.len());
            }
            for (idx, s) in lv.iter().enumerate() {
                if !s.ambient().same_as(&complex.groups[idx]) {
                    bail!(
                        AmbientMismatch,
                        "F^{}C^{} is not a subgroup of C^{}",
                        p_min + k as i64,
                        complex.lo + idx as i64,
                        complex.lo + idx as i64
                    );
                }
            }
        }
        let f = FilteredComplex {
            complex,
            p_min,
            levels,
        };
        f.validate()?;
        Ok(f)
    }

    fn new_unchecked(complex: CochainComplex, p_min: i64, levels: Vec<Vec<Subgroup>>) -> Self {
        FilteredComplex {
            complex,
            p_min,
            levels,
        }
    }

    /// Filtration with `C` at level `p` and zero above.
    pub fn one_level(complex: CochainComplex, p: i64) -> Self {
        let whole = complex.groups.iter().map(Subgroup::whole).collect();
        let zero = complex.groups.iter().map(Subgroup::zero).collect();
        FilteredComplex::new_unchecked(complex, p, alloc::vec![whole, zero])
    }

    /// Each degree concentrated in a single level: `C^i` lives exactly at
    /// level `level_of(i)`, which must be nondecreasing in `i`.
    pub fn diagonal(complex: CochainComplex, level_of: impl Fn(i64) -> i64) -> Result<Self> {
        let ls: Vec<i64> = complex.degrees().map(&level_of).collect();
        let p_min = ls.iter().copied().min().unwrap_or(0);
        let p_max = ls.iter().copied().max().unwrap_or(-1);
        let mut levels = Vec::new();
        for p in p_min..=p_max + 1 {
            let lv = complex
                .groups
                .iter()
                .zip(&ls)
                .map(|(g, &l)| if p <= l { Subgroup::whole(g) } else { Subgroup::zero(g) })
                .collect();
            levels.push(lv);
        }
        FilteredComplex::new(complex, p_min, levels)
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn p_min(&self) -> i64 {
        self.p_min
    }

    pub fn p_max(&self) -> i64 {
        self.p_min + self.levels.len() as i64 - 2
    }

    pub fn lo(&self) -> i64 {
        self.complex.lo()
    }

    pub fn hi(&self) -> i64 {
        self.complex.hi()
    }

    /// `F^pC^i` for any integers `p` and `i`.
    pub fn level(&self, p: i64, i: i64) -> Subgroup {
        let g = self.complex.group(i);
        if !self.complex.in_range(i) {
            return Subgroup::zero(&g);
        }
        let idx = (i - self.complex.lo()) as usize;
        if p <= self.p_min {
            return self.levels[0][idx].clone();
        }
        let k = (p - self.p_min) as usize;
        if k >= self.levels.len() {
            return Subgroup::zero(&g);
        }
        self.levels[k][idx].clone()
    }

    pub fn levels(&self) -> &[Vec<Subgroup>] {
        &self.levels
    }

    /// First violated axiom, checked degree by degree.
    pub fn validate(&self) -> Result<()> {
        let last = self.levels.len() - 1;
        for i in self.complex.degrees() {
            let idx = (i - self.lo()) as usize;
            if !self.levels[0][idx].is_whole() {
                return Err(Error::Filtration(FiltrationViolation::NotBounded { level: self.p_min, degree: i }));
            }
            if !self.levels[last][idx].is_zero() {
                return Err(Error::Filtration(FiltrationViolation::NotBounded {
                    level: self.p_min + last as i64,
                    degree: i,
                }));
            }
        }
        for i in self.complex.degrees() {
            let idx = (i - self.lo()) as usize;
            for k in 0..last {
                if !self.levels[k + 1][idx].is_subgroup_of(&self.levels[k][idx]) {
                    return Err(Error::Filtration(FiltrationViolation::NotDecreasing {
                        level: self.p_min + k as i64,
                        degree: i,
                    }));
                }
            }
        }
        for i in self.complex.degrees() {
            let d = self.complex.d(i);
            for k in 0..=last {
                let p = self.p_min + k as i64;
                let src = self.level(p, i);
                let tgt = self.level(p, i + 1);
                for g in src.generators().columns() {
                    if !tgt.contains(&d.apply(&g)) {
                        return Err(Error::Filtration(FiltrationViolation::NotCompatible { level: p, degree: i }));
                    }
                }
            }
        }
        Ok(())
    }

    /// The subcomplex `F^pC` with its inclusion into `C`.
    pub fn subcomplex(&self, p: i64) -> (CochainComplex, ChainMap) {
        if p <= self.p_min {
            return (self.complex.clone(), ChainMap::identity(&self.complex));
        }
        let subs: Vec<Subgroup> = self.complex.degrees().map(|i| self.level(p, i)).collect();
        restrict_to_subgroups(&self.complex, &subs)
    }

    /// Quotient complex `F^pC / F^{p+1}C` on the generators of `F^pC`.
    pub fn graded_piece(&self, p: i64) -> CochainComplex {
        let (sub, incl) = self.subcomplex(p);
        let mut groups = Vec::new();
        for i in sub.degrees() {
            let upper = self.level(p + 1, i);
            let s = pull_back_subgroup(&incl.map(i), &upper);
            groups.push(quotient(&s).0);
        }
        let diffs = sub
            .differentials()
            .iter()
            .enumerate()
            .map(|(k, d)| Homo::new(groups[k].clone(), groups[k + 1].clone(), d.matrix().clone()).expect("d respects filtration"))
            .collect();
        CochainComplex::new(sub.lo(), groups, diffs).expect("graded piece is a complex")
    }

    /// Number of levels `p_max - p_min + 1`.
    pub fn width(&self) -> i64 {
        self.p_max() - self.p_min() + 1
    }
}

/// Subgroup of `incl.source()` consisting of elements mapping into `s`.
fn pull_back_subgroup(incl: &Homo, s: &Subgroup) -> Subgroup {
    crate::exactalg::preimage(incl, s).expect("ambient matches")
}

/// Restricts a complex to degreewise subgroups closed under `d`.
pub fn restrict_to_subgroups(c: &CochainComplex, subs: &[Subgroup]) -> (CochainComplex, ChainMap) {
    let groups: Vec<Presentation> = subs.iter().map(|s| s.presentation().clone()).collect();
    let mut diffs = Vec::new();
    for (k, i) in c.degrees().enumerate().take(subs.len().saturating_sub(1)) {
        let d = c.d(i);
        let cols: Vec<Vec<Int>> = subs[k]
            .generators()
            .columns()
            .map(|g| subs[k + 1].coordinates(&d.apply(&g)).expect("subgroups closed under d"))
            .collect();
        let m = Matrix::from_columns(groups[k + 1].generator_count(), &cols);
        diffs.push(Homo::new(groups[k].clone(), groups[k + 1].clone(), m).expect("restriction well defined"));
    }
    let sub = CochainComplex::new(c.lo(), groups, diffs).expect("restriction is a complex");
    let maps = subs.iter().map(Subgroup::inclusion).collect();
    let incl = ChainMap::new(sub.clone(), c.clone(), maps).expect("inclusion commutes with d");
    (sub, incl)
}

/// `F^max(p, j)`: levels below `j` replaced by level `j`, on the complex `F^jC`.
/// A no-op for `j <= p_min`.
pub fn truncate(f: &FilteredComplex, j: i64) -> Result<FilteredComplex> {
    Ok(truncate_with_inclusion(f, j)?.0)
}

/// Truncation together with the filtered inclusion into the original.
pub fn truncate_with_inclusion(f: &FilteredComplex, j: i64) -> Result<(FilteredComplex, ChainMap)> {
    if j > f.p_max() + 1 {
        bail!(Precondition, "truncation level {j} above {}", f.p_max() + 1);
    }
    if j <= f.p_min() {
        return Ok((f.clone(), ChainMap::identity(f.complex())));
    }
    let (sub, incl) = f.subcomplex(j);
    let mut levels = Vec::new();
    for p in j..=f.p_max() + 1 {
        let lv = sub
            .degrees()
            .map(|i| pull_back_subgroup(&incl.map(i), &f.level(p, i)))
            .collect();
        levels.push(lv);
    }
    let t = FilteredComplex::new(sub, j, levels)?;
    Ok((t, incl))
}

/// Replaces the top of a filtration starting at `j = f.p_min()`: the new
/// ambient complex is `top`, level `j` is all of it, and every level above is
/// the image of the old one under `incl: F^{j+1}C -> top`.
pub fn mw_replace_top(f: &FilteredComplex, top: &CochainComplex, incl: &ChainMap) -> Result<FilteredComplex> {
    let j = f.p_min();
    let (inner, _) = f.subcomplex(j + 1);
    if incl.source().lo() != inner.lo() || incl.source().groups().len() != inner.groups().len() {
        bail!(AmbientMismatch, "inclusion does not start at F^{}C", j + 1);
    }
    for i in inner.degrees() {
        if !incl.source().group(i).same_as(&inner.group(i)) {
            bail!(AmbientMismatch, "inclusion source differs from F^{}C in degree {i}", j + 1);
        }
        if !incl.target().group(i).same_as(&top.group(i)) {
            bail!(AmbientMismatch, "inclusion target differs from the new top in degree {i}");
        }
    }
    if !incl.is_injective() {
        bail!(Precondition, "inclusion of F^{}C into the new top is not injective", j + 1);
    }
    if top.lo() != f.lo() || top.hi() != f.hi() {
        bail!(Dimension, "new top must span the same degrees");
    }
    let (_, inner_incl) = f.subcomplex(j + 1);
    let mut levels: Vec<Vec<Subgroup>> = alloc::vec![top.groups().iter().map(Subgroup::whole).collect()];
    for p in j + 1..=f.p_max() + 1 {
        let mut lv = Vec::new();
        for i in top.degrees() {
            let in_inner = pull_back_subgroup(&inner_incl.map(i), &f.level(p, i));
            let img = incl.map(i).matrix().mul(in_inner.generators());
            lv.push(Subgroup::generated(&top.group(i), &img)?);
        }
        levels.push(lv);
    }
    if levels.len() == 1 {
        levels.push(top.groups().iter().map(Subgroup::zero).collect());
    }
    FilteredComplex::new(top.clone(), j, levels)
}

/// Result of gluing a replacement layer onto the top of a filtration.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    /// `T = M x_{gr^j} F^jC`.
    pub top: CochainComplex,
    /// `F^{j+1}C -> T`, `a -> (0, a)`.
    pub incl: ChainMap,
    /// `T -> F^jC`, projection to the second factor.
    pub comparison: ChainMap,
    /// `T -> M`, projection to the first factor.
    pub to_layer: ChainMap,
}

/// Builds `T = M x_{gr^j} C` for `f` with `p_min = j` and a chain map
/// `red: M -> gr^j` where `gr^j` is `f.graded_piece(j)`.
pub fn fiber_product(f: &FilteredComplex, m: &CochainComplex, red: &ChainMap) -> Result<FiberProduct> {
    let j = f.p_min();
    let c = f.complex();
    let gr = f.graded_piece(j);
    if m.lo() != c.lo() || m.hi() != c.hi() {
        bail!(Dimension, "replacement layer must span the same degrees");
    }
    let mut subs = Vec::new();
    let mut sums = Vec::new();
    for i in c.degrees() {
        if !red.target().group(i).same_as(&gr.group(i)) || !red.source().group(i).same_as(&m.group(i)) {
            bail!(AmbientMismatch, "reduction map must go from the layer to gr^{j} in degree {i}");
        }
        let sum = direct_sum(&m.group(i), &c.group(i));
        let rm = red.map(i).matrix().clone();
        let neg_pi = Matrix::identity(c.group(i).generator_count()).scale(&Int::from(-1));
        let h = Homo::new(sum.clone(), gr.group(i), rm.hcat(&neg_pi))?;
        subs.push(kernel(&h));
        sums.push(sum);
    }
    let mut dsum = Vec::new();
    for i in c.degrees().take(sums.len().saturating_sub(1)) {
        let mat = m.d(i).matrix().block_diag(c.d(i).matrix());
        let k = (i - c.lo()) as usize;
        dsum.push(Homo::new(sums[k].clone(), sums[k + 1].clone(), mat)?);
    }
    let total = CochainComplex::new(c.lo(), sums.clone(), dsum)?;
    let (top, top_incl) = restrict_to_subgroups(&total, &subs);

    let (inner, inner_incl) = f.subcomplex(j + 1);
    let mut incl_maps = Vec::new();
    let mut cmp_maps = Vec::new();
    let mut layer_maps = Vec::new();
    for i in c.degrees() {
        let k = (i - c.lo()) as usize;
        let mg = m.group(i).generator_count();
        let cg = c.group(i).generator_count();
        let cols: Vec<Vec<Int>> = inner_incl
            .map(i)
            .matrix()
            .columns()
            .map(|a| {
                let mut v = alloc::vec![Int::from(0); mg];
                v.extend(a);
                subs[k].coordinates(&v).expect("F^{j+1} lies in the fiber product")
            })
            .collect();
        let im = Matrix::from_columns(top.group(i).generator_count(), &cols);
        incl_maps.push(Homo::new(inner.group(i), top.group(i), im)?);
        let g = top_incl.map(i).matrix().clone();
        cmp_maps.push(Homo::new(top.group(i), c.group(i), g.select_rows(mg..mg + cg))?);
        layer_maps.push(Homo::new(top.group(i), m.group(i), g.select_rows(0..mg))?);
    }
    Ok(FiberProduct {
        incl: ChainMap::new(inner, top.clone(), incl_maps)?,
        comparison: ChainMap::new(top.clone(), c.clone(), cmp_maps)?,
        to_layer: ChainMap::new(top.clone(), m.clone(), layer_maps)?,
        top,
    })
}

/// `F^pH^d` for `p = p_min ..= p_max + 1`, as subgroups of `H^d`.
pub fn filtration_on_cohomology(f: &FilteredComplex, d: i64) -> (Cohomology, Vec<Subgroup>) {
    let h = cohomology(f.complex(), d);
    let mut out = Vec::new();
    for p in f.p_min()..=f.p_max() + 1 {
        let z = h.cocycles().intersect(&f.level(p, d)).expect("same ambient");
        let elems: Vec<Vec<Int>> = z
            .generators()
            .columns()
            .map(|g| h.project(&g).expect("cocycle"))
            .collect();
        out.push(Subgroup::generated_by(h.group(), &elems).expect("dimensions agree"));
    }
    (h, out)
}

/// A chain map compatible with filtrations: `f(F^p) ⊆ F'^p`.
#[derive(Clone, Debug)]
pub struct FilteredChainMap {
    pub source: FilteredComplex,
    pub target: FilteredComplex,
    pub map: ChainMap,
}

impl FilteredChainMap {
    pub fn new(source: FilteredComplex, target: FilteredComplex, map: ChainMap) -> Result<Self> {
        let lo = source.p_min().min(target.p_min());
        let hi = source.p_max().max(target.p_max()) + 1;
        for i in source.complex().degrees() {
            if !map.source().group(i).same_as(&source.complex().group(i))
                || !map.target().group(i).same_as(&target.complex().group(i))
            {
                bail!(AmbientMismatch, "map does not connect the filtered complexes in degree {i}");
            }
            let f = map.map(i);
            for p in lo..=hi {
                let t = target.level(p, i);
                for g in source.level(p, i).generators().columns() {
                    if !t.contains(&f.apply(&g)) {
                        bail!(Precondition, "map does not preserve level {p} in degree {i}");
                    }
                }
            }
        }
        Ok(FilteredChainMap { source, target, map })
    }

    pub fn then(&self, next: &FilteredChainMap) -> Result<FilteredChainMap> {
        FilteredChainMap::new(self.source.clone(), next.target.clone(), self.map.then(&next.map)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;

    fn two_term(k: i64) -> CochainComplex {
        let z = Presentation::free(1);
        CochainComplex::from_matrices(0, alloc::vec![z.clone(), z], alloc::vec![Matrix::from_i64(1, 1, &[k])]).unwrap()
    }

    #[test]
    fn cohomology_of_multiplication_by_two() {
        let c = two_term(2);
        assert!(cohomology(&c, 0).group().invariants().is_zero());
        assert_eq!(cohomology(&c, 1).group().invariants().torsion, ivec(&[2]));
        assert!(cohomology(&c, 5).group().invariants().is_zero());
    }

    #[test]
    fn zero_differentials_give_the_groups_back() {
        let c = two_term(0);
        assert_eq!(cohomology(&c, 0).group().invariants().free_rank, 1);
        assert_eq!(cohomology(&c, 1).group().invariants().free_rank, 1);
    }

    #[test]
    fn lift_then_project_is_identity() {
        let c = two_term(2);
        let h = cohomology(&c, 1);
        let cls = ivec(&[1]);
        let back = h.project(&h.lift(&cls)).unwrap();
        assert!(h.group().elements_equal(&back, &cls));
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let z = Presentation::free(1);
        let r = CochainComplex::from_matrices(
            0,
            alloc::vec![z.clone(), z.clone(), z],
            alloc::vec![Matrix::from_i64(1, 1, &[1]), Matrix::from_i64(1, 1, &[1])],
        );
        assert!(matches!(r, Err(Error::IllDefined(_))));
    }

    #[test]
    fn empty_complex_is_total() {
        let c = CochainComplex::empty();
        assert!(cohomology(&c, 0).group().invariants().is_zero());
        let f = FilteredComplex::one_level(c, 0);
        assert!(f.validate().is_ok());
        let (_, fl) = filtration_on_cohomology(&f, 0);
        assert!(fl.iter().all(Subgroup::is_zero));
    }

    #[test]
    fn one_level_filtration_on_cohomology() {
        let f = FilteredComplex::one_level(two_term(0), 0);
        let (_, fl) = filtration_on_cohomology(&f, 0);
        assert!(fl[0].is_whole());
        assert!(fl[1].is_zero());
    }

    #[test]
    fn truncation_at_bounds() {
        let f = FilteredComplex::one_level(two_term(2), 0);
        let t = truncate(&f, 0).unwrap();
        assert_eq!(t.p_min(), 0);
        let t = truncate(&f, 1).unwrap();
        assert!(t.complex().groups().iter().all(Presentation::is_trivial));
        assert!(truncate(&f, 2).is_err());
    }
}
