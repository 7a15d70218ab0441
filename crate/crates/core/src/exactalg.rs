//! Finitely generated abelian groups given by integer presentations.
//!
//! A [`Presentation`] on `n` generators is `Z^n / L` where `L` is spanned by
//! the relation columns. A [`Subgroup`] is stored by its lifted lattice
//! `H + L` inside `Z^n`, which makes sums, intersections and preimages plain
//! lattice operations.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{bail, Result};
#[cfg(test)]
use crate::error::Error;
use crate::lattice::Lattice;
use crate::matrix::{Int, Matrix};
use crate::snf::smith_normal_form;

/// Isomorphism type `Z^free_rank + sum Z/torsion_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub free_rank: usize,
    /// Torsion coefficients, each at least 2, each dividing the next.
    pub torsion: Vec<Int>,
}

impl Invariants {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(Int::one(), |a, b| a * b))
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.free_rank > 0 {
            if self.free_rank == 1 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z^{}", self.free_rank)?;
            }
            first = false;
        }
        for t in &self.torsion {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{t}")?;
            first = false;
        }
        Ok(())
    }
}

/// Change of generators that brings `Z^k / span(x)` to diagonal form.
///
/// Coordinates `c` in `Z^k` map to canonical coordinates `(u c)_i mod d_i`
/// for the kept indices; `back` holds the corresponding new generators.
#[derive(Clone, Debug)]
struct Reducer {
    u: Matrix,
    keep: Vec<usize>,
    orders: Vec<Int>,
    back: Matrix,
}

impl Reducer {
    fn new(k: usize, x: &Matrix) -> Reducer {
        let s = smith_normal_form(x);
        let diag = s.diagonal();
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..k {
            let d = diag.get(i).cloned().unwrap_or_else(Int::zero);
            if d.is_one() {
                continue;
            }
            keep.push(i);
            orders.push(d);
        }
        let back = s.u_inv.select_columns(keep.iter().copied());
        Reducer {
            u: s.u,
            keep,
            orders,
            back,
        }
    }

    fn reduce(&self, c: &[Int]) -> Vec<Int> {
        let y = self.u.mul_vec(c);
        self.keep
            .iter()
            .zip(&self.orders)
            .map(|(&i, d)| {
                if d.is_zero() {
                    y[i].clone()
                } else {
                    y[i].mod_floor(d)
                }
            })
            .collect()
    }
}

fn diagonal_relations(orders: &[Int]) -> Matrix {
    let cols: Vec<Vec<Int>> = orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| {
            let mut c = vec![Int::zero(); orders.len()];
            c[i] = d.clone();
            c
        })
        .collect();
    Matrix::from_columns(orders.len(), &cols)
}

#[derive(Debug)]
struct PresentationInner {
    gens: usize,
    relations: Matrix,
    lattice: Lattice,
    labels: Option<Vec<String>>,
}

/// A finitely generated abelian group `Z^n / span(relations)`.
///
/// Cheap to clone; the data is shared.
#[derive(Clone)]
pub struct Presentation(Arc<PresentationInner>);

impl Presentation {
    /// Relation matrix columns are relations; it must have `gens` rows.
    pub fn new(gens: usize, relations: Matrix) -> Result<Self> {
        if relations.rows() != gens {
            bail!(
                Dimension,
                "relation matrix has {} rows but there are {} generators",
                relations.rows(),
                gens
            );
        }
        let lattice = Lattice::from_generators(&relations);
        Ok(Presentation(Arc::new(PresentationInner {
            gens,
            relations,
            lattice,
            labels: None,
        })))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(n: usize) -> Self {
        Presentation::new(n, Matrix::zeros(n, 0)).expect("shape is consistent")
    }

    /// One generator per entry; order `0` means infinite cyclic.
    pub fn from_orders(orders: &[Int]) -> Self {
        Presentation::new(orders.len(), diagonal_relations(orders)).expect("shape is consistent")
    }

    pub fn from_orders_i64(orders: &[i64]) -> Self {
        let o: Vec<Int> = orders.iter().map(|&x| Int::from(x)).collect();
        Self::from_orders(&o)
    }

    pub fn cyclic(order: i64) -> Self {
        Self::from_orders_i64(&[order])
    }

    /// Attaches per-generator labels.
    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.generator_count() {
            bail!(
                Dimension,
                "{} labels for {} generators",
                labels.len(),
                self.generator_count()
            );
        }
        Ok(Presentation(Arc::new(PresentationInner {
            gens: self.0.gens,
            relations: self.0.relations.clone(),
            lattice: self.0.lattice.clone(),
            labels: Some(labels),
        })))
    }

    pub fn generator_count(&self) -> usize {
        self.0.gens
    }

    pub fn relations(&self) -> &Matrix {
        &self.0.relations
    }

    pub fn relation_lattice(&self) -> &Lattice {
        &self.0.lattice
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.0.labels.as_ref().map(|l| l[i].as_str())
    }

    pub fn invariants(&self) -> Invariants {
        let s = smith_normal_form(self.relations());
        let diag = s.diagonal();
        let n = self.generator_count();
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        Invariants {
            free_rank: n - nonzero,
            torsion: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
        }
    }

    /// True if the group is trivial.
    pub fn is_trivial(&self) -> bool {
        self.relation_lattice().rank() == self.generator_count()
            && self.relation_lattice().is_full()
    }

    pub fn order(&self) -> Option<Int> {
        self.invariants().order()
    }

    pub fn check_element(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.generator_count() {
            bail!(
                Dimension,
                "element has {} coordinates, group has {} generators",
                v.len(),
                self.generator_count()
            );
        }
        Ok(())
    }

    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        self.relation_lattice().contains(v)
    }

    pub fn elements_equal(&self, a: &[Int], b: &[Int]) -> bool {
        let d: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&d)
    }

    pub fn zero_element(&self) -> Vec<Int> {
        vec![Int::zero(); self.generator_count()]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero_element();
        v[i] = Int::one();
        v
    }

    /// Same generator count and the same relation lattice.
    pub fn same_as(&self, other: &Presentation) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.generator_count() == other.generator_count()
                && self.relation_lattice() == other.relation_lattice())
    }

    /// The Smith-reduced form with mutually inverse isomorphisms.
    pub fn normal_form(&self) -> Normalized {
        let r = Reducer::new(self.generator_count(), self.relations());
        let group = Presentation::from_orders(&r.orders);
        let to = Homo::new_unchecked(self.clone(), group.clone(), r.u.select_rows(r.keep.iter().copied()));
        let from = Homo::new_unchecked(group.clone(), self.clone(), r.back.clone());
        Normalized {
            group,
            to,
            from,
            reducer: r,
        }
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Presentation {}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Presentation(gens={}, relations={:?})",
            self.generator_count(),
            self.relations()
        )
    }
}

/// Diagonal form of a presentation together with the comparison maps.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub group: Presentation,
    pub to: Homo,
    pub from: Homo,
    reducer: Reducer,
}

impl Normalized {
    /// Canonical coordinates of an element: each reduced modulo its order.
    pub fn canonical(&self, v: &[Int]) -> Vec<Int> {
        self.reducer.reduce(v)
    }

    pub fn orders(&self) -> &[Int] {
        &self.reducer.orders
    }
}

/// A homomorphism between presented groups.
#[derive(Clone, Debug)]
pub struct Homo {
    source: Presentation,
    target: Presentation,
    matrix: Matrix,
}

impl Homo {
    /// Checks the shape and that relations are sent to relations.
    pub fn new(source: Presentation, target: Presentation, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            bail!(
                Dimension,
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generator_count(),
                source.generator_count()
            );
        }
        let images = matrix.mul(source.relations());
        for (j, c) in images.columns().enumerate() {
            if !target.relation_lattice().contains(&c) {
                bail!(IllDefined, "relation {j} of the source is not sent to zero");
            }
        }
        Ok(Homo {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn new_unchecked(source: Presentation, target: Presentation, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.generator_count());
        debug_assert_eq!(matrix.cols(), source.generator_count());
        Homo {
            source,
            target,
            matrix,
        }
    }

    pub fn zero(source: Presentation, target: Presentation) -> Self {
        let m = Matrix::zeros(target.generator_count(), source.generator_count());
        Homo::new_unchecked(source, target, m)
    }

    pub fn identity(p: &Presentation) -> Self {
        Homo::new_unchecked(p.clone(), p.clone(), Matrix::identity(p.generator_count()))
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homo) -> Result<Homo> {
        if !self.target.same_as(&next.source) {
            bail!(AmbientMismatch, "cannot compose: target and source differ");
        }
        Ok(Homo::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            next.matrix.mul(&self.matrix),
        ))
    }

    pub fn add(&self, other: &Homo) -> Result<Homo> {
        if !self.source.same_as(&other.source) || !self.target.same_as(&other.target) {
            bail!(AmbientMismatch, "cannot add maps with different source or target");
        }
        Ok(Homo::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
        ))
    }

    /// Same matrix viewed between other presentations, rechecking well-definedness.
    pub fn retarget(&self, source: Presentation, target: Presentation) -> Result<Homo> {
        Homo::new(source, target, self.matrix.clone())
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix
            .columns()
            .all(|c| self.target.relation_lattice().contains(&c))
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        image(self).is_whole()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Equality as maps: every generator has equal images.
    pub fn same_map(&self, other: &Homo) -> bool {
        self.source.same_as(&other.source)
            && self.target.same_as(&other.target)
            && (0..self.source.generator_count())
                .all(|j| self.target.elements_equal(&self.matrix.column(j), &other.matrix.column(j)))
    }
}

/// A subgroup of a presented group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: Presentation,
    lattice: Lattice,
    presentation: Presentation,
    gens: Matrix,
    reducer: Reducer,
}

impl Subgroup {
    fn from_lattice(ambient: Presentation, lattice: Lattice) -> Subgroup {
        let basis = lattice.basis();
        let rel = ambient.relation_lattice().basis();
        let x: Vec<Vec<Int>> = rel
            .columns()
            .map(|c| lattice.coords(&c).expect("relations lie in the lifted lattice"))
            .collect();
        let x = Matrix::from_columns(lattice.rank(), &x);
        let reducer = Reducer::new(lattice.rank(), &x);
        let gens = basis.mul(&reducer.back);
        let presentation = Presentation::from_orders(&reducer.orders);
        Subgroup {
            ambient,
            lattice,
            presentation,
            gens,
            reducer,
        }
    }

    /// Subgroup generated by the columns of `gens`.
    pub fn generated(ambient: &Presentation, gens: &Matrix) -> Result<Subgroup> {
        if gens.rows() != ambient.generator_count() {
            bail!(
                Dimension,
                "generators have {} rows, ambient has {} generators",
                gens.rows(),
                ambient.generator_count()
            );
        }
        let lattice = ambient.relation_lattice().add_generators(gens);
        Ok(Subgroup::from_lattice(ambient.clone(), lattice))
    }

    pub fn generated_by(ambient: &Presentation, elements: &[Vec<Int>]) -> Result<Subgroup> {
        let g = Matrix::from_columns(ambient.generator_count(), elements);
        Subgroup::generated(ambient, &g)
    }

    pub fn whole(ambient: &Presentation) -> Subgroup {
        Subgroup::from_lattice(ambient.clone(), Lattice::full(ambient.generator_count()))
    }

    pub fn zero(ambient: &Presentation) -> Subgroup {
        Subgroup::from_lattice(ambient.clone(), ambient.relation_lattice().clone())
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }

    /// The lifted lattice `H + L` in `Z^n`.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Presentation of the subgroup on a minimal generating set.
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Generators in ambient coordinates, one per column.
    pub fn generators(&self) -> &Matrix {
        &self.gens
    }

    pub fn inclusion(&self) -> Homo {
        Homo::new_unchecked(self.presentation.clone(), self.ambient.clone(), self.gens.clone())
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.lattice.contains(v)
    }

    /// Canonical coordinates of `v` in the subgroup presentation.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        let c = self.lattice.coords(v)?;
        Some(self.reducer.reduce(&c))
    }

    pub fn is_zero(&self) -> bool {
        &self.lattice == self.ambient.relation_lattice()
    }

    pub fn is_whole(&self) -> bool {
        self.lattice.is_full()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient.same_as(&other.ambient) && other.lattice.contains_lattice(&self.lattice)
    }

    fn check_ambient(&self, other: &Subgroup) -> Result<()> {
        if !self.ambient.same_as(&other.ambient) {
            bail!(AmbientMismatch, "subgroups live in different groups");
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(other)?;
        Ok(Subgroup::from_lattice(self.ambient.clone(), self.lattice.sum(&other.lattice)))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(other)?;
        Ok(Subgroup::from_lattice(
            self.ambient.clone(),
            self.lattice.intersect(&other.lattice),
        ))
    }

    /// Same lifted lattice viewed in another presentation on the same generators.
    pub fn transport(&self, ambient: &Presentation) -> Result<Subgroup> {
        if ambient.generator_count() != self.ambient.generator_count() {
            bail!(Dimension, "cannot transport a subgroup across generator counts");
        }
        Subgroup::generated(ambient, self.lattice.basis())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.same_as(&other.ambient) && self.lattice == other.lattice
    }
}

impl Eq for Subgroup {}

pub fn sum(s: &Subgroup, t: &Subgroup) -> Result<Subgroup> {
    s.sum(t)
}

pub fn intersect(s: &Subgroup, t: &Subgroup) -> Result<Subgroup> {
    s.intersect(t)
}

pub fn kernel(f: &Homo) -> Subgroup {
    let l = f.target.relation_lattice().preimage(&f.matrix);
    Subgroup::from_lattice(f.source.clone(), l)
}

pub fn image(f: &Homo) -> Subgroup {
    let l = f.target.relation_lattice().add_generators(&f.matrix);
    Subgroup::from_lattice(f.target.clone(), l)
}

pub fn preimage(f: &Homo, s: &Subgroup) -> Result<Subgroup> {
    if !s.ambient.same_as(&f.target) {
        bail!(AmbientMismatch, "subgroup does not live in the target of the map");
    }
    Ok(Subgroup::from_lattice(f.source.clone(), s.lattice.preimage(&f.matrix)))
}

/// `ambient / s` on the ambient generators, with the projection.
pub fn quotient(s: &Subgroup) -> (Presentation, Homo) {
    let mut q = Presentation::new(s.ambient.generator_count(), s.lattice.basis().clone())
        .expect("shape is consistent");
    if let Some(l) = s.ambient.labels() {
        q = q.with_labels(l.to_vec()).expect("label count matches");
    }
    let proj = Homo::new_unchecked(
        s.ambient.clone(),
        q.clone(),
        Matrix::identity(s.ambient.generator_count()),
    );
    (q, proj)
}

/// The map `source/s_src -> target/s_tgt` induced by `f`.
pub fn induced(f: &Homo, s_src: &Subgroup, s_tgt: &Subgroup) -> Result<Homo> {
    if !s_src.ambient.same_as(&f.source) || !s_tgt.ambient.same_as(&f.target) {
        bail!(AmbientMismatch, "subgroups do not live in source and target of the map");
    }
    for c in s_src.lattice.basis().columns() {
        if !s_tgt.lattice.contains(&f.apply(&c)) {
            bail!(Precondition, "map does not send the source subgroup into the target subgroup");
        }
    }
    let (qs, _) = quotient(s_src);
    let (qt, _) = quotient(s_tgt);
    Ok(Homo::new_unchecked(qs, qt, f.matrix.clone()))
}

/// True iff `image(f) == kernel(g)`.
pub fn is_exact(f: &Homo, g: &Homo) -> Result<bool> {
    if !f.target.same_as(&g.source) {
        bail!(AmbientMismatch, "maps are not composable");
    }
    Ok(image(f) == kernel(g))
}

/// A subquotient `num / den` of a presented group, presented on a minimal
/// generating set with canonical coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    num: Subgroup,
    den: Subgroup,
    group: Presentation,
    gens: Matrix,
    reducer: Reducer,
}

impl Subquotient {
    pub fn new(num: Subgroup, den: Subgroup) -> Result<Subquotient> {
        num.check_ambient(&den)?;
        if !den.is_subgroup_of(&num) {
            bail!(Precondition, "denominator is not contained in numerator");
        }
        let k = num.presentation.generator_count();
        let mut rels: Vec<Vec<Int>> = num.presentation.relations().columns().collect();
        for c in den.gens.columns() {
            rels.push(num.coordinates(&c).expect("den inside num"));
        }
        let x = Matrix::from_columns(k, &rels);
        let reducer = Reducer::new(k, &x);
        let gens = num.gens.mul(&reducer.back);
        let group = Presentation::from_orders(&reducer.orders);
        Ok(Subquotient {
            num,
            den,
            group,
            gens,
            reducer,
        })
    }

    pub fn numerator(&self) -> &Subgroup {
        &self.num
    }

    pub fn denominator(&self) -> &Subgroup {
        &self.den
    }

    pub fn group(&self) -> &Presentation {
        &self.group
    }

    /// Representatives of the generators, in ambient coordinates.
    pub fn generators(&self) -> &Matrix {
        &self.gens
    }

    pub fn ambient(&self) -> &Presentation {
        self.num.ambient()
    }

    /// Class of `v` in canonical coordinates; `None` if `v` is not in the numerator.
    pub fn project(&self, v: &[Int]) -> Option<Vec<Int>> {
        let c = self.num.coordinates(v)?;
        Some(self.reducer.reduce(&c))
    }

    /// Ambient representative of an element given in coordinates.
    pub fn lift(&self, coords: &[Int]) -> Vec<Int> {
        self.gens.mul_vec(coords)
    }

    /// Subgroup of the subquotient given by a subgroup of the ambient lying
    /// between denominator and numerator (intersected with the numerator).
    pub fn subgroup_from_lift(&self, lifted: &Subgroup) -> Result<Subgroup> {
        let l = lifted.intersect(&self.num)?;
        let elems: Vec<Vec<Int>> = l
            .generators()
            .columns()
            .map(|c| self.project(&c).expect("inside numerator"))
            .collect();
        Subgroup::generated_by(&self.group, &elems)
    }

    /// Preimage in the ambient (between denominator and numerator) of a subgroup.
    pub fn lift_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        if !s.ambient().same_as(&self.group) {
            bail!(AmbientMismatch, "subgroup does not live in this subquotient");
        }
        let g = self.gens.mul(s.generators());
        Subgroup::generated(self.ambient(), &g)?.sum(&self.den)
    }

    /// Matrix of the map induced by `f` into another subquotient.
    pub fn map_to(&self, f: &Homo, other: &Subquotient) -> Result<Homo> {
        if !f.source().same_as(self.ambient()) || !f.target().same_as(other.ambient()) {
            bail!(AmbientMismatch, "map does not connect the two ambient groups");
        }
        let mut cols = Vec::with_capacity(self.gens.cols());
        for g in self.gens.columns() {
            let img = f.apply(&g);
            match other.project(&img) {
                Some(c) => cols.push(c),
                None => bail!(Precondition, "map does not send numerator into numerator"),
            }
        }
        for g in self.den.generators().columns() {
            let img = f.apply(&g);
            if !other.den.contains(&img) {
                bail!(Precondition, "map does not send denominator into denominator");
            }
        }
        let m = Matrix::from_columns(other.group.generator_count(), &cols);
        Homo::new(self.group.clone(), other.group.clone(), m)
    }
}

/// Direct sum `a + b` with generators of `a` first; labels are kept when both carry them.
pub fn direct_sum(a: &Presentation, b: &Presentation) -> Presentation {
    let rel = a.relations().block_diag(b.relations());
    let p = Presentation::new(a.generator_count() + b.generator_count(), rel)
        .expect("shape is consistent");
    match (a.labels(), b.labels()) {
        (Some(x), Some(y)) => {
            let mut l = x.to_vec();
            l.extend(y.iter().cloned());
            p.with_labels(l).expect("label count matches")
        }
        _ => p,
    }
}

/// Nonnegative integer vectors with entries below the given bounds, in
/// lexicographic order; used to enumerate finite groups.
pub fn enumerate_box(bounds: &[Int]) -> Vec<Vec<Int>> {
    let mut out = vec![Vec::new()];
    for b in bounds {
        let mut next = Vec::new();
        for v in &out {
            let mut k = Int::zero();
            while &k < b {
                let mut w = v.clone();
                w.push(k.clone());
                next.push(w);
                k += 1;
            }
        }
        out = next;
    }
    out
}

/// All elements of a finite group as canonical coordinate vectors in its
/// normal form, or `None` if the group is infinite or larger than `limit`.
pub fn enumerate_elements(p: &Presentation, limit: u64) -> Option<(Normalized, Vec<Vec<Int>>)> {
    let n = p.normal_form();
    if n.orders().iter().any(|d| d.is_zero()) {
        return None;
    }
    let order = n.orders().iter().fold(Int::one(), |a, b| a * b);
    if order > Int::from(limit) {
        return None;
    }
    let elems = enumerate_box(n.orders());
    Some((n, elems))
}

impl Invariants {
    /// Presentation realizing this isomorphism type.
    pub fn realize(&self) -> Presentation {
        let mut o = self.torsion.clone();
        o.extend(core::iter::repeat_n(Int::zero(), self.free_rank));
        Presentation::from_orders(&o)
    }
}

/// Sign-normalized copy of a vector for display.
pub fn abs_vec(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| x.abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;

    fn z() -> Presentation {
        Presentation::free(1)
    }

    fn times(k: i64, s: &Presentation, t: &Presentation) -> Homo {
        Homo::new(s.clone(), t.clone(), Matrix::from_i64(1, 1, &[k])).unwrap()
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(Presentation::cyclic(2).invariants().torsion, ivec(&[2]));
        let p = Presentation::new(2, Matrix::from_i64(2, 1, &[2, 0])).unwrap();
        let inv = p.invariants();
        assert_eq!((inv.free_rank, inv.torsion), (1, ivec(&[2])));
        let p = Presentation::new(2, Matrix::from_i64(2, 2, &[2, 4, 6, 8])).unwrap();
        let inv = p.invariants();
        assert_eq!((inv.free_rank, inv.torsion), (0, ivec(&[2, 4])));
    }

    #[test]
    fn kernel_image_examples() {
        let zz = z();
        assert!(kernel(&times(2, &zz, &zz)).is_zero());
        let z4 = Presentation::cyclic(4);
        let im = image(&times(2, &zz, &z4));
        assert_eq!(im.presentation().invariants().torsion, ivec(&[2]));
        let (q, proj) = quotient(&im);
        assert_eq!(q.invariants().torsion, ivec(&[2]));
        assert!(proj.is_surjective());
        assert!(kernel(&proj) == im);
    }

    #[test]
    fn intersect_is_lcm() {
        let zz = z();
        let a = Subgroup::generated_by(&zz, &[ivec(&[2])]).unwrap();
        let b = Subgroup::generated_by(&zz, &[ivec(&[3])]).unwrap();
        let c = Subgroup::generated_by(&zz, &[ivec(&[6])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), c);
    }

    #[test]
    fn quotient_examples() {
        let zz = z();
        let two = Subgroup::generated_by(&zz, &[ivec(&[2])]).unwrap();
        assert_eq!(quotient(&two).0.invariants().torsion, ivec(&[2]));
        let (q, proj) = quotient(&Subgroup::zero(&zz));
        assert!(q.same_as(&zz));
        assert!(proj.same_map(&Homo::identity(&zz)));
    }

    #[test]
    fn induced_examples() {
        let zz = z();
        let two = Subgroup::generated_by(&zz, &[ivec(&[2])]).unwrap();
        let id = Homo::identity(&zz);
        let f = induced(&id, &two, &two).unwrap();
        assert!(f.is_isomorphism());
        let four = Subgroup::generated_by(&zz, &[ivec(&[4])]).unwrap();
        let g = induced(&times(2, &zz, &zz), &Subgroup::zero(&zz), &four).unwrap();
        assert_eq!(g.target().invariants().torsion, ivec(&[4]));
        let v = g.apply(&ivec(&[1]));
        assert!(!g.target().is_zero_element(&v));
        assert!(g.target().is_zero_element(&v.iter().map(|x| x * 2).collect::<Vec<_>>()));
        assert!(matches!(
            induced(&id, &two, &four),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn exactness_examples() {
        let zz = z();
        let z2 = Presentation::cyclic(2);
        let f = times(2, &zz, &zz);
        let g = Homo::new(zz.clone(), z2.clone(), Matrix::from_i64(1, 1, &[1])).unwrap();
        assert!(is_exact(&f, &g).unwrap());
        let zero_in = Homo::zero(Presentation::zero(), zz.clone());
        assert!(is_exact(&zero_in, &f).unwrap());
        let id2 = Homo::identity(&z2);
        assert!(!is_exact(&id2, &id2).unwrap());
        assert!(is_exact(&f, &f).is_ok());
        assert!(is_exact(&id2, &f).is_err());
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        let z2 = Presentation::cyclic(2);
        let zz = z();
        assert!(matches!(
            Homo::new(z2, zz, Matrix::from_i64(1, 1, &[1])),
            Err(Error::IllDefined(_))
        ));
    }

    #[test]
    fn subquotient_projection() {
        let z4 = Presentation::cyclic(4);
        let whole = Subgroup::whole(&z4);
        let twice = Subgroup::generated_by(&z4, &[ivec(&[2])]).unwrap();
        let sq = Subquotient::new(whole, twice.clone()).unwrap();
        assert_eq!(sq.group().invariants().torsion, ivec(&[2]));
        let a = sq.project(&ivec(&[3])).unwrap();
        assert!(!sq.group().is_zero_element(&a));
        let b = sq.project(&ivec(&[2])).unwrap();
        assert!(sq.group().is_zero_element(&b));
        let sq2 = Subquotient::new(twice, Subgroup::zero(&z4)).unwrap();
        assert_eq!(sq2.group().invariants().torsion, ivec(&[2]));
        assert!(sq2.project(&ivec(&[1])).is_none());
    }

    #[test]
    fn normal_form_round_trip() {
        let p = Presentation::new(2, Matrix::from_i64(2, 2, &[2, 4, 6, 8])).unwrap();
        let n = p.normal_form();
        assert!(n.to.then(&n.from).unwrap().same_map(&Homo::identity(&p)));
        assert!(n.from.then(&n.to).unwrap().same_map(&Homo::identity(&n.group)));
    }
}
