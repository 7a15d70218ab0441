//! Mod-2 Chow rings of products of projective spaces with `Sq²`.
//!
//! `Ch = Z/2[h_1, ..., h_k] / (h_i^{n_i + 1})`. On reductions of integral
//! classes `Sq¹ = 0`, so the Cartan formula makes `Sq²` the derivation with
//! `Sq²(h_i) = h_i²`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::exactalg::{Homo, Presentation};
use crate::filtcomplex::{truncate, ChainMap, CochainComplex, FilteredComplex};
use crate::fixtures::Fixture;
use crate::matrix::{Int, Matrix};
use crate::specseq::page;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowRing {
    names: Vec<String>,
    bounds: Vec<u32>,
    /// Every group is zero.
    trivial: bool,
}

impl ChowRing {
    /// Variables with `h_i^{bound_i + 1} = 0`.
    pub fn new(vars: &[(&str, u32)]) -> Arc<Self> {
        Arc::new(ChowRing {
            names: vars.iter().map(|(n, _)| n.to_string()).collect(),
            bounds: vars.iter().map(|&(_, b)| b).collect(),
            trivial: false,
        })
    }

    /// `Ch(P^n)`.
    pub fn projective(n: u32) -> Arc<Self> {
        ChowRing::new(&[("h", n)])
    }

    /// `Ch(P^{n_1} x ... x P^{n_k})`.
    pub fn product(dims: &[u32]) -> Arc<Self> {
        let names: Vec<String> = (1..=dims.len()).map(|i| alloc::format!("h{i}")).collect();
        Arc::new(ChowRing {
            names,
            bounds: dims.to_vec(),
            trivial: false,
        })
    }

    pub fn zero() -> Arc<Self> {
        Arc::new(ChowRing {
            names: Vec::new(),
            bounds: Vec::new(),
            trivial: true,
        })
    }

    /// The same ring with an extra variable `s` of square zero appended.
    pub fn with_suspension(&self) -> Arc<Self> {
        let mut r = self.clone();
        r.names.push("s".to_string());
        r.bounds.push(1);
        Arc::new(r)
    }

    pub fn variables(&self) -> usize {
        self.bounds.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn top_degree(&self) -> i64 {
        if self.trivial {
            return -1;
        }
        self.bounds.iter().map(|&b| b as i64).sum()
    }

    pub fn admits(&self, m: &[u32]) -> bool {
        !self.trivial && m.len() == self.bounds.len() && m.iter().zip(&self.bounds).all(|(e, b)| e <= b)
    }

    /// Monomials of codimension `c`, in lexicographic order.
    pub fn basis(&self, c: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if self.trivial || c < 0 {
            return out;
        }
        let mut cur = vec![0u32; self.bounds.len()];
        fn rec(b: &[u32], k: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if k == b.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=b[k].min(left.max(0) as u32) {
                cur[k] = e;
                rec(b, k + 1, left - e as i64, cur, out);
            }
            cur[k] = 0;
        }
        rec(&self.bounds, 0, c, &mut cur, &mut out);
        out
    }

    pub fn rank(&self, c: i64) -> usize {
        self.basis(c).len()
    }

    pub fn display_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { alloc::format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A homogeneous class: a set of monomials with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    ring: Arc<ChowRing>,
    codim: i64,
    support: BTreeSet<Monomial>,
}

fn degree(m: &[u32]) -> i64 {
    m.iter().map(|&e| e as i64).sum()
}

impl ChowClass {
    pub fn zero(ring: &Arc<ChowRing>, codim: i64) -> Self {
        ChowClass {
            ring: ring.clone(),
            codim,
            support: BTreeSet::new(),
        }
    }

    pub fn one(ring: &Arc<ChowRing>) -> Self {
        ChowClass::monomial(ring, &vec![0; ring.variables()])
    }

    /// A monomial; zero if it exceeds the nilpotency bounds.
    pub fn monomial(ring: &Arc<ChowRing>, m: &[u32]) -> Self {
        assert_eq!(m.len(), ring.variables(), "monomial has the wrong number of variables");
        let mut c = ChowClass::zero(ring, degree(m));
        if ring.admits(m) {
            c.support.insert(m.to_vec());
        }
        c
    }

    /// `h_i^e`.
    pub fn power(ring: &Arc<ChowRing>, var: usize, e: u32) -> Self {
        let mut m = vec![0; ring.variables()];
        m[var] = e;
        ChowClass::monomial(ring, &m)
    }

    /// Sum of monomials, all of codimension `codim`.
    pub fn from_monomials(ring: &Arc<ChowRing>, codim: i64, ms: &[Monomial]) -> Result<Self> {
        let mut c = ChowClass::zero(ring, codim);
        for m in ms {
            if m.len() != ring.variables() {
                bail!(Dimension, "monomial has {} exponents for {} variables", m.len(), ring.variables());
            }
            if degree(m) != codim {
                bail!(Precondition, "inhomogeneous input: monomial of codimension {} in a class of codimension {codim}", degree(m));
            }
            if ring.admits(m) && !c.support.insert(m.clone()) {
                c.support.remove(m);
            }
        }
        Ok(c)
    }

    /// Class from coordinates in `ring.basis(codim)`, read mod 2.
    pub fn from_coordinates(ring: &Arc<ChowRing>, codim: i64, v: &[Int]) -> Self {
        let basis = ring.basis(codim);
        let two = Int::from(2);
        let ms: Vec<Monomial> = basis
            .into_iter()
            .zip(v)
            .filter(|(_, x)| (*x % &two) != Int::from(0))
            .map(|(m, _)| m)
            .collect();
        ChowClass::from_monomials(ring, codim, &ms).expect("basis monomials")
    }

    pub fn coordinates(&self) -> Vec<Int> {
        self.ring
            .basis(self.codim)
            .iter()
            .map(|m| Int::from(self.support.contains(m) as i64))
            .collect()
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn codim(&self) -> i64 {
        self.codim
    }

    pub fn support(&self) -> &BTreeSet<Monomial> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        if self.ring != other.ring {
            bail!(AmbientMismatch, "classes live in different rings");
        }
        if self.is_zero() && other.is_zero() {
            return Ok(ChowClass::zero(&self.ring, self.codim.max(other.codim)));
        }
        if self.codim != other.codim && !self.is_zero() && !other.is_zero() {
            bail!(Precondition, "cannot add classes of codimension {} and {}", self.codim, other.codim);
        }
        let codim = if self.is_zero() { other.codim } else { self.codim };
        let support = self.support.symmetric_difference(&other.support).cloned().collect();
        Ok(ChowClass {
            ring: self.ring.clone(),
            codim,
            support,
        })
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        if self.ring != other.ring {
            bail!(AmbientMismatch, "classes live in different rings");
        }
        let mut out = ChowClass::zero(&self.ring, self.codim + other.codim);
        for a in &self.support {
            for b in &other.support {
                let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.ring.admits(&m) && !out.support.insert(m.clone()) {
                    out.support.remove(&m);
                }
            }
        }
        Ok(out)
    }

    /// Image in a ring with the same variables and smaller or equal bounds.
    pub fn restrict(&self, ring: &Arc<ChowRing>) -> Result<ChowClass> {
        if ring.variables() != self.ring.variables() {
            bail!(AmbientMismatch, "rings have different variables");
        }
        let ms: Vec<Monomial> = self.support.iter().cloned().collect();
        ChowClass::from_monomials(ring, self.codim, &ms)
    }

    /// The same class in `with_suspension()` of its ring.
    pub fn extend(&self, ring: &Arc<ChowRing>) -> Result<ChowClass> {
        if ring.variables() != self.ring.variables() + 1 {
            bail!(AmbientMismatch, "target ring must have exactly one more variable");
        }
        let ms: Vec<Monomial> = self
            .support
            .iter()
            .map(|m| {
                let mut m = m.clone();
                m.push(0);
                m
            })
            .collect();
        ChowClass::from_monomials(ring, self.codim, &ms)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.support.iter().map(|m| self.ring.display_monomial(m)).collect();
        parts.join(" + ")
    }
}

/// `Sq²` via the Cartan formula: `Sq²(h^e) = Σ e_i h^{e + δ_i}`.
pub fn sq2(x: &ChowClass) -> ChowClass {
    let ring = &x.ring;
    let mut out = ChowClass::zero(ring, x.codim + 1);
    for m in &x.support {
        for i in 0..m.len() {
            if m[i] % 2 == 0 {
                continue;
            }
            let mut n = m.clone();
            n[i] += 1;
            if ring.admits(&n) && !out.support.insert(n.clone()) {
                out.support.remove(&n);
            }
        }
    }
    out
}

/// `Sq²(x) + c1 · x`.
pub fn twisted_phi(c1: &ChowClass, x: &ChowClass) -> Result<ChowClass> {
    if c1.codim != 1 {
        bail!(Precondition, "twisting class must have codimension 1, got {}", c1.codim);
    }
    sq2(x).add(&c1.mul(x)?)
}

/// Matrix of `twisted_phi` from codimension `k` to `k + 1` on monomial bases.
pub fn phi_matrix(ring: &Arc<ChowRing>, c1: &ChowClass, k: i64) -> Result<Matrix> {
    let cols: Vec<Vec<Int>> = ring
        .basis(k)
        .iter()
        .map(|m| twisted_phi(c1, &ChowClass::monomial(ring, m)).map(|y| y.coordinates()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(ring.rank(k + 1), &cols))
}

#[derive(Clone, Debug)]
pub struct SuspensionReport {
    pub lhs: ChowClass,
    pub rhs: ChowClass,
}

impl SuspensionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Compares `Sq²(x·s)` with `Sq²(x)·s` after adjoining `s` with `s² = 0`.
pub fn suspension_check(x: &ChowClass) -> Result<SuspensionReport> {
    let ring = x.ring.with_suspension();
    let xs = x.extend(&ring)?;
    let s = ChowClass::power(&ring, ring.variables() - 1, 1);
    let lhs = sq2(&xs.mul(&s)?);
    let rhs = sq2(&xs).mul(&s)?;
    Ok(SuspensionReport { lhs, rhs })
}

/// A filtered complex `Ch^p -> Ch^{p+1} -> Ch^{p+2}` with `Ch^k` at level `k`
/// and differential `twisted_phi`, so that its first differential is the
/// operation itself.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub ring: Arc<ChowRing>,
    pub c1: ChowClass,
    pub codims: Vec<i64>,
    pub filtered: FilteredComplex,
}

fn mod2_group(rank: usize) -> Presentation {
    Presentation::from_orders(&vec![Int::from(2); rank])
}

pub fn diagonal_differential_assembly(ring: &Arc<ChowRing>, c1: &ChowClass, band: i64) -> Result<Assembly> {
    if c1.codim != 1 {
        bail!(Precondition, "twisting class must have codimension 1, got {}", c1.codim);
    }
    if c1.ring != *ring {
        bail!(AmbientMismatch, "twisting class lives in another ring");
    }
    let top = ring.top_degree().max(0);
    if band < 0 || band > top {
        bail!(Precondition, "empty band: codimension {band} is outside 0..={top}");
    }
    let codims: Vec<i64> = (band..=(band + 2).min(top)).collect();
    let groups: Vec<Presentation> = codims.iter().map(|&k| mod2_group(ring.rank(k))).collect();
    let mats = codims[..codims.len() - 1]
        .iter()
        .map(|&k| phi_matrix(ring, c1, k))
        .collect::<Result<Vec<_>>>()?;
    let c = CochainComplex::from_matrices(band, groups, mats)?;
    let filtered = FilteredComplex::diagonal(c, |i| i)?;
    Ok(Assembly {
        ring: ring.clone(),
        c1: c1.clone(),
        codims,
        filtered,
    })
}

/// Checks that the first page differential at `(k, 0)` equals
/// `twisted_phi` on every basis monomial.
pub fn verify_assembly(a: &Assembly) -> Result<bool> {
    let p = page(&a.filtered, 1)?;
    for w in a.codims.windows(2) {
        let k = w[0];
        let src = p.entry(k, 0).expect("entry in range");
        let tgt = p.entry(k + 1, 0).expect("entry in range");
        let d = p.differential(k, 0);
        for (j, m) in a.ring.basis(k).iter().enumerate() {
            let mut e = vec![Int::from(0); a.ring.rank(k)];
            e[j] = Int::from(1);
            let via_page = d.apply(&src.project(&e).expect("cocycle"));
            let y = twisted_phi(&a.c1, &ChowClass::monomial(&a.ring, m))?;
            let direct = tgt.project(&y.coordinates()).expect("cocycle");
            if !tgt.group().elements_equal(&via_page, &direct) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The two-cell filtered complex carrying the recorded `SL_3` band: the class
/// `ξ` of `H^1` with mod-2 coefficients in weight 2 at level 2, the class `θ`
/// in degree 2 at level 3, and the differential between them an isomorphism.
#[derive(Clone, Debug)]
pub struct Sl3Fixture {
    pub fixture: Fixture,
    pub xi_label: String,
    pub theta_label: String,
}

pub const XI_LABEL: &str = "xi = {t^12} + {t_13}";
pub const THETA_LABEL: &str = "theta";

/// The layer maps `m` to `reduction · ξ`.
pub fn sl3_with_reduction(reduction: i64) -> Sl3Fixture {
    let xi = Presentation::cyclic(2).with_labels(vec![XI_LABEL.to_string()]).expect("label");
    let theta = Presentation::cyclic(2).with_labels(vec![THETA_LABEL.to_string()]).expect("label");
    let c = CochainComplex::from_matrices(1, vec![xi, theta], vec![Matrix::from_i64(1, 1, &[1])]).expect("complex");
    let f = FilteredComplex::diagonal(c, |i| i + 1).expect("filtration");
    let gr = truncate(&f, 2).expect("truncation").graded_piece(2);
    let layer = CochainComplex::from_matrices(1, vec![Presentation::free(1), Presentation::zero()], vec![Matrix::zeros(0, 1)])
        .expect("layer");
    let red = ChainMap::from_matrices(
        layer.clone(),
        gr.clone(),
        vec![
            Matrix::from_i64(gr.group(1).generator_count(), 1, &[reduction]),
            Matrix::zeros(gr.group(2).generator_count(), 0),
        ],
    )
    .expect("reduction");
    Sl3Fixture {
        fixture: Fixture {
            name: "sl3".to_string(),
            filtered: f,
            d: 2,
            layer,
            red,
            declared_s: None,
        },
        xi_label: XI_LABEL.to_string(),
        theta_label: THETA_LABEL.to_string(),
    }
}

pub fn sl3_fixture() -> Sl3Fixture {
    sl3_with_reduction(1)
}

/// `d_1: E_1^{2,-1} -> E_1^{3,-1}` of the fixture, i.e. the second-page
/// differential out of degree 1, weight 2 in report indexing.
pub fn sl3_differential(fx: &Sl3Fixture) -> Result<Homo> {
    Ok(page(&fx.fixture.filtered, 1)?.differential(2, -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;
    use crate::specseq::page;

    #[test]
    fn sq2_examples() {
        let r = ChowRing::projective(4);
        let h = |e| ChowClass::power(&r, 0, e);
        assert_eq!(sq2(&h(1)), h(2));
        assert_eq!(sq2(&h(3)), h(4));
        assert!(sq2(&h(2)).is_zero());
        assert!(sq2(&ChowClass::one(&r)).is_zero());
    }

    #[test]
    fn twisted_examples() {
        let r = ChowRing::projective(4);
        let h = |e| ChowClass::power(&r, 0, e);
        let zero = ChowClass::zero(&r, 1);
        assert_eq!(twisted_phi(&zero, &h(3)).unwrap(), sq2(&h(3)));
        assert!(twisted_phi(&h(1), &h(1)).unwrap().is_zero());
        assert!(twisted_phi(&h(2), &h(1)).is_err());
    }

    #[test]
    fn suspension_examples() {
        let r = ChowRing::projective(4);
        let rep = suspension_check(&ChowClass::power(&r, 0, 1)).unwrap();
        assert!(rep.holds());
        let rs = r.with_suspension();
        assert_eq!(rep.lhs, ChowClass::monomial(&rs, &[2, 1]));
        assert!(suspension_check(&ChowClass::one(&r)).unwrap().lhs.is_zero());
        assert!(suspension_check(&ChowClass::power(&r, 0, 2)).unwrap().rhs.is_zero());
    }

    #[test]
    fn assembly_examples() {
        let r = ChowRing::projective(4);
        let a = diagonal_differential_assembly(&r, &ChowClass::zero(&r, 1), 1).unwrap();
        assert!(verify_assembly(&a).unwrap());
        assert_eq!(phi_matrix(&r, &ChowClass::zero(&r, 1), 1).unwrap(), Matrix::from_i64(1, 1, &[1]));
        let h1 = ChowClass::power(&r, 0, 1);
        assert_eq!(twisted_phi(&h1, &ChowClass::power(&r, 0, 2)).unwrap(), ChowClass::power(&r, 0, 3));
        let a = diagonal_differential_assembly(&r, &h1, 2).unwrap();
        assert!(verify_assembly(&a).unwrap());
        assert!(diagonal_differential_assembly(&r, &h1, 9).is_err());
        let z = ChowRing::zero();
        let a = diagonal_differential_assembly(&z, &ChowClass::zero(&z, 1), 0).unwrap();
        assert!(a.filtered.complex().groups().iter().all(Presentation::is_trivial));
    }

    #[test]
    fn sl3_band() {
        let fx = sl3_fixture();
        let p1 = page(&fx.fixture.filtered, 1).unwrap();
        assert_eq!(p1.group(2, -1).invariants().torsion, ivec(&[2]));
        assert_eq!(p1.group(3, -1).invariants().torsion, ivec(&[2]));
        assert!(sl3_differential(&fx).unwrap().is_isomorphism());
        assert!(page(&fx.fixture.filtered, 2).unwrap().is_zero());
    }
}
