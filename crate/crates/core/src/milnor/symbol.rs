//! Mod-2 Milnor K-theory symbols, their normal forms and tame symbols.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::field::{Elem, FiniteField};
use super::poly::{Place, PlaceData, Poly, PolyRing, RatFn};
use crate::error::{bail, Result};
use crate::exactalg::Presentation;
use crate::lattice::solve;
use crate::matrix::{Int, Matrix};

/// A sum of symbols `{a_1, ..., a_n}` with coefficients in `Z/2`, kept with
/// sorted entries and sorted terms, repeated terms cancelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol<E> {
    weight: usize,
    terms: Vec<Vec<E>>,
}

impl<E: Ord + Clone> Symbol<E> {
    pub fn zero(weight: usize) -> Self {
        Symbol { weight, terms: Vec::new() }
    }

    pub fn new(weight: usize, terms: Vec<Vec<E>>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.len() != weight) {
            bail!(Dimension, "term of length {} in a symbol of weight {weight}", t.len());
        }
        let mut terms: Vec<Vec<E>> = terms
            .into_iter()
            .map(|mut t| {
                t.sort();
                t
            })
            .collect();
        terms.sort();
        let mut out: Vec<Vec<E>> = Vec::new();
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        Ok(Symbol { weight, terms: out })
    }

    pub fn single(entries: Vec<E>) -> Self {
        let n = entries.len();
        Symbol::new(n, vec![entries]).expect("one term of the right length")
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn terms(&self) -> &[Vec<E>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Symbol<E>) -> Result<Symbol<E>> {
        if self.weight != other.weight {
            bail!(Dimension, "cannot add symbols of weight {} and {}", self.weight, other.weight);
        }
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Symbol::new(self.weight, t)
    }
}

fn check_units(s: &Symbol<Elem>) -> Result<()> {
    if s.terms.iter().flatten().any(|e| e.is_zero()) {
        bail!(Domain, "symbols have nonzero entries");
    }
    Ok(())
}

/// Normal form over a finite field: `{}` or `0` in weight 0, `{g}` or `0`
/// in weight 1, and `0` above (mod squares only the square class matters,
/// and `{g, g} = 0` by a Steinberg relation).
pub fn normalize(field: &FiniteField, s: &Symbol<Elem>) -> Result<Symbol<Elem>> {
    check_units(s)?;
    let odd = match s.weight {
        0 => s.terms.len() % 2 == 1,
        1 => s.terms.iter().filter(|t| !field.is_square(t[0])).count() % 2 == 1,
        _ => false,
    };
    if !odd {
        return Ok(Symbol::zero(s.weight));
    }
    Ok(Symbol::single(vec![field.generator(); s.weight]))
}

/// Some `a` with `a` and `1 - a` both nonsquares; it exists for every odd `q`.
pub fn steinberg_witness(field: &FiniteField) -> Option<Elem> {
    field
        .units()
        .find(|&a| !field.is_square(a) && !field.is_square(field.sub(Elem::ONE, a)) && a != Elem::ONE)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KGroupMethod {
    /// All `n`-tuples of units modulo multilinearity, Steinberg and `2x`.
    BruteForce,
    /// Tuples of square-class representatives.
    SquareClasses,
}

/// `K^M_n(F_q)/2` with a generator for each tuple in `dictionary`.
#[derive(Clone, Debug)]
pub struct FiniteKGroup {
    pub field: Arc<FiniteField>,
    pub n: usize,
    pub method: KGroupMethod,
    pub presentation: Presentation,
    pub dictionary: Vec<Vec<Elem>>,
}

/// Largest generator count for the brute-force presentation.
pub const BRUTE_FORCE_GENERATORS: usize = 64;

fn tuple_index(field: &FiniteField, t: &[Elem]) -> usize {
    let m = (field.size() - 1) as usize;
    t.iter().fold(0, |acc, &e| acc * m + field.log(e).expect("unit") as usize)
}

impl FiniteKGroup {
    /// Coordinates of a symbol.
    pub fn class_of(&self, s: &Symbol<Elem>) -> Result<Vec<Int>> {
        check_units(s)?;
        if s.weight != self.n {
            bail!(Dimension, "symbol of weight {} in K_{}", s.weight, self.n);
        }
        let mut v = vec![Int::from(0); self.presentation.generator_count()];
        match self.method {
            KGroupMethod::BruteForce => {
                for t in &s.terms {
                    v[tuple_index(&self.field, t)] += 1;
                }
            }
            KGroupMethod::SquareClasses => {
                let nf = normalize(&self.field, s)?;
                if !nf.is_zero() {
                    v[0] = Int::from(1);
                }
            }
        }
        Ok(v)
    }

    pub fn normalize(&self, s: &Symbol<Elem>) -> Result<Symbol<Elem>> {
        let c = self.class_of(s)?;
        let nf = self.presentation.normal_form();
        let canon = nf.canonical(&c);
        let back = nf.from.apply(&canon);
        let terms: Vec<Vec<Elem>> = back
            .iter()
            .enumerate()
            .filter(|(_, x)| (*x % Int::from(2)) != Int::from(0))
            .map(|(i, _)| self.dictionary[i].clone())
            .collect();
        Symbol::new(self.n, terms)
    }
}

/// `K^M_n(F)/2` for a finite field, by brute force when small enough.
pub fn kgroup(field: &Arc<FiniteField>, n: usize) -> Result<FiniteKGroup> {
    check_odd(field.size())?;
    let m = (field.size() - 1) as usize;
    if m.checked_pow(n as u32).is_some_and(|g| g <= BRUTE_FORCE_GENERATORS) {
        return kgroup_bruteforce(field, n, None);
    }
    let (presentation, dictionary) = match n {
        0 => (Presentation::cyclic(2), vec![Vec::new()]),
        1 => (Presentation::cyclic(2), vec![vec![field.generator()]]),
        _ => {
            if steinberg_witness(field).is_none() {
                bail!(Consistency, "no Steinberg witness in F_{}", field.size());
            }
            (Presentation::zero(), Vec::new())
        }
    };
    Ok(FiniteKGroup {
        field: field.clone(),
        n,
        method: KGroupMethod::SquareClasses,
        presentation,
        dictionary,
    })
}

/// Brute-force presentation on all `n`-tuples of units. With `radius`,
/// multilinearity and Steinberg relations only use entries `g^k`, `k < radius`.
pub fn kgroup_bruteforce(field: &Arc<FiniteField>, n: usize, radius: Option<usize>) -> Result<FiniteKGroup> {
    let m = (field.size() - 1) as usize;
    let count = m.checked_pow(n as u32).filter(|&c| c <= 4096);
    let Some(count) = count else {
        bail!(Unsupported, "brute force over F_{} in weight {n} is too large", field.size());
    };
    let r = radius.unwrap_or(m).min(m);
    let tuples: Vec<Vec<Elem>> = (0..count)
        .map(|mut k| {
            let mut t = vec![Elem::ZERO; n];
            for slot in t.iter_mut().rev() {
                *slot = field.exp((k % m) as i64);
                k /= m;
            }
            t
        })
        .collect();
    let mut rels: Vec<Vec<Int>> = Vec::new();
    let unit = |i: usize| {
        let mut v = vec![Int::from(0); count];
        v[i] = Int::from(1);
        v
    };
    for i in 0..count {
        let mut v = unit(i);
        v[i] = Int::from(2);
        rels.push(v);
    }
    let small: Vec<Elem> = (0..r).map(|k| field.exp(k as i64)).collect();
    for t in &tuples {
        for pos in 0..n {
            // multilinearity in slot `pos`, for tuples whose entry there is `a`
            if field.log(t[pos]).is_some_and(|k| (k as usize) >= r) {
                continue;
            }
            for &b in &small {
                let a = t[pos];
                let mut tab = t.clone();
                tab[pos] = field.mul(a, b);
                let mut tb = t.clone();
                tb[pos] = b;
                let mut v = vec![Int::from(0); count];
                v[tuple_index(field, &tab)] += 1;
                v[tuple_index(field, t)] -= 1;
                v[tuple_index(field, &tb)] -= 1;
                rels.push(v);
            }
        }
        for pos in 0..n.saturating_sub(1) {
            let a = t[pos];
            if field.log(a).is_some_and(|k| (k as usize) >= r) || a == Elem::ONE {
                continue;
            }
            if t[pos + 1] == field.sub(Elem::ONE, a) {
                rels.push(unit(tuple_index(field, t)));
            }
        }
    }
    let presentation = Presentation::new(count, Matrix::from_columns(count, &rels))?;
    Ok(FiniteKGroup {
        field: field.clone(),
        n,
        method: KGroupMethod::BruteForce,
        presentation,
        dictionary: tuples,
    })
}

/// Largest constant field accepted for symbol computations.
pub const MAX_Q: u32 = 1024;

pub fn check_odd(q: u32) -> Result<()> {
    if q.is_multiple_of(2) || q > MAX_Q {
        bail!(Domain, "q = {q} must be odd and at most {MAX_Q}");
    }
    Ok(())
}

/// `F_q(t)` with its polynomial ring.
#[derive(Clone, Debug)]
pub struct FunctionField {
    pub ring: PolyRing,
}

impl FunctionField {
    pub fn new(q: u32) -> Result<Self> {
        check_odd(q)?;
        Ok(FunctionField {
            ring: PolyRing::new(FiniteField::gf(q)?),
        })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.ring.field()
    }

    pub fn place(&self, place: Place) -> Result<PlaceData> {
        PlaceData::new(&self.ring, place)
    }

    /// Places where `f` has nonzero valuation, with infinity last.
    pub fn support(&self, f: &RatFn) -> Result<Vec<Place>> {
        let mut out = Vec::new();
        for p in [&f.num, &f.den] {
            for (pi, _) in self.ring.factor(p)?.1 {
                out.push(Place::Finite(pi));
            }
        }
        out.sort();
        out.dedup();
        out.push(Place::Infinity);
        Ok(out)
    }

    pub fn display_poly(&self, p: &Poly) -> String {
        display_poly(self.field(), p)
    }
}

pub fn display_poly(field: &FiniteField, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, &c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let ci = field.index(c);
        let coef = if ci == 1 && k > 0 { String::new() } else { format!("{ci}") };
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let sep = if !coef.is_empty() && !mono.is_empty() { "*" } else { "" };
        parts.push(format!("{coef}{sep}{mono}"));
    }
    parts.join("+")
}

fn check_nonzero(s: &Symbol<RatFn>) -> Result<()> {
    if s.terms.iter().flatten().any(RatFn::is_zero) {
        bail!(Domain, "symbols have nonzero entries");
    }
    Ok(())
}

/// `∂_v{a, b} = (-1)^{v(a)v(b)} ū_b^{v(a)} ū_a^{-v(b)}` in the residue field.
pub fn residue2(ff: &FunctionField, v: &PlaceData, a: &RatFn, b: &RatFn) -> Result<Elem> {
    let r = &ff.ring;
    let k = &v.residue;
    let (va, vb) = (v.valuation(r, a)?, v.valuation(r, b)?);
    let (ua, ub) = (v.unit_residue(r, a)?, v.unit_residue(r, b)?);
    let sign = if (va * vb) % 2 == 0 { Elem::ONE } else { k.minus_one() };
    Ok(k.mul(sign, k.mul(k.pow(ub, va), k.pow(ua, -vb))))
}

/// Tame symbol at `v`, with `Z/2` coefficients: weight 1 gives the parity of
/// the valuation, weight 2 gives `{∂_v}` in the residue field.
pub fn tame_symbol(ff: &FunctionField, v: &PlaceData, s: &Symbol<RatFn>) -> Result<Symbol<Elem>> {
    check_nonzero(s)?;
    match s.weight {
        0 => bail!(Precondition, "tame symbols need weight at least 1"),
        1 => {
            let mut odd = 0;
            for t in &s.terms {
                odd += v.valuation(&ff.ring, &t[0])?;
            }
            Ok(if odd % 2 == 0 {
                Symbol::zero(0)
            } else {
                Symbol::new(0, vec![Vec::new()])?
            })
        }
        2 => {
            let mut terms = Vec::new();
            for t in &s.terms {
                let c = residue2(ff, v, &t[0], &t[1])?;
                terms.push(vec![c]);
            }
            Symbol::new(1, terms)
        }
        w => bail!(Unsupported, "tame symbols of weight {w} over function fields"),
    }
}

/// `Σ_v deg(v) v(f)` over all places; zero for every `f`.
pub fn degree_sum(ff: &FunctionField, f: &RatFn) -> Result<i64> {
    let mut s = 0;
    for p in ff.support(f)? {
        let v = ff.place(p)?;
        s += v.degree() * v.valuation(&ff.ring, f)?;
    }
    Ok(s)
}

/// `Π_v N(∂_v{a, b})` over all places; one for all `a, b`.
pub fn weil_product(ff: &FunctionField, a: &RatFn, b: &RatFn) -> Result<Elem> {
    let mut places = ff.support(a)?;
    places.extend(ff.support(b)?);
    places.sort();
    places.dedup();
    let f = ff.field();
    let mut acc = Elem::ONE;
    for p in places {
        let v = ff.place(p)?;
        let r = residue2(ff, &v, a, b)?;
        let n = match v.place {
            Place::Infinity => r,
            Place::Finite(_) => v.residue.norm(r),
        };
        acc = f.mul(acc, n);
    }
    Ok(acc)
}

/// `K^M_n(F_q(t))` (or mod 2) restricted to symbols supported on finite
/// places of degree at most `degree_bound`, for `n <= 2`.
///
/// Weight 1 uses generators `{g}` and `{π}`. Weight 2 uses one symbol
/// `{π, u_π}` per place, where `u_π` has degree below `deg π` and reduces to
/// the chosen generator of the residue field; the residue matrix on these is
/// unitriangular, so residues give coordinates.
#[derive(Clone, Debug)]
pub struct FunctionKGroup {
    pub ff: FunctionField,
    pub n: usize,
    pub degree_bound: u32,
    pub mod2: bool,
    pub places: Vec<PlaceData>,
    pub presentation: Presentation,
    /// Ordered tuple for each generator.
    pub dictionary: Vec<Vec<RatFn>>,
    pub labels: Vec<String>,
    /// Residue matrix of the weight-2 generators at the finite places.
    residues: Option<Matrix>,
}

pub fn function_kgroup(ff: &FunctionField, n: usize, degree_bound: u32, mod2: bool) -> Result<FunctionKGroup> {
    if degree_bound < 1 {
        bail!(Precondition, "degree bound must be at least 1");
    }
    let q = ff.field().size() as i64;
    let places: Vec<PlaceData> = ff
        .ring
        .irreducibles(degree_bound)
        .into_iter()
        .map(|p| ff.place(Place::Finite(p)))
        .collect::<Result<_>>()?;
    let g = ff.field().generator();
    let mut dictionary = Vec::new();
    let mut labels = Vec::new();
    let mut orders: Vec<Int> = Vec::new();
    let mut relations: Option<Matrix> = None;
    let mut residues = None;
    match n {
        0 => {
            dictionary.push(Vec::new());
            labels.push("{}".into());
            orders.push(Int::from(0));
        }
        1 => {
            dictionary.push(vec![RatFn::constant(g)]);
            labels.push(format!("{{{}}}", ff.field().index(g)));
            orders.push(Int::from(q - 1));
            for v in &places {
                let Place::Finite(p) = &v.place else { unreachable!() };
                dictionary.push(vec![RatFn::poly(p.clone())]);
                labels.push(format!("{{{}}}", ff.display_poly(p)));
                orders.push(Int::from(0));
            }
        }
        2 => {
            let k = places.len();
            let mut cols = Vec::new();
            for v in &places {
                let Place::Finite(p) = &v.place else { unreachable!() };
                let gen_index = v.residue.index(v.residue.generator());
                let qb = ff.field().size();
                let mut coeffs = Vec::new();
                let mut i = gen_index;
                for _ in 0..p.degree() {
                    coeffs.push(ff.field().from_index(i % qb));
                    i /= qb;
                }
                let u = Poly::new(coeffs);
                labels.push(format!("{{{}, {}}}", ff.display_poly(p), ff.display_poly(&u)));
                dictionary.push(vec![RatFn::poly(p.clone()), RatFn::poly(u)]);
            }
            for t in &dictionary {
                let mut col = Vec::with_capacity(k);
                for w in &places {
                    let r = residue2(ff, w, &t[0], &t[1])?;
                    col.push(Int::from(w.residue.log(r).expect("unit")));
                }
                cols.push(col);
            }
            let res = Matrix::from_columns(k, &cols);
            // relations: R^{-1} · diag(Q_v - 1)
            let mut rel_cols = Vec::with_capacity(k);
            for (j, w) in places.iter().enumerate() {
                let mut target = vec![Int::from(0); k];
                target[j] = Int::from(w.residue.size() as i64 - 1);
                rel_cols.push(solve(&res, &target).expect("unitriangular residue matrix"));
            }
            relations = Some(Matrix::from_columns(k, &rel_cols));
            residues = Some(res);
        }
        _ => bail!(Unsupported, "K_{n} of a function field is not modeled"),
    }
    let count = dictionary.len();
    let mut rel = match relations {
        Some(r) => r,
        None => {
            let cols: Vec<Vec<Int>> = orders
                .iter()
                .enumerate()
                .filter(|(_, o)| **o != Int::from(0))
                .map(|(i, o)| {
                    let mut v = vec![Int::from(0); count];
                    v[i] = o.clone();
                    v
                })
                .collect();
            Matrix::from_columns(count, &cols)
        }
    };
    if mod2 {
        rel = rel.hcat(&Matrix::identity(count).scale(&Int::from(2)));
    }
    let presentation = Presentation::new(count, rel)?.with_labels(labels.clone())?;
    Ok(FunctionKGroup {
        ff: ff.clone(),
        n,
        degree_bound,
        mod2,
        places,
        presentation,
        dictionary,
        labels,
        residues,
    })
}

impl FunctionKGroup {
    fn check_support(&self, f: &RatFn) -> Result<()> {
        for p in self.ff.support(f)? {
            if let Place::Finite(pi) = &p {
                if pi.degree() > self.degree_bound as i64 {
                    bail!(Precondition, "degree bound {} is too small for the support of the symbol", self.degree_bound);
                }
            }
        }
        Ok(())
    }

    /// Coordinates of the ordered symbol `{t_1, ..., t_n}`, supported within
    /// the degree bound.
    pub fn class_of_tuple(&self, t: &[RatFn]) -> Result<Vec<Int>> {
        if t.iter().any(RatFn::is_zero) {
            bail!(Domain, "symbols have nonzero entries");
        }
        if t.len() != self.n {
            bail!(Dimension, "symbol of weight {} in K_{}", t.len(), self.n);
        }
        for f in t {
            self.check_support(f)?;
        }
        let count = self.presentation.generator_count();
        let r = &self.ff.ring;
        Ok(match self.n {
            0 => {
                let mut v = vec![Int::from(0); count];
                v[0] = Int::from(1);
                v
            }
            1 => {
                let inf = self.ff.place(Place::Infinity)?;
                let c = inf.unit_residue(r, &t[0])?;
                let mut v = vec![Int::from(self.ff.field().log(c).expect("unit"))];
                for w in &self.places {
                    v.push(Int::from(w.valuation(r, &t[0])?));
                }
                v
            }
            _ => {
                let mut res = Vec::with_capacity(count);
                for w in &self.places {
                    let c = residue2(&self.ff, w, &t[0], &t[1])?;
                    res.push(Int::from(w.residue.log(c).expect("unit")));
                }
                let m = self.residues.as_ref().expect("weight 2");
                solve(m, &res).expect("unitriangular residue matrix")
            }
        })
    }

    /// Coordinates of a mod-2 symbol, each term read in its stored order;
    /// only meaningful up to sign, so exact in the mod-2 group.
    pub fn class_of(&self, s: &Symbol<RatFn>) -> Result<Vec<Int>> {
        if s.weight() != self.n {
            bail!(Dimension, "symbol of weight {} in K_{}", s.weight(), self.n);
        }
        let mut v = vec![Int::from(0); self.presentation.generator_count()];
        for t in s.terms() {
            for (a, x) in v.iter_mut().zip(self.class_of_tuple(t)?) {
                *a += x;
            }
        }
        Ok(v)
    }

    pub fn is_zero(&self, s: &Symbol<RatFn>) -> Result<bool> {
        Ok(self.presentation.is_zero_element(&self.class_of(s)?))
    }
}

/// Outcome of the weight-2 brute-force cross-check.
#[derive(Clone, Debug)]
pub struct BruteForceCheck {
    pub generators: usize,
    pub steinberg_relations: usize,
    /// Every brute-force relation vanishes in the residue presentation.
    pub sound: bool,
    pub brute_order: Option<Int>,
    pub residue_order: Option<Int>,
}

impl BruteForceCheck {
    pub fn saturated(&self) -> bool {
        self.brute_order == self.residue_order
    }
}

/// `K_2/2` generated by pairs of `g` and the places of degree at most the
/// bound, modulo `2x`, symmetry, `{x, x} = {x, -1}` and Steinberg relations
/// `{f, 1 - f}` for polynomials `f` of degree at most `radius` with both `f`
/// and `1 - f` supported within the bound; compared with the mod-2
/// residue presentation.
pub fn k2_bruteforce_check(ff: &FunctionField, degree_bound: u32, radius: u32) -> Result<BruteForceCheck> {
    let truth = function_kgroup(ff, 2, degree_bound, true)?;
    let r = &ff.ring;
    let f = ff.field();
    let g = f.generator();
    let mut basis: Vec<RatFn> = vec![RatFn::constant(g)];
    basis.extend(truth.places.iter().map(|w| match &w.place {
        Place::Finite(p) => RatFn::poly(p.clone()),
        Place::Infinity => unreachable!(),
    }));
    let b = basis.len();
    let count = b * b;
    let pair = |i: usize, j: usize| i * b + j;
    let mut rels: Vec<Vec<Int>> = Vec::new();
    let unit = |k: usize, c: i64| {
        let mut v = vec![Int::from(0); count];
        v[k] = Int::from(c);
        v
    };
    let half = (f.size() as i64 - 1) / 2;
    for i in 0..b {
        for j in 0..b {
            rels.push(unit(pair(i, j), 2));
            let mut v = unit(pair(i, j), 1);
            v[pair(j, i)] += 1;
            rels.push(v);
        }
        // {x, x} = {x, -1} = half · {x, g}
        let mut v = unit(pair(i, i), 1);
        v[pair(i, 0)] -= Int::from(half);
        rels.push(v);
    }
    // exponent vector over the basis (g-exponent first)
    let expand = |h: &RatFn| -> Option<Vec<i64>> {
        let mut e = vec![0i64; b];
        let (unit, fs) = r.factor(&h.num).ok()?;
        e[0] = f.log(unit)? as i64;
        for (p, k) in fs {
            let idx = basis.iter().position(|x| x.num == p)?;
            e[idx] += k as i64;
        }
        Some(e)
    };
    let mut steinberg = 0;
    for deg in 0..=radius {
        for m in r.monics(deg) {
            for c in f.units() {
                let h = RatFn::poly(r.scale(&m, c));
                let one_minus = h.one_minus(r);
                if one_minus.is_zero() {
                    continue;
                }
                let (Some(ea), Some(eb)) = (expand(&h), expand(&one_minus)) else { continue };
                let mut v = vec![Int::from(0); count];
                for i in 0..b {
                    for j in 0..b {
                        v[pair(i, j)] += Int::from(ea[i] * eb[j]);
                    }
                }
                rels.push(v);
                steinberg += 1;
            }
        }
    }
    let brute = Presentation::new(count, Matrix::from_columns(count, &rels))?;
    let mut sound = true;
    for v in &rels {
        let mut acc = vec![Int::from(0); truth.presentation.generator_count()];
        for i in 0..b {
            for j in 0..b {
                let k = &v[pair(i, j)];
                if k == &Int::from(0) {
                    continue;
                }
                let c = truth.class_of_tuple(&[basis[i].clone(), basis[j].clone()])?;
                for (a, x) in acc.iter_mut().zip(c) {
                    *a += k * x;
                }
            }
        }
        if !truth.presentation.is_zero_element(&acc) {
            sound = false;
        }
    }
    Ok(BruteForceCheck {
        generators: count,
        steinberg_relations: steinberg,
        sound,
        brute_order: brute.order(),
        residue_order: truth.presentation.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ivec;

    #[test]
    fn finite_field_k_groups() {
        let f5 = FiniteField::gf(5).unwrap();
        assert_eq!(kgroup(&f5, 0).unwrap().presentation.invariants().torsion, ivec(&[2]));
        assert_eq!(kgroup(&f5, 1).unwrap().presentation.invariants().torsion, ivec(&[2]));
        assert!(kgroup(&f5, 2).unwrap().presentation.is_trivial());
        let f3 = FiniteField::gf(3).unwrap();
        assert!(kgroup(&f3, 2).unwrap().presentation.is_trivial());
        let big = FiniteField::gf(31).unwrap();
        assert_eq!(kgroup(&big, 2).unwrap().method, KGroupMethod::SquareClasses);
    }

    #[test]
    fn normal_forms() {
        let f = FiniteField::gf(5).unwrap();
        let a = f.exp(1);
        let steinberg = Symbol::single(vec![a, f.sub(Elem::ONE, a)]);
        assert!(normalize(&f, &steinberg).unwrap().is_zero());
        let sq = Symbol::single(vec![f.mul(a, a), f.exp(3)]);
        assert!(normalize(&f, &sq).unwrap().is_zero());
        let aa = Symbol::single(vec![a, a]);
        let am1 = Symbol::single(vec![a, f.minus_one()]);
        assert_eq!(normalize(&f, &aa).unwrap(), normalize(&f, &am1).unwrap());
        assert!(normalize(&f, &Symbol::single(vec![Elem::ZERO])).is_err());
    }

    #[test]
    fn tame_symbol_examples() {
        for (q, nonzero) in [(3, true), (5, false)] {
            let ff = FunctionField::new(q).unwrap();
            let t = RatFn::poly(Poly::t());
            let v = ff.place(Place::Finite(Poly::t())).unwrap();
            let s = tame_symbol(&ff, &v, &Symbol::new(2, vec![vec![t.clone(), t.clone()]]).unwrap()).unwrap();
            assert_eq!(s.terms()[0][0], v.residue.minus_one());
            assert_eq!(!normalize(&v.residue, &s).unwrap().is_zero(), nonzero);
        }
    }
}
