//! Finite fields of odd characteristic in discrete-log form.
//!
//! An element is a code: 0 is zero and `k + 1` is `g^k` for a fixed
//! generator `g` of the unit group. Multiplication adds exponents; addition
//! goes through a Zech table holding the code of `1 + g^k`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};

/// Largest field built here.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

#[derive(Debug)]
enum Kind {
    Prime,
    Extension {
        base: Arc<FiniteField>,
        /// Monic modulus over the base, lowest coefficient first.
        modulus: Vec<Elem>,
        /// Base code to code.
        embed: Vec<u32>,
        /// Code to base code, for elements of the base.
        restrict: Vec<Option<u32>>,
    },
}

#[derive(Debug)]
pub struct FiniteField {
    p: u32,
    q: u32,
    /// `exp[k]` is the index of `g^k`.
    exp: Vec<u32>,
    /// `log[index]` for nonzero indices.
    log: Vec<u32>,
    zech: Vec<u32>,
    kind: Kind,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `q = p^k` with `p` prime.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FiniteField {
    /// `F_q` for an odd prime power `q`.
    pub fn gf(q: u32) -> Result<Arc<Self>> {
        let Some((p, k)) = prime_power(q) else {
            bail!(Domain, "{q} is not a prime power");
        };
        if p == 2 {
            bail!(Domain, "characteristic 2 is not supported");
        }
        if q > MAX_FIELD_SIZE {
            bail!(Unsupported, "field of size {q} is too large");
        }
        let base = FiniteField::prime(p)?;
        if k == 1 {
            return Ok(base);
        }
        // the first monic polynomial of degree k for which x has order q - 1
        let total = p.pow(k);
        for tail in 0..total {
            let mut m = Vec::with_capacity(k as usize + 1);
            let mut t = tail;
            for _ in 0..k {
                m.push(base.from_index(t % p));
                t /= p;
            }
            m.push(Elem::ONE);
            if m[0].is_zero() {
                continue;
            }
            if let Ok(f) = FiniteField::extension_with(&base, &m, Some(p)) {
                return Ok(f);
            }
        }
        bail!(Consistency, "no primitive polynomial of degree {k} over F_{p}")
    }

    pub fn prime(p: u32) -> Result<Arc<Self>> {
        if !is_prime(p) {
            bail!(Domain, "{p} is not prime");
        }
        if p == 2 {
            bail!(Domain, "characteristic 2 is not supported");
        }
        let add = |a: u32, b: u32| (a + b) % p;
        let mul = |a: u32, b: u32| ((a as u64 * b as u64) % p as u64) as u32;
        let (exp, log) = primitive_tables(p, 1, mul, None).ok_or_else(|| crate::Error::Consistency("no primitive root".into()))?;
        let zech = zech_table(&exp, &log, 1, add);
        Ok(Arc::new(FiniteField {
            p,
            q: p,
            exp,
            log,
            zech,
            kind: Kind::Prime,
        }))
    }

    /// `base[x] / (modulus)`; fails if the modulus is reducible.
    pub fn extension(base: &Arc<FiniteField>, modulus: &[Elem]) -> Result<Arc<Self>> {
        FiniteField::extension_with(base, modulus, None)
    }

    /// With `only_x = Some(_)` the class of `x` itself must generate the
    /// unit group.
    fn extension_with(base: &Arc<FiniteField>, modulus: &[Elem], only_x: Option<u32>) -> Result<Arc<Self>> {
        let n = modulus.len().saturating_sub(1);
        if n == 0 || modulus[n] != Elem::ONE {
            bail!(Domain, "modulus must be monic of positive degree");
        }
        let qb = base.q;
        let Some(q) = (qb as u64).checked_pow(n as u32).filter(|&q| q <= MAX_FIELD_SIZE as u64) else {
            bail!(Unsupported, "extension of degree {n} over F_{qb} is too large");
        };
        let q = q as u32;
        let to_vec = |mut i: u32| -> Vec<Elem> {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(base.from_index(i % qb));
                i /= qb;
            }
            v
        };
        let to_index = |v: &[Elem]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * qb + base.index(c)) };
        let add = |a: u32, b: u32| {
            let (x, y) = (to_vec(a), to_vec(b));
            let s: Vec<Elem> = x.iter().zip(&y).map(|(&u, &w)| base.add(u, w)).collect();
            to_index(&s)
        };
        let mul = |a: u32, b: u32| {
            let (x, y) = (to_vec(a), to_vec(b));
            let mut prod = vec![Elem::ZERO; 2 * n];
            for (i, &u) in x.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (j, &w) in y.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(u, w));
                }
            }
            for k in (n..2 * n).rev() {
                let c = prod[k];
                if c.is_zero() {
                    continue;
                }
                prod[k] = Elem::ZERO;
                for (i, &m) in modulus[..n].iter().enumerate() {
                    prod[k - n + i] = base.sub(prod[k - n + i], base.mul(c, m));
                }
            }
            to_index(&prod[..n])
        };
        let x_index = if n == 1 { None } else { only_x.map(|_| qb) };
        let Some((exp, log)) = primitive_tables(q, 1, mul, x_index) else {
            bail!(Domain, "modulus is reducible");
        };
        let zech = zech_table(&exp, &log, 1, add);
        let mut embed = vec![0u32; qb as usize];
        let mut restrict = vec![None; q as usize];
        for code in 1..qb {
            let idx = base.index(Elem(code));
            let c = log[idx as usize] + 1;
            embed[code as usize] = c;
            restrict[c as usize] = Some(code);
        }
        restrict[0] = Some(0);
        Ok(Arc::new(FiniteField {
            p: base.p,
            q,
            exp,
            log,
            zech,
            kind: Kind::Extension {
                base: base.clone(),
                modulus: modulus.to_vec(),
                embed,
                restrict,
            },
        }))
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn base(&self) -> Option<&Arc<FiniteField>> {
        match &self.kind {
            Kind::Prime => None,
            Kind::Extension { base, .. } => Some(base),
        }
    }

    pub fn modulus(&self) -> Option<&[Elem]> {
        match &self.kind {
            Kind::Prime => None,
            Kind::Extension { modulus, .. } => Some(modulus),
        }
    }

    /// Degree over the base field (1 for a prime field).
    pub fn degree(&self) -> u32 {
        match &self.kind {
            Kind::Prime => 1,
            Kind::Extension { modulus, .. } => modulus.len() as u32 - 1,
        }
    }

    pub fn generator(&self) -> Elem {
        Elem(2.min(self.q))
    }

    /// `-1 = g^{(q-1)/2}`.
    pub fn minus_one(&self) -> Elem {
        Elem((self.q - 1) / 2 + 1)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(Elem)
    }

    /// Discrete log base `g`, `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| a.0 - 1)
    }

    pub fn exp(&self, k: i64) -> Elem {
        let m = (self.q - 1) as i64;
        Elem(k.rem_euclid(m) as u32 + 1)
    }

    /// Position in the additive encoding (coefficient vector over the base).
    pub fn index(&self, a: Elem) -> u32 {
        if a.is_zero() {
            0
        } else {
            self.exp[(a.0 - 1) as usize]
        }
    }

    pub fn from_index(&self, i: u32) -> Elem {
        if i == 0 {
            Elem::ZERO
        } else {
            Elem(self.log[i as usize] + 1)
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem((a.0 - 1 + b.0 - 1) % (self.q - 1) + 1)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        match self.log(a) {
            None => bail!(Domain, "zero has no inverse"),
            Some(k) => Ok(self.exp(-(k as i64))),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        match self.log(a) {
            None if e == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(k) => self.exp(k as i64 * e),
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let m = self.q - 1;
        let (i, j) = (a.0 - 1, b.0 - 1);
        let z = self.zech[((j + m - i) % m) as usize];
        if z == 0 {
            Elem::ZERO
        } else {
            Elem((i + z - 1) % m + 1)
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.mul(a, self.minus_one())
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn is_square(&self, a: Elem) -> bool {
        self.log(a).is_some_and(|k| k % 2 == 0)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        match &self.kind {
            Kind::Prime => self.from_index(n.rem_euclid(self.p as i64) as u32),
            Kind::Extension { base, .. } => self.embed(base.from_int(n)),
        }
    }

    /// Base element as an element of this field.
    pub fn embed(&self, a: Elem) -> Elem {
        match &self.kind {
            Kind::Prime => a,
            Kind::Extension { embed, .. } => Elem(if a.is_zero() { 0 } else { embed[a.0 as usize] }),
        }
    }

    /// The element as a base element, if it lies in the base.
    pub fn to_base(&self, a: Elem) -> Option<Elem> {
        match &self.kind {
            Kind::Prime => Some(a),
            Kind::Extension { restrict, .. } => restrict[a.0 as usize].map(Elem),
        }
    }

    /// Class of `Σ c_i x^i` for base coefficients `c`, `x` the adjoined root.
    pub fn from_coeffs(&self, c: &[Elem]) -> Elem {
        match &self.kind {
            Kind::Prime => c.first().copied().unwrap_or(Elem::ZERO),
            Kind::Extension { base, modulus, .. } => {
                let x = if modulus.len() > 2 {
                    self.from_index(base.q)
                } else {
                    self.embed(base.neg(modulus[0]))
                };
                c.iter().rev().fold(Elem::ZERO, |acc, &ci| self.add(self.mul(acc, x), self.embed(ci)))
            }
        }
    }

    /// Norm to the base field, `a^{(Q-1)/(q-1)}`.
    pub fn norm(&self, a: Elem) -> Elem {
        match &self.kind {
            Kind::Prime => a,
            Kind::Extension { base, .. } => {
                let e = (self.q - 1) / (base.q - 1);
                self.to_base(self.pow(a, e as i64)).expect("norm lies in the base")
            }
        }
    }
}

/// Exponent and log tables from a generator found by search, or from the
/// element with index `only` if given.
fn primitive_tables(q: u32, one: u32, mul: impl Fn(u32, u32) -> u32, only: Option<u32>) -> Option<(Vec<u32>, Vec<u32>)> {
    let m = (q - 1) as usize;
    let candidates: Vec<u32> = match only {
        Some(x) => vec![x],
        None => (1..q).collect(),
    };
    for g in candidates {
        let mut exp = Vec::with_capacity(m);
        let mut cur = one;
        let mut ok = true;
        for k in 0..m {
            if k > 0 && cur == one {
                ok = false;
                break;
            }
            exp.push(cur);
            cur = mul(cur, g);
        }
        if !ok || cur != one {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        return Some((exp, log));
    }
    None
}

fn zech_table(exp: &[u32], log: &[u32], one: u32, add: impl Fn(u32, u32) -> u32) -> Vec<u32> {
    exp.iter()
        .map(|&e| {
            let s = add(one, e);
            if s == 0 {
                0
            } else {
                log[s as usize] + 1
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_check(f: &FiniteField) {
        for a in 0..f.size() {
            for b in 0..f.size() {
                let (x, y) = (f.from_index(a), f.from_index(b));
                assert_eq!(f.add(x, y), f.add(y, x));
                assert_eq!(f.sub(f.add(x, y), y), x);
                if !y.is_zero() {
                    assert_eq!(f.mul(f.div(x, y).unwrap(), y), x);
                }
            }
        }
    }

    #[test]
    fn small_fields_are_fields() {
        for q in [3, 5, 7, 9, 25, 27] {
            let f = FiniteField::gf(q).unwrap();
            assert_eq!(f.size(), q);
            brute_check(&f);
            assert_eq!(f.mul(f.minus_one(), f.minus_one()), Elem::ONE);
            assert_eq!(f.add(f.minus_one(), Elem::ONE), Elem::ZERO);
        }
        assert!(FiniteField::gf(4).is_err());
        assert!(FiniteField::gf(12).is_err());
    }

    #[test]
    fn extension_needs_irreducible_modulus() {
        let f3 = FiniteField::prime(3).unwrap();
        // x^2 + 1 is irreducible over F_3, x^2 - 1 is not
        let m = [Elem::ONE, Elem::ZERO, Elem::ONE];
        let e = FiniteField::extension(&f3, &m).unwrap();
        assert_eq!(e.size(), 9);
        brute_check(&e);
        let m = [f3.minus_one(), Elem::ZERO, Elem::ONE];
        assert!(FiniteField::extension(&f3, &m).is_err());
        for a in f3.units() {
            assert_eq!(e.to_base(e.embed(a)), Some(a));
            assert_eq!(e.norm(e.embed(a)), f3.mul(a, a));
        }
    }
}
