//! Polynomials and rational functions over a finite field, and the places of
//! the projective line.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::field::{Elem, FiniteField};
use crate::error::{bail, Result};

/// Coefficients lowest first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly(Vec<Elem>);

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Elem) -> Self {
        Poly::new(vec![c])
    }

    /// `t`.
    pub fn t() -> Self {
        Poly(vec![Elem::ZERO, Elem::ONE])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn lc(&self) -> Elem {
        self.0.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Elem::ONE
    }
}

/// `F[t]` for a finite field `F`.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Arc<FiniteField>,
}

impl PolyRing {
    pub fn new(field: Arc<FiniteField>) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let c = (0..n)
            .map(|i| {
                let x = a.0.get(i).copied().unwrap_or(Elem::ZERO);
                let y = b.0.get(i).copied().unwrap_or(Elem::ZERO);
                self.field.add(x, y)
            })
            .collect();
        Poly::new(c)
    }

    pub fn scale(&self, a: &Poly, c: Elem) -> Poly {
        Poly::new(a.0.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.scale(a, self.field.minus_one())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Elem::ZERO; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                c[i + j] = self.field.add(c[i + j], self.field.mul(x, y));
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        (0..e).fold(Poly::constant(Elem::ONE), |acc, _| self.mul(&acc, a))
    }

    pub fn divrem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            bail!(Domain, "division by the zero polynomial");
        }
        let f = &self.field;
        let inv = f.inv(b.lc())?;
        let mut r = a.0.clone();
        let db = b.0.len() - 1;
        if r.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut q = vec![Elem::ZERO; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = f.mul(r[k], inv);
            if c.is_zero() {
                continue;
            }
            q[k - db] = c;
            for (i, &bi) in b.0.iter().enumerate() {
                r[k - db + i] = f.sub(r[k - db + i], f.mul(c, bi));
            }
        }
        r.truncate(db);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// `(lc, a / lc)`.
    pub fn monic(&self, a: &Poly) -> (Elem, Poly) {
        if a.is_zero() {
            return (Elem::ZERO, Poly::zero());
        }
        let lc = a.lc();
        let inv = self.field.inv(lc).expect("nonzero");
        (lc, self.scale(a, inv))
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.divrem(&x, &y).expect("nonzero divisor").1;
            x = y;
            y = r;
        }
        self.monic(&x).1
    }

    /// Monic polynomials of degree `k`, in a fixed order.
    pub fn monics(&self, k: u32) -> Vec<Poly> {
        let q = self.field.size();
        let count = q.pow(k);
        (0..count)
            .map(|tail| {
                let mut c = Vec::with_capacity(k as usize + 1);
                let mut t = tail;
                for _ in 0..k {
                    c.push(self.field.from_index(t % q));
                    t /= q;
                }
                c.push(Elem::ONE);
                Poly::new(c)
            })
            .collect()
    }

    /// Monic irreducibles of degree `1..=max_deg`, by degree.
    pub fn irreducibles(&self, max_deg: u32) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for k in 1..=max_deg {
            for m in self.monics(k) {
                let reducible = out
                    .iter()
                    .take_while(|p| 2 * p.degree() <= k as i64)
                    .any(|p| self.divrem(&m, p).expect("nonzero").1.is_zero());
                if !reducible {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Multiplicity of the irreducible `p` in `a`, and the cofactor.
    pub fn split_off(&self, a: &Poly, p: &Poly) -> (u32, Poly) {
        let mut k = 0;
        let mut cur = a.clone();
        while !cur.is_zero() {
            let (q, r) = self.divrem(&cur, p).expect("nonzero divisor");
            if !r.is_zero() {
                break;
            }
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    /// `a = unit · Π p_i^{e_i}` with monic irreducible `p_i`.
    pub fn factor(&self, a: &Poly) -> Result<(Elem, Vec<(Poly, u32)>)> {
        if a.is_zero() {
            bail!(Domain, "cannot factor zero");
        }
        let (unit, mut rest) = self.monic(a);
        let mut out = Vec::new();
        // trial division in increasing degree, so every divisor found is irreducible
        let mut k = 1u32;
        while 2 * k as i64 <= rest.degree() {
            for p in self.monics(k) {
                let (e, cof) = self.split_off(&rest, &p);
                if e > 0 {
                    out.push((p, e));
                    rest = cof;
                }
            }
            k += 1;
        }
        if rest.degree() > 0 {
            out.push((rest, 1));
        }
        out.sort();
        Ok((unit, out))
    }
}

/// A rational function `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn new(ring: &PolyRing, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            bail!(Domain, "zero denominator");
        }
        let g = ring.gcd(&num, &den);
        let num = ring.divrem(&num, &g)?.0;
        let den = ring.divrem(&den, &g)?.0;
        let (lc, den) = ring.monic(&den);
        let num = ring.scale(&num, ring.field().inv(lc)?);
        Ok(RatFn { num, den })
    }

    pub fn poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::constant(Elem::ONE),
        }
    }

    pub fn constant(c: Elem) -> Self {
        RatFn::poly(Poly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, ring: &PolyRing, other: &RatFn) -> RatFn {
        RatFn::new(ring, ring.mul(&self.num, &other.num), ring.mul(&self.den, &other.den)).expect("nonzero denominators")
    }

    /// `1 - self`.
    pub fn one_minus(&self, ring: &PolyRing) -> RatFn {
        let n = ring.sub(&self.den, &self.num);
        RatFn::new(ring, n, self.den.clone()).expect("nonzero denominator")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    /// A monic irreducible polynomial.
    Finite(Poly),
    Infinity,
}

/// A place with its residue field.
#[derive(Clone, Debug)]
pub struct PlaceData {
    pub place: Place,
    pub residue: Arc<FiniteField>,
}

impl PlaceData {
    pub fn new(ring: &PolyRing, place: Place) -> Result<Self> {
        let residue = match &place {
            Place::Infinity => ring.field().clone(),
            Place::Finite(p) => {
                if !p.is_monic() || p.degree() < 1 {
                    bail!(Domain, "a finite place is a monic polynomial of positive degree");
                }
                FiniteField::extension(ring.field(), p.coeffs())?
            }
        };
        Ok(PlaceData { place, residue })
    }

    /// Degree over the constant field.
    pub fn degree(&self) -> i64 {
        match &self.place {
            Place::Infinity => 1,
            Place::Finite(p) => p.degree(),
        }
    }

    pub fn valuation(&self, ring: &PolyRing, f: &RatFn) -> Result<i64> {
        if f.is_zero() {
            bail!(Domain, "valuation of zero");
        }
        Ok(match &self.place {
            Place::Infinity => f.den.degree() - f.num.degree(),
            Place::Finite(p) => ring.split_off(&f.num, p).0 as i64 - ring.split_off(&f.den, p).0 as i64,
        })
    }

    /// Residue of `f / π^{v(f)}` in the residue field.
    pub fn unit_residue(&self, ring: &PolyRing, f: &RatFn) -> Result<Elem> {
        if f.is_zero() {
            bail!(Domain, "residue of zero");
        }
        match &self.place {
            Place::Infinity => ring.field().div(f.num.lc(), f.den.lc()),
            Place::Finite(p) => {
                let num = ring.split_off(&f.num, p).1;
                let den = ring.split_off(&f.den, p).1;
                let k = &self.residue;
                k.div(k.from_coeffs(num.coeffs()), k.from_coeffs(den.coeffs()))
            }
        }
    }
}
