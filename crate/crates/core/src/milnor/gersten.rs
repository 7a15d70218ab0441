//! Gersten complexes `K_n(F_q(t)) -> ⊕_v K_{n-1}(k(v))` truncated to places
//! of bounded degree.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::poly::{Place, PlaceData};
use super::symbol::{check_odd, function_kgroup, residue2, FunctionField, FunctionKGroup};
use crate::error::{bail, Result};
use crate::exactalg::{Presentation, Subgroup};
use crate::filtcomplex::{ChainMap, CochainComplex, FilteredComplex};
use crate::matrix::{Int, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    AffineLine,
    ProjectiveLine,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::AffineLine => "affine_line",
            Space::ProjectiveLine => "projective_line",
        }
    }

    pub fn parse(s: &str) -> Option<Space> {
        match s {
            "affine_line" | "affine" | "A1" => Some(Space::AffineLine),
            "projective_line" | "projective" | "P1" => Some(Space::ProjectiveLine),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GerstenComplex {
    pub space: Space,
    pub q: u32,
    pub n: usize,
    pub degree_bound: u32,
    pub mod2: bool,
    pub kgroup: FunctionKGroup,
    /// Places indexing degree 1, infinity last on the projective line.
    pub places: Vec<PlaceData>,
    pub complex: CochainComplex,
}

fn place_label(ff: &FunctionField, v: &PlaceData) -> String {
    match &v.place {
        Place::Infinity => "inf".into(),
        Place::Finite(p) => ff.display_poly(p),
    }
}

pub fn gersten_complex(space: Space, q: u32, n: usize, degree_bound: u32, mod2: bool) -> Result<GerstenComplex> {
    check_odd(q)?;
    if degree_bound < 1 {
        bail!(Precondition, "degree bound must be at least 1");
    }
    let ff = FunctionField::new(q)?;
    let kg = function_kgroup(&ff, n, degree_bound, mod2)?;
    let mut places = kg.places.clone();
    if space == Space::ProjectiveLine {
        places.push(ff.place(Place::Infinity)?);
    }
    let r = &ff.ring;
    let c0 = kg.presentation.clone();
    let order = |v: &PlaceData| -> i64 {
        match (mod2, n) {
            (_, 0) => 1,
            (true, _) => 2,
            (false, 1) => 0,
            (false, _) => v.residue.size() as i64 - 1,
        }
    };
    let labels: Vec<String> = places.iter().map(|v| place_label(&ff, v)).collect();
    let c1 = if n == 0 {
        Presentation::zero()
    } else {
        let orders: Vec<Int> = places.iter().map(|v| Int::from(order(v))).collect();
        Presentation::from_orders(&orders).with_labels(labels)?
    };
    let rows = c1.generator_count();
    let mut cols = Vec::with_capacity(kg.dictionary.len());
    for t in &kg.dictionary {
        let mut col = vec![Int::from(0); rows];
        if n == 1 {
            for (i, v) in places.iter().enumerate() {
                col[i] = Int::from(v.valuation(r, &t[0])?);
            }
        } else if n == 2 {
            for (i, v) in places.iter().enumerate() {
                let c = residue2(&ff, v, &t[0], &t[1])?;
                col[i] = Int::from(v.residue.log(c).expect("unit"));
            }
        }
        cols.push(col);
    }
    let d = Matrix::from_columns(rows, &cols);
    let complex = CochainComplex::from_matrices(0, vec![c0, c1], vec![d])?;
    Ok(GerstenComplex {
        space,
        q,
        n,
        degree_bound,
        mod2,
        kgroup: kg,
        places,
        complex,
    })
}

/// Identity on generators from the integral complex to the mod-2 one.
pub fn reduction_map(integral: &GerstenComplex, mod2: &GerstenComplex) -> Result<ChainMap> {
    if integral.mod2 || !mod2.mod2 {
        bail!(Precondition, "reduction goes from an integral model to a mod-2 model");
    }
    if (integral.space, integral.q, integral.n, integral.degree_bound) != (mod2.space, mod2.q, mod2.n, mod2.degree_bound) {
        bail!(
            AmbientMismatch,
            "models differ: {} q={} n={} D={} against {} q={} n={} D={}",
            integral.space.name(),
            integral.q,
            integral.n,
            integral.degree_bound,
            mod2.space.name(),
            mod2.q,
            mod2.n,
            mod2.degree_bound
        );
    }
    let mats = integral
        .complex
        .groups()
        .iter()
        .map(|g| Matrix::identity(g.generator_count()))
        .collect();
    ChainMap::from_matrices(integral.complex.clone(), mod2.complex.clone(), mats)
}

/// Integral complex filtered by `C ⊃ 2C ⊃ 0` at levels 0, 1, 2.
pub fn two_level_pair(g: &GerstenComplex) -> Result<FilteredComplex> {
    if g.mod2 {
        bail!(Precondition, "the two-level filtration is taken on the integral model");
    }
    let c = &g.complex;
    let level0: Vec<Subgroup> = c.groups().iter().map(Subgroup::whole).collect();
    let level1 = c
        .groups()
        .iter()
        .map(|p| Subgroup::generated(p, &Matrix::identity(p.generator_count()).scale(&Int::from(2))))
        .collect::<Result<Vec<_>>>()?;
    let level2: Vec<Subgroup> = c.groups().iter().map(Subgroup::zero).collect();
    FilteredComplex::new(c.clone(), 0, vec![level0, level1, level2])
}

impl GerstenComplex {
    pub fn describe(&self) -> String {
        format!(
            "{} over F_{}, weight {}, degree bound {}{}",
            self.space.name(),
            self.q,
            self.n,
            self.degree_bound,
            if self.mod2 { ", mod 2" } else { "" }
        )
    }
}
