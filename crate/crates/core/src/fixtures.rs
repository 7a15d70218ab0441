//! Small filtered complexes with known spectral sequences, and seeded random
//! instances for property checks.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{bail, Result};
use crate::exactalg::{direct_sum, Presentation, Subgroup};
use crate::filtcomplex::{truncate, ChainMap, CochainComplex, FilteredComplex};
use crate::lattice::kernel_basis;
use crate::matrix::{Int, Matrix};
use crate::specseq::ComparisonSystem;

/// A filtered complex with top degree `d`, plus the replacement layer used
/// for the top-replaced filtration.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub filtered: FilteredComplex,
    pub d: i64,
    /// Replacement for `gr^d` of the truncated filtration.
    pub layer: CochainComplex,
    /// `layer -> gr^d`.
    pub red: ChainMap,
    /// Declared 2-cohomological dimension, if any.
    pub declared_s: Option<i64>,
}

impl Fixture {
    pub fn comparison(&self) -> Result<ComparisonSystem> {
        ComparisonSystem::build(&self.filtered, self.d, &self.layer, &self.red)
    }
}

/// `gr^d` of the truncation, glued by the identity.
pub fn trivial_layer(f: &FilteredComplex, d: i64) -> Result<(CochainComplex, ChainMap)> {
    let gr = truncate(f, d)?.graded_piece(d);
    let id = ChainMap::identity(&gr);
    Ok((gr, id))
}

fn with_trivial_layer(name: &str, filtered: FilteredComplex, d: i64, declared_s: Option<i64>) -> Result<Fixture> {
    let (layer, red) = trivial_layer(&filtered, d)?;
    Ok(Fixture {
        name: name.to_string(),
        filtered,
        d,
        layer,
        red,
        declared_s,
    })
}

/// `C^0 = Z/2` at level 0, `C^1 = Z/2` at level 2, `d = id`: the two
/// classes kill each other on the second page.
pub fn killing() -> Fixture {
    let z2 = Presentation::cyclic(2);
    let c = CochainComplex::from_matrices(0, vec![z2.clone(), z2], vec![Matrix::from_i64(1, 1, &[1])]).expect("complex");
    let f = FilteredComplex::diagonal(c, |i| if i == 0 { 0 } else { 2 }).expect("filtration");
    with_trivial_layer("killing", f, 1, None).expect("fixture")
}

/// `C^0 = Z/4` with `F^1 = 2C`, abutting to `Z/4` through two `Z/2` layers.
pub fn z4() -> Fixture {
    let g = Presentation::cyclic(4);
    let c = CochainComplex::concentrated(0, g.clone());
    let levels = vec![
        vec![Subgroup::whole(&g)],
        vec![Subgroup::generated(&g, &Matrix::from_i64(1, 1, &[2])).expect("subgroup")],
        vec![Subgroup::zero(&g)],
    ];
    let f = FilteredComplex::new(c, 0, levels).expect("filtration");
    with_trivial_layer("z4", f, 0, Some(2)).expect("fixture")
}

/// `C^0 = Z/4<a>`, `C^1 = Z/2<b>`, `da = b`, levels 1 and 2 with
/// `F^2 = (<2a>, <b>)`; the layer is `Z` in degree 0 mapping onto `a`.
pub fn torsion_free() -> Fixture {
    let c = CochainComplex::from_matrices(
        0,
        vec![Presentation::cyclic(4), Presentation::cyclic(2)],
        vec![Matrix::from_i64(1, 1, &[1])],
    )
    .expect("complex");
    let levels = vec![
        c.groups().iter().map(Subgroup::whole).collect(),
        vec![
            Subgroup::generated(&c.group(0), &Matrix::from_i64(1, 1, &[2])).expect("subgroup"),
            Subgroup::whole(&c.group(1)),
        ],
        c.groups().iter().map(Subgroup::zero).collect(),
    ];
    let f = FilteredComplex::new(c, 1, levels).expect("filtration");
    let gr = truncate(&f, 1).expect("truncation").graded_piece(1);
    let layer = CochainComplex::from_matrices(0, vec![Presentation::free(1), Presentation::zero()], vec![Matrix::zeros(0, 1)])
        .expect("layer");
    let red = ChainMap::from_matrices(
        layer.clone(),
        gr.clone(),
        vec![Matrix::from_i64(gr.group(0).generator_count(), 1, &[1]), Matrix::zeros(gr.group(1).generator_count(), 0)],
    )
    .expect("reduction");
    Fixture {
        name: "torsion_free".to_string(),
        filtered: f,
        d: 1,
        layer,
        red,
        declared_s: None,
    }
}

/// `Z/2` in degree 1 at level 1 only; nothing sits above the top layer.
pub fn cd_one() -> Fixture {
    let c = CochainComplex::concentrated(1, Presentation::cyclic(2));
    let f = FilteredComplex::one_level(c, 1);
    with_trivial_layer("cd_one", f, 1, Some(1)).expect("fixture")
}

pub fn named(name: &str) -> Result<Fixture> {
    match name {
        "killing" => Ok(killing()),
        "z4" => Ok(z4()),
        "torsion_free" => Ok(torsion_free()),
        "cd_one" => Ok(cd_one()),
        "sl3" => Ok(crate::sq2::sl3_fixture().fixture),
        _ => bail!(Unsupported, "no fixture named {name:?}"),
    }
}

pub const NAMES: [&str; 5] = ["killing", "sl3", "z4", "torsion_free", "cd_one"];

/// Shape limits for random instances.
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_degrees: usize,
    pub max_levels: usize,
    pub max_rank: usize,
    pub max_entry: i64,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_degrees: 4,
            max_levels: 3,
            max_rank: 3,
            max_entry: 9,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `lo..=hi`.
pub fn uniform(rng: &mut impl RngCore, lo: i64, hi: i64) -> i64 {
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

fn random_vector(rng: &mut impl RngCore, n: usize, m: i64) -> Vec<Int> {
    (0..n).map(|_| Int::from(uniform(rng, -m, m))).collect()
}

fn random_matrix(rng: &mut impl RngCore, rows: usize, cols: usize, m: i64) -> Matrix {
    let data: Vec<i64> = (0..rows * cols).map(|_| uniform(rng, -m, m)).collect();
    Matrix::from_i64(rows, cols, &data)
}

/// Free differentials with `d ∘ d = 0`: each `d_{i+1}` factors through the
/// left annihilator of `d_i`.
fn random_free_differentials(rng: &mut impl RngCore, ranks: &[usize]) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = Vec::new();
    for k in 0..ranks.len().saturating_sub(1) {
        let (a, b) = (ranks[k], ranks[k + 1]);
        let m = match out.last() {
            None => random_matrix(rng, b, a, 3),
            Some(prev) => {
                let left = kernel_basis(&prev.transpose());
                let r = random_matrix(rng, b, left.cols(), 2);
                r.mul(&left.transpose())
            }
        };
        out.push(m);
    }
    out
}

/// Random bounded filtered complex within `shape`.
pub fn random_filtered(rng: &mut impl RngCore, shape: RandomShape) -> FilteredComplex {
    let degrees = uniform(rng, 1, shape.max_degrees as i64) as usize;
    let lo = uniform(rng, -1, 1);
    let ranks: Vec<usize> = (0..degrees).map(|_| uniform(rng, 0, shape.max_rank as i64) as usize).collect();
    let diffs = random_free_differentials(rng, &ranks);
    let m = shape.max_entry;

    // relations: random vectors closed under d
    let mut rel: Vec<Matrix> = Vec::new();
    for k in 0..degrees {
        let count = uniform(rng, 0, 2) as usize;
        let mut cols: Vec<Vec<Int>> = (0..count).map(|_| random_vector(rng, ranks[k], m)).collect();
        if k > 0 {
            let img = diffs[k - 1].mul(&rel[k - 1]);
            cols.extend(img.columns());
        }
        rel.push(Matrix::from_columns(ranks[k], &cols));
    }
    let groups: Vec<Presentation> = (0..degrees)
        .map(|k| Presentation::new(ranks[k], rel[k].clone()).expect("relation shape"))
        .collect();
    let c = CochainComplex::from_matrices(lo, groups.clone(), diffs.clone()).expect("random complex");

    // wide filtrations are the interesting ones
    let width = (shape.max_levels as i64 - [0, 0, 0, 1, 1, 2][uniform(rng, 0, 5) as usize]).max(1) as usize;
    let p_min = uniform(rng, -1, 1);
    // built from the top level down; a planted cochain `x` enters some
    // levels below its coboundary, which produces higher differentials
    let mut planted: Vec<(usize, usize, Vec<Int>)> = Vec::new();
    let mut levels: Vec<Vec<Subgroup>> = vec![groups.iter().map(Subgroup::zero).collect()];
    for step in 1..width {
        let above = levels.last().expect("nonempty");
        let mut extra: Vec<Vec<Vec<Int>>> = vec![Vec::new(); degrees];
        for k in 0..degrees {
            for _ in 0..uniform(rng, 0, 1) {
                extra[k].push(random_vector(rng, ranks[k], 3));
            }
            if k + 1 < degrees && uniform(rng, 0, 1) == 1 {
                for _ in 0..3 {
                    let x = random_vector(rng, ranks[k], 3);
                    let dx = diffs[k].mul_vec(&x);
                    if dx.iter().any(|e| e != &Int::from(0)) {
                        extra[k + 1].push(dx);
                        planted.push((step + 2, k, x));
                        break;
                    }
                }
            }
        }
        planted.retain(|(at, k, x)| {
            if *at == step {
                extra[*k].push(x.clone());
                false
            } else {
                true
            }
        });
        let mut gens: Vec<Matrix> = Vec::new();
        for k in 0..degrees {
            let mut cols: Vec<Vec<Int>> = above[k].generators().columns().collect();
            cols.extend(extra[k].iter().cloned());
            if k > 0 {
                cols.extend(diffs[k - 1].mul(&gens[k - 1]).columns());
            }
            gens.push(Matrix::from_columns(ranks[k], &cols));
        }
        let lv = (0..degrees)
            .map(|k| Subgroup::generated(&groups[k], &gens[k]).expect("subgroup"))
            .collect();
        levels.push(lv);
    }
    levels.push(groups.iter().map(Subgroup::whole).collect());
    levels.reverse();
    FilteredComplex::new(c, p_min, levels).expect("random filtration is valid")
}

/// The path complex `P^i = G^i ⊕ G^{i-1}`, `d(x, y) = (dx, x - dy)`, kept
/// in the degrees of `g`.
fn path_complex(g: &CochainComplex) -> CochainComplex {
    let mut groups = Vec::new();
    for i in g.degrees() {
        groups.push(direct_sum(&g.group(i), &g.group(i - 1)));
    }
    let mut mats = Vec::new();
    for i in g.degrees().take(groups.len().saturating_sub(1)) {
        let (ni, nim1) = (g.group(i).generator_count(), g.group(i - 1).generator_count());
        let d_i = g.d(i).matrix().clone();
        let d_im1 = g.d(i - 1).matrix().scale(&Int::from(-1));
        let top = d_i.hcat(&Matrix::zeros(d_i.rows(), nim1));
        let bottom = Matrix::identity(ni).hcat(&d_im1);
        mats.push(top.vcat(&bottom));
    }
    CochainComplex::from_matrices(g.lo(), groups, mats).expect("path complex")
}

/// Random instance for the comparison checks: a random filtered complex
/// whose top degree is `d`, with the layer `gr^d ⊕ P(gr^d)` glued by
/// `(c·id, proj)` for a random `c`.
pub fn random_mw_instance(rng: &mut impl RngCore, shape: RandomShape) -> Fixture {
    loop {
        let f = random_filtered(rng, shape);
        let d = f.hi();
        if d < f.p_min() || d > f.p_max() || (d == f.p_max() && uniform(rng, 0, 3) != 0) {
            continue;
        }
        let gr = truncate(&f, d).expect("truncation").graded_piece(d);
        let p = path_complex(&gr);
        let mut groups = Vec::new();
        let mut mats = Vec::new();
        for i in gr.degrees() {
            groups.push(direct_sum(&gr.group(i), &p.group(i)));
        }
        for i in gr.degrees().take(groups.len().saturating_sub(1)) {
            mats.push(gr.d(i).matrix().block_diag(p.d(i).matrix()));
        }
        let layer = CochainComplex::from_matrices(gr.lo(), groups, mats).expect("layer");
        let c = uniform(rng, 0, 3);
        let red_mats = gr
            .degrees()
            .map(|i| {
                let n = gr.group(i).generator_count();
                let m = gr.group(i - 1).generator_count();
                Matrix::identity(n)
                    .scale(&Int::from(c))
                    .hcat(&Matrix::identity(n))
                    .hcat(&Matrix::zeros(n, m))
            })
            .collect();
        let red = ChainMap::from_matrices(layer.clone(), gr, red_mats).expect("reduction is a chain map");
        return Fixture {
            name: alloc::format!("random(c={c})"),
            filtered: f,
            d,
            layer,
            red,
            declared_s: None,
        };
    }
}
