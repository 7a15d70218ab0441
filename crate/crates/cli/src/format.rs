//! The instance file: a filtered complex of finitely presented abelian
//! groups, optionally with a replacement layer for comparison runs.
//!
//! Matrices are row-major with explicit `rows` and `cols`; integers are JSON
//! integers of any size. A level matrix lists generators of `F^pC^i` as
//! columns in the generator coordinates of `C^i`; the last level is
//! `p_max + 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use obstruct_core::exactalg::{Presentation, Subgroup};
use obstruct_core::filtcomplex::{ChainMap, CochainComplex, FilteredComplex};
use obstruct_core::matrix::Matrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, CliResult};
use crate::json::to_canonical;

pub const FORMAT_VERSION: &str = "1";

/// An integer kept exactly, written as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integer(pub BigInt);

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        let text = n.to_string();
        if text.contains(['.', 'e', 'E']) {
            return Err(serde::de::Error::custom(format!("expected an integer, found {text}")));
        }
        text.parse::<BigInt>()
            .map(Integer)
            .map_err(|_| serde::de::Error::custom(format!("expected an integer, found {text}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixBlock {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Integer>,
}

impl MatrixBlock {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixBlock {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().cloned().map(Integer).collect(),
        }
    }

    pub fn to_matrix(&self, location: &str) -> CliResult<Matrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(CliError::invalid(
                location,
                format!("{} entries for a {}x{} matrix", self.entries.len(), self.rows, self.cols),
            ));
        }
        Ok(Matrix::from_row_major(self.rows, self.cols, self.entries.iter().map(|x| x.0.clone()).collect()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupBlock {
    pub generators: usize,
    pub relations: MatrixBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexBlock {
    pub lo: i64,
    pub groups: Vec<GroupBlock>,
    /// `d^i` for `i = lo .. lo + groups.len() - 1`.
    pub differentials: Vec<MatrixBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationBlock {
    pub p_min: i64,
    /// `levels[k][i - lo]` generates `F^{p_min + k}C^i`.
    pub levels: Vec<Vec<MatrixBlock>>,
}

/// Replacement for the top graded piece, with its map to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerBlock {
    pub complex: ComplexBlock,
    pub reduction: Vec<MatrixBlock>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Declared top degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    /// Declared 2-cohomological dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: String,
    pub metadata: Metadata,
    pub complex: ComplexBlock,
    pub filtration: FiltrationBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer: Option<LayerBlock>,
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub metadata: Metadata,
    pub filtered: FilteredComplex,
    pub layer: Option<(CochainComplex, ChainMap)>,
}

fn complex_block(c: &CochainComplex) -> ComplexBlock {
    let groups = c
        .groups()
        .iter()
        .map(|g| GroupBlock {
            generators: g.generator_count(),
            relations: MatrixBlock::from_matrix(g.relations()),
            labels: g.labels().map(|l| l.to_vec()),
        })
        .collect();
    let differentials = c.differentials().iter().map(|d| MatrixBlock::from_matrix(d.matrix())).collect();
    ComplexBlock {
        lo: c.lo(),
        groups,
        differentials,
    }
}

fn build_complex(b: &ComplexBlock, at: &str) -> CliResult<CochainComplex> {
    let mut groups = Vec::with_capacity(b.groups.len());
    for (k, g) in b.groups.iter().enumerate() {
        let loc = format!("{at}.groups[{k}]");
        let rel = g.relations.to_matrix(&format!("{loc}.relations"))?;
        if rel.rows() != g.generators {
            return Err(CliError::invalid(
                format!("{loc}.relations"),
                format!("relations have {} rows for {} generators", rel.rows(), g.generators),
            ));
        }
        let mut p = Presentation::new(g.generators, rel).map_err(|e| CliError::core(&loc, e))?;
        if let Some(l) = &g.labels {
            p = p.with_labels(l.clone()).map_err(|e| CliError::core(format!("{loc}.labels"), e))?;
        }
        groups.push(p);
    }
    let expected = b.groups.len().saturating_sub(1);
    if b.differentials.len() != expected {
        return Err(CliError::invalid(
            format!("{at}.differentials"),
            format!("{} differentials for {} groups, expected {expected}", b.differentials.len(), b.groups.len()),
        ));
    }
    let mut mats = Vec::with_capacity(expected);
    for (k, m) in b.differentials.iter().enumerate() {
        mats.push(m.to_matrix(&format!("{at}.differentials[{k}]"))?);
    }
    CochainComplex::from_matrices(b.lo, groups, mats).map_err(|e| CliError::core(format!("{at}.differentials"), e))
}

impl InstanceFile {
    pub fn new(metadata: Metadata, f: &FilteredComplex, layer: Option<(&CochainComplex, &ChainMap)>) -> Self {
        let levels = f
            .levels()
            .iter()
            .map(|lv| lv.iter().map(|s| MatrixBlock::from_matrix(s.generators())).collect())
            .collect();
        InstanceFile {
            format_version: FORMAT_VERSION.to_string(),
            metadata,
            complex: complex_block(f.complex()),
            filtration: FiltrationBlock { p_min: f.p_min(), levels },
            layer: layer.map(|(c, red)| LayerBlock {
                complex: complex_block(c),
                reduction: c.degrees().map(|i| MatrixBlock::from_matrix(red.map(i).matrix())).collect(),
            }),
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| CliError::invalid("input", e.to_string()))?;
        if file.format_version != FORMAT_VERSION {
            return Err(CliError::invalid(
                "format_version",
                format!("unknown format version {:?}, expected {FORMAT_VERSION:?}", file.format_version),
            ));
        }
        Ok(file)
    }

    pub fn to_text(&self) -> String {
        to_canonical(&serde_json::to_value(self).expect("instance files serialize"))
    }

    pub fn build(&self) -> CliResult<Instance> {
        let c = build_complex(&self.complex, "complex")?;
        let fl = &self.filtration;
        if fl.levels.is_empty() {
            return Err(CliError::invalid("filtration.levels", "at least the level p_max + 1 is required"));
        }
        let mut levels = Vec::with_capacity(fl.levels.len());
        for (k, lv) in fl.levels.iter().enumerate() {
            if lv.len() != c.groups().len() {
                return Err(CliError::invalid(
                    format!("filtration.levels[{k}]"),
                    format!("{} subgroups for {} degrees", lv.len(), c.groups().len()),
                ));
            }
            let mut subs = Vec::with_capacity(lv.len());
            for (idx, m) in lv.iter().enumerate() {
                let loc = format!("filtration.levels[{k}][{idx}]");
                let g = m.to_matrix(&loc)?;
                let amb = &c.groups()[idx];
                if g.rows() != amb.generator_count() {
                    return Err(CliError::invalid(
                        loc,
                        format!("{} rows for a group with {} generators", g.rows(), amb.generator_count()),
                    ));
                }
                subs.push(Subgroup::generated(amb, &g).map_err(|e| CliError::core(&loc, e))?);
            }
            levels.push(subs);
        }
        let filtered = FilteredComplex::new(c, fl.p_min, levels).map_err(|e| CliError::core("filtration", e))?;
        let layer = match &self.layer {
            None => None,
            Some(l) => {
                let m = build_complex(&l.complex, "layer.complex")?;
                if l.reduction.len() != m.groups().len() {
                    return Err(CliError::invalid(
                        "layer.reduction",
                        format!("{} maps for {} degrees", l.reduction.len(), m.groups().len()),
                    ));
                }
                let d = self
                    .metadata
                    .d
                    .ok_or_else(|| CliError::invalid("metadata.d", "a layer needs the declared degree d"))?;
                let gr = obstruct_core::filtcomplex::truncate(&filtered, d)
                    .map_err(|e| CliError::core("metadata.d", e))?
                    .graded_piece(d);
                let mut mats = Vec::new();
                for (k, b) in l.reduction.iter().enumerate() {
                    mats.push(b.to_matrix(&format!("layer.reduction[{k}]"))?);
                }
                let red = ChainMap::from_matrices(m.clone(), gr, mats).map_err(|e| CliError::core("layer.reduction", e))?;
                Some((m, red))
            }
        };
        Ok(Instance {
            metadata: self.metadata.clone(),
            filtered,
            layer,
        })
    }
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
