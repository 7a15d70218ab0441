//! Command surface. Every command returns its full output or an error; nothing
//! is printed from here.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use obstruct_core::filtcomplex::{cohomology, CohomologyClass, FilteredComplex};
use obstruct_core::fixtures;
use obstruct_core::matrix::{Int, Matrix};
use obstruct_core::milnor::{gersten_complex, two_level_pair, Space};
use obstruct_core::obstruction::{
    check_declared_band, secondary_from_comparison, truncated_tower, vanishing_equivalence, ObstructionTower,
    TowerContext, Verdict,
};
use obstruct_core::specseq::{
    assemble_page, comparison_sequences, e_infinity, page_entry, positions, stabilization_index, to_report,
    verify_convergence, ComparisonSystem, Page,
};
use obstruct_core::sq2::{
    diagonal_differential_assembly, sq2, suspension_check, twisted_phi, verify_assembly, ChowClass, ChowRing,
};
use obstruct_core::Presentation;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::format::{Instance, InstanceFile, Metadata};
use crate::report::{OutputFormat, Report};

/// Classes sampled by `tower` when `H^d` is too large to enumerate.
pub const TOWER_SAMPLES: usize = 256;

/// Largest projective factor and factor count accepted by `sq2`.
pub const MAX_PROJECTIVE_DIM: u32 = 64;
pub const MAX_FACTORS: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "obstruct", version, about = "Spectral sequences, obstruction towers and their test models")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an instance and check every filtration axiom.
    Validate {
        /// Instance file; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Pages, differentials, E_inf, cohomology and the convergence check.
    Pages {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Last page, in report numbering (the first page shown is 2).
        #[arg(long)]
        r_max: Option<i64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..=256))]
        threads: u16,
    },
    /// Obstruction tower of one class, or the vanishing check on all of H^d.
    Tower {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Degree of the class; defaults to the declared d.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
        /// Cocycle in generator coordinates of C^degree, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        /// Seed for sampling classes when H^d is too large to enumerate.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Comparison exact sequences and the secondary obstruction.
    Secondary {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Cocycle of the top-replaced complex in degree d.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    /// Writes the Gersten complex of a curve over a finite field.
    Gersten {
        /// affine_line or projective_line.
        #[arg(long, default_value = "projective_line")]
        space: String,
        #[arg(long)]
        q: u32,
        /// Weight n of the Milnor K-groups.
        #[arg(long)]
        weight: usize,
        /// Closed points of degree at most this bound.
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        mod2: bool,
        /// Filter the integral complex by C, 2C, 0 instead of one level.
        #[arg(long)]
        pair: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sq^2 and its twisted form on a Chow ring mod 2.
    Sq2 {
        /// Product of projective spaces, e.g. P4 or P2xP3.
        #[arg(long)]
        ring: String,
        /// Twisting class of codimension 1; zero when absent.
        #[arg(long)]
        c1: Option<String>,
        /// Sum of monomials, e.g. "h1*h2^2 + h2^3".
        #[arg(long)]
        class: String,
    },
    /// Writes a shipped fixture as an instance file.
    Fixtures {
        /// One of killing, sl3, z4, torsion_free, cd_one.
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a command produced.
#[derive(Clone, Debug)]
pub enum Output {
    Report(Report),
    Instance { file: InstanceFile, out: Option<PathBuf> },
}

impl Output {
    /// Text for stdout; instance files written to `--out` produce none.
    pub fn emit(&self, format: OutputFormat) -> CliResult<String> {
        match self {
            Output::Report(r) => Ok(r.render(format)),
            Output::Instance { file, out: Some(p) } => {
                std::fs::write(p, file.to_text()).map_err(|e| CliError::invalid(p.display().to_string(), e.to_string()))?;
                Ok(String::new())
            }
            Output::Instance { file, out: None } => Ok(file.to_text()),
        }
    }
}

pub fn run(command: &Command) -> CliResult<Output> {
    match command {
        Command::Validate { input } => validate(&load(input.as_deref())?).map(Output::Report),
        Command::Pages { input, r_max, threads } => {
            pages(&load(input.as_deref())?, *r_max, usize::from(*threads)).map(Output::Report)
        }
        Command::Tower {
            input,
            degree,
            class,
            seed,
        } => tower(&load(input.as_deref())?, *degree, class.as_deref(), *seed).map(Output::Report),
        Command::Secondary { input, class } => secondary(&load(input.as_deref())?, class.as_deref()).map(Output::Report),
        Command::Gersten {
            space,
            q,
            weight,
            bound,
            mod2,
            pair,
            out,
        } => Ok(Output::Instance {
            file: gersten(space, *q, *weight, *bound, *mod2, *pair)?,
            out: out.clone(),
        }),
        Command::Sq2 { ring, c1, class } => sq2_report(ring, c1.as_deref(), class).map(Output::Report),
        Command::Fixtures { name, out } => Ok(Output::Instance {
            file: fixture(name)?,
            out: out.clone(),
        }),
    }
}

/// A parsed instance with the digest of its canonical text.
pub struct Loaded {
    pub file: InstanceFile,
    pub instance: Instance,
    pub digest: String,
}

pub fn digest(file: &InstanceFile) -> String {
    hex::encode(Sha256::digest(file.to_text().as_bytes()))
}

pub fn load_text(text: &str) -> CliResult<Loaded> {
    let file = InstanceFile::parse(text)?;
    let instance = file.build()?;
    Ok(Loaded {
        digest: digest(&file),
        file,
        instance,
    })
}

fn load(path: Option<&Path>) -> CliResult<Loaded> {
    let text = match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| CliError::invalid(p.display().to_string(), e.to_string()))?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    load_text(&text)
}

fn int(x: &Int) -> Value {
    Value::Number(x.to_string().parse().expect("integers are JSON numbers"))
}

fn ints(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(&m.row(i))).collect())
}

fn group(p: &Presentation) -> String {
    p.invariants().to_string()
}

fn show(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn new_report(command: &str, l: &Loaded) -> Report {
    let mut r = Report::new(command);
    r.instance = Some(l.digest.clone());
    r
}

pub fn validate(l: &Loaded) -> CliResult<Report> {
    let f = &l.instance.filtered;
    f.validate().map_err(|e| CliError::core("filtration", e))?;
    let groups: Vec<Value> = f
        .complex()
        .degrees()
        .map(|i| json!({"degree": i, "group": group(&f.complex().group(i))}))
        .collect();
    let mut r = new_report("validate", l);
    r.lines = f
        .complex()
        .degrees()
        .map(|i| format!("C^{i} = {}", group(&f.complex().group(i))))
        .collect();
    r.lines.push(format!("levels {}..={}", f.p_min(), f.p_max()));
    r.result = json!({
        "degrees": [f.lo(), f.hi()],
        "levels": [f.p_min(), f.p_max()],
        "groups": groups,
        "layer": l.instance.layer.is_some(),
    });
    r.verdict = "valid".to_string();
    Ok(r)
}

/// `E_r`, with entries evaluated on up to `threads` workers. The result does
/// not depend on `threads`.
pub fn compute_page(f: &FilteredComplex, r: i64, threads: usize) -> Page {
    let pos = positions(f);
    let entries = if threads <= 1 || pos.len() < 2 {
        pos.iter().map(|&(s, t)| page_entry(f, r, s, t)).collect()
    } else {
        let chunk = pos.len().div_ceil(threads);
        std::thread::scope(|sc| {
            let workers: Vec<_> = pos
                .chunks(chunk)
                .map(|part| sc.spawn(move || part.iter().map(|&(s, t)| page_entry(f, r, s, t)).collect::<Vec<_>>()))
                .collect();
            workers
                .into_iter()
                .flat_map(|w| w.join().expect("page worker panicked"))
                .collect()
        })
    };
    assemble_page(f, r, entries)
}

fn page_record(p: &Page, lines: &mut Vec<String>) -> Value {
    let m = p.r + 1;
    let mut entries: Vec<(i64, i64, String)> = p
        .entries()
        .filter(|e| !e.is_zero())
        .map(|e| {
            let (_, deg, w) = to_report(p.r, e.s, e.t);
            (deg, w, group(e.group()))
        })
        .collect();
    entries.sort();
    if entries.is_empty() {
        lines.push(format!("E_{m} = 0"));
    }
    for (deg, w, g) in &entries {
        lines.push(format!("E_{m}^{{{deg},{w}}} = {g}"));
    }
    let mut diffs = Vec::new();
    for (&(s, t), h) in p.differentials() {
        if h.is_zero_map() {
            continue;
        }
        let (_, d0, w0) = to_report(p.r, s, t);
        let (s1, t1) = p.target_of(s, t);
        let (_, d1, w1) = to_report(p.r, s1, t1);
        let iso = h.is_isomorphism();
        lines.push(format!(
            "d_{m}: E_{m}^{{{d0},{w0}}} -> E_{m}^{{{d1},{w1}}}  {} -> {}{}",
            group(h.source()),
            group(h.target()),
            if iso { "  isomorphism" } else { "" }
        ));
        diffs.push(((d0, w0), json!({
            "from": [d0, w0],
            "to": [d1, w1],
            "source": group(h.source()),
            "target": group(h.target()),
            "matrix": matrix(h.matrix()),
            "injective": h.is_injective(),
            "surjective": h.is_surjective(),
            "isomorphism": iso,
        })));
    }
    diffs.sort_by_key(|(k, _)| *k);
    json!({
        "page": m,
        "zero": entries.is_empty(),
        "entries": entries.iter().map(|(d, w, g)| json!({"degree": d, "weight": w, "group": g})).collect::<Vec<_>>(),
        "differentials": diffs.into_iter().map(|(_, v)| v).collect::<Vec<_>>(),
    })
}

pub fn pages(l: &Loaded, r_max: Option<i64>, threads: usize) -> CliResult<Report> {
    let f = &l.instance.filtered;
    let stable = stabilization_index(f) + 1;
    let r_max = r_max.unwrap_or(stable);
    if r_max < 2 {
        return Err(CliError::invalid("--r-max", format!("the first page is 2, got {r_max}")));
    }
    let mut lines = Vec::new();
    let mut records = Vec::new();
    for m in 2..=r_max {
        let p = compute_page(f, m - 1, threads);
        if let Some((s, t)) = p.square_zero_violation() {
            let (_, d, w) = to_report(p.r, s, t);
            return Err(CliError::Failed(format!("d_{m} does not square to zero at ({d}, {w})")));
        }
        records.push(page_record(&p, &mut lines));
    }
    let inf = e_infinity(f).map_err(|e| CliError::core("pages", e))?;
    let mut inf_lines = Vec::new();
    let mut inf_record = page_record(&inf.page, &mut inf_lines);
    inf_record["page"] = Value::from("inf");
    lines.extend(inf_lines.into_iter().map(|s| s.replacen(&format!("E_{}", inf.index + 1), "E_inf", 1)));
    let mut coh = Vec::new();
    for i in f.complex().degrees() {
        let g = group(cohomology(f.complex(), i).group());
        lines.push(format!("H^{i} = {g}"));
        coh.push(json!({"degree": i, "group": g}));
    }
    let conv = verify_convergence(f).map_err(|e| CliError::core("pages", e))?;
    if let Some((s, t)) = conv.first_failure() {
        let (_, d, w) = to_report(1, s, t);
        return Err(CliError::Failed(format!("E_inf^{{{d},{w}}} is not the graded piece of H^{d}")));
    }
    let conv_records: Vec<Value> = conv
        .records
        .iter()
        .filter(|c| !c.e_infinity.is_trivial())
        .map(|c| {
            let (_, d, w) = to_report(1, c.s, c.t);
            json!({"degree": d, "weight": w, "e_infinity": group(&c.e_infinity), "graded": group(&c.graded), "isomorphic": c.isomorphic})
        })
        .collect();
    let mut r = new_report("pages", l).arg("r_max", r_max);
    r.lines = lines;
    r.result = json!({
        "stable_page": inf.index + 1,
        "pages": records,
        "e_infinity": inf_record,
        "cohomology": coh,
        "convergence": conv_records,
    });
    r.verdict = format!("converges; pages are stable from E_{}", inf.index + 1);
    Ok(r)
}

/// Parses `1,0,-2` (brackets optional) into a vector.
pub fn parse_vector(text: &str, flag: &str) -> CliResult<Vec<Int>> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::invalid(flag, format!("{:?} is not an integer", x.trim())))
        })
        .collect()
}

fn stage_records(t: &ObstructionTower, lines: &mut Vec<String>) -> Vec<Value> {
    t.stages
        .iter()
        .map(|st| {
            lines.push(format!(
                "Psi^{} = {} in {} (level {}){}",
                st.n,
                if st.nonzero { show(&st.value) } else { "0".to_string() },
                group(&st.group),
                st.level,
                if st.matches_direct { "" } else { "  MISMATCH" }
            ));
            json!({
                "stage": st.n,
                "level": st.level,
                "group": group(&st.group),
                "value": ints(&st.value),
                "nonzero": st.nonzero,
                "matches_direct": st.matches_direct,
            })
        })
        .collect()
}

fn verdict_text(v: Verdict) -> String {
    match v {
        Verdict::Vanishes => "all stages vanish".to_string(),
        Verdict::FirstNonzero(n) => format!("first nonzero stage {n}"),
    }
}

pub fn tower(l: &Loaded, degree: Option<i64>, class: Option<&str>, seed: u64) -> CliResult<Report> {
    let f = &l.instance.filtered;
    let md = &l.instance.metadata;
    let d = degree
        .or(md.d)
        .ok_or_else(|| CliError::invalid("--degree", "no degree given and the instance declares none"))?;
    let mut r = new_report("tower", l).arg("degree", d);
    let band = match md.s {
        Some(s) => {
            let b = check_declared_band(f, d, s).map_err(|e| CliError::core("metadata.s", e))?;
            if let Some((n, g)) = b.violations.first() {
                return Err(CliError::Failed(format!(
                    "declared band s = {s} violated: stage {n} carries E_inf = {}",
                    group(g)
                )));
            }
            Some(s)
        }
        None => None,
    };
    let Some(text) = class else {
        let mut rng = fixtures::rng(seed);
        let v = vanishing_equivalence(f, d, &mut rng, TOWER_SAMPLES).map_err(|e| CliError::core("--degree", e))?;
        if let Some(x) = v.failures.first() {
            return Err(CliError::Failed(format!(
                "tower of the class {} in H^{d} disagrees with its vanishing",
                show(x)
            )));
        }
        if !v.exhaustive {
            r = r.arg("seed", seed);
        }
        r.lines.push(format!("H^{d} = {}", group(&v.group)));
        r.lines.push(format!(
            "{} classes checked{}",
            v.checked,
            if v.exhaustive { ", exhaustive" } else { ", sampled" }
        ));
        r.result = json!({
            "group": group(&v.group),
            "checked": v.checked,
            "exhaustive": v.exhaustive,
            "declared_s": band,
        });
        r.verdict = "a class vanishes exactly when its tower does".to_string();
        return Ok(r);
    };
    let x = parse_vector(text, "--class")?;
    r = r.arg("class", show(&x));
    let c = f.complex();
    if !c.in_range(d) {
        return Err(CliError::invalid("--degree", format!("degree {d} is outside {}..={}", f.lo(), f.hi())));
    }
    let n = c.group(d).generator_count();
    if x.len() != n {
        return Err(CliError::invalid("--class", format!("{} coordinates for C^{d} with {n} generators", x.len())));
    }
    let alpha = CohomologyClass::new(c, d, x).map_err(|e| CliError::core("--class", e))?;
    let ctx = TowerContext::new(f, d).map_err(|e| CliError::core("--degree", e))?;
    let t = match band {
        Some(s) => truncated_tower(&ctx, &alpha, s).map_err(|e| CliError::core("--class", e))?.tower,
        None => ctx.tower(&alpha).map_err(|e| CliError::core("--class", e))?,
    };
    if !t.is_sound() {
        return Err(CliError::Failed("tower disagrees with the direct computation".to_string()));
    }
    let stages = stage_records(&t, &mut r.lines);
    r.result = json!({
        "class_group": group(&alpha.class_group),
        "class": ints(&alpha.class),
        "is_zero": alpha.is_zero(),
        "declared_s": band,
        "stages": stages,
    });
    r.verdict = verdict_text(t.verdict);
    Ok(r)
}

pub fn secondary(l: &Loaded, class: Option<&str>) -> CliResult<Report> {
    let f = &l.instance.filtered;
    let d = l
        .instance
        .metadata
        .d
        .ok_or_else(|| CliError::invalid("metadata.d", "the comparison needs the declared degree d"))?;
    let sys = match &l.instance.layer {
        Some((m, red)) => ComparisonSystem::build(f, d, m, red),
        None => ComparisonSystem::trivial(f, d),
    }
    .map_err(|e| CliError::core("metadata.d", e))?;
    let cmp = comparison_sequences(&sys).map_err(|e| CliError::core("secondary", e))?;
    if let Some(c) = cmp.first_failure() {
        return Err(CliError::Failed(format!("{} fails: {}", c.name, c.detail)));
    }
    let x = class.map(|t| parse_vector(t, "--class")).transpose()?;
    let sec = secondary_from_comparison(&sys, x.as_deref()).map_err(|e| CliError::core("--class", e))?;
    if !sec.isomorphic {
        return Err(CliError::Failed(format!(
            "cokernel {} does not match E_inf = {}",
            group(&sec.result.cokernel),
            group(&sec.e_infinity)
        )));
    }
    if x.is_some() && !sec.class_agrees {
        return Err(CliError::Failed("cokernel class does not match the tower".to_string()));
    }
    let mut r = new_report("secondary", l);
    if let Some(v) = &x {
        r = r.arg("class", show(v));
    }
    let checks: Vec<Value> = cmp
        .checks
        .iter()
        .map(|c| {
            r.lines.push(format!("{}: {}", c.name, if c.passed { "exact" } else { "FAILS" }));
            json!({"name": c.name, "passed": c.passed, "detail": c.detail})
        })
        .collect();
    r.lines.push(format!("cokernel = {}", group(&sec.result.cokernel)));
    r.lines.push(format!("E_inf^{{{d},{}}} = {}", d + 1, group(&sec.e_infinity)));
    let mut result = Map::new();
    result.insert("checks".into(), Value::Array(checks));
    result.insert("top_replaced_generators".into(), sys.mw.complex().group(d).generator_count().into());
    result.insert("cokernel".into(), group(&sec.result.cokernel).into());
    result.insert("e_infinity".into(), group(&sec.e_infinity).into());
    result.insert("isomorphic".into(), sec.isomorphic.into());
    if x.is_some() {
        result.insert("class".into(), ints(&sec.result.class));
        result.insert("class_is_zero".into(), sec.result.is_zero.into());
        if let Some(t) = &sec.tower {
            result.insert("stages".into(), Value::Array(stage_records(t, &mut r.lines)));
        }
    }
    r.result = Value::Object(result);
    r.verdict = if x.is_some() && !sec.result.is_zero {
        "secondary obstruction is nonzero".to_string()
    } else if sec.result.cokernel.is_trivial() {
        "cokernel is zero".to_string()
    } else {
        "secondary obstruction vanishes".to_string()
    };
    Ok(r)
}

pub fn gersten(space: &str, q: u32, weight: usize, bound: u32, mod2: bool, pair: bool) -> CliResult<InstanceFile> {
    let sp = Space::parse(space)
        .ok_or_else(|| CliError::invalid("--space", format!("unknown space {space:?}, expected affine_line or projective_line")))?;
    let g = gersten_complex(sp, q, weight, bound, mod2).map_err(|e| CliError::core("gersten", e))?;
    let f = if pair {
        two_level_pair(&g).map_err(|e| CliError::core("--pair", e))?
    } else {
        FilteredComplex::one_level(g.complex.clone(), 0)
    };
    let metadata = Metadata {
        name: Some(g.describe()),
        d: Some(f.hi()),
        s: None,
        twist: None,
    };
    Ok(InstanceFile::new(metadata, &f, None))
}

pub fn fixture(name: &str) -> CliResult<InstanceFile> {
    let fx = fixtures::named(name).map_err(|e| CliError::core("--name", e))?;
    let metadata = Metadata {
        name: Some(fx.name.clone()),
        d: Some(fx.d),
        s: fx.declared_s,
        twist: None,
    };
    Ok(InstanceFile::new(metadata, &fx.filtered, Some((&fx.layer, &fx.red))))
}

pub fn parse_ring(spec: &str) -> CliResult<std::sync::Arc<ChowRing>> {
    let mut dims = Vec::new();
    for part in spec.split(['x', 'X']) {
        let n = part
            .trim()
            .strip_prefix('P')
            .and_then(|n| n.parse::<u32>().ok())
            .ok_or_else(|| CliError::invalid("--ring", format!("{part:?} is not of the form P<n>")))?;
        dims.push(n);
    }
    if dims.len() > MAX_FACTORS || dims.iter().any(|&n| n > MAX_PROJECTIVE_DIM) {
        return Err(CliError::Unsupported(format!(
            "rings with more than {MAX_FACTORS} factors or factors above P{MAX_PROJECTIVE_DIM}"
        )));
    }
    Ok(if dims.len() == 1 {
        ChowRing::projective(dims[0])
    } else {
        ChowRing::product(&dims)
    })
}

/// Parses a sum of monomials such as `h1*h2^2 + h2^3`, `1` or `0`.
pub fn parse_class(ring: &std::sync::Arc<ChowRing>, text: &str, zero_codim: i64, flag: &str) -> CliResult<ChowClass> {
    let text = text.trim();
    if text == "0" {
        return Ok(ChowClass::zero(ring, zero_codim));
    }
    let mut monomials = Vec::new();
    for term in text.split('+') {
        let term = term.trim();
        let mut m = vec![0u32; ring.variables()];
        if term != "1" {
            for factor in term.split('*') {
                let factor = factor.trim();
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| CliError::invalid(flag, format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let i = ring
                    .names()
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| CliError::invalid(flag, format!("unknown variable {name:?}, the ring has {}", ring.names().join(", "))))?;
                m[i] += e;
            }
        }
        monomials.push(m);
    }
    let codim = monomials[0].iter().map(|&e| e as i64).sum();
    ChowClass::from_monomials(ring, codim, &monomials).map_err(|e| CliError::core(flag, e))
}

pub fn sq2_report(ring_spec: &str, c1_spec: Option<&str>, class_spec: &str) -> CliResult<Report> {
    let ring = parse_ring(ring_spec)?;
    let c1 = parse_class(&ring, c1_spec.unwrap_or("0"), 1, "--c1")?;
    if c1.codim() != 1 {
        return Err(CliError::invalid("--c1", format!("twisting class must have codimension 1, got {}", c1.codim())));
    }
    let x = parse_class(&ring, class_spec, 0, "--class")?;
    let s = sq2(&x);
    let phi = twisted_phi(&c1, &x).map_err(|e| CliError::core("--c1", e))?;
    let phi2 = twisted_phi(&c1, &phi).map_err(|e| CliError::core("--c1", e))?;
    if !phi2.is_zero() {
        return Err(CliError::Failed(format!("twisted operation does not square to zero: {}", phi2.display())));
    }
    let susp = suspension_check(&x).map_err(|e| CliError::core("--class", e))?;
    if !susp.holds() {
        return Err(CliError::Failed(format!(
            "suspension fails: {} != {}",
            susp.lhs.display(),
            susp.rhs.display()
        )));
    }
    let assembled = if x.codim() <= ring.top_degree() {
        let a = diagonal_differential_assembly(&ring, &c1, x.codim()).map_err(|e| CliError::core("--class", e))?;
        let ok = verify_assembly(&a).map_err(|e| CliError::core("--class", e))?;
        if !ok {
            return Err(CliError::Failed("first page differential of the assembly differs from the operation".to_string()));
        }
        true
    } else {
        false
    };
    let mut r = Report::new("sq2").arg("ring", ring_spec).arg("c1", c1.display()).arg("class", x.display());
    r.lines = vec![
        format!("Sq2({}) = {}", x.display(), s.display()),
        format!("Phi({}) = {}", x.display(), phi.display()),
        "Phi o Phi = 0".to_string(),
        "Sq2 commutes with suspension".to_string(),
    ];
    if assembled {
        r.lines.push("assembled complex reproduces Phi on its first page".to_string());
    }
    r.result = json!({
        "codim": x.codim(),
        "sq2": s.display(),
        "twisted": phi.display(),
        "twisted_squared_zero": true,
        "suspension": true,
        "assembly": assembled,
    });
    r.verdict = "identities hold".to_string();
    Ok(r)
}
