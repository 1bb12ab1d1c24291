//! The `cdga` command surface.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 64 internal error.

use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cdga_core::cdga::DSquaredReport;
use cdga_core::obstructions::{
    c_splitting_betti, describe, fatness_weight_certificate, gysin_betti, gysin_sequence,
    hard_lefschetz_check, sasaki_parity_test, BettiVector, FatnessCertificate, SasakianVerdict,
    Verdict, WeightVector,
};
use cdga_core::spaces::{self, k_contact_pipeline, PipelineBase, SpaceData};
use cdga_core::sullivan::{minimal_model, sphere_bundle_model};
use cdga_core::{cohomology_table, extract_ring, Cdga, Error, FiniteRing};

use crate::classes::parse_class;
use crate::document::{inputs_digest, ResultDocument};
use crate::dsl::{self, sanitize_name};
use crate::ring_json::{read_ring, RingFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "cdga",
    version,
    about = "Exact CDGA cohomology, Sullivan models and K-contact obstructions"
)]
pub struct Cli {
    /// Print a JSON result document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers and representative cocycles.
    Cohomology {
        /// DSL file or catalog name.
        source: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// d² = 0, minimality and Sullivan filtration.
    Check { source: String },
    /// Model of the sphere bundle with the given Euler class.
    SphereBundle {
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        euler: String,
        #[arg(long = "fiber-dim")]
        fiber_dim: u32,
        #[arg(long)]
        max_degree: u32,
    },
    /// Minimal model with a quasi-isomorphism certificate.
    MinimalModel {
        source: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Odd-degree Betti parity test for Sasakian manifolds.
    SasakiCheck {
        /// Comma-separated b0,b1,…; `?` marks an unknown entry.
        #[arg(long)]
        betti: String,
        #[arg(long)]
        dim: usize,
    },
    /// Hard Lefschetz maps of a degree-2 class.
    Lefschetz {
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Betti numbers of a circle bundle via the Gysin sequence.
    Gysin {
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        euler: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Betti number of a c-split bundle.
    Csplit {
        #[arg(long)]
        fiber: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        k: usize,
        /// Fibre dimension, if longer than the listed entries.
        #[arg(long)]
        fiber_dim: Option<usize>,
        #[arg(long)]
        base_dim: Option<usize>,
    },
    /// Positive-weight fatness certificate.
    FatWeights {
        #[arg(allow_hyphen_values = true)]
        weights: String,
    },
    /// Sphere bundle over a symplectic base, Sasakian test and fatness certificate.
    Pipeline {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        max_degree: u32,
        /// Formal dimension of a base given as a file.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// List the catalog.
    Catalog,
    /// Cup-product ring of a model as ring JSON.
    Ring {
        source: String,
        #[arg(long)]
        max_degree: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::ContainmentViolation => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Report {
    negative: bool,
    text: String,
    results: Value,
}

#[derive(Default)]
struct Context {
    files: Vec<(String, Vec<u8>)>,
    warnings: Vec<String>,
}

impl Context {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Failure::Input(format!("{path}: not valid UTF-8")))?;
        self.files.push((path.to_string(), bytes));
        Ok(text)
    }
}

/// A model or Betti data named on the command line.
struct Source {
    name: String,
    data: SourceData,
}

enum SourceData {
    Model {
        cdga: Cdga,
        dimension: Option<usize>,
    },
    Betti(BettiVector),
}

fn load(ctx: &mut Context, arg: &str) -> Result<Source, Failure> {
    if Path::new(arg).is_file() {
        let text = ctx.read(arg)?;
        let parsed = dsl::parse(&text).map_err(|d| Failure::Input(format!("{arg}: {d}")))?;
        ctx.warnings
            .extend(parsed.warnings.iter().map(|w| format!("{arg}: {w}")));
        return Ok(Source {
            name: parsed.name,
            data: SourceData::Model {
                cdga: parsed.cdga,
                dimension: None,
            },
        });
    }
    match spaces::lookup(arg) {
        Ok(entry) => Ok(Source {
            name: entry.name,
            data: match entry.data {
                SpaceData::Model { cdga, dimension } => SourceData::Model {
                    cdga,
                    dimension: Some(dimension),
                },
                SpaceData::Betti { betti, .. } => SourceData::Betti(betti),
            },
        }),
        Err(_) => Err(Failure::Input(format!(
            "`{arg}` is neither a file nor a catalog entry"
        ))),
    }
}

fn load_model(ctx: &mut Context, arg: &str) -> Result<(String, Cdga, Option<usize>), Failure> {
    let source = load(ctx, arg)?;
    match source.data {
        SourceData::Model { cdga, dimension } => Ok((source.name, cdga, dimension)),
        SourceData::Betti(_) => Err(Failure::Input(format!(
            "`{arg}` only has Betti data; a model is required"
        ))),
    }
}

fn load_ring(ctx: &mut Context, path: &str) -> Result<FiniteRing, Failure> {
    let text = ctx.read(path)?;
    read_ring(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn parse_expression(
    ctx: &mut Context,
    cdga: &Cdga,
    text: &str,
    what: &str,
) -> Result<cdga_core::Element, Failure> {
    let (e, warnings) = dsl::parse_element(cdga.algebra(), text)
        .map_err(|d| Failure::Input(format!("{what}: column {}: {}", d.column, d.message)))?;
    ctx.warnings.extend(
        warnings
            .iter()
            .map(|w| format!("{what}: column {}: {}", w.column, w.message)),
    );
    Ok(e)
}

/// `1,0,?,3` with `?` for unknown entries.
pub fn parse_betti_list(text: &str) -> Result<Vec<Option<u64>>, String> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            if s == "?" {
                Ok(None)
            } else {
                s.parse::<u64>()
                    .map(Some)
                    .map_err(|_| format!("`{s}` is not a Betti number (use `?` for unknown)"))
            }
        })
        .collect()
}

fn betti_vector(text: &str, dim: Option<usize>) -> Result<BettiVector, Failure> {
    let values = parse_betti_list(text).map_err(Failure::Input)?;
    let dim = dim.unwrap_or(values.len() - 1);
    Ok(BettiVector::new(dim, values)?)
}

fn parse_weights(text: &str) -> Result<WeightVector, Failure> {
    let weights = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Input(format!("`{}` is not an integer weight", s.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightVector::new(weights)?)
}

fn betti_json(b: &BettiVector) -> Value {
    json!(b.values())
}

fn betti_text(b: &BettiVector) -> String {
    b.values()
        .iter()
        .map(|v| v.map_or_else(|| "?".to_string(), |x| x.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::NotSasakian => "not-sasakian",
        Verdict::NoObstruction => "no-obstruction",
    }
}

fn sasakian_json(v: &SasakianVerdict) -> Value {
    json!({
        "dimension": v.dimension,
        "checked": v.checked,
        "offending": v.offending.iter().map(|(p, b)| json!({"degree": p, "betti": b})).collect::<Vec<_>>(),
        "unknown": v.unknown,
        "verdict": verdict_name(v.verdict),
    })
}

fn fatness_json(f: &FatnessCertificate) -> Value {
    json!({
        "certified": f.certified,
        "moment_lower_bound": f.moment_lower_bound.to_string(),
    })
}

fn fatness_text(f: &FatnessCertificate) -> String {
    if f.certified {
        format!("certified, bound {}", f.moment_lower_bound)
    } else {
        format!("not certified, bound {}", f.moment_lower_bound)
    }
}

fn cohomology(ctx: &mut Context, source: &str, max_degree: u32) -> Result<Report, Failure> {
    let (name, cdga, _) = load_model(ctx, source)?;
    let table = cohomology_table(&cdga, max_degree)?;
    let algebra = cdga.algebra();
    let mut text = format!("algebra {name}, cohomology through degree {max_degree}\n");
    let mut degrees = Vec::new();
    for p in 0..=max_degree {
        let reps: Vec<String> = table
            .representatives(p)
            .iter()
            .map(|r| algebra.render(r))
            .collect();
        let shown: Vec<String> = reps.iter().map(|r| format!("[{r}]")).collect();
        text.push_str(&format!(
            "H^{p}: b = {}  {}\n",
            table.betti(p),
            shown.join(" ")
        ));
        degrees.push(json!({"degree": p, "betti": table.betti(p), "representatives": reps}));
    }
    text.push_str(&format!("betti: {}\n", join(&table.bettis())));
    Ok(Report {
        negative: false,
        text,
        results: json!({
            "algebra": name,
            "max_degree": max_degree,
            "betti": table.bettis(),
            "degrees": degrees,
        }),
    })
}

fn check(ctx: &mut Context, source: &str) -> Result<Report, Failure> {
    let (name, algebra, differential) = if Path::new(source).is_file() {
        let text = ctx.read(source)?;
        let u =
            dsl::parse_unchecked(&text).map_err(|d| Failure::Input(format!("{source}: {d}")))?;
        ctx.warnings
            .extend(u.warnings.iter().map(|w| format!("{source}: {w}")));
        (u.name, u.algebra, u.differential)
    } else {
        let (name, cdga, _) = load_model(ctx, source)?;
        (name, cdga.algebra().clone(), cdga.differential().to_vec())
    };
    let top = algebra
        .generators()
        .iter()
        .map(|g| g.degree + 2)
        .max()
        .unwrap_or(0);
    let report = cdga_core::cdga::check_d_squared(&algebra, &differential, top)?;
    let mut text = format!("algebra {name}\n");
    let d_squared = match &report {
        DSquaredReport::Pass => {
            text.push_str("d^2 = 0: pass\n");
            json!({"passed": true})
        }
        DSquaredReport::Fail { generator, witness } => {
            let w = algebra.render(witness);
            text.push_str(&format!("d^2 = 0: fail, d(d {generator}) = {w}\n"));
            json!({"passed": false, "generator": generator, "witness": w})
        }
    };
    let (minimal, filtration, negative) = if report.passed() {
        let cdga = Cdga::new(algebra, differential)?;
        let minimality = cdga.is_minimal();
        let minimal = match &minimality {
            cdga_core::cdga::Minimality::Minimal => {
                text.push_str("minimal: yes\n");
                json!({"minimal": true})
            }
            cdga_core::cdga::Minimality::NotMinimal { generator } => {
                text.push_str(&format!("minimal: no, d({generator}) has a linear term\n"));
                json!({"minimal": false, "generator": generator})
            }
        };
        let filtration = match cdga.filtration() {
            Some(f) => {
                let stages: Vec<Vec<String>> = f
                    .stages
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|&i| cdga.algebra().name(i).to_string())
                            .collect()
                    })
                    .collect();
                for (k, s) in stages.iter().enumerate() {
                    text.push_str(&format!("V({k}): {}\n", s.join(" ")));
                }
                json!(stages)
            }
            None => {
                text.push_str("no Sullivan filtration\n");
                Value::Null
            }
        };
        (minimal, filtration, !minimality.is_minimal())
    } else {
        (Value::Null, Value::Null, true)
    };
    Ok(Report {
        negative,
        text,
        results: json!({
            "algebra": name,
            "d_squared": d_squared,
            "minimality": minimal,
            "filtration": filtration,
        }),
    })
}

fn sphere_bundle(
    ctx: &mut Context,
    source: &str,
    euler: &str,
    fiber_dim: u32,
    max_degree: u32,
) -> Result<Report, Failure> {
    let (name, cdga, _) = load_model(ctx, source)?;
    let e = parse_expression(ctx, &cdga, euler, "--euler")?;
    let model = sphere_bundle_model(&cdga, &e, fiber_dim)?;
    let table = cohomology_table(&model, max_degree)?;
    let model_name = format!("{}_bundle", sanitize_name(&name));
    let document = dsl::render(&model, &model_name);
    let text = format!(
        "{document}betti through degree {max_degree}: {}\n",
        join(&table.bettis())
    );
    Ok(Report {
        negative: false,
        text,
        results: json!({
            "base": name,
            "euler": cdga.algebra().render(&e),
            "fiber_dim": fiber_dim,
            "model": document,
            "max_degree": max_degree,
            "betti": table.bettis(),
        }),
    })
}

fn minimal(ctx: &mut Context, source: &str, max_degree: u32) -> Result<Report, Failure> {
    let (name, cdga, _) = load_model(ctx, source)?;
    let mm = minimal_model(&cdga, max_degree)?;
    if !mm.certificate.holds() {
        return Err(Failure::Internal(
            "minimal model certificate does not hold".into(),
        ));
    }
    let model_name = format!("{}_min", sanitize_name(&name));
    let document = dsl::render(&mm.model, &model_name);
    let mut text = document.clone();
    let mut images = Vec::new();
    for (g, image) in mm
        .model
        .algebra()
        .generators()
        .iter()
        .zip(mm.morphism.images())
    {
        let r = cdga.algebra().render(image);
        text.push_str(&format!("phi({}) = {r}\n", g.name));
        images.push(json!({"generator": g.name, "image": r}));
    }
    let mut degrees = Vec::new();
    for c in &mm.certificate.degrees {
        let status = if c.is_isomorphism() {
            "isomorphism"
        } else if c.is_injective() {
            "injective"
        } else {
            "neither"
        };
        text.push_str(&format!(
            "H^{}: {} -> {}, rank {}, {status}\n",
            c.degree, c.source_betti, c.target_betti, c.rank
        ));
        degrees.push(json!({
            "degree": c.degree,
            "source_betti": c.source_betti,
            "target_betti": c.target_betti,
            "rank": c.rank,
            "status": status,
        }));
    }
    Ok(Report {
        negative: false,
        text,
        results: json!({
            "input": name,
            "max_degree": max_degree,
            "model": document,
            "images": images,
            "certificate": {"holds": true, "degrees": degrees},
        }),
    })
}

fn sasaki(betti: &str, dim: usize) -> Result<Report, Failure> {
    let b = betti_vector(betti, Some(dim))?;
    let v = sasaki_parity_test(&b)?;
    let mut text = format!("{}\n", describe(&v));
    if !v.unknown.is_empty() {
        text.push_str(&format!(
            "unknown: {}\n",
            join(
                &v.unknown
                    .iter()
                    .map(|p| format!("b_{p}"))
                    .collect::<Vec<_>>()
            )
        ));
    }
    Ok(Report {
        negative: v.verdict == Verdict::NotSasakian,
        text,
        results: json!({"betti": betti_json(&b), "sasakian": sasakian_json(&v)}),
    })
}

fn lefschetz(ctx: &mut Context, ring: &str, class: &str) -> Result<Report, Failure> {
    let r = load_ring(ctx, ring)?;
    let v = parse_class(&r, class).map_err(|e| Failure::Input(format!("--class: {e}")))?;
    let report = hard_lefschetz_check(&r, &v)?;
    let mut text = String::new();
    let mut steps = Vec::new();
    for s in &report.steps {
        let ok = s.is_isomorphism();
        text.push_str(&format!(
            "p = {}: H^{} ({}) -> H^{} ({}), rank {}: {}\n",
            s.p,
            s.source_degree,
            s.source_dim,
            s.target_degree,
            s.target_dim,
            s.rank,
            if ok { "isomorphism" } else { "fails" }
        ));
        steps.push(json!({
            "p": s.p,
            "source_degree": s.source_degree,
            "target_degree": s.target_degree,
            "source_dim": s.source_dim,
            "target_dim": s.target_dim,
            "rank": s.rank,
            "isomorphism": ok,
        }));
    }
    let holds = report.is_lefschetz();
    text.push_str(if holds {
        "hard Lefschetz: holds\n"
    } else {
        "hard Lefschetz: fails\n"
    });
    Ok(Report {
        negative: !holds,
        text,
        results: json!({
            "n": report.n,
            "steps": steps,
            "lefschetz": holds,
            "first_failure": report.first_failure(),
        }),
    })
}

fn gysin(ctx: &mut Context, ring: &str, euler: &str, max_degree: u32) -> Result<Report, Failure> {
    let r = load_ring(ctx, ring)?;
    let e = parse_class(&r, euler).map_err(|e| Failure::Input(format!("--euler: {e}")))?;
    let betti = gysin_betti(&r, &e, max_degree)?;
    let seq = gysin_sequence(&r, &e, max_degree)?;
    if !seq.is_exact() {
        return Err(Failure::Internal(
            "Gysin sequence bookkeeping is not exact".into(),
        ));
    }
    let degrees: Vec<Value> = seq
        .degrees
        .iter()
        .map(|g| {
            json!({
                "degree": g.degree,
                "cokernel": g.cokernel,
                "kernel": g.kernel,
                "betti": g.total_betti(),
            })
        })
        .collect();
    Ok(Report {
        negative: false,
        text: format!(
            "dimension {}, betti: {}\n",
            betti.dimension(),
            betti_text(&betti)
        ),
        results: json!({
            "dimension": betti.dimension(),
            "betti": betti_json(&betti),
            "degrees": degrees,
        }),
    })
}

fn csplit(
    fiber: &str,
    base: &str,
    k: usize,
    fiber_dim: Option<usize>,
    base_dim: Option<usize>,
) -> Result<Report, Failure> {
    let f = betti_vector(fiber, fiber_dim)?;
    let b = betti_vector(base, base_dim)?;
    let value = c_splitting_betti(&f, &b, k)?;
    Ok(Report {
        negative: false,
        text: format!("{value}\n"),
        results: json!({"k": k, "betti": value}),
    })
}

fn fat(weights: &str) -> Result<Report, Failure> {
    let w = parse_weights(weights)?;
    let f = fatness_weight_certificate(&w);
    Ok(Report {
        negative: !f.certified,
        text: format!("{}\n", fatness_text(&f)),
        results: json!({"weights": w.weights(), "fatness": fatness_json(&f)}),
    })
}

fn pipeline(
    ctx: &mut Context,
    base: &str,
    omega: Option<&str>,
    weights: &str,
    max_degree: u32,
    dim: Option<usize>,
) -> Result<Report, Failure> {
    let w = parse_weights(weights)?;
    let source = load(ctx, base)?;
    let report = match &source.data {
        SourceData::Model { cdga, dimension } => {
            let dimension = dim.or(*dimension).ok_or_else(|| {
                Failure::Input("--dim is required for a base given as a file".into())
            })?;
            let omega = omega
                .ok_or_else(|| Failure::Input("--omega is required for a model base".into()))?;
            let omega = parse_expression(ctx, cdga, omega, "--omega")?;
            k_contact_pipeline(
                &source.name,
                &PipelineBase::Model {
                    cdga,
                    dimension,
                    omega: &omega,
                },
                &w,
                max_degree,
            )?
        }
        SourceData::Betti(b) => {
            if omega.is_some() {
                return Err(Failure::Input(format!(
                    "`{base}` only has Betti data; --omega does not apply"
                )));
            }
            k_contact_pipeline(&source.name, &PipelineBase::Betti(b), &w, max_degree)?
        }
    };
    let mut text = format!(
        "base {}, fibre S^{}, total space dimension {}\n",
        report.base, report.fibre_dimension, report.dimension
    );
    if let (Some(o), Some(e)) = (&report.omega, &report.euler) {
        text.push_str(&format!("omega = {o}, euler = {e}\n"));
    }
    text.push_str(&format!("betti: {}\n", betti_text(&report.betti)));
    if let Some(r) = &report.rel3 {
        text.push_str(&format!(
            "b3 transfer: base {}, total {}\n",
            r.b3_base, r.b3_extension
        ));
    }
    text.push_str(&format!("{}\n", describe(&report.sasakian)));
    text.push_str(&format!("fatness: {}\n", fatness_text(&report.fatness)));
    let model = report
        .model
        .as_ref()
        .map(|m| dsl::render(m, &format!("{}_total", sanitize_name(&report.base))));
    let rel3 = report.rel3.as_ref().map(
        |r| json!({"generator": r.generator, "b3_base": r.b3_base, "b3_extension": r.b3_extension}),
    );
    Ok(Report {
        negative: report.sasakian.verdict == Verdict::NotSasakian,
        text,
        results: json!({
            "base": report.base,
            "omega": report.omega,
            "euler": report.euler,
            "weights": w.weights(),
            "fibre_dimension": report.fibre_dimension,
            "dimension": report.dimension,
            "max_degree": max_degree,
            "betti": betti_json(&report.betti),
            "model": model,
            "b3_transfer": rel3,
            "sasakian": sasakian_json(&report.sasakian),
            "fatness": fatness_json(&report.fatness),
        }),
    })
}

fn catalog() -> Report {
    let mut text = String::new();
    let mut entries = Vec::new();
    for e in spaces::catalog() {
        match &e.data {
            SpaceData::Model { cdga, dimension } => {
                text.push_str(&format!(
                    "{:<12} model  dim {:<3} {}\n",
                    e.name, dimension, e.description
                ));
                entries.push(json!({
                    "name": e.name,
                    "kind": "model",
                    "dimension": dimension,
                    "description": e.description,
                    "model": dsl::render(cdga, &sanitize_name(&e.name)),
                }));
            }
            SpaceData::Betti { betti, citation } => {
                text.push_str(&format!(
                    "{:<12} betti  dim {:<3} {} ({})\n",
                    e.name,
                    betti.dimension(),
                    e.description,
                    betti_text(betti)
                ));
                entries.push(json!({
                    "name": e.name,
                    "kind": "betti",
                    "dimension": betti.dimension(),
                    "description": e.description,
                    "betti": betti_json(betti),
                    "citation": citation,
                }));
            }
        }
    }
    Report {
        negative: false,
        text,
        results: json!({"entries": entries}),
    }
}

fn ring(ctx: &mut Context, source: &str, max_degree: u32) -> Result<Report, Failure> {
    let (_, cdga, _) = load_model(ctx, source)?;
    let r = extract_ring(&cdga, max_degree)?;
    let file = RingFile::from_ring(&r);
    Ok(Report {
        negative: false,
        text: crate::ring_json::write_ring(&r),
        results: json!({"ring": file}),
    })
}

fn dispatch(ctx: &mut Context, command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Cohomology { source, max_degree } => cohomology(ctx, source, *max_degree),
        Command::Check { source } => check(ctx, source),
        Command::SphereBundle {
            source,
            euler,
            fiber_dim,
            max_degree,
        } => sphere_bundle(ctx, source, euler, *fiber_dim, *max_degree),
        Command::MinimalModel { source, max_degree } => minimal(ctx, source, *max_degree),
        Command::SasakiCheck { betti, dim } => sasaki(betti, *dim),
        Command::Lefschetz { ring, class } => lefschetz(ctx, ring, class),
        Command::Gysin {
            ring,
            euler,
            max_degree,
        } => gysin(ctx, ring, euler, *max_degree),
        Command::Csplit {
            fiber,
            base,
            k,
            fiber_dim,
            base_dim,
        } => csplit(fiber, base, *k, *fiber_dim, *base_dim),
        Command::FatWeights { weights } => fat(weights),
        Command::Pipeline {
            base,
            omega,
            weights,
            max_degree,
            dim,
        } => pipeline(ctx, base, omega.as_deref(), weights, *max_degree, *dim),
        Command::Catalog => Ok(catalog()),
        Command::Ring { source, max_degree } => ring(ctx, source, *max_degree),
    }
}

/// What a run printed and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args`, whose first element is the program name.
pub fn run(args: Vec<String>) -> Outcome {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut ctx = Context::default();
    let result = dispatch(&mut ctx, &cli.command);
    let mut stderr: String = ctx
        .warnings
        .iter()
        .map(|w| format!("warning: {w}\n"))
        .collect();
    match result {
        Err(f) => {
            let (Failure::Input(m) | Failure::Internal(m)) = &f;
            stderr.push_str(&format!("error: {m}\n"));
            Outcome {
                code: f.code(),
                stdout: String::new(),
                stderr,
            }
        }
        Ok(report) => {
            let code = if report.negative {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            };
            let stdout = if cli.json {
                let mut results = report.results;
                results["warnings"] = json!(ctx.warnings);
                let command = args[1..].to_vec();
                ResultDocument {
                    inputs_digest: inputs_digest(&command, &ctx.files),
                    command,
                    results,
                }
                .to_json()
            } else {
                report.text
            };
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
    }
}
