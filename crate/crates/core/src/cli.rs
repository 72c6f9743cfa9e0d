//! Batch front end: one verb, one JSON input document, one canonical JSON
//! output document.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::budget::{self, Budget};
use crate::cohomology::{h1_enumerate, h2_abelian_enumerate};
use crate::error::{Error, Result};
use crate::global::{
    datum_validate, devissage_solve, hasse_solve, sha, weak_approx_check, DevissageOptions, GlobalDatum,
    HasseOutcome, LocalTargets, ShaClasses, SolveOutcome, Trace,
};
use crate::group::GroupHom;
use crate::io::{self, field};
use crate::lien::{is_neutral, LienContext};
use crate::local::{classify_local_class, lift_totally_ramified, local_h1_enumerate, TameLocalDatum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    GroupInfo,
    H1,
    H2,
    LienH2,
    LienNeutral,
    LocalClassify,
    LocalLift,
    GlobalValidate,
    GlobalSha,
    GlobalWeakApprox,
    GlobalDevissage,
    GlobalHasse,
}

#[derive(Debug, Parser)]
#[command(name = "cohomolib", version, about = "Exact nonabelian cohomology of finite Galois data")]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Input JSON document.
    pub input: PathBuf,
    /// Residue field size for local verbs (overrides the document).
    #[arg(long)]
    pub q: Option<u64>,
    /// Degree for global-sha.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Comma-separated place names for global-weak-approx.
    #[arg(long, value_delimiter = ',')]
    pub places: Option<Vec<String>>,
    /// Worker threads for inner enumerations.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Bound on the orders of acting and coefficient groups.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Make global-devissage reject solutions failing the roots of unity
    /// condition on their splitting group.
    #[arg(long)]
    pub enforce_control: bool,
}

/// What the binary should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn error_json(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string(), "detail": format!("{e:?}") } })
}

pub fn run(cli: &Cli) -> Outcome {
    let previous = budget::current();
    if let Some(b) = cli.budget {
        budget::set(Budget { max_gamma: b, max_order: b, ..previous });
    }
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Error::Input { detail: format!("thread pool: {e}") }),
        },
        None => dispatch(cli),
    };
    let used = budget::current();
    budget::set(previous);
    match result {
        Ok((mut v, code)) => {
            if let Value::Object(m) = &mut v {
                m.insert("schema".into(), json!(io::SCHEMA));
                if cli.budget.is_some() {
                    m.insert(
                        "budget".into(),
                        json!({
                            "max_gamma": used.max_gamma,
                            "max_order": used.max_order,
                            "max_aut": used.max_aut,
                            "max_nodes": used.max_nodes,
                        }),
                    );
                }
            }
            Outcome { stdout: io::to_canonical(&v), stderr: String::new(), code }
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: io::to_canonical(&error_json(&e)),
            code: if e.is_budget() { EXIT_BUDGET } else { EXIT_REJECTED },
        },
    }
}

fn load(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input { detail: format!("cannot read {}: {e}", path.display()) })?;
    io::parse_str(&text)
}

fn dispatch(cli: &Cli) -> Result<(Value, i32)> {
    let doc = load(&cli.input)?;
    match cli.verb {
        Verb::GroupInfo => group_info(&doc),
        Verb::H1 => {
            let ctx = io::parse_action(&doc, None)?;
            let classes: Vec<Value> = h1_enumerate(&ctx)?.iter().map(io::class1_json).collect();
            Ok((json!({ "count": classes.len(), "classes": classes }), EXIT_OK))
        }
        Verb::H2 => {
            let ctx = io::parse_action(&doc, None)?;
            let classes: Vec<Value> = h2_abelian_enumerate(&ctx)?.iter().map(io::cocycle2_json).collect();
            Ok((json!({ "count": classes.len(), "classes": classes }), EXIT_OK))
        }
        Verb::LienH2 => lien_h2(&doc),
        Verb::LienNeutral => lien_neutral(&doc),
        Verb::LocalClassify => local_classify(&doc, cli.q),
        Verb::LocalLift => local_lift(&doc, cli.q),
        Verb::GlobalValidate => {
            let (d, ctx) = datum_and_action(&doc)?;
            let report = datum_validate(&d, &ctx);
            let code = if report.all_pass() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok((serde_json::to_value(&report).expect("serializable"), code))
        }
        Verb::GlobalSha => {
            let (d, ctx) = datum_and_action(&doc)?;
            let degree = match cli.degree {
                Some(k) => k,
                None => doc.get("degree").map(|x| io::as_u64(x, "degree")).transpose()?.unwrap_or(1) as u32,
            };
            let classes: Vec<Value> = match sha(&d, &ctx, degree)? {
                ShaClasses::Degree1(v) => v.iter().map(io::class1_json).collect(),
                ShaClasses::Degree2(v) => v.iter().map(io::cocycle2_json).collect(),
            };
            Ok((json!({ "degree": degree, "count": classes.len(), "classes": classes }), EXIT_OK))
        }
        Verb::GlobalWeakApprox => {
            let (d, ctx) = datum_and_action(&doc)?;
            let places = match &cli.places {
                Some(p) => p.clone(),
                None => match doc.get("places") {
                    Some(p) => p
                        .as_array()
                        .ok_or_else(|| Error::Input { detail: "places must be an array".into() })?
                        .iter()
                        .map(|x| {
                            x.as_str().map(String::from).ok_or_else(|| Error::Input { detail: "place names are strings".into() })
                        })
                        .collect::<Result<Vec<_>>>()?,
                    None => Vec::new(),
                },
            };
            let w = weak_approx_check(&d, &ctx, &places)?;
            let missing = w.missing.as_ref().map(|t| {
                t.iter().zip(&w.places).map(|(c, p)| json!({ "place": p, "values": c.rep().values() })).collect::<Vec<_>>()
            });
            let code = if w.surjective() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok((
                json!({
                    "surjective": w.surjective(),
                    "places": w.places,
                    "image_size": w.image_size,
                    "product_size": w.product_size,
                    "missing": missing,
                }),
                code,
            ))
        }
        Verb::GlobalDevissage => {
            let (d, ctx) = datum_and_action(&doc)?;
            let entries = match doc.get("targets") {
                Some(t) => io::parse_target_entries(t)?,
                None => Vec::new(),
            };
            let targets = LocalTargets::new(&d, &ctx, &entries)?;
            let opts = DevissageOptions { enforce_control: cli.enforce_control };
            Ok(solve_json(&d, &devissage_solve(&d, &ctx, &targets, opts)?))
        }
        Verb::GlobalHasse => global_hasse(&doc),
    }
}

fn group_info(doc: &Value) -> Result<(Value, i32)> {
    let g = io::parse_group(doc.get("group").unwrap_or(doc))?;
    let lengths: Vec<usize> = g.derived_series().iter().map(|s| s.order()).collect();
    Ok((
        json!({
            "order": g.order(),
            "exponent": g.exponent(),
            "abelian": g.is_abelian(),
            "derived_series_lengths": lengths,
        }),
        EXIT_OK,
    ))
}

fn lien_h2(doc: &Value) -> Result<(Value, i32)> {
    let lien = Arc::new(io::parse_lien(doc.get("lien").unwrap_or(doc))?);
    let ctx = LienContext::new(&lien)?;
    let mut classes = Vec::new();
    let mut neutral_count = 0;
    for e in ctx.enumerate()? {
        let neutral = is_neutral(&e)?.is_some();
        neutral_count += usize::from(neutral);
        let mut v = io::extension_json(&e);
        v["neutral"] = json!(neutral);
        classes.push(v);
    }
    Ok((json!({ "count": classes.len(), "neutral_count": neutral_count, "classes": classes }), EXIT_OK))
}

fn lien_neutral(doc: &Value) -> Result<(Value, i32)> {
    let lien = Arc::new(io::parse_lien(field(doc, "lien")?)?);
    let e = io::parse_extension(&lien, field(doc, "class")?)?;
    Ok(match is_neutral(&e)? {
        Some(w) => (json!({ "neutral": true, "witness": { "h": w.h, "phi": w.phi } }), EXIT_OK),
        None => (json!({ "neutral": false, "witness": null }), EXIT_NEGATIVE),
    })
}

fn local_datum(doc: &Value, key: &str, q: Option<u64>) -> Result<TameLocalDatum> {
    let q = match q {
        Some(q) => q,
        None => io::as_u64(field(doc, "q")?, "q")?,
    };
    let g = io::parse_group(field(doc, key)?)?;
    budget::check_target(g.order())?;
    Ok(TameLocalDatum::new(q, Arc::new(g)))
}

fn local_classify(doc: &Value, q: Option<u64>) -> Result<(Value, i32)> {
    let d = local_datum(doc, "group", q)?;
    let classes = local_h1_enumerate(&d)?;
    let (mut unram, mut ram_tr, mut cyclic) = (0, 0, 0);
    let out: Vec<Value> = classes
        .iter()
        .map(|c| {
            let f = classify_local_class(&d, c);
            unram += usize::from(f.unramified);
            ram_tr += usize::from(f.ramified && f.totally_ramified);
            cyclic += usize::from(f.cyclic);
            io::local_class_json(c, &f)
        })
        .collect();
    Ok((
        json!({
            "q_mod_exponent": d.q_mod(),
            "count": out.len(),
            "unramified": unram,
            "totally_ramified": ram_tr,
            "cyclic": cyclic,
            "classes": out,
        }),
        EXIT_OK,
    ))
}

fn local_lift(doc: &Value, q: Option<u64>) -> Result<(Value, i32)> {
    let d = local_datum(doc, "group", q)?;
    let h = io::parse_group(field(doc, "quotient")?)?;
    let p = GroupHom::new(d.group(), &h, io::usize_list(field(doc, "map")?, "map")?)?;
    let dh = TameLocalDatum::new(d.q_mod(), Arc::new(h.clone()));
    let c = field(doc, "class")?;
    let c = dh.class(io::as_usize(field(c, "s")?, "s")?, io::as_usize(field(c, "t")?, "t")?)?;
    let lifted = lift_totally_ramified(&d, &h, &p, &c)?;
    Ok((
        json!({
            "input": io::local_class_json(&c, &classify_local_class(&dh, &c)),
            "lift": io::local_class_json(&lifted, &classify_local_class(&d, &lifted)),
        }),
        EXIT_OK,
    ))
}

fn datum_and_action(doc: &Value) -> Result<(GlobalDatum, crate::cohomology::GammaAction)> {
    let d = io::parse_datum(field(doc, "datum")?)?;
    let ctx = io::parse_action(field(doc, "action")?, Some(d.gamma.clone()))?;
    Ok((d, ctx))
}

fn trace_json(t: &Trace) -> Value {
    serde_json::to_value(&t.events).expect("serializable")
}

fn solve_json(d: &GlobalDatum, out: &SolveOutcome) -> (Value, i32) {
    match out {
        SolveOutcome::Solved(s, trace) => {
            let per_place: Vec<Value> = s
                .per_place
                .iter()
                .map(|l| json!({ "place": l.place, "flags": io::flags_json(&l.flags), "values": l.class.rep().values() }))
                .collect();
            let control = s.control.as_ref().map(|c| serde_json::to_value(c).expect("serializable"));
            (
                json!({
                    "status": "solved",
                    "class": s.class.rep().values(),
                    "per_place": per_place,
                    "control": control,
                    "p_places": d.p_places().iter().map(|&v| d.places[v].name.clone()).collect::<Vec<_>>(),
                    "trace": trace_json(trace),
                    "trace_dropped": trace.dropped,
                }),
                EXIT_OK,
            )
        }
        SolveOutcome::Infeasible(trace) => (
            json!({
                "status": "infeasible",
                "class": null,
                "per_place": [],
                "trace": trace_json(trace),
                "trace_dropped": trace.dropped,
            }),
            EXIT_NEGATIVE,
        ),
    }
}

fn global_hasse(doc: &Value) -> Result<(Value, i32)> {
    let d = io::parse_datum(field(doc, "datum")?)?;
    let lien = Arc::new(io::parse_lien(field(doc, "lien")?)?);
    let eta = io::parse_extension(&lien, field(doc, "class")?)?;
    let witnesses = match doc.get("witnesses") {
        Some(w) => io::parse_target_entries(w)?,
        None => Vec::new(),
    };
    Ok(match hasse_solve(&d, &eta, &witnesses)? {
        HasseOutcome::Certificate(c, trace) => (
            json!({
                "status": "neutral",
                "certificate": {
                    "f0": c.f0,
                    "xi": c.xi.values(),
                    "alpha": c.alpha.rep().values(),
                    "splitting": c.splitting,
                    "phi": c.phi,
                    "method": c.method,
                },
                "trace": trace_json(&trace),
                "trace_dropped": trace.dropped,
            }),
            EXIT_OK,
        ),
        HasseOutcome::Obstruction(trace) => {
            (
                json!({
                    "status": "obstruction",
                    "certificate": null,
                    "trace": trace_json(&trace),
                    "trace_dropped": trace.dropped,
                }),
                EXIT_NEGATIVE,
            )
        }
    })
}
