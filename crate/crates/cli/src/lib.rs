//! Command dispatch for `knotcon`. Rendering is kept separate from process
//! I/O so tests can drive it in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotcon::alexmod::AlexModule;
use knotcon::document::{parse_decimal, Document};
use knotcon::exactalg::{factor_with_cap, Rational};
use knotcon::freegroup::{derived_depth, FreeWord, MAX_LEVEL};
use knotcon::infection::{expand_clones, infectant_slots, solvability_upper_bound, ConstructionNode};
use knotcon::knots::KnotRecord;
use knotcon::rhocalc::first_order_signatures;
use knotcon::verdict::{self, Verdict};
use knotcon::{Error, Exec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_UNKNOWN_REFERENCE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "knotcon", version, about = "Exact concordance obstructions for knots and links")]
pub struct Cli {
    /// JSON input document with knots, axioms, builds and options.
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander polynomial, its factorisation and the module decomposition.
    Alex { knot: String },
    /// Levine-Tristram signature function.
    Sig {
        knot: String,
        /// Write uniform samples to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Number of CSV samples.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Certified integral of the signature function.
    Rho0 {
        knot: String,
        #[arg(long)]
        tol: Option<String>,
    },
    Arf { knot: String },
    /// Self-annihilating submodules of the rational Alexander module.
    Submodules { knot: String },
    /// First-order L²-signatures, symbolically.
    Fos { target: String },
    /// Derived-series depth of a free-group word.
    Dseries {
        word: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = MAX_LEVEL)]
        max: u32,
    },
    /// Upper bound on the solvable filtration level.
    Solvable { build: String },
    /// Sliceness and solvability verdicts.
    Verdict {
        build: String,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
        /// Use the constant of the 9₄₆ zero surgery for doubling towers.
        #[arg(long)]
        sharp: bool,
    },
    /// Rewrite an R-doubling tower by infection along its clones.
    Expand {
        build: String,
        #[arg(long)]
        level: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Auto,
    Bing,
    Infection,
    Doubling,
}

/// What a command printed and how it wants the process to exit.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownReference(_) => EXIT_UNKNOWN_REFERENCE,
        Error::ResourceCap { .. } | Error::DegreeCap { .. } => EXIT_RESOURCE,
        Error::MissingAlexClass { .. } => EXIT_HYPOTHESIS,
        _ => EXIT_INPUT,
    }
}

pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = load(cli).and_then(|doc| dispatch(cli, &doc));
    match result {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => {
            let code = exit_code(&e);
            let stderr = if cli.json {
                format!("{}\n", json!({"error": e.to_string(), "exit_code": code}))
            } else {
                format!("error: {e}\n")
            };
            Outcome { code, stdout: String::new(), stderr }
        }
    }
}

fn load(cli: &Cli) -> knotcon::Result<Document> {
    let mut doc = match &cli.input {
        Some(p) => Document::load(p)?,
        None => Document::default(),
    };
    if cli.sequential {
        doc.context.exec = Exec::Sequential;
    }
    Ok(doc)
}

type Rendered = knotcon::Result<(i32, String)>;

fn dispatch(cli: &Cli, doc: &Document) -> Rendered {
    match &cli.command {
        Command::Alex { knot } => alex(cli, doc, knot),
        Command::Sig { knot, csv, samples } => sig(cli, doc, knot, csv.as_ref(), *samples),
        Command::Rho0 { knot, tol } => rho0(cli, doc, knot, tol.as_deref()),
        Command::Arf { knot } => arf(cli, doc, knot),
        Command::Submodules { knot } => submodules(cli, doc, knot),
        Command::Fos { target } => fos(cli, doc, target),
        Command::Dseries { word, rank, max } => dseries(cli, word, *rank, *max),
        Command::Solvable { build } => solvable(cli, doc, build),
        Command::Verdict { build, engine, sharp } => run_verdict(cli, doc, build, *engine, *sharp),
        Command::Expand { build, level } => expand(cli, doc, build, *level),
    }
}

fn emit(cli: &Cli, v: Value, text: String) -> Rendered {
    if cli.json {
        Ok((EXIT_OK, format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))))
    } else {
        Ok((EXIT_OK, text))
    }
}

fn module(doc: &Document, k: &KnotRecord) -> knotcon::Result<AlexModule> {
    AlexModule::from_seifert_with_cap(k.seifert()?, doc.options.degree_cap)
}

fn alex(cli: &Cli, doc: &Document, name: &str) -> Rendered {
    let k = doc.knot(name)?;
    let v = k.seifert()?;
    let delta = v.alexander_poly();
    let factors = factor_with_cap(&delta, doc.options.degree_cap)?;
    let m = module(doc, &k)?;
    let mut t = String::new();
    writeln!(t, "knot: {}", k.name).unwrap();
    writeln!(t, "Δ(t) = {delta}").unwrap();
    let fs: Vec<String> = factors
        .iter()
        .map(|(f, e)| if *e == 1 { format!("({f})") } else { format!("({f})^{e}") })
        .collect();
    writeln!(t, "factors: {}", if fs.is_empty() { "1".into() } else { fs.join(" ") }).unwrap();
    writeln!(t, "module: {}", if m.is_cyclic() { "cyclic" } else { "not cyclic" }).unwrap();
    writeln!(t, "{:<6} {:<32} {}", "name", "prime", "exponent").unwrap();
    for (j, c) in m.components().iter().enumerate() {
        writeln!(t, "{:<6} {:<32} {}", k.basis_name(j), c.prime.to_string(), c.exponent).unwrap();
    }
    let v = json!({
        "knot": k.name,
        "alexander_polynomial": delta.to_string(),
        "factors": factors.iter().map(|(f, e)| json!({"factor": f.to_string(), "multiplicity": e})).collect::<Vec<_>>(),
        "cyclic": m.is_cyclic(),
        "components": m.components().iter().enumerate().map(|(j, c)| json!({
            "name": k.basis_name(j),
            "prime": c.prime.to_string(),
            "exponent": c.exponent,
        })).collect::<Vec<_>>(),
    });
    emit(cli, v, t)
}

fn sig(cli: &Cli, doc: &Document, name: &str, csv: Option<&PathBuf>, samples: usize) -> Rendered {
    let k = doc.knot(name)?;
    let s = k.seifert()?.signature_function();
    if let Some(path) = csv {
        std::fs::write(path, s.to_csv(samples.max(1)))
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    let jumps = s.jumps();
    let values = s.values();
    let mut t = String::new();
    writeln!(t, "knot: {}", k.name).unwrap();
    writeln!(t, "{:<14} {:<14} {}", "from θ/2π", "to θ/2π", "σ").unwrap();
    let mut rows = Vec::new();
    for (i, val) in values.iter().enumerate() {
        let from = if i == 0 { 0.0 } else { jumps[i - 1].fraction_f64() };
        let to = jumps.get(i).map_or(1.0, |j| j.fraction_f64());
        writeln!(t, "{from:<14.9} {to:<14.9} {val}").unwrap();
        rows.push(json!({"from": from, "to": to, "sigma": val}));
    }
    if s.is_identically_zero() {
        writeln!(t, "signature function is identically zero").unwrap();
    }
    if let Some(p) = csv {
        writeln!(t, "wrote {samples} samples to {}", p.display()).unwrap();
    }
    let v = json!({"knot": k.name, "arcs": rows, "identically_zero": s.is_identically_zero()});
    emit(cli, v, t)
}

fn rho0(cli: &Cli, doc: &Document, name: &str, tol: Option<&str>) -> Rendered {
    let k = doc.knot(name)?;
    let (tol, text): (Rational, String) = match tol {
        Some(s) => (parse_decimal(s)?, s.to_string()),
        None => (doc.options.tol.clone(), doc.options.tol_text.clone()),
    };
    let r = k.seifert()?.rho0(&tol)?;
    let mut mid = format!("{:.9}", r.to_f64());
    if mid.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        mid = mid.trim_start_matches('-').to_string();
    }
    let v = json!({"knot": k.name, "rho0": r, "tol": text, "exact": r.is_exact()});
    emit(cli, v, format!("{mid} ± {text}\n"))
}

fn arf(cli: &Cli, doc: &Document, name: &str) -> Rendered {
    let k = doc.knot(name)?;
    let (a, src) = match &k.seifert {
        Some(v) => (v.arf(), "Seifert matrix"),
        None => (k.arf().ok_or_else(|| Error::Unsupported(format!("no Arf data for opaque knot {}", k.name)))?, "declared"),
    };
    emit(cli, json!({"knot": k.name, "arf": a, "source": src}), format!("{a}\n"))
}

fn submodules(cli: &Cli, doc: &Document, name: &str) -> Rendered {
    let k = doc.knot(name)?;
    let m = module(doc, &k)?;
    let lattice = m.isotropic_submodules(doc.context.exec)?;
    let mut t = String::new();
    writeln!(t, "{:<12} {:<10} {}", "submodule", "dimension", "generators").unwrap();
    let mut rows = Vec::new();
    for p in &lattice {
        let label = p.label(&m, &k.basis_names);
        let gens: Vec<String> = p
            .generators(&m)
            .iter()
            .map(|g| format!("({})", g.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        writeln!(t, "{:<12} {:<10} {}", label, p.dimension(&m), if gens.is_empty() { "-".into() } else { gens.join(" ") })
            .unwrap();
        let mut row = p.to_json(&m);
        row["label"] = json!(label);
        rows.push(row);
    }
    emit(cli, json!({"knot": k.name, "submodules": rows}), t)
}

fn fos(cli: &Cli, doc: &Document, target: &str) -> Rendered {
    let node = doc.resolve(target)?.node();
    let ctx = doc.context_for(&node);
    let table = first_order_signatures(&node, &ctx)?;
    let mut t = String::new();
    writeln!(t, "base: {}", table.base.name).unwrap();
    writeln!(t, "{:<12} {}", "submodule", "first-order signature").unwrap();
    for e in &table.entries {
        match ctx.evaluate(&e.term) {
            Some(v) if e.term.atoms().next().is_some() => writeln!(t, "{:<12} {} = {v}", e.label, e.term).unwrap(),
            _ => writeln!(t, "{:<12} {}", e.label, e.term).unwrap(),
        }
    }
    for n in &table.notes {
        writeln!(t, "note: {n}").unwrap();
    }
    emit(cli, table.to_json(&ctx), t)
}

fn dseries(cli: &Cli, word: &str, rank: usize, max: u32) -> Rendered {
    let w = FreeWord::parse(word, rank)?;
    let d = derived_depth(&w, max)?;
    let v = json!({"word": w.to_string(), "rank": rank, "exact": d.is_exact(), "depth": d.lower_bound(), "display": d.to_string()});
    emit(cli, v, format!("{d}\n"))
}

fn solvable(cli: &Cli, doc: &Document, name: &str) -> Rendered {
    let node = doc.resolve(name)?.node();
    let s = solvability_upper_bound(&node);
    let mut t = format!("{s}\n");
    for d in &s.diagnostics {
        writeln!(t, "note: {d}").unwrap();
    }
    emit(cli, s.to_json(), t)
}

fn run_verdict(cli: &Cli, doc: &Document, name: &str, engine: Engine, sharp: bool) -> Rendered {
    let node = doc.resolve(name)?.node();
    let mut ctx = doc.context_for(&node);
    ctx.sharp_constant |= sharp;
    let verdicts: Vec<Verdict> = match engine {
        Engine::Auto => verdict::verdicts_for(&node, &ctx),
        Engine::Bing => vec![verdict::bing_obstruction(&node, &ctx)],
        Engine::Infection => vec![verdict::infection_obstruction(&node, &ctx)],
        Engine::Doubling => vec![verdict::doubling_operator_verdict(&node, &ctx)],
    };
    if verdicts.is_empty() {
        return Err(Error::Unsupported(format!("no obstruction applies to {node}")));
    }
    let failed = verdicts.iter().all(Verdict::has_failed_hypothesis);
    let code = if failed { EXIT_HYPOTHESIS } else { EXIT_OK };
    let text = verdicts.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    let v = json!({"build": name, "verdicts": verdicts.iter().map(Verdict::to_json).collect::<Vec<_>>()});
    emit(cli, v, text).map(|(_, s)| (code, s))
}

fn expand(cli: &Cli, doc: &Document, name: &str, level: u32) -> Rendered {
    let node = doc.resolve(name)?.node();
    let before = solvability_upper_bound(&node);
    let e = expand_clones(&node, level)?;
    let after = solvability_upper_bound(&e);
    let slots = infectant_slots(&e);
    let ConstructionNode::Infect { curves, .. } = &e else { unreachable!("expansion is an infection") };
    let mut t = String::new();
    writeln!(t, "expanded: {e}").unwrap();
    writeln!(t, "slots: {slots}").unwrap();
    for c in curves {
        writeln!(t, "  {} ({})", c.name, c.certificate.as_ref().map(|x| x.describe()).unwrap_or_default()).unwrap();
    }
    writeln!(t, "bound before: {before}").unwrap();
    writeln!(t, "bound after: {after}").unwrap();
    let v = json!({
        "tree": e.to_json(),
        "slots": slots,
        "bound_before": before.to_json(),
        "bound_after": after.to_json(),
    });
    emit(cli, v, t)
}
