use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grpi::algebra::GradedAlgebra;
use grpi::asympt::{lemma_max_closed_form, maximize_phi, Polytope, DEFAULT_TOLERANCE};
use grpi::catalog::catalog;
use grpi::cochar::{multiplicity_exact_capped, multiplicity_nonzero_certificate, Partition, Variant, DEFAULT_MULTIPLICITY_MAX_N};
use grpi::codim::{codim_sequence, sequence_csv, CodimConfig, CodimMode, DEFAULT_MAX_ENTRIES, DEFAULT_PRIMES};
use grpi::format::parse_algebra;
use grpi::semigroup::{classify_order2, enumerate_semigroups, isomorphism_classes};
use grpi::structure::{
    graded_exponent_d, graded_malcev_zeroband, is_graded_simple_with, is_radical_graded, jacobson_radical, malcev_complement, ordinary_exponent,
    GradedSimplicity, DEFAULT_SIMPLICITY_TRIALS,
};
use grpi::verify::{run_battery, VerifyOptions};
use grpi::Error;

#[derive(Parser, Debug)]
#[command(name = "grpi", version, about = "Graded polynomial identities of finite-dimensional semigroup-graded algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunConfig,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Algebra definition file.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Catalog entry such as `thm_T1_fractional` or `mk_column_graded(3)`.
    #[arg(long, global = true)]
    catalog: Option<String>,
    #[arg(long, global = true, default_value_t = 4)]
    n_max: usize,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Modular)]
    mode: Mode,
    /// Comma-separated primes for modular ranks; empty draws them from the seed.
    #[arg(long, global = true)]
    primes: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// `max-entries=N,multiplicity-n=N,trials=N`.
    #[arg(long, global = true)]
    caps: Option<String>,
    /// Check ids or tags for verify-paper, comma-separated.
    #[arg(long, global = true)]
    sections: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Modular,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate semigroups of a given order up to isomorphism.
    Semigroups {
        #[arg(default_value_t = 2)]
        order: usize,
    },
    /// Validate an algebra.
    Check,
    /// Jacobson radical and whether it is graded.
    Radical,
    /// Complement of the radical (graded when the semigroup is a zero band).
    Split,
    /// Graded simplicity.
    Simple,
    /// Graded codimension sequence up to --n-max.
    Codim,
    /// Cocharacter multiplicity of a partition.
    Multiplicity {
        /// Partition such as `(2,1,1)`.
        #[arg(long)]
        lambda: String,
        /// Also evaluate the explicit witness for T1 or T3.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Maximum of Phi on the ordered simplex with `α_1 >= α_{q-1} + α_q`.
    Phimax {
        #[arg(long, default_value_t = 7)]
        q: usize,
    },
    /// The exponent given by the graded-simple summands, and the ordinary one.
    Exponent,
    /// Run the full check battery.
    VerifyPaper {
        /// Perturb every catalog algebra; the battery must then fail.
        #[arg(long)]
        corrupt: bool,
    },
}

#[derive(Debug, Default)]
struct Caps {
    max_entries: Option<usize>,
    multiplicity_n: Option<usize>,
    trials: Option<usize>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Report {
    text: String,
    json: Value,
    csv: Option<String>,
    ok: bool,
}

fn parse_caps(text: Option<&str>) -> Result<Caps, Failure> {
    let mut caps = Caps::default();
    for item in text.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| Failure::Usage(format!("cap `{item}` is not key=value")))?;
        let value: f64 = value.trim().parse().map_err(|_| Failure::Usage(format!("cap `{item}` has a non-numeric value")))?;
        if value < 1.0 {
            return Err(Failure::Usage(format!("cap `{item}` must be positive")));
        }
        let value = value as usize;
        match key.trim() {
            "max-entries" => caps.max_entries = Some(value),
            "multiplicity-n" => caps.multiplicity_n = Some(value),
            "trials" => caps.trials = Some(value),
            other => return Err(Failure::Usage(format!("unknown cap `{other}`"))),
        }
    }
    Ok(caps)
}

fn load(run: &RunConfig) -> Result<GradedAlgebra, Failure> {
    match (&run.input, &run.catalog) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either --input or --catalog".into())),
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            Ok(parse_algebra(&text)?)
        }
        (None, Some(spec)) => Ok(catalog(spec)?),
        (None, None) => Err(Failure::Usage("an algebra is required: --input FILE or --catalog NAME".into())),
    }
}

fn codim_config(run: &RunConfig, caps: &Caps) -> Result<CodimConfig, Failure> {
    let mode = match run.mode {
        Mode::Exact => CodimMode::ExactRational,
        Mode::Modular => {
            let primes = match &run.primes {
                None => DEFAULT_PRIMES.to_vec(),
                Some(list) => list
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u64>().map_err(|_| Failure::Usage(format!("bad prime `{s}`"))))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            CodimMode::Modular(primes)
        }
    };
    Ok(CodimConfig { mode, seed: run.seed, max_entries: caps.max_entries.unwrap_or(DEFAULT_MAX_ENTRIES) })
}

fn vectors(a: &GradedAlgebra, basis: &[Vec<grpi::arith::Q>]) -> Vec<String> {
    basis.iter().map(|v| a.format_vector(v)).collect()
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let run = &cli.run;
    let caps = parse_caps(run.caps.as_deref())?;
    match &cli.command {
        Command::Semigroups { order } => {
            let all = enumerate_semigroups(*order)?;
            let classes = isomorphism_classes(&all);
            let mut text = format!("order {order}: {} tables, {} classes\n", all.len(), classes.len());
            let mut reps = Vec::new();
            for class in &classes {
                let s = &all[class[0]];
                let tag = if *order == 2 { classify_order2(s).map(|t| t.name().to_string()).ok() } else { None };
                let rows: Vec<String> = s.table().iter().map(|r| r.iter().map(|&x| s.label(x).to_string()).collect::<Vec<_>>().join(" ")).collect();
                text.push_str(&format!("{} [{}] size {}\n", tag.clone().unwrap_or_else(|| "-".into()), rows.join(" | "), class.len()));
                reps.push(json!({"tag": tag, "table": s.table(), "class_size": class.len()}));
            }
            Ok(Report { text, json: json!({"order": order, "tables": all.len(), "classes": reps}), csv: None, ok: true })
        }
        Command::Check => {
            let a = load(run)?;
            let r = a.validation_report();
            let text = format!(
                "{}: dim {}, associativity failures {}, grading failures {}, unit {}\n{}\n",
                a.name(),
                a.dim(),
                r.associativity.len(),
                r.grading.len(),
                if r.bad_unit { "invalid" } else { "ok" },
                if r.is_ok() { "valid" } else { "INVALID" }
            );
            let json = json!({"name": a.name(), "dim": a.dim(), "associativity_failures": r.associativity, "grading_failures": r.grading, "bad_unit": r.bad_unit, "valid": r.is_ok()});
            Ok(Report { text, json, csv: None, ok: r.is_ok() })
        }
        Command::Radical => {
            let a = load(run)?;
            let j = jacobson_radical(&a);
            let graded = is_radical_graded(&a);
            let basis = vectors(&a, j.basis());
            let text = format!("radical of {} (dim {}):\n{}\ngraded: {}\n", a.name(), j.dim(), basis.iter().map(|b| format!("  {b}")).collect::<Vec<_>>().join("\n"), graded);
            Ok(Report { text, json: json!({"name": a.name(), "dim": j.dim(), "basis": basis, "graded": graded}), csv: None, ok: true })
        }
        Command::Split => {
            let a = load(run)?;
            let zero_band = a.semigroup().is_zero_band();
            let s = if zero_band { graded_malcev_zeroband(&a)? } else { malcev_complement(&a)? };
            let basis = vectors(&a, s.complement.basis());
            let graded = a.is_graded_subspace(&s.complement);
            let text = format!(
                "complement (dim {}, graded {graded}):\n{}\nradical dim {}, {} corrections\n",
                s.complement.dim(),
                basis.iter().map(|b| format!("  {b}")).collect::<Vec<_>>().join("\n"),
                s.radical.dim(),
                s.correction_log.len()
            );
            let json = json!({"complement": basis, "graded": graded, "radical_dim": s.radical.dim(), "corrections": s.correction_log.len(), "zero_band_method": zero_band});
            Ok(Report { text, json, csv: None, ok: true })
        }
        Command::Simple => {
            let a = load(run)?;
            let r = is_graded_simple_with(&a, caps.trials.unwrap_or(DEFAULT_SIMPLICITY_TRIALS), run.seed);
            let detail = match &r {
                GradedSimplicity::CertifiedTrue(certs) => json!(certs.iter().map(|c| json!({"degree": c.degree, "dim": c.dim, "method": c.method})).collect::<Vec<_>>()),
                GradedSimplicity::CertifiedFalse { witness, reason } => json!({"witness": vectors(&a, witness.basis()), "reason": reason}),
                GradedSimplicity::ProbableTrue { trials } => json!({"trials": trials}),
            };
            let text = format!("{}: {}\n{}\n", a.name(), r.tag(), serde_json::to_string_pretty(&detail).unwrap_or_default());
            Ok(Report { text, json: json!({"name": a.name(), "result": r.tag(), "detail": detail}), csv: None, ok: true })
        }
        Command::Codim => {
            let a = load(run)?;
            let rows = codim_sequence(&a, run.n_max, &codim_config(run, &caps)?)?;
            let csv = sequence_csv(&rows);
            let json = json!(rows.iter().map(|r| json!({"n": r.n, "c_n": r.value, "certification": r.certification.to_string()})).collect::<Vec<_>>());
            let text = csv.clone();
            Ok(Report { text, json, csv: Some(csv), ok: true })
        }
        Command::Multiplicity { lambda, variant } => {
            let a = load(run)?;
            let lambda = Partition::parse(lambda)?;
            let m = multiplicity_exact_capped(&a, &lambda, caps.multiplicity_n.unwrap_or(DEFAULT_MULTIPLICITY_MAX_N))?;
            let mut text = format!("m({lambda}) = {m}\n");
            let mut json = json!({"lambda": lambda.to_string(), "multiplicity": m});
            if let Some(v) = variant {
                let variant = Variant::parse(v)?;
                let c = multiplicity_nonzero_certificate(&a, variant, &lambda)?;
                text.push_str(&c.witness.report(&a, Some(&c.value)));
                json["certificate"] = json!(c.nonzero);
            }
            Ok(Report { text, json, csv: None, ok: true })
        }
        Command::Phimax { q } => {
            let r = maximize_phi(&Polytope::lemma(*q)?, DEFAULT_TOLERANCE, run.seed)?;
            let c = lemma_max_closed_form(*q)?;
            let text = format!("q = {q}\nmaximum {:.12} (closed form {:.12})\npoint {:?}\ncertified gap {:e}\n", r.value, c.value, r.point, r.certified_gap);
            let json = json!({"q": q, "optimum": serde_json::from_str::<Value>(&r.to_json()).unwrap_or(Value::Null), "closed_form": c.value});
            Ok(Report { text, json, csv: None, ok: (r.value - c.value).abs() <= DEFAULT_TOLERANCE })
        }
        Command::Exponent => {
            let a = load(run)?;
            let g = graded_exponent_d(&a)?;
            let o = ordinary_exponent(&a)?;
            let text = format!("graded d = {} (summands {:?})\nordinary d = {} (summands {:?})\n", g.d, g.summand_dims, o.d, o.summand_dims);
            Ok(Report { text, json: json!({"graded": g.d, "graded_summands": g.summand_dims, "ordinary": o.d, "ordinary_summands": o.summand_dims}), csv: None, ok: true })
        }
        Command::VerifyPaper { corrupt } => {
            let sections = run.sections.as_deref().map(|s| s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()).unwrap_or_default();
            let outcomes = run_battery(&VerifyOptions { sections, seed: run.seed, corrupt: *corrupt });
            let ok = outcomes.iter().all(|o| o.passed);
            let mut text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
            text.push_str(&format!("{} of {} checks passed\n", outcomes.iter().filter(|o| o.passed).count(), outcomes.len()));
            let json = json!(outcomes.iter().map(|o| json!({"id": o.id, "name": o.name, "tags": o.tags, "passed": o.passed, "detail": o.detail})).collect::<Vec<_>>());
            Ok(Report { text, json, csv: None, ok })
        }
    }
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({"error": kind, "message": message}));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("Usage", e.to_string().lines().next().unwrap_or("usage error"), 2),
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(m)) => return fail("Usage", &m, 2),
        Err(Failure::Lib(e)) => {
            let code = match e {
                Error::ResourceLimit(_) | Error::OrderTooLarge(_) => 3,
                Error::BadParam(_) | Error::UnknownName(_) | Error::UnknownTag(_) | Error::Parse { .. } => 2,
                _ => 1,
            };
            return fail(&error_kind(&e), &e.to_string(), code);
        }
    };
    let body = match cli.run.format {
        Format::Text => report.text,
        Format::Json => format!("{}\n", report.json),
        Format::Csv => match report.csv {
            Some(csv) => csv,
            None => return fail("Usage", "this command has no CSV output", 2),
        },
    };
    match &cli.run.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &body) {
                return fail("Io", &format!("cannot write {path}: {e}"), 1);
            }
        }
        None => print!("{body}"),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
