use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stern_core::analysis;
use stern_core::exactnum::json::scalars_to_json;
use stern_core::powersums::{self, ProductSpec, WindowPattern};
use stern_core::sternarrays::{self, ArrayKind, RowMethod};
use stern_core::transfer;
use stern_core::verify::{self, Profile};
use stern_core::{Error, Limits};

mod expr;

#[derive(Parser)]
#[command(
    name = "stern",
    version,
    about = "Exact power sums over Stern-type arrays"
)]
struct Cli {
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One row of Stern's triangle or diatomic array.
    Row {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "triangle")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "recursive")]
        method: Method,
    },
    /// Window power sums by direct summation.
    Usum {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Closure, transfer matrix and front end for one pattern.
    Transfer {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        no_symmetry: bool,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Minimum polynomial of the transfer matrix and least recurrence.
    Analyze {
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Eigenvalue census of A_r against the conjectured formulas.
    Conjectures {
        #[arg(long, default_value_t = 40)]
        r_max: u32,
        #[arg(long)]
        csv: bool,
    },
    /// Exponential-polynomial fit of u_r for p = (1+x)^d.
    Fit {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "1")]
        q: String,
    },
    /// Series identity between diatomic and triangle power sums.
    Vrur {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Diagonal symmetrization of the diatomic transfer matrices B_r.
    Speyer {
        #[arg(long, default_value_t = 40)]
        r_max: u32,
    },
    /// Run every reproduction check and report pass, fail or erratum.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
        /// Append per-check runtimes (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Triangle,
    Diatomic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recursive,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum SpecKind {
    Stern,
    Diatomic,
    Custom,
}

#[derive(Args)]
struct SpecArgs {
    /// Defaults to custom when --p is given, stern otherwise.
    #[arg(long, value_enum)]
    spec: Option<SpecKind>,
    /// Kernel: coefficient list "1,1,1" or an expression such as "(1+x1+x2)^2".
    #[arg(long)]
    p: Option<String>,
    #[arg(long, default_value = "1")]
    q: String,
    /// One base per variable; a single base is used for every variable.
    #[arg(long, default_value = "2")]
    b: String,
}

enum Resolved {
    Product(ProductSpec),
    Diatomic,
}

impl SpecArgs {
    fn kind(&self) -> SpecKind {
        self.spec.unwrap_or(if self.p.is_some() {
            SpecKind::Custom
        } else {
            SpecKind::Stern
        })
    }

    fn resolve(&self) -> Result<Resolved, Error> {
        match self.kind() {
            SpecKind::Stern => Ok(Resolved::Product(ProductSpec::stern())),
            SpecKind::Diatomic => Ok(Resolved::Diatomic),
            SpecKind::Custom => {
                let p = self
                    .p
                    .as_deref()
                    .ok_or_else(|| Error::InvalidInput("--spec custom needs --p".into()))?;
                let bases = parse_list(&self.b, "--b")?;
                let nvars = expr::variable_count(p)?
                    .max(expr::variable_count(&self.q)?)
                    .max(bases.len());
                let bases = if bases.len() == 1 {
                    vec![bases[0]; nvars]
                } else {
                    bases
                };
                let p = expr::parse_poly(p, nvars)?;
                let q = expr::parse_poly(&self.q, nvars)?;
                Ok(Resolved::Product(ProductSpec::new(p, q, &bases)?))
            }
        }
    }

    fn product(&self) -> Result<ProductSpec, Error> {
        match self.resolve()? {
            Resolved::Product(spec) => Ok(spec),
            Resolved::Diatomic => Err(Error::InvalidInput(
                "the diatomic array is not a product spec; use usum".into(),
            )),
        }
    }
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<u32>, Error> {
    text.split(',')
        .map(|s| {
            s.trim().parse().map_err(|_| {
                Error::InvalidInput(format!(
                    "{flag} expects comma-separated integers, got {text:?}"
                ))
            })
        })
        .collect()
}

/// A single integer `r` means the single-site pattern in every dimension;
/// a list is a one-dimensional pattern.
fn parse_alpha(text: &str, dim: usize) -> Result<WindowPattern, Error> {
    let exps = parse_list(text, "--alpha")?;
    match exps.as_slice() {
        [r] if *r > 0 => Ok(WindowPattern::single(dim, *r)),
        _ if dim > 1 => Err(Error::InvalidInput(
            "multivariate patterns are given as a single exponent".into(),
        )),
        _ => WindowPattern::new(&exps),
    }
}

fn spec_json(spec: &ProductSpec) -> Value {
    json!({
        "p": stern_core::exactnum::json::exact_poly_to_json(spec.kernel()),
        "q": stern_core::exactnum::json::exact_poly_to_json(spec.prefactor()),
        "b": spec.bases().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
    })
}

fn with_schema(mut doc: Value) -> Value {
    if let Value::Object(map) = &mut doc {
        map.insert("schema".into(), json!(1));
    }
    doc
}

enum Output {
    Json(Value),
    Text(String),
}

struct Done {
    output: Output,
    ok: bool,
}

fn run(command: Command) -> Result<Done, Error> {
    let json_ok = |doc: Value| Done {
        output: Output::Json(with_schema(doc)),
        ok: true,
    };
    Ok(match command {
        Command::Row { n, kind, method } => {
            let kind = match kind {
                Kind::Triangle => ArrayKind::Triangle,
                Kind::Diatomic => ArrayKind::Diatomic,
            };
            let method = match method {
                Method::Recursive => RowMethod::Recursive,
                Method::Product => RowMethod::Product,
            };
            let row = sternarrays::stern_row(n, kind, method)?;
            let entries: Vec<String> = row.entries.iter().map(u64::to_string).collect();
            json_ok(json!({ "n": n, "kind": kind, "entries": entries }))
        }
        Command::Usum { alpha, n_max, spec } => {
            let limits = Limits::default();
            let (values, pattern, spec_doc) = match spec.resolve()? {
                Resolved::Product(ps) => {
                    let pattern = parse_alpha(&alpha, ps.nvars())?;
                    (
                        powersums::u_brute(&ps, &pattern, n_max, &limits)?,
                        pattern,
                        spec_json(&ps),
                    )
                }
                Resolved::Diatomic => {
                    let pattern = parse_alpha(&alpha, 1)?;
                    (
                        powersums::v_brute(&pattern, n_max, &limits)?,
                        pattern,
                        json!("diatomic"),
                    )
                }
            };
            json_ok(
                json!({ "alpha": pattern, "spec": spec_doc, "values": scalars_to_json(&values) }),
            )
        }
        Command::Transfer {
            alpha,
            no_symmetry,
            spec,
        } => {
            let ps = spec.product()?;
            let pattern = parse_alpha(&alpha, ps.nvars())?;
            let system = transfer::build_system(&ps, &pattern, !no_symmetry)?;
            let mut doc = system.to_json();
            doc["spec"] = spec_json(&ps);
            json_ok(doc)
        }
        Command::Analyze { alpha, spec } => {
            let ps = spec.product()?;
            let pattern = parse_alpha(&alpha, ps.nvars())?;
            let report = analysis::recurrence_report(&ps, &pattern)?;
            let mut doc = report.to_json();
            if spec.kind() == SpecKind::Stern {
                doc["theorem4"] = analysis::theorem4_decompose(&pattern)?.to_json();
            }
            json_ok(doc)
        }
        Command::Conjectures { r_max, csv } => {
            let report = analysis::conjecture_check(r_max)?;
            let ok = report.all_pass();
            Done {
                output: if csv {
                    Output::Text(report.to_csv())
                } else {
                    Output::Json(with_schema(report.to_json()))
                },
                ok,
            }
        }
        Command::Fit { d, b, r, q } => {
            let q = expr::parse_poly(&q, 1)?;
            let fit = analysis::exp_fit(d, b, &WindowPattern::single(1, r), &q)?;
            json_ok(fit.to_json())
        }
        Command::Vrur { r, order } => json_ok(analysis::vrur_check(r, order)?.to_json()),
        Command::Speyer { r_max } => {
            let rows = analysis::speyer_check(r_max)?;
            let ok = rows.iter().all(|row| row.pass());
            Done {
                output: Output::Json(with_schema(json!({
                    "r_max": r_max,
                    "rows": rows.iter().map(|row| row.to_json()).collect::<Vec<_>>(),
                    "all_pass": ok,
                }))),
                ok,
            }
        }
        Command::VerifyPaper { profile, timing } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let report = verify::verify_paper(profile);
            Done {
                output: Output::Json(report.to_json(timing)),
                ok: report.ok(),
            }
        }
    })
}

fn emit(output: &Output, out: Option<&PathBuf>) -> std::io::Result<()> {
    let mut text = match output {
        Output::Json(doc) => serde_json::to_string_pretty(doc).expect("serializable"),
        Output::Text(t) => t.clone(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn fail(kind: &str, message: &str) -> ExitCode {
    let line = json!({ "error": kind, "message": message.replace('\n', " ").trim() });
    eprintln!("{line}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("UsageError", &e.to_string()),
    };
    stern_core::limits::init_threads();
    match run(cli.command) {
        Ok(done) => {
            if let Err(e) = emit(&done.output, cli.out.as_ref()) {
                return fail("IoError", &e.to_string());
            }
            if done.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => fail(e.kind(), &e.to_string()),
    }
}
