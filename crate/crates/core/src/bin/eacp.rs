use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eacp::catalog::{self, CatalogId};
use eacp::error::{EacpError, Result};
use eacp::expr::parse_element;
use eacp::format;
use eacp::periodicity;
use eacp::report::{self, Report};
use eacp::scalar::{parse_rational, Scalar};
use eacp::{Algebra, Element};

/// Evolution algebras of a chicken population: products, periods,
/// substructures, canonical forms and the low-dimensional catalog.
#[derive(Parser)]
#[command(name = "eacp", version)]
struct Cli {
    #[command(flatten)]
    input: Input,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Algebra file (JSON with `A`, `b` and optionally `field`).
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,
    /// Catalog algebra instead of a file, e.g. `3d:C6(1,1)`.
    #[arg(long, global = true)]
    catalog: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Search cutoff for periods.
    #[arg(long, global = true)]
    mmax: Option<u64>,
    /// Zero tolerance for the float backend, as a rational (`1/1000`).
    #[arg(long, global = true)]
    epsilon: Option<String>,
    /// Re-embed the algebra into this field.
    #[arg(long, global = true, value_parser = ["rational", "gaussian", "float"])]
    field: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Structure constants, dim C² and δ.
    Info,
    /// Product x·y.
    Mul {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Principal power x^k.
    Pow {
        #[arg(long)]
        x: String,
        #[arg(long)]
        k: u64,
    },
    /// Plenary power x^[m], or the closed form of (h_i r)^[m] with --i.
    Plenary {
        #[arg(long, conflicts_with = "i", required_unless_present = "i")]
        x: Option<String>,
        /// Generator index (1-based) for the closed form.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        m: u64,
    },
    /// Right and plenary periods.
    Periods,
    /// Absolute nilpotent elements.
    Nilpotents,
    /// Idempotent elements.
    Idempotents,
    /// Generators of one-dimensional subalgebras.
    Subalg1,
    /// One-dimensional ideals.
    Ideals1,
    /// Canonical (δ) form with the basis change.
    CanonicalForm,
    /// Extend a natural basis of a subalgebra to the whole algebra.
    ExtendBasis {
        /// Vectors f_1..f_m (repeatable).
        #[arg(long = "f")]
        f: Vec<String>,
        /// The vector playing r'.
        #[arg(long)]
        rprime: String,
    },
    /// List the catalog, or print one entry as an algebra file.
    Catalog { id: Option<String> },
    /// Decide simplicity (dimension ≤ 3).
    Simple,
    /// Identify a 3-dimensional algebra with a catalog entry.
    Classify,
    /// Run the property suites on the algebra (seed from EACP_SEED).
    Verify {
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
    /// Recompute the catalog ideal table and the simplicity verdicts.
    PaperCheck,
}

fn load(input: &Input) -> Result<Algebra> {
    let alg = match (&input.algebra, &input.catalog) {
        (Some(_), Some(_)) => {
            return Err(EacpError::InvalidArgument("give either --algebra or --catalog, not both".into()))
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| EacpError::Parse {
                field: path.display().to_string(),
                message: e.to_string(),
            })?;
            format::algebra_from_json(&text)?
        }
        (None, Some(id)) => catalog::build_canonical(&id.parse::<CatalogId>()?)?,
        (None, None) => return Err(EacpError::InvalidArgument("this command needs --algebra or --catalog".into())),
    };
    let eps = input
        .epsilon
        .as_deref()
        .map(|s| {
            let e = Scalar::rational(parse_rational(s)?).to_complex().0;
            if e > 0.0 {
                Ok(e)
            } else {
                Err(EacpError::Parse { field: "--epsilon".into(), message: "must be positive".into() })
            }
        })
        .transpose()?;
    let field = match (&input.field, eps) {
        (Some(name), e) => Some(format::parse_field(name, None, e)?),
        (None, Some(e)) if !alg.field().is_exact() => Some(format::parse_field("float", None, Some(e))?),
        _ => None,
    };
    match field {
        None => Ok(alg),
        Some(f) => {
            let a = alg.a().to_rows().iter().map(|r| r.iter().map(|x| f.embed(x)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
            let b = alg.b().iter().map(|x| f.embed(x)).collect::<Result<Vec<_>>>()?;
            let out = Algebra::with_field(eacp::Matrix::from_rows(a)?, b, f)?;
            Ok(match alg.label() {
                Some(l) => out.with_label(l),
                None => out,
            })
        }
    }
}

fn element(alg: &Algebra, text: &str) -> Result<Element> {
    parse_element(text, alg.n())
}

fn run(cli: &Cli) -> Result<Report> {
    if let Command::PaperCheck = cli.command {
        return report::paper_check();
    }
    if let Command::Catalog { id } = &cli.command {
        return match id {
            None => report::catalog_list(),
            Some(s) => report::catalog_build(&s.parse()?),
        };
    }
    let alg = load(&cli.input)?;
    let m_max = cli.input.mmax.unwrap_or_else(|| periodicity::default_mmax(alg.n()));
    match &cli.command {
        Command::Info => Ok(report::info(&alg)),
        Command::Mul { x, y } => report::product(&alg, &element(&alg, x)?, &element(&alg, y)?),
        Command::Pow { x, k } => report::principal_power(&alg, &element(&alg, x)?, *k),
        Command::Plenary { x: Some(x), m, .. } => report::plenary_power(&alg, &element(&alg, x)?, *m),
        Command::Plenary { i: Some(i), m, .. } => {
            if *i == 0 || *i > alg.n() {
                return Err(EacpError::IndexOutOfRange(format!("--i {i} with n = {}", alg.n())));
            }
            let m = u32::try_from(*m).map_err(|_| EacpError::InvalidArgument("--m too large".into()))?;
            report::plenary_closed_form(&alg, i - 1, m)
        }
        Command::Plenary { .. } => Err(EacpError::InvalidArgument("plenary needs --x or --i".into())),
        Command::Periods => report::periods(&alg, m_max),
        Command::Nilpotents => report::nilpotents(&alg),
        Command::Idempotents => report::idempotents(&alg),
        Command::Subalg1 => report::subalgebras_1d(&alg),
        Command::Ideals1 => report::ideals_1d(&alg),
        Command::CanonicalForm => report::canonical_form(&alg),
        Command::ExtendBasis { f, rprime } => {
            let fs = f.iter().map(|s| element(&alg, s)).collect::<Result<Vec<_>>>()?;
            report::extend_basis(&alg, fs, element(&alg, rprime)?)
        }
        Command::Simple => report::simple(&alg),
        Command::Classify => report::classify(&alg),
        Command::Verify { cases } => Ok(report::verify(&alg, eacp::verify::seed_from_env(), *cases)),
        Command::Catalog { .. } | Command::PaperCheck => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    // clap reports usage errors with status 2, which is reserved for undetermined verdicts
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(rep) => {
            if cli.input.json {
                println!("{}", serde_json::to_string_pretty(&rep.json).expect("serializable"));
            } else {
                print!("{}", rep.text);
            }
            ExitCode::from(rep.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
