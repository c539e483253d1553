use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gorenstein::Field;

mod commands;
mod registry;
mod report;

use commands::{CliError, Ctx};

/// Exact computations with Artinian Gorenstein ideals.
#[derive(Parser, Debug)]
#[command(name = "gorenstein", version)]
struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    field: Field,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x,y,z")]
    vars: String,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Degree bound for truncated computations.
    #[arg(long, global = true)]
    t_max: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// Arguments taking polynomial data also accept `@path` to read a file.
#[derive(Subcommand, Debug)]
enum Command {
    /// The colon ideal `(I : f)` with its socle and datum.
    Colon {
        #[arg(long)]
        ci: String,
        #[arg(long)]
        f: String,
    },
    /// Socle dimensions and Hilbert function of `R/I`.
    Socle {
        #[arg(long)]
        ideal: String,
    },
    /// Graded Betti table of `R/I`.
    Betti {
        #[arg(long)]
        ideal: String,
    },
    /// Virtual datum `(d, r, d')` of an equigenerated ideal.
    Datum {
        #[arg(long)]
        ideal: String,
    },
    /// Pfaffian (even size) or maximal Pfaffians (odd size) of an
    /// alternating matrix. Rows are separated by newlines or `;`.
    Pfaffian {
        #[arg(long)]
        matrix: String,
    },
    /// Seeded generic power model of the structural matrix.
    Model {
        #[arg(long, default_value_t = 5)]
        r: usize,
        #[arg(long = "dp", default_value_t = 1)]
        d_prime: u32,
    },
    /// Macaulay inverse system of a Gorenstein ideal.
    Inverse {
        #[arg(long)]
        ideal: String,
    },
    /// Annihilator of a dual form written in the uppercase variables.
    Ann {
        #[arg(long)]
        form: String,
    },
    /// Newton dual of a form, or its socle variant when `--m` is given.
    NewtonDual {
        #[arg(long)]
        f: String,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Directrix form `f` with `(l1^m, ..., ln^m) : f = I`.
    Directrix {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        lines: Option<String>,
    },
    /// Rank test for an equigenerated colon with linear resolution.
    LinresTest {
        #[arg(long)]
        f: String,
        #[arg(long)]
        m: u32,
    },
    /// Whether `R_e` times the forms spans the target degree.
    Spans {
        #[arg(long)]
        forms: String,
        #[arg(long)]
        e: usize,
    },
    /// Gorenstein certificate for five quadrics (random when omitted).
    CertifyQuadrics {
        #[arg(long)]
        quadrics: Option<String>,
    },
    /// Pure power index and gap of a Gorenstein ideal.
    Gap {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        lines: Option<String>,
    },
    /// Compares powers of `I` with powers of the maximal ideal and runs
    /// the seeded reduction test.
    PowerCheck {
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Runs registered example cases against their expected values.
    Reproduce {
        #[arg(long, conflicts_with_all = ["all", "list"])]
        case: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
    },
}

fn run(cli: Cli) -> Result<report::Report, CliError> {
    let vars: Vec<String> = cli
        .vars
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    if vars.is_empty() {
        return Err(CliError::Parse("no variables given".into()));
    }
    let ctx = Ctx {
        field: cli.field,
        seed: cli.seed,
        vars,
        t_max: cli.t_max,
    };
    match cli.command {
        Command::Colon { ci, f } => commands::colon(&ctx, &ci, &f),
        Command::Socle { ideal } => commands::socle(&ctx, &ideal),
        Command::Betti { ideal } => commands::betti(&ctx, &ideal),
        Command::Datum { ideal } => commands::datum(&ctx, &ideal),
        Command::Pfaffian { matrix } => commands::pfaffian(&ctx, &matrix),
        Command::Model { r, d_prime } => commands::model(&ctx, r, d_prime),
        Command::Inverse { ideal } => commands::inverse(&ctx, &ideal),
        Command::Ann { form } => commands::ann(&ctx, &form),
        Command::NewtonDual { f, m } => commands::newton_dual_cmd(&ctx, &f, m),
        Command::Directrix { ideal, m, lines } => commands::directrix(&ctx, &ideal, m, lines.as_deref()),
        Command::LinresTest { f, m } => commands::linres_test(&ctx, &f, m),
        Command::Spans { forms, e } => commands::spans(&ctx, &forms, e),
        Command::CertifyQuadrics { quadrics } => commands::certify_quadrics(&ctx, quadrics.as_deref()),
        Command::Gap { ideal, lines } => commands::gap(&ctx, &ideal, lines.as_deref()),
        Command::PowerCheck { ideal, k } => commands::power_check(&ctx, &ideal, k),
        Command::Reproduce { case, all, list } => commands::reproduce(&ctx, case.as_deref(), all, list),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
