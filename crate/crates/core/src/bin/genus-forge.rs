use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use genus_forge::error::{Error, Result};
use genus_forge::funeq::solve_fe;
use genus_forge::genus::registry::{lookup, parse_params};
use genus_forge::intersection::catalog;
use genus_forge::report::VerificationReport;
use genus_forge::ring::{fmt_rational, parse_rational};
use genus_forge::verify::hodge::verify_hodge_recursion;
use genus_forge::verify::suite;

#[derive(Parser)]
#[command(name = "genus-forge", version, about = "Exact genus computations and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write 0 for every timing so that reports compare byte for byte.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the functional equation degree by degree.
    SolveFe {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate a named genus on a catalog space.
    Eval {
        #[arg(long)]
        genus: String,
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run one identity check.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
        /// Also write the report as JSON.
        #[arg(long, global = true)]
        json: Option<PathBuf>,
    },
    /// Run every default check.
    Report {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = default_threads())]
        threads: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Blow-up formula for a genus with a divisor correction.
    TheoremA {
        #[arg(long)]
        case: String,
        #[arg(long)]
        genus: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Vanishing of the residue sums in a given codimension.
    S1 {
        #[arg(long)]
        codim: usize,
        #[arg(long)]
        order: usize,
    },
    /// Transition law for a blow-up with a discrepancy.
    Transition {
        #[arg(long)]
        case: String,
        #[arg(long, default_value = "1/2")]
        e1: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Change of variables along a tower of blow-ups.
    Cov {
        #[arg(long)]
        tower: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Restriction recursion for χ(Pⁿ, Ω^p(ℓ)).
    Hodge {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lmax: i64,
        #[arg(long)]
        pmax: usize,
    },
}

/// Prints a line; a closed stdout (e.g. piped into `head`) ends the process quietly.
fn emit(line: impl std::fmt::Display) {
    if let Err(e) = writeln!(io::stdout().lock(), "{line}") {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn write_json(path: &PathBuf, reports: &[VerificationReport]) -> Result<()> {
    let text = serde_json::to_string_pretty(reports).map_err(|e| Error::Parse(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn finish(mut reports: Vec<VerificationReport>, json: Option<&PathBuf>, no_timing: bool) -> Result<ExitCode> {
    if no_timing {
        reports.iter_mut().for_each(|r| r.millis = 0);
    }
    for r in &reports {
        emit(r.summary());
    }
    if let Some(p) = json {
        write_json(p, &reports)?;
    }
    let ok = reports.iter().all(VerificationReport::is_pass);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn solve(order: usize, json: Option<&PathBuf>) -> Result<ExitCode> {
    let s = solve_fe(order)?;
    for r in s.records() {
        let support: Vec<String> = r.a_support.iter().map(|i| i.to_string()).collect();
        let coeffs: Vec<String> = r.f_coefficients.iter().map(fmt_rational).collect();
        emit(format_args!(
            "degree {:>2}: rank {}, a_(d-2) in relations [{}], f_(d-1) coefficients [{}]",
            r.degree,
            r.rank,
            support.join(", "),
            coeffs.join(", ")
        ));
    }
    for i in 0..=s.order() {
        emit(format_args!("f{i} = {}", s.f_coeff(i)));
    }
    for i in 0..s.a().order().min(s.order()) + 1 {
        emit(format_args!("a{i} = {}", s.a_coeff(i)));
    }
    if let Some(p) = json {
        let text = serde_json::to_string_pretty(&s.to_json()?).map_err(|e| Error::Parse(e.to_string()))?;
        fs::write(p, text + "\n").map_err(|e| Error::Precondition(format!("{}: {e}", p.display())))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn eval(genus: &str, space: &str, params: &str, order: Option<usize>) -> Result<ExitCode> {
    let x = catalog::lookup(space)?;
    let g = lookup(genus, &parse_params(params)?, order.unwrap_or(x.dim() + 2))?;
    emit(g.eval(&x)?.exact());
    Ok(ExitCode::SUCCESS)
}

fn verify(check: &VerifyCommand) -> Result<VerificationReport> {
    Ok(match check {
        VerifyCommand::TheoremA { case, genus, order } => suite::theorem_a(case, genus, *order),
        VerifyCommand::S1 { codim, order } => suite::s1(*codim, *order),
        VerifyCommand::Transition { case, e1, order } => suite::transition(case, &parse_rational(e1)?, *order),
        VerifyCommand::Cov { tower, order } => suite::change_of_variables(tower, *order),
        VerifyCommand::Hodge { n, lmax, pmax } => verify_hodge_recursion(*n, *lmax, *pmax),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let no_timing = cli.no_timing;
    match cli.command {
        Command::SolveFe { order, json } => solve(order, json.as_ref()),
        Command::Eval { genus, space, params, order } => eval(&genus, &space, &params, order),
        Command::Verify { check, json } => finish(vec![verify(&check)?], json.as_ref(), no_timing),
        Command::Report { all, json, threads } => {
            if !all {
                return Err(Error::Precondition("report needs --all".into()));
            }
            finish(suite::run_all(threads), json.as_ref(), no_timing)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
