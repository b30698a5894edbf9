//! `cdv`: exact certificates for lower bounds on the Colin de Verdiere
//! parameter. Every command prints a JSON report and exits with 0 exactly
//! when all of its verdicts pass, 1 when one fails, and 2 on bad input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use commands::{BipartiteArgs, CliError, CosetArgs, Genus10Args};
use report::Recorder;

use cdv_core::cdv::build_shift_operator;
use cdv_core::groups::DEFAULT_MAX_COSETS;

#[derive(Parser)]
#[command(
    name = "cdv",
    version,
    about = "Exact certificates for Colin de Verdiere lower bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Leave wall-clock timings out of the report, making it deterministic.
    #[arg(long, global = true)]
    no_timings: bool,
    /// Print stage heartbeats and SAP elimination progress on stderr.
    #[arg(long, global = true)]
    progress: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Certify mu >= 16 for the genus-10 triangulation.
    Genus10 {
        /// Skip the SAP rank stage.
        #[arg(long)]
        skip_sap: bool,
        /// Built-in name, file, or presentation text.
        #[arg(long, default_value = "gamma10")]
        presentation: String,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Membership and SAP for an operator file over a graph file.
    Sap { graph: PathBuf, operator: PathBuf },
    /// `eps I_S - A` on K_{a,b}, S the first sA vertices of side A and the first sB of side B.
    Bipartite {
        a: usize,
        b: usize,
        sa: usize,
        sb: usize,
        /// Also save the operator in the operator file format.
        #[arg(long)]
        operator_out: Option<PathBuf>,
    },
    /// Corank-4 operator on K_{a,b} with a verified SAP violation.
    Witness { a: usize, b: usize },
    /// No CdV matrix of the 7-vertex graph has the all-ones eigenvector.
    Q1,
    /// Heawood number gamma(chi) and, with --mu-lower, the surfaces it beats.
    Heawood {
        #[arg(allow_negative_numbers = true)]
        chi: i64,
        /// Use the Klein bottle value (chi must be 0).
        #[arg(long)]
        klein: bool,
        #[arg(long)]
        mu_lower: Option<u64>,
    },
    /// Todd-Coxeter enumeration of the cosets of a subgroup.
    Coset {
        /// Built-in name, file, or presentation text.
        presentation: String,
        /// Subgroup generator word; repeat for several.
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Include representatives and the coset table.
        #[arg(long)]
        table: bool,
    },
    /// Write the operator file for `shift I - A_G` (no report).
    Operator { graph: PathBuf, shift: String },
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Genus10 { .. } => "genus10",
        Command::Sap { .. } => "sap",
        Command::Bipartite { .. } => "bipartite",
        Command::Witness { .. } => "witness",
        Command::Q1 => "q1",
        Command::Heawood { .. } => "heawood",
        Command::Coset { .. } => "coset",
        Command::Operator { .. } => "operator",
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => commands::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    if let Command::Operator { graph, shift } = &cli.command {
        let g = commands::read_graph(graph)?;
        let op = build_shift_operator(&g, &commands::parse_shift(shift)?);
        emit(cli, &(op.to_json() + "\n"))?;
        return Ok(true);
    }
    let mut rec = Recorder::new(name(&cli.command), !cli.no_timings, cli.progress);
    match &cli.command {
        Command::Genus10 {
            skip_sap,
            presentation,
            max_cosets,
        } => commands::genus10(
            &mut rec,
            &Genus10Args {
                skip_sap: *skip_sap,
                presentation: presentation.clone(),
                max_cosets: *max_cosets,
            },
        )?,
        Command::Sap { graph, operator } => commands::sap(&mut rec, graph, operator)?,
        Command::Bipartite {
            a,
            b,
            sa,
            sb,
            operator_out,
        } => commands::bipartite(
            &mut rec,
            &BipartiteArgs {
                a: *a,
                b: *b,
                sa: *sa,
                sb: *sb,
                operator_out: operator_out.clone(),
            },
        )?,
        Command::Witness { a, b } => commands::witness(&mut rec, *a, *b)?,
        Command::Q1 => commands::q1(&mut rec)?,
        Command::Heawood {
            chi,
            klein,
            mu_lower,
        } => commands::heawood(&mut rec, *chi, *klein, *mu_lower)?,
        Command::Coset {
            presentation,
            subgroup,
            max_cosets,
            table,
        } => commands::coset(
            &mut rec,
            &CosetArgs {
                presentation: presentation.clone(),
                subgroup: subgroup.clone(),
                max_cosets: *max_cosets,
                table: *table,
            },
        )?,
        Command::Operator { .. } => unreachable!("handled above"),
    }
    let report = rec.finish();
    emit(cli, &report.to_json())?;
    if cli.out.is_some() {
        let failed = report.verdicts.iter().filter(|v| !v.pass).count();
        eprintln!(
            "{}: {} ({} of {} verdicts failed)",
            report.command,
            if report.passed { "pass" } else { "FAIL" },
            failed,
            report.verdicts.len()
        );
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
