use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stackprint::oracle;
use stackprint::sweeplab::{self, BoundaryKind, SweepSpec};
use stackprint::Result;

#[derive(Parser)]
#[command(name = "stackprint", version, about = "Printing-adoption equilibria, sweeps and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the equilibrium of a config and print it.
    Solve { config: PathBuf },
    /// Sweep one or two parameters and emit region CSV.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, requires_all = ["from2", "to2", "steps2"])]
        param2: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        from2: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to2: Option<f64>,
        #[arg(long)]
        steps2: Option<usize>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate where the equilibrium label changes along one parameter.
    Boundary {
        config: PathBuf,
        #[arg(long)]
        param: String,
        /// `adoption` or `capacity`.
        #[arg(long)]
        kind: String,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
    },
    /// Cross-check the analytic equilibrium against the grid and Monte-Carlo oracles.
    Verify {
        config: PathBuf,
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[arg(long, default_value_t = 1_000_000)]
        mc: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { config } => {
            let inst = sweeplab::load_instance(config)?;
            print!("{}", sweeplab::solution_report(&inst)?);
        }
        Command::Sweep {
            config,
            param,
            from,
            to,
            steps,
            param2,
            from2,
            to2,
            steps2,
            out,
        } => {
            let inst = sweeplab::load_instance(config)?;
            let mut spec = SweepSpec::new(param, from, to, steps);
            if let (Some(p), Some(a), Some(b), Some(n)) = (param2, from2, to2, steps2) {
                spec = spec.nested(SweepSpec::new(p, a, b, n));
            }
            let cells = sweeplab::sweep(&inst, &spec)?;
            match out {
                Some(path) => sweeplab::emit_csv(&cells, path)?,
                None => print!("{}", sweeplab::write_csv(&cells)?),
            }
        }
        Command::Boundary {
            config,
            param,
            kind,
            lo,
            hi,
        } => {
            let inst = sweeplab::load_instance(config)?;
            let kind: BoundaryKind = kind.parse()?;
            let x = sweeplab::find_boundary(&inst, &param, kind, lo, hi)?;
            println!("{}", sweeplab::format_g10(x));
        }
        Command::Verify {
            config,
            grid,
            mc,
            seed,
        } => {
            let inst = sweeplab::load_instance(config)?;
            let r = oracle::verify(&inst, grid, mc, seed)?;
            println!("analytic_pi = {}", r.analytic_pi);
            println!("oracle_pi = {}", r.oracle_pi);
            println!("abs_gap = {}", r.abs_gap);
            println!("analytic_case = \"{}\"", r.analytic_case);
            println!("oracle_case = \"{}\"", r.oracle_case);
            println!("analytic_pi_R = {}", r.analytic_pi_r);
            println!("mc_mean = {}", r.mc_mean);
            println!("mc_stderr = {}", r.mc_stderr);
            println!("soc_ok = {}", r.soc_ok);
            println!("notes = \"{}\"", r.notes);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stackprint: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
