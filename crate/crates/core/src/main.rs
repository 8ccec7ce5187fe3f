use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use entpow::cli::{
    parse_operator_file, render_report, run_verify, write_sweep, Family, SweepSpec, VerifyOptions,
    EXIT_CHECK_FAILED, EXIT_VALIDATION,
};
use entpow::{entanglement_report_with_tol, entangling_power_mc};

#[derive(Parser, Debug)]
#[command(
    name = "entpow",
    version,
    about = "Operator entanglement and entangling power of two-qudit gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an operator stored as JSON.
    Eval {
        path: PathBuf,
        /// Add the Monte-Carlo cross-check.
        #[arg(long)]
        mc: bool,
        #[arg(long, default_value_t = 50_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Unitarity tolerance on max |U^dag U - I|.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sweep a built-in family over a parameter grid and write CSV.
    Sweep {
        /// exp_swap, controlled_u_random or haar
        #[arg(long)]
        family: String,
        #[arg(long, short)]
        d: usize,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        end: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Run the built-in verification checks.
    Verify {
        /// Include the Monte-Carlo oracle checks.
        #[arg(long)]
        mc: bool,
        /// Repeat the analytic checks at this extra local dimension.
        #[arg(long = "d")]
        extra_d: Option<usize>,
        #[arg(long, default_value_t = 50_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code as u8)
}

fn eval(path: PathBuf, mc: bool, mc_samples: usize, seed: u64, tol: f64) -> ExitCode {
    if tol.is_nan() || tol < 0.0 {
        return fail(
            EXIT_VALIDATION,
            format!("tolerance must be nonnegative, got {tol}"),
        );
    }
    let content = match std::fs::read(&path) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_VALIDATION, format!("reading {}: {e}", path.display())),
    };
    let (op, name) = match parse_operator_file(&content) {
        Ok(parsed) => parsed,
        Err(e) => return fail(EXIT_VALIDATION, format!("{}: {e}", path.display())),
    };
    let report = entanglement_report_with_tol(&op, tol);
    if !report.unitarity_ok {
        print!("{}", render_report(&report, name.as_deref(), None));
        return fail(
            EXIT_CHECK_FAILED,
            format!(
                "operator is not unitary: max |U^dag U - I| = {:.3e} > {tol:.1e}",
                report.unitarity_defect
            ),
        );
    }
    let estimate = if mc {
        match entangling_power_mc(&op, mc_samples, seed) {
            Ok(est) => Some(est),
            Err(e) => return fail(EXIT_VALIDATION, e),
        }
    } else {
        None
    };
    print!(
        "{}",
        render_report(&report, name.as_deref(), estimate.as_ref())
    );
    ExitCode::SUCCESS
}

fn sweep(spec: SweepSpec, output: PathBuf) -> ExitCode {
    match write_sweep(&spec, &output) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_VALIDATION, e),
    }
}

fn verify(opts: VerifyOptions) -> ExitCode {
    if let Some(d) = opts.extra_d {
        if !(2..=16).contains(&d) {
            return fail(EXIT_VALIDATION, format!("--d must be in 2..=16, got {d}"));
        }
    }
    let checks = match run_verify(&opts) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_VALIDATION, e),
    };
    let failed = checks.iter().filter(|c| !c.pass).count();
    for c in &checks {
        println!("{}", c.line());
    }
    println!("{} checks, {} failed", checks.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED as u8)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match cli.command {
        Command::Eval {
            path,
            mc,
            mc_samples,
            seed,
            tol,
        } => eval(path, mc, mc_samples, seed, tol),
        Command::Sweep {
            family,
            d,
            start,
            end,
            steps,
            seed,
            output,
        } => {
            let family = match family.parse::<Family>() {
                Ok(f) => f,
                Err(e) => return fail(EXIT_VALIDATION, e),
            };
            let spec = SweepSpec {
                family,
                d,
                param_start: start,
                param_end: end,
                steps,
                seed,
            };
            sweep(spec, output)
        }
        Command::Verify {
            mc,
            extra_d,
            mc_samples,
            seed,
        } => verify(VerifyOptions {
            mc,
            extra_d,
            mc_samples,
            seed,
        }),
    }
}
