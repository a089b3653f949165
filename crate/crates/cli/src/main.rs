use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lagsurf::config::GridSpec;
use lagsurf::{Failure, Options};

#[derive(Parser)]
#[command(name = "lagsurf", version, about = "Lagrangian surfaces from Legendre curve pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// JSON job file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Seed for `verify` draws
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override every residual gate
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Surface samples, e.g. 101x101
    #[arg(long, global = true)]
    grid: Option<GridSpec>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one curve and report its invariants
    Curve,
    /// Build and classify the surface of a curve pair
    Surface,
    /// Run the seeded self-check
    Verify,
    /// Write CSV, OBJ and JSON artifacts
    Export,
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let opts = Options {
        config: cli.common.config,
        out: cli.common.out,
        seed: cli.common.seed,
        tolerance: cli.common.tolerance,
        grid: cli.common.grid,
    };
    match cli.command {
        Command::Curve => {
            let r = lagsurf::run_curve(&opts)?;
            println!(
                "curve {} samples, worst residual {:.3e} (tolerance {:e}): {}",
                r.samples,
                r.residuals.max(),
                r.tolerance,
                verdict(r.pass)
            );
            Ok(r.pass)
        }
        Command::Surface => {
            let r = lagsurf::run_surface(&opts)?;
            println!("surface {}: {}", r.grid, r.classification.label);
            if let Some(radius) = r.classification.sphere_radius {
                println!("sphere radius {radius:.6}");
            }
            if let Some(rho) = r.classification.cmc_fit.rho {
                println!("cmc fit rho {rho:.6}");
            }
            println!("worst analytic residual {:.3e} (tolerance {:e}): {}", r.analytic.max(), r.tolerance, verdict(r.pass));
            Ok(r.pass)
        }
        Command::Verify => {
            let r = lagsurf::run_verify(&opts)?;
            for c in &r.checks {
                println!("{:<32} {:.3e} < {:.1e}: {}", c.name, c.worst, c.tolerance, verdict(c.pass));
            }
            for c in &r.negative_controls {
                println!("{:<32} {:.3e} > {:.1e}: {}", c.name, c.defect, c.threshold, if c.detected { "detected" } else { "MISSED" });
            }
            Ok(r.pass)
        }
        Command::Export => {
            for name in lagsurf::run_export(&opts)? {
                println!("{}", opts.out.join(name).display());
            }
            Ok(true)
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lagsurf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
