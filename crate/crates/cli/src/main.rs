//! `polarity`: exact checks of stress polarity on cubes.
//!
//! Exit status is 0 when every check passes, 1 when an identity fails and 2
//! for usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polarity_core::models::ModelKind;
use polarity_core::rational::Rational;
use polarity_core::report::RunReport;
use polarity_core::scenarios::{TorsionParams, TraceFreeFamilyParams};
use polarity_core::tensor::Vec3;

use commands::{rational, vector, AnalyzeArgs, ConformalArgs, InputError};

#[derive(Parser)]
#[command(name = "polarity", version, about = "Exact polarity analysis of stress fields on cubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run the seeded property suites.
    Verify {
        #[arg(long, env = "POLARITY_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze the tensor field "sigma" of a field document on one cube.
    Analyze {
        field_file: PathBuf,
        #[arg(long, value_parser = vector, default_value = "0,0,0")]
        x0: Vec3,
        #[arg(long, value_parser = rational, default_value = "1")]
        lc: Rational,
        /// Report m + ψ(x₀) in place of m.
        #[arg(long)]
        merge_psi: bool,
        #[arg(long, value_parser = vector, default_value = "0,0,0")]
        body_force: Vec3,
        #[arg(long, value_parser = vector, default_value = "0,0,0")]
        body_couple: Vec3,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a worked scenario.
    Scenario {
        #[command(subcommand)]
        scenario: Scenario,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Scenario {
    /// Small-angle torsion of a square beam.
    Torsion {
        #[arg(long, value_parser = rational, default_value = "1/100")]
        alpha_bar: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        mu: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        lc: Rational,
        #[arg(long, value_parser = rational, default_value = "1/12")]
        alpha1: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        dx: Rational,
    },
    /// The three-parameter divergence-free family with trace-free m.
    TraceFree {
        #[arg(long, value_parser = rational, default_value = "1")]
        a: Rational,
        #[arg(long, value_parser = rational, default_value = "0")]
        b: Rational,
        #[arg(long, value_parser = rational, default_value = "0")]
        c: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        lc: Rational,
    },
    /// A clamped beam loaded by a tip couple.
    YangCantilever {
        #[arg(long, value_parser = rational, default_value = "1")]
        span: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        magnitude: Rational,
    },
    /// The surface moment identity for a seeded random m.
    YangSurface {
        #[arg(long, env = "POLARITY_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[arg(long, value_parser = vector, default_value = "0,0,0")]
        x0: Vec3,
        #[arg(long, value_parser = rational, default_value = "1")]
        lc: Rational,
    },
    /// Response of each model to an infinitesimal conformal map.
    Conformal {
        /// Axial vector of Ŵ.
        #[arg(long, value_parser = vector, default_value = "0,0,1")]
        w: Vec3,
        /// Axial vector of Â.
        #[arg(long, value_parser = vector, default_value = "0,0,0")]
        a_hat: Vec3,
        #[arg(long, value_parser = rational, default_value = "0")]
        p_hat: Rational,
        #[arg(long, value_parser = vector, default_value = "0,0,0")]
        b_hat: Vec3,
        #[arg(long, value_enum, default_value_t = ModelArg::Modified)]
        model: ModelArg,
        #[arg(long, value_parser = rational, default_value = "1")]
        mu: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        lambda: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        lc: Rational,
        /// Defaults to 1, or 0 where the model forbids it.
        #[arg(long, value_parser = rational)]
        alpha1: Option<Rational>,
        /// Defaults to 1, or 0 where the model forbids it.
        #[arg(long, value_parser = rational)]
        alpha2: Option<Rational>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Indeterminate,
    Modified,
    Skew,
    Symmetric,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Indeterminate => ModelKind::Indeterminate,
            ModelArg::Modified => ModelKind::ModifiedConformal,
            ModelArg::Skew => ModelKind::SkewHD,
            ModelArg::Symmetric => ModelKind::SymmetricStress,
        }
    }
}

fn run(command: Command) -> Result<(RunReport, Option<PathBuf>), InputError> {
    Ok(match command {
        Command::Verify { seed, trials, max_degree, out } => (commands::verify(seed, trials, max_degree)?, out),
        Command::Analyze { field_file, x0, lc, merge_psi, body_force, body_couple, out } => {
            let text = std::fs::read_to_string(&field_file)
                .map_err(|e| InputError(format!("cannot read {}: {e}", field_file.display())))?;
            let args = AnalyzeArgs { text: &text, x0, edge: lc, merge_psi, body_force, body_couple };
            (commands::analyze_field(args)?, out)
        }
        Command::Scenario { scenario, out } => {
            let report = match scenario {
                Scenario::Torsion { alpha_bar, mu, lc, alpha1, dx } => {
                    commands::torsion(TorsionParams { alpha_bar, mu, length: lc, alpha1, dx })?
                }
                Scenario::TraceFree { a, b, c, lc } => commands::trace_free(TraceFreeFamilyParams { a, b, c, length: lc })?,
                Scenario::YangCantilever { span, magnitude } => commands::yang_cantilever(span, magnitude)?,
                Scenario::YangSurface { seed, max_degree, x0, lc } => commands::yang_surface(seed, max_degree, x0, lc)?,
                Scenario::Conformal { w, a_hat, p_hat, b_hat, model, mu, lambda, lc, alpha1, alpha2 } => {
                    commands::conformal(ConformalArgs {
                        w,
                        a: a_hat,
                        p: p_hat,
                        b: b_hat,
                        kind: model.into(),
                        mu,
                        lambda,
                        length: lc,
                        alpha1,
                        alpha2,
                    })?
                }
            };
            (report, out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut report, out) = match run(cli.command) {
        Ok(r) => r,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    let failed: Vec<_> = report.failures().map(|c| c.id.as_str()).collect();
    let total = report.checks.len();
    if failed.is_empty() {
        eprintln!("{total} checks passed");
        ExitCode::SUCCESS
    } else {
        eprintln!("{} of {total} checks failed: {}", failed.len(), failed.join(", "));
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use polarity_core::rational::{int, rat};

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_rational_vectors() {
        assert_eq!(vector("1/2, 0,−3").unwrap(), Vec3::new(rat(1, 2), int(0), int(-3)));
        assert!(vector("1,2").is_err());
    }
}
