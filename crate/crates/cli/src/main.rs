use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use deforma_cli::commands::{self, DeformArgs, LinftyArgs, TRUNCATION_ENV};
use deforma_core::linfty::{L3Normalization, Variant};

#[derive(Parser)]
#[command(name = "deforma", version, about = "Cohomology, formal deformations and L-infinity checks for finite-dimensional Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity of an algebra file
    Validate { algebra: PathBuf },
    /// Chevalley-Eilenberg cohomology in degree 1, 2 or 3
    Cohomology {
        algebra: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Extend a first-order deformation order by order
    Deform {
        algebra: PathBuf,
        #[arg(long)]
        alpha1: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        /// Exit with status 1 if an obstruction stops the extension early
        #[arg(long)]
        require_order: bool,
    },
    /// Build the two-term L-infinity algebra of a first-order deformation and verify it
    Linfty {
        algebra: PathBuf,
        #[arg(long)]
        alpha1: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Strict)]
        variant: VariantArg,
        /// Truncation order; overrides DEFORMA_TRUNCATION
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long, value_enum, default_value_t = NormalizationArg::Derivation)]
        l3_normalization: NormalizationArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Strict,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizationArg {
    Derivation,
    Bracket,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Validate { algebra } => commands::validate(&algebra),
        Command::Cohomology { algebra, degree } => commands::cohomology_cmd(&algebra, degree),
        Command::Deform { algebra, alpha1, max_order, require_order } => {
            commands::deform(&DeformArgs { algebra: &algebra, alpha1: &alpha1, max_order, require_order })
        }
        Command::Linfty { algebra, alpha1, variant, truncation, l3_normalization } => {
            let env = std::env::var(TRUNCATION_ENV).ok();
            commands::linfty(&LinftyArgs {
                algebra: &algebra,
                alpha1: &alpha1,
                variant: match variant {
                    VariantArg::Strict => Variant::Strict,
                    VariantArg::Extended => Variant::Extended,
                },
                truncation: commands::resolve_truncation(truncation, env.as_deref()),
                l3_normalization: match l3_normalization {
                    NormalizationArg::Derivation => L3Normalization::Derivation,
                    NormalizationArg::Bracket => L3Normalization::Bracket,
                },
            })
        }
    };
    print!("{}", outcome.stdout);
    for line in &outcome.stderr {
        eprintln!("{line}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
