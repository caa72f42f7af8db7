use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coiso::rational::{self, Q};
use coiso_cli::{run, Command, Overrides};

#[derive(Parser)]
#[command(name = "coiso", version, about = "Coisotropic embeddings of precosymplectic structures")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Half-width of the sampled box, as a rational such as 1/2.
    #[arg(long, global = true, value_parser = parse_rational)]
    radius: Option<Q>,
    /// Sample points per axis.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Integrator steps for flows.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// Tolerance for numerical residuals.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Structured)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a structure manifest and report its type and Reeb field.
    Check { manifest: PathBuf },
    /// Darboux basis of a skew matrix, optionally with a covector eta.
    Darboux {
        matrix: PathBuf,
        #[arg(long)]
        eta: Option<PathBuf>,
    },
    /// Thicken a Darboux-form structure and verify the embedding.
    Embed {
        manifest: PathBuf,
        /// `coordinate` or the path of a complement table.
        #[arg(long)]
        complement: Option<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Verify a thickened manifest against its base.
    VerifyEmbed { manifest: PathBuf, thickened: PathBuf },
    /// Construct and verify the Moser equivalence of two structures.
    Moser { m0: PathBuf, m1: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Structured,
    Human,
    Both,
}

fn parse_rational(s: &str) -> Result<Q, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Check { manifest } => Command::Check { manifest },
        Cmd::Darboux { matrix, eta } => Command::Darboux { matrix, eta },
        Cmd::Embed { manifest, complement, out } => Command::Embed { manifest, complement, out },
        Cmd::VerifyEmbed { manifest, thickened } => Command::VerifyEmbed { manifest, thickened },
        Cmd::Moser { m0, m1 } => Command::Moser { m0, m1 },
    };
    let overrides = Overrides { radius: cli.radius, grid: cli.grid, steps: cli.steps, tol: cli.tol };
    let (report, code) = run(&command, &overrides);
    match cli.format {
        Format::Structured => print!("{}", report.to_structured()),
        Format::Human => print!("{}", report.to_human()),
        Format::Both => {
            print!("{}", report.to_structured());
            eprint!("{}", report.to_human());
        }
    }
    ExitCode::from(code as u8)
}
