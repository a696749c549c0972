//! `moduli-lab`: admissibility checks, pair enumeration and moduli
//! dimensions for collections `(S, L, H, r)` on surfaces.

mod commands;
mod descriptor;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use commands::{CommandError, ConditionArg, EnumerateRequest, Strategy, EXIT_USAGE};
use descriptor::{DescriptorError, SurfaceDescriptor};
use moduli_lab::SearchBox;
use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "moduli-lab",
    version,
    about = "Admissible collections of line bundles on surfaces"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "MODULI_LAB_FORMAT",
        default_value = "markdown"
    )]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide A1, A2 and A3 for one pair (r, m).
    Check {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
    },
    /// List the pairs (r, m) satisfying A3 inside a box.
    Enumerate {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 64)]
        rmax: u64,
        #[arg(long, default_value_t = 64)]
        mmax: u64,
        /// Cap on the family parameter for the closed forms without a box.
        #[arg(long, default_value_t = 16)]
        amax: u64,
        #[arg(long, value_enum, default_value = "closed")]
        strategy: Strategy,
        #[arg(long, value_enum, default_value = "any")]
        condition: ConditionArg,
        /// Use the tables exactly as printed, errata included.
        #[arg(long)]
        literal_tables: bool,
    },
    /// Grassmannian and moduli dimensions, Mukai vector and Lagrangian test.
    Dims {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
    },
    /// Print a tabulated A3(2) classification.
    Table {
        /// sgt-a32 or kod0-a32.
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        ksq: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<BigInt>,
    },
    /// Run the built-in consistency grids.
    Selfcheck,
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    /// gt-canonical, gt-bicanonical, k3, kod0, delpezzo, elliptic or isogenous.
    #[arg(long)]
    family: Option<String>,
    /// Read the surface from a moduli-lab/1 descriptor file.
    #[arg(long)]
    surface_file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    ksq: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    hsq: Option<BigInt>,
    /// 0 or 1.
    #[arg(long, allow_hyphen_values = true)]
    k3: Option<BigInt>,
    /// 0 or 1.
    #[arg(long, allow_hyphen_values = true)]
    trivial_canonical: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    e: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<BigInt>,
    #[arg(long, allow_hyphen_values = true)]
    group_order: Option<BigInt>,
    #[arg(long)]
    label: Option<String>,
}

impl SurfaceArgs {
    fn descriptor(&self) -> Result<SurfaceDescriptor, CommandError> {
        let flags = [
            ("ksq", &self.ksq),
            ("chi", &self.chi),
            ("hsq", &self.hsq),
            ("k3", &self.k3),
            ("trivial_canonical", &self.trivial_canonical),
            ("e", &self.e),
            ("g", &self.g),
            ("group_order", &self.group_order),
        ];
        if let Some(path) = &self.surface_file {
            if self.family.is_some()
                || self.label.is_some()
                || flags.iter().any(|(_, v)| v.is_some())
            {
                return Err(DescriptorError::MixedSources.into());
            }
            let text = std::fs::read_to_string(path).map_err(|source| CommandError::Io {
                path: path.display().to_string(),
                source,
            })?;
            return Ok(SurfaceDescriptor::parse(&text)?);
        }
        let family = self.family.clone().ok_or(DescriptorError::MissingFamily)?;
        let mut d = SurfaceDescriptor::new(family);
        d.label = self.label.clone();
        for (key, value) in flags {
            if let Some(v) = value {
                d.set(key, v.clone())?;
            }
        }
        Ok(d)
    }
}

fn run(cli: Cli) -> commands::Outcome {
    let format = cli.format;
    match cli.command {
        Command::Check { surface, r, m } => {
            commands::cmd_check(&surface.descriptor()?, &r, &m, format)
        }
        Command::Dims { surface, r, m } => {
            commands::cmd_dims(&surface.descriptor()?, &r, &m, format)
        }
        Command::Enumerate {
            surface,
            rmax,
            mmax,
            amax,
            strategy,
            condition,
            literal_tables,
        } => {
            let request = EnumerateRequest {
                bounds: SearchBox::new(rmax, mmax),
                a_max: amax,
                strategy,
                condition,
                literal_tables,
            };
            commands::cmd_enumerate(&surface.descriptor()?, &request, format)
        }
        Command::Table { id, ksq, h } => commands::cmd_table(&id, ksq.as_ref(), h.as_ref(), format),
        Command::Selfcheck => commands::cmd_selfcheck(format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
