use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use homlts_cli::{run_file, Command, Format, Options};
use homlts_core::cohomology::DEFAULT_MAX_TENSOR_ENTRIES;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    Verify,
    Cohomology,
    CentralExtension,
    ExtractCocycle,
    ExtendDeformation,
    Equivalence,
    ReportAll,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Verify => Command::Verify,
            CommandArg::Cohomology => Command::Cohomology,
            CommandArg::CentralExtension => Command::CentralExtension,
            CommandArg::ExtractCocycle => Command::ExtractCocycle,
            CommandArg::ExtendDeformation => Command::ExtendDeformation,
            CommandArg::Equivalence => Command::Equivalence,
            CommandArg::ReportAll => Command::ReportAll,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Exact computations for Hom Lie triple systems with finite group actions.
///
/// Exit codes: 0 success, 1 a check failed or a witness does not exist,
/// 2 usage or parse error, 3 size cap exceeded.
#[derive(Debug, Parser)]
#[command(name = "homlts", version)]
struct Args {
    #[arg(value_enum)]
    command: CommandArg,
    /// Instance file.
    file: PathBuf,
    /// Cochain degree for `cohomology` (odd).
    #[arg(long)]
    degree: Option<usize>,
    /// Use the G-invariant subcomplex for `cohomology`.
    #[arg(long)]
    equivariant: bool,
    /// Target order for `extend-deformation` and `equivalence`.
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Cap on raw tensor entries dim_T^degree * dim_V.
    #[arg(long, default_value_t = DEFAULT_MAX_TENSOR_ENTRIES)]
    max_tensor_entries: usize,
}

fn main() {
    let args = Args::parse();
    let opts = Options {
        degree: args.degree,
        equivariant: args.equivariant,
        to: args.to,
        max_tensor_entries: args.max_tensor_entries,
    };
    let format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let out = run_file(&args.file, args.command.into(), &opts, format);
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    std::process::exit(out.exit_code);
}
