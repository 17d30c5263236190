//! `ctk`: batch verification of character-table data in CTB files.
//!
//! Exit status is 0 when every check passes, 1 on a failed check (or a warning
//! under `--strict`), and 2 on unreadable or malformed input.

mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use ctk_core::report::Report;
use ctk_core::tables::{parse_document, CtbDocument, TableLibrary};

#[derive(Parser)]
#[command(
    name = "ctk",
    version,
    about = "Exact verification of ordinary character-table data"
)]
struct Cli {
    /// Directory of CTB files to load; repeatable. Defaults to the directories of the input files.
    #[arg(long, global = true)]
    fixtures: Vec<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Worker threads for the parallel kernels.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Treat warnings as failures.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Head invariants, class equation and orthogonality of each table in a file.
    Validate { file: PathBuf },
    /// Solve every DECOMP stanza in a file.
    Decompose { file: PathBuf },
    /// Possible class fusions: `fuse <sub> <big> [seed]` or `fuse <file>` with FUSIONPROBLEM stanzas.
    Fuse {
        #[arg(required = true, num_args = 1..=3)]
        args: Vec<String>,
    },
    /// Power-map refinement for POWERPROBLEM stanzas, or for every table in a file.
    Powermaps { target: String },
    /// Suborbit tables, restricted permutation characters and derived centralizer orders.
    Permchar { file: PathBuf },
    /// Value completion for every PARTIAL stanza in a file.
    Complete {
        file: PathBuf,
        /// Subgroup whose irreducibles and fusion supply constituent constraints; repeatable.
        #[arg(long = "source")]
        sources: Vec<String>,
        /// The character is known to be orthogonal to the trivial character.
        #[arg(long)]
        orthogonal: bool,
    },
    /// Sylow normalizer order filters for SYLOW stanzas.
    Sylow { file: PathBuf },
    /// Orthogonality, norms, lattice membership, ledgers and suborbit tables.
    Verify { file: PathBuf },
    /// Membership of a character (by name or as `v1,v2,...`) in the lattice of induced characters.
    Lattice { table: String, target: String },
}

/// Loaded data plus the document named on the command line.
pub struct Inputs {
    pub lib: TableLibrary,
    pub doc: CtbDocument,
}

fn ctb_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let p = entry?.path();
        if p.extension().is_some_and(|x| x == "ctb") {
            out.push(p);
        }
    }
    Ok(out)
}

fn load(fixtures: &[PathBuf], file: Option<&Path>) -> Result<Inputs> {
    let mut dirs: Vec<PathBuf> = fixtures.to_vec();
    if dirs.is_empty() {
        match file.and_then(Path::parent) {
            Some(d) => dirs.push(if d.as_os_str().is_empty() {
                PathBuf::from(".")
            } else {
                d.to_path_buf()
            }),
            None if Path::new("fixtures").is_dir() => dirs.push(PathBuf::from("fixtures")),
            None => {}
        }
    }
    let mut files = Vec::new();
    for d in &dirs {
        files.extend(ctb_files(d)?);
    }
    let main = match file {
        Some(f) => Some(
            f.canonicalize()
                .with_context(|| format!("reading {}", f.display()))?,
        ),
        None => None,
    };
    let mut paths: Vec<PathBuf> = files
        .iter()
        .map(|f| f.canonicalize())
        .collect::<std::io::Result<_>>()?;
    paths.extend(main.clone());
    paths.sort();
    paths.dedup();
    let mut lib = TableLibrary::new();
    let mut doc = CtbDocument::default();
    for p in &paths {
        let text =
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        if Some(p) == main.as_ref() {
            doc = parse_document(&text).with_context(|| p.display().to_string())?;
        }
        lib.add_text(&text, &p.display().to_string())?;
    }
    Ok(Inputs { lib, doc })
}

fn run(cli: &Cli) -> Result<Report> {
    let file = match &cli.command {
        Command::Validate { file }
        | Command::Decompose { file }
        | Command::Permchar { file }
        | Command::Complete { file, .. }
        | Command::Sylow { file }
        | Command::Verify { file } => Some(file.clone()),
        Command::Fuse { args } if args.len() == 1 => Some(PathBuf::from(&args[0])),
        Command::Powermaps { target } | Command::Lattice { table: target, .. }
            if target.ends_with(".ctb") =>
        {
            Some(PathBuf::from(target))
        }
        _ => None,
    };
    let inputs = load(&cli.fixtures, file.as_deref())?;
    match &cli.command {
        Command::Validate { .. } => commands::validate(&inputs),
        Command::Decompose { .. } => commands::decompose(&inputs),
        Command::Fuse { args } => commands::fuse(&inputs, args),
        Command::Powermaps { target } => commands::powermaps(&inputs, target),
        Command::Permchar { .. } => commands::permchar(&inputs),
        Command::Complete {
            sources,
            orthogonal,
            ..
        } => commands::complete(&inputs, sources, *orthogonal),
        Command::Sylow { .. } => commands::sylow(&inputs),
        Command::Verify { .. } => commands::verify(&inputs),
        Command::Lattice { table, target } => commands::lattice(&inputs, table, target),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.report {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &report.to_string()) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.failures() > 0 || (cli.strict && report.warnings() > 0) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
