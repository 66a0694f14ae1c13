//! Command-line front end: check library files, normalize terms, audit
//! assumptions.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use joinlang::kernel::TRUSTED_POSTULATES;
use joinlang::library::{audit_manifest, is_input_error, parse_manifest, Library, MANIFEST_FILE};
use joinlang::surface::Tier;
use joinlang::Diagnostic;

/// Environment variable naming the standard library directory.
const STDLIB_ENV: &str = "JOINLANG_STDLIB";

#[derive(Parser, Debug)]
#[command(
    name = "joinlang",
    version,
    about = "Type checker for the joinlang library"
)]
struct Cli {
    /// Standard library directory, searched for imports. Defaults to
    /// $JOINLANG_STDLIB, then ./stdlib.
    #[arg(long, global = true, value_name = "DIR")]
    root: Option<PathBuf>,

    /// Diagnostic format on standard error.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check files or library directories, with their imports.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Print the checked declaration table to standard output.
        #[arg(long)]
        dump: bool,
    },
    /// Print the normal form and type of a term in the context of a file.
    Normalize { file: PathBuf, term: String },
    /// Print the postulates a declaration depends on, or audit Tier-A
    /// declarations of a library directory.
    Assumptions {
        /// Declaration name, or a library directory with --audit-tier-a.
        target: String,
        #[arg(long)]
        audit_tier_a: bool,
    },
    /// Cross-check a library directory against its manifest.
    ManifestAudit { dir: Option<PathBuf> },
}

/// Process outcome, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Ok = 0,
    TypeError = 1,
    InputError = 2,
}

struct App {
    root: PathBuf,
    format: Format,
}

impl App {
    fn library(&self) -> Library {
        Library::new().with_search_path(&self.root)
    }

    fn report(&self, diagnostic: &Diagnostic) -> Outcome {
        let text = match self.format {
            Format::Tsv => diagnostic.to_tsv() + "\n",
            Format::Human => diagnostic.to_human(),
        };
        eprint!("{text}");
        if is_input_error(diagnostic) {
            Outcome::InputError
        } else {
            Outcome::TypeError
        }
    }

    #[allow(clippy::result_large_err)]
    fn load(&self, library: &mut Library, path: &Path) -> Result<(), Diagnostic> {
        if path.is_dir() {
            library.load_dir(path)
        } else {
            library.load_file(path)
        }
    }

    fn check(&self, paths: &[PathBuf], dump: bool) -> Outcome {
        let mut outcome = Outcome::Ok;
        let mut out = std::io::stdout().lock();
        for path in paths {
            let mut library = self.library();
            match self.load(&mut library, path) {
                Ok(()) => {
                    let count: usize = library.files().iter().map(|f| f.decls.len()).sum();
                    let _ = writeln!(out, "ok\t{}\t{count} declarations", path.display());
                }
                Err(d) => outcome = outcome.max(self.report(&d)),
            }
            if dump {
                let _ = out.write_all(library.dump().as_bytes());
            }
        }
        outcome
    }

    fn normalize(&self, file: &Path, term: &str) -> Outcome {
        let mut library = self.library();
        if let Err(d) = library.load_file(file) {
            return self.report(&d);
        }
        match library.normalize(term) {
            Ok((nf, ty)) => {
                println!("{nf} : {ty}");
                Outcome::Ok
            }
            Err(d) => self.report(&d),
        }
    }

    fn assumptions(&self, name: &str) -> Outcome {
        let mut library = self.library();
        if let Err(d) = library.load_dir(&self.root) {
            return self.report(&d);
        }
        match library.assumptions(name) {
            Some(names) => {
                for n in names {
                    println!("{n}");
                }
                Outcome::Ok
            }
            None => {
                eprintln!("unknown declaration `{name}`");
                Outcome::TypeError
            }
        }
    }

    fn audit_tier_a(&self, dir: &Path) -> Outcome {
        let mut library = self.library();
        if let Err(d) = library.load_dir(dir) {
            return self.report(&d);
        }
        let mut outcome = Outcome::Ok;
        for (name, leaks) in library.tier_a_violations() {
            eprintln!(
                "tier-a-leak\t{name}\tdepends on {} (trusted: {}, gind_edg*)",
                leaks.join(", "),
                TRUSTED_POSTULATES.join(", ")
            );
            outcome = Outcome::TypeError;
        }
        let tier_b = library.tier_b();
        for name in &tier_b {
            println!("{name}");
        }
        match read_manifest(dir) {
            Ok(Some(entries)) => {
                let listed: BTreeSet<_> = entries
                    .iter()
                    .filter(|e| e.tier == Tier::B)
                    .map(|e| e.name.clone())
                    .collect();
                let found: BTreeSet<_> = tier_b.into_iter().collect();
                for name in listed.symmetric_difference(&found) {
                    eprintln!("tier-b-mismatch\t{name}\tTier-B sets of source and manifest differ");
                    outcome = Outcome::TypeError;
                }
            }
            Ok(None) => {}
            Err(msg) => {
                eprintln!("{msg}");
                return Outcome::InputError;
            }
        }
        outcome
    }

    fn manifest_audit(&self, dir: &Path) -> Outcome {
        let entries = match read_manifest(dir) {
            Ok(Some(entries)) => entries,
            Ok(None) => {
                eprintln!("no {MANIFEST_FILE} in {}", dir.display());
                return Outcome::InputError;
            }
            Err(msg) => {
                eprintln!("{msg}");
                return Outcome::InputError;
            }
        };
        let mut library = self.library();
        if let Err(d) = library.load_dir(dir) {
            return self.report(&d);
        }
        let problems = audit_manifest(&library, &entries);
        for p in &problems {
            eprintln!("manifest\t{p}");
        }
        if problems.is_empty() {
            println!("manifest ok\t{} entries", entries.len());
            Outcome::Ok
        } else {
            Outcome::TypeError
        }
    }
}

fn read_manifest(dir: &Path) -> Result<Option<Vec<joinlang::library::ManifestEntry>>, String> {
    let path = dir.join(MANIFEST_FILE);
    if !path.is_file() {
        return Ok(None);
    }
    let text =
        fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_manifest(&text)
        .map(Some)
        .map_err(|(line, msg)| format!("{}:{line}: {msg}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let root = cli
        .root
        .or_else(|| std::env::var_os(STDLIB_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("stdlib"));
    let app = App {
        root,
        format: cli.format,
    };
    let outcome = match &cli.command {
        Command::Check { paths, dump } => app.check(paths, *dump),
        Command::Normalize { file, term } => app.normalize(file, term),
        Command::Assumptions {
            target,
            audit_tier_a: true,
        } => app.audit_tier_a(Path::new(target)),
        Command::Assumptions { target, .. } => app.assumptions(target),
        Command::ManifestAudit { dir } => {
            let dir = dir.clone().unwrap_or_else(|| app.root.clone());
            app.manifest_audit(&dir)
        }
    };
    ExitCode::from(outcome as u8)
}
