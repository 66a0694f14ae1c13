//! Loading `.jt` files with their imports, and auditing the shipped library
//! against its manifest.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use crate::kernel::{
    check_decl, is_trusted, primitive_table, Checker, Context, DeclarationKind, Diagnostic,
    GlobalTable,
};
use crate::nbe::{normalize, quote};
use crate::resolve::{resolve_decl, resolve_term};
use crate::surface::{parse_source, parse_term_source, print_core, ParseError, Span, Tier};

/// File extension of library sources.
pub const SOURCE_EXTENSION: &str = "jt";

/// Name of the manifest inside a library root.
pub const MANIFEST_FILE: &str = "MANIFEST";

/// Rules whose diagnostics mean the input could not be read at all.
const INPUT_RULES: [&str; 4] = ["io-error", "lex-error", "parse-error", "import-cycle"];

pub fn is_input_error(diagnostic: &Diagnostic) -> bool {
    INPUT_RULES.contains(&diagnostic.rule)
}

/// A file whose declarations have been added to the table.
#[derive(Clone, Debug)]
pub struct LoadedFile {
    pub path: PathBuf,
    pub display: String,
    pub decls: Vec<String>,
}

/// Checked files and the declarations they contributed.
pub struct Library {
    table: GlobalTable,
    files: Vec<LoadedFile>,
    by_path: HashMap<PathBuf, usize>,
    in_progress: Vec<PathBuf>,
    search_paths: Vec<PathBuf>,
}

impl Default for Library {
    fn default() -> Self {
        Library::new()
    }
}

impl Library {
    /// A library containing only the kernel primitives.
    pub fn new() -> Library {
        Library {
            table: primitive_table(),
            files: Vec::new(),
            by_path: HashMap::new(),
            in_progress: Vec::new(),
            search_paths: Vec::new(),
        }
    }

    /// Directories searched for imports after the importing file's own.
    pub fn with_search_path(mut self, dir: impl Into<PathBuf>) -> Library {
        self.search_paths.push(dir.into());
        self
    }

    pub fn table(&self) -> &GlobalTable {
        &self.table
    }

    pub fn files(&self) -> &[LoadedFile] {
        &self.files
    }

    /// Load and check a file and, first, everything it imports. Stops at the
    /// first error; declarations checked before it stay in the table.
    pub fn load_file(&mut self, path: &Path) -> Result<(), Diagnostic> {
        let display = path.display().to_string();
        let key = fs::canonicalize(path).map_err(|e| io_error(&display, &e))?;
        if self.by_path.contains_key(&key) {
            return Ok(());
        }
        if self.in_progress.contains(&key) {
            return Err(Diagnostic::error(
                "import-cycle",
                Span::default(),
                format!("import cycle through {display}"),
            )
            .in_file(display));
        }
        let src = fs::read_to_string(path).map_err(|e| io_error(&display, &e))?;
        self.in_progress.push(key.clone());
        let out = self.load_source(path, &display, &src);
        self.in_progress.pop();
        let decls = out?;
        self.by_path.insert(key, self.files.len());
        self.files.push(LoadedFile {
            path: path.to_path_buf(),
            display,
            decls,
        });
        Ok(())
    }

    /// Check source text that is not backed by a file. Imports resolve
    /// against the search paths.
    pub fn load_str(&mut self, name: &str, src: &str) -> Result<(), Diagnostic> {
        let decls = self.load_source(Path::new(name), name, src)?;
        self.files.push(LoadedFile {
            path: PathBuf::from(name),
            display: name.to_string(),
            decls,
        });
        Ok(())
    }

    fn load_source(
        &mut self,
        path: &Path,
        display: &str,
        src: &str,
    ) -> Result<Vec<String>, Diagnostic> {
        let module = parse_source(src).map_err(|e| parse_error(display, &e))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        for import in &module.imports {
            let target = self.find_import(&dir, &import.name).ok_or_else(|| {
                Diagnostic::error(
                    "io-error",
                    import.span,
                    format!("cannot find imported file `{}`", import.name),
                )
                .in_file(display)
            })?;
            self.load_file(&target).map_err(|d| {
                if d.rule == "import-cycle" && d.span == Span::default() {
                    Diagnostic {
                        span: import.span,
                        file: display.to_string(),
                        ..d
                    }
                } else {
                    d
                }
            })?;
        }
        let mut names = Vec::new();
        for decl in &module.decls {
            let resolved = resolve_decl(&self.table, decl).map_err(|e| {
                Diagnostic::error(e.rule(), e.span(), e.to_string()).in_file(display)
            })?;
            let checked = check_decl(&self.table, &resolved, display)?;
            names.push(checked.name.to_string());
            self.table.push(checked);
        }
        Ok(names)
    }

    fn find_import(&self, dir: &Path, name: &str) -> Option<PathBuf> {
        let file = format!("{name}.{SOURCE_EXTENSION}");
        std::iter::once(dir.to_path_buf())
            .chain(self.search_paths.iter().cloned())
            .map(|d| d.join(&file))
            .find(|p| p.is_file())
    }

    /// Load every source in a directory: in manifest order when the directory
    /// has a manifest, otherwise sorted by name.
    pub fn load_dir(&mut self, dir: &Path) -> Result<(), Diagnostic> {
        for path in library_files(dir)? {
            self.load_file(&path)?;
        }
        Ok(())
    }

    /// Elaborate `src` against everything loaded so far and return the printed
    /// normal form and type.
    pub fn normalize(&self, src: &str) -> Result<(String, String), Diagnostic> {
        let display = "<term>";
        let surface = parse_term_source(src).map_err(|e| parse_error(display, &e))?;
        let term = resolve_term(&self.table, &[], &surface)
            .map_err(|e| Diagnostic::error(e.rule(), e.span(), e.to_string()).in_file(display))?;
        let ctx = Context::new();
        let mut checker = Checker::new(&self.table, surface.span);
        let ty = checker.infer(&ctx, &term).map_err(|d| d.in_file(display))?;
        let nf = normalize(&self.table, 0, &term.strip());
        let ty = quote(&self.table, 0, &ty);
        Ok((print_core(&[], &nf), print_core(&[], &ty)))
    }

    /// The printed elaborated type of a declaration.
    pub fn print_type(&self, name: &str) -> Option<String> {
        self.table.get(name).map(|d| print_core(&[], &d.ty))
    }

    /// Sorted transitive postulate set of a declaration.
    pub fn assumptions(&self, name: &str) -> Option<Vec<String>> {
        self.table
            .assumptions_of(name)
            .map(|set| set.iter().cloned().collect())
    }

    /// Tier-A declarations that depend on something outside the trusted set,
    /// with the offending names.
    pub fn tier_a_violations(&self) -> Vec<(String, Vec<String>)> {
        self.table
            .iter()
            .filter(|d| d.tier == Some(Tier::A))
            .filter_map(|d| {
                let bad: Vec<_> = d
                    .assumptions
                    .iter()
                    .filter(|a| !is_trusted(a))
                    .cloned()
                    .collect();
                (!bad.is_empty()).then(|| (d.name.to_string(), bad))
            })
            .collect()
    }

    /// Names of the Tier-B declarations, in load order.
    pub fn tier_b(&self) -> Vec<String> {
        self.table
            .iter()
            .filter(|d| d.tier == Some(Tier::B))
            .map(|d| d.name.to_string())
            .collect()
    }

    /// Printed form of every loaded declaration, primitives included.
    pub fn dump(&self) -> String {
        self.table.dump()
    }
}

fn io_error(display: &str, err: &std::io::Error) -> Diagnostic {
    Diagnostic::error(
        "io-error",
        Span::default(),
        format!("cannot read {display}: {err}"),
    )
    .in_file(display)
}

fn parse_error(display: &str, err: &ParseError) -> Diagnostic {
    let rule = match err {
        ParseError::Lex(_) => "lex-error",
        ParseError::Syntax(_) => "parse-error",
    };
    Diagnostic::error(rule, err.span(), err.to_string()).in_file(display)
}

/// Sources of a library directory, in load order.
pub fn library_files(dir: &Path) -> Result<Vec<PathBuf>, Diagnostic> {
    let display = dir.display().to_string();
    let manifest = dir.join(MANIFEST_FILE);
    if manifest.is_file() {
        let text = fs::read_to_string(&manifest).map_err(|e| io_error(&display, &e))?;
        let entries = parse_manifest(&text).map_err(|(line, msg)| {
            Diagnostic::error(
                "parse-error",
                Span::default(),
                format!("manifest line {line}: {msg}"),
            )
            .in_file(manifest.display().to_string())
        })?;
        let mut files: Vec<String> = Vec::new();
        for entry in entries {
            if !files.contains(&entry.file) {
                files.push(entry.file);
            }
        }
        return Ok(files.into_iter().map(|f| dir.join(f)).collect());
    }
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_error(&display, &e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == SOURCE_EXTENSION))
        .collect();
    files.sort();
    Ok(files)
}

/// One manifest record: `file<TAB>name<TAB>tier<TAB>anchor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub file: String,
    pub name: String,
    pub tier: Tier,
    pub anchor: String,
}

/// Parse a manifest. Blank lines and lines starting with `#` are skipped.
/// Errors carry the 1-based line number.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, (usize, String)> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<_> = line.split('\t').collect();
        let [file, name, tier, anchor] = fields[..] else {
            return Err((
                i + 1,
                format!("expected 4 tab-separated fields, found {}", fields.len()),
            ));
        };
        let tier =
            Tier::from_letter(tier).ok_or_else(|| (i + 1, format!("unknown tier `{tier}`")))?;
        entries.push(ManifestEntry {
            file: file.to_string(),
            name: name.to_string(),
            tier,
            anchor: anchor.to_string(),
        });
    }
    Ok(entries)
}

/// Cross-check a loaded library against its manifest. Returns one message per
/// problem; empty means the manifest and the sources agree.
pub fn audit_manifest(library: &Library, entries: &[ManifestEntry]) -> Vec<String> {
    let mut problems = Vec::new();
    let file_of: HashMap<&str, &str> = library
        .files()
        .iter()
        .flat_map(|f| {
            let file = f.path.file_name().and_then(|n| n.to_str()).unwrap_or("");
            f.decls.iter().map(move |d| (d.as_str(), file))
        })
        .collect();
    let mut listed = BTreeSet::new();
    for entry in entries {
        if !listed.insert(entry.name.as_str()) {
            problems.push(format!("{} is listed twice", entry.name));
        }
        let Some(decl) = library.table().get(&entry.name) else {
            problems.push(format!("{} ({}) is not declared", entry.name, entry.file));
            continue;
        };
        if file_of.get(entry.name.as_str()) != Some(&entry.file.as_str()) {
            problems.push(format!("{} is not declared in {}", entry.name, entry.file));
        }
        if decl.tier != Some(entry.tier) {
            let found = decl
                .tier
                .map(|t| t.to_string())
                .unwrap_or_else(|| "none".into());
            problems.push(format!(
                "{} has tier {found} in source but {} in the manifest",
                entry.name, entry.tier
            ));
        }
        let ok_kind = match entry.tier {
            Tier::A => decl.kind == DeclarationKind::Define || is_trusted(&entry.name),
            Tier::B => decl.kind == DeclarationKind::Postulate,
            Tier::C => true,
        };
        if !ok_kind {
            problems.push(format!(
                "{} is a {} but tier {}",
                entry.name, decl.kind, entry.tier
            ));
        }
    }
    for file in library.files() {
        for name in &file.decls {
            let decl = library.table().get(name).expect("loaded declaration");
            if !listed.contains(name.as_str()) {
                if decl.kind == DeclarationKind::Postulate {
                    problems.push(format!("postulate {name} is not in the manifest"));
                } else if decl.tier.is_some() {
                    problems.push(format!("{name} has a tier but is not in the manifest"));
                }
            }
        }
    }
    problems
}
