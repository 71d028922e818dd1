//! The `bisys` command line: validation, canonical constructions,
//! K-group tables and equivalence checks over JSON documents.

pub mod document;
pub mod selftest;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use bisys_bisystem::{
    fpcc_check, from_lambda_graph_system, presented_words, to_dot, validate, Fpcc, LambdaGraphBisystem, Side,
};
use bisys_canonical::{canonical_bisystem, CanonicalError};
use bisys_core::display_word;
use bisys_equivalence::{
    bipartite_split, detect_bipartite, psse_to_sse, verify_psse_1step, verify_sse_1step, EquivalenceReport, PsseWitness,
};
use bisys_ktheory::k_groups;
use bisys_smb::{from_smb, to_smb, validate_smb, SymbolicMatrixBisystem};
use bisys_subshift::admissible_words;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use document::{
    emit_document, parse_document, BisystemDoc, Document, DocumentError, PsseDoc, SmbDoc, SseDoc, SCHEMA_VERSION,
};

/// Environment variable capping every depth.
pub const MAX_DEPTH_VAR: &str = "BISYS_MAX_DEPTH";

#[derive(Debug, Parser)]
#[command(
    name = "bisys",
    version,
    about = "λ-graph bisystems: validation, canonical builds, K-groups and equivalences"
)]
pub struct Cli {
    /// Number of levels to build or check (default 6, capped by BISYS_MAX_DEPTH).
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Seed for the randomized self-tests.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Dot,
    Json,
    Smb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Minus,
    Plus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Minus => Side::Minus,
            SideArg::Plus => Side::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Psse,
    Sse,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the bisystem axioms and FPCC.
    Validate { file: PathBuf },
    /// Build the canonical bisystem of a subshift.
    Canonical {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Tabulate the K-group approximants of one side.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "minus")]
        side: SideArg,
    },
    /// Verify a 1-step witness between two symbolic matrix bisystems.
    CheckEquivalence {
        /// Symbolic matrix bisystem `M`.
        m: PathBuf,
        /// Symbolic matrix bisystem `N`.
        n: PathBuf,
        /// A `psse_witness` or `sse_witness` document.
        witness: PathBuf,
        /// Defaults to the witness kind; `sse` converts a properly strong witness first.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Write the converted strong witness here.
        #[arg(long)]
        convert: Option<PathBuf>,
    },
    /// Detect a bipartite structure and split it.
    Bipartite {
        file: PathBuf,
        /// Write `cd.json`, `dc.json` and `witness.json` here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Swap the two sides.
    Transpose { file: PathBuf },
    /// List the words of length `n`.
    Words {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "plus")]
        side: SideArg,
        #[arg(short = 'n', long = "length")]
        n: usize,
    },
    /// Import a λ-graph system as a bisystem.
    FromLgs { file: PathBuf },
    /// Run the seeded property suites.
    SelfTest {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Document { path: String, source: DocumentError },
    #[error("{0}")]
    Input(String),
    /// A construction that ran but produced an object failing its checks.
    #[error("{0}")]
    Verdict(String),
}

impl CliError {
    /// Failed constructions exit with 1, input errors with 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verdict(_) => 1,
            _ => 2,
        }
    }
}

/// A finished command: `Pass` exits 0 and `Fail` exits 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn io_err(path: &Path, source: io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

struct Ctx<'a> {
    depth: Option<usize>,
    cap: Option<usize>,
    json: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn requested(&self) -> Option<usize> {
        match (self.depth, self.cap) {
            (Some(d), Some(c)) => Some(d.min(c)),
            (d, None) => d,
            (None, Some(c)) => Some(c.min(document::DEFAULT_DEPTH)),
        }
    }

    fn print(&mut self, text: &str) -> CliResult<()> {
        self.out.write_all(text.as_bytes()).map_err(|e| io_err(Path::new("<stdout>"), e))
    }

    /// Prints `text` ending in exactly one newline.
    fn println(&mut self, text: &str) -> CliResult<()> {
        self.print(text.trim_end_matches('\n'))?;
        self.print("\n")
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "warning: {text}");
    }

    fn report(&mut self, value: serde_json::Value) -> CliResult<()> {
        let text = serde_json::to_string_pretty(&value).expect("reports serialize");
        self.println(&text)
    }
}

/// Reads a document; `-` is standard input.
pub fn load(path: &Path) -> CliResult<Document> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_err(path, e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| io_err(path, e))?
    };
    parse_document(&text).map_err(|source| CliError::Document { path: path.display().to_string(), source })
}

fn doc_err(path: &Path) -> impl Fn(DocumentError) -> CliError + '_ {
    move |source| CliError::Document { path: path.display().to_string(), source }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn name_of(doc: &Document) -> Option<String> {
    match doc {
        Document::Subshift(d) => d.name.clone(),
        Document::Bisystem(d) => d.name.clone(),
        Document::LambdaGraphSystem(d) => d.name.clone(),
        Document::Smb(d) => d.name.clone(),
        Document::PsseWitness(d) => d.name.clone(),
        Document::SseWitness(d) => d.name.clone(),
    }
}

fn canonical_error(e: CanonicalError) -> CliError {
    match e {
        CanonicalError::Invalid(_) => CliError::Verdict(e.to_string()),
        _ => input(format!("canonical construction failed: {e}")),
    }
}

/// The bisystem behind a subshift, bisystem, λ-graph system or smb
/// document.
fn bisystem_of(doc: &Document, path: &Path, ctx: &mut Ctx) -> CliResult<LambdaGraphBisystem> {
    let requested = ctx.requested();
    match doc {
        Document::Bisystem(d) => d.to_bisystem(requested).map_err(doc_err(path)),
        Document::LambdaGraphSystem(d) => {
            let lgs = d.to_system(requested).map_err(doc_err(path))?;
            from_lambda_graph_system(&lgs).map_err(|e| input(format!("{}: {e}", path.display())))
        }
        Document::Smb(d) => {
            let s = d.to_smb(requested).map_err(doc_err(path))?;
            from_smb(&s).map_err(|e| input(format!("{}: {e}", path.display())))
        }
        Document::Subshift(d) => {
            let p = d.presentation().map_err(doc_err(path))?;
            let depth = document::resolve_depth(requested, None, usize::MAX, true).map_err(doc_err(path))?;
            let build = canonical_bisystem(&p, depth).map_err(canonical_error)?;
            for w in &build.provenance.warnings {
                ctx.warn(w);
            }
            Ok(build.bisystem)
        }
        other => Err(input(format!("{}: a {} document has no bisystem", path.display(), other.kind()))),
    }
}

fn smb_of(doc: &Document, path: &Path, ctx: &mut Ctx) -> CliResult<SymbolicMatrixBisystem> {
    match doc {
        Document::Smb(d) => d.to_smb(ctx.requested()).map_err(doc_err(path)),
        other => Ok(to_smb(&bisystem_of(other, path, ctx)?)),
    }
}

fn fpcc_line(f: &Fpcc) -> String {
    match f {
        Fpcc::Holds => "FPCC: holds".into(),
        Fpcc::Fails { level, vertex, .. } => format!("FPCC: fails at {}", bisys_bisystem::vertex_name(*level, *vertex)),
        Fpcc::NotApplicable { reason } => format!("FPCC: not applicable ({reason})"),
    }
}

fn cmd_validate(path: &Path, ctx: &mut Ctx) -> CliResult<Outcome> {
    let doc = load(path)?;
    let requested = ctx.requested();
    match &doc {
        Document::Smb(d) => {
            let s = d.to_smb(requested).map_err(doc_err(path))?;
            let report = validate_smb(&s);
            let fpcc = if report.is_valid() { from_smb(&s).ok().map(|b| fpcc_check(&b)) } else { None };
            let ok = report.is_valid() && !matches!(fpcc, Some(Fpcc::Fails { .. }));
            if ctx.json {
                ctx.report(json!({
                    "schema_version": SCHEMA_VERSION, "kind": "validation_report", "target": "smb",
                    "passed": ok, "report": report, "fpcc": fpcc,
                }))?;
            } else {
                ctx.println(&report.to_string())?;
                if let Some(f) = &fpcc {
                    ctx.println(&fpcc_line(f))?;
                }
            }
            Ok(Outcome::from_bool(ok))
        }
        Document::LambdaGraphSystem(d) => {
            let lgs = d.to_system(requested).map_err(doc_err(path))?;
            let violations = lgs.check();
            let report =
                if violations.is_empty() { from_lambda_graph_system(&lgs).ok().map(|b| validate(&b)) } else { None };
            let ok = violations.is_empty() && report.as_ref().is_some_and(|r| r.is_valid());
            if ctx.json {
                ctx.report(json!({
                    "schema_version": SCHEMA_VERSION, "kind": "validation_report", "target": "lambda_graph_system",
                    "passed": ok, "system_violations": violations, "report": report,
                }))?;
            } else {
                ctx.println(&format!("λ-graph system: {}", if violations.is_empty() { "pass" } else { "FAIL" }))?;
                for v in &violations {
                    ctx.println(&format!("  {v}"))?;
                }
                if let Some(r) = &report {
                    ctx.println(&r.to_string())?;
                }
            }
            Ok(Outcome::from_bool(ok))
        }
        Document::Bisystem(_) | Document::Subshift(_) => {
            let b = bisystem_of(&doc, path, ctx)?;
            let report = validate(&b);
            let ok = report.is_valid() && !matches!(report.fpcc, Fpcc::Fails { .. });
            if ctx.json {
                ctx.report(json!({
                    "schema_version": SCHEMA_VERSION, "kind": "validation_report", "target": doc.kind(),
                    "passed": ok, "report": report,
                }))?;
            } else {
                ctx.println(&report.to_string())?;
            }
            Ok(Outcome::from_bool(ok))
        }
        other => Err(input(format!("{}: cannot validate a {} document", path.display(), other.kind()))),
    }
}

fn cmd_canonical(path: &Path, emit: Emit, ctx: &mut Ctx) -> CliResult<Outcome> {
    let doc = load(path)?;
    if !matches!(doc, Document::Subshift(_)) {
        return Err(input(format!("{}: canonical expects a subshift document, found {}", path.display(), doc.kind())));
    }
    let name = name_of(&doc);
    let b = bisystem_of(&doc, path, ctx)?;
    let text = match emit {
        Emit::Dot => to_dot(&b),
        Emit::Json => emit_document(&Document::Bisystem(BisystemDoc::from_bisystem(&b, name))),
        Emit::Smb => emit_document(&Document::Smb(SmbDoc::from_smb(&to_smb(&b), name))),
    };
    ctx.print(&text)?;
    Ok(Outcome::Pass)
}

fn cmd_invariants(path: &Path, side: Side, ctx: &mut Ctx) -> CliResult<Outcome> {
    let doc = load(path)?;
    let b = bisystem_of(&doc, path, ctx)?;
    let result = k_groups(&b, side, b.depth()).map_err(|e| input(e.to_string()))?;
    if ctx.json {
        ctx.report(json!({ "schema_version": SCHEMA_VERSION, "kind": "k_groups", "result": result }))?;
    } else {
        ctx.println(&result.to_string())?;
    }
    Ok(Outcome::Pass)
}

fn print_equivalence(report: &EquivalenceReport, ctx: &mut Ctx) -> CliResult<Outcome> {
    if ctx.json {
        ctx.report(json!({
            "schema_version": SCHEMA_VERSION, "kind": "equivalence_report", "passed": report.holds(), "report": report,
        }))?;
    } else {
        ctx.println(&report.to_string())?;
    }
    Ok(Outcome::from_bool(report.holds()))
}

fn cmd_check_equivalence(
    paths: [&Path; 3],
    mode: Option<ModeArg>,
    convert: Option<&Path>,
    ctx: &mut Ctx,
) -> CliResult<Outcome> {
    let [pm, pn, pw] = paths;
    let (dm, dn, dw) = (load(pm)?, load(pn)?, load(pw)?);
    let sm = smb_of(&dm, pm, ctx)?;
    let sn = smb_of(&dn, pn, ctx)?;
    let depth = ctx.requested().unwrap_or(document::DEFAULT_DEPTH).min(sm.depth()).min(sn.depth());
    match (&dw, mode) {
        (Document::PsseWitness(w), m) => {
            let listed = if w.repeat_from.is_some() { depth } else { w.listed_depth().min(depth) };
            let witness: PsseWitness = w.to_witness(listed).map_err(doc_err(pw))?;
            let converted = if m == Some(ModeArg::Sse) || convert.is_some() {
                match psse_to_sse(&witness) {
                    Ok(s) => Some(s),
                    Err(e) => {
                        ctx.println(&format!("conversion to a strong witness failed: {e}"))?;
                        return Ok(Outcome::Fail);
                    }
                }
            } else {
                None
            };
            if let (Some(out), Some(s)) = (convert, &converted) {
                write_file(out, &emit_document(&Document::SseWitness(SseDoc::from_witness(s, name_of(&dw)))))?;
            }
            let report = match (m, converted) {
                (Some(ModeArg::Sse), Some(s)) => verify_sse_1step(&sm, &sn, &s, depth),
                _ => verify_psse_1step(&sm, &sn, &witness, depth),
            };
            print_equivalence(&report, ctx)
        }
        (Document::SseWitness(w), None | Some(ModeArg::Sse)) => {
            if convert.is_some() {
                return Err(input("--convert needs a psse_witness"));
            }
            let listed = if w.repeat_from.is_some() { depth } else { w.listed_depth().min(depth) };
            let witness = w.to_witness(listed).map_err(doc_err(pw))?;
            print_equivalence(&verify_sse_1step(&sm, &sn, &witness, depth), ctx)
        }
        (Document::SseWitness(_), Some(ModeArg::Psse)) => {
            Err(input(format!("{}: an sse_witness cannot be checked in psse mode", pw.display())))
        }
        (other, _) => Err(input(format!("{}: expected a witness document, found {}", pw.display(), other.kind()))),
    }
}

fn symbol_list<'a>(symbols: impl IntoIterator<Item = &'a bisys_core::Symbol>) -> String {
    symbols.into_iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_bipartite(path: &Path, out_dir: Option<&Path>, ctx: &mut Ctx) -> CliResult<Outcome> {
    let doc = load(path)?;
    let s = smb_of(&doc, path, ctx)?;
    let Some(bip) = detect_bipartite(&s) else {
        ctx.println("not bipartite")?;
        return Ok(Outcome::Fail);
    };
    let split = bipartite_split(&s, &bip).map_err(|e| input(e.to_string()))?;
    let depth = split.cd.depth();
    let report = verify_psse_1step(&split.cd, &split.dc, &split.witness, depth);
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        write_file(
            &dir.join("cd.json"),
            &emit_document(&Document::Smb(SmbDoc::from_smb(&split.cd, Some("CD".into())))),
        )?;
        write_file(
            &dir.join("dc.json"),
            &emit_document(&Document::Smb(SmbDoc::from_smb(&split.dc, Some("DC".into())))),
        )?;
        let w = PsseDoc::from_witness(&split.witness, Some("bipartite split".into()));
        write_file(&dir.join("witness.json"), &emit_document(&Document::PsseWitness(w)))?;
    }
    if ctx.json {
        ctx.report(json!({
            "schema_version": SCHEMA_VERSION, "kind": "bipartite_report", "c": bip.c, "d": bip.d,
            "split_depth": depth, "passed": report.holds(), "report": report,
        }))?;
    } else {
        ctx.println(&format!("C = {{{}}}", symbol_list(&bip.c)))?;
        ctx.println(&format!("D = {{{}}}", symbol_list(&bip.d)))?;
        ctx.println(&format!("split depth {depth}"))?;
        ctx.println(&report.to_string())?;
    }
    Ok(Outcome::from_bool(report.holds()))
}

fn cmd_transpose(path: &Path, ctx: &mut Ctx) -> CliResult<Outcome> {
    let doc = load(path)?;
    let name = name_of(&doc);
    let text = match &doc {
        Document::Bisystem(_) => {
            let b = bisystem_of(&doc, path, ctx)?;
            emit_document(&Document::Bisystem(BisystemDoc::from_bisystem(&b.transpose(), name)))
        }
        Document::Smb(_) => {
            let b = bisystem_of(&doc, path, ctx)?;
            emit_document(&Document::Smb(SmbDoc::from_smb(&to_smb(&b.transpose()), name)))
        }
        other => return Err(input(format!("{}: cannot transpose a {} document", path.display(), other.kind()))),
    };
    ctx.print(&text)?;
    Ok(Outcome::Pass)
}

fn cmd_words(path: &Path, side: Side, n: usize, ctx: &mut Ctx) -> CliResult<Outcome> {
    let doc = load(path)?;
    let words = match &doc {
        Document::Subshift(d) => {
            let p = d.presentation().map_err(doc_err(path))?;
            admissible_words(&p, n).map_err(|e| input(e.to_string()))?
        }
        _ => {
            let b = bisystem_of(&doc, path, ctx)?;
            presented_words(&b, side, n).map_err(|e| input(format!("{e}; pass a larger --depth")))?
        }
    };
    let mut text = String::new();
    for w in &words {
        text.push_str(&display_word(w));
        text.push('\n');
    }
    ctx.print(&text)?;
    Ok(Outcome::Pass)
}

fn cmd_from_lgs(path: &Path, ctx: &mut Ctx) -> CliResult<Outcome> {
    let doc = load(path)?;
    if !matches!(doc, Document::LambdaGraphSystem(_)) {
        return Err(input(format!(
            "{}: from-lgs expects a lambda_graph_system document, found {}",
            path.display(),
            doc.kind()
        )));
    }
    let name = name_of(&doc);
    let b = bisystem_of(&doc, path, ctx)?;
    ctx.print(&emit_document(&Document::Bisystem(BisystemDoc::from_bisystem(&b, name))))?;
    Ok(Outcome::Pass)
}

fn cmd_self_test(seed: u64, cases: usize, ctx: &mut Ctx) -> CliResult<Outcome> {
    let results = selftest::run_all(seed, cases);
    let ok = results.iter().all(selftest::SuiteResult::passed);
    if ctx.json {
        ctx.report(json!({ "schema_version": SCHEMA_VERSION, "kind": "self_test", "seed": seed, "passed": ok, "suites": results }))?;
    } else {
        for r in &results {
            ctx.println(&r.to_string())?;
        }
    }
    Ok(Outcome::from_bool(ok))
}

/// Reads `BISYS_MAX_DEPTH`; unset or unparsable means no cap.
pub fn max_depth_from_env() -> Option<usize> {
    std::env::var(MAX_DEPTH_VAR).ok().and_then(|v| v.trim().parse().ok())
}

/// Runs one command, writing results to `out` and warnings to `err`.
pub fn run(cli: &Cli, cap: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<Outcome> {
    let mut ctx = Ctx { depth: cli.depth, cap, json: cli.json, out, err };
    match &cli.command {
        Command::Validate { file } => cmd_validate(file, &mut ctx),
        Command::Canonical { file, emit } => cmd_canonical(file, *emit, &mut ctx),
        Command::Invariants { file, side } => cmd_invariants(file, (*side).into(), &mut ctx),
        Command::CheckEquivalence { m, n, witness, mode, convert } => {
            cmd_check_equivalence([m, n, witness], *mode, convert.as_deref(), &mut ctx)
        }
        Command::Bipartite { file, out_dir } => cmd_bipartite(file, out_dir.as_deref(), &mut ctx),
        Command::Transpose { file } => cmd_transpose(file, &mut ctx),
        Command::Words { file, side, n } => cmd_words(file, (*side).into(), *n, &mut ctx),
        Command::FromLgs { file } => cmd_from_lgs(file, &mut ctx),
        Command::SelfTest { cases } => cmd_self_test(cli.seed, *cases, &mut ctx),
    }
}
