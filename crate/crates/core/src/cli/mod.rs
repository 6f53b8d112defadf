//! `oomut` command line: `check`, `mutate`, `run`, `operators`.
//!
//! Exit codes: 0 success, 1 compile or baseline failure, 2 usage or input
//! error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    fault_coverage, mutation_score, parse_suite, report, run_suite, survivors, EquivalenceLedger,
    FaultMap, RunOptions,
};
use crate::interpreter::DEFAULT_STEP_BUDGET;
use crate::mutation::{
    apply_patch, enumerate_mutants, manifest, parse_operator_list, MutantSet, OperatorId,
};
use crate::semantics::{analyze, ClassTable};
use crate::syntax::{parse_source, pretty_print, Ast, SourceUnit, SyntaxError};

#[derive(Debug, Parser)]
#[command(name = "oomut", version, about = "Mutation testing for OOml programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and type-check source files.
    Check { files: Vec<PathBuf> },
    /// Generate mutants and write their manifest.
    Mutate(MutateArgs),
    /// Generate mutants, run the suite against each and report scores.
    Run(RunArgs),
    /// List the mutation operators.
    Operators,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    pub source: PathBuf,
    /// Comma-separated operator names (default: all).
    #[arg(long)]
    pub ops: Option<String>,
    #[arg(long, default_value = "oomut-out")]
    pub out: PathBuf,
    /// Also write each mutant program under `<out>/mutants/`.
    #[arg(long)]
    pub emit_sources: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub source: PathBuf,
    #[arg(long)]
    pub tests: PathBuf,
    #[arg(long)]
    pub ops: Option<String>,
    #[arg(long, default_value = "oomut-out")]
    pub out: PathBuf,
    /// Mutant ids marked equivalent, one per line.
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub no_early_stop: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub emit_sources: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Machine,
}

enum Failure {
    /// Exit 1.
    Analysis(String),
    /// Exit 2.
    Input(String),
}

type Outcome = Result<(), Failure>;

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Err(msg) = FaultMap.check_totality() {
        let _ = writeln!(err, "error: {msg}");
        return 1;
    }
    let result = match cli.command {
        Command::Check { files } => check(&files, err),
        Command::Mutate(a) => mutate(&a, out),
        Command::Run(a) => run_cmd(&a, out),
        Command::Operators => operators(out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Analysis(msg)) => {
            let _ = err.write_all(msg.as_bytes());
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => Failure::Input(format!("no such file: {}", path.display())),
        _ => Failure::Input(format!("{}: {e}", path.display())),
    })
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn syntax_diagnostic(path: &str, e: &SyntaxError) -> String {
    match e {
        SyntaxError::Lex { pos, message } => format!("{path}:{pos}: error: {message}\n"),
        SyntaxError::Parse {
            pos,
            expected,
            found,
        } => format!("{path}:{pos}: error: expected {expected}, found {found}\n"),
        SyntaxError::Empty => format!("{path}: error: source is empty\n"),
    }
}

/// Parses and analyzes one file; any diagnostic is rendered into the error.
fn load(path: &Path) -> Result<(Ast, ClassTable), Failure> {
    let text = read(path)?;
    let name = path.display().to_string();
    let ast = parse_source(&SourceUnit::new(&name, text))
        .map_err(|e| Failure::Analysis(syntax_diagnostic(&name, &e)))?;
    let (table, diags) = analyze(&ast);
    if diags.has_errors() {
        return Err(Failure::Analysis(diags.render(&name)));
    }
    Ok((ast, table))
}

fn check(files: &[PathBuf], err: &mut dyn Write) -> Outcome {
    if files.is_empty() {
        return Err(Failure::Input("no source files given".into()));
    }
    let mut failed = false;
    for f in files {
        match load(f) {
            Ok(_) => {}
            Err(Failure::Analysis(d)) => {
                let _ = err.write_all(d.as_bytes());
                failed = true;
            }
            Err(e) => return Err(e),
        }
    }
    if failed {
        Err(Failure::Analysis(String::new()))
    } else {
        Ok(())
    }
}

fn selected_ops(ops: &Option<String>) -> Result<Vec<OperatorId>, Failure> {
    match ops {
        None => Ok(OperatorId::ALL.to_vec()),
        Some(csv) => parse_operator_list(csv).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn create_dir(dir: &Path) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))
}

fn write_outputs(set: &MutantSet, source: &Path, out: &Path, emit_sources: bool) -> Outcome {
    create_dir(out)?;
    write(&out.join("manifest.tsv"), &manifest(set, &source.display().to_string()))?;
    if emit_sources {
        let dir = out.join("mutants");
        create_dir(&dir)?;
        for m in &set.mutants {
            let ast = apply_patch(&set.original, m).expect("mutant applies to its original");
            write(&dir.join(format!("{}.ooml", m.id)), &pretty_print(&ast))?;
        }
    }
    Ok(())
}

fn mutate(a: &MutateArgs, out: &mut dyn Write) -> Outcome {
    let ops = selected_ops(&a.ops)?;
    let (ast, table) = load(&a.source)?;
    let set = enumerate_mutants(&ast, &table, &ops);
    write_outputs(&set, &a.source, &a.out, a.emit_sources)?;
    let mut text = format!("{:<8}  {:>7}  {:>9}\n", "Operator", "Mutants", "Stillborn");
    for &op in &set.operators {
        text.push_str(&format!(
            "{:<8}  {:>7}  {:>9}\n",
            op.code(),
            set.emitted(op),
            set.stillborn_count(op)
        ));
    }
    text.push_str(&format!(
        "{:<8}  {:>7}  {:>9}\n",
        "Total",
        set.mutants.len(),
        set.stillborn.len()
    ));
    let _ = out.write_all(text.as_bytes());
    Ok(())
}

fn run_cmd(a: &RunArgs, out: &mut dyn Write) -> Outcome {
    let ops = selected_ops(&a.ops)?;
    let suite_text = read(&a.tests)?;
    let tests = parse_suite(&suite_text)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.tests.display())))?;
    if tests.is_empty() {
        return Err(Failure::Input("suite is empty".into()));
    }
    let ledger = match &a.ledger {
        Some(p) => EquivalenceLedger::parse(&read(p)?),
        None => EquivalenceLedger::default(),
    };
    let (ast, table) = load(&a.source)?;
    let set = enumerate_mutants(&ast, &table, &ops);
    let opts = RunOptions {
        early_stop: !a.no_early_stop,
        step_budget: a.budget,
    };
    let matrix = run_suite(&set, &table, &tests, &ledger, opts)
        .map_err(|e| Failure::Analysis(format!("error: {e}\n")))?;
    let scores = mutation_score(&matrix, &set);
    let faults = fault_coverage(&matrix, &FaultMap);
    let surv = survivors(&matrix, &set);
    let (summary, name) = match a.format {
        Format::Table => (report::summary_table(&scores, &faults), "summary.txt"),
        Format::Csv => (report::summary_csv(&scores, &faults), "summary.csv"),
        Format::Machine => (report::summary_machine(&scores, &faults, &surv), "summary.json"),
    };
    write_outputs(&set, &a.source, &a.out, a.emit_sources)?;
    write(&a.out.join("matrix.csv"), &report::matrix_csv(&matrix))?;
    write(&a.out.join("survivors.txt"), &report::survivors_text(&surv))?;
    write(&a.out.join(name), &summary)?;
    let _ = out.write_all(summary.as_bytes());
    Ok(())
}

/// One line per operator: code, group, catalog name and covered faults.
pub fn operator_lines() -> Vec<String> {
    OperatorId::ALL
        .iter()
        .map(|&op| {
            let faults = FaultMap.faults_of(op);
            let mut line = format!("{}  {}  {}", op.code(), op.group().name(), op.description());
            if !faults.is_empty() {
                let labels: Vec<_> = faults.iter().map(|f| f.label()).collect();
                line.push_str(&format!("  → {}", labels.join(", ")));
            }
            line
        })
        .collect()
}

fn operators(out: &mut dyn Write) -> Outcome {
    for line in operator_lines() {
        let _ = writeln!(out, "{line}");
    }
    Ok(())
}
