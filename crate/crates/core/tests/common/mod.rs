#![allow(dead_code)]

pub mod oracle;

use std::fs;
use std::path::{Path, PathBuf};

use oomut::analysis::{parse_suite, EquivalenceLedger, TestCase};
use oomut::mutation::{enumerate_mutants, MutantSet, OperatorId};
use oomut::semantics::{analyze, ClassTable};
use oomut::syntax::parse_str;

pub struct Program {
    pub name: String,
    pub text: String,
    pub tests: Vec<TestCase>,
    /// Hand-evaluated output per test, from `# expect` comments.
    pub expected: Vec<Vec<String>>,
    pub ledger: EquivalenceLedger,
}

impl Program {
    pub fn analyzed(&self) -> (oomut::syntax::Ast, ClassTable) {
        let ast = parse_str(&self.text).unwrap();
        let (table, d) = analyze(&ast);
        assert!(!d.has_errors(), "{}: {}", self.name, d.render(&self.name));
        (ast, table)
    }

    pub fn mutants(&self, ops: &[OperatorId]) -> (MutantSet, ClassTable) {
        let (ast, table) = self.analyzed();
        (enumerate_mutants(&ast, &table, ops), table)
    }
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus")
}

fn expectations(suite: &str) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut pending = None;
    for line in suite.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("# expect") {
            pending = Some(rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
        } else if line.starts_with("test ") {
            out.push(pending.take().unwrap_or_default());
        }
    }
    out
}

pub fn corpus() -> Vec<Program> {
    let dir = corpus_dir();
    let mut names: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "ooml").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let text = fs::read_to_string(dir.join(format!("{name}.ooml"))).unwrap();
            let suite = fs::read_to_string(dir.join(format!("{name}.tests"))).unwrap_or_default();
            let ledger = fs::read_to_string(dir.join(format!("{name}.equiv"))).unwrap_or_default();
            Program {
                tests: parse_suite(&suite).unwrap(),
                expected: expectations(&suite),
                ledger: EquivalenceLedger::parse(&ledger),
                name,
                text,
            }
        })
        .collect()
}

pub fn program(name: &str) -> Program {
    corpus().into_iter().find(|p| p.name == name).unwrap()
}
