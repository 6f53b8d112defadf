//! Test suite (`.tests`) and equivalence ledger (`.equiv`) files.
//!
//! ```text
//! # comment
//! test speaks Main.speak()
//! test sum Calc.show(1, -2, 3) budget 5000
//! ```

use std::collections::BTreeSet;

use thiserror::Error;

use crate::interpreter::{ExecRequest, Literal};
use crate::syntax::{parse_invocation, tokenize, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCase {
    pub name: String,
    pub entry_class: String,
    pub entry_method: String,
    pub args: Vec<Literal>,
    pub step_budget: Option<u64>,
}

impl TestCase {
    pub fn request(&self, default_budget: u64) -> ExecRequest {
        ExecRequest::new(&self.entry_class, &self.entry_method, self.args.clone())
            .with_budget(self.step_budget.unwrap_or(default_budget))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SuiteParseError {
    pub line: usize,
    pub message: String,
}

fn content(line: &str) -> Option<&str> {
    let t = line.trim();
    (!t.is_empty() && !t.starts_with('#')).then_some(t)
}

pub fn parse_suite(text: &str) -> Result<Vec<TestCase>, SuiteParseError> {
    let mut tests: Vec<TestCase> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let Some(line) = content(raw) else { continue };
        let err = |message: String| SuiteParseError {
            line: i + 1,
            message,
        };
        let t = parse_test_line(line).map_err(err)?;
        if tests.iter().any(|o| o.name == t.name) {
            return Err(err(format!("duplicate test name `{}`", t.name)));
        }
        tests.push(t);
    }
    Ok(tests)
}

fn parse_test_line(line: &str) -> Result<TestCase, String> {
    let rest = line
        .strip_prefix("test")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or("expected `test <name> <Class>.<method>(<args>)`")?
        .trim_start();
    let (name, call) = rest
        .split_once(char::is_whitespace)
        .ok_or("missing invocation after test name")?;
    let mut tokens = tokenize(call.trim()).map_err(|e| e.to_string())?;
    let mut budget = None;
    let n = tokens.len();
    if n >= 3 {
        if let (TokenKind::Ident(kw), TokenKind::Int(b)) = (&tokens[n - 3].kind, &tokens[n - 2].kind) {
            if kw == "budget" {
                if *b <= 0 {
                    return Err("budget must be positive".into());
                }
                budget = Some(*b as u64);
                tokens.drain(n - 3..n - 1);
            }
        }
    }
    let inv = parse_invocation(&tokens).map_err(|e| e.to_string())?;
    let args = inv
        .args
        .iter()
        .map(|a| Literal::from_expr(a).ok_or_else(|| "arguments must be literals".to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TestCase {
        name: name.to_string(),
        entry_class: inv.class,
        entry_method: inv.method,
        args,
        step_budget: budget,
    })
}

/// Mutant ids a human has declared equivalent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivalenceLedger {
    pub ids: BTreeSet<String>,
}

impl EquivalenceLedger {
    pub fn parse(text: &str) -> Self {
        EquivalenceLedger {
            ids: text.lines().filter_map(content).map(str::to_string).collect(),
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.ids.contains(id)
    }

    pub fn mark(&mut self, id: &str) {
        self.ids.insert(id.to_string());
    }
}
