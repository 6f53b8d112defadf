//! Semantics fixtures: OOml programs whose header comments state an entry
//! invocation and the exact expected output.
//!
//! ```text
//! // entry: Main.main()
//! // expect: 25
//! // expect: 1
//! ```

use std::fmt;
use std::io;
use std::path::Path;

use super::{execute, ExecRequest, ExecStatus, Literal};
use crate::semantics::analyze;
use crate::syntax::{parse_invocation_str, parse_str};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub text: String,
}

impl Fixture {
    /// All `.ooml` files in `dir`, sorted by file name.
    pub fn load_dir(dir: &Path) -> io::Result<Vec<Fixture>> {
        let mut out = Vec::new();
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "ooml") {
                out.push(Fixture {
                    name: path.file_name().unwrap().to_string_lossy().into_owned(),
                    text: std::fs::read_to_string(&path)?,
                });
            }
        }
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(out)
    }

    pub fn entry(&self) -> Option<&str> {
        self.header("entry").next()
    }

    pub fn expected(&self) -> Vec<String> {
        self.header("expect").map(str::to_string).collect()
    }

    fn header<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.text.lines().filter_map(move |l| {
            let rest = l.trim().strip_prefix("//")?.trim_start();
            let rest = rest.strip_prefix(key)?.strip_prefix(':')?;
            Some(rest.strip_prefix(' ').unwrap_or(rest).trim_end())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub fixture: String,
    pub message: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.fixture, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DispatchReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DispatchReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for DispatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} fixtures checked, {} mismatches",
            self.checked,
            self.mismatches.len()
        )?;
        for m in &self.mismatches {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}

/// Runs one fixture and compares its output with the header expectation.
pub fn check_fixture(fx: &Fixture) -> Result<(), Mismatch> {
    let fail = |message: String| Mismatch {
        fixture: fx.name.clone(),
        message,
    };
    let ast = parse_str(&fx.text).map_err(|e| fail(format!("parse error: {e}")))?;
    let (table, diags) = analyze(&ast);
    if diags.has_errors() {
        return Err(fail(format!("does not compile:\n{}", diags.render(&fx.name))));
    }
    let entry = fx.entry().ok_or_else(|| fail("missing `// entry:` header".into()))?;
    let inv = parse_invocation_str(entry).map_err(|e| fail(format!("bad entry: {e}")))?;
    let args = inv
        .args
        .iter()
        .map(Literal::from_expr)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| fail("entry arguments must be literals".into()))?;
    let result = execute(&ast, &table, &ExecRequest::new(&inv.class, &inv.method, args));
    if result.status != ExecStatus::Completed {
        return Err(fail(format!("{}", result.status)));
    }
    let expected = fx.expected();
    if result.output != expected {
        return Err(fail(format!(
            "expected {:?}, got {:?}",
            expected, result.output
        )));
    }
    Ok(())
}

pub fn check_dispatch_semantics(fixtures: &[Fixture]) -> DispatchReport {
    DispatchReport {
        checked: fixtures.len(),
        mismatches: fixtures.iter().filter_map(|f| check_fixture(f).err()).collect(),
    }
}
