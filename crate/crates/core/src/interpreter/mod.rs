//! Deterministic tree-walking execution of an analyzed program.
//!
//! Field reads resolve by the receiver's static type (the binding recorded
//! by the checker); instance methods dispatch on the receiver's runtime
//! class; static methods, private methods and `super.m()` calls are bound
//! statically. Every statement and expression evaluation costs one step.

mod eval;
pub mod fixtures;

use std::fmt;
use std::rc::Rc;

use crate::semantics::ClassTable;
use crate::syntax::{Ast, Expr, ExprKind, Pos, UnaryOp};

pub use fixtures::{check_dispatch_semantics, check_fixture, DispatchReport, Fixture, Mismatch};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;
/// Nested method/constructor invocations allowed before `StackOverflow`.
pub const MAX_CALL_DEPTH: usize = 1000;
const WORKER_STACK: usize = 64 * 1024 * 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Str(Rc<str>),
    Null,
    Obj(usize),
}

impl Value {
    pub fn str(s: &str) -> Value {
        Value::Str(Rc::from(s))
    }
}

/// A literal as accepted in entry argument lists: integers (optionally
/// negated), booleans, strings and `null`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Int(i64),
    Bool(bool),
    Str(String),
    Null,
}

impl Literal {
    pub fn from_expr(e: &Expr) -> Option<Literal> {
        Some(match &e.kind {
            ExprKind::Int(n) => Literal::Int(*n),
            ExprKind::Bool(b) => Literal::Bool(*b),
            ExprKind::Str(s) => Literal::Str(s.clone()),
            ExprKind::Null => Literal::Null,
            ExprKind::Unary {
                op: UnaryOp::Neg,
                operand,
            } => match operand.kind {
                ExprKind::Int(n) => Literal::Int(n.wrapping_neg()),
                _ => return None,
            },
            _ => return None,
        })
    }

    fn value(&self) -> Value {
        match self {
            Literal::Int(n) => Value::Int(*n),
            Literal::Bool(b) => Value::Bool(*b),
            Literal::Str(s) => Value::str(s),
            Literal::Null => Value::Null,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(n) => write!(f, "{n}"),
            Literal::Bool(b) => write!(f, "{b}"),
            Literal::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '\n' => f.write_str("\\n")?,
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
            Literal::Null => f.write_str("null"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecRequest {
    pub entry_class: String,
    pub entry_method: String,
    pub args: Vec<Literal>,
    pub step_budget: u64,
}

impl ExecRequest {
    pub fn new(entry_class: &str, entry_method: &str, args: Vec<Literal>) -> Self {
        ExecRequest {
            entry_class: entry_class.to_string(),
            entry_method: entry_method.to_string(),
            args,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.step_budget = budget;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuntimeErrorKind {
    NullAccess,
    DivisionByZero,
    EqualsOnNull,
    CloneOfNull,
    StackOverflow,
    /// The entry invocation does not resolve to a unique static method.
    EntryNotFound,
}

impl fmt::Display for RuntimeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuntimeErrorKind::NullAccess => "null member access",
            RuntimeErrorKind::DivisionByZero => "division by zero",
            RuntimeErrorKind::EqualsOnNull => "equals on null",
            RuntimeErrorKind::CloneOfNull => "clone of null",
            RuntimeErrorKind::StackOverflow => "stack overflow",
            RuntimeErrorKind::EntryNotFound => "entry method not found",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExecStatus {
    Completed,
    RuntimeError { kind: RuntimeErrorKind, pos: Pos },
    BudgetExhausted,
}

impl fmt::Display for ExecStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecStatus::Completed => f.write_str("completed"),
            ExecStatus::RuntimeError { kind, pos } => write!(f, "runtime error: {kind} at {pos}"),
            ExecStatus::BudgetExhausted => f.write_str("step budget exhausted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecResult {
    pub status: ExecStatus,
    pub output: Vec<String>,
    pub steps_used: u64,
}

/// Runs `req` against a program that compiles. The run happens on a worker
/// thread with a large stack so deep OOml recursion reaches the depth limit
/// instead of overflowing the host stack.
pub fn execute(ast: &Ast, table: &ClassTable, req: &ExecRequest) -> ExecResult {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(WORKER_STACK)
            .spawn_scoped(s, || eval::run(ast, table, req))
            .expect("spawn interpreter thread")
            .join()
            .expect("interpreter thread panicked")
    })
}
