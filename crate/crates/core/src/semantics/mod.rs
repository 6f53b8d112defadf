//! Class table construction, name resolution and type checking.
//!
//! [`analyze`] doubles as the compile filter for mutants: a program compiles
//! iff its diagnostics contain no error.
//!
//! Access rules checked here:
//!
//! | modifier    | visible from                                |
//! |-------------|---------------------------------------------|
//! | `private`   | the declaring class only                    |
//! | `protected` | the declaring class and its subclasses      |
//! | (none)      | everywhere (OOml has no packages)           |
//! | `public`    | everywhere                                  |
//!
//! Private members are not inherited: a subclass reading a parent's private
//! field by name is an access violation. Overload resolution only considers
//! candidates accessible from the call site.

mod check;
pub mod table;
pub mod types;

use std::collections::HashMap;
use std::fmt;

pub use check::always_returns;
pub use table::{
    pick_overload, ClassInfo, ClassTable, CtorKey, CtorSig, FieldSig, MethodKey, MethodSig,
    ResolveError,
};
pub use types::Type;

use crate::syntax::{Ast, NodeId, Pos};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn error(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            pos,
            severity: Severity::Error,
            message: message.into(),
        }
    }
}

/// Diagnostics in ascending source position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn has_errors(&self) -> bool {
        self.0.iter().any(|d| d.severity == Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.0.iter().filter(|d| d.severity == Severity::Error)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `path:line:col: severity: message`, one per line.
    pub fn render(&self, path: &str) -> String {
        self.0
            .iter()
            .map(|d| {
                format!(
                    "{path}:{}:{}: {}: {}\n",
                    d.pos.line, d.pos.col, d.severity, d.message
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldRef {
    pub class: String,
    pub name: String,
    pub is_static: bool,
}

/// What a bare identifier refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarBinding {
    Local,
    Field(FieldRef),
    /// Class name used as a static receiver.
    Class(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dispatch {
    /// By the receiver's runtime class.
    Virtual,
    Static,
    /// `super.m(...)`: the named implementation, no dynamic lookup.
    Super,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallBinding {
    pub method: MethodKey,
    pub dispatch: Dispatch,
}

/// Per-node resolution results, keyed by the analyzed tree's node ids.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    pub expr_types: HashMap<NodeId, Type>,
    pub vars: HashMap<NodeId, VarBinding>,
    pub fields: HashMap<NodeId, FieldRef>,
    pub calls: HashMap<NodeId, CallBinding>,
    pub news: HashMap<NodeId, CtorKey>,
    /// Parent constructor run by a constructor (keyed by ctor id) or by a
    /// synthesized default constructor (keyed by class id).
    pub super_ctors: HashMap<NodeId, CtorKey>,
}

impl Bindings {
    pub fn type_of(&self, id: NodeId) -> Option<&Type> {
        self.expr_types.get(&id)
    }
}

/// Builds the class table and checks every body. Never fails: problems are
/// reported as diagnostics.
pub fn analyze(ast: &Ast) -> (ClassTable, Diagnostics) {
    let mut diags = Vec::new();
    let mut table = table::build(ast, &mut diags);
    check::Checker::new(&mut table, &mut diags).check_program(ast);
    diags.sort_by_key(|d| d.pos);
    (table, Diagnostics(diags))
}

/// Mutant admission predicate.
pub fn compiles(ast: &Ast) -> bool {
    !analyze(ast).1.has_errors()
}

/// Overload resolution against the methods callable on `class`.
pub fn resolve_overload<'t>(
    table: &'t ClassTable,
    class: &str,
    name: &str,
    args: &[Type],
) -> Result<&'t MethodSig, ResolveError> {
    table.resolve_overload(class, name, args)
}
