//! OOml surface language: lexing, parsing, canonical printing.
//!
//! OOml is a minimal single-inheritance, Java-like language. It has exactly
//! the features the mutation operators need a syntactic home for: four access
//! levels, `static`, field initializers, explicit `super(...)` constructor
//! calls, `this.` field prefixes, overloading, builtin `clone(e)` (shallow
//! copy) and `a.equals(b)` (shallow field-wise comparison) next to reference
//! `==`.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod visit;

use thiserror::Error;

pub use ast::*;
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_invocation, Invocation};
pub use printer::{pretty_print, print_args, print_expr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{pos}: {message}")]
    Lex { pos: Pos, message: String },
    #[error("{pos}: expected {expected}, found {found}")]
    Parse {
        pos: Pos,
        expected: String,
        found: String,
    },
    #[error("source is empty")]
    Empty,
}

impl SyntaxError {
    pub fn pos(&self) -> Option<Pos> {
        match self {
            SyntaxError::Lex { pos, .. } | SyntaxError::Parse { pos, .. } => Some(*pos),
            SyntaxError::Empty => None,
        }
    }
}

/// Tokenizes and parses a source unit.
pub fn parse_source(source: &SourceUnit) -> Result<Ast, SyntaxError> {
    if source.text.trim().is_empty() {
        return Err(SyntaxError::Empty);
    }
    parse(&tokenize(&source.text)?)
}

/// Convenience for tests and tools: parse text under a placeholder path.
pub fn parse_str(text: &str) -> Result<Ast, SyntaxError> {
    parse_source(&SourceUnit::new("<input>", text))
}

pub fn parse_invocation_str(text: &str) -> Result<Invocation, SyntaxError> {
    parse_invocation(&tokenize(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_class() {
        let ast = parse_str("class A { }").unwrap();
        assert_eq!(ast.classes.len(), 1);
        assert!(ast.classes[0].members.is_empty());
        assert_eq!(pretty_print(&ast), "class A {\n}\n");
    }

    #[test]
    fn field_initializer() {
        let ast = parse_str("class A { int x = 0; }").unwrap();
        let field = ast.classes[0].fields().next().unwrap();
        assert_eq!(field.name, "x");
        assert_eq!(field.init.as_ref().unwrap().kind, ExprKind::Int(0));
    }

    #[test]
    fn leading_super_call_is_ctor_form() {
        let ast = parse_str("class A extends B { A() { super(); } }").unwrap();
        let ctor = ast.classes[0].ctors().next().unwrap();
        assert_eq!(ctor.super_call, Some(vec![]));
        assert!(ctor.body.stmts.is_empty());
        assert_eq!(ast.classes[0].super_name.as_deref(), Some("B"));
    }

    #[test]
    fn super_call_after_first_statement_is_rejected() {
        let err = parse_str("class A extends B { A() { print(1); super(); } }").unwrap_err();
        assert!(matches!(err, SyntaxError::Parse { .. }));
    }

    #[test]
    fn content_assignment_is_distinguished() {
        let ast = parse_str("class A { void m(A a, A b) { a = b; a = clone(b); } }").unwrap();
        let m = ast.classes[0].methods().next().unwrap();
        let modes: Vec<_> = m
            .body
            .stmts
            .iter()
            .map(|s| match &s.kind {
                StmtKind::Assign { mode, value, .. } => (*mode, value.kind.clone()),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(
            modes,
            vec![
                (AssignMode::Reference, ExprKind::Var("b".into())),
                (AssignMode::Content, ExprKind::Var("b".into())),
            ]
        );
    }

    #[test]
    fn precedence_and_parens_round_trip() {
        let text = "class A { int m(int a, int b) { return (a + b) * -(a - b) - (a - (b - 1)); } }";
        let ast = parse_str(text).unwrap();
        let printed = pretty_print(&ast);
        assert!(printed.contains("return (a + b) * -(a - b) - (a - (b - 1));"));
        assert!(parse_str(&printed).unwrap().structurally_eq(&ast));
    }

    #[test]
    fn node_ids_are_preorder_and_deterministic() {
        let text = "class A { int x = 1 + 2; void m() { print(this.x); } }";
        let a = parse_str(text).unwrap();
        let b = parse_str(text).unwrap();
        assert_eq!(a, b);
        let mut ids = Vec::new();
        visit::walk(&a, &mut |n| ids.push(n.id().0));
        assert_eq!(ids, (0..a.node_count).collect::<Vec<_>>());
    }

    #[test]
    fn equals_and_chained_calls() {
        let ast = parse_str("class A { bool m(A o) { return this.id().equals(o.next().x); } }")
            .unwrap();
        let printed = pretty_print(&ast);
        assert!(printed.contains("return this.id().equals(o.next().x);"));
    }

    #[test]
    fn bare_call_is_not_in_the_grammar() {
        assert!(parse_str("class A { void m() { m(); } }").is_err());
    }

    #[test]
    fn invocation() {
        let inv = parse_invocation_str("Main.run(1, -2, \"s\", true, null)").unwrap();
        assert_eq!((inv.class.as_str(), inv.method.as_str()), ("Main", "run"));
        assert_eq!(inv.args.len(), 5);
        assert!(parse_invocation_str("Main.run(1) x").is_err());
        assert!(parse_invocation_str("run()").is_err());
    }

    #[test]
    fn empty_source() {
        assert_eq!(parse_str("  \n"), Err(SyntaxError::Empty));
    }
}
