use std::fmt::Write;

use super::ast::*;

const INDENT: &str = "    ";

/// Renders an [`Ast`] in canonical form: four-space indentation, one member or
/// statement per line, a blank line between classes, and the minimum
/// parentheses needed to reparse the same tree.
pub fn pretty_print(ast: &Ast) -> String {
    let mut out = String::new();
    for (i, class) in ast.classes.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        class_decl(&mut out, class);
    }
    out
}

fn class_decl(out: &mut String, class: &ClassDecl) {
    write!(out, "class {}", class.name).unwrap();
    if let Some(sup) = &class.super_name {
        write!(out, " extends {sup}").unwrap();
    }
    out.push_str(" {\n");
    for member in &class.members {
        match member {
            Member::Field(f) => {
                out.push_str(INDENT);
                modifiers(out, f.access, f.is_static);
                write!(out, "{} {}", f.ty, f.name).unwrap();
                if let Some(init) = &f.init {
                    write!(out, " = {}", print_expr(init)).unwrap();
                }
                out.push_str(";\n");
            }
            Member::Method(m) => {
                out.push_str(INDENT);
                modifiers(out, m.access, m.is_static);
                match &m.ret {
                    Some(t) => write!(out, "{t} ").unwrap(),
                    None => out.push_str("void "),
                }
                write!(out, "{}({}) ", m.name, params(&m.params)).unwrap();
                block(out, &m.body, 1, &[]);
                out.push('\n');
            }
            Member::Ctor(c) => {
                out.push_str(INDENT);
                modifiers(out, c.access, false);
                write!(out, "{}({}) ", c.name, params(&c.params)).unwrap();
                let lead = c
                    .super_call
                    .as_ref()
                    .map(|args| format!("super({});", print_args(args)));
                block(out, &c.body, 1, lead.as_slice());
                out.push('\n');
            }
        }
    }
    out.push_str("}\n");
}

fn modifiers(out: &mut String, access: Access, is_static: bool) {
    if let Some(kw) = access.keyword() {
        out.push_str(kw);
        out.push(' ');
    }
    if is_static {
        out.push_str("static ");
    }
}

fn params(params: &[Param]) -> String {
    params
        .iter()
        .map(|p| format!("{} {}", p.ty, p.name))
        .collect::<Vec<_>>()
        .join(", ")
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
}

/// Writes `{ ... }` where the opening brace continues the current line and the
/// closing brace is indented to `depth`, without a trailing newline.
fn block(out: &mut String, b: &Block, depth: usize, leading: &[String]) {
    out.push_str("{\n");
    for line in leading {
        indent(out, depth + 1);
        out.push_str(line);
        out.push('\n');
    }
    for s in &b.stmts {
        stmt(out, s, depth + 1);
    }
    indent(out, depth);
    out.push('}');
}

fn stmt(out: &mut String, s: &Stmt, depth: usize) {
    indent(out, depth);
    match &s.kind {
        StmtKind::VarDecl { ty, name, init } => {
            write!(out, "{ty} {name}").unwrap();
            if let Some(e) = init {
                write!(out, " = {}", print_expr(e)).unwrap();
            }
            out.push(';');
        }
        StmtKind::Assign {
            target,
            value,
            mode,
        } => match mode {
            AssignMode::Reference => {
                write!(out, "{} = {};", print_expr(target), print_expr(value)).unwrap()
            }
            AssignMode::Content => write!(
                out,
                "{} = clone({});",
                print_expr(target),
                print_expr(value)
            )
            .unwrap(),
        },
        StmtKind::If {
            cond,
            then_block,
            else_block,
        } => {
            write!(out, "if ({}) ", print_expr(cond)).unwrap();
            block(out, then_block, depth, &[]);
            if let Some(b) = else_block {
                out.push_str(" else ");
                block(out, b, depth, &[]);
            }
        }
        StmtKind::While { cond, body } => {
            write!(out, "while ({}) ", print_expr(cond)).unwrap();
            block(out, body, depth, &[]);
        }
        StmtKind::Return(None) => out.push_str("return;"),
        StmtKind::Return(Some(e)) => write!(out, "return {};", print_expr(e)).unwrap(),
        StmtKind::Expr(e) => write!(out, "{};", print_expr(e)).unwrap(),
        StmtKind::Print(e) => write!(out, "print({});", print_expr(e)).unwrap(),
        StmtKind::Block(b) => block(out, b, depth, &[]),
    }
    out.push('\n');
}

pub fn print_args(args: &[Expr]) -> String {
    args.iter().map(print_expr).collect::<Vec<_>>().join(", ")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '\n' => out.push_str("\\n"),
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

// Unary and postfix forms bind tighter than any binary operator.
const UNARY_PREC: u8 = 7;
const POSTFIX_PREC: u8 = 8;

fn expr_prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Binary { op, .. } => op.precedence(),
        ExprKind::Unary { .. } => UNARY_PREC,
        _ => POSTFIX_PREC,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = print_expr(e);
    if expr_prec(e) < min {
        format!("({s})")
    } else {
        s
    }
}

/// Renders one expression in canonical form.
pub fn print_expr(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Int(v) => v.to_string(),
        ExprKind::Bool(b) => b.to_string(),
        ExprKind::Str(s) => escape(s),
        ExprKind::Null => "null".into(),
        ExprKind::Var(n) => n.clone(),
        ExprKind::This => "this".into(),
        ExprKind::Field { receiver, name } => format!("{}.{name}", wrap(receiver, POSTFIX_PREC)),
        ExprKind::Call {
            receiver,
            name,
            args,
        } => format!(
            "{}.{name}({})",
            wrap(receiver, POSTFIX_PREC),
            print_args(args)
        ),
        ExprKind::SuperCall { name, args } => format!("super.{name}({})", print_args(args)),
        ExprKind::New { class, args } => format!("new {class}({})", print_args(args)),
        ExprKind::Binary { op, lhs, rhs } => {
            let p = op.precedence();
            format!("{} {} {}", wrap(lhs, p), op.symbol(), wrap(rhs, p + 1))
        }
        ExprKind::Unary { op, operand } => {
            let inner = wrap(operand, UNARY_PREC);
            // `- -1` must not print as `--1`; keep a space between stacked signs
            if *op == UnaryOp::Neg && inner.starts_with('-') {
                format!("- {inner}")
            } else {
                format!("{}{inner}", op.symbol())
            }
        }
        ExprKind::Clone(inner) => format!("clone({})", print_expr(inner)),
        ExprKind::Equals { lhs, rhs } => {
            format!("{}.equals({})", wrap(lhs, POSTFIX_PREC), print_expr(rhs))
        }
    }
}
