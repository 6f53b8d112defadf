//! Type checking of field initializers, method and constructor bodies.

use super::table::{join_types, ClassTable, MethodSig, ResolveError};
use super::types::Type;
use super::{CallBinding, Diagnostic, Dispatch, FieldRef, VarBinding};
use crate::syntax::*;

#[derive(Clone)]
enum Ret {
    /// Value-returning (`Some`) or void (`None`) method.
    Method(Option<TypeRef>),
    Ctor,
    /// Field initializer; no statements occur here.
    Init,
}

enum Recv {
    Static(String),
    Value(Type),
}

pub(super) struct Checker<'a> {
    pub table: &'a mut ClassTable,
    pub diags: &'a mut Vec<Diagnostic>,
    class: String,
    is_static: bool,
    ret: Ret,
    scopes: Vec<Vec<(String, Type)>>,
}

impl<'a> Checker<'a> {
    pub fn new(table: &'a mut ClassTable, diags: &'a mut Vec<Diagnostic>) -> Self {
        Checker {
            table,
            diags,
            class: String::new(),
            is_static: false,
            ret: Ret::Init,
            scopes: Vec::new(),
        }
    }

    fn error(&mut self, pos: Pos, message: impl Into<String>) {
        self.diags.push(Diagnostic::error(pos, message));
    }

    fn enter(&mut self, class: &str, is_static: bool, ret: Ret) {
        self.class = class.to_string();
        self.is_static = is_static;
        self.ret = ret;
        self.scopes = vec![Vec::new()];
    }

    pub fn check_program(&mut self, ast: &Ast) {
        for class in &ast.classes {
            // duplicates were dropped from the table; skip their bodies
            if self.table.get(&class.name).map(|c| c.node) != Some(class.id) {
                continue;
            }
            for member in &class.members {
                match member {
                    Member::Field(f) => self.field(class, f),
                    Member::Method(m) => self.method(class, m),
                    Member::Ctor(c) => self.ctor(class, c),
                }
            }
            if class.ctors().next().is_none() {
                self.implicit_super(class, class.pos, class.id);
            }
        }
    }

    fn field(&mut self, class: &ClassDecl, f: &FieldDecl) {
        let Some(init) = &f.init else { return };
        self.enter(&class.name, f.is_static, Ret::Init);
        if let Some(t) = self.value(init) {
            let want = Type::from(&f.ty);
            if !self.table.assignable(&t, &want) {
                self.error(
                    init.pos,
                    format!("cannot initialize field `{}` of type {want} with {t}", f.name),
                );
            }
        }
    }

    fn declare_params(&mut self, params: &[Param]) {
        for p in params {
            if self.lookup_local(&p.name).is_none() {
                self.scopes[0].push((p.name.clone(), Type::from(&p.ty)));
            }
        }
    }

    fn method(&mut self, class: &ClassDecl, m: &MethodDecl) {
        self.enter(&class.name, m.is_static, Ret::Method(m.ret.clone()));
        self.declare_params(&m.params);
        self.block(&m.body);
        if m.ret.is_some() && !always_returns(&m.body) {
            self.error(
                m.pos,
                format!("method `{}` is missing a return on some path", m.name),
            );
        }
    }

    fn ctor(&mut self, class: &ClassDecl, c: &CtorDecl) {
        self.enter(&class.name, false, Ret::Ctor);
        self.declare_params(&c.params);
        match &c.super_call {
            Some(args) => {
                let parent = self.table.parent(&class.name).map(str::to_string);
                // arguments are evaluated before the parent object exists
                self.is_static = true;
                let arg_types = self.args(args);
                self.is_static = false;
                match parent {
                    None => self.error(
                        c.pos,
                        format!("super call in class `{}` without a parent", class.name),
                    ),
                    Some(parent) => {
                        if let Some(arg_types) = arg_types {
                            if let Some(key) = self.resolve_ctor(&parent, &arg_types, c.pos) {
                                self.table.bindings.super_ctors.insert(c.id, key);
                            }
                        }
                    }
                }
            }
            None => self.implicit_super(class, c.pos, c.id),
        }
        self.block(&c.body);
    }

    /// A constructor without `super(...)` calls the parent's zero-arg one.
    fn implicit_super(&mut self, class: &ClassDecl, pos: Pos, at: NodeId) {
        let Some(parent) = self.table.parent(&class.name).map(str::to_string) else {
            return;
        };
        self.class = class.name.clone();
        if let Some(key) = self.resolve_ctor(&parent, &[], pos) {
            self.table.bindings.super_ctors.insert(at, key);
        }
    }

    fn resolve_ctor(
        &mut self,
        class: &str,
        args: &[Type],
        pos: Pos,
    ) -> Option<super::table::CtorKey> {
        let from = self.class.clone();
        let all: Vec<_> = match self.table.get(class) {
            Some(info) => info.ctors.iter().collect(),
            None => return None,
        };
        let visible: Vec<_> = all
            .iter()
            .copied()
            .filter(|c| self.table.accessible(class, c.access, &from))
            .collect();
        match super::table::pick_overload(self.table, &visible, |c| &c.key.params, args) {
            Ok(c) => Some(c.key.clone()),
            Err(e) => {
                let hidden =
                    super::table::pick_overload(self.table, &all, |c| &c.key.params, args).is_ok();
                let msg = if hidden {
                    format!("constructor `{class}({})` is not accessible", join_types_of(args))
                } else {
                    match e {
                        ResolveError::NotFound => {
                            format!("no constructor `{class}({})`", join_types_of(args))
                        }
                        ResolveError::Ambiguous(_) => format!(
                            "ambiguous constructor call `{class}({})`",
                            join_types_of(args)
                        ),
                    }
                };
                self.error(pos, msg);
                None
            }
        }
    }

    fn lookup_local(&self, name: &str) -> Option<&Type> {
        self.scopes
            .iter()
            .rev()
            .find_map(|s| s.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t))
    }

    fn block(&mut self, b: &Block) {
        self.scopes.push(Vec::new());
        for s in &b.stmts {
            self.stmt(s);
        }
        self.scopes.pop();
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::VarDecl { ty, name, init } => {
                if !self.table.type_exists(ty) {
                    self.error(s.pos, format!("unknown type `{ty}`"));
                }
                let want = Type::from(ty);
                if let Some(init) = init {
                    if let Some(t) = self.value(init) {
                        if !self.table.assignable(&t, &want) {
                            self.error(
                                init.pos,
                                format!("cannot initialize `{name}` of type {want} with {t}"),
                            );
                        }
                    }
                }
                if self.lookup_local(name).is_some() {
                    self.error(s.pos, format!("variable `{name}` is already defined"));
                } else {
                    self.scopes.last_mut().unwrap().push((name.clone(), want));
                }
            }
            StmtKind::Assign {
                target,
                value,
                mode,
            } => {
                let target_ty = self.place(target);
                let value_ty = self.value(value);
                if let (Some(tt), Some(vt)) = (target_ty, value_ty) {
                    if *mode == AssignMode::Content && !matches!(vt, Type::Class(_)) {
                        self.error(value.pos, format!("cannot clone a value of type {vt}"));
                    } else if !self.table.assignable(&vt, &tt) {
                        self.error(value.pos, format!("cannot assign {vt} to {tt}"));
                    }
                }
            }
            StmtKind::If {
                cond,
                then_block,
                else_block,
            } => {
                self.condition(cond);
                self.block(then_block);
                if let Some(b) = else_block {
                    self.block(b);
                }
            }
            StmtKind::While { cond, body } => {
                self.condition(cond);
                self.block(body);
            }
            StmtKind::Return(value) => match (self.ret.clone(), value) {
                (Ret::Method(None) | Ret::Ctor, Some(v)) => {
                    self.value(v);
                    self.error(v.pos, "cannot return a value from a void method");
                }
                (Ret::Method(Some(want)), None) => {
                    self.error(s.pos, format!("missing return value of type {want}"));
                }
                (Ret::Method(Some(want)), Some(v)) => {
                    if let Some(t) = self.value(v) {
                        let want = Type::from(&want);
                        if !self.table.assignable(&t, &want) {
                            self.error(v.pos, format!("return type mismatch: expected {want}, found {t}"));
                        }
                    }
                }
                _ => {}
            },
            StmtKind::Expr(e) => {
                if !matches!(
                    e.kind,
                    ExprKind::Call { .. } | ExprKind::SuperCall { .. } | ExprKind::New { .. }
                ) {
                    self.error(e.pos, "expression is not a statement");
                }
                self.expr(e);
            }
            StmtKind::Print(e) => {
                self.value(e);
            }
            StmtKind::Block(b) => self.block(b),
        }
    }

    fn condition(&mut self, cond: &Expr) {
        if let Some(t) = self.value(cond) {
            if t != Type::Bool {
                self.error(cond.pos, format!("condition must be bool, found {t}"));
            }
        }
    }

    /// Types an assignment target.
    fn place(&mut self, target: &Expr) -> Option<Type> {
        match &target.kind {
            ExprKind::Var(_) => self.expr(target),
            ExprKind::Field { .. } => self.expr(target),
            _ => {
                self.error(target.pos, "invalid assignment target");
                None
            }
        }
    }

    /// Types `e`, rejecting `void`.
    fn value(&mut self, e: &Expr) -> Option<Type> {
        let t = self.expr(e)?;
        if t == Type::Void {
            self.error(e.pos, "void value used where a value is required");
            return None;
        }
        Some(t)
    }

    fn args(&mut self, args: &[Expr]) -> Option<Vec<Type>> {
        let mut out = Vec::new();
        let mut ok = true;
        for a in args {
            match self.value(a) {
                Some(t) => out.push(t),
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    /// Resolves a bare identifier as local, then field. Class names are only
    /// legal as receivers, see [`Self::receiver`].
    fn var(&mut self, e: &Expr, name: &str, allow_class: bool) -> Option<Type> {
        if let Some(t) = self.lookup_local(name).cloned() {
            self.table.bindings.vars.insert(e.id, VarBinding::Local);
            return Some(t);
        }
        let class = self.class.clone();
        if let Some(f) = self.table.lookup_field(&class, name).cloned() {
            if !self.table.accessible(&f.class, f.access, &class) {
                self.error(
                    e.pos,
                    format!("field `{name}` has {} access in `{}`", f.access.label(), f.class),
                );
                return None;
            }
            if !f.is_static && self.is_static {
                self.error(
                    e.pos,
                    format!("instance field `{name}` cannot be used from a static context"),
                );
                return None;
            }
            self.table.bindings.vars.insert(
                e.id,
                VarBinding::Field(FieldRef {
                    class: f.class.clone(),
                    name: f.name.clone(),
                    is_static: f.is_static,
                }),
            );
            return Some(Type::from(&f.ty));
        }
        if allow_class && self.table.contains(name) {
            self.table
                .bindings
                .vars
                .insert(e.id, VarBinding::Class(name.to_string()));
            return None;
        }
        self.error(e.pos, format!("undeclared variable `{name}`"));
        None
    }

    fn receiver(&mut self, e: &Expr) -> Option<Recv> {
        if let ExprKind::Var(name) = &e.kind {
            let is_value = self.lookup_local(name).is_some()
                || self.table.lookup_field(&self.class, name).is_some();
            if !is_value && self.table.contains(name) {
                self.var(e, name, true);
                return Some(Recv::Static(name.clone()));
            }
        }
        self.value(e).map(Recv::Value)
    }

    fn expr(&mut self, e: &Expr) -> Option<Type> {
        let t = self.expr_inner(e)?;
        self.table.bindings.expr_types.insert(e.id, t.clone());
        Some(t)
    }

    fn expr_inner(&mut self, e: &Expr) -> Option<Type> {
        match &e.kind {
            ExprKind::Int(_) => Some(Type::Int),
            ExprKind::Bool(_) => Some(Type::Bool),
            ExprKind::Str(_) => Some(Type::Str),
            ExprKind::Null => Some(Type::Null),
            ExprKind::Var(name) => self.var(e, name, false),
            ExprKind::This => {
                if self.is_static {
                    self.error(e.pos, "`this` cannot be used in a static context");
                    None
                } else {
                    Some(Type::Class(self.class.clone()))
                }
            }
            ExprKind::Field { receiver, name } => {
                let recv = self.receiver(receiver)?;
                let (class, via_class) = match recv {
                    Recv::Static(c) => (c, true),
                    Recv::Value(Type::Class(c)) => (c, false),
                    Recv::Value(t) => {
                        self.error(e.pos, format!("cannot access field `{name}` on {t}"));
                        return None;
                    }
                };
                let Some(f) = self.table.lookup_field(&class, name).cloned() else {
                    self.error(e.pos, format!("class `{class}` has no field `{name}`"));
                    return None;
                };
                if !self.table.accessible(&f.class, f.access, &self.class) {
                    self.error(
                        e.pos,
                        format!("field `{name}` has {} access in `{}`", f.access.label(), f.class),
                    );
                    return None;
                }
                if via_class && !f.is_static {
                    self.error(
                        e.pos,
                        format!("instance field `{name}` accessed through class `{class}`"),
                    );
                    return None;
                }
                self.table.bindings.fields.insert(
                    e.id,
                    FieldRef {
                        class: f.class.clone(),
                        name: f.name.clone(),
                        is_static: f.is_static,
                    },
                );
                Some(Type::from(&f.ty))
            }
            ExprKind::Call {
                receiver,
                name,
                args,
            } => {
                let recv = self.receiver(receiver);
                let arg_types = self.args(args);
                let (class, via_class) = match recv? {
                    Recv::Static(c) => (c, true),
                    Recv::Value(Type::Class(c)) => (c, false),
                    Recv::Value(t) => {
                        self.error(e.pos, format!("cannot call method `{name}` on {t}"));
                        return None;
                    }
                };
                let arg_types = arg_types?;
                let m = self.resolve_method(&class, name, &arg_types, e.pos)?;
                if via_class && !m.is_static {
                    self.error(
                        e.pos,
                        format!("instance method `{name}` called through class `{class}`"),
                    );
                    return None;
                }
                let dispatch = if m.is_static {
                    Dispatch::Static
                } else {
                    Dispatch::Virtual
                };
                let ret = Type::from(m.ret.as_ref());
                self.table.bindings.calls.insert(
                    e.id,
                    CallBinding {
                        method: m.key,
                        dispatch,
                    },
                );
                Some(ret)
            }
            ExprKind::SuperCall { name, args } => {
                let arg_types = self.args(args);
                if self.is_static {
                    self.error(e.pos, "`super` cannot be used in a static context");
                    return None;
                }
                let Some(parent) = self.table.parent(&self.class).map(str::to_string) else {
                    self.error(
                        e.pos,
                        format!("super call in class `{}` without a parent", self.class),
                    );
                    return None;
                };
                let m = self.resolve_method(&parent, name, &arg_types?, e.pos)?;
                let dispatch = if m.is_static {
                    Dispatch::Static
                } else {
                    Dispatch::Super
                };
                let ret = Type::from(m.ret.as_ref());
                self.table.bindings.calls.insert(
                    e.id,
                    CallBinding {
                        method: m.key,
                        dispatch,
                    },
                );
                Some(ret)
            }
            ExprKind::New { class, args } => {
                let arg_types = self.args(args);
                if !self.table.contains(class) {
                    self.error(e.pos, format!("unknown type `{class}`"));
                    return None;
                }
                let key = self.resolve_ctor(class, &arg_types?, e.pos)?;
                self.table.bindings.news.insert(e.id, key);
                Some(Type::Class(class.clone()))
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let l = self.value(lhs);
                let r = self.value(rhs);
                let (l, r) = (l?, r?);
                let result = match op.family() {
                    _ if *op == BinaryOp::Add && (l == Type::Str || r == Type::Str) => {
                        Some(Type::Str)
                    }
                    OpFamily::Arithmetic => {
                        (l == Type::Int && r == Type::Int).then_some(Type::Int)
                    }
                    OpFamily::Logical => {
                        (l == Type::Bool && r == Type::Bool).then_some(Type::Bool)
                    }
                    OpFamily::Relational => match op {
                        BinaryOp::Eq | BinaryOp::Ne => self.comparable(&l, &r).then_some(Type::Bool),
                        _ => (l == Type::Int && r == Type::Int).then_some(Type::Bool),
                    },
                };
                if result.is_none() {
                    self.error(
                        e.pos,
                        format!("operator `{}` cannot be applied to {l} and {r}", op.symbol()),
                    );
                }
                result
            }
            ExprKind::Unary { op, operand } => {
                let t = self.value(operand)?;
                let want = match op {
                    UnaryOp::Neg => Type::Int,
                    UnaryOp::Not => Type::Bool,
                };
                if t != want {
                    self.error(
                        e.pos,
                        format!("operator `{}` cannot be applied to {t}", op.symbol()),
                    );
                    return None;
                }
                Some(want)
            }
            ExprKind::Clone(inner) => {
                let t = self.value(inner)?;
                if !matches!(t, Type::Class(_)) {
                    self.error(e.pos, format!("cannot clone a value of type {t}"));
                    return None;
                }
                Some(t)
            }
            ExprKind::Equals { lhs, rhs } => {
                let l = self.value(lhs);
                let r = self.value(rhs);
                let (l, r) = (l?, r?);
                if !matches!(l, Type::Class(_)) || !r.is_reference() {
                    self.error(e.pos, format!("`equals` cannot compare {l} with {r}"));
                    return None;
                }
                Some(Type::Bool)
            }
        }
    }

    fn comparable(&self, l: &Type, r: &Type) -> bool {
        if l.is_reference() && r.is_reference() {
            self.table.assignable(l, r) || self.table.assignable(r, l)
        } else {
            l == r
        }
    }

    fn resolve_method(
        &mut self,
        class: &str,
        name: &str,
        args: &[Type],
        pos: Pos,
    ) -> Option<MethodSig> {
        let from = self.class.clone();
        let all = self.table.methods_named(class, name);
        let visible: Vec<&MethodSig> = all
            .iter()
            .copied()
            .filter(|m| self.table.accessible(&m.key.class, m.access, &from))
            .collect();
        let picked = super::table::pick_overload(self.table, &visible, |m| &m.key.params, args)
            .map(|m| m.clone());
        match picked {
            Ok(m) => Some(m),
            Err(err) => {
                let hidden = super::table::pick_overload(self.table, &all, |m| &m.key.params, args)
                    .map(|m| m.clone());
                let msg = match (hidden, err) {
                    (Ok(m), _) => format!(
                        "method `{name}({})` has {} access in `{}`",
                        join_types(&m.key.params),
                        m.access.label(),
                        m.key.class
                    ),
                    (Err(_), ResolveError::NotFound) => format!(
                        "no method `{name}({})` in class `{class}`",
                        join_types_of(args)
                    ),
                    (Err(_), ResolveError::Ambiguous(_)) => format!(
                        "ambiguous call `{name}({})` in class `{class}`",
                        join_types_of(args)
                    ),
                };
                self.error(pos, msg);
                None
            }
        }
    }
}

fn join_types_of(ts: &[Type]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

/// Whether every path through `block` ends in `return` (or an endless
/// `while (true)`).
pub fn always_returns(block: &Block) -> bool {
    block.stmts.iter().any(stmt_returns)
}

fn stmt_returns(s: &Stmt) -> bool {
    match &s.kind {
        StmtKind::Return(_) => true,
        StmtKind::If {
            then_block,
            else_block: Some(else_block),
            ..
        } => always_returns(then_block) && always_returns(else_block),
        StmtKind::While { cond, .. } => cond.kind == ExprKind::Bool(true),
        StmtKind::Block(b) => always_returns(b),
        _ => false,
    }
}
