//! Brute-force mutant enumerator used as a test oracle.
//!
//! Every operator is coded directly as an edit on a cloned AST: walk to the
//! k-th site, rewrite it in place, print the result. Only the parser,
//! printer and the analyzer's type facts are shared with the crate.

use std::collections::BTreeMap;

use oomut::mutation::OperatorId;
use oomut::semantics::{analyze, compiles, ClassTable, Type, VarBinding};
use oomut::syntax::*;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct OracleCounts {
    /// Printed mutant programs, sorted.
    pub emitted: Vec<String>,
    pub stillborn: usize,
}

#[derive(Clone, Default)]
pub struct ExprCtx {
    pub scope: Vec<(String, TypeRef)>,
    pub assign_target: bool,
    pub under_op: bool,
    pub cond: bool,
}

#[derive(Clone, Default)]
pub struct StmtCtx {
    pub scope: Vec<(String, TypeRef)>,
    /// Declared return type of the enclosing method, if any.
    pub ret: Option<TypeRef>,
}

type ExprFn<'f> = &'f mut dyn FnMut(&mut Expr, &ExprCtx) -> bool;
type StmtFn<'f> = &'f mut dyn FnMut(&mut Vec<Stmt>, usize, &StmtCtx) -> bool;

struct Walker<'f> {
    scope: Vec<(String, TypeRef)>,
    ret: Option<TypeRef>,
    on_expr: Option<ExprFn<'f>>,
    on_stmt: Option<StmtFn<'f>>,
    stop: bool,
}

impl Walker<'_> {
    fn run(&mut self, ast: &mut Ast) {
        for class in &mut ast.classes {
            for member in &mut class.members {
                if self.stop {
                    return;
                }
                self.scope.clear();
                self.ret = None;
                match member {
                    Member::Field(f) => {
                        if let Some(init) = &mut f.init {
                            self.expr(init, ExprCtx::default());
                        }
                    }
                    Member::Method(m) => {
                        for p in &m.params {
                            self.scope.push((p.name.clone(), p.ty.clone()));
                        }
                        self.ret = m.ret.clone();
                        self.block(&mut m.body.stmts);
                    }
                    Member::Ctor(c) => {
                        for p in &c.params {
                            self.scope.push((p.name.clone(), p.ty.clone()));
                        }
                        if let Some(args) = &mut c.super_call {
                            for a in args {
                                let ctx = self.plain();
                                self.expr(a, ctx);
                            }
                        }
                        self.block(&mut c.body.stmts);
                    }
                }
            }
        }
    }

    fn plain(&self) -> ExprCtx {
        ExprCtx {
            scope: self.scope.clone(),
            ..ExprCtx::default()
        }
    }

    fn block(&mut self, stmts: &mut Vec<Stmt>) {
        let depth = self.scope.len();
        let mut i = 0;
        while i < stmts.len() && !self.stop {
            if let Some(f) = self.on_stmt.as_mut() {
                let ctx = StmtCtx {
                    scope: self.scope.clone(),
                    ret: self.ret.clone(),
                };
                if f(stmts, i, &ctx) {
                    self.stop = true;
                    return;
                }
            }
            self.stmt(&mut stmts[i]);
            i += 1;
        }
        self.scope.truncate(depth);
    }

    fn stmt(&mut self, s: &mut Stmt) {
        match &mut s.kind {
            StmtKind::VarDecl { ty, name, init } => {
                if let Some(e) = init {
                    let ctx = self.plain();
                    self.expr(e, ctx);
                }
                self.scope.push((name.clone(), ty.clone()));
            }
            StmtKind::Assign { target, value, .. } => {
                let mut ctx = self.plain();
                ctx.assign_target = true;
                self.expr(target, ctx);
                let ctx = self.plain();
                self.expr(value, ctx);
            }
            StmtKind::If {
                cond,
                then_block,
                else_block,
            } => {
                let mut ctx = self.plain();
                ctx.cond = true;
                self.expr(cond, ctx);
                self.block(&mut then_block.stmts);
                if let Some(b) = else_block {
                    self.block(&mut b.stmts);
                }
            }
            StmtKind::While { cond, body } => {
                let mut ctx = self.plain();
                ctx.cond = true;
                self.expr(cond, ctx);
                self.block(&mut body.stmts);
            }
            StmtKind::Return(Some(e)) | StmtKind::Expr(e) | StmtKind::Print(e) => {
                let ctx = self.plain();
                self.expr(e, ctx);
            }
            StmtKind::Return(None) => {}
            StmtKind::Block(b) => self.block(&mut b.stmts),
        }
    }

    fn expr(&mut self, e: &mut Expr, ctx: ExprCtx) {
        if self.stop {
            return;
        }
        if let Some(f) = self.on_expr.as_mut() {
            if f(e, &ctx) {
                self.stop = true;
                return;
            }
        }
        let plain = self.plain();
        let mut operand = plain.clone();
        operand.under_op = true;
        match &mut e.kind {
            ExprKind::Field { receiver, .. } => self.expr(receiver, plain),
            ExprKind::Call { receiver, args, .. } => {
                self.expr(receiver, plain.clone());
                for a in args {
                    self.expr(a, plain.clone());
                }
            }
            ExprKind::SuperCall { args, .. } | ExprKind::New { args, .. } => {
                for a in args {
                    self.expr(a, plain.clone());
                }
            }
            ExprKind::Binary { lhs, rhs, .. } => {
                self.expr(lhs, operand.clone());
                self.expr(rhs, operand);
            }
            ExprKind::Unary { operand: o, .. } => self.expr(o, operand),
            ExprKind::Clone(inner) => self.expr(inner, plain),
            ExprKind::Equals { lhs, rhs } => {
                self.expr(lhs, plain.clone());
                self.expr(rhs, plain);
            }
            _ => {}
        }
    }
}

fn walker<'f>() -> Walker<'f> {
    Walker {
        scope: Vec::new(),
        ret: None,
        on_expr: None,
        on_stmt: None,
        stop: false,
    }
}

/// Every single-site expression rewrite proposed by `alts`.
fn expr_mutants(ast: &Ast, alts: &dyn Fn(&Expr, &ExprCtx) -> Vec<Expr>) -> Vec<Ast> {
    let mut lists: Vec<Vec<Expr>> = Vec::new();
    let mut probe = ast.clone();
    let mut collect = |e: &mut Expr, ctx: &ExprCtx| {
        lists.push(alts(e, ctx));
        false
    };
    let mut w = walker();
    w.on_expr = Some(&mut collect);
    w.run(&mut probe);
    let mut out = Vec::new();
    for (site, list) in lists.iter().enumerate() {
        for alt in list {
            let mut m = ast.clone();
            let mut k = 0;
            let mut edit = |e: &mut Expr, _: &ExprCtx| {
                if k == site {
                    *e = alt.clone();
                    return true;
                }
                k += 1;
                false
            };
            let mut w = walker();
            w.on_expr = Some(&mut edit);
            w.run(&mut m);
            out.push(m);
        }
    }
    out
}

#[derive(Clone)]
enum StmtEdit {
    Delete,
    Replace(Stmt),
}

fn stmt_mutants(ast: &Ast, alts: &dyn Fn(&Stmt, &StmtCtx) -> Vec<StmtEdit>) -> Vec<Ast> {
    let mut lists: Vec<Vec<StmtEdit>> = Vec::new();
    let mut probe = ast.clone();
    let mut collect = |v: &mut Vec<Stmt>, i: usize, ctx: &StmtCtx| {
        lists.push(alts(&v[i], ctx));
        false
    };
    let mut w = walker();
    w.on_stmt = Some(&mut collect);
    w.run(&mut probe);
    let mut out = Vec::new();
    for (site, list) in lists.iter().enumerate() {
        for edit in list {
            let mut m = ast.clone();
            let mut k = 0;
            let mut apply = |v: &mut Vec<Stmt>, i: usize, _: &StmtCtx| {
                if k == site {
                    match edit {
                        StmtEdit::Delete => {
                            v.remove(i);
                        }
                        StmtEdit::Replace(s) => v[i] = s.clone(),
                    }
                    return true;
                }
                k += 1;
                false
            };
            let mut w = walker();
            w.on_stmt = Some(&mut apply);
            w.run(&mut m);
            out.push(m);
        }
    }
    out
}

/// One mutant per (class, member, edit) returned by `alts`.
fn member_mutants(ast: &Ast, alts: &dyn Fn(&ClassDecl, &Member) -> Vec<Option<Member>>) -> Vec<Ast> {
    let mut out = Vec::new();
    for (ci, class) in ast.classes.iter().enumerate() {
        for (mi, member) in class.members.iter().enumerate() {
            for edit in alts(class, member) {
                let mut m = ast.clone();
                match edit {
                    Some(new) => m.classes[ci].members[mi] = new,
                    None => {
                        m.classes[ci].members.remove(mi);
                    }
                }
                out.push(m);
            }
        }
    }
    out
}

fn mk(kind: ExprKind) -> Expr {
    Expr::new(Pos::default(), kind)
}

fn lit_int(n: i64) -> Expr {
    if n < 0 {
        mk(ExprKind::Unary {
            op: UnaryOp::Neg,
            operand: Box::new(mk(ExprKind::Int(-n))),
        })
    } else {
        mk(ExprKind::Int(n))
    }
}

struct Facts<'a> {
    ast: &'a Ast,
    table: &'a ClassTable,
}

impl<'a> Facts<'a> {
    fn ty(&self, e: &Expr) -> Option<Type> {
        self.table.bindings.type_of(e.id).cloned()
    }

    fn is_class_ref(&self, e: &Expr) -> bool {
        matches!(self.table.bindings.vars.get(&e.id), Some(VarBinding::Class(_)))
    }

    fn class(&self, name: &str) -> Option<&'a ClassDecl> {
        self.ast.classes.iter().find(|c| c.name == name)
    }

    /// Ancestors nearest first.
    fn ancestors(&self, name: &str) -> Vec<&'a ClassDecl> {
        let mut out = Vec::new();
        let mut cur = self.class(name).and_then(|c| c.super_name.clone());
        while let Some(n) = cur {
            let Some(c) = self.class(&n) else { break };
            if out.iter().any(|o: &&ClassDecl| o.name == c.name) {
                break;
            }
            out.push(c);
            cur = c.super_name.clone();
        }
        out
    }

    fn parent_of(&self, name: &str) -> Option<String> {
        self.class(name)?.super_name.clone()
    }

    fn is_sub(&self, sub: &str, sup: &str) -> bool {
        sub == sup || self.ancestors(sub).iter().any(|c| c.name == sup)
    }

    fn overrides(&self, class: &ClassDecl, m: &MethodDecl) -> bool {
        !m.is_static
            && self.ancestors(&class.name).iter().any(|a| {
                a.methods()
                    .any(|p| p.name == m.name && p.param_types() == m.param_types() && p.access != Access::Private)
            })
    }

    /// Distinct parameter lists of methods named `name` in `class` and its
    /// ancestors.
    fn overloads(&self, class: &ClassDecl, name: &str) -> Vec<Vec<TypeRef>> {
        let mut out: Vec<Vec<TypeRef>> = Vec::new();
        let mut chain = vec![class];
        chain.extend(self.ancestors(&class.name));
        for c in chain {
            for m in c.methods().filter(|m| m.name == name) {
                let p = m.param_types();
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// (name, params, ret) of every method reachable on `class`, nearest
    /// declaration first.
    fn reachable_methods(&self, class: &str) -> Vec<(String, Vec<TypeRef>, Option<TypeRef>)> {
        let mut out: Vec<(String, Vec<TypeRef>, Option<TypeRef>)> = Vec::new();
        let mut chain: Vec<&ClassDecl> = self.class(class).into_iter().collect();
        chain.extend(self.ancestors(class));
        for c in chain {
            for m in c.methods() {
                if !out.iter().any(|(n, p, _)| *n == m.name && *p == m.param_types()) {
                    out.push((m.name.clone(), m.param_types(), m.ret.clone()));
                }
            }
        }
        out
    }

    fn ctor_arities(&self, class: &str) -> Vec<usize> {
        let Some(c) = self.class(class) else { return Vec::new() };
        let a: Vec<usize> = c.ctors().map(|k| k.params.len()).collect();
        if a.is_empty() {
            vec![0]
        } else {
            a
        }
    }
}

fn accessor(name: &str, prefix: &str) -> bool {
    name.strip_prefix(prefix)
        .and_then(|r| r.chars().next())
        .is_some_and(|c| c.is_ascii_uppercase())
}

fn default_for(t: &TypeRef) -> Expr {
    mk(match t {
        TypeRef::Int => ExprKind::Int(0),
        TypeRef::Bool => ExprKind::Bool(false),
        TypeRef::Str => ExprKind::Str(String::new()),
        TypeRef::Class(_) => ExprKind::Null,
    })
}

fn with_args(e: &Expr, args: Vec<Expr>) -> Expr {
    let mut out = e.clone();
    match &mut out.kind {
        ExprKind::Call { args: a, .. } | ExprKind::SuperCall { args: a, .. } => *a = args,
        _ => unreachable!(),
    }
    out
}

fn call_args(e: &Expr) -> Option<&Vec<Expr>> {
    match &e.kind {
        ExprKind::Call { args, .. } | ExprKind::SuperCall { args, .. } => Some(args),
        _ => None,
    }
}

fn candidates(f: &Facts, op: OperatorId) -> Vec<Ast> {
    use OperatorId::*;
    let ast = f.ast;
    match op {
        ORO => expr_mutants(ast, &|e, ctx| {
            if ctx.assign_target {
                return Vec::new();
            }
            let (ty, own) = match &e.kind {
                ExprKind::Var(n) if !f.is_class_ref(e) => match f.ty(e) {
                    Some(t) => (t, Some(n.clone())),
                    None => return Vec::new(),
                },
                ExprKind::Int(_) => (Type::Int, None),
                ExprKind::Bool(_) => (Type::Bool, None),
                _ => return Vec::new(),
            };
            let mut out: Vec<Expr> = ctx
                .scope
                .iter()
                .filter(|(n, t)| Some(n) != own.as_ref() && Type::from(t) == ty)
                .map(|(n, _)| mk(ExprKind::Var(n.clone())))
                .collect();
            match ty {
                Type::Int => out.extend(
                    [0, 1, -1]
                        .into_iter()
                        .filter(|c| e.kind != ExprKind::Int(*c))
                        .map(lit_int),
                ),
                Type::Bool => out.extend(
                    [true, false]
                        .into_iter()
                        .filter(|b| e.kind != ExprKind::Bool(*b))
                        .map(|b| mk(ExprKind::Bool(b))),
                ),
                _ => {}
            }
            out
        }),
        EMO => expr_mutants(ast, &|e, ctx| {
            let mut out = Vec::new();
            if let ExprKind::Binary { op, lhs, rhs } = &e.kind {
                for other in op.family_members() {
                    if other != op {
                        out.push(mk(ExprKind::Binary {
                            op: *other,
                            lhs: lhs.clone(),
                            rhs: rhs.clone(),
                        }));
                    }
                }
            }
            if ctx.cond {
                out.push(mk(ExprKind::Unary {
                    op: UnaryOp::Not,
                    operand: Box::new(e.clone()),
                }));
            }
            let leaf = match &e.kind {
                ExprKind::Var(_) => !f.is_class_ref(e),
                ExprKind::Int(_) | ExprKind::Field { .. } | ExprKind::Call { .. } => true,
                _ => false,
            };
            if leaf && !ctx.assign_target && !ctx.under_op && f.ty(e) == Some(Type::Int) {
                out.push(mk(ExprKind::Unary {
                    op: UnaryOp::Neg,
                    operand: Box::new(e.clone()),
                }));
            }
            out
        }),
        SMO => stmt_mutants(ast, &|s, _| {
            let mut out = vec![StmtEdit::Delete];
            if let StmtKind::If {
                cond,
                then_block,
                else_block: Some(_),
            } = &s.kind
            {
                let mut t = s.clone();
                t.kind = StmtKind::If {
                    cond: cond.clone(),
                    then_block: then_block.clone(),
                    else_block: None,
                };
                out.push(StmtEdit::Replace(t));
            }
            out
        }),
        AMC => member_mutants(ast, &|_, m| {
            Access::ALL
                .into_iter()
                .filter(|a| *a != m.access())
                .map(|a| {
                    let mut n = m.clone();
                    n.set_access(a);
                    Some(n)
                })
                .collect()
        }),
        IHD => member_mutants(ast, &|c, m| match m {
            Member::Field(fd)
                if f.ancestors(&c.name).iter().any(|a| a.fields().any(|p| p.name == fd.name)) =>
            {
                vec![None]
            }
            _ => Vec::new(),
        }),
        IHI => {
            let mut out = Vec::new();
            for (ci, class) in ast.classes.iter().enumerate() {
                let mut seen: Vec<String> = class.fields().map(|x| x.name.clone()).collect();
                for anc in f.ancestors(&class.name) {
                    for fd in anc.fields() {
                        if seen.contains(&fd.name) {
                            continue;
                        }
                        seen.push(fd.name.clone());
                        if fd.access == Access::Private {
                            continue;
                        }
                        let mut m = ast.clone();
                        let mut copy = fd.clone();
                        copy.init = None;
                        m.classes[ci].members.insert(0, Member::Field(copy));
                        out.push(m);
                    }
                }
            }
            out
        }
        IOD => member_mutants(ast, &|c, m| match m {
            Member::Method(md) if f.overrides(c, md) => vec![None],
            _ => Vec::new(),
        }),
        IOP => member_mutants(ast, &|c, m| {
            let Member::Method(md) = m else { return Vec::new() };
            if !f.overrides(c, md) {
                return Vec::new();
            }
            let mut out = Vec::new();
            let n = md.body.stmts.len();
            for (i, s) in md.body.stmts.iter().enumerate() {
                if !matches!(&s.kind, StmtKind::Expr(e) if matches!(e.kind, ExprKind::SuperCall { .. })) {
                    continue;
                }
                for to_front in [true, false] {
                    if (to_front && i == 0) || (!to_front && i + 1 == n) {
                        continue;
                    }
                    let mut copy = md.clone();
                    let moved = copy.body.stmts.remove(i);
                    if to_front {
                        copy.body.stmts.insert(0, moved);
                    } else {
                        copy.body.stmts.push(moved);
                    }
                    out.push(Some(Member::Method(copy)));
                }
            }
            out
        }),
        IOR => member_mutants(ast, &|c, m| {
            let Member::Method(md) = m else { return Vec::new() };
            if !f.overrides(c, md) {
                return Vec::new();
            }
            let used = |n: &str| ast.classes.iter().any(|k| k.methods().any(|x| x.name == n));
            let mut name = format!("{}_ior", md.name);
            let mut k = 2;
            while used(&name) {
                name = format!("{}_ior{}", md.name, k);
                k += 1;
            }
            let mut copy = md.clone();
            copy.name = name;
            vec![Some(Member::Method(copy))]
        }),
        ISK => expr_mutants(ast, &|e, _| match &e.kind {
            ExprKind::SuperCall { name, args } => vec![mk(ExprKind::Call {
                receiver: Box::new(mk(ExprKind::This)),
                name: name.clone(),
                args: args.clone(),
            })],
            _ => Vec::new(),
        }),
        IPC => member_mutants(ast, &|_, m| match m {
            Member::Ctor(c) if c.super_call.is_some() => {
                let mut copy = c.clone();
                copy.super_call = None;
                vec![Some(Member::Ctor(copy))]
            }
            _ => Vec::new(),
        }),
        PNC => {
            let swap = |e: &Expr, context: Option<&str>| -> Vec<Expr> {
                let ExprKind::New { class, args } = &e.kind else { return Vec::new() };
                if context != Some(class.as_str()) {
                    return Vec::new();
                }
                ast.classes
                    .iter()
                    .filter(|c| c.name != *class && f.is_sub(&c.name, class))
                    .filter(|c| f.ctor_arities(&c.name).contains(&args.len()))
                    .map(|c| {
                        mk(ExprKind::New {
                            class: c.name.clone(),
                            args: args.clone(),
                        })
                    })
                    .collect()
            };
            let mut out = member_mutants(ast, &|_, m| match m {
                Member::Field(fd) => match &fd.init {
                    Some(init) => swap(init, fd.ty.class_name())
                        .into_iter()
                        .map(|n| {
                            let mut copy = fd.clone();
                            copy.init = Some(n);
                            Some(Member::Field(copy))
                        })
                        .collect(),
                    None => Vec::new(),
                },
                _ => Vec::new(),
            });
            out.extend(stmt_mutants(ast, &|s, ctx| {
                let (slot, context): (&Expr, Option<String>) = match &s.kind {
                    StmtKind::VarDecl { ty, init: Some(e), .. } => (e, ty.class_name().map(str::to_string)),
                    StmtKind::Assign { target, value, .. } => {
                        let c = f.ty(target).and_then(|t| t.class_name().map(str::to_string));
                        (value, c)
                    }
                    StmtKind::Return(Some(e)) => {
                        (e, ctx.ret.as_ref().and_then(|t| t.class_name().map(str::to_string)))
                    }
                    _ => return Vec::new(),
                };
                let alts = swap(slot, context.as_deref());
                alts.into_iter()
                    .map(|n| {
                        let mut c2 = s.clone();
                        match &mut c2.kind {
                            StmtKind::VarDecl { init: Some(e), .. } => *e = n,
                            StmtKind::Assign { value, .. } => *value = n,
                            StmtKind::Return(Some(e)) => *e = n,
                            _ => unreachable!(),
                        }
                        StmtEdit::Replace(c2)
                    })
                    .collect()
            }));
            out
        }
        PMD => {
            let parent = |t: &TypeRef| t.class_name().and_then(|c| f.parent_of(c)).map(TypeRef::Class);
            let mut out = member_mutants(ast, &|_, m| match m {
                Member::Field(fd) => parent(&fd.ty)
                    .map(|p| {
                        let mut copy = fd.clone();
                        copy.ty = p;
                        Some(Member::Field(copy))
                    })
                    .into_iter()
                    .collect(),
                _ => Vec::new(),
            });
            out.extend(stmt_mutants(ast, &|s, _| {
                let StmtKind::VarDecl { ty, name, init } = &s.kind else { return Vec::new() };
                parent(ty)
                    .map(|p| {
                        let mut copy = s.clone();
                        copy.kind = StmtKind::VarDecl {
                            ty: p,
                            name: name.clone(),
                            init: init.clone(),
                        };
                        StmtEdit::Replace(copy)
                    })
                    .into_iter()
                    .collect()
            }));
            out
        }
        PPD => member_mutants(ast, &|_, m| {
            let params = match m {
                Member::Method(x) => &x.params,
                Member::Ctor(x) => &x.params,
                Member::Field(_) => return Vec::new(),
            };
            let mut out = Vec::new();
            for (i, p) in params.iter().enumerate() {
                let Some(parent) = p.ty.class_name().and_then(|c| f.parent_of(c)) else { continue };
                let mut copy = m.clone();
                match &mut copy {
                    Member::Method(x) => x.params[i].ty = TypeRef::Class(parent),
                    Member::Ctor(x) => x.params[i].ty = TypeRef::Class(parent),
                    Member::Field(_) => unreachable!(),
                }
                out.push(Some(copy));
            }
            out
        }),
        PRV => stmt_mutants(ast, &|s, ctx| {
            let StmtKind::Assign {
                target,
                value,
                mode: AssignMode::Reference,
            } = &s.kind
            else {
                return Vec::new();
            };
            let Some(Type::Class(want)) = f.ty(target) else { return Vec::new() };
            let name_of = |e: &Expr| match &e.kind {
                ExprKind::Var(n) => Some(n.clone()),
                _ => None,
            };
            let (tn, vn) = (name_of(target), name_of(value));
            let mut alts: Vec<Expr> = ctx
                .scope
                .iter()
                .filter(|(n, t)| {
                    Some(n) != tn.as_ref()
                        && Some(n) != vn.as_ref()
                        && t.class_name().is_some_and(|c| f.is_sub(c, &want))
                })
                .map(|(n, _)| mk(ExprKind::Var(n.clone())))
                .collect();
            if value.kind != ExprKind::Null {
                alts.push(mk(ExprKind::Null));
            }
            alts.into_iter()
                .map(|v| {
                    let mut copy = s.clone();
                    if let StmtKind::Assign { value, .. } = &mut copy.kind {
                        *value = v;
                    }
                    StmtEdit::Replace(copy)
                })
                .collect()
        }),
        OMR => member_mutants(ast, &|c, m| {
            let Member::Method(md) = m else { return Vec::new() };
            let sets = f.overloads(c, &md.name);
            if sets.len() < 2 {
                return Vec::new();
            }
            let own = md.param_types();
            sets.into_iter()
                .filter(|p| *p != own)
                .map(|sib| {
                    let args = sib
                        .iter()
                        .enumerate()
                        .map(|(i, t)| match md.params.get(i) {
                            Some(p) if p.ty == *t => mk(ExprKind::Var(p.name.clone())),
                            _ => default_for(t),
                        })
                        .collect();
                    let recv = if md.is_static {
                        ExprKind::Var(c.name.clone())
                    } else {
                        ExprKind::This
                    };
                    let call = mk(ExprKind::Call {
                        receiver: Box::new(mk(recv)),
                        name: md.name.clone(),
                        args,
                    });
                    let stmt = Stmt {
                        id: NodeId::default(),
                        pos: Pos::default(),
                        kind: if md.ret.is_some() {
                            StmtKind::Return(Some(call))
                        } else {
                            StmtKind::Expr(call)
                        },
                    };
                    let mut copy = md.clone();
                    copy.body.stmts = vec![stmt];
                    Some(Member::Method(copy))
                })
                .collect()
        }),
        OMD => member_mutants(ast, &|c, m| match m {
            Member::Method(md) if f.overloads(c, &md.name).len() >= 2 => vec![None],
            _ => Vec::new(),
        }),
        OAO => expr_mutants(ast, &|e, _| {
            let Some(args) = call_args(e) else { return Vec::new() };
            let mut out = Vec::new();
            for i in 1..args.len() {
                if print_expr(&args[i - 1]) == print_expr(&args[i]) {
                    continue;
                }
                let mut a = args.clone();
                a.swap(i - 1, i);
                out.push(with_args(e, a));
            }
            out
        }),
        OAN => expr_mutants(ast, &|e, _| {
            let Some(args) = call_args(e) else { return Vec::new() };
            let Some(last) = args.last() else { return Vec::new() };
            let mut more = args.clone();
            more.push(last.clone());
            vec![with_args(e, args[..args.len() - 1].to_vec()), with_args(e, more)]
        }),
        JTD => expr_mutants(ast, &|e, ctx| match &e.kind {
            ExprKind::Field { receiver, name }
                if receiver.kind == ExprKind::This && ctx.scope.iter().any(|(n, _)| n == name) =>
            {
                vec![mk(ExprKind::Var(name.clone()))]
            }
            _ => Vec::new(),
        }),
        JSC => member_mutants(ast, &|_, m| match m {
            Member::Field(fd) => {
                let mut copy = fd.clone();
                copy.is_static = !fd.is_static;
                vec![Some(Member::Field(copy))]
            }
            _ => Vec::new(),
        }),
        JID => member_mutants(ast, &|_, m| match m {
            Member::Field(fd) if fd.init.is_some() => {
                let mut copy = fd.clone();
                copy.init = None;
                vec![Some(Member::Field(copy))]
            }
            _ => Vec::new(),
        }),
        JDC => member_mutants(ast, &|c, m| match m {
            Member::Ctor(k) if k.params.is_empty() && c.ctors().count() == 1 => vec![None],
            _ => Vec::new(),
        }),
        EOA => stmt_mutants(ast, &|s, _| {
            let StmtKind::Assign { target, value, mode } = &s.kind else { return Vec::new() };
            if !matches!(f.ty(target), Some(Type::Class(_))) {
                return Vec::new();
            }
            let mut copy = s.clone();
            copy.kind = StmtKind::Assign {
                target: target.clone(),
                value: value.clone(),
                mode: match mode {
                    AssignMode::Reference => AssignMode::Content,
                    AssignMode::Content => AssignMode::Reference,
                },
            };
            vec![StmtEdit::Replace(copy)]
        }),
        EOC => expr_mutants(ast, &|e, _| match &e.kind {
            ExprKind::Binary {
                op: BinaryOp::Eq,
                lhs,
                rhs,
            } if [lhs, rhs].iter().all(|x| f.ty(x).is_some_and(|t| t.is_reference())) => {
                vec![mk(ExprKind::Equals {
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                })]
            }
            ExprKind::Equals { lhs, rhs } => vec![mk(ExprKind::Binary {
                op: BinaryOp::Eq,
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            })],
            _ => Vec::new(),
        }),
        EAM | EMM => {
            let (prefix, arity) = if op == EAM { ("get", 0) } else { ("set", 1) };
            expr_mutants(ast, &|e, _| {
                let ExprKind::Call { receiver, name, args } = &e.kind else { return Vec::new() };
                if args.len() != arity || !accessor(name, prefix) {
                    return Vec::new();
                }
                let Some(binding) = f.table.bindings.calls.get(&e.id) else { return Vec::new() };
                let Some(cur) = f.table.method(&binding.method) else { return Vec::new() };
                let class = match f.table.bindings.vars.get(&receiver.id) {
                    Some(VarBinding::Class(c)) => c.clone(),
                    _ => match f.ty(receiver) {
                        Some(Type::Class(c)) => c,
                        _ => return Vec::new(),
                    },
                };
                f.reachable_methods(&class)
                    .into_iter()
                    .filter(|(n, p, r)| {
                        n != name
                            && accessor(n, prefix)
                            && p.len() == arity
                            && if arity == 0 {
                                *r == cur.ret
                            } else {
                                *p == cur.key.params
                            }
                    })
                    .map(|(n, _, _)| {
                        mk(ExprKind::Call {
                            receiver: receiver.clone(),
                            name: n,
                            args: args.clone(),
                        })
                    })
                    .collect()
            })
        }
    }
}

/// Per-operator emitted texts and stillborn counts for `text`.
pub fn oracle(text: &str, ops: &[OperatorId]) -> BTreeMap<OperatorId, OracleCounts> {
    let ast = parse_str(text).expect("oracle input parses");
    let (table, _) = analyze(&ast);
    let facts = Facts { ast: &ast, table: &table };
    let mut out = BTreeMap::new();
    for &op in ops {
        let mut counts = OracleCounts::default();
        for mut m in candidates(&facts, op) {
            m.renumber();
            if compiles(&m) {
                counts.emitted.push(pretty_print(&m));
            } else {
                counts.stillborn += 1;
            }
        }
        counts.emitted.sort();
        out.insert(op, counts);
    }
    out
}
