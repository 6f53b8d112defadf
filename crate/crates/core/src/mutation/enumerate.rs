//! Candidate generation. Candidates are unfiltered: the caller applies each
//! one and keeps those that still compile.

use super::patch::{MoveTo, Patch};
use super::OperatorId;
use crate::semantics::{ClassTable, Type, VarBinding};
use crate::syntax::*;

pub(super) struct Candidate {
    pub operator: OperatorId,
    pub target: NodeId,
    pub patch: Patch,
    pub description: String,
}

#[derive(Clone, Copy, Default)]
struct Role {
    assign_target: bool,
    under_operator: bool,
    condition: bool,
}

type Scope<'a> = Vec<(&'a str, &'a TypeRef)>;

struct ExprSite<'a> {
    expr: &'a Expr,
    scope: Scope<'a>,
    role: Role,
}

struct StmtSite<'a> {
    stmt: &'a Stmt,
    scope: Scope<'a>,
    member: &'a Member,
}

#[derive(Default)]
struct Sites<'a> {
    exprs: Vec<ExprSite<'a>>,
    stmts: Vec<StmtSite<'a>>,
    scope: Scope<'a>,
}

impl<'a> Sites<'a> {
    fn collect(ast: &'a Ast) -> Self {
        let mut s = Sites::default();
        for class in &ast.classes {
            for member in &class.members {
                s.scope.clear();
                match member {
                    Member::Field(f) => {
                        if let Some(init) = &f.init {
                            s.expr(init, Role::default());
                        }
                    }
                    Member::Method(m) => {
                        s.params(&m.params);
                        s.block(&m.body, member);
                    }
                    Member::Ctor(c) => {
                        s.params(&c.params);
                        for a in c.super_call.iter().flatten() {
                            s.expr(a, Role::default());
                        }
                        s.block(&c.body, member);
                    }
                }
            }
        }
        s
    }

    fn params(&mut self, params: &'a [Param]) {
        self.scope
            .extend(params.iter().map(|p| (p.name.as_str(), &p.ty)));
    }

    fn block(&mut self, b: &'a Block, member: &'a Member) {
        let mark = self.scope.len();
        for s in &b.stmts {
            self.stmt(s, member);
        }
        self.scope.truncate(mark);
    }

    fn stmt(&mut self, s: &'a Stmt, member: &'a Member) {
        self.stmts.push(StmtSite {
            stmt: s,
            scope: self.scope.clone(),
            member,
        });
        let plain = Role::default();
        let cond = Role {
            condition: true,
            ..plain
        };
        match &s.kind {
            StmtKind::VarDecl { ty, name, init } => {
                if let Some(e) = init {
                    self.expr(e, plain);
                }
                self.scope.push((name, ty));
            }
            StmtKind::Assign { target, value, .. } => {
                self.expr(
                    target,
                    Role {
                        assign_target: true,
                        ..plain
                    },
                );
                self.expr(value, plain);
            }
            StmtKind::If {
                cond: c,
                then_block,
                else_block,
            } => {
                self.expr(c, cond);
                self.block(then_block, member);
                if let Some(b) = else_block {
                    self.block(b, member);
                }
            }
            StmtKind::While { cond: c, body } => {
                self.expr(c, cond);
                self.block(body, member);
            }
            StmtKind::Return(e) => {
                if let Some(e) = e {
                    self.expr(e, plain);
                }
            }
            StmtKind::Expr(e) | StmtKind::Print(e) => self.expr(e, plain),
            StmtKind::Block(b) => self.block(b, member),
        }
    }

    fn expr(&mut self, e: &'a Expr, role: Role) {
        self.exprs.push(ExprSite {
            expr: e,
            scope: self.scope.clone(),
            role,
        });
        let plain = Role::default();
        let operand = Role {
            under_operator: true,
            ..plain
        };
        match &e.kind {
            ExprKind::Field { receiver, .. } => self.expr(receiver, plain),
            ExprKind::Call { receiver, args, .. } => {
                self.expr(receiver, plain);
                for a in args {
                    self.expr(a, plain);
                }
            }
            ExprKind::SuperCall { args, .. } | ExprKind::New { args, .. } => {
                for a in args {
                    self.expr(a, plain);
                }
            }
            ExprKind::Binary { lhs, rhs, .. } => {
                self.expr(lhs, operand);
                self.expr(rhs, operand);
            }
            ExprKind::Unary { operand: o, .. } => self.expr(o, operand),
            ExprKind::Clone(inner) => self.expr(inner, plain),
            ExprKind::Equals { lhs, rhs } => {
                self.expr(lhs, plain);
                self.expr(rhs, plain);
            }
            _ => {}
        }
    }
}

fn int(pos: Pos, n: i64) -> Expr {
    if n < 0 {
        neg(Expr::new(pos, ExprKind::Int(-n)))
    } else {
        Expr::new(pos, ExprKind::Int(n))
    }
}

fn neg(e: Expr) -> Expr {
    Expr::new(
        e.pos,
        ExprKind::Unary {
            op: UnaryOp::Neg,
            operand: Box::new(e),
        },
    )
}

fn default_expr(pos: Pos, t: &TypeRef) -> Expr {
    Expr::new(
        pos,
        match t {
            TypeRef::Int => ExprKind::Int(0),
            TypeRef::Bool => ExprKind::Bool(false),
            TypeRef::Str => ExprKind::Str(String::new()),
            TypeRef::Class(_) => ExprKind::Null,
        },
    )
}

fn is_accessor(name: &str, prefix: &str) -> bool {
    name.strip_prefix(prefix)
        .and_then(|r| r.chars().next())
        .is_some_and(|c| c.is_ascii_uppercase())
}

fn sig(params: &[TypeRef]) -> String {
    params
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

struct Gen<'a> {
    ast: &'a Ast,
    table: &'a ClassTable,
    sites: Sites<'a>,
    out: Vec<Candidate>,
    op: OperatorId,
}

pub(super) fn candidates(ast: &Ast, table: &ClassTable, ops: &[OperatorId]) -> Vec<Candidate> {
    let mut g = Gen {
        ast,
        table,
        sites: Sites::collect(ast),
        out: Vec::new(),
        op: OperatorId::ORO,
    };
    for &op in ops {
        g.op = op;
        match op {
            OperatorId::ORO => g.oro(),
            OperatorId::EMO => g.emo(),
            OperatorId::SMO => g.smo(),
            OperatorId::AMC => g.amc(),
            OperatorId::IHD => g.ihd(),
            OperatorId::IHI => g.ihi(),
            OperatorId::IOD => g.iod(),
            OperatorId::IOP => g.iop(),
            OperatorId::IOR => g.ior(),
            OperatorId::ISK => g.isk(),
            OperatorId::IPC => g.ipc(),
            OperatorId::PNC => g.pnc(),
            OperatorId::PMD => g.pmd(),
            OperatorId::PPD => g.ppd(),
            OperatorId::PRV => g.prv(),
            OperatorId::OMR => g.omr(),
            OperatorId::OMD => g.omd(),
            OperatorId::OAO => g.oao(),
            OperatorId::OAN => g.oan(),
            OperatorId::JTD => g.jtd(),
            OperatorId::JSC => g.jsc(),
            OperatorId::JID => g.jid(),
            OperatorId::JDC => g.jdc(),
            OperatorId::EOA => g.eoa(),
            OperatorId::EOC => g.eoc(),
            OperatorId::EAM => g.eam(),
            OperatorId::EMM => g.emm(),
        }
    }
    g.out
}

impl<'a> Gen<'a> {
    fn emit(&mut self, target: NodeId, patch: Patch, description: String) {
        self.out.push(Candidate {
            operator: self.op,
            target,
            patch,
            description,
        });
    }

    fn replace(&mut self, target: NodeId, with: Expr, description: String) {
        self.emit(target, Patch::ReplaceExpr { with }, description);
    }

    fn type_of(&self, e: &Expr) -> Option<&'a Type> {
        self.table.bindings.type_of(e.id)
    }

    fn is_class_name(&self, e: &Expr) -> bool {
        matches!(self.table.bindings.vars.get(&e.id), Some(VarBinding::Class(_)))
    }

    fn members(&self) -> impl Iterator<Item = (&'a ClassDecl, &'a Member)> {
        self.ast
            .classes
            .iter()
            .flat_map(|c| c.members.iter().map(move |m| (c, m)))
    }

    fn overriding_methods(&self) -> Vec<(&'a ClassDecl, &'a MethodDecl)> {
        let mut out = Vec::new();
        for (class, member) in self.members() {
            let Member::Method(m) = member else { continue };
            let Some(info) = self.table.get(&class.name) else {
                continue;
            };
            if info.overrides.keys().any(|k| k.name == m.name && k.params == m.param_types()) {
                out.push((class, m));
            }
        }
        out
    }

    fn oro(&mut self) {
        let exprs = std::mem::take(&mut self.sites.exprs);
        for site in &exprs {
            let e = site.expr;
            if site.role.assign_target {
                continue;
            }
            let (ty, own_name, literal) = match &e.kind {
                ExprKind::Var(name) if !self.is_class_name(e) => match self.type_of(e) {
                    Some(t) => (t.clone(), Some(name.as_str()), None),
                    None => continue,
                },
                ExprKind::Int(n) => (Type::Int, None, Some(ExprKind::Int(*n))),
                ExprKind::Bool(b) => (Type::Bool, None, Some(ExprKind::Bool(*b))),
                _ => continue,
            };
            let shown = print_expr(e);
            for (name, t) in &site.scope {
                if Some(*name) != own_name && Type::from(*t) == ty {
                    self.replace(
                        e.id,
                        Expr::new(e.pos, ExprKind::Var(name.to_string())),
                        format!("replace `{shown}` with `{name}`"),
                    );
                }
            }
            let constants: Vec<Expr> = match ty {
                Type::Int => [0, 1, -1]
                    .into_iter()
                    .filter(|c| literal != Some(ExprKind::Int(*c)))
                    .map(|c| int(e.pos, c))
                    .collect(),
                Type::Bool => [true, false]
                    .into_iter()
                    .filter(|b| literal != Some(ExprKind::Bool(*b)))
                    .map(|b| Expr::new(e.pos, ExprKind::Bool(b)))
                    .collect(),
                _ => Vec::new(),
            };
            for c in constants {
                let d = format!("replace `{shown}` with `{}`", print_expr(&c));
                self.replace(e.id, c, d);
            }
        }
        self.sites.exprs = exprs;
    }

    fn emo(&mut self) {
        let exprs = std::mem::take(&mut self.sites.exprs);
        for site in &exprs {
            let e = site.expr;
            if let ExprKind::Binary { op, lhs, rhs } = &e.kind {
                for &other in op.family_members() {
                    if other != *op {
                        let with = Expr::new(
                            e.pos,
                            ExprKind::Binary {
                                op: other,
                                lhs: lhs.clone(),
                                rhs: rhs.clone(),
                            },
                        );
                        let d = format!("replace `{}` with `{}`", op.symbol(), other.symbol());
                        self.replace(e.id, with, d);
                    }
                }
            }
            if site.role.condition {
                let with = Expr::new(
                    e.pos,
                    ExprKind::Unary {
                        op: UnaryOp::Not,
                        operand: Box::new(e.clone()),
                    },
                );
                self.replace(e.id, with, format!("negate condition `{}`", print_expr(e)));
            }
            let leaf = match &e.kind {
                ExprKind::Var(_) => !self.is_class_name(e),
                ExprKind::Int(_) | ExprKind::Field { .. } | ExprKind::Call { .. } => true,
                _ => false,
            };
            if leaf
                && !site.role.assign_target
                && !site.role.under_operator
                && self.type_of(e) == Some(&Type::Int)
            {
                self.replace(e.id, neg(e.clone()), format!("insert `-` before `{}`", print_expr(e)));
            }
        }
        self.sites.exprs = exprs;
    }

    fn smo(&mut self) {
        let stmts = std::mem::take(&mut self.sites.stmts);
        for site in &stmts {
            let s = site.stmt;
            let line = first_line(s);
            self.emit(s.id, Patch::DeleteStmt, format!("delete `{line}`"));
            if let StmtKind::If {
                else_block: Some(_),
                ..
            } = &s.kind
            {
                self.emit(s.id, Patch::DeleteElse, format!("delete else block of `{line}`"));
            }
        }
        self.sites.stmts = stmts;
    }

    fn amc(&mut self) {
        for (class, member) in self.members() {
            let current = member.access();
            for access in Access::ALL {
                if access != current {
                    self.emit(
                        member.id(),
                        Patch::SetAccess { access },
                        format!(
                            "change {} from {} to {}",
                            member_label(class, member),
                            current.label(),
                            access.label()
                        ),
                    );
                }
            }
        }
    }

    fn ihd(&mut self) {
        for (class, member) in self.members() {
            let Member::Field(f) = member else { continue };
            let hides = self
                .table
                .get(&class.name)
                .is_some_and(|i| i.hidden_fields.iter().any(|h| h.name == f.name));
            if hides {
                self.emit(
                    f.id,
                    Patch::DeleteMember,
                    format!("delete hiding field `{}.{}`", class.name, f.name),
                );
            }
        }
    }

    fn ihi(&mut self) {
        for class in &self.ast.classes {
            let Some(info) = self.table.get(&class.name) else {
                continue;
            };
            for f in &info.inherited_visible_fields {
                let member = Member::Field(FieldDecl {
                    id: NodeId::default(),
                    pos: class.pos,
                    access: f.access,
                    is_static: f.is_static,
                    ty: f.ty.clone(),
                    name: f.name.clone(),
                    init: None,
                });
                self.emit(
                    class.id,
                    Patch::InsertMember { index: 0, member },
                    format!("insert field `{} {}` hiding `{}.{}` into `{}`", f.ty, f.name, f.class, f.name, class.name),
                );
            }
        }
    }

    fn iod(&mut self) {
        for (class, m) in self.overriding_methods() {
            self.emit(
                m.id,
                Patch::DeleteMember,
                format!("delete overriding method `{}.{}({})`", class.name, m.name, sig(&m.param_types())),
            );
        }
    }

    fn iop(&mut self) {
        for (class, m) in self.overriding_methods() {
            let n = m.body.stmts.len();
            for (i, s) in m.body.stmts.iter().enumerate() {
                let StmtKind::Expr(Expr {
                    kind: ExprKind::SuperCall { .. },
                    ..
                }) = &s.kind
                else {
                    continue;
                };
                let what = format!("`{}` in `{}.{}`", first_line(s), class.name, m.name);
                if i != 0 {
                    self.emit(s.id, Patch::MoveStmt { to: MoveTo::First }, format!("move {what} to first"));
                }
                if i + 1 != n {
                    self.emit(s.id, Patch::MoveStmt { to: MoveTo::Last }, format!("move {what} to last"));
                }
            }
        }
    }

    fn ior(&mut self) {
        for (class, m) in self.overriding_methods() {
            let taken = |name: &str| {
                self.ast
                    .classes
                    .iter()
                    .any(|c| c.methods().any(|o| o.name == name))
            };
            let mut name = format!("{}_ior", m.name);
            let mut k = 2;
            while taken(&name) {
                name = format!("{}_ior{k}", m.name);
                k += 1;
            }
            let d = format!("rename overriding method `{}.{}` to `{name}`", class.name, m.name);
            self.emit(m.id, Patch::Rename { name }, d);
        }
    }

    fn isk(&mut self) {
        let exprs = std::mem::take(&mut self.sites.exprs);
        for site in &exprs {
            let e = site.expr;
            if let ExprKind::SuperCall { name, args } = &e.kind {
                let with = Expr::new(
                    e.pos,
                    ExprKind::Call {
                        receiver: Box::new(Expr::new(e.pos, ExprKind::This)),
                        name: name.clone(),
                        args: args.clone(),
                    },
                );
                self.replace(e.id, with, format!("replace `super.{name}` with `this.{name}`"));
            }
        }
        self.sites.exprs = exprs;
    }

    fn ipc(&mut self) {
        for (class, member) in self.members() {
            if let Member::Ctor(c) = member {
                if let Some(args) = &c.super_call {
                    self.emit(
                        c.id,
                        Patch::DeleteSuperCall,
                        format!("delete `super({})` in `{}` constructor", print_args(args), class.name),
                    );
                }
            }
        }
    }

    fn pnc(&mut self) {
        let mut news: Vec<(&'a Expr, Option<&'a str>)> = Vec::new();
        for (_, member) in self.members() {
            if let Member::Field(f) = member {
                if let Some(init) = &f.init {
                    news.push((init, f.ty.class_name()));
                }
            }
        }
        for site in &self.sites.stmts {
            match &site.stmt.kind {
                StmtKind::VarDecl {
                    ty, init: Some(e), ..
                } => news.push((e, ty.class_name())),
                StmtKind::Assign { target, value, .. } => {
                    let context = self.type_of(target).and_then(Type::class_name);
                    news.push((value, context));
                }
                StmtKind::Return(Some(e)) => {
                    if let Member::Method(MethodDecl { ret: Some(t), .. }) = site.member {
                        news.push((e, t.class_name()));
                    }
                }
                _ => {}
            }
        }
        news.sort_by_key(|(e, _)| e.id);
        for (e, context) in news {
            let ExprKind::New { class, args } = &e.kind else {
                continue;
            };
            if context != Some(class.as_str()) {
                continue;
            }
            for sub in self.table.subclasses(class) {
                let arity_ok = self
                    .table
                    .get(sub)
                    .is_some_and(|i| i.ctors.iter().any(|c| c.key.params.len() == args.len()));
                if arity_ok {
                    let with = Expr::new(
                        e.pos,
                        ExprKind::New {
                            class: sub.to_string(),
                            args: args.clone(),
                        },
                    );
                    self.replace(e.id, with, format!("replace `new {class}` with `new {sub}`"));
                }
            }
        }
    }

    fn parent_type(&self, t: &TypeRef) -> Option<TypeRef> {
        let c = t.class_name()?;
        self.table.parent(c).map(|p| TypeRef::Class(p.to_string()))
    }

    fn pmd(&mut self) {
        let mut decls: Vec<(NodeId, &'a TypeRef, &'a str)> = Vec::new();
        for (_, member) in self.members() {
            if let Member::Field(f) = member {
                decls.push((f.id, &f.ty, &f.name));
            }
        }
        for site in &self.sites.stmts {
            if let StmtKind::VarDecl { ty, name, .. } = &site.stmt.kind {
                decls.push((site.stmt.id, ty, name));
            }
        }
        decls.sort_by_key(|d| d.0);
        for (id, ty, name) in decls {
            if let Some(p) = self.parent_type(ty) {
                self.emit(
                    id,
                    Patch::SetDeclType { ty: p.clone() },
                    format!("declare `{name}` as {p} instead of {ty}"),
                );
            }
        }
    }

    fn ppd(&mut self) {
        for (_, member) in self.members() {
            let params = match member {
                Member::Method(m) => &m.params,
                Member::Ctor(c) => &c.params,
                Member::Field(_) => continue,
            };
            for p in params {
                if let Some(parent) = self.parent_type(&p.ty) {
                    self.emit(
                        p.id,
                        Patch::SetDeclType { ty: parent.clone() },
                        format!("declare parameter `{}` as {parent} instead of {}", p.name, p.ty),
                    );
                }
            }
        }
    }

    fn prv(&mut self) {
        let stmts = std::mem::take(&mut self.sites.stmts);
        for site in &stmts {
            let StmtKind::Assign {
                target,
                value,
                mode: AssignMode::Reference,
            } = &site.stmt.kind
            else {
                continue;
            };
            let Some(want @ Type::Class(_)) = self.type_of(target) else {
                continue;
            };
            let target_name = var_name(target);
            let value_name = var_name(value);
            let shown = print_expr(value);
            for (name, t) in &site.scope {
                let t = Type::from(*t);
                if Some(*name) != target_name
                    && Some(*name) != value_name
                    && t.class_name().is_some()
                    && self.table.assignable(&t, want)
                {
                    self.replace(
                        value.id,
                        Expr::new(value.pos, ExprKind::Var(name.to_string())),
                        format!("replace `{shown}` with `{name}`"),
                    );
                }
            }
            if value.kind != ExprKind::Null {
                self.replace(
                    value.id,
                    Expr::new(value.pos, ExprKind::Null),
                    format!("replace `{shown}` with `null`"),
                );
            }
        }
        self.sites.stmts = stmts;
    }

    fn overloaded(&self) -> Vec<(&'a ClassDecl, &'a MethodDecl)> {
        let mut out = Vec::new();
        for (class, member) in self.members() {
            if let Member::Method(m) = member {
                if self.table.methods_named(&class.name, &m.name).len() >= 2 {
                    out.push((class, m));
                }
            }
        }
        out
    }

    fn omr(&mut self) {
        for (class, m) in self.overloaded() {
            let own = m.param_types();
            let siblings: Vec<Vec<TypeRef>> = self
                .table
                .methods_named(&class.name, &m.name)
                .into_iter()
                .filter(|s| s.key.params != own)
                .map(|s| s.key.params.clone())
                .collect();
            for sib in siblings {
                let pos = m.body.pos;
                let args = sib
                    .iter()
                    .enumerate()
                    .map(|(i, t)| match m.params.get(i) {
                        Some(p) if p.ty == *t => Expr::new(pos, ExprKind::Var(p.name.clone())),
                        _ => default_expr(pos, t),
                    })
                    .collect();
                let receiver = if m.is_static {
                    ExprKind::Var(class.name.clone())
                } else {
                    ExprKind::This
                };
                let call = Expr::new(
                    pos,
                    ExprKind::Call {
                        receiver: Box::new(Expr::new(pos, receiver)),
                        name: m.name.clone(),
                        args,
                    },
                );
                let kind = if m.ret.is_some() {
                    StmtKind::Return(Some(call))
                } else {
                    StmtKind::Expr(call)
                };
                let body = Block {
                    id: NodeId::default(),
                    pos,
                    stmts: vec![Stmt {
                        id: NodeId::default(),
                        pos,
                        kind,
                    }],
                };
                self.emit(
                    m.id,
                    Patch::ReplaceBody { body },
                    format!(
                        "replace body of `{}.{}({})` with a call to `{}({})`",
                        class.name,
                        m.name,
                        sig(&own),
                        m.name,
                        sig(&sib)
                    ),
                );
            }
        }
    }

    fn omd(&mut self) {
        for (class, m) in self.overloaded() {
            self.emit(
                m.id,
                Patch::DeleteMember,
                format!("delete overload `{}.{}({})`", class.name, m.name, sig(&m.param_types())),
            );
        }
    }

    fn with_args(e: &Expr, args: Vec<Expr>) -> Option<Expr> {
        let kind = match &e.kind {
            ExprKind::Call { receiver, name, .. } => ExprKind::Call {
                receiver: receiver.clone(),
                name: name.clone(),
                args,
            },
            ExprKind::SuperCall { name, .. } => ExprKind::SuperCall {
                name: name.clone(),
                args,
            },
            _ => return None,
        };
        Some(Expr::new(e.pos, kind))
    }

    fn oao(&mut self) {
        let exprs = std::mem::take(&mut self.sites.exprs);
        for site in &exprs {
            let e = site.expr;
            let (ExprKind::Call { args, .. } | ExprKind::SuperCall { args, .. }) = &e.kind else {
                continue;
            };
            for i in 0..args.len().saturating_sub(1) {
                let (a, b) = (print_expr(&args[i]), print_expr(&args[i + 1]));
                if a == b {
                    continue;
                }
                let mut swapped = args.clone();
                swapped.swap(i, i + 1);
                let with = Self::with_args(e, swapped).unwrap();
                self.replace(e.id, with, format!("swap arguments `{a}` and `{b}` of `{}`", call_name(e)));
            }
        }
        self.sites.exprs = exprs;
    }

    fn oan(&mut self) {
        let exprs = std::mem::take(&mut self.sites.exprs);
        for site in &exprs {
            let e = site.expr;
            let (ExprKind::Call { args, .. } | ExprKind::SuperCall { args, .. }) = &e.kind else {
                continue;
            };
            let Some(last) = args.last() else { continue };
            let name = call_name(e);
            let dropped = args[..args.len() - 1].to_vec();
            self.replace(
                e.id,
                Self::with_args(e, dropped).unwrap(),
                format!("drop last argument of `{name}`"),
            );
            let mut dup = args.clone();
            dup.push(last.clone());
            self.replace(
                e.id,
                Self::with_args(e, dup).unwrap(),
                format!("duplicate last argument of `{name}`"),
            );
        }
        self.sites.exprs = exprs;
    }

    fn jtd(&mut self) {
        let exprs = std::mem::take(&mut self.sites.exprs);
        for site in &exprs {
            let e = site.expr;
            let ExprKind::Field { name, .. } = &e.kind else {
                continue;
            };
            if e.is_this_field() && site.scope.iter().any(|(n, _)| n == name) {
                self.replace(
                    e.id,
                    Expr::new(e.pos, ExprKind::Var(name.clone())),
                    format!("replace `this.{name}` with `{name}`"),
                );
            }
        }
        self.sites.exprs = exprs;
    }

    fn jsc(&mut self) {
        for (class, member) in self.members() {
            if let Member::Field(f) = member {
                let d = if f.is_static {
                    format!("remove `static` from `{}.{}`", class.name, f.name)
                } else {
                    format!("add `static` to `{}.{}`", class.name, f.name)
                };
                self.emit(f.id, Patch::SetStatic { is_static: !f.is_static }, d);
            }
        }
    }

    fn jid(&mut self) {
        for (class, member) in self.members() {
            if let Member::Field(f) = member {
                if let Some(init) = &f.init {
                    self.emit(
                        f.id,
                        Patch::RemoveInit,
                        format!("remove initializer `= {}` of `{}.{}`", print_expr(init), class.name, f.name),
                    );
                }
            }
        }
    }

    fn jdc(&mut self) {
        for class in &self.ast.classes {
            let ctors: Vec<&CtorDecl> = class.ctors().collect();
            if let [c] = ctors[..] {
                if c.params.is_empty() {
                    self.emit(
                        c.id,
                        Patch::DeleteMember,
                        format!("delete constructor `{}()` in favor of the default", class.name),
                    );
                }
            }
        }
    }

    fn eoa(&mut self) {
        let stmts = std::mem::take(&mut self.sites.stmts);
        for site in &stmts {
            let StmtKind::Assign { target, mode, .. } = &site.stmt.kind else {
                continue;
            };
            if !matches!(self.type_of(target), Some(Type::Class(_))) {
                continue;
            }
            let (mode, d) = match mode {
                AssignMode::Reference => (AssignMode::Content, "reference assignment to content assignment"),
                AssignMode::Content => (AssignMode::Reference, "content assignment to reference assignment"),
            };
            self.emit(
                site.stmt.id,
                Patch::SetAssignMode { mode },
                format!("change `{}` from {d}", first_line(site.stmt)),
            );
        }
        self.sites.stmts = stmts;
    }

    fn eoc(&mut self) {
        let exprs = std::mem::take(&mut self.sites.exprs);
        for site in &exprs {
            let e = site.expr;
            match &e.kind {
                ExprKind::Binary {
                    op: BinaryOp::Eq,
                    lhs,
                    rhs,
                } => {
                    let refs = [lhs, rhs]
                        .iter()
                        .all(|x| self.type_of(x).is_some_and(Type::is_reference));
                    if refs {
                        let with = Expr::new(
                            e.pos,
                            ExprKind::Equals {
                                lhs: lhs.clone(),
                                rhs: rhs.clone(),
                            },
                        );
                        self.replace(e.id, with, format!("replace `{}` with equals", print_expr(e)));
                    }
                }
                ExprKind::Equals { lhs, rhs } => {
                    let with = Expr::new(
                        e.pos,
                        ExprKind::Binary {
                            op: BinaryOp::Eq,
                            lhs: lhs.clone(),
                            rhs: rhs.clone(),
                        },
                    );
                    self.replace(e.id, with, format!("replace `{}` with `==`", print_expr(e)));
                }
                _ => {}
            }
        }
        self.sites.exprs = exprs;
    }

    fn eam(&mut self) {
        self.accessor_swap("get", 0);
    }

    fn emm(&mut self) {
        self.accessor_swap("set", 1);
    }

    /// Swaps `o.getX()` / `o.setX(v)` for same-shaped siblings on o's static
    /// type.
    fn accessor_swap(&mut self, prefix: &str, arity: usize) {
        let exprs = std::mem::take(&mut self.sites.exprs);
        for site in &exprs {
            let e = site.expr;
            let ExprKind::Call {
                receiver,
                name,
                args,
            } = &e.kind
            else {
                continue;
            };
            if args.len() != arity || !is_accessor(name, prefix) {
                continue;
            }
            let Some(binding) = self.table.bindings.calls.get(&e.id) else {
                continue;
            };
            let Some(current) = self.table.method(&binding.method) else {
                continue;
            };
            let static_class = match self.table.bindings.vars.get(&receiver.id) {
                Some(VarBinding::Class(c)) => c.clone(),
                _ => match self.type_of(receiver) {
                    Some(Type::Class(c)) => c.clone(),
                    _ => continue,
                },
            };
            let others: Vec<String> = self
                .table
                .all_methods(&static_class)
                .into_iter()
                .filter(|m| {
                    m.key.name != *name
                        && is_accessor(&m.key.name, prefix)
                        && m.key.params.len() == arity
                        && if arity == 0 {
                            m.ret == current.ret
                        } else {
                            m.key.params == current.key.params
                        }
                })
                .map(|m| m.key.name.clone())
                .collect();
            for other in others {
                let with = Expr::new(
                    e.pos,
                    ExprKind::Call {
                        receiver: receiver.clone(),
                        name: other.clone(),
                        args: args.clone(),
                    },
                );
                self.replace(e.id, with, format!("replace call to `{name}` with `{other}`"));
            }
        }
        self.sites.exprs = exprs;
    }
}

fn var_name(e: &Expr) -> Option<&str> {
    match &e.kind {
        ExprKind::Var(n) => Some(n),
        _ => None,
    }
}

fn call_name(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Call { name, .. } => name.clone(),
        ExprKind::SuperCall { name, .. } => format!("super.{name}"),
        _ => String::new(),
    }
}

fn first_line(s: &Stmt) -> String {
    let mut text = String::new();
    let wrapped = Ast {
        classes: vec![ClassDecl {
            id: NodeId::default(),
            pos: Pos::default(),
            name: "_".into(),
            super_name: None,
            members: vec![Member::Method(MethodDecl {
                id: NodeId::default(),
                pos: Pos::default(),
                access: Access::Default,
                is_static: false,
                ret: None,
                name: "_".into(),
                params: Vec::new(),
                body: Block {
                    id: NodeId::default(),
                    pos: Pos::default(),
                    stmts: vec![s.clone()],
                },
            })],
        }],
        node_count: 0,
    };
    let printed = pretty_print(&wrapped);
    if let Some(line) = printed.lines().nth(2) {
        text.push_str(line.trim());
    }
    text
}

fn member_label(class: &ClassDecl, member: &Member) -> String {
    match member {
        Member::Field(f) => format!("field `{}.{}`", class.name, f.name),
        Member::Method(m) => format!("method `{}.{}({})`", class.name, m.name, sig(&m.param_types())),
        Member::Ctor(c) => format!("constructor `{}({})`", class.name, sig(&c.param_types())),
    }
}
