//! Pre-order traversal helpers shared by the parser, printer and mutator.

use super::ast::*;

/// Borrowed view of any node, handed out by [`walk`].
#[derive(Debug, Clone, Copy)]
pub enum NodeRef<'a> {
    Class(&'a ClassDecl),
    Field(&'a FieldDecl),
    Method(&'a MethodDecl),
    Ctor(&'a CtorDecl),
    Param(&'a Param),
    Block(&'a Block),
    Stmt(&'a Stmt),
    Expr(&'a Expr),
}

impl NodeRef<'_> {
    pub fn id(&self) -> NodeId {
        match self {
            NodeRef::Class(n) => n.id,
            NodeRef::Field(n) => n.id,
            NodeRef::Method(n) => n.id,
            NodeRef::Ctor(n) => n.id,
            NodeRef::Param(n) => n.id,
            NodeRef::Block(n) => n.id,
            NodeRef::Stmt(n) => n.id,
            NodeRef::Expr(n) => n.id,
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            NodeRef::Class(n) => n.pos,
            NodeRef::Field(n) => n.pos,
            NodeRef::Method(n) => n.pos,
            NodeRef::Ctor(n) => n.pos,
            NodeRef::Param(n) => n.pos,
            NodeRef::Block(n) => n.pos,
            NodeRef::Stmt(n) => n.pos,
            NodeRef::Expr(n) => n.pos,
        }
    }
}

/// Visits every node in pre-order (the same order ids are assigned in).
pub fn walk<'a>(ast: &'a Ast, f: &mut dyn FnMut(NodeRef<'a>)) {
    for class in &ast.classes {
        f(NodeRef::Class(class));
        for member in &class.members {
            match member {
                Member::Field(field) => {
                    f(NodeRef::Field(field));
                    if let Some(init) = &field.init {
                        walk_expr(init, f);
                    }
                }
                Member::Method(method) => {
                    f(NodeRef::Method(method));
                    for p in &method.params {
                        f(NodeRef::Param(p));
                    }
                    walk_block(&method.body, f);
                }
                Member::Ctor(ctor) => {
                    f(NodeRef::Ctor(ctor));
                    for p in &ctor.params {
                        f(NodeRef::Param(p));
                    }
                    for arg in ctor.super_call.iter().flatten() {
                        walk_expr(arg, f);
                    }
                    walk_block(&ctor.body, f);
                }
            }
        }
    }
}

pub fn walk_block<'a>(block: &'a Block, f: &mut dyn FnMut(NodeRef<'a>)) {
    f(NodeRef::Block(block));
    for stmt in &block.stmts {
        walk_stmt(stmt, f);
    }
}

pub fn walk_stmt<'a>(stmt: &'a Stmt, f: &mut dyn FnMut(NodeRef<'a>)) {
    f(NodeRef::Stmt(stmt));
    match &stmt.kind {
        StmtKind::VarDecl { init, .. } => {
            if let Some(e) = init {
                walk_expr(e, f);
            }
        }
        StmtKind::Assign { target, value, .. } => {
            walk_expr(target, f);
            walk_expr(value, f);
        }
        StmtKind::If {
            cond,
            then_block,
            else_block,
        } => {
            walk_expr(cond, f);
            walk_block(then_block, f);
            if let Some(b) = else_block {
                walk_block(b, f);
            }
        }
        StmtKind::While { cond, body } => {
            walk_expr(cond, f);
            walk_block(body, f);
        }
        StmtKind::Return(e) => {
            if let Some(e) = e {
                walk_expr(e, f);
            }
        }
        StmtKind::Expr(e) | StmtKind::Print(e) => walk_expr(e, f),
        StmtKind::Block(b) => walk_block(b, f),
    }
}

pub fn walk_expr<'a>(expr: &'a Expr, f: &mut dyn FnMut(NodeRef<'a>)) {
    f(NodeRef::Expr(expr));
    match &expr.kind {
        ExprKind::Int(_)
        | ExprKind::Bool(_)
        | ExprKind::Str(_)
        | ExprKind::Null
        | ExprKind::Var(_)
        | ExprKind::This => {}
        ExprKind::Field { receiver, .. } => walk_expr(receiver, f),
        ExprKind::Call { receiver, args, .. } => {
            walk_expr(receiver, f);
            for a in args {
                walk_expr(a, f);
            }
        }
        ExprKind::SuperCall { args, .. } | ExprKind::New { args, .. } => {
            for a in args {
                walk_expr(a, f);
            }
        }
        ExprKind::Binary { lhs, rhs, .. } | ExprKind::Equals { lhs, rhs } => {
            walk_expr(lhs, f);
            walk_expr(rhs, f);
        }
        ExprKind::Unary { operand, .. } => walk_expr(operand, f),
        ExprKind::Clone(inner) => walk_expr(inner, f),
    }
}

/// Mutable pre-order traversal over every node's `(id, pos)` pair.
fn for_each_node_mut(class: &mut ClassDecl, f: &mut dyn FnMut(&mut NodeId, &mut Pos)) {
    f(&mut class.id, &mut class.pos);
    for member in &mut class.members {
        match member {
            Member::Field(field) => {
                f(&mut field.id, &mut field.pos);
                if let Some(init) = &mut field.init {
                    expr_nodes_mut(init, f);
                }
            }
            Member::Method(method) => {
                f(&mut method.id, &mut method.pos);
                for p in &mut method.params {
                    f(&mut p.id, &mut p.pos);
                }
                block_nodes_mut(&mut method.body, f);
            }
            Member::Ctor(ctor) => {
                f(&mut ctor.id, &mut ctor.pos);
                for p in &mut ctor.params {
                    f(&mut p.id, &mut p.pos);
                }
                for arg in ctor.super_call.iter_mut().flatten() {
                    expr_nodes_mut(arg, f);
                }
                block_nodes_mut(&mut ctor.body, f);
            }
        }
    }
}

fn block_nodes_mut(block: &mut Block, f: &mut dyn FnMut(&mut NodeId, &mut Pos)) {
    f(&mut block.id, &mut block.pos);
    for stmt in &mut block.stmts {
        stmt_nodes_mut(stmt, f);
    }
}

fn stmt_nodes_mut(stmt: &mut Stmt, f: &mut dyn FnMut(&mut NodeId, &mut Pos)) {
    f(&mut stmt.id, &mut stmt.pos);
    match &mut stmt.kind {
        StmtKind::VarDecl { init, .. } => {
            if let Some(e) = init {
                expr_nodes_mut(e, f);
            }
        }
        StmtKind::Assign { target, value, .. } => {
            expr_nodes_mut(target, f);
            expr_nodes_mut(value, f);
        }
        StmtKind::If {
            cond,
            then_block,
            else_block,
        } => {
            expr_nodes_mut(cond, f);
            block_nodes_mut(then_block, f);
            if let Some(b) = else_block {
                block_nodes_mut(b, f);
            }
        }
        StmtKind::While { cond, body } => {
            expr_nodes_mut(cond, f);
            block_nodes_mut(body, f);
        }
        StmtKind::Return(e) => {
            if let Some(e) = e {
                expr_nodes_mut(e, f);
            }
        }
        StmtKind::Expr(e) | StmtKind::Print(e) => expr_nodes_mut(e, f),
        StmtKind::Block(b) => block_nodes_mut(b, f),
    }
}

fn expr_nodes_mut(expr: &mut Expr, f: &mut dyn FnMut(&mut NodeId, &mut Pos)) {
    f(&mut expr.id, &mut expr.pos);
    match &mut expr.kind {
        ExprKind::Int(_)
        | ExprKind::Bool(_)
        | ExprKind::Str(_)
        | ExprKind::Null
        | ExprKind::Var(_)
        | ExprKind::This => {}
        ExprKind::Field { receiver, .. } => expr_nodes_mut(receiver, f),
        ExprKind::Call { receiver, args, .. } => {
            expr_nodes_mut(receiver, f);
            for a in args {
                expr_nodes_mut(a, f);
            }
        }
        ExprKind::SuperCall { args, .. } | ExprKind::New { args, .. } => {
            for a in args {
                expr_nodes_mut(a, f);
            }
        }
        ExprKind::Binary { lhs, rhs, .. } | ExprKind::Equals { lhs, rhs } => {
            expr_nodes_mut(lhs, f);
            expr_nodes_mut(rhs, f);
        }
        ExprKind::Unary { operand, .. } => expr_nodes_mut(operand, f),
        ExprKind::Clone(inner) => expr_nodes_mut(inner, f),
    }
}

pub(crate) fn renumber_class(class: &mut ClassDecl, next: &mut u32) {
    for_each_node_mut(class, &mut |id, _| {
        *id = NodeId(*next);
        *next += 1;
    });
}

pub(crate) fn clear_positions(ast: &mut Ast) {
    for class in &mut ast.classes {
        for_each_node_mut(class, &mut |_, pos| *pos = Pos::default());
    }
}

/// Source position of the node with the given id, if present.
pub fn position_of(ast: &Ast, id: NodeId) -> Option<Pos> {
    let mut found = None;
    walk(ast, &mut |n| {
        if found.is_none() && n.id() == id {
            found = Some(n.pos());
        }
    });
    found
}

// ---- mutable lookups by id ----

pub fn find_expr_mut(ast: &mut Ast, id: NodeId) -> Option<&mut Expr> {
    for class in &mut ast.classes {
        for member in &mut class.members {
            let hit = match member {
                Member::Field(f) => f.init.as_mut().and_then(|e| expr_find(e, id)),
                Member::Method(m) => block_find_expr(&mut m.body, id),
                Member::Ctor(c) => {
                    let mut hit = None;
                    for arg in c.super_call.iter_mut().flatten() {
                        if let Some(e) = expr_find(arg, id) {
                            hit = Some(e);
                            break;
                        }
                    }
                    match hit {
                        Some(e) => Some(e),
                        None => block_find_expr(&mut c.body, id),
                    }
                }
            };
            if hit.is_some() {
                return hit;
            }
        }
    }
    None
}

fn block_find_expr(block: &mut Block, id: NodeId) -> Option<&mut Expr> {
    block
        .stmts
        .iter_mut()
        .find_map(|stmt| stmt_find_expr(stmt, id))
}

fn stmt_find_expr(stmt: &mut Stmt, id: NodeId) -> Option<&mut Expr> {
    match &mut stmt.kind {
        StmtKind::VarDecl { init, .. } => init.as_mut().and_then(|e| expr_find(e, id)),
        StmtKind::Assign { target, value, .. } => {
            if let Some(e) = expr_find(target, id) {
                return Some(e);
            }
            expr_find(value, id)
        }
        StmtKind::If {
            cond,
            then_block,
            else_block,
        } => {
            if let Some(e) = expr_find(cond, id) {
                return Some(e);
            }
            if let Some(e) = block_find_expr(then_block, id) {
                return Some(e);
            }
            else_block.as_mut().and_then(|b| block_find_expr(b, id))
        }
        StmtKind::While { cond, body } => {
            if let Some(e) = expr_find(cond, id) {
                return Some(e);
            }
            block_find_expr(body, id)
        }
        StmtKind::Return(e) => e.as_mut().and_then(|e| expr_find(e, id)),
        StmtKind::Expr(e) | StmtKind::Print(e) => expr_find(e, id),
        StmtKind::Block(b) => block_find_expr(b, id),
    }
}

fn expr_find(expr: &mut Expr, id: NodeId) -> Option<&mut Expr> {
    if expr.id == id {
        return Some(expr);
    }
    match &mut expr.kind {
        ExprKind::Int(_)
        | ExprKind::Bool(_)
        | ExprKind::Str(_)
        | ExprKind::Null
        | ExprKind::Var(_)
        | ExprKind::This => None,
        ExprKind::Field { receiver, .. } => expr_find(receiver, id),
        ExprKind::Call { receiver, args, .. } => {
            if let Some(e) = expr_find(receiver, id) {
                return Some(e);
            }
            args.iter_mut().find_map(|a| expr_find(a, id))
        }
        ExprKind::SuperCall { args, .. } | ExprKind::New { args, .. } => {
            args.iter_mut().find_map(|a| expr_find(a, id))
        }
        ExprKind::Binary { lhs, rhs, .. } | ExprKind::Equals { lhs, rhs } => {
            if let Some(e) = expr_find(lhs, id) {
                return Some(e);
            }
            expr_find(rhs, id)
        }
        ExprKind::Unary { operand, .. } => expr_find(operand, id),
        ExprKind::Clone(inner) => expr_find(inner, id),
    }
}

/// The statement list that directly contains statement `id`, plus its index.
pub fn find_stmt_slot_mut(ast: &mut Ast, id: NodeId) -> Option<(&mut Vec<Stmt>, usize)> {
    for class in &mut ast.classes {
        for member in &mut class.members {
            let body = match member {
                Member::Field(_) => continue,
                Member::Method(m) => &mut m.body,
                Member::Ctor(c) => &mut c.body,
            };
            if let Some(slot) = block_find_slot(body, id) {
                return Some(slot);
            }
        }
    }
    None
}

fn block_find_slot(block: &mut Block, id: NodeId) -> Option<(&mut Vec<Stmt>, usize)> {
    if let Some(i) = block.stmts.iter().position(|s| s.id == id) {
        return Some((&mut block.stmts, i));
    }
    for stmt in &mut block.stmts {
        let found = match &mut stmt.kind {
            StmtKind::If {
                then_block,
                else_block,
                ..
            } => match block_find_slot(then_block, id) {
                Some(slot) => Some(slot),
                None => else_block.as_mut().and_then(|b| block_find_slot(b, id)),
            },
            StmtKind::While { body, .. } => block_find_slot(body, id),
            StmtKind::Block(b) => block_find_slot(b, id),
            _ => None,
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn find_stmt_mut(ast: &mut Ast, id: NodeId) -> Option<&mut Stmt> {
    let (list, i) = find_stmt_slot_mut(ast, id)?;
    list.get_mut(i)
}

/// `(class index, member index)` of the member with the given id.
pub fn find_member(ast: &Ast, id: NodeId) -> Option<(usize, usize)> {
    ast.classes.iter().enumerate().find_map(|(ci, c)| {
        c.members
            .iter()
            .position(|m| m.id() == id)
            .map(|mi| (ci, mi))
    })
}

pub fn find_param_mut(ast: &mut Ast, id: NodeId) -> Option<&mut Param> {
    ast.classes
        .iter_mut()
        .flat_map(|c| c.members.iter_mut())
        .find_map(|m| match m {
            Member::Method(m) => m.params.iter_mut().find(|p| p.id == id),
            Member::Ctor(c) => c.params.iter_mut().find(|p| p.id == id),
            Member::Field(_) => None,
        })
}
