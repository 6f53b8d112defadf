use thiserror::Error;

use crate::syntax::visit::{find_expr_mut, find_member, find_param_mut, find_stmt_mut, find_stmt_slot_mut};
use crate::syntax::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveTo {
    First,
    Last,
}

/// A single structured edit. Each variant acts on the mutant's target node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Patch {
    ReplaceExpr { with: Expr },
    DeleteStmt,
    MoveStmt { to: MoveTo },
    DeleteElse,
    /// Target is the class; the member is inserted at `index`.
    InsertMember { index: usize, member: Member },
    DeleteMember,
    SetAccess { access: Access },
    SetStatic { is_static: bool },
    RemoveInit,
    /// Field, local variable declaration or parameter.
    SetDeclType { ty: TypeRef },
    ReplaceBody { body: Block },
    Rename { name: String },
    DeleteSuperCall,
    SetAssignMode { mode: AssignMode },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatchError {
    #[error("target node {0} not found")]
    TargetNotFound(NodeId),
    #[error("patch does not apply to node {0}")]
    Inapplicable(NodeId),
}

fn member_mut(ast: &mut Ast, id: NodeId) -> Option<&mut Member> {
    let (c, m) = find_member(ast, id)?;
    Some(&mut ast.classes[c].members[m])
}

/// Applies `patch` at `target` to a copy of `original` and renumbers it.
pub fn apply(original: &Ast, target: NodeId, patch: &Patch) -> Result<Ast, PatchError> {
    let mut ast = original.clone();
    let missing = PatchError::TargetNotFound(target);
    let wrong = PatchError::Inapplicable(target);
    match patch {
        Patch::ReplaceExpr { with } => {
            *find_expr_mut(&mut ast, target).ok_or(missing)? = with.clone();
        }
        Patch::DeleteStmt => {
            let (list, i) = find_stmt_slot_mut(&mut ast, target).ok_or(missing)?;
            list.remove(i);
        }
        Patch::MoveStmt { to } => {
            let (list, i) = find_stmt_slot_mut(&mut ast, target).ok_or(missing)?;
            let s = list.remove(i);
            match to {
                MoveTo::First => list.insert(0, s),
                MoveTo::Last => list.push(s),
            }
        }
        Patch::DeleteElse => match &mut find_stmt_mut(&mut ast, target).ok_or(missing)?.kind {
            StmtKind::If { else_block, .. } if else_block.is_some() => *else_block = None,
            _ => return Err(wrong),
        },
        Patch::InsertMember { index, member } => {
            let class = ast
                .classes
                .iter_mut()
                .find(|c| c.id == target)
                .ok_or(missing)?;
            if *index > class.members.len() {
                return Err(wrong);
            }
            class.members.insert(*index, member.clone());
        }
        Patch::DeleteMember => {
            let (c, m) = find_member(&ast, target).ok_or(missing)?;
            ast.classes[c].members.remove(m);
        }
        Patch::SetAccess { access } => member_mut(&mut ast, target).ok_or(missing)?.set_access(*access),
        Patch::SetStatic { is_static } => match member_mut(&mut ast, target).ok_or(missing)? {
            Member::Field(f) => f.is_static = *is_static,
            Member::Method(m) => m.is_static = *is_static,
            Member::Ctor(_) => return Err(wrong),
        },
        Patch::RemoveInit => match member_mut(&mut ast, target).ok_or(missing)? {
            Member::Field(f) if f.init.is_some() => f.init = None,
            _ => return Err(wrong),
        },
        Patch::SetDeclType { ty } => {
            if let Some(m) = member_mut(&mut ast, target) {
                match m {
                    Member::Field(f) => f.ty = ty.clone(),
                    _ => return Err(wrong),
                }
            } else if let Some(p) = find_param_mut(&mut ast, target) {
                p.ty = ty.clone();
            } else {
                match &mut find_stmt_mut(&mut ast, target).ok_or(missing)?.kind {
                    StmtKind::VarDecl { ty: t, .. } => *t = ty.clone(),
                    _ => return Err(wrong),
                }
            }
        }
        Patch::ReplaceBody { body } => match member_mut(&mut ast, target).ok_or(missing)? {
            Member::Method(m) => m.body = body.clone(),
            _ => return Err(wrong),
        },
        Patch::Rename { name } => match member_mut(&mut ast, target).ok_or(missing)? {
            Member::Method(m) => m.name = name.clone(),
            _ => return Err(wrong),
        },
        Patch::DeleteSuperCall => match member_mut(&mut ast, target).ok_or(missing)? {
            Member::Ctor(c) if c.super_call.is_some() => c.super_call = None,
            _ => return Err(wrong),
        },
        Patch::SetAssignMode { mode } => {
            match &mut find_stmt_mut(&mut ast, target).ok_or(missing)?.kind {
                StmtKind::Assign { mode: m, .. } => *m = *mode,
                _ => return Err(wrong),
            }
        }
    }
    ast.renumber();
    Ok(ast)
}
