//! Syntax tree for OOml programs.
//!
//! Every node carries a [`NodeId`]. Ids are assigned by [`Ast::renumber`] in a
//! pre-order walk, so identical text always yields identical ids. Positions are
//! informational only and never take part in [`Ast::structurally_eq`].

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// 1-based line/column of the first token of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Raw program text plus the name it is reported under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceUnit {
    pub path: String,
    pub text: String,
}

impl SourceUnit {
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Self {
        SourceUnit {
            path: path.into(),
            text: text.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Access {
    Public,
    Protected,
    /// No modifier written.
    Default,
    Private,
}

impl Access {
    pub const ALL: [Access; 4] = [
        Access::Public,
        Access::Protected,
        Access::Default,
        Access::Private,
    ];

    /// Relative openness, used to reject overrides that narrow visibility.
    pub fn rank(self) -> u8 {
        match self {
            Access::Private => 0,
            Access::Default => 1,
            Access::Protected => 2,
            Access::Public => 3,
        }
    }

    pub fn keyword(self) -> Option<&'static str> {
        match self {
            Access::Public => Some("public"),
            Access::Protected => Some("protected"),
            Access::Private => Some("private"),
            Access::Default => None,
        }
    }

    pub fn label(self) -> &'static str {
        self.keyword().unwrap_or("default")
    }
}

/// A declared type as written in source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeRef {
    Int,
    Bool,
    Str,
    Class(String),
}

impl TypeRef {
    pub fn class_name(&self) -> Option<&str> {
        match self {
            TypeRef::Class(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for TypeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeRef::Int => f.write_str("int"),
            TypeRef::Bool => f.write_str("bool"),
            TypeRef::Str => f.write_str("string"),
            TypeRef::Class(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ast {
    pub classes: Vec<ClassDecl>,
    pub node_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecl {
    pub id: NodeId,
    pub pos: Pos,
    pub name: String,
    pub super_name: Option<String>,
    /// Members in source order.
    pub members: Vec<Member>,
}

impl ClassDecl {
    pub fn fields(&self) -> impl Iterator<Item = &FieldDecl> {
        self.members.iter().filter_map(|m| match m {
            Member::Field(f) => Some(f),
            _ => None,
        })
    }

    pub fn methods(&self) -> impl Iterator<Item = &MethodDecl> {
        self.members.iter().filter_map(|m| match m {
            Member::Method(f) => Some(f),
            _ => None,
        })
    }

    pub fn ctors(&self) -> impl Iterator<Item = &CtorDecl> {
        self.members.iter().filter_map(|m| match m {
            Member::Ctor(f) => Some(f),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Member {
    Field(FieldDecl),
    Method(MethodDecl),
    Ctor(CtorDecl),
}

impl Member {
    pub fn id(&self) -> NodeId {
        match self {
            Member::Field(f) => f.id,
            Member::Method(m) => m.id,
            Member::Ctor(c) => c.id,
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            Member::Field(f) => f.pos,
            Member::Method(m) => m.pos,
            Member::Ctor(c) => c.pos,
        }
    }

    pub fn access(&self) -> Access {
        match self {
            Member::Field(f) => f.access,
            Member::Method(m) => m.access,
            Member::Ctor(c) => c.access,
        }
    }

    pub fn set_access(&mut self, access: Access) {
        match self {
            Member::Field(f) => f.access = access,
            Member::Method(m) => m.access = access,
            Member::Ctor(c) => c.access = access,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDecl {
    pub id: NodeId,
    pub pos: Pos,
    pub access: Access,
    pub is_static: bool,
    pub ty: TypeRef,
    pub name: String,
    pub init: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub id: NodeId,
    pub pos: Pos,
    pub ty: TypeRef,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDecl {
    pub id: NodeId,
    pub pos: Pos,
    pub access: Access,
    pub is_static: bool,
    /// `None` for `void`.
    pub ret: Option<TypeRef>,
    pub name: String,
    pub params: Vec<Param>,
    pub body: Block,
}

impl MethodDecl {
    pub fn param_types(&self) -> Vec<TypeRef> {
        self.params.iter().map(|p| p.ty.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtorDecl {
    pub id: NodeId,
    pub pos: Pos,
    pub access: Access,
    pub name: String,
    pub params: Vec<Param>,
    /// Arguments of an explicit leading `super(...)` call.
    pub super_call: Option<Vec<Expr>>,
    pub body: Block,
}

impl CtorDecl {
    pub fn param_types(&self) -> Vec<TypeRef> {
        self.params.iter().map(|p| p.ty.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub id: NodeId,
    pub pos: Pos,
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub id: NodeId,
    pub pos: Pos,
    pub kind: StmtKind,
}

/// `a = b` copies the reference, `a = clone(b)` copies the object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssignMode {
    Reference,
    Content,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    VarDecl {
        ty: TypeRef,
        name: String,
        init: Option<Expr>,
    },
    /// `target` is always a `Var` or `Field` expression.
    Assign {
        target: Expr,
        value: Expr,
        mode: AssignMode,
    },
    If {
        cond: Expr,
        then_block: Block,
        else_block: Option<Block>,
    },
    While {
        cond: Expr,
        body: Block,
    },
    Return(Option<Expr>),
    Expr(Expr),
    Print(Expr),
    Block(Block),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpFamily {
    Arithmetic,
    Relational,
    Logical,
}

impl BinaryOp {
    pub const ARITHMETIC: [BinaryOp; 5] = [
        BinaryOp::Add,
        BinaryOp::Sub,
        BinaryOp::Mul,
        BinaryOp::Div,
        BinaryOp::Rem,
    ];
    pub const RELATIONAL: [BinaryOp; 6] = [
        BinaryOp::Lt,
        BinaryOp::Le,
        BinaryOp::Gt,
        BinaryOp::Ge,
        BinaryOp::Eq,
        BinaryOp::Ne,
    ];
    pub const LOGICAL: [BinaryOp; 2] = [BinaryOp::And, BinaryOp::Or];

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Rem => "%",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
        }
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Or => 1,
            BinaryOp::And => 2,
            BinaryOp::Eq | BinaryOp::Ne => 3,
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => 4,
            BinaryOp::Add | BinaryOp::Sub => 5,
            BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem => 6,
        }
    }

    pub fn family(self) -> OpFamily {
        match self {
            BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem => {
                OpFamily::Arithmetic
            }
            BinaryOp::And | BinaryOp::Or => OpFamily::Logical,
            _ => OpFamily::Relational,
        }
    }

    pub fn family_members(self) -> &'static [BinaryOp] {
        match self.family() {
            OpFamily::Arithmetic => &Self::ARITHMETIC,
            OpFamily::Relational => &Self::RELATIONAL,
            OpFamily::Logical => &Self::LOGICAL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Not,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Not => "!",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub id: NodeId,
    pub pos: Pos,
    pub kind: ExprKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Int(i64),
    Bool(bool),
    Str(String),
    Null,
    /// A bare identifier: local, parameter, field, or class name used as a
    /// static receiver.
    Var(String),
    This,
    Field {
        receiver: Box<Expr>,
        name: String,
    },
    Call {
        receiver: Box<Expr>,
        name: String,
        args: Vec<Expr>,
    },
    SuperCall {
        name: String,
        args: Vec<Expr>,
    },
    New {
        class: String,
        args: Vec<Expr>,
    },
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    Clone(Box<Expr>),
    Equals {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

impl Expr {
    /// A fresh node; ids are fixed up by the next [`Ast::renumber`].
    pub fn new(pos: Pos, kind: ExprKind) -> Self {
        Expr {
            id: NodeId::default(),
            pos,
            kind,
        }
    }

    /// Explicit `this.name` field access.
    pub fn is_this_field(&self) -> bool {
        matches!(&self.kind, ExprKind::Field { receiver, .. } if receiver.kind == ExprKind::This)
    }
}

impl Ast {
    /// Reassigns every node id in pre-order and updates `node_count`.
    pub fn renumber(&mut self) {
        let mut next = 0u32;
        for class in &mut self.classes {
            super::visit::renumber_class(class, &mut next);
        }
        self.node_count = next;
    }

    /// Equality ignoring source positions.
    pub fn structurally_eq(&self, other: &Ast) -> bool {
        self.without_positions() == other.without_positions()
    }

    pub fn without_positions(&self) -> Ast {
        let mut copy = self.clone();
        super::visit::clear_positions(&mut copy);
        copy
    }

    pub fn class(&self, name: &str) -> Option<&ClassDecl> {
        self.classes.iter().find(|c| c.name == name)
    }
}
