use super::ast::*;
use super::lexer::{Token, TokenKind};
use super::SyntaxError;

/// Parses a token sequence (as produced by [`super::tokenize`]) into an
/// [`Ast`] with pre-order node ids.
pub fn parse(tokens: &[Token]) -> Result<Ast, SyntaxError> {
    let mut p = Parser { tokens, at: 0 };
    let mut classes = Vec::new();
    loop {
        classes.push(p.class_decl()?);
        if p.peek() == &TokenKind::Eof {
            break;
        }
    }
    let mut ast = Ast {
        classes,
        node_count: 0,
    };
    ast.renumber();
    Ok(ast)
}

/// `Class.method(args)` as written in test suites and fixture headers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub class: String,
    pub method: String,
    pub args: Vec<Expr>,
}

pub fn parse_invocation(tokens: &[Token]) -> Result<Invocation, SyntaxError> {
    let mut p = Parser { tokens, at: 0 };
    let class = p.ident()?;
    p.expect(&TokenKind::Dot, "`.`")?;
    let method = p.ident()?;
    let args = p.args()?;
    p.expect(&TokenKind::Eof, "end of invocation")?;
    Ok(Invocation {
        class,
        method,
        args,
    })
}

struct Parser<'t> {
    tokens: &'t [Token],
    at: usize,
}

impl<'t> Parser<'t> {
    fn tok(&self) -> &'t Token {
        // the lexer always terminates the stream with Eof
        &self.tokens[self.at.min(self.tokens.len() - 1)]
    }

    fn peek(&self) -> &'t TokenKind {
        &self.tok().kind
    }

    fn peek_at(&self, n: usize) -> &'t TokenKind {
        &self.tokens[(self.at + n).min(self.tokens.len() - 1)].kind
    }

    fn pos(&self) -> Pos {
        self.tok().pos
    }

    fn advance(&mut self) -> &'t Token {
        let t = self.tok();
        if self.at < self.tokens.len() - 1 {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse {
            pos: self.pos(),
            expected: expected.to_string(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, kind: &TokenKind, expected: &str) -> Result<Pos, SyntaxError> {
        if self.peek() == kind {
            Ok(self.advance().pos)
        } else {
            self.error(expected)
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            TokenKind::Ident(name) => {
                self.advance();
                Ok(name.clone())
            }
            _ => self.error("identifier"),
        }
    }

    fn class_decl(&mut self) -> Result<ClassDecl, SyntaxError> {
        let pos = self.expect(&TokenKind::Class, "`class`")?;
        let name = self.ident()?;
        let super_name = if self.eat(&TokenKind::Extends) {
            Some(self.ident()?)
        } else {
            None
        };
        self.expect(&TokenKind::LBrace, "`{`")?;
        let mut members = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            members.push(self.member(&name)?);
        }
        Ok(ClassDecl {
            id: NodeId::default(),
            pos,
            name,
            super_name,
            members,
        })
    }

    fn is_type_start(kind: &TokenKind) -> bool {
        matches!(
            kind,
            TokenKind::IntKw | TokenKind::BoolKw | TokenKind::StringKw | TokenKind::Ident(_)
        )
    }

    fn type_ref(&mut self) -> Result<TypeRef, SyntaxError> {
        let ty = match self.peek() {
            TokenKind::IntKw => TypeRef::Int,
            TokenKind::BoolKw => TypeRef::Bool,
            TokenKind::StringKw => TypeRef::Str,
            TokenKind::Ident(name) => TypeRef::Class(name.clone()),
            _ => return self.error("type"),
        };
        self.advance();
        Ok(ty)
    }

    fn member(&mut self, class_name: &str) -> Result<Member, SyntaxError> {
        let pos = self.pos();
        let access = match self.peek() {
            TokenKind::Public => Access::Public,
            TokenKind::Protected => Access::Protected,
            TokenKind::Private => Access::Private,
            _ => Access::Default,
        };
        if access != Access::Default {
            self.advance();
        }
        let is_static = self.eat(&TokenKind::Static);

        // constructor: IDENT "("
        if let (TokenKind::Ident(name), TokenKind::LParen) = (self.peek(), self.peek_at(1)) {
            if is_static || name != class_name {
                return self.error("member type");
            }
            let name = name.clone();
            self.advance();
            let params = self.params()?;
            return self.ctor_body(pos, access, name, params).map(Member::Ctor);
        }

        let ret = if self.eat(&TokenKind::Void) {
            None
        } else {
            Some(self.type_ref()?)
        };
        let name = self.ident()?;
        if self.peek() == &TokenKind::LParen {
            let params = self.params()?;
            let body = self.block()?;
            return Ok(Member::Method(MethodDecl {
                id: NodeId::default(),
                pos,
                access,
                is_static,
                ret,
                name,
                params,
                body,
            }));
        }
        let Some(ty) = ret else {
            return self.error("`(`");
        };
        let init = if self.eat(&TokenKind::Assign) {
            Some(self.expr()?)
        } else {
            None
        };
        self.expect(&TokenKind::Semi, "`;`")?;
        Ok(Member::Field(FieldDecl {
            id: NodeId::default(),
            pos,
            access,
            is_static,
            ty,
            name,
            init,
        }))
    }

    fn params(&mut self) -> Result<Vec<Param>, SyntaxError> {
        self.expect(&TokenKind::LParen, "`(`")?;
        let mut params = Vec::new();
        if !self.eat(&TokenKind::RParen) {
            loop {
                let pos = self.pos();
                let ty = self.type_ref()?;
                let name = self.ident()?;
                params.push(Param {
                    id: NodeId::default(),
                    pos,
                    ty,
                    name,
                });
                if self.eat(&TokenKind::RParen) {
                    break;
                }
                self.expect(&TokenKind::Comma, "`,` or `)`")?;
            }
        }
        Ok(params)
    }

    fn ctor_body(
        &mut self,
        pos: Pos,
        access: Access,
        name: String,
        params: Vec<Param>,
    ) -> Result<CtorDecl, SyntaxError> {
        let block_pos = self.expect(&TokenKind::LBrace, "`{`")?;
        let super_call =
            if self.peek() == &TokenKind::Super && self.peek_at(1) == &TokenKind::LParen {
                self.advance();
                let args = self.args()?;
                self.expect(&TokenKind::Semi, "`;`")?;
                Some(args)
            } else {
                None
            };
        let mut stmts = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            stmts.push(self.stmt()?);
        }
        Ok(CtorDecl {
            id: NodeId::default(),
            pos,
            access,
            name,
            params,
            super_call,
            body: Block {
                id: NodeId::default(),
                pos: block_pos,
                stmts,
            },
        })
    }

    fn args(&mut self) -> Result<Vec<Expr>, SyntaxError> {
        self.expect(&TokenKind::LParen, "`(`")?;
        let mut args = Vec::new();
        if !self.eat(&TokenKind::RParen) {
            loop {
                args.push(self.expr()?);
                if self.eat(&TokenKind::RParen) {
                    break;
                }
                self.expect(&TokenKind::Comma, "`,` or `)`")?;
            }
        }
        Ok(args)
    }

    fn block(&mut self) -> Result<Block, SyntaxError> {
        let pos = self.expect(&TokenKind::LBrace, "`{`")?;
        let mut stmts = Vec::new();
        while !self.eat(&TokenKind::RBrace) {
            stmts.push(self.stmt()?);
        }
        Ok(Block {
            id: NodeId::default(),
            pos,
            stmts,
        })
    }

    fn stmt(&mut self) -> Result<Stmt, SyntaxError> {
        let pos = self.pos();
        let kind = match self.peek() {
            TokenKind::LBrace => StmtKind::Block(self.block()?),
            TokenKind::If => {
                self.advance();
                self.expect(&TokenKind::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                let then_block = self.block()?;
                let else_block = if self.eat(&TokenKind::Else) {
                    Some(self.block()?)
                } else {
                    None
                };
                StmtKind::If {
                    cond,
                    then_block,
                    else_block,
                }
            }
            TokenKind::While => {
                self.advance();
                self.expect(&TokenKind::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                StmtKind::While {
                    cond,
                    body: self.block()?,
                }
            }
            TokenKind::Return => {
                self.advance();
                let value = if self.peek() == &TokenKind::Semi {
                    None
                } else {
                    Some(self.expr()?)
                };
                self.expect(&TokenKind::Semi, "`;`")?;
                StmtKind::Return(value)
            }
            TokenKind::Print => {
                self.advance();
                self.expect(&TokenKind::LParen, "`(`")?;
                let e = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                self.expect(&TokenKind::Semi, "`;`")?;
                StmtKind::Print(e)
            }
            k if Self::is_type_start(k)
                && (!matches!(k, TokenKind::Ident(_))
                    || matches!(self.peek_at(1), TokenKind::Ident(_))) =>
            {
                let ty = self.type_ref()?;
                let name = self.ident()?;
                let init = if self.eat(&TokenKind::Assign) {
                    Some(self.expr()?)
                } else {
                    None
                };
                self.expect(&TokenKind::Semi, "`;`")?;
                StmtKind::VarDecl { ty, name, init }
            }
            _ => {
                let e = self.expr()?;
                if self.peek() == &TokenKind::Assign {
                    if !matches!(e.kind, ExprKind::Var(_) | ExprKind::Field { .. }) {
                        return self.error("`;`");
                    }
                    self.advance();
                    let rhs = self.expr()?;
                    self.expect(&TokenKind::Semi, "`;`")?;
                    match rhs.kind {
                        ExprKind::Clone(inner) => StmtKind::Assign {
                            target: e,
                            value: *inner,
                            mode: AssignMode::Content,
                        },
                        kind => StmtKind::Assign {
                            target: e,
                            value: Expr {
                                id: rhs.id,
                                pos: rhs.pos,
                                kind,
                            },
                            mode: AssignMode::Reference,
                        },
                    }
                } else {
                    self.expect(&TokenKind::Semi, "`;`")?;
                    StmtKind::Expr(e)
                }
            }
        };
        Ok(Stmt {
            id: NodeId::default(),
            pos,
            kind,
        })
    }

    fn binary_op(kind: &TokenKind) -> Option<BinaryOp> {
        Some(match kind {
            TokenKind::OrOr => BinaryOp::Or,
            TokenKind::AndAnd => BinaryOp::And,
            TokenKind::EqEq => BinaryOp::Eq,
            TokenKind::NotEq => BinaryOp::Ne,
            TokenKind::Lt => BinaryOp::Lt,
            TokenKind::Le => BinaryOp::Le,
            TokenKind::Gt => BinaryOp::Gt,
            TokenKind::Ge => BinaryOp::Ge,
            TokenKind::Plus => BinaryOp::Add,
            TokenKind::Minus => BinaryOp::Sub,
            TokenKind::Star => BinaryOp::Mul,
            TokenKind::Slash => BinaryOp::Div,
            TokenKind::Percent => BinaryOp::Rem,
            _ => return None,
        })
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        self.binary(1)
    }

    /// Precedence climbing; all binary operators are left-associative.
    fn binary(&mut self, min_prec: u8) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while let Some(op) = Self::binary_op(self.peek()) {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            let pos = self.advance().pos;
            let rhs = self.binary(prec + 1)?;
            lhs = Expr::new(
                pos,
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
            );
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        let op = match self.peek() {
            TokenKind::Minus => UnaryOp::Neg,
            TokenKind::Bang => UnaryOp::Not,
            _ => return self.postfix(),
        };
        let pos = self.advance().pos;
        let operand = self.unary()?;
        Ok(Expr::new(
            pos,
            ExprKind::Unary {
                op,
                operand: Box::new(operand),
            },
        ))
    }

    fn postfix(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.primary()?;
        while self.peek() == &TokenKind::Dot {
            let pos = e.pos;
            self.advance();
            if self.eat(&TokenKind::Equals) {
                self.expect(&TokenKind::LParen, "`(`")?;
                let rhs = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                e = Expr::new(
                    pos,
                    ExprKind::Equals {
                        lhs: Box::new(e),
                        rhs: Box::new(rhs),
                    },
                );
                continue;
            }
            let name = self.ident()?;
            e = if self.peek() == &TokenKind::LParen {
                let args = self.args()?;
                Expr::new(
                    pos,
                    ExprKind::Call {
                        receiver: Box::new(e),
                        name,
                        args,
                    },
                )
            } else {
                Expr::new(
                    pos,
                    ExprKind::Field {
                        receiver: Box::new(e),
                        name,
                    },
                )
            };
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let pos = self.pos();
        let kind = match self.peek() {
            TokenKind::Int(v) => {
                self.advance();
                ExprKind::Int(*v)
            }
            TokenKind::Str(s) => {
                self.advance();
                ExprKind::Str(s.clone())
            }
            TokenKind::True => {
                self.advance();
                ExprKind::Bool(true)
            }
            TokenKind::False => {
                self.advance();
                ExprKind::Bool(false)
            }
            TokenKind::Null => {
                self.advance();
                ExprKind::Null
            }
            TokenKind::This => {
                self.advance();
                ExprKind::This
            }
            TokenKind::Ident(name) => {
                self.advance();
                ExprKind::Var(name.clone())
            }
            TokenKind::New => {
                self.advance();
                let class = self.ident()?;
                let args = self.args()?;
                ExprKind::New { class, args }
            }
            TokenKind::Super => {
                self.advance();
                self.expect(&TokenKind::Dot, "`.`")?;
                let name = self.ident()?;
                let args = self.args()?;
                ExprKind::SuperCall { name, args }
            }
            TokenKind::Clone => {
                self.advance();
                self.expect(&TokenKind::LParen, "`(`")?;
                let inner = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                ExprKind::Clone(Box::new(inner))
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                return Ok(inner);
            }
            _ => return self.error("expression"),
        };
        Ok(Expr::new(pos, kind))
    }
}
