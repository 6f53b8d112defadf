use std::fmt;

use super::ast::Pos;
use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(i64),
    Str(String),
    // keywords
    Class,
    Extends,
    Public,
    Protected,
    Private,
    Static,
    Void,
    IntKw,
    BoolKw,
    StringKw,
    If,
    Else,
    While,
    Return,
    New,
    This,
    Super,
    Null,
    True,
    False,
    Print,
    Clone,
    Equals,
    // punctuation
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Dot,
    Assign,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Bang,
    AndAnd,
    OrOr,
    Eof,
}

impl TokenKind {
    fn keyword(word: &str) -> Option<TokenKind> {
        Some(match word {
            "class" => TokenKind::Class,
            "extends" => TokenKind::Extends,
            "public" => TokenKind::Public,
            "protected" => TokenKind::Protected,
            "private" => TokenKind::Private,
            "static" => TokenKind::Static,
            "void" => TokenKind::Void,
            "int" => TokenKind::IntKw,
            "bool" => TokenKind::BoolKw,
            "string" => TokenKind::StringKw,
            "if" => TokenKind::If,
            "else" => TokenKind::Else,
            "while" => TokenKind::While,
            "return" => TokenKind::Return,
            "new" => TokenKind::New,
            "this" => TokenKind::This,
            "super" => TokenKind::Super,
            "null" => TokenKind::Null,
            "true" => TokenKind::True,
            "false" => TokenKind::False,
            "print" => TokenKind::Print,
            "clone" => TokenKind::Clone,
            "equals" => TokenKind::Equals,
            _ => return None,
        })
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Ident(name) => return write!(f, "identifier `{name}`"),
            TokenKind::Int(v) => return write!(f, "integer `{v}`"),
            TokenKind::Str(_) => "string literal",
            TokenKind::Class => "`class`",
            TokenKind::Extends => "`extends`",
            TokenKind::Public => "`public`",
            TokenKind::Protected => "`protected`",
            TokenKind::Private => "`private`",
            TokenKind::Static => "`static`",
            TokenKind::Void => "`void`",
            TokenKind::IntKw => "`int`",
            TokenKind::BoolKw => "`bool`",
            TokenKind::StringKw => "`string`",
            TokenKind::If => "`if`",
            TokenKind::Else => "`else`",
            TokenKind::While => "`while`",
            TokenKind::Return => "`return`",
            TokenKind::New => "`new`",
            TokenKind::This => "`this`",
            TokenKind::Super => "`super`",
            TokenKind::Null => "`null`",
            TokenKind::True => "`true`",
            TokenKind::False => "`false`",
            TokenKind::Print => "`print`",
            TokenKind::Clone => "`clone`",
            TokenKind::Equals => "`equals`",
            TokenKind::LBrace => "`{`",
            TokenKind::RBrace => "`}`",
            TokenKind::LParen => "`(`",
            TokenKind::RParen => "`)`",
            TokenKind::Semi => "`;`",
            TokenKind::Comma => "`,`",
            TokenKind::Dot => "`.`",
            TokenKind::Assign => "`=`",
            TokenKind::EqEq => "`==`",
            TokenKind::NotEq => "`!=`",
            TokenKind::Lt => "`<`",
            TokenKind::Le => "`<=`",
            TokenKind::Gt => "`>`",
            TokenKind::Ge => "`>=`",
            TokenKind::Plus => "`+`",
            TokenKind::Minus => "`-`",
            TokenKind::Star => "`*`",
            TokenKind::Slash => "`/`",
            TokenKind::Percent => "`%`",
            TokenKind::Bang => "`!`",
            TokenKind::AndAnd => "`&&`",
            TokenKind::OrOr => "`||`",
            TokenKind::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
}

/// Splits OOml text into tokens. `//` comments run to end of line. The
/// returned sequence always ends with [`TokenKind::Eof`].
pub fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    Lexer::new(text).run()
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.chars.peek() == Some(&expected) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn run(mut self) -> Result<Vec<Token>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            // whitespace and comments
            while let Some(&c) = self.chars.peek() {
                if c.is_whitespace() {
                    self.bump();
                } else if c == '/' {
                    let mut ahead = self.chars.clone();
                    ahead.next();
                    if ahead.peek() == Some(&'/') {
                        while let Some(&c) = self.chars.peek() {
                            if c == '\n' {
                                break;
                            }
                            self.bump();
                        }
                    } else {
                        break;
                    }
                } else {
                    break;
                }
            }
            let pos = Pos::new(self.line, self.col);
            let Some(c) = self.bump() else {
                out.push(Token {
                    kind: TokenKind::Eof,
                    pos,
                });
                return Ok(out);
            };
            let kind = match c {
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ';' => TokenKind::Semi,
                ',' => TokenKind::Comma,
                '.' => TokenKind::Dot,
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '%' => TokenKind::Percent,
                '=' if self.eat('=') => TokenKind::EqEq,
                '=' => TokenKind::Assign,
                '!' if self.eat('=') => TokenKind::NotEq,
                '!' => TokenKind::Bang,
                '<' if self.eat('=') => TokenKind::Le,
                '<' => TokenKind::Lt,
                '>' if self.eat('=') => TokenKind::Ge,
                '>' => TokenKind::Gt,
                '&' if self.eat('&') => TokenKind::AndAnd,
                '|' if self.eat('|') => TokenKind::OrOr,
                '"' => self.string(pos)?,
                c if c.is_ascii_digit() => self.number(c, pos)?,
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut word = String::from(c);
                    while let Some(&c) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            word.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    TokenKind::keyword(&word).unwrap_or(TokenKind::Ident(word))
                }
                other => {
                    return Err(SyntaxError::Lex {
                        pos,
                        message: format!("illegal character `{other}`"),
                    })
                }
            };
            out.push(Token { kind, pos });
        }
    }

    fn string(&mut self, start: Pos) -> Result<TokenKind, SyntaxError> {
        let mut s = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => {
                    return Err(SyntaxError::Lex {
                        pos: start,
                        message: "unterminated string literal".into(),
                    })
                }
                Some('"') => return Ok(TokenKind::Str(s)),
                Some('\\') => {
                    let esc_pos = Pos::new(self.line, self.col);
                    match self.bump() {
                        Some('n') => s.push('\n'),
                        Some('"') => s.push('"'),
                        Some('\\') => s.push('\\'),
                        Some(other) => {
                            return Err(SyntaxError::Lex {
                                pos: esc_pos,
                                message: format!("unknown escape `\\{other}`"),
                            })
                        }
                        None => {
                            return Err(SyntaxError::Lex {
                                pos: start,
                                message: "unterminated string literal".into(),
                            })
                        }
                    }
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn number(&mut self, first: char, pos: Pos) -> Result<TokenKind, SyntaxError> {
        let mut digits = String::from(first);
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        digits
            .parse::<i64>()
            .map(TokenKind::Int)
            .map_err(|_| SyntaxError::Lex {
                pos,
                message: format!("integer literal `{digits}` out of range"),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn minimal_class() {
        assert_eq!(
            kinds("class A { }"),
            vec![
                TokenKind::Class,
                TokenKind::Ident("A".into()),
                TokenKind::LBrace,
                TokenKind::RBrace,
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn minimal_statement() {
        assert_eq!(
            kinds("a = b;"),
            vec![
                TokenKind::Ident("a".into()),
                TokenKind::Assign,
                TokenKind::Ident("b".into()),
                TokenKind::Semi,
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn illegal_character() {
        let err = tokenize("int x @ 3;").unwrap_err();
        assert_eq!(
            err,
            SyntaxError::Lex {
                pos: Pos::new(1, 7),
                message: "illegal character `@`".into()
            }
        );
    }

    #[test]
    fn unterminated_string() {
        assert!(matches!(
            tokenize("print(\"abc);"),
            Err(SyntaxError::Lex { pos, .. }) if pos == Pos::new(1, 7)
        ));
    }

    #[test]
    fn escapes_and_comments() {
        assert_eq!(
            kinds("// header\n\"a\\n\\\"\\\\\" // tail"),
            vec![TokenKind::Str("a\n\"\\".into()), TokenKind::Eof]
        );
    }

    #[test]
    fn positions_track_lines() {
        let toks = tokenize("class\n  A").unwrap();
        assert_eq!(toks[1].pos, Pos::new(2, 3));
    }

    #[test]
    fn two_char_operators() {
        assert_eq!(
            kinds("<= >= == != && || < > = !"),
            vec![
                TokenKind::Le,
                TokenKind::Ge,
                TokenKind::EqEq,
                TokenKind::NotEq,
                TokenKind::AndAnd,
                TokenKind::OrOr,
                TokenKind::Lt,
                TokenKind::Gt,
                TokenKind::Assign,
                TokenKind::Bang,
                TokenKind::Eof
            ]
        );
    }
}
