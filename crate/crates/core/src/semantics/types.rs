use std::fmt;

use crate::syntax::TypeRef;

/// Static type of an expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Int,
    Bool,
    Str,
    /// Type of the `null` literal; assignable to every class type.
    Null,
    /// Result of calling a `void` method.
    Void,
    Class(String),
}

impl Type {
    pub fn is_reference(&self) -> bool {
        matches!(self, Type::Null | Type::Class(_))
    }

    pub fn class_name(&self) -> Option<&str> {
        match self {
            Type::Class(n) => Some(n),
            _ => None,
        }
    }

    pub fn to_type_ref(&self) -> Option<TypeRef> {
        Some(match self {
            Type::Int => TypeRef::Int,
            Type::Bool => TypeRef::Bool,
            Type::Str => TypeRef::Str,
            Type::Class(n) => TypeRef::Class(n.clone()),
            Type::Null | Type::Void => return None,
        })
    }
}

impl From<&TypeRef> for Type {
    fn from(t: &TypeRef) -> Self {
        match t {
            TypeRef::Int => Type::Int,
            TypeRef::Bool => Type::Bool,
            TypeRef::Str => Type::Str,
            TypeRef::Class(n) => Type::Class(n.clone()),
        }
    }
}

impl From<Option<&TypeRef>> for Type {
    fn from(t: Option<&TypeRef>) -> Self {
        t.map(Type::from).unwrap_or(Type::Void)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Int => f.write_str("int"),
            Type::Bool => f.write_str("bool"),
            Type::Str => f.write_str("string"),
            Type::Null => f.write_str("null"),
            Type::Void => f.write_str("void"),
            Type::Class(n) => f.write_str(n),
        }
    }
}
