//! Class table construction: inheritance, member tables, hiding, overriding.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::types::Type;
use super::{Bindings, Diagnostic};
use crate::syntax::{Access, Ast, ClassDecl, NodeId, Pos, TypeRef};

/// Identifies a method by declaring class and signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MethodKey {
    pub class: String,
    pub name: String,
    pub params: Vec<TypeRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CtorKey {
    pub class: String,
    pub params: Vec<TypeRef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSig {
    pub class: String,
    pub name: String,
    pub ty: TypeRef,
    pub access: Access,
    pub is_static: bool,
    pub node: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodSig {
    pub key: MethodKey,
    pub ret: Option<TypeRef>,
    pub access: Access,
    pub is_static: bool,
    pub node: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtorSig {
    pub key: CtorKey,
    pub access: Access,
    /// `None` for the synthesized default constructor.
    pub node: Option<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub parent: Option<String>,
    pub node: NodeId,
    pub own_fields: Vec<FieldSig>,
    /// Non-private ancestor fields reachable by name and not shadowed here.
    pub inherited_visible_fields: Vec<FieldSig>,
    /// Ancestor fields whose name collides with one of `own_fields`.
    pub hidden_fields: Vec<FieldSig>,
    /// Own methods grouped into overload sets, each in source order.
    pub methods: BTreeMap<String, Vec<MethodSig>>,
    /// Own instance method -> the nearest ancestor method it overrides.
    pub overrides: BTreeMap<MethodKey, MethodKey>,
    pub ctors: Vec<CtorSig>,
}

impl ClassInfo {
    pub fn own_methods(&self) -> impl Iterator<Item = &MethodSig> {
        self.methods.values().flatten()
    }

    pub fn is_overloaded(&self, name: &str) -> bool {
        self.methods.get(name).is_some_and(|set| set.len() > 1)
    }
}

/// Resolved class hierarchy plus the per-node resolution side tables that
/// the interpreter and mutator consume.
#[derive(Debug, Clone, Default)]
pub struct ClassTable {
    /// Class names in declaration order.
    pub order: Vec<String>,
    pub classes: BTreeMap<String, ClassInfo>,
    pub bindings: Bindings,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveError {
    NotFound,
    Ambiguous(usize),
}

/// Two-tier overload choice: an exact match wins; otherwise exactly one
/// candidate applicable under widening (subclass to superclass, `null` to any
/// class) wins; several applicable is an ambiguity.
pub fn pick_overload<'a, T>(
    table: &ClassTable,
    candidates: &[&'a T],
    params: impl Fn(&T) -> &[TypeRef],
    args: &[Type],
) -> Result<&'a T, ResolveError> {
    let arity: Vec<&'a T> = candidates
        .iter()
        .copied()
        .filter(|c| params(c).len() == args.len())
        .collect();
    if let Some(exact) = arity.iter().find(|c| {
        params(c)
            .iter()
            .zip(args)
            .all(|(p, a)| &Type::from(p) == a)
    }) {
        return Ok(exact);
    }
    let applicable: Vec<&'a T> = arity
        .into_iter()
        .filter(|c| {
            params(c)
                .iter()
                .zip(args)
                .all(|(p, a)| table.assignable(a, &Type::from(p)))
        })
        .collect();
    match applicable.len() {
        0 => Err(ResolveError::NotFound),
        1 => Ok(applicable[0]),
        n => Err(ResolveError::Ambiguous(n)),
    }
}

impl ClassTable {
    pub fn get(&self, name: &str) -> Option<&ClassInfo> {
        self.classes.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.classes.contains_key(name)
    }

    pub fn parent(&self, name: &str) -> Option<&str> {
        self.classes.get(name)?.parent.as_deref()
    }

    /// Strict ancestors, nearest first.
    pub fn ancestors(&self, name: &str) -> Vec<&str> {
        let mut out = Vec::new();
        let mut cur = self.parent(name);
        while let Some(c) = cur {
            out.push(c);
            cur = self.parent(c);
        }
        out
    }

    /// `name` followed by its ancestors.
    pub fn lineage<'a>(&'a self, name: &'a str) -> Vec<&'a str> {
        let mut out = vec![name];
        out.extend(self.ancestors(name));
        out
    }

    /// Reflexive subclass test.
    pub fn is_subclass(&self, sub: &str, sup: &str) -> bool {
        sub == sup || self.ancestors(sub).contains(&sup)
    }

    /// All transitive subclasses in declaration order.
    pub fn subclasses(&self, name: &str) -> Vec<&str> {
        self.order
            .iter()
            .map(String::as_str)
            .filter(|c| *c != name && self.is_subclass(c, name))
            .collect()
    }

    pub fn assignable(&self, from: &Type, to: &Type) -> bool {
        match (from, to) {
            (a, b) if a == b => true,
            (Type::Null, Type::Class(_)) => true,
            (Type::Class(a), Type::Class(b)) => self.is_subclass(a, b),
            _ => false,
        }
    }

    pub fn type_exists(&self, t: &TypeRef) -> bool {
        match t {
            TypeRef::Class(n) => self.contains(n),
            _ => true,
        }
    }

    /// Nearest declaration of field `name` visible by lookup from `class`.
    pub fn lookup_field(&self, class: &str, name: &str) -> Option<&FieldSig> {
        self.lineage(class)
            .into_iter()
            .filter_map(|c| self.classes.get(c))
            .find_map(|info| info.own_fields.iter().find(|f| f.name == name))
    }

    /// Every method named `name` callable on `class`: own methods plus
    /// inherited ones whose signature is not redeclared lower down.
    pub fn methods_named(&self, class: &str, name: &str) -> Vec<&MethodSig> {
        let mut seen: BTreeSet<&[TypeRef]> = BTreeSet::new();
        let mut out = Vec::new();
        for c in self.lineage(class) {
            let Some(info) = self.classes.get(c) else {
                continue;
            };
            for m in info.methods.get(name).into_iter().flatten() {
                if seen.insert(&m.key.params) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// All methods callable on `class`, nearest declaration per signature.
    pub fn all_methods(&self, class: &str) -> Vec<&MethodSig> {
        let mut seen: BTreeSet<(&str, &[TypeRef])> = BTreeSet::new();
        let mut out = Vec::new();
        for c in self.lineage(class) {
            let Some(info) = self.classes.get(c) else {
                continue;
            };
            for m in info.own_methods() {
                if seen.insert((&m.key.name, &m.key.params)) {
                    out.push(m);
                }
            }
        }
        out
    }

    pub fn method(&self, key: &MethodKey) -> Option<&MethodSig> {
        self.classes
            .get(&key.class)?
            .methods
            .get(&key.name)?
            .iter()
            .find(|m| m.key.params == key.params)
    }

    /// Implementation selected by dynamic dispatch on `runtime_class`.
    pub fn dispatch(&self, runtime_class: &str, name: &str, params: &[TypeRef]) -> Option<&MethodSig> {
        self.lineage(runtime_class).into_iter().find_map(|c| {
            self.classes
                .get(c)?
                .methods
                .get(name)?
                .iter()
                .find(|m| m.key.params == params)
        })
    }

    /// Access rule: private is the declaring class only, protected is the
    /// declaring class and its subclasses, default and public are
    /// program-wide.
    pub fn accessible(&self, declaring: &str, access: Access, from: &str) -> bool {
        match access {
            Access::Public | Access::Default => true,
            Access::Private => declaring == from,
            Access::Protected => self.is_subclass(from, declaring),
        }
    }

    pub fn resolve_overload(
        &self,
        class: &str,
        name: &str,
        args: &[Type],
    ) -> Result<&MethodSig, ResolveError> {
        let cands = self.methods_named(class, name);
        pick_overload(self, &cands, |m| &m.key.params, args)
    }

    pub fn resolve_ctor(&self, class: &str, args: &[Type]) -> Result<&CtorSig, ResolveError> {
        let Some(info) = self.classes.get(class) else {
            return Err(ResolveError::NotFound);
        };
        let cands: Vec<&CtorSig> = info.ctors.iter().collect();
        pick_overload(self, &cands, |c| &c.key.params, args)
    }
}

fn err(diags: &mut Vec<Diagnostic>, pos: Pos, message: impl Into<String>) {
    diags.push(Diagnostic::error(pos, message));
}

/// Builds the declaration-level table and reports declaration errors.
pub(super) fn build(ast: &Ast, diags: &mut Vec<Diagnostic>) -> ClassTable {
    let mut table = ClassTable::default();
    let mut decls: HashMap<&str, &ClassDecl> = HashMap::new();

    for class in &ast.classes {
        if decls.contains_key(class.name.as_str()) {
            err(diags, class.pos, format!("duplicate class `{}`", class.name));
            continue;
        }
        decls.insert(&class.name, class);
        table.order.push(class.name.clone());
    }

    // parents, with unknown supers and cycles cut
    let mut parents: HashMap<&str, Option<&str>> = HashMap::new();
    for name in &table.order {
        let class = decls[name.as_str()];
        let parent = match &class.super_name {
            Some(sup) if !decls.contains_key(sup.as_str()) => {
                err(diags, class.pos, format!("unknown superclass `{sup}`"));
                None
            }
            Some(sup) => Some(sup.as_str()),
            None => None,
        };
        parents.insert(name, parent);
    }
    let mut in_cycle = BTreeSet::new();
    for name in &table.order {
        let mut cur = parents[name.as_str()];
        let mut steps = 0;
        while let Some(c) = cur {
            if c == name {
                in_cycle.insert(name.clone());
                break;
            }
            steps += 1;
            if steps > table.order.len() {
                break;
            }
            cur = parents[c];
        }
    }
    for name in &in_cycle {
        err(
            diags,
            decls[name.as_str()].pos,
            format!("inheritance cycle involving `{name}`"),
        );
        parents.insert(name, None);
    }
    // classes whose chain runs into a cycle keep their (cycle-free) edge; the
    // cycle members themselves were cut above

    for name in &table.order {
        let class = decls[name.as_str()];
        let info = own_members(class, parents[name.as_str()], &decls, diags);
        table.classes.insert(name.clone(), info);
    }

    // inheritance-derived facts, computed once every class is present
    for name in table.order.clone() {
        let ancestors: Vec<String> = table.ancestors(&name).iter().map(|s| s.to_string()).collect();
        let mut hidden = Vec::new();
        let mut inherited = Vec::new();
        let mut seen_names: BTreeSet<String> = BTreeSet::new();
        let mut overrides = BTreeMap::new();
        let info = &table.classes[&name];
        for f in &info.own_fields {
            seen_names.insert(f.name.clone());
        }
        for anc in &ancestors {
            for f in &table.classes[anc].own_fields {
                if info.own_fields.iter().any(|o| o.name == f.name) {
                    hidden.push(f.clone());
                } else if seen_names.insert(f.name.clone()) && f.access != Access::Private {
                    inherited.push(f.clone());
                }
            }
        }
        for m in info.own_methods() {
            let overridden = ancestors.iter().find_map(|anc| {
                table.classes[anc]
                    .methods
                    .get(&m.key.name)?
                    .iter()
                    .find(|p| p.key.params == m.key.params && p.access != Access::Private)
            });
            let Some(parent_m) = overridden else {
                continue;
            };
            if parent_m.is_static != m.is_static {
                err(
                    diags,
                    method_pos(ast, m.node),
                    format!(
                        "method `{}` cannot change static-ness of `{}.{}`",
                        m.key.name, parent_m.key.class, parent_m.key.name
                    ),
                );
                continue;
            }
            if m.is_static {
                continue;
            }
            if parent_m.ret != m.ret {
                err(
                    diags,
                    method_pos(ast, m.node),
                    format!(
                        "method `{}` overrides `{}.{}` with a different return type",
                        m.key.name, parent_m.key.class, parent_m.key.name
                    ),
                );
            }
            if m.access.rank() < parent_m.access.rank() {
                err(
                    diags,
                    method_pos(ast, m.node),
                    format!(
                        "method `{}` cannot reduce visibility of `{}.{}` from {} to {}",
                        m.key.name,
                        parent_m.key.class,
                        parent_m.key.name,
                        parent_m.access.label(),
                        m.access.label()
                    ),
                );
            }
            overrides.insert(m.key.clone(), parent_m.key.clone());
        }
        let info = table.classes.get_mut(&name).unwrap();
        info.hidden_fields = hidden;
        info.inherited_visible_fields = inherited;
        info.overrides = overrides;
    }
    table
}

fn method_pos(ast: &Ast, id: NodeId) -> Pos {
    crate::syntax::visit::position_of(ast, id).unwrap_or_default()
}

fn own_members(
    class: &ClassDecl,
    parent: Option<&str>,
    decls: &HashMap<&str, &ClassDecl>,
    diags: &mut Vec<Diagnostic>,
) -> ClassInfo {
    let known = |t: &TypeRef| match t {
        TypeRef::Class(n) => decls.contains_key(n.as_str()),
        _ => true,
    };
    let mut info = ClassInfo {
        name: class.name.clone(),
        parent: parent.map(str::to_string),
        node: class.id,
        own_fields: Vec::new(),
        inherited_visible_fields: Vec::new(),
        hidden_fields: Vec::new(),
        methods: BTreeMap::new(),
        overrides: BTreeMap::new(),
        ctors: Vec::new(),
    };
    for f in class.fields() {
        if !known(&f.ty) {
            err(diags, f.pos, format!("unknown type `{}`", f.ty));
        }
        if info.own_fields.iter().any(|o| o.name == f.name) {
            err(
                diags,
                f.pos,
                format!("duplicate field `{}` in class `{}`", f.name, class.name),
            );
            continue;
        }
        info.own_fields.push(FieldSig {
            class: class.name.clone(),
            name: f.name.clone(),
            ty: f.ty.clone(),
            access: f.access,
            is_static: f.is_static,
            node: f.id,
        });
    }
    for m in class.methods() {
        if let Some(t) = &m.ret {
            if !known(t) {
                err(diags, m.pos, format!("unknown type `{t}`"));
            }
        }
        check_params(&m.params, &known, diags);
        let params = m.param_types();
        let set = info.methods.entry(m.name.clone()).or_default();
        if set.iter().any(|o| o.key.params == params) {
            err(
                diags,
                m.pos,
                format!(
                    "duplicate method `{}({})` in class `{}`",
                    m.name,
                    join_types(&params),
                    class.name
                ),
            );
            continue;
        }
        set.push(MethodSig {
            key: MethodKey {
                class: class.name.clone(),
                name: m.name.clone(),
                params,
            },
            ret: m.ret.clone(),
            access: m.access,
            is_static: m.is_static,
            node: m.id,
        });
    }
    for c in class.ctors() {
        check_params(&c.params, &known, diags);
        let params = c.param_types();
        if info.ctors.iter().any(|o| o.key.params == params) {
            err(
                diags,
                c.pos,
                format!(
                    "duplicate constructor `{}({})`",
                    class.name,
                    join_types(&params)
                ),
            );
            continue;
        }
        info.ctors.push(CtorSig {
            key: CtorKey {
                class: class.name.clone(),
                params,
            },
            access: c.access,
            node: Some(c.id),
        });
    }
    if class.ctors().next().is_none() {
        info.ctors.push(CtorSig {
            key: CtorKey {
                class: class.name.clone(),
                params: Vec::new(),
            },
            access: Access::Public,
            node: None,
        });
    }
    info
}

fn check_params(
    params: &[crate::syntax::Param],
    known: &dyn Fn(&TypeRef) -> bool,
    diags: &mut Vec<Diagnostic>,
) {
    for (i, p) in params.iter().enumerate() {
        if !known(&p.ty) {
            err(diags, p.pos, format!("unknown type `{}`", p.ty));
        }
        if params[..i].iter().any(|q| q.name == p.name) {
            err(diags, p.pos, format!("duplicate parameter `{}`", p.name));
        }
    }
}

pub(crate) fn join_types(ts: &[TypeRef]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}
