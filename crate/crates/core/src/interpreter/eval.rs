use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::{ExecRequest, ExecResult, ExecStatus, RuntimeErrorKind, Value, MAX_CALL_DEPTH};
use crate::semantics::{
    CallBinding, ClassTable, CtorKey, Dispatch, FieldRef, MethodKey, Type, VarBinding,
};
use crate::syntax::*;

type FieldKey = (Rc<str>, Rc<str>);

struct Object {
    class: Rc<str>,
    fields: BTreeMap<FieldKey, Value>,
}

enum Halt {
    Error(RuntimeErrorKind, Pos),
    Budget,
}

type Eval<T> = Result<T, Halt>;

enum Flow {
    Normal,
    Return(Option<Value>),
}

#[derive(Default)]
struct Frame {
    this: Option<usize>,
    locals: Vec<(Rc<str>, Value)>,
}

impl Frame {
    fn get(&self, name: &str) -> Value {
        self.locals
            .iter()
            .rev()
            .find(|(n, _)| &**n == name)
            .map(|(_, v)| v.clone())
            .expect("checked program binds every local")
    }

    fn set(&mut self, name: &str, v: Value) {
        let slot = self
            .locals
            .iter_mut()
            .rev()
            .find(|(n, _)| &**n == name)
            .expect("checked program binds every local");
        slot.1 = v;
    }
}

struct Machine<'a> {
    table: &'a ClassTable,
    classes: HashMap<&'a str, &'a ClassDecl>,
    methods: HashMap<NodeId, &'a MethodDecl>,
    ctors: HashMap<NodeId, &'a CtorDecl>,
    objects: Vec<Object>,
    statics: HashMap<FieldKey, Value>,
    output: Vec<String>,
    steps: u64,
    budget: u64,
    depth: usize,
    names: HashMap<String, Rc<str>>,
}

pub(super) fn run(ast: &Ast, table: &ClassTable, req: &ExecRequest) -> ExecResult {
    let mut m = Machine::new(ast, table, req.step_budget);
    let outcome = m.start(req);
    ExecResult {
        status: match outcome {
            Ok(()) => ExecStatus::Completed,
            Err(Halt::Budget) => ExecStatus::BudgetExhausted,
            Err(Halt::Error(kind, pos)) => ExecStatus::RuntimeError { kind, pos },
        },
        output: m.output,
        steps_used: m.steps,
    }
}

fn default_value(t: &TypeRef) -> Value {
    match t {
        TypeRef::Int => Value::Int(0),
        TypeRef::Bool => Value::Bool(false),
        TypeRef::Str => Value::str(""),
        TypeRef::Class(_) => Value::Null,
    }
}

fn literal_type(v: &Value) -> Type {
    match v {
        Value::Int(_) => Type::Int,
        Value::Bool(_) => Type::Bool,
        Value::Str(_) => Type::Str,
        _ => Type::Null,
    }
}

impl<'a> Machine<'a> {
    fn new(ast: &'a Ast, table: &'a ClassTable, budget: u64) -> Self {
        let mut classes = HashMap::new();
        let mut methods = HashMap::new();
        let mut ctors = HashMap::new();
        for c in &ast.classes {
            classes.entry(c.name.as_str()).or_insert(c);
            for m in c.methods() {
                methods.insert(m.id, m);
            }
            for k in c.ctors() {
                ctors.insert(k.id, k);
            }
        }
        Machine {
            table,
            classes,
            methods,
            ctors,
            objects: Vec::new(),
            statics: HashMap::new(),
            output: Vec::new(),
            steps: 0,
            budget,
            depth: 0,
            names: HashMap::new(),
        }
    }

    fn intern(&mut self, s: &str) -> Rc<str> {
        if let Some(r) = self.names.get(s) {
            return r.clone();
        }
        let r: Rc<str> = Rc::from(s);
        self.names.insert(s.to_string(), r.clone());
        r
    }

    fn field_key(&mut self, f: &FieldRef) -> FieldKey {
        (self.intern(&f.class), self.intern(&f.name))
    }

    fn tick(&mut self) -> Eval<()> {
        if self.steps >= self.budget {
            return Err(Halt::Budget);
        }
        self.steps += 1;
        Ok(())
    }

    fn start(&mut self, req: &ExecRequest) -> Eval<()> {
        self.init_statics()?;
        let args: Vec<Value> = req.args.iter().map(|l| l.value()).collect();
        let arg_types: Vec<Type> = args.iter().map(literal_type).collect();
        let entry = match self
            .table
            .resolve_overload(&req.entry_class, &req.entry_method, &arg_types)
        {
            Ok(m) if m.is_static => m.key.clone(),
            _ => return Err(Halt::Error(RuntimeErrorKind::EntryNotFound, Pos::default())),
        };
        self.invoke(&entry, None, args, Pos::default())?;
        Ok(())
    }

    fn init_statics(&mut self) -> Eval<()> {
        let table = self.table;
        for class in &table.order {
            for f in &table.classes[class].own_fields {
                if f.is_static {
                    let key = (self.intern(&f.class), self.intern(&f.name));
                    self.statics.insert(key, default_value(&f.ty));
                }
            }
        }
        for class in &table.order {
            let decl = self.classes[class.as_str()];
            for f in decl.fields() {
                if let (true, Some(init)) = (f.is_static, &f.init) {
                    let mut frame = Frame::default();
                    let v = self.expr(&mut frame, init)?;
                    let key = (self.intern(class), self.intern(&f.name));
                    self.statics.insert(key, v);
                }
            }
        }
        Ok(())
    }

    fn enter(&mut self, pos: Pos) -> Eval<()> {
        if self.depth >= MAX_CALL_DEPTH {
            return Err(Halt::Error(RuntimeErrorKind::StackOverflow, pos));
        }
        self.depth += 1;
        Ok(())
    }

    fn invoke(
        &mut self,
        key: &MethodKey,
        this: Option<usize>,
        args: Vec<Value>,
        pos: Pos,
    ) -> Eval<Option<Value>> {
        let sig = self.table.method(key).expect("bound method exists");
        let decl = self.methods[&sig.node];
        self.enter(pos)?;
        let mut frame = Frame {
            this: if sig.is_static { None } else { this },
            locals: Vec::with_capacity(decl.params.len()),
        };
        for (p, v) in decl.params.iter().zip(args) {
            let name = self.intern(&p.name);
            frame.locals.push((name, v));
        }
        let flow = self.block(&mut frame, &decl.body)?;
        self.depth -= 1;
        Ok(match flow {
            Flow::Return(v) => v,
            Flow::Normal => None,
        })
    }

    fn allocate(&mut self, class: &str) -> usize {
        let table = self.table;
        let mut fields = BTreeMap::new();
        for c in table.lineage(class) {
            for f in &table.classes[c].own_fields {
                if !f.is_static {
                    let key = (self.intern(&f.class), self.intern(&f.name));
                    fields.insert(key, default_value(&f.ty));
                }
            }
        }
        let class = self.intern(class);
        self.objects.push(Object { class, fields });
        self.objects.len() - 1
    }

    /// Parent constructor, then own field initializers, then the body.
    fn construct(&mut self, key: &CtorKey, obj: usize, args: Vec<Value>, pos: Pos) -> Eval<()> {
        let table = self.table;
        let info = &table.classes[&key.class];
        let sig = info
            .ctors
            .iter()
            .find(|c| c.key == *key)
            .expect("bound constructor exists");
        self.enter(pos)?;
        let mut frame = Frame {
            this: Some(obj),
            locals: Vec::new(),
        };
        let decl = sig.node.map(|id| self.ctors[&id]);
        if let Some(decl) = decl {
            for (p, v) in decl.params.iter().zip(args) {
                let name = self.intern(&p.name);
                frame.locals.push((name, v));
            }
        }
        let parent_at = decl.map_or(info.node, |d| d.id);
        if let Some(parent) = table.bindings.super_ctors.get(&parent_at) {
            let mut parent_args = Vec::new();
            let mut call_pos = pos;
            if let Some(super_args) = decl.and_then(|d| d.super_call.as_ref()) {
                for a in super_args {
                    parent_args.push(self.expr(&mut frame, a)?);
                }
                call_pos = decl.unwrap().pos;
            }
            self.construct(parent, obj, parent_args, call_pos)?;
        }
        let class_decl = self.classes[key.class.as_str()];
        for f in class_decl.fields() {
            if let (false, Some(init)) = (f.is_static, &f.init) {
                let v = self.expr(&mut Frame { this: Some(obj), locals: Vec::new() }, init)?;
                let fk = (self.intern(&key.class), self.intern(&f.name));
                self.objects[obj].fields.insert(fk, v);
            }
        }
        if let Some(decl) = decl {
            self.block(&mut frame, &decl.body)?;
        }
        self.depth -= 1;
        Ok(())
    }

    fn block(&mut self, frame: &mut Frame, b: &Block) -> Eval<Flow> {
        let mark = frame.locals.len();
        let mut flow = Flow::Normal;
        for s in &b.stmts {
            flow = self.stmt(frame, s)?;
            if matches!(flow, Flow::Return(_)) {
                break;
            }
        }
        frame.locals.truncate(mark);
        Ok(flow)
    }

    fn stmt(&mut self, frame: &mut Frame, s: &Stmt) -> Eval<Flow> {
        self.tick()?;
        match &s.kind {
            StmtKind::VarDecl { ty, name, init } => {
                let v = match init {
                    Some(e) => self.expr(frame, e)?,
                    None => default_value(ty),
                };
                let name = self.intern(name);
                frame.locals.push((name, v));
            }
            StmtKind::Assign {
                target,
                value,
                mode,
            } => {
                let mut v = self.expr(frame, value)?;
                if *mode == AssignMode::Content {
                    v = self.clone_value(v, value.pos)?;
                }
                self.store(frame, target, v)?;
            }
            StmtKind::If {
                cond,
                then_block,
                else_block,
            } => {
                if self.truth(frame, cond)? {
                    return self.block(frame, then_block);
                } else if let Some(e) = else_block {
                    return self.block(frame, e);
                }
            }
            StmtKind::While { cond, body } => {
                while self.truth(frame, cond)? {
                    if let Flow::Return(v) = self.block(frame, body)? {
                        return Ok(Flow::Return(v));
                    }
                }
            }
            StmtKind::Return(e) => {
                let v = match e {
                    Some(e) => Some(self.expr(frame, e)?),
                    None => None,
                };
                return Ok(Flow::Return(v));
            }
            StmtKind::Expr(e) => {
                self.eval(frame, e)?;
            }
            StmtKind::Print(e) => {
                let v = self.expr(frame, e)?;
                let line = self.render(&v);
                self.output.push(line);
            }
            StmtKind::Block(b) => return self.block(frame, b),
        }
        Ok(Flow::Normal)
    }

    fn truth(&mut self, frame: &mut Frame, e: &Expr) -> Eval<bool> {
        match self.expr(frame, e)? {
            Value::Bool(b) => Ok(b),
            v => unreachable!("condition evaluated to {v:?}"),
        }
    }

    fn store(&mut self, frame: &mut Frame, target: &Expr, v: Value) -> Eval<()> {
        let bindings = &self.table.bindings;
        match &target.kind {
            ExprKind::Var(name) => match &bindings.vars[&target.id] {
                VarBinding::Local => frame.set(name, v),
                VarBinding::Field(f) => {
                    let key = self.field_key(f);
                    if f.is_static {
                        self.statics.insert(key, v);
                    } else {
                        let obj = frame.this.expect("instance context");
                        self.objects[obj].fields.insert(key, v);
                    }
                }
                VarBinding::Class(_) => unreachable!("class name as assignment target"),
            },
            ExprKind::Field { receiver, .. } => {
                let f = bindings.fields[&target.id].clone();
                let key = self.field_key(&f);
                if f.is_static {
                    self.static_receiver(frame, receiver)?;
                    self.statics.insert(key, v);
                } else {
                    let obj = self.object(frame, receiver, target.pos)?;
                    self.objects[obj].fields.insert(key, v);
                }
            }
            _ => unreachable!("assignment target is a place"),
        }
        Ok(())
    }

    fn expr(&mut self, frame: &mut Frame, e: &Expr) -> Eval<Value> {
        Ok(self.eval(frame, e)?.unwrap_or(Value::Null))
    }

    fn object(&mut self, frame: &mut Frame, e: &Expr, pos: Pos) -> Eval<usize> {
        match self.expr(frame, e)? {
            Value::Obj(h) => Ok(h),
            _ => Err(Halt::Error(RuntimeErrorKind::NullAccess, pos)),
        }
    }

    /// Evaluates a receiver of a static member for its effects, unless it is
    /// a class name.
    fn static_receiver(&mut self, frame: &mut Frame, e: &Expr) -> Eval<()> {
        let is_class = matches!(
            self.table.bindings.vars.get(&e.id),
            Some(VarBinding::Class(_))
        );
        if !is_class {
            self.eval(frame, e)?;
        }
        Ok(())
    }

    fn args(&mut self, frame: &mut Frame, args: &[Expr]) -> Eval<Vec<Value>> {
        let mut out = Vec::with_capacity(args.len());
        for a in args {
            out.push(self.expr(frame, a)?);
        }
        Ok(out)
    }

    fn eval(&mut self, frame: &mut Frame, e: &Expr) -> Eval<Option<Value>> {
        self.tick()?;
        let table = self.table;
        let v = match &e.kind {
            ExprKind::Int(n) => Value::Int(*n),
            ExprKind::Bool(b) => Value::Bool(*b),
            ExprKind::Str(s) => Value::str(s),
            ExprKind::Null => Value::Null,
            ExprKind::This => Value::Obj(frame.this.expect("instance context")),
            ExprKind::Var(name) => match &table.bindings.vars[&e.id] {
                VarBinding::Local => frame.get(name),
                VarBinding::Field(f) => {
                    let key = self.field_key(f);
                    if f.is_static {
                        self.statics[&key].clone()
                    } else {
                        let obj = frame.this.expect("instance context");
                        self.objects[obj].fields[&key].clone()
                    }
                }
                VarBinding::Class(_) => unreachable!("class name used as a value"),
            },
            ExprKind::Field { receiver, .. } => {
                let f = &table.bindings.fields[&e.id];
                let key = self.field_key(f);
                if f.is_static {
                    self.static_receiver(frame, receiver)?;
                    self.statics[&key].clone()
                } else {
                    let obj = self.object(frame, receiver, e.pos)?;
                    self.objects[obj].fields[&key].clone()
                }
            }
            ExprKind::Call { receiver, args, .. } => {
                let CallBinding { method, dispatch } = &table.bindings.calls[&e.id];
                if *dispatch == Dispatch::Static {
                    self.static_receiver(frame, receiver)?;
                    let args = self.args(frame, args)?;
                    return self.invoke(method, None, args, e.pos);
                }
                let obj = self.object(frame, receiver, e.pos)?;
                let args = self.args(frame, args)?;
                let sig = table.method(method).expect("bound method exists");
                let target = if sig.access == Access::Private {
                    sig
                } else {
                    let class = self.objects[obj].class.clone();
                    table
                        .dispatch(&class, &method.name, &method.params)
                        .expect("dispatch finds at least the bound method")
                };
                return self.invoke(&target.key, Some(obj), args, e.pos);
            }
            ExprKind::SuperCall { args, .. } => {
                let CallBinding { method, .. } = &table.bindings.calls[&e.id];
                let args = self.args(frame, args)?;
                return self.invoke(method, frame.this, args, e.pos);
            }
            ExprKind::New { class, args } => {
                let key = &table.bindings.news[&e.id];
                let args = self.args(frame, args)?;
                let obj = self.allocate(class);
                self.construct(key, obj, args, e.pos)?;
                Value::Obj(obj)
            }
            ExprKind::Binary { op, lhs, rhs } => self.binary(frame, *op, lhs, rhs, e.pos)?,
            ExprKind::Unary { op, operand } => match (op, self.expr(frame, operand)?) {
                (UnaryOp::Neg, Value::Int(n)) => Value::Int(n.wrapping_neg()),
                (UnaryOp::Not, Value::Bool(b)) => Value::Bool(!b),
                (op, v) => unreachable!("{op:?} applied to {v:?}"),
            },
            ExprKind::Clone(inner) => {
                let v = self.expr(frame, inner)?;
                self.clone_value(v, e.pos)?
            }
            ExprKind::Equals { lhs, rhs } => {
                let l = self.expr(frame, lhs)?;
                let r = self.expr(frame, rhs)?;
                match (l, r) {
                    (Value::Obj(a), Value::Obj(b)) => {
                        let (a, b) = (&self.objects[a], &self.objects[b]);
                        Value::Bool(a.class == b.class && a.fields == b.fields)
                    }
                    _ => return Err(Halt::Error(RuntimeErrorKind::EqualsOnNull, e.pos)),
                }
            }
        };
        Ok(Some(v))
    }

    fn clone_value(&mut self, v: Value, pos: Pos) -> Eval<Value> {
        match v {
            Value::Obj(h) => {
                let copy = Object {
                    class: self.objects[h].class.clone(),
                    fields: self.objects[h].fields.clone(),
                };
                self.objects.push(copy);
                Ok(Value::Obj(self.objects.len() - 1))
            }
            _ => Err(Halt::Error(RuntimeErrorKind::CloneOfNull, pos)),
        }
    }

    fn binary(&mut self, frame: &mut Frame, op: BinaryOp, lhs: &Expr, rhs: &Expr, pos: Pos) -> Eval<Value> {
        match op {
            BinaryOp::And => {
                return Ok(Value::Bool(self.truth(frame, lhs)? && self.truth(frame, rhs)?))
            }
            BinaryOp::Or => {
                return Ok(Value::Bool(self.truth(frame, lhs)? || self.truth(frame, rhs)?))
            }
            _ => {}
        }
        let l = self.expr(frame, lhs)?;
        let r = self.expr(frame, rhs)?;
        if op == BinaryOp::Add && (matches!(l, Value::Str(_)) || matches!(r, Value::Str(_))) {
            let s = format!("{}{}", self.render(&l), self.render(&r));
            return Ok(Value::str(&s));
        }
        match op {
            BinaryOp::Eq => return Ok(Value::Bool(l == r)),
            BinaryOp::Ne => return Ok(Value::Bool(l != r)),
            _ => {}
        }
        let (Value::Int(a), Value::Int(b)) = (&l, &r) else {
            unreachable!("{op:?} applied to {l:?} and {r:?}")
        };
        let (a, b) = (*a, *b);
        Ok(match op {
            BinaryOp::Add => Value::Int(a.wrapping_add(b)),
            BinaryOp::Sub => Value::Int(a.wrapping_sub(b)),
            BinaryOp::Mul => Value::Int(a.wrapping_mul(b)),
            BinaryOp::Div | BinaryOp::Rem if b == 0 => {
                return Err(Halt::Error(RuntimeErrorKind::DivisionByZero, pos))
            }
            BinaryOp::Div => Value::Int(a.wrapping_div(b)),
            BinaryOp::Rem => Value::Int(a.wrapping_rem(b)),
            BinaryOp::Lt => Value::Bool(a < b),
            BinaryOp::Le => Value::Bool(a <= b),
            BinaryOp::Gt => Value::Bool(a > b),
            BinaryOp::Ge => Value::Bool(a >= b),
            _ => unreachable!(),
        })
    }

    fn render(&self, v: &Value) -> String {
        match v {
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Str(s) => s.to_string(),
            Value::Null => "null".to_string(),
            Value::Obj(h) => format!("<{}@{}>", self.objects[*h].class, h),
        }
    }
}
