//! Mutant generation for the 27 operators: three statement-level operators
//! and 24 class-level ones in six groups.
//!
//! Enumeration is deterministic: candidates are ordered by target node id
//! (pre-order), then by operator catalog order, then by each operator's own
//! sub-order. Every candidate is applied and analyzed; those that fail to
//! compile are kept aside as stillborn.

mod enumerate;
mod patch;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use similar::TextDiff;

pub use patch::{MoveTo, Patch, PatchError};

use crate::semantics::{compiles, ClassTable};
use crate::syntax::visit::position_of;
use crate::syntax::{pretty_print, Ast, NodeId, Pos};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorGroup {
    Statement,
    InfoHiding,
    Inheritance,
    Polymorphism,
    Overloading,
    JavaSpecific,
    CommonMistakes,
}

impl OperatorGroup {
    pub fn name(self) -> &'static str {
        match self {
            OperatorGroup::Statement => "statement",
            OperatorGroup::InfoHiding => "infoHiding",
            OperatorGroup::Inheritance => "inheritance",
            OperatorGroup::Polymorphism => "polymorphism",
            OperatorGroup::Overloading => "overloading",
            OperatorGroup::JavaSpecific => "javaSpecific",
            OperatorGroup::CommonMistakes => "commonMistakes",
        }
    }
}

impl fmt::Display for OperatorGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorId {
    ORO,
    EMO,
    SMO,
    AMC,
    IHD,
    IHI,
    IOD,
    IOP,
    IOR,
    ISK,
    IPC,
    PNC,
    PMD,
    PPD,
    PRV,
    OMR,
    OMD,
    OAO,
    OAN,
    JTD,
    JSC,
    JID,
    JDC,
    EOA,
    EOC,
    EAM,
    EMM,
}

impl OperatorId {
    pub const ALL: [OperatorId; 27] = [
        OperatorId::ORO,
        OperatorId::EMO,
        OperatorId::SMO,
        OperatorId::AMC,
        OperatorId::IHD,
        OperatorId::IHI,
        OperatorId::IOD,
        OperatorId::IOP,
        OperatorId::IOR,
        OperatorId::ISK,
        OperatorId::IPC,
        OperatorId::PNC,
        OperatorId::PMD,
        OperatorId::PPD,
        OperatorId::PRV,
        OperatorId::OMR,
        OperatorId::OMD,
        OperatorId::OAO,
        OperatorId::OAN,
        OperatorId::JTD,
        OperatorId::JSC,
        OperatorId::JID,
        OperatorId::JDC,
        OperatorId::EOA,
        OperatorId::EOC,
        OperatorId::EAM,
        OperatorId::EMM,
    ];

    pub fn code(self) -> &'static str {
        match self {
            OperatorId::ORO => "ORO",
            OperatorId::EMO => "EMO",
            OperatorId::SMO => "SMO",
            OperatorId::AMC => "AMC",
            OperatorId::IHD => "IHD",
            OperatorId::IHI => "IHI",
            OperatorId::IOD => "IOD",
            OperatorId::IOP => "IOP",
            OperatorId::IOR => "IOR",
            OperatorId::ISK => "ISK",
            OperatorId::IPC => "IPC",
            OperatorId::PNC => "PNC",
            OperatorId::PMD => "PMD",
            OperatorId::PPD => "PPD",
            OperatorId::PRV => "PRV",
            OperatorId::OMR => "OMR",
            OperatorId::OMD => "OMD",
            OperatorId::OAO => "OAO",
            OperatorId::OAN => "OAN",
            OperatorId::JTD => "JTD",
            OperatorId::JSC => "JSC",
            OperatorId::JID => "JID",
            OperatorId::JDC => "JDC",
            OperatorId::EOA => "EOA",
            OperatorId::EOC => "EOC",
            OperatorId::EAM => "EAM",
            OperatorId::EMM => "EMM",
        }
    }

    pub fn group(self) -> OperatorGroup {
        use OperatorId::*;
        match self {
            ORO | EMO | SMO => OperatorGroup::Statement,
            AMC => OperatorGroup::InfoHiding,
            IHD | IHI | IOD | IOP | IOR | ISK | IPC => OperatorGroup::Inheritance,
            PNC | PMD | PPD | PRV => OperatorGroup::Polymorphism,
            OMR | OMD | OAO | OAN => OperatorGroup::Overloading,
            JTD | JSC | JID | JDC => OperatorGroup::JavaSpecific,
            EOA | EOC | EAM | EMM => OperatorGroup::CommonMistakes,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            OperatorId::ORO => "Operand replacement",
            OperatorId::EMO => "Expression modification",
            OperatorId::SMO => "Statement modification",
            OperatorId::AMC => "Access modifier change",
            OperatorId::IHD => "Hiding variable deletion",
            OperatorId::IHI => "Hiding variable insertion",
            OperatorId::IOD => "Overriding method deletion",
            OperatorId::IOP => "Overriding method calling position change",
            OperatorId::IOR => "Overriding methods rename",
            OperatorId::ISK => "Super keyword deletion",
            OperatorId::IPC => "Explicit call of a parent's constructor deletion",
            OperatorId::PNC => "New method call with child class type",
            OperatorId::PMD => "Instance variable declaration with parent class type",
            OperatorId::PPD => "Parameter variable declaration with child class type",
            OperatorId::PRV => "Reference assignment with other comparable type",
            OperatorId::OMR => "Overloading method contents change",
            OperatorId::OMD => "Overloading method deletion",
            OperatorId::OAO => "Argument order change",
            OperatorId::OAN => "Argument number change",
            OperatorId::JTD => "This keyword deletion",
            OperatorId::JSC => "Static modifier change",
            OperatorId::JID => "Member variable initialization deletion",
            OperatorId::JDC => "Java-supported default constructor creation",
            OperatorId::EOA => "Reference assignment and content assignment replacement",
            OperatorId::EOC => "Reference comparison and content comparison replacement",
            OperatorId::EAM => "Accessor method change",
            OperatorId::EMM => "Modifier method change",
        }
    }

    pub fn is_class_level(self) -> bool {
        self.group() != OperatorGroup::Statement
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownOperator(pub String);

impl fmt::Display for UnknownOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown operator {}", self.0)
    }
}

impl std::error::Error for UnknownOperator {}

impl FromStr for OperatorId {
    type Err = UnknownOperator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OperatorId::ALL
            .into_iter()
            .find(|op| op.code() == s)
            .ok_or_else(|| UnknownOperator(s.to_string()))
    }
}

/// Parses a comma-separated operator list, keeping catalog order and
/// dropping repeats.
pub fn parse_operator_list(csv: &str) -> Result<Vec<OperatorId>, UnknownOperator> {
    let mut ops = Vec::new();
    for name in csv.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        ops.push(name.parse::<OperatorId>()?);
    }
    ops.sort();
    ops.dedup();
    Ok(ops)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mutant {
    /// `<OP>_<seq>`, seq counting emitted mutants of that operator from 1.
    pub id: String,
    pub operator: OperatorId,
    pub target: NodeId,
    pub patch: Patch,
    pub description: String,
    pub pos: Pos,
}

#[derive(Debug, Clone)]
pub struct MutantSet {
    pub original: Ast,
    pub operators: Vec<OperatorId>,
    pub mutants: Vec<Mutant>,
    /// Candidates rejected by the compile filter; ids are `<OP>_x<seq>`.
    pub stillborn: Vec<Mutant>,
}

impl MutantSet {
    pub fn emitted(&self, op: OperatorId) -> usize {
        self.mutants.iter().filter(|m| m.operator == op).count()
    }

    pub fn stillborn_count(&self, op: OperatorId) -> usize {
        self.stillborn.iter().filter(|m| m.operator == op).count()
    }

    pub fn get(&self, id: &str) -> Option<&Mutant> {
        self.mutants.iter().find(|m| m.id == id)
    }
}

/// Generates every compilable mutant of `ast` for the operators in `ops`.
pub fn enumerate_mutants(ast: &Ast, table: &ClassTable, ops: &[OperatorId]) -> MutantSet {
    let mut ops = ops.to_vec();
    ops.sort();
    ops.dedup();
    let mut cands = enumerate::candidates(ast, table, &ops);
    cands.sort_by_key(|c| (c.target, c.operator.index()));
    let mut unique: Vec<enumerate::Candidate> = Vec::with_capacity(cands.len());
    for c in cands {
        let dup = unique
            .iter()
            .any(|u| u.operator == c.operator && u.target == c.target && u.patch == c.patch);
        if !dup {
            unique.push(c);
        }
    }
    let admitted: Vec<bool> = unique
        .par_iter()
        .map(|c| patch::apply(ast, c.target, &c.patch).is_ok_and(|m| compiles(&m)))
        .collect();

    let mut emitted: BTreeMap<OperatorId, usize> = BTreeMap::new();
    let mut rejected: BTreeMap<OperatorId, usize> = BTreeMap::new();
    let mut mutants = Vec::new();
    let mut stillborn = Vec::new();
    for (c, ok) in unique.into_iter().zip(admitted) {
        let (counter, list, infix) = if ok {
            (&mut emitted, &mut mutants, "")
        } else {
            (&mut rejected, &mut stillborn, "x")
        };
        let seq = counter.entry(c.operator).or_insert(0);
        *seq += 1;
        list.push(Mutant {
            id: format!("{}_{infix}{}", c.operator.code(), seq),
            operator: c.operator,
            target: c.target,
            pos: position_of(ast, c.target).unwrap_or_default(),
            patch: c.patch,
            description: c.description,
        });
    }
    MutantSet {
        original: ast.clone(),
        operators: ops,
        mutants,
        stillborn,
    }
}

/// The mutant program; `original` is left untouched.
pub fn apply_patch(original: &Ast, m: &Mutant) -> Result<Ast, PatchError> {
    patch::apply(original, m.target, &m.patch)
}

/// Unified diff (three lines of context) of the printed original against the
/// printed mutant.
pub fn mutant_diff(original: &Ast, m: &Mutant) -> Result<String, PatchError> {
    let mutant = apply_patch(original, m)?;
    let (a, b) = (pretty_print(original), pretty_print(&mutant));
    Ok(TextDiff::from_lines(&a, &b)
        .unified_diff()
        .context_radius(3)
        .header("original", &m.id)
        .to_string())
}

pub fn hunk_count(diff: &str) -> usize {
    diff.lines().filter(|l| l.starts_with("@@")).count()
}

/// `id<TAB>operator<TAB>file:line:col<TAB>description`, one line per mutant.
pub fn manifest(set: &MutantSet, file: &str) -> String {
    set.mutants
        .iter()
        .map(|m| {
            format!(
                "{}\t{}\t{}:{}:{}\t{}\n",
                m.id, m.operator, file, m.pos.line, m.pos.col, m.description
            )
        })
        .collect()
}
