use std::fmt;

use crate::mutation::OperatorId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaultLevel {
    IntraMethod,
    InterMethod,
    IntraClass,
    InterClass,
}

impl FaultLevel {
    pub fn name(self) -> &'static str {
        match self {
            FaultLevel::IntraMethod => "intraMethod",
            FaultLevel::InterMethod => "interMethod",
            FaultLevel::IntraClass => "intraClass",
            FaultLevel::InterClass => "interClass",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaultType {
    StateVisibilityAnomaly,
    StateDefinitionInconsistencyHiding,
    StateDefinitionAnomalyOverriding,
    IndirectInconsistentStateDefinition,
    AnomalousConstructionBehaviour,
    IncompleteConstruction,
    InconsistentTypeUse,
    OverloadingMethodsMisuse,
    AccessModifierMisuse,
    StaticModifierMisuse,
    IncorrectOverloadingImplementation,
    SuperKeywordMisuse,
    ThisKeywordMisuse,
    CommonProgrammingMistakes,
}

impl FaultType {
    pub const ALL: [FaultType; 14] = [
        FaultType::StateVisibilityAnomaly,
        FaultType::StateDefinitionInconsistencyHiding,
        FaultType::StateDefinitionAnomalyOverriding,
        FaultType::IndirectInconsistentStateDefinition,
        FaultType::AnomalousConstructionBehaviour,
        FaultType::IncompleteConstruction,
        FaultType::InconsistentTypeUse,
        FaultType::OverloadingMethodsMisuse,
        FaultType::AccessModifierMisuse,
        FaultType::StaticModifierMisuse,
        FaultType::IncorrectOverloadingImplementation,
        FaultType::SuperKeywordMisuse,
        FaultType::ThisKeywordMisuse,
        FaultType::CommonProgrammingMistakes,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FaultType::StateVisibilityAnomaly => "State visibility anomaly",
            FaultType::StateDefinitionInconsistencyHiding => {
                "State definition inconsistency (due to state variable hiding)"
            }
            FaultType::StateDefinitionAnomalyOverriding => "State definition anomaly (due to overriding)",
            FaultType::IndirectInconsistentStateDefinition => "Indirect inconsistent state definition",
            FaultType::AnomalousConstructionBehaviour => "Anomalous construction behaviour",
            FaultType::IncompleteConstruction => "Incomplete construction",
            FaultType::InconsistentTypeUse => "Inconsistent type use",
            FaultType::OverloadingMethodsMisuse => "Overloading methods misuse",
            FaultType::AccessModifierMisuse => "Access modifier misuse",
            FaultType::StaticModifierMisuse => "Static modifier misuse",
            FaultType::IncorrectOverloadingImplementation => {
                "Incorrect overloading-methods implementation"
            }
            FaultType::SuperKeywordMisuse => "Super keyword misuse",
            FaultType::ThisKeywordMisuse => "This keyword misuse",
            FaultType::CommonProgrammingMistakes => "Faults from common programming mistakes",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            FaultType::StateVisibilityAnomaly => "stateVisibilityAnomaly",
            FaultType::StateDefinitionInconsistencyHiding => "stateDefinitionInconsistencyHiding",
            FaultType::StateDefinitionAnomalyOverriding => "stateDefinitionAnomalyOverriding",
            FaultType::IndirectInconsistentStateDefinition => "indirectInconsistentStateDefinition",
            FaultType::AnomalousConstructionBehaviour => "anomalousConstructionBehaviour",
            FaultType::IncompleteConstruction => "incompleteConstruction",
            FaultType::InconsistentTypeUse => "inconsistentTypeUse",
            FaultType::OverloadingMethodsMisuse => "overloadingMethodsMisuse",
            FaultType::AccessModifierMisuse => "accessModifierMisuse",
            FaultType::StaticModifierMisuse => "staticModifierMisuse",
            FaultType::IncorrectOverloadingImplementation => "incorrectOverloadingImplementation",
            FaultType::SuperKeywordMisuse => "superKeywordMisuse",
            FaultType::ThisKeywordMisuse => "thisKeywordMisuse",
            FaultType::CommonProgrammingMistakes => "commonProgrammingMistakes",
        }
    }

    /// Operators that model this fault. `PMD` stands where the fault table
    /// names an operator that has no definition.
    pub fn operators(self) -> &'static [OperatorId] {
        use OperatorId::*;
        match self {
            FaultType::StateVisibilityAnomaly => &[IOP],
            FaultType::StateDefinitionInconsistencyHiding => &[IHD, IHI],
            FaultType::StateDefinitionAnomalyOverriding => &[IOD],
            FaultType::IndirectInconsistentStateDefinition => &[IOD],
            FaultType::AnomalousConstructionBehaviour => &[IOR, IPC, PNC],
            FaultType::IncompleteConstruction => &[JID, JDC],
            FaultType::InconsistentTypeUse => &[PMD, PNC, PPD, PRV],
            FaultType::OverloadingMethodsMisuse => &[OMD, OAO, OAN],
            FaultType::AccessModifierMisuse => &[AMC],
            FaultType::StaticModifierMisuse => &[JSC],
            FaultType::IncorrectOverloadingImplementation => &[OMR],
            FaultType::SuperKeywordMisuse => &[ISK],
            FaultType::ThisKeywordMisuse => &[JTD],
            FaultType::CommonProgrammingMistakes => &[EOA, EOC, EAM, EMM],
        }
    }

    pub fn level(self) -> FaultLevel {
        match self {
            FaultType::CommonProgrammingMistakes => FaultLevel::IntraMethod,
            FaultType::OverloadingMethodsMisuse | FaultType::IncorrectOverloadingImplementation => {
                FaultLevel::InterMethod
            }
            FaultType::IncompleteConstruction
            | FaultType::StaticModifierMisuse
            | FaultType::ThisKeywordMisuse => FaultLevel::IntraClass,
            _ => FaultLevel::InterClass,
        }
    }
}

impl fmt::Display for FaultType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The fault-type to operator relation.
#[derive(Debug, Clone, Copy, Default)]
pub struct FaultMap;

impl FaultMap {
    pub fn rows(&self) -> impl Iterator<Item = (FaultType, &'static [OperatorId])> {
        FaultType::ALL.into_iter().map(|f| (f, f.operators()))
    }

    pub fn faults_of(&self, op: OperatorId) -> Vec<FaultType> {
        FaultType::ALL
            .into_iter()
            .filter(|f| f.operators().contains(&op))
            .collect()
    }

    /// Every class-level operator maps to some fault and no row is empty.
    pub fn check_totality(&self) -> Result<(), String> {
        for (f, ops) in self.rows() {
            if ops.is_empty() {
                return Err(format!("fault row `{f}` has no operator"));
            }
        }
        for op in OperatorId::ALL {
            if op.is_class_level() && self.faults_of(op).is_empty() {
                return Err(format!("operator {op} covers no fault"));
            }
        }
        Ok(())
    }
}
