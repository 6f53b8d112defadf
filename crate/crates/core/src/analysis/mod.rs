//! Differential kill analysis, mutation scores and fault coverage.
//!
//! A mutant is killed by a test when its execution result differs from the
//! original's on that test: different output, a runtime error, or budget
//! exhaustion where the original completed.

pub mod faults;
pub mod report;
pub mod suite;

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

pub use faults::{FaultLevel, FaultMap, FaultType};
pub use suite::{parse_suite, EquivalenceLedger, SuiteParseError, TestCase};

use crate::interpreter::{execute, ExecResult, ExecStatus, DEFAULT_STEP_BUDGET};
use crate::mutation::{apply_patch, mutant_diff, MutantSet, OperatorId};
use crate::semantics::{analyze, ClassTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KillReason {
    OutputDiff,
    RuntimeError,
    Budget,
}

impl KillReason {
    pub fn name(self) -> &'static str {
        match self {
            KillReason::OutputDiff => "byOutputDiff",
            KillReason::RuntimeError => "byRuntimeError",
            KillReason::Budget => "byBudget",
        }
    }
}

/// One (mutant, test) cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KillVerdict {
    Killed(KillReason),
    Survived,
    /// Skipped: an earlier test already killed the mutant, or it is marked
    /// equivalent.
    NotRun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutantVerdict {
    /// `test` is the index of the first killing test.
    Killed { test: usize, reason: KillReason },
    Survived,
    Equivalent,
}

impl MutantVerdict {
    pub fn name(self) -> &'static str {
        match self {
            MutantVerdict::Killed { .. } => "killed",
            MutantVerdict::Survived => "survived",
            MutantVerdict::Equivalent => "equivalent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutantRow {
    pub id: String,
    pub operator: OperatorId,
    pub cells: Vec<KillVerdict>,
    pub verdict: MutantVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillMatrix {
    pub tests: Vec<String>,
    pub baseline: Vec<ExecResult>,
    pub rows: Vec<MutantRow>,
}

impl KillMatrix {
    pub fn row(&self, id: &str) -> Option<&MutantRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// Marks ledger entries equivalent without re-running anything.
    pub fn apply_ledger(&mut self, ledger: &EquivalenceLedger) {
        for row in &mut self.rows {
            if ledger.contains(&row.id) {
                row.verdict = MutantVerdict::Equivalent;
                row.cells.fill(KillVerdict::NotRun);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("suite is empty")]
    Empty,
    #[error("original program does not compile")]
    OriginalDoesNotCompile,
    #[error("baseline failed on test `{test}`: {status}")]
    Baseline { test: String, status: ExecStatus },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub early_stop: bool,
    /// Budget for tests that do not set their own.
    pub step_budget: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            early_stop: true,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

/// Compares a mutant's result with the original's on the same test.
pub fn kill_verdict(original: &ExecResult, mutant: &ExecResult) -> Option<KillReason> {
    match (&original.status, &mutant.status) {
        (ExecStatus::BudgetExhausted, ExecStatus::BudgetExhausted) => None,
        (o, m) if o != m => Some(match m {
            ExecStatus::BudgetExhausted => KillReason::Budget,
            ExecStatus::RuntimeError { .. } => KillReason::RuntimeError,
            ExecStatus::Completed => KillReason::OutputDiff,
        }),
        _ if original.output != mutant.output => Some(KillReason::OutputDiff),
        _ => None,
    }
}

/// Runs the original once per test, then every non-equivalent mutant.
pub fn run_suite(
    set: &MutantSet,
    table: &ClassTable,
    tests: &[TestCase],
    ledger: &EquivalenceLedger,
    opts: RunOptions,
) -> Result<KillMatrix, SuiteError> {
    if tests.is_empty() {
        return Err(SuiteError::Empty);
    }
    let requests: Vec<_> = tests.iter().map(|t| t.request(opts.step_budget)).collect();
    let baseline: Vec<ExecResult> = requests
        .par_iter()
        .map(|r| execute(&set.original, table, r))
        .collect();
    for (t, r) in tests.iter().zip(&baseline) {
        if r.status != ExecStatus::Completed {
            return Err(SuiteError::Baseline {
                test: t.name.clone(),
                status: r.status,
            });
        }
    }
    let rows = set
        .mutants
        .par_iter()
        .map(|m| {
            let mut cells = vec![KillVerdict::NotRun; tests.len()];
            if ledger.contains(&m.id) {
                return MutantRow {
                    id: m.id.clone(),
                    operator: m.operator,
                    cells,
                    verdict: MutantVerdict::Equivalent,
                };
            }
            let ast = apply_patch(&set.original, m).expect("mutant applies to its original");
            let (mtable, _) = analyze(&ast);
            let mut verdict = MutantVerdict::Survived;
            for (i, req) in requests.iter().enumerate() {
                let result = execute(&ast, &mtable, req);
                match kill_verdict(&baseline[i], &result) {
                    Some(reason) => {
                        cells[i] = KillVerdict::Killed(reason);
                        if verdict == MutantVerdict::Survived {
                            verdict = MutantVerdict::Killed { test: i, reason };
                        }
                        if opts.early_stop {
                            break;
                        }
                    }
                    None => cells[i] = KillVerdict::Survived,
                }
            }
            MutantRow {
                id: m.id.clone(),
                operator: m.operator,
                cells,
                verdict,
            }
        })
        .collect();
    Ok(KillMatrix {
        tests: tests.iter().map(|t| t.name.clone()).collect(),
        baseline,
        rows,
    })
}

/// Tally for one operator (or the total when `operator` is `None`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScoreRow {
    pub operator: Option<OperatorId>,
    pub emitted: usize,
    pub stillborn: usize,
    pub killed: usize,
    pub equivalent: usize,
}

/// `num/den` as a percentage in tenths, rounded half up.
fn tenths(num: usize, den: usize) -> Option<u64> {
    (den > 0).then(|| ((num as u64) * 2000 + den as u64) / (2 * den as u64))
}

fn percent(t: Option<u64>) -> String {
    match t {
        Some(t) => format!("{}.{}%", t / 10, t % 10),
        None => "n/a".to_string(),
    }
}

impl ScoreRow {
    pub fn survived(&self) -> usize {
        self.emitted - self.killed - self.equivalent
    }

    /// killed / (emitted - equivalent), in tenths of a percent.
    pub fn score_tenths(&self) -> Option<u64> {
        tenths(self.killed, self.emitted - self.equivalent)
    }

    pub fn score(&self) -> String {
        percent(self.score_tenths())
    }

    /// killed / emitted, ignoring the ledger.
    pub fn raw_score(&self) -> String {
        percent(tenths(self.killed, self.emitted))
    }

    fn add(&mut self, o: &ScoreRow) {
        self.emitted += o.emitted;
        self.stillborn += o.stillborn;
        self.killed += o.killed;
        self.equivalent += o.equivalent;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreReport {
    pub rows: Vec<ScoreRow>,
    pub total: ScoreRow,
}

impl ScoreReport {
    pub fn row(&self, op: OperatorId) -> Option<&ScoreRow> {
        self.rows.iter().find(|r| r.operator == Some(op))
    }
}

pub fn mutation_score(matrix: &KillMatrix, set: &MutantSet) -> ScoreReport {
    let mut rows = Vec::new();
    let mut total = ScoreRow::default();
    for &op in &set.operators {
        let mut r = ScoreRow {
            operator: Some(op),
            stillborn: set.stillborn_count(op),
            ..ScoreRow::default()
        };
        for row in matrix.rows.iter().filter(|r| r.operator == op) {
            r.emitted += 1;
            match row.verdict {
                MutantVerdict::Killed { .. } => r.killed += 1,
                MutantVerdict::Equivalent => r.equivalent += 1,
                MutantVerdict::Survived => {}
            }
        }
        total.add(&r);
        rows.push(r);
    }
    ScoreReport { rows, total }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultCoverage {
    pub fault: FaultType,
    pub level: FaultLevel,
    pub operators: &'static [OperatorId],
    pub emitted: usize,
    pub killed: usize,
}

impl FaultCoverage {
    pub fn exercised(&self) -> bool {
        self.emitted > 0
    }

    pub fn detected_capable(&self) -> bool {
        self.killed > 0
    }
}

pub fn fault_coverage(matrix: &KillMatrix, map: &FaultMap) -> Vec<FaultCoverage> {
    map.rows()
        .map(|(fault, operators)| {
            let rows = matrix.rows.iter().filter(|r| operators.contains(&r.operator));
            let (mut emitted, mut killed) = (0, 0);
            for r in rows {
                emitted += 1;
                if matches!(r.verdict, MutantVerdict::Killed { .. }) {
                    killed += 1;
                }
            }
            FaultCoverage {
                fault,
                level: fault.level(),
                operators,
                emitted,
                killed,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survivor {
    pub id: String,
    pub operator: OperatorId,
    pub description: String,
    pub diff: String,
}

fn seq(id: &str) -> u64 {
    id.rsplit('_').next().and_then(|s| s.parse().ok()).unwrap_or(0)
}

/// Surviving, non-equivalent mutants ordered by operator then id.
pub fn survivors(matrix: &KillMatrix, set: &MutantSet) -> Vec<Survivor> {
    let mut out: Vec<Survivor> = matrix
        .rows
        .iter()
        .filter(|r| r.verdict == MutantVerdict::Survived)
        .filter_map(|r| set.get(&r.id))
        .map(|m| Survivor {
            id: m.id.clone(),
            operator: m.operator,
            description: m.description.clone(),
            diff: mutant_diff(&set.original, m).expect("mutant applies to its original"),
        })
        .collect();
    out.sort_by_key(|s| (s.operator, seq(&s.id)));
    out
}

impl fmt::Display for KillReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
