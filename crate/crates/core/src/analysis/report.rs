//! Text, CSV and JSON renderings of analysis results.

use serde_json::{json, Value};

use super::{FaultCoverage, KillMatrix, KillVerdict, ScoreReport, ScoreRow, Survivor};

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `mutant,<tests...>,verdict` with K/S cells and `-` for skipped cells.
pub fn matrix_csv(m: &KillMatrix) -> String {
    let mut out = String::from("mutant");
    for t in &m.tests {
        out.push(',');
        out.push_str(&csv_field(t));
    }
    out.push_str(",verdict\n");
    for row in &m.rows {
        out.push_str(&row.id);
        for c in &row.cells {
            out.push_str(match c {
                KillVerdict::Killed(_) => ",K",
                KillVerdict::Survived => ",S",
                KillVerdict::NotRun => ",-",
            });
        }
        out.push(',');
        out.push_str(row.verdict.name());
        out.push('\n');
    }
    out
}

fn op_name(r: &ScoreRow) -> String {
    r.operator.map_or("Total".to_string(), |o| o.code().to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn op_list(ops: &[crate::mutation::OperatorId]) -> String {
    ops.iter().map(|o| o.code()).collect::<Vec<_>>().join(" ")
}

pub fn summary_table(scores: &ScoreReport, faults: &[FaultCoverage]) -> String {
    let mut out = format!(
        "{:<8}  {:>7}  {:>9}  {:>6}  {:>10}  {:>6}\n",
        "Operator", "Mutants", "Stillborn", "Killed", "Equivalent", "Score"
    );
    for r in scores.rows.iter().chain(std::iter::once(&scores.total)) {
        out.push_str(&format!(
            "{:<8}  {:>7}  {:>9}  {:>6}  {:>10}  {:>6}\n",
            op_name(r),
            r.emitted,
            r.stillborn,
            r.killed,
            r.equivalent,
            r.score()
        ));
    }
    out.push('\n');
    let width = faults.iter().map(|f| f.fault.label().len()).max().unwrap_or(5);
    out.push_str(&format!(
        "{:<width$}  {:<11}  {:<15}  {:>7}  {:>6}  {:<9}  {}\n",
        "Fault", "Level", "Operators", "Mutants", "Killed", "Exercised", "Detected"
    ));
    for f in faults {
        out.push_str(&format!(
            "{:<width$}  {:<11}  {:<15}  {:>7}  {:>6}  {:<9}  {}\n",
            f.fault.label(),
            f.level.name(),
            op_list(f.operators),
            f.emitted,
            f.killed,
            yes_no(f.exercised()),
            yes_no(f.detected_capable())
        ));
    }
    out
}

pub fn summary_csv(scores: &ScoreReport, faults: &[FaultCoverage]) -> String {
    let mut out = String::from("operator,mutants,stillborn,killed,equivalent,score\n");
    for r in scores.rows.iter().chain(std::iter::once(&scores.total)) {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            op_name(r),
            r.emitted,
            r.stillborn,
            r.killed,
            r.equivalent,
            r.score()
        ));
    }
    out.push_str("\nfault,level,operators,mutants,killed,exercised,detected\n");
    for f in faults {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_field(f.fault.label()),
            f.level.name(),
            op_list(f.operators),
            f.emitted,
            f.killed,
            yes_no(f.exercised()),
            yes_no(f.detected_capable())
        ));
    }
    out
}

fn score_json(r: &ScoreRow) -> Value {
    json!({
        "operator": op_name(r),
        "group": r.operator.map(|o| o.group().name()),
        "mutants": r.emitted,
        "stillborn": r.stillborn,
        "killed": r.killed,
        "equivalent": r.equivalent,
        "survived": r.survived(),
        "score": r.score(),
        "scoreOverEmitted": r.raw_score(),
    })
}

/// The summary table field for field, plus the survivor ids.
pub fn summary_machine(scores: &ScoreReport, faults: &[FaultCoverage], survivors: &[Survivor]) -> String {
    let doc = json!({
        "operators": scores.rows.iter().map(score_json).collect::<Vec<_>>(),
        "total": score_json(&scores.total),
        "faults": faults.iter().map(|f| json!({
            "fault": f.fault.key(),
            "label": f.fault.label(),
            "level": f.level.name(),
            "operators": f.operators.iter().map(|o| o.code()).collect::<Vec<_>>(),
            "mutants": f.emitted,
            "killed": f.killed,
            "exercised": f.exercised(),
            "detectedCapable": f.detected_capable(),
        })).collect::<Vec<_>>(),
        "survivors": survivors.iter().map(|s| s.id.as_str()).collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

pub fn survivors_text(survivors: &[Survivor]) -> String {
    let mut out = String::new();
    for s in survivors {
        out.push_str(&format!("{} {} {}\n", s.id, s.operator, s.description));
        out.push_str(&s.diff);
        if !s.diff.ends_with('\n') {
            out.push('\n');
        }
        out.push('\n');
    }
    out
}
