//! Problem files, report emission, and parameter sweeps.
//!
//! A problem file is a JSON document: alternatives, criteria, a list of
//! experts (id, optional weight, m x n matrix of [mu_lo, mu_hi, nu_lo,
//! nu_hi] cells), criteria weights, and params. Parsing yields a validated
//! [`DecisionProblem`]; emission is the inverse. All numbers print with 10
//! significant digits so logs and CSV are reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcgdm::{solve, DecisionProblem, Expert, PipelineParams, RankingReport};
use crate::number::IvqRofn;
use crate::params::{RungSpec, ScoreKind, WeightVector};

/// Raw file schema; field-for-field JSON image of a decision problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub alternatives: Vec<String>,
    pub criteria: Vec<String>,
    pub experts: Vec<ExpertFile>,
    pub criteria_weights: Vec<f64>,
    pub params: ParamsFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpertFile {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    pub matrix: Vec<Vec<[f64; 4]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub q: RungField,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<ScoreKind>,
}

/// The `q` field admits a number or the string "auto".
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RungField {
    Number(f64),
    Keyword(String),
}

impl RungField {
    fn to_rung(&self) -> Result<RungSpec> {
        match self {
            RungField::Number(q) => Ok(RungSpec::Fixed(*q)),
            RungField::Keyword(s) if s == "auto" => Ok(RungSpec::Auto),
            RungField::Keyword(s) => Err(Error::BadRungField(s.clone())),
        }
    }

    fn from_rung(rung: RungSpec) -> Self {
        match rung {
            RungSpec::Fixed(q) => RungField::Number(q),
            RungSpec::Auto => RungField::Keyword("auto".to_string()),
        }
    }
}

/// Parse a JSON document into a validated problem. Syntax errors carry the
/// line and column; data errors carry the offending cell coordinates.
pub fn parse_problem(text: &str) -> Result<DecisionProblem> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        detail: e.to_string(),
    })?;
    problem_from_file(&file)
}

/// Lift the raw schema into the validated domain type.
pub fn problem_from_file(file: &ProblemFile) -> Result<DecisionProblem> {
    let mut experts = Vec::with_capacity(file.experts.len());
    for e in &file.experts {
        let mut matrix = Vec::with_capacity(e.matrix.len());
        for (i, row) in e.matrix.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, cell) in row.iter().enumerate() {
                let num = IvqRofn::new(cell[0], cell[1], cell[2], cell[3]).map_err(|err| {
                    Error::Cell {
                        expert: e.id.clone(),
                        alternative: label_or_index(&file.alternatives, i),
                        criterion: label_or_index(&file.criteria, j),
                        source: Box::new(err),
                    }
                })?;
                out.push(num);
            }
            matrix.push(out);
        }
        experts.push(Expert {
            label: e.id.clone(),
            weight: e.weight,
            matrix,
        });
    }
    let params = PipelineParams {
        rung: file.params.q.to_rung()?,
        phi: file.params.phi,
        x: file.params.x,
        y: file.params.y,
        score: file.params.score.unwrap_or_default(),
    };
    DecisionProblem::new(
        file.alternatives.clone(),
        file.criteria.clone(),
        experts,
        WeightVector::new(file.criteria_weights.clone())?,
        params,
    )
}

fn label_or_index(labels: &[String], idx: usize) -> String {
    labels
        .get(idx)
        .cloned()
        .unwrap_or_else(|| format!("#{idx}"))
}

/// Inverse of [`parse_problem`]: pretty JSON that parses back to an equal
/// problem.
pub fn emit_problem(problem: &DecisionProblem) -> String {
    let file = ProblemFile {
        alternatives: problem.alternatives().to_vec(),
        criteria: problem.criteria().to_vec(),
        experts: problem
            .experts()
            .iter()
            .map(|e| ExpertFile {
                id: e.label.clone(),
                weight: e.weight,
                matrix: e
                    .matrix
                    .iter()
                    .map(|row| row.iter().map(IvqRofn::as_array).collect())
                    .collect(),
            })
            .collect(),
        criteria_weights: problem.criteria_weights().as_slice().to_vec(),
        params: ParamsFile {
            q: RungField::from_rung(problem.params().rung),
            phi: problem.params().phi,
            x: problem.params().x,
            y: problem.params().y,
            score: Some(problem.params().score),
        },
    };
    serde_json::to_string_pretty(&file).expect("problem schema serializes")
}

/// Format with 10 significant digits; reproducible, not shortest.
pub fn format_sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let decimals = (9 - x.abs().log10().floor() as i64).clamp(0, 25) as usize;
    format!("{x:.decimals$}")
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
}

fn format_number(v: &IvqRofn) -> String {
    format!(
        "mu=[{}, {}] nu=[{}, {}]",
        format_sig10(v.mu_lo()),
        format_sig10(v.mu_hi()),
        format_sig10(v.nu_lo()),
        format_sig10(v.nu_hi())
    )
}

/// Render a ranking report. Text format leads with the ranked table and the
/// ranking line; CSV rows are emitted best-first under a fixed header.
pub fn emit_report(report: &RankingReport, format: ReportFormat, intermediates: bool) -> String {
    match format {
        ReportFormat::Text => {
            let mut out = String::new();
            for e in &report.entries {
                out.push_str(&format!(
                    "{}. {} score={} accuracy={} {}\n",
                    e.rank,
                    e.label,
                    format_sig10(e.score),
                    format_sig10(e.accuracy),
                    format_number(&e.value)
                ));
            }
            out.push_str(&format!("ranking: {}\n", report.ranking_line()));
            let p = &report.params;
            out.push_str(&format!(
                "params: q={} phi={} x={} y={} score={}\n",
                format_sig10(report.resolved_q),
                format_sig10(p.phi),
                format_sig10(p.x),
                format_sig10(p.y),
                match p.score {
                    ScoreKind::Linear => "linear",
                    ScoreKind::QPow => "qpow",
                }
            ));
            if intermediates {
                out.push_str("expert-aggregated matrix:\n");
                for (i, row) in report.expert_matrix.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        out.push_str(&format!("  R[{i}][{j}] {}\n", format_number(v)));
                    }
                }
            }
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from("alternative,rank,score,accuracy,mu_lo,mu_hi,nu_lo,nu_hi\n");
            for e in &report.entries {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    e.label,
                    e.rank,
                    format_sig10(e.score),
                    format_sig10(e.accuracy),
                    format_sig10(e.value.mu_lo()),
                    format_sig10(e.value.mu_hi()),
                    format_sig10(e.value.nu_lo()),
                    format_sig10(e.value.nu_hi())
                ));
            }
            out
        }
    }
}

/// Which pipeline parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Q,
    Phi,
    X,
    Y,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Q => "q",
            SweepParam::Phi => "phi",
            SweepParam::X => "x",
            SweepParam::Y => "y",
        }
    }
}

/// One sweep evaluation: the parameter value and the run outcome.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: Result<RankingReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepVerdict {
    /// Every value produced the same ranking.
    Stable,
    /// First parameter value whose ranking deviates from the first
    /// successful row's ranking.
    RankingChanges { first_at: f64 },
    /// No value produced a ranking at all.
    NoSuccessfulRows,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
    pub verdict: SweepVerdict,
}

/// Re-solve the problem once per parameter value, recording failures without
/// aborting the sweep.
pub fn run_sweep(problem: &DecisionProblem, param: SweepParam, values: &[f64]) -> SweepReport {
    let rows: Vec<SweepRow> = values
        .iter()
        .map(|&value| {
            let mut p = *problem.params();
            match param {
                SweepParam::Q => p.rung = RungSpec::Fixed(value),
                SweepParam::Phi => p.phi = value,
                SweepParam::X => p.x = value,
                SweepParam::Y => p.y = value,
            }
            SweepRow {
                value,
                outcome: solve(&problem.with_params(p)),
            }
        })
        .collect();
    let mut reference: Option<&RankingReport> = None;
    let mut verdict = SweepVerdict::NoSuccessfulRows;
    for row in &rows {
        if let Ok(report) = &row.outcome {
            match reference {
                None => {
                    reference = Some(report);
                    verdict = SweepVerdict::Stable;
                }
                Some(first) => {
                    if first.ranking_line() != report.ranking_line()
                        && verdict == SweepVerdict::Stable
                    {
                        verdict = SweepVerdict::RankingChanges {
                            first_at: row.value,
                        };
                    }
                }
            }
        }
    }
    SweepReport {
        param,
        rows,
        verdict,
    }
}

/// Render a sweep: one line per value, then the verdict.
pub fn emit_sweep(report: &SweepReport) -> String {
    let mut out = String::new();
    for row in &report.rows {
        match &row.outcome {
            Ok(r) => out.push_str(&format!(
                "{}={} ranking: {} scores: {}\n",
                report.param.name(),
                format_sig10(row.value),
                r.ranking_line(),
                r.entries
                    .iter()
                    .map(|e| format!("{}={}", e.label, format_sig10(e.score)))
                    .collect::<Vec<_>>()
                    .join(" ")
            )),
            Err(e) => out.push_str(&format!(
                "{}={} error: {e}\n",
                report.param.name(),
                format_sig10(row.value)
            )),
        }
    }
    out.push_str(&format!(
        "verdict: {}\n",
        match &report.verdict {
            SweepVerdict::Stable => "stable (ranking unchanged across values)".to_string(),
            SweepVerdict::RankingChanges { first_at } => format!(
                "ranking changes at {}={}",
                report.param.name(),
                format_sig10(*first_at)
            ),
            SweepVerdict::NoSuccessfulRows => "no successful rows".to_string(),
        }
    ));
    out
}
