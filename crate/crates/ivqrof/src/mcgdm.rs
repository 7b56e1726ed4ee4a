//! Multi-expert, multi-criteria group decision pipeline.
//!
//! Experts rate m alternatives against n criteria with fuzzy numbers. The
//! pipeline resolves the rung, aggregates the expert layer cell by cell with
//! the weighted arithmetic Heronian mean, aggregates each alternative's row
//! across criteria the same way, scores the aggregates, and ranks descending.

use crate::error::{Error, Result};
use crate::heronian::{hhmga, hhmwa, GeometricMode};
use crate::number::{infer_q, IvqRofn};
use crate::params::{AggParams, RungSpec, ScoreKind, WeightVector};

/// One expert's labelled judgement matrix (alternatives x criteria).
#[derive(Debug, Clone, PartialEq)]
pub struct Expert {
    pub label: String,
    /// Explicit weight; either every expert carries one or none does.
    pub weight: Option<f64>,
    pub matrix: Vec<Vec<IvqRofn>>,
}

/// Aggregation settings for the whole pipeline; the rung may be deferred
/// to inference over the input data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineParams {
    pub rung: RungSpec,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    pub score: ScoreKind,
}

impl PipelineParams {
    pub fn agg(&self, q: f64) -> Result<AggParams> {
        AggParams::new(q, self.phi, self.x, self.y)
    }
}

/// Which operator aggregates each alternative's row across criteria.
/// The arithmetic mean is the published pipeline; the geometric variant is
/// opt-in and never the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CriteriaAggregator {
    #[default]
    WeightedArithmetic,
    WeightedGeometric,
}

/// A validated decision problem. Shape invariants hold by construction;
/// rung feasibility of the entries is checked at [`resolve_q`] time because
/// the rung may be inferred.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    alternatives: Vec<String>,
    criteria: Vec<String>,
    experts: Vec<Expert>,
    criteria_weights: WeightVector,
    params: PipelineParams,
}

impl DecisionProblem {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<String>,
        experts: Vec<Expert>,
        criteria_weights: WeightVector,
        params: PipelineParams,
    ) -> Result<Self> {
        if alternatives.is_empty() {
            return Err(Error::EmptyDimension {
                what: "alternatives",
            });
        }
        if criteria.is_empty() {
            return Err(Error::EmptyDimension { what: "criteria" });
        }
        if experts.is_empty() {
            return Err(Error::EmptyDimension { what: "experts" });
        }
        let (m, n) = (alternatives.len(), criteria.len());
        for e in &experts {
            if e.matrix.len() != m {
                return Err(Error::MatrixShape {
                    expert: e.label.clone(),
                    expected_rows: m,
                    expected_cols: n,
                    row: e.matrix.len(),
                    got: 0,
                });
            }
            for (i, row) in e.matrix.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::MatrixShape {
                        expert: e.label.clone(),
                        expected_rows: m,
                        expected_cols: n,
                        row: i,
                        got: row.len(),
                    });
                }
            }
        }
        let given = experts.iter().filter(|e| e.weight.is_some()).count();
        if given != 0 && given != experts.len() {
            return Err(Error::MixedExpertWeights);
        }
        criteria_weights.require_len(n)?;
        let problem = DecisionProblem {
            alternatives,
            criteria,
            experts,
            criteria_weights,
            params,
        };
        problem.expert_weights()?;
        Ok(problem)
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn experts(&self) -> &[Expert] {
        &self.experts
    }

    pub fn criteria_weights(&self) -> &WeightVector {
        &self.criteria_weights
    }

    pub fn params(&self) -> &PipelineParams {
        &self.params
    }

    /// Override aggregation settings, keeping data intact.
    pub fn with_params(&self, params: PipelineParams) -> Self {
        DecisionProblem {
            params,
            ..self.clone()
        }
    }

    /// Explicit weights if all given, else uniform 1/t.
    pub fn expert_weights(&self) -> Result<WeightVector> {
        if self.experts.iter().all(|e| e.weight.is_some()) {
            WeightVector::new(self.experts.iter().map(|e| e.weight.unwrap()).collect())
        } else {
            WeightVector::uniform(self.experts.len())
        }
    }

    fn all_entries(&self) -> Vec<IvqRofn> {
        self.experts
            .iter()
            .flat_map(|e| e.matrix.iter().flatten().copied())
            .collect()
    }
}

/// The rung the pipeline runs at: the pinned value (validating every entry
/// against it) or the smallest integer rung accommodating all entries.
pub fn resolve_q(problem: &DecisionProblem) -> Result<f64> {
    match problem.params().rung {
        RungSpec::Fixed(q) => {
            for e in problem.experts() {
                for row in &e.matrix {
                    for v in row {
                        v.validate_for(q)?;
                    }
                }
            }
            Ok(q)
        }
        RungSpec::Auto => Ok(infer_q(&problem.all_entries())? as f64),
    }
}

/// Collapse the expert layer: cell (i, j) becomes the weighted arithmetic
/// Heronian mean of the experts' (i, j) entries under the expert weights.
pub fn aggregate_experts(problem: &DecisionProblem, q: f64) -> Result<Vec<Vec<IvqRofn>>> {
    let lambda = problem.expert_weights()?;
    let p = problem.params().agg(q)?;
    let (m, n) = (problem.alternatives().len(), problem.criteria().len());
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let cell: Vec<IvqRofn> = problem.experts().iter().map(|e| e.matrix[i][j]).collect();
            row.push(hhmwa(&cell, &lambda, &p)?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Collapse each alternative's criteria row to a single value.
pub fn aggregate_criteria(
    r: &[Vec<IvqRofn>],
    omega: &WeightVector,
    p: &AggParams,
    op: CriteriaAggregator,
) -> Result<Vec<IvqRofn>> {
    r.iter()
        .map(|row| match op {
            CriteriaAggregator::WeightedArithmetic => hhmwa(row, omega, p),
            CriteriaAggregator::WeightedGeometric => hhmga(row, omega, p, GeometricMode::Dual),
        })
        .collect()
}

/// One row of the final ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedAlternative {
    pub label: String,
    /// Position of this alternative in the problem's input order.
    pub input_index: usize,
    pub value: IvqRofn,
    pub score: f64,
    pub accuracy: f64,
    /// 1-based; rank 1 is the best alternative.
    pub rank: usize,
}

/// Full pipeline output: the ranking plus everything needed to audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingReport {
    pub resolved_q: f64,
    pub params: PipelineParams,
    /// Expert-aggregated matrix R, one row per alternative.
    pub expert_matrix: Vec<Vec<IvqRofn>>,
    /// Ranked best-first.
    pub entries: Vec<RankedAlternative>,
}

impl RankingReport {
    /// "A2 > A3 > A1 > A4 > A5"; ties (exact score and accuracy) keep input
    /// order and are still joined with ">".
    pub fn ranking_line(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.label.as_str())
            .collect::<Vec<_>>()
            .join(" > ")
    }
}

/// Order aggregated values best-first: primary scalar per the score kind,
/// accuracy breaks ties within 1e-12, input order breaks exact ties.
pub fn rank(xs: &[IvqRofn], labels: &[String], q: f64, kind: ScoreKind) -> Vec<RankedAlternative> {
    const TOL: f64 = 1e-12;
    let mut entries: Vec<RankedAlternative> = xs
        .iter()
        .zip(labels)
        .enumerate()
        .map(|(idx, (v, label))| RankedAlternative {
            label: label.clone(),
            input_index: idx,
            value: *v,
            score: match kind {
                ScoreKind::Linear => v.score(),
                ScoreKind::QPow => v.score_qpow(q),
            },
            accuracy: v.accuracy(q),
            rank: 0,
        })
        .collect();
    entries.sort_by(|a, b| {
        let by_score = if (a.score - b.score).abs() <= TOL {
            std::cmp::Ordering::Equal
        } else {
            b.score.partial_cmp(&a.score).unwrap()
        };
        by_score.then(if (a.accuracy - b.accuracy).abs() <= TOL {
            std::cmp::Ordering::Equal
        } else {
            b.accuracy.partial_cmp(&a.accuracy).unwrap()
        })
    });
    for (pos, e) in entries.iter_mut().enumerate() {
        e.rank = pos + 1;
    }
    entries
}

/// Run the published pipeline end to end with the arithmetic operator at
/// both stages.
pub fn solve(problem: &DecisionProblem) -> Result<RankingReport> {
    solve_with(problem, CriteriaAggregator::WeightedArithmetic)
}

/// As [`solve`], with a selectable criteria-stage operator.
pub fn solve_with(problem: &DecisionProblem, op: CriteriaAggregator) -> Result<RankingReport> {
    let q = resolve_q(problem)?;
    let p = problem.params().agg(q)?;
    let r = aggregate_experts(problem, q)?;
    let xs = aggregate_criteria(&r, problem.criteria_weights(), &p, op)?;
    let entries = rank(&xs, problem.alternatives(), q, problem.params().score);
    Ok(RankingReport {
        resolved_q: q,
        params: *problem.params(),
        expert_matrix: r,
        entries,
    })
}
