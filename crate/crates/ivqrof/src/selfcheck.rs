//! Seeded randomized verification suites.
//!
//! Each suite draws reproducible cases from its own ChaCha stream, exercises
//! the closed forms against the fold oracle or a stated invariant, and
//! reports pass/fail counts with the worst observed deviation. The CLI
//! exposes them as `selfcheck`; the acceptance tests run them directly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hamacher::{h_power, h_prod, h_prod_scalar, h_scalar_mul, h_sum, h_sum_scalar};
use crate::heronian::{hhmga, hhmwa, hmm, hmm_phi1, GeometricMode};
use crate::number::{alg_power, alg_prod, alg_scalar_mul, alg_sum, compare, IvqRofn};
use crate::oracle::{fold_eval, FoldKind, FoldSpec};
use crate::params::{AggParams, WeightVector};

pub const DEFAULT_CASES: usize = 1000;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy)]
pub struct SelfcheckConfig {
    pub cases: usize,
    pub seed: u64,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig {
            cases: DEFAULT_CASES,
            seed: DEFAULT_SEED,
        }
    }
}

/// Result of one suite: case count, failure count, worst deviation seen and
/// free-form notes (sampling restrictions, example failures).
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_dev: f64,
    pub notes: Vec<String>,
    /// Whether failures count against the overall verdict. Suites measuring
    /// a property the operators provably do not have report their findings
    /// without asserting them.
    pub asserted: bool,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// False only when an asserted suite failed.
    pub fn acceptable(&self) -> bool {
        self.passed() || !self.asserted
    }
}

const Q_GRID: [f64; 3] = [1.0, 2.0, 3.0];
const PHI_GRID: [f64; 4] = [0.5, 1.0, 2.0, 3.0];
const XY_GRID: [(f64, f64); 5] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 3.0), (3.0, 3.0)];
// Exponent pairs for permutation draws. The pair sum over i <= j is
// order-dependent when x != y (reversing the inputs exchanges x and y), so
// invariance only holds, and is only sampled, on the diagonal.
const XY_DIAGONAL: [(f64, f64); 3] = [(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)];

fn pick<T: Copy>(rng: &mut ChaCha8Rng, xs: &[T]) -> T {
    *xs.choose(rng).expect("non-empty grid")
}

/// A number feasible at rung q: draws mu_hi first, then nu_hi under the
/// remaining budget, then the lower endpoints.
fn random_number(rng: &mut ChaCha8Rng, q: f64) -> IvqRofn {
    let mu_hi: f64 = rng.gen();
    let budget = (1.0 - mu_hi.powf(q)).max(0.0).powf(1.0 / q);
    let nu_hi = rng.gen::<f64>() * budget;
    let mu_lo = rng.gen::<f64>() * mu_hi;
    let nu_lo = rng.gen::<f64>() * nu_hi;
    IvqRofn::new(mu_lo, mu_hi, nu_lo, nu_hi).expect("construction is feasible")
}

fn random_values(rng: &mut ChaCha8Rng, n: usize, q: f64) -> Vec<IvqRofn> {
    (0..n).map(|_| random_number(rng, q)).collect()
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> WeightVector {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    WeightVector::new(raw.into_iter().map(|w| w / total).collect())
        .expect("normalized weights are valid")
}

fn max_abs_dev(a: &IvqRofn, b: &IvqRofn) -> f64 {
    a.as_array()
        .iter()
        .zip(b.as_array())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Operator {
    Hmm,
    Hhmwa,
    HhmgaDual,
}

const OPERATORS: [Operator; 3] = [Operator::Hmm, Operator::Hhmwa, Operator::HhmgaDual];

impl Operator {
    fn name(&self) -> &'static str {
        match self {
            Operator::Hmm => "hmm",
            Operator::Hhmwa => "hhmwa",
            Operator::HhmgaDual => "hhmga",
        }
    }

    fn closed(
        &self,
        values: &[IvqRofn],
        weights: &WeightVector,
        p: &AggParams,
    ) -> crate::error::Result<IvqRofn> {
        match self {
            Operator::Hmm => hmm(values, p),
            Operator::Hhmwa => hhmwa(values, weights, p),
            Operator::HhmgaDual => hhmga(values, weights, p, GeometricMode::Dual),
        }
    }

    fn fold(
        &self,
        values: &[IvqRofn],
        weights: &WeightVector,
        p: &AggParams,
    ) -> crate::error::Result<IvqRofn> {
        let (kind, w) = match self {
            Operator::Hmm => (FoldKind::Hmm, None),
            Operator::Hhmwa => (FoldKind::Hhmwa, Some(weights)),
            Operator::HhmgaDual => (FoldKind::HhmgaDual, Some(weights)),
        };
        fold_eval(&FoldSpec {
            kind,
            values,
            weights: w,
            params: p,
        })
    }
}

struct Tally {
    cases: usize,
    failures: usize,
    max_dev: f64,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: 0,
            max_dev: 0.0,
            notes: Vec::new(),
        }
    }

    fn record(&mut self, dev: f64, tol: f64, detail: impl FnOnce() -> String) {
        self.cases += 1;
        self.max_dev = self.max_dev.max(dev);
        if !(dev <= tol) {
            self.failures += 1;
            if self.notes.len() < 8 {
                self.notes.push(format!("dev={dev:.3e}: {}", detail()));
            }
        }
    }

    fn error(&mut self, detail: String) {
        self.cases += 1;
        self.failures += 1;
        if self.notes.len() < 8 {
            self.notes.push(detail);
        }
    }

    fn into_outcome(self, name: &'static str) -> SuiteOutcome {
        SuiteOutcome {
            name,
            cases: self.cases,
            failures: self.failures,
            max_dev: self.max_dev,
            notes: self.notes,
            asserted: true,
        }
    }
}

/// Closed forms against the fold oracle over the full parameter grid.
pub fn oracle_equivalence(cases: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for _ in 0..cases {
        let n = rng.gen_range(1..=5);
        let q = pick(&mut rng, &Q_GRID);
        let phi = pick(&mut rng, &PHI_GRID);
        let (x, y) = pick(&mut rng, &XY_GRID);
        let p = AggParams::new(q, phi, x, y).expect("grid params are valid");
        let values = random_values(&mut rng, n, q);
        let weights = random_weights(&mut rng, n);
        let op = pick(&mut rng, &OPERATORS);
        let ctx = || format!("{} n={n} q={q} phi={phi} x={x} y={y}", op.name());
        match (
            op.closed(&values, &weights, &p),
            op.fold(&values, &weights, &p),
        ) {
            (Ok(c), Ok(f)) => tally.record(max_abs_dev(&c, &f), 1e-9, ctx),
            (c, f) => tally.error(format!("{}: closed={c:?} fold={f:?}", ctx())),
        }
    }
    tally.into_outcome("oracle-equivalence")
}

/// At phi = 1 the Hamacher operations are the algebraic ones, and the mean
/// has an independent closed form.
pub fn phi1_reduction(cases: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for _ in 0..cases {
        let q = pick(&mut rng, &Q_GRID);
        let (x, y) = pick(&mut rng, &XY_GRID);
        let p = AggParams::new(q, 1.0, x, y).expect("phi=1 params");
        let a = random_number(&mut rng, q);
        let b = random_number(&mut rng, q);
        let theta = rng.gen_range(0.05..2.0);
        let pairs = [
            (h_sum(&a, &b, &p), alg_sum(&a, &b, q), "sum"),
            (h_prod(&a, &b, &p), alg_prod(&a, &b, q), "prod"),
            (
                h_scalar_mul(theta, &a, &p),
                alg_scalar_mul(theta, &a, q),
                "scalar-mul",
            ),
            (h_power(&a, theta, &p), alg_power(&a, theta, q), "power"),
        ];
        for (h, alg, what) in pairs {
            match (h, alg) {
                (Ok(hv), Ok(av)) => tally.record(max_abs_dev(&hv, &av), 1e-9, || {
                    format!("{what} q={q} theta={theta}")
                }),
                (h, alg) => tally.error(format!("{what}: hamacher={h:?} algebraic={alg:?}")),
            }
        }
        let n = rng.gen_range(1..=5);
        let values = random_values(&mut rng, n, q);
        match (hmm(&values, &p), hmm_phi1(&values, q, x, y)) {
            (Ok(g), Ok(s)) => tally.record(max_abs_dev(&g, &s), 1e-9, || {
                format!("mean n={n} q={q} x={x} y={y}")
            }),
            (g, s) => tally.error(format!("mean: general={g:?} phi1={s:?}")),
        }
    }
    tally.into_outcome("phi1-reduction")
}

/// At phi = 2 the scalar operations are the Einstein forms.
pub fn einstein_reduction(cases: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for _ in 0..cases {
        let a: f64 = rng.gen();
        let b: f64 = rng.gen();
        let sum = h_sum_scalar(a, b, 2.0).expect("valid scalars");
        let prod = h_prod_scalar(a, b, 2.0).expect("valid scalars");
        let einstein_sum = (a + b) / (1.0 + a * b);
        let einstein_prod = a * b / (1.0 + (1.0 - a) * (1.0 - b));
        tally.record((sum - einstein_sum).abs(), 1e-12, || {
            format!("sum a={a} b={b}")
        });
        tally.record((prod - einstein_prod).abs(), 1e-12, || {
            format!("prod a={a} b={b}")
        });
    }
    tally.into_outcome("einstein-reduction")
}

/// Joint permutation of values (and weights) leaves each operator's output
/// unchanged. Sampled on x = y; see XY_DIAGONAL.
pub fn permutation(cases: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for _ in 0..cases {
        let n = rng.gen_range(2..=5);
        let q = pick(&mut rng, &Q_GRID);
        let phi = pick(&mut rng, &PHI_GRID);
        let (x, y) = pick(&mut rng, &XY_DIAGONAL);
        let p = AggParams::new(q, phi, x, y).expect("grid params are valid");
        let values = random_values(&mut rng, n, q);
        let weights = random_weights(&mut rng, n);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let shuffled_values: Vec<IvqRofn> = order.iter().map(|&i| values[i]).collect();
        let shuffled_weights =
            WeightVector::new(order.iter().map(|&i| weights.as_slice()[i]).collect())
                .expect("permuted weights stay valid");
        let op = pick(&mut rng, &OPERATORS);
        let ctx = || format!("{} n={n} q={q} phi={phi} x={x} y={y}", op.name());
        match (
            op.closed(&values, &weights, &p),
            op.closed(&shuffled_values, &shuffled_weights, &p),
        ) {
            (Ok(base), Ok(perm)) => tally.record(max_abs_dev(&base, &perm), 1e-12, ctx),
            (base, perm) => tally.error(format!("{}: base={base:?} perm={perm:?}", ctx())),
        }
    }
    let mut outcome = tally.into_outcome("permutation");
    outcome.notes.push(
        "exponents drawn with x = y; the pair sum is order-dependent when x != y \
         (reversing the inputs exchanges x and y)"
            .to_string(),
    );
    outcome
}

/// Measures how far the aggregate's score strays outside the scores of the
/// smallest and largest input under the comparison rule.
///
/// This suite observes rather than asserts: the score bracket provably does
/// not contain the aggregate in general. The comparison orders by score
/// alone, so two inputs with similar scores can have very different
/// membership and non-membership profiles, and the pairwise interaction
/// terms then land the aggregate outside the bracket; the weighted operators
/// additionally raise each input to its weight, so even a constant input is
/// not a fixed point. The fold oracle reproduces every violation, confirming
/// they are properties of the operators, not evaluation bugs.
pub fn boundedness_by_score(cases: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for _ in 0..cases {
        let n = rng.gen_range(2..=5);
        let q = pick(&mut rng, &Q_GRID);
        let phi = pick(&mut rng, &PHI_GRID);
        let (x, y) = pick(&mut rng, &XY_GRID);
        let p = AggParams::new(q, phi, x, y).expect("grid params are valid");
        let values = random_values(&mut rng, n, q);
        let weights = random_weights(&mut rng, n);
        let op = pick(&mut rng, &OPERATORS);
        let lo = values
            .iter()
            .min_by(|a, b| compare(a, b, q))
            .expect("non-empty")
            .score();
        let hi = values
            .iter()
            .max_by(|a, b| compare(a, b, q))
            .expect("non-empty")
            .score();
        match op.closed(&values, &weights, &p) {
            Ok(result) => {
                let s = result.score();
                let violation = (lo - s).max(s - hi).max(0.0);
                tally.record(violation, 1e-12, || {
                    format!(
                        "{} n={n} q={q} phi={phi} x={x} y={y} score={s:.6} bounds=[{lo:.6}, {hi:.6}]",
                        op.name()
                    )
                });
            }
            Err(e) => tally.error(format!("{}: {e}", op.name())),
        }
    }
    let mut outcome = tally.into_outcome("boundedness-by-score");
    outcome.asserted = false;
    outcome.notes.push(
        "observed, not asserted: the aggregate provably escapes the score bracket of the \
         inputs (pairwise interaction terms, and weight powers in the weighted operators); \
         the fold oracle reproduces every excursion"
            .to_string(),
    );
    outcome
}

/// Componentwise dominance of every input never lowers the aggregate's
/// score.
pub fn dominance_monotonicity(cases: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for _ in 0..cases {
        let n = rng.gen_range(2..=5);
        let q = pick(&mut rng, &Q_GRID);
        let phi = pick(&mut rng, &PHI_GRID);
        let (x, y) = pick(&mut rng, &XY_GRID);
        let p = AggParams::new(q, phi, x, y).expect("grid params are valid");
        let values = random_values(&mut rng, n, q);
        let weights = random_weights(&mut rng, n);
        let dominating: Vec<IvqRofn> = values.iter().map(|v| dominate(&mut rng, v, q)).collect();
        let op = pick(&mut rng, &OPERATORS);
        match (
            op.closed(&values, &weights, &p),
            op.closed(&dominating, &weights, &p),
        ) {
            (Ok(base), Ok(better)) => {
                let drop = (base.score() - better.score()).max(0.0);
                tally.record(drop, 1e-12, || {
                    format!(
                        "{} n={n} q={q} phi={phi} x={x} y={y} base={:.6} better={:.6}",
                        op.name(),
                        base.score(),
                        better.score()
                    )
                });
            }
            (base, better) => tally.error(format!(
                "{}: base={base:?} dominating={better:?}",
                op.name()
            )),
        }
    }
    tally.into_outcome("dominance-monotonicity")
}

/// A number componentwise dominating `v` (memberships raised,
/// non-memberships lowered), still feasible at rung q.
fn dominate(rng: &mut ChaCha8Rng, v: &IvqRofn, q: f64) -> IvqRofn {
    let shrink = rng.gen::<f64>();
    let nu_hi = v.nu_hi() * shrink;
    let nu_lo = v.nu_lo() * shrink;
    let headroom = (1.0 - nu_hi.powf(q)).max(0.0).powf(1.0 / q);
    let mu_hi = v.mu_hi() + rng.gen::<f64>() * (headroom - v.mu_hi()).max(0.0);
    let mu_lo = v.mu_lo() + rng.gen::<f64>() * (mu_hi - v.mu_lo());
    IvqRofn::new(mu_lo, mu_hi, nu_lo, nu_hi).expect("dominating value is feasible")
}

/// Run every suite with seeds derived from the config seed.
pub fn run_all(config: &SelfcheckConfig) -> Vec<SuiteOutcome> {
    let law_cases = config.cases.div_ceil(2);
    vec![
        oracle_equivalence(config.cases, config.seed),
        phi1_reduction(config.cases.div_ceil(5), config.seed.wrapping_add(1)),
        einstein_reduction(config.cases, config.seed.wrapping_add(2)),
        permutation(law_cases, config.seed.wrapping_add(3)),
        boundedness_by_score(law_cases, config.seed.wrapping_add(4)),
        dominance_monotonicity(law_cases, config.seed.wrapping_add(5)),
    ]
}
