//! Verification suites: each identity is checked by exact computation over an
//! index range and summarized in a [`VerificationReport`].

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{Field, Rational, RationalFunction};
use crate::closed_form::{Fault, Formulas};
use crate::error::{Error, Result};
use crate::matrix::{build_matrix, det_elimination, lu_doolittle, matmul, ExactMatrix};
use crate::par;

/// Attempts allowed per accepted `t` sample.
pub const MAX_SAMPLE_ATTEMPTS: usize = 100;
/// Numerators and denominators of random `t` samples are drawn from `1..=50`.
pub const SAMPLE_HEIGHT: i64 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Numeric,
}

/// Where numeric `t` values come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TSource {
    Given(Vec<Rational>),
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeSpec {
    Symbolic,
    Numeric(TSource),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexBound {
    pub index: &'static str,
    pub min: usize,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexValue {
    pub index: &'static str,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub quantity: String,
    pub indices: Vec<IndexValue>,
    pub t: Option<Rational>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one suite.
///
/// A failed (non-skipped) report always carries a counterexample or, when the
/// suite could not run, an error message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub range: Vec<IndexBound>,
    pub mode: Mode,
    pub t_samples: Vec<Rational>,
    pub discarded_samples: Vec<Rational>,
    pub passed: bool,
    pub skipped: bool,
    pub counterexample: Option<Counterexample>,
    pub error: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn new(suite: &str, mode: Mode, range: Vec<IndexBound>) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            range,
            mode,
            t_samples: Vec::new(),
            discarded_samples: Vec::new(),
            passed: true,
            skipped: false,
            counterexample: None,
            error: None,
            elapsed_ms: None,
        }
    }

    fn skipped(suite: &str, mode: Mode, range: Vec<IndexBound>) -> Self {
        VerificationReport {
            passed: false,
            skipped: true,
            ..Self::new(suite, mode, range)
        }
    }

    fn errored(suite: &str, mode: Mode, range: Vec<IndexBound>, err: &Error) -> Self {
        VerificationReport {
            passed: false,
            error: Some(err.to_string()),
            ..Self::new(suite, mode, range)
        }
    }

    fn fail_with(mut self, counterexample: Option<Counterexample>) -> Self {
        if let Some(c) = counterexample {
            self.passed = false;
            self.counterexample = Some(c);
        }
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        self
    }

    /// Same report with the wall-clock field cleared, for reproducible output.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            elapsed_ms: None,
            ..self.clone()
        }
    }

    /// Passed, or deliberately not run.
    pub fn ok(&self) -> bool {
        self.passed || self.skipped
    }

    pub fn status(&self) -> &'static str {
        match (self.skipped, self.passed) {
            (true, _) => "skipped",
            (false, true) => "passed",
            (false, false) => "failed",
        }
    }
}

fn s_range(s_max: usize) -> Vec<IndexBound> {
    vec![IndexBound { index: "s", min: 1, max: s_max }]
}

fn idx(pairs: &[(&'static str, usize)]) -> Vec<IndexValue> {
    pairs
        .iter()
        .map(|&(index, value)| IndexValue { index, value })
        .collect()
}

fn matrix_mismatch<F: Field>(
    quantity: &str,
    s: usize,
    t: Option<&Rational>,
    lhs: &ExactMatrix<F>,
    rhs: &ExactMatrix<F>,
) -> Option<Counterexample> {
    let (i, l) = lhs.first_mismatch(rhs)?;
    Some(Counterexample {
        quantity: quantity.to_string(),
        indices: idx(&[("s", s), ("i", i), ("l", l)]),
        t: t.cloned(),
        lhs: lhs.get(i, l).to_string(),
        rhs: rhs.get(i, l).to_string(),
    })
}

fn error_counterexample(quantity: &str, s: usize, t: Option<&Rational>, err: &Error) -> Counterexample {
    Counterexample {
        quantity: quantity.to_string(),
        indices: idx(&[("s", s)]),
        t: t.cloned(),
        lhs: format!("error: {err}"),
        rhs: "defined value".to_string(),
    }
}

/// Draws numeric `t = p/q` values at which `M(s_max, t)` exists and has an LU
/// factorization without pivoting. Rejected draws are returned as well.
pub fn sample_t_values(count: usize, seed: u64, s_max: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted: Vec<Rational> = Vec::with_capacity(count);
    let mut discarded = Vec::new();
    while accepted.len() < count {
        let mut attempts = 0;
        loop {
            if attempts == MAX_SAMPLE_ATTEMPTS {
                return Err(Error::RetriesExhausted(MAX_SAMPLE_ATTEMPTS));
            }
            attempts += 1;
            let p = rng.random_range(1..=SAMPLE_HEIGHT);
            let q = rng.random_range(1..=SAMPLE_HEIGHT);
            let t = Rational::new(p, q).expect("q >= 1");
            if accepted.contains(&t) {
                continue;
            }
            if is_generic(&t, s_max) {
                accepted.push(t);
                break;
            }
            if !discarded.contains(&t) {
                discarded.push(t);
            }
        }
    }
    Ok((accepted, discarded))
}

fn is_generic(t: &Rational, s_max: usize) -> bool {
    build_matrix(s_max, t).and_then(|m| lu_doolittle(&m)).is_ok()
}

fn resolve_samples(source: &TSource, s_max: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    match source {
        TSource::Random { count, seed } => sample_t_values(*count, *seed, s_max),
        TSource::Given(values) => Ok(values.iter().cloned().partition(|t| is_generic(t, s_max))),
    }
}

/// Runs `check(s, t)` over every `s` in `1..=s_max` and every sample, in
/// parallel, and keeps the first counterexample in `(sample, s)` order.
fn run_grid(
    report: VerificationReport,
    s_max: usize,
    mode: &ModeSpec,
    check_symbolic: impl Fn(usize) -> Option<Counterexample> + Sync + Send,
    check_numeric: impl Fn(usize, &Rational) -> Option<Counterexample> + Sync + Send,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = report;
    let failure = match mode {
        ModeSpec::Symbolic => par::map_range(1..s_max + 1, &check_symbolic).into_iter().flatten().next(),
        ModeSpec::Numeric(source) => {
            let (samples, discarded) = resolve_samples(source, s_max)?;
            let jobs: Vec<(usize, usize)> = (0..samples.len())
                .flat_map(|k| (1..=s_max).map(move |s| (k, s)))
                .collect();
            let found = par::map(&jobs, |&(k, s)| check_numeric(s, &samples[k]))
                .into_iter()
                .flatten()
                .next();
            report.t_samples = samples;
            report.discarded_samples = discarded;
            found
        }
    };
    Ok(report.fail_with(failure).timed(start))
}

fn mode_of(spec: &ModeSpec) -> Mode {
    match spec {
        ModeSpec::Symbolic => Mode::Symbolic,
        ModeSpec::Numeric(_) => Mode::Numeric,
    }
}

fn lu_product_at<F: Field>(formulas: &Formulas, s: usize, t: &F, t_label: Option<&Rational>) -> Option<Counterexample> {
    let built = build_matrix(s, t).and_then(|m| {
        let l = formulas.build_l(s, t)?;
        let u = formulas.build_u(s, t)?;
        Ok((m, matmul(&l, &u)?))
    });
    match built {
        Ok((m, lu)) => matrix_mismatch("(L*U)[i][l] vs M[i][l]", s, t_label, &lu, &m),
        Err(e) => Some(error_counterexample("L*U", s, t_label, &e)),
    }
}

/// Checks `sum_j L[i][j] U[j][l] = M[i][l]` with the closed-form factors.
pub fn verify_lu_product(formulas: &Formulas, s_max: usize, mode: &ModeSpec) -> Result<VerificationReport> {
    let report = VerificationReport::new("lu-product", mode_of(mode), s_range(s_max));
    let sym = RationalFunction::t();
    run_grid(
        report,
        s_max,
        mode,
        |s| lu_product_at(formulas, s, &sym, None),
        |s, t| lu_product_at(formulas, s, t, Some(t)),
    )
}

fn factors_match_at<F: Field>(formulas: &Formulas, s: usize, t: &F, t_label: Option<&Rational>) -> Option<Counterexample> {
    let elim = match build_matrix(s, t).and_then(|m| lu_doolittle(&m)) {
        Ok(f) => f,
        Err(e) => return Some(error_counterexample("Doolittle LU", s, t_label, &e)),
    };
    let closed = formulas.build_l(s, t).and_then(|l| Ok((l, formulas.build_u(s, t)?)));
    match closed {
        Ok((l, u)) => matrix_mismatch("closed-form L[i][l] vs Doolittle L[i][l]", s, t_label, &l, &elim.l)
            .or_else(|| matrix_mismatch("closed-form U[i][l] vs Doolittle U[i][l]", s, t_label, &u, &elim.u)),
        Err(e) => Some(error_counterexample("closed-form L, U", s, t_label, &e)),
    }
}

/// Checks that the closed-form `L`, `U` coincide with Doolittle elimination.
pub fn verify_factors_match(formulas: &Formulas, s_max: usize, mode: &ModeSpec) -> Result<VerificationReport> {
    let report = VerificationReport::new("factors-match", mode_of(mode), s_range(s_max));
    let sym = RationalFunction::t();
    run_grid(
        report,
        s_max,
        mode,
        |s| factors_match_at(formulas, s, &sym, None),
        |s, t| factors_match_at(formulas, s, t, Some(t)),
    )
}

/// Checks both product-to-Pochhammer identities as exact rational function
/// equalities: the left one over `i, j`, the right one over `j, l`.
pub fn verify_gamma_identities(formulas: &Formulas, i_max: usize, j_max: usize, l_max: usize) -> VerificationReport {
    let start = Instant::now();
    let range = vec![
        IndexBound { index: "i", min: 1, max: i_max },
        IndexBound { index: "j", min: 1, max: j_max },
        IndexBound { index: "l", min: 1, max: l_max },
    ];
    let report = VerificationReport::new("gamma-identities", Mode::Symbolic, range);

    #[derive(Clone, Copy)]
    enum Job {
        Left(usize, usize),
        Right(usize, usize),
    }
    let jobs: Vec<Job> = (1..=i_max)
        .flat_map(|i| (1..=j_max).map(move |j| Job::Left(i, j)))
        .chain((1..=j_max).flat_map(|j| (1..=l_max).map(move |l| Job::Right(j, l))))
        .collect();
    let failure = par::map(&jobs, |job| {
        let (name, indices, (lhs, rhs)) = match *job {
            Job::Left(i, j) => ("left product identity", idx(&[("i", i), ("j", j)]), formulas.gamma_identity_left(i, j)),
            Job::Right(j, l) => ("right product identity", idx(&[("j", j), ("l", l)]), formulas.gamma_identity_right(j, l)),
        };
        (lhs != rhs).then(|| Counterexample {
            quantity: name.to_string(),
            indices,
            t: None,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    })
    .into_iter()
    .flatten()
    .next();
    report.fail_with(failure).timed(start)
}

/// Checks `E1 = ... = E6`, `E6 > 0` and `E6 = prod U[j][j]` at `t = 1` for
/// `s = 1..=s_max`, plus `E6 = det M(s, 1)` by elimination up to `elimination_cap`.
pub fn verify_chain(formulas: &Formulas, s_max: usize, elimination_cap: usize) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("chain", Mode::Numeric, s_range(s_max));
    report.t_samples = vec![Rational::one()];
    let one = Rational::one();
    let failure = par::map_range(1..s_max + 1, |s| {
        let chain = formulas.chain_t1(s);
        if let Some((a, b)) = chain.first_disagreement() {
            return Some(Counterexample {
                quantity: format!("E{a} vs E{b}"),
                indices: idx(&[("s", s)]),
                t: Some(one.clone()),
                lhs: chain.values[a - 1].to_string(),
                rhs: chain.values[b - 1].to_string(),
            });
        }
        let e6 = &chain.values[5];
        if !e6.is_positive() {
            return Some(Counterexample {
                quantity: "E6 > 0".to_string(),
                indices: idx(&[("s", s)]),
                t: Some(one.clone()),
                lhs: e6.to_string(),
                rhs: "positive".to_string(),
            });
        }
        let closed = match formulas.det_closed(s, &one) {
            Ok(v) => v,
            Err(e) => return Some(error_counterexample("prod U[j][j]", s, Some(&one), &e)),
        };
        if closed != *e6 {
            return Some(Counterexample {
                quantity: "E6 vs prod U[j][j]".to_string(),
                indices: idx(&[("s", s)]),
                t: Some(one.clone()),
                lhs: e6.to_string(),
                rhs: closed.to_string(),
            });
        }
        if s <= elimination_cap {
            let elim = match build_matrix(s, &one).and_then(|m| det_elimination(&m)) {
                Ok(v) => v,
                Err(e) => return Some(error_counterexample("det M", s, Some(&one), &e)),
            };
            if elim != *e6 {
                return Some(Counterexample {
                    quantity: "E6 vs det M by elimination".to_string(),
                    indices: idx(&[("s", s)]),
                    t: Some(one.clone()),
                    lhs: e6.to_string(),
                    rhs: elim.to_string(),
                });
            }
        }
        None
    })
    .into_iter()
    .flatten()
    .next();
    report.fail_with(failure).timed(start)
}

/// Sizes, sample counts and seed for [`run_all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub s_max_symbolic: usize,
    pub s_max_numeric: usize,
    pub t_sample_count: usize,
    pub seed: u64,
    pub gamma_i_max: usize,
    pub gamma_j_max: usize,
    pub gamma_l_max: usize,
    pub chain_s_max: usize,
    pub elimination_cap: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            s_max_symbolic: 6,
            s_max_numeric: 12,
            t_sample_count: 20,
            seed: 0,
            gamma_i_max: 8,
            gamma_j_max: 8,
            gamma_l_max: 8,
            chain_s_max: 20,
            elimination_cap: 12,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Suite {
    LuProductSymbolic,
    LuProductNumeric,
    FactorsSymbolic,
    FactorsNumeric,
    Gamma,
    Chain,
}

const SUITES: [Suite; 6] = [
    Suite::LuProductSymbolic,
    Suite::LuProductNumeric,
    Suite::FactorsSymbolic,
    Suite::FactorsNumeric,
    Suite::Gamma,
    Suite::Chain,
];

/// Runs every suite; suites are independent and run concurrently. Errors are
/// folded into failed reports rather than aborting the others.
pub fn run_all(config: &VerifyConfig) -> Vec<VerificationReport> {
    let formulas = Formulas { fault: config.fault };
    let numeric = ModeSpec::Numeric(TSource::Random {
        count: config.t_sample_count,
        seed: config.seed,
    });
    let numeric_enabled = config.s_max_numeric > 0 && config.t_sample_count > 0;
    let gamma_enabled = config.gamma_i_max > 0 && config.gamma_j_max > 0 && config.gamma_l_max > 0;

    let settle = |name: &str, mode: Mode, s_max: usize, r: Result<VerificationReport>| {
        r.unwrap_or_else(|e| VerificationReport::errored(name, mode, s_range(s_max), &e))
    };
    par::map(&SUITES, |suite| match suite {
        Suite::LuProductSymbolic if config.s_max_symbolic == 0 => {
            VerificationReport::skipped("lu-product", Mode::Symbolic, s_range(0))
        }
        Suite::LuProductSymbolic => settle(
            "lu-product",
            Mode::Symbolic,
            config.s_max_symbolic,
            verify_lu_product(&formulas, config.s_max_symbolic, &ModeSpec::Symbolic),
        ),
        Suite::LuProductNumeric if !numeric_enabled => {
            VerificationReport::skipped("lu-product", Mode::Numeric, s_range(config.s_max_numeric))
        }
        Suite::LuProductNumeric => settle(
            "lu-product",
            Mode::Numeric,
            config.s_max_numeric,
            verify_lu_product(&formulas, config.s_max_numeric, &numeric),
        ),
        Suite::FactorsSymbolic if config.s_max_symbolic == 0 => {
            VerificationReport::skipped("factors-match", Mode::Symbolic, s_range(0))
        }
        Suite::FactorsSymbolic => settle(
            "factors-match",
            Mode::Symbolic,
            config.s_max_symbolic,
            verify_factors_match(&formulas, config.s_max_symbolic, &ModeSpec::Symbolic),
        ),
        Suite::FactorsNumeric if !numeric_enabled => {
            VerificationReport::skipped("factors-match", Mode::Numeric, s_range(config.s_max_numeric))
        }
        Suite::FactorsNumeric => settle(
            "factors-match",
            Mode::Numeric,
            config.s_max_numeric,
            verify_factors_match(&formulas, config.s_max_numeric, &numeric),
        ),
        Suite::Gamma if !gamma_enabled => VerificationReport::skipped("gamma-identities", Mode::Symbolic, Vec::new()),
        Suite::Gamma => verify_gamma_identities(&formulas, config.gamma_i_max, config.gamma_j_max, config.gamma_l_max),
        Suite::Chain if config.chain_s_max == 0 => VerificationReport::skipped("chain", Mode::Numeric, s_range(0)),
        Suite::Chain => verify_chain(&formulas, config.chain_s_max, config.elimination_cap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn lu_product_small_symbolic_and_trivial_numeric() {
        let r = verify_lu_product(&Formulas::EXACT, 2, &ModeSpec::Symbolic).unwrap();
        assert!(r.passed && r.counterexample.is_none());
        let r = verify_lu_product(&Formulas::EXACT, 1, &ModeSpec::Numeric(TSource::Given(vec![q("1")]))).unwrap();
        assert!(r.passed);
        assert_eq!(r.t_samples, vec![q("1")]);
    }

    #[test]
    fn given_singular_samples_are_discarded() {
        let source = TSource::Given(vec![q("2"), q("1"), q("2/3")]);
        let r = verify_factors_match(&Formulas::EXACT, 3, &ModeSpec::Numeric(source)).unwrap();
        assert!(r.passed);
        assert_eq!(r.t_samples, vec![q("1")]);
        assert_eq!(r.discarded_samples, vec![q("2"), q("2/3")]);
    }

    #[test]
    fn random_samples_are_generic_and_reproducible() {
        let (a, da) = sample_t_values(20, 7, 10).unwrap();
        let (b, db) = sample_t_values(20, 7, 10).unwrap();
        assert_eq!((a.clone(), da.clone()), (b, db));
        assert_eq!(a.len(), 20);
        for t in &a {
            assert!(build_matrix(10, t).is_ok());
        }
        for t in &da {
            assert!(!is_generic(t, 10));
        }
    }

    #[test]
    fn gamma_small() {
        let r = verify_gamma_identities(&Formulas::EXACT, 1, 1, 1);
        assert!(r.passed);
        let r = verify_gamma_identities(&Formulas::with_fault(Fault::GammaLeftSignDropped), 2, 2, 2);
        assert!(!r.passed);
        let c = r.counterexample.unwrap();
        assert_eq!(c.indices, idx(&[("i", 1), ("j", 1)]));
        assert_ne!(c.lhs, c.rhs);
    }

    #[test]
    fn chain_small_and_faulty() {
        assert!(verify_chain(&Formulas::EXACT, 2, 12).passed);
        let r = verify_chain(&Formulas::with_fault(Fault::E3ExponentShift), 3, 12);
        let c = r.counterexample.expect("must fail");
        assert_eq!(c.indices, idx(&[("s", 1)]));
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("1/3", "256/3"));
    }

    #[test]
    fn faulty_u_fails_lu_product_at_two() {
        let r = verify_lu_product(&Formulas::with_fault(Fault::UBaseFifteen), 3, &ModeSpec::Symbolic).unwrap();
        assert!(!r.passed);
        let c = r.counterexample.unwrap();
        assert_eq!(c.indices[0], IndexValue { index: "s", value: 2 });
        assert_ne!(c.lhs, c.rhs);
    }

    #[test]
    fn zero_sizes_are_skipped_not_passed() {
        let config = VerifyConfig {
            s_max_symbolic: 0,
            s_max_numeric: 3,
            t_sample_count: 2,
            chain_s_max: 3,
            gamma_i_max: 2,
            gamma_j_max: 2,
            gamma_l_max: 2,
            ..VerifyConfig::default()
        };
        let reports = run_all(&config);
        assert_eq!(reports.len(), 6);
        let skipped: Vec<_> = reports.iter().filter(|r| r.skipped).collect();
        assert_eq!(skipped.len(), 2);
        assert!(skipped.iter().all(|r| !r.passed && r.mode == Mode::Symbolic));
        assert!(reports.iter().all(VerificationReport::ok));
    }
}
