use std::time::{Duration, Instant};

use serde::Serialize;

use cauchy_lu::matrix::{build_matrix, det_elimination, lu_doolittle, ExactMatrix};
use cauchy_lu::verify::{run_all, VerificationReport};
use cauchy_lu::{Fault, Field, Formulas, Rational, RationalFunction, VerifyConfig};

const WARMUP_RUNS: usize = 3;
const MEASURED_RUNS: usize = 5;
const ORACLE_CAP_NUMERIC: usize = 12;
const ORACLE_CAP_SYMBOLIC: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{kind}: {source}", kind = .source.kind())]
    Compute {
        #[from]
        source: cauchy_lu::Error,
    },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Output(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute { .. } | CliError::Mismatch(_) => 1,
            CliError::Output(_) => 2,
        }
    }
}

pub struct Context {
    pub json: bool,
    pub fault: Option<Fault>,
}

impl Context {
    fn formulas(&self) -> Formulas {
        Formulas { fault: self.fault }
    }

    fn emit<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        println!("{}", serde_json::to_string_pretty(value)?);
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum TMode {
    Numeric(Rational),
    Symbolic,
}

impl TMode {
    fn label(&self) -> Option<String> {
        match self {
            TMode::Numeric(t) => Some(t.to_string()),
            TMode::Symbolic => None,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            TMode::Numeric(_) => "numeric",
            TMode::Symbolic => "symbolic",
        }
    }
}

#[derive(Serialize)]
struct OracleJson {
    method: &'static str,
    value: String,
    matches: bool,
}

#[derive(Serialize)]
struct DetJson {
    s: usize,
    mode: &'static str,
    t: Option<String>,
    determinant: String,
    oracle: Option<OracleJson>,
}

pub fn det(ctx: &Context, s: usize, mode: TMode, oracle_cap: Option<usize>) -> Result<bool, CliError> {
    match &mode {
        TMode::Numeric(t) => det_in(ctx, s, t, &mode, oracle_cap.unwrap_or(ORACLE_CAP_NUMERIC)),
        TMode::Symbolic => det_in(ctx, s, &RationalFunction::t(), &mode, oracle_cap.unwrap_or(ORACLE_CAP_SYMBOLIC)),
    }
}

fn det_in<F: Field>(ctx: &Context, s: usize, t: &F, mode: &TMode, cap: usize) -> Result<bool, CliError> {
    let m = build_matrix(s, t)?;
    let value = ctx.formulas().det_closed(s, t)?;
    let oracle = if s <= cap { Some(det_elimination(&m)?) } else { None };
    let matches = oracle.as_ref().is_none_or(|o| *o == value);

    if ctx.json {
        ctx.emit(&DetJson {
            s,
            mode: mode.name(),
            t: mode.label(),
            determinant: value.to_string(),
            oracle: oracle.as_ref().map(|o| OracleJson {
                method: "elimination",
                value: o.to_string(),
                matches: *o == value,
            }),
        })?;
    } else {
        println!("{value}");
        match &oracle {
            Some(o) if matches => println!("elimination oracle: {o} (match)"),
            Some(o) => println!("elimination oracle: {o} (MISMATCH)"),
            None => println!("elimination oracle: skipped (s > {cap})"),
        }
    }
    if !matches {
        return Err(CliError::Mismatch(format!(
            "closed-form determinant {value} differs from elimination {}",
            oracle.expect("present when mismatched")
        )));
    }
    Ok(true)
}

#[derive(Serialize)]
#[serde(bound = "")]
struct FactorsJson<'a, F: Field> {
    #[serde(rename = "L")]
    l: &'a ExactMatrix<F>,
    #[serde(rename = "U")]
    u: &'a ExactMatrix<F>,
}

#[derive(Serialize)]
#[serde(bound = "")]
struct LuJson<'a, F: Field> {
    s: usize,
    mode: &'static str,
    t: Option<String>,
    closed_form: FactorsJson<'a, F>,
    doolittle: Option<FactorsJson<'a, F>>,
    verdict: Option<&'static str>,
}

pub fn lu(ctx: &Context, s: usize, mode: TMode, compare: bool) -> Result<bool, CliError> {
    match &mode {
        TMode::Numeric(t) => lu_in(ctx, s, t, &mode, compare),
        TMode::Symbolic => lu_in(ctx, s, &RationalFunction::t(), &mode, compare),
    }
}

fn lu_in<F: Field>(ctx: &Context, s: usize, t: &F, mode: &TMode, compare: bool) -> Result<bool, CliError> {
    let m = build_matrix(s, t)?;
    let formulas = ctx.formulas();
    let l = formulas.build_l(s, t)?;
    let u = formulas.build_u(s, t)?;
    let elim = if compare { Some(lu_doolittle(&m)?) } else { None };
    let matches = elim.as_ref().map(|f| f.l == l && f.u == u);
    let verdict = matches.map(|ok| if ok { "match" } else { "mismatch" });

    if ctx.json {
        ctx.emit(&LuJson {
            s,
            mode: mode.name(),
            t: mode.label(),
            closed_form: FactorsJson { l: &l, u: &u },
            doolittle: elim.as_ref().map(|f| FactorsJson { l: &f.l, u: &f.u }),
            verdict,
        })?;
    } else {
        println!("L = {l}");
        println!("U = {u}");
        if let Some(f) = &elim {
            println!("Doolittle L = {}", f.l);
            println!("Doolittle U = {}", f.u);
        }
        if let Some(v) = verdict {
            println!("verdict: {v}");
        }
    }
    Ok(matches.unwrap_or(true))
}

#[derive(Serialize)]
struct ChainRow {
    s: usize,
    values: Vec<String>,
    agree: bool,
}

pub fn chain(ctx: &Context, s_max: usize) -> Result<bool, CliError> {
    let formulas = ctx.formulas();
    let rows: Vec<ChainRow> = (1..=s_max)
        .map(|s| {
            let c = formulas.chain_t1(s);
            ChainRow {
                s,
                values: c.values.iter().map(ToString::to_string).collect(),
                agree: c.all_equal(),
            }
        })
        .collect();
    let all_agree = rows.iter().all(|r| r.agree);
    if ctx.json {
        ctx.emit(&rows)?;
    } else {
        println!("s\tE1\tE2\tE3\tE4\tE5\tE6\tverdict");
        for r in &rows {
            let verdict = if r.agree { "agree" } else { "DISAGREE" };
            println!("{}\t{}\t{verdict}", r.s, r.values.join("\t"));
        }
    }
    Ok(all_agree)
}

#[derive(Serialize)]
struct VerifyJson {
    seed: u64,
    passed: bool,
    reports: Vec<VerificationReport>,
}

pub fn verify(ctx: &Context, config: &VerifyConfig, timings: bool) -> Result<bool, CliError> {
    let reports = run_all(config);
    let passed = reports.iter().all(VerificationReport::ok);
    if ctx.json {
        let reports = if timings {
            reports
        } else {
            reports.iter().map(VerificationReport::without_timing).collect()
        };
        ctx.emit(&VerifyJson {
            seed: config.seed,
            passed,
            reports,
        })?;
        return Ok(passed);
    }
    for r in &reports {
        let range = r
            .range
            .iter()
            .map(|b| format!("{}={}..{}", b.index, b.min, b.max))
            .collect::<Vec<_>>()
            .join(" ");
        let ms = r.elapsed_ms.map(|ms| format!(" ({ms} ms)")).unwrap_or_default();
        let samples = if r.t_samples.is_empty() || r.mode == cauchy_lu::verify::Mode::Symbolic {
            String::new()
        } else {
            format!(" t-samples={} discarded={}", r.t_samples.len(), r.discarded_samples.len())
        };
        println!(
            "{:<7} {:<16} {:<8} {range}{samples}{ms}",
            r.status().to_uppercase(),
            r.suite,
            format!("{:?}", r.mode).to_lowercase()
        );
        if let Some(c) = &r.counterexample {
            let at = c
                .indices
                .iter()
                .map(|i| format!("{}={}", i.index, i.value))
                .collect::<Vec<_>>()
                .join(", ");
            let t = c.t.as_ref().map(|t| format!(", t={t}")).unwrap_or_default();
            println!("        counterexample {} at {at}{t}: {} != {}", c.quantity, c.lhs, c.rhs);
        }
        if let Some(e) = &r.error {
            println!("        error: {e}");
        }
    }
    Ok(passed)
}

#[derive(Serialize)]
struct BenchRow {
    s: usize,
    determinant: String,
    closed_form_us: f64,
    elimination_us: f64,
}

fn median_time(mut f: impl FnMut()) -> Duration {
    for _ in 0..WARMUP_RUNS {
        f();
    }
    let mut times: Vec<Duration> = (0..MEASURED_RUNS)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .collect();
    times.sort();
    times[MEASURED_RUNS / 2]
}

pub fn bench(ctx: &Context, s_max: usize) -> Result<bool, CliError> {
    let formulas = ctx.formulas();
    let one = Rational::one();
    // every value is checked before anything is timed
    let mut values = Vec::with_capacity(s_max);
    for s in 1..=s_max {
        let closed = formulas.det_closed(s, &one)?;
        let elim = det_elimination(&build_matrix(s, &one)?)?;
        if closed != elim {
            return Err(CliError::Mismatch(format!(
                "s = {s}: closed form {closed} differs from elimination {elim}"
            )));
        }
        values.push(closed);
    }

    let rows: Vec<BenchRow> = values
        .into_iter()
        .enumerate()
        .map(|(k, value)| {
            let s = k + 1;
            let closed = median_time(|| {
                std::hint::black_box(formulas.det_closed(s, &one).expect("checked above"));
            });
            let elim = median_time(|| {
                let m = build_matrix(s, &one).expect("checked above");
                std::hint::black_box(det_elimination(&m).expect("checked above"));
            });
            BenchRow {
                s,
                determinant: value.to_string(),
                closed_form_us: closed.as_secs_f64() * 1e6,
                elimination_us: elim.as_secs_f64() * 1e6,
            }
        })
        .collect();

    if ctx.json {
        ctx.emit(&rows)?;
    } else {
        println!("{:>3}  {:>14}  {:>14}  {:>7}", "s", "closed (us)", "elim (us)", "ratio");
        for r in &rows {
            println!(
                "{:>3}  {:>14.1}  {:>14.1}  {:>7.1}",
                r.s,
                r.closed_form_us,
                r.elimination_us,
                r.elimination_us / r.closed_form_us.max(1e-9)
            );
        }
    }
    Ok(true)
}
