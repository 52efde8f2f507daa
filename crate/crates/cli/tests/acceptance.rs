//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use cauchy_lu::closed_form::{chain_t1, det_closed, det_t1};
use cauchy_lu::matrix::{build_matrix, det_elimination};
use cauchy_lu::verify::{
    verify_chain, verify_factors_match, verify_gamma_identities, verify_lu_product, ModeSpec, TSource,
    VerificationReport,
};
use cauchy_lu::{Fault, Formulas, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cauchy-lu"))
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn passed(report: &VerificationReport) -> Outcome {
    if report.passed && !report.skipped {
        Ok(format!("{} {:?} passed", report.suite, report.mode))
    } else {
        Err(format!("{} {:?}: {:?}", report.suite, report.mode, report))
    }
}

fn determinant_values() -> Outcome {
    let one = Rational::one();
    if det_closed(1, &one).map_err(|e| e.to_string())? != q("1/3") {
        return Err("s=1 anchor is not 1/3".into());
    }
    if det_closed(2, &one).map_err(|e| e.to_string())? != q("32/525") {
        return Err("s=2 anchor is not 32/525".into());
    }
    for s in 1..=12 {
        let closed = det_closed(s, &one).map_err(|e| e.to_string())?;
        let elim = build_matrix(s, &one)
            .and_then(|m| det_elimination(&m))
            .map_err(|e| e.to_string())?;
        let simplified = det_t1(s);
        if closed != elim || closed != simplified {
            return Err(format!("s={s}: closed {closed}, t=1 form {simplified}, elimination {elim}"));
        }
    }
    Ok("s=1..12 agree, anchors 1/3 and 32/525".into())
}

fn symbolic_lu() -> Outcome {
    passed(&verify_lu_product(&Formulas::EXACT, 6, &ModeSpec::Symbolic).map_err(|e| e.to_string())?)
}

fn factor_match() -> Outcome {
    let symbolic = verify_factors_match(&Formulas::EXACT, 6, &ModeSpec::Symbolic).map_err(|e| e.to_string())?;
    let numeric = verify_factors_match(
        &Formulas::EXACT,
        10,
        &ModeSpec::Numeric(TSource::Random { count: 20, seed: 42 }),
    )
    .map_err(|e| e.to_string())?;
    if numeric.t_samples.len() != 20 {
        return Err(format!("expected 20 t samples, got {}", numeric.t_samples.len()));
    }
    Ok(format!("{}; {} with 20 samples", passed(&symbolic)?, passed(&numeric)?))
}

fn gamma_identities() -> Outcome {
    passed(&verify_gamma_identities(&Formulas::EXACT, 8, 8, 8))
}

fn chain() -> Outcome {
    for s in 1..=20 {
        let c = chain_t1(s);
        if let Some((a, b)) = c.first_disagreement() {
            return Err(format!("s={s}: E{a} = {} but E{b} = {}", c.values[a - 1], c.values[b - 1]));
        }
        if !c.values[5].is_positive() {
            return Err(format!("s={s}: E6 = {} is not positive", c.values[5]));
        }
    }
    passed(&verify_chain(&Formulas::EXACT, 20, 12))?;
    Ok("E1..E6 agree and E6 > 0 for s=1..20".into())
}

fn fault_injection() -> Outcome {
    let caught = |report: VerificationReport| -> Result<String, String> {
        match (&report.passed, &report.counterexample) {
            (false, Some(c)) if !c.lhs.is_empty() && !c.rhs.is_empty() && c.lhs != c.rhs => {
                Ok(format!("{}: {}", report.suite, c.quantity))
            }
            _ => Err(format!("fault not caught: {report:?}")),
        }
    };
    let mut notes = Vec::new();
    let u = Formulas { fault: Some(Fault::UBaseFifteen) };
    notes.push(caught(verify_factors_match(&u, 4, &ModeSpec::Symbolic).map_err(|e| e.to_string())?)?);
    notes.push(caught(verify_lu_product(&u, 4, &ModeSpec::Symbolic).map_err(|e| e.to_string())?)?);
    for fault in [Fault::E3ExponentShift, Fault::E3BaseThirtyTwo] {
        notes.push(caught(verify_chain(&Formulas { fault: Some(fault) }, 20, 12))?);
    }
    notes.push(caught(verify_gamma_identities(
        &Formulas { fault: Some(Fault::GammaLeftSignDropped) },
        3,
        3,
        3,
    ))?);
    Ok(notes.join("; "))
}

fn determinism() -> Outcome {
    let run = || {
        bin()
            .args(["verify", "--seed", "42", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    if !first.status.success() {
        return Err(format!("verify exited with {}", first.status));
    }
    if first.stdout != second.stdout {
        return Err("outputs differ between runs".into());
    }
    serde_json::from_slice::<serde_json::Value>(&first.stdout).map_err(|e| e.to_string())?;
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn bench_sanity() -> Outcome {
    let out = bin().args(["bench", "--s", "10"]).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    let rows = String::from_utf8_lossy(&out.stdout).lines().count();
    if rows != 11 {
        return Err(format!("expected header and 10 rows, got {rows} lines"));
    }
    let faulty = bin()
        .args(["--inject-fault", "u-base-fifteen", "bench", "--s", "10"])
        .output()
        .map_err(|e| e.to_string())?;
    if faulty.status.code() != Some(1) || !faulty.stdout.is_empty() {
        return Err("injected mismatch did not stop the benchmark before timing output".into());
    }
    Ok("10 rows, equality asserted first".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 determinant values", determinant_values),
        ("2 symbolic LU product", symbolic_lu),
        ("3 factor match", factor_match),
        ("4 gamma identities", gamma_identities),
        ("5 t=1 chain", chain),
        ("6 fault injection", fault_injection),
        ("7 determinism", determinism),
        ("8 benchmark sanity", bench_sanity),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({ms} ms): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name} ({ms} ms): {detail}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
