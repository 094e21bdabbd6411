//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use macsum::combinat::Partition;
use macsum::macdonald::macdonald_p;
use macsum::verify::{golden_first, golden_second, run_suite, Bounds, Suite, SuiteReport};

struct Outcome {
    passed: bool,
    summary: String,
}

fn from_report(rep: &SuiteReport, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let in_time = limit.map_or(true, |l| elapsed <= l);
    let mut summary = format!("{}/{} checks, {:.2?}", rep.total - rep.failures, rep.total, elapsed);
    if let Some(l) = limit {
        summary.push_str(&format!(" (limit {:?})", l));
    }
    if let Some(f) = &rep.first_failure {
        summary.push_str(&format!("; first failure: {} {}", f.instance, f.detail));
    }
    Outcome {
        passed: rep.passed && in_time && rep.total > 0,
        summary,
    }
}

fn suite(s: Suite, limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    match run_suite(s, &Bounds::standard(s)) {
        Ok(rep) => from_report(&rep, start.elapsed(), limit),
        Err(e) => Outcome { passed: false, summary: format!("error: {}", e) },
    }
}

fn golden(parts: &[u32], n: usize, expected: macsum::polyring::Polynomial, limit: Duration) -> Outcome {
    let start = Instant::now();
    let got = Partition::new(parts.to_vec()).and_then(|l| macdonald_p(&l, n));
    let elapsed = start.elapsed();
    match got {
        Ok(p) => Outcome {
            passed: p == expected && elapsed <= limit,
            summary: format!("exact match {}, {:.2?} (limit {:?})", p == expected, elapsed, limit),
        },
        Err(e) => Outcome { passed: false, summary: format!("error: {}", e) },
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("P(3,1) in 2 variables", Box::new(|| golden(&[3, 1], 2, golden_first(), Duration::from_secs(1)))),
        ("P(3,2,1) in 3 variables", Box::new(|| golden(&[3, 2, 1], 3, golden_second(), Duration::from_secs(5)))),
        ("coefficient spot values", Box::new(|| suite(Suite::Coefficients, None))),
        ("Gram-Schmidt oracle, |lambda| <= 5, n = 4", Box::new(|| suite(Suite::Oracle, Some(Duration::from_secs(300))))),
        ("eigenoperator, |lambda| <= 5, n in 2..=4", Box::new(|| suite(Suite::Eigen, None))),
        ("specializations, |lambda| <= 5, n <= 3", Box::new(|| suite(Suite::Specialization, None))),
        ("Hecke relations and word independence", Box::new(|| suite(Suite::Hecke, None))),
        ("structural invariants, |lambda| <= 6, n <= 4", Box::new(|| suite(Suite::Structure, None))),
        ("Fock trace identity", Box::new(|| suite(Suite::Trace, Some(Duration::from_secs(10))))),
        ("layer transition lemma, rel < 1e-9", Box::new(|| suite(Suite::Lemma, None))),
        ("matrix product, lambda in 3^3, rel < 1e-8", Box::new(|| suite(Suite::Mps, Some(Duration::from_secs(120))))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        if !out.passed {
            failed += 1;
        }
        println!("[{}] {:>2} {}: {}", if out.passed { "PASS" } else { "FAIL" }, i + 1, name, out.summary);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
