//! Verification suites and benchmarks shared by the command line and the
//! acceptance tests. Every randomized suite draws from a seeded ChaCha
//! generator and records the seed in its report.

use std::time::Instant;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::combinat::{
    compositions_from, coset_reps, dominance_less, enumerate_partitions, Composition, Partition,
};
use crate::error::{Error, Result};
use crate::field::{parse, Params, RationalFunction, Symbol};
use crate::hecke::{apply_t, braid_class, Generator};
use crate::macdonald::{
    coefficient_c, compose_f, hall_littlewood, jack_p, macdonald_p, macdonald_p_with,
    monomial_limit, nonsym_f, q_whittaker_p, CoefficientQuery, HlMode, Strategy,
};
use crate::mpstrace::{
    fock_trace, fock_trace_closed, lemma_instances, relative_error, verify_lemma,
    verify_matrix_product, FockTruncation, SamplePoint, DEFAULT_CUTOFF,
};
use crate::oracle::{gram_schmidt_p, macdonald_operator, monomial_expansion, schur, Variant};
use crate::polyring::Polynomial;

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Hecke,
    Golden,
    Coefficients,
    Oracle,
    Eigen,
    Specialization,
    Structure,
    Trace,
    Lemma,
    Mps,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Golden,
        Suite::Coefficients,
        Suite::Oracle,
        Suite::Eigen,
        Suite::Specialization,
        Suite::Hecke,
        Suite::Structure,
        Suite::Trace,
        Suite::Lemma,
        Suite::Mps,
    ];
}

/// Size limits for a suite run; unused fields are ignored by a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest `|λ|`.
    pub max_weight: u32,
    /// Number of variables, or the largest one where a range is swept.
    pub n: usize,
    /// Largest part for trace suites.
    pub r: u32,
    /// Random inputs or sample points per instance.
    pub samples: usize,
    pub seed: u64,
    pub cutoff: usize,
}

impl Bounds {
    /// The sizes each suite is specified at.
    pub fn standard(suite: Suite) -> Self {
        let (max_weight, n, r, samples) = match suite {
            Suite::Hecke => (5, 4, 0, 100),
            Suite::Golden | Suite::Coefficients => (0, 0, 0, 0),
            Suite::Oracle => (5, 4, 0, 0),
            Suite::Eigen => (5, 4, 0, 0),
            Suite::Specialization => (5, 3, 0, 0),
            Suite::Structure => (6, 4, 0, 0),
            Suite::Trace => (0, 0, 4, 0),
            Suite::Lemma => (0, 3, 3, 5),
            Suite::Mps => (0, 3, 3, 3),
        };
        Bounds {
            max_weight,
            n,
            r,
            samples,
            seed: DEFAULT_SEED,
            cutoff: DEFAULT_CUTOFF,
        }
    }
}

/// One checked instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub instance: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub detail: Value,
}

impl Check {
    fn new(instance: impl Into<String>, passed: bool, detail: Value) -> Self {
        Check {
            instance: instance.into(),
            passed,
            detail,
        }
    }

    fn from_result(instance: impl Into<String>, r: Result<bool>) -> Self {
        match r {
            Ok(ok) => Check::new(instance, ok, Value::Null),
            Err(e) => Check::new(instance, false, json!({ "error": e.to_string() })),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub bounds: Bounds,
    pub passed: bool,
    pub total: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Check>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, bounds: &Bounds, checks: Vec<Check>) -> Self {
        let failures = checks.iter().filter(|c| !c.passed).count();
        SuiteReport {
            suite,
            seed: bounds.seed,
            bounds: bounds.clone(),
            passed: failures == 0,
            total: checks.len(),
            failures,
            first_failure: checks.iter().find(|c| !c.passed).cloned(),
            checks,
        }
    }
}

pub fn run_suite(suite: Suite, bounds: &Bounds) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Hecke => hecke_checks(bounds)?,
        Suite::Golden => golden_checks()?,
        Suite::Coefficients => coefficient_checks()?,
        Suite::Oracle => oracle_checks(bounds),
        Suite::Eigen => eigen_checks(bounds),
        Suite::Specialization => specialization_checks(bounds),
        Suite::Structure => structure_checks(bounds),
        Suite::Trace => trace_checks(bounds),
        Suite::Lemma => lemma_checks(bounds),
        Suite::Mps => mps_checks(bounds),
    };
    Ok(SuiteReport::new(suite, bounds, checks))
}

fn rf(s: &str, params: Params) -> RationalFunction {
    parse(s, params).expect("valid literal")
}

/// Partitions of weight at most `max_weight` with at most `n` parts,
/// including the empty one, padded to length `n`.
pub fn partitions_up_to(max_weight: u32, n: usize) -> Vec<Partition> {
    (0..=max_weight)
        .flat_map(|d| enumerate_partitions(d, n))
        .map(|p| p.with_len(n).expect("fits"))
        .collect()
}

const COEFF_POOL: [&str; 10] = [
    "1",
    "-1",
    "2",
    "q",
    "t",
    "1 - t",
    "q*(1 - t)/(1 - q*t)",
    "3*q*t - 1",
    "q^2/(1 + t)",
    "(1 + q)/(1 - t^2)",
];

/// Random polynomial in `n` variables over `{q, t}`: 1 to 6 terms of total
/// degree at most `max_degree`.
pub fn random_polynomial<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> Polynomial {
    let params = Params::QT;
    let terms = rng.gen_range(1..=6);
    let mut p = Polynomial::zero(n, params);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rf(COEFF_POOL.choose(rng).expect("non-empty"), params);
        let k = RationalFunction::from_integer(params, rng.gen_range(1..=3));
        let term = Polynomial::monomial(params, &e, &c * &k);
        p = p.checked_add(&term).expect("same context");
    }
    if p.is_zero() {
        Polynomial::one(n, params)
    } else {
        p
    }
}

fn hecke_checks(b: &Bounds) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let t = rf("t", Params::QT);
    let mut checks = Vec::new();
    let max_n = b.n.max(2);
    for k in 0..b.samples {
        let n = rng.gen_range(2..=max_n);
        let f = random_polynomial(&mut rng, n, b.max_weight);
        let label = |what: &str| format!("{} #{} n={}", what, k, n);
        for i in 1..n {
            // (T_i - t)(T_i + 1) f = 0
            let r = (|| {
                let g = apply_t(i, &f)?.checked_add(&f)?;
                let h = apply_t(i, &g)?.checked_sub(&g.scale(&t)?)?;
                Ok(h.is_zero())
            })();
            checks.push(Check::from_result(format!("{} i={}", label("quadratic"), i), r));
        }
        for i in 1..n.saturating_sub(1) {
            let r = (|| {
                let a = Generator::Hecke.apply_word(&[i, i + 1, i], &f)?;
                let c = Generator::Hecke.apply_word(&[i + 1, i, i + 1], &f)?;
                Ok(a == c)
            })();
            checks.push(Check::from_result(format!("{} i={}", label("braid"), i), r));
        }
        for i in 1..n {
            for j in i + 2..n {
                let r = (|| {
                    let a = Generator::Hecke.apply_word(&[i, j], &f)?;
                    let c = Generator::Hecke.apply_word(&[j, i], &f)?;
                    Ok(a == c)
                })();
                checks.push(Check::from_result(format!("{} i={} j={}", label("commute"), i, j), r));
            }
        }
        // symmetric in x_i, x_{i+1} gives eigenvalue t
        let i = rng.gen_range(1..n);
        let sym = f.checked_add(&f.transpose_vars(i)?)?;
        let r = (|| Ok(apply_t(i, &sym)? == sym.scale(&t)?))();
        checks.push(Check::from_result(format!("{} i={}", label("symmetric-eigen"), i), r));
    }
    // reduced words of the same coset element act identically
    let shapes: [&[u32]; 4] = [&[3, 2, 1, 0], &[2, 1, 1, 0], &[2, 1, 0], &[3, 1, 0, 0]];
    let inputs = b.samples.max(50) / 2;
    for k in 0..inputs {
        let shape = shapes[k % shapes.len()];
        let lambda = Partition::new(shape.to_vec())?;
        let n = shape.len();
        let f = random_polynomial(&mut rng, n, b.max_weight);
        let cosets = coset_reps(&lambda);
        let c = cosets.choose(&mut rng).expect("non-empty");
        let r = (|| {
            let base = Generator::Hecke.apply_word(&c.word, &f)?;
            for w in braid_class(&c.word) {
                if Generator::Hecke.apply_word(&w, &f)? != base {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        checks.push(Check::from_result(
            format!("words #{} lambda={} arrangement={} words={}", k, lambda, c.arrangement, braid_class(&c.word).len()),
            r,
        ));
    }
    // cover every coset element of a distinct-part shape at least once
    let lambda = Partition::new(vec![3, 2, 1, 0])?;
    for c in coset_reps(&lambda) {
        let f = random_polynomial(&mut rng, 4, b.max_weight);
        let r = (|| {
            let base = Generator::Hecke.apply_word(&c.word, &f)?;
            for w in braid_class(&c.word) {
                if Generator::Hecke.apply_word(&w, &f)? != base {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        checks.push(Check::from_result(format!("words lambda={} arrangement={}", lambda, c.arrangement), r));
    }
    Ok(checks)
}

/// `P_{(3,1)}` in two variables as printed in the worked example.
pub fn golden_first() -> Polynomial {
    Polynomial::from_terms(
        2,
        Params::QT,
        [
            (vec![3, 1], rf("1", Params::QT)),
            (vec![2, 2], rf("(1 - t + q - q*t)/(1 - q*t)", Params::QT)),
            (vec![1, 3], rf("1", Params::QT)),
        ],
    )
    .expect("well formed")
}

/// `P_{(3,2,1)}` in three variables as printed in the worked example.
pub fn golden_second() -> Polynomial {
    let lambda = Partition::new(vec![3, 2, 1]).expect("partition");
    let mut terms: Vec<(Vec<u32>, RationalFunction)> = coset_reps(&lambda)
        .into_iter()
        .map(|c| (c.arrangement.0, rf("1", Params::QT)))
        .collect();
    terms.push((
        vec![2, 2, 2],
        rf("(2 + q + t + 2*q*t)*(1 - t)/(1 - q*t^2)", Params::QT),
    ));
    Polynomial::from_terms(3, Params::QT, terms).expect("well formed")
}

fn golden_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let p = macdonald_p(&Partition::new(vec![3, 1])?, 2)?;
    checks.push(Check::new(
        "P(3,1) n=2",
        p == golden_first(),
        json!({ "computed": p.to_string() }),
    ));
    let p = macdonald_p(&Partition::new(vec![3, 2, 1])?, 3)?;
    checks.push(Check::new(
        "P(3,2,1) n=3",
        p == golden_second(),
        json!({ "computed": p.to_string() }),
    ));
    let f = nonsym_f(&Partition::new(vec![3, 1])?, 2)?;
    let expect = Polynomial::from_terms(
        2,
        Params::QT,
        [
            (vec![3, 1], rf("1", Params::QT)),
            (vec![2, 2], rf("q*(1 - t)/(1 - q*t)", Params::QT)),
        ],
    )?;
    checks.push(Check::new("f(3,1) n=2", f == expect, json!({ "computed": f.to_string() })));
    checks.extend(coefficient_checks()?);
    Ok(checks)
}

/// The five coefficient values of the worked examples.
pub fn coefficient_cases() -> Vec<(CoefficientQuery, &'static str)> {
    let q = |level: u32, top: &[u32], bottom: &[u32]| CoefficientQuery {
        level,
        top: Partition::new(top.to_vec()).expect("partition"),
        bottom: Composition(bottom.to_vec()),
        r: 3,
    };
    vec![
        (q(2, &[3, 0], &[0, 3]), "q*(1 - t)/(1 - q*t)"),
        (q(1, &[3, 1], &[0, 3]), "0"),
        (q(1, &[3, 1], &[3, 0]), "1"),
        (q(2, &[3, 2, 0], &[0, 0, 3]), "q*(1 - t)/(1 - q*t^2)"),
        (q(2, &[3, 2, 0], &[0, 3, 0]), "0"),
    ]
}

fn coefficient_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (qr, want) in coefficient_cases() {
        let got = coefficient_c(&qr)?;
        checks.push(Check::new(
            format!("C{}({},{})", qr.level, qr.top, qr.bottom),
            got == rf(want, Params::QT),
            json!({ "computed": got.to_string(), "expected": want }),
        ));
    }
    Ok(checks)
}

fn oracle_checks(b: &Bounds) -> Vec<Check> {
    partitions_up_to(b.max_weight, b.n)
        .par_iter()
        .map(|l| {
            let r = (|| Ok(macdonald_p(l, b.n)? == gram_schmidt_p(l, b.n, Variant::Macdonald)?))();
            Check::from_result(format!("P{} n={} vs Gram-Schmidt", l, b.n), r)
        })
        .collect()
}

/// `Σ_i q^{λ_i} t^{n-i}`.
pub fn eigenvalue(lambda: &Partition) -> RationalFunction {
    let n = lambda.len();
    let params = Params::QT;
    let mut s = RationalFunction::zero(params);
    for (i, &l) in lambda.parts().iter().enumerate() {
        let term = rf(&format!("q^{}*t^{}", l, n - 1 - i), params);
        s = &s + &term;
    }
    s
}

fn eigen_checks(b: &Bounds) -> Vec<Check> {
    let cases: Vec<(Partition, usize)> = (2..=b.n.max(2))
        .flat_map(|n| partitions_up_to(b.max_weight, n).into_iter().map(move |l| (l, n)))
        .collect();
    cases
        .par_iter()
        .map(|(l, n)| {
            let r = (|| {
                let p = macdonald_p(l, *n)?;
                Ok(macdonald_operator(&p, *n)? == p.scale(&eigenvalue(l))?)
            })();
            Check::from_result(format!("D P{} n={}", l, n), r)
        })
        .collect()
}

fn specialize(p: &Polynomial, sym: Symbol, value: &str, target: Params) -> Result<Polynomial> {
    p.specialize_params(&[(sym, parse(value, target)?)])
}

fn specialization_checks(b: &Bounds) -> Vec<Check> {
    let cases: Vec<(Partition, usize)> = (1..=b.n)
        .flat_map(|n| partitions_up_to(b.max_weight, n).into_iter().map(move |l| (l, n)))
        .collect();
    let per_case: Vec<Vec<Check>> = cases
        .par_iter()
        .map(|(l, n)| {
            let n = *n;
            let tag = |what: &str| format!("{} {} n={}", what, l, n);
            let mut out = Vec::new();
            let p = match macdonald_p(l, n) {
                Ok(p) => p,
                Err(e) => {
                    out.push(Check::new(tag("P"), false, json!({ "error": e.to_string() })));
                    return out;
                }
            };
            out.push(Check::from_result(tag("t=1 vs monomial"), (|| {
                Ok(specialize(&p, Symbol::T, "1", Params::Q)? == monomial_limit(l, n)?.embed_params(Params::Q)?)
            })()));
            out.push(Check::from_result(tag("q=0 vs Hall-Littlewood (Hecke sum)"), (|| {
                Ok(specialize(&p, Symbol::Q, "0", Params::T)? == hall_littlewood(l, n, HlMode::HeckeSum)?)
            })()));
            out.push(Check::from_result(tag("q=0 vs Hall-Littlewood (standard sum)"), (|| {
                Ok(specialize(&p, Symbol::Q, "0", Params::T)? == hall_littlewood(l, n, HlMode::StandardSum)?)
            })()));
            out.push(Check::from_result(tag("Hall-Littlewood modes agree"), (|| {
                Ok(hall_littlewood(l, n, HlMode::HeckeSum)? == hall_littlewood(l, n, HlMode::StandardSum)?)
            })()));
            out.push(Check::from_result(tag("t=0 vs q-Whittaker"), (|| {
                Ok(specialize(&p, Symbol::T, "0", Params::Q)? == q_whittaker_p(l, n)?)
            })()));
            out.push(Check::from_result(tag("q=t vs Schur"), (|| {
                Ok(specialize(&p, Symbol::Q, "t", Params::T)? == schur(l, n)?.embed_params(Params::T)?)
            })()));
            if l.size() + 1 <= b.max_weight {
                out.push(Check::from_result(tag("Jack vs Gram-Schmidt"), (|| {
                    Ok(jack_p(l, n)? == gram_schmidt_p(l, n, Variant::Jack)?)
                })()));
            }
            out
        })
        .collect();
    per_case.into_iter().flatten().collect()
}

/// Symmetry, homogeneity, monicity and dominance-triangularity of `P_λ`,
/// plus `Σ T_w f_λ = P_λ`.
pub fn structure_of(l: &Partition, n: usize) -> Result<Value> {
    let p = macdonald_p(l, n)?;
    let symmetric = p.is_symmetric();
    let homogeneous = p.is_homogeneous() && p.degree().unwrap_or(0) == l.size() as u64;
    let monic = p.coefficient(l.parts()).is_one();
    let mut triangular = true;
    for (mu, _) in monomial_expansion(&p)? {
        let mu = mu.with_len(n)?;
        if mu != *l && !dominance_less(&mu, l)? {
            triangular = false;
        }
    }
    let f = nonsym_f(l, n)?;
    let f_monic = f.coefficient(l.parts()).is_one();
    let mut sum = Polynomial::zero(n, Params::QT);
    for c in coset_reps(l) {
        sum = sum.checked_add(&compose_f(&c.arrangement)?)?;
    }
    let sums_to_p = sum == p;
    Ok(json!({
        "symmetric": symmetric,
        "homogeneous": homogeneous,
        "monic": monic,
        "triangular": triangular,
        "f_monic": f_monic,
        "f_sum": sums_to_p,
    }))
}

fn structure_checks(b: &Bounds) -> Vec<Check> {
    let cases: Vec<(Partition, usize)> = (1..=b.n)
        .flat_map(|n| partitions_up_to(b.max_weight, n).into_iter().map(move |l| (l, n)))
        .collect();
    cases
        .par_iter()
        .map(|(l, n)| match structure_of(l, *n) {
            Ok(v) => {
                let ok = v.as_object().map(|o| o.values().all(|x| x == &Value::Bool(true))).unwrap_or(false);
                Check::new(format!("P{} n={}", l, n), ok, v)
            }
            Err(e) => Check::new(format!("P{} n={}", l, n), false, json!({ "error": e.to_string() })),
        })
        .collect()
}

fn trace_checks(b: &Bounds) -> Vec<Check> {
    let t = BigRational::new(1.into(), 2.into());
    let q = BigRational::new(1.into(), 3.into());
    let trunc = FockTruncation::new(b.cutoff, t.clone(), q.clone()).expect("|t|, |q| < 1");
    let mut checks = Vec::new();
    for bb in 0..=b.r as usize {
        for a in 0..=4u32 {
            for e in 0..=3u32 {
                let instance = format!("b=c={} d=({},{})", bb, a, e);
                let lhs = fock_trace(bb, bb, (a, e), &trunc);
                let rhs = fock_trace_closed(bb, bb, (a, e), &t, &q);
                checks.push(match (lhs, rhs) {
                    (Ok(l), Ok(r)) => {
                        let err = relative_error(&l.value, &r);
                        Check::new(
                            instance,
                            err < 1e-9,
                            json!({ "lhs": crate::field::ratio_to_f64(&l.value), "rhs": crate::field::ratio_to_f64(&r),
                                    "rel_err": err, "cutoff": b.cutoff, "tail_bound": l.tail_bound }),
                        )
                    }
                    // t^a q^b = 1: the series and the closed form both diverge
                    (Err(Error::Divergent(x)), Err(Error::Divergent(y))) => Check::new(
                        instance,
                        true,
                        json!({ "divergent": true, "trace": x, "closed_form": y }),
                    ),
                    (l, r) => Check::new(
                        instance,
                        false,
                        json!({ "lhs": format!("{:?}", l.map(|v| v.value.to_string())),
                                "rhs": format!("{:?}", r.map(|v| v.to_string())) }),
                    ),
                });
            }
        }
    }
    for (bb, c) in [(0usize, 1usize), (1, 2), (2, 1), (3, 4)] {
        let l = fock_trace(bb, c, (1, 1), &trunc);
        let ok = matches!(&l, Ok(v) if num_traits::Zero::is_zero(&v.value));
        checks.push(Check::new(format!("b={} c={} vanishes", bb, c), ok, Value::Null));
    }
    checks
}

fn lemma_checks(b: &Bounds) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let work: Vec<_> = lemma_instances(b.r, b.n)
        .into_iter()
        .map(|(s, r, l, m)| {
            let pts: Vec<SamplePoint> = (0..b.samples).map(|_| SamplePoint::random(&mut rng, l.len())).collect();
            (s, r, l, m, pts)
        })
        .collect();
    let per: Vec<Vec<Check>> = work
        .par_iter()
        .map(|(s, r, l, m, pts)| match verify_lemma::<BigRational>(*s, *r, l, m, pts, b.cutoff) {
            Ok(reps) => reps
                .into_iter()
                .map(|rep| {
                    let ok = rep.rel_err < 1e-9;
                    Check::new(rep.instance.clone(), ok, serde_json::to_value(&rep).expect("serializable"))
                })
                .collect(),
            Err(e) => vec![Check::new(
                format!("s={} r={} lambda={} mu={}", s, r, l, m),
                false,
                json!({ "error": e.to_string() }),
            )],
        })
        .collect();
    per.into_iter().flatten().collect()
}

fn mps_checks(b: &Bounds) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let values: Vec<u32> = (0..=b.r).collect();
    let work: Vec<_> = compositions_from(&values, b.n)
        .into_iter()
        .map(|c| {
            let pts: Vec<SamplePoint> = (0..b.samples).map(|_| SamplePoint::random(&mut rng, b.n)).collect();
            (c, pts)
        })
        .collect();
    let per: Vec<Vec<Check>> = work
        .par_iter()
        .map(|(c, pts)| match verify_matrix_product::<BigRational>(c, pts, b.cutoff) {
            Ok(reps) => reps
                .into_iter()
                .map(|rep| {
                    let ok = rep.rel_err < 1e-8;
                    Check::new(rep.instance.clone(), ok, serde_json::to_value(&rep).expect("serializable"))
                })
                .collect(),
            Err(e) => vec![Check::new(format!("lambda={}", c), false, json!({ "error": e.to_string() }))],
        })
        .collect();
    per.into_iter().flatten().collect()
}

/// Timing and work counters for one strategy on one input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub lambda: Partition,
    pub n: usize,
    pub strategy: Strategy,
    pub cosets: usize,
    pub terms: usize,
    pub generator_applications: u64,
    pub cache_hits: u64,
    pub median_ms: f64,
    pub min_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub repetitions: usize,
    pub rows: Vec<BenchRow>,
    /// Set when two strategies disagree on some input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

/// Runs every strategy on every input; outputs are compared before any
/// timing is reported.
pub fn run_bench(
    inputs: &[(Partition, usize)],
    strategies: &[Strategy],
    repetitions: usize,
) -> Result<BenchReport> {
    let reps = repetitions.max(1);
    let mut rows = Vec::new();
    for (lambda, n) in inputs {
        let mut reference: Option<(Strategy, Polynomial)> = None;
        for &strategy in strategies {
            let mut times = Vec::with_capacity(reps);
            let mut last = None;
            for _ in 0..reps {
                let start = Instant::now();
                let out = macdonald_p_with(lambda, *n, strategy)?;
                times.push(start.elapsed().as_secs_f64() * 1e3);
                last = Some(out);
            }
            let (p, stats) = last.expect("at least one repetition");
            if let Some((s0, p0)) = &reference {
                if *p0 != p {
                    return Ok(BenchReport {
                        repetitions: reps,
                        rows,
                        mismatch: Some(format!("{:?} and {:?} disagree on {} n={}", s0, strategy, lambda, n)),
                    });
                }
            }
            times.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            rows.push(BenchRow {
                lambda: lambda.clone(),
                n: *n,
                strategy,
                cosets: coset_reps(&lambda.with_len(*n)?).len(),
                terms: p.num_terms(),
                generator_applications: stats.generator_applications,
                cache_hits: stats.cache_hits,
                median_ms: times[times.len() / 2],
                min_ms: times[0],
            });
            if reference.is_none() {
                reference = Some((strategy, p));
            }
        }
    }
    Ok(BenchReport {
        repetitions: reps,
        rows,
        mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_sweep_sizes() {
        // empty partition plus 17 of weight 1..=5 in at most 4 parts
        assert_eq!(partitions_up_to(5, 4).len(), 18);
    }

    #[test]
    fn random_polynomials_are_reproducible() {
        let a = random_polynomial(&mut ChaCha8Rng::seed_from_u64(3), 3, 5);
        let b = random_polynomial(&mut ChaCha8Rng::seed_from_u64(3), 3, 5);
        assert_eq!(a, b);
        assert!(a.degree().unwrap() <= 5);
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Golden, Suite::Coefficients] {
            let rep = run_suite(suite, &Bounds::standard(suite)).unwrap();
            assert!(rep.passed, "{:?}", rep.first_failure);
        }
        let mut b = Bounds::standard(Suite::Hecke);
        b.samples = 5;
        assert!(run_suite(Suite::Hecke, &b).unwrap().passed);
    }

    #[test]
    fn eigenvalue_of_first_example() {
        let l = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(eigenvalue(&l), rf("q^3*t + q", Params::QT));
    }

    #[test]
    fn bench_strategies_agree() {
        let inputs = vec![(Partition::new(vec![2, 1, 0]).unwrap(), 3)];
        let rep = run_bench(&inputs, &[Strategy::Naive, Strategy::Memoized, Strategy::Parallel], 1).unwrap();
        assert!(rep.mismatch.is_none());
        assert_eq!(rep.rows.len(), 3);
        assert!(rep.rows[1].generator_applications <= rep.rows[0].generator_applications);
    }
}
