//! Symmetric Macdonald polynomials through nested sums of Hecke words, the
//! non-symmetric family `f_μ`, and the specializations to Hall–Littlewood,
//! Jack, q-Whittaker and monomial symmetric polynomials.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{
    a_stat, b_stat, conj_part, coset_reps, reduced_word, sort_desc, truncated, Composition,
    Partition,
};
use crate::error::{Error, Result};
use crate::field::{Exps, ParamPolynomial, Params, RationalFunction, Symbol, MAX_SYMBOLS};
use crate::hecke::{Counters, Generator, WordCache};
use crate::polyring::Polynomial;

/// Arguments of `C_i(top, bottom)`; `r` is the largest part of the
/// partition the whole computation started from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientQuery {
    pub level: u32,
    pub top: Partition,
    pub bottom: Composition,
    pub r: u32,
}

/// Which member of the family the nested formula is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Macdonald,
    Jack,
    QWhittaker,
}

impl Family {
    pub fn params(self) -> Params {
        match self {
            Family::Macdonald => Params::QT,
            Family::Jack => Params::ALPHA,
            Family::QWhittaker => Params::Q,
        }
    }

    pub fn generator(self) -> Generator {
        match self {
            Family::Macdonald => Generator::Hecke,
            Family::Jack => Generator::Transposition,
            Family::QWhittaker => Generator::DividedDifference,
        }
    }
}

/// How coset sums are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Every word applied from scratch.
    Naive,
    /// Words sharing a suffix reuse its image.
    Memoized,
    /// Coset sums split across threads, each element applied from scratch.
    Parallel,
}

/// Work done by one evaluation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalStats {
    pub generator_applications: u64,
    pub cache_hits: u64,
    pub skipped_cosets: u64,
}

fn poly_term(params: Params, powers: &[(Symbol, u32)], c: i64) -> ParamPolynomial {
    let mut e: Exps = [0; MAX_SYMBOLS];
    for &(s, k) in powers {
        let idx = params.index_of(s).expect("symbol in context");
        e[idx] += k;
    }
    ParamPolynomial::from_terms(params, vec![(e, BigInt::from(c))])
}

fn check_query(qr: &CoefficientQuery) -> Result<()> {
    let (top, bottom) = (qr.top.parts(), qr.bottom.parts());
    if top.len() != bottom.len() {
        return Err(Error::LengthMismatch {
            left: top.len(),
            right: bottom.len(),
        });
    }
    if qr.level == 0 || qr.level > qr.r {
        return Err(Error::OutOfRange(format!("level {} for r = {}", qr.level, qr.r)));
    }
    if qr.top.largest() > qr.r {
        return Err(Error::OutOfRange(format!("top {} exceeds r = {}", qr.top, qr.r)));
    }
    if let Some(&bad) = bottom.iter().find(|&&p| p != 0 && (p <= qr.level || p > qr.r)) {
        return Err(Error::OutOfRange(format!(
            "bottom part {} outside {{0, {}..={}}}",
            bad,
            qr.level + 1,
            qr.r
        )));
    }
    Ok(())
}

fn vanishes(qr: &CoefficientQuery) -> bool {
    qr.top
        .parts()
        .iter()
        .zip(qr.bottom.parts())
        .any(|(&l, &m)| 0 < l && l < m)
}

/// `C_i(top, bottom)` for the given family.
pub fn coefficient(family: Family, qr: &CoefficientQuery) -> Result<RationalFunction> {
    check_query(qr)?;
    let params = family.params();
    if vanishes(qr) {
        return Ok(RationalFunction::zero(params));
    }
    let (top, bottom) = (qr.top.parts(), qr.bottom.parts());
    let i = qr.level;
    let ci = conj_part(top, i);
    let mut num = ParamPolynomial::one(params);
    let mut den = ParamPolynomial::one(params);
    for j in i + 1..=qr.r {
        let d = j - i;
        let a = a_stat(top, bottom, j)? as u32;
        let b = b_stat(top, bottom, j)? as u32;
        let c = ci - conj_part(top, j);
        match family {
            Family::Macdonald => {
                if a > 0 {
                    num = num.mul(&poly_term(params, &[(Symbol::Q, d * a)], 1));
                }
                let one = ParamPolynomial::one(params);
                for k in 1..=b {
                    num = num.mul(&one.sub(&poly_term(params, &[(Symbol::T, k)], 1)));
                    den = den.mul(&one.sub(&poly_term(
                        params,
                        &[(Symbol::Q, d), (Symbol::T, c + k)],
                        1,
                    )));
                }
            }
            Family::Jack => {
                for k in 1..=b {
                    num = num.scale(&BigInt::from(k));
                    let f = poly_term(params, &[(Symbol::Alpha, 1)], d as i64)
                        .add(&poly_term(params, &[], (c + k) as i64));
                    den = den.mul(&f);
                }
            }
            Family::QWhittaker => {
                if a > 0 {
                    num = num.mul(&poly_term(params, &[(Symbol::Q, d * a)], 1));
                }
            }
        }
    }
    RationalFunction::new(num, den)
}

/// `C_i(top, bottom)` with Macdonald parameters.
pub fn coefficient_c(qr: &CoefficientQuery) -> Result<RationalFunction> {
    coefficient(Family::Macdonald, qr)
}

/// Column monomial `x_μ = x_1 ⋯ x_{ℓ(μ)}` for a partition `μ`.
pub fn column_monomial(mu: &Partition) -> Vec<u32> {
    let l = mu.length();
    (0..mu.len()).map(|k| u32::from(k < l)).collect()
}

fn padded(lambda: &Partition, n: usize) -> Result<Partition> {
    lambda.with_len(n)
}

/// Evaluates `Σ_c coeff(c) · W_c(input)` over the coset elements of `mu`.
fn coset_sum(
    gen: Generator,
    mu: &Partition,
    input: &Polynomial,
    coeff: &dyn Fn(&Composition) -> Result<RationalFunction>,
    strategy: Strategy,
    counters: &Counters,
    skipped: &mut u64,
) -> Result<Polynomial> {
    let mut work = Vec::new();
    for c in coset_reps(mu) {
        let k = coeff(&c.arrangement)?;
        if k.is_zero() {
            *skipped += 1;
        } else {
            work.push((c.word, k));
        }
    }
    let zero = Polynomial::zero(input.n(), input.params());
    match strategy {
        Strategy::Naive => {
            let mut acc = zero;
            for (w, k) in &work {
                let img = gen.apply_word(w, input)?;
                counters.add_applications(w.len() as u64);
                acc = acc.checked_add(&img.scale(k)?)?;
            }
            Ok(acc)
        }
        Strategy::Memoized => {
            let mut cache = WordCache::new(gen, input.clone(), counters);
            let mut acc = zero;
            for (w, k) in &work {
                let img = cache.apply(w)?;
                acc = acc.checked_add(&img.scale(k)?)?;
            }
            Ok(acc)
        }
        Strategy::Parallel => work
            .par_iter()
            .map(|(w, k)| {
                let img = gen.apply_word(w, input)?;
                counters.add_applications(w.len() as u64);
                img.scale(k)
            })
            .try_reduce(|| zero.clone(), |a, b| a.checked_add(&b)),
    }
}

/// The accumulator `g` after all inner factors `i = r-1, ..., 1`; the
/// non-symmetric `f_λ` is `x_λ · g`.
fn inner_product_chain(
    family: Family,
    lambda: &Partition,
    strategy: Strategy,
    counters: &Counters,
    skipped: &mut u64,
) -> Result<Polynomial> {
    let n = lambda.len();
    let params = family.params();
    let r = lambda.largest();
    let gen = family.generator();
    let mut g = Polynomial::one(n, params);
    for i in (1..r).rev() {
        let lam_i = truncated(lambda, i);
        let top = truncated(lambda, i - 1);
        let input = g.mul_monomial(&column_monomial(&lam_i));
        let coeff = |arr: &Composition| {
            coefficient(
                family,
                &CoefficientQuery {
                    level: i,
                    top: top.clone(),
                    bottom: arr.clone(),
                    r,
                },
            )
        };
        g = coset_sum(gen, &lam_i, &input, &coeff, strategy, counters, skipped)?;
    }
    Ok(g)
}

fn nested(
    family: Family,
    lambda: &Partition,
    n: usize,
    strategy: Strategy,
) -> Result<(Polynomial, EvalStats)> {
    let lambda = padded(lambda, n)?;
    let counters = Counters::default();
    let mut skipped = 0;
    let g = inner_product_chain(family, &lambda, strategy, &counters, &mut skipped)?;
    let f = g.mul_monomial(&column_monomial(&lambda));
    let one = RationalFunction::one(family.params());
    let coeff = |_: &Composition| Ok(one.clone());
    let p = coset_sum(
        family.generator(),
        &lambda,
        &f,
        &coeff,
        strategy,
        &counters,
        &mut skipped,
    )?;
    let stats = EvalStats {
        generator_applications: counters.generator_applications(),
        cache_hits: counters.cache_hits(),
        skipped_cosets: skipped,
    };
    Ok((p, stats))
}

/// `P_λ(x_1..x_n; q, t)`. `λ` is padded with zeros to `n` parts.
pub fn macdonald_p(lambda: &Partition, n: usize) -> Result<Polynomial> {
    Ok(nested(Family::Macdonald, lambda, n, Strategy::Memoized)?.0)
}

/// `P_λ` with an explicit evaluation strategy, plus work counters.
pub fn macdonald_p_with(
    lambda: &Partition,
    n: usize,
    strategy: Strategy,
) -> Result<(Polynomial, EvalStats)> {
    nested(Family::Macdonald, lambda, n, strategy)
}

/// Jack polynomial `P^{(α)}_λ` from the nested formula with transpositions.
pub fn jack_p(lambda: &Partition, n: usize) -> Result<Polynomial> {
    Ok(nested(Family::Jack, lambda, n, Strategy::Memoized)?.0)
}

/// q-Whittaker polynomial `P_λ(x; q, 0)` from divided differences.
pub fn q_whittaker_p(lambda: &Partition, n: usize) -> Result<Polynomial> {
    Ok(nested(Family::QWhittaker, lambda, n, Strategy::Memoized)?.0)
}

/// Non-symmetric `f_λ` for a partition `λ`, monic on `x^λ`.
pub fn nonsym_f(lambda: &Partition, n: usize) -> Result<Polynomial> {
    let lambda = padded(lambda, n)?;
    let counters = Counters::default();
    let mut skipped = 0;
    let g = inner_product_chain(
        Family::Macdonald,
        &lambda,
        Strategy::Memoized,
        &counters,
        &mut skipped,
    )?;
    Ok(g.mul_monomial(&column_monomial(&lambda)))
}

/// `f_μ` for any composition, as `T_w f_{μ⁺}` with `w` carrying `μ⁺` to `μ`.
pub fn compose_f(mu: &Composition) -> Result<Polynomial> {
    let plus = sort_desc(mu);
    let f = nonsym_f(&plus, mu.len())?;
    let w = reduced_word(plus.parts(), mu.parts())?;
    Generator::Hecke.apply_word(&w, &f)
}

/// Evaluation route for Hall–Littlewood polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HlMode {
    /// `Σ_σ T_σ(x^λ)`.
    HeckeSum,
    /// `Σ_σ σ(x^λ Π_{λ_i > λ_j} (x_i - t x_j)/(x_i - x_j))`.
    StandardSum,
}

/// Hall–Littlewood `P_λ(x; t)` over the context `{t}`.
pub fn hall_littlewood(lambda: &Partition, n: usize, mode: HlMode) -> Result<Polynomial> {
    let lambda = padded(lambda, n)?;
    let params = Params::T;
    let one = RationalFunction::one(params);
    let xl = Polynomial::monomial(params, lambda.parts(), one.clone());
    match mode {
        HlMode::HeckeSum => {
            let mut acc = Polynomial::zero(n, params);
            for c in coset_reps(&lambda) {
                acc = acc.checked_add(&Generator::Hecke.apply_word(&c.word, &xl)?)?;
            }
            Ok(acc)
        }
        HlMode::StandardSum => standard_sum(&lambda, xl),
    }
}

fn standard_sum(lambda: &Partition, xl: Polynomial) -> Result<Polynomial> {
    let n = lambda.len();
    let params = Params::T;
    let parts = lambda.parts();
    let t = RationalFunction::symbol(params, Symbol::T)?;
    let one = RationalFunction::one(params);
    let var = |k: usize, c: &RationalFunction| {
        let mut e = vec![0; n];
        e[k] = 1;
        Polynomial::monomial(params, &e, c.clone())
    };
    // x^λ · Δ · Π_{λ_i > λ_j} (x_i - t x_j)/(x_i - x_j), with Δ the Vandermonde
    let mut numer = xl;
    for i in 0..n {
        for j in i + 1..n {
            let w = if parts[i] > parts[j] { &t } else { &one };
            let factor = var(i, &one).checked_sub(&var(j, w))?;
            numer = numer.checked_mul(&factor)?;
        }
    }
    let mut acc = Polynomial::zero(n, params);
    for c in coset_reps(lambda) {
        let perm = stable_matching(parts, c.arrangement.parts());
        let img = numer.permute_vars(&perm)?;
        if permutation_sign(&perm) {
            acc = acc.checked_add(&img)?;
        } else {
            acc = acc.checked_sub(&img)?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            acc = acc.div_linear(i, j)?;
        }
    }
    Ok(acc)
}

/// `perm[k]`: where the part at position `k` of `source` ends up in `target`,
/// equal values keeping their relative order.
fn stable_matching(source: &[u32], target: &[u32]) -> Vec<usize> {
    let mut used = vec![false; target.len()];
    source
        .iter()
        .map(|&v| {
            let p = (0..target.len())
                .find(|&p| !used[p] && target[p] == v)
                .expect("rearrangement");
            used[p] = true;
            p
        })
        .collect()
}

/// True for even permutations.
fn permutation_sign(perm: &[usize]) -> bool {
    let mut inv = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// `m_λ` in `n` variables with integer coefficients.
pub fn monomial_limit(lambda: &Partition, n: usize) -> Result<Polynomial> {
    let lambda = padded(lambda, n)?;
    let one = RationalFunction::one(Params::NONE);
    Polynomial::from_terms(
        n,
        Params::NONE,
        coset_reps(&lambda)
            .into_iter()
            .map(|c| (c.arrangement.0, one.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn query(level: u32, top: &[u32], bottom: &[u32], r: u32) -> CoefficientQuery {
        CoefficientQuery {
            level,
            top: part(top),
            bottom: Composition(bottom.to_vec()),
            r,
        }
    }

    fn rf(s: &str) -> RationalFunction {
        parse(s, Params::QT).unwrap()
    }

    fn poly(n: usize, params: Params, terms: &[(&[u32], &str)]) -> Polynomial {
        Polynomial::from_terms(
            n,
            params,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), parse(c, params).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn coefficient_spot_values() {
        assert_eq!(coefficient_c(&query(2, &[3, 0], &[0, 3], 3)).unwrap(), rf("q*(1-t)/(1-q*t)"));
        assert!(coefficient_c(&query(1, &[3, 1], &[0, 3], 3)).unwrap().is_zero());
        assert!(coefficient_c(&query(1, &[3, 1], &[3, 0], 3)).unwrap().is_one());
        assert_eq!(
            coefficient_c(&query(2, &[3, 2, 0], &[0, 0, 3], 3)).unwrap(),
            rf("q*(1-t)/(1-q*t^2)")
        );
        assert!(coefficient_c(&query(2, &[3, 2, 0], &[0, 3, 0], 3)).unwrap().is_zero());
    }

    #[test]
    fn coefficient_rejects_malformed_queries() {
        assert!(coefficient_c(&query(2, &[3, 0], &[0, 3, 0], 3)).is_err());
        assert!(coefficient_c(&query(2, &[3, 0], &[0, 2], 3)).is_err());
        assert!(coefficient_c(&query(0, &[3, 0], &[0, 3], 3)).is_err());
    }

    #[test]
    fn first_golden_example() {
        let p = macdonald_p(&part(&[3, 1]), 2).unwrap();
        let expect = poly(
            2,
            Params::QT,
            &[(&[3, 1], "1"), (&[2, 2], "(1 - t + q - q*t)/(1 - q*t)"), (&[1, 3], "1")],
        );
        assert_eq!(p, expect);
        assert_eq!(
            p.to_string(),
            "x1^3*x2 + (1 - t + q - q*t)/(1 - q*t)*x1^2*x2^2 + x1*x2^3"
        );
    }

    #[test]
    fn second_golden_example() {
        let p = macdonald_p(&part(&[3, 2, 1]), 3).unwrap();
        let mut terms: Vec<(Vec<u32>, RationalFunction)> = coset_reps(&part(&[3, 2, 1]))
            .into_iter()
            .map(|c| (c.arrangement.0, rf("1")))
            .collect();
        terms.push((vec![2, 2, 2], rf("(2 + q + t + 2*q*t)*(1 - t)/(1 - q*t^2)")));
        let expect = Polynomial::from_terms(3, Params::QT, terms).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn degenerate_cases() {
        assert_eq!(macdonald_p(&part(&[0, 0]), 2).unwrap(), Polynomial::one(2, Params::QT));
        let e1 = poly(3, Params::QT, &[(&[1, 0, 0], "1"), (&[0, 1, 0], "1"), (&[0, 0, 1], "1")]);
        assert_eq!(macdonald_p(&part(&[1]), 3).unwrap(), e1);
        assert!(macdonald_p(&part(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn nonsymmetric_f_for_first_golden_example() {
        let f = nonsym_f(&part(&[3, 1]), 2).unwrap();
        assert_eq!(f, poly(2, Params::QT, &[(&[3, 1], "1"), (&[2, 2], "q*(1-t)/(1-q*t)")]));
        let g = compose_f(&Composition(vec![1, 3])).unwrap();
        assert_eq!(&f + &g, macdonald_p(&part(&[3, 1]), 2).unwrap());
        assert_eq!(compose_f(&Composition(vec![0, 0])).unwrap(), Polynomial::one(2, Params::QT));
    }

    #[test]
    fn strategies_agree() {
        let l = part(&[3, 2, 1]);
        let (a, sa) = macdonald_p_with(&l, 3, Strategy::Naive).unwrap();
        let (b, sb) = macdonald_p_with(&l, 3, Strategy::Memoized).unwrap();
        let (c, _) = macdonald_p_with(&l, 3, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(sb.generator_applications <= sa.generator_applications);
    }

    #[test]
    fn q_whittaker_first_example() {
        let p = q_whittaker_p(&part(&[3, 1]), 2).unwrap();
        let expect = poly(2, Params::Q, &[(&[3, 1], "1"), (&[2, 2], "1 + q"), (&[1, 3], "1")]);
        assert_eq!(p, expect);
        let e2 = poly(3, Params::Q, &[(&[1, 1, 0], "1"), (&[1, 0, 1], "1"), (&[0, 1, 1], "1")]);
        assert_eq!(q_whittaker_p(&part(&[1, 1]), 3).unwrap(), e2);
    }

    #[test]
    fn jack_degree_two() {
        let p = jack_p(&part(&[2]), 2).unwrap();
        let expect = poly(
            2,
            Params::ALPHA,
            &[(&[2, 0], "1"), (&[1, 1], "2/(alpha + 1)"), (&[0, 2], "1")],
        );
        assert_eq!(p, expect);
    }

    #[test]
    fn hall_littlewood_modes() {
        let e2 = poly(2, Params::T, &[(&[1, 1], "1")]);
        for mode in [HlMode::HeckeSum, HlMode::StandardSum] {
            assert_eq!(hall_littlewood(&part(&[1, 1]), 2, mode).unwrap(), e2);
        }
        for l in [&[2, 1][..], &[3, 1, 1], &[2, 2], &[2, 1, 0]] {
            let n = l.len().max(3);
            let a = hall_littlewood(&part(l), n, HlMode::HeckeSum).unwrap();
            let b = hall_littlewood(&part(l), n, HlMode::StandardSum).unwrap();
            assert_eq!(a, b, "{:?}", l);
        }
    }

    #[test]
    fn monomial_limit_counts() {
        assert_eq!(monomial_limit(&part(&[2, 2, 0, 0]), 4).unwrap().num_terms(), 6);
        assert_eq!(monomial_limit(&part(&[1, 1, 1]), 3).unwrap().num_terms(), 1);
    }
}
