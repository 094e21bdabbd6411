//! Numerical check of the matrix-product machinery behind the nested
//! formula: t-boson traces in the Fock representation, single-layer
//! transition weights, their closed form, and the full trace formula for
//! the non-symmetric `f_λ`.
//!
//! Copies of the t-boson algebra commute, so every trace factorizes into
//! one trace per copy and no tensor-product state space is built. The
//! parameter `u` in `q = t^u` never appears: a diagonal token carries the
//! integer pair `(a, b)` and acts on `|m⟩` by `t^{a m} q^{b m}`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{compositions_from, conj_part, multiplicity, sort_desc, Composition, Partition};
use crate::error::{Error, Result};
use crate::field::{Numeric, Symbol};
use crate::macdonald::{coefficient_c, column_monomial, compose_f, CoefficientQuery};

/// Default Fock cutoff.
pub const DEFAULT_CUTOFF: usize = 80;

/// Largest `r` and `n` accepted by [`matrix_product_f`].
pub const MAX_R: u32 = 3;
pub const MAX_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BosonToken {
    /// `φ†`
    Raise,
    /// `φ`
    Lower,
    /// Diagonal, `|m⟩ -> t^{a m} q^{b m} |m⟩`.
    Diag { a: u32, b: u32 },
}

/// `k = Diag(1, 0)`.
pub const K: BosonToken = BosonToken::Diag { a: 1, b: 0 };

/// Operators on copy `l` of layer `s`, as written left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatorString {
    pub s: u32,
    pub l: u32,
    pub tokens: Vec<BosonToken>,
}

/// Fock cutoff and parameter values, `|t|, |q| < 1`.
#[derive(Clone, Debug)]
pub struct FockTruncation<N> {
    pub cutoff: usize,
    pub t: N,
    pub q: N,
}

impl<N: Numeric> FockTruncation<N> {
    pub fn new(cutoff: usize, t: N, q: N) -> Result<Self> {
        for (name, v) in [("t", &t), ("q", &q)] {
            if v.abs().as_f64() >= 1.0 {
                return Err(Error::Divergent(format!("|{}| = {}", name, v.abs().as_f64())));
            }
        }
        Ok(FockTruncation { cutoff, t, q })
    }
}

/// A truncated trace and a bound on what the truncation dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceValue<N> {
    pub value: N,
    pub tail_bound: f64,
}

impl<N: Numeric> TraceValue<N> {
    fn exact(value: N) -> Self {
        TraceValue { value, tail_bound: 0.0 }
    }

    /// Product, with `Π(|v_i| + e_i) - Π|v_i|` as the combined bound.
    fn times(&self, other: &Self) -> Self {
        let (a, b) = (self.value.abs().as_f64(), other.value.abs().as_f64());
        TraceValue {
            value: self.value.clone() * other.value.clone(),
            tail_bound: (a + self.tail_bound) * (b + other.tail_bound) - a * b,
        }
    }

    fn scale(&self, c: &N) -> Self {
        TraceValue {
            value: self.value.clone() * c.clone(),
            tail_bound: self.tail_bound * c.abs().as_f64(),
        }
    }

    fn plus(&self, other: &Self) -> Self {
        TraceValue {
            value: self.value.clone() + other.value.clone(),
            tail_bound: self.tail_bound + other.tail_bound,
        }
    }
}

fn powers<N: Numeric>(x: &N, k: usize) -> Vec<N> {
    let mut v = Vec::with_capacity(k + 1);
    let mut cur = N::one();
    for _ in 0..=k {
        v.push(cur.clone());
        cur = cur * x.clone();
    }
    v
}

/// `Σ_{m=0}^{M} ⟨m| w |m⟩` for a word `w` on a single copy.
pub fn trace_word<N: Numeric>(tokens: &[BosonToken], trunc: &FockTruncation<N>) -> Result<TraceValue<N>> {
    let raises = tokens.iter().filter(|t| **t == BosonToken::Raise).count();
    let lowers = tokens.iter().filter(|t| **t == BosonToken::Lower).count();
    if raises != lowers {
        return Ok(TraceValue::exact(N::zero()));
    }
    let (mut sa, mut sb, mut ma, mut mb) = (0u64, 0u64, 0u32, 0u32);
    for tok in tokens {
        if let BosonToken::Diag { a, b } = *tok {
            sa += a as u64;
            sb += b as u64;
            ma = ma.max(a);
            mb = mb.max(b);
        }
    }
    let rho = trunc.t.abs().as_f64().powf(sa as f64) * trunc.q.abs().as_f64().powf(sb as f64);
    if rho >= 1.0 {
        return Err(Error::Divergent(format!("t^{} q^{}", sa, sb)));
    }
    let m_cut = trunc.cutoff;
    let top = m_cut + raises;
    let tp = powers(&trunc.t, top * ma.max(1) as usize);
    let qp = powers(&trunc.q, top * mb as usize);
    let mut total = N::zero();
    for m in 0..=m_cut {
        let mut level = m;
        let mut c = N::one();
        for tok in tokens.iter().rev() {
            match *tok {
                BosonToken::Raise => level += 1,
                BosonToken::Lower => {
                    if level == 0 {
                        c = N::zero();
                        break;
                    }
                    c = c * (N::one() - tp[level].clone());
                    level -= 1;
                }
                BosonToken::Diag { a, b } => {
                    if a > 0 {
                        c = c * tp[a as usize * level].clone();
                    }
                    if b > 0 {
                        c = c * qp[b as usize * level].clone();
                    }
                }
            }
        }
        total = total + c;
    }
    let l = lowers as i64;
    let tail = 2f64.powi(lowers as i32) * rho.powf((m_cut as i64 + 1 - l).max(0) as f64) / (1.0 - rho);
    Ok(TraceValue {
        value: total,
        tail_bound: tail,
    })
}

/// Truncated `Tr[φ^b (φ†)^c k^d]` with `k^d` acting as `t^{a m} q^{b' m}`.
pub fn fock_trace<N: Numeric>(b: usize, c: usize, d: (u32, u32), trunc: &FockTruncation<N>) -> Result<TraceValue<N>> {
    let mut w = vec![BosonToken::Lower; b];
    w.extend(std::iter::repeat(BosonToken::Raise).take(c));
    w.push(BosonToken::Diag { a: d.0, b: d.1 });
    trace_word(&w, trunc)
}

/// `δ_{bc} Π_{i=1}^{b} (1 - t^i) / Π_{i=0}^{b} (1 - t^d t^i)` with
/// `t^d = t^a q^{b'}`.
pub fn fock_trace_closed<N: Numeric>(b: usize, c: usize, d: (u32, u32), t: &N, q: &N) -> Result<N> {
    if b != c {
        return Ok(N::zero());
    }
    let td = num_traits::pow(t.clone(), d.0 as usize) * num_traits::pow(q.clone(), d.1 as usize);
    let mut num = N::one();
    let mut den = N::one();
    for i in 1..=b {
        num = num * (N::one() - num_traits::pow(t.clone(), i));
    }
    for i in 0..=b {
        den = den * (N::one() - td.clone() * num_traits::pow(t.clone(), i));
    }
    if den.is_zero() {
        return Err(Error::Divergent(format!("pole of the closed form at t^{} q^{}", d.0, d.1)));
    }
    Ok(num / den)
}

/// Operators of `L^{(s)}_{ij}` on each copy, plus whether it carries `x`;
/// `None` for a zero entry.
fn l_entry(s: u32, r: u32, i: u32, j: u32) -> Option<(bool, Vec<(u32, BosonToken)>)> {
    let ks = |from: u32| (from + 1..=r).map(|l| (l, K)).collect::<Vec<_>>();
    match (i, j) {
        (0, 0) => Some((false, vec![])),
        (0, j) => Some((false, vec![(j, BosonToken::Lower)])),
        (i, 0) if i == s => Some((true, ks(s))),
        (i, 0) => {
            let mut v = vec![(i, BosonToken::Raise)];
            v.extend(ks(i));
            Some((true, v))
        }
        (i, j) if i == j => Some((true, ks(i))),
        (i, j) if i > j => {
            let mut v = vec![(i, BosonToken::Raise), (j, BosonToken::Lower)];
            v.extend(ks(i));
            Some((true, v))
        }
        _ => None,
    }
}

fn check_layer(s: u32, r: u32, lambda: &[u32], mu: &[u32], n: usize) -> Result<()> {
    if s == 0 || s > r {
        return Err(Error::OutOfRange(format!("layer {} for r = {}", s, r)));
    }
    if lambda.len() != mu.len() || lambda.len() != n {
        return Err(Error::LengthMismatch {
            left: lambda.len(),
            right: mu.len().min(n),
        });
    }
    if let Some(&p) = lambda.iter().find(|&&p| p != 0 && (p < s || p > r)) {
        return Err(Error::OutOfRange(format!("row index {} at layer {}", p, s)));
    }
    if let Some(&p) = mu.iter().find(|&&p| p != 0 && (p <= s || p > r)) {
        return Err(Error::OutOfRange(format!("column index {} at layer {}", p, s)));
    }
    Ok(())
}

/// Per-copy operator strings of `Tr[L_{λ_1 μ_1}(x_1) ⋯ L_{λ_n μ_n}(x_n) S^{(s)}]`
/// and the sites contributing an `x`; `None` if some entry vanishes.
pub fn layer_strings(s: u32, r: u32, lambda: &[u32], mu: &[u32]) -> Option<(Vec<OperatorString>, Vec<usize>)> {
    let mut copies: Vec<OperatorString> = (s + 1..=r)
        .map(|l| OperatorString { s, l, tokens: vec![] })
        .collect();
    let mut sites = Vec::new();
    for (k, (&i, &j)) in lambda.iter().zip(mu).enumerate() {
        let (has_x, ops) = l_entry(s, r, i, j)?;
        if has_x {
            sites.push(k);
        }
        for (l, tok) in ops {
            copies[(l - s - 1) as usize].tokens.push(tok);
        }
    }
    for c in copies.iter_mut() {
        c.tokens.push(BosonToken::Diag { a: 0, b: c.l - s });
    }
    Some((copies, sites))
}

/// Per-copy trace cache keyed by the token word.
pub type TraceCache<N> = HashMap<Vec<BosonToken>, TraceValue<N>>;

/// `T^{(s)}_{λ,μ}(x)` for compositions `λ` (parts in `{0, s..r}`) and `μ`
/// (parts in `{0, s+1..r}`).
pub fn transition_weight<N: Numeric>(
    s: u32,
    r: u32,
    lambda: &[u32],
    mu: &[u32],
    xs: &[N],
    trunc: &FockTruncation<N>,
    cache: &mut TraceCache<N>,
) -> Result<TraceValue<N>> {
    check_layer(s, r, lambda, mu, xs.len())?;
    let (copies, sites) = match layer_strings(s, r, lambda, mu) {
        Some(v) => v,
        None => return Ok(TraceValue::exact(N::zero())),
    };
    let mut acc = TraceValue::exact(N::one());
    for c in &copies {
        let tv = match cache.get(&c.tokens) {
            Some(v) => v.clone(),
            None => {
                let v = trace_word(&c.tokens, trunc)?;
                cache.insert(c.tokens.clone(), v.clone());
                v
            }
        };
        if tv.value.is_zero() && tv.tail_bound == 0.0 {
            return Ok(TraceValue::exact(N::zero()));
        }
        acc = acc.times(&tv);
    }
    let mut xprod = N::one();
    for k in sites {
        xprod = xprod * xs[k].clone();
    }
    Ok(acc.scale(&xprod))
}

/// `Ω^{(s)}_λ = Π_{i=s}^{r} Π_{j=i+1}^{r} 1/(1 - q^{j-i} t^{λ'_i - λ'_j})`.
pub fn omega<N: Numeric>(s: u32, r: u32, lambda: &Partition, t: &N, q: &N) -> Result<N> {
    let parts = lambda.parts();
    let mut den = N::one();
    for i in s.max(1)..=r {
        for j in i + 1..=r {
            let e = conj_part(parts, i) - conj_part(parts, j);
            let f = N::one() - num_traits::pow(q.clone(), (j - i) as usize) * num_traits::pow(t.clone(), e as usize);
            den = den * f;
        }
    }
    if den.is_zero() {
        return Err(Error::Divergent(format!("normalization at layer {}", s)));
    }
    Ok(N::one() / den)
}

fn multiplicities_match(s: u32, r: u32, lambda: &[u32], mu: &[u32]) -> bool {
    (s + 1..=r).all(|i| multiplicity(lambda, i) == multiplicity(mu, i))
}

/// Closed form `x_λ C_s(λ, μ) Ω^{(s)}_λ / Ω^{(s+1)}_{μ⁺}` for a partition
/// `λ`; zero when the multiplicities of parts above `s` differ.
pub fn lemma_closed_form<N: Numeric>(
    s: u32,
    r: u32,
    lambda: &Partition,
    mu: &Composition,
    xs: &[N],
    t: &N,
    q: &N,
) -> Result<N> {
    check_layer(s, r, lambda.parts(), mu.parts(), xs.len())?;
    if !multiplicities_match(s, r, lambda.parts(), mu.parts()) {
        return Ok(N::zero());
    }
    let c = coefficient_c(&CoefficientQuery {
        level: s,
        top: lambda.clone(),
        bottom: mu.clone(),
        r,
    })?;
    let cv = c.eval(&[(Symbol::Q, q.clone()), (Symbol::T, t.clone())])?;
    if cv.is_zero() {
        return Ok(N::zero());
    }
    let mut x = N::one();
    for (k, &e) in column_monomial(lambda).iter().enumerate() {
        if e > 0 {
            x = x * xs[k].clone();
        }
    }
    let ratio = omega(s, r, lambda, t, q)? / omega(s + 1, r, &sort_desc(mu), t, q)?;
    Ok(x * cv * ratio)
}

/// Values of parameters and variables at which both sides are compared.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub xs: Vec<BigRational>,
    pub t: BigRational,
    pub q: BigRational,
}

impl SamplePoint {
    /// `t, q` in `[1/10, 1/2]`, each `x_i` in `[1/10, 1]`, small denominators.
    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        let mut frac = |lo: i64, hi: i64, den: i64| {
            BigRational::new(rng.gen_range(lo..=hi).into(), den.into())
        };
        let t = frac(2, 10, 20);
        let q = frac(2, 10, 20);
        let xs = (0..n).map(|_| frac(1, 10, 10)).collect();
        SamplePoint { xs, t, q }
    }

    pub fn convert<N: Numeric>(&self) -> (Vec<N>, N, N) {
        (
            self.xs.iter().map(N::from_ratio).collect(),
            N::from_ratio(&self.t),
            N::from_ratio(&self.q),
        )
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("q".to_string(), self.q.to_string());
        m.insert("t".to_string(), self.t.to_string());
        for (i, x) in self.xs.iter().enumerate() {
            m.insert(format!("x{}", i + 1), x.to_string());
        }
        m
    }
}

/// One compared instance, as serialized in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub instance: String,
    pub point: BTreeMap<String, String>,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub cutoff: usize,
    pub tail_bound: f64,
}

/// `|lhs - rhs| / |rhs|`, or the absolute difference when `rhs` is zero.
pub fn relative_error<N: Numeric>(lhs: &N, rhs: &N) -> f64 {
    let diff = (lhs.clone() - rhs.clone()).abs().as_f64();
    let scale = rhs.abs().as_f64();
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Compares the transition weight with its closed form at each point.
pub fn verify_lemma<N: Numeric>(
    s: u32,
    r: u32,
    lambda: &Partition,
    mu: &Composition,
    points: &[SamplePoint],
    cutoff: usize,
) -> Result<Vec<TraceReport>> {
    let mut out = Vec::new();
    for p in points {
        let (xs, t, q) = p.convert::<N>();
        let trunc = FockTruncation::new(cutoff, t.clone(), q.clone())?;
        let mut cache = TraceCache::new();
        let lhs = transition_weight(s, r, lambda.parts(), mu.parts(), &xs, &trunc, &mut cache)?;
        let rhs = lemma_closed_form(s, r, lambda, mu, &xs, &t, &q)?;
        out.push(TraceReport {
            instance: format!("s={} r={} lambda={} mu={}", s, r, lambda, mu),
            point: p.describe(),
            lhs: lhs.value.as_f64(),
            rhs: rhs.as_f64(),
            rel_err: relative_error(&lhs.value, &rhs),
            cutoff,
            tail_bound: lhs.tail_bound,
        });
    }
    Ok(out)
}

/// Every `(s, r, λ, μ)` satisfying the hypotheses of the closed form, with
/// `r ≤ max_r` and `n ≤ max_n`.
pub fn lemma_instances(max_r: u32, max_n: usize) -> Vec<(u32, u32, Partition, Composition)> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        for n in 1..=max_n {
            for s in 1..=r {
                let rows: Vec<u32> = std::iter::once(0).chain(s..=r).collect();
                let cols: Vec<u32> = std::iter::once(0).chain(s + 1..=r).collect();
                for lam in compositions_from(&rows, n) {
                    let Ok(lam) = Partition::new(lam.0) else { continue };
                    for mu in compositions_from(&cols, n) {
                        if multiplicities_match(s, r, lam.parts(), mu.parts()) {
                            out.push((s, r, lam.clone(), mu));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `Tr[A_{λ_1}(x_1) ⋯ A_{λ_n}(x_n) S] / Ω_{λ⁺}` for a composition `λ`.
///
/// The layers are summed one at a time over the intermediate compositions
/// `μ^{(s)}`, each step weighted by a transition weight.
pub fn matrix_product_f<N: Numeric>(
    lambda: &Composition,
    xs: &[N],
    trunc: &FockTruncation<N>,
) -> Result<TraceValue<N>> {
    let n = lambda.len();
    if xs.len() != n {
        return Err(Error::VariableCountMismatch { left: xs.len(), right: n });
    }
    let r = lambda.parts().iter().copied().max().unwrap_or(0);
    if r > MAX_R || n > MAX_N {
        return Err(Error::Oversize(format!("{} (limits r <= {}, n <= {})", lambda, MAX_R, MAX_N)));
    }
    if r == 0 {
        return Ok(TraceValue::exact(N::one()));
    }
    let mut cache = TraceCache::new();
    let mut layer: Vec<(Vec<u32>, TraceValue<N>)> = vec![(lambda.0.clone(), TraceValue::exact(N::one()))];
    for s in 1..=r {
        let cols: Vec<u32> = std::iter::once(0).chain(s + 1..=r).collect();
        let mut next: Vec<(Vec<u32>, TraceValue<N>)> = Vec::new();
        for mu in compositions_from(&cols, n) {
            let mut acc: Option<TraceValue<N>> = None;
            for (prev, w) in &layer {
                if !multiplicities_match(s, r, prev, mu.parts()) {
                    continue;
                }
                let tw = transition_weight(s, r, prev, mu.parts(), xs, trunc, &mut cache)?;
                if tw.value.is_zero() && tw.tail_bound == 0.0 {
                    continue;
                }
                let term = w.times(&tw);
                acc = Some(match acc {
                    Some(a) => a.plus(&term),
                    None => term,
                });
            }
            if let Some(a) = acc {
                next.push((mu.0, a));
            }
        }
        layer = next;
    }
    let total = layer
        .into_iter()
        .find(|(mu, _)| mu.iter().all(|&p| p == 0))
        .map(|(_, v)| v)
        .unwrap_or_else(|| TraceValue::exact(N::zero()));
    let om = omega(1, r, &sort_desc(lambda), &trunc.t, &trunc.q)?;
    let inv = N::one() / om;
    Ok(total.scale(&inv))
}

/// Compares [`matrix_product_f`] with the exact `f_λ` at each point.
pub fn verify_matrix_product<N: Numeric>(
    lambda: &Composition,
    points: &[SamplePoint],
    cutoff: usize,
) -> Result<Vec<TraceReport>> {
    let f = compose_f(lambda)?;
    let mut out = Vec::new();
    for p in points {
        let (xs, t, q) = p.convert::<N>();
        let trunc = FockTruncation::new(cutoff, t.clone(), q.clone())?;
        let lhs = matrix_product_f(lambda, &xs, &trunc)?;
        let rhs = f.eval(&xs, &[(Symbol::Q, q), (Symbol::T, t)])?;
        out.push(TraceReport {
            instance: format!("lambda={}", lambda),
            point: p.describe(),
            lhs: lhs.value.as_f64(),
            rhs: rhs.as_f64(),
            rel_err: relative_error(&lhs.value, &rhs),
            cutoff,
            tail_bound: lhs.tail_bound,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn trunc_f(m: usize) -> FockTruncation<f64> {
        FockTruncation::new(m, 0.5, 1.0 / 3.0).unwrap()
    }

    #[test]
    fn geometric_series() {
        let v = fock_trace(0, 0, (1, 0), &trunc_f(80)).unwrap();
        assert!((v.value - 2.0).abs() < 1e-15);
        assert!((fock_trace_closed(0, 0, (1, 0), &0.5, &(1.0 / 3.0)).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn one_boson_against_closed_form() {
        let tr = FockTruncation::new(60, rat(1, 2), rat(1, 3)).unwrap();
        let v = fock_trace(1, 1, (0, 1), &tr).unwrap();
        let c = fock_trace_closed(1, 1, (0, 1), &rat(1, 2), &rat(1, 3)).unwrap();
        assert_eq!(c, rat(9, 10));
        let err = (v.value - c).abs();
        assert!(err.as_f64() <= v.tail_bound);
    }

    #[test]
    fn unbalanced_words_vanish() {
        let v = fock_trace(1, 2, (1, 0), &trunc_f(80)).unwrap();
        assert_eq!(v.value, 0.0);
        assert_eq!(v.tail_bound, 0.0);
        assert_eq!(fock_trace_closed(1, 2, (1, 0), &0.5, &0.3).unwrap(), 0.0);
    }

    #[test]
    fn identity_weight_diverges() {
        assert!(matches!(fock_trace(1, 1, (0, 0), &trunc_f(80)), Err(Error::Divergent(_))));
        assert!(matches!(fock_trace_closed(1, 1, (0, 0), &0.5, &0.3), Err(Error::Divergent(_))));
    }

    #[test]
    fn doubling_cutoff_stays_within_tail_bound() {
        let a = fock_trace(2, 2, (1, 1), &trunc_f(20)).unwrap();
        let b = fock_trace(2, 2, (1, 1), &trunc_f(40)).unwrap();
        assert!((a.value - b.value).abs() <= a.tail_bound);
    }

    #[test]
    fn lemma_on_golden_coefficients() {
        let pt = SamplePoint {
            xs: vec![rat(1, 1), rat(1, 1)],
            t: rat(1, 2),
            q: rat(1, 3),
        };
        let lam = Partition::new(vec![3, 0]).unwrap();
        let rep = verify_lemma::<f64>(2, 3, &lam, &Composition(vec![0, 3]), &[pt.clone()], 80).unwrap();
        assert!(rep[0].rel_err < 1e-9, "{:?}", rep);
        let pt3 = SamplePoint {
            xs: vec![rat(7, 10), rat(2, 5), rat(1, 2)],
            ..pt
        };
        let lam = Partition::new(vec![3, 2, 0]).unwrap();
        let rep = verify_lemma::<f64>(2, 3, &lam, &Composition(vec![0, 0, 3]), &[pt3], 80).unwrap();
        assert!(rep[0].rel_err < 1e-9, "{:?}", rep);
    }

    #[test]
    fn vanishing_entries_give_zero() {
        let tr = trunc_f(80);
        let mut cache = TraceCache::new();
        let w = transition_weight(1, 3, &[1, 0], &[3, 0], &[0.5, 0.5], &tr, &mut cache).unwrap();
        assert_eq!(w.value, 0.0);
    }

    #[test]
    fn top_layer_has_no_copies() {
        let (copies, sites) = layer_strings(3, 3, &[3, 0], &[0, 0]).unwrap();
        assert!(copies.is_empty());
        assert_eq!(sites, vec![0]);
    }

    #[test]
    fn matrix_product_small_cases() {
        let tr = FockTruncation::new(80, 0.5, 1.0 / 3.0).unwrap();
        let xs = [0.7, 0.4];
        let v = matrix_product_f(&Composition(vec![1, 0]), &xs, &tr).unwrap();
        assert!((v.value - 0.7).abs() < 1e-12);
        let f = compose_f(&Composition(vec![3, 1])).unwrap();
        let exact = f.eval(&xs, &[(Symbol::Q, 1.0 / 3.0), (Symbol::T, 0.5)]).unwrap();
        let v = matrix_product_f(&Composition(vec![3, 1]), &xs, &tr).unwrap();
        assert!(relative_error(&v.value, &exact) < 1e-8);
        let f = compose_f(&Composition(vec![1, 3])).unwrap();
        let exact = f.eval(&xs, &[(Symbol::Q, 1.0 / 3.0), (Symbol::T, 0.5)]).unwrap();
        let v = matrix_product_f(&Composition(vec![1, 3]), &xs, &tr).unwrap();
        assert!(relative_error(&v.value, &exact) < 1e-8);
        assert!(matrix_product_f(&Composition(vec![4, 0]), &xs, &tr).is_err());
    }
}
