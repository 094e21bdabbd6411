//! Sparse polynomials in the parameter symbols with big-integer coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::params::{Params, Symbol, MAX_SYMBOLS};
use crate::error::{Error, Result};

/// Exponent vector. Slots beyond `params.len()` are always zero.
pub type Exps = [u32; MAX_SYMBOLS];

pub(crate) fn exps_degree(e: &Exps) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

/// Graded-lexicographic order: total degree first, then lexicographic in
/// canonical symbol order.
pub fn glex_cmp(a: &Exps, b: &Exps) -> Ordering {
    exps_degree(a).cmp(&exps_degree(b)).then_with(|| a.cmp(b))
}

fn exps_add(a: &Exps, b: &Exps) -> Exps {
    let mut out = [0; MAX_SYMBOLS];
    for k in 0..MAX_SYMBOLS {
        out[k] = a[k].checked_add(b[k]).expect("parameter exponent overflow");
    }
    out
}

fn exps_divides(d: &Exps, e: &Exps) -> bool {
    d.iter().zip(e).all(|(x, y)| x <= y)
}

fn exps_sub(a: &Exps, b: &Exps) -> Exps {
    let mut out = [0; MAX_SYMBOLS];
    for k in 0..MAX_SYMBOLS {
        out[k] = a[k] - b[k];
    }
    out
}

/// Polynomial in the symbols of a [`Params`] context with integer coefficients.
///
/// Terms are kept sorted ascending in graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamPolynomial {
    params: Params,
    terms: Vec<(Exps, BigInt)>,
}

impl ParamPolynomial {
    pub fn zero(params: Params) -> Self {
        ParamPolynomial {
            params,
            terms: Vec::new(),
        }
    }

    pub fn one(params: Params) -> Self {
        Self::constant(params, BigInt::one())
    }

    pub fn constant(params: Params, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(params);
        }
        ParamPolynomial {
            params,
            terms: vec![([0; MAX_SYMBOLS], c)],
        }
    }

    /// The polynomial consisting of the single symbol `sym`.
    pub fn symbol(params: Params, sym: Symbol) -> Result<Self> {
        let idx = params
            .index_of(sym)
            .ok_or_else(|| Error::UnknownSymbol(sym.name().to_string()))?;
        let mut e = [0; MAX_SYMBOLS];
        e[idx] = 1;
        Ok(ParamPolynomial {
            params,
            terms: vec![(e, BigInt::one())],
        })
    }

    /// `c * Π sym^e` with exponents given per context slot.
    pub fn monomial(params: Params, exps: &[u32], c: BigInt) -> Self {
        assert_eq!(exps.len(), params.len(), "exponent vector length");
        let mut e = [0; MAX_SYMBOLS];
        e[..exps.len()].copy_from_slice(exps);
        Self::from_terms(params, vec![(e, c)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(params: Params, mut terms: Vec<(Exps, BigInt)>) -> Self {
        let len = params.len();
        debug_assert!(terms.iter().all(|(e, _)| e[len..].iter().all(|&x| x == 0)));
        terms.sort_by(|a, b| glex_cmp(&a.0, &b.0));
        let mut out: Vec<(Exps, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        ParamPolynomial { params, terms: out }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && exps_degree(&self.terms[0].0) == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && exps_degree(&self.terms[0].0) == 0 && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of the graded-lex largest term.
    pub fn leading(&self) -> Option<&(Exps, BigInt)> {
        self.terms.last()
    }

    /// Coefficient of the graded-lex smallest term.
    pub fn trailing(&self) -> Option<&(Exps, BigInt)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(e, _)| exps_degree(e)).max().unwrap_or(0)
    }

    pub fn degree_in(&self, slot: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[slot]).max().unwrap_or(0)
    }

    /// Bitmask of context slots that occur with positive exponent.
    pub(crate) fn slot_mask(&self) -> u8 {
        let mut m = 0u8;
        for (e, _) in &self.terms {
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    m |= 1 << k;
                }
            }
        }
        m
    }

    /// Gcd of the integer coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> Self {
        ParamPolynomial {
            params: self.params,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.params, other.params, "parameter context mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match glex_cmp(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (e, c) in &b[j..] {
            out.push((*e, if negate { -c } else { c.clone() }));
        }
        ParamPolynomial {
            params: self.params,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.params, other.params, "parameter context mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.params);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((exps_add(ea, eb), ca * cb));
            }
        }
        Self::from_terms(self.params, terms)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.params);
        }
        ParamPolynomial {
            params: self.params,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.params);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `sym_slot^k`.
    pub(crate) fn shift_slot(&self, slot: usize, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        for (e, _) in terms.iter_mut() {
            e[slot] = e[slot].checked_add(k).expect("parameter exponent overflow");
        }
        // a uniform shift in one slot can reorder graded-lex ties
        terms.sort_by(|a, b| glex_cmp(&a.0, &b.0));
        ParamPolynomial {
            params: self.params,
            terms,
        }
    }

    /// Divides every coefficient by `c`; `None` unless all divisions are exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        if c.is_one() {
            return Some(self.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, x) in &self.terms {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((*e, q));
        }
        Some(ParamPolynomial {
            params: self.params,
            terms,
        })
    }

    /// Exact division in `Z[symbols]`; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.params, divisor.params, "parameter context mismatch");
        assert!(!divisor.is_zero(), "exact division by zero polynomial");
        if let Some(c) = divisor.constant_value() {
            return self.div_scalar_exact(&c);
        }
        let (ld_e, ld_c) = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, BigInt)> = Vec::new();
        while let Some((le, lc)) = rem.leading().cloned() {
            if !exps_divides(&ld_e, &le) {
                return None;
            }
            let (qc, r) = lc.div_rem(&ld_c);
            if !r.is_zero() {
                return None;
            }
            let qe = exps_sub(&le, &ld_e);
            let term = ParamPolynomial {
                params: self.params,
                terms: vec![(qe, qc.clone())],
            };
            rem = rem.sub(&term.mul(divisor));
            quot.push((qe, qc));
        }
        Some(Self::from_terms(self.params, quot))
    }

    /// Coefficients with respect to context slot `slot`, indexed by degree.
    pub(crate) fn coeffs_in(&self, slot: usize) -> Vec<ParamPolynomial> {
        let deg = self.degree_in(slot) as usize;
        let mut buckets: Vec<Vec<(Exps, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let d = e2[slot] as usize;
            e2[slot] = 0;
            buckets[d].push((e2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Self::from_terms(self.params, t))
            .collect()
    }

    pub(crate) fn coeff_in(&self, slot: usize, d: u32) -> ParamPolynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[slot] == d)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[slot] = 0;
                (e2, c.clone())
            })
            .collect();
        Self::from_terms(self.params, terms)
    }

    /// Re-expresses this polynomial in a larger context.
    pub fn embed(&self, target: Params) -> Result<Self> {
        if !self.params.is_subset_of(target) {
            return Err(Error::ParamMismatch {
                left: self.params,
                right: target,
            });
        }
        let map: Vec<usize> = self
            .params
            .symbols()
            .map(|s| target.index_of(s).unwrap())
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = [0; MAX_SYMBOLS];
                for (k, &slot) in map.iter().enumerate() {
                    e2[slot] = e[k];
                }
                (e2, c.clone())
            })
            .collect();
        Ok(Self::from_terms(target, terms))
    }

    /// Evaluates with one value per context slot.
    pub fn eval<N: super::Numeric>(&self, values: &[N]) -> N {
        assert_eq!(values.len(), self.params.len());
        let mut acc = N::zero();
        for (e, c) in &self.terms {
            let mut term = N::from_bigint(c);
            for (k, v) in values.iter().enumerate() {
                if e[k] > 0 {
                    term = term * num_traits::pow(v.clone(), e[k] as usize);
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Writes the polynomial with terms in ascending graded-lex order,
    /// e.g. `1 - t + q - q*t`.
    pub(crate) fn write_plain(&self, f: &mut impl fmt::Write, latex: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let is_const = exps_degree(e) == 0;
            let mut first = true;
            if is_const || !mag.is_one() {
                write!(f, "{}", mag)?;
                first = false;
            }
            for (slot, sym) in self.params.symbols().enumerate() {
                let p = e[slot];
                if p == 0 {
                    continue;
                }
                if !first && !latex {
                    f.write_str("*")?;
                }
                first = false;
                if latex {
                    f.write_str(sym.latex())?;
                    if p > 1 {
                        write!(f, "^{{{}}}", p)?;
                    }
                    if sym == Symbol::Alpha {
                        f.write_str(" ")?;
                    }
                } else {
                    f.write_str(sym.name())?;
                    if p > 1 {
                        write!(f, "^{}", p)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_plain(f, false)
    }
}

impl fmt::Debug for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPolynomial{}({})", self.params, self)
    }
}
