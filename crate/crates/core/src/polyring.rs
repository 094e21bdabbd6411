//! Polynomials in `x_1..x_n` with [`RationalFunction`] coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{parse_in, Numeric, Params, RationalFunction, Symbol};

/// Exponent vector of a monomial `x_1^{e_1} ... x_n^{e_n}`.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// with `x_1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `n` variables over a [`Params`] coefficient context.
///
/// Zero coefficients are never stored, so derived equality is exact equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    params: Params,
    terms: BTreeMap<Monomial, RationalFunction>,
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

impl Polynomial {
    pub fn zero(n: usize, params: Params) -> Self {
        Polynomial {
            n,
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, params: Params) -> Self {
        Self::constant(n, RationalFunction::one(params))
    }

    pub fn constant(n: usize, c: RationalFunction) -> Self {
        let mut p = Self::zero(n, c.params());
        p.add_term(Monomial::one(n), c);
        p
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n: usize, params: Params, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Ok(Self::monomial(params, &e, RationalFunction::one(params)))
    }

    pub fn monomial(params: Params, exps: &[u32], c: RationalFunction) -> Self {
        assert_eq!(params, c.params(), "parameter context mismatch");
        let mut p = Self::zero(exps.len(), params);
        p.add_term(Monomial::new(exps), c);
        p
    }

    /// Collects terms, merging duplicate monomials.
    pub fn from_terms<I>(n: usize, params: Params, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, RationalFunction)>,
    {
        let mut p = Self::zero(n, params);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::VariableCountMismatch { left: n, right: e.len() });
            }
            params.check_same(c.params())?;
            p.add_term(Monomial::new(&e), c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> RationalFunction {
        self.terms
            .get(&Monomial::new(exps))
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.params))
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => {
                let d = first.degree();
                it.all(|m| m.degree() == d)
            }
        }
    }

    /// Adds `c * x^m` in place.
    pub fn add_term(&mut self, m: Monomial, c: RationalFunction) {
        debug_assert_eq!(m.len(), self.n);
        debug_assert_eq!(c.params(), self.params);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        self.params.check_same(other.params)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        Ok(big)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, self.params);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &RationalFunction) -> Result<Self> {
        self.params.check_same(c.params())?;
        if c.is_zero() {
            return Ok(Self::zero(self.n, self.params));
        }
        Ok(Polynomial {
            n: self.n,
            params: self.params,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        })
    }

    pub fn neg_ref(&self) -> Self {
        Polynomial {
            n: self.n,
            params: self.params,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), -x)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn mul_monomial(&self, e: &[u32]) -> Self {
        assert_eq!(e.len(), self.n);
        let m = Monomial::new(e);
        Polynomial {
            n: self.n,
            params: self.params,
            terms: self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect(),
        }
    }

    /// Applies `f` to every exponent vector; `f` must be injective.
    pub(crate) fn map_monomials(&self, f: impl Fn(&mut [u32])) -> Self {
        let mut out = Self::zero(self.n, self.params);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            f(m2.exps_mut());
            out.terms.insert(m2, c.clone());
        }
        out
    }

    /// Exchanges `x_i` and `x_{i+1}` (1-based).
    pub fn transpose_vars(&self, i: usize) -> Result<Self> {
        check_index(i, self.n)?;
        Ok(self.map_monomials(|e| e.swap(i - 1, i)))
    }

    /// Renames `x_k` to `x_{perm[k]}` (both 0-based); `perm` must be a permutation.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                left: perm.len(),
                right: self.n,
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::OutOfRange(format!("permutation {:?}", perm)));
            }
            seen[p] = true;
        }
        Ok(self.map_monomials(|e| {
            let old: SmallVec<[u32; 8]> = SmallVec::from_slice(e);
            for (k, &p) in perm.iter().enumerate() {
                e[p] = old[k];
            }
        }))
    }

    /// The exact quotient `(f - s_i f) / (x_i - x_{i+1})`.
    ///
    /// Each monomial pairs with its image under `s_i`; the one-pair division
    /// `(y^a z^b - y^b z^a)/(y - z)` has a closed form, so no remainder arises.
    pub fn divide_difference_quotient(&self, i: usize) -> Result<Self> {
        check_index(i, self.n)?;
        let (a, b) = (i - 1, i);
        let mut out = Self::zero(self.n, self.params);
        for (m, c) in &self.terms {
            let (u, v) = (m.exps()[a], m.exps()[b]);
            if u == v {
                continue;
            }
            // y^u z^v - y^v z^u = sign * (yz)^lo (y^d - z^d) with d = |u - v|
            let (lo, d, sign) = if u > v { (v, u - v, false) } else { (u, v - u, true) };
            let coeff = if sign { -c } else { c.clone() };
            for k in 0..d {
                let mut e = m.clone();
                e.exps_mut()[a] = lo + d - 1 - k;
                e.exps_mut()[b] = lo + k;
                out.add_term(e, coeff.clone());
            }
        }
        Ok(out)
    }

    /// Substitutes parameter values. Assigned symbols leave the context;
    /// symbols occurring in the values join it.
    pub fn specialize_params(&self, assignment: &[(Symbol, RationalFunction)]) -> Result<Self> {
        let mut target = self.params;
        for (s, _) in assignment {
            if !self.params.contains(*s) {
                return Err(Error::UnknownSymbol(s.name().to_string()));
            }
            target = target.without(*s);
        }
        for (_, v) in assignment {
            target = target.union(v.params());
        }
        let subs: Vec<(Symbol, RationalFunction)> = assignment
            .iter()
            .map(|(s, v)| Ok((*s, v.embed(target)?)))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(self.n, target);
        for (m, c) in &self.terms {
            let v = c.substitute(&subs, target).map_err(|e| match e {
                Error::VanishingDenominator(_) => Error::VanishingDenominator(format!(
                    "coefficient {} of monomial {:?}",
                    c,
                    m.exps()
                )),
                other => other,
            })?;
            out.add_term(m.clone(), v);
        }
        Ok(out)
    }

    /// The substitution `x_i -> q x_i` (1-based).
    pub fn shift_var(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n });
        }
        let q = RationalFunction::symbol(self.params, Symbol::Q)?;
        let mut out = Self::zero(self.n, self.params);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * &q.pow(m.exps()[i - 1]));
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        (1..self.n).all(|i| self.transpose_vars(i).map(|g| g == *self).unwrap_or(false))
    }

    /// Sets `x_{k+1}, ..., x_n` to zero, returning a polynomial in `k` variables.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        if k > self.n {
            return Err(Error::VariableCountMismatch { left: k, right: self.n });
        }
        let mut out = Self::zero(k, self.params);
        for (m, c) in &self.terms {
            if m.exps()[k..].iter().all(|&e| e == 0) {
                out.terms.insert(Monomial::new(&m.exps()[..k]), c.clone());
            }
        }
        Ok(out)
    }

    /// Re-expresses the coefficients in a larger parameter context.
    pub fn embed_params(&self, target: Params) -> Result<Self> {
        let mut out = Self::zero(self.n, target);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.embed(target)?);
        }
        Ok(out)
    }

    /// Exact division by `x_i - x_j` (0-based, `i != j`).
    pub fn div_linear(&self, i: usize, j: usize) -> Result<Self> {
        assert!(i != j && i < self.n && j < self.n);
        // Synthetic division in x_i: q_{k-1} = c_k + x_j q_k.
        let d = self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0) as usize;
        let mut by_deg: Vec<Polynomial> = vec![Self::zero(self.n, self.params); d + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let k = m2.exps()[i] as usize;
            m2.exps_mut()[i] = 0;
            by_deg[k].terms.insert(m2, c.clone());
        }
        let mut xj = vec![0; self.n];
        xj[j] = 1;
        let mut quotient = Self::zero(self.n, self.params);
        let mut carry = Self::zero(self.n, self.params);
        for k in (1..=d).rev() {
            carry = by_deg[k].checked_add(&carry.mul_monomial(&xj))?;
            let mut xi = vec![0; self.n];
            xi[i] = (k - 1) as u32;
            quotient = quotient.checked_add(&carry.mul_monomial(&xi))?;
        }
        let rem = by_deg[0].checked_add(&carry.mul_monomial(&xj))?;
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!("by x{} - x{}", i + 1, j + 1)));
        }
        Ok(quotient)
    }

    /// Evaluates at `xs` with the given parameter values.
    pub fn eval<N: Numeric>(&self, xs: &[N], params: &[(Symbol, N)]) -> Result<N> {
        if xs.len() != self.n {
            return Err(Error::VariableCountMismatch { left: xs.len(), right: self.n });
        }
        let mut acc = N::zero();
        for (m, c) in &self.terms {
            let mut v = c.eval(params)?;
            for (x, &e) in xs.iter().zip(m.exps()) {
                if e > 0 {
                    v = v * num_traits::pow(x.clone(), e as usize);
                }
            }
            acc = acc + v;
        }
        Ok(acc)
    }

    pub fn to_latex(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, true).unwrap();
        s
    }

    fn write(&self, f: &mut impl fmt::Write, latex: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_simple_negative();
            let c = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = monomial_string(m, latex);
            if c.is_one() {
                f.write_str(if mono.is_empty() { "1" } else { &mono })?;
                continue;
            }
            let wrap = c.denominator().is_one() && c.numerator().num_terms() > 1 && !mono.is_empty();
            if latex {
                if wrap {
                    f.write_str("\\left(")?;
                }
                c.write_with(f, true)?;
                if wrap {
                    f.write_str("\\right)")?;
                }
                if !mono.is_empty() {
                    f.write_str(" ")?;
                }
                f.write_str(&mono)?;
            } else {
                if wrap {
                    f.write_str("(")?;
                }
                c.write_with(f, false)?;
                if wrap {
                    f.write_str(")")?;
                }
                if !mono.is_empty() {
                    f.write_str("*")?;
                    f.write_str(&mono)?;
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            params: self.params,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.exps().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            terms.push((t.exp.clone(), parse_in(&t.coeff, j.params)?));
        }
        Self::from_terms(j.n, j.params, terms)
    }
}

fn monomial_string(m: &Monomial, latex: bool) -> String {
    let mut s = String::new();
    for (k, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if latex {
            s.push_str(&format!("x_{{{}}}", k + 1));
            if e > 1 {
                s.push_str(&format!("^{{{}}}", e));
            }
        } else {
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&format!("x{}", k + 1));
            if e > 1 {
                s.push_str(&format!("^{}", e));
            }
        }
    }
    s
}

/// JSON interchange form: terms leading-first in graded-lex order, each
/// coefficient as its canonical string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub params: Params,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial(n={}, params={}, {})", self.n, self.params, self)
    }
}

// Operator forms panic on mismatched variable counts or contexts.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

/// Arithmetic operation selector for [`p_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp<'a> {
    Add(&'a Polynomial),
    Mul(&'a Polynomial),
    Scale(&'a RationalFunction),
}

/// Checked ring arithmetic on `f`.
pub fn p_arith(f: &Polynomial, op: PolyOp<'_>) -> Result<Polynomial> {
    match op {
        PolyOp::Add(g) => f.checked_add(g),
        PolyOp::Mul(g) => f.checked_mul(g),
        PolyOp::Scale(c) => f.scale(c),
    }
}
