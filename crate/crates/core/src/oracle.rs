//! Brute-force constructions used to cross-check the nested formula:
//! classical bases, the `(q, t)` and Jack inner products on power sums,
//! Gram–Schmidt, Jacobi–Trudi Schur polynomials and the q-difference
//! eigenoperator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{
    coset_reps, dominance_less, enumerate_partitions, sort_desc, z_factor, Composition,
    Partition,
};
use crate::error::{Error, Result};
use crate::field::{ParamPolynomial, Params, RationalFunction, Symbol};
use crate::polyring::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    Monomial,
    Powersum,
    Elementary,
    Homogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricBasisElement {
    pub kind: BasisKind,
    pub index: Partition,
    pub n: usize,
}

/// Which inner product on power sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `⟨p_λ, p_μ⟩ = δ z_λ Π (1 - q^{λ_i})/(1 - t^{λ_i})`.
    Macdonald,
    /// `⟨p_λ, p_μ⟩ = δ z_λ α^{ℓ(λ)}`.
    Jack,
}

impl Variant {
    pub fn params(self) -> Params {
        match self {
            Variant::Macdonald => Params::QT,
            Variant::Jack => Params::ALPHA,
        }
    }

    /// `⟨p_ν, p_ν⟩`.
    pub fn weight(self, nu: &Partition) -> RationalFunction {
        let params = self.params();
        let z = RationalFunction::from_bigrational(params, &BigRational::from_integer(z_factor(nu)));
        let parts = &nu.parts()[..nu.length()];
        match self {
            Variant::Macdonald => {
                let q = ParamPolynomial::symbol(params, Symbol::Q).unwrap();
                let t = ParamPolynomial::symbol(params, Symbol::T).unwrap();
                let one = ParamPolynomial::one(params);
                let mut num = ParamPolynomial::one(params);
                let mut den = ParamPolynomial::one(params);
                for &p in parts {
                    num = num.mul(&one.sub(&q.pow(p)));
                    den = den.mul(&one.sub(&t.pow(p)));
                }
                &z * &RationalFunction::new(num, den).unwrap()
            }
            Variant::Jack => {
                let a = RationalFunction::symbol(params, Symbol::Alpha).unwrap();
                &z * &a.pow(parts.len() as u32)
            }
        }
    }
}

fn one_rf() -> RationalFunction {
    RationalFunction::one(Params::NONE)
}

/// `m_λ` with integer coefficients; zero parts are ignored.
fn monomial_sym(lambda: &Partition, n: usize) -> Result<Polynomial> {
    let l = lambda.with_len(n)?;
    Polynomial::from_terms(
        n,
        Params::NONE,
        coset_reps(&l).into_iter().map(|c| (c.arrangement.0, one_rf())),
    )
}

fn power_sum(k: u32, n: usize) -> Polynomial {
    let mut p = Polynomial::zero(n, Params::NONE);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = k;
        p = p.checked_add(&Polynomial::monomial(Params::NONE, &e, one_rf())).unwrap();
    }
    p
}

fn complete(k: u32, n: usize) -> Polynomial {
    let mut out = Polynomial::zero(n, Params::NONE);
    for mu in enumerate_partitions(k, n) {
        if let Ok(m) = monomial_sym(&mu, n) {
            out = out.checked_add(&m).unwrap();
        }
    }
    out
}

fn elementary(k: u32, n: usize) -> Polynomial {
    if k as usize > n {
        return Polynomial::zero(n, Params::NONE);
    }
    monomial_sym(&Partition::new(vec![1; k as usize]).unwrap(), n).unwrap()
}

/// The named classical symmetric polynomial, with integer coefficients.
pub fn basis_polynomial(b: &SymmetricBasisElement) -> Result<Polynomial> {
    let n = b.n;
    let parts = &b.index.parts()[..b.index.length()];
    let product = |f: &dyn Fn(u32) -> Polynomial| {
        parts
            .iter()
            .fold(Polynomial::one(n, Params::NONE), |acc, &k| acc.checked_mul(&f(k)).unwrap())
    };
    match b.kind {
        BasisKind::Monomial => monomial_sym(&b.index, n),
        BasisKind::Powersum => Ok(product(&|k| power_sum(k, n))),
        BasisKind::Elementary => Ok(product(&|k| elementary(k, n))),
        BasisKind::Homogeneous => Ok(product(&|k| complete(k, n))),
    }
}

/// Partitions of `d` in an order extending dominance (smallest first).
fn partitions_ascending(d: u32) -> Vec<Partition> {
    let mut v = enumerate_partitions(d, d as usize);
    v.reverse();
    v
}

/// Coefficient of `x^μ` in `p_ν`: ways to distribute the parts of `ν` over
/// the positions of `μ` with matching sums.
fn powersum_coeff(nu: &[u32], mu: &[u32]) -> BigInt {
    fn rec(nu: &[u32], rem: &mut Vec<u32>) -> BigInt {
        match nu.split_first() {
            None => {
                if rem.iter().all(|&r| r == 0) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Some((&p, rest)) => {
                let mut total = BigInt::zero();
                for k in 0..rem.len() {
                    if rem[k] >= p {
                        rem[k] -= p;
                        total += rec(rest, rem);
                        rem[k] += p;
                    }
                }
                total
            }
        }
    }
    let mut rem = mu.to_vec();
    rec(nu, &mut rem)
}

/// Rational inverse of the `p → m` transition at degree `d`:
/// `m_μ = Σ_ν inv[μ][ν] p_ν`, indices following `partitions_ascending(d)`.
fn monomial_to_powersum(d: u32) -> (Vec<Partition>, Vec<Vec<BigRational>>) {
    let parts = partitions_ascending(d);
    // a[ν][μ] = coefficient of m_μ in p_ν, so m = a^{-1} p
    let a: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|nu| {
            parts
                .iter()
                .map(|mu| BigRational::from_integer(powersum_coeff(nu.parts(), mu.parts())))
                .collect()
        })
        .collect();
    let inv = invert_rational(a).expect("transition matrix is invertible");
    (parts, inv)
}

fn invert_rational(mut a: Vec<Vec<BigRational>>) -> Result<Vec<Vec<BigRational>>> {
    let k = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..k {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..k {
                    let x = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &x;
                    let y = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - &y;
                }
            }
        }
    }
    Ok(inv)
}

/// Solves `m · x = rhs` over rational functions by Gauss–Jordan elimination,
/// pivoting on the entry with the fewest terms.
pub fn solve(mut m: Vec<Vec<RationalFunction>>, mut rhs: Vec<RationalFunction>) -> Result<Vec<RationalFunction>> {
    let k = m.len();
    if rhs.len() != k || m.iter().any(|row| row.len() != k) {
        return Err(Error::LengthMismatch { left: k, right: rhs.len() });
    }
    for col in 0..k {
        let piv = (col..k)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].size())
            .ok_or(Error::Singular)?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col].inv()?;
        for j in col..k {
            m[col][j] = &m[col][j] * &p;
        }
        rhs[col] = &rhs[col] * &p;
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..k {
                    let x = &f * &m[col][j];
                    m[r][j] = &m[r][j] - &x;
                }
                let y = &f * &rhs[col];
                rhs[r] = &rhs[r] - &y;
            }
        }
    }
    Ok(rhs)
}

/// Coefficients of a symmetric homogeneous polynomial on `m_μ`, for every
/// partition `μ` of `d`, read off the sorted monomials.
fn monomial_coords(f: &Polynomial, parts: &[Partition]) -> Result<Vec<RationalFunction>> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = f.n();
    let d = parts.first().map(|p| p.size()).unwrap_or(0);
    if let Some(fd) = f.degree() {
        if !f.is_homogeneous() || fd != d as u64 {
            return Err(Error::NotHomogeneous(d));
        }
    }
    parts
        .iter()
        .map(|mu| match mu.with_len(n) {
            Ok(p) => Ok(f.coefficient(p.parts())),
            Err(_) => Ok(RationalFunction::zero(f.params())),
        })
        .collect()
}

/// `⟨f, g⟩` for symmetric `f`, `g` homogeneous of degree `d` in `n ≥ d`
/// variables.
pub fn inner_product(
    f: &Polynomial,
    g: &Polynomial,
    d: u32,
    n: usize,
    variant: Variant,
) -> Result<RationalFunction> {
    if n < d as usize {
        return Err(Error::TooFewVariables {
            partition: vec![1; d as usize],
            n,
        });
    }
    if f.n() != n || g.n() != n {
        return Err(Error::VariableCountMismatch { left: f.n(), right: n });
    }
    let params = variant.params();
    f.params().check_same(params)?;
    g.params().check_same(params)?;
    let (parts, inv) = monomial_to_powersum(d);
    let to_p = |a: Vec<RationalFunction>| -> Vec<RationalFunction> {
        (0..parts.len())
            .map(|nu| {
                let mut s = RationalFunction::zero(params);
                for (mu, amu) in a.iter().enumerate() {
                    if !inv[mu][nu].is_zero() && !amu.is_zero() {
                        s = &s + &(amu * &RationalFunction::from_bigrational(params, &inv[mu][nu]));
                    }
                }
                s
            })
            .collect()
    };
    let cf = to_p(monomial_coords(f, &parts)?);
    let cg = to_p(monomial_coords(g, &parts)?);
    let mut total = RationalFunction::zero(params);
    for (k, nu) in parts.iter().enumerate() {
        if !cf[k].is_zero() && !cg[k].is_zero() {
            total = &total + &(&(&cf[k] * &cg[k]) * &variant.weight(nu));
        }
    }
    Ok(total)
}

/// `P_λ` by orthogonalizing `m_λ` against every `m_μ` with `μ < λ`.
///
/// Works with symmetric functions at degree `|λ|` and then keeps the first
/// `n` variables, so any `n ≥ ℓ(λ)` is accepted.
pub fn gram_schmidt_p(lambda: &Partition, n: usize, variant: Variant) -> Result<Polynomial> {
    if lambda.length() > n {
        return Err(Error::TooFewVariables {
            partition: lambda.parts().to_vec(),
            n,
        });
    }
    let params = variant.params();
    let d = lambda.size();
    let lam = Partition::new(lambda.parts()[..lambda.length()].to_vec())?;
    let (parts, inv) = monomial_to_powersum(d);
    let weights: Vec<RationalFunction> = parts.iter().map(|nu| variant.weight(nu)).collect();
    let gram = |a: usize, b: usize| {
        let mut s = RationalFunction::zero(params);
        for nu in 0..parts.len() {
            let c = &inv[a][nu] * &inv[b][nu];
            if !c.is_zero() {
                s = &s + &(&weights[nu] * &RationalFunction::from_bigrational(params, &c));
            }
        }
        s
    };
    let li = parts.iter().position(|p| *p == lam).expect("partition of d");
    let below: Vec<usize> = (0..parts.len())
        .filter(|&k| dominance_less(&parts[k], &lam).unwrap())
        .collect();
    let m: Vec<Vec<RationalFunction>> = below
        .iter()
        .map(|&nu| below.iter().map(|&mu| gram(mu, nu)).collect())
        .collect();
    let rhs: Vec<RationalFunction> = below.iter().map(|&nu| -&gram(li, nu)).collect();
    let coeffs = solve(m, rhs)?;
    let mut out = monomial_sym(&lam, n)?.embed_params(params)?;
    for (&mu, c) in below.iter().zip(&coeffs) {
        if parts[mu].length() <= n && !c.is_zero() {
            let m_mu = monomial_sym(&parts[mu], n)?.embed_params(params)?;
            out = out.checked_add(&m_mu.scale(c)?)?;
        }
    }
    Ok(out)
}

/// Schur polynomial `s_λ(x_1..x_n)` from the Jacobi–Trudi determinant
/// `det(h_{λ_i - i + j})`, integer coefficients.
pub fn schur(lambda: &Partition, n: usize) -> Result<Polynomial> {
    let l = lambda.length();
    let parts = lambda.parts();
    let entry = |i: usize, j: usize| -> Polynomial {
        let k = parts[i] as i64 - i as i64 + j as i64;
        if k < 0 {
            Polynomial::zero(n, Params::NONE)
        } else {
            complete(k as u32, n)
        }
    };
    let h: Vec<Vec<Polynomial>> = (0..l).map(|i| (0..l).map(|j| entry(i, j)).collect()).collect();
    let mut det = Polynomial::zero(n, Params::NONE);
    let ident: Vec<u32> = (0..l as u32).rev().collect();
    // every permutation of 0..l, as arrangements of a strict partition
    let strict = Partition::new(ident.clone())?;
    for c in coset_reps(&strict) {
        let sigma: Vec<usize> = c.arrangement.0.iter().map(|&v| (l as u32 - 1 - v) as usize).collect();
        let mut term = Polynomial::one(n, Params::NONE);
        for (i, &s) in sigma.iter().enumerate() {
            term = term.checked_mul(&h[i][s])?;
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        det = if even(&sigma) {
            det.checked_add(&term)?
        } else {
            det.checked_sub(&term)?
        };
    }
    Ok(det)
}

fn even(perm: &[usize]) -> bool {
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

/// `D f = Σ_i Π_{j≠i} (t x_i - x_j)/(x_i - x_j) · f(.., q x_i, ..)`.
///
/// Computed as `Δ·Df` over the Vandermonde `Δ = Π_{a<b} (x_a - x_b)` and
/// divided back exactly; non-symmetric input fails the division.
pub fn macdonald_operator(f: &Polynomial, n: usize) -> Result<Polynomial> {
    if f.n() != n {
        return Err(Error::VariableCountMismatch { left: f.n(), right: n });
    }
    let params = f.params();
    let t = RationalFunction::symbol(params, Symbol::T)?;
    let one = RationalFunction::one(params);
    let var = |k: usize, c: &RationalFunction| {
        let mut e = vec![0; n];
        e[k] = 1;
        Polynomial::monomial(params, &e, c.clone())
    };
    let mut total = Polynomial::zero(n, params);
    for i in 0..n {
        let mut term = f.shift_var(i + 1)?;
        for j in 0..n {
            if j != i {
                term = term.checked_mul(&var(i, &t).checked_sub(&var(j, &one))?)?;
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if a != i && b != i {
                    term = term.checked_mul(&var(a, &one).checked_sub(&var(b, &one))?)?;
                }
            }
        }
        total = if i % 2 == 0 {
            total.checked_add(&term)?
        } else {
            total.checked_sub(&term)?
        };
    }
    for a in 0..n {
        for b in a + 1..n {
            total = total.div_linear(a, b)?;
        }
    }
    Ok(total)
}

/// Expansion of a symmetric polynomial in monomial symmetric polynomials,
/// as `(μ, coefficient)` with `μ` a partition of length at most `n`.
pub fn monomial_expansion(f: &Polynomial) -> Result<Vec<(Partition, RationalFunction)>> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exps();
        if e.windows(2).all(|w| w[0] >= w[1]) {
            out.push((sort_desc(&Composition(e.to_vec())), c.clone()));
        }
    }
    Ok(out)
}
