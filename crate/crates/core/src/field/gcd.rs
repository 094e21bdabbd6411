//! Multivariate gcd over the integers.
//!
//! Recursive on the parameter slots: the content with respect to a main
//! variable is taken by recursion on the remaining slots, and the primitive
//! parts are reduced with a primitive pseudo-remainder sequence.

use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::ParamPolynomial;

/// Greatest common divisor in `Z[symbols]`, including the integer content.
///
/// The result is normalized to have a positive leading coefficient, and is
/// zero only when both inputs are zero.
pub fn gcd(a: &ParamPolynomial, b: &ParamPolynomial) -> ParamPolynomial {
    assert_eq!(a.params(), b.params(), "parameter context mismatch");
    let g = gcd_inner(a, b);
    normalize_sign(g)
}

fn normalize_sign(g: ParamPolynomial) -> ParamPolynomial {
    match g.leading() {
        Some((_, c)) if c.is_negative() => g.neg(),
        _ => g,
    }
}

fn gcd_inner(a: &ParamPolynomial, b: &ParamPolynomial) -> ParamPolynomial {
    let params = a.params();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a == b {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        let g = a.content().gcd(&b.content());
        return ParamPolynomial::constant(params, g);
    }
    let (ma, mb) = (a.slot_mask(), b.slot_mask());
    // A slot present in only one input contributes only through its content.
    let only = ma ^ mb;
    if only != 0 {
        let slot = only.trailing_zeros() as usize;
        return if ma & (1 << slot) != 0 {
            gcd_inner(&content_in(a, slot), b)
        } else {
            gcd_inner(a, &content_in(b, slot))
        };
    }
    // Both share the same set of slots; pick the one of lowest degree.
    let slot = (0..8)
        .filter(|k| ma & (1 << k) != 0)
        .min_by_key(|&k| a.degree_in(k).max(b.degree_in(k)))
        .expect("non-constant polynomial has a variable");
    let ca = content_in(a, slot);
    let cb = content_in(b, slot);
    let c = gcd_inner(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, slot);
    c.mul(&g)
}

/// Content with respect to `slot`: gcd of the coefficients in that slot.
pub(crate) fn content_in(a: &ParamPolynomial, slot: usize) -> ParamPolynomial {
    let mut coeffs = a.coeffs_in(slot).into_iter().filter(|c| !c.is_zero());
    let mut g = match coeffs.next() {
        Some(c) => c,
        None => return ParamPolynomial::zero(a.params()),
    };
    for c in coeffs {
        if g.is_constant() && g.content().is_one() {
            break;
        }
        g = gcd_inner(&g, &c);
    }
    normalize_sign(g)
}

fn primitive_part(a: &ParamPolynomial, slot: usize) -> ParamPolynomial {
    if a.is_zero() {
        return a.clone();
    }
    let c = content_in(a, slot);
    a.div_exact(&c).expect("content divides")
}

/// Gcd of two polynomials that are primitive with respect to `slot`.
fn primitive_prs(a: ParamPolynomial, b: ParamPolynomial, slot: usize) -> ParamPolynomial {
    let (mut a, mut b) = if a.degree_in(slot) >= b.degree_in(slot) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.is_zero() {
            return primitive_part(&a, slot);
        }
        if b.degree_in(slot) == 0 {
            return ParamPolynomial::one(a.params());
        }
        let r = pseudo_remainder(&a, &b, slot);
        a = b;
        b = primitive_part(&r, slot);
    }
}

/// Pseudo-remainder of `a` by `b` in `slot`, up to a factor free of `slot`.
fn pseudo_remainder(a: &ParamPolynomial, b: &ParamPolynomial, slot: usize) -> ParamPolynomial {
    let db = b.degree_in(slot);
    let lcb = b.coeff_in(slot, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(slot) >= db {
        let dr = r.degree_in(slot);
        let lcr = r.coeff_in(slot, dr);
        // Cancel a shared integer factor of the two leading coefficients.
        let (ml, mr) = match (lcb.constant_value(), lcr.constant_value()) {
            (Some(x), Some(y)) => {
                let g = x.gcd(&y);
                (
                    ParamPolynomial::constant(r.params(), &x / &g),
                    ParamPolynomial::constant(r.params(), &y / &g),
                )
            }
            _ => (lcb.clone(), lcr),
        };
        r = r.mul(&ml).sub(&mr.mul(b).shift_slot(slot, dr - db));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::params::Params;

    fn p(s: &str) -> ParamPolynomial {
        let rf: crate::field::RationalFunction = crate::field::parse(s, Params::QT).unwrap();
        assert!(rf.denominator().is_one());
        rf.numerator().clone()
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = p("1 - q*t^2");
        let a = g.mul(&p("1 + q + t^3"));
        let b = g.mul(&p("2 - q^2*t"));
        assert_eq!(gcd(&a, &b), normalize_sign(g));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        assert!(gcd(&p("1 - q*t"), &p("1 - t")).is_one());
        assert!(gcd(&p("q"), &p("t")).is_one());
    }

    #[test]
    fn gcd_includes_integer_content() {
        let a = p("6*q + 6");
        let b = p("4*q^2 - 4");
        assert_eq!(gcd(&a, &b), p("2*q + 2"));
    }

    #[test]
    fn gcd_with_unshared_variable() {
        let a = p("q*t + q");
        let b = p("q^2");
        assert_eq!(gcd(&a, &b), p("q"));
    }

    #[test]
    fn gcd_with_powers() {
        let f = p("1 - q*t");
        let a = f.pow(3).mul(&p("1 + t"));
        let b = f.pow(2).mul(&p("1 - t")).mul(&p("q"));
        assert_eq!(gcd(&a, &b), normalize_sign(f.pow(2)));
    }
}
