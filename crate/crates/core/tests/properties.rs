use num_rational::BigRational;
use proptest::prelude::*;

use macsum::combinat::{apply_word, conjugate, coset_reps, dominance_less, inversion_count, Partition};
use macsum::field::{parse, Params, RationalFunction, Symbol};
use macsum::hecke::{apply_divided_difference, apply_s_word, apply_t, HeckeWord};
use macsum::polyring::Polynomial;

/// Integer polynomial in q, t as an expression string.
fn poly_src() -> impl Strategy<Value = String> {
    prop::collection::vec((-4i64..=4, 0u32..=2, 0u32..=2), 1..4).prop_map(|terms| {
        terms
            .iter()
            .map(|(c, a, b)| format!("({})*q^{}*t^{}", c, a, b))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn rf_strategy() -> impl Strategy<Value = RationalFunction> {
    (poly_src(), poly_src()).prop_filter_map("zero denominator", |(n, d)| {
        parse(&format!("({})/({})", n, d), Params::QT).ok()
    })
}

fn point() -> impl Strategy<Value = (BigRational, BigRational)> {
    ((1i64..=9, 2i64..=11), (1i64..=9, 2i64..=11)).prop_map(|((a, b), (c, d))| {
        (BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
    })
}

fn poly_strategy(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=3, n), rf_strategy()), 1..5).prop_map(move |terms| {
        Polynomial::from_terms(n, Params::QT, terms).expect("well formed")
    })
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..=5, 1..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).expect("sorted")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in rf_strategy(), b in rf_strategy(), c in rf_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_unique(a in rf_strategy(), c in rf_strategy()) {
        prop_assume!(!c.is_zero());
        let scaled_num = &(&a * &c);
        let back = scaled_num * &c.inv().unwrap();
        prop_assert_eq!(back.to_string(), a.to_string());
        prop_assert_eq!(parse(&a.to_string(), Params::QT).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in rf_strategy(), b in rf_strategy(), (q, t) in point()) {
        let at = [(Symbol::Q, q), (Symbol::T, t)];
        if let (Ok(x), Ok(y)) = (a.eval(&at), b.eval(&at)) {
            prop_assert_eq!((&a + &b).eval(&at).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).eval(&at).unwrap(), &x * &y);
        }
    }

    #[test]
    fn divided_difference_remultiplies(f in poly_strategy(3), i in 1usize..3) {
        let d = f.divide_difference_quotient(i).unwrap();
        let xi = Polynomial::var(3, Params::QT, i).unwrap();
        let xj = Polynomial::var(3, Params::QT, i + 1).unwrap();
        let lhs = d.checked_mul(&xi.checked_sub(&xj).unwrap()).unwrap();
        prop_assert_eq!(lhs, f.checked_sub(&f.transpose_vars(i).unwrap()).unwrap());
        // the degenerate generator is x_{i+1} times the quotient
        prop_assert_eq!(apply_divided_difference(i, &f).unwrap(), d.checked_mul(&xj).unwrap());
    }

    #[test]
    fn transpositions_are_involutions(f in poly_strategy(3), i in 1usize..3) {
        prop_assert_eq!(f.transpose_vars(i).unwrap().transpose_vars(i).unwrap(), f.clone());
        prop_assert_eq!(apply_s_word(&HeckeWord::new(vec![i, i], 3).unwrap(), &f).unwrap(), f);
    }

    #[test]
    fn hecke_inverse(f in poly_strategy(3), i in 1usize..3) {
        // T_i^{-1} = t^{-1} (T_i + 1 - t)
        let t = parse("t", Params::QT).unwrap();
        let g = apply_t(i, &f).unwrap();
        let h = apply_t(i, &g).unwrap()
            .checked_add(&g.scale(&(&RationalFunction::one(Params::QT) - &t)).unwrap()).unwrap();
        prop_assert_eq!(h, f.scale(&t).unwrap());
    }

    #[test]
    fn conjugation_is_an_involution(l in partition_strategy()) {
        let c = conjugate(&l);
        prop_assert_eq!(c.size(), l.size());
        prop_assert_eq!(conjugate(&c).parts().iter().filter(|&&x| x > 0).count(), l.length());
        let cc = conjugate(&c).with_len(l.len()).unwrap();
        prop_assert_eq!(cc, l);
    }

    #[test]
    fn coset_words_are_reduced(l in partition_strategy()) {
        let reps = coset_reps(&l);
        for c in &reps {
            prop_assert_eq!(apply_word(l.parts(), &c.word), c.arrangement.0.clone());
            prop_assert_eq!(c.word.len(), inversion_count(&c.arrangement.0));
        }
    }

    #[test]
    fn dominance_is_antisymmetric(a in partition_strategy(), b in partition_strategy()) {
        let n = a.len().max(b.len());
        let (a, b) = (a.with_len(n).unwrap(), b.with_len(n).unwrap());
        if a.size() == b.size() && a != b {
            prop_assert!(!(dominance_less(&a, &b).unwrap() && dominance_less(&b, &a).unwrap()));
        }
    }
}
