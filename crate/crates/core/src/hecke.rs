//! Polynomial representation of the type A Hecke algebra.
//!
//! `T_i = t - (t x_i - x_{i+1})/(x_i - x_{i+1}) (1 - s_i)`, the simple
//! transpositions `s_i`, and the divided differences `D_i` (the `t = 0`
//! value of `T_i`). All three act monomial by monomial through closed forms,
//! so no division by `x_i - x_{i+1}` is ever carried out.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{RationalFunction, Symbol};
use crate::polyring::Polynomial;

fn check_index(i: usize, n: usize) -> Result<()> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// Sequence of generator indices, each in `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeckeWord {
    indices: Vec<usize>,
}

impl HeckeWord {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        for &i in &indices {
            check_index(i, n)?;
        }
        Ok(HeckeWord { indices })
    }

    pub fn empty() -> Self {
        HeckeWord { indices: vec![] }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Which family of operators a word is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// Hecke generators `T_i`; the context must contain `t`.
    Hecke,
    /// Plain transpositions `s_i`.
    Transposition,
    /// Divided differences `D_i`.
    DividedDifference,
}

impl Generator {
    pub fn apply(self, i: usize, f: &Polynomial) -> Result<Polynomial> {
        match self {
            Generator::Hecke => apply_t(i, f),
            Generator::Transposition => f.transpose_vars(i),
            Generator::DividedDifference => apply_divided_difference(i, f),
        }
    }

    /// Applies a word right to left: the rightmost letter acts first.
    pub fn apply_word(self, word: &[usize], f: &Polynomial) -> Result<Polynomial> {
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = self.apply(i, &g)?;
        }
        Ok(g)
    }
}

/// `T_i f`.
pub fn apply_t(i: usize, f: &Polynomial) -> Result<Polynomial> {
    check_index(i, f.n())?;
    let params = f.params();
    if !params.contains(Symbol::T) {
        return Err(Error::MissingSymbol("t".into()));
    }
    let t = RationalFunction::symbol(params, Symbol::T)?;
    let one_minus_t = &RationalFunction::one(params) - &t;
    let (a, b) = (i - 1, i);
    let mut out = Polynomial::zero(f.n(), params);
    for (m, c) in f.terms() {
        let (u, v) = (m.exps()[a], m.exps()[b]);
        let with = |y: u32, z: u32| {
            let mut e = m.clone();
            e.exps_mut()[a] = y;
            e.exps_mut()[b] = z;
            e
        };
        if u == v {
            out.add_term(m.clone(), c * &t);
        } else if u > v {
            out.add_term(with(v, u), c.clone());
            if u - v > 1 {
                let w = c * &one_minus_t;
                for k in 1..u - v {
                    out.add_term(with(u - k, v + k), w.clone());
                }
            }
        } else {
            out.add_term(with(v, u), c * &t);
            let w = -&(c * &one_minus_t);
            for k in 1..=v - u {
                out.add_term(with(v - k, u + k), w.clone());
            }
        }
    }
    Ok(out)
}

/// `T_w f` for a word `w`; the leftmost letter acts last.
pub fn apply_t_word(w: &HeckeWord, f: &Polynomial) -> Result<Polynomial> {
    Generator::Hecke.apply_word(w.indices(), f)
}

/// `D_i f = x_{i+1} (f - s_i f)/(x_i - x_{i+1})`.
pub fn apply_divided_difference(i: usize, f: &Polynomial) -> Result<Polynomial> {
    check_index(i, f.n())?;
    let (a, b) = (i - 1, i);
    let mut out = Polynomial::zero(f.n(), f.params());
    for (m, c) in f.terms() {
        let (u, v) = (m.exps()[a], m.exps()[b]);
        let with = |y: u32, z: u32| {
            let mut e = m.clone();
            e.exps_mut()[a] = y;
            e.exps_mut()[b] = z;
            e
        };
        if u > v {
            for k in 1..=u - v {
                out.add_term(with(u - k, v + k), c.clone());
            }
        } else if u < v {
            let neg = -c;
            for k in 1..=v - u {
                out.add_term(with(v - k, u + k), neg.clone());
            }
        }
    }
    Ok(out)
}

/// `s_w f`.
pub fn apply_s_word(w: &HeckeWord, f: &Polynomial) -> Result<Polynomial> {
    Generator::Transposition.apply_word(w.indices(), f)
}

/// Counts generator applications; shared between threads.
#[derive(Debug, Default)]
pub struct Counters {
    generator_applications: AtomicU64,
    cache_hits: AtomicU64,
}

impl Counters {
    pub fn generator_applications(&self) -> u64 {
        self.generator_applications.load(Ordering::Relaxed)
    }

    pub fn cache_hits(&self) -> u64 {
        self.cache_hits.load(Ordering::Relaxed)
    }

    pub(crate) fn add_applications(&self, k: u64) {
        self.generator_applications.fetch_add(k, Ordering::Relaxed);
    }

    fn add_hit(&self) {
        self.cache_hits.fetch_add(1, Ordering::Relaxed);
    }
}

/// Images `w(g)` of one fixed input `g` under many words, reusing the
/// results of shared word suffixes.
///
/// The cache belongs to a single input and lives on one thread.
pub struct WordCache<'a> {
    generator: Generator,
    input: Polynomial,
    memo: HashMap<Vec<usize>, Polynomial>,
    counters: &'a Counters,
}

impl<'a> WordCache<'a> {
    pub fn new(generator: Generator, input: Polynomial, counters: &'a Counters) -> Self {
        WordCache {
            generator,
            input,
            memo: HashMap::new(),
            counters,
        }
    }

    pub fn apply(&mut self, word: &[usize]) -> Result<Polynomial> {
        // longest cached suffix
        let mut start = word.len();
        for s in 0..word.len() {
            if self.memo.contains_key(&word[s..]) {
                start = s;
                break;
            }
        }
        let mut g = if start == word.len() {
            self.input.clone()
        } else {
            self.counters.add_hit();
            self.memo[&word[start..]].clone()
        };
        for s in (0..start).rev() {
            g = self.generator.apply(word[s], &g)?;
            self.counters.add_applications(1);
            self.memo.insert(word[s..].to_vec(), g.clone());
        }
        Ok(g)
    }
}

/// Every reduced word reachable from `word` by braid moves
/// `i (i+1) i <-> (i+1) i (i+1)` and commutations `i j <-> j i`, `|i-j| > 1`.
///
/// For a reduced word this is the full set of reduced words of its permutation.
pub fn braid_class(word: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        let mut next = Vec::new();
        for k in 0..w.len().saturating_sub(1) {
            if w[k].abs_diff(w[k + 1]) > 1 {
                let mut v = w.clone();
                v.swap(k, k + 1);
                next.push(v);
            }
            if k + 2 < w.len() && w[k] == w[k + 2] && w[k].abs_diff(w[k + 1]) == 1 {
                let mut v = w.clone();
                v[k] = w[k + 1];
                v[k + 1] = w[k];
                v[k + 2] = w[k + 1];
                next.push(v);
            }
        }
        for v in next {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse, Params};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, Params::QT, i).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        parse(s, Params::QT).unwrap()
    }

    fn mono(e: &[u32], c: &str) -> Polynomial {
        Polynomial::monomial(Params::QT, e, rf(c))
    }

    #[test]
    fn small_values() {
        let one = Polynomial::one(2, Params::QT);
        assert_eq!(apply_t(1, &one).unwrap(), Polynomial::constant(2, rf("t")));
        assert_eq!(apply_t(1, &x(2, 1)).unwrap(), x(2, 2));
        let w = HeckeWord::new(vec![2, 1], 3).unwrap();
        assert_eq!(apply_t_word(&w, &x(3, 1)).unwrap(), x(3, 3));
        assert_eq!(apply_t_word(&HeckeWord::empty(), &x(3, 1)).unwrap(), x(3, 1));
        assert!(apply_t(2, &x(2, 1)).is_err());
        assert!(apply_t(0, &x(2, 1)).is_err());
        assert!(HeckeWord::new(vec![1, 3], 3).is_err());
    }

    #[test]
    fn t_matches_defining_formula() {
        // t f - (t x1 - x2) * (f - s1 f)/(x1 - x2)
        let f = &(&mono(&[3, 1], "1") + &mono(&[0, 4], "q")) + &mono(&[2, 2], "1 - t");
        let quo = f.divide_difference_quotient(1).unwrap();
        let txy = &mono(&[1, 0], "t") - &mono(&[0, 1], "1");
        let expect = &f.scale(&rf("t")).unwrap() - &(&txy * &quo);
        assert_eq!(apply_t(1, &f).unwrap(), expect);
    }

    #[test]
    fn sum_over_cosets_reproduces_first_golden_display() {
        let f = &mono(&[3, 1], "1") + &mono(&[2, 2], "q*(1 - t)/(1 - q*t)");
        let p = &f + &apply_t(1, &f).unwrap();
        let expect = &(&mono(&[3, 1], "1") + &mono(&[2, 2], "(1 - t + q - q*t)/(1 - q*t)"))
            + &mono(&[1, 3], "1");
        assert_eq!(p, expect);
    }

    #[test]
    fn divided_difference_values() {
        let p = Params::Q;
        let x1 = Polynomial::var(2, p, 1).unwrap();
        let x2 = Polynomial::var(2, p, 2).unwrap();
        assert_eq!(apply_divided_difference(1, &x1).unwrap(), x2);
        assert!(apply_divided_difference(1, &Polynomial::one(2, p)).unwrap().is_zero());
        let sym = &(&x1 * &x1) + &(&x2 * &x2);
        assert!(apply_divided_difference(1, &sym).unwrap().is_zero());
    }

    #[test]
    fn divided_difference_is_t_zero_value() {
        let f = &(&mono(&[3, 1, 0], "1") + &mono(&[0, 4, 1], "q")) + &mono(&[1, 2, 2], "2");
        for i in 1..3 {
            let t0 = apply_t(i, &f)
                .unwrap()
                .specialize_params(&[(Symbol::T, RationalFunction::zero(Params::Q))])
                .unwrap();
            let g = f.embed_params(Params::QT).unwrap();
            let fq = g
                .specialize_params(&[(Symbol::T, RationalFunction::zero(Params::Q))])
                .unwrap();
            assert_eq!(apply_divided_difference(i, &fq).unwrap(), t0);
        }
    }

    #[test]
    fn t_needs_t_in_context() {
        let f = Polynomial::var(2, Params::Q, 1).unwrap();
        assert!(matches!(apply_t(1, &f), Err(Error::MissingSymbol(_))));
    }

    #[test]
    fn cache_agrees_with_direct_application() {
        let f = &mono(&[2, 1, 0, 0], "1") + &mono(&[0, 1, 1, 1], "q");
        let counters = Counters::default();
        let mut cache = WordCache::new(Generator::Hecke, f.clone(), &counters);
        let words: [&[usize]; 4] = [&[1], &[2, 1], &[3, 2, 1], &[1, 3, 2, 1]];
        for w in words {
            let direct = Generator::Hecke.apply_word(w, &f).unwrap();
            assert_eq!(cache.apply(w).unwrap(), direct);
        }
        assert_eq!(counters.generator_applications(), 4);
        assert_eq!(counters.cache_hits(), 3);
    }

    #[test]
    fn braid_class_of_longest_element() {
        let c = braid_class(&[1, 2, 1]);
        assert_eq!(c.len(), 2);
        assert!(c.contains(&vec![2, 1, 2]));
        // S_4 longest element has 16 reduced words
        assert_eq!(braid_class(&[1, 2, 1, 3, 2, 1]).len(), 16);
        assert_eq!(braid_class(&[1, 3]).len(), 2);
    }
}
