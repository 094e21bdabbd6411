//! Partitions, compositions, the statistics `m_i`, `a_i`, `b_i`, and coset
//! representatives of `S_n / Stab(λ)` together with reduced words.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing tuple of nonnegative integers of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

/// Tuple of nonnegative integers with no ordering constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(pub Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty(n: usize) -> Self {
        Partition(vec![0; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&p| p > 0).count()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    /// Pads with zeros (or drops trailing zeros) to exactly `n` parts.
    pub fn with_len(&self, n: usize) -> Result<Self> {
        if self.length() > n {
            return Err(Error::TooFewVariables {
                partition: self.0.clone(),
                n,
            });
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(Partition(v))
    }

    pub fn as_composition(&self) -> Composition {
        Composition(self.0.clone())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad part `{}` in `{}`", p.trim(), s)))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Composition(parse_parts(s)?))
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    write!(f, "({})", s.join(","))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

/// Conjugate partition `λ'_i = #{k : λ_k >= i}` for `i = 1..λ_1`.
pub fn conjugate(lambda: &Partition) -> Partition {
    let r = lambda.largest();
    Partition((1..=r).map(|i| conj_part(lambda.parts(), i)).collect())
}

/// `λ'_i` with the convention `λ'_i = 0` beyond the largest part.
pub(crate) fn conj_part(parts: &[u32], i: u32) -> u32 {
    parts.iter().filter(|&&p| p >= i).count() as u32
}

/// `λ[k]`: parts of size at most `k` replaced by zero.
pub fn truncate(lambda: &Partition, k: u32) -> Result<Partition> {
    if k > lambda.largest() {
        return Err(Error::OutOfRange(format!(
            "truncation level {} for largest part {}",
            k,
            lambda.largest()
        )));
    }
    Ok(truncated(lambda, k))
}

pub(crate) fn truncated(lambda: &Partition, k: u32) -> Partition {
    Partition(lambda.0.iter().map(|&p| if p <= k { 0 } else { p }).collect())
}

/// `m_i(μ)`: number of parts equal to `i`.
pub fn multiplicity(mu: &[u32], i: u32) -> usize {
    mu.iter().filter(|&&p| p == i).count()
}

fn check_pair(lambda: &[u32], mu: &[u32]) -> Result<()> {
    if lambda.len() != mu.len() {
        return Err(Error::LengthMismatch {
            left: lambda.len(),
            right: mu.len(),
        });
    }
    Ok(())
}

/// `a_i(λ, μ) = #{k : λ_k = 0, μ_k = i}`.
pub fn a_stat(lambda: &[u32], mu: &[u32], i: u32) -> Result<usize> {
    check_pair(lambda, mu)?;
    Ok(lambda
        .iter()
        .zip(mu)
        .filter(|(&l, &m)| l == 0 && m == i)
        .count())
}

/// `b_i(λ, μ) = #{k : λ_k = i > μ_k}`.
pub fn b_stat(lambda: &[u32], mu: &[u32], i: u32) -> Result<usize> {
    check_pair(lambda, mu)?;
    Ok(lambda
        .iter()
        .zip(mu)
        .filter(|(&l, &m)| l == i && l > m)
        .count())
}

/// `μ⁺`: the parts of `μ` in weakly decreasing order.
pub fn sort_desc(mu: &Composition) -> Partition {
    let mut v = mu.0.clone();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition(v)
}

/// Strict dominance `μ < λ` for partitions of equal size.
pub fn dominance_less(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::UnequalTotals {
            left: mu.size(),
            right: lambda.size(),
        });
    }
    if mu.length() == 0 && lambda.length() == 0 {
        return Ok(false);
    }
    let len = mu.len().max(lambda.len());
    let (mut sm, mut sl) = (0u32, 0u32);
    let mut equal = true;
    for k in 0..len {
        let a = mu.0.get(k).copied().unwrap_or(0);
        let b = lambda.0.get(k).copied().unwrap_or(0);
        equal &= a == b;
        sm += a;
        sl += b;
        if sm > sl {
            return Ok(false);
        }
    }
    Ok(!equal)
}

/// A distinct rearrangement of a partition with a reduced word realizing it.
///
/// Replaying `word` from its right end (rightmost letter first) as adjacent
/// swaps of the source partition yields `arrangement`, and every swap acts on
/// a strict descent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetElement {
    pub arrangement: Composition,
    /// 1-based generator indices; the leftmost letter acts last.
    pub word: Vec<usize>,
}

/// Reduced word carrying partition `source` to the rearrangement `target`
/// through strict-descent swaps, built selection-sort style.
pub fn reduced_word(source: &[u32], target: &[u32]) -> Result<Vec<usize>> {
    check_pair(source, target)?;
    let mut cur = source.to_vec();
    let mut applied = Vec::new();
    for p in 0..cur.len() {
        let v = target[p];
        let j = (p..cur.len())
            .find(|&j| cur[j] == v)
            .ok_or_else(|| Error::OutOfRange(format!("{:?} is not a rearrangement of {:?}", target, source)))?;
        for k in (p..j).rev() {
            if cur[k] <= cur[k + 1] {
                return Err(Error::NotAPartition(source.to_vec()));
            }
            cur.swap(k, k + 1);
            applied.push(k + 1);
        }
    }
    applied.reverse();
    Ok(applied)
}

/// All distinct rearrangements of `λ`, lexicographically descending (so the
/// identity comes first), each with its reduced word.
pub fn coset_reps(lambda: &Partition) -> Vec<CosetElement> {
    let mut out = Vec::new();
    let mut cur = lambda.0.clone();
    loop {
        let word = reduced_word(&lambda.0, &cur).expect("rearrangement of a partition");
        out.push(CosetElement {
            arrangement: Composition(cur.clone()),
            word,
        });
        if !prev_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// Steps to the lexicographically previous arrangement; false at the last one.
fn prev_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] <= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] >= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Replays a word on `source`: rightmost letter first.
pub fn apply_word(source: &[u32], word: &[usize]) -> Vec<u32> {
    let mut cur = source.to_vec();
    for &i in word.iter().rev() {
        cur.swap(i - 1, i);
    }
    cur
}

/// Inversions between a partition and one of its rearrangements: pairs
/// `k < l` with `arr_k < arr_l`.
pub fn inversion_count(arrangement: &[u32]) -> usize {
    let mut c = 0;
    for k in 0..arrangement.len() {
        for l in k + 1..arrangement.len() {
            if arrangement[k] < arrangement[l] {
                c += 1;
            }
        }
    }
    c
}

/// `z_λ = Π_i i^{m_i} m_i!`.
pub fn z_factor(lambda: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let parts = lambda.parts();
    let max = lambda.largest();
    for i in 1..=max {
        let m = multiplicity(parts, i);
        for k in 1..=m {
            z *= BigInt::from(i) * BigInt::from(k);
        }
    }
    z
}

/// Partitions of `d` with at most `max_len` parts, in reverse lexicographic
/// order (largest first), each listed without trailing zeros.
pub fn enumerate_partitions(d: u32, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    rec(d, d, max_len, &mut cur, &mut out);
    out
}

/// Every composition of length `n` with parts drawn from `values`.
pub fn compositions_from(values: &[u32], n: usize) -> Vec<Composition> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * values.len());
        for prefix in &out {
            for &v in values {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Composition).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(conjugate(&p(&[0, 0, 0])).len(), 0);
        assert_eq!(conjugate(&p(&[3, 2, 0])), p(&[2, 2, 1]));
    }

    #[test]
    fn truncate_examples() {
        let l = p(&[3, 3, 2, 1, 1, 1, 0]);
        assert_eq!(truncate(&l, 1).unwrap(), p(&[3, 3, 2, 0, 0, 0, 0]));
        assert_eq!(truncate(&l, 2).unwrap(), p(&[3, 3, 0, 0, 0, 0, 0]));
        assert!(truncate(&l, 3).unwrap().is_zero());
        assert_eq!(truncate(&l, 0).unwrap(), l);
        assert!(truncate(&l, 4).is_err());
    }

    const WL: [u32; 9] = [4, 4, 3, 3, 3, 2, 0, 0, 0];
    const WM: [u32; 9] = [0, 3, 0, 0, 3, 0, 4, 3, 4];

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&WM, 3), 3);
        assert_eq!(multiplicity(&WM, 0), 4);
        assert_eq!(multiplicity(&WM, 7), 0);
    }

    #[test]
    fn a_and_b_tables_for_worked_pair() {
        let a: Vec<usize> = (1..=4).map(|i| a_stat(&WL, &WM, i).unwrap()).collect();
        let b: Vec<usize> = (1..=4).map(|i| b_stat(&WL, &WM, i).unwrap()).collect();
        assert_eq!(a, vec![0, 0, 1, 2]);
        assert_eq!(b, vec![0, 1, 2, 2]);
        assert!(a_stat(&WL, &WM[..3], 1).is_err());
        assert!(b_stat(&WL[..2], &WM, 1).is_err());
    }

    #[test]
    fn sort_desc_examples() {
        assert_eq!(sort_desc(&Composition(vec![0, 3, 0, 4])), p(&[4, 3, 0, 0]));
        assert_eq!(sort_desc(&Composition(vec![3, 1])), p(&[3, 1]));
        assert_eq!(sort_desc(&Composition(vec![2, 2])), p(&[2, 2]));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_less(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(!dominance_less(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(!dominance_less(&p(&[3, 1]), &p(&[3, 1])).unwrap());
        assert!(dominance_less(&p(&[3, 1]), &p(&[4])).unwrap());
        assert!(matches!(
            dominance_less(&p(&[3]), &p(&[2, 2])),
            Err(Error::UnequalTotals { .. })
        ));
        // incomparable pair
        assert!(!dominance_less(&p(&[3, 1, 1, 1]), &p(&[2, 2, 2])).unwrap());
        assert!(!dominance_less(&p(&[2, 2, 2]), &p(&[3, 1, 1, 1])).unwrap());
    }

    #[test]
    fn coset_examples() {
        let c = coset_reps(&p(&[2, 2, 0, 0]));
        assert_eq!(c.len(), 6);
        assert_eq!(c[0].arrangement.0, vec![2, 2, 0, 0]);
        assert!(c[0].word.is_empty());

        let c = coset_reps(&p(&[3, 0, 0]));
        let got: Vec<(Vec<u32>, Vec<usize>)> = c
            .into_iter()
            .map(|e| (e.arrangement.0, e.word))
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![3, 0, 0], vec![]),
                (vec![0, 3, 0], vec![1]),
                (vec![0, 0, 3], vec![2, 1]),
            ]
        );
        assert_eq!(coset_reps(&p(&[2, 2, 2])).len(), 1);
    }

    #[test]
    fn z_factor_and_enumeration() {
        assert_eq!(z_factor(&p(&[1, 1])), BigInt::from(2));
        assert_eq!(z_factor(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(z_factor(&p(&[2, 2, 1])), BigInt::from(8));
        assert_eq!(enumerate_partitions(4, 4).len(), 5);
        assert_eq!(enumerate_partitions(5, 4).len(), 6);
        assert_eq!(enumerate_partitions(0, 3), vec![Partition(vec![])]);
        let parts = enumerate_partitions(6, 6);
        assert_eq!(parts.len(), 11);
        let mut dedup = parts.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 11);
    }

    #[test]
    fn parse_from_cli_strings() {
        assert_eq!("3,1,0".parse::<Partition>().unwrap(), p(&[3, 1, 0]));
        assert!("1,3".parse::<Partition>().is_err());
        assert_eq!("1,3".parse::<Composition>().unwrap(), Composition(vec![1, 3]));
        assert!("1,x".parse::<Composition>().is_err());
    }
}
