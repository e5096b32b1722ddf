//! Permutations in one-line notation, words of distinct letters and the
//! elementary operations on them (flattening, subwords, inversions,
//! reverse and complement).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// A word of pairwise distinct integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &l in &letters {
            if !seen.insert(l) {
                return Err(Error::InvalidWord(format!("letter {l} repeated")));
            }
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A bijection on `{1, ..., n}` written in one-line notation.
///
/// Permutations are ordered first by length and then lexicographically,
/// which is the order every listing in this crate uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a rearrangement of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    /// Caller guarantees `values` is a rearrangement of `1..=n`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The decreasing permutation `n (n-1) ... 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    /// `positions()[v]` is the 1-based position of value `v`; index 0 is unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len() + 1];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.len() + 1;
        Permutation(self.0.iter().map(|&v| n - v).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Inversions as value pairs `(a, b)` with `a > b` and `a` left of `b`.
    pub fn inversions(&self) -> InversionSet {
        let mut pairs = BTreeSet::new();
        for (i, &a) in self.0.iter().enumerate() {
            for &b in &self.0[i + 1..] {
                if a > b {
                    pairs.insert((a, b));
                }
            }
        }
        InversionSet(pairs)
    }

    /// Subsequences of length `1..=m`, each with its 0-based index sequence.
    pub fn subwords_leq(&self, m: usize) -> Vec<(Word, Vec<usize>)> {
        let mut out = Vec::new();
        for k in 1..=m.min(self.len()) {
            for_each_subset(self.len(), k, |idx| {
                let w = idx.iter().map(|&i| self.0[i]).collect();
                out.push((Word(w), idx.to_vec()));
            });
        }
        out
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations { next: Some((1..=n).collect()) }
    }

    /// All permutations of length `0..=n`, shortest first.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Permutation> {
        (0..=n).flat_map(Permutation::all)
    }

    /// Restriction to a set of 0-based indices, flattened.
    pub fn pattern_at(&self, indices: &[usize]) -> Permutation {
        flatten_slice(&indices.iter().map(|&i| self.0[i]).collect::<Vec<_>>())
    }
}

/// The permutations of length `n` satisfying `keep`, in lexicographic
/// order. Work is split across threads by first letter.
pub fn filter_all(n: usize, keep: impl Fn(&Permutation) -> bool + Sync) -> Vec<Permutation> {
    if n < 2 {
        return Permutation::all(n).filter(|p| keep(p)).collect();
    }
    (1..=n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let keep = &keep;
            Permutation::all(n - 1).filter_map(move |rest| {
                let mut v = Vec::with_capacity(n);
                v.push(first);
                v.extend(rest.0.iter().map(|&x| if x >= first { x + 1 } else { x }));
                let p = Permutation(v);
                keep(&p).then_some(p)
            })
        })
        .collect()
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Digits for length at most 9, space separated integers otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2413`, `2 4 1 3`, `2,4,1,3`; the empty string and `e` denote
    /// the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(Permutation::empty());
        }
        let values: Vec<usize> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

/// Lexicographic successor iterator over `S_n`.
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation(cur))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Inversion set of a permutation, stored as value pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct InversionSet(BTreeSet<(usize, usize)>);

impl InversionSet {
    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.0
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.0.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// Replaces the i-th smallest letter of `w` with `i`.
pub fn flatten(w: &Word) -> Permutation {
    flatten_slice(&w.0)
}

pub(crate) fn flatten_slice(letters: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..letters.len()).collect();
    order.sort_by_key(|&i| letters[i]);
    let mut out = vec![0; letters.len()];
    for (rank, i) in order.into_iter().enumerate() {
        out[i] = rank + 1;
    }
    Permutation(out)
}

/// Calls `f` with every increasing `k`-subset of `0..n`, lexicographically.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    'outer: loop {
        f(&idx);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        return;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&Word::new(vec![2, 4, 3]).unwrap()), p("132"));
        assert_eq!(flatten(&Word::new(vec![2, 4]).unwrap()), p("12"));
        assert_eq!(flatten(&Word::new((1..=6).collect()).unwrap()), Permutation::identity(6));
        assert!(matches!(Word::new(vec![1, 3, 1]), Err(Error::InvalidWord(_))));
    }

    #[test]
    fn subwords_of_1324() {
        let words: BTreeSet<Vec<usize>> = p("1324")
            .subwords_leq(2)
            .into_iter()
            .map(|(w, _)| w.letters().to_vec())
            .collect();
        let expected: BTreeSet<Vec<usize>> = [
            vec![1, 3],
            vec![1, 2],
            vec![1, 4],
            vec![3, 2],
            vec![3, 4],
            vec![2, 4],
            vec![1],
            vec![3],
            vec![2],
            vec![4],
        ]
        .into_iter()
        .collect();
        assert_eq!(words, expected);
        assert_eq!(p("1").subwords_leq(3).len(), 1);
        assert_eq!(p("12345").subwords_leq(3).len(), 25);
    }

    #[test]
    fn inversion_examples() {
        assert!(p("123").inversions().is_empty());
        let inv: Vec<_> = p("231").inversions().pairs().iter().copied().collect();
        assert_eq!(inv, vec![(2, 1), (3, 1)]);
        assert_eq!(p("321").inversions().len(), 3);
    }

    #[test]
    fn symmetries() {
        assert_eq!(p("4312").reverse(), p("2134"));
        assert_eq!(p("4312").complement(), p("1243"));
        assert!(p("12345").is_identity());
        assert!(!p("21").is_identity());
        assert!(Permutation::empty().is_identity());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(5).count(), 120);
        assert_eq!(Permutation::all_up_to(4).count(), 1 + 1 + 2 + 6 + 24);
        let v: Vec<_> = Permutation::all(3).map(|q| q.to_string()).collect();
        assert_eq!(v, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("2 4 1 3"), p("2413"));
        let long = Permutation::identity(11);
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert_eq!(p(""), Permutation::empty());
    }

    #[test]
    fn ordering_is_length_first() {
        let mut v = vec![p("21"), p("1"), p("123"), p("12")];
        v.sort();
        assert_eq!(v, vec![p("1"), p("12"), p("21"), p("123")]);
    }
}
