//! Occurrence search for classical patterns and the per-occurrence geometry
//! that mesh, marked and decorated containment are evaluated against.

use std::ops::ControlFlow;

use super::SquareSet;
use crate::perm::Permutation;

/// Order constraints for placing the `t`-th pattern letter, relative to the
/// letters already placed.
struct Plan {
    /// Index `s < t` holding the largest pattern value below `pattern[t]`.
    below: Vec<Option<usize>>,
    /// Index `s < t` holding the smallest pattern value above `pattern[t]`.
    above: Vec<Option<usize>>,
}

impl Plan {
    fn new(pattern: &[usize]) -> Self {
        let k = pattern.len();
        let mut below = vec![None; k];
        let mut above = vec![None; k];
        for t in 0..k {
            for s in 0..t {
                if pattern[s] < pattern[t] && below[t].is_none_or(|b: usize| pattern[b] < pattern[s]) {
                    below[t] = Some(s);
                }
                if pattern[s] > pattern[t] && above[t].is_none_or(|a: usize| pattern[a] > pattern[s]) {
                    above[t] = Some(s);
                }
            }
        }
        Plan { below, above }
    }
}

/// Visits every occurrence of `pattern` in `perm` as increasing 0-based
/// index sequences, in lexicographic order, until `f` breaks.
pub(crate) fn for_each_occurrence<B>(
    perm: &Permutation,
    pattern: &Permutation,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    let (text, pat) = (perm.values(), pattern.values());
    let (n, k) = (text.len(), pat.len());
    if k > n {
        return None;
    }
    if k == 0 {
        return f(&[]).break_value();
    }
    let plan = Plan::new(pat);
    let mut chosen = vec![0usize; k];
    search(text, &plan, 0, 0, &mut chosen, &mut f)
}

fn search<B>(
    text: &[usize],
    plan: &Plan,
    t: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    let k = chosen.len();
    let lo = plan.below[t].map_or(0, |s| text[chosen[s]]);
    let hi = plan.above[t].map_or(usize::MAX, |s| text[chosen[s]]);
    for x in from..=text.len() - (k - t) {
        let v = text[x];
        if v <= lo || v >= hi {
            continue;
        }
        chosen[t] = x;
        if t + 1 == k {
            if let ControlFlow::Break(b) = f(chosen) {
                return Some(b);
            }
        } else if let Some(b) = search(text, plan, t + 1, x + 1, chosen, f) {
            return Some(b);
        }
    }
    None
}

/// All occurrences of the classical pattern `pattern` in `perm`, as 0-based
/// index sequences in lexicographic order.
pub fn occurrences_classical(perm: &Permutation, pattern: &Permutation) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_occurrence::<()>(perm, pattern, |occ| {
        out.push(occ.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Early-exit classical containment; works for patterns of any length.
pub fn contains_classical(perm: &Permutation, pattern: &Permutation) -> bool {
    for_each_occurrence(perm, pattern, |_| ControlFlow::Break(())).is_some()
}

/// Where one point of the text sits relative to an occurrence.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Cell {
    /// A point outside the occurrence, lying in this grid square.
    Free { col: usize, row: usize },
    /// The occurrence point at 1-based pattern position `pos` with value `val`.
    Occurrence { pos: usize, val: usize },
}

/// The grid cell of every text point with respect to one occurrence.
pub(crate) struct Geometry {
    pub cells: Vec<Cell>,
    /// Squares holding at least one free point.
    pub occupied: SquareSet,
}

impl Geometry {
    pub fn new(perm: &Permutation, occ: &[usize]) -> Self {
        let text = perm.values();
        let n = text.len();
        // below[v] = number of occurrence values smaller than v
        let mut in_occ = vec![false; n + 2];
        for &i in occ {
            in_occ[text[i]] = true;
        }
        let mut below = vec![0usize; n + 2];
        for v in 1..=n + 1 {
            below[v] = below[v - 1] + usize::from(in_occ[v - 1]);
        }
        let mut cells = Vec::with_capacity(n);
        let mut occupied = SquareSet::EMPTY;
        let mut col = 0;
        for (i, &v) in text.iter().enumerate() {
            if col < occ.len() && occ[col] == i {
                col += 1;
                cells.push(Cell::Occurrence { pos: col, val: below[v] + 1 });
            } else {
                let row = below[v];
                occupied.insert(col, row);
                cells.push(Cell::Free { col, row });
            }
        }
        Geometry { cells, occupied }
    }

    /// Indices of text points lying in `region`: free points in one of its
    /// squares, and occurrence points in its interior.
    pub fn points_in(&self, region: SquareSet) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().enumerate().filter_map(move |(i, c)| {
            let inside = match *c {
                Cell::Free { col, row } => region.contains(col, row),
                Cell::Occurrence { pos, val } => region.surrounds_point(pos, val),
            };
            inside.then_some(i)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn increasing_pairs_of_1324() {
        let occ = occurrences_classical(&p("1324"), &p("12"));
        assert_eq!(occ.len(), 5);
        for pair in [[0, 1], [0, 2], [0, 3], [2, 3], [1, 3]] {
            assert!(occ.contains(&pair.to_vec()));
        }
    }

    #[test]
    fn pairs_in_2341() {
        let occ = occurrences_classical(&p("2341"), &p("12"));
        let words: Vec<Vec<usize>> =
            occ.iter().map(|o| o.iter().map(|&i| p("2341").values()[i]).collect()).collect();
        assert_eq!(words, vec![vec![2, 3], vec![2, 4], vec![3, 4]]);
    }

    #[test]
    fn no_descent_in_identity() {
        assert!(occurrences_classical(&p("123"), &p("321")).is_empty());
        assert!(!contains_classical(&p("123"), &p("321")));
    }

    #[test]
    fn empty_pattern_occurs_once() {
        assert_eq!(occurrences_classical(&p("21"), &Permutation::empty()), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn matches_flattening_brute_force() {
        for n in 0..=6 {
            for text in Permutation::all(n) {
                for k in 0..=3 {
                    for pat in Permutation::all(k) {
                        let mut brute = Vec::new();
                        crate::perm::for_each_subset(n, k, |idx| {
                            if text.pattern_at(idx) == pat {
                                brute.push(idx.to_vec());
                            }
                        });
                        assert_eq!(occurrences_classical(&text, &pat), brute, "{text} {pat}");
                    }
                }
            }
        }
    }

    #[test]
    fn geometry_cells() {
        // 35241 with the occurrence 3,2,4,1 of 3241: the 5 sits in square (1,4)
        let g = Geometry::new(&p("35241"), &[0, 2, 3, 4]);
        assert_eq!(g.occupied, SquareSet::single(1, 4));
        assert!(matches!(g.cells[0], Cell::Occurrence { pos: 1, val: 3 }));
    }
}
