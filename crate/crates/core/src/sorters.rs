//! Sorting devices: stacks of bounded or unbounded depth, a queue with
//! bypass, one pass of quicksort, and pipelines composed from them.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Stack depth: the number of elements a stack holds plus one pass-through
/// slot, so `Finite(1)` lets everything bypass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    fn check(self) -> Result<Self> {
        match self {
            Depth::Finite(0) => Err(Error::InvalidDepth(0)),
            d => Ok(d),
        }
    }

    /// One less, with `Infinite - 1 = Infinite`.
    pub fn pred(self) -> Depth {
        match self {
            Depth::Finite(d) => Depth::Finite(d.saturating_sub(1)),
            Depth::Infinite => Depth::Infinite,
        }
    }

    fn capacity(self) -> usize {
        match self {
            Depth::Finite(d) => d - 1,
            Depth::Infinite => usize::MAX,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Depth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinite" | "∞" => Ok(Depth::Infinite),
            t => {
                let d: usize = t.parse().map_err(|_| Error::Parse(format!("bad depth {t:?}")))?;
                Depth::Finite(d).check()
            }
        }
    }
}

/// One pass through an unbounded stack.
pub fn stack_sort(perm: &Permutation) -> Permutation {
    simulate_stack(perm.values(), usize::MAX)
}

/// One pass through a stack of depth `d`, by direct simulation: an element
/// meeting a full stack that it could be pushed onto goes straight to the
/// output.
pub fn stack_sort_depth(perm: &Permutation, d: Depth) -> Result<Permutation> {
    Ok(simulate_stack(perm.values(), d.check()?.capacity()))
}

fn simulate_stack(input: &[usize], capacity: usize) -> Permutation {
    let mut out = Vec::with_capacity(input.len());
    let mut stack: Vec<usize> = Vec::new();
    for &s in input {
        while stack.last().is_some_and(|&top| top < s) {
            out.push(stack.pop().expect("non-empty"));
        }
        if stack.len() < capacity {
            stack.push(s);
        } else {
            out.push(s);
        }
    }
    out.extend(stack.into_iter().rev());
    Permutation::from_vec_unchecked(out)
}

/// `S_d(α n β) = S_d(α) S_{d-1}(β) n` with `S_1` the identity. Agrees with
/// [`stack_sort_depth`]; recursion depth grows with the input.
pub fn stack_sort_depth_recursive(perm: &Permutation, d: Depth) -> Result<Permutation> {
    let mut out = Vec::with_capacity(perm.len());
    recurse_stack(perm.values(), d.check()?, &mut out);
    Ok(Permutation::from_vec_unchecked(out))
}

fn recurse_stack(w: &[usize], d: Depth, out: &mut Vec<usize>) {
    if d == Depth::Finite(1) {
        out.extend_from_slice(w);
        return;
    }
    let Some((at, &n)) = w.iter().enumerate().max_by_key(|&(_, &v)| v) else {
        return;
    };
    recurse_stack(&w[..at], d, out);
    recurse_stack(&w[at + 1..], d.pred(), out);
    out.push(n);
}

/// One pass through a queue: an element larger than the back of the queue
/// (or meeting an empty queue) joins it; otherwise smaller elements leave
/// from the front and the element goes straight to the output.
pub fn queue_sort(perm: &Permutation) -> Permutation {
    let mut out = Vec::with_capacity(perm.len());
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in perm.values() {
        if queue.back().is_none_or(|&b| b < s) {
            queue.push_back(s);
        } else {
            while queue.front().is_some_and(|&f| f < s) {
                out.push(queue.pop_front().expect("non-empty"));
            }
            out.push(s);
        }
    }
    out.extend(queue);
    Permutation::from_vec_unchecked(out)
}

/// One pass of quicksort. Around the rightmost strong fixed point (every
/// letter before it smaller, every letter after it larger) both sides are
/// handled recursively; a block with no such point has its letters smaller
/// than its first letter moved, stably, to its front, and is left there.
pub fn quicksort_pass(perm: &Permutation) -> Permutation {
    let mut w = perm.values().to_vec();
    let mut todo = vec![(0, w.len())];
    while let Some((a, b)) = todo.pop() {
        if a == b {
            continue;
        }
        match rightmost_strong_fixed_point(&w[a..b]) {
            Some(x) => {
                todo.push((a, a + x));
                todo.push((a + x + 1, b));
            }
            None => {
                let first = w[a];
                let (small, rest): (Vec<usize>, Vec<usize>) = w[a..b].iter().partition(|&&v| v < first);
                for (slot, v) in w[a..b].iter_mut().zip(small.into_iter().chain(rest)) {
                    *slot = v;
                }
            }
        }
    }
    Permutation::from_vec_unchecked(w)
}

fn rightmost_strong_fixed_point(w: &[usize]) -> Option<usize> {
    let mut suffix_min = vec![usize::MAX; w.len() + 1];
    for i in (0..w.len()).rev() {
        suffix_min[i] = suffix_min[i + 1].min(w[i]);
    }
    let mut best = None;
    let mut prefix_max = 0;
    for (i, &v) in w.iter().enumerate() {
        if prefix_max < v && v < suffix_min[i + 1] {
            best = Some(i);
        }
        prefix_max = prefix_max.max(v);
    }
    best
}

/// Whether `k` passes through an unbounded stack sort `perm`.
pub fn west_sortable(perm: &Permutation, k: usize) -> bool {
    let mut cur = perm.clone();
    for _ in 0..k {
        if cur.is_identity() {
            return true;
        }
        cur = stack_sort(&cur);
    }
    cur.is_identity()
}

/// Linear-time test for avoiding 4312: `S(r(c(Q(perm))))` is sorted exactly
/// when `perm` avoids 4312.
pub fn avoids_4312_linear(perm: &Permutation) -> bool {
    stack_sort(&queue_sort(perm).complement().reverse()).is_identity()
}

/// One stage of a [`SortingPipeline`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Stack,
    StackDepth(usize),
    Queue,
    Reverse,
    Complement,
    QuicksortPass,
}

impl Stage {
    pub fn apply(self, perm: &Permutation) -> Result<Permutation> {
        Ok(match self {
            Stage::Stack => stack_sort(perm),
            Stage::StackDepth(d) => stack_sort_depth(perm, Depth::Finite(d))?,
            Stage::Queue => queue_sort(perm),
            Stage::Reverse => perm.reverse(),
            Stage::Complement => perm.complement(),
            Stage::QuicksortPass => quicksort_pass(perm),
        })
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Stack => write!(f, "stack"),
            Stage::StackDepth(d) => write!(f, "stackd:{d}"),
            Stage::Queue => write!(f, "queue"),
            Stage::Reverse => write!(f, "rev"),
            Stage::Complement => write!(f, "comp"),
            Stage::QuicksortPass => write!(f, "qpass"),
        }
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "stack" => Stage::Stack,
            "queue" => Stage::Queue,
            "rev" => Stage::Reverse,
            "comp" => Stage::Complement,
            "qpass" => Stage::QuicksortPass,
            _ => match s.strip_prefix("stackd:") {
                Some(d) => {
                    let d: usize = d.parse().map_err(|_| Error::Parse(format!("bad stack depth in {s:?}")))?;
                    if d == 0 {
                        return Err(Error::InvalidDepth(0));
                    }
                    Stage::StackDepth(d)
                }
                None => return Err(Error::Parse(format!("unknown stage {s:?}"))),
            },
        })
    }
}

/// Stages applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SortingPipeline {
    pub stages: Vec<Stage>,
}

impl SortingPipeline {
    pub fn new(stages: Vec<Stage>) -> Self {
        SortingPipeline { stages }
    }
}

impl fmt::Display for SortingPipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.stages.iter().map(Stage::to_string).collect();
        write!(f, "{}", names.join(","))
    }
}

impl FromStr for SortingPipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(SortingPipeline::default());
        }
        Ok(SortingPipeline { stages: s.split(',').map(str::parse).collect::<Result<_>>()? })
    }
}

pub fn run_pipeline(perm: &Permutation, pipeline: &SortingPipeline) -> Result<Permutation> {
    pipeline.stages.iter().try_fold(perm.clone(), |cur, st| st.apply(&cur))
}

/// Like [`run_pipeline`], also returning the output of every stage.
pub fn run_pipeline_traced(perm: &Permutation, pipeline: &SortingPipeline) -> Result<Vec<(Stage, Permutation)>> {
    let mut cur = perm.clone();
    let mut trace = Vec::with_capacity(pipeline.stages.len());
    for &st in &pipeline.stages {
        cur = st.apply(&cur)?;
        trace.push((st, cur.clone()));
    }
    Ok(trace)
}
