//! Named permutation classes and RSK tableau shapes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::patterns::{AnyPattern, Pattern};
use crate::perm::{filter_all, Permutation};
use crate::sorters::{quicksort_pass, west_sortable};

/// Largest length `named_class` will generate.
pub const CLASS_LIMIT: usize = 9;

/// Row lengths of a Young diagram, weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableauShape(Vec<usize>);

impl TableauShape {
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("shape rows {rows:?} are not weakly decreasing")));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(TableauShape(rows))
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// At most one row longer than one box.
    pub fn is_hook(&self) -> bool {
        self.0.get(1).map_or(true, |&r| r <= 1)
    }
}

impl fmt::Display for TableauShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", rows.join(","))
    }
}

impl FromStr for TableauShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let rows = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad shape row {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        TableauShape::new(rows)
    }
}

/// Shape of the tableaux that Schensted row insertion assigns to `perm`.
pub fn rsk_shape(perm: &Permutation) -> TableauShape {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &v in perm.values() {
        let mut x = v;
        let mut placed = false;
        for row in rows.iter_mut() {
            let at = row.partition_point(|&y| y < x);
            if at == row.len() {
                row.push(x);
                placed = true;
                break;
            }
            x = std::mem::replace(&mut row[at], x);
        }
        if !placed {
            rows.push(vec![x]);
        }
    }
    TableauShape(rows.iter().map(Vec::len).collect())
}

/// Whether `inner` fits inside `outer` row by row.
pub fn shape_contains(outer: &TableauShape, inner: &TableauShape) -> bool {
    inner.0.len() <= outer.0.len() && inner.0.iter().zip(&outer.0).all(|(a, b)| a <= b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedClass {
    StackSortable,
    West2,
    West3,
    SimsunBasisClass,
    Smooth,
    ForestLikeBasisClass,
    HookRsk,
    Shape32AvoidingRsk,
    Quicksort1Pass,
}

impl NamedClass {
    pub const ALL: [NamedClass; 9] = [
        NamedClass::StackSortable,
        NamedClass::West2,
        NamedClass::West3,
        NamedClass::SimsunBasisClass,
        NamedClass::Smooth,
        NamedClass::ForestLikeBasisClass,
        NamedClass::HookRsk,
        NamedClass::Shape32AvoidingRsk,
        NamedClass::Quicksort1Pass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedClass::StackSortable => "stack_sortable",
            NamedClass::West2 => "west_2",
            NamedClass::West3 => "west_3",
            NamedClass::SimsunBasisClass => "simsun_basis_class",
            NamedClass::Smooth => "smooth",
            NamedClass::ForestLikeBasisClass => "forest_like_basis_class",
            NamedClass::HookRsk => "hook_rsk",
            NamedClass::Shape32AvoidingRsk => "shape32_avoiding_rsk",
            NamedClass::Quicksort1Pass => "quicksort_1pass",
        }
    }

    /// How membership is decided.
    pub fn definition(self) -> &'static str {
        match self {
            NamedClass::StackSortable => "sorted by one pass through a stack",
            NamedClass::West2 => "sorted by two passes through a stack",
            NamedClass::West3 => "sorted by three passes through a stack",
            NamedClass::SimsunBasisClass => "Av(321|{(1,0),(1,1),(2,2)})",
            NamedClass::Smooth => "Av(1324, 2143)",
            NamedClass::ForestLikeBasisClass => "Av(1324, 2143|{(2,2)})",
            NamedClass::HookRsk => "RSK shape is a hook",
            NamedClass::Shape32AvoidingRsk => "RSK shape does not contain (3,2)",
            NamedClass::Quicksort1Pass => "sorted by one quicksort pass",
        }
    }

    /// The membership test, with any basis parsed once up front.
    pub fn membership(self) -> Box<dyn Fn(&Permutation) -> bool + Send + Sync> {
        let avoiding = |basis: &[&str]| -> Box<dyn Fn(&Permutation) -> bool + Send + Sync> {
            let basis: Vec<AnyPattern> = basis.iter().map(|s| s.parse().expect("built-in basis parses")).collect();
            Box::new(move |p| basis.iter().all(|b| b.avoided_by(p)))
        };
        match self {
            NamedClass::StackSortable => Box::new(|p| west_sortable(p, 1)),
            NamedClass::West2 => Box::new(|p| west_sortable(p, 2)),
            NamedClass::West3 => Box::new(|p| west_sortable(p, 3)),
            NamedClass::SimsunBasisClass => avoiding(&["321|{(1,0),(1,1),(2,2)}"]),
            NamedClass::Smooth => avoiding(&["1324", "2143"]),
            NamedClass::ForestLikeBasisClass => avoiding(&["1324", "2143|{(2,2)}"]),
            NamedClass::HookRsk => Box::new(|p| rsk_shape(p).is_hook()),
            NamedClass::Shape32AvoidingRsk => {
                let lambda = TableauShape(vec![3, 2]);
                Box::new(move |p| !shape_contains(&rsk_shape(p), &lambda))
            }
            NamedClass::Quicksort1Pass => Box::new(|p| quicksort_pass(p).is_identity()),
        }
    }

    pub fn contains(self, perm: &Permutation) -> bool {
        (self.membership())(perm)
    }
}

impl fmt::Display for NamedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        NamedClass::ALL.into_iter().find(|c| c.name() == key).ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

/// Members of `class` of length exactly `n`, lexicographically.
pub fn class_members(class: NamedClass, n: usize) -> Result<Vec<Permutation>> {
    if n > CLASS_LIMIT {
        return Err(Error::ResourceLimit { what: "named class length", n, limit: CLASS_LIMIT });
    }
    let member = class.membership();
    Ok(filter_all(n, |p| member(p)))
}

/// Members of the class called `name` of every length `1..=n`, shortest first.
pub fn named_class(name: &str, n: usize) -> Result<Vec<Permutation>> {
    let class: NamedClass = name.parse()?;
    if n > CLASS_LIMIT {
        return Err(Error::ResourceLimit { what: "named class length", n, limit: CLASS_LIMIT });
    }
    let member = class.membership();
    let mut out = Vec::new();
    for len in 1..=n {
        out.extend(filter_all(len, |p| member(p)));
    }
    Ok(out)
}
