//! Text and JSON forms of patterns.
//!
//! Text grammar:
//!
//! ```text
//! pattern  := perm ["|{" squares "}"] clause*
//! clause   := "[" regions ":" count "]"          marking
//!           | "A[" regions ":" mesh "]"          region must avoid mesh
//!           | "C[" regions ":" mesh "]"          region must contain mesh
//! regions  := c1 ".." c2 "," r1 ".." r2 ("+" ...)*
//! squares  := "(" c "," r ")" ("," ...)*
//! ```
//!
//! For example `3241|{(1,4)}` or `231|{(2,3)}C[0..1,3..3:21|{(0,0),(0,1),(1,0)}]`.
//! The empty pattern is written `e`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Decoration, DecoratedPattern, Mark, MarkedMeshPattern, MeshPattern, Pattern, SquareSet};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Any pattern that can appear in a basis, tagged by its least general kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyPattern {
    Mesh(MeshPattern),
    Marked(MarkedMeshPattern),
    Decorated(DecoratedPattern),
}

impl AnyPattern {
    /// Picks the least general representation of a decorated pattern.
    pub fn from_decorated(dp: DecoratedPattern) -> Self {
        if dp.avoid_decorations().is_empty() && dp.contain_decorations().is_empty() {
            let base = MeshPattern::new(dp.pattern().clone(), dp.shading()).expect("validated grid");
            if dp.marks().is_empty() {
                AnyPattern::Mesh(base)
            } else {
                match MarkedMeshPattern::new(base, dp.marks().iter().copied()) {
                    Ok(m) => AnyPattern::Marked(m),
                    Err(_) => AnyPattern::Decorated(dp),
                }
            }
        } else {
            AnyPattern::Decorated(dp)
        }
    }

    pub fn to_decorated(&self) -> DecoratedPattern {
        match self {
            AnyPattern::Mesh(m) => m.clone().into(),
            AnyPattern::Marked(m) => m.clone().into(),
            AnyPattern::Decorated(d) => d.clone(),
        }
    }

    pub fn classical_pattern(&self) -> &Permutation {
        match self {
            AnyPattern::Mesh(m) => m.pattern(),
            AnyPattern::Marked(m) => m.base().pattern(),
            AnyPattern::Decorated(d) => d.pattern(),
        }
    }

    pub fn to_json(&self) -> PatternJson {
        PatternJson::from(&self.to_decorated())
    }
}

impl Pattern for AnyPattern {
    fn contained_in(&self, perm: &Permutation) -> bool {
        match self {
            AnyPattern::Mesh(m) => m.contained_in(perm),
            AnyPattern::Marked(m) => m.contained_in(perm),
            AnyPattern::Decorated(d) => d.contained_in(perm),
        }
    }
}

impl From<MeshPattern> for AnyPattern {
    fn from(m: MeshPattern) -> Self {
        AnyPattern::Mesh(m)
    }
}

impl From<MarkedMeshPattern> for AnyPattern {
    fn from(m: MarkedMeshPattern) -> Self {
        AnyPattern::Marked(m)
    }
}

impl From<DecoratedPattern> for AnyPattern {
    fn from(d: DecoratedPattern) -> Self {
        AnyPattern::Decorated(d)
    }
}

fn write_perm(f: &mut fmt::Formatter<'_>, p: &Permutation) -> fmt::Result {
    if p.is_empty() {
        write!(f, "e")
    } else {
        write!(f, "{p}")
    }
}

fn write_squares(f: &mut fmt::Formatter<'_>, s: SquareSet) -> fmt::Result {
    if s.is_empty() {
        return Ok(());
    }
    let parts: Vec<String> = s.squares().map(|q| format!("({},{})", q.col, q.row)).collect();
    write!(f, "|{{{}}}", parts.join(","))
}

fn region_text(r: SquareSet) -> String {
    let parts: Vec<String> = r.rects().into_iter().map(|(c1, c2, r1, r2)| format!("{c1}..{c2},{r1}..{r2}")).collect();
    parts.join("+")
}

fn write_marks<'a>(f: &mut fmt::Formatter<'_>, marks: impl Iterator<Item = &'a Mark>) -> fmt::Result {
    for m in marks {
        write!(f, "[{}:{}]", region_text(m.region), m.min_count)?;
    }
    Ok(())
}

impl fmt::Display for MeshPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_perm(f, self.pattern())?;
        write_squares(f, self.shading())
    }
}

impl fmt::Display for MarkedMeshPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base())?;
        write_marks(f, self.marks())
    }
}

impl fmt::Display for DecoratedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_perm(f, self.pattern())?;
        write_squares(f, self.shading())?;
        write_marks(f, self.marks().iter())?;
        for d in self.avoid_decorations() {
            write!(f, "A[{}:{}]", region_text(d.region), d.pattern)?;
        }
        for d in self.contain_decorations() {
            write!(f, "C[{}:{}]", region_text(d.region), d.pattern)?;
        }
        Ok(())
    }
}

impl fmt::Display for AnyPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPattern::Mesh(m) => m.fmt(f),
            AnyPattern::Marked(m) => m.fmt(f),
            AnyPattern::Decorated(d) => d.fmt(f),
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {token:?}")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        let n = self.rest()[..len].parse().map_err(|_| self.err("number too large"))?;
        self.pos += len;
        Ok(n)
    }

    fn perm(&mut self) -> Result<Permutation> {
        if self.eat("e") {
            return Ok(Permutation::empty());
        }
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected a permutation"));
        }
        let p = self.rest()[..len].parse()?;
        self.pos += len;
        Ok(p)
    }

    fn squares(&mut self) -> Result<SquareSet> {
        let mut s = SquareSet::EMPTY;
        if !self.eat("|") {
            return Ok(s);
        }
        self.expect("{")?;
        if self.eat("}") {
            return Ok(s);
        }
        loop {
            self.expect("(")?;
            let c = self.number()?;
            self.expect(",")?;
            let r = self.number()?;
            self.expect(")")?;
            if c > super::MAX_MESH_LEN || r > super::MAX_MESH_LEN {
                return Err(self.err("square outside any grid"));
            }
            s.insert(c, r);
            if self.eat("}") {
                return Ok(s);
            }
            self.expect(",")?;
        }
    }

    fn mesh(&mut self) -> Result<MeshPattern> {
        let p = self.perm()?;
        let s = self.squares()?;
        MeshPattern::new(p, s)
    }

    fn region(&mut self) -> Result<SquareSet> {
        let mut region = SquareSet::EMPTY;
        loop {
            let c1 = self.number()?;
            self.expect("..")?;
            let c2 = self.number()?;
            self.expect(",")?;
            let r1 = self.number()?;
            self.expect("..")?;
            let r2 = self.number()?;
            if c1 > c2 || r1 > r2 || c2 > super::MAX_MESH_LEN || r2 > super::MAX_MESH_LEN {
                return Err(self.err("malformed rectangle"));
            }
            region = region.union(SquareSet::rect(c1, c2, r1, r2));
            if !self.eat("+") {
                return Ok(region);
            }
        }
    }
}

impl FromStr for AnyPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut cur = Cursor { src: s, pos: 0 };
        let pattern = cur.perm()?;
        let shading = cur.squares()?;
        let (mut marks, mut avoid, mut contain) = (Vec::new(), Vec::new(), Vec::new());
        while !cur.rest().is_empty() {
            if cur.eat("A[") {
                let region = cur.region()?;
                cur.expect(":")?;
                avoid.push(Decoration::new(region, cur.mesh()?));
            } else if cur.eat("C[") {
                let region = cur.region()?;
                cur.expect(":")?;
                contain.push(Decoration::new(region, cur.mesh()?));
            } else if cur.eat("[") {
                let region = cur.region()?;
                cur.expect(":")?;
                marks.push(Mark::new(region, cur.number()?));
            } else {
                return Err(cur.err("unexpected input"));
            }
            cur.expect("]")?;
        }
        if avoid.is_empty() && contain.is_empty() {
            let base = MeshPattern::new(pattern, shading)?;
            if marks.is_empty() {
                Ok(AnyPattern::Mesh(base))
            } else {
                Ok(AnyPattern::Marked(MarkedMeshPattern::new(base, marks)?))
            }
        } else {
            Ok(AnyPattern::Decorated(DecoratedPattern::new(pattern, shading, marks, avoid, contain)?))
        }
    }
}

impl FromStr for MeshPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<AnyPattern>()? {
            AnyPattern::Mesh(m) => Ok(m),
            other => Err(Error::Parse(format!("{other} is not a mesh pattern"))),
        }
    }
}

impl FromStr for MarkedMeshPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<AnyPattern>()? {
            AnyPattern::Marked(m) => Ok(m),
            AnyPattern::Mesh(m) => MarkedMeshPattern::new(m, []),
            other => Err(Error::Parse(format!("{other} is not a marked mesh pattern"))),
        }
    }
}

impl FromStr for DecoratedPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(s.parse::<AnyPattern>()?.to_decorated())
    }
}

/// Machine-readable pattern; field order is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub pattern: Vec<usize>,
    pub shading: Vec<[usize; 2]>,
    pub marks: Vec<MarkJson>,
    pub avoid_dec: Vec<DecorationJson>,
    pub contain_dec: Vec<DecorationJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkJson {
    pub region: Vec<[usize; 2]>,
    pub min_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecorationJson {
    pub region: Vec<[usize; 2]>,
    pub pattern: Vec<usize>,
    pub shading: Vec<[usize; 2]>,
}

fn squares_json(s: SquareSet) -> Vec<[usize; 2]> {
    s.squares().map(|q| [q.col, q.row]).collect()
}

fn squares_from_json(v: &[[usize; 2]]) -> Result<SquareSet> {
    if v.iter().any(|&[c, r]| c > super::MAX_MESH_LEN || r > super::MAX_MESH_LEN) {
        return Err(Error::Parse(format!("square outside any grid in {v:?}")));
    }
    Ok(SquareSet::from_squares(v.iter().map(|&[c, r]| (c, r))))
}

impl From<&DecoratedPattern> for PatternJson {
    fn from(d: &DecoratedPattern) -> Self {
        let dec = |x: &Decoration| DecorationJson {
            region: squares_json(x.region),
            pattern: x.pattern.pattern().values().to_vec(),
            shading: squares_json(x.pattern.shading()),
        };
        PatternJson {
            pattern: d.pattern().values().to_vec(),
            shading: squares_json(d.shading()),
            marks: d
                .marks()
                .iter()
                .map(|m| MarkJson { region: squares_json(m.region), min_count: m.min_count })
                .collect(),
            avoid_dec: d.avoid_decorations().iter().map(dec).collect(),
            contain_dec: d.contain_decorations().iter().map(dec).collect(),
        }
    }
}

impl TryFrom<&PatternJson> for AnyPattern {
    type Error = Error;

    fn try_from(j: &PatternJson) -> Result<Self> {
        let dec = |x: &DecorationJson| -> Result<Decoration> {
            let pat = MeshPattern::new(Permutation::new(x.pattern.clone())?, squares_from_json(&x.shading)?)?;
            Ok(Decoration::new(squares_from_json(&x.region)?, pat))
        };
        let marks = j
            .marks
            .iter()
            .map(|m| Ok(Mark::new(squares_from_json(&m.region)?, m.min_count)))
            .collect::<Result<Vec<_>>>()?;
        let dp = DecoratedPattern::new(
            Permutation::new(j.pattern.clone())?,
            squares_from_json(&j.shading)?,
            marks,
            j.avoid_dec.iter().map(dec).collect::<Result<Vec<_>>>()?,
            j.contain_dec.iter().map(dec).collect::<Result<Vec<_>>>()?,
        )?;
        Ok(AnyPattern::from_decorated(dp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_text() {
        let m: MeshPattern = "3241|{(1,4)}".parse().unwrap();
        assert_eq!(m.shading(), SquareSet::single(1, 4));
        assert_eq!(m.to_string(), "3241|{(1,4)}");
        assert_eq!("2341".parse::<MeshPattern>().unwrap().to_string(), "2341");
        assert_eq!("2341|{}".parse::<MeshPattern>().unwrap().to_string(), "2341");
    }

    #[test]
    fn marked_text() {
        let s = "3142|{(2,2)}[0..1,0..0:1][3..4,4..4:1]";
        let p: AnyPattern = s.parse().unwrap();
        assert!(matches!(p, AnyPattern::Marked(_)));
        assert_eq!(p.to_string(), s);
    }

    #[test]
    fn decorated_text() {
        let s = "321|{(1,3)}[2..2,3..3:1]A[0..0,3..3:21|{(0,0),(0,1),(1,0)}]";
        let p: AnyPattern = s.parse().unwrap();
        assert!(matches!(p, AnyPattern::Decorated(_)));
        assert_eq!(p.to_string(), s);
        let j = p.to_json();
        assert_eq!(AnyPattern::try_from(&j).unwrap(), p);
    }

    #[test]
    fn union_regions() {
        let s = "21[0..0,0..0+2..2,2..2:1]";
        let p: AnyPattern = s.parse().unwrap();
        assert_eq!(p.to_string(), s);
    }

    #[test]
    fn json_field_order() {
        let p: AnyPattern = "3241|{(1,4)}".parse().unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"pattern":[3,2,4,1],"shading":[[1,4]],"marks":[],"avoid_dec":[],"contain_dec":[]}"#
        );
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "12|{(0,0)", "12[0..1,0..0]", "12X", "12|{(9,0)}", "1224"] {
            assert!(bad.parse::<AnyPattern>().is_err(), "{bad:?} should not parse");
        }
        assert_eq!("e".parse::<AnyPattern>().unwrap().classical_pattern().len(), 0);
    }
}
