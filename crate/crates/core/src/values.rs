//! Game values and their primitive arithmetic.
//!
//! White nodes carry a [`WhiteValue`]: a plain nonnegative integer for
//! ordinary positions, an adorned infinity for cyclic zones, a nymphet for
//! cyclic zones with a unique forcing value, a moon for lunar positions, or
//! the absorbing full moon. Gray nodes carry a [`GrayValue`]. Sets of
//! nonnegative integers appear both as adorns and as cover sets; since cover
//! sets are routinely cofinite, [`NatSet`] represents a set either by its
//! elements or by its finite complement.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Bitwise xor of two nonnegative integers, the addition of nim values.
pub const fn nim_sum(a: u32, b: u32) -> u32 {
    a ^ b
}

/// Errors from value arithmetic and parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValueError {
    /// The set contains every nonnegative integer, so no value is excluded.
    #[error("mex undefined: set contains every nonnegative integer")]
    NoMex,
    /// Elementwise xor of two sets is only defined when both are finite.
    #[error("set xor unsupported on cofinite operands")]
    CofiniteXor,
    /// A value literal did not match the grammar.
    #[error("invalid value literal {0:?}: {1}")]
    Parse(String, String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum SetKind {
    Finite,
    Cofinite,
}

/// A set of nonnegative integers, either finite or cofinite.
///
/// The basis is a strictly ascending list: the elements themselves for a
/// finite set, or the excluded complement for a cofinite one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NatSet {
    kind: SetKind,
    basis: Vec<u32>,
}

fn normalize(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v.dedup();
    v
}

impl NatSet {
    /// The empty set.
    pub fn empty() -> Self {
        NatSet { kind: SetKind::Finite, basis: Vec::new() }
    }

    /// The set of all nonnegative integers.
    pub fn all() -> Self {
        NatSet { kind: SetKind::Cofinite, basis: Vec::new() }
    }

    /// Finite set with the given elements.
    pub fn finite<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        NatSet { kind: SetKind::Finite, basis: normalize(elems.into_iter().collect()) }
    }

    /// Cofinite set: every nonnegative integer except the given ones.
    pub fn cofinite_excluding<I: IntoIterator<Item = u32>>(excluded: I) -> Self {
        NatSet { kind: SetKind::Cofinite, basis: normalize(excluded.into_iter().collect()) }
    }

    /// Finite singleton.
    pub fn singleton(k: u32) -> Self {
        NatSet { kind: SetKind::Finite, basis: vec![k] }
    }

    pub fn is_finite(&self) -> bool {
        self.kind == SetKind::Finite
    }

    pub fn is_cofinite(&self) -> bool {
        self.kind == SetKind::Cofinite
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.basis.is_empty()
    }

    /// True when the set is all of the nonnegative integers.
    ///
    /// Since the universe is the nonnegative integers, this is also the
    /// superset test against them.
    pub fn is_all(&self) -> bool {
        self.is_cofinite() && self.basis.is_empty()
    }

    /// The basis list: elements if finite, excluded complement if cofinite.
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn contains(&self, k: u32) -> bool {
        let hit = self.basis.binary_search(&k).is_ok();
        match self.kind {
            SetKind::Finite => hit,
            SetKind::Cofinite => !hit,
        }
    }

    pub fn insert(&mut self, k: u32) {
        match self.kind {
            SetKind::Finite => {
                if let Err(pos) = self.basis.binary_search(&k) {
                    self.basis.insert(pos, k);
                }
            }
            SetKind::Cofinite => {
                if let Ok(pos) = self.basis.binary_search(&k) {
                    self.basis.remove(pos);
                }
            }
        }
    }

    pub fn union(&self, other: &NatSet) -> NatSet {
        match (self.kind, other.kind) {
            (SetKind::Finite, SetKind::Finite) => {
                let mut v = self.basis.clone();
                v.extend_from_slice(&other.basis);
                NatSet::finite(v)
            }
            (SetKind::Cofinite, SetKind::Cofinite) => NatSet::cofinite_excluding(
                self.basis.iter().copied().filter(|k| other.basis.binary_search(k).is_ok()),
            ),
            (SetKind::Finite, SetKind::Cofinite) => other.union(self),
            (SetKind::Cofinite, SetKind::Finite) => NatSet::cofinite_excluding(
                self.basis.iter().copied().filter(|k| !other.contains(*k)),
            ),
        }
    }

    pub fn complement(&self) -> NatSet {
        let kind = match self.kind {
            SetKind::Finite => SetKind::Cofinite,
            SetKind::Cofinite => SetKind::Finite,
        };
        NatSet { kind, basis: self.basis.clone() }
    }

    /// Minimum excluded nonnegative integer.
    ///
    /// Fails with [`ValueError::NoMex`] when the set covers every
    /// nonnegative integer; callers branch to a lunar value first.
    pub fn mex(&self) -> Result<u32, ValueError> {
        match self.kind {
            SetKind::Finite => {
                let mut m = 0;
                for &k in &self.basis {
                    if k == m {
                        m += 1;
                    } else {
                        break;
                    }
                }
                Ok(m)
            }
            SetKind::Cofinite => self.basis.first().copied().ok_or(ValueError::NoMex),
        }
    }

    /// Elementwise xor with a single value: `{ m ^ s : s in self }`.
    ///
    /// Xor with a fixed value permutes the nonnegative integers, so this is
    /// well defined for cofinite sets too.
    pub fn xor_with(&self, m: u32) -> NatSet {
        NatSet {
            kind: self.kind,
            basis: normalize(self.basis.iter().map(|&s| s ^ m).collect()),
        }
    }

    /// Elementwise xor of two finite sets: `{ s ^ t : s in self, t in other }`.
    pub fn xor_sets(&self, other: &NatSet) -> Result<NatSet, ValueError> {
        if self.is_cofinite() || other.is_cofinite() {
            return Err(ValueError::CofiniteXor);
        }
        let mut out = Vec::with_capacity(self.basis.len() * other.basis.len());
        for &s in &self.basis {
            for &t in &other.basis {
                out.push(s ^ t);
            }
        }
        Ok(NatSet::finite(out))
    }
}

impl FromIterator<u32> for NatSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        NatSet::finite(iter)
    }
}

fn write_braced(f: &mut fmt::Formatter<'_>, basis: &[u32]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, k) in basis.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{k}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_cofinite() {
            write!(f, "~")?;
        }
        write_braced(f, &self.basis)
    }
}

/// Value of a white node.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum WhiteValue {
    /// Ordinary nim value.
    Finite(u32),
    /// Cyclic-zone value adorned with the reachable exit values.
    Inf(NatSet),
    /// Nymphet: cyclic-zone value with a unique forcing value.
    Nym(u32),
    /// Lunar value adorned with its forcing values.
    Moon(NatSet),
    /// Absorbing win: a terminal gray option is available.
    FullMoon,
}

impl WhiteValue {
    pub fn is_lunar(&self) -> bool {
        matches!(self, WhiteValue::Moon(_) | WhiteValue::FullMoon)
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, WhiteValue::Inf(_) | WhiteValue::Nym(_))
    }

    pub fn as_finite(&self) -> Option<u32> {
        match self {
            WhiteValue::Finite(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for WhiteValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteValue::Finite(n) => write!(f, "{n}"),
            WhiteValue::Inf(d) if d.is_empty() => write!(f, "inf"),
            WhiteValue::Inf(d) => {
                debug_assert!(d.is_finite());
                write!(f, "inf")?;
                write_braced(f, d.basis())
            }
            WhiteValue::Nym(v) => write!(f, "nym{v}"),
            WhiteValue::Moon(s) => {
                debug_assert!(s.is_finite());
                write!(f, "moon")?;
                write_braced(f, s.basis())
            }
            WhiteValue::FullMoon => write!(f, "full"),
        }
    }
}

fn parse_brace_list(body: &str, whole: &str) -> Result<Vec<u32>, ValueError> {
    let inner = body
        .strip_prefix('{')
        .and_then(|rest| rest.strip_suffix('}'))
        .ok_or_else(|| ValueError::Parse(whole.to_owned(), "expected {a,b,...}".into()))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|e| ValueError::Parse(whole.to_owned(), e.to_string()))
        })
        .collect()
}

impl FromStr for WhiteValue {
    type Err = ValueError;

    /// Grammar: `<n>` | `inf` | `inf{a,b,...}` | `moon{a,b,...}` | `nym<f>` | `full`.
    fn from_str(s: &str) -> Result<Self, ValueError> {
        let t = s.trim();
        if t == "full" {
            return Ok(WhiteValue::FullMoon);
        }
        if t == "inf" {
            return Ok(WhiteValue::Inf(NatSet::empty()));
        }
        if let Some(rest) = t.strip_prefix("inf") {
            return Ok(WhiteValue::Inf(NatSet::finite(parse_brace_list(rest, s)?)));
        }
        if let Some(rest) = t.strip_prefix("moon") {
            return Ok(WhiteValue::Moon(NatSet::finite(parse_brace_list(rest, s)?)));
        }
        if let Some(rest) = t.strip_prefix("nym") {
            let f = rest
                .parse::<u32>()
                .map_err(|e| ValueError::Parse(s.to_owned(), e.to_string()))?;
            return Ok(WhiteValue::Nym(f));
        }
        t.parse::<u32>()
            .map(WhiteValue::Finite)
            .map_err(|e| ValueError::Parse(s.to_owned(), e.to_string()))
    }
}

/// Value of a gray node.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GrayValue {
    /// Terminal gray node: the entailed player loses immediately.
    NewMoon,
    /// Entering this node forces a losing chain on whoever enters it.
    FullMoon,
    /// Cover set: entering protects the mover against exactly these values.
    Cover(NatSet),
    /// Left unassigned by the fixpoint: part of a cyclic zone.
    CyclicGray,
}

impl fmt::Display for GrayValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrayValue::NewMoon => write!(f, "new"),
            GrayValue::FullMoon => write!(f, "full"),
            GrayValue::Cover(s) => write!(f, "cover{s}"),
            GrayValue::CyclicGray => write!(f, "cyclic"),
        }
    }
}

/// Outcome classes under normal play.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Outcome {
    /// Previous player wins.
    P,
    /// Next player wins.
    N,
    /// Neither side can force a win; play is infinite.
    D,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::P => write!(f, "P"),
            Outcome::N => write!(f, "N"),
            Outcome::D => write!(f, "D"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(elems: &[u32]) -> NatSet {
        NatSet::finite(elems.iter().copied())
    }

    fn cof(excl: &[u32]) -> NatSet {
        NatSet::cofinite_excluding(excl.iter().copied())
    }

    #[test]
    fn mex_basics() {
        assert_eq!(NatSet::empty().mex(), Ok(0));
        assert_eq!(fin(&[0, 1, 3]).mex(), Ok(2));
        assert_eq!(fin(&[1, 2]).mex(), Ok(0));
        assert_eq!(NatSet::all().mex(), Err(ValueError::NoMex));
    }

    #[test]
    fn mex_of_two_union_cofinite_without_one() {
        // mex({2} union (Z0+ minus {1})) = 1
        let u = fin(&[2]).union(&cof(&[1]));
        assert_eq!(u, cof(&[1]));
        assert_eq!(u.mex(), Ok(1));
    }

    #[test]
    fn nim_sum_seven_fourteen() {
        assert_eq!(nim_sum(7, 14), 9);
    }

    #[test]
    fn nim_sum_algebra_exhaustive() {
        for a in 0..64u32 {
            for b in 0..64u32 {
                assert_eq!(nim_sum(a, b), nim_sum(b, a));
                assert_eq!(nim_sum(a, a), 0);
                assert_eq!(nim_sum(a, 0), a);
                for c in 0..64u32 {
                    assert_eq!(nim_sum(nim_sum(a, b), c), nim_sum(a, nim_sum(b, c)));
                }
            }
        }
    }

    #[test]
    fn mex_grows_when_inserted_exhaustive() {
        // For every finite subset of 0..10, adding the mex raises the mex.
        for mask in 0u32..(1 << 10) {
            let mut s = NatSet::finite((0..10).filter(|&k| mask & (1 << k) != 0));
            let m = s.mex().unwrap();
            s.insert(m);
            assert!(s.mex().unwrap() > m, "mask {mask:#b}");
        }
    }

    #[test]
    fn xor_set_examples() {
        assert_eq!(fin(&[2, 3]).xor_with(2), fin(&[0, 1]));
        assert_eq!(NatSet::empty().xor_with(7), NatSet::empty());
        assert_eq!(fin(&[0, 2]).xor_sets(&fin(&[0])), Ok(fin(&[0, 2])));
        assert_eq!(fin(&[1]).xor_sets(&cof(&[0])), Err(ValueError::CofiniteXor));
    }

    #[test]
    fn xor_with_on_cofinite_maps_basis() {
        let s = cof(&[1]);
        assert_eq!(s.xor_with(3), cof(&[2]));
        assert!(s.xor_with(3).contains(1));
        assert!(!s.xor_with(3).contains(2));
    }

    #[test]
    fn union_and_complement() {
        assert!(fin(&[1]).union(&cof(&[1])).is_all());
        assert_eq!(cof(&[0]).complement(), fin(&[0]));
        assert!(cof(&[1]).contains(5));
        assert!(!cof(&[1]).contains(1));
        assert_eq!(cof(&[0, 2]).union(&cof(&[2, 5])), cof(&[2]));
        assert_eq!(fin(&[1, 2]).union(&fin(&[2, 4])), fin(&[1, 2, 4]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(fin(&[0, 2]).to_string(), "{0,2}");
        assert_eq!(cof(&[1]).to_string(), "~{1}");
        assert_eq!(WhiteValue::Inf(NatSet::empty()).to_string(), "inf");
        assert_eq!(WhiteValue::Inf(fin(&[2, 3])).to_string(), "inf{2,3}");
        assert_eq!(WhiteValue::Moon(NatSet::empty()).to_string(), "moon{}");
        assert_eq!(WhiteValue::Nym(0).to_string(), "nym0");
        assert_eq!(WhiteValue::FullMoon.to_string(), "full");
        assert_eq!(GrayValue::Cover(cof(&[1])).to_string(), "cover~{1}");
        assert_eq!(GrayValue::NewMoon.to_string(), "new");
        assert_eq!(GrayValue::CyclicGray.to_string(), "cyclic");
    }

    #[test]
    fn parse_examples() {
        assert_eq!("inf{0,2}".parse::<WhiteValue>(), Ok(WhiteValue::Inf(fin(&[0, 2]))));
        assert_eq!("nym0".parse::<WhiteValue>(), Ok(WhiteValue::Nym(0)));
        assert_eq!("full".parse::<WhiteValue>(), Ok(WhiteValue::FullMoon));
        assert_eq!("7".parse::<WhiteValue>(), Ok(WhiteValue::Finite(7)));
        assert_eq!("moon{}".parse::<WhiteValue>(), Ok(WhiteValue::Moon(NatSet::empty())));
        assert!("moonshine".parse::<WhiteValue>().is_err());
        assert!("inf{1,".parse::<WhiteValue>().is_err());
    }

    #[test]
    fn parse_format_round_trip() {
        let samples = [
            WhiteValue::Finite(0),
            WhiteValue::Finite(13),
            WhiteValue::Inf(NatSet::empty()),
            WhiteValue::Inf(fin(&[0, 1, 5])),
            WhiteValue::Nym(3),
            WhiteValue::Moon(NatSet::empty()),
            WhiteValue::Moon(fin(&[0, 1])),
            WhiteValue::FullMoon,
        ];
        for v in samples {
            assert_eq!(v.to_string().parse::<WhiteValue>().as_ref(), Ok(&v));
        }
    }
}
