//! Langlands data: the unique presentation of an irreducible representation
//! as L(Δ_{ρ_1}[x_1,y_1], ..., Δ_{ρ_f}[x_f,y_f]; π_temp).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::label::CuspLabel;
use crate::params::EnhancedTempered;

/// The segment Δ_ρ[x, y] = {ρ|·|^x, ρ|·|^{x-1}, ..., ρ|·|^y}. x - y ∈ ℤ_{≥-1};
/// x = y - 1 encodes the trivial segment, which containers normalize away.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "LSegmentRepr")]
pub struct LSegment {
    pub rho: CuspLabel,
    pub x: HalfInt,
    pub y: HalfInt,
}

#[derive(Deserialize)]
struct LSegmentRepr {
    rho: CuspLabel,
    x: HalfInt,
    y: HalfInt,
}

impl TryFrom<LSegmentRepr> for LSegment {
    type Error = Error;
    fn try_from(r: LSegmentRepr) -> Result<Self> {
        LSegment::new(r.rho, r.x, r.y)
    }
}

impl LSegment {
    pub fn new(rho: CuspLabel, x: HalfInt, y: HalfInt) -> Result<Self> {
        let diff = x - y;
        if !diff.is_integer() || diff.as_int() < -1 {
            return Err(Error::invalid(format!(
                "[{x},{y}] is not a segment: x - y must be an integer ≥ -1"
            )));
        }
        Ok(LSegment { rho, x, y })
    }

    pub fn len(&self) -> i64 {
        (self.x - self.y).as_int() + 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The exponents x, x-1, ..., y.
    pub fn exponents(&self) -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut e = self.x;
        while e >= self.y {
            out.push(e);
            e -= HalfInt::ONE;
        }
        out
    }

    fn sort_key(&self) -> (HalfInt, HalfInt, CuspLabel) {
        (self.x + self.y, self.x, self.rho.clone())
    }
}

impl fmt::Display for LSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{}[{},{}]", self.rho, self.x, self.y)
    }
}

/// Langlands data. Segments are kept sorted with x_i + y_i non-decreasing
/// (ties broken by x then label) so equality is multiset equality; every
/// segment satisfies x + y < 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "LDataRepr")]
pub struct LData {
    segments: Vec<LSegment>,
    pub tempered: EnhancedTempered,
}

#[derive(Deserialize)]
struct LDataRepr {
    #[serde(default)]
    segments: Vec<LSegment>,
    tempered: EnhancedTempered,
}

impl TryFrom<LDataRepr> for LData {
    type Error = Error;
    fn try_from(r: LDataRepr) -> Result<Self> {
        LData::new(r.segments, r.tempered)
    }
}

impl LData {
    pub fn new(mut segments: Vec<LSegment>, tempered: EnhancedTempered) -> Result<Self> {
        segments.retain(|s| !s.is_empty());
        for s in &segments {
            if s.x + s.y >= HalfInt::ZERO {
                return Err(Error::invalid(format!(
                    "segment {s} has x + y ≥ 0 and cannot appear in Langlands data"
                )));
            }
        }
        segments.sort_by_key(|s| s.sort_key());
        Ok(LData { segments, tempered })
    }

    pub fn tempered_only(tempered: EnhancedTempered) -> Self {
        LData { segments: Vec::new(), tempered }
    }

    pub fn segments(&self) -> &[LSegment] {
        &self.segments
    }

    pub fn is_tempered(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn f(&self) -> usize {
        self.segments.len()
    }

    /// Insert further segments, re-sorting (Convention on `π + {Δ...}`).
    pub fn insert_segments(&self, extra: impl IntoIterator<Item = LSegment>) -> Result<LData> {
        let mut segs = self.segments.clone();
        segs.extend(extra);
        LData::new(segs, self.tempered.clone())
    }

    /// Remove one copy of each listed segment; errors when absent.
    pub fn remove_segments(&self, gone: &[LSegment]) -> Result<LData> {
        let mut segs = self.segments.clone();
        for g in gone {
            let pos = segs
                .iter()
                .position(|s| s == g)
                .ok_or_else(|| Error::invalid(format!("segment {g} not present")))?;
            segs.remove(pos);
        }
        LData::new(segs, self.tempered.clone())
    }

    pub fn segments_of(&self, rho: &CuspLabel) -> Vec<&LSegment> {
        self.segments.iter().filter(|s| &s.rho == rho).collect()
    }

    /// Number of GL supercuspidal factors contributed by the non-tempered part.
    pub fn segment_corank(&self) -> i64 {
        self.segments.iter().map(|s| s.len()).sum()
    }

    /// The labels carrying a segment, sorted.
    pub fn segment_labels(&self) -> Vec<CuspLabel> {
        let mut v: Vec<CuspLabel> = self.segments.iter().map(|s| s.rho.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for LData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L(")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        if !self.segments.is_empty() {
            write!(f, "; ")?;
        }
        let mut first = true;
        for (rho, a) in &self.tempered.phi {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let sign = match self.tempered.eps_of(rho, *a) {
                Some(1) => "+",
                Some(-1) => "-",
                _ => "",
            };
            write!(f, "({},{}){}", rho, HalfInt::half_of(a - 1), sign)?;
        }
        if first {
            write!(f, "1")?;
        }
        write!(f, ")")
    }
}

/// A multiset of exponents on one cuspidal line, with multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OmegaMultiset {
    counts: BTreeMap<HalfInt, usize>,
}

impl OmegaMultiset {
    pub fn add(&mut self, x: HalfInt, n: usize) {
        if n > 0 {
            *self.counts.entry(x).or_insert(0) += n;
        }
    }

    pub fn mult(&self, x: HalfInt) -> usize {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &OmegaMultiset) -> bool {
        other.counts.iter().all(|(x, n)| self.mult(*x) >= *n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, usize)> + '_ {
        self.counts.iter().map(|(x, n)| (*x, *n))
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Pointwise difference, saturating at zero.
    pub fn minus(&self, other: &OmegaMultiset) -> OmegaMultiset {
        let mut out = OmegaMultiset::default();
        for (x, n) in self.iter() {
            let m = other.mult(x);
            if n > m {
                out.add(x, n - m);
            }
        }
        out
    }

    /// Fold onto nonnegative exponents by x ↦ -x-1 on the negative side:
    /// the |Ω| normal form of a multiset symmetric about -1/2.
    pub fn fold_abs(&self) -> OmegaMultiset {
        let mut out = OmegaMultiset::default();
        for (x, n) in self.iter() {
            if x >= HalfInt::ZERO {
                out.add(x, n);
            } else {
                out.add(-x - 1i64, n);
            }
        }
        out
    }

    /// Whether the multiset is symmetric about -1/2: mult(x) = mult(-x-1).
    pub fn symmetric_about_minus_half(&self) -> bool {
        self.iter().all(|(x, n)| self.mult(-x - 1i64) == n)
    }
}

/// Ω(π)_ρ per Definition of the Ω-multiset of an L-data: first exponents,
/// negated last exponents, and tempered indices z = (a-1)/2 on the ρ-line.
pub fn omega_of_ldata(pi: &LData, rho: &CuspLabel) -> OmegaMultiset {
    let mut omega = OmegaMultiset::default();
    for s in pi.segments() {
        if &s.rho == rho {
            omega.add(s.x, 1);
            omega.add(-s.y, 1);
        }
    }
    for (r, a) in &pi.tempered.phi {
        if r == rho {
            omega.add(HalfInt::half_of(a - 1), 1);
        }
    }
    omega
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{GroupKind, GroupType};

    fn rho() -> CuspLabel {
        CuspLabel::orth("1")
    }

    fn trivial_tempered() -> EnhancedTempered {
        EnhancedTempered::new(
            GroupType::new(GroupKind::Sp, 0),
            vec![(CuspLabel::orth("one"), 1)],
            [((CuspLabel::orth("one"), 1), 1)].into_iter().collect(),
        )
        .unwrap()
    }

    #[test]
    fn segments_sort_by_center() {
        let a = LSegment::new(rho(), HalfInt::from_int(0), HalfInt::from_int(-1)).unwrap();
        let b = LSegment::new(rho(), HalfInt::from_int(-1), HalfInt::from_int(-2)).unwrap();
        let pi = LData::new(vec![a.clone(), b.clone()], trivial_tempered()).unwrap();
        assert_eq!(pi.segments()[0], b);
        assert_eq!(pi.segments()[1], a);
        assert_eq!(pi.segment_corank(), 4);
    }

    #[test]
    fn empty_segments_are_dropped() {
        let e = LSegment::new(rho(), HalfInt::from_int(-2), HalfInt::from_int(-1)).unwrap();
        assert!(e.is_empty());
        let pi = LData::new(vec![e], trivial_tempered()).unwrap();
        assert!(pi.is_tempered());
    }

    #[test]
    fn omega_folding() {
        let mut m = OmegaMultiset::default();
        m.add(HalfInt::from_int(-1), 1);
        m.add(HalfInt::from_int(1), 1);
        m.add(HalfInt::from_int(0), 2);
        let f = m.fold_abs();
        assert_eq!(f.mult(HalfInt::from_int(0)), 3);
        assert_eq!(f.mult(HalfInt::from_int(1)), 1);
        assert!(!m.symmetric_about_minus_half());
        let mut s = OmegaMultiset::default();
        s.add(HalfInt::from_int(-2), 1);
        s.add(HalfInt::from_int(1), 1);
        assert!(s.symmetric_about_minus_half());
    }
}
