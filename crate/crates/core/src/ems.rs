//! Extended multi-segments, the combinatorial parameters for members of
//! good-parity local Arthur packets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::label::{CuspLabel, GroupType};
use crate::params::{ArthurParameter, ArthurSummand};

/// One decorated row ([A,B]_ρ, l, η). `seg_a`/`seg_b` are the endpoints A ≥ B
/// of the segment; the attached SL2 dimensions are a = A+B+1 and b = A-B+1.
///
/// When b = 2l the sign η is quotiented away and is stored canonically as +1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ExtendedSegment {
    #[serde(rename = "A")]
    pub seg_a: HalfInt,
    #[serde(rename = "B")]
    pub seg_b: HalfInt,
    pub l: i64,
    pub eta: i8,
}

impl ExtendedSegment {
    pub fn new(seg_a: HalfInt, seg_b: HalfInt, l: i64, eta: i8) -> Self {
        let mut row = ExtendedSegment { seg_a, seg_b, l, eta };
        row.canonicalize_eta();
        row
    }

    /// Deligne-SL2 dimension a = A + B + 1.
    pub fn dim_a(&self) -> i64 {
        (self.seg_a + self.seg_b + 1i64).as_int()
    }

    /// Arthur-SL2 dimension b = A - B + 1 = #[A,B].
    pub fn dim_b(&self) -> i64 {
        (self.seg_a - self.seg_b + 1i64).as_int()
    }

    pub fn is_circle(&self) -> bool {
        self.seg_a == self.seg_b
    }

    /// b = 2l, the case where η is only defined up to sign.
    pub fn eta_quotiented(&self) -> bool {
        self.dim_b() == 2 * self.l
    }

    pub fn canonicalize_eta(&mut self) {
        if self.eta_quotiented() {
            self.eta = 1;
        }
    }

    /// The η representatives to consider in case formulas: both signs when
    /// b = 2l, otherwise just the stored value.
    pub fn eta_reps(&self) -> Vec<i8> {
        if self.eta_quotiented() {
            vec![1, -1]
        } else {
            vec![self.eta]
        }
    }

    pub fn validate(&self) -> Result<()> {
        let diff = self.seg_a - self.seg_b;
        if !diff.is_integer() || diff.as_int() < 0 {
            return Err(Error::invalid(format!(
                "[{},{}] is not a segment",
                self.seg_a, self.seg_b
            )));
        }
        if self.l < 0 || 2 * self.l > self.dim_b() {
            return Err(Error::invalid(format!(
                "l = {} out of range for a segment of length {}",
                self.l,
                self.dim_b()
            )));
        }
        if self.eta != 1 && self.eta != -1 {
            return Err(Error::invalid("η must be ±1"));
        }
        if self.eta_quotiented() && self.eta != 1 {
            return Err(Error::invalid("η must be stored as +1 when b = 2l"));
        }
        Ok(())
    }

    /// Sign-condition factor (-1)^{⌊b/2⌋ + l} η^b of this row.
    pub fn sign_factor(&self) -> i64 {
        let b = self.dim_b();
        let pow = (b / 2 + self.l).rem_euclid(2);
        let eta_pow = if b % 2 == 0 { 1 } else { self.eta as i64 };
        if pow == 0 {
            eta_pow
        } else {
            -eta_pow
        }
    }
}

impl fmt::Display for ExtendedSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "([{},{}];{},{})",
            self.seg_a,
            self.seg_b,
            self.l,
            if self.eta >= 0 { "+" } else { "-" }
        )
    }
}

/// Do segments i, j force i before j under the admissibility condition (P)?
pub fn forces_before(i: &ExtendedSegment, j: &ExtendedSegment) -> bool {
    i.seg_a < j.seg_a && i.seg_b < j.seg_b
}

/// An ordered ρ-block of extended segments; the vector order is the
/// admissible total order, increasing.
pub type Block = Vec<ExtendedSegment>;

/// Whether the listed order satisfies (P): A_i < A_j, B_i < B_j ⟹ i < j.
pub fn block_satisfies_p(rows: &Block) -> bool {
    for i in 0..rows.len() {
        for j in 0..i {
            if forces_before(&rows[i], &rows[j]) {
                return false;
            }
        }
    }
    true
}

/// Whether the listed order satisfies (P'): B_i < B_j ⟹ i < j, i.e. the
/// B endpoints are non-decreasing.
pub fn block_satisfies_p_prime(rows: &Block) -> bool {
    rows.windows(2).all(|w| w[0].seg_b <= w[1].seg_b)
}

/// An extended multi-segment: per-label ordered blocks over a group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "EmsRepr", into = "EmsRepr")]
pub struct ExtendedMultiSegment {
    pub group: GroupType,
    /// Blocks sorted by label name; empty blocks are dropped.
    blocks: Vec<(CuspLabel, Block)>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct EmsRepr {
    pub group: GroupType,
    pub blocks: Vec<EmsBlockRepr>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct EmsBlockRepr {
    pub rho: CuspLabel,
    pub rows: Block,
}

impl From<ExtendedMultiSegment> for EmsRepr {
    fn from(e: ExtendedMultiSegment) -> Self {
        EmsRepr {
            group: e.group,
            blocks: e
                .blocks
                .into_iter()
                .map(|(rho, rows)| EmsBlockRepr { rho, rows })
                .collect(),
        }
    }
}

impl TryFrom<EmsRepr> for ExtendedMultiSegment {
    type Error = Error;
    fn try_from(r: EmsRepr) -> Result<Self> {
        ExtendedMultiSegment::new(
            r.group,
            r.blocks.into_iter().map(|b| (b.rho, b.rows)).collect(),
        )
    }
}

impl ExtendedMultiSegment {
    /// Full validation: segment shapes, A+B ≥ 0, order (P), the global sign
    /// condition, good parity and the dimension audit.
    pub fn new(group: GroupType, blocks: Vec<(CuspLabel, Block)>) -> Result<Self> {
        let ems = Self::assemble(group, blocks);
        ems.validate()?;
        Ok(ems)
    }

    /// Assembles without validating; used by the operator layer for
    /// mid-computation objects that may break A+B ≥ 0.
    pub(crate) fn assemble(group: GroupType, mut blocks: Vec<(CuspLabel, Block)>) -> Self {
        blocks.retain(|(_, rows)| !rows.is_empty());
        blocks.sort_by(|x, y| x.0.cmp(&y.0));
        for (_, rows) in &mut blocks {
            for row in rows.iter_mut() {
                row.canonicalize_eta();
            }
        }
        ExtendedMultiSegment { group, blocks }
    }

    pub fn validate(&self) -> Result<()> {
        for (rho, rows) in &self.blocks {
            if !rho.is_self_dual() {
                return Err(Error::invalid(format!(
                    "extended multi-segments need self-dual labels, got {rho}"
                )));
            }
            for row in rows {
                row.validate()?;
                if row.seg_a + row.seg_b < HalfInt::ZERO {
                    return Err(Error::invalid(format!(
                        "row {row} of {rho} has A + B < 0"
                    )));
                }
                if !rho.good_parity_ab(self.group.kind, row.dim_a(), row.dim_b()) {
                    return Err(Error::invalid(format!(
                        "row {row} of {rho} is not of good parity for {}",
                        self.group
                    )));
                }
            }
            if !block_satisfies_p(rows) {
                return Err(Error::invalid(format!("the {rho}-block order violates (P)")));
            }
        }
        if self.sign_product() != 1 {
            return Err(Error::invalid("the sign condition fails"));
        }
        let total: i64 = self.total_dim();
        if total != self.group.dual_dim() {
            return Err(Error::invalid(format!(
                "total dimension {total} does not match {} (needs {})",
                self.group,
                self.group.dual_dim()
            )));
        }
        Ok(())
    }

    pub fn blocks(&self) -> &[(CuspLabel, Block)] {
        &self.blocks
    }

    pub fn block_of(&self, rho: &CuspLabel) -> Option<&Block> {
        self.blocks.iter().find(|(r, _)| r == rho).map(|(_, b)| b)
    }

    pub fn labels(&self) -> impl Iterator<Item = &CuspLabel> {
        self.blocks.iter().map(|(r, _)| r)
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn row_count(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.len()).sum()
    }

    pub fn total_dim(&self) -> i64 {
        self.blocks
            .iter()
            .map(|(rho, rows)| {
                rows.iter().map(|r| rho.dim as i64 * r.dim_a() * r.dim_b()).sum::<i64>()
            })
            .sum()
    }

    pub fn sign_product(&self) -> i64 {
        self.blocks
            .iter()
            .flat_map(|(_, rows)| rows.iter())
            .map(|r| r.sign_factor())
            .product()
    }

    /// Recompute the group rank from the current total dimension; used after
    /// rank-changing operators such as add^{±1}.
    pub fn refit_group(&self) -> Result<Self> {
        let group = GroupType::of_dual_dim(self.group.kind, self.total_dim())?;
        let mut out = self.clone();
        out.group = group;
        Ok(out)
    }

    /// Replace one block, dropping it when empty. No validation.
    pub(crate) fn with_block(&self, rho: &CuspLabel, rows: Block) -> Self {
        let mut blocks: Vec<(CuspLabel, Block)> = self
            .blocks
            .iter()
            .filter(|(r, _)| r != rho)
            .cloned()
            .collect();
        if !rows.is_empty() {
            blocks.push((rho.clone(), rows));
        }
        Self::assemble(self.group, blocks)
    }

    /// The attached local Arthur parameter ψ_E.
    pub fn psi(&self) -> Result<ArthurParameter> {
        let mut summands = Vec::new();
        for (rho, rows) in &self.blocks {
            for row in rows {
                summands.push(ArthurSummand::new(rho.clone(), row.dim_a(), row.dim_b()));
            }
        }
        ArthurParameter::new(self.group, summands)
    }

    /// Every per-label order satisfies (P').
    pub fn is_p_prime(&self) -> bool {
        self.blocks.iter().all(|(_, rows)| block_satisfies_p_prime(rows))
    }

    /// Whether some row of some block has B < 0.
    pub fn has_negative_b(&self) -> bool {
        self.blocks
            .iter()
            .any(|(_, rows)| rows.iter().any(|r| r.seg_b < HalfInt::ZERO))
    }
}

impl fmt::Display for ExtendedMultiSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (rho, rows) in &self.blocks {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{{")?;
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{row}")?;
            }
            write!(f, "}}@{rho}")?;
        }
        if first {
            write!(f, "{{}}")?;
        }
        Ok(())
    }
}

/// Convenience constructor for rows.
pub fn row(seg_a: impl Into<HalfInt>, seg_b: impl Into<HalfInt>, l: i64, eta: i8) -> ExtendedSegment {
    ExtendedSegment::new(seg_a.into(), seg_b.into(), l, eta)
}

/// Row with half-integer endpoints given as doubled values.
pub fn row_h(a2: i64, b2: i64, l: i64, eta: i8) -> ExtendedSegment {
    ExtendedSegment::new(HalfInt::new(a2), HalfInt::new(b2), l, eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::GroupKind;

    fn rho() -> CuspLabel {
        CuspLabel::orth("1")
    }

    #[test]
    fn example_5_3_shape() {
        // {([3,-3],3,+),([1,-1],1,-),([0,0],0,-)} over Sp(10)
        let ems = ExtendedMultiSegment::new(
            GroupType::new(GroupKind::Sp, 5),
            vec![(rho(), vec![row(3, -3, 3, 1), row(1, -1, 1, -1), row(0, 0, 0, -1)])],
        )
        .unwrap();
        assert_eq!(ems.total_dim(), 11);
        assert_eq!(ems.sign_product(), 1);
        let psi = ems.psi().unwrap();
        assert_eq!(psi.multiplicity(&rho(), 1, 7), 1);
        assert_eq!(psi.multiplicity(&rho(), 1, 3), 1);
        assert_eq!(psi.multiplicity(&rho(), 1, 1), 1);
        assert!(ems.is_p_prime());
    }

    #[test]
    fn sign_condition_detects_violations() {
        // single row ([1,0],0,+): factor (-1)^{1+0} (+1)^2 = -1
        let bad = ExtendedMultiSegment::new(
            GroupType::new(GroupKind::Sp, 1),
            vec![(rho(), vec![row(1, 0, 0, 1), row(0, 0, 0, 1)])],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn quotient_sign_is_canonicalized() {
        let r = row(1, 0, 1, -1);
        assert_eq!(r.eta, 1);
        assert!(r.eta_quotiented());
        assert_eq!(r.eta_reps(), vec![1, -1]);
    }

    #[test]
    fn order_p_detection() {
        let good = vec![row(3, -3, 3, 1), row(1, -1, 1, -1)];
        assert!(block_satisfies_p(&good));
        let bad = vec![row(2, 1, 0, 1), row(1, 0, 0, 1)];
        assert!(!block_satisfies_p(&bad));
    }
}
