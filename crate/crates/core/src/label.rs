//! Groups and supercuspidal labels.
//!
//! A `CuspLabel` is an opaque symbol standing for an irreducible unitary
//! supercuspidal representation of some GL_d(F); none of the algorithms ever
//! realize it, they only need its dimension and duality type.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfInt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum GroupKind {
    /// Sp(2n), dual group SO(2n+1, C).
    Sp,
    /// split SO(2n+1), dual group Sp(2n, C).
    OddSO,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct GroupType {
    pub kind: GroupKind,
    pub rank: u32,
}

impl GroupType {
    pub fn new(kind: GroupKind, rank: u32) -> Self {
        GroupType { kind, rank }
    }

    /// Dimension N of the dual-group standard representation.
    pub fn dual_dim(self) -> i64 {
        match self.kind {
            GroupKind::Sp => 2 * self.rank as i64 + 1,
            GroupKind::OddSO => 2 * self.rank as i64,
        }
    }

    /// Group of the same kind whose dual dimension is `dim`, if any.
    pub fn of_dual_dim(kind: GroupKind, dim: i64) -> Result<GroupType> {
        let rank = match kind {
            GroupKind::Sp if dim >= 1 && dim % 2 == 1 => (dim - 1) / 2,
            GroupKind::OddSO if dim >= 0 && dim % 2 == 0 => dim / 2,
            _ => {
                return Err(Error::invalid(format!(
                    "no {kind:?} group has dual dimension {dim}"
                )))
            }
        };
        Ok(GroupType { kind, rank: rank as u32 })
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Sp => write!(f, "Sp({})", 2 * self.rank),
            GroupKind::OddSO => write!(f, "SO({})", 2 * self.rank + 1),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Duality {
    Orthogonal,
    Symplectic,
    NonSelfDual,
}

/// Opaque supercuspidal symbol. Equality is by name; attempting to use two
/// labels of the same name with different dimension or duality is a
/// construction error, checked at the container level.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CuspLabel {
    pub name: String,
    pub dim: u32,
    pub duality: Duality,
}

impl CuspLabel {
    pub fn new(name: impl Into<String>, dim: u32, duality: Duality) -> Self {
        CuspLabel { name: name.into(), dim, duality }
    }

    /// Self-dual orthogonal label, the common case in examples.
    pub fn orth(name: impl Into<String>) -> Self {
        CuspLabel::new(name, 1, Duality::Orthogonal)
    }

    pub fn sympl(name: impl Into<String>, dim: u32) -> Self {
        CuspLabel::new(name, dim, Duality::Symplectic)
    }

    pub fn is_self_dual(&self) -> bool {
        self.duality != Duality::NonSelfDual
    }

    /// The contragredient label. Self-dual labels are fixed; non-self-dual
    /// names toggle a trailing `^`.
    pub fn contragredient(&self) -> CuspLabel {
        if self.is_self_dual() {
            return self.clone();
        }
        let name = match self.name.strip_suffix('^') {
            Some(base) => base.to_string(),
            None => format!("{}^", self.name),
        };
        CuspLabel { name, dim: self.dim, duality: Duality::NonSelfDual }
    }

    /// ε_ρ ∈ {0, ½}: the ℤ-coset of the reducibility points of ρ against
    /// supercuspidals of `kind`-type groups. Only defined for self-dual ρ.
    pub fn eps(&self, kind: GroupKind) -> Result<HalfInt> {
        let v = match (kind, self.duality) {
            (GroupKind::Sp, Duality::Symplectic) => HalfInt::HALF,
            (GroupKind::Sp, Duality::Orthogonal) => HalfInt::ZERO,
            (GroupKind::OddSO, Duality::Symplectic) => HalfInt::ZERO,
            (GroupKind::OddSO, Duality::Orthogonal) => HalfInt::HALF,
            (_, Duality::NonSelfDual) => {
                return Err(Error::invalid(format!(
                    "ε_ρ is undefined for the non-self-dual label {}",
                    self.name
                )))
            }
        };
        Ok(v)
    }

    /// Whether ρ ⊗ S_a ⊗ S_b is a good-parity summand for `kind`-type groups.
    pub fn good_parity_ab(&self, kind: GroupKind, a: i64, b: i64) -> bool {
        match self.eps(kind) {
            Ok(eps) => HalfInt::half_of(a + b).same_class(eps),
            Err(_) => false,
        }
    }
}

impl fmt::Display for CuspLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_depends_on_group_and_duality() {
        let rho = CuspLabel::orth("1");
        assert_eq!(rho.eps(GroupKind::Sp).unwrap(), HalfInt::ZERO);
        assert_eq!(rho.eps(GroupKind::OddSO).unwrap(), HalfInt::HALF);
        let tau = CuspLabel::sympl("tau", 2);
        assert_eq!(tau.eps(GroupKind::Sp).unwrap(), HalfInt::HALF);
        assert_eq!(tau.eps(GroupKind::OddSO).unwrap(), HalfInt::ZERO);
    }

    #[test]
    fn contragredient_toggles_suffix() {
        let rho = CuspLabel::new("chi", 1, Duality::NonSelfDual);
        let dual = rho.contragredient();
        assert_eq!(dual.name, "chi^");
        assert_eq!(dual.contragredient().name, "chi");
        assert_eq!(CuspLabel::orth("1").contragredient().name, "1");
    }

    #[test]
    fn dual_dims() {
        assert_eq!(GroupType::new(GroupKind::Sp, 5).dual_dim(), 11);
        assert_eq!(GroupType::new(GroupKind::OddSO, 15).dual_dim(), 30);
        assert!(GroupType::of_dual_dim(GroupKind::Sp, 10).is_err());
        assert_eq!(GroupType::of_dual_dim(GroupKind::OddSO, 30).unwrap().rank, 15);
    }
}
