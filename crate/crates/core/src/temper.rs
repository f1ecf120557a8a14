//! Tempered corank machinery: the five reduction cases on (φ, ε), their
//! inverse constructors with well-definedness gates, and the inductive
//! enumeration of tempered representations over a cuspidal line.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::label::{CuspLabel, GroupType};
use crate::params::{is_supercuspidal, EnhancedTempered, SupercuspidalData};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum TempKind {
    I,
    II,
    III,
    IV,
    V,
}

/// One constructor T_{kind, m}^{x} on the ρ-line. `eps_sign` is meaningful
/// for kind V only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct TempOp {
    pub kind: TempKind,
    pub rho: CuspLabel,
    pub x: HalfInt,
    pub m: i64,
    pub eps_sign: i8,
}

impl TempOp {
    /// Corank consumed by the constructor.
    pub fn cost(&self) -> i64 {
        match self.kind {
            TempKind::I => self.m,
            TempKind::II => self.m - 1,
            TempKind::III => self.m + (self.x + self.x).as_int() - 1,
            TempKind::IV => (self.m - 1) / 2,
            TempKind::V => self.m / 2,
        }
    }
}

fn a_of(x: HalfInt) -> i64 {
    (x + x + 1i64).as_int()
}

fn rebuild(
    kind: crate::label::GroupKind,
    phi: Vec<(CuspLabel, i64)>,
    eps: std::collections::BTreeMap<(CuspLabel, i64), i8>,
) -> Result<EnhancedTempered> {
    let dim: i64 = phi.iter().map(|(rho, a)| rho.dim as i64 * a).sum();
    let group = GroupType::of_dual_dim(kind, dim)?;
    EnhancedTempered::new(group, phi, eps)
}

fn remove_copies(phi: &mut Vec<(CuspLabel, i64)>, rho: &CuspLabel, a: i64, n: i64) -> Result<()> {
    for _ in 0..n {
        let pos = phi
            .iter()
            .position(|(r, s)| r == rho && *s == a)
            .ok_or_else(|| Error::invalid(format!("cannot remove {rho}(x)S_{a}")))?;
        phi.remove(pos);
    }
    Ok(())
}

/// One reduction step: the first applicable case in the deterministic scan
/// (labels ascending, x descending, cases I..V), or None on a supercuspidal.
pub fn temp_reduce_step(rep: &EnhancedTempered) -> Result<Option<(TempOp, EnhancedTempered)>> {
    let kind = rep.group.kind;
    let mut labels: Vec<CuspLabel> = rep.phi.iter().map(|(r, _)| r.clone()).collect();
    labels.sort();
    labels.dedup();
    for rho in labels {
        let mut dims: Vec<i64> = rep
            .phi
            .iter()
            .filter(|(r, _)| *r == rho)
            .map(|(_, a)| *a)
            .collect();
        dims.sort_unstable();
        dims.dedup();
        dims.reverse();
        for a in dims {
            let m = rep.multiplicity(&rho, a) as i64;
            let x = HalfInt::half_of(a - 1);
            let e_hi = rep.eps_ext(&rho, a);
            let e_lo = rep.eps_ext(&rho, a - 2);
            if x > HalfInt::ZERO {
                if e_hi as i64 * e_lo as i64 != -1 {
                    // case I: all m copies drop one step
                    let mut phi = rep.phi.clone();
                    let mut eps = rep.eps.clone();
                    remove_copies(&mut phi, &rho, a, m)?;
                    eps.remove(&(rho.clone(), a));
                    if a - 2 > 0 {
                        for _ in 0..m {
                            phi.push((rho.clone(), a - 2));
                        }
                        eps.insert((rho.clone(), a - 2), e_hi);
                    }
                    let op = TempOp { kind: TempKind::I, rho, x, m, eps_sign: 0 };
                    return Ok(Some((op, rebuild(kind, phi, eps)?)));
                }
                if m > 1 && m % 2 == 1 {
                    // case II: m - 1 copies drop, one stays
                    let mut phi = rep.phi.clone();
                    let eps = rep.eps.clone();
                    remove_copies(&mut phi, &rho, a, m - 1)?;
                    if a - 2 > 0 {
                        for _ in 0..(m - 1) {
                            phi.push((rho.clone(), a - 2));
                        }
                    }
                    let op = TempOp { kind: TempKind::II, rho, x, m, eps_sign: 0 };
                    return Ok(Some((op, rebuild(kind, phi, eps)?)));
                }
                if m > 1 && m % 2 == 0 {
                    // case III: all copies removed, m - 2 reappear below
                    let mut phi = rep.phi.clone();
                    let mut eps = rep.eps.clone();
                    remove_copies(&mut phi, &rho, a, m)?;
                    eps.remove(&(rho.clone(), a));
                    if a - 2 > 0 {
                        for _ in 0..(m - 2) {
                            phi.push((rho.clone(), a - 2));
                        }
                    }
                    let op = TempOp { kind: TempKind::III, rho, x, m, eps_sign: 0 };
                    return Ok(Some((op, rebuild(kind, phi, eps)?)));
                }
            } else if m > 1 {
                let mut phi = rep.phi.clone();
                let mut eps = rep.eps.clone();
                if m % 2 == 1 {
                    // case IV
                    remove_copies(&mut phi, &rho, 1, m - 1)?;
                    let op = TempOp { kind: TempKind::IV, rho, x, m, eps_sign: 0 };
                    return Ok(Some((op, rebuild(kind, phi, eps)?)));
                }
                // case V
                let sign = rep.eps_ext(&rho, 1);
                remove_copies(&mut phi, &rho, 1, m)?;
                eps.remove(&(rho.clone(), 1));
                let op = TempOp { kind: TempKind::V, rho, x, m, eps_sign: sign };
                return Ok(Some((op, rebuild(kind, phi, eps)?)));
            }
        }
    }
    Ok(None)
}

/// Iterate the reduction to the supercuspidal support. Returns the fixpoint,
/// the applied constructors (outermost first) and the corank.
pub fn temp_reduce(rep: &EnhancedTempered) -> Result<(SupercuspidalData, Vec<TempOp>, i64)> {
    let mut cur = rep.clone();
    let mut ops = Vec::new();
    let mut corank = 0;
    while let Some((op, next)) = temp_reduce_step(&cur)? {
        corank += op.cost();
        ops.push(op);
        cur = next;
    }
    debug_assert!(is_supercuspidal(&cur));
    Ok((SupercuspidalData::new(cur)?, ops, corank))
}

pub fn corank_of_tempered(rep: &EnhancedTempered) -> Result<i64> {
    Ok(temp_reduce(rep)?.2)
}

/// Corank of an arbitrary Langlands datum: GL factors of the segments plus
/// the corank of the tempered part.
pub fn corank_of_ldata(pi: &crate::ldata::LData) -> Result<i64> {
    Ok(pi.segment_corank() + corank_of_tempered(&pi.tempered)?)
}

/// Apply the constructor to a smaller tempered representation. Returns None
/// when the well-definedness gate fails.
pub fn temp_apply(op: &TempOp, rep: &EnhancedTempered) -> Result<Option<EnhancedTempered>> {
    let kind = rep.group.kind;
    let rho = &op.rho;
    // the created summand must live on the good-parity lattice of the line
    let a_hi = a_of(op.x);
    if op.kind == TempKind::IV || op.kind == TempKind::V {
        if op.x != HalfInt::ZERO || !rho.good_parity_ab(kind, 1, 1) {
            return Ok(None);
        }
    } else if op.x <= HalfInt::ZERO || !rho.good_parity_ab(kind, a_hi, 1) {
        return Ok(None);
    }
    let m = op.m;
    let mult_hi = rep.mult_ext(rho, a_hi);
    let mult_lo = rep.mult_ext(rho, a_hi - 2);
    let mut phi = rep.phi.clone();
    let mut eps = rep.eps.clone();
    match op.kind {
        TempKind::I => {
            if m < 1 || mult_hi != 0 || mult_lo < m {
                return Ok(None);
            }
            let sign = rep.eps_ext(rho, a_hi - 2);
            if a_hi - 2 > 0 {
                remove_copies(&mut phi, rho, a_hi - 2, m)?;
                if rep.multiplicity(rho, a_hi - 2) as i64 == m {
                    eps.remove(&(rho.clone(), a_hi - 2));
                }
            }
            for _ in 0..m {
                phi.push((rho.clone(), a_hi));
            }
            eps.insert((rho.clone(), a_hi), sign);
        }
        TempKind::II => {
            if m < 3 || m % 2 == 0 || mult_hi != 1 || mult_lo < m {
                return Ok(None);
            }
            let alternating =
                rep.eps_ext(rho, a_hi) as i64 * rep.eps_ext(rho, a_hi - 2) as i64 == -1;
            if !alternating {
                return Ok(None);
            }
            if a_hi - 2 > 0 {
                remove_copies(&mut phi, rho, a_hi - 2, m - 1)?;
            }
            for _ in 0..(m - 1) {
                phi.push((rho.clone(), a_hi));
            }
        }
        TempKind::III => {
            if m < 2 || m % 2 == 1 || mult_hi != 0 || mult_lo < m - 1 {
                return Ok(None);
            }
            let sign = -rep.eps_ext(rho, a_hi - 2);
            if a_hi - 2 > 0 {
                remove_copies(&mut phi, rho, a_hi - 2, m - 2)?;
                if rep.multiplicity(rho, a_hi - 2) as i64 == m - 2 {
                    eps.remove(&(rho.clone(), a_hi - 2));
                }
            }
            for _ in 0..m {
                phi.push((rho.clone(), a_hi));
            }
            eps.insert((rho.clone(), a_hi), sign);
        }
        TempKind::IV => {
            if m < 3 || m % 2 == 0 || rep.mult_ext(rho, 1) != 1 {
                return Ok(None);
            }
            for _ in 0..(m - 1) {
                phi.push((rho.clone(), 1));
            }
        }
        TempKind::V => {
            if m < 2 || m % 2 == 1 || rep.mult_ext(rho, 1) != 0 {
                return Ok(None);
            }
            if op.eps_sign != 1 && op.eps_sign != -1 {
                return Ok(None);
            }
            for _ in 0..m {
                phi.push((rho.clone(), 1));
            }
            eps.insert((rho.clone(), 1), op.eps_sign);
        }
    }
    Ok(Some(rebuild(kind, phi, eps)?))
}

/// All tempered representations of corank exactly r over the (sc, ρ)-line.
pub fn enumerate_tempered_corank(
    sc: &SupercuspidalData,
    rho: &CuspLabel,
    r: i64,
) -> Result<Vec<EnhancedTempered>> {
    let mut levels: Vec<BTreeSet<EnhancedTempered>> = vec![BTreeSet::new(); (r + 1) as usize];
    levels[0].insert(sc.rep.clone());
    for level in 1..=r {
        let mut found: BTreeSet<EnhancedTempered> = BTreeSet::new();
        for cost in 1..=level {
            let lower: Vec<EnhancedTempered> =
                levels[(level - cost) as usize].iter().cloned().collect();
            for tau in lower {
                for op in op_candidates(&tau, rho, cost)? {
                    if let Some(next) = temp_apply(&op, &tau)? {
                        found.insert(next);
                    }
                }
            }
        }
        levels[level as usize] = found;
    }
    Ok(levels[r as usize].iter().cloned().collect())
}

/// The constructors on the ρ-line with the given corank cost whose gates may
/// pass on τ.
fn op_candidates(tau: &EnhancedTempered, rho: &CuspLabel, cost: i64) -> Result<Vec<TempOp>> {
    let mut xs: BTreeSet<HalfInt> = BTreeSet::new();
    for (r, a) in &tau.phi {
        if r == rho {
            // the slot just above an existing summand
            xs.insert(HalfInt::half_of(*a + 1));
        }
    }
    // the bottom slots of the lattice
    let kind = tau.group.kind;
    if rho.good_parity_ab(kind, 2, 1) {
        xs.insert(HalfInt::HALF);
    }
    let mut ops = Vec::new();
    for x in xs {
        if x <= HalfInt::ZERO {
            continue;
        }
        let two_x = (x + x).as_int();
        // I: cost m
        ops.push(TempOp { kind: TempKind::I, rho: rho.clone(), x, m: cost, eps_sign: 0 });
        // II: cost m - 1
        ops.push(TempOp { kind: TempKind::II, rho: rho.clone(), x, m: cost + 1, eps_sign: 0 });
        // III: cost m + 2x - 1
        let m3 = cost - two_x + 1;
        if m3 >= 2 {
            ops.push(TempOp { kind: TempKind::III, rho: rho.clone(), x, m: m3, eps_sign: 0 });
        }
    }
    if rho.good_parity_ab(tau.group.kind, 1, 1) {
        ops.push(TempOp {
            kind: TempKind::IV,
            rho: rho.clone(),
            x: HalfInt::ZERO,
            m: 2 * cost + 1,
            eps_sign: 0,
        });
        for sign in [1, -1] {
            ops.push(TempOp {
                kind: TempKind::V,
                rho: rho.clone(),
                x: HalfInt::ZERO,
                m: 2 * cost,
                eps_sign: sign,
            });
        }
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corank::standard_sc;

    #[test]
    fn corank_one_gates() {
        // α = 3: exactly T_{I,1}^3, T_{IV,3} are well-defined (α ∈ Z_{>0}, α > 0)
        let (sc, rho) = standard_sc(HalfInt::from_int(3)).unwrap();
        let level1 = enumerate_tempered_corank(&sc, &rho, 1).unwrap();
        assert_eq!(level1.len(), 2);
        // α = 0: only T_{V,±,2}
        let (sc, rho) = standard_sc(HalfInt::ZERO).unwrap();
        let level1 = enumerate_tempered_corank(&sc, &rho, 1).unwrap();
        assert_eq!(level1.len(), 2);
        assert!(level1.iter().all(|t| t.multiplicity(&rho, 1) == 2));
        // α = 3/2: only T_{I,3/2,1}
        let (sc, rho) = standard_sc(HalfInt::half_of(3)).unwrap();
        let level1 = enumerate_tempered_corank(&sc, &rho, 1).unwrap();
        assert_eq!(level1.len(), 1);
        assert_eq!(level1[0].multiplicity(&rho, 4), 1);
    }

    #[test]
    fn reduce_inverts_apply() {
        let (sc, rho) = standard_sc(HalfInt::from_int(2)).unwrap();
        for tau in enumerate_tempered_corank(&sc, &rho, 2).unwrap() {
            let (base, ops, corank) = temp_reduce(&tau).unwrap();
            assert_eq!(base.rep, sc.rep);
            assert_eq!(corank, 2);
            // reapply the chain outermost-last
            let mut cur = base.rep.clone();
            for op in ops.iter().rev() {
                cur = temp_apply(op, &cur).unwrap().expect("gate must pass");
            }
            assert_eq!(cur, tau);
        }
    }

    #[test]
    fn corank_two_count_alpha_half() {
        // α = 1/2: the corank-2 tempered list of the classification: case (A)
        // over T_{I,1/2,1} and case (B) with T_{I,1/2,2}, T_{III,1/2,2}
        let (sc, rho) = standard_sc(HalfInt::HALF).unwrap();
        let level2 = enumerate_tempered_corank(&sc, &rho, 2).unwrap();
        // T_{I,3/2,1}∘T_{I,1/2,1}, T_{I,1/2,2}, T_{III,1/2,2}
        assert_eq!(level2.len(), 3);
    }
}
