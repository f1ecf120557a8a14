//! Packets and intersections: the Langlands data of π(E), the absolutely
//! maximal form, full packets Π_ψ and the closure 𝓔(π) under the operator
//! graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ems::{Block, ExtendedMultiSegment, ExtendedSegment};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::label::{CuspLabel, GroupType};
use crate::ldata::{LData, LSegment};
use crate::ops::{
    add_rows_in_block, admissible_orderings, canonical_form, condition_l_form, dual,
    nonvanishing, partial_dual_plus, reorder_block, ui_inverse_splits, ui_pair, OperatorTag,
};
use crate::par::par_map;
use crate::params::{ArthurParameter, EnhancedTempered, SupercuspidalData};

pub const DEFAULT_BUDGET: usize = 200_000;

/// One member of a packet: the parameterizing extended multi-segment and the
/// Langlands data of its representation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PacketEntry {
    pub ems: ExtendedMultiSegment,
    pub ldata: LData,
}

// ---------------------------------------------------------------------------
// Langlands data under condition (L)
// ---------------------------------------------------------------------------

/// The Langlands data of π(E) for E presented in a condition-(L) order: every
/// row spends its l hooks on segments [B+k, -A+k] and the odd-length rows
/// assemble the tempered part.
pub fn ldata_under_condition_l(ems: &ExtendedMultiSegment) -> Result<LData> {
    let mut segments: Vec<LSegment> = Vec::new();
    let mut phi: Vec<(CuspLabel, i64)> = Vec::new();
    let mut eps: BTreeMap<(CuspLabel, i64), i8> = BTreeMap::new();
    for (rho, rows) in ems.blocks() {
        for r in rows {
            if r.dim_b() - 2 * r.l > 1 {
                return Err(Error::pre(format!("row {r} violates condition (L)")));
            }
            for k in 0..r.l {
                segments.push(LSegment::new(
                    rho.clone(),
                    r.seg_b + k,
                    -r.seg_a + k,
                )?);
            }
            if r.dim_b() % 2 == 1 {
                let a = r.dim_a();
                phi.push((rho.clone(), a));
                if let Some(prev) = eps.insert((rho.clone(), a), r.eta) {
                    if prev != r.eta {
                        return Err(Error::pre(
                            "condition (L) sign coherence fails across equal rows",
                        ));
                    }
                }
            }
        }
    }
    let gl_dim: i64 = segments.iter().map(|s| 2 * s.rho.dim as i64 * s.len()).sum();
    let temp_group =
        GroupType::of_dual_dim(ems.group.kind, ems.group.dual_dim() - gl_dim)?;
    let tempered = EnhancedTempered::new(temp_group, phi, eps)?;
    LData::new(segments, tempered)
}

// ---------------------------------------------------------------------------
// raising / lowering neighbors
// ---------------------------------------------------------------------------

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                v.push((i, j));
            }
        }
    }
    v
}

/// Raising operators applicable on E: inverse type-3' splits, dual-conjugated
/// union-intersections, and dual_k^-.
pub fn raising_neighbors(
    ems: &ExtendedMultiSegment,
) -> Result<Vec<(OperatorTag, ExtendedMultiSegment)>> {
    let e = canonical_form(ems)?;
    let d = dual(&e)?;
    let mut out: Vec<(OperatorTag, ExtendedMultiSegment)> = Vec::new();
    for (rho, _) in e.blocks() {
        for (val, tag) in ui_inverse_splits(&e, rho)? {
            out.push((tag, canonical_form(&val)?));
        }
    }
    for (rho, rows) in d.blocks() {
        for (j, i) in all_pairs(rows.len()) {
            if let Some((merged, _)) = ui_pair(&d, rho, j, i)? {
                let val = dual(&merged)?;
                out.push((
                    OperatorTag::DualUiDual { rho: rho.name.clone(), j, i },
                    canonical_form(&val)?,
                ));
            }
        }
        for (k, val) in partial_dual_all(&d, rho, rows)? {
            out.push((
                OperatorTag::PartialDualMinus { rho: rho.name.clone(), k },
                canonical_form(&dual(&val)?)?,
            ));
        }
    }
    dedupe(&mut out);
    Ok(out)
}

/// dual_k^+ probed over every (P') presentation of the ρ-block.
fn partial_dual_all(
    ems: &ExtendedMultiSegment,
    rho: &CuspLabel,
    rows: &Block,
) -> Result<Vec<(usize, ExtendedMultiSegment)>> {
    let mut out = Vec::new();
    for (_, ordered) in admissible_orderings(rows)? {
        if !crate::ems::block_satisfies_p_prime(&ordered) {
            continue;
        }
        let candidate = ems.with_block(rho, ordered);
        for k in 0..rows.len() {
            if let Some(val) = partial_dual_plus(&candidate, rho, k)? {
                out.push((k, val));
            }
        }
    }
    Ok(out)
}

/// Inverses of the raising operators: union-intersections, dual-conjugated
/// splits, and dual_k^+.
pub fn lowering_neighbors(
    ems: &ExtendedMultiSegment,
) -> Result<Vec<(OperatorTag, ExtendedMultiSegment)>> {
    let e = canonical_form(ems)?;
    let d = dual(&e)?;
    let mut out: Vec<(OperatorTag, ExtendedMultiSegment)> = Vec::new();
    for (rho, rows) in e.blocks() {
        for (i, j) in all_pairs(rows.len()) {
            if let Some((merged, _)) = ui_pair(&e, rho, i, j)? {
                out.push((
                    OperatorTag::Ui { rho: rho.name.clone(), i, j },
                    canonical_form(&merged)?,
                ));
            }
        }
        for (k, val) in partial_dual_all(&e, rho, rows)? {
            out.push((
                OperatorTag::PartialDualPlus { rho: rho.name.clone(), k },
                canonical_form(&val)?,
            ));
        }
    }
    for (rho, _) in d.blocks() {
        for (val, tag) in ui_inverse_splits(&d, rho)? {
            out.push((tag, canonical_form(&dual(&val)?)?));
        }
    }
    dedupe(&mut out);
    Ok(out)
}

fn dedupe(list: &mut Vec<(OperatorTag, ExtendedMultiSegment)>) {
    let mut seen = BTreeSet::new();
    list.retain(|(_, e)| seen.insert(e.clone()));
}

/// Tags of every applicable raising operator; empty exactly on absolutely
/// maximal extended multi-segments.
pub fn applicable_raising_ops(ems: &ExtendedMultiSegment) -> Result<Vec<OperatorTag>> {
    Ok(raising_neighbors(ems)?.into_iter().map(|(t, _)| t).collect())
}

/// The unique absolutely maximal form of E (up to row exchanges): raising
/// operators are applied greedily with a visited set until none applies.
pub fn absolutely_maximal(ems: &ExtendedMultiSegment, budget: usize) -> Result<ExtendedMultiSegment> {
    let mut cur = canonical_form(ems)?;
    let mut visited: BTreeSet<ExtendedMultiSegment> = BTreeSet::new();
    visited.insert(cur.clone());
    loop {
        if visited.len() > budget {
            return Err(Error::BudgetExceeded { budget, context: "absolutely_maximal".into() });
        }
        let nbrs = raising_neighbors(&cur)?;
        if nbrs.is_empty() {
            return Ok(cur);
        }
        match nbrs.into_iter().find(|(_, n)| !visited.contains(n)) {
            Some((_, next)) => {
                visited.insert(next.clone());
                cur = next;
            }
            None => {
                return Err(Error::invalid(
                    "raising operators cycled; this contradicts well-foundedness",
                ))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// π(E)
// ---------------------------------------------------------------------------

/// One step of the recursive Langlands-data computation, for tracing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PiOfStep {
    pub maximal: ExtendedMultiSegment,
    pub reduced: ExtendedMultiSegment,
    pub removed: Vec<LSegment>,
}

/// Which reduction is used in the recursive step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PiOfVariant {
    /// Peel one maximal-length row (Algorithm via (E^{|max|})^-).
    MaxTriangle,
    /// Peel every row at the minimal B at once (Algorithm via (E^{|max|})_{ρ,-}).
    MinB,
}

pub fn pi_of(ems: &ExtendedMultiSegment) -> Result<LData> {
    Ok(pi_of_traced(ems, PiOfVariant::MaxTriangle)?.0)
}

pub fn pi_of_variant2(ems: &ExtendedMultiSegment) -> Result<LData> {
    Ok(pi_of_traced(ems, PiOfVariant::MinB)?.0)
}

pub fn pi_of_traced(
    ems: &ExtendedMultiSegment,
    variant: PiOfVariant,
) -> Result<(LData, Vec<PiOfStep>)> {
    if !nonvanishing(ems)? {
        return Err(Error::pre("π(E) = 0; the multi-segment vanishes"));
    }
    let mut steps = Vec::new();
    let ld = pi_of_inner(&canonical_form(ems)?, variant, &mut steps)?;
    Ok((ld, steps))
}

fn pi_of_inner(
    ems: &ExtendedMultiSegment,
    variant: PiOfVariant,
    steps: &mut Vec<PiOfStep>,
) -> Result<LData> {
    let maximal = absolutely_maximal(ems, DEFAULT_BUDGET)?;
    // base case: tempered parameter; its condition-(L) form is the L-data
    let tempered = maximal
        .blocks()
        .iter()
        .all(|(_, rows)| rows.iter().all(|r| r.is_circle()));
    if tempered {
        let lform = condition_l_form(&maximal)?
            .ok_or_else(|| Error::invalid("tempered multi-segment without an (L) order"))?;
        return ldata_under_condition_l(&lform);
    }
    // peel the smallest label still carrying a non-circle row
    let rho = maximal
        .blocks()
        .iter()
        .find(|(_, rows)| rows.iter().any(|r| !r.is_circle()))
        .map(|(r, _)| r.clone())
        .expect("non-tempered");
    let rows = maximal.block_of(&rho).unwrap().clone();

    let (reduced, removed) = match variant {
        PiOfVariant::MaxTriangle => {
            let b_max = rows.iter().map(|r| r.dim_b()).max().unwrap();
            if b_max <= 1 {
                return Err(Error::invalid("(L)-violating block with all rows circles"));
            }
            let j = rows.iter().position(|r| r.dim_b() == b_max).unwrap();
            // move j to the end of its equal-B run
            let b_j = rows[j].seg_b;
            let run_end = (j..rows.len()).take_while(|&p| rows[p].seg_b == b_j).last().unwrap();
            let mut target: Vec<usize> = (0..rows.len()).collect();
            target.remove(j);
            target.insert(run_end, j);
            let moved = reorder_block(&rows, &target)?;
            let seg = LSegment::new(rho.clone(), moved[run_end].seg_b, -moved[run_end].seg_a)?;
            let new_rows = add_rows_in_block(&moved, &[(run_end, -1)])?;
            (maximal.with_block(&rho, new_rows).refit_group()?, vec![seg])
        }
        PiOfVariant::MinB => {
            let b_min = rows
                .iter()
                .filter(|r| !r.is_circle())
                .map(|r| r.seg_b)
                .min()
                .ok_or_else(|| Error::invalid("(L)-violating block with all rows circles"))?;
            let picks: Vec<usize> = (0..rows.len())
                .filter(|&p| !rows[p].is_circle() && rows[p].seg_b == b_min)
                .collect();
            let removed: Vec<LSegment> = picks
                .iter()
                .map(|&p| LSegment::new(rho.clone(), rows[p].seg_b, -rows[p].seg_a))
                .collect::<Result<_>>()?;
            let ops: Vec<(usize, i64)> = picks.iter().map(|&p| (p, -1)).collect();
            let new_rows = add_rows_in_block(&rows, &ops)?;
            (maximal.with_block(&rho, new_rows).refit_group()?, removed)
        }
    };
    steps.push(PiOfStep {
        maximal: maximal.clone(),
        reduced: reduced.clone(),
        removed: removed.clone(),
    });
    let inner = pi_of_inner(&canonical_form(&reduced)?, variant, steps)?;
    inner.insert_segments(removed)
}

// ---------------------------------------------------------------------------
// closures and packets
// ---------------------------------------------------------------------------

/// The closure 𝓔(π(E)) of E under raising operators and their inverses,
/// as canonical forms. Every member parameterizes the same representation.
pub fn intersection_set(
    ems: &ExtendedMultiSegment,
    budget: usize,
) -> Result<Vec<ExtendedMultiSegment>> {
    if !nonvanishing(ems)? {
        return Err(Error::pre("π(E) = 0; the multi-segment vanishes"));
    }
    let start = canonical_form(ems)?;
    let mut seen: BTreeSet<ExtendedMultiSegment> = BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        if seen.len() > budget {
            return Err(Error::BudgetExceeded { budget, context: "intersection_set".into() });
        }
        let expanded: Vec<Result<Vec<ExtendedMultiSegment>>> = par_map(frontier, |e| {
            let mut nbrs = Vec::new();
            for (_, n) in raising_neighbors(&e)? {
                nbrs.push(n);
            }
            for (_, n) in lowering_neighbors(&e)? {
                nbrs.push(n);
            }
            Ok(nbrs)
        });
        let mut next = Vec::new();
        for batch in expanded {
            for n in batch? {
                if seen.insert(n.clone()) {
                    next.push(n);
                }
            }
        }
        next.sort();
        next.dedup();
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// The parameters Ψ(π(E)), with the distinguished ψ^max of the absolutely
/// maximal member first.
pub fn psi_set(ems: &ExtendedMultiSegment, budget: usize) -> Result<Vec<ArthurParameter>> {
    let closure = intersection_set(ems, budget)?;
    let maximal = absolutely_maximal(ems, budget)?;
    let psi_max = maximal.psi()?;
    let mut psis: Vec<ArthurParameter> =
        closure.iter().map(|e| e.psi()).collect::<Result<_>>()?;
    psis.sort();
    psis.dedup();
    psis.retain(|p| *p != psi_max);
    let mut out = vec![psi_max];
    out.extend(psis);
    Ok(out)
}

/// All members of the packet Π_ψ for a good-parity parameter, by running the
/// decoration search over the canonical admissible order.
pub fn enumerate_packet(psi: &ArthurParameter) -> Result<Vec<PacketEntry>> {
    if !psi.is_good_parity() {
        return Err(Error::pre("packet enumeration needs a good-parity parameter"));
    }
    let mut blocks: Vec<(CuspLabel, Vec<(HalfInt, HalfInt)>)> = Vec::new();
    for s in psi.summands() {
        let seg_a = HalfInt::half_of(s.a + s.b - 2);
        let seg_b = HalfInt::half_of(s.a - s.b);
        match blocks.iter_mut().find(|(r, _)| r == &s.rho) {
            Some((_, v)) => v.push((seg_a, seg_b)),
            None => blocks.push((s.rho.clone(), vec![(seg_a, seg_b)])),
        }
    }
    for (_, v) in &mut blocks {
        v.sort_by_key(|&(a, b)| (b, a));
    }
    // all decoration assignments, sign-pruned on the last slot
    let slots: Vec<(usize, HalfInt, HalfInt)> = blocks
        .iter()
        .enumerate()
        .flat_map(|(bi, (_, v))| v.iter().map(move |&(a, b)| (bi, a, b)))
        .collect();
    let mut assignments: Vec<Vec<ExtendedSegment>> = vec![Vec::new()];
    for (slot, &(_, a, b)) in slots.iter().enumerate() {
        let blen = (a - b + 1i64).as_int();
        let mut next = Vec::new();
        for partial in &assignments {
            for l in 0..=(blen / 2) {
                let etas: &[i8] = if blen == 2 * l { &[1] } else { &[1, -1] };
                for &eta in etas {
                    let row = ExtendedSegment::new(a, b, l, eta);
                    if slot + 1 == slots.len() {
                        let sign: i64 = partial.iter().map(|r| r.sign_factor()).product::<i64>()
                            * row.sign_factor();
                        if sign != 1 {
                            continue;
                        }
                    }
                    let mut v = partial.clone();
                    v.push(row);
                    next.push(v);
                }
            }
        }
        assignments = next;
    }
    let candidates: Vec<ExtendedMultiSegment> = assignments
        .into_iter()
        .map(|rows| {
            let mut iter = rows.into_iter();
            let filled: Vec<(CuspLabel, Block)> = blocks
                .iter()
                .map(|(rho, v)| {
                    let rows: Block = v.iter().map(|_| iter.next().unwrap()).collect();
                    (rho.clone(), rows)
                })
                .collect();
            ExtendedMultiSegment::assemble(psi.group, filled)
        })
        .collect();
    let entries: Vec<Result<Option<PacketEntry>>> = par_map(candidates, |ems| {
        ems.validate()?;
        if nonvanishing(&ems)? {
            let ldata = pi_of(&ems)?;
            Ok(Some(PacketEntry { ems: canonical_form(&ems)?, ldata }))
        } else {
            Ok(None)
        }
    });
    let mut out = Vec::new();
    for e in entries {
        if let Some(entry) = e? {
            out.push(entry);
        }
    }
    // Mœglin multiplicity one
    let mut seen = BTreeSet::new();
    for e in &out {
        if !seen.insert(e.ldata.clone()) {
            return Err(Error::invalid("packet members collide; multiplicity one fails"));
        }
    }
    Ok(out)
}

/// All good-parity ψ with diagonal restriction φ_sc ⊗ S_1, by covering the
/// tempered multiset with Clebsch–Gordan intervals.
pub fn psi_set_of_supercuspidal(sc: &SupercuspidalData) -> Result<Vec<ArthurParameter>> {
    let mut remaining: BTreeMap<(CuspLabel, i64), usize> = BTreeMap::new();
    for (rho, a) in &sc.rep.phi {
        *remaining.entry((rho.clone(), *a)).or_insert(0) += 1;
    }
    let mut out: Vec<Vec<(CuspLabel, i64, i64)>> = Vec::new();
    cover(&mut remaining, &mut Vec::new(), &mut out);
    let mut psis = Vec::new();
    for summands in out {
        let psi = ArthurParameter::new(
            sc.group(),
            summands
                .into_iter()
                .map(|(rho, a, b)| crate::params::ArthurSummand::new(rho, a, b))
                .collect(),
        )?;
        psis.push(psi);
    }
    psis.sort();
    psis.dedup();
    Ok(psis)
}

fn cover(
    remaining: &mut BTreeMap<(CuspLabel, i64), usize>,
    acc: &mut Vec<(CuspLabel, i64, i64)>,
    out: &mut Vec<Vec<(CuspLabel, i64, i64)>>,
) {
    let target = match remaining.iter().find(|(_, &n)| n > 0) {
        None => {
            let mut done = acc.clone();
            done.sort();
            out.push(done);
            return;
        }
        Some((key, _)) => {
            // largest c on this label
            let rho = key.0.clone();
            let c = remaining
                .iter()
                .filter(|((r, _), &n)| *r == rho && n > 0)
                .map(|((_, c), _)| *c)
                .max()
                .unwrap();
            (rho, c)
        }
    };
    let (rho, c_max) = target;
    for a in 1..=c_max {
        let b = c_max + 1 - a;
        let mut needed: Vec<i64> = Vec::new();
        let mut cc = (a - b).abs() + 1;
        while cc <= a + b - 1 {
            needed.push(cc);
            cc += 2;
        }
        if needed
            .iter()
            .all(|c| remaining.get(&(rho.clone(), *c)).copied().unwrap_or(0) > 0)
        {
            for c in &needed {
                *remaining.get_mut(&(rho.clone(), *c)).unwrap() -= 1;
            }
            acc.push((rho.clone(), a, b));
            cover(remaining, acc, out);
            acc.pop();
            for c in &needed {
                *remaining.get_mut(&(rho.clone(), *c)).unwrap() += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ems::row;
    use crate::label::{GroupKind, GroupType};
    use crate::params::ArthurSummand;

    fn rho() -> CuspLabel {
        CuspLabel::orth("1")
    }

    fn sp(n: u32) -> GroupType {
        GroupType::new(GroupKind::Sp, n)
    }

    fn e53() -> ExtendedMultiSegment {
        ExtendedMultiSegment::new(
            sp(5),
            vec![(rho(), vec![row(3, -3, 3, 1), row(1, -1, 1, -1), row(0, 0, 0, -1)])],
        )
        .unwrap()
    }

    #[test]
    fn example_5_3_is_already_maximal() {
        let e = e53();
        assert!(applicable_raising_ops(&e).unwrap().is_empty());
    }

    #[test]
    fn example_5_3_ldata() {
        let (ld, steps) = pi_of_traced(&e53(), PiOfVariant::MaxTriangle).unwrap();
        let segs: Vec<String> = ld.segments().iter().map(|s| s.to_string()).collect();
        assert_eq!(segs, vec!["D_1[-3,-3]", "D_1[-1,-2]", "D_1[0,-1]"]);
        assert_eq!(ld.tempered.phi, vec![(rho(), 1)]);
        assert_eq!(ld.tempered.eps_of(&rho(), 1), Some(1));
        assert_eq!(steps.len(), 3);
        // the first reduction is E_1 = add_1^{-1}(E)
        let e1 = ExtendedMultiSegment::assemble(
            sp(4),
            vec![(rho(), vec![row(2, -2, 2, 1), row(1, -1, 1, -1), row(0, 0, 0, -1)])],
        );
        assert_eq!(
            canonical_form(&steps[0].reduced).unwrap(),
            canonical_form(&e1).unwrap()
        );
        // E_1^{|max|} = {([2,-1],1,+),([0,0],0,-)}
        let e1max = absolutely_maximal(&e1, DEFAULT_BUDGET).unwrap();
        let expect = ExtendedMultiSegment::assemble(
            sp(4),
            vec![(rho(), vec![row(2, -1, 1, 1), row(0, 0, 0, -1)])],
        );
        assert_eq!(e1max, canonical_form(&expect).unwrap());
    }

    #[test]
    fn both_variants_agree_on_the_section_5_2_example() {
        let e = ExtendedMultiSegment::assemble(
            sp(9),
            vec![(rho(), vec![row(1, 0, 1, 1), row(3, 1, 1, 1)])],
        );
        let a = pi_of(&e).unwrap();
        let b = pi_of_variant2(&e).unwrap();
        assert_eq!(a, b);
        let segs: Vec<String> = a.segments().iter().map(|s| s.to_string()).collect();
        assert_eq!(segs, vec!["D_1[1,-3]", "D_1[0,-1]"]);
        assert_eq!(a.tempered.phi, vec![(rho(), 5)]);
        assert_eq!(a.tempered.eps_of(&rho(), 5), Some(1));
    }

    #[test]
    fn tempered_packet_sizes() {
        // k distinct multiplicity-one summands → 2^{k-1} members
        let psi = ArthurParameter::new(
            sp(4),
            vec![
                ArthurSummand::new(rho(), 1, 1),
                ArthurSummand::new(rho(), 3, 1),
                ArthurSummand::new(rho(), 5, 1),
            ],
        )
        .unwrap();
        let packet = enumerate_packet(&psi).unwrap();
        assert_eq!(packet.len(), 4);
        assert!(packet.iter().all(|e| e.ldata.is_tempered()));
    }

    #[test]
    fn packet_of_s2s2_plus_aux() {
        // ψ = ρ⊗S_2⊗S_2 + ρ'⊗S_1⊗S_1 has the three displayed members
        let rho2 = CuspLabel::new("r'", 3, crate::label::Duality::Orthogonal);
        let psi = ArthurParameter::new(
            sp(3),
            vec![ArthurSummand::new(rho(), 2, 2), ArthurSummand::new(rho2, 1, 1)],
        )
        .unwrap();
        let packet = enumerate_packet(&psi).unwrap();
        assert_eq!(packet.len(), 3);
    }

    #[test]
    fn nine_parameters_for_the_135_supercuspidal() {
        let mut eps = BTreeMap::new();
        eps.insert((rho(), 1), -1);
        eps.insert((rho(), 3), 1);
        eps.insert((rho(), 5), -1);
        let sc = SupercuspidalData::new(
            EnhancedTempered::new(sp(4), vec![(rho(), 1), (rho(), 3), (rho(), 5)], eps).unwrap(),
        )
        .unwrap();
        let psis = psi_set_of_supercuspidal(&sc).unwrap();
        assert_eq!(psis.len(), 9);
        // dual route: every listed ψ restricts diagonally to φ_sc
        for psi in &psis {
            let diag = crate::params::diagonal_restriction(psi).unwrap();
            assert_eq!(diag, sc.rep.phi);
        }
    }
}
