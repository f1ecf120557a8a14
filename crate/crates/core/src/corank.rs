//! Corank-indexed classification: standard supercuspidal bases per
//! reducibility point, the inductive enumeration of good-parity Arthur
//! representations over a cuspidal line, Jantzen block splitting, duality at
//! the Langlands-data level, and the regression report against the low-corank
//! classification tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decide::{Decider, DecisionVariant};
use crate::ems::ExtendedMultiSegment;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::label::{CuspLabel, GroupKind, GroupType};
use crate::ldata::{LData, LSegment};
use crate::ops::{canonical_form, dual, nonvanishing};
use crate::packet::pi_of;
use crate::params::{EnhancedTempered, SupercuspidalData};
use crate::temper::{enumerate_tempered_corank, temp_apply, TempKind, TempOp};

/// A supercuspidal base whose reducibility point against the returned label
/// is exactly `alpha`. Integer points live on Sp with a one-dimensional
/// orthogonal line; half-integer points on odd SO. Auxiliary summands fix the
/// dual dimension parity and the sign-product condition.
pub fn standard_sc(alpha: HalfInt) -> Result<(SupercuspidalData, CuspLabel)> {
    if alpha.is_neg() {
        return Err(Error::invalid("reducibility points are nonnegative"));
    }
    let rho = CuspLabel::orth("rho");
    let mut phi: Vec<(CuspLabel, i64)> = Vec::new();
    let mut eps: BTreeMap<(CuspLabel, i64), i8> = BTreeMap::new();
    let kind;
    if alpha.is_integer() {
        kind = GroupKind::Sp;
        let a_int = alpha.as_int();
        // chain S_1 + S_3 + ... + S_{2α-1}, alternating from the bottom sign
        let chain_parity = (a_int * (a_int - 1) / 2) % 2; // (-1)^{Σ i}
        let bottom: i8 = if a_int % 2 == 1 {
            if chain_parity == 0 {
                1
            } else {
                -1
            }
        } else {
            1
        };
        for i in 0..a_int {
            let sign = if i % 2 == 0 { bottom } else { -bottom };
            phi.push((rho.clone(), 2 * i + 1));
            eps.insert((rho.clone(), 2 * i + 1), sign);
        }
        if a_int % 2 == 0 {
            // even chains need a one-dimensional companion for parity, whose
            // sign absorbs the chain product
            let aux = CuspLabel::orth("one");
            let chain_sign: i8 = if chain_parity == 0 { 1 } else { -1 };
            phi.push((aux.clone(), 1));
            eps.insert((aux, 1), chain_sign);
        }
    } else {
        kind = GroupKind::OddSO;
        // chain S_2 + S_4 + ... + S_{2α-1}, pinned by ε(ρ⊗S_2) = -1
        let k = (alpha - HalfInt::HALF).as_int();
        let mut product = 1i64;
        for i in 1..=k {
            let sign: i8 = if i % 2 == 1 { -1 } else { 1 };
            phi.push((rho.clone(), 2 * i));
            eps.insert((rho.clone(), 2 * i), sign);
            product *= sign as i64;
        }
        if product == -1 {
            let aux = CuspLabel::sympl("tau", 2);
            phi.push((aux.clone(), 1));
            eps.insert((aux, 1), -1);
        }
    }
    let dim: i64 = phi.iter().map(|(r, a)| r.dim as i64 * a).sum();
    let group = GroupType::of_dual_dim(kind, dim)?;
    let rep = EnhancedTempered::new(group, phi, eps)?;
    let sc = SupercuspidalData::new(rep)?;
    debug_assert_eq!(sc.alpha(&rho)?, alpha);
    Ok((sc, rho))
}

// ---------------------------------------------------------------------------
// the inductive enumeration
// ---------------------------------------------------------------------------

/// Π_{A,gp}(π_sc, ρ, s) for 0 ≤ s ≤ r: levels of good-parity Arthur
/// representations over the cuspidal line, each level sorted and deduplicated.
pub fn enumerate_arthur_gp_levels(
    sc: &SupercuspidalData,
    rho: &CuspLabel,
    r: i64,
    decider: &mut Decider,
) -> Result<Vec<Vec<LData>>> {
    let alpha = sc.alpha(rho)?;
    let mut levels: Vec<Vec<LData>> = Vec::new();
    levels.push(vec![LData::tempered_only(sc.rep.clone())]);
    for level in 1..=r {
        let mut found: Vec<LData> = Vec::new();
        // tempered members
        for tau in enumerate_tempered_corank(sc, rho, level)? {
            found.push(LData::tempered_only(tau));
        }
        // non-tempered members: one segment of length level - s over a
        // smaller Arthur representation
        for s in 0..level {
            let len = level - s;
            // grid endpoint ε with ε + (1-len)/2 + α ∈ ℤ
            let frac_ref = alpha + HalfInt::half_of(1 - len);
            let epsilon = if frac_ref.is_integer() { HalfInt::ONE } else { HalfInt::HALF };
            let mut x = alpha + level + HalfInt::half_of(1 - len);
            let bases: Vec<LData> = levels[s as usize].clone();
            while x >= epsilon {
                let u = HalfInt::half_of(len - 1) - x;
                for base in &bases {
                    let seg = LSegment::new(rho.clone(), u, u - (len - 1))?;
                    let pi = base.insert_segments([seg])?;
                    if decider.is_arthur_type(&pi)?.arthur {
                        found.push(pi);
                    }
                }
                x -= HalfInt::ONE;
            }
        }
        found.sort();
        found.dedup();
        levels.push(found);
    }
    Ok(levels)
}

/// The corank-r slice of the enumeration.
pub fn enumerate_arthur_gp(
    sc: &SupercuspidalData,
    rho: &CuspLabel,
    r: i64,
    decider: &mut Decider,
) -> Result<Vec<LData>> {
    Ok(enumerate_arthur_gp_levels(sc, rho, r, decider)?.pop().unwrap())
}

// ---------------------------------------------------------------------------
// Jantzen block substitution
// ---------------------------------------------------------------------------

/// The cuspidal-line components X_ρ(π): substitute each ρ-block of the
/// witness into the supercuspidal witness.
pub fn jantzen_split(
    witness: &ExtendedMultiSegment,
    sc_witness: &ExtendedMultiSegment,
) -> Result<Vec<(CuspLabel, ExtendedMultiSegment)>> {
    let mut out = Vec::new();
    for (rho, rows) in witness.blocks() {
        let component = sc_witness.with_block(rho, rows.clone()).refit_group()?;
        component.validate()?;
        out.push((rho.clone(), component));
    }
    Ok(out)
}

/// Reassemble a witness from per-line components over a common base.
pub fn jantzen_merge(
    parts: &[(CuspLabel, ExtendedMultiSegment)],
    sc_witness: &ExtendedMultiSegment,
) -> Result<ExtendedMultiSegment> {
    let mut merged = sc_witness.clone();
    for (rho, component) in parts {
        let rows = component.block_of(rho).cloned().unwrap_or_default();
        merged = merged.with_block(rho, rows);
    }
    let merged = merged.refit_group()?;
    merged.validate()?;
    Ok(merged)
}

// ---------------------------------------------------------------------------
// duality on Langlands data
// ---------------------------------------------------------------------------

/// The Aubert–Zelevinsky dual of an Arthur-type representation, computed
/// through any parameterizing multi-segment and checked to be independent of
/// the choice.
pub fn az_dual_ldata(pi: &LData, decider: &mut Decider) -> Result<LData> {
    let verdict = decider.is_arthur_type(pi)?;
    if !verdict.arthur {
        return Err(Error::pre("duality at the Langlands level needs an Arthur-type input"));
    }
    let mut result: Option<LData> = None;
    for w in &verdict.witnesses {
        let d = dual(&canonical_form(w)?)?;
        if !nonvanishing(&d)? {
            return Err(Error::invalid("dual of a witness vanishes"));
        }
        let ld = pi_of(&d)?;
        match &result {
            None => result = Some(ld),
            Some(prev) => {
                if *prev != ld {
                    return Err(Error::invalid("duals disagree across witnesses"));
                }
            }
        }
    }
    Ok(result.expect("nonempty witness list"))
}

// ---------------------------------------------------------------------------
// the regression report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportRow {
    /// Identifier of the classification table the row checks.
    pub table: String,
    pub case: String,
    pub expected: bool,
    pub computed: bool,
}

impl ReportRow {
    pub fn pass(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorankReport {
    pub alpha: HalfInt,
    pub rows: Vec<ReportRow>,
}

impl CorankReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass())
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Corank tables at alpha = {}\n", self.alpha);
        let _ = writeln!(s, "| table | case | expected | computed | ok |");
        let _ = writeln!(s, "|---|---|---|---|---|");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} |",
                r.table,
                r.case,
                r.expected,
                r.computed,
                if r.pass() { "yes" } else { "NO" }
            );
        }
        let _ = writeln!(
            s,
            "\n{} of {} rows match.",
            self.rows.iter().filter(|r| r.pass()).count(),
            self.rows.len()
        );
        s
    }
}

fn ladder(
    sc: &SupercuspidalData,
    rho: &CuspLabel,
    xs: &[HalfInt],
) -> Result<LData> {
    let segs: Vec<LSegment> = xs
        .iter()
        .map(|x| LSegment::new(rho.clone(), -*x, -*x))
        .collect::<Result<_>>()?;
    LData::new(segs, sc.rep.clone())
}

/// Compare the decision procedure against the hard-coded classification
/// tables for corank up to `max_corank` at one reducibility point.
pub fn corank_report(alpha: HalfInt, max_corank: i64, decider: &mut Decider) -> Result<CorankReport> {
    let (sc, rho) = standard_sc(alpha)?;
    let mut rows: Vec<ReportRow> = Vec::new();
    let grid = |lo: HalfInt, hi: HalfInt| -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut x = if lo.same_class(alpha) { lo } else { lo + HalfInt::HALF };
        while x <= hi {
            out.push(x);
            x += HalfInt::ONE;
        }
        out
    };
    let top = alpha + 2i64;

    // corank 1, one circle: Arthur iff 1/2 ≤ x ≤ α
    for x in grid(HalfInt::HALF, top) {
        let pi = ladder(&sc, &rho, &[x])?;
        let expected = HalfInt::HALF <= x && x <= alpha;
        let computed = decider.is_arthur_type(&pi)?.arthur;
        rows.push(ReportRow {
            table: "prop-corank1-f1".into(),
            case: format!("x={x}"),
            expected,
            computed,
        });
    }

    // corank 2, two circles
    if max_corank >= 2 {
        for x1 in grid(HalfInt::HALF, top) {
            for x2 in grid(HalfInt::HALF, x1) {
                let pi = ladder(&sc, &rho, &[x1, x2])?;
                let expected = if x1 > x2 {
                    (HalfInt::HALF <= x2 && x1 <= alpha)
                        || (x2 == alpha && x1 == alpha + 1i64)
                } else {
                    x1 == HalfInt::HALF
                };
                let computed = decider.is_arthur_type(&pi)?.arthur;
                rows.push(ReportRow {
                    table: "prop-f=r-corank2".into(),
                    case: format!("x1={x1} x2={x2}"),
                    expected,
                    computed,
                });
            }
        }
    }

    // corank 3, three circles
    if max_corank >= 3 {
        for x1 in grid(HalfInt::HALF, top) {
            for x2 in grid(HalfInt::HALF, x1) {
                for x3 in grid(HalfInt::HALF, x2) {
                    let pi = ladder(&sc, &rho, &[x1, x2, x3])?;
                    let expected = if x1 > x2 && x2 > x3 {
                        x1 <= alpha
                            || (x1 == alpha + 1i64 && x2 == alpha)
                            || (x1 == alpha + 2i64 && x2 == alpha + 1i64 && x3 == alpha)
                    } else if x1 == x2 && x2 > x3 {
                        false
                    } else if x1 > x2 && x2 == x3 {
                        x2 == HalfInt::HALF && x1 <= alpha
                    } else {
                        x1 == HalfInt::HALF
                    };
                    let computed = decider.is_arthur_type(&pi)?.arthur;
                    rows.push(ReportRow {
                        table: "prop-f=r-corank3".into(),
                        case: format!("x1={x1} x2={x2} x3={x3}"),
                        expected,
                        computed,
                    });
                }
            }
        }

        // corank 3, L(Δ[-x1,-x1], Δ[0,-1]; π_sc) on the integer lattice
        if alpha.is_integer() {
            for x1 in grid(HalfInt::ONE, top) {
                let seg1 = LSegment::new(rho.clone(), -x1, -x1)?;
                let seg2 = LSegment::new(rho.clone(), HalfInt::ZERO, -HalfInt::ONE)?;
                let pi = LData::new(vec![seg1, seg2], sc.rep.clone())?;
                let expected = (HalfInt::ONE <= x1 && x1 <= alpha)
                    || (x1 == HalfInt::from_int(2) && alpha == HalfInt::ONE);
                let computed = decider.is_arthur_type(&pi)?.arthur;
                rows.push(ReportRow {
                    table: "prop-corank3-f2-D2".into(),
                    case: format!("x1={x1}"),
                    expected,
                    computed,
                });
            }
        }

        // corank 2, L(Δ[-x,-x-1]; π_sc): Arthur iff 0 ≤ x ≤ α-1 or x = α = 0
        for x in grid(HalfInt::ZERO, top) {
            let seg = LSegment::new(rho.clone(), -x, -x - 1i64)?;
            let pi = LData::new(vec![seg], sc.rep.clone())?;
            let expected = (HalfInt::ZERO <= x && x <= alpha - 1i64)
                || (x == alpha && alpha == HalfInt::ZERO);
            let computed = decider.is_arthur_type(&pi)?.arthur;
            rows.push(ReportRow {
                table: "prop-corank2-f1-[-x,-x-1]".into(),
                case: format!("x={x}"),
                expected,
                computed,
            });
        }

        // corank 3, L(Δ[-x,-x-2]; π_sc): Arthur iff -1/2 ≤ x ≤ α-2 or x = -1/2
        for x in grid(-HalfInt::HALF, top) {
            let seg = LSegment::new(rho.clone(), -x, -x - 2i64)?;
            let pi = LData::new(vec![seg], sc.rep.clone())?;
            let expected = (-HalfInt::HALF <= x && x <= alpha - 2i64) || x == -HalfInt::HALF;
            let computed = decider.is_arthur_type(&pi)?.arthur;
            rows.push(ReportRow {
                table: "prop-corank3-f1-C".into(),
                case: format!("x={x}"),
                expected,
                computed,
            });
        }
    }

    // tempered gates of the corank-1 classification
    let gate = |op: &TempOp| -> Result<bool> { Ok(temp_apply(op, &sc.rep)?.is_some()) };
    for x in grid(HalfInt::HALF, top) {
        let op = TempOp { kind: TempKind::I, rho: rho.clone(), x, m: 1, eps_sign: 0 };
        rows.push(ReportRow {
            table: "temp-gate-I1".into(),
            case: format!("x={x}"),
            expected: x == alpha && alpha > HalfInt::ZERO,
            computed: gate(&op)?,
        });
    }
    rows.push(ReportRow {
        table: "temp-gate-IV3".into(),
        case: "m=3".into(),
        expected: alpha.is_integer() && alpha > HalfInt::ZERO,
        computed: gate(&TempOp {
            kind: TempKind::IV,
            rho: rho.clone(),
            x: HalfInt::ZERO,
            m: 3,
            eps_sign: 0,
        })?,
    });
    rows.push(ReportRow {
        table: "temp-gate-V2".into(),
        case: "m=2".into(),
        expected: alpha == HalfInt::ZERO,
        computed: gate(&TempOp {
            kind: TempKind::V,
            rho: rho.clone(),
            x: HalfInt::ZERO,
            m: 2,
            eps_sign: 1,
        })?,
    });

    // tempered gates of the corank-2 classification, case (B)
    if max_corank >= 2 {
        for x in grid(HalfInt::HALF, top) {
            let op = TempOp { kind: TempKind::I, rho: rho.clone(), x, m: 2, eps_sign: 0 };
            rows.push(ReportRow {
                table: "temp-gate-I2".into(),
                case: format!("x={x}"),
                expected: x == alpha && alpha == HalfInt::HALF,
                computed: gate(&op)?,
            });
        }
        rows.push(ReportRow {
            table: "temp-gate-II3".into(),
            case: "x=1/2".into(),
            expected: !alpha.is_integer() && alpha > HalfInt::HALF,
            computed: gate(&TempOp {
                kind: TempKind::II,
                rho: rho.clone(),
                x: HalfInt::HALF,
                m: 3,
                eps_sign: 0,
            })?,
        });
        rows.push(ReportRow {
            table: "temp-gate-III2".into(),
            case: "x=1/2".into(),
            expected: alpha == HalfInt::HALF,
            computed: gate(&TempOp {
                kind: TempKind::III,
                rho: rho.clone(),
                x: HalfInt::HALF,
                m: 2,
                eps_sign: 0,
            })?,
        });
        rows.push(ReportRow {
            table: "temp-gate-IV5".into(),
            case: "m=5".into(),
            expected: alpha.is_integer() && alpha > HalfInt::ZERO,
            computed: gate(&TempOp {
                kind: TempKind::IV,
                rho: rho.clone(),
                x: HalfInt::ZERO,
                m: 5,
                eps_sign: 0,
            })?,
        });
        rows.push(ReportRow {
            table: "temp-gate-V4".into(),
            case: "m=4".into(),
            expected: alpha == HalfInt::ZERO,
            computed: gate(&TempOp {
                kind: TempKind::V,
                rho: rho.clone(),
                x: HalfInt::ZERO,
                m: 4,
                eps_sign: -1,
            })?,
        });
    }

    Ok(CorankReport { alpha, rows })
}

/// Run the decision procedure with the reduction along π_{ρ,-} on the same
/// generated families; used by the agreement suite.
pub fn decide_with_variant(
    pi: &LData,
    decider: &mut Decider,
    variant: DecisionVariant,
) -> Result<bool> {
    Ok(decider.decide(pi, variant)?.arthur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_bases_hit_their_reducibility_points() {
        for d in 0..=7i64 {
            let alpha = HalfInt::half_of(d);
            let (sc, rho) = standard_sc(alpha).unwrap();
            assert_eq!(sc.alpha(&rho).unwrap(), alpha, "alpha = {alpha}");
        }
    }

    #[test]
    fn corank_one_report_at_three_halves() {
        let mut d = Decider::default();
        let report = corank_report(HalfInt::half_of(3), 1, &mut d).unwrap();
        assert!(report.pass(), "{}", report.to_markdown());
    }

    #[test]
    fn corank_one_levels() {
        // α = 1: Π_{A,gp}(sc, ρ, 1) = {T_{I,1,1}(sc), T_{IV,3}(sc), L(Δ[-1,-1]; sc)}
        let (sc, rho) = standard_sc(HalfInt::ONE).unwrap();
        let mut d = Decider::default();
        let level = enumerate_arthur_gp(&sc, &rho, 1, &mut d).unwrap();
        assert_eq!(level.len(), 3);
        assert_eq!(level.iter().filter(|p| p.is_tempered()).count(), 2);
    }

    #[test]
    fn jantzen_round_trip() {
        // two-line witness: rho-line circles over an sc with an auxiliary line
        let (sc, rho) = standard_sc(HalfInt::from_int(2)).unwrap();
        let sc_witness = crate::decide::tempered_ems(&LData::tempered_only(sc.rep.clone())).unwrap();
        let mut d = Decider::default();
        let pi = ladder(&sc, &rho, &[HalfInt::ONE]).unwrap();
        let v = d.is_arthur_type(&pi).unwrap();
        assert!(v.arthur);
        let w = &v.witnesses[0];
        let parts = jantzen_split(w, &sc_witness).unwrap();
        let merged = jantzen_merge(&parts, &sc_witness).unwrap();
        assert_eq!(canonical_form(&merged).unwrap(), canonical_form(w).unwrap());
    }

    #[test]
    fn dual_is_involutive_on_a_circle_family_member() {
        let (sc, rho) = standard_sc(HalfInt::from_int(2)).unwrap();
        let mut d = Decider::default();
        let pi = ladder(&sc, &rho, &[HalfInt::ONE]).unwrap();
        let dd = az_dual_ldata(&az_dual_ldata(&pi, &mut d).unwrap(), &mut d).unwrap();
        assert_eq!(dd, pi);
    }
}
