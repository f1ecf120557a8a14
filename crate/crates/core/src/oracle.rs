//! The pluggable reducibility oracle behind the hyperplane arrangement.
//!
//! Built-in rules cover the two cases with a uniform answer: ρ|·|^t ⋊ π_sc
//! over a supercuspidal base (reducible exactly at ±α), and products of
//! essentially square-integrable GL factors (Zelevinsky linkage). Everything
//! else comes from a wall-table configuration; unsupported queries error.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::{rat_of, HalfInt, Rat};
use crate::label::CuspLabel;
use crate::ldata::{LData, LSegment};
use crate::params::{is_supercuspidal, SupercuspidalData};

/// Key for configured wall tables: Speh datum against a named base.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BaseQueryKey {
    pub rho: String,
    pub a: i64,
    pub b: i64,
    pub base: String,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PairQueryKey {
    pub rho: String,
    pub a1: i64,
    pub b1: i64,
    pub a2: i64,
    pub b2: i64,
}

/// Wall tables loaded from JSON. Points are rationals as "n/d" strings or
/// integers.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct WallConfig {
    #[serde(default)]
    pub base_walls: Vec<BaseWallEntry>,
    #[serde(default)]
    pub pair_walls: Vec<PairWallEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BaseWallEntry {
    #[serde(flatten)]
    pub key: BaseQueryKey,
    pub points: Vec<RatRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairWallEntry {
    #[serde(flatten)]
    pub key: PairQueryKey,
    pub points: Vec<RatRepr>,
}

/// Serde-friendly rational.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatRepr(#[serde(with = "crate::half::rat_serde")] pub Rat);

/// Identifier used to key a base representation in wall tables: its display
/// form, which is stable across runs.
pub fn base_id(pi: &LData) -> String {
    pi.to_string()
}

pub struct Oracle {
    config_base: BTreeMap<BaseQueryKey, Vec<Rat>>,
    config_pair: BTreeMap<PairQueryKey, Vec<Rat>>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { config_base: BTreeMap::new(), config_pair: BTreeMap::new() }
    }
}

impl Oracle {
    pub fn with_config(config: WallConfig) -> Self {
        let mut oracle = Oracle::default();
        for e in config.base_walls {
            oracle.config_base.insert(e.key, e.points.into_iter().map(|r| r.0).collect());
        }
        for e in config.pair_walls {
            oracle.config_pair.insert(e.key, e.points.into_iter().map(|r| r.0).collect());
        }
        oracle
    }

    /// Reducibility points t of u_ρ(a,b)|·|^t ⋊ π_A.
    pub fn base_points(
        &self,
        rho: &CuspLabel,
        a: i64,
        b: i64,
        base: &LData,
        sc: &SupercuspidalData,
    ) -> Result<Vec<Rat>> {
        let key = BaseQueryKey { rho: rho.name.clone(), a, b, base: base_id(base) };
        if let Some(points) = self.config_base.get(&key) {
            return Ok(points.clone());
        }
        if a == 1 && b == 1 && base.is_tempered() && is_supercuspidal(&base.tempered) {
            let alpha = sc.alpha(rho)?;
            let t = rat_of(alpha);
            return Ok(if t == Rat::from_integer(0) { vec![t] } else { vec![t, -t] });
        }
        Err(Error::OracleMiss(format!(
            "reducibility of u_{}({a},{b})|.|^t against base `{}`",
            rho.name,
            base_id(base)
        )))
    }

    /// Reducibility points t of u_ρ(a1,b1)|·|^t × u_ρ(a2,b2).
    pub fn pair_points(&self, rho: &CuspLabel, a1: i64, b1: i64, a2: i64, b2: i64) -> Result<Vec<Rat>> {
        let key = PairQueryKey { rho: rho.name.clone(), a1, b1, a2, b2 };
        if let Some(points) = self.config_pair.get(&key) {
            return Ok(points.clone());
        }
        if b1 == 1 && b2 == 1 {
            // Zelevinsky linkage of Δ_ρ[t+u, t-u] with Δ_ρ[u', -u']:
            // reducible exactly at |u-u'| + 1 ≤ |t| ≤ u + u' + 1 on the
            // integer-shifted lattice
            let u1 = HalfInt::half_of(a1 - 1);
            let u2 = HalfInt::half_of(a2 - 1);
            let lo = (u1 - u2).abs() + 1i64;
            let hi = u1 + u2 + 1i64;
            let mut points = Vec::new();
            let mut t = lo;
            while t <= hi {
                points.push(rat_of(t));
                points.push(rat_of(-t));
                t += HalfInt::ONE;
            }
            return Ok(points);
        }
        Err(Error::OracleMiss(format!(
            "reducibility of u_{}({a1},{b1})|.|^t x u_{}({a2},{b2})",
            rho.name, rho.name
        )))
    }

    /// Langlands data of the irreducible induction u_ρ(a,b)|·|^t ⋊ π_A at an
    /// off-wall point t: insert the Speh columns (contragredient side), and
    /// absorb a self-dual column into the tempered part when it matches an
    /// existing summand.
    pub fn ldata_of_irreducible_induction(
        &self,
        rho: &CuspLabel,
        a: i64,
        b: i64,
        t: Rat,
        base: &LData,
    ) -> Result<LData> {
        let t = crate::half::rat_to_half(t)
            .ok_or_else(|| Error::OracleMiss("non-half-integral induction point".into()))?;
        let mut segments: Vec<LSegment> = Vec::new();
        let mut tempered = base.tempered.clone();
        for j in 1..=b {
            // column j of the Speh matrix, twisted by t
            let x = HalfInt::half_of(a - b) + (j - 1) + t;
            let y = x - (a - 1);
            if x + y < HalfInt::ZERO {
                segments.push(LSegment::new(rho.clone(), x, y)?);
            } else if x + y > HalfInt::ZERO {
                segments.push(LSegment::new(rho.clone(), -y, -x)?);
            } else {
                // self-dual column Δ[c,-c]: absorbable only onto an existing
                // tempered summand, where ε stays determined
                let summand = (x + x + 1i64).as_int();
                if tempered.multiplicity(rho, summand) == 0 {
                    return Err(Error::OracleMiss(format!(
                        "tempered absorption of D_{}[{},{}] without a matching summand",
                        rho.name, x, y
                    )));
                }
                let mut phi = tempered.phi.clone();
                phi.push((rho.clone(), summand));
                phi.push((rho.clone(), summand));
                let group = crate::label::GroupType::of_dual_dim(
                    tempered.group.kind,
                    tempered.group.dual_dim() + 2 * rho.dim as i64 * summand,
                )?;
                tempered = crate::params::EnhancedTempered::new(group, phi, tempered.eps.clone())?;
            }
        }
        let mut all = base.segments().to_vec();
        all.extend(segments);
        LData::new(all, tempered)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corank::standard_sc;
    use crate::half::rat;

    #[test]
    fn builtin_rules() {
        let (sc, rho) = standard_sc(HalfInt::half_of(3)).unwrap();
        let oracle = Oracle::default();
        let base = LData::tempered_only(sc.rep.clone());
        let pts = oracle.base_points(&rho, 1, 1, &base, &sc).unwrap();
        assert_eq!(pts, vec![rat(3, 2), rat(-3, 2)]);
        // ρ|·|^t × ρ: linkage at ±1
        let pts = oracle.pair_points(&rho, 1, 1, 1, 1).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.contains(&rat(1, 1)) && pts.contains(&rat(-1, 1)));
        // Δ[1/2,-1/2]-type factor against ρ: ±3/2
        let pts = oracle.pair_points(&rho, 2, 1, 1, 1).unwrap();
        assert!(pts.contains(&rat(3, 2)) && pts.contains(&rat(-3, 2)) && pts.len() == 2);
        // (2,1) against a supercuspidal base is not built in
        assert!(oracle.base_points(&rho, 2, 1, &base, &sc).is_err());
    }

    #[test]
    fn induction_ldata_insertion() {
        let (sc, rho) = standard_sc(HalfInt::half_of(3)).unwrap();
        let oracle = Oracle::default();
        let base = LData::tempered_only(sc.rep.clone());
        // ρ|·|^{1/2} ⋊ σ at the off-wall point 1/2 (α = 3/2)
        let ld = oracle
            .ldata_of_irreducible_induction(&rho, 1, 1, rat(1, 2), &base)
            .unwrap();
        assert_eq!(ld.segments().len(), 1);
        assert_eq!(ld.segments()[0].x, HalfInt::half_of(-1));
        // u(2,1)|·|^0 ⋊ σ absorbs into the tempered part (S_2 present)
        let ld = oracle
            .ldata_of_irreducible_induction(&rho, 2, 1, rat(0, 1), &base)
            .unwrap();
        assert!(ld.is_tempered());
        assert_eq!(ld.tempered.multiplicity(&rho, 2), 3);
    }
}
