//! Local Arthur parameters, tempered parameters with their characters, and
//! the supercuspidal bookkeeping built on top of them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use num_traits::Signed;

use crate::half::{rat_to_half, HalfInt, Rat};
use crate::label::{CuspLabel, GroupKind, GroupType};

/// One summand ρ|·|^x ⊗ S_a ⊗ S_b of a local Arthur parameter. The twist
/// satisfies |x| < ½ and is kept as an exact rational because it need not be
/// half-integral.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ArthurSummand {
    pub rho: CuspLabel,
    pub a: i64,
    pub b: i64,
    #[serde(
        default = "zero_rat",
        skip_serializing_if = "is_zero",
        with = "crate::half::rat_serde"
    )]
    pub x: Rat,
}

fn is_zero(x: &Rat) -> bool {
    *x == Rat::from_integer(0)
}

fn zero_rat() -> Rat {
    Rat::from_integer(0)
}

impl ArthurSummand {
    pub fn new(rho: CuspLabel, a: i64, b: i64) -> Self {
        ArthurSummand { rho, a, b, x: Rat::from_integer(0) }
    }

    pub fn twisted(rho: CuspLabel, a: i64, b: i64, x: Rat) -> Self {
        ArthurSummand { rho, a, b, x }
    }

    pub fn dim(&self) -> i64 {
        self.rho.dim as i64 * self.a * self.b
    }

    pub fn is_good_parity(&self, kind: GroupKind) -> bool {
        self.x == Rat::from_integer(0)
            && self.rho.is_self_dual()
            && self.rho.good_parity_ab(kind, self.a, self.b)
    }
}

impl fmt::Display for ArthurSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x != Rat::from_integer(0) {
            write!(f, "{}|.|^{}(x)S_{}(x)S_{}", self.rho, self.x, self.a, self.b)
        } else {
            write!(f, "{}(x)S_{}(x)S_{}", self.rho, self.a, self.b)
        }
    }
}

/// A local Arthur parameter as a formal multiset of summands, kept sorted so
/// equality is multiset equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "ArthurParameterRepr")]
pub struct ArthurParameter {
    pub group: GroupType,
    summands: Vec<ArthurSummand>,
}

#[derive(Deserialize)]
struct ArthurParameterRepr {
    group: GroupType,
    summands: Vec<ArthurSummand>,
}

impl TryFrom<ArthurParameterRepr> for ArthurParameter {
    type Error = Error;
    fn try_from(r: ArthurParameterRepr) -> Result<Self> {
        ArthurParameter::new(r.group, r.summands)
    }
}

impl ArthurParameter {
    pub fn new(group: GroupType, mut summands: Vec<ArthurSummand>) -> Result<Self> {
        summands.sort();
        let psi = ArthurParameter { group, summands };
        psi.check_dim()?;
        Ok(psi)
    }

    pub fn summands(&self) -> &[ArthurSummand] {
        &self.summands
    }

    pub fn total_dim(&self) -> i64 {
        self.summands.iter().map(|s| s.dim()).sum()
    }

    fn check_dim(&self) -> Result<()> {
        let total = self.total_dim();
        if total != self.group.dual_dim() {
            return Err(Error::invalid(format!(
                "parameter has total dimension {total}, but {} needs {}",
                self.group,
                self.group.dual_dim()
            )));
        }
        Ok(())
    }

    pub fn is_good_parity(&self) -> bool {
        self.summands.iter().all(|s| s.is_good_parity(self.group.kind))
    }

    pub fn is_tempered(&self) -> bool {
        self.summands.iter().all(|s| s.b == 1 && s.x == Rat::from_integer(0))
    }

    /// Multiplicity of ρ ⊗ S_a ⊗ S_b (untwisted).
    pub fn multiplicity(&self, rho: &CuspLabel, a: i64, b: i64) -> usize {
        self.summands
            .iter()
            .filter(|s| &s.rho == rho && s.a == a && s.b == b && s.x == Rat::from_integer(0))
            .count()
    }
}

impl fmt::Display for ArthurParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multiset of tempered L-parameter summands ρ ⊗ S_a, sorted.
pub type TemperedPhi = Vec<(CuspLabel, i64)>;

/// Clebsch–Gordan: S_a ⊗ S_b = ⊕_{c=|a-b|+1, step 2}^{a+b-1} S_c.
pub fn clebsch_gordan(a: i64, b: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut c = (a - b).abs() + 1;
    while c <= a + b - 1 {
        out.push(c);
        c += 2;
    }
    out
}

/// The diagonal restriction ψ^Δ(w, x) = ψ(w, x, x) as a multiset of (ρ, c).
/// Requires every twist to vanish.
pub fn diagonal_restriction(psi: &ArthurParameter) -> Result<TemperedPhi> {
    let mut out: TemperedPhi = Vec::new();
    for s in psi.summands() {
        if s.x != Rat::from_integer(0) {
            return Err(Error::invalid(format!(
                "diagonal restriction needs all twists zero, found {}",
                s
            )));
        }
        for c in clebsch_gordan(s.a, s.b) {
            out.push((s.rho.clone(), c));
        }
    }
    out.sort();
    Ok(out)
}

/// A tempered representation π(φ, ε): a good-parity-aware tempered parameter
/// together with the character ε on its good-parity summands.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "TemperedRepr", into = "TemperedRepr")]
pub struct EnhancedTempered {
    pub group: GroupType,
    /// Sorted multiset of summands (ρ, a).
    pub phi: TemperedPhi,
    /// ε on the distinct good-parity summands; +1/-1. ε must be constant
    /// across equal summands, so one entry per distinct (ρ, a).
    pub eps: BTreeMap<(CuspLabel, i64), i8>,
}

/// JSON form: one entry per summand occurrence, ε repeated on each.
#[derive(Clone, Serialize, Deserialize)]
pub struct TemperedRepr {
    pub group: GroupType,
    pub summands: Vec<TemperedSummandRepr>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct TemperedSummandRepr {
    pub rho: CuspLabel,
    pub a: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<i8>,
}

impl From<EnhancedTempered> for TemperedRepr {
    fn from(rep: EnhancedTempered) -> Self {
        let summands = rep
            .phi
            .iter()
            .map(|(rho, a)| TemperedSummandRepr {
                rho: rho.clone(),
                a: *a,
                eps: rep.eps_of(rho, *a),
            })
            .collect();
        TemperedRepr { group: rep.group, summands }
    }
}

impl TryFrom<TemperedRepr> for EnhancedTempered {
    type Error = Error;
    fn try_from(r: TemperedRepr) -> Result<Self> {
        let mut phi = Vec::new();
        let mut eps = BTreeMap::new();
        for s in r.summands {
            if let Some(e) = s.eps {
                if let Some(prev) = eps.insert((s.rho.clone(), s.a), e) {
                    if prev != e {
                        return Err(Error::invalid(format!(
                            "conflicting ε on {}(x)S_{}",
                            s.rho, s.a
                        )));
                    }
                }
            }
            phi.push((s.rho, s.a));
        }
        EnhancedTempered::new(r.group, phi, eps)
    }
}

impl EnhancedTempered {
    pub fn new(
        group: GroupType,
        mut phi: TemperedPhi,
        eps: BTreeMap<(CuspLabel, i64), i8>,
    ) -> Result<Self> {
        phi.sort();
        let rep = EnhancedTempered { group, phi, eps };
        rep.validate()?;
        Ok(rep)
    }

    pub fn validate(&self) -> Result<()> {
        let total: i64 = self.phi.iter().map(|(rho, a)| rho.dim as i64 * a).sum();
        if total != self.group.dual_dim() {
            return Err(Error::invalid(format!(
                "tempered parameter has dimension {total}, expected {}",
                self.group.dual_dim()
            )));
        }
        let mut sign_product = 1i64;
        for (rho, a) in self.distinct_summands() {
            let gp = rho.is_self_dual() && rho.good_parity_ab(self.group.kind, a, 1);
            let m = self.multiplicity(&rho, a);
            match self.eps.get(&(rho.clone(), a)) {
                Some(&e) if gp => {
                    if e != 1 && e != -1 {
                        return Err(Error::invalid("ε values must be ±1"));
                    }
                    if m % 2 == 1 {
                        sign_product *= e as i64;
                    }
                }
                Some(_) => {
                    return Err(Error::invalid(format!(
                        "ε defined on the non-good-parity summand {rho}(x)S_{a}"
                    )))
                }
                None if gp => {
                    return Err(Error::invalid(format!(
                        "ε missing on the good-parity summand {rho}(x)S_{a}"
                    )))
                }
                None => {}
            }
        }
        if sign_product != 1 {
            return Err(Error::invalid("ε does not satisfy the product-one condition"));
        }
        Ok(())
    }

    pub fn distinct_summands(&self) -> Vec<(CuspLabel, i64)> {
        let mut v = self.phi.clone();
        v.dedup();
        v
    }

    pub fn multiplicity(&self, rho: &CuspLabel, a: i64) -> usize {
        self.phi.iter().filter(|(r, s)| r == rho && *s == a).count()
    }

    pub fn eps_of(&self, rho: &CuspLabel, a: i64) -> Option<i8> {
        self.eps.get(&(rho.clone(), a)).copied()
    }

    /// ε extended by 0 off the parameter. The ρ⊗S_0 slot takes the value +1:
    /// with this normalization the supercuspidal chains (ε(ρ⊗S_2) = -1) are
    /// exactly the fixed points of the tempered reduction, matching the
    /// corank-one classification.
    pub fn eps_ext(&self, rho: &CuspLabel, a: i64) -> i8 {
        if a == 0 {
            return 1;
        }
        if self.multiplicity(rho, a) == 0 {
            return 0;
        }
        self.eps_of(rho, a).unwrap_or(0)
    }

    /// Multiplicity with the m(ρ⊗S_0) = ∞ convention encoded as i64::MAX.
    pub fn mult_ext(&self, rho: &CuspLabel, a: i64) -> i64 {
        if a == 0 {
            i64::MAX
        } else {
            self.multiplicity(rho, a) as i64
        }
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

/// Mœglin's supercuspidal criterion: discrete, without gaps, alternating
/// signs along each chain, and ε(ρ⊗S_2) = -1 whenever ρ⊗S_2 occurs.
pub fn is_supercuspidal(rep: &EnhancedTempered) -> bool {
    let distinct = rep.distinct_summands();
    // discrete: multiplicity free
    if distinct.len() != rep.phi.len() {
        return false;
    }
    for (rho, a) in &distinct {
        if !rho.is_self_dual() {
            return false;
        }
        if *a >= 3 && rep.multiplicity(rho, a - 2) == 0 {
            return false; // gap
        }
        if *a >= 3 {
            let e_hi = rep.eps_ext(rho, *a);
            let e_lo = rep.eps_ext(rho, a - 2);
            if e_hi * e_lo != -1 {
                return false;
            }
        }
        if *a == 2 && rep.eps_ext(rho, 2) != -1 {
            return false;
        }
    }
    true
}

/// A supercuspidal representation together with its reducibility points.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "ScRepr")]
pub struct SupercuspidalData {
    pub rep: EnhancedTempered,
}

#[derive(Deserialize)]
struct ScRepr {
    rep: EnhancedTempered,
}

impl TryFrom<ScRepr> for SupercuspidalData {
    type Error = Error;
    fn try_from(r: ScRepr) -> Result<Self> {
        SupercuspidalData::new(r.rep)
    }
}

impl SupercuspidalData {
    pub fn new(rep: EnhancedTempered) -> Result<Self> {
        if !is_supercuspidal(&rep) {
            return Err(Error::invalid("parameter fails the supercuspidal criterion"));
        }
        Ok(SupercuspidalData { rep })
    }

    pub fn group(&self) -> GroupType {
        self.rep.group
    }

    /// α_{ρ,π_sc} = a_ρ + ε_ρ + 1 where a_ρ indexes the top of the ρ-chain.
    pub fn alpha(&self, rho: &CuspLabel) -> Result<HalfInt> {
        let eps = rho.eps(self.rep.group.kind)?;
        let top = self
            .rep
            .phi
            .iter()
            .filter(|(r, _)| r == rho)
            .map(|(_, a)| *a)
            .max();
        match top {
            // top = 2(a_ρ + ε_ρ) + 1, so α = a_ρ + ε_ρ + 1 = (top + 1)/2.
            Some(a) => Ok(HalfInt::half_of(a + 1)),
            None => Ok(eps),
        }
    }

    /// Sign η = ε(ρ ⊗ S_{2ε_ρ+1}) at the bottom of the ρ-chain, when present.
    pub fn eta(&self, rho: &CuspLabel) -> Result<i8> {
        let eps = rho.eps(self.rep.group.kind)?;
        let bottom = eps + eps + 1i64;
        self.rep
            .eps_of(rho, bottom.as_int())
            .ok_or_else(|| Error::invalid(format!("{rho} does not occur in the parameter")))
    }
}

/// Parity classification of Definition "critical type": the classification of
/// an irreducible π realized inside ρ_1|·|^{x_1} × ... × ρ_f|·|^{x_f} ⋊ π_sc.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Parity {
    NullParity,
    GoodParity { critical: bool },
    BadParity,
}

/// Classify the parity of a representation from its supercuspidal support.
/// `support` lists the GL factors (ρ_i, x_i) with x_i ≥ 0 up to sign; the
/// exponents are exact rationals so non-half-integral exponents classify as
/// null parity.
pub fn classify_parity(support: &[(CuspLabel, Rat)], sc: &SupercuspidalData) -> Parity {
    for (rho, x) in support {
        let half = rat_to_half(x.abs());
        if !rho.is_self_dual() || half.is_none() {
            return Parity::NullParity;
        }
    }
    for (rho, x) in support {
        let x = rat_to_half(x.abs()).expect("checked above");
        let alpha = match sc.alpha(rho) {
            Ok(a) => a,
            Err(_) => return Parity::BadParity,
        };
        if !x.same_class(alpha) {
            return Parity::BadParity;
        }
    }
    // critical: for each ρ occurring, the set of |x_i| forms a segment
    // containing α_ρ.
    let mut by_rho: BTreeMap<&CuspLabel, Vec<HalfInt>> = BTreeMap::new();
    for (rho, x) in support {
        by_rho.entry(rho).or_default().push(rat_to_half(x.abs()).unwrap());
    }
    let mut critical = true;
    for (rho, xs) in by_rho {
        let mut set: Vec<HalfInt> = xs;
        set.sort();
        set.dedup();
        let alpha = sc.alpha(rho).expect("self-dual");
        let contiguous = set.windows(2).all(|w| w[1] - w[0] == HalfInt::ONE);
        let contains_alpha = set.contains(&alpha);
        if !(contiguous && contains_alpha) {
            critical = false;
        }
    }
    Parity::GoodParity { critical }
}

/// A unitary generalized Speh symbol u_ρ(a,b)|·|^x.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SpehSymbol {
    pub rho: CuspLabel,
    pub a: i64,
    pub b: i64,
    #[serde(default = "zero_rat", with = "crate::half::rat_serde")]
    pub x: Rat,
}

impl fmt::Display for SpehSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x == Rat::from_integer(0) {
            write!(f, "u_{}({},{})", self.rho, self.a, self.b)
        } else {
            write!(f, "u_{}({},{})|.|^{}", self.rho, self.a, self.b, self.x)
        }
    }
}

/// The three-way split ψ = (ψ_{>0} + ψ_{>0}^∨) + (ψ_{ngp} + ψ_{ngp}^∨) + ψ_gp.
/// Returns the Speh factors of the two GL parts and the good-parity core.
pub fn decompose_to_gp(
    psi: &ArthurParameter,
) -> Result<(Vec<SpehSymbol>, Vec<SpehSymbol>, ArthurParameter)> {
    let zero = Rat::from_integer(0);
    let mut remaining: Vec<ArthurSummand> = psi.summands().to_vec();
    let mut speh_pos = Vec::new();
    let mut speh_ngp = Vec::new();
    let mut gp = Vec::new();

    while let Some(s) = remaining.pop() {
        if s.is_good_parity(psi.group.kind) {
            gp.push(s);
            continue;
        }
        // must pair with its contragredient ρ^∨|·|^{-x} ⊗ S_a ⊗ S_b
        let partner = ArthurSummand {
            rho: s.rho.contragredient(),
            a: s.a,
            b: s.b,
            x: -s.x,
        };
        let pos = remaining.iter().position(|t| *t == partner).ok_or_else(|| {
            Error::invalid(format!("summand {s} has no contragredient partner"))
        })?;
        remaining.remove(pos);
        // keep the representative with x > 0, or the lexicographically
        // smaller label at x = 0
        let repr = if s.x > zero || (s.x == zero && s.rho <= partner.rho) { s } else { partner };
        let symbol = SpehSymbol { rho: repr.rho.clone(), a: repr.a, b: repr.b, x: repr.x };
        if repr.x != zero {
            speh_pos.push(symbol);
        } else {
            speh_ngp.push(symbol);
        }
    }
    speh_pos.sort();
    speh_ngp.sort();
    let gp_dim: i64 = gp.iter().map(|s| s.dim()).sum();
    let gp_group = GroupType::of_dual_dim(psi.group.kind, gp_dim)?;
    let psi_gp = ArthurParameter::new(gp_group, gp)?;
    Ok((speh_pos, speh_ngp, psi_gp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::rat;

    fn sp(rank: u32) -> GroupType {
        GroupType::new(GroupKind::Sp, rank)
    }

    fn rho() -> CuspLabel {
        CuspLabel::orth("1")
    }

    #[test]
    fn clebsch_gordan_basics() {
        assert_eq!(clebsch_gordan(2, 2), vec![1, 3]);
        assert_eq!(clebsch_gordan(3, 3), vec![1, 3, 5]);
        assert_eq!(clebsch_gordan(5, 1), vec![5]);
    }

    #[test]
    fn diagonal_restriction_of_example_parameter() {
        // ψ = ρ⊗S_1⊗S_3 + ρ⊗S_3⊗S_3 + ρ⊗S_5⊗S_1 → {S_1, S_3^2, S_5^2}
        let psi = ArthurParameter::new(
            sp(8),
            vec![
                ArthurSummand::new(rho(), 1, 3),
                ArthurSummand::new(rho(), 3, 3),
                ArthurSummand::new(rho(), 5, 1),
            ],
        )
        .unwrap();
        let diag = diagonal_restriction(&psi).unwrap();
        let cs: Vec<i64> = diag.iter().map(|(_, c)| *c).collect();
        assert_eq!(cs, vec![1, 3, 3, 5, 5]);
    }

    #[test]
    fn dimension_audit_rejects_mismatched_parameters() {
        assert!(ArthurParameter::new(sp(2), vec![ArthurSummand::new(rho(), 3, 1)]).is_err());
    }

    fn sc_135() -> SupercuspidalData {
        // π(0^-, 1^+, 2^-) of Sp_8: φ = S_1 + S_3 + S_5, α = 3
        let mut eps = BTreeMap::new();
        eps.insert((rho(), 1), -1);
        eps.insert((rho(), 3), 1);
        eps.insert((rho(), 5), -1);
        let rep = EnhancedTempered::new(
            sp(4),
            vec![(rho(), 1), (rho(), 3), (rho(), 5)],
            eps,
        )
        .unwrap();
        SupercuspidalData::new(rep).unwrap()
    }

    #[test]
    fn supercuspidal_criterion() {
        let sc = sc_135();
        assert!(is_supercuspidal(&sc.rep));
        assert_eq!(sc.alpha(&rho()).unwrap(), HalfInt::from_int(3));

        // alternation failure (aux line keeps the dimension odd)
        let aux = CuspLabel::orth("aux");
        let mut eps = BTreeMap::new();
        eps.insert((rho(), 1), 1);
        eps.insert((rho(), 3), 1);
        eps.insert((aux.clone(), 1), 1);
        let rep = EnhancedTempered::new(
            sp(2),
            vec![(rho(), 1), (rho(), 3), (aux.clone(), 1)],
            eps,
        )
        .unwrap();
        assert!(!is_supercuspidal(&rep));

        // gap: S_3 missing
        let mut eps = BTreeMap::new();
        eps.insert((rho(), 1), -1);
        eps.insert((rho(), 5), -1);
        eps.insert((aux.clone(), 1), 1);
        let rep = EnhancedTempered::new(
            sp(3),
            vec![(rho(), 1), (rho(), 5), (aux, 1)],
            eps,
        )
        .unwrap();
        assert!(!is_supercuspidal(&rep));
    }

    #[test]
    fn parity_classification() {
        let sc = sc_135();
        // exponent 1/3 → null parity
        let p = classify_parity(&[(rho(), rat(1, 3))], &sc);
        assert_eq!(p, Parity::NullParity);
        // exponent α = 3 → good parity, critical
        let p = classify_parity(&[(rho(), rat(3, 1))], &sc);
        assert_eq!(p, Parity::GoodParity { critical: true });
        // exponent α + 1/2 → bad parity
        let p = classify_parity(&[(rho(), rat(7, 2))], &sc);
        assert_eq!(p, Parity::BadParity);
        // exponent 1: good parity but 1 alone does not contain α = 3
        let p = classify_parity(&[(rho(), rat(1, 1))], &sc);
        assert_eq!(p, Parity::GoodParity { critical: false });
    }

    #[test]
    fn decompose_full_good_parity_is_identity() {
        let psi = ArthurParameter::new(
            sp(8),
            vec![
                ArthurSummand::new(rho(), 1, 3),
                ArthurSummand::new(rho(), 3, 3),
                ArthurSummand::new(rho(), 5, 1),
            ],
        )
        .unwrap();
        let (pos, ngp, gp) = decompose_to_gp(&psi).unwrap();
        assert!(pos.is_empty());
        assert!(ngp.is_empty());
        assert_eq!(gp, psi);
    }

    #[test]
    fn decompose_extracts_twisted_and_ngp_pairs() {
        // ρ|·|^{0.3}⊗S_1⊗S_1 ⊕ dual ⊕ S_3⊗S_3 of Sp_5
        let psi = ArthurParameter::new(
            sp(5),
            vec![
                ArthurSummand::twisted(rho(), 1, 1, rat(3, 10)),
                ArthurSummand::twisted(rho(), 1, 1, rat(-3, 10)),
                ArthurSummand::new(rho(), 3, 3),
            ],
        )
        .unwrap();
        let (pos, ngp, gp) = decompose_to_gp(&psi).unwrap();
        assert_eq!(pos.len(), 1);
        assert_eq!(pos[0].x, rat(3, 10));
        assert!(ngp.is_empty());
        assert_eq!(gp.total_dim(), 9);

        // non-self-dual pair at x = 0
        let chi = CuspLabel::new("chi", 1, crate::label::Duality::NonSelfDual);
        let psi = ArthurParameter::new(
            sp(5),
            vec![
                ArthurSummand::new(chi.clone(), 1, 1),
                ArthurSummand::new(chi.contragredient(), 1, 1),
                ArthurSummand::new(rho(), 3, 3),
            ],
        )
        .unwrap();
        let (pos, ngp, _) = decompose_to_gp(&psi).unwrap();
        assert!(pos.is_empty());
        assert_eq!(ngp.len(), 1);
        assert_eq!(ngp[0].rho.name, "chi");
    }
}
