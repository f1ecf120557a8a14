//! The hyperplane-region algorithm for the candidate unitary dual: carve the
//! twist space of each Speh tuple by the reducibility walls, enumerate the
//! chambers with exact witnesses, contract them under the four equivalence
//! moves, and report which regions land on a good-parity Arthur point.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corank::enumerate_arthur_gp_levels;
use crate::decide::Decider;
use crate::error::{Error, Result};
use crate::fourier_motzkin::{feasible_point, is_unbounded, Constraint};
use crate::half::{rat_of, rat_to_half, HalfInt, Rat};
use crate::label::{CuspLabel, GroupKind};
use crate::ldata::LData;
use crate::oracle::Oracle;
use crate::params::SpehSymbol;

fn zero() -> Rat {
    Rat::from_integer(0)
}

/// A wall x_i = t or x_i ± x_j = t.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Hyperplane {
    /// Coefficients over x_1..x_l, entries in {-1, 0, 1}, at most two nonzero.
    pub coeffs: Vec<i64>,
    #[serde(with = "crate::half::rat_serde")]
    pub offset: Rat,
}

impl Hyperplane {
    fn eval(&self, point: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(point)
            .map(|(c, x)| Rat::from_integer(*c) * *x)
            .sum::<Rat>()
            - self.offset
    }
}

/// An open chamber of an arrangement: its sign vector, an interior witness,
/// and whether it is bounded.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Chamber {
    pub signs: Vec<i8>,
    pub witness: Vec<RatVecEntry>,
    pub bounded: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVecEntry(#[serde(with = "crate::half::rat_serde")] pub Rat);

impl Chamber {
    pub fn witness_point(&self) -> Vec<Rat> {
        self.witness.iter().map(|e| e.0).collect()
    }
}

/// One region of the candidate construction: a chamber of the arrangement of
/// a Speh tuple over a good-parity Arthur base.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionTriple {
    pub r_prime: i64,
    pub s: i64,
    /// Ordered tuple of (a_i, b_i).
    pub tuple: Vec<(i64, i64)>,
    /// Index into the base list of the arrangement set.
    pub base: usize,
    pub hyperplanes: Vec<Hyperplane>,
    pub chamber: Chamber,
}

/// All region triples for one (sc, ρ, r), the contracted classes, and the
/// subset landing in the candidate set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbarReport {
    pub bases: Vec<LData>,
    /// Corank level of every base.
    pub base_levels: Vec<i64>,
    pub triples: Vec<RegionTriple>,
    /// Class representative of each triple; the virtual non-unitary sink is
    /// usize::MAX.
    pub class_of: Vec<usize>,
    pub in_abar: Vec<bool>,
}

fn strict_system(hyperplanes: &[Hyperplane], signs: &[i8]) -> Vec<Constraint> {
    hyperplanes
        .iter()
        .zip(signs)
        .map(|(h, &s)| {
            let coeffs: Vec<Rat> = h
                .coeffs
                .iter()
                .map(|&c| Rat::from_integer(c * -(s as i64)))
                .collect();
            Constraint::new(coeffs, -h.offset * Rat::from_integer(s as i64), true)
        })
        .collect()
}

/// Enumerate the open chambers of an arrangement by incremental sign
/// assignment with feasibility pruning.
pub fn enumerate_chambers(hyperplanes: &[Hyperplane], dim: usize) -> Vec<Chamber> {
    let mut out = Vec::new();
    let mut signs: Vec<i8> = Vec::new();
    fn rec(
        hyperplanes: &[Hyperplane],
        dim: usize,
        signs: &mut Vec<i8>,
        out: &mut Vec<Chamber>,
    ) {
        if signs.len() == hyperplanes.len() {
            let sys = strict_system(hyperplanes, signs);
            if let Some(witness) = feasible_point(&sys, dim) {
                let bounded = !is_unbounded(&sys, dim);
                out.push(Chamber {
                    signs: signs.clone(),
                    witness: witness.into_iter().map(RatVecEntry).collect(),
                    bounded,
                });
            }
            return;
        }
        for s in [1i8, -1] {
            signs.push(s);
            let sys = strict_system(&hyperplanes[..signs.len()], signs);
            if feasible_point(&sys, dim).is_some() {
                rec(hyperplanes, dim, signs, out);
            }
            signs.pop();
        }
    }
    rec(hyperplanes, dim, &mut signs, &mut out);
    out
}

/// The ordered tuples of pairs (a_i, b_i) with Σ a_i b_i = n.
pub fn speh_tuples(n: i64) -> Vec<Vec<(i64, i64)>> {
    fn rec(remaining: i64, acc: &mut Vec<(i64, i64)>, out: &mut Vec<Vec<(i64, i64)>>) {
        if remaining == 0 {
            if !acc.is_empty() {
                out.push(acc.clone());
            }
            return;
        }
        for a in 1..=remaining {
            for b in 1..=remaining / a {
                if a * b <= remaining {
                    acc.push((a, b));
                    rec(remaining - a * b, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// The wall set of a tuple over a base.
pub fn walls_for(
    oracle: &Oracle,
    rho: &CuspLabel,
    tuple: &[(i64, i64)],
    base: &LData,
    sc: &crate::params::SupercuspidalData,
) -> Result<Vec<Hyperplane>> {
    let l = tuple.len();
    let mut walls = Vec::new();
    for (i, (a, b)) in tuple.iter().enumerate() {
        for t in oracle.base_points(rho, *a, *b, base, sc)? {
            let mut coeffs = vec![0i64; l];
            coeffs[i] = 1;
            walls.push(Hyperplane { coeffs, offset: t });
        }
    }
    for i in 0..l {
        for j in (i + 1)..l {
            let (a1, b1) = tuple[i];
            let (a2, b2) = tuple[j];
            for t in oracle.pair_points(rho, a1, b1, a2, b2)? {
                for sj in [1i64, -1] {
                    let mut coeffs = vec![0i64; l];
                    coeffs[i] = 1;
                    coeffs[j] = sj;
                    walls.push(Hyperplane { coeffs, offset: t });
                }
            }
        }
    }
    // dedupe walls equal up to sign
    let mut seen: BTreeSet<(Vec<i64>, Rat)> = BTreeSet::new();
    let mut out = Vec::new();
    for w in walls {
        let neg: (Vec<i64>, Rat) = (w.coeffs.iter().map(|c| -c).collect(), -w.offset);
        let key = (w.coeffs.clone(), w.offset);
        if seen.contains(&key) || seen.contains(&neg) {
            continue;
        }
        seen.insert(key);
        out.push(w);
    }
    Ok(out)
}

/// Steps 1–2 of the candidate algorithm: all region triples for corank ≤ r.
pub fn build_arrangement(
    sc: &crate::params::SupercuspidalData,
    rho: &CuspLabel,
    r: i64,
    oracle: &Oracle,
    decider: &mut Decider,
) -> Result<AbarReport> {
    let levels = enumerate_arthur_gp_levels(sc, rho, r, decider)?;
    let mut bases: Vec<LData> = Vec::new();
    let mut base_levels: Vec<i64> = Vec::new();
    for (s, level) in levels.iter().enumerate() {
        for pi in level {
            bases.push(pi.clone());
            base_levels.push(s as i64);
        }
    }
    let mut triples: Vec<RegionTriple> = Vec::new();
    for r_prime in 0..=r {
        for (bi, base) in bases.iter().enumerate() {
            let s = base_levels[bi];
            if s > r_prime {
                continue;
            }
            if r_prime == s {
                triples.push(RegionTriple {
                    r_prime,
                    s,
                    tuple: Vec::new(),
                    base: bi,
                    hyperplanes: Vec::new(),
                    chamber: Chamber { signs: Vec::new(), witness: Vec::new(), bounded: true },
                });
                continue;
            }
            for tuple in speh_tuples(r_prime - s) {
                let walls = walls_for(oracle, rho, &tuple, base, sc)?;
                for chamber in enumerate_chambers(&walls, tuple.len()) {
                    triples.push(RegionTriple {
                        r_prime,
                        s,
                        tuple: tuple.clone(),
                        base: bi,
                        hyperplanes: walls.clone(),
                        chamber,
                    });
                }
            }
        }
    }
    Ok(AbarReport {
        bases,
        base_levels,
        triples,
        class_of: Vec::new(),
        in_abar: Vec::new(),
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Locate the triple whose chamber contains the point, for a given tuple and
/// base.
fn locate(
    report: &AbarReport,
    tuple: &[(i64, i64)],
    base: usize,
    point: &[Rat],
) -> Result<usize> {
    for (idx, t) in report.triples.iter().enumerate() {
        if t.base != base || t.tuple != tuple {
            continue;
        }
        if tuple.is_empty() {
            return Ok(idx);
        }
        let ok = t
            .hyperplanes
            .iter()
            .zip(&t.chamber.signs)
            .all(|(h, &s)| {
                let v = h.eval(point);
                (s == 1 && v > zero()) || (s == -1 && v < zero())
            });
        if ok {
            return Ok(idx);
        }
    }
    Err(Error::invalid("no chamber contains the slice point"))
}

/// A strictly interior point of chamber ∩ {substituted plane}, expressed in
/// the reduced coordinates after dropping `drop` (which were substituted).
fn slice_point(
    triple: &RegionTriple,
    substitute: &dyn Fn(&[Rat]) -> Vec<Rat>,
    reduced_dim: usize,
) -> Option<Vec<Rat>> {
    // build the strict system in the reduced coordinates by substituting
    let sys: Vec<Constraint> = triple
        .hyperplanes
        .iter()
        .zip(&triple.chamber.signs)
        .map(|(h, &s)| {
            // evaluate the affine map coordinate-wise on basis vectors
            let base_val = {
                let origin = vec![zero(); reduced_dim];
                h.eval(&substitute(&origin))
            };
            let mut coeffs = Vec::with_capacity(reduced_dim);
            for k in 0..reduced_dim {
                let mut e = vec![zero(); reduced_dim];
                e[k] = Rat::from_integer(1);
                coeffs.push(h.eval(&substitute(&e)) - base_val);
            }
            let sense = -(s as i64);
            Constraint::new(
                coeffs.iter().map(|c| *c * Rat::from_integer(sense)).collect(),
                base_val * Rat::from_integer(s as i64),
                true,
            )
        })
        .collect();
    feasible_point(&sys, reduced_dim)
}

/// Step 3: contract the triples under the four moves and mark the candidate
/// classes. `decider` evaluates the good-parity Arthur membership in (3-3).
pub fn contract_equivalence(
    report: &mut AbarReport,
    sc: &crate::params::SupercuspidalData,
    rho: &CuspLabel,
    oracle: &Oracle,
) -> Result<()> {
    let n = report.triples.len();
    let sink = n; // the non-unitary class
    let mut uf = UnionFind::new(n + 1);
    let alpha = sc.alpha(rho)?;
    for idx in 0..n {
        let triple = report.triples[idx].clone();
        let l = triple.tuple.len();
        if l == 0 {
            continue;
        }
        // (3-1): unbounded chambers are not unitary
        if !triple.chamber.bounded {
            uf.union(idx, sink);
            continue;
        }
        for i in 0..l {
            // (3-2): slice x_i = 0
            let sub = |p: &[Rat]| {
                let mut full = Vec::with_capacity(l);
                full.extend_from_slice(&p[..i]);
                full.push(zero());
                full.extend_from_slice(&p[i..]);
                full
            };
            if let Some(y) = slice_point(&triple, &sub, l - 1) {
                let mut tuple_minus = triple.tuple.clone();
                tuple_minus.remove(i);
                let target = locate(report, &tuple_minus, triple.base, &y)?;
                uf.union(idx, target);
            }

            // (3-3): slices x_i = t on the good-parity lattice
            let (a, b) = triple.tuple[i];
            // the coordinate range of the chamber is bounded; scan the
            // lattice points within it
            let lattice_ref = alpha + HalfInt::half_of(a + b);
            for t in lattice_points(&triple, i, lattice_ref)? {
                let sub = |p: &[Rat]| {
                    let mut full = Vec::with_capacity(l);
                    full.extend_from_slice(&p[..i]);
                    full.push(rat_of(t));
                    full.extend_from_slice(&p[i..]);
                    full
                };
                let Some(y) = slice_point(&triple, &sub, l - 1) else { continue };
                let base = &report.bases[triple.base];
                let plus = match oracle.ldata_of_irreducible_induction(rho, a, b, rat_of(t), base) {
                    Ok(ld) => ld,
                    Err(Error::OracleMiss(m)) => return Err(Error::OracleMiss(m)),
                    Err(e) => return Err(e),
                };
                match report.bases.iter().position(|p| *p == plus) {
                    Some(bplus) => {
                        let mut tuple_minus = triple.tuple.clone();
                        tuple_minus.remove(i);
                        let target = locate(report, &tuple_minus, bplus, &y)?;
                        uf.union(idx, target);
                    }
                    None => uf.union(idx, sink),
                }
            }

            // (3-4): diagonal slices against an equal pair
            for j in 0..l {
                if j == i || triple.tuple[i] != triple.tuple[j] {
                    continue;
                }
                if j < i {
                    continue; // handled at (j, i)
                }
                for diag_sign in [1i64, -1] {
                    let sub = |p: &[Rat]| {
                        // x_j = diag_sign * x_i, both replaced by one variable
                        let mut full = vec![zero(); l];
                        let mut src = 0usize;
                        for k in 0..l {
                            if k == j {
                                continue;
                            }
                            full[k] = p[src];
                            src += 1;
                        }
                        full[j] = full[i] * Rat::from_integer(diag_sign);
                        full
                    };
                    let Some(y) = slice_point(&triple, &sub, l - 1) else { continue };
                    let yi = y[i];
                    if abs_rat(yi) == Rat::new(1, 2) {
                        return Err(Error::invalid("diagonal slice sits on ±1/2"));
                    }
                    if abs_rat(yi) > Rat::new(1, 2) {
                        uf.union(idx, sink);
                    } else {
                        let mut tuple_minus = triple.tuple.clone();
                        tuple_minus.remove(j);
                        tuple_minus.remove(i);
                        let mut y_minus = y.clone();
                        y_minus.remove(i);
                        let target = locate(report, &tuple_minus, triple.base, &y_minus)?;
                        uf.union(idx, target);
                    }
                }
            }
        }
    }
    // classes containing a zero-tuple triple are in the candidate set
    let mut class_in: BTreeSet<usize> = BTreeSet::new();
    for idx in 0..n {
        if report.triples[idx].tuple.is_empty() {
            class_in.insert(uf.find(idx));
        }
    }
    report.class_of = (0..n)
        .map(|i| {
            let c = uf.find(i);
            if uf.find(sink) == c && !class_in.contains(&c) {
                usize::MAX
            } else {
                c
            }
        })
        .collect();
    report.in_abar = (0..n).map(|i| class_in.contains(&uf.find(i))).collect();
    Ok(())
}

fn abs_rat(x: Rat) -> Rat {
    use num_traits::Signed;
    x.abs()
}

/// The good-parity lattice points t ≡ lattice_ref (mod 1) inside the
/// x_i-range of a bounded chamber.
fn lattice_points(triple: &RegionTriple, _i: usize, lattice_ref: HalfInt) -> Result<Vec<HalfInt>> {
    // the coordinate range: extremize x_i over the chamber by scanning the
    // wall offsets, enough for walls with entries in {-1, 0, 1}
    let mut bound = Rat::from_integer(1);
    for h in &triple.hyperplanes {
        let a = abs_rat(h.offset) * Rat::from_integer(2) + Rat::from_integer(2);
        if a > bound {
            bound = a;
        }
    }
    let lo = -bound;
    let hi = bound;
    let mut t = lattice_ref;
    // normalize to the integer part of lo on the lattice
    while rat_of(t) > lo {
        t -= HalfInt::ONE;
    }
    let mut out = Vec::new();
    while rat_of(t) <= hi {
        out.push(t);
        t += HalfInt::ONE;
    }
    Ok(out)
}

/// Full pipeline: arrangement, contraction, report.
pub fn abar_regions(
    sc: &crate::params::SupercuspidalData,
    rho: &CuspLabel,
    r: i64,
    oracle: &Oracle,
    decider: &mut Decider,
) -> Result<AbarReport> {
    let mut report = build_arrangement(sc, rho, r, oracle, decider)?;
    contract_equivalence(&mut report, sc, rho, oracle)?;
    Ok(report)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum AbarMembership {
    InAbar,
    NotInAbar,
    Unknown,
}

/// Locate the point of a Speh tuple over a base and report the verdict of
/// its chamber. Points on a wall return Unknown.
pub fn abar_membership(
    report: &AbarReport,
    tuple: &[(i64, i64)],
    base: &LData,
    point: &[Rat],
) -> Result<AbarMembership> {
    let base_idx = report
        .bases
        .iter()
        .position(|b| b == base)
        .ok_or_else(|| Error::invalid("base is not a good-parity Arthur member of the table"))?;
    for (idx, t) in report.triples.iter().enumerate() {
        if t.base != base_idx || t.tuple != tuple {
            continue;
        }
        if t.hyperplanes.iter().any(|h| h.eval(point) == zero()) {
            return Ok(AbarMembership::Unknown);
        }
        let ok = t
            .hyperplanes
            .iter()
            .zip(&t.chamber.signs)
            .all(|(h, &s)| {
                let v = h.eval(point);
                (s == 1 && v > zero()) || (s == -1 && v < zero())
            });
        if ok {
            return Ok(if report.in_abar[idx] {
                AbarMembership::InAbar
            } else {
                AbarMembership::NotInAbar
            });
        }
    }
    Err(Error::invalid("no chamber of the table matches the query"))
}

/// The even-multiplicity unitarity criterion for twisted Speh factors with
/// |x| < 1/2 over a unitary Arthur base: every factor whose untwisted
/// induction against the base is reducible must occur an even number of
/// times.
pub fn aplus_unitary_criterion(
    factors: &[SpehSymbol],
    base: &LData,
    sc: &crate::params::SupercuspidalData,
    oracle: &Oracle,
) -> Result<bool> {
    for f in factors {
        if abs_rat(f.x) >= Rat::new(1, 2) {
            return Err(Error::pre("factors must have |x| < 1/2"));
        }
    }
    for f in factors {
        if f.x == zero() {
            continue;
        }
        let points = oracle.base_points(&f.rho, f.a, f.b, base, sc)?;
        let reducible = points.contains(&zero());
        if reducible {
            let count = factors
                .iter()
                .filter(|g| g.rho == f.rho && g.a == f.a && g.b == f.b)
                .count();
            if count % 2 == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl AbarReport {
    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "| tuple | base | signs | bounded | witness | verdict |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for (i, t) in self.triples.iter().enumerate() {
            let tuple = if t.tuple.is_empty() {
                "()".to_string()
            } else {
                format!("{:?}", t.tuple)
            };
            let signs: String = t
                .chamber
                .signs
                .iter()
                .map(|&x| if x > 0 { '+' } else { '-' })
                .collect();
            let witness: Vec<String> =
                t.chamber.witness.iter().map(|w| w.0.to_string()).collect();
            let verdict = if self.in_abar.get(i).copied().unwrap_or(false) {
                "candidate"
            } else if self.class_of.get(i).copied() == Some(usize::MAX) {
                "not unitary"
            } else {
                "indeterminate"
            };
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | ({}) | {} |",
                tuple,
                self.bases[t.base],
                signs,
                t.chamber.bounded,
                witness.join(", "),
                verdict
            );
        }
        s
    }
}

// ---------------------------------------------------------------------------
// reduction of a general parameter to Speh factors over the good-parity part
// ---------------------------------------------------------------------------

/// A general L-parameter given as a formal multiset of ρ|·|^y ⊗ S_c.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GenLParam {
    pub kind: GroupKind,
    pub summands: Vec<GenSummand>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GenSummand {
    pub rho: CuspLabel,
    #[serde(with = "crate::half::rat_serde")]
    pub y: Rat,
    pub c: i64,
}

fn is_gp_summand(kind: GroupKind, s: &GenSummand) -> bool {
    if !s.rho.is_self_dual() {
        return false;
    }
    let Some(y) = rat_to_half(s.y) else { return false };
    let top = y + HalfInt::half_of(s.c - 1);
    match s.rho.eps(kind) {
        Ok(eps) => top.same_class(eps),
        Err(_) => false,
    }
}

/// Extract the Speh factors of the non-good-parity part of a parameter by
/// the minimal-ladder rule, returning the factors and the good-parity rest.
pub fn abar_cand_decompose(phi: &GenLParam) -> Result<(Vec<SpehSymbol>, GenLParam)> {
    let mut rest: Vec<GenSummand> = Vec::new();
    let mut pool: Vec<GenSummand> = Vec::new();
    for s in &phi.summands {
        if is_gp_summand(phi.kind, s) {
            rest.push(s.clone());
        } else {
            pool.push(s.clone());
        }
    }
    let mut factors: Vec<SpehSymbol> = Vec::new();
    while !pool.is_empty() {
        // pair off duals and keep the y ≤ 0 representatives
        let reps: Vec<GenSummand> = pool
            .iter()
            .filter(|s| {
                s.y < zero()
                    || (s.y == zero()
                        && (!s.rho.is_self_dual() && s.rho.name <= s.rho.contragredient().name))
            })
            .cloned()
            .collect();
        if reps.is_empty() {
            return Err(Error::invalid("non-good-parity summands do not pair into duals"));
        }
        // the ladder data of each representative
        let ladder_len = |s: &GenSummand| -> i64 {
            let mut beta = 1i64;
            loop {
                let next = GenSummand { rho: s.rho.clone(), y: s.y + Rat::from_integer(beta), c: s.c };
                let dual = GenSummand {
                    rho: next.rho.contragredient(),
                    y: -next.y,
                    c: next.c,
                };
                if pool.contains(&next) && (pool.contains(&dual) || next == dual) {
                    beta += 1;
                } else {
                    return beta;
                }
            }
        };
        // (i') lowest bottom (1-c)/2 + y, (ii') largest top, (iii') least c,
        // (iv') the un-daggered label
        let key = |s: &GenSummand| {
            let beta = ladder_len(s);
            let bottom = Rat::new(1 - s.c, 2) + s.y;
            let xi = Rat::new(1 - s.c, 2) + s.y + Rat::new(s.c + beta, 2) - Rat::from_integer(1);
            let top = Rat::new(s.c + beta, 2) - Rat::from_integer(1) + xi;
            (bottom, -top, s.c, s.rho.name.ends_with('^'), s.rho.name.clone())
        };
        let chosen = reps.iter().min_by_key(|s| key(s)).unwrap().clone();
        let beta = ladder_len(&chosen);
        let xi = Rat::new(1 - chosen.c, 2) + chosen.y + Rat::new(chosen.c + beta, 2)
            - Rat::from_integer(1);
        // remove the ladder and its duals from the pool
        for rstep in 0..beta {
            let el = GenSummand {
                rho: chosen.rho.clone(),
                y: chosen.y + Rat::from_integer(rstep),
                c: chosen.c,
            };
            let dual = GenSummand { rho: el.rho.contragredient(), y: -el.y, c: el.c };
            let pos = pool
                .iter()
                .position(|s| *s == el)
                .ok_or_else(|| Error::invalid("ladder element vanished from the pool"))?;
            pool.remove(pos);
            if dual != el {
                let pos = pool
                    .iter()
                    .position(|s| *s == dual)
                    .ok_or_else(|| Error::invalid("dual ladder element missing"))?;
                pool.remove(pos);
            }
        }
        factors.push(SpehSymbol { rho: chosen.rho.clone(), a: chosen.c, b: beta, x: xi });
    }
    factors.sort();
    rest.sort();
    Ok((factors, GenLParam { kind: phi.kind, summands: rest }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corank::standard_sc;
    use crate::half::rat;

    #[test]
    fn corank_one_regions_alpha_three_halves() {
        let (sc, rho) = standard_sc(HalfInt::half_of(3)).unwrap();
        let oracle = Oracle::default();
        let mut d = Decider::default();
        let report = abar_regions(&sc, &rho, 1, &oracle, &mut d).unwrap();
        // the ((1,1)) tuple over the supercuspidal base: walls ±3/2 carve
        // three chambers, with only the middle one a candidate
        let ones: Vec<usize> = report
            .triples
            .iter()
            .enumerate()
            .filter(|(_, t)| t.tuple == vec![(1, 1)] && report.base_levels[t.base] == 0)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(ones.len(), 3);
        let in_flags: Vec<bool> = ones.iter().map(|&i| report.in_abar[i]).collect();
        assert_eq!(in_flags.iter().filter(|&&b| b).count(), 1);
        for &i in &ones {
            let t = &report.triples[i];
            let inside = t.chamber.bounded;
            assert_eq!(report.in_abar[i], inside);
            if !inside {
                assert_eq!(report.class_of[i], usize::MAX);
            }
        }
        // membership query: 0 < x < 3/2 is a candidate, x = 3/2 sits on a wall
        let base = LData::tempered_only(sc.rep.clone());
        let m = abar_membership(&report, &[(1, 1)], &base, &[rat(1, 2)]).unwrap();
        assert_eq!(m, AbarMembership::InAbar);
        let m = abar_membership(&report, &[(1, 1)], &base, &[rat(3, 2)]).unwrap();
        assert_eq!(m, AbarMembership::Unknown);
        let m = abar_membership(&report, &[(1, 1)], &base, &[rat(2, 1)]).unwrap();
        assert_eq!(m, AbarMembership::NotInAbar);
    }

    #[test]
    fn speh_tuple_counts() {
        // Σ a_i b_i = 2: ((1,1),(1,1)), ((2,1)), ((1,2))
        assert_eq!(speh_tuples(2).len(), 3);
        assert_eq!(speh_tuples(1), vec![vec![(1, 1)]]);
    }

    #[test]
    fn decompose_pure_gp_is_identity() {
        let rho = CuspLabel::orth("rho");
        let phi = GenLParam {
            kind: GroupKind::Sp,
            summands: vec![GenSummand { rho, y: rat(0, 1), c: 3 }],
        };
        let (factors, rest) = abar_cand_decompose(&phi).unwrap();
        assert!(factors.is_empty());
        assert_eq!(rest, phi);
    }

    #[test]
    fn decompose_extracts_twisted_factor() {
        // u_ρ(1,1)|·|^{0.3}: summands ρ|·|^{±0.3} ⊗ S_1
        let rho = CuspLabel::orth("rho");
        let phi = GenLParam {
            kind: GroupKind::Sp,
            summands: vec![
                GenSummand { rho: rho.clone(), y: rat(3, 10), c: 1 },
                GenSummand { rho: rho.clone(), y: rat(-3, 10), c: 1 },
                GenSummand { rho, y: rat(0, 1), c: 1 },
            ],
        };
        let (factors, rest) = abar_cand_decompose(&phi).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].a, 1);
        assert_eq!(factors[0].b, 1);
        assert_eq!(factors[0].x, rat(-3, 10));
        assert_eq!(rest.summands.len(), 1);
    }

    #[test]
    fn decompose_reads_ladders() {
        // u_ρ(2,2)|·|^{1/4}: exponents ±(1/4±1/2) ⊗ S_2:
        // {-3/4, -1/4 (dual 1/4), 3/4} with c = 2
        let rho = CuspLabel::orth("rho");
        let mk = |n: i64, d: i64| GenSummand { rho: rho.clone(), y: rat(n, d), c: 2 };
        let phi = GenLParam {
            kind: GroupKind::Sp,
            summands: vec![mk(-1, 4), mk(1, 4), mk(-3, 4), mk(3, 4)],
        };
        let (factors, rest) = abar_cand_decompose(&phi).unwrap();
        assert!(rest.summands.is_empty());
        assert_eq!(factors.len(), 1);
        assert_eq!((factors[0].a, factors[0].b), (2, 2));
        assert_eq!(abs_rat(factors[0].x), rat(1, 4));
    }
}
