//! Regenerates the committed fixture documents under fixtures/.

use std::collections::BTreeMap;
use std::fs;

use arthurkit_core::corank::standard_sc;
use arthurkit_core::ems::{row, row_h, ExtendedMultiSegment};
use arthurkit_core::half::HalfInt;
use arthurkit_core::label::{CuspLabel, GroupKind, GroupType};
use arthurkit_core::ldata::{LData, LSegment};
use arthurkit_core::oracle::base_id;
use arthurkit_core::params::{EnhancedTempered, SupercuspidalData};

fn save(name: &str, text: String) {
    let path = format!("fixtures/{name}");
    fs::write(&path, text).unwrap();
    println!("wrote {path}");
}

fn main() {
    let rho = CuspLabel::orth("rho");
    let sp = |n| GroupType::new(GroupKind::Sp, n);
    let so = |n| GroupType::new(GroupKind::OddSO, n);

    // Example 5.3 over Sp(10)
    let e53 = ExtendedMultiSegment::new(
        sp(5),
        vec![(rho.clone(), vec![row(3, -3, 3, 1), row(1, -1, 1, -1), row(0, 0, 0, -1)])],
    )
    .unwrap();
    save("example-5.3.json", serde_json::to_string_pretty(&e53).unwrap());
    save(
        "example-5.3.txt",
        "Sp10 {([3,-3];3,+),([1,-1];1,-),([0,0];0,-)}@rho\n".into(),
    );

    // the Sp(34) symbol of the section-4.2 example
    save(
        "example-4.2-sp34.txt",
        "{([3,0];1,+),([3,2];1,+),([3,3];0,-)}@rho\n".into(),
    );

    // π(0^-,1^+,2^-), the supercuspidal of Sp(8) with α = 3
    let mut eps = BTreeMap::new();
    eps.insert((rho.clone(), 1), -1);
    eps.insert((rho.clone(), 3), 1);
    eps.insert((rho.clone(), 5), -1);
    let sc135 = SupercuspidalData::new(
        EnhancedTempered::new(sp(4), vec![(rho.clone(), 1), (rho.clone(), 3), (rho.clone(), 5)], eps)
            .unwrap(),
    )
    .unwrap();
    save("example-3.9-sc.json", serde_json::to_string_pretty(&sc135).unwrap());

    // Example 3.9: L(Δ[-1,-1], Δ[0,-2]; π(0^-,1^+,2^-)) of Sp(16)
    let pi39 = LData::new(
        vec![
            LSegment::new(rho.clone(), HalfInt::from_int(-1), HalfInt::from_int(-1)).unwrap(),
            LSegment::new(rho.clone(), HalfInt::from_int(0), HalfInt::from_int(-2)).unwrap(),
        ],
        sc135.rep.clone(),
    )
    .unwrap();
    save("example-3.9.json", serde_json::to_string_pretty(&pi39).unwrap());

    // Example 5.6 over SO(31): both sign variants of the tempered part
    let temp = |signs: [i8; 3]| {
        let mut eps = BTreeMap::new();
        eps.insert((rho.clone(), 2), signs[0]);
        eps.insert((rho.clone(), 4), signs[1]);
        eps.insert((rho.clone(), 6), signs[2]);
        EnhancedTempered::new(so(6), vec![(rho.clone(), 2), (rho.clone(), 4), (rho.clone(), 6)], eps)
            .unwrap()
    };
    let seg = |x2: i64, y2: i64| LSegment::new(rho.clone(), HalfInt::new(x2), HalfInt::new(y2)).unwrap();
    let pi561 = LData::new(vec![seg(-1, -5), seg(-1, -1), seg(3, -5)], temp([1, 1, 1])).unwrap();
    let pi562 = LData::new(vec![seg(-1, -5), seg(-1, -1), seg(3, -5)], temp([-1, 1, -1])).unwrap();
    save("example-5.6-1.json", serde_json::to_string_pretty(&pi561).unwrap());
    save("example-5.6-2.json", serde_json::to_string_pretty(&pi562).unwrap());

    // tempered packet parameter ψ = ρ⊗S_2⊗S_2 + ρ'⊗S_1⊗S_1 of Sp(6)
    let rho2 = CuspLabel::new("rho'", 3, arthurkit_core::label::Duality::Orthogonal);
    let psi = arthurkit_core::params::ArthurParameter::new(
        sp(3),
        vec![
            arthurkit_core::params::ArthurSummand::new(rho.clone(), 2, 2),
            arthurkit_core::params::ArthurSummand::new(rho2, 1, 1),
        ],
    )
    .unwrap();
    save("example-packet-s2s2.json", serde_json::to_string_pretty(&psi).unwrap());

    // the α = 3/2 wall tables of the worked region example. The (2,1) and
    // (1,2) entries are the displayed reducibility points; the (1,1) walls
    // over the corank-one bases come from the corank-two reducibility lines
    // x = ±3/2, x = ±y ± 1 specialized at the base point.
    let (sc32, rho32) = standard_sc(HalfInt::half_of(3)).unwrap();
    let sc_base = LData::tempered_only(sc32.rep.clone());
    let l_half = LData::new(
        vec![LSegment::new(rho32.clone(), HalfInt::new(-1), HalfInt::new(-1)).unwrap()],
        sc32.rep.clone(),
    )
    .unwrap();
    let l_three_halves = LData::new(
        vec![LSegment::new(rho32.clone(), HalfInt::new(-3), HalfInt::new(-3)).unwrap()],
        sc32.rep.clone(),
    )
    .unwrap();
    let delta_temp = {
        // T_{I,3/2,1}(σ): the chain S_2 climbs to S_4
        let mut eps = BTreeMap::new();
        eps.insert((rho32.clone(), 4), -1);
        let mut phi = vec![(rho32.clone(), 4)];
        for (r, a) in &sc32.rep.phi {
            if r != &rho32 {
                phi.push((r.clone(), *a));
                eps.insert((r.clone(), *a), sc32.rep.eps_of(r, *a).unwrap());
            }
        }
        let dim: i64 = phi.iter().map(|(r, a)| r.dim as i64 * a).sum();
        let group = GroupType::of_dual_dim(GroupKind::OddSO, dim).unwrap();
        LData::tempered_only(EnhancedTempered::new(group, phi, eps).unwrap())
    };
    let walls = serde_json::json!({
        "base_walls": [
            {"rho": "rho", "a": 2, "b": 1, "base": base_id(&sc_base), "points": [1, -1, 2, -2]},
            {"rho": "rho", "a": 1, "b": 2, "base": base_id(&sc_base), "points": [1, -1, 2, -2]},
            {"rho": "rho", "a": 1, "b": 1, "base": base_id(&l_half), "points": ["1/2", "-1/2", "3/2", "-3/2"]},
            {"rho": "rho", "a": 1, "b": 1, "base": base_id(&l_three_halves), "points": ["1/2", "-1/2", "3/2", "-3/2", "5/2", "-5/2"]},
            {"rho": "rho", "a": 1, "b": 1, "base": base_id(&delta_temp), "points": ["1/2", "-1/2", "5/2", "-5/2"]}
        ],
        "pair_walls": []
    });
    save("sec-8.3-walls.json", serde_json::to_string_pretty(&walls).unwrap());

    // a supercuspidal base for the half-integral family tests (α = 3/2)
    save("sc-alpha-3-2.json", serde_json::to_string_pretty(&sc32).unwrap());

    // the section 5.2 two-row example {([1,0],1,+),([3,1],1,+)}
    let e52 = ExtendedMultiSegment::new(
        sp(9),
        vec![(rho.clone(), vec![row(1, 0, 1, 1), row(3, 1, 1, 1)])],
    )
    .unwrap();
    save("example-5.2.json", serde_json::to_string_pretty(&e52).unwrap());

    let _ = row_h;
}
