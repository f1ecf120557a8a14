//! The acceptance suite: every criterion below prints one pass/fail line and
//! fails the build when its check breaks.

use std::collections::BTreeMap;
use std::time::Instant;

use arthurkit_core::corank::{corank_report, standard_sc};
use arthurkit_core::decide::{condition_a, Decider, DecisionVariant};
use arthurkit_core::ems::{row, row_h, ExtendedMultiSegment};
use arthurkit_core::half::HalfInt;
use arthurkit_core::label::{CuspLabel, GroupKind, GroupType};
use arthurkit_core::ldata::{LData, LSegment};
use arthurkit_core::oracle::{Oracle, WallConfig};
use arthurkit_core::ops::canonical_form;
use arthurkit_core::packet::{pi_of_traced, psi_set_of_supercuspidal, PiOfVariant};
use arthurkit_core::params::{ArthurParameter, ArthurSummand, EnhancedTempered, SupercuspidalData};
use arthurkit_core::regions::{abar_regions, AbarReport};
use arthurkit_core::temper::enumerate_tempered_corank;

fn report(criterion: &str, started: Instant, ok: bool) {
    println!(
        "[{}] {criterion} ({} ms)",
        if ok { "PASS" } else { "FAIL" },
        started.elapsed().as_millis()
    );
    assert!(ok, "acceptance criterion failed: {criterion}");
}

fn rho() -> CuspLabel {
    CuspLabel::orth("1")
}

fn sp(n: u32) -> GroupType {
    GroupType::new(GroupKind::Sp, n)
}

fn so(n: u32) -> GroupType {
    GroupType::new(GroupKind::OddSO, n)
}

fn canonical(e: &ExtendedMultiSegment) -> ExtendedMultiSegment {
    canonical_form(e).unwrap()
}

/// Criterion 1: the full pipeline on the worked Sp(10) example, matching the
/// Langlands data and every intermediate up to canonical form.
#[test]
fn criterion_1_example_5_3_pipeline() {
    let started = Instant::now();
    let e = ExtendedMultiSegment::new(
        sp(5),
        vec![(rho(), vec![row(3, -3, 3, 1), row(1, -1, 1, -1), row(0, 0, 0, -1)])],
    )
    .unwrap();
    let (ld, steps) = pi_of_traced(&e, PiOfVariant::MaxTriangle).unwrap();

    let expected_segments = vec![
        LSegment::new(rho(), HalfInt::from_int(-3), HalfInt::from_int(-3)).unwrap(),
        LSegment::new(rho(), HalfInt::from_int(-1), HalfInt::from_int(-2)).unwrap(),
        LSegment::new(rho(), HalfInt::from_int(0), HalfInt::from_int(-1)).unwrap(),
    ];
    let mut ok = ld.segments() == expected_segments.as_slice();
    ok &= ld.tempered.phi == vec![(rho(), 1)] && ld.tempered.eps_of(&rho(), 1) == Some(1);

    // intermediates
    let e1 = ExtendedMultiSegment::new(
        sp(4),
        vec![(rho(), vec![row(2, -2, 2, 1), row(1, -1, 1, -1), row(0, 0, 0, -1)])],
    )
    .unwrap();
    let e1_max = ExtendedMultiSegment::new(
        sp(4),
        vec![(rho(), vec![row(2, -1, 1, 1), row(0, 0, 0, -1)])],
    )
    .unwrap();
    let e2 = ExtendedMultiSegment::new(
        sp(2),
        vec![(rho(), vec![row(1, 0, 0, 1), row(0, 0, 0, -1)])],
    )
    .unwrap();
    let e3 = ExtendedMultiSegment::new(sp(0), vec![(rho(), vec![row(0, 0, 0, 1)])]).unwrap();

    ok &= steps.len() == 3;
    ok &= canonical(&steps[0].maximal) == canonical(&e);
    ok &= canonical(&steps[0].reduced) == canonical(&e1);
    ok &= canonical(&steps[1].maximal) == canonical(&e1_max);
    ok &= canonical(&steps[1].reduced) == canonical(&e2);
    ok &= canonical(&steps[2].reduced) == canonical(&e3);
    ok &= started.elapsed().as_secs() < 1;
    report("criterion 1: Sp(10) pipeline with intermediates", started, ok);
}

fn sc_135() -> SupercuspidalData {
    let mut eps = BTreeMap::new();
    eps.insert((rho(), 1), -1);
    eps.insert((rho(), 3), 1);
    eps.insert((rho(), 5), -1);
    SupercuspidalData::new(
        EnhancedTempered::new(sp(4), vec![(rho(), 1), (rho(), 3), (rho(), 5)], eps).unwrap(),
    )
    .unwrap()
}

/// Criterion 2: the Sp(16) representation lies in exactly the three listed
/// packets, and its supercuspidal support lies in exactly nine.
#[test]
fn criterion_2_example_3_9() {
    let started = Instant::now();
    let sc = sc_135();
    let pi = LData::new(
        vec![
            LSegment::new(rho(), HalfInt::from_int(-1), HalfInt::from_int(-1)).unwrap(),
            LSegment::new(rho(), HalfInt::from_int(0), HalfInt::from_int(-2)).unwrap(),
        ],
        sc.rep.clone(),
    )
    .unwrap();
    let mut decider = Decider::default();
    let verdict = decider.is_arthur_type(&pi).unwrap();
    let mk = |summands: Vec<(i64, i64)>| {
        ArthurParameter::new(
            sp(8),
            summands
                .into_iter()
                .map(|(a, b)| ArthurSummand::new(rho(), a, b))
                .collect(),
        )
        .unwrap()
    };
    let expected = vec![
        mk(vec![(1, 3), (3, 3), (5, 1)]),
        mk(vec![(2, 4), (2, 2), (5, 1)]),
        mk(vec![(1, 5), (1, 3), (2, 2), (5, 1)]),
    ];
    let mut ok = verdict.arthur && verdict.psi_list.len() == 3;
    for psi in &expected {
        ok &= verdict.psi_list.contains(psi);
    }
    let psis = psi_set_of_supercuspidal(&sc).unwrap();
    ok &= psis.len() == 9;
    ok &= started.elapsed().as_secs() < 10;
    report("criterion 2: three packets and nine supercuspidal parameters", started, ok);
}

fn temp_so31(signs: [i8; 3]) -> EnhancedTempered {
    let mut eps = BTreeMap::new();
    eps.insert((rho(), 2), signs[0]);
    eps.insert((rho(), 4), signs[1]);
    eps.insert((rho(), 6), signs[2]);
    EnhancedTempered::new(so(6), vec![(rho(), 2), (rho(), 4), (rho(), 6)], eps).unwrap()
}

/// Criterion 3: the two SO(31) variants decide oppositely, with the four
/// displayed symbols on the reduced step and the displayed final witness.
#[test]
fn criterion_3_example_5_6() {
    let started = Instant::now();
    let seg = |x2: i64, y2: i64| LSegment::new(rho(), HalfInt::new(x2), HalfInt::new(y2)).unwrap();
    let segs = vec![seg(-1, -5), seg(-1, -1), seg(3, -5)];
    let mut decider = Decider::default();

    let pi1_full = LData::new(segs.clone(), temp_so31([1, 1, 1])).unwrap();
    let v1 = decider.is_arthur_type(&pi1_full).unwrap();
    let mut ok = !v1.arthur;

    let pi1 = LData::new(vec![seg(-1, -1), seg(3, -5)], temp_so31([1, 1, 1])).unwrap();
    let w1 = decider.is_arthur_type(&pi1).unwrap();
    ok &= w1.arthur && w1.witnesses.len() == 4;

    let pi2_full = LData::new(segs, temp_so31([-1, 1, -1])).unwrap();
    let v2 = decider.is_arthur_type(&pi2_full).unwrap();
    ok &= v2.arthur;
    let displayed = ExtendedMultiSegment::new(
        so(15),
        vec![(
            rho(),
            vec![
                row_h(1, -1, 1, 1),
                row_h(5, -1, 1, -1),
                row_h(5, 3, 1, 1),
                row_h(5, 5, 0, -1),
            ],
        )],
    )
    .unwrap();
    ok &= v2.witnesses.contains(&canonical(&displayed));
    ok &= started.elapsed().as_secs() < 10;
    report("criterion 3: SO(31) decisions and witnesses", started, ok);
}

/// Every good-parity Langlands datum over the line of `sc` with corank at
/// most `max_corank` and exponents within the stated bounds.
fn corpus(
    sc: &SupercuspidalData,
    rho: &CuspLabel,
    max_corank: i64,
    bound: HalfInt,
) -> Vec<LData> {
    let alpha = sc.alpha(rho).unwrap();
    let mut segments_by_len: BTreeMap<i64, Vec<LSegment>> = BTreeMap::new();
    for len in 1..=max_corank {
        let mut out = Vec::new();
        // first exponent grid aligned with α
        let mut x = -bound;
        while x <= bound {
            if x.same_class(alpha) {
                let y = x - (len - 1);
                if x + y < HalfInt::ZERO {
                    out.push(LSegment::new(rho.clone(), x, y).unwrap());
                }
            }
            x += HalfInt::HALF;
        }
        segments_by_len.insert(len, out);
    }
    // multisets of segments with total length ≤ max_corank, paired with
    // tempered parts soaking up the remaining corank
    let mut seg_choices: Vec<Vec<LSegment>> = vec![Vec::new()];
    for _ in 0..max_corank {
        let mut next = seg_choices.clone();
        for partial in &seg_choices {
            let used: i64 = partial.iter().map(|s| s.len()).sum();
            for (len, opts) in &segments_by_len {
                if used + len > max_corank {
                    continue;
                }
                for s in opts {
                    // nondecreasing key to avoid duplicate multisets
                    if let Some(last) = partial.last() {
                        if (s.len(), s.x) < (last.len(), last.x) {
                            continue;
                        }
                    }
                    let mut v = partial.clone();
                    v.push(s.clone());
                    next.push(v);
                }
            }
        }
        next.sort();
        next.dedup();
        seg_choices = next;
    }
    let mut corpus = Vec::new();
    for segs in seg_choices {
        let used: i64 = segs.iter().map(|s| s.len()).sum();
        for r_t in 0..=(max_corank - used) {
            for tau in enumerate_tempered_corank(sc, rho, r_t).unwrap() {
                if let Ok(pi) = LData::new(segs.clone(), tau) {
                    corpus.push(pi);
                }
            }
        }
    }
    corpus.sort();
    corpus.dedup();
    corpus
}

/// Criterion 4: the two decision procedures agree on the generated corank ≤ 3
/// corpus across the α grid.
#[test]
fn criterion_4_decider_agreement() {
    let started = Instant::now();
    let mut total = 0usize;
    let mut ok = true;
    for d in 0..=6i64 {
        let alpha = HalfInt::half_of(d);
        let (sc, rho) = standard_sc(alpha).unwrap();
        let bound = alpha + 2i64;
        let mut decider = Decider::default();
        for pi in corpus(&sc, &rho, 3, bound) {
            let a = decider.decide(&pi, DecisionVariant::Upper).unwrap().arthur;
            let b = decider.decide(&pi, DecisionVariant::Lower).unwrap().arthur;
            if a != b {
                println!("  disagreement at alpha={alpha}: {pi}");
                ok = false;
            }
            total += 1;
        }
    }
    println!("  corpus size: {total}");
    ok &= total > 2000;
    ok &= started.elapsed().as_secs() < 300;
    report("criterion 4: both decision procedures agree on the corpus", started, ok);
}

/// Criterion 5: the corank tables and tempered gates reproduce the
/// classification verbatim on the α grid.
#[test]
fn criterion_5_corank_tables() {
    let started = Instant::now();
    let mut ok = true;
    for d in 0..=7i64 {
        let alpha = HalfInt::half_of(d);
        let mut decider = Decider::default();
        let report_ = corank_report(alpha, 3, &mut decider).unwrap();
        if !report_.pass() {
            for r in report_.rows.iter().filter(|r| !r.pass()) {
                println!("  mismatch at alpha={alpha}: {} {}", r.table, r.case);
            }
            ok = false;
        }
    }
    ok &= started.elapsed().as_secs() < 300;
    report("criterion 5: corank tables verbatim on the alpha grid", started, ok);
}

/// Criterion 6: the multiplicity-monotonicity criterion decides the character
/// ladders exactly as the general procedure does.
#[test]
fn criterion_6_condition_a() {
    let started = Instant::now();
    let mut ok = true;
    let mut total = 0usize;
    for d in [0i64, 1, 2, 3, 4, 5, 6] {
        let alpha = HalfInt::half_of(d);
        let (sc, rho) = standard_sc(alpha).unwrap();
        let mut decider = Decider::default();
        // multiplicity vectors over the ladder grid with Σ m ≤ 4
        let mut xs: Vec<HalfInt> = Vec::new();
        let mut x = if alpha.is_integer() { HalfInt::ONE } else { HalfInt::HALF };
        while x <= alpha + 2i64 {
            xs.push(x);
            x += HalfInt::ONE;
        }
        let mut stack: Vec<Vec<usize>> = vec![vec![0; xs.len()]];
        let mut all: Vec<Vec<usize>> = Vec::new();
        while let Some(v) = stack.pop() {
            let sum: usize = v.iter().sum();
            if sum > 0 {
                all.push(v.clone());
            }
            if sum >= 4 {
                continue;
            }
            for i in 0..xs.len() {
                let mut w = v.clone();
                w[i] += 1;
                // canonical order: only bump indices at least as large as the
                // last bumped one
                if w[..i].iter().zip(&v[..i]).all(|(a, b)| a == b) {
                    stack.push(w);
                }
            }
        }
        all.sort();
        all.dedup();
        for mult in all {
            let mut segs = Vec::new();
            for (i, &m) in mult.iter().enumerate() {
                for _ in 0..m {
                    segs.push(LSegment::new(rho.clone(), -xs[i], -xs[i]).unwrap());
                }
            }
            let pi = LData::new(segs, sc.rep.clone()).unwrap();
            let fast = condition_a(&pi, &sc).unwrap();
            let full = decider.is_arthur_type(&pi).unwrap().arthur;
            if fast != full {
                println!("  condition (A) mismatch at alpha={alpha}: {pi}");
                ok = false;
            }
            total += 1;
        }
    }
    println!("  ladder corpus size: {total}");
    ok &= total >= 300;
    ok &= started.elapsed().as_secs() < 120;
    report("criterion 6: condition (A) matches the decision procedure", started, ok);
}

fn alpha_three_halves_walls() -> WallConfig {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../fixtures/sec-8.3-walls.json"
    ))
    .expect("wall fixture");
    serde_json::from_str(&text).unwrap()
}

fn chambers_of<'r>(
    report: &'r AbarReport,
    tuple: &[(i64, i64)],
    level: i64,
) -> Vec<(usize, &'r arthurkit_core::regions::RegionTriple)> {
    report
        .triples
        .iter()
        .enumerate()
        .filter(|(_, t)| t.tuple == tuple && report.base_levels[t.base] == level && t.r_prime - level == tuple.iter().map(|(a, b)| a * b).sum::<i64>())
        .map(|(i, t)| (i, t))
        .collect()
}

/// Criterion 7: the worked α = 3/2 arrangements: three line chambers with one
/// candidate, five chambers for the (2,1) tuple with the middle one the
/// candidate, and 33 plane chambers (17 bounded) with exactly the diamond and
/// the four axis triangles as candidates.
#[test]
fn criterion_7_regions() {
    let started = Instant::now();
    let (sc, rho) = standard_sc(HalfInt::half_of(3)).unwrap();
    let oracle = Oracle::with_config(alpha_three_halves_walls());
    let mut decider = Decider::default();
    let report_ = abar_regions(&sc, &rho, 2, &oracle, &mut decider).unwrap();

    let mut ok = true;

    // ((1,1)) over the supercuspidal: B_1, B_2, B_3 with only B_2 inside
    let b_chambers = chambers_of(&report_, &[(1, 1)], 0);
    ok &= b_chambers.len() == 3;
    let b_candidates: Vec<bool> = b_chambers.iter().map(|(i, _)| report_.in_abar[*i]).collect();
    ok &= b_candidates.iter().filter(|&&b| b).count() == 1;
    for (i, t) in &b_chambers {
        // the candidate is the bounded middle chamber
        ok &= report_.in_abar[*i] == t.chamber.bounded;
    }

    // ((2,1)) over the supercuspidal: D_1..D_5 with only D_3 inside
    let d_chambers = chambers_of(&report_, &[(2, 1)], 0);
    ok &= d_chambers.len() == 5;
    let mut d_sorted: Vec<(&arthurkit_core::regions::RegionTriple, bool)> = d_chambers
        .iter()
        .map(|(i, t)| (*t, report_.in_abar[*i]))
        .collect();
    d_sorted.sort_by_key(|(t, _)| t.chamber.witness_point()[0]);
    ok &= d_sorted.len() == 5;
    let flags: Vec<bool> = d_sorted.iter().map(|(_, f)| *f).collect();
    ok &= flags == vec![false, false, true, false, false];
    ok &= d_sorted[2].0.chamber.bounded
        && !d_sorted[0].0.chamber.bounded
        && !d_sorted[4].0.chamber.bounded;

    // ((1,1),(1,1)): 33 chambers, 17 bounded, 5 candidates: the diamond at
    // the origin and the four axis-adjacent triangles
    let c_chambers = chambers_of(&report_, &[(1, 1), (1, 1)], 0);
    ok &= c_chambers.len() == 33;
    let bounded = c_chambers.iter().filter(|(_, t)| t.chamber.bounded).count();
    ok &= bounded == 17;
    let candidates: Vec<&arthurkit_core::regions::RegionTriple> = c_chambers
        .iter()
        .filter(|(i, _)| report_.in_abar[*i])
        .map(|(_, t)| *t)
        .collect();
    ok &= candidates.len() == 5;
    // identify the five: the origin diamond and triangles pointing along the
    // four half-axes
    let one = arthurkit_core::half::rat(1, 1);
    let zero = arthurkit_core::half::rat(0, 1);
    let shapes: Vec<(bool, bool)> = candidates
        .iter()
        .map(|t| {
            let w = t.chamber.witness_point();
            let origin = w.iter().all(|v| {
                let a = if *v < zero { -*v } else { *v };
                a < one
            });
            (origin, t.chamber.bounded)
        })
        .collect();
    // exactly one candidate hugs the origin; all five are bounded
    ok &= shapes.iter().filter(|(o, _)| *o).count() == 1;
    ok &= shapes.iter().all(|(_, b)| *b);
    ok &= started.elapsed().as_secs() < 30;
    report("criterion 7: the alpha = 3/2 chamber classification", started, ok);
}
