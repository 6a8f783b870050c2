//! Acceptance gate: one test per criterion, each printing a single
//! `PASS`/`FAIL` line. Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use cia_core::grid::{self, Grid};
use cia_core::groebner::{GroebnerBasis, Limits};
use cia_core::ideals::{self, Ideal, Instance, MinorSpec};
use cia_core::poly::{Field, Monomial, PrimeField, Rationals, DEFAULT_PRIME};
use cia_core::proofcheck;
use cia_core::report::VerificationReport;
use cia_core::verify;

/// Instances `(k, l, d)` run at every step that names the desk instances.
const DESK: [(usize, usize, usize); 4] = [(2, 3, 3), (2, 2, 2), (2, 2, 3), (3, 3, 3)];

/// Time budgets.
const CONSTRUCTION_BUDGET: Duration = Duration::from_secs(1);
const GROEBNER_BUDGET: Duration = Duration::from_secs(60);
const DIMENSION_BUDGET: Duration = Duration::from_secs(300);
const CENSUS_BUDGET: Duration = Duration::from_secs(30);
const INTERSECTION_BUDGET: Duration = Duration::from_secs(60);
const TRIPLE_BUDGET: Duration = Duration::from_secs(600);
const CONTAINMENT_BUDGET: Duration = Duration::from_secs(60);
const APPENDIX_BUDGET: Duration = Duration::from_secs(300);

fn limits() -> Limits {
    Limits { chain_criterion: true, ..Limits::default() }
}

fn main_instance(k: usize, l: usize, d: usize) -> Instance {
    Instance::main(k, l, d).unwrap()
}

/// Prints the criterion line and fails the test on `FAIL`.
fn conclude(number: usize, name: &str, passed: bool, detail: &str) {
    println!("criterion {number:>2} {name}: {} ({detail})", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "criterion {number} {name}: {detail}");
}

fn failures(report: &VerificationReport) -> String {
    report
        .failures()
        .take(3)
        .map(|i| format!("{} [{}]", i.name, i.witness.clone().unwrap_or_default()))
        .collect::<Vec<_>>()
        .join("; ")
}

fn specs(listing: &str, d: usize) -> Vec<MinorSpec> {
    let mut v: Vec<MinorSpec> = listing.split_whitespace().map(|t| verify::parse_minor(t, d).unwrap()).collect();
    ideals::canonicalize(&mut v);
    v
}

#[test]
fn criterion_01_construction_fidelity() {
    let t = Instant::now();
    let inst = Instance::new(3, 2, 3, 2, 3).unwrap();
    let j = ideals::ci_ideal(&inst, Rationals).unwrap();
    let j_listed = specs("[12|12] [13|12] [23|12] [12|34] [13|34] [23|34] [12|56] [13|56] [23|56] [135] [246]", 3);
    let i14 = ideals::ideal_is(&inst.grid(), 3, 2, &[1, 4], Rationals, false).unwrap();
    let i14_listed = specs("p11 p21 p31 p14 p24 p34 [12|56] [13|56] [23|56]", 3);
    let j_ok = j.minors() == Some(&j_listed[..]);
    let i_ok = i14.minors() == Some(&i14_listed[..]);
    // The same ideals as polynomials, built from the listings.
    let poly_ok = verify_polys(&j, &j_listed) && verify_polys(&i14, &i14_listed);
    let elapsed = t.elapsed();
    conclude(
        1,
        "construction fidelity",
        j_ok && i_ok && poly_ok && elapsed < CONSTRUCTION_BUDGET,
        &format!(
            "J {} generators match {j_ok}, I_14 {} generators match {i_ok}, polynomials {poly_ok}, {elapsed:.2?}",
            j.generators().len(),
            i14.generators().len()
        ),
    );
}

fn verify_polys(ideal: &Ideal<Rationals>, listed: &[MinorSpec]) -> bool {
    let mut want: Vec<_> = listed
        .iter()
        .map(|m| ideals::minor(ideal.ring(), Rationals, m).unwrap())
        .collect();
    let mut got = ideal.generators().to_vec();
    let key = |p: &cia_core::poly::Polynomial<Rationals>| p.to_string();
    want.sort_by_key(key);
    got.sort_by_key(key);
    want == got
}

#[test]
fn criterion_02_groebner_bases() {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut slowest = Duration::ZERO;
    for (k, l, d) in DESK {
        let t = Instant::now();
        let r = verify::verify_groebner(&main_instance(k, l, d), Rationals, true).unwrap();
        let elapsed = t.elapsed();
        slowest = slowest.max(elapsed);
        let traces: usize = r
            .items
            .iter()
            .filter_map(|i| i.detail.as_ref()?.split(", ").find(|s| s.ends_with("traces replayed"))?.split(' ').next()?.parse::<usize>().ok())
            .sum();
        ok &= r.passed;
        notes.push(format!("({k},{l},{d}) {} ideals {traces} traces {elapsed:.1?}", r.items.len()));
        if !r.passed {
            notes.push(failures(&r));
        }
    }
    conclude(
        2,
        "Groebner bases of I_0 and every I_S",
        ok && slowest < GROEBNER_BUDGET,
        &notes.join(", "),
    );
}

/// Transversal sets counted directly from bit masks, without the library's
/// enumeration.
fn count_transversals(k: usize, l: usize) -> usize {
    let n = k * l;
    let row_of = |y: usize| (y - 1) % k;
    let col_of = |y: usize| (y - 1) / k;
    (0u32..1 << n)
        .filter(|mask| {
            let cells: Vec<usize> = (1..=n).filter(|y| mask & (1 << (y - 1)) != 0).collect();
            let mut rows = vec![0; k];
            cells.iter().for_each(|&y| rows[row_of(y)] += 1);
            rows.iter().all(|&c| c == 1) && cells.iter().any(|&y| col_of(y) != col_of(cells[0]))
        })
        .count()
}

#[test]
fn criterion_03_component_count_and_incomparability() {
    let c23 = 1 + grid::script_l(&Grid::new(2, 3).unwrap()).unwrap().len();
    let c33 = 1 + grid::script_l(&Grid::new(3, 3).unwrap()).unwrap().len();
    let mut formula_ok = true;
    for k in 2..=4 {
        for l in k..=4 {
            let enumerated = 1 + count_transversals(k, l);
            formula_ok &= enumerated == verify::component_formula(k, l);
            formula_ok &= enumerated == 1 + grid::script_l(&Grid::new(k, l).unwrap()).unwrap().len();
        }
    }
    let by_membership = verify::verify_incomparable_by_membership(&main_instance(2, 3, 3), Rationals, &limits()).unwrap();
    let by_witness = verify::verify_incomparable_by_witness(&main_instance(3, 3, 3)).unwrap();
    let ok = c23 == 7 && c33 == 25 && formula_ok && by_membership.passed && by_witness.passed;
    conclude(
        3,
        "component counts and incomparability",
        ok,
        &format!(
            "counts {c23} and {c33}, formula for 2<=k<=l<=4 {formula_ok}, membership pairs {} passed {}, witness pairs {} passed {} {}",
            by_membership.items.len(),
            by_membership.passed,
            by_witness.items.len(),
            by_witness.passed,
            failures(&by_membership) + &failures(&by_witness)
        ),
    );
}

#[test]
fn criterion_04_generator_counts_and_classes() {
    let inst = main_instance(3, 3, 3);
    let g = inst.grid();
    let i0 = ideals::ideal_i0_minimal(&g, 3, 2, 3, Rationals).unwrap().generators().len();
    let i159 = ideals::ideal_is(&g, 3, 2, &[1, 5, 9], Rationals, false).unwrap().generators().len();
    let i126 = ideals::ideal_is(&g, 3, 2, &[1, 2, 6], Rationals, false).unwrap().generators().len();
    let table = verify::component_table(&inst, &limits()).unwrap();
    let shape: Vec<(usize, usize)> = table.iter().map(|r| (r.occurrences, r.generators)).collect();
    let ok = (i0, i159, i126) == (54, 18, 21) && shape == vec![(1, 54), (6, 18), (18, 21)];
    conclude(
        4,
        "generator counts and symmetry classes",
        ok,
        &format!("|G(I_0)| {i0}, I_159 {i159}, I_126 {i126}, classes (size, generators) {shape:?}"),
    );
}

#[test]
fn criterion_05_dimensions() {
    let t = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    let mut count = 0;
    for k in 2..=4 {
        for l in k..=4 {
            for d in l..=4 {
                let (r, rows) = verify::verify_dimensions(&main_instance(k, l, d), &limits()).unwrap();
                count += 1;
                ok &= r.passed;
                if !r.passed {
                    notes.push(format!("({k},{l},{d}) {}", failures(&r)));
                }
                let i0 = &rows[0];
                notes.push(format!("({k},{l},{d}) I_0 {} I_S {}", i0.dimension, rows[1].dimension));
            }
        }
    }
    let elapsed = t.elapsed();
    conclude(
        5,
        "Stanley-Reisner dimensions",
        ok && elapsed < DIMENSION_BUDGET,
        &format!("{count} instances, {elapsed:.1?}: {}", notes.join(", ")),
    );
}

#[test]
fn criterion_06_point_census() {
    let mut ok = true;
    let mut notes = Vec::new();
    for (q, k, l, d) in [(2, 2, 2, 2), (2, 2, 2, 3), (2, 2, 3, 3), (3, 2, 2, 2), (3, 2, 2, 3)] {
        let t = Instant::now();
        let (r, c) = verify::verify_census(&main_instance(k, l, d), q, cia_core::variety::DEFAULT_POINT_BOUND, false).unwrap();
        let elapsed = t.elapsed();
        ok &= r.passed && elapsed < CENSUS_BUDGET;
        if (q, k, l, d) == (2, 2, 3, 3) {
            ok &= c.points == 262_144;
        }
        notes.push(format!(
            "GF({q}) ({k},{l},{d}) {} points missing {} extra {} {elapsed:.1?}",
            c.points, c.missing, c.extra
        ));
    }
    notes.push("GF(3) at (2,3,3) not run (stretch)".into());
    conclude(6, "set-theoretic decomposition by census", ok, &notes.join(", "));
}

#[test]
fn criterion_07_intersection_equals_j() {
    let t = Instant::now();
    let r = verify::verify_intersection(&main_instance(2, 2, 2), &limits()).unwrap();
    let elapsed = t.elapsed();
    conclude(
        7,
        "ideal-theoretic decomposition at (2,2,2)",
        r.passed && elapsed < INTERSECTION_BUDGET,
        &format!("{} checks, {elapsed:.2?} {}", r.items.len(), failures(&r)),
    );
}

#[test]
fn criterion_08_radicality_certificates() {
    let mut desk_ok = true;
    let mut notes = Vec::new();
    for (k, l, d) in DESK {
        let r = verify::verify_radical(&main_instance(k, l, d), Rationals, &limits()).unwrap();
        desk_ok &= r.passed;
        notes.push(format!("({k},{l},{d}) {} bases squarefree {}", r.items.len(), r.passed));
    }
    let t = Instant::now();
    let (r, gb) = verify::verify_triple_example(Rationals, &limits()).unwrap();
    let elapsed = t.elapsed();
    let in_budget = elapsed < TRIPLE_BUDGET;
    notes.push(format!(
        "stretch: lex basis of the six 3-minors has {} elements in {elapsed:.1?}, squarefree {} {}",
        gb.len(),
        r.passed,
        failures(&r)
    ));
    // Over budget the criterion falls back to the desk instances only.
    let ok = desk_ok && (!in_budget || r.passed);
    conclude(8, "radicality certificates", ok, &notes.join(", "));
}

#[test]
fn criterion_09_containment_example() {
    let t = Instant::now();
    let r = verify::verify_containment_example(Rationals, &limits()).unwrap();
    let elapsed = t.elapsed();
    conclude(
        9,
        "containments on the 2x4 grid",
        r.passed && elapsed < CONTAINMENT_BUDGET,
        &format!("{} checks, {elapsed:.2?} {}", r.items.len(), failures(&r)),
    );
}

#[test]
fn criterion_10_appendix() {
    let t = Instant::now();
    let ids = verify::verify_identities(&[2, 3, 4, 5]).unwrap();
    let tables = proofcheck::verify_tables(&[4, 5, 6]).unwrap();
    let rows = proofcheck::table_row_ids().len();
    let covered = tables.items.iter().filter(|i| i.name.starts_with("coverage ") && i.passed).count();
    let elapsed = t.elapsed();
    conclude(
        10,
        "expansion identities and initial-term tables",
        ids.passed && tables.passed && covered == rows && elapsed < APPENDIX_BUDGET,
        &format!(
            "{} identity checks, {} table checks, {covered}/{rows} rows covered, {elapsed:.1?} {}",
            ids.items.len(),
            tables.items.len(),
            failures(&ids) + &failures(&tables)
        ),
    );
}

#[test]
fn criterion_11_proof_steps() {
    let mut ok = true;
    let mut notes = Vec::new();
    for (k, l, d) in DESK {
        let g = Grid::new(k, l).unwrap();
        for j in 1..l {
            let r = proofcheck::check_nzd(&g, d, j).unwrap();
            ok &= r.passed;
        }
        notes.push(format!("nzd ({k},{l},{d}) j<{l}"));
    }
    for (k, l, d) in [(2, 3, 3), (3, 3, 3)] {
        let r = proofcheck::verify_localization_step(&Grid::new(k, l).unwrap(), d).unwrap();
        ok &= r.passed;
        notes.push(format!("localization ({k},{l},{d}) {}", r.passed));
    }
    for (k, d) in [(2, 2), (2, 3), (3, 3)] {
        let r = proofcheck::verify_base_case(k, d).unwrap();
        ok &= r.passed;
        notes.push(format!("base case ({k},2,{d}) {}", r.passed));
    }
    for (k, l, d) in DESK {
        let r = proofcheck::verify_primality_steps(&Grid::new(k, l).unwrap(), d).unwrap();
        ok &= r.passed;
    }
    conclude(11, "proof-step suite", ok, &notes.join(", "));
}

fn leads<F: Field>(ideal: &Ideal<F>) -> Vec<Monomial> {
    ideal.groebner_basis(&limits()).unwrap().leading_monomials()
}

fn basis_leads<F: Field>(gb: &GroebnerBasis<F>) -> Vec<Monomial> {
    gb.leading_monomials()
}

#[test]
fn criterion_12_field_independence() {
    let p = PrimeField::new(DEFAULT_PRIME).unwrap();
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for (k, l, d) in DESK {
        let inst = main_instance(k, l, d);
        let qq = verify::components(&inst, Rationals).unwrap();
        let fp = verify::components(&inst, p).unwrap();
        for (a, b) in qq.iter().zip(&fp) {
            compared += 1;
            if leads(&a.ideal) != leads(&b.ideal) {
                mismatches.push(format!("({k},{l},{d}) {}", a.label(&inst.grid())));
            }
        }
    }
    let (_, gq) = verify::verify_triple_example(Rationals, &limits()).unwrap();
    let (_, gp) = verify::verify_triple_example(p, &limits()).unwrap();
    compared += 1;
    if basis_leads(&gq) != basis_leads(&gp) {
        mismatches.push("six 3-minors".into());
    }
    let eq = verify::example_ideals(Rationals).unwrap();
    let ep = verify::example_ideals(p).unwrap();
    for (a, b) in eq.iter().zip(&ep) {
        compared += 1;
        if leads(a) != leads(b) {
            mismatches.push(a.label().unwrap_or("?").to_string());
        }
    }
    conclude(
        12,
        "field independence of leading monomials",
        mismatches.is_empty(),
        &format!("{compared} reduced bases over QQ and GF({DEFAULT_PRIME}), mismatches {mismatches:?}"),
    );
}
