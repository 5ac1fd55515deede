//! Acceptance suite: one test per exit criterion, each printing a
//! `ACCEPTANCE <name>: PASS` line with exact expectations and the stated
//! runtime budgets.
//!
//! The golden table-diff snapshot lives in `tests/golden/`; regenerate it
//! with `UPDATE_GOLDEN=1 cargo test -p scr-core --test acceptance` after a
//! deliberate corpus change.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scr_core::cohom::{
    h0_omega_quadric, h0_tpi_quadric, line_bundle_quadric, omega_quadric_pieces,
    quadric_printed_diff, tpi_quadric_pieces,
};
use scr_core::corpus::{Corpus, TableFamily};
use scr_core::horace::{net_cardinality, verify_step, NetParams, Verdict};
use scr_core::resolution::{expected_betti, Curve};
use scr_core::seq::{closed_form_dpp, dpp, solve_family, Family};
use scr_core::sweeps::run_lemma_sweeps;

fn pass(name: &str, detail: &str) {
    println!("ACCEPTANCE {name}: PASS — {detail}");
}

#[test]
fn constant_reproduction() {
    let t = Instant::now();
    let by_division = dpp(62_058).unwrap().0;
    let by_closed_form = closed_form_dpp(62_058).unwrap().0;
    assert_eq!(by_division, 641_927_953);
    assert_eq!(by_closed_form, 641_927_953);
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(
        "constant_reproduction",
        &format!("both routes give 641927953 in {elapsed:?}"),
    );
}

#[test]
fn recurrence_closed_form_equivalence() {
    let t = Instant::now();
    for m in 0..=100_000 {
        assert_eq!(dpp(m).unwrap(), closed_form_dpp(m).unwrap(), "m={m}");
    }
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    pass(
        "recurrence_closed_form_equivalence",
        &format!("100001 indices agree in {elapsed:?}"),
    );
}

#[test]
fn table_anchor_rows_and_pinned_diff() {
    let corpus = Corpus::embedded().unwrap();
    let anchors = [
        (TableFamily::DeltaStar, 2, 4),
        (TableFamily::AlphaStar, 2, 0),
        (TableFamily::DeltaTpiStar, 2, 3),
        (TableFamily::AlphaTpiStar, 2, 0),
        (TableFamily::DStar, 2, 1),
        (TableFamily::AStar, 2, 4),
        (TableFamily::DTpiStar, 2, 3),
        (TableFamily::ATpiStar, 2, 0),
        (TableFamily::DStar, 3, 3),
        (TableFamily::AStar, 3, 6),
    ];
    for (family, m, expected) in anchors {
        assert_eq!(corpus.printed(family, m), Some(expected), "printed {family:?}({m})");
        assert_eq!(family.computed(m).unwrap(), expected, "computed {family:?}({m})");
    }

    let diffs = corpus.diff_tables().unwrap();
    assert!(diffs
        .iter()
        .any(|d| d.family == TableFamily::DeltaStar && d.m == 10 && d.delta == 1));
    let rendered = serde_json::to_string_pretty(&diffs).unwrap();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/tables_diff.json");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, &rendered).unwrap();
    }
    let golden = std::fs::read_to_string(path).expect("golden snapshot present");
    assert_eq!(rendered, golden, "table diff drifted from the pinned snapshot");
    pass(
        "table_anchor_rows_and_pinned_diff",
        &format!("10 anchor cells exact, {} diff rows match the snapshot", diffs.len()),
    );
}

#[test]
fn balance_identities_sweep() {
    let t = Instant::now();
    for m in 2..=10_000 {
        let s = solve_family(m, Family::DeltaOmega).unwrap().star.unwrap();
        assert_eq!((3 * m - 4) * s.base + 12 + 3 * s.rem, m * (m + 2) * (m + 3) / 2);
        let s = solve_family(m, Family::DeltaTpi).unwrap().star.unwrap();
        assert_eq!((3 * m - 5) * s.base + 12 + 3 * s.rem, m * (m + 1) * (m + 3) / 2);
    }
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    pass("balance_identities_sweep", &format!("9999 indices, both identities exact, {elapsed:?}"));
}

#[test]
fn lemma_inequality_sweeps() {
    let report = run_lemma_sweeps(10_000, 200, 2_000).unwrap();
    assert!(report.clean(), "violations: {:?}", report.violations);
    let total: u64 = report.checked.iter().map(|(_, n)| n).sum();
    pass(
        "lemma_inequality_sweeps",
        &format!("{total} inequalities over all stated ranges, zero violations"),
    );
}

#[test]
fn resolution_fixtures_and_random_curves() {
    let t = expected_betti(&Curve::new(3, 0).unwrap()).unwrap();
    assert_eq!(t.entries.len(), 2);
    assert_eq!(t.beta(1, 2), 3);
    assert_eq!(t.beta(2, 3), 2);

    let t = expected_betti(&Curve::new(4, 1).unwrap()).unwrap();
    assert_eq!(t.entries.len(), 2);
    assert_eq!(t.beta(1, 2), 2);
    assert_eq!(t.beta(2, 4), 1);

    let t = expected_betti(&Curve::new(5, 1).unwrap()).unwrap();
    assert_eq!(t.entries.len(), 3);
    assert_eq!(t.beta(1, 3), 5);
    assert_eq!(t.beta(2, 4), 5);
    assert_eq!(t.beta(3, 5), 1);

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..1000 {
        let g = rng.gen_range(0..=60i64);
        let d = rng.gen_range(g + 3..=200i64);
        let table = expected_betti(&Curve::new(d, g).unwrap()).unwrap();
        assert!(table.satisfies_alternating_sums(), "({d},{g})");
        assert!(table.single_degree_per_column(), "({d},{g})");
        assert!(table.entries.values().all(|&b| b > 0), "({d},{g})");
    }
    pass(
        "resolution_fixtures_and_random_curves",
        "three classical tables exact; 1000 random curves satisfy both invariants",
    );
}

#[test]
fn horace_bookkeeping_fixtures() {
    let corpus = Corpus::embedded().unwrap();

    let ho12 = corpus.recipe("HO12").unwrap();
    assert_eq!((ho12.base_d, ho12.base_g), (28, 25));
    let report = verify_step(ho12);
    let get = |n: &str| report.checks.iter().find(|c| c.name == n).unwrap();
    assert_eq!(get("degree").lhs, 39);
    assert_eq!(get("degree").verdict, Verdict::Pass);
    assert_eq!(get("genus").lhs, 36);
    assert_eq!(get("genus").verdict, Verdict::Pass);

    let ho8 = corpus.recipe("HO8").unwrap();
    assert_eq!(ho8.claimed_twist, Some((7, 7)));
    let report8 = verify_step(ho8);
    let tw = |r: &scr_core::horace::BalanceReport, n: &str| {
        r.checks.iter().find(|c| c.name == n).map(|c| (c.lhs, c.verdict))
    };
    assert_eq!(tw(&report8, "twist_x"), Some((7, Verdict::Pass)));
    assert_eq!(tw(&report8, "twist_y"), Some((7, Verdict::Pass)));

    assert_eq!(net_cardinality(NetParams { a: 2, b: 6, t: 6 }), 12);

    let ht8 = corpus.recipe("HT8").unwrap();
    assert_eq!(ht8.claimed_twist, Some((3, 3)));
    let report_ht8 = verify_step(ht8);
    assert_eq!(tw(&report_ht8, "twist_x"), Some((3, Verdict::Pass)));
    assert_eq!(tw(&report_ht8, "twist_y"), Some((4, Verdict::Flag)));

    let once = serde_json::to_vec(&corpus.verify_steps(None)).unwrap();
    let twice = serde_json::to_vec(&corpus.verify_steps(None)).unwrap();
    assert_eq!(once, twice, "verification output must be byte-identical");

    // pin every recipe's verdict pattern so changes are always deliberate
    let mut summary = String::new();
    for r in corpus.verify_steps(None) {
        let flagged: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| c.verdict == Verdict::Flag)
            .map(|c| c.name.as_str())
            .collect();
        let flagged = if flagged.is_empty() { "-".to_string() } else { flagged.join(",") };
        summary.push_str(&format!("{} checks={} flagged={}\n", r.recipe_id, r.checks.len(), flagged));
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/steps_summary.txt");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, &summary).unwrap();
    }
    let golden = std::fs::read_to_string(path).expect("golden summary present");
    assert_eq!(summary, golden, "step verdicts drifted from the pinned snapshot");

    pass(
        "horace_bookkeeping_fixtures",
        "HO12 degree/genus, HO8 twist, HT8 twist flag and net cardinality all as stated; sweep byte-stable and pinned",
    );
}

#[test]
fn quadric_cohomology_oracle() {
    for x in -5..=30i64 {
        for y in -5..=30i64 {
            let d = h0_omega_quadric(x, y);
            if d.exact {
                let sum: i64 = omega_quadric_pieces(x, y)
                    .iter()
                    .map(|&(a, b)| line_bundle_quadric(a, b).h0)
                    .sum();
                assert_eq!(d.h0, sum, "omega ({x},{y})");
            }
            let d = h0_tpi_quadric(x, y);
            if d.exact {
                let sum: i64 = tpi_quadric_pieces(x, y)
                    .iter()
                    .map(|&(a, b)| line_bundle_quadric(a, b).h0)
                    .sum();
                assert_eq!(d.h0, sum, "tpi ({x},{y})");
            }
        }
    }
    assert_eq!(h0_tpi_quadric(0, 0).h0, 15);
    assert_eq!(h0_omega_quadric(1, 1).h0, 0);

    let printed_diff = quadric_printed_diff(-5, 30);
    assert!(!printed_diff.is_empty());
    assert!(printed_diff
        .iter()
        .any(|e| e.x == 1 && e.y == 1 && e.computed == 0 && e.printed == 2));
    pass(
        "quadric_cohomology_oracle",
        &format!(
            "filtration equals piece sums on the 36x36 grid; {} printed-formula deviations reported",
            printed_diff.len()
        ),
    );
}

#[test]
fn scope_of_the_existence_theorems() {
    // The existence statements themselves are not desk-checkable; the
    // arithmetic suites above are the stated substitute. Nothing to run.
    pass(
        "scope_of_the_existence_theorems",
        "existence statements out of scope by design; property suites stand in",
    );
}
