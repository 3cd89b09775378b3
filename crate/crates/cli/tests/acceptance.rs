//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (visible with `--nocapture`) and enforcing its runtime
//! budget. Run with `cargo test -p isgkit-cli --test acceptance`.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use isgkit::constructors::{builtin, standard_corpus};
use isgkit::io::{
    emit_semigroup_file, parse_semigroup_file, ReportFile, SemigroupFile,
};
use isgkit::semigroup::BuildError;
use isgkit::verify::{
    check_lemma1, check_lemma2, check_prop17, check_prop20_corpus, check_theorem,
    is_infinitely_distributive, meet_via_lemma1, Side, SubsetBudget, Verdict,
};
use isgkit::{ElementId, InverseSemigroup, NaturalOrder};

/// Seed pinned for every sampled enumeration in this suite.
const SEED: u64 = 1;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> SemigroupFile {
    let path = fixtures_dir().join(format!("{name}.json"));
    let bytes = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_semigroup_file(&bytes).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn with_order(s: InverseSemigroup) -> (InverseSemigroup, NaturalOrder) {
    let ord = NaturalOrder::new(&s);
    (s, ord)
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Duration,
    started: Instant,
}

fn criterion(number: u32, name: &'static str, limit_secs: u64) -> Criterion {
    Criterion {
        number,
        name,
        limit: Duration::from_secs(limit_secs),
        started: Instant::now(),
    }
}

impl Criterion {
    fn pass(self) {
        let elapsed = self.started.elapsed();
        println!(
            "criterion {:2} ({}): PASS in {:.2?} (limit {:?})",
            self.number, self.name, elapsed, self.limit
        );
        assert!(
            elapsed < self.limit,
            "criterion {} exceeded its runtime limit: {:.2?} >= {:?}",
            self.number,
            elapsed,
            self.limit
        );
    }
}

#[test]
fn criterion_01_axiom_validation() {
    let c = criterion(1, "axiom validation", 1);
    for name in ["i2", "i3", "b2", "c3", "n5", "m3"] {
        // fixture parsing runs the full table validator
        let file = fixture(name);
        assert!(file.semigroup.size() > 0, "{name}");
    }
    let err = InverseSemigroup::from_cayley_table(&[vec![0, 0], vec![1, 1]], None, None)
        .expect_err("the left-zero table is not an inverse semigroup");
    assert_eq!(err, BuildError::IdempotentsDoNotCommute { e: 0, f: 1 });
    assert_eq!(err.to_string(), "idempotents do not commute: (0,1)");
    c.pass();
}

#[test]
fn criterion_02_lemma1_exhaustive_on_the_corpus() {
    let c = criterion(2, "lemma 1 on every corpus member", 5);
    let mut covered_i3 = false;
    let mut covered_nondistributive = false;
    for (name, s) in standard_corpus() {
        let ord = NaturalOrder::new(&s);
        let report = check_lemma1(&s, &ord);
        assert_eq!(report.verdict, Verdict::Holds, "member {name}");
        assert_eq!(
            report.cases_checked,
            (s.size() * s.size()) as u64,
            "member {name} scans the full pair grid"
        );
        if name == "i3" {
            assert_eq!(report.cases_checked, 1156);
            covered_i3 = true;
        }
        covered_nondistributive |= name == "n5" || name == "m3";
    }
    assert!(covered_i3 && covered_nondistributive);
    c.pass();
}

#[test]
fn criterion_03_meet_route_equivalence() {
    let c = criterion(3, "lemma 2 oracle equivalence", 10);
    for name in ["i2", "i3", "b2", "c3", "chain2", "chain3"] {
        let (s, ord) = with_order(builtin(name).unwrap());
        let budget = if s.size() <= 20 {
            SubsetBudget::exhaustive()
        } else {
            SubsetBudget::bounded(3).with_samples(1000, SEED)
        };
        let lemma2 = check_lemma2(&s, &ord, &budget).unwrap();
        assert!(
            matches!(lemma2.verdict, Verdict::Holds | Verdict::HoldsWithinBudget),
            "member {name}: {:?}",
            lemma2.verdict
        );
        for x in s.elements() {
            for y in s.elements() {
                let brute = ord.meet(x, y);
                let via_lemma = meet_via_lemma1(&s, &ord, x, y);
                assert_eq!(
                    via_lemma.exists(),
                    brute.exists(),
                    "{name}: pair ({x},{y}) disagrees in existence or value"
                );
            }
        }
    }
    c.pass();
}

#[test]
fn criterion_04_theorem_exhaustive_on_i2() {
    let c = criterion(4, "theorem exhaustively on degree 2", 5);
    let (s, ord) = with_order(builtin("i2").unwrap());
    let report = check_theorem(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
    assert_eq!(report.verdict, Verdict::Holds);
    assert!(report.witness.is_none(), "zero failures");
    assert_eq!(report.cases_checked, 128 * 7);
    c.pass();
}

#[test]
fn criterion_05_theorem_bounded_on_i3() {
    let c = criterion(5, "theorem bounded on degree 3", 60);
    let (s, ord) = with_order(builtin("i3").unwrap());
    let budget = SubsetBudget::bounded(3).with_samples(10_000, SEED);
    let report = check_theorem(&s, &ord, &budget).unwrap();
    assert_eq!(report.verdict, Verdict::HoldsWithinBudget);
    assert!(report.witness.is_none(), "zero failures");
    // 1 + 34 + C(34,2) + C(34,3) systematic families plus the samples, ×34 x's
    let families = 1 + 34 + 561 + 5984 + 10_000;
    assert_eq!(report.cases_checked, families * 34);
    c.pass();
}

#[test]
fn criterion_06_distributivity_verdicts_and_exit_codes() {
    let c = criterion(6, "distributivity verdicts", 5);
    for name in ["i2", "c3", "b2", "chain3"] {
        let (s, ord) = with_order(builtin(name).unwrap());
        let report = is_infinitely_distributive(&s, &ord, &SubsetBudget::exhaustive()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds, "member {name}");
        assert_eq!(report.right_verdict, Some(Verdict::Holds), "member {name}");
    }

    let (n5, n5_ord) = with_order(builtin("n5").unwrap());
    let report = is_infinitely_distributive(&n5, &n5_ord, &SubsetBudget::exhaustive()).unwrap();
    assert_eq!(report.verdict, Verdict::Fails);
    let w = report.witness.unwrap();
    assert_eq!(n5.label(w.multiplier.unwrap()), "c");
    let family_labels: Vec<String> = w
        .family
        .unwrap()
        .iter()
        .map(|&e| n5.label(e))
        .collect();
    assert_eq!(family_labels, ["a", "b"]);
    assert_eq!(w.left, Side::Element(ElementId(3)), "left side is c");
    assert_eq!(w.right, Side::Element(ElementId(1)), "right side is a");

    let (m3, m3_ord) = with_order(builtin("m3").unwrap());
    let report = is_infinitely_distributive(&m3, &m3_ord, &SubsetBudget::exhaustive()).unwrap();
    assert_eq!(report.verdict, Verdict::Fails);
    let w = report.witness.unwrap();
    assert_eq!(m3.label(w.multiplier.unwrap()), "c");
    assert_eq!(w.right, Side::Element(ElementId(0)), "right side is the bottom");

    // exit codes through the binary: 0 for holds, 1 for fails
    let holds = Command::new(env!("CARGO_BIN_EXE_isgkit"))
        .args(["check", "builtin:i2", "--law", "distributive", "--exhaustive"])
        .output()
        .unwrap();
    assert_eq!(holds.status.code(), Some(0));
    let fails = Command::new(env!("CARGO_BIN_EXE_isgkit"))
        .args(["check", "builtin:n5", "--law", "distributive", "--exhaustive"])
        .output()
        .unwrap();
    assert_eq!(fails.status.code(), Some(1));
    let stdout = String::from_utf8(fails.stdout).unwrap();
    assert!(stdout.contains("\"verdict\": \"fails\""));
    assert!(stdout.contains("\"label\": \"c\""));
    c.pass();
}

#[test]
fn criterion_07_prop17_across_the_corpus() {
    let c = criterion(7, "join-of-restrictions identity", 10);
    for (name, s) in standard_corpus() {
        let ord = NaturalOrder::new(&s);
        let budget = if s.size() <= 20 {
            SubsetBudget::exhaustive()
        } else {
            SubsetBudget::bounded(3).with_samples(2000, SEED)
        };
        let report = check_prop17(&s, &ord, &budget).unwrap();
        assert!(
            matches!(report.verdict, Verdict::Holds | Verdict::HoldsWithinBudget),
            "member {name}: {:?}",
            report.verdict
        );
        assert!(report.witness.is_none(), "zero failures on {name}");
    }
    c.pass();
}

#[test]
fn criterion_08_prop20_corpus_implication() {
    let c = criterion(8, "idempotent distributivity implication", 10);
    let corpus: Vec<InverseSemigroup> =
        standard_corpus().into_iter().map(|(_, s)| s).collect();
    let budget = SubsetBudget::bounded(3).with_samples(500, SEED);
    let report = check_prop20_corpus(&corpus, &budget).unwrap();
    assert_ne!(
        report.verdict,
        Verdict::Fails,
        "some member has distributive idempotents but a non-distributive carrier"
    );
    assert!(report.witness.is_none());

    // exhaustively on the members small enough for it
    let small: Vec<InverseSemigroup> = standard_corpus()
        .into_iter()
        .filter(|(_, s)| s.size() <= 20)
        .map(|(_, s)| s)
        .collect();
    let report = check_prop20_corpus(&small, &SubsetBudget::exhaustive()).unwrap();
    assert_eq!(report.verdict, Verdict::Holds);
    c.pass();
}

#[test]
fn criterion_09_reports_are_byte_deterministic() {
    let c = criterion(9, "byte-identical reports across runs", 30);
    let theorem_i2 = || {
        let file = fixture("i2");
        let ord = NaturalOrder::new(&file.semigroup);
        let report =
            check_theorem(&file.semigroup, &ord, &SubsetBudget::exhaustive()).unwrap();
        ReportFile::new(&report, &file).to_canonical_string()
    };
    let theorem_i3 = || {
        let file = fixture("i3");
        let ord = NaturalOrder::new(&file.semigroup);
        let budget = SubsetBudget::bounded(3).with_samples(10_000, SEED);
        let report = check_theorem(&file.semigroup, &ord, &budget).unwrap();
        ReportFile::new(&report, &file).to_canonical_string()
    };
    let distributivity = |name: &str| {
        let file = fixture(name);
        let ord = NaturalOrder::new(&file.semigroup);
        let report =
            is_infinitely_distributive(&file.semigroup, &ord, &SubsetBudget::exhaustive())
                .unwrap();
        ReportFile::new(&report, &file).to_canonical_string()
    };
    assert_eq!(theorem_i2(), theorem_i2());
    assert_eq!(theorem_i3(), theorem_i3());
    for name in ["i2", "n5", "m3"] {
        assert_eq!(distributivity(name), distributivity(name), "{name}");
    }

    // and through the binary, stdout to stdout
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_isgkit"))
            .args(["check", "builtin:n5", "--law", "distributive", "--exhaustive"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
    c.pass();
}

#[test]
fn criterion_10_round_trip_on_shipped_fixtures() {
    let c = criterion(10, "emit∘parse identity on fixtures", 10);
    let dir = fixtures_dir();
    let mut seen = 0;
    let mut entries: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    for path in entries {
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let bytes = std::fs::read(&path).unwrap();
        let parsed = parse_semigroup_file(&bytes).unwrap();
        let emitted = emit_semigroup_file(&parsed);
        assert_eq!(
            emitted.as_bytes(),
            &bytes[..],
            "{} is not canonical",
            path.display()
        );
        seen += 1;
    }
    assert_eq!(seen, 7, "all shipped fixtures were checked");
    c.pass();
}
