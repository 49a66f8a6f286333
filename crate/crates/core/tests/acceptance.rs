//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::io::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use xi_core::circle::{self, Stage};
use xi_core::metrology::{LengthQuantity, LengthUnit, UnitSystem};
use xi_core::oracle::{ExactRational, ModernConstant};
use xi_core::ptolemy;
use xi_core::registry::{verify_derivations, Registry};
use xi_core::sexagesimal::{FloatingSexNumber, PinnedSexNumber};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(s: &str) -> ExactRational {
    s.parse().expect("literal")
}

fn fl(s: &str) -> FloatingSexNumber {
    s.parse().expect("literal")
}

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(value: &ExactRational, target: &str, tol: &str) -> bool {
    (value - r(target)).abs() <= r(tol)
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    )
}

fn positive_rational() -> impl Strategy<Value = ExactRational> {
    (1i64..1_000_000, 1i64..1_000_000).prop_map(|(n, d)| ExactRational::new(n, d))
}

/// Coefficient identities, exact, under one second.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("3 x 1;2;30", fl("3").mul(&fl("1;2;30")), "3;7;30"),
        ("1/(1;2;30)", fl("1;2;30").reciprocal().map_err(|e| e.to_string())?, "57;36"),
        ("5 x 57;36", fl("5").mul(&fl("57;36")), "4;48"),
        ("1/(4;48)", fl("4;48").reciprocal().map_err(|e| e.to_string())?, "12;30"),
        ("1/(3;7;30)", fl("3;7;30").reciprocal().map_err(|e| e.to_string())?, "19;12"),
        ("6 / 6;15", fl("6").div(&fl("6;15")).map_err(|e| e.to_string())?, "57;36"),
        ("12 / 12;30", fl("12").div(&fl("12;30")).map_err(|e| e.to_string())?, "57;36"),
        ("3 x 1;2;50", fl("3").mul(&fl("1;2;50")), "3;8;30"),
    ];
    for (label, got, want) in &cases {
        check(got.to_string() == *want, format!("{label} = {got}, expected {want}"))?;
    }
    let report = verify_derivations(&Registry::builtin()).map_err(|e| e.to_string())?;
    check(report.ok(), "registry derivation rules fail")?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("{} identities and {} registry rules exact in {elapsed:.1?}", cases.len(), report.summary().passed))
}

/// The 1/25-circle example.
fn criterion_2() -> Outcome {
    let one = ExactRational::one();
    let n = ExactRational::from_integer(25);
    let arc = circle::arc_length(&n, &one, Stage::Stage2Susa).map_err(|e| e.to_string())?;
    check(arc.exact && arc.value == r("1/4"), format!("arc = {}", arc))?;
    let digits = FloatingSexNumber::from_rational(&arc.value).map_err(|e| e.to_string())?;
    check(digits.to_string() == "15", format!("arc digits {digits}"))?;
    let h = circle::hexagon_part(&arc.value).map_err(|e| e.to_string())?;
    let h = FloatingSexNumber::from_rational(&h).map_err(|e| e.to_string())?;
    check(h.to_string() == "14;24", format!("hexagon part {h}"))?;
    let modern = circle::arc_length(&n, &one, Stage::Modern).map_err(|e| e.to_string())?;
    check(within(&modern.value, "0.251327", "0.0000005"), format!("modern arc {}", modern.value.to_decimal(9)))?;
    Ok(format!("1/4 = 15, hexagon part 14;24, modern {}", modern.value.to_decimal(9)))
}

/// The lunar diameter table.
fn criterion_3() -> Outcome {
    let rows = [("31;20", "0°29'55\""), ("35;20", "0°33'45\""), ("33;20", "0°31'50\"")];
    let mut got = Vec::new();
    for (reading, want) in rows {
        let angle = ptolemy::chord_floating_to_dms(&fl(reading)).map_err(|e| e.to_string())?.to_string();
        check(angle == want, format!("{reading} -> {angle}, expected {want}"))?;
        got.push(angle);
    }
    let min: PinnedSexNumber = "31;20".parse().unwrap();
    let max: PinnedSexNumber = "35;20".parse().unwrap();
    let avg = ptolemy::average_pair(&min, &max);
    check(avg.to_string() == "33;20", format!("average {avg}"))?;
    Ok(format!("{}; average 33;20", got.join(" ")))
}

/// Gudea/Nippur cross-check.
fn criterion_4() -> Outcome {
    let diameter = LengthQuantity::new(ExactRational::from_integer(4), LengthUnit::Cubit, UnitSystem::Gudea).map_err(|e| e.to_string())?;
    let fingers = diameter.to_base_fingers();
    check(fingers == ExactRational::from_integer(120), format!("4 cubits = {fingers} fingers"))?;
    let c = circle::circumference(&fingers, Stage::Stage2Susa).map_err(|e| e.to_string())?;
    check(c.exact && c.value == ExactRational::from_integer(375), format!("circumference {c}"))?;
    let gudea = LengthQuantity::new(c.value, LengthUnit::Finger, UnitSystem::Gudea).map_err(|e| e.to_string())?;
    let nippur = gudea.convert_system(UnitSystem::Nippur);
    check(nippur.magnitude() == &ExactRational::from_integer(360), format!("{nippur}"))?;
    Ok("120 fingers -> 375 Gudea = 360 Nippur fingers".into())
}

fn closure(d: &ExactRational) -> Result<(), String> {
    let c = circle::circumference(d, Stage::Stage2Susa).map_err(|e| e.to_string())?;
    let a = circle::area_from_circumference(&c.value, Stage::Stage2Susa).map_err(|e| e.to_string())?;
    let p = circle::perimeter_from_area(&a.value).map_err(|e| e.to_string())?;
    check(p.exact && p.value == d * ExactRational::from_integer(3), format!("d = {d}: 3d = {p}"))
}

/// Circumference, area and perimeter close up exactly.
fn criterion_5() -> Outcome {
    for d in [1, 2, 4] {
        closure(&ExactRational::from_integer(d))?;
    }
    runner(100)
        .run(&positive_rational(), |d| closure(&d).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())?;
    Ok("d in {1, 2, 4} and 100 random rationals".into())
}

/// Refinement ladder and the quoted modern constants.
fn criterion_6() -> Outcome {
    let ladder = ptolemy::refinement_ladder();
    let stage2 = ladder[0].percent();
    let ptolemy_pct = ladder[1].percent().abs();
    let mut problems = Vec::new();
    if !within(&stage2, "0.528", "0.005") {
        problems.push(format!("stage 2 error {}%", stage2.to_decimal(6)));
    }
    if !within(&ptolemy_pct, "0.0024", "0.0002") {
        problems.push(format!("ptolemy error {}%", ptolemy_pct.to_decimal(6)));
    }
    for (constant, quoted) in [
        (ModernConstant::PiOver3, "1.047197"),
        (ModernConstant::PiOver180, "0.0174533"),
        (ModernConstant::DegPerRadian, "57.29578"),
    ] {
        let value = constant.value().value;
        let gap = (&value - r(quoted)).abs();
        if gap > r("0.0000005") {
            problems.push(format!("{} = {} differs from {quoted} by {:.2e}", constant.name(), value.to_decimal(10), gap.to_f64()));
        }
    }
    let detail = format!("stage 2 {}%, ptolemy {}%", stage2.to_decimal(5), ladder[1].percent().to_decimal(5));
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", problems.join("; ")))
    }
}

/// Property suites, at least 1000 cases each, under ten seconds in total.
fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cases = 1000;
    let floating = prop::collection::vec(0u8..60, 1..7)
        .prop_filter("nonzero", |d| d.iter().any(|&x| x != 0))
        .prop_map(|d| FloatingSexNumber::new(d).unwrap());
    let regular = (-14i32..14, -9i32..9, -7i32..7).prop_map(|(a, b, c)| {
        let q = ExactRational::from_integer(2).pow(a) * ExactRational::from_integer(3).pow(b) * ExactRational::from_integer(5).pow(c);
        FloatingSexNumber::from_rational(&q).unwrap()
    });
    let pinned = (prop::collection::vec(0u8..60, 1..6), -3i32..4)
        .prop_filter("nonzero", |(d, _)| d.iter().any(|&x| x != 0))
        .prop_map(|(d, k)| PinnedSexNumber::new(d, k).unwrap());
    let err = |name: &str, e: String| format!("{name}: {e}");

    runner(cases)
        .run(&(floating.clone(), floating.clone()), |(a, b)| {
            let oracle = FloatingSexNumber::from_rational(&(a.reading() * b.reading())).unwrap();
            prop_assert_eq!(a.mul(&b), oracle);
            Ok(())
        })
        .map_err(|e| err("floating mul", e.to_string()))?;

    runner(cases)
        .run(&regular, |a| {
            let inv = a.reciprocal().unwrap();
            prop_assert_eq!(inv.reciprocal().unwrap(), a.clone());
            prop_assert!(a.mul(&inv).is_one());
            Ok(())
        })
        .map_err(|e| err("reciprocal roundtrip", e.to_string()))?;

    runner(cases)
        .run(&(floating.clone(), pinned.clone()), |(f, p)| {
            prop_assert_eq!(f.to_string().parse::<FloatingSexNumber>().unwrap(), f.clone());
            prop_assert_eq!(f.to_string().parse::<FloatingSexNumber>().unwrap().to_string(), f.to_string());
            prop_assert_eq!(p.to_string().parse::<PinnedSexNumber>().unwrap(), p.clone());
            prop_assert_eq!(p.to_string().parse::<PinnedSexNumber>().unwrap().to_string(), p.to_string());
            Ok(())
        })
        .map_err(|e| err("parse/format roundtrip", e.to_string()))?;

    runner(cases)
        .run(&(pinned.clone(), pinned), |(a, b)| {
            prop_assert_eq!(a.add(&b).to_rational(), a.to_rational() + b.to_rational());
            prop_assert_eq!(a.mul(&b).to_rational(), a.to_rational() * b.to_rational());
            Ok(())
        })
        .map_err(|e| err("pinned add/mul", e.to_string()))?;

    runner(cases)
        .run(&(2i64..60, 1i64..60, positive_rational()), |(m, n, t)| {
            prop_assume!(n < m);
            let radius = &t * ExactRational::from_integer(m * m + n * n);
            let chord = &t * ExactRational::from_integer(4 * m * n);
            let s = circle::sagitta(&radius, &chord).unwrap();
            prop_assert!(s.exact);
            let half = &chord / ExactRational::from_integer(2);
            prop_assert_eq!((&radius - &s.value).square() + half.square(), radius.square());
            Ok(())
        })
        .map_err(|e| err("sagitta identity", e.to_string()))?;

    let stages = prop::sample::select(Stage::ALL.to_vec());
    runner(cases)
        .run(&(positive_rational(), positive_rational(), stages), |(n, radius, stage)| {
            let b = circle::arc_length(&n, &radius, stage).unwrap();
            prop_assert_eq!(circle::sector_count(&b.value, &radius, stage).unwrap().value, n);
            Ok(())
        })
        .map_err(|e| err("sector/arc inversion", e.to_string()))?;

    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(10), format!("six suites took {elapsed:?}"))?;
    Ok(format!("6 suites x {cases} cases in {elapsed:.1?}"))
}

/// Eratosthenes' shadow ratio as a fraction of the circle.
fn criterion_8() -> Outcome {
    let chord = r("15.16");
    let radius = ExactRational::from_integer(120);
    let susa = circle::circle_fraction_from_chord(&chord, &radius, Stage::Stage2Susa).map_err(|e| e.to_string())?;
    check(susa.parts.exact && susa.parts.value == r("18750/379"), format!("stage 2 value {}", susa.parts))?;
    check(
        susa.parts.value >= ExactRational::from_integer(49) && susa.parts.value <= ExactRational::from_integer(50),
        format!("stage 2 value {} outside [49, 50]", susa.parts.value.to_decimal(4)),
    )?;
    let modern = circle::circle_fraction_from_chord(&chord, &radius, Stage::Modern).map_err(|e| e.to_string())?;
    check(modern.nearest == 50.into(), format!("modern nearest {}", modern.nearest))?;
    Ok(format!("18750/379 = {}, modern {} -> 50", susa.parts.value.to_decimal(4), modern.parts.value.to_decimal(4)))
}

/// The command line.
fn criterion_9() -> Outcome {
    let xi = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_xi")).args(args).output().map_err(|e| e.to_string());
    let o = xi(&["verify"])?;
    check(o.status.code() == Some(0), format!("verify exited {:?}", o.status.code()))?;

    let mut corpus = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
    writeln!(corpus, "XI1\t1;2;31\tstretch\tinjected fault").map_err(|e| e.to_string())?;
    let o = xi(&["verify", "--corpus", corpus.path().to_str().unwrap()])?;
    check(o.status.code() == Some(1), format!("faulted verify exited {:?}", o.status.code()))?;
    let stderr = String::from_utf8_lossy(&o.stderr);
    check(stderr.contains("registry.pi_susa"), format!("failing rule not named: {stderr}"))?;

    let o = xi(&["table", "lunar"])?;
    let table = String::from_utf8_lossy(&o.stdout);
    let row = table.lines().find(|l| l.starts_with("degrees ")).unwrap_or_default();
    let cells: Vec<&str> = row.split_whitespace().skip(1).collect();
    check(cells == ["0°29'55\"", "0°33'45\"", "0°31'50\""], format!("lunar row {row:?}"))?;
    Ok("verify 0, injected XI1 fault 1 naming registry.pi_susa, lunar row matches".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("coefficient identities", criterion_1),
        ("1/25-circle example", criterion_2),
        ("lunar diameter table", criterion_3),
        ("metrology cross-check", criterion_4),
        ("YBC 8600 closure", criterion_5),
        ("refinement ladder and modern constants", criterion_6),
        ("property suites", criterion_7),
        ("Eratosthenes fraction", criterion_8),
        ("command line", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {}  {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {}  {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
