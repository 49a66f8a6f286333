//! Replays every identity the library reconstructs and collects the results
//! in one report.

use crate::circle::{CircleEngine, Stage};
use crate::metrology;
use crate::oracle::{agrees_with_quoted, ExactRational, Measure};
use crate::ptolemy;
use crate::registry::{verify_derivations, LineError, Registry};
use crate::report::{CheckEntry, CheckStatus, VerificationReport};
use crate::sexagesimal::{FloatingSexNumber, PinnedSexNumber};

/// Tolerance for the modern 1/25-circle arc, 0.251327.
const ARC_TOLERANCE: (i64, i64) = (5, 10_000_000);
/// Relative error of 1;2;30 against pi/3, in percent: 0.528 +- 0.005.
const STAGE2_PERCENT: (&str, &str) = ("0.528", "0.005");
/// |relative error| of 1;2;50 against pi/3, in percent: 0.0024 +- 0.0002.
const PTOLEMY_PERCENT: (&str, &str) = ("0.0024", "0.0002");

fn r(s: &str) -> ExactRational {
    s.parse().expect("literal")
}

fn within(value: &ExactRational, target: &str, tolerance: &str) -> bool {
    (value - r(target)).abs() <= r(tolerance)
}

fn show(m: &Measure) -> String {
    m.to_string()
}

fn floating(q: &ExactRational) -> String {
    FloatingSexNumber::from_rational(q).map_or_else(|e| e.to_string(), |f| f.to_string())
}

/// All checks against `registry`. `corpus_errors` are the line errors of a
/// corpus that failed to load; they become a failing `corpus.load` entry.
pub fn verify_all(registry: &Registry, corpus_errors: &[LineError]) -> VerificationReport {
    let mut report = VerificationReport::new();
    if !corpus_errors.is_empty() {
        report.push(CheckEntry::new(
            "corpus.load",
            "corpus file",
            "no malformed lines",
            corpus_errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
            CheckStatus::Fail,
        ));
    }

    match verify_derivations(registry) {
        Ok(r) => report.extend(r),
        Err(e) => report.push(CheckEntry::new("registry.structure", "derivation rules", "well formed", e.to_string(), CheckStatus::Fail)),
    }

    let engine = match CircleEngine::from_registry(registry) {
        Ok(engine) => engine,
        Err(e) => {
            report.push(CheckEntry::new("registry.formulary", "formulary coefficients", "present", e.to_string(), CheckStatus::Fail));
            CircleEngine::builtin().clone()
        }
    };

    formulary_checks(&engine, &mut report);
    report.extend(metrology::gudea_circle_cross_check_with(
        &engine,
        Stage::Stage2Susa,
        &metrology::UnitSystem::Gudea.unit_ratio_to_nippur(),
    ));
    arc_example_checks(&engine, &mut report);
    lunar_checks(registry, &mut report);
    ladder_checks(&engine, &mut report);
    equivalence_checks(registry, &mut report);
    report
}

fn formulary_checks(engine: &CircleEngine, report: &mut VerificationReport) {
    let s2 = Stage::Stage2Susa;
    for d in [1, 2, 4] {
        let dq = ExactRational::from_integer(d);
        let id = |name: &str| format!("formulary.d{d}.{name}");
        let Ok(c) = engine.circumference(&dq, s2) else { continue };

        let c1 = engine.circumference(&dq, Stage::Stage1Hexagon).expect("positive");
        report.push(CheckEntry::compare(
            id("circumference"),
            "c = (d x 3) x 1;02;30",
            &(&c1.value * ExactRational::new(25, 24)),
            &c.value,
        ));

        let back = engine.diameter_from_circumference(&c.value, s2).expect("positive");
        report.push(CheckEntry::compare(id("diameter"), "d = (c x 20) x 0;57;36", &dq, show(&back)));

        let radius = &dq / ExactRational::from_integer(2);
        let n = ExactRational::from_integer(25);
        let arc = engine.arc_length(&n, &radius, s2).expect("positive");
        let sectors = engine.sector_count(&arc.value, &radius, s2).expect("positive");
        report.push(CheckEntry::compare(id("sectors"), "N = 6 r / (b x 57;36)", &n, show(&sectors)));

        let h = engine.hexagon_part(&dq).expect("positive");
        let arc_back = engine.arc_from_hexagon_part(&h, &ExactRational::one()).expect("positive");
        report.push(CheckEntry::compare(id("hexagon_part"), "b x 57;36 x 1;02;30 = b", &dq, &arc_back));

        let area = engine.area_from_circumference(&c.value, s2).expect("positive");
        report.push(CheckEntry::compare(
            id("area"),
            "A = c^2 x 4;48, so A x 12;30 = c^2",
            c.value.square(),
            show(&area.clone().map(|a| a * ExactRational::new(25, 2))),
        ));

        let perimeter = engine.perimeter_from_area(&area.value).expect("positive");
        report.push(CheckEntry::compare(
            id("perimeter"),
            "YBC 8600: 3d = 57;36 x sqrt(A x 12 x 1;02;30)",
            &(&dq * ExactRational::from_integer(3)),
            show(&perimeter),
        ));
    }
}

fn arc_example_checks(engine: &CircleEngine, report: &mut VerificationReport) {
    let one = ExactRational::one();
    let n = ExactRational::from_integer(25);
    let arc = engine.arc_length(&n, &one, Stage::Stage2Susa).expect("positive");
    report.push(CheckEntry::compare("circle.arc_1_25.value", "1/25 of a circle at radius 1", "1/4", show(&arc)));
    report.push(CheckEntry::compare("circle.arc_1_25.floating", "14;24 x 1;2;30 x r(1) = 15", "15", floating(&arc.value)));
    let h = engine.hexagon_part(&arc.value).expect("positive");
    report.push(CheckEntry::compare("circle.arc_1_25.hexagon_part", "hexagon portion 14;24", "14;24", floating(&h)));

    let modern = engine.arc_length(&n, &one, Stage::Modern).expect("positive");
    let tol = ExactRational::new(ARC_TOLERANCE.0, ARC_TOLERANCE.1);
    let ok = (&modern.value - r("0.251327")).abs() <= tol;
    report.push(CheckEntry::new(
        "circle.arc_1_25.modern",
        "modern arc length 0.251327...",
        "0.251327 +- 5e-7",
        modern.value.to_decimal(9),
        CheckStatus::from_bool(ok),
    ));

    let chord = r("15.16");
    let radius = ExactRational::from_integer(120);
    let susa = engine.circle_fraction_from_chord(&chord, &radius, Stage::Stage2Susa).expect("positive");
    report.push(CheckEntry::compare("circle.eratosthenes.stage2", "shadow ratio 15.16/120", "18750/379", show(&susa.parts)));
    let in_range = susa.parts.value >= ExactRational::from_integer(49) && susa.parts.value <= ExactRational::from_integer(50);
    report.push(CheckEntry::new(
        "circle.eratosthenes.stage2_range",
        "leads to N = 50 (rounding unstated)",
        "49 <= N <= 50",
        susa.parts.value.to_decimal(4),
        CheckStatus::from_bool(in_range),
    ));
    let modern = engine.circle_fraction_from_chord(&chord, &radius, Stage::Modern).expect("positive");
    report.push(CheckEntry::compare("circle.eratosthenes.modern", "1/50th of a circle", "50", &modern.nearest));
}

fn lunar_checks(registry: &Registry, report: &mut VerificationReport) {
    let Ok(xi2) = registry.value("XI2") else { return };
    let factor = ptolemy::working_reciprocal(&xi2).to_rational();
    let min: PinnedSexNumber = "31;20".parse().expect("literal");
    let max: PinnedSexNumber = "35;20".parse().expect("literal");
    let avg = ptolemy::average_pair(&min, &max);
    report.push(CheckEntry::compare("lunar.average", "Table of lunar diameters, averaged 33;20", "33;20", &avg));
    for (id, value, expected) in [("lunar.1_min", &min, "0°29'55\""), ("lunar.2_max", &max, "0°33'45\""), ("lunar.3_averaged", &avg, "0°31'50\"")] {
        let actual = ptolemy::chord_minutes_to_dms_with(&value.to_rational(), &factor)
            .map_or_else(|e| e.to_string(), |a| a.to_string());
        report.push(CheckEntry::compare(id, format!("{value} chord minutes to degrees"), expected, actual));
    }
}

fn ladder_checks(engine: &CircleEngine, report: &mut VerificationReport) {
    let ladder = ptolemy::refinement_ladder_with(engine);
    let hundred = ExactRational::from_integer(100);
    let percents: Vec<ExactRational> = ladder.iter().map(|row| (&row.relative_error * &hundred).abs()).collect();
    for ((row, pct), (name, (target, tol))) in ladder.iter().zip(&percents).zip([("stage2", STAGE2_PERCENT), ("ptolemy", PTOLEMY_PERCENT)]) {
        report.push(CheckEntry::new(
            format!("ladder.{name}"),
            format!("stage {} relative error vs pi/3", row.stage),
            format!("{target}% +- {tol}%"),
            format!("{}%", pct.to_decimal(6)),
            CheckStatus::from_bool(within(pct, target, tol)),
        ));
        report.push(CheckEntry::compare(
            format!("ladder.{name}_per_degree"),
            "xi/60 vs pi/180 has the same relative error",
            row.relative_error.to_decimal(20),
            row.per_degree_relative_error.to_decimal(20),
        ));
    }
    report.push(CheckEntry::new(
        "ladder.monotone",
        "accuracy improves from 1;2;30 to 1;2;50",
        "decreasing",
        percents.iter().map(|p| format!("{}%", p.to_decimal(5))).collect::<Vec<_>>().join(" > "),
        CheckStatus::from_bool(percents.windows(2).all(|w| w[0] > w[1])),
    ));
}

fn equivalence_checks(registry: &Registry, report: &mut VerificationReport) {
    let Ok(rows) = ptolemy::radian_equivalents_with(registry) else { return };
    let quoted = [("1.041666", "1.047197"), ("0.017361", "0.0174533"), ("57.6", "57.29578")];
    for (i, (row, (ours, modern))) in rows.iter().zip(quoted).enumerate() {
        report.push(CheckEntry::new(
            format!("equivalents.{}_babylonian", i + 1),
            format!("{} from {}", row.label, row.sexagesimal),
            format!("{ours}..."),
            row.value.to_decimal(9),
            CheckStatus::from_bool(agrees_with_quoted(&row.value, ours)),
        ));
        report.push(CheckEntry::new(
            format!("equivalents.{}_modern", i + 1),
            format!("modern {}", row.modern.source),
            format!("{modern}..."),
            row.modern.value.to_decimal(9),
            CheckStatus::from_bool(agrees_with_quoted(&row.modern.value, modern)),
        ));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::parse_corpus;

    #[test]
    fn pristine_registry_passes() {
        let report = verify_all(&Registry::builtin(), &[]);
        assert!(report.ok(), "{}", report.to_text());
        assert!(report.summary().total > 40);
    }

    #[test]
    fn altered_xi1_fails_named_rule() {
        let (reg, _) = parse_corpus("XI1\t1;2;31\tstretch\tinjected\n", &Registry::builtin()).unwrap();
        let report = verify_all(&reg, &[]);
        let failed: Vec<_> = report.failures().map(|e| e.check_id.clone()).collect();
        assert!(failed.contains(&"registry.pi_susa".to_string()), "{failed:?}");
        assert!(failed.iter().any(|id| id.starts_with("formulary.")));
    }

    #[test]
    fn corpus_errors_fail_report() {
        let errs = [LineError { line: 3, message: "bad".into() }];
        let report = verify_all(&Registry::builtin(), &errs);
        assert_eq!(report.failures().count(), 1);
        assert_eq!(report.get("corpus.load").unwrap().status, CheckStatus::Fail);
    }
}
