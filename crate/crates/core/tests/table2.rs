//! Brute force over candidate reciprocals and rounding modes for the lunar
//! diameter table. The fixture was produced independently with Python
//! fractions; only (0;57,18, nearest) reproduces the published row.

use xi_core::oracle::ExactRational;
use xi_core::ptolemy::{self, DmsAngle};
use xi_core::sexagesimal::PinnedSexNumber;

const FIXTURE: &str = include_str!("fixtures/table2_candidates.tsv");
const PUBLISHED: [&str; 3] = ["0°29'55\"", "0°33'45\"", "0°31'50\""];

fn readings() -> Vec<ExactRational> {
    ["31;20", "35;20", "33;20"].iter().map(|s| s.parse::<PinnedSexNumber>().unwrap().to_rational()).collect()
}

fn candidates() -> Vec<(&'static str, ExactRational)> {
    let xi2 = ExactRational::new(377, 360);
    let exact = xi2.recip().unwrap();
    let truncated = PinnedSexNumber::from_rational(&exact, 2).unwrap();
    assert!(truncated.truncated);
    vec![
        ("360/377", exact),
        ("0;57,17", truncated.number.to_rational()),
        ("0;57,18", ptolemy::working_reciprocal(&xi2).to_rational()),
    ]
}

fn convert(minutes: &ExactRational, factor: &ExactRational, mode: &str) -> String {
    match mode {
        "nearest" => ptolemy::chord_minutes_to_dms_with(minutes, factor).unwrap().to_string(),
        "truncate" => {
            let seconds = (minutes * factor * ExactRational::from_integer(60)).floor();
            DmsAngle::from_arcseconds(seconds.try_into().unwrap()).unwrap().to_string()
        }
        other => panic!("unknown mode {other}"),
    }
}

#[test]
fn fixture_matches_library() {
    let expected: Vec<Vec<&str>> = FIXTURE.lines().filter(|l| !l.starts_with('#')).map(|l| l.split('\t').collect()).collect();
    let mut actual = Vec::new();
    for (name, factor) in candidates() {
        for mode in ["truncate", "nearest"] {
            let mut row = vec![name.to_string(), mode.to_string()];
            row.extend(readings().iter().map(|m| convert(m, &factor, mode)));
            actual.push(row);
        }
    }
    assert_eq!(actual, expected);
}

#[test]
fn only_two_place_reciprocal_with_nearest_matches() {
    let matching: Vec<String> = FIXTURE
        .lines()
        .filter(|l| !l.starts_with('#'))
        .filter(|l| l.split('\t').skip(2).eq(PUBLISHED))
        .map(|l| l.split('\t').take(2).collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(matching, ["0;57,18 nearest"]);
}
