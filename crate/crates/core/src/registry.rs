//! Catalogue of historical coefficients and the derivation rules that tie
//! them together.
//!
//! Records are floating digit strings with a default pin. Rules are
//! evaluated in floating arithmetic, the way the tablets use them.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::oracle::ExactRational;
use crate::report::{CheckEntry, CheckStatus, VerificationReport};
use crate::sexagesimal::{FloatingSexNumber, SexagesimalError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Stretch,
    Shrink,
    Area,
    Combined,
    Conversion,
    Base,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Stretch => "stretch",
            Role::Shrink => "shrink",
            Role::Area => "area",
            Role::Combined => "combined",
            Role::Conversion => "conversion",
            Role::Base => "base",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "stretch" => Role::Stretch,
            "shrink" => Role::Shrink,
            "area" => Role::Area,
            "combined" => Role::Combined,
            "conversion" => Role::Conversion,
            "base" => Role::Base,
            other => return Err(format!("unknown role {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRecord {
    pub id: String,
    pub digits: FloatingSexNumber,
    /// Default magnitude: the value is `digits.pin(canonical_pin)`.
    pub canonical_pin: i32,
    pub role: Role,
    pub provenance: String,
}

impl CoefficientRecord {
    pub fn value(&self) -> ExactRational {
        self.digits.pin(self.canonical_pin).to_rational()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    /// Product of all operands.
    Multiply,
    /// First operand divided by each of the others.
    Divide,
    /// Reciprocal of the single operand.
    Reciprocal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationRule {
    pub id: String,
    pub operands: Vec<String>,
    pub operator: Operator,
    pub expected: String,
    pub anchor: String,
}

impl DerivationRule {
    pub fn new(id: &str, operator: Operator, operands: &[&str], expected: &str, anchor: &str) -> Self {
        DerivationRule {
            id: id.to_string(),
            operands: operands.iter().map(|s| s.to_string()).collect(),
            operator,
            expected: expected.to_string(),
            anchor: anchor.to_string(),
        }
    }

    fn referenced_ids(&self) -> impl Iterator<Item = &String> {
        self.operands.iter().chain(std::iter::once(&self.expected))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("rule {rule} references unknown coefficient {id}")]
    Dangling { rule: String, id: String },
    #[error("unknown coefficient {0}")]
    Missing(String),
    #[error("rule {0} has the wrong number of operands")]
    Arity(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registry {
    records: BTreeMap<String, CoefficientRecord>,
    rules: Vec<DerivationRule>,
}

const BUILTIN_RECORDS: &[(&str, &str, i32, Role, &str)] = &[
    ("XI1", "1;2;30", 0, Role::Stretch, "TMS 3 (Sb 13089) l.30, YBC 5022 l.65-66; 375/360, Gudea/Nippur ratio"),
    ("SHRINK", "57;36", -1, Role::Shrink, "TMS 3 (Sb 13089) l.30, YBC 5022 l.66 (rope); reciprocal of 1;2;30"),
    ("PI_SUSA", "3;7;30", 0, Role::Combined, "3 x 1;2;30, implied by the Susa texts (TMS 3)"),
    ("AREA2", "4;48", -1, Role::Area, "YBC 7243 (coefficient of a log), YBC 8600; 5 x 57;36"),
    ("AREA2_RECIP", "12;30", 0, Role::Area, "YBC 8600 reciprocal of 4;48; also the 12;30-cubit circle around a 12-cubit (1 ninda) hexagon"),
    ("DIAM2", "19;12", -1, Role::Conversion, "Formulary diameter coefficient 20 x 57;36, reciprocal of 3;7;30"),
    ("HEX_CIRC", "6;15", 0, Role::Combined, "TMS 3: circle around the unit hexagon, 6 x 1;2;30 (375 parts)"),
    ("AREA1", "5", -1, Role::Area, "Standard circle area c^2 x 0;05 = c^2/12 (pi = 3); YBC 7243"),
    ("THIRD", "20", -1, Role::Conversion, "Reciprocal of 3, circumference to diameter"),
    ("HEX", "3", 0, Role::Base, "Hexagon perimeter per diameter (pi = 3)"),
    ("SIX", "6", 0, Role::Base, "Hexagon perimeter in radii; circle of 6 x 60 parts"),
    ("TWELVE", "12", 0, Role::Base, "Ninda rope of 12 cubits; YBC 8600 factor 12"),
    ("XI2", "1;2;50", 0, Role::Stretch, "Almagest chord tables, 377/360"),
    ("PI_PTOL", "3;8;30", 0, Role::Combined, "Almagest, 3 x 1;2;50 = 377/120"),
];

fn builtin_rules() -> Vec<DerivationRule> {
    use Operator::*;
    vec![
        DerivationRule::new("pi_susa", Multiply, &["HEX", "XI1"], "PI_SUSA", "3 x 1;2;30 = 3;7;30"),
        DerivationRule::new("area_refined", Multiply, &["AREA1", "SHRINK"], "AREA2", "YBC 7243: 5 x 57;36 = 4;48"),
        DerivationRule::new("shrink_recip", Reciprocal, &["XI1"], "SHRINK", "TMS 3: reciprocal of 1;2;30 is 57;36"),
        DerivationRule::new("area_recip", Reciprocal, &["AREA2"], "AREA2_RECIP", "YBC 8600: reciprocal of 4;48 is 12;30"),
        DerivationRule::new("diameter_recip", Reciprocal, &["PI_SUSA"], "DIAM2", "Formulary: reciprocal of 3;7;30 is 19;12"),
        DerivationRule::new("hexagon_ratio", Divide, &["SIX", "HEX_CIRC"], "SHRINK", "TMS 3: 6 / 6;15 = 57;36"),
        DerivationRule::new("ninda_rope", Divide, &["TWELVE", "AREA2_RECIP"], "SHRINK", "YBC 5022 rope: 12 / 12;30 = 57;36"),
        DerivationRule::new("pi_ptolemy", Multiply, &["HEX", "XI2"], "PI_PTOL", "Almagest: 3 x 1;2;50 = 3;8;30"),
    ]
}

impl Registry {
    /// Registry with no records and no rules.
    pub fn empty() -> Self {
        Registry { records: BTreeMap::new(), rules: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut reg = Registry::empty();
        for &(id, digits, pin, role, provenance) in BUILTIN_RECORDS {
            reg.insert(CoefficientRecord {
                id: id.to_string(),
                digits: digits.parse().expect("built-in digits"),
                canonical_pin: pin,
                role,
                provenance: provenance.to_string(),
            });
        }
        reg.rules = builtin_rules();
        reg
    }

    pub fn lookup(&self, id: &str) -> Option<&CoefficientRecord> {
        self.records.get(id)
    }

    /// Pinned value of a record.
    pub fn value(&self, id: &str) -> Result<ExactRational, RegistryError> {
        self.lookup(id).map(CoefficientRecord::value).ok_or_else(|| RegistryError::Missing(id.to_string()))
    }

    pub fn digits(&self, id: &str) -> Result<&FloatingSexNumber, RegistryError> {
        self.lookup(id).map(|r| &r.digits).ok_or_else(|| RegistryError::Missing(id.to_string()))
    }

    /// Insert or replace; returns the replaced record.
    pub fn insert(&mut self, record: CoefficientRecord) -> Option<CoefficientRecord> {
        self.records.insert(record.id.clone(), record)
    }

    pub fn records(&self) -> impl Iterator<Item = &CoefficientRecord> {
        self.records.values()
    }

    pub fn rules(&self) -> &[DerivationRule] {
        &self.rules
    }

    pub fn add_rule(&mut self, rule: DerivationRule) {
        self.rules.push(rule);
    }

    /// Every rule refers only to known records.
    pub fn check_structure(&self) -> Result<(), RegistryError> {
        for rule in &self.rules {
            if let Some(id) = rule.referenced_ids().find(|id| !self.records.contains_key(*id)) {
                return Err(RegistryError::Dangling { rule: rule.id.clone(), id: id.clone() });
            }
            let arity_ok = match rule.operator {
                Operator::Reciprocal => rule.operands.len() == 1,
                Operator::Divide => rule.operands.len() >= 2,
                Operator::Multiply => !rule.operands.is_empty(),
            };
            if !arity_ok {
                return Err(RegistryError::Arity(rule.id.clone()));
            }
        }
        Ok(())
    }

    fn evaluate(&self, rule: &DerivationRule) -> Result<FloatingSexNumber, SexagesimalError> {
        let operand = |i: usize| &self.records[&rule.operands[i]].digits;
        match rule.operator {
            Operator::Multiply => Ok((1..rule.operands.len()).fold(operand(0).clone(), |acc, i| acc.mul(operand(i)))),
            Operator::Divide => (1..rule.operands.len()).try_fold(operand(0).clone(), |acc, i| acc.div(operand(i))),
            Operator::Reciprocal => operand(0).reciprocal(),
        }
    }
}

/// Evaluate every rule exactly. Rules needing the reciprocal of an
/// irregular number are reported as not applicable.
pub fn verify_derivations(registry: &Registry) -> Result<VerificationReport, RegistryError> {
    registry.check_structure()?;
    let mut report = VerificationReport::new();
    for rule in registry.rules() {
        let expected = &registry.records[&rule.expected].digits;
        let check_id = format!("registry.{}", rule.id);
        let entry = match registry.evaluate(rule) {
            Ok(actual) => CheckEntry::compare(check_id, &rule.anchor, expected, actual),
            Err(SexagesimalError::Irregular { value, factor }) => CheckEntry::new(
                check_id,
                &rule.anchor,
                expected.to_string(),
                format!("no finite reciprocal of {value} (prime factor {factor})"),
                CheckStatus::NotApplicable,
            ),
            Err(e) => CheckEntry::new(check_id, &rule.anchor, expected.to_string(), e.to_string(), CheckStatus::Fail),
        };
        report.push(entry);
    }
    Ok(report)
}

pub fn builtin_registry() -> Registry {
    Registry::builtin()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus has {} malformed line(s): {}", .0.len(), .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Lines(Vec<LineError>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub records_loaded: usize,
    pub warnings: Vec<String>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

fn parse_record(line: &str, base: &Registry) -> Result<CoefficientRecord, String> {
    let fields: Vec<&str> = line.splitn(4, '\t').collect();
    if fields.len() != 4 {
        return Err(format!("expected 4 TAB-separated fields, found {}", fields.len()));
    }
    let (id, digits, role, provenance) = (fields[0], fields[1], fields[2], fields[3]);
    if !valid_id(id) {
        return Err(format!("invalid id {id:?}"));
    }
    let digits: FloatingSexNumber = digits.parse().map_err(|e| format!("digits {digits:?}: {e}"))?;
    let role: Role = role.parse()?;
    if provenance.trim().is_empty() {
        return Err("empty provenance".to_string());
    }
    // The corpus carries no pin column; overrides keep the built-in magnitude.
    let canonical_pin = base.lookup(id).map_or(0, |r| r.canonical_pin);
    Ok(CoefficientRecord { id: id.to_string(), digits, canonical_pin, role, provenance: provenance.to_string() })
}

/// Merge corpus text over `base`. File records replace records with the same
/// id; each replacement is noted in the load report.
pub fn parse_corpus(text: &str, base: &Registry) -> Result<(Registry, LoadReport), CorpusError> {
    let mut registry = base.clone();
    let mut report = LoadReport::default();
    let mut errors = Vec::new();
    let mut seen = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_record(line, base) {
            Ok(record) => {
                if let Some(prev_line) = seen.insert(record.id.clone(), i + 1) {
                    report.warnings.push(format!(
                        "line {}: {} repeats line {prev_line}; later record wins",
                        i + 1,
                        record.id
                    ));
                } else if let Some(old) = base.lookup(&record.id) {
                    report.warnings.push(format!(
                        "line {}: {} overrides built-in {} with {}",
                        i + 1,
                        record.id,
                        old.digits,
                        record.digits
                    ));
                }
                registry.insert(record);
                report.records_loaded += 1;
            }
            Err(message) => errors.push(LineError { line: i + 1, message }),
        }
    }
    if !errors.is_empty() {
        return Err(CorpusError::Lines(errors));
    }
    Ok((registry, report))
}

/// Load a corpus file over the built-in registry.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<(Registry, LoadReport), CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| CorpusError::Io { path: path.display().to_string(), source })?;
    parse_corpus(&text, &Registry::builtin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn builtin_values() {
        let reg = Registry::builtin();
        let expect = [
            ("XI1", q(25, 24)),
            ("SHRINK", q(24, 25)),
            ("PI_SUSA", q(25, 8)),
            ("AREA2", q(2, 25)),
            ("AREA2_RECIP", q(25, 2)),
            ("DIAM2", q(8, 25)),
            ("HEX_CIRC", q(25, 4)),
            ("AREA1", q(1, 12)),
            ("THIRD", q(1, 3)),
            ("HEX", q(3, 1)),
            ("SIX", q(6, 1)),
            ("TWELVE", q(12, 1)),
            ("XI2", q(377, 360)),
            ("PI_PTOL", q(377, 120)),
        ];
        for (id, value) in expect {
            assert_eq!(reg.value(id).unwrap(), value, "{id}");
        }
        assert_eq!(reg.lookup("XI1").unwrap().digits.to_string(), "1;2;30");
        assert_eq!(reg.lookup("AREA2").unwrap().digits.to_string(), "4;48");
        assert_eq!(reg.lookup("XI2").unwrap().digits.to_string(), "1;2;50");
        assert!(reg.records().all(|r| !r.provenance.is_empty()));
        assert!(reg.value("NOPE").is_err());
    }

    #[test]
    fn builtin_rules_all_pass() {
        let report = verify_derivations(&Registry::builtin()).unwrap();
        assert_eq!(report.entries().len(), 8);
        assert!(report.entries().iter().all(|e| e.passed()), "{}", report.to_text());
    }

    #[test]
    fn injected_area_fault() {
        let mut reg = Registry::builtin();
        let mut rec = reg.lookup("AREA2").unwrap().clone();
        rec.digits = "4;47".parse().unwrap();
        reg.insert(rec);
        let report = verify_derivations(&reg).unwrap();
        let failed: Vec<_> = report.failures().map(|e| e.check_id.as_str()).collect();
        assert_eq!(failed, ["registry.area_refined"]);
        // 4;47 has no finite reciprocal, so the reciprocal rule cannot be judged.
        assert_eq!(report.get("registry.area_recip").unwrap().status, CheckStatus::NotApplicable);
        assert_eq!(report.summary().passed, 6);
    }

    #[test]
    fn xi2_reciprocal_not_applicable() {
        let mut reg = Registry::builtin();
        reg.add_rule(DerivationRule::new("xi2_recip", Operator::Reciprocal, &["XI2"], "SHRINK", "none"));
        let report = verify_derivations(&reg).unwrap();
        let entry = report.get("registry.xi2_recip").unwrap();
        assert_eq!(entry.status, CheckStatus::NotApplicable);
        assert!(entry.actual.contains("13"));
        assert!(report.ok());
    }

    #[test]
    fn dangling_rule_is_structural_error() {
        let mut reg = Registry::builtin();
        reg.add_rule(DerivationRule::new("bad", Operator::Multiply, &["XI1", "GHOST"], "XI1", ""));
        assert_eq!(
            verify_derivations(&reg),
            Err(RegistryError::Dangling { rule: "bad".into(), id: "GHOST".into() })
        );
    }

    #[test]
    fn corpus_records_and_errors() {
        let base = Registry::builtin();
        let text = "# comment\nTMS3.30\t57;36\tshrink\tSb 13089\n\n";
        let (reg, report) = parse_corpus(text, &base).unwrap();
        let rec = reg.lookup("TMS3.30").unwrap();
        assert_eq!(rec.provenance, "Sb 13089");
        assert_eq!(rec.digits.to_string(), "57;36");
        assert_eq!(report.records_loaded, 1);
        assert!(report.warnings.is_empty());

        let (reg, _) = parse_corpus("", &base).unwrap();
        assert_eq!(reg, base);

        match parse_corpus("A\t1\tbase\tok\nB\t61\tbase\tbad\n", &base) {
            Err(CorpusError::Lines(errs)) => {
                assert_eq!(errs.len(), 1);
                assert_eq!(errs[0].line, 2);
            }
            other => panic!("expected line error, got {other:?}"),
        }
        assert!(parse_corpus("A 1 base ok\n", &base).is_err());
        assert!(parse_corpus("A\t1\tbogus\tok\n", &base).is_err());
    }

    #[test]
    fn corpus_override_warns_and_keeps_pin() {
        let (reg, report) = parse_corpus("SHRINK\t57;36\tshrink\tcopy\n", &Registry::builtin()).unwrap();
        assert_eq!(reg.lookup("SHRINK").unwrap().canonical_pin, -1);
        assert_eq!(reg.lookup("SHRINK").unwrap().provenance, "copy");
        assert_eq!(report.warnings.len(), 1);
    }
}
