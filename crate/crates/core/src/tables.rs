//! Reconstructed tables, computed from the registry on every call.

use std::fmt;
use std::str::FromStr;

use crate::circle::{CircleEngine, Stage};
use crate::oracle::ExactRational;
use crate::ptolemy;
use crate::registry::{Registry, RegistryError};
use crate::sexagesimal::{FloatingSexNumber, PinnedSexNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableName {
    Formulary,
    Lunar,
    Ladder,
    Equivalents,
}

impl TableName {
    pub const ALL: [TableName; 4] = [TableName::Formulary, TableName::Lunar, TableName::Ladder, TableName::Equivalents];

    pub fn name(self) -> &'static str {
        match self {
            TableName::Formulary => "formulary",
            TableName::Lunar => "lunar",
            TableName::Ladder => "ladder",
            TableName::Equivalents => "equivalents",
        }
    }
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableName::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown table {s:?} (expected formulary, lunar, ladder or equivalents)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    /// Space-aligned columns.
    #[default]
    Text,
    /// TAB-separated fields.
    Records,
}

/// Rows of cells; the first row is the header.
pub fn render(rows: &[Vec<String>], layout: Layout) -> String {
    let mut out = String::new();
    match layout {
        Layout::Records => {
            for row in rows {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        Layout::Text => {
            let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
            let widths: Vec<usize> = (0..cols)
                .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
                .collect();
            for row in rows {
                let mut line = String::new();
                for (c, cell) in row.iter().enumerate() {
                    line.push_str(cell);
                    if c + 1 < row.len() {
                        line.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
                    }
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
    }
    out
}

fn dec(q: &ExactRational, places: usize) -> String {
    let s = q.to_decimal(places);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn padded(q: &ExactRational) -> String {
    FloatingSexNumber::from_rational(q).map_or_else(|_| format!("({} irregular)", dec(q, 6)), |f| f.format_padded())
}

fn row<const N: usize>(cells: [&str; N]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

pub fn build(name: TableName, registry: &Registry, layout: Layout) -> Result<String, RegistryError> {
    match name {
        TableName::Formulary => formulary(registry, layout),
        TableName::Lunar => lunar(registry, layout),
        TableName::Ladder => ladder(registry, layout),
        TableName::Equivalents => equivalents(registry, layout),
    }
}

/// The two-stage formulary with each adapted coefficient derived from its
/// constituents, plus a worked value for a circle of diameter 2.
pub fn formulary(registry: &Registry, layout: Layout) -> Result<String, RegistryError> {
    let engine = CircleEngine::from_registry(registry)?;
    let v = |id: &str| registry.value(id);
    let (hex, six, third, area1, xi, shrink, twelve) =
        (v("HEX")?, v("SIX")?, v("THIRD")?, v("AREA1")?, v("XI1")?, v("SHRINK")?, v("TWELVE")?);
    let s2 = Stage::Stage2Susa;
    let q = |n: i64, d: i64| ExactRational::new(n, d);
    let two = q(2, 1);
    let c2 = engine.circumference(&two, s2).expect("positive").value;
    let area = engine.area_from_circumference(&c2, s2).expect("positive").value;
    let area_coefficient = &area1 * &shrink;
    let perimeter = engine.perimeter_from_area(&area).expect("positive");

    let rows: Vec<(&str, &str, &str, ExactRational, String)> = vec![
        ("Diameter (d)", "", "d = (c x 20) x 0;57;36", &third * &shrink,
            format!("c = {} -> d = {}", dec(&c2, 6), dec(&engine.diameter_from_circumference(&c2, s2).expect("positive").value, 6))),
        ("Circumference (c)", "", "c = (d x 3) x 1;02;30", &hex * &xi,
            format!("d = 2 -> c = {}", dec(&c2, 6))),
        ("Vertices/Sector (UB)", "TMS 3", "N = 6 x r / (b x 57;36)", &six * &xi,
            format!("b = 0.25, r = 1 -> N = {}", dec(&engine.sector_count(&q(1, 4), &q(1, 1), s2).expect("positive").value, 6))),
        ("Arc-Length (UB)", "TMS 3", "b = (6/N x r) x 1;02;30", &six * &xi,
            format!("N = 25, r = 1 -> b = {}", dec(&engine.arc_length(&q(25, 1), &q(1, 1), s2).expect("positive").value, 6))),
        ("Hexagon-part (Rope)", "YBC 5022", "h = b x 57;36", shrink.clone(),
            format!("b = 0.25 -> h = {}", dec(&engine.hexagon_part(&q(1, 4)).expect("positive"), 6))),
        ("Arc-Length (Rope)", "YBC 5022", "b = h x 1;02;30", xi.clone(),
            format!("h = 6 -> b = {}", dec(&engine.arc_from_hexagon_part(&q(6, 1), &q(1, 1)).expect("positive"), 6))),
        ("Area (log)", "YBC 7243", "A = c^2 x (5 x 57;36)", area_coefficient.clone(),
            format!("c = {} -> A = {}", dec(&c2, 6), dec(&area, 6))),
        ("Diameter/Perimeter (log)", "YBC 8600", "3d = 57;36 x sqrt(A x 12 x 1;02;30)", &twelve * &xi,
            format!("A = {} -> 3d = {}{}", dec(&area, 6), if perimeter.exact { "" } else { "~" }, dec(&perimeter.value, 6))),
        ("Precision circle", "", "pi = hexagon perimeter 3 x 1;02;30", &hex * &xi,
            format!("pi = {}", dec(&(&hex * &xi), 6))),
    ];

    let mut cells = vec![row(["target", "source", "operational path", "coefficient", "decimal", "example"])];
    for (target, source, path, coefficient, example) in rows {
        cells.push(vec![
            target.to_string(),
            source.to_string(),
            path.to_string(),
            padded(&coefficient),
            dec(&coefficient, 6),
            example,
        ]);
    }
    cells.push(vec!["Stretch factor".into(), String::new(), "A_susa = A x 1;02;30".into(), padded(&xi), dec(&xi, 6), String::new()]);
    cells.push(vec!["Shrink factor".into(), String::new(), "V = V_susa x 57;36".into(), padded(&shrink), dec(&shrink, 6), String::new()]);
    Ok(render(&cells, layout))
}

/// Lunar diameter readings converted from chord minutes to degrees.
pub fn lunar(registry: &Registry, layout: Layout) -> Result<String, RegistryError> {
    let reciprocal = ptolemy::working_reciprocal(&registry.value("XI2")?);
    let factor = reciprocal.to_rational();
    let min: PinnedSexNumber = "31;20".parse().expect("literal");
    let max: PinnedSexNumber = "35;20".parse().expect("literal");
    let avg = ptolemy::average_pair(&min, &max);
    let values = [min, max, avg];

    let angles: Vec<String> = values
        .iter()
        .map(|v| ptolemy::chord_minutes_to_dms_with(&v.to_rational(), &factor).map_or_else(|e| e.to_string(), |a| a.to_string()))
        .collect();
    let degrees: Vec<String> = values
        .iter()
        .map(|v| {
            ptolemy::chord_minutes_to_dms_with(&v.to_rational(), &factor)
                .map_or_else(|e| e.to_string(), |a| dec(&a.to_degrees(), 6))
        })
        .collect();

    let mut cells = vec![row(["", "min", "max", "averaged"])];
    let mut line = |label: &str, items: Vec<String>| {
        let mut r = vec![label.to_string()];
        r.extend(items);
        cells.push(r);
    };
    line("chord (arcmin)", values.iter().map(|v| v.to_string()).collect());
    line("chord (decimal)", values.iter().map(|v| dec(&v.to_rational(), 6)).collect());
    line("degrees", angles);
    line("degrees (decimal)", degrees);
    let mut out = render(&cells, layout);
    if layout == Layout::Text {
        out.push_str(&format!(
            "factor {reciprocal} = {} (reciprocal of {} to two places), rounded to the nearest second\n",
            dec(&factor, 6),
            registry.digits("XI2")?
        ));
    }
    Ok(out)
}

/// Relative error of each stage's stretch factor against pi/3.
pub fn ladder(registry: &Registry, layout: Layout) -> Result<String, RegistryError> {
    let engine = CircleEngine::from_registry(registry)?;
    let hundred = ExactRational::from_integer(100);
    let mut cells = vec![row(["stage", "xi", "xi (decimal)", "error vs pi/3", "per degree", "error vs pi/180"])];
    for rung in ptolemy::refinement_ladder_with(&engine) {
        let sexagesimal = FloatingSexNumber::from_rational(&rung.xi.value).map_or_else(
            |_| {
                let id = if rung.stage == Stage::Ptolemy { "XI2" } else { "XI1" };
                registry.digits(id).map(|d| d.to_string()).unwrap_or_default()
            },
            |f| f.to_string(),
        );
        cells.push(vec![
            rung.stage.label().to_string(),
            sexagesimal,
            dec(&rung.xi.value, 8),
            format!("{}%", (&rung.relative_error * &hundred).to_decimal(5)),
            dec(&rung.per_degree, 8),
            format!("{}%", (&rung.per_degree_relative_error * &hundred).to_decimal(5)),
        ]);
    }
    let modern = engine.xi(Stage::Modern).value;
    cells.push(vec![
        Stage::Modern.label().to_string(),
        String::new(),
        dec(&modern, 8),
        "0.00000%".into(),
        dec(&(&modern / ExactRational::from_integer(60)), 8),
        "0.00000%".into(),
    ]);
    Ok(render(&cells, layout))
}

/// Babylonian readings of 1;2;30 and 57;36 against radian values.
pub fn equivalents(registry: &Registry, layout: Layout) -> Result<String, RegistryError> {
    let hundred = ExactRational::from_integer(100);
    let mut cells = vec![row(["quantity", "sexagesimal", "decimal", "modern", "modern value", "abs. diff", "rel. diff"])];
    for eq in ptolemy::radian_equivalents_with(registry)? {
        cells.push(vec![
            eq.label.to_string(),
            eq.sexagesimal.to_string(),
            dec(&eq.value, 7),
            eq.modern.source.to_string(),
            dec(&eq.modern.value, 7),
            dec(&eq.abs_diff, 7),
            format!("{}%", (&eq.rel_diff * &hundred).to_decimal(3)),
        ]);
    }
    Ok(render(&cells, layout))
}
