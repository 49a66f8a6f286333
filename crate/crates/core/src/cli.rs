//! The `xi` command line.
//!
//! Exit status: 0 on success, 1 on a domain error or failed verification,
//! 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::circle::{CircleEngine, Stage};
use crate::metrology::{LengthQuantity, LengthUnit, UnitSystem};
use crate::oracle::{ExactRational, Measure};
use crate::ptolemy;
use crate::registry::{load_corpus, CorpusError, LineError, Registry};
use crate::sexagesimal::{FloatingSexNumber, PinnedSexNumber};
use crate::tables::{self, Layout, TableName};
use crate::verify::verify_all;

#[derive(Debug, Parser)]
#[command(name = "xi", version, about = "Exact Old Babylonian sexagesimal arithmetic and circle formulary")]
struct Cli {
    /// Circle stage: 1 (hexagon), 2 (Susa), ptolemy or modern.
    #[arg(long, global = true, default_value = "2")]
    stage: Stage,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Coefficient corpus (id<TAB>digits<TAB>role<TAB>provenance) merged over the built-ins.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

impl From<Format> for Layout {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => Layout::Text,
            Format::Records => Layout::Records,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize a number: floating (1;2;30) or, with ',' or --pinned, pinned (1,2;30).
    Parse {
        number: String,
        #[arg(long)]
        pinned: bool,
    },
    /// Fix the magnitude of a floating number: value = reading x 60^exponent.
    #[command(allow_negative_numbers = true)]
    Pin { number: String, exponent: i32 },
    /// Floating product of two or more numbers.
    Mul {
        #[arg(required = true, num_args = 2..)]
        numbers: Vec<String>,
    },
    /// Sum of two or more pinned numbers.
    Add {
        #[arg(required = true, num_args = 2..)]
        numbers: Vec<String>,
    },
    /// Reciprocal of a regular floating number.
    Recip { number: String },
    /// Circle formulary at the selected --stage.
    Circle {
        #[command(subcommand)]
        op: CircleOp,
    },
    /// Convert a length between Nippur and Gudea units.
    Convert {
        magnitude: String,
        /// finger, cubit or ninda
        unit: String,
        /// nippur or gudea
        from: String,
        /// nippur or gudea
        to: String,
    },
    /// Chord-to-degree conversion and stretch factors.
    Ptolemy {
        #[command(subcommand)]
        op: PtolemyOp,
    },
    /// Print a reconstructed table.
    Table { name: TableArg },
    /// Replay every identity and report.
    Verify,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableArg {
    Formulary,
    Lunar,
    Ladder,
    Equivalents,
}

impl From<TableArg> for TableName {
    fn from(t: TableArg) -> Self {
        match t {
            TableArg::Formulary => TableName::Formulary,
            TableArg::Lunar => TableName::Lunar,
            TableArg::Ladder => TableName::Ladder,
            TableArg::Equivalents => TableName::Equivalents,
        }
    }
}

/// Numeric arguments accept decimals (15.16), fractions (25/4) and pinned
/// sexagesimal (6;15, 1,2;30).
#[derive(Debug, Subcommand)]
enum CircleOp {
    Circumference { diameter: String },
    Diameter { circumference: String },
    Arc { sectors: String, radius: String },
    Sectors { arc: String, radius: String },
    Hexagon { arc: String },
    ArcFromHexagon {
        hexagon_part: String,
        #[arg(default_value = "1")]
        radius: String,
    },
    Area { circumference: String },
    Perimeter { area: String },
    Sagitta { radius: String, chord: String },
    Chord { radius: String, sagitta: String },
    Fraction { chord: String, radius: String },
}

#[derive(Debug, Subcommand)]
enum PtolemyOp {
    /// Chord reading in arcminutes (e.g. 31;20) to degrees.
    Dms { arcminutes: String },
    /// Exact mean of two readings.
    Average { a: String, b: String },
    /// Stretch factor of the selected --stage.
    Xi,
}

enum Failure {
    Domain(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn quantity(text: &str) -> Result<ExactRational, Failure> {
    if text.contains(';') || text.contains(',') {
        Ok(text.parse::<PinnedSexNumber>().map_err(|e| format!("{text:?}: {e}"))?.to_rational())
    } else {
        Ok(text.parse::<ExactRational>()?)
    }
}

fn floating(text: &str) -> Result<FloatingSexNumber, Failure> {
    Ok(text.parse::<FloatingSexNumber>().map_err(|e| format!("{text:?}: {e}"))?)
}

fn pinned(text: &str) -> Result<PinnedSexNumber, Failure> {
    Ok(text.parse::<PinnedSexNumber>().map_err(|e| format!("{text:?}: {e}"))?)
}

fn decimal(q: &ExactRational) -> String {
    let s = q.to_decimal(10);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// `25/4 = 6;15 (6.25)`; irregular values omit the sexagesimal form,
/// approximate ones print only a decimal.
fn describe(q: &ExactRational, exact: bool) -> String {
    if !exact {
        return format!("≈{}", q.to_decimal(12));
    }
    if !q.is_positive() {
        return q.to_string();
    }
    match PinnedSexNumber::from_terminating(q) {
        Ok(p) => format!("{q} = {p} ({})", decimal(q)),
        Err(_) => format!("{q} ({})", decimal(q)),
    }
}

fn describe_measure(m: &Measure) -> String {
    describe(&m.value, m.exact)
}

fn load_registry(cli: &Cli) -> Result<(Registry, Vec<String>), CorpusError> {
    match &cli.corpus {
        None => Ok((Registry::builtin(), Vec::new())),
        Some(path) => load_corpus(path).map(|(reg, report)| (reg, report.warnings)),
    }
}

/// Run with `args` (including the program name), writing to `out` and
/// `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Domain(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if let Command::Verify = cli.command {
        return verify(cli, out, err);
    }
    let (registry, warnings) = load_registry(cli)?;
    for w in &warnings {
        writeln!(err, "warning: {w}")?;
    }
    match &cli.command {
        Command::Parse { number, pinned: force_pinned } => {
            if *force_pinned || number.contains(',') {
                let p = pinned(number)?;
                writeln!(out, "{p}\t{}", describe(&p.to_rational(), true))?;
            } else {
                let f = floating(number)?;
                writeln!(out, "{f}\t{}", describe(&f.reading(), true))?;
            }
        }
        Command::Pin { number, exponent } => {
            let p = floating(number)?.pin(*exponent);
            writeln!(out, "{p}\t{}", p.to_rational())?;
        }
        Command::Mul { numbers } => {
            let mut product = floating(&numbers[0])?;
            for n in &numbers[1..] {
                product = product.mul(&floating(n)?);
            }
            writeln!(out, "{product}")?;
        }
        Command::Add { numbers } => {
            let mut sum = pinned(&numbers[0])?;
            for n in &numbers[1..] {
                sum = sum.add(&pinned(n)?);
            }
            writeln!(out, "{sum}\t{}", sum.to_rational())?;
        }
        Command::Recip { number } => {
            writeln!(out, "{}", floating(number)?.reciprocal()?)?;
        }
        Command::Circle { op } => {
            let engine = CircleEngine::from_registry(&registry)?;
            writeln!(out, "{}", circle(&engine, cli.stage, op)?)?;
        }
        Command::Convert { magnitude, unit, from, to } => {
            let unit: LengthUnit = unit.parse()?;
            let q = LengthQuantity::new(quantity(magnitude)?, unit, from.parse::<UnitSystem>()?)?;
            let target: UnitSystem = to.parse()?;
            let converted = q.convert_system(target);
            writeln!(out, "{converted}")?;
            if unit != LengthUnit::Finger {
                writeln!(out, "= {} finger ({target})", converted.to_base_fingers())?;
            }
        }
        Command::Ptolemy { op } => {
            let xi2 = registry.value("XI2")?;
            match op {
                PtolemyOp::Dms { arcminutes } => {
                    let factor = ptolemy::working_reciprocal(&xi2).to_rational();
                    writeln!(out, "{}", ptolemy::chord_minutes_to_dms_with(&quantity(arcminutes)?, &factor)?)?;
                }
                PtolemyOp::Average { a, b } => {
                    let mean = ptolemy::average_pair(&pinned(a)?, &pinned(b)?);
                    writeln!(out, "{mean}\t{}", mean.to_rational())?;
                }
                PtolemyOp::Xi => {
                    let engine = CircleEngine::from_registry(&registry)?;
                    writeln!(out, "{}", describe_measure(&engine.xi(cli.stage)))?;
                }
            }
        }
        Command::Table { name } => {
            let text = tables::build((*name).into(), &registry, cli.format.into())?;
            write!(out, "{text}")?;
        }
        Command::Verify => unreachable!("handled above"),
    }
    Ok(0)
}

fn circle(engine: &CircleEngine, stage: Stage, op: &CircleOp) -> Result<String, Failure> {
    let q = quantity;
    Ok(match op {
        CircleOp::Circumference { diameter } => describe_measure(&engine.circumference(&q(diameter)?, stage)?),
        CircleOp::Diameter { circumference } => describe_measure(&engine.diameter_from_circumference(&q(circumference)?, stage)?),
        CircleOp::Arc { sectors, radius } => describe_measure(&engine.arc_length(&q(sectors)?, &q(radius)?, stage)?),
        CircleOp::Sectors { arc, radius } => describe_measure(&engine.sector_count(&q(arc)?, &q(radius)?, stage)?),
        CircleOp::Hexagon { arc } => describe(&engine.hexagon_part(&q(arc)?)?, true),
        CircleOp::ArcFromHexagon { hexagon_part, radius } => {
            describe(&engine.arc_from_hexagon_part(&q(hexagon_part)?, &q(radius)?)?, true)
        }
        CircleOp::Area { circumference } => describe_measure(&engine.area_from_circumference(&q(circumference)?, stage)?),
        CircleOp::Perimeter { area } => describe_measure(&engine.perimeter_from_area(&q(area)?)?),
        CircleOp::Sagitta { radius, chord } => describe_measure(&engine.sagitta(&q(radius)?, &q(chord)?)?),
        CircleOp::Chord { radius, sagitta } => describe_measure(&engine.chord_from_sagitta(&q(radius)?, &q(sagitta)?)?),
        CircleOp::Fraction { chord, radius } => {
            let f = engine.circle_fraction_from_chord(&q(chord)?, &q(radius)?, stage)?;
            format!("{}\tnearest {}", describe_measure(&f.parts), f.nearest)
        }
    })
}

fn verify(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (registry, line_errors) = match load_registry(cli) {
        Ok((registry, warnings)) => {
            for w in &warnings {
                writeln!(err, "warning: {w}")?;
            }
            (registry, Vec::new())
        }
        Err(CorpusError::Lines(errors)) => {
            for e in &errors {
                writeln!(err, "corpus error: {e}")?;
            }
            (Registry::builtin(), errors)
        }
        Err(e @ CorpusError::Io { .. }) => {
            writeln!(err, "corpus error: {e}")?;
            (Registry::builtin(), vec![LineError { line: 0, message: e.to_string() }])
        }
    };
    let report = verify_all(&registry, &line_errors);
    match cli.format {
        Format::Text => write!(out, "{}", report.to_text())?,
        Format::Records => write!(out, "{}", report.to_records())?,
    }
    if report.ok() {
        Ok(0)
    } else {
        let failed: Vec<_> = report.failures().map(|e| e.check_id.as_str()).collect();
        writeln!(err, "verification failed: {}", failed.join(", "))?;
        Ok(1)
    }
}
