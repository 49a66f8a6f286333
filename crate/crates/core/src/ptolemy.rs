//! The 1;2;50 refinement: converting chord readings to degrees, and the
//! comparison of each stage's stretch factor with modern radian values.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::circle::{CircleEngine, Stage};
use crate::oracle::{relative_error, ExactRational, Measure, ModernConstant, RealApprox};
use crate::registry::{Registry, RegistryError};
use crate::sexagesimal::{FloatingSexNumber, PinnedSexNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PtolemyError {
    #[error("arcminute value must be positive, got {0}")]
    NonPositive(ExactRational),
    #[error("cannot parse angle {0:?}")]
    Parse(String),
    #[error("angle {0} arcseconds is out of range")]
    Overflow(ExactRational),
}

/// Whole degrees, arcminutes and arcseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DmsAngle {
    pub degrees: u32,
    pub arcminutes: u8,
    pub arcseconds: u8,
}

impl DmsAngle {
    pub fn from_arcseconds(total: u64) -> Option<Self> {
        Some(DmsAngle {
            degrees: u32::try_from(total / 3600).ok()?,
            arcminutes: ((total / 60) % 60) as u8,
            arcseconds: (total % 60) as u8,
        })
    }

    pub fn to_arcseconds(self) -> u64 {
        3600 * u64::from(self.degrees) + 60 * u64::from(self.arcminutes) + u64::from(self.arcseconds)
    }

    pub fn to_degrees(self) -> ExactRational {
        ExactRational::new(self.to_arcseconds() as i64, 3600)
    }
}

impl fmt::Display for DmsAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}°{:02}'{:02}\"", self.degrees, self.arcminutes, self.arcseconds)
    }
}

impl FromStr for DmsAngle {
    type Err = PtolemyError;

    /// `D°M'S"`, spaces allowed between fields; minutes and seconds must be
    /// below 60.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PtolemyError::Parse(s.to_string());
        let (d, rest) = s.trim().split_once('°').ok_or_else(err)?;
        let (m, rest) = rest.trim().split_once('\'').ok_or_else(err)?;
        let sec = rest.trim().strip_suffix('"').ok_or_else(err)?;
        let degrees: u32 = d.trim().parse().map_err(|_| err())?;
        let arcminutes: u8 = m.trim().parse().map_err(|_| err())?;
        let arcseconds: u8 = sec.trim().parse().map_err(|_| err())?;
        if arcminutes >= 60 || arcseconds >= 60 {
            return Err(err());
        }
        Ok(DmsAngle { degrees, arcminutes, arcseconds })
    }
}

/// The reciprocal of 1;2;50 rounded to two sexagesimal places. 360/377
/// itself does not terminate; 0;57,18 (= 0.955) is the value that reproduces
/// the published lunar diameters.
pub fn working_reciprocal(xi2: &ExactRational) -> PinnedSexNumber {
    let exact = xi2.recip().expect("nonzero stretch factor");
    PinnedSexNumber::from_rational_rounded(&exact, 2).expect("positive").number
}

fn builtin_factor() -> ExactRational {
    working_reciprocal(&Registry::builtin().value("XI2").expect("built-in XI2")).to_rational()
}

/// Chord reading in arcminutes to an angle: multiply by 0;57,18 and round
/// to the nearest arcsecond, halves away from zero.
pub fn chord_minutes_to_dms(arcminutes: &ExactRational) -> Result<DmsAngle, PtolemyError> {
    chord_minutes_to_dms_with(arcminutes, &builtin_factor())
}

pub fn chord_minutes_to_dms_with(arcminutes: &ExactRational, factor: &ExactRational) -> Result<DmsAngle, PtolemyError> {
    if !arcminutes.is_positive() {
        return Err(PtolemyError::NonPositive(arcminutes.clone()));
    }
    let seconds = arcminutes * factor * ExactRational::from_integer(60);
    seconds
        .round()
        .to_u64()
        .and_then(DmsAngle::from_arcseconds)
        .ok_or(PtolemyError::Overflow(seconds))
}

/// A floating reading such as `31;20`, taken as arcminutes with the first
/// digit in the units place.
pub fn chord_floating_to_dms(value: &FloatingSexNumber) -> Result<DmsAngle, PtolemyError> {
    chord_minutes_to_dms(&value.pin(0).to_rational())
}

pub fn average_pair(a: &PinnedSexNumber, b: &PinnedSexNumber) -> PinnedSexNumber {
    a.add(b).half()
}

pub fn xi_for_stage(stage: Stage) -> Measure {
    CircleEngine::builtin().xi(stage)
}

/// How far a stage's stretch factor sits from pi/3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementStageError {
    pub stage: Stage,
    pub xi: Measure,
    /// `(pi/3 - xi) / (pi/3)`, signed: negative when xi overshoots.
    pub relative_error: ExactRational,
    /// `xi / 60`, the stretch factor for one part of 360.
    pub per_degree: ExactRational,
    /// `(pi/180 - xi/60) / (pi/180)`.
    pub per_degree_relative_error: ExactRational,
}

impl RefinementStageError {
    pub fn percent(&self) -> ExactRational {
        &self.relative_error * ExactRational::from_integer(100)
    }
}

pub fn refinement_ladder() -> Vec<RefinementStageError> {
    refinement_ladder_with(CircleEngine::builtin())
}

pub fn refinement_ladder_with(engine: &CircleEngine) -> Vec<RefinementStageError> {
    let pi_over_3 = engine.xi(Stage::Modern).value;
    let sixty = ExactRational::from_integer(60);
    let pi_over_180 = &pi_over_3 / &sixty;
    [Stage::Stage2Susa, Stage::Ptolemy]
        .into_iter()
        .map(|stage| {
            let xi = engine.xi(stage);
            let per_degree = &xi.value / &sixty;
            RefinementStageError {
                stage,
                relative_error: relative_error(&xi.value, &pi_over_3),
                per_degree_relative_error: relative_error(&per_degree, &pi_over_180),
                per_degree,
                xi,
            }
        })
        .collect()
}

/// One pairing of a Babylonian coefficient reading with its modern value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceRow {
    pub label: &'static str,
    pub sexagesimal: PinnedSexNumber,
    pub value: ExactRational,
    pub modern: RealApprox,
    pub abs_diff: ExactRational,
    /// `|value - modern| / modern`.
    pub rel_diff: ExactRational,
}

pub fn radian_equivalents() -> Vec<EquivalenceRow> {
    radian_equivalents_with(&Registry::builtin()).expect("built-in registry is complete")
}

/// Rows: 1;2;30 pinned at 0 against pi/3, pinned at -1 against pi/180, and
/// 57;36 read as 57.6 against 180/pi.
pub fn radian_equivalents_with(registry: &Registry) -> Result<Vec<EquivalenceRow>, RegistryError> {
    let xi = registry.digits("XI1")?;
    let shrink = registry.digits("SHRINK")?;
    let rows = [
        ("radian for 60 degrees", xi.pin(0), ModernConstant::PiOver3),
        ("radian for 1 degree", xi.pin(-1), ModernConstant::PiOver180),
        ("degrees per radian", shrink.pin(0), ModernConstant::DegPerRadian),
    ];
    Ok(rows
        .into_iter()
        .map(|(label, pinned, constant)| {
            let modern = constant.value();
            let value = pinned.to_rational();
            let abs_diff = (&value - &modern.value).abs();
            let rel_diff = &abs_diff / &modern.value;
            EquivalenceRow { label, sexagesimal: pinned, value, modern, abs_diff, rel_diff }
        })
        .collect())
}
