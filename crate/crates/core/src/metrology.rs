//! Nippur and Gudea length systems.
//!
//! A Gudea finger is 24/25 of a Nippur finger, so one physical length that
//! measures 360 Nippur fingers measures 375 Gudea fingers. Within a system
//! 1 cubit = 30 fingers and 1 ninda = 12 cubits = 360 fingers.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circle::{CircleEngine, Stage};
use crate::oracle::ExactRational;
use crate::report::{CheckEntry, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetrologyError {
    #[error("length must be positive, got {0}")]
    NonPositive(ExactRational),
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitSystem {
    Nippur,
    Gudea,
}

impl UnitSystem {
    /// Size of this system's finger in Nippur fingers.
    pub fn unit_ratio_to_nippur(self) -> ExactRational {
        match self {
            UnitSystem::Nippur => ExactRational::one(),
            UnitSystem::Gudea => ExactRational::new(24, 25),
        }
    }
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitSystem::Nippur => "Nippur",
            UnitSystem::Gudea => "Gudea",
        })
    }
}

impl FromStr for UnitSystem {
    type Err = MetrologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "nippur" => Ok(UnitSystem::Nippur),
            "gudea" => Ok(UnitSystem::Gudea),
            _ => Err(MetrologyError::Unknown { kind: "system", name: s.to_string() }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthUnit {
    Finger,
    Cubit,
    Ninda,
}

impl LengthUnit {
    pub fn fingers(self) -> u32 {
        match self {
            LengthUnit::Finger => 1,
            LengthUnit::Cubit => 30,
            LengthUnit::Ninda => 360,
        }
    }
}

impl fmt::Display for LengthUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthUnit::Finger => "finger",
            LengthUnit::Cubit => "cubit",
            LengthUnit::Ninda => "ninda",
        })
    }
}

impl FromStr for LengthUnit {
    type Err = MetrologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().trim_end_matches('s') {
            "finger" | "unit" => Ok(LengthUnit::Finger),
            "cubit" => Ok(LengthUnit::Cubit),
            "ninda" => Ok(LengthUnit::Ninda),
            _ => Err(MetrologyError::Unknown { kind: "unit", name: s.to_string() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthQuantity {
    magnitude: ExactRational,
    pub unit: LengthUnit,
    pub system: UnitSystem,
}

impl LengthQuantity {
    pub fn new(magnitude: ExactRational, unit: LengthUnit, system: UnitSystem) -> Result<Self, MetrologyError> {
        if !magnitude.is_positive() {
            return Err(MetrologyError::NonPositive(magnitude));
        }
        Ok(LengthQuantity { magnitude, unit, system })
    }

    pub fn magnitude(&self) -> &ExactRational {
        &self.magnitude
    }

    /// Count in fingers of the same system.
    pub fn to_base_fingers(&self) -> ExactRational {
        &self.magnitude * ExactRational::from_integer(self.unit.fingers())
    }

    /// Same length and system, expressed in `unit`.
    pub fn to_unit(&self, unit: LengthUnit) -> LengthQuantity {
        let magnitude = self.to_base_fingers() / ExactRational::from_integer(unit.fingers());
        LengthQuantity { magnitude, unit, system: self.system }
    }

    /// Same physical length counted in `target` units of the same kind.
    pub fn convert_system(&self, target: UnitSystem) -> LengthQuantity {
        let scale = self.system.unit_ratio_to_nippur() / target.unit_ratio_to_nippur();
        LengthQuantity { magnitude: &self.magnitude * scale, unit: self.unit, system: target }
    }
}

impl fmt::Display for LengthQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ({})", self.magnitude, self.unit, self.system)
    }
}

pub fn to_base_fingers(q: &LengthQuantity) -> ExactRational {
    q.to_base_fingers()
}

pub fn convert_system(q: &LengthQuantity, target: UnitSystem) -> LengthQuantity {
    q.convert_system(target)
}

/// 120 Gudea fingers (4 cubits) of diameter give a circumference of 375
/// Gudea fingers, which is exactly 360 Nippur fingers.
pub fn gudea_circle_cross_check() -> VerificationReport {
    gudea_circle_cross_check_with(CircleEngine::builtin(), Stage::Stage2Susa, &UnitSystem::Gudea.unit_ratio_to_nippur())
}

/// The cross-check with a chosen engine, stage and Gudea/Nippur ratio, for
/// demonstrating how it fails under other assumptions.
pub fn gudea_circle_cross_check_with(
    engine: &CircleEngine,
    stage: Stage,
    gudea_to_nippur: &ExactRational,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let diameter = LengthQuantity::new(ExactRational::from_integer(4), LengthUnit::Cubit, UnitSystem::Gudea)
        .expect("positive");
    let fingers = diameter.to_base_fingers();
    report.push(CheckEntry::compare(
        "metrology.diameter_fingers",
        "4 cubits = 120 units",
        "120",
        &fingers,
    ));

    let circumference = engine.circumference(&fingers, stage).expect("positive diameter");
    report.push(CheckEntry::compare(
        "metrology.gudea_circumference",
        "120 Gudea units in diameter give 375 Gudea units",
        "375",
        &circumference,
    ));
    let nippur = &circumference.value * gudea_to_nippur;
    report.push(CheckEntry::compare(
        "metrology.nippur_circumference",
        "375 Gudea units = 360 Nippur units",
        "360",
        if circumference.exact { nippur.to_string() } else { format!("≈{}", nippur.to_decimal(6)) },
    ));
    report
}
