//! The two-stage circle formulary.
//!
//! Stage 1 treats the circle as its inscribed hexagon (circumference `3d`).
//! Stage 2 stretches hexagon lengths by 1;2;30 and shrinks arcs back by
//! 57;36, which amounts to pi = 3;7;30. The Ptolemy stage uses 1;2;50 and the
//! modern stage real pi.
//!
//! Every coefficient comes from a [`Registry`], so an altered corpus changes
//! the numbers produced here. The free functions use the built-in registry.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::BigInt;
use thiserror::Error;

use crate::oracle::{default_sqrt_tolerance, sqrt_exact_or_approx, ExactRational, Measure, ModernConstant};
use crate::registry::{Registry, RegistryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Stage1Hexagon,
    Stage2Susa,
    Ptolemy,
    Modern,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::Stage1Hexagon, Stage::Stage2Susa, Stage::Ptolemy, Stage::Modern];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Stage1Hexagon => "1",
            Stage::Stage2Susa => "2",
            Stage::Ptolemy => "ptolemy",
            Stage::Modern => "modern",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Stage::Stage1Hexagon => "hexagon (pi = 3)",
            Stage::Stage2Susa => "Susa (pi = 3;7;30)",
            Stage::Ptolemy => "Ptolemy (pi = 3;8;30)",
            Stage::Modern => "modern pi",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "1" | "stage1" | "hexagon" => Stage::Stage1Hexagon,
            "2" | "stage2" | "susa" => Stage::Stage2Susa,
            "ptolemy" | "3" => Stage::Ptolemy,
            "modern" | "pi" => Stage::Modern,
            other => return Err(format!("unknown stage {other:?} (expected 1, 2, ptolemy or modern)")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircleError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: ExactRational },
    #[error("chord {chord} is longer than the diameter {diameter}")]
    ChordTooLong { chord: ExactRational, diameter: ExactRational },
    #[error("sagitta {sagitta} is outside [0, r = {radius}]")]
    SagittaOutOfRange { sagitta: ExactRational, radius: ExactRational },
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

type Result<T> = std::result::Result<T, CircleError>;

fn positive(name: &'static str, value: &ExactRational) -> Result<()> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(CircleError::NonPositive { name, value: value.clone() })
    }
}

/// Circle fraction `N` from a chord treated as an arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleFraction {
    pub parts: Measure,
    pub nearest: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleEngine {
    hexagon: ExactRational,
    six: ExactRational,
    twelve: ExactRational,
    third: ExactRational,
    area_base: ExactRational,
    stretch: ExactRational,
    shrink: ExactRational,
    stretch_ptolemy: ExactRational,
    pi: ExactRational,
    pi_over_3: ExactRational,
    sqrt_tolerance: ExactRational,
}

static BUILTIN: LazyLock<CircleEngine> =
    LazyLock::new(|| CircleEngine::from_registry(&Registry::builtin()).expect("built-in registry is complete"));

impl CircleEngine {
    pub fn builtin() -> &'static CircleEngine {
        &BUILTIN
    }

    /// Reads HEX, SIX, TWELVE, THIRD, AREA1, XI1, SHRINK and XI2 at their
    /// canonical pins.
    pub fn from_registry(registry: &Registry) -> std::result::Result<Self, RegistryError> {
        Ok(CircleEngine {
            hexagon: registry.value("HEX")?,
            six: registry.value("SIX")?,
            twelve: registry.value("TWELVE")?,
            third: registry.value("THIRD")?,
            area_base: registry.value("AREA1")?,
            stretch: registry.value("XI1")?,
            shrink: registry.value("SHRINK")?,
            stretch_ptolemy: registry.value("XI2")?,
            pi: ModernConstant::Pi.value().value,
            pi_over_3: ModernConstant::PiOver3.value().value,
            sqrt_tolerance: default_sqrt_tolerance(),
        })
    }

    /// Stretch factor of a stage: 1, 1;2;30, 1;2;50 or pi/3.
    pub fn xi(&self, stage: Stage) -> Measure {
        match stage {
            Stage::Stage1Hexagon => Measure::exact(ExactRational::one()),
            Stage::Stage2Susa => Measure::exact(self.stretch.clone()),
            Stage::Ptolemy => Measure::exact(self.stretch_ptolemy.clone()),
            Stage::Modern => Measure::approx(self.pi_over_3.clone()),
        }
    }

    /// Effective circle constant: 3, 25/8, 377/120 or pi.
    pub fn circle_constant(&self, stage: Stage) -> Measure {
        match stage {
            Stage::Modern => Measure::approx(self.pi.clone()),
            _ => self.xi(stage).map(|x| &self.hexagon * x),
        }
    }

    pub fn circumference(&self, d: &ExactRational, stage: Stage) -> Result<Measure> {
        positive("diameter", d)?;
        Ok(match stage {
            Stage::Stage1Hexagon => Measure::exact(d * &self.hexagon),
            Stage::Stage2Susa => Measure::exact(d * &self.hexagon * &self.stretch),
            Stage::Ptolemy => Measure::exact(d * &self.hexagon * &self.stretch_ptolemy),
            Stage::Modern => Measure::approx(d * &self.pi),
        })
    }

    pub fn diameter_from_circumference(&self, c: &ExactRational, stage: Stage) -> Result<Measure> {
        positive("circumference", c)?;
        Ok(match stage {
            Stage::Stage1Hexagon => Measure::exact(c * &self.third),
            // (c x 20) x 0;57,36, i.e. c x 19;12
            Stage::Stage2Susa => Measure::exact(c * &self.third * &self.shrink),
            Stage::Ptolemy => Measure::exact(c * &self.third / &self.stretch_ptolemy),
            Stage::Modern => Measure::approx(c / &self.pi),
        })
    }

    /// Arc of one of `n` equal parts: `(6/n) * r * xi`.
    pub fn arc_length(&self, n: &ExactRational, r: &ExactRational, stage: Stage) -> Result<Measure> {
        positive("sector count", n)?;
        positive("radius", r)?;
        let base = &self.six / n * r;
        Ok(self.xi(stage).map(|x| base * x))
    }

    /// Number of parts `n` whose arc at radius `r` is `b`. Not rounded.
    pub fn sector_count(&self, b: &ExactRational, r: &ExactRational, stage: Stage) -> Result<Measure> {
        positive("arc length", b)?;
        positive("radius", r)?;
        Ok(match stage {
            // 6 r / (b x 57;36)
            Stage::Stage2Susa => Measure::exact(&self.six * r / (b * &self.shrink)),
            _ => self.xi(stage).map(|x| &self.six * r * x / b),
        })
    }

    /// Straight hexagon portion of an arc: `b x 0;57,36`.
    pub fn hexagon_part(&self, b: &ExactRational) -> Result<ExactRational> {
        positive("arc length", b)?;
        Ok(b * &self.shrink)
    }

    /// Arc from a hexagon portion: stretch by 1;2;30, then scale by the radius.
    pub fn arc_from_hexagon_part(&self, h: &ExactRational, r: &ExactRational) -> Result<ExactRational> {
        positive("hexagon part", h)?;
        positive("radius", r)?;
        Ok(h * &self.stretch * r)
    }

    /// `c^2 x 0;05` at stage 1, `c^2 x 0;05 x 0;57,36` (= c^2 x 0;04,48) at
    /// stage 2, `c^2 / 4pi` otherwise.
    pub fn area_from_circumference(&self, c: &ExactRational, stage: Stage) -> Result<Measure> {
        positive("circumference", c)?;
        let c2 = c.square();
        Ok(match stage {
            Stage::Stage1Hexagon => Measure::exact(c2 * &self.area_base),
            Stage::Stage2Susa => Measure::exact(c2 * &self.area_base * &self.shrink),
            Stage::Ptolemy => Measure::exact(c2 * &self.area_base / &self.stretch_ptolemy),
            Stage::Modern => Measure::approx(c2 / (ExactRational::from_integer(4) * &self.pi)),
        })
    }

    /// Stage-1 perimeter `3d = 57;36 x sqrt(A x 12 x 1;2;30)` from a stage-2
    /// area.
    pub fn perimeter_from_area(&self, a: &ExactRational) -> Result<Measure> {
        positive("area", a)?;
        let radicand = a * &self.twelve * &self.stretch;
        let root = sqrt_exact_or_approx(&radicand, &self.sqrt_tolerance).expect("positive radicand");
        Ok(root.map(|x| x * &self.shrink))
    }

    /// Height of the segment cut off by `chord`: `r - sqrt(r^2 - (chord/2)^2)`.
    pub fn sagitta(&self, r: &ExactRational, chord: &ExactRational) -> Result<Measure> {
        positive("radius", r)?;
        positive("chord", chord)?;
        let diameter = r * ExactRational::from_integer(2);
        if *chord > diameter {
            return Err(CircleError::ChordTooLong { chord: chord.clone(), diameter });
        }
        let half = chord / ExactRational::from_integer(2);
        let radicand = r.square() - half.square();
        if radicand.is_zero() {
            return Ok(Measure::exact(r.clone()));
        }
        let root = sqrt_exact_or_approx(&radicand, &self.sqrt_tolerance).expect("positive radicand");
        Ok(root.map(|x| r - x))
    }

    /// Chord of a segment of height `s`: `2 sqrt(2rs - s^2)`.
    pub fn chord_from_sagitta(&self, r: &ExactRational, s: &ExactRational) -> Result<Measure> {
        positive("radius", r)?;
        if *s < ExactRational::zero() || s > r {
            return Err(CircleError::SagittaOutOfRange { sagitta: s.clone(), radius: r.clone() });
        }
        let radicand = ExactRational::from_integer(2) * r * s - s.square();
        if radicand.is_zero() {
            return Ok(Measure::exact(ExactRational::zero()));
        }
        let root = sqrt_exact_or_approx(&radicand, &self.sqrt_tolerance).expect("positive radicand");
        Ok(root.map(|x| x * ExactRational::from_integer(2)))
    }

    /// `N = circumference(2r) / chord`, the chord standing in for its arc.
    pub fn circle_fraction_from_chord(&self, chord: &ExactRational, r: &ExactRational, stage: Stage) -> Result<CircleFraction> {
        positive("chord", chord)?;
        positive("radius", r)?;
        let c = self.circumference(&(r * ExactRational::from_integer(2)), stage)?;
        let parts = c.map(|c| c / chord);
        let nearest = parts.value.round();
        Ok(CircleFraction { parts, nearest })
    }
}

pub fn circumference(d: &ExactRational, stage: Stage) -> Result<Measure> {
    CircleEngine::builtin().circumference(d, stage)
}

pub fn diameter_from_circumference(c: &ExactRational, stage: Stage) -> Result<Measure> {
    CircleEngine::builtin().diameter_from_circumference(c, stage)
}

pub fn arc_length(n: &ExactRational, r: &ExactRational, stage: Stage) -> Result<Measure> {
    CircleEngine::builtin().arc_length(n, r, stage)
}

pub fn sector_count(b: &ExactRational, r: &ExactRational, stage: Stage) -> Result<Measure> {
    CircleEngine::builtin().sector_count(b, r, stage)
}

pub fn hexagon_part(b: &ExactRational) -> Result<ExactRational> {
    CircleEngine::builtin().hexagon_part(b)
}

pub fn arc_from_hexagon_part(h: &ExactRational, r: &ExactRational) -> Result<ExactRational> {
    CircleEngine::builtin().arc_from_hexagon_part(h, r)
}

pub fn area_from_circumference(c: &ExactRational, stage: Stage) -> Result<Measure> {
    CircleEngine::builtin().area_from_circumference(c, stage)
}

pub fn perimeter_from_area(a: &ExactRational) -> Result<Measure> {
    CircleEngine::builtin().perimeter_from_area(a)
}

pub fn sagitta(r: &ExactRational, chord: &ExactRational) -> Result<Measure> {
    CircleEngine::builtin().sagitta(r, chord)
}

pub fn chord_from_sagitta(r: &ExactRational, s: &ExactRational) -> Result<Measure> {
    CircleEngine::builtin().chord_from_sagitta(r, s)
}

pub fn circle_fraction_from_chord(chord: &ExactRational, r: &ExactRational, stage: Stage) -> Result<CircleFraction> {
    CircleEngine::builtin().circle_fraction_from_chord(chord, r, stage)
}
