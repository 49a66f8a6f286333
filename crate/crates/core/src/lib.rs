//! Exact sexagesimal arithmetic around the Old Babylonian circle
//! coefficient 1;2;30 (= 25/24): floating and pinned base-60 numbers,
//! reciprocals of regular numbers, a coefficient registry, the two-stage
//! circle formulary, Nippur/Gudea metrology and the later refinement to
//! 1;2;50 and modern pi.

#![allow(clippy::result_large_err)]

pub mod circle;
pub mod cli;
pub mod metrology;
pub mod oracle;
pub mod ptolemy;
pub mod registry;
pub mod report;
pub mod sexagesimal;
pub mod tables;
pub mod verify;

pub use circle::{CircleEngine, Stage};
pub use oracle::{ExactRational, Measure, RealApprox};
pub use report::{CheckEntry, CheckStatus, VerificationReport};
pub use sexagesimal::{FloatingSexNumber, PinnedSexNumber, SexagesimalError};
