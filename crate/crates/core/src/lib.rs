//! Model library for a disc-chain continuum exoskeleton of the lumbar spine:
//! chain kinematics and design sizing, steering-cable statics, a lumbar load
//! model, and closed-loop assistive-force control through a Bowden cable.
//!
//! Conventions: SI units and radians everywhere. Chain frames put z along
//! the chain axis and the steering cable on the -y side, so a positive
//! sagittal joint rotation bends the chain toward the cable.

pub mod biomech;
pub mod control;
pub mod error;
pub mod kinematics;
pub mod statics;

pub use error::{Error, Result};
