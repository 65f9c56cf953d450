use thiserror::Error;

/// Errors raised by the model and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Disc or chain geometry that cannot exist (non-positive lengths,
    /// non-finite values, hole outside the disc rim).
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// Loading that the statics or lumbar model rejects.
    #[error("invalid load: {0}")]
    InvalidLoad(String),

    /// A joint rotation outside the contact-limited range of motion.
    #[error("joint {joint}: rotation {found_deg:.3} deg exceeds limit {limit_deg:.3} deg")]
    JointLimitExceeded {
        joint: usize,
        found_deg: f64,
        limit_deg: f64,
    },

    /// Operations that need a minimum number of discs.
    #[error("chain has {found} discs, need at least {minimum}")]
    ChainTooShort { found: usize, minimum: usize },

    /// Joint angle list whose length does not match the disc count.
    #[error("got {found} joint rotations for a chain of {expected} discs")]
    AngleCountMismatch { found: usize, expected: usize },

    /// A scalar argument outside its documented domain.
    #[error("{name} = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// Calibration data that does not determine the fitted parameter.
    #[error("calibration failed: {0}")]
    Calibration(String),

    /// A sagittal-plane routine was handed an out-of-plane configuration.
    #[error("configuration is not planar: {0}")]
    NotPlanar(String),

    /// Lookup of a strategy name that is not registered.
    #[error("unknown {kind} \"{name}\", available: {available}")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    /// The closed-loop simulation left its validity envelope.
    #[error("simulation unstable at t = {t:.4} s (tick {tick}): {reason}")]
    Unstable { t: f64, tick: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
