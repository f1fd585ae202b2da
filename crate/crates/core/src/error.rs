//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors raised by exact-arithmetic, character-group, and sum-evaluation
/// operations.
///
/// Domain violations (an index out of range, a non-divisor where a divisor
/// is required) are kept distinct from resource refusals (a work or
/// enumeration cap exceeded) so callers can map them to different exit
/// paths. [`Error::NonIntegerSum`] can only be produced by a bug in an
/// accumulation that is supposed to be rational-integer valued; it is never
/// expected in normal operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("moduli {a} and {b} share the factor {g}")]
    NonCoprimeModuli { a: u64, b: u64, g: u64 },

    #[error("residue {residue} out of range for modulus {modulus}")]
    ResidueRange { residue: u64, modulus: u64 },

    #[error("{divisor} is not a divisor of {n}")]
    NotADivisor { divisor: u64, n: u64 },

    #[error("filtration index {i} exceeds the prime-power exponent {m}")]
    FiltrationRange { i: u32, m: u32 },

    #[error("parameter {name} = {value} out of range (maximum {max})")]
    ParamRange {
        name: &'static str,
        value: u64,
        max: u64,
    },

    #[error("character index {index} out of range: the group mod {n} has {phi} characters")]
    CharacterIndex { index: u64, n: u64, phi: u64 },

    #[error("character group mod {n} has {phi} elements, over the enumeration cap {cap}")]
    GroupCap { n: u64, phi: u64, cap: u64 },

    #[error("naive evaluation needs {steps} elementary steps, over the work cap {cap}")]
    WorkCap { steps: u128, cap: u128 },

    #[error("cyclotomic sum of order {order} did not reduce to a rational integer")]
    NonIntegerSum { order: u64 },
}

impl Error {
    /// True for errors caused by a configurable resource cap rather than by
    /// invalid input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::GroupCap { .. } | Error::WorkCap { .. })
    }
}
