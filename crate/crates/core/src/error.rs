use thiserror::Error;

/// Violations of the model's domain invariants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{mix} has no energy sources")]
    EmptyMix { mix: String },

    #[error("energy source name must not be empty")]
    UnnamedSource,

    #[error("duplicate energy source `{name}` in {mix}")]
    DuplicateSource { mix: String, name: String },

    #[error("{field} of `{owner}` must be {constraint}, got {value}")]
    OutOfRange {
        owner: String,
        field: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error("{mix} has zero total energy; weighted factors are undefined")]
    ZeroTotalEnergy { mix: String },

    #[error("cylinder mass of fuel `{fuel}` is zero")]
    ZeroCylinderMass { fuel: String },

    #[error("malformed tariff schedule: {0}")]
    MalformedTariff(String),

    #[error("appliance counts sum to {counts} but the scenario has {households} households")]
    PartitionMismatch { counts: u64, households: u64 },

    #[error("appliance `{appliance}` references undefined fuel `{fuel}`")]
    UnknownFuel { appliance: String, fuel: String },

    #[error("duplicate {kind} `{name}`")]
    DuplicateName { kind: &'static str, name: String },

    #[error("no appliance named `{0}` in scenario")]
    UnknownAppliance(String),

    #[error("{0} must be positive")]
    NonPositiveDenominator(&'static str),

    #[error("annual rate {0} must be greater than -1")]
    RateBelowMinusOne(f64),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

pub(crate) fn check(ok: bool, owner: &str, field: &'static str, constraint: &'static str, value: f64) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(ModelError::OutOfRange {
            owner: owner.to_string(),
            field,
            constraint,
            value,
        })
    }
}
