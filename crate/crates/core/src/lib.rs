//! Energy, CO₂ and cost model for a national fleet of household cooking
//! appliances, comparing LPG stoves against induction stoves fed by the
//! electricity grid.
//!
//! The pieces, bottom-up:
//! - [`mix`]: generation mix, primary energy and grid emission factor
//! - [`appliance`]: per-household final/primary energy and emissions
//! - [`tariff`]: block electricity tariffs and subsidized fuel cylinders
//! - [`scenario`]: national aggregation and household reports
//! - [`analysis`]: scenario comparison, affordability, projections
//! - [`io`]: `.scn` scenario files and report emitters
//! - [`cli`]: the `cookmodel` command

// range checks are written `!(x > 0.0)` so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod appliance;
pub mod cli;
pub mod error;
pub mod io;
pub mod mix;
pub mod scenario;
pub mod tariff;

pub use analysis::{
    affordability, affordability_report, compare, compare_reports, per_capita_subsidy, project_compound, Affordability,
    AffordabilityReport, ComparisonReport, Metric, MetricDelta,
};
pub use appliance::{ApplianceProfile, Carrier, FuelSpec};
pub use error::ModelError;
pub use mix::{EnergySource, GenerationMix, MixReport};
pub use scenario::{Demographics, Fuel, HouseholdReport, NationalReport, NationalRow, Scenario};
pub use tariff::{BlockBound, CostBreakdown, FuelPricing, TariffBlock, TariffSchedule};
