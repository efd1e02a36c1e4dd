//! National scenarios: aggregate household technologies over the whole
//! fleet and report energy, cost and emissions per appliance.

use std::collections::HashSet;

use serde::Serialize;

use crate::appliance::{ApplianceProfile, Carrier, FuelSpec};
use crate::error::{check, ModelError, Result};
use crate::mix::GenerationMix;
use crate::tariff::{CostBreakdown, FuelPricing, TariffSchedule};

/// kWh → GWh and US$ → million US$.
pub const MILLION: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Demographics {
    pub population: f64,
    pub households: u64,
    pub avg_household_size: Option<f64>,
    /// US$/y.
    pub minimum_wage: Option<f64>,
    /// Cost of the basic goods basket, US$/y.
    pub basic_basket: Option<f64>,
}

impl Demographics {
    pub fn validate(&self) -> Result<()> {
        check(
            self.population > 0.0,
            "demographics",
            "population",
            "> 0",
            self.population,
        )?;
        check(
            self.households > 0,
            "demographics",
            "households",
            "> 0",
            self.households as f64,
        )?;
        if let Some(size) = self.avg_household_size {
            check(size > 0.0, "demographics", "avg_household_size", "> 0", size)?;
        }
        Ok(())
    }
}

/// A fuel with its cylinder pricing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fuel {
    pub spec: FuelSpec,
    pub pricing: FuelPricing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub year: Option<i32>,
    pub mix: GenerationMix,
    pub fuels: Vec<Fuel>,
    pub tariff: TariffSchedule,
    pub appliances: Vec<ApplianceProfile>,
    pub demographics: Demographics,
}

/// One appliance's national totals. Energies in GWh, costs in MUS$/y,
/// emissions in tCO₂/y.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NationalRow {
    pub appliance: String,
    pub count: u64,
    pub monthly_final_gwh: f64,
    pub annual_final_gwh: f64,
    pub primary_gwh: f64,
    pub cost_musd: CostBreakdown,
    pub emissions_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NationalTotals {
    pub households: u64,
    pub monthly_final_gwh: f64,
    pub annual_final_gwh: f64,
    pub primary_gwh: f64,
    pub cost_musd: CostBreakdown,
    pub emissions_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NationalReport {
    pub scenario: String,
    pub year: Option<i32>,
    pub population: f64,
    pub rows: Vec<NationalRow>,
    pub totals: NationalTotals,
}

/// What a single household using one appliance consumes and pays.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HouseholdReport {
    pub scenario: String,
    pub appliance: String,
    pub monthly_final_kwh: f64,
    pub annual_final_kwh: f64,
    pub monthly_primary_kwh: f64,
    pub emissions_t: f64,
    /// US$/y.
    pub cost: CostBreakdown,
}

/// Per-household intermediate shared by national and household reports.
struct HouseholdFigures {
    primary_factor: f64,
    emission_factor: f64,
    cost: CostBreakdown,
}

impl Scenario {
    /// Every invariant violation, in declaration order.
    pub fn violations(&self) -> Vec<ModelError> {
        let mut out = Vec::new();
        if let Err(e) = self.demographics.validate() {
            out.push(e);
        }
        let mut fuel_names = HashSet::new();
        for f in &self.fuels {
            if let Err(e) = f.spec.validate().and_then(|_| f.pricing.validate(&f.spec.name)) {
                out.push(e);
            }
            if !fuel_names.insert(f.spec.name.as_str()) {
                out.push(ModelError::DuplicateName {
                    kind: "fuel",
                    name: f.spec.name.clone(),
                });
            }
        }
        let mut names = HashSet::new();
        for a in &self.appliances {
            if let Err(e) = a.validate() {
                out.push(e);
            }
            if !names.insert(a.name.as_str()) {
                out.push(ModelError::DuplicateName {
                    kind: "appliance",
                    name: a.name.clone(),
                });
            }
            if let Carrier::Fuel(fuel) = &a.carrier {
                if !fuel_names.contains(fuel.as_str()) {
                    out.push(ModelError::UnknownFuel {
                        appliance: a.name.clone(),
                        fuel: fuel.clone(),
                    });
                }
            }
        }
        let counts: u64 = self.appliances.iter().map(|a| a.count).sum();
        if counts != self.demographics.households {
            out.push(ModelError::PartitionMismatch {
                counts,
                households: self.demographics.households,
            });
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    pub fn fuel(&self, name: &str) -> Option<&Fuel> {
        self.fuels.iter().find(|f| f.spec.name == name)
    }

    pub fn appliance(&self, name: &str) -> Result<&ApplianceProfile> {
        self.appliances
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| ModelError::UnknownAppliance(name.to_string()))
    }

    fn household_figures(&self, a: &ApplianceProfile) -> Result<HouseholdFigures> {
        match &a.carrier {
            Carrier::Electricity => Ok(HouseholdFigures {
                primary_factor: self.mix.weighted_primary_factor()?,
                emission_factor: self.mix.grid_emission_factor()?,
                cost: self.tariff.breakdown(a.monthly_final_kwh)?,
            }),
            Carrier::Fuel(name) => {
                let fuel = self.fuel(name).ok_or_else(|| ModelError::UnknownFuel {
                    appliance: a.name.clone(),
                    fuel: name.clone(),
                })?;
                // an idle appliance buys no cylinders
                let cylinders = if a.monthly_final_kwh == 0.0 {
                    0.0
                } else {
                    fuel.spec.cylinders_per_year()?
                };
                Ok(HouseholdFigures {
                    primary_factor: fuel.spec.primary_factor,
                    emission_factor: fuel.spec.emission_factor,
                    cost: fuel.pricing.breakdown(cylinders),
                })
            }
        }
    }

    /// National totals per appliance and for the whole scenario.
    ///
    /// Each row is `count × household value / 1e6` for energies (GWh) and
    /// costs (MUS$); primary energy is the national final energy times the
    /// carrier factor; emissions are `count × household tCO₂`.
    pub fn evaluate(&self) -> Result<NationalReport> {
        self.validate()?;
        let rows = self
            .appliances
            .iter()
            .map(|a| {
                let hh = self.household_figures(a)?;
                let n = a.count as f64;
                let annual = n * a.annual_final_kwh() / MILLION;
                Ok(NationalRow {
                    appliance: a.name.clone(),
                    count: a.count,
                    monthly_final_gwh: n * a.monthly_final_kwh / MILLION,
                    annual_final_gwh: annual,
                    primary_gwh: annual * hh.primary_factor,
                    cost_musd: hh.cost.scaled(n, MILLION),
                    emissions_t: n * a.household_emissions(hh.emission_factor),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let totals = NationalTotals {
            households: rows.iter().map(|r| r.count).sum(),
            monthly_final_gwh: rows.iter().map(|r| r.monthly_final_gwh).sum(),
            annual_final_gwh: rows.iter().map(|r| r.annual_final_gwh).sum(),
            primary_gwh: rows.iter().map(|r| r.primary_gwh).sum(),
            cost_musd: rows.iter().map(|r| r.cost_musd).sum(),
            emissions_t: rows.iter().map(|r| r.emissions_t).sum(),
        };
        Ok(NationalReport {
            scenario: self.name.clone(),
            year: self.year,
            population: self.demographics.population,
            rows,
            totals,
        })
    }

    pub fn household_report(&self, appliance: &str) -> Result<HouseholdReport> {
        let a = self.appliance(appliance)?;
        let hh = self.household_figures(a)?;
        Ok(HouseholdReport {
            scenario: self.name.clone(),
            appliance: a.name.clone(),
            monthly_final_kwh: a.monthly_final_kwh,
            annual_final_kwh: a.annual_final_kwh(),
            monthly_primary_kwh: a.household_primary_energy(hh.primary_factor)?.monthly_kwh,
            emissions_t: a.household_emissions(hh.emission_factor),
            cost: hh.cost,
        })
    }
}
