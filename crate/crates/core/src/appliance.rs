//! Per-household cooking technologies and the fuels they burn.

use std::fmt;

use serde::Serialize;

use crate::error::{check, ModelError, Result};

/// What an appliance draws its energy from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    Electricity,
    Fuel(String),
}

impl Carrier {
    /// Parses `electricity` or `fuel:<name>`.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "electricity" => Some(Carrier::Electricity),
            _ => match s.strip_prefix("fuel:") {
                Some(name) if !name.is_empty() => Some(Carrier::Fuel(name.to_string())),
                _ => None,
            },
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Electricity => f.write_str("electricity"),
            Carrier::Fuel(name) => write!(f, "fuel:{name}"),
        }
    }
}

/// A cooking technology as used by one household, plus its fleet size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApplianceProfile {
    pub name: String,
    pub carrier: Carrier,
    /// Final (delivered) energy, kWh per household per month.
    pub monthly_final_kwh: f64,
    /// Households using this technology.
    pub count: u64,
}

/// Primary energy of one household, kWh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HouseholdPrimary {
    pub monthly_kwh: f64,
    pub annual_kwh: f64,
}

impl ApplianceProfile {
    pub fn new(name: impl Into<String>, carrier: Carrier, monthly_final_kwh: f64, count: u64) -> Self {
        Self {
            name: name.into(),
            carrier,
            monthly_final_kwh,
            count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check(
            self.monthly_final_kwh >= 0.0 && self.monthly_final_kwh.is_finite(),
            &self.name,
            "monthly_final_kwh",
            ">= 0",
            self.monthly_final_kwh,
        )
    }

    pub fn annual_final_kwh(&self) -> f64 {
        self.monthly_final_kwh * 12.0
    }

    /// `carrier_factor` is the fuel's primary factor, or the mix's weighted
    /// primary factor for electricity.
    pub fn household_primary_energy(&self, carrier_factor: f64) -> Result<HouseholdPrimary> {
        check(
            carrier_factor > 0.0,
            &self.name,
            "carrier factor",
            "> 0",
            carrier_factor,
        )?;
        let monthly = self.monthly_final_kwh * carrier_factor;
        Ok(HouseholdPrimary {
            monthly_kwh: monthly,
            annual_kwh: self.annual_final_kwh() * carrier_factor,
        })
    }

    /// tCO₂/y per household; `ef` applies to final energy in tCO₂/MWh.
    pub fn household_emissions(&self, ef: f64) -> f64 {
        self.annual_final_kwh() / 1000.0 * ef
    }
}

/// A bottled cooking fuel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuelSpec {
    pub name: String,
    pub primary_factor: f64,
    /// tCO₂ per MWh of final energy.
    pub emission_factor: f64,
    /// Mass of one cylinder, kg.
    pub cylinder_kg: f64,
    /// Fuel used by one household, kg/month.
    pub monthly_kg_per_household: f64,
}

impl FuelSpec {
    pub fn validate(&self) -> Result<()> {
        let n = &self.name;
        check(
            self.primary_factor > 0.0,
            n,
            "primary_factor",
            "> 0",
            self.primary_factor,
        )?;
        check(
            self.emission_factor > 0.0,
            n,
            "emission_factor",
            "> 0",
            self.emission_factor,
        )?;
        check(self.cylinder_kg > 0.0, n, "cylinder_kg", "> 0", self.cylinder_kg)?;
        check(
            self.monthly_kg_per_household > 0.0,
            n,
            "monthly_kg_per_household",
            "> 0",
            self.monthly_kg_per_household,
        )
    }

    pub fn cylinders_per_month(&self) -> Result<f64> {
        if self.cylinder_kg == 0.0 {
            return Err(ModelError::ZeroCylinderMass {
                fuel: self.name.clone(),
            });
        }
        Ok(self.monthly_kg_per_household / self.cylinder_kg)
    }

    pub fn cylinders_per_year(&self) -> Result<f64> {
        Ok(self.cylinders_per_month()? * 12.0)
    }
}
