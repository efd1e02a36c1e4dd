//! Electricity generation mix: primary energy, weighted conversion factors
//! and CO₂ emissions per source.
//!
//! Primary energy of the mix is `Σ energyᵢ × primary_factorᵢ`. Emissions are
//! `Σ energyᵢ × emission_factorᵢ`. The weighted factors divide those sums by
//! the total produced energy.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{check, ModelError, Result};

/// One generation source in a mix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergySource {
    pub name: String,
    /// Electricity produced, MWh/y.
    pub energy_mwh: f64,
    /// Conversion factor from delivered electricity to primary energy.
    pub primary_factor: f64,
    /// tCO₂ per MWh produced.
    pub emission_factor: f64,
}

impl EnergySource {
    pub fn new(name: impl Into<String>, energy_mwh: f64, primary_factor: f64, emission_factor: f64) -> Self {
        Self {
            name: name.into(),
            energy_mwh,
            primary_factor,
            emission_factor,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(ModelError::UnnamedSource);
        }
        check(
            self.energy_mwh >= 0.0 && self.energy_mwh.is_finite(),
            &self.name,
            "energy_mwh",
            ">= 0",
            self.energy_mwh,
        )?;
        check(
            self.primary_factor > 0.0 && self.primary_factor.is_finite(),
            &self.name,
            "primary_factor",
            "> 0",
            self.primary_factor,
        )?;
        check(
            self.emission_factor >= 0.0 && self.emission_factor.is_finite(),
            &self.name,
            "emission_factor",
            ">= 0",
            self.emission_factor,
        )
    }

    pub fn primary_mwh(&self) -> f64 {
        self.energy_mwh * self.primary_factor
    }

    pub fn emissions_t(&self) -> f64 {
        self.energy_mwh * self.emission_factor
    }
}

/// A year's set of generation sources. Construction validates every source
/// and rejects empty or duplicate-named mixes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationMix {
    year: Option<i32>,
    sources: Vec<EnergySource>,
}

/// Per-source amount plus the sum over the mix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceTotals {
    pub rows: Vec<(String, f64)>,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixRow {
    pub source: String,
    pub energy_mwh: f64,
    pub share_pct: f64,
    pub primary_factor: f64,
    pub primary_mwh: f64,
    pub emission_factor: f64,
    pub emissions_t: f64,
}

/// Full column of a generation table: per-source rows plus weighted totals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixReport {
    pub year: Option<i32>,
    pub rows: Vec<MixRow>,
    pub total_energy_mwh: f64,
    pub total_primary_mwh: f64,
    pub weighted_primary_factor: f64,
    pub total_emissions_t: f64,
    pub grid_emission_factor: f64,
}

impl GenerationMix {
    pub fn new(year: Option<i32>, sources: Vec<EnergySource>) -> Result<Self> {
        let mix = Self { year, sources };
        if mix.sources.is_empty() {
            return Err(ModelError::EmptyMix { mix: mix.label() });
        }
        let mut seen = HashSet::new();
        for s in &mix.sources {
            s.validate()?;
            if !seen.insert(s.name.as_str()) {
                return Err(ModelError::DuplicateSource {
                    mix: mix.label(),
                    name: s.name.clone(),
                });
            }
        }
        Ok(mix)
    }

    pub fn year(&self) -> Option<i32> {
        self.year
    }

    pub fn sources(&self) -> &[EnergySource] {
        &self.sources
    }

    /// Human-readable name used in diagnostics.
    pub fn label(&self) -> String {
        match self.year {
            Some(y) => format!("generation mix {y}"),
            None => "generation mix".to_string(),
        }
    }

    pub fn total_energy_mwh(&self) -> f64 {
        self.sources.iter().map(|s| s.energy_mwh).sum()
    }

    pub fn primary_energy(&self) -> SourceTotals {
        self.totals(EnergySource::primary_mwh)
    }

    pub fn emissions(&self) -> SourceTotals {
        self.totals(EnergySource::emissions_t)
    }

    fn totals(&self, f: impl Fn(&EnergySource) -> f64) -> SourceTotals {
        let rows: Vec<(String, f64)> = self.sources.iter().map(|s| (s.name.clone(), f(s))).collect();
        let total = rows.iter().map(|(_, v)| v).sum();
        SourceTotals { rows, total }
    }

    fn nonzero_total(&self) -> Result<f64> {
        let total = self.total_energy_mwh();
        if total > 0.0 {
            Ok(total)
        } else {
            Err(ModelError::ZeroTotalEnergy { mix: self.label() })
        }
    }

    /// Generation-weighted mean of the primary conversion factors.
    pub fn weighted_primary_factor(&self) -> Result<f64> {
        let total = self.nonzero_total()?;
        Ok(self.primary_energy().total / total)
    }

    /// Generation-weighted mean emission factor, tCO₂/MWh.
    pub fn grid_emission_factor(&self) -> Result<f64> {
        let total = self.nonzero_total()?;
        Ok(self.emissions().total / total)
    }

    pub fn report(&self) -> Result<MixReport> {
        let total_energy = self.nonzero_total()?;
        let rows: Vec<MixRow> = self
            .sources
            .iter()
            .map(|s| MixRow {
                source: s.name.clone(),
                energy_mwh: s.energy_mwh,
                share_pct: 100.0 * s.energy_mwh / total_energy,
                primary_factor: s.primary_factor,
                primary_mwh: s.primary_mwh(),
                emission_factor: s.emission_factor,
                emissions_t: s.emissions_t(),
            })
            .collect();
        let total_primary: f64 = rows.iter().map(|r| r.primary_mwh).sum();
        let total_emissions: f64 = rows.iter().map(|r| r.emissions_t).sum();
        Ok(MixReport {
            year: self.year,
            rows,
            total_energy_mwh: total_energy,
            total_primary_mwh: total_primary,
            weighted_primary_factor: total_primary / total_energy,
            total_emissions_t: total_emissions,
            grid_emission_factor: total_emissions / total_energy,
        })
    }
}
