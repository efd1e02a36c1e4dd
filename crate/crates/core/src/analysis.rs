//! Cross-scenario comparison and household affordability.

use serde::Serialize;

use crate::error::{ModelError, Result};
use crate::scenario::{Demographics, NationalReport, Scenario, MILLION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    FinalEnergyGwh,
    PrimaryEnergyGwh,
    TotalCostMusd,
    SubsidyMusd,
    EmissionsTco2,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::FinalEnergyGwh,
        Metric::PrimaryEnergyGwh,
        Metric::TotalCostMusd,
        Metric::SubsidyMusd,
        Metric::EmissionsTco2,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Metric::FinalEnergyGwh => "final_energy_gwh",
            Metric::PrimaryEnergyGwh => "primary_energy_gwh",
            Metric::TotalCostMusd => "total_cost_musd",
            Metric::SubsidyMusd => "subsidy_musd",
            Metric::EmissionsTco2 => "emissions_tco2",
        }
    }

    pub fn of(self, report: &NationalReport) -> f64 {
        let t = &report.totals;
        match self {
            Metric::FinalEnergyGwh => t.annual_final_gwh,
            Metric::PrimaryEnergyGwh => t.primary_gwh,
            Metric::TotalCostMusd => t.cost_musd.total,
            Metric::SubsidyMusd => t.cost_musd.subsidy,
            Metric::EmissionsTco2 => t.emissions_t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricDelta {
    pub metric: Metric,
    pub reference: f64,
    pub alternative: f64,
    /// `alternative - reference`.
    pub delta: f64,
    /// `alternative / reference`; 1 when both are equal, `None` when the
    /// reference is zero and the alternative is not.
    pub ratio: Option<f64>,
}

/// The alternative scenario measured against the reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub reference: String,
    pub alternative: String,
    pub metrics: Vec<MetricDelta>,
    /// Reference subsidy minus alternative subsidy, MUS$/y.
    pub subsidy_savings_musd: f64,
    /// Reference emissions minus alternative emissions, tCO₂/y.
    pub emission_reduction_tco2: f64,
}

impl ComparisonReport {
    pub fn get(&self, metric: Metric) -> &MetricDelta {
        self.metrics
            .iter()
            .find(|m| m.metric == metric)
            .expect("every metric is reported")
    }
}

/// Compares two evaluated scenarios.
pub fn compare_reports(reference: &NationalReport, alternative: &NationalReport) -> ComparisonReport {
    let metrics = Metric::ALL
        .iter()
        .map(|&metric| {
            let a = metric.of(reference);
            let b = metric.of(alternative);
            let ratio = if a == b {
                Some(1.0)
            } else if a == 0.0 {
                None
            } else {
                Some(b / a)
            };
            MetricDelta {
                metric,
                reference: a,
                alternative: b,
                delta: b - a,
                ratio,
            }
        })
        .collect();
    ComparisonReport {
        reference: reference.scenario.clone(),
        alternative: alternative.scenario.clone(),
        metrics,
        subsidy_savings_musd: reference.totals.cost_musd.subsidy - alternative.totals.cost_musd.subsidy,
        emission_reduction_tco2: reference.totals.emissions_t - alternative.totals.emissions_t,
    }
}

pub fn compare(reference: &Scenario, alternative: &Scenario) -> Result<ComparisonReport> {
    Ok(compare_reports(&reference.evaluate()?, &alternative.evaluate()?))
}

/// Share of the household's income references taken by a yearly cost, %.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Affordability {
    pub pct_of_basket: f64,
    pub pct_of_wage: f64,
}

pub fn affordability(annual_user_cost: f64, demographics: &Demographics) -> Result<Affordability> {
    let wage = positive(demographics.minimum_wage, "minimum_wage")?;
    let basket = positive(demographics.basic_basket, "basic_basket")?;
    Ok(Affordability {
        pct_of_basket: 100.0 * annual_user_cost / basket,
        pct_of_wage: 100.0 * annual_user_cost / wage,
    })
}

fn positive(value: Option<f64>, name: &'static str) -> Result<f64> {
    match value {
        Some(v) if v > 0.0 => Ok(v),
        _ => Err(ModelError::NonPositiveDenominator(name)),
    }
}

/// National subsidy spread over the population, US$/person/y.
pub fn per_capita_subsidy(report: &NationalReport, demographics: &Demographics) -> Result<f64> {
    if !(demographics.population > 0.0) {
        return Err(ModelError::NonPositiveDenominator("population"));
    }
    Ok(report.totals.cost_musd.subsidy * MILLION / demographics.population)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AffordabilityRow {
    pub appliance: String,
    /// US$/y paid by one household.
    pub annual_user_cost: f64,
    pub share: Affordability,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AffordabilityReport {
    pub scenario: String,
    pub rows: Vec<AffordabilityRow>,
    /// US$/person/y.
    pub per_capita_subsidy: f64,
}

/// Household affordability of every appliance plus the per-capita subsidy.
pub fn affordability_report(scenario: &Scenario) -> Result<AffordabilityReport> {
    let national = scenario.evaluate()?;
    let rows = scenario
        .appliances
        .iter()
        .map(|a| {
            let hh = scenario.household_report(&a.name)?;
            Ok(AffordabilityRow {
                appliance: a.name.clone(),
                annual_user_cost: hh.cost.user,
                share: affordability(hh.cost.user, &scenario.demographics)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AffordabilityReport {
        scenario: scenario.name.clone(),
        rows,
        per_capita_subsidy: per_capita_subsidy(&national, &scenario.demographics)?,
    })
}

/// `base × (1 + annual_rate)^years`.
pub fn project_compound(base: f64, annual_rate: f64, years: u32) -> Result<f64> {
    if !(annual_rate > -1.0) {
        return Err(ModelError::RateBelowMinusOne(annual_rate));
    }
    Ok(base * (1.0 + annual_rate).powi(years as i32))
}
