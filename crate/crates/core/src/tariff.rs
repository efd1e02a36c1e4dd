//! Household energy pricing: block electricity tariffs and subsidized fuel
//! cylinders. Every price is decomposed into what the user pays and what
//! the state covers.

use serde::Serialize;

use crate::error::{check, ModelError, Result};

/// Upper end of a tariff block, kWh/month. Bounds are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockBound {
    UpTo(f64),
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TariffBlock {
    pub upper: BlockBound,
    /// US$/kWh charged for consumption inside this block.
    pub rate: f64,
}

/// Tiered electricity rates plus the real production cost of electricity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TariffSchedule {
    blocks: Vec<TariffBlock>,
    production_cost: f64,
}

/// Annual cost split, US$/y. `subsidy` is always `total - user`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CostBreakdown {
    pub user: f64,
    pub subsidy: f64,
    pub total: f64,
}

impl CostBreakdown {
    pub fn from_total_and_user(total: f64, user: f64) -> Self {
        Self {
            user,
            subsidy: total - user,
            total,
        }
    }

    /// Field-wise `factor * value / divisor`, e.g. households × US$ / 1e6.
    pub fn scaled(&self, factor: f64, divisor: f64) -> Self {
        Self {
            user: factor * self.user / divisor,
            subsidy: factor * self.subsidy / divisor,
            total: factor * self.total / divisor,
        }
    }
}

impl std::ops::Add for CostBreakdown {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            user: self.user + rhs.user,
            subsidy: self.subsidy + rhs.subsidy,
            total: self.total + rhs.total,
        }
    }
}

impl std::iter::Sum for CostBreakdown {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), |a, b| a + b)
    }
}

impl TariffSchedule {
    /// Blocks must have strictly increasing bounds, and only the last one
    /// may (and must) be unbounded.
    pub fn new(blocks: Vec<TariffBlock>, production_cost: f64) -> Result<Self> {
        if blocks.is_empty() {
            return Err(ModelError::MalformedTariff("at least one block is required".into()));
        }
        let last = blocks.len() - 1;
        let mut prev = 0.0_f64;
        for (i, b) in blocks.iter().enumerate() {
            if !(b.rate >= 0.0 && b.rate.is_finite()) {
                return Err(ModelError::MalformedTariff(format!(
                    "block {} rate must be >= 0, got {}",
                    i + 1,
                    b.rate
                )));
            }
            match b.upper {
                BlockBound::Unbounded if i != last => {
                    return Err(ModelError::MalformedTariff(
                        "only the last block may be unbounded".into(),
                    ))
                }
                BlockBound::UpTo(_) if i == last => {
                    return Err(ModelError::MalformedTariff("the last block must be unbounded".into()))
                }
                BlockBound::UpTo(bound) => {
                    if !(bound > prev && bound.is_finite()) {
                        return Err(ModelError::MalformedTariff("blocks must be strictly increasing".into()));
                    }
                    prev = bound;
                }
                BlockBound::Unbounded => {}
            }
        }
        check(
            production_cost >= 0.0,
            "tariff",
            "production_cost_per_kwh",
            ">= 0",
            production_cost,
        )?;
        Ok(Self {
            blocks,
            production_cost,
        })
    }

    /// Single unbounded block at `rate`.
    pub fn flat(rate: f64, production_cost: f64) -> Result<Self> {
        Self::new(
            vec![TariffBlock {
                upper: BlockBound::Unbounded,
                rate,
            }],
            production_cost,
        )
    }

    pub fn blocks(&self) -> &[TariffBlock] {
        &self.blocks
    }

    pub fn production_cost(&self) -> f64 {
        self.production_cost
    }

    /// Monthly bill in US$ for `monthly_kwh`: each block charges its rate on
    /// the portion of consumption that falls inside it.
    pub fn user_cost_monthly(&self, monthly_kwh: f64) -> Result<f64> {
        check(monthly_kwh >= 0.0, "tariff", "monthly consumption", ">= 0", monthly_kwh)?;
        let mut cost = 0.0;
        let mut lower = 0.0_f64;
        for b in &self.blocks {
            let upper = match b.upper {
                BlockBound::UpTo(u) => u,
                BlockBound::Unbounded => f64::INFINITY,
            };
            if monthly_kwh <= lower {
                break;
            }
            let portion = monthly_kwh.min(upper) - lower;
            cost += portion * b.rate;
            lower = upper;
        }
        Ok(cost)
    }

    /// Annual split for a household consuming `monthly_kwh` every month.
    pub fn breakdown(&self, monthly_kwh: f64) -> Result<CostBreakdown> {
        let user = self.user_cost_monthly(monthly_kwh)? * 12.0;
        let total = monthly_kwh * 12.0 * self.production_cost;
        Ok(CostBreakdown::from_total_and_user(total, user))
    }
}

/// Price of one fuel cylinder to the user and its unsubsidized cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FuelPricing {
    pub user_price_per_cylinder: f64,
    pub full_cost_per_cylinder: f64,
}

impl FuelPricing {
    pub fn validate(&self, fuel: &str) -> Result<()> {
        check(
            self.user_price_per_cylinder >= 0.0,
            fuel,
            "user_price_per_cylinder",
            ">= 0",
            self.user_price_per_cylinder,
        )?;
        check(
            self.full_cost_per_cylinder >= 0.0,
            fuel,
            "full_cost_per_cylinder",
            ">= 0",
            self.full_cost_per_cylinder,
        )
    }

    pub fn breakdown(&self, cylinders_per_year: f64) -> CostBreakdown {
        CostBreakdown::from_total_and_user(
            cylinders_per_year * self.full_cost_per_cylinder,
            cylinders_per_year * self.user_price_per_cylinder,
        )
    }
}
