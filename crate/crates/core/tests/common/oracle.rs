//! Reference arithmetic written straight from the raw input tables,
//! without going through the crate. Values derived here are compared with
//! both the crate's results and the frozen constants in the tests.

/// (name, MWh/y, primary factor, tCO₂/MWh)
pub const MIX_2014: [(&str, f64, f64, f64); 8] = [
    ("biomass", 399471.18, 3.04, 0.0),
    ("solar", 16482.7, 1.0, 0.0),
    ("wind", 79742.47, 1.0, 0.0),
    ("hydro", 11457895.6, 1.0, 0.0),
    ("fuel_oil", 5483600.4, 2.77, 0.8),
    ("natural_gas", 2964552.7, 1.95, 0.8),
    ("diesel", 2759169.0, 2.77, 0.8),
    ("crude_oil", 1146299.3, 2.77, 0.8),
];

/// Aggregate 2022 mix; thermo factor is the 2014 thermo Pe over thermo energy.
pub fn mix_2022() -> [(&'static str, f64, f64, f64); 3] {
    [
        ("renewable_non_hydro", 553000.0, 2.64, 0.0),
        ("hydro", 35729000.0, 1.0, 0.0),
        ("thermo", 6420000.0, 2.573221, 0.8),
    ]
}

pub struct MixSums {
    pub energy: f64,
    pub primary: f64,
    pub emissions: f64,
}

pub fn mix_sums(rows: &[(&str, f64, f64, f64)]) -> MixSums {
    let mut s = MixSums {
        energy: 0.0,
        primary: 0.0,
        emissions: 0.0,
    };
    for &(_, e, c, ef) in rows {
        s.energy += e;
        s.primary += e * c;
        s.emissions += e * ef;
    }
    s
}

/// Weighted sub-factor of a group of 2014 sources.
pub fn group_factor(names: &[&str]) -> f64 {
    let rows: Vec<_> = MIX_2014.iter().filter(|r| names.contains(&r.0)).copied().collect();
    let s = mix_sums(&rows);
    s.primary / s.energy
}

pub const LPG_MONTHLY_KWH: f64 = 265.39;
pub const INDUCTION_MONTHLY_KWH: f64 = 96.0;
pub const LPG_PRIMARY_FACTOR: f64 = 1.05;
pub const LPG_EF: f64 = 0.23407917;
pub const CYLINDERS_PER_YEAR: f64 = 17.6 / 15.0 * 12.0;
pub const CYLINDER_FULL_COST: f64 = 20.0;

pub struct ScenarioInputs {
    pub lpg_count: f64,
    pub induction_count: f64,
    pub lpg_user_price: f64,
    pub first_block_rate: f64,
    pub over_rate: f64,
    pub production_cost: f64,
    pub mix: Vec<(&'static str, f64, f64, f64)>,
    pub population: f64,
}

pub fn baseline() -> ScenarioInputs {
    ScenarioInputs {
        lpg_count: 3407375.0,
        induction_count: 50000.0,
        lpg_user_price: 1.60,
        first_block_rate: 0.0,
        over_rate: 0.092,
        production_cost: 0.162,
        mix: MIX_2014.to_vec(),
        population: 16026220.3,
    }
}

pub fn bau() -> ScenarioInputs {
    ScenarioInputs {
        lpg_count: 4759570.0,
        induction_count: 70029.0,
        lpg_user_price: 1.60,
        first_block_rate: 0.0,
        over_rate: 0.0858,
        production_cost: 0.0615,
        mix: mix_2022().to_vec(),
        population: 18044656.0,
    }
}

pub fn new_policies() -> ScenarioInputs {
    ScenarioInputs {
        lpg_count: 140804.0,
        induction_count: 4688795.0,
        lpg_user_price: 20.0,
        first_block_rate: 0.04,
        ..bau()
    }
}

/// Household figures: (annual final kWh, total US$, subsidy US$, user US$, tCO₂/y)
pub struct Household {
    pub annual_kwh: f64,
    pub total: f64,
    pub subsidy: f64,
    pub user: f64,
    pub emissions: f64,
}

pub fn lpg_household(s: &ScenarioInputs) -> Household {
    let total = CYLINDERS_PER_YEAR * CYLINDER_FULL_COST;
    let user = CYLINDERS_PER_YEAR * s.lpg_user_price;
    Household {
        annual_kwh: LPG_MONTHLY_KWH * 12.0,
        total,
        subsidy: total - user,
        user,
        emissions: LPG_MONTHLY_KWH * 12.0 / 1000.0 * LPG_EF,
    }
}

pub fn induction_household(s: &ScenarioInputs) -> Household {
    let kwh = INDUCTION_MONTHLY_KWH;
    let monthly_bill = 80.0 * s.first_block_rate + (kwh - 80.0) * s.over_rate;
    let user = monthly_bill * 12.0;
    let total = kwh * 12.0 * s.production_cost;
    let m = mix_sums(&s.mix);
    Household {
        annual_kwh: kwh * 12.0,
        total,
        subsidy: total - user,
        user,
        emissions: kwh * 12.0 / 1000.0 * m.emissions / m.energy,
    }
}

/// National cells per appliance: (annual GWh, primary GWh, total MUS$, subsidy MUS$, tCO₂)
pub struct National {
    pub lpg: [f64; 5],
    pub induction: [f64; 5],
}

pub fn national(s: &ScenarioInputs) -> National {
    let m = mix_sums(&s.mix);
    let l = lpg_household(s);
    let i = induction_household(s);
    let lpg_gwh = s.lpg_count * l.annual_kwh / 1e6;
    let ind_gwh = s.induction_count * i.annual_kwh / 1e6;
    National {
        lpg: [
            lpg_gwh,
            lpg_gwh * LPG_PRIMARY_FACTOR,
            s.lpg_count * l.total / 1e6,
            s.lpg_count * l.subsidy / 1e6,
            s.lpg_count * l.emissions,
        ],
        induction: [
            ind_gwh,
            ind_gwh * m.primary / m.energy,
            s.induction_count * i.total / 1e6,
            s.induction_count * i.subsidy / 1e6,
            s.induction_count * i.emissions,
        ],
    }
}
