//! Strategies and property checks shared by the property suite and the
//! acceptance target.

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

use cookmodel::io::document::SECTIONS;
use cookmodel::io::{emit, parse, Document, Entry, Format, Item, Pos, Scalar, Section, Value};
use cookmodel::{
    compare, ApplianceProfile, BlockBound, Carrier, Demographics, EnergySource, Fuel, FuelPricing, FuelSpec,
    GenerationMix, Metric, Scenario, TariffBlock, TariffSchedule,
};

pub const REL_TOL: f64 = 1e-9;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(TestCaseError::fail(format!($($fmt)+)));
        }
    };
}

// ---- generation mixes ----

/// (energy, factor, ef) rows; the first row always carries energy.
pub fn mix_rows() -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
    let row = (prop_oneof![1 => Just(0.0), 9 => 1.0..1e7f64], 1.0..4.0f64, 0.0..1.2f64);
    (1.0..1e7f64, 1.0..4.0f64, 0.0..1.2f64, prop::collection::vec(row, 0..9)).prop_map(|(e, c, ef, mut rest)| {
        rest.insert(0, (e, c, ef));
        rest
    })
}

pub fn sources(prefix: &str, rows: &[(f64, f64, f64)]) -> Vec<EnergySource> {
    rows.iter()
        .enumerate()
        .map(|(i, &(e, c, ef))| EnergySource::new(format!("{prefix}{i}"), e, c, ef))
        .collect()
}

pub fn mix_of(sources: Vec<EnergySource>) -> GenerationMix {
    GenerationMix::new(None, sources).expect("generated mix is valid")
}

/// Totals of two disjoint mixes add up to the totals of their union.
pub fn check_mix_additivity(a: &[(f64, f64, f64)], b: &[(f64, f64, f64)]) -> Result<(), TestCaseError> {
    let ma = mix_of(sources("a", a));
    let mb = mix_of(sources("b", b));
    let mut all = sources("a", a);
    all.extend(sources("b", b));
    let mu = mix_of(all);
    let pairs = [
        (ma.total_energy_mwh() + mb.total_energy_mwh(), mu.total_energy_mwh()),
        (
            ma.primary_energy().total + mb.primary_energy().total,
            mu.primary_energy().total,
        ),
        (ma.emissions().total + mb.emissions().total, mu.emissions().total),
    ];
    for (sum, union) in pairs {
        ensure!(close(sum, union, REL_TOL), "additivity: {sum} vs {union}");
    }
    Ok(())
}

/// Scaling every energy by k scales the totals by k and leaves the factors alone.
pub fn check_mix_scaling(rows: &[(f64, f64, f64)], k: f64) -> Result<(), TestCaseError> {
    let m = mix_of(sources("s", rows));
    let scaled_rows: Vec<_> = rows.iter().map(|&(e, c, ef)| (e * k, c, ef)).collect();
    let mk = mix_of(sources("s", &scaled_rows));
    ensure!(
        close(mk.total_energy_mwh(), k * m.total_energy_mwh(), REL_TOL),
        "energy scale"
    );
    ensure!(
        close(mk.primary_energy().total, k * m.primary_energy().total, REL_TOL),
        "primary scale"
    );
    ensure!(
        close(mk.emissions().total, k * m.emissions().total, REL_TOL),
        "emission scale"
    );
    let (f, fk) = (
        m.weighted_primary_factor().unwrap(),
        mk.weighted_primary_factor().unwrap(),
    );
    ensure!(close(f, fk, REL_TOL), "factor invariance: {f} vs {fk}");
    let (g, gk) = (m.grid_emission_factor().unwrap(), mk.grid_emission_factor().unwrap());
    ensure!(
        (g - gk).abs() <= REL_TOL * g.max(1e-12),
        "grid ef invariance: {g} vs {gk}"
    );
    Ok(())
}

/// The weighted factor lies between the smallest and largest factor of the
/// sources that carry energy.
pub fn check_mix_bounds(rows: &[(f64, f64, f64)]) -> Result<(), TestCaseError> {
    let m = mix_of(sources("s", rows));
    let active = rows.iter().filter(|r| r.0 > 0.0);
    let lo = active.clone().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let hi = active.map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let f = m.weighted_primary_factor().unwrap();
    ensure!(
        f >= lo * (1.0 - 1e-12) && f <= hi * (1.0 + 1e-12),
        "{f} outside [{lo}, {hi}]"
    );
    Ok(())
}

pub fn check_mix_permutation(rows: &[(f64, f64, f64)], perm: &[usize]) -> Result<(), TestCaseError> {
    let base = sources("s", rows);
    let shuffled: Vec<_> = perm.iter().map(|&i| base[i].clone()).collect();
    let (m, p) = (mix_of(base), mix_of(shuffled));
    ensure!(
        close(m.primary_energy().total, p.primary_energy().total, REL_TOL),
        "permuted primary"
    );
    ensure!(
        close(m.emissions().total + 1.0, p.emissions().total + 1.0, REL_TOL),
        "permuted emissions"
    );
    ensure!(
        close(
            m.weighted_primary_factor().unwrap(),
            p.weighted_primary_factor().unwrap(),
            REL_TOL
        ),
        "permuted factor"
    );
    Ok(())
}

pub fn permuted_mix() -> impl Strategy<Value = (Vec<(f64, f64, f64)>, Vec<usize>)> {
    mix_rows().prop_flat_map(|rows| {
        let idx: Vec<usize> = (0..rows.len()).collect();
        (Just(rows), Just(idx).prop_shuffle())
    })
}

// ---- tariffs ----

/// Block bounds as cumulative positive widths, rates, and the production cost.
pub fn tariffs() -> impl Strategy<Value = TariffSchedule> {
    (
        prop::collection::vec((1.0..200.0f64, 0.0..0.5f64), 0..5),
        0.0..0.5f64,
        0.0..0.3f64,
    )
        .prop_map(|(bounded, last_rate, production)| {
            let mut upper = 0.0;
            let mut blocks: Vec<TariffBlock> = bounded
                .into_iter()
                .map(|(width, rate)| {
                    upper += width;
                    TariffBlock {
                        upper: BlockBound::UpTo(upper),
                        rate,
                    }
                })
                .collect();
            blocks.push(TariffBlock {
                upper: BlockBound::Unbounded,
                rate: last_rate,
            });
            TariffSchedule::new(blocks, production).expect("generated tariff is valid")
        })
}

fn bounds(t: &TariffSchedule) -> Vec<f64> {
    t.blocks()
        .iter()
        .filter_map(|b| match b.upper {
            BlockBound::UpTo(u) => Some(u),
            BlockBound::Unbounded => None,
        })
        .collect()
}

/// Cost never decreases with consumption.
pub fn check_tariff_monotone(t: &TariffSchedule, x: f64, y: f64) -> Result<(), TestCaseError> {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let (a, b) = (t.user_cost_monthly(lo).unwrap(), t.user_cost_monthly(hi).unwrap());
    ensure!(a <= b + 1e-9, "cost({lo}) = {a} > cost({hi}) = {b}");
    Ok(())
}

/// No jump at any block bound, and inside each block the slope is its rate.
pub fn check_tariff_shape(t: &TariffSchedule) -> Result<(), TestCaseError> {
    let cost = |x: f64| t.user_cost_monthly(x).unwrap();
    let eps = 1e-7;
    let max_rate = t.blocks().iter().map(|b| b.rate).fold(0.0, f64::max);
    for &b in &bounds(t) {
        let jump = (cost(b + eps) - cost(b - eps)).abs();
        ensure!(jump <= 2.0 * eps * max_rate + 1e-9, "jump {jump} at bound {b}");
    }
    let mut lower = 0.0;
    for block in t.blocks() {
        let upper = match block.upper {
            BlockBound::UpTo(u) => u,
            BlockBound::Unbounded => lower + 100.0,
        };
        let (a, b) = (lower + 0.25 * (upper - lower), lower + 0.75 * (upper - lower));
        let slope = (cost(b) - cost(a)) / (b - a);
        ensure!(
            (slope - block.rate).abs() <= 1e-9,
            "slope {slope} vs rate {}",
            block.rate
        );
        lower = upper;
    }
    Ok(())
}

// ---- cost identity ----

pub fn check_cost_identity_electric(t: &TariffSchedule, kwh: f64) -> Result<(), TestCaseError> {
    let c = t.breakdown(kwh).unwrap();
    ensure!(c.total - c.user - c.subsidy == 0.0, "{c:?}");
    Ok(())
}

pub fn check_cost_identity_fuel(user: f64, full: f64, cylinders: f64) -> Result<(), TestCaseError> {
    let p = FuelPricing {
        user_price_per_cylinder: user,
        full_cost_per_cylinder: full,
    };
    let c = p.breakdown(cylinders);
    ensure!(c.total - c.user - c.subsidy == 0.0, "{c:?}");
    Ok(())
}

// ---- scenarios ----

pub fn scenarios() -> impl Strategy<Value = Scenario> {
    (
        mix_rows(),
        tariffs(),
        (1.0..30.0f64, 0.5..30.0f64, 0.8..1.3f64, 0.0..0.4f64),
        (0.0..30.0f64, 0.0..40.0f64),
        (0u64..5_000_000, 1u64..5_000_000, 0.0..400.0f64, 0.0..400.0f64),
        (1.0..2.0e7f64),
    )
        .prop_map(
            |(rows, tariff, (cyl_kg, kg_month, factor, ef), (user, full), (n_lpg, n_ind, kwh_lpg, kwh_ind), pop)| {
                Scenario {
                    name: "generated".into(),
                    year: None,
                    mix: mix_of(sources("s", &rows)),
                    fuels: vec![Fuel {
                        spec: FuelSpec {
                            name: "lpg".into(),
                            primary_factor: factor,
                            emission_factor: ef,
                            cylinder_kg: cyl_kg,
                            monthly_kg_per_household: kg_month,
                        },
                        pricing: FuelPricing {
                            user_price_per_cylinder: user,
                            full_cost_per_cylinder: full,
                        },
                    }],
                    tariff,
                    appliances: vec![
                        ApplianceProfile::new("lpg_stove", Carrier::Fuel("lpg".into()), kwh_lpg, n_lpg),
                        ApplianceProfile::new("induction_stove", Carrier::Electricity, kwh_ind, n_ind),
                    ],
                    demographics: Demographics {
                        population: pop,
                        households: n_lpg + n_ind,
                        avg_household_size: None,
                        minimum_wage: None,
                        basic_basket: None,
                    },
                }
            },
        )
}

/// Every national row is exactly count × household value / 1e6 (energies,
/// costs) or count × household tCO₂ (emissions).
pub fn check_national_consistency(s: &Scenario) -> Result<(), TestCaseError> {
    let report = s.evaluate().unwrap();
    for row in &report.rows {
        let hh = s.household_report(&row.appliance).unwrap();
        let n = row.count as f64;
        ensure!(
            row.monthly_final_gwh == n * hh.monthly_final_kwh / 1e6,
            "monthly {}",
            row.appliance
        );
        ensure!(
            row.annual_final_gwh == n * hh.annual_final_kwh / 1e6,
            "annual {}",
            row.appliance
        );
        ensure!(
            row.cost_musd.total == n * hh.cost.total / 1e6,
            "total cost {}",
            row.appliance
        );
        ensure!(
            row.cost_musd.user == n * hh.cost.user / 1e6,
            "user cost {}",
            row.appliance
        );
        ensure!(
            row.cost_musd.subsidy == n * hh.cost.subsidy / 1e6,
            "subsidy {}",
            row.appliance
        );
        ensure!(row.emissions_t == n * hh.emissions_t, "emissions {}", row.appliance);
    }
    ensure!(report.totals.households == s.demographics.households, "households");
    Ok(())
}

/// A scenario compared with itself changes nothing.
pub fn check_self_comparison(s: &Scenario) -> Result<(), TestCaseError> {
    let c = compare(s, s).unwrap();
    for m in &c.metrics {
        ensure!(m.delta == 0.0, "{:?} delta {}", m.metric, m.delta);
        ensure!(m.ratio == Some(1.0), "{:?} ratio {:?}", m.metric, m.ratio);
    }
    ensure!(
        c.subsidy_savings_musd == 0.0 && c.emission_reduction_tco2 == 0.0,
        "headline"
    );
    ensure!(
        c.get(Metric::FinalEnergyGwh).reference == c.get(Metric::FinalEnergyGwh).alternative,
        "values"
    );
    let table = emit(&c, Format::Table);
    for line in table
        .lines()
        .filter(|l| Metric::ALL.iter().any(|m| l.starts_with(m.key())))
    {
        let cols: Vec<&str> = line.split_whitespace().collect();
        ensure!(cols[3] == "0.00", "delta column in `{line}`");
    }
    Ok(())
}

// ---- documents ----

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,10}"
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        4 => (-1e9..1e9f64).prop_map(Scalar::Number),
        1 => (-1000i64..1000).prop_map(|i| Scalar::Number(i as f64)),
        3 => "[a-zA-Z0-9 _#,=.\\[\\]\"-]{0,12}".prop_map(Scalar::Str),
        1 => Just(Scalar::Inf),
    ]
}

fn value() -> impl Strategy<Value = Value> {
    let zero = Pos::default();
    prop_oneof![
        3 => scalar().prop_map(Value::Scalar),
        1 => prop::collection::vec(scalar(), 2..5)
            .prop_map(move |v| Value::List(v.into_iter().map(|scalar| Item { scalar, pos: zero }).collect())),
    ]
}

fn entry(key: String, value: Value) -> Entry {
    Entry {
        key,
        key_pos: Pos::default(),
        value,
        value_pos: Pos::default(),
    }
}

fn section() -> impl Strategy<Value = Section> {
    (
        0..SECTIONS.len(),
        prop::collection::btree_map(ident(), value(), 0..6),
        prop::collection::vec(prop::collection::vec(scalar(), 2..4), 0..3),
    )
        .prop_map(
            |(kind, entries, blocks): (usize, BTreeMap<String, Value>, Vec<Vec<Scalar>>)| {
                let (name, repeated) = SECTIONS[kind];
                let mut entries: Vec<Entry> = entries
                    .into_iter()
                    .filter(|(k, _)| k != "block")
                    .map(|(k, v)| entry(k, v))
                    .collect();
                // list-valued keys may repeat
                for b in blocks {
                    let items = b
                        .into_iter()
                        .map(|scalar| Item {
                            scalar,
                            pos: Pos::default(),
                        })
                        .collect();
                    entries.push(entry("block".into(), Value::List(items)));
                }
                Section {
                    name: name.into(),
                    repeated,
                    pos: Pos::default(),
                    entries,
                }
            },
        )
}

pub fn documents() -> impl Strategy<Value = Document> {
    prop::collection::vec(section(), 0..8).prop_map(|sections| {
        let mut seen = Vec::new();
        let sections = sections
            .into_iter()
            .filter(|s| {
                if s.repeated {
                    return true;
                }
                let fresh = !seen.contains(&s.name);
                seen.push(s.name.clone());
                fresh
            })
            .collect();
        Document { sections }
    })
}

/// Canonical text re-parses to the same tree.
pub fn check_round_trip(doc: &Document) -> Result<(), TestCaseError> {
    let text = doc.to_text();
    let parsed = parse(&text).map_err(|d| TestCaseError::fail(format!("{d:?}\n{text}")))?;
    ensure!(
        parsed.without_positions() == *doc,
        "round trip changed the tree:\n{text}"
    );
    ensure!(parsed.to_text() == text, "canonical text is not a fixed point");
    Ok(())
}

/// A malformed number is reported at its own line and column.
pub fn check_error_position(doc: &Document, indent: usize, bad: &str) -> Result<(), TestCaseError> {
    let mut text = doc.to_text();
    let line = text.lines().count() + 3;
    text.push_str(&format!("\n[[source]]\n{}x = {bad}\n", " ".repeat(indent)));
    let diags = parse(&text)
        .err()
        .ok_or_else(|| TestCaseError::fail("accepted a malformed number"))?;
    let d = &diags[0];
    ensure!(diags.len() == 1, "{diags:?}");
    ensure!(d.code.as_str() == "E002", "{d:?}");
    ensure!(
        d.pos == Pos { line, col: indent + 5 },
        "{:?} vs {line}:{}",
        d.pos,
        indent + 5
    );
    Ok(())
}

pub fn malformed_numbers() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("1.2.3".to_string()),
        Just("1e5".to_string()),
        Just("--4".to_string()),
        Just("12abc".to_string()),
        Just(".5".to_string()),
        Just("7.".to_string()),
        "[0-9]{1,4}_[0-9]{1,3}",
    ]
}

// ---- runner used by the acceptance target ----

/// Runs one property `cases` times; `Err` carries the minimal failing input.
pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Abort(why) => format!("aborted: {why}"),
        TestError::Fail(why, input) => format!("{why} for {input:?}"),
    })
}
