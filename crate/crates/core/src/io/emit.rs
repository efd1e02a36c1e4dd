//! Report output as aligned text tables, CSV, or JSON.
//!
//! Every emitter is a pure function of the report, so identical reports give
//! byte-identical output. Text and CSV round at presentation only: two
//! decimals for GWh, MWh and currency, one decimal for national tCO₂.

use serde_json::{json, Value as Json};

use crate::analysis::{AffordabilityReport, ComparisonReport};
use crate::mix::MixReport;
use crate::scenario::{HouseholdReport, NationalReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "structured" | "json" => Ok(Format::Structured),
            _ => Err(format!("unknown format `{s}` (expected table, csv or structured)")),
        }
    }
}

pub trait Render {
    fn table(&self) -> String;
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>);
    fn structured(&self) -> Json;
}

pub fn emit<R: Render + ?Sized>(report: &R, format: Format) -> String {
    match format {
        Format::Table => report.table(),
        Format::Csv => {
            let (header, rows) = report.csv_rows();
            write_csv(&header, &rows)
        }
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&report.structured()).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

/// Fixed-point formatting without a negative sign on values that round to zero.
pub fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn write_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of utf-8 fields is utf-8")
}

/// Column-aligned text: first column left-aligned, the rest right-aligned.
fn text_table(header: &[String], rows: &[Vec<String>]) -> String {
    let width = |s: &String| s.chars().count();
    let mut widths: Vec<usize> = header.iter().map(width).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(width(c));
        }
    }
    let line = |cells: &[String]| {
        let mut out = String::new();
        for (i, c) in cells.iter().enumerate() {
            let pad = " ".repeat(widths[i] - width(c));
            if i == 0 {
                out.push_str(c);
                out.push_str(&pad);
            } else {
                out.push_str("  ");
                out.push_str(&pad);
                out.push_str(c);
            }
        }
        out.trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    let rule: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
    out.push_str(&"-".repeat(rule));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn strings<const N: usize>(cells: [&str; N]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

fn year_suffix(year: Option<i32>) -> String {
    year.map(|y| format!(" ({y})")).unwrap_or_default()
}

pub const NATIONAL_CSV_HEADER: [&str; 7] = [
    "appliance",
    "monthly_final_gwh",
    "annual_final_gwh",
    "primary_gwh",
    "total_cost_musd",
    "subsidy_musd",
    "emissions_tco2",
];

impl Render for NationalReport {
    fn table(&self) -> String {
        let mut header = strings(["", "Units"]);
        header.extend(self.rows.iter().map(|r| r.appliance.clone()));
        header.push("Total".into());
        let t = &self.totals;
        let metric = |label: &str, unit: &str, f: &dyn Fn(&crate::scenario::NationalRow) -> String, total: String| {
            let mut row = strings([label, unit]);
            row.extend(self.rows.iter().map(f));
            row.push(total);
            row
        };
        let rows = vec![
            metric(
                "N° of stoves",
                "[U]",
                &|r| r.count.to_string(),
                t.households.to_string(),
            ),
            metric(
                "Monthly consumption",
                "[GWh]",
                &|r| fixed(r.monthly_final_gwh, 2),
                fixed(t.monthly_final_gwh, 2),
            ),
            metric(
                "Annual consumption",
                "[GWh/y]",
                &|r| fixed(r.annual_final_gwh, 2),
                fixed(t.annual_final_gwh, 2),
            ),
            metric(
                "Primary energy",
                "[GWh/y]",
                &|r| fixed(r.primary_gwh, 2),
                fixed(t.primary_gwh, 2),
            ),
            metric(
                "Total cost",
                "[MUS$/y]",
                &|r| fixed(r.cost_musd.total, 2),
                fixed(t.cost_musd.total, 2),
            ),
            metric(
                "Subsidy cost",
                "[MUS$/y]",
                &|r| fixed(r.cost_musd.subsidy, 2),
                fixed(t.cost_musd.subsidy, 2),
            ),
            metric(
                "User cost",
                "[MUS$/y]",
                &|r| fixed(r.cost_musd.user, 2),
                fixed(t.cost_musd.user, 2),
            ),
            metric(
                "CO₂ emissions",
                "[tCO₂/y]",
                &|r| fixed(r.emissions_t, 1),
                fixed(t.emissions_t, 1),
            ),
        ];
        format!(
            "Scenario: {}{}, population {}\n{}",
            self.scenario,
            year_suffix(self.year),
            fixed(self.population, 1),
            text_table(&header, &rows)
        )
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let mut rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.appliance.clone(),
                    fixed(r.monthly_final_gwh, 2),
                    fixed(r.annual_final_gwh, 2),
                    fixed(r.primary_gwh, 2),
                    fixed(r.cost_musd.total, 2),
                    fixed(r.cost_musd.subsidy, 2),
                    fixed(r.emissions_t, 1),
                ]
            })
            .collect();
        let t = &self.totals;
        rows.push(vec![
            "total".into(),
            fixed(t.monthly_final_gwh, 2),
            fixed(t.annual_final_gwh, 2),
            fixed(t.primary_gwh, 2),
            fixed(t.cost_musd.total, 2),
            fixed(t.cost_musd.subsidy, 2),
            fixed(t.emissions_t, 1),
        ]);
        (NATIONAL_CSV_HEADER.to_vec(), rows)
    }

    fn structured(&self) -> Json {
        let row = |name: &str, m: f64, a: f64, p: f64, c: f64, s: f64, e: f64| {
            json!({
                "appliance": name,
                "monthly_final_gwh": m,
                "annual_final_gwh": a,
                "primary_gwh": p,
                "total_cost_musd": c,
                "subsidy_musd": s,
                "emissions_tco2": e,
            })
        };
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                row(
                    &r.appliance,
                    r.monthly_final_gwh,
                    r.annual_final_gwh,
                    r.primary_gwh,
                    r.cost_musd.total,
                    r.cost_musd.subsidy,
                    r.emissions_t,
                )
            })
            .collect();
        let t = &self.totals;
        json!({
            "scenario": self.scenario,
            "year": self.year,
            "population": self.population,
            "rows": rows,
            "total": row(
                "total",
                t.monthly_final_gwh,
                t.annual_final_gwh,
                t.primary_gwh,
                t.cost_musd.total,
                t.cost_musd.subsidy,
                t.emissions_t,
            ),
        })
    }
}

impl Render for HouseholdReport {
    fn table(&self) -> String {
        let rows = vec![
            strings(["Monthly consumption", &fixed(self.monthly_final_kwh, 2)]),
            strings(["Annual consumption", &fixed(self.annual_final_kwh, 2)]),
            strings(["Monthly primary energy", &fixed(self.monthly_primary_kwh, 2)]),
            strings(["CO₂ emissions per year", &fixed(self.emissions_t, 4)]),
            strings(["Total cost per year", &fixed(self.cost.total, 2)]),
            strings(["Subsidy cost per year", &fixed(self.cost.subsidy, 2)]),
            strings(["User cost per year", &fixed(self.cost.user, 2)]),
        ];
        format!(
            "Household: {} in {} (energy in kWh, costs in US$, emissions in tCO₂)\n{}",
            self.appliance,
            self.scenario,
            text_table(&strings(["", "Value"]), &rows)
        )
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header = vec![
            "appliance",
            "monthly_final_kwh",
            "annual_final_kwh",
            "monthly_primary_kwh",
            "total_cost_usd",
            "subsidy_usd",
            "user_cost_usd",
            "emissions_tco2",
        ];
        let row = vec![
            self.appliance.clone(),
            fixed(self.monthly_final_kwh, 2),
            fixed(self.annual_final_kwh, 2),
            fixed(self.monthly_primary_kwh, 2),
            fixed(self.cost.total, 2),
            fixed(self.cost.subsidy, 2),
            fixed(self.cost.user, 2),
            fixed(self.emissions_t, 4),
        ];
        (header, vec![row])
    }

    fn structured(&self) -> Json {
        json!({
            "scenario": self.scenario,
            "appliance": self.appliance,
            "monthly_final_kwh": self.monthly_final_kwh,
            "annual_final_kwh": self.annual_final_kwh,
            "monthly_primary_kwh": self.monthly_primary_kwh,
            "total_cost_usd": self.cost.total,
            "subsidy_usd": self.cost.subsidy,
            "user_cost_usd": self.cost.user,
            "emissions_tco2": self.emissions_t,
        })
    }
}

impl Render for MixReport {
    fn table(&self) -> String {
        let header = strings([
            "Source",
            "Energy [MWh]",
            "%",
            "C_i to Pe",
            "Pe [MWh]",
            "EF [tCO₂/MWh]",
            "tCO₂",
        ]);
        let mut rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.source.clone(),
                    fixed(r.energy_mwh, 2),
                    fixed(r.share_pct, 2),
                    fixed(r.primary_factor, 2),
                    fixed(r.primary_mwh, 2),
                    fixed(r.emission_factor, 2),
                    fixed(r.emissions_t, 2),
                ]
            })
            .collect();
        rows.push(vec![
            "Total".into(),
            fixed(self.total_energy_mwh, 2),
            fixed(100.0, 2),
            fixed(self.weighted_primary_factor, 2),
            fixed(self.total_primary_mwh, 2),
            fixed(self.grid_emission_factor, 2),
            fixed(self.total_emissions_t, 2),
        ]);
        format!(
            "Generation mix{}\n{}weighted_primary_factor: {}\ngrid_emission_factor: {}\n",
            year_suffix(self.year),
            text_table(&header, &rows),
            fixed(self.weighted_primary_factor, 6),
            fixed(self.grid_emission_factor, 6),
        )
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header = vec![
            "source",
            "energy_mwh",
            "share_pct",
            "primary_factor",
            "primary_mwh",
            "emission_factor",
            "emissions_tco2",
        ];
        let mut rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.source.clone(),
                    fixed(r.energy_mwh, 2),
                    fixed(r.share_pct, 2),
                    fixed(r.primary_factor, 6),
                    fixed(r.primary_mwh, 2),
                    fixed(r.emission_factor, 6),
                    fixed(r.emissions_t, 2),
                ]
            })
            .collect();
        rows.push(vec![
            "total".into(),
            fixed(self.total_energy_mwh, 2),
            fixed(100.0, 2),
            fixed(self.weighted_primary_factor, 6),
            fixed(self.total_primary_mwh, 2),
            fixed(self.grid_emission_factor, 6),
            fixed(self.total_emissions_t, 2),
        ]);
        (header, rows)
    }

    fn structured(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "source": r.source,
                    "energy_mwh": r.energy_mwh,
                    "share_pct": r.share_pct,
                    "primary_factor": r.primary_factor,
                    "primary_mwh": r.primary_mwh,
                    "emission_factor": r.emission_factor,
                    "emissions_tco2": r.emissions_t,
                })
            })
            .collect();
        json!({
            "year": self.year,
            "rows": rows,
            "total": {
                "energy_mwh": self.total_energy_mwh,
                "share_pct": 100.0,
                "primary_factor": self.weighted_primary_factor,
                "primary_mwh": self.total_primary_mwh,
                "emission_factor": self.grid_emission_factor,
                "emissions_tco2": self.total_emissions_t,
            },
        })
    }
}

fn ratio_text(r: Option<f64>) -> String {
    r.map_or_else(|| "n/a".to_string(), |r| fixed(r, 4))
}

impl Render for ComparisonReport {
    fn table(&self) -> String {
        let header = strings(["Metric", "Reference", "Alternative", "Delta", "Ratio"]);
        let rows: Vec<Vec<String>> = self
            .metrics
            .iter()
            .map(|m| {
                vec![
                    m.metric.key().to_string(),
                    fixed(m.reference, 2),
                    fixed(m.alternative, 2),
                    fixed(m.delta, 2),
                    ratio_text(m.ratio),
                ]
            })
            .collect();
        format!(
            "Comparison: {} (alternative) against {} (reference)\n{}subsidy_savings_musd: {}\nemission_reduction_tco2: {}\n",
            self.alternative,
            self.reference,
            text_table(&header, &rows),
            fixed(self.subsidy_savings_musd, 2),
            fixed(self.emission_reduction_tco2, 1),
        )
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let mut rows: Vec<Vec<String>> = self
            .metrics
            .iter()
            .map(|m| {
                vec![
                    m.metric.key().to_string(),
                    fixed(m.reference, 2),
                    fixed(m.alternative, 2),
                    fixed(m.delta, 2),
                    m.ratio.map_or_else(String::new, |r| fixed(r, 6)),
                ]
            })
            .collect();
        // headline figures: reference minus alternative, in the delta column
        rows.push(vec![
            "subsidy_savings_musd".into(),
            String::new(),
            String::new(),
            fixed(self.subsidy_savings_musd, 2),
            String::new(),
        ]);
        rows.push(vec![
            "emission_reduction_tco2".into(),
            String::new(),
            String::new(),
            fixed(self.emission_reduction_tco2, 1),
            String::new(),
        ]);
        (vec!["metric", "reference", "alternative", "delta", "ratio"], rows)
    }

    fn structured(&self) -> Json {
        let metrics: Vec<Json> = self
            .metrics
            .iter()
            .map(|m| {
                json!({
                    "metric": m.metric.key(),
                    "reference": m.reference,
                    "alternative": m.alternative,
                    "delta": m.delta,
                    "ratio": m.ratio,
                })
            })
            .collect();
        json!({
            "reference": self.reference,
            "alternative": self.alternative,
            "metrics": metrics,
            "subsidy_savings_musd": self.subsidy_savings_musd,
            "emission_reduction_tco2": self.emission_reduction_tco2,
        })
    }
}

impl Render for AffordabilityReport {
    fn table(&self) -> String {
        let header = strings([
            "Appliance",
            "User cost [US$/y]",
            "% of basic basket",
            "% of minimum wage",
        ]);
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.appliance.clone(),
                    fixed(r.annual_user_cost, 2),
                    fixed(r.share.pct_of_basket, 4),
                    fixed(r.share.pct_of_wage, 4),
                ]
            })
            .collect();
        format!(
            "Affordability: {}\n{}per_capita_subsidy_usd: {}\n",
            self.scenario,
            text_table(&header, &rows),
            fixed(self.per_capita_subsidy, 2)
        )
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.appliance.clone(),
                    fixed(r.annual_user_cost, 2),
                    fixed(r.share.pct_of_basket, 4),
                    fixed(r.share.pct_of_wage, 4),
                ]
            })
            .collect();
        (vec!["appliance", "user_cost_usd", "pct_of_basket", "pct_of_wage"], rows)
    }

    fn structured(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "appliance": r.appliance,
                    "user_cost_usd": r.annual_user_cost,
                    "pct_of_basket": r.share.pct_of_basket,
                    "pct_of_wage": r.share.pct_of_wage,
                })
            })
            .collect();
        json!({
            "scenario": self.scenario,
            "rows": rows,
            "per_capita_subsidy_usd": self.per_capita_subsidy,
        })
    }
}
