//! Turns a parsed document into a validated [`Scenario`], reporting every
//! semantic problem at once with its position.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use super::diagnostic::{Code, Diagnostic, Pos};
use super::document::{Document, Entry, Scalar, Section, Value};
use crate::appliance::{ApplianceProfile, Carrier, FuelSpec};
use crate::mix::{EnergySource, GenerationMix};
use crate::scenario::{Demographics, Fuel, Scenario};
use crate::tariff::{BlockBound, FuelPricing, TariffBlock, TariffSchedule};

/// A scenario plus the non-fatal diagnostics raised while building it.
#[derive(Debug, Clone)]
pub struct Built {
    pub scenario: Scenario,
    pub warnings: Vec<Diagnostic>,
}

/// Reads the keys of one section, remembering which were consumed so the
/// rest can be flagged as unknown.
struct Reader<'a> {
    section: &'a Section,
    used: RefCell<HashSet<&'a str>>,
    diags: &'a RefCell<Vec<Diagnostic>>,
}

impl<'a> Reader<'a> {
    fn new(section: &'a Section, diags: &'a RefCell<Vec<Diagnostic>>) -> Self {
        Self {
            section,
            used: RefCell::default(),
            diags,
        }
    }

    fn error(&self, code: Code, pos: Pos, msg: impl Into<String>) {
        self.diags.borrow_mut().push(Diagnostic::error(code, pos, msg));
    }

    fn entry(&self, key: &'a str, required: bool) -> Option<&'a Entry> {
        self.used.borrow_mut().insert(key);
        let e = self.section.get(key);
        if e.is_none() && required {
            self.error(
                Code::MissingKey,
                self.section.pos,
                format!("section [{}] is missing required key `{key}`", self.section.name),
            );
        }
        e
    }

    fn number_entry(&self, key: &'a str, required: bool) -> Option<(f64, Pos)> {
        let e = self.entry(key, required)?;
        match &e.value {
            Value::Scalar(Scalar::Number(n)) => Some((*n, e.value_pos)),
            other => {
                self.error(
                    Code::ExpectedNumber,
                    e.value_pos,
                    format!("expected number for `{key}`, found {}", other.kind()),
                );
                None
            }
        }
    }

    /// Required number satisfying `ok`; `constraint` describes it.
    fn number(&self, key: &'a str, ok: fn(f64) -> bool, constraint: &str) -> Option<f64> {
        self.checked(self.number_entry(key, true), key, ok, constraint)
    }

    fn opt_number(&self, key: &'a str, ok: fn(f64) -> bool, constraint: &str) -> Option<f64> {
        self.checked(self.number_entry(key, false), key, ok, constraint)
    }

    fn checked(&self, found: Option<(f64, Pos)>, key: &str, ok: fn(f64) -> bool, constraint: &str) -> Option<f64> {
        let (n, pos) = found?;
        if ok(n) {
            Some(n)
        } else {
            self.error(
                Code::InvalidValue,
                pos,
                format!("`{key}` must be {constraint}, got {n}"),
            );
            None
        }
    }

    fn count(&self, key: &'a str, required: bool) -> Option<(u64, Pos)> {
        let (n, pos) = self.number_entry(key, required)?;
        if n >= 0.0 && n.fract() == 0.0 && n <= 9.0e15 {
            Some((n as u64, pos))
        } else {
            self.error(
                Code::ExpectedInteger,
                pos,
                format!("`{key}` must be a non-negative integer, got {n}"),
            );
            None
        }
    }

    fn string(&self, key: &'a str, required: bool) -> Option<(&'a str, Pos)> {
        let e = self.entry(key, required)?;
        match &e.value {
            Value::Scalar(Scalar::Str(s)) => Some((s.as_str(), e.value_pos)),
            other => {
                self.error(
                    Code::ExpectedString,
                    e.value_pos,
                    format!("expected string for `{key}`, found {}", other.kind()),
                );
                None
            }
        }
    }

    fn finish(self) -> Vec<Diagnostic> {
        let used = self.used.into_inner();
        let mut seen = HashSet::new();
        self.section
            .entries
            .iter()
            .filter(|e| !used.contains(e.key.as_str()) && seen.insert(e.key.as_str()))
            .map(|e| {
                Diagnostic::warning(
                    Code::UnknownKey,
                    e.key_pos,
                    format!("unknown key `{}` in section [{}] is ignored", e.key, self.section.name),
                )
            })
            .collect()
    }
}

fn nonneg(x: f64) -> bool {
    x >= 0.0
}

fn positive(x: f64) -> bool {
    x > 0.0
}

/// Builds a scenario; `default_name` is used when there is no
/// `[scenario] name`.
pub fn build_scenario(doc: &Document, default_name: &str) -> Result<Built, Vec<Diagnostic>> {
    let diags = RefCell::new(Vec::new());
    let mut warnings = Vec::new();
    let top = Pos::new(1, 1);
    let missing = |what: &str| {
        diags.borrow_mut().push(Diagnostic::error(
            Code::MissingSection,
            top,
            format!("missing section {what}"),
        ));
    };

    // [scenario]
    let (mut name, mut year) = (default_name.to_string(), None);
    if let Some(sec) = doc.section("scenario") {
        let r = Reader::new(sec, &diags);
        if let Some((n, _)) = r.string("name", false) {
            name = n.to_string();
        }
        if let Some((y, pos)) = r.number_entry("year", false) {
            if y.fract() == 0.0 && y.abs() < 1e6 {
                year = Some(y as i32);
            } else {
                r.error(
                    Code::ExpectedInteger,
                    pos,
                    format!("`year` must be an integer, got {y}"),
                );
            }
        }
        warnings.extend(r.finish());
    }

    // [[source]]
    let mut sources = Vec::new();
    let mut source_names: HashMap<String, Pos> = HashMap::new();
    for sec in doc.sections_named("source") {
        let r = Reader::new(sec, &diags);
        let name = r.string("name", true);
        let energy = r.number("energy_mwh", nonneg, ">= 0");
        let primary = r.number("primary_factor", positive, "> 0");
        let ef = r.number("emission_factor", nonneg, ">= 0");
        if let Some((n, pos)) = name {
            if let Some(first) = source_names.insert(n.to_string(), pos) {
                r.error(
                    Code::DuplicateName,
                    pos,
                    format!("duplicate source `{n}` (first defined at line {})", first.line),
                );
            }
        }
        if let (Some((n, _)), Some(e), Some(p), Some(f)) = (name, energy, primary, ef) {
            sources.push(EnergySource::new(n, e, p, f));
        }
        warnings.extend(r.finish());
    }
    if doc.section("source").is_none() {
        missing("[[source]] (at least one generation source is required)");
    }

    // [[fuel]]
    let mut fuels = Vec::new();
    let mut fuel_names = HashSet::new();
    for sec in doc.sections_named("fuel") {
        let r = Reader::new(sec, &diags);
        let name = r.string("name", true);
        let primary = r.number("primary_factor", positive, "> 0");
        let ef = r.number("emission_factor", positive, "> 0");
        let cyl = r.number("cylinder_kg", positive, "> 0");
        let kg = r.number("monthly_kg_per_household", positive, "> 0");
        let user = r.number("user_price_per_cylinder", nonneg, ">= 0");
        let full = r.number("full_cost_per_cylinder", nonneg, ">= 0");
        if let Some((n, pos)) = name {
            if !fuel_names.insert(n.to_string()) {
                r.error(Code::DuplicateName, pos, format!("duplicate fuel `{n}`"));
            }
        }
        if let (Some((n, _)), Some(primary), Some(ef), Some(cyl), Some(kg), Some(user), Some(full)) =
            (name, primary, ef, cyl, kg, user, full)
        {
            fuels.push(Fuel {
                spec: FuelSpec {
                    name: n.to_string(),
                    primary_factor: primary,
                    emission_factor: ef,
                    cylinder_kg: cyl,
                    monthly_kg_per_household: kg,
                },
                pricing: FuelPricing {
                    user_price_per_cylinder: user,
                    full_cost_per_cylinder: full,
                },
            });
        }
        warnings.extend(r.finish());
    }

    // [[appliance]]
    let mut appliances = Vec::new();
    let mut appliance_names = HashSet::new();
    let mut count_sum: u64 = 0;
    let mut counts_complete = true;
    for sec in doc.sections_named("appliance") {
        let r = Reader::new(sec, &diags);
        let name = r.string("name", true);
        let carrier = r.string("carrier", true).and_then(|(c, pos)| match Carrier::parse(c) {
            Some(Carrier::Fuel(f)) if !fuel_names.contains(&f) => {
                r.error(
                    Code::UnknownFuel,
                    pos,
                    format!("carrier references undefined fuel `{f}`"),
                );
                None
            }
            Some(carrier) => Some(carrier),
            None => {
                r.error(
                    Code::InvalidValue,
                    pos,
                    format!("carrier must be \"electricity\" or \"fuel:<name>\", got \"{c}\""),
                );
                None
            }
        });
        let monthly = r.number("monthly_final_kwh", nonneg, ">= 0");
        let count = r.count("count", true);
        match count {
            Some((c, _)) => count_sum = count_sum.saturating_add(c),
            None => counts_complete = false,
        }
        if let Some((n, pos)) = name {
            if !appliance_names.insert(n.to_string()) {
                r.error(Code::DuplicateName, pos, format!("duplicate appliance `{n}`"));
            }
        }
        if let (Some((n, _)), Some(carrier), Some(m), Some((c, _))) = (name, carrier, monthly, count) {
            appliances.push(ApplianceProfile::new(n, carrier, m, c));
        }
        warnings.extend(r.finish());
    }
    if doc.section("appliance").is_none() {
        missing("[[appliance]] (at least one cooking technology is required)");
    }

    // [demographics]
    let mut demographics = None;
    match doc.section("demographics") {
        None => missing("[demographics]"),
        Some(sec) => {
            let r = Reader::new(sec, &diags);
            let population = r.number("population", positive, "> 0");
            let households = r.count("households", true);
            let size = r.opt_number("avg_household_size", positive, "> 0");
            let wage = r.opt_number("minimum_wage", positive, "> 0");
            let basket = r.opt_number("basic_basket", positive, "> 0");
            if let Some((h, pos)) = households {
                if h == 0 {
                    r.error(Code::InvalidValue, pos, "`households` must be > 0");
                } else if counts_complete && count_sum != h {
                    r.error(
                        Code::Partition,
                        pos,
                        format!("appliance counts sum to {count_sum} but households = {h}; every household must use exactly one appliance"),
                    );
                }
            }
            if let (Some(population), Some((households, _))) = (population, households) {
                demographics = Some(Demographics {
                    population,
                    households,
                    avg_household_size: size,
                    minimum_wage: wage,
                    basic_basket: basket,
                });
            }
            warnings.extend(r.finish());
        }
    }

    // [tariff]
    let mut tariff = None;
    match doc.section("tariff") {
        None => missing("[tariff]"),
        Some(sec) => {
            let r = Reader::new(sec, &diags);
            let production = r.number("production_cost_per_kwh", nonneg, ">= 0");
            r.used.borrow_mut().insert("block");
            let blocks = read_blocks(sec, &diags);
            if let (Some(production), Some(blocks)) = (production, blocks) {
                match TariffSchedule::new(blocks, production) {
                    Ok(t) => tariff = Some(t),
                    Err(e) => r.error(Code::Tariff, sec.pos, e.to_string()),
                }
            }
            warnings.extend(r.finish());
        }
    }

    let mut diags = diags.into_inner();
    if !diags.is_empty() {
        diags.sort_by_key(|d| d.pos);
        return Err(diags);
    }

    let mix = match GenerationMix::new(year, sources) {
        Ok(m) => m,
        Err(e) => return Err(vec![Diagnostic::error(Code::InvalidValue, top, e.to_string())]),
    };
    let scenario = Scenario {
        name,
        year,
        mix,
        fuels,
        tariff: tariff.expect("tariff built when no diagnostics"),
        appliances,
        demographics: demographics.expect("demographics built when no diagnostics"),
    };
    // domain-level safety net; the checks above should already cover these
    let violations = scenario.violations();
    if !violations.is_empty() {
        return Err(violations
            .into_iter()
            .map(|e| Diagnostic::error(Code::InvalidValue, top, e.to_string()))
            .collect());
    }
    warnings.sort_by_key(|d| d.pos);
    Ok(Built { scenario, warnings })
}

/// `block = <bound|inf>, <rate>` lines in declaration order, checked for
/// shape and ordering.
fn read_blocks(sec: &Section, diags: &RefCell<Vec<Diagnostic>>) -> Option<Vec<TariffBlock>> {
    let err = |pos: Pos, msg: String| diags.borrow_mut().push(Diagnostic::error(Code::Tariff, pos, msg));
    let entries: Vec<&Entry> = sec.get_all("block").collect();
    if entries.is_empty() {
        err(
            sec.pos,
            "tariff needs at least one `block = <bound|inf>, <rate>` line".into(),
        );
        return None;
    }
    let mut blocks = Vec::new();
    let mut ok = true;
    let mut prev: Option<f64> = None;
    let last = entries.len() - 1;
    for (i, e) in entries.iter().enumerate() {
        let Value::List(items) = &e.value else {
            err(
                e.value_pos,
                format!("block must be `<bound|inf>, <rate>`, found {}", e.value.kind()),
            );
            ok = false;
            continue;
        };
        if items.len() != 2 {
            err(
                e.value_pos,
                format!("block must have exactly 2 values, found {}", items.len()),
            );
            ok = false;
            continue;
        }
        let upper = match &items[0].scalar {
            Scalar::Inf if i == last => Some(BlockBound::Unbounded),
            Scalar::Inf => {
                err(items[0].pos, "only the last block may be unbounded".into());
                None
            }
            Scalar::Number(n) if i == last => {
                err(
                    items[0].pos,
                    format!("the last block must be unbounded (`inf`), got {n}"),
                );
                None
            }
            Scalar::Number(n) => {
                if *n <= prev.unwrap_or(0.0) {
                    err(items[0].pos, "blocks must be strictly increasing".into());
                    None
                } else {
                    prev = Some(*n);
                    Some(BlockBound::UpTo(*n))
                }
            }
            other => {
                err(
                    items[0].pos,
                    format!("expected number or `inf` for block bound, found {}", other.kind()),
                );
                None
            }
        };
        let rate = match &items[1].scalar {
            Scalar::Number(n) if *n >= 0.0 => Some(*n),
            Scalar::Number(n) => {
                err(items[1].pos, format!("block rate must be >= 0, got {n}"));
                None
            }
            other => {
                diags.borrow_mut().push(Diagnostic::error(
                    Code::ExpectedNumber,
                    items[1].pos,
                    format!("expected number for block rate, found {}", other.kind()),
                ));
                None
            }
        };
        match (upper, rate) {
            (Some(upper), Some(rate)) => blocks.push(TariffBlock { upper, rate }),
            _ => ok = false,
        }
    }
    ok.then_some(blocks)
}

/// Parse and build in one step.
pub fn load_scenario(text: &str, default_name: &str) -> Result<Built, Vec<Diagnostic>> {
    let doc = super::document::parse(text)?;
    build_scenario(&doc, default_name)
}
