use std::fmt;
use std::str::FromStr;

use crate::demand::DemandModel;
use crate::error::{Error, Result};
use crate::market::Instance;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Field {
    FixedCost,
    Capacity,
    Retail(usize),
    TraditionalCost(usize),
    PrintCost(usize),
    DemandUpper(usize),
}

#[derive(Debug, Clone, PartialEq)]
struct Target {
    field: Field,
    scale: f64,
}

/// One or more numeric fields of an [`Instance`] driven by a single value.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPath {
    text: String,
    targets: Vec<Target>,
}

impl FromStr for ParamPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let targets = s
            .split(',')
            .map(|part| parse_target(part.trim(), s))
            .collect::<Result<Vec<_>>>()?;
        Ok(ParamPath {
            text: s.to_string(),
            targets,
        })
    }
}

impl fmt::Display for ParamPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn bad(path: &str, why: &str) -> Error {
    Error::validation("param", format!("{why} in `{path}`"))
}

fn parse_target(part: &str, whole: &str) -> Result<Target> {
    let (name, scale) = match part.split_once('*') {
        Some((name, factor)) => {
            let scale: f64 = factor
                .trim()
                .parse()
                .map_err(|_| bad(whole, "bad scale factor"))?;
            (name.trim(), scale)
        }
        None => (part, 1.0),
    };
    let field = match name {
        "K" => Field::FixedCost,
        "Q" => Field::Capacity,
        _ => {
            let rest = name
                .strip_prefix("products[")
                .ok_or_else(|| bad(whole, "unknown parameter"))?;
            let (index, field) = rest
                .split_once("].")
                .ok_or_else(|| bad(whole, "malformed product index"))?;
            let i: usize = index.parse().map_err(|_| bad(whole, "malformed product index"))?;
            match field {
                "r" => Field::Retail(i),
                "c_m" => Field::TraditionalCost(i),
                "c_p" => Field::PrintCost(i),
                "demand.upper" => Field::DemandUpper(i),
                _ => return Err(bad(whole, "unknown product field")),
            }
        }
    };
    Ok(Target { field, scale })
}

impl ParamPath {
    /// Checks that every target exists and is numeric in `inst`.
    pub fn check(&self, inst: &Instance) -> Result<()> {
        for t in &self.targets {
            let i = match t.field {
                Field::FixedCost | Field::Capacity => continue,
                Field::Retail(i)
                | Field::TraditionalCost(i)
                | Field::PrintCost(i)
                | Field::DemandUpper(i) => i,
            };
            let Some(p) = inst.products.get(i) else {
                return Err(bad(&self.text, "product index out of range"));
            };
            if matches!(t.field, Field::DemandUpper(_)) && !p.demand.is_uniform() {
                return Err(bad(&self.text, "demand.upper needs uniform demand"));
            }
        }
        Ok(())
    }

    /// Current value of the first target.
    pub fn get(&self, inst: &Instance) -> Result<f64> {
        self.check(inst)?;
        let t = &self.targets[0];
        let raw = match t.field {
            Field::FixedCost => inst.fixed_cost,
            Field::Capacity => inst.capacity,
            Field::Retail(i) => inst.products[i].r,
            Field::TraditionalCost(i) => inst.products[i].c_m,
            Field::PrintCost(i) => inst.products[i].c_p,
            Field::DemandUpper(i) => inst.products[i].demand.upper(),
        };
        Ok(raw / t.scale)
    }

    /// Sets every target to `value` times its scale and re-validates.
    pub fn apply(&self, inst: &mut Instance, value: f64) -> Result<()> {
        self.check(inst)?;
        for t in &self.targets {
            let v = value * t.scale;
            match t.field {
                Field::FixedCost => inst.fixed_cost = v,
                Field::Capacity => inst.capacity = v,
                Field::Retail(i) => inst.products[i].r = v,
                Field::TraditionalCost(i) => inst.products[i].c_m = v,
                Field::PrintCost(i) => inst.products[i].c_p = v,
                Field::DemandUpper(i) => inst.products[i].demand = DemandModel::uniform(v)?,
            }
        }
        inst.validate()
    }

    /// Copy of `inst` with the parameter set to `value`.
    pub fn with_value(&self, inst: &Instance, value: f64) -> Result<Instance> {
        let mut out = inst.clone();
        self.apply(&mut out, value)?;
        Ok(out)
    }
}
