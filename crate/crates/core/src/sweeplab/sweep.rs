use std::str::FromStr;

use rayon::prelude::*;

use super::param::ParamPath;
use crate::error::{Error, Result};
use crate::market::{EquilibriumSolution, Instance, Regime};
use crate::{multi_product, two_product};

/// Width below which boundary bisection stops.
pub const BOUNDARY_TOL: f64 = 1e-6;

/// A 1-D parameter grid, optionally nested for 2-D sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub second: Option<Box<SweepSpec>>,
}

impl SweepSpec {
    pub fn new(param: impl Into<String>, from: f64, to: f64, steps: usize) -> Self {
        SweepSpec {
            param: param.into(),
            from,
            to,
            steps,
            second: None,
        }
    }

    pub fn nested(mut self, inner: SweepSpec) -> Self {
        self.second = Some(Box::new(inner));
        self
    }

    fn validate(&self, inst: &Instance) -> Result<Vec<(ParamPath, Vec<f64>)>> {
        if !(self.from.is_finite() && self.to.is_finite() && self.from < self.to) {
            return Err(Error::validation(
                "sweep",
                format!("need from < to, got {} .. {}", self.from, self.to),
            ));
        }
        if self.steps < 2 {
            return Err(Error::validation("sweep.steps", "need at least 2 steps"));
        }
        let path = ParamPath::from_str(&self.param)?;
        path.check(inst)?;
        let span = self.to - self.from;
        let last = (self.steps - 1) as f64;
        let values = (0..self.steps)
            .map(|k| self.from + span * k as f64 / last)
            .collect();
        let mut axes = vec![(path, values)];
        if let Some(inner) = &self.second {
            if inner.second.is_some() {
                return Err(Error::validation("sweep", "at most two sweep dimensions"));
            }
            axes.extend(inner.validate(inst)?);
        }
        Ok(axes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellOutcome {
    Solved(EquilibriumSolution),
    /// The instance at this grid point was invalid; the message says why.
    Failed(String),
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionCell {
    pub coords: Vec<f64>,
    pub outcome: CellOutcome,
}

impl RegionCell {
    pub fn solution(&self) -> Option<&EquilibriumSolution> {
        match &self.outcome {
            CellOutcome::Solved(s) => Some(s),
            CellOutcome::Failed(_) => None,
        }
    }

    pub fn case(&self) -> Option<Regime> {
        self.solution().map(|s| s.case)
    }
}

/// Equilibrium regime of an instance.
pub fn classify(inst: &Instance) -> Regime {
    crate::solve(inst).case
}

/// Best plan given that printing is adopted, whatever its profitability.
pub fn adoption_plan(inst: &Instance) -> EquilibriumSolution {
    if inst.len() == 2 {
        two_product::solve_adoption_2(inst).expect("instance has two products")
    } else {
        multi_product::solve_adoption_n(inst)
    }
}

/// Evaluates the equilibrium at every grid point of `spec`. Cells are ordered
/// by the first coordinate, then the second. Invalid grid points become
/// [`CellOutcome::Failed`] cells rather than aborting the sweep.
pub fn sweep(inst: &Instance, spec: &SweepSpec) -> Result<Vec<RegionCell>> {
    let axes = spec.validate(inst)?;
    let mut points: Vec<Vec<f64>> = axes[0].1.iter().map(|&x| vec![x]).collect();
    if let Some((_, inner)) = axes.get(1) {
        points = points
            .into_iter()
            .flat_map(|p| inner.iter().map(move |&y| vec![p[0], y]))
            .collect();
    }
    Ok(points
        .into_par_iter()
        .map(|coords| {
            let mut cell_inst = inst.clone();
            let applied = axes
                .iter()
                .zip(&coords)
                .try_for_each(|((path, _), &v)| path.apply(&mut cell_inst, v));
            let outcome = match applied {
                Ok(()) => CellOutcome::Solved(crate::solve(&cell_inst)),
                Err(e) => CellOutcome::Failed(e.to_string()),
            };
            RegionCell { coords, outcome }
        })
        .collect())
}

/// Which label change a boundary search tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// The adoption flag of the equilibrium flips.
    Adoption,
    /// The adoption plan switches between binding and slack capacity.
    Capacity,
}

impl FromStr for BoundaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adoption" => Ok(BoundaryKind::Adoption),
            "capacity" => Ok(BoundaryKind::Capacity),
            other => Err(Error::validation(
                "kind",
                format!("expected `adoption` or `capacity`, got `{other}`"),
            )),
        }
    }
}

/// Bisects `param` on `[lo, hi]` for the point where the tracked label changes.
pub fn find_boundary(
    inst: &Instance,
    param: &str,
    kind: BoundaryKind,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let path = ParamPath::from_str(param)?;
    let label = |x: f64| -> Result<bool> {
        let at = path.with_value(inst, x)?;
        Ok(match kind {
            BoundaryKind::Adoption => crate::solve(&at).adopted,
            BoundaryKind::Capacity => adoption_plan(&at).case == Regime::CapacityBound,
        })
    };
    let (mut a, mut b) = (lo, hi);
    let at_lo = label(a)?;
    if label(b)? == at_lo {
        return Err(Error::Bracket(format!(
            "{param}: same {kind:?} label at {lo} and {hi}"
        )));
    }
    while (b - a).abs() > BOUNDARY_TOL {
        let mid = 0.5 * (a + b);
        if label(mid)? == at_lo {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Human-readable report of the equilibrium of `inst`.
pub fn solution_report(inst: &Instance) -> Result<String> {
    let sol = crate::solve(inst);
    let mut out = format!("# Case {} ({})\n", sol.case.case_number(), sol.case);
    out.push_str(&toml::to_string(&sol).map_err(|e| Error::Parse(e.to_string()))?);
    Ok(out)
}
