//! Continuous demand distributions on a bounded support `[0, U]`.
//!
//! Two families are supported: the uniform distribution and a tabulated CDF
//! given as knots `(x, F(x))` with linear interpolation in between (so the
//! density is piecewise constant). Everything the newsvendor layer needs is
//! available in closed form for both: CDF, density, quantile, expected sales
//! `E[min(q, D)]` and the generalized failure rate `x f(x) / (1 - F(x))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of grid points used when a tabulated model is checked for an
/// increasing generalized failure rate.
pub const DEFAULT_IGFR_GRID: usize = 1024;

const IGFR_SLACK: f64 = -1e-12;

/// A continuous demand distribution supported on `[0, upper()]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DemandSpec", into = "DemandSpec")]
pub enum DemandModel {
    Uniform { upper: f64 },
    Tabulated(TabulatedCdf),
}

/// Piecewise-linear CDF through a list of knots.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedCdf {
    xs: Vec<f64>,
    fs: Vec<f64>,
    igfr: bool,
}

/// Serialized form of a [`DemandModel`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum DemandSpec {
    Uniform { upper: f64 },
    Tabulated { knots: Vec<[f64; 2]> },
}

impl TryFrom<DemandSpec> for DemandModel {
    type Error = Error;

    fn try_from(spec: DemandSpec) -> Result<Self> {
        match spec {
            DemandSpec::Uniform { upper } => DemandModel::uniform(upper),
            DemandSpec::Tabulated { knots } => {
                let pairs: Vec<(f64, f64)> = knots.iter().map(|k| (k[0], k[1])).collect();
                DemandModel::tabulated(&pairs)
            }
        }
    }
}

impl From<DemandModel> for DemandSpec {
    fn from(model: DemandModel) -> Self {
        match model {
            DemandModel::Uniform { upper } => DemandSpec::Uniform { upper },
            DemandModel::Tabulated(t) => DemandSpec::Tabulated {
                knots: t.xs.iter().zip(&t.fs).map(|(&x, &f)| [x, f]).collect(),
            },
        }
    }
}

impl DemandModel {
    pub fn uniform(upper: f64) -> Result<Self> {
        if !(upper.is_finite() && upper > 0.0) {
            return Err(Error::validation(
                "demand.upper",
                format!("upper support must be positive and finite, got {upper}"),
            ));
        }
        Ok(DemandModel::Uniform { upper })
    }

    /// Builds a tabulated CDF from `(x, F(x))` knots.
    ///
    /// The first knot must be `(0, 0)`, abscissae strictly increase, `F` never
    /// decreases, stays below 1 until the last knot, and ends at exactly 1.
    pub fn tabulated(knots: &[(f64, f64)]) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::validation("demand.knots", "need at least two knots"));
        }
        if knots[0] != (0.0, 0.0) {
            return Err(Error::validation("demand.knots[0]", "first knot must be (0, 0)"));
        }
        for (i, w) in knots.windows(2).enumerate() {
            let ((x0, f0), (x1, f1)) = (w[0], w[1]);
            if !(x1.is_finite() && x1 > x0) {
                return Err(Error::validation(
                    format!("demand.knots[{}]", i + 1),
                    "x must be strictly increasing",
                ));
            }
            if f1.is_nan() || f1 < f0 {
                return Err(Error::validation(
                    format!("demand.knots[{}]", i + 1),
                    "CDF must be non-decreasing",
                ));
            }
        }
        let last = knots.len() - 1;
        if knots[last].1 != 1.0 {
            return Err(Error::validation(
                format!("demand.knots[{last}]"),
                "last knot must have F = 1",
            ));
        }
        if let Some(i) = knots[..last].iter().position(|k| k.1 >= 1.0) {
            return Err(Error::validation(
                format!("demand.knots[{i}]"),
                "CDF reaches 1 before the last knot",
            ));
        }
        let mut table = TabulatedCdf {
            xs: knots.iter().map(|k| k.0).collect(),
            fs: knots.iter().map(|k| k.1).collect(),
            igfr: true,
        };
        let model = DemandModel::Tabulated(table.clone());
        table.igfr = model.check_igfr(DEFAULT_IGFR_GRID);
        Ok(DemandModel::Tabulated(table))
    }

    /// Upper end of the support.
    pub fn upper(&self) -> f64 {
        match self {
            DemandModel::Uniform { upper } => *upper,
            DemandModel::Tabulated(t) => *t.xs.last().expect("validated table"),
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, DemandModel::Uniform { .. })
    }

    /// Whether the generalized failure rate is non-decreasing. Uniform models are
    /// IGFR analytically; tabulated models are checked once on construction.
    pub fn is_igfr(&self) -> bool {
        match self {
            DemandModel::Uniform { .. } => true,
            DemandModel::Tabulated(t) => t.igfr,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match self {
            DemandModel::Uniform { upper } => (x / upper).min(1.0),
            DemandModel::Tabulated(t) => {
                if x >= *t.xs.last().unwrap() {
                    return 1.0;
                }
                let k = t.segment(x);
                t.fs[k] + t.slope(k) * (x - t.xs[k])
            }
        }
    }

    /// `1 - F(x)`.
    pub fn survival(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.upper()).contains(&x) {
            return Err(Error::Domain(format!(
                "density requested at {x}, outside support [0, {}]",
                self.upper()
            )));
        }
        Ok(self.density(x))
    }

    /// Density with zero outside the support. At an interior knot the density
    /// of the segment to the right is returned; at the upper end, the last one.
    pub fn density(&self, x: f64) -> f64 {
        if x < 0.0 || x > self.upper() {
            return 0.0;
        }
        match self {
            DemandModel::Uniform { upper } => 1.0 / upper,
            DemandModel::Tabulated(t) => t.slope(t.segment(x)),
        }
    }

    /// Smallest `x` with `cdf(x) >= p`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
        }
        Ok(self.quantile_unchecked(p))
    }

    pub(crate) fn quantile_unchecked(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        if p == 0.0 {
            return 0.0;
        }
        match self {
            DemandModel::Uniform { upper } => p * upper,
            DemandModel::Tabulated(t) => {
                // first knot with F >= p; knot 0 has F = 0 < p
                let k = t.fs.partition_point(|&f| f < p);
                let (x0, f0, x1, f1) = (t.xs[k - 1], t.fs[k - 1], t.xs[k], t.fs[k]);
                x0 + (p - f0) / (f1 - f0) * (x1 - x0)
            }
        }
    }

    /// Expected sales `E[min(q, D)] = ∫₀^q (1 - F(x)) dx`.
    pub fn expected_min(&self, q: f64) -> Result<f64> {
        if q.is_nan() || q < 0.0 {
            return Err(Error::Domain(format!("stock level {q} is negative")));
        }
        Ok(self.expected_min_unchecked(q))
    }

    pub(crate) fn expected_min_unchecked(&self, q: f64) -> f64 {
        let q = q.max(0.0);
        match self {
            DemandModel::Uniform { upper } => {
                if q >= *upper {
                    upper / 2.0
                } else {
                    q - q * q / (2.0 * upper)
                }
            }
            DemandModel::Tabulated(t) => {
                let mut total = 0.0;
                for k in 0..t.xs.len() - 1 {
                    let (x0, x1) = (t.xs[k], t.xs[k + 1]);
                    if q <= x0 {
                        break;
                    }
                    let end = q.min(x1);
                    let s0 = 1.0 - t.fs[k];
                    let s_end = 1.0 - (t.fs[k] + t.slope(k) * (end - x0));
                    total += 0.5 * (s0 + s_end) * (end - x0);
                }
                total
            }
        }
    }

    /// Mean demand.
    pub fn mean(&self) -> f64 {
        self.expected_min_unchecked(self.upper())
    }

    /// Generalized failure rate `x f(x) / (1 - F(x))`, defined as 0 at `x = 0`.
    pub fn gfr(&self, x: f64) -> Result<f64> {
        if x < 0.0 || x >= self.upper() {
            return Err(Error::Domain(format!(
                "failure rate requested at {x}, outside [0, {})",
                self.upper()
            )));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        let s = self.survival(x);
        if s <= 0.0 {
            return Err(Error::Domain(format!("zero survival at {x}")));
        }
        Ok(x * self.density(x) / s)
    }

    /// Grid test for an increasing generalized failure rate over the open
    /// support, using `grid_points` equally spaced interior points (at least 3).
    pub fn check_igfr(&self, grid_points: usize) -> bool {
        let n = grid_points.max(3);
        let upper = self.upper();
        let mut prev: Option<f64> = None;
        for j in 0..n {
            let x = upper * (j + 1) as f64 / (n + 1) as f64;
            let Ok(g) = self.gfr(x) else {
                return false;
            };
            if let Some(p) = prev {
                if g - p < IGFR_SLACK {
                    return false;
                }
            }
            prev = Some(g);
        }
        true
    }
}

impl TabulatedCdf {
    /// Index `k` of the segment `[x_k, x_{k+1})` containing `x`, clamped to the
    /// last segment.
    fn segment(&self, x: f64) -> usize {
        let k = self.xs.partition_point(|&v| v <= x);
        k.saturating_sub(1).min(self.xs.len() - 2)
    }

    fn slope(&self, k: usize) -> f64 {
        (self.fs[k + 1] - self.fs[k]) / (self.xs[k + 1] - self.xs[k])
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.fs.iter().copied())
    }
}
