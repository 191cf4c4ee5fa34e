//! Shared physical parameters and unit conventions.
//!
//! Natural units with ħ = 1 throughout. Energies may be expressed in units
//! of the level spacing Δ; times are reported both as real time t and the
//! dimensionless T = Δt/2.

use crate::Error;

/// Physical parameters of the level/quasi-continuum model together with the
/// derived quantities every other module needs.
///
/// * `alpha` — fractional position of `e_b` within one level spacing,
///   α = E_b/Δ − ⌊E_b/Δ⌋ ∈ [0, 1)
/// * `theta` — 2πα
/// * `gamma` — decay rate 2πg²/Δ
/// * `t_heisenberg` — 2π/Δ, the time needed to resolve adjacent levels
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub e_b: f64,
    pub delta: f64,
    pub g: f64,
    pub alpha: f64,
    pub theta: f64,
    pub gamma: f64,
    pub t_heisenberg: f64,
}

/// Snap tolerance for α rounding to 1 from below; α is periodic so such
/// values are folded back to 0.
const ALPHA_SNAP: f64 = 1e-12;

impl ModelParams {
    /// Build the parameter set from the discrete-level energy `e_b`, the
    /// level spacing `delta` and the coupling strength `g`.
    pub fn new(e_b: f64, delta: f64, g: f64) -> Result<Self, Error> {
        if !e_b.is_finite() || !delta.is_finite() || !g.is_finite() {
            return Err(Error::Parameter("model parameters must be finite".into()));
        }
        if delta <= 0.0 {
            return Err(Error::Parameter(format!(
                "level spacing must be positive, got {delta}"
            )));
        }
        if g < 0.0 {
            return Err(Error::Parameter(format!(
                "coupling strength must be nonnegative, got {g}"
            )));
        }
        let ratio = e_b / delta;
        let mut alpha = ratio - ratio.floor();
        // Rounding can put α within one ulp of 1; fold it back to 0.
        if (alpha - 1.0).abs() < ALPHA_SNAP {
            alpha = 0.0;
        }
        Ok(ModelParams {
            e_b,
            delta,
            g,
            alpha,
            theta: 2.0 * std::f64::consts::PI * alpha,
            gamma: 2.0 * std::f64::consts::PI * g * g / delta,
            t_heisenberg: 2.0 * std::f64::consts::PI / delta,
        })
    }

    /// Convert a real time t ≥ 0 to the dimensionless T = Δt/2.
    pub fn to_dimensionless(&self, t: f64) -> Result<DimensionlessTime, Error> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
        }
        Ok(DimensionlessTime::new(self.delta * t / 2.0))
    }

    /// Convert a dimensionless T back to real time t = 2T/Δ.
    pub fn time_from_dimensionless(&self, big_t: f64) -> f64 {
        2.0 * big_t / self.delta
    }

    /// Index k of the Heisenberg interval containing t, with exact multiples
    /// of t_H assigned to the left interval: k·t_H < t ≤ (k+1)·t_H.
    pub fn heisenberg_interval(&self, t: f64) -> usize {
        interval_index(t, self.t_heisenberg)
    }
}

/// Dimensionless time T = Δt/2 with its interval index m, where
/// mπ < T ≤ (m+1)π and T = 0 maps to m = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessTime {
    pub big_t: f64,
    pub interval: usize,
}

impl DimensionlessTime {
    pub fn new(big_t: f64) -> Self {
        DimensionlessTime {
            big_t,
            interval: interval_index(big_t, std::f64::consts::PI),
        }
    }
}

/// Largest k with k·period < x (and 0 for x ≤ period), i.e. exact multiples
/// belong to the interval on their left.
pub(crate) fn interval_index(x: f64, period: f64) -> usize {
    if x <= 0.0 {
        return 0;
    }
    let mut k = (x / period).floor();
    // Right-closed intervals: x = k·period belongs to interval k − 1.
    if k > 0.0 && x <= k * period {
        k -= 1.0;
    }
    k as usize
}
