//! Closed-form purity after `k` conditional steps and the conditions under
//! which it dips, peaks, or grows monotonically toward one.
//!
//! With `D_k = a + b g^{2k} + 2 c̃ g^k cos α_k`, the purity after `k` steps is
//! `P_k = 1 - 2 g^{2k} det ρ₀ / D_k²`, so every comparison between two purities
//! reduces to a comparison between consecutive denominators.

use std::f64::consts::TAU;

use super::decomposition::{InitialDecomposition, COHERENCE_TOL};
use crate::error::{Error, Result};
use crate::linalg::DEFAULT_TOL;

/// Smallest admissible `D_k`.
pub const DENOMINATOR_FLOOR: f64 = 1e-14;

/// Equality slack when placing a real-valued bound on the integer grid.
const TIE_TOL: f64 = 1e-12;

/// Relative slack on the monotonicity inequality.
const MONOTONIC_TOL: f64 = 1e-12;

/// Weights at or below this count as zero.
const WEIGHT_TOL: f64 = 1e-12;

fn denominator(d: &InitialDecomposition, g: f64, k: u64) -> f64 {
    let gk = g.powf(k as f64);
    d.a + d.b * gk * gk + 2.0 * d.c_tilde * gk * d.cos_alpha(k)
}

/// `tr ρ_k²` from the decomposition of `ρ₀`, without iterating the map.
pub fn purity_closed_form(d: &InitialDecomposition, g: f64, k: u64) -> Result<f64> {
    if k == 0 && g == 0.0 {
        return Err(Error::InvalidK);
    }
    let denom = denominator(d, g, k);
    if denom.is_nan() || denom <= DENOMINATOR_FLOOR {
        return Err(Error::DegenerateDenominator(denom));
    }
    let g2k = g.powf(2.0 * k as f64);
    Ok(1.0 - 2.0 * g2k * d.det_rho0.max(0.0) / (denom * denom))
}

/// `a < b g - 2 g c̃ (cos α₁ - cos α₀) / (1 - g)`.
///
/// For a mixed `ρ₀` this holds exactly when the first measurement lowers the purity.
pub fn local_min_at_first(d: &InitialDecomposition, g: f64) -> bool {
    let swing = d.cos_alpha(1) - d.cos_alpha(0);
    d.a < d.b * g - 2.0 * g * d.c_tilde / (1.0 - g) * swing
}

/// Necessary condition for `P₁ > P₀` together with `P₁ > P₂`:
/// `b < 2c̃ [cos α₁ - cos α₀ + g (cos α₁ - cos α₂)] / ((1 - g)² (1 + g))`.
pub fn local_max_at_first_possible(d: &InitialDecomposition, g: f64) -> bool {
    let (c0, c1, c2) = (d.cos_alpha(0), d.cos_alpha(1), d.cos_alpha(2));
    let bound = 2.0 * d.c_tilde / ((1.0 - g).powi(2) * (1.0 + g)) * (c1 - c0 + g * (c1 - c2));
    d.b < bound
}

/// Left side of `P_k ≥ P_{k-1}` written as `b g^{2k-1} - 2 g^k c̃ (cos α_k - cos α_{k-1}) / (1-g) - a ≤ 0`.
pub fn monotonic_lhs(d: &InitialDecomposition, g: f64, k: u64) -> f64 {
    assert!(k >= 1, "monotonicity compares step k with k - 1, k >= 1");
    let gk = g.powf(k as f64);
    let g2km1 = g.powf(2.0 * k as f64 - 1.0);
    let swing = d.cos_alpha(k) - d.cos_alpha(k - 1);
    d.b * g2km1 - 2.0 * gk * d.c_tilde / (1.0 - g) * swing - d.a
}

/// Upper bound on [`monotonic_lhs`] that decreases in `k`.
fn monotonic_envelope(d: &InitialDecomposition, g: f64, k: u64) -> f64 {
    d.b * g.powf(2.0 * k as f64 - 1.0) + 4.0 * d.c_tilde * g.powf(k as f64) / (1.0 - g) - d.a
}

/// Whether `P_k ≥ P_{k-1}` for every `k ≥ k0`.
///
/// Steps `k0..=k_probe` are checked directly (`k_probe` defaults to
/// [`k_threshold_sufficient`]); probing then continues until the decreasing
/// envelope `b g^{2k-1} + 4 c̃ g^k / (1-g) - a` turns non-positive, which
/// bounds every later step. The answer is therefore exact for all `k`.
pub fn monotonic_from(d: &InitialDecomposition, g: f64, k0: u64, k_probe: Option<u64>) -> bool {
    if d.is_pure() {
        return true;
    }
    let k0 = k0.max(1);
    let probe_end = k_probe
        .unwrap_or_else(|| k_threshold_sufficient(d, g).unwrap_or(k0))
        .max(k0);
    let slack = MONOTONIC_TOL * (d.a + d.b + d.c_tilde);
    if (k0..=probe_end).any(|k| monotonic_lhs(d, g, k) > slack) {
        return false;
    }
    // Mixed states have a > 0, so the envelope ends up negative.
    let mut k = probe_end + 1;
    while monotonic_envelope(d, g, k) > 0.0 {
        if monotonic_lhs(d, g, k) > slack {
            return false;
        }
        k += 1;
    }
    true
}

fn ceil_to_step(x: f64) -> u64 {
    let k = (x - TIE_TOL).ceil();
    if k <= 0.0 {
        0
    } else if k >= u64::MAX as f64 {
        u64::MAX
    } else {
        k as u64
    }
}

/// Smallest `k₀` from which the envelope bound guarantees monotonic purity:
/// `k₀ ≥ log[√(4g²c̃²/((1-g)²b²) + ag/b) - 2gc̃/((1-g)b)] / log g`.
///
/// Returns 0 for pure inputs, `b = 0`, `g = 0`, or when the bracket is at least one.
pub fn k_threshold_sufficient(d: &InitialDecomposition, g: f64) -> Result<u64> {
    if d.a <= WEIGHT_TOL {
        return Err(Error::UndefinedThreshold);
    }
    if d.is_pure() || d.b <= WEIGHT_TOL || g == 0.0 {
        return Ok(0);
    }
    let shift = 2.0 * g * d.c_tilde / ((1.0 - g) * d.b);
    let q = d.a * g / d.b;
    // √(shift² + q) - shift, rationalized.
    let bracket = q / ((shift * shift + q).sqrt() + shift);
    if bracket >= 1.0 {
        return Ok(0);
    }
    Ok(ceil_to_step(bracket.ln() / g.ln()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplifiedThreshold {
    pub k: u64,
    /// The bound is necessary and sufficient: `c̃ = 0` or `λ₁λ₂*` real positive.
    pub exact: bool,
}

/// `k ≥ ½ (1 + log(a/b) / log g)`, at least one step (pure inputs give 0).
pub fn k_threshold_simplified(d: &InitialDecomposition, g: f64) -> Result<SimplifiedThreshold> {
    if d.a <= WEIGHT_TOL {
        return Err(Error::UndefinedThreshold);
    }
    let delta = d.delta.rem_euclid(TAU);
    let exact = d.c_tilde <= COHERENCE_TOL || delta.min(TAU - delta) <= DEFAULT_TOL;
    if d.is_pure() || d.b <= WEIGHT_TOL {
        return Ok(SimplifiedThreshold { k: 0, exact });
    }
    let bound = 0.5 * (1.0 + (d.a / d.b).ln() / g.ln());
    Ok(SimplifiedThreshold {
        k: ceil_to_step(bound).max(1),
        exact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OscillationReport {
    pub local_min_at_1: bool,
    pub local_max_at_1_possible: bool,
    /// `None` when the threshold is undefined (no weight on the dominant state).
    pub k_monotonic_sufficient: Option<u64>,
    pub k_monotonic_simplified: Option<u64>,
    pub simplified_is_exact: bool,
}

/// Collects the predicates and thresholds; a pure `ρ₀` never oscillates,
/// so both predicates are reported false for it.
pub fn oscillation_report(d: &InitialDecomposition, g: f64) -> OscillationReport {
    let mixed = !d.is_pure();
    let simplified = k_threshold_simplified(d, g).ok();
    OscillationReport {
        local_min_at_1: mixed && local_min_at_first(d, g),
        local_max_at_1_possible: mixed && local_max_at_first_possible(d, g),
        k_monotonic_sufficient: k_threshold_sufficient(d, g).ok(),
        k_monotonic_simplified: simplified.map(|s| s.k),
        simplified_is_exact: simplified.is_some_and(|s| s.exact),
    }
}
