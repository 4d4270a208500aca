//! Numerical counterpart to the closed forms: optimum search, threshold
//! isolation, and regime classification.
//!
//! Every closed-form optimum and threshold has an independent numeric twin
//! here, so disagreements surface as a reported discrepancy instead of a
//! silently wrong formula.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analytic::{
    self, advantage_loss_threshold_two_photon, advantage_ratio, advantage_ratio_optimal_alpha,
    coincidence_distribution, fisher_at_optimal_alpha, fisher_information,
    fisher_information_max, optimal_alpha_for_fisher, optimal_alpha_for_visibility,
    optimal_loss_for_visibility, superiority_loss_bound_optimal_alpha, visibility, ProbeConfig,
};
use crate::error::{Error, Result};
use crate::fock;

/// Which probe parameter a search ran over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizedVariable {
    Alpha,
    Loss,
}

/// Closed-form optimum next to its independently searched twin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimumReport {
    pub variable: OptimizedVariable,
    pub location_closed_form: f64,
    pub location_numeric: f64,
    pub value_closed_form: f64,
    pub value_numeric: f64,
    /// |location_closed_form - location_numeric|
    pub discrepancy: f64,
}

/// Where a parameter point sits relative to the two benchmarks: the
/// classical bound F = 1 and the single-photon probe at the same settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeLabel {
    NoAdvantage,
    AdvantageOnly,
    Superiority,
}

impl RegimeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeLabel::NoAdvantage => "NoAdvantage",
            RegimeLabel::AdvantageOnly => "AdvantageOnly",
            RegimeLabel::Superiority => "Superiority",
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegimeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "NoAdvantage" => Ok(RegimeLabel::NoAdvantage),
            "AdvantageOnly" => Ok(RegimeLabel::AdvantageOnly),
            "Superiority" => Ok(RegimeLabel::Superiority),
            other => Err(Error::UnknownRegime(other.to_string())),
        }
    }
}

/// Bisected threshold next to its closed form, when one exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub n_photons: u32,
    pub loss_numeric: f64,
    pub loss_closed_form: Option<f64>,
    pub discrepancy: Option<f64>,
}

/// Oracle-vs-closed-form agreement at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Largest absolute difference across the coincidence probabilities.
    pub probability_discrepancy: f64,
    /// Absolute difference between the finite-difference and closed-form
    /// Fisher information.
    pub fisher_discrepancy: f64,
}

const BRACKET_TOL: f64 = 1e-10;
const GOLDEN_SHRINK: f64 = 0.381966011250105;

/// Golden-section search for a maximum of a unimodal function, followed by
/// one parabolic refinement. The refinement matters: near the peak the
/// function value is flat to half machine precision, so the raw bracket
/// alone cannot localize the argmax much below 1e-8.
fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let mut a = lo;
    let mut b = hi;
    let mut c = a + GOLDEN_SHRINK * (b - a);
    let mut d = b - GOLDEN_SHRINK * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > BRACKET_TOL {
        if fc < fd {
            a = c;
            c = d;
            fc = fd;
            d = b - GOLDEN_SHRINK * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = a + GOLDEN_SHRINK * (b - a);
            fc = f(c);
        }
    }
    let mut best = 0.5 * (a + b);
    // The step must scale with the location: optima can sit at 1e-7 when
    // heavy loss pushes all the weight into the reference arm, and a fixed
    // step would straddle the whole peak.
    for shrink in [1.0, 0.1] {
        let h = (0.02 * best.abs()).clamp(1e-12, 1e-6) * shrink;
        let (x0, x2) = (best - h, best + h);
        if x0 < lo || x2 > hi {
            break;
        }
        let below = f(x0);
        let at = f(best);
        let above = f(x2);
        let curvature = above - 2.0 * at + below;
        if !(curvature < 0.0) {
            break;
        }
        let vertex = best - h * (above - below) / (2.0 * curvature);
        if !vertex.is_finite() {
            break;
        }
        best = vertex.clamp(lo, hi);
    }
    best
}

fn bisect_root(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    what: &'static str,
) -> Result<f64> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { what, lo, hi });
    }
    while hi - lo > BRACKET_TOL {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_photons(n_photons: u32, minimum: u32) -> Result<()> {
    if n_photons < minimum {
        return Err(Error::Domain {
            name: "n",
            requirement: if minimum == 2 { "n >= 2" } else { "n >= 1" },
            value: n_photons as f64,
        });
    }
    Ok(())
}

/// Search the peak Fisher information over alpha at fixed loss and compare
/// against the closed-form optimum.
pub fn maximize_fisher_over_alpha(loss: f64, n_photons: u32) -> Result<OptimumReport> {
    check_photons(n_photons, 1)?;
    analytic::check_unit_range("loss", loss)?;
    let location_closed_form = optimal_alpha_for_fisher(loss, n_photons);
    let location_numeric =
        golden_section_max(|a| fisher_information_max(n_photons, a, loss), 0.0, 1.0);
    Ok(OptimumReport {
        variable: OptimizedVariable::Alpha,
        location_closed_form,
        location_numeric,
        value_closed_form: fisher_at_optimal_alpha(loss, n_photons),
        value_numeric: fisher_information_max(n_photons, location_numeric, loss),
        discrepancy: (location_closed_form - location_numeric).abs(),
    })
}

/// Search the visibility over alpha at fixed loss. The closed-form value is
/// 1 whenever any fringe survives at all.
pub fn maximize_visibility_over_alpha(loss: f64, n_photons: u32) -> Result<OptimumReport> {
    check_photons(n_photons, 1)?;
    analytic::check_unit_range("loss", loss)?;
    let location_closed_form = optimal_alpha_for_visibility(loss, n_photons);
    let location_numeric = golden_section_max(|a| visibility(a, loss, n_photons), 0.0, 1.0);
    let value_closed_form = if loss < 1.0 { 1.0 } else { 0.0 };
    Ok(OptimumReport {
        variable: OptimizedVariable::Alpha,
        location_closed_form,
        location_numeric,
        value_closed_form,
        value_numeric: visibility(location_numeric, loss, n_photons),
        discrepancy: (location_closed_form - location_numeric).abs(),
    })
}

/// Search the visibility over loss at fixed alpha. For alpha above one half
/// the maximum sits at zero loss; otherwise a compensating interior loss
/// restores full visibility.
pub fn maximize_visibility_over_loss(alpha: f64, n_photons: u32) -> Result<OptimumReport> {
    check_photons(n_photons, 1)?;
    let location_closed_form = optimal_loss_for_visibility(alpha, n_photons)?.unwrap_or(0.0);
    let location_numeric = golden_section_max(|p| visibility(alpha, p, n_photons), 0.0, 1.0);
    let value_closed_form = if alpha <= 0.5 {
        1.0
    } else {
        visibility(alpha, 0.0, n_photons)
    };
    Ok(OptimumReport {
        variable: OptimizedVariable::Loss,
        location_closed_form,
        location_numeric,
        value_closed_form,
        value_numeric: visibility(alpha, location_numeric, n_photons),
        discrepancy: (location_closed_form - location_numeric).abs(),
    })
}

/// Bisect the loss at which the optimally entangled probe drops to the
/// classical benchmark F = 1.
pub fn find_superiority_threshold(n_photons: u32) -> Result<ThresholdReport> {
    check_photons(n_photons, 2)?;
    let loss_numeric = bisect_root(
        |p| fisher_at_optimal_alpha(p, n_photons) - 1.0,
        0.0,
        1.0 - 1e-12,
        "the superiority threshold",
    )?;
    let closed = superiority_loss_bound_optimal_alpha(n_photons);
    Ok(ThresholdReport {
        n_photons,
        loss_numeric,
        loss_closed_form: Some(closed),
        discrepancy: Some((loss_numeric - closed).abs()),
    })
}

/// Bisect the loss at which the optimally entangled N-photon probe stops
/// beating the optimally entangled single-photon one. A closed form is
/// known for N = 2 only.
pub fn find_advantage_threshold(n_photons: u32) -> Result<ThresholdReport> {
    check_photons(n_photons, 2)?;
    let loss_numeric = bisect_root(
        |p| advantage_ratio_optimal_alpha(p, n_photons).expect("loss stays below 1") - 1.0,
        0.0,
        1.0 - 1e-12,
        "the advantage threshold",
    )?;
    let loss_closed_form =
        (n_photons == 2).then(advantage_loss_threshold_two_photon);
    Ok(ThresholdReport {
        n_photons,
        loss_numeric,
        loss_closed_form,
        discrepancy: loss_closed_form.map(|c| (loss_numeric - c).abs()),
    })
}

/// Label a parameter point. Boundary cases fall on the non-advantaged side:
/// a probe exactly at F = 1 or exactly matching the single-photon probe has
/// not demonstrated anything.
pub fn classify_regime(alpha: f64, loss: f64, n_photons: u32) -> Result<RegimeLabel> {
    check_photons(n_photons, 2)?;
    analytic::reject_degenerate_alpha(alpha)?;
    analytic::reject_full_loss(loss)?;
    if fisher_information_max(n_photons, alpha, loss) > 1.0 {
        return Ok(RegimeLabel::Superiority);
    }
    if advantage_ratio(alpha, loss, n_photons)? > 1.0 {
        return Ok(RegimeLabel::AdvantageOnly);
    }
    Ok(RegimeLabel::NoAdvantage)
}

/// Run the simulator at one operating point and report how far it lands
/// from the closed forms.
pub fn verify_point(cfg: &ProbeConfig) -> Result<VerifyReport> {
    let simulated = fock::simulate(cfg)?;
    let closed = coincidence_distribution(cfg);
    let probability_discrepancy = simulated
        .probabilities
        .iter()
        .zip(&closed.probabilities)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let fd = fock::fisher_information_fd(cfg, fock::DEFAULT_FD_STEP)?;
    let fisher_discrepancy = (fd - fisher_information(cfg)).abs();
    Ok(VerifyReport {
        probability_discrepancy,
        fisher_discrepancy,
    })
}
