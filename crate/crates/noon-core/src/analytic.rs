//! Closed-form fringe and sensitivity expressions for a partially entangled
//! N-photon probe in a lossy two-arm interferometer.
//!
//! The input state puts all N photons in the reference arm with weight
//! sqrt(alpha) and all N photons in the phase-sensing arm with weight
//! sqrt(1 - alpha). The sensing arm accumulates a phase `phi` per photon and
//! loses each photon independently with probability `loss`. The arms then
//! recombine on a balanced splitter and N-fold coincidences are counted
//! across the two output ports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Operating point of the interferometer.
///
/// Construction validates every range, so downstream code can assume
/// `n_photons >= 1`, `alpha` and `loss` in [0, 1], and a finite phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    n_photons: u32,
    alpha: f64,
    loss: f64,
    phase: f64,
}

impl ProbeConfig {
    pub fn new(n_photons: u32, alpha: f64, loss: f64, phase: f64) -> Result<Self> {
        if n_photons < 1 {
            return Err(Error::Domain {
                name: "n",
                requirement: "n >= 1",
                value: n_photons as f64,
            });
        }
        check_unit_range("alpha", alpha)?;
        check_unit_range("loss", loss)?;
        if !phase.is_finite() {
            return Err(Error::Domain {
                name: "phase",
                requirement: "a finite value",
                value: phase,
            });
        }
        Ok(Self {
            n_photons,
            alpha,
            loss,
            phase,
        })
    }

    #[inline]
    pub fn n_photons(&self) -> u32 {
        self.n_photons
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn loss(&self) -> f64 {
        self.loss
    }

    #[inline]
    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Same operating point at a different phase. Handy for fringe sweeps
    /// and finite differencing.
    pub fn with_phase(&self, phase: f64) -> Self {
        Self { phase, ..*self }
    }
}

pub(crate) fn check_unit_range(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// Weights of the two interfering N-photon amplitudes after recombination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoonCoefficients {
    /// Weight of the branch that traversed the reference arm.
    pub reference: f64,
    /// Attenuated weight of the branch that traversed the lossy sensing arm.
    pub lossy: f64,
}

/// Overall amplitude and visibility of the N-fold coincidence fringe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeDescriptor {
    pub amplitude: f64,
    pub visibility: f64,
}

/// N-fold coincidence probabilities indexed by the photon count in output
/// port a. Entries need not sum to 1 under loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceDistribution {
    pub n_photons: u32,
    pub probabilities: Vec<f64>,
}

impl CoincidenceDistribution {
    /// Total N-fold coincidence probability, i.e. the chance no photon
    /// was lost or that loss struck the arm holding zero photons.
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

#[inline]
fn survival(loss: f64, n_photons: u32) -> f64 {
    (1.0 - loss).powi(n_photons as i32)
}

#[inline]
fn half_survival(loss: f64, n_photons: u32) -> f64 {
    (1.0 - loss).powf(n_photons as f64 * 0.5)
}

/// Total surviving N-fold coincidence weight alpha + (1-alpha)(1-loss)^N.
#[inline]
fn surviving_weight(alpha: f64, loss: f64, n_photons: u32) -> f64 {
    alpha + (1.0 - alpha) * survival(loss, n_photons)
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

pub fn noon_coefficients(cfg: &ProbeConfig) -> NoonCoefficients {
    let scale = 2f64.powi(cfg.n_photons as i32).sqrt();
    NoonCoefficients {
        reference: cfg.alpha.sqrt() / scale,
        lossy: (1.0 - cfg.alpha).sqrt() * half_survival(cfg.loss, cfg.n_photons) / scale,
    }
}

pub fn fringe_descriptor(cfg: &ProbeConfig) -> FringeDescriptor {
    let c = noon_coefficients(cfg);
    let amplitude = c.reference * c.reference + c.lossy * c.lossy;
    let visibility = if amplitude == 0.0 {
        0.0
    } else {
        // Rounding can push the ratio one ulp past 1 at the compensation
        // point; clamp to keep visibility a visibility.
        (2.0 * c.reference * c.lossy / amplitude).min(1.0)
    };
    FringeDescriptor {
        amplitude,
        visibility,
    }
}

/// Fringe visibility 2 sqrt(alpha(1-alpha)) (1-loss)^(N/2) / (alpha + (1-alpha)(1-loss)^N).
///
/// Equals 1 when the entanglement weight exactly compensates the loss
/// imbalance, and 0 at the degenerate points alpha in {0,1} or loss = 1.
pub fn visibility(alpha: f64, loss: f64, n_photons: u32) -> f64 {
    let weight = surviving_weight(alpha, loss, n_photons);
    if weight == 0.0 {
        return 0.0;
    }
    let v = 2.0 * (alpha * (1.0 - alpha)).sqrt() * half_survival(loss, n_photons) / weight;
    v.min(1.0)
}

/// Entanglement weight that restores full fringe visibility at a given loss.
pub fn optimal_alpha_for_visibility(loss: f64, n_photons: u32) -> f64 {
    let x = survival(loss, n_photons);
    x / (1.0 + x)
}

/// Loss at which the fringe visibility peaks for a fixed entanglement weight.
///
/// Returns `Ok(None)` when alpha > 1/2: visibility then decreases
/// monotonically with loss and there is no interior optimum.
pub fn optimal_loss_for_visibility(alpha: f64, n_photons: u32) -> Result<Option<f64>> {
    reject_degenerate_alpha(alpha)?;
    if alpha > 0.5 {
        return Ok(None);
    }
    Ok(Some(
        1.0 - (alpha / (1.0 - alpha)).powf(1.0 / n_photons as f64),
    ))
}

/// Phase-resolved Fisher information of the coincidence distribution,
/// normalized per photon.
///
/// Evaluated in the cancellation-free form
/// N S V^2 sin^2(N phi) / ((1 - V^2) + V^2 sin^2(N phi))
/// with S the total surviving weight; the 0/0 at unit visibility and
/// sin(N phi) = 0 resolves to the flat-fringe value N S.
pub fn fisher_information(cfg: &ProbeConfig) -> f64 {
    let n = cfg.n_photons as f64;
    let weight = surviving_weight(cfg.alpha, cfg.loss, cfg.n_photons);
    let v = visibility(cfg.alpha, cfg.loss, cfg.n_photons);
    let s = (n * cfg.phase).sin();
    let numerator = n * weight * v * v * s * s;
    let denominator = (1.0 - v * v) + v * v * s * s;
    if denominator == 0.0 {
        return n * weight;
    }
    numerator / denominator
}

/// Peak Fisher information, attained at the fringe quadrature sin(N phi) = 1:
/// 4N alpha(1-alpha)(1-loss)^N / (alpha + (1-alpha)(1-loss)^N).
pub fn fisher_information_max(n_photons: u32, alpha: f64, loss: f64) -> f64 {
    let weight = surviving_weight(alpha, loss, n_photons);
    if weight == 0.0 {
        return 0.0;
    }
    4.0 * n_photons as f64 * (alpha - alpha * alpha) * survival(loss, n_photons) / weight
}

/// Slope of the peak Fisher information with respect to loss. Strictly
/// negative on the interior, so the best operating loss is always 0.
pub fn fisher_loss_derivative(n_photons: u32, alpha: f64, loss: f64) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let n = n_photons as f64;
    let weight = surviving_weight(alpha, loss, n_photons);
    -4.0 * n * n * alpha * alpha * (1.0 - alpha) * (1.0 - loss).powi(n_photons as i32 - 1)
        / (weight * weight)
}

/// Slope of the peak Fisher information with respect to alpha:
/// 4N(1-loss)^N ((1-alpha)^2 (1-loss)^N - alpha^2) / ((1-alpha)(1-loss)^N + alpha)^2.
pub fn fisher_alpha_derivative(n_photons: u32, alpha: f64, loss: f64) -> f64 {
    let x = survival(loss, n_photons);
    let denom = (1.0 - alpha) * x + alpha;
    if denom == 0.0 {
        return 0.0;
    }
    let shifted = (1.0 - alpha) * (1.0 - alpha) * x - alpha * alpha;
    4.0 * n_photons as f64 * x * shifted / (denom * denom)
}

/// Entanglement weight maximizing the peak Fisher information:
/// (1-loss)^(N/2) / (1 + (1-loss)^(N/2)). Leans toward the reference arm
/// as loss grows, trading visibility for surviving signal.
pub fn optimal_alpha_for_fisher(loss: f64, n_photons: u32) -> f64 {
    let s = half_survival(loss, n_photons);
    s / (1.0 + s)
}

/// Peak Fisher information at the optimal entanglement weight:
/// 4N(1-loss)^N / (1 + (1-loss)^(N/2))^2.
pub fn fisher_at_optimal_alpha(loss: f64, n_photons: u32) -> f64 {
    let s = half_survival(loss, n_photons);
    4.0 * n_photons as f64 * survival(loss, n_photons) / ((1.0 + s) * (1.0 + s))
}

pub(crate) fn reject_degenerate_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain {
            name: "alpha",
            requirement: "0 < alpha < 1",
            value: alpha,
        });
    }
    Ok(())
}

pub(crate) fn reject_full_loss(loss: f64) -> Result<()> {
    if !(0.0..1.0).contains(&loss) {
        return Err(Error::Domain {
            name: "loss",
            requirement: "0 <= loss < 1",
            value: loss,
        });
    }
    Ok(())
}

/// Largest loss at which the N-photon probe still beats the classical
/// benchmark F = 1, for a fixed entanglement weight.
///
/// Returns `Ok(None)` when no loss value achieves it (4 alpha N <= 1, or the
/// bound lands at or below zero).
pub fn superiority_loss_bound(alpha: f64, n_photons: u32) -> Result<Option<f64>> {
    reject_degenerate_alpha(alpha)?;
    let gain = 4.0 * alpha * n_photons as f64 - 1.0;
    if gain <= 0.0 {
        return Ok(None);
    }
    let bracket = alpha / ((1.0 - alpha) * gain);
    if bracket >= 1.0 {
        return Ok(None);
    }
    Ok(Some(1.0 - bracket.powf(1.0 / n_photons as f64)))
}

/// Ratio of the N-photon peak Fisher information to the single-photon one at
/// the same alpha and loss:
/// N (1-loss)^(N-1) (1 + loss(alpha - 1)) / (alpha + (1-alpha)(1-loss)^N).
pub fn advantage_ratio(alpha: f64, loss: f64, n_photons: u32) -> Result<f64> {
    reject_degenerate_alpha(alpha)?;
    reject_full_loss(loss)?;
    let n = n_photons as f64;
    Ok(n * (1.0 - loss).powi(n_photons as i32 - 1) * (1.0 + loss * (alpha - 1.0))
        / surviving_weight(alpha, loss, n_photons))
}

/// Lossless alpha window where the N-photon probe beats F = 1:
/// 1/2 +- sqrt(N^2 - N) / (2N). Empty for N = 1, where the peak Fisher
/// information never exceeds the benchmark.
pub fn superiority_alpha_interval_lossless(n_photons: u32) -> Option<(f64, f64)> {
    if n_photons < 2 {
        return None;
    }
    let n = n_photons as f64;
    let half_width = (n * n - n).sqrt() / (2.0 * n);
    Some((0.5 - half_width, 0.5 + half_width))
}

/// Loss threshold below which the optimally entangled N-photon probe beats
/// F = 1: 1 - ((1 + 2 sqrt(N)) / (4N - 1))^(2/N). Decreases with N.
pub fn superiority_loss_bound_optimal_alpha(n_photons: u32) -> f64 {
    let n = n_photons as f64;
    1.0 - ((1.0 + 2.0 * n.sqrt()) / (4.0 * n - 1.0)).powf(2.0 / n)
}

/// Advantage of the N-photon probe over the single-photon probe when each
/// runs at its own optimal entanglement weight:
/// N (1 + sqrt(1-loss))^2 (1-loss)^(N-1) / (1 + (1-loss)^(N/2))^2.
pub fn advantage_ratio_optimal_alpha(loss: f64, n_photons: u32) -> Result<f64> {
    reject_full_loss(loss)?;
    let n = n_photons as f64;
    let root = (1.0 - loss).sqrt();
    let s = half_survival(loss, n_photons);
    Ok(n * (1.0 + root) * (1.0 + root) * (1.0 - loss).powi(n_photons as i32 - 1)
        / ((1.0 + s) * (1.0 + s)))
}

/// Exact loss where a two-photon probe at its best entanglement stops beating
/// the best single-photon probe: sqrt(31 + 22 sqrt(2)) - 3(1 + sqrt(2)),
/// about 0.64.
pub fn advantage_loss_threshold_two_photon() -> f64 {
    let sqrt2 = 2f64.sqrt();
    (31.0 + 22.0 * sqrt2).sqrt() - 3.0 * (1.0 + sqrt2)
}

/// The visibility-optimal alpha at (loss, N) coincides with the
/// Fisher-optimal alpha at (loss, 2N). Returns the pair (they agree).
pub fn duality_alpha(loss: f64, n_photons: u32) -> (f64, f64) {
    (
        optimal_alpha_for_visibility(loss, n_photons),
        optimal_alpha_for_fisher(loss, 2 * n_photons),
    )
}

/// Probability of registering `photons_in_a` photons in port a (and the rest
/// in port b) in an N-fold coincidence.
pub fn detection_probability(cfg: &ProbeConfig, photons_in_a: u32) -> Result<f64> {
    if photons_in_a > cfg.n_photons {
        return Err(Error::PortOutOfRange {
            port: photons_in_a,
            n_photons: cfg.n_photons,
        });
    }
    let desc = fringe_descriptor(cfg);
    let cos_nphi = (cfg.n_photons as f64 * cfg.phase).cos();
    Ok(port_probability(&desc, cfg.n_photons, photons_in_a, cos_nphi))
}

#[inline]
fn port_probability(desc: &FringeDescriptor, n_photons: u32, port: u32, cos_nphi: f64) -> f64 {
    let sign = if (n_photons - port) % 2 == 0 { 1.0 } else { -1.0 };
    let p = binomial(n_photons, port) * desc.amplitude * (1.0 + sign * desc.visibility * cos_nphi);
    p.max(0.0)
}

/// All N+1 coincidence probabilities at once. Adjacent ports oscillate in
/// antiphase; the entries sum to the surviving weight, not to 1.
pub fn coincidence_distribution(cfg: &ProbeConfig) -> CoincidenceDistribution {
    let desc = fringe_descriptor(cfg);
    let cos_nphi = (cfg.n_photons as f64 * cfg.phase).cos();
    let probabilities = (0..=cfg.n_photons)
        .map(|port| port_probability(&desc, cfg.n_photons, port, cos_nphi))
        .collect();
    CoincidenceDistribution {
        n_photons: cfg.n_photons,
        probabilities,
    }
}
