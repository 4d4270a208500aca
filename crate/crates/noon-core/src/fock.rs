//! Small Fock-space simulator used as an independent check on the closed
//! forms.
//!
//! Three modes: the two interferometer arms plus one environment mode that
//! the sensing arm leaks into through a beamsplitter dilation, so loss stays
//! unitary at the state level. Everything is sparse over number states; for
//! an N-photon input at most (N+1)(N+2)/2 basis states ever appear.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::analytic::{CoincidenceDistribution, ProbeConfig};
use crate::error::{Error, Result};

pub const MODE_A: usize = 0;
pub const MODE_B: usize = 1;
pub const MODE_ENV: usize = 2;
pub const MODE_COUNT: usize = 3;

/// Photon numbers above this make the dense splitter expansion slow enough
/// that asking for them is almost certainly a mistake.
pub const DEFAULT_PHOTON_CAP: u32 = 12;

pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Occupation numbers for the three modes, in `MODE_A`, `MODE_B`,
/// `MODE_ENV` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockBasisState(pub [u32; MODE_COUNT]);

impl FockBasisState {
    #[inline]
    pub fn occupation(&self, mode: usize) -> u32 {
        self.0[mode]
    }

    #[inline]
    pub fn total_photons(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Sparse pure state over the three-mode number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: BTreeMap<FockBasisState, Complex64>,
}

impl PureState {
    pub fn from_amplitudes(
        entries: impl IntoIterator<Item = (FockBasisState, Complex64)>,
    ) -> Self {
        let mut amplitudes = BTreeMap::new();
        for (state, z) in entries {
            if z.norm_sqr() > 0.0 {
                *amplitudes.entry(state).or_insert(Complex64::new(0.0, 0.0)) += z;
            }
        }
        Self { amplitudes }
    }

    pub fn amplitude(&self, state: FockBasisState) -> Complex64 {
        self.amplitudes
            .get(&state)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.values().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockBasisState, &Complex64)> {
        self.amplitudes.iter()
    }

    /// Largest absolute difference between matching amplitudes, scanning the
    /// union of both supports.
    pub fn max_amplitude_diff(&self, other: &PureState) -> f64 {
        let mut worst = 0.0f64;
        for (&state, &z) in &self.amplitudes {
            worst = worst.max((z - other.amplitude(state)).norm());
        }
        for (&state, &z) in &other.amplitudes {
            if !self.amplitudes.contains_key(&state) {
                worst = worst.max(z.norm());
            }
        }
        worst
    }

    pub fn apply(&self, transform: &ModeTransform) -> PureState {
        let mut out: BTreeMap<FockBasisState, Complex64> = BTreeMap::new();
        match transform {
            ModeTransform::Phase { mode, radians } => {
                for (&state, &z) in &self.amplitudes {
                    let angle = state.0[*mode] as f64 * radians;
                    out.insert(state, z * Complex64::from_polar(1.0, angle));
                }
            }
            ModeTransform::Pair { modes, matrix } => {
                let [m1, m2] = *modes;
                for (&state, &z) in &self.amplitudes {
                    let n1 = state.0[m1];
                    let n2 = state.0[m2];
                    for k in 0..=n1 {
                        for l in 0..=n2 {
                            let weight = binomial(n1, k)
                                * binomial(n2, l)
                                * amplitude_rescale(k + l, n1 + n2 - k - l, n1, n2);
                            let term = z
                                * matrix[0][0].powu(k)
                                * matrix[0][1].powu(n1 - k)
                                * matrix[1][0].powu(l)
                                * matrix[1][1].powu(n2 - l)
                                * weight;
                            if term.norm_sqr() == 0.0 {
                                continue;
                            }
                            let mut occ = state.0;
                            occ[m1] = k + l;
                            occ[m2] = n1 + n2 - k - l;
                            *out.entry(FockBasisState(occ))
                                .or_insert(Complex64::new(0.0, 0.0)) += term;
                        }
                    }
                }
                out.retain(|_, z| z.norm_sqr() > 0.0);
            }
        }
        PureState { amplitudes: out }
    }
}

/// One linear-optics layer acting on creation operators.
#[derive(Debug, Clone, PartialEq)]
pub enum ModeTransform {
    /// Each photon in `mode` picks up `radians` of phase.
    Phase { mode: usize, radians: f64 },
    /// Two-mode mixing: the creation operator of `modes[i]` maps to
    /// `matrix[i][0]`, `matrix[i][1]` times the two new ones.
    Pair {
        modes: [usize; 2],
        matrix: [[Complex64; 2]; 2],
    },
}

impl ModeTransform {
    pub fn phase(mode: usize, radians: f64) -> Self {
        assert!(mode < MODE_COUNT, "mode index {mode} out of range");
        ModeTransform::Phase { mode, radians }
    }

    pub fn pair(modes: [usize; 2], matrix: [[Complex64; 2]; 2]) -> Result<Self> {
        assert!(
            modes[0] < MODE_COUNT && modes[1] < MODE_COUNT && modes[0] != modes[1],
            "mode pair {modes:?} out of range"
        );
        let deviation = unitarity_deviation(&matrix);
        if deviation > 1e-12 {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(ModeTransform::Pair { modes, matrix })
    }
}

fn unitarity_deviation(matrix: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut dot = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                dot += matrix[i][k] * matrix[j][k].conj();
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// sqrt(a! b! / (n1! n2!)), the bosonic normalization picked up when n1 + n2
/// photons are redistributed as a + b.
fn amplitude_rescale(a: u32, b: u32, n1: u32, n2: u32) -> f64 {
    (factorial(a) * factorial(b) / (factorial(n1) * factorial(n2))).sqrt()
}

/// Dilated loss on the sensing arm: a photon stays with amplitude
/// sqrt(1 - loss) and leaks into the environment with amplitude sqrt(loss).
pub fn loss_transform(loss: f64) -> ModeTransform {
    assert!(
        (0.0..=1.0).contains(&loss),
        "loss {loss} outside [0, 1]"
    );
    let stay = (1.0 - loss).sqrt();
    let leak = loss.sqrt();
    let matrix = [
        [Complex64::new(stay, 0.0), Complex64::new(leak, 0.0)],
        [Complex64::new(-leak, 0.0), Complex64::new(stay, 0.0)],
    ];
    ModeTransform::pair([MODE_B, MODE_ENV], matrix).expect("loss dilation is unitary")
}

pub fn balanced_splitter() -> ModeTransform {
    let f = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ModeTransform::pair([MODE_A, MODE_B], [[f, f], [f, -f]])
        .expect("balanced splitter is unitary")
}

/// sqrt(alpha) |N,0,0> + sqrt(1-alpha) |0,N,0>.
pub fn prepare_input(n_photons: u32, alpha: f64) -> Result<PureState> {
    if n_photons < 1 {
        return Err(Error::Domain {
            name: "n",
            requirement: "n >= 1",
            value: n_photons as f64,
        });
    }
    if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(PureState::from_amplitudes([
        (
            FockBasisState([n_photons, 0, 0]),
            Complex64::new(alpha.sqrt(), 0.0),
        ),
        (
            FockBasisState([0, n_photons, 0]),
            Complex64::new((1.0 - alpha).sqrt(), 0.0),
        ),
    ]))
}

/// Full pipeline: prepare, phase the sensing arm, leak into the environment,
/// recombine, then read off the N-fold coincidence amplitudes (environment
/// empty, all N photons at the detectors).
pub fn simulate_with_cap(cfg: &ProbeConfig, cap: u32) -> Result<CoincidenceDistribution> {
    if cfg.n_photons() > cap {
        return Err(Error::PhotonCap {
            got: cfg.n_photons(),
            cap,
        });
    }
    let state = prepare_input(cfg.n_photons(), cfg.alpha())?
        .apply(&ModeTransform::phase(MODE_B, cfg.phase()))
        .apply(&loss_transform(cfg.loss()))
        .apply(&balanced_splitter());
    let n = cfg.n_photons();
    let probabilities = (0..=n)
        .map(|i| state.amplitude(FockBasisState([i, n - i, 0])).norm_sqr())
        .collect();
    Ok(CoincidenceDistribution {
        n_photons: n,
        probabilities,
    })
}

pub fn simulate(cfg: &ProbeConfig) -> Result<CoincidenceDistribution> {
    simulate_with_cap(cfg, DEFAULT_PHOTON_CAP)
}

/// Classical Fisher information of the simulated coincidence distribution,
/// by central differences, normalized per photon. Outcomes with essentially
/// zero probability are skipped.
pub fn fisher_information_fd(cfg: &ProbeConfig, step: f64) -> Result<f64> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Domain {
            name: "step",
            requirement: "a finite positive value",
            value: step,
        });
    }
    let ahead = simulate(&cfg.with_phase(cfg.phase() + step))?;
    let behind = simulate(&cfg.with_phase(cfg.phase() - step))?;
    let center = simulate(cfg)?;
    let mut info = 0.0;
    for (i, &p) in center.probabilities.iter().enumerate() {
        if p < 1e-300 {
            continue;
        }
        let slope = (ahead.probabilities[i] - behind.probabilities[i]) / (2.0 * step);
        info += slope * slope / p;
    }
    Ok(info / cfg.n_photons() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{coincidence_distribution, fisher_information};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn cfg(n: u32, alpha: f64, loss: f64, phase: f64) -> ProbeConfig {
        ProbeConfig::new(n, alpha, loss, phase).unwrap()
    }

    #[test]
    fn pair_rejects_non_unitary_matrix() {
        let bad = [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)],
        ];
        assert!(matches!(
            ModeTransform::pair([MODE_A, MODE_B], bad),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn two_photon_dip_at_zero_phase() {
        let d = simulate(&cfg(2, 0.5, 0.0, 0.0)).unwrap();
        assert!(d.probabilities[1].abs() < 1e-12);
        assert!((d.probabilities[0] - 0.5).abs() < 1e-12);
        assert!((d.probabilities[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn oracle_agrees_with_closed_form_at_spot_points() {
        for point in [
            cfg(2, 0.4, 0.1, FRAC_PI_4),
            cfg(1, 0.7, 0.3, 1.1),
            cfg(3, 0.5, 0.0, PI / 7.0),
            cfg(5, 0.2, 0.6, 2.9),
            cfg(4, 0.0, 0.4, 0.3),
            cfg(4, 1.0, 0.4, 0.3),
        ] {
            let simulated = simulate(&point).unwrap();
            let closed = coincidence_distribution(&point);
            for (i, (a, b)) in simulated
                .probabilities
                .iter()
                .zip(&closed.probabilities)
                .enumerate()
            {
                assert!((a - b).abs() < 1e-12, "{point:?} port {i}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn loss_removes_coincidence_weight() {
        let lossless = simulate(&cfg(3, 0.3, 0.0, 0.8)).unwrap();
        assert!((lossless.total() - 1.0).abs() < 1e-12);

        // Under full loss only the all-in-the-reference-arm branch survives.
        let starved = simulate(&cfg(3, 0.3, 1.0, 0.8)).unwrap();
        assert!((starved.total() - 0.3).abs() < 1e-12);

        let partial = simulate(&cfg(2, 0.4, 0.19, 0.8)).unwrap();
        let expected = 0.4 + 0.6 * 0.81f64.powi(2);
        assert!((partial.total() - expected).abs() < 1e-12);
    }

    #[test]
    fn transforms_preserve_norm_and_photon_number() {
        let mut state = prepare_input(4, 0.35).unwrap();
        for transform in [
            ModeTransform::phase(MODE_B, 1.234),
            loss_transform(0.19),
            balanced_splitter(),
        ] {
            state = state.apply(&transform);
            assert!((state.norm() - 1.0).abs() < 1e-12);
            for (basis, _) in state.iter() {
                assert_eq!(basis.total_photons(), 4);
            }
        }
        // Dimension bound for a fixed total photon number over three modes.
        assert!(state.len() <= 15);
    }

    #[test]
    fn default_cap_rejects_large_probes() {
        let big = cfg(13, 0.5, 0.1, 0.0);
        assert!(matches!(
            simulate(&big),
            Err(Error::PhotonCap { got: 13, cap: 12 })
        ));
        assert!(simulate_with_cap(&big, 13).is_ok());
    }

    #[test]
    fn loss_commutes_with_phase_when_the_leak_also_turns() {
        let phase = 0.77;
        let input = prepare_input(3, 0.35).unwrap();

        let phase_first = input
            .apply(&ModeTransform::phase(MODE_B, phase))
            .apply(&loss_transform(0.4));
        let loss_first_both = input
            .apply(&loss_transform(0.4))
            .apply(&ModeTransform::phase(MODE_B, phase))
            .apply(&ModeTransform::phase(MODE_ENV, phase));
        assert!(phase_first.max_amplitude_diff(&loss_first_both) < 1e-12);

        // Phasing the sensing arm alone after the leak differs only on
        // amplitudes with photons already in the environment, so the
        // coincidence sector cannot tell the orders apart.
        let loss_first_bare = input
            .apply(&loss_transform(0.4))
            .apply(&ModeTransform::phase(MODE_B, phase));
        for (&basis, &z) in phase_first.iter() {
            if basis.occupation(MODE_ENV) == 0 {
                assert!((z - loss_first_bare.amplitude(basis)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn finite_difference_fisher_matches_closed_form() {
        for point in [
            cfg(2, 0.4, 0.1, 0.9),
            cfg(3, 0.5, 0.0, PI / 7.0),
            cfg(5, 0.3, 0.25, 0.31),
        ] {
            let fd = fisher_information_fd(&point, DEFAULT_FD_STEP).unwrap();
            let exact = fisher_information(&point);
            assert!(
                (fd - exact).abs() / exact <= 1e-5,
                "{point:?}: {fd} vs {exact}"
            );
        }
        assert!(fisher_information_fd(&cfg(2, 0.4, 0.1, 0.9), 0.0).is_err());
    }
}
