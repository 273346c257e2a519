//! Wavepacket mismatch as a beam-splitter loss, and the end-to-end pipeline
//! from orbit height to output coherence.
//!
//! Each photon of the squeezed pair meets its own vacuum ancilla on a beam
//! splitter of transmissivity `Theta_i^2`. The full transformation acts on
//! `(b1, b2, b1_perp, b2_perp)`, each with `(x, p)` quadratures.

use nalgebra::{Matrix4, SMatrix};

use crate::error::{Error, Result, Stage};
use crate::gaussian::{self, CovarianceMatrix2Mode, Displacement, OccupationConvention};
use crate::spacetime::{self, BodyModel, DeltaMode, ShiftWarning};
use crate::wavepacket::{self, GaussianWavepacket};

pub type Matrix8 = SMatrix<f64, 8, 8>;

/// Mode overlaps of the ground-bound and satellite-bound photons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossyChannelPair {
    theta1: f64,
    theta2: f64,
}

impl LossyChannelPair {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        for (what, v) in [
            ("overlap theta1 must lie in [0, 1]", theta1),
            ("overlap theta2 must lie in [0, 1]", theta2),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::domain(what, v));
            }
        }
        Ok(Self { theta1, theta2 })
    }

    /// Only the satellite photon is degraded.
    pub fn satellite_only(theta2: f64) -> Result<Self> {
        Self::new(1.0, theta2)
    }

    pub fn lossless() -> Self {
        Self {
            theta1: 1.0,
            theta2: 1.0,
        }
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }
}

impl Default for LossyChannelPair {
    fn default() -> Self {
        Self::lossless()
    }
}

/// `1 - t^2`, exact when `t` is close to one.
fn loss(t: f64) -> f64 {
    (1.0 - t) * (1.0 + t)
}

/// Orthogonal symplectic map of both beam splitters.
pub fn build_symplectic(ch: &LossyChannelPair) -> Matrix8 {
    let mut s = Matrix8::zeros();
    for (mode, t) in [(0, ch.theta1), (1, ch.theta2)] {
        let r = loss(t).sqrt();
        let sys = 2 * mode;
        let anc = 4 + 2 * mode;
        for q in 0..2 {
            s[(sys + q, sys + q)] = t;
            s[(sys + q, anc + q)] = r;
            s[(anc + q, sys + q)] = r;
            s[(anc + q, anc + q)] = -t;
        }
    }
    s
}

/// Output state of the two photons in closed form.
pub fn apply_channel(s: f64, ch: &LossyChannelPair) -> Result<CovarianceMatrix2Mode> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::domain(
            "squeezing must be finite and non-negative",
            s,
        ));
    }
    let (t1, t2) = (ch.theta1, ch.theta2);
    let sh2 = s.sinh().powi(2);
    let a = 1.0 + 2.0 * sh2 * t1 * t1;
    let b = 1.0 + 2.0 * sh2 * t2 * t2;
    let c = (2.0 * s).sinh() * t1 * t2;
    // ab - c^2 with cosh^2 - sinh^2 = 1 already used
    let det = 1.0 + 2.0 * sh2 * (t1 * t1 * loss(t2) + t2 * t2 * loss(t1));
    CovarianceMatrix2Mode::with_block_determinants(a, b, c, c, det, det)
}

/// Reduced covariance matrix of `(b1, b2)` after `S (sigma_TMSS + I_4) S^T`.
pub fn channel_output_matrix(s: f64, ch: &LossyChannelPair) -> Result<Matrix4<f64>> {
    let input = gaussian::two_mode_squeezed_cm(s)?.to_matrix();
    let mut full = Matrix8::identity();
    full.fixed_view_mut::<4, 4>(0, 0).copy_from(&input);
    let sym = build_symplectic(ch);
    let out = sym * full * sym.transpose();
    Ok(out.fixed_view::<4, 4>(0, 0).into_owned())
}

/// Same state as [`apply_channel`], obtained by the matrix product.
pub fn apply_channel_symplectic(s: f64, ch: &LossyChannelPair) -> Result<CovarianceMatrix2Mode> {
    CovarianceMatrix2Mode::from_matrix(&channel_output_matrix(s, ch)?, 1e-12)
}

/// How the ground photon's overlap is chosen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Theta1Policy {
    /// The ground photon is unaffected.
    #[default]
    Unit,
    /// The ground photon carries the overlap of a link at zero height.
    MatchedAtSurface,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PipelineOptions {
    pub delta_mode: DeltaMode,
    pub nbar_convention: OccupationConvention,
    pub theta1_policy: Theta1Policy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineOutput {
    pub delta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub cm: CovarianceMatrix2Mode,
    pub coherence: f64,
    pub warning: Option<ShiftWarning>,
}

/// Coherence between the ground and satellite photons at orbit height `h`.
pub fn propagated_coherence(
    body: &BodyModel,
    wp: &GaussianWavepacket,
    s: f64,
    h: f64,
    opts: &PipelineOptions,
) -> Result<PipelineOutput> {
    let shift = spacetime::delta(body, h, opts.delta_mode).map_err(|e| e.at(Stage::Shift))?;
    let theta2 =
        wavepacket::overlap_closed_form(wp, shift.delta).map_err(|e| e.at(Stage::Overlap))?;
    let theta1 = match opts.theta1_policy {
        Theta1Policy::Unit => 1.0,
        Theta1Policy::MatchedAtSurface => {
            let d0 =
                spacetime::delta(body, 0.0, opts.delta_mode).map_err(|e| e.at(Stage::Shift))?;
            wavepacket::overlap_closed_form(wp, d0.delta).map_err(|e| e.at(Stage::Overlap))?
        }
    };
    let ch = LossyChannelPair::new(theta1, theta2).map_err(|e| e.at(Stage::Channel))?;
    let cm = apply_channel(s, &ch).map_err(|e| e.at(Stage::Channel))?;
    let coherence =
        gaussian::gaussian_coherence(&cm, &Displacement::default(), opts.nbar_convention)
            .map_err(|e| e.at(Stage::Coherence))?;
    Ok(PipelineOutput {
        delta: shift.delta,
        theta1,
        theta2,
        cm,
        coherence,
        warning: shift.warning,
    })
}
