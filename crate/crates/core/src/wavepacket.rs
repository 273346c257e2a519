//! Gaussian single-photon wavepackets and the overlap between the packet a
//! ground station sends and the packet a shifted receiver sees.
//!
//! Frequencies are dimensionless: the peak is measured in units of
//! `freq_unit` (500 THz by default) and the width in units of `bw_unit`
//! (1 MHz). Only the ratio `r = Omega_0 / sigma` enters the overlap.
//!
//! The received packet is the unitary dilation of the sent one,
//! `F_B(w) = (1 + d)^(-1/2) F_A(w / (1 + d))`, so the whole-line overlap is
//!
//! ```text
//! Theta = sqrt(2 (1 + d) / D) * exp(-d^2 r^2 / (4 D)),   D = 1 + (1 + d)^2
//! ```
//!
//! which is symmetric under `d -> 1/(1 + d) - 1` and never exceeds one.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::quadrature;

pub const DEFAULT_FREQ_UNIT_HZ: f64 = 5e14;
pub const DEFAULT_BW_UNIT_HZ: f64 = 1e6;

/// Window half-width of the quadrature in effective standard deviations.
const WINDOW_SIGMAS: f64 = 12.0;
const QUAD_TOL: f64 = 1e-13;
const QUAD_MAX_SEGMENTS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWavepacket {
    pub omega_peak: f64,
    pub bandwidth: f64,
    pub freq_unit: f64,
    pub bw_unit: f64,
}

impl GaussianWavepacket {
    pub fn new(omega_peak: f64, bandwidth: f64) -> Result<Self> {
        Self::with_units(
            omega_peak,
            bandwidth,
            DEFAULT_FREQ_UNIT_HZ,
            DEFAULT_BW_UNIT_HZ,
        )
    }

    pub fn with_units(
        omega_peak: f64,
        bandwidth: f64,
        freq_unit: f64,
        bw_unit: f64,
    ) -> Result<Self> {
        for (what, v) in [
            ("peak frequency must be positive", omega_peak),
            ("bandwidth must be positive", bandwidth),
            ("frequency unit must be positive", freq_unit),
            ("bandwidth unit must be positive", bw_unit),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(what, v));
            }
        }
        Ok(Self {
            omega_peak,
            bandwidth,
            freq_unit,
            bw_unit,
        })
    }

    /// `Omega_0 / sigma` in physical units.
    pub fn peak_over_width(&self) -> f64 {
        (self.omega_peak * self.freq_unit) / (self.bandwidth * self.bw_unit)
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !delta.is_finite() || delta <= -1.0 {
        return Err(Error::domain("shift parameter must exceed -1", delta));
    }
    Ok(())
}

/// `ln Theta`, accurate for tiny shifts.
pub fn ln_overlap(wp: &GaussianWavepacket, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let r = wp.peak_over_width();
    let d2 = delta * delta;
    let denom = 1.0 + (1.0 + delta) * (1.0 + delta);
    // 2(1 + d) / D = 1 - d^2 / D
    Ok(0.5 * (-d2 / denom).ln_1p() - d2 * r * r / (4.0 * denom))
}

pub fn overlap_closed_form(wp: &GaussianWavepacket, delta: f64) -> Result<f64> {
    Ok(ln_overlap(wp, delta)?.exp())
}

/// `1 - Theta` without forming `Theta` first.
pub fn one_minus_theta(wp: &GaussianWavepacket, delta: f64) -> Result<f64> {
    Ok(-ln_overlap(wp, delta)?.exp_m1())
}

/// `1 - d^2 r^2 / 8`. Meaningful only where [`second_order_valid`] holds.
pub fn overlap_second_order(wp: &GaussianWavepacket, delta: f64) -> f64 {
    let x = delta * wp.peak_over_width();
    1.0 - x * x / 8.0
}

/// `d^2 r^2 < 0.05`, i.e. the shifted peak stays well inside the packet.
pub fn second_order_valid(wp: &GaussianWavepacket, delta: f64) -> bool {
    let x = delta * wp.peak_over_width();
    x * x < 0.05
}

/// Centre (in `x = w / sigma`) and width of the product of the two packets.
fn product_shape(r: f64, delta: f64) -> (f64, f64) {
    let q = 1.0 / (1.0 + delta);
    let q2p1 = q * q + 1.0;
    (r * (q + 1.0) / q2p1, SQRT_2 / q2p1.sqrt())
}

/// Overlap integrated over positive frequencies only.
///
/// Independent of the closed form: the integrand is the product of the two
/// packets evaluated pointwise, written in `u = (w - Omega_0) / sigma` to
/// keep digits when `Omega_0 / sigma` is huge.
pub fn overlap_quadrature(wp: &GaussianWavepacket, delta: f64) -> Result<f64> {
    Ok(overlap_quadrature_detailed(wp, delta)?.value)
}

pub fn overlap_quadrature_detailed(
    wp: &GaussianWavepacket,
    delta: f64,
) -> Result<quadrature::QuadResult> {
    check_delta(delta)?;
    let r = wp.peak_over_width();
    let stretch = 1.0 + delta;
    let norm = 1.0 / (2.0 * PI * stretch).sqrt();
    let integrand = |u: f64| {
        let sent = u;
        let received = (u - r * delta) / stretch;
        norm * (-0.25 * (sent * sent + received * received)).exp()
    };
    let (centre_x, width) = product_shape(r, delta);
    let centre_u = centre_x - r;
    let lo = (centre_u - WINDOW_SIGMAS * width).max(-r);
    let hi = centre_u + WINDOW_SIGMAS * width;
    if hi <= lo {
        return Ok(quadrature::QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    quadrature::integrate(integrand, lo, hi, QUAD_TOL, QUAD_MAX_SEGMENTS)
}

/// Part of the whole-line overlap that sits at negative frequencies; the
/// closed form minus this equals the positive-frequency overlap.
pub fn negative_frequency_mass(wp: &GaussianWavepacket, delta: f64) -> Result<f64> {
    let theta = overlap_closed_form(wp, delta)?;
    let (centre, width) = product_shape(wp.peak_over_width(), delta);
    Ok(theta * 0.5 * libm::erfc(centre / (width * SQRT_2)))
}

/// `F = Theta^2`.
pub fn fidelity(theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::domain("overlap must lie in [0, 1]", theta));
    }
    Ok(theta * theta)
}
