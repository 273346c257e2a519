//! Frequency shift between a ground station and a satellite on a circular
//! equatorial orbit around a slowly rotating body (Kerr exterior).
//!
//! All lengths are geometric (`G = c = 1`): the mass is `GM/c^2` and the
//! angular velocity `omega/c`, both in metres.
//!
//! Two routes to the shift parameter `delta = sqrt(Omega_B / Omega_A) - 1`:
//!
//! * [`delta_exact`] evaluates the closed-form Kerr ratio in 384-bit
//!   fixed point and only then drops to `f64`, since `ratio - 1` is ~1e-10
//!   for the Earth.
//! * [`delta_perturbative`] uses the leading Schwarzschild, rotation and
//!   higher-order terms, which are cancellation-free in `f64`.
//!
//! The ground observer's clock factor is taken from the equatorial metric
//! for an observer co-rotating at angular velocity `omega`:
//! `1 - (2M/r)(1 - 2 a omega) - (r^2 + a^2 + 2 M a^2 / r) omega^2`.

use crate::error::{Error, Result};
use crate::extended::ExtReal;

/// Sense of the satellite orbit relative to the body's rotation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OrbitDirection {
    #[default]
    CoRotating,
    CounterRotating,
}

impl OrbitDirection {
    pub fn sign(self) -> i64 {
        match self {
            OrbitDirection::CoRotating => 1,
            OrbitDirection::CounterRotating => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Option<Self> {
        match sign {
            1 => Some(OrbitDirection::CoRotating),
            -1 => Some(OrbitDirection::CounterRotating),
            _ => None,
        }
    }
}

/// Gravitating body in geometric units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyModel {
    /// `GM/c^2` in metres.
    pub mass_geom: f64,
    /// Kerr parameter `J/(Mc)` in metres.
    pub kerr_a: f64,
    /// Equatorial angular velocity over `c`, in 1/m.
    pub omega_geom: f64,
    /// Radius of the ground station in metres.
    pub surface_radius: f64,
    pub direction: OrbitDirection,
}

impl BodyModel {
    /// Standard geodetic values for the Earth: mean radius 6371 km,
    /// `GM/c^2 = 4.435 mm`, sidereal rate 7.2921159e-5 rad/s and
    /// `J = 5.86e33 kg m^2/s`.
    pub const fn earth() -> Self {
        Self {
            mass_geom: 4.435e-3,
            kerr_a: 3.28,
            omega_geom: 2.4326e-13,
            surface_radius: 6.371e6,
            direction: OrbitDirection::CoRotating,
        }
    }

    pub fn schwarzschild_radius(&self) -> f64 {
        2.0 * self.mass_geom
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("body mass must be finite and non-negative", self.mass_geom),
            (
                "Kerr parameter must be finite and non-negative",
                self.kerr_a,
            ),
            (
                "angular velocity must be finite and non-negative",
                self.omega_geom,
            ),
        ];
        for (what, v) in fields {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(what, v));
            }
        }
        if !self.surface_radius.is_finite() || self.surface_radius <= 0.0 {
            return Err(Error::domain(
                "surface radius must be positive",
                self.surface_radius,
            ));
        }
        if self.schwarzschild_radius() >= self.surface_radius {
            return Err(Error::domain(
                "surface lies inside the Schwarzschild radius",
                self.schwarzschild_radius(),
            ));
        }
        Ok(())
    }

    /// `(r_A omega)^2 > a omega`: the rotation term dominates the Kerr
    /// coupling, which the perturbative expansion relies on.
    pub fn expansion_condition_holds(&self) -> bool {
        let v = self.surface_radius * self.omega_geom;
        v * v > self.kerr_a * self.omega_geom
    }
}

impl Default for BodyModel {
    fn default() -> Self {
        Self::earth()
    }
}

/// Which formulation of the shift parameter to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum DeltaMode {
    Exact,
    #[default]
    Perturbative,
}

/// Decomposition of the perturbative shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftParts {
    /// First-order Schwarzschild term.
    pub sch: f64,
    /// Lowest-order rotation term.
    pub rot: f64,
    /// Higher-order correction.
    pub higher: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftWarning {
    /// `omega = 0` with `a != 0`: the higher-order term is singular and was
    /// set to zero.
    HigherOrderTermDropped,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftResult {
    /// `Omega_B / Omega_A`.
    pub ratio: f64,
    /// `Omega_B / Omega_A - 1`, carried separately to keep its digits.
    pub ratio_excess: f64,
    pub delta: f64,
    /// Populated by the perturbative route only.
    pub parts: Option<ShiftParts>,
    pub warning: Option<ShiftWarning>,
}

fn ext(v: f64) -> ExtReal {
    ExtReal::from_f64(v)
}

fn check_orbit(body: &BodyModel, r_b: f64) -> Result<()> {
    body.validate()?;
    if !r_b.is_finite() || r_b <= 3.0 * body.mass_geom {
        return Err(Error::domain("orbit radius must exceed 3M", r_b));
    }
    Ok(())
}

/// `1 - 2M/r_A` generalised to a co-rotating observer on the equator.
fn surface_clock_factor(body: &BodyModel) -> Result<ExtReal> {
    let m = ext(body.mass_geom);
    let a = ext(body.kerr_a);
    let w = ext(body.omega_geom);
    let ra = ext(body.surface_radius);
    let one = ExtReal::one();
    let two = ExtReal::from_i64(2);

    let two_m_over_ra = &(&two * &m) / &ra;
    let frame = &one - &(&(&two * &a) * &w);
    let g_phiphi = &(&(&ra * &ra) + &(&a * &a)) + &(&(&(&two * &m) * &(&a * &a)) / &ra);
    let factor = &(&one - &(&two_m_over_ra * &frame)) - &(&g_phiphi * &(&w * &w));
    if !factor.is_positive() {
        return Err(Error::domain(
            "ground observer is not timelike (surface clock factor <= 0)",
            factor.to_f64(),
        ));
    }
    Ok(factor)
}

pub(crate) fn frequency_ratio_kerr_ext(body: &BodyModel, r_b: f64) -> Result<ExtReal> {
    check_orbit(body, r_b)?;
    let m = ext(body.mass_geom);
    let a = ext(body.kerr_a);
    let rb = ext(r_b);
    let one = ExtReal::one();
    let eps = ExtReal::from_i64(body.direction.sign());

    let m_over_rb = &m / &rb;
    let kerr = &(&(&a / &rb) * &m_over_rb.sqrt().expect("M/r_B >= 0")) * &eps;
    let numerator = &one + &kerr;
    let radicand =
        &(&one - &(&ExtReal::from_i64(3) * &m_over_rb)) + &(&ExtReal::from_i64(2) * &kerr);
    if !radicand.is_positive() {
        return Err(Error::domain(
            "no timelike circular orbit at this radius",
            radicand.to_f64(),
        ));
    }
    let surface = surface_clock_factor(body)?;
    let top = &numerator * &surface.sqrt().expect("checked positive");
    Ok(&top / &radicand.sqrt().expect("checked positive"))
}

pub(crate) fn frequency_ratio_schwarzschild_ext(body: &BodyModel, r_b: f64) -> Result<ExtReal> {
    check_orbit(body, r_b)?;
    let m = ext(body.mass_geom);
    let one = ExtReal::one();
    let surface = &one - &(&(&ExtReal::from_i64(2) * &m) / &ext(body.surface_radius));
    let orbit = &one - &(&(&ExtReal::from_i64(3) * &m) / &ext(r_b));
    let q = &surface / &orbit;
    Ok(q.sqrt().expect("both factors positive"))
}

/// `Omega_B / Omega_A` for a satellite at radius `r_b` on the equator.
pub fn frequency_ratio_kerr(body: &BodyModel, r_b: f64) -> Result<f64> {
    Ok(frequency_ratio_kerr_ext(body, r_b)?.to_f64())
}

/// `Omega_B / Omega_A - 1`, accurate to the last bit.
pub fn frequency_ratio_kerr_excess(body: &BodyModel, r_b: f64) -> Result<f64> {
    Ok((&frequency_ratio_kerr_ext(body, r_b)? - &ExtReal::one()).to_f64())
}

/// Non-rotating limit: `sqrt((1 - 2M/r_A) / (1 - 3M/r_B))`.
pub fn frequency_ratio_schwarzschild(body: &BodyModel, r_b: f64) -> Result<f64> {
    Ok(frequency_ratio_schwarzschild_ext(body, r_b)?.to_f64())
}

pub fn frequency_ratio_schwarzschild_excess(body: &BodyModel, r_b: f64) -> Result<f64> {
    Ok((&frequency_ratio_schwarzschild_ext(body, r_b)? - &ExtReal::one()).to_f64())
}

fn check_height(h: f64) -> Result<()> {
    if !h.is_finite() || h < 0.0 {
        return Err(Error::domain("height must be finite and non-negative", h));
    }
    Ok(())
}

/// Shift parameter from the closed-form Kerr ratio at height `h` above the
/// surface.
pub fn delta_exact(body: &BodyModel, h: f64) -> Result<ShiftResult> {
    check_height(h)?;
    let excess = frequency_ratio_kerr_excess(body, body.surface_radius + h)?;
    Ok(ShiftResult {
        ratio: 1.0 + excess,
        ratio_excess: excess,
        delta: (0.5 * excess.ln_1p()).exp_m1(),
        parts: None,
        warning: None,
    })
}

/// Perturbative shift, independent of the orbit direction.
pub fn delta_perturbative(body: &BodyModel, h: f64) -> Result<ShiftResult> {
    check_height(h)?;
    body.validate()?;
    let ra = body.surface_radius;
    let (m, a, w) = (body.mass_geom, body.kerr_a, body.omega_geom);
    if w > 0.0 && a > 0.0 && !body.expansion_condition_holds() {
        return Err(Error::domain(
            "perturbative shift needs (r_A omega)^2 > a omega",
            a * w,
        ));
    }

    let x = h / ra;
    let rs_over_ra = body.schwarzschild_radius() / ra;
    let v2 = (ra * w).powi(2);

    let sch = 0.125 * rs_over_ra * (1.0 - 2.0 * x) / (1.0 + x);
    let rot = -0.25 * v2;
    let (higher, warning) = if w > 0.0 {
        let kerr = 4.0 * m * a / (w * ra * ra * ra);
        (-0.25 * v2 * (0.75 * rs_over_ra - kerr), None)
    } else if a != 0.0 {
        (0.0, Some(ShiftWarning::HigherOrderTermDropped))
    } else {
        (0.0, None)
    };

    let delta = sch + rot + higher;
    let ratio_excess = delta * (2.0 + delta);
    Ok(ShiftResult {
        ratio: 1.0 + ratio_excess,
        ratio_excess,
        delta,
        parts: Some(ShiftParts { sch, rot, higher }),
        warning,
    })
}

pub fn delta(body: &BodyModel, h: f64, mode: DeltaMode) -> Result<ShiftResult> {
    match mode {
        DeltaMode::Exact => delta_exact(body, h),
        DeltaMode::Perturbative => delta_perturbative(body, h),
    }
}

/// Default upper end of the root bracket, in metres.
pub const ZERO_SHIFT_BRACKET: f64 = 1e9;

/// Height at which gravitational blue-shift and orbital time dilation cancel.
pub fn zero_shift_height(body: &BodyModel, mode: DeltaMode) -> Result<f64> {
    zero_shift_height_within(body, mode, ZERO_SHIFT_BRACKET)
}

/// Bisection for `delta(h) = 0` on `[0, h_max]`, run until the bracket
/// cannot shrink further in `f64`.
pub fn zero_shift_height_within(body: &BodyModel, mode: DeltaMode, h_max: f64) -> Result<f64> {
    let eval = |h: f64| delta(body, h, mode).map(|r| r.delta);
    let (mut lo, mut hi) = (0.0, h_max);
    let (mut d_lo, mut d_hi) = (eval(lo)?, eval(hi)?);
    if !(d_lo > 0.0 && d_hi < 0.0) {
        return Err(Error::NoRoot {
            lo,
            hi,
            delta_lo: d_lo,
            delta_hi: d_hi,
        });
    }
    for _ in 0..2000 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let d = eval(mid)?;
        if d == 0.0 {
            return Ok(mid);
        }
        if d > 0.0 {
            lo = mid;
            d_lo = d;
        } else {
            hi = mid;
            d_hi = d;
        }
    }
    Ok(if d_lo.abs() <= d_hi.abs() { lo } else { hi })
}
