//! Two-mode Gaussian states in standard form.
//!
//! A zero-mean two-mode Gaussian state is fixed by its covariance matrix. Every
//! state in this crate is (or is brought to) the standard form
//!
//! ```text
//!     | a   0   c1   0  |
//!     | 0   a   0   -c2 |
//!     | c1  0   b    0  |
//!     | 0  -c2  0    b  |
//! ```
//!
//! in `(x_A, p_A, x_B, p_B)` ordering, with vacuum noise normalised to one.
//!
//! Besides the four entries the matrix carries the determinants of its `x`-`x`
//! and `p`-`p` sub-blocks, `ab - c1^2` and `ab - c2^2`. For near-pure states
//! these are the difference of two large, nearly equal numbers, so
//! constructors that know them in closed form pass them in directly; the
//! generic constructor evaluates them with a fused multiply-add difference of
//! products. Every spectral quantity below is then a sum of non-negative terms.

use std::f64::consts::LN_2;

use nalgebra::Matrix4;

use crate::error::{Error, Result};

/// Symplectic eigenvalues may undershoot 1 by this much before a state is
/// rejected as unphysical.
pub const PHYSICALITY_TOL: f64 = 1e-12;

/// `|nu - 1|` below which a mode is treated as pure (`f(nu) = 0`).
pub const PURE_GUARD: f64 = 1e-14;

/// Negative coherence down to `-COHERENCE_CLAMP` is rounding and reads as zero.
pub const COHERENCE_CLAMP: f64 = 1e-12;

/// `a*b - c*d` with one rounding (Kahan's fma scheme).
fn diff_of_products(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let w = c * d;
    let e = (-c).mul_add(d, w);
    let f = a.mul_add(b, -w);
    f + e
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix2Mode {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
    det_xx: f64,
    det_pp: f64,
}

impl CovarianceMatrix2Mode {
    /// Builds a standard-form matrix, rejecting non-finite entries and
    /// matrices that are not positive definite.
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Result<Self> {
        for (what, v) in [
            ("non-finite entry a", a),
            ("non-finite entry b", b),
            ("non-finite entry c1", c1),
            ("non-finite entry c2", c2),
        ] {
            if !v.is_finite() {
                return Err(Error::domain(what, v));
            }
        }
        let det_xx = diff_of_products(a, b, c1, c1);
        let det_pp = diff_of_products(a, b, c2, c2);
        Self::checked(a, b, c1, c2, det_xx, det_pp)
    }

    /// Builds a matrix whose block determinants are known in closed form.
    pub(crate) fn with_block_determinants(
        a: f64,
        b: f64,
        c1: f64,
        c2: f64,
        det_xx: f64,
        det_pp: f64,
    ) -> Result<Self> {
        debug_assert!(
            (det_xx - diff_of_products(a, b, c1, c1)).abs() <= 1e-9 * (a * b).max(1.0),
            "x-block determinant inconsistent with entries"
        );
        Self::checked(a, b, c1, c2, det_xx, det_pp)
    }

    fn checked(a: f64, b: f64, c1: f64, c2: f64, det_xx: f64, det_pp: f64) -> Result<Self> {
        if a.is_nan() || a <= 0.0 {
            return Err(Error::Unphysical {
                what: "mode-A variance must be positive",
                value: a,
            });
        }
        if b.is_nan() || b <= 0.0 {
            return Err(Error::Unphysical {
                what: "mode-B variance must be positive",
                value: b,
            });
        }
        if det_xx.is_nan() || det_xx <= 0.0 {
            return Err(Error::Unphysical {
                what: "x-block determinant ab - c1^2 must be positive",
                value: det_xx,
            });
        }
        if det_pp.is_nan() || det_pp <= 0.0 {
            return Err(Error::Unphysical {
                what: "p-block determinant ab - c2^2 must be positive",
                value: det_pp,
            });
        }
        Ok(Self {
            a,
            b,
            c1,
            c2,
            det_xx,
            det_pp,
        })
    }

    pub fn vacuum() -> Self {
        Self {
            a: 1.0,
            b: 1.0,
            c1: 0.0,
            c2: 0.0,
            det_xx: 1.0,
            det_pp: 1.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// `ab - c1^2`.
    pub fn det_xx(&self) -> f64 {
        self.det_xx
    }

    /// `ab - c2^2`.
    pub fn det_pp(&self) -> f64 {
        self.det_pp
    }

    /// The same state with the two modes exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            ..*self
        }
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        let (a, b, c1, c2) = (self.a, self.b, self.c1, self.c2);
        Matrix4::new(
            a, 0.0, c1, 0.0, //
            0.0, a, 0.0, -c2, //
            c1, 0.0, b, 0.0, //
            0.0, -c2, 0.0, b,
        )
    }

    /// Reads a 4x4 matrix that must already be in standard form up to
    /// `tol` (relative to its largest entry).
    pub fn from_matrix(m: &Matrix4<f64>, tol: f64) -> Result<Self> {
        let scale = m.amax().max(1.0);
        let a = m[(0, 0)];
        let b = m[(2, 2)];
        let c1 = m[(0, 2)];
        let c2 = -m[(1, 3)];
        let cm = Self::new(a, b, c1, c2)?;
        let dev = (m - cm.to_matrix()).amax();
        if dev > tol * scale {
            return Err(Error::Domain {
                what: "matrix is not in two-mode standard form",
                value: dev,
            });
        }
        Ok(cm)
    }
}

/// Local symplectic invariants of a standard-form matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    /// `det A = a^2`
    pub i1: f64,
    /// `det B = b^2`
    pub i2: f64,
    /// `det C = -c1 c2` (the off-diagonal block is `diag(c1, -c2)`)
    pub i3: f64,
    /// `det sigma`
    pub i4: f64,
    /// `i1 + i2 + 2 i3`
    pub delta: f64,
}

/// Per-mode first moments `(<x>, <p>)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Displacement {
    pub mode_a: [f64; 2],
    pub mode_b: [f64; 2],
}

impl Displacement {
    fn norm_sq_a(&self) -> f64 {
        self.mode_a[0].powi(2) + self.mode_a[1].powi(2)
    }

    fn norm_sq_b(&self) -> f64 {
        self.mode_b[0].powi(2) + self.mode_b[1].powi(2)
    }
}

/// How mean occupations are read off the covariance matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum OccupationConvention {
    /// `(s11 + s22 + d^2 - 2) / 4`: zero for the vacuum.
    #[default]
    Physical,
    /// `(s11 + s22 + d^2) / 4` without the vacuum offset; the vacuum gets 1/2.
    Verbatim,
}

/// Covariance matrix of the two-mode squeezed vacuum with squeezing `s`.
pub fn two_mode_squeezed_cm(s: f64) -> Result<CovarianceMatrix2Mode> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::domain(
            "squeezing must be finite and non-negative",
            s,
        ));
    }
    let sh = s.sinh();
    let a = 1.0 + 2.0 * sh * sh;
    let c = (2.0 * s).sinh();
    // cosh^2 - sinh^2 = 1
    CovarianceMatrix2Mode::with_block_determinants(a, a, c, c, 1.0, 1.0)
}

pub fn symplectic_invariants(cm: &CovarianceMatrix2Mode) -> SymplecticInvariants {
    SymplecticInvariants {
        i1: cm.a * cm.a,
        i2: cm.b * cm.b,
        i3: -cm.c1 * cm.c2,
        i4: cm.det_xx * cm.det_pp,
        delta: delta_invariant(cm),
    }
}

/// `a^2 + b^2 - 2 c1 c2`, rewritten as `(a-b)^2 + (c1-c2)^2 + det_xx + det_pp`.
fn delta_invariant(cm: &CovarianceMatrix2Mode) -> f64 {
    asymmetry(cm) + cm.det_xx + cm.det_pp
}

fn asymmetry(cm: &CovarianceMatrix2Mode) -> f64 {
    (cm.a - cm.b).powi(2) + (cm.c1 - cm.c2).powi(2)
}

/// Symplectic eigenvalues `(nu_minus, nu_plus)`, `nu_minus <= nu_plus`.
///
/// With `E = (a-b)^2 + (c1-c2)^2` the discriminant `Delta^2 - 4 det` equals
/// `E^2 + 2E(det_xx + det_pp) + (det_xx - det_pp)^2`, which is never negative,
/// and `nu_minus` is recovered from `nu_minus * nu_plus = sqrt(det)`.
pub fn symplectic_eigenvalues(cm: &CovarianceMatrix2Mode) -> (f64, f64) {
    let e = asymmetry(cm);
    let (dx, dp) = (cm.det_xx, cm.det_pp);
    let delta = e + dx + dp;
    let disc = e * e + 2.0 * e * (dx + dp) + (dx - dp).powi(2);
    let nu_plus_sq = 0.5 * (delta + disc.sqrt());
    let nu_plus = nu_plus_sq.sqrt();
    let nu_minus = (dx * dp).sqrt() / nu_plus;
    (nu_minus, nu_plus)
}

/// Entropy in bits of a thermal mode with mean occupation `n`:
/// `(n+1) log2(n+1) - n log2 n`.
pub fn bose_entropy(n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    // both terms positive; no cancellation at large n
    (n.ln_1p() + n * (1.0 / n).ln_1p()) / LN_2
}

/// `f(nu)`, the entropy contribution of one symplectic eigenvalue.
pub fn symplectic_entropy(nu: f64) -> f64 {
    if (nu - 1.0).abs() < PURE_GUARD {
        return 0.0;
    }
    bose_entropy(0.5 * (nu - 1.0))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(cm: &CovarianceMatrix2Mode) -> Result<f64> {
    let (nu_minus, nu_plus) = symplectic_eigenvalues(cm);
    if nu_minus < 1.0 - PHYSICALITY_TOL {
        return Err(Error::Unphysical {
            what: "smallest symplectic eigenvalue below 1",
            value: nu_minus,
        });
    }
    Ok(symplectic_entropy(nu_minus) + symplectic_entropy(nu_plus))
}

pub fn mean_occupations(
    cm: &CovarianceMatrix2Mode,
    d: &Displacement,
    convention: OccupationConvention,
) -> (f64, f64) {
    match convention {
        OccupationConvention::Physical => (
            (0.5 * (cm.a - 1.0) + 0.25 * d.norm_sq_a()).max(0.0),
            (0.5 * (cm.b - 1.0) + 0.25 * d.norm_sq_b()).max(0.0),
        ),
        OccupationConvention::Verbatim => (
            0.5 * cm.a + 0.25 * d.norm_sq_a(),
            0.5 * cm.b + 0.25 * d.norm_sq_b(),
        ),
    }
}

/// Relative-entropy Gaussian coherence in bits: the distance from the state
/// to the product of thermal states with the same mean occupations.
pub fn gaussian_coherence(
    cm: &CovarianceMatrix2Mode,
    d: &Displacement,
    convention: OccupationConvention,
) -> Result<f64> {
    let s = von_neumann_entropy(cm)?;
    let (n1, n2) = mean_occupations(cm, d, convention);
    let c = bose_entropy(n1) + bose_entropy(n2) - s;
    if convention == OccupationConvention::Physical && c < 0.0 {
        if c < -COHERENCE_CLAMP {
            return Err(Error::Unphysical {
                what: "negative coherence",
                value: c,
            });
        }
        return Ok(0.0);
    }
    Ok(c)
}
