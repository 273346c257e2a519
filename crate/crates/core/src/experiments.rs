//! Parameter sweeps over orbit height or squeezing, and the four figure
//! presets.

use rayon::prelude::*;

use crate::channel::{self, PipelineOptions};
use crate::error::{Error, Result};
use crate::spacetime::BodyModel;
use crate::wavepacket::GaussianWavepacket;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Orbit height in metres.
    Height,
    /// Two-mode squeezing parameter.
    Squeezing,
}

/// Evenly spaced grid of `steps` points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self> {
        let r = Self { start, stop, steps };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidSweep("axis bounds must be finite".into()));
        }
        if self.start >= self.stop {
            return Err(Error::InvalidSweep(format!(
                "start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }

    pub fn spacing(&self) -> f64 {
        (self.stop - self.start) / (self.steps - 1) as f64
    }
}

/// Values held fixed along the sweep. `s` is ignored on a squeezing axis
/// and `h_m` on a height axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedParams {
    pub s: f64,
    pub h_m: f64,
    pub omega2_list: Vec<f64>,
    pub sigma_list: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputQuantity {
    #[default]
    Coherence,
    /// Relative change against the same configuration at zero height.
    Mu,
    Delta,
    Theta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub axis: Axis,
    pub range: AxisRange,
    pub fixed: FixedParams,
    pub opts: PipelineOptions,
    pub output: OutputQuantity,
    pub body: BodyModel,
}

impl SweepPlan {
    pub fn validate(&self) -> Result<()> {
        self.range.validate()?;
        if self.fixed.omega2_list.is_empty() || self.fixed.sigma_list.is_empty() {
            return Err(Error::InvalidSweep(
                "peak and bandwidth lists must be non-empty".into(),
            ));
        }
        Ok(())
    }

    /// Number of rows the sweep produces.
    pub fn len(&self) -> usize {
        self.range.steps * self.fixed.omega2_list.len() * self.fixed.sigma_list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(h, s, omega2, sigma)` of row `index`; axis-major, then `omega2`,
    /// then `sigma`.
    fn grid_point(&self, index: usize, axis_values: &[f64]) -> (f64, f64, f64, f64) {
        let n_sigma = self.fixed.sigma_list.len();
        let per_axis = self.fixed.omega2_list.len() * n_sigma;
        let x = axis_values[index / per_axis];
        let inner = index % per_axis;
        let omega2 = self.fixed.omega2_list[inner / n_sigma];
        let sigma = self.fixed.sigma_list[inner % n_sigma];
        match self.axis {
            Axis::Height => (x, self.fixed.s, omega2, sigma),
            Axis::Squeezing => (self.fixed.h_m, x, omega2, sigma),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub h_m: f64,
    pub s: f64,
    pub omega2: f64,
    pub sigma: f64,
    pub delta: f64,
    pub theta2: f64,
    pub coherence_bits: f64,
    pub mu: Option<f64>,
}

/// `(C - C0) / C0`.
pub fn rate_of_change_mu(coherence_at_h: f64, coherence_at_h0: f64) -> Result<f64> {
    if !(coherence_at_h0 > 0.0 && coherence_at_h0.is_finite()) {
        return Err(Error::ZeroBaseline {
            baseline: coherence_at_h0,
        });
    }
    Ok((coherence_at_h - coherence_at_h0) / coherence_at_h0)
}

/// Single grid point; `mu` is filled only for [`OutputQuantity::Mu`].
pub fn evaluate_point(
    body: &BodyModel,
    opts: &PipelineOptions,
    output: OutputQuantity,
    h: f64,
    s: f64,
    omega2: f64,
    sigma: f64,
) -> Result<SweepRow> {
    let wp = GaussianWavepacket::new(omega2, sigma)?;
    let out = channel::propagated_coherence(body, &wp, s, h, opts)?;
    let mu = match output {
        OutputQuantity::Mu => {
            let base = channel::propagated_coherence(body, &wp, s, 0.0, opts)?;
            Some(rate_of_change_mu(out.coherence, base.coherence)?)
        }
        _ => None,
    };
    Ok(SweepRow {
        h_m: h,
        s,
        omega2,
        sigma,
        delta: out.delta,
        theta2: out.theta2,
        coherence_bits: out.coherence,
        mu,
    })
}

fn evaluate_indexed(plan: &SweepPlan, axis_values: &[f64], index: usize) -> Result<SweepRow> {
    let (h, s, omega2, sigma) = plan.grid_point(index, axis_values);
    evaluate_point(&plan.body, &plan.opts, plan.output, h, s, omega2, sigma).map_err(|e| {
        Error::SweepPoint {
            index,
            h_m: h,
            s,
            omega2,
            sigma,
            source: Box::new(e),
        }
    })
}

/// Evaluates every grid point on the rayon pool. Rows come back in the same
/// order as [`run_sweep_serial`] and are bit-identical to it.
pub fn run_sweep(plan: &SweepPlan) -> Result<Vec<SweepRow>> {
    plan.validate()?;
    let axis_values = plan.range.points();
    let results: Vec<Result<SweepRow>> = (0..plan.len())
        .into_par_iter()
        .map(|i| evaluate_indexed(plan, &axis_values, i))
        .collect();
    // first failure by grid index, not by completion order
    results.into_iter().collect()
}

pub fn run_sweep_serial(plan: &SweepPlan) -> Result<Vec<SweepRow>> {
    plan.validate()?;
    let axis_values = plan.range.points();
    (0..plan.len())
        .map(|i| evaluate_indexed(plan, &axis_values, i))
        .collect()
}

/// Height grid used by the height-axis presets: up to geostationary
/// altitude in 720 points.
pub const PRESET_HEIGHT_RANGE: AxisRange = AxisRange {
    start: 0.0,
    stop: 3.6e7,
    steps: 720,
};

pub const PRESET_SQUEEZING_RANGE: AxisRange = AxisRange {
    start: 0.0,
    stop: 3.0,
    steps: 301,
};

/// Sweep behind figure `n` (1 to 4).
pub fn preset_figure(n: u8) -> Result<SweepPlan> {
    let spread = vec![0.8, 1.0, 1.2];
    let (axis, range, fixed, output) = match n {
        1 => (
            Axis::Squeezing,
            PRESET_SQUEEZING_RANGE,
            FixedParams {
                s: 1.0,
                h_m: 2e7,
                omega2_list: spread,
                sigma_list: vec![1.0],
            },
            OutputQuantity::Coherence,
        ),
        2 => (
            Axis::Height,
            PRESET_HEIGHT_RANGE,
            FixedParams {
                s: 1.0,
                h_m: 0.0,
                omega2_list: vec![1.0],
                sigma_list: spread,
            },
            OutputQuantity::Coherence,
        ),
        3 | 4 => (
            Axis::Height,
            PRESET_HEIGHT_RANGE,
            FixedParams {
                s: 1.0,
                h_m: 0.0,
                omega2_list: spread,
                sigma_list: vec![1.0],
            },
            if n == 3 {
                OutputQuantity::Coherence
            } else {
                OutputQuantity::Mu
            },
        ),
        _ => return Err(Error::UnknownPreset(n)),
    };
    Ok(SweepPlan {
        axis,
        range,
        fixed,
        opts: PipelineOptions::default(),
        output,
        body: BodyModel::earth(),
    })
}
