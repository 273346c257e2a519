use std::fmt;

use thiserror::Error;

/// Pipeline stage that produced an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Shift,
    Overlap,
    Channel,
    Coherence,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Shift => "frequency shift",
            Stage::Overlap => "wavepacket overlap",
            Stage::Channel => "lossy channel",
            Stage::Coherence => "gaussian coherence",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("unphysical state: {what} (got {value})")]
    Unphysical { what: &'static str, value: f64 },

    #[error(
        "no root of the shift parameter in [{lo}, {hi}] m (delta {delta_lo:e} .. {delta_hi:e})"
    )]
    NoRoot {
        lo: f64,
        hi: f64,
        delta_lo: f64,
        delta_hi: f64,
    },

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {evaluations} evaluations")]
    Quadrature {
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("relative change undefined: baseline coherence is {baseline}")]
    ZeroBaseline { baseline: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("no figure preset {0} (expected 1..=4)")]
    UnknownPreset(u8),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep point {index} (h = {h_m} m, s = {s}, omega2 = {omega2}, sigma = {sigma}) failed: {source}")]
    SweepPoint {
        index: usize,
        h_m: f64,
        s: f64,
        omega2: f64,
        sigma: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    pub(crate) fn at(self, stage: Stage) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
