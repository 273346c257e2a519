use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};

use super::config::{DeltaModeName, NbarName, Theta1Name};
use crate::experiments::{Axis, AxisRange};

#[derive(Debug, Parser)]
#[command(
    name = "gravcoh",
    version,
    about = "Coherence of a squeezed photon pair shared between the ground and a satellite",
    after_help = "Without --sweep or --preset a single point is evaluated. \
                  Output is CSV on stdout unless --out is given."
)]
pub struct Args {
    /// Two-mode squeezing parameter (0 to 5)
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,

    /// Orbit height above the surface in km
    #[arg(long = "height-km", allow_negative_numbers = true)]
    pub height_km: Option<f64>,

    /// Peak frequency in units of 500 THz
    #[arg(long, allow_negative_numbers = true)]
    pub omega2: Option<f64>,

    /// Packet bandwidth in units of 1 MHz
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,

    /// Sweep an axis: h:START_KM:STOP_KM:STEPS or s:START:STOP:STEPS
    #[arg(long, conflicts_with = "preset", allow_hyphen_values = true)]
    pub sweep: Option<SweepArg>,

    /// Reproduce the data behind one of the four figures
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    #[arg(long = "delta-mode", value_enum)]
    pub delta_mode: Option<DeltaModeName>,

    /// Mean-occupation convention for the reference thermal state
    #[arg(long, value_enum)]
    pub nbar: Option<NbarName>,

    /// Overlap of the photon kept on the ground
    #[arg(long, value_enum)]
    pub theta1: Option<Theta1Name>,

    /// Flat JSON file with run settings; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Significant digits in the CSV output
    #[arg(long)]
    pub digits: Option<usize>,

    /// Fill the mu column (relative change against zero height)
    #[arg(long)]
    pub mu: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl Preset {
    pub fn number(self) -> u8 {
        match self {
            Preset::Fig1 => 1,
            Preset::Fig2 => 2,
            Preset::Fig3 => 3,
            Preset::Fig4 => 4,
        }
    }
}

/// Parsed `--sweep` value, with heights already in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepArg {
    pub axis: Axis,
    pub range: AxisRange,
}

impl FromStr for SweepArg {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [axis, start, stop, steps] = parts[..] else {
            return Err(format!("expected AXIS:START:STOP:STEPS, got '{text}'"));
        };
        let num = |v: &str| {
            v.parse::<f64>()
                .map_err(|e| format!("bad number '{v}': {e}"))
        };
        let (start, stop) = (num(start)?, num(stop)?);
        let steps: usize = steps
            .parse()
            .map_err(|e| format!("bad step count '{steps}': {e}"))?;
        let (axis, scale) = match axis {
            "h" => (Axis::Height, 1e3),
            "s" => (Axis::Squeezing, 1.0),
            other => return Err(format!("unknown axis '{other}' (use h or s)")),
        };
        let range =
            AxisRange::new(start * scale, stop * scale, steps).map_err(|e| e.to_string())?;
        Ok(SweepArg { axis, range })
    }
}
