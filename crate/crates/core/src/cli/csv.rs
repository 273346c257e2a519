use std::io::Write;

use csv::{Terminator, WriterBuilder};

use crate::experiments::SweepRow;

pub const HEADER: [&str; 8] = [
    "h_m",
    "s",
    "omega2",
    "sigma",
    "delta",
    "theta2",
    "coherence_bits",
    "mu",
];

/// Scientific notation with `digits` significant digits; `-0` prints as `0`.
pub fn format_float(x: f64, digits: usize) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.*e}", digits.saturating_sub(1), x)
}

pub fn write_rows<W: Write>(out: W, rows: &[SweepRow], digits: usize) -> csv::Result<()> {
    let mut w = WriterBuilder::new()
        .terminator(Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        let f = |x: f64| format_float(x, digits);
        w.write_record([
            f(r.h_m),
            f(r.s),
            f(r.omega2),
            f(r.sigma),
            f(r.delta),
            f(r.theta2),
            f(r.coherence_bits),
            r.mu.map(f).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
