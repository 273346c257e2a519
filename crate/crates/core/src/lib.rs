//! Gaussian coherence of a two-mode squeezed photon pair when one photon
//! stays on the ground and the other climbs to a satellite.
//!
//! The chain is:
//!
//! 1. [`spacetime`]: frequency shift between ground and orbit in the
//!    equatorial Kerr geometry of a rotating body.
//! 2. [`wavepacket`]: overlap of the sent and received Gaussian packets.
//! 3. [`channel`]: the overlap acts as a beam-splitter loss on the photon.
//! 4. [`gaussian`]: relative-entropy coherence of the resulting state.
//!
//! [`experiments`] sweeps this over height or squeezing and [`cli`] wraps it
//! as a CSV-producing command.
//!
//! ```
//! use gravcoh::{channel, spacetime::BodyModel, wavepacket::GaussianWavepacket};
//!
//! let earth = BodyModel::earth();
//! let packet = GaussianWavepacket::new(1.0, 1.0)?;
//! let geo = channel::propagated_coherence(&earth, &packet, 1.0, 3.6e7, &Default::default())?;
//! assert!(geo.coherence > 4.6 && geo.coherence < 4.68);
//! # Ok::<(), gravcoh::Error>(())
//! ```

pub mod channel;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod extended;
pub mod gaussian;
pub mod quadrature;
pub mod spacetime;
pub mod wavepacket;

pub use error::{Error, Result, Stage};
