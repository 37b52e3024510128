//! Morse-oscillator SU(2) coherent-state wave packets.
//!
//! The crate builds the bound spectrum of a Morse diatomic, expands SU(2)
//! (Perelomov) coherent states over it, evolves them in time, decomposes
//! fractional revivals into Gauss-sum-weighted classical packets, and maps
//! states into phase space through the Wigner transform, down to the
//! sub-Planck interference structure of the compass state at one eighth of
//! the revival time.
//!
//! The heavy phase-space loops run data-parallel on rayon when the default
//! `parallel` feature is enabled; disabling it leaves a sequential fallback
//! with bitwise-identical output.

pub mod coherent;
pub mod diagnostics;
mod error;
pub mod morse;
pub mod phasespace;
pub mod revival;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
