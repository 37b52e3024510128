use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A call violated an API contract (mismatched lengths, non-coprime
    /// fractions, grossly non-normalized input, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A vibrational level index outside the bound spectrum.
    #[error("level {n} outside bound spectrum 0..={n_max}")]
    LevelOutOfRange { n: u32, n_max: u32 },

    /// The potential is too shallow to bind any state.
    #[error("no bound states: lambda = {lambda} <= 1/2")]
    NoBoundStates { lambda: f64 },

    /// A state does not decay at the grid boundaries; samples outside the
    /// grid cannot be treated as zero.
    #[error(
        "grid too narrow for `{label}`: boundary magnitudes ({left:.3e}, {right:.3e}) \
         exceed {limit:.1e} of peak {peak:.3e}"
    )]
    Truncation {
        label: String,
        left: f64,
        right: f64,
        peak: f64,
        limit: f64,
    },

    /// A numerical result failed an internal tolerance check.
    #[error("tolerance failure: {0}")]
    Tolerance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
