use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} must be in [{min}, {max}], got {value}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// Parameter lies inside the nominal range but at a point where the
    /// requested quantity is undefined (for example alpha exactly 0 or 1).
    #[error("{name} must satisfy {requirement}, got {value}")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("output port {port} exceeds photon number {n_photons}")]
    PortOutOfRange { port: u32, n_photons: u32 },

    #[error("photon number {got} exceeds simulator cap {cap}")]
    PhotonCap { got: u32, cap: u32 },

    #[error("mode transform is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("no sign change for {what} on [{lo}, {hi}]")]
    NoBracket { what: &'static str, lo: f64, hi: f64 },

    #[error("invalid scan: {0}")]
    Scan(String),

    #[error("unknown quantity `{0}`")]
    UnknownQuantity(String),

    #[error("unknown axis parameter `{0}`")]
    UnknownAxis(String),

    #[error("unknown regime label `{0}`")]
    UnknownRegime(String),

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
