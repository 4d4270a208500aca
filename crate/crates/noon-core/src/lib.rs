//! Fringes, Fisher information, and operating regimes of a lossy two-arm
//! interferometer probed with partially entangled N-photon states.
//!
//! The probe superposes all N photons in a reference arm against all N in a
//! phase-sensing arm that loses each photon with probability `loss`. Four
//! layers build on each other:
//!
//! * [`analytic`]: closed forms for coincidence fringes, visibility, and
//!   Fisher information, plus every optimum and threshold that has one.
//! * [`fock`]: a small exact Fock-space simulator that rederives the same
//!   numbers from the state vector, used to cross-check the closed forms.
//! * [`metrology`]: independent numeric optimization, threshold bisection,
//!   and regime classification.
//! * [`scan`]: deterministic parameter sweeps with stable CSV/JSON output.

pub mod analytic;
pub mod error;
pub mod fock;
pub mod metrology;
pub mod scan;

pub use analytic::{
    CoincidenceDistribution, FringeDescriptor, NoonCoefficients, ProbeConfig,
};
pub use error::{Error, Result};
pub use fock::{FockBasisState, ModeTransform, PureState};
pub use metrology::{
    OptimizedVariable, OptimumReport, RegimeLabel, ThresholdReport, VerifyReport,
};
pub use scan::{Axis, AxisParam, AxisValues, Cell, CellValue, Quantity, ScanResult, ScanSpec};
