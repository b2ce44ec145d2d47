//! Barnes multiple zeta functions, their q-analogues and the associated
//! q-gamma function.

pub mod classical;
pub mod error;
pub mod limits;
pub mod qgamma;
pub mod qnum;
pub mod quad;
pub mod qzeta;
pub mod special;
pub mod suites;
pub mod types;

pub use error::{Error, Result};
pub use limits::{Classification, SweepReport, SweepSpec, TRule};
pub use qgamma::QGammaContext;
pub use qnum::QParam;
pub use qzeta::{ContinuationParams, Weights};
pub use types::{ComplexValue, EvalResult, Method, TruncationPolicy};
