//! K-contact forms on lens spaces L(p,q): construction from radial
//! profiles, Reeb dynamics and rotation numbers, compatible metrics and
//! quotient curvature, heat-trace expansion coefficients, strict
//! contactomorphisms, and the quasi-regular deformation pipeline.
//!
//! Start from [`lens::make_lens`] and [`form::from_periods`]; the runnable
//! examples in `examples/` walk through each capability end to end.

pub mod cli;
pub mod contacto;
pub mod descriptor;
pub mod error;
pub mod form;
pub mod lens;
pub mod metric;
pub mod numeric;
pub mod profile;
pub mod quadrature;
pub mod rational;
pub mod reeb;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
