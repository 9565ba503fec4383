//! Bound-state spectra of one-dimensional double heterostructures with a
//! position-dependent effective mass.
//!
//! Two independent routes are provided. [`multistep`] chops the graded
//! region into constant slabs and finds the poles of the reflection
//! amplitude. [`analytic`] matches closed-form inner solutions to decaying
//! outer exponentials and finds the zeros of a 2x2 determinant. [`closedform`]
//! holds the whole-space spectra that both approach when the heterostructure
//! stops being double.

pub mod analytic;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod multistep;
pub mod numfmt;
pub mod orderings;
pub mod profiles;
pub mod specialfn;

pub use error::{Error, Result};
pub use multistep::{Method, SpectrumResult};
pub use orderings::OrderingSpec;
pub use profiles::{build_model, HeterostructureModel, ProfileFamily, StepGrid};
