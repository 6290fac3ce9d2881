//! Radial profiles, star bodies, and the coefficient machinery they share.
//!
//! A planar star body is represented by the truncated Fourier series of its
//! radial function. Everything downstream (functionals, inequalities,
//! ensembles) works with two types from this module: [`FourierProfile`] for
//! raw coefficient data and [`StarBody`] for a profile whose positivity has
//! been certified.

mod angle;
mod body;
mod family;
mod profile;

pub use angle::Angle;
pub use body::{PositivityCertificate, StarBody};
pub use family::EqualityFamily;
pub use profile::FourierProfile;

pub(crate) use body::{default_grid_nodes, grid_minimum};
