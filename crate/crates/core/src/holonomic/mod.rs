//! Holonomic functions and P-recursive sequences.
//!
//! Differential equations and recurrences are converted into each other,
//! closure under sum and product goes through derivation modules, and every
//! annihilator can be checked against a truncated series.

mod closure;
mod convert;
mod dmodule;
mod linalg;
mod ode;
mod recurrence;

pub use closure::{annihilator_add, annihilator_mul, companion_matrix, polynomial_annihilator};
pub use convert::{ode_to_recurrence, recurrence_to_ode};
pub use dmodule::DModule;
pub use linalg::first_dependency;
pub use ode::{OdeAnnihilator, SeriesCheck};
pub use recurrence::{BoundaryRelation, InitialData, Recurrence};
