//! Epidemics on configuration model graphs under vaccination strategies
//! that need no knowledge of the network: uniform, acquaintance and two
//! edgewise schemes.
//!
//! [`degrees`] builds degree laws and sequences, [`graphgen`] draws graphs,
//! [`vaccine`] applies strategies, [`epidemic`] runs Reed–Frost outbreaks
//! and replicate studies, and [`theory`] evaluates the branching-process
//! limits they are compared against.

pub mod degrees;
pub mod epidemic;
pub mod error;
pub mod graphgen;
pub mod rng;
pub mod sweep;
pub mod theory;
pub mod vaccine;

pub use degrees::{DegreeDistribution, DegreeSequence, DistSpec};
pub use epidemic::{GraphModel, OutbreakResult, ReplicateConfig, ReplicateSummary, ThresholdPolicy};
pub use error::{Error, ErrorKind, Result};
pub use graphgen::{HalfEdgeGraph, Simplicity};
pub use theory::TheoryResult;
pub use vaccine::{Strategy, StrategyKind, VaccinationMask};
