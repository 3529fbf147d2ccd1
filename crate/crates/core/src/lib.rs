//! Desk-scale simulation and analysis of a twin-lattice atom interferometer.
//!
//! The crate models the horizontal twin-lattice beam splitter formed by two
//! counterpropagating optical lattices: Bloch-oscillation transfer
//! efficiencies from a 1D split-step Gross-Pitaevskii solver, closed-form
//! loss and contrast models, knife-edge diffraction of the lattice beam and
//! the dephasing it causes, coherence-envelope statistics under white phase
//! noise, and Sagnac-geometry figures of merit.

pub mod constants;
pub mod error;
pub mod gpe;
pub mod lattice;
pub mod numeric;
pub mod piecewise;
pub mod schedule;
pub mod seeding;
pub mod species;
pub mod twinlattice;

pub use error::CoreError;
pub use gpe::{MomentumPopulations, NonlinearityParams, WaveFunction1D};
pub use lattice::LatticeParams;
pub use schedule::{InterferometerSchedule, Segment};
pub use species::AtomSpecies;
pub use twinlattice::TwinLatticeField;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CoreError>;
