//! Two-qubit spin model of the hydrogen molecule: exact entanglement
//! measures (von Neumann entropy, Wootters concurrence), correlation-energy
//! deviation functionals, and equilibrium-length prediction through the
//! Herring-Flicker exchange coupling.

pub mod ci_bridge;
pub mod deviation;
pub mod error;
pub mod hydrogen;
pub mod measures;
pub mod qlinalg;
pub mod spin_model;

pub use error::{Error, Result};
pub use qlinalg::{ComplexMatrix, EigenDecomposition};
pub use spin_model::{ModelParams, PureState4, RegionTag};
pub use measures::{DensityMatrix, PurityReport};
pub use deviation::{DeviationResult, MeasureKind, MinLocation};
pub use hydrogen::{ContourGrid, CouplingModel, EquilibriumScan, ScanKind};
pub use ci_bridge::{CisdCoefficients, Denominator, LogLinearFit, SampleRow, SampleSeries};
