//! Exact statevector simulation of string-net circuits for doubled Fibonacci
//! anyons.
//!
//! The crate is organised in five modules mirroring the layers of the
//! simulator:
//!
//! - [`anyon`]: Fibonacci fusion category data (fusion rules, F/R symbols,
//!   twists, pentagon/hexagon/ribbon consistency checks) and the doubled
//!   labels used for string-net charges.
//! - [`sim`]: a dense statevector simulator with controlled multi-qubit
//!   gates, projective measurement, and deterministic shot sampling.
//! - [`gates`]: the named gate set used by the protocols and F-move
//!   unitaries acting on lattice edge qubits.
//! - [`lattice`]: trivalent string-net lattices as combinatorial maps,
//!   F-moves on them, reduction plans to (generalized) tadpole bases, and
//!   charge readout.
//! - [`protocols`]: the end-to-end experiments (ground-state preparation,
//!   fusion, braiding, and twist measurements) with stage-by-stage expected
//!   states and verification reports.
//!
//! All numerics are generic over the scalar type via [`Real`]; the concrete
//! `f64` aliases below are the intended entry point for most users.

pub mod anyon;
pub mod gates;
pub mod lattice;
pub mod protocols;
pub mod sim;

pub use num_complex::Complex;

/// Scalar trait for all numerics in this crate (implemented by `f32`/`f64`).
pub trait Real:
    num_traits::Float + num_traits::FloatConst + std::fmt::Debug + std::fmt::Display + 'static
{
}

impl<T> Real for T where
    T: num_traits::Float + num_traits::FloatConst + std::fmt::Debug + std::fmt::Display + 'static
{
}

/// Complex double-precision scalar.
pub type C64 = Complex<f64>;
/// Double-precision statevector.
pub type StateVector64 = sim::StateVector<f64>;
/// Double-precision gate matrix.
pub type GateMatrix64 = sim::GateMatrix<f64>;
/// Double-precision circuit operation.
pub type CircuitOp64 = sim::CircuitOp<f64>;
/// Double-precision circuit.
pub type Circuit64 = sim::Circuit<f64>;
/// Double-precision category data.
pub type CategoryData64 = anyon::CategoryData<f64>;
/// Double-precision experiment.
pub type Experiment64 = protocols::Experiment<f64>;
/// Double-precision experiment report.
pub type ExperimentReport64 = protocols::ExperimentReport<f64>;

pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from(x).expect("f64 constant representable in scalar type")
}
