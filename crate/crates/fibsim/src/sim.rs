//! Dense statevector simulator.
//!
//! Qubit indices are 0-based and big-endian: qubit 0 is the most significant
//! bit of a computational basis index, so `|q0 q1 ... q_{n-1}>` maps to the
//! integer `sum_i q_i 2^{n-1-i}`.

use crate::{real, Complex, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// Hard cap on the register size.
pub const MAX_QUBITS: usize = 24;

/// Probability / amplitude threshold below which projection and phase
/// extraction refuse to renormalize.
pub const PROJECTION_THRESHOLD: f64 = 1e-14;

/// Errors from statevector operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    /// Requested register larger than [`MAX_QUBITS`].
    #[error("qubit count {0} exceeds the maximum of 24")]
    TooManyQubits(usize),
    /// Basis index outside the register dimension.
    #[error("basis index {index} out of range for {n_qubits} qubits")]
    BasisOutOfRange { index: usize, n_qubits: usize },
    /// Qubit index outside the register.
    #[error("qubit index {0} out of range")]
    QubitOutOfRange(usize),
    /// Gate dimension does not match the number of target qubits.
    #[error("gate dimension {dim} does not match {targets} target qubits")]
    DimensionMismatch { dim: usize, targets: usize },
    /// Target/control lists overlap or contain repeats.
    #[error("target and control qubit lists must be disjoint and free of repeats")]
    OverlappingQubits,
    /// `control_values` length differs from `controls` length.
    #[error("control value list does not match the control list")]
    ControlMismatch,
    /// Matrix or vector sizes are inconsistent.
    #[error("dimension mismatch between operands")]
    SizeMismatch,
    /// Projection onto a branch of (near-)zero probability.
    #[error("branch probability below 1e-14; cannot renormalize")]
    ZeroProbabilityBranch,
    /// Phase comparison with a (near-)zero amplitude.
    #[error("amplitude magnitude below threshold; phase undefined")]
    AmplitudeTooSmall,
}

/// Value of qubit `qubit` (0-based, big-endian) in basis index `index`.
pub fn bit_of(index: usize, n_qubits: usize, qubit: usize) -> u8 {
    ((index >> (n_qubits - 1 - qubit)) & 1) as u8
}

/// A pure state of `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

/// Computational basis state `|basis_index>` on `n_qubits` qubits.
pub fn new_state<T: Real>(n_qubits: usize, basis_index: usize) -> Result<StateVector<T>, SimError> {
    StateVector::new(n_qubits, basis_index)
}

impl<T: Real> StateVector<T> {
    /// Computational basis state `|basis_index>`.
    pub fn new(n_qubits: usize, basis_index: usize) -> Result<Self, SimError> {
        if n_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if basis_index >= dim {
            return Err(SimError::BasisOutOfRange {
                index: basis_index,
                n_qubits,
            });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[basis_index] = Complex::new(T::one(), T::zero());
        Ok(StateVector { n_qubits, amps })
    }

    /// State with explicit amplitudes (length must be `2^n_qubits`).
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex<T>>) -> Result<Self, SimError> {
        if n_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits(n_qubits));
        }
        if amps.len() != 1usize << n_qubits {
            return Err(SimError::SizeMismatch);
        }
        Ok(StateVector { n_qubits, amps })
    }

    /// State with the given sparse amplitudes, all others zero.
    pub fn from_sparse(n_qubits: usize, entries: &[(usize, Complex<T>)]) -> Result<Self, SimError> {
        let mut st = Self::new(n_qubits, 0)?;
        st.amps[0] = Complex::new(T::zero(), T::zero());
        for &(idx, a) in entries {
            if idx >= st.amps.len() {
                return Err(SimError::BasisOutOfRange {
                    index: idx,
                    n_qubits,
                });
            }
            st.amps[idx] = a;
        }
        Ok(st)
    }

    /// Number of qubits.
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// All amplitudes, basis-ordered.
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    /// Amplitude of a basis state.
    pub fn amplitude(&self, basis_index: usize) -> Result<Complex<T>, SimError> {
        self.amps
            .get(basis_index)
            .copied()
            .ok_or(SimError::BasisOutOfRange {
                index: basis_index,
                n_qubits: self.n_qubits,
            })
    }

    /// Euclidean norm.
    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt()
    }

    /// `<self|other>`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>, SimError> {
        if self.n_qubits != other.n_qubits {
            return Err(SimError::SizeMismatch);
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.amps.iter().zip(other.amps.iter()) {
            acc = acc + a.conj() * *b;
        }
        Ok(acc)
    }

    /// `|<self|other>|^2` (insensitive to global phase).
    pub fn fidelity(&self, other: &Self) -> Result<T, SimError> {
        Ok(self.inner_product(other)?.norm_sqr())
    }

    /// Probability that measuring `qubit` yields `value`.
    pub fn marginal_probability(&self, qubit: usize, value: u8) -> Result<T, SimError> {
        if qubit >= self.n_qubits {
            return Err(SimError::QubitOutOfRange(qubit));
        }
        let mut p = T::zero();
        for (idx, a) in self.amps.iter().enumerate() {
            if bit_of(idx, self.n_qubits, qubit) == value {
                p = p + a.norm_sqr();
            }
        }
        Ok(p)
    }

    /// Project `qubit` onto `value` and renormalize; returns the branch
    /// probability and the post-measurement state. Errors when the branch
    /// probability is below `1e-14`.
    pub fn project_qubit(&self, qubit: usize, value: u8) -> Result<(T, Self), SimError> {
        let p = self.marginal_probability(qubit, value)?;
        if p < real::<T>(PROJECTION_THRESHOLD) {
            return Err(SimError::ZeroProbabilityBranch);
        }
        let scale = T::one() / p.sqrt();
        let mut amps = self.amps.clone();
        for (idx, a) in amps.iter_mut().enumerate() {
            if bit_of(idx, self.n_qubits, qubit) == value {
                *a = a.scale(scale);
            } else {
                *a = Complex::new(T::zero(), T::zero());
            }
        }
        Ok((
            p,
            StateVector {
                n_qubits: self.n_qubits,
                amps,
            },
        ))
    }

    /// Phase of `amplitude(index_b)` relative to `amplitude(index_a)`,
    /// wrapped into `(-pi, pi]`. Errors if either amplitude is (near) zero.
    pub fn relative_phase(&self, index_a: usize, index_b: usize) -> Result<T, SimError> {
        let a = self.amplitude(index_a)?;
        let b = self.amplitude(index_b)?;
        let thr = real::<T>(PROJECTION_THRESHOLD);
        if a.norm() < thr || b.norm() < thr {
            return Err(SimError::AmplitudeTooSmall);
        }
        let mut d = b.arg() - a.arg();
        let pi = T::PI();
        let two_pi = pi + pi;
        if d <= -pi {
            d = d + two_pi;
        } else if d > pi {
            d = d - two_pi;
        }
        Ok(d)
    }
}

/// Dense square gate matrix on `log2(dim)` qubits, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix<T: Real> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> GateMatrix<T> {
    /// Build from row-major entries; `dim` must be a power of two and
    /// `data.len() == dim * dim`.
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self, SimError> {
        if !dim.is_power_of_two() || data.len() != dim * dim {
            return Err(SimError::SizeMismatch);
        }
        Ok(GateMatrix { dim, data })
    }

    /// Identity of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        GateMatrix { dim, data }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of target qubits (`log2(dim)`).
    pub fn n_targets(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    /// Entry at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    /// Mutable entry access.
    pub fn set(&mut self, row: usize, col: usize, v: Complex<T>) {
        self.data[row * self.dim + col] = v;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::identity(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conjugate(&self) -> Self {
        GateMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self, SimError> {
        if self.dim != other.dim {
            return Err(SimError::SizeMismatch);
        }
        let mut out = Self::identity(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..self.dim {
                    acc = acc + self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Max-entry deviation of `self^dagger self` from the identity.
    pub fn unitarity_residual(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..self.dim {
                    acc = acc + self.get(k, r).conj() * self.get(k, c);
                }
                let expect = if r == c { T::one() } else { T::zero() };
                let dev = (acc - Complex::new(expect, T::zero())).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Whether `gate` is unitary to tolerance `tol`.
pub fn check_unitary<T: Real>(gate: &GateMatrix<T>, tol: T) -> bool {
    gate.unitarity_residual() < tol
}

/// One gate application: a matrix on `targets`, optionally conditioned on
/// `controls` holding `control_values`.
///
/// `targets[0]` is the most significant bit of the gate's row/column index.
/// The `name`/`variant`/`stage`/`legs` fields are metadata used in circuit
/// dumps; `cancelled` marks an operation that is recorded (for provenance)
/// but skipped during execution because it cancels exactly against its
/// neighbour.
#[derive(Clone, Debug)]
pub struct CircuitOp<T: Real> {
    /// Gate vocabulary name (e.g. `"X"`, `"S"`, `"fmove"`).
    pub name: String,
    /// Optional qualifier (e.g. `"conjugate"`, `"cancelled"`, F-move variant).
    pub variant: Option<String>,
    /// The matrix to apply.
    pub gate: GateMatrix<T>,
    /// Target qubits (0-based; `targets[0]` = most significant).
    pub targets: Vec<usize>,
    /// Control qubits.
    pub controls: Vec<usize>,
    /// Required control values (same length as `controls`).
    pub control_values: Vec<u8>,
    /// Protocol stage this op belongs to.
    pub stage: Option<String>,
    /// F-move leg qubits (with repeats), for dump/replay of F-moves.
    pub legs: Option<Vec<usize>>,
    /// Recorded but not executed.
    pub cancelled: bool,
}

impl<T: Real> CircuitOp<T> {
    /// Uncontrolled op.
    pub fn new(name: &str, gate: GateMatrix<T>, targets: Vec<usize>) -> Self {
        CircuitOp {
            name: name.to_string(),
            variant: None,
            gate,
            targets,
            controls: Vec::new(),
            control_values: Vec::new(),
            stage: None,
            legs: None,
            cancelled: false,
        }
    }

    /// Add controls.
    pub fn with_controls(mut self, controls: Vec<usize>, values: Vec<u8>) -> Self {
        self.controls = controls;
        self.control_values = values;
        self
    }

    /// Set the stage label.
    pub fn with_stage(mut self, stage: &str) -> Self {
        self.stage = Some(stage.to_string());
        self
    }

    /// Set the variant label.
    pub fn with_variant(mut self, variant: &str) -> Self {
        self.variant = Some(variant.to_string());
        self
    }
}

/// A sequence of operations on a fixed-size register.
#[derive(Clone, Debug)]
pub struct Circuit<T: Real> {
    /// Register size.
    pub n_qubits: usize,
    /// Operations in execution order.
    pub ops: Vec<CircuitOp<T>>,
}

fn validate_op<T: Real>(n_qubits: usize, op: &CircuitOp<T>) -> Result<(), SimError> {
    let k = op.targets.len();
    if op.gate.dim() != 1usize << k {
        return Err(SimError::DimensionMismatch {
            dim: op.gate.dim(),
            targets: k,
        });
    }
    if op.control_values.len() != op.controls.len() {
        return Err(SimError::ControlMismatch);
    }
    let mut seen = vec![false; n_qubits];
    for &q in op.targets.iter().chain(op.controls.iter()) {
        if q >= n_qubits {
            return Err(SimError::QubitOutOfRange(q));
        }
        if seen[q] {
            return Err(SimError::OverlappingQubits);
        }
        seen[q] = true;
    }
    Ok(())
}

/// Apply one operation to a state. Cancelled ops are skipped.
pub fn apply_op<T: Real>(
    state: &StateVector<T>,
    op: &CircuitOp<T>,
) -> Result<StateVector<T>, SimError> {
    if op.cancelled {
        return Ok(state.clone());
    }
    let n = state.n_qubits;
    validate_op(n, op)?;
    let k = op.targets.len();
    let sub_dim = 1usize << k;
    let masks: Vec<usize> = op.targets.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let tmask: usize = masks.iter().fold(0, |acc, m| acc | m);
    let cmasks: Vec<usize> = op.controls.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let mut amps = state.amps.clone();
    let mut sub = vec![Complex::new(T::zero(), T::zero()); sub_dim];
    for base in 0..amps.len() {
        if base & tmask != 0 {
            continue;
        }
        let controls_ok = cmasks
            .iter()
            .zip(op.control_values.iter())
            .all(|(&m, &v)| ((base & m != 0) as u8) == v);
        if !controls_ok {
            continue;
        }
        for (s, slot) in sub.iter_mut().enumerate() {
            let mut j = base;
            for (i, &m) in masks.iter().enumerate() {
                if (s >> (k - 1 - i)) & 1 == 1 {
                    j |= m;
                }
            }
            *slot = state.amps[j];
        }
        for r in 0..sub_dim {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (c, &amp) in sub.iter().enumerate() {
                acc = acc + op.gate.get(r, c) * amp;
            }
            let mut j = base;
            for (i, &m) in masks.iter().enumerate() {
                if (r >> (k - 1 - i)) & 1 == 1 {
                    j |= m;
                }
            }
            amps[j] = acc;
        }
    }
    Ok(StateVector { n_qubits: n, amps })
}

/// Run a whole circuit.
pub fn run_circuit<T: Real>(
    state: &StateVector<T>,
    circuit: &Circuit<T>,
) -> Result<StateVector<T>, SimError> {
    if circuit.n_qubits != state.n_qubits {
        return Err(SimError::SizeMismatch);
    }
    let mut st = state.clone();
    for op in &circuit.ops {
        st = apply_op(&st, op)?;
    }
    Ok(st)
}

/// Sample computational-basis measurement outcomes of `qubits` (in the given
/// order). Deterministic for a fixed seed: uses a ChaCha8 stream seeded from
/// `seed` and inverse-CDF sampling of the exact outcome distribution.
///
/// Keys are bitstrings, e.g. `"010"`.
pub fn sample_counts<T: Real>(
    state: &StateVector<T>,
    qubits: &[usize],
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<String, u64>, SimError> {
    let n = state.n_qubits;
    let k = qubits.len();
    for &q in qubits {
        if q >= n {
            return Err(SimError::QubitOutOfRange(q));
        }
    }
    let mut probs = vec![0f64; 1usize << k];
    for (idx, a) in state.amps.iter().enumerate() {
        let mut m = 0usize;
        for &q in qubits {
            m = (m << 1) | bit_of(idx, n, q) as usize;
        }
        probs[m] += a
            .norm_sqr()
            .to_f64()
            .expect("probability representable as f64");
    }
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0f64;
    for p in &probs {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..shots {
        let r: f64 = rng.gen::<f64>() * total;
        let outcome = cdf.partition_point(|&c| c <= r).min(probs.len() - 1);
        let key: String = (0..k)
            .map(|i| {
                if (outcome >> (k - 1 - i)) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(counts)
}
