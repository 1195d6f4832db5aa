//! Named gates and F-move unitaries.
//!
//! All fixed matrices are built from the golden ratio `phi` and the phase
//! `xi = e^{3 pi i/5}`. The F-move unitaries act on lattice edge qubits and
//! are assembled block-by-block from the F-symbol table, so corrupted tables
//! propagate into them.

use crate::anyon::{
    admissible, doubled_twist, golden_ratio, total_quantum_dimension, AnyonLabel, CategoryData,
    DoubledLabel, FSymbolTable,
};
use crate::sim::{GateMatrix, SimError};
use crate::{real, Complex, Real};
use thiserror::Error;

/// Errors from gate construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GateError {
    /// F-move internal qubit listed among the legs.
    #[error("the internal qubit of an F-move must not appear among its legs")]
    InternalAmongLegs,
    /// All four legs coincide.
    #[error("an F-move needs at least two distinct leg qubits")]
    DegenerateLegs,
}

/// Names of the fixed gates.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GateName {
    /// Pauli X.
    X,
    /// Hadamard.
    H,
    /// Controlled NOT (2-qubit; first target is the control).
    Cnot,
    /// The Fibonacci F matrix.
    F,
    /// The tadpole-head preparation gate `S = (1/D) [[1, phi], [phi, -1]]`.
    S,
    /// The chiral head gate `U`.
    U,
    /// The simplification gate `L`.
    L,
    /// The braiding filter gate `F~`.
    FTilde,
    /// The twist filter gate `M` (with its `1/sqrt 2` normalization).
    M,
}

impl GateName {
    /// Canonical printable name.
    pub fn as_str(self) -> &'static str {
        match self {
            GateName::X => "X",
            GateName::H => "H",
            GateName::Cnot => "CNOT",
            GateName::F => "F",
            GateName::S => "S",
            GateName::U => "U",
            GateName::L => "L",
            GateName::FTilde => "Ftilde",
            GateName::M => "M",
        }
    }

    /// Inverse of [`GateName::as_str`].
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "X" => GateName::X,
            "H" => GateName::H,
            "CNOT" => GateName::Cnot,
            "F" => GateName::F,
            "S" => GateName::S,
            "U" => GateName::U,
            "L" => GateName::L,
            "Ftilde" => GateName::FTilde,
            "M" => GateName::M,
            _ => return None,
        })
    }

    /// All named gates.
    pub const ALL: [GateName; 9] = [
        GateName::X,
        GateName::H,
        GateName::Cnot,
        GateName::F,
        GateName::S,
        GateName::U,
        GateName::L,
        GateName::FTilde,
        GateName::M,
    ];
}

fn xi_pow<T: Real>(k: i32) -> Complex<T> {
    Complex::from_polar(
        T::one(),
        real::<T>(3.0 * k as f64) * T::PI() / real::<T>(5.0),
    )
}

fn g2<T: Real>(entries: [Complex<T>; 4]) -> GateMatrix<T> {
    GateMatrix::new(2, entries.to_vec()).expect("2x2")
}

fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Matrix of a named gate.
pub fn named_gate<T: Real>(name: GateName) -> GateMatrix<T> {
    let phi: T = golden_ratio();
    let sq = phi.sqrt();
    let one = T::one();
    match name {
        GateName::X => g2([re(T::zero()), re(one), re(one), re(T::zero())]),
        GateName::H => {
            let h = one / real::<T>(2.0).sqrt();
            g2([re(h), re(h), re(h), re(-h)])
        }
        GateName::Cnot => {
            let mut m = GateMatrix::identity(4);
            m.set(2, 2, re(T::zero()));
            m.set(3, 3, re(T::zero()));
            m.set(2, 3, re(one));
            m.set(3, 2, re(one));
            m
        }
        GateName::F => g2([re(one / phi), re(one / sq), re(one / sq), re(-one / phi)]),
        GateName::S => {
            let d: T = total_quantum_dimension();
            g2([re(one / d), re(phi / d), re(phi / d), re(-one / d)])
        }
        GateName::U => g2([
            xi_pow(-1).scale(one / sq),
            xi_pow(2).scale(one / phi),
            -xi_pow(-2).scale(one / phi),
            xi_pow(1).scale(one / sq),
        ]),
        GateName::L => g2([re(one / sq), re(-one / phi), re(-one / phi), re(-one / sq)]),
        GateName::FTilde => g2([
            xi_pow(2).scale(one / phi),
            xi_pow(1).scale(one / sq),
            xi_pow(-1).scale(one / sq),
            -xi_pow(-2).scale(one / phi),
        ]),
        GateName::M => {
            let h = one / real::<T>(2.0).sqrt();
            let p = Complex::from_polar(T::one(), real::<T>(4.0) * T::PI() / real::<T>(5.0));
            g2([re(h), p.scale(h), p.conj().scale(h), re(-h)])
        }
    }
}

/// F-move variants, classified by the number of distinct outer legs.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FMoveVariant {
    /// Four distinct legs plus the internal qubit.
    FiveInput,
    /// Three distinct legs (one repeated) plus the internal qubit.
    FourInput,
    /// Two distinct legs (both repeated) plus the internal qubit.
    ThreeInput,
    /// The tail-exchange move in register coordinates (four qubits).
    TailSwapFourInput,
}

impl FMoveVariant {
    /// Canonical printable name.
    pub fn as_str(self) -> &'static str {
        match self {
            FMoveVariant::FiveInput => "five-input",
            FMoveVariant::FourInput => "four-input",
            FMoveVariant::ThreeInput => "three-input",
            FMoveVariant::TailSwapFourInput => "tail-swap-four-input",
        }
    }

    /// Inverse of [`FMoveVariant::as_str`].
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "five-input" => FMoveVariant::FiveInput,
            "four-input" => FMoveVariant::FourInput,
            "three-input" => FMoveVariant::ThreeInput,
            "tail-swap-four-input" => FMoveVariant::TailSwapFourInput,
            _ => return None,
        })
    }
}

/// Specification of one F-move.
///
/// `legs = (a, b, c, d)` are the leg qubits read around the move: `(a, b)`
/// meet the internal edge at one endpoint and `(c, d)` at the other, with
/// post-move pairings `{a, d}` and `{b, c}`. Legs may repeat (the same edge
/// appearing twice); the internal qubit must be distinct from all legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMoveSpec {
    /// Leg qubits, possibly with repeats.
    pub legs: [usize; 4],
    /// The internal (recoupled) edge qubit.
    pub internal: usize,
    /// Classification of the move.
    pub variant: FMoveVariant,
}

impl FMoveSpec {
    /// Build a spec, deriving the variant from the number of distinct legs.
    pub fn new(legs: [usize; 4], internal: usize) -> Result<Self, GateError> {
        if legs.contains(&internal) {
            return Err(GateError::InternalAmongLegs);
        }
        let mut distinct: Vec<usize> = Vec::new();
        for &l in &legs {
            if !distinct.contains(&l) {
                distinct.push(l);
            }
        }
        let variant = match distinct.len() {
            4 => FMoveVariant::FiveInput,
            3 => FMoveVariant::FourInput,
            2 => FMoveVariant::ThreeInput,
            _ => return Err(GateError::DegenerateLegs),
        };
        Ok(FMoveSpec {
            legs,
            internal,
            variant,
        })
    }

    /// Spec for the tail-exchange move on four register qubits.
    pub fn tail_swap(qubits: [usize; 4]) -> Self {
        FMoveSpec {
            legs: qubits,
            internal: qubits[3],
            variant: FMoveVariant::TailSwapFourInput,
        }
    }

    /// The distinct qubits the move acts on, in matrix bit order (most
    /// significant first): distinct legs in order of first appearance, then
    /// the internal qubit. For the tail-swap variant, the four register
    /// qubits as given.
    pub fn wires(&self) -> Vec<usize> {
        if self.variant == FMoveVariant::TailSwapFourInput {
            return self.legs.to_vec();
        }
        let mut wires: Vec<usize> = Vec::new();
        for &l in &self.legs {
            if !wires.contains(&l) {
                wires.push(l);
            }
        }
        wires.push(self.internal);
        wires
    }
}

/// 2x2 block acting on the internal qubit for fixed leg values
/// `(a, b, c, d)`: entry `[f][e]`. Inadmissible inputs act as the identity.
fn fmove_block<T: Real>(
    table: &FSymbolTable<T>,
    a: AnyonLabel,
    b: AnyonLabel,
    c: AnyonLabel,
    d: AnyonLabel,
) -> [[Complex<T>; 2]; 2] {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    use AnyonLabel::Tau;
    if a == Tau && b == Tau && c == Tau && d == Tau {
        let mut blk = [[zero; 2]; 2];
        for (ei, e) in AnyonLabel::ALL.into_iter().enumerate() {
            for (fi, f) in AnyonLabel::ALL.into_iter().enumerate() {
                blk[fi][ei] = table.get(a, b, d, c, e, f);
            }
        }
        return blk;
    }
    let eadm: Vec<AnyonLabel> = AnyonLabel::ALL
        .into_iter()
        .filter(|&e| admissible(a, b, e) && admissible(c, d, e))
        .collect();
    let fadm: Vec<AnyonLabel> = AnyonLabel::ALL
        .into_iter()
        .filter(|&f| admissible(a, d, f) && admissible(b, c, f))
        .collect();
    let mut blk = [[zero; 2], [zero; 2]];
    if eadm.len() == 1 && fadm.len() == 1 {
        let (e, f) = (eadm[0], fadm[0]);
        if e == f {
            blk[0][0] = one;
            blk[1][1] = one;
        } else {
            let v = table.get(a, b, d, c, e, f);
            blk[f.bit()][e.bit()] = v;
            blk[e.bit()][f.bit()] = v;
        }
    } else {
        blk[0][0] = one;
        blk[1][1] = one;
    }
    blk
}

/// Unitary realizing an F-move on the spec's distinct qubits (see
/// [`FMoveSpec::wires`] for the bit order).
pub fn fmove_unitary<T: Real>(spec: &FMoveSpec, table: &FSymbolTable<T>) -> GateMatrix<T> {
    if spec.variant == FMoveVariant::TailSwapFourInput {
        return tail_swap_unitary(&CategoryData::standard());
    }
    let wires = spec.wires();
    let k = wires.len();
    let dim = 1usize << k;
    let pos = |q: usize| wires.iter().position(|&w| w == q).expect("leg in wires");
    let leg_pos: Vec<usize> = spec.legs.iter().map(|&l| pos(l)).collect();
    let mut m = GateMatrix::identity(dim);
    for col in 0..dim {
        let val = |p: usize| AnyonLabel::from_bit((col >> (k - 1 - p)) & 1);
        let (a, b, c, d) = (
            val(leg_pos[0]),
            val(leg_pos[1]),
            val(leg_pos[2]),
            val(leg_pos[3]),
        );
        let blk = fmove_block(table, a, b, c, d);
        let e_in = col & 1;
        let base = col & !1usize;
        m.set(base, col, blk[0][e_in]);
        m.set(base | 1, col, blk[1][e_in]);
    }
    m
}

/// The seven reference charge patterns of a generalized tadpole, as 16-dim
/// vectors over qubits `(h1, h2, t_out, t_in)` (most significant first).
///
/// `chirality = +1` is the standard handedness; `-1` conjugates the chiral
/// phases (swapping the roles of `tau 1` and `1 taubar`).
pub fn charge_patterns<T: Real>(chirality: i8) -> Vec<(DoubledLabel, Vec<Complex<T>>)> {
    use AnyonLabel::{One, Tau};
    let phi: T = golden_ratio();
    let d: T = total_quantum_dimension();
    let sq = phi.sqrt();
    let x: Complex<T> = if chirality >= 0 { xi_pow(1) } else { xi_pow(-1) };
    let zero = Complex::new(T::zero(), T::zero());
    let mk = |terms: &[(usize, Complex<T>)]| {
        let mut v = vec![zero; 16];
        for &(i, a) in terms {
            v[i] = a;
        }
        v
    };
    vec![
        (
            DoubledLabel::new(One, One),
            mk(&[(0b0000, re(T::one() / d)), (0b1100, re(phi / d))]),
        ),
        (
            DoubledLabel::new(Tau, One),
            mk(&[
                (0b0111, re(T::one() / d)),
                (0b1011, (x * x).scale(T::one() / d)),
                (0b1111, x.scale(sq / d)),
            ]),
        ),
        (
            DoubledLabel::new(One, Tau),
            mk(&[
                (0b0111, re(T::one() / d)),
                (0b1011, (x * x).conj().scale(T::one() / d)),
                (0b1111, x.conj().scale(sq / d)),
            ]),
        ),
        (
            DoubledLabel::tau_taubar_component(One, One),
            mk(&[(0b0000, re(phi / d)), (0b1100, re(-T::one() / d))]),
        ),
        (
            DoubledLabel::tau_taubar_component(One, Tau),
            mk(&[(0b1110, re(T::one()))]),
        ),
        (
            DoubledLabel::tau_taubar_component(Tau, One),
            mk(&[(0b1101, re(T::one()))]),
        ),
        (
            DoubledLabel::tau_taubar_component(Tau, Tau),
            mk(&[
                (0b0111, re(sq / d)),
                (0b1011, re(sq / d)),
                (0b1111, re(T::one() / (d * phi))),
            ]),
        ),
    ]
}

/// The tail-exchange unitary on a generalized tadpole, diagonal in the
/// charge-pattern basis of [`charge_patterns`] (order `h1, h2, t_out,
/// t_in`): each charge sector acquires its doubled twist, and the
/// complement of the string-net subspace is left untouched.
pub fn tail_exchange_unitary<T: Real>(_data: &CategoryData<T>) -> GateMatrix<T> {
    let mut m = GateMatrix::identity(16);
    for (label, pat) in charge_patterns::<T>(1) {
        let theta = doubled_twist::<T>(label);
        let w = theta - Complex::new(T::one(), T::zero());
        for r in 0..16 {
            for c in 0..16 {
                let add = w * pat[r] * pat[c].conj();
                m.set(r, c, m.get(r, c) + add);
            }
        }
    }
    m
}

/// The tail-exchange unitary conjugated into the four-qubit register
/// coordinates used by the twist protocol, where the pattern slots
/// `(h1, h2, t_out, t_in)` are read as `(q3, q2, NOT q0, NOT q1)`.
pub fn tail_swap_unitary<T: Real>(data: &CategoryData<T>) -> GateMatrix<T> {
    let w = tail_exchange_unitary(data);
    let map = |i: usize| -> usize {
        let q = |j: usize| (i >> (3 - j)) & 1;
        (q(3) << 3) | (q(2) << 2) | ((1 - q(0)) << 1) | (1 - q(1))
    };
    let mut out = GateMatrix::identity(16);
    for r in 0..16 {
        for c in 0..16 {
            out.set(r, c, w.get(map(r), map(c)));
        }
    }
    out
}

/// Controlled version of a gate: the control qubits become the leading
/// (most significant) qubits, and the gate acts only when they match
/// `control_values`.
pub fn controlled<T: Real>(
    gate: &GateMatrix<T>,
    control_values: &[u8],
) -> Result<GateMatrix<T>, SimError> {
    let nc = control_values.len();
    let dim = gate.dim() << nc;
    let mut pattern = 0usize;
    for &v in control_values {
        pattern = (pattern << 1) | v as usize;
    }
    let offset = pattern * gate.dim();
    let mut out = GateMatrix::identity(dim);
    for r in 0..gate.dim() {
        for c in 0..gate.dim() {
            out.set(offset + r, offset + c, gate.get(r, c));
        }
    }
    Ok(out)
}
