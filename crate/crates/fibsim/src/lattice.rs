//! Trivalent string-net lattices as combinatorial maps.
//!
//! A lattice is stored as a rotation system: a permutation `sigma` on darts
//! (edge ends), where `sigma(d)` is the next dart counterclockwise around
//! the vertex of `d`. Free tail ends are fixed points of `sigma`. Faces are
//! the orbits of `d -> sigma(alpha(d))` with `alpha` the end-swap
//! involution; Euler's formula `V - E + F = 2` holds for every built-in
//! lattice.
//!
//! Edge `i` (1-based id) carries qubit `i - 1` (0-based register index).

use crate::anyon::{DoubledLabel, FSymbolTable};
use crate::gates::{charge_patterns, fmove_unitary, FMoveSpec, GateError};
use crate::sim::{apply_op, bit_of, CircuitOp, SimError, StateVector};
use crate::{Complex, Real};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

/// An edge end: `(edge id, end)` with `end` 0 or 1.
pub type Dart = (u32, u8);

fn alpha(d: Dart) -> Dart {
    (d.0, 1 - d.1)
}

/// Errors from lattice operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    /// Unknown edge id.
    #[error("edge {0} does not exist")]
    EdgeNotFound(u32),
    /// F-move requested on an edge that does not admit one.
    #[error("edge {0} does not admit an F-move")]
    NotMovable(u32),
    /// Vertex index out of range.
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    /// Plaquette index out of range.
    #[error("plaquette {0} out of range")]
    PlaquetteOutOfRange(usize),
    /// The edge is not on the boundary of the plaquette.
    #[error("edge {edge} is not adjacent to plaquette {plaquette}")]
    NotAdjacent { edge: u32, plaquette: usize },
    /// No stored reduction plan for this lattice kind and nesting order.
    #[error("no reduction plan for the requested plaquette nesting")]
    UnsupportedNesting,
    /// The designated tadpole has no supported charge readout.
    #[error("charge readout is not supported for this tadpole")]
    UnsupportedReadout,
    /// No tadpole reference state for this label.
    #[error("no tadpole reference state for this charge label")]
    UnsupportedCharge,
    /// State register does not match the lattice.
    #[error("state register size does not match the lattice")]
    RegisterMismatch,
    /// Planner failed to reduce a plaquette (should not happen for the
    /// built-in lattices).
    #[error("no reduction to a tadpole found for the plaquette")]
    NoPlanFound,
    /// Underlying simulator error.
    #[error(transparent)]
    Sim(#[from] SimError),
    /// Underlying gate-construction error.
    #[error(transparent)]
    Gate(#[from] GateError),
}

/// The built-in lattice kinds.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    /// One edge forming a loop at a single vertex (1 qubit).
    SingleEdge,
    /// The theta graph: two vertices joined by three edges (3 qubits).
    Theta,
    /// The tetrahedron graph (6 qubits).
    Tetrahedron,
    /// A loop with an inward and an outward free tail (4 qubits).
    GeneralizedTadpole,
    /// The theta graph with a free tail on each plaquette (9 qubits).
    TailedTheta,
    /// The tetrahedron graph with a free tail on each plaquette (14 qubits).
    TailedTetrahedron,
}

impl LatticeKind {
    /// All kinds, in order.
    pub const ALL: [LatticeKind; 6] = [
        LatticeKind::SingleEdge,
        LatticeKind::Theta,
        LatticeKind::Tetrahedron,
        LatticeKind::GeneralizedTadpole,
        LatticeKind::TailedTheta,
        LatticeKind::TailedTetrahedron,
    ];

    /// Canonical printable name.
    pub fn as_str(self) -> &'static str {
        match self {
            LatticeKind::SingleEdge => "single-edge",
            LatticeKind::Theta => "theta",
            LatticeKind::Tetrahedron => "tetrahedron",
            LatticeKind::GeneralizedTadpole => "generalized-tadpole",
            LatticeKind::TailedTheta => "tailed-theta",
            LatticeKind::TailedTetrahedron => "tailed-tetrahedron",
        }
    }

    /// Inverse of [`LatticeKind::as_str`].
    pub fn parse(s: &str) -> Option<Self> {
        LatticeKind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

/// One plaquette: its 1-based id, boundary edges in face-walk order, and any
/// free-tail edges ending inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plaquette {
    /// 1-based plaquette id (`p1`, `p2`, ...).
    pub id: usize,
    /// Boundary edge ids in face-walk order (tails excluded).
    pub boundary: Vec<u32>,
    /// Free-tail edges inside this plaquette.
    pub tails: Vec<u32>,
}

/// A string-net lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    /// The kind this lattice was built from (fixed across F-moves).
    pub kind: LatticeKind,
    sigma: BTreeMap<Dart, Dart>,
    /// Representative dart of each plaquette, fixing the id order.
    reps: Vec<Dart>,
}

fn sigma_from(pairs: &[(Dart, Dart)]) -> BTreeMap<Dart, Dart> {
    pairs.iter().copied().collect()
}

/// Build the canonical lattice of a kind.
pub fn build_lattice(kind: LatticeKind) -> Lattice {
    let (sigma, reps): (Vec<(Dart, Dart)>, Vec<Dart>) = match kind {
        LatticeKind::SingleEdge => (vec![((1, 0), (1, 1)), ((1, 1), (1, 0))], vec![(1, 0), (1, 1)]),
        LatticeKind::Theta => (
            vec![
                ((1, 0), (2, 1)),
                ((1, 1), (3, 0)),
                ((2, 0), (1, 1)),
                ((2, 1), (3, 1)),
                ((3, 0), (2, 0)),
                ((3, 1), (1, 0)),
            ],
            vec![(3, 1), (1, 1), (1, 0)],
        ),
        LatticeKind::Tetrahedron => (
            vec![
                ((1, 0), (2, 1)),
                ((1, 1), (4, 1)),
                ((2, 0), (5, 1)),
                ((2, 1), (3, 1)),
                ((3, 0), (6, 1)),
                ((3, 1), (1, 0)),
                ((4, 0), (3, 0)),
                ((4, 1), (5, 0)),
                ((5, 0), (1, 1)),
                ((5, 1), (6, 0)),
                ((6, 0), (2, 0)),
                ((6, 1), (4, 0)),
            ],
            vec![(1, 0), (4, 0), (2, 0), (1, 1)],
        ),
        LatticeKind::GeneralizedTadpole => (
            vec![
                ((1, 0), (2, 0)),
                ((2, 0), (4, 0)),
                ((4, 0), (1, 0)),
                ((1, 1), (2, 1)),
                ((2, 1), (3, 0)),
                ((3, 0), (1, 1)),
                ((3, 1), (3, 1)),
                ((4, 1), (4, 1)),
            ],
            vec![(4, 0), (3, 0)],
        ),
        LatticeKind::TailedTheta => (
            vec![
                ((1, 0), (7, 0)),
                ((1, 1), (5, 0)),
                ((2, 0), (1, 0)),
                ((2, 1), (4, 1)),
                ((3, 0), (8, 0)),
                ((3, 1), (1, 1)),
                ((4, 0), (3, 0)),
                ((4, 1), (6, 1)),
                ((5, 0), (3, 1)),
                ((5, 1), (9, 0)),
                ((6, 0), (5, 1)),
                ((6, 1), (2, 1)),
                ((7, 0), (2, 0)),
                ((7, 1), (7, 1)),
                ((8, 0), (4, 0)),
                ((8, 1), (8, 1)),
                ((9, 0), (6, 0)),
                ((9, 1), (9, 1)),
            ],
            vec![(7, 0), (8, 0), (9, 0)],
        ),
        LatticeKind::TailedTetrahedron => (
            vec![
                ((1, 0), (9, 1)),
                ((1, 1), (14, 0)),
                ((2, 0), (7, 1)),
                ((2, 1), (13, 0)),
                ((3, 0), (8, 1)),
                ((3, 1), (1, 0)),
                ((4, 0), (3, 0)),
                ((4, 1), (5, 0)),
                ((5, 0), (10, 1)),
                ((5, 1), (7, 0)),
                ((6, 0), (2, 0)),
                ((6, 1), (12, 0)),
                ((7, 0), (11, 0)),
                ((7, 1), (6, 0)),
                ((8, 0), (6, 1)),
                ((8, 1), (4, 0)),
                ((9, 0), (2, 1)),
                ((9, 1), (3, 1)),
                ((10, 0), (1, 1)),
                ((10, 1), (4, 1)),
                ((11, 0), (5, 1)),
                ((11, 1), (11, 1)),
                ((12, 0), (8, 0)),
                ((12, 1), (12, 1)),
                ((13, 0), (9, 0)),
                ((13, 1), (13, 1)),
                ((14, 0), (10, 0)),
                ((14, 1), (14, 1)),
            ],
            vec![(11, 0), (12, 0), (13, 0), (14, 0)],
        ),
    };
    Lattice {
        kind,
        sigma: sigma_from(&sigma),
        reps,
    }
}

impl Lattice {
    /// Build directly from a rotation system (plaquette reps fix the id
    /// order; they must lie in distinct faces).
    pub fn from_sigma(kind: LatticeKind, sigma: BTreeMap<Dart, Dart>, reps: Vec<Dart>) -> Self {
        Lattice { kind, sigma, reps }
    }

    /// The rotation permutation.
    pub fn sigma(&self) -> &BTreeMap<Dart, Dart> {
        &self.sigma
    }

    /// Edge ids with their qubit indices: qubit = id - 1.
    pub fn edges(&self) -> Vec<(u32, usize)> {
        let ids: BTreeSet<u32> = self.sigma.keys().map(|d| d.0).collect();
        ids.into_iter().map(|e| (e, (e - 1) as usize)).collect()
    }

    /// Number of qubits (= number of edges).
    pub fn n_qubits(&self) -> usize {
        self.edges().len()
    }

    /// Whether edge `e` has a free (1-valent) end.
    pub fn is_free_tail(&self, e: u32) -> bool {
        self.sigma.get(&(e, 0)) == Some(&(e, 0)) || self.sigma.get(&(e, 1)) == Some(&(e, 1))
    }

    /// Whether any edge is a free tail.
    pub fn has_free_tails(&self) -> bool {
        self.edges().iter().any(|&(e, _)| self.is_free_tail(e))
    }

    /// Darts at the same vertex as `d` (the `sigma` orbit of `d`).
    pub fn vertex_of(&self, d: Dart) -> Vec<Dart> {
        let mut orb = vec![d];
        let mut x = self.sigma[&d];
        while x != d {
            orb.push(x);
            x = self.sigma[&x];
        }
        orb
    }

    /// All vertices, as dart orbits.
    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut out = Vec::new();
        for &d in self.sigma.keys() {
            if seen.contains(&d) {
                continue;
            }
            let orb = self.vertex_of(d);
            seen.extend(orb.iter().copied());
            out.push(orb);
        }
        out
    }

    /// All faces, as dart walks (orbits of `d -> sigma(alpha(d))`).
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut out = Vec::new();
        for &d0 in self.sigma.keys() {
            if seen.contains(&d0) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = d0;
            while !seen.contains(&d) {
                seen.insert(d);
                face.push(d);
                d = self.sigma[&alpha(d)];
            }
            out.push(face);
        }
        out
    }

    /// The face (as a dart set) containing `rep`.
    fn face_containing(&self, rep: Dart) -> BTreeSet<Dart> {
        for f in self.faces() {
            if f.contains(&rep) {
                return f.into_iter().collect();
            }
        }
        unreachable!("representative dart not in any face")
    }

    /// Plaquettes in id order (`p1` = index 0 of the rep list).
    pub fn plaquettes(&self) -> Vec<Plaquette> {
        self.reps
            .iter()
            .enumerate()
            .map(|(i, &rep)| {
                let face = self.face_walk(rep);
                let mut boundary = Vec::new();
                let mut tails = Vec::new();
                for d in &face {
                    if self.is_free_tail(d.0) {
                        if !tails.contains(&d.0) {
                            tails.push(d.0);
                        }
                    } else if !boundary.contains(&d.0) {
                        boundary.push(d.0);
                    }
                }
                Plaquette {
                    id: i + 1,
                    boundary,
                    tails,
                }
            })
            .collect()
    }

    fn face_walk(&self, rep: Dart) -> Vec<Dart> {
        let mut face = vec![rep];
        let mut d = self.sigma[&alpha(rep)];
        while d != rep {
            face.push(d);
            d = self.sigma[&alpha(d)];
        }
        face
    }

    /// Euler characteristic `V - E + F` (2 for every built-in lattice).
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices().len() as i64;
        let e = self.edges().len() as i64;
        let f = self.faces().len() as i64;
        v - e + f
    }

    /// Whether an F-move can be applied to edge `e` (both endpoints
    /// trivalent and distinct, and `e` is not a loop).
    pub fn movable(&self, e: u32) -> bool {
        let (d0, d1) = ((e, 0u8), (e, 1u8));
        if !self.sigma.contains_key(&d0) {
            return false;
        }
        let v0 = self.vertex_of(d0);
        v0.len() == 3 && self.vertex_of(d1).len() == 3 && self.sigma[&d0] != d1 && !v0.contains(&d1)
    }

    /// Apply an F-move to edge `e`; returns the new lattice and the leg
    /// edges `(a, b, c, d)`, where `(a, b)` sit at one endpoint and
    /// `(c, d)` at the other before the move.
    pub fn fmove(&self, e: u32) -> Result<(Lattice, [u32; 4]), LatticeError> {
        if !self.sigma.contains_key(&(e, 0)) {
            return Err(LatticeError::EdgeNotFound(e));
        }
        if !self.movable(e) {
            return Err(LatticeError::NotMovable(e));
        }
        let (d0, d1) = ((e, 0u8), (e, 1u8));
        let mut s = self.sigma.clone();
        let b = s[&d0];
        let a = s[&b];
        let dd = s[&d1];
        let c = s[&dd];
        s.insert(d0, a);
        s.insert(a, dd);
        s.insert(dd, d0);
        s.insert(d1, c);
        s.insert(c, b);
        s.insert(b, d1);
        Ok((
            Lattice {
                kind: self.kind,
                sigma: s,
                reps: self.reps.clone(),
            },
            [a.0, b.0, c.0, dd.0],
        ))
    }

    /// Map a face of `self` (given as a dart set) to the corresponding face
    /// after an F-move on `e` produced `post`. F-moves never split or merge
    /// faces, so the image is the unique face of `post` containing all
    /// non-`e` darts of the input face.
    pub fn track_face(
        &self,
        post: &Lattice,
        face: &BTreeSet<Dart>,
        e: u32,
    ) -> Result<BTreeSet<Dart>, LatticeError> {
        let core: BTreeSet<Dart> = face.iter().copied().filter(|d| d.0 != e).collect();
        let mut found: Option<BTreeSet<Dart>> = None;
        for f in post.faces() {
            let fs: BTreeSet<Dart> = f.into_iter().collect();
            if core.is_subset(&fs) {
                if found.is_some() {
                    return Err(LatticeError::NoPlanFound);
                }
                found = Some(fs);
            }
        }
        found.ok_or(LatticeError::NoPlanFound)
    }
}

/// Circuit operation realizing an F-move on edge `edge` with leg edges
/// `legs` (all 1-based edge ids).
pub fn fmove_circuit_op<T: Real>(
    edge: u32,
    legs: [u32; 4],
    table: &FSymbolTable<T>,
) -> Result<CircuitOp<T>, LatticeError> {
    let leg_qubits = [
        (legs[0] - 1) as usize,
        (legs[1] - 1) as usize,
        (legs[2] - 1) as usize,
        (legs[3] - 1) as usize,
    ];
    let spec = FMoveSpec::new(leg_qubits, (edge - 1) as usize)?;
    let gate = fmove_unitary(&spec, table);
    let mut op = CircuitOp::new("fmove", gate, spec.wires());
    op.variant = Some(spec.variant.as_str().to_string());
    op.legs = Some(leg_qubits.to_vec());
    Ok(op)
}

/// Apply an F-move to both the lattice and a state living on it.
pub fn apply_fmove<T: Real>(
    state: &StateVector<T>,
    lattice: &Lattice,
    edge: u32,
    table: &FSymbolTable<T>,
) -> Result<(StateVector<T>, Lattice, FMoveSpec), LatticeError> {
    if state.n_qubits() != lattice.n_qubits() {
        return Err(LatticeError::RegisterMismatch);
    }
    let (post, legs) = lattice.fmove(edge)?;
    let op = fmove_circuit_op(edge, legs, table)?;
    let spec = FMoveSpec::new(
        [
            (legs[0] - 1) as usize,
            (legs[1] - 1) as usize,
            (legs[2] - 1) as usize,
            (legs[3] - 1) as usize,
        ],
        (edge - 1) as usize,
    )?;
    let new_state = apply_op(state, &op)?;
    Ok((new_state, post, spec))
}

/// Expectation value of the vertex projector `Q_v` at trivalent vertex
/// `vertex_index` (indexing the trivalent vertices of
/// [`Lattice::vertices`], in order). A basis state violates `Q_v` iff
/// exactly one incident edge end carries `tau`.
pub fn vertex_projector_expectation<T: Real>(
    state: &StateVector<T>,
    lattice: &Lattice,
    vertex_index: usize,
) -> Result<T, LatticeError> {
    if state.n_qubits() != lattice.n_qubits() {
        return Err(LatticeError::RegisterMismatch);
    }
    let trivalent: Vec<Vec<Dart>> = lattice
        .vertices()
        .into_iter()
        .filter(|v| v.len() == 3)
        .collect();
    let v = trivalent
        .get(vertex_index)
        .ok_or(LatticeError::VertexOutOfRange(vertex_index))?;
    let n = state.n_qubits();
    let mut bad = T::zero();
    for (idx, a) in state.amplitudes().iter().enumerate() {
        let cnt: u8 = v
            .iter()
            .map(|d| bit_of(idx, n, (d.0 - 1) as usize))
            .sum::<u8>();
        if cnt == 1 {
            bad = bad + a.norm_sqr();
        }
    }
    Ok(T::one() - bad)
}

/// Minimum of [`vertex_projector_expectation`] over all trivalent vertices.
pub fn min_vertex_projector_expectation<T: Real>(
    state: &StateVector<T>,
    lattice: &Lattice,
) -> Result<T, LatticeError> {
    let n_triv = lattice.vertices().iter().filter(|v| v.len() == 3).count();
    let mut min = T::one();
    for i in 0..n_triv {
        let e = vertex_projector_expectation(state, lattice, i)?;
        if e < min {
            min = e;
        }
    }
    Ok(min)
}

/// Reference state of a (generalized) tadpole carrying the given charge, as
/// a 16-dim vector over `(h1, h2, t_out, t_in)`. The `tau taubar` charge
/// must be resolved to a component. `chirality = +1` is the standard
/// handedness.
pub fn tadpole_reference_state<T: Real>(
    label: DoubledLabel,
    chirality: i8,
) -> Result<Vec<Complex<T>>, LatticeError> {
    charge_patterns::<T>(chirality)
        .into_iter()
        .find(|(l, _)| *l == label)
        .map(|(_, v)| v)
        .ok_or(LatticeError::UnsupportedCharge)
}

/// Head state of a tail-less tadpole loop with trivial charge:
/// `(|0> + phi |1>)/D`.
pub fn loop_trivial_head<T: Real>() -> [Complex<T>; 2] {
    let phi: T = crate::anyon::golden_ratio();
    let d: T = crate::anyon::total_quantum_dimension();
    [
        Complex::new(T::one() / d, T::zero()),
        Complex::new(phi / d, T::zero()),
    ]
}

/// Head state of a tail-less tadpole loop with `tau taubar` charge (vacuum
/// tail component): `(phi |0> - |1>)/D`.
pub fn loop_tau_taubar_head<T: Real>() -> [Complex<T>; 2] {
    let phi: T = crate::anyon::golden_ratio();
    let d: T = crate::anyon::total_quantum_dimension();
    [
        Complex::new(phi / d, T::zero()),
        Complex::new(-T::one() / d, T::zero()),
    ]
}

/// Weight `<state| P |state>` of the rank-1 projector onto `pattern`
/// (a vector over `qubits`, most significant first) tensored with identity.
fn pattern_weight<T: Real>(state: &StateVector<T>, qubits: &[usize], pattern: &[Complex<T>]) -> T {
    let n = state.n_qubits();
    let k = qubits.len();
    let masks: Vec<usize> = qubits.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let tmask: usize = masks.iter().fold(0, |acc, m| acc | m);
    let mut weight = T::zero();
    for rest in 0..state.amplitudes().len() {
        if rest & tmask != 0 {
            continue;
        }
        let mut inner = Complex::new(T::zero(), T::zero());
        for (s, p) in pattern.iter().enumerate().take(1 << k) {
            if p.norm_sqr() == T::zero() {
                continue;
            }
            let mut j = rest;
            for (i, &m) in masks.iter().enumerate() {
                if (s >> (k - 1 - i)) & 1 == 1 {
                    j |= m;
                }
            }
            inner = inner + p.conj() * state.amplitudes()[j];
        }
        weight = weight + inner.norm_sqr();
    }
    weight
}

/// How the charge of a terminal tadpole is read out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TadpoleReadout {
    /// Single-edge lattice: the lone loop qubit in the charge basis.
    BareEdge {
        /// The loop edge.
        edge: u32,
    },
    /// Tail-less tadpole: a loop edge plus its (shared) tail edge.
    Loop {
        /// Loop (head) edge.
        head: u32,
        /// Tail edge.
        tail: u32,
    },
    /// Generalized tadpole or two-edge ring, read via the four-qubit charge
    /// patterns in the role order `(h1, h2, t_out, t_in)`.
    Patterns {
        /// Role qubits' edges `(h1, h2, t_out, t_in)`.
        roles: [u32; 4],
    },
    /// Structural middle region with no supported readout.
    Unsupported,
}

/// One terminal tadpole of a reduction plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TadpoleDesc {
    /// Plaquette whose charge this tadpole carries (1-based id on the
    /// canonical lattice).
    pub plaquette: usize,
    /// Head (loop/ring) edges.
    pub heads: Vec<u32>,
    /// Tail edges.
    pub tails: Vec<u32>,
    /// Charge readout rule.
    pub readout: TadpoleReadout,
}

/// One F-move of a reduction plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMoveStep {
    /// Edge the move acts on.
    pub edge: u32,
    /// Leg edges `(a, b, c, d)` at the time of the move.
    pub legs: [u32; 4],
}

/// A hand-verified sequence of F-moves reducing a canonical lattice to a
/// concentric (generalized-)tadpole basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPlan {
    /// Lattice kind the plan starts from.
    pub kind: LatticeKind,
    /// Requested plaquette nesting (innermost first).
    pub nesting: Vec<usize>,
    /// Moves, in order.
    pub moves: Vec<FMoveStep>,
    /// Terminal tadpoles, innermost first.
    pub terminal: Vec<TadpoleDesc>,
}

/// Look up the stored reduction plan for a lattice kind and plaquette
/// nesting order (innermost plaquette first).
pub fn reduction_plan(kind: LatticeKind, nesting: &[usize]) -> Result<ReductionPlan, LatticeError> {
    let step = |edge: u32, legs: [u32; 4]| FMoveStep { edge, legs };
    let lp = |plaquette: usize, head: u32, tail: u32| TadpoleDesc {
        plaquette,
        heads: vec![head],
        tails: vec![tail],
        readout: TadpoleReadout::Loop { head, tail },
    };
    let gen = |plaquette: usize, roles: [u32; 4]| TadpoleDesc {
        plaquette,
        heads: vec![roles[0], roles[1]],
        tails: vec![roles[3]],
        readout: TadpoleReadout::Patterns { roles },
    };
    let (moves, terminal) = match (kind, nesting) {
        (LatticeKind::SingleEdge, [1]) => (
            vec![],
            vec![TadpoleDesc {
                plaquette: 1,
                heads: vec![1],
                tails: vec![],
                readout: TadpoleReadout::BareEdge { edge: 1 },
            }],
        ),
        (LatticeKind::Theta, [1]) => (
            vec![step(3, [1, 2, 2, 1])],
            vec![lp(1, 2, 3), lp(3, 1, 3)],
        ),
        (LatticeKind::Theta, [2]) => (
            vec![step(1, [3, 2, 2, 3])],
            vec![lp(2, 2, 1), lp(3, 3, 1)],
        ),
        (LatticeKind::Tetrahedron, [1, 2]) => (
            vec![
                step(1, [3, 2, 5, 4]),
                step(5, [1, 2, 2, 6]),
                step(3, [4, 6, 1, 4]),
            ],
            vec![
                lp(1, 4, 3),
                TadpoleDesc {
                    plaquette: 2,
                    heads: vec![1, 6],
                    tails: vec![5, 3],
                    readout: TadpoleReadout::Patterns {
                        roles: [1, 6, 5, 3],
                    },
                },
                lp(4, 2, 5),
            ],
        ),
        (LatticeKind::Tetrahedron, [2, 3]) => (
            vec![
                step(4, [6, 3, 1, 5]),
                step(3, [1, 4, 2, 1]),
                step(5, [6, 4, 2, 6]),
            ],
            vec![
                lp(2, 6, 5),
                TadpoleDesc {
                    plaquette: 3,
                    heads: vec![2, 4],
                    tails: vec![5, 3],
                    readout: TadpoleReadout::Patterns {
                        roles: [2, 4, 5, 3],
                    },
                },
                lp(1, 1, 3),
            ],
        ),
        (LatticeKind::TailedTheta, [1, 2]) => (
            vec![
                step(1, [2, 7, 3, 5]),
                step(2, [1, 5, 6, 4]),
                step(4, [8, 3, 1, 2]),
            ],
            vec![
                gen(1, [3, 1, 4, 7]),
                TadpoleDesc {
                    plaquette: 2,
                    heads: vec![4, 2],
                    tails: vec![8],
                    readout: TadpoleReadout::Unsupported,
                },
                gen(3, [5, 6, 2, 9]),
            ],
        ),
        (LatticeKind::GeneralizedTadpole, [1]) => (vec![], vec![gen(1, [1, 2, 3, 4])]),
        _ => return Err(LatticeError::UnsupportedNesting),
    };
    Ok(ReductionPlan {
        kind,
        nesting: nesting.to_vec(),
        moves,
        terminal,
    })
}

/// Apply a plan's F-moves to a state (standard F-symbol table).
pub fn apply_plan<T: Real>(
    state: &StateVector<T>,
    plan: &ReductionPlan,
) -> Result<StateVector<T>, LatticeError> {
    let table = FSymbolTable::standard();
    let mut st = state.clone();
    for mv in &plan.moves {
        let op = fmove_circuit_op(mv.edge, mv.legs, &table)?;
        st = apply_op(&st, &op)?;
    }
    Ok(st)
}

/// Amplitudes per charge sector of one terminal tadpole.
#[derive(Clone, Debug)]
pub struct ChargeDistribution<T: Real> {
    /// Sector-level label -> amplitude (the square root of the sector
    /// weight; non-negative real).
    pub weights: BTreeMap<DoubledLabel, Complex<T>>,
}

impl<T: Real> ChargeDistribution<T> {
    /// Weight (probability) of a sector.
    pub fn probability(&self, sector: DoubledLabel) -> T {
        self.weights
            .get(&sector)
            .map(|a| a.norm_sqr())
            .unwrap_or_else(T::zero)
    }

    /// Amplitude of a sector.
    pub fn amplitude(&self, sector: DoubledLabel) -> Complex<T> {
        self.weights
            .get(&sector)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }
}

/// Decompose the state against the charge sectors of terminal tadpole
/// `tadpole_index` of `plan`. The state must live on the plan's canonical
/// lattice; the plan's moves are applied internally.
pub fn charge_decompose<T: Real>(
    state: &StateVector<T>,
    plan: &ReductionPlan,
    tadpole_index: usize,
) -> Result<ChargeDistribution<T>, LatticeError> {
    let desc = plan
        .terminal
        .get(tadpole_index)
        .ok_or(LatticeError::PlaquetteOutOfRange(tadpole_index))?;
    let st = apply_plan(state, plan)?;
    let sectors = DoubledLabel::sectors();
    let zero = Complex::new(T::zero(), T::zero());
    let mut weights: BTreeMap<DoubledLabel, Complex<T>> =
        sectors.iter().map(|&s| (s, zero)).collect();
    let amp = |w: T| Complex::new(w.max(T::zero()).sqrt(), T::zero());
    match &desc.readout {
        TadpoleReadout::BareEdge { edge } => {
            let q = (*edge - 1) as usize;
            let w11 = pattern_weight(&st, &[q], &loop_trivial_head::<T>());
            let wtt = pattern_weight(&st, &[q], &loop_tau_taubar_head::<T>());
            weights.insert(sectors[0], amp(w11));
            weights.insert(sectors[3], amp(wtt));
        }
        TadpoleReadout::Loop { head, tail } => {
            let qs = [(*head - 1) as usize, (*tail - 1) as usize];
            let mut v11 = vec![zero; 4];
            let h = loop_trivial_head::<T>();
            v11[0b00] = h[0];
            v11[0b10] = h[1];
            let mut vtt = vec![zero; 4];
            let g = loop_tau_taubar_head::<T>();
            vtt[0b00] = g[0];
            vtt[0b10] = g[1];
            let mut vstr = vec![zero; 4];
            vstr[0b11] = Complex::new(T::one(), T::zero());
            let w11 = pattern_weight(&st, &qs, &v11);
            let wtt = pattern_weight(&st, &qs, &vtt) + pattern_weight(&st, &qs, &vstr);
            weights.insert(sectors[0], amp(w11));
            weights.insert(sectors[3], amp(wtt));
        }
        TadpoleReadout::Patterns { roles } => {
            let qs: Vec<usize> = roles.iter().map(|&e| (e - 1) as usize).collect();
            for (label, pat) in charge_patterns::<T>(1) {
                let sector = DoubledLabel::new(label.right, label.left);
                let w = pattern_weight(&st, &qs, &pat);
                let prev = weights[&sector].norm_sqr();
                weights.insert(sector, amp(prev + w));
            }
        }
        TadpoleReadout::Unsupported => return Err(LatticeError::UnsupportedReadout),
    }
    Ok(ChargeDistribution { weights })
}

// ---------------------------------------------------------------------------
// Plaquette operators via breadth-first reduction planning.
// ---------------------------------------------------------------------------

/// Searched plan: moves plus the readout qubits and pattern.
struct SearchedPlan {
    moves: Vec<FMoveStep>,
    readout_edges: Vec<u32>,
}

fn loop_readout(lat: &Lattice, face: &BTreeSet<Dart>) -> Option<Vec<u32>> {
    if face.len() != 1 {
        return None;
    }
    let e = face.iter().next().unwrap().0;
    let v = lat.vertex_of((e, 0));
    if !v.contains(&(e, 1)) || v.len() != 3 {
        return None;
    }
    let tail = v.iter().find(|d| d.0 != e)?.0;
    Some(vec![e, tail])
}

fn gen_readout(lat: &Lattice, face: &BTreeSet<Dart>) -> Option<Vec<u32>> {
    let edges: BTreeSet<u32> = face.iter().map(|d| d.0).collect();
    let tails: Vec<u32> = edges
        .iter()
        .copied()
        .filter(|&e| {
            face.contains(&(e, 0)) && face.contains(&(e, 1)) && lat.is_free_tail(e)
        })
        .collect();
    if tails.len() != 1 {
        return None;
    }
    let ti = tails[0];
    let heads: Vec<u32> = edges.iter().copied().filter(|&e| e != ti).collect();
    if heads.len() != 2 {
        return None;
    }
    let (h1, h2) = (heads[0], heads[1]);
    let va: BTreeSet<Dart> = lat.vertex_of((h1, 0)).into_iter().collect();
    let vb: BTreeSet<Dart> = lat.vertex_of((h1, 1)).into_iter().collect();
    let bigon = (va.contains(&(h2, 0)) && vb.contains(&(h2, 1)))
        || (va.contains(&(h2, 1)) && vb.contains(&(h2, 0)));
    if !bigon {
        return None;
    }
    let (vt, vo) = if va.iter().any(|d| d.0 == ti) {
        (va, vb)
    } else if vb.iter().any(|d| d.0 == ti) {
        (vb, va)
    } else {
        return None;
    };
    let _ = vt;
    let xs: Vec<u32> = vo.iter().map(|d| d.0).filter(|&e| e != h1 && e != h2).collect();
    if xs.len() != 1 {
        return None;
    }
    Some(vec![h1, h2, xs[0], ti])
}

fn find_plan(lat: &Lattice, face: &BTreeSet<Dart>, tailed: bool) -> Option<SearchedPlan> {
    let max_depth = 4;
    let mut queue: VecDeque<(Lattice, BTreeSet<Dart>, Vec<FMoveStep>)> =
        VecDeque::from([(lat.clone(), face.clone(), Vec::new())]);
    let mut seen: BTreeSet<(Vec<(Dart, Dart)>, Vec<Dart>)> = BTreeSet::new();
    while let Some((l, f, moves)) = queue.pop_front() {
        let readout = if tailed {
            gen_readout(&l, &f)
        } else {
            loop_readout(&l, &f)
        };
        if let Some(readout_edges) = readout {
            return Some(SearchedPlan {
                moves,
                readout_edges,
            });
        }
        if moves.len() >= max_depth {
            continue;
        }
        for (e, _) in l.edges() {
            if !l.movable(e) {
                continue;
            }
            let (l2, legs) = l.fmove(e).ok()?;
            let f2 = l.track_face(&l2, &f, e).ok()?;
            let key = (
                l2.sigma.iter().map(|(&a, &b)| (a, b)).collect::<Vec<_>>(),
                f2.iter().copied().collect::<Vec<_>>(),
            );
            if !seen.insert(key) {
                continue;
            }
            let mut mv = moves.clone();
            mv.push(FMoveStep { edge: e, legs });
            queue.push_back((l2, f2, mv));
        }
    }
    None
}

fn trivial_pattern<T: Real>(tailed: bool) -> Vec<Complex<T>> {
    if tailed {
        charge_patterns::<T>(1)
            .into_iter()
            .next()
            .expect("patterns nonempty")
            .1
    } else {
        let h = loop_trivial_head::<T>();
        let zero = Complex::new(T::zero(), T::zero());
        let mut v = vec![zero; 4];
        v[0b00] = h[0];
        v[0b10] = h[1];
        v
    }
}

/// Probability that plaquette `plaquette_index` (0-based into
/// [`Lattice::plaquettes`]) carries trivial charge: the expectation of the
/// plaquette projector `B_p`, computed by reducing the plaquette to a
/// tadpole and projecting onto the trivial-charge pattern.
pub fn plaquette_trivial_charge_probability<T: Real>(
    state: &StateVector<T>,
    lattice: &Lattice,
    plaquette_index: usize,
) -> Result<T, LatticeError> {
    if state.n_qubits() != lattice.n_qubits() {
        return Err(LatticeError::RegisterMismatch);
    }
    if lattice.kind == LatticeKind::SingleEdge {
        if plaquette_index >= 2 {
            return Err(LatticeError::PlaquetteOutOfRange(plaquette_index));
        }
        return Ok(pattern_weight(state, &[0], &loop_trivial_head::<T>()));
    }
    let rep = *lattice
        .reps
        .get(plaquette_index)
        .ok_or(LatticeError::PlaquetteOutOfRange(plaquette_index))?;
    let face = lattice.face_containing(rep);
    let tailed = lattice.has_free_tails();
    let plan = find_plan(lattice, &face, tailed).ok_or(LatticeError::NoPlanFound)?;
    let table = FSymbolTable::standard();
    let mut st = state.clone();
    for mv in &plan.moves {
        let op = fmove_circuit_op(mv.edge, mv.legs, &table)?;
        st = apply_op(&st, &op)?;
    }
    let qs: Vec<usize> = plan.readout_edges.iter().map(|&e| (e - 1) as usize).collect();
    Ok(pattern_weight(&st, &qs, &trivial_pattern::<T>(tailed)))
}

fn dense_fmove<T: Real>(
    n: usize,
    edge: u32,
    legs: [u32; 4],
    table: &FSymbolTable<T>,
) -> Result<Vec<Vec<Complex<T>>>, LatticeError> {
    let op = fmove_circuit_op(edge, legs, table)?;
    let dim = 1usize << n;
    let mut cols = Vec::with_capacity(dim);
    for c in 0..dim {
        let basis = StateVector::new(n, c)?;
        let out = apply_op(&basis, &op)?;
        cols.push(out.amplitudes().to_vec());
    }
    // cols[c][r] -> row-major
    let zero = Complex::new(T::zero(), T::zero());
    let mut m = vec![vec![zero; dim]; dim];
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m[r][c] = *v;
        }
    }
    Ok(m)
}

fn dense_mul<T: Real>(a: &[Vec<Complex<T>>], b: &[Vec<Complex<T>>]) -> Vec<Vec<Complex<T>>> {
    let dim = a.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![vec![zero; dim]; dim];
    for r in 0..dim {
        for k in 0..dim {
            let ark = a[r][k];
            if ark.norm_sqr() == T::zero() {
                continue;
            }
            for c in 0..dim {
                out[r][c] = out[r][c] + ark * b[k][c];
            }
        }
    }
    out
}

fn dense_projector<T: Real>(n: usize, qubits: &[usize], v: &[Complex<T>]) -> Vec<Vec<Complex<T>>> {
    let dim = 1usize << n;
    let k = qubits.len();
    let masks: Vec<usize> = qubits.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let tmask: usize = masks.iter().fold(0, |acc, m| acc | m);
    let zero = Complex::new(T::zero(), T::zero());
    let mut p = vec![vec![zero; dim]; dim];
    for rest in 0..dim {
        if rest & tmask != 0 {
            continue;
        }
        let embed = |s: usize| -> usize {
            let mut j = rest;
            for (i, &m) in masks.iter().enumerate() {
                if (s >> (k - 1 - i)) & 1 == 1 {
                    j |= m;
                }
            }
            j
        };
        for sr in 0..(1 << k) {
            for sc in 0..(1 << k) {
                let val = v[sr] * v[sc].conj();
                if val.norm_sqr() != T::zero() {
                    p[embed(sr)][embed(sc)] = val;
                }
            }
        }
    }
    p
}

fn dense_bp<T: Real>(
    lattice: &Lattice,
    face: &BTreeSet<Dart>,
    table: &FSymbolTable<T>,
) -> Result<Vec<Vec<Complex<T>>>, LatticeError> {
    let n = lattice.n_qubits();
    let tailed = lattice.has_free_tails();
    let plan = find_plan(lattice, face, tailed).ok_or(LatticeError::NoPlanFound)?;
    let dim = 1usize << n;
    let zero = Complex::new(T::zero(), T::zero());
    let mut u = vec![vec![zero; dim]; dim];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = Complex::new(T::one(), T::zero());
    }
    for mv in &plan.moves {
        let f = dense_fmove(n, mv.edge, mv.legs, table)?;
        u = dense_mul(&f, &u);
    }
    let qs: Vec<usize> = plan.readout_edges.iter().map(|&e| (e - 1) as usize).collect();
    let p0 = dense_projector(n, &qs, &trivial_pattern::<T>(tailed));
    // U^dagger P0 U
    let mut udag = vec![vec![zero; dim]; dim];
    for r in 0..dim {
        for c in 0..dim {
            udag[r][c] = u[c][r].conj();
        }
    }
    Ok(dense_mul(&udag, &dense_mul(&p0, &u)))
}

/// Check the commutation relation `F_e B_p = B_{p'} F_e` for an F-move on
/// `edge` adjacent to plaquette `plaquette_index`, where `p'` is the image
/// of the plaquette under the move. Built densely; intended for the small
/// lattices. A corrupted F-symbol table propagates into both the move and
/// the plaquette projectors.
pub fn check_fbp_commutation<T: Real>(
    lattice: &Lattice,
    edge: u32,
    plaquette_index: usize,
    table: &FSymbolTable<T>,
    tol: T,
) -> Result<bool, LatticeError> {
    let rep = *lattice
        .reps
        .get(plaquette_index)
        .ok_or(LatticeError::PlaquetteOutOfRange(plaquette_index))?;
    let face = lattice.face_containing(rep);
    if !face.iter().any(|d| d.0 == edge) {
        return Err(LatticeError::NotAdjacent {
            edge,
            plaquette: plaquette_index,
        });
    }
    let (post, legs) = lattice.fmove(edge)?;
    let face2 = lattice.track_face(&post, &face, edge)?;
    let n = lattice.n_qubits();
    let f = dense_fmove(n, edge, legs, table)?;
    let b = dense_bp(lattice, &face, table)?;
    let b2 = dense_bp(&post, &face2, table)?;
    let lhs = dense_mul(&f, &b);
    let rhs = dense_mul(&b2, &f);
    let mut worst = T::zero();
    for (lr, rr) in lhs.iter().zip(rhs.iter()) {
        for (l, r) in lr.iter().zip(rr.iter()) {
            let d = (*l - *r).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst < tol)
}
