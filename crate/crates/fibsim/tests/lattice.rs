//! Lattices as combinatorial maps: structure, F-moves, reduction plans,
//! charge decomposition, and the F-move / plaquette-projector commutation.

use fibsim::anyon::{AnyonLabel, DoubledLabel, FSymbolTable};
use fibsim::lattice::*;
use fibsim::{Experiment64, StateVector64};

const PHI: f64 = 1.618033988749895;

#[test]
fn lattice_structure() {
    let expected = [
        (LatticeKind::SingleEdge, 1, 2, false),
        (LatticeKind::Theta, 3, 3, false),
        (LatticeKind::Tetrahedron, 6, 4, false),
        (LatticeKind::GeneralizedTadpole, 4, 2, true),
        (LatticeKind::TailedTheta, 9, 3, true),
        (LatticeKind::TailedTetrahedron, 14, 4, true),
    ];
    for (kind, qubits, plaquettes, tailed) in expected {
        let lat = build_lattice(kind);
        assert_eq!(lat.n_qubits(), qubits, "{}", kind.as_str());
        assert_eq!(lat.plaquettes().len(), plaquettes, "{}", kind.as_str());
        assert_eq!(lat.has_free_tails(), tailed, "{}", kind.as_str());
        // Every built-in lattice triangulates the sphere.
        assert_eq!(lat.euler_characteristic(), 2, "{}", kind.as_str());
        // Qubit indexing follows edge ids.
        for (e, q) in lat.edges() {
            assert_eq!(q, (e - 1) as usize);
        }
    }
}

#[test]
fn lattice_kind_roundtrip() {
    for kind in LatticeKind::ALL {
        assert_eq!(LatticeKind::parse(kind.as_str()), Some(kind));
    }
    assert_eq!(LatticeKind::parse("cube"), None);
}

#[test]
fn theta_vertices_and_plaquettes() {
    let lat = build_lattice(LatticeKind::Theta);
    let vs = lat.vertices();
    assert_eq!(vs.len(), 2);
    assert!(vs.iter().all(|v| v.len() == 3));
    let ps = lat.plaquettes();
    let sorted = |mut v: Vec<u32>| {
        v.sort();
        v
    };
    assert_eq!(sorted(ps[0].boundary.clone()), vec![2, 3]);
    assert_eq!(sorted(ps[1].boundary.clone()), vec![1, 2]);
    assert_eq!(sorted(ps[2].boundary.clone()), vec![1, 3]);
    assert!(ps.iter().all(|p| p.tails.is_empty()));
    assert_eq!(ps[0].id, 1);
    assert_eq!(ps[2].id, 3);
}

#[test]
fn tails_are_detected_and_immovable() {
    let lat = build_lattice(LatticeKind::GeneralizedTadpole);
    assert!(lat.is_free_tail(3));
    assert!(lat.is_free_tail(4));
    assert!(!lat.is_free_tail(1));
    assert!(!lat.movable(3));
    assert!(!lat.movable(4));
    assert!(lat.movable(1));
    assert!(lat.movable(2));
    // The plaquettes record their tails.
    let ps = lat.plaquettes();
    assert_eq!(ps[0].tails, vec![4]);
    assert_eq!(ps[1].tails, vec![3]);
}

#[test]
fn single_edge_loop_is_not_movable() {
    let lat = build_lattice(LatticeKind::SingleEdge);
    assert!(!lat.movable(1));
    assert!(matches!(lat.fmove(1), Err(LatticeError::NotMovable(1))));
    assert!(matches!(lat.fmove(9), Err(LatticeError::EdgeNotFound(9))));
}

#[test]
fn theta_fmove_legs_and_geometry() {
    let lat = build_lattice(LatticeKind::Theta);
    let (post, legs) = lat.fmove(3).unwrap();
    assert_eq!(legs, [1, 2, 2, 1]);
    assert_eq!(post.n_qubits(), 3);
    assert_eq!(post.euler_characteristic(), 2);
    // The move merges the two trivalent vertices' structure into a
    // tadpole-with-tail shape: edge 3 now has 2-valent endpoints.
    assert_eq!(post.plaquettes().len(), 3);
}

#[test]
fn tetrahedron_moves_match_the_stored_plan() {
    let plan = reduction_plan(LatticeKind::Tetrahedron, &[1, 2]).unwrap();
    let mut lat = build_lattice(LatticeKind::Tetrahedron);
    for step in &plan.moves {
        let (post, legs) = lat.fmove(step.edge).unwrap();
        assert_eq!(legs, step.legs, "edge {}", step.edge);
        lat = post;
    }
    assert_eq!(lat.euler_characteristic(), 2);
}

#[test]
fn reduction_plans_cover_the_documented_nestings() {
    for (kind, nesting, n_moves, n_tadpoles) in [
        (LatticeKind::SingleEdge, vec![1], 0, 1),
        (LatticeKind::Theta, vec![1], 1, 2),
        (LatticeKind::Theta, vec![2], 1, 2),
        (LatticeKind::Tetrahedron, vec![1, 2], 3, 3),
        (LatticeKind::Tetrahedron, vec![2, 3], 3, 3),
        (LatticeKind::TailedTheta, vec![1, 2], 3, 3),
        (LatticeKind::GeneralizedTadpole, vec![1], 0, 1),
    ] {
        let plan = reduction_plan(kind, &nesting).unwrap();
        assert_eq!(plan.moves.len(), n_moves, "{} {:?}", kind.as_str(), nesting);
        assert_eq!(plan.terminal.len(), n_tadpoles);
        assert_eq!(plan.kind, kind);
        assert_eq!(plan.nesting, nesting);
    }
    assert!(matches!(
        reduction_plan(LatticeKind::Theta, &[3]),
        Err(LatticeError::UnsupportedNesting)
    ));
    assert!(matches!(
        reduction_plan(LatticeKind::TailedTetrahedron, &[1]),
        Err(LatticeError::UnsupportedNesting)
    ));
}

#[test]
fn tadpole_reference_states() {
    use AnyonLabel::{One, Tau};
    let v = tadpole_reference_state::<f64>(DoubledLabel::new(Tau, One), 1).unwrap();
    let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-14);
    assert!(tadpole_reference_state::<f64>(DoubledLabel::VACUUM, -1).is_ok());
    // The sector-level tau-taubar label is ambiguous (it has four internal
    // components) and is rejected.
    assert!(matches!(
        tadpole_reference_state::<f64>(DoubledLabel::new(Tau, Tau), 1),
        Err(LatticeError::UnsupportedCharge)
    ));
}

#[test]
fn vertex_projector_on_basis_states() {
    let lat = build_lattice(LatticeKind::Theta);
    // A single tau end at each vertex violates branching.
    let bad = StateVector64::new(3, 0b100).unwrap();
    assert_eq!(vertex_projector_expectation(&bad, &lat, 0).unwrap(), 0.0);
    assert_eq!(min_vertex_projector_expectation(&bad, &lat).unwrap(), 0.0);
    // Two tau ends fuse admissibly.
    let ok = StateVector64::new(3, 0b110).unwrap();
    assert_eq!(vertex_projector_expectation(&ok, &lat, 0).unwrap(), 1.0);
    assert_eq!(vertex_projector_expectation(&ok, &lat, 1).unwrap(), 1.0);
    assert!(matches!(
        vertex_projector_expectation(&ok, &lat, 5),
        Err(LatticeError::VertexOutOfRange(5))
    ));
    let wrong = StateVector64::new(2, 0).unwrap();
    assert!(matches!(
        min_vertex_projector_expectation(&wrong, &lat),
        Err(LatticeError::RegisterMismatch)
    ));
}

fn ground_state(name: &str) -> (StateVector64, Lattice) {
    let exp = Experiment64::by_name(name).unwrap();
    let kind = match exp.kind {
        fibsim::protocols::ExperimentKind::GroundState(k) => k,
        _ => unreachable!(),
    };
    (exp.run().unwrap(), build_lattice(kind))
}

#[test]
fn ground_states_satisfy_all_constraints() {
    for name in [
        "ground-state:single-edge",
        "ground-state:theta",
        "ground-state:tetrahedron",
        "ground-state:tailed-theta",
    ] {
        let (st, lat) = ground_state(name);
        let qv = min_vertex_projector_expectation(&st, &lat).unwrap();
        assert!((qv - 1.0).abs() < 1e-10, "{name}: Q_v = {qv}");
        for idx in 0..lat.plaquettes().len() {
            let p = plaquette_trivial_charge_probability(&st, &lat, idx).unwrap();
            assert!((p - 1.0).abs() < 1e-10, "{name}: B_p{} = {p}", idx + 1);
        }
    }
}

#[test]
fn plaquette_charge_probability_errors() {
    let (st, lat) = ground_state("ground-state:theta");
    assert!(matches!(
        plaquette_trivial_charge_probability(&st, &lat, 7),
        Err(LatticeError::PlaquetteOutOfRange(7))
    ));
    let wrong = StateVector64::new(1, 0).unwrap();
    assert!(matches!(
        plaquette_trivial_charge_probability(&wrong, &lat, 0),
        Err(LatticeError::RegisterMismatch)
    ));
}

#[test]
fn theta_anyon_pair_charge_decomposition() {
    // The theta-fusion initial state carries a tau-taubar pair: the inner
    // plaquette holds definite tau-taubar charge, while the outer region
    // decomposes with the golden-ratio weights.
    let exp = Experiment64::by_name("theta-fusion").unwrap();
    let (stages, _) = exp.stage_states().unwrap();
    // psi1 is the state expressed on the canonical theta lattice.
    let psi1 = &stages["psi1"];
    let plan = reduction_plan(LatticeKind::Theta, &[1]).unwrap();
    let inner = charge_decompose(psi1, &plan, 0).unwrap();
    assert!((inner.probability(DoubledLabel::new(AnyonLabel::Tau, AnyonLabel::Tau)) - 1.0).abs() < 1e-12);
    assert!(inner.probability(DoubledLabel::VACUUM) < 1e-12);
    let outer = charge_decompose(psi1, &plan, 1).unwrap();
    assert!((outer.probability(DoubledLabel::VACUUM) - 1.0 / (PHI * PHI)).abs() < 1e-12);
    assert!(
        (outer.probability(DoubledLabel::new(AnyonLabel::Tau, AnyonLabel::Tau)) - 1.0 / PHI).abs()
            < 1e-12
    );
    // No chiral admixture.
    assert!(outer.probability(DoubledLabel::new(AnyonLabel::Tau, AnyonLabel::One)) < 1e-12);
    assert!(outer.probability(DoubledLabel::new(AnyonLabel::One, AnyonLabel::Tau)) < 1e-12);
    assert!(matches!(
        charge_decompose(psi1, &plan, 9),
        Err(LatticeError::PlaquetteOutOfRange(9))
    ));
}

#[test]
fn tailed_theta_middle_region_has_no_readout() {
    let exp = Experiment64::by_name("tailed-fusion").unwrap();
    let (stages, _) = exp.stage_states().unwrap();
    let psi1 = &stages["psi1"];
    let plan = reduction_plan(LatticeKind::TailedTheta, &[1, 2]).unwrap();
    assert_eq!(plan.terminal[1].readout, TadpoleReadout::Unsupported);
    assert!(matches!(
        charge_decompose(psi1, &plan, 1),
        Err(LatticeError::UnsupportedReadout)
    ));
    // The inner and outer tadpoles do decompose.
    let inner = charge_decompose(psi1, &plan, 0).unwrap();
    let tau1 = DoubledLabel::new(AnyonLabel::Tau, AnyonLabel::One);
    assert!((inner.probability(tau1) - 1.0).abs() < 1e-12);
    let outer = charge_decompose(psi1, &plan, 2).unwrap();
    assert!((outer.probability(DoubledLabel::VACUUM) - 1.0 / (PHI * PHI)).abs() < 1e-12);
    assert!((outer.probability(tau1) - 1.0 / PHI).abs() < 1e-12);
}

#[test]
fn fmove_commutes_with_plaquette_projectors_on_theta() {
    let lat = build_lattice(LatticeKind::Theta);
    let table = FSymbolTable::<f64>::standard();
    // All (movable edge, adjacent plaquette) pairs.
    let pairs = [(3, 0), (2, 0), (1, 1), (2, 1), (1, 2), (3, 2)];
    for (edge, pidx) in pairs {
        assert!(
            check_fbp_commutation(&lat, edge, pidx, &table, 1e-12).unwrap(),
            "edge {edge}, plaquette index {pidx}"
        );
    }
    assert!(matches!(
        check_fbp_commutation(&lat, 1, 0, &table, 1e-12),
        Err(LatticeError::NotAdjacent { edge: 1, plaquette: 0 })
    ));
}

#[test]
fn fmove_commutes_with_plaquette_projectors_on_generalized_tadpole() {
    let lat = build_lattice(LatticeKind::GeneralizedTadpole);
    let table = FSymbolTable::<f64>::standard();
    for (edge, pidx) in [(1, 0), (2, 0), (1, 1), (2, 1)] {
        assert!(
            check_fbp_commutation(&lat, edge, pidx, &table, 1e-12).unwrap(),
            "edge {edge}, plaquette index {pidx}"
        );
    }
}

#[test]
fn corrupted_f_table_breaks_commutation() {
    use AnyonLabel::Tau;
    let lat = build_lattice(LatticeKind::Theta);
    let mut table = FSymbolTable::<f64>::standard();
    let key = [Tau, Tau, Tau, Tau, AnyonLabel::One, AnyonLabel::One];
    let v = table.get(key[0], key[1], key[2], key[3], key[4], key[5]);
    table.set(key, -v);
    let pairs = [(3, 0), (2, 0), (1, 1), (2, 1), (1, 2), (3, 2)];
    let any_broken = pairs
        .iter()
        .any(|&(edge, pidx)| !check_fbp_commutation(&lat, edge, pidx, &table, 1e-12).unwrap());
    assert!(any_broken);
}

#[test]
fn apply_fmove_runs_move_and_rewires() {
    let lat = build_lattice(LatticeKind::Theta);
    let table = FSymbolTable::<f64>::standard();
    let st = StateVector64::new(3, 0b111).unwrap();
    let (out, post, spec) = apply_fmove(&st, &lat, 3, &table).unwrap();
    assert_eq!(spec.internal, 2);
    assert!((out.norm() - 1.0).abs() < 1e-12);
    assert_eq!(post.euler_characteristic(), 2);
    // All-tau input mixes the internal qubit.
    assert!(out.amplitude(0b110).unwrap().norm() > 0.0);
}
