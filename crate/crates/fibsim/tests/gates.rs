//! Gate library: the nine named gates, F-move unitaries, charge patterns,
//! and the tail-exchange / tail-swap operators.

use fibsim::anyon::{doubled_twist, golden_ratio, CategoryData, FSymbolTable};
use fibsim::gates::*;
use fibsim::sim::{check_unitary, GateMatrix};
use fibsim::Complex;

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn xi(k: i32) -> Complex<f64> {
    Complex::from_polar(1.0, 3.0 * std::f64::consts::PI / 5.0 * k as f64)
}

#[test]
fn all_named_gates_are_unitary() {
    for name in GateName::ALL {
        let g = named_gate::<f64>(name);
        assert!(
            g.unitarity_residual() < 1e-12,
            "{} residual {}",
            name.as_str(),
            g.unitarity_residual()
        );
    }
}

#[test]
fn f_and_s_are_involutions() {
    for name in [GateName::F, GateName::S] {
        let g = named_gate::<f64>(name);
        let sq = g.matmul(&g).unwrap();
        for r in 0..2 {
            for col in 0..2 {
                let expect = if r == col { 1.0 } else { 0.0 };
                assert!(
                    (sq.get(r, col) - c(expect, 0.0)).norm() < 1e-12,
                    "{}^2 != I",
                    name.as_str()
                );
            }
        }
    }
}

#[test]
fn named_gate_entries() {
    let phi = golden_ratio::<f64>();
    let sq = phi.sqrt();
    let d = (1.0 + phi * phi).sqrt();

    let f = named_gate::<f64>(GateName::F);
    assert!((f.get(0, 0) - c(1.0 / phi, 0.0)).norm() < 1e-15);
    assert!((f.get(0, 1) - c(1.0 / sq, 0.0)).norm() < 1e-15);
    assert!((f.get(1, 1) - c(-1.0 / phi, 0.0)).norm() < 1e-15);

    let s = named_gate::<f64>(GateName::S);
    assert!((s.get(0, 0) - c(1.0 / d, 0.0)).norm() < 1e-15);
    assert!((s.get(0, 1) - c(phi / d, 0.0)).norm() < 1e-15);
    assert!((s.get(1, 1) - c(-1.0 / d, 0.0)).norm() < 1e-15);

    let u = named_gate::<f64>(GateName::U);
    assert!((u.get(0, 0) - xi(-1) / sq).norm() < 1e-15);
    assert!((u.get(0, 1) - xi(2) / phi).norm() < 1e-15);
    assert!((u.get(1, 0) + xi(-2) / phi).norm() < 1e-15);
    assert!((u.get(1, 1) - xi(1) / sq).norm() < 1e-15);

    let l = named_gate::<f64>(GateName::L);
    assert!((l.get(0, 0) - c(1.0 / sq, 0.0)).norm() < 1e-15);
    assert!((l.get(0, 1) - c(-1.0 / phi, 0.0)).norm() < 1e-15);
    assert!((l.get(1, 1) - c(-1.0 / sq, 0.0)).norm() < 1e-15);

    let ft = named_gate::<f64>(GateName::FTilde);
    assert!((ft.get(0, 0) - xi(2) / phi).norm() < 1e-15);
    assert!((ft.get(0, 1) - xi(1) / sq).norm() < 1e-15);
    assert!((ft.get(1, 0) - xi(-1) / sq).norm() < 1e-15);
    assert!((ft.get(1, 1) + xi(-2) / phi).norm() < 1e-15);

    let m = named_gate::<f64>(GateName::M);
    let r2 = 1.0 / 2f64.sqrt();
    let kick = Complex::from_polar(1.0, 4.0 * std::f64::consts::PI / 5.0);
    assert!((m.get(0, 0) - c(r2, 0.0)).norm() < 1e-15);
    assert!((m.get(0, 1) - kick * r2).norm() < 1e-15);
    assert!((m.get(1, 0) - kick.conj() * r2).norm() < 1e-15);
    assert!((m.get(1, 1) + c(r2, 0.0)).norm() < 1e-15);
}

#[test]
fn gate_name_roundtrip() {
    for name in GateName::ALL {
        assert_eq!(GateName::parse(name.as_str()), Some(name));
    }
    assert_eq!(GateName::parse("bogus"), None);
}

#[test]
fn fmove_spec_classification() {
    let s = FMoveSpec::new([1, 2, 3, 4], 5).unwrap();
    assert_eq!(s.variant, FMoveVariant::FiveInput);
    assert_eq!(s.wires(), vec![1, 2, 3, 4, 5]);

    let s = FMoveSpec::new([1, 2, 2, 3], 4).unwrap();
    assert_eq!(s.variant, FMoveVariant::FourInput);
    assert_eq!(s.wires(), vec![1, 2, 3, 4]);

    let s = FMoveSpec::new([1, 1, 3, 3], 2).unwrap();
    assert_eq!(s.variant, FMoveVariant::ThreeInput);
    assert_eq!(s.wires(), vec![1, 3, 2]);

    assert_eq!(
        FMoveSpec::new([1, 2, 3, 4], 2),
        Err(GateError::InternalAmongLegs)
    );
    assert_eq!(FMoveSpec::new([1, 1, 1, 1], 2), Err(GateError::DegenerateLegs));

    let s = FMoveSpec::tail_swap([4, 3, 2, 1]);
    assert_eq!(s.variant, FMoveVariant::TailSwapFourInput);
    assert_eq!(s.wires(), vec![4, 3, 2, 1]);
}

#[test]
fn fmove_variant_roundtrip() {
    for v in [
        FMoveVariant::FiveInput,
        FMoveVariant::FourInput,
        FMoveVariant::ThreeInput,
        FMoveVariant::TailSwapFourInput,
    ] {
        assert_eq!(FMoveVariant::parse(v.as_str()), Some(v));
    }
    assert_eq!(FMoveVariant::parse("six-input"), None);
}

#[test]
fn fmove_unitaries_are_unitary_involutions() {
    let table = FSymbolTable::<f64>::standard();
    for spec in [
        FMoveSpec::new([0, 1, 2, 3], 4).unwrap(),
        FMoveSpec::new([0, 1, 1, 2], 3).unwrap(),
        FMoveSpec::new([0, 0, 1, 1], 2).unwrap(),
    ] {
        let m = fmove_unitary(&spec, &table);
        assert_eq!(m.n_targets(), spec.wires().len());
        assert!(check_unitary(&m, 1e-12), "{:?}", spec.variant);
        // The standard F blocks are real symmetric, so the move undoes
        // itself.
        let sq = m.matmul(&m).unwrap();
        assert!(sq.matmul(&m).unwrap().unitarity_residual() < 1e-12);
        for r in 0..m.dim() {
            for col in 0..m.dim() {
                let expect = if r == col { 1.0 } else { 0.0 };
                assert!((sq.get(r, col) - c(expect, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn fmove_all_tau_block_is_the_f_matrix() {
    let table = FSymbolTable::<f64>::standard();
    let spec = FMoveSpec::new([0, 1, 2, 3], 4).unwrap();
    let m = fmove_unitary(&spec, &table);
    let f = named_gate::<f64>(GateName::F);
    // Column with all four legs = tau, internal = e: rows differ only in
    // the internal (least significant) bit.
    let base = 0b11110;
    for e in 0..2usize {
        for fo in 0..2usize {
            assert!(
                (m.get((base & !1) | fo, (base & !1) | e) - f.get(fo, e)).norm() < 1e-14,
                "e={e} f={fo}"
            );
        }
    }
    // A column with an inadmissible leg configuration is untouched.
    let col = 0b10000;
    assert!((m.get(col, col) - c(1.0, 0.0)).norm() < 1e-15);
    assert!(m.get(col ^ 1, col).norm() < 1e-15);
}

#[test]
fn charge_patterns_are_orthonormal() {
    for chirality in [1i8, -1] {
        let pats = charge_patterns::<f64>(chirality);
        assert_eq!(pats.len(), 7);
        for (i, (_, a)) in pats.iter().enumerate() {
            for (j, (_, b)) in pats.iter().enumerate() {
                let ip: Complex<f64> = a
                    .iter()
                    .zip(b.iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (ip - c(expect, 0.0)).norm() < 1e-14,
                    "chirality {chirality}: <{i}|{j}> = {ip}"
                );
            }
        }
    }
}

#[test]
fn opposite_chirality_conjugates_patterns() {
    let plus = charge_patterns::<f64>(1);
    let minus = charge_patterns::<f64>(-1);
    for ((_, a), (_, b)) in plus.iter().zip(minus.iter()) {
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x.conj() - y).norm() < 1e-15);
        }
    }
}

#[test]
fn tail_exchange_applies_doubled_twists() {
    let data = CategoryData::<f64>::standard();
    let w = tail_exchange_unitary(&data);
    assert!(check_unitary(&w, 1e-12));
    for (label, pat) in charge_patterns::<f64>(1) {
        let theta = doubled_twist::<f64>(label);
        for r in 0..16 {
            let mut acc = c(0.0, 0.0);
            for (col, amp) in pat.iter().enumerate() {
                acc += w.get(r, col) * amp;
            }
            assert!(
                (acc - theta * pat[r]).norm() < 1e-13,
                "{} row {r}",
                label.sector_name()
            );
        }
    }
    // Outside the string-net subspace the operator is the identity.
    let idx = 0b0001;
    for r in 0..16 {
        let expect = if r == idx { 1.0 } else { 0.0 };
        assert!((w.get(r, idx) - c(expect, 0.0)).norm() < 1e-13);
    }
}

#[test]
fn tail_swap_is_a_conjugated_exchange() {
    let data = CategoryData::<f64>::standard();
    let w = tail_exchange_unitary(&data);
    let sw = tail_swap_unitary(&data);
    assert!(check_unitary(&sw, 1e-12));
    // Register relabeling (h1, h2, t_out, t_in) -> (1 - t_out, 1 - t_in,
    // h2, h1) as a bit permutation-with-flips.
    let map = |i: usize| -> usize {
        let q = |j: usize| (i >> (3 - j)) & 1;
        (q(3) << 3) | (q(2) << 2) | ((1 - q(0)) << 1) | (1 - q(1))
    };
    for r in 0..16 {
        for col in 0..16 {
            assert!((sw.get(r, col) - w.get(map(r), map(col))).norm() < 1e-14);
        }
    }
}

#[test]
fn controlled_extends_a_gate() {
    let x = named_gate::<f64>(GateName::X);
    let cx = controlled(&x, &[1]).unwrap();
    let cnot = named_gate::<f64>(GateName::Cnot);
    for r in 0..4 {
        for col in 0..4 {
            assert_eq!(cx.get(r, col), cnot.get(r, col));
        }
    }
    // Anti-controlled X applies on control = 0.
    let acx = controlled(&x, &[0]).unwrap();
    assert_eq!(acx.get(0b01, 0b00), c(1.0, 0.0));
    assert_eq!(acx.get(0b10, 0b10), c(1.0, 0.0));
    assert!(check_unitary(&acx, 1e-12));
    // Two controls build a Toffoli-style gate.
    let ccx = controlled(&x, &[1, 1]).unwrap();
    assert_eq!(ccx.dim(), 8);
    assert_eq!(ccx.get(0b111, 0b110), c(1.0, 0.0));
    assert_eq!(ccx.get(0b010, 0b010), c(1.0, 0.0));
    assert!(check_unitary(&ccx, 1e-12));
}

#[test]
fn tail_swap_spec_builds_the_swap_gate() {
    let table = FSymbolTable::<f64>::standard();
    let spec = FMoveSpec::tail_swap([1, 2, 3, 4]);
    let via_spec = fmove_unitary(&spec, &table);
    let direct = tail_swap_unitary(&CategoryData::<f64>::standard());
    for r in 0..16 {
        for col in 0..16 {
            assert!((via_spec.get(r, col) - direct.get(r, col)).norm() < 1e-15);
        }
    }
}

#[test]
fn generic_scalar_f32_gates() {
    for name in GateName::ALL {
        let g: GateMatrix<f32> = named_gate(name);
        assert!(g.unitarity_residual() < 1e-5);
    }
}
