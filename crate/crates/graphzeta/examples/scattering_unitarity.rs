//! Vertex scattering matrices and their unitarity on the real axis.
//!
//! Every self-adjoint matching condition `(A, B)` defines, for real `k > 0`,
//! the vertex scattering matrix `S(k) = −(A + ikB)⁻¹(A − ikB)`, which must
//! be unitary — that is what makes the secular function's zeros real.  The
//! example builds three different vertices (a star preset, a rigid-wall
//! center, and a random self-adjoint pair) and measures
//! `‖S(k)S(k)† − I‖_max` across the axis.
//!
//! Run with: `cargo run --example scattering_unitarity`

use graphzeta::graph::random_self_adjoint;
use graphzeta::{ConditionKind, NodeCondition};
use nalgebra::DMatrix;

fn max_defect(mc: &graphzeta::MatchingConditions, ks: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for &k in ks {
        let s = mc.scattering_matrix(k).expect("scattering matrix at real k");
        let dim = s.nrows();
        let gram = &s * s.adjoint();
        let defect = (gram - DMatrix::identity(dim, dim))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        worst = worst.max(defect);
    }
    worst
}

fn main() {
    let ks: Vec<f64> = (1..=50).map(|i| i as f64).collect();

    // star preset: 3 bonds, mixed ends, δ center of strength 2
    let kind = ConditionKind::Star {
        nodes: vec![
            NodeCondition::Neumann,
            NodeCondition::Dirichlet,
            NodeCondition::Neumann,
        ],
        lambda: 2.0,
    };
    let mc = kind.matching_conditions().unwrap();
    println!("mixed star with δ center (6×6):");
    println!("  hermiticity defect ‖AB† − BA†‖ = {:.2e}", mc.hermiticity_defect());
    println!("  max unitarity defect over 50 k: {:.2e}", max_defect(&mc, &ks));
    assert!(max_defect(&mc, &ks) < 1e-10);

    // rigid interior wall: Dirichlet everywhere
    let kind = ConditionKind::StarCenter {
        a_c: DMatrix::identity(2, 2),
        b_c: DMatrix::zeros(2, 2),
    };
    let mc = kind.matching_conditions().unwrap();
    println!();
    println!("rigid wall / decoupled intervals (4×4):");
    println!("  max unitarity defect over 50 k: {:.2e}", max_defect(&mc, &ks));
    assert!(max_defect(&mc, &ks) < 1e-10);

    // random self-adjoint conditions: three seeds
    println!();
    println!("random self-adjoint vertices (8×8):");
    for seed in [1u64, 2, 3] {
        let mc = random_self_adjoint(8, seed);
        let defect = max_defect(&mc, &ks);
        println!("  seed {seed}: hermiticity {:.2e}, unitarity {defect:.2e}",
            mc.hermiticity_defect());
        assert!(defect < 1e-10);
    }

    println!();
    println!("all scattering matrices unitary to 1e-10 — eigenvalues stay real.");
}
