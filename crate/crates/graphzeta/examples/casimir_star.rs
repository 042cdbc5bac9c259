//! Vacuum (Casimir) energy of equal-length star graphs, against closed
//! forms, plus the force that the vacuum exerts on a bond end.
//!
//! For `B` equal bonds of length `L` the renormalized vacuum energy
//! `E_c = ζ(−1/2)/2` is known in closed form:
//!
//! * all ends Neumann:          `E_c = π(B−3)/(48L)`
//! * `B_D` ends Dirichlet:      `E_c = (π/48L)(B − 3(B_D+1) + 24α(1−α))`,
//!   `α = arcsin(√(B_D/B))/π`
//!
//! The energy here is computed three independent ways: the contour zeta
//! representation, a single direct integral, and (for the force) the
//! derivative route that stays finite even when the energy itself diverges.
//!
//! Run with: `cargo run --example casimir_star`

use graphzeta::{
    casimir_energy, casimir_force_free, star_vacuum_energy_direct, Graph, NodeCondition,
    SecularForm,
};
use std::f64::consts::PI;

fn closed_form(b: usize, b_d: usize, l: f64) -> f64 {
    if b_d == 0 {
        PI * (b as f64 - 3.0) / (48.0 * l)
    } else {
        let alpha = (b_d as f64 / b as f64).sqrt().asin() / PI;
        PI / (48.0 * l) * (b as f64 - 3.0 * (b_d as f64 + 1.0) + 24.0 * alpha * (1.0 - alpha))
    }
}

fn main() {
    let l = 1.0;
    println!("equal star, L = {l}: vacuum energy E_c = ζ(−1/2)/2");
    println!(
        "{:>3} {:>4}  {:>18}  {:>18}  {:>18}",
        "B", "B_D", "zeta route", "direct integral", "closed form"
    );
    for &(b, b_d) in &[(3usize, 0usize), (4, 1), (3, 2), (2, 2)] {
        let graph = Graph::new(vec![l; b]).unwrap();
        let nodes: Vec<NodeCondition> = (0..b)
            .map(|i| {
                if i < b_d {
                    NodeCondition::Dirichlet
                } else {
                    NodeCondition::Neumann
                }
            })
            .collect();
        let form = SecularForm::star_sum(&graph, &nodes, 0.0).unwrap();
        let via_zeta = casimir_energy(&form)
            .unwrap()
            .energy
            .expect("finite for λ = 0");
        let via_integral = star_vacuum_energy_direct(&graph, &nodes).unwrap();
        let closed = closed_form(b, b_d, l);
        println!(
            "{b:>3} {b_d:>4}  {via_zeta:>18.12}  {via_integral:>18.12}  {closed:>18.12}"
        );
        assert!((via_zeta - closed).abs() < 1e-9);
        assert!((via_integral - closed).abs() < 1e-9);
    }

    // Force on one bond end: F = ∂E_c/∂L_β.  On the equal Neumann star the
    // closed form scales like 1/L², attractive or repulsive depending on B.
    println!();
    println!("force ∂E_c/∂L on one bond of the equal Neumann star (L = {l}):");
    println!("{:>3}  {:>18}  {:>18}", "B", "computed", "π(3−B)/(48B L²)");
    for b in [2usize, 3, 4] {
        let graph = Graph::new(vec![l; b]).unwrap();
        let form =
            SecularForm::star_sum(&graph, &vec![NodeCondition::Neumann; b], 0.0).unwrap();
        let force = casimir_force_free(&form, 0).unwrap();
        let closed = PI * (3.0 - b as f64) / (48.0 * b as f64 * l * l);
        println!("{b:>3}  {force:>18.12}  {closed:>18.12}");
        assert!((force - closed).abs() < 1e-9);
    }
    println!();
    println!("B = 3 is neutral; fewer bonds pull outward, more push inward.");
}
