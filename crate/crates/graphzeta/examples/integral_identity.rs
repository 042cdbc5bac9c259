//! A two-parameter definite integral with an elementary closed form.
//!
//! The length-derivative route to Casimir forces on equal stars produces,
//! after scaling out the bond length, the family
//!
//! ```text
//! ∫₀^∞ x (a sech²x − b csch²x) / (a tanh x + b coth x) dx
//!     = θ(θ − π) + π²/8,      θ = arcsin√(b/(a+b)),
//! ```
//!
//! interpolating between π²/8 (pure `tanh`, b = 0) and −π²/8 (pure `coth`,
//! a = 0), with the symmetric point a = b at −π²/16.  The example sweeps a
//! grid and confirms quadrature against the closed form everywhere.
//!
//! Run with: `cargo run --example integral_identity`

use graphzeta::integral_identity;
use std::f64::consts::PI;

fn main() {
    println!("lhs: quadrature, rhs: θ(θ−π) + π²/8 with θ = arcsin√(b/(a+b))");
    println!();

    // the three corners with recognizable values
    for (a, b, label) in [
        (1.0, 0.0, "π²/8"),
        (0.0, 1.0, "−π²/8"),
        (1.0, 1.0, "−π²/16"),
    ] {
        let check = integral_identity(a, b).unwrap();
        println!(
            "a = {a}, b = {b}:  {:+.15}  ({label} = {:+.15}),  |err| = {:.1e}",
            check.numeric,
            check.closed_form,
            check.abs_error
        );
        assert!(check.abs_error < 1e-10);
    }

    // a 5×5 grid over [1/2, 4]²
    println!();
    println!("5×5 grid over (a, b) ∈ [0.5, 4]²:");
    let pts = [0.5, 1.0, 2.0, 3.0, 4.0];
    let mut worst = 0.0f64;
    print!("{:>6}", "a\\b");
    for &b in &pts {
        print!("  {b:>9}");
    }
    println!();
    for &a in &pts {
        print!("{a:>6}");
        for &b in &pts {
            let check = integral_identity(a, b).unwrap();
            print!("  {:>9.1e}", check.abs_error);
            worst = worst.max(check.abs_error);
        }
        println!();
    }
    println!();
    println!("worst |lhs − rhs| on the grid: {worst:.2e}");
    assert!(worst < 1e-9);

    // scale invariance (a, b) → (c·a, c·b) is manifest on the rhs; check
    // the quadrature sees it too
    let base = integral_identity(1.3, 0.7).unwrap();
    let scaled = integral_identity(13.0, 7.0).unwrap();
    assert!((base.numeric - scaled.numeric).abs() < 1e-10);
    println!("scale invariance (a,b) → (10a,10b): {:.1e}",
        (base.numeric - scaled.numeric).abs());

    let theta = (0.5f64).sqrt().asin();
    println!();
    println!(
        "θ runs from 0 to π/2; at a = b, θ = π/4 gives {:.12} = −π²/16",
        theta * (theta - PI) + PI * PI / 8.0
    );
}
