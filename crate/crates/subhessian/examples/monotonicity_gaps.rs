//! Integral monotonicity of the modified 2-Hessian: ordered
//! boundary-matched pairs produce non-negative quadrature gaps, with the
//! starred variant covering the Engel system. Includes the null-Lagrangian
//! edge case: increments vanishing to high order at the boundary produce
//! exactly zero gaps.
//!
//! ```bash
//! cargo run --example monotonicity_gaps
//! ```

use subhessian::fields::FieldSystem;
use subhessian::grid::Domain;
use subhessian::identities::{
    monotonicity_gap, standard_monotone_pairs, unit_bump_polynomial, MonotoneOperator,
};
use subhessian::sympoly::{rat, Polynomial};

fn main() {
    let h1 = FieldSystem::heisenberg(1).unwrap();
    let box3 = Domain::new_box(vec![-1.0; 3], vec![1.0; 3], 0.05).unwrap();
    println!("modified 2-Hessian gaps on heisenberg(1), box [-1,1]^3:");
    for (idx, (u, v)) in standard_monotone_pairs(3, 5).into_iter().enumerate() {
        let rep = monotonicity_gap(&h1, &u, &v, &box3, MonotoneOperator::Modified, 16).unwrap();
        println!(
            "  pair {idx}: gap = {:9.4} ± {:.2e}  (coarse {:9.4}, ellipticity margin {:.2})",
            rep.gap, rep.quadrature_error, rep.coarse_gap, rep.ellipticity_margin
        );
    }

    let engel = FieldSystem::engel().unwrap();
    let box4 = Domain::new_box(vec![-1.0; 4], vec![1.0; 4], 0.05).unwrap();
    println!("\nstarred gaps on engel, box [-1,1]^4:");
    for (idx, (u, v)) in standard_monotone_pairs(4, 3).into_iter().enumerate() {
        let rep = monotonicity_gap(&engel, &u, &v, &box4, MonotoneOperator::Starred, 8).unwrap();
        println!(
            "  pair {idx}: gap = {:9.4} ± {:.2e}",
            rep.gap, rep.quadrature_error
        );
    }

    // compactly-flattening increments: the integral of the operator over a
    // function vanishing to high order at the boundary is zero, so the gap
    // collapses to quadrature noise around zero
    let ball = Domain::new_ball(vec![0.0; 3], 1.0, 0.05).unwrap();
    let u = Polynomial::parse(3, "2 x1^2 + 2 x2^2 + 2 x3^2").unwrap();
    let v = u.add(&unit_bump_polynomial(3).scale(&rat(1, 10))).unwrap();
    let rep = monotonicity_gap(&h1, &u, &v, &ball, MonotoneOperator::Modified, 24).unwrap();
    println!(
        "\ncubed-bump pair on the unit ball: gap = {:+.3e} ± {:.1e} (exactly zero in the limit)",
        rep.gap, rep.quadrature_error
    );
}
