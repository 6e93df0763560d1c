//! The weak-continuity ladder: mollify a non-smooth 2-convex target (a max
//! of two quadratics) at shrinking radii and watch the Hessian-measure
//! pairings converge as the L1 distances collapse, for several alpha.
//!
//! This is a reduced-resolution version of the full experiment; the
//! acceptance suite runs it at h = 0.02.
//!
//! ```bash
//! cargo run --example weak_continuity_ladder
//! ```

use subhessian::fields::FieldSystem;
use subhessian::grid::Domain;
use subhessian::measures::{weak_continuity_experiment, Cutoff, LadderTarget};
use subhessian::sympoly::Polynomial;

fn main() {
    let system = FieldSystem::heisenberg(1).unwrap();
    let q1 = Polynomial::parse(3, "1/2 * x1^2 + 1/2 * x2^2").unwrap();
    let q2 = q1
        .add(&Polynomial::parse(3, "1/4 * x1 + 1/10 * x3 - 1/20").unwrap())
        .unwrap();
    let target = LadderTarget::MaxOfQuadratics(q1, q2);
    let outer = Domain::new_box(vec![-0.8; 3], vec![0.8; 3], 0.0).unwrap();
    let eta = Cutoff::new(vec![0.0; 3], 0.45, "ladder").unwrap();
    let ladder = [0.2, 0.1, 0.05];
    let alphas = [0.0, 0.25, 0.75];
    let h = 0.04;

    let outcome =
        weak_continuity_experiment(&system, &target, &outer, h, &ladder, &eta, &alphas, 1e-6)
            .unwrap();
    println!(
        "target: max of two quadratics; h = {h}; 2-convexity verified: {}",
        outcome.valid
    );
    for (alpha, rows) in &outcome.tables {
        println!("\nalpha = {alpha}");
        println!(
            "  {:>6} {:>12} {:>14} {:>12} {:>14}",
            "eps", "l1_delta", "pairing", "gap", "margin"
        );
        for r in rows {
            println!(
                "  {:>6} {:>12.4e} {:>14.8} {:>12.4e} {:>14.4e}",
                r.eps, r.l1_delta, r.pairing_value, r.pairing_gap, r.kconvex_margin
            );
        }
    }
    println!(
        "\ncsv (alpha = {}):\n{}",
        outcome.tables[2].0,
        outcome.table_csv(2)
    );
}
