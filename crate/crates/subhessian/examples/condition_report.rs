//! Structural condition checks for the builtin vector-field systems:
//! anti-self-adjointness, the Hormander spanning step, vanishing second
//! commutators, the weakened span condition, and Z = 0.
//!
//! ```bash
//! cargo run --example condition_report
//! ```

use subhessian::fields::FieldSystem;

fn sample_points(n: usize) -> Vec<Vec<f64>> {
    (0..12)
        .map(|k| {
            (0..n)
                .map(|a| 0.43 * ((k * 5 + a * 3 + 1) as f64).sin())
                .collect()
        })
        .collect()
}

fn main() {
    for system in [
        FieldSystem::euclidean(3).unwrap(),
        FieldSystem::heisenberg(1).unwrap(),
        FieldSystem::heisenberg(2).unwrap(),
        FieldSystem::engel().unwrap(),
    ] {
        let report = system
            .check_conditions(&sample_points(system.dim()), 4)
            .unwrap();
        println!("{:<12} m = {}, n = {}", report.system, report.m, report.n);
        println!(
            "  (i)   anti-self-adjoint: {}",
            if report.all_anti_self_adjoint() {
                "yes (exact)"
            } else {
                "NO"
            }
        );
        println!(
            "  (ii)  Hormander span:    {} at bracket step {}",
            if report.hormander.holds { "yes" } else { "NO" },
            report.hormander.step
        );
        println!(
            "  (iii) second commutators vanish: {}{}",
            if report.step2_vanishing {
                "yes (exact)"
            } else {
                "NO"
            },
            if report.nonvanishing_triples.is_empty() {
                String::new()
            } else {
                format!("  non-vanishing triples {:?}", report.nonvanishing_triples)
            }
        );
        println!(
            "        all second commutators:    {}",
            if report.all_second_commutators_vanish {
                "yes"
            } else {
                "no"
            }
        );
        println!("  weakened span per j: {:?}", report.weakened_span);
        println!(
            "  Z = sum of [X_j, Y_j]: {}",
            if report.z_vanishes {
                "zero field (exact)"
            } else {
                "non-zero"
            }
        );
        println!();
    }
}
