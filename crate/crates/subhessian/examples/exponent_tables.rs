//! Exact integrability and Holder exponents as functions of (k, m, Q):
//! p-Laplacian admissibility, gradient integrability, energy exponents, the
//! Sobolev branch, and the Holder regime threshold.
//!
//! ```bash
//! cargo run --example exponent_tables
//! ```

use subhessian::geometry::exponent_report;

fn main() {
    println!(
        "{:>3} {:>3} {:>3} | {:>9} {:>9} {:>9} {:>9} {:>8} {:>7}",
        "k", "m", "Q", "p_lap", "q_grad", "r_energy", "p_sobolev", "thresh", "alpha"
    );
    for (m, q_dim) in [(2usize, 4usize), (4, 6), (3, 4), (2, 3)] {
        for k in 1..=m {
            let rep = exponent_report(k, m, q_dim).unwrap();
            println!(
                "{:>3} {:>3} {:>3} | {:>9} {:>9} {:>9} {:>9} {:>8} {:>7}",
                k,
                m,
                q_dim,
                rep.p_laplace_max.to_string(),
                rep.q_gradient_max.to_string(),
                rep.r_energy_max.to_string(),
                rep.p_sobolev_max.to_string(),
                rep.holder_threshold_k.to_string(),
                rep.holder_alpha
                    .as_ref()
                    .map(|a| a.to_string())
                    .unwrap_or_else(|| "-".into()),
            );
        }
        println!();
    }
    println!("H^1 is (m, Q) = (2, 4); the top case k = m always carries alpha = 1.");
}
