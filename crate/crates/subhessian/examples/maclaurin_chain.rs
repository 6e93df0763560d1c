//! The elementary-symmetric decomposition and the MacLaurin ratio chain on
//! admissible eigenvalue vectors.
//!
//! ```bash
//! cargo run --example maclaurin_chain
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subhessian::hessian::elementary_symmetric_values;
use subhessian::identities::{maclaurin_chain, sample_admissible_lambda};

fn main() {
    // the equality case: lambda = (1,1,1), k = 2 meets the upper bound
    let lambda = [1.0, 1.0, 1.0];
    let s21 = elementary_symmetric_values(&lambda, 2, Some(0)).unwrap();
    let s11 = elementary_symmetric_values(&lambda, 1, Some(0)).unwrap();
    println!("lambda = (1,1,1), k = 2:");
    println!("  S_{{2,1}}/S_{{1,1}} = {}/{} = {}", s21, s11, s21 / s11);
    println!("  upper bound (m-k)/(k(m-1)) * S_{{1,1}} = 1/4 * 2 = 0.5\n");

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (m, k) in [(3usize, 2usize), (4, 2), (5, 3)] {
        let mut accepted = 0usize;
        let mut attempts = 0usize;
        let trials = 2000;
        let mut worst_margin = f64::INFINITY;
        while accepted < trials {
            attempts += 1;
            if attempts > 500 * trials {
                break;
            }
            let lambda = sample_admissible_lambda(m, k, &mut rng).unwrap();
            let res = maclaurin_chain(&lambda, k, 1e-12).unwrap();
            assert!(res.holds(), "chain violated at {lambda:?}");
            worst_margin = worst_margin.min(res.residual_norm);
            accepted += 1;
        }
        println!(
            "(m, k) = ({m}, {k}): {accepted} admissible samples hold the chain, tightest margin {worst_margin:.3e}"
        );
    }
}
