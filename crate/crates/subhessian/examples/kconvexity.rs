//! Pointwise k-convexity scans: which test functions keep their first k
//! elementary symmetric Hessian functions non-negative?
//!
//! ```bash
//! cargo run --example kconvexity
//! ```

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subhessian::fields::FieldSystem;
use subhessian::hessian::k_convexity;
use subhessian::sympoly::Polynomial;

fn main() {
    let h1 = FieldSystem::heisenberg(1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples: Vec<Vec<f64>> = (0..400)
        .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();

    let cases = [
        ("1/2 * x1^2 + 1/2 * x2^2", "horizontal square"),
        ("x3", "center coordinate"),
        ("1/2 * x1^2 + 1/2 * x2^2 + 1/2 * x3^2", "full square"),
        ("1/2 * x1^2 - 1/2 * x2^2", "horizontal saddle"),
        ("x1^2 x2^2", "degenerate quartic"),
    ];
    for (text, label) in cases {
        let u = Polynomial::parse(3, text).unwrap();
        for k in [1usize, 2] {
            let rep = k_convexity(&h1, &u, k, &samples, 1e-9).unwrap();
            println!(
                "{label:<20} k = {k}: {}  worst S_{} = {:+.4e} at {:?}",
                if rep.holds { "holds " } else { "FAILS " },
                rep.worst_j,
                rep.worst_value,
                rep.worst_point
                    .iter()
                    .map(|v| (v * 100.0).round() / 100.0)
                    .collect::<Vec<_>>()
            );
        }
        println!();
    }
}
