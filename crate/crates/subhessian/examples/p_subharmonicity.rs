//! k-convex functions are subharmonic for the p-Laplacian up to
//! `p - 1 = k(m-1)/(m-k)`, with the infinity-Laplacian covering the top
//! case `k = m`.
//!
//! ```bash
//! cargo run --example p_subharmonicity
//! ```

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subhessian::fields::FieldSystem;
use subhessian::identities::verify_p_subharmonicity;
use subhessian::sympoly::Polynomial;

fn main() {
    let h2 = FieldSystem::heisenberg(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let samples: Vec<Vec<f64>> = (0..500)
        .map(|_| (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();

    // horizontal square on H^2: 2-convex with margin
    let u = Polynomial::parse(5, "x1^2 + x2^2 + x3^2 + x4^2").unwrap();
    println!("u = {u} on heisenberg(2), m = 4:");
    for (k, p) in [(1usize, 2.0), (2, 3.0), (2, 4.0)] {
        let rep = verify_p_subharmonicity(&h2, &u, k, &samples, p, 1e-9).unwrap();
        println!(
            "  k = {k}, p = {p}: min Delta_p = {:+.4e}, bound margin {:?}, {}",
            rep.min_value,
            rep.bound_margin.map(|v| format!("{v:+.3e}")),
            if rep.holds { "holds" } else { "FAILS" }
        );
    }
    // the admissibility guard: p beyond the bound is a rejected input
    match verify_p_subharmonicity(&h2, &u, 2, &samples, 5.0, 1e-9) {
        Err(e) => println!("  k = 2, p = 5: rejected input ({e})"),
        Ok(_) => println!("  k = 2, p = 5: unexpectedly accepted"),
    }
    // the top case on H^1 via the infinity-Laplacian
    let h1 = FieldSystem::heisenberg(1).unwrap();
    let convex = Polynomial::parse(3, "1/2 * x1^2 + 1/2 * x2^2").unwrap();
    let samples3: Vec<Vec<f64>> = (0..500)
        .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let rep = verify_p_subharmonicity(&h1, &convex, 2, &samples3, f64::INFINITY, 1e-9).unwrap();
    println!(
        "\nh1, u = horizontal square, k = m = 2, p = inf: min Delta_inf = {:+.4e}, {}",
        rep.min_value,
        if rep.holds { "holds" } else { "FAILS" }
    );
}
