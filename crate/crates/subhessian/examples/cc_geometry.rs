//! Carnot-Caratheodory geometry: distance estimates by control shooting,
//! the anisotropic dilation scaling of the Heisenberg metric, Monte Carlo
//! ball volumes, and the homogeneous-dimension fit.
//!
//! ```bash
//! cargo run --example cc_geometry
//! ```

use subhessian::fields::FieldSystem;
use subhessian::geometry::{
    ball_volume, cc_distance, doubling_check, homogeneous_dimension, PathBudget,
};

fn main() {
    let budget = PathBudget::full();

    // flat sanity: straight lines are optimal
    let e3 = FieldSystem::euclidean(3).unwrap();
    let est = cc_distance(&e3, &[0.0; 3], &[0.6, 0.3, -0.2], &budget, 1).unwrap();
    let euclid = (0.6f64 * 0.6 + 0.09 + 0.04).sqrt();
    println!(
        "euclidean(3): estimate {:.5} vs |x-y| = {:.5} ({} path nodes)",
        est.upper_bound,
        euclid,
        est.path.nodes.len()
    );

    // the Heisenberg center direction is reachable only through the bracket
    let h1 = FieldSystem::heisenberg(1).unwrap();
    let vertical = cc_distance(&h1, &[0.0; 3], &[0.0, 0.0, 0.25], &budget, 2).unwrap();
    println!(
        "heisenberg(1): d(0, (0,0,1/4)) <= {:.5} (ideal sqrt(pi) ~ {:.5})",
        vertical.upper_bound,
        (4.0 * std::f64::consts::PI * 0.25).sqrt()
    );

    // anisotropic dilation scaling d(0, (sx1, sx2, s^2 x3)) = s d(0, x)
    let y = [0.4, 0.2, 0.1];
    let d1 = cc_distance(&h1, &[0.0; 3], &y, &budget, 3)
        .unwrap()
        .upper_bound;
    println!("\ndilation scaling on heisenberg(1), base distance {d1:.5}:");
    for s in [0.5, 2.0] {
        let ys = [s * y[0], s * y[1], s * s * y[2]];
        let ds = cc_distance(&h1, &[0.0; 3], &ys, &budget, 3)
            .unwrap()
            .upper_bound;
        println!("  s = {s}: estimate {ds:.5}, s * base = {:.5}", s * d1);
    }

    // Monte Carlo volumes and the dimension fit
    let coarse = PathBudget::coarse();
    let v = ball_volume(&e3, &[0.0; 3], 1.0, 1000, 11, &coarse).unwrap();
    println!(
        "\neuclidean(3) unit ball: {:.4} ± {:.4} (exact 4π/3 = {:.4})",
        v.volume,
        v.standard_error,
        4.0 * std::f64::consts::PI / 3.0
    );

    let fit = homogeneous_dimension(&h1, &[0.0; 3], &[0.25, 0.5, 1.0], 1000, 42, &coarse).unwrap();
    println!("\nheisenberg(1) dimension fit:");
    for vol in &fit.volumes {
        println!(
            "  R = {:4}: volume {:.5} ± {:.5}  (box grown {} times)",
            vol.radius, vol.volume, vol.standard_error, vol.enlargements
        );
    }
    println!(
        "  Q_fit = {:.3} (ceil {}), doubling at C = 1: {}",
        fit.q_fit,
        fit.q_ceil,
        doubling_check(&fit.volumes, 4)
    );
}
