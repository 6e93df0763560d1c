//! Local integral bounds: the four ratios (sup, gradient, energy, Hessian)
//! of a 2-convex function over nested domains, and their stability across a
//! mollification ladder — the constants are not predicted, only their
//! finiteness and stability.
//!
//! ```bash
//! cargo run --example local_bounds
//! ```

use subhessian::fields::FieldSystem;
use subhessian::grid::{Domain, GridFunction};
use subhessian::measures::local_bounds;
use subhessian::sympoly::Polynomial;

fn main() {
    let system = FieldSystem::heisenberg(1).unwrap();
    let h = 0.04;
    let outer = Domain::new_box(vec![-1.0; 3], vec![1.0; 3], 0.0).unwrap();
    let inner = Domain::new_box(vec![-0.4; 3], vec![0.4; 3], 0.0).unwrap();

    let u = Polynomial::parse(3, "1/2 * x1^2 + 1/2 * x2^2 + 1/4 * x3^2").unwrap();
    let g = GridFunction::sample_polynomial(&u, &outer, h).unwrap();
    let rep = local_bounds(&system, &g, &inner, &outer, 2, 4, 1.2, 0.5).unwrap();
    println!("u = {u}");
    println!("  sup ratio      = {:.6}", rep.sup_ratio);
    println!(
        "  gradient ratio = {:.6}  (q = {})",
        rep.gradient_ratio, rep.q
    );
    println!(
        "  energy ratio   = {:.6}  (r = {})",
        rep.energy_ratio, rep.r
    );
    println!("  Hessian ratio  = {:.6}", rep.hessian_ratio);

    // stability across a mollification ladder of the max-of-quadratics
    // target, on fixed nested domains
    let q1 = Polynomial::parse(3, "1/2 * x1^2 + 1/2 * x2^2").unwrap();
    let q2 = q1
        .add(&Polynomial::parse(3, "1/4 * x1 + 1/10 * x3 - 1/20").unwrap())
        .unwrap();
    let e1 = q1.evaluator();
    let e2 = q2.evaluator();
    let base = GridFunction::sample_fn(
        &|x| e1.eval(x).max(e2.eval(x)),
        vec![-1.0; 3],
        vec![1.0; 3],
        h,
    )
    .unwrap();
    let common_outer = Domain::new_box(vec![-0.7; 3], vec![0.7; 3], 0.0).unwrap();
    println!("\nmollification ladder of max(q1, q2):");
    for eps in [0.25, 0.15, 0.1] {
        let u_eps = base.mollify(eps).unwrap();
        let rep = local_bounds(&system, &u_eps, &inner, &common_outer, 2, 4, 1.0, 0.0).unwrap();
        println!(
            "  eps = {eps}: sup {:.4}  gradient {:.4}  Hessian {:.4}",
            rep.sup_ratio, rep.gradient_ratio, rep.hessian_ratio
        );
    }
}
