//! Symbolic Hessian machinery on the first Heisenberg system: the full and
//! symmetric Hessians, commutator derivatives, the modified 2-Hessian
//! family, the starred variant, and the three Laplacians.
//!
//! ```bash
//! cargo run --example hessian_operators
//! ```

use subhessian::fields::FieldSystem;
use subhessian::hessian::{
    hessian_pair, infinity_laplacian_at, modified_two_hessian, p_laplacian_at, star_two_hessian,
    sub_laplacian,
};
use subhessian::sympoly::{rat, Polynomial};

fn show(system: &FieldSystem, label: &str, u: &Polynomial) {
    println!("u = {u}   ({label})");
    let pair = hessian_pair(system, u).unwrap();
    for i in 0..pair.m() {
        let row: Vec<String> = pair.full[i].iter().map(|p| p.to_string()).collect();
        println!("  X^2 row {}: [{}]", i + 1, row.join(", "));
    }
    println!("  [X1, X2] u = {}", pair.commutator(1, 2));
    for alpha in [rat(0, 1), rat(1, 4), rat(3, 4)] {
        let v = modified_two_hessian(system, u, &alpha).unwrap();
        println!("  F2 + {}*E2 = {}", alpha, v);
    }
    println!(
        "  starred variant = {}",
        star_two_hessian(system, u).unwrap()
    );
    println!("  Delta_X u = {}", sub_laplacian(system, u).unwrap());
    let x = [0.4, -0.3, 0.2];
    println!(
        "  Delta_4 u at {:?} = {:.6}",
        x,
        p_laplacian_at(system, u, 4.0, &x).unwrap()
    );
    println!(
        "  Delta_inf u at {:?} = {:.6}",
        x,
        infinity_laplacian_at(system, u, &x).unwrap()
    );
    println!();
}

fn main() {
    let h1 = FieldSystem::heisenberg(1).unwrap();
    let center = Polynomial::var(3, 3).unwrap();
    show(
        &h1,
        "center coordinate: zero symmetric part, unit commutator",
        &center,
    );
    let horizontal = Polynomial::parse(3, "1/2 * x1^2 + 1/2 * x2^2").unwrap();
    show(
        &h1,
        "horizontal square: identity symmetric Hessian",
        &horizontal,
    );
    let mixed = Polynomial::parse(3, "1/2 * x1^2 + 1/2 * x2^2 + 1/4 * x3^2 + 1/8 * x1 x3").unwrap();
    show(&h1, "mixed quartic-free example", &mixed);
}
