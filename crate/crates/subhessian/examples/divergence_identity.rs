//! The divergence identity: the columns of the linearized modified
//! 2-Hessian are exactly divergence free whenever the coefficient rows are
//! divergence free and second commutators vanish. Certified symbolically on
//! a random rational corpus; the Engel system shows the identity genuinely
//! needs the vanishing-commutator hypothesis.
//!
//! ```bash
//! cargo run --example divergence_identity
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subhessian::fields::FieldSystem;
use subhessian::identities::verify_divergence_identity;
use subhessian::sympoly::Polynomial;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for system in [
        FieldSystem::heisenberg(1).unwrap(),
        FieldSystem::heisenberg(2).unwrap(),
        FieldSystem::euclidean(3).unwrap(),
    ] {
        let mut all_zero = true;
        let mut columns = 0;
        for _ in 0..10 {
            let u = Polynomial::random(system.dim(), 4, &mut rng);
            for res in verify_divergence_identity(&system, &u).unwrap() {
                columns += 1;
                all_zero &= res.is_exact_zero();
            }
        }
        println!(
            "{:<12} {} residual columns over 10 random quartics: {}",
            system.name(),
            columns,
            if all_zero {
                "all exact zero"
            } else {
                "NON-ZERO FOUND"
            }
        );
    }

    // Engel: condition (iii) fails and the residual is a real polynomial
    let engel = FieldSystem::engel().unwrap();
    let u = Polynomial::parse(4, "x1^2 x4").unwrap();
    println!("\nengel, u = x1^2 x4:");
    for res in verify_divergence_identity(&engel, &u).unwrap() {
        match &res.residual_polynomial {
            Some(poly) => println!("  {}: residual = {}", res.name, poly),
            None => println!("  {}: exact zero", res.name),
        }
    }
}
