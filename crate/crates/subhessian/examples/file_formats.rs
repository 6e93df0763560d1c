//! The two text interchange formats: vector-field systems (`n m name`
//! header plus coefficient rows) and grid functions (axis descriptions,
//! spacing, provenance, row-major values).
//!
//! ```bash
//! cargo run --example file_formats
//! ```

use subhessian::fields::FieldSystem;
use subhessian::grid::{Domain, GridFunction};
use subhessian::sympoly::Polynomial;

fn main() {
    let h1 = FieldSystem::heisenberg(1).unwrap();
    let text = h1.to_text();
    println!("field-system format for heisenberg(1):\n{text}");
    let back = FieldSystem::from_text(&text).unwrap();
    assert_eq!(back.m(), h1.m());
    for i in 1..=h1.m() {
        assert_eq!(back.field(i), h1.field(i));
    }
    println!("round-trip: ok\n");

    // a custom two-field system on R^3 written by hand
    let custom = "\
3 2 rotated
1 ; 0 ; -1/2 * x2
0 ; 1 ; 1/2 * x1 + x2
";
    let sys = FieldSystem::from_text(custom).unwrap();
    println!(
        "custom system `{}` parsed: m = {}, n = {}\n",
        sys.name(),
        sys.m(),
        sys.dim()
    );

    let u = Polynomial::parse(2, "x1 x2").unwrap();
    let dom = Domain::new_box(vec![0.0, 0.0], vec![1.0, 1.0], 0.0).unwrap();
    let g = GridFunction::sample_polynomial(&u, &dom, 0.5).unwrap();
    let gtext = g.to_text();
    println!("grid-function format for x1 x2 on [0,1]^2 at h = 1/2:\n{gtext}");
    let gback = GridFunction::from_text(&gtext).unwrap();
    assert_eq!(gback.values(), g.values());
    println!("round-trip: ok");
}
