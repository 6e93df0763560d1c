//! Tensor-grid midpoint quadrature over boxes and balls, with a
//! two-resolution refinement step that turns the O(h^2) midpoint error into
//! a usable error estimate.

use crate::error::{Error, Result};
use crate::grid::{Domain, DomainShape};

/// A quadrature value together with its coarse companion and the Richardson
/// error estimate `|fine - coarse| / 3`.
#[derive(Clone, Copy, Debug)]
pub struct RefinedValue {
    pub value: f64,
    pub coarse: f64,
    pub error_estimate: f64,
}

/// Midpoint rule with `cells` cells per axis over the bounding box of the
/// domain; ball domains keep only nodes inside the ball, which is exact
/// enough for integrands supported away from the boundary.
pub fn midpoint_integral(
    domain: &Domain,
    cells: usize,
    f: &mut dyn FnMut(&[f64]) -> f64,
) -> Result<f64> {
    if cells == 0 {
        return Err(Error::RejectedInput("need at least one cell".into()));
    }
    let (lo, hi) = domain.bounding_box();
    let n = lo.len();
    let h: Vec<f64> = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a) / cells as f64)
        .collect();
    let weight: f64 = h.iter().product();
    let is_ball = matches!(domain.shape, DomainShape::Ball { .. });
    let mut point = vec![0.0; n];
    let mut idx = vec![0usize; n];
    let total = cells.pow(n as u32);
    let mut acc = 0.0;
    for lin in 0..total {
        let mut rem = lin;
        for i in (0..n).rev() {
            idx[i] = rem % cells;
            rem /= cells;
        }
        for i in 0..n {
            point[i] = lo[i] + (idx[i] as f64 + 0.5) * h[i];
        }
        if !is_ball || domain.contains(&point) {
            acc += f(&point);
        }
    }
    Ok(acc * weight)
}

/// Midpoint quadrature at `cells` and `2 * cells` per axis.
pub fn midpoint_with_refinement(
    domain: &Domain,
    cells: usize,
    f: &mut dyn FnMut(&[f64]) -> f64,
) -> Result<RefinedValue> {
    let coarse = midpoint_integral(domain, cells, f)?;
    let fine = midpoint_integral(domain, 2 * cells, f)?;
    Ok(RefinedValue {
        value: fine,
        coarse,
        error_estimate: (fine - coarse).abs() / 3.0,
    })
}

/// Visit the midpoint nodes without integrating (used for pointwise
/// precondition scans at quadrature nodes).
pub fn for_each_node(domain: &Domain, cells: usize, f: &mut dyn FnMut(&[f64])) -> Result<()> {
    midpoint_integral(domain, cells, &mut |x| {
        f(x);
        0.0
    })
    .map(|_| ())
}
