//! Hessian-measure pairings `∫ η (F_2 + α E_2)[u]`, the mollification
//! ladder that exercises weak continuity on a non-smooth 2-convex target,
//! and the local integral bounds.
//!
//! The grid path composes subelliptic derivatives from central coordinate
//! differences through the field coefficients; the symbolic path applies the
//! exact operators and only quadratures at the end. Their agreement is
//! itself one of the cross-checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::FieldSystem;
use crate::geometry::{self, Exponent};
use crate::grid::{Domain, DomainShape, GridFunction};
use crate::hessian;
use crate::quad;
use crate::sympoly::{rat, rat_to_f64, Polynomial};

/// Polynomial bump cutoff `((1 - |x-c|^2 / rho^2)_+)^3`: C^2, compactly
/// supported on the closed ball `B(center, rho)`.
#[derive(Clone, Debug, Serialize)]
pub struct Cutoff {
    pub center: Vec<f64>,
    pub rho: f64,
    pub id: String,
}

impl Cutoff {
    pub fn new(center: Vec<f64>, rho: f64, id: impl Into<String>) -> Result<Self> {
        if rho <= 0.0 || center.is_empty() {
            return Err(Error::RejectedInput(
                "cutoff needs a positive radius".into(),
            ));
        }
        Ok(Cutoff {
            center,
            rho,
            id: id.into(),
        })
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut r2 = 0.0;
        for (v, c) in x.iter().zip(&self.center) {
            r2 += (v - c) * (v - c);
        }
        let q = 1.0 - r2 / (self.rho * self.rho);
        if q > 0.0 {
            q * q * q
        } else {
            0.0
        }
    }

    /// Support ball as a domain.
    pub fn support(&self) -> Domain {
        Domain {
            shape: DomainShape::Ball {
                center: self.center.clone(),
                radius: self.rho,
            },
            boundary_shell_width: 0.0,
        }
    }

    /// Numerical mass `∫ η` by midpoint quadrature at spacing ~`h`.
    pub fn mass(&self, h: f64) -> Result<f64> {
        let cells = ((2.0 * self.rho / h).ceil() as usize).max(4);
        quad::midpoint_integral(&self.support(), cells, &mut |x| self.eval(x))
    }
}

/// One pairing value with its bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct PairingResult {
    pub eta_id: String,
    pub alpha: f64,
    /// `∫ η (F_2 + α E_2)[u]`.
    pub value: f64,
    /// `∫ |u - v|` against the reference when one exists (0 for v = u).
    pub l1_delta: f64,
    /// `∫ |u + v|` with `v = u` for a standalone pairing.
    pub l1_mass: f64,
    pub resolution: f64,
    pub error_estimate: f64,
}

/// Subelliptic derivative grids of one function: symmetric Hessian entries
/// and the derived `S_1`, `S_2`, `E_2` fields, restricted to the common
/// valid lattice region.
pub struct HessianGrids {
    pub m: usize,
    /// Upper-triangle symmetric entries, `sym[i][j]` for `i <= j` (0-based).
    pub sym: Vec<Vec<Option<GridFunction>>>,
    pub s1: GridFunction,
    pub s2: GridFunction,
    pub e2: GridFunction,
    /// First derivatives `X_i u`.
    pub first: Vec<GridFunction>,
}

/// `X_i g` on the one-cell-shrunk lattice: `Σ_l b^{il}(x) D_l g`.
pub fn field_derivative_grid(
    system: &FieldSystem,
    i: usize,
    g: &GridFunction,
) -> Result<GridFunction> {
    let n = system.dim();
    if g.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.dim(),
        });
    }
    let mut parts: Vec<GridFunction> = Vec::new();
    for l in 0..n {
        let b = system.field(i).component(l + 1);
        if b.is_zero() {
            continue;
        }
        let d = g.central_difference(l)?;
        parts.push(d.scaled_by_poly(&b.evaluator()));
    }
    if parts.is_empty() {
        // zero coefficient row: zero function on a shrunk grid
        return Ok(g.central_difference(0)?.map(&|_| 0.0));
    }
    let refs: Vec<(f64, &GridFunction)> = parts.iter().map(|p| (1.0, p)).collect();
    GridFunction::combine(&refs)
}

/// All second subelliptic derivatives of `g` by composed central
/// differences (two cells of margin consumed).
pub fn hessian_grids(system: &FieldSystem, g: &GridFunction) -> Result<HessianGrids> {
    let m = system.m();
    let first: Vec<GridFunction> = (1..=m)
        .map(|i| field_derivative_grid(system, i, g))
        .collect::<Result<_>>()?;
    let mut second: Vec<Vec<GridFunction>> = Vec::with_capacity(m);
    for i in 1..=m {
        let mut row = Vec::with_capacity(m);
        for fj in &first {
            row.push(field_derivative_grid(system, i, fj)?);
        }
        second.push(row);
    }
    let mut sym: Vec<Vec<Option<GridFunction>>> = vec![vec![None; m]; m];
    for i in 0..m {
        for j in i..m {
            sym[i][j] = Some(GridFunction::combine(&[
                (0.5, &second[i][j]),
                (0.5, &second[j][i]),
            ])?);
        }
    }
    let diag: Vec<(f64, &GridFunction)> =
        (0..m).map(|i| (1.0, sym[i][i].as_ref().unwrap())).collect();
    let s1 = GridFunction::combine(&diag)?;
    // S_2 = Σ_{i<j} (s_ii s_jj - s_ij^2)
    let mut s2_parts: Vec<GridFunction> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let prod = sym[i][i]
                .as_ref()
                .unwrap()
                .product(sym[j][j].as_ref().unwrap())?;
            let off = sym[i][j].as_ref().unwrap();
            let off2 = off.product(off)?;
            s2_parts.push(GridFunction::combine(&[(1.0, &prod), (-1.0, &off2)])?);
        }
    }
    let s2 = if s2_parts.is_empty() {
        s1.map(&|_| 0.0)
    } else {
        let refs: Vec<(f64, &GridFunction)> = s2_parts.iter().map(|p| (1.0, p)).collect();
        GridFunction::combine(&refs)?
    };
    // E_2 = Σ_{i<j} ([X_i, X_j] u)^2 from the antisymmetric parts
    let mut e2_parts: Vec<GridFunction> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let c = GridFunction::combine(&[(1.0, &second[i][j]), (-1.0, &second[j][i])])?;
            e2_parts.push(c.product(&c)?);
        }
    }
    let e2 = if e2_parts.is_empty() {
        s1.map(&|_| 0.0)
    } else {
        let refs: Vec<(f64, &GridFunction)> = e2_parts.iter().map(|p| (1.0, p)).collect();
        GridFunction::combine(&refs)?
    };
    Ok(HessianGrids {
        m,
        sym,
        s1,
        s2,
        e2,
        first,
    })
}

impl HessianGrids {
    /// Minimum of `min(S_1, S_2)` over the available region: the
    /// 2-convexity margin.
    pub fn two_convexity_margin(&self) -> Result<f64> {
        let minima = self.s1.zip_map(&self.s2, &|a, b| a.min(b))?;
        Ok(minima.min_over(None))
    }
}

fn eta_weighted(field: &GridFunction, eta: &Cutoff) -> GridFunction {
    field.map_with_position(&|x, v| v * eta.eval(x))
}

fn support_inside(field: &GridFunction, eta: &Cutoff) -> bool {
    let lo = field.lo();
    let hi = field.hi();
    eta.center
        .iter()
        .enumerate()
        .all(|(i, c)| c - eta.rho >= lo[i] - 1e-12 && c + eta.rho <= hi[i] + 1e-12)
}

/// Pairing of a symbolic function: exact operators, quadrature at ~`h`.
pub fn pairing_polynomial(
    system: &FieldSystem,
    u: &Polynomial,
    eta: &Cutoff,
    alpha: f64,
    h: f64,
) -> Result<PairingResult> {
    if eta.center.len() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            got: eta.center.len(),
        });
    }
    let f2 = hessian::modified_two_hessian(system, u, &rat(0, 1))?;
    let e2 = hessian::commutator_energy(system, u)?;
    let f2e = f2.evaluator();
    let e2e = e2.evaluator();
    let support = eta.support();
    let cells = ((2.0 * eta.rho / h).ceil() as usize).max(4);
    let refined = quad::midpoint_with_refinement(&support, cells, &mut |x| {
        eta.eval(x) * (f2e.eval(x) + alpha * e2e.eval(x))
    })?;
    let ue = u.evaluator();
    let mass = quad::midpoint_integral(&support, cells, &mut |x| 2.0 * ue.eval(x).abs())?;
    Ok(PairingResult {
        eta_id: eta.id.clone(),
        alpha,
        value: refined.value,
        l1_delta: 0.0,
        l1_mass: mass,
        resolution: 2.0 * eta.rho / (2 * cells) as f64,
        error_estimate: refined.error_estimate,
    })
}

/// Pairing of a grid function: finite-difference subelliptic Hessians, then
/// an eta-weighted lattice sum; the error estimate compares against the
/// stride-2 sublattice.
pub fn pairing_grid(
    system: &FieldSystem,
    g: &GridFunction,
    eta: &Cutoff,
    alpha: f64,
) -> Result<PairingResult> {
    let grids = hessian_grids(system, g)?;
    pairing_from_grids(&grids, g, eta, alpha)
}

fn pairing_from_grids(
    grids: &HessianGrids,
    g: &GridFunction,
    eta: &Cutoff,
    alpha: f64,
) -> Result<PairingResult> {
    let combined = GridFunction::combine(&[(1.0, &grids.s2), (alpha, &grids.e2)])?;
    if !support_inside(&combined, eta) {
        return Err(Error::SupportViolation(format!(
            "cutoff ball (center {:?}, rho {}) leaves the derivative lattice",
            eta.center, eta.rho
        )));
    }
    let weighted = eta_weighted(&combined, eta);
    let value = weighted.integral_over(None, &|v| v);
    let coarse = weighted.integral_over_coarse(None, &|v| v);
    let support = eta.support();
    let mass = g.integral_over(Some(&support), &|v| 2.0 * v.abs());
    Ok(PairingResult {
        eta_id: eta.id.clone(),
        alpha,
        value,
        l1_delta: 0.0,
        l1_mass: mass,
        resolution: g.spacing(),
        error_estimate: (value - coarse).abs() / 3.0,
    })
}

/// Target of the weak-continuity ladder.
#[derive(Clone, Debug)]
pub enum LadderTarget {
    Polynomial(Polynomial),
    /// `max(q1, q2)`: the canonical non-smooth 2-convex candidate.
    MaxOfQuadratics(Polynomial, Polynomial),
}

impl LadderTarget {
    fn sample(&self, lo: Vec<f64>, hi: Vec<f64>, h: f64) -> Result<GridFunction> {
        match self {
            LadderTarget::Polynomial(p) => {
                let ev = p.evaluator();
                GridFunction::sample_fn(&|x| ev.eval(x), lo, hi, h)
            }
            LadderTarget::MaxOfQuadratics(a, b) => {
                let ea = a.evaluator();
                let eb = b.evaluator();
                GridFunction::sample_fn(&|x| ea.eval(x).max(eb.eval(x)), lo, hi, h)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderMember {
    pub eps: f64,
    /// `∫_{Ω'} |u_eps - u_{eps_min}|`.
    pub l1_delta: f64,
    /// Eta-weighted `S_2` part of the pairing.
    pub f2_part: f64,
    /// Eta-weighted commutator-energy part.
    pub e2_part: f64,
    /// `min(S_1, S_2)` over the evaluation region.
    pub kconvex_margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderRow {
    pub eps: f64,
    pub l1_delta: f64,
    pub pairing_value: f64,
    pub pairing_gap: f64,
    pub kconvex_margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakContinuityOutcome {
    pub h: f64,
    pub members: Vec<LadderMember>,
    /// One `(alpha, rows)` table per requested alpha.
    pub tables: Vec<(f64, Vec<LadderRow>)>,
    /// Every ladder member passed the 2-convexity check.
    pub valid: bool,
    pub convexity_tol: f64,
}

impl WeakContinuityOutcome {
    /// CSV with the ladder columns for one alpha table.
    pub fn table_csv(&self, table_index: usize) -> String {
        let mut out = String::from("eps,l1_delta,pairing_gap,kconvex_margin\n");
        if let Some((_, rows)) = self.tables.get(table_index) {
            for r in rows {
                out.push_str(&format!(
                    "{:.6e},{:.10e},{:.10e},{:.10e}\n",
                    r.eps, r.l1_delta, r.pairing_gap, r.kconvex_margin
                ));
            }
        }
        out
    }
}

/// Run the mollification ladder: sample the target on the box `outer`,
/// mollify at each `eps` (descending), pair against the cutoff, and report
/// pairing gaps relative to the smallest `eps` alongside the verified
/// 2-convexity margins.
#[allow(clippy::too_many_arguments)]
pub fn weak_continuity_experiment(
    system: &FieldSystem,
    target: &LadderTarget,
    outer: &Domain,
    h: f64,
    eps_ladder: &[f64],
    eta: &Cutoff,
    alphas: &[f64],
    convexity_tol: f64,
) -> Result<WeakContinuityOutcome> {
    if eps_ladder.len() < 2 {
        return Err(Error::RejectedInput(
            "ladder needs at least two eps values".into(),
        ));
    }
    let mut ladder = eps_ladder.to_vec();
    ladder.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let eps_max = ladder[0];
    let eps_min = *ladder.last().unwrap();
    let (lo, hi) = match &outer.shape {
        DomainShape::Box { lo, hi } => (lo.clone(), hi.clone()),
        DomainShape::Ball { .. } => {
            return Err(Error::RejectedInput(
                "the ladder works on the box form of the domain".into(),
            ))
        }
    };
    let base = target.sample(lo.clone(), hi.clone(), h)?;

    // inner L1 region: boundary shell of eps_max + 2h
    let shell = eps_max + 2.0 * h;
    let inner = Domain::new_box(
        lo.iter().map(|a| a + shell).collect(),
        hi.iter().map(|b| b - shell).collect(),
        0.0,
    )?;

    struct Computed {
        eps: f64,
        mollified: GridFunction,
        f2: f64,
        e2: f64,
        margin: f64,
    }

    let mut computed: Vec<Computed> = Vec::with_capacity(ladder.len());
    for &eps in &ladder {
        let u_eps = base.mollify(eps)?;
        let grids = hessian_grids(system, &u_eps)?;
        if !support_inside(&grids.s2, eta) {
            return Err(Error::SupportViolation(format!(
                "cutoff support leaves the eps = {eps} derivative lattice"
            )));
        }
        let margin = grids.two_convexity_margin()?;
        let f2 = eta_weighted(&grids.s2, eta).integral_over(None, &|v| v);
        let e2 = eta_weighted(&grids.e2, eta).integral_over(None, &|v| v);
        computed.push(Computed {
            eps,
            mollified: u_eps,
            f2,
            e2,
            margin,
        });
    }

    let reference_idx = computed
        .iter()
        .position(|c| c.eps == eps_min)
        .expect("ladder contains eps_min");
    let (ref_f2, ref_e2) = (computed[reference_idx].f2, computed[reference_idx].e2);
    let ref_grid = computed[reference_idx].mollified.clone();

    let mut members = Vec::with_capacity(computed.len());
    for c in &computed {
        let delta = c.mollified.zip_map(&ref_grid, &|a, b| (a - b).abs())?;
        members.push(LadderMember {
            eps: c.eps,
            l1_delta: delta.integral_over(Some(&inner), &|v| v),
            f2_part: c.f2,
            e2_part: c.e2,
            kconvex_margin: c.margin,
        });
    }

    let tables = alphas
        .iter()
        .map(|&alpha| {
            let rows: Vec<LadderRow> = members
                .iter()
                .map(|mem| {
                    let value = mem.f2_part + alpha * mem.e2_part;
                    let ref_value = ref_f2 + alpha * ref_e2;
                    LadderRow {
                        eps: mem.eps,
                        l1_delta: mem.l1_delta,
                        pairing_value: value,
                        pairing_gap: (value - ref_value).abs(),
                        kconvex_margin: mem.kconvex_margin,
                    }
                })
                .collect();
            (alpha, rows)
        })
        .collect();
    let valid = members.iter().all(|m| m.kconvex_margin >= -convexity_tol);
    Ok(WeakContinuityOutcome {
        h,
        members,
        tables,
        valid,
        convexity_tol,
    })
}

/// The four local integral ratios of a (1- or 2-)convex function.
#[derive(Clone, Debug, Serialize)]
pub struct LocalBoundsReport {
    /// `sup_{inner} u^+ / ||u||_{L1(outer)}`.
    pub sup_ratio: f64,
    /// `||Xu||_{L^q(inner)} / ||u||_{L1(outer)}`.
    pub gradient_ratio: f64,
    /// `(∫_{inner} |Xu|^r Δ_X u) / ||u||^{1+r}`.
    pub energy_ratio: f64,
    /// `(∫_{inner} (F_2 + 3/4 E_2)[u]) / ||u||^2`.
    pub hessian_ratio: f64,
    pub q: f64,
    pub r: f64,
    pub l1_mass: f64,
}

/// Compute the four ratios on a grid restriction of `u`.
///
/// `q` and `r` must sit inside the admissible ranges derived from
/// `(k, m, Q)`; out-of-range exponents are rejected inputs, as is a grid
/// that fails the k-convexity margin.
#[allow(clippy::too_many_arguments)]
pub fn local_bounds(
    system: &FieldSystem,
    g: &GridFunction,
    inner: &Domain,
    outer: &Domain,
    k: usize,
    hom_dim: usize,
    q: f64,
    r: f64,
) -> Result<LocalBoundsReport> {
    let report = geometry::exponent_report(k, system.m(), hom_dim)?;
    let q_ok = match &report.q_gradient_max {
        Exponent::Infinite => q >= 1.0,
        Exponent::Finite(max) => q >= 1.0 && q < rat_to_f64(max),
    };
    if !q_ok {
        return Err(Error::RejectedInput(format!(
            "q = {q} outside the admissible gradient range"
        )));
    }
    let r_ok = match &report.r_energy_max {
        Exponent::Infinite => r >= 0.0,
        Exponent::Finite(max) => r >= 0.0 && r < rat_to_f64(max),
    };
    if !r_ok {
        return Err(Error::RejectedInput(format!(
            "r = {r} outside the admissible energy range"
        )));
    }

    let grids = hessian_grids(system, g)?;
    let margin = if k >= 2 {
        grids.two_convexity_margin()?
    } else {
        grids.s1.min_over(Some(inner))
    };
    if margin < -1e-6 {
        return Err(Error::RejectedInput(format!(
            "u is not {}-convex on the grid (margin {margin})",
            k.min(2)
        )));
    }

    let l1_mass = g.integral_over(Some(outer), &|v| v.abs());
    if l1_mass <= 0.0 {
        return Err(Error::RejectedInput("u vanishes identically".into()));
    }
    let sup_plus = g.max_over(Some(inner)).max(0.0);

    // |Xu| on the first-derivative lattice
    let mut grad_norm2 = grids.first[0].map(&|v| v * v);
    for f in &grids.first[1..] {
        grad_norm2 = grad_norm2.zip_map(f, &|acc, v| acc + v * v)?;
    }
    let grad_norm = grad_norm2.map(&|v| v.sqrt());
    let grad_lq = grad_norm
        .integral_over(Some(inner), &|v| v.powf(q))
        .powf(1.0 / q);

    let energy_field = grad_norm.zip_map(&grids.s1, &move |gv, s1v| gv.powf(r) * s1v)?;
    let energy = energy_field.integral_over(Some(inner), &|v| v);

    let f2_field = GridFunction::combine(&[(1.0, &grids.s2), (0.75, &grids.e2)])?;
    let hessian_integral = f2_field.integral_over(Some(inner), &|v| v);

    Ok(LocalBoundsReport {
        sup_ratio: sup_plus / l1_mass,
        gradient_ratio: grad_lq / l1_mass,
        energy_ratio: energy / l1_mass.powf(1.0 + r),
        hessian_ratio: hessian_integral / (l1_mass * l1_mass),
        q,
        r,
        l1_mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::rat_int;

    fn h1() -> FieldSystem {
        FieldSystem::heisenberg(1).unwrap()
    }

    fn horizontal_square() -> Polynomial {
        Polynomial::var(3, 1)
            .unwrap()
            .pow(2)
            .add(&Polynomial::var(3, 2).unwrap().pow(2))
            .unwrap()
            .scale(&rat(1, 2))
    }

    #[test]
    fn pairing_center_coordinate_gives_alpha() {
        // u = x3: F_2 part vanishes, commutator derivative is 1, so the
        // pairing equals alpha ∫η
        let sys = h1();
        let u = Polynomial::var(3, 3).unwrap();
        let eta = Cutoff::new(vec![0.0; 3], 0.5, "unit").unwrap();
        let mass = eta.mass(0.02).unwrap();
        let p = pairing_polynomial(&sys, &u, &eta, 0.75, 0.02).unwrap();
        assert!(
            (p.value - 0.75 * mass).abs() < 1e-6 + 3.0 * p.error_estimate,
            "{} vs {}",
            p.value,
            0.75 * mass
        );
    }

    #[test]
    fn pairing_constant_hessian() {
        // constant symmetric Hessian I, zero commutators: value = S_2(I) ∫η
        let sys = h1();
        let u = horizontal_square();
        let eta = Cutoff::new(vec![0.0; 3], 0.5, "unit").unwrap();
        let mass = eta.mass(0.02).unwrap();
        for alpha in [0.0, 0.25, 0.75] {
            let p = pairing_polynomial(&sys, &u, &eta, alpha, 0.02).unwrap();
            assert!((p.value - mass).abs() < 1e-6 + 3.0 * p.error_estimate);
        }
    }

    #[test]
    fn grid_and_symbolic_paths_agree() {
        let sys = h1();
        let u = horizontal_square()
            .add(&Polynomial::var(3, 3).unwrap().pow(2).scale(&rat(1, 4)))
            .unwrap()
            .add(
                &Polynomial::var(3, 1)
                    .unwrap()
                    .mul(&Polynomial::var(3, 3).unwrap())
                    .unwrap()
                    .scale(&rat(1, 8)),
            )
            .unwrap();
        let eta = Cutoff::new(vec![0.0; 3], 0.4, "xval").unwrap();
        let dom = Domain::new_box(vec![-0.7; 3], vec![0.7; 3], 0.0).unwrap();
        let h = 0.05;
        let g = GridFunction::sample_polynomial(&u, &dom, h).unwrap();
        let sym = pairing_polynomial(&sys, &u, &eta, 0.75, 0.01).unwrap();
        let grid = pairing_grid(&sys, &g, &eta, 0.75).unwrap();
        let tol = 20.0 * h * h * (1.0 + sym.value.abs());
        assert!(
            (sym.value - grid.value).abs() < tol,
            "symbolic {} grid {} tol {}",
            sym.value,
            grid.value,
            tol
        );
    }

    #[test]
    fn pairing_alpha_linearity() {
        let sys = h1();
        let dom = Domain::new_box(vec![-0.6; 3], vec![0.6; 3], 0.0).unwrap();
        let u = horizontal_square()
            .add(&Polynomial::var(3, 3).unwrap().scale(&rat(1, 2)))
            .unwrap();
        let g = GridFunction::sample_polynomial(&u, &dom, 0.05).unwrap();
        let eta = Cutoff::new(vec![0.0; 3], 0.35, "lin").unwrap();
        let p0 = pairing_grid(&sys, &g, &eta, 0.0).unwrap().value;
        let p1 = pairing_grid(&sys, &g, &eta, 1.0).unwrap().value;
        let p34 = pairing_grid(&sys, &g, &eta, 0.75).unwrap().value;
        assert!((p34 - (p0 + 0.75 * (p1 - p0))).abs() < 1e-12 * (1.0 + p34.abs()));
    }

    #[test]
    fn support_violation_detected() {
        let sys = h1();
        let dom = Domain::new_box(vec![-0.5; 3], vec![0.5; 3], 0.0).unwrap();
        let g = GridFunction::sample_polynomial(&horizontal_square(), &dom, 0.05).unwrap();
        let eta = Cutoff::new(vec![0.0; 3], 0.49, "wide").unwrap();
        assert!(matches!(
            pairing_grid(&sys, &g, &eta, 0.0),
            Err(Error::SupportViolation(_))
        ));
    }

    fn max_quadratics_target() -> LadderTarget {
        // q1 = horizontal square, q2 = q1 + gentle affine tilt
        let q1 = horizontal_square();
        let tilt = Polynomial::var(3, 1)
            .unwrap()
            .scale(&rat(1, 2))
            .add(&Polynomial::var(3, 3).unwrap().scale(&rat(1, 5)))
            .unwrap();
        let q2 = q1.add(&tilt).unwrap();
        LadderTarget::MaxOfQuadratics(q1, q2)
    }

    #[test]
    fn ladder_converges_on_max_of_quadratics() {
        let sys = h1();
        let outer = Domain::new_box(vec![-0.75; 3], vec![0.75; 3], 0.0).unwrap();
        let eta = Cutoff::new(vec![0.0; 3], 0.3, "ladder").unwrap();
        let out = weak_continuity_experiment(
            &sys,
            &max_quadratics_target(),
            &outer,
            0.05,
            &[0.2, 0.1],
            &eta,
            &[0.0, 0.75],
            1e-6,
        )
        .unwrap();
        assert!(out.valid, "margins: {:?}", out.members);
        for (_, rows) in &out.tables {
            let last = rows.last().unwrap();
            assert_eq!(last.pairing_gap, 0.0);
            assert!(rows[0].l1_delta > last.l1_delta);
        }
        let csv = out.table_csv(0);
        assert!(csv.starts_with("eps,l1_delta,pairing_gap,kconvex_margin"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn local_bounds_scaling() {
        let sys = h1();
        let dom = Domain::new_box(vec![-1.0; 3], vec![1.0; 3], 0.0).unwrap();
        let inner = Domain::new_box(vec![-0.5; 3], vec![0.5; 3], 0.0).unwrap();
        let u = horizontal_square();
        let g = GridFunction::sample_polynomial(&u, &dom, 0.05).unwrap();
        let g2 = GridFunction::sample_polynomial(&u.scale(&rat_int(2)), &dom, 0.05).unwrap();
        let r1 = local_bounds(&sys, &g, &inner, &dom, 2, 4, 1.2, 0.5).unwrap();
        let r2 = local_bounds(&sys, &g2, &inner, &dom, 2, 4, 1.2, 0.5).unwrap();
        // u -> 2u: the sup ratio is invariant (both sides degree 1) and the
        // Hessian ratio is invariant (both sides degree 2)
        assert!((r1.sup_ratio - r2.sup_ratio).abs() < 1e-9);
        assert!((r1.hessian_ratio - r2.hessian_ratio).abs() < 1e-9);
        assert!(r1.gradient_ratio > 0.0 && r1.energy_ratio >= 0.0);
    }

    #[test]
    fn local_bounds_rejects_bad_exponents() {
        let sys = h1();
        let dom = Domain::new_box(vec![-1.0; 3], vec![1.0; 3], 0.0).unwrap();
        let inner = Domain::new_box(vec![-0.5; 3], vec![0.5; 3], 0.0).unwrap();
        let g = GridFunction::sample_polynomial(&horizontal_square(), &dom, 0.1).unwrap();
        // k = 1 on H^1 gives the gradient bound q < 4/3; q = 2 must reject
        assert!(matches!(
            local_bounds(&sys, &g, &inner, &dom, 1, 4, 2.0, 0.0),
            Err(Error::RejectedInput(_))
        ));
    }

    #[test]
    fn mollification_preserves_one_convexity_margin() {
        // Δ_X of the mollified function stays within O(h^2) of the original
        // minimum for a convex target
        let sys = h1();
        let dom = Domain::new_box(vec![-1.0; 3], vec![1.0; 3], 0.0).unwrap();
        let h = 0.05;
        let u = horizontal_square();
        let g = GridFunction::sample_polynomial(&u, &dom, h).unwrap();
        let before = hessian_grids(&sys, &g).unwrap().s1.min_over(None);
        let after = hessian_grids(&sys, &g.mollify(0.2).unwrap())
            .unwrap()
            .s1
            .min_over(None);
        assert!(
            after >= before - 10.0 * h * h,
            "margin dropped from {before} to {after}"
        );
    }
}
