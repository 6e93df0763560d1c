//! Certification of the structural identities: exact divergence-free
//! columns of the linearized modified 2-Hessian, the elementary-symmetric
//! decomposition and MacLaurin ratio chain, p-subharmonicity of k-convex
//! functions, and the integral monotonicity of the (starred) 2-Hessian
//! under ordered boundary-matched pairs.
//!
//! Hypothesis failures surface as `Error::RejectedInput` and are never
//! reported as violations; a `Violated` status always refers to the claim
//! itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::FieldSystem;
use crate::grid::Domain;
use crate::hessian::{self, elementary_symmetric_values, hessian_pair, two_hessian_linearization};
use crate::quad;
use crate::sympoly::{rat_to_f64, Polynomial, Rat};

use rand::Rng;

/// Outcome of one identity check.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdentityStatus {
    /// The residual is the literal zero polynomial.
    ExactZero,
    HoldsWithin {
        tol: f64,
    },
    Violated {
        witness: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: String,
    #[serde(flatten)]
    pub status: IdentityStatus,
    /// L1 norm of the residual coefficients (0 when exact).
    pub residual_norm: f64,
    /// Canonical form of a non-zero symbolic residual.
    pub residual_polynomial: Option<String>,
}

impl IdentityResult {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self.status, IdentityStatus::ExactZero)
    }

    pub fn holds(&self) -> bool {
        !matches!(self.status, IdentityStatus::Violated { .. })
    }
}

fn poly_coefficient_norm(p: &Polynomial) -> f64 {
    p.terms().map(|(_, c)| rat_to_f64(c).abs()).sum()
}

fn symbolic_result(name: String, residual: Polynomial) -> IdentityResult {
    if residual.is_zero() {
        IdentityResult {
            name,
            status: IdentityStatus::ExactZero,
            residual_norm: 0.0,
            residual_polynomial: None,
        }
    } else {
        IdentityResult {
            name,
            residual_norm: poly_coefficient_norm(&residual),
            residual_polynomial: Some(residual.to_string()),
            status: IdentityStatus::Violated {
                witness: "non-zero residual polynomial".into(),
            },
        }
    }
}

/// Divergence residuals `Σ_i X_i( lin_ij(X^2 u) )` for each column `j`,
/// where `lin` is the linearized modified 2-Hessian. For a commuting system
/// the classical `F_2` columns `(trace r) δ_ij - r_ji` are verified as well.
pub fn verify_divergence_identity(
    system: &FieldSystem,
    u: &Polynomial,
) -> Result<Vec<IdentityResult>> {
    let m = system.m();
    let pair = hessian_pair(system, u)?;
    let lin = two_hessian_linearization(&pair.full)?;
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let mut residual = Polynomial::zero(system.dim());
        for (i, row) in lin.iter().enumerate() {
            residual = residual.add(&system.field(i + 1).apply(&row[j])?)?;
        }
        out.push(symbolic_result(
            format!("modified 2-Hessian divergence, column {}", j + 1),
            residual,
        ));
    }

    let commuting = (1..=m).all(|i| {
        (i + 1..=m).all(|j| {
            system
                .field(i)
                .commutator(system.field(j))
                .map(|b| b.is_zero())
                .unwrap_or(false)
        })
    });
    if commuting {
        // classical F_2 linearization (trace r) δ_ij - r_ji
        let mut trace = Polynomial::zero(system.dim());
        for i in 0..m {
            trace = trace.add(&pair.full[i][i])?;
        }
        for j in 0..m {
            let mut residual = Polynomial::zero(system.dim());
            for i in 0..m {
                let mut entry = pair.full[j][i].neg();
                if i == j {
                    entry = entry.add(&trace)?;
                }
                residual = residual.add(&system.field(i + 1).apply(&entry)?)?;
            }
            out.push(symbolic_result(
                format!("classical F2 divergence, column {}", j + 1),
                residual,
            ));
        }
    }
    Ok(out)
}

/// Rejection-sample `λ ∈ [-1,1]^m` with `S_1..S_k >= 0`.
pub fn sample_admissible_lambda<R: Rng>(m: usize, k: usize, rng: &mut R) -> Result<Vec<f64>> {
    for _ in 0..1_000_000 {
        let lambda: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let admissible = (1..=k).all(|j| {
            elementary_symmetric_values(&lambda, j, None)
                .map(|s| s >= 0.0)
                .unwrap_or(false)
        });
        if admissible {
            return Ok(lambda);
        }
    }
    Err(Error::RejectedInput(format!(
        "no admissible lambda found for m={m}, k={k}"
    )))
}

/// Check, for an admissible `λ` (all `S_j(λ) >= 0`, `j <= k`):
/// non-negativity of the deleted functions `S_{j,i}`, the exact
/// decomposition `S_k = S_{k,i} + S_{k-1,i} λ_i`, and the ratio chain
/// `-λ_i <= S_{k,i}/S_{k-1,i} <= (m-k)/(k(m-1)) S_{1,i}`.
pub fn maclaurin_chain(lambda: &[f64], k: usize, tol: f64) -> Result<IdentityResult> {
    let m = lambda.len();
    if k == 0 || k > m || m < 2 {
        return Err(Error::RejectedInput(format!(
            "need 1 <= k <= m, got k={k}, m={m}"
        )));
    }
    for j in 1..=k {
        let s = elementary_symmetric_values(lambda, j, None)?;
        if s < 0.0 {
            return Err(Error::RejectedInput(format!(
                "S_{j} = {s} < 0: lambda is not admissible"
            )));
        }
    }
    let s_k = elementary_symmetric_values(lambda, k, None)?;
    let upper_coeff = (m - k) as f64 / (k * (m - 1)) as f64;
    let mut worst_margin = f64::INFINITY;
    for i in 0..m {
        for j in 1..k {
            let s_ji = elementary_symmetric_values(lambda, j, Some(i))?;
            if s_ji < -tol {
                return Ok(IdentityResult {
                    name: "maclaurin chain".into(),
                    status: IdentityStatus::Violated {
                        witness: format!("S_{{{j},{}}} = {s_ji} < 0", i + 1),
                    },
                    residual_norm: -s_ji,
                    residual_polynomial: None,
                });
            }
        }
        let s_ki = elementary_symmetric_values(lambda, k, Some(i))?;
        let s_km1i = elementary_symmetric_values(lambda, k - 1, Some(i))?;
        let decomposition = s_k - (s_ki + s_km1i * lambda[i]);
        if decomposition.abs() > tol * (1.0 + s_k.abs()) {
            return Ok(IdentityResult {
                name: "maclaurin chain".into(),
                status: IdentityStatus::Violated {
                    witness: format!("decomposition residual {decomposition} at i={}", i + 1),
                },
                residual_norm: decomposition.abs(),
                residual_polynomial: None,
            });
        }
        if s_km1i > 0.0 {
            let ratio = s_ki / s_km1i;
            let s_1i = elementary_symmetric_values(lambda, 1, Some(i))?;
            let lower = ratio + lambda[i];
            let upper = upper_coeff * s_1i - ratio;
            worst_margin = worst_margin.min(lower).min(upper);
            if lower < -tol || upper < -tol {
                return Ok(IdentityResult {
                    name: "maclaurin chain".into(),
                    status: IdentityStatus::Violated {
                        witness: format!(
                            "chain fails at i={}: -λ={} ratio={} bound={}",
                            i + 1,
                            -lambda[i],
                            ratio,
                            upper_coeff * s_1i
                        ),
                    },
                    residual_norm: (-lower).max(-upper),
                    residual_polynomial: None,
                });
            }
        }
    }
    Ok(IdentityResult {
        name: "maclaurin chain".into(),
        status: IdentityStatus::HoldsWithin { tol },
        residual_norm: if worst_margin.is_finite() {
            worst_margin.max(0.0)
        } else {
            0.0
        },
        residual_polynomial: None,
    })
}

/// The decomposition `S_k(λ) = S_{k,i}(λ) + S_{k-1,i}(λ) λ_i` is an exact
/// algebraic identity; certify it over the rationals, no hypotheses needed.
pub fn maclaurin_decomposition_exact(lambda: &[Rat], k: usize) -> Result<IdentityResult> {
    let m = lambda.len();
    if k == 0 || k > m {
        return Err(Error::RejectedInput(format!(
            "need 1 <= k <= m, got k={k}, m={m}"
        )));
    }
    let s_k = elementary_symmetric_values(lambda, k, None)?;
    for i in 0..m {
        let s_ki = elementary_symmetric_values(lambda, k, Some(i))?;
        let s_km1i = elementary_symmetric_values(lambda, k - 1, Some(i))?;
        let rhs = &s_ki + &(&s_km1i * &lambda[i]);
        if s_k != rhs {
            return Ok(IdentityResult {
                name: "elementary symmetric decomposition".into(),
                status: IdentityStatus::Violated {
                    witness: format!("exact mismatch at i={}", i + 1),
                },
                residual_norm: 1.0,
                residual_polynomial: None,
            });
        }
    }
    Ok(IdentityResult {
        name: "elementary symmetric decomposition".into(),
        status: IdentityStatus::ExactZero,
        residual_norm: 0.0,
        residual_polynomial: None,
    })
}

/// p-subharmonicity scan of a k-convex function.
#[derive(Clone, Debug, Serialize)]
pub struct PSubharmonicityReport {
    pub name: String,
    pub holds: bool,
    pub p: f64,
    pub k: usize,
    /// Minimum of `Δ_p u` (or `Δ_∞ u` for infinite p) over usable samples.
    pub min_value: f64,
    /// Samples with `|Xu| = 0` skipped for `p < 2`.
    pub skipped_singular: usize,
    /// Pointwise bound `|Xu|^r Δ_X u <= c Δ_p u` margin (min of rhs - lhs),
    /// when the bound's denominator is positive.
    pub bound_margin: Option<f64>,
    pub tolerance: f64,
}

/// Verify `Δ_p u >= -tol` at the samples for a k-convex `u`, with
/// `p - 1 <= k(m-1)/(m-k)` (any `p`, including infinity, when `k = m`).
/// The pointwise energy bound with `r = p - 2` is checked alongside when its
/// denominator `m(k-1) - r(m-k)` is positive.
pub fn verify_p_subharmonicity(
    system: &FieldSystem,
    u: &Polynomial,
    k: usize,
    samples: &[Vec<f64>],
    p: f64,
    tol: f64,
) -> Result<PSubharmonicityReport> {
    let m = system.m();
    let convexity = hessian::k_convexity(system, u, k, samples, tol)?;
    if !convexity.holds {
        return Err(Error::RejectedInput(format!(
            "u is not {k}-convex on the samples (worst S_{} = {})",
            convexity.worst_j, convexity.worst_value
        )));
    }
    if k < m {
        let p_max = 1.0 + (k * (m - 1)) as f64 / (m - k) as f64;
        if p > p_max + 1e-12 {
            return Err(Error::RejectedInput(format!(
                "p = {p} exceeds the admissible bound {p_max} for k={k}, m={m}"
            )));
        }
    }
    let pair = hessian_pair(system, u)?;
    let grad_eval: Vec<_> = (1..=m)
        .map(|i| system.field(i).apply(u).map(|g| g.evaluator()))
        .collect::<Result<_>>()?;
    let sym_eval: Vec<Vec<_>> = pair
        .sym
        .iter()
        .map(|row| row.iter().map(|p| p.evaluator()).collect())
        .collect();

    let mut min_value = f64::INFINITY;
    let mut skipped = 0usize;
    let r = p - 2.0;
    let denom = (m * (k - 1)) as f64 - r * ((m - k) as f64);
    let check_bound = p.is_finite() && r >= 0.0 && denom > 0.0 && k >= 2;
    let bound_coeff = (m * (k - 1)) as f64 / denom;
    let mut bound_margin = f64::INFINITY;

    for x in samples {
        let grad: Vec<f64> = grad_eval.iter().map(|g| g.eval(x)).collect();
        let norm2: f64 = grad.iter().map(|g| g * g).sum();
        let mut trace = 0.0;
        let mut directional = 0.0;
        for i in 0..m {
            trace += sym_eval[i][i].eval(x);
            for j in 0..m {
                directional += grad[i] * grad[j] * sym_eval[i][j].eval(x);
            }
        }
        let value = if p.is_infinite() {
            directional
        } else if norm2 == 0.0 {
            if p > 2.0 {
                0.0
            } else if p == 2.0 {
                trace
            } else {
                skipped += 1;
                continue;
            }
        } else {
            norm2.sqrt().powf(p - 2.0) * (trace + (p - 2.0) * directional / norm2)
        };
        min_value = min_value.min(value);
        if check_bound && norm2 > 0.0 {
            let lhs = norm2.sqrt().powf(r) * trace;
            bound_margin = bound_margin.min(bound_coeff * value - lhs);
        }
    }

    Ok(PSubharmonicityReport {
        name: format!("p-subharmonicity (k={k}, p={p})"),
        holds: min_value >= -tol && (!check_bound || bound_margin >= -tol),
        p,
        k,
        min_value,
        skipped_singular: skipped,
        bound_margin: if check_bound && bound_margin.is_finite() {
            Some(bound_margin)
        } else {
            None
        },
        tolerance: tol,
    })
}

/// Which operator the monotonicity gap integrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneOperator {
    /// `F_2(sym) + (3/4) Σ ([X_i,X_j]u)^2`
    Modified,
    /// The starred variant with the second-order field correction.
    Starred,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub operator: MonotoneOperator,
    /// `∫ (op[u] - op[v])`, fine resolution.
    pub gap: f64,
    pub coarse_gap: f64,
    pub quadrature_error: f64,
    /// `gap >= -quadrature_error`, the claim under test.
    pub holds: bool,
    /// Minimum elementary-symmetric value of `(trace s) I - s` for the sum
    /// `u + v` over quadrature nodes.
    pub ellipticity_margin: f64,
    /// Margins below 1e-6 are flagged: the discrete ellipticity certificate
    /// is then weak evidence for the continuous hypothesis.
    pub ellipticity_flagged: bool,
    pub cells: usize,
}

/// Integral monotonicity gap `∫_Ω (op[u] - op[v])` for an admissible pair:
/// `u <= v` inside, `u = v` on the boundary, and the 2-Hessian degenerate
/// elliptic with respect to `u + v`. Hypothesis failures are rejected
/// inputs, never violations.
pub fn monotonicity_gap(
    system: &FieldSystem,
    u: &Polynomial,
    v: &Polynomial,
    domain: &Domain,
    operator: MonotoneOperator,
    cells: usize,
) -> Result<MonotonicityReport> {
    if domain.dim() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            got: domain.dim(),
        });
    }
    let diff_uv = u.sub(v)?;
    let diff_eval = diff_uv.evaluator();

    // ordering u <= v at quadrature nodes
    let mut worst_order: f64 = 0.0;
    quad::for_each_node(domain, cells, &mut |x| {
        worst_order = worst_order.max(diff_eval.eval(x));
    })?;
    if worst_order > 1e-9 {
        return Err(Error::RejectedInput(format!(
            "u <= v fails by {worst_order} at a quadrature node"
        )));
    }

    // boundary match |u - v| <= 1e-12 on sampled boundary points
    for x in domain.boundary_points(128) {
        let d = diff_eval.eval(&x).abs();
        if d > 1e-12 {
            return Err(Error::RejectedInput(format!(
                "|u - v| = {d} on the boundary exceeds 1e-12"
            )));
        }
    }

    // degenerate ellipticity of the sum at quadrature nodes
    let sum = u.add(v)?;
    let sum_pair = hessian_pair(system, &sum)?;
    let sym_eval: Vec<Vec<_>> = sum_pair
        .sym
        .iter()
        .map(|row| row.iter().map(|p| p.evaluator()).collect())
        .collect();
    let m = system.m();
    let mut ellipticity_margin = f64::INFINITY;
    quad::for_each_node(domain, cells, &mut |x| {
        let mut s = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in 0..m {
                s[i][j] = sym_eval[i][j].eval(x);
            }
        }
        let ell = hessian::ellipticity_matrix(&s).expect("square");
        for j in 1..=m {
            let sj = hessian::elementary_symmetric(&ell, j, &[]).expect("square");
            ellipticity_margin = ellipticity_margin.min(sj);
        }
    })?;
    if ellipticity_margin < -1e-9 {
        return Err(Error::RejectedInput(format!(
            "degenerate ellipticity fails at a quadrature node (margin {ellipticity_margin})"
        )));
    }

    let op = |w: &Polynomial| -> Result<Polynomial> {
        match operator {
            MonotoneOperator::Modified => {
                hessian::modified_two_hessian(system, w, &crate::sympoly::rat(3, 4))
            }
            MonotoneOperator::Starred => hessian::star_two_hessian(system, w),
        }
    };
    let integrand = op(u)?.sub(&op(v)?)?;
    let integrand_eval = integrand.evaluator();
    let refined = quad::midpoint_with_refinement(domain, cells, &mut |x| integrand_eval.eval(x))?;

    Ok(MonotonicityReport {
        operator,
        gap: refined.value,
        coarse_gap: refined.coarse,
        quadrature_error: refined.error_estimate,
        holds: refined.value >= -refined.error_estimate,
        ellipticity_margin,
        ellipticity_flagged: ellipticity_margin < 1e-6,
        cells,
    })
}

/// A compactly supported bump `(1 - |x|^2)^3` in its polynomial form, valid
/// on the closed unit ball where it is non-negative and C^2-matched to zero
/// at the boundary.
pub fn unit_bump_polynomial(n: usize) -> Polynomial {
    let mut r2 = Polynomial::zero(n);
    for j in 1..=n {
        r2 = r2.add(&Polynomial::var(n, j).unwrap().pow(2)).unwrap();
    }
    Polynomial::constant(n, Rat::from_integer(1.into()))
        .sub(&r2)
        .unwrap()
        .pow(3)
}

/// The face-vanishing box increment `Π_i (1 - x_i^2)` on `[-1,1]^n`:
/// non-negative inside, zero on every face, with non-vanishing face-normal
/// gradient. Pairs built from it carry strictly positive monotonicity gaps
/// (they live on the boundary gradient of `v - u`), unlike increments that
/// vanish to higher order, whose gaps are exactly zero by the divergence
/// structure.
pub fn box_increment_polynomial(n: usize) -> Polynomial {
    let one = Polynomial::constant(n, Rat::from_integer(1.into()));
    let mut w = one.clone();
    for j in 1..=n {
        let factor = one.sub(&Polynomial::var(n, j).unwrap().pow(2)).unwrap();
        w = w.mul(&factor).unwrap();
    }
    w
}

/// A family of admissible monotone pairs on the box `[-1,1]^n`: strongly
/// convex bases with mild tilt/quartic variation, and `v = u + t w` with
/// the face-vanishing increment at several strengths. Every pair satisfies
/// `u <= v`, boundary equality, and the ellipticity hypothesis with
/// comfortable margin.
pub fn standard_monotone_pairs(n: usize, count: usize) -> Vec<(Polynomial, Polynomial)> {
    let mut pairs = Vec::with_capacity(count);
    let w = box_increment_polynomial(n);
    for idx in 0..count {
        let mut base = Polynomial::zero(n);
        for j in 1..=n {
            base = base.add(&Polynomial::var(n, j).unwrap().pow(2)).unwrap();
        }
        let mut u = base.scale(&Rat::from_integer(2.into()));
        // vary the pair: a linear tilt along a rotating axis plus an
        // occasional convex quartic term
        let tilt_axis = idx % n + 1;
        let tilt = Polynomial::var(n, tilt_axis)
            .unwrap()
            .scale(&Rat::new((idx as i64 % 3 - 1).into(), 4.into()));
        u = u.add(&tilt).unwrap();
        if idx % 2 == 1 {
            let quartic = Polynomial::var(n, tilt_axis)
                .unwrap()
                .pow(4)
                .scale(&Rat::new(1.into(), 10.into()));
            u = u.add(&quartic).unwrap();
        }
        let strength = Rat::new((2 + idx as i64 % 5).into(), 20.into());
        let v = u.add(&w.scale(&strength)).unwrap();
        pairs.push((u, v));
    }
    pairs
}
