//! Carnot-Caratheodory geometry: upper-bound distance estimation by
//! piecewise-constant-control shooting, Monte Carlo ball volumes, the
//! homogeneous-dimension fit with its doubling check, and the exact
//! integrability/Holder exponent calculator.
//!
//! The distance solver is an estimator: it returns the horizon of the best
//! feasible discrete sub-unitary path it finds, which upper-bounds the true
//! distance up to discretization. Downstream consumers (volumes, dimension
//! fits) treat it accordingly and carry explicit error bars.

use serde::Serialize;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::FieldSystem;
use crate::linalg;
use crate::sympoly::{rat_to_string, PolyEval, Rat};

/// Optimization budget of the shooting solver.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PathBudget {
    /// Piecewise-constant control segments.
    pub segments: usize,
    /// Random restarts on top of the straight-line initialization.
    pub restarts: usize,
    /// Projected-gradient iterations per start.
    pub iterations: usize,
    /// Integrator substeps per segment.
    pub substeps: usize,
}

impl PathBudget {
    /// Defaults for standalone distance queries.
    pub fn full() -> Self {
        PathBudget {
            segments: 32,
            restarts: 8,
            iterations: 120,
            substeps: 4,
        }
    }

    /// Cheap budget for Monte Carlo reachability classification.
    pub fn coarse() -> Self {
        PathBudget {
            segments: 8,
            restarts: 2,
            iterations: 50,
            substeps: 2,
        }
    }
}

/// A discrete sub-unitary path: per-segment frame controls with
/// `Σ_i c_i^2 <= 1` and the integrated node sequence.
#[derive(Clone, Debug, Serialize)]
pub struct CCPath {
    pub horizon: f64,
    pub nodes: Vec<Vec<f64>>,
    pub controls: Vec<Vec<f64>>,
}

impl CCPath {
    /// CSV node dump: `t,x1,...,xn`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        if let Some(first) = self.nodes.first() {
            for i in 1..=first.len() {
                out.push_str(&format!(",x{i}"));
            }
        }
        out.push('\n');
        let steps = self.nodes.len();
        for (k, node) in self.nodes.iter().enumerate() {
            let t = if steps > 1 {
                self.horizon * k as f64 / (steps - 1) as f64
            } else {
                0.0
            };
            out.push_str(&format!("{t:.10e}"));
            for v in node {
                out.push_str(&format!(",{v:.10e}"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceEstimate {
    /// Horizon of the best feasible path: an upper bound on d(x, y).
    pub upper_bound: f64,
    pub endpoint_error: f64,
    pub path: CCPath,
}

/// Compiled field frame for fast trajectory integration.
struct Frame {
    m: usize,
    n: usize,
    comps: Vec<Vec<Option<PolyEval>>>,
}

impl Frame {
    fn new(system: &FieldSystem) -> Frame {
        let m = system.m();
        let n = system.dim();
        let comps = (1..=m)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        let p = system.field(i).component(j);
                        if p.is_zero() {
                            None
                        } else {
                            Some(p.evaluator())
                        }
                    })
                    .collect()
            })
            .collect();
        Frame { m, n, comps }
    }

    #[inline]
    fn velocity(&self, x: &[f64], control: &[f64], out: &mut [f64]) {
        for v in out.iter_mut() {
            *v = 0.0;
        }
        for i in 0..self.m {
            let c = control[i];
            if c == 0.0 {
                continue;
            }
            for j in 0..self.n {
                if let Some(p) = &self.comps[i][j] {
                    out[j] += c * p.eval(x);
                }
            }
        }
    }

    /// Columns of the frame at `x` (for control initialization).
    fn columns_at(&self, x: &[f64]) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|j| {
                (0..self.m)
                    .map(|i| self.comps[i][j].as_ref().map(|p| p.eval(x)).unwrap_or(0.0))
                    .collect()
            })
            .collect()
    }
}

struct Scratch {
    pos: Vec<f64>,
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    stage: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            pos: vec![0.0; n],
            k1: vec![0.0; n],
            k2: vec![0.0; n],
            k3: vec![0.0; n],
            k4: vec![0.0; n],
            stage: vec![0.0; n],
        }
    }
}

/// RK4 integration of `γ' = Σ c_i X_i(γ)` with piecewise-constant controls;
/// returns the endpoint in `scratch.pos`, optionally recording segment nodes.
fn integrate(
    frame: &Frame,
    x0: &[f64],
    controls: &[f64],
    budget: &PathBudget,
    horizon: f64,
    scratch: &mut Scratch,
    mut nodes: Option<&mut Vec<Vec<f64>>>,
) {
    let n = frame.n;
    scratch.pos.copy_from_slice(x0);
    if let Some(ns) = nodes.as_deref_mut() {
        ns.clear();
        ns.push(x0.to_vec());
    }
    let dt = horizon / (budget.segments * budget.substeps) as f64;
    for seg in 0..budget.segments {
        let c = &controls[seg * frame.m..(seg + 1) * frame.m];
        for _ in 0..budget.substeps {
            frame.velocity(&scratch.pos, c, &mut scratch.k1);
            for j in 0..n {
                scratch.stage[j] = scratch.pos[j] + 0.5 * dt * scratch.k1[j];
            }
            frame.velocity(&scratch.stage, c, &mut scratch.k2);
            for j in 0..n {
                scratch.stage[j] = scratch.pos[j] + 0.5 * dt * scratch.k2[j];
            }
            frame.velocity(&scratch.stage, c, &mut scratch.k3);
            for j in 0..n {
                scratch.stage[j] = scratch.pos[j] + dt * scratch.k3[j];
            }
            frame.velocity(&scratch.stage, c, &mut scratch.k4);
            for j in 0..n {
                scratch.pos[j] += dt / 6.0
                    * (scratch.k1[j] + 2.0 * scratch.k2[j] + 2.0 * scratch.k3[j] + scratch.k4[j]);
            }
        }
        if let Some(ns) = nodes.as_deref_mut() {
            ns.push(scratch.pos.clone());
        }
    }
}

fn miss2(
    frame: &Frame,
    x: &[f64],
    y: &[f64],
    controls: &[f64],
    budget: &PathBudget,
    horizon: f64,
    scratch: &mut Scratch,
) -> f64 {
    integrate(frame, x, controls, budget, horizon, scratch, None);
    scratch
        .pos
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum()
}

/// Project every segment control onto the closed unit ball `Σ c_i^2 <= 1`.
fn project(controls: &mut [f64], m: usize) {
    for seg in controls.chunks_mut(m) {
        let norm2: f64 = seg.iter().map(|c| c * c).sum();
        if norm2 > 1.0 {
            let scale = 1.0 / norm2.sqrt();
            for c in seg.iter_mut() {
                *c *= scale;
            }
        }
    }
}

/// Time needed to traverse the same geometric path at unit control speed:
/// feasible controls with interior norms leave slack that a faster
/// reparametrization removes.
fn effective_time(controls: &[f64], m: usize, horizon: f64, segments: usize) -> f64 {
    let seg_t = horizon / segments as f64;
    controls
        .chunks(m)
        .map(|c| seg_t * c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .sum()
}

/// Warm start for a shorter horizon: speed the controls up proportionally,
/// clamped back into the ball.
fn rescaled_controls(controls: &[f64], m: usize, from: f64, to: f64) -> Vec<f64> {
    let factor = from / to;
    let mut out: Vec<f64> = controls.iter().map(|c| c * factor).collect();
    project(&mut out, m);
    out
}

/// Straight-line heuristic: least-squares fit of `(y - x)/T` onto the frame
/// columns at points along the chord.
fn chord_controls(
    frame: &Frame,
    x: &[f64],
    y: &[f64],
    horizon: f64,
    budget: &PathBudget,
) -> Vec<f64> {
    let m = frame.m;
    let mut controls = vec![0.0; budget.segments * m];
    for seg in 0..budget.segments {
        let t = (seg as f64 + 0.5) / budget.segments as f64;
        let probe: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + t * (b - a)).collect();
        let cols = frame.columns_at(&probe);
        let target: Vec<f64> = x.iter().zip(y).map(|(a, b)| (b - a) / horizon).collect();
        let sol = linalg::least_squares_solve(&cols, &target);
        controls[seg * m..(seg + 1) * m].copy_from_slice(&sol);
    }
    project(&mut controls, m);
    controls
}

/// Projected Levenberg shooting solve at a fixed horizon: Gauss-Newton
/// steps on the endpoint equations with ball projection and damping.
/// Returns the best squared miss and controls.
#[allow(clippy::too_many_arguments)]
fn solve_reach(
    frame: &Frame,
    x: &[f64],
    y: &[f64],
    horizon: f64,
    budget: &PathBudget,
    rng: &mut ChaCha8Rng,
    warm: Option<&[f64]>,
    target_miss: f64,
    scratch: &mut Scratch,
) -> (f64, Vec<f64>) {
    let m = frame.m;
    let n = frame.n;
    let dim = budget.segments * m;
    let mut best = (f64::INFINITY, vec![0.0; dim]);
    let mut starts: Vec<Vec<f64>> = Vec::new();
    if let Some(w) = warm {
        starts.push(w.to_vec());
    }
    starts.push(chord_controls(frame, x, y, horizon, budget));
    for _ in 0..budget.restarts {
        let mut c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        project(&mut c, m);
        starts.push(c);
    }
    let target2 = target_miss * target_miss;
    let fd = 1e-6;
    let mut jac = vec![vec![0.0; dim]; n];
    let mut residual = vec![0.0; n];
    for mut c in starts {
        project(&mut c, m);
        let mut f = miss2(frame, x, y, &c, budget, horizon, scratch);
        let mut lambda = 1e-3;
        let mut iter = 0;
        while iter < budget.iterations && f > 0.25 * target2 && lambda < 1e8 {
            iter += 1;
            // endpoint residual and Jacobian by forward differences
            integrate(frame, x, &c, budget, horizon, scratch, None);
            for r in 0..n {
                residual[r] = scratch.pos[r] - y[r];
            }
            for d in 0..dim {
                let old = c[d];
                c[d] = old + fd;
                integrate(frame, x, &c, budget, horizon, scratch, None);
                c[d] = old;
                for r in 0..n {
                    jac[r][d] = (scratch.pos[r] - y[r] - residual[r]) / fd;
                }
            }
            // minimum-norm Gauss-Newton step: δ = Jᵀ (J Jᵀ + λI)⁻¹ res
            let mut improved = false;
            for _ in 0..6 {
                let mut gram = vec![vec![0.0; n]; n];
                for r in 0..n {
                    for s in 0..n {
                        gram[r][s] = (0..dim).map(|d| jac[r][d] * jac[s][d]).sum();
                    }
                    gram[r][r] += lambda;
                }
                let mut rhs = residual.clone();
                let w = linalg::solve_dense(&mut gram, &mut rhs);
                let mut trial: Vec<f64> = c.clone();
                for d in 0..dim {
                    let mut step = 0.0;
                    for r in 0..n {
                        step += jac[r][d] * w[r];
                    }
                    trial[d] -= step;
                }
                project(&mut trial, m);
                let ft = miss2(frame, x, y, &trial, budget, horizon, scratch);
                if ft < f {
                    c = trial;
                    f = ft;
                    lambda = (lambda * 0.35).max(1e-12);
                    improved = true;
                    break;
                }
                lambda *= 8.0;
            }
            if !improved {
                break;
            }
        }
        if f < best.0 {
            best = (f, c.clone());
        }
        if best.0 <= 0.25 * target2 {
            break;
        }
    }
    best
}

/// Reachability tolerance: a path reaches `y` when
/// `|γ(T) - y| <= 1e-3 (1 + |y|)`.
pub fn reach_tolerance(y: &[f64]) -> f64 {
    let norm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    1e-3 * (1.0 + norm)
}

/// Can a discrete sub-unitary path reach `y` from `x` within `horizon`?
pub fn reachable_within(
    system: &FieldSystem,
    x: &[f64],
    y: &[f64],
    horizon: f64,
    budget: &PathBudget,
    seed: u64,
) -> Result<bool> {
    check_points(system, x, y)?;
    let frame = Frame::new(system);
    let mut scratch = Scratch::new(frame.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = reach_tolerance(y);
    let (m2, _) = solve_reach(
        &frame,
        x,
        y,
        horizon,
        budget,
        &mut rng,
        None,
        tol,
        &mut scratch,
    );
    Ok(m2.sqrt() <= tol)
}

fn check_points(system: &FieldSystem, x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != system.dim() || y.len() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            got: x.len().min(y.len()),
        });
    }
    Ok(())
}

/// Upper-bound estimate of the Carnot-Caratheodory distance by shooting with
/// projected controls and bisecting the horizon to the smallest feasible
/// value. Returns a certificate path.
pub fn cc_distance(
    system: &FieldSystem,
    x: &[f64],
    y: &[f64],
    budget: &PathBudget,
    seed: u64,
) -> Result<DistanceEstimate> {
    check_points(system, x, y)?;
    let frame = Frame::new(system);
    let mut scratch = Scratch::new(frame.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let euclid: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let tol = reach_tolerance(y);
    if euclid <= tol {
        return Ok(DistanceEstimate {
            upper_bound: 0.0,
            endpoint_error: euclid,
            path: CCPath {
                horizon: 0.0,
                nodes: vec![x.to_vec(), y.to_vec()],
                controls: vec![],
            },
        });
    }

    // grow the horizon until feasible
    let mut horizon = euclid.max(10.0 * tol);
    let mut warm: Option<Vec<f64>> = None;
    let mut grows = 0;
    let feasible = loop {
        let (m2, c) = solve_reach(
            &frame,
            x,
            y,
            horizon,
            budget,
            &mut rng,
            warm.as_deref(),
            tol,
            &mut scratch,
        );
        if m2.sqrt() <= tol {
            break (horizon, c);
        }
        warm = Some(c);
        horizon *= 2.0;
        grows += 1;
        if grows > 12 {
            return Err(Error::UnreachableWithinBudget {
                max_horizon: horizon,
            });
        }
    };
    let (mut hi, mut best_controls) = feasible;
    let mut lo = if grows == 0 { 0.0 } else { hi / 2.0 };

    // bisect to the smallest feasible horizon; probes prefer the
    // slack-pulled effective time of the current best path and warm-start
    // from its speed-rescaled controls
    let bisect_budget = PathBudget {
        restarts: budget.restarts.min(2),
        ..*budget
    };
    for _ in 0..18 {
        if (hi - lo) <= 5e-3 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let slack_t = effective_time(&best_controls, frame.m, hi, budget.segments);
        let probe = if slack_t < hi * 0.995 {
            slack_t.max(lo + 0.05 * (hi - lo)).min(hi * 0.995)
        } else {
            mid
        };
        let warm_controls = rescaled_controls(&best_controls, frame.m, hi, probe);
        let (m2, c) = solve_reach(
            &frame,
            x,
            y,
            probe,
            &bisect_budget,
            &mut rng,
            Some(&warm_controls),
            tol,
            &mut scratch,
        );
        if m2.sqrt() <= tol {
            hi = probe;
            best_controls = c;
        } else if probe <= mid {
            lo = probe;
        } else {
            // the slack probe sat above the midpoint; test the midpoint
            // before narrowing from below
            let warm_mid = rescaled_controls(&best_controls, frame.m, hi, mid);
            let (m2, c) = solve_reach(
                &frame,
                x,
                y,
                mid,
                &bisect_budget,
                &mut rng,
                Some(&warm_mid),
                tol,
                &mut scratch,
            );
            if m2.sqrt() <= tol {
                hi = mid;
                best_controls = c;
            } else {
                lo = mid;
            }
        }
    }

    let mut nodes = Vec::new();
    integrate(
        &frame,
        x,
        &best_controls,
        budget,
        hi,
        &mut scratch,
        Some(&mut nodes),
    );
    let endpoint_error: f64 = scratch
        .pos
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let controls: Vec<Vec<f64>> = best_controls.chunks(frame.m).map(|c| c.to_vec()).collect();
    Ok(DistanceEstimate {
        upper_bound: hi,
        endpoint_error,
        path: CCPath {
            horizon: hi,
            nodes,
            controls,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VolumeEstimate {
    pub radius: f64,
    pub volume: f64,
    pub standard_error: f64,
    pub samples: usize,
    pub inside: usize,
    pub box_volume: f64,
    /// Bounding-box enlargements triggered by boundary hits.
    pub enlargements: usize,
}

/// Monte Carlo volume of the C-C ball `B_R(center)`: fraction of points in
/// a bounding box reachable within `R` at a coarse solver budget. The box is
/// seeded from random sub-unitary path envelopes and enlarged when inside
/// points hug its faces.
pub fn ball_volume(
    system: &FieldSystem,
    center: &[f64],
    radius: f64,
    samples: usize,
    seed: u64,
    budget: &PathBudget,
) -> Result<VolumeEstimate> {
    if radius <= 0.0 {
        return Err(Error::RejectedInput("radius must be positive".into()));
    }
    if samples < 1000 {
        return Err(Error::RejectedInput("need at least 1000 samples".into()));
    }
    check_points(system, center, center)?;
    let frame = Frame::new(system);
    let n = frame.n;
    let mut scratch = Scratch::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // envelope of random unit-speed paths seeds the bounding box
    let mut lo = center.to_vec();
    let mut hi = center.to_vec();
    let probe_budget = PathBudget {
        segments: 8,
        restarts: 0,
        iterations: 0,
        substeps: 2,
    };
    for _ in 0..200 {
        let mut c: Vec<f64> = (0..probe_budget.segments * frame.m)
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        // push to the sphere for maximal spread
        for seg in c.chunks_mut(frame.m) {
            let norm: f64 = seg.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 1e-12 {
                for v in seg.iter_mut() {
                    *v /= norm;
                }
            }
        }
        integrate(
            &frame,
            center,
            &c,
            &probe_budget,
            radius,
            &mut scratch,
            None,
        );
        for j in 0..n {
            lo[j] = lo[j].min(scratch.pos[j]);
            hi[j] = hi[j].max(scratch.pos[j]);
        }
    }
    for j in 0..n {
        let pad = 0.15 * (hi[j] - lo[j]).max(0.05 * radius);
        lo[j] -= pad;
        hi[j] += pad;
    }

    let mut enlargements = 0;
    loop {
        let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
        let mut inside = 0usize;
        let mut face_hug = false;
        let mut mc = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_ba11);
        for k in 0..samples {
            let z: Vec<f64> = (0..n).map(|j| mc.gen_range(lo[j]..hi[j])).collect();
            let tol = reach_tolerance(&z);
            let (m2, _) = solve_reach(
                &frame,
                center,
                &z,
                radius,
                budget,
                &mut ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9)),
                None,
                tol,
                &mut scratch,
            );
            if m2.sqrt() <= tol {
                inside += 1;
                for j in 0..n {
                    let width = hi[j] - lo[j];
                    if z[j] - lo[j] < 0.03 * width || hi[j] - z[j] < 0.03 * width {
                        face_hug = true;
                    }
                }
            }
        }
        if face_hug && enlargements < 3 {
            enlargements += 1;
            for j in 0..n {
                let mid = 0.5 * (lo[j] + hi[j]);
                let half = 0.7 * (hi[j] - lo[j]);
                lo[j] = mid - half;
                hi[j] = mid + half;
            }
            continue;
        }
        let p = inside as f64 / samples as f64;
        return Ok(VolumeEstimate {
            radius,
            volume: box_volume * p,
            standard_error: box_volume * (p * (1.0 - p) / samples as f64).sqrt(),
            samples,
            inside,
            box_volume,
            enlargements,
        });
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionFit {
    pub q_fit: f64,
    pub q_ceil: usize,
    pub doubling_ok: bool,
    pub inconclusive: bool,
    pub volumes: Vec<VolumeEstimate>,
}

/// Doubling inequality `|B_{tR}| >= C t^Q |B_R|` with `C = 1` across
/// consecutive radius pairs, allowing a 3-sigma Monte Carlo slack.
pub fn doubling_check(volumes: &[VolumeEstimate], q: usize) -> bool {
    volumes.windows(2).all(|w| {
        let (small, big) = (&w[0], &w[1]);
        let t = small.radius / big.radius;
        let sigma = small.standard_error + t.powi(q as i32) * big.standard_error;
        small.volume >= t.powi(q as i32) * big.volume - 3.0 * sigma
    })
}

/// Fit the homogeneous dimension as the log-log slope of ball volume
/// against radius; needs at least 3 radii spanning a factor of 4.
pub fn homogeneous_dimension(
    system: &FieldSystem,
    center: &[f64],
    radii: &[f64],
    samples: usize,
    seed: u64,
    budget: &PathBudget,
) -> Result<DimensionFit> {
    if radii.len() < 3 {
        return Err(Error::RejectedInput("need at least 3 radii".into()));
    }
    let mut sorted = radii.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted[sorted.len() - 1] / sorted[0] < 4.0 - 1e-9 {
        return Err(Error::RejectedInput(
            "radii must span a factor of at least 4".into(),
        ));
    }
    let mut volumes = Vec::with_capacity(sorted.len());
    for (i, &r) in sorted.iter().enumerate() {
        volumes.push(ball_volume(
            system,
            center,
            r,
            samples,
            seed.wrapping_add(i as u64 * 7919),
            budget,
        )?);
    }
    let inconclusive = volumes
        .iter()
        .any(|v| v.volume <= 0.0 || v.standard_error > 0.25 * v.volume);
    // least-squares slope of ln V against ln R
    let xs: Vec<f64> = sorted.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = volumes.iter().map(|v| v.volume.max(1e-300).ln()).collect();
    let xbar = xs.iter().sum::<f64>() / xs.len() as f64;
    let ybar = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let q_fit = sxy / sxx;
    let q_ceil = q_fit.ceil().max(1.0) as usize;
    let doubling_ok = doubling_check(&volumes, q_ceil);
    Ok(DimensionFit {
        q_fit,
        q_ceil,
        doubling_ok,
        inconclusive,
        volumes,
    })
}

/// A possibly infinite exact exponent.
#[derive(Clone, Debug, PartialEq)]
pub enum Exponent {
    Finite(Rat),
    Infinite,
}

impl Exponent {
    pub fn finite(num: i64, den: i64) -> Self {
        Exponent::Finite(Rat::new(num.into(), den.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Finite(r) => crate::sympoly::rat_to_f64(r),
            Exponent::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }
}

impl serde::Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(r) => s.serialize_str(&rat_to_string(r)),
            Exponent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(r) => write!(f, "{}", rat_to_string(r)),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// All integrability/Holder exponents as exact functions of `(k, m, Q)`.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentReport {
    pub k: usize,
    pub m: usize,
    pub q_dim: usize,
    /// Largest admissible p for p-Laplacian subharmonicity:
    /// `p = 1 + k(m-1)/(m-k)`, infinite at `k = m`.
    pub p_laplace_max: Exponent,
    /// Gradient integrability bound `q < Qk(m-1)/((Q-1)(m-k))`.
    pub q_gradient_max: Exponent,
    /// Energy exponent bound `r < m(k-1)/(m-k)`.
    pub r_energy_max: Exponent,
    /// Sobolev bound `p < Qk(m-1)/((Q-1)m - (Q+m-2)k)` on its branch,
    /// infinite when `(Q-1)m <= (Q+m-2)k`.
    pub p_sobolev_max: Exponent,
    /// True exactly on the strict branch `(Q-1)m < (Q+m-2)k`, where the
    /// sup-norm bound itself (`p = ∞`) is part of the claim; at branch
    /// equality the admissible range is unbounded but `p = ∞` is not
    /// included.
    pub sobolev_includes_infinity: bool,
    /// Holder regime threshold `(Q-1)m/(Q+m-2)`.
    pub holder_threshold_k: Exponent,
    /// `α = (k(Q+m-2) - m(Q-1))/(k(m-1))` when `k` exceeds the threshold;
    /// 1 at `k = m`.
    pub holder_alpha: Option<Exponent>,
}

/// Exact exponent calculator; `1 <= k <= m`, `Q >= 2`.
pub fn exponent_report(k: usize, m: usize, q_dim: usize) -> Result<ExponentReport> {
    if k == 0 || k > m {
        return Err(Error::IndexOutOfRange { index: k, max: m });
    }
    if q_dim < 2 {
        return Err(Error::RejectedInput(
            "homogeneous dimension must be >= 2".into(),
        ));
    }
    let ki = k as i64;
    let mi = m as i64;
    let qi = q_dim as i64;
    let top = k == m;

    let p_laplace_max = if top {
        Exponent::Infinite
    } else {
        Exponent::finite(mi - ki + ki * (mi - 1), mi - ki)
    };
    let q_gradient_max = if top {
        Exponent::Infinite
    } else {
        Exponent::finite(qi * ki * (mi - 1), (qi - 1) * (mi - ki))
    };
    let r_energy_max = if top {
        Exponent::Infinite
    } else {
        Exponent::finite(mi * (ki - 1), mi - ki)
    };
    // Sobolev branch: finite only when (Q-1)m > (Q+m-2)k
    let sobolev_denominator = (qi - 1) * mi - (qi + mi - 2) * ki;
    let p_sobolev_max = if sobolev_denominator > 0 {
        Exponent::finite(qi * ki * (mi - 1), sobolev_denominator)
    } else {
        Exponent::Infinite
    };
    let sobolev_includes_infinity = sobolev_denominator < 0;
    let holder_threshold_k = Exponent::finite((qi - 1) * mi, qi + mi - 2);
    // holder regime: k > threshold or k = m
    let threshold = Rat::new(((qi - 1) * mi).into(), (qi + mi - 2).into());
    let k_rat = Rat::from_integer(ki.into());
    let holder_alpha = if top {
        Some(Exponent::Finite(Rat::one()))
    } else if k_rat > threshold {
        Some(Exponent::finite(
            ki * (qi + mi - 2) - mi * (qi - 1),
            ki * (mi - 1),
        ))
    } else {
        None
    };

    // sanity: defined exponents are positive
    for e in [&p_laplace_max, &q_gradient_max, &p_sobolev_max] {
        if let Exponent::Finite(r) = e {
            debug_assert!(r > &Rat::zero());
        }
    }

    Ok(ExponentReport {
        k,
        m,
        q_dim,
        p_laplace_max,
        q_gradient_max,
        r_energy_max,
        p_sobolev_max,
        sobolev_includes_infinity,
        holder_threshold_k,
        holder_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::rat;

    #[test]
    fn euclidean_distance_is_straight_line() {
        let e = FieldSystem::euclidean(3).unwrap();
        let budget = PathBudget::full();
        let x = [0.1, -0.2, 0.3];
        let y = [0.7, 0.4, -0.1];
        let euclid: f64 = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let est = cc_distance(&e, &x, &y, &budget, 11).unwrap();
        assert!(
            (est.upper_bound - euclid).abs() <= 0.01 * euclid,
            "estimate {} vs euclid {}",
            est.upper_bound,
            euclid
        );
        assert!(est.upper_bound >= euclid * 0.99);
        assert!(!est.path.nodes.is_empty());
    }

    #[test]
    fn identical_points_have_zero_distance() {
        let e = FieldSystem::euclidean(2).unwrap();
        let est = cc_distance(&e, &[0.3, 0.4], &[0.3, 0.4], &PathBudget::coarse(), 5).unwrap();
        assert_eq!(est.upper_bound, 0.0);
    }

    #[test]
    fn heisenberg_vertical_reachability() {
        // the center direction is reachable only through the bracket; the
        // solver must find a feasible loop
        let h = FieldSystem::heisenberg(1).unwrap();
        let est = cc_distance(&h, &[0.0; 3], &[0.0, 0.0, 0.25], &PathBudget::full(), 7).unwrap();
        assert!(est.upper_bound.is_finite() && est.upper_bound > 0.0);
        // known scaling: d(0, (0,0,t)) = sqrt(4 pi t) ... the solver only
        // upper-bounds it; sanity check the ballpark
        let ideal = (4.0 * std::f64::consts::PI * 0.25).sqrt();
        assert!(
            est.upper_bound >= ideal * 0.9 && est.upper_bound <= ideal * 1.6,
            "estimate {} vs ideal {}",
            est.upper_bound,
            ideal
        );
    }

    #[test]
    fn heisenberg_dilation_homogeneity() {
        // d(0, δ_s y) = s d(0, y) for the anisotropic dilation
        let h = FieldSystem::heisenberg(1).unwrap();
        let budget = PathBudget::full();
        let y = [0.4, 0.2, 0.1];
        let d1 = cc_distance(&h, &[0.0; 3], &y, &budget, 3)
            .unwrap()
            .upper_bound;
        for s in [0.5, 2.0] {
            let ys = [s * y[0], s * y[1], s * s * y[2]];
            let ds = cc_distance(&h, &[0.0; 3], &ys, &budget, 3)
                .unwrap()
                .upper_bound;
            assert!(
                (ds - s * d1).abs() <= 0.03 * (s * d1),
                "s = {s}: {ds} vs {}",
                s * d1
            );
        }
    }

    #[test]
    fn distance_symmetry_within_solver_slack() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let budget = PathBudget::full();
        let x = [0.1, 0.3, 0.05];
        let y = [-0.2, 0.4, -0.1];
        let dxy = cc_distance(&h, &x, &y, &budget, 21).unwrap().upper_bound;
        let dyx = cc_distance(&h, &y, &x, &budget, 22).unwrap().upper_bound;
        assert!((dxy - dyx).abs() <= 0.03 * dxy.max(dyx), "{dxy} vs {dyx}");
    }

    #[test]
    fn triangle_inequality_with_solver_slack() {
        // estimates are upper bounds found independently, so the triangle
        // inequality holds up to solver slack
        let h = FieldSystem::heisenberg(1).unwrap();
        let budget = PathBudget::full();
        let triples = [
            ([0.0, 0.0, 0.0], [0.3, 0.1, 0.0], [0.5, -0.2, 0.1]),
            ([0.1, -0.1, 0.05], [-0.2, 0.3, 0.0], [0.4, 0.4, -0.05]),
        ];
        for (i, (x, y, z)) in triples.iter().enumerate() {
            let dxz = cc_distance(&h, x, z, &budget, 31 + i as u64)
                .unwrap()
                .upper_bound;
            let dxy = cc_distance(&h, x, y, &budget, 41 + i as u64)
                .unwrap()
                .upper_bound;
            let dyz = cc_distance(&h, y, z, &budget, 51 + i as u64)
                .unwrap()
                .upper_bound;
            assert!(
                dxz <= (dxy + dyz) * 1.05,
                "triple {i}: {dxz} vs {dxy} + {dyz}"
            );
        }
    }

    #[test]
    fn volume_translation_invariance() {
        // euclidean volumes are translation invariant; Heisenberg volumes
        // are invariant under left translation along the center axis, which
        // acts as a plain shift of x3
        let e = FieldSystem::euclidean(2).unwrap();
        let coarse = PathBudget::coarse();
        let at_origin = ball_volume(&e, &[0.0, 0.0], 0.8, 1000, 61, &coarse).unwrap();
        let shifted = ball_volume(&e, &[0.3, -0.2], 0.8, 1000, 62, &coarse).unwrap();
        let sigma = at_origin.standard_error + shifted.standard_error;
        assert!(
            (at_origin.volume - shifted.volume).abs() <= 3.0 * sigma + 0.05 * at_origin.volume,
            "euclidean shift: {} vs {}",
            at_origin.volume,
            shifted.volume
        );
        let h = FieldSystem::heisenberg(1).unwrap();
        let center = ball_volume(&h, &[0.0; 3], 0.6, 1000, 63, &coarse).unwrap();
        let lifted = ball_volume(&h, &[0.0, 0.0, 0.3], 0.6, 1000, 64, &coarse).unwrap();
        let sigma = center.standard_error + lifted.standard_error;
        assert!(
            (center.volume - lifted.volume).abs() <= 3.0 * sigma + 0.1 * center.volume,
            "center-axis shift: {} vs {}",
            center.volume,
            lifted.volume
        );
    }

    #[test]
    fn euclidean_ball_volume() {
        let e = FieldSystem::euclidean(2).unwrap();
        let v = ball_volume(&e, &[0.0, 0.0], 1.0, 1000, 42, &PathBudget::coarse()).unwrap();
        let expect = std::f64::consts::PI;
        assert!(
            (v.volume - expect).abs() <= 3.0 * v.standard_error + 0.05 * expect,
            "volume {} ± {} vs π",
            v.volume,
            v.standard_error
        );
    }

    #[test]
    fn volume_monotone_in_radius() {
        let e = FieldSystem::euclidean(2).unwrap();
        let small = ball_volume(&e, &[0.0; 2], 0.5, 1000, 9, &PathBudget::coarse()).unwrap();
        let big = ball_volume(&e, &[0.0; 2], 1.0, 1000, 9, &PathBudget::coarse()).unwrap();
        assert!(big.volume > small.volume);
    }

    #[test]
    fn euclidean_dimension_fit() {
        let e = FieldSystem::euclidean(2).unwrap();
        let fit = homogeneous_dimension(
            &e,
            &[0.0, 0.0],
            &[0.25, 0.5, 1.0],
            1000,
            13,
            &PathBudget::coarse(),
        )
        .unwrap();
        assert!(
            (fit.q_fit - 2.0).abs() <= 0.2,
            "Q_fit = {} for euclidean(2)",
            fit.q_fit
        );
        assert!(!fit.inconclusive);
        assert!(doubling_check(&fit.volumes, 2));
    }

    #[test]
    fn dimension_fit_input_validation() {
        let e = FieldSystem::euclidean(2).unwrap();
        assert!(
            homogeneous_dimension(&e, &[0.0; 2], &[1.0, 2.0], 1000, 1, &PathBudget::coarse())
                .is_err()
        );
        assert!(homogeneous_dimension(
            &e,
            &[0.0; 2],
            &[1.0, 1.5, 2.0],
            1000,
            1,
            &PathBudget::coarse()
        )
        .is_err());
    }

    #[test]
    fn exponent_report_top_case() {
        // k = m: q = infinity, alpha = 1
        let rep = exponent_report(2, 2, 4).unwrap();
        assert!(rep.q_gradient_max.is_infinite());
        assert!(rep.p_laplace_max.is_infinite());
        assert_eq!(rep.holder_alpha, Some(Exponent::Finite(Rat::one())));
    }

    #[test]
    fn exponent_report_h1_k1() {
        // (m, Q, k) = (2, 4, 1): q_max = 4/3, p_laplace = 2
        let rep = exponent_report(1, 2, 4).unwrap();
        assert_eq!(rep.q_gradient_max, Exponent::finite(4, 3));
        assert_eq!(rep.p_laplace_max, Exponent::finite(2, 1));
        assert!(rep.holder_alpha.is_none());
        // threshold (Q-1)m/(Q+m-2) = 6/4 = 3/2 > 1 = k
        assert_eq!(rep.holder_threshold_k, Exponent::finite(3, 2));
    }

    #[test]
    fn exponent_report_holder_regime() {
        // m = 3, Q = 4, k = 2: threshold 9/5 < 2, alpha = 1/4
        let rep = exponent_report(2, 3, 4).unwrap();
        assert_eq!(rep.holder_threshold_k, Exponent::finite(9, 5));
        assert_eq!(rep.holder_alpha, Some(Exponent::finite(1, 4)));
    }

    #[test]
    fn sobolev_branch_condition() {
        // p = inf exactly when (Q-1)m < (Q+m-2)k (and at the degenerate
        // equality, where the finite formula blows up)
        for (k, m, q) in [
            (1usize, 2usize, 4usize),
            (2, 3, 4),
            (1, 3, 3),
            (2, 4, 6),
            (3, 4, 4),
            (1, 3, 2),
        ] {
            let rep = exponent_report(k, m, q).unwrap();
            let lhs = (q as i64 - 1) * m as i64;
            let rhs = (q as i64 + m as i64 - 2) * k as i64;
            assert_eq!(rep.p_sobolev_max.is_infinite(), lhs <= rhs, "{k} {m} {q}");
            assert_eq!(rep.sobolev_includes_infinity, lhs < rhs, "{k} {m} {q}");
        }
    }

    #[test]
    fn exponent_monotonicity_in_k() {
        // q_gradient_max strictly increases in k below the top case
        for m in 3..=5 {
            for q in [3usize, 4, 6] {
                let mut prev: Option<Rat> = None;
                for k in 1..m {
                    let rep = exponent_report(k, m, q).unwrap();
                    if let Exponent::Finite(v) = &rep.q_gradient_max {
                        if let Some(p) = &prev {
                            assert!(v > p, "k={k} m={m} Q={q}");
                        }
                        prev = Some(v.clone());
                    }
                }
            }
        }
        // holder_alpha increases in k within the holder regime
        let a2 = exponent_report(2, 3, 4).unwrap().holder_alpha.unwrap();
        let a3 = exponent_report(3, 3, 4).unwrap().holder_alpha.unwrap();
        assert!(a3.to_f64() > a2.to_f64());
    }

    #[test]
    fn exponent_decrease_in_homogeneous_dimension() {
        // Q/(Q-1) shrinks as Q grows, so the gradient bound decreases in Q
        // for fixed k < m
        let q4 = exponent_report(1, 2, 4).unwrap();
        let q6 = exponent_report(1, 2, 6).unwrap();
        assert!(q4.q_gradient_max.to_f64() > q6.q_gradient_max.to_f64());
    }

    #[test]
    fn exponent_report_rejects_bad_inputs() {
        assert!(exponent_report(0, 2, 4).is_err());
        assert!(exponent_report(3, 2, 4).is_err());
        assert!(exponent_report(1, 2, 1).is_err());
    }

    #[test]
    fn lemma_consistency_p_laplace() {
        // p_laplace_max(k=1) = 2 for every m >= 2
        for m in 2..=6 {
            let rep = exponent_report(1, m, 4).unwrap();
            assert_eq!(rep.p_laplace_max, Exponent::finite(2, 1), "m = {m}");
        }
    }

    #[test]
    fn path_csv_dump() {
        let e = FieldSystem::euclidean(2).unwrap();
        let est = cc_distance(&e, &[0.0, 0.0], &[1.0, 0.0], &PathBudget::coarse(), 3).unwrap();
        let csv = est.path.to_csv();
        assert!(csv.starts_with("t,x1,x2"));
        assert!(csv.lines().count() > 2);
    }

    #[test]
    fn exponents_match_known_rational() {
        let rep = exponent_report(2, 4, 6).unwrap();
        // q < Qk(m-1)/((Q-1)(m-k)) = 6*2*3/(5*2) = 18/5
        assert_eq!(rep.q_gradient_max, Exponent::Finite(rat(18, 5)));
        // r < m(k-1)/(m-k) = 4/2 = 2
        assert_eq!(rep.r_energy_max, Exponent::Finite(rat(2, 1)));
    }
}
