//! Subelliptic Hessians and the 2-Hessian operator family.
//!
//! For a system `X = (X_1..X_m)` and scalar `u` this module computes the
//! full Hessian `[X_i X_j u]`, its symmetric part, the commutator
//! derivatives `[X_i, X_j] u`, elementary symmetric functions through
//! principal minors (no eigendecomposition on the symbolic path), the
//! modified 2-Hessian family
//! `F_2(sym) + alpha * Σ_{i<j} ([X_i,X_j]u)^2`, its linearization, the
//! sub/p/infinity Laplacians, and pointwise k-convexity tests.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::FieldSystem;
use crate::sympoly::{rat, Polynomial, Rat};

use num_traits::Zero;

/// Ring-like coefficient scalar for the generic minor machinery: exact
/// rationals, polynomials and floats all qualify.
pub trait Coeff: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_c(&self, other: &Self) -> Self;
    fn sub_c(&self, other: &Self) -> Self;
    fn mul_c(&self, other: &Self) -> Self;
    fn is_zero_c(&self) -> bool;
}

impl Coeff for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn add_c(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_c(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_c(&self) -> bool {
        *self == 0.0
    }
}

impl Coeff for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::from_integer(1.into())
    }
    fn add_c(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_c(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
}

impl Coeff for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.dim())
    }
    fn one_like(&self) -> Self {
        Polynomial::constant(self.dim(), Rat::from_integer(1.into()))
    }
    fn add_c(&self, other: &Self) -> Self {
        self.add(other).expect("matrix entries share dimension")
    }
    fn sub_c(&self, other: &Self) -> Self {
        self.sub(other).expect("matrix entries share dimension")
    }
    fn mul_c(&self, other: &Self) -> Self {
        self.mul(other).expect("matrix entries share dimension")
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
}

/// Square matrix as rows of entries.
pub type Matrix<T> = Vec<Vec<T>>;

fn check_square<T>(mat: &Matrix<T>) -> Result<usize> {
    let m = mat.len();
    for row in mat {
        if row.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: row.len(),
            });
        }
    }
    Ok(m)
}

/// The full non-symmetric Hessian of `u` with respect to a field system,
/// together with its symmetric part and the commutator derivatives.
#[derive(Clone, Debug)]
pub struct HessianPair {
    /// `full[i][j] = X_{i+1} X_{j+1} u`.
    pub full: Matrix<Polynomial>,
    /// `sym[i][j] = (X_i X_j + X_j X_i) u / 2`.
    pub sym: Matrix<Polynomial>,
    /// `[X_i, X_j] u` for `i < j`, keyed 1-based.
    pub commutators: Vec<((usize, usize), Polynomial)>,
}

impl HessianPair {
    /// Commutator derivative `[X_i, X_j] u` for any index order (empty for
    /// `i == j`). 1-based.
    pub fn commutator(&self, i: usize, j: usize) -> Polynomial {
        let n = self.full[0][0].dim();
        if i == j {
            return Polynomial::zero(n);
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        for ((p, q), poly) in &self.commutators {
            if *p == a && *q == b {
                return if flip { poly.neg() } else { poly.clone() };
            }
        }
        Polynomial::zero(n)
    }

    pub fn m(&self) -> usize {
        self.full.len()
    }
}

/// Compute the full Hessian pair exactly.
///
/// Invariants maintained (and asserted under debug builds):
/// `sym` is exactly symmetric, `full = sym ± comm/2`, and each commutator
/// entry coincides with the bracket field applied to `u`.
pub fn hessian_pair(system: &FieldSystem, u: &Polynomial) -> Result<HessianPair> {
    let m = system.m();
    if u.dim() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            got: u.dim(),
        });
    }
    let first: Vec<Polynomial> = (1..=m)
        .map(|j| system.field(j).apply(u))
        .collect::<Result<_>>()?;
    let mut full = Vec::with_capacity(m);
    for i in 1..=m {
        let mut row = Vec::with_capacity(m);
        for fj in &first {
            row.push(system.field(i).apply(fj)?);
        }
        full.push(row);
    }
    let half = rat(1, 2);
    let mut sym = vec![vec![Polynomial::zero(u.dim()); m]; m];
    for i in 0..m {
        for j in 0..m {
            sym[i][j] = full[i][j].add(&full[j][i])?.scale(&half);
        }
    }
    let mut commutators = Vec::new();
    for i in 1..=m {
        for j in (i + 1)..=m {
            let diff = full[i - 1][j - 1].sub(&full[j - 1][i - 1])?;
            debug_assert_eq!(
                diff,
                system.field(i).commutator(system.field(j))?.apply(u)?,
                "commutator entries must match the bracket field applied to u"
            );
            commutators.push(((i, j), diff));
        }
    }
    Ok(HessianPair {
        full,
        sym,
        commutators,
    })
}

fn det_over<T: Coeff>(mat: &Matrix<T>, rows: &[usize], cols: &[usize]) -> T {
    debug_assert_eq!(rows.len(), cols.len());
    if rows.len() == 1 {
        return mat[rows[0]][cols[0]].clone();
    }
    // Laplace expansion along the first retained row
    let mut acc: Option<T> = None;
    for (pos, &col) in cols.iter().enumerate() {
        let entry = &mat[rows[0]][col];
        if entry.is_zero_c() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != col).collect();
        let minor = det_over(mat, &rows[1..], &sub_cols);
        let signed = if pos % 2 == 0 {
            entry.mul_c(&minor)
        } else {
            entry.zero_like().sub_c(&entry.mul_c(&minor))
        };
        acc = Some(match acc {
            None => signed,
            Some(a) => a.add_c(&signed),
        });
    }
    acc.unwrap_or_else(|| mat[rows[0]][cols[0]].zero_like())
}

fn principal_det<T: Coeff>(mat: &Matrix<T>, idx: &[usize]) -> T {
    det_over(mat, idx, idx)
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if pool.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        for mut tail in combinations(&pool[i + 1..], k - 1) {
            let mut c = vec![first];
            c.append(&mut tail);
            out.push(c);
        }
    }
    out
}

/// `S_j` of a square matrix as the sum of its `j x j` principal minors,
/// optionally deleting rows/columns (0-based `deleted`). Equals `S_j` of the
/// eigenvalues for symmetric input; `S_0 = 1`.
pub fn elementary_symmetric<T: Coeff>(mat: &Matrix<T>, j: usize, deleted: &[usize]) -> Result<T> {
    let m = check_square(mat)?;
    if m == 0 {
        return Err(Error::RejectedInput("empty matrix".into()));
    }
    let witness = &mat[0][0];
    for &d in deleted {
        if d >= m {
            return Err(Error::IndexOutOfRange {
                index: d + 1,
                max: m,
            });
        }
    }
    if j > m {
        return Err(Error::IndexOutOfRange { index: j, max: m });
    }
    if j == 0 {
        return Ok(witness.one_like());
    }
    let active: Vec<usize> = (0..m).filter(|i| !deleted.contains(i)).collect();
    // deleting rows/columns sets those eigenvalue slots to zero, so any
    // S_j needing more indices than remain is identically zero
    if j > active.len() {
        return Ok(witness.zero_like());
    }
    let mut acc = witness.zero_like();
    for subset in combinations(&active, j) {
        acc = acc.add_c(&principal_det(mat, &subset));
    }
    Ok(acc)
}

/// `S_j` of a value vector (a diagonal matrix), optionally deleting one
/// index (0-based): `S_{j,i}(λ) = S_j(λ)|_{λ_i = 0}`.
pub fn elementary_symmetric_values<T: Coeff>(
    vals: &[T],
    j: usize,
    deleted: Option<usize>,
) -> Result<T> {
    if vals.is_empty() {
        return Err(Error::RejectedInput("empty value vector".into()));
    }
    let witness = &vals[0];
    if j > vals.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: vals.len(),
        });
    }
    if j == 0 {
        return Ok(witness.one_like());
    }
    let active: Vec<usize> = (0..vals.len()).filter(|&i| Some(i) != deleted).collect();
    // deletion zeroes that slot: S_j vanishes when j exceeds the remainder
    if j > active.len() {
        return Ok(witness.zero_like());
    }
    let mut acc = witness.zero_like();
    for subset in combinations(&active, j) {
        let mut prod = witness.one_like();
        for &i in &subset {
            prod = prod.mul_c(&vals[i]);
        }
        acc = acc.add_c(&prod);
    }
    Ok(acc)
}

/// Symmetric part of a square matrix.
pub fn symmetric_part<T: Coeff + Halve>(mat: &Matrix<T>) -> Result<Matrix<T>> {
    let m = check_square(mat)?;
    let mut out = vec![vec![mat[0][0].zero_like(); m]; m];
    for i in 0..m {
        for j in 0..m {
            out[i][j] = mat[i][j].add_c(&mat[j][i]).halve();
        }
    }
    Ok(out)
}

/// Halving, needed for symmetric parts; provided per scalar type.
pub trait Halve {
    fn halve(&self) -> Self;
}

impl Halve for f64 {
    fn halve(&self) -> Self {
        self * 0.5
    }
}

impl Halve for Rat {
    fn halve(&self) -> Self {
        self / Rat::from_integer(2.into())
    }
}

impl Halve for Polynomial {
    fn halve(&self) -> Self {
        self.scale(&rat(1, 2))
    }
}

/// The modified 2-Hessian of a bare matrix:
/// `S_2(sym r) + alpha * Σ_{i<j} (r_ij - r_ji)^2`.
pub fn modified_two_hessian_of_matrix<T: Coeff + Halve>(mat: &Matrix<T>, alpha: &T) -> Result<T> {
    let m = check_square(mat)?;
    let sym = symmetric_part(mat)?;
    // S_2 of a 1x1 matrix is empty, hence zero
    let out = if m >= 2 {
        elementary_symmetric(&sym, 2, &[])?
    } else {
        mat[0][0].zero_like()
    };
    let mut energy = mat[0][0].zero_like();
    for i in 0..m {
        for j in (i + 1)..m {
            let d = mat[i][j].sub_c(&mat[j][i]);
            energy = energy.add_c(&d.mul_c(&d));
        }
    }
    Ok(out.add_c(&alpha.mul_c(&energy)))
}

/// Linearization of the modified 2-Hessian:
/// entrywise `(trace M) δ_ij + M_ij - 2 M_ji`.
pub fn two_hessian_linearization<T: Coeff>(mat: &Matrix<T>) -> Result<Matrix<T>> {
    let m = check_square(mat)?;
    if m == 0 {
        return Err(Error::RejectedInput("empty matrix".into()));
    }
    let mut trace = mat[0][0].zero_like();
    for (i, row) in mat.iter().enumerate() {
        trace = trace.add_c(&row[i]);
    }
    let mut out = vec![vec![mat[0][0].zero_like(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut v = mat[i][j].sub_c(&mat[j][i]).sub_c(&mat[j][i]);
            if i == j {
                v = v.add_c(&trace);
            }
            out[i][j] = v;
        }
    }
    Ok(out)
}

/// Sum of squared commutator derivatives `Σ_{i<j} ([X_i,X_j]u)^2`.
pub fn commutator_energy(system: &FieldSystem, u: &Polynomial) -> Result<Polynomial> {
    let pair = hessian_pair(system, u)?;
    commutator_energy_of_pair(&pair)
}

pub fn commutator_energy_of_pair(pair: &HessianPair) -> Result<Polynomial> {
    let n = pair.full[0][0].dim();
    let mut out = Polynomial::zero(n);
    for (_, c) in &pair.commutators {
        out = out.add(&c.mul(c)?)?;
    }
    Ok(out)
}

/// The modified 2-Hessian family
/// `F_2(X_s^2 u) + alpha Σ_{i<j}([X_i,X_j]u)^2` as an exact polynomial.
///
/// `alpha = 3/4` gives the divergence-structured operator; `alpha = 0` the
/// plain symmetric-part `F_2`.
pub fn modified_two_hessian(
    system: &FieldSystem,
    u: &Polynomial,
    alpha: &Rat,
) -> Result<Polynomial> {
    let pair = hessian_pair(system, u)?;
    modified_two_hessian_of_pair(&pair, alpha)
}

pub fn modified_two_hessian_of_pair(pair: &HessianPair, alpha: &Rat) -> Result<Polynomial> {
    let m = pair.m();
    let f2 = if m >= 2 {
        elementary_symmetric(&pair.sym, 2, &[])?
    } else {
        Polynomial::zero(pair.full[0][0].dim())
    };
    let energy = commutator_energy_of_pair(pair)?;
    f2.add(&energy.scale(alpha))
}

/// The starred operator: modified 2-Hessian at `alpha = 3/4` plus
/// `(1/2) Σ_j (X_j u)(Y_j u)` with `Y_j` the second-order fields.
pub fn star_two_hessian(system: &FieldSystem, u: &Polynomial) -> Result<Polynomial> {
    let base = modified_two_hessian(system, u, &rat(3, 4))?;
    let ys = system.second_order_fields()?;
    let mut correction = Polynomial::zero(system.dim());
    for (j, y) in ys.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        let xu = system.field(j + 1).apply(u)?;
        let yu = y.apply(u)?;
        correction = correction.add(&xu.mul(&yu)?)?;
    }
    base.add(&correction.scale(&rat(1, 2)))
}

/// Sub-Laplacian `Δ_X u = Σ_i X_i X_i u`, exact.
pub fn sub_laplacian(system: &FieldSystem, u: &Polynomial) -> Result<Polynomial> {
    let mut out = Polynomial::zero(system.dim());
    for i in 1..=system.m() {
        let first = system.field(i).apply(u)?;
        out = out.add(&system.field(i).apply(&first)?)?;
    }
    Ok(out)
}

/// Pointwise p-Laplacian via the expanded form
/// `|Xu|^{p-2} { Δ_X u + (p-2) (X_i u X_j u / |Xu|^2) s_ij }`.
///
/// At `|Xu| = 0`: continuous extension 0 for `p > 2`, the sub-Laplacian for
/// `p = 2`, singular-point error for `p < 2`.
pub fn p_laplacian_at(system: &FieldSystem, u: &Polynomial, p: f64, x: &[f64]) -> Result<f64> {
    let pair = hessian_pair(system, u)?;
    let grad: Vec<f64> = (1..=system.m())
        .map(|i| system.field(i).apply(u).and_then(|g| g.eval_f64(x)))
        .collect::<Result<_>>()?;
    p_laplacian_from_parts(&pair, &grad, p, x)
}

pub(crate) fn p_laplacian_from_parts(
    pair: &HessianPair,
    grad: &[f64],
    p: f64,
    x: &[f64],
) -> Result<f64> {
    let m = pair.m();
    let norm2: f64 = grad.iter().map(|g| g * g).sum();
    let mut trace = 0.0;
    for i in 0..m {
        trace += pair.sym[i][i].eval_f64(x)?;
    }
    if norm2 == 0.0 {
        if p > 2.0 {
            return Ok(0.0);
        }
        if p == 2.0 {
            return Ok(trace);
        }
        return Err(Error::SingularPoint { p });
    }
    let mut directional = 0.0;
    for i in 0..m {
        for j in 0..m {
            directional += grad[i] * grad[j] * pair.sym[i][j].eval_f64(x)?;
        }
    }
    let prefactor = norm2.sqrt().powf(p - 2.0);
    Ok(prefactor * (trace + (p - 2.0) * directional / norm2))
}

/// Pointwise infinity-Laplacian `Σ_ij X_i u X_j u s_ij(x)`.
pub fn infinity_laplacian_at(system: &FieldSystem, u: &Polynomial, x: &[f64]) -> Result<f64> {
    let pair = hessian_pair(system, u)?;
    let m = system.m();
    let grad: Vec<f64> = (1..=m)
        .map(|i| system.field(i).apply(u).and_then(|g| g.eval_f64(x)))
        .collect::<Result<_>>()?;
    let mut out = 0.0;
    for i in 0..m {
        for j in 0..m {
            out += grad[i] * grad[j] * pair.sym[i][j].eval_f64(x)?;
        }
    }
    Ok(out)
}

/// Result of a pointwise k-convexity scan.
#[derive(Clone, Debug, Serialize)]
pub struct KConvexityReport {
    pub k: usize,
    pub holds: bool,
    /// Most negative `S_j` value seen over all samples and `j <= k`.
    pub worst_value: f64,
    pub worst_j: usize,
    pub worst_point: Vec<f64>,
    pub tolerance: f64,
    pub samples_checked: usize,
}

/// Check `S_j(X_s^2 u)(x) >= -tol` for `j = 1..=k` over the samples.
pub fn k_convexity(
    system: &FieldSystem,
    u: &Polynomial,
    k: usize,
    samples: &[Vec<f64>],
    tol: f64,
) -> Result<KConvexityReport> {
    let m = system.m();
    if k == 0 || k > m {
        return Err(Error::IndexOutOfRange { index: k, max: m });
    }
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let pair = hessian_pair(system, u)?;
    // S_j of the symbolic symmetric Hessian, evaluated per point
    let sj_polys: Vec<Polynomial> = (1..=k)
        .map(|j| elementary_symmetric(&pair.sym, j, &[]))
        .collect::<Result<_>>()?;
    let evals: Vec<_> = sj_polys.iter().map(|p| p.evaluator()).collect();
    let mut worst_value = f64::INFINITY;
    let mut worst_j = 1;
    let mut worst_point = samples[0].clone();
    for x in samples {
        for (jm1, e) in evals.iter().enumerate() {
            let v = e.eval(x);
            if v < worst_value {
                worst_value = v;
                worst_j = jm1 + 1;
                worst_point = x.clone();
            }
        }
    }
    Ok(KConvexityReport {
        k,
        holds: worst_value >= -tol,
        worst_value,
        worst_j,
        worst_point,
        tolerance: tol,
        samples_checked: samples.len(),
    })
}

/// Positive semidefiniteness of a symmetric float matrix through the
/// sign pattern of its elementary symmetric functions: a real-rooted
/// spectrum is non-negative iff every `S_j >= 0`. Checked to `tol`.
pub fn psd_by_principal_minors(mat: &Matrix<f64>, tol: f64) -> Result<bool> {
    let m = check_square(mat)?;
    for j in 1..=m {
        if elementary_symmetric(mat, j, &[])? < -tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degenerate-ellipticity matrix `(trace s) I - s` for a symmetric part `s`.
pub fn ellipticity_matrix(sym: &Matrix<f64>) -> Result<Matrix<f64>> {
    let m = check_square(sym)?;
    let trace: f64 = (0..m).map(|i| sym[i][i]).sum();
    let mut out = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            out[i][j] = if i == j {
                trace - sym[i][j]
            } else {
                -sym[i][j]
            };
        }
    }
    Ok(out)
}

/// Kind tags for reported operator values.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum OperatorValue {
    ElementarySymmetric { j: usize, polynomial: String },
    ModifiedTwoHessian { alpha: String, polynomial: String },
    CommutatorEnergy { polynomial: String },
    StarTwoHessian { polynomial: String },
    SubLaplacian { polynomial: String },
    PLaplacian { p: f64, point: Vec<f64>, value: f64 },
    InfinityLaplacian { point: Vec<f64>, value: f64 },
}

impl OperatorValue {
    pub fn symbolic_modified(alpha: &Rat, poly: &Polynomial) -> Self {
        OperatorValue::ModifiedTwoHessian {
            alpha: format!("{}/{}", alpha.numer(), alpha.denom()),
            polynomial: poly.to_string(),
        }
    }
}

/// Float view of a polynomial matrix at a point.
pub fn eval_matrix(mat: &Matrix<Polynomial>, x: &[f64]) -> Result<Matrix<f64>> {
    mat.iter()
        .map(|row| row.iter().map(|p| p.eval_f64(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::rat_int;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn horizontal_square(n_amb: usize, count: usize) -> Polynomial {
        // (x_1^2 + ... + x_count^2) / 2
        let mut p = Polynomial::zero(n_amb);
        for i in 1..=count {
            p = p.add(&Polynomial::var(n_amb, i).unwrap().pow(2)).unwrap();
        }
        p.scale(&rat(1, 2))
    }

    #[test]
    fn heisenberg_center_coordinate_hessian() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let u = Polynomial::var(3, 3).unwrap();
        let pair = hessian_pair(&h, &u).unwrap();
        assert_eq!(pair.full[0][1], Polynomial::constant(3, rat(1, 2)));
        assert_eq!(pair.full[1][0], Polynomial::constant(3, rat(-1, 2)));
        assert!(pair.full[0][0].is_zero() && pair.full[1][1].is_zero());
        for row in &pair.sym {
            for e in row {
                assert!(e.is_zero());
            }
        }
        assert_eq!(pair.commutator(1, 2), Polynomial::constant(3, rat_int(1)));
    }

    #[test]
    fn heisenberg_horizontal_square_hessian() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let u = horizontal_square(3, 2);
        let pair = hessian_pair(&h, &u).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j {
                    Polynomial::constant(3, rat_int(1))
                } else {
                    Polynomial::zero(3)
                };
                assert_eq!(pair.full[i][j], expect);
                assert_eq!(pair.sym[i][j], expect);
            }
        }
        assert!(pair.commutator(1, 2).is_zero());
    }

    #[test]
    fn euclidean_quadratic_recovers_coefficient_matrix() {
        let e = FieldSystem::euclidean(3).unwrap();
        // u = x1^2 + 2 x1 x2 + 3 x2 x3, A = [[2,2,0],[2,0,3],[0,3,0]]
        let x = |j| Polynomial::var(3, j).unwrap();
        let u = x(1)
            .pow(2)
            .add(&x(1).mul(&x(2)).unwrap().scale(&rat_int(2)))
            .unwrap()
            .add(&x(2).mul(&x(3)).unwrap().scale(&rat_int(3)))
            .unwrap();
        let pair = hessian_pair(&e, &u).unwrap();
        let a = [[2, 2, 0], [2, 0, 3], [0, 3, 0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(pair.full[i][j], Polynomial::constant(3, rat_int(a[i][j])),);
                assert_eq!(pair.sym[i][j], pair.full[i][j]);
            }
        }
    }

    #[test]
    fn elementary_symmetric_of_identity() {
        let id: Matrix<f64> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        assert_eq!(elementary_symmetric(&id, 2, &[]).unwrap(), 3.0);
        assert_eq!(elementary_symmetric(&id, 0, &[]).unwrap(), 1.0);
        assert_eq!(elementary_symmetric(&id, 3, &[]).unwrap(), 1.0);
    }

    #[test]
    fn minor_sums_match_eigenvalue_oracle() {
        // S_j from principal minors vs S_j of Jacobi-iterated eigenvalues
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..20 {
            let mut mat = vec![vec![0.0; 4]; 4];
            for i in 0..4 {
                for j in i..4 {
                    let v = rng.gen_range(-1.0..1.0);
                    mat[i][j] = v;
                    mat[j][i] = v;
                }
            }
            let eig = crate::linalg::symmetric_eigenvalues(&mat);
            for j in 1..=4 {
                let minors = elementary_symmetric(&mat, j, &[]).unwrap();
                let from_eig = elementary_symmetric_values(&eig, j, None).unwrap();
                assert!(
                    (minors - from_eig).abs() <= 1e-9 * (1.0 + minors.abs()),
                    "S_{j}: minors {minors} vs eigenvalues {from_eig}"
                );
            }
        }
    }

    #[test]
    fn deleted_index_matches_lambda_substitution() {
        // λ = (1,1,1): S_{2,1} = 1, S_{1,1} = 2
        let vals = vec![1.0, 1.0, 1.0];
        assert_eq!(elementary_symmetric_values(&vals, 2, Some(0)).unwrap(), 1.0);
        assert_eq!(elementary_symmetric_values(&vals, 1, Some(0)).unwrap(), 2.0);
        // matrix route agrees
        let diag: Matrix<f64> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        assert_eq!(elementary_symmetric(&diag, 2, &[0]).unwrap(), 1.0);
    }

    #[test]
    fn linearization_examples() {
        // identity -> (m-1) identity
        let id: Matrix<f64> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let lin = two_hessian_linearization(&id).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(lin[i][j], if i == j { 2.0 } else { 0.0 });
            }
        }
        // antisymmetric example from the center coordinate
        let m = vec![vec![0.0, 0.5], vec![-0.5, 0.0]];
        let lin = two_hessian_linearization(&m).unwrap();
        assert_eq!(lin[0][1], 1.5);
        assert_eq!(lin[1][0], -1.5);
        // symmetric input reduces to (trace) I - M, here trace = 1
        let s = vec![vec![2.0, 1.0], vec![1.0, -1.0]];
        let lin = two_hessian_linearization(&s).unwrap();
        assert_eq!(lin[0][0], -1.0);
        assert_eq!(lin[0][1], -1.0);
        assert_eq!(lin[1][0], -1.0);
        assert_eq!(lin[1][1], 2.0);
    }

    #[test]
    fn modified_two_hessian_examples() {
        let h = FieldSystem::heisenberg(1).unwrap();
        // u = x3: sym = 0, commutator derivative = 1 -> value alpha
        let u = Polynomial::var(3, 3).unwrap();
        let v = modified_two_hessian(&h, &u, &rat(3, 4)).unwrap();
        assert_eq!(v, Polynomial::constant(3, rat(3, 4)));
        // u = horizontal square: S_2(I_2) = 1, commutators vanish
        let u2 = horizontal_square(3, 2);
        for alpha in [rat(0, 1), rat(1, 4), rat(3, 4), rat(7, 1)] {
            let v = modified_two_hessian(&h, &u2, &alpha).unwrap();
            assert_eq!(v, Polynomial::constant(3, rat_int(1)));
        }
    }

    #[test]
    fn first_form_agrees_with_family_at_three_quarters() {
        // (1/2){(tr r)^2 - Σ r_ij r_ji + (1/2) Σ (r_ij - r_ji)^2}
        // computed directly from the full Hessian, vs the family value.
        let h = FieldSystem::heisenberg(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let u = Polynomial::random(3, 4, &mut rng);
            let pair = hessian_pair(&h, &u).unwrap();
            let m = pair.m();
            let mut tr = Polynomial::zero(3);
            for i in 0..m {
                tr = tr.add(&pair.full[i][i]).unwrap();
            }
            let mut cross = Polynomial::zero(3);
            let mut anti = Polynomial::zero(3);
            for i in 0..m {
                for j in 0..m {
                    cross = cross
                        .add(&pair.full[i][j].mul(&pair.full[j][i]).unwrap())
                        .unwrap();
                    let d = pair.full[i][j].sub(&pair.full[j][i]).unwrap();
                    anti = anti.add(&d.mul(&d).unwrap()).unwrap();
                }
            }
            let first_form = tr
                .mul(&tr)
                .unwrap()
                .sub(&cross)
                .unwrap()
                .add(&anti.scale(&rat(1, 2)))
                .unwrap()
                .scale(&rat(1, 2));
            let family = modified_two_hessian(&h, &u, &rat(3, 4)).unwrap();
            assert_eq!(first_form, family, "u = {u}");
        }
    }

    #[test]
    fn alpha_difference_recovers_commutator_energy() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(87);
        for _ in 0..5 {
            let u = Polynomial::random(3, 4, &mut rng);
            let at1 = modified_two_hessian(&h, &u, &rat_int(1)).unwrap();
            let at0 = modified_two_hessian(&h, &u, &rat_int(0)).unwrap();
            let energy = commutator_energy(&h, &u).unwrap();
            assert_eq!(at1.sub(&at0).unwrap(), energy);
            // script_F2(3/4) - script_F2(0) = (3/4) * energy, exactly
            let at34 = modified_two_hessian(&h, &u, &rat(3, 4)).unwrap();
            assert_eq!(at34.sub(&at0).unwrap(), energy.scale(&rat(3, 4)));
        }
    }

    #[test]
    fn family_is_alpha_independent_for_commuting_systems() {
        let e = FieldSystem::euclidean(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = Polynomial::random(3, 4, &mut rng);
        let a = modified_two_hessian(&e, &u, &rat_int(0)).unwrap();
        let b = modified_two_hessian(&e, &u, &rat(99, 7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn euler_identity_for_linearization() {
        // Σ_ij F2lin(r)_ij r_ij = 2 * modified_two_hessian(r, 3/4), exact
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let m = 4;
            let mat: Matrix<Rat> = (0..m)
                .map(|_| {
                    (0..m)
                        .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
                        .collect()
                })
                .collect();
            let lin = two_hessian_linearization(&mat).unwrap();
            let mut contracted = Rat::zero();
            for i in 0..m {
                for j in 0..m {
                    contracted += &lin[i][j] * &mat[i][j];
                }
            }
            let value = modified_two_hessian_of_matrix(&mat, &rat(3, 4)).unwrap();
            assert_eq!(contracted, &value * Rat::from_integer(2.into()));
        }
    }

    #[test]
    fn principal_minor_identity_quarter_coefficient() {
        // Σ_{i<j} (r_ii r_jj - r_ij r_ji) = F2(sym) + (1/4) Σ (r_ij - r_ji)^2
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..50 {
            let m = 4;
            let mat: Matrix<f64> = (0..m)
                .map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let mut minors = 0.0;
            for i in 0..m {
                for j in (i + 1)..m {
                    minors += mat[i][i] * mat[j][j] - mat[i][j] * mat[j][i];
                }
            }
            let quarter = modified_two_hessian_of_matrix(&mat, &0.25).unwrap();
            assert!(
                (minors - quarter).abs() <= 1e-12 * (1.0 + minors.abs()),
                "{minors} vs {quarter}"
            );
        }
    }

    #[test]
    fn laplacian_examples() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let u = horizontal_square(3, 2);
        assert_eq!(
            sub_laplacian(&h, &u).unwrap(),
            Polynomial::constant(3, rat_int(2))
        );
        // euclidean |x|^2/2: Δ_p = |x|^{p-2} (n + p - 2)
        let e = FieldSystem::euclidean(3).unwrap();
        let sq = horizontal_square(3, 3);
        let x = [0.5, -0.25, 1.0];
        let norm = (x.iter().map(|v| v * v).sum::<f64>()).sqrt();
        for p in [1.5, 2.0, 3.0, 4.0] {
            let v = p_laplacian_at(&e, &sq, p, &x).unwrap();
            let expect = norm.powf(p - 2.0) * (3.0 + p - 2.0);
            assert!((v - expect).abs() < 1e-12, "p={p}: {v} vs {expect}");
        }
        // center coordinate has vanishing symmetric Hessian
        let x3 = Polynomial::var(3, 3).unwrap();
        assert_eq!(
            infinity_laplacian_at(&h, &x3, &[0.3, 0.7, -0.2]).unwrap(),
            0.0
        );
    }

    #[test]
    fn p_laplacian_singular_point_policy() {
        let e = FieldSystem::euclidean(2).unwrap();
        let sq = horizontal_square(2, 2);
        let origin = [0.0, 0.0];
        // p > 2: continuous extension by zero
        assert_eq!(p_laplacian_at(&e, &sq, 3.0, &origin).unwrap(), 0.0);
        // p = 2: the sub-Laplacian
        assert_eq!(p_laplacian_at(&e, &sq, 2.0, &origin).unwrap(), 2.0);
        // p < 2: singular
        assert!(matches!(
            p_laplacian_at(&e, &sq, 1.5, &origin),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn star_operator_on_vanishing_second_order_fields() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = Polynomial::random(3, 4, &mut rng);
        assert_eq!(
            star_two_hessian(&h, &u).unwrap(),
            modified_two_hessian(&h, &u, &rat(3, 4)).unwrap()
        );
        let e = FieldSystem::euclidean(2).unwrap();
        let v = Polynomial::random(2, 4, &mut rng);
        assert_eq!(
            star_two_hessian(&e, &v).unwrap(),
            modified_two_hessian(&e, &v, &rat_int(0)).unwrap()
        );
    }

    #[test]
    fn star_operator_on_engel_coordinate() {
        // u = x4: X1 u = 0, X2 u = x1^2/2, Y2 u = 1
        // base: sym Hessian of x4 ... plus correction (1/2)(X2u)(Y2u)
        let g = FieldSystem::engel().unwrap();
        let u = Polynomial::var(4, 4).unwrap();
        let star = star_two_hessian(&g, &u).unwrap();
        let base = modified_two_hessian(&g, &u, &rat(3, 4)).unwrap();
        let x2u = g.field(2).apply(&u).unwrap();
        let y2 = g.second_order_fields().unwrap()[1].clone();
        let y2u = y2.apply(&u).unwrap();
        let expect = base.add(&x2u.mul(&y2u).unwrap().scale(&rat(1, 2))).unwrap();
        assert_eq!(star, expect);
        assert!(!x2u.is_zero());
    }

    #[test]
    fn k_convexity_scan() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let samples: Vec<Vec<f64>> = (0..20)
            .map(|i| {
                let t = i as f64 / 19.0 * 2.0 - 1.0;
                vec![t, -t * 0.5, t * t]
            })
            .collect();
        let convex = horizontal_square(3, 2);
        let rep = k_convexity(&h, &convex, 2, &samples, 1e-12).unwrap();
        assert!(rep.holds);
        // center coordinate: both S_j identically zero
        let x3 = Polynomial::var(3, 3).unwrap();
        let rep = k_convexity(&h, &x3, 2, &samples, 1e-12).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.worst_value, 0.0);
        // euclidean concave square fails at k = 1 with S_1 = -2
        let e = FieldSystem::euclidean(2).unwrap();
        let concave = horizontal_square(2, 2).scale(&rat_int(-1));
        let samples2: Vec<Vec<f64>> = vec![vec![0.1, 0.2], vec![0.5, -0.5]];
        let rep = k_convexity(&e, &concave, 1, &samples2, 1e-12).unwrap();
        assert!(!rep.holds);
        assert!((rep.worst_value + 2.0).abs() < 1e-12);
        assert_eq!(rep.worst_j, 1);
    }

    #[test]
    fn degenerate_ellipticity_for_two_convex_samples() {
        // (trace s) I - s is PSD whenever u is 2-convex at the point; scan a
        // family of 2-convex quadratics on heisenberg(1)
        let h = FieldSystem::heisenberg(1).unwrap();
        let base = horizontal_square(3, 2);
        let tilt = Polynomial::var(3, 3).unwrap().pow(2).scale(&rat(1, 2));
        let u = base.add(&tilt).unwrap();
        let pair = hessian_pair(&h, &u).unwrap();
        for x in [[0.0, 0.0, 0.0], [0.4, -0.3, 0.2], [1.0, 1.0, -1.0]] {
            let sym = eval_matrix(&pair.sym, &x).unwrap();
            let ell = ellipticity_matrix(&sym).unwrap();
            assert!(psd_by_principal_minors(&ell, 1e-9).unwrap());
        }
    }

    #[test]
    fn empty_and_invalid_inputs() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let u = Polynomial::var(3, 3).unwrap();
        assert!(k_convexity(&h, &u, 2, &[], 1e-9).is_err());
        assert!(k_convexity(&h, &u, 3, &[vec![0.0; 3]], 1e-9).is_err());
        let bad = Polynomial::var(2, 1).unwrap();
        assert!(hessian_pair(&h, &bad).is_err());
        let nonsquare = vec![vec![1.0, 2.0], vec![3.0]];
        assert!(two_hessian_linearization(&nonsquare).is_err());
        let mat = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(elementary_symmetric(&mat, 3, &[]).is_err());
    }
}
