//! Vector-field systems `X_i = Σ_j b^{ij} D_j` with polynomial coefficients,
//! their commutator algebra, and the structural condition checks: exact
//! anti-self-adjointness (divergence-free coefficient rows), the Hormander
//! spanning condition at sample points, vanishing second commutators, and
//! the weakened span condition for the second-order fields `Y_j`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::sympoly::{Polynomial, Rat};

/// First-order operator `X = Σ_j b^j D_j` on `R^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    /// Build from coefficient polynomials `(b^1, ..., b^n)`; all must share
    /// the same dimension `n = components.len()`.
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        for c in &components {
            if c.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.dim(),
                });
            }
        }
        Ok(VectorField { components })
    }

    /// The zero field on `R^n`.
    pub fn zero(n: usize) -> Self {
        VectorField {
            components: vec![Polynomial::zero(n); n],
        }
    }

    /// The constant coordinate field `D_j`, 1-based.
    pub fn coordinate(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, max: n });
        }
        let mut comps = vec![Polynomial::zero(n); n];
        comps[j - 1] = Polynomial::constant(n, Rat::from_integer(1.into()));
        Ok(VectorField { components: comps })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &Polynomial {
        &self.components[j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Apply to a scalar: `X f = Σ_j b^j ∂_j f`, exactly.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let n = self.dim();
        if f.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: f.dim(),
            });
        }
        let mut out = Polynomial::zero(n);
        for (j, b) in self.components.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            out = out.add(&b.mul(&f.diff(j + 1)?)?)?;
        }
        Ok(out)
    }

    /// Lie bracket `[X, Y] = XY - YX` as a first-order field; second-order
    /// terms cancel identically, so the coefficients are
    /// `Σ_j (X(b^Y_j) - Y(b^X_j)) D_j`, computed exactly.
    pub fn commutator(&self, other: &VectorField) -> Result<VectorField> {
        let n = self.dim();
        if other.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: other.dim(),
            });
        }
        let mut comps = Vec::with_capacity(n);
        for j in 0..n {
            let a = self.apply(&other.components[j])?;
            let b = other.apply(&self.components[j])?;
            comps.push(a.sub(&b)?);
        }
        Ok(VectorField { components: comps })
    }

    /// Coordinate divergence `Σ_j ∂_j b^j` of the coefficient row; the field
    /// is anti-self-adjoint iff this is the exact zero polynomial.
    pub fn divergence(&self) -> Polynomial {
        let n = self.dim();
        let mut out = Polynomial::zero(n);
        for (j, b) in self.components.iter().enumerate() {
            out = out.add(&b.diff(j + 1).unwrap()).unwrap();
        }
        out
    }

    /// Coefficient row evaluated at a point.
    pub fn eval_at(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.components.iter().map(|c| c.eval_f64(x)).collect()
    }

    pub fn scale(&self, k: &Rat) -> VectorField {
        VectorField {
            components: self.components.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        let n = self.dim();
        if other.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: other.dim(),
            });
        }
        let comps: Result<Vec<_>> = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(VectorField { components: comps? })
    }
}

/// A system `X = (X_1, ..., X_m)` of vector fields on `R^n`.
#[derive(Clone, Debug)]
pub struct FieldSystem {
    name: String,
    n: usize,
    fields: Vec<VectorField>,
}

impl FieldSystem {
    pub fn new(name: impl Into<String>, fields: Vec<VectorField>) -> Result<Self> {
        if fields.is_empty() {
            return Err(Error::RejectedInput("field system needs m >= 1".into()));
        }
        let n = fields[0].dim();
        if n == 0 {
            return Err(Error::RejectedInput(
                "ambient dimension must be >= 1".into(),
            ));
        }
        for f in &fields {
            if f.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: f.dim(),
                });
            }
        }
        Ok(FieldSystem {
            name: name.into(),
            n,
            fields,
        })
    }

    /// `n` coordinate fields on `R^n`.
    pub fn euclidean(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::RejectedInput("euclidean(n) needs n >= 1".into()));
        }
        let fields: Result<Vec<_>> = (1..=n).map(|j| VectorField::coordinate(n, j)).collect();
        FieldSystem::new(format!("euclidean{n}"), fields?)
    }

    /// Heisenberg-type system: `2n` fields on `R^{2n+1}` with
    /// `X_i = D_i - x_{n+i}/2 D_{2n+1}` and `X_{n+i} = D_{n+i} + x_i/2 D_{2n+1}`.
    pub fn heisenberg(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::RejectedInput("heisenberg(n) needs n >= 1".into()));
        }
        let dim = 2 * n + 1;
        let half = Rat::new(1.into(), 2.into());
        let mut fields = Vec::with_capacity(2 * n);
        for i in 1..=n {
            let mut comps = vec![Polynomial::zero(dim); dim];
            comps[i - 1] = Polynomial::constant(dim, Rat::from_integer(1.into()));
            comps[dim - 1] = Polynomial::var(dim, n + i)?.scale(&-half.clone());
            fields.push(VectorField::new(comps)?);
        }
        for i in 1..=n {
            let mut comps = vec![Polynomial::zero(dim); dim];
            comps[n + i - 1] = Polynomial::constant(dim, Rat::from_integer(1.into()));
            comps[dim - 1] = Polynomial::var(dim, i)?.scale(&half);
            fields.push(VectorField::new(comps)?);
        }
        FieldSystem::new(format!("heisenberg{n}"), fields)
    }

    /// Engel-type system: 2 fields on `R^4`,
    /// `X_1 = D_1`, `X_2 = D_2 + x_1 D_3 + x_1^2/2 D_4`.
    ///
    /// Second commutators do not all vanish here ([X_1,[X_1,X_2]] = D_4),
    /// which makes it the standard counterexample for that condition.
    pub fn engel() -> Result<Self> {
        let dim = 4;
        let x1 = FieldSystem::build_engel_x2(dim)?;
        let f1 = VectorField::coordinate(dim, 1)?;
        FieldSystem::new("engel", vec![f1, x1])
    }

    fn build_engel_x2(dim: usize) -> Result<VectorField> {
        let mut comps = vec![Polynomial::zero(dim); dim];
        comps[1] = Polynomial::constant(dim, Rat::from_integer(1.into()));
        comps[2] = Polynomial::var(dim, 1)?;
        comps[3] = Polynomial::var(dim, 1)?
            .pow(2)
            .scale(&Rat::new(1.into(), 2.into()));
        VectorField::new(comps)
    }

    /// Look up a builtin by name: `euclideanN`, `heisenbergN` or `engel`.
    pub fn builtin(name: &str) -> Result<Self> {
        let trimmed = name.trim().to_ascii_lowercase();
        if trimmed == "engel" {
            return FieldSystem::engel();
        }
        for (prefix, ctor) in [
            (
                "euclidean",
                FieldSystem::euclidean as fn(usize) -> Result<Self>,
            ),
            (
                "heisenberg",
                FieldSystem::heisenberg as fn(usize) -> Result<Self>,
            ),
        ] {
            if let Some(rest) = trimmed.strip_prefix(prefix) {
                let rest = rest.trim_matches(|c| c == '(' || c == ')');
                if let Ok(k) = rest.parse::<usize>() {
                    return ctor(k);
                }
            }
        }
        Err(Error::UnknownSystem(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of fields `m`.
    pub fn m(&self) -> usize {
        self.fields.len()
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    /// The i-th field, 1-based.
    pub fn field(&self, i: usize) -> &VectorField {
        &self.fields[i - 1]
    }

    /// Second-order fields `Y_j = Σ_i [X_i, [X_i, X_j]]`, computed exactly.
    pub fn second_order_fields(&self) -> Result<Vec<VectorField>> {
        let m = self.m();
        let mut out = Vec::with_capacity(m);
        for j in 1..=m {
            let mut y = VectorField::zero(self.n);
            for i in 1..=m {
                let inner = self.field(i).commutator(self.field(j))?;
                let outer = self.field(i).commutator(&inner)?;
                y = y.add(&outer)?;
            }
            out.push(y);
        }
        Ok(out)
    }

    /// The field `Z = Σ_j [X_j, Y_j]`; its exact vanishing is what makes the
    /// starred 2-Hessian monotone without the vanishing-commutator condition.
    pub fn z_field(&self) -> Result<VectorField> {
        let ys = self.second_order_fields()?;
        let mut z = VectorField::zero(self.n);
        for (j, y) in ys.iter().enumerate() {
            z = z.add(&self.field(j + 1).commutator(y)?)?;
        }
        Ok(z)
    }

    /// Anti-self-adjointness per field: `X* = -X` holds for a first-order
    /// operator exactly when its coefficient row is divergence free.
    pub fn anti_self_adjoint(&self) -> Vec<bool> {
        self.fields
            .iter()
            .map(|f| f.divergence().is_zero())
            .collect()
    }

    /// All second commutators `[X_k, [X_i, X_j]]`, `i < j`, that are not the
    /// zero field, as 1-based `(k, i, j)` triples.
    pub fn nonvanishing_second_commutators(&self) -> Result<Vec<(usize, usize, usize)>> {
        let m = self.m();
        let mut bad = Vec::new();
        for i in 1..=m {
            for j in (i + 1)..=m {
                let first = self.field(i).commutator(self.field(j))?;
                for k in 1..=m {
                    if !self.field(k).commutator(&first)?.is_zero() {
                        bad.push((k, i, j));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// Full structural condition report.
    ///
    /// Symbolic checks (anti-self-adjointness, second commutators, `Z = 0`)
    /// are exact; the Hormander rank test and the weakened span test are
    /// pointwise at `samples` with tolerance `1e-9` on singular values.
    pub fn check_conditions(
        &self,
        samples: &[Vec<f64>],
        max_step: usize,
    ) -> Result<ConditionReport> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        for s in samples {
            if s.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: s.len(),
                });
            }
        }

        let anti_self_adjoint = self.anti_self_adjoint();

        let triples = self.nonvanishing_second_commutators()?;
        // the pairwise reading checks only [X_i,[X_i,X_j]] and [X_j,[X_i,X_j]]
        let step2_vanishing = !triples.iter().any(|&(k, i, j)| k == i || k == j);
        let all_second_commutators_vanish = triples.is_empty();

        let hormander = self.hormander_report(samples, max_step)?;
        let weakened_span = self.weakened_span(samples)?;
        let z_vanishes = self.z_field()?.is_zero();

        Ok(ConditionReport {
            system: self.name.clone(),
            m: self.m(),
            n: self.n,
            anti_self_adjoint,
            hormander,
            step2_vanishing,
            all_second_commutators_vanish,
            nonvanishing_triples: triples,
            weakened_span,
            z_vanishes,
        })
    }

    fn hormander_report(&self, samples: &[Vec<f64>], max_step: usize) -> Result<HormanderReport> {
        // bracket ladder: level 1 = fields, level s+1 = [X_i, W] for W at level s
        let mut levels: Vec<Vec<VectorField>> = vec![self.fields.clone()];
        let mut report = HormanderReport {
            holds: false,
            step: 0,
            sample_points: samples.to_vec(),
        };
        for step in 1..=max_step {
            if step > 1 {
                let prev = levels.last().unwrap();
                let mut next = Vec::new();
                for base in &self.fields {
                    for w in prev {
                        let br = base.commutator(w)?;
                        if !br.is_zero() {
                            next.push(br);
                        }
                    }
                }
                levels.push(next);
            }
            let pool: Vec<&VectorField> = levels.iter().flatten().collect();
            let spans_everywhere = samples.iter().all(|x| {
                let cols: Vec<Vec<f64>> = pool.iter().filter_map(|f| f.eval_at(x).ok()).collect();
                // rows = coordinate directions, columns = bracket fields
                let mut mat = vec![vec![0.0; cols.len()]; self.n];
                for (c, col) in cols.iter().enumerate() {
                    for r in 0..self.n {
                        mat[r][c] = col[r];
                    }
                }
                linalg::rank_with_tolerance(&mat, 1e-9) == self.n
            });
            if spans_everywhere {
                report.holds = true;
                report.step = step;
                return Ok(report);
            }
        }
        report.step = max_step;
        Ok(report)
    }

    fn weakened_span(&self, samples: &[Vec<f64>]) -> Result<Vec<bool>> {
        let m = self.m();
        let ys = self.second_order_fields()?;
        // span generators: all X_i plus all first brackets [X_i, X_j], i < j
        let mut gens: Vec<VectorField> = self.fields.clone();
        for i in 1..=m {
            for j in (i + 1)..=m {
                let br = self.field(i).commutator(self.field(j))?;
                if !br.is_zero() {
                    gens.push(br);
                }
            }
        }
        let mut out = Vec::with_capacity(m);
        for y in &ys {
            if y.is_zero() {
                out.push(true);
                continue;
            }
            let mut ok = true;
            for x in samples {
                let target = y.eval_at(x)?;
                let cols: Vec<Vec<f64>> =
                    gens.iter().map(|g| g.eval_at(x)).collect::<Result<_>>()?;
                let mut mat = vec![vec![0.0; cols.len()]; self.n];
                for (c, col) in cols.iter().enumerate() {
                    for r in 0..self.n {
                        mat[r][c] = col[r];
                    }
                }
                let norm: f64 = target.iter().map(|v| v * v).sum::<f64>().sqrt();
                let res = linalg::least_squares_residual(&mat, &target);
                if res > 1e-7 * (1.0 + norm) {
                    ok = false;
                    break;
                }
            }
            out.push(ok);
        }
        Ok(out)
    }

    /// Text format: header `n m name`, then `m` lines each holding `n`
    /// canonical polynomial serializations separated by `;`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.m(), self.name);
        for f in &self.fields {
            let row: Vec<String> = f.components().iter().map(|p| p.to_string()).collect();
            out.push_str(&row.join(" ; "));
            out.push('\n');
        }
        out
    }

    /// Parse the `to_text` format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or(Error::Parse {
                line: hline + 1,
                msg: "header must start with the ambient dimension n".into(),
            })?;
        let m: usize = parts
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or(Error::Parse {
                line: hline + 1,
                msg: "header must carry the field count m".into(),
            })?;
        let name = parts.collect::<Vec<_>>().join(" ");
        let name = if name.is_empty() {
            "custom".to_string()
        } else {
            name
        };
        let mut fields = Vec::with_capacity(m);
        for _ in 0..m {
            let (lno, line) = lines.next().ok_or(Error::Parse {
                line: hline + 2,
                msg: format!("expected {m} field rows"),
            })?;
            let cells: Vec<&str> = line.split(';').collect();
            if cells.len() != n {
                return Err(Error::Parse {
                    line: lno + 1,
                    msg: format!(
                        "expected {n} polynomials separated by `;`, got {}",
                        cells.len()
                    ),
                });
            }
            let comps: Result<Vec<Polynomial>> =
                cells.iter().map(|c| Polynomial::parse(n, c)).collect();
            fields.push(VectorField::new(comps?)?);
        }
        FieldSystem::new(name, fields)
    }
}

/// Hormander spanning check at sample points.
#[derive(Clone, Debug, Serialize)]
pub struct HormanderReport {
    pub holds: bool,
    /// Minimal bracket depth at which the span is full at every sample,
    /// or `max_step` when it never is.
    pub step: usize,
    pub sample_points: Vec<Vec<f64>>,
}

/// Outcome of the structural hypothesis checks for a field system.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub system: String,
    pub m: usize,
    pub n: usize,
    /// Per field: coefficient row divergence is the exact zero polynomial.
    pub anti_self_adjoint: Vec<bool>,
    pub hormander: HormanderReport,
    /// `[X_i,[X_i,X_j]] = [X_j,[X_i,X_j]] = 0` for all pairs, exactly.
    pub step2_vanishing: bool,
    /// The stronger reading: every `[X_k,[X_i,X_j]]` vanishes.
    pub all_second_commutators_vanish: bool,
    /// 1-based `(k, i, j)` with `[X_k,[X_i,X_j]]` not the zero field.
    pub nonvanishing_triples: Vec<(usize, usize, usize)>,
    /// Per j: `Y_j` lies in the pointwise span of the fields and their
    /// first brackets at every sample.
    pub weakened_span: Vec<bool>,
    /// `Z = Σ_j [X_j, Y_j]` is the exact zero field.
    pub z_vanishes: bool,
}

impl ConditionReport {
    pub fn all_anti_self_adjoint(&self) -> bool {
        self.anti_self_adjoint.iter().all(|&b| b)
    }

    pub fn all_weakened_span(&self) -> bool {
        self.weakened_span.iter().all(|&b| b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::{rat, rat_int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample_points(n: usize) -> Vec<Vec<f64>> {
        vec![
            vec![0.0; n],
            (1..=n).map(|i| 0.3 * i as f64 - 0.5).collect(),
            (1..=n).map(|i| -0.2 * i as f64 + 0.7).collect(),
        ]
    }

    #[test]
    fn heisenberg_bracket_is_center_direction() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let bracket = h.field(1).commutator(h.field(2)).unwrap();
        let d3 = VectorField::coordinate(3, 3).unwrap();
        assert_eq!(bracket, d3);
    }

    #[test]
    fn heisenberg_field_applications() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let x1 = Polynomial::var(3, 1).unwrap();
        let x3 = Polynomial::var(3, 3).unwrap();
        // X1 x3 = -x2/2
        let expect = Polynomial::var(3, 2).unwrap().scale(&rat(-1, 2));
        assert_eq!(h.field(1).apply(&x3).unwrap(), expect);
        // X1 x1 = 1
        assert_eq!(
            h.field(1).apply(&x1).unwrap(),
            Polynomial::constant(3, rat_int(1))
        );
    }

    #[test]
    fn euclidean_fields_commute() {
        let e = FieldSystem::euclidean(3).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                assert!(e.field(i).commutator(e.field(j)).unwrap().is_zero());
            }
            // D_i x_j = delta_ij
            for j in 1..=3 {
                let xj = Polynomial::var(3, j).unwrap();
                let v = e.field(i).apply(&xj).unwrap();
                if i == j {
                    assert_eq!(v, Polynomial::constant(3, rat_int(1)));
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn engel_iterated_bracket_reaches_fourth_direction() {
        let g = FieldSystem::engel().unwrap();
        let first = g.field(1).commutator(g.field(2)).unwrap();
        let second = g.field(1).commutator(&first).unwrap();
        assert_eq!(second, VectorField::coordinate(4, 4).unwrap());
    }

    #[test]
    fn second_order_fields_on_builtins() {
        let h = FieldSystem::heisenberg(1).unwrap();
        for y in h.second_order_fields().unwrap() {
            assert!(y.is_zero());
        }
        let e = FieldSystem::euclidean(3).unwrap();
        for y in e.second_order_fields().unwrap() {
            assert!(y.is_zero());
        }
        let g = FieldSystem::engel().unwrap();
        let ys = g.second_order_fields().unwrap();
        assert!(ys[0].is_zero());
        assert_eq!(ys[1], VectorField::coordinate(4, 4).unwrap());
    }

    #[test]
    fn condition_report_heisenberg() {
        let h = FieldSystem::heisenberg(1).unwrap();
        let rep = h.check_conditions(&sample_points(3), 3).unwrap();
        assert!(rep.all_anti_self_adjoint());
        assert!(rep.hormander.holds);
        assert_eq!(rep.hormander.step, 2);
        assert!(rep.step2_vanishing);
        assert!(rep.all_second_commutators_vanish);
        assert!(rep.all_weakened_span());
        assert!(rep.z_vanishes);
    }

    #[test]
    fn condition_report_euclidean() {
        let e = FieldSystem::euclidean(3).unwrap();
        let rep = e.check_conditions(&sample_points(3), 3).unwrap();
        assert!(rep.all_anti_self_adjoint());
        assert!(rep.hormander.holds);
        assert_eq!(rep.hormander.step, 1);
        assert!(rep.step2_vanishing);
    }

    #[test]
    fn condition_report_engel() {
        let g = FieldSystem::engel().unwrap();
        let rep = g.check_conditions(&sample_points(4), 4).unwrap();
        assert!(rep.all_anti_self_adjoint());
        assert!(rep.hormander.holds);
        assert_eq!(rep.hormander.step, 3);
        assert!(!rep.step2_vanishing);
        assert!(rep.nonvanishing_triples.contains(&(1, 1, 2)));
        assert!(rep.z_vanishes);
        // Y_1 = 0 is trivially in any span; Y_2 = D_4 is not reachable from
        // the fields and first brackets (at x1 = 0 they span only e1,e2,e3).
        assert_eq!(rep.weakened_span, vec![true, false]);
    }

    #[test]
    fn empty_samples_rejected() {
        let h = FieldSystem::heisenberg(1).unwrap();
        assert!(matches!(
            h.check_conditions(&[], 3),
            Err(Error::EmptySamples)
        ));
    }

    #[test]
    fn commutator_antisymmetry_random_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let a = VectorField::new((0..3).map(|_| Polynomial::random(3, 2, &mut rng)).collect())
                .unwrap();
            let b = VectorField::new((0..3).map(|_| Polynomial::random(3, 2, &mut rng)).collect())
                .unwrap();
            let ab = a.commutator(&b).unwrap();
            let ba = b.commutator(&a).unwrap();
            assert_eq!(ab, ba.scale(&rat_int(-1)));
        }
    }

    #[test]
    fn jacobi_identity_random_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rand_field = |rng: &mut ChaCha8Rng| {
            VectorField::new((0..3).map(|_| Polynomial::random(3, 2, rng)).collect()).unwrap()
        };
        for _ in 0..3 {
            let x = rand_field(&mut rng);
            let y = rand_field(&mut rng);
            let z = rand_field(&mut rng);
            let t1 = x.commutator(&y.commutator(&z).unwrap()).unwrap();
            let t2 = y.commutator(&z.commutator(&x).unwrap()).unwrap();
            let t3 = z.commutator(&x.commutator(&y).unwrap()).unwrap();
            let total = t1.add(&t2).unwrap().add(&t3).unwrap();
            assert!(total.is_zero());
        }
    }

    #[test]
    fn text_format_round_trips() {
        for sys in [
            FieldSystem::heisenberg(1).unwrap(),
            FieldSystem::euclidean(2).unwrap(),
            FieldSystem::engel().unwrap(),
        ] {
            let text = sys.to_text();
            let back = FieldSystem::from_text(&text).unwrap();
            assert_eq!(back.name(), sys.name());
            assert_eq!(back.m(), sys.m());
            for i in 1..=sys.m() {
                assert_eq!(back.field(i), sys.field(i));
            }
        }
    }

    #[test]
    fn builtin_lookup() {
        assert!(FieldSystem::builtin("heisenberg1").is_ok());
        assert!(FieldSystem::builtin("heisenberg(2)").is_ok());
        assert!(FieldSystem::builtin("euclidean3").is_ok());
        assert!(FieldSystem::builtin("engel").is_ok());
        assert!(FieldSystem::builtin("cartan").is_err());
    }
}
