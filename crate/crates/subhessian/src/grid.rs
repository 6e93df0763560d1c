//! Uniform box lattices: sampling, alignment-aware arithmetic, central
//! differences, mollification and the text file format.
//!
//! Grid functions are node-centered (endpoints included) on a common global
//! lattice with spacing `h`; binary operations act on the intersection of
//! domains and insist on lattice alignment, which keeps stencil compositions
//! honest without interpolation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sympoly::{PolyEval, Polynomial};

/// Hard cap on lattice sizes; grids beyond this are a configuration mistake.
pub const MAX_NODES: usize = 1 << 26;

/// Axis-box or ball region.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainShape {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
}

/// Region with a boundary shell width used for inner-domain offsets.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    pub shape: DomainShape,
    pub boundary_shell_width: f64,
}

impl Domain {
    pub fn new_box(lo: Vec<f64>, hi: Vec<f64>, shell: f64) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::RejectedInput("box needs matching lo/hi".into()));
        }
        let mut inradius = f64::INFINITY;
        for (a, b) in lo.iter().zip(&hi) {
            if b <= a {
                return Err(Error::RejectedInput("box must have positive volume".into()));
            }
            inradius = inradius.min((b - a) / 2.0);
        }
        if shell < 0.0 || shell >= inradius {
            return Err(Error::RejectedInput(
                "shell width must be non-negative and below the inradius".into(),
            ));
        }
        Ok(Domain {
            shape: DomainShape::Box { lo, hi },
            boundary_shell_width: shell,
        })
    }

    pub fn new_ball(center: Vec<f64>, radius: f64, shell: f64) -> Result<Self> {
        if center.is_empty() || radius <= 0.0 {
            return Err(Error::RejectedInput("ball needs positive radius".into()));
        }
        if shell < 0.0 || shell >= radius {
            return Err(Error::RejectedInput(
                "shell width must be non-negative and below the radius".into(),
            ));
        }
        Ok(Domain {
            shape: DomainShape::Ball { center, radius },
            boundary_shell_width: shell,
        })
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            DomainShape::Box { lo, .. } => lo.len(),
            DomainShape::Ball { center, .. } => center.len(),
        }
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.shape {
            DomainShape::Box { lo, hi } => (lo.clone(), hi.clone()),
            DomainShape::Ball { center, radius } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match &self.shape {
            DomainShape::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(v, (a, b))| *v >= *a && *v <= *b),
            DomainShape::Ball { center, radius } => {
                let d2: f64 = x.iter().zip(center).map(|(v, c)| (v - c) * (v - c)).sum();
                d2 <= radius * radius
            }
        }
    }

    /// Distance from `x` to the boundary, positive inside.
    pub fn boundary_distance(&self, x: &[f64]) -> f64 {
        match &self.shape {
            DomainShape::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(v, (a, b))| (v - a).min(b - v))
                .fold(f64::INFINITY, f64::min),
            DomainShape::Ball { center, radius } => {
                let d: f64 = x
                    .iter()
                    .zip(center)
                    .map(|(v, c)| (v - c) * (v - c))
                    .sum::<f64>()
                    .sqrt();
                radius - d
            }
        }
    }

    /// The inner domain obtained by offsetting the boundary inward.
    pub fn shrink(&self, offset: f64) -> Result<Domain> {
        match &self.shape {
            DomainShape::Box { lo, hi } => Domain::new_box(
                lo.iter().map(|a| a + offset).collect(),
                hi.iter().map(|b| b - offset).collect(),
                0.0,
            ),
            DomainShape::Ball { center, radius } => {
                Domain::new_ball(center.clone(), radius - offset, 0.0)
            }
        }
    }

    /// Points sampled on the topological boundary (sphere or box faces),
    /// deterministic quasi-random spread.
    pub fn boundary_points(&self, count: usize) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut out = Vec::with_capacity(count);
        let hash = |k: usize, a: usize| -> f64 {
            ((k + 1) * (a + 2) * 2654435761usize % 10007) as f64 / 10007.0
        };
        match &self.shape {
            DomainShape::Ball { center, radius } => {
                for k in 0..count {
                    let mut dir: Vec<f64> = (0..n).map(|a| 2.0 * hash(k, a) - 1.0).collect();
                    let norm: f64 = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if norm < 1e-9 {
                        dir = vec![1.0; n];
                    }
                    let norm: f64 = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
                    out.push(
                        dir.iter()
                            .zip(center)
                            .map(|(d, c)| c + radius * d / norm)
                            .collect(),
                    );
                }
            }
            DomainShape::Box { lo, hi } => {
                for k in 0..count {
                    let face_axis = k % n;
                    let face_side = (k / n) % 2;
                    let mut pt: Vec<f64> = (0..n)
                        .map(|a| lo[a] + hash(k, a) * (hi[a] - lo[a]))
                        .collect();
                    pt[face_axis] = if face_side == 0 {
                        lo[face_axis]
                    } else {
                        hi[face_axis]
                    };
                    out.push(pt);
                }
            }
        }
        out
    }
}

/// Where a grid came from; carried through the file format.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    SampledFromPolynomial,
    Mollified { eps: f64 },
    Loaded,
}

impl Provenance {
    fn to_header(&self) -> String {
        match self {
            Provenance::SampledFromPolynomial => "sampled-from-polynomial".into(),
            Provenance::Mollified { eps } => format!("mollified {eps:.17e}"),
            Provenance::Loaded => "loaded".into(),
        }
    }

    fn parse(line: &str) -> Result<Self> {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("sampled-from-polynomial") => Ok(Provenance::SampledFromPolynomial),
            Some("loaded") => Ok(Provenance::Loaded),
            Some("mollified") => {
                let eps: f64 = parts
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or(Error::Parse {
                        line: 0,
                        msg: "mollified provenance needs eps".into(),
                    })?;
                Ok(Provenance::Mollified { eps })
            }
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown provenance {other:?}"),
            }),
        }
    }
}

/// Samples of a scalar on a uniform node-centered box lattice.
#[derive(Clone, Debug)]
pub struct GridFunction {
    lo: Vec<f64>,
    h: f64,
    counts: Vec<usize>,
    values: Vec<f64>,
    provenance: Provenance,
}

impl GridFunction {
    /// Sample a polynomial on the box form of `domain` with spacing `h`;
    /// node counts snap `(hi-lo)/h` to the nearest integer.
    pub fn sample_polynomial(u: &Polynomial, domain: &Domain, h: f64) -> Result<GridFunction> {
        let (lo, hi) = match &domain.shape {
            DomainShape::Box { lo, hi } => (lo.clone(), hi.clone()),
            DomainShape::Ball { .. } => {
                return Err(Error::RejectedInput(
                    "grid sampling needs the box form of the domain".into(),
                ))
            }
        };
        if u.dim() != lo.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: u.dim(),
            });
        }
        let ev = u.evaluator();
        GridFunction::sample_fn(&|x| ev.eval(x), lo, hi, h)
    }

    /// Sample an arbitrary function (used for non-smooth targets).
    pub fn sample_fn(
        f: &dyn Fn(&[f64]) -> f64,
        lo: Vec<f64>,
        hi: Vec<f64>,
        h: f64,
    ) -> Result<GridFunction> {
        if h <= 0.0 {
            return Err(Error::RejectedInput("spacing must be positive".into()));
        }
        let n = lo.len();
        let counts: Vec<usize> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| ((b - a) / h).round() as usize + 1)
            .collect();
        let total: usize = counts.iter().product();
        if total > MAX_NODES {
            return Err(Error::BudgetExceeded {
                nodes: total,
                budget: MAX_NODES,
            });
        }
        let mut gf = GridFunction {
            lo,
            h,
            counts,
            values: vec![0.0; total],
            provenance: Provenance::SampledFromPolynomial,
        };
        let mut point = vec![0.0; n];
        for lin in 0..total {
            gf.point_of_linear(lin, &mut point);
            gf.values[lin] = f(&point);
        }
        Ok(gf)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> Vec<f64> {
        self.lo
            .iter()
            .zip(&self.counts)
            .map(|(a, c)| a + (c - 1) as f64 * self.h)
            .collect()
    }

    /// The box the grid lives on, as a Domain.
    pub fn domain(&self, shell: f64) -> Result<Domain> {
        Domain::new_box(self.lo.clone(), self.hi(), shell)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn strides(&self) -> Vec<usize> {
        let n = self.dim();
        let mut s = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.counts[i + 1];
        }
        s
    }

    fn point_of_linear(&self, mut lin: usize, out: &mut [f64]) {
        let strides = self.strides();
        for i in 0..self.dim() {
            let idx = lin / strides[i];
            lin %= strides[i];
            out[i] = self.lo[i] + idx as f64 * self.h;
        }
    }

    /// Visit every node with its world coordinates, row-major.
    pub fn for_each_node(&self, f: &mut dyn FnMut(&[f64], f64)) {
        let mut point = vec![0.0; self.dim()];
        for lin in 0..self.values.len() {
            self.point_of_linear(lin, &mut point);
            f(&point, self.values[lin]);
        }
    }

    /// Central difference along `axis` (0-based); the domain shrinks by one
    /// cell at each end of that axis.
    pub fn central_difference(&self, axis: usize) -> Result<GridFunction> {
        if self.counts[axis] < 3 {
            return Err(Error::MarginExhausted(format!(
                "axis {axis} has only {} nodes",
                self.counts[axis]
            )));
        }
        let mut counts = self.counts.clone();
        counts[axis] -= 2;
        let mut lo = self.lo.clone();
        lo[axis] += self.h;
        let total: usize = counts.iter().product();
        let mut out = GridFunction {
            lo,
            h: self.h,
            counts,
            values: vec![0.0; total],
            provenance: self.provenance.clone(),
        };
        let in_strides = self.strides();
        let out_strides = out.strides();
        let two_h = 2.0 * self.h;
        let n = self.dim();
        for lin in 0..total {
            let mut rem = lin;
            let mut base = 0;
            for i in 0..n {
                let idx = rem / out_strides[i];
                rem %= out_strides[i];
                let shift = if i == axis { idx + 1 } else { idx };
                base += shift * in_strides[i];
            }
            out.values[lin] = (self.values[base + in_strides[axis]]
                - self.values[base - in_strides[axis]])
                / two_h;
        }
        Ok(out)
    }

    fn aligned_offset(&self, other: &GridFunction) -> Result<Vec<i64>> {
        if (self.h - other.h).abs() > 1e-12 * self.h.max(other.h) {
            return Err(Error::RejectedInput("grids have different spacing".into()));
        }
        let mut off = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let shift = (other.lo[i] - self.lo[i]) / self.h;
            let rounded = shift.round();
            if (shift - rounded).abs() > 1e-6 {
                return Err(Error::RejectedInput(
                    "grids are not on a common lattice".into(),
                ));
            }
            off.push(rounded as i64);
        }
        Ok(off)
    }

    /// Linear combination `Σ w_k g_k` on the lattice intersection.
    pub fn combine(parts: &[(f64, &GridFunction)]) -> Result<GridFunction> {
        let first = parts
            .first()
            .ok_or_else(|| Error::RejectedInput("empty combination".into()))?
            .1;
        let n = first.dim();
        // intersection in index space of `first`
        let mut lo_idx = vec![i64::MIN; n];
        let mut hi_idx = vec![i64::MAX; n];
        for (_, g) in parts {
            let off = first.aligned_offset(g)?;
            for i in 0..n {
                lo_idx[i] = lo_idx[i].max(off[i]);
                hi_idx[i] = hi_idx[i].min(off[i] + g.counts[i] as i64 - 1);
            }
        }
        for i in 0..n {
            if hi_idx[i] < lo_idx[i] {
                return Err(Error::MarginExhausted("empty grid intersection".into()));
            }
        }
        let counts: Vec<usize> = (0..n)
            .map(|i| (hi_idx[i] - lo_idx[i] + 1) as usize)
            .collect();
        let lo: Vec<f64> = (0..n)
            .map(|i| first.lo[i] + lo_idx[i] as f64 * first.h)
            .collect();
        let total: usize = counts.iter().product();
        let mut out = GridFunction {
            lo,
            h: first.h,
            counts,
            values: vec![0.0; total],
            provenance: first.provenance.clone(),
        };
        let out_strides = out.strides();
        for (w, g) in parts {
            let off = g.aligned_offset(&out)?; // out.lo relative to g.lo
            let g_strides = g.strides();
            for lin in 0..total {
                let mut rem = lin;
                let mut src = 0usize;
                for i in 0..n {
                    let idx = rem / out_strides[i];
                    rem %= out_strides[i];
                    src += (idx as i64 + off[i]) as usize * g_strides[i];
                }
                out.values[lin] += w * g.values[src];
            }
        }
        Ok(out)
    }

    /// Pointwise product on the lattice intersection.
    pub fn product(&self, other: &GridFunction) -> Result<GridFunction> {
        let mut out = GridFunction::combine(&[(1.0, other), (0.0, self)])?;
        let off = self.aligned_offset(&out)?;
        let s_str = self.strides();
        let o_str = out.strides();
        let n = self.dim();
        let total = out.values.len();
        for lin in 0..total {
            let mut rem = lin;
            let mut src = 0usize;
            for i in 0..n {
                let idx = rem / o_str[i];
                rem %= o_str[i];
                src += (idx as i64 + off[i]) as usize * s_str[i];
            }
            out.values[lin] *= self.values[src];
        }
        Ok(out)
    }

    /// Multiply by a polynomial evaluated at each node.
    pub fn scaled_by_poly(&self, p: &PolyEval) -> GridFunction {
        let mut out = self.clone();
        let mut point = vec![0.0; self.dim()];
        for lin in 0..out.values.len() {
            out.point_of_linear(lin, &mut point);
            out.values[lin] *= p.eval(&point);
        }
        out
    }

    pub fn map(&self, f: &dyn Fn(f64) -> f64) -> GridFunction {
        let mut out = self.clone();
        for v in &mut out.values {
            *v = f(*v);
        }
        out
    }

    /// Map with access to the node coordinates.
    pub fn map_with_position(&self, f: &dyn Fn(&[f64], f64) -> f64) -> GridFunction {
        let mut out = self.clone();
        let mut point = vec![0.0; self.dim()];
        for lin in 0..out.values.len() {
            out.point_of_linear(lin, &mut point);
            out.values[lin] = f(&point, out.values[lin]);
        }
        out
    }

    /// Pointwise binary map on the lattice intersection.
    pub fn zip_map(
        &self,
        other: &GridFunction,
        f: &dyn Fn(f64, f64) -> f64,
    ) -> Result<GridFunction> {
        let a = GridFunction::combine(&[(1.0, self), (0.0, other)])?;
        let b = GridFunction::combine(&[(0.0, self), (1.0, other)])?;
        let mut out = a.clone();
        for (slot, (&x, &y)) in out
            .values
            .iter_mut()
            .zip(a.values.iter().zip(b.values.iter()))
        {
            *slot = f(x, y);
        }
        Ok(out)
    }

    /// Minimum over nodes inside `region` (whole grid when None).
    pub fn min_over(&self, region: Option<&Domain>) -> f64 {
        let mut best = f64::INFINITY;
        let mut point = vec![0.0; self.dim()];
        for lin in 0..self.values.len() {
            self.point_of_linear(lin, &mut point);
            if region.map(|r| r.contains(&point)).unwrap_or(true) {
                best = best.min(self.values[lin]);
            }
        }
        best
    }

    pub fn max_over(&self, region: Option<&Domain>) -> f64 {
        let mut best = f64::NEG_INFINITY;
        let mut point = vec![0.0; self.dim()];
        for lin in 0..self.values.len() {
            self.point_of_linear(lin, &mut point);
            if region.map(|r| r.contains(&point)).unwrap_or(true) {
                best = best.max(self.values[lin]);
            }
        }
        best
    }

    /// Lattice integral `Σ transform(f(x)) h^n` over nodes inside `region`.
    pub fn integral_over(&self, region: Option<&Domain>, transform: &dyn Fn(f64) -> f64) -> f64 {
        let weight = self.h.powi(self.dim() as i32);
        let mut acc = 0.0;
        let mut point = vec![0.0; self.dim()];
        for lin in 0..self.values.len() {
            self.point_of_linear(lin, &mut point);
            if region.map(|r| r.contains(&point)).unwrap_or(true) {
                acc += transform(self.values[lin]);
            }
        }
        acc * weight
    }

    /// Same integral on the stride-2 sublattice, for two-resolution error
    /// estimates.
    pub fn integral_over_coarse(
        &self,
        region: Option<&Domain>,
        transform: &dyn Fn(f64) -> f64,
    ) -> f64 {
        let n = self.dim();
        let weight = (2.0 * self.h).powi(n as i32);
        let strides = self.strides();
        let coarse_counts: Vec<usize> = self.counts.iter().map(|c| c.div_ceil(2)).collect();
        let mut coarse_strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            coarse_strides[i] = coarse_strides[i + 1] * coarse_counts[i + 1];
        }
        let total: usize = coarse_counts.iter().product();
        let mut acc = 0.0;
        let mut point = vec![0.0; n];
        for clin in 0..total {
            let mut rem = clin;
            let mut src = 0usize;
            for i in 0..n {
                let ci = rem / coarse_strides[i];
                rem %= coarse_strides[i];
                src += (2 * ci).min(self.counts[i] - 1) * strides[i];
            }
            self.point_of_linear(src, &mut point);
            if region.map(|r| r.contains(&point)).unwrap_or(true) {
                acc += transform(self.values[src]);
            }
        }
        acc * weight
    }

    /// Mollify with the radial kernel `(1 - |y/eps|^2)_+^4`, discretely
    /// normalized to unit mass; the domain shrinks by `eps` (rounded up to
    /// whole cells) on every side.
    ///
    /// Radii below the spacing have no lattice support at all and are
    /// rejected; between `h` and `2h` the kernel degenerates toward a
    /// nearest-neighbour average but stays a normalized non-negative
    /// smoother, which the mollification ladders rely on at their smallest
    /// rung.
    pub fn mollify(&self, eps: f64) -> Result<GridFunction> {
        if eps < self.h {
            return Err(Error::KernelTooNarrow { eps, h: self.h });
        }
        let n = self.dim();
        let radius_cells = (eps / self.h).ceil() as i64;
        for (i, &c) in self.counts.iter().enumerate() {
            if c as i64 <= 2 * radius_cells + 2 {
                return Err(Error::MarginExhausted(format!(
                    "axis {i}: {c} nodes cannot absorb a kernel radius of {radius_cells} cells"
                )));
            }
        }
        let strides = self.strides();
        let mut offsets: Vec<(i64, f64)> = Vec::new();
        let mut weight_sum = 0.0;
        let mut cursor = vec![-radius_cells; n];
        'outer: loop {
            let r2: f64 = cursor
                .iter()
                .map(|&o| (o as f64 * self.h) * (o as f64 * self.h))
                .sum();
            let q = 1.0 - r2 / (eps * eps);
            if q > 0.0 {
                let w = q * q * q * q;
                let lin: i64 = cursor
                    .iter()
                    .zip(&strides)
                    .map(|(&o, &s)| o * s as i64)
                    .sum();
                offsets.push((lin, w));
                weight_sum += w;
            }
            for i in (0..n).rev() {
                cursor[i] += 1;
                if cursor[i] <= radius_cells {
                    continue 'outer;
                }
                cursor[i] = -radius_cells;
            }
            break;
        }
        for (_, w) in &mut offsets {
            *w /= weight_sum;
        }

        let mut counts = self.counts.clone();
        let mut lo = self.lo.clone();
        for i in 0..n {
            counts[i] -= 2 * radius_cells as usize;
            lo[i] += radius_cells as f64 * self.h;
        }
        let total: usize = counts.iter().product();
        let mut out = GridFunction {
            lo,
            h: self.h,
            counts,
            values: vec![0.0; total],
            provenance: Provenance::Mollified { eps },
        };
        let out_strides = out.strides();
        for lin in 0..total {
            let mut rem = lin;
            let mut base = 0usize;
            for i in 0..n {
                let idx = rem / out_strides[i];
                rem %= out_strides[i];
                base += (idx + radius_cells as usize) * strides[i];
            }
            let mut acc = 0.0;
            for &(off, w) in &offsets {
                acc += w * self.values[(base as i64 + off) as usize];
            }
            out.values[lin] = acc;
        }
        Ok(out)
    }

    /// Text format: dimension, per-axis `lo hi count`, spacing, provenance,
    /// then row-major values one per line with 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let hi = self.hi();
        writeln!(s, "{}", self.dim()).unwrap();
        for i in 0..self.dim() {
            writeln!(s, "{:.17e} {:.17e} {}", self.lo[i], hi[i], self.counts[i]).unwrap();
        }
        writeln!(s, "{:.17e}", self.h).unwrap();
        writeln!(s, "{}", self.provenance.to_header()).unwrap();
        for v in &self.values {
            writeln!(s, "{v:.17e}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<GridFunction> {
        let mut lines = text.lines().enumerate();
        let mut next_line = |what: &str| -> Result<(usize, &str)> {
            lines
                .next()
                .map(|(i, l)| (i + 1, l))
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("unexpected end of file, wanted {what}"),
                })
        };
        let (lno, first) = next_line("dimension")?;
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: lno,
            msg: "bad dimension".into(),
        })?;
        let mut lo = Vec::with_capacity(n);
        let mut counts = Vec::with_capacity(n);
        for _ in 0..n {
            let (lno, l) = next_line("axis description")?;
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse {
                    line: lno,
                    msg: "axis line must be `lo hi count`".into(),
                });
            }
            lo.push(parts[0].parse().map_err(|_| Error::Parse {
                line: lno,
                msg: "bad lo".into(),
            })?);
            counts.push(parts[2].parse().map_err(|_| Error::Parse {
                line: lno,
                msg: "bad count".into(),
            })?);
        }
        let (lno, hline) = next_line("spacing")?;
        let h: f64 = hline.trim().parse().map_err(|_| Error::Parse {
            line: lno,
            msg: "bad spacing".into(),
        })?;
        let (_, pline) = next_line("provenance")?;
        let provenance = Provenance::parse(pline.trim())?;
        let total: usize = counts.iter().product();
        let mut values = Vec::with_capacity(total);
        for _ in 0..total {
            let (lno, vline) = next_line("value")?;
            values.push(vline.trim().parse().map_err(|_| Error::Parse {
                line: lno,
                msg: "bad value".into(),
            })?);
        }
        Ok(GridFunction {
            lo,
            h,
            counts,
            values,
            provenance,
        })
    }
}
