//! Sparse multivariate polynomials over the exact rationals.
//!
//! This is the universal symbolic scalar of the crate: vector-field
//! coefficients, test functions and every symbolically certified identity
//! live here. Arithmetic is exact — a residual reported as zero is the
//! empty term map, not a small float. Floats appear only through
//! [`Polynomial::eval_f64`] and [`PolyEval`].
//!
//! Terms are keyed by exponent multi-indices ordered graded-lexicographically,
//! which fixes a canonical text form for golden files.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the symbolic layer.
pub type Rat = BigRational;

/// Build a rational from an integer pair, normalizing the sign.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rat_int(num: i64) -> Rat {
    BigRational::from(BigInt::from(num))
}

/// Exponent multi-index with graded-lexicographic ordering.
///
/// Total degree compares first, then the exponent tuple lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial in `n` variables with non-zero rational coefficients.
///
/// Invariants: no stored coefficient is zero; the zero polynomial is the
/// empty map; every key has length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    /// The zero polynomial in `n` variables.
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Constant polynomial.
    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; n]), c);
        }
        p
    }

    /// The coordinate variable `x_j`, 1-based.
    pub fn var(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, max: n });
        }
        let mut exps = vec![0; n];
        exps[j - 1] = 1;
        let mut p = Polynomial::zero(n);
        p.terms.insert(Monomial(exps), Rat::one());
        Ok(p)
    }

    /// Build from explicit (coefficient, exponents) pairs; zero coefficients
    /// and repeated monomials are merged away.
    pub fn from_terms(n: usize, terms: &[(Rat, Vec<u32>)]) -> Self {
        let mut p = Polynomial::zero(n);
        for (c, e) in terms {
            assert_eq!(e.len(), n, "exponent tuple length must equal dimension");
            p.add_term(Monomial(e.clone()), c.clone());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Constant value if the polynomial has degree 0.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.total_degree() == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// Exact sum. Errors on dimension mismatch.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Exact difference.
    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    /// Exact product.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        Ok(out)
    }

    /// Scale by an exact rational.
    pub fn scale(&self, k: &Rat) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.n);
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * k);
        }
        out
    }

    /// Small non-negative integer power.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.n, Rat::one());
        for _ in 0..k {
            out = out.mul(self).expect("same dimension");
        }
        out
    }

    /// Exact partial derivative with respect to `x_j`, 1-based.
    pub fn diff(&self, j: usize) -> Result<Polynomial> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.n,
            });
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let a = m.0[j - 1];
            if a == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[j - 1] = a - 1;
            out.add_term(Monomial(exps), c * rat_int(a as i64));
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rat(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &a) in x.iter().zip(&m.0) {
                for _ in 0..a {
                    t *= xi;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Float evaluation; exact arithmetic up to the final rounding of each
    /// coefficient. Use [`PolyEval`] for hot loops.
    pub fn eval_f64(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (xi, &a) in x.iter().zip(&m.0) {
                if a > 0 {
                    t *= xi.powi(a as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Precompile for repeated float evaluation.
    pub fn evaluator(&self) -> PolyEval {
        PolyEval {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (rat_to_f64(c), m.0.clone()))
                .collect(),
        }
    }

    /// Exact integral over an axis box `[lo_i, hi_i]^n`.
    ///
    /// Independent oracle for grid quadrature: monomials integrate in
    /// closed form, `∫ x^a = (hi^{a+1} - lo^{a+1})/(a+1)` per axis.
    pub fn integral_over_box(&self, lo: &[Rat], hi: &[Rat]) -> Result<Rat> {
        if lo.len() != self.n || hi.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: lo.len().min(hi.len()),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.n {
                let a = m.0[i] as i64;
                let hi_pow = pow_rat(&hi[i], (a + 1) as u32);
                let lo_pow = pow_rat(&lo[i], (a + 1) as u32);
                t *= (hi_pow - lo_pow) / rat_int(a + 1);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Iterate terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Random sparse polynomial of total degree at most `max_degree`.
    ///
    /// Each admissible monomial enters with probability ~0.4, with small
    /// rational coefficients. Deterministic for a fixed RNG stream; used for
    /// seeded identity corpora.
    pub fn random<R: Rng>(n: usize, max_degree: u32, rng: &mut R) -> Polynomial {
        let mut p = Polynomial::zero(n);
        let mut stack = vec![vec![]];
        // enumerate all multi-indices of total degree <= max_degree
        let mut all = Vec::new();
        while let Some(prefix) = stack.pop() {
            if prefix.len() == n {
                all.push(prefix);
                continue;
            }
            let used: u32 = prefix.iter().sum();
            for a in 0..=(max_degree - used) {
                let mut next = prefix.clone();
                next.push(a);
                stack.push(next);
            }
        }
        all.sort();
        for exps in all {
            if rng.gen::<f64>() < 0.4 {
                let num = loop {
                    let v = rng.gen_range(-9i64..=9);
                    if v != 0 {
                        break v;
                    }
                };
                let den = rng.gen_range(1i64..=4);
                p.add_term(Monomial(exps), rat(num, den));
            }
        }
        p
    }

    /// Parse the canonical text form produced by `Display`.
    ///
    /// Accepted grammar (whitespace-liberal):
    /// `poly := ['-'] term (('+'|'-') term)*`,
    /// `term := coeff ['*' factors] | factors`,
    /// `coeff := int ['/' int]`, `factor := x<k> ['^' <a>]`.
    pub fn parse(n: usize, text: &str) -> Result<Polynomial> {
        parse_polynomial(n, text)
    }
}

fn pow_rat(x: &Rat, k: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..k {
        out *= x;
    }
    out
}

/// Rational to f64 with a big-integer fallback for extreme values.
pub fn rat_to_f64(c: &Rat) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        let num = c.numer().to_f64().unwrap_or(f64::NAN);
        let den = c.denom().to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

/// Canonical coefficient form: `p` when the denominator is 1, else `p/q`.
pub fn rat_to_string(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in descending graded-lex order joined by ` + `,
    /// each `coeff * x1^a1 ...` with zero exponents omitted and `^1` elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(i, &a)| {
                        if a == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, a)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{}", rat_to_string(c))?;
            } else {
                write!(f, "{} * {}", rat_to_string(c), factors.join(" "))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Int(BigInt),
    Var(usize),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut line = 1;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            ' ' | '\t' | '\r' => i += 1,
            '+' => {
                toks.push((line, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((line, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((line, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((line, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((line, Tok::Caret));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad integer `{}`", &text[start..i]),
                })?;
                toks.push((line, Tok::Int(v)));
            }
            'x' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(Error::Parse {
                        line,
                        msg: "`x` must be followed by a variable index".into(),
                    });
                }
                let k: usize = text[start..i].parse().map_err(|_| Error::Parse {
                    line,
                    msg: "bad variable index".into(),
                })?;
                toks.push((line, Tok::Var(k)));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(toks)
}

fn parse_polynomial(n: usize, text: &str) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty polynomial".into(),
        });
    }
    let mut out = Polynomial::zero(n);
    let mut pos = 0;
    // fold any run of leading signs into one
    let mut sign = consume_signs(&toks, &mut pos);
    loop {
        let (term, next) = parse_term(n, &toks, pos)?;
        out = out.add(&term.scale(&sign))?;
        pos = next;
        match toks.get(pos) {
            None => break,
            Some((_, Tok::Plus)) | Some((_, Tok::Minus)) => {
                sign = consume_signs(&toks, &mut pos);
            }
            Some((line, t)) => {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!("expected `+` or `-` between terms, got {t:?}"),
                })
            }
        }
    }
    Ok(out)
}

fn consume_signs(toks: &[(usize, Tok)], pos: &mut usize) -> Rat {
    let mut sign = Rat::one();
    while let Some((_, t)) = toks.get(*pos) {
        match t {
            Tok::Plus => *pos += 1,
            Tok::Minus => {
                sign = -sign;
                *pos += 1;
            }
            _ => break,
        }
    }
    sign
}

fn parse_term(n: usize, toks: &[(usize, Tok)], mut pos: usize) -> Result<(Polynomial, usize)> {
    let line = toks.get(pos).map(|t| t.0).unwrap_or(1);
    let mut coeff = Rat::one();
    let mut exps = vec![0u32; n];
    let mut saw_any = false;
    // optional leading coefficient
    if let Some((_, Tok::Int(p))) = toks.get(pos) {
        let p = p.clone();
        pos += 1;
        saw_any = true;
        if let Some((_, Tok::Slash)) = toks.get(pos) {
            pos += 1;
            match toks.get(pos) {
                Some((_, Tok::Int(q))) if !q.is_zero() => {
                    coeff = BigRational::new(p, q.clone());
                    pos += 1;
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: "expected non-zero denominator after `/`".into(),
                    })
                }
            }
        } else {
            coeff = BigRational::from(p);
        }
        if let Some((_, Tok::Star)) = toks.get(pos) {
            pos += 1;
        }
    }
    // variable factors
    while let Some((vline, Tok::Var(k))) = toks.get(pos) {
        let k = *k;
        if k == 0 || k > n {
            return Err(Error::Parse {
                line: *vline,
                msg: format!("variable x{k} out of range for dimension {n}"),
            });
        }
        pos += 1;
        saw_any = true;
        let mut a = 1u32;
        if let Some((_, Tok::Caret)) = toks.get(pos) {
            pos += 1;
            match toks.get(pos) {
                Some((_, Tok::Int(e))) => {
                    a = e.to_u32().ok_or(Error::Parse {
                        line: *vline,
                        msg: "exponent too large".into(),
                    })?;
                    pos += 1;
                }
                _ => {
                    return Err(Error::Parse {
                        line: *vline,
                        msg: "expected integer exponent after `^`".into(),
                    })
                }
            }
        }
        exps[k - 1] += a;
        if let Some((_, Tok::Star)) = toks.get(pos) {
            pos += 1;
        }
    }
    if !saw_any {
        return Err(Error::Parse {
            line,
            msg: "expected a term".into(),
        });
    }
    let mut p = Polynomial::zero(n);
    p.add_term(Monomial(exps), coeff);
    Ok((p, pos))
}

/// Compiled float evaluator for hot loops.
#[derive(Clone, Debug)]
pub struct PolyEval {
    n: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl PolyEval {
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        let mut acc = 0.0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (xi, &a) in x.iter().zip(exps) {
                match a {
                    0 => {}
                    1 => t *= xi,
                    2 => t *= xi * xi,
                    _ => t *= xi.powi(a as i32),
                }
            }
            acc += t;
        }
        acc
    }

    /// True when the compiled polynomial has no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, j: usize) -> Polynomial {
        Polynomial::var(n, j).unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let p = x(3, 1);
        assert!(p.add(&p.neg()).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let one = Polynomial::constant(1, Rat::one());
        let a = x(1, 1).add(&one).unwrap();
        let b = x(1, 1).sub(&one).unwrap();
        let prod = a.mul(&b).unwrap();
        let expect = x(1, 1).mul(&x(1, 1)).unwrap().sub(&one).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn scale_by_three_halves() {
        let p = x(2, 2).scale(&rat(3, 2));
        assert_eq!(p.to_string(), "3/2 * x2");
    }

    #[test]
    fn partial_derivatives() {
        // d1(x1^2) = 2 x1
        let p = x(3, 1).pow(2);
        assert_eq!(p.diff(1).unwrap(), x(3, 1).scale(&rat_int(2)));
        // d3(x1 x2) = 0
        let q = x(3, 1).mul(&x(3, 2)).unwrap();
        assert!(q.diff(3).unwrap().is_zero());
        // d2(x1 x2^2 x3) = 2 x1 x2 x3
        let r = x(3, 1).mul(&x(3, 2).pow(2)).unwrap().mul(&x(3, 3)).unwrap();
        let expect = x(3, 1)
            .mul(&x(3, 2))
            .unwrap()
            .mul(&x(3, 3))
            .unwrap()
            .scale(&rat_int(2));
        assert_eq!(r.diff(2).unwrap(), expect);
    }

    #[test]
    fn evaluation_examples() {
        // (x1^2 + 2 x3) at (1,0,2) = 5
        let p = x(3, 1).pow(2).add(&x(3, 3).scale(&rat_int(2))).unwrap();
        let v = p.eval_rat(&[rat_int(1), rat_int(0), rat_int(2)]).unwrap();
        assert_eq!(v, rat_int(5));
        // zero polynomial evaluates to 0 anywhere
        let z = Polynomial::zero(3);
        let seven = vec![rat_int(7), rat_int(7), rat_int(7)];
        assert_eq!(z.eval_rat(&seven).unwrap(), Rat::zero());
        assert_eq!(z.eval_f64(&[1.0, 2.0, 3.0]).unwrap(), 0.0);
    }

    #[test]
    fn derivative_matches_central_difference() {
        // independent finite-difference oracle, h = 1e-4, relative tol 1e-6
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let h = 1e-4;
        for _ in 0..10 {
            let p = Polynomial::random(3, 4, &mut rng);
            let pt = [0.3, -0.7, 0.9];
            for j in 1..=3 {
                let d = p.diff(j).unwrap().eval_f64(&pt).unwrap();
                let mut hi = pt;
                let mut lo = pt;
                hi[j - 1] += h;
                lo[j - 1] -= h;
                let fd = (p.eval_f64(&hi).unwrap() - p.eval_f64(&lo).unwrap()) / (2.0 * h);
                let scale = 1.0f64.max(d.abs());
                assert!(
                    (d - fd).abs() <= 1e-6 * scale,
                    "j={j}: symbolic {d} vs fd {fd}"
                );
            }
        }
    }

    #[test]
    fn mixed_partials_commute_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = Polynomial::random(4, 4, &mut rng);
            for i in 1..=4 {
                for j in 1..=4 {
                    let a = p.diff(i).unwrap().diff(j).unwrap();
                    let b = p.diff(j).unwrap().diff(i).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn ring_axioms_hold_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let p = Polynomial::random(3, 3, &mut rng);
            let q = Polynomial::random(3, 3, &mut rng);
            let r = Polynomial::random(3, 3, &mut rng);
            // associativity
            let ab_c = p.mul(&q).unwrap().mul(&r).unwrap();
            let a_bc = p.mul(&q.mul(&r).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            // distributivity
            let lhs = p.mul(&q.add(&r).unwrap()).unwrap();
            let rhs = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            // p - p = 0
            assert!(p.sub(&p).unwrap().is_zero());
        }
    }

    #[test]
    fn canonical_text_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let p = Polynomial::random(3, 4, &mut rng);
            let s = p.to_string();
            let q = Polynomial::parse(3, &s).unwrap();
            assert_eq!(p, q, "round-trip failed for `{s}`");
        }
        assert_eq!(Polynomial::parse(2, "0").unwrap(), Polynomial::zero(2));
    }

    #[test]
    fn canonical_print_is_descending_graded_lex() {
        // golden string: degree-2 terms first ((1,1) before (0,2) in
        // descending lex), then degree-1 terms, then the constant
        let p = Polynomial::from_terms(
            2,
            &[
                (rat_int(2), vec![0, 0]),
                (rat_int(1), vec![1, 0]),
                (rat_int(1), vec![1, 1]),
                (rat_int(1), vec![0, 2]),
            ],
        );
        assert_eq!(p.to_string(), "1 * x1 x2 + 1 * x2^2 + 1 * x1 + 2");
        let q = Polynomial::from_terms(2, &[(rat(-3, 2), vec![2, 0]), (rat(1, 3), vec![0, 1])]);
        assert_eq!(q.to_string(), "-3/2 * x1^2 + 1/3 * x2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Polynomial::parse(2, "x3").is_err());
        assert!(Polynomial::parse(2, "1/0").is_err());
        assert!(Polynomial::parse(2, "x1 $ x2").is_err());
        assert!(Polynomial::parse(2, "").is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let p = Polynomial::zero(2);
        let q = Polynomial::zero(3);
        assert!(p.add(&q).is_err());
        assert!(p.mul(&q).is_err());
        assert!(p.eval_f64(&[0.0; 5]).is_err());
    }

    #[test]
    fn box_integral_of_monomials() {
        // ∫_{[0,1]x[0,2]} x1 x2^2 = 1/2 * 8/3 = 4/3
        let p = Polynomial::var(2, 1)
            .unwrap()
            .mul(&Polynomial::var(2, 2).unwrap().pow(2))
            .unwrap();
        let v = p
            .integral_over_box(&[rat_int(0), rat_int(0)], &[rat_int(1), rat_int(2)])
            .unwrap();
        assert_eq!(v, rat(4, 3));
    }
}
