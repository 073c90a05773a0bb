//! Clifford-valued polynomials, the Dirac operator, and orthonormal bases of
//! inner spherical monogenics for `m = 2` and `m = 3`.
use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::clifford::{BladeIndex, Multivector, VectorM, MAX_DIM};
use crate::error::{Error, Result};
use crate::special::{sphere_rule, QuadratureRule};

/// Largest single exponent accepted when decoding a polynomial.
pub const MAX_EXPONENT: u32 = 64;

/// Coefficients below this are dropped after basis construction.
pub const CLEAN_TOL: f64 = 1e-12;

/// Finite sum of monomials `x^a` with multivector coefficients placed on the
/// right of the monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMultivector {
    dim: usize,
    terms: BTreeMap<Vec<u32>, Multivector>,
}

impl PolyMultivector {
    pub fn zero(m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} unsupported");
        PolyMultivector {
            dim: m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Multivector) -> Self {
        let m = c.dim();
        let mut p = Self::zero(m);
        p.add_term(vec![0; m], &c);
        p
    }

    pub fn monomial(exponents: Vec<u32>, c: Multivector) -> Self {
        assert_eq!(exponents.len(), c.dim(), "exponent length must equal m");
        let mut p = Self::zero(c.dim());
        p.add_term(exponents, &c);
        p
    }

    /// The real scalar coordinate `x_j` (1-based).
    pub fn coordinate(m: usize, j: usize) -> Self {
        let mut e = vec![0; m];
        e[j - 1] = 1;
        Self::monomial(e, Multivector::scalar(m, 1.0))
    }

    /// The vector variable `x = Σ e_j x_j`.
    pub fn vector_variable(m: usize) -> Self {
        let mut p = Self::zero(m);
        for j in 1..=m {
            let mut e = vec![0; m];
            e[j - 1] = 1;
            p.add_term(e, &Multivector::generator(m, j));
        }
        p
    }

    /// `|x|² = Σ x_j²` as a scalar polynomial.
    pub fn norm_squared_variable(m: usize) -> Self {
        let mut p = Self::zero(m);
        for j in 0..m {
            let mut e = vec![0; m];
            e[j] = 2;
            p.add_term(e, &Multivector::scalar(m, 1.0));
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Multivector)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Option<&Multivector> {
        self.terms.get(exponents)
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: &Multivector) {
        if c.is_zero(0.0) {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero(0.0) {
                    self.terms.remove(&exponents);
                }
            }
            None => {
                self.terms.insert(exponents, c.clone());
            }
        }
    }

    pub fn add(&self, other: &PolyMultivector) -> PolyMultivector {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &PolyMultivector) -> PolyMultivector {
        self.add(&other.scale_real(-1.0))
    }

    pub fn scale(&self, s: Complex64) -> PolyMultivector {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &c.scale(s));
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> PolyMultivector {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Product `self · other`, coefficients multiplied in that order.
    pub fn mul(&self, other: &PolyMultivector) -> PolyMultivector {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    /// `c · self`.
    pub fn left_mul(&self, c: &Multivector) -> PolyMultivector {
        let mut out = Self::zero(self.dim);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(c * v));
        }
        out
    }

    /// `self · c`.
    pub fn right_mul(&self, c: &Multivector) -> PolyMultivector {
        let mut out = Self::zero(self.dim);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    /// `Σ_i t_i |x|^{2i} · self` for coefficients `t_i` of a polynomial in `|x|²`.
    pub fn times_radial(&self, coeffs_in_t: &[f64]) -> PolyMultivector {
        let r2 = Self::norm_squared_variable(self.dim);
        let mut power = self.clone();
        let mut out = Self::zero(self.dim);
        for &c in coeffs_in_t {
            out = out.add(&power.scale_real(c));
            power = r2.mul(&power);
        }
        out
    }

    /// `∂/∂x_j`, with `j` 1-based.
    pub fn partial(&self, j: usize) -> PolyMultivector {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let a = e[j - 1];
            if a == 0 {
                continue;
            }
            let mut d = e.clone();
            d[j - 1] -= 1;
            out.add_term(d, &c.scale_real(a as f64));
        }
        out
    }

    pub fn laplacian(&self) -> PolyMultivector {
        let mut out = Self::zero(self.dim);
        for j in 1..=self.dim {
            out = out.add(&self.partial(j).partial(j));
        }
        out
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == k)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.max_abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &PolyMultivector) -> f64 {
        self.sub(other).max_abs_coeff()
    }

    /// Zero tiny coefficient components and drop empty terms.
    pub fn clean(&mut self, tol: f64) {
        for c in self.terms.values_mut() {
            c.clean(tol);
        }
        self.terms.retain(|_, c| !c.is_zero(0.0));
    }

    pub fn evaluate(&self, x: &VectorM) -> Result<Multivector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: x.dim(),
            });
        }
        Ok(self.evaluate_slice(&x.0))
    }

    pub(crate) fn evaluate_slice(&self, x: &[f64]) -> Multivector {
        let max_deg = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        // powers[j][a] = x_j^a
        let powers: Vec<Vec<f64>> = x
            .iter()
            .map(|&v| {
                let mut p = Vec::with_capacity(max_deg + 1);
                let mut acc = 1.0;
                for _ in 0..=max_deg {
                    p.push(acc);
                    acc *= v;
                }
                p
            })
            .collect();
        let mut out = Multivector::zero(self.dim);
        for (e, c) in &self.terms {
            let mono: f64 = e
                .iter()
                .enumerate()
                .map(|(j, &a)| powers[j][a as usize])
                .product();
            out += &c.scale_real(mono);
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!({"exponents": e, "coeff": c.to_json_value()}))
            .collect();
        serde_json::json!({"m": self.dim, "terms": terms})
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(s: &str) -> Result<PolyMultivector> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let m = v
            .get("m")
            .and_then(|m| m.as_u64())
            .ok_or_else(|| Error::Parse("missing integer field `m`".into()))?
            as usize;
        if !(1..=MAX_DIM).contains(&m) {
            return Err(Error::UnsupportedDimension(m));
        }
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Parse("missing array field `terms`".into()))?;
        let mut p = Self::zero(m);
        for t in terms {
            let e = t
                .get("exponents")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::Parse("term without `exponents`".into()))?;
            if e.len() != m {
                return Err(Error::Parse("exponent list length differs from m".into()));
            }
            let mut exps = Vec::with_capacity(m);
            for a in e {
                let a = a
                    .as_u64()
                    .filter(|a| *a <= MAX_EXPONENT as u64)
                    .ok_or_else(|| Error::Parse("exponent must be a small non-negative integer".into()))?;
                exps.push(a as u32);
            }
            let c = Multivector::from_json_value(
                t.get("coeff")
                    .ok_or_else(|| Error::Parse("term without `coeff`".into()))?,
            )?;
            if c.dim() != m {
                return Err(Error::Parse("coefficient dimension differs from m".into()));
            }
            p.add_term(exps, &c);
        }
        Ok(p)
    }
}

/// Left Dirac operator `Σ_j e_j ∂/∂x_j`.
pub fn dirac(p: &PolyMultivector) -> PolyMultivector {
    let m = p.dim();
    let mut out = PolyMultivector::zero(m);
    for j in 1..=m {
        out = out.add(&p.partial(j).left_mul(&Multivector::generator(m, j)));
    }
    out
}

/// Dimension of the space of degree-k inner spherical monogenics in `R^m`.
pub fn dim_monogenic(m: usize, k: usize) -> Result<usize> {
    if m < 2 {
        return Err(Error::range("dimension", format!("m = {m} < 2")));
    }
    // (m+k−2)! / ((m−2)! k!) = C(m−2+k, k)
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (m as u128 - 2 + i) / i;
    }
    Ok(acc as usize)
}

/// Orthonormal basis of degree-k left monogenics on `S^{m−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonogenicBasis {
    pub m: usize,
    pub k: usize,
    pub elements: Vec<PolyMultivector>,
}

impl MonogenicBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element `i`, 1-based.
    pub fn element(&self, i: usize) -> Result<&PolyMultivector> {
        if i == 0 || i > self.elements.len() {
            return Err(Error::range(
                "basis index",
                format!("{i} not in 1..={}", self.elements.len()),
            ));
        }
        Ok(&self.elements[i - 1])
    }

    /// Exact sphere rule for products of two elements.
    pub fn sphere_rule(&self) -> QuadratureRule {
        sphere_rule(self.m, 2 * self.k + 2).expect("basis dimension is 2 or 3")
    }
}

/// Basis built for `m` ∈ {2, 3}.
pub fn basis(m: usize, k: usize) -> Result<MonogenicBasis> {
    match m {
        2 => Ok(basis_2d(k)),
        3 => basis_3d(k),
        _ => Err(Error::UnsupportedDimension(m)),
    }
}

/// `(2π)^{−1/2} (x₁ − e₁e₂ x₂)^k`, the unique normalized element for `m = 2`.
pub fn basis_2d(k: usize) -> MonogenicBasis {
    let mut z = PolyMultivector::coordinate(2, 1);
    z = z.add(&PolyMultivector::monomial(
        vec![0, 1],
        Multivector::blade(2, BladeIndex(0b11), Complex64::new(-1.0, 0.0)),
    ));
    let mut y = PolyMultivector::constant(Multivector::scalar(2, (2.0 * PI).powf(-0.5)));
    for _ in 0..k {
        y = y.mul(&z);
    }
    MonogenicBasis {
        m: 2,
        k,
        elements: vec![y],
    }
}

/// Largest degree supported by [`basis_3d`].
pub const MAX_BASIS_3D_DEGREE: usize = 8;

fn factorial(n: u32) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Real harmonic polynomials spanning `H(3, k)`: the x₃-even and x₃-odd
/// extensions of planar monomials.
fn solid_harmonics_3d(k: usize) -> Vec<PolyMultivector> {
    let mut out = Vec::new();
    let extend = |base_deg: usize, odd: bool, a: usize| {
        let mut p = PolyMultivector::monomial(
            vec![a as u32, (base_deg - a) as u32, 0],
            Multivector::scalar(3, 1.0),
        );
        let mut h = PolyMultivector::zero(3);
        let mut j = 0u32;
        while p.num_terms() > 0 {
            let power = 2 * j + odd as u32;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let x3 = PolyMultivector::monomial(vec![0, 0, power], Multivector::scalar(3, 1.0));
            h = h.add(&x3.mul(&p).scale_real(sign / factorial(power)));
            p = p.partial(1).partial(1).add(&p.partial(2).partial(2));
            j += 1;
        }
        h
    };
    for a in 0..=k {
        out.push(extend(k, false, a));
    }
    if k >= 1 {
        for a in 0..k {
            out.push(extend(k - 1, true, a));
        }
    }
    out
}

/// `∫_{S^{m−1}} conj(A) B` evaluated on a rule.
pub fn sphere_inner(
    a: &PolyMultivector,
    b: &PolyMultivector,
    rule: &QuadratureRule,
) -> Multivector {
    let mut acc = Multivector::zero(a.dim());
    for (p, w) in rule.points() {
        let va = a.evaluate_slice(p);
        let vb = b.evaluate_slice(p);
        acc += &(&va.conjugate() * &vb).scale_real(w);
    }
    acc
}

/// Orthonormal basis for `m = 3`, `0 ≤ k ≤ 8`, by monogenic projection of
/// solid harmonics followed by Gram–Schmidt over the even subalgebra.
pub fn basis_3d(k: usize) -> Result<MonogenicBasis> {
    if k > MAX_BASIS_3D_DEGREE {
        return Err(Error::range(
            "monogenic degree",
            format!("{k} > {MAX_BASIS_3D_DEGREE}"),
        ));
    }
    let m = 3;
    let want = dim_monogenic(m, k)?;
    let rule = sphere_rule(m, 2 * k + 2)?;
    let x = PolyMultivector::vector_variable(m);
    let denom = (2 * k + m - 2) as f64;
    let mut elements: Vec<PolyMultivector> = Vec::with_capacity(want);
    for h in solid_harmonics_3d(k) {
        if elements.len() == want {
            break;
        }
        // h = Y_k + x Y_{k−1} with Y_{k−1} = −∂h / (2k + m − 2)
        let mut y = h.add(&x.mul(&dirac(&h)).scale_real(1.0 / denom));
        for _ in 0..2 {
            for e in &elements {
                let proj = sphere_inner(e, &y, &rule);
                y = y.sub(&e.right_mul(&proj));
            }
        }
        let n2 = sphere_inner(&y, &y, &rule).scalar_part().re;
        if n2 < 1e-16 {
            continue;
        }
        let mut y = y.scale_real(1.0 / n2.sqrt());
        y.clean(CLEAN_TOL);
        elements.push(y);
    }
    if elements.len() != want {
        return Err(Error::Convergence(format!(
            "monogenic projection spans {} of {want} directions",
            elements.len()
        )));
    }
    Ok(MonogenicBasis { m, k, elements })
}
