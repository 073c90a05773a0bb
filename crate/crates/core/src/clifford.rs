//! Dense complex Clifford algebra with generators squaring to −1.
//!
//! A blade `e_A` is stored as a bit mask: bit `j-1` set means `e_j` is a
//! factor. Products are canonically ordered, so `e1e2` has mask `0b011`.
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 8;

/// A canonically ordered subset of `{1, …, m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BladeIndex(pub u16);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    /// The generator `e_j`, with `j` starting at 1.
    pub fn generator(j: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&j), "generator index {j} out of range");
        BladeIndex(1 << (j - 1))
    }

    /// Blade from a list of distinct 1-based generator indices, in any order.
    /// Returns the reordering sign together with the canonical blade.
    pub fn from_generators(indices: &[usize]) -> (f64, Self) {
        let mut sign = 1.0;
        let mut acc = BladeIndex::SCALAR;
        for &j in indices {
            let (s, b) = blade_product(acc, BladeIndex::generator(j));
            sign *= s;
            acc = b;
        }
        (sign, acc)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Mask string with one character per generator, `e_1` first.
    pub fn to_mask_string(self, m: usize) -> String {
        (0..m)
            .map(|j| if self.0 >> j & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Human label such as `e0` for the identity or `e13` for `e1e3`.
    pub fn label(self) -> String {
        if self.0 == 0 {
            return "e0".to_string();
        }
        let mut s = String::from("e");
        for j in 0..MAX_DIM {
            if self.0 >> j & 1 == 1 {
                s.push_str(&(j + 1).to_string());
            }
        }
        s
    }
}

/// Number of transpositions needed to sort the concatenation `a b`.
fn reorder_swaps(a: u16, b: u16) -> u32 {
    let mut x = a >> 1;
    let mut count = 0;
    while x != 0 {
        count += (x & b).count_ones();
        x >>= 1;
    }
    count
}

/// Product of two basis blades: `e_a e_b = sign · e_{a Δ b}`.
pub fn blade_product(a: BladeIndex, b: BladeIndex) -> (f64, BladeIndex) {
    let swaps = reorder_swaps(a.0, b.0);
    let contractions = (a.0 & b.0).count_ones();
    let sign = if (swaps + contractions) % 2 == 0 { 1.0 } else { -1.0 };
    (sign, BladeIndex(a.0 ^ b.0))
}

/// Sign picked up by a grade-g blade under Clifford conjugation.
fn conjugation_sign(grade: usize) -> f64 {
    let g = grade as i64;
    let e = g + g * (g - 1) / 2;
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A point of R^m.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorM(pub Vec<f64>);

impl VectorM {
    pub fn new(coords: Vec<f64>) -> Self {
        VectorM(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn dot(&self, other: &VectorM) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, s: f64) -> VectorM {
        VectorM(self.0.iter().map(|v| v * s).collect())
    }

    /// The element `Σ x_j e_j` of grade one.
    pub fn embed(&self) -> Multivector {
        let mut mv = Multivector::zero(self.dim());
        for (j, &x) in self.0.iter().enumerate() {
            mv.coeffs[1 << j] = Complex64::new(x, 0.0);
        }
        mv
    }
}

/// Element of the complex Clifford algebra with `2^m` dense coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<Complex64>,
}

impl Multivector {
    /// Zero element. Panics when `m` is outside `1..=MAX_DIM`.
    pub fn zero(m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} unsupported");
        Multivector {
            dim: m,
            coeffs: vec![Complex64::new(0.0, 0.0); 1 << m],
        }
    }

    pub fn try_zero(m: usize) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&m) {
            return Err(Error::UnsupportedDimension(m));
        }
        Ok(Self::zero(m))
    }

    pub fn scalar(m: usize, value: f64) -> Self {
        Self::blade(m, BladeIndex::SCALAR, Complex64::new(value, 0.0))
    }

    pub fn blade(m: usize, b: BladeIndex, value: Complex64) -> Self {
        let mut mv = Self::zero(m);
        assert!((b.0 as usize) < mv.coeffs.len(), "blade outside dimension");
        mv.coeffs[b.0 as usize] = value;
        mv
    }

    /// The generator `e_j` as a multivector.
    pub fn generator(m: usize, j: usize) -> Self {
        Self::blade(m, BladeIndex::generator(j), Complex64::new(1.0, 0.0))
    }

    pub fn from_coeffs(m: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let mut mv = Self::try_zero(m)?;
        if coeffs.len() != mv.coeffs.len() {
            return Err(Error::DimensionMismatch {
                left: mv.coeffs.len(),
                right: coeffs.len(),
            });
        }
        mv.coeffs = coeffs;
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, b: BladeIndex) -> Complex64 {
        self.coeffs[b.0 as usize]
    }

    pub fn set_coeff(&mut self, b: BladeIndex, value: Complex64) {
        self.coeffs[b.0 as usize] = value;
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = Multivector::zero(self.dim);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.re == 0.0 && cb.im == 0.0 {
                    continue;
                }
                let (sign, r) = blade_product(BladeIndex(a as u16), BladeIndex(b as u16));
                out.coeffs[r.0 as usize] += ca * cb * sign;
            }
        }
        Ok(out)
    }

    /// Clifford conjugation: reverses products, negates generators, and
    /// conjugates complex coefficients.
    pub fn conjugate(&self) -> Multivector {
        let mut out = self.clone();
        for (a, c) in out.coeffs.iter_mut().enumerate() {
            *c = c.conj() * conjugation_sign(BladeIndex(a as u16).grade());
        }
        out
    }

    pub fn grade_project(&self, k: usize) -> Result<Multivector> {
        if k > self.dim {
            return Err(Error::range("grade", format!("{k} > m = {}", self.dim)));
        }
        let mut out = Multivector::zero(self.dim);
        for (a, c) in self.coeffs.iter().enumerate() {
            if BladeIndex(a as u16).grade() == k {
                out.coeffs[a] = *c;
            }
        }
        Ok(out)
    }

    /// `[conj(u) v]_0`.
    pub fn scalar_inner(&self, other: &Multivector) -> Result<Complex64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        // Only matching blades reach the scalar part; conj(e_A) e_A = +1.
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Multivector {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= s;
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> Multivector {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part, zero when the element lies in R_m.
    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Zero every coefficient with magnitude below `tol`, per component.
    pub fn clean(&mut self, tol: f64) {
        for c in self.coeffs.iter_mut() {
            if c.re.abs() < tol {
                c.re = 0.0;
            }
            if c.im.abs() < tol {
                c.im = 0.0;
            }
        }
    }

    /// JSON object mapping mask strings to `[re, im]`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (a, c) in self.coeffs.iter().enumerate() {
            map.insert(
                BladeIndex(a as u16).to_mask_string(self.dim),
                serde_json::json!([c.re, c.im]),
            );
        }
        serde_json::Value::Object(map)
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Multivector> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("multivector must be a JSON object".into()))?;
        let mut dim = None;
        let mut entries = BTreeMap::new();
        for (key, val) in obj {
            let m = key.chars().count();
            if !(1..=MAX_DIM).contains(&m) {
                return Err(Error::Parse(format!("mask `{key}` has unsupported length")));
            }
            match dim {
                None => dim = Some(m),
                Some(d) if d != m => {
                    return Err(Error::Parse("mask strings of differing length".into()))
                }
                _ => {}
            }
            let mut mask = 0u16;
            for (j, ch) in key.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => mask |= 1 << j,
                    _ => return Err(Error::Parse(format!("bad mask character in `{key}`"))),
                }
            }
            let pair = val
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse(format!("value for `{key}` must be [re, im]")))?;
            let re = pair[0]
                .as_f64()
                .ok_or_else(|| Error::Parse("non-numeric real part".into()))?;
            let im = pair[1]
                .as_f64()
                .ok_or_else(|| Error::Parse("non-numeric imaginary part".into()))?;
            entries.insert(mask, Complex64::new(re, im));
        }
        let m = dim.ok_or_else(|| Error::Parse("empty multivector object".into()))?;
        let mut mv = Multivector::zero(m);
        for (mask, c) in entries {
            mv.coeffs[mask as usize] = c;
        }
        Ok(mv)
    }

    pub fn from_json(s: &str) -> Result<Multivector> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}){}", c, BladeIndex(a as u16).label())?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale_real(-1.0)
    }
}

/// Geometric product; panics on dimension mismatch.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs).expect("dimension mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn generator_squares_to_minus_one() {
        let e1 = BladeIndex::generator(1);
        assert_eq!(blade_product(e1, e1), (-1.0, BladeIndex::SCALAR));
    }

    #[test]
    fn identity_blade() {
        let a = BladeIndex(0b101);
        assert_eq!(blade_product(BladeIndex::SCALAR, a), (1.0, a));
    }

    #[test]
    fn e12_times_e23() {
        let (_, e12) = BladeIndex::from_generators(&[1, 2]);
        let (_, e23) = BladeIndex::from_generators(&[2, 3]);
        let (_, e13) = BladeIndex::from_generators(&[1, 3]);
        assert_eq!(blade_product(e12, e23), (-1.0, e13));
    }

    #[test]
    fn reordering_sign() {
        assert_eq!(BladeIndex::from_generators(&[2, 1]), (-1.0, BladeIndex(0b11)));
        assert_eq!(BladeIndex::from_generators(&[3, 1, 2]), (1.0, BladeIndex(0b111)));
    }

    #[test]
    fn sum_difference_product() {
        let e1 = Multivector::generator(2, 1);
        let e2 = Multivector::generator(2, 2);
        let p = &(&e1 + &e2) * &(&e1 - &e2);
        // e1e1 − e1e2 + e2e1 − e2e2 = −1 − e12 − e12 + 1
        let expect = Multivector::blade(2, BladeIndex(0b11), c(-2.0));
        assert!(p.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn conjugation_of_blades() {
        let e1 = Multivector::generator(3, 1);
        assert_eq!(e1.conjugate(), e1.scale_real(-1.0));
        let one = Multivector::scalar(3, 1.0);
        assert_eq!(one.conjugate(), one);
        let e12 = Multivector::blade(3, BladeIndex(0b11), c(1.0));
        assert_eq!(e12.conjugate(), e12.scale_real(-1.0));
        let e123 = Multivector::blade(3, BladeIndex(0b111), c(1.0));
        assert_eq!(e123.conjugate(), e123);
    }

    #[test]
    fn vector_product_decomposes() {
        let x = VectorM::new(vec![0.3, -1.2, 0.7]);
        let y = VectorM::new(vec![1.1, 0.4, -0.5]);
        let p = &x.embed() * &y.embed();
        assert!((p.scalar_part().re + x.dot(&y)).abs() < 1e-15);
        let wedge = p.grade_project(2).unwrap();
        let w12 = x.0[0] * y.0[1] - x.0[1] * y.0[0];
        let w13 = x.0[0] * y.0[2] - x.0[2] * y.0[0];
        let w23 = x.0[1] * y.0[2] - x.0[2] * y.0[1];
        assert!((wedge.coeff(BladeIndex(0b011)).re - w12).abs() < 1e-15);
        assert!((wedge.coeff(BladeIndex(0b101)).re - w13).abs() < 1e-15);
        assert!((wedge.coeff(BladeIndex(0b110)).re - w23).abs() < 1e-15);
        assert!(p.grade_project(1).unwrap().is_zero(0.0));
    }

    #[test]
    fn grade_projection_examples() {
        let mut u = Multivector::scalar(2, 3.0);
        u.set_coeff(BladeIndex(0b11), c(1.0));
        assert_eq!(u.grade_project(0).unwrap(), Multivector::scalar(2, 3.0));
        assert!(u.grade_project(3).is_err());
    }

    #[test]
    fn scalar_inner_examples() {
        let e1 = Multivector::generator(3, 1);
        let e2 = Multivector::generator(3, 2);
        assert_eq!(e1.scalar_inner(&e1).unwrap(), c(1.0));
        assert_eq!(e1.scalar_inner(&e2).unwrap(), c(0.0));
        assert!(e1.scalar_inner(&Multivector::generator(2, 1)).is_err());
        // direct route through the product agrees with the shortcut
        let mut u = Multivector::zero(3);
        for (a, v) in [(0, 0.5), (3, -1.5), (5, 2.0), (7, 0.25)] {
            u.set_coeff(BladeIndex(a), Complex64::new(v, 0.1 * v));
        }
        let via_product = (&u.conjugate() * &u).scalar_part();
        assert!((via_product - u.scalar_inner(&u).unwrap()).norm() < 1e-14);
        assert!((via_product.re - u.norm_sqr()).abs() < 1e-14);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Multivector::zero(2);
        let b = Multivector::zero(3);
        assert!(a.geometric_product(&b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut u = Multivector::zero(3);
        u.set_coeff(BladeIndex(0b101), Complex64::new(1.25, -0.5));
        u.set_coeff(BladeIndex(0), Complex64::new(0.1, 0.0));
        let s = u.to_json();
        assert_eq!(Multivector::from_json(&s).unwrap(), u);
        assert!(s.contains("\"101\":[1.25,-0.5]"));
    }

    #[test]
    fn json_rejects_garbage() {
        for bad in ["[]", "{}", "{\"12\":[1,0]}", "{\"10\":[1]}", "{\"10\":[1,0],\"1\":[0,0]}"] {
            assert!(Multivector::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn labels() {
        assert_eq!(BladeIndex(0).label(), "e0");
        assert_eq!(BladeIndex(0b101).label(), "e13");
        assert_eq!(BladeIndex(0b110).to_mask_string(3), "011");
    }
}
