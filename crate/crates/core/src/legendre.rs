//! Normalized Clifford-Legendre radial parts.
//!
//! With `t = |x|²`, the even members are `p_N(t) Y_k(x)` and the odd members
//! `x q_N(t) Y_k(x)`, each of unit norm in `L²(B(1))`. Both families follow
//! from the Bonnet pair
//! `p_N = A_N q_N + B_N q_{N−1}` and `−t q_N = A′_N p_{N+1} + B′_N p_N`.
use crate::error::{Error, Result};
use crate::monogenics::{dirac, PolyMultivector};
use crate::clifford::Multivector;
use crate::dd::Dd;

/// Even (`n = 2N`) or odd (`n = 2N + 1`) member of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// 0 for even, 1 for odd.
    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Degree ceiling for monomial-basis sequences. Beyond N ≈ 40 the monomial
/// coefficients grow so large that evaluation in this basis loses most digits;
/// use [`RadialRecurrence`] for values instead.
pub const MAX_SEQUENCE_DEGREE: usize = 64;

/// Eigenvalue of the `c = 0` operator on the degree-n member.
pub fn c0_eigenvalue(n: usize, m: usize, k: usize) -> f64 {
    let (n, m, k) = (n as f64, m as f64, k as f64);
    if (n as usize) % 2 == 0 {
        n * (n + m + 2.0 * k)
    } else {
        (n + 1.0) * (n + m + 2.0 * k - 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BonnetCoeffs {
    pub a: f64,
    pub b: f64,
    pub a_prime: f64,
    pub b_prime: f64,
}

pub fn bonnet_coeffs(n: usize, k: usize, m: usize) -> BonnetCoeffs {
    let (nf, kf, mf) = (n as f64, k as f64, m as f64);
    let h = mf / 2.0;
    let s = mf + 4.0 * nf + 2.0 * kf;
    let a = -(h + nf + kf) * s.sqrt() / ((h + 2.0 * nf + kf) * (s + 2.0).sqrt());
    let b = if n == 0 {
        0.0
    } else {
        nf * s.sqrt() / ((h + 2.0 * nf + kf) * (s - 2.0).sqrt())
    };
    let a_prime = -(nf + 1.0) * (s + 2.0).sqrt() / ((h + 2.0 * nf + kf + 1.0) * (s + 4.0).sqrt());
    let b_prime = (h + nf + kf) * (s + 2.0).sqrt() / ((h + 2.0 * nf + kf + 1.0) * s.sqrt());
    BonnetCoeffs {
        a,
        b,
        a_prime,
        b_prime,
    }
}

/// Polynomial in `t` stored by ascending monomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPoly {
    pub coeffs: Vec<f64>,
    /// Rounding residuals of `coeffs`; the exact coefficient is `coeffs[i] + coeffs_lo[i]`.
    pub coeffs_lo: Vec<f64>,
    /// Index of the member: `2N` or `2N + 1`.
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub parity: Parity,
}

impl RadialPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(0)
    }

    /// Compensated Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = Dd::ZERO;
        let td = Dd::from(t);
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let lo = self.coeffs_lo.get(i).copied().unwrap_or(0.0);
            acc = acc.mul(td).add(Dd::renorm(*c, lo));
        }
        acc.hi + acc.lo
    }

    pub fn derivative_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| i as f64 * c)
            .collect()
    }

    fn with_coeffs(&self, coeffs: Vec<f64>) -> RadialPoly {
        RadialPoly {
            coeffs_lo: vec![0.0; coeffs.len()],
            coeffs,
            ..self.clone()
        }
    }
}

fn poly_add_scaled(a: &[f64], sa: f64, b: &[f64], sb: f64) -> Vec<f64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0.0) * sa;
            let y = b.get(i).copied().unwrap_or(0.0) * sb;
            x + y
        })
        .collect()
}

fn poly_shift(a: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(0.0);
    out.extend_from_slice(a);
    out
}

fn poly_deriv(a: &[f64]) -> Vec<f64> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect()
}

/// Bonnet coefficients in extended precision.
fn bonnet_dd(n: usize, k: usize, m: usize) -> [Dd; 4] {
    let d = |v: f64| Dd::from(v);
    let (nf, kf) = (n as f64, k as f64);
    // all quantities below are exact small half-integers before the roots
    let h = m as f64 / 2.0;
    let s = (m + 4 * n + 2 * k) as f64;
    let a = d(h + nf + kf)
        .mul(d(s).sqrt())
        .div(d(h + 2.0 * nf + kf).mul(d(s + 2.0).sqrt()))
        .neg();
    let b = if n == 0 {
        Dd::ZERO
    } else {
        d(nf).mul(d(s).sqrt()).div(d(h + 2.0 * nf + kf).mul(d(s - 2.0).sqrt()))
    };
    let a_prime = d(nf + 1.0)
        .mul(d(s + 2.0).sqrt())
        .div(d(h + 2.0 * nf + kf + 1.0).mul(d(s + 4.0).sqrt()))
        .neg();
    let b_prime = d(h + nf + kf)
        .mul(d(s + 2.0).sqrt())
        .div(d(h + 2.0 * nf + kf + 1.0).mul(d(s).sqrt()));
    [a, b, a_prime, b_prime]
}

fn dd_combine(a: &[Dd], sa: Dd, b: &[Dd], sb: Dd) -> Vec<Dd> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Dd::ZERO).mul(sa);
            let y = b.get(i).copied().unwrap_or(Dd::ZERO).mul(sb);
            x.add(y)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSequence {
    pub p: Vec<RadialPoly>,
    pub q: Vec<RadialPoly>,
}

/// `p_0 … p_{N_max}` and `q_0 … q_{N_max}` in the monomial basis.
pub fn radial_sequence(k: usize, m: usize, n_max: usize) -> Result<RadialSequence> {
    if n_max > MAX_SEQUENCE_DEGREE {
        return Err(Error::range(
            "sequence degree",
            format!("{n_max} > {MAX_SEQUENCE_DEGREE}"),
        ));
    }
    if m < 2 {
        return Err(Error::range("dimension", format!("m = {m} < 2")));
    }
    let meta = |n: usize, coeffs: &[Dd]| RadialPoly {
        coeffs: coeffs.iter().map(|c| c.hi).collect(),
        coeffs_lo: coeffs.iter().map(|c| c.lo).collect(),
        n,
        k,
        m,
        parity: Parity::of(n),
    };
    let one = Dd::from(1.0);
    let mut pn = vec![Dd::from((2 * k + m) as f64).sqrt()];
    let mut q_prev: Vec<Dd> = Vec::new();
    let mut p = Vec::with_capacity(n_max + 1);
    let mut q = Vec::with_capacity(n_max + 1);
    for big_n in 0..=n_max {
        let [a, b, a_prime, b_prime] = bonnet_dd(big_n, k, m);
        assert!(a.hi != 0.0 && a_prime.hi != 0.0);
        p.push(meta(2 * big_n, &pn));
        let qn = dd_combine(&pn, one.div(a), &q_prev, b.div(a).neg());
        q.push(meta(2 * big_n + 1, &qn));
        if big_n < n_max {
            let mut shifted = vec![Dd::ZERO];
            shifted.extend_from_slice(&qn);
            pn = dd_combine(&shifted, one.div(a_prime).neg(), &pn, b_prime.div(a_prime).neg());
        }
        q_prev = qn;
    }
    Ok(RadialSequence { p, q })
}

/// Value-space evaluation of the same recurrence; stable for every degree.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialRecurrence {
    pub k: usize,
    pub m: usize,
    coeffs: Vec<BonnetCoeffs>,
}

impl RadialRecurrence {
    pub fn new(k: usize, m: usize, count: usize) -> Self {
        RadialRecurrence {
            k,
            m,
            coeffs: (0..count).map(|n| bonnet_coeffs(n, k, m)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Fills `p[0..len]` and `q[0..len]` with `p_N(t)` and `q_N(t)`.
    pub fn eval_into(&self, t: f64, p: &mut [f64], q: &mut [f64]) {
        let count = self.coeffs.len();
        assert!(p.len() >= count && q.len() >= count);
        if count == 0 {
            return;
        }
        let mut pn = ((2 * self.k + self.m) as f64).sqrt();
        let mut q_prev = 0.0;
        for (n, bc) in self.coeffs.iter().enumerate() {
            p[n] = pn;
            let qn = (pn - bc.b * q_prev) / bc.a;
            q[n] = qn;
            pn = (-t * qn - bc.b_prime * pn) / bc.a_prime;
            q_prev = qn;
        }
    }

    pub fn eval(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let mut p = vec![0.0; self.len()];
        let mut q = vec![0.0; self.len()];
        self.eval_into(t, &mut p, &mut q);
        (p, q)
    }
}

/// The full polynomial `p_N(|x|²) Y` (n = 2N) or `x q_N(|x|²) Y` (n = 2N + 1).
pub fn assemble_polynomial(n: usize, k: usize, m: usize, y: &PolyMultivector) -> Result<PolyMultivector> {
    if y.dim() != m {
        return Err(Error::DimensionMismatch {
            left: m,
            right: y.dim(),
        });
    }
    let big_n = n / 2;
    let seq = radial_sequence(k, m, big_n)?;
    Ok(match Parity::of(n) {
        Parity::Even => y.times_radial(&seq.p[big_n].coeffs),
        Parity::Odd => {
            PolyMultivector::vector_variable(m).mul(&y.times_radial(&seq.q[big_n].coeffs))
        }
    })
}

/// The `c = 0` operator `f ↦ ∂((1 − |x|²)∂f)` reduced to the radial factor.
/// Its eigenvalues on `p_N`, `q_N` are the nonnegative `c0_eigenvalue` values.
pub fn apply_l0_radial(p: &RadialPoly) -> RadialPoly {
    let (k, m) = (p.k as f64, p.m as f64);
    let f = &p.coeffs;
    match p.parity {
        Parity::Even => {
            // −2t φ′ − (2k+m) φ with φ = 2(1 − t) F′
            let df = poly_deriv(f);
            let phi = poly_add_scaled(&df, 2.0, &poly_shift(&df), -2.0);
            let dphi = poly_deriv(&phi);
            p.with_coeffs(poly_add_scaled(
                &poly_shift(&dphi),
                -2.0,
                &phi,
                -(2.0 * k + m),
            ))
        }
        Parity::Odd => {
            // −2 [(1 − t)(2t G′ + (2k+m) G)]′
            let inner = poly_add_scaled(&poly_shift(&poly_deriv(f)), 2.0, f, 2.0 * k + m);
            let phi = poly_add_scaled(&inner, 1.0, &poly_shift(&inner), -1.0);
            p.with_coeffs(poly_add_scaled(&poly_deriv(&phi), -2.0, &[], 0.0))
        }
    }
}

/// Unnormalized Rodrigues polynomial `∂ⁿ[(1 + x²)ⁿ Y]`.
pub fn rodrigues(n: usize, y: &PolyMultivector) -> PolyMultivector {
    let m = y.dim();
    let x = PolyMultivector::vector_variable(m);
    let one_plus_x2 = PolyMultivector::constant(Multivector::scalar(m, 1.0)).add(&x.mul(&x));
    let mut f = y.clone();
    for _ in 0..n {
        f = one_plus_x2.mul(&f);
    }
    for _ in 0..n {
        f = dirac(&f);
    }
    f
}

/// Largest `n` accepted by [`dirac_coupling_check`].
pub const MAX_COUPLING_ORDER: usize = 10;

/// Relative residual of `∂C_{n+1} = 4(n+1)[(n+k+m/2) C_n − n ∂C_{n−1}]`
/// on the Rodrigues polynomials built from `y` of degree `k`.
pub fn dirac_coupling_check(n: usize, k: usize, y: &PolyMultivector) -> Result<f64> {
    if n > MAX_COUPLING_ORDER {
        return Err(Error::range("coupling order", format!("{n} > {MAX_COUPLING_ORDER}")));
    }
    let m = y.dim();
    let c_n = rodrigues(n, y);
    let lhs = dirac(&rodrigues(n + 1, y));
    let mut rhs = c_n.scale_real((n + k) as f64 + m as f64 / 2.0);
    if n > 0 {
        rhs = rhs.sub(&dirac(&rodrigues(n - 1, y)).scale_real(n as f64));
    }
    let rhs = rhs.scale_real(4.0 * (n + 1) as f64);
    let scale = lhs.max_abs_coeff().max(rhs.max_abs_coeff()).max(1e-300);
    Ok(lhs.max_abs_diff(&rhs) / scale)
}
