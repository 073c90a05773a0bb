//! Clifford prolate spheroidal wave functions assembled from Galerkin
//! eigenpairs, with their spectral data.
//!
//! For degree index `n = 2N + p` and monogenic degree `k` the function is
//! `P(|x|²) Y(x)` when `p = 0` and `x Q(|x|²) Y(x)` when `p = 1`, where
//! `P = Σ α_i p_i` and `Q = Σ β_i q_i`.
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::clifford::{Multivector, VectorM};
use crate::error::{Error, Result};
use crate::galerkin::solve_radial;
use crate::legendre::{Parity, RadialRecurrence};
use crate::monogenics::MonogenicBasis;
use crate::special::gamma_fn;

/// Default convergence tolerance for the Galerkin truncation.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Cpswf {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub c: f64,
    pub parity: Parity,
    /// Legendre coefficients α (even) or β (odd), unit Euclidean norm.
    pub coeffs: Vec<f64>,
    pub chi: f64,
    pub truncation: usize,
    recurrence: RadialRecurrence,
    /// Radial factor at the origin.
    pub p0: f64,
    /// Eigenvalue of the finite Fourier transform.
    pub mu: Complex64,
    /// Concentration eigenvalue `c^m |μ|²`.
    pub lambda: f64,
    /// `μ = ε i^{n+k} |μ|`, with ε = ±1.
    pub epsilon: f64,
}

/// `i^e` for an integer exponent.
pub fn i_pow(e: usize) -> Complex64 {
    match e % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl Cpswf {
    /// `N` with `n = 2N + parity`.
    pub fn radial_order(&self) -> usize {
        self.n / 2
    }

    /// `P(t)` or `Q(t)`: the polynomial factor in `t = |x|²`.
    pub fn radial_factor(&self, t: f64) -> f64 {
        let len = self.coeffs.len();
        let mut p = vec![0.0; len];
        let mut q = vec![0.0; len];
        self.recurrence.eval_into(t, &mut p, &mut q);
        let basis = match self.parity {
            Parity::Even => &p,
            Parity::Odd => &q,
        };
        // smallest terms first
        let mut acc = 0.0;
        for i in (0..len).rev() {
            acc += self.coeffs[i] * basis[i];
        }
        acc
    }

    /// Radial profile: `P(r²)` (even) or `r Q(r²)` (odd).
    pub fn eval_radial(&self, r: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::range("radius", format!("{r} not in [0, 1]")));
        }
        Ok(self.profile(r))
    }

    pub(crate) fn profile(&self, r: f64) -> f64 {
        let f = self.radial_factor(r * r);
        match self.parity {
            Parity::Even => f,
            Parity::Odd => r * f,
        }
    }

    /// `P(0)` or `Q(0)`, without the odd prefactor.
    pub fn value_at_zero(&self) -> f64 {
        self.p0
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn lambda_of(&self) -> f64 {
        self.lambda
    }

    /// Exponent `(n + k) mod 4` of the phase `i^{n+k}`.
    pub fn phase_exponent(&self) -> usize {
        (self.n + self.k) % 4
    }

    /// Exponent of the phase of `G_c` on this sector, `(k + parity) mod 4`.
    pub fn sector_phase(&self) -> usize {
        (self.k + self.parity.bit()) % 4
    }

    /// Order of the Bessel kernel for this sector.
    pub fn hankel_order(&self) -> f64 {
        (self.k + self.parity.bit()) as f64 + self.m as f64 / 2.0 - 1.0
    }

    /// Field value `P(|x|²) Y_k^i(x)` or `x Q(|x|²) Y_k^i(x)`, `i` 1-based.
    pub fn eval_field(&self, basis: &MonogenicBasis, i: usize, x: &VectorM) -> Result<Multivector> {
        if basis.m != self.m {
            return Err(Error::DimensionMismatch {
                left: self.m,
                right: basis.m,
            });
        }
        if basis.k != self.k {
            return Err(Error::range(
                "basis degree",
                format!("basis has k = {}, function has k = {}", basis.k, self.k),
            ));
        }
        if x.dim() != self.m {
            return Err(Error::DimensionMismatch {
                left: self.m,
                right: x.dim(),
            });
        }
        let t = x.norm_sqr();
        if t > 1.0 + 1e-12 {
            return Err(Error::range("point", format!("|x| = {} > 1", t.sqrt())));
        }
        let y = basis.element(i)?.evaluate_slice(&x.0);
        let f = self.radial_factor(t);
        Ok(match self.parity {
            Parity::Even => y.scale_real(f),
            Parity::Odd => (&x.embed() * &y).scale_real(f),
        })
    }
}

/// Closed-form eigenvalue of the finite Fourier transform from the first
/// Legendre coefficient and the radial factor at the origin.
fn mu_closed_form(parity: Parity, k: usize, m: usize, c: f64, first: f64, p0: f64) -> Result<Complex64> {
    if p0 == 0.0 || !p0.is_finite() {
        return Err(Error::Convergence("radial factor vanishes at the origin".into()));
    }
    let h = m as f64 / 2.0;
    let kf = k as f64;
    let real = match parity {
        Parity::Even => {
            first * (2.0 * kf + m as f64).sqrt() * PI.powf(kf + h) * c.powi(k as i32)
                / (gamma_fn(kf + h + 1.0)? * p0)
        }
        Parity::Odd => {
            -first * (2.0 * kf + m as f64 + 2.0).sqrt() * PI.powf(kf + h + 1.0) * c.powi(k as i32 + 1)
                / (gamma_fn(kf + h + 2.0)? * p0)
        }
    };
    Ok(i_pow(k + parity.bit()) * real)
}

/// Builds the degree-(n, k) function in `R^m` for bandwidth `c ≥ 0`.
/// At `c = 0` the concentration eigenvalue is 0.
pub fn make_cpswf(n: usize, k: usize, m: usize, c: f64, tol: f64) -> Result<Cpswf> {
    let parity = Parity::of(n);
    let big_n = n / 2;
    let pair = solve_radial(parity, k, m, c, big_n, tol)?;
    let recurrence = RadialRecurrence::new(k, m, pair.coeffs.len());
    let mut psi = Cpswf {
        n,
        k,
        m,
        c,
        parity,
        coeffs: pair.coeffs,
        chi: pair.chi,
        truncation: pair.truncation,
        recurrence,
        p0: 0.0,
        mu: Complex64::new(0.0, 0.0),
        lambda: 0.0,
        epsilon: 1.0,
    };
    psi.p0 = psi.radial_factor(0.0);
    psi.mu = mu_closed_form(parity, k, m, c, psi.coeffs[0], psi.p0)?;
    psi.lambda = c.powi(m as i32) * psi.mu.norm_sqr();
    let reduced = (psi.mu / i_pow(psi.sector_phase())).re;
    let flip = if big_n % 2 == 0 { 1.0 } else { -1.0 };
    psi.epsilon = if reduced >= 0.0 { flip } else { -flip };
    Ok(psi)
}

/// All `(k, n)` pairs with `k ∈ ks`, `n < count`, sorted by `(k, n)`.
pub fn make_batch(m: usize, c: f64, ks: &[usize], count: usize, tol: f64) -> Result<Vec<Cpswf>> {
    let jobs: Vec<(usize, usize)> = ks
        .iter()
        .flat_map(|&k| (0..count).map(move |n| (k, n)))
        .collect();
    let mut out: Vec<Cpswf> = jobs
        .par_iter()
        .map(|&(k, n)| make_cpswf(n, k, m, c, tol))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|p| (p.k, p.n));
    Ok(out)
}
