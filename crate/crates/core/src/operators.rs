//! The finite Fourier transform on the unit ball, the time-frequency
//! limiting operator, their radial reductions, and a verification harness.
//!
//! A sector is fixed by the monogenic degree `k` and the parity `p`; its
//! Bessel order is `ν = k + p + m/2 − 1`. A function in the sector is
//! described by its radial part `R` (as returned by
//! [`Cpswf::eval_radial`]), so that the field is `R(r) r^k Y(ω)` or
//! `R(r) r^k ω Y(ω)`. Both operators map a sector to itself.
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::clifford::{Multivector, VectorM};
use crate::cpswf::{i_pow, Cpswf};
use crate::error::{Error, Result};
use crate::monogenics::MonogenicBasis;
use crate::special::{ball_volume, bessel_j_scaled, gauss_rule_unit_interval, QuadratureRule};

/// Default number of Gauss nodes for the radial integrals.
pub const DEFAULT_NODES: usize = 128;
/// Default verification grid size.
pub const DEFAULT_GRID: usize = 64;

/// `∫_{B(1)} e^{2πic⟨ξ,x⟩} dξ = π^{m/2} J_{m/2}(2πc|x|) / (πc|x|)^{m/2}`.
pub fn kernel_kc(x: &VectorM, c: f64, m: usize) -> Result<f64> {
    if x.dim() != m {
        return Err(Error::DimensionMismatch { left: m, right: x.dim() });
    }
    let h = m as f64 / 2.0;
    Ok(PI.powf(h) * bessel_j_scaled(h, 2.0 * PI * c * x.norm()))
}

/// Radial Hankel transform of a full profile `u` (field `u(r) Y(ω)` with
/// `Y` a spherical harmonic of order `ν + 1 − m/2`):
/// `2π c^{1−m/2} s^{1−m/2} ∫₀¹ r^{m/2} u(r) J_ν(2πcrs) dr`.
pub fn hankel_apply(
    u: impl Fn(f64) -> f64,
    nu: f64,
    c: f64,
    m: usize,
    s: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    let h = m as f64 / 2.0;
    let degree = nu + 1.0 - h;
    if degree < -1e-12 || (degree - degree.round()).abs() > 1e-12 {
        return Err(Error::range("Hankel order", format!("ν = {nu} for m = {m}")));
    }
    if !(c > 0.0) {
        return Err(Error::range("bandwidth", format!("c = {c}")));
    }
    let a = 2.0 * PI * c * s;
    let integral = rule.integrate_unit(|r| r.powf(nu + h) * u(r) * bessel_j_scaled(nu, a * r));
    Ok(2.0 * PI * c.powf(1.0 - h) * (PI * c).powf(nu) * s.powf(degree.round()) * integral)
}

/// `M_c(r, s) = 2πc ∫₀¹ ρ J_ν(2πcrρ) J_ν(2πcsρ) dρ` with `ν = k + m/2 − 1`.
pub fn mc_kernel(r: f64, s: f64, c: f64, k: usize, m: usize) -> f64 {
    let nu = k as f64 + m as f64 / 2.0 - 1.0;
    let (a, b) = (2.0 * PI * c * r, 2.0 * PI * c * s);
    2.0 * PI * c * (0.25 * a * b).powf(nu) * lommel_scaled(nu, a, b)
}

/// `∫₀¹ ρ^{2ν+1} S_ν(aρ) S_ν(bρ) dρ` with `S_ν(x) = J_ν(x)/(x/2)^ν`.
fn lommel_scaled(nu: f64, a: f64, b: f64) -> f64 {
    const GAP: f64 = 6e-6;
    if (a - b).abs() <= GAP * a.max(b) {
        // symmetric in (a, b), so the midpoint limit is second order
        let x = 0.5 * (a + b);
        let (s0, s1) = (bessel_j_scaled(nu, x), bessel_j_scaled(nu + 1.0, x));
        return 0.5 * (s0 * s0 - nu * s0 * s1 + 0.25 * x * x * s1 * s1);
    }
    let (sa0, sa1) = (bessel_j_scaled(nu, a), bessel_j_scaled(nu + 1.0, a));
    let (sb0, sb1) = (bessel_j_scaled(nu, b), bessel_j_scaled(nu + 1.0, b));
    0.5 * (a * a * sa1 * sb0 - b * b * sb1 * sa0) / ((a - b) * (a + b))
}

/// Samples of a radial part; the represented values are `i^phase · values`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSamples {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub phase: usize,
    /// `‖f‖² = ∫₀¹ |R(r)|² r^{weight_exponent} dr` per unit harmonic.
    pub weight_exponent: usize,
}

impl RadialSamples {
    pub fn complex_values(&self) -> Vec<Complex64> {
        let ph = i_pow(self.phase);
        self.values.iter().map(|v| ph * *v).collect()
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    for (j, &s) in grid.iter().enumerate() {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::range("grid", format!("{s} not in [0, 1]")));
        }
        if j > 0 && s <= grid[j - 1] {
            return Err(Error::range("grid", "not strictly increasing".to_string()));
        }
    }
    Ok(())
}

/// `n` Chebyshev points of the first kind mapped to `(0, 1)`, ascending.
pub fn chebyshev_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| 0.5 * (1.0 - ((2 * j + 1) as f64 * PI / (2 * n) as f64).cos()))
        .collect()
}

/// Sector data shared by the radial operators.
#[derive(Debug, Clone, Copy)]
struct Sector {
    nu: f64,
    p: i32,
    c: f64,
    m: usize,
}

impl Sector {
    fn of(psi: &Cpswf) -> Self {
        Sector {
            nu: psi.hankel_order(),
            p: psi.parity.bit() as i32,
            c: psi.c,
            m: psi.m,
        }
    }

    /// Nodes with `w r^{2ν+1−p} R(r)` folded in.
    fn weighted(&self, rule: &QuadratureRule, radial: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
        let e = 2.0 * self.nu + 1.0 - self.p as f64;
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&r, &w)| (r, w * r.powf(e) * radial(r)))
            .collect()
    }

    /// Real Hankel factor on the radial part, without the `s^p` prefactor.
    fn hankel_factor(&self, weighted: &[(f64, f64)], s: f64) -> f64 {
        let h = self.m as f64 / 2.0;
        let a = 2.0 * PI * self.c * s;
        let mut acc = 0.0;
        for &(r, wr) in weighted.iter().rev() {
            acc += wr * bessel_j_scaled(self.nu, a * r);
        }
        2.0 * PI * self.c.powf(1.0 - h) * (PI * self.c).powf(self.nu) * acc
    }

    /// `QP_c` through the `M_c` kernel, without the `s^p` prefactor.
    fn qp_factor(&self, weighted: &[(f64, f64)], s: f64) -> f64 {
        let b = 2.0 * PI * self.c * s;
        let mut acc = 0.0;
        for &(r, wr) in weighted.iter().rev() {
            acc += wr * lommel_scaled(self.nu, 2.0 * PI * self.c * r, b);
        }
        let pc = PI * self.c;
        4.0 * pc * pc * pc.powf(2.0 * self.nu) * acc
    }
}

fn radial_rule(nodes: usize) -> Result<std::sync::Arc<QuadratureRule>> {
    gauss_rule_unit_interval(nodes)
}

/// Radial part of `G_c ψ` on `grid`; carries the sector phase `i^{k+p}`.
pub fn apply_gc(psi: &Cpswf, grid: &[f64], nodes: usize) -> Result<RadialSamples> {
    check_grid(grid)?;
    let sec = Sector::of(psi);
    let rule = radial_rule(nodes)?;
    let w = sec.weighted(&rule, |r| psi.profile(r));
    let values = grid
        .iter()
        .map(|&s| s.powi(sec.p) * sec.hankel_factor(&w, s))
        .collect();
    Ok(RadialSamples {
        grid: grid.to_vec(),
        values,
        phase: psi.sector_phase(),
        weight_exponent: 2 * psi.k + psi.m - 1,
    })
}

/// Radial part of `QP_c ψ = c^m G_c^* G_c ψ` through the `M_c` kernel.
pub fn apply_qpc(psi: &Cpswf, grid: &[f64], nodes: usize) -> Result<RadialSamples> {
    check_grid(grid)?;
    let sec = Sector::of(psi);
    let rule = radial_rule(nodes)?;
    let w = sec.weighted(&rule, |r| psi.profile(r));
    let values = grid
        .iter()
        .map(|&s| s.powi(sec.p) * sec.qp_factor(&w, s))
        .collect();
    Ok(RadialSamples {
        grid: grid.to_vec(),
        values,
        phase: 0,
        weight_exponent: 2 * psi.k + psi.m - 1,
    })
}

/// `QP_c ψ` as two successive Hankel transforms (the second one adjoint).
pub fn apply_qpc_double_hankel(psi: &Cpswf, grid: &[f64], nodes: usize) -> Result<RadialSamples> {
    check_grid(grid)?;
    let sec = Sector::of(psi);
    let rule = radial_rule(nodes)?;
    let w = sec.weighted(&rule, |r| psi.profile(r));
    let inner: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&rho| rho.powi(sec.p) * sec.hankel_factor(&w, rho))
        .collect();
    let e = 2.0 * sec.nu + 1.0 - sec.p as f64;
    let w2: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .zip(&inner)
        .map(|((&r, &wt), &g)| (r, wt * r.powf(e) * g))
        .collect();
    let cm = psi.c.powi(psi.m as i32);
    let values = grid
        .iter()
        .map(|&s| cm * s.powi(sec.p) * sec.hankel_factor(&w2, s))
        .collect();
    Ok(RadialSamples {
        grid: grid.to_vec(),
        values,
        phase: 0,
        weight_exponent: 2 * psi.k + psi.m - 1,
    })
}

/// `QP_c` applied to an arbitrary radial part in the sector `(k, p)`.
pub fn apply_qpc_radial(
    radial: impl Fn(f64) -> f64,
    k: usize,
    parity_bit: usize,
    m: usize,
    c: f64,
    grid: &[f64],
    nodes: usize,
) -> Result<Vec<f64>> {
    check_grid(grid)?;
    let sec = Sector {
        nu: (k + parity_bit) as f64 + m as f64 / 2.0 - 1.0,
        p: parity_bit as i32,
        c,
        m,
    };
    let rule = radial_rule(nodes)?;
    let w = sec.weighted(&rule, radial);
    Ok(grid.iter().map(|&s| s.powi(sec.p) * sec.qp_factor(&w, s)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub nodes: usize,
    pub grid_points: usize,
    pub max_ratio_spread: f64,
    pub max_residual: f64,
    pub max_mu_error: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            nodes: DEFAULT_NODES,
            grid_points: DEFAULT_GRID,
            max_ratio_spread: 1e-6,
            max_residual: 1e-6,
            max_mu_error: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub c: f64,
    /// Least-squares ratio of `G_c ψ` to `ψ` over the grid.
    pub mu_est: Complex64,
    pub lambda_est: f64,
    /// `max |G_cψ − μ_est ψ| / (|μ_est| max|ψ|)`.
    pub ratio_spread: f64,
    /// `max |QP_cψ − λ_est ψ| / max|ψ|`.
    pub residual: f64,
    /// [`Self::residual`] divided by `λ_est`.
    pub scaled_residual: f64,
    /// Relative gap between the two `QP_c` evaluation routes.
    pub route_gap: f64,
    /// `| |μ_est| − |μ| | / |μ|` against the closed form.
    pub mu_error: f64,
    /// Sign of `μ_est / i^{n+k}`.
    pub epsilon_est: f64,
    pub passed: bool,
}

/// Checks that `ψ` is an eigenfunction of `G_c` and `QP_c` on a Chebyshev grid.
pub fn verify(psi: &Cpswf, cfg: &VerifyConfig) -> Result<VerificationReport> {
    if !(psi.c > 0.0) {
        return Err(Error::range("bandwidth", "verification needs c > 0".to_string()));
    }
    let grid = chebyshev_grid(cfg.grid_points);
    let f: Vec<f64> = grid.iter().map(|&r| psi.profile(r)).collect();
    let g = apply_gc(psi, &grid, cfg.nodes)?;
    let qp = apply_qpc(psi, &grid, cfg.nodes)?;
    let qp2 = apply_qpc_double_hankel(psi, &grid, cfg.nodes)?;
    let fmax = f.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let (num, den) = f
        .iter()
        .zip(&g.values)
        .fold((0.0, 0.0), |(n, d), (a, b)| (n + a * b, d + a * a));
    let real_ratio = num / den;
    let mu_est = i_pow(g.phase) * real_ratio;
    let lambda_est = psi.c.powi(psi.m as i32) * mu_est.norm_sqr();
    let ratio_spread = f
        .iter()
        .zip(&g.values)
        .map(|(a, b)| (b - real_ratio * a).abs())
        .fold(0.0, f64::max)
        / (real_ratio.abs() * fmax);
    let residual = f
        .iter()
        .zip(&qp.values)
        .map(|(a, b)| (b - lambda_est * a).abs())
        .fold(0.0, f64::max)
        / fmax;
    let qmax = qp.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let route_gap = qp
        .values
        .iter()
        .zip(&qp2.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / qmax;
    let mu_error = (mu_est.norm() - psi.mu.norm()).abs() / psi.mu.norm();
    let reduced = (mu_est / i_pow(psi.phase_exponent())).re;
    let passed = ratio_spread <= cfg.max_ratio_spread
        && residual <= cfg.max_residual
        && mu_error <= cfg.max_mu_error
        && lambda_est > 0.0;
    Ok(VerificationReport {
        n: psi.n,
        k: psi.k,
        m: psi.m,
        c: psi.c,
        mu_est,
        lambda_est,
        ratio_spread,
        residual,
        scaled_residual: residual / lambda_est,
        route_gap,
        mu_error,
        epsilon_est: reduced.signum(),
        passed,
    })
}

/// [`verify`] over a batch, in input order.
pub fn verify_all(psis: &[Cpswf], cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    psis.par_iter().map(|p| verify(p, cfg)).collect()
}

/// Tensor Gauss × trapezoid rule on the unit disc: `(x, y, weight)`.
pub fn disc_rule(radial_nodes: usize, angles: usize) -> Result<Vec<(f64, f64, f64)>> {
    let rule = gauss_rule_unit_interval(radial_nodes)?;
    let dt = 2.0 * PI / angles as f64;
    let mut out = Vec::with_capacity(radial_nodes * angles);
    for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
        for j in 0..angles {
            let th = j as f64 * dt;
            out.push((r * th.cos(), r * th.sin(), w * r * dt));
        }
    }
    Ok(out)
}

/// Gram matrices of the bandlimited duals `λ^{-1/2} P_c ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualGram {
    pub labels: Vec<(usize, usize, usize)>,
    pub lambda: Vec<f64>,
    /// Inner products over the unit ball; expected `diag(λ)`.
    pub ball: Vec<Vec<Multivector>>,
    /// Inner products over the whole space; expected identity.
    pub whole: Vec<Vec<Multivector>>,
}

fn max_deviation(g: &[Vec<Multivector>], diag: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for (a, row) in g.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            let target = if a == b { diag[a] } else { 0.0 };
            let d = e - &Multivector::scalar(e.dim(), target);
            worst = worst.max(d.max_abs());
        }
    }
    worst
}

impl DualGram {
    pub fn ball_deviation(&self) -> f64 {
        max_deviation(&self.ball, &self.lambda)
    }

    pub fn whole_deviation(&self) -> f64 {
        max_deviation(&self.whole, &vec![1.0; self.lambda.len()])
    }

    /// `∫_{B(1)}|f|² / ∫|f|²` for `f = Σ a_j φ_j` with real `a`.
    pub fn concentration(&self, a: &[f64]) -> f64 {
        let quad = |g: &[Vec<Multivector>]| {
            let mut s = 0.0;
            for (i, row) in g.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    s += a[i] * a[j] * e.scalar_part().re;
                }
            }
            s
        };
        quad(&self.ball) / quad(&self.whole)
    }
}

/// Field `R(r) r^k Y(ω)` or `R(r) r^k ω Y(ω)` from the `t`-factor value.
fn sector_field(psi: &Cpswf, basis: &MonogenicBasis, i: usize, x: &VectorM, factor: f64) -> Result<Multivector> {
    let y = basis.element(i)?.evaluate(x)?;
    Ok(match psi.parity {
        crate::legendre::Parity::Even => y.scale_real(factor),
        crate::legendre::Parity::Odd => (&x.embed() * &y).scale_real(factor),
    })
}

/// Dual orthogonality in the plane, by full-field quadrature on the disc.
pub fn dual_orthogonality_check(psis: &[Cpswf], nodes: usize) -> Result<DualGram> {
    if psis.iter().any(|p| p.m != 2) {
        return Err(Error::UnsupportedDimension(psis.iter().find(|p| p.m != 2).unwrap().m));
    }
    let rule = disc_rule(48, 64)?;
    let bases: Vec<MonogenicBasis> = {
        let kmax = psis.iter().map(|p| p.k).max().unwrap_or(0);
        (0..=kmax).map(|k| crate::monogenics::basis(2, k)).collect::<Result<_>>()?
    };
    let radial = gauss_rule_unit_interval(nodes)?;
    let fields: Vec<(Vec<Multivector>, Vec<Multivector>)> = psis
        .par_iter()
        .map(|psi| {
            let sec = Sector::of(psi);
            let w = sec.weighted(&radial, |r| psi.profile(r));
            let basis = &bases[psi.k];
            let mut plain = Vec::with_capacity(rule.len());
            let mut qp = Vec::with_capacity(rule.len());
            for &(x, y, _) in &rule {
                let v = VectorM::new(vec![x, y]);
                let r = v.norm();
                plain.push(psi.eval_field(basis, 1, &v)?);
                qp.push(sector_field(psi, basis, 1, &v, sec.qp_factor(&w, r))?);
            }
            Ok((plain, qp))
        })
        .collect::<Result<_>>()?;
    let n = psis.len();
    let inner = |a: &[Multivector], b: &[Multivector]| {
        let mut acc = Multivector::zero(2);
        for ((fa, fb), &(_, _, w)) in a.iter().zip(b).zip(&rule) {
            acc += &(&fa.conjugate() * fb).scale_real(w);
        }
        acc
    };
    let lambda: Vec<f64> = psis.iter().map(|p| p.lambda).collect();
    let mut ball = vec![vec![Multivector::zero(2); n]; n];
    let mut whole = vec![vec![Multivector::zero(2); n]; n];
    for a in 0..n {
        for b in 0..n {
            let s = 1.0 / (lambda[a] * lambda[b]).sqrt();
            ball[a][b] = inner(&fields[a].1, &fields[b].1).scale_real(s);
            whole[a][b] = inner(&fields[a].1, &fields[b].0).scale_real(s);
        }
    }
    Ok(DualGram {
        labels: psis.iter().map(|p| (p.n, p.k, 1)).collect(),
        lambda,
        ball,
        whole,
    })
}

/// Brute-force quadrature of the defining integrals in the plane.
pub mod direct {
    use super::*;
    use crate::special::bessel_j;

    /// `∫_{B(1)} e^{2πic⟨ξ,x⟩} dξ`.
    pub fn kc(x: [f64; 2], c: f64, rule: &[(f64, f64, f64)]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(u, v, w) in rule {
            acc += Complex64::from_polar(w, 2.0 * PI * c * (u * x[0] + v * x[1]));
        }
        acc
    }

    /// `∫_{B(1)} e^{±2πic⟨x,y⟩} f(y) dy` for fields sampled on `rule`.
    pub fn fourier(samples: &[Multivector], x: [f64; 2], c: f64, sign: f64, rule: &[(f64, f64, f64)]) -> Multivector {
        let dim = samples.first().map_or(2, |f| f.dim());
        let mut acc = vec![Complex64::new(0.0, 0.0); 1 << dim];
        for (f, &(u, v, w)) in samples.iter().zip(rule) {
            let e = Complex64::from_polar(w, sign * 2.0 * PI * c * (u * x[0] + v * x[1]));
            for (a, b) in acc.iter_mut().zip(f.coeffs()) {
                *a += e * b;
            }
        }
        Multivector::from_coeffs(dim, acc).expect("coefficient count")
    }

    /// `c² G_c^* G_c f` at each point, both transforms done by quadrature.
    pub fn qp(samples: &[Multivector], points: &[[f64; 2]], c: f64, rule: &[(f64, f64, f64)]) -> Vec<Multivector> {
        let inner: Vec<Multivector> = rule
            .par_iter()
            .map(|&(u, v, _)| fourier(samples, [u, v], c, 1.0, rule))
            .collect();
        points
            .iter()
            .map(|x| fourier(&inner, *x, c, -1.0, rule).scale_real(c * c))
            .collect()
    }

    /// `2πc ∫₀¹ ρ J_ν(2πcrρ) J_ν(2πcsρ) dρ` with `ν = k + m/2 − 1`.
    pub fn mc(r: f64, s: f64, c: f64, k: usize, m: usize, nodes: usize) -> Result<f64> {
        let nu = k as f64 + m as f64 / 2.0 - 1.0;
        let rule = gauss_rule_unit_interval(nodes)?;
        let mut acc = 0.0;
        for (&rho, &w) in rule.nodes.iter().zip(&rule.weights) {
            acc += w * rho * bessel_j(nu, 2.0 * PI * c * r * rho)? * bessel_j(nu, 2.0 * PI * c * s * rho)?;
        }
        Ok(2.0 * PI * c * acc)
    }

    /// The kernel in its printed `J_{ν−1}` cross form, for `ν ≥ 1`.
    pub fn mc_lower_order(r: f64, s: f64, c: f64, k: usize, m: usize) -> Result<f64> {
        let nu = k as f64 + m as f64 / 2.0 - 1.0;
        if nu < 1.0 {
            return Err(Error::range("order", format!("ν = {nu} < 1")));
        }
        let (a, b) = (2.0 * PI * c * r, 2.0 * PI * c * s);
        let num = b * bessel_j(nu - 1.0, b)? * bessel_j(nu, a)? - a * bessel_j(nu - 1.0, a)? * bessel_j(nu, b)?;
        Ok(2.0 * PI * c * num / (a * a - b * b))
    }
}

/// `|B(1)|`, the value of the kernel at the origin.
pub fn kernel_at_origin(m: usize) -> f64 {
    ball_volume(m)
}
