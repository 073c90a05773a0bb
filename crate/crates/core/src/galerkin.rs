//! Truncated Galerkin matrices of the prolate operator in the normalized
//! Clifford-Legendre basis, and their symmetric tridiagonal eigenproblems.

use crate::dd::{Dd, PI_DD};
use crate::error::{Error, Result};
use crate::legendre::Parity;

/// Largest truncation the adaptive solver will try.
pub const MAX_TRUNCATION: usize = 4096;

/// Iteration cap per eigenvalue in the QL sweep.
const QL_MAX_ITER: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    /// `offdiag[i]` couples rows `i` and `i + 1`.
    pub offdiag: Vec<f64>,
    /// Rounding residuals: the exact entries are `diag + diag_lo`.
    pub diag_lo: Vec<f64>,
    pub offdiag_lo: Vec<f64>,
    pub parity: Parity,
    pub k: usize,
    pub m: usize,
    pub c: f64,
}

impl SymTridiag {
    /// Bare matrix without Galerkin metadata.
    pub fn from_parts(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert_eq!(offdiag.len() + 1, diag.len().max(1));
        SymTridiag {
            diag_lo: vec![0.0; diag.len()],
            offdiag_lo: vec![0.0; offdiag.len()],
            diag,
            offdiag,
            parity: Parity::Even,
            k: 0,
            m: 2,
            c: 0.0,
        }
    }

    fn from_dd(diag: &[Dd], offdiag: &[Dd], parity: Parity, k: usize, m: usize, c: f64) -> Self {
        SymTridiag {
            diag: diag.iter().map(|v| v.hi).collect(),
            offdiag: offdiag.iter().map(|v| v.hi).collect(),
            diag_lo: diag.iter().map(|v| v.lo).collect(),
            offdiag_lo: offdiag.iter().map(|v| v.lo).collect(),
            parity,
            k,
            m,
            c,
        }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let n = self.size();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
                left + self.diag[i].abs() + right
            })
            .fold(0.0, f64::max)
    }

    /// `M v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.size();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Even-family matrix of size `t`.
pub fn build_even(k: usize, m: usize, c: f64, t: usize) -> SymTridiag {
    assert!(t >= 1);
    let kk = Dd::from(k as f64 + m as f64 / 2.0);
    let w = weight_dd(c);
    let d = Dd::from;
    let diag: Vec<Dd> = (0..t)
        .map(|i| {
            let fi = d(i as f64);
            let s = kk.add(d(2.0 * i as f64));
            let ki = kk.add(fi);
            // the second sub-term carries i², so it is 0 at i = 0 even when s − 1 = 0
            let lower = if i == 0 { Dd::ZERO } else { fi.mul(fi).div(s.add(d(-1.0))) };
            let upper = ki.mul(ki).div(s.add(d(1.0)));
            d(4.0).mul(fi).mul(ki).add(w.mul(upper.add(lower)).div(s))
        })
        .collect();
    let offdiag: Vec<Dd> = (0..t.saturating_sub(1))
        .map(|i| {
            let fi = d(i as f64);
            let s = kk.add(d(2.0 * i as f64));
            let num = w.mul(fi.add(d(1.0))).mul(kk.add(fi));
            num.div(s.add(d(1.0)).mul(s.add(d(2.0)).mul(s).sqrt())).neg()
        })
        .collect();
    SymTridiag::from_dd(&diag, &offdiag, Parity::Even, k, m, c)
}

/// Odd-family matrix of size `t`.
pub fn build_odd(k: usize, m: usize, c: f64, t: usize) -> SymTridiag {
    assert!(t >= 1);
    let kk = Dd::from(k as f64 + m as f64 / 2.0);
    let w = weight_dd(c);
    let d = Dd::from;
    let diag: Vec<Dd> = (0..t)
        .map(|i| {
            let fi = d(i as f64);
            let f1 = d(i as f64 + 1.0);
            let s = kk.add(d(2.0 * i as f64 + 1.0));
            let ki = kk.add(fi);
            let lower = ki.mul(ki).div(s.add(d(-1.0)));
            let upper = f1.mul(f1).div(s.add(d(1.0)));
            d(4.0).mul(f1).mul(ki).add(w.mul(lower.add(upper)).div(s))
        })
        .collect();
    let offdiag: Vec<Dd> = (0..t.saturating_sub(1))
        .map(|i| {
            let fi = d(i as f64);
            let s = kk.add(d(2.0 * i as f64 + 2.0));
            let num = w.mul(fi.add(d(1.0))).mul(kk.add(fi).add(d(1.0)));
            num.div(s.mul(s.add(d(1.0)).mul(s.add(d(-1.0))).sqrt())).neg()
        })
        .collect();
    SymTridiag::from_dd(&diag, &offdiag, Parity::Odd, k, m, c)
}

/// `4π²c²` in double-double.
fn weight_dd(c: f64) -> Dd {
    let cd = Dd::from(c);
    Dd::from(4.0).mul(PI_DD).mul(PI_DD).mul(cd).mul(cd)
}

/// `max |a − b − shift·I|` over entries, evaluated on the extended entries.
pub fn shifted_gap(a: &SymTridiag, b: &SymTridiag, shift: f64) -> f64 {
    assert_eq!(a.size(), b.size());
    let entry = |hi: f64, lo: f64| Dd::renorm(hi, lo);
    let mut worst = 0.0f64;
    for i in 0..a.size() {
        let g = entry(a.diag[i], a.diag_lo[i])
            .add(entry(b.diag[i], b.diag_lo[i]).neg())
            .add(Dd::from(-shift));
        worst = worst.max(g.hi.abs());
    }
    for i in 0..a.offdiag.len() {
        let g = entry(a.offdiag[i], a.offdiag_lo[i]).add(entry(b.offdiag[i], b.offdiag_lo[i]).neg());
        worst = worst.max(g.hi.abs());
    }
    worst
}

pub fn build(parity: Parity, k: usize, m: usize, c: f64, t: usize) -> SymTridiag {
    match parity {
        Parity::Even => build_even(k, m, c, t),
        Parity::Odd => build_odd(k, m, c, t),
    }
}

/// Implicit QL with Wilkinson-type shifts. When `z` is given it must hold an
/// orthogonal matrix (row-major, `n × n`); its columns receive the rotations.
fn ql_implicit(d: &mut [f64], offdiag: &[f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(offdiag);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm < n - 1 {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::Convergence(format!(
                    "QL iteration stalled at index {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[mm] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = mm;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for row in 0..n {
                        let zi = z[row * n + i];
                        let zi1 = z[row * n + i + 1];
                        z[row * n + i + 1] = s * zi + c * zi1;
                        z[row * n + i] = c * zi - s * zi1;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues in ascending order.
pub fn eigenvalues_sym_tridiag(mat: &SymTridiag) -> Result<Vec<f64>> {
    let mut d = mat.diag.clone();
    ql_implicit(&mut d, &mat.offdiag, None)?;
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Fix the sign so that the first entry of largest magnitude is positive.
fn normalize_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= n;
    }
    normalize_sign(v);
}

/// All eigenpairs, ascending, with unit vectors under the sign convention.
pub fn eig_sym_tridiag(mat: &SymTridiag) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = mat.size();
    let mut d = mat.diag.clone();
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    ql_implicit(&mut d, &mat.offdiag, Some(&mut z))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok(order
        .into_iter()
        .map(|j| {
            let mut v: Vec<f64> = (0..n).map(|row| z[row * n + j]).collect();
            normalize(&mut v);
            (d[j], v)
        })
        .collect())
}

/// Eigenvector for an accurate eigenvalue by a twisted factorization:
/// forward and backward pivots meet at the index where the twisted pivot is
/// smallest, and ratios are propagated outward from there. Components far
/// from the peak keep full relative accuracy.
pub fn twisted_eigenvector(mat: &SymTridiag, lambda: f64) -> Vec<f64> {
    let n = mat.size();
    if n == 1 {
        return vec![1.0];
    }
    let d = &mat.diag;
    let e = &mat.offdiag;
    let tiny = f64::MIN_POSITIVE.sqrt() * mat.norm_inf().max(1.0);
    let guard = |x: f64| if x == 0.0 { tiny } else { x };
    let mut fwd = vec![0.0; n];
    fwd[0] = guard(d[0] - lambda);
    for i in 1..n {
        fwd[i] = guard(d[i] - lambda - e[i - 1] * e[i - 1] / fwd[i - 1]);
    }
    let mut bwd = vec![0.0; n];
    bwd[n - 1] = guard(d[n - 1] - lambda);
    for i in (0..n - 1).rev() {
        bwd[i] = guard(d[i] - lambda - e[i] * e[i] / bwd[i + 1]);
    }
    let mut twist = 0;
    let mut best = f64::INFINITY;
    for r in 0..n {
        let gamma = (fwd[r] + bwd[r] - (d[r] - lambda)).abs();
        if gamma < best {
            best = gamma;
            twist = r;
        }
    }
    let mut v = vec![0.0; n];
    v[twist] = 1.0;
    for i in (0..twist).rev() {
        v[i] = -e[i] * v[i + 1] / fwd[i];
    }
    for i in twist + 1..n {
        v[i] = -e[i - 1] * v[i - 1] / bwd[i];
    }
    normalize(&mut v);
    v
}

/// Converged eigenpair of one Galerkin family.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialEigenpair {
    pub chi: f64,
    pub coeffs: Vec<f64>,
    pub truncation: usize,
    /// `|χ(T) − χ(T/2)|` at acceptance.
    pub convergence: f64,
}

/// Starting truncation for the adaptive solver.
pub fn initial_truncation(big_n: usize, c: f64) -> usize {
    2 * big_n + 16 + (2.0 * c).ceil() as usize
}

/// The `N`-th ascending eigenpair, truncation doubled until both the
/// eigenvalue and the coefficient tail settle below `tol`.
pub fn solve_radial(
    parity: Parity,
    k: usize,
    m: usize,
    c: f64,
    big_n: usize,
    tol: f64,
) -> Result<RadialEigenpair> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::range("bandwidth", format!("c = {c}")));
    }
    if !(tol > 0.0) {
        return Err(Error::range("tolerance", format!("{tol}")));
    }
    if m < 2 {
        return Err(Error::range("dimension", format!("m = {m} < 2")));
    }
    let mut t = initial_truncation(big_n, c);
    let mut chi_prev = eigenvalues_sym_tridiag(&build(parity, k, m, c, t))?[big_n];
    loop {
        let t2 = 2 * t;
        if t2 > MAX_TRUNCATION {
            return Err(Error::Convergence(format!(
                "truncation exceeded {MAX_TRUNCATION} for n = {}, k = {k}, c = {c}",
                2 * big_n + parity.bit()
            )));
        }
        let mat = build(parity, k, m, c, t2);
        let chi = eigenvalues_sym_tridiag(&mat)?[big_n];
        let change = (chi - chi_prev).abs();
        let coeffs = twisted_eigenvector(&mat, chi);
        let tail = coeffs[t2 - 2].abs().max(coeffs[t2 - 1].abs());
        if change <= tol * (1.0 + chi.abs()) && tail <= tol {
            return Ok(RadialEigenpair {
                chi,
                coeffs,
                truncation: t2,
                convergence: change,
            });
        }
        t = t2;
        chi_prev = chi;
    }
}

/// Coefficient of `|x|²` multiplication on the even family:
/// `t p_i = a_i p_{i+1} + b_i p_i + c_i p_{i−1}`.
pub fn radial_multiplier_even(i: usize, k: usize, m: usize) -> (f64, f64, f64) {
    use crate::legendre::bonnet_coeffs;
    let cur = bonnet_coeffs(i, k, m);
    let a = -cur.a * cur.a_prime;
    let (b, c) = if i == 0 {
        (-cur.a * cur.b_prime, 0.0)
    } else {
        let prev = bonnet_coeffs(i - 1, k, m);
        (
            -(cur.a * cur.b_prime + prev.a_prime * cur.b),
            -cur.b * prev.b_prime,
        )
    };
    (a, b, c)
}

/// Same for the odd family `x q_i Y`.
pub fn radial_multiplier_odd(i: usize, k: usize, m: usize) -> (f64, f64, f64) {
    use crate::legendre::bonnet_coeffs;
    let cur = bonnet_coeffs(i, k, m);
    let next = bonnet_coeffs(i + 1, k, m);
    let a = -cur.a_prime * next.a;
    let b = -(cur.a_prime * next.b + cur.b_prime * cur.a);
    let c = -cur.b_prime * cur.b;
    (a, b, c)
}
