//! Truncated spectrum accumulation sums
//! `G(|x|²) = Σ_{k ≤ K} Σ_n Σ_i λ_n^k |ψ_n^{k,i}(x)|²`, which increase
//! towards `c^m |B(1)|`.
use rayon::prelude::*;

use crate::cpswf::make_cpswf;
use crate::error::{Error, Result};
use crate::monogenics::dim_monogenic;
use crate::special::{ball_volume, sphere_area};

/// `Σ_i |Y_k^i(ω)|²` on the unit sphere: `d_k / |S^{m−1}|`.
pub fn zonal_trace(m: usize, k: usize) -> Result<f64> {
    Ok(dim_monogenic(m, k)? as f64 / sphere_area(m))
}

/// `c^m |B(1)|`.
pub fn limit_value(m: usize, c: f64) -> f64 {
    c.powi(m as i32) * ball_volume(m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccumulationSum {
    pub m: usize,
    pub c: f64,
    /// Largest monogenic degree included.
    pub k_max: usize,
    /// Largest radial order per parity; `n ≤ 2 n_max + 1`.
    pub n_max: usize,
    pub radii: Vec<f64>,
    /// `t = r²`.
    pub t: Vec<f64>,
    /// `by_k[K][j]`: the sum over `k ≤ K` at `radii[j]`.
    pub by_k: Vec<Vec<f64>>,
}

impl AccumulationSum {
    /// The full truncated sum `G(r_j²)`.
    pub fn values(&self) -> &[f64] {
        &self.by_k[self.k_max]
    }

    pub fn limit(&self) -> f64 {
        limit_value(self.m, self.c)
    }
}

/// Contributions of a single monogenic degree on `radii`.
pub fn degree_terms(m: usize, c: f64, k: usize, n_max: usize, radii: &[f64], tol: f64) -> Result<Vec<f64>> {
    let w = zonal_trace(m, k)?;
    let mut acc = vec![0.0; radii.len()];
    for n in 0..=(2 * n_max + 1) {
        let psi = make_cpswf(n, k, m, c, tol)?;
        for (a, &r) in acc.iter_mut().zip(radii) {
            let f = psi.eval_radial(r)? * r.powi(k as i32);
            *a += psi.lambda * f * f * w;
        }
    }
    Ok(acc)
}

/// Truncated accumulation sum with cumulative values for every `K`.
pub fn partial_sum(m: usize, c: f64, k_max: usize, n_max: usize, radii: &[f64], tol: f64) -> Result<AccumulationSum> {
    if !(c > 0.0) {
        return Err(Error::range("bandwidth", format!("c = {c}")));
    }
    if let Some(r) = radii.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(Error::range("radius", format!("{r} not in [0, 1]")));
    }
    let per_k: Vec<Vec<f64>> = (0..=k_max)
        .into_par_iter()
        .map(|k| degree_terms(m, c, k, n_max, radii, tol))
        .collect::<Result<_>>()?;
    let mut by_k = Vec::with_capacity(k_max + 1);
    let mut running = vec![0.0; radii.len()];
    for terms in &per_k {
        for (a, t) in running.iter_mut().zip(terms) {
            *a += t;
        }
        by_k.push(running.clone());
    }
    Ok(AccumulationSum {
        m,
        c,
        k_max,
        n_max,
        radii: radii.to_vec(),
        t: radii.iter().map(|r| r * r).collect(),
        by_k,
    })
}

/// `points` equispaced radii on `[0, 1]`.
pub fn uniform_radii(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|j| j as f64 / (points - 1) as f64).collect(),
    }
}
