//! The ξ eigenproblem in the basis of zero-field parabolic functions.
//!
//! With x = ξ/n and φ_j = N_j f_j (unit norm in dξ), the operator
//! −d/dξ ξ d/dξ + ξ/(4n²) + m²/(4ξ) + Fξ²/4 has matrix
//! H = diag((j + (m+1)/2)/n) + (F n²/4) X², where X is the tridiagonal
//! matrix of x: X_jj = 2j+m+1, X_{j,j+1} = −√((j+1)(j+m+1)).
//! X² is formed from X on one extra basis function so that the truncated
//! matrix is exact. H is pentadiagonal; eigenvalues are β.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::specfun::Dd;

/// Symmetric pentadiagonal matrix in double-double: `diag[j]`, `off1[j]`
/// = H_{j,j+1}, `off2[j]` = H_{j,j+2}.
#[derive(Clone, Debug)]
pub struct PentaMatrix {
    pub diag: Vec<Dd>,
    pub off1: Vec<Dd>,
    pub off2: Vec<Dd>,
}

impl PentaMatrix {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Dd {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        match b - a {
            0 => self.diag[a],
            1 => self.off1[a],
            2 => self.off2[a],
            _ => Dd::ZERO,
        }
    }

    pub fn mul_vec(&self, v: &[Dd]) -> Vec<Dd> {
        let n = self.size();
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(2);
                let hi = (i + 2).min(n - 1);
                (lo..=hi).map(|j| self.get(i, j) * v[j]).sum()
            })
            .collect()
    }

    pub fn to_f64_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| self.get(i, j).to_f64())
    }
}

/// Stark Hamiltonian of dimension `size` for quantum numbers (n, m) and field F.
pub fn stark_matrix(n: f64, m: usize, field: f64, size: usize) -> PentaMatrix {
    let mf = m as f64;
    let ext = size + 2;
    let xd: Vec<Dd> = (0..ext).map(|j| Dd::new(2.0 * j as f64 + mf + 1.0)).collect();
    let xo: Vec<Dd> = (0..ext)
        .map(|j| -Dd::new((j as f64 + 1.0) * (j as f64 + mf + 1.0)).sqrt())
        .collect();
    let scale = Dd::new(field) * n * n / 4.0;
    let mut diag = Vec::with_capacity(size);
    let mut off1 = Vec::with_capacity(size);
    let mut off2 = Vec::with_capacity(size);
    for j in 0..size {
        let left = if j > 0 { xo[j - 1].sqr() } else { Dd::ZERO };
        let x2 = xd[j].sqr() + xo[j].sqr() + left;
        diag.push((Dd::new(j as f64) + (mf + 1.0) / 2.0) / n + scale * x2);
        off1.push(scale * xo[j] * (xd[j] + xd[j + 1]));
        off2.push(scale * xo[j] * xo[j + 1]);
    }
    PentaMatrix { diag, off1, off2 }
}

/// Lowest `count` eigenpairs in double precision (ascending).
pub fn eigen_f64(h: &PentaMatrix, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    let dense = h.to_f64_dense();
    let eig = SymmetricEigen::try_new(dense, f64::EPSILON, 0)
        .ok_or_else(|| Error::NonConvergence("dense symmetric eigensolver".into()))?;
    let mut idx: Vec<usize> = (0..h.size()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    Ok(idx
        .into_iter()
        .take(count)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors.column(i).iter().cloned().collect()))
        .collect())
}

/// Solves (H − σI) x = b by banded Gaussian elimination with partial pivoting.
fn band_solve(h: &PentaMatrix, sigma: Dd, b: &[Dd]) -> Vec<Dd> {
    let n = h.size();
    // rows stored as a window of columns [i−2, i+4] after pivoting fill-in
    const W: usize = 7;
    let off = |i: usize, j: usize| j + 2 - i;
    let mut a = vec![[Dd::ZERO; W]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for j in i.saturating_sub(2)..=(i + 2).min(n - 1) {
            let mut v = h.get(i, j);
            if i == j {
                v -= sigma;
            }
            row[off(i, j)] = v;
        }
    }
    let mut rhs = b.to_vec();
    for k in 0..n {
        let last = (k + 2).min(n - 1);
        let mut piv = k;
        for i in (k + 1)..=last {
            if a[i][off(i, k)].abs() > a[piv][off(piv, k)].abs() {
                piv = i;
            }
        }
        if piv != k {
            let cols_hi = (k + 4).min(n - 1);
            for j in k..=cols_hi {
                let (vk, vp) = (a[k][off(k, j)], a[piv][off(piv, j)]);
                a[k][off(k, j)] = vp;
                a[piv][off(piv, j)] = vk;
            }
            rhs.swap(k, piv);
        }
        let mut d = a[k][off(k, k)];
        if d.hi == 0.0 {
            d = Dd::new(f64::MIN_POSITIVE);
            a[k][off(k, k)] = d;
        }
        for i in (k + 1)..=last {
            let f = a[i][off(i, k)] / d;
            if f.hi == 0.0 {
                continue;
            }
            a[i][off(i, k)] = Dd::ZERO;
            for j in (k + 1)..=(k + 4).min(n - 1) {
                let t = a[k][off(k, j)];
                a[i][off(i, j)] -= f * t;
            }
            let t = rhs[k];
            rhs[i] -= f * t;
        }
    }
    let mut x = vec![Dd::ZERO; n];
    for k in (0..n).rev() {
        let mut s = rhs[k];
        for j in (k + 1)..=(k + 4).min(n - 1) {
            s -= a[k][off(k, j)] * x[j];
        }
        x[k] = s / a[k][off(k, k)];
    }
    x
}

fn normalize(v: &mut [Dd]) {
    let norm = v.iter().map(|x| x.sqr()).sum::<Dd>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
}

/// Rayleigh-quotient iteration in double-double from a double-precision pair.
pub fn refine_eigenpair(h: &PentaMatrix, beta0: f64, v0: &[f64]) -> Result<(Dd, Vec<Dd>)> {
    let mut v: Vec<Dd> = v0.iter().map(|&x| Dd::new(x)).collect();
    normalize(&mut v);
    let mut sigma = Dd::new(beta0);
    for _ in 0..4 {
        let w = band_solve(h, sigma, &v);
        v = w;
        normalize(&mut v);
        let hv = h.mul_vec(&v);
        let new_sigma: Dd = v.iter().zip(&hv).map(|(a, b)| *a * *b).sum();
        let shift = (new_sigma - sigma).abs().to_f64();
        sigma = new_sigma;
        if shift < 1e-31 * sigma.abs().to_f64() {
            break;
        }
    }
    if (sigma.to_f64() - beta0).abs() > 1e-9 * beta0.abs().max(1e-3) {
        return Err(Error::NonConvergence(format!(
            "eigenvalue refinement drifted from {beta0} to {}",
            sigma.to_f64()
        )));
    }
    Ok((sigma, v))
}
