//! Compressed sparse rows with the diagonal split out for relaxation sweeps.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::stencil::LinearForm;

/// Rows processed per parallel task.
const CHUNK: usize = 512;

#[derive(Debug, Clone)]
pub struct Csr {
    n: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
    diag: Vec<f64>,
}

impl Csr {
    /// Builds a square matrix from one form per row; row `k` must have a
    /// nonzero coefficient on unknown `k`.
    pub fn from_forms(forms: Vec<LinearForm>) -> Result<Csr> {
        let n = forms.len();
        let mut indptr = Vec::with_capacity(n + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        let mut diag = vec![0.0; n];
        indptr.push(0);
        for (k, form) in forms.into_iter().enumerate() {
            for &(c, v) in form.compact().terms() {
                if c >= n {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        found: c + 1,
                    });
                }
                if v == 0.0 {
                    continue;
                }
                if c == k {
                    diag[k] = v;
                }
                indices.push(c);
                values.push(v);
            }
            if diag[k] == 0.0 {
                return Err(Error::Singular(k));
            }
            indptr.push(indices.len());
        }
        Ok(Csr {
            n,
            indptr,
            indices,
            values,
            diag,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn row(&self, k: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.indptr[k]..self.indptr[k + 1];
        self.indices[r.clone()]
            .iter()
            .copied()
            .zip(self.values[r].iter().copied())
    }

    pub fn row_dot(&self, k: usize, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for p in self.indptr[k]..self.indptr[k + 1] {
            s += self.values[p] * x[self.indices[p]];
        }
        s
    }

    /// Lower and upper bandwidths.
    pub fn bandwidths(&self) -> (usize, usize) {
        let (mut kl, mut ku) = (0, 0);
        for k in 0..self.n {
            for (c, _) in self.row(k) {
                if c < k {
                    kl = kl.max(k - c);
                } else {
                    ku = ku.max(c - k);
                }
            }
        }
        (kl, ku)
    }

    pub fn residual(&self, x: &[f64], b: &[f64]) -> Vec<f64> {
        let mut r = vec![0.0; self.n];
        r.par_chunks_mut(CHUNK).enumerate().for_each(|(c, out)| {
            for (t, o) in out.iter_mut().enumerate() {
                let k = c * CHUNK + t;
                *o = b[k] - self.row_dot(k, x);
            }
        });
        r
    }

    /// One damped Jacobi update of every row into `out`, reading only `x`.
    ///
    /// Returns `max |r_k / a_kk|` before damping, or infinity if any value
    /// stopped being finite.
    pub fn jacobi_into(&self, x: &[f64], b: &[f64], relax: f64, out: &mut [f64]) -> f64 {
        out.par_chunks_mut(CHUNK)
            .enumerate()
            .map(|(c, out)| {
                let mut m: f64 = 0.0;
                for (t, o) in out.iter_mut().enumerate() {
                    let k = c * CHUNK + t;
                    let d = (b[k] - self.row_dot(k, x)) / self.diag[k];
                    *o = x[k] + relax * d;
                    if !o.is_finite() {
                        return f64::INFINITY;
                    }
                    m = m.max(d.abs());
                }
                m
            })
            .reduce(|| 0.0, f64::max)
    }

    /// One successive over-relaxation sweep in natural order, in place.
    pub fn sor_sweep(&self, x: &mut [f64], b: &[f64], relax: f64) -> f64 {
        let mut m: f64 = 0.0;
        for k in 0..self.n {
            let d = (b[k] - self.row_dot(k, x)) / self.diag[k];
            x[k] += relax * d;
            if !x[k].is_finite() {
                return f64::INFINITY;
            }
            m = m.max(d.abs());
        }
        m
    }

    /// `max_k |r_k / a_kk|`.
    pub fn scaled_residual(&self, x: &[f64], b: &[f64]) -> f64 {
        (0..self.n)
            .into_par_iter()
            .with_min_len(CHUNK)
            .map(|k| ((b[k] - self.row_dot(k, x)) / self.diag[k]).abs())
            .reduce(|| 0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiag(n: usize) -> Csr {
        let forms = (0..n)
            .map(|k| {
                let mut f = LinearForm::unit(k, 4.0);
                if k > 0 {
                    f.push(k - 1, -1.0);
                }
                if k + 1 < n {
                    f.push(k + 1, -1.0);
                }
                f
            })
            .collect();
        Csr::from_forms(forms).unwrap()
    }

    #[test]
    fn jacobi_converges_on_diagonally_dominant() {
        let a = tridiag(50);
        let b = vec![1.0; 50];
        let mut x = vec![0.0; 50];
        let mut y = vec![0.0; 50];
        for _ in 0..200 {
            a.jacobi_into(&x, &b, 1.0, &mut y);
            std::mem::swap(&mut x, &mut y);
        }
        assert!(a.scaled_residual(&x, &b) < 1e-12);
        assert_eq!(a.bandwidths(), (1, 1));
    }

    #[test]
    fn missing_diagonal_rejected() {
        let forms = vec![LinearForm::unit(1, 1.0), LinearForm::unit(1, 1.0)];
        assert!(matches!(Csr::from_forms(forms), Err(Error::Singular(0))));
    }
}
