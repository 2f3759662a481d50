//! Banded LU factorisation with partial pivoting (column-major band storage).

use rayon::prelude::*;

use super::sparse::Csr;
use crate::error::{Error, Result};

/// Columns per parallel task in the elimination update.
const COLUMN_CHUNK: usize = 32;

pub struct BandedLu {
    n: usize,
    kl: usize,
    kv: usize,
    ld: usize,
    ab: Vec<f64>,
    ipiv: Vec<usize>,
    row_scale: Vec<f64>,
}

impl BandedLu {
    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        j * self.ld + self.kv + i - j
    }

    /// Factorises `diag(s) A`, where `s` equilibrates each row to unit max norm.
    pub fn factor(a: &Csr) -> Result<BandedLu> {
        let n = a.dim();
        let (kl, ku) = a.bandwidths();
        let kv = kl + ku;
        let ld = 2 * kl + ku + 1;
        let mut lu = BandedLu {
            n,
            kl,
            kv,
            ld,
            ab: vec![0.0; ld * n],
            ipiv: vec![0; n],
            row_scale: vec![1.0; n],
        };
        for i in 0..n {
            let s = a.row(i).fold(0.0_f64, |m, (_, v)| m.max(v.abs()));
            lu.row_scale[i] = 1.0 / s;
            for (j, v) in a.row(i) {
                let p = lu.at(i, j);
                lu.ab[p] += v / s;
            }
        }
        lu.eliminate()?;
        Ok(lu)
    }

    fn eliminate(&mut self) -> Result<()> {
        let (n, kl, kv, ld) = (self.n, self.kl, self.kv, self.ld);
        let mut ju = 0;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let base = j * ld + kv;
            let mut jp = 0;
            let mut best = self.ab[base].abs();
            for t in 1..=km {
                let v = self.ab[base + t].abs();
                if v > best {
                    best = v;
                    jp = t;
                }
            }
            self.ipiv[j] = j + jp;
            if best == 0.0 {
                return Err(Error::Singular(j));
            }
            ju = ju.max((j + kv - kl + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    let p = self.at(j, c);
                    let q = self.at(j + jp, c);
                    self.ab.swap(p, q);
                }
            }
            if km == 0 {
                continue;
            }
            let inv = 1.0 / self.ab[base];
            for t in 1..=km {
                self.ab[base + t] *= inv;
            }
            if ju <= j {
                continue;
            }
            // rank-one update of columns j+1..=ju, each column independent
            let (head, tail) = self.ab.split_at_mut((j + 1) * ld);
            let pivot_col = &head[j * ld..];
            let ncols = ju - j;
            tail[..ncols * ld]
                .par_chunks_mut(ld * COLUMN_CHUNK)
                .enumerate()
                .for_each(|(chunk, cols)| {
                    for (o, col) in cols.chunks_mut(ld).enumerate() {
                        let c = j + 1 + chunk * COLUMN_CHUNK + o;
                        // row j sits at offset kv + j - c in column c
                        let r0 = kv + j - c;
                        let ujc = col[r0];
                        if ujc == 0.0 {
                            continue;
                        }
                        for t in 1..=km {
                            col[r0 + t] -= pivot_col[kv + t] * ujc;
                        }
                    }
                });
        }
        Ok(())
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, kl, kv, ld) = (self.n, self.kl, self.kv, self.ld);
        let mut x: Vec<f64> = b.iter().zip(&self.row_scale).map(|(v, s)| v * s).collect();
        for j in 0..n {
            let p = self.ipiv[j];
            if p != j {
                x.swap(j, p);
            }
            let km = kl.min(n - 1 - j);
            let xj = x[j];
            if xj != 0.0 {
                for t in 1..=km {
                    x[j + t] -= self.ab[j * ld + kv + t] * xj;
                }
            }
        }
        for j in (0..n).rev() {
            x[j] /= self.ab[j * ld + kv];
            let xj = x[j];
            if xj != 0.0 {
                for i in j.saturating_sub(kv)..j {
                    x[i] -= self.ab[self.at(i, j)] * xj;
                }
            }
        }
        x
    }
}
