//! Dense matrices over one field: products, rank/RREF, the conjugate
//! transpose under sigma_l, and the I / J constructors.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use std::sync::Arc;

/// Row-major dense matrix over a shared [`FieldCtx`]. Immutable by
/// convention: operations return new matrices.
#[derive(Debug, Clone)]
pub struct FqMatrix {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for FqMatrix {}

impl FqMatrix {
    pub fn from_rows(ctx: Arc<FieldCtx>, rows: Vec<Vec<Fq>>) -> Result<FqMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        Ok(FqMatrix {
            ctx,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(ctx: Arc<FieldCtx>, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix {
            ctx,
            rows,
            cols,
            data: vec![Fq::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: Arc<FieldCtx>, n: usize) -> FqMatrix {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    /// The all-ones matrix J.
    pub fn ones(ctx: Arc<FieldCtx>, n: usize) -> FqMatrix {
        FqMatrix {
            ctx,
            rows: n,
            cols: n,
            data: vec![Fq::ONE; n * n],
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn check_ctx(&self, other: &FqMatrix) -> Result<()> {
        if !self.ctx.same_field(&other.ctx) {
            return Err(Error::CtxMismatch);
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        self.check_ctx(other)?;
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.ctx;
        let mut out = FqMatrix::zero(self.ctx.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn add_mat(&self, other: &FqMatrix) -> Result<FqMatrix> {
        self.check_ctx(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch("add".into()));
        }
        let f = &self.ctx;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(FqMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: Fq) -> FqMatrix {
        let f = &self.ctx;
        FqMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = FqMatrix::zero(self.ctx.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Entrywise sigma_l.
    pub fn map_frobenius(&self, ell: usize) -> Result<FqMatrix> {
        self.ctx.check_ell(ell)?;
        let f = &self.ctx;
        let data = self
            .data
            .iter()
            .map(|&a| f.frobenius(a, ell))
            .collect::<Result<Vec<_>>>()?;
        Ok(FqMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// M^{dagger_l} = sigma_l(M)^t.
    pub fn dagger(&self, ell: usize) -> Result<FqMatrix> {
        Ok(self.map_frobenius(ell)?.transpose())
    }

    /// Reduced row echelon form and pivot columns. First-nonzero pivoting,
    /// deterministic output.
    pub fn rref(&self) -> (FqMatrix, Vec<usize>) {
        let f = self.ctx.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    let (a, b) = (m.get(row, j), m.get(pr, j));
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot nonzero");
            for j in 0..m.cols {
                m.set(row, j, f.mul(inv, m.get(row, j)));
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col);
                    for j in 0..m.cols {
                        let v = f.sub(m.get(r, j), f.mul(factor, m.get(row, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis for {x : M x^t = 0}, rows of the returned matrix.
    pub fn null_space(&self) -> FqMatrix {
        let f = self.ctx.clone();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Fq::ZERO; self.cols];
            v[fc] = Fq::ONE;
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(pi, fc));
            }
            rows.push(v);
        }
        FqMatrix::from_rows(f, rows).expect("uniform rows")
    }

    /// Is this a * I for some scalar a? Returns the scalar if so.
    pub fn scalar_multiple_of_identity(&self) -> Option<Fq> {
        if self.rows != self.cols {
            return None;
        }
        let a = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { a } else { Fq::ZERO };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(a)
    }

    pub fn select_columns(&self, cols: &[usize]) -> FqMatrix {
        let mut out = FqMatrix::zero(self.ctx.clone(), self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    /// Matrix-vector product M x.
    pub fn mul_vec(&self, x: &[Fq]) -> Result<Vec<Fq>> {
        if x.len() != self.cols {
            return Err(Error::DimMismatch(format!(
                "matvec {}x{} with |x|={}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let f = &self.ctx;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Fq::ZERO;
                for (j, &xj) in x.iter().enumerate() {
                    acc = f.add(acc, f.mul(self.get(i, j), xj));
                }
                acc
            })
            .collect())
    }

    pub fn format(&self) -> String {
        let f = &self.ctx;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&x| f.format_element(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
