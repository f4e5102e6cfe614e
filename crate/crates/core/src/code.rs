//! Linear codes over F_q: Galois duals, hull dimensions,
//! self-dual/self-orthogonal/LCD classification, systematic form, and
//! exact-or-refuse minimum distance.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::matrix::FqMatrix;
use serde::Serialize;

/// A linear [n, k] code given by a full-row-rank generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    gen: FqMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullClass {
    SelfDual,
    SelfOrthogonal,
    Lcd,
    Intermediate,
}

/// h_l = dim(C ∩ C^{perp_l}) together with the classification it implies.
#[derive(Debug, Clone, Serialize)]
pub struct HullReport {
    pub ell: usize,
    pub hull_dim: usize,
    pub class: HullClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MinDistance {
    Exact(usize),
    BudgetExceeded,
}

/// <x, y>_l = sum_i x_i sigma_l(y_i). l = 0 is the Euclidean product.
pub fn galois_inner_product(ctx: &FieldCtx, x: &[Fq], y: &[Fq], ell: usize) -> Result<Fq> {
    ctx.check_ell(ell)?;
    if x.len() != y.len() {
        return Err(Error::DimMismatch(format!(
            "|x|={} |y|={}",
            x.len(),
            y.len()
        )));
    }
    let mut acc = Fq::ZERO;
    for (&a, &b) in x.iter().zip(y) {
        acc = ctx.add(acc, ctx.mul(a, ctx.frobenius(b, ell)?));
    }
    Ok(acc)
}

impl LinearCode {
    /// Rows of `gen` must be linearly independent.
    pub fn new(gen: FqMatrix) -> Result<LinearCode> {
        if gen.rank() != gen.rows() {
            return Err(Error::DimMismatch(format!(
                "generator has rank {} < {} rows",
                gen.rank(),
                gen.rows()
            )));
        }
        Ok(LinearCode { gen })
    }

    pub fn gen(&self) -> &FqMatrix {
        &self.gen
    }
    pub fn length(&self) -> usize {
        self.gen.cols()
    }
    pub fn dimension(&self) -> usize {
        self.gen.rows()
    }

    /// h_l(C) = k - rank(G sigma_l(G)^t).
    pub fn hull_dim(&self, ell: usize) -> Result<HullReport> {
        self.gen.ctx().check_ell(ell)?;
        // G * sigma_l(G)^t; dagger is sigma_l then transpose
        let gram = self.gen.mat_mul(&self.gen.dagger(ell)?)?;
        let h = self.dimension() - gram.rank();
        let (n, k) = (self.length(), self.dimension());
        let class = if h == k && n == 2 * k {
            HullClass::SelfDual
        } else if h == k {
            HullClass::SelfOrthogonal
        } else if h == 0 {
            HullClass::Lcd
        } else {
            HullClass::Intermediate
        };
        Ok(HullReport {
            ell,
            hull_dim: h,
            class,
        })
    }

    /// C^{perp_l}: null space of sigma_l(G).
    pub fn galois_dual(&self, ell: usize) -> Result<LinearCode> {
        let twisted = self.gen.map_frobenius(ell)?;
        let ns = twisted.null_space();
        LinearCode::new(ns)
    }

    /// Column permutation moving pivots first, and the A of [I|A].
    /// Returns (A, permutation) where permutation[i] is the source column of
    /// permuted column i; identity when the first k columns already pivot.
    pub fn systematic_form(&self) -> (FqMatrix, Vec<usize>) {
        let (r, pivots) = self.gen.rref();
        let non_pivots: Vec<usize> = (0..self.length()).filter(|c| !pivots.contains(c)).collect();
        let perm: Vec<usize> = pivots.iter().chain(&non_pivots).copied().collect();
        let a = r.select_columns(&non_pivots);
        (a, perm)
    }

    /// All q^k codewords, in lexicographic message order (includes 0).
    pub fn codewords(&self) -> CodewordIter<'_> {
        CodewordIter::new(self)
    }

    /// Exact minimum distance by full enumeration when q^k <= budget,
    /// otherwise refuses. No estimates.
    pub fn min_distance(&self, budget: u64) -> MinDistance {
        let q = self.gen.ctx().q();
        let k = self.dimension() as u32;
        let total = q.checked_pow(k);
        match total {
            Some(t) if t <= budget => {}
            _ => return MinDistance::BudgetExceeded,
        }
        let mut best = usize::MAX;
        let mut iter = self.codewords();
        iter.next(); // skip zero
        for w in iter {
            let wt = w.iter().filter(|x| !x.is_zero()).count();
            if wt < best {
                best = wt;
            }
        }
        MinDistance::Exact(best)
    }

    /// Does v lie in the row space?
    pub fn contains(&self, v: &[Fq]) -> bool {
        let mut rows = self.gen.row_vecs();
        rows.push(v.to_vec());
        let m = FqMatrix::from_rows(self.gen.ctx().clone(), rows).expect("uniform");
        m.rank() == self.dimension()
    }

    /// Same row space as other?
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.length() == other.length()
            && self.dimension() == other.dimension()
            && (0..other.dimension()).all(|i| self.contains(other.gen.row(i)))
    }
}

/// DFS enumeration of all q^k codewords with incremental partial sums.
pub struct CodewordIter<'a> {
    code: &'a LinearCode,
    // message digit per level plus the partial codeword at each level
    digits: Vec<u64>,
    partials: Vec<Vec<Fq>>,
    done: bool,
    started: bool,
}

impl<'a> CodewordIter<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let k = code.dimension();
        let n = code.length();
        CodewordIter {
            code,
            digits: vec![0; k],
            partials: vec![vec![Fq::ZERO; n]; k + 1],
            done: k == 0,
            started: false,
        }
    }

    fn recompute_from(&mut self, level: usize) {
        let ctx = self.code.gen.ctx().clone();
        for l in level..self.code.dimension() {
            let coef = Fq(self.digits[l]);
            let row = self.code.gen.row(l);
            let (before, after) = self.partials.split_at_mut(l + 1);
            let prev = &before[l];
            let next = &mut after[0];
            for j in 0..row.len() {
                next[j] = ctx.add(prev[j], ctx.mul(coef, row[j]));
            }
        }
    }
}

impl Iterator for CodewordIter<'_> {
    type Item = Vec<Fq>;

    fn next(&mut self) -> Option<Vec<Fq>> {
        if self.done {
            return None;
        }
        let k = self.code.dimension();
        if !self.started {
            self.started = true;
            self.recompute_from(0);
            return Some(self.partials[k].clone());
        }
        let q = self.code.gen.ctx().q();
        // odometer increment, least-significant digit last
        let mut level = k;
        loop {
            if level == 0 {
                self.done = true;
                return None;
            }
            level -= 1;
            self.digits[level] += 1;
            if self.digits[level] < q {
                break;
            }
            self.digits[level] = 0;
        }
        self.recompute_from(level);
        Some(self.partials[k].clone())
    }
}
