//! Frames over F_q under the l-Galois sesquilinear form: synthesis,
//! analysis, frame operator, Gram matrix, and tight/equal-norm/equiangular
//! classification.
//!
//! Frame vectors are matrix COLUMNS here. The etf module works with rows
//! of M instead; the two Gram conventions are sigma-conjugate transposes
//! of each other, and ETF classification with b = 0 agrees under both.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::matrix::FqMatrix;
use serde::Serialize;
use std::sync::Arc;

/// n x m matrix Phi of frame vectors phi_1..phi_m (columns), with the
/// Galois parameter l.
#[derive(Debug, Clone)]
pub struct FrameSystem {
    pub phi: FqMatrix,
    pub ell: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameClassification {
    pub is_frame: bool,
    /// Present iff Phi Phi^{dagger_l} = cI; c = 0 is allowed but flagged.
    pub tight_c: Option<String>,
    pub degenerate_tight: bool,
    /// Present iff all (phi_i, phi_i)_l agree.
    pub equal_norm_a: Option<String>,
    /// Present iff (phi_i, phi_j)_l (phi_j, phi_i)_l is constant over i != j.
    pub equiangular_b: Option<String>,
    /// (a, b, c) when tight, equal-norm and equiangular all hold.
    pub etf: Option<(String, String, String)>,
    #[serde(skip)]
    pub tight_c_val: Option<Fq>,
    #[serde(skip)]
    pub equal_norm_a_val: Option<Fq>,
    #[serde(skip)]
    pub equiangular_b_val: Option<Fq>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GramEquivalenceReport {
    pub frame_operator_scalar: bool,
    pub gram_squared: bool,
    pub adjoint_identity: bool,
}

/// (x,y)_l = sum_i sigma_l(x_i) y_i. Satisfies (x,y)_l = <y,x>_l.
pub fn sesq_form(ctx: &FieldCtx, x: &[Fq], y: &[Fq], ell: usize) -> Result<Fq> {
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
        acc = ctx.add(acc, ctx.mul(ctx.frobenius(a, ell)?, b));
    }
    Ok(acc)
}

impl FrameSystem {
    pub fn new(phi: FqMatrix, ell: usize) -> Result<FrameSystem> {
        phi.ctx().check_ell(ell)?;
        if phi.cols() == 0 {
            return Err(Error::DimMismatch("frame needs at least one vector".into()));
        }
        Ok(FrameSystem { phi, ell })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.phi.ctx()
    }
    /// Ambient dimension n.
    pub fn dim(&self) -> usize {
        self.phi.rows()
    }
    /// Number of frame vectors m.
    pub fn count(&self) -> usize {
        self.phi.cols()
    }
    pub fn vector(&self, i: usize) -> Vec<Fq> {
        self.phi.col(i)
    }

    /// Phi(x) = sum_i x_i phi_i.
    pub fn synthesis(&self, x: &[Fq]) -> Result<Vec<Fq>> {
        if x.len() != self.count() {
            return Err(Error::DimMismatch(format!(
                "synthesis input has {} entries, expected {}",
                x.len(),
                self.count()
            )));
        }
        self.phi.mul_vec(x)
    }

    /// Phi^{dagger_l}(y) = ((phi_i, y)_l)_i.
    pub fn analysis(&self, y: &[Fq]) -> Result<Vec<Fq>> {
        if y.len() != self.dim() {
            return Err(Error::DimMismatch(format!(
                "analysis input has {} entries, expected {}",
                y.len(),
                self.dim()
            )));
        }
        self.phi.dagger(self.ell)?.mul_vec(y)
    }

    /// Phi Phi^{dagger_l}, n x n.
    pub fn frame_operator(&self) -> Result<FqMatrix> {
        self.phi.mat_mul(&self.phi.dagger(self.ell)?)
    }

    /// G = ((phi_i, phi_j)_l)_{ij} = Phi^{dagger_l} Phi, m x m.
    pub fn gramian(&self) -> Result<FqMatrix> {
        self.phi.dagger(self.ell)?.mat_mul(&self.phi)
    }

    pub fn classify(&self) -> Result<FrameClassification> {
        let ctx = self.ctx().clone();
        let is_frame = self.phi.rank() == self.dim();
        let op = self.frame_operator()?;
        let tight_c_val = op.scalar_multiple_of_identity();
        let gram = self.gramian()?;
        let m = self.count();

        let a0 = gram.get(0, 0);
        let equal_norm_a_val = if (1..m).all(|i| gram.get(i, i) == a0) {
            Some(a0)
        } else {
            None
        };

        // b over off-diagonal pairs; vacuously 0 for m = 1
        let mut equiangular_b_val = if m == 1 { Some(Fq::ZERO) } else { None };
        if m > 1 {
            let mut b: Option<Fq> = None;
            let mut constant = true;
            'outer: for i in 0..m {
                for j in 0..m {
                    if i == j {
                        continue;
                    }
                    let prod = ctx.mul(gram.get(i, j), gram.get(j, i));
                    match b {
                        None => b = Some(prod),
                        Some(v) if v != prod => {
                            constant = false;
                            break 'outer;
                        }
                        _ => {}
                    }
                }
            }
            if constant {
                equiangular_b_val = b;
            }
        }

        let etf = match (tight_c_val, equal_norm_a_val, equiangular_b_val) {
            (Some(c), Some(a), Some(b)) => Some((
                ctx.format_element(a),
                ctx.format_element(b),
                ctx.format_element(c),
            )),
            _ => None,
        };
        Ok(FrameClassification {
            is_frame,
            tight_c: tight_c_val.map(|c| ctx.format_element(c)),
            degenerate_tight: tight_c_val == Some(Fq::ZERO),
            equal_norm_a: equal_norm_a_val.map(|a| ctx.format_element(a)),
            equiangular_b: equiangular_b_val.map(|b| ctx.format_element(b)),
            etf,
            tight_c_val,
            equal_norm_a_val,
            equiangular_b_val,
        })
    }

    /// Evaluates the three equivalent tightness statements of the Gram
    /// characterization independently: (1) Phi Phi^{dagger_l} = cI,
    /// (2) G^2 = cG, (3) (Phi^{dagger_{e-l}}x, Phi^{dagger_l}y)_l = c(x,y)_l
    /// on all n^2 standard-basis pairs (sufficient by bilinearity).
    pub fn verify_gram_equivalences(&self, c: Fq) -> Result<GramEquivalenceReport> {
        if self.phi.rank() != self.dim() {
            return Err(Error::NotAFrame);
        }
        let ctx = self.ctx().clone();
        let n = self.dim();
        let op = self.frame_operator()?;
        let frame_operator_scalar = op == FqMatrix::identity(ctx.clone(), n).scale(c);

        let gram = self.gramian()?;
        let gram_squared = gram.mat_mul(&gram)? == gram.scale(c);

        let e = ctx.e();
        let co_ell = (e - self.ell) % e;
        let dag_co = self.phi.dagger(co_ell)?;
        let dag = self.phi.dagger(self.ell)?;
        let mut adjoint_identity = true;
        'outer: for i in 0..n {
            for j in 0..n {
                let mut x = vec![Fq::ZERO; n];
                let mut y = vec![Fq::ZERO; n];
                x[i] = Fq::ONE;
                y[j] = Fq::ONE;
                let lhs = sesq_form(&ctx, &dag_co.mul_vec(&x)?, &dag.mul_vec(&y)?, self.ell)?;
                let rhs = ctx.mul(c, sesq_form(&ctx, &x, &y, self.ell)?);
                if lhs != rhs {
                    adjoint_identity = false;
                    break 'outer;
                }
            }
        }
        Ok(GramEquivalenceReport {
            frame_operator_scalar,
            gram_squared,
            adjoint_identity,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f9() -> Arc<FieldCtx> {
        FieldCtx::conway(3, 2).unwrap()
    }

    #[test]
    fn sesq_form_basics() {
        let ctx = f9();
        let z = ctx.zeta();
        // ((z,0),(1,0))_1 = z^3 = 2z+1
        assert_eq!(
            sesq_form(&ctx, &[z, Fq::ZERO], &[Fq::ONE, Fq::ZERO], 1).unwrap(),
            ctx.encode(&[1, 2])
        );
        assert_eq!(
            sesq_form(&ctx, &[z, z], &[Fq::ZERO, Fq::ZERO], 1).unwrap(),
            Fq::ZERO
        );
        assert!(sesq_form(&ctx, &[z], &[z, z], 1).is_err());
    }

    #[test]
    fn sesq_form_sigma_linearity_and_conjugation() {
        let ctx = f9();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let e = 2;
        for _ in 0..200 {
            let x: Vec<Fq> = (0..3).map(|_| Fq(rng.gen_range(0..9))).collect();
            let y: Vec<Fq> = (0..3).map(|_| Fq(rng.gen_range(0..9))).collect();
            let a = Fq(rng.gen_range(0..9));
            for ell in 0..e {
                // sigma_l-linearity in the first slot
                let ax: Vec<Fq> = x.iter().map(|&v| ctx.mul(a, v)).collect();
                assert_eq!(
                    sesq_form(&ctx, &ax, &y, ell).unwrap(),
                    ctx.mul(
                        ctx.frobenius(a, ell).unwrap(),
                        sesq_form(&ctx, &x, &y, ell).unwrap()
                    )
                );
                // (x,y)_l = sigma_l((y,x)_{e-l})
                let co = (e - ell) % e;
                assert_eq!(
                    sesq_form(&ctx, &x, &y, ell).unwrap(),
                    ctx.frobenius(sesq_form(&ctx, &y, &x, co).unwrap(), ell)
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn nondegeneracy_small_fields() {
        // (k, e_i)_l = 0 for all i forces k = 0 (exhaustive over F_9, n=2)
        let ctx = f9();
        for ell in 0..2 {
            for a in ctx.elements() {
                for b in ctx.elements() {
                    let k = [a, b];
                    let all_zero = (0..2).all(|i| {
                        let mut ei = [Fq::ZERO; 2];
                        ei[i] = Fq::ONE;
                        sesq_form(&ctx, &k, &ei, ell).unwrap() == Fq::ZERO
                    });
                    if all_zero {
                        assert_eq!(k, [Fq::ZERO; 2]);
                    }
                }
            }
        }
    }

    #[test]
    fn standard_basis_classification() {
        let ctx = f9();
        let f = FrameSystem::new(FqMatrix::identity(ctx.clone(), 3), 1).unwrap();
        let c = f.classify().unwrap();
        assert!(c.is_frame);
        assert_eq!(c.tight_c_val, Some(Fq::ONE));
        assert!(!c.degenerate_tight);
        assert_eq!(c.etf, Some(("1".into(), "0".into(), "1".into())));
        let rep = f.verify_gram_equivalences(Fq::ONE).unwrap();
        assert!(rep.frame_operator_scalar && rep.gram_squared && rep.adjoint_identity);
    }

    #[test]
    fn doubled_identity_not_equiangular() {
        // columns of [I | I] over F_3, l=0: tight with c=2, a=1, but the
        // off-diagonal products take both 1 and 0
        let ctx = FieldCtx::conway(3, 1).unwrap();
        let n = 3;
        let mut phi = FqMatrix::zero(ctx.clone(), n, 2 * n);
        for i in 0..n {
            phi.set(i, i, Fq::ONE);
            phi.set(i, n + i, Fq::ONE);
        }
        let f = FrameSystem::new(phi, 0).unwrap();
        let c = f.classify().unwrap();
        assert!(c.is_frame);
        assert_eq!(c.tight_c_val, Some(Fq(2)));
        assert_eq!(c.equal_norm_a_val, Some(Fq::ONE));
        assert_eq!(c.equiangular_b_val, None);
        assert!(c.etf.is_none());
    }

    #[test]
    fn non_spanning_set_is_not_frame() {
        let ctx = f9();
        let phi = FqMatrix::from_rows(ctx.clone(), vec![vec![Fq::ONE], vec![Fq::ZERO]]).unwrap();
        let f = FrameSystem::new(phi, 1).unwrap();
        assert!(!f.classify().unwrap().is_frame);
        assert!(matches!(
            f.verify_gram_equivalences(Fq::ONE),
            Err(Error::NotAFrame)
        ));
    }

    #[test]
    fn synthesis_analysis_adjoint() {
        let ctx = f9();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..50 {
            let rows: Vec<Vec<Fq>> = (0..2)
                .map(|_| (0..4).map(|_| Fq(rng.gen_range(0..9))).collect())
                .collect();
            let phi = FqMatrix::from_rows(ctx.clone(), rows).unwrap();
            let f = FrameSystem::new(phi, 1).unwrap();
            // synthesis of e_i picks out phi_i
            for i in 0..f.count() {
                let mut ei = vec![Fq::ZERO; f.count()];
                ei[i] = Fq::ONE;
                assert_eq!(f.synthesis(&ei).unwrap(), f.vector(i));
            }
            // adjoint identity (Phi v, u)_l = (v, Phi^{dagger_l} u)_l
            let v: Vec<Fq> = (0..f.count()).map(|_| Fq(rng.gen_range(0..9))).collect();
            let u: Vec<Fq> = (0..f.dim()).map(|_| Fq(rng.gen_range(0..9))).collect();
            let lhs = sesq_form(&ctx, &f.synthesis(&v).unwrap(), &u, 1).unwrap();
            let rhs = sesq_form(&ctx, &v, &f.analysis(&u).unwrap(), 1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gramian_rank_and_kernel_match_phi() {
        // hypothesis matters: the identities are stated for frames, and can
        // fail for non-spanning Phi with isotropic columns
        let ctx = f9();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let mut tested = 0;
        while tested < 50 {
            let rows: Vec<Vec<Fq>> = (0..3)
                .map(|_| (0..4).map(|_| Fq(rng.gen_range(0..9))).collect())
                .collect();
            let phi = FqMatrix::from_rows(ctx.clone(), rows).unwrap();
            if phi.rank() != 3 {
                continue;
            }
            tested += 1;
            for ell in 0..2 {
                let f = FrameSystem::new(phi.clone(), ell).unwrap();
                let gram = f.gramian().unwrap();
                assert_eq!(gram.rank(), phi.rank());
                // Ker(G) = Ker(Phi): each null vector of one kills the other
                let ng = gram.null_space();
                for i in 0..ng.rows() {
                    let x = ng.row(i);
                    assert!(phi.mul_vec(x).unwrap().iter().all(|v| v.is_zero()));
                }
                let np = phi.null_space();
                for i in 0..np.rows() {
                    let x = np.row(i);
                    assert!(gram.mul_vec(x).unwrap().iter().all(|v| v.is_zero()));
                }
            }
        }
    }

    #[test]
    fn tightness_at_co_ell() {
        // tight at l with constant c => tight at e-l with c^{p^{e-l}}
        let ctx = f9();
        let z = ctx.zeta();
        let phi =
            FqMatrix::from_rows(ctx.clone(), vec![vec![z, Fq::ZERO], vec![Fq::ZERO, z]]).unwrap();
        let c1 = FrameSystem::new(phi.clone(), 1)
            .unwrap()
            .classify()
            .unwrap();
        if let Some(c) = c1.tight_c_val {
            let co = FrameSystem::new(phi, 1).unwrap(); // e - l = 1 here
            let expect = ctx.pow(c, 3); // c^{p^{e-l}} = c^3
            let c2 = co.classify().unwrap();
            assert_eq!(c2.tight_c_val, Some(expect));
        } else {
            panic!("expected tight frame");
        }
    }

    #[test]
    fn scaled_identity_gram_is_norm_power() {
        // Phi = a'I gives gramian aI with a = (a')^{p^l + 1}
        let ctx = f9();
        let a_prime = ctx.zeta_pow(3);
        let phi = FqMatrix::identity(ctx.clone(), 2).scale(a_prime);
        let f = FrameSystem::new(phi, 1).unwrap();
        let a = ctx.pow(a_prime, 4); // p^l + 1 = 4
        assert_eq!(
            f.gramian().unwrap(),
            FqMatrix::identity(ctx.clone(), 2).scale(a)
        );
    }

    #[test]
    fn prop_3_11_a0c_implies_a_eq_c_or_zero() {
        // exhaustive over diagonal 2x2 frames in F_9: whenever classify
        // returns an (a,0,c) ETF, a = c or a = 0
        let ctx = f9();
        for x in ctx.elements() {
            for y in ctx.elements() {
                let phi =
                    FqMatrix::from_rows(ctx.clone(), vec![vec![x, Fq::ZERO], vec![Fq::ZERO, y]])
                        .unwrap();
                let f = FrameSystem::new(phi, 1).unwrap();
                let c = f.classify().unwrap();
                if let (Some(a), Some(b), Some(cc)) =
                    (c.equal_norm_a_val, c.equiangular_b_val, c.tight_c_val)
                {
                    if b == Fq::ZERO {
                        assert!(a == cc || a == Fq::ZERO);
                    }
                }
            }
        }
    }

    #[test]
    fn gram_equivalences_fail_coherently() {
        // non-tight frame: all three checks false for every candidate c
        let ctx = f9();
        let z = ctx.zeta();
        let phi = FqMatrix::from_rows(
            ctx.clone(),
            vec![vec![Fq::ONE, Fq::ZERO, z], vec![Fq::ZERO, z, Fq::ONE]],
        )
        .unwrap();
        let f = FrameSystem::new(phi, 1).unwrap();
        assert!(f.classify().unwrap().tight_c_val.is_none());
        for c in ctx.elements() {
            let rep = f.verify_gram_equivalences(c).unwrap();
            assert!(!rep.frame_operator_scalar);
            // the three statements are equivalent for frames
            assert_eq!(rep.frame_operator_scalar, rep.gram_squared);
            assert_eq!(rep.frame_operator_scalar, rep.adjoint_identity);
        }
    }
}
