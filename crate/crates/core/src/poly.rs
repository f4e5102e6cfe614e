//! Dense univariate polynomials over F_q and complete factorization
//! (square-free decomposition, distinct-degree, equal-degree splitting).

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Coefficients ascending; the zero polynomial has an empty list.
#[derive(Debug, Clone)]
pub struct PolyFq {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<Fq>,
}

impl PartialEq for PolyFq {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.coeffs == other.coeffs
    }
}
impl Eq for PolyFq {}

impl PolyFq {
    pub fn new(ctx: Arc<FieldCtx>, mut coeffs: Vec<Fq>) -> PolyFq {
        while coeffs.last() == Some(&Fq::ZERO) {
            coeffs.pop();
        }
        PolyFq { ctx, coeffs }
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> PolyFq {
        PolyFq {
            ctx,
            coeffs: vec![],
        }
    }

    pub fn one(ctx: Arc<FieldCtx>) -> PolyFq {
        PolyFq {
            ctx,
            coeffs: vec![Fq::ONE],
        }
    }

    pub fn constant(ctx: Arc<FieldCtx>, c: Fq) -> PolyFq {
        PolyFq::new(ctx, vec![c])
    }

    /// The monomial X.
    pub fn x(ctx: Arc<FieldCtx>) -> PolyFq {
        PolyFq {
            ctx,
            coeffs: vec![Fq::ZERO, Fq::ONE],
        }
    }

    /// X^n - lambda.
    pub fn x_pow_minus(ctx: Arc<FieldCtx>, n: usize, lambda: Fq) -> PolyFq {
        let mut coeffs = vec![Fq::ZERO; n + 1];
        coeffs[0] = ctx.neg(lambda);
        coeffs[n] = Fq::ONE;
        PolyFq::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree; 0 for constants, panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }
    pub fn leading(&self) -> Fq {
        *self.coeffs.last().expect("zero polynomial")
    }
    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [Fq::ONE]
    }

    pub fn add(&self, other: &PolyFq) -> PolyFq {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ctx.add(self.coeff(i), other.coeff(i)))
            .collect();
        PolyFq::new(self.ctx.clone(), coeffs)
    }

    pub fn neg(&self) -> PolyFq {
        let coeffs = self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect();
        PolyFq {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &PolyFq) -> PolyFq {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> PolyFq {
        let coeffs = self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect();
        PolyFq::new(self.ctx.clone(), coeffs)
    }

    pub fn mul(&self, other: &PolyFq) -> PolyFq {
        if self.is_zero() || other.is_zero() {
            return PolyFq::zero(self.ctx.clone());
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ctx.add(out[i + j], self.ctx.mul(a, b));
            }
        }
        PolyFq::new(self.ctx.clone(), out)
    }

    /// (quotient, remainder) with deg(rem) < deg(divisor).
    pub fn divrem(&self, divisor: &PolyFq) -> Result<(PolyFq, PolyFq)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rem = self.coeffs.clone();
        let d = divisor.degree();
        if self.is_zero() || self.degree() < d {
            return Ok((PolyFq::zero(self.ctx.clone()), self.clone()));
        }
        let lead_inv = self.ctx.inv(divisor.leading())?;
        let mut quot = vec![Fq::ZERO; self.degree() - d + 1];
        for i in (d..rem.len()).rev() {
            let c = self.ctx.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] = self.ctx.sub(rem[i - d + j], self.ctx.mul(c, b));
            }
        }
        Ok((
            PolyFq::new(self.ctx.clone(), quot),
            PolyFq::new(self.ctx.clone(), rem),
        ))
    }

    pub fn rem(&self, divisor: &PolyFq) -> Result<PolyFq> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn divides(&self, other: &PolyFq) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Result<PolyFq> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.scale(self.ctx.inv(self.leading())?))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &PolyFq) -> PolyFq {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    pub fn derivative(&self) -> PolyFq {
        if self.is_zero() || self.degree() == 0 {
            return PolyFq::zero(self.ctx.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                let mut acc = Fq::ZERO;
                // i*c in F_q = c added i mod p times
                for _ in 0..(i as u64 % self.ctx.p()) {
                    acc = self.ctx.add(acc, c);
                }
                acc
            })
            .collect();
        PolyFq::new(self.ctx.clone(), coeffs)
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = self.ctx.add(self.ctx.mul(acc, x), c);
        }
        acc
    }

    /// self^k mod m, square-and-multiply.
    pub fn pow_mod(&self, mut k: u64, m: &PolyFq) -> Result<PolyFq> {
        let mut base = self.rem(m)?;
        let mut acc = PolyFq::one(self.ctx.clone()).rem(m)?;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Apply sigma_l to every coefficient.
    pub fn map_frobenius(&self, ell: usize) -> Result<PolyFq> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| self.ctx.frobenius(c, ell))
            .collect::<Result<_>>()?;
        Ok(PolyFq {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = self.ctx.format_element(c);
            let part = match i {
                0 => cs,
                1 if c == Fq::ONE => "X".to_string(),
                1 => format!("{cs}*X"),
                _ if c == Fq::ONE => format!("X^{i}"),
                _ => format!("{cs}*X^{i}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// Full factorization of a nonzero polynomial into monic irreducibles.
/// Returns (unit, [(factor, multiplicity)...]) with factors sorted by
/// (degree, coefficient codes) so the order is deterministic.
pub fn factorize(f: &PolyFq) -> Result<(Fq, Vec<(PolyFq, usize)>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading();
    let mut out: Vec<(PolyFq, usize)> = Vec::new();
    if f.degree() > 0 {
        let monic = f.monic()?;
        for (sf, mult) in squarefree_decomposition(&monic)? {
            for (g, d) in distinct_degree(&sf)? {
                for h in equal_degree(&g, d)? {
                    merge(&mut out, h, mult);
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (
            a.0.degree(),
            a.0.coeffs().iter().map(|c| c.0).collect::<Vec<_>>(),
        )
            .cmp(&(b.0.degree(), b.0.coeffs().iter().map(|c| c.0).collect()))
    });
    Ok((unit, out))
}

fn merge(out: &mut Vec<(PolyFq, usize)>, g: PolyFq, mult: usize) {
    for (f, m) in out.iter_mut() {
        if *f == g {
            *m += mult;
            return;
        }
    }
    out.push((g, mult));
}

/// Yun-style square-free decomposition in characteristic p, handling the
/// f' = 0 case by taking p-th roots (c^{p^{e-1}} inverts the Frobenius).
fn squarefree_decomposition(f: &PolyFq) -> Result<Vec<(PolyFq, usize)>> {
    let ctx = f.ctx().clone();
    let p = ctx.p() as usize;
    let mut out: Vec<(PolyFq, usize)> = Vec::new();
    let mut stack = vec![(f.clone(), 1usize)];
    while let Some((g, scale)) = stack.pop() {
        if g.degree() == 0 {
            continue;
        }
        let d = g.derivative();
        if d.is_zero() {
            // g = h(X^p); p-th root coefficientwise
            let root = pth_root_poly(&g)?;
            stack.push((root, scale * p));
            continue;
        }
        let mut c = g.gcd(&d);
        let mut w = g.divrem(&c)?.0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.divrem(&y)?.0;
            if fac.degree() > 0 {
                out.push((fac, i * scale));
            }
            w = y.clone();
            c = c.divrem(&y)?.0;
            i += 1;
        }
        if c.degree() > 0 {
            // remaining part is a p-th power
            stack.push((pth_root_poly(&c)?, scale * p));
        }
    }
    Ok(out)
}

fn pth_root_poly(g: &PolyFq) -> Result<PolyFq> {
    let ctx = g.ctx().clone();
    let p = ctx.p() as usize;
    debug_assert!(g.degree().is_multiple_of(p));
    let coeffs = (0..=g.degree() / p)
        .map(|i| {
            let c = g.coeff(i * p);
            // p-th root in F_{p^e}: c^{p^{e-1}}
            let mut r = c;
            for _ in 0..ctx.e() - 1 {
                r = ctx.frobenius(r, 1).expect("ell=1 valid");
            }
            r
        })
        .collect();
    Ok(PolyFq::new(ctx, coeffs))
}

/// Distinct-degree factorization of a monic square-free polynomial.
/// Returns (product of irreducibles of degree d, d) pairs.
fn distinct_degree(f: &PolyFq) -> Result<Vec<(PolyFq, usize)>> {
    let ctx = f.ctx().clone();
    let q = ctx.q();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut xq = PolyFq::x(ctx.clone()).rem(&rest)?; // X^{q^d} mod rest
    let mut d = 0;
    while !rest.is_one() && rest.degree() >= 2 * (d + 1) {
        d += 1;
        xq = xq.pow_mod(q, &rest)?;
        let g = xq.sub(&PolyFq::x(ctx.clone())).gcd(&rest);
        if g.degree() > 0 {
            out.push((g.clone(), d));
            rest = rest.divrem(&g)?.0;
            xq = xq.rem(&rest)?;
        }
    }
    if !rest.is_one() && rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    Ok(out)
}

/// Cantor–Zassenhaus equal-degree splitting: f is monic square-free, a
/// product of irreducibles all of degree d. Fixed seed keeps runs identical.
fn equal_degree(f: &PolyFq, d: usize) -> Result<Vec<PolyFq>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = Vec::new();
    let mut todo = vec![f.clone()];
    while let Some(g) = todo.pop() {
        if g.degree() == d {
            done.push(g);
            continue;
        }
        let (a, b) = split_once(&g, d, &mut rng)?;
        todo.push(a);
        todo.push(b);
    }
    done.sort_by_key(|g| g.coeffs().iter().map(|c| c.0).collect::<Vec<_>>());
    Ok(done)
}

fn split_once(g: &PolyFq, d: usize, rng: &mut ChaCha8Rng) -> Result<(PolyFq, PolyFq)> {
    let ctx = g.ctx().clone();
    let q = ctx.q();
    loop {
        let coeffs: Vec<Fq> = (0..g.degree()).map(|_| Fq(rng.gen_range(0..q))).collect();
        let a = PolyFq::new(ctx.clone(), coeffs);
        if a.is_zero() || a.degree() == 0 {
            continue;
        }
        let c = a.gcd(g);
        if c.degree() > 0 && c.degree() < g.degree() {
            return Ok((c.clone(), g.divrem(&c)?.0));
        }
        let s = if ctx.p() == 2 {
            // trace of a over F_2 inside each residue field F_{q^d}
            let mut t = a.rem(g)?;
            let mut acc = t.clone();
            for _ in 1..ctx.e() * d {
                t = t.mul(&t).rem(g)?;
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^{(q^d-1)/2} via the norm chain: N = prod a^{q^i}, then
            // N^{(q-1)/2}; avoids the multi-word exponent q^d - 1.
            let mut t = a.rem(g)?;
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(q, g)?;
                norm = norm.mul(&t).rem(g)?;
            }
            norm.pow_mod((q - 1) / 2, g)?
        };
        let candidate = if ctx.p() == 2 {
            s.clone()
        } else {
            s.sub(&PolyFq::one(ctx.clone()))
        };
        let c = candidate.gcd(g);
        if c.degree() > 0 && c.degree() < g.degree() {
            return Ok((c.clone(), g.divrem(&c)?.0));
        }
    }
}

/// Irreducibility via factorization shape (degree-1 factor list of length 1).
pub fn is_irreducible(f: &PolyFq) -> Result<bool> {
    if f.is_zero() || f.degree() == 0 {
        return Ok(false);
    }
    let (_, factors) = factorize(f)?;
    Ok(factors.len() == 1 && factors[0].1 == 1)
}
