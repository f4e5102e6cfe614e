//! Exact arithmetic in F_q = F_{p^e}: Frobenius maps, primitive-element and
//! discrete-log services, and the (p^l+1)-power norm-set membership test.

use crate::conway;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A field element, stored as its coefficient vector (a_0, ..., a_{e-1}) over
/// F_p packed base p into `a_0 + a_1*p + ... + a_{e-1}*p^{e-1}`. Exponent form
/// z^k is a presentation layer only; 0 is first-class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fq(pub u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Field parameters: prime p, extension degree e, monic irreducible modulus
/// of degree e with ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: usize,
    pub modulus: Vec<u64>,
}

/// Modulus selection for [`FieldCtx::new`].
#[derive(Debug, Clone)]
pub enum ModulusChoice {
    ConwayDefault,
    Explicit(Vec<u64>),
}

enum DlogStrategy {
    /// exp[i] = zeta^i for i in 0..q-1, log[code] = i (log[0] unused).
    Table { exp: Vec<Fq>, log: Vec<u32> },
    /// Baby-step/giant-step, for fields too large to table.
    Bsgs,
}

/// The ambient field. Immutable after construction; all operations are pure,
/// so a `FieldCtx` can be shared freely across threads.
pub struct FieldCtx {
    spec: FieldSpec,
    q: u64,
    zeta: Fq,
    qm1_prime_factors: Vec<u64>,
    dlog: DlogStrategy,
}

pub const DLOG_TABLE_LIMIT: u64 = 1 << 20;

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldCtx(p={}, e={}, q={})",
            self.spec.p, self.spec.e, self.q
        )
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Extended gcd on i128; returns (g, x, y) with a*x + b*y = g.
fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

// --- dense polynomial helpers over F_p, used for construction and the
// --- no-table multiplication path ---

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let e = modulus.len() - 1;
    let mut res = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            res[i + j] = (res[i + j] + ai * bj) % p;
        }
    }
    for i in (e..res.len()).rev() {
        let c = res[i];
        if c != 0 {
            res[i] = 0;
            for (j, &mj) in modulus.iter().enumerate().take(e) {
                // subtract c * x^{i-e} * (modulus - x^e)
                res[i - e + j] = (res[i - e + j] + (p - 1) * c % p * mj) % p;
            }
        }
    }
    res.truncate(e.max(1));
    res.resize(e.max(1), 0);
    res
}

fn poly_pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let e = modulus.len() - 1;
    let mut result = vec![0u64; e.max(1)];
    result[0] = 1;
    let mut b = base.to_vec();
    b.resize(e.max(1), 0);
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mul_mod(&result, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    result
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Irreducibility over F_p via the Rabin test: x^{p^e} = x mod f, and
/// x^{p^{e/r}} - x coprime to f for every prime r | e.
fn modulus_irreducible(modulus: &[u64], p: u64) -> bool {
    let e = modulus.len() - 1;
    let x = {
        let mut v = vec![0u64; e.max(2)];
        v[1] = 1;
        v
    };
    let frob_iter = |poly: &[u64], times: usize| -> Vec<u64> {
        let mut cur = poly.to_vec();
        for _ in 0..times {
            cur = poly_pow_mod(&cur, p, modulus, p);
        }
        cur
    };
    if e == 1 {
        return true;
    }
    let xpe = frob_iter(&x, e);
    let mut diff = xpe.clone();
    diff[1] = (diff[1] + p - 1) % p;
    if !poly_is_zero(&diff) {
        return false;
    }
    for r in prime_factors(e as u64) {
        let sub = frob_iter(&x, e / r as usize);
        let mut d = sub.clone();
        d[1] = (d[1] + p - 1) % p;
        if poly_gcd_deg(&d, modulus, p) != 0 {
            return false;
        }
    }
    true
}

/// Degree of gcd(a, f) over F_p, for the irreducibility check only.
fn poly_gcd_deg(a: &[u64], f: &[u64], p: u64) -> usize {
    let inv_mod_p = |x: u64| -> u64 {
        // Fermat
        let mut r = 1u64;
        let mut b = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let deg = |v: &[u64]| v.iter().rposition(|&c| c != 0);
    let mut a: Vec<u64> = a.to_vec();
    let mut b: Vec<u64> = f.to_vec();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        match (da, db) {
            (None, Some(d)) => return d,
            (Some(d), None) => return d,
            (None, None) => return 0,
            (Some(da), Some(db)) => {
                if da < db {
                    std::mem::swap(&mut a, &mut b);
                    continue;
                }
                // a -= lead(a)/lead(b) * x^{da-db} * b
                let c = a[da] * inv_mod_p(b[db]) % p;
                for i in 0..=db {
                    a[da - db + i] = (a[da - db + i] + (p - c) * b[i]) % p;
                }
            }
        }
    }
}

impl FieldCtx {
    /// Build F_{p^e}. With [`ModulusChoice::ConwayDefault`] the modulus is the
    /// bundled Conway polynomial; explicit moduli are verified irreducible.
    pub fn new(p: u64, e: usize, choice: ModulusChoice) -> Result<Arc<FieldCtx>> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e < 1 {
            return Err(Error::BadModulus { expected: e });
        }
        let modulus: Vec<u64> = match choice {
            ModulusChoice::ConwayDefault => conway::lookup(p, e)
                .ok_or(Error::ConwayTableMiss { p, e })?
                .to_vec(),
            ModulusChoice::Explicit(m) => m,
        };
        if modulus.len() != e + 1 || modulus[e] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus { expected: e });
        }
        if !modulus_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        let q = p.checked_pow(e as u32).expect("q overflows u64");
        let spec = FieldSpec { p, e, modulus };
        let qm1_prime_factors = prime_factors(q - 1);
        let mut ctx = FieldCtx {
            spec,
            q,
            zeta: Fq(0),
            qm1_prime_factors,
            dlog: DlogStrategy::Bsgs,
        };
        ctx.zeta = ctx.find_primitive()?;
        if q <= DLOG_TABLE_LIMIT {
            ctx.build_tables();
        }
        Ok(Arc::new(ctx))
    }

    pub fn conway(p: u64, e: usize) -> Result<Arc<FieldCtx>> {
        Self::new(p, e, ModulusChoice::ConwayDefault)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn p(&self) -> u64 {
        self.spec.p
    }
    pub fn e(&self) -> usize {
        self.spec.e
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn zeta(&self) -> Fq {
        self.zeta
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.spec == other.spec
    }

    /// All q elements in code order (0 first).
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    pub fn encode(&self, coeffs: &[u64]) -> Fq {
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.spec.p + c % self.spec.p;
        }
        Fq(v)
    }

    pub fn coeffs(&self, x: Fq) -> Vec<u64> {
        let mut v = x.0;
        let mut out = Vec::with_capacity(self.spec.e);
        for _ in 0..self.spec.e {
            out.push(v % self.spec.p);
            v /= self.spec.p;
        }
        out
    }

    fn find_primitive(&self) -> Result<Fq> {
        // The class of X comes first: for a Conway modulus it is primitive by
        // construction, which fixes the meaning of z^k.
        let x_first = (self.spec.e >= 2).then_some(Fq(self.spec.p));
        let candidates = x_first
            .into_iter()
            .chain((1..self.q).map(Fq).filter(move |&c| Some(c) != x_first));
        for cand in candidates {
            if self.order_with(cand) == self.q - 1 {
                return Ok(cand);
            }
        }
        Err(Error::NoPrimitiveFound)
    }

    fn order_with(&self, x: Fq) -> u64 {
        // multiplicative order via the factorization of q-1 (raw arithmetic,
        // usable before tables exist)
        let mut ord = self.q - 1;
        for &r in &self.qm1_prime_factors {
            while ord.is_multiple_of(r) && self.pow_raw(x, ord / r) == Fq::ONE {
                ord /= r;
            }
        }
        ord
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![0u32; q];
        let mut cur = Fq::ONE;
        for i in 0..q - 1 {
            exp.push(cur);
            log[cur.0 as usize] = i as u32;
            cur = self.mul_raw(cur, self.zeta);
        }
        debug_assert_eq!(cur, Fq::ONE);
        self.dlog = DlogStrategy::Table { exp, log };
    }

    // --- arithmetic ---

    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        let p = self.spec.p;
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u64;
        let mut shift = 1u64;
        for _ in 0..self.spec.e {
            out += (a % p + b % p) % p * shift;
            a /= p;
            b /= p;
            shift *= p;
        }
        Fq(out)
    }

    pub fn neg(&self, x: Fq) -> Fq {
        let p = self.spec.p;
        let mut a = x.0;
        let mut out = 0u64;
        let mut shift = 1u64;
        for _ in 0..self.spec.e {
            out += (p - a % p) % p * shift;
            a /= p;
            shift *= p;
        }
        Fq(out)
    }

    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    fn mul_raw(&self, x: Fq, y: Fq) -> Fq {
        if x.is_zero() || y.is_zero() {
            return Fq::ZERO;
        }
        let a = self.coeffs(x);
        let b = self.coeffs(y);
        self.encode(&poly_mul_mod(&a, &b, &self.spec.modulus, self.spec.p))
    }

    fn pow_raw(&self, x: Fq, mut k: u64) -> Fq {
        let mut result = Fq::ONE;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_raw(result, base);
            }
            base = self.mul_raw(base, base);
            k >>= 1;
        }
        result
    }

    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        match &self.dlog {
            DlogStrategy::Table { exp, log } => {
                if x.is_zero() || y.is_zero() {
                    return Fq::ZERO;
                }
                let m = self.q - 1;
                let i = log[x.0 as usize] as u64 + log[y.0 as usize] as u64;
                exp[(i % m) as usize]
            }
            DlogStrategy::Bsgs => self.mul_raw(x, y),
        }
    }

    pub fn pow(&self, x: Fq, k: u64) -> Fq {
        if x.is_zero() {
            return if k == 0 { Fq::ONE } else { Fq::ZERO };
        }
        match &self.dlog {
            DlogStrategy::Table { exp, log } => {
                let m = (self.q - 1) as u128;
                let i = (log[x.0 as usize] as u128 * (k as u128 % m)) % m;
                exp[i as usize]
            }
            DlogStrategy::Bsgs => self.pow_raw(x, k % (self.q - 1)),
        }
    }

    pub fn inv(&self, x: Fq) -> Result<Fq> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(x, self.q - 2))
    }

    /// zeta^k (k may exceed q-1; reduced mod q-1).
    pub fn zeta_pow(&self, k: u64) -> Fq {
        self.pow(self.zeta, k)
    }

    /// sigma_l(x) = x^{p^l}. l = e is accepted as the identity (sigma_e = id).
    pub fn frobenius(&self, x: Fq, ell: usize) -> Result<Fq> {
        self.check_ell(ell)?;
        Ok(self.pow(x, self.spec.p.pow((ell % self.spec.e.max(1)) as u32)))
    }

    pub fn check_ell(&self, ell: usize) -> Result<()> {
        if ell > self.spec.e {
            return Err(Error::EllOutOfRange {
                ell,
                e: self.spec.e,
            });
        }
        Ok(())
    }

    /// Smallest t >= 1 with x^t = 1. Divides q-1.
    pub fn element_order(&self, x: Fq) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.order_with(x))
    }

    /// The unique k in [0, q-1) with zeta^k = x.
    pub fn discrete_log(&self, x: Fq) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        match &self.dlog {
            DlogStrategy::Table { log, .. } => Ok(log[x.0 as usize] as u64),
            DlogStrategy::Bsgs => {
                let m = (self.q as f64).sqrt().ceil() as u64 + 1;
                let mut baby: HashMap<Fq, u64> = HashMap::with_capacity(m as usize);
                let mut cur = Fq::ONE;
                for j in 0..m {
                    baby.entry(cur).or_insert(j);
                    cur = self.mul_raw(cur, self.zeta);
                }
                // giant step factor zeta^{-m}
                let giant = self.pow_raw(self.zeta, self.q - 1 - (m % (self.q - 1)));
                let mut gamma = x;
                for i in 0..=m {
                    if let Some(&j) = baby.get(&gamma) {
                        return Ok((i * m + j) % (self.q - 1));
                    }
                    gamma = self.mul_raw(gamma, giant);
                }
                Err(Error::NoPrimitiveFound)
            }
        }
    }

    /// Membership in F_q^{(p^l+1)} = {x^{p^l+1}}, with a witness a' such that
    /// a'^{p^l+1} = a when the answer is yes.
    pub fn is_galois_norm(&self, a: Fq, ell: usize) -> Result<(bool, Option<Fq>)> {
        self.check_ell(ell)?;
        if a.is_zero() {
            return Ok((true, Some(Fq::ZERO)));
        }
        let m = self.q - 1;
        let k = self.spec.p.pow(ell as u32) + 1;
        let d = gcd(k % m, m);
        let la = self.discrete_log(a)?;
        if la % d != 0 {
            return Ok((false, None));
        }
        // solve (p^l+1) * y = la (mod q-1)
        let (g, inv, _) = egcd((k % m) as i128, m as i128);
        debug_assert_eq!(g as u64, d);
        let y = ((la / d) as i128 * inv).rem_euclid((m / d) as i128) as u64;
        let witness = self.zeta_pow(y);
        debug_assert_eq!(self.pow(witness, k), a);
        Ok((true, Some(witness)))
    }

    // --- text forms ---

    /// Accepts "0", "z^k", or the base-p packed integer code.
    pub fn parse_element(&self, s: &str) -> Result<Fq> {
        let s = s.trim();
        if s == "0" {
            return Ok(Fq::ZERO);
        }
        if let Some(k) = s.strip_prefix("z^").or_else(|| s.strip_prefix("z")) {
            let k: u64 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in element token '{s}'")))?;
            return Ok(self.zeta_pow(k));
        }
        let v: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad element token '{s}'")))?;
        if v >= self.q {
            return Err(Error::Parse(format!(
                "element code {v} out of range for q={}",
                self.q
            )));
        }
        Ok(Fq(v))
    }

    /// Canonical form: "0" or "z^k".
    pub fn format_element(&self, x: Fq) -> String {
        if x.is_zero() {
            "0".to_string()
        } else if x == Fq::ONE {
            "1".to_string()
        } else {
            format!("z^{}", self.discrete_log(x).expect("nonzero"))
        }
    }
}
