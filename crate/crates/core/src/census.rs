//! Desk-scale census: sweep a bounded grid of (q, n, lambda, l) points,
//! count the l-Galois self-dual lambda-constacyclic codes at each point and
//! how many of them admit a nontrivial (cases iv-vi) triple, and store one
//! re-verifiable certificate per such code.

use crate::ccyclic::{find_galois_self_dual, lambda_candidates, ConstaSpec, ConstacyclicCode};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::etf::{check_self_dual_setup, gram_oracle, search_first_nontrivial, RstTriple};
use crate::field::{FieldCtx, Fq};
use crate::io::SCHEMA_VERSION;
use crate::matrix::FqMatrix;
use serde::Serialize;
use std::sync::Arc;

/// Default budget: fields up to 7^4 and lengths up to 14.
pub const MAX_Q: u64 = 2401;
pub const MAX_N: usize = 14;

/// Swept parameter grid. `ells = None` sweeps every l in 0..e per field;
/// `lambdas = None` sweeps every admissible shift constant.
#[derive(Debug, Clone, Serialize)]
pub struct CensusGrid {
    /// (p, e) pairs, swept in the given order.
    pub fields: Vec<(u64, usize)>,
    /// Even code lengths.
    pub ns: Vec<usize>,
    pub ells: Option<Vec<usize>>,
    /// Shift constants as element tokens (`z^k`, `1`, ...); parsed per field.
    pub lambdas: Option<Vec<String>>,
}

impl CensusGrid {
    /// The desk-scale default: q in {9, 25, 49, 81}, even n <= 12, all l
    /// and all admissible lambda.
    pub fn desk() -> CensusGrid {
        CensusGrid {
            fields: vec![(3, 2), (5, 2), (7, 2), (3, 4)],
            ns: (1..=6).map(|i| 2 * i).collect(),
            ells: None,
            lambdas: None,
        }
    }
}

/// One stored ETF witness: enough to rebuild the code from scratch and
/// re-certify the triple through the Gram oracle.
#[derive(Debug, Clone, Serialize)]
pub struct CensusCertificate {
    /// Coefficients of the monic generator divisor g, ascending.
    pub generator: Vec<String>,
    pub r: String,
    pub s: String,
    pub t: String,
    pub case: Option<String>,
    pub a: String,
    pub digest: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusPoint {
    pub p: u64,
    pub e: usize,
    pub q: u64,
    pub n: usize,
    pub lambda: String,
    pub ell: usize,
    pub self_dual_count: usize,
    pub etf_count: usize,
    pub certificates: Vec<CensusCertificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub schema: u32,
    pub grid: CensusGrid,
    pub points: Vec<CensusPoint>,
    pub total_self_dual: usize,
    pub total_etf: usize,
}

/// Runs the census over the grid. Deterministic: fixed sweep order, fixed
/// triple search order, no randomness.
pub fn run_census(grid: &CensusGrid) -> Result<CensusReport> {
    for &(p, e) in &grid.fields {
        let q = (p as u128).pow(e as u32);
        if q > u128::from(MAX_Q) {
            return Err(Error::GridTooLarge(format!(
                "field size {p}^{e} exceeds the budget q <= {MAX_Q}"
            )));
        }
    }
    for &n in &grid.ns {
        if n > MAX_N {
            return Err(Error::GridTooLarge(format!(
                "length {n} exceeds the budget n <= {MAX_N}"
            )));
        }
        if n == 0 || n % 2 != 0 {
            return Err(Error::OddLength(n));
        }
    }

    let mut points = Vec::new();
    let mut total_self_dual = 0;
    let mut total_etf = 0;
    for &(p, e) in &grid.fields {
        let ctx = FieldCtx::conway(p, e)?;
        let ells: Vec<usize> = match &grid.ells {
            Some(v) => {
                for &l in v {
                    ctx.check_ell(l)?;
                }
                v.clone()
            }
            None => (0..e).collect(),
        };
        for &n in &grid.ns {
            for &ell in &ells {
                for lambda in point_lambdas(&ctx, ell, grid.lambdas.as_deref())? {
                    points.push(census_point(&ctx, n, lambda, ell)?);
                    let pt = points.last().expect("just pushed");
                    total_self_dual += pt.self_dual_count;
                    total_etf += pt.etf_count;
                }
            }
        }
    }
    Ok(CensusReport {
        schema: SCHEMA_VERSION,
        grid: grid.clone(),
        points,
        total_self_dual,
        total_etf,
    })
}

/// Re-runs a stored certificate from scratch: rebuilds the code from the
/// generator divisor, re-extracts A, and re-certifies (r, s, t) via the
/// Gram oracle, checking the scalar a agrees.
pub fn reverify_certificate(point: &CensusPoint, cert: &CensusCertificate) -> Result<()> {
    let ctx = FieldCtx::conway(point.p, point.e)?;
    let lambda = ctx.parse_element(&point.lambda)?;
    let g: Vec<Fq> = cert
        .generator
        .iter()
        .map(|s| ctx.parse_element(s))
        .collect::<Result<_>>()?;
    let code = code_from_divisor(&ctx, point.n, &g)?;
    let a_mat = check_self_dual_setup(&code, point.ell)?;
    let triple = RstTriple {
        r: ctx.parse_element(&cert.r)?,
        s: ctx.parse_element(&cert.s)?,
        t: ctx.parse_element(&cert.t)?,
    };
    let fresh = gram_oracle(&a_mat, triple, point.ell)?;
    if ctx.format_element(fresh.a) != cert.a {
        return Err(Error::ConditionFailed {
            case: "census",
            detail: format!(
                "stored a = {} but re-certification gives {}",
                cert.a,
                ctx.format_element(fresh.a)
            ),
        });
    }
    // shift-invariance sanity: the rebuilt code must still be the
    // lambda-constacyclic ideal it was recorded as
    let spec = ConstaSpec::new(&ctx, point.n, lambda)?;
    let cc = ConstacyclicCode {
        spec,
        g: crate::poly::PolyFq::new(ctx.clone(), g),
        code: code.clone(),
    };
    let shifted = cc.shift(code.gen().row(0));
    if !code.contains(&shifted) {
        return Err(Error::ConditionFailed {
            case: "census",
            detail: "rebuilt code is not shift-invariant".into(),
        });
    }
    Ok(())
}

fn point_lambdas(ctx: &Arc<FieldCtx>, ell: usize, requested: Option<&[String]>) -> Result<Vec<Fq>> {
    let mut cands = lambda_candidates(ctx, ell)?;
    cands.sort_by_key(|&x| ctx.discrete_log(x).expect("nonzero"));
    match requested {
        None => Ok(cands),
        Some(tokens) => {
            let mut out = Vec::new();
            for tok in tokens {
                let x = ctx.parse_element(tok)?;
                if cands.contains(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
            Ok(out)
        }
    }
}

fn census_point(ctx: &Arc<FieldCtx>, n: usize, lambda: Fq, ell: usize) -> Result<CensusPoint> {
    let spec = ConstaSpec::new(ctx, n, lambda)?;
    let codes = find_galois_self_dual(ctx, &spec, ell)?;
    let mut certificates = Vec::new();
    for c in &codes {
        // k = 1 codes are self-dual but below the theorem's n > 1 floor
        let Ok(a_mat) = check_self_dual_setup(&c.code, ell) else {
            continue;
        };
        if let Some(cert) = search_first_nontrivial(&a_mat, ell)? {
            let generator: Vec<String> =
                c.g.coeffs()
                    .iter()
                    .map(|&x| ctx.format_element(x))
                    .collect();
            let r = ctx.format_element(cert.triple.r);
            let s = ctx.format_element(cert.triple.s);
            let t = ctx.format_element(cert.triple.t);
            let a = ctx.format_element(cert.a);
            let digest = digest_hex(&[
                &ctx.p().to_string(),
                &ctx.e().to_string(),
                &n.to_string(),
                &ctx.format_element(lambda),
                &ell.to_string(),
                &generator.join(","),
                &r,
                &s,
                &t,
                &a,
            ]);
            certificates.push(CensusCertificate {
                generator,
                r,
                s,
                t,
                case: cert.case.as_ref().map(|w| w.case.as_str().to_string()),
                a,
                digest,
            });
        }
    }
    Ok(CensusPoint {
        p: ctx.p(),
        e: ctx.e(),
        q: ctx.q(),
        n,
        lambda: ctx.format_element(lambda),
        ell,
        self_dual_count: codes.len(),
        etf_count: certificates.len(),
        certificates,
    })
}

/// Generator matrix of the ideal generated by g: rows are the n - deg(g)
/// shifts of g.
fn code_from_divisor(ctx: &Arc<FieldCtx>, n: usize, g: &[Fq]) -> Result<LinearCode> {
    if g.is_empty() || g.len() > n + 1 {
        return Err(Error::Parse(format!("bad generator degree for length {n}")));
    }
    let k = n + 1 - g.len();
    let rows = (0..k)
        .map(|i| {
            let mut row = vec![Fq::ZERO; n];
            row[i..i + g.len()].copy_from_slice(g);
            row
        })
        .collect();
    LinearCode::new(FqMatrix::from_rows(ctx.clone(), rows)?)
}

/// FNV-1a over the fields joined with `|`: a stable content fingerprint,
/// not a cryptographic hash.
fn digest_hex(parts: &[&str]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (i, part) in parts.iter().enumerate() {
        if i > 0 {
            h ^= u64::from(b'|');
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        for &b in part.as_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    }
    format!("{h:016x}")
}
