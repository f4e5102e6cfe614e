//! Text and JSON serialization for matrices.
//!
//! Text format:
//! ```text
//! field p=3 e=2 modulus=2,2,1
//! matrix rows=2 cols=4
//! 1 0 1 1
//! 0 1 z^5 2
//! ```
//! The JSON mirror carries the same fields plus a schema version.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldSpec, Fq, ModulusChoice};
use crate::matrix::FqMatrix;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub schema: u32,
    pub p: u64,
    pub e: usize,
    pub modulus: Vec<u64>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_to_text(m: &FqMatrix) -> String {
    let ctx = m.ctx();
    let modulus: Vec<String> = ctx.spec().modulus.iter().map(u64::to_string).collect();
    let mut out = format!(
        "field p={} e={} modulus={}\nmatrix rows={} cols={}\n",
        ctx.p(),
        ctx.e(),
        modulus.join(","),
        m.rows(),
        m.cols()
    );
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| ctx.format_element(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_kv<'a>(token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|s| s.strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("expected `{key}=...`, got `{token}`")))
}

pub fn matrix_from_text(text: &str) -> Result<FqMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "field" {
        return Err(Error::Parse(format!("bad field header: `{header}`")));
    }
    let p: u64 = parse_kv(toks[1], "p")?
        .parse()
        .map_err(|_| Error::Parse("bad p".into()))?;
    let e: usize = parse_kv(toks[2], "e")?
        .parse()
        .map_err(|_| Error::Parse("bad e".into()))?;
    let modulus: Vec<u64> = parse_kv(toks[3], "modulus")?
        .split(',')
        .map(|c| {
            c.trim()
                .parse()
                .map_err(|_| Error::Parse("bad modulus".into()))
        })
        .collect::<Result<_>>()?;
    let ctx = FieldCtx::new(p, e, ModulusChoice::Explicit(modulus))?;

    let dims = lines
        .next()
        .ok_or_else(|| Error::Parse("missing matrix header".into()))?;
    let toks: Vec<&str> = dims.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "matrix" {
        return Err(Error::Parse(format!("bad matrix header: `{dims}`")));
    }
    let rows: usize = parse_kv(toks[1], "rows")?
        .parse()
        .map_err(|_| Error::Parse("bad rows".into()))?;
    let cols: usize = parse_kv(toks[2], "cols")?
        .parse()
        .map_err(|_| Error::Parse("bad cols".into()))?;

    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing matrix row".into()))?;
        let row: Vec<Fq> = line
            .split_whitespace()
            .map(|t| ctx.parse_element(t))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "row has {} entries, expected {cols}",
                row.len()
            )));
        }
        data.push(row);
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after matrix rows".into()));
    }
    FqMatrix::from_rows(ctx, data)
}

pub fn matrix_to_json(m: &FqMatrix) -> MatrixJson {
    let ctx = m.ctx();
    MatrixJson {
        schema: SCHEMA_VERSION,
        p: ctx.p(),
        e: ctx.e(),
        modulus: ctx.spec().modulus.clone(),
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| m.row(i).iter().map(|&x| ctx.format_element(x)).collect())
            .collect(),
    }
}

pub fn matrix_from_json(j: &MatrixJson) -> Result<FqMatrix> {
    if j.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema {}", j.schema)));
    }
    let ctx = FieldCtx::new(j.p, j.e, ModulusChoice::Explicit(j.modulus.clone()))?;
    if j.entries.len() != j.rows {
        return Err(Error::Parse("row count mismatch".into()));
    }
    let data: Vec<Vec<Fq>> = j
        .entries
        .iter()
        .map(|r| {
            if r.len() != j.cols {
                return Err(Error::Parse("column count mismatch".into()));
            }
            r.iter().map(|t| ctx.parse_element(t)).collect()
        })
        .collect::<Result<_>>()?;
    FqMatrix::from_rows(ctx, data)
}

/// Parse element rows against an existing context (used for bundled data
/// where the field is fixed by the caller).
pub fn rows_from_tokens(ctx: &Arc<FieldCtx>, text: &str) -> Result<FqMatrix> {
    let data: Vec<Vec<Fq>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split_whitespace()
                .map(|t| ctx.parse_element(t))
                .collect()
        })
        .collect::<Result<_>>()?;
    FqMatrix::from_rows(ctx.clone(), data)
}

/// Sanity check that an explicit spec names the same field a fresh context
/// would (p prime, modulus irreducible): constructing the ctx validates it.
pub fn ctx_from_spec(spec: &FieldSpec) -> Result<Arc<FieldCtx>> {
    FieldCtx::new(
        spec.p,
        spec.e,
        ModulusChoice::Explicit(spec.modulus.clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn sample() -> FqMatrix {
        let ctx = FieldCtx::conway(3, 2).unwrap();
        let z = ctx.zeta();
        FqMatrix::from_rows(
            ctx.clone(),
            vec![
                vec![Fq::ONE, Fq::ZERO, z, ctx.zeta_pow(5)],
                vec![Fq::ZERO, Fq::ONE, Fq(2), ctx.zeta_pow(3)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn text_round_trip() {
        let m = sample();
        let text = matrix_to_text(&m);
        assert!(text.starts_with("field p=3 e=2 modulus=2,2,1\nmatrix rows=2 cols=4\n"));
        let back = matrix_from_text(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn json_round_trip() {
        let m = sample();
        let j = matrix_to_json(&m);
        let s = serde_json::to_string(&j).unwrap();
        let j2: MatrixJson = serde_json::from_str(&s).unwrap();
        let back = matrix_from_json(&j2).unwrap();
        assert_eq!(m, back);
        assert_eq!(j.schema, 1);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matrix_from_text("").is_err());
        assert!(matrix_from_text("field p=3 e=2\nmatrix rows=1 cols=1\n0\n").is_err());
        assert!(matrix_from_text("field p=4 e=1 modulus=0,1\nmatrix rows=1 cols=1\n0\n").is_err());
        // wrong row width
        assert!(
            matrix_from_text("field p=3 e=2 modulus=2,2,1\nmatrix rows=1 cols=3\n1 2\n").is_err()
        );
        // reducible modulus
        assert!(
            matrix_from_text("field p=3 e=2 modulus=0,0,1\nmatrix rows=1 cols=1\n1\n").is_err()
        );
    }

    #[test]
    fn explicit_modulus_respected() {
        // x^2 + 1 is irreducible over F_3 but is not the Conway polynomial
        let text = "field p=3 e=2 modulus=1,0,1\nmatrix rows=1 cols=2\nz^1 2\n";
        let m = matrix_from_text(text).unwrap();
        assert_eq!(m.ctx().spec().modulus, vec![1, 0, 1]);
        assert_eq!(matrix_from_text(&matrix_to_text(&m)).unwrap(), m);
    }
}
