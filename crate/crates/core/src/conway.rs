//! Bundled Conway polynomials C_{p,e}, coefficients ascending.
//!
//! Magma realizes GF(p^e) through these, so every z^k printed here agrees
//! with Magma's exponent tables for the same field.

pub const CONWAY: &[(u64, usize, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (3, 7, &[1, 0, 2, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 5, &[3, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 0, 1, 4, 1, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (7, 6, &[3, 6, 4, 5, 1, 0, 1]),
];

pub fn lookup(p: u64, e: usize) -> Option<&'static [u64]> {
    CONWAY
        .iter()
        .find(|&&(cp, ce, _)| cp == p && ce == e)
        .map(|&(_, _, f)| f)
}
