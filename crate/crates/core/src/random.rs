//! Seeded random inputs for the verification suites, the CLI and tests.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graded_matrix::GradedMatrix;
use crate::multiindex::{enumerate_degree, Multiindex};
use crate::polymap::PolyMap;
use crate::scalar::Rational;

pub use crate::analysis::{gaussian_block, sample_rng};

/// A small rational `a/b`, `|a| <= 6`, `1 <= b <= 4`; zero with
/// probability roughly `1/13`.
pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.random_range(-6..=6);
    let den: i64 = rng.random_range(1..=4);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rational(rng);
        if r != Rational::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

pub fn rational_block(
    rng: &mut ChaCha8Rng,
    row_arity: usize,
    col_arity: usize,
    row_degree: u32,
    col_degree: u32,
) -> Result<GradedMatrix<Rational>> {
    GradedMatrix::from_fn(row_arity, col_arity, row_degree, col_degree, |_, _| {
        rational(rng)
    })
}

/// A rational block with at least one nonzero entry.
pub fn nonzero_rational_block(
    rng: &mut ChaCha8Rng,
    row_arity: usize,
    col_arity: usize,
    row_degree: u32,
    col_degree: u32,
) -> Result<GradedMatrix<Rational>> {
    loop {
        let b = rational_block(rng, row_arity, col_arity, row_degree, col_degree)?;
        if !b.is_zero() {
            return Ok(b);
        }
    }
}

pub fn rational_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng)).collect()
}

/// A map `F^n_in -> F^n_out` with up to `max_terms` terms per component,
/// each of degree `<= max_degree`.
pub fn rational_map(
    rng: &mut ChaCha8Rng,
    n_in: usize,
    n_out: usize,
    max_degree: u32,
    max_terms: usize,
) -> PolyMap<Rational> {
    let mut terms = Vec::new();
    for j in 0..n_out {
        let count = rng.random_range(1..=max_terms.max(1));
        for _ in 0..count {
            let d = rng.random_range(0..=max_degree);
            terms.push((j, random_exponent(rng, n_in, d), rational(rng)));
        }
    }
    PolyMap::from_terms(n_in, n_out, terms).expect("valid terms")
}

/// A homogeneous scalar polynomial of degree `degree` in `n` variables with
/// random rational coefficients on a random subset of monomials.
pub fn homogeneous_poly(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> PolyMap<Rational> {
    let mut terms = Vec::new();
    for a in enumerate_degree(n, degree) {
        if rng.random_bool(0.6) {
            terms.push((0, a, rational(rng)));
        }
    }
    PolyMap::from_terms(n, 1, terms).expect("valid terms")
}

/// Exponent of degree `d` in `n` variables, drawn by stars and bars; the
/// zero-length index when `n = 0`.
pub fn random_exponent(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Multiindex {
    if n == 0 {
        return Multiindex::zero(0);
    }
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.random_range(0..n)] += 1;
    }
    Multiindex::new(e)
}
