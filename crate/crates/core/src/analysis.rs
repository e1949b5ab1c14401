//! Real-valued norms on graded blocks and the inequalities they satisfy.
//!
//! For `A` in `M(p,p')`:
//!
//! ```text
//! ||A||_rho = ( sum |A_{a,a'}|^rho / (a! (p! p'!)^(rho-1)) )^(1/rho)
//! ```
//!
//! Block matrices sum the norms of their blocks. Sums use Neumaier
//! compensation since several checks sit right at their equality case.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::block_matrix::BlockMatrix;
use crate::error::{dim_err, Error, Result};
use crate::exec::Exec;
use crate::graded_matrix::GradedMatrix;
use crate::multiindex::{binomial, enumerate_degree, factorial};
use crate::scalar::{Rational, Scalar};

/// Relative slack allowed by every bound check.
pub const BOUND_SLACK: f64 = 1e-12;

/// Holder pair `1/rho + 1/varrho = 1`, `varrho = inf` at `rho = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormParams {
    pub rho: f64,
    pub varrho: f64,
}

impl NormParams {
    pub fn new(rho: f64) -> Result<Self> {
        if rho.is_nan() || rho < 1.0 || rho.is_infinite() {
            return Err(Error::InvalidParameter(format!(
                "rho must be a finite real >= 1, got {rho}"
            )));
        }
        let varrho = if rho == 1.0 {
            f64::INFINITY
        } else if rho == 2.0 {
            2.0
        } else {
            rho / (rho - 1.0)
        };
        Ok(NormParams { rho, varrho })
    }
}

/// Neumaier-compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    err: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.err += (self.sum - t) + x;
        } else {
            self.err += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(self) -> f64 {
        self.sum + self.err
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

pub(crate) fn factorial_f64(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// The weighted norm with an arbitrary exponent `e >= 1`; `e = inf` is the
/// largest absolute entry.
pub fn norm_with_exponent(a: &GradedMatrix<f64>, e: f64) -> f64 {
    if e.is_infinite() {
        return a.entries().iter().fold(0.0, |m, x| m.max(x.abs()));
    }
    let (p, pc) = a.degrees();
    let pp = factorial_f64(p) * factorial_f64(pc);
    let rows = enumerate_degree(a.row_arity(), p);
    let sum: CompensatedSum = rows
        .iter()
        .enumerate()
        .flat_map(|(i, alpha)| {
            let w = alpha
                .entries()
                .iter()
                .map(|&k| factorial_f64(k))
                .product::<f64>();
            (0..a.cols()).map(move |j| (i, j, w))
        })
        .map(|(i, j, w)| {
            let x = a.get(i, j).abs();
            if e == 1.0 {
                x / w
            } else if e == 2.0 {
                x * x / (w * pp)
            } else {
                x.powf(e) / (w * pp.powf(e - 1.0))
            }
        })
        .collect();
    let total = sum.total();
    if e == 1.0 {
        total
    } else if e == 2.0 {
        total.sqrt()
    } else {
        total.powf(1.0 / e)
    }
}

pub fn rho_norm(a: &GradedMatrix<f64>, params: &NormParams) -> f64 {
    norm_with_exponent(a, params.rho)
}

/// The conjugate-exponent norm `||A||_varrho`.
pub fn varrho_norm(a: &GradedMatrix<f64>, params: &NormParams) -> f64 {
    norm_with_exponent(a, params.varrho)
}

/// `||A||_2^2` computed exactly.
pub fn exact_squared_norm(a: &GradedMatrix<Rational>) -> Rational {
    let (p, pc) = a.degrees();
    let pp = Rational::from_integer(factorial(p) * factorial(pc));
    let mut acc = <Rational as Scalar>::zero();
    for (alpha, _, v) in a.nonzero_entries() {
        let w = Rational::from_integer(alpha.factorial()) * &pp;
        acc += v * v / w;
    }
    acc
}

pub fn block_norm(m: &BlockMatrix<f64>, params: &NormParams) -> f64 {
    m.blocks()
        .map(|b| rho_norm(b, params))
        .collect::<CompensatedSum>()
        .total()
}

/// `[P]_2 = (sum a_i^2 / C(m, i))^(1/2)` for `P(t) = sum a_i t^i`.
pub fn bombieri_norm(coeffs: &[f64]) -> f64 {
    let Some(m) = coeffs.len().checked_sub(1) else {
        return 0.0;
    };
    let m = m as u32;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| a * a / Scalar::to_f64(&Rational::from_integer(binomial(m, i as u32))))
        .collect::<CompensatedSum>()
        .total()
        .sqrt()
}

/// `M_P` of the homogenization `sum a_i t^i s^(m-i)`: a column in
/// `M_{2,0}(m,0)` with entry `a_i i! (m-i)!` at row `(i, m-i)`.
pub fn homogenized_matrix<S: Scalar>(coeffs: &[S]) -> Result<GradedMatrix<S>> {
    let Some(m) = coeffs.len().checked_sub(1) else {
        return Err(Error::InvalidParameter("empty coefficient list".into()));
    };
    let m = m as u32;
    GradedMatrix::from_fn(2, 0, m, 0, |row, _| {
        let i = row.entries()[0];
        let w = S::from_integer(&row.factorial());
        coeffs[i as usize].mul_ref(&w)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub satisfied: bool,
    pub witness: String,
}

impl BoundReport {
    pub fn new(lhs: f64, rhs: f64, witness: impl Into<String>) -> Self {
        let ratio = if rhs == 0.0 {
            if lhs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            lhs / rhs
        };
        BoundReport {
            lhs,
            rhs,
            ratio,
            satisfied: lhs <= rhs * (1.0 + BOUND_SLACK),
            witness: witness.into(),
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} lhs={:.12e} rhs={:.12e} ratio={:.12} [{}]",
            if self.satisfied { "ok" } else { "VIOLATED" },
            self.lhs,
            self.rhs,
            self.ratio,
            self.witness
        )
    }
}

fn describe(a: &GradedMatrix<f64>) -> String {
    format!(
        "M_{{{},{}}}({},{})",
        a.row_arity(),
        a.col_arity(),
        a.row_degree(),
        a.col_degree()
    )
}

/// `||A odot B|| <= ||A|| ||B||`.
pub fn check_odot_upper(
    a: &GradedMatrix<f64>,
    b: &GradedMatrix<f64>,
    params: &NormParams,
) -> Result<BoundReport> {
    let c = a.odot_with(b, Exec::Sequential)?;
    Ok(BoundReport::new(
        rho_norm(&c, params),
        rho_norm(a, params) * rho_norm(b, params),
        format!("odot {} x {} rho={}", describe(a), describe(b), params.rho),
    ))
}

/// The block-matrix version `||A odot B|| <= ||A|| ||B||`.
pub fn check_block_odot_upper(
    a: &BlockMatrix<f64>,
    b: &BlockMatrix<f64>,
    params: &NormParams,
) -> Result<BoundReport> {
    let c = a.odot_with(b, Exec::Sequential)?;
    Ok(BoundReport::new(
        block_norm(&c, params),
        block_norm(a, params) * block_norm(b, params),
        format!(
            "block odot, {} x {} blocks, rho={}",
            a.num_blocks(),
            b.num_blocks(),
            params.rho
        ),
    ))
}

/// `||A odot B|| / (||A|| ||B||)`.
pub fn odot_ratio(
    a: &GradedMatrix<f64>,
    b: &GradedMatrix<f64>,
    params: &NormParams,
) -> Result<f64> {
    let c = a.odot_with(b, Exec::Sequential)?;
    Ok(rho_norm(&c, params) / (rho_norm(a, params) * rho_norm(b, params)))
}

/// Gaussian block of the given shape from `rng`.
pub fn gaussian_block(
    rng: &mut ChaCha8Rng,
    row_arity: usize,
    col_arity: usize,
    row_degree: u32,
    col_degree: u32,
) -> Result<GradedMatrix<f64>> {
    let z = GradedMatrix::<f64>::zeros(row_arity, col_arity, row_degree, col_degree)?;
    let entries = (0..z.entries().len())
        .map(|_| StandardNormal.sample(rng))
        .collect();
    GradedMatrix::from_entries(row_arity, col_arity, row_degree, col_degree, entries)
}

/// Generator for sample `index` of the stream named by `seed`.
///
/// Every sample gets its own ChaCha8 stream, so results do not depend on
/// how samples are scheduled and a longer run extends a shorter one.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaShape {
    pub n: usize,
    pub n_col: usize,
    pub p: u32,
    pub p_col: u32,
    pub q: u32,
    pub q_col: u32,
}

/// Smallest `||A odot B||` seen over `samples` Gaussian pairs projected to
/// `||A|| = ||B|| = 1`: an upper estimate of the constant
/// `lambda(p,p',q,q')` in `lambda ||A|| ||B|| <= ||A odot B||`.
pub fn empirical_lambda(
    shape: LambdaShape,
    params: &NormParams,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    empirical_lambda_with(shape, params, samples, seed, Exec::default())
}

pub fn empirical_lambda_with(
    shape: LambdaShape,
    params: &NormParams,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let LambdaShape {
        n,
        n_col,
        p,
        p_col,
        q,
        q_col,
    } = shape;
    GradedMatrix::<f64>::zeros(n, n_col, p, p_col)?;
    GradedMatrix::<f64>::zeros(n, n_col, q, q_col)?;
    let ratios = exec.map_range(samples, |i| -> Result<f64> {
        let mut rng = sample_rng(seed, i as u64);
        let a = gaussian_block(&mut rng, n, n_col, p, p_col)?;
        let b = gaussian_block(&mut rng, n, n_col, q, q_col)?;
        let (na, nb) = (rho_norm(&a, params), rho_norm(&b, params));
        if na == 0.0 || nb == 0.0 {
            return Ok(f64::INFINITY);
        }
        let a = a.map_entries(|x| x / na);
        let b = b.map_entries(|x| x / nb);
        let c = a.odot_with(&b, Exec::Sequential)?;
        Ok(rho_norm(&c, params))
    });
    let mut best = f64::INFINITY;
    for r in ratios {
        best = best.min(r?);
    }
    Ok(best)
}

/// Both candidate constants for `||A(p,q) B(q,q')||`.
///
/// Neither is a bound for `rho < 2`: with `A = [a]` in `M(0,0)` and `B` a
/// row in `M(0,1)` every factorial is 1 and the two sides are `|a|` times
/// the plain `l_rho` and `l_varrho` norms of `B`, and `varrho > rho`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatmulBoundReport {
    /// `(p!)^(2-1/rho) (q'!)^(2/rho-1) ||A||_rho ||B||_varrho`
    pub statement: BoundReport,
    /// `(q!)^(2-1/rho) (q'!)^(2/rho-1) ||A||_rho ||B||_varrho`
    pub proof: BoundReport,
}

pub fn check_matmul_bound(
    a: &GradedMatrix<f64>,
    b: &GradedMatrix<f64>,
    params: &NormParams,
) -> Result<MatmulBoundReport> {
    let ab = a.matmul(b)?;
    let (p, q) = a.degrees();
    let qc = b.col_degree();
    let rho = params.rho;
    let lhs = rho_norm(&ab, params);
    let base = rho_norm(a, params) * varrho_norm(b, params);
    let col = factorial_f64(qc).powf(2.0 / rho - 1.0);
    let witness = format!("{} . {} rho={}", describe(a), describe(b), rho);
    Ok(MatmulBoundReport {
        statement: BoundReport::new(
            lhs,
            factorial_f64(p).powf(2.0 - 1.0 / rho) * col * base,
            witness.clone(),
        ),
        proof: BoundReport::new(
            lhs,
            factorial_f64(q).powf(2.0 - 1.0 / rho) * col * base,
            witness,
        ),
    })
}

/// `||((h^(m)/m!) odot E_k) A|| <= C(m+k, k) ||h||_varrho^m ||A||`.
pub fn check_shift_bound(
    h: &[f64],
    a: &GradedMatrix<f64>,
    m: u32,
    k: u32,
    params: &NormParams,
) -> Result<BoundReport> {
    if a.row_arity() != h.len() || a.row_degree() != m + k {
        return dim_err(format!(
            "A must have row arity {} and row degree {}, got {}",
            h.len(),
            m + k,
            describe(a)
        ));
    }
    let hrow = GradedMatrix::row_vector(h);
    let shift = hrow.h_odot_identity_closed(m, k)?;
    let lhs = rho_norm(&shift.matmul(a)?, params);
    let hn = norm_with_exponent(&hrow, params.varrho);
    let c = Scalar::to_f64(&Rational::from_integer(binomial(m + k, k)));
    Ok(BoundReport::new(
        lhs,
        c * hn.powi(m as i32) * rho_norm(a, params),
        format!(
            "shift m={m} k={k} n={} {} rho={}",
            h.len(),
            describe(a),
            params.rho
        ),
    ))
}

/// `max ||A_m||^(1/m)` over the last `ceil(M/2)` terms (index 0 skipped): a
/// finite stand-in for `limsup ||A_m||^(1/m)`.
pub fn radius_estimate(norms: &[f64]) -> Result<f64> {
    if norms.is_empty() {
        return Err(Error::InvalidParameter("empty norm sequence".into()));
    }
    let len = norms.len();
    let start = len - len.div_ceil(2);
    Ok(norms
        .iter()
        .enumerate()
        .skip(start.max(1))
        .map(|(m, x)| x.abs().powf(1.0 / m as f64))
        .fold(0.0, f64::max))
}

/// `S_0, ..., S_M` with `S_M = sum_{m <= M} x^(m)/m! A_m`.
pub fn series_partial_sums<S: Scalar>(
    point: &[S],
    coefficients: &[GradedMatrix<S>],
    terms: usize,
) -> Result<Vec<Vec<S>>> {
    if coefficients.len() <= terms {
        return Err(Error::InvalidParameter(format!(
            "need {} coefficient blocks, got {}",
            terms + 1,
            coefficients.len()
        )));
    }
    let n = point.len();
    let first = &coefficients[0];
    let (n_col, q_col) = (first.col_arity(), first.col_degree());
    let h = GradedMatrix::row_vector(point);
    let mut acc = vec![S::zero(); first.cols()];
    let mut out = Vec::with_capacity(terms + 1);
    for (m, a) in coefficients.iter().take(terms + 1).enumerate() {
        let m = m as u32;
        if a.row_arity() != n
            || a.row_degree() != m
            || a.col_arity() != n_col
            || a.col_degree() != q_col
        {
            return dim_err(format!(
                "coefficient {m} must lie in M_{{{n},{n_col}}}({m},{q_col})"
            ));
        }
        let row = h
            .h_power_closed(m)?
            .div_scalar(&S::from_integer(&factorial(m)))?;
        let term = row.matmul(a)?;
        for (j, slot) in acc.iter_mut().enumerate() {
            slot.add_assign_ref(term.get(0, j));
        }
        out.push(acc.clone());
    }
    Ok(out)
}

/// `A_m = [m! c^m]` in `M_{1,0}(m,0)`, `m < terms`: the matrices of the
/// scalar geometric series `sum (c x)^m`.
pub fn geometric_series_blocks(c: f64, terms: usize) -> Vec<GradedMatrix<f64>> {
    (0..terms as u32)
        .map(|m| {
            GradedMatrix::from_entries(1, 0, m, 0, vec![factorial_f64(m) * c.powi(m as i32)])
                .expect("one entry")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(rho: f64) -> NormParams {
        NormParams::new(rho).unwrap()
    }

    #[test]
    fn conjugate_exponents() {
        assert_eq!(p(2.0).varrho, 2.0);
        assert!(p(1.0).varrho.is_infinite());
        let q = p(1.5);
        assert!((1.0 / q.rho + 1.0 / q.varrho - 1.0).abs() < 1e-12);
        assert!(NormParams::new(0.5).is_err());
        assert!(NormParams::new(f64::NAN).is_err());
    }

    #[test]
    fn norm_examples() {
        let a = GradedMatrix::column_vector(&[1.0, 1.0], 0).unwrap();
        assert_eq!(rho_norm(&a, &p(2.0)), 2f64.sqrt());
        let z = GradedMatrix::<f64>::zeros(2, 1, 2, 1).unwrap();
        assert_eq!(rho_norm(&z, &p(1.5)), 0.0);
        // t + 1 homogenized: t + s
        let mp = homogenized_matrix(&[1.0, 1.0]).unwrap();
        assert_eq!(rho_norm(&mp, &p(2.0)), 2f64.sqrt());
        assert_eq!(bombieri_norm(&[1.0, 1.0]), 2f64.sqrt());
    }

    #[test]
    fn bombieri_examples() {
        for m in 0..6 {
            let mut a = vec![0.0; m + 1];
            a[m] = 1.0;
            assert_eq!(bombieri_norm(&a), 1.0);
        }
        assert_eq!(bombieri_norm(&[-3.5]), 3.5);
    }

    #[test]
    fn vector_norm_is_plain_lp() {
        let h = GradedMatrix::row_vector(&[3.0, -4.0, 1.0]);
        assert_eq!(rho_norm(&h, &p(1.0)), 8.0);
        assert_eq!(rho_norm(&h, &p(2.0)), 26f64.sqrt());
        let r = rho_norm(&h, &p(3.0));
        assert!((r - (27.0f64 + 64.0 + 1.0).powf(1.0 / 3.0)).abs() < 1e-14);
        assert_eq!(norm_with_exponent(&h, f64::INFINITY), 4.0);
    }

    #[test]
    fn block_norm_sums_blocks() {
        let a = GradedMatrix::column_vector(&[1.0, 1.0], 0).unwrap();
        let b = GradedMatrix::from_entries(2, 0, 0, 0, vec![3.0]).unwrap();
        let m = BlockMatrix::from_blocks(2, 0, [a.clone(), b.clone()]).unwrap();
        let params = p(2.0);
        assert_eq!(block_norm(&m, &params), rho_norm(&a, &params) + 3.0);
        assert_eq!(block_norm(&BlockMatrix::unit(3, 1), &params), 1.0);
        assert_eq!(
            block_norm(&BlockMatrix::from_block(a.clone()), &params),
            rho_norm(&a, &params)
        );
    }

    #[test]
    fn exact_norm_of_extremal_pair() {
        for (pd, qd) in [(1u32, 1u32), (2, 3), (4, 1)] {
            let mut tp = vec![rat(0, 1); pd as usize + 1];
            tp[pd as usize] = rat(1, 1);
            let mut sq = vec![rat(0, 1); qd as usize + 1];
            sq[0] = rat(1, 1);
            let a = homogenized_matrix(&tp).unwrap();
            let b = homogenized_matrix(&sq).unwrap();
            assert_eq!(exact_squared_norm(&a), rat(1, 1));
            assert_eq!(exact_squared_norm(&b), rat(1, 1));
            let c = a.odot(&b).unwrap();
            let expected = Rational::new(1.into(), binomial(pd + qd, pd));
            assert_eq!(exact_squared_norm(&c), expected);
        }
    }

    #[test]
    fn upper_bound_reports() {
        let a = GradedMatrix::<f64>::zeros(2, 1, 1, 1).unwrap();
        let b = GradedMatrix::from_entries(2, 1, 1, 0, vec![1.0, -2.0]).unwrap();
        let r = check_odot_upper(&a, &b, &p(2.0)).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.satisfied);
        // t^1 and s^1 at rho = 2 give C(2,1)^(-1/2)
        let t = homogenized_matrix(&[0.0, 1.0]).unwrap();
        let s = homogenized_matrix(&[1.0, 0.0]).unwrap();
        let r = check_odot_upper(&t, &s, &p(2.0)).unwrap();
        assert!((r.ratio - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lambda_examples() {
        let scalar = LambdaShape {
            n: 2,
            n_col: 0,
            p: 0,
            p_col: 0,
            q: 0,
            q_col: 0,
        };
        assert_eq!(empirical_lambda(scalar, &p(2.0), 50, 3).unwrap(), 1.0);
        let lin = LambdaShape {
            n: 2,
            n_col: 0,
            p: 1,
            p_col: 0,
            q: 1,
            q_col: 0,
        };
        let l = empirical_lambda(lin, &p(2.0), 2000, 11).unwrap();
        assert!(l >= 0.5f64.sqrt() - 1e-9);
        assert!(l < 0.8);
        assert_eq!(l, empirical_lambda(lin, &p(2.0), 2000, 11).unwrap());
        assert_eq!(
            l,
            empirical_lambda_with(lin, &p(2.0), 2000, 11, Exec::Sequential).unwrap()
        );
        assert!(empirical_lambda(lin, &p(2.0), 4000, 11).unwrap() <= l);
        assert!(empirical_lambda(lin, &p(2.0), 0, 11).is_err());
        let bad = LambdaShape {
            n: 2,
            n_col: 0,
            p: 1,
            p_col: 1,
            q: 1,
            q_col: 0,
        };
        assert!(empirical_lambda(bad, &p(2.0), 5, 1).is_err());
    }

    #[test]
    fn matmul_bound_scalar_case() {
        let a = GradedMatrix::constant(1, 1, 3.0);
        let b = GradedMatrix::constant(1, 1, -2.0);
        let r = check_matmul_bound(&a, &b, &p(1.5)).unwrap();
        assert!((r.statement.lhs - 6.0).abs() < 1e-14);
        assert_eq!(r.statement.rhs, r.proof.rhs);
        assert!(r.proof.satisfied && r.statement.satisfied);
        let r = check_matmul_bound(&a, &b, &p(1.0)).unwrap();
        assert_eq!((r.proof.lhs, r.proof.rhs), (6.0, 6.0));
    }

    #[test]
    fn matmul_bound_fails_below_two() {
        let a = GradedMatrix::constant(2, 2, 1.0);
        let b = GradedMatrix::row_vector(&[1.0, 1.0]);
        let r = check_matmul_bound(&a, &b, &p(1.5)).unwrap();
        assert!(!r.proof.satisfied && !r.statement.satisfied);
        assert!((r.proof.ratio - 2f64.powf(1.0 / 1.5 - 1.0 / 3.0)).abs() < 1e-12);
        assert!(check_matmul_bound(&a, &b, &p(2.0)).unwrap().proof.satisfied);
    }

    #[test]
    fn shift_bound_edges() {
        let a = GradedMatrix::from_entries(2, 1, 2, 1, vec![1.0, -2.0, 0.5]).unwrap();
        let r = check_shift_bound(&[0.3, -0.7], &a, 0, 2, &p(2.0)).unwrap();
        assert!((r.lhs - r.rhs).abs() <= 1e-15 * r.rhs);
        let r = check_shift_bound(&[0.0, 0.0], &a, 2, 0, &p(1.5)).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(check_shift_bound(&[1.0, 1.0], &a, 1, 0, &p(2.0)).is_err());
    }

    #[test]
    fn radius_examples() {
        let norms: Vec<f64> = (0..20).map(|m| 0.3f64.powi(m)).collect();
        assert!((radius_estimate(&norms).unwrap() - 0.3).abs() < 1e-12);
        assert_eq!(radius_estimate(&[0.0; 10]).unwrap(), 0.0);
        assert!(radius_estimate(&[]).is_err());

        let blocks = geometric_series_blocks(0.5, 12);
        let sums = series_partial_sums(&[0.0], &blocks, 11).unwrap();
        assert!(sums.iter().all(|s| s == &vec![1.0]));
        let zero: Vec<GradedMatrix<f64>> = (0..5)
            .map(|m| GradedMatrix::zeros(1, 0, m, 0).unwrap())
            .collect();
        assert!(series_partial_sums(&[2.0], &zero, 4)
            .unwrap()
            .iter()
            .all(|s| s == &vec![0.0]));
        let norms: Vec<f64> = zero.iter().map(|b| rho_norm(b, &p(2.0))).collect();
        assert_eq!(radius_estimate(&norms).unwrap(), 0.0);
    }

    #[test]
    fn geometric_partial_sums_are_cauchy() {
        let c = 0.5;
        let x = 1.5;
        let blocks = geometric_series_blocks(c, 30);
        let sums = series_partial_sums(&[x], &blocks, 29).unwrap();
        for m in 0..29 {
            let diff = (sums[m + 1][0] - sums[m][0]).abs();
            let expected = (c * x).powi(m as i32 + 1);
            assert!((diff - expected).abs() <= 1e-12 * expected.max(1e-300));
        }
        let limit = 1.0 / (1.0 - c * x);
        assert!((sums[29][0] - limit).abs() < 1e-3);
    }
}
