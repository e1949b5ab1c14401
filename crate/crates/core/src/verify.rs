//! Seeded randomized checks of the algebraic identities and norm bounds.
//!
//! Each law runs `cases` independent cases. Case `c` of law `l` in suite `s`
//! draws from its own generator, so the outcome is a function of
//! `(seed, cases)` alone whatever the thread count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    block_norm, bombieri_norm, check_block_odot_upper, check_matmul_bound, check_odot_upper,
    check_shift_bound, gaussian_block, homogenized_matrix, rho_norm, sample_rng, NormParams,
};
use crate::block_matrix::BlockMatrix;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graded_matrix::{odot_multi, GradedMatrix};
use crate::multiindex::{binomial, choose, enumerate_degree, factorial};
use crate::polymap::PolyMap;
use crate::random::{
    nonzero_rational, nonzero_rational_block, random_exponent, rational_block, rational_map,
    rational_point,
};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    OdotLaws,
    NormBounds,
    CompositionOracle,
    ExpIdentities,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::OdotLaws,
        Suite::NormBounds,
        Suite::CompositionOracle,
        Suite::ExpIdentities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OdotLaws => "odot-laws",
            Suite::NormBounds => "norm-bounds",
            Suite::CompositionOracle => "composition-oracle",
            Suite::ExpIdentities => "exp-identities",
        }
    }

    pub fn laws(self) -> &'static [Law] {
        match self {
            Suite::OdotLaws => ODOT_LAWS,
            Suite::NormBounds => NORM_LAWS,
            Suite::CompositionOracle => COMPOSITION_LAWS,
            Suite::ExpIdentities => EXP_LAWS,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// `None` on success, otherwise a description of the counterexample.
pub type Verdict = Option<String>;

pub struct Law {
    pub name: &'static str,
    pub check: fn(&mut ChaCha8Rng) -> Result<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawOutcome {
    pub suite: Suite,
    pub law: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

impl LawOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

impl fmt::Display for LawOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}/{}",
            self.suite, self.law, self.passed, self.cases
        )?;
        if let Some(msg) = &self.first_failure {
            write!(f, " first failure: {msg}")?;
        }
        Ok(())
    }
}

fn mix(seed: u64, suite: usize, law: usize) -> u64 {
    let mut z = seed ^ ((suite as u64) << 48) ^ ((law as u64) << 32);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn run_law(suite: Suite, law_index: usize, seed: u64, cases: usize, exec: Exec) -> LawOutcome {
    let law = &suite.laws()[law_index];
    let stream = mix(seed, suite as usize, law_index);
    let verdicts = exec.map_range(cases, |c| {
        let mut rng = sample_rng(stream, c as u64);
        match (law.check)(&mut rng) {
            Ok(v) => v.map(|m| format!("case {c}: {m}")),
            Err(e) => Some(format!("case {c}: error: {e}")),
        }
    });
    let passed = verdicts.iter().filter(|v| v.is_none()).count();
    LawOutcome {
        suite,
        law: law.name,
        cases,
        passed,
        first_failure: verdicts.into_iter().flatten().next(),
    }
}

pub fn run_suite(suite: Suite, seed: u64, cases: usize, exec: Exec) -> Vec<LawOutcome> {
    (0..suite.laws().len())
        .map(|l| run_law(suite, l, seed, cases, exec))
        .collect()
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Verdict {
    if cond {
        None
    } else {
        Some(msg())
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(lhs: &T, rhs: &T) -> Verdict {
    expect(lhs == rhs, || format!("{lhs:?} != {rhs:?}"))
}

/// `(n, n', p, p')` with `n, n' <= max_arity`, degrees `<= max_degree`.
fn shape(rng: &mut ChaCha8Rng, max_arity: usize, max_degree: u32) -> (usize, usize, u32, u32) {
    let n = rng.random_range(1..=max_arity);
    let nc = rng.random_range(0..=max_arity);
    let p = rng.random_range(0..=max_degree);
    let pc = if nc == 0 {
        0
    } else {
        rng.random_range(0..=max_degree)
    };
    (n, nc, p, pc)
}

fn block(
    rng: &mut ChaCha8Rng,
    n: usize,
    nc: usize,
    max_degree: u32,
) -> Result<GradedMatrix<Rational>> {
    let p = rng.random_range(0..=max_degree);
    let pc = if nc == 0 {
        0
    } else {
        rng.random_range(0..=max_degree)
    };
    rational_block(rng, n, nc, p, pc)
}

/// The same single row (or column) over different arities: `M(0, p')` does
/// not depend on its row arity, `M(p, 0)` not on its column arity.
fn reshape(
    b: &GradedMatrix<Rational>,
    row_arity: usize,
    col_arity: usize,
) -> Result<GradedMatrix<Rational>> {
    GradedMatrix::from_entries(
        row_arity,
        col_arity,
        b.row_degree(),
        b.col_degree(),
        b.entries().to_vec(),
    )
}

fn fact(m: u32) -> Rational {
    Rational::from_integer(factorial(m))
}

static ODOT_LAWS: &[Law] = &[
    Law {
        name: "commutativity",
        check: |rng| {
            let (n, nc, _, _) = shape(rng, 3, 3);
            let a = block(rng, n, nc, 3)?;
            let b = block(rng, n, nc, 3)?;
            Ok(expect_eq(&a.odot(&b)?, &b.odot(&a)?))
        },
    },
    Law {
        name: "associativity",
        check: |rng| {
            let (n, nc, _, _) = shape(rng, 3, 3);
            let a = block(rng, n, nc, 3)?;
            let b = block(rng, n, nc, 3)?;
            let c = block(rng, n, nc, 3)?;
            Ok(expect_eq(&a.odot(&b)?.odot(&c)?, &a.odot(&b.odot(&c)?)?))
        },
    },
    Law {
        name: "distributivity",
        check: |rng| {
            let (n, nc, p, pc) = shape(rng, 3, 3);
            let a = block(rng, n, nc, 3)?;
            let b = rational_block(rng, n, nc, p, pc)?;
            let c = rational_block(rng, n, nc, p, pc)?;
            Ok(expect_eq(
                &a.odot(&b.add(&c)?)?,
                &a.odot(&b)?.add(&a.odot(&c)?)?,
            ))
        },
    },
    Law {
        name: "scalar-compatibility",
        check: |rng| {
            let (n, nc, _, _) = shape(rng, 3, 3);
            let a = block(rng, n, nc, 3)?;
            let b = block(rng, n, nc, 3)?;
            let k = nonzero_rational(rng);
            let ab = a.odot(&b)?.scale(&k);
            Ok(expect_eq(&a.scale(&k).odot(&b)?, &ab).or(expect_eq(&a.odot(&b.scale(&k))?, &ab)))
        },
    },
    Law {
        name: "unit",
        check: |rng| {
            let (n, nc, _, _) = shape(rng, 3, 3);
            let a = block(rng, n, nc, 3)?;
            Ok(expect_eq(&GradedMatrix::odot_unit(n, nc).odot(&a)?, &a))
        },
    },
    Law {
        name: "no-zero-divisors",
        check: |rng| {
            let (n, nc, p, pc) = shape(rng, 3, 3);
            let a = nonzero_rational_block(rng, n, nc, p, pc)?;
            let (_, _, q, qc) = shape(rng, 3, 3);
            let qc = if nc == 0 { 0 } else { qc };
            let b = nonzero_rational_block(rng, n, nc, q, qc)?;
            Ok(expect(!a.odot(&b)?.is_zero(), || {
                "nonzero factors with zero product".into()
            }))
        },
    },
    Law {
        name: "matmul-odot-row",
        check: |rng| {
            // A (B odot H) = (A B) odot H, H in M(0, p')
            let m = rng.random_range(1..=3);
            let n = rng.random_range(1..=3);
            let nc = rng.random_range(1..=3);
            let (p, q, qc, hc) = (
                rng.random_range(0..=2),
                rng.random_range(0..=2),
                rng.random_range(0..=2),
                rng.random_range(0..=2),
            );
            let a = rational_block(rng, m, n, p, q)?;
            let b = rational_block(rng, n, nc, q, qc)?;
            let h = rational_block(rng, n, nc, 0, hc)?;
            let lhs = a.matmul(&b.odot(&h)?)?;
            let rhs = a.matmul(&b)?.odot(&reshape(&h, m, nc)?)?;
            Ok(expect_eq(&lhs, &rhs))
        },
    },
    Law {
        name: "identity-odot-column",
        check: |rng| {
            // (E_k odot V) A = A odot V, V in M(p, 0)
            let n = rng.random_range(1..=3);
            let nc = rng.random_range(0..=3);
            let (k, p) = (rng.random_range(0..=2), rng.random_range(0..=2));
            let pc = if nc == 0 { 0 } else { rng.random_range(0..=2) };
            let v = rational_block(rng, n, n, p, 0)?;
            let a = rational_block(rng, n, nc, k, pc)?;
            let lhs = GradedMatrix::identity(n, k)?.odot(&v)?.matmul(&a)?;
            let rhs = a.odot(&reshape(&v, n, nc)?)?;
            Ok(expect_eq(&lhs, &rhs))
        },
    },
    Law {
        name: "multinomial-formula",
        check: |rng| {
            let (n, nc, _, _) = shape(rng, 3, 2);
            let count = rng.random_range(0..=4);
            let factors = (0..count)
                .map(|_| block(rng, n, nc, 2))
                .collect::<Result<Vec<_>>>()?;
            let folded = factors
                .iter()
                .try_fold(GradedMatrix::odot_unit(n, nc), |acc, f| acc.odot(f))?;
            Ok(expect_eq(&odot_multi(n, nc, &factors)?, &folded))
        },
    },
    Law {
        name: "power-closed-forms",
        check: |rng| {
            let n = rng.random_range(1..=3);
            let m = rng.random_range(0..=5);
            let h = GradedMatrix::row_vector(&rational_point(rng, n));
            let v = GradedMatrix::column_vector(&rational_point(rng, n), rng.random_range(0..=2))?;
            Ok(expect_eq(&h.h_power_closed(m)?, &h.odot_power(m))
                .or(expect_eq(&v.v_power_closed(m)?, &v.odot_power(m))))
        },
    },
    Law {
        name: "shift-closed-form",
        check: |rng| {
            let n = rng.random_range(1..=3);
            let (m, k) = (rng.random_range(0..=3), rng.random_range(0..=3));
            let h = GradedMatrix::row_vector(&rational_point(rng, n));
            let direct = h
                .odot_power(m)
                .div_scalar(&fact(m))?
                .odot(&GradedMatrix::identity(n, k)?)?;
            Ok(expect_eq(&h.h_odot_identity_closed(m, k)?, &direct))
        },
    },
    Law {
        name: "row-power-transport",
        check: |rng| {
            // (h^(p)/p! A) odot (h^(q)/q! B) = h^(p+q)/(p+q)! (A odot B)
            let n = rng.random_range(1..=3);
            let nc = rng.random_range(0..=3);
            let (p, q) = (rng.random_range(0..=3), rng.random_range(0..=3));
            let deg = |rng: &mut ChaCha8Rng| if nc == 0 { 0 } else { rng.random_range(0..=2) };
            let (pc, qc) = (deg(rng), deg(rng));
            let h = GradedMatrix::row_vector(&rational_point(rng, n));
            let a = rational_block(rng, n, nc, p, pc)?;
            let b = rational_block(rng, n, nc, q, qc)?;
            let hp =
                |m: u32| -> Result<GradedMatrix<Rational>> { h.odot_power(m).div_scalar(&fact(m)) };
            let lhs = hp(p)?.matmul(&a)?.odot(&hp(q)?.matmul(&b)?)?;
            let rhs = hp(p + q)?.matmul(&a.odot(&b)?)?;
            Ok(expect_eq(&lhs, &rhs))
        },
    },
    Law {
        name: "block-power-transport",
        check: |rng| {
            // the same with h replaced by a block H in M(k, 1)
            let m = rng.random_range(1..=2);
            let n = rng.random_range(1..=2);
            let nc = rng.random_range(0..=2);
            let k = rng.random_range(0..=2);
            let (p, q) = (rng.random_range(0..=2), rng.random_range(0..=2));
            let deg = |rng: &mut ChaCha8Rng| if nc == 0 { 0 } else { rng.random_range(0..=2) };
            let (pc, qc) = (deg(rng), deg(rng));
            let hb = rational_block(rng, m, n, k, 1)?;
            let a = rational_block(rng, n, nc, p, pc)?;
            let b = rational_block(rng, n, nc, q, qc)?;
            let hp = |e: u32| -> Result<GradedMatrix<Rational>> {
                hb.odot_power(e).div_scalar(&fact(e))
            };
            let lhs = hp(p)?.matmul(&a)?.odot(&hp(q)?.matmul(&b)?)?;
            let rhs = hp(p + q)?.matmul(&a.odot(&b)?)?;
            Ok(expect_eq(&lhs, &rhs))
        },
    },
    Law {
        name: "binomial-sum",
        check: |rng| {
            let n = rng.random_range(1..=4);
            let d = rng.random_range(0..=8);
            let a = random_exponent(rng, n, d);
            let p = rng.random_range(0..=a.degree());
            let mut total = BigInt::from(0);
            for b in enumerate_degree(n, p) {
                total += choose(&a, &b)?;
            }
            Ok(expect_eq(&total, &binomial(a.degree(), p)))
        },
    },
];

fn rho_choice(rng: &mut ChaCha8Rng) -> NormParams {
    const RHOS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
    NormParams::new(RHOS[rng.random_range(0..RHOS.len())]).expect("valid rho")
}

fn float_block(
    rng: &mut ChaCha8Rng,
    n: usize,
    nc: usize,
    max_degree: u32,
) -> Result<GradedMatrix<f64>> {
    let p = rng.random_range(0..=max_degree);
    let pc = if nc == 0 {
        0
    } else {
        rng.random_range(0..=max_degree)
    };
    gaussian_block(rng, n, nc, p, pc)
}

fn float_block_matrix(rng: &mut ChaCha8Rng, n: usize, nc: usize) -> Result<BlockMatrix<f64>> {
    let count = rng.random_range(0..=3);
    let blocks = (0..count)
        .map(|_| float_block(rng, n, nc, 2))
        .collect::<Result<Vec<_>>>()?;
    BlockMatrix::from_blocks(n, nc, blocks)
}

fn within(lhs: f64, rhs: f64, rel: f64) -> bool {
    (lhs - rhs).abs() <= rel * lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE)
}

fn report(r: crate::analysis::BoundReport) -> Verdict {
    expect(r.satisfied, || r.to_string())
}

fn odot_upper_at(rng: &mut ChaCha8Rng, rho: f64) -> Result<Verdict> {
    let params = NormParams::new(rho)?;
    let (n, nc, _, _) = shape(rng, 3, 3);
    let a = float_block(rng, n, nc, 3)?;
    let b = float_block(rng, n, nc, 3)?;
    Ok(report(check_odot_upper(&a, &b, &params)?))
}

fn homogeneous_coeffs(rng: &mut ChaCha8Rng, m: u32) -> Vec<f64> {
    use rand_distr::{Distribution, StandardNormal};
    (0..=m).map(|_| StandardNormal.sample(rng)).collect()
}

static NORM_LAWS: &[Law] = &[
    Law {
        name: "definiteness",
        check: |rng| {
            let params = rho_choice(rng);
            let (n, nc, _, _) = shape(rng, 3, 3);
            let a = float_block(rng, n, nc, 3)?;
            let z = a.map_entries(|_| 0.0);
            Ok(expect(
                rho_norm(&z, &params) == 0.0 && (rho_norm(&a, &params) > 0.0) == !a.is_zero(),
                || "zero norm on a nonzero block".into(),
            ))
        },
    },
    Law {
        name: "homogeneity",
        check: |rng| {
            let params = rho_choice(rng);
            let (n, nc, _, _) = shape(rng, 3, 3);
            let a = float_block(rng, n, nc, 3)?;
            let c: f64 = rng.random_range(-4.0..4.0);
            let lhs = rho_norm(&a.scale(&c), &params);
            let rhs = c.abs() * rho_norm(&a, &params);
            Ok(expect(within(lhs, rhs, 1e-12), || {
                format!("{lhs} vs {rhs}")
            }))
        },
    },
    Law {
        name: "triangle",
        check: |rng| {
            let params = rho_choice(rng);
            let (n, nc, p, pc) = shape(rng, 3, 3);
            let a = gaussian_block(rng, n, nc, p, pc)?;
            let b = gaussian_block(rng, n, nc, p, pc)?;
            let lhs = rho_norm(&a.add(&b)?, &params);
            let rhs = rho_norm(&a, &params) + rho_norm(&b, &params);
            Ok(expect(lhs <= rhs * (1.0 + 1e-12), || {
                format!("{lhs} > {rhs}")
            }))
        },
    },
    Law {
        name: "block-triangle",
        check: |rng| {
            let params = rho_choice(rng);
            let (n, nc, _, _) = shape(rng, 2, 2);
            let a = float_block_matrix(rng, n, nc)?;
            let b = float_block_matrix(rng, n, nc)?;
            let lhs = block_norm(&a.add(&b)?, &params);
            let rhs = block_norm(&a, &params) + block_norm(&b, &params);
            Ok(expect(lhs <= rhs * (1.0 + 1e-12), || {
                format!("{lhs} > {rhs}")
            }))
        },
    },
    Law {
        name: "odot-upper-rho-1",
        check: |rng| odot_upper_at(rng, 1.0),
    },
    Law {
        name: "odot-upper-rho-1.5",
        check: |rng| odot_upper_at(rng, 1.5),
    },
    Law {
        name: "odot-upper-rho-2",
        check: |rng| odot_upper_at(rng, 2.0),
    },
    Law {
        name: "odot-upper-rho-3",
        check: |rng| odot_upper_at(rng, 3.0),
    },
    Law {
        name: "block-odot-upper",
        check: |rng| {
            let params = rho_choice(rng);
            let (n, nc, _, _) = shape(rng, 2, 2);
            let a = float_block_matrix(rng, n, nc)?;
            let b = float_block_matrix(rng, n, nc)?;
            Ok(report(check_block_odot_upper(&a, &b, &params)?))
        },
    },
    Law {
        name: "bombieri-equivalence",
        check: |rng| {
            let m = rng.random_range(0..=8);
            let a = homogeneous_coeffs(rng, m);
            let lhs = bombieri_norm(&a);
            let rhs = rho_norm(&homogenized_matrix(&a)?, &NormParams::new(2.0)?);
            Ok(expect(within(lhs, rhs, 1e-12), || {
                format!("{lhs} vs {rhs}")
            }))
        },
    },
    Law {
        name: "bombieri-lower",
        check: |rng| {
            let params = NormParams::new(2.0)?;
            let (p, q) = (rng.random_range(0..=4), rng.random_range(0..=4));
            let a = homogenized_matrix(&homogeneous_coeffs(rng, p))?;
            let b = homogenized_matrix(&homogeneous_coeffs(rng, q))?;
            let lhs = rho_norm(&a.odot(&b)?, &params);
            let bound = rho_norm(&a, &params) * rho_norm(&b, &params)
                / Rational::from_integer(binomial(p + q, p)).to_f64().sqrt();
            Ok(expect(lhs >= bound * (1.0 - 1e-12), || {
                format!("p={p} q={q}: {lhs} < {bound}")
            }))
        },
    },
    Law {
        name: "shift-bound",
        check: |rng| {
            use rand_distr::{Distribution, StandardNormal};
            let params = NormParams::new(if rng.random_bool(0.5) { 1.5 } else { 2.0 })?;
            let n = rng.random_range(1..=3);
            let nc = rng.random_range(0..=2);
            let (m, k) = (rng.random_range(0..=3), rng.random_range(0..=3));
            let qc = if nc == 0 { 0 } else { rng.random_range(0..=2) };
            let h: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
            let a = gaussian_block(rng, n, nc, m + k, qc)?;
            Ok(report(check_shift_bound(&h, &a, m, k, &params)?))
        },
    },
    Law {
        name: "matmul-proof-constant-rho-ge-2",
        check: |rng| {
            // below rho = 2 the bound is false: A = [a], B a single row
            let params = NormParams::new(if rng.random_bool(0.5) { 2.0 } else { 3.0 })?;
            let m = rng.random_range(1..=3);
            let n = rng.random_range(1..=3);
            let nc = rng.random_range(1..=3);
            let (p, q, qc) = (
                rng.random_range(0..=3),
                rng.random_range(0..=3),
                rng.random_range(0..=3),
            );
            let a = gaussian_block(rng, m, n, p, q)?;
            let b = gaussian_block(rng, n, nc, q, qc)?;
            Ok(report(check_matmul_bound(&a, &b, &params)?.proof))
        },
    },
];

fn map_pair(
    rng: &mut ChaCha8Rng,
    max_arity: usize,
    max_degree: u32,
    max_terms: usize,
) -> (PolyMap<Rational>, PolyMap<Rational>) {
    let n = rng.random_range(1..=max_arity);
    let m = rng.random_range(1..=max_arity);
    let k = rng.random_range(1..=max_arity);
    let inner = rational_map(rng, n, m, max_degree, max_terms);
    let outer = rational_map(rng, m, k, max_degree, max_terms);
    (outer, inner)
}

static COMPOSITION_LAWS: &[Law] = &[
    Law {
        name: "matrix-equals-substitution",
        check: |rng| {
            let (phi, psi) = map_pair(rng, 3, 3, 3);
            Ok(expect_eq(
                &phi.compose_matrix(&psi)?,
                &phi.compose_direct(&psi)?,
            ))
        },
    },
    Law {
        name: "composition-evaluates",
        check: |rng| {
            let (phi, psi) = map_pair(rng, 3, 3, 3);
            let x = rational_point(rng, psi.n_in());
            let lhs = phi.compose_matrix(&psi)?.eval(&x)?;
            Ok(expect_eq(&lhs, &phi.eval(&psi.eval(&x)?)?))
        },
    },
    Law {
        name: "matrix-round-trip",
        check: |rng| {
            let n = rng.random_range(1..=3);
            let k = rng.random_range(1..=3);
            let phi = rational_map(rng, n, k, 4, 4);
            Ok(expect_eq(&PolyMap::from_matrix(&phi.to_matrix())?, &phi))
        },
    },
    Law {
        name: "evaluation-via-matrix",
        check: |rng| {
            let n = rng.random_range(1..=3);
            let k = rng.random_range(1..=3);
            let phi = rational_map(rng, n, k, 4, 4);
            let x = rational_point(rng, n);
            Ok(expect_eq(&phi.eval_via_matrix(&x)?, &phi.eval(&x)?))
        },
    },
    Law {
        name: "associativity",
        check: |rng| {
            let (phi, psi) = map_pair(rng, 2, 2, 2);
            let l = rng.random_range(1..=2);
            let chi = rational_map(rng, l, psi.n_in(), 2, 2);
            let lhs = phi.compose_matrix(&psi)?.compose_matrix(&chi)?;
            let rhs = phi.compose_matrix(&psi.compose_matrix(&chi)?)?;
            Ok(expect_eq(&lhs, &rhs))
        },
    },
];

fn linear_block(a: &[Vec<Rational>]) -> Result<BlockMatrix<Rational>> {
    Ok(PolyMap::linear(a)?.to_matrix())
}

static EXP_LAWS: &[Law] = &[
    Law {
        name: "exp-of-value-row",
        check: |rng| {
            // Exp(Exp(h) M_phi) = Exp(h) Exp(M_phi), column degree <= qmax
            let n = rng.random_range(1..=2);
            let k = rng.random_range(1..=2);
            let qmax = rng.random_range(0..=4);
            let phi = rational_map(rng, n, k, 3, 3);
            let h = rational_point(rng, n);
            let value = GradedMatrix::row_vector_with_arity(n, &phi.eval(&h)?);
            let lhs = BlockMatrix::from_block(value).exp(qmax)?;
            let rhs = BlockMatrix::numeric_exp_row(&h, qmax * phi.degree())?
                .matmul(&phi.to_matrix().exp(qmax)?)?
                .truncate_columns(qmax);
            Ok(expect_eq(&lhs, &rhs))
        },
    },
    Law {
        name: "exp-of-composition",
        check: |rng| {
            // Exp(Exp(M_psi) M_phi) = Exp(M_psi) Exp(M_phi)
            let (phi, psi) = map_pair(rng, 2, 3, 2);
            let qmax = rng.random_range(1..=3);
            let (mphi, mpsi) = (phi.to_matrix(), psi.to_matrix());
            let lhs = mpsi.star(&mphi)?.exp(qmax)?;
            let rhs = mpsi
                .exp(qmax * phi.degree())?
                .matmul(&mphi.exp(qmax)?)?
                .truncate_columns(qmax);
            Ok(expect_eq(&lhs, &rhs).or(expect_eq(
                &mpsi.star(&mphi)?,
                &phi.compose_direct(&psi)?.to_matrix(),
            )))
        },
    },
    Law {
        name: "exp-row-transport",
        check: |rng| {
            // Exp(A) B odot Exp(A) C = Exp(A) (B odot C), A a single (k, 1) block
            let m = rng.random_range(1..=2);
            let n = rng.random_range(1..=2);
            let nc = rng.random_range(1..=2);
            let k = rng.random_range(0..=2);
            let a = BlockMatrix::from_block(rational_block(rng, m, n, k, 1)?);
            let b = rational_map(rng, n, nc, 2, 2).to_matrix();
            let c = rational_map(rng, n, nc, 2, 2).to_matrix();
            let qmax = b.max_row_degree().unwrap_or(0) + c.max_row_degree().unwrap_or(0);
            let e = a.exp(qmax)?;
            let lhs = e.matmul(&b)?.odot(&e.matmul(&c)?)?;
            Ok(expect_eq(&lhs, &e.matmul(&b.odot(&c)?)?))
        },
    },
    Law {
        name: "exp-of-inverse",
        check: |rng| {
            let a = loop {
                let a: Vec<Vec<Rational>> = (0..2).map(|_| rational_point(rng, 2)).collect();
                if &a[0][0] * &a[1][1] != &a[0][1] * &a[1][0] {
                    break a;
                }
            };
            let ma = linear_block(&a)?;
            let inv = ma.block(1, 1).expect("invertible").inverse()?;
            let minv = BlockMatrix::from_block(inv);
            let lhs = ma.exp(4)?.matmul(&minv.exp(4)?)?;
            let id = PolyMap::<Rational>::identity(2).to_matrix().exp(4)?;
            Ok(expect_eq(&lhs, &id).or(expect_eq(&id, &BlockMatrix::identity(2, 4)?)))
        },
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn suites_pass_and_are_deterministic() {
        for s in Suite::ALL {
            let a = run_suite(s, 7, 8, Exec::Parallel);
            let b = run_suite(s, 7, 8, Exec::Sequential);
            assert_eq!(a, b);
            for o in &a {
                assert!(o.ok(), "{o}");
            }
        }
    }
}
