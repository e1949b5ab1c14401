//! Reference implementations written directly from the definitions, sharing
//! nothing with the library beyond its data types.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use odot::{GradedMatrix, Multiindex, PolyMap, Rational};

pub type Q = Rational;
pub type Poly = BTreeMap<Vec<u32>, Q>;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

pub fn fact(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        fact(n) / (fact(k) * fact(n - k))
    }
}

pub fn mfact(a: &[u32]) -> BigInt {
    a.iter().map(|&k| fact(k)).product()
}

/// All exponent vectors of length `n` and total `d`, in no particular order.
pub fn exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponents(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn below(b: &[u32], a: &[u32]) -> bool {
    b.iter().zip(a).all(|(x, y)| x <= y)
}

pub fn choose(a: &[u32], b: &[u32]) -> BigInt {
    if !below(b, a) {
        return BigInt::zero();
    }
    a.iter().zip(b).map(|(&x, &y)| binom(x, y)).product()
}

fn minus(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn at(m: &GradedMatrix<Q>, r: &[u32], c: &[u32]) -> Q {
    m.get_at(&Multiindex::new(r.to_vec()), &Multiindex::new(c.to_vec()))
        .cloned()
        .expect("index in range")
}

/// `(A odot B)_{a,a'} = sum choose(a, b) A_{b,b'} B_{a-b, a'-b'}`.
pub fn odot(a: &GradedMatrix<Q>, b: &GradedMatrix<Q>) -> GradedMatrix<Q> {
    let (n, nc) = (a.row_arity(), a.col_arity());
    let (p, pc) = a.degrees();
    let (qd, qc) = b.degrees();
    let rows = exponents(n, p);
    let cols = exponents(nc, pc);
    GradedMatrix::from_fn(n, nc, p + qd, pc + qc, |alpha, alpha_c| {
        let (alpha, alpha_c) = (alpha.entries(), alpha_c.entries());
        let mut s = Q::zero();
        for beta in rows.iter().filter(|beta| below(beta, alpha)) {
            for beta_c in cols.iter().filter(|bc| below(bc, alpha_c)) {
                let w = Q::from_integer(choose(alpha, beta));
                s += w * at(a, beta, beta_c) * at(b, &minus(alpha, beta), &minus(alpha_c, beta_c));
            }
        }
        s
    })
    .expect("shape")
}

/// `(sum |A|^rho / (a! (p! p'!)^(rho - 1)))^(1/rho)` with plain summation.
pub fn norm(m: &GradedMatrix<f64>, rho: f64) -> f64 {
    let (p, pc) = m.degrees();
    let f = |k: u32| (1..=k).map(f64::from).product::<f64>();
    let pp = f(p) * f(pc);
    let mut s = 0.0;
    for r in exponents(m.row_arity(), p) {
        let w: f64 = r.iter().map(|&k| f(k)).product();
        for c in exponents(m.col_arity(), pc) {
            let v = m
                .get_at(&Multiindex::new(r.clone()), &Multiindex::new(c))
                .unwrap();
            s += v.abs().powf(rho) / (w * pp.powf(rho - 1.0));
        }
    }
    s.powf(1.0 / rho)
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(k.clone()).or_insert_with(Q::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            *out.entry(k).or_insert_with(Q::zero) += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn components(map: &PolyMap<Q>) -> Vec<Poly> {
    let mut out = vec![Poly::new(); map.n_out()];
    for (j, a, c) in map.terms() {
        out[j].insert(a.entries().to_vec(), c.clone());
    }
    out
}

/// `outer(inner(x))` by expanding every monomial.
pub fn substitute(outer: &PolyMap<Q>, inner: &PolyMap<Q>) -> Vec<Poly> {
    let ins = components(inner);
    components(outer)
        .into_iter()
        .map(|comp| {
            let mut acc = Poly::new();
            for (e, c) in comp {
                let mut term: Poly = [(vec![0; inner.n_in()], c)].into_iter().collect();
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        term = poly_mul(&term, &ins[i]);
                    }
                }
                acc = poly_add(&acc, &term);
            }
            acc
        })
        .collect()
}

/// `M_P` for a scalar `P`: entry `a! c_a` at row `a`, one column (`n' = 1`
/// output, degree 0 after regrading).
pub fn homogeneous_block(p: &Poly, n: usize, degree: u32) -> GradedMatrix<Q> {
    GradedMatrix::from_fn(n, 1, degree, 0, |a, _| {
        p.get(a.entries())
            .map(|c| c * Q::from_integer(mfact(a.entries())))
            .unwrap_or_else(Q::zero)
    })
    .expect("shape")
}
