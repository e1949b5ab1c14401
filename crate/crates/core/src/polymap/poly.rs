//! Sparse scalar polynomials `multiindex -> coefficient`, zero-free.

use std::collections::BTreeMap;

use crate::multiindex::Multiindex;
use crate::scalar::Scalar;

pub(crate) type Poly<S> = BTreeMap<Multiindex, S>;

pub(crate) fn zero<S>() -> Poly<S> {
    BTreeMap::new()
}

pub(crate) fn constant<S: Scalar>(n: usize, c: S) -> Poly<S> {
    let mut p = zero();
    if !c.is_zero() {
        p.insert(Multiindex::zero(n), c);
    }
    p
}

pub(crate) fn variable<S: Scalar>(n: usize, i: usize) -> Poly<S> {
    let mut p = zero();
    p.insert(Multiindex::unit(n, i), S::one());
    p
}

pub(crate) fn add_term<S: Scalar>(p: &mut Poly<S>, a: Multiindex, c: S) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&a) {
        Some(existing) => {
            existing.add_assign_ref(&c);
            if existing.is_zero() {
                p.remove(&a);
            }
        }
        None => {
            p.insert(a, c);
        }
    }
}

pub(crate) fn add<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> Poly<S> {
    let mut out = a.clone();
    for (m, c) in b {
        add_term(&mut out, m.clone(), c.clone());
    }
    out
}

pub(crate) fn neg<S: Scalar>(a: &Poly<S>) -> Poly<S> {
    a.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect()
}

pub(crate) fn sub<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> Poly<S> {
    add(a, &neg(b))
}

pub(crate) fn scale<S: Scalar>(a: &Poly<S>, c: &S) -> Poly<S> {
    let mut out = zero();
    for (m, v) in a {
        add_term(&mut out, m.clone(), v.mul_ref(c));
    }
    out
}

pub(crate) fn mul<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> Poly<S> {
    let mut out = zero();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.checked_add(mb).expect("same number of variables");
            add_term(&mut out, m, ca.mul_ref(cb));
        }
    }
    out
}

pub(crate) fn pow<S: Scalar>(a: &Poly<S>, e: u32, n: usize) -> Poly<S> {
    let mut acc = constant(n, S::one());
    for _ in 0..e {
        acc = mul(&acc, a);
    }
    acc
}

pub(crate) fn degree<S>(a: &Poly<S>) -> u32 {
    a.keys().map(Multiindex::degree).max().unwrap_or(0)
}
