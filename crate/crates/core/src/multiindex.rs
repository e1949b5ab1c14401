//! Multiindices over `I_n` and their combinatorics.
//!
//! The linear order used everywhere: `b < a` iff `|b| < |a|`, or the degrees
//! agree and the first differing coordinate of `b` is *larger*. Within one
//! degree this puts `(p, 0, ..., 0)` first and `(0, ..., 0, p)` last.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{dim_err, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiindex(Vec<u32>);

impl Multiindex {
    pub fn new(entries: Vec<u32>) -> Self {
        Multiindex(entries)
    }

    pub fn zero(n: usize) -> Self {
        Multiindex(vec![0; n])
    }

    /// The `i`-th unit vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Multiindex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `a! = a_1! a_2! ... a_n!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            dim_err(format!(
                "multiindex lengths differ: {} vs {}",
                self.len(),
                other.len()
            ))
        }
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.check_len(other)?;
        Ok(self.cmp(other))
    }

    /// The componentwise relation `self << other`.
    pub fn leq_componentwise(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.is_below(other))
    }

    pub(crate) fn is_below(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(b, a)| b <= a)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Multiindex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `self - other`, or `None` unless `other << self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.len() != other.len() || !other.is_below(self) {
            return None;
        }
        Some(Multiindex(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Position inside `enumerate_degree(self.len(), self.degree())`.
    pub fn rank(&self) -> usize {
        rank_slice(&self.0, self.degree())
    }
}

impl Ord for Multiindex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Multiindex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multiindex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Multiindex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: &str| Error::Syntax {
            position: 0,
            message: format!("{message} in multiindex `{s}`"),
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses"))?;
        if inner.trim().is_empty() {
            return Ok(Multiindex(Vec::new()));
        }
        inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad("bad entry")))
            .collect::<Result<Vec<_>>>()
            .map(Multiindex)
    }
}

impl From<Vec<u32>> for Multiindex {
    fn from(v: Vec<u32>) -> Self {
        Multiindex(v)
    }
}

/// `prod_i binomial(a_i, b_i)`, zero when `b << a` fails.
pub fn choose(a: &Multiindex, b: &Multiindex) -> Result<BigInt> {
    a.check_len(b)?;
    Ok(a.0
        .iter()
        .zip(&b.0)
        .map(|(&ai, &bi)| binomial(ai, bi))
        .product())
}

/// Number of degree-`p` multiindices of length `n`.
pub fn dim(n: usize, p: u32) -> usize {
    if n == 0 {
        return usize::from(p == 0);
    }
    // C(n + p - 1, p) with exact intermediate division
    let mut acc: u128 = 1;
    for i in 1..=p as u128 {
        acc = acc * (n as u128 - 1 + i) / i;
    }
    acc as usize
}

/// All degree-`p` multiindices of length `n`, ascending.
pub fn enumerate_degree(n: usize, p: u32) -> Vec<Multiindex> {
    let mut out = Vec::with_capacity(dim(n, p));
    let mut buf = vec![0u32; n];
    fill(&mut buf, 0, p, &mut out);
    out
}

fn fill(buf: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Multiindex>) {
    let n = buf.len();
    if pos == n {
        if remaining == 0 {
            out.push(Multiindex(buf.clone()));
        }
        return;
    }
    if pos + 1 == n {
        buf[pos] = remaining;
        out.push(Multiindex(buf.clone()));
        return;
    }
    for first in (0..=remaining).rev() {
        buf[pos] = first;
        fill(buf, pos + 1, remaining - first, out);
    }
    buf[pos] = 0;
}

fn rank_slice(entries: &[u32], p: u32) -> usize {
    match entries {
        [] | [_] => 0,
        [first, rest @ ..] => {
            let before: usize = (first + 1..=p).map(|c| dim(rest.len(), p - c)).sum();
            before + rank_slice(rest, p - first)
        }
    }
}

pub fn unrank(n: usize, p: u32, index: usize) -> Result<Multiindex> {
    let size = dim(n, p);
    if index >= size {
        return Err(Error::OutOfRange { index, size });
    }
    let mut entries = Vec::with_capacity(n);
    let mut remaining = p;
    let mut index = index;
    for pos in 0..n {
        if pos + 1 == n {
            entries.push(remaining);
            break;
        }
        let tail = n - pos - 1;
        let mut first = remaining;
        loop {
            let block = dim(tail, remaining - first);
            if index < block {
                break;
            }
            index -= block;
            first -= 1;
        }
        entries.push(first);
        remaining -= first;
    }
    Ok(Multiindex(entries))
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k)
        .map(BigInt::from)
        .fold(BigInt::one(), |acc, x| acc * x)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `m! / (a_1! ... a_n!)` for `|a| = m`.
pub fn multinomial(a: &Multiindex) -> BigInt {
    factorial(a.degree()) / a.factorial()
}
