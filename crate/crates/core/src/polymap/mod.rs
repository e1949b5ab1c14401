//! Polynomial maps `F^n -> F^n'` and their matrices.
//!
//! The matrix `M_phi` of a map has blocks only in column degree 1; its entry
//! at row `a`, column `e_j` is `a! * coeff(phi_j, x^a)`, so that
//! `phi(x) = Exp(x) M_phi`.

mod parse;
pub(crate) mod poly;

use std::collections::BTreeMap;
use std::fmt;

use crate::block_matrix::BlockMatrix;
use crate::error::{dim_err, Error, Result};
use crate::graded_matrix::{monomial, GradedMatrix};
use crate::multiindex::{factorial, Multiindex};
use crate::scalar::Scalar;

pub use parse::max_variable_index;
use poly::Poly;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap<S> {
    n_in: usize,
    components: Vec<Poly<S>>,
}

impl<S: Scalar> PolyMap<S> {
    pub fn zero(n_in: usize, n_out: usize) -> Self {
        PolyMap {
            n_in,
            components: vec![poly::zero(); n_out],
        }
    }

    /// `x -> x` on `F^n`.
    pub fn identity(n: usize) -> Self {
        PolyMap {
            n_in: n,
            components: (0..n).map(|i| poly::variable(n, i)).collect(),
        }
    }

    /// Builds a map from `(output index, exponent, coefficient)` terms;
    /// repeated keys are summed and zeros dropped.
    pub fn from_terms(
        n_in: usize,
        n_out: usize,
        terms: impl IntoIterator<Item = (usize, Multiindex, S)>,
    ) -> Result<Self> {
        let mut map = Self::zero(n_in, n_out);
        for (j, a, c) in terms {
            if j >= n_out {
                return Err(Error::OutOfRange {
                    index: j,
                    size: n_out,
                });
            }
            if a.len() != n_in {
                return dim_err(format!(
                    "exponent {a} has length {}, expected {n_in}",
                    a.len()
                ));
            }
            poly::add_term(&mut map.components[j], a, c);
        }
        Ok(map)
    }

    /// Linear map `y_j = sum_i x_i a[i][j]` (row-vector convention).
    pub fn linear(rows: &[Vec<S>]) -> Result<Self> {
        let n_in = rows.len();
        let n_out = rows.first().map_or(0, Vec::len);
        let mut terms = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_out {
                return dim_err("ragged coefficient matrix");
            }
            for (j, c) in row.iter().enumerate() {
                terms.push((j, Multiindex::unit(n_in, i), c.clone()));
            }
        }
        Self::from_terms(n_in, n_out, terms)
    }

    /// Parses `;`-separated components over the variables `x1..x{n_in}`.
    pub fn parse(text: &str, n_in: usize) -> Result<Self> {
        let components = parse::parse_components(text, n_in)?;
        Ok(PolyMap { n_in, components })
    }

    /// Parses a map file; a `# n_in=K` line overrides `default_n_in`, other
    /// `#` lines are comments.
    pub fn parse_file(text: &str, default_n_in: Option<usize>) -> Result<Self> {
        let mut n_in = default_n_in;
        let mut body = String::new();
        for line in text.lines() {
            let trimmed = line.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                if let Some(k) = comment.trim().strip_prefix("n_in=") {
                    n_in = Some(k.trim().parse().map_err(|_| {
                        Error::InvalidParameter(format!("bad n_in header `{trimmed}`"))
                    })?);
                }
                continue;
            }
            body.push_str(line);
            body.push('\n');
        }
        let n_in = n_in.unwrap_or_else(|| max_variable_index(&body).max(1));
        Self::parse(&body, n_in)
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.components.len()
    }

    pub fn coeff(&self, j: usize, a: &Multiindex) -> S {
        self.components
            .get(j)
            .and_then(|c| c.get(a))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Stored nonzero coefficients as `(j, exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Multiindex, &S)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(a, v)| (j, a, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    /// Largest total degree of a stored term (0 for the zero map).
    pub fn degree(&self) -> u32 {
        self.components.iter().map(poly::degree).max().unwrap_or(0)
    }

    /// `Some(k)` if every stored term has degree `k`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms().map(|(_, a, _)| a.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(PolyMap {
            n_in: self.n_in,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| poly::add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        PolyMap {
            n_in: self.n_in,
            components: self.components.iter().map(|p| poly::scale(p, c)).collect(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n_in != other.n_in || self.n_out() != other.n_out() {
            return dim_err(format!(
                "maps F^{} -> F^{} and F^{} -> F^{}",
                self.n_in,
                self.n_out(),
                other.n_in,
                other.n_out()
            ));
        }
        Ok(())
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PolyMap<T> {
        let mut out = PolyMap::zero(self.n_in, self.n_out());
        for (j, a, c) in self.terms() {
            poly::add_term(&mut out.components[j], a.clone(), f(c));
        }
        out
    }

    pub fn to_f64(&self) -> PolyMap<f64> {
        self.convert(Scalar::to_f64)
    }

    pub fn eval(&self, point: &[S]) -> Result<Vec<S>> {
        if point.len() != self.n_in {
            return dim_err(format!(
                "point has {} coordinates, map takes {}",
                point.len(),
                self.n_in
            ));
        }
        Ok(self
            .components
            .iter()
            .map(|p| {
                let mut acc = S::zero();
                for (a, c) in p {
                    acc.add_assign_ref(&c.mul_ref(&monomial(point, a)));
                }
                acc
            })
            .collect())
    }

    /// Evaluation through the matrix form `Exp(x) M_phi`.
    pub fn eval_via_matrix(&self, point: &[S]) -> Result<Vec<S>> {
        if point.len() != self.n_in {
            return dim_err(format!(
                "point has {} coordinates, map takes {}",
                point.len(),
                self.n_in
            ));
        }
        let row = BlockMatrix::numeric_exp_row(point, self.degree())?;
        let value = row.matmul(&self.to_matrix())?;
        Ok(value.degree_zero_row(1))
    }

    pub fn to_matrix(&self) -> BlockMatrix<S> {
        let n_out = self.n_out();
        let mut blocks: BTreeMap<u32, GradedMatrix<S>> = BTreeMap::new();
        for (j, a, c) in self.terms() {
            let p = a.degree();
            let block = blocks.entry(p).or_insert_with(|| {
                GradedMatrix::zeros(self.n_in, n_out, p, 1).expect("n_out >= 1")
            });
            let value = S::from_integer(&a.factorial()).mul_ref(c);
            block
                .set_at(a, &Multiindex::unit(n_out, j), value)
                .expect("index within block");
        }
        BlockMatrix::from_blocks(self.n_in, n_out, blocks.into_values()).expect("arities agree")
    }

    pub fn from_matrix(m: &BlockMatrix<S>) -> Result<Self> {
        if !m.is_map_type() {
            return Err(Error::UnsupportedDomain(
                "not the matrix of a polynomial map: blocks outside column degree 1".into(),
            ));
        }
        if m.col_arity() == 0 {
            return Err(Error::UnsupportedDomain(
                "maps need at least one output".into(),
            ));
        }
        let mut out = Self::zero(m.row_arity(), m.col_arity());
        for block in m.blocks() {
            for (a, col, v) in block.nonzero_entries() {
                let j = col
                    .entries()
                    .iter()
                    .position(|&e| e == 1)
                    .expect("unit column");
                let c = v
                    .div_ref(&S::from_integer(&a.factorial()))
                    .expect("factorials are nonzero");
                poly::add_term(&mut out.components[j], a, c);
            }
        }
        Ok(out)
    }

    /// `self o inner` by substitution and expansion.
    pub fn compose_direct(&self, inner: &Self) -> Result<Self> {
        if inner.n_out() != self.n_in {
            return dim_err(format!(
                "cannot compose: inner map has {} outputs, outer map takes {} inputs",
                inner.n_out(),
                self.n_in
            ));
        }
        let n = inner.n_in;
        let mut powers: Vec<Vec<Poly<S>>> = inner
            .components
            .iter()
            .map(|_| vec![poly::constant(n, S::one())])
            .collect();
        let mut components = Vec::with_capacity(self.n_out());
        for comp in &self.components {
            let mut acc = poly::zero();
            for (a, c) in comp {
                let mut term = poly::constant(n, c.clone());
                for (i, &e) in a.entries().iter().enumerate() {
                    while powers[i].len() <= e as usize {
                        let next =
                            poly::mul(powers[i].last().expect("nonempty"), &inner.components[i]);
                        powers[i].push(next);
                    }
                    if e > 0 {
                        term = poly::mul(&term, &powers[i][e as usize]);
                    }
                }
                acc = poly::add(&acc, &term);
            }
            components.push(acc);
        }
        Ok(PolyMap {
            n_in: n,
            components,
        })
    }

    /// `self o inner` through `M_{phi o psi} = Exp(M_psi) M_phi`.
    pub fn compose_matrix(&self, inner: &Self) -> Result<Self> {
        if inner.n_out() != self.n_in {
            return dim_err(format!(
                "cannot compose: inner map has {} outputs, outer map takes {} inputs",
                inner.n_out(),
                self.n_in
            ));
        }
        let m = inner
            .to_matrix()
            .exp(self.degree())?
            .matmul(&self.to_matrix())?;
        let out = Self::from_matrix(&m)?;
        assert!(
            out.degree() <= self.degree() * inner.degree(),
            "composition degree {} exceeds {} * {}",
            out.degree(),
            self.degree(),
            inner.degree()
        );
        Ok(out)
    }

    /// `m`-fold self-composition.
    ///
    /// Homogeneous maps `x^(k)/k! A` with `k >= 1` use the product
    /// `A^(k^{m-1})/(k^{m-1})! ... A^(k)/k! A`; anything else composes
    /// through the matrix route `m - 1` times.
    pub fn iterate(&self, m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter(
                "iteration count must be at least 1".into(),
            ));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        if self.n_in != self.n_out() {
            return dim_err("only maps F^n -> F^n can be iterated");
        }
        match self.homogeneous_degree() {
            Some(k) if k >= 1 => self.iterate_homogeneous(k, m),
            _ => self.iterate_by_composition(m),
        }
    }

    pub(crate) fn iterate_by_composition(&self, m: u32) -> Result<Self> {
        let mut acc = self.clone();
        for _ in 1..m {
            acc = self.compose_matrix(&acc)?;
        }
        Ok(acc)
    }

    pub(crate) fn iterate_homogeneous(&self, k: u32, m: u32) -> Result<Self> {
        let a = self
            .to_matrix()
            .block(k, 1)
            .cloned()
            .ok_or_else(|| Error::InvalidParameter("map has no degree-k part".into()))?;
        let mut result = a.clone();
        let mut power = a.clone();
        let mut exponent: u64 = 1;
        for _ in 1..m {
            power = power.odot_power(k);
            exponent *= u64::from(k);
            let e = u32::try_from(exponent)
                .map_err(|_| Error::InvalidParameter("iterated degree overflows".into()))?;
            let factor = power.div_scalar(&S::from_integer(&factorial(e)))?;
            result = factor.matmul(&result)?;
        }
        Self::from_matrix(&BlockMatrix::from_block(result))
    }
}

impl<S: Scalar> fmt::Display for PolyMap<S> {
    /// Terms ascending in the graded order, components joined by `; `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, comp) in self.components.iter().enumerate() {
            if j > 0 {
                write!(f, "; ")?;
            }
            if comp.is_empty() {
                write!(f, "0")?;
                continue;
            }
            for (t, (a, c)) in comp.iter().enumerate() {
                let negative = c.is_negative();
                let abs = if negative { c.neg_ref() } else { c.clone() };
                match (t, negative) {
                    (0, true) => write!(f, "-")?,
                    (0, false) => {}
                    (_, true) => write!(f, " - ")?,
                    (_, false) => write!(f, " + ")?,
                }
                let vars: Vec<String> = a
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{e}", i + 1)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    write!(f, "{abs}")?;
                } else if abs == S::one() {
                    write!(f, "{}", vars.join("*"))?;
                } else {
                    write!(f, "{abs}*{}", vars.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

/// A scalar polynomial (one output) supported in a single degree.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogPoly<S> {
    map: PolyMap<S>,
    degree: u32,
}

impl<S: Scalar> HomogPoly<S> {
    /// Wraps a one-output map; the zero map needs an explicit degree.
    pub fn new(map: PolyMap<S>, degree: Option<u32>) -> Result<Self> {
        if map.n_out() != 1 {
            return dim_err("homogeneous polynomials have exactly one output");
        }
        let degree = match (map.homogeneous_degree(), degree) {
            (Some(d), None) => d,
            (Some(d), Some(e)) if d == e => d,
            (None, Some(e)) if map.is_zero() => e,
            (None, None) if map.is_zero() => {
                return Err(Error::InvalidParameter(
                    "the zero polynomial needs a degree".into(),
                ))
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "polynomial is not homogeneous of that degree".into(),
                ))
            }
        };
        Ok(HomogPoly { map, degree })
    }

    pub fn parse(text: &str, n_in: usize) -> Result<Self> {
        Self::new(PolyMap::parse(text, n_in)?, None)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn as_map(&self) -> &PolyMap<S> {
        &self.map
    }

    pub fn into_map(self) -> PolyMap<S> {
        self.map
    }

    /// `M_P` as a one-column block of degrees `(deg P, 0)`.
    pub fn matrix_block(&self) -> GradedMatrix<S> {
        let n = self.map.n_in();
        match self.map.to_matrix().block(self.degree, 1) {
            Some(b) => b.regrade_columns(0).expect("single output column"),
            None => GradedMatrix::zeros(n, 1, self.degree, 0).expect("valid shape"),
        }
    }

    /// `PQ`, computed as `M_{PQ} = M_P odot M_Q`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.map.n_in() != other.map.n_in() {
            return dim_err("homogeneous product needs the same variables");
        }
        let block = self
            .matrix_block()
            .odot(&other.matrix_block())?
            .regrade_columns(1)?;
        let map = PolyMap::from_matrix(&BlockMatrix::from_block(block))?;
        Self::new(map, Some(self.degree + other.degree))
    }
}

impl<S: Scalar> fmt::Display for HomogPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.map.fmt(f)
    }
}
