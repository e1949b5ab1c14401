//! Homogeneous blocks `M_{n,n'}(p,p')` and the binomial-weighted product.
//!
//! Rows are indexed by the degree-`p` multiindices of length `n`, columns by
//! the degree-`p'` multiindices of length `n'`, both in ascending order so
//! that row `i` is `unrank(n, p, i)`.

use num_bigint::BigInt;

use crate::error::{dim_err, Error, Result};
use crate::exec::Exec;
use crate::multiindex::{self, choose, dim, enumerate_degree, factorial, Multiindex};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct GradedMatrix<S> {
    row_arity: usize,
    col_arity: usize,
    row_degree: u32,
    col_degree: u32,
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

fn check_shape(row_arity: usize, col_arity: usize, p: u32, q: u32) -> Result<()> {
    if row_arity == 0 && p > 0 {
        return dim_err(format!("row arity 0 admits only row degree 0, got {p}"));
    }
    if col_arity == 0 && q > 0 {
        return dim_err(format!(
            "column arity 0 admits only column degree 0, got {q}"
        ));
    }
    Ok(())
}

impl<S: Scalar> GradedMatrix<S> {
    pub fn zeros(
        row_arity: usize,
        col_arity: usize,
        row_degree: u32,
        col_degree: u32,
    ) -> Result<Self> {
        check_shape(row_arity, col_arity, row_degree, col_degree)?;
        let rows = dim(row_arity, row_degree);
        let cols = dim(col_arity, col_degree);
        Ok(GradedMatrix {
            row_arity,
            col_arity,
            row_degree,
            col_degree,
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        })
    }

    /// Row-major entries.
    pub fn from_entries(
        row_arity: usize,
        col_arity: usize,
        row_degree: u32,
        col_degree: u32,
        entries: Vec<S>,
    ) -> Result<Self> {
        let mut m = Self::zeros(row_arity, col_arity, row_degree, col_degree)?;
        if entries.len() != m.entries.len() {
            return dim_err(format!(
                "expected {}x{} = {} entries, got {}",
                m.rows,
                m.cols,
                m.entries.len(),
                entries.len()
            ));
        }
        m.entries = entries;
        Ok(m)
    }

    pub fn from_fn<F>(
        row_arity: usize,
        col_arity: usize,
        row_degree: u32,
        col_degree: u32,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(&Multiindex, &Multiindex) -> S,
    {
        let mut m = Self::zeros(row_arity, col_arity, row_degree, col_degree)?;
        let rows = enumerate_degree(row_arity, row_degree);
        let cols = enumerate_degree(col_arity, col_degree);
        for (i, a) in rows.iter().enumerate() {
            for (j, b) in cols.iter().enumerate() {
                m.entries[i * m.cols + j] = f(a, b);
            }
        }
        Ok(m)
    }

    /// The `1 x 1` block of degree `(0, 0)` holding `value`.
    pub fn constant(row_arity: usize, col_arity: usize, value: S) -> Self {
        GradedMatrix {
            row_arity,
            col_arity,
            row_degree: 0,
            col_degree: 0,
            rows: 1,
            cols: 1,
            entries: vec![value],
        }
    }

    /// The unit for `odot`.
    pub fn odot_unit(row_arity: usize, col_arity: usize) -> Self {
        Self::constant(row_arity, col_arity, S::one())
    }

    /// `h` as an element of `M_{n,n}(0,1)`, `n = h.len()`.
    pub fn row_vector(values: &[S]) -> Self {
        let n = values.len();
        Self::row_vector_with_arity(n, values)
    }

    /// A row in `M_{row_arity, values.len()}(0, 1)`.
    pub fn row_vector_with_arity(row_arity: usize, values: &[S]) -> Self {
        GradedMatrix {
            row_arity,
            col_arity: values.len(),
            row_degree: 0,
            col_degree: if values.is_empty() { 0 } else { 1 },
            rows: 1,
            cols: values.len().max(1),
            entries: if values.is_empty() {
                vec![S::zero()]
            } else {
                values.to_vec()
            },
        }
    }

    /// `v` as an element of `M_{n,n'}(1,0)`, `n = v.len()`.
    pub fn column_vector(values: &[S], col_arity: usize) -> Result<Self> {
        Self::from_entries(values.len(), col_arity, 1, 0, values.to_vec())
    }

    /// `E_k` in `M_{n,n}(k,k)`.
    pub fn identity(n: usize, k: u32) -> Result<Self> {
        let mut m = Self::zeros(n, n, k, k)?;
        for i in 0..m.rows {
            m.entries[i * m.cols + i] = S::one();
        }
        Ok(m)
    }

    pub fn row_arity(&self) -> usize {
        self.row_arity
    }
    pub fn col_arity(&self) -> usize {
        self.col_arity
    }
    pub fn row_degree(&self) -> u32 {
        self.row_degree
    }
    pub fn col_degree(&self) -> u32 {
        self.col_degree
    }
    pub fn degrees(&self) -> (u32, u32) {
        (self.row_degree, self.col_degree)
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.entries[i * self.cols + j] = value;
    }

    fn position(&self, row: &Multiindex, col: &Multiindex) -> Option<usize> {
        if row.len() != self.row_arity
            || col.len() != self.col_arity
            || row.degree() != self.row_degree
            || col.degree() != self.col_degree
        {
            return None;
        }
        Some(row.rank() * self.cols + col.rank())
    }

    /// Entry addressed by multiindices; `None` outside the index sets.
    pub fn get_at(&self, row: &Multiindex, col: &Multiindex) -> Option<&S> {
        self.position(row, col).map(|k| &self.entries[k])
    }

    pub fn set_at(&mut self, row: &Multiindex, col: &Multiindex, value: S) -> Result<()> {
        let k = self.position(row, col).ok_or_else(|| {
            Error::Dimension(format!(
                "({row}, {col}) is not an index of a block in M_{{{},{}}}({},{})",
                self.row_arity, self.col_arity, self.row_degree, self.col_degree
            ))
        })?;
        self.entries[k] = value;
        Ok(())
    }

    /// `(row, col, value)` for every nonzero entry, rows then columns ascending.
    pub fn nonzero_entries(&self) -> Vec<(Multiindex, Multiindex, &S)> {
        let rows = enumerate_degree(self.row_arity, self.row_degree);
        let cols = enumerate_degree(self.col_arity, self.col_degree);
        let mut out = Vec::new();
        for (i, a) in rows.iter().enumerate() {
            for (j, b) in cols.iter().enumerate() {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push((a.clone(), b.clone(), v));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if (
            self.row_arity,
            self.col_arity,
            self.row_degree,
            self.col_degree,
        ) != (
            other.row_arity,
            other.col_arity,
            other.row_degree,
            other.col_degree,
        ) {
            return dim_err(format!("{what}: blocks have different shapes"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a.add_ref(b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a.sub_ref(b)))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        GradedMatrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
            ..self.shape_clone()
        }
    }

    fn shape_clone(&self) -> Self {
        GradedMatrix {
            row_arity: self.row_arity,
            col_arity: self.col_arity,
            row_degree: self.row_degree,
            col_degree: self.col_degree,
            rows: self.rows,
            cols: self.cols,
            entries: Vec::new(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        self.map_entries(|a| a.mul_ref(factor))
    }

    pub fn neg(&self) -> Self {
        self.map_entries(|a| a.neg_ref())
    }

    /// Division by a nonzero scalar.
    pub fn div_scalar(&self, divisor: &S) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        Ok(self.map_entries(|a| a.div_ref(divisor).expect("nonzero divisor")))
    }

    pub fn map_entries(&self, f: impl Fn(&S) -> S) -> Self {
        GradedMatrix {
            entries: self.entries.iter().map(f).collect(),
            ..self.shape_clone()
        }
    }

    /// Same entries in another scalar domain.
    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedMatrix<T> {
        GradedMatrix {
            row_arity: self.row_arity,
            col_arity: self.col_arity,
            row_degree: self.row_degree,
            col_degree: self.col_degree,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> GradedMatrix<f64> {
        self.convert(Scalar::to_f64)
    }

    /// Relabels the column degree of a single-column block.
    ///
    /// Valid when both the old and the new degree have exactly one column,
    /// e.g. column arity 1, where `(p)` is the only degree-`p` multiindex.
    pub fn regrade_columns(&self, col_degree: u32) -> Result<Self> {
        check_shape(self.row_arity, self.col_arity, self.row_degree, col_degree)?;
        if self.cols != 1 || dim(self.col_arity, col_degree) != 1 {
            return dim_err("regrade_columns needs single-column blocks");
        }
        let mut out = self.clone();
        out.col_degree = col_degree;
        Ok(out)
    }

    pub fn odot(&self, other: &Self) -> Result<Self> {
        self.odot_with(other, Exec::default())
    }

    /// `C_{a,a'} = sum choose(a, b) A_{b,b'} B_{a-b,a'-b'}` over `b << a`,
    /// `b' << a'` of the degrees of `self`.
    pub fn odot_with(&self, other: &Self, exec: Exec) -> Result<Self> {
        if self.row_arity != other.row_arity || self.col_arity != other.col_arity {
            return dim_err(format!(
                "odot needs equal arities: ({}, {}) vs ({}, {})",
                self.row_arity, self.col_arity, other.row_arity, other.col_arity
            ));
        }
        let n = self.row_arity;
        let n_col = self.col_arity;
        let (p, pc) = self.degrees();
        let (q, qc) = other.degrees();
        let mut out = Self::zeros(n, n_col, p + q, pc + qc)?;

        let left_rows = enumerate_degree(n, p);
        let row_pairs: Vec<Vec<(usize, usize, S)>> = enumerate_degree(n, p + q)
            .iter()
            .map(|a| {
                left_rows
                    .iter()
                    .filter_map(|b| {
                        let rest = a.checked_sub(b)?;
                        let c = choose(a, b).expect("same length");
                        Some((b.rank(), rest.rank(), S::from_integer(&c)))
                    })
                    .collect()
            })
            .collect();
        let left_cols = enumerate_degree(n_col, pc);
        let col_pairs: Vec<Vec<(usize, usize)>> = enumerate_degree(n_col, pc + qc)
            .iter()
            .map(|a| {
                left_cols
                    .iter()
                    .filter_map(|b| a.checked_sub(b).map(|rest| (b.rank(), rest.rank())))
                    .collect()
            })
            .collect();

        let cols = out.cols;
        let rows: Vec<Vec<S>> = exec.map_range(out.rows, |i| {
            (0..cols)
                .map(|j| {
                    let mut acc = S::zero();
                    for (bi, ri, coeff) in &row_pairs[i] {
                        let mut inner = S::zero();
                        for (bj, rj) in &col_pairs[j] {
                            let a = self.get(*bi, *bj);
                            if a.is_zero() {
                                continue;
                            }
                            inner.add_assign_ref(&a.mul_ref(other.get(*ri, *rj)));
                        }
                        if !inner.is_zero() {
                            acc.add_assign_ref(&coeff.mul_ref(&inner));
                        }
                    }
                    acc
                })
                .collect()
        });
        out.entries = rows.into_iter().flatten().collect();
        Ok(out)
    }

    /// `A^(m)`: left fold of `odot`, the unit block for `m = 0`.
    pub fn odot_power(&self, m: u32) -> Self {
        let mut acc = Self::odot_unit(self.row_arity, self.col_arity);
        for _ in 0..m {
            acc = acc.odot(self).expect("same arities");
        }
        acc
    }

    /// Ordinary matrix product; the column index set of `self` must be the
    /// row index set of `other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.col_arity != other.row_arity || self.col_degree != other.row_degree {
            return dim_err(format!(
                "matmul: columns are degree-{} multiindices of length {}, rows are degree-{} of length {}",
                self.col_degree, self.col_arity, other.row_degree, other.row_arity
            ));
        }
        let mut out = Self::zeros(
            self.row_arity,
            other.col_arity,
            self.row_degree,
            other.col_degree,
        )?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.get_mut(i, j).add_assign_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a square block by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return dim_err("inverse of a non-square block");
        }
        let size = self.rows;
        let mut work = self.entries.clone();
        let mut inv = vec![S::zero(); size * size];
        for i in 0..size {
            inv[i * size + i] = S::one();
        }
        for c in 0..size {
            let pivot = (c..size)
                .find(|&r| !work[r * size + c].is_zero())
                .ok_or_else(|| Error::InvalidParameter("singular block".into()))?;
            if pivot != c {
                for j in 0..size {
                    work.swap(pivot * size + j, c * size + j);
                    inv.swap(pivot * size + j, c * size + j);
                }
            }
            let pv = work[c * size + c].clone();
            for j in 0..size {
                work[c * size + j] = work[c * size + j].div_ref(&pv).expect("pivot");
                inv[c * size + j] = inv[c * size + j].div_ref(&pv).expect("pivot");
            }
            for r in 0..size {
                if r == c || work[r * size + c].is_zero() {
                    continue;
                }
                let f = work[r * size + c].clone();
                for j in 0..size {
                    let w = work[c * size + j].mul_ref(&f);
                    work[r * size + j] = work[r * size + j].sub_ref(&w);
                    let v = inv[c * size + j].mul_ref(&f);
                    inv[r * size + j] = inv[r * size + j].sub_ref(&v);
                }
            }
        }
        Ok(GradedMatrix {
            row_arity: self.col_arity,
            col_arity: self.row_arity,
            row_degree: self.col_degree,
            col_degree: self.row_degree,
            rows: size,
            cols: size,
            entries: inv,
        })
    }

    /// `h^(m)` from its closed form: entry at `(0, a')` is `m!/a'! h^{a'}`.
    pub fn h_power_closed(&self, m: u32) -> Result<Self> {
        if self.degrees() != (0, 1) {
            return dim_err("h_power_closed expects a block of degrees (0, 1)");
        }
        let h = &self.entries;
        Self::from_fn(self.row_arity, self.col_arity, 0, m, |_, col| {
            S::from_integer(&multiindex::multinomial(col)).mul_ref(&monomial(h, col))
        })
    }

    /// `v^(m)` from its closed form: entry at `(a, 0)` is `m! v^a`.
    pub fn v_power_closed(&self, m: u32) -> Result<Self> {
        if self.degrees() != (1, 0) {
            return dim_err("v_power_closed expects a block of degrees (1, 0)");
        }
        let v: Vec<S> = (0..self.rows).map(|i| self.get(i, 0).clone()).collect();
        Self::from_fn(self.row_arity, self.col_arity, m, 0, |row, _| {
            S::from_integer(&factorial(m)).mul_ref(&monomial(&v, row))
        })
    }

    /// `(h^(m)/m!) odot E_k` from its closed form: entry at `(a, b)` is
    /// `h^{b-a}/(b-a)!`, zero unless `a << b`.
    pub fn h_odot_identity_closed(&self, m: u32, k: u32) -> Result<Self> {
        if self.degrees() != (0, 1) || self.row_arity != self.col_arity {
            return dim_err("h_odot_identity_closed expects h in M_{n,n}(0,1)");
        }
        let h = &self.entries;
        Self::from_fn(self.row_arity, self.row_arity, k, m + k, |a, b| {
            match b.checked_sub(a) {
                Some(d) => monomial(h, &d)
                    .div_ref(&S::from_integer(&d.factorial()))
                    .expect("factorials are nonzero"),
                None => S::zero(),
            }
        })
    }
}

/// `h^a = prod h_i^{a_i}`.
pub(crate) fn monomial<S: Scalar>(h: &[S], a: &Multiindex) -> S {
    h.iter()
        .zip(a.entries())
        .filter(|(_, &e)| e > 0)
        .fold(S::one(), |acc, (x, &e)| acc.mul_ref(&x.pow_u32(e)))
}

/// `A_1 odot ... odot A_m` by the direct multinomial formula
/// `sum a!/(b_1! ... b_m!) (A_1)_{b_1,b'_1} ... (A_m)_{b_m,b'_m}` over all
/// decompositions `b_1 + ... + b_m = a`, `b'_1 + ... + b'_m = a'`.
///
/// An empty product is the unit block of the given arities.
pub fn odot_multi<S: Scalar>(
    row_arity: usize,
    col_arity: usize,
    factors: &[GradedMatrix<S>],
) -> Result<GradedMatrix<S>> {
    if factors
        .iter()
        .any(|f| f.row_arity != row_arity || f.col_arity != col_arity)
    {
        return dim_err("odot_multi: factor arities differ");
    }
    let p: u32 = factors.iter().map(|f| f.row_degree).sum();
    let pc: u32 = factors.iter().map(|f| f.col_degree).sum();
    let rows = enumerate_degree(row_arity, p);
    let cols = enumerate_degree(col_arity, pc);
    let mut out = GradedMatrix::zeros(row_arity, col_arity, p, pc)?;
    for (i, a) in rows.iter().enumerate() {
        for (j, ac) in cols.iter().enumerate() {
            let mut total = BigIntSum::<S>::default();
            decompose(factors, a, ac, S::one(), BigInt::from(1), &mut total);
            out.set(i, j, total.finish(&a.factorial()));
        }
    }
    Ok(out)
}

/// Terms `(value, prod b_i!)` collected by [`decompose`].
struct BigIntSum<S> {
    terms: Vec<(S, BigInt)>,
}

impl<S> Default for BigIntSum<S> {
    fn default() -> Self {
        BigIntSum { terms: Vec::new() }
    }
}

impl<S: Scalar> BigIntSum<S> {
    fn finish(self, a_fact: &BigInt) -> S {
        let mut acc = S::zero();
        for (value, denom) in self.terms {
            acc.add_assign_ref(&S::from_integer(&(a_fact / denom)).mul_ref(&value));
        }
        acc
    }
}

fn decompose<S: Scalar>(
    factors: &[GradedMatrix<S>],
    rem_row: &Multiindex,
    rem_col: &Multiindex,
    prod: S,
    denom: BigInt,
    total: &mut BigIntSum<S>,
) {
    let Some((head, tail)) = factors.split_first() else {
        total.terms.push((prod, denom));
        return;
    };
    if tail.is_empty() {
        if let Some(v) = head.get_at(rem_row, rem_col) {
            if !v.is_zero() {
                total
                    .terms
                    .push((prod.mul_ref(v), denom * rem_row.factorial()));
            }
        }
        return;
    }
    for b in enumerate_degree(head.row_arity, head.row_degree) {
        let Some(next_row) = rem_row.checked_sub(&b) else {
            continue;
        };
        for bc in enumerate_degree(head.col_arity, head.col_degree) {
            let Some(next_col) = rem_col.checked_sub(&bc) else {
                continue;
            };
            let v = head.get_at(&b, &bc).expect("index in range");
            if v.is_zero() {
                continue;
            }
            decompose(
                tail,
                &next_row,
                &next_col,
                prod.mul_ref(v),
                &denom * b.factorial(),
                total,
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn mi(v: &[u32]) -> Multiindex {
        Multiindex::new(v.to_vec())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn odot_of_monomial_blocks() {
        // x1*x2 times x1 is x1^2*x2; entry 2!*1!*1 = 2 at row (2,1)
        let mut a = GradedMatrix::<Rational>::zeros(2, 0, 2, 0).unwrap();
        a.set_at(&mi(&[1, 1]), &mi(&[]), rat(1, 1)).unwrap();
        let mut b = GradedMatrix::<Rational>::zeros(2, 0, 1, 0).unwrap();
        b.set_at(&mi(&[1, 0]), &mi(&[]), rat(1, 1)).unwrap();
        let c = a.odot(&b).unwrap();
        assert_eq!(c.degrees(), (3, 0));
        let nz = c.nonzero_entries();
        assert_eq!(nz.len(), 1);
        assert_eq!(nz[0].0, mi(&[2, 1]));
        assert_eq!(*nz[0].2, rat(2, 1));
    }

    #[test]
    fn odot_with_zero_and_scalars() {
        let a = GradedMatrix::from_entries(2, 1, 1, 1, ints(&[1, 2])).unwrap();
        let z = GradedMatrix::<Rational>::zeros(2, 1, 2, 0).unwrap();
        let c = a.odot(&z).unwrap();
        assert_eq!(c.degrees(), (3, 1));
        assert!(c.is_zero());

        let s = GradedMatrix::constant(3, 0, rat(2, 3));
        let t = GradedMatrix::constant(3, 0, rat(9, 4));
        assert_eq!(s.odot(&t).unwrap().entries(), &[rat(3, 2)]);
    }

    #[test]
    fn odot_arity_mismatch() {
        let a = GradedMatrix::<Rational>::zeros(2, 1, 1, 1).unwrap();
        let b = GradedMatrix::<Rational>::zeros(3, 1, 1, 1).unwrap();
        assert!(matches!(a.odot(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_arity_shapes() {
        assert!(GradedMatrix::<Rational>::zeros(2, 0, 1, 1).is_err());
        let m = GradedMatrix::<Rational>::zeros(2, 0, 3, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 1));
        let m = GradedMatrix::<Rational>::zeros(3, 2, 0, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 3));
    }

    #[test]
    fn powers_of_row_and_column_vectors() {
        let h = GradedMatrix::row_vector(&ints(&[2, 3]));
        assert_eq!(h.odot_power(2).entries(), ints(&[4, 12, 9]).as_slice());
        assert_eq!(h.odot_power(1), h);
        assert_eq!(h.odot_power(0).entries(), &[rat(1, 1)]);

        let v = GradedMatrix::column_vector(&ints(&[2, 3]), 0).unwrap();
        assert_eq!(v.odot_power(2).entries(), ints(&[8, 12, 18]).as_slice());
    }

    #[test]
    fn closed_forms_match_folds() {
        let h = GradedMatrix::row_vector(&[rat(1, 2), rat(-2, 3), rat(5, 1)]);
        let v = GradedMatrix::column_vector(&[rat(3, 7), rat(-1, 1), rat(2, 5)], 2).unwrap();
        for m in 0..=5 {
            assert_eq!(h.h_power_closed(m).unwrap(), h.odot_power(m));
            assert_eq!(v.v_power_closed(m).unwrap(), v.odot_power(m));
        }
        assert!(v.h_power_closed(2).is_err());
    }

    #[test]
    fn shifted_identity_closed_form() {
        let c = rat(7, 3);
        let h = GradedMatrix::row_vector(std::slice::from_ref(&c));
        let m = h.h_odot_identity_closed(1, 1).unwrap();
        assert_eq!(m.degrees(), (1, 2));
        assert_eq!(m.entries(), &[c]);

        let h = GradedMatrix::row_vector(&[rat(1, 2), rat(3, 1)]);
        for k in 0..=3 {
            assert_eq!(
                h.h_odot_identity_closed(0, k).unwrap(),
                GradedMatrix::identity(2, k).unwrap()
            );
            for m in 0..=3 {
                let fact =
                    GradedMatrix::constant(2, 2, <Rational as Scalar>::from_integer(&factorial(m)));
                let hm = h.odot_power(m).div_scalar(fact.get(0, 0)).unwrap();
                let expected = hm.odot(&GradedMatrix::identity(2, k).unwrap()).unwrap();
                let closed = h.h_odot_identity_closed(m, k).unwrap();
                assert_eq!(closed, expected);
                // a << b fails, e.g. a = (k,0), b = (0,m+k) for k > 0
                if k > 0 {
                    let a = mi(&[k, 0]);
                    let b = mi(&[0, m + k]);
                    assert_eq!(closed.get_at(&a, &b), Some(&rat(0, 1)));
                }
            }
        }
    }

    #[test]
    fn identities() {
        let e = GradedMatrix::<Rational>::identity(2, 1).unwrap();
        assert_eq!(e.entries(), ints(&[1, 0, 0, 1]).as_slice());
        assert_eq!(
            GradedMatrix::<Rational>::identity(2, 0).unwrap().entries(),
            &[rat(1, 1)]
        );
        let e2 = GradedMatrix::<Rational>::identity(2, 2).unwrap();
        assert_eq!((e2.rows(), e2.cols()), (3, 3));

        let a = GradedMatrix::from_entries(2, 1, 2, 1, ints(&[1, -2, 3])).unwrap();
        assert_eq!(e2.matmul(&a).unwrap(), a);
        let s = GradedMatrix::constant(2, 2, rat(3, 1));
        let t = GradedMatrix::constant(2, 2, rat(5, 1));
        assert_eq!(s.matmul(&t).unwrap().entries(), &[rat(15, 1)]);
        assert!(a.matmul(&e2).is_err());
    }

    #[test]
    fn identity_times_v_acts_like_odot() {
        // (E_k odot V) A = A odot V
        let v_sq = GradedMatrix::from_entries(2, 2, 1, 0, vec![rat(2, 3), rat(-1, 4)]).unwrap();
        let v = GradedMatrix::from_entries(2, 1, 1, 0, vec![rat(2, 3), rat(-1, 4)]).unwrap();
        let a = GradedMatrix::from_entries(2, 1, 2, 1, ints(&[1, 5, -3])).unwrap();
        let e = GradedMatrix::identity(2, 2).unwrap();
        let lhs = e.odot(&v_sq).unwrap().matmul(&a).unwrap();
        let rhs = a.odot(&v).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multinomial_formula_agrees_with_fold() {
        let a = GradedMatrix::from_entries(2, 1, 1, 1, ints(&[1, 2])).unwrap();
        let b = GradedMatrix::from_entries(2, 1, 1, 0, ints(&[3, -1])).unwrap();
        let c = GradedMatrix::from_entries(2, 1, 0, 1, ints(&[4])).unwrap();
        let fold = a.odot(&b).unwrap().odot(&c).unwrap();
        let direct = odot_multi(2, 1, &[a.clone(), b.clone(), c]).unwrap();
        assert_eq!(fold, direct);
        assert_eq!(
            odot_multi(2, 1, &[a.clone(), b.clone()]).unwrap(),
            a.odot(&b).unwrap()
        );
        assert_eq!(
            odot_multi::<Rational>(2, 1, &[]).unwrap(),
            GradedMatrix::odot_unit(2, 1)
        );
        let h = GradedMatrix::row_vector(&ints(&[2, -1, 3]));
        let copies = vec![h.clone(); 4];
        assert_eq!(
            odot_multi(3, 3, &copies).unwrap(),
            h.h_power_closed(4).unwrap()
        );
    }

    #[test]
    fn inverse_of_linear_block() {
        let a = GradedMatrix::from_entries(2, 2, 1, 1, ints(&[2, 1, 1, 1])).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(
            a.matmul(&inv).unwrap(),
            GradedMatrix::identity(2, 1).unwrap()
        );
        let singular = GradedMatrix::from_entries(2, 2, 1, 1, ints(&[1, 1, 1, 1])).unwrap();
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = GradedMatrix::from_fn(3, 2, 3, 1, |r, c| {
            rat(
                (r.rank() * 7 + c.rank()) as i64 % 5 - 2,
                1 + r.rank() as i64 % 3,
            )
        })
        .unwrap();
        let b = GradedMatrix::from_fn(3, 2, 2, 2, |r, c| rat(r.rank() as i64 - c.rank() as i64, 2))
            .unwrap();
        assert_eq!(
            a.odot_with(&b, Exec::Sequential).unwrap(),
            a.odot_with(&b, Exec::Parallel).unwrap()
        );
    }
}
