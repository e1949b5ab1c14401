//! Finite-support block matrices `Mat_{n,n'}` with blockwise `odot`, the
//! ordinary blockwise product, and `Exp`.

use std::collections::BTreeMap;

use crate::error::{dim_err, Error, Result};
use crate::exec::Exec;
use crate::graded_matrix::GradedMatrix;
use crate::multiindex::{enumerate_degree, factorial};
use crate::scalar::Scalar;

/// Blocks keyed by `(row degree, column degree)`. All-zero blocks are never
/// stored, so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix<S> {
    row_arity: usize,
    col_arity: usize,
    blocks: BTreeMap<(u32, u32), GradedMatrix<S>>,
}

impl<S: Scalar> BlockMatrix<S> {
    pub fn zero(row_arity: usize, col_arity: usize) -> Self {
        BlockMatrix {
            row_arity,
            col_arity,
            blocks: BTreeMap::new(),
        }
    }

    /// The `odot` unit: a single `(0, 0)` block equal to 1.
    pub fn unit(row_arity: usize, col_arity: usize) -> Self {
        Self::from_block(GradedMatrix::odot_unit(row_arity, col_arity))
    }

    pub fn from_block(block: GradedMatrix<S>) -> Self {
        let mut m = Self::zero(block.row_arity(), block.col_arity());
        m.add_block(block).expect("arities match by construction");
        m
    }

    pub fn from_blocks(
        row_arity: usize,
        col_arity: usize,
        blocks: impl IntoIterator<Item = GradedMatrix<S>>,
    ) -> Result<Self> {
        let mut m = Self::zero(row_arity, col_arity);
        for b in blocks {
            m.add_block(b)?;
        }
        Ok(m)
    }

    /// Adds `block` to whatever is stored at its degrees.
    pub fn add_block(&mut self, block: GradedMatrix<S>) -> Result<()> {
        if block.row_arity() != self.row_arity || block.col_arity() != self.col_arity {
            return dim_err(format!(
                "block of arities ({}, {}) in a matrix of arities ({}, {})",
                block.row_arity(),
                block.col_arity(),
                self.row_arity,
                self.col_arity
            ));
        }
        let key = block.degrees();
        let merged = match self.blocks.remove(&key) {
            Some(existing) => existing.add(&block)?,
            None => block,
        };
        if !merged.is_zero() {
            self.blocks.insert(key, merged);
        }
        Ok(())
    }

    pub fn row_arity(&self) -> usize {
        self.row_arity
    }
    pub fn col_arity(&self) -> usize {
        self.col_arity
    }

    pub fn block(&self, row_degree: u32, col_degree: u32) -> Option<&GradedMatrix<S>> {
        self.blocks.get(&(row_degree, col_degree))
    }

    /// Stored block, or the zero block of those degrees.
    pub fn block_or_zero(&self, row_degree: u32, col_degree: u32) -> Result<GradedMatrix<S>> {
        match self.block(row_degree, col_degree) {
            Some(b) => Ok(b.clone()),
            None => GradedMatrix::zeros(self.row_arity, self.col_arity, row_degree, col_degree),
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = &GradedMatrix<S>> {
        self.blocks.values()
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.blocks.keys().copied()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn max_row_degree(&self) -> Option<u32> {
        self.blocks.keys().map(|k| k.0).max()
    }

    pub fn max_col_degree(&self) -> Option<u32> {
        self.blocks.keys().map(|k| k.1).max()
    }

    /// Every stored block has column degree 1: the matrices of polynomial maps.
    pub fn is_map_type(&self) -> bool {
        self.blocks.keys().all(|&(_, q)| q == 1)
    }

    /// Blocks of column degree at most `max_col_degree`.
    pub fn truncate_columns(&self, max_col_degree: u32) -> Self {
        BlockMatrix {
            row_arity: self.row_arity,
            col_arity: self.col_arity,
            blocks: self
                .blocks
                .iter()
                .filter(|(k, _)| k.1 <= max_col_degree)
                .map(|(k, b)| (*k, b.clone()))
                .collect(),
        }
    }

    fn same_arities(&self, other: &Self, what: &str) -> Result<()> {
        if self.row_arity != other.row_arity || self.col_arity != other.col_arity {
            return dim_err(format!(
                "{what}: arities ({}, {}) vs ({}, {})",
                self.row_arity, self.col_arity, other.row_arity, other.col_arity
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_arities(other, "add")?;
        let mut out = self.clone();
        for b in other.blocks() {
            out.add_block(b.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&S::one().neg_ref()))
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.row_arity, self.col_arity);
        for b in self.blocks() {
            out.add_block(b.scale(factor)).expect("same arities");
        }
        out
    }

    pub fn map_blocks<T: Scalar>(
        &self,
        f: impl Fn(&GradedMatrix<S>) -> GradedMatrix<T>,
    ) -> BlockMatrix<T> {
        let mut out = BlockMatrix::zero(self.row_arity, self.col_arity);
        for b in self.blocks() {
            out.add_block(f(b)).expect("same arities");
        }
        out
    }

    pub fn to_f64(&self) -> BlockMatrix<f64> {
        self.map_blocks(GradedMatrix::to_f64)
    }

    pub fn odot(&self, other: &Self) -> Result<Self> {
        self.odot_with(other, Exec::default())
    }

    /// `C(p,p') = sum A(q,q') odot B(p-q, p'-q')`.
    pub fn odot_with(&self, other: &Self, exec: Exec) -> Result<Self> {
        self.same_arities(other, "odot")?;
        let pairs: Vec<(&GradedMatrix<S>, &GradedMatrix<S>)> = self
            .blocks()
            .flat_map(|a| other.blocks().map(move |b| (a, b)))
            .collect();
        let products = exec.map_slice(&pairs, |(a, b)| {
            a.odot_with(b, Exec::Sequential).expect("same arities")
        });
        Self::from_blocks(self.row_arity, self.col_arity, products)
    }

    /// `M^(m)`.
    pub fn odot_power(&self, m: u32) -> Self {
        let mut acc = Self::unit(self.row_arity, self.col_arity);
        for _ in 0..m {
            acc = acc.odot(self).expect("same arities");
        }
        acc
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.matmul_with(other, Exec::default())
    }

    /// `C(p,p') = sum_q A(p,q) B(q,p')`.
    pub fn matmul_with(&self, other: &Self, exec: Exec) -> Result<Self> {
        if self.col_arity != other.row_arity {
            return dim_err(format!(
                "matmul: column arity {} vs row arity {}",
                self.col_arity, other.row_arity
            ));
        }
        let pairs: Vec<(&GradedMatrix<S>, &GradedMatrix<S>)> = self
            .blocks()
            .flat_map(|a| {
                other
                    .blocks()
                    .filter(move |b| b.row_degree() == a.col_degree())
                    .map(move |b| (a, b))
            })
            .collect();
        let products = exec.map_slice(&pairs, |(a, b)| a.matmul(b).expect("compatible blocks"));
        Self::from_blocks(self.row_arity, other.col_arity, products)
    }

    /// All blocks of `Exp(M) = sum M^(i)/i!` with column degree `<= qmax`.
    ///
    /// Only defined for map-type `M`. Every factor of `M^(i)` has column
    /// degree 1, so `M^(i)` lives in column degree `i` and the column-degree-`q`
    /// part of `Exp(M)` is exactly `M^(q)/q!`.
    pub fn exp(&self, qmax: u32) -> Result<Self> {
        if !self.is_map_type() {
            return Err(Error::UnsupportedDomain(
                "Exp is implemented for matrices supported in column degree 1".into(),
            ));
        }
        let mut out = Self::unit(self.row_arity, self.col_arity);
        let mut power = Self::unit(self.row_arity, self.col_arity);
        for i in 1..=qmax {
            power = power.odot(self)?;
            if power.is_zero() {
                break;
            }
            let fact = S::from_integer(&factorial(i));
            for b in power.blocks() {
                out.add_block(b.div_scalar(&fact)?)?;
            }
        }
        Ok(out)
    }

    /// `Exp(x)` for a numeric point `x` in `M_{n,n}(0,1)`: blocks `(0, m)`
    /// equal to `x^(m)/m!`, whose entry at `a` is `x^a/a!`, for `m <= qmax`.
    pub fn numeric_exp_row(point: &[S], qmax: u32) -> Result<Self> {
        let n = point.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "point must have at least one coordinate".into(),
            ));
        }
        let h = GradedMatrix::row_vector(point);
        let mut out = Self::zero(n, n);
        for m in 0..=qmax {
            let block = h.h_power_closed(m)?;
            let fact = S::from_integer(&factorial(m));
            out.add_block(block.div_scalar(&fact)?)?;
        }
        Ok(out)
    }

    /// `psi * phi = Exp(psi) phi` for map-type `psi` and finite `phi`.
    pub fn star(&self, other: &Self) -> Result<Self> {
        let qmax = other.max_row_degree().unwrap_or(0);
        self.exp(qmax)?.matmul(other)
    }

    /// The diagonal matrix with blocks `E_k`, `k <= max_degree`.
    pub fn identity(n: usize, max_degree: u32) -> Result<Self> {
        Self::from_blocks(
            n,
            n,
            (0..=max_degree)
                .map(|k| GradedMatrix::identity(n, k))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Number of stored nonzero entries, for diagnostics.
    pub fn nnz(&self) -> usize {
        self.blocks()
            .map(|b| b.entries().iter().filter(|e| !e.is_zero()).count())
            .sum()
    }

    /// Row `0` of every `(0, q)` block concatenated, in column order; used to
    /// read off values such as `Exp(x) M_phi`.
    pub fn degree_zero_row(&self, col_degree: u32) -> Vec<S> {
        match self.block(0, col_degree) {
            Some(b) => (0..b.cols()).map(|j| b.get(0, j).clone()).collect(),
            None => vec![S::zero(); enumerate_degree(self.col_arity, col_degree).len()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn block(n: usize, nc: usize, p: u32, q: u32, v: &[(i64, i64)]) -> GradedMatrix<Rational> {
        GradedMatrix::from_entries(n, nc, p, q, v.iter().map(|&(a, b)| rat(a, b)).collect())
            .unwrap()
    }

    fn shifted_by_one() -> BlockMatrix<Rational> {
        // psi(y) = y + 1
        BlockMatrix::from_blocks(
            1,
            1,
            [block(1, 1, 0, 1, &[(1, 1)]), block(1, 1, 1, 1, &[(1, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let a = BlockMatrix::from_blocks(
            2,
            1,
            [
                block(2, 1, 1, 1, &[(1, 2), (3, 1)]),
                block(2, 1, 0, 0, &[(5, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(BlockMatrix::unit(2, 1).odot(&a).unwrap(), a);
        assert!(BlockMatrix::unit(2, 2).odot(&a).is_err());
    }

    #[test]
    fn single_blocks_reduce_to_graded_product() {
        let a = block(2, 1, 1, 1, &[(1, 2), (3, 1)]);
        let b = block(2, 1, 2, 0, &[(1, 1), (-2, 1), (1, 3)]);
        let lhs = BlockMatrix::from_block(a.clone())
            .odot(&BlockMatrix::from_block(b.clone()))
            .unwrap();
        assert_eq!(lhs, BlockMatrix::from_block(a.odot(&b).unwrap()));
    }

    #[test]
    fn block_product_is_bilinear_expansion() {
        let a1 = block(2, 1, 1, 1, &[(1, 2), (3, 1)]);
        let a2 = block(2, 1, 0, 1, &[(-1, 1)]);
        let b1 = block(2, 1, 2, 0, &[(1, 1), (-2, 1), (1, 3)]);
        let b2 = block(2, 1, 1, 1, &[(2, 5), (0, 1)]);
        let a = BlockMatrix::from_blocks(2, 1, [a1.clone(), a2.clone()]).unwrap();
        let b = BlockMatrix::from_blocks(2, 1, [b1.clone(), b2.clone()]).unwrap();
        let expected = BlockMatrix::from_blocks(
            2,
            1,
            [
                a1.odot(&b1).unwrap(),
                a1.odot(&b2).unwrap(),
                a2.odot(&b1).unwrap(),
                a2.odot(&b2).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a.odot(&b).unwrap(), expected);
    }

    #[test]
    fn block_identity_is_left_unit() {
        let id = BlockMatrix::<Rational>::identity(2, 3).unwrap();
        let m = BlockMatrix::from_blocks(
            2,
            1,
            [
                block(2, 1, 0, 1, &[(1, 1)]),
                block(2, 1, 1, 1, &[(2, 1), (-1, 3)]),
                block(2, 1, 3, 1, &[(1, 1), (0, 1), (4, 1), (-7, 2)]),
            ],
        )
        .unwrap();
        assert_eq!(id.matmul(&m).unwrap(), m);
        let single = block(2, 1, 1, 1, &[(2, 1), (-1, 3)]);
        let e = GradedMatrix::identity(2, 1).unwrap();
        assert_eq!(
            BlockMatrix::from_block(e.clone())
                .matmul(&BlockMatrix::from_block(single.clone()))
                .unwrap(),
            BlockMatrix::from_block(e.matmul(&single).unwrap())
        );
    }

    #[test]
    fn exp_of_zero_is_unit() {
        let z = BlockMatrix::<Rational>::zero(2, 3);
        assert_eq!(z.exp(5).unwrap(), BlockMatrix::unit(2, 3));
    }

    #[test]
    fn exp_of_shift_map() {
        let psi = shifted_by_one();
        let e = psi.exp(2).unwrap();
        assert_eq!(e.block(0, 0).unwrap().entries(), &[rat(1, 1)]);
        assert_eq!(e.block(0, 1).unwrap().entries(), &[rat(1, 1)]);
        assert_eq!(e.block(1, 1).unwrap().entries(), &[rat(1, 1)]);
        assert_eq!(e.block(0, 2).unwrap().entries(), &[rat(1, 2)]);
        assert_eq!(e.block(1, 2).unwrap().entries(), &[rat(1, 1)]);
        assert_eq!(e.block(2, 2).unwrap().entries(), &[rat(1, 1)]);
        assert_eq!(e.num_blocks(), 6);
    }

    #[test]
    fn exp_of_linear_block_stays_on_diagonal() {
        let a = block(2, 2, 1, 1, &[(1, 2), (3, 1), (-1, 1), (2, 3)]);
        let e = BlockMatrix::from_block(a.clone()).exp(4).unwrap();
        for (p, q) in e.support() {
            assert_eq!(p, q);
        }
        for p in 0..=4 {
            let fact = rat(factorial(p).try_into().unwrap(), 1);
            let expected = a.odot_power(p).div_scalar(&fact).unwrap();
            assert_eq!(e.block(p, p).unwrap(), &expected);
        }
    }

    #[test]
    fn exp_rejects_general_support() {
        let m = BlockMatrix::from_block(block(1, 1, 1, 2, &[(1, 1)]));
        assert!(matches!(m.exp(2), Err(Error::UnsupportedDomain(_))));
    }

    #[test]
    fn numeric_exp_rows() {
        let e = BlockMatrix::numeric_exp_row(&[rat(1, 1)], 3).unwrap();
        let expect = [rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 6)];
        for (m, v) in expect.iter().enumerate() {
            assert_eq!(
                e.block(0, m as u32).unwrap().entries(),
                std::slice::from_ref(v)
            );
        }
        let z = BlockMatrix::numeric_exp_row(&[rat(0, 1), rat(0, 1)], 4).unwrap();
        assert_eq!(z, BlockMatrix::unit(2, 2));
        let e = BlockMatrix::numeric_exp_row(&[rat(2, 1), rat(3, 1)], 2).unwrap();
        assert_eq!(
            e.block(0, 2).unwrap().entries(),
            &[rat(2, 1), rat(6, 1), rat(9, 2)]
        );
        assert!(BlockMatrix::<Rational>::numeric_exp_row(&[], 2).is_err());
    }

    #[test]
    fn star_on_linear_maps_is_ordinary_product() {
        let a = block(2, 2, 1, 1, &[(1, 2), (3, 1), (-1, 1), (2, 3)]);
        let b = block(2, 2, 1, 1, &[(0, 1), (1, 1), (5, 1), (-2, 1)]);
        let s = BlockMatrix::from_block(a.clone())
            .star(&BlockMatrix::from_block(b.clone()))
            .unwrap();
        assert_eq!(s, BlockMatrix::from_block(a.matmul(&b).unwrap()));
    }
}
