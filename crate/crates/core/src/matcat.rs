//! The skeleton matrix category over a semiring.
//!
//! Objects are natural numbers (dimensions) and a morphism `n -> m` is an
//! `m x n` matrix: rows index the codomain, columns index the domain, so
//! `g.compose(&f)` is the matrix product `g * f`. The tensor is the Kronecker
//! product with row-major index pairing `(i, i') -> i * dim' + i'`, and the
//! direct sum is the block-diagonal matrix. Every object is self-dual.
//!
//! Zero-dimensional matrices are ordinary values here; they are the maps to
//! and from the zero object.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::{Scalar, ScalarValue, SemiringTag};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    tag: SemiringTag,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Selects one summand of a binary direct sum `sizes.0 ⊕ sizes.1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockIndex {
    pub which: Summand,
    pub sizes: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summand {
    First,
    Second,
}

impl BlockIndex {
    pub fn first(sizes: (usize, usize)) -> Self {
        BlockIndex {
            which: Summand::First,
            sizes,
        }
    }

    pub fn second(sizes: (usize, usize)) -> Self {
        BlockIndex {
            which: Summand::Second,
            sizes,
        }
    }

    fn offset_and_len(&self) -> (usize, usize) {
        match self.which {
            Summand::First => (0, self.sizes.0),
            Summand::Second => (self.sizes.0, self.sizes.1),
        }
    }
}

impl Matrix {
    pub fn new(tag: SemiringTag, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Blocks(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !tag.admits(e)) {
            return Err(Error::TagMismatch {
                left: tag.kind(),
                right: bad.kind(),
            });
        }
        Ok(Matrix {
            tag,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        tag: SemiringTag,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                debug_assert!(tag.admits(&e));
                entries.push(e);
            }
        }
        Matrix {
            tag,
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from row vectors; all rows must have the same length.
    pub fn from_rows(tag: SemiringTag, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Blocks("ragged matrix rows".into()));
        }
        let n = rows.len();
        Matrix::new(tag, n, cols, rows.into_iter().flatten().collect())
    }

    /// Boolean matrix from 0/1 rows.
    pub fn boolean(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(SemiringTag::BOOLEAN, rows.len(), cols, |i, j| {
            Scalar::Bool(rows[i][j] != 0)
        })
    }

    /// Complex matrix with real entries.
    pub fn real(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(SemiringTag::COMPLEX, rows.len(), cols, |i, j| {
            Scalar::complex(rows[i][j], 0.0)
        })
    }

    pub fn zero(tag: SemiringTag, rows: usize, cols: usize) -> Self {
        Matrix {
            tag,
            rows,
            cols,
            entries: vec![tag.zero(); rows * cols],
        }
    }

    pub fn identity(tag: SemiringTag, n: usize) -> Self {
        Matrix::from_fn(tag, n, n, |i, j| if i == j { tag.one() } else { tag.zero() })
    }

    /// The permutation matrix sending basis vector `j` to `image[j]`.
    pub fn permutation(tag: SemiringTag, image: &[usize]) -> Self {
        let n = image.len();
        let mut m = Matrix::zero(tag, n, n);
        for (j, &i) in image.iter().enumerate() {
            m.entries[i * n + j] = tag.one();
        }
        m
    }

    /// A 1x1 matrix holding `s`.
    pub fn scalar(s: &ScalarValue) -> Self {
        Matrix {
            tag: s.tag(),
            rows: 1,
            cols: 1,
            entries: vec![s.value().clone()],
        }
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(self.tag.admits(&value), "entry of the wrong semiring");
        self.entries[i * self.cols + j] = value;
    }

    /// Same entries under a different tolerance.
    pub fn retagged(mut self, tag: SemiringTag) -> Result<Self> {
        self.tag.ensure_compatible(&tag)?;
        self.tag = tag;
        Ok(self)
    }

    /// The single entry of a 1x1 matrix.
    pub fn to_scalar(&self) -> Result<ScalarValue> {
        if self.shape() != (1, 1) {
            return Err(Error::Shape {
                op: "to_scalar",
                left: self.shape(),
                right: (1, 1),
            });
        }
        ScalarValue::new(self.tag, self.entries[0].clone())
    }

    /// `self ∘ f`: apply `f` first.
    pub fn compose(&self, f: &Matrix) -> Result<Matrix> {
        self.tag.ensure_compatible(&f.tag)?;
        if f.rows != self.cols {
            return Err(Error::Shape {
                op: "compose",
                left: self.shape(),
                right: f.shape(),
            });
        }
        let mut out = Matrix::zero(self.tag, self.rows, f.cols);
        for i in 0..self.rows {
            for r in 0..self.cols {
                let g_ir = &self.entries[i * self.cols + r];
                if g_ir.is_zero() {
                    continue;
                }
                for j in 0..f.cols {
                    let f_rj = &f.entries[r * f.cols + j];
                    if f_rj.is_zero() {
                        continue;
                    }
                    out.entries[i * f.cols + j].add_assign(&g_ir.mul(f_rj));
                }
            }
        }
        Ok(out)
    }

    /// Composes a chain applied right to left: `compose_all([h, g, f]) = h ∘ g ∘ f`.
    pub fn compose_all<'a>(chain: impl IntoIterator<Item = &'a Matrix>) -> Result<Matrix> {
        let mut iter = chain.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::Precondition("empty composition chain".into()))?;
        iter.try_fold(first.clone(), |acc, m| acc.compose(m))
    }

    /// Kronecker product.
    pub fn tensor(&self, g: &Matrix) -> Result<Matrix> {
        self.tag.ensure_compatible(&g.tag)?;
        let rows = self.rows * g.rows;
        let cols = self.cols * g.cols;
        let mut out = Matrix::zero(self.tag, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let f_ij = &self.entries[i * self.cols + j];
                if f_ij.is_zero() {
                    continue;
                }
                for i2 in 0..g.rows {
                    for j2 in 0..g.cols {
                        let r = i * g.rows + i2;
                        let c = j * g.cols + j2;
                        out.entries[r * cols + c] = f_ij.mul(&g.entries[i2 * g.cols + j2]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum `self ⊕ g`.
    pub fn direct_sum(&self, g: &Matrix) -> Result<Matrix> {
        self.tag.ensure_compatible(&g.tag)?;
        let (r1, c1) = self.shape();
        Ok(Matrix::from_fn(
            self.tag,
            r1 + g.rows,
            c1 + g.cols,
            |i, j| match (i < r1, j < c1) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => g.get(i - r1, j - c1).clone(),
                _ => self.tag.zero(),
            },
        ))
    }

    /// Entrywise semiring sum.
    pub fn add(&self, g: &Matrix) -> Result<Matrix> {
        self.tag.ensure_compatible(&g.tag)?;
        if self.shape() != g.shape() {
            return Err(Error::Shape {
                op: "add",
                left: self.shape(),
                right: g.shape(),
            });
        }
        Ok(Matrix {
            tag: self.tag,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&g.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix {
        Matrix::from_fn(self.tag, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.tag, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// A copy with one entry perturbed: Booleans toggle, naturals move by one
    /// (down when positive), complex entries gain one.
    pub fn with_entry_flipped(&self, i: usize, j: usize) -> Matrix {
        let mut out = self.clone();
        let flipped = match self.get(i, j) {
            Scalar::Bool(b) => Scalar::Bool(!b),
            Scalar::Nat(n) if !n.is_zero() => Scalar::Nat(n - 1u32),
            Scalar::Nat(n) => Scalar::Nat(n + 1u32),
            Scalar::Complex(z) => Scalar::Complex(z + 1.0),
        };
        out.set(i, j, flipped);
        out
    }

    pub fn scalar_multiple(&self, s: &ScalarValue) -> Result<Matrix> {
        self.tag.ensure_compatible(&s.tag())?;
        Ok(Matrix {
            tag: self.tag,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| s.value().mul(e)).collect(),
        })
    }

    /// Largest entrywise deviation; infinite when shapes or semirings differ.
    pub fn max_deviation(&self, other: &Matrix) -> f64 {
        if self.shape() != other.shape() || self.tag.kind() != other.tag.kind() {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Matrix) -> bool {
        self.max_deviation(other) <= self.tag.tolerance()
    }

    pub fn is_unitary(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let id = Matrix::identity(self.tag, self.rows);
        let d = self.dagger();
        matches!((d.compose(self), self.compose(&d)), (Ok(a), Ok(b)) if a.approx_eq(&id) && b.approx_eq(&id))
    }

    /// The sub-block `π_i ∘ self ∘ ι_j` for the given row and column splits.
    pub fn block(
        &self,
        row_split: (usize, usize),
        col_split: (usize, usize),
        i: Summand,
        j: Summand,
    ) -> Result<Matrix> {
        if row_split.0 + row_split.1 != self.rows || col_split.0 + col_split.1 != self.cols {
            return Err(Error::Blocks(format!(
                "split {row_split:?} x {col_split:?} does not fit a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let (r0, rn) = BlockIndex { which: i, sizes: row_split }.offset_and_len();
        let (c0, cn) = BlockIndex { which: j, sizes: col_split }.offset_and_len();
        Ok(Matrix::from_fn(self.tag, rn, cn, |a, b| {
            self.get(r0 + a, c0 + b).clone()
        }))
    }

    /// Assembles `[[f11, f12], [f21, f22]]` into one matrix.
    pub fn from_blocks(blocks: [[&Matrix; 2]; 2]) -> Result<Matrix> {
        let [[f11, f12], [f21, f22]] = blocks;
        for m in [f12, f21, f22] {
            f11.tag.ensure_compatible(&m.tag)?;
        }
        let consistent = f11.rows == f12.rows
            && f21.rows == f22.rows
            && f11.cols == f21.cols
            && f12.cols == f22.cols;
        if !consistent {
            return Err(Error::Blocks(format!(
                "blocks {:?} {:?} / {:?} {:?} do not tile",
                f11.shape(),
                f12.shape(),
                f21.shape(),
                f22.shape()
            )));
        }
        let (r1, c1) = f11.shape();
        Ok(Matrix::from_fn(
            f11.tag,
            r1 + f21.rows,
            c1 + f12.cols,
            |i, j| match (i < r1, j < c1) {
                (true, true) => f11.get(i, j).clone(),
                (true, false) => f12.get(i, j - c1).clone(),
                (false, true) => f21.get(i - r1, j).clone(),
                (false, false) => f22.get(i - r1, j - c1).clone(),
            },
        ))
    }

    /// `⟨f, g⟩`: stacks `f` over `g`.
    pub fn pair(f: &Matrix, g: &Matrix) -> Result<Matrix> {
        f.tag.ensure_compatible(&g.tag)?;
        if f.cols != g.cols {
            return Err(Error::Shape {
                op: "pair",
                left: f.shape(),
                right: g.shape(),
            });
        }
        let mut entries = f.entries.clone();
        entries.extend(g.entries.iter().cloned());
        Matrix::new(f.tag, f.rows + g.rows, f.cols, entries)
    }

    /// `[f, g]`: places `f` left of `g`.
    pub fn copair(f: &Matrix, g: &Matrix) -> Result<Matrix> {
        f.tag.ensure_compatible(&g.tag)?;
        if f.rows != g.rows {
            return Err(Error::Shape {
                op: "copair",
                left: f.shape(),
                right: g.shape(),
            });
        }
        Ok(Matrix::from_fn(f.tag, f.rows, f.cols + g.cols, |i, j| {
            if j < f.cols {
                f.get(i, j).clone()
            } else {
                g.get(i, j - f.cols).clone()
            }
        }))
    }
}

impl fmt::Display for Matrix {
    /// Nested row-major arrays; complex entries with a non-zero imaginary part
    /// print as `[re, im]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

pub fn projection(tag: SemiringTag, b: BlockIndex) -> Matrix {
    let (offset, len) = b.offset_and_len();
    let total = b.sizes.0 + b.sizes.1;
    Matrix::from_fn(tag, len, total, |i, j| {
        if j == offset + i {
            tag.one()
        } else {
            tag.zero()
        }
    })
}

pub fn injection(tag: SemiringTag, b: BlockIndex) -> Matrix {
    projection(tag, b).transpose()
}

/// The biproduct diagonal `Δ_n = ⟨1, 1⟩ : n -> n ⊕ n`.
pub fn diag_biprod(tag: SemiringTag, n: usize) -> Matrix {
    let id = Matrix::identity(tag, n);
    Matrix::pair(&id, &id).expect("identities share a domain")
}

/// The codiagonal `∇_n = [1, 1] : n ⊕ n -> n`.
pub fn codiag_biprod(tag: SemiringTag, n: usize) -> Matrix {
    diag_biprod(tag, n).transpose()
}

/// `η_n : 1 -> n ⊗ n`, the column with ones at the indices `(i, i)`.
pub fn unit_eta(tag: SemiringTag, n: usize) -> Matrix {
    Matrix::from_fn(tag, n * n, 1, |r, _| {
        if n > 0 && r / n == r % n {
            tag.one()
        } else {
            tag.zero()
        }
    })
}

/// `ε_n : n ⊗ n -> 1`.
pub fn counit_eps(tag: SemiringTag, n: usize) -> Matrix {
    unit_eta(tag, n).transpose()
}

/// `σ_{n,m} : n ⊗ m -> m ⊗ n`, sending basis `(i, j)` to `(j, i)`.
pub fn swap_matrix(tag: SemiringTag, n: usize, m: usize) -> Matrix {
    let image: Vec<usize> = (0..n * m).map(|c| (c % m) * n + c / m).collect();
    Matrix::permutation(tag, &image)
}

/// `α_{n,m,k}`; the identity in the strict skeleton.
pub fn assoc_iso(tag: SemiringTag, n: usize, m: usize, k: usize) -> Matrix {
    Matrix::identity(tag, n * m * k)
}

/// `λ_n : n -> 1 ⊗ n`.
pub fn left_unit_iso(tag: SemiringTag, n: usize) -> Matrix {
    Matrix::identity(tag, n)
}

/// `ρ_n : n -> n ⊗ 1`.
pub fn right_unit_iso(tag: SemiringTag, n: usize) -> Matrix {
    Matrix::identity(tag, n)
}

/// `θ : n ⊗ (m ⊕ k) -> (n ⊗ m) ⊕ (n ⊗ k)`.
pub fn distributor(tag: SemiringTag, n: usize, m: usize, k: usize) -> Matrix {
    let width = m + k;
    let image: Vec<usize> = (0..n * width)
        .map(|c| {
            let (i, j) = (c / width, c % width);
            if j < m {
                i * m + j
            } else {
                n * m + i * k + (j - m)
            }
        })
        .collect();
    Matrix::permutation(tag, &image)
}

/// The loop `ε ∘ σ ∘ η` on dimension `n`, i.e. the dimension as a scalar.
pub fn circle(tag: SemiringTag, n: usize) -> ScalarValue {
    let m = Matrix::compose_all([
        &counit_eps(tag, n),
        &swap_matrix(tag, n, n),
        &unit_eta(tag, n),
    ])
    .expect("shapes agree by construction");
    m.to_scalar().expect("1x1 result")
}

/// The projectors `U ∘ ι_i ∘ π_i ∘ U†` for a unitary `U` and a binary split of its domain.
pub fn projector_spectrum(u: &Matrix, split: (usize, usize)) -> Result<Vec<Matrix>> {
    if u.cols() != split.0 + split.1 {
        return Err(Error::Blocks(format!(
            "split {split:?} does not match a {}x{} unitary",
            u.rows(),
            u.cols()
        )));
    }
    if !u.is_unitary() {
        let id = Matrix::identity(u.tag(), u.cols());
        let d = u.dagger();
        let dev = [d.compose(u), u.compose(&d)]
            .into_iter()
            .map(|m| m.map_or(f64::INFINITY, |m| m.max_deviation(&id)))
            .fold(0.0, f64::max);
        return Err(Error::NotUnitary(dev));
    }
    let tag = u.tag();
    let u_dag = u.dagger();
    [BlockIndex::first(split), BlockIndex::second(split)]
        .into_iter()
        .map(|b| Matrix::compose_all([u, &injection(tag, b), &projection(tag, b), &u_dag]))
        .collect()
}
