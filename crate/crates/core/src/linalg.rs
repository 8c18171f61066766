//! Dense exact matrices over `Q(z8)` and the tensor conventions used for
//! qubit-site operators.
//!
//! Tensor products follow the "left into right" rule: for `X` and
//! `A = [[a, b], [c, d]]`,
//!
//! ```text
//! X ⊗ A = [[a X, b X],
//!          [c X, d X]]
//! ```
//!
//! so the *right* factor selects the block and the *left* factor fills it.
//! On `(C^2)^{⊗n}` this puts tensor factor `k` (1-based) on bit `k - 1` of
//! the basis index: factor 1 is the least significant bit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix rows have inconsistent length (expected {expected}, found {found})")]
    NotSquare { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("site {site} is out of range for {strands} strands")]
    SiteOutOfRange { strands: usize, site: usize },
    #[error("site operators act on two qubits; got a {0}x{0} block")]
    BlockSize(usize),
}

/// A square matrix with exact entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<CycloNum>,
}

// Row-parallel products pay off only once rows are long.
const PAR_THRESHOLD: usize = 64;

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![CycloNum::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, CycloNum::one())
    }

    pub fn scalar(dim: usize, c: CycloNum) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.entries[k * dim + k] = c.clone();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> CycloNum) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(LinalgError::NotSquare {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(ExactMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer entries; panics unless `rows` is square.
    pub fn from_int_rows<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Self::from_fn(N, |r, c| CycloNum::from_integer(rows[r][c]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNum {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNum) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycloNum] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.entries
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&CycloNum, &CycloNum) -> CycloNum,
    ) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(ExactMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Exact product. Zero entries are skipped on both sides, so products
    /// with site operators cost `O(nnz * dim)` rather than `O(dim^3)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let d = self.dim;
        let rhs_rows: Vec<Vec<(usize, &CycloNum)>> = (0..d)
            .map(|k| {
                other
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        let mut entries = vec![CycloNum::zero(); d * d];
        let fill_row = |(i, out): (usize, &mut [CycloNum])| {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &rhs_rows[k] {
                    out[j] += a * b;
                }
            }
        };
        if d >= PAR_THRESHOLD {
            entries.par_chunks_mut(d).enumerate().for_each(fill_row);
        } else {
            entries.chunks_mut(d.max(1)).enumerate().for_each(fill_row);
        }
        Ok(ExactMatrix { dim: d, entries })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self ⊗ right` under the left-into-right convention.
    pub fn kron(&self, right: &Self) -> Self {
        let (dx, da) = (self.dim, right.dim);
        let d = dx * da;
        Self::from_fn(d, |r, c| {
            let a = right.get(r / dx, c / dx);
            if a.is_zero() {
                return CycloNum::zero();
            }
            a * self.get(r % dx, c % dx)
        })
    }

    /// `f_1 ⊗ f_2 ⊗ ... ⊗ f_k`; the empty product is the 1x1 identity.
    pub fn tensor(factors: &[ExactMatrix]) -> Self {
        factors.iter().fold(Self::identity(1), |acc, f| acc.kron(f))
    }

    pub fn trace(&self) -> CycloNum {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycloNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<CycloNum> {
        if self.dim == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for r in 0..self.dim {
            for (col, x) in self.row(r).iter().enumerate() {
                let ok = if r == col { *x == c } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| {
            self.row(r)
                .iter()
                .enumerate()
                .all(|(c, x)| r == c || x.is_zero())
        })
    }

    pub fn is_unitary(&self) -> bool {
        (self * &self.dagger()).is_identity()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let d = self.dim;
        let mut a: Vec<Vec<CycloNum>> = (0..d).map(|r| self.row(r).to_vec()).collect();
        let mut inv: Vec<Vec<CycloNum>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        if r == c {
                            CycloNum::one()
                        } else {
                            CycloNum::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(LinalgError::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv().expect("pivot is nonzero");
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                if !x.is_zero() {
                    *x = &*x * &p;
                }
            }
            let (pivot_a, pivot_inv) = (a[col].clone(), inv[col].clone());
            for r in 0..d {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_a) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
                for (x, y) in inv[r].iter_mut().zip(&pivot_inv) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        Ok(ExactMatrix {
            dim: d,
            entries: inv.into_iter().flatten().collect(),
        })
    }

    /// Compact injective byte key of the exact entries.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.dim * self.dim * 2);
        out.extend_from_slice(&(self.dim as u32).to_le_bytes());
        for x in &self.entries {
            x.write_canonical(&mut out);
        }
        out
    }
}

/// `p^{-1} a p`.
pub fn conjugate_by(p: &ExactMatrix, a: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    p.check_dim(a)?;
    let p_inv = p.inverse()?;
    Ok(&(&p_inv * a) * p)
}

/// `I_2^{⊗(i-1)} ⊗ block ⊗ I_2^{⊗(n-i-1)}` for a 4x4 `block`, built by
/// addressing the bit pair `(i-1, i)` of each basis index directly.
pub fn site_operator(n: usize, i: usize, block: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if block.dim() != 4 {
        return Err(LinalgError::BlockSize(block.dim()));
    }
    if i == 0 || i + 1 > n {
        return Err(LinalgError::SiteOutOfRange {
            strands: n,
            site: i,
        });
    }
    let d = 1usize << n;
    let shift = i - 1;
    let mask = 3usize << shift;
    let mut m = ExactMatrix::zeros(d);
    for r in 0..d {
        let br = (r & mask) >> shift;
        let rest = r & !mask;
        for bc in 0..4 {
            let v = block.get(br, bc);
            if !v.is_zero() {
                m.set(r, rest | (bc << shift), v.clone());
            }
        }
    }
    Ok(m)
}

/// 2x2 `block` on tensor factor `k` (1-based) of `n` qubits.
pub fn single_site_operator(
    n: usize,
    k: usize,
    block: &ExactMatrix,
) -> Result<ExactMatrix, LinalgError> {
    if block.dim() != 2 {
        return Err(LinalgError::BlockSize(block.dim()));
    }
    if k == 0 || k > n {
        return Err(LinalgError::SiteOutOfRange {
            strands: n,
            site: k,
        });
    }
    let d = 1usize << n;
    let bit = 1usize << (k - 1);
    let mut m = ExactMatrix::zeros(d);
    for r in 0..d {
        let br = usize::from(r & bit != 0);
        for bc in 0..2 {
            let v = block.get(br, bc);
            if !v.is_zero() {
                let c = if bc == 1 { r | bit } else { r & !bit };
                m.set(r, c, v.clone());
            }
        }
    }
    Ok(m)
}

macro_rules! matrix_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&ExactMatrix> for &ExactMatrix {
            type Output = ExactMatrix;
            /// Panics on a dimension mismatch; use the `try_` form to recover.
            fn $method(self, rhs: &ExactMatrix) -> ExactMatrix {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<ExactMatrix> for ExactMatrix {
            type Output = ExactMatrix;
            fn $method(self, rhs: ExactMatrix) -> ExactMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

matrix_binop!(Add, add, try_add);
matrix_binop!(Sub, sub, try_sub);
matrix_binop!(Mul, mul, try_mul);

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        -&self
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A matrix with exactly one nonzero entry in each row and column.
///
/// Row `r` holds `vals[r]` in column `cols[r]`. Products and traces are
/// `O(dim)`, which is what makes the pure-braid images and the
/// extraspecial-group models cheap to enumerate at `2^10` dimensions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialMatrix {
    cols: Vec<u32>,
    vals: Vec<CycloNum>,
}

impl MonomialMatrix {
    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, CycloNum::one())
    }

    pub fn scalar(dim: usize, c: CycloNum) -> Self {
        MonomialMatrix {
            cols: (0..dim as u32).collect(),
            vals: vec![c; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn from_dense(m: &ExactMatrix) -> Option<Self> {
        let d = m.dim();
        let mut cols = Vec::with_capacity(d);
        let mut vals = Vec::with_capacity(d);
        let mut used = vec![false; d];
        for r in 0..d {
            let mut nz = m.row(r).iter().enumerate().filter(|(_, x)| !x.is_zero());
            let (c, v) = nz.next()?;
            if nz.next().is_some() || std::mem::replace(&mut used[c], true) {
                return None;
            }
            cols.push(c as u32);
            vals.push(v.clone());
        }
        Some(MonomialMatrix { cols, vals })
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let d = self.dim();
        let mut m = ExactMatrix::zeros(d);
        for r in 0..d {
            m.set(r, self.cols[r] as usize, self.vals[r].clone());
        }
        m
    }

    /// The two-qubit monomial `block` placed on sites `(i, i+1)` of `n`.
    pub fn site(n: usize, i: usize, block: &MonomialMatrix) -> Result<Self, LinalgError> {
        if block.dim() != 4 {
            return Err(LinalgError::BlockSize(block.dim()));
        }
        if i == 0 || i + 1 > n {
            return Err(LinalgError::SiteOutOfRange {
                strands: n,
                site: i,
            });
        }
        let shift = i - 1;
        let mask = 3usize << shift;
        let d = 1usize << n;
        let mut cols = Vec::with_capacity(d);
        let mut vals = Vec::with_capacity(d);
        for r in 0..d {
            let br = (r & mask) >> shift;
            cols.push(((r & !mask) | ((block.cols[br] as usize) << shift)) as u32);
            vals.push(block.vals[br].clone());
        }
        Ok(MonomialMatrix { cols, vals })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let mut cols = Vec::with_capacity(self.dim());
        let mut vals = Vec::with_capacity(self.dim());
        for (c, v) in self.cols.iter().zip(&self.vals) {
            let k = *c as usize;
            cols.push(other.cols[k]);
            vals.push(v * &other.vals[k]);
        }
        Ok(MonomialMatrix { cols, vals })
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        MonomialMatrix {
            cols: self.cols.clone(),
            vals: self.vals.iter().map(|v| v * c).collect(),
        }
    }

    pub fn trace(&self) -> CycloNum {
        self.cols
            .iter()
            .zip(&self.vals)
            .enumerate()
            .filter(|(r, (c, _))| *r == **c as usize)
            .map(|(_, (_, v))| v)
            .sum()
    }

    pub fn as_scalar(&self) -> Option<CycloNum> {
        let first = self.vals.first()?;
        let diagonal = self.cols.iter().enumerate().all(|(r, &c)| r == c as usize);
        (diagonal && self.vals.iter().all(|v| v == first)).then(|| first.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(r, &c)| r == c as usize)
    }
}

impl Mul<&MonomialMatrix> for &MonomialMatrix {
    type Output = MonomialMatrix;
    fn mul(self, rhs: &MonomialMatrix) -> MonomialMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &MonomialMatrix {
    type Output = MonomialMatrix;
    fn neg(self) -> MonomialMatrix {
        self.scale(&-CycloNum::one())
    }
}
