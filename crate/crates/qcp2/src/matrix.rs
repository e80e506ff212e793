//! Small dense matrices with entries in a word algebra or a pullback.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::pullback::AlgValue;
use crate::scalar::Scalar;
use serde::ser::SerializeStruct;
use serde::Serialize;

/// Entry types usable in an [`AlgebraMatrix`].
pub trait AlgebraEntry: Clone + PartialEq + std::fmt::Debug {
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_sub(&self, other: &Self) -> Result<Self>;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn adjoint(&self) -> Self;
    fn scale(&self, s: Scalar) -> Self;
    fn zero_like(&self) -> Self;
    fn unit_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn norm_bound(&self) -> f64;
    /// ℓ¹ distance (max over pullback components).
    fn defect_norm(&self, other: &Self) -> Result<f64>;
    /// Largest single-coefficient deviation.
    fn max_coeff_defect(&self, other: &Self) -> Result<f64>;
}

impl AlgebraEntry for Element {
    fn try_add(&self, other: &Self) -> Result<Self> {
        Element::try_add(self, other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        Element::try_sub(self, other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        Element::try_mul(self, other)
    }
    fn adjoint(&self) -> Self {
        Element::adjoint(self)
    }
    fn scale(&self, s: Scalar) -> Self {
        Element::scale(self, s)
    }
    fn zero_like(&self) -> Self {
        Element::zero(self.signature.clone())
    }
    fn unit_like(&self) -> Self {
        Element::one(self.signature.clone())
    }
    fn is_zero(&self) -> bool {
        Element::is_zero(self)
    }
    fn norm_bound(&self) -> f64 {
        Element::norm_bound(self)
    }
    fn defect_norm(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.norm_bound())
    }
    fn max_coeff_defect(&self, other: &Self) -> Result<f64> {
        Ok(Element::max_coeff_defect(self, other))
    }
}

impl AlgebraEntry for AlgValue {
    fn try_add(&self, other: &Self) -> Result<Self> {
        AlgValue::try_add(self, other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self> {
        AlgValue::try_sub(self, other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        AlgValue::try_mul(self, other)
    }
    fn adjoint(&self) -> Self {
        AlgValue::adjoint(self)
    }
    fn scale(&self, s: Scalar) -> Self {
        AlgValue::scale(self, s)
    }
    fn zero_like(&self) -> Self {
        match self {
            AlgValue::Flat(e) => AlgValue::Flat(AlgebraEntry::zero_like(e)),
            AlgValue::Pair(p) => AlgValue::pair(
                p.diagram,
                AlgebraEntry::zero_like(&p.left),
                AlgebraEntry::zero_like(&p.right),
            ),
        }
    }
    fn unit_like(&self) -> Self {
        match self {
            AlgValue::Flat(e) => AlgValue::Flat(AlgebraEntry::unit_like(e)),
            AlgValue::Pair(p) => AlgValue::pair(
                p.diagram,
                AlgebraEntry::unit_like(&p.left),
                AlgebraEntry::unit_like(&p.right),
            ),
        }
    }
    fn is_zero(&self) -> bool {
        AlgValue::is_zero(self)
    }
    fn norm_bound(&self) -> f64 {
        AlgValue::norm_bound(self)
    }
    fn defect_norm(&self, other: &Self) -> Result<f64> {
        AlgValue::defect_norm(self, other)
    }
    fn max_coeff_defect(&self, other: &Self) -> Result<f64> {
        AlgValue::max_coeff_defect(self, other)
    }
}

/// A rows×cols matrix over a word algebra or pullback, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<T>,
}

impl<T: AlgebraEntry> AlgebraMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        AlgebraMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        AlgebraMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn identity(proto: &T, n: usize) -> Self {
        AlgebraMatrix::from_fn(n, n, |i, j| {
            if i == j {
                proto.unit_like()
            } else {
                proto.zero_like()
            }
        })
    }

    pub fn zero(proto: &T, rows: usize, cols: usize) -> Self {
        AlgebraMatrix::from_fn(rows, cols, |_, _| proto.zero_like())
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.entries.iter()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                detail: format!(
                    "{}×{} times {}×{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: Option<T> = None;
                for k in 0..self.cols {
                    let term = self.get(i, k).try_mul(other.get(k, j))?;
                    acc = Some(match acc {
                        None => term,
                        Some(a) => a.try_add(&term)?,
                    });
                }
                out.push(acc.unwrap());
            }
        }
        Ok(AlgebraMatrix { rows: self.rows, cols: other.cols, entries: out })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(AlgebraMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_>>()?;
        Ok(AlgebraMatrix { rows: self.rows, cols: self.cols, entries })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                detail: format!(
                    "{}×{} vs {}×{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        Ok(())
    }

    pub fn scale(&self, s: Scalar) -> Self {
        AlgebraMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(s.clone())).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        AlgebraMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).adjoint())
    }

    /// Simultaneous row/column permutation `P·A·Pᵀ`: entry (i,j) of the
    /// result is entry (perm[i], perm[j]) of the input.
    pub fn permute_conjugate(&self, perm: &[usize]) -> Result<Self> {
        if self.rows != self.cols || perm.len() != self.rows {
            return Err(Error::ShapeMismatch {
                detail: "permutation conjugation needs a square matrix".into(),
            });
        }
        Ok(AlgebraMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(perm[i], perm[j]).clone()
        }))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        AlgebraMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    /// Max over entries of the ℓ¹ distance to `other`.
    pub fn defect_norm(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        let mut worst: f64 = 0.0;
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            worst = worst.max(a.defect_norm(b)?);
        }
        Ok(worst)
    }

    /// Max over entries of the largest coefficient deviation from `other`.
    pub fn max_coeff_defect(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        let mut worst: f64 = 0.0;
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            worst = worst.max(a.max_coeff_defect(b)?);
        }
        Ok(worst)
    }

    pub fn map<U: AlgebraEntry>(&self, f: impl Fn(&T) -> U) -> AlgebraMatrix<U> {
        AlgebraMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: AlgebraEntry>(&self, f: impl Fn(&T) -> Result<U>) -> Result<AlgebraMatrix<U>> {
        Ok(AlgebraMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

impl<T: Serialize> Serialize for AlgebraMatrix<T> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("AlgebraMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let rows: Vec<&[T]> = self.entries.chunks(self.cols.max(1)).collect();
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}
