//! Finite-dimensional representations of the word algebras, Hermitian
//! exponentials, spectral data, interior compression, and the adaptive
//! quadrature oracle for Fourier coefficients.
//!
//! The isometry is represented by the compressed shift on e₀..e_{N−1}, the
//! circle unitary by the compressed bilateral shift on modes −M..M, tensor
//! factors by Kronecker products. Compression keeps positivity; corner
//! defects are excluded through interior blocks, never papered over.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::homotopy::unit_phase;
use crate::matrix::AlgebraMatrix;
use crate::word::{Factor, FactorWord, Signature};
use faer::complex_native::c64;
use faer::{Mat, Side};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;

/// Representation parameters.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TruncationConfig {
    /// Toeplitz cutoff: the shift acts on e₀..e_{N−1}.
    pub n: usize,
    /// Circle cutoff: modes −M..M.
    pub m_rep: usize,
    /// Interior-compression width, clamped per factor so that an interior
    /// remains (the circle factor is the binding one for the scans).
    pub margin: usize,
    pub tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig { n: 64, m_rep: 32, margin: 8, tol: 1e-10 }
    }
}

impl TruncationConfig {
    pub fn new(n: usize, m_rep: usize, margin: usize, tol: f64) -> Result<Self> {
        let cfg = TruncationConfig { n, m_rep, margin, tol };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.m_rep < 2 {
            return Err(Error::BadConfig("need n ≥ 2 and m_rep ≥ 2".into()));
        }
        if self.margin * 2 >= self.m_rep {
            return Err(Error::BadConfig(format!(
                "margin {} leaves no circle interior at m_rep {}",
                self.margin, self.m_rep
            )));
        }
        Ok(())
    }

    pub fn factor_dim(&self, f: Factor) -> usize {
        match f {
            Factor::Toeplitz => self.n,
            Factor::Circle => 2 * self.m_rep + 1,
        }
    }

    pub fn rep_dim(&self, sig: &Signature) -> usize {
        sig.0.iter().map(|f| self.factor_dim(*f)).product::<usize>().max(1)
    }
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermitian_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    fn to_faer(&self) -> Mat<c64> {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            let z = self[(i, j)];
            c64::new(z.re, z.im)
        })
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

// banded entries (row, col) with value 1 of one factor word
fn factor_entries(fw: FactorWord, cfg: &TruncationConfig) -> Vec<(usize, usize)> {
    match fw {
        FactorWord::T(m, n) => {
            let (m, n, dim) = (m as usize, n as usize, cfg.n);
            let mut v = Vec::new();
            for col in n..dim {
                let row = col - n + m;
                if row < dim {
                    v.push((row, col));
                }
            }
            v
        }
        FactorWord::C(k) => {
            let dim = 2 * cfg.m_rep as i64 + 1;
            let mut v = Vec::new();
            for col in 0..dim {
                let row = col + k;
                if row >= 0 && row < dim {
                    v.push((row as usize, col as usize));
                }
            }
            v
        }
    }
}

/// Represent an element as a dense matrix: tensor factors become Kronecker
/// factors, terms add with their coefficients.
pub fn represent(e: &Element, cfg: &TruncationConfig) -> Result<CMatrix> {
    cfg.validate()?;
    let dim = cfg.rep_dim(&e.signature);
    let strides: Vec<usize> = {
        let dims: Vec<usize> = e.signature.0.iter().map(|f| cfg.factor_dim(*f)).collect();
        let mut s = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * dims[i + 1];
        }
        s
    };
    let mut out = CMatrix::zeros(dim, dim);
    for (w, c) in &e.terms {
        let z = c.to_complex();
        // cartesian product over per-factor banded entries
        let factor_lists: Vec<Vec<(usize, usize)>> =
            w.0.iter().map(|fw| factor_entries(*fw, cfg)).collect();
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        for (fl, stride) in factor_lists.iter().zip(strides.iter()) {
            let mut next = Vec::with_capacity(stack.len() * fl.len());
            for &(r, cidx) in &stack {
                for &(fr, fc) in fl {
                    next.push((r + fr * stride, cidx + fc * stride));
                }
            }
            stack = next;
        }
        for (r, cidx) in stack {
            out[(r, cidx)] += z;
        }
    }
    Ok(out)
}

/// Represent a matrix over a word algebra: block structure outside, Kronecker
/// structure inside.
pub fn represent_matrix(m: &AlgebraMatrix<Element>, cfg: &TruncationConfig) -> Result<CMatrix> {
    let sig = m.entries().next().map(|e| e.signature.clone()).ok_or_else(|| {
        Error::ShapeMismatch { detail: "empty matrix".into() }
    })?;
    let inner = cfg.rep_dim(&sig);
    let mut out = CMatrix::zeros(m.rows * inner, m.cols * inner);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let block = represent(m.get(i, j), cfg)?;
            for r in 0..inner {
                for c in 0..inner {
                    out[(i * inner + r, j * inner + c)] = block[(r, c)];
                }
            }
        }
    }
    Ok(out)
}

/// `e^{2πiA}` for self-adjoint `A`, via eigendecomposition (exact spectral
/// mapping: integer eigenvalues map to 1).
pub fn herm_exp(a: &CMatrix, tol: f64) -> Result<CMatrix> {
    let defect = a.hermitian_defect();
    if defect > tol {
        return Err(Error::NotSelfAdjoint { defect, tol });
    }
    let n = a.rows;
    let fa = a.to_faer();
    let evd = fa.selfadjoint_eigendecomposition(Side::Lower);
    let u = evd.u();
    let s = evd.s();
    let phases: Vec<Complex64> = (0..n)
        .map(|i| unit_phase(s.column_vector().read(i).re))
        .collect();
    // U · diag(e^{2πiλ}) · U*
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let uik = u.read(i, k);
                let ujk = u.read(j, k);
                let uik = Complex64::new(uik.re, uik.im);
                let ujk = Complex64::new(ujk.re, ujk.im);
                acc += uik * phases[k] * ujk.conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Largest singular value.
pub fn spec_norm(a: &CMatrix) -> f64 {
    if a.rows == 0 || a.cols == 0 {
        return 0.0;
    }
    a.to_faer().singular_values().first().copied().unwrap_or(0.0)
}

/// Count of singular values above `tol`.
pub fn rank(a: &CMatrix, tol: f64) -> usize {
    a.to_faer().singular_values().iter().filter(|s| **s > tol).count()
}

pub fn spec_norm_rank_trace(a: &CMatrix, tol: f64) -> (f64, usize, Complex64) {
    let sv = a.to_faer().singular_values();
    let norm = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|s| **s > tol).count();
    (norm, rank, a.trace())
}

/// Interior index set of a represented space: Toeplitz factors drop the top
/// `margin` basis vectors (clamped to keep e₀), circle factors drop `margin`
/// modes at both ends.
pub fn interior_indices(cfg: &TruncationConfig, sig: &Signature, blocks: usize) -> Vec<usize> {
    let dims: Vec<usize> = sig.0.iter().map(|f| cfg.factor_dim(*f)).collect();
    let keep: Vec<Vec<usize>> = sig
        .0
        .iter()
        .zip(dims.iter())
        .map(|(f, &d)| match f {
            Factor::Toeplitz => {
                let m = cfg.margin.min(d - 1);
                (0..d - m).collect()
            }
            Factor::Circle => {
                let m = cfg.margin.min((d - 1) / 2);
                (m..d - m).collect()
            }
        })
        .collect();
    let inner: usize = dims.iter().product::<usize>().max(1);
    let mut factor_sets: Vec<usize> = vec![0];
    for (k, ks) in keep.iter().enumerate() {
        let stride: usize = dims[k + 1..].iter().product();
        let mut next = Vec::with_capacity(factor_sets.len() * ks.len());
        for &base in &factor_sets {
            for &i in ks {
                next.push(base + i * stride);
            }
        }
        factor_sets = next;
    }
    let mut out = Vec::with_capacity(blocks * factor_sets.len());
    for b in 0..blocks {
        for &i in &factor_sets {
            out.push(b * inner + i);
        }
    }
    out
}

/// Restriction of a matrix to a set of row/column indices.
pub fn interior_compress(a: &CMatrix, indices: &[usize]) -> CMatrix {
    let mut out = CMatrix::zeros(indices.len(), indices.len());
    for (r, &i) in indices.iter().enumerate() {
        for (c, &j) in indices.iter().enumerate() {
            out[(r, c)] = a[(i, j)];
        }
    }
    out
}

/// Adaptive panel quadrature of `∫₀¹ e^{−2πiks} f(s) ds` with panels split at
/// the listed breakpoints; absolute error target `target`.
pub fn quadrature_fourier(
    f: &dyn Fn(f64) -> Complex64,
    k: i64,
    breakpoints: &[f64],
    target: f64,
) -> Result<Complex64> {
    let g = |s: f64| unit_phase(-(k as f64) * s) * f(s);
    let mut points: Vec<f64> = vec![0.0, 1.0];
    points.extend(breakpoints.iter().copied().filter(|b| *b > 0.0 && *b < 1.0));
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();
    // oscillation-aware initial subdivision
    let min_panels = (2 * k.unsigned_abs() as usize + 4).min(512);
    let mut panels = Vec::new();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let sub = ((b - a) * min_panels as f64).ceil().max(1.0) as usize;
        for i in 0..sub {
            let lo = a + (b - a) * i as f64 / sub as f64;
            let hi = a + (b - a) * (i + 1) as f64 / sub as f64;
            panels.push((lo, hi));
        }
    }
    let per_panel = target / panels.len() as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in panels {
        total += adaptive_simpson(&g, a, b, per_panel, 48)?;
    }
    Ok(total)
}

fn simpson(g: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (g(a) + 4.0 * g(m) + g(b))
}

fn adaptive_simpson(
    g: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> Result<Complex64> {
    let whole = simpson(g, a, b);
    adaptive_step(g, a, b, whole, tol, depth)
}

fn adaptive_step(
    g: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    whole: Complex64,
    tol: f64,
    depth: usize,
) -> Result<Complex64> {
    let m = 0.5 * (a + b);
    let left = simpson(g, a, m);
    let right = simpson(g, m, b);
    let err = (left + right - whole).norm() / 15.0;
    if err <= tol || (b - a) < 1e-14 {
        if err > tol {
            return Err(Error::QuadratureDidNotConverge { achieved: err, target: tol });
        }
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureDidNotConverge { achieved: err, target: tol });
    }
    Ok(adaptive_step(g, a, m, left, tol / 2.0, depth - 1)?
        + adaptive_step(g, m, b, right, tol / 2.0, depth - 1)?)
}

/// Write a matrix as a `.npy` file (complex128, C order).
pub fn write_npy(path: &std::path::Path, a: &CMatrix) -> Result<()> {
    let mut header = format!(
        "{{'descr': '<c16', 'fortran_order': False, 'shape': ({}, {}), }}",
        a.rows, a.cols
    );
    let unpadded = 10 + header.len() + 1;
    let pad = (64 - unpadded % 64) % 64;
    header.push_str(&" ".repeat(pad));
    header.push('\n');
    let mut buf: Vec<u8> = Vec::with_capacity(10 + header.len() + 16 * a.data.len());
    buf.extend_from_slice(b"\x93NUMPY\x01\x00");
    buf.extend_from_slice(&(header.len() as u16).to_le_bytes());
    buf.extend_from_slice(header.as_bytes());
    for z in &a.data {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    std::fs::File::create(path)?.write_all(&buf)?;
    Ok(())
}

/// Write a convergence scan as CSV with columns `m,defect`.
pub fn write_scan_csv(path: &std::path::Path, rows: &[(usize, f64)]) -> Result<()> {
    let mut out = String::from("m,defect\n");
    for (m, d) in rows {
        out.push_str(&format!("{m},{d}\n"));
    }
    std::fs::File::create(path)?.write_all(out.as_bytes())?;
    Ok(())
}
