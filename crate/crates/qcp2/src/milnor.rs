//! Connecting-homomorphism machinery at the representative level: the
//! clutching matrices V/V⁻¹ and the Milnor idempotent (ring identities that
//! hold for arbitrary lifts), the Loring projection with its Toeplitz lift Q
//! and closed-form exponential, the lift pair (c, d), and the permutation
//! reduction that strips a rank-one free summand.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::homotopy;
use crate::matrix::{AlgebraEntry, AlgebraMatrix};
use crate::pullback::{node_unit, node_zero, registry, AlgValue, DiagramId};
use crate::trunc::{self, CMatrix, TruncationConfig};
use crate::word::{Factor, Signature};
use num_complex::Complex64;
use std::f64::consts::PI;

/// The clutching matrices
/// `V = (c(2−dc)  cd−1; 1−dc  d)` and `V⁻¹ = (d  1−dc; cd−1  c(2−dc))`.
/// `V·V⁻¹ = V⁻¹·V = I` is a ring identity: it holds for arbitrary square
/// `c`, `d` of equal size, lift property or not.
pub fn clutching_matrices<T: AlgebraEntry>(
    c: &AlgebraMatrix<T>,
    d: &AlgebraMatrix<T>,
) -> Result<(AlgebraMatrix<T>, AlgebraMatrix<T>)> {
    if c.rows != c.cols || d.rows != d.cols || c.rows != d.rows {
        return Err(Error::ShapeMismatch {
            detail: "clutching needs square c, d of equal size".into(),
        });
    }
    let n = c.rows;
    let proto = c.get(0, 0);
    let id = AlgebraMatrix::identity(proto, n);
    let two = id.try_add(&id)?;
    let dc = d.try_mul(c)?;
    let cd = c.try_mul(d)?;
    let c2dc = c.try_mul(&two.try_sub(&dc)?)?;
    let cd1 = cd.try_sub(&id)?;
    let one_dc = id.try_sub(&dc)?;
    let assemble = |tl: &AlgebraMatrix<T>,
                    tr: &AlgebraMatrix<T>,
                    bl: &AlgebraMatrix<T>,
                    br: &AlgebraMatrix<T>| {
        AlgebraMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, bj) = (i / n, j / n);
            let (ii, jj) = (i % n, j % n);
            match (bi, bj) {
                (0, 0) => tl.get(ii, jj).clone(),
                (0, 1) => tr.get(ii, jj).clone(),
                (1, 0) => bl.get(ii, jj).clone(),
                _ => br.get(ii, jj).clone(),
            }
        })
    };
    let v = assemble(&c2dc, &cd1, &one_dc, d);
    let v_inv = assemble(d, &one_dc, &cd1, &c2dc);
    Ok((v, v_inv))
}

/// The Milnor idempotent over a registered pullback: first components are
/// the constant blocks `(I_N, 0; 0, 0)`, second components the displayed
/// polynomials in `c`, `d` over the surjective leg's algebra. `p² = p`
/// exactly for arbitrary `c`, `d` (a ring identity: `p = V·E·V⁻¹`
/// componentwise and `V·V⁻¹ = I` identically).
pub fn milnor_idempotent(
    diagram: DiagramId,
    c: &AlgebraMatrix<Element>,
    d: &AlgebraMatrix<Element>,
) -> Result<AlgebraMatrix<AlgValue>> {
    if c.rows != c.cols || d.rows != d.cols || c.rows != d.rows {
        return Err(Error::ShapeMismatch {
            detail: "the Milnor idempotent needs square c, d of equal size".into(),
        });
    }
    let n = c.rows;
    let diag = registry().diagram(diagram);
    let proto = c.get(0, 0);
    let id = AlgebraMatrix::identity(proto, n);
    let two = id.try_add(&id)?;
    let dc = d.try_mul(c)?;
    let c2dc = c.try_mul(&two.try_sub(&dc)?)?;
    let one_dc = id.try_sub(&dc)?;
    // blocks of the second leg: (c(2−dc)d, c(2−dc)(1−dc); (1−dc)d, (1−dc)²)
    let tl = c2dc.try_mul(d)?;
    let tr = c2dc.try_mul(&one_dc)?;
    let bl = one_dc.try_mul(d)?;
    let br = one_dc.try_mul(&one_dc)?;
    let first_unit = node_unit(&diag.a1);
    let first_zero = node_zero(&diag.a1);
    let mut out = Vec::with_capacity(4 * n * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            let second = match (i / n, j / n) {
                (0, 0) => tl.get(i % n, j % n),
                (0, 1) => tr.get(i % n, j % n),
                (1, 0) => bl.get(i % n, j % n),
                _ => br.get(i % n, j % n),
            };
            let first = if i == j && i < n { first_unit.clone() } else { first_zero.clone() };
            out.push(AlgValue::pair(diagram, first, AlgValue::flat(second.clone())));
        }
    }
    Ok(AlgebraMatrix::from_rows(
        out.chunks(2 * n).map(|r| r.to_vec()).collect(),
    ))
}

/// Triangle wave `f(s) = 1−2s on [0,½], 2s−1 on [½,1]` (mod 1).
pub fn loring_f(s: f64) -> f64 {
    let s = s.rem_euclid(1.0);
    if s <= 0.5 {
        1.0 - 2.0 * s
    } else {
        2.0 * s - 1.0
    }
}

/// Off-diagonal profile supported on `[0,½]`, where the Toeplitz corner
/// defect of the lift lives: `h = χ_{[0,1/2]}·√(f−f²)`.
pub fn loring_h(s: f64) -> f64 {
    let s = s.rem_euclid(1.0);
    if s <= 0.5 {
        (loring_f(s) * (1.0 - loring_f(s))).max(0.0).sqrt()
    } else {
        0.0
    }
}

/// Off-diagonal profile supported on `[½,1]`: `g = χ_{[1/2,1]}·√(f−f²)`.
pub fn loring_g(s: f64) -> f64 {
    let s = s.rem_euclid(1.0);
    if s >= 0.5 {
        (loring_f(s) * (1.0 - loring_f(s))).max(0.0).sqrt()
    } else {
        0.0
    }
}

/// The Loring projection evaluated at a point of the 2-torus:
/// `β(s₁,s₂) = (f(s₂), g+e^{2πis₁}h; g+e^{−2πis₁}h, 1−f(s₂))`.
pub fn loring_beta(s1: f64, s2: f64) -> [[Complex64; 2]; 2] {
    let f = loring_f(s2);
    let g = loring_g(s2);
    let h = loring_h(s2);
    let u = homotopy::unit_phase(s1);
    [
        [
            Complex64::new(f, 0.0),
            Complex64::new(g, 0.0) + u * h,
        ],
        [
            Complex64::new(g, 0.0) + u.conj() * h,
            Complex64::new(1.0 - f, 0.0),
        ],
    ]
}

/// Fourier data for the Loring functions and the loop ν at a given order.
#[derive(Clone, Debug)]
pub struct LoringFourierData {
    pub order: usize,
    pub f: Vec<(i64, Complex64)>,
    pub g: Vec<(i64, Complex64)>,
    pub h: Vec<(i64, Complex64)>,
    pub nu: Vec<(i64, Complex64)>,
}

/// Compute the Fourier data. `f` and `ν` have closed-form coefficients; the
/// square-root profiles are integrated after the substitution
/// `2s = sin²(θ/2)` which removes the endpoint singularities, so a fixed
/// composite Simpson rule converges at machine precision.
pub fn loring_fourier_data(order: usize) -> LoringFourierData {
    let m = order as i64;
    let mut f = Vec::new();
    let mut g = Vec::new();
    let mut h = Vec::new();
    let mut nu = Vec::new();
    for k in -m..=m {
        // triangle wave: 2/(π²k²) at odd k, ½ at k = 0
        let fk = if k == 0 {
            Complex64::new(0.5, 0.0)
        } else if k % 2 != 0 {
            Complex64::new(2.0 / (PI * PI * (k * k) as f64), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        f.push((k, fk));
        let hk = sqrt_profile_coeff(k);
        h.push((k, hk));
        // g(s) = h(s − ½) ⇒ ĝ_k = e^{−πik}·ĥ_k
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        g.push((k, hk * sign));
        nu.push((k, homotopy::fourier_coeff(k, 0.0, 1e-4).expect("t = 0 in range")));
    }
    LoringFourierData { order, f, g, h, nu }
}

// ∫₀^{1/2} e^{−2πiks}√(2s(1−2s)) ds via 2s = sin²(θ/2):
// (1/8)∫₀^π sin²θ · e^{−πik sin²(θ/2)} dθ, a smooth integrand.
fn sqrt_profile_coeff(k: i64) -> Complex64 {
    let n = 4096.max(16 * k.unsigned_abs() as usize);
    let n = if n % 2 == 1 { n + 1 } else { n };
    let step = PI / n as f64;
    let integrand = |theta: f64| -> Complex64 {
        let s2 = (theta / 2.0).sin().powi(2);
        let w = theta.sin().powi(2) / 8.0;
        homotopy::unit_phase(-(k as f64) * s2 / 2.0) * w
    };
    // composite Simpson
    let mut acc = integrand(0.0) + integrand(PI);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += integrand(i as f64 * step) * w;
    }
    acc * step / 3.0
}

fn series_element(sig_first: Factor, coeffs: &[(i64, Complex64)]) -> Element {
    match sig_first {
        Factor::Circle => Element::circle_series(coeffs),
        Factor::Toeplitz => Element::toeplitz_series(coeffs),
    }
}

/// The self-adjoint Toeplitz lift of the Loring projection:
/// `Q = (1⊗f, 1⊗g + S⊗h; 1⊗g + S*⊗h, 1⊗(1−f))` over T⊗C(S¹).
pub fn loring_lift_q(data: &LoringFourierData) -> AlgebraMatrix<Element> {
    let one_t = Element::one(Signature::toeplitz(1));
    let f = series_element(Factor::Circle, &data.f);
    let g = series_element(Factor::Circle, &data.g);
    let h = series_element(Factor::Circle, &data.h);
    let one_c = Element::one(Signature::circle(1));
    let q11 = one_t.tensor(&f);
    let q12 = one_t.tensor(&g) + Element::s().tensor(&h);
    let q21 = one_t.tensor(&g) + Element::s_star().tensor(&h);
    let q22 = one_t.tensor(&(one_c - f));
    AlgebraMatrix::from_rows(vec![vec![q11, q12], vec![q21, q22]])
}

/// The closed form of `e^{2πiQ}`:
/// `(1⊗1 + (1−SS*)⊗(ν−1), 0; 0, 1⊗1)` over T⊗C(S¹).
pub fn exp_q_closed(data: &LoringFourierData) -> AlgebraMatrix<Element> {
    let one = Element::one(Signature::of(&[Factor::Toeplitz, Factor::Circle]));
    let nu = series_element(Factor::Circle, &data.nu);
    let nu_minus_1 = nu - Element::one(Signature::circle(1));
    let e11 = one.clone() + Element::corner_projection().tensor(&nu_minus_1);
    let zero = Element::zero(Signature::of(&[Factor::Toeplitz, Factor::Circle]));
    AlgebraMatrix::from_rows(vec![vec![e11, zero.clone()], vec![zero, one]])
}

/// The lift pair over T⊗T:
/// `d = (SS*⊗1 + (1−SS*)⊗ν̃, 0; 0, 1⊗1)`, `c = d*` with `ν̃* ` in place of
/// `ν̃`, where `ν̃ = x₀` is the Fourier lift of ν with S in place of u.
pub fn lifts_cd(
    order: usize,
) -> Result<(AlgebraMatrix<Element>, AlgebraMatrix<Element>)> {
    let x0 = homotopy::x_t(0.0, order, 1e-4)?;
    lifts_cd_from(&x0)
}

/// The lift pair built from an arbitrary lift ν̃ (any Toeplitz element with
/// σ(ν̃) approximating ν).
pub fn lifts_cd_from(
    nu_tilde: &Element,
) -> Result<(AlgebraMatrix<Element>, AlgebraMatrix<Element>)> {
    if nu_tilde.signature != Signature::toeplitz(1) {
        return Err(Error::SignatureMismatch {
            expected: "T".into(),
            found: nu_tilde.signature.to_string(),
        });
    }
    let range = Element::toeplitz(1, 1);
    let corner = Element::corner_projection();
    let one_t = Element::one(Signature::toeplitz(1));
    let one = one_t.tensor(&one_t);
    let zero = Element::zero(Signature::toeplitz(2));
    let d11 = range.clone().tensor(&one_t) + corner.clone().tensor(nu_tilde);
    let c11 = range.tensor(&one_t) + corner.tensor(&nu_tilde.adjoint());
    let d = AlgebraMatrix::from_rows(vec![vec![d11, zero.clone()], vec![zero.clone(), one.clone()]]);
    let c = AlgebraMatrix::from_rows(vec![vec![c11, zero.clone()], vec![zero, one]]);
    Ok((c, d))
}

/// The even-to-odd boundary data for a self-adjoint lift `p̃` over T⊗C(S¹):
/// the class pair `(I_n, e^{2πi p̃})`, realized numerically at the given
/// truncation, together with the defect of its symbol from the identity
/// (which bounds the compatibility defect of the pair).
pub struct Boundary01 {
    pub n: usize,
    /// `e^{2πi·represent(p̃)}`.
    pub exponential: CMatrix,
    /// `‖E*E − I‖` of the numeric exponential.
    pub unitary_defect: f64,
    /// `‖e^{2πi·represent(σ(p̃))} − I‖` on the represented circle algebra.
    pub symbol_defect: f64,
}

pub fn boundary_01(
    p_tilde: &AlgebraMatrix<Element>,
    cfg: &TruncationConfig,
) -> Result<Boundary01> {
    // self-adjointness of the abstract lift
    let adj_defect = p_tilde.max_coeff_defect(&p_tilde.adjoint())?;
    if adj_defect > cfg.tol {
        return Err(Error::NotSelfAdjoint { defect: adj_defect, tol: cfg.tol });
    }
    let rep = trunc::represent_matrix(p_tilde, cfg)?;
    let exponential = trunc::herm_exp(&rep, cfg.tol.max(1e-9))?;
    let n = exponential.rows;
    let unitary_defect = exponential
        .adjoint()
        .mul(&exponential)
        .sub(&CMatrix::identity(n))
        .max_abs();
    // symbol image: apply σ to every Toeplitz factor, exponentiate, compare
    // with the identity
    let symbol = p_tilde.try_map(|e| {
        let mut out = e.clone();
        for (idx, f) in e.signature.0.clone().iter().enumerate() {
            if *f == Factor::Toeplitz {
                out = out.symbol_map(idx)?;
            }
        }
        Ok(out)
    })?;
    let srep = trunc::represent_matrix(&symbol, cfg)?;
    let sexp = trunc::herm_exp(&srep, cfg.tol.max(1e-9))?;
    let symbol_defect = sexp.sub(&CMatrix::identity(sexp.rows)).max_abs();
    Ok(Boundary01 { n: p_tilde.rows, exponential, unitary_defect, symbol_defect })
}

/// Reduction of a 4×4 Milnor idempotent built from 2×2 lifts of the
/// one-nontrivial-entry form: the simultaneous row/column permutation
/// (0 2 1 3) turns it into `diag(p̃_U, stripped)` where the stripped block is
/// a rank-one free summand; returns `p̃_U` and the stripped rank.
pub fn reduce_pu(
    p: &AlgebraMatrix<AlgValue>,
) -> Result<(AlgebraMatrix<AlgValue>, usize)> {
    if p.rows != 4 || p.cols != 4 {
        return Err(Error::ShapeMismatch {
            detail: format!("expected a 4×4 idempotent, got {}×{}", p.rows, p.cols),
        });
    }
    let perm = [0usize, 2, 1, 3];
    let q = p.permute_conjugate(&perm)?;
    // off-diagonal 2×2 blocks must vanish and the lower-right block must be
    // the constant rank-one projection diag(1, 0)
    for i in 0..2 {
        for j in 2..4 {
            if !q.get(i, j).is_zero() || !q.get(j, i).is_zero() {
                return Err(Error::ShapeMismatch {
                    detail: "idempotent is not in the expected block form".into(),
                });
            }
        }
    }
    let unit = AlgebraEntry::unit_like(q.get(2, 2));
    if q.get(2, 2) != &unit
        || !q.get(2, 3).is_zero()
        || !q.get(3, 2).is_zero()
        || !q.get(3, 3).is_zero()
    {
        return Err(Error::ShapeMismatch {
            detail: "lower-right block is not the stripped rank-one summand".into(),
        });
    }
    Ok((q.submatrix(0..2, 0..2), 1))
}
