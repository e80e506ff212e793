//! The homotopy that deforms the clutching data into elementary form: the
//! circle-valued path ν_t, its closed-form Fourier coefficients, the lifted
//! Toeplitz path x_t, the invertible-matrix family Ṽ_t, and the final
//! elementary projection.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::AlgebraMatrix;
use crate::milnor;
use crate::pullback::{pb_compat, registry, AlgValue, DiagramId};
use crate::word::Signature;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Configuration for homotopy scans.
#[derive(Clone, Debug, Serialize)]
pub struct HomotopyConfig {
    /// Fourier truncation order (modes −M..M).
    pub fourier_order: usize,
    /// Number of uniform grid points on [0,1] (endpoints included).
    pub t_steps: usize,
    /// Switch to Taylor evaluation of (e^z−1)/z below this |z|.
    pub singularity_threshold: f64,
}

impl Default for HomotopyConfig {
    fn default() -> Self {
        HomotopyConfig { fourier_order: 32, t_steps: 33, singularity_threshold: 1e-4 }
    }
}

impl HomotopyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.fourier_order < 4 {
            return Err(Error::BadConfig("fourier order must be at least 4".into()));
        }
        if self.t_steps < 2 {
            return Err(Error::BadConfig("grid must include both endpoints".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.t_steps;
        (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
    }
}

/// `e^{2πi·turns}` with the fractional part reduced exactly, so that integer,
/// half-integer, and quarter-integer turns evaluate without roundoff.
pub fn unit_phase(turns: f64) -> Complex64 {
    let r = turns - turns.round();
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if r == 0.5 || r == -0.5 {
        Complex64::new(-1.0, 0.0)
    } else if r == 0.25 {
        Complex64::new(0.0, 1.0)
    } else if r == -0.25 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::from_polar(1.0, TAU * r)
    }
}

/// Indicator of `[0, (1+t)/2]` (mod 1).
pub fn chi_t(s: f64, t: f64) -> f64 {
    let s = s.rem_euclid(1.0);
    if s <= (1.0 + t) / 2.0 {
        1.0
    } else {
        0.0
    }
}

/// `ν_t(s) = exp(−4πi χ_t(s) s / (1+t))`; ν₀ is the loop appearing in the
/// exponential of the lifted Loring projection.
pub fn nu_t(s: f64, t: f64) -> Complex64 {
    let s = s.rem_euclid(1.0);
    unit_phase(-2.0 * chi_t(s, t) * s / (1.0 + t))
}

fn expm1_over_z(z: Complex64, threshold: f64) -> Complex64 {
    if z.norm() < threshold {
        // 4-term Taylor expansion of (e^z − 1)/z
        Complex64::new(1.0, 0.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    } else {
        ((z.exp()) - Complex64::new(1.0, 0.0)) / z
    }
}

/// Closed-form Fourier coefficient `c_k(t) = ∫₀¹ e^{−2πiks} ν_t(s) ds`.
pub fn fourier_coeff(k: i64, t: f64, threshold: f64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::BadConfig(format!("t = {t} outside [0,1]")));
    }
    let kf = k as f64;
    Ok(match k {
        0 => Complex64::new((1.0 - t) / 2.0, 0.0),
        -2 => {
            // ½·(e^{2πit}−1)/(2πit), continuously extended by ½ at t = 0
            let z = Complex64::new(0.0, TAU * t);
            0.5 * expm1_over_z(z, threshold)
        }
        -1 => {
            // (e^{πi(t−1)}−1)/(πi(t−1)), continuously extended by 1 at t = 1
            let z = Complex64::new(0.0, (TAU / 2.0) * (t - 1.0));
            expm1_over_z(z, threshold)
        }
        _ => {
            let phase = unit_phase(-kf * (1.0 + t) / 2.0);
            let denom = kf * (kf * (1.0 + t) / 2.0 + 1.0);
            Complex64::new(0.0, 1.0 / TAU) * (Complex64::new(1.0, 0.0) - phase) / denom
        }
    })
}

/// The lifted path `x_t = c₀(t) + Σ_{k>0} c_k(t)S^k + Σ_{k>0} c_{−k}(t)(S*)^k`
/// truncated at Fourier order `m`.
pub fn x_t(t: f64, m: usize, threshold: f64) -> Result<Element> {
    let mut coeffs = Vec::with_capacity(2 * m + 1);
    for k in -(m as i64)..=(m as i64) {
        coeffs.push((k, fourier_coeff(k, t, threshold)?));
    }
    Ok(Element::toeplitz_series(&coeffs))
}

pub fn y_t(t: f64, m: usize, threshold: f64) -> Result<Element> {
    Ok(x_t(t, m, threshold)?.adjoint())
}

/// The exact endpoint of the lifted path: `x₁ = S*` (all other coefficients
/// vanish identically).
pub fn x_one_exact() -> Element {
    Element::s_star()
}

/// `Ṽ` and `Ṽ⁻¹` assembled from a lift pair (x, y): the 2×2 clutching
/// matrices of `c̃ = SS*⊗1 + (1−SS*)⊗y`, `d̃ = SS*⊗1 + (1−SS*)⊗x` over T⊗T.
pub fn v_tilde_from_xy(
    x: &Element,
    y: &Element,
) -> Result<(AlgebraMatrix<Element>, AlgebraMatrix<Element>)> {
    if x.signature != Signature::toeplitz(1) || y.signature != Signature::toeplitz(1) {
        return Err(Error::SignatureMismatch {
            expected: "T".into(),
            found: format!("{} / {}", x.signature, y.signature),
        });
    }
    let range = Element::toeplitz(1, 1);
    let corner = Element::corner_projection();
    let one = Element::one(Signature::toeplitz(1));
    let c = range.tensor(&one) + corner.tensor(y);
    let d = range.tensor(&one) + corner.tensor(x);
    let c = AlgebraMatrix::from_rows(vec![vec![c]]);
    let d = AlgebraMatrix::from_rows(vec![vec![d]]);
    let (v, v_inv) = milnor::clutching_matrices(&c, &d)?;
    Ok((v, v_inv))
}

/// The invertible family `Ṽ_t` with its inverse, at Fourier order `m`.
pub fn v_tilde_family(
    t: f64,
    m: usize,
    threshold: f64,
) -> Result<(AlgebraMatrix<Element>, AlgebraMatrix<Element>)> {
    let x = x_t(t, m, threshold)?;
    let y = x.adjoint();
    v_tilde_from_xy(&x, &y)
}

/// The final elementary projection
/// `p = (1, SS*⊗1 + (1−SS*)⊗SS*) = (1,1) − (0, (1−SS*)⊗(1−SS*))`
/// as an exact element of the projective-plane pullback.
pub fn final_projection() -> AlgValue {
    let second = Element::toeplitz(1, 1).tensor(&Element::one(Signature::toeplitz(1)))
        + Element::corner_projection().tensor(&Element::toeplitz(1, 1));
    let p1_unit = registry().diagram(DiagramId::P1).unit();
    AlgValue::pair(DiagramId::CP2T, p1_unit, AlgValue::flat(second))
}

/// The complement `1 − p = (0, (1−SS*)⊗(1−SS*))`.
pub fn final_projection_complement() -> AlgValue {
    let d = registry().diagram(DiagramId::CP2T);
    d.unit().try_sub(&final_projection()).expect("unit and p share the diagram")
}

/// `(6/π)·Σ_{|k|>M} 1/k²`: the ℓ¹ tail of the coefficient bound
/// `|c_k(t)| ≤ 6/(πk²)`. Bounded by `12/(πM)`.
pub fn tail_bound(m: usize) -> f64 {
    assert!(m >= 1);
    let cutoff: usize = 1_000_000.max(2 * m);
    let mut sum = 0.0;
    for k in (m + 1)..=cutoff {
        sum += 1.0 / (k as f64 * k as f64);
    }
    // Euler–Maclaurin remainder for Σ_{k>cutoff} 1/k²
    let kf = cutoff as f64;
    sum += 1.0 / kf - 1.0 / (2.0 * kf * kf) + 1.0 / (6.0 * kf * kf * kf);
    (6.0 / std::f64::consts::PI) * 2.0 * sum
}

/// One grid point of a homotopy scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanPoint {
    pub t: f64,
    /// Largest coefficient of `Ṽ_t·Ṽ_t⁻¹ − I` (float roundoff of the ring
    /// identity).
    pub max_coeff_defect: f64,
    /// Compatibility defect of the idempotent `p̃_t` in the projective-plane
    /// pullback.
    pub compat_defect: f64,
    pub tail_bound: f64,
}

/// Builds `p̃_t = (diag(1,0), Ṽ_t·diag(1,0)·Ṽ_t⁻¹)` over the projective
/// plane and reports its ring-identity roundoff and compatibility defect.
pub fn scan_point(t: f64, cfg: &HomotopyConfig) -> Result<ScanPoint> {
    let m = cfg.fourier_order;
    let (v, v_inv) = v_tilde_family(t, m, cfg.singularity_threshold)?;
    let id = AlgebraMatrix::identity(v.get(0, 0), 2);
    let prod = v.try_mul(&v_inv)?;
    let max_coeff_defect = prod
        .max_coeff_defect(&id)?
        .max(v_inv.try_mul(&v)?.max_coeff_defect(&id)?);

    let p_tilde = idempotent_from_v(&v, &v_inv)?;
    let mut compat_defect: f64 = 0.0;
    for e in p_tilde.entries() {
        let (_, rep) = pb_compat(e, None)?;
        compat_defect = compat_defect.max(rep.defect);
    }
    Ok(ScanPoint { t, max_coeff_defect, compat_defect, tail_bound: tail_bound(m) })
}

/// `p̃ = (E, V·E·V⁻¹)` over the projective-plane pullback, with `E = diag(1,0)`.
pub fn idempotent_from_v(
    v: &AlgebraMatrix<Element>,
    v_inv: &AlgebraMatrix<Element>,
) -> Result<AlgebraMatrix<AlgValue>> {
    let proto = v.get(0, 0);
    let n = v.rows / 2;
    let e = AlgebraMatrix::from_fn(v.rows, v.cols, |i, j| {
        if i == j && i < n {
            crate::matrix::AlgebraEntry::unit_like(proto)
        } else {
            crate::matrix::AlgebraEntry::zero_like(proto)
        }
    });
    let second = v.try_mul(&e)?.try_mul(v_inv)?;
    let p1 = registry().diagram(DiagramId::P1);
    let first_unit = p1.unit();
    let first_zero = p1.zero();
    let mut out = AlgebraMatrix::zero(
        &AlgValue::pair(DiagramId::CP2T, first_zero.clone(), AlgValue::flat(
            crate::matrix::AlgebraEntry::zero_like(proto),
        )),
        v.rows,
        v.cols,
    );
    for i in 0..v.rows {
        for j in 0..v.cols {
            let first = if i == j && i < n { first_unit.clone() } else { first_zero.clone() };
            out.set(
                i,
                j,
                AlgValue::pair(DiagramId::CP2T, first, AlgValue::flat(second.get(i, j).clone())),
            );
        }
    }
    Ok(out)
}

/// Run the scan over the configured grid.
pub fn scan(cfg: &HomotopyConfig) -> Result<Vec<ScanPoint>> {
    cfg.validate()?;
    cfg.grid().iter().map(|&t| scan_point(t, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::word::{FactorWord, Word};

    const THR: f64 = 1e-4;

    #[test]
    fn coefficient_closed_forms() {
        // c₀(0.5) = 0.25
        let c0 = fourier_coeff(0, 0.5, THR).unwrap();
        assert_eq!(c0, Complex64::new(0.25, 0.0));
        // c₋₂(0) = 0.5 exactly at the continuity point
        let cm2 = fourier_coeff(-2, 0.0, THR).unwrap();
        assert_eq!(cm2, Complex64::new(0.5, 0.0));
        // c₁(0) = 2i/(3π), frozen from the quadrature oracle
        let c1 = fourier_coeff(1, 0.0, THR).unwrap();
        let expected = Complex64::new(0.0, 2.0 / (3.0 * std::f64::consts::PI));
        assert!((c1 - expected).norm() < 1e-15);
        // out-of-range t rejected
        assert!(fourier_coeff(1, 1.5, THR).is_err());
    }

    #[test]
    fn taylor_branch_is_continuous() {
        // the generic/special formulas and their Taylor fallbacks agree
        // across the switching threshold
        for (k, t0) in [(-2i64, 0.0f64), (-1, 1.0)] {
            let near = 1e-5;
            let far = 1e-3;
            let a = fourier_coeff(k, (t0 - near).abs(), THR).unwrap();
            let b = fourier_coeff(k, (t0 - far).abs(), THR).unwrap();
            assert!((a - b).norm() < 1e-2);
            let at = fourier_coeff(k, t0, THR).unwrap();
            assert!((a - at).norm() < 1e-4);
        }
    }

    #[test]
    fn nu_examples() {
        // χ_t = 0 branch
        assert_eq!(nu_t(0.9, 0.5), Complex64::new(1.0, 0.0));
        // ν₀(1/4) = e^{−πi} = −1 exactly
        assert_eq!(nu_t(0.25, 0.0), Complex64::new(-1.0, 0.0));
        // ν₁(s) = e^{−2πis} for all s
        for s in [0.1, 0.3, 0.77] {
            assert!((nu_t(s, 1.0) - unit_phase(-s)).norm() < 1e-15);
        }
        // |ν_t| = 1
        for s in [0.0, 0.2, 0.5, 0.9] {
            for t in [0.0, 0.3, 1.0] {
                assert!((nu_t(s, t).norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn x_one_is_s_star_exactly() {
        let x1 = x_t(1.0, 32, THR).unwrap();
        let mut expected = Element::zero(Signature::toeplitz(1));
        expected.add_term(Word(vec![FactorWord::T(0, 1)]), Scalar::from_f64(1.0));
        assert_eq!(x1, expected);
        assert_eq!(x_one_exact(), Element::s_star());
    }

    #[test]
    fn x_zero_constant_coefficient() {
        let x0 = x_t(0.0, 16, THR).unwrap();
        let c = x0.coeff(&Word(vec![FactorWord::T(0, 0)]));
        assert_eq!(c.to_complex(), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn coefficient_bound_holds() {
        for k in 3..=64i64 {
            for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
                for sign in [1, -1] {
                    let c = fourier_coeff(sign * k, t, THR).unwrap();
                    let bound = 6.0 / (std::f64::consts::PI * (k * k) as f64);
                    assert!(
                        c.norm() <= bound + 1e-15,
                        "|c_{}({t})| = {} > {bound}",
                        sign * k,
                        c.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn v_tilde_endpoint_closed_form() {
        let (v1, v1_inv) = v_tilde_from_xy(&Element::s_star(), &Element::s()).unwrap();
        let one = Element::one(Signature::toeplitz(1));
        let range = Element::toeplitz(1, 1);
        let corner = Element::corner_projection();
        // Ṽ₁ = SS*⊗I + (1−SS*)⊗(S  SS*−1; 0  S*)
        assert_eq!(*v1.get(0, 0), range.clone().tensor(&one) + corner.clone().tensor(&Element::s()));
        assert_eq!(
            *v1.get(0, 1),
            corner.clone().tensor(&(Element::toeplitz(1, 1) - one.clone()))
        );
        assert_eq!(*v1.get(1, 0), Element::zero(Signature::toeplitz(2)));
        assert_eq!(
            *v1.get(1, 1),
            range.clone().tensor(&one) + corner.clone().tensor(&Element::s_star())
        );
        // block (2,2) of the (1−SS*) part of Ṽ₁⁻¹ is S
        assert_eq!(
            *v1_inv.get(1, 1),
            range.clone().tensor(&one) + corner.clone().tensor(&Element::s())
        );
        // ring identity, exact
        let id = AlgebraMatrix::identity(v1.get(0, 0), 2);
        assert_eq!(v1.try_mul(&v1_inv).unwrap().max_coeff_defect(&id).unwrap(), 0.0);
        assert_eq!(v1_inv.try_mul(&v1).unwrap().max_coeff_defect(&id).unwrap(), 0.0);
        // Ṽ₁·E·Ṽ₁⁻¹ top-left = SS*⊗1 + (1−SS*)⊗SS*
        let e = AlgebraMatrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 0 { one.clone().tensor(&one) } else { Element::zero(Signature::toeplitz(2)) }
        });
        let conj = v1.try_mul(&e).unwrap().try_mul(&v1_inv).unwrap();
        let expected = range.tensor(&one) + corner.tensor(&Element::toeplitz(1, 1));
        assert_eq!(*conj.get(0, 0), expected);
        assert!(conj.get(0, 1).is_zero());
        assert!(conj.get(1, 0).is_zero());
        assert!(conj.get(1, 1).is_zero());
    }

    #[test]
    fn v_tilde_ring_identity_generic_t() {
        let (v, v_inv) = v_tilde_family(0.37, 32, THR).unwrap();
        let id = AlgebraMatrix::identity(v.get(0, 0), 2);
        let defect = v.try_mul(&v_inv).unwrap().max_coeff_defect(&id).unwrap();
        assert!(defect <= 1e-12, "defect {defect}");
    }

    #[test]
    fn final_projection_is_projection() {
        let p = final_projection();
        let (_, rep) = pb_compat(&p, None).unwrap();
        assert!(rep.exact, "compat defect {}", rep.defect);
        let p2 = p.try_mul(&p).unwrap();
        assert_eq!(p2, p);
        assert_eq!(p.adjoint(), p);
        let q = final_projection_complement();
        let expected_second = Element::corner_projection().tensor(&Element::corner_projection());
        match &q {
            AlgValue::Pair(pv) => {
                assert!(pv.left.is_zero());
                assert_eq!(pv.right, AlgValue::flat(expected_second));
            }
            _ => unreachable!(),
        }
        let (_, rep) = pb_compat(&q, None).unwrap();
        assert!(rep.exact);
    }

    #[test]
    fn tail_bound_properties() {
        // dominated by 12/(πM)
        for m in [4usize, 8, 16, 32, 64, 192] {
            let tb = tail_bound(m);
            assert!(tb <= 12.0 / (std::f64::consts::PI * m as f64));
            assert!(tb > 0.0);
        }
        // monotone decreasing
        assert!(tail_bound(8) < tail_bound(4));
        assert!(tail_bound(64) < tail_bound(32));
        // bound check at k = 5, t = 0.3
        let c5 = fourier_coeff(5, 0.3, THR).unwrap();
        assert!(c5.norm() <= 6.0 / (std::f64::consts::PI * 25.0));
    }

    #[test]
    fn endpoint_coefficients_vanish() {
        for k in -64i64..=64 {
            let c = fourier_coeff(k, 1.0, THR).unwrap();
            let expected = if k == -1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            assert!(
                (c - expected).norm() <= 1e-12,
                "c_{k}(1) = {c} expected {expected}"
            );
        }
    }
}
