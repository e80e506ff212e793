//! Hopf structure on circle algebras, gauge isomorphisms between diagonal
//! and rightmost U(1)-coactions, and cotensor membership.

pub mod suq;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::word::{Factor, FactorWord, Signature, Word};

/// Which piece of the circle Hopf structure to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfOp {
    Coproduct,
    Counit,
    Antipode,
}

fn require_circle_only(x: &Element) -> Result<()> {
    if x.signature.0.iter().any(|f| *f != Factor::Circle) {
        return Err(Error::FactorKindMismatch { index: 0, expected: "Circle" });
    }
    Ok(())
}

/// Hopf operations on a circle-only element. Basis words are group-like:
/// `Δ(w) = w⊗w`, `ε(w) = 1`, `S(w)` negates every exponent.
pub fn circle_hopf(x: &Element, op: HopfOp) -> Result<Element> {
    require_circle_only(x)?;
    let n = x.signature.len();
    match op {
        HopfOp::Coproduct => {
            let mut out = Element::zero(Signature::circle(2 * n));
            for (w, c) in &x.terms {
                out.add_term(w.concat(w), c.clone());
            }
            Ok(out)
        }
        HopfOp::Counit => {
            let mut out = Element::zero(Signature::scalars());
            for (_, c) in &x.terms {
                out.add_term(Word(vec![]), c.clone());
            }
            Ok(out)
        }
        HopfOp::Antipode => Ok(circle_antipode(x)),
    }
}

/// Antipode on every circle factor (other factors are not allowed).
pub fn circle_antipode(x: &Element) -> Element {
    let mut out = Element::zero(x.signature.clone());
    for (w, c) in &x.terms {
        let fw = w
            .0
            .iter()
            .map(|f| match f {
                FactorWord::C(k) => FactorWord::C(-k),
                other => *other,
            })
            .collect();
        out.add_term(Word(fw), c.clone());
    }
    out
}

/// Antipode applied to a single circle factor: `u^k ↦ u^{−k}` at `factor`.
pub fn antipode_factor(x: &Element, factor: usize) -> Result<Element> {
    match x.signature.0.get(factor) {
        Some(Factor::Circle) => {}
        _ => return Err(Error::FactorKindMismatch { index: factor, expected: "Circle" }),
    }
    let mut out = Element::zero(x.signature.clone());
    for (w, c) in &x.terms {
        let mut fw = w.0.clone();
        if let FactorWord::C(k) = fw[factor] {
            fw[factor] = FactorWord::C(-k);
        }
        out.add_term(Word(fw), c.clone());
    }
    Ok(out)
}

fn require_trailing_circle(x: &Element) -> Result<()> {
    match x.signature.0.last() {
        Some(Factor::Circle) => Ok(()),
        _ => Err(Error::FactorKindMismatch {
            index: x.signature.len().saturating_sub(1),
            expected: "trailing Circle",
        }),
    }
}

/// Gauge isomorphism `a⊗h ↦ a₍₀₎⊗a₍₁₎h`: pushes the diagonal U(1)-weight of
/// the leading factors into the trailing circle factor.
pub fn gauge(x: &Element) -> Result<Element> {
    require_trailing_circle(x)?;
    let mut out = Element::zero(x.signature.clone());
    for (w, c) in &x.terms {
        let mut fw = w.0.clone();
        let head_weight: i64 = fw[..fw.len() - 1].iter().map(FactorWord::weight).sum();
        if let FactorWord::C(k) = fw[fw.len() - 1] {
            let last = fw.len() - 1;
            fw[last] = FactorWord::C(k + head_weight);
        }
        out.add_term(Word(fw), c.clone());
    }
    Ok(out)
}

/// Inverse gauge isomorphism `a⊗h ↦ a₍₀₎⊗S(a₍₁₎)h`.
pub fn gauge_inv(x: &Element) -> Result<Element> {
    require_trailing_circle(x)?;
    let mut out = Element::zero(x.signature.clone());
    for (w, c) in &x.terms {
        let mut fw = w.0.clone();
        let head_weight: i64 = fw[..fw.len() - 1].iter().map(FactorWord::weight).sum();
        if let FactorWord::C(k) = fw[fw.len() - 1] {
            let last = fw.len() - 1;
            fw[last] = FactorWord::C(k - head_weight);
        }
        out.add_term(Word(fw), c.clone());
    }
    Ok(out)
}

/// Cotensor membership for a split `M = factors[..split]`, `N = factors[split..]`:
/// true iff `(ρ_R⊗id)(x) = (id⊗ρ_L)(x)` where both coactions insert a circle
/// factor at the split carrying the diagonal weight of their side (the fixed
/// convention: a left comodule of weight k has coaction `v ↦ u^k⊗v`).
pub fn cotensor_member(x: &Element, split: usize, tol: f64) -> Result<bool> {
    if split > x.signature.len() {
        return Err(Error::ShapeMismatch {
            detail: format!("split {split} exceeds arity {}", x.signature.len()),
        });
    }
    let sig = x.signature.insert(split, Factor::Circle);
    let mut lhs = Element::zero(sig.clone());
    let mut rhs = Element::zero(sig);
    for (w, c) in &x.terms {
        let left_weight: i64 = w.0[..split].iter().map(FactorWord::weight).sum();
        let right_weight: i64 = w.0[split..].iter().map(FactorWord::weight).sum();
        let mut lw = w.0.clone();
        lw.insert(split, FactorWord::C(left_weight));
        lhs.add_term(Word(lw), c.clone());
        let mut rw = w.0.clone();
        rw.insert(split, FactorWord::C(right_weight));
        rhs.add_term(Word(rw), c.clone());
    }
    Ok(lhs.max_coeff_defect(&rhs) <= tol)
}
