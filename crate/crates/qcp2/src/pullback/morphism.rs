//! The named morphisms between registered diagrams, defined on basis words
//! and extended linearly, plus the combinators used to assemble them.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf;
use crate::pullback::{AlgValue, DiagramId};
use crate::word::{Factor, FactorWord, Signature, Word};

/// A map between algebra values. Word-level variants act on flat elements;
/// `Pair`, `Pr1`, `Pr2` act on pullback values; `Compose` chains maps.
#[derive(Clone, Debug)]
pub enum Morphism {
    Identity,
    /// Symbol map on the given Toeplitz factor.
    Symbol { factor: usize },
    /// Circle antipode on the given factor: `u^k ↦ u^{−k}`.
    AntipodeFactor { factor: usize },
    /// Diagonal-to-rightmost gauge on the trailing circle factor.
    Gauge,
    GaugeInv,
    /// Diagonal coaction: append a circle factor carrying the weight.
    Coaction,
    /// Rightmost coaction: ungauge, then append a circle factor carrying the
    /// original trailing exponent (`s ↦ g⁻¹(s₍₀₎)⊗s₍₁₎` on one component).
    RCoact,
    AppendUnit { kind: Factor },
    InsertUnit { pos: usize, kind: Factor },
    Permute { perm: Vec<usize> },
    /// Embed a scalar (empty-signature element) as a multiple of the unit.
    ScalarTo { signature: Signature },
    /// `v⊗t ↦ S(v t⁽¹⁾)⊗t⁽⁰⁾` on C(S¹)⊗T.
    Psi01,
    /// `v⊗t ↦ t⁽⁰⁾⊗S(v t⁽¹⁾)` : C(S¹)⊗T → T⊗C(S¹).
    Psi02,
    /// `t⊗v ↦ t⁽⁰⁾⊗S(t⁽¹⁾v)` on T⊗C(S¹).
    Psi12,
    /// `s⊗v ↦ S(s v⁽²⁾)⊗v⁽¹⁾` on C(S¹)⊗C(S¹).
    PhiTilde,
    /// `s⊗v ↦ S(s)v⁽¹⁾⊗v⁽²⁾` on C(S¹)⊗C(S¹).
    Psi,
    /// `t⊗t′ ↦ S(σ(t)t′⁽¹⁾)⊗t′⁽⁰⁾` : T⊗T → C(S¹)⊗T.
    AlphaTilde,
    /// `t⊗t′⊗u ↦ u⁽¹⁾S(σ(t)t′⁽¹⁾)⊗t′⁽⁰⁾⊗u⁽²⁾` : T⊗T⊗C(S¹) → C(S¹)⊗T⊗C(S¹).
    Alpha,
    /// `t⊗t′ ↦ (t′⁽⁰⁾⊗t′⁽¹⁾σ(t), t⁽⁰⁾⊗t⁽¹⁾σ(t′))` into the twisted
    /// two-halves presentation of the Heegaard 3-sphere.
    GammaHat,
    /// `t₁⊗t₂ ↦ (t₁⊗σ(t₂), σ(t₁)⊗t₂)`.
    Nu,
    /// ν on the first two factors, identity on a trailing circle factor.
    NuTensorId,
    /// `(t⊗u, v) ↦ (t⊗u, v⊗1_T)`.
    OmegaSmall,
    /// Rightmost-coaction gauge on both components of the SU_q(2)
    /// presentation.
    Beta,
    /// `(t, c) ↦ (t⁽⁰⁾⊗S(t⁽¹⁾), c·1)`.
    BetaTilde,
    /// Gauged `id⊗σ` : (C(S³_H)⊗T)ᴿ → (C(S³_H)⊗C(S¹))ᴿ, componentwise
    /// `a⊗b⊗u^k ↦ a⊗u^{k−w(a)−w(b)}⊗u^k`.
    Chi,
    /// Gauged `ω⊗1_T` : `(t⊗u, v) ↦ (t⊗1_T⊗u, 1_T⊗1_T⊗v)`.
    OmegaCap,
    /// `(t, c) ↦ (t⊗1_T, c·1⊗1)`.
    OmegaCapTilde,
    /// The induced map P₅ → C(S⁵_H): componentwise `(ω⊗1_T, pr₂⊗id)`.
    FMap,
    /// Componentwise circle antipode P₂ → C(S³_H) (twisted presentation).
    H,
    HInv,
    Pr1,
    Pr2,
    /// Apply `first`/`second` to the components, repackage over `target`.
    Pair {
        first: Box<Morphism>,
        second: Box<Morphism>,
        target: DiagramId,
    },
    Compose(Vec<Morphism>),
}

impl Morphism {
    pub fn apply(&self, x: &AlgValue) -> Result<AlgValue> {
        match self {
            Morphism::Identity => Ok(x.clone()),
            Morphism::Pr1 => Ok(x.as_pair()?.left.clone()),
            Morphism::Pr2 => Ok(x.as_pair()?.right.clone()),
            Morphism::Pair { first, second, target } => {
                let p = x.as_pair()?;
                Ok(AlgValue::pair(*target, first.apply(&p.left)?, second.apply(&p.right)?))
            }
            Morphism::Compose(steps) => {
                let mut v = x.clone();
                for m in steps {
                    v = m.apply(&v)?;
                }
                Ok(v)
            }
            Morphism::OmegaSmall => {
                let p = x.as_pair()?;
                let v = p.right.as_flat()?;
                Ok(AlgValue::pair(
                    DiagramId::S3H,
                    p.left.clone(),
                    AlgValue::flat(v.append_unit(Factor::Toeplitz)),
                ))
            }
            Morphism::Beta => {
                let p = x.as_pair()?;
                let l = rcoact(p.left.as_flat()?)?;
                let r = rcoact(p.right.as_flat()?)?;
                Ok(AlgValue::pair(DiagramId::SUq2xCR, AlgValue::flat(l), AlgValue::flat(r)))
            }
            Morphism::BetaTilde => {
                let p = x.as_pair()?;
                let t = p.left.as_flat()?;
                let c = p.right.as_flat()?;
                let first = hopf::antipode_factor(&t.coaction(), t.signature.len())?;
                let second = scalar_to(c, &Signature::circle(1))?;
                Ok(AlgValue::pair(
                    DiagramId::SUq2Cstar,
                    AlgValue::flat(first),
                    AlgValue::flat(second),
                ))
            }
            Morphism::Chi => {
                let p = x.as_pair()?;
                let l = chi_component(p.left.as_flat()?)?;
                let r = chi_component(p.right.as_flat()?)?;
                Ok(AlgValue::pair(DiagramId::S3HxCR, AlgValue::flat(l), AlgValue::flat(r)))
            }
            Morphism::OmegaCap => {
                let p = x.as_pair()?;
                let l = p.left.as_flat()?.insert_unit(1, Factor::Toeplitz);
                let r = p
                    .right
                    .as_flat()?
                    .insert_unit(0, Factor::Toeplitz)
                    .insert_unit(0, Factor::Toeplitz);
                Ok(AlgValue::pair(DiagramId::S3HxTR, AlgValue::flat(l), AlgValue::flat(r)))
            }
            Morphism::OmegaCapTilde => {
                let p = x.as_pair()?;
                let l = p.left.as_flat()?.append_unit(Factor::Toeplitz);
                let r = scalar_to(p.right.as_flat()?, &Signature::toeplitz(2))?;
                Ok(AlgValue::pair(DiagramId::P1, AlgValue::flat(l), AlgValue::flat(r)))
            }
            Morphism::FMap => {
                let p = x.as_pair()?;
                let s3h = Morphism::OmegaSmall.apply(&p.left)?;
                let s3h = s3h.as_pair()?;
                let left = AlgValue::pair(
                    DiagramId::S3HxT,
                    AlgValue::flat(s3h.left.as_flat()?.append_unit(Factor::Toeplitz)),
                    AlgValue::flat(s3h.right.as_flat()?.append_unit(Factor::Toeplitz)),
                );
                let right = p.right.as_pair()?.right.clone();
                Ok(AlgValue::pair(DiagramId::S5H, left, right))
            }
            Morphism::H => {
                let p = x.as_pair()?;
                Ok(AlgValue::pair(
                    DiagramId::S3HHeegaard,
                    AlgValue::flat(hopf::antipode_factor(p.left.as_flat()?, 1)?),
                    AlgValue::flat(hopf::antipode_factor(p.right.as_flat()?, 1)?),
                ))
            }
            Morphism::HInv => {
                let p = x.as_pair()?;
                Ok(AlgValue::pair(
                    DiagramId::P2,
                    AlgValue::flat(hopf::antipode_factor(p.left.as_flat()?, 1)?),
                    AlgValue::flat(hopf::antipode_factor(p.right.as_flat()?, 1)?),
                ))
            }
            Morphism::GammaHat => {
                let e = x.as_flat()?;
                let (l, r) = gamma_hat(e)?;
                Ok(AlgValue::pair(
                    DiagramId::S3HHeegaard,
                    AlgValue::flat(l),
                    AlgValue::flat(r),
                ))
            }
            Morphism::Nu => {
                let e = x.as_flat()?;
                let (l, r) = nu(e)?;
                Ok(AlgValue::pair(DiagramId::S3H, AlgValue::flat(l), AlgValue::flat(r)))
            }
            Morphism::NuTensorId => {
                let e = x.as_flat()?;
                let (l, r) = nu_tensor_id(e)?;
                Ok(AlgValue::pair(DiagramId::S3HxC, AlgValue::flat(l), AlgValue::flat(r)))
            }
            // the remaining variants act on flat elements
            _ => Ok(AlgValue::flat(self.apply_flat(x.as_flat()?)?)),
        }
    }

    /// Word-level action on a flat element.
    pub fn apply_flat(&self, e: &Element) -> Result<Element> {
        match self {
            Morphism::Identity => Ok(e.clone()),
            Morphism::Symbol { factor } => e.symbol_map(*factor),
            Morphism::AntipodeFactor { factor } => hopf::antipode_factor(e, *factor),
            Morphism::Gauge => hopf::gauge(e),
            Morphism::GaugeInv => hopf::gauge_inv(e),
            Morphism::Coaction => Ok(e.coaction()),
            Morphism::RCoact => rcoact(e),
            Morphism::AppendUnit { kind } => Ok(e.append_unit(*kind)),
            Morphism::InsertUnit { pos, kind } => Ok(e.insert_unit(*pos, *kind)),
            Morphism::Permute { perm } => Ok(e.permute_factors(perm)),
            Morphism::ScalarTo { signature } => scalar_to(e, signature),
            Morphism::Psi01 => word_map(e, &[Factor::Circle, Factor::Toeplitz], |w| {
                let (k, t) = (w[0].weight(), w[1]);
                vec![FactorWord::C(-k - t.weight()), t]
            }),
            Morphism::Psi02 => word_map(e, &[Factor::Circle, Factor::Toeplitz], |w| {
                let (k, t) = (w[0].weight(), w[1]);
                vec![t, FactorWord::C(-k - t.weight())]
            }),
            Morphism::Psi12 => word_map(e, &[Factor::Toeplitz, Factor::Circle], |w| {
                let (t, k) = (w[0], w[1].weight());
                vec![t, FactorWord::C(-t.weight() - k)]
            }),
            Morphism::PhiTilde => word_map(e, &[Factor::Circle, Factor::Circle], |w| {
                let (j, k) = (w[0].weight(), w[1].weight());
                vec![FactorWord::C(-j - k), FactorWord::C(k)]
            }),
            Morphism::Psi => word_map(e, &[Factor::Circle, Factor::Circle], |w| {
                let (j, k) = (w[0].weight(), w[1].weight());
                vec![FactorWord::C(k - j), FactorWord::C(k)]
            }),
            Morphism::AlphaTilde => word_map(e, &[Factor::Toeplitz, Factor::Toeplitz], |w| {
                let (t, t2) = (w[0], w[1]);
                vec![FactorWord::C(-t.weight() - t2.weight()), t2]
            }),
            Morphism::Alpha => {
                word_map(e, &[Factor::Toeplitz, Factor::Toeplitz, Factor::Circle], |w| {
                    let (t, t2, k) = (w[0], w[1], w[2].weight());
                    vec![FactorWord::C(k - t.weight() - t2.weight()), t2, FactorWord::C(k)]
                })
            }
            other => Err(Error::SourceMismatch {
                morphism: format!("{other:?}"),
                detail: "expects a pullback value, got a flat element".into(),
            }),
        }
    }
}

fn word_map(
    e: &Element,
    expected: &[Factor],
    f: impl Fn(&[FactorWord]) -> Vec<FactorWord>,
) -> Result<Element> {
    if e.signature.0 != expected {
        return Err(Error::SignatureMismatch {
            expected: Signature::of(expected).to_string(),
            found: e.signature.to_string(),
        });
    }
    let mut out: Option<Element> = None;
    for (w, c) in &e.terms {
        let nw = Word(f(&w.0));
        let sig = Signature(nw.0.iter().map(|fw| fw.kind()).collect());
        let out = out.get_or_insert_with(|| Element::zero(sig));
        out.add_term(nw, c.clone());
    }
    Ok(out.unwrap_or_else(|| {
        // map the identity word to learn the target signature of empties
        let id_word: Vec<FactorWord> = expected
            .iter()
            .map(|k| match k {
                Factor::Toeplitz => FactorWord::T(0, 0),
                Factor::Circle => FactorWord::C(0),
            })
            .collect();
        let nw = f(&id_word);
        Element::zero(Signature(nw.iter().map(|fw| fw.kind()).collect()))
    }))
}

/// Rightmost coaction on a component with a trailing circle factor:
/// ungauge, then append a circle factor with the original trailing exponent.
fn rcoact(e: &Element) -> Result<Element> {
    match e.signature.0.last() {
        Some(Factor::Circle) => {}
        _ => {
            return Err(Error::FactorKindMismatch {
                index: e.signature.len().saturating_sub(1),
                expected: "trailing Circle",
            })
        }
    }
    let mut out = Element::zero(e.signature.append(Factor::Circle));
    for (w, c) in &e.terms {
        let mut fw = w.0.clone();
        let last = fw.len() - 1;
        let j = match fw[last] {
            FactorWord::C(k) => k,
            _ => unreachable!(),
        };
        let head_weight: i64 = fw[..last].iter().map(FactorWord::weight).sum();
        fw[last] = FactorWord::C(j - head_weight);
        fw.push(FactorWord::C(j));
        out.add_term(Word(fw), c.clone());
    }
    Ok(out)
}

fn scalar_to(e: &Element, target: &Signature) -> Result<Element> {
    if !e.signature.is_empty() {
        return Err(Error::SignatureMismatch {
            expected: "C".into(),
            found: e.signature.to_string(),
        });
    }
    let mut out = Element::zero(target.clone());
    for (_, c) in &e.terms {
        out.add_term(target.identity_word(), c.clone());
    }
    Ok(out)
}

fn gamma_hat(e: &Element) -> Result<(Element, Element)> {
    if e.signature != Signature::toeplitz(2) {
        return Err(Error::SignatureMismatch {
            expected: "T⊗T".into(),
            found: e.signature.to_string(),
        });
    }
    let sig = Signature::of(&[Factor::Toeplitz, Factor::Circle]);
    let mut l = Element::zero(sig.clone());
    let mut r = Element::zero(sig);
    for (w, c) in &e.terms {
        let (t, t2) = (w.0[0], w.0[1]);
        let total = t.weight() + t2.weight();
        l.add_term(Word(vec![t2, FactorWord::C(total)]), c.clone());
        r.add_term(Word(vec![t, FactorWord::C(total)]), c.clone());
    }
    Ok((l, r))
}

fn nu(e: &Element) -> Result<(Element, Element)> {
    if e.signature != Signature::toeplitz(2) {
        return Err(Error::SignatureMismatch {
            expected: "T⊗T".into(),
            found: e.signature.to_string(),
        });
    }
    let mut l = Element::zero(Signature::of(&[Factor::Toeplitz, Factor::Circle]));
    let mut r = Element::zero(Signature::of(&[Factor::Circle, Factor::Toeplitz]));
    for (w, c) in &e.terms {
        let (t1, t2) = (w.0[0], w.0[1]);
        l.add_term(Word(vec![t1, FactorWord::C(t2.weight())]), c.clone());
        r.add_term(Word(vec![FactorWord::C(t1.weight()), t2]), c.clone());
    }
    Ok((l, r))
}

fn nu_tensor_id(e: &Element) -> Result<(Element, Element)> {
    let expected = Signature::of(&[Factor::Toeplitz, Factor::Toeplitz, Factor::Circle]);
    if e.signature != expected {
        return Err(Error::SignatureMismatch {
            expected: expected.to_string(),
            found: e.signature.to_string(),
        });
    }
    let mut l = Element::zero(Signature::of(&[Factor::Toeplitz, Factor::Circle, Factor::Circle]));
    let mut r = Element::zero(Signature::of(&[Factor::Circle, Factor::Toeplitz, Factor::Circle]));
    for (w, c) in &e.terms {
        let (t1, t2, k) = (w.0[0], w.0[1], w.0[2]);
        l.add_term(Word(vec![t1, FactorWord::C(t2.weight()), k]), c.clone());
        r.add_term(Word(vec![FactorWord::C(t1.weight()), t2, k]), c.clone());
    }
    Ok((l, r))
}

fn chi_component(e: &Element) -> Result<Element> {
    let expected = Signature::of(&[Factor::Toeplitz, Factor::Toeplitz, Factor::Circle]);
    if e.signature != expected {
        return Err(Error::SignatureMismatch {
            expected: expected.to_string(),
            found: e.signature.to_string(),
        });
    }
    let mut out = Element::zero(Signature::of(&[
        Factor::Toeplitz,
        Factor::Circle,
        Factor::Circle,
    ]));
    for (w, c) in &e.terms {
        let (a, b, k) = (w.0[0], w.0[1], w.0[2].weight());
        out.add_term(
            Word(vec![a, FactorWord::C(k - a.weight() - b.weight()), FactorWord::C(k)]),
            c.clone(),
        );
    }
    Ok(out)
}
