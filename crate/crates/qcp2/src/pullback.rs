//! Pullback diagrams of quantum spaces, their elements (trees of compatible
//! pairs), and the registry of concrete diagrams and named morphisms.

pub mod morphism;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::{Factor, FactorWord, Signature};
use morphism::Morphism;
use once_cell::sync::OnceCell;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Identifiers of the registered pullback diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DiagramId {
    /// The standard Podleś sphere: T → C(S¹) ← ℂ.
    S2q,
    /// C(SU_q(2)) glued from T⊗C(S¹) and C(S¹).
    SUq2Cstar,
    /// The Heegaard 3-sphere: T⊗C(S¹) → C(S¹)² ← C(S¹)⊗T.
    S3H,
    /// The same algebra presented with both halves T⊗C(S¹).
    S3HHeegaard,
    /// Middle stage of the iterated projective-plane pullback.
    P2,
    /// Fixed-point half of the projective plane: two copies of T⊗T.
    P1,
    /// The quantum 4-ball.
    B4,
    /// C(S³_H)⊗T presented componentwise.
    S3HxT,
    /// C(S³_H)⊗C(S¹) presented componentwise.
    S3HxC,
    /// C(SU_q(2))⊗C(S¹) presented componentwise.
    SUq2xC,
    /// C(SU_q(2)) with the U(1)-action moved to the circle slots.
    SUq2R,
    /// (C(SU_q(2))⊗C(S¹)) with the rightmost U(1)-action.
    SUq2xCR,
    /// B₄⊗C(S¹) presented componentwise.
    B4xC,
    /// The Heegaard 5-sphere.
    S5H,
    /// The auxiliary 5-sphere built over C(SU_q(2)).
    P5,
    /// (C(S³_H)⊗T) with the U(1)-action moved to the rightmost circle slots.
    S3HxTR,
    /// (C(S³_H)⊗C(S¹)) with the rightmost U(1)-action.
    S3HxCR,
    /// The multipullback quantum complex projective plane.
    CP2T,
}

impl DiagramId {
    pub const ALL: [DiagramId; 18] = [
        DiagramId::S2q,
        DiagramId::SUq2Cstar,
        DiagramId::S3H,
        DiagramId::S3HHeegaard,
        DiagramId::P2,
        DiagramId::P1,
        DiagramId::B4,
        DiagramId::S3HxT,
        DiagramId::S3HxC,
        DiagramId::SUq2xC,
        DiagramId::SUq2R,
        DiagramId::SUq2xCR,
        DiagramId::B4xC,
        DiagramId::S5H,
        DiagramId::P5,
        DiagramId::S3HxTR,
        DiagramId::S3HxCR,
        DiagramId::CP2T,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DiagramId::S2q => "S2q",
            DiagramId::SUq2Cstar => "SUq2-C*",
            DiagramId::S3H => "S3H",
            DiagramId::S3HHeegaard => "S3H-heegaard-presentation",
            DiagramId::P2 => "P2",
            DiagramId::P1 => "P1",
            DiagramId::B4 => "B4",
            DiagramId::S3HxT => "S3HxT",
            DiagramId::S3HxC => "S3HxC",
            DiagramId::SUq2xC => "SUq2xC",
            DiagramId::SUq2R => "SUq2-R",
            DiagramId::SUq2xCR => "SUq2xC-R",
            DiagramId::B4xC => "B4xC",
            DiagramId::S5H => "S5H",
            DiagramId::P5 => "P5",
            DiagramId::S3HxTR => "S3HxT-R",
            DiagramId::S3HxCR => "S3HxC-R",
            DiagramId::CP2T => "CP2T",
        }
    }
}

impl FromStr for DiagramId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DiagramId::ALL
            .iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| Error::UnknownDiagram(s.to_string()))
    }
}

impl fmt::Display for DiagramId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A node of a diagram: a flat word algebra or another registered pullback.
#[derive(Clone, Debug, PartialEq)]
pub enum NodeRef {
    Flat(Signature),
    Diagram(DiagramId),
}

impl NodeRef {
    pub fn describe(&self) -> String {
        match self {
            NodeRef::Flat(sig) => sig.to_string(),
            NodeRef::Diagram(id) => id.name().to_string(),
        }
    }
}

/// Which U(1)-action a diagram's spectral decomposition refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    /// Weight = sum of factor weights.
    Diagonal,
    /// Weight = exponent of the trailing circle factor of every leaf.
    Rightmost,
}

/// Compatibility status recorded on a pullback element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CompatStatus {
    Unchecked,
    Exact,
    Tol(f64),
}

/// A pullback element: a pair of values over a registered diagram.
#[derive(Clone, Debug)]
pub struct PairValue {
    pub diagram: DiagramId,
    pub left: AlgValue,
    pub right: AlgValue,
    pub status: CompatStatus,
}

impl PartialEq for PairValue {
    fn eq(&self, other: &Self) -> bool {
        // status is bookkeeping, not part of the value
        self.diagram == other.diagram && self.left == other.left && self.right == other.right
    }
}

/// A value in a flat word algebra or in a registered pullback.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgValue {
    Flat(Element),
    Pair(Box<PairValue>),
}

impl AlgValue {
    pub fn flat(e: Element) -> Self {
        AlgValue::Flat(e)
    }

    pub fn pair(diagram: DiagramId, left: AlgValue, right: AlgValue) -> Self {
        AlgValue::Pair(Box::new(PairValue {
            diagram,
            left,
            right,
            status: CompatStatus::Unchecked,
        }))
    }

    pub fn as_flat(&self) -> Result<&Element> {
        match self {
            AlgValue::Flat(e) => Ok(e),
            AlgValue::Pair(p) => Err(Error::ShapeMismatch {
                detail: format!("expected flat element, found pullback value over {}", p.diagram),
            }),
        }
    }

    pub fn as_pair(&self) -> Result<&PairValue> {
        match self {
            AlgValue::Pair(p) => Ok(p),
            AlgValue::Flat(e) => Err(Error::ShapeMismatch {
                detail: format!("expected pullback value, found flat element over {}", e.signature),
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AlgValue::Flat(e) => e.is_zero(),
            AlgValue::Pair(p) => p.left.is_zero() && p.right.is_zero(),
        }
    }

    fn check_shape(&self, other: &AlgValue) -> Result<()> {
        match (self, other) {
            (AlgValue::Flat(a), AlgValue::Flat(b)) => {
                if a.signature != b.signature {
                    return Err(Error::SignatureMismatch {
                        expected: a.signature.to_string(),
                        found: b.signature.to_string(),
                    });
                }
                Ok(())
            }
            (AlgValue::Pair(a), AlgValue::Pair(b)) => {
                if a.diagram != b.diagram {
                    return Err(Error::DiagramMismatch {
                        expected: a.diagram.to_string(),
                        found: b.diagram.to_string(),
                    });
                }
                a.left.check_shape(&b.left)?;
                a.right.check_shape(&b.right)
            }
            (a, b) => Err(Error::ShapeMismatch {
                detail: format!("{} vs {}", a.shape_name(), b.shape_name()),
            }),
        }
    }

    fn shape_name(&self) -> String {
        match self {
            AlgValue::Flat(e) => format!("flat {}", e.signature),
            AlgValue::Pair(p) => format!("pullback {}", p.diagram),
        }
    }

    pub fn try_add(&self, other: &AlgValue) -> Result<AlgValue> {
        self.check_shape(other)?;
        Ok(match (self, other) {
            (AlgValue::Flat(a), AlgValue::Flat(b)) => AlgValue::Flat(a.try_add(b)?),
            (AlgValue::Pair(a), AlgValue::Pair(b)) => AlgValue::pair(
                a.diagram,
                a.left.try_add(&b.left)?,
                a.right.try_add(&b.right)?,
            ),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &AlgValue) -> Result<AlgValue> {
        self.check_shape(other)?;
        Ok(match (self, other) {
            (AlgValue::Flat(a), AlgValue::Flat(b)) => AlgValue::Flat(a.try_sub(b)?),
            (AlgValue::Pair(a), AlgValue::Pair(b)) => AlgValue::pair(
                a.diagram,
                a.left.try_sub(&b.left)?,
                a.right.try_sub(&b.right)?,
            ),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &AlgValue) -> Result<AlgValue> {
        self.check_shape(other)?;
        Ok(match (self, other) {
            (AlgValue::Flat(a), AlgValue::Flat(b)) => AlgValue::Flat(a.try_mul(b)?),
            (AlgValue::Pair(a), AlgValue::Pair(b)) => AlgValue::pair(
                a.diagram,
                a.left.try_mul(&b.left)?,
                a.right.try_mul(&b.right)?,
            ),
            _ => unreachable!(),
        })
    }

    pub fn scale(&self, s: Scalar) -> AlgValue {
        match self {
            AlgValue::Flat(e) => AlgValue::Flat(e.scale(s)),
            AlgValue::Pair(p) => {
                AlgValue::pair(p.diagram, p.left.scale(s.clone()), p.right.scale(s))
            }
        }
    }

    pub fn adjoint(&self) -> AlgValue {
        match self {
            AlgValue::Flat(e) => AlgValue::Flat(e.adjoint()),
            AlgValue::Pair(p) => AlgValue::pair(p.diagram, p.left.adjoint(), p.right.adjoint()),
        }
    }

    /// Max over leaves of the ℓ¹ coefficient norm (a C*-norm upper bound:
    /// the norm of a compatible pair is the max of the component norms).
    pub fn norm_bound(&self) -> f64 {
        match self {
            AlgValue::Flat(e) => e.norm_bound(),
            AlgValue::Pair(p) => p.left.norm_bound().max(p.right.norm_bound()),
        }
    }

    /// ℓ¹ distance to another value of the same shape, max over leaves.
    pub fn defect_norm(&self, other: &AlgValue) -> Result<f64> {
        let diff = self.try_sub(other)?;
        Ok(diff.norm_bound())
    }

    /// Largest single-coefficient deviation between matching leaves.
    pub fn max_coeff_defect(&self, other: &AlgValue) -> Result<f64> {
        self.check_shape(other)?;
        Ok(match (self, other) {
            (AlgValue::Flat(a), AlgValue::Flat(b)) => a.max_coeff_defect(b),
            (AlgValue::Pair(a), AlgValue::Pair(b)) => a
                .left
                .max_coeff_defect(&b.left)?
                .max(a.right.max_coeff_defect(&b.right)?),
            _ => unreachable!(),
        })
    }

    /// Weight-k spectral component under the action registered with each
    /// layer (diagonal, or rightmost for gauged presentations).
    pub fn weight_component(&self, k: i64) -> AlgValue {
        match self {
            AlgValue::Flat(e) => AlgValue::Flat(e.weight_component(k)),
            AlgValue::Pair(p) => {
                let action = registry().diagram(p.diagram).action;
                match action {
                    ActionKind::Diagonal => AlgValue::pair(
                        p.diagram,
                        p.left.weight_component(k),
                        p.right.weight_component(k),
                    ),
                    ActionKind::Rightmost => AlgValue::pair(
                        p.diagram,
                        rightmost_component(&p.left, k),
                        rightmost_component(&p.right, k),
                    ),
                }
            }
        }
    }
}

fn rightmost_component(v: &AlgValue, k: i64) -> AlgValue {
    match v {
        AlgValue::Flat(e) => {
            let mut out = Element::zero(e.signature.clone());
            for (w, c) in &e.terms {
                if let Some(FactorWord::C(j)) = w.0.last() {
                    if *j == k {
                        out.add_term(w.clone(), c.clone());
                    }
                }
            }
            AlgValue::Flat(out)
        }
        AlgValue::Pair(p) => AlgValue::pair(
            p.diagram,
            rightmost_component(&p.left, k),
            rightmost_component(&p.right, k),
        ),
    }
}

/// Spectral-subspace projection: the weight-k part (k = 0 is the fixed-point
/// subalgebra).
pub fn fixed_point(v: &AlgValue, k: i64) -> AlgValue {
    v.weight_component(k)
}

/// A registered pullback diagram `A₁ --leg1--> A₁₂ <--leg2-- A₂`.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub id: DiagramId,
    pub a1: NodeRef,
    pub a2: NodeRef,
    pub a12: NodeRef,
    pub leg1: Morphism,
    pub leg2: Morphism,
    pub leg1_surjective: bool,
    pub leg2_surjective: bool,
    pub action: ActionKind,
    pub anchor: &'static str,
}

impl Diagram {
    /// The unit of the pullback algebra.
    pub fn unit(&self) -> AlgValue {
        AlgValue::pair(self.id, node_unit(&self.a1), node_unit(&self.a2))
    }

    pub fn zero(&self) -> AlgValue {
        AlgValue::pair(self.id, node_zero(&self.a1), node_zero(&self.a2))
    }

    /// A small set of compatible elements generating enough of the algebra
    /// for spot checks.
    pub fn generators(&self) -> Vec<AlgValue> {
        generators_for(self.id)
    }

    /// Verify on the generator set that both legs are unital *-homomorphisms
    /// and that the generators are exactly compatible.
    pub fn spot_check(&self) -> Result<()> {
        let gens = self.generators();
        for g in &gens {
            let (_, report) = pb_compat(g, None)?;
            if report.defect != 0.0 {
                return Err(Error::ShapeMismatch {
                    detail: format!("generator of {} has compat defect {}", self.id, report.defect),
                });
            }
        }
        for ga in &gens {
            let pa = ga.as_pair()?;
            // unitality and multiplicativity of each leg on generator products
            for gb in &gens {
                let pb = gb.as_pair()?;
                let prod_l = pa.left.try_mul(&pb.left)?;
                let lhs = self.leg1.apply(&prod_l)?;
                let rhs = self.leg1.apply(&pa.left)?.try_mul(&self.leg1.apply(&pb.left)?)?;
                if lhs.max_coeff_defect(&rhs)? != 0.0 {
                    return Err(Error::ShapeMismatch {
                        detail: format!("leg1 of {} is not multiplicative", self.id),
                    });
                }
                let prod_r = pa.right.try_mul(&pb.right)?;
                let lhs = self.leg2.apply(&prod_r)?;
                let rhs = self.leg2.apply(&pa.right)?.try_mul(&self.leg2.apply(&pb.right)?)?;
                if lhs.max_coeff_defect(&rhs)? != 0.0 {
                    return Err(Error::ShapeMismatch {
                        detail: format!("leg2 of {} is not multiplicative", self.id),
                    });
                }
            }
            // *-compatibility
            let lhs = self.leg1.apply(&pa.left.adjoint())?;
            let rhs = self.leg1.apply(&pa.left)?.adjoint();
            if lhs.max_coeff_defect(&rhs)? != 0.0 {
                return Err(Error::ShapeMismatch {
                    detail: format!("leg1 of {} does not commute with *", self.id),
                });
            }
            let lhs = self.leg2.apply(&pa.right.adjoint())?;
            let rhs = self.leg2.apply(&pa.right)?.adjoint();
            if lhs.max_coeff_defect(&rhs)? != 0.0 {
                return Err(Error::ShapeMismatch {
                    detail: format!("leg2 of {} does not commute with *", self.id),
                });
            }
        }
        Ok(())
    }
}

pub fn node_unit(node: &NodeRef) -> AlgValue {
    match node {
        NodeRef::Flat(sig) => AlgValue::Flat(Element::one(sig.clone())),
        NodeRef::Diagram(id) => registry().diagram(*id).unit(),
    }
}

pub fn node_zero(node: &NodeRef) -> AlgValue {
    match node {
        NodeRef::Flat(sig) => AlgValue::Flat(Element::zero(sig.clone())),
        NodeRef::Diagram(id) => registry().diagram(*id).zero(),
    }
}

/// Outcome of a compatibility check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CompatReport {
    pub defect: f64,
    pub exact: bool,
}

/// Check compatibility of a pullback value recursively: leg images must agree
/// at every layer. Returns the value with statuses filled in and the worst
/// defect found. With `tol = None` the element must be exactly compatible for
/// `exact = true`; the defect is reported either way.
pub fn pb_compat(v: &AlgValue, tol: Option<f64>) -> Result<(AlgValue, CompatReport)> {
    match v {
        AlgValue::Flat(_) => Ok((v.clone(), CompatReport { defect: 0.0, exact: true })),
        AlgValue::Pair(p) => {
            let diag = registry().diagram(p.diagram);
            let (left, rl) = pb_compat(&p.left, tol)?;
            let (right, rr) = pb_compat(&p.right, tol)?;
            let im1 = diag.leg1.apply(&left)?;
            let im2 = diag.leg2.apply(&right)?;
            let own = im1.defect_norm(&im2)?;
            let defect = own.max(rl.defect).max(rr.defect);
            let status = if defect == 0.0 {
                CompatStatus::Exact
            } else {
                CompatStatus::Tol(defect)
            };
            let out = AlgValue::Pair(Box::new(PairValue {
                diagram: p.diagram,
                left,
                right,
                status,
            }));
            let exact = match tol {
                None => defect == 0.0,
                Some(t) => defect <= t,
            };
            Ok((out, CompatReport { defect, exact }))
        }
    }
}

/// Componentwise arithmetic on pullback elements of the same diagram.
pub fn pb_arith(a: &AlgValue, b: &AlgValue, subtract: bool) -> Result<AlgValue> {
    if subtract {
        a.try_sub(b)
    } else {
        a.try_add(b)
    }
}

/// The induced map between pullbacks: `(a₁,a₂) ↦ (φ₁(a₁), φ₂(a₂))`, after
/// verifying on the element's support that both squares against `φ₁₂`
/// commute within `tol`.
pub fn induced_map(
    phi1: &Morphism,
    phi2: &Morphism,
    phi12: &Morphism,
    e: &AlgValue,
    target: DiagramId,
    tol: f64,
) -> Result<AlgValue> {
    let p = e.as_pair()?;
    let source = registry().diagram(p.diagram);
    let tgt = registry().diagram(target);
    let im_left = phi1.apply(&p.left)?;
    let im_right = phi2.apply(&p.right)?;
    // square 1: ρ₁∘φ₁ = φ₁₂∘π₁ on a₁
    let lhs = tgt.leg1.apply(&im_left)?;
    let rhs = phi12.apply(&source.leg1.apply(&p.left)?)?;
    let d1 = lhs.defect_norm(&rhs)?;
    // square 2: ρ₂∘φ₂ = φ₁₂∘π₂ on a₂
    let lhs = tgt.leg2.apply(&im_right)?;
    let rhs = phi12.apply(&source.leg2.apply(&p.right)?)?;
    let d2 = lhs.defect_norm(&rhs)?;
    let defect = d1.max(d2);
    if defect > tol {
        return Err(Error::CommutingSquareDefect { defect, tol });
    }
    Ok(AlgValue::pair(target, im_left, im_right))
}

/// Membership test for the Milnor module `M(B₁⊗V, B₂⊗V, χ)`: true iff
/// `Σ_j χ_ij·π₁(v_j.left) = π₂(v_i.right)` for every row `i`, within `tol`.
/// `chi_inv` witnesses invertibility (χ·χ⁻¹ = I is verified).
pub fn milnor_module_member(
    diagram: DiagramId,
    v: &[AlgValue],
    chi: &[Vec<AlgValue>],
    chi_inv: &[Vec<AlgValue>],
    tol: f64,
) -> Result<bool> {
    let diag = registry().diagram(diagram);
    let n = v.len();
    if chi.len() != n || chi.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeMismatch {
            detail: format!("chi must be {n}×{n} to act on a rank-{n} vector"),
        });
    }
    if chi_inv.len() != n || chi_inv.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeMismatch { detail: "chi_inv has wrong shape".into() });
    }
    // invertibility witness
    for i in 0..n {
        for j in 0..n {
            let mut acc: Option<AlgValue> = None;
            for k in 0..n {
                let t = chi[i][k].try_mul(&chi_inv[k][j])?;
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.try_add(&t)?,
                });
            }
            let acc = acc.unwrap();
            let expected = if i == j {
                unit_like(&acc)
            } else {
                acc.scale(Scalar::zero())
            };
            if acc.defect_norm(&expected)? > tol {
                return Err(Error::ShapeMismatch {
                    detail: "chi_inv is not an inverse of chi".into(),
                });
            }
        }
    }
    for i in 0..n {
        let pi = v[i].as_pair()?;
        if pi.diagram != diagram {
            return Err(Error::DiagramMismatch {
                expected: diagram.to_string(),
                found: pi.diagram.to_string(),
            });
        }
        let rhs = diag.leg2.apply(&pi.right)?;
        let mut lhs: Option<AlgValue> = None;
        for j in 0..n {
            let pj = v[j].as_pair()?;
            let t = chi[i][j].try_mul(&diag.leg1.apply(&pj.left)?)?;
            lhs = Some(match lhs {
                None => t,
                Some(a) => a.try_add(&t)?,
            });
        }
        if lhs.unwrap().defect_norm(&rhs)? > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

fn unit_like(v: &AlgValue) -> AlgValue {
    match v {
        AlgValue::Flat(e) => AlgValue::Flat(Element::one(e.signature.clone())),
        AlgValue::Pair(p) => AlgValue::pair(p.diagram, unit_like(&p.left), unit_like(&p.right)),
    }
}

/// The immutable diagram/morphism registry.
pub struct Registry {
    diagrams: BTreeMap<DiagramId, Diagram>,
    morphisms: Vec<MorphismEntry>,
}

/// A catalog entry for a named morphism.
#[derive(Clone, Debug)]
pub struct MorphismEntry {
    pub name: &'static str,
    pub morphism: Morphism,
    pub source: String,
    pub target: String,
    pub anchor: &'static str,
}

impl Registry {
    pub fn diagram(&self, id: DiagramId) -> &Diagram {
        &self.diagrams[&id]
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &Diagram> {
        self.diagrams.values()
    }

    pub fn morphisms(&self) -> &[MorphismEntry] {
        &self.morphisms
    }

    pub fn morphism(&self, name: &str) -> Result<&MorphismEntry> {
        // exact match first: ω and Ω differ only by case
        if let Some(m) = self.morphisms.iter().find(|m| m.name == name) {
            return Ok(m);
        }
        let mut matches = self.morphisms.iter().filter(|m| m.name.eq_ignore_ascii_case(name));
        match (matches.next(), matches.next()) {
            (Some(m), None) => Ok(m),
            _ => Err(Error::UnknownMorphism(name.to_string())),
        }
    }
}

/// Look up a diagram by its registry name and run its homomorphism spot
/// checks.
pub fn make_diagram(name: &str) -> Result<&'static Diagram> {
    let id = DiagramId::from_str(name)?;
    let d = registry().diagram(id);
    d.spot_check()?;
    Ok(d)
}

/// Apply a registered morphism by name.
pub fn named_morphism(name: &str, x: &AlgValue) -> Result<AlgValue> {
    registry().morphism(name)?.morphism.apply(x)
}

static REGISTRY: OnceCell<Registry> = OnceCell::new();

pub fn registry() -> &'static Registry {
    REGISTRY.get_or_init(build_registry)
}

fn sig(factors: &[Factor]) -> Signature {
    Signature::of(factors)
}

use Factor::{Circle as C, Toeplitz as T};

fn build_registry() -> Registry {
    use Morphism as M;
    let mut diagrams = BTreeMap::new();
    let mut add = |d: Diagram| {
        diagrams.insert(d.id, d);
    };

    add(Diagram {
        id: DiagramId::S2q,
        a1: NodeRef::Flat(sig(&[T])),
        a2: NodeRef::Flat(Signature::scalars()),
        a12: NodeRef::Flat(sig(&[C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::ScalarTo { signature: sig(&[C]) },
        leg1_surjective: true,
        leg2_surjective: false,
        action: ActionKind::Diagonal,
        anchor: "T --symbol--> C(S1) <--unital inclusion-- C",
    });

    add(Diagram {
        id: DiagramId::SUq2Cstar,
        a1: NodeRef::Flat(sig(&[T, C])),
        a2: NodeRef::Flat(sig(&[C])),
        a12: NodeRef::Flat(sig(&[C, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::AppendUnit { kind: C },
        leg1_surjective: true,
        leg2_surjective: false,
        action: ActionKind::Diagonal,
        anchor: "T⊗C(S1) --symbol⊗id--> C(S1)⊗C(S1) <--v↦v⊗1-- C(S1)",
    });

    add(Diagram {
        id: DiagramId::S3H,
        a1: NodeRef::Flat(sig(&[T, C])),
        a2: NodeRef::Flat(sig(&[C, T])),
        a12: NodeRef::Flat(sig(&[C, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::Symbol { factor: 1 },
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "T⊗C(S1) --symbol⊗id--> C(S1)⊗C(S1) <--id⊗symbol-- C(S1)⊗T",
    });

    add(Diagram {
        id: DiagramId::S3HHeegaard,
        a1: NodeRef::Flat(sig(&[T, C])),
        a2: NodeRef::Flat(sig(&[T, C])),
        a12: NodeRef::Flat(sig(&[C, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::Compose(vec![M::Symbol { factor: 0 }, M::Psi]),
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "both halves T⊗C(S1); right leg twisted by ψ(s⊗v)=S(s)v⁽¹⁾⊗v⁽²⁾",
    });

    add(Diagram {
        id: DiagramId::P2,
        a1: NodeRef::Flat(sig(&[T, C])),
        a2: NodeRef::Flat(sig(&[T, C])),
        a12: NodeRef::Flat(sig(&[C, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::Compose(vec![M::Symbol { factor: 0 }, M::PhiTilde]),
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "both halves T⊗C(S1); right leg twisted by φ̃(s⊗v)=S(sv⁽²⁾)⊗v⁽¹⁾",
    });

    add(Diagram {
        id: DiagramId::P1,
        a1: NodeRef::Flat(sig(&[T, T])),
        a2: NodeRef::Flat(sig(&[T, T])),
        a12: NodeRef::Flat(sig(&[C, T])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::AlphaTilde,
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "T⊗T --symbol on first factor--> C(S1)⊗T <--α̃-- T⊗T",
    });

    add(Diagram {
        id: DiagramId::B4,
        a1: NodeRef::Diagram(DiagramId::SUq2Cstar),
        a2: NodeRef::Flat(sig(&[T, T])),
        a12: NodeRef::Diagram(DiagramId::S3H),
        leg1: M::OmegaSmall,
        leg2: M::Nu,
        leg1_surjective: false,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "C(SUq2) --ω--> C(S3H) <--ν-- T⊗T",
    });

    add(Diagram {
        id: DiagramId::S3HxT,
        a1: NodeRef::Flat(sig(&[T, C, T])),
        a2: NodeRef::Flat(sig(&[C, T, T])),
        a12: NodeRef::Flat(sig(&[C, C, T])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::Symbol { factor: 1 },
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "the S3H presentation tensored with T on the right",
    });

    add(Diagram {
        id: DiagramId::S3HxC,
        a1: NodeRef::Flat(sig(&[T, C, C])),
        a2: NodeRef::Flat(sig(&[C, T, C])),
        a12: NodeRef::Flat(sig(&[C, C, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::Symbol { factor: 1 },
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "the S3H presentation tensored with C(S1) on the right",
    });

    add(Diagram {
        id: DiagramId::SUq2xC,
        a1: NodeRef::Flat(sig(&[T, C, C])),
        a2: NodeRef::Flat(sig(&[C, C])),
        a12: NodeRef::Flat(sig(&[C, C, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::InsertUnit { pos: 1, kind: C },
        leg1_surjective: true,
        leg2_surjective: false,
        action: ActionKind::Diagonal,
        anchor: "the SUq2 presentation tensored with C(S1) on the right",
    });

    add(Diagram {
        id: DiagramId::SUq2R,
        a1: NodeRef::Flat(sig(&[T, C])),
        a2: NodeRef::Flat(sig(&[C])),
        a12: NodeRef::Flat(sig(&[C, C])),
        leg1: M::Compose(vec![M::GaugeInv, M::Symbol { factor: 0 }, M::Gauge]),
        leg2: M::RCoact,
        leg1_surjective: true,
        leg2_surjective: false,
        action: ActionKind::Rightmost,
        anchor: "gauged presentation of C(SUq2) with the rightmost circle action",
    });

    add(Diagram {
        id: DiagramId::SUq2xCR,
        a1: NodeRef::Flat(sig(&[T, C, C])),
        a2: NodeRef::Flat(sig(&[C, C])),
        a12: NodeRef::Flat(sig(&[C, C, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::InsertUnit { pos: 1, kind: C },
        leg1_surjective: true,
        leg2_surjective: false,
        action: ActionKind::Rightmost,
        anchor: "gauged presentation of C(SUq2)⊗C(S1) with the rightmost circle action",
    });

    add(Diagram {
        id: DiagramId::B4xC,
        a1: NodeRef::Diagram(DiagramId::SUq2xC),
        a2: NodeRef::Flat(sig(&[T, T, C])),
        a12: NodeRef::Diagram(DiagramId::S3HxC),
        leg1: M::Pair {
            first: Box::new(M::Identity),
            second: Box::new(M::InsertUnit { pos: 1, kind: T }),
            target: DiagramId::S3HxC,
        },
        leg2: M::NuTensorId,
        leg1_surjective: false,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "the B4 presentation tensored with C(S1) on the right",
    });

    add(Diagram {
        id: DiagramId::S5H,
        a1: NodeRef::Diagram(DiagramId::S3HxT),
        a2: NodeRef::Flat(sig(&[T, T, C])),
        a12: NodeRef::Diagram(DiagramId::S3HxC),
        leg1: M::Pair {
            first: Box::new(M::Symbol { factor: 2 }),
            second: Box::new(M::Symbol { factor: 2 }),
            target: DiagramId::S3HxC,
        },
        leg2: M::NuTensorId,
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "C(S3H)⊗T --id⊗symbol--> C(S3H)⊗C(S1) <--ν⊗id-- T⊗T⊗C(S1)",
    });

    add(Diagram {
        id: DiagramId::P5,
        a1: NodeRef::Diagram(DiagramId::SUq2Cstar),
        a2: NodeRef::Diagram(DiagramId::B4xC),
        a12: NodeRef::Diagram(DiagramId::SUq2xC),
        leg1: M::Pair {
            first: Box::new(M::AppendUnit { kind: C }),
            second: Box::new(M::AppendUnit { kind: C }),
            target: DiagramId::SUq2xC,
        },
        leg2: M::Pr1,
        leg1_surjective: false,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "C(SUq2) --id⊗1--> C(SUq2)⊗C(S1) <--pr1⊗id-- B4⊗C(S1)",
    });

    add(Diagram {
        id: DiagramId::S3HxTR,
        a1: NodeRef::Flat(sig(&[T, T, C])),
        a2: NodeRef::Flat(sig(&[T, T, C])),
        a12: NodeRef::Flat(sig(&[C, T, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::Alpha,
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Rightmost,
        anchor: "gauged presentation of C(S3H)⊗T with the rightmost circle action",
    });

    add(Diagram {
        id: DiagramId::S3HxCR,
        a1: NodeRef::Flat(sig(&[T, C, C])),
        a2: NodeRef::Flat(sig(&[T, C, C])),
        a12: NodeRef::Flat(sig(&[C, C, C])),
        leg1: M::Symbol { factor: 0 },
        leg2: M::Compose(vec![M::Symbol { factor: 0 }, M::Permute { perm: vec![1, 0, 2] }]),
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Rightmost,
        anchor: "gauged presentation of C(S3H)⊗C(S1) with the rightmost circle action",
    });

    add(Diagram {
        id: DiagramId::CP2T,
        a1: NodeRef::Diagram(DiagramId::P1),
        a2: NodeRef::Flat(sig(&[T, T])),
        a12: NodeRef::Diagram(DiagramId::S3HHeegaard),
        leg1: M::Compose(vec![
            M::Pair {
                first: Box::new(M::Symbol { factor: 1 }),
                second: Box::new(M::Symbol { factor: 1 }),
                target: DiagramId::P2,
            },
            M::H,
        ]),
        leg2: M::GammaHat,
        leg1_surjective: true,
        leg2_surjective: true,
        action: ActionKind::Diagonal,
        anchor: "P1 --h∘(σ2,σ2)--> C(S3H) <--γ̂-- T⊗T",
    });

    let morphisms = build_morphism_catalog();
    Registry { diagrams, morphisms }
}

fn build_morphism_catalog() -> Vec<MorphismEntry> {
    use Morphism as M;
    let entry = |name: &'static str,
                 morphism: M,
                 source: &str,
                 target: &str,
                 anchor: &'static str| MorphismEntry {
        name,
        morphism,
        source: source.to_string(),
        target: target.to_string(),
        anchor,
    };
    vec![
        entry("sigma", M::Symbol { factor: 0 }, "T", "C(S1)", "symbol map, S ↦ u"),
        entry(
            "sigma1",
            M::Symbol { factor: 0 },
            "X0⊗X1⊗…",
            "σ applied to factor 0",
            "symbol map on the first tensor factor",
        ),
        entry(
            "sigma2",
            M::Symbol { factor: 1 },
            "X0⊗X1⊗…",
            "σ applied to factor 1",
            "symbol map on the second tensor factor",
        ),
        entry(
            "psi01",
            M::Psi01,
            "C(S1)⊗T",
            "C(S1)⊗T",
            "v⊗t ↦ S(v t⁽¹⁾)⊗t⁽⁰⁾",
        ),
        entry(
            "psi02",
            M::Psi02,
            "C(S1)⊗T",
            "T⊗C(S1)",
            "v⊗t ↦ t⁽⁰⁾⊗S(v t⁽¹⁾)",
        ),
        entry(
            "psi12",
            M::Psi12,
            "T⊗C(S1)",
            "T⊗C(S1)",
            "t⊗v ↦ t⁽⁰⁾⊗S(t⁽¹⁾v)",
        ),
        entry(
            "phi-tilde",
            M::PhiTilde,
            "C(S1)⊗C(S1)",
            "C(S1)⊗C(S1)",
            "s⊗v ↦ S(s v⁽²⁾)⊗v⁽¹⁾",
        ),
        entry("psi", M::Psi, "C(S1)⊗C(S1)", "C(S1)⊗C(S1)", "s⊗v ↦ S(s)v⁽¹⁾⊗v⁽²⁾"),
        entry(
            "h",
            M::H,
            "P2",
            "S3H-heegaard-presentation",
            "componentwise circle antipode on the trailing factor",
        ),
        entry(
            "h-inv",
            M::HInv,
            "S3H-heegaard-presentation",
            "P2",
            "inverse of h (same formula; the antipode is an involution)",
        ),
        entry(
            "gamma-hat",
            M::GammaHat,
            "T⊗T",
            "S3H-heegaard-presentation",
            "t⊗t′ ↦ (t′⁽⁰⁾⊗t′⁽¹⁾σ(t), t⁽⁰⁾⊗t⁽¹⁾σ(t′))",
        ),
        entry("omega", M::OmegaSmall, "SUq2-C*", "S3H", "(t⊗u, v) ↦ (t⊗u, v⊗1)"),
        entry(
            "nu",
            M::Nu,
            "T⊗T",
            "S3H",
            "t1⊗t2 ↦ (t1⊗σ(t2), σ(t1)⊗t2)",
        ),
        entry(
            "nu-tensor-id",
            M::NuTensorId,
            "T⊗T⊗C(S1)",
            "S3HxC",
            "ν on the first two factors, identity on the third",
        ),
        entry(
            "alpha",
            M::Alpha,
            "T⊗T⊗C(S1)",
            "C(S1)⊗T⊗C(S1)",
            "t⊗t′⊗u ↦ u⁽¹⁾S(σ(t)t′⁽¹⁾)⊗t′⁽⁰⁾⊗u⁽²⁾",
        ),
        entry(
            "alpha-tilde",
            M::AlphaTilde,
            "T⊗T",
            "C(S1)⊗T",
            "t⊗t′ ↦ S(σ(t)t′⁽¹⁾)⊗t′⁽⁰⁾",
        ),
        entry(
            "beta",
            M::Beta,
            "SUq2-C*",
            "SUq2xC",
            "s ↦ g⁻¹(s⁽⁰⁾)⊗s⁽¹⁾ (rightmost-coaction gauge on both components)",
        ),
        entry(
            "beta-tilde",
            M::BetaTilde,
            "S2q",
            "SUq2-C*",
            "(t, c) ↦ (t⁽⁰⁾⊗S(t⁽¹⁾), c·1)",
        ),
        entry(
            "chi",
            M::Chi,
            "S3HxT-R",
            "S3HxC-R",
            "componentwise a⊗b⊗u ↦ a⊗u⁽¹⁾S(a⁽¹⁾σ(b))⊗u⁽²⁾",
        ),
        entry(
            "Omega",
            M::OmegaCap,
            "SUq2-C*",
            "S3HxT-R",
            "(t⊗u, v) ↦ (t⊗1⊗u, 1⊗1⊗v)",
        ),
        entry(
            "Omega-tilde",
            M::OmegaCapTilde,
            "S2q",
            "P1",
            "(t, c) ↦ (t⊗1, c·1⊗1)",
        ),
        entry(
            "f",
            M::FMap,
            "P5",
            "S5H",
            "componentwise (ω⊗1_T, pr2⊗id); the unique induced map of the big diagram",
        ),
        entry("pr1", M::Pr1, "any pullback", "its first component", "first pullback projection"),
        entry("pr2", M::Pr2, "any pullback", "its second component", "second pullback projection"),
        entry(
            "q1",
            M::Pr1,
            "P5 (and its fixed-point subalgebra)",
            "C(SUq2) component",
            "first projection of the auxiliary 5-sphere pullback",
        ),
        entry(
            "gauge",
            M::Gauge,
            "A⊗C(S1)",
            "A⊗C(S1)",
            "a⊗h ↦ a⁽⁰⁾⊗a⁽¹⁾h (diagonal action to rightmost)",
        ),
        entry(
            "gauge-inv",
            M::GaugeInv,
            "A⊗C(S1)",
            "A⊗C(S1)",
            "a⊗h ↦ a⁽⁰⁾⊗S(a⁽¹⁾)h",
        ),
    ]
}

fn generators_for(id: DiagramId) -> Vec<AlgValue> {
    let flat = AlgValue::Flat;
    let one_t = || Element::one(Signature::toeplitz(1));
    let s = Element::s;
    let s_star = Element::s_star;
    let u = Element::u;
    let corner = Element::corner_projection;
    match id {
        DiagramId::S2q => vec![
            AlgValue::pair(id, flat(one_t()), flat(Element::scalar(Scalar::one()))),
            AlgValue::pair(id, flat(corner()), flat(Element::scalar(Scalar::zero()))),
            AlgValue::pair(
                id,
                flat(s() * corner()),
                flat(Element::scalar(Scalar::zero())),
            ),
        ],
        DiagramId::SUq2Cstar => vec![
            AlgValue::pair(id, flat(one_t().tensor(&u(0))), flat(u(0))),
            AlgValue::pair(id, flat(s().tensor(&u(0))), flat(u(1))),
            AlgValue::pair(id, flat(s_star().tensor(&u(0))), flat(u(-1))),
            AlgValue::pair(
                id,
                flat(corner().tensor(&u(1))),
                flat(Element::zero(Signature::circle(1))),
            ),
        ],
        DiagramId::S3H => vec![
            AlgValue::pair(id, flat(s().tensor(&u(0))), flat(u(1).tensor(&one_t()))),
            AlgValue::pair(id, flat(one_t().tensor(&u(1))), flat(u(0).tensor(&s()))),
            AlgValue::pair(
                id,
                flat(corner().tensor(&u(1))),
                flat(Element::zero(sig(&[C, T]))),
            ),
            AlgValue::pair(
                id,
                flat(Element::zero(sig(&[T, C]))),
                flat(u(1).tensor(&corner())),
            ),
        ],
        DiagramId::S3HHeegaard => vec![
            AlgValue::pair(id, flat(s().tensor(&u(0))), flat(s_star().tensor(&u(0)))),
            AlgValue::pair(id, flat(one_t().tensor(&u(1))), flat(s().tensor(&u(1)))),
            AlgValue::pair(
                id,
                flat(corner().tensor(&u(1))),
                flat(Element::zero(sig(&[T, C]))),
            ),
        ],
        DiagramId::P2 => vec![
            AlgValue::pair(id, flat(s().tensor(&u(0))), flat(s_star().tensor(&u(0)))),
            AlgValue::pair(id, flat(one_t().tensor(&u(1))), flat(s_star().tensor(&u(1)))),
            AlgValue::pair(
                id,
                flat(Element::zero(sig(&[T, C]))),
                flat(corner().tensor(&u(1))),
            ),
        ],
        DiagramId::P1 => vec![
            AlgValue::pair(
                id,
                flat(s().tensor(&one_t())),
                flat(s_star().tensor(&one_t())),
            ),
            AlgValue::pair(id, flat(one_t().tensor(&s())), flat(s_star().tensor(&s()))),
            AlgValue::pair(
                id,
                flat(corner().tensor(&s())),
                flat(Element::zero(sig(&[T, T]))),
            ),
            AlgValue::pair(
                id,
                flat(Element::zero(sig(&[T, T]))),
                flat(corner().tensor(&one_t())),
            ),
        ],
        DiagramId::B4 => {
            let suq = |l: Element, r: Element| {
                AlgValue::pair(DiagramId::SUq2Cstar, flat(l), flat(r))
            };
            vec![
                AlgValue::pair(
                    id,
                    suq(s().tensor(&u(0)), u(1)),
                    flat(s().tensor(&one_t())),
                ),
                AlgValue::pair(
                    id,
                    suq(corner().tensor(&u(0)), Element::zero(Signature::circle(1))),
                    flat(corner().tensor(&one_t())),
                ),
                AlgValue::pair(
                    id,
                    suq(
                        Element::zero(sig(&[T, C])),
                        Element::zero(Signature::circle(1)),
                    ),
                    flat(corner().tensor(&corner())),
                ),
            ]
        }
        DiagramId::S3HxT => vec![
            AlgValue::pair(
                id,
                flat(s().tensor(&u(0)).tensor(&one_t())),
                flat(u(1).tensor(&one_t()).tensor(&one_t())),
            ),
            AlgValue::pair(
                id,
                flat(one_t().tensor(&u(0)).tensor(&s())),
                flat(u(0).tensor(&one_t()).tensor(&s())),
            ),
            AlgValue::pair(
                id,
                flat(corner().tensor(&u(1)).tensor(&one_t())),
                flat(Element::zero(sig(&[C, T, T]))),
            ),
        ],
        DiagramId::S3HxC => vec![
            AlgValue::pair(
                id,
                flat(s().tensor(&u(0)).tensor(&u(0))),
                flat(u(1).tensor(&one_t()).tensor(&u(0))),
            ),
            AlgValue::pair(
                id,
                flat(one_t().tensor(&u(0)).tensor(&u(1))),
                flat(u(0).tensor(&one_t()).tensor(&u(1))),
            ),
        ],
        DiagramId::SUq2xC => vec![
            AlgValue::pair(
                id,
                flat(s().tensor(&u(0)).tensor(&u(0))),
                flat(u(1).tensor(&u(0))),
            ),
            AlgValue::pair(
                id,
                flat(one_t().tensor(&u(0)).tensor(&u(1))),
                flat(u(0).tensor(&u(1))),
            ),
            AlgValue::pair(
                id,
                flat(corner().tensor(&u(1)).tensor(&u(0))),
                flat(Element::zero(sig(&[C, C]))),
            ),
        ],
        DiagramId::SUq2R => vec![
            AlgValue::pair(id, flat(one_t().tensor(&u(0))), flat(u(0))),
            AlgValue::pair(id, flat(s().tensor(&u(1))), flat(u(1))),
            AlgValue::pair(id, flat(s_star().tensor(&u(-1))), flat(u(-1))),
            AlgValue::pair(
                id,
                flat(corner().tensor(&u(1))),
                flat(Element::zero(Signature::circle(1))),
            ),
        ],
        DiagramId::SUq2xCR => vec![
            AlgValue::pair(
                id,
                flat(s().tensor(&u(0)).tensor(&u(1))),
                flat(u(1).tensor(&u(1))),
            ),
            AlgValue::pair(
                id,
                flat(one_t().tensor(&u(0)).tensor(&u(1))),
                flat(u(0).tensor(&u(1))),
            ),
            AlgValue::pair(
                id,
                flat(corner().tensor(&u(1)).tensor(&u(0))),
                flat(Element::zero(sig(&[C, C]))),
            ),
        ],
        DiagramId::B4xC => {
            let suqc = |l: Element, r: Element| {
                AlgValue::pair(DiagramId::SUq2xC, flat(l), flat(r))
            };
            vec![
                AlgValue::pair(
                    id,
                    suqc(s().tensor(&u(0)).tensor(&u(0)), u(1).tensor(&u(0))),
                    flat(s().tensor(&one_t()).tensor(&u(0))),
                ),
                AlgValue::pair(
                    id,
                    suqc(one_t().tensor(&u(0)).tensor(&u(1)), u(0).tensor(&u(1))),
                    flat(one_t().tensor(&one_t()).tensor(&u(1))),
                ),
            ]
        }
        DiagramId::S5H => vec![
            AlgValue::pair(
                id,
                AlgValue::pair(
                    DiagramId::S3HxT,
                    flat(s().tensor(&u(0)).tensor(&one_t())),
                    flat(u(1).tensor(&one_t()).tensor(&one_t())),
                ),
                flat(s().tensor(&one_t()).tensor(&u(0))),
            ),
            AlgValue::pair(
                id,
                AlgValue::pair(
                    DiagramId::S3HxT,
                    flat(one_t().tensor(&u(1)).tensor(&one_t())),
                    flat(u(0).tensor(&s()).tensor(&one_t())),
                ),
                flat(one_t().tensor(&s()).tensor(&u(0))),
            ),
        ],
        DiagramId::P5 => {
            let suq = |l: Element, r: Element| {
                AlgValue::pair(DiagramId::SUq2Cstar, flat(l), flat(r))
            };
            let suqc = |l: Element, r: Element| {
                AlgValue::pair(DiagramId::SUq2xC, flat(l), flat(r))
            };
            vec![AlgValue::pair(
                id,
                suq(s().tensor(&u(0)), u(1)),
                AlgValue::pair(
                    DiagramId::B4xC,
                    suqc(s().tensor(&u(0)).tensor(&u(0)), u(1).tensor(&u(0))),
                    flat(s().tensor(&one_t()).tensor(&u(0))),
                ),
            )]
        }
        DiagramId::S3HxTR => vec![
            AlgValue::pair(
                id,
                flat(s().tensor(&one_t()).tensor(&u(0))),
                flat(s_star().tensor(&one_t()).tensor(&u(0))),
            ),
            AlgValue::pair(
                id,
                flat(one_t().tensor(&one_t()).tensor(&u(1))),
                flat(s().tensor(&one_t()).tensor(&u(1))),
            ),
            AlgValue::pair(
                id,
                flat(corner().tensor(&s()).tensor(&u(0))),
                flat(Element::zero(sig(&[T, T, C]))),
            ),
        ],
        DiagramId::S3HxCR => vec![
            AlgValue::pair(
                id,
                flat(s().tensor(&u(-1)).tensor(&u(0))),
                flat(s_star().tensor(&u(1)).tensor(&u(0))),
            ),
            AlgValue::pair(
                id,
                flat(one_t().tensor(&u(0)).tensor(&u(1))),
                flat(one_t().tensor(&u(0)).tensor(&u(1))),
            ),
        ],
        DiagramId::CP2T => {
            let p1 = |l: Element, r: Element| AlgValue::pair(DiagramId::P1, flat(l), flat(r));
            vec![
                AlgValue::pair(
                    id,
                    p1(s().tensor(&one_t()), s_star().tensor(&one_t())),
                    flat(s_star().tensor(&s())),
                ),
                AlgValue::pair(
                    id,
                    p1(one_t().tensor(&s()), s_star().tensor(&s())),
                    flat(s_star().tensor(&one_t())),
                ),
                AlgValue::pair(
                    id,
                    AlgValue::pair(
                        DiagramId::P1,
                        flat(Element::zero(sig(&[T, T]))),
                        flat(Element::zero(sig(&[T, T]))),
                    ),
                    flat(corner().tensor(&corner())),
                ),
            ]
        }
    }
}

impl Serialize for AlgValue {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            AlgValue::Flat(e) => e.serialize(ser),
            AlgValue::Pair(p) => {
                let mut map = ser.serialize_map(Some(4))?;
                map.serialize_entry("diagram", p.diagram.name())?;
                map.serialize_entry("left", &p.left)?;
                map.serialize_entry("right", &p.right)?;
                map.serialize_entry("status", &p.status)?;
                map.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_diagrams_spot_check() {
        for id in DiagramId::ALL {
            let d = make_diagram(id.name()).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(d.id, id);
        }
        assert!(make_diagram("nonsense").is_err());
    }

    #[test]
    fn s3h_leg_shapes() {
        let d = registry().diagram(DiagramId::S3H);
        assert_eq!(d.a1, NodeRef::Flat(sig(&[T, C])));
        assert_eq!(d.a2, NodeRef::Flat(sig(&[C, T])));
        // legs (σ⊗id, id⊗σ) on the unit give the unit
        let u12 = d.leg1.apply(&node_unit(&d.a1)).unwrap();
        assert_eq!(u12, node_unit(&d.a12));
    }

    #[test]
    fn compat_examples_s3h() {
        let s1 = AlgValue::flat(Element::s().tensor(&Element::one(Signature::circle(1))));
        let u1 = AlgValue::flat(Element::u(1).tensor(&Element::one(Signature::toeplitz(1))));
        let good = AlgValue::pair(DiagramId::S3H, s1.clone(), u1);
        let (_, rep) = pb_compat(&good, None).unwrap();
        assert_eq!(rep.defect, 0.0);
        assert!(rep.exact);

        let bad = AlgValue::pair(
            DiagramId::S3H,
            s1,
            AlgValue::flat(Element::u(0).tensor(&Element::s())),
        );
        let (checked, rep) = pb_compat(&bad, None).unwrap();
        assert!(rep.defect > 0.0);
        assert!(!rep.exact);
        match checked {
            AlgValue::Pair(p) => assert!(matches!(p.status, CompatStatus::Tol(_))),
            _ => unreachable!(),
        }

        for id in DiagramId::ALL {
            let (_, rep) = pb_compat(&registry().diagram(id).unit(), None).unwrap();
            assert!(rep.exact, "unit of {id} must be exactly compatible");
        }
    }

    #[test]
    fn fixed_point_examples() {
        let x = Element::s().tensor(&Element::s_star());
        assert_eq!(
            fixed_point(&AlgValue::flat(x.clone()), 0),
            AlgValue::flat(x)
        );
        let y = Element::s().tensor(&Element::one(Signature::toeplitz(1)))
            .tensor(&Element::one(Signature::circle(1)));
        assert_eq!(y.weight_component(1), y);
        let p = registry().diagram(DiagramId::CP2T).unit();
        assert_eq!(fixed_point(&p, 0), p);
    }

    #[test]
    fn induced_map_examples() {
        // identity triple is the identity
        let g = &registry().diagram(DiagramId::S3H).generators()[0];
        let out = induced_map(
            &Morphism::Identity,
            &Morphism::Identity,
            &Morphism::Identity,
            g,
            DiagramId::S3H,
            0.0,
        )
        .unwrap();
        assert_eq!(&out, g);
    }

    #[test]
    fn milnor_module_member_examples() {
        let d = registry().diagram(DiagramId::S3H);
        let unit = d.unit();
        let chi_unit = vec![vec![node_unit(&d.a12)]];
        assert!(milnor_module_member(
            DiagramId::S3H,
            &[unit.clone()],
            &chi_unit,
            &chi_unit,
            0.0
        )
        .unwrap());

        // (S⊗1)e₁ on the left, (1⊗S)e₁ on the right: leg images differ
        let v = AlgValue::pair(
            DiagramId::S3H,
            AlgValue::flat(Element::s().tensor(&Element::one(Signature::circle(1)))),
            AlgValue::flat(Element::u(0).tensor(&Element::s())),
        );
        assert!(!milnor_module_member(DiagramId::S3H, &[v], &chi_unit, &chi_unit, 0.0).unwrap());

        // shape mismatch
        assert!(milnor_module_member(DiagramId::S3H, &[unit], &[], &[], 0.0).is_err());
    }
}
