//! Catalog-wide checks for the registered diagrams and morphisms: every
//! named map is a unital *-homomorphism on random low-degree inputs, the
//! gauge-conjugated maps agree with their closed forms, and the glueing
//! diagrams commute.

use qcp2::element::Element;
use qcp2::pullback::morphism::Morphism;
use qcp2::pullback::{
    induced_map, named_morphism, pb_compat, registry, AlgValue, DiagramId,
};
use qcp2::scalar::Scalar;
use qcp2::word::{Factor, FactorWord, Signature, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_flat(sig: &Signature, rng: &mut StdRng) -> AlgValue {
    let mut e = Element::zero(sig.clone());
    for _ in 0..rng.gen_range(1..3) {
        let fw: Vec<FactorWord> = sig
            .0
            .iter()
            .map(|f| match f {
                Factor::Toeplitz => FactorWord::T(rng.gen_range(0..3), rng.gen_range(0..3)),
                Factor::Circle => FactorWord::C(rng.gen_range(-3..4)),
            })
            .collect();
        e.add_term(Word(fw), Scalar::from_ratio(rng.gen_range(-5..6).max(1), rng.gen_range(1..4)));
    }
    AlgValue::flat(e)
}

fn random_pair(id: DiagramId, rng: &mut StdRng) -> AlgValue {
    let gens = registry().diagram(id).generators();
    let mut acc = gens[rng.gen_range(0..gens.len())].clone();
    for _ in 0..rng.gen_range(0..2) {
        let g = &gens[rng.gen_range(0..gens.len())];
        acc = acc.try_mul(g).unwrap();
    }
    let scaled = acc.scale(Scalar::from_ratio(rng.gen_range(-3..4).max(1), rng.gen_range(1..3)));
    if rng.gen_bool(0.4) {
        let extra = gens[rng.gen_range(0..gens.len())].clone();
        scaled.try_add(&extra).unwrap()
    } else {
        scaled
    }
}

fn source_sample(name: &str, rng: &mut StdRng) -> AlgValue {
    use Factor::{Circle as C, Toeplitz as T};
    let flat = |factors: &[Factor], rng: &mut StdRng| random_flat(&Signature::of(factors), rng);
    match name {
        "sigma" => flat(&[T], rng),
        "sigma1" | "sigma2" | "alpha-tilde" | "gamma-hat" | "nu" => flat(&[T, T], rng),
        "psi01" | "psi02" => flat(&[C, T], rng),
        "psi12" | "gauge" | "gauge-inv" => flat(&[T, C], rng),
        "phi-tilde" | "psi" => flat(&[C, C], rng),
        "alpha" | "nu-tensor-id" => flat(&[T, T, C], rng),
        "omega" => random_pair(DiagramId::SUq2Cstar, rng),
        "beta" | "Omega" => random_pair(DiagramId::SUq2R, rng),
        "beta-tilde" | "Omega-tilde" => random_pair(DiagramId::S2q, rng),
        "chi" => random_pair(DiagramId::S3HxTR, rng),
        "h" => random_pair(DiagramId::P2, rng),
        "h-inv" => random_pair(DiagramId::S3HHeegaard, rng),
        "f" => random_pair(DiagramId::P5, rng),
        "pr1" | "pr2" | "q1" => random_pair(DiagramId::B4, rng),
        other => panic!("no sample source for morphism {other}"),
    }
}

fn unit_like(v: &AlgValue) -> AlgValue {
    match v {
        AlgValue::Flat(e) => AlgValue::flat(Element::one(e.signature.clone())),
        AlgValue::Pair(p) => AlgValue::pair(
            p.diagram,
            unit_like(&p.left),
            unit_like(&p.right),
        ),
    }
}

#[test]
fn every_registered_morphism_is_a_star_homomorphism() {
    let mut rng = StdRng::seed_from_u64(2024);
    for entry in registry().morphisms() {
        let m = &entry.morphism;
        for _ in 0..100 {
            let x = source_sample(entry.name, &mut rng);
            let y = source_sample(entry.name, &mut rng);
            let lhs = m.apply(&x.try_mul(&y).unwrap()).unwrap();
            let rhs = m.apply(&x).unwrap().try_mul(&m.apply(&y).unwrap()).unwrap();
            assert_eq!(
                lhs.max_coeff_defect(&rhs).unwrap(),
                0.0,
                "{} not multiplicative",
                entry.name
            );
            let lhs = m.apply(&x.adjoint()).unwrap();
            let rhs = m.apply(&x).unwrap().adjoint();
            assert_eq!(
                lhs.max_coeff_defect(&rhs).unwrap(),
                0.0,
                "{} not *-compatible",
                entry.name
            );
        }
        // unitality
        let x = source_sample(entry.name, &mut rng);
        let one = unit_like(&x);
        let img = m.apply(&one).unwrap();
        assert_eq!(
            img.max_coeff_defect(&unit_like(&img)).unwrap(),
            0.0,
            "{} not unital",
            entry.name
        );
    }
}

#[test]
fn named_morphism_examples() {
    // γ̂(S⊗1) = (1⊗u, S⊗u), compatible in the two-halves presentation
    let s1 = AlgValue::flat(Element::s().tensor(&Element::one(Signature::toeplitz(1))));
    let out = named_morphism("gamma-hat", &s1).unwrap();
    let expected = AlgValue::pair(
        DiagramId::S3HHeegaard,
        AlgValue::flat(Element::one(Signature::toeplitz(1)).tensor(&Element::u(1))),
        AlgValue::flat(Element::s().tensor(&Element::u(1))),
    );
    assert_eq!(out, expected);
    let (_, rep) = pb_compat(&out, None).unwrap();
    assert!(rep.exact, "γ̂ image must be compatible, defect {}", rep.defect);

    // ν(S⊗S) = (S⊗u, u⊗S)
    let ss = AlgValue::flat(Element::s().tensor(&Element::s()));
    let out = named_morphism("nu", &ss).unwrap();
    let expected = AlgValue::pair(
        DiagramId::S3H,
        AlgValue::flat(Element::s().tensor(&Element::u(1))),
        AlgValue::flat(Element::u(1).tensor(&Element::s())),
    );
    assert_eq!(out, expected);

    // ψ(u⊗u) = 1⊗u
    let uu = AlgValue::flat(Element::u(1).tensor(&Element::u(1)));
    let out = named_morphism("psi", &uu).unwrap();
    assert_eq!(out, AlgValue::flat(Element::u(0).tensor(&Element::u(1))));

    // unknown names are rejected
    assert!(named_morphism("does-not-exist", &uu).is_err());
    // source mismatch is rejected
    assert!(named_morphism("psi", &s1).is_err());
}

#[test]
fn h_roundtrip_and_induced_form() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let x = random_pair(DiagramId::P2, &mut rng);
        let h = named_morphism("h", &x).unwrap();
        let back = named_morphism("h-inv", &h).unwrap();
        assert_eq!(back, x);
    }

    // h as the induced map of the componentwise circle antipode, computed on
    // the concrete compatible pair (S⊗u, S*²⊗u)
    let x = AlgValue::pair(
        DiagramId::P2,
        AlgValue::flat(Element::s().tensor(&Element::u(1))),
        AlgValue::flat(Element::toeplitz(0, 2).tensor(&Element::u(1))),
    );
    let (_, rep) = pb_compat(&x, None).unwrap();
    assert!(rep.exact);
    let anti = Morphism::AntipodeFactor { factor: 1 };
    let induced = induced_map(&anti, &anti, &anti, &x, DiagramId::S3HHeegaard, 0.0).unwrap();
    let expected = AlgValue::pair(
        DiagramId::S3HHeegaard,
        AlgValue::flat(Element::s().tensor(&Element::u(-1))),
        AlgValue::flat(Element::toeplitz(0, 2).tensor(&Element::u(-1))),
    );
    assert_eq!(induced, expected);
    assert_eq!(named_morphism("h", &x).unwrap(), expected);
    let (_, rep) = pb_compat(&expected, None).unwrap();
    assert!(rep.exact);
}

#[test]
fn induced_map_preserves_compatibility() {
    // f : P₅ → C(S⁵_H) via the induced-map machinery, with the commuting
    // squares checked on the element's support
    let mut rng = StdRng::seed_from_u64(11);
    let omega_tensor_unit = Morphism::Compose(vec![
        Morphism::OmegaSmall,
        Morphism::Pair {
            first: Box::new(Morphism::AppendUnit { kind: Factor::Toeplitz }),
            second: Box::new(Morphism::AppendUnit { kind: Factor::Toeplitz }),
            target: DiagramId::S3HxT,
        },
    ]);
    let phi12 = Morphism::Pair {
        first: Box::new(Morphism::Identity),
        second: Box::new(Morphism::InsertUnit { pos: 1, kind: Factor::Toeplitz }),
        target: DiagramId::S3HxC,
    };
    for _ in 0..10 {
        let x = random_pair(DiagramId::P5, &mut rng);
        let (x, rep) = pb_compat(&x, None).unwrap();
        assert!(rep.exact);
        let image = induced_map(
            &omega_tensor_unit,
            &Morphism::Pr2,
            &phi12,
            &x,
            DiagramId::S5H,
            0.0,
        )
        .unwrap();
        let (_, rep) = pb_compat(&image, None).unwrap();
        assert_eq!(rep.defect, 0.0, "induced image must stay compatible");
        // and it agrees with the registered closed form
        assert_eq!(image, named_morphism("f", &x).unwrap());
    }
}

#[test]
fn induced_map_rejects_noncommuting_squares() {
    let x = registry().diagram(DiagramId::P2).generators()[1].clone();
    // mapping only one component by the antipode breaks the square
    let bad = induced_map(
        &Morphism::AntipodeFactor { factor: 1 },
        &Morphism::Identity,
        &Morphism::Identity,
        &x,
        DiagramId::S3HHeegaard,
        0.0,
    );
    assert!(bad.is_err());
}

#[test]
fn alpha_agrees_with_gauge_conjugation() {
    let route = Morphism::Compose(vec![
        Morphism::GaugeInv,
        Morphism::Permute { perm: vec![2, 0, 1] },
        Morphism::Symbol { factor: 1 },
        Morphism::Permute { perm: vec![0, 2, 1] },
        Morphism::Gauge,
    ]);
    let mut rng = StdRng::seed_from_u64(13);
    let sig = Signature::of(&[Factor::Toeplitz, Factor::Toeplitz, Factor::Circle]);
    for _ in 0..50 {
        let x = random_flat(&sig, &mut rng);
        let closed = Morphism::Alpha.apply(&x).unwrap();
        let conj = route.apply(&x).unwrap();
        assert_eq!(closed, conj);
    }
}

#[test]
fn chi_agrees_with_gauge_conjugation() {
    let comp1 = Morphism::Compose(vec![
        Morphism::GaugeInv,
        Morphism::Permute { perm: vec![0, 2, 1] },
        Morphism::Symbol { factor: 2 },
        Morphism::Gauge,
    ]);
    let comp2 = Morphism::Compose(vec![
        Morphism::GaugeInv,
        Morphism::Permute { perm: vec![2, 0, 1] },
        Morphism::Symbol { factor: 2 },
        Morphism::Permute { perm: vec![1, 0, 2] },
        Morphism::Gauge,
    ]);
    let route = Morphism::Pair {
        first: Box::new(comp1),
        second: Box::new(comp2),
        target: DiagramId::S3HxCR,
    };
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..30 {
        let x = random_pair(DiagramId::S3HxTR, &mut rng);
        assert_eq!(Morphism::Chi.apply(&x).unwrap(), route.apply(&x).unwrap());
    }
}

#[test]
fn omega_cap_agrees_with_gauge_conjugation() {
    use Factor::Toeplitz as T;
    let route = Morphism::Pair {
        first: Box::new(Morphism::Compose(vec![
            Morphism::GaugeInv,
            Morphism::AppendUnit { kind: T },
            Morphism::Permute { perm: vec![0, 2, 1] },
            Morphism::Gauge,
        ])),
        second: Box::new(Morphism::Compose(vec![
            Morphism::GaugeInv,
            Morphism::AppendUnit { kind: T },
            Morphism::AppendUnit { kind: T },
            Morphism::Permute { perm: vec![1, 2, 0] },
            Morphism::Gauge,
        ])),
        target: DiagramId::S3HxTR,
    };
    let mut rng = StdRng::seed_from_u64(19);
    for _ in 0..30 {
        let x = random_pair(DiagramId::SUq2R, &mut rng);
        assert_eq!(Morphism::OmegaCap.apply(&x).unwrap(), route.apply(&x).unwrap());
    }
    // the closed form on a generator-level input
    let gen = AlgValue::pair(
        DiagramId::SUq2R,
        AlgValue::flat(Element::s().tensor(&Element::u(1))),
        AlgValue::flat(Element::u(1)),
    );
    let out = Morphism::OmegaCap.apply(&gen).unwrap();
    let expected = AlgValue::pair(
        DiagramId::S3HxTR,
        AlgValue::flat(
            Element::s()
                .tensor(&Element::one(Signature::toeplitz(1)))
                .tensor(&Element::u(1)),
        ),
        AlgValue::flat(
            Element::one(Signature::toeplitz(1))
                .tensor(&Element::one(Signature::toeplitz(1)))
                .tensor(&Element::u(1)),
        ),
    );
    assert_eq!(out, expected);
}

#[test]
fn beta_agrees_with_gauge_conjugation() {
    use Factor::Circle as C;
    let leg = Morphism::Compose(vec![
        Morphism::GaugeInv,
        Morphism::AppendUnit { kind: C },
        Morphism::Gauge,
    ]);
    let route = Morphism::Pair {
        first: Box::new(leg.clone()),
        second: Box::new(leg),
        target: DiagramId::SUq2xCR,
    };
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..30 {
        let x = random_pair(DiagramId::SUq2R, &mut rng);
        assert_eq!(Morphism::Beta.apply(&x).unwrap(), route.apply(&x).unwrap());
    }
}

#[test]
fn large_glueing_diagram_commutes() {
    // (id⊗σ)∘(ω⊗1_T) = (ω⊗id)∘(id⊗1_{C(S¹)}) on the SU_q(2) generators
    use Factor::{Circle as C, Toeplitz as T};
    let lhs = Morphism::Compose(vec![
        Morphism::OmegaSmall,
        Morphism::Pair {
            first: Box::new(Morphism::AppendUnit { kind: T }),
            second: Box::new(Morphism::AppendUnit { kind: T }),
            target: DiagramId::S3HxT,
        },
        Morphism::Pair {
            first: Box::new(Morphism::Symbol { factor: 2 }),
            second: Box::new(Morphism::Symbol { factor: 2 }),
            target: DiagramId::S3HxC,
        },
    ]);
    let rhs = Morphism::Compose(vec![
        Morphism::Pair {
            first: Box::new(Morphism::AppendUnit { kind: C }),
            second: Box::new(Morphism::AppendUnit { kind: C }),
            target: DiagramId::SUq2xC,
        },
        Morphism::Pair {
            first: Box::new(Morphism::Identity),
            second: Box::new(Morphism::InsertUnit { pos: 1, kind: T }),
            target: DiagramId::S3HxC,
        },
    ]);
    let mut rng = StdRng::seed_from_u64(29);
    for g in registry().diagram(DiagramId::SUq2Cstar).generators() {
        assert_eq!(lhs.apply(&g).unwrap(), rhs.apply(&g).unwrap());
    }
    for _ in 0..20 {
        let x = random_pair(DiagramId::SUq2Cstar, &mut rng);
        assert_eq!(lhs.apply(&x).unwrap(), rhs.apply(&x).unwrap());
    }
}

#[test]
fn beta_tilde_example() {
    // β̃(t, c) = (t⁽⁰⁾⊗S(t⁽¹⁾), c·1): the corner projection maps to itself
    // tensored with 1, scalars to constants
    let x = AlgValue::pair(
        DiagramId::S2q,
        AlgValue::flat(Element::corner_projection()),
        AlgValue::flat(Element::scalar(Scalar::zero())),
    );
    let out = named_morphism("beta-tilde", &x).unwrap();
    let expected = AlgValue::pair(
        DiagramId::SUq2Cstar,
        AlgValue::flat(Element::corner_projection().tensor(&Element::u(0))),
        AlgValue::flat(Element::zero(Signature::circle(1))),
    );
    assert_eq!(out, expected);
    let (_, rep) = pb_compat(&out, None).unwrap();
    assert!(rep.exact);
}

#[test]
fn morphism_images_of_compatible_elements_are_compatible() {
    // ω, γ̂, β, Ω, Ω̃, χ, f land inside their target pullbacks
    let mut rng = StdRng::seed_from_u64(31);
    let cases: &[(&str, DiagramId)] = &[
        ("omega", DiagramId::SUq2Cstar),
        ("beta", DiagramId::SUq2R),
        ("Omega", DiagramId::SUq2R),
        ("Omega-tilde", DiagramId::S2q),
        ("beta-tilde", DiagramId::S2q),
        ("chi", DiagramId::S3HxTR),
        ("f", DiagramId::P5),
        ("h", DiagramId::P2),
    ];
    for (name, source) in cases {
        for _ in 0..10 {
            let x = random_pair(*source, &mut rng);
            let (x, rep) = pb_compat(&x, None).unwrap();
            assert!(rep.exact, "source sample for {name} must be compatible");
            let y = named_morphism(name, &x).unwrap();
            if let AlgValue::Pair(_) = y {
                let (_, rep) = pb_compat(&y, None).unwrap();
                assert_eq!(rep.defect, 0.0, "{name} image has compat defect");
            }
        }
    }
}
