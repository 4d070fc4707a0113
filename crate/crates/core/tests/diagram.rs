use catkit_core::diagram::{
    coname, graph_eq, name, parse, terms_equal, to_graph, transpose, DiagramTerm as T, Factor,
    ObjectWord, Signature,
};
use catkit_core::random::{random_term, rewrite_many, seeded, zoo_signature, Axioms};
use catkit_core::Error;
use proptest::prelude::*;
use rand::Rng;

fn w(s: &str) -> ObjectWord {
    ObjectWord::atom(s)
}

fn sig() -> Signature {
    let src = "
        object A; object B; object C; object D; object S selfdual;
        gen f : A -> B; gen g : B -> C; gen h : C -> D; gen k : D -> A;
        gen psi : I -> A; gen phi : I -> B;
        gen s : I -> I; gen t : I -> I;
        gen u : S -> S;
    ";
    parse(src).unwrap().signature
}

fn eq(a: &T, b: &T) -> bool {
    terms_equal(a, b, &sig()).unwrap()
}

#[test]
fn parse_dagger_composite() {
    let p = parse("gen f : A -> B; d = f >> dg(f);").unwrap();
    let d = p.diagram("d").unwrap();
    assert_eq!(*d, T::seq(T::dagger(T::gen("f")), T::gen("f")));
    assert_eq!(d.typecheck(&p.signature).unwrap(), (w("A"), w("A")));
}

#[test]
fn parse_identity_on_unit() {
    let p = parse("d = id(I);").unwrap();
    assert_eq!(*p.diagram("d").unwrap(), T::id(ObjectWord::unit()));
}

#[test]
fn parse_error_points_at_the_semicolon() {
    let Err(Error::Parse(e)) = parse("gen f : A -> B;\nd = f >>;") else {
        panic!("expected a syntax error");
    };
    assert_eq!((e.line, e.column), (2, 9));
    assert!(e.message.contains(";"), "{}", e.message);
}

#[test]
fn typing_of_composites_and_states() {
    let s = sig();
    assert_eq!(T::gen("f").then(T::gen("g")).typecheck(&s).unwrap(), (w("A"), w("C")));
    let pair = T::par(T::gen("psi"), T::gen("phi")).typecheck(&s).unwrap();
    assert_eq!(pair, (ObjectWord::unit(), w("A").tensor(&w("B"))));
    let Err(Error::Type(msg)) = T::gen("f").then(T::gen("h")).typecheck(&s) else {
        panic!("mismatch must be a type error");
    };
    assert!(msg.contains("B") && msg.contains("C"), "{msg}");
}

#[test]
fn interchange_law_is_graph_equality() {
    let (f, g, h, k) = (T::gen("f"), T::gen("g"), T::gen("h"), T::gen("k"));
    let lhs = T::par(f.clone().then(g.clone()), h.clone().then(k.clone()));
    let rhs = T::par(f, h).then(T::par(g, k));
    assert!(eq(&lhs, &rhs));
}

#[test]
fn snake_yanks_to_identity() {
    let a = Factor::plain("A");
    let snake = T::par(T::id_atom("A"), T::Cup(a.clone())).then(T::par(T::Cap(a), T::id_atom("A")));
    assert!(eq(&snake, &T::id_atom("A")));
}

#[test]
fn boxes_slide_through_crossings() {
    // σ ∘ (f ⊗ k) = (k ⊗ f) ∘ σ
    let lhs = T::par(T::gen("f"), T::gen("k")).then(T::swap(w("B"), w("A")));
    let rhs = T::swap(w("A"), w("D")).then(T::par(T::gen("k"), T::gen("f")));
    assert!(eq(&lhs, &rhs));
}

#[test]
fn scalars_commute_and_float() {
    let (s, t) = (T::gen("s"), T::gen("t"));
    assert!(eq(&s.clone().then(t.clone()), &t.clone().then(s.clone())));
    let d = T::gen("f");
    let lhs = T::par(s.clone().then(t.clone()), d.clone());
    let rhs = T::par(t.clone().then(s.clone()), d.clone());
    assert!(eq(&lhs, &rhs));
    assert!(eq(&T::par(d.clone(), s.clone()), &T::par(s, d)));
}

#[test]
fn tensor_order_matters() {
    let sig = parse("gen f : A -> B; gen g : C -> D;").unwrap().signature;
    let fg = to_graph(&T::par(T::gen("f"), T::gen("g")), &sig).unwrap();
    let gf = to_graph(&T::par(T::gen("g"), T::gen("f")), &sig).unwrap();
    assert!(!graph_eq(&fg, &gf));
    assert!(graph_eq(&fg, &fg));
}

#[test]
fn identity_on_unit_is_the_empty_picture() {
    assert!(to_graph(&T::id(ObjectWord::unit()), &sig()).unwrap().is_empty());
}

#[test]
fn name_coname_transpose() {
    let s = sig();
    assert!(eq(&name(&T::id_atom("A"), &s).unwrap(), &T::cup("A")));
    let tr = transpose(&T::id_atom("A"), &s).unwrap();
    assert!(eq(&tr, &T::id(ObjectWord(vec![Factor::dual("A")]))));
    // on a self-dual atom transposing twice is the identity operation
    let u = T::gen("u");
    assert!(eq(&transpose(&transpose(&u, &s).unwrap(), &s).unwrap(), &u));
    let Err(Error::Unsupported(_)) = name(&T::par(T::gen("f"), T::gen("g")), &s) else {
        panic!("multi-factor names are unsupported");
    };
}

#[test]
fn composition_through_name_and_coname() {
    // (⌊f⌋ ⊗ id) ∘ (id ⊗ ⌈g⌉) = g ∘ f
    let s = sig();
    let (f, g) = (T::gen("f"), T::gen("g"));
    let lhs = T::par(T::id_atom("A"), name(&g, &s).unwrap())
        .then(T::par(coname(&f, &s).unwrap(), T::id_atom("C")));
    assert_eq!(lhs.typecheck(&s).unwrap(), (w("A"), w("C")));
    assert!(eq(&lhs, &f.then(g)));
}

#[test]
fn dagger_flips_the_graph() {
    let s = sig();
    let t = T::par(T::gen("f").then(T::gen("g")), T::gen("psi"));
    let flipped = to_graph(&t, &s).unwrap().flipped();
    assert!(graph_eq(&to_graph(&T::dagger(t.clone()), &s).unwrap(), &flipped));
    assert!(eq(&T::dagger(T::dagger(t.clone())), &t));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn structural_rewrites_preserve_graph_equality(seed in any::<u64>()) {
        let sig = zoo_signature();
        let mut rng = seeded(seed);
        let doms = [w("A"), w("B"), ObjectWord::unit(), w("A").tensor(&w("B"))];
        let dom = &doms[rng.gen_range(0..doms.len())];
        let layers = rng.gen_range(1..4);
        let a = random_term(&mut rng, &sig, dom, layers);
        let b = rewrite_many(&mut rng, &a, &sig, Axioms::Structural, 10);
        prop_assert_eq!(a.typecheck(&sig).unwrap(), b.typecheck(&sig).unwrap());
        prop_assert!(terms_equal(&a, &b, &sig).unwrap(), "{} vs {}", a, b);
    }

    #[test]
    fn dagger_is_a_graph_flip(seed in any::<u64>()) {
        // no declared dagger partners, so every adjoint is a formal mark
        let sig = parse(
            "object X frobenius; object S selfdual; gen f : A -> A; gen h : B -> A x A; \
             gen q : B x A -> I; gen p : I -> B; gen s : I -> I; gen m : X -> X x S;",
        )
        .unwrap()
        .signature;
        let mut rng = seeded(seed);
        let a = random_term(&mut rng, &sig, &w("A"), 2);
        let g = to_graph(&a, &sig).unwrap();
        let gd = to_graph(&T::dagger(a.clone()), &sig).unwrap();
        prop_assert!(graph_eq(&gd, &g.flipped()));
        prop_assert!(graph_eq(&to_graph(&T::dagger(T::dagger(a)), &sig).unwrap(), &g));
    }
}
