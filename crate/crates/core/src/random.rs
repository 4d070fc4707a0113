//! Seeded random instances for property tests and the law harness: matrices,
//! unitaries, well-typed diagram terms, and equality-preserving rewrites.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{transpose, DiagramTerm, Factor, ObjectWord, Signature};
use crate::matcat::{swap_matrix, Matrix};
use crate::scalars::{Scalar, SemiringKind, SemiringTag};
use crate::tqft::{basis_frobenius, Interpretation};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar<R: Rng>(rng: &mut R, tag: SemiringTag) -> Scalar {
    match tag.kind() {
        SemiringKind::Boolean => Scalar::Bool(rng.gen_bool(0.5)),
        SemiringKind::Natural => Scalar::nat(rng.gen_range(0..4)),
        SemiringKind::Complex => Scalar::complex(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, tag: SemiringTag, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(tag, rows, cols, |_, _| random_scalar(rng, tag))
}

/// A complex matrix near `2·id`, hence invertible.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    Matrix::from_fn(SemiringTag::COMPLEX, n, n, |i, j| {
        let base = if i == j { 2.0 } else { 0.0 };
        Scalar::complex(base + rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
    })
}

fn rotation<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let tag = SemiringTag::COMPLEX;
    let mut u = Matrix::identity(tag, n);
    for i in 0..n.saturating_sub(1) {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (c, s) = (theta.cos(), theta.sin());
        let g = Matrix::from_fn(tag, n, n, |r, col| {
            let v = match (r, col) {
                _ if r == i && col == i => c,
                _ if r == i + 1 && col == i + 1 => c,
                _ if r == i && col == i + 1 => -s,
                _ if r == i + 1 && col == i => s,
                _ if r == col => 1.0,
                _ => 0.0,
            };
            Scalar::complex(v, 0.0)
        });
        u = g.compose(&u).expect("square");
    }
    u
}

fn phases<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    Matrix::from_fn(SemiringTag::COMPLEX, n, n, |i, j| {
        if i == j {
            let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            Scalar::Complex(Complex64::from_polar(1.0, a))
        } else {
            Scalar::complex(0.0, 0.0)
        }
    })
}

/// A unitary on `a ⊗ b` built from local rotations, a swap `σ_{b,a}` and
/// diagonal phases.
pub fn random_swap_unitary<R: Rng>(rng: &mut R, a: usize, b: usize) -> Matrix {
    let tag = SemiringTag::COMPLEX;
    let first = rotation(rng, b)
        .tensor(&Matrix::identity(tag, a))
        .expect("tensor");
    let second = rotation(rng, a)
        .tensor(&Matrix::identity(tag, b))
        .expect("tensor");
    Matrix::compose_all([
        &phases(rng, a * b),
        &second,
        &swap_matrix(tag, b, a),
        &first,
        &phases(rng, a * b),
    ])
    .expect("shapes agree")
}

/// A signature exercising every constructor: a plain object `A`, a
/// self-dual object `B`, a frobenius object `X`, boxes of assorted types,
/// two scalars and a dagger pair `g`/`gd`.
pub fn zoo_signature() -> Signature {
    let mut s = Signature::new();
    s.add_atom("A", false, false).expect("fresh");
    s.add_atom("B", false, true).expect("fresh");
    s.add_atom("X", true, true).expect("fresh");
    let w = |names: &[&str]| {
        ObjectWord(
            names
                .iter()
                .map(|n| match n.strip_suffix('*') {
                    Some(a) => Factor::dual(a),
                    None => Factor::plain(*n),
                })
                .collect(),
        )
    };
    let gens: [(&str, &[&str], &[&str]); 11] = [
        ("f", &["A"], &["A"]),
        ("g", &["A"], &["B"]),
        ("gd", &["B"], &["A"]),
        ("h", &["B"], &["A", "A"]),
        ("k", &["A", "B"], &["X"]),
        ("s", &[], &[]),
        ("t", &[], &[]),
        ("p", &[], &["B"]),
        ("q", &["B", "A"], &[]),
        ("r", &["A*"], &["A"]),
        ("m", &["X"], &["X", "B"]),
    ];
    for (name, dom, cod) in gens {
        s.add_generator(name, w(dom), w(cod)).expect("valid");
    }
    s.set_dagger_partner("g", "gd").expect("types mirror");
    s
}

/// Random matrices for the zoo, with dims A = 2, B = 3, X = 2 and the basis
/// Frobenius structure on X.
pub fn zoo_interpretation<R: Rng>(rng: &mut R, tag: SemiringTag) -> Interpretation {
    let sig = zoo_signature();
    let mut i = Interpretation::new(tag)
        .with_object("A", 2)
        .with_object("B", 3)
        .with_frobenius("X", basis_frobenius(2, tag));
    for g in sig.generators() {
        if g.name == "gd" {
            continue;
        }
        let rows = i.word_dim(&g.cod).expect("dims");
        let cols = i.word_dim(&g.dom).expect("dims");
        let m = random_matrix(rng, tag, rows, cols);
        if g.name == "g" {
            i = i.with_generator("gd", m.dagger());
        }
        i = i.with_generator(&g.name, m);
    }
    i
}

/// One layer of parallel pieces consuming `word`.
fn random_layer<R: Rng>(rng: &mut R, sig: &Signature, word: &ObjectWord, max_width: usize) -> DiagramTerm {
    let factors = word.factors();
    let n = factors.len();
    let mut pieces = Vec::new();
    let mut width = n;
    let mut i = 0;
    let frob: Vec<String> = sig
        .atoms()
        .iter()
        .filter(|a| a.frobenius)
        .map(|a| a.name.clone())
        .collect();
    loop {
        if width < max_width && rng.gen_bool(0.15) {
            pieces.push(random_state(rng, sig, &frob));
            width += 2;
        }
        if i >= n {
            break;
        }
        let mut options: Vec<(DiagramTerm, usize)> = vec![(DiagramTerm::Id(ObjectWord(vec![factors[i].clone()])), 1); 2];
        for g in sig.generators() {
            let (dl, cl) = (g.dom.len(), g.cod.len());
            if dl > 0 && factors[i..].starts_with(g.dom.factors()) {
                options.push((DiagramTerm::gen(g.name.as_str()), dl));
            }
            if cl > 0 && factors[i..].starts_with(g.cod.factors()) {
                options.push((DiagramTerm::dagger(DiagramTerm::gen(g.name.as_str())), cl));
            }
        }
        if i + 1 < n {
            options.push((
                DiagramTerm::swap(
                    ObjectWord(vec![factors[i].clone()]),
                    ObjectWord(vec![factors[i + 1].clone()]),
                ),
                2,
            ));
            let dual = sig.normalize_factor(&factors[i].dualized()).expect("known atom");
            if dual == factors[i + 1] {
                options.push((DiagramTerm::Cap(factors[i].clone()), 2));
            }
        }
        if frob.contains(&factors[i].atom) {
            let run = factors[i..]
                .iter()
                .take_while(|f| f.atom == factors[i].atom)
                .count()
                .min(3);
            let k = rng.gen_range(1..=run);
            let l = if width > max_width { rng.gen_range(0..=1) } else { rng.gen_range(0..=2) };
            options.push((DiagramTerm::spider(&factors[i].atom, k, l), k));
        }
        let (piece, used) = options.choose(rng).expect("identity always applies").clone();
        i += used;
        pieces.push(piece);
    }
    DiagramTerm::par_all(pieces)
}

/// A random piece with empty domain.
fn random_state<R: Rng>(rng: &mut R, sig: &Signature, frob: &[String]) -> DiagramTerm {
    let atoms = sig.atoms();
    match rng.gen_range(0..4) {
        0 => {
            let a = &atoms[rng.gen_range(0..atoms.len())];
            let f = if rng.gen_bool(0.5) && !a.self_dual {
                Factor::dual(a.name.as_str())
            } else {
                Factor::plain(a.name.as_str())
            };
            DiagramTerm::Cup(f)
        }
        1 if !frob.is_empty() => {
            DiagramTerm::spider(&frob[rng.gen_range(0..frob.len())], 0, rng.gen_range(1..=2))
        }
        _ => {
            let states: Vec<&str> = sig
                .generators()
                .iter()
                .filter(|g| g.dom.is_unit())
                .map(|g| g.name.as_str())
                .collect();
            match states.choose(rng) {
                Some(name) => DiagramTerm::gen(*name),
                None => DiagramTerm::Id(ObjectWord::unit()),
            }
        }
    }
}

/// A random well-typed term with domain `dom`, built from `layers` layers.
pub fn random_term<R: Rng>(rng: &mut R, sig: &Signature, dom: &ObjectWord, layers: usize) -> DiagramTerm {
    let mut t = random_layer(rng, sig, dom, 6);
    for _ in 1..layers {
        let (_, cod) = t.typecheck(sig).expect("layers are well typed");
        let next = random_layer(rng, sig, &cod, 6);
        t = t.then(next);
    }
    t
}

/// A random 2-cobordism `X^inputs -> X^outputs` on the frobenius atom `x`,
/// built from identities, twists, (co)units, (co)multiplications and bends.
pub fn random_cob_term<R: Rng>(
    rng: &mut R,
    x: &str,
    inputs: usize,
    outputs: usize,
    layers: usize,
) -> DiagramTerm {
    let id = || DiagramTerm::id_atom(x);
    let one = || ObjectWord::atom(x);
    let mut width = inputs;
    let mut t = DiagramTerm::id(ObjectWord::power(x, inputs));
    for _ in 0..layers {
        let mut pieces = Vec::new();
        let mut i = 0;
        let mut new_width = 0;
        while i < width || (i == width && rng.gen_bool(0.1)) {
            let left = width - i;
            let choice = rng.gen_range(0..10);
            let (piece, used, made) = match choice {
                0 if left >= 2 => (DiagramTerm::mu(x), 2, 1),
                1 if left >= 1 && width < 6 => (DiagramTerm::delta(x), 1, 2),
                2 if left >= 1 && width > 1 => (DiagramTerm::counit(x), 1, 0),
                3 if width < 6 => (DiagramTerm::unit(x), 0, 1),
                4 if left >= 2 => (DiagramTerm::swap(one(), one()), 2, 2),
                5 if width < 5 => (DiagramTerm::cup(x), 0, 2),
                6 if left >= 2 => (DiagramTerm::cap(x), 2, 0),
                _ if left >= 1 => (id(), 1, 1),
                _ => (DiagramTerm::unit(x), 0, 1),
            };
            pieces.push(piece);
            i += used;
            new_width += made;
        }
        t = t.then(DiagramTerm::par_all(pieces));
        width = new_width;
    }
    // close up to the requested arity
    while width != outputs {
        let step = if width > outputs {
            if width >= 2 {
                DiagramTerm::par(DiagramTerm::mu(x), DiagramTerm::id(ObjectWord::power(x, width - 2)))
            } else {
                DiagramTerm::counit(x)
            }
        } else if width >= 1 {
            DiagramTerm::par(DiagramTerm::delta(x), DiagramTerm::id(ObjectWord::power(x, width - 1)))
        } else {
            DiagramTerm::unit(x)
        };
        width = if width > outputs {
            if width >= 2 {
                width - 1
            } else {
                0
            }
        } else {
            width + 1
        };
        t = t.then(step);
    }
    t
}

/// Which equalities a rewrite may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axioms {
    /// The axioms of a dagger compact category: graph equality is preserved.
    Structural,
    /// Structural axioms plus commutative Frobenius laws (no speciality):
    /// cobordism class is preserved.
    Frobenius,
}

/// Applies one random axiom at a random position; returns the input unchanged
/// when nothing applies after a number of attempts.
pub fn rewrite_once<R: Rng>(rng: &mut R, t: &DiagramTerm, sig: &Signature, axioms: Axioms) -> DiagramTerm {
    for _ in 0..32 {
        let mut out = t.clone();
        let target = rng.gen_range(0..t.size());
        let mut counter = target;
        let sub = nth_subterm(&mut out, &mut counter).expect("index in range");
        if let Some(new) = rewrite_here(rng, sub, sig, axioms) {
            *sub = new;
            return out;
        }
    }
    t.clone()
}

/// `steps` successive random rewrites.
pub fn rewrite_many<R: Rng>(
    rng: &mut R,
    t: &DiagramTerm,
    sig: &Signature,
    axioms: Axioms,
    steps: usize,
) -> DiagramTerm {
    let mut cur = t.clone();
    for _ in 0..steps {
        cur = rewrite_once(rng, &cur, sig, axioms);
    }
    cur
}

fn nth_subterm<'a>(t: &'a mut DiagramTerm, n: &mut usize) -> Option<&'a mut DiagramTerm> {
    if *n == 0 {
        return Some(t);
    }
    *n -= 1;
    match t {
        DiagramTerm::Seq(a, b) | DiagramTerm::Par(a, b) => {
            let size = a.size();
            if *n < size {
                nth_subterm(a, n)
            } else {
                *n -= size;
                nth_subterm(b, n)
            }
        }
        DiagramTerm::Dagger(a) => nth_subterm(a, n),
        _ => None,
    }
}

fn rewrite_here<R: Rng>(rng: &mut R, t: &DiagramTerm, sig: &Signature, axioms: Axioms) -> Option<DiagramTerm> {
    use DiagramTerm as T;
    let (dom, cod) = t.typecheck(sig).ok()?;
    let rule_count = if axioms == Axioms::Frobenius { 22 } else { 16 };
    let mut rules: Vec<usize> = (0..rule_count).collect();
    rules.shuffle(rng);
    for rule in rules {
        let out = match (rule, t) {
            (0, T::Seq(x, y)) => match (&**x, &**y) {
                (T::Seq(a, b), c) if rng.gen_bool(0.5) || !matches!(c, T::Seq(..)) => {
                    Some(T::seq((**a).clone(), T::seq((**b).clone(), c.clone())))
                }
                (a, T::Seq(b, c)) => Some(T::seq(T::seq(a.clone(), (**b).clone()), (**c).clone())),
                _ => None,
            },
            (1, T::Par(x, y)) => match (&**x, &**y) {
                (T::Par(a, b), c) if rng.gen_bool(0.5) || !matches!(c, T::Par(..)) => {
                    Some(T::par((**a).clone(), T::par((**b).clone(), c.clone())))
                }
                (a, T::Par(b, c)) => Some(T::par(T::par(a.clone(), (**b).clone()), (**c).clone())),
                _ => None,
            },
            (2, _) => Some(match rng.gen_range(0..4) {
                0 => T::seq(T::Id(cod.clone()), t.clone()),
                1 => T::seq(t.clone(), T::Id(dom.clone())),
                2 => T::par(T::Id(ObjectWord::unit()), t.clone()),
                _ => T::par(t.clone(), T::Id(ObjectWord::unit())),
            }),
            (3, T::Seq(a, b)) => match (&**a, &**b) {
                (T::Id(_), x) | (x, T::Id(_)) => Some(x.clone()),
                _ => None,
            },
            (3, T::Par(a, b)) => match (&**a, &**b) {
                (T::Id(w), x) | (x, T::Id(w)) if w.is_unit() => Some(x.clone()),
                _ => None,
            },
            // interchange
            (4, T::Seq(top, bottom)) => match (&**top, &**bottom) {
                (T::Par(a, b), T::Par(c, d)) => {
                    let (_, cc) = c.typecheck(sig).ok()?;
                    let (da, _) = a.typecheck(sig).ok()?;
                    (cc == da).then(|| {
                        T::par(T::seq((**a).clone(), (**c).clone()), T::seq((**b).clone(), (**d).clone()))
                    })
                }
                _ => None,
            },
            (4, T::Par(l, r)) => match (&**l, &**r) {
                (T::Seq(a, c), T::Seq(b, d)) => Some(T::seq(
                    T::par((**a).clone(), (**b).clone()),
                    T::par((**c).clone(), (**d).clone()),
                )),
                _ => {
                    // slide one side past the other
                    let (dl, cl) = l.typecheck(sig).ok()?;
                    let (dr, cr) = r.typecheck(sig).ok()?;
                    Some(if rng.gen_bool(0.5) {
                        T::seq(T::par(T::Id(cl), (**r).clone()), T::par((**l).clone(), T::Id(dr)))
                    } else {
                        T::seq(T::par((**l).clone(), T::Id(cr)), T::par(T::Id(dl), (**r).clone()))
                    })
                }
            },
            (5, T::Id(w)) if w.len() >= 2 => {
                let cut = rng.gen_range(1..w.len());
                Some(T::par(
                    T::Id(ObjectWord(w.factors()[..cut].to_vec())),
                    T::Id(ObjectWord(w.factors()[cut..].to_vec())),
                ))
            }
            (5, T::Par(a, b)) => match (&**a, &**b) {
                (T::Id(v), T::Id(w)) => Some(T::Id(v.tensor(w))),
                _ => None,
            },
            // symmetry is natural
            (6, T::Par(a, b)) => {
                let (da, ca) = a.typecheck(sig).ok()?;
                let (db, cb) = b.typecheck(sig).ok()?;
                Some(
                    T::swap(da, db)
                        .then(T::par((**b).clone(), (**a).clone()))
                        .then(T::swap(cb, ca)),
                )
            }
            // symmetry is an involution
            (7, T::Id(w)) if w.len() >= 2 => {
                let cut = rng.gen_range(1..w.len());
                let (x, y) = (
                    ObjectWord(w.factors()[..cut].to_vec()),
                    ObjectWord(w.factors()[cut..].to_vec()),
                );
                Some(T::swap(x.clone(), y.clone()).then(T::swap(y, x)))
            }
            // snake equations
            (8, T::Id(w)) if w.len() == 1 => {
                let f = w.factors()[0].clone();
                let fd = sig.normalize_factor(&f.dualized()).ok()?;
                let one = T::Id(w.clone());
                Some(if rng.gen_bool(0.5) {
                    T::par(one.clone(), T::Cup(f.clone())).then(T::par(T::Cap(f), one))
                } else {
                    T::par(T::Cup(fd.clone()), one.clone()).then(T::par(one, T::Cap(fd)))
                })
            }
            // dagger is a contravariant involutive functor
            (9, T::Dagger(inner)) => match &**inner {
                T::Seq(a, b) => Some(T::seq(T::dagger((**b).clone()), T::dagger((**a).clone()))),
                T::Par(a, b) => Some(T::par(T::dagger((**a).clone()), T::dagger((**b).clone()))),
                T::Dagger(a) => Some((**a).clone()),
                T::Swap(a, b) => Some(T::swap(b.clone(), a.clone())),
                T::Id(w) => Some(T::Id(w.clone())),
                T::Cup(f) => Some(T::Cap(sig.normalize_factor(&f.dualized()).ok()?)),
                T::Cap(f) => Some(T::Cup(sig.normalize_factor(&f.dualized()).ok()?)),
                T::Spider {
                    atom,
                    inputs,
                    outputs,
                } => Some(T::spider(atom, *outputs, *inputs)),
                T::Gen(_) => None,
            },
            (10, _) if t.size() < 12 => Some(T::dagger(T::dagger(t.clone()))),
            (11, _) if dom.len() == 1 && cod.len() == 1 && t.size() < 12 => {
                transpose(&transpose(t, sig).ok()?, sig).ok()
            }
            // scalars float freely
            (12, T::Par(a, b)) if is_scalar(a, sig) || is_scalar(b, sig) => {
                Some(T::par((**b).clone(), (**a).clone()))
            }
            (13, T::Seq(a, b)) if is_scalar(a, sig) && is_scalar(b, sig) => {
                Some(if rng.gen_bool(0.5) {
                    T::par((**a).clone(), (**b).clone())
                } else {
                    T::seq((**b).clone(), (**a).clone())
                })
            }
            // sliding a box around a cup
            (14, T::Gen(_)) if dom.len() == 1 && cod.len() == 1 => {
                let a = dom.factors()[0].clone();
                let b = cod.factors()[0].clone();
                let ad = sig.normalize_factor(&a.dualized()).ok()?;
                let name = T::Cup(a.clone()).then(T::par(T::Id(ObjectWord(vec![ad])), t.clone()));
                Some(
                    T::par(T::Id(ObjectWord(vec![a.clone()])), name)
                        .then(T::par(T::Cap(a), T::Id(ObjectWord(vec![b])))),
                )
            }
            (15, T::Swap(a, b)) if a.len() + b.len() >= 3 => {
                // swap(a, b x c) = (id_b x swap(a, c)) . (swap(a, b) x id_c)
                if b.len() >= 2 {
                    let bb = ObjectWord(b.factors()[..1].to_vec());
                    let c = ObjectWord(b.factors()[1..].to_vec());
                    Some(
                        T::par(T::swap(a.clone(), bb.clone()), T::Id(c.clone()))
                            .then(T::par(T::Id(bb), T::swap(a.clone(), c))),
                    )
                } else {
                    let aa = ObjectWord(a.factors()[..1].to_vec());
                    let c = ObjectWord(a.factors()[1..].to_vec());
                    Some(
                        T::par(T::Id(aa.clone()), T::swap(c.clone(), b.clone()))
                            .then(T::par(T::swap(aa, b.clone()), T::Id(c))),
                    )
                }
            }
            _ if axioms == Axioms::Frobenius => frobenius_rule(rng, rule, t, sig),
            _ => None,
        };
        if out.is_some() {
            return out;
        }
    }
    None
}

fn is_scalar(t: &DiagramTerm, sig: &Signature) -> bool {
    matches!(t.typecheck(sig), Ok((d, c)) if d.is_unit() && c.is_unit())
}

fn frobenius_rule<R: Rng>(
    rng: &mut R,
    rule: usize,
    t: &DiagramTerm,
    sig: &Signature,
) -> Option<DiagramTerm> {
    use DiagramTerm as T;
    let is_frob = |atom: &str| sig.atom(atom).is_ok_and(|a| a.frobenius);
    let single_frob_atom = |w: &ObjectWord| match w.factors() {
        [f] if is_frob(&f.atom) => Some(f.atom.clone()),
        _ => None,
    };
    match (rule, t) {
        // unit and counit laws
        (16, T::Id(w)) => {
            let x = single_frob_atom(w)?;
            let id = T::id_atom(&x);
            Some(match rng.gen_range(0..4) {
                0 => T::par(T::unit(&x), id).then(T::mu(&x)),
                1 => T::par(id, T::unit(&x)).then(T::mu(&x)),
                2 => T::delta(&x).then(T::par(T::counit(&x), id)),
                _ => T::delta(&x).then(T::par(id, T::counit(&x))),
            })
        }
        // commutativity
        (17, T::Spider { atom, inputs, outputs }) if *inputs == 2 && *outputs == 1 => {
            let x = ObjectWord::atom(atom.as_str());
            Some(T::swap(x.clone(), x).then(t.clone()))
        }
        (17, T::Spider { atom, inputs, outputs }) if *inputs == 1 && *outputs == 2 => {
            let x = ObjectWord::atom(atom.as_str());
            Some(t.clone().then(T::swap(x.clone(), x)))
        }
        // spiders split along one wire; together with the above this gives
        // associativity and the Frobenius law
        (18, T::Spider { atom, inputs, outputs }) if *inputs >= 1 && *outputs >= 1 => {
            let mid = rng.gen_range(0..=1);
            Some(if mid == 0 {
                T::spider(atom, *inputs, 1).then(T::spider(atom, 1, *outputs))
            } else {
                // split off one leg on the far side
                let x = atom.as_str();
                if *inputs >= 2 {
                    T::par(T::spider(x, 2, 1), T::id(ObjectWord::power(x, inputs - 2)))
                        .then(T::spider(x, inputs - 1, *outputs))
                } else {
                    T::spider(x, 1, 1).then(t.clone())
                }
            })
        }
        // spiders fuse back
        (19, T::Seq(a, b)) => match (&**a, &**b) {
            (
                T::Spider { atom: x, inputs: 1, outputs: l },
                T::Spider { atom: y, inputs: k, outputs: 1 },
            ) if x == y => Some(T::spider(x, *k, *l)),
            _ => None,
        },
        // Frobenius law, both shapes
        (20, T::Seq(a, b)) => match (&**a, &**b) {
            (
                T::Spider { atom: x, inputs: 1, outputs: 2 },
                T::Spider { atom: y, inputs: 2, outputs: 1 },
            ) if x == y => {
                let id = T::id_atom(x);
                Some(if rng.gen_bool(0.5) {
                    T::par(T::delta(x), id.clone()).then(T::par(id, T::mu(x)))
                } else {
                    T::par(id.clone(), T::delta(x)).then(T::par(T::mu(x), id))
                })
            }
            _ => None,
        },
        // the frobenius cup is a spider
        (21, T::Cup(f)) if is_frob(&f.atom) => Some(T::spider(&f.atom, 0, 2)),
        (21, T::Cap(f)) if is_frob(&f.atom) => Some(T::spider(&f.atom, 2, 0)),
        _ => None,
    }
}
