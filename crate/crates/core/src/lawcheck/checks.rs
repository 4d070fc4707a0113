use rand::Rng;

use super::{Expectation, LawReport, Structure, Tally};
use crate::matcat::{
    assoc_iso, circle, injection, left_unit_iso, projection, projector_spectrum, right_unit_iso,
    BlockIndex, Matrix,
};
use crate::random::{random_matrix, random_swap_unitary, seeded};
use crate::scalars::{ScalarValue, SemiringTag};
use crate::tqft::{verify_frobenius, Interpretation};

fn c(ms: &[&Matrix]) -> Matrix {
    Matrix::compose_all(ms.iter().copied()).unwrap_or_else(|e| panic!("law instance is ill-shaped: {e}"))
}

fn t(a: &Matrix, b: &Matrix) -> Matrix {
    a.tensor(b).expect("tensor of same-semiring matrices")
}

fn holds(name: &str, anchor: &str, tag: SemiringTag) -> Tally {
    Tally::new(name, anchor, Expectation::Holds, tag.tolerance())
}

/// All tuples in `0..=n` of length `k`.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=n).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// Pentagon, triangle, `λ_I = ρ_I`, symmetry involution, the symmetry/unit
/// triangle and both hexagons, for every dimension tuple with entries at most
/// `n`. The skeleton is strict, so `α`, `λ`, `ρ` are identities and the
/// content lies in `σ`.
pub fn check_coherence(tag: SemiringTag, n: usize, st: &Structure) -> LawReport {
    let id = |k: usize| Matrix::identity(tag, k);
    let a = |x: usize, y: usize, z: usize| assoc_iso(tag, x, y, z);
    let s = |x: usize, y: usize| st.swap(tag, x, y);
    let mut report = LawReport::new(tag.tolerance());

    let mut pent = holds(
        "pentagon",
        "a_{AB,C,D} . a_{A,B,CD} = (a_{A,B,C} x 1) . a_{A,BC,D} . (1 x a_{B,C,D})",
        tag,
    );
    for v in tuples(n, 4) {
        let (p, q, r, u) = (v[0], v[1], v[2], v[3]);
        let lhs = c(&[&a(p, q, r * u), &a(p * q, r, u)]);
        let rhs = c(&[&t(&id(p), &a(q, r, u)), &a(p, q * r, u), &t(&a(p, q, r), &id(u))]);
        pent.compare(&lhs, &rhs, || format!("dims {v:?}"));
    }
    report.push(pent.finish());

    let mut tri = holds("triangle", "(1 x l_B) = a_{A,I,B} . (r_A x 1)", tag);
    let mut swap_inv = holds("symmetry_involution", "s_{B,A} . s_{A,B} = 1", tag);
    let mut swap_unit = holds("symmetry_unit", "s_{I,A} . l_A = r_A", tag);
    for v in tuples(n, 2) {
        let (p, q) = (v[0], v[1]);
        let lhs = t(&id(p), &left_unit_iso(tag, q));
        let rhs = c(&[&a(p, 1, q), &t(&right_unit_iso(tag, p), &id(q))]);
        tri.compare(&lhs, &rhs, || format!("dims {v:?}"));
        swap_inv.compare(&c(&[&s(q, p), &s(p, q)]), &id(p * q), || format!("dims {v:?}"));
    }
    for p in 0..=n {
        swap_unit.compare(
            &c(&[&s(1, p), &left_unit_iso(tag, p)]),
            &right_unit_iso(tag, p),
            || format!("dim {p}"),
        );
    }
    let mut unit = holds("unit_coincidence", "l_I = r_I", tag);
    unit.compare(&left_unit_iso(tag, 1), &right_unit_iso(tag, 1), || "I".into());

    let mut hex = holds(
        "hexagon",
        "a_{B,C,A} . s_{A,BC} . a_{A,B,C} = (1 x s_{A,C}) . a_{B,A,C} . (s_{A,B} x 1), and mirror",
        tag,
    );
    for v in tuples(n, 3) {
        let (p, q, r) = (v[0], v[1], v[2]);
        let lhs = c(&[&a(q, r, p), &s(p, q * r), &a(p, q, r)]);
        let rhs = c(&[&t(&id(q), &s(p, r)), &a(q, p, r), &t(&s(p, q), &id(r))]);
        hex.compare(&lhs, &rhs, || format!("first hexagon at dims {v:?}"));
        // inverse associators are transposes of the permutation matrices
        let ai = |x, y, z| a(x, y, z).transpose();
        let lhs = c(&[&ai(r, p, q), &s(p * q, r), &ai(p, q, r)]);
        let rhs = c(&[&t(&s(p, r), &id(q)), &ai(p, r, q), &t(&id(p), &s(q, r))]);
        hex.compare(&lhs, &rhs, || format!("second hexagon at dims {v:?}"));
    }
    report.push(tri.finish());
    report.push(unit.finish());
    report.push(swap_inv.finish());
    report.push(swap_unit.finish());
    report.push(hex.finish());
    report
}

/// Dimensions for random instances: the interpretation's object dimensions
/// together with 2 and 3, capped at 4.
fn sample_dims(interp: &Interpretation) -> Vec<usize> {
    let mut dims: Vec<usize> = interp.object_dims.values().copied().filter(|&d| d <= 4).collect();
    dims.extend([2, 3]);
    dims.sort_unstable();
    dims.dedup();
    dims
}

/// Naturality of `σ`, `α`, `λ`, `ρ` against random matrices between the
/// interpretation's dimensions, in the interpretation's semiring.
pub fn check_naturality_squares(
    interp: &Interpretation,
    samples: usize,
    seed: u64,
    st: &Structure,
) -> LawReport {
    let tag = interp.tag;
    let dims = sample_dims(interp);
    let mut rng = seeded(seed);
    let mut sym = holds("symmetry", "s_{B,D} . (f x g) = (g x f) . s_{A,C}", tag);
    let mut assoc = holds("associativity", "a . ((f x g) x h) = (f x (g x h)) . a", tag);
    let mut left = holds("left_unit", "l_B . f = (1_I x f) . l_A", tag);
    let mut right = holds("right_unit", "r_B . f = (f x 1_I) . r_A", tag);
    let id1 = Matrix::identity(tag, 1);
    for _ in 0..samples {
        let mut pick = || dims[rng.gen_range(0..dims.len())];
        let (a, b, cc, d, e, g) = (pick(), pick(), pick(), pick(), pick(), pick());
        let f = random_matrix(&mut rng, tag, b, a);
        let gm = random_matrix(&mut rng, tag, d, cc);
        let h = random_matrix(&mut rng, tag, g, e);
        sym.compare(
            &c(&[&st.swap(tag, b, d), &t(&f, &gm)]),
            &c(&[&t(&gm, &f), &st.swap(tag, a, cc)]),
            || format!("f: {a}->{b}, g: {cc}->{d}"),
        );
        assoc.compare(
            &c(&[&assoc_iso(tag, b, d, g), &t(&t(&f, &gm), &h)]),
            &c(&[&t(&f, &t(&gm, &h)), &assoc_iso(tag, a, cc, e)]),
            || format!("f: {a}->{b}, g: {cc}->{d}, h: {e}->{g}"),
        );
        left.compare(
            &c(&[&left_unit_iso(tag, b), &f]),
            &c(&[&t(&id1, &f), &left_unit_iso(tag, a)]),
            || format!("f: {a}->{b}"),
        );
        right.compare(
            &c(&[&right_unit_iso(tag, b), &f]),
            &c(&[&t(&f, &id1), &right_unit_iso(tag, a)]),
            || format!("f: {a}->{b}"),
        );
    }
    let mut report = LawReport::new(tag.tolerance()).with_seed(seed);
    for tally in [sym, assoc, left, right] {
        report.push(tally.finish());
    }
    report
}

/// Commutativity of scalars and the two scalar-multiplication laws, with
/// `s • f` computed as the Kronecker product `s ⊗ f`.
pub fn check_scalar_laws(tag: SemiringTag, samples: usize, seed: u64) -> LawReport {
    let mut rng = seeded(seed);
    let mut comm = holds("commutativity", "s . t = t . s", tag);
    let mut comp = holds("composition", "(t g) . (s f) = (t . s)(g . f)", tag);
    let mut tens = holds("tensor", "(s f) x (t g) = (s . t)(f x g)", tag);
    for _ in 0..samples {
        let s = random_matrix(&mut rng, tag, 1, 1);
        let u = random_matrix(&mut rng, tag, 1, 1);
        let (a, b, d) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let f = random_matrix(&mut rng, tag, b, a);
        let g = random_matrix(&mut rng, tag, d, b);
        comm.compare(&c(&[&s, &u]), &c(&[&u, &s]), || format!("s = {}, t = {}", s.get(0, 0), u.get(0, 0)));
        comp.compare(
            &c(&[&t(&u, &g), &t(&s, &f)]),
            &t(&c(&[&u, &s]), &c(&[&g, &f])),
            || format!("f: {a}->{b}, g: {b}->{d}"),
        );
        tens.compare(
            &t(&t(&s, &f), &t(&u, &g)),
            &t(&c(&[&s, &u]), &t(&f, &g)),
            || format!("f: {a}->{b}, g: {b}->{d}"),
        );
    }
    let mut report = LawReport::new(tag.tolerance()).with_seed(seed);
    for tally in [comm, comp, tens] {
        report.push(tally.finish());
    }
    report
}

/// The interchange law `(g ⊗ k) ∘ (f ⊗ h) = (g ∘ f) ⊗ (k ∘ h)` on random
/// matrices with dimensions up to `max_dim`.
pub fn check_interchange(tag: SemiringTag, samples: usize, max_dim: usize, seed: u64) -> LawReport {
    let mut rng = seeded(seed);
    let mut tally = holds("interchange", "(g x k) . (f x h) = (g . f) x (k . h)", tag);
    for _ in 0..samples {
        let mut d = || rng.gen_range(0..=max_dim);
        let (a, b, cc, p, q, r) = (d(), d(), d(), d(), d(), d());
        let f = random_matrix(&mut rng, tag, b, a);
        let g = random_matrix(&mut rng, tag, cc, b);
        let h = random_matrix(&mut rng, tag, q, p);
        let k = random_matrix(&mut rng, tag, r, q);
        tally.compare(
            &c(&[&t(&g, &k), &t(&f, &h)]),
            &t(&c(&[&g, &f]), &c(&[&k, &h])),
            || format!("f: {a}->{b}, g: {b}->{cc}, h: {p}->{q}, k: {q}->{r}"),
        );
    }
    let mut report = LawReport::new(tag.tolerance()).with_seed(seed);
    report.push(tally.finish());
    report
}

/// The dagger is an involutive, identity-on-objects, contravariant monoidal
/// functor and makes the symmetry unitary.
pub fn check_dagger_laws(tag: SemiringTag, samples: usize, seed: u64, st: &Structure) -> LawReport {
    let mut rng = seeded(seed);
    let mut contra = holds("contravariance", "(g . f)^dg = f^dg . g^dg", tag);
    let mut invol = holds("involution", "f^dg^dg = f", tag);
    let mut mono = holds("monoidal", "(f x g)^dg = f^dg x g^dg", tag);
    let mut unitary = holds("unitary_symmetry", "s_{A,B}^dg = s_{B,A}", tag);
    for _ in 0..samples {
        let mut d = || rng.gen_range(0..=3);
        let (a, b, cc) = (d(), d(), d());
        let f = random_matrix(&mut rng, tag, b, a);
        let g = random_matrix(&mut rng, tag, cc, b);
        contra.compare(&c(&[&g, &f]).dagger(), &c(&[&f.dagger(), &g.dagger()]), || {
            format!("f: {a}->{b}, g: {b}->{cc}")
        });
        invol.compare(&f.dagger().dagger(), &f, || format!("f: {a}->{b}"));
        mono.compare(&t(&f, &g).dagger(), &t(&f.dagger(), &g.dagger()), || {
            format!("f: {a}->{b}, g: {b}->{cc}")
        });
        unitary.compare(&st.swap(tag, a, b).dagger(), &st.swap(tag, b, a), || {
            format!("dims ({a}, {b})")
        });
    }
    let mut report = LawReport::new(tag.tolerance()).with_seed(seed);
    for tally in [contra, invol, mono, unitary] {
        report.push(tally.finish());
    }
    report
}

/// Snake equations, `η = σ ∘ ε†`, and the loop `ε ∘ σ ∘ η = dim` for every
/// dimension up to `n`.
pub fn check_compact(tag: SemiringTag, n: usize, st: &Structure) -> LawReport {
    let mut snake = holds("snake", "(eps x 1) . (1 x eta) = 1 = (1 x eps) . (eta x 1)", tag);
    let mut dag = holds("dagger_compact", "eta = s . eps^dg", tag);
    let mut loop_ = holds("loop", "eps . s . eta = dim", tag);
    for d in 0..=n {
        let id = Matrix::identity(tag, d);
        let (eta, eps) = (st.eta(tag, d), st.eps(tag, d));
        snake.compare(&c(&[&t(&eps, &id), &t(&id, &eta)]), &id, || format!("left snake at dim {d}"));
        snake.compare(&c(&[&t(&id, &eps), &t(&eta, &id)]), &id, || format!("right snake at dim {d}"));
        dag.compare(&eta, &c(&[&st.swap(tag, d, d), &eps.dagger()]), || format!("dim {d}"));
        let l = c(&[&eps, &st.swap(tag, d, d), &eta]);
        loop_.compare(&l, &Matrix::scalar(&circle(tag, d)), || format!("dim {d}"));
        let expected = ScalarValue::new(tag, tag.from_count(d as u64)).expect("same semiring");
        loop_.compare(&l, &Matrix::scalar(&expected), || format!("dim {d}"));
    }
    let mut report = LawReport::new(tag.tolerance());
    for tally in [snake, dag, loop_] {
        report.push(tally.finish());
    }
    report
}

/// `π_i ∘ ι_j = δ_ij` and `ι_1 π_1 + ι_2 π_2 = 1` for every split with total
/// at most `max_total`.
pub fn check_biproducts(tag: SemiringTag, max_total: usize) -> LawReport {
    let mut proj = holds("projections", "p_i . i_j = delta_ij", tag);
    let mut sum = holds("sum", "i_1 . p_1 + i_2 . p_2 = 1", tag);
    for total in 0..=max_total {
        for k in 0..=total {
            let sizes = (k, total - k);
            let blocks = [BlockIndex::first(sizes), BlockIndex::second(sizes)];
            for (i, bi) in blocks.iter().enumerate() {
                for (j, bj) in blocks.iter().enumerate() {
                    let m = c(&[&projection(tag, *bi), &injection(tag, *bj)]);
                    let expected = if i == j {
                        Matrix::identity(tag, m.rows())
                    } else {
                        Matrix::zero(tag, m.rows(), m.cols())
                    };
                    proj.compare(&m, &expected, || format!("split {sizes:?}, ({i}, {j})"));
                }
            }
            let parts: Vec<Matrix> = blocks
                .iter()
                .map(|b| c(&[&injection(tag, *b), &projection(tag, *b)]))
                .collect();
            let s = parts[0].add(&parts[1]).expect("same shape");
            sum.compare(&s, &Matrix::identity(tag, total), || format!("split {sizes:?}"));
        }
    }
    let mut report = LawReport::new(tag.tolerance());
    report.push(proj.finish());
    report.push(sum.finish());
    report
}

/// Projector spectra of random unitaries built from swaps: the projectors
/// sum to the identity, are idempotent, self-adjoint and mutually orthogonal.
pub fn check_spectra(samples: usize, seed: u64) -> LawReport {
    let tag = SemiringTag::COMPLEX;
    let mut rng = seeded(seed);
    let mut complete = holds("completeness", "P_1 + P_2 = 1", tag);
    let mut idem = holds("idempotent", "P_i . P_i = P_i", tag);
    let mut adj = holds("self_adjoint", "P_i^dg = P_i", tag);
    let mut orth = holds("orthogonal", "P_1 . P_2 = 0", tag);
    for _ in 0..samples {
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let u = random_swap_unitary(&mut rng, a, b);
        let n = a * b;
        let k = rng.gen_range(0..=n);
        let ps = projector_spectrum(&u, (k, n - k)).expect("unitary by construction");
        let what = || format!("{n}x{n} unitary, split ({k}, {})", n - k);
        complete.compare(&ps[0].add(&ps[1]).expect("same shape"), &Matrix::identity(tag, n), what);
        for p in &ps {
            idem.compare(&c(&[p, p]), p, what);
            adj.compare(&p.dagger(), p, what);
        }
        orth.compare(&c(&[&ps[0], &ps[1]]), &Matrix::zero(tag, n, n), what);
    }
    let mut report = LawReport::new(tag.tolerance()).with_seed(seed);
    for tally in [complete, idem, adj, orth] {
        report.push(tally.finish());
    }
    report
}

/// The Frobenius laws for the copy structure of the standard basis, in every
/// dimension up to `max_d`.
pub fn check_frobenius_structure(tag: SemiringTag, max_d: usize, st: &Structure) -> LawReport {
    let mut report = LawReport::new(tag.tolerance());
    for d in 0..=max_d {
        let mut r = verify_frobenius(&st.basis_frobenius(d, tag));
        for e in &mut r.entries {
            if let Some(w) = &mut e.witness {
                *w = format!("{w}, {} semiring", tag.kind());
            }
        }
        report.merge(r);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lawcheck::Fault;
    use crate::scalars::SemiringKind;

    const TAGS: [SemiringTag; 3] = [SemiringTag::BOOLEAN, SemiringTag::COMPLEX, SemiringTag::NATURAL];

    #[test]
    fn coherence_holds() {
        for tag in TAGS {
            let r = check_coherence(tag, 3, &Structure::default());
            assert!(r.all_pass(), "{r}");
            assert_eq!(r.entries.len(), 6);
        }
    }

    #[test]
    fn hexagon_oracle_at_232() {
        // independent check: σ_{A,B⊗C} sends (a,b,c) to (b,c,a)
        let tag = SemiringTag::COMPLEX;
        let (p, q, r) = (2, 3, 2);
        let st = Structure::default();
        let image: Vec<usize> = (0..p * q * r)
            .map(|x| {
                let (a, b, cc) = (x / (q * r), (x / r) % q, x % r);
                (b * r + cc) * p + a
            })
            .collect();
        assert_eq!(st.swap(tag, p, q * r), Matrix::permutation(tag, &image));
        let rhs = c(&[
            &t(&Matrix::identity(tag, q), &st.swap(tag, p, r)),
            &t(&st.swap(tag, p, q), &Matrix::identity(tag, r)),
        ]);
        assert_eq!(rhs, Matrix::permutation(tag, &image));
    }

    #[test]
    fn naturality_holds_and_detects_transposed_swap() {
        for tag in TAGS {
            let interp = Interpretation::new(tag).with_object("A", 2).with_object("B", 3);
            let r = check_naturality_squares(&interp, 100, 5, &Structure::default());
            assert!(r.all_pass(), "{r}");
            let bad = check_naturality_squares(&interp, 100, 5, &Structure::faulty(Fault::TransposedSwap));
            let sym = bad.entry("symmetry").unwrap();
            assert!(!sym.pass, "{bad}");
            assert!(sym.witness.is_some());
        }
    }

    #[test]
    fn scalar_laws_interchange_dagger_compact_biproducts() {
        for tag in TAGS {
            assert!(check_scalar_laws(tag, 200, 1).all_pass());
            assert!(check_interchange(tag, 200, 4, 2).all_pass());
            assert!(check_dagger_laws(tag, 100, 3, &Structure::default()).all_pass());
            let r = check_compact(tag, 6, &Structure::default());
            assert!(r.all_pass(), "{r}");
            assert!(check_biproducts(tag, 8).all_pass());
        }
    }

    #[test]
    fn spectra_hold() {
        let r = check_spectra(50, 9);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn basis_frobenius_holds_up_to_five() {
        for tag in TAGS {
            let r = check_frobenius_structure(tag, 5, &Structure::default());
            assert!(r.all_pass(), "{r}");
        }
    }

    #[test]
    fn eta_fault_breaks_snake() {
        for r in 0..4 {
            let rep = check_compact(SemiringTag::BOOLEAN, 3, &Structure::faulty(Fault::EtaEntry(r)));
            assert!(!rep.entry("snake").unwrap().pass, "entry {r}\n{rep}");
        }
        let _ = SemiringKind::Boolean;
    }
}
