//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use catkit_core::diagram::{graph_eq, parse, terms_equal, to_graph, DiagramTerm, ObjectWord, Signature};
use catkit_core::frobenius::{classify_cob, eq_cob, fuse, fuse_trace, spiderize};
use catkit_core::lawcheck::{
    check_biproducts, check_coherence, check_interchange, check_scalar_laws, check_spectra,
    negative_suite, Expectation, LawReport, Structure,
};
use catkit_core::matcat::{counit_eps, unit_eta, Matrix};
use catkit_core::random::{
    random_cob_term, random_invertible, random_term, rewrite_many, seeded, zoo_signature, Axioms,
};
use catkit_core::scalars::{Scalar, SemiringTag};
use catkit_core::tqft::{
    basis_frobenius, evaluate_cob, interpret, parse_interpretation, verify_frobenius,
    FrobeniusPresentation,
};
use num_complex::Complex64;
use rand::Rng;

/// Tolerance for complex comparisons; Boolean and natural comparisons are exact.
const TOL: f64 = 1e-9;
/// Relative tolerance for soundness checks under non-unitary presentations,
/// whose entries grow with the genus.
const REL_TOL: f64 = 1e-9;
const SEED: u64 = 2024;

const B: SemiringTag = SemiringTag::BOOLEAN;
const C: SemiringTag = SemiringTag::COMPLEX;
const N: SemiringTag = SemiringTag::NATURAL;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(r: &LawReport) -> Result<(), String> {
    ensure(r.all_as_expected(), || format!("unexpected law results:\n{r}"))
}

fn c(ms: &[&Matrix]) -> Matrix {
    Matrix::compose_all(ms.iter().copied()).unwrap()
}

fn t(a: &Matrix, b: &Matrix) -> Matrix {
    a.tensor(b).unwrap()
}

fn relative_deviation(a: &Matrix, b: &Matrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let scale = a
        .entries()
        .iter()
        .chain(b.entries())
        .map(|x| x.distance(&Scalar::complex(0.0, 0.0)))
        .fold(1.0, f64::max);
    a.max_deviation(b) / scale
}

/// Relational composition of pair sets, computed without matrices.
fn compose_pairs(r: &[(char, char)], s: &[(char, char)]) -> BTreeSet<(char, char)> {
    r.iter()
        .flat_map(|&(x, y)| s.iter().filter(move |&&(y2, _)| y2 == y).map(move |&(_, z)| (x, z)))
        .collect()
}

/// The 0/1 matrix of a relation given the element orderings of both sides.
fn rel_matrix(pairs: &BTreeSet<(char, char)>, dom: &[char], cod: &[char]) -> Matrix {
    Matrix::from_fn(B, cod.len(), dom.len(), |i, j| Scalar::Bool(pairs.contains(&(dom[j], cod[i]))))
}

fn criterion_1() -> Outcome {
    let r = [('a', 'c'), ('b', 'c'), ('a', 'd')];
    let r1 = [('c', 'e'), ('c', 'f'), ('d', 'f'), ('d', 'g')];
    let r2 = [('b', 'c'), ('b', 'd')];
    let src = "gen r : A -> B; gen r1 : B -> C; gen r2 : A -> B; comp = r >> r1;";
    let prog = parse(src).map_err(|e| e.to_string())?;
    let json = r#"{
        "semiring": "bool",
        "elements": {"A": ["a", "b"], "B": ["c", "d"], "C": ["e", "f", "g"]},
        "generators": {"r": "{(a,c),(b,c),(a,d)}", "r1": "{(c,e),(c,f),(d,f),(d,g)}", "r2": "{(b,c),(b,d)}"}
    }"#;
    let interp = parse_interpretation(json, &prog.signature).map_err(|e| e.to_string())?;
    let comp = interpret(prog.diagram("comp").unwrap(), &interp, &prog.signature).map_err(|e| e.to_string())?;
    let expected = Matrix::boolean(&[&[1, 1], &[1, 1], &[1, 0]]);
    ensure(comp == expected, || format!("R' . R = {comp}"))?;
    let oracle = rel_matrix(&compose_pairs(&r, &r1), &['a', 'b'], &['e', 'f', 'g']);
    ensure(comp == oracle, || "matrix product disagrees with relational composition".into())?;
    let sum = interp.gen_matrices["r"].add(&interp.gen_matrices["r2"]).unwrap();
    ensure(sum == Matrix::boolean(&[&[1, 1], &[1, 1]]), || format!("R + R'' = {sum}"))?;
    let union: BTreeSet<_> = r.iter().chain(&r2).copied().collect();
    ensure(sum == rel_matrix(&union, &['a', 'b'], &['c', 'd']), || "sum is not the union".into())?;
    Ok("R'.R = [[1,1],[1,1],[1,0]], R+R'' = [[1,1],[1,1]], exact".into())
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for tag in [B, N, C] {
        for n in 0..=6 {
            let id = Matrix::identity(tag, n);
            let (eta, eps) = (unit_eta(tag, n), counit_eps(tag, n));
            for m in [c(&[&t(&eps, &id), &t(&id, &eta)]), c(&[&t(&id, &eps), &t(&eta, &id)])] {
                let dev = m.max_deviation(&id);
                worst = worst.max(dev);
                ensure(dev <= tag.tolerance(), || format!("snake fails at n={n} over {}", tag.kind()))?;
            }
        }
    }
    Ok(format!("n = 0..6 over bool, nat, complex; max deviation {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    for tag in [B, C] {
        let r = check_interchange(tag, 500, 4, SEED);
        report_ok(&r)?;
    }
    let sig = zoo_signature();
    let mut rng = seeded(SEED);
    let words = [ObjectWord::atom("A"), ObjectWord::atom("B"), ObjectWord::unit()];
    let mut equal = 0;
    for i in 0..200 {
        let dom = &words[i % words.len()];
        let layers = rng.gen_range(1..4);
        let a = random_term(&mut rng, &sig, dom, layers);
        let b = rewrite_many(&mut rng, &a, &sig, Axioms::Structural, 8);
        if terms_equal(&a, &b, &sig).map_err(|e| e.to_string())? {
            equal += 1;
        } else {
            return Err(format!("rewrite broke graph equality:\n  {a}\n  {b}"));
        }
    }
    Ok(format!("500 quadruples over bool and complex; {equal}/200 rewrite pairs graph-equal"))
}

fn criterion_4() -> Outcome {
    for tag in [B, N, C] {
        report_ok(&check_biproducts(tag, 8))?;
    }
    let r = check_spectra(50, SEED);
    report_ok(&r)?;
    let worst = r.entries.iter().map(|e| e.max_deviation).fold(0.0, f64::max);
    Ok(format!("all splits with total <= 8; 50 spectra, max deviation {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    for tag in [C, B] {
        for d in 0..=5 {
            let r = verify_frobenius(&basis_frobenius(d, tag));
            ensure(r.all_pass(), || format!("basis_frobenius({d}) over {}:\n{r}", tag.kind()))?;
        }
    }
    let mut caught = 0;
    let mut total = 0;
    for tag in [C, B] {
        for row in 0..4 {
            for col in 0..2 {
                let mut p = basis_frobenius(2, tag);
                p.flip_delta_entry(row, col);
                total += 1;
                if !verify_frobenius(&p).all_pass() {
                    caught += 1;
                }
            }
        }
    }
    ensure(caught == total, || format!("only {caught}/{total} mutations detected"))?;
    Ok(format!("d = 0..5 over complex and bool; {caught}/{total} delta mutations detected"))
}

/// A random cobordism over `X` with fewer than `max_layers` layers.
fn cob<R: Rng>(rng: &mut R, inputs: usize, outputs: usize, max_layers: usize) -> DiagramTerm {
    let layers = rng.gen_range(1..max_layers);
    random_cob_term(rng, "X", inputs, outputs, layers)
}

fn cob_signature() -> Signature {
    let mut sig = Signature::new();
    sig.add_atom("X", true, true).unwrap();
    sig
}

/// `trace(μ ∘ δ)`, summed directly from the diagonal.
fn trace_mu_delta(p: &FrobeniusPresentation) -> Complex64 {
    let m = p.mu().compose(p.delta()).unwrap();
    (0..m.rows())
        .map(|i| match m.get(i, i) {
            Scalar::Complex(z) => *z,
            other => panic!("complex presentation expected, got {other}"),
        })
        .sum()
}

fn criterion_6() -> Outcome {
    let sig = cob_signature();
    let mut rng = seeded(SEED);
    let mut graphs = 0;
    let mut largest = 0;
    while graphs < 100 {
        let (i, o) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let term = cob(&mut rng, i, o, 14);
        let g = spiderize(&to_graph(&term, &sig).map_err(|e| e.to_string())?, &sig);
        if g.nodes.len() > 30 || g.nodes.is_empty() {
            continue;
        }
        graphs += 1;
        largest = largest.max(g.nodes.len());
        for special in [false, true] {
            let reference = fuse(&g, special);
            for _ in 0..20 {
                let trace = fuse_trace(&g, special, &mut rng);
                let last = trace.last().unwrap_or(&g);
                ensure(graph_eq(last, &reference), || format!("fusion orders disagree on {term}"))?;
            }
        }
    }
    let cylinder = DiagramTerm::id_atom("X");
    let handle = DiagramTerm::delta("X").then(DiagramTerm::mu("X"));
    let (cc, hc) = (classify_cob(&cylinder, &sig).unwrap(), classify_cob(&handle, &sig).unwrap());
    ensure(cc != hc, || "cylinder and handle classify alike".into())?;
    ensure(!eq_cob(&cylinder, &handle, &sig).unwrap(), || "eq_cob identifies cylinder and handle".into())?;

    let id = || DiagramTerm::id_atom("X");
    let left = DiagramTerm::par(DiagramTerm::delta("X"), id()).then(DiagramTerm::par(id(), DiagramTerm::mu("X")));
    let middle = DiagramTerm::mu("X").then(DiagramTerm::delta("X"));
    let right = DiagramTerm::par(id(), DiagramTerm::delta("X")).then(DiagramTerm::par(DiagramTerm::mu("X"), id()));
    let scaled = basis_frobenius(2, C).scaled(Complex64::new(1.5, 0.5)).unwrap();
    for side in [&left, &right] {
        ensure(eq_cob(side, &middle, &sig).unwrap(), || format!("{side} not classified as delta . mu"))?;
        for p in [basis_frobenius(3, C), scaled.clone()] {
            let (a, b) = (evaluate_cob(side, &p, &sig).unwrap(), evaluate_cob(&middle, &p, &sig).unwrap());
            ensure(a.max_deviation(&b) <= TOL, || "Frobenius law sides evaluate differently".into())?;
        }
    }

    let torus = DiagramTerm::unit("X").then(handle).then(DiagramTerm::counit("X"));
    for d in 0..=5 {
        let p = basis_frobenius(d, C);
        let v = evaluate_cob(&torus, &p, &sig).unwrap();
        let z = match v.get(0, 0) {
            Scalar::Complex(z) => *z,
            _ => unreachable!(),
        };
        let oracle = trace_mu_delta(&p);
        ensure((z - oracle).norm() <= TOL && (z - d as f64).norm() <= TOL, || {
            format!("torus at d={d} evaluates to {z}, trace oracle {oracle}")
        })?;
    }
    Ok(format!(
        "100 graphs (up to {largest} nodes) x 20 orders agree; cylinder != handle; Frobenius sides agree; torus = d for d = 0..5"
    ))
}

fn criterion_7() -> Outcome {
    let sig = cob_signature();
    let mut rng = seeded(SEED + 7);
    let basis = basis_frobenius(2, C);
    let conj = basis.conjugated(&random_invertible(&mut rng, 2)).map_err(|e| e.to_string())?;
    let scaled = basis.scaled(Complex64::new(2.0, -1.0)).map_err(|e| e.to_string())?;
    let presentations = [("basis", &basis), ("conjugated", &conj), ("scaled", &scaled)];
    for (name, p) in presentations {
        let r = verify_frobenius(p);
        ensure(r.all_as_expected(), || format!("{name} presentation does not verify:\n{r}"))?;
    }
    let eval = |t: &DiagramTerm, p: &FrobeniusPresentation| evaluate_cob(t, p, &sig).map_err(|e| e.to_string());
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (m, n, k) = (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3));
        let t1 = cob(&mut rng, m, n, 4);
        let t2 = cob(&mut rng, n, k, 4);
        for p in [&basis, &conj] {
            let (e1, e2) = (eval(&t1, p)?, eval(&t2, p)?);
            let seq = eval(&t1.clone().then(t2.clone()), p)?;
            let par = eval(&DiagramTerm::par(t1.clone(), t2.clone()), p)?;
            let d_seq = relative_deviation(&seq, &c(&[&e2, &e1]));
            let d_par = relative_deviation(&par, &t(&e1, &e2));
            worst = worst.max(d_seq).max(d_par);
            ensure(d_seq <= TOL && d_par <= TOL, || format!("functoriality fails for {t1} ; {t2}"))?;
        }
    }

    let mut equal_pairs = 0;
    let mut checked = 0;
    for i in 0..200 {
        let (m, n) = (rng.gen_range(0..3), rng.gen_range(0..3));
        let a = cob(&mut rng, m, n, 4);
        let b = if i % 2 == 0 {
            rewrite_many(&mut rng, &a, &sig, Axioms::Frobenius, 6)
        } else {
            cob(&mut rng, m, n, 4)
        };
        let same = eq_cob(&a, &b, &sig).map_err(|e| e.to_string())?;
        if i % 2 == 0 {
            ensure(same, || format!("Frobenius rewrite changed the class:\n  {a}\n  {b}"))?;
        }
        if !same {
            continue;
        }
        equal_pairs += 1;
        for (name, p) in presentations {
            checked += 1;
            let dev = relative_deviation(&eval(&a, p)?, &eval(&b, p)?);
            ensure(dev <= REL_TOL, || {
                format!("eq_cob unsound under the {name} presentation (dev {dev:e}):\n  {a}\n  {b}")
            })?;
        }
    }
    Ok(format!(
        "200 composable pairs under basis and conjugated presentations, max relative deviation {worst:.1e}; {equal_pairs} homeomorphic pairs, {checked} evaluations, 0 violations"
    ))
}

fn criterion_8() -> Outcome {
    let r = negative_suite();
    for e in &r.entries {
        if e.expectation == Expectation::Fails && e.pass {
            return Err(format!("unexpected pass of {}, aborting:\n{r}", e.name));
        }
    }
    ensure(r.entries.len() == 3 && r.all_as_expected(), || format!("{r}"))?;
    Ok("copy vs Bell state, relational copy naturality, relational product: all fail as expected".into())
}

fn criterion_9() -> Outcome {
    for tag in [B, N, C] {
        report_ok(&check_scalar_laws(tag, 500, SEED))?;
    }
    let prog = parse("gen s : I -> I; gen t : I -> I; st = s >> t; ts = t >> s; par = s x t;")
        .map_err(|e| e.to_string())?;
    let sig = &prog.signature;
    let d = |n: &str| prog.diagram(n).unwrap();
    ensure(terms_equal(d("st"), d("ts"), sig).unwrap(), || "s . t != t . s".into())?;
    ensure(terms_equal(d("st"), d("par"), sig).unwrap(), || "s . t != s x t".into())?;
    Ok("500 instances per semiring; s.t = t.s = s x t by graph equality".into())
}

fn criterion_10() -> Outcome {
    for tag in [B, N, C] {
        report_ok(&check_coherence(tag, 3, &Structure::default()))?;
    }
    Ok("pentagon, triangle, hexagons for all dimension tuples with entries <= 3".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 10] = [
        ("boolean matrix calculus", criterion_1),
        ("snake equations", criterion_2),
        ("interchange", criterion_3),
        ("biproducts and spectra", criterion_4),
        ("frobenius verification", criterion_5),
        ("spider fusion and 2-cobordisms", criterion_6),
        ("tqft functoriality and soundness", criterion_7),
        ("negative suite", criterion_8),
        ("scalars", criterion_9),
        ("coherence", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!("{} of 10 criteria passed in {total:.2}s (seed {SEED})", 10 - failed);
    if failed == 0 && total < 60.0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
