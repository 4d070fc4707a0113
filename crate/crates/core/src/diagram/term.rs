use std::fmt;

use super::signature::{Factor, ObjectWord, Signature};
use crate::error::{Error, Result};

/// Abstract syntax of a morphism in the free dagger compact symmetric
/// monoidal category over a [`Signature`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DiagramTerm {
    Gen(String),
    Id(ObjectWord),
    /// `Seq(after, before)` is `after ∘ before`.
    Seq(Box<DiagramTerm>, Box<DiagramTerm>),
    Par(Box<DiagramTerm>, Box<DiagramTerm>),
    Swap(ObjectWord, ObjectWord),
    /// `I -> F* ⊗ F`
    Cup(Factor),
    /// `F ⊗ F* -> I`
    Cap(Factor),
    Dagger(Box<DiagramTerm>),
    /// Frobenius spider on a frobenius atom: `A^inputs -> A^outputs`.
    Spider {
        atom: String,
        inputs: usize,
        outputs: usize,
    },
}

impl DiagramTerm {
    pub fn gen(name: impl Into<String>) -> Self {
        DiagramTerm::Gen(name.into())
    }

    pub fn id(w: ObjectWord) -> Self {
        DiagramTerm::Id(w)
    }

    pub fn id_atom(atom: &str) -> Self {
        DiagramTerm::Id(ObjectWord::atom(atom))
    }

    /// `after ∘ before`
    pub fn seq(after: DiagramTerm, before: DiagramTerm) -> Self {
        DiagramTerm::Seq(Box::new(after), Box::new(before))
    }

    /// Diagrammatic-order composition: `self` first, then `next`.
    pub fn then(self, next: DiagramTerm) -> Self {
        DiagramTerm::seq(next, self)
    }

    pub fn par(left: DiagramTerm, right: DiagramTerm) -> Self {
        DiagramTerm::Par(Box::new(left), Box::new(right))
    }

    pub fn swap(a: ObjectWord, b: ObjectWord) -> Self {
        DiagramTerm::Swap(a, b)
    }

    pub fn cup(atom: &str) -> Self {
        DiagramTerm::Cup(Factor::plain(atom))
    }

    pub fn cap(atom: &str) -> Self {
        DiagramTerm::Cap(Factor::plain(atom))
    }

    pub fn dagger(t: DiagramTerm) -> Self {
        DiagramTerm::Dagger(Box::new(t))
    }

    pub fn spider(atom: &str, inputs: usize, outputs: usize) -> Self {
        DiagramTerm::Spider {
            atom: atom.to_string(),
            inputs,
            outputs,
        }
    }

    /// Comultiplication `δ : A -> A ⊗ A`.
    pub fn delta(atom: &str) -> Self {
        Self::spider(atom, 1, 2)
    }

    /// Counit `ε : A -> I`.
    pub fn counit(atom: &str) -> Self {
        Self::spider(atom, 1, 0)
    }

    /// Multiplication `μ : A ⊗ A -> A`.
    pub fn mu(atom: &str) -> Self {
        Self::spider(atom, 2, 1)
    }

    /// Unit `e : I -> A`.
    pub fn unit(atom: &str) -> Self {
        Self::spider(atom, 0, 1)
    }

    /// Parallel composition of a list; the empty list is `id(I)`.
    pub fn par_all(terms: impl IntoIterator<Item = DiagramTerm>) -> Self {
        terms
            .into_iter()
            .reduce(DiagramTerm::par)
            .unwrap_or(DiagramTerm::Id(ObjectWord::unit()))
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            DiagramTerm::Seq(a, b) | DiagramTerm::Par(a, b) => 1 + a.size() + b.size(),
            DiagramTerm::Dagger(t) => 1 + t.size(),
            _ => 1,
        }
    }

    /// Assigns `(dom, cod)` or reports the first ill-typed subterm.
    pub fn typecheck(&self, sig: &Signature) -> Result<(ObjectWord, ObjectWord)> {
        match self {
            DiagramTerm::Gen(name) => {
                let g = sig.generator(name)?;
                Ok((g.dom.clone(), g.cod.clone()))
            }
            DiagramTerm::Id(w) => {
                let w = sig.normalize(w)?;
                Ok((w.clone(), w))
            }
            DiagramTerm::Seq(after, before) => {
                let (a, b) = before.typecheck(sig)?;
                let (c, d) = after.typecheck(sig)?;
                if b != c {
                    return Err(Error::Type(format!(
                        "types don't match: cannot compose `{before}` : {a} -> {b} with `{after}` : {c} -> {d} ({b} vs {c})"
                    )));
                }
                Ok((a, d))
            }
            DiagramTerm::Par(l, r) => {
                let (a, b) = l.typecheck(sig)?;
                let (c, d) = r.typecheck(sig)?;
                Ok((a.tensor(&c), b.tensor(&d)))
            }
            DiagramTerm::Swap(w1, w2) => {
                let w1 = sig.normalize(w1)?;
                let w2 = sig.normalize(w2)?;
                Ok((w1.tensor(&w2), w2.tensor(&w1)))
            }
            DiagramTerm::Cup(f) => {
                let f = sig.normalize_factor(f)?;
                let cod = sig.normalize(&ObjectWord(vec![f.dualized(), f]))?;
                Ok((ObjectWord::unit(), cod))
            }
            DiagramTerm::Cap(f) => {
                let f = sig.normalize_factor(f)?;
                let dom = sig.normalize(&ObjectWord(vec![f.clone(), f.dualized()]))?;
                Ok((dom, ObjectWord::unit()))
            }
            DiagramTerm::Dagger(t) => {
                let (a, b) = t.typecheck(sig)?;
                Ok((b, a))
            }
            DiagramTerm::Spider {
                atom,
                inputs,
                outputs,
            } => {
                let decl = sig.atom(atom)?;
                if !decl.frobenius {
                    return Err(Error::Type(format!(
                        "spider on `{atom}`, which is not a frobenius object"
                    )));
                }
                Ok((
                    ObjectWord::power(atom, *inputs),
                    ObjectWord::power(atom, *outputs),
                ))
            }
        }
    }
}

impl fmt::Display for DiagramTerm {
    /// Prints in the surface syntax accepted by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramTerm::Gen(n) => f.write_str(n),
            DiagramTerm::Id(w) => write!(f, "id({w})"),
            DiagramTerm::Seq(after, before) => write!(f, "({before} >> {after})"),
            DiagramTerm::Par(l, r) => write!(f, "({l} x {r})"),
            DiagramTerm::Swap(a, b) => write!(f, "swap({a}, {b})"),
            DiagramTerm::Cup(x) => write!(f, "cup({x})"),
            DiagramTerm::Cap(x) => write!(f, "cap({x})"),
            DiagramTerm::Dagger(t) => write!(f, "dg({t})"),
            DiagramTerm::Spider {
                atom,
                inputs,
                outputs,
            } => write!(f, "spider({atom}, {inputs}, {outputs})"),
        }
    }
}

fn single_factor(w: &ObjectWord, what: &str) -> Result<Factor> {
    match w.factors() {
        [f] => Ok(f.clone()),
        _ => Err(Error::Unsupported(format!(
            "{what} of a morphism whose type has {} factors (`{w}`); only single-object types are supported",
            w.len()
        ))),
    }
}

/// `t* : B* -> A*` for `t : A -> B`, built from a cup on `A` and a cap on `B`.
pub fn transpose(t: &DiagramTerm, sig: &Signature) -> Result<DiagramTerm> {
    let (dom, cod) = t.typecheck(sig)?;
    let a = single_factor(&dom, "transpose")?;
    let b = single_factor(&cod, "transpose")?;
    let a_dual = ObjectWord(vec![a.dualized()]);
    let b_dual = ObjectWord(vec![b.dualized()]);
    let open = DiagramTerm::par(DiagramTerm::Cup(a), DiagramTerm::Id(b_dual.clone()));
    let apply = DiagramTerm::par_all([
        DiagramTerm::Id(a_dual.clone()),
        t.clone(),
        DiagramTerm::Id(b_dual),
    ]);
    let close = DiagramTerm::par(DiagramTerm::Id(a_dual), DiagramTerm::Cap(b));
    Ok(open.then(apply).then(close))
}

/// The name `⌈t⌉ : I -> A* ⊗ B` of `t : A -> B`.
pub fn name(t: &DiagramTerm, sig: &Signature) -> Result<DiagramTerm> {
    let (dom, cod) = t.typecheck(sig)?;
    let a = single_factor(&dom, "name")?;
    single_factor(&cod, "name")?;
    Ok(DiagramTerm::Cup(a.clone()).then(DiagramTerm::par(
        DiagramTerm::Id(ObjectWord(vec![a.dualized()])),
        t.clone(),
    )))
}

/// The coname `⌊t⌋ : A ⊗ B* -> I` of `t : A -> B`.
pub fn coname(t: &DiagramTerm, sig: &Signature) -> Result<DiagramTerm> {
    let (dom, cod) = t.typecheck(sig)?;
    single_factor(&dom, "coname")?;
    let b = single_factor(&cod, "coname")?;
    Ok(
        DiagramTerm::par(t.clone(), DiagramTerm::Id(ObjectWord(vec![b.dualized()])))
            .then(DiagramTerm::Cap(b)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        for a in ["A", "B", "C", "D"] {
            s.add_atom(a, false, false).unwrap();
        }
        s.add_atom("X", true, false).unwrap();
        s.add_generator("f", ObjectWord::atom("A"), ObjectWord::atom("B"))
            .unwrap();
        s.add_generator("g", ObjectWord::atom("B"), ObjectWord::atom("C"))
            .unwrap();
        s.add_generator("k", ObjectWord::atom("C"), ObjectWord::atom("D"))
            .unwrap();
        s.add_generator("psi", ObjectWord::unit(), ObjectWord::atom("A"))
            .unwrap();
        s.add_generator("phi", ObjectWord::unit(), ObjectWord::atom("B"))
            .unwrap();
        s
    }

    fn w(s: &str) -> String {
        s.to_string()
    }

    #[test]
    fn composition_typing() {
        let s = sig();
        let t = DiagramTerm::seq(DiagramTerm::gen("g"), DiagramTerm::gen("f"));
        let (d, c) = t.typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("A"), w("C")));
    }

    #[test]
    fn mismatched_composition_names_both_words() {
        let s = sig();
        let t = DiagramTerm::gen("f").then(DiagramTerm::gen("k"));
        let msg = t.typecheck(&s).unwrap_err().to_string();
        assert!(msg.contains("types don't match"), "{msg}");
        assert!(msg.contains("(B vs C)"), "{msg}");
    }

    #[test]
    fn tensor_of_states() {
        let s = sig();
        let t = DiagramTerm::par(DiagramTerm::gen("psi"), DiagramTerm::gen("phi"));
        let (d, c) = t.typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("I"), w("A x B")));
    }

    #[test]
    fn structural_types() {
        let s = sig();
        let (d, c) = DiagramTerm::cup("A").typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("I"), w("A* x A")));
        let (d, c) = DiagramTerm::cap("A").typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("A x A*"), w("I")));
        let (d, c) = DiagramTerm::Cup(Factor::dual("A")).typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("I"), w("A x A*")));
        let (d, c) = DiagramTerm::swap(ObjectWord::atom("A"), ObjectWord::atom("B"))
            .typecheck(&s)
            .unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("A x B"), w("B x A")));
        let (d, c) = DiagramTerm::spider("X", 2, 3).typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("X x X"), w("X x X x X")));
        assert!(DiagramTerm::spider("A", 1, 1).typecheck(&s).is_err());
        assert_eq!(
            DiagramTerm::gen("nope").typecheck(&s).unwrap_err(),
            Error::UnknownIdentifier("nope".into())
        );
    }

    #[test]
    fn double_dagger_keeps_type() {
        let s = sig();
        let t = DiagramTerm::gen("f");
        let dd = DiagramTerm::dagger(DiagramTerm::dagger(t.clone()));
        assert_eq!(dd.typecheck(&s).unwrap(), t.typecheck(&s).unwrap());
        let (d, c) = DiagramTerm::dagger(t).typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("B"), w("A")));
    }

    #[test]
    fn derived_term_types() {
        let s = sig();
        let f = DiagramTerm::gen("f");
        let (d, c) = transpose(&f, &s).unwrap().typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("B*"), w("A*")));
        let (d, c) = name(&f, &s).unwrap().typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("I"), w("A* x B")));
        let (d, c) = coname(&f, &s).unwrap().typecheck(&s).unwrap();
        assert_eq!((d.to_string(), c.to_string()), (w("A x B*"), w("I")));
        let two = DiagramTerm::par(f.clone(), f);
        assert!(matches!(transpose(&two, &s), Err(Error::Unsupported(_))));
        assert!(matches!(name(&DiagramTerm::gen("psi"), &s), Err(Error::Unsupported(_))));
    }

    #[test]
    fn display_round_trips_through_syntax() {
        let t = DiagramTerm::gen("f").then(DiagramTerm::dagger(DiagramTerm::gen("f")));
        assert_eq!(t.to_string(), "(f >> dg(f))");
    }
}
