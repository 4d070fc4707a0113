//! Matrix semantics: symmetric monoidal functors from free diagrams into
//! matrices, and evaluation of 2-cobordisms from a commutative Frobenius
//! structure.

mod file;
mod network;
mod presentation;

use std::collections::BTreeMap;

pub use file::{load_interpretation, matrix_literal, parse_interpretation, relation_pairs};
pub use network::evaluate_graph;
pub use presentation::{
    basis_frobenius, check_frobenius_morphism, verify_frobenius, FrobeniusFlags,
    FrobeniusPresentation,
};

use crate::diagram::{DiagramTerm, Factor, ObjectWord, Signature};
use crate::error::{Error, Result};
use crate::frobenius::cob_atom;
use crate::matcat::{counit_eps, swap_matrix, unit_eta, Matrix};
use crate::scalars::SemiringTag;

/// Dimensions, generator matrices and Frobenius data for the atoms and
/// generators of a signature.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpretation {
    pub tag: SemiringTag,
    pub object_dims: BTreeMap<String, usize>,
    pub gen_matrices: BTreeMap<String, Matrix>,
    pub frobenius_data: BTreeMap<String, FrobeniusPresentation>,
    /// Optional element names per atom, used to read and print relations.
    pub elements: BTreeMap<String, Vec<String>>,
}

impl Interpretation {
    pub fn new(tag: SemiringTag) -> Self {
        Interpretation {
            tag,
            object_dims: BTreeMap::new(),
            gen_matrices: BTreeMap::new(),
            frobenius_data: BTreeMap::new(),
            elements: BTreeMap::new(),
        }
    }

    pub fn with_object(mut self, atom: &str, dim: usize) -> Self {
        self.object_dims.insert(atom.to_string(), dim);
        self
    }

    pub fn with_generator(mut self, name: &str, m: Matrix) -> Self {
        self.gen_matrices.insert(name.to_string(), m);
        self
    }

    /// Adds Frobenius data, also fixing the atom's dimension.
    pub fn with_frobenius(mut self, atom: &str, p: FrobeniusPresentation) -> Self {
        self.object_dims.insert(atom.to_string(), p.dim());
        self.frobenius_data.insert(atom.to_string(), p);
        self
    }

    pub fn dim(&self, atom: &str) -> Result<usize> {
        self.object_dims
            .get(atom)
            .copied()
            .ok_or_else(|| Error::Interpretation(format!("no dimension for object `{atom}`")))
    }

    /// Product of the atom dimensions; 1 for the unit.
    pub fn word_dim(&self, w: &ObjectWord) -> Result<usize> {
        w.factors().iter().try_fold(1usize, |acc, f| Ok(acc * self.dim(&f.atom)?))
    }

    pub fn generator(&self, name: &str) -> Result<&Matrix> {
        self.gen_matrices
            .get(name)
            .ok_or_else(|| Error::Interpretation(format!("no matrix for generator `{name}`")))
    }

    pub fn frobenius(&self, atom: &str) -> Option<&FrobeniusPresentation> {
        self.frobenius_data.get(atom)
    }

    fn presentation(&self, atom: &str) -> Result<&FrobeniusPresentation> {
        self.frobenius(atom).ok_or_else(|| {
            Error::Interpretation(format!("no frobenius structure for object `{atom}`"))
        })
    }

    /// Checks that the interpretation covers `sig` with matrices of the right
    /// shapes and semiring, and that declared dagger partners are daggers of
    /// each other.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        for atom in sig.atoms() {
            self.dim(&atom.name)?;
        }
        for g in sig.generators() {
            let m = self.generator(&g.name)?;
            self.tag.ensure_compatible(&m.tag())?;
            let want = (self.word_dim(&g.cod)?, self.word_dim(&g.dom)?);
            if m.shape() != want {
                return Err(Error::Interpretation(format!(
                    "generator `{}` : {} -> {} needs a {}x{} matrix, got {}x{}",
                    g.name,
                    g.dom,
                    g.cod,
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
            if let Some(partner) = &g.dagger_partner {
                let pm = self.generator(partner)?;
                if !m.dagger().approx_eq(pm) {
                    return Err(Error::Interpretation(format!(
                        "`{partner}` is declared the dagger of `{}` but its matrix is not",
                        g.name
                    )));
                }
            }
        }
        for (atom, p) in &self.frobenius_data {
            self.tag.ensure_compatible(&p.tag())?;
            if self.dim(atom)? != p.dim() {
                return Err(Error::Interpretation(format!(
                    "frobenius structure on `{atom}` has dimension {} but the object has {}",
                    p.dim(),
                    self.dim(atom)?
                )));
            }
        }
        Ok(())
    }

    /// The cup `I -> F* ⊗ F`: the Frobenius cup `δ ∘ e` when the atom
    /// carries a Frobenius structure, otherwise the standard `η`.
    pub fn cup_matrix(&self, f: &Factor) -> Result<Matrix> {
        match self.frobenius(&f.atom) {
            Some(p) => Ok(p.cup()),
            None => Ok(unit_eta(self.tag, self.dim(&f.atom)?)),
        }
    }

    /// The cap `F ⊗ F* -> I`, dually.
    pub fn cap_matrix(&self, f: &Factor) -> Result<Matrix> {
        match self.frobenius(&f.atom) {
            Some(p) => Ok(p.cap()),
            None => Ok(counit_eps(self.tag, self.dim(&f.atom)?)),
        }
    }
}

/// Evaluates a term. Daggers are pushed down to the leaves: generators go to
/// the conjugate transpose of their matrix, spiders and bends to their mirror
/// images.
pub fn interpret(t: &DiagramTerm, interp: &Interpretation, sig: &Signature) -> Result<Matrix> {
    t.typecheck(sig)?;
    eval(t, interp, false)
}

fn eval(t: &DiagramTerm, interp: &Interpretation, flip: bool) -> Result<Matrix> {
    let tag = interp.tag;
    match t {
        DiagramTerm::Gen(name) => {
            let m = interp.generator(name)?;
            tag.ensure_compatible(&m.tag())?;
            Ok(if flip { m.dagger() } else { m.clone() })
        }
        DiagramTerm::Id(w) => Ok(Matrix::identity(tag, interp.word_dim(w)?)),
        DiagramTerm::Seq(after, before) => {
            if flip {
                eval(before, interp, true)?.compose(&eval(after, interp, true)?)
            } else {
                eval(after, interp, false)?.compose(&eval(before, interp, false)?)
            }
        }
        DiagramTerm::Par(a, b) => eval(a, interp, flip)?.tensor(&eval(b, interp, flip)?),
        DiagramTerm::Swap(a, b) => {
            let (n, m) = (interp.word_dim(a)?, interp.word_dim(b)?);
            Ok(if flip {
                swap_matrix(tag, m, n)
            } else {
                swap_matrix(tag, n, m)
            })
        }
        DiagramTerm::Cup(f) => {
            if flip {
                interp.cap_matrix(&f.dualized())
            } else {
                interp.cup_matrix(f)
            }
        }
        DiagramTerm::Cap(f) => {
            if flip {
                interp.cup_matrix(&f.dualized())
            } else {
                interp.cap_matrix(f)
            }
        }
        DiagramTerm::Dagger(a) => eval(a, interp, !flip),
        DiagramTerm::Spider {
            atom,
            inputs,
            outputs,
        } => {
            let p = interp.presentation(atom)?;
            let (k, l) = if flip {
                (*outputs, *inputs)
            } else {
                (*inputs, *outputs)
            };
            Ok(p.spider(k, l, 0))
        }
    }
}

/// Evaluates a 2-cobordism with a single Frobenius presentation.
///
/// Fails when the presentation does not satisfy the laws its flags claim,
/// or is not commutative (spiders have unordered legs).
pub fn evaluate_cob(t: &DiagramTerm, p: &FrobeniusPresentation, sig: &Signature) -> Result<Matrix> {
    let atom = cob_atom(t, sig)?;
    if !p.flags().commutative {
        return Err(Error::Precondition(
            "cobordisms need a commutative frobenius structure".into(),
        ));
    }
    let report = verify_frobenius(p);
    if !report.all_as_expected() {
        let names: Vec<&str> = report.failures().map(|e| e.name.as_str()).collect();
        return Err(Error::Precondition(format!(
            "frobenius presentation fails: {}",
            names.join(", ")
        )));
    }
    let mut interp = Interpretation::new(p.tag());
    if let Some(atom) = atom {
        interp = interp.with_frobenius(&atom, p.clone());
    }
    interpret(t, &interp, sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse, to_graph};
    use crate::matcat::circle;
    use crate::scalars::ScalarValue;
    use DiagramTerm as T;

    const C: SemiringTag = SemiringTag::COMPLEX;
    const B: SemiringTag = SemiringTag::BOOLEAN;

    fn sig_a() -> Signature {
        let mut s = Signature::new();
        s.add_atom("A", false, false).unwrap();
        s
    }

    #[test]
    fn identity_and_snake() {
        let s = sig_a();
        let i = Interpretation::new(C).with_object("A", 4);
        assert_eq!(
            interpret(&T::id_atom("A"), &i, &s).unwrap(),
            Matrix::identity(C, 4)
        );
        let snake = T::par(T::id_atom("A"), T::cup("A"))
            .then(T::par(T::cap("A"), T::id_atom("A")));
        assert!(interpret(&snake, &i, &s)
            .unwrap()
            .approx_eq(&Matrix::identity(C, 4)));
    }

    #[test]
    fn loop_is_dimension() {
        let s = sig_a();
        let i = Interpretation::new(C).with_object("A", 3);
        let l = T::cup("A").then(T::Cap(Factor::dual("A")));
        let v = interpret(&l, &i, &s).unwrap().to_scalar().unwrap();
        assert!(v.approx_eq(&ScalarValue::complex(3.0, 0.0)).unwrap());
        assert_eq!(v, circle(C, 3));
    }

    #[test]
    fn relation_composite_from_source() {
        let prog = parse("gen r : X -> Y; gen r2 : Y -> Z; d = r >> r2;").unwrap();
        let r = Matrix::boolean(&[&[1, 0], &[1, 1]]);
        let r2 = Matrix::boolean(&[&[1, 1], &[1, 1], &[1, 0]]);
        let i = Interpretation::new(B)
            .with_object("X", 2)
            .with_object("Y", 2)
            .with_object("Z", 3)
            .with_generator("r", r)
            .with_generator("r2", r2);
        i.validate(&prog.signature).unwrap();
        let m = interpret(prog.diagram("d").unwrap(), &i, &prog.signature).unwrap();
        assert_eq!(m, Matrix::boolean(&[&[1, 1], &[1, 1], &[1, 0]]));
    }

    #[test]
    fn validation_errors() {
        let prog = parse("gen f : A -> A x A;").unwrap();
        let i = Interpretation::new(C).with_object("A", 2);
        assert!(matches!(i.validate(&prog.signature), Err(Error::Interpretation(_))));
        let i = i.with_generator("f", Matrix::identity(C, 2));
        let err = i.validate(&prog.signature).unwrap_err().to_string();
        assert!(err.contains("4x2"), "{err}");
    }

    #[test]
    fn dagger_of_generator_is_conjugate_transpose() {
        let prog = parse("gen f : A -> A; d = dg(f);").unwrap();
        let f = Matrix::from_fn(C, 2, 2, |r, c| crate::scalars::Scalar::complex(r as f64, c as f64 + 1.0));
        let i = Interpretation::new(C).with_object("A", 2).with_generator("f", f.clone());
        let m = interpret(prog.diagram("d").unwrap(), &i, &prog.signature).unwrap();
        assert_eq!(m, f.dagger());
    }

    fn sig_x() -> Signature {
        let mut s = Signature::new();
        s.add_atom("X", true, true).unwrap();
        s
    }

    #[test]
    fn cylinder_torus_and_pants() {
        let s = sig_x();
        for d in 0..5 {
            let p = basis_frobenius(d, C);
            let cyl = evaluate_cob(&T::id_atom("X"), &p, &s).unwrap();
            assert_eq!(cyl, Matrix::identity(C, d));
            let torus = T::unit("X")
                .then(T::delta("X"))
                .then(T::mu("X"))
                .then(T::counit("X"));
            let v = evaluate_cob(&torus, &p, &s).unwrap();
            assert!(v.approx_eq(&Matrix::scalar(&ScalarValue::complex(d as f64, 0.0))));
        }
        let p = basis_frobenius(3, C);
        let x = || T::id_atom("X");
        let left = T::par(T::delta("X"), x()).then(T::par(x(), T::mu("X")));
        let middle = T::mu("X").then(T::delta("X"));
        assert!(evaluate_cob(&left, &p, &s)
            .unwrap()
            .approx_eq(&evaluate_cob(&middle, &p, &s).unwrap()));
    }

    #[test]
    fn unverified_presentation_is_rejected() {
        let s = sig_x();
        let mut p = basis_frobenius(2, C);
        p.flip_delta_entry(0, 1);
        assert!(matches!(
            evaluate_cob(&T::delta("X"), &p, &s),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn graph_and_term_evaluation_agree() {
        let s = sig_x();
        let p = basis_frobenius(2, C).scaled(num_complex::Complex64::new(2.0, 0.5)).unwrap();
        let i = Interpretation::new(C).with_frobenius("X", p);
        let x = || T::id_atom("X");
        let terms = [
            T::cup("X").then(T::cap("X")),
            T::par(T::delta("X"), x()).then(T::par(x(), T::mu("X"))),
            T::spider("X", 2, 3),
            T::dagger(T::spider("X", 1, 3)),
            T::par(T::cup("X"), x()).then(T::par(x(), T::cap("X"))),
        ];
        for t in terms {
            let direct = interpret(&t, &i, &s).unwrap();
            let net = evaluate_graph(&to_graph(&t, &s).unwrap(), &i).unwrap();
            assert!(direct.approx_eq(&net), "{t}: {direct} vs {net}");
        }
    }
}
