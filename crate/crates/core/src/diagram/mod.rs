//! The free dagger compact symmetric monoidal category over a signature.
//!
//! Terms are typechecked against a [`Signature`], compiled to an
//! [`OpenGraph`], and compared by [`graph_eq`]. Because identities, swaps,
//! cups and caps only affect wiring, graph isomorphism identifies exactly the
//! terms related by the interchange law, symmetry naturality, yanking and
//! sliding.

mod canon;
mod graph;
mod parse;
mod signature;
mod term;

pub use canon::{canonical_form, graph_eq, CanonicalForm};
pub use graph::{to_graph, Endpoint, Node, OpenGraph};
pub use parse::{parse, NamedDiagram, Program};
pub use signature::{AtomDecl, Factor, GeneratorDecl, ObjectWord, Signature};
pub use term::{coname, name, transpose, DiagramTerm};

/// Convenience: graph equality of two terms over the same signature.
pub fn terms_equal(a: &DiagramTerm, b: &DiagramTerm, sig: &Signature) -> crate::Result<bool> {
    Ok(graph_eq(&to_graph(a, sig)?, &to_graph(b, sig)?))
}
