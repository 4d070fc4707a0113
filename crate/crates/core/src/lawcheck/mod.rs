//! A harness checking the equations of dagger compact and Frobenius
//! structure on concrete matrices, including must-fail counterexamples.
//!
//! Checks draw their structure maps from a [`Structure`], which can inject a
//! single fault (a transposed symmetry or one flipped entry of `σ`, `η` or
//! `δ`) so the harness can test itself.

mod checks;
mod hopf;
mod report;
mod suite;

pub use checks::{
    check_biproducts, check_coherence, check_compact, check_dagger_laws, check_interchange,
    check_naturality_squares, check_scalar_laws, check_spectra, check_frobenius_structure,
};
pub use hopf::{check_hopf_bialgebra, negative_suite, z2_function_bialgebra};
pub use report::{Expectation, LawEntry, LawReport, Tally};
pub use suite::{mutations, run_suite, SuiteOptions, MANIFEST};

use crate::matcat::{counit_eps, swap_matrix, unit_eta, Matrix};
use crate::scalars::SemiringTag;
use crate::tqft::{basis_frobenius, FrobeniusPresentation};

/// A deliberate bug in one structure map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Every `σ_{n,m}` is replaced by its transpose `σ_{m,n}`.
    TransposedSwap,
    /// One entry of `σ_{2,2}` is flipped.
    SwapEntry(usize, usize),
    /// One entry of `η_2` is flipped.
    EtaEntry(usize),
    /// One entry of the basis comultiplication on dimension 2 is flipped.
    DeltaEntry(usize, usize),
}

/// The structure maps used by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Structure {
    pub fault: Fault,
}

impl Structure {
    pub fn faulty(fault: Fault) -> Self {
        Structure { fault }
    }

    pub fn swap(&self, tag: SemiringTag, n: usize, m: usize) -> Matrix {
        match self.fault {
            Fault::TransposedSwap => swap_matrix(tag, n, m).transpose(),
            Fault::SwapEntry(r, c) if (n, m) == (2, 2) => swap_matrix(tag, 2, 2).with_entry_flipped(r, c),
            _ => swap_matrix(tag, n, m),
        }
    }

    pub fn eta(&self, tag: SemiringTag, n: usize) -> Matrix {
        match self.fault {
            Fault::EtaEntry(r) if n == 2 => unit_eta(tag, 2).with_entry_flipped(r, 0),
            _ => unit_eta(tag, n),
        }
    }

    pub fn eps(&self, tag: SemiringTag, n: usize) -> Matrix {
        counit_eps(tag, n)
    }

    pub fn basis_frobenius(&self, d: usize, tag: SemiringTag) -> FrobeniusPresentation {
        let mut p = basis_frobenius(d, tag);
        if let Fault::DeltaEntry(r, c) = self.fault {
            if d == 2 {
                p.flip_delta_entry(r, c);
            }
        }
        p
    }
}
