use super::checks::*;
use super::hopf::{check_hopf_bialgebra, negative_suite, z2_function_bialgebra};
use super::{Fault, LawReport, Structure};
use crate::scalars::{SemiringKind, SemiringTag};
use crate::tqft::Interpretation;

/// Settings for [`run_suite`].
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random instances per randomized law and semiring.
    pub samples: usize,
    /// Largest dimension used by the exhaustive checks.
    pub max_dim: usize,
    /// Tolerance for the complex semiring.
    pub tolerance: f64,
    pub fault: Fault,
    /// Only this semiring is checked, with naturality drawn from this
    /// interpretation's dimensions.
    pub interp: Option<Interpretation>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            samples: 50,
            max_dim: 3,
            tolerance: crate::scalars::DEFAULT_TOLERANCE,
            fault: Fault::None,
            interp: None,
        }
    }
}

/// Every entry name [`run_suite`] produces, in order.
pub const MANIFEST: &[&str] = &[
    "coherence.pentagon",
    "coherence.triangle",
    "coherence.unit_coincidence",
    "coherence.symmetry_involution",
    "coherence.symmetry_unit",
    "coherence.hexagon",
    "naturality.symmetry",
    "naturality.associativity",
    "naturality.left_unit",
    "naturality.right_unit",
    "scalars.commutativity",
    "scalars.composition",
    "scalars.tensor",
    "interchange",
    "dagger.contravariance",
    "dagger.involution",
    "dagger.monoidal",
    "dagger.unitary_symmetry",
    "compact.snake",
    "compact.dagger_compact",
    "compact.loop",
    "biproducts.projections",
    "biproducts.sum",
    "spectra.completeness",
    "spectra.idempotent",
    "spectra.self_adjoint",
    "spectra.orthogonal",
    "frobenius.associativity",
    "frobenius.unit",
    "frobenius.coassociativity",
    "frobenius.counit",
    "frobenius.frobenius",
    "frobenius.commutativity",
    "frobenius.speciality",
    "frobenius.dagger",
    "hopf.hopf_left",
    "hopf.hopf_right",
    "hopf.bialgebra_multiplication",
    "hopf.bialgebra_counit",
    "hopf.bialgebra_unit",
    "hopf.counit_unit",
    "negative.copy_naturality",
    "negative.relation_copy_naturality",
    "negative.cartesian_product",
];

/// Runs every law check in every semiring (or only the interpretation's) and
/// merges entries of the same name.
pub fn run_suite(opts: &SuiteOptions) -> LawReport {
    let st = Structure::faulty(opts.fault);
    let tags: Vec<SemiringTag> = match &opts.interp {
        Some(i) => vec![i.tag],
        None => vec![
            SemiringTag::BOOLEAN,
            SemiringTag::NATURAL,
            SemiringTag::complex_with_tolerance(opts.tolerance).unwrap_or(SemiringTag::COMPLEX),
        ],
    };
    let (seed, n, k) = (opts.seed, opts.samples, opts.max_dim);
    let mut report = LawReport::new(0.0).with_seed(seed);
    for tag in tags {
        let interp = match &opts.interp {
            Some(i) => i.clone(),
            None => Interpretation::new(tag).with_object("A", 2).with_object("B", 3),
        };
        report.merge(check_coherence(tag, k, &st).prefixed("coherence"));
        report.merge(check_naturality_squares(&interp, n, seed, &st).prefixed("naturality"));
        report.merge(check_scalar_laws(tag, n, seed).prefixed("scalars"));
        report.merge(check_interchange(tag, n, k.max(1) + 1, seed));
        report.merge(check_dagger_laws(tag, n, seed, &st).prefixed("dagger"));
        report.merge(check_compact(tag, 2 * k, &st).prefixed("compact"));
        report.merge(check_biproducts(tag, 2 * k + 2).prefixed("biproducts"));
        if tag.kind() == SemiringKind::Complex {
            report.merge(check_spectra(n, seed).prefixed("spectra"));
        }
        report.merge(check_frobenius_structure(tag, k.max(2), &st).prefixed("frobenius"));
        let (p, s) = z2_function_bialgebra(tag);
        let hopf = check_hopf_bialgebra(&p, &s).expect("antipode has the right shape");
        report.merge(hopf.prefixed("hopf"));
    }
    report.merge(negative_suite().prefixed("negative"));
    report.tolerance = match &opts.interp {
        Some(i) => i.tag.tolerance(),
        None => opts.tolerance,
    };
    report
        .entries
        .sort_by_key(|e| MANIFEST.iter().position(|m| *m == e.name).unwrap_or(MANIFEST.len()));
    report
}

/// Every single-entry fault the harness must detect.
pub fn mutations() -> Vec<Fault> {
    let mut out = vec![Fault::TransposedSwap];
    for r in 0..4 {
        for c in 0..4 {
            out.push(Fault::SwapEntry(r, c));
        }
    }
    out.extend((0..4).map(Fault::EtaEntry));
    for r in 0..4 {
        for c in 0..2 {
            out.push(Fault::DeltaEntry(r, c));
        }
    }
    out
}
