use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lawcheck::{Expectation, LawReport, Tally};
use crate::matcat::{swap_matrix, Matrix};
use crate::scalars::{Scalar, ScalarValue, SemiringKind, SemiringTag};

/// Which optional laws a presentation claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusFlags {
    pub commutative: bool,
    pub special: bool,
    pub dagger: bool,
}

impl FrobeniusFlags {
    pub const ALL: FrobeniusFlags = FrobeniusFlags {
        commutative: true,
        special: true,
        dagger: true,
    };
    pub const NONE: FrobeniusFlags = FrobeniusFlags {
        commutative: false,
        special: false,
        dagger: false,
    };
}

/// A Frobenius structure on a `dim`-dimensional object given by its four
/// structure matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusPresentation {
    dim: usize,
    delta: Matrix,
    eps: Matrix,
    mu: Matrix,
    unit: Matrix,
    flags: FrobeniusFlags,
}

fn check_shape(name: &str, m: &Matrix, want: (usize, usize)) -> Result<()> {
    if m.shape() != want {
        return Err(Error::Interpretation(format!(
            "{name} must be {}x{}, got {}x{}",
            want.0,
            want.1,
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

impl FrobeniusPresentation {
    /// Checks shapes and semirings only; the laws are checked by
    /// [`verify_frobenius`].
    pub fn new(
        delta: Matrix,
        eps: Matrix,
        mu: Matrix,
        unit: Matrix,
        flags: FrobeniusFlags,
    ) -> Result<Self> {
        let d = eps.cols();
        check_shape("delta", &delta, (d * d, d))?;
        check_shape("eps", &eps, (1, d))?;
        check_shape("mu", &mu, (d, d * d))?;
        check_shape("e", &unit, (d, 1))?;
        let tag = delta.tag();
        for m in [&eps, &mu, &unit] {
            tag.ensure_compatible(&m.tag())?;
        }
        Ok(FrobeniusPresentation {
            dim: d,
            delta,
            eps,
            mu,
            unit,
            flags,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> SemiringTag {
        self.delta.tag()
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn eps(&self) -> &Matrix {
        &self.eps
    }

    pub fn mu(&self) -> &Matrix {
        &self.mu
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    pub fn flags(&self) -> FrobeniusFlags {
        self.flags
    }

    pub fn with_flags(mut self, flags: FrobeniusFlags) -> Self {
        self.flags = flags;
        self
    }

    /// Replaces the tag, e.g. to change the complex tolerance.
    pub fn retagged(self, tag: SemiringTag) -> Result<Self> {
        Ok(FrobeniusPresentation {
            dim: self.dim,
            delta: self.delta.retagged(tag)?,
            eps: self.eps.retagged(tag)?,
            mu: self.mu.retagged(tag)?,
            unit: self.unit.retagged(tag)?,
            flags: self.flags,
        })
    }

    /// Flips one entry of `delta`; used for mutation tests.
    pub fn flip_delta_entry(&mut self, row: usize, col: usize) {
        self.delta = self.delta.with_entry_flipped(row, col);
    }

    fn id(&self) -> Matrix {
        Matrix::identity(self.tag(), self.dim)
    }

    /// `δ ∘ e : I -> X ⊗ X`.
    pub fn cup(&self) -> Matrix {
        self.delta.compose(&self.unit).expect("shapes checked")
    }

    /// `ε ∘ μ : X ⊗ X -> I`.
    pub fn cap(&self) -> Matrix {
        self.eps.compose(&self.mu).expect("shapes checked")
    }

    /// `k` inputs merged by a left comb of `μ` (or `e` when `k = 0`).
    pub fn merge_comb(&self, k: usize) -> Matrix {
        match k {
            0 => self.unit.clone(),
            1 => self.id(),
            _ => {
                let prev = self.merge_comb(k - 1).tensor(&self.id()).expect("tensor");
                self.mu.compose(&prev).expect("shapes agree")
            }
        }
    }

    /// One input copied to `l` outputs by a left comb of `δ` (or `ε`).
    pub fn split_comb(&self, l: usize) -> Matrix {
        match l {
            0 => self.eps.clone(),
            1 => self.id(),
            _ => {
                let prev = self.split_comb(l - 1).tensor(&self.id()).expect("tensor");
                prev.compose(&self.delta).expect("shapes agree")
            }
        }
    }

    /// The spider with `k` inputs, `l` outputs and `genus` handles:
    /// split comb after `(μ ∘ δ)^genus` after merge comb.
    pub fn spider(&self, k: usize, l: usize, genus: u32) -> Matrix {
        let handle = self.mu.compose(&self.delta).expect("shapes agree");
        let mut m = self.merge_comb(k);
        for _ in 0..genus {
            m = handle.compose(&m).expect("shapes agree");
        }
        self.split_comb(l).compose(&m).expect("shapes agree")
    }

    /// Transport along an invertible complex matrix `a`:
    /// `δ' = (a ⊗ a) δ a⁻¹`, `ε' = ε a⁻¹`, `μ' = a μ (a⁻¹ ⊗ a⁻¹)`, `e' = a e`.
    /// The dagger flag survives only when `a` is unitary.
    pub fn conjugated(&self, a: &Matrix) -> Result<Self> {
        let inv = complex_inverse(a)?;
        if a.shape() != (self.dim, self.dim) {
            return Err(Error::Shape {
                op: "conjugate",
                left: a.shape(),
                right: (self.dim, self.dim),
            });
        }
        let aa = a.tensor(a)?;
        let ii = inv.tensor(&inv)?;
        let flags = FrobeniusFlags {
            dagger: self.flags.dagger && a.is_unitary(),
            ..self.flags
        };
        FrobeniusPresentation::new(
            Matrix::compose_all([&aa, &self.delta, &inv])?,
            self.eps.compose(&inv)?,
            Matrix::compose_all([a, &self.mu, &ii])?,
            a.compose(&self.unit)?,
            flags,
        )
    }

    /// `δ_λ = λ δ`, `ε_λ = ε / λ`; still Frobenius with `μ ∘ δ_λ = λ (μ ∘ δ)`,
    /// so neither special nor dagger unless `λ = 1`.
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        if self.tag().kind() != SemiringKind::Complex || lambda.norm() == 0.0 {
            return Err(Error::Precondition(
                "scaling needs a complex presentation and a nonzero factor".into(),
            ));
        }
        let tag = self.tag();
        let l = ScalarValue::new(tag, Scalar::Complex(lambda))?;
        let linv = ScalarValue::new(tag, Scalar::Complex(lambda.inv()))?;
        let one = (lambda - 1.0).norm() <= tag.tolerance();
        let flags = FrobeniusFlags {
            special: self.flags.special && one,
            dagger: self.flags.dagger && one,
            ..self.flags
        };
        FrobeniusPresentation::new(
            self.delta.scalar_multiple(&l)?,
            self.eps.scalar_multiple(&linv)?,
            self.mu.clone(),
            self.unit.clone(),
            flags,
        )
    }
}

/// Inverse of a square complex matrix.
pub(crate) fn complex_inverse(a: &Matrix) -> Result<Matrix> {
    if a.tag().kind() != SemiringKind::Complex || a.rows() != a.cols() {
        return Err(Error::Precondition(
            "only square complex matrices can be inverted".into(),
        ));
    }
    let n = a.rows();
    let m = DMatrix::from_fn(n, n, |i, j| match a.get(i, j) {
        Scalar::Complex(z) => *z,
        _ => unreachable!("complex tag"),
    });
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
    Ok(Matrix::from_fn(a.tag(), n, n, |i, j| Scalar::Complex(inv[(i, j)])))
}

/// The copy structure of the standard basis: `δ|i⟩ = |ii⟩`, `ε|i⟩ = 1`,
/// `μ = δ†`, `e = ε†`. Commutative, special and dagger.
pub fn basis_frobenius(d: usize, tag: SemiringTag) -> FrobeniusPresentation {
    let delta = Matrix::from_fn(tag, d * d, d, |r, c| {
        if r == c * d + c {
            tag.one()
        } else {
            tag.zero()
        }
    });
    let eps = Matrix::from_fn(tag, 1, d, |_, _| tag.one());
    FrobeniusPresentation {
        dim: d,
        mu: delta.dagger(),
        unit: eps.dagger(),
        delta,
        eps,
        flags: FrobeniusFlags::ALL,
    }
}

/// Checks the Frobenius laws and every law the flags claim. Unclaimed
/// optional laws are reported for information.
pub fn verify_frobenius(p: &FrobeniusPresentation) -> LawReport {
    let tag = p.tag();
    let tol = tag.tolerance();
    let id = p.id();
    let d = p.dim;
    let t = |a: &Matrix, b: &Matrix| a.tensor(b).expect("tensor");
    let c = |ms: &[&Matrix]| Matrix::compose_all(ms.iter().copied()).expect("shapes agree");
    let (delta, eps, mu, e) = (&p.delta, &p.eps, &p.mu, &p.unit);
    let sigma = swap_matrix(tag, d, d);
    let mut report = LawReport::new(tol);

    let mut law = |name: &str, anchor: &str, expect: Expectation, pairs: Vec<(&str, Matrix, Matrix)>| {
        let mut tally = Tally::new(name, anchor, expect, tol);
        for (which, lhs, rhs) in &pairs {
            tally.compare(lhs, rhs, || format!("{which} at dim {d}"));
        }
        report.push(tally.finish());
    };
    let holds = Expectation::Holds;
    law(
        "associativity",
        "mu . (mu x id) = mu . (id x mu)",
        holds,
        vec![("associativity", c(&[mu, &t(mu, &id)]), c(&[mu, &t(&id, mu)]))],
    );
    law(
        "unit",
        "mu . (e x id) = id = mu . (id x e)",
        holds,
        vec![
            ("left unit", c(&[mu, &t(e, &id)]), id.clone()),
            ("right unit", c(&[mu, &t(&id, e)]), id.clone()),
        ],
    );
    law(
        "coassociativity",
        "(delta x id) . delta = (id x delta) . delta",
        holds,
        vec![(
            "coassociativity",
            c(&[&t(delta, &id), delta]),
            c(&[&t(&id, delta), delta]),
        )],
    );
    law(
        "counit",
        "(eps x id) . delta = id = (id x eps) . delta",
        holds,
        vec![
            ("left counit", c(&[&t(eps, &id), delta]), id.clone()),
            ("right counit", c(&[&t(&id, eps), delta]), id.clone()),
        ],
    );
    law(
        "frobenius",
        "(id x mu) . (delta x id) = delta . mu = (mu x id) . (id x delta)",
        holds,
        vec![
            (
                "left frobenius",
                c(&[&t(&id, mu), &t(delta, &id)]),
                c(&[delta, mu]),
            ),
            (
                "right frobenius",
                c(&[&t(mu, &id), &t(&id, delta)]),
                c(&[delta, mu]),
            ),
        ],
    );
    let optional = |on: bool| if on { Expectation::Holds } else { Expectation::Info };
    law(
        "commutativity",
        "mu . sigma = mu and sigma . delta = delta",
        optional(p.flags.commutative),
        vec![
            ("commutative", c(&[mu, &sigma]), mu.clone()),
            ("cocommutative", c(&[&sigma, delta]), delta.clone()),
        ],
    );
    law(
        "speciality",
        "mu . delta = id",
        optional(p.flags.special),
        vec![("special", c(&[mu, delta]), id.clone())],
    );
    law(
        "dagger",
        "mu = delta^dagger and e = eps^dagger",
        optional(p.flags.dagger),
        vec![
            ("mu vs delta", mu.clone(), delta.dagger()),
            ("e vs eps", e.clone(), eps.dagger()),
        ],
    );
    report
}

/// Checks that `theta : p -> q` preserves all four structure maps.
pub fn check_frobenius_morphism(
    theta: &Matrix,
    p: &FrobeniusPresentation,
    q: &FrobeniusPresentation,
) -> Result<LawReport> {
    if theta.shape() != (q.dim, p.dim) {
        return Err(Error::Type(format!(
            "morphism must be {}x{} to go from dimension {} to {}, got {}x{}",
            q.dim,
            p.dim,
            p.dim,
            q.dim,
            theta.rows(),
            theta.cols()
        )));
    }
    p.tag().ensure_compatible(&q.tag())?;
    p.tag().ensure_compatible(&theta.tag())?;
    let tol = q.tag().tolerance();
    let tt = theta.tensor(theta)?;
    let c = |ms: &[&Matrix]| Matrix::compose_all(ms.iter().copied());
    let mut report = LawReport::new(tol);
    let cases = [
        (
            "comultiplication",
            "delta_q . theta = (theta x theta) . delta_p",
            c(&[&q.delta, theta])?,
            c(&[&tt, &p.delta])?,
        ),
        (
            "counit",
            "eps_q . theta = eps_p",
            c(&[&q.eps, theta])?,
            p.eps.clone(),
        ),
        (
            "multiplication",
            "theta . mu_p = mu_q . (theta x theta)",
            c(&[theta, &p.mu])?,
            c(&[&q.mu, &tt])?,
        ),
        (
            "unit",
            "theta . e_p = e_q",
            c(&[theta, &p.unit])?,
            q.unit.clone(),
        ),
    ];
    for (name, anchor, lhs, rhs) in cases {
        let mut tally = Tally::new(name, anchor, Expectation::Holds, tol);
        tally.compare(&lhs, &rhs, || format!("{}x{} morphism", theta.rows(), theta.cols()));
        report.push(tally.finish());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const C: SemiringTag = SemiringTag::COMPLEX;
    const B: SemiringTag = SemiringTag::BOOLEAN;

    #[test]
    fn basis_entries() {
        let p = basis_frobenius(1, C);
        for m in [p.delta(), p.eps(), p.mu(), p.unit()] {
            assert_eq!(*m, Matrix::identity(C, 1));
        }
        let p = basis_frobenius(2, C);
        assert_eq!(*p.delta(), Matrix::real(&[&[1.0, 0.0], &[0.0, 0.0], &[0.0, 0.0], &[0.0, 1.0]]));
        assert_eq!(*p.eps(), Matrix::real(&[&[1.0, 1.0]]));
        let p = basis_frobenius(3, C);
        assert_eq!(p.mu().compose(p.delta()).unwrap(), Matrix::identity(C, 3));
    }

    #[test]
    fn basis_verifies() {
        for tag in [C, B, SemiringTag::NATURAL] {
            for d in 0..=5 {
                let r = verify_frobenius(&basis_frobenius(d, tag));
                assert!(r.all_pass(), "d={d}\n{r}");
            }
        }
    }

    #[test]
    fn boolean_basis_is_the_copy_relation() {
        // δ = {(x, (x, x))}
        let p = basis_frobenius(3, B);
        for x in 0..3 {
            for pair in 0..9 {
                let expected = pair == x * 3 + x;
                assert_eq!(*p.delta().get(pair, x), Scalar::Bool(expected));
            }
        }
    }

    #[test]
    fn corrupted_delta_breaks_coassociativity() {
        let mut p = basis_frobenius(2, C);
        p.flip_delta_entry(1, 0);
        let r = verify_frobenius(&p);
        assert!(!r.entry("coassociativity").unwrap().pass, "{r}");
    }

    #[test]
    fn conjugation_by_invertible_matrix_verifies() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=4 {
            let a = Matrix::from_fn(C, d, d, |i, j| {
                let base = if i == j { 2.0 } else { 0.0 };
                Scalar::complex(base + rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
            });
            let p = basis_frobenius(d, C).conjugated(&a).unwrap();
            assert!(!p.flags().dagger || a.is_unitary());
            let r = verify_frobenius(&p.retagged(SemiringTag::complex_with_tolerance(1e-8).unwrap()).unwrap());
            assert!(r.all_as_expected(), "{r}");
        }
    }

    #[test]
    fn scaled_presentation_is_frobenius_but_not_special() {
        let p = basis_frobenius(2, C).scaled(Complex64::new(3.0, 0.0)).unwrap();
        let r = verify_frobenius(&p);
        assert!(r.all_as_expected(), "{r}");
        assert!(!r.entry("speciality").unwrap().pass);
        assert_eq!(r.entry("speciality").unwrap().expectation, Expectation::Info);
    }

    #[test]
    fn spider_matches_composites() {
        let p = basis_frobenius(2, C);
        assert_eq!(p.spider(2, 1, 0), *p.mu());
        assert_eq!(p.spider(1, 2, 0), *p.delta());
        assert_eq!(p.spider(0, 2, 0), p.cup());
        assert_eq!(p.spider(2, 0, 0), p.cap());
        // a basis spider is the GHZ-like tensor: one iff all indices agree
        let s = p.spider(2, 2, 0);
        for r in 0..4 {
            for c in 0..4 {
                let all_same = r == c && (r == 0 || r == 3);
                assert_eq!(*s.get(r, c), if all_same { C.one() } else { C.zero() });
            }
        }
    }

    #[test]
    fn morphisms() {
        let p = basis_frobenius(3, C);
        assert!(check_frobenius_morphism(&Matrix::identity(C, 3), &p, &p)
            .unwrap()
            .all_pass());
        let perm = Matrix::permutation(C, &[2, 0, 1]);
        assert!(check_frobenius_morphism(&perm, &p, &p).unwrap().all_pass());
        let ones = Matrix::real(&[&[1.0, 1.0]]);
        let r = check_frobenius_morphism(&ones, &basis_frobenius(2, C), &basis_frobenius(1, C))
            .unwrap();
        // the all-ones map is the counit, so it preserves the comonoid half
        assert!(r.entry("comultiplication").unwrap().pass);
        assert!(r.entry("counit").unwrap().pass);
        assert!(!r.entry("multiplication").unwrap().pass);
        assert!(!r.entry("unit").unwrap().pass);
        assert!(matches!(
            check_frobenius_morphism(&ones, &p, &p),
            Err(Error::Type(_))
        ));
    }
}
