use super::{Expectation, LawEntry, LawReport, Tally};
use crate::error::{Error, Result};
use crate::matcat::{swap_matrix, Matrix};
use crate::scalars::SemiringTag;
use crate::tqft::{basis_frobenius, FrobeniusFlags, FrobeniusPresentation};

/// Checks the bialgebra and antipode laws for the monoid `(μ, e)` and
/// comonoid `(δ, ε)` of `p`.
pub fn check_hopf_bialgebra(p: &FrobeniusPresentation, antipode: &Matrix) -> Result<LawReport> {
    let d = p.dim();
    let tag = p.tag();
    tag.ensure_compatible(&antipode.tag())?;
    if antipode.shape() != (d, d) {
        return Err(Error::Type(format!(
            "antipode must be {d}x{d}, got {}x{}",
            antipode.rows(),
            antipode.cols()
        )));
    }
    let tol = tag.tolerance();
    let t = |a: &Matrix, b: &Matrix| a.tensor(b).expect("same semiring");
    let c = |ms: &[&Matrix]| Matrix::compose_all(ms.iter().copied()).expect("shapes agree");
    let id = Matrix::identity(tag, d);
    let (delta, eps, mu, e) = (p.delta(), p.eps(), p.mu(), p.unit());
    let where_ = || format!("dim {d}");
    let mut report = LawReport::new(tol);

    let ee = c(&[e, eps]);
    let mut left = Tally::new("hopf_left", "mu . (S x 1) . delta = e . eps", Expectation::Holds, tol);
    left.compare(&c(&[mu, &t(antipode, &id), delta]), &ee, where_);
    let mut right = Tally::new("hopf_right", "mu . (1 x S) . delta = e . eps", Expectation::Holds, tol);
    right.compare(&c(&[mu, &t(&id, antipode), delta]), &ee, where_);

    let middle = t(&t(&id, &swap_matrix(tag, d, d)), &id);
    let mut mult = Tally::new(
        "bialgebra_multiplication",
        "delta . mu = (mu x mu) . (1 x s x 1) . (delta x delta)",
        Expectation::Holds,
        tol,
    );
    mult.compare(&c(&[delta, mu]), &c(&[&t(mu, mu), &middle, &t(delta, delta)]), where_);
    let mut counit = Tally::new("bialgebra_counit", "eps . mu = eps x eps", Expectation::Holds, tol);
    counit.compare(&c(&[eps, mu]), &t(eps, eps), where_);
    let mut unit = Tally::new("bialgebra_unit", "delta . e = e x e", Expectation::Holds, tol);
    unit.compare(&c(&[delta, e]), &t(e, e), where_);
    let mut scalar = Tally::new("counit_unit", "eps . e = 1", Expectation::Info, tol);
    scalar.compare(&c(&[eps, e]), &Matrix::identity(tag, 1), where_);

    for tally in [left, right, mult, counit, unit, scalar] {
        report.push(tally.finish());
    }
    Ok(report)
}

/// The bialgebra of functions on the two-element group: pointwise
/// multiplication, the constant function as unit, `δf(g, h) = f(gh)` and
/// evaluation at the identity as counit. Returns the structure and its
/// antipode `Sf(g) = f(g⁻¹)`.
pub fn z2_function_bialgebra(tag: SemiringTag) -> (FrobeniusPresentation, Matrix) {
    let basis = basis_frobenius(2, tag);
    let delta = Matrix::from_fn(tag, 4, 2, |r, k| {
        let (g, h) = (r / 2, r % 2);
        if (g ^ h) == k {
            tag.one()
        } else {
            tag.zero()
        }
    });
    let eps = Matrix::from_fn(tag, 1, 2, |_, k| if k == 0 { tag.one() } else { tag.zero() });
    let mu = basis.mu().clone();
    let unit = basis.unit().clone();
    let p = FrobeniusPresentation::new(delta, eps, mu, unit, FrobeniusFlags::NONE)
        .expect("shapes are fixed");
    // every element of Z2 is its own inverse
    (p, Matrix::identity(tag, 2))
}

/// Laws that must fail: copying is not natural for non-classical states,
/// the relational copy is not natural either, and the cartesian product of
/// sets is not a product in relations.
pub fn negative_suite() -> LawReport {
    let mut report = LawReport::new(SemiringTag::COMPLEX.tolerance());

    let c = SemiringTag::COMPLEX;
    let copy = basis_frobenius(2, c);
    let plus = Matrix::real(&[&[1.0], &[1.0]]);
    let mut tally = Tally::new(
        "copy_naturality",
        "delta . f = (f x f) for f = |0> + |1>",
        Expectation::Fails,
        c.tolerance(),
    );
    let lhs = copy.delta().compose(&plus).expect("2x1 state");
    let rhs = plus.tensor(&plus).expect("same semiring");
    tally.compare(&lhs, &rhs, || {
        format!("delta . f = ({}) vs f x f = ({})", entries(&lhs), entries(&rhs))
    });
    report.push(tally.finish());

    let b = SemiringTag::BOOLEAN;
    let copy = basis_frobenius(2, b);
    let all = Matrix::boolean(&[&[1], &[1]]);
    let mut tally = Tally::new(
        "relation_copy_naturality",
        "copy . R = R x R for R = {(*,0), (*,1)}",
        Expectation::Fails,
        b.tolerance(),
    );
    let lhs = copy.delta().compose(&all).expect("2x1 relation");
    let rhs = all.tensor(&all).expect("same semiring");
    tally.compare(&lhs, &rhs, || "copy gives {(0,0),(1,1)}, R x R gives {0,1}^2".to_string());
    report.push(tally.finish());

    report.push(cartesian_is_not_product());
    report
}

fn entries(m: &Matrix) -> String {
    m.entries().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Searches every pair of relations `P -> {*}` out of `P = {*} x {*}` for
/// one with the universal property against cones out of `{*}`.
fn cartesian_is_not_product() -> LawEntry {
    let b = SemiringTag::BOOLEAN;
    let rel = |x: u8| Matrix::boolean(&[&[x]]);
    let mut universal = None;
    for (p1, p2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let ok = [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().all(|(f, g)| {
            let mediators = [0, 1]
                .into_iter()
                .filter(|&h| {
                    rel(p1).compose(&rel(h)).expect("1x1") == rel(f)
                        && rel(p2).compose(&rel(h)).expect("1x1") == rel(g)
                })
                .count();
            mediators == 1
        });
        if ok {
            universal = Some((p1, p2));
        }
    }
    let mut tally = Tally::new(
        "cartesian_product",
        "{*} x {*} with some pair of projections is a product in relations",
        Expectation::Fails,
        b.tolerance(),
    );
    match universal {
        Some(pair) => tally.record(0.0, || format!("universal pair {pair:?}")),
        None => tally.record(1.0, || {
            "none of the 4 projection pairs factors every cone from {*} uniquely".to_string()
        }),
    }
    tally.finish()
}
