//! Orlov-type decompositions: projective bundles, blow-ups, hyperplane sections.

use crate::error::{Error, Result};
use crate::model::{BaseTag, CategoryTerm, SodBlock, SodExpr};
use crate::poly::{Coeff, Poly};

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}

/// `⟨π*A, π*A(1), …, π*A(r-1)⟩` on a `P^{r-1}`-bundle.
pub fn projective_bundle_sod<C: Coeff>(
    cat: &CategoryTerm,
    inv: &Poly<C>,
    r: usize,
) -> Result<SodExpr<C>> {
    require(r >= 1, || {
        format!("projective bundle rank must be >= 1, got {r}")
    })?;
    let blocks = (0..r)
        .map(|k| SodBlock::new(cat.clone().pullback("pi*"), k as i64, inv.clone()))
        .collect();
    Ok(SodExpr::new(BaseTag::Named("P(E)".into()), blocks))
}

/// Blow-up along a center of codimension `r`, with default labels `A` and `A_Z`.
pub fn blowup_sod<C: Coeff>(
    cat_inv: &Poly<C>,
    center_inv: &Poly<C>,
    r: usize,
) -> Result<SodExpr<C>> {
    blowup_sod_labeled(
        &CategoryTerm::atom("A"),
        cat_inv,
        &CategoryTerm::atom("A_Z"),
        center_inv,
        r,
    )
}

/// `⟨β*A, (A_Z)_0, …, (A_Z)_{r-2}⟩`.
pub fn blowup_sod_labeled<C: Coeff>(
    cat: &CategoryTerm,
    cat_inv: &Poly<C>,
    center: &CategoryTerm,
    center_inv: &Poly<C>,
    r: usize,
) -> Result<SodExpr<C>> {
    require(r >= 2, || {
        format!("blow-up codimension must be >= 2, got {r}")
    })?;
    let mut blocks = vec![SodBlock::new(
        cat.clone().pullback("beta*"),
        0,
        cat_inv.clone(),
    )];
    blocks.extend(
        (0..r - 1)
            .map(|k| SodBlock::new(center.clone().component(k), k as i64, center_inv.clone())),
    );
    Ok(SodExpr::new(BaseTag::Named("Bl".into()), blocks))
}

/// Zero locus of a regular section of a rank-`r` bundle, with default labels.
pub fn hyperplane_sod<C: Coeff>(
    cat_inv: &Poly<C>,
    base_locus_inv: &Poly<C>,
    r: usize,
) -> Result<SodExpr<C>> {
    hyperplane_sod_labeled(
        &CategoryTerm::atom("A"),
        cat_inv,
        &CategoryTerm::atom("A_Z"),
        base_locus_inv,
        r,
    )
}

/// `⟨j_*ρ*A_Z, π*A(1), …, π*A(r-1)⟩`.
pub fn hyperplane_sod_labeled<C: Coeff>(
    cat: &CategoryTerm,
    cat_inv: &Poly<C>,
    base_locus: &CategoryTerm,
    base_locus_inv: &Poly<C>,
    r: usize,
) -> Result<SodExpr<C>> {
    require(r >= 2, || format!("bundle rank must be >= 2, got {r}"))?;
    let mut blocks = vec![SodBlock::new(
        base_locus.clone().pullback("j*rho*"),
        0,
        base_locus_inv.clone(),
    )];
    blocks.extend(
        (1..r).map(|k| SodBlock::new(cat.clone().pullback("pi*"), k as i64, cat_inv.clone())),
    );
    Ok(SodExpr::new(BaseTag::Named("H".into()), blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn projective_bundle() {
        let a = CategoryTerm::atom("A");
        let s = projective_bundle_sod(&a, &p("a"), 2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.blocks[1].twist, 1);
        assert_eq!(s.total(), p("2*a"));
        assert_eq!(
            projective_bundle_sod(&a, &p("a"), 1).unwrap().total(),
            p("a")
        );
        assert_eq!(
            projective_bundle_sod(&a, &P::int(10), 9).unwrap().total(),
            P::int(90)
        );
        assert!(projective_bundle_sod(&a, &p("a"), 0).is_err());
    }

    #[test]
    fn blowup() {
        assert_eq!(
            blowup_sod(&p("a"), &p("z"), 3).unwrap().total(),
            p("a + 2*z")
        );
        assert_eq!(blowup_sod(&p("a"), &P::zero(), 5).unwrap().total(), p("a"));
        let s = blowup_sod(&P::int(40), &p("e"), 10).unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(s.total(), p("40 + 9*e"));
        assert!(blowup_sod(&p("a"), &p("z"), 1).is_err());
    }

    #[test]
    fn hyperplane() {
        let s = hyperplane_sod(&p("a"), &p("z"), 2).unwrap();
        assert_eq!(s.invariants(), vec![p("z"), p("a")]);
        assert_eq!(
            hyperplane_sod(&p("a"), &P::zero(), 2).unwrap().total(),
            p("a")
        );
        // abstract-join hyperplane for a pair of Gr(2,5)'s: P^1-bundle invariant 2·10·10
        let s = hyperplane_sod(&P::int(200), &p("e"), 10).unwrap();
        assert_eq!(s.total(), p("e + 1800"));
    }
}
