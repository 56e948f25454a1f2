use serde::Serialize;

use super::term::{BaseTag, CategoryTerm};
use crate::poly::{Coeff, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct SodBlock<C: Coeff> {
    pub term: CategoryTerm,
    /// Power of the relevant hyperplane class twisting this block.
    pub twist: i64,
    pub invariant: Poly<C>,
}

impl<C: Coeff> SodBlock<C> {
    pub fn new(term: CategoryTerm, twist: i64, invariant: Poly<C>) -> Self {
        Self {
            term,
            twist,
            invariant,
        }
    }
}

/// Ordered block list of a semiorthogonal decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct SodExpr<C: Coeff> {
    pub base: BaseTag,
    pub blocks: Vec<SodBlock<C>>,
}

impl<C: Coeff> SodExpr<C> {
    pub fn new(base: BaseTag, blocks: Vec<SodBlock<C>>) -> Self {
        Self { base, blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn total(&self) -> Poly<C> {
        self.blocks
            .iter()
            .fold(Poly::zero(), |acc, b| &acc + &b.invariant)
    }

    pub fn invariants(&self) -> Vec<Poly<C>> {
        self.blocks.iter().map(|b| b.invariant.clone()).collect()
    }

    /// Applies the autoequivalence `⊗ O(tH)` to every block.
    pub fn twisted(&self, t: i64) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| SodBlock::new(b.term.clone(), b.twist + t, b.invariant.clone()))
            .collect();
        Self::new(self.base.clone(), blocks)
    }
}

/// Same base, same length, and blockwise equal terms, twists and invariants.
pub fn sod_equal<C: Coeff>(x: &SodExpr<C>, y: &SodExpr<C>) -> bool {
    x == y
}

pub fn twist_sod<C: Coeff>(x: &SodExpr<C>, t: i64) -> SodExpr<C> {
    x.twisted(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sample() -> SodExpr<BigInt> {
        let a = CategoryTerm::atom("A");
        let b = CategoryTerm::atom("B");
        SodExpr::new(
            BaseTag::Projective,
            vec![
                SodBlock::new(a, 0, "e".parse().unwrap()),
                SodBlock::new(b, 1, Poly::int(3)),
            ],
        )
    }

    #[test]
    fn reflexive() {
        assert!(sod_equal(&sample(), &sample()));
    }

    #[test]
    fn order_matters() {
        let mut y = sample();
        y.blocks.reverse();
        assert!(!sod_equal(&sample(), &y));
    }

    #[test]
    fn canonical_invariants_compare_equal() {
        let mut y = sample();
        y.blocks[0].invariant = "e + 0".parse().unwrap();
        assert!(sod_equal(&sample(), &y));
    }

    #[test]
    fn twisting() {
        let x = sample();
        assert!(sod_equal(&twist_sod(&x, 0), &x));
        assert!(sod_equal(&twist_sod(&twist_sod(&x, 4), -4), &x));
        assert_eq!(twist_sod(&x, 7).total(), x.total());
        assert_eq!(twist_sod(&x, 2).blocks[1].twist, 3);
    }
}
