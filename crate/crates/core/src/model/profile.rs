use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};

/// Whether a constructor enforces `length < ambient rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Moderation {
    #[default]
    Require,
    Allow,
}

/// Additive-invariant data of a Lefschetz category over `P(V)`.
///
/// `primitive_right[j]` is the invariant of the primary component of index
/// `j`; the Lefschetz component `A_k` is generated by the primitives of index
/// `>= k`. Left data default to right data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct LefschetzProfile<C: Coeff> {
    name: String,
    ambient_rank: usize,
    length: usize,
    primitive_right: Vec<Poly<C>>,
    primitive_left: Vec<Poly<C>>,
}

fn weighted_total<C: Coeff>(prims: &[Poly<C>]) -> Poly<C> {
    prims.iter().enumerate().fold(Poly::zero(), |acc, (j, p)| {
        &acc + &p.scale_int(j as i64 + 1)
    })
}

impl<C: Coeff> LefschetzProfile<C> {
    /// Validated moderate profile.
    pub fn new(
        name: impl Into<String>,
        ambient_rank: usize,
        primitive_right: Vec<Poly<C>>,
        primitive_left: Option<Vec<Poly<C>>>,
    ) -> Result<Self> {
        Self::with_moderation(
            name,
            ambient_rank,
            primitive_right,
            primitive_left,
            Moderation::Require,
        )
    }

    pub fn with_moderation(
        name: impl Into<String>,
        ambient_rank: usize,
        primitive_right: Vec<Poly<C>>,
        primitive_left: Option<Vec<Poly<C>>>,
        moderation: Moderation,
    ) -> Result<Self> {
        let name = name.into();
        if ambient_rank < 2 {
            return Err(Error::InvalidArgument(format!(
                "category `{name}`: ambient rank must be at least 2, got {ambient_rank}"
            )));
        }
        let length = primitive_right.len();
        if length == 0 {
            return Err(Error::InvalidArgument(format!(
                "category `{name}`: at least one primitive component is required"
            )));
        }
        if moderation == Moderation::Require && length >= ambient_rank {
            return Err(Error::NonModerate {
                name,
                length,
                ambient: ambient_rank,
            });
        }
        let primitive_left = match primitive_left {
            None => primitive_right.clone(),
            Some(left) => {
                if left.len() != length {
                    return Err(Error::LeftRightMismatch {
                        name,
                        detail: format!("{} left primitives for length {length}", left.len()),
                    });
                }
                let (r, l) = (weighted_total(&primitive_right), weighted_total(&left));
                if r != l {
                    return Err(Error::LeftRightMismatch {
                        name,
                        detail: format!("right total {r} vs left total {l}"),
                    });
                }
                left
            }
        };
        Ok(Self {
            name,
            ambient_rank,
            length,
            primitive_right,
            primitive_left,
        })
    }

    /// Profile whose Lefschetz components are `components[0] ⊇ components[1] ⊇ …`.
    pub fn from_components(
        name: impl Into<String>,
        ambient_rank: usize,
        components: &[Poly<C>],
        moderation: Moderation,
    ) -> Result<Self> {
        let prims = (0..components.len())
            .map(|k| match components.get(k + 1) {
                Some(next) => &components[k] - next,
                None => components[k].clone(),
            })
            .collect();
        Self::with_moderation(name, ambient_rank, prims, None, moderation)
    }

    /// `D(pt)` over `P(V)`: a single exceptional object.
    pub fn point(name: impl Into<String>, ambient_rank: usize) -> Result<Self> {
        Self::new(name, ambient_rank, vec![Poly::one()], None)
    }

    /// Beilinson decomposition of a linear subspace `P^{r-1} ⊂ P(V)`.
    pub fn linear_subspace(name: impl Into<String>, r: usize, ambient_rank: usize) -> Result<Self> {
        let mut prims = vec![Poly::zero(); r.max(1)];
        prims[r.max(1) - 1] = Poly::one();
        Self::new(name, ambient_rank, prims, None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn primitive_right(&self) -> &[Poly<C>] {
        &self.primitive_right
    }

    pub fn primitive_left(&self) -> &[Poly<C>] {
        &self.primitive_left
    }

    pub fn primitive(&self, j: usize) -> Poly<C> {
        self.primitive_right
            .get(j)
            .cloned()
            .unwrap_or_else(Poly::zero)
    }

    pub fn has_symmetric_data(&self) -> bool {
        self.primitive_left == self.primitive_right
    }

    pub fn is_moderate(&self) -> bool {
        self.length < self.ambient_rank
    }

    pub fn require_moderate(&self) -> Result<()> {
        if self.is_moderate() {
            Ok(())
        } else {
            Err(Error::NonModerate {
                name: self.name.clone(),
                length: self.length,
                ambient: self.ambient_rank,
            })
        }
    }

    /// Invariant of `A_k`; zero for `k >= length`.
    pub fn component_rank(&self, k: usize) -> Poly<C> {
        Poly::sum(self.primitive_right.iter().skip(k))
    }

    pub fn center(&self) -> Poly<C> {
        self.component_rank(0)
    }

    pub fn components(&self) -> Vec<Poly<C>> {
        (0..self.length).map(|k| self.component_rank(k)).collect()
    }

    /// Invariant of the whole category: `Σ_k rank(A_k)`.
    pub fn total_invariant(&self) -> Poly<C> {
        Poly::sum(&self.components())
    }

    /// `Σ_{k>=1} rank(A_k)`: everything outside the first Lefschetz block.
    pub fn tail_total(&self) -> Poly<C> {
        Poly::sum(&self.components()[1..])
    }

    /// Primitives whose value at the all-ones assignment is negative.
    pub fn plausibility_warnings(&self) -> Vec<String> {
        self.primitive_right
            .iter()
            .enumerate()
            .filter(|(_, p)| p.eval_all_ones().is_negative())
            .map(|(j, p)| {
                format!(
                    "category `{}`: primitive {j} = {p} is negative at the all-ones assignment",
                    self.name
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    fn ints(v: &[i64]) -> Vec<P> {
        v.iter().map(|&n| P::int(n)).collect()
    }

    #[test]
    fn grassmannian_profile() {
        let g = LefschetzProfile::new("Gr25", 10, ints(&[0, 0, 0, 0, 2]), None).unwrap();
        assert_eq!(g.components(), ints(&[2, 2, 2, 2, 2]));
        assert_eq!(g.total_invariant(), P::int(10));
        assert_eq!(g.component_rank(0), P::int(2));
        assert_eq!(g.component_rank(5), P::zero());
    }

    #[test]
    fn point_profile() {
        let pt = LefschetzProfile::<BigInt>::point("pt", 3).unwrap();
        assert_eq!(pt.length(), 1);
        assert_eq!(pt.total_invariant(), P::one());
        assert_eq!(pt.component_rank(0), P::one());
    }

    #[test]
    fn length_equal_to_rank_is_not_moderate() {
        let err = LefschetzProfile::new("PV", 4, ints(&[0, 0, 0, 1]), None).unwrap_err();
        assert!(matches!(
            err,
            Error::NonModerate {
                length: 4,
                ambient: 4,
                ..
            }
        ));
        let ok = LefschetzProfile::with_moderation(
            "PV",
            4,
            ints(&[0, 0, 0, 1]),
            None,
            Moderation::Allow,
        );
        assert!(!ok.unwrap().is_moderate());
    }

    #[test]
    fn symbolic_total() {
        let a: P = "a".parse().unwrap();
        let b: P = "b".parse().unwrap();
        let prof = LefschetzProfile::new("S", 5, vec![a.clone(), b.clone()], None).unwrap();
        assert_eq!(prof.total_invariant(), &a + &b.scale_int(2));
    }

    #[test]
    fn left_right_totals_must_agree() {
        let err = LefschetzProfile::new("X", 5, ints(&[1, 1]), Some(ints(&[1, 2]))).unwrap_err();
        assert!(matches!(err, Error::LeftRightMismatch { .. }));
        // (1, 1) and (3, 0) both weigh 3
        let ok = LefschetzProfile::new("X", 5, ints(&[1, 1]), Some(ints(&[3, 0]))).unwrap();
        assert!(!ok.has_symmetric_data());
        let err = LefschetzProfile::new("X", 5, ints(&[1, 1]), Some(ints(&[3]))).unwrap_err();
        assert!(matches!(err, Error::LeftRightMismatch { .. }));
    }

    #[test]
    fn components_round_trip_to_primitives() {
        let prof = LefschetzProfile::new("X", 7, ints(&[3, 0, 2, 1]), None).unwrap();
        for k in 0..prof.length() {
            let diff = &prof.component_rank(k) - &prof.component_rank(k + 1);
            assert_eq!(diff, prof.primitive(k));
        }
        let back =
            LefschetzProfile::from_components("X", 7, &prof.components(), Moderation::Require)
                .unwrap();
        assert_eq!(back, prof);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(LefschetzProfile::<BigInt>::new("X", 1, ints(&[1]), None).is_err());
        assert!(LefschetzProfile::<BigInt>::new("X", 4, vec![], None).is_err());
    }

    #[test]
    fn negative_primitive_is_flagged() {
        let prof = LefschetzProfile::new("X", 4, ints(&[2, -1]), None).unwrap();
        assert_eq!(prof.plausibility_warnings().len(), 1);
    }
}
