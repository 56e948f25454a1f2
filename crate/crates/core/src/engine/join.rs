//! Ruled joins, categorical joins and refined blow-ups along a base locus.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    BaseTag, CategoryTerm, LefschetzProfile, Moderation, SodBlock, SodExpr, Workspace,
};
use crate::poly::{Coeff, Poly};

/// `P_s = Σ_{i_1+…+i_n = s} Π_k p⁽ᵏ⁾_{i_k}`.
pub fn primitive_convolution<C: Coeff>(lists: &[&[Poly<C>]]) -> Vec<Poly<C>> {
    let mut acc = vec![Poly::one()];
    for list in lists {
        if list.is_empty() {
            return Vec::new();
        }
        let mut next = vec![Poly::zero(); acc.len() + list.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in list.iter().enumerate() {
                next[i + j] += &(a * b);
            }
        }
        acc = next;
    }
    acc
}

/// `J̄_i = Σ_{i_1+…+i_n ≥ i+1−n} Π_k p⁽ᵏ⁾_{i_k}` for `i < Σ m_k`.
pub fn join_components_of<C: Coeff>(lists: &[&[Poly<C>]]) -> Vec<Poly<C>> {
    let n = lists.len() as i64;
    let length: usize = lists.iter().map(|l| l.len()).sum();
    let conv = primitive_convolution(lists);
    let mut suffix = vec![Poly::zero(); conv.len() + 1];
    for s in (0..conv.len()).rev() {
        suffix[s] = &suffix[s + 1] + &conv[s];
    }
    (0..length as i64)
        .map(|i| {
            let lo = (i + 1 - n).max(0) as usize;
            suffix.get(lo).cloned().unwrap_or_else(Poly::zero)
        })
        .collect()
}

fn same_ambient<C: Coeff>(profiles: &[&LefschetzProfile<C>]) -> Result<usize> {
    let n = profiles
        .first()
        .ok_or_else(|| Error::InvalidArgument("a join needs at least one category".into()))?
        .ambient_rank();
    for p in profiles {
        if p.ambient_rank() != n {
            return Err(Error::AmbientMismatch {
                left: profiles[0].name().to_string(),
                left_rank: n,
                right: p.name().to_string(),
                right_rank: p.ambient_rank(),
            });
        }
    }
    Ok(n)
}

/// Components of the ruled join over `P(V ⊕ V)`; length `m_1 + m_2`.
pub fn ruled_join_components<C: Coeff>(
    p: &LefschetzProfile<C>,
    q: &LefschetzProfile<C>,
) -> Result<Vec<Poly<C>>> {
    same_ambient(&[p, q])?;
    Ok(join_components_of(&[
        p.primitive_right(),
        q.primitive_right(),
    ]))
}

/// The ruled join as a Lefschetz category over `P(V ⊕ V)`.
pub fn ruled_join_profile<C: Coeff>(
    p: &LefschetzProfile<C>,
    q: &LefschetzProfile<C>,
) -> Result<LefschetzProfile<C>> {
    let comps = ruled_join_components(p, q)?;
    LefschetzProfile::from_components(
        format!("ruled({}, {})", p.name(), q.name()),
        2 * p.ambient_rank(),
        &comps,
        Moderation::Allow,
    )
}

/// Components of the n-fold join, with no disjointness requirement.
pub fn n_join_components<C: Coeff>(profiles: &[&LefschetzProfile<C>]) -> Result<Vec<Poly<C>>> {
    same_ambient(profiles)?;
    let lists: Vec<&[Poly<C>]> = profiles.iter().map(|p| p.primitive_right()).collect();
    Ok(join_components_of(&lists))
}

/// Components of the n-fold join of categories satisfying condition (D_n).
pub fn n_join_profile<C: Coeff>(
    profiles: &[&LefschetzProfile<C>],
    ws: &Workspace<C>,
) -> Result<Vec<Poly<C>>> {
    let names: Vec<&str> = profiles.iter().map(|p| p.name()).collect();
    if !ws.is_disjoint(&names) {
        return Err(Error::MissingDisjointness(names.join(", ")));
    }
    n_join_components(profiles)
}

/// Upper bound on `i_1 + i_2` in the description of `J'_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JPrimeBound {
    /// `N − 3`, from `J'_i = J_{N−1}^⊥ ∩ J_i`.
    #[default]
    Orthogonal,
    /// `N − 2`; kept only as a negative control.
    Printed,
}

impl JPrimeBound {
    pub fn upper(self, n: usize) -> i64 {
        match self {
            JPrimeBound::Orthogonal => n as i64 - 3,
            JPrimeBound::Printed => n as i64 - 2,
        }
    }
}

pub const PRINTED_BOUND_NOTE: &str =
    "J'_i computed with upper bound N-2 instead of N-3 (mutation control)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinResult<C: Coeff> {
    pub names: Vec<String>,
    pub ambient: usize,
    pub bound: JPrimeBound,
    /// Ruled-join components `J̄_i`, `i < m_1 + m_2`.
    pub jbar: Vec<Poly<C>>,
    /// `J'_i`, `i = 0..N−2`.
    pub jprime: Vec<Poly<C>>,
    pub intersection: Poly<C>,
    /// Invariant of the correction term `ℰ`.
    pub e_invariant: Poly<C>,
    /// `J'_i + ℰ`, `i = 0..N−2`.
    pub components: Vec<Poly<C>>,
    pub total: Poly<C>,
}

/// `Σ J̄_i + (N−1)e − N·Σ_{i≥N−1} J̄_i`.
pub fn join_conservation_rhs<C: Coeff>(jbar: &[Poly<C>], e: &Poly<C>, n: usize) -> Poly<C> {
    let all = Poly::sum(jbar);
    let high = Poly::sum(jbar.iter().skip(n - 1));
    &(&all + &e.scale_int(n as i64 - 1)) - &high.scale_int(n as i64)
}

impl<C: Coeff> JoinResult<C> {
    pub fn conservation_rhs(&self) -> Poly<C> {
        join_conservation_rhs(&self.jbar, &self.intersection, self.ambient)
    }

    pub fn term(&self) -> CategoryTerm {
        CategoryTerm::Join(self.names.iter().map(CategoryTerm::atom).collect())
    }

    /// `⟨J_0, J_1(H), …, J_{N−2}((N−2)H)⟩`.
    pub fn sod(&self) -> SodExpr<C> {
        let blocks = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| SodBlock::new(self.term().component(i), i as i64, c.clone()))
            .collect();
        SodExpr::new(BaseTag::Projective, blocks)
    }

    /// The join as a Lefschetz category over the same `P(V)`.
    pub fn as_profile(&self) -> Result<LefschetzProfile<C>> {
        LefschetzProfile::from_components(
            self.term().to_string(),
            self.ambient,
            &self.components,
            Moderation::Require,
        )
    }
}

/// Categorical join with the intersection invariant read from the workspace.
pub fn join_profile<C: Coeff>(
    p: &LefschetzProfile<C>,
    q: &LefschetzProfile<C>,
    ws: &Workspace<C>,
) -> Result<JoinResult<C>> {
    same_ambient(&[p, q])?;
    let e = ws.require_intersection(p.name(), q.name())?;
    join_profile_with(p, q, &e, JPrimeBound::Orthogonal)
}

pub fn join_profile_with<C: Coeff>(
    p: &LefschetzProfile<C>,
    q: &LefschetzProfile<C>,
    e: &Poly<C>,
    bound: JPrimeBound,
) -> Result<JoinResult<C>> {
    let n = same_ambient(&[p, q])?;
    let jbar = join_components_of(&[p.primitive_right(), q.primitive_right()]);
    let conv = primitive_convolution(&[p.primitive_right(), q.primitive_right()]);
    let upper = bound.upper(n);
    let jprime: Vec<Poly<C>> = (0..n as i64 - 1)
        .map(|i| {
            Poly::sum(
                conv.iter()
                    .enumerate()
                    .filter(|(s, _)| (i - 1..=upper).contains(&(*s as i64)))
                    .map(|(_, v)| v),
            )
        })
        .collect();
    let e_invariant = e - &Poly::sum(jbar.iter().skip(n));
    let components: Vec<Poly<C>> = jprime.iter().map(|j| j + &e_invariant).collect();
    let total = Poly::sum(&components);
    Ok(JoinResult {
        names: vec![p.name().to_string(), q.name().to_string()],
        ambient: n,
        bound,
        jbar,
        jprime,
        intersection: e.clone(),
        e_invariant,
        components,
        total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedBlowup<C: Coeff> {
    pub name: String,
    /// New ambient rank `ℓ`.
    pub ambient: usize,
    /// `A'_k = A_{ℓ−1}^⊥ ∩ A_k`, `k = 0..ℓ−2`.
    pub a_prime: Vec<Poly<C>>,
    /// Essential part `C_L` of the base locus.
    pub c_l: Poly<C>,
    /// `⟨A'_k, C_L⟩`, `k = 0..ℓ−2`.
    pub components: Vec<Poly<C>>,
    pub total: Poly<C>,
}

impl<C: Coeff> RefinedBlowup<C> {
    pub fn sod(&self) -> SodExpr<C> {
        let base = CategoryTerm::atom(&self.name).pullback("Bl_ref");
        let blocks = self
            .components
            .iter()
            .enumerate()
            .map(|(k, c)| SodBlock::new(base.clone().component(k), k as i64, c.clone()))
            .collect();
        SodExpr::new(BaseTag::DualSub, blocks)
    }
}

/// Refined blow-up of `p` along its base locus of invariant `z` for a rank-`ℓ` system.
pub fn refined_blowup_profile<C: Coeff>(
    p: &LefschetzProfile<C>,
    ell: usize,
    z: &Poly<C>,
) -> Result<RefinedBlowup<C>> {
    if ell < 2 || ell > p.ambient_rank() {
        return Err(Error::InvalidArgument(format!(
            "refined blow-up of `{}` needs 2 <= rank L <= {}, got {ell}",
            p.name(),
            p.ambient_rank()
        )));
    }
    let a_prime: Vec<Poly<C>> = (0..ell - 1)
        .map(|k| Poly::sum(p.primitive_right().iter().take(ell - 1).skip(k)))
        .collect();
    let removed = Poly::sum(
        &(ell..p.length())
            .map(|k| p.component_rank(k))
            .collect::<Vec<_>>(),
    );
    let c_l = z - &removed;
    let components: Vec<Poly<C>> = a_prime.iter().map(|a| a + &c_l).collect();
    let total = Poly::sum(&components);
    Ok(RefinedBlowup {
        name: p.name().to_string(),
        ambient: ell,
        a_prime,
        c_l,
        components,
        total,
    })
}

/// `total(A) + (ℓ−1)z − ℓ·Σ_{k≥ℓ−1} rank(A_k)`.
pub fn refined_blowup_total<C: Coeff>(p: &LefschetzProfile<C>, ell: usize, z: &Poly<C>) -> Poly<C> {
    let high = Poly::sum(
        &(ell - 1..p.length())
            .map(|k| p.component_rank(k))
            .collect::<Vec<_>>(),
    );
    &(&p.total_invariant() + &z.scale_int(ell as i64 - 1)) - &high.scale_int(ell as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;
    type Prof = LefschetzProfile<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<P> {
        v.iter().map(|&k| P::int(k)).collect()
    }

    fn gr25(name: &str) -> Prof {
        Prof::new(name, 10, ints(&[0, 0, 0, 0, 2]), None).unwrap()
    }

    #[test]
    fn ruled_join_examples() {
        let j = ruled_join_components(&gr25("A"), &gr25("B")).unwrap();
        assert_eq!(j, ints(&[4; 10]));
        let pt = Prof::point("pt", 3).unwrap();
        assert_eq!(ruled_join_components(&pt, &pt).unwrap(), ints(&[1, 1]));
        let zero = Prof::new("Z", 5, ints(&[0, 0]), None).unwrap();
        let x = Prof::new("X", 5, vec![p("a"), p("b")], None).unwrap();
        assert!(ruled_join_components(&x, &zero)
            .unwrap()
            .iter()
            .all(P::is_zero));
        assert!(matches!(
            ruled_join_components(&pt, &gr25("G")),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn ruled_total() {
        let x = Prof::new("X", 6, vec![p("a"), p("b")], None).unwrap();
        let y = Prof::new("Y", 6, vec![p("c"), P::zero(), p("d")], None).unwrap();
        let total = Poly::sum(&ruled_join_components(&x, &y).unwrap());
        let expect = &(&x.total_invariant() * &y.center()) + &(&x.center() * &y.total_invariant());
        assert_eq!(total, expect);
    }

    #[test]
    fn gr25_join() {
        let j =
            join_profile_with(&gr25("A"), &gr25("B"), &p("e"), JPrimeBound::Orthogonal).unwrap();
        assert!(j.jprime.iter().all(P::is_zero));
        assert_eq!(j.e_invariant, p("e"));
        assert_eq!(j.components, vec![p("e"); 9]);
        assert_eq!(j.total, p("9*e"));
        assert_eq!(j.total, j.conservation_rhs());

        let bad = join_profile_with(&gr25("A"), &gr25("B"), &p("e"), JPrimeBound::Printed).unwrap();
        assert_eq!(bad.jprime, ints(&[4; 9]));
        assert_ne!(bad.total, bad.conservation_rhs());
    }

    #[test]
    fn points() {
        let pt = Prof::point("P", 3).unwrap();
        let j = join_profile_with(&pt, &pt, &P::zero(), JPrimeBound::Orthogonal).unwrap();
        assert_eq!(j.components, ints(&[1, 1]));
        let pts: Vec<Prof> = (0..3).map(|_| Prof::point("P", 4).unwrap()).collect();
        let refs: Vec<&Prof> = pts.iter().collect();
        assert_eq!(n_join_components(&refs).unwrap(), ints(&[1, 1, 1]));
    }

    #[test]
    fn n_join_specializations() {
        let x = Prof::new("X", 6, vec![p("a"), p("b"), p("c")], None).unwrap();
        assert_eq!(n_join_components(&[&x]).unwrap(), x.components());
        let y = Prof::new("Y", 6, vec![p("d"), p("f")], None).unwrap();
        assert_eq!(
            n_join_components(&[&x, &y]).unwrap(),
            ruled_join_components(&x, &y).unwrap()
        );
        let ws = Workspace::new();
        assert!(matches!(
            n_join_profile(&[&x, &y], &ws),
            Err(Error::MissingDisjointness(_))
        ));
    }

    #[test]
    fn refined_blowup_branches() {
        let x = Prof::new("X", 8, vec![p("a"), p("b")], None).unwrap();
        let empty = refined_blowup_profile(&x, 4, &P::zero()).unwrap();
        assert!(empty.c_l.is_zero());
        assert_eq!(empty.a_prime[..2], x.components()[..]);
        let z = refined_blowup_profile(&x, 4, &p("z")).unwrap();
        assert_eq!(z.c_l, p("z"));
        assert_eq!(z.total, refined_blowup_total(&x, 4, &p("z")));
        assert!(refined_blowup_profile(&x, 9, &p("z")).is_err());
        assert!(refined_blowup_profile(&x, 1, &p("z")).is_err());
    }

    #[test]
    fn refined_blowup_of_ruled_join_is_the_join() {
        let x = Prof::new("X", 5, vec![p("a"), p("b"), p("c")], None).unwrap();
        let y = Prof::new("Y", 5, vec![p("d"), p("f"), P::zero(), p("g")], None).unwrap();
        let ruled = ruled_join_profile(&x, &y).unwrap();
        let rb = refined_blowup_profile(&ruled, 5, &p("e")).unwrap();
        let j = join_profile_with(&x, &y, &p("e"), JPrimeBound::Orthogonal).unwrap();
        assert_eq!(rb.a_prime, j.jprime);
        assert_eq!(rb.c_l, j.e_invariant);
        assert_eq!(rb.components, j.components);
    }
}
