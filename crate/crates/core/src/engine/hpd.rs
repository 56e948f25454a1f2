//! Universal hyperplanes, HPD totals and the n-HPD category.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{BaseTag, CategoryTerm, LefschetzProfile, SodBlock, SodExpr, Workspace};
use crate::poly::{Coeff, Poly};

/// `(N-1)·Σ c_k − N·Σ_{k≥1} c_k` for a component list `c`.
pub fn hpd_total_of_components<C: Coeff>(components: &[Poly<C>], n: usize) -> Poly<C> {
    let all = Poly::sum(components);
    let tail = Poly::sum(components.iter().skip(1));
    &all.scale_int(n as i64 - 1) - &tail.scale_int(n as i64)
}

/// Invariant of the HPD category `A^♮`.
pub fn hpd_total<C: Coeff>(profile: &LefschetzProfile<C>) -> Result<Poly<C>> {
    profile.require_moderate()?;
    Ok(hpd_total_of_components(
        &profile.components(),
        profile.ambient_rank(),
    ))
}

fn dual_space_term() -> CategoryTerm {
    CategoryTerm::atom("D(P(V*))")
}

/// `⟨A^♮, A_1(H)⊠D(P(V∨)), …, A_{m-1}((m-1)H)⊠D(P(V∨))⟩`.
pub fn universal_hyperplane_sod<C: Coeff>(profile: &LefschetzProfile<C>) -> Result<SodExpr<C>> {
    let n = profile.ambient_rank() as i64;
    let mut blocks = vec![SodBlock::new(
        CategoryTerm::atom(profile.name()).hpd(BaseTag::DualProjective),
        0,
        hpd_total(profile)?,
    )];
    for k in 1..profile.length() {
        let term = CategoryTerm::FiberProduct(
            vec![
                CategoryTerm::atom(profile.name()).component(k),
                dual_space_term(),
            ],
            BaseTag::point(),
        );
        blocks.push(SodBlock::new(
            term,
            k as i64,
            profile.component_rank(k).scale_int(n),
        ));
    }
    Ok(SodExpr::new(BaseTag::DualProjective, blocks))
}

/// Invariant of the two-fold universal hyperplane `H(A1, A2)`.
pub fn two_hyperplane_rank<C: Coeff>(a1: &Poly<C>, a2: &Poly<C>, e: &Poly<C>, n: usize) -> Poly<C> {
    e + &(a1 * a2).scale_int(n as i64 - 2)
}

/// Geometric input the n-fold universal hyperplane depends on.
pub trait HyperplaneData<C: Coeff> {
    fn is_disjoint(&self, names: &[&str]) -> bool;
    fn intersection(&self, a: &str, b: &str) -> Option<Poly<C>>;
}

impl<C: Coeff> HyperplaneData<C> for Workspace<C> {
    fn is_disjoint(&self, names: &[&str]) -> bool {
        Workspace::is_disjoint(self, names)
    }

    fn intersection(&self, a: &str, b: &str) -> Option<Poly<C>> {
        Workspace::intersection(self, a, b)
    }
}

/// Everything disjoint: the situation of a splitting `V = ⊕ V_k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Splitting;

impl<C: Coeff> HyperplaneData<C> for Splitting {
    fn is_disjoint(&self, _names: &[&str]) -> bool {
        true
    }

    fn intersection(&self, _a: &str, _b: &str) -> Option<Poly<C>> {
        Some(Poly::zero())
    }
}

/// Where the invariant of the full n-fold universal hyperplane came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperplaneSource {
    Explicit,
    Disjointness,
    Intersection,
    Universal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NHyperplane<C: Coeff> {
    pub sod: SodExpr<C>,
    /// Invariant of the n-HPD category `C`.
    pub c_invariant: Poly<C>,
    pub h_total: Poly<C>,
    pub source: HyperplaneSource,
    pub notes: Vec<String>,
}

pub const COMPLEMENT_READING_NOTE: &str =
    "n-hyperplane blocks pair C_I with components of the factors outside I";

fn subset_names<'a, C: Coeff>(profiles: &[&'a LefschetzProfile<C>], mask: u32) -> Vec<&'a str> {
    profiles
        .iter()
        .enumerate()
        .filter(|(k, _)| mask & (1 << k) != 0)
        .map(|(_, p)| p.name())
        .collect()
}

fn c_term<C: Coeff>(profiles: &[&LefschetzProfile<C>], mask: u32) -> CategoryTerm {
    let names = subset_names(profiles, mask);
    match names.len() {
        0 => dual_space_term(),
        1 => CategoryTerm::atom(names[0]).hpd(BaseTag::DualProjective),
        _ => CategoryTerm::FiberProduct(
            names.into_iter().map(CategoryTerm::atom).collect(),
            BaseTag::Projective,
        )
        .hpd(BaseTag::DualProjective),
    }
}

fn h_total<C: Coeff>(
    profiles: &[&LefschetzProfile<C>],
    mask: u32,
    full: u32,
    n: usize,
    data: &dyn HyperplaneData<C>,
    explicit: Option<&Poly<C>>,
) -> Result<(Poly<C>, HyperplaneSource)> {
    let names = subset_names(profiles, mask);
    let members: Vec<_> = profiles
        .iter()
        .enumerate()
        .filter(|(k, _)| mask & (1 << k) != 0)
        .map(|(_, p)| *p)
        .collect();
    let mut candidates = Vec::new();
    if mask == full {
        if let Some(x) = explicit {
            candidates.push((x.clone(), HyperplaneSource::Explicit));
        }
    }
    if members.len() == 1 {
        let a = members[0].total_invariant();
        candidates.push((a.scale_int(n as i64 - 1), HyperplaneSource::Universal));
    } else {
        let mut unique = names.clone();
        unique.sort_unstable();
        unique.dedup();
        let distinct = unique.len() == names.len();
        if distinct && data.is_disjoint(&names) {
            let prod = Poly::product(
                &members
                    .iter()
                    .map(|p| p.total_invariant())
                    .collect::<Vec<_>>(),
            );
            candidates.push((
                prod.scale_int(n as i64 - members.len() as i64),
                HyperplaneSource::Disjointness,
            ));
        }
        if members.len() == 2 {
            if let Some(e) = data.intersection(names[0], names[1]) {
                let r = two_hyperplane_rank(
                    &members[0].total_invariant(),
                    &members[1].total_invariant(),
                    &e,
                    n,
                );
                candidates.push((r, HyperplaneSource::Intersection));
            }
        }
    }
    let Some((first, source)) = candidates.first().cloned() else {
        return Err(Error::Underdetermined(format!(
            "no disjointness, intersection or explicit value for {{{}}}",
            names.join(", ")
        )));
    };
    if let Some((other, _)) = candidates.iter().find(|(v, _)| *v != first) {
        return Err(Error::ConflictingHyperplaneTotal {
            names: names.join(", "),
            first: first.to_string(),
            second: other.to_string(),
        });
    }
    Ok((first, source))
}

/// Index tuples `(i_k)` with `1 <= i_k < len_k`, in lexicographic order.
fn tuples(lens: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &len in lens {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..len).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// The n-fold universal hyperplane decomposition with the n-HPD block first.
///
/// For `I ⊊ {1..n}` and `i_k >= 1` over `k ∉ I` there is a block of
/// invariant `C_I · Π_{k∉I} rank(A⁽ᵏ⁾_{i_k})`, with `C_∅ = N` and `C_I`
/// obtained recursively as the complement inside `H_I`.
pub fn n_hyperplane_sod<C: Coeff>(
    profiles: &[&LefschetzProfile<C>],
    data: &dyn HyperplaneData<C>,
    explicit: Option<&Poly<C>>,
) -> Result<NHyperplane<C>> {
    let count = profiles.len();
    if count == 0 || count > 16 {
        return Err(Error::InvalidArgument(format!(
            "n-fold universal hyperplane needs 1..=16 categories, got {count}"
        )));
    }
    let n = profiles[0].ambient_rank();
    for p in profiles {
        p.require_moderate()?;
        if p.ambient_rank() != n {
            return Err(Error::AmbientMismatch {
                left: profiles[0].name().to_string(),
                left_rank: n,
                right: p.name().to_string(),
                right_rank: p.ambient_rank(),
            });
        }
    }
    let full: u32 = (1 << count) - 1;
    let tails: Vec<Poly<C>> = profiles.iter().map(|p| p.tail_total()).collect();

    let mut c = vec![Poly::<C>::zero(); 1 << count];
    c[0] = Poly::int(n as i64);
    let mut masks: Vec<u32> = (1..=full).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut source = HyperplaneSource::Universal;
    let mut h_full = Poly::zero();
    for &mask in &masks {
        let (h, src) = h_total(profiles, mask, full, n, data, explicit)?;
        let mut removed = Poly::zero();
        let mut sub = (mask.wrapping_sub(1)) & mask;
        loop {
            let outside: Vec<&Poly<C>> = (0..count)
                .filter(|k| mask & !sub & (1 << k) != 0)
                .map(|k| &tails[k])
                .collect();
            removed += &(&c[sub as usize] * &Poly::product(outside));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        c[mask as usize] = &h - &removed;
        if mask == full {
            source = src;
            h_full = h;
        }
    }

    let mut blocks = vec![SodBlock::new(
        c_term(profiles, full),
        0,
        c[full as usize].clone(),
    )];
    let mut proper: Vec<u32> = (0..full).collect();
    proper.sort_by(|a, b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then_with(|| index_list(*a, count).cmp(&index_list(*b, count)))
    });
    for mask in proper {
        let outside: Vec<usize> = (0..count).filter(|k| mask & (1 << k) == 0).collect();
        let lens: Vec<usize> = outside.iter().map(|&k| profiles[k].length()).collect();
        for t in tuples(&lens) {
            let mut factors: Vec<CategoryTerm> = outside
                .iter()
                .zip(&t)
                .map(|(&k, &i)| CategoryTerm::atom(profiles[k].name()).component(i))
                .collect();
            factors.push(c_term(profiles, mask));
            let ranks: Vec<Poly<C>> = outside
                .iter()
                .zip(&t)
                .map(|(&k, &i)| profiles[k].component_rank(i))
                .collect();
            let inv = &c[mask as usize] * &Poly::product(&ranks);
            let twist: usize = t.iter().sum();
            blocks.push(SodBlock::new(
                CategoryTerm::FiberProduct(factors, BaseTag::point()),
                twist as i64,
                inv,
            ));
        }
    }
    let notes = if count >= 2 {
        vec![COMPLEMENT_READING_NOTE.to_string()]
    } else {
        Vec::new()
    };
    Ok(NHyperplane {
        sod: SodExpr::new(BaseTag::DualProjective, blocks),
        c_invariant: c[full as usize].clone(),
        h_total: h_full,
        source,
        notes,
    })
}

fn index_list(mask: u32, count: usize) -> Vec<usize> {
    (0..count).filter(|k| mask & (1 << k) != 0).collect()
}
