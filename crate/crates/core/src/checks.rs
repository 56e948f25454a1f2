//! Duality statements as identities between independently derived invariants.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::engine::{
    hpd_total, hpd_total_of_components, join_components_of, join_profile_with, n_hyperplane_sod,
    refined_blowup_profile, ruled_join_profile, HyperplaneData, JPrimeBound, NHyperplane,
    Splitting, PRINTED_BOUND_NOTE,
};
use crate::error::{Error, Result};
use crate::model::{
    BaseTag, CategoryTerm, CheckSpec, LefschetzProfile, SodBlock, SodExpr, Workspace,
};
use crate::poly::{Assignment, Coeff, Poly};

pub const INVARIANT_LEVEL_NOTE: &str = "invariant-level consequence";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Underdetermined,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Underdetermined => "underdetermined",
        })
    }
}

/// Outcome of one identity. `status == Pass` iff both sides are present and
/// equal; a witness is present iff `status == Fail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult<C: Coeff> {
    pub name: String,
    pub lhs: Option<Poly<C>>,
    pub rhs: Option<Poly<C>>,
    pub status: CheckStatus,
    pub witness: Option<Assignment<C>>,
    pub notes: Vec<String>,
}

impl<C: Coeff> CheckResult<C> {
    pub fn compare(
        name: impl Into<String>,
        lhs: Poly<C>,
        rhs: Poly<C>,
        notes: Vec<String>,
    ) -> Self {
        let diff = &lhs - &rhs;
        let (status, witness) = if diff.is_zero() {
            (CheckStatus::Pass, None)
        } else {
            let mut w = diff
                .nonvanishing_point()
                .expect("a nonzero polynomial has a nonvanishing point");
            // Symbols that cancel in the difference still need a value to evaluate the sides.
            for s in lhs.symbols().into_iter().chain(rhs.symbols()) {
                w.entry(s).or_insert_with(C::zero);
            }
            (CheckStatus::Fail, Some(w))
        };
        Self {
            name: name.into(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            status,
            witness,
            notes,
        }
    }

    pub fn underdetermined(
        name: impl Into<String>,
        lhs: Option<Poly<C>>,
        rhs: Option<Poly<C>>,
        notes: Vec<String>,
    ) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            status: CheckStatus::Underdetermined,
            witness: None,
            notes,
        }
    }

    /// Compares when both sides are known.
    pub fn from_sides(
        name: impl Into<String>,
        lhs: Option<Poly<C>>,
        rhs: Option<Poly<C>>,
        notes: Vec<String>,
    ) -> Self {
        match (lhs, rhs) {
            (Some(l), Some(r)) => Self::compare(name, l, r, notes),
            (l, r) => Self::underdetermined(name, l, r, notes),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Confirms the witness separates the two sides.
    pub fn witness_separates(&self) -> bool {
        match (&self.witness, &self.lhs, &self.rhs) {
            (Some(w), Some(l), Some(r)) => l.eval(w) != r.eval(w),
            _ => false,
        }
    }
}

struct Witness<'a, C: Coeff>(&'a Assignment<C>);

impl<C: Coeff> Serialize for Witness<'_, C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            match v.to_i64() {
                Some(n) => map.serialize_entry(k.as_str(), &n)?,
                None => map.serialize_entry(k.as_str(), &v.to_string())?,
            }
        }
        map.end()
    }
}

fn side<C: Coeff>(p: &Option<Poly<C>>) -> String {
    p.as_ref().map_or_else(|| "?".to_string(), Poly::to_string)
}

impl<C: Coeff> Serialize for CheckResult<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        map.serialize_entry("name", &self.name)?;
        map.serialize_entry("lhs", &side(&self.lhs))?;
        map.serialize_entry("rhs", &side(&self.rhs))?;
        map.serialize_entry("status", &self.status)?;
        map.serialize_entry("witness", &self.witness.as_ref().map(Witness))?;
        map.serialize_entry("notes", &self.notes)?;
        map.end()
    }
}

/// A decomposition emitted while running a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSod<C: Coeff> {
    pub name: String,
    pub sod: SodExpr<C>,
}

impl<C: Coeff> NamedSod<C> {
    pub fn new(name: impl Into<String>, sod: SodExpr<C>) -> Self {
        Self {
            name: name.into(),
            sod,
        }
    }
}

impl<C: Coeff> Serialize for NamedSod<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("name", &self.name)?;
        map.serialize_entry("base", &self.sod.base)?;
        map.serialize_entry("blocks", &self.sod.blocks)?;
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome<C: Coeff> {
    pub results: Vec<CheckResult<C>>,
    pub sods: Vec<NamedSod<C>>,
    pub warnings: Vec<String>,
}

impl<C: Coeff> CheckOutcome<C> {
    fn single(result: CheckResult<C>, sods: Vec<NamedSod<C>>) -> Self {
        Self {
            results: vec![result],
            sods,
            warnings: Vec::new(),
        }
    }
}

/// Static shape of a check statement.
#[derive(Debug, Clone, Copy)]
pub struct CheckSignature {
    pub name: &'static str,
    pub min_args: usize,
    pub max_args: Option<usize>,
    pub options: &'static [&'static str],
    pub required: &'static [&'static str],
    /// Consumes HPD data, so every argument must be moderate.
    pub consumes_hpd: bool,
    pub same_ambient: bool,
    pub needs_disjoint: bool,
    pub needs_dual: bool,
}

const fn sig(name: &'static str, min_args: usize, max_args: Option<usize>) -> CheckSignature {
    CheckSignature {
        name,
        min_args,
        max_args,
        options: &[],
        required: &[],
        consumes_hpd: true,
        same_ambient: true,
        needs_disjoint: false,
        needs_dual: false,
    }
}

pub const CHECKS: &[CheckSignature] = &[
    CheckSignature {
        options: &["htotal"],
        ..sig("main_theorem", 2, Some(2))
    },
    CheckSignature {
        options: &["htotal", "length"],
        needs_disjoint: true,
        ..sig("n_hpd_center", 1, None)
    },
    CheckSignature {
        options: &["n2"],
        required: &["n2"],
        ..sig("cone_part1", 1, Some(1))
    },
    CheckSignature {
        options: &["n2"],
        required: &["n2"],
        ..sig("cone_part2", 1, Some(1))
    },
    CheckSignature {
        same_ambient: false,
        ..sig("join_linear", 1, None)
    },
    CheckSignature {
        needs_dual: true,
        ..sig("dual_profile", 1, Some(1))
    },
    CheckSignature {
        consumes_hpd: false,
        ..sig("join_steps", 2, Some(2))
    },
    CheckSignature {
        consumes_hpd: false,
        ..sig("subspace_join", 2, Some(2))
    },
];

pub fn signature(name: &str) -> Option<&'static CheckSignature> {
    CHECKS.iter().find(|s| s.name == name)
}

/// Switches for negative controls.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckConfig {
    pub bound: JPrimeBound,
}

fn base_notes(cfg: &CheckConfig) -> Vec<String> {
    let mut notes = vec![INVARIANT_LEVEL_NOTE.to_string()];
    if cfg.bound == JPrimeBound::Printed {
        notes.push(PRINTED_BOUND_NOTE.to_string());
    }
    notes
}

/// Turns missing geometric input into `Ok(Err(reason))`; other errors propagate.
fn soft<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(
            e @ (Error::Underdetermined(_)
            | Error::UnresolvedIntersection(..)
            | Error::UnresolvedBaseLocus(_)),
        ) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

fn names<C: Coeff>(profiles: &[&LefschetzProfile<C>]) -> String {
    profiles
        .iter()
        .map(|p| p.name())
        .collect::<Vec<_>>()
        .join(", ")
}

fn join_term<C: Coeff>(profiles: &[&LefschetzProfile<C>]) -> CategoryTerm {
    CategoryTerm::Join(
        profiles
            .iter()
            .map(|p| CategoryTerm::atom(p.name()))
            .collect(),
    )
}

fn components_sod<C: Coeff>(term: CategoryTerm, comps: &[Poly<C>]) -> SodExpr<C> {
    let blocks = comps
        .iter()
        .enumerate()
        .map(|(i, c)| SodBlock::new(term.clone().component(i), i as i64, c.clone()))
        .collect();
    SodExpr::new(BaseTag::Projective, blocks)
}

fn nh_sod<C: Coeff>(profiles: &[&LefschetzProfile<C>], nh: &NHyperplane<C>) -> NamedSod<C> {
    NamedSod::new(format!("hyperplane({})", names(profiles)), nh.sod.clone())
}

/// HPD of the join against the n-HPD category of the pair.
pub fn check_main_theorem<C: Coeff>(
    name: &str,
    p: &LefschetzProfile<C>,
    q: &LefschetzProfile<C>,
    data: &dyn HyperplaneData<C>,
    htotal: Option<&Poly<C>>,
    cfg: &CheckConfig,
) -> Result<CheckOutcome<C>> {
    p.require_moderate()?;
    q.require_moderate()?;
    let mut notes = base_notes(cfg);
    let mut sods = Vec::new();
    let lhs = match data.intersection(p.name(), q.name()) {
        Some(e) => {
            let join = join_profile_with(p, q, &e, cfg.bound)?;
            sods.push(NamedSod::new(join.term().to_string(), join.sod()));
            Some(hpd_total_of_components(&join.components, join.ambient))
        }
        None => {
            notes.push(Error::UnresolvedIntersection(p.name().into(), q.name().into()).to_string());
            None
        }
    };
    let rhs = match soft(n_hyperplane_sod(&[p, q], data, htotal))? {
        Ok(nh) => {
            notes.extend(nh.notes.iter().cloned());
            notes.push(format!(
                "fiber product of the HPD categories over P(V*) has derived invariant {}",
                nh.c_invariant
            ));
            sods.push(nh_sod(&[p, q], &nh));
            Some(nh.c_invariant)
        }
        Err(reason) => {
            notes.push(reason);
            None
        }
    };
    Ok(CheckOutcome::single(
        CheckResult::from_sides(name, lhs, rhs, notes),
        sods,
    ))
}

/// Center, total, dual-center and length statements for the n-fold disjoint join.
pub fn check_n_hpd_center<C: Coeff>(
    name: &str,
    profiles: &[&LefschetzProfile<C>],
    ws: &Workspace<C>,
    length_claim: Option<usize>,
    htotal: Option<&Poly<C>>,
    cfg: &CheckConfig,
) -> Result<CheckOutcome<C>> {
    let list: Vec<&str> = profiles.iter().map(|p| p.name()).collect();
    if !ws.is_disjoint(&list) {
        return Err(Error::MissingDisjointness(list.join(", ")));
    }
    for p in profiles {
        p.require_moderate()?;
    }
    let n = profiles[0].ambient_rank();
    let prims: Vec<&[Poly<C>]> = profiles.iter().map(|p| p.primitive_right()).collect();
    let comps = join_components_of(&prims);
    if comps.len() >= n {
        return Err(Error::JoinNotModerate {
            name: join_term(profiles).to_string(),
            length: comps.len(),
            ambient: n,
        });
    }
    let centers: Vec<Poly<C>> = profiles.iter().map(|p| p.center()).collect();
    let center_product = Poly::product(&centers);
    let notes = base_notes(cfg);
    let mut results = vec![CheckResult::compare(
        format!("{name}.center"),
        comps[0].clone(),
        center_product.clone(),
        notes.clone(),
    )];
    let mut sods = vec![NamedSod::new(
        join_term(profiles).to_string(),
        components_sod(join_term(profiles), &comps),
    )];

    let lhs = hpd_total_of_components(&comps, n);
    let total = match soft(n_hyperplane_sod(profiles, ws, htotal))? {
        Ok(nh) => {
            let mut nn = notes.clone();
            nn.extend(nh.notes.iter().cloned());
            sods.push(nh_sod(profiles, &nh));
            CheckResult::compare(format!("{name}.total"), lhs, nh.c_invariant, nn)
        }
        Err(reason) => {
            let mut nn = notes.clone();
            nn.push(reason);
            CheckResult::underdetermined(format!("{name}.total"), Some(lhs), None, nn)
        }
    };
    results.push(total);

    let duals: Vec<Option<&LefschetzProfile<C>>> =
        profiles.iter().map(|p| ws.dual(p.name())).collect();
    let missing: Vec<&str> = profiles
        .iter()
        .zip(&duals)
        .filter(|(_, d)| d.is_none())
        .map(|(p, _)| p.name())
        .collect();
    if missing.is_empty() {
        let dual_centers: Vec<Poly<C>> = duals.iter().flatten().map(|d| d.center()).collect();
        results.push(CheckResult::compare(
            format!("{name}.dual_centers"),
            Poly::product(&dual_centers),
            center_product,
            notes.clone(),
        ));
    }
    if let Some(claim) = length_claim {
        let claim_poly = Poly::int(claim as i64);
        if missing.is_empty() {
            let sum: usize = duals.iter().flatten().map(|d| d.length()).sum();
            let mut nn = notes.clone();
            nn.push("length of the n-HPD category read from the declared duals".into());
            results.push(CheckResult::compare(
                format!("{name}.length"),
                Poly::int(sum as i64),
                claim_poly,
                nn,
            ));
        } else {
            let mut nn = notes.clone();
            nn.push(format!("no dual declared for: {}", missing.join(", ")));
            results.push(CheckResult::underdetermined(
                format!("{name}.length"),
                None,
                Some(claim_poly),
                nn,
            ));
        }
    }
    Ok(CheckOutcome {
        results,
        sods,
        warnings: Vec::new(),
    })
}

fn beilinson<C: Coeff>(name: &str, r: usize, ambient: usize) -> Result<LefschetzProfile<C>> {
    let mut prims = vec![Poly::zero(); r];
    prims[r - 1] = Poly::one();
    LefschetzProfile::with_moderation(name, ambient, prims, None, crate::model::Moderation::Allow)
}

fn require_n2(n2: usize) -> Result<()> {
    if n2 == 0 {
        Err(Error::InvalidArgument("n2 must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// HPD over `P(V1 ⊕ V2)` against the join of the dual with `P(V2∨)`.
pub fn check_cone_part1<C: Coeff>(
    name: &str,
    p: &LefschetzProfile<C>,
    n2: usize,
    cfg: &CheckConfig,
) -> Result<CheckResult<C>> {
    require_n2(n2)?;
    let n = p.ambient_rank() + n2;
    let lhs = hpd_total_of_components(&p.components(), n);
    let rhs = &hpd_total(p)? + &p.center().scale_int(n2 as i64);
    Ok(CheckResult::compare(name, lhs, rhs, base_notes(cfg)))
}

/// HPD of the join with `P(V2)` against the HPD over `P(V1)`.
pub fn check_cone_part2<C: Coeff>(
    name: &str,
    p: &LefschetzProfile<C>,
    n2: usize,
    cfg: &CheckConfig,
) -> Result<CheckResult<C>> {
    require_n2(n2)?;
    let n = p.ambient_rank() + n2;
    let full = beilinson::<C>("P(V2)", n2, n)?;
    let comps = join_components_of(&[p.primitive_right(), full.primitive_right()]);
    if comps.len() >= n {
        return Err(Error::JoinNotModerate {
            name: format!("join({}, P(V2))", p.name()),
            length: comps.len(),
            ambient: n,
        });
    }
    let lhs = hpd_total_of_components(&comps, n);
    let rhs = hpd_total(p)?;
    Ok(CheckResult::compare(name, lhs, rhs, base_notes(cfg)))
}

/// Splitting case: HPD of the join of `A⁽ᵏ⁾ ⊂ P(V_k)` inside `P(⊕V_k)`.
pub fn check_join_linear<C: Coeff>(
    name: &str,
    profiles: &[&LefschetzProfile<C>],
    duals: &[Option<&LefschetzProfile<C>>],
    cfg: &CheckConfig,
) -> Result<CheckOutcome<C>> {
    for p in profiles {
        p.require_moderate()?;
    }
    let n: usize = profiles.iter().map(|p| p.ambient_rank()).sum();
    let prims: Vec<&[Poly<C>]> = profiles.iter().map(|p| p.primitive_right()).collect();
    let comps = join_components_of(&prims);
    let lhs = hpd_total_of_components(&comps, n);
    let notes = base_notes(cfg);

    let mut dual_notes = notes.clone();
    let rhs_dual = if duals.iter().all(Option::is_some) && !duals.is_empty() {
        let dprims: Vec<&[Poly<C>]> = duals
            .iter()
            .flatten()
            .map(|d| d.primitive_right())
            .collect();
        dual_notes.push("dual side joined from the declared dual profiles".into());
        Poly::sum(&join_components_of(&dprims))
    } else {
        dual_notes.push("dual side from HPD totals and centers".into());
        let mut acc = Poly::zero();
        for (k, p) in profiles.iter().enumerate() {
            let others: Vec<Poly<C>> = profiles
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, q)| q.center())
                .collect();
            acc += &(&hpd_total(p)? * &Poly::product(&others));
        }
        acc
    };
    let views: Vec<LefschetzProfile<C>> = profiles
        .iter()
        .map(|p| {
            LefschetzProfile::new(
                p.name(),
                n,
                p.primitive_right().to_vec(),
                Some(p.primitive_left().to_vec()),
            )
        })
        .collect::<Result<_>>()?;
    let view_refs: Vec<&LefschetzProfile<C>> = views.iter().collect();
    let nh = n_hyperplane_sod(&view_refs, &Splitting, None)?;
    let mut nh_notes = notes.clone();
    nh_notes.extend(nh.notes.iter().cloned());

    Ok(CheckOutcome {
        results: vec![
            CheckResult::compare(
                format!("{name}.dual_join"),
                lhs.clone(),
                rhs_dual,
                dual_notes,
            ),
            CheckResult::compare(
                format!("{name}.hyperplane"),
                lhs,
                nh.c_invariant.clone(),
                nh_notes,
            ),
        ],
        sods: vec![
            NamedSod::new(
                join_term(profiles).to_string(),
                components_sod(join_term(profiles), &comps),
            ),
            nh_sod(&view_refs, &nh),
        ],
        warnings: Vec::new(),
    })
}

/// Totals, centers and double dual of a declared HPD profile.
pub fn check_dual_profile<C: Coeff>(
    name: &str,
    p: &LefschetzProfile<C>,
    dual: &LefschetzProfile<C>,
    cfg: &CheckConfig,
) -> Result<CheckOutcome<C>> {
    let notes = base_notes(cfg);
    let results = vec![
        CheckResult::compare(
            format!("{name}.total"),
            dual.total_invariant(),
            hpd_total(p)?,
            notes.clone(),
        ),
        CheckResult::compare(
            format!("{name}.center"),
            dual.center(),
            p.center(),
            notes.clone(),
        ),
        CheckResult::compare(
            format!("{name}.double_dual"),
            hpd_total(dual)?,
            p.total_invariant(),
            notes,
        ),
    ];
    let sod = crate::engine::universal_hyperplane_sod(p)?;
    Ok(CheckOutcome {
        results,
        sods: vec![NamedSod::new(
            format!("universal_hyperplane({})", p.name()),
            sod,
        )],
        warnings: Vec::new(),
    })
}

/// Join components against the refined blow-up of the ruled join, plus the
/// conservation identity of the construction.
pub fn check_join_steps<C: Coeff>(
    name: &str,
    p: &LefschetzProfile<C>,
    q: &LefschetzProfile<C>,
    data: &dyn HyperplaneData<C>,
    cfg: &CheckConfig,
) -> Result<CheckOutcome<C>> {
    let notes = base_notes(cfg);
    let Some(e) = data.intersection(p.name(), q.name()) else {
        let mut nn = notes;
        nn.push(Error::UnresolvedIntersection(p.name().into(), q.name().into()).to_string());
        return Ok(CheckOutcome::single(
            CheckResult::underdetermined(name, None, None, nn),
            Vec::new(),
        ));
    };
    let join = join_profile_with(p, q, &e, cfg.bound)?;
    let ruled = ruled_join_profile(p, q)?;
    let rb = refined_blowup_profile(&ruled, join.ambient, &e)?;
    let mut results = vec![CheckResult::compare(
        format!("{name}.conservation"),
        join.total.clone(),
        join.conservation_rhs(),
        notes.clone(),
    )];
    for (i, (l, r)) in join.components.iter().zip(&rb.components).enumerate() {
        results.push(CheckResult::compare(
            format!("{name}.component[{i}]"),
            l.clone(),
            r.clone(),
            notes.clone(),
        ));
    }
    let sods = vec![
        NamedSod::new(join.term().to_string(), join.sod()),
        NamedSod::new(format!("refined_blowup({})", ruled.name()), rb.sod()),
    ];
    Ok(CheckOutcome {
        results,
        sods,
        warnings: Vec::new(),
    })
}

/// `A ⋆ P(L^⊥)` against the layout built from the refined blow-up of `A`.
pub fn check_subspace_join<C: Coeff>(
    name: &str,
    p: &LefschetzProfile<C>,
    l: &LefschetzProfile<C>,
    data: &dyn HyperplaneData<C>,
    cfg: &CheckConfig,
) -> Result<CheckOutcome<C>> {
    let r = l.length();
    let is_beilinson = l.primitive_right()[..r - 1].iter().all(Poly::is_zero)
        && l.primitive_right()[r - 1] == Poly::one();
    if !is_beilinson {
        return Err(Error::InvalidArgument(format!(
            "`{}` is not a linear subspace profile [0, .., 0, 1]",
            l.name()
        )));
    }
    let n = p.ambient_rank();
    if l.ambient_rank() != n {
        return Err(Error::AmbientMismatch {
            left: p.name().to_string(),
            left_rank: n,
            right: l.name().to_string(),
            right_rank: l.ambient_rank(),
        });
    }
    if r + 2 > n {
        return Err(Error::InvalidArgument(format!(
            "`{}` spans P^{}; the complementary system needs rank >= 2 inside P({n})",
            l.name(),
            r - 1
        )));
    }
    let ell = n - r;
    let mut notes = base_notes(cfg);
    let Some(z) = data.intersection(p.name(), l.name()) else {
        notes.push(Error::UnresolvedBaseLocus(p.name().into()).to_string());
        return Ok(CheckOutcome::single(
            CheckResult::underdetermined(name, None, None, notes),
            Vec::new(),
        ));
    };
    if z.is_zero() {
        notes.push("empty base locus".into());
    } else if p.length() < ell {
        notes.push("nonempty base locus with length below rank L".into());
    }
    let join = join_profile_with(p, l, &z, cfg.bound)?;
    let rb = refined_blowup_profile(p, ell, &z)?;
    let results = join
        .components
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let idx = k.saturating_sub(n - ell);
            let expected = &rb.a_prime[idx] + &rb.c_l;
            CheckResult::compare(
                format!("{name}.component[{k}]"),
                c.clone(),
                expected,
                notes.clone(),
            )
        })
        .collect();
    Ok(CheckOutcome {
        results,
        sods: vec![NamedSod::new(join.term().to_string(), join.sod())],
        warnings: Vec::new(),
    })
}

fn profiles_of<'a, C: Coeff>(
    spec: &CheckSpec<C>,
    ws: &'a Workspace<C>,
) -> Result<Vec<&'a LefschetzProfile<C>>> {
    spec.args.iter().map(|a| ws.category(a)).collect()
}

/// Runs one check statement.
pub fn run_check<C: Coeff>(
    spec: &CheckSpec<C>,
    ws: &Workspace<C>,
    cfg: &CheckConfig,
) -> Result<CheckOutcome<C>> {
    let name = spec.sort_key();
    let ps = profiles_of(spec, ws)?;
    let mut out = match spec.name.as_str() {
        "main_theorem" => check_main_theorem(&name, ps[0], ps[1], ws, spec.option("htotal"), cfg)?,
        "n_hpd_center" => check_n_hpd_center(
            &name,
            &ps,
            ws,
            spec.int_option("length")?,
            spec.option("htotal"),
            cfg,
        )?,
        "cone_part1" | "cone_part2" => {
            let n2 = spec
                .int_option("n2")?
                .ok_or_else(|| Error::InvalidArgument(format!("`{name}` needs n2=")))?;
            let r = if spec.name == "cone_part1" {
                check_cone_part1(&name, ps[0], n2, cfg)?
            } else {
                check_cone_part2(&name, ps[0], n2, cfg)?
            };
            CheckOutcome::single(r, Vec::new())
        }
        "join_linear" => {
            let duals: Vec<_> = ps.iter().map(|p| ws.dual(p.name())).collect();
            check_join_linear(&name, &ps, &duals, cfg)?
        }
        "dual_profile" => {
            let dual = ws.dual(ps[0].name()).ok_or_else(|| {
                Error::InvalidArgument(format!("no dual declared for `{}`", ps[0].name()))
            })?;
            check_dual_profile(&name, ps[0], dual, cfg)?
        }
        "join_steps" => check_join_steps(&name, ps[0], ps[1], ws, cfg)?,
        "subspace_join" => check_subspace_join(&name, ps[0], ps[1], ws, cfg)?,
        other => return Err(Error::InvalidArgument(format!("unknown check `{other}`"))),
    };
    if cfg.bound == JPrimeBound::Printed {
        out.warnings.push(PRINTED_BOUND_NOTE.to_string());
    }
    if out.results.iter().any(|r| {
        r.notes
            .iter()
            .any(|n| n == crate::engine::COMPLEMENT_READING_NOTE)
    }) {
        out.warnings
            .push(crate::engine::COMPLEMENT_READING_NOTE.to_string());
    }
    Ok(out)
}

/// Runs every check of the workspace in its canonical order.
pub fn run_all<C: Coeff>(ws: &Workspace<C>, cfg: &CheckConfig) -> Result<Vec<CheckOutcome<C>>> {
    ws.checks().iter().map(|s| run_check(s, ws, cfg)).collect()
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

    fn gr25(name: &str) -> Prof {
        Prof::new(
            name,
            10,
            vec![P::zero(), P::zero(), P::zero(), P::zero(), P::int(2)],
            None,
        )
        .unwrap()
    }

    fn gr25_ws() -> Workspace<BigInt> {
        let mut ws = Workspace::new();
        ws.declare_symbol("e").unwrap();
        ws.add_category(gr25("A")).unwrap();
        ws.add_category(gr25("B")).unwrap();
        ws.declare_intersection("A", "B", 10, p("e")).unwrap();
        ws.finalize().unwrap();
        ws
    }

    #[test]
    fn main_theorem_gr25() {
        let ws = gr25_ws();
        let (a, b) = (ws.category("A").unwrap(), ws.category("B").unwrap());
        let out = check_main_theorem("m", a, b, &ws, None, &CheckConfig::default()).unwrap();
        let r = &out.results[0];
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.lhs, Some(p("e")));
        assert_eq!(r.rhs, Some(p("e")));
        assert!(r.notes.iter().any(|n| n == INVARIANT_LEVEL_NOTE));
        let swapped = check_main_theorem("m", b, a, &ws, None, &CheckConfig::default()).unwrap();
        assert_eq!(swapped.results[0].lhs, r.lhs);
        assert_eq!(swapped.results[0].rhs, r.rhs);
    }

    #[test]
    fn main_theorem_without_intersection_is_underdetermined() {
        let mut ws = Workspace::new();
        ws.add_category(gr25("A")).unwrap();
        ws.add_category(gr25("B")).unwrap();
        let (a, b) = (ws.category("A").unwrap(), ws.category("B").unwrap());
        let out = check_main_theorem("m", a, b, &ws, None, &CheckConfig::default()).unwrap();
        assert_eq!(out.results[0].status, CheckStatus::Underdetermined);
        assert!(out.results[0].witness.is_none());
    }

    #[test]
    fn points_in_the_plane() {
        let a = Prof::point("P", 3).unwrap();
        let b = Prof::point("Q", 3).unwrap();
        let out =
            check_main_theorem("m", &a, &b, &Splitting, None, &CheckConfig::default()).unwrap();
        assert_eq!(out.results[0].lhs, Some(P::one()));
        assert!(out.results[0].passed());
    }

    #[test]
    fn cone_fixtures() {
        let cfg = CheckConfig::default();
        let pt = Prof::point("pt", 2).unwrap();
        let r = check_cone_part1("c", &pt, 2, &cfg).unwrap();
        assert_eq!(
            (r.lhs.clone(), r.status),
            (Some(P::int(3)), CheckStatus::Pass)
        );
        let r = check_cone_part1("c", &gr25("G"), 3, &cfg).unwrap();
        assert_eq!(
            (r.lhs.clone(), r.rhs.clone()),
            (Some(P::int(16)), Some(P::int(16)))
        );
        let r = check_cone_part2("c", &pt, 1, &cfg).unwrap();
        assert_eq!(
            (r.lhs.clone(), r.status),
            (Some(P::one()), CheckStatus::Pass)
        );
        assert!(check_cone_part2("c", &gr25("G"), 2, &cfg).unwrap().passed());
    }

    #[test]
    fn corrupted_dual_fails_with_witness() {
        let g = gr25("G");
        let good = gr25("G");
        let out = check_dual_profile("d", &g, &good, &CheckConfig::default()).unwrap();
        assert!(out.results.iter().all(CheckResult::passed));
        let bad = Prof::new(
            "G",
            10,
            vec![P::one(), P::zero(), P::zero(), P::zero(), P::int(2)],
            None,
        )
        .unwrap();
        let out = check_dual_profile("d", &g, &bad, &CheckConfig::default()).unwrap();
        let center = &out.results[1];
        assert_eq!(center.status, CheckStatus::Fail);
        assert!(center.witness.is_some());
    }

    #[test]
    fn witness_separates_symbolic_sides() {
        let r = CheckResult::compare("x", p("e^2 - e"), P::zero(), vec![]);
        assert_eq!(r.status, CheckStatus::Fail);
        assert!(r.witness_separates());
    }
}
