//! Seeded randomized property suites over random Lefschetz profiles.
//!
//! Every property is reported as one check whose sides are the number of
//! passing cases and the number of cases run; the first counterexample is
//! kept as the witness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks::{
    check_cone_part1, check_cone_part2, check_join_linear, check_main_theorem, CheckConfig,
    CheckResult,
};
use crate::engine::{
    blowup_sod, hpd_total_of_components, hyperplane_sod, join_profile_with, n_hyperplane_sod,
    n_join_components, primitive_convolution, projective_bundle_sod, refined_blowup_profile,
    refined_blowup_total, ruled_join_profile, universal_hyperplane_sod, HyperplaneData,
    JPrimeBound,
};
use crate::error::{Error, Result};
use crate::model::{CategoryTerm, LefschetzProfile};
use crate::poly::Poly;
use crate::report::Report;
use crate::Integer;

type P = Poly<Integer>;
type Prof = LefschetzProfile<Integer>;

pub const MAX_LENGTH: usize = 6;
pub const MAX_RANK_V: usize = 9;
pub const MAX_SYMBOLS: usize = 3;
const SYMBOLS: [&str; MAX_SYMBOLS] = ["x", "y", "z"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_length: usize,
    pub max_rank_v: usize,
    pub max_symbols: usize,
    pub bound: JPrimeBound,
}

impl Default for PropConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            cases: 1000,
            max_length: 5,
            max_rank_v: 9,
            max_symbols: 2,
            bound: JPrimeBound::Orthogonal,
        }
    }
}

impl PropConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_length == 0 || self.max_length > MAX_LENGTH {
            return Err(Error::InvalidArgument(format!(
                "max length must be in 1..={MAX_LENGTH}, got {}",
                self.max_length
            )));
        }
        if self.max_rank_v < 2 || self.max_rank_v > MAX_RANK_V {
            return Err(Error::InvalidArgument(format!(
                "max rank of V must be in 2..={MAX_RANK_V}, got {}",
                self.max_rank_v
            )));
        }
        if self.max_symbols > MAX_SYMBOLS {
            return Err(Error::InvalidArgument(format!(
                "at most {MAX_SYMBOLS} symbols, got {}",
                self.max_symbols
            )));
        }
        Ok(())
    }

    fn check_config(&self) -> CheckConfig {
        CheckConfig { bound: self.bound }
    }
}

/// Pass count and first counterexample of one property.
#[derive(Debug, Clone)]
pub struct Tally {
    pub name: &'static str,
    pub cases: usize,
    pub passes: usize,
    pub first_failure: Option<(String, CheckResult<Integer>)>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            passes: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, case: impl FnOnce() -> String, r: CheckResult<Integer>) {
        self.cases += 1;
        if r.passed() {
            self.passes += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some((case(), r));
        }
    }

    /// Records several identities as a single case.
    fn record_all(&mut self, case: impl FnOnce() -> String, rs: Vec<CheckResult<Integer>>) {
        match rs.into_iter().find(|r| !r.passed()) {
            Some(bad) => self.record(case, bad),
            None => self.record(
                String::new,
                CheckResult::compare("", P::zero(), P::zero(), vec![]),
            ),
        }
    }

    pub fn passed(&self) -> bool {
        self.passes == self.cases
    }

    pub fn into_result(self, suite: &str) -> CheckResult<Integer> {
        let name = format!("{suite}.{}", self.name);
        let lhs = P::int(self.passes as i64);
        let rhs = P::int(self.cases as i64);
        let mut notes = vec![format!("{} of {} cases pass", self.passes, self.cases)];
        match self.first_failure {
            None => CheckResult::compare(name, lhs, rhs, notes),
            Some((case, bad)) => {
                let side = |p: &Option<P>| p.as_ref().map_or("?".into(), |p| p.to_string());
                notes.push(format!("first counterexample: {case}"));
                notes.push(format!(
                    "{}: lhs = {}, rhs = {}",
                    bad.name,
                    side(&bad.lhs),
                    side(&bad.rhs)
                ));
                let mut r = CheckResult::compare(name, lhs, rhs, notes);
                r.witness = bad.witness.or_else(|| Some(Default::default()));
                r
            }
        }
    }
}

fn eq(name: &str, lhs: P, rhs: P) -> CheckResult<Integer> {
    CheckResult::compare(name, lhs, rhs, Vec::new())
}

fn eq_lists(name: &str, lhs: &[P], rhs: &[P]) -> CheckResult<Integer> {
    let len = lhs.len().max(rhs.len());
    for i in 0..len {
        let a = lhs.get(i).cloned().unwrap_or_else(P::zero);
        let b = rhs.get(i).cloned().unwrap_or_else(P::zero);
        if a != b {
            return eq(&format!("{name}[{i}]"), a, b);
        }
    }
    eq(name, P::zero(), P::zero())
}

fn show(ps: &[P]) -> String {
    let items: Vec<String> = ps.iter().map(P::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn describe(p: &Prof) -> String {
    format!(
        "{} over P({}) {}",
        p.name(),
        p.ambient_rank(),
        show(p.primitive_right())
    )
}

/// Random generator of profiles and invariants.
pub struct Gen {
    rng: ChaCha8Rng,
    symbols: Vec<P>,
}

impl Gen {
    pub fn new(seed: u64, stream: u64, max_symbols: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let symbols = SYMBOLS[..max_symbols.min(MAX_SYMBOLS)]
            .iter()
            .map(|s| P::symbol(*s))
            .collect();
        Self { rng, symbols }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Small nonnegative affine expression in the symbols, often constant.
    pub fn invariant(&mut self) -> P {
        let mut p = P::int(self.rng.gen_range(0..=3));
        for s in &self.symbols {
            if self.rng.gen_bool(0.35) {
                p += &s.scale_int(self.rng.gen_range(1..=2));
            }
        }
        p
    }

    pub fn primitives(&mut self, m: usize) -> Vec<P> {
        (0..m)
            .map(|_| {
                if self.rng.gen_bool(0.3) {
                    P::zero()
                } else {
                    self.invariant()
                }
            })
            .collect()
    }

    /// Moderate profile of length `1..=max_length` over `P(n)`.
    pub fn profile(&mut self, name: &str, n: usize, max_length: usize) -> Prof {
        let m = self.rng.gen_range(1..=max_length.min(n - 1));
        Prof::new(name, n, self.primitives(m), None).expect("moderate by construction")
    }
}

/// Intersection data for a single pair.
struct PairData {
    e: P,
}

impl HyperplaneData<Integer> for PairData {
    fn is_disjoint(&self, _names: &[&str]) -> bool {
        false
    }

    fn intersection(&self, _a: &str, _b: &str) -> Option<P> {
        Some(self.e.clone())
    }
}

/// `Σ_k T_k Π_{l≠k} c_l`: total of the ruled join.
fn ruled_total(ps: &[&Prof]) -> P {
    let mut acc = P::zero();
    for k in 0..ps.len() {
        let mut term = ps[k].total_invariant();
        for (l, q) in ps.iter().enumerate() {
            if l != k {
                term = &term * &q.center();
            }
        }
        acc += &term;
    }
    acc
}

/// SOD totals, join bookkeeping and specializations on random profiles.
pub fn conservation_suite(cfg: &PropConfig) -> Result<Vec<Tally>> {
    cfg.validate()?;
    let mut g = Gen::new(cfg.seed, 1, cfg.max_symbols);
    let e = P::symbol("e");
    let ccfg = cfg.check_config();
    let mut bundle = Tally::new("projective_bundle.total");
    let mut blowup = Tally::new("blowup.total");
    let mut hyper = Tally::new("hyperplane_section.total");
    let mut universal = Tally::new("universal_hyperplane.total");
    let mut n1 = Tally::new("n_hyperplane.specialization");
    let mut nh2 = Tally::new("n_hyperplane.total");
    let mut ruled = Tally::new("ruled_join.total");
    let mut refined = Tally::new("refined_blowup.total");
    let mut conservation = Tally::new("join.conservation");
    let mut steps = Tally::new("join.refined_blowup");
    let mut commute = Tally::new("join.commutativity");
    let mut symmetric = Tally::new("main_theorem.symmetry");
    let mut main = Tally::new("main_theorem.identity");

    for case in 0..cfg.cases {
        let n = g.rng().gen_range(2..=cfg.max_rank_v);
        let p = g.profile("A", n, cfg.max_length);
        let q = g.profile("B", n, cfg.max_length);
        let inv = g.invariant();
        let z = g.invariant();
        let r = g.rng().gen_range(2..=6);
        let ctx = || format!("case {case}: {}; {}", describe(&p), describe(&q));

        let sod = projective_bundle_sod(&CategoryTerm::atom("A"), &inv, r)?;
        bundle.record(ctx, eq("total", sod.total(), inv.scale_int(r as i64)));
        let sod = blowup_sod(&inv, &z, r)?;
        blowup.record(
            ctx,
            eq("total", sod.total(), &inv + &z.scale_int(r as i64 - 1)),
        );
        let sod = hyperplane_sod(&inv, &z, r)?;
        hyper.record(
            ctx,
            eq("total", sod.total(), &z + &inv.scale_int(r as i64 - 1)),
        );

        let uh = universal_hyperplane_sod(&p)?;
        universal.record(
            ctx,
            eq(
                "total",
                uh.total(),
                p.total_invariant().scale_int(n as i64 - 1),
            ),
        );
        let single = n_hyperplane_sod(&[&p], &PairData { e: e.clone() }, None)?;
        n1.record(
            ctx,
            eq_lists("blocks", &single.sod.invariants(), &uh.invariants()),
        );

        let nh = n_hyperplane_sod(&[&p, &q], &PairData { e: e.clone() }, None)?;
        let expected = &e + &(&p.total_invariant() * &q.total_invariant()).scale_int(n as i64 - 2);
        nh2.record(ctx, eq("total", nh.sod.total(), expected));

        let rj = ruled_join_profile(&p, &q)?;
        ruled.record(
            ctx,
            eq("total", rj.total_invariant(), ruled_total(&[&p, &q])),
        );

        let ell = g.rng().gen_range(2..=n);
        let rb = refined_blowup_profile(&p, ell, &z)?;
        refined.record(
            ctx,
            eq(
                "total",
                Poly::sum(&rb.components),
                refined_blowup_total(&p, ell, &z),
            ),
        );

        let join = join_profile_with(&p, &q, &e, cfg.bound)?;
        conservation.record(
            ctx,
            eq("conservation", join.total.clone(), join.conservation_rhs()),
        );

        let rb_join = refined_blowup_profile(&rj, n, &e)?;
        steps.record(
            ctx,
            eq_lists("components", &join.components, &rb_join.components),
        );

        let swapped = join_profile_with(&q, &p, &e, cfg.bound)?;
        commute.record(
            ctx,
            eq_lists("components", &join.components, &swapped.components),
        );

        let pq = check_main_theorem("pq", &p, &q, &PairData { e: e.clone() }, None, &ccfg)?;
        let qp = check_main_theorem("qp", &q, &p, &PairData { e: e.clone() }, None, &ccfg)?;
        let (a, b) = (&pq.results[0], &qp.results[0]);
        main.record(ctx, a.clone());
        symmetric.record_all(
            ctx,
            vec![
                eq(
                    "lhs",
                    a.lhs.clone().unwrap_or_default(),
                    b.lhs.clone().unwrap_or_default(),
                ),
                eq(
                    "rhs",
                    a.rhs.clone().unwrap_or_default(),
                    b.rhs.clone().unwrap_or_default(),
                ),
            ],
        );
    }
    Ok(vec![
        bundle,
        blowup,
        hyper,
        universal,
        n1,
        nh2,
        ruled,
        refined,
        conservation,
        steps,
        commute,
        symmetric,
        main,
    ])
}

/// Component `i` of the n-fold join by enumerating every index tuple.
pub fn enumerated_join(lists: &[&[P]]) -> Vec<P> {
    let n = lists.len() as i64;
    let length: usize = lists.iter().map(|l| l.len()).sum();
    let mut tuples: Vec<(i64, P)> = vec![(0, P::one())];
    for list in lists {
        tuples = tuples
            .iter()
            .flat_map(|(s, v)| {
                list.iter()
                    .enumerate()
                    .map(move |(j, x)| (s + j as i64, v * x))
            })
            .collect();
    }
    (0..length as i64)
        .map(|i| {
            Poly::sum(
                tuples
                    .iter()
                    .filter(|(s, _)| *s >= i + 1 - n)
                    .map(|(_, v)| v),
            )
        })
        .collect()
}

/// Iterated two-fold joins of disjoint triples against the flat three-fold list.
pub fn associativity_suite(cfg: &PropConfig) -> Result<Vec<Tally>> {
    cfg.validate()?;
    let mut g = Gen::new(cfg.seed, 2, cfg.max_symbols);
    let mut flat = Tally::new("n_join.enumeration");
    let mut iterated = Tally::new("join.associativity");
    let mut permuted = Tally::new("n_join.permutation");
    let mut specialization = Tally::new("n_join.specialization");
    let m_max = cfg.max_length.min(3);
    for case in 0..cfg.cases {
        let ms: Vec<usize> = (0..3).map(|_| g.rng().gen_range(1..=m_max)).collect();
        let n = ms.iter().sum::<usize>() + 1 + g.rng().gen_range(0..=2);
        let ps: Vec<Prof> = ["A", "B", "C"]
            .iter()
            .zip(&ms)
            .map(|(name, &m)| Prof::new(*name, n, g.primitives(m), None))
            .collect::<Result<_>>()?;
        let refs: Vec<&Prof> = ps.iter().collect();
        let ctx = || {
            let d: Vec<String> = ps.iter().map(describe).collect();
            format!("case {case}: {}", d.join("; "))
        };
        let lists: Vec<&[P]> = ps.iter().map(|p| p.primitive_right()).collect();
        let oracle = enumerated_join(&lists);
        let formula = n_join_components(&refs)?;
        flat.record(ctx, eq_lists("components", &formula, &oracle));

        let zero = P::zero();
        let two = |a: &Prof, b: &Prof| -> Result<Prof> {
            join_profile_with(a, b, &zero, cfg.bound)?.as_profile()
        };
        let left = join_profile_with(&two(&ps[0], &ps[1])?, &ps[2], &zero, cfg.bound)?;
        let right = join_profile_with(&ps[0], &two(&ps[1], &ps[2])?, &zero, cfg.bound)?;
        iterated.record_all(
            ctx,
            vec![
                eq_lists("left", &left.components, &oracle),
                eq_lists("right", &right.components, &oracle),
            ],
        );

        let mut order = refs.clone();
        order.shuffle(g.rng());
        permuted.record(
            ctx,
            eq_lists("components", &n_join_components(&order)?, &formula),
        );

        specialization.record(
            ctx,
            eq_lists(
                "components",
                &n_join_components(&[refs[0]])?,
                &ps[0].components(),
            ),
        );
    }
    Ok(vec![flat, iterated, permuted, specialization])
}

/// Cone and join identities for linear splittings `V = V1 ⊕ V2`.
pub fn splitting_suite(cfg: &PropConfig) -> Result<Vec<Tally>> {
    cfg.validate()?;
    let mut g = Gen::new(cfg.seed, 3, cfg.max_symbols);
    let ccfg = cfg.check_config();
    let mut cone1 = Tally::new("cone_part1");
    let mut cone2 = Tally::new("cone_part2");
    let mut dual_join = Tally::new("join_linear.dual_join");
    let mut hyperplane = Tally::new("join_linear.hyperplane");
    let n1_max = cfg.max_rank_v.min(6);
    for case in 0..cfg.cases {
        let n1 = g.rng().gen_range(2..=n1_max);
        let n2 = g.rng().gen_range(1..=5);
        let p = g.profile("A", n1, cfg.max_length);
        let q = g.profile("B", n2.max(2), cfg.max_length);
        let ctx = || format!("case {case}: {}; N2 = {n2}; {}", describe(&p), describe(&q));
        cone1.record(ctx, check_cone_part1("cone_part1", &p, n2, &ccfg)?);
        cone2.record(ctx, check_cone_part2("cone_part2", &p, n2, &ccfg)?);
        let out = check_join_linear("join_linear", &[&p, &q], &[None, None], &ccfg)?;
        dual_join.record(ctx, out.results[0].clone());
        hyperplane.record(ctx, out.results[1].clone());
    }
    Ok(vec![cone1, cone2, dual_join, hyperplane])
}

/// All three suites as one report. The digest covers the configuration.
pub fn run(cfg: &PropConfig) -> Result<Report<Integer>> {
    let mut checks = Vec::new();
    for (suite, tallies) in [
        ("conservation", conservation_suite(cfg)?),
        ("associativity", associativity_suite(cfg)?),
        ("splitting", splitting_suite(cfg)?),
    ] {
        checks.extend(tallies.into_iter().map(|t| t.into_result(suite)));
    }
    let input = format!(
        "seed={} cases={} max_length={} max_rank_v={} max_symbols={} bound={:?}",
        cfg.seed, cfg.cases, cfg.max_length, cfg.max_rank_v, cfg.max_symbols, cfg.bound
    );
    let mut report = Report::new(input.as_bytes(), checks);
    if cfg.bound == JPrimeBound::Printed {
        report
            .warnings
            .push(crate::engine::PRINTED_BOUND_NOTE.to_string());
    }
    Ok(report)
}

/// `hpd` of a component list; re-exported for test oracles.
pub fn hpd_of(components: &[P], n: usize) -> P {
    hpd_total_of_components(components, n)
}

/// Convolution of primitive lists; re-exported for test oracles.
pub fn convolution(lists: &[&[P]]) -> Vec<P> {
    primitive_convolution(lists)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(cases: usize) -> PropConfig {
        PropConfig {
            cases,
            ..PropConfig::default()
        }
    }

    #[test]
    fn zero_cases_pass() {
        let r = run(&small(0)).unwrap();
        assert_eq!(r.status(), crate::report::ExitStatus::Pass);
        assert!(r.checks.iter().all(|c| c.lhs == Some(P::zero())));
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            run(&small(20)).unwrap().to_json(),
            run(&small(20)).unwrap().to_json()
        );
    }

    #[test]
    fn suites_pass() {
        let r = run(&small(60)).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.notes);
        }
    }

    #[test]
    fn mutation_is_caught() {
        let cfg = PropConfig {
            bound: JPrimeBound::Printed,
            ..small(60)
        };
        let r = run(&cfg).unwrap();
        let c = r
            .checks
            .iter()
            .find(|c| c.name == "conservation.join.conservation")
            .unwrap();
        assert!(!c.passed());
        assert!(c.witness.is_some());
    }

    #[test]
    fn bounds_enforced() {
        let bad = PropConfig {
            max_length: 7,
            ..PropConfig::default()
        };
        assert!(run(&bad).is_err());
    }

    #[test]
    fn enumeration_matches_convolution_for_points() {
        let one = [P::one()];
        let lists: Vec<&[P]> = vec![&one, &one, &one];
        assert_eq!(enumerated_join(&lists), vec![P::one(); 3]);
    }
}
