use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::profile::{LefschetzProfile, Moderation};
use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly, Symbol};

/// A requested check: name, positional category arguments, keyword options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct CheckSpec<C: Coeff> {
    pub name: String,
    pub args: Vec<String>,
    pub options: BTreeMap<String, Poly<C>>,
}

impl<C: Coeff> CheckSpec<C> {
    pub fn new(name: impl Into<String>, args: &[&str]) -> Self {
        Self {
            name: name.into(),
            args: args.iter().map(|s| s.to_string()).collect(),
            options: BTreeMap::new(),
        }
    }

    pub fn with_option(mut self, key: impl Into<String>, value: Poly<C>) -> Self {
        self.options.insert(key.into(), value);
        self
    }

    /// Text form `name(arg, .., key=value, ..)` used for ordering.
    pub fn sort_key(&self) -> String {
        let mut parts = self.args.clone();
        parts.extend(self.options.iter().map(|(k, v)| format!("{k}={v}")));
        format!("{}({})", self.name, parts.join(", "))
    }

    pub fn option(&self, key: &str) -> Option<&Poly<C>> {
        self.options.get(key)
    }

    /// Integer option; errors if present but not a small nonnegative constant.
    pub fn int_option(&self, key: &str) -> Result<Option<usize>> {
        match self.options.get(key) {
            None => Ok(None),
            Some(p) => p
                .as_constant()
                .and_then(|c| c.to_usize())
                .map(Some)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "option `{key}` of `{}` must be a nonnegative integer, got {p}",
                        self.name
                    ))
                }),
        }
    }
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Declarations a set of checks runs against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct Workspace<C: Coeff> {
    symbols: BTreeSet<Symbol>,
    categories: BTreeMap<String, LefschetzProfile<C>>,
    intersections: BTreeMap<(String, String), Poly<C>>,
    disjoint_sets: BTreeSet<BTreeSet<String>>,
    duals: BTreeMap<String, LefschetzProfile<C>>,
    checks: Vec<CheckSpec<C>>,
    warnings: Vec<String>,
}

impl<C: Coeff> Default for Workspace<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coeff> Workspace<C> {
    pub fn new() -> Self {
        Self {
            symbols: BTreeSet::new(),
            categories: BTreeMap::new(),
            intersections: BTreeMap::new(),
            disjoint_sets: BTreeSet::new(),
            duals: BTreeMap::new(),
            checks: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
            && self.categories.is_empty()
            && self.intersections.is_empty()
            && self.disjoint_sets.is_empty()
            && self.duals.is_empty()
            && self.checks.is_empty()
    }

    pub fn declare_symbol(&mut self, name: &str) -> Result<()> {
        if !self.symbols.insert(Symbol::new(name)) {
            return Err(Error::DuplicateDeclaration(format!("symbol {name}")));
        }
        Ok(())
    }

    fn require_symbols(&self, p: &Poly<C>) -> Result<()> {
        match p.symbols().into_iter().find(|s| !self.symbols.contains(s)) {
            Some(s) => Err(Error::UnknownSymbol(s.to_string())),
            None => Ok(()),
        }
    }

    pub fn add_category(&mut self, profile: LefschetzProfile<C>) -> Result<()> {
        for p in profile
            .primitive_right()
            .iter()
            .chain(profile.primitive_left())
        {
            self.require_symbols(p)?;
        }
        if self.categories.contains_key(profile.name()) {
            return Err(Error::DuplicateDeclaration(format!(
                "category {}",
                profile.name()
            )));
        }
        self.categories.insert(profile.name().to_string(), profile);
        Ok(())
    }

    pub fn category(&self, name: &str) -> Result<&LefschetzProfile<C>> {
        self.categories
            .get(name)
            .ok_or_else(|| Error::UnknownCategory(name.to_string()))
    }

    fn same_ambient(&self, names: &[&str]) -> Result<usize> {
        let first = self.category(names[0])?;
        for n in &names[1..] {
            let other = self.category(n)?;
            if other.ambient_rank() != first.ambient_rank() {
                return Err(Error::AmbientMismatch {
                    left: first.name().to_string(),
                    left_rank: first.ambient_rank(),
                    right: other.name().to_string(),
                    right_rank: other.ambient_rank(),
                });
            }
        }
        Ok(first.ambient_rank())
    }

    /// Records the invariant of `a ⊠_{P(V)} b`; `ambient` must match both.
    pub fn declare_intersection(
        &mut self,
        a: &str,
        b: &str,
        ambient: usize,
        value: Poly<C>,
    ) -> Result<()> {
        let n = self.same_ambient(&[a, b])?;
        if n != ambient {
            return Err(Error::AmbientMismatch {
                left: format!("intersect {a}, {b}"),
                left_rank: ambient,
                right: a.to_string(),
                right_rank: n,
            });
        }
        self.require_symbols(&value)?;
        let key = pair_key(a, b);
        if self.intersections.contains_key(&key) {
            return Err(Error::DuplicateDeclaration(format!(
                "intersect {}, {}",
                key.0, key.1
            )));
        }
        self.intersections.insert(key, value);
        Ok(())
    }

    pub fn declare_disjoint(&mut self, names: &[&str]) -> Result<()> {
        if names.len() < 2 {
            return Err(Error::InvalidArgument(
                "a disjointness declaration needs at least two categories".into(),
            ));
        }
        self.same_ambient(names)?;
        let set: BTreeSet<String> = names.iter().map(|s| s.to_string()).collect();
        if set.len() != names.len() || !self.disjoint_sets.insert(set) {
            return Err(Error::DuplicateDeclaration(format!(
                "disjoint {}",
                names.join(", ")
            )));
        }
        Ok(())
    }

    /// Declares the HPD Lefschetz data of `name`; the ambient is inherited.
    pub fn declare_dual(&mut self, name: &str, primitives: Vec<Poly<C>>) -> Result<()> {
        let n = self.category(name)?.ambient_rank();
        for p in &primitives {
            self.require_symbols(p)?;
        }
        if self.duals.contains_key(name) {
            return Err(Error::DuplicateDeclaration(format!("dual {name}")));
        }
        let dual =
            LefschetzProfile::with_moderation(name, n, primitives, None, Moderation::Require)?;
        self.duals.insert(name.to_string(), dual);
        Ok(())
    }

    pub fn add_check(&mut self, spec: CheckSpec<C>) -> Result<()> {
        for a in &spec.args {
            self.category(a)?;
        }
        for v in spec.options.values() {
            self.require_symbols(v)?;
        }
        self.checks.push(spec);
        Ok(())
    }

    /// Cross-declaration consistency; run once after all declarations.
    pub fn finalize(&mut self) -> Result<()> {
        let mut warnings = Vec::new();
        for ((a, b), v) in &self.intersections {
            if !self.is_disjoint(&[a.as_str(), b.as_str()]) {
                continue;
            }
            match v.as_constant() {
                Some(c) if c.is_zero() => {}
                Some(_) => {
                    return Err(Error::ConflictingIntersection {
                        a: a.clone(),
                        b: b.clone(),
                        detail: format!("declared disjoint but intersection is {v}"),
                    })
                }
                None => warnings.push(format!(
                    "intersection of `{a}` and `{b}` is declared as {v} but the pair is disjoint; using 0"
                )),
            }
        }
        for p in self.categories.values().chain(self.duals.values()) {
            warnings.extend(p.plausibility_warnings());
        }
        self.warnings = warnings;
        self.checks.sort_by_cached_key(CheckSpec::sort_key);
        Ok(())
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter()
    }

    pub fn categories(&self) -> impl Iterator<Item = &LefschetzProfile<C>> {
        self.categories.values()
    }

    pub fn intersections(&self) -> impl Iterator<Item = (&str, &str, &Poly<C>)> {
        self.intersections
            .iter()
            .map(|((a, b), v)| (a.as_str(), b.as_str(), v))
    }

    pub fn disjoint_sets(&self) -> impl Iterator<Item = &BTreeSet<String>> {
        self.disjoint_sets.iter()
    }

    pub fn duals(&self) -> impl Iterator<Item = &LefschetzProfile<C>> {
        self.duals.values()
    }

    pub fn dual(&self, name: &str) -> Option<&LefschetzProfile<C>> {
        self.duals.get(name)
    }

    pub fn checks(&self) -> &[CheckSpec<C>] {
        &self.checks
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Condition (D_n) holds for `names` if some declared group contains them all.
    pub fn is_disjoint(&self, names: &[&str]) -> bool {
        if names.len() < 2 {
            return true;
        }
        self.disjoint_sets
            .iter()
            .any(|set| names.iter().all(|n| set.contains(*n)))
    }

    /// Invariant of `a ⊠_{P(V)} b`: zero for a disjoint pair, else the declared value.
    pub fn intersection(&self, a: &str, b: &str) -> Option<Poly<C>> {
        if a != b && self.is_disjoint(&[a, b]) {
            return Some(Poly::zero());
        }
        self.intersections.get(&pair_key(a, b)).cloned()
    }

    pub fn require_intersection(&self, a: &str, b: &str) -> Result<Poly<C>> {
        self.intersection(a, b)
            .ok_or_else(|| Error::UnresolvedIntersection(a.to_string(), b.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type W = Workspace<BigInt>;

    fn prof(name: &str, n: usize, prims: &[i64]) -> LefschetzProfile<BigInt> {
        LefschetzProfile::new(name, n, prims.iter().map(|&k| Poly::int(k)).collect(), None).unwrap()
    }

    fn gr25() -> W {
        let mut ws = W::new();
        ws.declare_symbol("e").unwrap();
        ws.add_category(prof("A", 10, &[0, 0, 0, 0, 2])).unwrap();
        ws.add_category(prof("B", 10, &[0, 0, 0, 0, 2])).unwrap();
        ws.declare_intersection("A", "B", 10, Poly::symbol("e"))
            .unwrap();
        ws.finalize().unwrap();
        ws
    }

    #[test]
    fn intersections_are_symmetric() {
        let ws = gr25();
        assert_eq!(ws.intersection("A", "B"), ws.intersection("B", "A"));
        assert_eq!(ws.intersection("A", "B"), Some(Poly::symbol("e")));
    }

    #[test]
    fn duplicate_declarations() {
        let mut ws = gr25();
        assert!(matches!(
            ws.declare_symbol("e"),
            Err(Error::DuplicateDeclaration(_))
        ));
        assert!(ws.add_category(prof("A", 10, &[1])).is_err());
        assert!(ws.declare_intersection("B", "A", 10, Poly::zero()).is_err());
    }

    #[test]
    fn unknown_references() {
        let mut ws = gr25();
        assert_eq!(
            ws.declare_intersection("A", "Z", 10, Poly::zero()),
            Err(Error::UnknownCategory("Z".into()))
        );
        assert_eq!(
            ws.declare_dual("A", vec![Poly::symbol("f")]),
            Err(Error::UnknownSymbol("f".into()))
        );
    }

    #[test]
    fn ambient_mismatch() {
        let mut ws = gr25();
        ws.add_category(prof("P", 3, &[1])).unwrap();
        assert!(matches!(
            ws.declare_intersection("A", "P", 10, Poly::zero()),
            Err(Error::AmbientMismatch { .. })
        ));
        assert!(matches!(
            ws.declare_disjoint(&["A", "P"]),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn disjointness_forces_zero() {
        let mut ws = W::new();
        ws.add_category(prof("P", 3, &[1])).unwrap();
        ws.add_category(prof("Q", 3, &[1])).unwrap();
        ws.add_category(prof("R", 3, &[1])).unwrap();
        ws.declare_disjoint(&["P", "Q", "R"]).unwrap();
        ws.finalize().unwrap();
        assert_eq!(ws.intersection("P", "R"), Some(Poly::zero()));
        assert!(ws.is_disjoint(&["Q", "P"]));
        assert!(ws.intersection("P", "P").is_none());
    }

    #[test]
    fn constant_conflict_is_an_error_symbolic_is_a_warning() {
        let mut ws = gr25();
        ws.declare_disjoint(&["A", "B"]).unwrap();
        ws.finalize().unwrap();
        assert_eq!(ws.warnings().len(), 1);

        let mut ws = W::new();
        ws.add_category(prof("P", 3, &[1])).unwrap();
        ws.add_category(prof("Q", 3, &[1])).unwrap();
        ws.declare_intersection("P", "Q", 3, Poly::int(2)).unwrap();
        ws.declare_disjoint(&["P", "Q"]).unwrap();
        assert!(matches!(
            ws.finalize(),
            Err(Error::ConflictingIntersection { .. })
        ));
    }

    #[test]
    fn dual_inherits_ambient_and_must_be_moderate() {
        let mut ws = gr25();
        ws.declare_dual("A", vec![Poly::int(1); 3]).unwrap();
        assert_eq!(ws.dual("A").unwrap().ambient_rank(), 10);
        assert!(matches!(
            ws.declare_dual("B", vec![Poly::int(1); 10]),
            Err(Error::NonModerate { .. })
        ));
    }

    #[test]
    fn int_options() {
        let spec = CheckSpec::<BigInt>::new("cone_part1", &["A"]).with_option("n2", Poly::int(3));
        assert_eq!(spec.int_option("n2").unwrap(), Some(3));
        assert_eq!(spec.int_option("x").unwrap(), None);
        let bad = spec.with_option("n2", Poly::symbol("e"));
        assert!(bad.int_option("n2").is_err());
    }
}
