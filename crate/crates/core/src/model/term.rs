use std::fmt;

use serde::{Serialize, Serializer};

/// Linearity base of a category or decomposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseTag {
    /// `P(V)`
    Projective,
    /// `P(V∨)`
    DualProjective,
    /// `P(V ⊕ V)`
    DoubledProjective,
    /// `P(L)`
    Sub,
    /// `P(L∨)`
    DualSub,
    /// Any other named base, e.g. a sub-bundle or the point.
    Named(String),
}

impl BaseTag {
    pub fn point() -> Self {
        BaseTag::Named("pt".to_string())
    }
}

impl fmt::Display for BaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseTag::Projective => f.write_str("P(V)"),
            BaseTag::DualProjective => f.write_str("P(V*)"),
            BaseTag::DoubledProjective => f.write_str("P(V+V)"),
            BaseTag::Sub => f.write_str("P(L)"),
            BaseTag::DualSub => f.write_str("P(L*)"),
            BaseTag::Named(n) => f.write_str(n),
        }
    }
}

impl Serialize for BaseTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Provenance label of a block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CategoryTerm {
    Atom(String),
    /// HPD category over the given base.
    Hpd(Box<CategoryTerm>, BaseTag),
    /// Categorical join.
    Join(Vec<CategoryTerm>),
    /// Fiber product over a base; over [`BaseTag::point`] this is the exterior product.
    FiberProduct(Vec<CategoryTerm>, BaseTag),
    /// Image under a pullback or pushforward functor named by the tag.
    PullbackImage(Box<CategoryTerm>, String),
    /// Primitive part of an intersection surviving in a join (`ℰ`).
    ExceptionalPart(Box<CategoryTerm>),
    /// Lefschetz component of the given index.
    Component(Box<CategoryTerm>, usize),
}

impl CategoryTerm {
    pub fn atom(name: impl Into<String>) -> Self {
        CategoryTerm::Atom(name.into())
    }

    pub fn hpd(self, base: BaseTag) -> Self {
        CategoryTerm::Hpd(Box::new(self), base)
    }

    pub fn component(self, k: usize) -> Self {
        CategoryTerm::Component(Box::new(self), k)
    }

    pub fn pullback(self, functor: impl Into<String>) -> Self {
        CategoryTerm::PullbackImage(Box::new(self), functor.into())
    }

    pub fn exceptional(self) -> Self {
        CategoryTerm::ExceptionalPart(Box::new(self))
    }

    pub fn depth(&self) -> usize {
        match self {
            CategoryTerm::Atom(_) => 1,
            CategoryTerm::Hpd(t, _)
            | CategoryTerm::PullbackImage(t, _)
            | CategoryTerm::ExceptionalPart(t)
            | CategoryTerm::Component(t, _) => 1 + t.depth(),
            CategoryTerm::Join(ts) | CategoryTerm::FiberProduct(ts, _) => {
                1 + ts.iter().map(CategoryTerm::depth).max().unwrap_or(0)
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, ts: &[CategoryTerm]) -> fmt::Result {
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for CategoryTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryTerm::Atom(n) => f.write_str(n),
            CategoryTerm::Hpd(t, b) => write!(f, "hpd({t} / {b})"),
            CategoryTerm::Join(ts) => {
                f.write_str("join(")?;
                write_list(f, ts)?;
                f.write_str(")")
            }
            CategoryTerm::FiberProduct(ts, b) => {
                f.write_str("fiber(")?;
                write_list(f, ts)?;
                write!(f, " / {b})")
            }
            CategoryTerm::PullbackImage(t, m) => write!(f, "{m}({t})"),
            CategoryTerm::ExceptionalPart(t) => write!(f, "prim({t})"),
            CategoryTerm::Component(t, k) => write!(f, "{t}_{k}"),
        }
    }
}

impl Serialize for CategoryTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_readable() {
        let a = CategoryTerm::atom("A");
        let b = CategoryTerm::atom("B");
        let j = CategoryTerm::Join(vec![a.clone(), b.clone()]);
        assert_eq!(j.clone().component(3).to_string(), "join(A, B)_3");
        let e = CategoryTerm::FiberProduct(vec![a.clone(), b], BaseTag::Projective).exceptional();
        assert_eq!(e.to_string(), "prim(fiber(A, B / P(V)))");
        assert_eq!(
            a.clone().hpd(BaseTag::Projective).to_string(),
            "hpd(A / P(V))"
        );
        assert_eq!(a.pullback("beta*").to_string(), "beta*(A)");
        assert_eq!(j.depth(), 2);
    }

    #[test]
    fn structural_equality() {
        let x = CategoryTerm::atom("A").hpd(BaseTag::Projective);
        let y = CategoryTerm::atom("A").hpd(BaseTag::DualProjective);
        assert_ne!(x, y);
        assert_eq!(x, CategoryTerm::atom("A").hpd(BaseTag::Projective));
    }
}
