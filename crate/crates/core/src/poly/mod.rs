//! Exact multivariate polynomials with integer coefficients.
//!
//! Values of additive invariants are stored as [`Poly`]: a finite map from
//! monomials to nonzero coefficients. The map is kept in canonical form at
//! all times, so structural equality is polynomial equality.

mod monomial;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

pub use monomial::{Monomial, Symbol};

/// Scalar ring for polynomial coefficients.
///
/// Implemented for every signed integer type of `num-traits` (notably `i64`,
/// `i128` and `num_bigint::BigInt`). Fixed-width types overflow like any
/// other Rust integer arithmetic; `BigInt` is exact.
pub trait Coeff:
    Clone
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("coefficient type cannot represent i64")
    }
}

impl<T> Coeff for T where
    T: Clone
        + Ord
        + Hash
        + fmt::Debug
        + fmt::Display
        + Num
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Assignment of integer values to symbols.
pub type Assignment<C> = BTreeMap<Symbol, C>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    pub fn symbol(name: impl Into<Symbol>) -> Self {
        Self::term(Monomial::var(name.into()), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant coefficient, if the polynomial has no symbolic part.
    pub fn as_constant(&self) -> Option<C> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
            .collect();
        Self { terms }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&C::from_int(n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(k) => {
                *k = k.clone() + c;
                if k.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Difference together with a plausibility flag: `true` when the result
    /// is nonnegative at the all-ones assignment.
    pub fn sub_checked(&self, other: &Self) -> (Self, bool) {
        let d = self - other;
        let ok = !d.eval_all_ones().is_negative();
        (d, ok)
    }

    /// Value at the assignment sending every symbol to 1.
    pub fn eval_all_ones(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Evaluates at `assignment`; `None` if a symbol is unassigned.
    pub fn eval(&self, assignment: &Assignment<C>) -> Option<C> {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.vars() {
                let v = assignment.get(s)?;
                for _ in 0..*e {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    /// Substitutes `value` for `s`.
    pub fn substitute(&self, s: &Symbol, value: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            let mut k = c.clone();
            for _ in 0..e {
                k = k * value.clone();
            }
            out.add_term(m.without(s), k);
        }
        out
    }

    /// Finds an integer point where the polynomial does not vanish.
    ///
    /// Symbols are fixed greedily in name order, each tried over
    /// `0..=max(5, deg)`. A nonzero polynomial of degree `d` in `x` stays
    /// nonzero after substituting at least one of any `d + 1` distinct values,
    /// so the greedy pass always succeeds. Returns `None` exactly for the zero
    /// polynomial.
    pub fn nonvanishing_point(&self) -> Option<Assignment<C>> {
        if self.is_zero() {
            return None;
        }
        let mut point = Assignment::new();
        let mut cur = self.clone();
        for s in self.symbols() {
            let bound = cur.degree_in(&s).max(5);
            let mut chosen = None;
            for v in 0..=bound {
                let val = C::from_int(v as i64);
                let next = cur.substitute(&s, &val);
                if !next.is_zero() {
                    chosen = Some((val, next));
                    break;
                }
            }
            let (val, next) = chosen.expect("nonzero polynomial vanished on a full grid line");
            point.insert(s, val);
            cur = next;
        }
        Some(point)
    }

    /// Converts the coefficients into another scalar type.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::<D>::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn sum<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        items.into_iter().fold(Self::zero(), |acc, p| &acc + p)
    }

    pub fn product<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        items.into_iter().fold(Self::one(), |acc, p| &acc * p)
    }
}

impl<C: Coeff> From<i64> for Poly<C> {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl<'a, C: Coeff> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(mut self, rhs: Poly<C>) -> Poly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coeff> AddAssign<&Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a, C: Coeff> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(mut self, rhs: Poly<C>) -> Poly<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coeff> SubAssign<&Poly<C>> for Poly<C> {
    fn sub_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a, C: Coeff> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        Poly { terms }
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -self.clone()
    }
}

// Terms print in descending graded-lex order: `x^2 - 1`, `3*x + 2`, `e + 800`.
impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<C: Coeff> FromStr for Poly<C> {
    type Err = crate::dsl::DslError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::dsl::parse_poly(s)
    }
}

impl<C: Coeff> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
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
    fn zero_is_additive_identity() {
        assert_eq!(P::zero() + p("x"), p("x"));
    }

    #[test]
    fn linear_sum() {
        assert_eq!(p("2*x + 3") + p("x - 1"), p("3*x + 2"));
        assert_eq!((p("2*x + 3") + p("x - 1")).to_string(), "3*x + 2");
    }

    #[test]
    fn symbolic_plus_constant() {
        assert_eq!((p("e") + P::int(800)).to_string(), "e + 800");
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("x + 1") * p("x - 1"), p("x^2 - 1"));
        assert_eq!((p("x + 1") * p("x - 1")).to_string(), "x^2 - 1");
    }

    #[test]
    fn unit_is_multiplicative_identity() {
        assert_eq!(P::one() * p("x"), p("x"));
    }

    #[test]
    fn nine_nine_e_minus_ten_eight_e() {
        let e = p("e");
        let lhs = P::int(9) * e.scale_int(9) - P::int(10) * e.scale_int(8);
        assert_eq!(lhs, e);
    }

    #[test]
    fn sub_flags_negative_values() {
        let (d, ok) = P::int(3).sub_checked(&P::int(5));
        assert_eq!(d, P::int(-2));
        assert!(!ok);
        let (d, ok) = (p("e") + P::int(800)).sub_checked(&P::int(800));
        assert_eq!(d, p("e"));
        assert!(ok);
        assert!(p("x").sub_checked(&p("x")).0.is_zero());
    }

    #[test]
    fn equality_is_canonical() {
        assert_eq!(p("x + y"), p("y + x"));
        assert_eq!(p("x*x"), p("x^2"));
        assert_ne!(p("e"), p("e + 1"));
        assert_eq!(p("e"), p("e + 0"));
    }

    #[test]
    fn grlex_printing_order() {
        assert_eq!(
            p("1 + b + a + a*b + b^2 + a^2").to_string(),
            "a^2 + a*b + b^2 + a + b + 1"
        );
        assert_eq!(p("-x + 1").to_string(), "-x + 1");
        assert_eq!(p("2 - 3*y*x").to_string(), "-3*x*y + 2");
    }

    #[test]
    fn nonvanishing_point_separates() {
        let d = p("x*(x - 1)*(x - 2)*(x - 3)*(x - 4) * y");
        let w = d.nonvanishing_point().unwrap();
        assert_ne!(d.eval(&w).unwrap(), BigInt::from(0));
        assert!(P::zero().nonvanishing_point().is_none());
        let w = P::int(7).nonvanishing_point().unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn works_over_machine_integers() {
        let a: Poly<i64> = "x + 2".parse().unwrap();
        let b: Poly<i128> = "x + 2".parse().unwrap();
        assert_eq!((&a * &a).to_string(), (&b * &b).to_string());
        assert_eq!(a.map_coeffs(|c| *c as i128), b);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let x = p("x + y - 2");
        assert_eq!(x.pow(3), &(&x * &x) * &x);
        assert_eq!(x.pow(0), P::one());
    }
}
