use std::fmt::Write;

use crate::model::{CheckSpec, LefschetzProfile, Workspace};
use crate::poly::{Coeff, Poly};

fn list<C: Coeff>(ps: &[Poly<C>]) -> String {
    ps.iter()
        .map(Poly::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn category<C: Coeff>(p: &LefschetzProfile<C>) -> String {
    let mut s = format!(
        "category {} over P({}) primitive [{}]",
        p.name(),
        p.ambient_rank(),
        list(p.primitive_right())
    );
    if !p.has_symmetric_data() {
        let _ = write!(s, " left [{}]", list(p.primitive_left()));
    }
    s.push(';');
    s
}

fn check<C: Coeff>(c: &CheckSpec<C>) -> String {
    format!("check {};", c.sort_key())
}

/// Deterministic source text for a validated workspace.
///
/// Sections appear in a fixed order and are sorted within, so any
/// permutation of the input statements prints identically.
pub fn print_canonical<C: Coeff>(ws: &Workspace<C>) -> String {
    let mut out = String::new();
    let symbols: Vec<&str> = ws.symbols().map(|s| s.as_str()).collect();
    if !symbols.is_empty() {
        let _ = writeln!(out, "symbol {};", symbols.join(", "));
    }
    for p in ws.categories() {
        let _ = writeln!(out, "{}", category(p));
    }
    for d in ws.duals() {
        let _ = writeln!(
            out,
            "dual {} primitive [{}];",
            d.name(),
            list(d.primitive_right())
        );
    }
    for (a, b, v) in ws.intersections() {
        let n = ws.category(a).map(|p| p.ambient_rank()).unwrap_or(0);
        let _ = writeln!(out, "intersect {a}, {b} over P({n}) = {v};");
    }
    for set in ws.disjoint_sets() {
        let names: Vec<&str> = set.iter().map(String::as_str).collect();
        let _ = writeln!(out, "disjoint {};", names.join(", "));
    }
    for c in ws.checks() {
        let _ = writeln!(out, "{}", check(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{load, ValidateOptions};
    use num_bigint::BigInt;

    fn roundtrip(src: &str) -> (String, String) {
        let ws = load::<BigInt>(src, ValidateOptions::default()).unwrap();
        let once = print_canonical(&ws);
        let ws2 = load::<BigInt>(&once, ValidateOptions::default()).unwrap();
        assert_eq!(ws, ws2);
        (once, print_canonical(&ws2))
    }

    #[test]
    fn fixed_point() {
        let src = "symbol e; category Gr25 over P(10) primitive [0,0,0,0,2]; \
            category Gr25g over P(10) primitive [0,0,0,0,2]; \
            intersect Gr25g, Gr25 over P(10) = e; check main_theorem(Gr25, Gr25g);";
        let (once, twice) = roundtrip(src);
        assert_eq!(once, twice);
        assert_eq!(
            once,
            "symbol e;\n\
             category Gr25 over P(10) primitive [0, 0, 0, 0, 2];\n\
             category Gr25g over P(10) primitive [0, 0, 0, 0, 2];\n\
             intersect Gr25, Gr25g over P(10) = e;\n\
             check main_theorem(Gr25, Gr25g);\n"
        );
    }

    #[test]
    fn empty() {
        assert_eq!(print_canonical(&Workspace::<BigInt>::new()), "");
    }

    #[test]
    fn left_data_and_options() {
        let src = "symbol a, b; category X over P(5) primitive [a, b] left [a + 2*b, 0];\n\
            dual X primitive [b, a];\n\
            check cone_part2(X, n2=2); check cone_part1(X, n2=1);";
        let (once, twice) = roundtrip(src);
        assert_eq!(once, twice);
        assert!(once.contains("left [a + 2*b, 0]"));
        let first = once.find("cone_part1").unwrap();
        assert!(first < once.find("cone_part2").unwrap());
    }
}
