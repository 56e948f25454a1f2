use std::collections::BTreeSet;

use super::ast::{Ast, Ident, PolyLit, Statement, Stmt};
use super::{parse, DslError, ErrorKind, Span};
use crate::checks::signature;
use crate::error::Error;
use crate::model::{CheckSpec, LefschetzProfile, Moderation, Workspace};
use crate::poly::{Coeff, Poly};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Accept non-moderate categories that no HPD-consuming check uses.
    pub allow_nonmoderate: bool,
}

type VResult<T> = Result<T, DslError>;

fn at<T>(r: crate::error::Result<T>, span: Span) -> VResult<T> {
    r.map_err(|e| DslError::from_model(e, span))
}

struct Validator<'a, C: Coeff> {
    ws: Workspace<C>,
    symbols: BTreeSet<&'a str>,
    opts: ValidateOptions,
}

impl<'a, C: Coeff> Validator<'a, C> {
    fn require_symbols(&self, lits: &[&PolyLit<C>]) -> VResult<()> {
        for lit in lits {
            if let Some(id) = lit
                .symbols
                .iter()
                .find(|s| !self.symbols.contains(s.name.as_str()))
            {
                return Err(DslError::new(
                    ErrorKind::UnknownSymbol,
                    id.span,
                    format!("unknown symbol `{}`", id.name),
                ));
            }
        }
        Ok(())
    }

    fn require_category(&self, id: &Ident) -> VResult<&LefschetzProfile<C>> {
        at(self.ws.category(&id.name), id.span)
    }

    fn values(lits: &[PolyLit<C>]) -> Vec<Poly<C>> {
        lits.iter().map(|l| l.value.clone()).collect()
    }

    fn category(
        &mut self,
        name: &Ident,
        ambient: &super::ast::IntLit,
        primitive: &[PolyLit<C>],
        left: &Option<Vec<PolyLit<C>>>,
    ) -> VResult<()> {
        let lits: Vec<&PolyLit<C>> = primitive.iter().chain(left.iter().flatten()).collect();
        self.require_symbols(&lits)?;
        let moderation = if self.opts.allow_nonmoderate {
            Moderation::Allow
        } else {
            Moderation::Require
        };
        let span = match ambient.value {
            0 | 1 => ambient.span,
            _ => name.span,
        };
        let profile = at(
            LefschetzProfile::with_moderation(
                name.name.as_str(),
                ambient.value,
                Self::values(primitive),
                left.as_deref().map(Self::values),
                moderation,
            ),
            span,
        )?;
        at(self.ws.add_category(profile), name.span)
    }

    fn check(
        &mut self,
        head: Span,
        name: &Ident,
        args: &[Ident],
        options: &[(Ident, PolyLit<C>)],
    ) -> VResult<()> {
        let sig = signature(&name.name).ok_or_else(|| {
            DslError::new(
                ErrorKind::UnknownCheck,
                name.span,
                format!("unknown check `{}`", name.name),
            )
        })?;
        let arity_ok = args.len() >= sig.min_args && sig.max_args.is_none_or(|m| args.len() <= m);
        if !arity_ok {
            let expected = match sig.max_args {
                Some(m) if m == sig.min_args => format!("{m}"),
                Some(m) => format!("{}..{m}", sig.min_args),
                None => format!("at least {}", sig.min_args),
            };
            return Err(DslError::new(
                ErrorKind::InvalidArgument,
                name.span,
                format!(
                    "check `{}` takes {expected} categories, got {}",
                    sig.name,
                    args.len()
                ),
            ));
        }
        let mut spec = CheckSpec::new(
            name.name.as_str(),
            &args.iter().map(|a| a.name.as_str()).collect::<Vec<_>>(),
        );
        let mut seen = BTreeSet::new();
        for (key, value) in options {
            if !sig.options.contains(&key.name.as_str()) {
                return Err(DslError::new(
                    ErrorKind::InvalidArgument,
                    key.span,
                    format!("check `{}` has no option `{}`", sig.name, key.name),
                ));
            }
            if !seen.insert(key.name.as_str()) {
                return Err(DslError::new(
                    ErrorKind::Duplicate,
                    key.span,
                    format!("option `{}` given twice", key.name),
                ));
            }
            self.require_symbols(&[value])?;
            spec = spec.with_option(key.name.as_str(), value.value.clone());
            if key.name != "htotal" {
                at(spec.int_option(&key.name), value.span)?;
            }
        }
        if let Some(missing) = sig.required.iter().find(|r| !seen.contains(**r)) {
            return Err(DslError::new(
                ErrorKind::InvalidArgument,
                name.span,
                format!("check `{}` requires option `{missing}=`", sig.name),
            ));
        }
        let mut profiles = Vec::new();
        for a in args {
            let p = self.require_category(a)?;
            if sig.consumes_hpd {
                at(p.require_moderate(), a.span)?;
            }
            profiles.push(p);
        }
        if sig.same_ambient {
            let n = profiles[0].ambient_rank();
            if let Some(p) = profiles.iter().find(|p| p.ambient_rank() != n) {
                return Err(DslError::from_model(
                    Error::AmbientMismatch {
                        left: profiles[0].name().to_string(),
                        left_rank: n,
                        right: p.name().to_string(),
                        right_rank: p.ambient_rank(),
                    },
                    head,
                ));
            }
        }
        let names: Vec<&str> = args.iter().map(|a| a.name.as_str()).collect();
        if sig.needs_disjoint && !self.ws.is_disjoint(&names) {
            return Err(DslError::from_model(
                Error::MissingDisjointness(names.join(", ")),
                head,
            ));
        }
        if sig.needs_dual {
            if let Some(a) = args.iter().find(|a| self.ws.dual(&a.name).is_none()) {
                return Err(DslError::new(
                    ErrorKind::InvalidArgument,
                    a.span,
                    format!("check `{}` needs a `dual {}` declaration", sig.name, a.name),
                ));
            }
        }
        at(self.ws.add_check(spec), head)
    }
}

/// Resolves every declaration of `ast` into a frozen workspace.
///
/// Statements are processed by kind, so their order in the file does not matter.
pub fn validate<C: Coeff>(ast: &Ast<C>, opts: ValidateOptions) -> VResult<Workspace<C>> {
    let mut v = Validator {
        ws: Workspace::new(),
        symbols: BTreeSet::new(),
        opts,
    };
    let stmts: &[Statement<C>] = &ast.statements;

    for s in stmts {
        if let Stmt::Symbol { names } = &s.stmt {
            for id in names {
                at(v.ws.declare_symbol(&id.name), id.span)?;
                v.symbols.insert(id.name.as_str());
            }
        }
    }
    for s in stmts {
        if let Stmt::Category {
            name,
            ambient,
            primitive,
            left,
        } = &s.stmt
        {
            v.category(name, ambient, primitive, left)?;
        }
    }
    for s in stmts {
        if let Stmt::Dual { name, primitive } = &s.stmt {
            v.require_category(name)?;
            v.require_symbols(&primitive.iter().collect::<Vec<_>>())?;
            at(
                v.ws.declare_dual(&name.name, Validator::values(primitive)),
                name.span,
            )?;
        }
    }
    for s in stmts {
        if let Stmt::Intersect {
            a,
            b,
            ambient,
            value,
        } = &s.stmt
        {
            v.require_category(a)?;
            v.require_category(b)?;
            v.require_symbols(&[value])?;
            at(
                v.ws.declare_intersection(&a.name, &b.name, ambient.value, value.value.clone()),
                s.span,
            )?;
        }
    }
    for s in stmts {
        if let Stmt::Disjoint { names } = &s.stmt {
            for id in names {
                v.require_category(id)?;
            }
            let list: Vec<&str> = names.iter().map(|i| i.name.as_str()).collect();
            at(v.ws.declare_disjoint(&list), s.span)?;
        }
    }
    for s in stmts {
        if let Stmt::Check {
            name,
            args,
            options,
        } = &s.stmt
        {
            v.check(s.span, name, args, options)?;
        }
    }
    if let Err(e) = v.ws.finalize() {
        let span = match &e {
            Error::ConflictingIntersection { a, b, .. } => stmts
                .iter()
                .find_map(|s| match &s.stmt {
                    Stmt::Intersect { a: x, b: y, .. }
                        if (x.name == *a && y.name == *b) || (x.name == *b && y.name == *a) =>
                    {
                        Some(s.span)
                    }
                    _ => None,
                })
                .unwrap_or(Span::new(1, 1)),
            _ => Span::new(1, 1),
        };
        return Err(DslError::from_model(e, span));
    }
    Ok(v.ws)
}

/// Parses and validates source text.
pub fn load<C: Coeff>(src: &str, opts: ValidateOptions) -> VResult<Workspace<C>> {
    validate(&parse(src)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type W = Workspace<BigInt>;

    fn load_default(src: &str) -> VResult<W> {
        load(src, ValidateOptions::default())
    }

    const GR25: &str = "symbol e; category Gr25 over P(10) primitive [0,0,0,0,2]; \
        category Gr25g over P(10) primitive [0,0,0,0,2]; \
        intersect Gr25, Gr25g over P(10) = e; check main_theorem(Gr25, Gr25g);";

    #[test]
    fn gr25_workspace() {
        let ws = load_default(GR25).unwrap();
        assert_eq!(ws.symbols().count(), 1);
        assert_eq!(ws.categories().count(), 2);
        assert_eq!(ws.intersections().count(), 1);
        assert_eq!(ws.checks().len(), 1);
    }

    #[test]
    fn order_independent() {
        let shuffled = "check main_theorem(Gr25, Gr25g);\nintersect Gr25g, Gr25 over P(10) = e;\n\
            category Gr25g over P(10) primitive [0,0,0,0,2];\nsymbol e;\n\
            category Gr25 over P(10) primitive [0,0,0,0,2];";
        assert_eq!(load_default(shuffled).unwrap(), load_default(GR25).unwrap());
    }

    #[test]
    fn nonmoderate_boundary() {
        let src = "category X over P(2) primitive [1,1];";
        let err = load_default(src).unwrap_err();
        assert_eq!(err.kind, ErrorKind::NonModerate);
        assert_eq!(err.span, Span::new(1, 10));
        let opts = ValidateOptions {
            allow_nonmoderate: true,
        };
        assert!(load::<BigInt>(src, opts).is_ok());
        let with_check = format!("{src}\ncheck cone_part1(X, n2=1);");
        let err = load::<BigInt>(&with_check, opts).unwrap_err();
        assert_eq!(err.kind, ErrorKind::NonModerate);
        assert_eq!(err.span, Span::new(2, 18));
    }

    #[test]
    fn unknown_references_carry_spans() {
        let err = load_default("category A over P(3) primitive [1];\ncheck main_theorem(A, Z);")
            .unwrap_err();
        assert_eq!(err.kind, ErrorKind::UnknownCategory);
        assert_eq!(err.span, Span::new(2, 23));
        let err = load_default("category A over P(3) primitive [1 + q];").unwrap_err();
        assert_eq!(err.kind, ErrorKind::UnknownSymbol);
        assert_eq!(err.span, Span::new(1, 37));
    }

    #[test]
    fn constant_conflict_vs_symbolic_warning() {
        let base = "symbol e; category A over P(3) primitive [1]; category B over P(3) primitive [1]; disjoint A, B;";
        let err = load_default(&format!("{base} intersect A, B over P(3) = 2;")).unwrap_err();
        assert_eq!(err.kind, ErrorKind::ConflictingIntersection);
        let ws = load_default(&format!("{base} intersect A, B over P(3) = e;")).unwrap();
        assert_eq!(ws.warnings().len(), 1);
        assert!(load_default(&format!("{base} intersect A, B over P(3) = 0;")).is_ok());
    }

    #[test]
    fn check_shapes() {
        let base = "category A over P(4) primitive [1]; category B over P(4) primitive [1];";
        let cases = [
            ("check main_theorem(A);", ErrorKind::InvalidArgument),
            ("check cone_part1(A);", ErrorKind::InvalidArgument),
            ("check cone_part1(A, n2=x);", ErrorKind::UnknownSymbol),
            ("check cone_part1(A, k=1);", ErrorKind::InvalidArgument),
            ("check n_hpd_center(A, B);", ErrorKind::MissingDisjointness),
            ("check dual_profile(A);", ErrorKind::InvalidArgument),
        ];
        for (stmt, kind) in cases {
            let err = load_default(&format!("{base}\n{stmt}")).unwrap_err();
            assert_eq!(err.kind, kind, "{stmt}");
            assert_eq!(err.span.line, 2, "{stmt}");
        }
    }
}
