use std::collections::BTreeSet;

use super::ast::{Ast, Ident, IntLit, PolyLit, Statement, Stmt};
use super::lexer::{tokenize, Tok, Token};
use super::{DslError, ErrorKind, Span};
use crate::checks::signature;
use crate::poly::{Coeff, Poly};

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, what: &str) -> PResult<T> {
        let t = self.peek();
        Err(DslError::new(
            ErrorKind::Syntax,
            t.span,
            format!("expected {what}, found {}", t.tok.describe()),
        ))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if self.peek().tok == tok {
            Ok(self.bump().span)
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(name) => {
                let name = name.clone();
                let span = self.bump().span;
                Ok(Ident { name, span })
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        match &self.peek().tok {
            Tok::Ident(name) if name == kw => Ok(self.bump().span),
            _ => self.unexpected(&format!("`{kw}`")),
        }
    }

    fn int(&mut self) -> PResult<IntLit> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let span = self.peek().span;
                let value = s.parse::<usize>().map_err(|_| {
                    DslError::new(
                        ErrorKind::Syntax,
                        span,
                        format!("integer `{s}` is too large"),
                    )
                })?;
                self.bump();
                Ok(IntLit { value, span })
            }
            _ => self.unexpected("an integer"),
        }
    }

    /// `"P" "(" int ")"`
    fn projective(&mut self) -> PResult<IntLit> {
        self.keyword("P")?;
        self.expect(Tok::LParen)?;
        let n = self.int()?;
        self.expect(Tok::RParen)?;
        Ok(n)
    }

    fn poly<C: Coeff>(&mut self) -> PResult<PolyLit<C>> {
        let span = self.peek().span;
        let mut symbols = Vec::new();
        let value = self.expr(&mut symbols)?;
        Ok(PolyLit {
            value,
            span,
            symbols,
        })
    }

    fn poly_list<C: Coeff>(&mut self) -> PResult<Vec<PolyLit<C>>> {
        self.expect(Tok::LBracket)?;
        let mut items = vec![self.poly()?];
        while self.eat(&Tok::Comma) {
            items.push(self.poly()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(items)
    }

    fn expr<C: Coeff>(&mut self, syms: &mut Vec<Ident>) -> PResult<Poly<C>> {
        let mut acc = self.term(syms)?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term(syms)?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term(syms)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<C: Coeff>(&mut self, syms: &mut Vec<Ident>) -> PResult<Poly<C>> {
        let mut acc = self.unary(syms)?;
        while self.eat(&Tok::Star) {
            acc = &acc * &self.unary(syms)?;
        }
        Ok(acc)
    }

    fn unary<C: Coeff>(&mut self, syms: &mut Vec<Ident>) -> PResult<Poly<C>> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.unary(syms)?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary(syms);
        }
        self.power(syms)
    }

    fn power<C: Coeff>(&mut self, syms: &mut Vec<Ident>) -> PResult<Poly<C>> {
        let base = self.atom(syms)?;
        if self.eat(&Tok::Caret) {
            let e = self.int()?;
            let e = u32::try_from(e.value).map_err(|_| {
                DslError::new(
                    ErrorKind::Syntax,
                    e.span,
                    "exponent is too large".to_string(),
                )
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<C: Coeff>(&mut self, syms: &mut Vec<Ident>) -> PResult<Poly<C>> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(s) => {
                self.bump();
                let c = C::from_str_radix(&s, 10).map_err(|_| {
                    DslError::new(
                        ErrorKind::Syntax,
                        t.span,
                        format!("integer `{s}` does not fit the coefficient type"),
                    )
                })?;
                Ok(Poly::constant(c))
            }
            Tok::Ident(name) => {
                self.bump();
                syms.push(Ident {
                    name: name.clone(),
                    span: t.span,
                });
                Ok(Poly::symbol(name.as_str()))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr(syms)?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => self.unexpected("a polynomial"),
        }
    }

    fn statement<C: Coeff>(&mut self) -> PResult<Statement<C>> {
        let head = self.ident()?;
        let span = head.span;
        let stmt = match head.name.as_str() {
            "symbol" => {
                let mut names = vec![self.ident()?];
                while self.eat(&Tok::Comma) {
                    names.push(self.ident()?);
                }
                Stmt::Symbol { names }
            }
            "category" => {
                let name = self.ident()?;
                self.keyword("over")?;
                let ambient = self.projective()?;
                self.keyword("primitive")?;
                let primitive = self.poly_list()?;
                let left = match &self.peek().tok {
                    Tok::Ident(kw) if kw == "left" => {
                        self.bump();
                        Some(self.poly_list()?)
                    }
                    _ => None,
                };
                Stmt::Category {
                    name,
                    ambient,
                    primitive,
                    left,
                }
            }
            "intersect" => {
                let a = self.ident()?;
                self.expect(Tok::Comma)?;
                let b = self.ident()?;
                self.keyword("over")?;
                let ambient = self.projective()?;
                self.expect(Tok::Eq)?;
                let value = self.poly()?;
                Stmt::Intersect {
                    a,
                    b,
                    ambient,
                    value,
                }
            }
            "disjoint" => {
                let mut names = vec![self.ident()?];
                self.expect(Tok::Comma)?;
                names.push(self.ident()?);
                while self.eat(&Tok::Comma) {
                    names.push(self.ident()?);
                }
                Stmt::Disjoint { names }
            }
            "dual" => {
                let name = self.ident()?;
                self.keyword("primitive")?;
                let primitive = self.poly_list()?;
                Stmt::Dual { name, primitive }
            }
            "check" => {
                let name = self.ident()?;
                if signature(&name.name).is_none() {
                    return Err(DslError::new(
                        ErrorKind::UnknownCheck,
                        name.span,
                        format!("unknown check `{}`", name.name),
                    ));
                }
                self.expect(Tok::LParen)?;
                let mut args = Vec::new();
                let mut options = Vec::new();
                loop {
                    let id = self.ident()?;
                    if self.eat(&Tok::Eq) {
                        let value = self.poly()?;
                        options.push((id, value));
                    } else if options.is_empty() {
                        args.push(id);
                    } else {
                        return Err(DslError::new(
                            ErrorKind::Syntax,
                            id.span,
                            format!("positional argument `{}` after keyword arguments", id.name),
                        ));
                    }
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::RParen)?;
                if args.is_empty() {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        name.span,
                        format!("check `{}` needs at least one category argument", name.name),
                    ));
                }
                Stmt::Check {
                    name,
                    args,
                    options,
                }
            }
            other => {
                return Err(DslError::new(
                    ErrorKind::Syntax,
                    span,
                    format!("unknown statement `{other}`"),
                ))
            }
        };
        self.expect(Tok::Semi)?;
        Ok(Statement { stmt, span })
    }
}

fn check_duplicates<C: Coeff>(ast: &Ast<C>) -> PResult<()> {
    let mut symbols = BTreeSet::new();
    let mut categories = BTreeSet::new();
    let mut duals = BTreeSet::new();
    let dup = |id: &Ident, what: &str| {
        Err(DslError::new(
            ErrorKind::Duplicate,
            id.span,
            format!("duplicate {what} `{}`", id.name),
        ))
    };
    for s in &ast.statements {
        match &s.stmt {
            Stmt::Symbol { names } => {
                for n in names {
                    if !symbols.insert(n.name.as_str()) {
                        return dup(n, "symbol");
                    }
                }
            }
            Stmt::Category { name, .. } if !categories.insert(name.name.as_str()) => {
                return dup(name, "category");
            }
            Stmt::Dual { name, .. } if !duals.insert(name.name.as_str()) => {
                return dup(name, "dual for");
            }
            _ => {}
        }
    }
    Ok(())
}

/// Parses a source file into statements.
pub fn parse<C: Coeff>(src: &str) -> Result<Ast<C>, DslError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let mut statements = Vec::new();
    while p.peek().tok != Tok::Eof {
        statements.push(p.statement()?);
    }
    let ast = Ast { statements };
    check_duplicates(&ast)?;
    Ok(ast)
}

/// Parses a single polynomial.
pub fn parse_poly<C: Coeff>(src: &str) -> Result<Poly<C>, DslError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let mut syms = Vec::new();
    let value = p.expr(&mut syms)?;
    if p.peek().tok != Tok::Eof {
        return p.unexpected("end of polynomial");
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    const GR25: &str = "symbol e; category Gr25 over P(10) primitive [0,0,0,0,2]; \
        category Gr25g over P(10) primitive [0,0,0,0,2]; \
        intersect Gr25, Gr25g over P(10) = e; check main_theorem(Gr25, Gr25g);";

    #[test]
    fn gr25_file() {
        let ast = parse::<BigInt>(GR25).unwrap();
        assert_eq!(ast.len(), 5);
        match &ast.statements[1].stmt {
            Stmt::Category {
                name,
                ambient,
                primitive,
                left,
            } => {
                assert_eq!(name.name, "Gr25");
                assert_eq!(ambient.value, 10);
                assert_eq!(primitive[4].value, P::int(2));
                assert!(left.is_none());
            }
            other => panic!("unexpected {other:?}"),
        }
        match &ast.statements[4].stmt {
            Stmt::Check {
                name,
                args,
                options,
            } => {
                assert_eq!(name.name, "main_theorem");
                assert_eq!(args.len(), 2);
                assert!(options.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_file() {
        assert!(parse::<BigInt>("").unwrap().is_empty());
        assert!(parse::<BigInt>("  # nothing\n").unwrap().is_empty());
    }

    #[test]
    fn polynomials() {
        let p: P = parse_poly("(x + 1)*(x - 1)").unwrap();
        assert_eq!(p.to_string(), "x^2 - 1");
        assert_eq!(
            parse_poly::<BigInt>("-2*x^3 + -x").unwrap().to_string(),
            "-2*x^3 - x"
        );
        assert_eq!(
            parse_poly::<BigInt>("x*x").unwrap(),
            parse_poly("x^2").unwrap()
        );
        assert!(parse_poly::<BigInt>("x +").is_err());
        assert!(parse_poly::<BigInt>("x y").is_err());
        assert!(parse_poly::<i64>("99999999999999999999").is_err());
        assert!(parse_poly::<BigInt>("99999999999999999999").is_ok());
    }

    #[test]
    fn options_and_errors() {
        let ast = parse::<BigInt>("check cone_part1(A, n2=3);").unwrap();
        match &ast.statements[0].stmt {
            Stmt::Check { options, .. } => assert_eq!(options[0].1.value, P::int(3)),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse::<BigInt>("check nope(A);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::UnknownCheck);
        assert_eq!(err.span, Span::new(1, 7));
        let err = parse::<BigInt>("symbol a;\nsymbol b, a;").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Duplicate);
        assert_eq!(err.span, Span::new(2, 11));
        let err = parse::<BigInt>("check cone_part1(n2=3, A);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Syntax);
    }
}
