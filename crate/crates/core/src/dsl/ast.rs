use super::Span;
use crate::poly::{Coeff, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

/// A polynomial literal with the positions of its symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyLit<C: Coeff> {
    pub value: Poly<C>,
    pub span: Span,
    pub symbols: Vec<Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLit {
    pub value: usize,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt<C: Coeff> {
    Symbol {
        names: Vec<Ident>,
    },
    Category {
        name: Ident,
        ambient: IntLit,
        primitive: Vec<PolyLit<C>>,
        left: Option<Vec<PolyLit<C>>>,
    },
    Intersect {
        a: Ident,
        b: Ident,
        ambient: IntLit,
        value: PolyLit<C>,
    },
    Disjoint {
        names: Vec<Ident>,
    },
    Dual {
        name: Ident,
        primitive: Vec<PolyLit<C>>,
    },
    Check {
        name: Ident,
        args: Vec<Ident>,
        options: Vec<(Ident, PolyLit<C>)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement<C: Coeff> {
    pub stmt: Stmt<C>,
    /// Position of the leading keyword.
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ast<C: Coeff> {
    pub statements: Vec<Statement<C>>,
}

impl<C: Coeff> Ast<C> {
    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }
}
