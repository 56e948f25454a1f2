use thiserror::Error;

/// Failures of the model and of the SOD constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("category `{name}` is not moderate: length {length} >= ambient rank {ambient}")]
    NonModerate {
        name: String,
        length: usize,
        ambient: usize,
    },
    #[error("category `{name}`: left and right Lefschetz data disagree ({detail})")]
    LeftRightMismatch { name: String, detail: String },
    #[error(
        "ambient ranks differ: `{left}` lives over P({left_rank}), `{right}` over P({right_rank})"
    )]
    AmbientMismatch {
        left: String,
        left_rank: usize,
        right: String,
        right_rank: usize,
    },
    #[error("no intersection invariant declared for `{0}` and `{1}`")]
    UnresolvedIntersection(String, String),
    #[error("base-locus invariant for `{0}` is not resolvable")]
    UnresolvedBaseLocus(String),
    #[error("disjointness (condition D_n) is not declared for {{{0}}}")]
    MissingDisjointness(String),
    #[error("universal-hyperplane invariant is underdetermined: {0}")]
    Underdetermined(String),
    #[error("conflicting universal-hyperplane invariants for {{{names}}}: {first} vs {second}")]
    ConflictingHyperplaneTotal {
        names: String,
        first: String,
        second: String,
    },
    #[error("join of `{name}` would have length {length} >= ambient rank {ambient}")]
    JoinNotModerate {
        name: String,
        length: usize,
        ambient: usize,
    },
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate declaration of `{0}`")]
    DuplicateDeclaration(String),
    #[error("conflicting intersection for `{a}` and `{b}`: {detail}")]
    ConflictingIntersection {
        a: String,
        b: String,
        detail: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
