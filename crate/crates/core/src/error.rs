use thiserror::Error;

/// Errors raised by table-level constructions and structural algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table is not closed: entry {value} at ({row},{col}) is outside 0..{order}")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error(
        "multiplication is not associative at ({i},{j},{k}): ({i}*{j})*{k} = {left} \
         but {i}*({j}*{k}) = {right}"
    )]
    NotAssociative {
        i: usize,
        j: usize,
        k: usize,
        left: usize,
        right: usize,
    },
    #[error("set is not a two-sided ideal: {product} = {left}*{right} escapes it")]
    NotAnIdeal {
        left: usize,
        right: usize,
        product: usize,
    },
    #[error("element {0} is out of range")]
    BadElement(usize),
    #[error("empty generating set")]
    EmptySeed,
    #[error("order {order} exceeds the configured cap {cap}")]
    SizeLimitExceeded { order: usize, cap: usize },
    #[error("enumeration order {order} exceeds the cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
}

/// Errors raised while parsing or validating terms of the word/omega-term grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("reserved symbol 'e' may not carry the exponent 0")]
    ReservedLetterMisuse,
    #[error("the kernel idempotent 'e' may appear at most once per side")]
    TooManyKernelIdempotents,
    #[error("a side of a pseudoidentity must contain at least one letter")]
    EmptyAlphabet,
}

/// Errors raised during term evaluation in a finite semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("assignment is missing letter '{0}'")]
    MissingLetter(String),
    #[error(
        "kernel choice {0} is not an idempotent of the minimal ideal of the generated subsemigroup"
    )]
    InvalidKernelChoice(usize),
    #[error("term uses the kernel idempotent but no kernel choice was supplied")]
    MissingKernelChoice,
    #[error("element {0} is out of range")]
    BadElement(usize),
}

/// Errors raised by catalog lookups and data loading.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown semigroup name '{0}'")]
    UnknownName(String),
    #[error("bad parameters for '{name}': {why}")]
    BadParams { name: String, why: String },
    #[error("catalog data is malformed: {0}")]
    Data(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// Errors raised by the join-irreducibility classifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the trivial semigroup is not classified")]
    TrivialSemigroup,
    #[error(
        "conflicting conditions on order-{order} semigroup {key}: {a_id} and {b_id} both fire"
    )]
    ConflictingConditions {
        order: usize,
        key: String,
        a_id: String,
        b_id: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
