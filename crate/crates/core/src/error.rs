use thiserror::Error;

use crate::laurent::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid variable name `{0}`")]
    InvalidVarName(String),

    #[error("cannot invert a polynomial with {terms} terms; only single terms have inverses")]
    UnsupportedInverse { terms: usize },

    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(Var),

    #[error("variable `{0}` is assigned zero but occurs with a negative exponent")]
    ZeroToNegativePower(Var),

    #[error("variable `{0}` occurs with a negative exponent and its image is not a single term")]
    NonMonomialImage(Var),

    #[error("variable `{0}` occurs with a negative exponent but has no rule")]
    NoRuleForInverse(Var),

    #[error("variable `{var}` appears in the rule for `{rule}` but has no rule and is not inert")]
    UnboundVariable { var: Var, rule: Var },

    #[error("unknown grammar `{0}`")]
    UnknownGrammar(String),

    #[error("derivative order {requested} exceeds the limit {limit}")]
    OrderLimit { requested: usize, limit: usize },

    #[error("line {line}, column {column}: {message} (at `{token}`)")]
    Syntax {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },

    #[error("line {line}: undeclared variable `{name}`")]
    UndeclaredVariable { line: usize, name: String },

    #[error("line {line}: duplicate rule for `{name}`")]
    DuplicateRule { line: usize, name: String },

    #[error("line {line}: `{name}` is declared more than once")]
    DuplicateDeclaration { line: usize, name: String },

    #[error("line {line}: variable `{name}` has no rule; declare it with `inert:` instead")]
    MissingRule { line: usize, name: String },

    #[error("line {line}: zero denominator in `{token}`")]
    ZeroDenominator { line: usize, token: String },

    #[error("line {line}: duplicate `{directive}` directive")]
    DuplicateDirective { line: usize, directive: String },

    #[error("permutation size {n} exceeds the enumeration cap {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("table kind `{kind}` is not defined for n = {n}")]
    UnsupportedSize { kind: &'static str, n: usize },

    #[error("triangle `{which}` cannot be taken from a `{kind}` table")]
    KindMismatch {
        which: &'static str,
        kind: &'static str,
    },

    #[error("constant term of the series is not invertible")]
    NonInvertible,

    #[error("inadmissible point: {0}")]
    InadmissiblePoint(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),
}
