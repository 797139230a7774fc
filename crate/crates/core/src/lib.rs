//! Exact symbolic computation for context-free grammar calculus on
//! permutation statistics.
//!
//! * [`laurent`]: sparse Laurent polynomials over the rationals.
//! * [`grammar`]: formal derivatives with respect to a grammar, plus the
//!   builtin grammar catalog.
//! * [`gdsl`]: the `.gram` text format.
//! * [`permstat`]: exhaustive permutation statistics, used as an oracle.
//! * [`series`]: truncated power series and closed-form generating functions.
//! * [`verify`]: named cross-checks between the three engines.

pub mod error;
pub mod gdsl;
pub mod grammar;
pub mod laurent;
pub mod permstat;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use gdsl::{format_grammar, parse_grammar, parse_polynomial, GrammarSpec};
pub use grammar::{builtin_grammar, grammar_g, BuiltinGrammar, DerivativeSequence, Grammar};
pub use laurent::{Assignment, LaurentPolynomial, Monomial, Rational, Var};
