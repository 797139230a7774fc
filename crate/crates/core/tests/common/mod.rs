#![allow(dead_code)]

use gramcalc::laurent::{int, Monomial};
use gramcalc::{LaurentPolynomial, Var};
use proptest::prelude::*;

pub const VARS: [&str; 4] = ["x", "y", "z", "w"];

pub fn poly(text: &str) -> LaurentPolynomial {
    text.parse().expect("polynomial literal")
}

/// Rewrites juxtaposed notation such as `5 x^2 z^3 + x y^2 z^2` into the
/// polynomial syntax (`5*x^2*z^3 + x*y^2*z^2`).
pub fn from_juxtaposed(text: &str) -> LaurentPolynomial {
    let mut out = String::new();
    let mut need_star = false;
    let mut chars = text.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        match c {
            '+' | '-' => {
                out.push_str(&format!(" {c} "));
                need_star = false;
            }
            '^' => {
                out.push('^');
                while let Some(d) = chars
                    .peek()
                    .copied()
                    .filter(|d| d.is_ascii_digit() || *d == '-')
                {
                    out.push(d);
                    chars.next();
                }
                need_star = true;
            }
            d if d.is_ascii_digit() => {
                if need_star {
                    out.push('*');
                }
                out.push(d);
                while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                    out.push(d);
                    chars.next();
                }
                need_star = true;
            }
            v => {
                if need_star {
                    out.push('*');
                }
                out.push(v);
                need_star = true;
            }
        }
    }
    poly(&out)
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(-1i64..=2, 4).prop_map(|exps| {
        Monomial::from_exponents(VARS.iter().zip(exps).map(|(v, e)| (Var::of(v), e)))
    })
}

pub fn laurent(max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    proptest::collection::vec((monomial(), -4i64..=4), 0..=max_terms).prop_map(|terms| {
        LaurentPolynomial::from_terms(terms.into_iter().map(|(m, c)| (m, int(c))))
    })
}

/// Polynomials with nonnegative exponents only.
pub fn polynomial(max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    proptest::collection::vec(
        (proptest::collection::vec(0i64..=2, 4), -4i64..=4),
        0..=max_terms,
    )
    .prop_map(|terms| {
        LaurentPolynomial::from_terms(terms.into_iter().map(|(exps, c)| {
            let m = Monomial::from_exponents(VARS.iter().zip(exps).map(|(v, e)| (Var::of(v), e)));
            (m, int(c))
        }))
    })
}
