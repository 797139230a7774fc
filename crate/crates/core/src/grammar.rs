//! Formal derivatives with respect to a context-free grammar.
//!
//! A grammar assigns a Laurent polynomial to some variables. Its formal
//! derivative `D` is the derivation that sends each such variable to its
//! rule image, sends constants and inert variables to zero, and extends to
//! products by the Leibniz rule. On a single term this gives
//! `D(c * prod v^e_v) = c * sum_v e_v * v^(e_v - 1) * rule(v) * prod_{u != v} u^e_u`,
//! which also covers negative exponents: `D(u^-1) = -u^-2 * D(u)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{int, LaurentPolynomial, Rational, Var};

/// Default bound on the number of derivative steps in [`Grammar::derive_n`].
pub const DEFAULT_ORDER_LIMIT: usize = 25;

#[derive(Clone, PartialEq, Eq)]
pub struct Grammar {
    name: Option<String>,
    rules: BTreeMap<Var, LaurentPolynomial>,
    inert: BTreeSet<Var>,
    order: Vec<Var>,
}

impl Grammar {
    /// Builds a grammar. Every variable that occurs in a rule image must
    /// have a rule itself or be listed in `inert`.
    pub fn new(
        name: Option<String>,
        rules: BTreeMap<Var, LaurentPolynomial>,
        inert: BTreeSet<Var>,
    ) -> Result<Self> {
        let order = rules.keys().chain(&inert).cloned().collect();
        Self::with_order(name, rules, inert, order)
    }

    /// Like [`Grammar::new`], also fixing the order in which variables are
    /// printed inside a term.
    pub fn with_order(
        name: Option<String>,
        rules: BTreeMap<Var, LaurentPolynomial>,
        mut inert: BTreeSet<Var>,
        order: Vec<Var>,
    ) -> Result<Self> {
        inert.retain(|v| !rules.contains_key(v));
        for (lhs, image) in &rules {
            for v in image.variables() {
                if !rules.contains_key(&v) && !inert.contains(&v) {
                    return Err(Error::UnboundVariable {
                        var: v,
                        rule: lhs.clone(),
                    });
                }
            }
        }
        Ok(Grammar {
            name,
            rules,
            inert,
            order,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rules(&self) -> &BTreeMap<Var, LaurentPolynomial> {
        &self.rules
    }

    pub fn rule(&self, v: &Var) -> Option<&LaurentPolynomial> {
        self.rules.get(v)
    }

    pub fn inert(&self) -> &BTreeSet<Var> {
        &self.inert
    }

    /// Variable order for printing terms.
    pub fn variable_order(&self) -> &[Var] {
        &self.order
    }

    /// Formats a polynomial with this grammar's variable order.
    pub fn format(&self, p: &LaurentPolynomial) -> String {
        p.to_text(&self.order)
    }

    /// The same grammar with one rule replaced.
    pub fn with_rule(&self, v: &Var, image: LaurentPolynomial) -> Result<Self> {
        let mut rules = self.rules.clone();
        rules.insert(v.clone(), image);
        Self::with_order(
            self.name.clone(),
            rules,
            self.inert.clone(),
            self.order.clone(),
        )
    }

    /// One application of the formal derivative.
    pub fn derive(&self, p: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        let mut out = LaurentPolynomial::zero();
        for (m, c) in p.terms() {
            for (v, e) in m.iter() {
                let Some(rule) = self.rules.get(v) else {
                    if e < 0 && !self.inert.contains(v) {
                        return Err(Error::NoRuleForInverse(v.clone()));
                    }
                    continue;
                };
                let base = m.shifted(v, -1);
                let scale = c * int(e);
                for (rm, rc) in rule.terms() {
                    out.add_term(base.mul(rm), &scale * rc);
                }
            }
        }
        Ok(out)
    }

    /// `D^k(p)` for every `k` up to `n`, bounded by [`DEFAULT_ORDER_LIMIT`].
    pub fn derive_n(&self, p: &LaurentPolynomial, n: usize) -> Result<DerivativeSequence> {
        self.derive_n_limited(p, n, DEFAULT_ORDER_LIMIT)
    }

    pub fn derive_n_limited(
        &self,
        p: &LaurentPolynomial,
        n: usize,
        limit: usize,
    ) -> Result<DerivativeSequence> {
        if n > limit {
            return Err(Error::OrderLimit {
                requested: n,
                limit,
            });
        }
        let mut items = Vec::with_capacity(n + 1);
        items.push(p.clone());
        for k in 0..n {
            let next = self.derive(&items[k])?;
            items.push(next);
        }
        Ok(DerivativeSequence {
            grammar: self.clone(),
            items,
        })
    }

    /// Checks `D^n(uv) = sum_k C(n,k) D^k(u) D^(n-k)(v)` exactly.
    pub fn leibniz_check(
        &self,
        u: &LaurentPolynomial,
        v: &LaurentPolynomial,
        n: usize,
    ) -> Result<bool> {
        let lhs = self.derive_n(&(u * v), n)?.into_last();
        let du = self.derive_n(u, n)?;
        let dv = self.derive_n(v, n)?;
        let mut rhs = LaurentPolynomial::zero();
        let mut binom = Rational::from_integer(1.into());
        for k in 0..=n {
            rhs += &(&du.items[k] * &dv.items[n - k]).scale(&binom);
            binom = binom * int((n - k) as i64) / int(k as i64 + 1);
        }
        Ok(lhs == rhs)
    }

    /// Whether mapping variables through `sigma` turns every rule of this
    /// grammar into a rule of `target`: `sigma(rule(v)) = target.rule(sigma(v))`.
    pub fn specializes_to(&self, sigma: &BTreeMap<Var, Var>, target: &Grammar) -> Result<bool> {
        let images: BTreeMap<Var, LaurentPolynomial> = sigma
            .iter()
            .map(|(from, to)| (from.clone(), LaurentPolynomial::var(to)))
            .collect();
        for (v, image) in &self.rules {
            let Some(to) = sigma.get(v) else {
                return Ok(false);
            };
            let expected = target
                .rule(to)
                .cloned()
                .unwrap_or_else(LaurentPolynomial::zero);
            if image.subst(&images)? != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grammar({}", self.name.as_deref().unwrap_or("_"))?;
        for v in &self.order {
            if let Some(image) = self.rules.get(v) {
                write!(f, "; {} -> {}", v, self.format(image))?;
            }
        }
        if !self.inert.is_empty() {
            write!(f, "; inert {:?}", self.inert)?;
        }
        f.write_str(")")
    }
}

struct Rules<'a>(&'a BTreeMap<Var, LaurentPolynomial>);

impl Serialize for Rules<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (v, p) in self.0 {
            map.serialize_entry(v.name(), p)?;
        }
        map.end()
    }
}

impl Serialize for Grammar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Grammar", 3)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("rules", &Rules(&self.rules))?;
        st.serialize_field("inert", &self.inert)?;
        st.end()
    }
}

/// `D^0(p), D^1(p), ..., D^n(p)`.
#[derive(Debug, Clone)]
pub struct DerivativeSequence {
    pub grammar: Grammar,
    pub items: Vec<LaurentPolynomial>,
}

impl DerivativeSequence {
    pub fn start(&self) -> &LaurentPolynomial {
        &self.items[0]
    }

    pub fn last(&self) -> &LaurentPolynomial {
        self.items
            .last()
            .expect("sequence holds at least the start")
    }

    pub fn into_last(mut self) -> LaurentPolynomial {
        self.items.pop().expect("sequence holds at least the start")
    }
}

/// The grammars that ship with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinGrammar {
    /// `x -> xy, y -> xz, z -> zw, w -> xz`. `D^n(z)` counts exterior peaks
    /// and proper double descents; `D^n(y)` counts peaks and double descents.
    PeakDescent,
    /// `x -> xy, y -> xy`.
    Eulerian,
    /// `x -> xy, y -> x`.
    Andre,
    /// `x -> x^3 y, y -> x y^2`.
    Ramanujan,
    /// `x -> xy, y -> x^2`.
    ExteriorPeak,
}

impl BuiltinGrammar {
    pub const ALL: [BuiltinGrammar; 5] = [
        BuiltinGrammar::PeakDescent,
        BuiltinGrammar::Eulerian,
        BuiltinGrammar::Andre,
        BuiltinGrammar::Ramanujan,
        BuiltinGrammar::ExteriorPeak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGrammar::PeakDescent => "paper_G",
            BuiltinGrammar::Eulerian => "eulerian",
            BuiltinGrammar::Andre => "andre",
            BuiltinGrammar::Ramanujan => "ramanujan",
            BuiltinGrammar::ExteriorPeak => "exterior_peak",
        }
    }

    fn source(
        self,
    ) -> (
        &'static [&'static str],
        &'static [(&'static str, &'static str)],
    ) {
        match self {
            BuiltinGrammar::PeakDescent => (
                &["x", "y", "z", "w"],
                &[("x", "x*y"), ("y", "x*z"), ("z", "z*w"), ("w", "x*z")],
            ),
            BuiltinGrammar::Eulerian => (&["x", "y"], &[("x", "x*y"), ("y", "x*y")]),
            BuiltinGrammar::Andre => (&["x", "y"], &[("x", "x*y"), ("y", "x")]),
            BuiltinGrammar::Ramanujan => (&["x", "y"], &[("x", "x^3*y"), ("y", "x*y^2")]),
            BuiltinGrammar::ExteriorPeak => (&["x", "y"], &[("x", "x*y"), ("y", "x^2")]),
        }
    }
}

impl FromStr for BuiltinGrammar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" => Ok(BuiltinGrammar::PeakDescent),
            _ => BuiltinGrammar::ALL
                .into_iter()
                .find(|b| b.name() == s)
                .ok_or_else(|| Error::UnknownGrammar(s.to_string())),
        }
    }
}

impl fmt::Display for BuiltinGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn builtin_grammar(which: BuiltinGrammar) -> Grammar {
    let (order, rules) = which.source();
    let rules = rules
        .iter()
        .map(|(v, image)| (Var::of(v), image.parse().expect("builtin rule parses")))
        .collect();
    let order = order.iter().map(|v| Var::of(v)).collect();
    Grammar::with_order(
        Some(which.name().to_string()),
        rules,
        BTreeSet::new(),
        order,
    )
    .expect("builtin grammar is closed")
}

/// Looks up a builtin grammar by name (`paper_G` or `G`, `eulerian`,
/// `andre`, `ramanujan`, `exterior_peak`).
pub fn builtin_grammar_named(name: &str) -> Result<Grammar> {
    name.parse().map(builtin_grammar)
}

/// Shorthand for the peak/descent grammar.
pub fn grammar_g() -> Grammar {
    builtin_grammar(BuiltinGrammar::PeakDescent)
}

/// The coefficient of a monomial given as text, e.g. `coeff_of(p, "x*y*z^2*w")`.
pub fn coeff_of(p: &LaurentPolynomial, monomial: &str) -> Rational {
    let m: LaurentPolynomial = monomial.parse().expect("monomial parses");
    match m.as_single_term() {
        Some((m, _)) => p.coeff(m),
        None => Rational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn single_derivatives() {
        let g = grammar_g();
        assert_eq!(g.derive(&p("z")).unwrap(), p("z*w"));
        assert!(g.derive(&p("7")).unwrap().is_zero());
        assert_eq!(g.derive(&p("x^-1")).unwrap(), p("-x^-1*y"));
        assert!(g.derive(&p("w - y")).unwrap().is_zero());
        assert!(g.derive(&p("w^2 + 2*w*y + y^2 - 4*x*z")).unwrap().is_zero());
        assert_eq!(g.derive(&p("z*x^-1")).unwrap(), p("z*x^-1*w - z*x^-1*y"));
    }

    #[test]
    fn fourth_derivatives() {
        let g = grammar_g();
        let seq = g.derive_n(&p("z"), 4).unwrap();
        assert_eq!(seq.items[0], p("z"));
        assert_eq!(
            seq.items[4],
            p("z*w^4 + 11*x*z^2*w^2 + 6*x*y*z^2*w + 5*x^2*z^3 + x*y^2*z^2")
        );
        assert_eq!(
            g.format(&seq.items[4]),
            "z*w^4 + 11*x*z^2*w^2 + 6*x*y*z^2*w + 5*x^2*z^3 + x*y^2*z^2"
        );
        let seq = g.derive_n(&p("y"), 4).unwrap();
        assert_eq!(
            seq.items[4],
            p("x*z*w^3 + 3*x*y*z*w^2 + 8*x^2*z^2*w + 3*x*y^2*z*w + 8*x^2*y*z^2 + x*y^3*z")
        );
    }

    #[test]
    fn exponential_orbit() {
        let g = grammar_g();
        let seq = g.derive_n(&p("z*x^-1"), 3).unwrap();
        let expected = &p("z*x^-1") * &p("w - y").pow(3).unwrap();
        assert_eq!(seq.items[3], expected);
    }

    #[test]
    fn order_limit() {
        let g = grammar_g();
        assert_eq!(
            g.derive_n(&p("z"), 26).unwrap_err(),
            Error::OrderLimit {
                requested: 26,
                limit: 25
            }
        );
        assert_eq!(g.derive_n_limited(&p("z"), 3, 3).unwrap().items.len(), 4);
    }

    #[test]
    fn inverse_needs_rule() {
        let g = builtin_grammar(BuiltinGrammar::Eulerian);
        assert_eq!(
            g.derive(&p("t^-1")).unwrap_err(),
            Error::NoRuleForInverse(Var::of("t"))
        );
        // positive powers of unknown variables behave as constants
        assert_eq!(g.derive(&p("t*x")).unwrap(), p("t*x*y"));
        let inert = Grammar::new(
            None,
            [(Var::of("x"), p("x*t"))].into(),
            [Var::of("t")].into(),
        )
        .unwrap();
        assert_eq!(inert.derive(&p("t^-1*x")).unwrap(), p("x"));
    }

    #[test]
    fn unbound_rule_variable() {
        let err =
            Grammar::new(None, [(Var::of("x"), p("x*q"))].into(), BTreeSet::new()).unwrap_err();
        assert_eq!(
            err,
            Error::UnboundVariable {
                var: Var::of("q"),
                rule: Var::of("x")
            }
        );
    }

    #[test]
    fn leibniz() {
        let g = grammar_g();
        assert!(g.leibniz_check(&p("z"), &p("w"), 3).unwrap());
        assert!(g.leibniz_check(&p("1"), &p("x^-1*y + 3*w^2"), 4).unwrap());
        assert!(g
            .leibniz_check(&p("x*z^-1 - y"), &p("w^2 + 1/2*x"), 5)
            .unwrap());
    }

    #[test]
    fn builtin_catalog() {
        let g = grammar_g();
        assert_eq!(g.rule(&Var::of("w")), Some(&p("x*z")));
        let e = builtin_grammar(BuiltinGrammar::Eulerian);
        assert_eq!(e.rule(&Var::of("x")), Some(&p("x*y")));
        let a = builtin_grammar(BuiltinGrammar::Andre);
        assert_eq!(a.rule(&Var::of("y")), Some(&p("x")));
        let r = builtin_grammar(BuiltinGrammar::Ramanujan);
        assert_eq!(r.derive(&p("x")).unwrap(), p("x^3*y"));
        assert_eq!(
            builtin_grammar_named("nope").unwrap_err(),
            Error::UnknownGrammar("nope".into())
        );
        assert_eq!(builtin_grammar_named("G").unwrap(), g);
        for b in BuiltinGrammar::ALL {
            assert_eq!(b.name().parse::<BuiltinGrammar>().unwrap(), b);
        }
    }

    #[test]
    fn specializations() {
        let g = grammar_g();
        let sigma = |pairs: &[(&str, &str)]| -> BTreeMap<Var, Var> {
            pairs
                .iter()
                .map(|(a, b)| (Var::of(a), Var::of(b)))
                .collect()
        };
        let to_eulerian = sigma(&[("z", "x"), ("y", "x"), ("x", "y"), ("w", "y")]);
        assert!(g
            .specializes_to(&to_eulerian, &builtin_grammar(BuiltinGrammar::Eulerian))
            .unwrap());
        let to_ext = sigma(&[("z", "x"), ("x", "x"), ("w", "y"), ("y", "y")]);
        assert!(g
            .specializes_to(&to_ext, &builtin_grammar(BuiltinGrammar::ExteriorPeak))
            .unwrap());
        assert!(!g
            .specializes_to(&to_ext, &builtin_grammar(BuiltinGrammar::Eulerian))
            .unwrap());
    }

    #[test]
    fn json_form() {
        let g = builtin_grammar(BuiltinGrammar::Andre);
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"name":"andre","rules":{"x":[{"coeff":"1","exps":{"x":1,"y":1}}],"y":[{"coeff":"1","exps":{"x":1}}]},"inert":[]}"#
        );
    }
}
