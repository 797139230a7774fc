//! The `.gram` text format.
//!
//! A document is a sequence of lines. `#` starts a comment that runs to the
//! end of the line, and blank lines are ignored. Recognised lines:
//!
//! ```text
//! vars: x y z w          # variables that have rules
//! inert: t               # variables treated as constants
//! rule x -> x*y          # one rule per line
//! start: z               # optional start word
//! n: 8                   # optional default iteration count
//! ```
//!
//! Polynomials are sums of terms. A term is a product of factors joined by
//! `*`; a factor is an integer, a fraction `p/q`, or a variable with an
//! optional integer power `x^3`, `x^-1`. Juxtaposition (`2x`, `x y`) and
//! parentheses are rejected.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::laurent::{LaurentPolynomial, Monomial, Rational, Var};

/// A parsed `.gram` document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrammarSpec {
    pub declared_vars: Vec<Var>,
    pub inert_vars: Vec<Var>,
    pub rules: Vec<(Var, LaurentPolynomial)>,
    pub start: Option<LaurentPolynomial>,
    pub default_n: Option<usize>,
}

impl GrammarSpec {
    /// Variable order used when printing: declared variables, then inert ones.
    pub fn variable_order(&self) -> Vec<Var> {
        self.declared_vars
            .iter()
            .chain(&self.inert_vars)
            .cloned()
            .collect()
    }

    pub fn to_grammar(&self, name: Option<&str>) -> Result<Grammar> {
        Grammar::with_order(
            name.map(str::to_string),
            self.rules.iter().cloned().collect(),
            self.inert_vars.iter().cloned().collect(),
            self.variable_order(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Slash,
    Star,
    Caret,
    Plus,
    Minus,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Int(s) => s.clone(),
            Tok::Slash => "/".into(),
            Tok::Star => "*".into(),
            Tok::Caret => "^".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
        }
    }
}

/// Where an expression sits in the document, for diagnostics.
#[derive(Clone, Copy)]
struct Span {
    line: usize,
    /// 1-based column of the expression's first byte.
    column: usize,
}

fn syntax(
    span: Span,
    offset: usize,
    token: impl Into<String>,
    message: impl Into<String>,
) -> Error {
    Error::Syntax {
        line: span.line,
        column: span.column + offset,
        token: token.into(),
        message: message.into(),
    }
}

fn tokenize(text: &str, span: Span) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                continue;
            }
            '/' => Tok::Slash,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            '(' | ')' => return Err(syntax(span, start, c, "parentheses are not supported")),
            _ => {
                let ch = text[start..].chars().next().unwrap_or(c);
                return Err(syntax(span, start, ch, "unexpected character"));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

/// A parsed expression and the variables it mentions, with their columns.
struct Parsed {
    poly: LaurentPolynomial,
    uses: Vec<(String, usize)>,
}

struct ExprParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    span: Span,
    end: usize,
    uses: Vec<(String, usize)>,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn err_here(&self, message: &str) -> Error {
        let token = self
            .peek()
            .map_or_else(|| "end of line".to_string(), Tok::text);
        syntax(self.span, self.offset(), token, message)
    }

    fn expr(&mut self) -> Result<LaurentPolynomial> {
        if self.peek().is_none() {
            return Err(self.err_here("expected a polynomial"));
        }
        let mut total = LaurentPolynomial::zero();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (c, m) = self.term()?;
            total.add_term(m, if negate { -c } else { c });
            match self.peek() {
                None => return Ok(total),
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                Some(_) => return Err(self.err_here("expected `+`, `-` or `*`")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Rational, Monomial)> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one();
        loop {
            self.factor(&mut coeff, &mut mono)?;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok((coeff, mono));
            }
        }
    }

    fn factor(&mut self, coeff: &mut Rational, mono: &mut Monomial) -> Result<()> {
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Int(num), _)) => {
                self.pos += 1;
                let num: BigInt = num.parse().expect("digits");
                let mut den = BigInt::one();
                let mut text = num.to_string();
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.toks.get(self.pos).cloned() {
                        Some((Tok::Int(d), _)) => {
                            self.pos += 1;
                            text = format!("{text}/{d}");
                            den = d.parse().expect("digits");
                        }
                        _ => return Err(self.err_here("expected a denominator")),
                    }
                }
                if den.is_zero() {
                    return Err(Error::ZeroDenominator {
                        line: self.span.line,
                        token: text,
                    });
                }
                if self.peek() == Some(&Tok::Caret) {
                    return Err(self.err_here("powers of numbers are not supported"));
                }
                *coeff *= Rational::new(num, den);
                Ok(())
            }
            Some((Tok::Ident(name), at)) => {
                self.pos += 1;
                let v = Var::new(&name)
                    .map_err(|_| syntax(self.span, at, &name, "invalid variable name"))?;
                self.uses.push((name, at));
                let mut exp: i64 = 1;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let negative = match self.peek() {
                        Some(Tok::Minus) => {
                            self.pos += 1;
                            true
                        }
                        Some(Tok::Plus) => {
                            self.pos += 1;
                            false
                        }
                        _ => false,
                    };
                    match self.toks.get(self.pos).cloned() {
                        Some((Tok::Int(digits), at)) => {
                            self.pos += 1;
                            let e: i64 = digits.parse().map_err(|_| {
                                syntax(self.span, at, &digits, "exponent out of range")
                            })?;
                            exp = if negative { -e } else { e };
                        }
                        _ => return Err(self.err_here("expected an integer exponent")),
                    }
                }
                *mono = mono.shifted(&v, exp);
                Ok(())
            }
            _ => Err(self.err_here("expected a number or a variable")),
        }
    }
}

fn parse_expr(text: &str, span: Span) -> Result<Parsed> {
    let toks = tokenize(text, span)?;
    let mut parser = ExprParser {
        toks: &toks,
        pos: 0,
        span,
        end: text.len(),
        uses: Vec::new(),
    };
    let poly = parser.expr()?;
    Ok(Parsed {
        poly,
        uses: parser.uses,
    })
}

/// Parses a single polynomial in the term syntax.
pub fn parse_polynomial(text: &str) -> Result<LaurentPolynomial> {
    parse_expr(text, Span { line: 1, column: 1 }).map(|p| p.poly)
}

fn parse_names(text: &str, span: Span) -> Result<Vec<(Var, usize)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split_inclusive(char::is_whitespace) {
        let word = piece.trim();
        if !word.is_empty() {
            let lead = piece.len() - piece.trim_start().len();
            let v = Var::new(word)
                .map_err(|_| syntax(span, offset + lead, word, "invalid variable name"))?;
            out.push((v, offset + lead));
        }
        offset += piece.len();
    }
    Ok(out)
}

struct LineRule {
    line: usize,
    lhs: Var,
    image: Parsed,
}

/// Parses a `.gram` document.
pub fn parse_grammar(text: &str) -> Result<GrammarSpec> {
    let mut declared: Vec<(Var, usize)> = Vec::new();
    let mut inert: Vec<(Var, usize)> = Vec::new();
    let mut rules: Vec<LineRule> = Vec::new();
    let mut start: Option<(Parsed, Span)> = None;
    let mut default_n: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let lead = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let at = |offset: usize| Span {
            line,
            column: 1 + lead + offset,
        };

        if let Some(rest) = body
            .strip_prefix("rule")
            .filter(|r| r.starts_with(char::is_whitespace))
        {
            let base = body.len() - rest.len();
            let Some((lhs, rhs)) = rest.split_once("->") else {
                return Err(syntax(at(base), 0, rest.trim(), "expected `->` in rule"));
            };
            let lhs_lead = lhs.len() - lhs.trim_start().len();
            let name = lhs.trim();
            let lhs_var = Var::new(name).map_err(|_| {
                syntax(
                    at(base + lhs_lead),
                    0,
                    name,
                    "expected a single variable before `->`",
                )
            })?;
            let rhs_offset = base + lhs.len() + 2;
            let image = parse_expr(rhs, at(rhs_offset))?;
            rules.push(LineRule {
                line,
                lhs: lhs_var,
                image,
            });
            continue;
        }

        let Some((directive, value)) = body.split_once(':') else {
            let token = body.split_whitespace().next().unwrap_or(body);
            return Err(syntax(
                at(0),
                0,
                token,
                "expected `vars:`, `inert:`, `rule`, `start:` or `n:`",
            ));
        };
        let value_span = at(directive.len() + 1);
        match directive.trim() {
            "vars" => {
                declared.extend(
                    parse_names(value, value_span)?
                        .into_iter()
                        .map(|(v, _)| (v, line)),
                );
            }
            "inert" => {
                inert.extend(
                    parse_names(value, value_span)?
                        .into_iter()
                        .map(|(v, _)| (v, line)),
                );
            }
            "start" => {
                if start.is_some() {
                    return Err(Error::DuplicateDirective {
                        line,
                        directive: "start".into(),
                    });
                }
                start = Some((parse_expr(value, value_span)?, value_span));
            }
            "n" => {
                if default_n.is_some() {
                    return Err(Error::DuplicateDirective {
                        line,
                        directive: "n".into(),
                    });
                }
                let v = value.trim();
                let n = v.parse::<usize>().map_err(|_| {
                    syntax(
                        value_span,
                        value.len() - value.trim_start().len(),
                        v,
                        "expected a nonnegative integer",
                    )
                })?;
                default_n = Some(n);
            }
            other => {
                return Err(syntax(at(0), 0, other, "unknown directive"));
            }
        }
    }

    let mut seen = BTreeSet::new();
    for (v, line) in declared.iter().chain(&inert) {
        if !seen.insert(v.clone()) {
            return Err(Error::DuplicateDeclaration {
                line: *line,
                name: v.name().to_string(),
            });
        }
    }
    let declared_set: BTreeSet<&Var> = declared.iter().map(|(v, _)| v).collect();
    let inert_set: BTreeSet<&Var> = inert.iter().map(|(v, _)| v).collect();

    let mut ruled: BTreeMap<Var, usize> = BTreeMap::new();
    for r in &rules {
        if inert_set.contains(&r.lhs) {
            return Err(syntax(
                Span {
                    line: r.line,
                    column: 1,
                },
                0,
                r.lhs.name(),
                "inert variables cannot have rules",
            ));
        }
        if !declared_set.contains(&r.lhs) {
            return Err(Error::UndeclaredVariable {
                line: r.line,
                name: r.lhs.name().to_string(),
            });
        }
        if ruled.insert(r.lhs.clone(), r.line).is_some() {
            return Err(Error::DuplicateRule {
                line: r.line,
                name: r.lhs.name().to_string(),
            });
        }
    }

    let check_uses = |parsed: &Parsed, line: usize| -> Result<()> {
        for (name, _) in &parsed.uses {
            let v = Var::of(name);
            if !declared_set.contains(&v) && !inert_set.contains(&v) {
                return Err(Error::UndeclaredVariable {
                    line,
                    name: name.clone(),
                });
            }
        }
        Ok(())
    };
    for r in &rules {
        check_uses(&r.image, r.line)?;
    }
    if let Some((parsed, span)) = &start {
        check_uses(parsed, span.line)?;
    }

    for (v, line) in &declared {
        if !ruled.contains_key(v) {
            return Err(Error::MissingRule {
                line: *line,
                name: v.name().to_string(),
            });
        }
    }

    Ok(GrammarSpec {
        declared_vars: declared.into_iter().map(|(v, _)| v).collect(),
        inert_vars: inert.into_iter().map(|(v, _)| v).collect(),
        rules: rules.into_iter().map(|r| (r.lhs, r.image.poly)).collect(),
        start: start.map(|(p, _)| p.poly),
        default_n,
    })
}

/// Canonical text for a spec. Parsing the result gives back an equal spec.
pub fn format_grammar(spec: &GrammarSpec) -> String {
    let order = spec.variable_order();
    let names = |vs: &[Var]| vs.iter().map(Var::name).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    if spec.declared_vars.is_empty() {
        out.push_str("vars:\n");
    } else {
        out.push_str(&format!("vars: {}\n", names(&spec.declared_vars)));
    }
    if !spec.inert_vars.is_empty() {
        out.push_str(&format!("inert: {}\n", names(&spec.inert_vars)));
    }
    for (v, image) in &spec.rules {
        out.push_str(&format!("rule {} -> {}\n", v, image.to_text(&order)));
    }
    if let Some(start) = &spec.start {
        out.push_str(&format!("start: {}\n", start.to_text(&order)));
    }
    if let Some(n) = spec.default_n {
        out.push_str(&format!("n: {n}\n"));
    }
    out
}
