//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`LaurentPolynomial`] is a finite map from [`Monomial`]s to nonzero
//! [`Rational`] coefficients. Monomials carry integer exponents that may be
//! negative, so `x^-1*z^-1` is an ordinary element. Zero coefficients and
//! zero exponents are never stored, which makes structural equality the
//! same thing as polynomial equality.
//!
//! Terms iterate in the display order: higher total degree first, then the
//! larger exponent on the alphabetically first variable where two monomials
//! differ. Text output and the JSON form both follow that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Values for some variables, used by [`LaurentPolynomial::eval`].
pub type Assignment = BTreeMap<Var, Rational>;

/// Builds a rational from a numerator and denominator.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// A variable name: an ASCII letter followed by letters, digits or `_`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Result<Self> {
        let mut chars = name.chars();
        let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if valid {
            Ok(Var(Arc::from(name)))
        } else {
            Err(Error::InvalidVarName(name.to_string()))
        }
    }

    /// Like [`Var::new`] for names known to be valid. Panics otherwise.
    pub fn of(name: &str) -> Self {
        Self::new(name).expect("invalid variable name")
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::new(s)
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        Var::new(&name).map_err(de::Error::custom)
    }
}

/// A product of variables raised to nonzero integer powers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<Var, i64>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: &Var) -> Self {
        Self::from_exponents([(v.clone(), 1)])
    }

    /// Collects `(variable, exponent)` pairs, summing repeats and dropping zeros.
    pub fn from_exponents(exps: impl IntoIterator<Item = (Var, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in exps {
            *map.entry(v).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Monomial { exps: map }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: &Var) -> i64 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.exps.values().sum()
    }

    /// Variables with their exponents, in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&Var, i64)> {
        self.exps.iter().map(|(v, e)| (v, *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.exps.keys()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.exps.values().any(|e| *e < 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            let slot = exps.entry(v.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                exps.remove(v);
            }
        }
        Monomial { exps }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(v, e)| (v.clone(), e * k)).collect(),
        }
    }

    /// This monomial with the exponent of `v` changed by `delta`.
    pub fn shifted(&self, v: &Var, delta: i64) -> Monomial {
        let mut exps = self.exps.clone();
        let e = exps.get(v).copied().unwrap_or(0) + delta;
        if e == 0 {
            exps.remove(v);
        } else {
            exps.insert(v.clone(), e);
        }
        Monomial { exps }
    }

    /// Writes the factors, listing the variables of `order` first and any
    /// others alphabetically after them. Returns false for the empty product.
    fn write_factors(&self, out: &mut String, order: &[Var]) -> bool {
        let mut first = true;
        let mut put = |out: &mut String, v: &Var, e: i64| {
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(v.name());
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        };
        for v in order {
            if let Some(&e) = self.exps.get(v) {
                put(out, v, e);
            }
        }
        for (v, &e) in &self.exps {
            if !order.contains(v) {
                put(out, v, e);
            }
        }
        !first
    }
}

impl Ord for Monomial {
    /// Display order: `Less` means "printed earlier".
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let mut a = self.exps.iter().peekable();
            let mut b = other.exps.iter().peekable();
            loop {
                let (va, ea, vb, eb) = match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(&(va, &ea)), None) => (Some(va), ea, None, 0),
                    (None, Some(&(vb, &eb))) => (None, 0, Some(vb), eb),
                    (Some(&(va, &ea)), Some(&(vb, &eb))) => match va.cmp(vb) {
                        Ordering::Less => (Some(va), ea, None, 0),
                        Ordering::Greater => (None, 0, Some(vb), eb),
                        Ordering::Equal => (Some(va), ea, Some(vb), eb),
                    },
                };
                if ea != eb {
                    return eb.cmp(&ea);
                }
                if va.is_some() {
                    a.next();
                }
                if vb.is_some() {
                    b.next();
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if !self.write_factors(&mut s, &[]) {
            s.push('1');
        }
        f.write_str(&s)
    }
}

/// An exact Laurent polynomial in any number of named variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: &Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    /// Sums the given terms, merging equal monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in display order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// The single term, if there is exactly one.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Every variable that occurs in some term, in name order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.vars().cloned()).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k.clone()))
                .collect(),
        }
    }

    /// Raises to an integer power. Negative powers are only defined for a
    /// single term.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            let (m, c) = self
                .as_single_term()
                .ok_or(Error::UnsupportedInverse { terms: self.len() })?;
            let inv = Rational::one() / c;
            return Ok(Self::term(pow_rational(&inv, k.unsigned_abs()), m.pow(k)));
        }
        if let Some((m, c)) = self.as_single_term() {
            return Ok(Self::term(pow_rational(c, k as u64), m.pow(k)));
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// The multiplicative inverse of a single term.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::UnsupportedInverse { terms: 0 });
        }
        self.pow(-1)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.iter() {
                let x = point
                    .get(v)
                    .ok_or_else(|| Error::MissingAssignment(v.clone()))?;
                if e < 0 && x.is_zero() {
                    return Err(Error::ZeroToNegativePower(v.clone()));
                }
                value *= pow_rational_signed(x, e);
            }
            total += value;
        }
        Ok(total)
    }

    /// Substitutes every variable in `images` simultaneously. Variables
    /// without an image are left alone.
    pub fn subst(&self, images: &BTreeMap<Var, LaurentPolynomial>) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut value = Self::constant(c.clone());
            for (v, e) in m.iter() {
                match images.get(v) {
                    Some(image) => {
                        if e < 0 && image.as_single_term().is_none() {
                            return Err(Error::NonMonomialImage(v.clone()));
                        }
                        value = &value * &image.pow(e)?;
                    }
                    None => kept = kept.shifted(v, e),
                }
            }
            out += &value.mul_monomial(&kept);
        }
        Ok(out)
    }

    /// Text form with factors written in the given variable order.
    pub fn to_text(&self, order: &[Var]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                m.write_factors(&mut out, order);
            }
        }
        out
    }
}

fn pow_rational(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn pow_rational_signed(x: &Rational, e: i64) -> Rational {
    let p = pow_rational(x, e.unsigned_abs());
    if e < 0 {
        Rational::one() / p
    } else {
        p
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&[]))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({})", self)
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    /// Parses the term syntax of `.gram` files, e.g. `-2/3*x^-1*y^2 + z`.
    fn from_str(s: &str) -> Result<Self> {
        crate::gdsl::parse_polynomial(s)
    }
}

impl From<&Var> for LaurentPolynomial {
    fn from(v: &Var) -> Self {
        LaurentPolynomial::var(v)
    }
}

impl From<Rational> for LaurentPolynomial {
    fn from(c: Rational) -> Self {
        LaurentPolynomial::constant(c)
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

struct Exps<'a>(&'a Monomial);

impl Serialize for Exps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.exps.len()))?;
        for (v, e) in &self.0.exps {
            map.serialize_entry(v.name(), e)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TermRef<'a> {
    coeff: String,
    exps: Exps<'a>,
}

#[derive(Deserialize)]
struct TermOwned {
    coeff: String,
    exps: BTreeMap<Var, i64>,
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermRef {
                coeff: c.to_string(),
                exps: Exps(m),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermOwned>::deserialize(d)?;
        let mut p = LaurentPolynomial::zero();
        for t in raw {
            let c = parse_rational(&t.coeff)
                .ok_or_else(|| de::Error::custom(format!("bad coefficient `{}`", t.coeff)))?;
            p.add_term(Monomial::from_exponents(t.exps), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> LaurentPolynomial {
        LaurentPolynomial::var(&Var::of(name))
    }

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    fn point(pairs: &[(&str, Rational)]) -> Assignment {
        pairs.iter().map(|(n, q)| (Var::of(n), q.clone())).collect()
    }

    #[test]
    fn var_names() {
        assert!(Var::new("x").is_ok());
        assert!(Var::new("x_1").is_ok());
        assert!(Var::new("1x").is_err());
        assert!(Var::new("").is_err());
        assert!(Var::new("a-b").is_err());
        assert_eq!(Var::of("x"), "x".parse::<Var>().unwrap());
    }

    #[test]
    fn additive_inverse() {
        assert!((&v("x") + &(-v("x"))).is_zero());
    }

    #[test]
    fn sum_gives_p3() {
        let sum = &p("z*w^3 + 4*x*z^2*w") + &p("x*y*z^2");
        assert_eq!(sum, p("z*w^3 + 4*x*z^2*w + x*y*z^2"));
    }

    #[test]
    fn rational_merge() {
        let a = v("x").scale(&rat(2, 3));
        let b = v("x").scale(&rat(1, 3));
        assert_eq!(&a + &b, v("x"));
    }

    #[test]
    fn laurent_cancellation() {
        assert_eq!(&v("x") * &p("x^-1"), LaurentPolynomial::one());
        assert_eq!(&p("z*x^-1") * &v("x"), v("z"));
    }

    #[test]
    fn difference_of_squares() {
        let a = p("w + y - s");
        let b = p("w + y + s");
        let expected = &p("w + y").pow(2).unwrap() - &p("s^2");
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn powers() {
        assert_eq!(p("w - y").pow(0).unwrap(), LaurentPolynomial::one());
        assert_eq!(p("x*z").pow(-1).unwrap(), p("x^-1*z^-1"));
        assert_eq!(p("w + y").pow(2).unwrap(), p("w^2 + 2*w*y + y^2"));
        assert_eq!(p("2*x").pow(-2).unwrap(), p("1/4*x^-2"));
        assert_eq!(
            p("w + y").pow(-1),
            Err(Error::UnsupportedInverse { terms: 2 })
        );
    }

    #[test]
    fn evaluation() {
        let p3 = p("z*w^3 + 4*x*z^2*w + x*y*z^2");
        let ones = point(&[("x", int(1)), ("y", int(1)), ("z", int(1)), ("w", int(1))]);
        assert_eq!(p3.eval(&ones).unwrap(), int(6));

        let at = point(&[("x", int(4)), ("y", int(2)), ("z", int(1)), ("w", int(3))]);
        assert_eq!(p("z*w").eval(&at).unwrap(), int(3));

        let at = point(&[("x", int(2)), ("z", int(6))]);
        assert_eq!(p("x^-1*z").eval(&at).unwrap(), int(3));
    }

    #[test]
    fn evaluation_errors() {
        let at = point(&[("x", int(2))]);
        assert_eq!(
            p("x*z").eval(&at),
            Err(Error::MissingAssignment(Var::of("z")))
        );
        let at = point(&[("x", int(0))]);
        assert_eq!(
            p("x^-1").eval(&at),
            Err(Error::ZeroToNegativePower(Var::of("x")))
        );
        // zero is fine for a nonnegative exponent
        assert_eq!(p("x^2 + 3").eval(&at).unwrap(), int(3));
    }

    #[test]
    fn substitution() {
        let p3 = p("z*w^3 + 4*x*z^2*w + x*y*z^2");
        let images: BTreeMap<Var, LaurentPolynomial> = ["y", "z", "w"]
            .iter()
            .map(|n| (Var::of(n), LaurentPolynomial::one()))
            .collect();
        assert_eq!(p3.subst(&images).unwrap(), p("1 + 5*x"));
        assert_eq!(p3.subst(&BTreeMap::new()).unwrap(), p3);

        let swap: BTreeMap<Var, LaurentPolynomial> =
            [(Var::of("x"), p("2*y")), (Var::of("y"), v("x"))].into();
        assert_eq!(p("x^-2*y").subst(&swap).unwrap(), p("1/4*y^-2*x"));

        let bad: BTreeMap<Var, LaurentPolynomial> = [(Var::of("x"), p("y + 1"))].into();
        assert_eq!(
            p("x^-1").subst(&bad),
            Err(Error::NonMonomialImage(Var::of("x")))
        );
    }

    #[test]
    fn display_order_and_text() {
        let order: Vec<Var> = ["x", "y", "z", "w"].iter().map(|n| Var::of(n)).collect();
        let p4 = p("x*y^2*z^2 + 5*x^2*z^3 + 6*x*y*z^2*w + 11*x*z^2*w^2 + z*w^4");
        assert_eq!(
            p4.to_text(&order),
            "z*w^4 + 11*x*z^2*w^2 + 6*x*y*z^2*w + 5*x^2*z^3 + x*y^2*z^2"
        );
        assert_eq!(
            p4.to_string(),
            "w^4*z + 11*w^2*x*z^2 + 6*w*x*y*z^2 + 5*x^2*z^3 + x*y^2*z^2"
        );
        assert_eq!(p("-x + 1/2 - 2/3*y^-1").to_string(), "-x + 1/2 - 2/3*y^-1");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let q = p("x^-1*z^2 - 1/2");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff":"1","exps":{"x":-1,"z":2}},{"coeff":"-1/2","exps":{}}]"#
        );
        let back: LaurentPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }
}
