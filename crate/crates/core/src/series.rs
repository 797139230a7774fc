//! Truncated power series in `t` over an exact coefficient ring, and the
//! closed-form exponential generating functions evaluated at rational points.
//!
//! Coefficients are stored in ordinary normalisation: `coeffs[n]` is the
//! coefficient of `t^n`. For an exponential generating function the counted
//! quantity is `n! * coeffs[n]` (see [`TruncatedSeries::egf_values`]).
//!
//! Closed forms are assembled from `exp(a t)` series, sums, products and
//! reciprocals only. Square roots are never taken: a point must come with
//! an exact rational root of the relevant discriminant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::laurent::{parse_rational, Assignment, LaurentPolynomial, Rational, Var};

/// The operations a series coefficient ring must provide.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// The multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::from_integer(BigInt::from(0))
    }

    fn one() -> Self {
        Rational::from_integer(BigInt::from(1))
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self.clone()))
        }
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Laurent polynomials form a ring whose units are the single terms.
impl Ring for LaurentPolynomial {
    fn zero() -> Self {
        LaurentPolynomial::zero()
    }

    fn one() -> Self {
        LaurentPolynomial::one()
    }

    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn inverse(&self) -> Option<Self> {
        self.as_single_term()?;
        LaurentPolynomial::inverse(self).ok()
    }

    fn from_rational(q: &Rational) -> Self {
        LaurentPolynomial::constant(q.clone())
    }
}

fn factorial(n: usize) -> Rational {
    let mut f = BigInt::from(1);
    for k in 2..=n {
        f *= k;
    }
    Rational::from_integer(f)
}

/// `sum_{n <= order} coeffs[n] t^n`, with everything above `order` unknown.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Pads with zeros or drops terms so there are exactly `order + 1`.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `exp(alpha t) = sum alpha^n t^n / n!`.
    pub fn exp_linear(alpha: &R, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut power = R::one();
        for n in 0..=order {
            coeffs.push(power.times(&R::from_rational(
                &(Rational::from_integer(1.into()) / factorial(n)),
            )));
            power = power.times(alpha);
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.times(c)).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    /// The reciprocal, when the constant term is a unit.
    pub fn inv(&self) -> Result<Self> {
        let head = self.coeffs[0].inverse().ok_or(Error::NonInvertible)?;
        let mut out: Vec<R> = Vec::with_capacity(self.coeffs.len());
        out.push(head.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = R::zero();
            for k in 1..=n {
                acc = acc.plus(&self.coeffs[k].times(&out[n - k]));
            }
            out.push(acc.times(&head).negated());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `d/dt`, which lowers the order by one. An order-0 series has no
    /// known derivative coefficients beyond zero.
    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        let coeffs = (1..self.coeffs.len())
            .map(|n| self.coeffs[n].times(&R::from_rational(&Rational::from_integer(n.into()))))
            .collect();
        Self::new(coeffs, order)
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl FnMut(&R) -> Result<S>) -> Result<TruncatedSeries<S>> {
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

impl TruncatedSeries<Rational> {
    /// `n! * coeffs[n]`: the counted values when this is an EGF.
    pub fn egf_values(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * factorial(n))
            .collect()
    }

    /// Exact fraction strings, raw or in the EGF view.
    pub fn to_strings(&self, egf: bool) -> Vec<String> {
        let values = if egf {
            self.egf_values()
        } else {
            self.coeffs.clone()
        };
        values.iter().map(Rational::to_string).collect()
    }
}

impl TruncatedSeries<LaurentPolynomial> {
    /// Evaluates every coefficient at a point.
    pub fn eval(&self, point: &Assignment) -> Result<TruncatedSeries<Rational>> {
        self.try_map(|p| p.eval(point))
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<R: Ring> Add for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn add(self, rhs: &TruncatedSeries<R>) -> TruncatedSeries<R> {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].plus(&rhs.coeffs[n]))
                .collect(),
        }
    }
}

impl<R: Ring> Sub for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn sub(self, rhs: &TruncatedSeries<R>) -> TruncatedSeries<R> {
        self + &(-rhs)
    }
}

impl<R: Ring> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn neg(self) -> TruncatedSeries<R> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(R::negated).collect(),
        }
    }
}

impl<R: Ring> Mul for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;

    fn mul(self, rhs: &TruncatedSeries<R>) -> TruncatedSeries<R> {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(R::zero(), |acc, k| {
                    acc.plus(&self.coeffs[k].times(&rhs.coeffs[n - k]))
                })
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl<R: Ring> $tr for TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;

            fn $method(self, rhs: TruncatedSeries<R>) -> TruncatedSeries<R> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

/// `exp(alpha t)` with a rational rate.
pub fn series_exp_linear(alpha: &Rational, order: usize) -> TruncatedSeries<Rational> {
    TruncatedSeries::exp_linear(alpha, order)
}

/// `Gen(p, t) = sum D^n(p) t^n / n!` up to `order`.
pub fn gen_series(
    p: &LaurentPolynomial,
    g: &Grammar,
    order: usize,
) -> Result<TruncatedSeries<LaurentPolynomial>> {
    let seq = g.derive_n(p, order)?;
    let coeffs = seq
        .items
        .iter()
        .enumerate()
        .map(|(n, d)| d.scale(&(Rational::from_integer(1.into()) / factorial(n))))
        .collect();
    Ok(TruncatedSeries::new(coeffs, order))
}

/// A rational point together with an exact square root of the
/// discriminant of the formula it will be used with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoint {
    pub assignment: Assignment,
    pub root: Option<Rational>,
}

impl EvalPoint {
    pub fn new(assignment: Assignment, root: Option<Rational>) -> Self {
        EvalPoint { assignment, root }
    }

    /// Builds a point from `(name, value)` pairs.
    pub fn from_pairs(pairs: &[(&str, Rational)], root: Option<Rational>) -> Self {
        let assignment = pairs.iter().map(|(n, q)| (Var::of(n), q.clone())).collect();
        EvalPoint { assignment, root }
    }

    /// Parses `x=4,y=2,z=1,w=3` (values may be fractions such as `5/2`).
    pub fn parse_assignment(text: &str) -> Result<Assignment> {
        let mut out = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part.split_once('=').ok_or_else(|| {
                Error::InadmissiblePoint(format!("expected `var=value`, got `{part}`"))
            })?;
            let v = Var::new(name.trim())?;
            let q = parse_rational(value).ok_or_else(|| {
                Error::InadmissiblePoint(format!("`{}` is not a rational", value.trim()))
            })?;
            out.insert(v, q);
        }
        Ok(out)
    }

    pub fn value(&self, name: &str) -> Result<Rational> {
        let v = Var::of(name);
        self.assignment
            .get(&v)
            .cloned()
            .ok_or(Error::MissingAssignment(v))
    }

    /// The root, after checking that it squares to `discriminant`.
    pub fn checked_root(&self, discriminant: &Rational) -> Result<Rational> {
        let s = self.root.clone().ok_or_else(|| {
            Error::InadmissiblePoint("a square root of the discriminant is required".into())
        })?;
        if &(&s * &s) != discriminant {
            return Err(Error::InadmissiblePoint(format!(
                "root {s} does not square to the discriminant {discriminant}"
            )));
        }
        Ok(s)
    }
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, q)| format!("{v}={q}"))
            .collect();
        write!(f, "{}", parts.join(","))?;
        if let Some(s) = &self.root {
            write!(f, "; root {s}")?;
        }
        Ok(())
    }
}

/// The generating functions that have closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `Gen(z, t)`: exterior peaks and proper double descents, in `x, y, z, w`.
    GenZ,
    /// `Gen(y, t)`: peaks and double descents, in `x, y, z, w`.
    GenY,
    /// Exterior peaks alone, in `x`.
    GesselT,
    /// Proper double descents alone, in `y`.
    ElizaldeNoyU,
    /// Permutations with no proper double descent; takes no point.
    NoPddU0,
    /// Peaks, double descents, valleys and double rises, in `x, y, z, w`.
    CarlitzF,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 6] = [
        ClosedForm::GenZ,
        ClosedForm::GenY,
        ClosedForm::GesselT,
        ClosedForm::ElizaldeNoyU,
        ClosedForm::NoPddU0,
        ClosedForm::CarlitzF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::GenZ => "gen_z",
            ClosedForm::GenY => "gen_y",
            ClosedForm::GesselT => "gessel_T",
            ClosedForm::ElizaldeNoyU => "elizalde_noy_U",
            ClosedForm::NoPddU0 => "no_pdd_U0",
            ClosedForm::CarlitzF => "carlitz_F",
        }
    }

    /// The quantity whose square root the formula needs, at `point`.
    pub fn discriminant(self, point: &EvalPoint) -> Result<Option<Rational>> {
        let q = |name| point.value(name);
        Ok(match self {
            ClosedForm::GenZ | ClosedForm::GenY | ClosedForm::CarlitzF => {
                let sum = q("w")? + q("y")?;
                Some(&sum * &sum - rational(4) * q("x")? * q("z")?)
            }
            ClosedForm::GesselT => Some(rational(1) - q("x")?),
            ClosedForm::ElizaldeNoyU => {
                let y = q("y")?;
                Some((&y - rational(1)) * (&y + rational(3)))
            }
            ClosedForm::NoPddU0 => None,
        })
    }
}

impl FromStr for ClosedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn half(q: &Rational) -> Rational {
    q / rational(2)
}

type Series = TruncatedSeries<Rational>;

fn exp(alpha: &Rational, order: usize) -> Series {
    Series::exp_linear(alpha, order)
}

fn konst(c: Rational, order: usize) -> Series {
    Series::constant(c, order)
}

/// `num / den`, refusing a denominator that vanishes at `t = 0`.
fn divide(num: &Series, den: &Series) -> Result<Series> {
    if Ring::is_zero(den.coeff(0)) {
        return Err(Error::InadmissiblePoint(
            "the denominator vanishes at t = 0".into(),
        ));
    }
    Ok(num * &den.inv()?)
}

/// Evaluates a closed-form generating function as an exact series.
pub fn closed_form(which: ClosedForm, point: &EvalPoint, order: usize) -> Result<Series> {
    let root = match which.discriminant(point)? {
        Some(d) => Some(point.checked_root(&d)?),
        None => None,
    };
    let s = root.unwrap_or_else(|| rational(0));
    match which {
        ClosedForm::GenZ | ClosedForm::GenY => {
            let (x, y, z, w) = (
                point.value("x")?,
                point.value("y")?,
                point.value("z")?,
                point.value("w")?,
            );
            let sum = &w + &y;
            let den = &konst(&sum + &s, order) - &exp(&s, order).scale(&(&sum - &s));
            if which == ClosedForm::GenZ {
                let num = exp(&half(&(&w - &y + &s)), order).scale(&(rational(2) * &z * &s));
                divide(&num, &den)
            } else {
                let xz2 = rational(2) * &x * &z;
                let num = &exp(&s, order).scale(&xz2) - &konst(xz2, order);
                Ok(&konst(y, order) + &divide(&num, &den)?)
            }
        }
        ClosedForm::GesselT => {
            let r = &s;
            let up = exp(r, order);
            let down = exp(&-r, order);
            let cosh = (&up + &down).scale(&half(&rational(1)));
            let sinh = (&up - &down).scale(&half(&rational(1)));
            let den = &cosh.scale(r) - &sinh;
            divide(&konst(r.clone(), order), &den)
        }
        ClosedForm::ElizaldeNoyU => {
            let y = point.value("y")?;
            let r = &s;
            let one_plus_y = rational(1) + &y;
            let num = exp(&half(&(rational(1) - &y + r)), order).scale(&(rational(2) * r));
            let den = &konst(&one_plus_y + r, order) - &exp(r, order).scale(&(&one_plus_y - r));
            divide(&num, &den)
        }
        ClosedForm::NoPddU0 => {
            let base = Series::exp_linear(&rational(1), order);
            let coeffs = base
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| match n % 3 {
                    0 => c.clone(),
                    1 => -c,
                    _ => rational(0),
                })
                .collect();
            Series::new(coeffs, order).inv()
        }
        ClosedForm::CarlitzF => {
            let (y, w) = (point.value("y")?, point.value("w")?);
            let u = half(&(&y + &w + &s));
            let v = half(&(&y + &w - &s));
            let (eu, ev) = (exp(&u, order), exp(&v, order));
            let num = &ev - &eu;
            let den = &eu.scale(&v) - &ev.scale(&u);
            divide(&num, &den)
        }
    }
}

/// A shipped evaluation point with a short label.
#[derive(Debug, Clone)]
pub struct LabelledPoint {
    pub label: &'static str,
    pub point: EvalPoint,
}

fn r(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Points in `x, y, z, w` where `(w+y)^2 - 4xz` is a rational square.
/// Each root is re-checked before the list is returned.
pub fn grammar_points() -> Result<Vec<LabelledPoint>> {
    let raw = [
        ("(4,2,1,3)", [r(4, 1), r(2, 1), r(1, 1), r(3, 1)], r(3, 1)),
        ("(4,1,1,4)", [r(4, 1), r(1, 1), r(1, 1), r(4, 1)], r(3, 1)),
        (
            "(0,5/2,1,1/2)",
            [r(0, 1), r(5, 2), r(1, 1), r(1, 2)],
            r(3, 1),
        ),
    ];
    raw.into_iter()
        .map(|(label, [x, y, z, w], s)| {
            let point = EvalPoint::from_pairs(&[("x", x), ("y", y), ("z", z), ("w", w)], Some(s));
            let d = ClosedForm::GenZ
                .discriminant(&point)?
                .expect("has discriminant");
            point.checked_root(&d)?;
            Ok(LabelledPoint { label, point })
        })
        .collect()
}

/// `x = 3/4` with root `1/2` of `1 - x`.
pub fn gessel_point() -> Result<EvalPoint> {
    let point = EvalPoint::from_pairs(&[("x", r(3, 4))], Some(r(1, 2)));
    let d = ClosedForm::GesselT
        .discriminant(&point)?
        .expect("has discriminant");
    point.checked_root(&d)?;
    Ok(point)
}

/// `y = 13/4` with root `15/4` of `(y-1)(y+3)`.
pub fn elizalde_noy_point() -> Result<EvalPoint> {
    let point = EvalPoint::from_pairs(&[("y", r(13, 4))], Some(r(15, 4)));
    let d = ClosedForm::ElizaldeNoyU
        .discriminant(&point)?
        .expect("has discriminant");
    point.checked_root(&d)?;
    Ok(point)
}
