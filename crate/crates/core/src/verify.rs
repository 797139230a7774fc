//! Named cross-checks between the grammar engine, the enumeration oracle
//! and the series engine.
//!
//! Every check compares two sides computed along disjoint code paths and
//! reports the smallest `n` (or series index) where they disagree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grammar::{builtin_grammar, grammar_g, BuiltinGrammar, Grammar};
use crate::laurent::{int, Assignment, LaurentPolynomial, Rational, Var};
use crate::permstat::{
    eval_row, row_poly, specialize_triangle, stat_table_with, table_to_poly, EnumOptions, StatKind,
    StatTable, Triangle,
};
use crate::series::{
    closed_form, elizalde_noy_point, gen_series, gessel_point, grammar_points, ClosedForm,
    EvalPoint, LabelledPoint, TruncatedSeries,
};

const ANDRE_GOLDEN: &str = include_str!("../golden/andre.txt");
const RAMANUJAN_GOLDEN: &str = include_str!("../golden/ramanujan.txt");

/// The first point where two sides disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: usize,
    pub what: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={}: {}: expected {}, got {}",
            self.n, self.what, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub max_n: usize,
    pub passed: bool,
    pub first_failure: Option<Failure>,
}

impl CheckReport {
    fn new(check: CheckId, max_n: usize, first_failure: Option<Failure>) -> Self {
        CheckReport {
            check: check.name().to_string(),
            max_n,
            passed: first_failure.is_none(),
            first_failure,
        }
    }
}

/// The checks in the default suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    /// `D^n(z)` against the exterior peak / proper double descent table.
    ExteriorPeaks,
    /// `D^n(y)` against the peak / double descent table.
    PeakDoubleDescents,
    /// The convolution recurrence for `D^(n+1)(z)` and its marginals.
    Recurrence,
    /// Exact `D`-invariants and closed forms of Laurent orbits.
    Invariants,
    /// Closed-form generating functions at admissible points.
    ClosedForms,
    /// The classical grammars and the specialisations of the main grammar.
    ClassicalGrammars,
    /// Generating-series identities with polynomial coefficients.
    SeriesIdentities,
}

impl CheckId {
    pub const ALL: [CheckId; 7] = [
        CheckId::ExteriorPeaks,
        CheckId::PeakDoubleDescents,
        CheckId::Recurrence,
        CheckId::Invariants,
        CheckId::ClosedForms,
        CheckId::ClassicalGrammars,
        CheckId::SeriesIdentities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::ExteriorPeaks => "exterior_peaks",
            CheckId::PeakDoubleDescents => "peak_double_descents",
            CheckId::Recurrence => "recurrence",
            CheckId::Invariants => "invariants",
            CheckId::ClosedForms => "closed_forms",
            CheckId::ClassicalGrammars => "classical_grammars",
            CheckId::SeriesIdentities => "series_identities",
        }
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn var(name: &str) -> Var {
    Var::of(name)
}

fn poly(text: &str) -> LaurentPolynomial {
    text.parse().expect("literal polynomial parses")
}

fn binomial(n: usize, k: usize) -> Rational {
    Rational::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(int(1), |acc, k| acc * int(k as i64))
}

fn point_xyzw(x: &Rational, y: &Rational, z: &Rational, w: &Rational) -> Assignment {
    [("x", x), ("y", y), ("z", z), ("w", w)]
        .into_iter()
        .map(|(n, q)| (var(n), q.clone()))
        .collect()
}

/// Runs checks against one grammar, caching oracle tables between checks.
///
/// The default instance uses the peak/descent grammar. Swapping in a
/// different grammar (for example a mutated one) reruns the same
/// comparisons against the unchanged oracle.
pub struct Verifier {
    pub grammar: Grammar,
    pub enum_opts: EnumOptions,
    tables: Mutex<BTreeMap<(usize, &'static str), Arc<StatTable>>>,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier::new(grammar_g(), EnumOptions::default())
    }
}

impl Verifier {
    pub fn new(grammar: Grammar, enum_opts: EnumOptions) -> Self {
        Verifier {
            grammar,
            enum_opts,
            tables: Mutex::new(BTreeMap::new()),
        }
    }

    /// An oracle table, enumerated once per `(n, kind)`.
    pub fn table(&self, n: usize, kind: StatKind) -> Result<Arc<StatTable>> {
        let key = (n, kind.name());
        if let Some(t) = self.tables.lock().expect("table cache").get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(stat_table_with(n, kind, &self.enum_opts)?);
        self.tables
            .lock()
            .expect("table cache")
            .insert(key, t.clone());
        Ok(t)
    }

    fn triangle(&self, n: usize, which: Triangle) -> Result<Vec<(usize, u64)>> {
        specialize_triangle(&*self.table(n, which.source_kind())?, which)
    }

    fn fmt_poly(&self, p: &LaurentPolynomial) -> String {
        self.grammar.format(p)
    }

    fn derivatives(&self, start: &str, n: usize) -> Result<Vec<LaurentPolynomial>> {
        Ok(self.grammar.derive_n(&poly(start), n)?.items)
    }

    /// `D^n(z)` equals the exterior peak / proper double descent polynomial
    /// for `0 <= n <= max_n`.
    pub fn exterior_peaks(&self, max_n: usize) -> Result<CheckReport> {
        let d = self.derivatives("z", max_n)?;
        for (n, dn) in d.iter().enumerate() {
            let oracle = table_to_poly(&*self.table(n, StatKind::ExteriorPdd)?);
            if *dn != oracle {
                return Ok(self.poly_failure(
                    CheckId::ExteriorPeaks,
                    max_n,
                    n,
                    "D^n(z) vs enumeration",
                    &oracle,
                    dn,
                ));
            }
        }
        Ok(CheckReport::new(CheckId::ExteriorPeaks, max_n, None))
    }

    /// `D^n(y)` equals the peak / double descent polynomial for `1 <= n <= max_n`.
    pub fn peak_double_descents(&self, max_n: usize) -> Result<CheckReport> {
        let d = self.derivatives("y", max_n)?;
        for (n, dn) in d.iter().enumerate().skip(1) {
            let oracle = table_to_poly(&*self.table(n, StatKind::PeakDd)?);
            if *dn != oracle {
                return Ok(self.poly_failure(
                    CheckId::PeakDoubleDescents,
                    max_n,
                    n,
                    "D^n(y) vs enumeration",
                    &oracle,
                    dn,
                ));
            }
        }
        Ok(CheckReport::new(CheckId::PeakDoubleDescents, max_n, None))
    }

    fn poly_failure(
        &self,
        check: CheckId,
        max_n: usize,
        n: usize,
        what: &str,
        expected: &LaurentPolynomial,
        actual: &LaurentPolynomial,
    ) -> CheckReport {
        CheckReport::new(
            check,
            max_n,
            Some(Failure {
                n,
                what: what.to_string(),
                expected: self.fmt_poly(expected),
                actual: self.fmt_poly(actual),
            }),
        )
    }

    /// `P_(n+1) = w P_n + sum_(k<n) C(n,k) P_k Q_(n-k)` for `0 <= n <= max_n`:
    /// once with everything from the grammar, once with `Q` from the
    /// oracle, and for the exterior-peak and proper-double-descent marginals
    /// with every polynomial from the oracle.
    pub fn recurrence(&self, max_n: usize) -> Result<CheckReport> {
        let id = CheckId::Recurrence;
        let w = poly("w");
        let p = self.derivatives("z", max_n + 1)?;
        let q_grammar = self.derivatives("y", max_n)?;
        let mut q_oracle = vec![LaurentPolynomial::zero()];
        for m in 1..=max_n {
            q_oracle.push(table_to_poly(&*self.table(m, StatKind::PeakDd)?));
        }

        let rhs = |n: usize,
                   lead: &LaurentPolynomial,
                   ps: &[LaurentPolynomial],
                   qs: &[LaurentPolynomial]| {
            let mut total = lead * &ps[n];
            for k in 0..n {
                total += &(&ps[k] * &qs[n - k]).scale(&binomial(n, k));
            }
            total
        };

        let x = var("x");
        let y = var("y");
        let mut marg_t = Vec::new();
        let mut marg_u = Vec::new();
        let mut marg_r = vec![LaurentPolynomial::zero()];
        let mut marg_w = vec![LaurentPolynomial::zero()];
        for m in 0..=max_n + 1 {
            marg_t.push(row_poly(&self.triangle(m, Triangle::T)?, &x));
            marg_u.push(row_poly(&self.triangle(m, Triangle::U)?, &y));
            if m >= 1 && m <= max_n {
                marg_r.push(row_poly(&self.triangle(m, Triangle::R)?, &x));
                marg_w.push(row_poly(&self.triangle(m, Triangle::W)?, &y));
            }
        }
        let one = LaurentPolynomial::one();

        for n in 0..=max_n {
            let cases = [
                ("grammar P and Q", &p[n + 1], rhs(n, &w, &p, &q_grammar)),
                (
                    "grammar P, enumerated Q",
                    &p[n + 1],
                    rhs(n, &w, &p, &q_oracle),
                ),
                (
                    "exterior peak marginal",
                    &marg_t[n + 1],
                    rhs(n, &one, &marg_t, &marg_r),
                ),
                (
                    "proper double descent marginal",
                    &marg_u[n + 1],
                    rhs(n, &one, &marg_u, &marg_w),
                ),
            ];
            for (what, lhs, rhs) in cases {
                if *lhs != rhs {
                    return Ok(self.poly_failure(id, max_n, n, what, lhs, &rhs));
                }
            }
        }
        Ok(CheckReport::new(id, max_n, None))
    }

    /// Exact identities of the formal derivative: the two invariants,
    /// `D^n(z/x) = (z/x)(w-y)^n` for `n <= 10`, and the parity formula for
    /// `D^n(1/(xz))` for `n <= 12`.
    pub fn invariants(&self) -> Result<CheckReport> {
        const ORBIT_N: usize = 10;
        const PARITY_N: usize = 12;
        let id = CheckId::Invariants;
        let g = &self.grammar;
        let zero = LaurentPolynomial::zero();
        let singles = [
            ("D(w - y)", poly("w - y"), zero.clone()),
            ("D((w+y)^2 - 4xz)", poly("w^2 + 2*w*y + y^2 - 4*x*z"), zero),
            ("D(z/x)", poly("z*x^-1"), poly("z*x^-1*w - z*x^-1*y")),
        ];
        for (what, arg, expected) in singles {
            let actual = g.derive(&arg)?;
            if actual != expected {
                return Ok(self.poly_failure(id, PARITY_N, 1, what, &expected, &actual));
            }
        }

        let zx = poly("z*x^-1");
        let rate = poly("w - y");
        let orbit = g.derive_n(&zx, ORBIT_N)?.items;
        let inv = poly("x^-1*z^-1");
        let parity = g.derive_n(&inv, PARITY_N)?.items;
        let sum = poly("w + y");
        let delta = poly("w^2 + 2*w*y + y^2 - 4*x*z");
        let even = poly("w^2 + 2*w*y + y^2 - 2*x*z");

        for n in 0..=PARITY_N {
            if n <= ORBIT_N {
                let expected = &zx * &rate.pow(n as i64)?;
                if orbit[n] != expected {
                    return Ok(self.poly_failure(id, PARITY_N, n, "D^n(z/x)", &expected, &orbit[n]));
                }
            }
            let expected = match n {
                0 => inv.clone(),
                n if n % 2 == 1 => -(&(&inv * &sum) * &delta.pow(((n - 1) / 2) as i64)?),
                n => &(&inv * &even) * &delta.pow(((n - 2) / 2) as i64)?,
            };
            if parity[n] != expected {
                return Ok(self.poly_failure(
                    id,
                    PARITY_N,
                    n,
                    "D^n(1/(xz))",
                    &expected,
                    &parity[n],
                ));
            }
        }
        Ok(CheckReport::new(id, PARITY_N, None))
    }

    /// Closed-form series against evaluated derivatives and oracle marginals.
    ///
    /// At each grammar point: `gen_z` against `D^n(z)`, `gen_y` against
    /// `D^n(y)`, `gen_y` against `y + xz * carlitz_F`, and `carlitz_F`
    /// against the enumerated four-statistic table. Then the one-variable
    /// forms against enumerated marginals (up to the enumeration cap) and
    /// against the grammar polynomials specialised to one variable, plus
    /// agreement of each one-variable form with `gen_z` at the same point.
    pub fn closed_forms(
        &self,
        order: usize,
        points: &[LabelledPoint],
        gessel: &EvalPoint,
        elizalde_noy: &EvalPoint,
    ) -> Result<CheckReport> {
        let id = CheckId::ClosedForms;
        let oracle_n = order.min(self.enum_opts.cap);
        let dz = self.derivatives("z", order)?;
        let dy = self.derivatives("y", order)?;
        let one = int(1);

        // (label, series values n! c_n, expected values), compared by n below
        let mut rows: Vec<(String, Vec<Rational>, Vec<Option<Rational>>)> = Vec::new();

        for lp in points {
            let pt = &lp.point;
            let gz = closed_form(ClosedForm::GenZ, pt, order)?.egf_values();
            let gy_series = closed_form(ClosedForm::GenY, pt, order)?;
            let gy = gy_series.egf_values();
            let cf = closed_form(ClosedForm::CarlitzF, pt, order)?;
            let (x, y, z) = (pt.value("x")?, pt.value("y")?, pt.value("z")?);
            let xz = &x * &z;

            let ez = dz
                .iter()
                .map(|d| d.eval(&pt.assignment).map(Some))
                .collect::<Result<_>>()?;
            rows.push((format!("gen_z at {}", lp.label), gz, ez));
            let ey = dy
                .iter()
                .map(|d| d.eval(&pt.assignment).map(Some))
                .collect::<Result<_>>()?;
            rows.push((format!("gen_y at {}", lp.label), gy.clone(), ey));

            let mut via_f: Vec<Option<Rational>> = cf
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| Some(&xz * c * factorial(n)))
                .collect();
            via_f[0] = via_f[0].take().map(|c| c + &y);
            rows.push((
                format!("gen_y vs y + xz*carlitz_F at {}", lp.label),
                gy,
                via_f,
            ));

            let mut ef = vec![Some(int(0))];
            for n in 1..=order {
                ef.push(if n <= oracle_n {
                    Some(
                        table_to_poly(&*self.table(n, StatKind::CarlitzQuadruple)?)
                            .eval(&pt.assignment)?,
                    )
                } else {
                    None
                });
            }
            rows.push((
                format!("carlitz_F at {} vs enumeration", lp.label),
                cf.egf_values(),
                ef,
            ));
        }

        let gessel_x = gessel.value("x")?;
        let gessel_series = closed_form(ClosedForm::GesselT, gessel, order)?.egf_values();
        let en_y = elizalde_noy.value("y")?;
        let en_series = closed_form(ClosedForm::ElizaldeNoyU, elizalde_noy, order)?.egf_values();
        let u0_series = closed_form(
            ClosedForm::NoPddU0,
            &EvalPoint::new(BTreeMap::new(), None),
            order,
        )?
        .egf_values();

        let mut t_oracle = Vec::new();
        let mut u_oracle = Vec::new();
        let mut u0_oracle = Vec::new();
        for n in 0..=order {
            if n <= oracle_n {
                t_oracle.push(Some(eval_row(&self.triangle(n, Triangle::T)?, &gessel_x)));
                let u_row = self.triangle(n, Triangle::U)?;
                u_oracle.push(Some(eval_row(&u_row, &en_y)));
                let none = u_row.iter().find(|(k, _)| *k == 0).map_or(0, |(_, c)| *c);
                u0_oracle.push(Some(int(none as i64)));
            } else {
                t_oracle.push(None);
                u_oracle.push(None);
                u0_oracle.push(None);
            }
        }
        let at = |a: Assignment| -> Result<Vec<Option<Rational>>> {
            dz.iter().map(|d| d.eval(&a).map(Some)).collect()
        };
        let t_grammar = at(point_xyzw(&gessel_x, &one, &one, &one))?;
        let u_grammar = at(point_xyzw(&one, &en_y, &one, &one))?;
        let u0_grammar = at(point_xyzw(&one, &int(0), &one, &one))?;

        rows.push((
            "gessel_T vs enumeration".into(),
            gessel_series.clone(),
            t_oracle,
        ));
        rows.push((
            "gessel_T vs D^n(z) at (x,1,1,1)".into(),
            gessel_series.clone(),
            t_grammar,
        ));
        rows.push((
            "elizalde_noy_U vs enumeration".into(),
            en_series.clone(),
            u_oracle,
        ));
        rows.push((
            "elizalde_noy_U vs D^n(z) at (1,y,1,1)".into(),
            en_series.clone(),
            u_grammar,
        ));
        rows.push((
            "no_pdd_U0 vs enumeration".into(),
            u0_series.clone(),
            u0_oracle,
        ));
        rows.push((
            "no_pdd_U0 vs D^n(z) at (1,0,1,1)".into(),
            u0_series,
            u0_grammar,
        ));

        // gen_z specialised to one variable, with the matching root
        let gessel_root = gessel
            .root
            .clone()
            .ok_or_else(|| Error::InadmissiblePoint("gessel point needs a root".into()))?;
        let gz_x = EvalPoint::new(
            point_xyzw(&gessel_x, &one, &one, &one),
            Some(int(2) * gessel_root),
        );
        let gz_x = closed_form(ClosedForm::GenZ, &gz_x, order)?.egf_values();
        rows.push((
            "gessel_T vs gen_z at (x,1,1,1)".into(),
            gessel_series,
            gz_x.into_iter().map(Some).collect(),
        ));
        let gz_y = EvalPoint::new(
            point_xyzw(&one, &en_y, &one, &one),
            elizalde_noy.root.clone(),
        );
        let gz_y = closed_form(ClosedForm::GenZ, &gz_y, order)?.egf_values();
        rows.push((
            "elizalde_noy_U vs gen_z at (1,y,1,1)".into(),
            en_series,
            gz_y.into_iter().map(Some).collect(),
        ));

        for n in 0..=order {
            for (what, actual, expected) in &rows {
                if let Some(e) = &expected[n] {
                    if &actual[n] != e {
                        return Ok(CheckReport::new(
                            id,
                            order,
                            Some(Failure {
                                n,
                                what: what.clone(),
                                expected: e.to_string(),
                                actual: actual[n].to_string(),
                            }),
                        ));
                    }
                }
            }
        }
        Ok(CheckReport::new(id, order, None))
    }

    /// Classical grammars: Eulerian sums are `n!`, the exterior-peak grammar
    /// reproduces the enumerated exterior-peak triangle, André sums are the
    /// zigzag numbers, Ramanujan sums are `n^n`, the André and Ramanujan
    /// polynomials match their golden files, and the main grammar
    /// specialises to the Eulerian and exterior-peak grammars.
    pub fn classical_grammars(&self, max_n: usize) -> Result<CheckReport> {
        let id = CheckId::ClassicalGrammars;
        let fail = |n: usize, what: &str, expected: String, actual: String| {
            Ok(CheckReport::new(
                id,
                max_n,
                Some(Failure {
                    n,
                    what: what.to_string(),
                    expected,
                    actual,
                }),
            ))
        };

        let sigma = |pairs: &[(&str, &str)]| -> BTreeMap<Var, Var> {
            pairs.iter().map(|(a, b)| (var(a), var(b))).collect()
        };
        let eulerian = builtin_grammar(BuiltinGrammar::Eulerian);
        let exterior = builtin_grammar(BuiltinGrammar::ExteriorPeak);
        let andre = builtin_grammar(BuiltinGrammar::Andre);
        let ramanujan = builtin_grammar(BuiltinGrammar::Ramanujan);
        let to_eulerian = sigma(&[("z", "x"), ("y", "x"), ("x", "y"), ("w", "y")]);
        let to_exterior = sigma(&[("z", "x"), ("x", "x"), ("w", "y"), ("y", "y")]);
        if !self.grammar.specializes_to(&to_eulerian, &eulerian)? {
            return fail(
                0,
                "specialisation to the Eulerian grammar",
                "rules agree".into(),
                "rules differ".into(),
            );
        }
        if !self.grammar.specializes_to(&to_exterior, &exterior)? {
            return fail(
                0,
                "specialisation to the exterior-peak grammar",
                "rules agree".into(),
                "rules differ".into(),
            );
        }

        let ones: Assignment = [(var("x"), int(1)), (var("y"), int(1))].into();
        let x = poly("x");
        let golden_n = 6;
        let golden = |text: &str| -> Vec<LaurentPolynomial> {
            text.lines()
                .filter_map(|l| l.split_once(": "))
                .map(|(_, p)| poly(p))
                .collect()
        };
        let andre_golden = golden(ANDRE_GOLDEN);
        let ramanujan_golden = golden(RAMANUJAN_GOLDEN);
        let zigzag = zigzag_numbers(max_n + 2);

        let e_seq = eulerian.derive_n(&x, max_n)?.items;
        let ext_seq = exterior.derive_n(&x, max_n)?.items;
        let a_seq = andre.derive_n(&x, max_n.max(golden_n))?.items;
        let r_seq = ramanujan.derive_n(&x, max_n.max(golden_n))?.items;
        let g_seq = self.derivatives("z", max_n)?;
        let collapse: BTreeMap<Var, LaurentPolynomial> = to_exterior
            .iter()
            .map(|(a, b)| (a.clone(), LaurentPolynomial::var(b)))
            .collect();

        for n in 0..=max_n.max(golden_n) {
            if n <= max_n {
                let sum = e_seq[n].eval(&ones)?;
                if sum != factorial(n) {
                    return fail(
                        n,
                        "Eulerian D^n(x) at x=y=1",
                        factorial(n).to_string(),
                        sum.to_string(),
                    );
                }

                if n <= self.enum_opts.cap {
                    let row = self.triangle(n, Triangle::T)?;
                    let expected = LaurentPolynomial::from_terms(row.iter().map(|&(k, c)| {
                        let m = crate::laurent::Monomial::from_exponents([
                            (var("x"), 2 * k as i64 + 1),
                            (var("y"), n as i64 - 2 * k as i64),
                        ]);
                        (m, int(c as i64))
                    }));
                    if ext_seq[n] != expected {
                        return fail(
                            n,
                            "exterior-peak grammar D^n(x) vs enumerated triangle",
                            exterior.format(&expected),
                            exterior.format(&ext_seq[n]),
                        );
                    }
                }
                let collapsed = g_seq[n].subst(&collapse)?;
                if ext_seq[n] != collapsed {
                    return fail(
                        n,
                        "exterior-peak grammar vs collapsed D^n(z)",
                        exterior.format(&collapsed),
                        exterior.format(&ext_seq[n]),
                    );
                }

                let a_sum = a_seq[n].eval(&ones)?;
                if a_sum != zigzag[n + 1] {
                    return fail(
                        n,
                        "André D^n(x) at x=y=1",
                        zigzag[n + 1].to_string(),
                        a_sum.to_string(),
                    );
                }
                let r_sum = r_seq[n].eval(&ones)?;
                let n_pow_n = if n == 0 {
                    int(1)
                } else {
                    int((n as i64).pow(n as u32))
                };
                if r_sum != n_pow_n {
                    return fail(
                        n,
                        "Ramanujan D^n(x) at x=y=1",
                        n_pow_n.to_string(),
                        r_sum.to_string(),
                    );
                }
            }
            if n <= golden_n {
                if a_seq[n] != andre_golden[n] {
                    return fail(
                        n,
                        "André golden file",
                        andre.format(&andre_golden[n]),
                        andre.format(&a_seq[n]),
                    );
                }
                if r_seq[n] != ramanujan_golden[n] {
                    return fail(
                        n,
                        "Ramanujan golden file",
                        ramanujan.format(&ramanujan_golden[n]),
                        ramanujan.format(&r_seq[n]),
                    );
                }
            }
        }
        Ok(CheckReport::new(id, max_n, None))
    }

    /// Polynomial-coefficient series identities up to `order`:
    /// additivity and multiplicativity of `Gen`, `Gen(z/x) = (z/x) e^((w-y)t)`,
    /// `Gen(z) = Gen(z/x) Gen(x)`, and
    /// `Gen(y) Gen(z) + (w - y) Gen(z) = Gen'(z)`.
    pub fn series_identities(&self, order: usize) -> Result<CheckReport> {
        let id = CheckId::SeriesIdentities;
        let g = &self.grammar;
        let gen = |p: &LaurentPolynomial| gen_series(p, g, order);
        type PSeries = TruncatedSeries<LaurentPolynomial>;
        let mut cases: Vec<(String, PSeries, PSeries)> = Vec::new();

        let pairs = [
            ("z", "w"),
            ("x*y - 2*z", "w^2 + 1/2*x"),
            ("x^-1*z", "y + w"),
            ("3*x*w - y^2", "z^-1 + x*z"),
        ];
        for (a, b) in pairs {
            let (pa, pb) = (poly(a), poly(b));
            let (ga, gb) = (gen(&pa)?, gen(&pb)?);
            cases.push((format!("Gen(({a})*({b}))"), &ga * &gb, gen(&(&pa * &pb))?));
            cases.push((format!("Gen(({a})+({b}))"), &ga + &gb, gen(&(&pa + &pb))?));
        }

        let zx = poly("z*x^-1");
        let gz = gen(&poly("z"))?;
        let gzx = gen(&zx)?;
        cases.push((
            "Gen(z/x) = (z/x) exp((w-y)t)".into(),
            PSeries::exp_linear(&poly("w - y"), order).scale(&zx),
            gzx.clone(),
        ));
        cases.push((
            "Gen(z) = Gen(z/x) Gen(x)".into(),
            &gzx * &gen(&poly("x"))?,
            gz.clone(),
        ));
        let gy = gen(&poly("y"))?;
        let lhs = &(&gy * &gz) + &gz.scale(&poly("w - y"));
        cases.push((
            "Gen(y)Gen(z) + (w-y)Gen(z) = Gen'(z)".into(),
            gz.derivative(),
            lhs.truncate(order.saturating_sub(1)),
        ));

        for n in 0..=order {
            for (what, expected, actual) in &cases {
                if n <= expected.order().min(actual.order()) && expected.coeff(n) != actual.coeff(n)
                {
                    return Ok(self.poly_failure(
                        id,
                        order,
                        n,
                        what,
                        expected.coeff(n),
                        actual.coeff(n),
                    ));
                }
            }
        }
        Ok(CheckReport::new(id, order, None))
    }

    /// Runs one named check with the suite's parameters.
    pub fn run(&self, check: CheckId, config: &SuiteConfig) -> Result<CheckReport> {
        match check {
            CheckId::ExteriorPeaks => self.exterior_peaks(config.max_n),
            CheckId::PeakDoubleDescents => self.peak_double_descents(config.max_n),
            CheckId::Recurrence => self.recurrence(config.max_n),
            CheckId::Invariants => self.invariants(),
            CheckId::ClosedForms => self.closed_forms(
                config.order,
                &grammar_points()?,
                &gessel_point()?,
                &elizalde_noy_point()?,
            ),
            CheckId::ClassicalGrammars => self.classical_grammars(config.max_n),
            CheckId::SeriesIdentities => self.series_identities(config.series_identity_order),
        }
    }
}

/// Euler zigzag numbers `E_0..=E_n` by the boustrophedon (Seidel) triangle.
fn zigzag_numbers(n: usize) -> Vec<Rational> {
    let mut out = vec![BigInt::from(1)];
    let mut row = vec![BigInt::from(1)];
    for _ in 1..=n {
        let mut next = vec![BigInt::from(0)];
        for v in row.iter().rev() {
            let last = next.last().expect("nonempty").clone();
            next.push(last + v);
        }
        out.push(next.last().expect("nonempty").clone());
        row = next;
    }
    out.into_iter().map(Rational::from_integer).collect()
}

/// Parameters of the default suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest `n` for symbolic and enumeration checks.
    pub max_n: usize,
    /// Series order for the closed forms.
    pub order: usize,
    /// Series order for the polynomial-coefficient identities.
    pub series_identity_order: usize,
    pub enum_opts: EnumOptions,
    /// Run checks on separate threads.
    pub parallel: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 8,
            order: 12,
            series_identity_order: 10,
            enum_opts: EnumOptions::default(),
            parallel: false,
        }
    }
}

/// Runs the given checks (all of them when `only` is empty) against the
/// peak/descent grammar.
pub fn run_suite(config: &SuiteConfig, only: &[CheckId]) -> Result<Vec<CheckReport>> {
    run_suite_with(&Verifier::new(grammar_g(), config.enum_opts), config, only)
}

pub fn run_suite_with(
    verifier: &Verifier,
    config: &SuiteConfig,
    only: &[CheckId],
) -> Result<Vec<CheckReport>> {
    let ids: Vec<CheckId> = if only.is_empty() {
        CheckId::ALL.to_vec()
    } else {
        only.to_vec()
    };
    if config.parallel {
        ids.par_iter().map(|&id| verifier.run(id, config)).collect()
    } else {
        ids.iter().map(|&id| verifier.run(id, config)).collect()
    }
}

pub fn check_exterior_peaks(max_n: usize) -> Result<CheckReport> {
    Verifier::default().exterior_peaks(max_n)
}

pub fn check_peak_double_descents(max_n: usize) -> Result<CheckReport> {
    Verifier::default().peak_double_descents(max_n)
}

pub fn check_recurrence(max_n: usize) -> Result<CheckReport> {
    Verifier::default().recurrence(max_n)
}

pub fn check_invariants() -> Result<CheckReport> {
    Verifier::default().invariants()
}

/// Closed forms at the given grammar points, with the shipped one-variable points.
pub fn check_closed_forms(order: usize, points: &[LabelledPoint]) -> Result<CheckReport> {
    Verifier::default().closed_forms(order, points, &gessel_point()?, &elizalde_noy_point()?)
}

pub fn check_classical_grammars(max_n: usize) -> Result<CheckReport> {
    Verifier::default().classical_grammars(max_n)
}

pub fn check_series_identities(order: usize) -> Result<CheckReport> {
    Verifier::default().series_identities(order)
}

/// A fixed-width table, one line per report.
pub fn format_summary(reports: &[CheckReport]) -> String {
    let mut out = format!("{:<22} {:>6}  {}\n", "check", "n", "result");
    for r in reports {
        let result = match &r.first_failure {
            None => "pass".to_string(),
            Some(f) => format!("FAIL ({f})"),
        };
        out.push_str(&format!("{:<22} {:>6}  {}\n", r.check, r.max_n, result));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zigzag() {
        let z: Vec<String> = zigzag_numbers(8).iter().map(|q| q.to_string()).collect();
        assert_eq!(z, ["1", "1", "1", "2", "5", "16", "61", "272", "1385"]);
    }

    #[test]
    fn small_checks_pass() {
        let v = Verifier::default();
        assert!(v.exterior_peaks(0).unwrap().passed);
        assert!(v.exterior_peaks(4).unwrap().passed);
        assert!(v.peak_double_descents(4).unwrap().passed);
        assert!(v.recurrence(1).unwrap().passed);
        assert!(v.recurrence(4).unwrap().passed);
        assert!(v.invariants().unwrap().passed);
        assert!(v.classical_grammars(5).unwrap().passed);
        assert!(v.series_identities(6).unwrap().passed);
    }

    #[test]
    fn broken_grammar_reports_smallest_n() {
        let g = grammar_g().with_rule(&var("w"), poly("x*w")).unwrap();
        let v = Verifier::new(g, EnumOptions::default());
        let r = v.exterior_peaks(5).unwrap();
        assert!(!r.passed);
        // D^2(z) = zw^2 + z*D(w) is the first place the rule for w matters
        assert_eq!(r.first_failure.unwrap().n, 2);
    }

    #[test]
    fn report_json() {
        let r = CheckReport::new(CheckId::Invariants, 12, None);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"check":"invariants","max_n":12,"passed":true,"first_failure":null}"#
        );
        assert!(format_summary(&[r]).contains("invariants"));
    }

    #[test]
    fn check_names_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!("nope".parse::<CheckId>().is_err());
    }
}
