//! Permutation statistics by exhaustive enumeration.
//!
//! This module is the brute-force side of every cross-check: it never
//! touches grammars or series. Tables are built by walking `S_n` in
//! lexicographic order, optionally split by first letter across threads.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{int, LaurentPolynomial, Monomial, Rational, Var};

/// Default largest `n` that [`stat_table`] will enumerate.
pub const DEFAULT_ENUM_CAP: usize = 10;

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let i = v as usize;
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `356412` (one digit per letter) or separated values such as
    /// `3 5 10 1 2 4 6 7 8 9` and `3,5,6,4,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(s.to_string());
        let values: Vec<u32> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.values.len() > 9 { " " } else { "" };
        let parts: Vec<String> = self.values.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Every statistic the oracle tracks for a single permutation.
///
/// Exterior peaks and proper double descents look only at the letters
/// themselves. Peaks, valleys, double descents and double rises classify
/// each index `1..=n` after padding with `pi_0 = pi_{n+1} = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct StatProfile {
    pub exterior_peaks: u32,
    pub proper_double_descents: u32,
    pub peaks: u32,
    pub double_descents: u32,
    pub valleys: u32,
    pub double_rises: u32,
}

pub fn stat_profile(p: &Permutation) -> StatProfile {
    profile_of(&p.values)
}

fn profile_of(pi: &[u32]) -> StatProfile {
    let n = pi.len();
    let mut s = StatProfile::default();
    if n >= 2 && pi[0] > pi[1] {
        s.exterior_peaks += 1;
    }
    for i in 1..n.saturating_sub(1) {
        if pi[i - 1] < pi[i] && pi[i] > pi[i + 1] {
            s.exterior_peaks += 1;
        }
    }
    for i in 2..n {
        if pi[i - 2] > pi[i - 1] && pi[i - 1] > pi[i] {
            s.proper_double_descents += 1;
        }
    }
    for i in 0..n {
        let before = if i == 0 { 0 } else { pi[i - 1] };
        let after = if i + 1 == n { 0 } else { pi[i + 1] };
        let here = pi[i];
        match (before < here, here < after) {
            (true, false) => s.peaks += 1,
            (false, false) => s.double_descents += 1,
            (false, true) => s.valleys += 1,
            (true, true) => s.double_rises += 1,
        }
    }
    s
}

/// Steps to the next permutation in lexicographic order. Returns false
/// (leaving the slice sorted ascending) after the last one.
pub fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Calls `f` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[u32])) {
    let mut a: Vec<u32> = (1..=n as u32).collect();
    loop {
        f(&a);
        if !next_permutation(&mut a) {
            break;
        }
    }
}

/// Which joint distribution a [`StatTable`] records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatKind {
    /// Keys `(exterior peaks, proper double descents)`.
    ExteriorPdd,
    /// Keys `(peaks, double descents)`.
    PeakDd,
    /// Keys `(peaks - 1, double descents, valleys, double rises)`.
    CarlitzQuadruple,
}

impl StatKind {
    pub const ALL: [StatKind; 3] = [
        StatKind::ExteriorPdd,
        StatKind::PeakDd,
        StatKind::CarlitzQuadruple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatKind::ExteriorPdd => "exterior_pdd",
            StatKind::PeakDd => "peak_dd",
            StatKind::CarlitzQuadruple => "carlitz_quadruple",
        }
    }

    /// Number of statistics in a key.
    pub fn arity(self) -> usize {
        match self {
            StatKind::ExteriorPdd | StatKind::PeakDd => 2,
            StatKind::CarlitzQuadruple => 4,
        }
    }

    fn key(self, s: &StatProfile) -> [u32; 4] {
        match self {
            StatKind::ExteriorPdd => [s.exterior_peaks, s.proper_double_descents, 0, 0],
            StatKind::PeakDd => [s.peaks, s.double_descents, 0, 0],
            StatKind::CarlitzQuadruple => {
                [s.peaks - 1, s.double_descents, s.valleys, s.double_rises]
            }
        }
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub cap: usize,
    /// Worker threads; 1 enumerates on the calling thread.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            cap: DEFAULT_ENUM_CAP,
            jobs: 1,
        }
    }
}

/// Counts of permutations of `[n]` by a tuple of statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatTable {
    pub n: usize,
    pub kind: StatKind,
    pub counts: BTreeMap<Vec<u32>, u64>,
}

impl StatTable {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, key: &[u32]) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// One CSV row per key: the key components, then the count.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, count) in &self.counts {
            for k in key {
                out.push_str(&format!("{k},"));
            }
            out.push_str(&format!("{count}\n"));
        }
        out
    }
}

fn tuple_key(key: &[u32]) -> String {
    let parts: Vec<String> = key.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

struct Counts<'a>(&'a BTreeMap<Vec<u32>, u64>);

impl Serialize for Counts<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, c) in self.0 {
            map.serialize_entry(&tuple_key(k), c)?;
        }
        map.end()
    }
}

impl Serialize for StatTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StatTable", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("kind", self.kind.name())?;
        st.serialize_field("counts", &Counts(&self.counts))?;
        st.end()
    }
}

pub fn stat_table(n: usize, kind: StatKind) -> Result<StatTable> {
    stat_table_with(n, kind, &EnumOptions::default())
}

pub fn stat_table_with(n: usize, kind: StatKind, opts: &EnumOptions) -> Result<StatTable> {
    if n > opts.cap {
        return Err(Error::EnumerationCap { n, cap: opts.cap });
    }
    if n == 0 {
        if kind != StatKind::ExteriorPdd {
            return Err(Error::UnsupportedSize {
                kind: kind.name(),
                n,
            });
        }
        return Ok(StatTable {
            n,
            kind,
            counts: [(vec![0, 0], 1)].into(),
        });
    }
    let raw = if opts.jobs > 1 && n > 1 {
        count_parallel(n, kind, opts.jobs)
    } else {
        let mut counts = RawCounts::new();
        for_each_permutation(n, |pi| {
            *counts.entry(kind.key(&profile_of(pi))).or_insert(0) += 1;
        });
        counts
    };
    let counts = raw
        .into_iter()
        .map(|(k, c)| (k[..kind.arity()].to_vec(), c))
        .collect();
    Ok(StatTable { n, kind, counts })
}

type RawCounts = HashMap<[u32; 4], u64>;

/// Splits `S_n` by first letter; each worker walks its own block.
fn count_parallel(n: usize, kind: StatKind, jobs: usize) -> RawCounts {
    let work = |first: u32| {
        let mut a: Vec<u32> = std::iter::once(first)
            .chain((1..=n as u32).filter(|&v| v != first))
            .collect();
        let mut counts = RawCounts::new();
        loop {
            *counts.entry(kind.key(&profile_of(&a))).or_insert(0) += 1;
            if !next_permutation(&mut a[1..]) {
                break;
            }
        }
        counts
    };
    let merge = |mut a: RawCounts, b: RawCounts| {
        for (k, c) in b {
            *a.entry(k).or_insert(0) += c;
        }
        a
    };
    let run = || {
        (1..=n as u32)
            .into_par_iter()
            .map(work)
            .reduce(RawCounts::new, merge)
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

fn var(name: &str) -> Var {
    Var::of(name)
}

/// The generating polynomial of a table:
///
/// * `exterior_pdd`: `sum P_n(i,j) x^i y^j z^(i+1) w^(n-2i-j)`
/// * `peak_dd`: `sum Q_n(i,j) x^i y^j z^i w^(n+1-2i-j)`
/// * `carlitz_quadruple`: `sum x^a y^b z^c w^d`
pub fn table_to_poly(t: &StatTable) -> LaurentPolynomial {
    let (x, y, z, w) = (var("x"), var("y"), var("z"), var("w"));
    let n = t.n as i64;
    LaurentPolynomial::from_terms(t.counts.iter().map(|(key, &count)| {
        let k: Vec<i64> = key.iter().map(|&v| v as i64).collect();
        let exps = match t.kind {
            StatKind::ExteriorPdd => [k[0], k[1], k[0] + 1, n - 2 * k[0] - k[1]],
            StatKind::PeakDd => [k[0], k[1], k[0], n + 1 - 2 * k[0] - k[1]],
            StatKind::CarlitzQuadruple => [k[0], k[1], k[2], k[3]],
        };
        let m = Monomial::from_exponents([
            (x.clone(), exps[0]),
            (y.clone(), exps[1]),
            (z.clone(), exps[2]),
            (w.clone(), exps[3]),
        ]);
        (m, int(count as i64))
    }))
}

/// Single-statistic marginals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Triangle {
    /// By exterior peaks.
    T,
    /// By proper double descents.
    U,
    /// By peaks.
    R,
    /// By double descents.
    W,
}

impl Triangle {
    pub fn name(self) -> &'static str {
        match self {
            Triangle::T => "T",
            Triangle::U => "U",
            Triangle::R => "R",
            Triangle::W => "W",
        }
    }

    /// The table kind this triangle is read from.
    pub fn source_kind(self) -> StatKind {
        match self {
            Triangle::T | Triangle::U => StatKind::ExteriorPdd,
            Triangle::R | Triangle::W => StatKind::PeakDd,
        }
    }

    fn component(self) -> usize {
        match self {
            Triangle::T | Triangle::R => 0,
            Triangle::U | Triangle::W => 1,
        }
    }
}

impl FromStr for Triangle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(Triangle::T),
            "U" => Ok(Triangle::U),
            "R" => Ok(Triangle::R),
            "W" => Ok(Triangle::W),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// `(k, count)` for every `k` with a nonzero count, ascending.
pub fn specialize_triangle(t: &StatTable, which: Triangle) -> Result<Vec<(usize, u64)>> {
    if t.kind != which.source_kind() {
        return Err(Error::KindMismatch {
            which: which.name(),
            kind: t.kind.name(),
        });
    }
    let mut row: BTreeMap<usize, u64> = BTreeMap::new();
    for (key, &count) in &t.counts {
        *row.entry(key[which.component()] as usize).or_insert(0) += count;
    }
    Ok(row.into_iter().collect())
}

/// Evaluates `sum count * value^k` for a triangle row.
pub fn eval_row(row: &[(usize, u64)], value: &Rational) -> Rational {
    let mut total = int(0);
    for &(k, count) in row {
        let mut term = int(count as i64);
        for _ in 0..k {
            term *= value;
        }
        total += term;
    }
    total
}

/// A triangle row as a polynomial in one variable.
pub fn row_poly(row: &[(usize, u64)], v: &Var) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(row.iter().map(|&(k, count)| {
        (
            Monomial::from_exponents([(v.clone(), k as i64)]),
            int(count as i64),
        )
    }))
}

/// CSV rows `n,k,count`.
pub fn triangle_csv(n: usize, row: &[(usize, u64)]) -> String {
    row.iter().map(|(k, c)| format!("{n},{k},{c}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(perm("312").values(), &[3, 1, 2]);
        assert_eq!(perm("3, 1, 2"), perm("312"));
        assert_eq!(perm("10 1 2 3 4 5 6 7 8 9").len(), 10);
        assert!("112".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
        assert_eq!(Permutation::identity(3), perm("123"));
    }

    #[test]
    fn labelled_example() {
        let s = stat_profile(&perm("356412"));
        assert_eq!(s.exterior_peaks, 1);
        assert_eq!(s.proper_double_descents, 1);
    }

    #[test]
    fn peaks_and_double_descents() {
        let s = stat_profile(&perm("4356721"));
        assert_eq!(s.peaks, 2);
        assert_eq!(s.double_descents, 2);
        assert_eq!(s.valleys, 1);
        assert_eq!(s.double_rises, 2);
    }

    #[test]
    fn identity_and_singleton() {
        let s = stat_profile(&Permutation::identity(6));
        assert_eq!((s.exterior_peaks, s.proper_double_descents), (0, 0));
        let s = stat_profile(&perm("1"));
        assert_eq!(
            (s.peaks, s.valleys, s.double_descents, s.double_rises),
            (1, 0, 0, 0)
        );
        assert_eq!(
            stat_profile(&Permutation::identity(0)),
            StatProfile::default()
        );
    }

    #[test]
    fn lexicographic_walk() {
        let mut seen = Vec::new();
        for_each_permutation(3, |p| seen.push(p.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        let mut count = 0;
        for_each_permutation(0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn small_tables() {
        let t = stat_table(4, StatKind::ExteriorPdd).unwrap();
        assert_eq!(t.get(&[1, 1]), 6);
        assert_eq!(t.total(), 24);
        let q = stat_table(4, StatKind::PeakDd).unwrap();
        assert_eq!(q.get(&[2, 1]), 8);
        let t3 = stat_table(3, StatKind::ExteriorPdd).unwrap();
        let expected: BTreeMap<Vec<u32>, u64> =
            [(vec![0, 0], 1), (vec![1, 0], 4), (vec![1, 1], 1)].into();
        assert_eq!(t3.counts, expected);
    }

    #[test]
    fn table_polynomials() {
        let p5 = table_to_poly(&stat_table(5, StatKind::ExteriorPdd).unwrap());
        assert_eq!(
            p5,
            poly("z*w^5 + 26*x*z^2*w^3 + 23*x*y*z^2*w^2 + 43*x^2*z^3*w + 8*x*y^2*z^2*w + 18*x^2*y*z^3 + x*y^3*z^2")
        );
        let f4 = table_to_poly(&stat_table(4, StatKind::CarlitzQuadruple).unwrap());
        assert_eq!(
            f4,
            poly("w^3 + 3*y*w^2 + 8*x*z*w + 3*y^2*w + 8*x*y*z + y^3")
        );
        let q1 = table_to_poly(&stat_table(1, StatKind::PeakDd).unwrap());
        assert_eq!(q1, poly("x*z"));
    }

    #[test]
    fn empty_permutation_tables() {
        let t = stat_table(0, StatKind::ExteriorPdd).unwrap();
        assert_eq!(table_to_poly(&t), poly("z"));
        assert!(matches!(
            stat_table(0, StatKind::PeakDd),
            Err(Error::UnsupportedSize { .. })
        ));
        assert!(matches!(
            stat_table(0, StatKind::CarlitzQuadruple),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(
            stat_table(11, StatKind::PeakDd).unwrap_err(),
            Error::EnumerationCap { n: 11, cap: 10 }
        );
        let opts = EnumOptions { cap: 3, jobs: 1 };
        assert!(stat_table_with(4, StatKind::PeakDd, &opts).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let opts = EnumOptions { cap: 10, jobs: 3 };
        for kind in StatKind::ALL {
            for n in 1..=6 {
                assert_eq!(
                    stat_table_with(n, kind, &opts).unwrap(),
                    stat_table(n, kind).unwrap()
                );
            }
        }
    }

    #[test]
    fn triangles() {
        let t3 = stat_table(3, StatKind::ExteriorPdd).unwrap();
        assert_eq!(
            specialize_triangle(&t3, Triangle::T).unwrap(),
            vec![(0, 1), (1, 5)]
        );
        let t4 = stat_table(4, StatKind::ExteriorPdd).unwrap();
        assert_eq!(specialize_triangle(&t4, Triangle::U).unwrap()[0], (0, 17));
        let q5 = stat_table(5, StatKind::PeakDd).unwrap();
        let w = specialize_triangle(&q5, Triangle::W).unwrap();
        assert_eq!(w.iter().map(|(_, c)| c).sum::<u64>(), 120);
        assert_eq!(
            specialize_triangle(&q5, Triangle::T).unwrap_err(),
            Error::KindMismatch {
                which: "T",
                kind: "peak_dd"
            }
        );
        assert_eq!(
            eval_row(&[(0, 1), (1, 5)], &crate::laurent::rat(3, 4)),
            crate::laurent::rat(19, 4)
        );
        assert_eq!(triangle_csv(3, &[(0, 1), (1, 5)]), "3,0,1\n3,1,5\n");
    }

    #[test]
    fn exports() {
        let t = stat_table(1, StatKind::ExteriorPdd).unwrap();
        assert_eq!(t.to_csv(), "0,0,1\n");
        let t = stat_table(3, StatKind::ExteriorPdd).unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"n":3,"kind":"exterior_pdd","counts":{"(0,0)":1,"(1,0)":4,"(1,1)":1}}"#
        );
    }
}
