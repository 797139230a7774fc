mod common;

use std::collections::BTreeMap;

use gramcalc::grammar::{builtin_grammar, BuiltinGrammar};
use gramcalc::permstat::EnumOptions;
use gramcalc::verify::{run_suite_with, SuiteConfig, Verifier};
use gramcalc::{grammar_g, Grammar, LaurentPolynomial, Var};

use common::{poly, VARS};

fn golden(text: &str) -> Vec<LaurentPolynomial> {
    text.lines()
        .map(|l| poly(l.split_once(": ").expect("n: poly").1))
        .collect()
}

#[test]
fn andre_and_ramanujan_golden_files() {
    for (which, text) in [
        (BuiltinGrammar::Andre, include_str!("../golden/andre.txt")),
        (
            BuiltinGrammar::Ramanujan,
            include_str!("../golden/ramanujan.txt"),
        ),
    ] {
        let g = builtin_grammar(which);
        let expected = golden(text);
        let got = g.derive_n(&poly("x"), expected.len() - 1).unwrap().items;
        assert_eq!(got, expected, "{which}");
        let rendered: String = got
            .iter()
            .enumerate()
            .map(|(n, p)| format!("{n}: {}\n", g.format(p)))
            .collect();
        assert_eq!(rendered, text, "{which}");
    }
}

#[test]
fn fourth_derivative_of_inverse_xz_uses_even_form() {
    // D^4(1/(xz)) = (1/(xz)) ((w+y)^2 - 2xz) ((w+y)^2 - 4xz): positive sign,
    // no extra factor of (w+y)
    let g = grammar_g();
    let d4 = g.derive_n(&poly("x^-1*z^-1"), 4).unwrap().into_last();
    let even = poly("w^2 + 2*w*y + y^2 - 2*x*z");
    let delta = poly("w^2 + 2*w*y + y^2 - 4*x*z");
    let inv = poly("x^-1*z^-1");
    assert_eq!(d4, &(&inv * &even) * &delta);
    let odd_shape = -(&(&(&inv * &poly("w + y")) * &even) * &delta);
    assert_ne!(d4, odd_shape);
}

fn mutated_grammars() -> Vec<(String, Grammar)> {
    let g = grammar_g();
    let mut out = Vec::new();
    for lhs in VARS {
        let image = g.rule(&Var::of(lhs)).unwrap().clone();
        let (m, _) = image.as_single_term().unwrap();
        let factors: Vec<&Var> = m.vars().collect();
        for (k, _) in factors.iter().enumerate() {
            for replacement in VARS {
                let mut exps: BTreeMap<Var, i64> = BTreeMap::new();
                for (j, v) in factors.iter().enumerate() {
                    let v = if j == k {
                        Var::of(replacement)
                    } else {
                        (*v).clone()
                    };
                    *exps.entry(v).or_insert(0) += m.exponent(factors[j]);
                }
                let mutated = LaurentPolynomial::term(
                    gramcalc::laurent::int(1),
                    gramcalc::Monomial::from_exponents(exps),
                );
                if mutated != image {
                    let label = format!("{lhs} -> {}", mutated);
                    out.push((label, g.with_rule(&Var::of(lhs), mutated).unwrap()));
                }
            }
        }
    }
    out
}

#[test]
fn single_letter_mutations_are_caught() {
    let mutants = mutated_grammars();
    assert_eq!(mutants.len(), 4 * 2 * 3);
    let config = SuiteConfig {
        max_n: 6,
        order: 8,
        series_identity_order: 6,
        ..SuiteConfig::default()
    };
    for (label, g) in mutants {
        let v = Verifier::new(g, EnumOptions::default());
        let reports = run_suite_with(&v, &config, &[]).unwrap();
        assert!(
            reports.iter().any(|r| !r.passed),
            "mutant {label} passed every check"
        );
    }
}

#[test]
fn parallel_and_serial_suites_agree() {
    let serial = SuiteConfig {
        max_n: 7,
        order: 10,
        ..SuiteConfig::default()
    };
    let parallel = SuiteConfig {
        parallel: true,
        enum_opts: EnumOptions {
            jobs: 3,
            ..EnumOptions::default()
        },
        ..serial.clone()
    };
    let a = run_suite_with(&Verifier::default(), &serial, &[]).unwrap();
    let b = run_suite_with(
        &Verifier::new(grammar_g(), parallel.enum_opts),
        &parallel,
        &[],
    )
    .unwrap();
    assert_eq!(a, b);
    assert!(a.iter().all(|r| r.passed));
}
