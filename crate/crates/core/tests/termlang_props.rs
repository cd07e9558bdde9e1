mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relq::precision::{digit_accuracy, ArbReal, BigRational};
use relq::termlang::{
    evaluate, format_closed_form, parse, parse_basis_file, weight, ClosedForm, Func, Sign, TermExpr,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_expressions_parse_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let depth = rng.gen_range(0..=4);
        let e = random_expr(&mut rng, depth);
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn parser_never_panics(src in "[a-z0-9 ()+*/^-]{0,24}") {
        let _ = parse(&src);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn weight_is_additive_and_scales_with_powers(seed in any::<u64>(), k in -3i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, wa) = random_monomial(&mut rng);
        let (b, wb) = random_monomial(&mut rng);
        prop_assert_eq!(weight(&a), Some(wa));
        prop_assert_eq!(weight(&TermExpr::product(vec![a.clone(), b])), Some(wa + wb));
        let exponent = TermExpr::rational(BigRational::from_integer(k.into()));
        prop_assert_eq!(weight(&TermExpr::pow(a, exponent)), Some(k * wa));
    }

    #[test]
    fn evaluation_is_precision_monotone(seed in any::<u64>(), p in 20u32..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (e, _) = random_monomial(&mut rng);
        let low = evaluate(&e, p).unwrap();
        let high = evaluate(&e, 2 * p).unwrap();
        // capped means the P-digit value is the 2P-digit value rounded
        let acc = digit_accuracy(&low, &high).unwrap();
        prop_assert!(acc.is_capped() || acc.value() >= p as i64 - 2, "{} at {}: {}", e, p, acc);
    }
}

fn random_coefficient<R: Rng>(rng: &mut R) -> BigRational {
    let n = rng.gen_range(-500i64..=500);
    let d = rng.gen_range(1i64..=400);
    q(n, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn closed_form_text_evaluates_like_the_form(seed in any::<u64>(), p in 20u32..50) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..=5);
        let terms: Vec<(BigRational, TermExpr)> =
            (0..k).map(|_| (random_coefficient(&mut rng), random_monomial(&mut rng).0)).collect();
        let constant = if rng.gen_bool(0.7) { random_coefficient(&mut rng) } else { q(0, 1) };
        let cf = ClosedForm::new(parse("zeta(3)").unwrap(), constant.clone(), terms.clone());

        let work = p + 20;
        let mut direct = ArbReal::from_rational(&constant, work);
        let mut scale = direct.abs();
        for (c, t) in &terms {
            let v = ArbReal::from_rational(c, work) * evaluate(t, work).unwrap();
            scale = scale + v.abs();
            direct = direct + v;
        }
        let text = format_closed_form(&cf);
        let parsed = evaluate(&parse(&text).unwrap(), p).unwrap();
        // absolute error measured against the sum of magnitudes
        let err = (parsed.with_digits(work) - direct).abs();
        let one = ArbReal::one(work);
        let tol = pow10(2 - p as i32, work) * if scale > one { scale } else { one };
        prop_assert!(err <= tol, "{}: error {}", text, err);
    }
}

#[test]
fn sums_in_calls_and_exponents_survive_printing() {
    let e = TermExpr::call(
        Func::Ln,
        TermExpr::sum(vec![(Sign::Plus, TermExpr::int(1)), (Sign::Plus, TermExpr::call(Func::Sqrt, TermExpr::int(2)))]),
    );
    assert_eq!(e.to_string(), "ln(1 + sqrt(2))");
    let neg = TermExpr::pow(
        TermExpr::constant(relq::termlang::NamedConst::Pi),
        TermExpr::sum(vec![(Sign::Minus, TermExpr::int(2))]),
    );
    assert_eq!(parse(&neg.to_string()).unwrap(), neg);
}

#[test]
fn basis_file_round_trips_printed_terms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let terms: Vec<TermExpr> = (0..12).map(|_| random_expr(&mut rng, 3)).collect();
    let mut text = String::from("# generated\ntarget: zeta(3)\n\n");
    for t in &terms {
        text.push_str(&t.to_string());
        text.push('\n');
    }
    let file = parse_basis_file(&text).unwrap();
    assert_eq!(file.target, Some(parse("zeta(3)").unwrap()));
    assert_eq!(file.terms, terms);
}
