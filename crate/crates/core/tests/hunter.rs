mod common;

use common::pow10;
use relq::hunter::{hunt, validate_report_json, HuntOutcome, HuntSpec};
use relq::precision::{ArbReal, GUARD_DIGITS};
use relq::termlang::{parse, TermExpr};

fn spec(target: &str, basis: &[&str], digits: u32) -> HuntSpec {
    let basis: Vec<TermExpr> = basis.iter().map(|s| parse(s).unwrap()).collect();
    HuntSpec::new(parse(target).unwrap(), basis, digits)
}

/// Hunts with a known answer at their natural precision.
fn known_hunts() -> Vec<HuntSpec> {
    vec![
        spec(
            "zeta(3)",
            &["1", "pi^2*ln(2)", "pi*ln(2)^2", "ln(2)^3", "ln(1+sqrt(2))^3", "pi*catalan"],
            24,
        ),
        spec("li3(1/2)", &["zeta(3)", "pi^2*ln(2)", "ln(2)^3"], 50),
        spec("zeta(2)", &["pi^2"], 30),
        spec("zeta(4)", &["pi^4", "1"], 40),
        spec("ln(6)", &["ln(2)", "ln(3)"], 30),
        spec("sqrt(2)*(1 + sqrt(2))", &["1", "sqrt(2)"], 30),
    ]
}

#[test]
fn closed_forms_reconstruct_their_targets() {
    for s in known_hunts() {
        let report = hunt(&s).unwrap();
        assert_eq!(report.outcome, HuntOutcome::RelationFound, "{}", report.target);
        let n = (s.basis.len() + 1) as i64;
        let limit = ArbReal::from_int(n, s.digits) * &report.eps * pow10(GUARD_DIGITS as i32, s.digits);
        let err = report.reconstruction_error().unwrap();
        assert!(err < limit, "{}: {}", report.target, err);
        assert!(report.confidence.as_ref().unwrap() < &ArbReal::one(s.digits));
        assert!(report.is_simple());
        validate_report_json(&report.to_json_value()).unwrap();
    }
}

#[test]
fn text_report_names_the_closed_form() {
    let report = hunt(&spec("zeta(2)", &["pi^2"], 30)).unwrap();
    let text = report.to_text();
    assert!(text.contains("closed form:     zeta(2) = 1/6*pi^2"), "{text}");
    assert!(text.contains("outcome:         relation_found"));
}

#[test]
fn relation_without_target_is_reported() {
    let report = hunt(&spec("pi", &["ln(2)", "ln(4)"], 30)).unwrap();
    assert_eq!(report.outcome, HuntOutcome::TargetAbsent);
    assert!(report.closed_form.is_none());
    let rel = report.relation.as_ref().unwrap();
    assert_eq!(rel.coefficients[0], 0.into());
    validate_report_json(&report.to_json_value()).unwrap();
}

#[test]
fn json_field_order_is_stable() {
    let report = hunt(&spec("zeta(2)", &["pi^2"], 30)).unwrap();
    let text = report.to_json();
    let keys: Vec<usize> = [
        "schema_version",
        "target",
        "basis",
        "digits",
        "gamma",
        "eps",
        "outcome",
        "relation",
        "confidence",
        "exclusion_bound",
        "closed_form",
        "digit_accuracy",
        "simplicity",
        "iterations",
        "wall_ms",
    ]
    .iter()
    .map(|k| text.find(&format!("\"{k}\"")).unwrap())
    .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}
