//! Built-in regression corpus.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use super::{hunt, HuntOutcome, HuntSpec};
use crate::constants::{series_cho, series_huvent};
use crate::precision::{digit_accuracy, ArbReal, BigInteger, BigRational, DigitAccuracy};
use crate::pslq::{pslq_run, PslqParams};
use crate::termlang::{evaluate, parse, TermExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseKind {
    /// Pass/fail against a fixed expectation.
    Check,
    /// Result recorded, nothing asserted.
    Record,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub name: &'static str,
    pub kind: CaseKind,
    pub digits: u32,
    /// `None` for recorded cases.
    pub passed: Option<bool>,
    pub detail: String,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    pub passed: bool,
    pub cases: Vec<CaseResult>,
}

struct Case {
    name: &'static str,
    kind: CaseKind,
    digits: u32,
    run: fn(u32) -> (Option<bool>, String),
}

const WEIGHT3_BASIS: [&str; 6] = [
    "1",
    "pi^2*ln(2)",
    "pi*ln(2)^2",
    "ln(2)^3",
    "ln(1+sqrt(2))^3",
    "pi*catalan",
];
const WEIGHT3_RELATION: [i64; 7] = [394, 10, -11, 283, -472, -209, -186];
const WEIGHT3_COEFFICIENTS: [(i64, i64); 6] = [(-5, 197), (11, 394), (-283, 394), (236, 197), (209, 394), (93, 197)];

pub const GAMMA_PI_APPROX: &str = "gamma^(-1/3) + pi^(-4)*(1 + 2*gamma - 2*(130 + pi^2)^(-1))^(-3)";
pub const GAMMA_ROOT_APPROX: &str = "(gamma + 71/47)^(1/4)";
pub const RADICAL_APPROX: &str = "525587^(1/5123)^(1/2)";
pub const PI3_MULTIPLE: &str = "97525/2515594*pi^3";

fn cases() -> Vec<Case> {
    use CaseKind::{Check, Record};
    vec![
        Case { name: "zeta3_weight3_relation", kind: Check, digits: 24, run: zeta3_weight3_relation },
        Case { name: "li3_half_identity", kind: Check, digits: 50, run: li3_identity },
        Case { name: "huvent_series_identity", kind: Check, digits: 50, run: huvent_identity },
        Case { name: "cho_series_identity", kind: Check, digits: 50, run: cho_identity },
        Case { name: "gamma_pi_approx_accuracy", kind: Check, digits: 40, run: |p| accuracy_case(GAMMA_PI_APPROX, 4, p) },
        Case { name: "gamma_root_approx_accuracy", kind: Check, digits: 40, run: |p| accuracy_case(GAMMA_ROOT_APPROX, 7, p) },
        Case { name: "radical_power_approx_accuracy", kind: Check, digits: 40, run: |p| accuracy_case(RADICAL_APPROX, 12, p) },
        Case { name: "zeta3_weight3_rejected_at_40", kind: Check, digits: 40, run: weight3_spurious },
        Case { name: "zeta3_pi3_no_relation", kind: Check, digits: 60, run: pi3_negative_control },
        Case { name: "zeta3_pi3_low_precision", kind: Record, digits: 16, run: pi3_low_precision },
        Case { name: "pi3_multiple_accuracy", kind: Record, digits: 40, run: pi3_multiple_accuracy },
    ]
}

/// Names of the built-in cases, in report order.
pub const CASE_NAMES: [&str; 11] = [
    "zeta3_weight3_relation",
    "li3_half_identity",
    "huvent_series_identity",
    "cho_series_identity",
    "gamma_pi_approx_accuracy",
    "gamma_root_approx_accuracy",
    "radical_power_approx_accuracy",
    "zeta3_weight3_rejected_at_40",
    "zeta3_pi3_no_relation",
    "zeta3_pi3_low_precision",
    "pi3_multiple_accuracy",
];

fn ev(src: &str, p: u32) -> Result<ArbReal, String> {
    let e = parse(src).map_err(|e| e.to_string())?;
    evaluate(&e, p).map_err(|e| e.to_string())
}

fn terms(src: &[&str]) -> Vec<TermExpr> {
    src.iter().map(|s| parse(s).expect("built-in term")).collect()
}

fn ints(v: &[i64]) -> Vec<BigInteger> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn show(v: &[BigInteger]) -> String {
    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", s.join(", "))
}

fn sorted(v: &[BigInteger]) -> Vec<BigInteger> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn weight3_spec(p: u32) -> HuntSpec {
    HuntSpec::new(parse("zeta(3)").expect("built-in"), terms(&WEIGHT3_BASIS), p)
}

fn zeta3_weight3_relation(p: u32) -> (Option<bool>, String) {
    let report = match hunt(&weight3_spec(p)) {
        Ok(r) => r,
        Err(e) => return (Some(false), e.to_string()),
    };
    let Some(rel) = &report.relation else {
        return (Some(false), format!("outcome {}", report.outcome.as_str()));
    };
    let multiset_ok = sorted(&rel.coefficients) == sorted(&ints(&WEIGHT3_RELATION));
    let want: Vec<BigRational> = WEIGHT3_COEFFICIENTS
        .iter()
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect();
    let got: Option<Vec<BigRational>> = report.closed_form.as_ref().map(|cf| {
        std::iter::once(cf.constant_term.clone())
            .chain(cf.terms.iter().map(|(c, _)| c.clone()))
            .collect()
    });
    let cf_ok = got.as_ref() == Some(&want);
    let acc_ok = report.digit_accuracy == Some(DigitAccuracy::Digits(21));
    let detail = format!(
        "relation {} after {} iterations, digit accuracy {}",
        show(&rel.coefficients),
        report.iterations,
        report.digit_accuracy.map_or("none".into(), |d| d.to_string())
    );
    (Some(multiset_ok && cf_ok && acc_ok), detail)
}

fn identity_case(x: Result<Vec<ArbReal>, String>, expected: &[i64], p: u32) -> (Option<bool>, String) {
    let x = match x {
        Ok(x) => x,
        Err(e) => return (Some(false), e),
    };
    let out = match pslq_run(&x, &PslqParams::new(p)) {
        Ok(o) => o,
        Err(e) => return (Some(false), e.to_string()),
    };
    let Some(rel) = out.relation() else {
        return (Some(false), format!("outcome {}", out.kind()));
    };
    let want = ints(expected);
    let negated: Vec<BigInteger> = want.iter().map(|c| -c).collect();
    let vec_ok = rel.coefficients == want || rel.coefficients == negated;
    let threshold = ArbReal::parse_decimal("1e-10", p).expect("literal");
    let conf_ok = rel.confidence <= threshold;
    let detail = format!(
        "relation {}, confidence {}",
        show(&rel.coefficients),
        rel.confidence.to_decimal_string(4)
    );
    (Some(vec_ok && conf_ok), detail)
}

fn eval_all(src: &[&str], p: u32) -> Result<Vec<ArbReal>, String> {
    src.iter().map(|s| ev(s, p)).collect()
}

fn li3_identity(p: u32) -> (Option<bool>, String) {
    let x = eval_all(&["li3(1/2)", "zeta(3)", "pi^2*ln(2)", "ln(2)^3"], p);
    identity_case(x, &[24, -21, 2, -4], p)
}

fn huvent_identity(p: u32) -> (Option<bool>, String) {
    let x = eval_all(&["zeta(3)", "ln(2)^3"], p).map(|rest| {
        std::iter::once(series_huvent(p)).chain(rest).collect()
    });
    identity_case(x, &[12, -3, 2], p)
}

fn cho_identity(p: u32) -> (Option<bool>, String) {
    let x = eval_all(&["pi^2", "pi^2*ln(2)", "zeta(3)", "pi*catalan"], p).map(|rest| {
        std::iter::once(series_cho(p)).chain(rest).collect()
    });
    identity_case(x, &[4, -2, 2, -35, 16], p)
}

fn measure(src: &str, p: u32) -> Result<DigitAccuracy, String> {
    let approx = ev(src, p)?;
    let reference = ev("zeta(3)", (3 * p).div_ceil(2))?;
    digit_accuracy(&approx, &reference).map_err(|e| e.to_string())
}

fn accuracy_case(src: &str, expected: i64, p: u32) -> (Option<bool>, String) {
    match measure(src, p) {
        Ok(d) => (Some(d == DigitAccuracy::Digits(expected)), format!("{src}: {d} digits")),
        Err(e) => (Some(false), e),
    }
}

fn weight3_spurious(p: u32) -> (Option<bool>, String) {
    let mut spec = weight3_spec(p);
    spec.params = spec
        .params
        .with_epsilon(ArbReal::parse_decimal(&format!("1e-{}", p.saturating_sub(6)), p).expect("literal"));
    match hunt(&spec) {
        Ok(r) => {
            let found_weight3 = r
                .relation
                .as_ref()
                .is_some_and(|rel| rel.coefficients == ints(&WEIGHT3_RELATION));
            let detail = match &r.relation {
                Some(rel) => format!("{}: {}", r.outcome.as_str(), show(&rel.coefficients)),
                None => r.outcome.as_str().to_string(),
            };
            (Some(!found_weight3), detail)
        }
        Err(e) => (Some(false), e.to_string()),
    }
}

fn pi3_spec(p: u32) -> HuntSpec {
    HuntSpec::new(parse("zeta(3)").expect("built-in"), terms(&["pi^3"]), p)
}

fn pi3_negative_control(p: u32) -> (Option<bool>, String) {
    let cap = BigInt::from(10_000_000);
    let mut spec = pi3_spec(p);
    spec.params = spec.params.with_max_coeff(cap.clone());
    match hunt(&spec) {
        Ok(r) => {
            let bound_ok = r.exclusion_bound > ArbReal::from_bigint(&cap, p);
            let detail = format!(
                "{}, exclusion bound {}",
                r.outcome.as_str(),
                r.exclusion_bound.to_decimal_string(6)
            );
            (Some(r.outcome == HuntOutcome::NoRelation && bound_ok), detail)
        }
        Err(e) => (Some(false), e.to_string()),
    }
}

fn pi3_low_precision(p: u32) -> (Option<bool>, String) {
    match hunt(&pi3_spec(p)) {
        Ok(r) => {
            let mut detail = r.outcome.as_str().to_string();
            if let Some(rel) = &r.relation {
                write!(detail, ": {}", show(&rel.coefficients)).unwrap();
            }
            if let Some(d) = r.digit_accuracy {
                write!(detail, ", digit accuracy {d}").unwrap();
            }
            (None, detail)
        }
        Err(e) => (None, e.to_string()),
    }
}

fn pi3_multiple_accuracy(p: u32) -> (Option<bool>, String) {
    match measure(PI3_MULTIPLE, p) {
        Ok(d) => (None, format!("{PI3_MULTIPLE}: {d} digits")),
        Err(e) => (None, e),
    }
}

/// Runs every case concurrently. `overrides` maps case names to a
/// replacement precision.
pub fn run_corpus(overrides: &BTreeMap<String, u32>) -> CorpusReport {
    let cases = cases();
    let results: Vec<CaseResult> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|case| {
                let digits = overrides.get(case.name).copied().unwrap_or(case.digits);
                s.spawn(move || {
                    let started = Instant::now();
                    let (passed, detail) = (case.run)(digits);
                    CaseResult {
                        name: case.name,
                        kind: case.kind,
                        digits,
                        passed,
                        detail,
                        wall_ms: started.elapsed().as_millis() as u64,
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("case thread")).collect()
    });
    let passed = results.iter().all(|r| r.passed != Some(false));
    CorpusReport {
        schema_version: super::SCHEMA_VERSION,
        passed,
        cases: results,
    }
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("corpus report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let status = match c.passed {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INFO",
            };
            writeln!(out, "{status} {:<29} P={:<3} {}", c.name, c.digits, c.detail).unwrap();
        }
        write!(out, "corpus: {}", if self.passed { "passed" } else { "FAILED" }).unwrap();
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

/// Checks a corpus report against its schema.
pub fn validate_corpus_json(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("corpus report is not an object")?;
    if obj.len() != 3 || obj.get("schema_version").and_then(Value::as_u64) != Some(super::SCHEMA_VERSION as u64) {
        return Err("bad top level".into());
    }
    if !obj.get("passed").is_some_and(Value::is_boolean) {
        return Err("passed is not a boolean".into());
    }
    let cases = obj.get("cases").and_then(Value::as_array).ok_or("cases is not an array")?;
    for c in cases {
        let c = c.as_object().ok_or("case is not an object")?;
        let kind = c.get("kind").and_then(Value::as_str).ok_or("case kind missing")?;
        let passed = c.get("passed").ok_or("case passed missing")?;
        let ok = c.len() == 6
            && c.get("name").is_some_and(Value::is_string)
            && c.get("digits").is_some_and(Value::is_u64)
            && c.get("detail").is_some_and(Value::is_string)
            && c.get("wall_ms").is_some_and(Value::is_u64)
            && match kind {
                "check" => passed.is_boolean(),
                "record" => passed.is_null(),
                _ => false,
            };
        if !ok {
            return Err(format!("malformed case {c:?}"));
        }
    }
    Ok(())
}
