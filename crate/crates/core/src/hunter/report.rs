use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use super::HuntReport;
use crate::precision::{ArbReal, BigRational};
use crate::termlang::{format_closed_form, SimplicityVerdict};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest number of digits printed for reals in reports.
const REPORT_DIGITS: u32 = 50;

#[derive(Serialize)]
struct RationalJson {
    num: String,
    den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(q: &BigRational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

#[derive(Serialize)]
struct TermJson {
    num: String,
    den: String,
    term: String,
}

#[derive(Serialize)]
struct ClosedFormJson {
    constant: RationalJson,
    terms: Vec<TermJson>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    schema_version: u32,
    target: String,
    basis: Vec<String>,
    digits: u32,
    gamma: String,
    eps: String,
    outcome: &'static str,
    relation: Option<Vec<String>>,
    confidence: Option<String>,
    exclusion_bound: String,
    closed_form: Option<ClosedFormJson>,
    digit_accuracy: Option<i64>,
    simplicity: Option<&'a SimplicityVerdict>,
    iterations: u64,
    wall_ms: u64,
}

impl HuntReport {
    fn real(&self, v: &ArbReal) -> String {
        v.to_decimal_string(self.digits.min(REPORT_DIGITS))
    }

    fn json_view(&self) -> ReportJson<'_> {
        let closed_form = self.closed_form.as_ref().map(|cf| ClosedFormJson {
            constant: (&cf.constant_term).into(),
            terms: cf
                .terms
                .iter()
                .map(|(c, t)| TermJson {
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                    term: t.to_string(),
                })
                .collect(),
        });
        ReportJson {
            schema_version: SCHEMA_VERSION,
            target: self.target.to_string(),
            basis: self.basis.iter().map(ToString::to_string).collect(),
            digits: self.digits,
            gamma: self.real(&self.gamma),
            eps: self.real(&self.eps),
            outcome: self.outcome.as_str(),
            relation: self
                .relation
                .as_ref()
                .map(|r| r.coefficients.iter().map(ToString::to_string).collect()),
            confidence: self.confidence.as_ref().map(|c| self.real(c)),
            exclusion_bound: self.real(&self.exclusion_bound),
            closed_form,
            digit_accuracy: self.digit_accuracy.map(|d| d.value()),
            simplicity: self.simplicity.as_ref(),
            iterations: self.iterations,
            wall_ms: self.wall_ms,
        }
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self.json_view()).expect("report serializes")
    }

    /// Pretty-printed JSON with fields in schema order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.json_view()).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let basis: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        writeln!(out, "target:          {}", self.target).unwrap();
        writeln!(out, "basis:           [{}]", basis.join(", ")).unwrap();
        writeln!(out, "digits:          {}", self.digits).unwrap();
        writeln!(out, "outcome:         {}", self.outcome.as_str()).unwrap();
        if let Some(r) = &self.relation {
            let c: Vec<String> = r.coefficients.iter().map(ToString::to_string).collect();
            writeln!(out, "relation:        [{}]", c.join(", ")).unwrap();
        }
        if let Some(cf) = &self.closed_form {
            writeln!(out, "closed form:     {} = {}", cf.target, format_closed_form(cf)).unwrap();
        }
        if let Some(d) = &self.digit_accuracy {
            writeln!(out, "digit accuracy:  {d}").unwrap();
        }
        if let Some(c) = &self.confidence {
            writeln!(out, "confidence:      {}", c.to_decimal_string(6)).unwrap();
        }
        writeln!(out, "exclusion bound: {}", self.exclusion_bound.to_decimal_string(6)).unwrap();
        if let Some(s) = &self.simplicity {
            writeln!(
                out,
                "simplicity:      {} ({} terms, largest integer {})",
                if s.is_simple { "simple" } else { "not simple" },
                s.term_count,
                s.max_abs_integer
            )
            .unwrap();
        }
        writeln!(out, "iterations:      {}", self.iterations).unwrap();
        write!(out, "wall time:       {} ms", self.wall_ms).unwrap();
        out
    }
}

fn expect<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value, String> {
    obj.get(key).ok_or_else(|| format!("missing field {key:?}"))
}

fn is_int_string(v: &Value) -> bool {
    v.as_str().is_some_and(|s| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    })
}

fn check_rational(v: &Value, what: &str) -> Result<(), String> {
    let obj = v.as_object().ok_or_else(|| format!("{what} is not an object"))?;
    for k in ["num", "den"] {
        if !is_int_string(expect(obj, k)?) {
            return Err(format!("{what}.{k} is not an integer string"));
        }
    }
    Ok(())
}

/// Checks a hunt report against the published schema.
pub fn validate_report_json(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    const FIELDS: [&str; 15] = [
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
    ];
    for f in FIELDS {
        expect(obj, f)?;
    }
    if obj.len() != FIELDS.len() {
        return Err(format!("unexpected field count {}", obj.len()));
    }
    if obj["schema_version"].as_u64() != Some(SCHEMA_VERSION as u64) {
        return Err("wrong schema_version".into());
    }
    for f in ["target", "gamma", "eps", "exclusion_bound"] {
        if !obj[f].is_string() {
            return Err(format!("{f} is not a string"));
        }
    }
    let basis = obj["basis"].as_array().ok_or("basis is not an array")?;
    if basis.is_empty() || !basis.iter().all(Value::is_string) {
        return Err("basis must be a nonempty array of strings".into());
    }
    for f in ["digits", "iterations", "wall_ms"] {
        if !obj[f].is_u64() {
            return Err(format!("{f} is not a nonnegative integer"));
        }
    }
    let outcome = obj["outcome"].as_str().ok_or("outcome is not a string")?;
    let known = [
        "relation_found",
        "target_absent",
        "no_relation",
        "precision_exhausted",
        "iteration_limit",
    ];
    if !known.contains(&outcome) {
        return Err(format!("unknown outcome {outcome:?}"));
    }
    let has_relation = !obj["relation"].is_null();
    if has_relation {
        let rel = obj["relation"].as_array().ok_or("relation is not an array")?;
        if rel.len() != basis.len() + 1 || !rel.iter().all(is_int_string) {
            return Err("relation must hold one integer string per vector entry".into());
        }
    }
    if has_relation != matches!(outcome, "relation_found" | "target_absent") {
        return Err("relation present for the wrong outcome".into());
    }
    if has_relation != obj["confidence"].is_string() {
        return Err("confidence must accompany a relation".into());
    }
    let has_cf = !obj["closed_form"].is_null();
    if has_cf != (outcome == "relation_found") {
        return Err("closed_form present for the wrong outcome".into());
    }
    if has_cf != obj["digit_accuracy"].is_i64() {
        return Err("digit_accuracy must be present iff closed_form is".into());
    }
    if has_cf != obj["simplicity"].is_object() {
        return Err("simplicity must be present iff closed_form is".into());
    }
    if has_cf {
        let cf = obj["closed_form"].as_object().ok_or("closed_form is not an object")?;
        check_rational(expect(cf, "constant")?, "closed_form.constant")?;
        let terms = expect(cf, "terms")?.as_array().ok_or("closed_form.terms is not an array")?;
        for t in terms {
            check_rational(t, "closed_form.terms[]")?;
            if !t["term"].is_string() {
                return Err("closed_form.terms[].term is not a string".into());
            }
        }
        let s = obj["simplicity"].as_object().unwrap();
        if !expect(s, "is_simple")?.is_boolean()
            || !expect(s, "term_count")?.is_u64()
            || !is_int_string(expect(s, "max_abs_integer")?)
        {
            return Err("malformed simplicity".into());
        }
    }
    Ok(())
}
