//! JSON rendering of results.
//!
//! Every document starts with `"schema": "seqcalc/1"` and a `"kind"` tag,
//! followed by kind-specific fields in a fixed order. Rationals are strings
//! (`"3"`, `"-1/2"`) so no value ever passes through a float.

use serde_json::{json, Map, Value};

use crate::analysis::{ConvexityReport, MonotonicityReport};
use crate::lagrange::Polynomial;
use crate::ops::OperatorPoly;
use crate::rational::Rational;
use crate::seq::FiniteSeq;
use crate::verifier::{CheckReport, VerificationReport};

pub const SCHEMA: &str = "seqcalc/1";

pub trait Reportable {
    fn kind(&self) -> &'static str;
    fn fields(&self) -> Map<String, Value>;
}

pub fn render_report(item: &dyn Reportable) -> String {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("kind".into(), json!(item.kind()));
    doc.extend(item.fields());
    Value::Object(doc).to_string()
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn sequence_json(s: &FiniteSeq) -> Value {
    Value::Array(s.iter().map(rational_json).collect())
}

pub fn polynomial_json(p: &Polynomial) -> Value {
    Value::Array(p.coefficients().iter().map(rational_json).collect())
}

fn fields(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl Reportable for FiniteSeq {
    fn kind(&self) -> &'static str {
        "sequence"
    }
    fn fields(&self) -> Map<String, Value> {
        fields(vec![("values", sequence_json(self))])
    }
}

impl Reportable for Rational {
    fn kind(&self) -> &'static str {
        "rational"
    }
    fn fields(&self) -> Map<String, Value> {
        fields(vec![("value", rational_json(self))])
    }
}

impl Reportable for OperatorPoly {
    fn kind(&self) -> &'static str {
        "operator"
    }
    fn fields(&self) -> Map<String, Value> {
        let terms = self
            .terms()
            .map(|(m, c)| json!({"I": m.top, "E": m.bottom, "coeff": rational_json(c)}))
            .collect();
        fields(vec![
            ("text", json!(self.to_string())),
            ("max_degree", json!(self.max_degree().map_or(-1, i64::from))),
            ("homogeneous", json!(self.is_homogeneous())),
            ("terms", Value::Array(terms)),
        ])
    }
}

impl Reportable for Polynomial {
    fn kind(&self) -> &'static str {
        "polynomial"
    }
    fn fields(&self) -> Map<String, Value> {
        fields(vec![
            ("text", json!(self.to_string())),
            ("degree", json!(self.degree().map_or(-1, |d| d as i64))),
            ("coefficients", polynomial_json(self)),
        ])
    }
}

impl Reportable for MonotonicityReport {
    fn kind(&self) -> &'static str {
        "monotonicity"
    }
    fn fields(&self) -> Map<String, Value> {
        fields(vec![
            ("strictly_increasing", json!(self.strictly_increasing)),
            ("strictly_decreasing", json!(self.strictly_decreasing)),
            ("increasing", json!(self.increasing)),
            ("decreasing", json!(self.decreasing)),
            ("constant", json!(self.constant)),
        ])
    }
}

impl Reportable for ConvexityReport {
    fn kind(&self) -> &'static str {
        "convexity"
    }
    fn fields(&self) -> Map<String, Value> {
        fields(vec![
            ("convex", json!(self.convex)),
            ("concave", json!(self.concave)),
            ("strictly_convex", json!(self.strictly_convex)),
            ("strictly_concave", json!(self.strictly_concave)),
            ("continuously_convex", json!(self.continuously_convex)),
            ("continuously_concave", json!(self.continuously_concave)),
            ("second_derivative", sequence_json(&self.second_derivative)),
        ])
    }
}

/// Monotonicity and (for length >= 3) convexity of one sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub monotonicity: MonotonicityReport,
    pub convexity: Option<ConvexityReport>,
}

impl Reportable for Classification {
    fn kind(&self) -> &'static str {
        "classification"
    }
    fn fields(&self) -> Map<String, Value> {
        fields(vec![
            ("monotonicity", Value::Object(self.monotonicity.fields())),
            (
                "convexity",
                self.convexity
                    .as_ref()
                    .map_or(Value::Null, |c| Value::Object(c.fields())),
            ),
        ])
    }
}

impl Reportable for CheckReport {
    fn kind(&self) -> &'static str {
        "check"
    }
    fn fields(&self) -> Map<String, Value> {
        fields(vec![
            ("name", json!(self.name)),
            ("passed", json!(self.passed)),
            ("trials_run", json!(self.trials_run)),
            ("failures", json!(self.failures)),
        ])
    }
}

impl Reportable for VerificationReport {
    fn kind(&self) -> &'static str {
        "verification"
    }
    fn fields(&self) -> Map<String, Value> {
        let checks = self
            .checks
            .iter()
            .map(|c| Value::Object(c.fields()))
            .collect();
        fields(vec![
            ("passed", json!(self.passed())),
            ("checks", Value::Array(checks)),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::classify_convexity;

    #[test]
    fn sequence_document() {
        let s = FiniteSeq::from_integers(&[3, 5, 7]);
        assert_eq!(
            render_report(&s),
            r#"{"schema":"seqcalc/1","kind":"sequence","values":["3","5","7"]}"#
        );
        assert_eq!(
            render_report(&Rational::new(-1, 2)),
            r#"{"schema":"seqcalc/1","kind":"rational","value":"-1/2"}"#
        );
    }

    #[test]
    fn convexity_document() {
        let c = classify_convexity(&FiniteSeq::from_integers(&[1, 4, 9, 16])).unwrap();
        let v: Value = serde_json::from_str(&render_report(&c)).unwrap();
        assert_eq!(v["strictly_convex"], json!(true));
        assert_eq!(v["second_derivative"], json!(["2", "2"]));
        assert_eq!(v["schema"], json!(SCHEMA));
    }

    #[test]
    fn operator_document() {
        let text = render_report(&OperatorPoly::middle());
        assert_eq!(
            text,
            r#"{"schema":"seqcalc/1","kind":"operator","text":"1/2*I + 1/2*E","max_degree":1,"homogeneous":true,"terms":[{"I":1,"E":0,"coeff":"1/2"},{"I":0,"E":1,"coeff":"1/2"}]}"#
        );
    }

    #[test]
    fn check_document() {
        let r = CheckReport {
            name: "ftc".into(),
            trials_run: 3,
            failures: vec![],
            passed: true,
        };
        let v: Value = serde_json::from_str(&render_report(&r)).unwrap();
        assert_eq!(v["passed"], json!(true));
        assert_eq!(v["trials_run"], json!(3));
        assert_eq!(v["failures"], json!([]));
    }
}
