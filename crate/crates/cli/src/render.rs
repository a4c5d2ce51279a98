//! Output documents: a uniform `{schema_version, kind, parameters, payload}`
//! envelope rendered as markdown, JSON, or CSV.
//!
//! Big integers and exact rationals are serialized as decimal strings
//! (never floats); JSON objects are key-sorted, so parsing an emitted
//! document and re-rendering it reproduces the bytes.

use mubound_core::checker::{LedgerReport, Verdict};
use mubound_core::global::AnnotatedRow;
use mubound_core::model::{BoundCertificate, CertValue};
use mubound_core::verify::VerifyReport;
use mubound_core::ExactRational;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Markdown,
    Json,
    Csv,
}

/// A document ready for rendering: envelope fields plus per-format bodies.
pub struct Document {
    pub kind: String,
    pub parameters: Vec<(String, Value)>,
    pub payload: Value,
    pub markdown: String,
    /// CSV rows: header then records.
    pub csv: Vec<Vec<String>>,
}

impl Document {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.markdown.clone(),
            Format::Json => {
                let mut params = Map::new();
                for (k, v) in &self.parameters {
                    params.insert(k.clone(), v.clone());
                }
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "kind": self.kind,
                    "parameters": Value::Object(params),
                    "payload": self.payload,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).expect("csv row serializes");
                }
                String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
            }
        }
    }
}

/// Decimal-string rendering of an exact rational.
pub fn rat_str(q: &ExactRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn cert_value_json(v: &CertValue) -> Value {
    match v {
        CertValue::Int(n) => Value::String(n.to_string()),
        CertValue::Rat(q) => Value::String(rat_str(q)),
        CertValue::Float(x) => float_json(*x),
    }
}

pub fn float_json(x: f64) -> Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None => Value::String(x.to_string()),
    }
}

pub fn cert_json(c: &BoundCertificate) -> Value {
    let mut ctx = Map::new();
    for (k, v) in &c.context {
        ctx.insert(k.clone(), Value::String(v.clone()));
    }
    json!({
        "claim_id": c.claim_id,
        "lhs": cert_value_json(&c.lhs),
        "relation": c.relation.symbol(),
        "rhs": cert_value_json(&c.rhs),
        "holds": c.holds,
        "context": Value::Object(ctx),
    })
}

pub fn cert_csv_header() -> Vec<String> {
    ["claim_id", "lhs", "relation", "rhs", "holds", "context"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

pub fn cert_csv_row(c: &BoundCertificate) -> Vec<String> {
    let ctx = c
        .context
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join("; ");
    vec![
        c.claim_id.clone(),
        c.lhs.to_string(),
        c.relation.symbol().to_string(),
        c.rhs.to_string(),
        c.holds.to_string(),
        ctx,
    ]
}

pub fn cert_markdown_line(c: &BoundCertificate) -> String {
    format!(
        "- `{}`: {} {} {} -> {}",
        c.claim_id,
        c.lhs,
        c.relation.symbol(),
        c.rhs,
        if c.holds { "holds" } else { "FAILS" }
    )
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "family": {
            "k1": v.family.k1(),
            "k2": v.family.k2(),
            "k": v.family.k(),
            "M": v.family.m(),
            "d": v.family.degree().to_string(),
        },
        "status": v.status.as_str(),
        "margin": rat_str(&v.margin),
        "evidence": v.evidence.iter().map(cert_json).collect::<Vec<_>>(),
    })
}

pub fn ledger_json(l: &LedgerReport) -> Value {
    json!({
        "family": { "k1": l.family.k1(), "k2": l.family.k2() },
        "d": l.d.to_string(),
        "hypertangent_multiplier": l.hypertangent_multiplier.to_string(),
        "degree_multiplier": l.degree_multiplier.to_string(),
        "post_hypertangent_ratio": rat_str(&l.post_hypertangent_ratio),
        "line_bound_coefficient": rat_str(&l.line_bound_coefficient),
        "final_coefficient": rat_str(&l.final_coefficient),
        "contradiction": l.contradiction,
        "certificates": l.certificates.iter().map(cert_json).collect::<Vec<_>>(),
        "notes": l.notes.clone(),
    })
}

pub fn global_row_json(r: &AnnotatedRow) -> Value {
    let mut obj = Map::new();
    obj.insert("a".to_string(), json!(r.row.a));
    obj.insert("value".to_string(), Value::String(r.row.value.to_string()));
    obj.insert(
        "maximizers".to_string(),
        json!(r
            .row
            .maximizers
            .iter()
            .map(|m| format!("r={} {}", m.r(), m.compact()))
            .collect::<Vec<_>>()),
    );
    if let Some((value, profile)) = &r.printed {
        obj.insert("tabulated_value".to_string(), Value::String(value.to_string()));
        obj.insert(
            "tabulated_maximizer".to_string(),
            Value::String(format!("r={} {}", profile.r(), profile.compact())),
        );
    }
    if let Some(d) = &r.discrepancy {
        obj.insert("discrepancy".to_string(), Value::String(d.clone()));
    }
    Value::Object(obj)
}

pub fn verify_report_json(r: &VerifyReport) -> Value {
    json!({
        "grid_scale": float_json(r.grid_scale),
        "all_hold": r.all_hold(),
        "total_certificates": r.total_certificates(),
        "criteria": r
            .criteria
            .iter()
            .map(|c| {
                json!({
                    "index": c.index,
                    "name": c.name,
                    "passed": c.passed,
                    "summary": c.summary,
                    "certificates": c.certificates.iter().map(cert_json).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn verify_report_markdown(r: &VerifyReport) -> String {
    let mut out = String::new();
    out.push_str("# verification report\n\n");
    for c in &r.criteria {
        out.push_str(&format!(
            "criterion {}: {} — {}: {}\n",
            c.index,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.summary
        ));
    }
    let failing = r.failing_certificates();
    if !failing.is_empty() {
        out.push_str("\n## failing certificates\n\n");
        for c in failing {
            out.push_str(&cert_markdown_line(c));
            out.push('\n');
            for (k, v) in &c.context {
                out.push_str(&format!("    - {k}: {v}\n"));
            }
        }
    }
    out.push_str(&format!(
        "\n{} certificates checked; overall: {}\n",
        r.total_certificates(),
        if r.all_hold() { "PASS" } else { "FAIL" }
    ));
    out
}
