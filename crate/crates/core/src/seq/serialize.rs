use serde_json::{json, Value};

use super::envelope::BoundTerm;
use super::{Certificate, Seq, SeqError, Verdict};

fn bound_json(t: &BoundTerm) -> Value {
    json!({
        "coef": t.coef.to_string(),
        "degree": t.degree.to_string(),
        "log_exp": t.log_exp,
    })
}

pub fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Periodic(p) => json!({
            "kind": "eventually_periodic",
            "preperiod": p.preperiod(),
            "period": p.period(),
            "anchor": p.anchor().to_string(),
            "differences": p.differences().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        }),
        Certificate::ClosedForm(c) => json!({
            "kind": "closed_form",
            "expr": c.expr.to_string(),
            "valid_from": c.valid_from,
        }),
        Certificate::Envelope(e) => json!({
            "kind": "envelope",
            "lower": e.lower.as_ref().map(bound_json),
            "upper": bound_json(&e.upper),
            "valid_from": e.valid_from,
        }),
    }
}

/// `{"terms": [...], "from": 1, "certificates": [...]}` with decimal strings.
pub fn prefix_json(s: &Seq, terms: u64) -> Result<Value, SeqError> {
    let values = s.prefix(terms)?;
    Ok(json!({
        "label": s.label(),
        "terms": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "from": 1,
        "certificates": s.certificates().list().iter().map(certificate_json).collect::<Vec<_>>(),
    }))
}

/// `n,value` rows under a header, LF-terminated.
pub fn prefix_csv(s: &Seq, terms: u64) -> Result<String, SeqError> {
    let mut out = String::from("n,value\n");
    for (i, v) in s.prefix(terms)?.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, v));
    }
    Ok(out)
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "relation": self.relation.symbol(),
            "outcome": self.outcome.as_str(),
            "witness": self.witness,
            "multipliers": self.multipliers.map(|m| json!({"lhs": m.lhs, "rhs": m.rhs})),
            "method": self.method.map(|m| m.as_str()),
            "certificates": self.certificates.iter().map(|(label, c)| {
                let mut v = certificate_json(c);
                v["subject"] = Value::String(label.clone());
                v
            }).collect::<Vec<_>>(),
            "horizon": self.horizon,
            "scan": {
                "checked": self.scan.checked,
                "holds": self.scan.holds,
                "last_failure": self.scan.last_failure,
            },
            "note": self.note,
        })
    }
}
