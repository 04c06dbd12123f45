use serde_json::{json, Value};

use super::QuiverRep;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver_words::Quiver;

fn bad(msg: &str) -> Error {
    Error::Parse(format!("representation JSON: {msg}"))
}

impl<F: Field> QuiverRep<F> {
    /// `{"field", "type", "arrows", "dims", "mats"}`; vertices are 1-based,
    /// matrices row-major, entries integers or `"a/b"` strings.
    pub fn to_json_value(&self) -> Value {
        let entry = |e: &F::Elem| {
            let s = self.field.render(e);
            s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
        };
        let mats: Vec<Value> = self
            .mats
            .iter()
            .map(|m| Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(entry).collect())).collect()))
            .collect();
        json!({
            "field": self.field.spec().to_string(),
            "type": self.quiver.datum().label().to_string(),
            "arrows": self.quiver.arrows().iter().map(|&(s, t)| vec![s + 1, t + 1]).collect::<Vec<_>>(),
            "dims": self.dims,
            "mats": mats,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("representation serializes");
        s.push('\n');
        s
    }

    /// Reads a representation written by [`QuiverRep::to_json`]; the field
    /// tag must name `field`.
    pub fn from_json(field: &F, text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let tag = v["field"].as_str().ok_or_else(|| bad("missing field tag"))?;
        if tag.parse::<crate::field::FieldSpec>()? != field.spec() {
            return Err(bad(&format!("field {tag} does not match {}", field.spec())));
        }
        let mut spec = format!("type {}\n", v["type"].as_str().ok_or_else(|| bad("missing type"))?);
        for a in v["arrows"].as_array().ok_or_else(|| bad("missing arrows"))? {
            match a.as_array().map(|p| p.iter().filter_map(Value::as_u64).collect::<Vec<_>>()) {
                Some(p) if p.len() == 2 => spec.push_str(&format!("{} -> {}\n", p[0], p[1])),
                _ => return Err(bad("arrows must be pairs of vertices")),
            }
        }
        let quiver = Quiver::parse_spec(&spec)?;
        let dims: Vec<usize> = v["dims"]
            .as_array()
            .ok_or_else(|| bad("missing dims"))?
            .iter()
            .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| bad("dims must be naturals")))
            .collect::<Result<_>>()?;
        let raw = v["mats"].as_array().ok_or_else(|| bad("missing mats"))?;
        if dims.len() != quiver.rank() || raw.len() != quiver.arrows().len() {
            return Err(bad("dims or mats do not match the quiver"));
        }
        let mats = raw
            .iter()
            .zip(quiver.arrows())
            .map(|(m, &(s, t))| {
                let rows = m.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
                let mut data = Vec::with_capacity(dims[t] * dims[s]);
                for r in rows {
                    for e in r.as_array().ok_or_else(|| bad("row must be an array"))? {
                        let s = match e {
                            Value::Number(n) => n.to_string(),
                            Value::String(s) => s.clone(),
                            _ => return Err(bad("entries must be numbers or strings")),
                        };
                        data.push(field.parse_elem(&s)?);
                    }
                }
                if rows.len() != dims[t] || data.len() != dims[t] * dims[s] {
                    return Err(bad("matrix shape does not match dims"));
                }
                Ok(Matrix::from_rows(dims[t], dims[s], data))
            })
            .collect::<Result<Vec<_>>>()?;
        QuiverRep::new(quiver, field.clone(), dims, mats)
    }
}

#[cfg(test)]
mod tests {
    use crate::field::{FiniteField, Rationals};
    use crate::quiver_rep::RepCatalog;
    use crate::quiver_rep::QuiverRep;
    use crate::quiver_words::Quiver;
    use std::sync::Arc;

    #[test]
    fn round_trip() {
        let q = Quiver::linear(Arc::new("D4".parse().unwrap()));
        let cat = RepCatalog::new(&q, Rationals).unwrap();
        for m in cat.indecomposables() {
            let text = m.to_json();
            assert_eq!(&QuiverRep::from_json(&Rationals, &text).unwrap(), m);
        }
        let f = FiniteField::new(3, 1).unwrap();
        let m = RepCatalog::new(&q, f.clone()).unwrap().indecomposable(5).clone();
        assert_eq!(QuiverRep::from_json(&f, &m.to_json()).unwrap(), m);
        assert!(QuiverRep::from_json(&Rationals, &m.to_json()).is_err());
    }
}
