//! JSON serialization of polynomial forms.
//!
//! Layout: `{"degree": i, "nvars": n, "comps": {"1,3": "<poly>", …}}`
//! with 1-based index tuples and polynomials in `x1, …, xn`.

use serde_json::{json, Map, Value};

use crate::algebra::parse::parse_poly_x;
use crate::error::{Result, SboError};

use super::basis::{parse_index, render_index};
use super::PolyForm;

pub fn form_to_json(alpha: &PolyForm) -> Value {
    let comps: Map<String, Value> = alpha
        .comps()
        .iter()
        .map(|(idx, c)| (render_index(idx), Value::String(c.to_string())))
        .collect();
    json!({
        "degree": alpha.degree(),
        "nvars": alpha.nvars(),
        "comps": comps,
    })
}

pub fn form_from_json(v: &Value) -> Result<PolyForm> {
    let field = |name: &str| {
        v.get(name)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| SboError::Parse(format!("missing integer field {name:?}")))
    };
    let degree = field("degree")?;
    let nvars = field("nvars")?;
    if degree > nvars || nvars > crate::algebra::MAX_VARS {
        return Err(SboError::Parse(format!(
            "bad shape: degree {degree}, nvars {nvars}"
        )));
    }
    let comps = v
        .get("comps")
        .and_then(Value::as_object)
        .ok_or_else(|| SboError::Parse("missing object field \"comps\"".into()))?;
    let mut out = PolyForm::zero(nvars, degree);
    for (key, val) in comps {
        let idx = parse_index(key, nvars)
            .filter(|i| i.len() == degree)
            .ok_or_else(|| SboError::Parse(format!("bad index tuple {key:?}")))?;
        let s = val
            .as_str()
            .ok_or_else(|| SboError::Parse(format!("component {key:?} is not a string")))?;
        out.add_component(idx, parse_poly_x(s, nvars)?);
    }
    Ok(out)
}
