//! JSON serialization of [`FormOperator`]s.
//!
//! Layout: `{"n": 4, "i": 2, "j": 1, "restricted": true, "terms":
//! [{"alpha": [0,0,0,1], "matrix": {"(1)|(1,2)": "<coefficient>"}}]}`,
//! where a matrix key is `(target tuple)|(source tuple)` with 1-based
//! indices and coefficients are polynomials in the target variables.

use serde_json::{json, Map, Value};

use crate::algebra::parse::parse_poly_x;
use crate::algebra::Monomial;
use crate::error::{Result, SboError};
use crate::exterior::basis::{self, parse_index, render_index};

use super::FormOperator;

pub fn op_to_json(op: &FormOperator) -> Value {
    let src = op.src_basis();
    let dst = op.dst_basis();
    let terms: Vec<Value> = op
        .terms()
        .iter()
        .map(|(alpha, mat)| {
            let matrix: Map<String, Value> = mat
                .iter()
                .map(|(&(r, c), v)| {
                    (
                        format!("({})|({})", render_index(&dst[r]), render_index(&src[c])),
                        Value::String(v.to_string()),
                    )
                })
                .collect();
            json!({"alpha": alpha.exponents(op.n()), "matrix": matrix})
        })
        .collect();
    json!({
        "n": op.n(),
        "i": op.src_degree(),
        "j": op.dst_degree(),
        "restricted": op.is_restricted(),
        "terms": terms,
    })
}

fn parse_tuple(s: &str, n: usize) -> Option<Vec<usize>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    parse_index(inner, n)
}

pub fn op_from_json(v: &Value) -> Result<FormOperator> {
    let err = |m: &str| SboError::Parse(m.to_string());
    let uint = |name: &str| {
        v.get(name)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| SboError::Parse(format!("missing integer field {name:?}")))
    };
    let (n, i, j) = (uint("n")?, uint("i")?, uint("j")?);
    let restricted = v
        .get("restricted")
        .and_then(Value::as_bool)
        .ok_or_else(|| err("missing boolean field \"restricted\""))?;
    if n == 0 || n > crate::algebra::MAX_VARS || i > n {
        return Err(err("bad operator shape"));
    }
    let mut op = FormOperator::zero(n, i, j, restricted);
    let dst_vars = op.dst_vars();
    if j > dst_vars {
        return Err(err("target degree exceeds target dimension"));
    }
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| err("missing array field \"terms\""))?;
    for t in terms {
        let alpha: Vec<u32> = t
            .get("alpha")
            .and_then(Value::as_array)
            .ok_or_else(|| err("term without \"alpha\""))?
            .iter()
            .map(|e| e.as_u64().map(|x| x as u32))
            .collect::<Option<_>>()
            .ok_or_else(|| err("non-integer multi-index entry"))?;
        if alpha.len() != n || alpha.iter().any(|&a| a > 200) {
            return Err(err("multi-index has the wrong length"));
        }
        let alpha = Monomial::from_exponents(&alpha);
        let matrix = t
            .get("matrix")
            .and_then(Value::as_object)
            .ok_or_else(|| err("term without \"matrix\""))?;
        for (key, val) in matrix {
            let (r, c) = key
                .split_once('|')
                .ok_or_else(|| SboError::Parse(format!("bad matrix key {key:?}")))?;
            let row = parse_tuple(r, dst_vars).filter(|x| x.len() == j);
            let col = parse_tuple(c, n).filter(|x| x.len() == i);
            let (Some(row), Some(col)) = (row, col) else {
                return Err(SboError::Parse(format!("bad matrix key {key:?}")));
            };
            let s = val
                .as_str()
                .ok_or_else(|| SboError::Parse(format!("entry {key:?} is not a string")))?;
            let coeff = parse_poly_x(s, dst_vars)?;
            op.add_entry(
                alpha,
                basis::rank_of(&row, dst_vars),
                basis::rank_of(&col, n),
                coeff,
            );
        }
    }
    Ok(op)
}
