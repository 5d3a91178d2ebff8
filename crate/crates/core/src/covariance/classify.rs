//! Classification of covariant constant-coefficient operators of bounded
//! order by exact linear algebra.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::linsolve::{Echelon, SparseRow};
use crate::algebra::{MPoly, Monomial, ParamScalar, Scalar};
use crate::conformal::{build_generators, ConfField, GenLabel};
use crate::error::{Result, SboError};
use crate::exterior::basis;
use crate::exterior::{Metric, Variant};
use crate::sbo::builders::multiplier;
use crate::sbo::json::op_to_json;
use crate::sbo::FormOperator;

use super::residual::verify_operator;

/// Default resource guard for the order bound.
pub const DEFAULT_MAX_ORDER: u32 = 6;

/// Parameters of one classification problem.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifySpec {
    pub variant: Variant,
    pub p: usize,
    pub q: usize,
    pub i: usize,
    pub j: usize,
    pub u: Scalar,
    pub v: Scalar,
    /// Order bound `L` of the ansatz.
    pub order_bound: u32,
    /// Largest accepted `order_bound`.
    pub max_order: u32,
}

impl ClassifySpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        variant: Variant,
        p: usize,
        q: usize,
        i: usize,
        j: usize,
        u: Scalar,
        v: Scalar,
        order_bound: u32,
    ) -> Self {
        ClassifySpec {
            variant,
            p,
            q,
            i,
            j,
            u,
            v,
            order_bound,
            max_order: DEFAULT_MAX_ORDER,
        }
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn metric(&self) -> Metric {
        Metric::new(self.p, self.q, self.variant)
    }

    /// `(v + j) − (u + i)`.
    pub fn ell(&self) -> Scalar {
        &(&self.v + &Scalar::from_int(self.j as i64))
            - &(&self.u + &Scalar::from_int(self.i as i64))
    }
}

/// A kernel basis of the covariance system.
#[derive(Clone, Debug)]
pub struct ClassifyResult {
    pub spec: ClassifySpec,
    /// Canonical basis (reduced echelon form in the unknown order).
    pub basis: Vec<FormOperator>,
    /// Rank of each order block `0..=L` of the linear system.
    pub block_ranks: Vec<(u32, usize, usize)>,
}

impl ClassifyResult {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// True if `op` lies in the span of the basis.
    pub fn contains(&self, op: &FormOperator) -> bool {
        in_span(&self.basis, op)
    }

    pub fn to_json(&self) -> Value {
        let s = &self.spec;
        json!({
            "variant": s.variant.as_str(),
            "p": s.p,
            "q": s.q,
            "i": s.i,
            "j": s.j,
            "u": s.u.to_string(),
            "v": s.v.to_string(),
            "ell": s.ell().to_string(),
            "order_bound": s.order_bound,
            "dimension": self.dimension(),
            "blocks": self.block_ranks.iter().map(|(m, unknowns, rank)| json!({
                "order": m, "unknowns": unknowns, "rank": rank,
            })).collect::<Vec<_>>(),
            "basis": self.basis.iter().map(op_to_json).collect::<Vec<_>>(),
        })
    }
}

/// `(v + j) − (u + i) ∈ N` and the degree window
/// `−1 ≤ i − j ≤ 2` or `n − 2 ≤ i + j ≤ n + 1`.
pub fn necessary_condition(i: usize, j: usize, u: &Scalar, v: &Scalar, n: usize) -> bool {
    let ell = &(v + &Scalar::from_int(j as i64)) - &(u + &Scalar::from_int(i as i64));
    let natural = ell.is_integer() && !ell.re().is_negative();
    let (i, j, n) = (i as i64, j as i64, n as i64);
    let window = (-1..=2).contains(&(i - j)) || (n - 2..=n + 1).contains(&(i + j));
    natural && window
}

/// All multi-indices of total degree `m` in `n` variables, in graded-lex
/// order (higher powers of earlier variables first).
pub fn multi_indices(n: usize, m: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k + 1 == n {
            cur.push(left);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, k + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, m, &mut Vec::new(), &mut out);
    out
}

type EqKey = (usize, Monomial, usize, usize, Monomial);

fn unit_operator(
    n: usize,
    i: usize,
    j: usize,
    alpha: Monomial,
    row: usize,
    col: usize,
) -> FormOperator {
    let mut op = FormOperator::zero(n, i, j, true);
    op.add_entry(alpha, row, col, MPoly::one(n - 1));
    op
}

fn to_scalar(p: &ParamScalar) -> Scalar {
    p.as_constant()
        .expect("numeric weights give u-free residuals")
}

/// Solves one homogeneous order block; returns kernel operators.
fn solve_block(
    spec: &ClassifySpec,
    fields: &[(ConfField, ConfField)],
    m: u32,
) -> Result<(Vec<FormOperator>, usize, usize)> {
    let n = spec.n();
    let (i, j) = (spec.i, spec.j);
    let rows = basis::binomial(n - 1, j);
    let cols = basis::binomial(n, i);
    let unknowns: Vec<(Monomial, usize, usize)> = multi_indices(n, m)
        .into_iter()
        .flat_map(|a| (0..rows).flat_map(move |r| (0..cols).map(move |c| (a, r, c))))
        .collect();
    let u = ParamScalar::constant(spec.u.clone());
    let v = ParamScalar::constant(spec.v.clone());
    let mut ech = Echelon::new(unknowns.len());
    for (g, (z, zy)) in fields.iter().enumerate() {
        let pi_x = multiplier(z, &u, i)?;
        let pi_y = multiplier(zy, &v, j)?;
        // residual of each unit operator, then transpose into equations
        let columns: Vec<Vec<(EqKey, Scalar)>> = unknowns
            .par_iter()
            .map(|&(a, r, c)| {
                let unit = unit_operator(n, i, j, a, r, c);
                let res = pi_y.compose(&unit)?.sub(&unit.compose(&pi_x)?)?;
                Ok(res
                    .flat_entries()
                    .map(|((b, rr, cc, mono), val)| ((g, b, rr, cc, mono), to_scalar(val)))
                    .collect())
            })
            .collect::<Result<_>>()?;
        let mut eqs: BTreeMap<EqKey, SparseRow> = BTreeMap::new();
        for (col, entries) in columns.into_iter().enumerate() {
            for (key, val) in entries {
                eqs.entry(key).or_default().push((col, val));
            }
        }
        for row in eqs.into_values() {
            ech.insert(row);
            if ech.is_full_rank() {
                return Ok((Vec::new(), unknowns.len(), ech.rank()));
            }
        }
    }
    let kernel = ech
        .kernel()
        .into_iter()
        .map(|vec| {
            let mut op = FormOperator::zero(n, i, j, true);
            for (k, x) in vec.iter().enumerate() {
                if !x.is_zero() {
                    let (a, r, c) = unknowns[k];
                    op.add_entry(a, r, c, MPoly::from_scalar(n - 1, x.clone()));
                }
            }
            op
        })
        .collect();
    Ok((kernel, unknowns.len(), ech.rank()))
}

/// All operators `Rest ∘ Σ_{|α| ≤ L} A_α ∂^α` with constant matrices
/// `A_α` that are covariant for the tangential generators. Translations
/// are automatic; the dilation, rotations and special conformal fields are
/// imposed block by block in the order `m = |α|`, dilation first, so blocks
/// with `m ≠ (v + j) − (u + i)` exit as soon as they reach full rank.
pub fn classify(spec: &ClassifySpec) -> Result<ClassifyResult> {
    if spec.order_bound > spec.max_order {
        return Err(SboError::OrderBoundTooLarge {
            requested: spec.order_bound as usize,
            max: spec.max_order as usize,
        });
    }
    let n = spec.n();
    if n < 2 || spec.i > n || spec.j >= n {
        return Err(SboError::InadmissibleSpec(format!(
            "classification needs n ≥ 2, i ≤ n, j ≤ n-1 (got n={n}, i={}, j={})",
            spec.i, spec.j
        )));
    }
    let g = spec.metric();
    let h = g.hyperplane();
    let gens = build_generators(&g, true)?;
    let mut fields: Vec<(ConfField, ConfField)> = gens
        .fields()
        .iter()
        .filter(|z| !matches!(z.label(), GenLabel::Translation(_)))
        .map(|z| Ok((z.clone(), z.restrict(&h)?)))
        .collect::<Result<_>>()?;
    fields.sort_by_key(|(z, _)| !matches!(z.label(), GenLabel::Dilation));
    let mut basis_ops = Vec::new();
    let mut block_ranks = Vec::new();
    for m in 0..=spec.order_bound {
        let (kernel, unknowns, rank) = solve_block(spec, &fields, m)?;
        block_ranks.push((m, unknowns, rank));
        basis_ops.extend(kernel);
    }
    Ok(ClassifyResult {
        spec: spec.clone(),
        basis: basis_ops,
        block_ranks,
    })
}

/// Checks every basis element with the covariance verifier.
pub fn verify_basis(result: &ClassifyResult) -> Result<bool> {
    let g = result.spec.metric();
    let u = ParamScalar::constant(result.spec.u.clone());
    let v = ParamScalar::constant(result.spec.v.clone());
    for op in &result.basis {
        if !verify_operator(op, &g, &u, &v)?.pass {
            return Ok(false);
        }
    }
    Ok(true)
}

fn flatten(ops: &[&FormOperator]) -> Vec<Vec<Scalar>> {
    let mut keys: BTreeMap<(Monomial, usize, usize, Monomial), usize> = BTreeMap::new();
    let sparse: Vec<Vec<(usize, Scalar)>> = ops
        .iter()
        .map(|op| {
            op.flat_entries()
                .map(|(k, v)| {
                    let next = keys.len();
                    let idx = *keys.entry(k).or_insert(next);
                    (idx, v.as_constant().expect("numeric operator"))
                })
                .collect()
        })
        .collect();
    sparse
        .into_iter()
        .map(|s| {
            let mut d = vec![Scalar::zero(); keys.len()];
            for (k, x) in s {
                d[k] = x;
            }
            d
        })
        .collect()
}

/// Rank of a list of numeric operators of the same shape.
pub fn operator_rank(ops: &[&FormOperator]) -> usize {
    crate::algebra::linsolve::rank(&flatten(ops))
}

/// True if `op` is a linear combination of `basis`.
pub fn in_span(basis: &[FormOperator], op: &FormOperator) -> bool {
    let mut all: Vec<&FormOperator> = basis.iter().collect();
    let before = operator_rank(&all);
    all.push(op);
    operator_rank(&all) == before
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(4, 2).len(), 10);
        assert_eq!(multi_indices(3, 0), vec![Monomial::one()]);
        let m = multi_indices(3, 1);
        assert_eq!(m[0], Monomial::var(0));
        assert_eq!(m[2], Monomial::var(2));
    }

    #[test]
    fn window_examples() {
        let z = Scalar::from_int(0);
        assert!(necessary_condition(2, 1, &z, &Scalar::from_int(2), 4));
        assert!(!necessary_condition(0, 3, &z, &Scalar::frac(1, 2), 4));
        assert!(!necessary_condition(5, 0, &z, &z, 8));
        assert!(necessary_condition(5, 1, &z, &Scalar::from_int(4), 8));
    }
}
