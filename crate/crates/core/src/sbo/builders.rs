//! Elementary operators: `d`, interior products, the Hodge star, the
//! codifferential and the multiplier representation, all as
//! [`FormOperator`]s.

use crate::algebra::{MPoly, Monomial, ParamScalar, Scalar};
use crate::conformal::ConfField;
use crate::error::{Result, SboError};
use crate::exterior::basis;
use crate::exterior::Metric;

use super::FormOperator;

/// Exterior derivative on `i`-forms in `n` variables.
pub fn ext_d(n: usize, i: usize) -> Result<FormOperator> {
    if i >= n {
        return Err(SboError::DegreeOverflow { degree: i });
    }
    let mut op = FormOperator::zero(n, i, i + 1, false);
    for (col, idx) in basis::combinations(n, i).iter().enumerate() {
        for k in 0..n {
            if let Some((new, sign)) = basis::insert_sign(k, idx) {
                op.add_entry(
                    Monomial::var(k),
                    basis::rank_of(&new, n),
                    col,
                    MPoly::from_int(n, sign),
                );
            }
        }
    }
    Ok(op)
}

/// Interior product with `∂_k` on `i`-forms, `i ≥ 1`.
pub fn interior(n: usize, i: usize, k: usize) -> Result<FormOperator> {
    if i == 0 || i > n || k >= n {
        return Err(SboError::ShapeMismatch(format!(
            "interior product by direction {} on {i}-forms in {n} variables",
            k + 1
        )));
    }
    let mut op = FormOperator::zero(n, i, i - 1, false);
    for (col, idx) in basis::combinations(n, i).iter().enumerate() {
        if let Some((new, sign)) = basis::remove_sign(k, idx) {
            op.add_entry(
                Monomial::one(),
                basis::rank_of(&new, n),
                col,
                MPoly::from_int(n, sign),
            );
        }
    }
    Ok(op)
}

/// Interior product with the normal direction `∂_n`.
pub fn normal_interior(n: usize, i: usize) -> Result<FormOperator> {
    interior(n, i, n - 1)
}

/// Hodge star on `i`-forms.
pub fn star(g: &Metric, i: usize) -> Result<FormOperator> {
    let n = g.n();
    FormOperator::from_basis_action(n, i, n - i, |a| g.star(a))
}

/// Inverse Hodge star on `i`-forms.
pub fn star_inv(g: &Metric, i: usize) -> Result<FormOperator> {
    let n = g.n();
    FormOperator::from_basis_action(n, i, n - i, |a| g.star_inv(a))
}

/// Codifferential `(−1)^i *^{−1} d *` on `i`-forms, `i ≥ 1`.
pub fn codifferential(g: &Metric, i: usize) -> Result<FormOperator> {
    let n = g.n();
    if i == 0 || i > n {
        return Err(SboError::ShapeMismatch(format!(
            "codifferential on {i}-forms in {n} variables"
        )));
    }
    let op = star_inv(g, n - i + 1)?.compose(&ext_d(n, n - i)?.compose(&star(g, i)?)?)?;
    Ok(if i % 2 == 1 { op.neg() } else { op })
}

/// `Π_w(Z) = L_Z + (w/2) ρ(Z)` on `i`-forms.
pub fn multiplier(field: &ConfField, weight: &ParamScalar, i: usize) -> Result<FormOperator> {
    let z = field.field();
    let n = z.nvars();
    let zeroth = FormOperator::from_basis_action(n, i, i, |a| z.lie_derivative(a))?;
    let mut op = zeroth;
    let dim = basis::binomial(n, i);
    for (k, zk) in z.comps().iter().enumerate() {
        for r in 0..dim {
            op.add_entry(Monomial::var(k), r, r, zk.clone());
        }
    }
    let w = field.rho().scale(&weight.scale(&Scalar::frac(1, 2)));
    for r in 0..dim {
        op.add_entry(Monomial::one(), r, r, w.clone());
    }
    Ok(op)
}
