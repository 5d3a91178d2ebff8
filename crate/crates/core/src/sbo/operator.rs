//! Linear differential operators between form bundles, stored in expanded
//! form `Σ_α A_α ∂^α` with matrix-valued polynomial coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{MPoly, Monomial, ParamScalar, Scalar};
use crate::error::{Result, SboError};
use crate::exterior::basis::{self, Index};
use crate::exterior::{PolyForm, RatForm};

/// Sparse matrix from source basis forms (columns) to target basis forms
/// (rows), both numbered by their rank in lexicographic order.
pub type OpMatrix = BTreeMap<(usize, usize), MPoly>;

/// An operator from `i`-forms on `n` variables to `j`-forms, either on the
/// same space or, when `restricted`, on the hyperplane `x_n = 0`.
///
/// It acts as `α ↦ Σ_β A_β · ∂^β α` (followed by restriction of every
/// component when `restricted`); the coefficient polynomials live on the
/// target space, so for restricted operators they are functions of the
/// first `n − 1` variables. No zero entries or empty matrices are stored,
/// so structural equality is operator equality.
#[derive(Clone, Debug, PartialEq)]
pub struct FormOperator {
    n: usize,
    src_degree: usize,
    dst_degree: usize,
    restricted: bool,
    terms: BTreeMap<Monomial, OpMatrix>,
}

fn multi_binomial(alpha: &Monomial, gamma: &Monomial, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    for k in 0..n {
        let (a, g) = (alpha.exp(k) as usize, gamma.exp(k) as usize);
        acc = &acc * &Scalar::from_int(basis::binomial(a, g) as i64);
    }
    acc
}

/// All multi-indices `γ ≤ α` componentwise.
fn sub_indices(alpha: &Monomial, n: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for k in 0..n {
        let a = alpha.exp(k);
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for m in &out {
            for e in 0..=a {
                next.push(m.mul(&Monomial::var(k).pow(e)));
            }
        }
        out = next;
    }
    out
}

impl FormOperator {
    pub fn zero(n: usize, src_degree: usize, dst_degree: usize, restricted: bool) -> Self {
        FormOperator {
            n,
            src_degree,
            dst_degree,
            restricted,
            terms: BTreeMap::new(),
        }
    }

    /// The identity on `i`-forms.
    pub fn identity(n: usize, i: usize) -> Self {
        Self::from_symbol(n, i, &MPoly::one(n))
    }

    /// A scalar constant-coefficient operator acting diagonally on
    /// `i`-forms; the monomial `ξ^α` of `symbol` encodes `∂^α`.
    pub fn from_symbol(n: usize, i: usize, symbol: &MPoly) -> Self {
        let mut op = FormOperator::zero(n, i, i, false);
        let dim = basis::binomial(n, i);
        for (m, c) in symbol.terms() {
            for r in 0..dim {
                op.add_entry(*m, r, r, MPoly::constant(n, c.clone()));
            }
        }
        op
    }

    /// Restriction of `i`-forms to the hyperplane.
    pub fn restriction(n: usize, i: usize) -> Self {
        let mut op = FormOperator::zero(n, i, i, true);
        for (col, idx) in basis::combinations(n, i).iter().enumerate() {
            if idx.contains(&(n - 1)) {
                continue;
            }
            op.add_entry(
                Monomial::one(),
                basis::rank_of(idx, n - 1),
                col,
                MPoly::one(n - 1),
            );
        }
        op
    }

    /// A zeroth-order operator determined by its action on the basis forms
    /// `dx_I` (constant coefficient one).
    pub fn from_basis_action(
        n: usize,
        i: usize,
        j: usize,
        f: impl Fn(&PolyForm) -> Result<PolyForm>,
    ) -> Result<Self> {
        let mut op = FormOperator::zero(n, i, j, false);
        for (col, idx) in basis::combinations(n, i).into_iter().enumerate() {
            let image = f(&PolyForm::basis_form(n, idx))?;
            if image.nvars() != n || image.degree() != j {
                return Err(SboError::ShapeMismatch(format!(
                    "basis action produced a {}-form on {} variables, expected a {j}-form on {n}",
                    image.degree(),
                    image.nvars()
                )));
            }
            for (ridx, c) in image.comps() {
                op.add_entry(Monomial::one(), basis::rank_of(ridx, n), col, c.clone());
            }
        }
        Ok(op)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn src_degree(&self) -> usize {
        self.src_degree
    }

    pub fn dst_degree(&self) -> usize {
        self.dst_degree
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    /// Number of variables of the target space.
    pub fn dst_vars(&self) -> usize {
        if self.restricted {
            self.n - 1
        } else {
            self.n
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, OpMatrix> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order present; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Source basis (columns).
    pub fn src_basis(&self) -> Vec<Index> {
        basis::combinations(self.n, self.src_degree)
    }

    /// Target basis (rows).
    pub fn dst_basis(&self) -> Vec<Index> {
        basis::combinations(self.dst_vars(), self.dst_degree)
    }

    /// Adds `c` to the `(row, col)` entry of the `∂^alpha` matrix.
    pub fn add_entry(&mut self, alpha: Monomial, row: usize, col: usize, c: MPoly) {
        debug_assert_eq!(c.nvars(), self.dst_vars());
        debug_assert!(row < basis::binomial(self.dst_vars(), self.dst_degree));
        debug_assert!(col < basis::binomial(self.n, self.src_degree));
        if c.is_zero() {
            return;
        }
        let mat = self.terms.entry(alpha).or_default();
        match mat.get_mut(&(row, col)) {
            Some(old) => {
                old.add_assign_ref(&c);
                if old.is_zero() {
                    mat.remove(&(row, col));
                }
            }
            None => {
                mat.insert((row, col), c);
            }
        }
        if mat.is_empty() {
            self.terms.remove(&alpha);
        }
    }

    fn same_shape(&self, rhs: &FormOperator) -> Result<()> {
        if (self.n, self.src_degree, self.dst_degree, self.restricted)
            != (rhs.n, rhs.src_degree, rhs.dst_degree, rhs.restricted)
        {
            return Err(SboError::ShapeMismatch(format!(
                "cannot add {} and {}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(())
    }

    /// Human-readable shape, e.g. `2-forms on R^4 -> 1-forms on R^3`.
    pub fn shape(&self) -> String {
        format!(
            "{}-forms on R^{} -> {}-forms on R^{}",
            self.src_degree,
            self.n,
            self.dst_degree,
            self.dst_vars()
        )
    }

    pub fn add(&self, rhs: &FormOperator) -> Result<FormOperator> {
        self.same_shape(rhs)?;
        let mut out = self.clone();
        for (alpha, mat) in &rhs.terms {
            for (&(r, c), v) in mat {
                out.add_entry(*alpha, r, c, v.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &FormOperator) -> Result<FormOperator> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FormOperator {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &ParamScalar) -> FormOperator {
        if s.is_zero() {
            return FormOperator::zero(self.n, self.src_degree, self.dst_degree, self.restricted);
        }
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_scalar(&self, s: &Scalar) -> FormOperator {
        self.scale(&ParamScalar::constant(s.clone()))
    }

    /// Applies `f` to every coefficient polynomial, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&MPoly) -> MPoly) -> FormOperator {
        let mut out = FormOperator::zero(self.n, self.src_degree, self.dst_degree, self.restricted);
        for (alpha, mat) in &self.terms {
            for (&(r, c), v) in mat {
                out.add_entry(*alpha, r, c, f(v));
            }
        }
        out
    }

    /// Substitutes `u = u0` everywhere.
    pub fn specialize(&self, u0: &Scalar) -> FormOperator {
        self.map_coeffs(|c| c.specialize(u0))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FormOperator) -> Result<FormOperator> {
        if self.restricted && inner.restricted {
            return Err(SboError::ShapeMismatch(
                "cannot compose two restricting operators".into(),
            ));
        }
        if self.n != inner.dst_vars() || self.src_degree != inner.dst_degree {
            return Err(SboError::ShapeMismatch(format!(
                "outer operator takes {}-forms on R^{}, inner produces {}",
                self.src_degree,
                self.n,
                inner.shape()
            )));
        }
        let restricted = self.restricted || inner.restricted;
        let mut out = FormOperator::zero(inner.n, inner.src_degree, self.dst_degree, restricted);
        let mid = self.n;
        for (alpha, amat) in &self.terms {
            for gamma in sub_indices(alpha, mid) {
                let rest_alpha = alpha.div(&gamma).expect("gamma divides alpha");
                let binom = multi_binomial(alpha, &gamma, mid);
                let gexp = gamma.exponents(mid);
                for (beta, bmat) in &inner.terms {
                    let new_alpha = rest_alpha.mul(beta);
                    // group inner entries by their row (the middle index)
                    let mut by_mid: BTreeMap<usize, Vec<(usize, MPoly)>> = BTreeMap::new();
                    for (&(k, c), b) in bmat {
                        let mut db = if gamma.degree() == 0 {
                            b.clone()
                        } else {
                            b.diff_multi(&gexp)
                        };
                        if db.is_zero() {
                            continue;
                        }
                        if self.restricted {
                            db = db.restrict_last();
                            if db.is_zero() {
                                continue;
                            }
                        }
                        by_mid.entry(k).or_default().push((c, db));
                    }
                    if by_mid.is_empty() {
                        continue;
                    }
                    for (&(r, k), a) in amat {
                        let Some(row) = by_mid.get(&k) else { continue };
                        let a = a.scale_scalar(&binom);
                        for (c, db) in row {
                            out.add_entry(new_alpha, r, *c, &a * db);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the operator to a form.
    pub fn apply(&self, alpha: &PolyForm) -> Result<PolyForm> {
        if alpha.nvars() != self.n || alpha.degree() != self.src_degree {
            return Err(SboError::ShapeMismatch(format!(
                "operator on {} applied to a {}-form on R^{}",
                self.shape(),
                alpha.degree(),
                alpha.nvars()
            )));
        }
        let src = self.src_basis();
        let dst = self.dst_basis();
        let mut out = PolyForm::zero(self.dst_vars(), self.dst_degree);
        for (beta, mat) in &self.terms {
            let bexp = beta.exponents(self.n);
            for (&(r, c), coef) in mat {
                let Some(f) = alpha.comps().get(&src[c]) else {
                    continue;
                };
                let mut g = f.diff_multi(&bexp);
                if self.restricted {
                    g = g.restrict_last();
                }
                if !g.is_zero() {
                    out.add_component(dst[r].clone(), &g * coef);
                }
            }
        }
        Ok(out)
    }

    /// Applies the operator to a form with rational coefficients; fails if
    /// a denominator vanishes identically on the hyperplane.
    pub fn apply_rat(&self, alpha: &RatForm) -> Result<RatForm> {
        if alpha.nvars() != self.n || alpha.degree() != self.src_degree {
            return Err(SboError::ShapeMismatch(format!(
                "operator on {} applied to a {}-form on R^{}",
                self.shape(),
                alpha.degree(),
                alpha.nvars()
            )));
        }
        let src = self.src_basis();
        let dst = self.dst_basis();
        let mut out = RatForm::zero(self.dst_vars(), self.dst_degree);
        for (beta, mat) in &self.terms {
            let bexp = beta.exponents(self.n);
            for (&(r, c), coef) in mat {
                let Some(f) = alpha.comps().get(&src[c]) else {
                    continue;
                };
                let mut g = f.clone();
                for (k, &e) in bexp.iter().enumerate() {
                    for _ in 0..e {
                        g = g.diff(k)?.reduced();
                    }
                }
                if self.restricted {
                    g = g.restrict_last()?;
                }
                if !g.is_zero() {
                    out.add_component(dst[r].clone(), g.mul_poly(coef));
                }
            }
        }
        Ok(out)
    }

    /// Coefficient data as `((α, row, col, monomial), value)` in canonical
    /// order; used to set up linear systems over operator entries.
    pub fn flat_entries(
        &self,
    ) -> impl Iterator<Item = ((Monomial, usize, usize, Monomial), &ParamScalar)> {
        self.terms.iter().flat_map(|(alpha, mat)| {
            mat.iter().flat_map(move |(&(r, c), poly)| {
                poly.terms().map(move |(m, v)| ((*alpha, r, c, *m), v))
            })
        })
    }
}
