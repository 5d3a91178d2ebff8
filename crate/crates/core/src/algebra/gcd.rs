//! Multivariate gcd over the Gaussian rationals by recursive primitive
//! polynomial remainder sequences. Only used for parameter-free
//! polynomials (coefficients constant in `u`).

use super::{MPoly, ParamScalar, Scalar};

fn scalar_coeff(c: &ParamScalar) -> Scalar {
    c.as_constant().expect("parameter-free polynomial")
}

/// Exact division `a / b`; `None` if `b` does not divide `a` or if `b`
/// involves `u`.
pub fn exact_div(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    assert!(!b.is_zero());
    if !b.is_param_free() {
        return None;
    }
    let n = a.nvars();
    let (lm_b, lc_b) = b.leading().map(|(m, c)| (*m, scalar_coeff(c)))?;
    let lc_inv = lc_b.inv().ok()?;
    let mut rem = a.clone();
    let mut quot = MPoly::zero(n);
    while let Some((lm, lc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
        let m = lm.div(&lm_b)?;
        let c = lc.scale(&lc_inv);
        let t = b.mul_monomial(&m).scale(&c);
        quot.add_term(m, c);
        rem = &rem - &t;
    }
    Some(quot)
}

/// Coefficients of `p` viewed as a polynomial in `var` (index = power).
fn coeffs_in(p: &MPoly, var: usize) -> Vec<MPoly> {
    let d = p.degree_in(var) as usize;
    let mut out = vec![MPoly::zero(p.nvars()); d + 1];
    for (m, c) in p.terms() {
        let e = m.exp(var) as usize;
        out[e].add_term(m.with_exp(var, 0), c.clone());
    }
    out
}

fn from_coeffs_in(cs: &[MPoly], var: usize, nvars: usize) -> MPoly {
    let mut out = MPoly::zero(nvars);
    for (e, c) in cs.iter().enumerate() {
        for (m, k) in c.terms() {
            out.add_term(m.with_exp(var, e as u32), k.clone());
        }
    }
    out
}

fn highest_var(p: &MPoly) -> Option<usize> {
    (0..p.nvars()).rev().find(|&k| p.degree_in(k) > 0)
}

/// Normalizes so the leading coefficient is one.
fn monic(p: &MPoly) -> MPoly {
    match p.leading() {
        Some((_, c)) => p.scale_scalar(&scalar_coeff(c).inv().expect("nonzero")),
        None => p.clone(),
    }
}

/// Pseudo-remainder of `a` by `b` in `var`.
fn prem(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let n = a.nvars();
    let mut r = coeffs_in(a, var);
    let bc = coeffs_in(b, var);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    while r.len() > db && !r.iter().all(|c| c.is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (k, c) in bc.iter().enumerate() {
            let t = &lr * c;
            r[shift + k] = &r[shift + k] - &t;
        }
        r.pop();
        while r.len() > 1 && r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    from_coeffs_in(&r, var, n)
}

fn content_in(p: &MPoly, var: usize) -> MPoly {
    let mut g = MPoly::zero(p.nvars());
    for c in coeffs_in(p, var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MPoly::one(p.nvars());
        }
    }
    g
}

/// Monic gcd of two parameter-free polynomials.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars();
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    let va = highest_var(a);
    let vb = highest_var(b);
    let var = va.max(vb).expect("non-constant");
    if a.degree_in(var) == 0 {
        return gcd(a, &content_in(b, var));
    }
    if b.degree_in(var) == 0 {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let cont = gcd(&ca, &cb);
    let mut p = exact_div(a, &ca).expect("content divides");
    let mut q = exact_div(b, &cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.degree_in(var) > 0 {
        let r = prem(&p, &q, var);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, var);
            exact_div(&r, &c).expect("content divides")
        };
    }
    let g = if q.is_zero() {
        p
    } else {
        // constant remainder: coprime in `var`
        MPoly::one(n)
    };
    let g = exact_div(&g, &content_in(&g, var)).expect("content divides");
    monic(&(&cont * &g))
}

/// `lcm`-free helper: true if `p` is a nonzero constant.
pub fn is_unit(p: &MPoly) -> bool {
    !p.is_zero() && p.is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly_x;

    fn p(s: &str, n: usize) -> MPoly {
        parse_poly_x(s, n).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        assert_eq!(gcd(&p("x1^2 - 1", 1), &p("x1 - 1", 1)), p("x1 - 1", 1));
        assert!(is_unit(&gcd(&p("x1^2 + 1", 1), &p("x1 - 1", 1))));
    }

    #[test]
    fn multivariate_gcd() {
        let f = p("x1 + x2*x3 - 2", 3);
        let a = &f * &p("x1 - x3^2", 3);
        let b = &f * &p("x2 + 4*x1*x3 + 1", 3);
        assert_eq!(gcd(&a, &b), monic(&f));
        assert_eq!(exact_div(&a, &f).unwrap(), p("x1 - x3^2", 3));
        assert!(exact_div(&p("x1 + 1", 2), &p("x2", 2)).is_none());
    }

    #[test]
    fn shared_content() {
        let a = p("x2^2*x1 + x2^2", 2);
        let b = p("x2^3", 2);
        assert_eq!(gcd(&a, &b), p("x2^2", 2));
    }
}
