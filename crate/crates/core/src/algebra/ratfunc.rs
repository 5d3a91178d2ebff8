//! Rational functions `num / den` over [`MPoly`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{gcd, MPoly, ParamScalar, Scalar};
use crate::error::{Result, SboError};

/// A quotient of polynomials in the same variables. The denominator is
/// nonzero and, when its leading coefficient is a constant, monic.
/// Equality is decided by cross-multiplication, so it does not depend on
/// how far the representation has been reduced.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(SboError::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "nvars mismatch");
        Ok(RatFunc { num, den }.normalized())
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: MPoly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc::from_poly(MPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc::from_poly(MPoly::one(nvars))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Scalar-content reduction: makes the denominator monic when its
    /// leading coefficient does not involve `u`.
    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = MPoly::one(self.den.nvars());
            return self;
        }
        if let Some(lc) = self.den.leading().and_then(|(_, c)| c.as_constant()) {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.num = self.num.scale_scalar(&inv);
                self.den = self.den.scale_scalar(&inv);
            }
        }
        self
    }

    /// Cancels the full multivariate gcd of numerator and denominator. Only
    /// applies when both are free of `u`; otherwise returns `self` unchanged.
    pub fn reduced(&self) -> RatFunc {
        if !self.num.is_param_free() || !self.den.is_param_free() || self.num.is_zero() {
            return self.clone();
        }
        if self.den.is_constant() {
            return self.clone();
        }
        let g = gcd::gcd(&self.num, &self.den);
        if gcd::is_unit(&g) {
            return self.clone();
        }
        let num = gcd::exact_div(&self.num, &g).expect("gcd divides numerator");
        let den = gcd::exact_div(&self.den, &g).expect("gcd divides denominator");
        RatFunc { num, den }.normalized()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
        .normalized())
    }

    pub fn scale(&self, c: &ParamScalar) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFunc {
        RatFunc {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .normalized()
    }

    /// Partial derivative by the quotient rule.
    pub fn diff(&self, var: usize) -> Result<RatFunc> {
        let dn = self.num.diff(var)?;
        let dd = self.den.diff(var)?;
        if dd.is_zero() {
            return Ok(RatFunc {
                num: dn,
                den: self.den.clone(),
            }
            .normalized());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Ok(RatFunc {
            num,
            den: &self.den * &self.den,
        }
        .normalized())
    }

    /// Restriction to `x_last = 0`. Fails if the denominator vanishes
    /// identically there.
    pub fn restrict_last(&self) -> Result<RatFunc> {
        let den = self.den.restrict_last();
        if den.is_zero() {
            return Err(SboError::DenominatorVanishesIdentically);
        }
        RatFunc::new(self.num.restrict_last(), den)
    }

    pub fn extend_vars(&self, nvars: usize) -> RatFunc {
        RatFunc {
            num: self.num.extend_vars(nvars),
            den: self.den.extend_vars(nvars),
        }
    }

    pub fn permute_vars(&self, perm: &[usize], nvars: usize) -> RatFunc {
        RatFunc {
            num: self.num.permute_vars(perm, nvars),
            den: self.den.permute_vars(perm, nvars),
        }
    }

    /// Evaluates at a point; `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Scalar]) -> Option<ParamScalar> {
        let d = self.den.eval(point);
        let n = self.num.eval(point);
        match d.as_constant() {
            Some(dc) if !dc.is_zero() => Some(n.scale(&dc.inv().ok()?)),
            _ => None,
        }
    }

    /// Substitutes rational functions (in a common set of variables) for
    /// every variable of `self`.
    pub fn compose(&self, args: &[RatFunc]) -> Result<RatFunc> {
        assert_eq!(args.len(), self.nvars(), "argument count");
        let num = poly_compose(&self.num, args)?;
        let den = poly_compose(&self.den, args)?;
        if den.is_zero() {
            return Err(SboError::DenominatorVanishesIdentically);
        }
        num.checked_div(&den)
    }
}

/// Substitutes rational functions for the variables of a polynomial.
///
/// Works over a common denominator so that only polynomial arithmetic is
/// needed: with `a_k = n_k / d_k`, a monomial `x^e` becomes
/// `Π n_k^{e_k} d_k^{E_k − e_k} / Π d_k^{E_k}` where `E_k` bounds `e_k`.
/// When all `d_k` coincide the shared denominator is raised to the total
/// degree instead.
pub fn poly_compose(p: &MPoly, args: &[RatFunc]) -> Result<RatFunc> {
    assert_eq!(args.len(), p.nvars(), "argument count");
    let m = args.first().map(|a| a.nvars()).unwrap_or(0);
    if p.is_zero() {
        return Ok(RatFunc::zero(m));
    }
    let shared = args.windows(2).all(|w| w[0].den == w[1].den);
    let mut num_pows: Vec<Vec<MPoly>> = args
        .iter()
        .map(|a| vec![MPoly::one(m), a.num.clone()])
        .collect();
    let pow = |cache: &mut Vec<MPoly>, base: &MPoly, e: usize| -> MPoly {
        while cache.len() <= e {
            let next = cache.last().expect("nonempty") * base;
            cache.push(next);
        }
        cache[e].clone()
    };
    let mut num = MPoly::zero(m);
    if shared && !args.is_empty() {
        let total = p.degree().unwrap_or(0) as usize;
        let d = &args[0].den;
        let mut den_pows = vec![MPoly::one(m), d.clone()];
        for (mono, c) in p.terms() {
            let mut t = MPoly::constant(m, c.clone());
            for (k, a) in args.iter().enumerate() {
                let e = mono.exp(k) as usize;
                if e > 0 {
                    t = &t * &pow(&mut num_pows[k], &a.num, e);
                }
            }
            let rest = total - mono.degree() as usize;
            if rest > 0 {
                t = &t * &pow(&mut den_pows, d, rest);
            }
            num.add_assign_ref(&t);
        }
        let den = pow(&mut den_pows, d, total);
        return RatFunc::new(num, den);
    }
    let bounds: Vec<usize> = (0..args.len()).map(|k| p.degree_in(k) as usize).collect();
    let mut den_pows: Vec<Vec<MPoly>> = args
        .iter()
        .map(|a| vec![MPoly::one(m), a.den.clone()])
        .collect();
    for (mono, c) in p.terms() {
        let mut t = MPoly::constant(m, c.clone());
        for (k, a) in args.iter().enumerate() {
            let e = mono.exp(k) as usize;
            if e > 0 {
                t = &t * &pow(&mut num_pows[k], &a.num, e);
            }
            if bounds[k] > e {
                t = &t * &pow(&mut den_pows[k], &a.den, bounds[k] - e);
            }
        }
        num.add_assign_ref(&t);
    }
    let mut den = MPoly::one(m);
    for (k, a) in args.iter().enumerate() {
        if bounds[k] > 0 {
            den = &den * &pow(&mut den_pows[k], &a.den, bounds[k]);
        }
    }
    RatFunc::new(num, den)
}

/// `big / small` when `small` is a non-constant exact divisor of `big`.
fn divides(small: &MPoly, big: &MPoly) -> Option<MPoly> {
    if small.is_constant() || small.degree() > big.degree() {
        return None;
    }
    gcd::exact_div(big, small)
}

impl PartialEq for RatFunc {
    fn eq(&self, rhs: &RatFunc) -> bool {
        if self.den == rhs.den {
            return self.num == rhs.num;
        }
        &self.num * &rhs.den == &rhs.num * &self.den
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .normalized();
        }
        if let Some(q) = divides(&rhs.den, &self.den) {
            return RatFunc {
                num: &self.num + &(&rhs.num * &q),
                den: self.den.clone(),
            }
            .normalized();
        }
        if let Some(q) = divides(&self.den, &rhs.den) {
            return RatFunc {
                num: &(&self.num * &q) + &rhs.num,
                den: rhs.den.clone(),
            }
            .normalized();
        }
        if rhs.den.is_constant() {
            return RatFunc {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            }
            .normalized();
        }
        if self.den.is_constant() {
            return RatFunc {
                num: &(&self.num * &rhs.den) + &rhs.num,
                den: rhs.den.clone(),
            }
            .normalized();
        }
        RatFunc {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        // cheap cancellations of identical factors
        if self.den == rhs.num {
            return RatFunc {
                num: self.num.clone(),
                den: rhs.den.clone(),
            }
            .normalized();
        }
        if self.num == rhs.den {
            return RatFunc {
                num: rhs.num.clone(),
                den: self.den.clone(),
            }
            .normalized();
        }
        RatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly_x;

    fn p(s: &str) -> MPoly {
        parse_poly_x(s, 1).unwrap()
    }

    #[test]
    fn sums_and_derivatives() {
        let f = RatFunc::new(p("1"), p("x1^2 + 4")).unwrap();
        assert_eq!(&f + &f, RatFunc::new(p("2"), p("x1^2 + 4")).unwrap());
        let g = RatFunc::new(p("1"), p("x1")).unwrap();
        assert_eq!(
            g.diff(0).unwrap(),
            RatFunc::new(p("-1"), p("x1^2")).unwrap()
        );
    }

    #[test]
    fn gcd_reduction() {
        let f = RatFunc::new(p("x1^2 - 1"), p("x1 - 1")).unwrap();
        let r = f.reduced();
        assert_eq!(r.num(), &p("x1 + 1"));
        assert_eq!(r.den(), &p("1"));
        assert_eq!(f, r);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(p("1"), p("0")).unwrap_err(),
            SboError::DivisionByZero
        );
    }

    #[test]
    fn power_law() {
        let f = RatFunc::new(p("x1 + 4"), p("4")).unwrap();
        let prod = &f.powi(2).unwrap() * &f.powi(-3).unwrap();
        assert_eq!(prod, f.powi(-1).unwrap());
    }
}
