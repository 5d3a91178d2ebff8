//! Polynomials in the spectral parameter `u` with Gaussian-rational
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Scalar;

/// A polynomial in the distinguished parameter `u`. The coefficient list is
/// indexed by the power of `u` and never carries trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamScalar {
    coeffs: Vec<Scalar>,
}

impl ParamScalar {
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ParamScalar { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Scalar::from_int(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::constant(Scalar::frac(num, den))
    }

    /// The parameter `u` itself.
    pub fn u() -> Self {
        ParamScalar {
            coeffs: vec![Scalar::zero(), Scalar::one()],
        }
    }

    /// `u + c`.
    pub fn u_plus(c: Scalar) -> Self {
        Self::u() + Self::constant(c)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree in `u`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The value when constant in `u`.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Evaluates at `u = u0` by Horner's rule.
    pub fn eval(&self, u0: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * u0) + c;
        }
        acc
    }

    /// Substitutes another parameter polynomial for `u`.
    pub fn compose(&self, inner: &ParamScalar) -> ParamScalar {
        let mut acc = ParamScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &ParamScalar::constant(c.clone());
        }
        acc
    }

    pub fn scale(&self, s: &Scalar) -> ParamScalar {
        if s.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Derivative in `u`.
    pub fn derivative(&self) -> ParamScalar {
        ParamScalar::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    /// Division with remainder by a nonzero polynomial (field coefficients).
    pub fn div_rem(&self, rhs: &ParamScalar) -> (ParamScalar, ParamScalar) {
        let lead = rhs.leading().expect("division by zero polynomial");
        let lead_inv = lead.inv().expect("nonzero leading coefficient");
        let dr = rhs.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); rem.len().saturating_sub(dr)];
        while rem.len() > dr && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            let shift = top - dr;
            for (k, rc) in rhs.coeffs.iter().enumerate() {
                let t = &c * rc;
                rem[shift + k] -= &t;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (
            ParamScalar::from_coeffs(quot),
            ParamScalar::from_coeffs(rem),
        )
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, rhs: &ParamScalar) -> ParamScalar {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => a.scale(&l.inv().expect("nonzero")),
            None => a,
        }
    }

    /// True if the polynomial is a nonzero real constant below zero.
    pub(crate) fn is_negative_constant(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_negative_real()
    }

    /// True if rendering needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        let nz = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        if nz > 1 {
            return true;
        }
        self.coeffs
            .iter()
            .any(|c| !c.is_real() && !c.re().is_zero())
    }
}

impl Zero for ParamScalar {
    fn zero() -> Self {
        ParamScalar { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for ParamScalar {
    fn one() -> Self {
        ParamScalar::constant(Scalar::one())
    }
}

impl From<Scalar> for ParamScalar {
    fn from(s: Scalar) -> Self {
        ParamScalar::constant(s)
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        ParamScalar::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        if self.is_zero() || rhs.is_zero() {
            return ParamScalar::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        ParamScalar::from_coeffs(coeffs)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: &ParamScalar) -> ParamScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for ParamScalar {
    /// Descending powers of `u`, e.g. `u^2 - 3/2*u + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let single = self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative_real()
                || (c.re().is_zero() && num_traits::Signed::is_negative(c.im()))
            {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coef = if !mag.is_real() && !mag.re().is_zero() && !(single && k == 0) {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            let body = match k {
                0 => coef,
                _ => {
                    let upow = if k == 1 {
                        "u".to_string()
                    } else {
                        format!("u^{k}")
                    };
                    if mag.is_one() {
                        upow
                    } else {
                        format!("{coef}*{upow}")
                    }
                }
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
