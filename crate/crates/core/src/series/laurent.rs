use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Sparse Laurent polynomial in `t` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Q::one(), 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: Q, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        LaurentPoly::monomial(Q::one(), e)
    }

    /// `1 - t^d`.
    pub fn one_minus_t_pow(d: i64) -> Self {
        LaurentPoly::one() - LaurentPoly::t_pow(d)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Q)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds from integer coefficients of `t^0, t^1, ...`.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        LaurentPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as i64, q_int(c))),
        )
    }

    pub fn add_term(&mut self, e: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.terms.values().next_back()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Substitutes `t -> t^{-1}`.
    pub fn invert(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Multiplies by `1 - t^d`.
    pub fn mul_one_minus(&self, d: i64) -> Self {
        let mut out = self.clone();
        for (e, c) in &self.terms {
            out.add_term(e + d, -c.clone());
        }
        out
    }

    /// Exact division by `1 - t^d` for `d > 0`; errors on nonzero remainder.
    pub fn div_one_minus(&self, d: i64) -> Result<Self> {
        assert!(d > 0, "div_one_minus needs a positive exponent");
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // q = p + t^d q, solved upward from the lowest exponent.
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut q: BTreeMap<i64, Q> = BTreeMap::new();
        for e in lo..=hi - d {
            let mut c = self.coeff(e);
            if let Some(prev) = q.get(&(e - d)) {
                c += prev;
            }
            if !c.is_zero() {
                q.insert(e, c);
            }
        }
        let quotient = LaurentPoly { terms: q };
        if &quotient.mul_one_minus(d) != self {
            return Err(Error::Internal(format!(
                "polynomial is not divisible by 1 - t^{d}"
            )));
        }
        Ok(quotient)
    }

    /// Long division by `divisor`, returning `(quotient, remainder)` with the
    /// remainder's top exponent below the divisor's span above its lowest term.
    pub fn div_rem(&self, divisor: &LaurentPoly) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d_lo = divisor.min_exp().unwrap();
        let d_hi = divisor.max_exp().unwrap();
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero();
        while let (Some(r_hi), Some(r_lo)) = (rem.max_exp(), rem.min_exp()) {
            if r_hi - r_lo < d_hi - d_lo {
                break;
            }
            let c = rem.coeff(r_hi) / &lead;
            let e = r_hi - d_hi;
            quo.add_term(e, c.clone());
            for (de, dc) in divisor.terms() {
                rem.add_term(de + e, -(dc * &c));
            }
        }
        (quo, rem)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<Self> {
        let (q, r) = self.div_rem(divisor);
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "nonzero remainder {r} dividing by {divisor}"
            )));
        }
        Ok(q)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{abs}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialized sparse and ascending as `[[exponent, "p/q"], ...]`.
impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(e, c)| (*e, c.to_string())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels_to_zero() {
        let p = LaurentPoly::from_int_coeffs(&[1, -2, 0, 3]).shift(-1);
        assert!((&p - &p).is_zero());
        assert_eq!(p.min_exp(), Some(-1));
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_int_coeffs(&[1, 1]);
        let b = LaurentPoly::from_int_coeffs(&[1, -1, 2]).shift(-3);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let (_, r) = LaurentPoly::from_int_coeffs(&[1, 0, 1]).div_rem(&a);
        assert_eq!(r, LaurentPoly::from_int_coeffs(&[2]));
    }

    #[test]
    fn one_minus_t_division() {
        let p = LaurentPoly::from_int_coeffs(&[1, 2, 3]);
        let m = p.mul_one_minus(3);
        assert_eq!(m.div_one_minus(3).unwrap(), p);
        assert!(LaurentPoly::from_int_coeffs(&[1, 1])
            .div_one_minus(1)
            .is_err());
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_int_coeffs(&[1, 0, -21, 64]);
        assert_eq!(p.to_string(), "1 - 21*t^2 + 64*t^3");
        let h = LaurentPoly::monomial(Q::new(1.into(), 4.into()), 2);
        assert_eq!(h.to_string(), "1/4*t^2");
    }
}
