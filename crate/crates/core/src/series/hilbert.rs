use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::{LaurentPoly, Q};
use crate::error::{Error, Result};

/// `numerator / prod (1 - t^d)` over the multiset `denom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct HilbertSeries {
    pub numerator: LaurentPoly,
    #[serde(rename = "denominator_exponents")]
    denom: Vec<i64>,
}

impl HilbertSeries {
    pub fn new(numerator: LaurentPoly, mut denom: Vec<i64>) -> Self {
        denom.sort_unstable();
        HilbertSeries { numerator, denom }
    }

    /// Sorted denominator exponents.
    pub fn denom_exponents(&self) -> &[i64] {
        &self.denom
    }

    pub fn denominator(&self) -> LaurentPoly {
        self.denom
            .iter()
            .fold(LaurentPoly::one(), |acc, &d| acc.mul_one_minus(d))
    }

    /// Rational-function equality, by cross multiplication.
    pub fn same_function(&self, other: &HilbertSeries) -> bool {
        if self.denom == other.denom {
            return self.numerator == other.numerator;
        }
        &self.numerator * &other.denominator() == &other.numerator * &self.denominator()
    }

    /// Rewrites the series over a different denominator multiset, failing if
    /// the numerator does not divide exactly.
    pub fn over_denominator(&self, denom: Vec<i64>) -> Result<HilbertSeries> {
        let target = HilbertSeries::new(LaurentPoly::zero(), denom);
        let scaled = &self.numerator * &target.denominator();
        let numerator = scaled.div_exact(&self.denominator())?;
        Ok(HilbertSeries::new(numerator, target.denom))
    }

    /// Adds a generator of weight `d`.
    pub fn with_factor(&self, d: i64) -> HilbertSeries {
        let mut denom = self.denom.clone();
        denom.push(d);
        HilbertSeries::new(self.numerator.clone(), denom)
    }

    /// Power-series coefficients `h_0..=h_{n_max}` without validity checks.
    pub fn expand_raw(&self, n_max: usize) -> Result<Vec<Q>> {
        if let Some(lo) = self.numerator.min_exp() {
            if lo < 0 {
                return Err(Error::IllPosed(format!(
                    "numerator has negative exponent t^{lo}"
                )));
            }
        }
        if self.denom.iter().any(|&d| d <= 0) {
            return Err(Error::IllPosed(
                "denominator exponents must be positive".into(),
            ));
        }
        let mut c = vec![Q::zero(); n_max + 1];
        for (e, v) in self.numerator.terms() {
            if (e as usize) <= n_max {
                c[e as usize] = v.clone();
            }
        }
        for &d in &self.denom {
            let d = d as usize;
            for n in d..=n_max {
                let prev = c[n - d].clone();
                c[n] += prev;
            }
        }
        Ok(c)
    }

    /// Coefficients `h_0..=h_{n_max}`, required to be nonnegative integers.
    pub fn expand(&self, n_max: usize) -> Result<Vec<BigInt>> {
        self.expand_raw(n_max)?
            .into_iter()
            .enumerate()
            .map(|(n, c)| {
                if !c.is_integer() || c.is_negative() {
                    Err(Error::IllPosed(format!("coefficient h_{n} = {c}")))
                } else {
                    Ok(c.to_integer())
                }
            })
            .collect()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ", self.numerator)?;
        let mut first = true;
        let mut i = 0;
        while i < self.denom.len() {
            let d = self.denom[i];
            let k = self.denom[i..].iter().take_while(|&&x| x == d).count();
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if d == 1 {
                write!(f, "(1-t)")?;
            } else {
                write!(f, "(1-t^{d})")?;
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
            i += k;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Result of [`numerator_symmetry_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub adjunction: i64,
    pub palindromic: bool,
}

/// Top degree of the numerator and whether its coefficients are palindromic
/// up to a global sign.
pub fn numerator_symmetry_check(hs: &HilbertSeries) -> Result<Symmetry> {
    let num = &hs.numerator;
    let (lo, hi) = match (num.min_exp(), num.max_exp()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::Validation("zero numerator".into())),
    };
    let sign = if (num.coeff(lo) * num.coeff(hi)).is_negative() {
        -Q::one()
    } else {
        Q::one()
    };
    let palindromic = num
        .terms()
        .all(|(e, c)| num.coeff(lo + hi - e) == c * &sign);
    Ok(Symmetry {
        adjunction: hi,
        palindromic,
    })
}
