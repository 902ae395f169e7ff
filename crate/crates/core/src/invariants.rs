//! Numerical invariants read off a Hilbert series: the degree `D^d`, the Fano
//! genus and a quasi-polynomial fit of `h^0(nD)`.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::construct::ConstructedVariety;
use crate::error::{Error, Result};
use crate::series::{numerator_symmetry_check, q_int, HilbertSeries, Q};

/// `D^d = lim_{t -> 1} (1-t)^{d+1} P(t)` for a `d`-dimensional polarized
/// variety with Hilbert series `P`.
pub fn degree_of(series: &HilbertSeries, dim: usize) -> Result<Q> {
    let n = series.denom_exponents().len();
    if n < dim + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{n} generators cannot carry a {dim}-dimensional variety"
        )));
    }
    // N = (1-t)^{n-d-1} M with M(1) != 0
    let mut m = series.numerator.clone();
    for _ in 0..(n - dim - 1) {
        m = m.div_one_minus(1).map_err(|_| {
            Error::DimensionMismatch(format!(
                "pole at t = 1 has order above {}; the series is not {dim}-dimensional",
                dim + 1
            ))
        })?;
    }
    let value = m.eval_one();
    if value.is_zero() {
        return Err(Error::DimensionMismatch(format!(
            "pole at t = 1 has order below {}; the series is not {dim}-dimensional",
            dim + 1
        )));
    }
    let prod: i64 = series.denom_exponents().iter().product();
    Ok(value / q_int(prod))
}

pub fn degree(v: &ConstructedVariety) -> Result<Q> {
    degree_of(&v.series, v.dim)
}

/// `g = D^3 / 2 + 1`, from `(-K)^3 = 2g - 2` when `D = -K`.
pub fn fano_genus_of(series: &HilbertSeries, dim: usize) -> Result<i64> {
    if dim != 3 {
        return Err(Error::DimensionMismatch(format!(
            "genus is defined for 3-folds, got dimension {dim}"
        )));
    }
    let g = degree_of(series, dim)? / q_int(2) + Q::one();
    if !g.is_integer() {
        return Err(Error::Convention(format!("genus {g} is not an integer")));
    }
    i64::try_from(g.to_integer()).map_err(|_| Error::Convention(format!("genus {g} out of range")))
}

pub fn fano_genus(v: &ConstructedVariety) -> Result<i64> {
    fano_genus_of(&v.series, v.dim)
}

/// `h^0(nD) = polys[n mod period](n)` for `n >= stabilization`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// Ascending coefficients, one polynomial per residue class.
    pub polys: Vec<Vec<Q>>,
    pub stabilization: usize,
}

impl QuasiPolynomial {
    pub fn eval(&self, n: u64) -> Q {
        let p = &self.polys[(n % self.period) as usize];
        let x = q_int(n as i64);
        p.iter().rev().fold(Q::zero(), |acc, c| acc * &x + c)
    }

    fn coeff(&self, r: usize, k: usize) -> Q {
        self.polys[r].get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// Top coefficient when it is the same for every residue.
    pub fn common_leading(&self, deg: usize) -> Option<Q> {
        let c = self.coeff(0, deg);
        (0..self.polys.len())
            .all(|r| self.coeff(r, deg) == c)
            .then_some(c)
    }

    /// Average of the linear coefficients over the residues.
    pub fn linear_avg(&self) -> Q {
        let sum = (0..self.polys.len()).fold(Q::zero(), |acc, r| acc + self.coeff(r, 1));
        sum / q_int(self.polys.len() as i64)
    }

    /// `12 * linear_avg`, matching `D.c_2` when the periodic part of the
    /// linear term averages to zero.
    pub fn dc2_estimate(&self) -> Q {
        self.linear_avg() * q_int(12)
    }
}

/// Interpolating polynomial through `(x_i, y_i)`, ascending coefficients.
fn interpolate(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let n = xs.len();
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Q::one()];
        let mut denom = Q::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (k, c) in basis.iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    out
}

fn try_fit(h: &[Q], dim: usize, m: usize, start: usize) -> Option<QuasiPolynomial> {
    let samples = dim + 1;
    let mut polys = Vec::with_capacity(m);
    for r in 0..m {
        let first = start + (r + m - start % m) % m;
        let ns: Vec<usize> = (0..samples).map(|j| first + j * m).collect();
        let xs: Vec<Q> = ns.iter().map(|&n| q_int(n as i64)).collect();
        let ys: Vec<Q> = ns.iter().map(|&n| h[n].clone()).collect();
        polys.push(interpolate(&xs, &ys));
    }
    let qp = QuasiPolynomial {
        period: m as u64,
        polys,
        stabilization: start,
    };
    let end = start + (samples + 2) * m;
    (start..end)
        .all(|n| qp.eval(n as u64) == h[n])
        .then_some(qp)
}

/// Fits `h^0(nD)` by one degree-`dim` polynomial per residue mod `period`.
/// Uses `(dim+1) * period` samples from the first index where the fit holds
/// and validates it on `2 * period` further coefficients.
pub fn quasipoly_fit_series(
    series: &HilbertSeries,
    dim: usize,
    period: u64,
) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::Validation("period must be positive".into()));
    }
    let m = period as usize;
    let weight_sum: i64 = series.denom_exponents().iter().sum();
    let top = numerator_symmetry_check(series)?.adjunction;
    // the series agrees with its quasi-polynomial beyond its degree as a
    // rational function
    let last_start = (top - weight_sum + 1).max(0) as usize;
    let len = last_start + (dim + 3) * m + 1;
    let h = series.expand_raw(len)?;
    for start in 0..=last_start {
        if let Some(qp) = try_fit(&h, dim, m, start) {
            return Ok(qp);
        }
    }
    Err(Error::PeriodTooSmall(format!(
        "no quasi-polynomial of period {period} fits the coefficients"
    )))
}

/// Default fit period: lcm of the ambient weights.
pub fn default_period(weights: &[i64]) -> u64 {
    weights.iter().fold(1i64, |acc, &w| acc.lcm(&w)) as u64
}

pub fn quasipoly_fit(v: &ConstructedVariety, period: Option<u64>) -> Result<QuasiPolynomial> {
    let m = period.unwrap_or_else(|| default_period(&v.ambient_weights));
    quasipoly_fit_series(&v.series, v.dim, m)
}

fn ser_opt_q<S: Serializer>(q: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

/// Invariants attached to reports; absent values could not be computed.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct InvariantSummary {
    #[serde(serialize_with = "ser_opt_q")]
    pub degree: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(serialize_with = "ser_opt_q", skip_serializing_if = "Option::is_none")]
    pub dc2_estimate: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_period: Option<u64>,
}

/// Degree for any dimension; genus for anticanonically polarized 3-folds;
/// the quasi-polynomial data for 3-folds.
pub fn summarize(v: &ConstructedVariety) -> InvariantSummary {
    let mut out = InvariantSummary {
        degree: degree(v).ok(),
        ..Default::default()
    };
    if v.dim == 3 {
        if v.canonical_degree == -1 {
            out.genus = fano_genus(v).ok();
        }
        if let Ok(qp) = quasipoly_fit(v, None) {
            out.dc2_estimate = Some(qp.dc2_estimate());
            out.fit_period = Some(qp.period);
        }
    }
    out
}
