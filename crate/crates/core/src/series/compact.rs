//! Closed-form Hilbert numerators for `wLGr(3,6)` and `wFL(1,3)`, written out
//! term by term from their compact expressions. They are used as an oracle
//! independent of the Weyl-group sum.
//!
//! The compact expressions as usually stated contain term-level errors, so
//! each form has two variants:
//!
//! * `AsStated`: the expressions literally.
//! * `Corrected`: the expressions with the errors fixed, so that they agree
//!   with the Weyl-group sum for every admissible `(mu, u)`:
//!   - `wLGr(3,6)`: `P_1` pairs with `t^{8u}`, not `t^{9u}` (forced by the
//!     palindromic numerator of degree `10u`).
//!   - `wFL(1,3)`: `P_1 = sum_{i<j} t^{2(a_i+a_j)} + 2 sum_{(i,j)} t^{s+a_i-a_j}
//!     - 2 t^s`, with `-2 t^s` outside the sum (the stated grouping gives 6
//!     quadrics at `mu = 0` instead of 36).
//!   - `wFL(1,3)`: the `t^{2(a_i-a_j)}` term of `P_3` is `t^{2(a_i-a_j)+s}`, as
//!     in `P_4`.
//!   - `wFL(1,3)`: the top term is `-t^{12(s+u)}`; an odd-codimension
//!     Gorenstein numerator is antipalindromic.

use super::hilbert::HilbertSeries;
use super::laurent::{q_int, LaurentPoly};
use crate::error::{Error, Result};
use crate::lattice::{Coweight, RationalVector};
use crate::series::weyl::ambient_weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompactVariant {
    AsStated,
    Corrected,
}

fn t(e: i64) -> LaurentPoly {
    LaurentPoly::t_pow(e)
}

fn c(k: i64, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(q_int(k), e)
}

/// `sum_{sigma in S_2} t^{sigma(x)} = t^x + t^{-x}`.
fn both(x: i64) -> LaurentPoly {
    &t(x) + &t(-x)
}

/// The weights `(+-1, +-1, +-1)` and `+-e_i` of the 14-dimensional
/// representation of `Sp(6)`.
fn lgr36_weights() -> Vec<RationalVector> {
    let mut out = Vec::new();
    for s1 in [-1, 1] {
        for s2 in [-1, 1] {
            for s3 in [-1, 1] {
                out.push(RationalVector::from_ints(&[s1, s2, s3]));
            }
        }
    }
    for i in 0..3 {
        for s in [-1, 1] {
            let mut v = [0i64; 3];
            v[i] = s;
            out.push(RationalVector::from_ints(&v));
        }
    }
    out
}

/// The weights of the 15-dimensional representation of `GL(4)`: permutations
/// of `(2,1,1,0)` and `(1,1,1,1)` three times.
fn fl13_weights() -> Vec<RationalVector> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            // 2 at position i, 0 at position j
            let mut v = [1i64; 4];
            v[i] = 2;
            v[j] = 0;
            out.push(RationalVector::from_ints(&v));
        }
    }
    for _ in 0..3 {
        out.push(RationalVector::from_ints(&[1, 1, 1, 1]));
    }
    out
}

fn denominators(weights: &[RationalVector], mu: &Coweight, u: i64) -> Result<Vec<i64>> {
    weights.iter().map(|w| ambient_weight(w, mu, u)).collect()
}

fn check_len(mu: &Coweight, n: usize, name: &str) -> Result<()> {
    if mu.len() != n {
        return Err(Error::Validation(format!(
            "{name} needs a coweight with {n} entries, got {}",
            mu.len()
        )));
    }
    Ok(())
}

/// Closed form of the Hilbert series of `wLGr(3,6)(mu, u)`.
pub fn compact_lgr36(mu: &Coweight, u: i64, variant: CompactVariant) -> Result<HilbertSeries> {
    check_len(mu, 3, "LGr(3,6)")?;
    let denom = denominators(&lgr36_weights(), mu, u)?;
    let a = mu.coords();

    let mut p1 = LaurentPoly::zero();
    for i in 0..3 {
        for j in 0..3 {
            p1 = &p1 + &t(a[i] - a[j]);
        }
    }
    for i in 0..3 {
        for j in i..3 {
            p1 = &p1 + &both(a[i] + a[j]);
        }
    }

    let mut p2 = LaurentPoly::zero();
    for i in 0..3 {
        for j in i + 1..3 {
            for x in [
                2 * a[i] + a[j],
                2 * a[i] - a[j],
                a[i] + 2 * a[j],
                a[i] - 2 * a[j],
            ] {
                p2 = &p2 + &both(x);
            }
        }
    }
    for x in [
        a[0] + a[1] + a[2],
        a[0] + a[1] - a[2],
        a[0] - a[1] - a[2],
        a[0] - a[1] + a[2],
    ] {
        p2 = &p2 + &both(x).scale(&q_int(2));
    }
    for &ai in a {
        p2 = &p2 + &both(ai).scale(&q_int(4));
    }

    let mut p3 = LaurentPoly::zero();
    for &ai in a {
        p3 = &p3 + &both(2 * ai);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            p3 = &p3 + &(&both(a[i] - a[j]) + &both(a[i] + a[j])).scale(&q_int(3));
        }
    }
    let block = [
        a[0] + 2 * a[1],
        2 * a[0] + a[1],
        a[0] - 2 * a[1],
        2 * a[0] - a[1],
    ]
    .iter()
    .fold(LaurentPoly::zero(), |acc, &x| &acc + &both(x));
    p3 = &p3 + &(&block * &both(a[2]));
    let pair12 = &both(a[0] + a[1]) + &both(a[0] - a[1]);
    p3 = &p3 + &(&pair12 * &both(2 * a[2]));
    p3 = &p3 + &c(4, 0);

    let p1_partner = match variant {
        CompactVariant::AsStated => 9 * u,
        CompactVariant::Corrected => 8 * u,
    };
    let numerator = LaurentPoly::one() - &p1 * &(&t(2 * u) - &t(p1_partner))
        + &p2 * &(&t(3 * u) - &t(7 * u))
        - &p3 * &(&t(4 * u) - &t(6 * u))
        - t(10 * u);
    Ok(HilbertSeries::new(numerator, denom))
}

/// Closed form of the Hilbert series of `wFL(1,3)(mu, u)`.
pub fn compact_fl13(mu: &Coweight, u: i64, variant: CompactVariant) -> Result<HilbertSeries> {
    check_len(mu, 4, "FL(1,3)")?;
    let denom = denominators(&fl13_weights(), mu, u)?;
    let a = mu.coords();
    let s = mu.sum();

    let pairs_lt = || (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)));
    let pairs_all = || (0..4).flat_map(|i| (0..4).map(move |j| (i, j)));
    let pairs_ne = || pairs_all().filter(|(i, j)| i != j);

    let sum_2aij = pairs_lt().fold(LaurentPoly::zero(), |acc, (i, j)| {
        &acc + &t(2 * (a[i] + a[j]))
    });
    let sum_diff_all = pairs_all().fold(LaurentPoly::zero(), |acc, (i, j)| {
        &acc + &t(a[i] - a[j] + s)
    });
    let sum_cubic = pairs_ne().fold(LaurentPoly::zero(), |acc, (i, j)| {
        &acc + &(&t(2 * s - (3 * a[i] + a[j])) + &t(3 * a[i] + a[j]))
    });

    let p1 = match variant {
        CompactVariant::AsStated => {
            let corr = pairs_ne().fold(LaurentPoly::zero(), |acc, (i, j)| {
                &acc + &(&t(s + a[i] - a[j]) - &t(s))
            });
            &sum_2aij + &corr.scale(&q_int(2))
        }
        CompactVariant::Corrected => &(&sum_2aij + &sum_diff_all.scale(&q_int(2))) - &c(2, s),
    };
    let p2 =
        &(&(&sum_2aij.scale(&q_int(4)) + &sum_diff_all.scale(&q_int(8))) + &sum_cubic) - &c(16, s);
    let sq_diff = pairs_ne().fold(LaurentPoly::zero(), |acc, (i, j)| {
        &acc + &t(2 * (a[i] - a[j]))
    });
    let sq_diff_s = sq_diff.shift(s);
    let p3_sq = match variant {
        CompactVariant::AsStated => &sq_diff,
        CompactVariant::Corrected => &sq_diff_s,
    };
    let p3 = &(&(&(&sum_2aij.scale(&q_int(6)) + &sum_diff_all.scale(&q_int(14)))
        + &sum_cubic.scale(&q_int(3)))
        + p3_sq)
        - &c(29, s);
    let p4 = &(&(&(&sum_2aij.scale(&q_int(4)) + &sum_diff_all.scale(&q_int(12)))
        + &sum_cubic.scale(&q_int(3)))
        + &sq_diff_s.scale(&q_int(2)))
        - &c(24, s);

    // P_5..P_8 = P_4..P_1
    let p = [&p1, &p2, &p3, &p4, &p4, &p3, &p2, &p1];
    let mut numerator = LaurentPoly::one();
    for k in 1..=8i64 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let shift = if k <= 4 {
            k * s + (k + 1) * u
        } else {
            (k + 1) * s + (k + 2) * u
        };
        numerator = &numerator + &p[(k - 1) as usize].shift(shift).scale(&q_int(sign));
    }
    let top = match variant {
        CompactVariant::AsStated => t(12 * (s + u)),
        CompactVariant::Corrected => -t(12 * (s + u)),
    };
    numerator = &numerator + &top;
    Ok(HilbertSeries::new(numerator, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_lgr36_corrected() {
        let hs = compact_lgr36(&Coweight::zero(3), 1, CompactVariant::Corrected).unwrap();
        assert_eq!(
            hs.numerator,
            LaurentPoly::from_int_coeffs(&[1, 0, -21, 64, -70, 0, 70, -64, 21, 0, -1])
        );
    }

    #[test]
    fn as_stated_lgr36_misplaces_the_quadric_partner() {
        let hs = compact_lgr36(&Coweight::zero(3), 1, CompactVariant::AsStated).unwrap();
        assert_eq!(hs.numerator.coeff(9), q_int(21));
        assert_eq!(hs.numerator.coeff(8), q_int(0));
    }

    #[test]
    fn straight_fl13_corrected() {
        let hs = compact_fl13(&Coweight::zero(4), 1, CompactVariant::Corrected).unwrap();
        assert_eq!(
            hs.numerator,
            LaurentPoly::from_int_coeffs(&[
                1, 0, -36, 160, -315, 288, 0, -288, 315, -160, 36, 0, -1
            ])
        );
    }

    #[test]
    fn p1_at_zero_counts_the_quadrics() {
        let hs = compact_lgr36(&Coweight::zero(3), 1, CompactVariant::AsStated).unwrap();
        assert_eq!(hs.numerator.coeff(2), q_int(-21));
        let hs = compact_fl13(&Coweight::zero(4), 1, CompactVariant::AsStated).unwrap();
        assert_eq!(hs.numerator.coeff(2), q_int(-6));
    }
}
