//! Evaluation of the Weyl-group sum
//!
//! ```text
//!            sum_w (-1)^w t^<w rho, mu> / (1 - t^{<w lambda, mu> + u})
//!   P(t) = ------------------------------------------------------------
//!                       sum_w (-1)^w t^<w rho, mu>
//! ```
//!
//! and its rewriting over `prod (1 - t^{<lambda_i, mu> + u})`.
//!
//! For singular `mu` the denominator vanishes identically. We then move `mu`
//! along a regular direction `nu`, writing `t^<x, mu + eps nu>` as
//! `t^<x, mu> z^<x, nu>`, and take the limit `z -> 1`. Both sums are expanded
//! in `z - 1` up to the vanishing order `k` of the denominator, and the ratio
//! of the order-`k` coefficients is the limit. Exponents are taken relative to
//! `rho` and `lambda` so they stay integral for half-integral weights.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hilbert::HilbertSeries;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::lattice::{pair, weyl_group, Coweight, RationalVector, RootSystem, WeightSystem};

/// Dense Laurent polynomial with integer coefficients, `sum c_i t^{offset+i}`.
#[derive(Clone, Debug, Default)]
struct Dense {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl Dense {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn add_scaled_shifted(&mut self, other: &Dense, scale: &BigInt, shift: i64) {
        if other.coeffs.is_empty() || scale.is_zero() {
            return;
        }
        let lo = other.offset + shift;
        let hi = lo + other.coeffs.len() as i64;
        if self.coeffs.is_empty() {
            self.offset = lo;
        }
        if lo < self.offset {
            let pad = (self.offset - lo) as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.offset = lo;
        }
        let end = self.offset + self.coeffs.len() as i64;
        if hi > end {
            self.coeffs
                .resize(self.coeffs.len() + (hi - end) as usize, BigInt::zero());
        }
        let base = (lo - self.offset) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.coeffs[base + i] += c * scale;
            }
        }
    }

    fn add_monomial(&mut self, e: i64, c: &BigInt) {
        let m = Dense {
            offset: e,
            coeffs: vec![BigInt::one()],
        };
        self.add_scaled_shifted(&m, c, 0);
    }

    fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.offset + i as i64, BigRational::from_integer(c.clone()))),
        )
    }
}

/// Generalized binomial coefficients `binom(q, j)` for `j = 0..=k`.
fn binomials(q: i64, k: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(k + 1);
    let mut cur = BigInt::one();
    out.push(cur.clone());
    for j in 0..k {
        cur = cur * BigInt::from(q - j as i64) / BigInt::from(j as i64 + 1);
        out.push(cur.clone());
    }
    out
}

/// Truncated power series in `eps = z - 1` with Laurent coefficients in `t`.
type Truncated = Vec<Dense>;

/// `series * (1 - t^p (1 + eps)^q)` truncated at order `k`.
fn mul_factor(series: &Truncated, p: i64, binom_q: &[BigInt]) -> Truncated {
    let k = series.len() - 1;
    let mut out = series.clone();
    for e in 0..=k {
        for j in 0..=e {
            let b = &binom_q[j];
            if b.is_zero() {
                continue;
            }
            out[e].add_scaled_shifted(&series[e - j], &-b, p);
        }
    }
    out
}

/// Precomputed Weyl-group data for one highest weight.
#[derive(Clone, Debug)]
pub struct WeylSum {
    rs: RootSystem,
    lambda: RationalVector,
    nabla: WeightSystem,
    orbit: Vec<RationalVector>,
    /// Per orbit element `w lambda`: the pairs `(w rho - rho, sign)`.
    terms: Vec<Vec<(RationalVector, i64)>>,
    /// Weights of `nabla` outside the orbit, with multiplicity.
    extra: Vec<RationalVector>,
    /// Regular integral direction used for the limit.
    direction: Coweight,
}

impl WeylSum {
    pub fn new(rs: &RootSystem, lambda: &RationalVector, nabla: &WeightSystem) -> Result<Self> {
        let group = weyl_group(rs)?;
        let mut buckets: std::collections::BTreeMap<RationalVector, Vec<(RationalVector, i64)>> =
            Default::default();
        for w in &group {
            let wl = w.apply(lambda);
            let wr = w.apply(&rs.rho).sub(&rs.rho);
            buckets.entry(wl).or_default().push((wr, w.sign as i64));
        }
        let orbit: Vec<RationalVector> = buckets.keys().cloned().collect();
        let terms: Vec<_> = buckets.into_values().collect();

        let mut extra = Vec::new();
        for (w, m) in nabla.entries() {
            let in_orbit = orbit.binary_search(w).is_ok() as u64;
            if *m < in_orbit {
                return Err(Error::Internal(format!(
                    "orbit weight {w} missing from the weight system"
                )));
            }
            for _ in 0..(*m - in_orbit) {
                extra.push(w.clone());
            }
        }

        let direction = regular_direction(rs)?;
        Ok(WeylSum {
            rs: rs.clone(),
            lambda: lambda.clone(),
            nabla: nabla.clone(),
            orbit,
            terms,
            extra,
            direction,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn lambda(&self) -> &RationalVector {
        &self.lambda
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.nabla
    }

    pub fn orbit(&self) -> &[RationalVector] {
        &self.orbit
    }

    /// `<lambda_i, mu> + u` for every weight, with multiplicity, sorted.
    pub fn ambient_weights(&self, mu: &Coweight, u: i64) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(self.nabla.total() as usize);
        for (w, m) in self.nabla.entries() {
            let d = ambient_weight(w, mu, u)?;
            out.extend(std::iter::repeat_n(d, *m as usize));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The Hilbert series over `prod_{lambda_i} (1 - t^{<lambda_i, mu> + u})`.
    pub fn hilbert_series(&self, mu: &Coweight, u: i64) -> Result<HilbertSeries> {
        let ambient = self.ambient_weights(mu, u)?;
        let orbit_weights = self
            .orbit
            .iter()
            .map(|w| ambient_weight(w, mu, u))
            .collect::<Result<Vec<_>>>()?;
        let nu = &self.direction;

        // exponent pairs (t, z) for each group element
        let rel = |v: &RationalVector, c: &Coweight| -> Result<i64> {
            let x = pair(v, c)?;
            if !x.is_integer() {
                return Err(Error::Internal(format!(
                    "root-lattice pairing <{v}, {c}> is not integral"
                )));
            }
            Ok(x.to_integer())
        };
        let mut elems: Vec<Vec<(i64, i64, i64)>> = Vec::with_capacity(self.terms.len());
        for bucket in &self.terms {
            let mut v = Vec::with_capacity(bucket.len());
            for (wr, sign) in bucket {
                v.push((rel(wr, mu)?, rel(wr, nu)?, *sign));
            }
            elems.push(v);
        }

        // vanishing order of the Weyl denominator at z = 1
        let max_order = self.rs.positive_roots.len();
        let mut order = None;
        let mut denom_k = LaurentPoly::zero();
        for k in 0..=max_order {
            let mut acc = Dense::default();
            for bucket in &elems {
                for &(a, b, sign) in bucket {
                    let c = &binomials(b, k)[k] * BigInt::from(sign);
                    acc.add_monomial(a, &c);
                }
            }
            if !acc.is_zero() {
                order = Some(k);
                denom_k = acc.to_laurent();
                break;
            }
        }
        let k = order.ok_or_else(|| {
            Error::Internal("Weyl denominator vanishes beyond the number of positive roots".into())
        })?;

        let factors: Vec<(i64, Vec<BigInt>)> = self
            .orbit
            .iter()
            .zip(&orbit_weights)
            .map(|(w, &p)| Ok((p, binomials(rel(&w.sub(&self.lambda), nu)?, k))))
            .collect::<Result<_>>()?;

        let mut numer: Truncated = vec![Dense::default(); k + 1];
        for (j, bucket) in elems.iter().enumerate() {
            let mut term: Truncated = vec![Dense::default(); k + 1];
            for &(a, b, sign) in bucket {
                let bs = binomials(b, k);
                for (e, c) in bs.iter().enumerate() {
                    term[e].add_monomial(a, &(c * BigInt::from(sign)));
                }
            }
            for (i, (p, bq)) in factors.iter().enumerate() {
                if i != j {
                    term = mul_factor(&term, *p, bq);
                }
            }
            for e in 0..=k {
                numer[e].add_scaled_shifted(&term[e], &BigInt::one(), 0);
            }
        }
        for (e, piece) in numer.iter().enumerate().take(k) {
            if !piece.is_zero() {
                return Err(Error::Internal(format!(
                    "numerator does not vanish to order {k} (order {e} term is nonzero)"
                )));
            }
        }

        let mut scaled = numer[k].to_laurent();
        for w in &self.extra {
            scaled = scaled.mul_one_minus(ambient_weight(w, mu, u)?);
        }
        let numerator = scaled
            .div_exact(&denom_k)
            .map_err(|e| Error::Internal(format!("Hilbert numerator is not a polynomial: {e}")))?;
        Ok(HilbertSeries::new(numerator, ambient))
    }
}

/// `<w, mu> + u`, required to be a positive integer.
pub fn ambient_weight(w: &RationalVector, mu: &Coweight, u: i64) -> Result<i64> {
    let x = pair(w, mu)? + crate::lattice::Rat::from_integer(u);
    if !x.is_integer() {
        return Err(Error::Integrality(format!(
            "weight <{w}, mu> + u = {x} is not an integer"
        )));
    }
    let d = x.to_integer();
    if d <= 0 {
        return Err(Error::Validation(format!(
            "nonpositive ambient weight <{w}, mu> + u = {d} for lambda_i = {w}"
        )));
    }
    Ok(d)
}

/// An integral coweight pairing nontrivially with every root.
fn regular_direction(rs: &RootSystem) -> Result<Coweight> {
    let n = rs.dim();
    for base in 2i64..64 {
        let cand = Coweight::new((0..n).map(|i| base.pow((n - 1 - i) as u32)).collect());
        let regular = rs
            .positive_roots
            .iter()
            .all(|a| pair(a, &cand).map(|v| !v.is_zero()).unwrap_or(false));
        if regular {
            return Ok(cand);
        }
    }
    Err(Error::Internal("no regular direction found".into()))
}

/// Evaluates the Weyl-group closed form for `w Sigma(mu, u)`.
pub fn hilbert_series_weyl(
    rs: &RootSystem,
    lambda: &RationalVector,
    mu: &Coweight,
    u: i64,
    nabla: &WeightSystem,
) -> Result<HilbertSeries> {
    WeylSum::new(rs, lambda, nabla)?.hilbert_series(mu, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_root_system, weight_system, weyl_dim, LieType};

    fn setup(ty: LieType, rank: usize, lambda: &[i64]) -> WeylSum {
        let rs = build_root_system(ty, rank).unwrap();
        let l = RationalVector::from_ints(lambda);
        let ws = weight_system(&rs, &l).unwrap();
        WeylSum::new(&rs, &l, &ws).unwrap()
    }

    #[test]
    fn projective_space_is_free() {
        let ws = setup(LieType::A, 3, &[1, 0, 0, 0]);
        let hs = ws.hilbert_series(&Coweight::zero(4), 1).unwrap();
        assert_eq!(hs.numerator, LaurentPoly::one());
        assert_eq!(hs.denom_exponents(), &[1, 1, 1, 1]);
    }

    #[test]
    fn straight_series_counts_representations() {
        // At mu = 0, u = 1 the coefficient of t^n is dim V_{n lambda}.
        for (ty, rank, lambda) in [
            (LieType::C, 3, vec![1, 1, 1]),
            (LieType::GL, 4, vec![2, 1, 1, 0]),
            (LieType::GL, 5, vec![1, 1, 0, 0, 0]),
            (LieType::B, 3, vec![1, 0, 0]),
        ] {
            let sum = setup(ty, rank, &lambda);
            let rs = sum.root_system().clone();
            let n = rs.dim();
            let hs = sum.hilbert_series(&Coweight::zero(n), 1).unwrap();
            let coeffs = hs.expand(8).unwrap();
            for (k, c) in coeffs.iter().enumerate() {
                let scaled: Vec<i64> = lambda.iter().map(|x| x * k as i64).collect();
                let d = weyl_dim(&rs, &RationalVector::from_ints(&scaled)).unwrap();
                assert_eq!(*c, BigInt::from(d), "{ty}{rank} degree {k}");
            }
        }
    }

    #[test]
    fn weighted_lgr36_golden() {
        let sum = setup(LieType::C, 3, &[1, 1, 1]);
        let hs = sum
            .hilbert_series(&Coweight::new(vec![1, 0, 0]), 2)
            .unwrap();
        let expected = LaurentPoly::from_int_coeffs(&[
            1, 0, -1, -4, -7, 12, 18, -4, -16, -20, 0, 20, 16, 4, -18, -12, 7, 4, 1, 0, -1,
        ]);
        assert_eq!(hs.numerator, expected);
        assert_eq!(
            hs.denom_exponents(),
            &[1, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3]
        );
    }

    #[test]
    fn weighted_fl13_golden() {
        let sum = setup(LieType::GL, 4, &[2, 1, 1, 0]);
        let hs = sum
            .hilbert_series(&Coweight::new(vec![0, 1, 1, 1]), -1)
            .unwrap();
        let expected = LaurentPoly::from_int_coeffs(&[
            1, 0, 0, -9, -15, 33, 58, -36, -117, -12, 114, 66, 0, -66, -114, 12, 117, 36, -58, -33,
            15, 9, 0, 0, -1,
        ]);
        assert_eq!(hs.numerator, expected);
        let mut d = vec![1; 3];
        d.extend([2; 9]);
        d.extend([3; 3]);
        assert_eq!(hs.denom_exponents(), d.as_slice());
    }

    #[test]
    fn weyl_images_of_mu_give_the_same_series() {
        let sum = setup(LieType::GL, 4, &[2, 1, 1, 0]);
        let group = weyl_group(sum.root_system()).unwrap();
        let mu = Coweight::new(vec![0, 0, 1, 1]);
        let base = sum.hilbert_series(&mu, 0).unwrap();
        for w in group.iter().step_by(5) {
            let image = w.apply_transpose(&mu);
            assert_eq!(sum.hilbert_series(&image, 0).unwrap(), base, "mu = {image}");
        }
    }

    #[test]
    fn nonpositive_weights_are_rejected() {
        let sum = setup(LieType::C, 3, &[1, 1, 1]);
        let err = sum
            .hilbert_series(&Coweight::new(vec![2, 0, 0]), 1)
            .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn binomials_of_negative_arguments() {
        let b: Vec<i64> = binomials(-2, 3)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(b, vec![1, -2, 3, -4]);
    }
}
