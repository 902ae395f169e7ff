//! Hilbert numerators of monomial quotients by pivot recursion:
//! `K(I) = K(I + <p>) + t^{deg p} K(I : p)`.

use super::Monomial;
use crate::series::{q_int, LaurentPoly};

type Dense = Vec<i64>;

fn add_into(acc: &mut Dense, p: &Dense, shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

fn mul_one_minus(p: &Dense, d: usize) -> Dense {
    let mut out = p.clone();
    out.resize(p.len() + d, 0);
    for (i, c) in p.iter().enumerate() {
        out[i + d] -= c;
    }
    out
}

fn degree(m: &[u32], weights: &[i64]) -> usize {
    m.iter()
        .zip(weights)
        .map(|(&e, &w)| e as usize * w as usize)
        .sum()
}

/// Drops generators divisible by another one, and duplicates.
fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|m| m.iter().sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|o| o.iter().zip(&m).all(|(a, b)| a <= b)) {
            out.push(m);
        }
    }
    out
}

fn numerator(gens: Vec<Vec<u32>>, weights: &[i64]) -> Dense {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let n = weights.len();
    let mut counts = vec![0usize; n];
    for m in &gens {
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let (pivot, &most) = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .unwrap();
    if most <= 1 {
        // pairwise coprime generators form a regular sequence
        return gens
            .iter()
            .fold(vec![1], |acc, m| mul_one_minus(&acc, degree(m, weights)));
    }
    let e = gens
        .iter()
        .map(|m| m[pivot])
        .filter(|&e| e > 0)
        .min()
        .unwrap();
    let shift = e as usize * weights[pivot] as usize;
    // I + <x^e>: every generator involving x is absorbed, and x^e is a
    // nonzerodivisor on the rest
    let rest: Vec<Vec<u32>> = gens.iter().filter(|m| m[pivot] == 0).cloned().collect();
    let mut out = mul_one_minus(&numerator(rest, weights), shift);
    // I : x^e
    let colon: Vec<Vec<u32>> = gens
        .into_iter()
        .map(|mut m| {
            m[pivot] = m[pivot].saturating_sub(e);
            m
        })
        .collect();
    add_into(&mut out, &numerator(colon, weights), shift);
    out
}

/// `K` with `HS(k[x]/I) = K(t) / prod (1 - t^{w_i})` for the monomial ideal
/// generated by `gens`.
pub fn monomial_quotient_numerator(gens: &[Monomial], weights: &[i64]) -> LaurentPoly {
    let dense = numerator(gens.iter().map(|m| m.0.clone()).collect(), weights);
    LaurentPoly::from_terms(
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (i as i64, q_int(c))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn unit_ideal_and_zero_ideal() {
        assert_eq!(
            monomial_quotient_numerator(&[], &[1, 1]),
            LaurentPoly::one()
        );
        assert!(monomial_quotient_numerator(&[m(&[0, 0])], &[1, 1]).is_zero());
    }

    #[test]
    fn two_lines_meeting() {
        // <xy> in k[x,y]: 1 - t^2
        let k = monomial_quotient_numerator(&[m(&[1, 1])], &[1, 1]);
        assert_eq!(k, LaurentPoly::from_int_coeffs(&[1, 0, -1]));
    }

    #[test]
    fn overlapping_generators() {
        // <xy, xz> = x<y,z>: 1 - 2t^2 + t^3
        let k = monomial_quotient_numerator(&[m(&[1, 1, 0]), m(&[1, 0, 1])], &[1, 1, 1]);
        assert_eq!(k, LaurentPoly::from_int_coeffs(&[1, 0, -2, 1]));
        // weighted: deg x = 2, deg y = deg z = 1
        let k = monomial_quotient_numerator(&[m(&[1, 1, 0]), m(&[1, 0, 1])], &[2, 1, 1]);
        assert_eq!(k, LaurentPoly::from_int_coeffs(&[1, 0, 0, -2, 1]));
    }
}
