//! Buchberger's algorithm with the Gebauer-Möller criteria, processing
//! critical pairs in increasing weighted degree.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Monomial, MonomialOrder, OrderKind, WeightedIdeal, WeightedPolynomial};
use crate::error::{Error, Result};
use crate::series::Q;

/// Cap on reduction steps.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

/// Sort key whose lexicographic order is the monomial order, and which is
/// additive under multiplication of monomials.
type Key = Vec<i64>;

/// Polynomial keyed by [`Key`]; the leading term is the last entry.
type Poly = BTreeMap<Key, Q>;

struct Ctx<'a> {
    order: &'a MonomialOrder,
    n: usize,
    steps: u64,
    cap: u64,
}

fn add_to(p: &mut Poly, k: Key, c: Q) {
    match p.entry(k) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

#[derive(Clone)]
struct Basis {
    lm: Monomial,
    /// Monic; the leading term comes last.
    terms: Vec<(Key, Q)>,
}

impl Ctx<'_> {
    fn key(&self, m: &Monomial) -> Key {
        let mut k = Vec::with_capacity(self.n + 1);
        k.push(m.weighted_degree(&self.order.weights));
        match self.order.kind {
            OrderKind::Lex => k.extend(m.0.iter().map(|&e| e as i64)),
            OrderKind::Grevlex => k.extend(m.0.iter().rev().map(|&e| -(e as i64))),
        }
        k
    }

    fn monomial(&self, k: &[i64]) -> Monomial {
        match self.order.kind {
            OrderKind::Lex => Monomial(k[1..].iter().map(|&e| e as u32).collect()),
            OrderKind::Grevlex => Monomial(k[1..].iter().rev().map(|&e| (-e) as u32).collect()),
        }
    }

    fn to_poly(&self, p: &WeightedPolynomial) -> Poly {
        p.terms
            .iter()
            .map(|(m, c)| (self.key(m), c.clone()))
            .collect()
    }

    fn to_weighted(&self, p: &Poly, weights: &[i64]) -> WeightedPolynomial {
        WeightedPolynomial::from_terms(
            weights,
            p.iter().map(|(k, c)| (self.monomial(k), c.clone())),
        )
    }

    fn make_basis(&self, mut p: Poly) -> Basis {
        let (lk, lc) = p
            .last_key_value()
            .map(|(k, c)| (k.clone(), c.clone()))
            .unwrap();
        let inv = Q::one() / lc;
        for c in p.values_mut() {
            *c *= &inv;
        }
        Basis {
            lm: self.monomial(&lk),
            terms: p.into_iter().collect(),
        }
    }

    /// Subtracts `c * t^shift * g` from `f`, skipping `g`'s leading term,
    /// which cancels the term of `f` being eliminated.
    fn sub_multiple(f: &mut Poly, g: &Basis, shift: &[i64], c: &Q) {
        let (_, rest) = g.terms.split_last().unwrap();
        for (gk, gc) in rest {
            let k: Key = gk.iter().zip(shift).map(|(a, b)| a + b).collect();
            add_to(f, k, -(c * gc));
        }
    }

    /// Full reduction of `f` by the basis elements at `active`.
    fn reduce(&mut self, mut f: Poly, basis: &[Basis], active: &[usize]) -> Result<Poly> {
        let mut out = Poly::new();
        while let Some((k, c)) = f.pop_last() {
            let m = self.monomial(&k);
            match active.iter().find(|&&i| basis[i].lm.divides(&m)) {
                Some(&i) => {
                    self.steps += 1;
                    if self.steps > self.cap {
                        return Err(Error::Resource(format!(
                            "Gröbner basis computation exceeded {} reduction steps",
                            self.cap
                        )));
                    }
                    let q = m.div(&basis[i].lm);
                    let shift = self.key(&q);
                    Self::sub_multiple(&mut f, &basis[i], &shift, &c);
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        Ok(out)
    }

    fn s_poly(&self, a: &Basis, b: &Basis) -> Poly {
        let l = a.lm.lcm(&b.lm);
        let mut p = Poly::new();
        for (g, sign) in [(a, Q::one()), (b, -Q::one())] {
            let shift = self.key(&l.div(&g.lm));
            let (_, rest) = g.terms.split_last().unwrap();
            for (gk, gc) in rest {
                let k: Key = gk.iter().zip(&shift).map(|(x, y)| x + y).collect();
                add_to(&mut p, k, gc * &sign);
            }
        }
        p
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Möller update after adding basis element `h`.
fn update(basis: &[Basis], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = &basis[h].lm;
    let new: Vec<Pair> = active
        .iter()
        .map(|&g| Pair {
            i: g,
            j: h,
            lcm: basis[g].lm.lcm(lh),
        })
        .collect();

    // criterion M: drop (g,h) when some lcm(g',h) properly divides lcm(g,h)
    let minimal: Vec<&Pair> = new
        .iter()
        .filter(|p| !new.iter().any(|q| q.lcm != p.lcm && q.lcm.divides(&p.lcm)))
        .collect();
    // criterion F: one pair per lcm, none at all if the class contains a
    // pair with coprime leading monomials
    let mut kept: Vec<Pair> = Vec::new();
    let mut seen: Vec<&Monomial> = Vec::new();
    for p in &minimal {
        if seen.contains(&&p.lcm) {
            continue;
        }
        seen.push(&p.lcm);
        let coprime = minimal
            .iter()
            .any(|q| q.lcm == p.lcm && basis[q.i].lm.is_coprime(lh));
        if !coprime {
            kept.push((*p).clone());
        }
    }

    // criterion B on old pairs
    pairs.retain(|p| {
        !(lh.divides(&p.lcm) && basis[p.i].lm.lcm(lh) != p.lcm && basis[p.j].lm.lcm(lh) != p.lcm)
    });
    pairs.extend(kept);

    active.retain(|&g| !lh.divides(&basis[g].lm));
    active.push(h);
}

/// Reduced Gröbner basis of a weighted-homogeneous ideal, monic and sorted
/// by increasing leading monomial.
pub fn buchberger(ideal: &WeightedIdeal, order: &MonomialOrder) -> Result<WeightedIdeal> {
    buchberger_with_cap(ideal, order, DEFAULT_STEP_CAP)
}

pub fn buchberger_with_cap(
    ideal: &WeightedIdeal,
    order: &MonomialOrder,
    cap: u64,
) -> Result<WeightedIdeal> {
    let n = ideal.nvars();
    if order.weights.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "monomial order has {} weights for {n} variables",
            order.weights.len()
        )));
    }
    if order.weights.iter().any(|&w| w <= 0) {
        return Err(Error::Validation(
            "monomial order weights must be positive".into(),
        ));
    }
    for (g, l) in ideal.generators.iter().zip(&ideal.labels) {
        if !g.is_zero()
            && g.with_weights(&order.weights)
                .homogeneous_degree()
                .is_none()
        {
            return Err(Error::Validation(format!(
                "generator {l} is not homogeneous for the order weights"
            )));
        }
    }
    let mut ctx = Ctx {
        order,
        n,
        steps: 0,
        cap,
    };

    let mut inputs: Vec<Poly> = ideal
        .generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ctx.to_poly(g))
        .collect();
    inputs.sort_by(|a, b| {
        a.last_key_value()
            .unwrap()
            .0
            .cmp(b.last_key_value().unwrap().0)
    });

    let mut basis: Vec<Basis> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for f in inputs {
        let r = ctx.reduce(f, &basis, &active)?;
        if r.is_empty() {
            continue;
        }
        basis.push(ctx.make_basis(r));
        update(&basis, &mut active, &mut pairs, basis.len() - 1);
    }

    while !pairs.is_empty() {
        // smallest lcm first; ties by position for determinism
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                ctx.key(&a.lcm)
                    .cmp(&ctx.key(&b.lcm))
                    .then((a.i, a.j).cmp(&(b.i, b.j)))
            })
            .unwrap();
        let p = pairs.swap_remove(idx);
        let s = ctx.s_poly(&basis[p.i], &basis[p.j]);
        let r = ctx.reduce(s, &basis, &active)?;
        if r.is_empty() {
            continue;
        }
        basis.push(ctx.make_basis(r));
        update(&basis, &mut active, &mut pairs, basis.len() - 1);
    }

    // interreduce the tails
    let mut reduced: Vec<Basis> = Vec::with_capacity(active.len());
    for (pos, &g) in active.iter().enumerate() {
        let others: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &i)| i)
            .collect();
        let (lk, lc) = basis[g].terms.last().unwrap().clone();
        let tail: Poly = basis[g].terms[..basis[g].terms.len() - 1]
            .iter()
            .cloned()
            .collect();
        let mut r = ctx.reduce(tail, &basis, &others)?;
        r.insert(lk, lc);
        reduced.push(ctx.make_basis(r));
    }
    reduced.sort_by(|a, b| order.cmp(&a.lm, &b.lm));

    let weights = ideal.weights.clone();
    let generators: Vec<WeightedPolynomial> = reduced
        .iter()
        .map(|b| ctx.to_weighted(&b.terms.iter().cloned().collect(), &weights))
        .collect();
    let labels = (1..=generators.len()).map(|i| format!("g{i}")).collect();
    Ok(WeightedIdeal {
        names: ideal.names.clone(),
        weights,
        generators,
        labels,
    })
}

/// Remainder of `f` on division by `gb`; zero iff `f` lies in the ideal when
/// `gb` is a Gröbner basis for `order`.
pub fn normal_form(
    f: &WeightedPolynomial,
    gb: &WeightedIdeal,
    order: &MonomialOrder,
) -> Result<WeightedPolynomial> {
    let mut ctx = Ctx {
        order,
        n: gb.nvars(),
        steps: 0,
        cap: DEFAULT_STEP_CAP,
    };
    let basis: Vec<Basis> = gb
        .generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ctx.make_basis(ctx.to_poly(g)))
        .collect();
    let active: Vec<usize> = (0..basis.len()).collect();
    let r = ctx.reduce(ctx.to_poly(f), &basis, &active)?;
    Ok(ctx.to_weighted(&r, &f.weights))
}

/// Leading monomials of `gb` under `order`.
pub fn leading_monomials(gb: &WeightedIdeal, order: &MonomialOrder) -> Vec<Monomial> {
    gb.generators
        .iter()
        .filter_map(|g| g.leading(order).map(|(m, _)| m.clone()))
        .collect()
}
