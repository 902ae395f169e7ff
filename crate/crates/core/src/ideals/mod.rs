//! Weighted-homogeneous polynomial ideals: the embedded quadrics of
//! `LGr(3,6)` and `FL(1,3)`, a weighted Buchberger engine and Hilbert series
//! of quotient rings.

mod groebner;
mod monomial;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{HilbertSeries, Q};

pub use groebner::{
    buchberger, buchberger_with_cap, leading_monomials, normal_form, DEFAULT_STEP_CAP,
};
pub use monomial::monomial_quotient_numerator;

/// Weights of `x1..x14` on `wLGr(3,6)` at `mu = (1,0,0)`, `u = 2`.
pub const LGR36_WEIGHTS_MU100_U2: [i64; 14] = [3, 3, 3, 3, 2, 3, 2, 2, 1, 2, 1, 1, 1, 1];
/// Weights of `x1..x15` on `wFL(1,3)` at `mu = (0,0,1,1)`, `u = 0`.
pub const FL13_WEIGHTS_MU0011_U0: [i64; 15] = [1, 1, 1, 2, 2, 1, 2, 2, 2, 3, 2, 2, 3, 3, 3];
/// Weights of `x1..x15` on `wFL(1,3)` at `mu = (0,1,1,1)`, `u = -1`.
/// `x10` has weight 2; giving it weight 3 leaves 15 of the quadrics
/// inhomogeneous.
pub const FL13_WEIGHTS_MU0111_UM1: [i64; 15] = [1, 1, 2, 1, 2, 2, 2, 2, 2, 2, 2, 3, 2, 3, 3];

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, k: u32) -> Self {
        let mut e = vec![0; n];
        e[i] = k;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the only variable present, if the monomial is a pure power.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// Weighted degree, ties broken by reverse lexicographic order.
    Grevlex,
    /// Weighted degree, ties broken by lexicographic order.
    Lex,
}

impl std::str::FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grevlex" | "wgrevlex" => Ok(OrderKind::Grevlex),
            "lex" | "wlex" | "deglex" => Ok(OrderKind::Lex),
            other => Err(Error::Parse(format!(
                "unknown monomial order {other:?}; expected grevlex or lex"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub weights: Vec<i64>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, weights: &[i64]) -> Self {
        MonomialOrder {
            kind,
            weights: weights.to_vec(),
        }
    }

    pub fn grevlex(weights: &[i64]) -> Self {
        MonomialOrder::new(OrderKind::Grevlex, weights)
    }

    pub fn lex(weights: &[i64]) -> Self {
        MonomialOrder::new(OrderKind::Lex, weights)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let da = a.weighted_degree(&self.weights);
        let db = b.weighted_degree(&self.weights);
        da.cmp(&db).then_with(|| match self.kind {
            // x1 > x2 > ...: the first differing exponent decides
            OrderKind::Lex => a.0.cmp(&b.0),
            // the last differing exponent decides, smaller wins
            OrderKind::Grevlex => b.0.iter().rev().cmp(a.0.iter().rev()),
        })
    }
}

/// A polynomial with exact rational coefficients over weighted variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPolynomial {
    pub terms: BTreeMap<Monomial, Q>,
    pub weights: Vec<i64>,
}

impl WeightedPolynomial {
    pub fn new(weights: &[i64]) -> Self {
        WeightedPolynomial {
            terms: BTreeMap::new(),
            weights: weights.to_vec(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(weights: &[i64], terms: I) -> Self {
        let mut p = WeightedPolynomial::new(weights);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// The common weighted degree, or `None` if the terms disagree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(&self.weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn with_weights(&self, weights: &[i64]) -> Self {
        WeightedPolynomial {
            terms: self.terms.clone(),
            weights: weights.to_vec(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String], order: &'a MonomialOrder) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            names,
            order,
        }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a WeightedPolynomial,
    names: &'a [String],
    order: &'a MonomialOrder,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| self.order.cmp(b.0, a.0));
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = m.0.iter().all(|&e| e == 0);
            if !abs.is_one() || unit {
                write!(f, "{abs}")?;
                if !unit {
                    write!(f, "*")?;
                }
            }
            if !unit {
                m.fmt_with(self.names, f)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedIdeal {
    pub names: Vec<String>,
    pub weights: Vec<i64>,
    pub generators: Vec<WeightedPolynomial>,
    /// One label per generator.
    pub labels: Vec<String>,
}

impl WeightedIdeal {
    /// Builds an ideal, checking that every generator is weighted-homogeneous.
    pub fn new(
        names: Vec<String>,
        weights: Vec<i64>,
        generators: Vec<WeightedPolynomial>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w <= 0) {
            return Err(Error::Validation(format!(
                "variable weights must be positive, got {w}"
            )));
        }
        let generators: Vec<_> = generators
            .into_iter()
            .map(|g| g.with_weights(&weights))
            .collect();
        for (g, label) in generators.iter().zip(&labels) {
            if g.nvars() != names.len() || g.terms.keys().any(|m| m.0.len() != names.len()) {
                return Err(Error::DimensionMismatch(format!(
                    "generator {label} has the wrong number of variables"
                )));
            }
            if !g.is_zero() && g.homogeneous_degree().is_none() {
                let degs: Vec<i64> = g
                    .terms
                    .keys()
                    .map(|m| m.weighted_degree(&weights))
                    .collect();
                return Err(Error::Validation(format!(
                    "generator {label} is not weighted-homogeneous: term degrees {degs:?}"
                )));
            }
        }
        Ok(WeightedIdeal {
            names,
            weights,
            generators,
            labels,
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// Labels of the generators that fail to be homogeneous for `weights`.
    pub fn inhomogeneous_under(&self, weights: &[i64]) -> Vec<String> {
        self.generators
            .iter()
            .zip(&self.labels)
            .filter(|(g, _)| g.with_weights(weights).homogeneous_degree().is_none())
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// The same generators with new variable weights.
    pub fn reweighted(&self, weights: &[i64]) -> Result<Self> {
        WeightedIdeal::new(
            self.names.clone(),
            weights.to_vec(),
            self.generators.clone(),
            self.labels.clone(),
        )
    }

    pub fn variable(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Validation(format!("unknown variable {name:?}")))
    }
}

const LGR36_DATA: &str = include_str!("../../data/lgr36.txt");
const FL13_DATA: &str = include_str!("../../data/fl13.txt");

fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: num_bigint::BigInt = p.parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(p, q))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_monomial(s: &str, exps: &mut BTreeMap<usize, u32>) -> Result<()> {
    if s == "1" {
        return Ok(());
    }
    for factor in s.split('*') {
        let (var, pow) = match factor.split_once('^') {
            Some((v, p)) => (
                v,
                p.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        let idx: usize = var
            .strip_prefix('x')
            .and_then(|i| i.parse().ok())
            .filter(|&i: &usize| i >= 1)
            .ok_or_else(|| Error::Parse(format!("bad variable {var:?}; expected x1, x2, ...")))?;
        *exps.entry(idx - 1).or_default() += pow;
    }
    Ok(())
}

/// Sparse exponents (variable index to power) with a coefficient.
pub type ParsedTerm = (BTreeMap<usize, u32>, Q);
/// A labelled equation as read from text.
pub type ParsedEquation = (String, Vec<ParsedTerm>);

/// Parses `label: coeff monomial; coeff monomial; ...` lines (with `#`
/// comments) into labelled term lists over `x1..xn`.
pub fn parse_equations(text: &str) -> Result<(usize, Vec<ParsedEquation>)> {
    let mut eqs = Vec::new();
    let mut nvars = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (label, body) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("line {}: missing label", lineno + 1)))?;
        let mut terms = Vec::new();
        for term in body.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let mut parts = term.split_whitespace();
            let (c, m) = match (parts.next(), parts.next(), parts.next()) {
                (Some(c), Some(m), None) => (c, m),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: term {term:?} is not \"coeff monomial\"",
                        lineno + 1
                    )))
                }
            };
            let coeff = parse_rational(c)?;
            let mut exps = BTreeMap::new();
            parse_monomial(m, &mut exps)?;
            if let Some((&max, _)) = exps.iter().next_back() {
                nvars = nvars.max(max + 1);
            }
            terms.push((exps, coeff));
        }
        eqs.push((label.trim().to_string(), terms));
    }
    Ok((nvars, eqs))
}

/// Builds an ideal in `x1..xn` from equation text, with `n = weights.len()`.
pub fn ideal_from_text(text: &str, weights: &[i64]) -> Result<WeightedIdeal> {
    let (found, eqs) = parse_equations(text)?;
    let n = weights.len();
    if found > n {
        return Err(Error::DimensionMismatch(format!(
            "equations use {found} variables but {n} weights were given"
        )));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for (label, terms) in eqs {
        let mut p = WeightedPolynomial::new(weights);
        for (exps, c) in terms {
            let mut m = Monomial::one(n);
            for (i, e) in exps {
                m.0[i] += e;
            }
            p.add_term(m, c);
        }
        gens.push(p);
        labels.push(label);
    }
    WeightedIdeal::new(names, weights.to_vec(), gens, labels)
}

/// Number of variables in the equation text.
pub fn count_variables(text: &str) -> Result<usize> {
    Ok(parse_equations(text)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AppendixIdeal {
    /// 21 quadrics in `x1..x14`.
    Lgr36,
    /// 36 quadrics in `x1..x15`.
    Fl13,
}

impl AppendixIdeal {
    pub fn nvars(self) -> usize {
        match self {
            AppendixIdeal::Lgr36 => 14,
            AppendixIdeal::Fl13 => 15,
        }
    }

    pub fn data(self) -> &'static str {
        match self {
            AppendixIdeal::Lgr36 => LGR36_DATA,
            AppendixIdeal::Fl13 => FL13_DATA,
        }
    }
}

impl std::str::FromStr for AppendixIdeal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lgr36" => Ok(AppendixIdeal::Lgr36),
            "fl13" => Ok(AppendixIdeal::Fl13),
            other => Err(Error::Validation(format!(
                "unknown ideal {other:?}; expected lgr36 or fl13"
            ))),
        }
    }
}

/// The embedded quadrics with the given variable weights.
pub fn appendix_ideal(id: AppendixIdeal, weights: &[i64]) -> Result<WeightedIdeal> {
    if weights.len() != id.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "this ideal has {} variables, got {} weights",
            id.nvars(),
            weights.len()
        )));
    }
    ideal_from_text(id.data(), weights)
}

/// Sets every variable outside `keep` to zero and drops vanishing generators.
pub fn restrict_to_stratum(ideal: &WeightedIdeal, keep: &[usize]) -> WeightedIdeal {
    let n = ideal.nvars();
    let mut kept = vec![false; n];
    for &i in keep {
        if i < n {
            kept[i] = true;
        }
    }
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for (g, l) in ideal.generators.iter().zip(&ideal.labels) {
        let terms = g
            .terms
            .iter()
            .filter(|(m, _)| m.0.iter().enumerate().all(|(i, &e)| e == 0 || kept[i]))
            .map(|(m, c)| (m.clone(), c.clone()));
        let r = WeightedPolynomial::from_terms(&ideal.weights, terms);
        if !r.is_zero() {
            generators.push(r);
            labels.push(l.clone());
        }
    }
    WeightedIdeal {
        names: ideal.names.clone(),
        weights: ideal.weights.clone(),
        generators,
        labels,
    }
}

/// Whether some generator has the term `x_var^k` with nonzero coefficient.
pub fn pure_power_present(ideal: &WeightedIdeal, var: usize, k: u32) -> bool {
    if var >= ideal.nvars() {
        return false;
    }
    let m = Monomial::var(ideal.nvars(), var, k);
    ideal.generators.iter().any(|g| !g.coeff(&m).is_zero())
}

/// Hilbert series of `k[x]/I` over `prod (1 - t^{w_i})`, via the initial
/// ideal of a Gröbner basis.
pub fn quotient_hilbert_series(
    ideal: &WeightedIdeal,
    order: &MonomialOrder,
) -> Result<HilbertSeries> {
    let gb = buchberger(ideal, order)?;
    let lms = leading_monomials(&gb, order);
    let numerator = monomial_quotient_numerator(&lms, &ideal.weights);
    Ok(HilbertSeries::new(numerator, ideal.weights.clone()))
}
