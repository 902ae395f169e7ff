//! Projective cones, hypersurface sections and the search for Calabi-Yau and
//! Fano 3-fold candidates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::catalog::{make_weighted, weyl_sum, CatalogEntry, WeightedFlagVariety};
use crate::error::{Error, Result};
use crate::invariants::{summarize, InvariantSummary};
use crate::lattice::{pair, Coweight, Rat};
use crate::series::{numerator_symmetry_check, HilbertSeries, LaurentPoly};

/// Default truncation order for nonnegativity screens.
pub const EXPAND_ORDER: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Cone(i64),
    /// A hypersurface of degree `degree`; quasilinear sections consume an
    /// ambient generator of that weight.
    Section {
        degree: i64,
        quasilinear: bool,
    },
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Cone(w) => write!(f, "cone:{w}"),
            Op::Section {
                degree,
                quasilinear: true,
            } => write!(f, "section:{degree}"),
            Op::Section {
                degree,
                quasilinear: false,
            } => write!(f, "general:{degree}"),
        }
    }
}

impl FromStr for Op {
    type Err = Error;

    /// `cone:W`, `section:D` (quasilinear) or `general:D`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("operation {s:?} is not of the form kind:N")))?;
        let n: i64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("operation {s:?}: {arg:?} is not an integer")))?;
        match kind.trim() {
            "cone" => Ok(Op::Cone(n)),
            "section" => Ok(Op::Section {
                degree: n,
                quasilinear: true,
            }),
            "general" => Ok(Op::Section {
                degree: n,
                quasilinear: false,
            }),
            other => Err(Error::Parse(format!(
                "unknown operation {other:?}; expected cone, section or general"
            ))),
        }
    }
}

impl Serialize for Op {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses a comma-separated operation list.
pub fn parse_ops(s: &str) -> Result<Vec<Op>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructedVariety {
    pub base: WeightedFlagVariety,
    pub ops: Vec<Op>,
    pub ambient_weights: Vec<i64>,
    pub dim: usize,
    pub canonical_degree: i64,
    pub series: HilbertSeries,
}

impl From<WeightedFlagVariety> for ConstructedVariety {
    fn from(base: WeightedFlagVariety) -> Self {
        ConstructedVariety {
            ops: Vec::new(),
            ambient_weights: base.ambient_weights.clone(),
            dim: base.dim,
            canonical_degree: base.canonical_degree,
            series: base.series.clone(),
            base,
        }
    }
}

impl ConstructedVariety {
    /// Canonical degree recomputed from the tracked series: adjunction number
    /// minus the sum of the ambient weights.
    pub fn series_canonical_degree(&self) -> Result<i64> {
        let sym = numerator_symmetry_check(&self.series)?;
        Ok(sym.adjunction - self.ambient_weights.iter().sum::<i64>())
    }

    pub fn apply(&self, op: Op) -> Result<ConstructedVariety> {
        match op {
            Op::Cone(w) => cone(self, w),
            Op::Section {
                degree,
                quasilinear,
            } => section(self, degree, quasilinear),
        }
    }

    /// Applies `ops` in order; errors carry the 1-based index of the failing
    /// operation.
    pub fn apply_all(&self, ops: &[Op]) -> Result<ConstructedVariety> {
        let mut v = self.clone();
        for (i, op) in ops.iter().enumerate() {
            v = v.apply(*op).map_err(|e| match e {
                Error::Validation(m) => {
                    Error::Validation(format!("operation {} ({op}): {m}", i + 1))
                }
                other => other,
            })?;
        }
        Ok(v)
    }
}

/// Projective cone with a new generator of weight `w`.
pub fn cone(v: &ConstructedVariety, w: i64) -> Result<ConstructedVariety> {
    if w < 1 {
        return Err(Error::Validation(format!(
            "cone weight must be positive, got {w}"
        )));
    }
    let mut out = v.clone();
    out.ops.push(Op::Cone(w));
    out.ambient_weights.push(w);
    out.ambient_weights.sort_unstable();
    out.dim += 1;
    out.canonical_degree -= w;
    out.series = v.series.with_factor(w);
    Ok(out)
}

/// Section by a hypersurface of degree `d`.
pub fn section(v: &ConstructedVariety, d: i64, quasilinear: bool) -> Result<ConstructedVariety> {
    if d < 1 {
        return Err(Error::Validation(format!(
            "section degree must be positive, got {d}"
        )));
    }
    if v.dim < 1 {
        return Err(Error::Validation(
            "cannot cut a 0-dimensional variety".into(),
        ));
    }
    let mut out = v.clone();
    out.ops.push(Op::Section {
        degree: d,
        quasilinear,
    });
    out.dim -= 1;
    out.canonical_degree += d;
    if quasilinear {
        let pos = out
            .ambient_weights
            .iter()
            .position(|&w| w == d)
            .ok_or_else(|| {
                Error::Validation(format!(
                    "quasilinear section of degree {d} needs an ambient generator of weight {d}; \
                 weights are {:?}",
                    v.ambient_weights
                ))
            })?;
        out.ambient_weights.remove(pos);
        let mut denom = v.series.denom_exponents().to_vec();
        let p = denom.iter().position(|&w| w == d).unwrap();
        denom.remove(p);
        out.series = HilbertSeries::new(v.series.numerator.clone(), denom);
    } else {
        out.series = HilbertSeries::new(
            v.series.numerator.mul_one_minus(d),
            v.series.denom_exponents().to_vec(),
        );
    }
    Ok(out)
}

/// A weighted projective space is well-formed when every choice of all but
/// one weight has gcd 1.
pub fn wellformed_wps(weights: &[i64]) -> bool {
    if weights.is_empty() || weights.iter().any(|&w| w <= 0) {
        return false;
    }
    let n = weights.len();
    if n == 1 {
        return true;
    }
    let mut prefix = vec![0i64; n + 1];
    let mut suffix = vec![0i64; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i].gcd(&weights[i]);
        suffix[n - 1 - i] = suffix[n - i].gcd(&weights[n - 1 - i]);
    }
    (0..n).all(|i| prefix[i].gcd(&suffix[i + 1]) == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Target {
    CY3,
    Fano3,
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cy3" | "cy" => Ok(Target::CY3),
            "fano3" | "fano" => Ok(Target::Fano3),
            other => Err(Error::Parse(format!(
                "unknown target {other:?}; expected cy3 or fano3"
            ))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::CY3 => "CY3",
            Target::Fano3 => "Fano3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateReport {
    pub variety: &'static str,
    pub mu: Coweight,
    pub u: i64,
    pub ops: Vec<Op>,
    pub ambient_weights: Vec<i64>,
    pub numerator: LaurentPoly,
    pub canonical_degree: i64,
    pub target: Target,
    pub wellformed_ambient: bool,
    pub invariants: InvariantSummary,
    pub notes: Vec<String>,
}

impl CandidateReport {
    pub fn from_variety(v: &ConstructedVariety, target: Target) -> CandidateReport {
        CandidateReport {
            variety: v.base.entry.id,
            mu: v.base.mu.clone(),
            u: v.base.u,
            ops: v.ops.clone(),
            ambient_weights: v.ambient_weights.clone(),
            numerator: v.series.numerator.clone(),
            canonical_degree: v.canonical_degree,
            target,
            wellformed_ambient: wellformed_wps(&v.ambient_weights),
            invariants: summarize(v),
            notes: vec!["candidate, unverified singularities".into()],
        }
    }

    fn sort_key(&self) -> (&Coweight, i64, &[Op]) {
        (&self.mu, self.u, &self.ops)
    }
}

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub target: Target,
    /// Each `a_i` of a dominant `mu` ranges over `0..=mu_bound`.
    pub mu_bound: i64,
    /// `u` ranges from the smallest admissible value up to `u_bound`.
    pub u_bound: i64,
    pub max_sections: usize,
    pub max_cones: usize,
    pub jobs: usize,
    pub expand_order: usize,
}

impl SearchParams {
    pub fn new(target: Target, mu_bound: i64, u_bound: i64, max_sections: usize) -> Self {
        SearchParams {
            target,
            mu_bound,
            u_bound,
            max_sections,
            max_cones: 2,
            jobs: 1,
            expand_order: EXPAND_ORDER,
        }
    }
}

/// Upper limit on the number of `(mu, u)` grid points a search will visit.
pub const SEARCH_GRID_LIMIT: usize = 200_000;

/// Dominant coweights with entries in `0..=bound`.
pub fn dominant_coweights(entry: &CatalogEntry, bound: i64) -> Result<Vec<Coweight>> {
    let n = entry.coweight_len();
    let size = (bound + 1).checked_pow(n as u32).unwrap_or(i64::MAX);
    if bound < 0 || size as usize > 50 * SEARCH_GRID_LIMIT {
        return Err(Error::Resource(format!(
            "mu box [0,{bound}]^{n} has about {size} points, limit {}",
            50 * SEARCH_GRID_LIMIT
        )));
    }
    let rs = weyl_sum(entry)?.root_system().clone();
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    loop {
        let mu = Coweight::new(cur.clone());
        if rs.is_dominant_coweight(&mu) {
            out.push(mu);
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Smallest `u` making every `<lambda_i, mu> + u` positive, or `None` when the
/// weights cannot all be integral.
pub fn minimal_u(entry: &CatalogEntry, mu: &Coweight) -> Result<Option<i64>> {
    let sum = weyl_sum(entry)?;
    let mut min: Option<Rat> = None;
    for (w, _) in sum.weights().entries() {
        let p = pair(w, mu)?;
        min = Some(match min {
            Some(m) if m <= p => m,
            _ => p,
        });
    }
    let min = min.unwrap_or_else(|| Rat::from_integer(0));
    if !min.is_integer() {
        return Ok(None);
    }
    Ok(Some(1 - min.to_integer()))
}

/// All sub-multisets of `weights` with `k` elements, each in descending order.
fn sub_multisets(weights: &[i64], k: usize) -> Vec<Vec<i64>> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &w in weights {
        *counts.entry(w).or_default() += 1;
    }
    let distinct: Vec<(i64, usize)> = counts.into_iter().rev().collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(d: &[(i64, usize)], k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        let Some(((w, c), rest)) = d.split_first() else {
            return;
        };
        for take in (0..=(*c).min(k)).rev() {
            cur.extend(std::iter::repeat_n(*w, take));
            rec(rest, k - take, cur, out);
            cur.truncate(cur.len() - take);
        }
    }
    rec(&distinct, k, &mut cur, &mut out);
    out
}

fn candidates_at(
    entry: &CatalogEntry,
    mu: &Coweight,
    u: i64,
    params: &SearchParams,
) -> Result<Vec<CandidateReport>> {
    let base: ConstructedVariety = match make_weighted(entry, mu, u) {
        Ok(v) => v.into(),
        Err(Error::Validation(_)) | Err(Error::Integrality(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    let mut coned = base;
    for cones in 0..=params.max_cones {
        if cones > 0 {
            coned = cone(&coned, 1)?;
        }
        if coned.dim < 3 {
            continue;
        }
        let k = coned.dim - 3;
        if k > params.max_sections {
            continue;
        }
        for degrees in sub_multisets(&coned.ambient_weights, k) {
            // a weight-1 cone cut by a degree-1 section is the run with one
            // cone fewer
            if cones > 0 && degrees.contains(&1) {
                continue;
            }
            let total: i64 = degrees.iter().sum();
            let kx = coned.canonical_degree + total;
            let keep = match params.target {
                Target::CY3 => kx == 0,
                Target::Fano3 => kx < 0,
            };
            if !keep {
                continue;
            }
            let mut v = coned.clone();
            for &d in &degrees {
                v = section(&v, d, true)?;
            }
            if !wellformed_wps(&v.ambient_weights) {
                continue;
            }
            if v.series.expand(params.expand_order).is_err() {
                continue;
            }
            out.push(CandidateReport::from_variety(&v, params.target));
        }
    }
    Ok(out)
}

/// Enumerates candidates over dominant `mu`, admissible `u`, up to
/// `max_cones` cones of weight 1 and quasilinear section multisets cutting
/// down to dimension 3. Output is sorted by `(mu, u, ops)` and independent of
/// `params.jobs`.
pub fn search(entry: &CatalogEntry, params: &SearchParams) -> Result<Vec<CandidateReport>> {
    let mut grid = Vec::new();
    for mu in dominant_coweights(entry, params.mu_bound)? {
        if let Some(lo) = minimal_u(entry, &mu)? {
            for u in lo..=params.u_bound {
                grid.push((mu.clone(), u));
            }
        }
        if grid.len() > SEARCH_GRID_LIMIT {
            return Err(Error::Resource(format!(
                "search grid exceeds {SEARCH_GRID_LIMIT} (mu, u) points; lower the bounds"
            )));
        }
    }
    // warm the group cache before fanning out
    weyl_sum(entry)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.jobs.max(1))
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<CandidateReport>>> = pool.install(|| {
        grid.par_iter()
            .map(|(mu, u)| candidates_at(entry, mu, *u, params))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}
