//! Root systems, Weyl groups and weight systems.
//!
//! Weights live in a fixed coordinate space: the orthonormal `e`-basis for the
//! classical types and the fundamental-weight basis for `G2` and `E6`.
//! Coweights are integer vectors in the dual coordinates, so the pairing is
//! always a plain dot product.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational used for lattice coordinates.
pub type Rat = Ratio<i64>;

/// Default cap on the Weyl group order, overridable through `WFLAG_WEYL_CAP`.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// Reads `WFLAG_WEYL_CAP`, falling back to [`DEFAULT_WEYL_CAP`].
pub fn default_weyl_cap() -> usize {
    std::env::var("WFLAG_WEYL_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_WEYL_CAP)
}

/// A vector of exact rationals in the weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rat>);

impl RationalVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        RationalVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| Rat::from_integer(c)).collect())
    }

    pub fn zero(len: usize) -> Self {
        RationalVector(vec![Rat::zero(); len])
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: Rat) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Serialized as a list of `"p/q"` strings.
impl Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

/// An integral coweight `mu = (a_1, ..., a_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(Vec<i64>);

impl Coweight {
    pub fn new(coords: Vec<i64>) -> Self {
        Coweight(coords)
    }

    pub fn zero(len: usize) -> Self {
        Coweight(vec![0; len])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s = a_1 + ... + a_r`.
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Coweight {
        Coweight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Coweight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("coweight entry {p:?} is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty coweight".into()));
        }
        Ok(Coweight(coords))
    }
}

/// `<w, mu>`: the pairing between weights and coweights.
pub fn pair(w: &RationalVector, mu: &Coweight) -> Result<Rat> {
    if w.len() != mu.len() {
        return Err(Error::Validation(format!(
            "pairing length mismatch: weight has {} coordinates, coweight has {}",
            w.len(),
            mu.len()
        )));
    }
    Ok(w.0
        .iter()
        .zip(&mu.0)
        .fold(Rat::zero(), |acc, (a, &b)| acc + a * b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    /// `sl(n+1)`, realized on `n+1` coordinates.
    A,
    /// `gl(n)`, realized on `n` coordinates with `rho = (n-1, ..., 1, 0)`.
    GL,
    B,
    C,
    D,
    G2,
    E6,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::GL => "GL",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
            LieType::G2 => "G2",
            LieType::E6 => "E6",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "GL" => Ok(LieType::GL),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "G2" | "G" => Ok(LieType::G2),
            "E6" | "E" => Ok(LieType::E6),
            other => Err(Error::Validation(format!("unknown Lie type {other:?}"))),
        }
    }
}

type RatMatrix = Vec<Vec<Rat>>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    pub simple_roots: Vec<RationalVector>,
    pub positive_roots: Vec<RationalVector>,
    pub rho: RationalVector,
    gram: RatMatrix,
}

impl RootSystem {
    /// Number of weight coordinates (differs from `rank` for type `A`).
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// Invariant inner product `(x, y)`.
    pub fn inner(&self, x: &RationalVector, y: &RationalVector) -> Rat {
        let mut acc = Rat::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                let g = self.gram[i][j];
                if !g.is_zero() {
                    acc += xi * g * yj;
                }
            }
        }
        acc
    }

    /// `<x, alpha^vee> = 2 (x, alpha) / (alpha, alpha)`.
    pub fn coroot_pair(&self, x: &RationalVector, alpha: &RationalVector) -> Rat {
        Rat::from_integer(2) * self.inner(x, alpha) / self.inner(alpha, alpha)
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, i: usize, x: &RationalVector) -> RationalVector {
        let alpha = &self.simple_roots[i];
        let c = self.coroot_pair(x, alpha);
        x.sub(&alpha.scale(c))
    }

    pub fn is_dominant(&self, x: &RationalVector) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !self.coroot_pair(x, a).is_negative())
    }

    /// Dominant coweight: `<alpha_i, mu> >= 0` for every simple root.
    pub fn is_dominant_coweight(&self, mu: &Coweight) -> bool {
        self.simple_roots
            .iter()
            .all(|a| pair(a, mu).map(|v| !v.is_negative()).unwrap_or(false))
    }

    /// The unique dominant element of the orbit of `x`.
    pub fn dominant_conjugate(&self, x: &RationalVector) -> RationalVector {
        let mut y = x.clone();
        'outer: loop {
            for i in 0..self.simple_roots.len() {
                if self.coroot_pair(&y, &self.simple_roots[i]).is_negative() {
                    y = self.reflect(i, &y);
                    continue 'outer;
                }
            }
            return y;
        }
    }

    /// All roots, positive and negative.
    pub fn roots(&self) -> Vec<RationalVector> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| r.scale(-Rat::one())));
        out
    }

    /// Integer matrix of the simple reflection `s_i` (column `j` is `s_i(e_j)`).
    fn reflection_matrix(&self, i: usize) -> Result<Vec<i64>> {
        let n = self.dim();
        let mut m = vec![0i64; n * n];
        for j in 0..n {
            let mut e = RationalVector::zero(n);
            e.0[j] = Rat::one();
            let img = self.reflect(i, &e);
            for (r, c) in img.0.iter().enumerate() {
                if !c.is_integer() {
                    return Err(Error::Internal(format!(
                        "reflection s_{} is not integral in this realization",
                        i + 1
                    )));
                }
                m[r * n + j] = c.to_integer();
            }
        }
        Ok(m)
    }
}

fn unit(n: usize, i: usize) -> RationalVector {
    let mut v = RationalVector::zero(n);
    v.0[i] = Rat::one();
    v
}

fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Rat::zero(), |acc, l| acc + a[i][l] * b[l][j]))
                .collect()
        })
        .collect()
}

fn transpose(a: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

/// Gauss-Jordan inverse over the rationals.
fn mat_inv(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut m: RatMatrix = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let (mc, ic) = (m[col][j], inv[col][j]);
                    m[r][j] -= f * mc;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Gram matrix on fundamental-weight coordinates given the simple roots (in
/// those coordinates) and their symmetrized inner products.
fn weight_basis_gram(simple: &[RationalVector], bilinear: &RatMatrix) -> RatMatrix {
    let r: RatMatrix = simple.iter().map(|v| v.0.clone()).collect();
    let r_inv = mat_inv(&r).expect("simple roots are linearly independent");
    mat_mul(&mat_mul(&r_inv, bilinear), &transpose(&r_inv))
}

fn from_cartan(cartan: &[&[i64]], lengths: &[i64]) -> (Vec<RationalVector>, RatMatrix) {
    // cartan[i][j] = <alpha_j, alpha_i^vee>; alpha_j has coordinates cartan[.][j].
    let n = cartan.len();
    let simple: Vec<RationalVector> = (0..n)
        .map(|j| RationalVector::from_ints(&(0..n).map(|i| cartan[i][j]).collect::<Vec<_>>()))
        .collect();
    // (alpha_i, alpha_j) = <alpha_j, alpha_i^vee> (alpha_i, alpha_i) / 2
    let bilinear: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rat::new(cartan[i][j] * lengths[i], 2))
                .collect()
        })
        .collect();
    let gram = weight_basis_gram(&simple, &bilinear);
    (simple, gram)
}

/// Builds the root system of the given type and rank.
///
/// Supported: `A` (1..=7), `GL` (1..=7), `B` (2..=5), `C` (2..=5), `D` (4..=6),
/// `G2` (rank 2) and `E6` (rank 6).
pub fn build_root_system(lie_type: LieType, rank: usize) -> Result<RootSystem> {
    let unsupported = || {
        Err(Error::Validation(format!(
            "unsupported root system {lie_type}{rank}"
        )))
    };
    let (simple, gram, rho_override): (Vec<RationalVector>, RatMatrix, Option<RationalVector>) =
        match lie_type {
            LieType::A => {
                if !(1..=7).contains(&rank) {
                    return unsupported();
                }
                let n = rank + 1;
                let simple = (0..rank).map(|i| unit(n, i).sub(&unit(n, i + 1))).collect();
                (simple, identity(n), None)
            }
            LieType::GL => {
                if !(1..=7).contains(&rank) {
                    return unsupported();
                }
                let n = rank;
                let simple = (0..n - 1)
                    .map(|i| unit(n, i).sub(&unit(n, i + 1)))
                    .collect();
                let rho = RationalVector::from_ints(
                    &(0..n).map(|i| (n - 1 - i) as i64).collect::<Vec<_>>(),
                );
                (simple, identity(n), Some(rho))
            }
            LieType::B | LieType::C | LieType::D => {
                let ok = match lie_type {
                    LieType::D => (4..=6).contains(&rank),
                    _ => (2..=5).contains(&rank),
                };
                if !ok {
                    return unsupported();
                }
                let n = rank;
                let mut simple: Vec<RationalVector> = (0..n - 1)
                    .map(|i| unit(n, i).sub(&unit(n, i + 1)))
                    .collect();
                simple.push(match lie_type {
                    LieType::B => unit(n, n - 1),
                    LieType::C => unit(n, n - 1).scale(Rat::from_integer(2)),
                    _ => unit(n, n - 2).add(&unit(n, n - 1)),
                });
                (simple, identity(n), None)
            }
            LieType::G2 => {
                if rank != 2 {
                    return unsupported();
                }
                // alpha_1 short, alpha_2 long.
                let (simple, gram) = from_cartan(&[&[2, -3], &[-1, 2]], &[2, 6]);
                (simple, gram, None)
            }
            LieType::E6 => {
                if rank != 6 {
                    return unsupported();
                }
                // Bourbaki labelling: chain 1-3-4-5-6 with 2 attached to 4.
                let c: [&[i64]; 6] = [
                    &[2, 0, -1, 0, 0, 0],
                    &[0, 2, 0, -1, 0, 0],
                    &[-1, 0, 2, -1, 0, 0],
                    &[0, -1, -1, 2, -1, 0],
                    &[0, 0, 0, -1, 2, -1],
                    &[0, 0, 0, 0, -1, 2],
                ];
                let (simple, gram) = from_cartan(&c, &[2; 6]);
                (simple, gram, None)
            }
        };

    let mut rs = RootSystem {
        lie_type,
        rank,
        simple_roots: simple,
        positive_roots: Vec::new(),
        rho: RationalVector::zero(gram.len()),
        gram,
    };

    // s_i permutes the positive roots other than alpha_i.
    let mut seen: BTreeSet<RationalVector> = rs.simple_roots.iter().cloned().collect();
    let mut queue: VecDeque<RationalVector> = rs.simple_roots.iter().cloned().collect();
    let mut positive = rs.simple_roots.clone();
    while let Some(beta) = queue.pop_front() {
        for i in 0..rs.simple_roots.len() {
            if beta == rs.simple_roots[i] {
                continue;
            }
            let img = rs.reflect(i, &beta);
            if seen.insert(img.clone()) {
                positive.push(img.clone());
                queue.push_back(img);
            }
        }
    }
    positive.sort();
    rs.positive_roots = positive;

    let half_sum = rs
        .positive_roots
        .iter()
        .fold(RationalVector::zero(rs.dim()), |acc, r| acc.add(r))
        .scale(Rat::new(1, 2));
    rs.rho = rho_override.unwrap_or(half_sum);
    Ok(rs)
}

/// An element of the Weyl group as an integer matrix on weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    n: usize,
    matrix: Vec<i64>,
    pub sign: i8,
}

impl WeylElement {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.matrix[r * self.n + c]
    }

    pub fn entries(&self) -> &[i64] {
        &self.matrix
    }

    pub fn apply(&self, x: &RationalVector) -> RationalVector {
        let n = self.n;
        RationalVector(
            (0..n)
                .map(|r| {
                    (0..n).fold(Rat::zero(), |acc, c| {
                        let m = self.matrix[r * n + c];
                        if m == 0 {
                            acc
                        } else {
                            acc + x.0[c] * m
                        }
                    })
                })
                .collect(),
        )
    }

    /// Action on coweights through the transpose, so `<w x, mu> = <x, w^T mu>`.
    pub fn apply_transpose(&self, mu: &Coweight) -> Coweight {
        let n = self.n;
        Coweight(
            (0..n)
                .map(|c| (0..n).map(|r| self.matrix[r * n + c] * mu.0[r]).sum())
                .collect(),
        )
    }
}

fn int_mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// The full Weyl group, capped at [`default_weyl_cap`] elements.
pub fn weyl_group(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    weyl_group_with_cap(rs, default_weyl_cap())
}

/// Breadth-first closure over the simple reflections, sorted by matrix entries.
pub fn weyl_group_with_cap(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let n = rs.dim();
    let gens = (0..rs.simple_roots.len())
        .map(|i| rs.reflection_matrix(i))
        .collect::<Result<Vec<_>>>()?;
    let id: Vec<i64> = (0..n * n)
        .map(|k| if k / n == k % n { 1 } else { 0 })
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut elements: Vec<WeylElement> = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back((id, 1i8));
    while let Some((m, sign)) = queue.pop_front() {
        for g in &gens {
            let prod = int_mat_mul(g, &m, n);
            if !seen.contains(&prod) {
                if seen.len() >= cap {
                    return Err(Error::Resource(format!(
                        "Weyl group of {}{} exceeds the cap of {cap} elements \
                         (raise WFLAG_WEYL_CAP)",
                        rs.lie_type, rs.rank
                    )));
                }
                seen.insert(prod.clone());
                queue.push_back((prod, -sign));
            }
        }
        elements.push(WeylElement { n, matrix: m, sign });
    }
    elements.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    Ok(elements)
}

/// The Weyl orbit of `w` as a set.
pub fn orbit(rs: &RootSystem, w: &RationalVector) -> BTreeSet<RationalVector> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(x) = queue.pop_front() {
        for i in 0..rs.simple_roots.len() {
            let y = rs.reflect(i, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn require_dominant(rs: &RootSystem, lambda: &RationalVector) -> Result<()> {
    if lambda.len() != rs.dim() {
        return Err(Error::Validation(format!(
            "weight {lambda} has {} coordinates, expected {}",
            lambda.len(),
            rs.dim()
        )));
    }
    if !rs.is_dominant(lambda) {
        return Err(Error::Validation(format!(
            "weight {lambda} is not dominant for {}{}",
            rs.lie_type, rs.rank
        )));
    }
    Ok(())
}

/// Weyl dimension formula.
pub fn weyl_dim(rs: &RootSystem, lambda: &RationalVector) -> Result<u64> {
    require_dominant(rs, lambda)?;
    let shifted = lambda.add(&rs.rho);
    let value = rs.positive_roots.iter().fold(Rat::one(), |acc, a| {
        acc * rs.coroot_pair(&shifted, a) / rs.coroot_pair(&rs.rho, a)
    });
    if !value.is_integer() || value <= Rat::zero() {
        return Err(Error::Internal(format!(
            "Weyl dimension formula returned {value} for {lambda}"
        )));
    }
    Ok(value.to_integer() as u64)
}

/// Number of positive roots not orthogonal to `lambda`: `dim G/P_lambda`.
pub fn flag_dimension(rs: &RootSystem, lambda: &RationalVector) -> Result<usize> {
    require_dominant(rs, lambda)?;
    Ok(rs
        .positive_roots
        .iter()
        .filter(|a| !rs.coroot_pair(lambda, a).is_zero())
        .count())
}

/// Weights of an irreducible representation with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    entries: Vec<(RationalVector, u64)>,
}

impl WeightSystem {
    pub fn entries(&self) -> &[(RationalVector, u64)] {
        &self.entries
    }

    /// Dimension of the representation.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, w: &RationalVector) -> u64 {
        self.entries
            .binary_search_by(|(x, _)| x.cmp(w))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Every weight repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<RationalVector> {
        self.entries
            .iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w.clone(), *m as usize))
            .collect()
    }
}

/// Weight multiplicities by Freudenthal's recursion over the dominant weights.
pub fn weight_system(rs: &RootSystem, lambda: &RationalVector) -> Result<WeightSystem> {
    require_dominant(rs, lambda)?;

    // Dominant weights below lambda are connected to lambda by positive roots.
    let mut dominant: BTreeSet<RationalVector> = BTreeSet::new();
    let mut queue = VecDeque::new();
    dominant.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(mu) = queue.pop_front() {
        for a in &rs.positive_roots {
            let nu = mu.sub(a);
            if rs.is_dominant(&nu) && dominant.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }

    let lr = lambda.add(&rs.rho);
    let top = rs.inner(&lr, &lr);
    let gap = |mu: &RationalVector| {
        let mr = mu.add(&rs.rho);
        top - rs.inner(&mr, &mr)
    };
    let mut order: Vec<RationalVector> = dominant.into_iter().collect();
    order.sort_by(|a, b| gap(a).cmp(&gap(b)).then_with(|| b.cmp(a)));

    let mut mult: BTreeMap<RationalVector, u64> = BTreeMap::new();
    for mu in &order {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut sum = Rat::zero();
        for a in &rs.positive_roots {
            let mut k = 1i64;
            loop {
                let nu = mu.add(&a.scale(Rat::from_integer(k)));
                let m = mult.get(&rs.dominant_conjugate(&nu)).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                sum += Rat::from_integer(m as i64) * rs.inner(&nu, a);
                k += 1;
            }
        }
        let value = Rat::from_integer(2) * sum / gap(mu);
        if !value.is_integer() || value.is_negative() {
            return Err(Error::Internal(format!(
                "Freudenthal recursion produced multiplicity {value} at {mu}"
            )));
        }
        mult.insert(mu.clone(), value.to_integer() as u64);
    }

    let mut entries: Vec<(RationalVector, u64)> = Vec::new();
    for (mu, m) in &mult {
        if *m == 0 {
            continue;
        }
        for w in orbit(rs, mu) {
            entries.push((w, *m));
        }
    }
    entries.sort();
    Ok(WeightSystem { entries })
}
