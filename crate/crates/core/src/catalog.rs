//! The registry of flag varieties in codimension 4 to 10 and their weighted
//! versions `wSigma(mu, u)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    build_root_system, flag_dimension, weight_system, Coweight, LieType, Rat, RationalVector,
    RootSystem,
};
use crate::series::{numerator_symmetry_check, HilbertSeries, WeylSum};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub name: &'static str,
    pub lie_type: LieType,
    pub rank: usize,
    pub lambda: RationalVector,
    pub expected_codim: usize,
    pub expected_num_quadrics: usize,
    /// `n` in `Sigma ⊂ P^n`.
    pub ambient_dim: usize,
    /// Large Weyl group; excluded from default test runs.
    pub slow_path: bool,
}

impl CatalogEntry {
    pub fn root_system(&self) -> Result<RootSystem> {
        build_root_system(self.lie_type, self.rank)
    }

    /// Number of coordinates of a coweight for this entry.
    pub fn coweight_len(&self) -> usize {
        self.lambda.len()
    }
}

fn half_spin() -> RationalVector {
    RationalVector::new(vec![Rat::new(1, 2); 5])
}

/// All nine rows, ordered by codimension.
pub fn catalog() -> Vec<CatalogEntry> {
    let row =
        |id, name, lie_type, rank, lambda: RationalVector, codim, quadrics, amb| CatalogEntry {
            id,
            name,
            lie_type,
            rank,
            lambda,
            expected_codim: codim,
            expected_num_quadrics: quadrics,
            ambient_dim: amb,
            slow_path: lie_type == LieType::E6,
        };
    let ints = RationalVector::from_ints;
    vec![
        row("fl12", "FL(1,2)", LieType::GL, 3, ints(&[2, 1, 0]), 4, 9, 7),
        row("ogr510", "OGr(5,10)", LieType::D, 5, half_spin(), 5, 10, 15),
        row(
            "gr26",
            "Gr(2,6)",
            LieType::GL,
            6,
            ints(&[1, 1, 0, 0, 0, 0]),
            6,
            15,
            14,
        ),
        row(
            "lgr36",
            "LGr(3,6)",
            LieType::C,
            3,
            ints(&[1, 1, 1]),
            7,
            21,
            13,
        ),
        row("g2", "G2/P2", LieType::G2, 2, ints(&[0, 1]), 8, 28, 13),
        row(
            "fl13",
            "FL(1,3)",
            LieType::GL,
            4,
            ints(&[2, 1, 1, 0]),
            9,
            36,
            14,
        ),
        row(
            "e6",
            "E6/P1",
            LieType::E6,
            6,
            ints(&[1, 0, 0, 0, 0, 0]),
            10,
            27,
            26,
        ),
        row(
            "gr27",
            "Gr(2,7)",
            LieType::GL,
            7,
            ints(&[1, 1, 0, 0, 0, 0, 0]),
            10,
            35,
            20,
        ),
        row(
            "gr36",
            "Gr(3,6)",
            LieType::GL,
            6,
            ints(&[1, 1, 1, 0, 0, 0]),
            10,
            35,
            19,
        ),
    ]
}

pub fn entry(id: &str) -> Result<CatalogEntry> {
    catalog().into_iter().find(|e| e.id == id).ok_or_else(|| {
        let ids: Vec<_> = catalog().iter().map(|e| e.id).collect();
        Error::Validation(format!(
            "unknown variety {id:?}; expected one of {}",
            ids.join(", ")
        ))
    })
}

/// Group data per entry, computed once per process.
pub fn weyl_sum(entry: &CatalogEntry) -> Result<Arc<WeylSum>> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, Arc<WeylSum>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(entry.id) {
        return Ok(hit.clone());
    }
    let rs = entry.root_system()?;
    let nabla = weight_system(&rs, &entry.lambda)?;
    let sum = Arc::new(WeylSum::new(&rs, &entry.lambda, &nabla)?);
    cache.lock().unwrap().insert(entry.id, sum.clone());
    Ok(sum)
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightedFlagVariety {
    #[serde(rename = "variety")]
    pub entry: CatalogEntry,
    pub mu: Coweight,
    pub u: i64,
    pub ambient_weights: Vec<i64>,
    pub dim: usize,
    pub codim: usize,
    pub series: HilbertSeries,
    pub canonical_degree: i64,
}

pub fn make_weighted(entry: &CatalogEntry, mu: &Coweight, u: i64) -> Result<WeightedFlagVariety> {
    if mu.len() != entry.coweight_len() {
        return Err(Error::Validation(format!(
            "{} takes a coweight with {} entries, got {}",
            entry.id,
            entry.coweight_len(),
            mu.len()
        )));
    }
    let sum = weyl_sum(entry)?;
    let series = sum.hilbert_series(mu, u).map_err(|e| match e {
        Error::Integrality(msg) if entry.lambda.coords().iter().any(|c| !c.is_integer()) => {
            Error::Integrality(format!(
                "{msg}; {} has a half-integral highest weight, so <lambda_i, mu> + u is integral \
                 only when sum(mu) is even",
                entry.id
            ))
        }
        other => other,
    })?;
    let ambient_weights = series.denom_exponents().to_vec();
    let dim = flag_dimension(sum.root_system(), &entry.lambda)?;
    let codim = ambient_weights.len() - 1 - dim;
    let sym = numerator_symmetry_check(&series)?;
    let canonical_degree = sym.adjunction - ambient_weights.iter().sum::<i64>();
    Ok(WeightedFlagVariety {
        entry: entry.clone(),
        mu: mu.clone(),
        u,
        ambient_weights,
        dim,
        codim,
        series,
        canonical_degree,
    })
}

/// Closed-form canonical class: `-4u` for `LGr(3,6)`, `-3(s+u)` for `FL(1,3)`.
pub fn closed_form_canonical_degree(entry: &CatalogEntry, mu: &Coweight, u: i64) -> Result<i64> {
    match entry.id {
        "lgr36" => Ok(-4 * u),
        "fl13" => Ok(-3 * (mu.sum() + u)),
        other => Err(Error::Validation(format!(
            "no closed-form canonical class for {other}"
        ))),
    }
}

/// Whether the canonical degree computed from the series matches the closed
/// form.
pub fn canonical_formula_check(entry: &CatalogEntry, mu: &Coweight, u: i64) -> Result<bool> {
    let expected = closed_form_canonical_degree(entry, mu, u)?;
    Ok(make_weighted(entry, mu, u)?.canonical_degree == expected)
}
