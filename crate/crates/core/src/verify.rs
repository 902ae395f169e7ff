//! Golden checks behind `wflag verify`: worked examples, the embedded ideals
//! against the Weyl-group series, and the closed forms on a `(mu, u)` grid.
//!
//! Hard checks decide the exit status. Informational checks report values
//! whose comparison depends on an external convention and never fail a run.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::{entry, make_weighted, CatalogEntry};
use crate::construct::{dominant_coweights, minimal_u, parse_ops, ConstructedVariety};
use crate::error::{Error, Result};
use crate::ideals::{
    appendix_ideal, pure_power_present, quotient_hilbert_series, restrict_to_stratum,
    AppendixIdeal, MonomialOrder, FL13_WEIGHTS_MU0011_U0, FL13_WEIGHTS_MU0111_UM1,
    LGR36_WEIGHTS_MU100_U2,
};
use crate::invariants::{degree, fano_genus, quasipoly_fit};
use crate::lattice::Coweight;
use crate::series::{
    compact_fl13, compact_lgr36, numerator_symmetry_check, CompactVariant, HilbertSeries,
    LaurentPoly, Q,
};

/// Coefficients compared on the compact-form grid.
pub const GRID_ORDER: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Worked examples; named `paper` on the command line.
    #[serde(rename = "paper")]
    Examples,
    Appendix,
    Compact,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "examples" => Ok(Suite::Examples),
            "appendix" => Ok(Suite::Appendix),
            "compact" => Ok(Suite::Compact),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!(
                "unknown suite {other:?}; expected paper, appendix, compact or all"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Examples => "paper",
            Suite::Appendix => "appendix",
            Suite::Compact => "compact",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Informational checks never affect the exit status.
    pub hard: bool,
    pub detail: String,
}

impl Check {
    fn hard(suite: Suite, name: &str, outcome: Result<String>) -> Check {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        Check {
            suite,
            name: name.into(),
            passed,
            hard: true,
            detail,
        }
    }

    fn info(suite: Suite, name: &str, agrees: bool, detail: String) -> Check {
        Check {
            suite,
            name: name.into(),
            passed: agrees,
            hard: false,
            detail,
        }
    }

    pub fn failed_hard(&self) -> bool {
        self.hard && !self.passed
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(msg()))
    }
}

fn weighted(id: &str, mu: &[i64], u: i64) -> Result<ConstructedVariety> {
    Ok(make_weighted(&entry(id)?, &Coweight::new(mu.to_vec()), u)?.into())
}

fn construct(id: &str, mu: &[i64], u: i64, ops: &str) -> Result<ConstructedVariety> {
    weighted(id, mu, u)?.apply_all(&parse_ops(ops)?)
}

/// `w^k` pairs, ascending, as a compact multiset.
pub fn weight_multiset(weights: &[i64]) -> Vec<(i64, usize)> {
    let mut out: Vec<(i64, usize)> = Vec::new();
    for &w in weights {
        match out.last_mut() {
            Some((x, k)) if *x == w => *k += 1,
            _ => out.push((w, 1)),
        }
    }
    out
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn check_numerator(got: &LaurentPoly, want: &[i64]) -> Result<()> {
    let want = LaurentPoly::from_int_coeffs(want);
    ensure(*got == want, || format!("numerator {got}, expected {want}"))
}

fn check_denominator(series: &HilbertSeries, want: &[(i64, usize)]) -> Result<()> {
    let got = weight_multiset(series.denom_exponents());
    ensure(got == want, || {
        format!("weights {got:?}, expected {want:?}")
    })
}

fn calabi_yau(v: &ConstructedVariety, want_degree: Q) -> Result<String> {
    ensure(v.dim == 3, || format!("dimension {}", v.dim))?;
    ensure(v.canonical_degree == 0, || {
        format!("K = O({})", v.canonical_degree)
    })?;
    let d = degree(v)?;
    ensure(d == want_degree, || {
        format!("D^3 = {d}, expected {want_degree}")
    })?;
    Ok(format!("K ~ 0, D^3 = {d}"))
}

fn fano(v: &ConstructedVariety, want_degree: i64, want_genus: i64) -> Result<String> {
    ensure(v.canonical_degree == -1, || {
        format!("K = O({})", v.canonical_degree)
    })?;
    let d = degree(v)?;
    let g = fano_genus(v)?;
    ensure(
        d == Q::from_integer(want_degree.into()) && g == want_genus,
        || format!("(-K)^3 = {d}, genus {g}; expected {want_degree}, {want_genus}"),
    )?;
    Ok(format!("(-K)^3 = {d}, genus {g}"))
}

const LGR36_STRAIGHT: [i64; 11] = [1, 0, -21, 64, -70, 0, 70, -64, 21, 0, -1];
const FL13_STRAIGHT: [i64; 13] = [1, 0, -36, 160, -315, 288, 0, -288, 315, -160, 36, 0, -1];

fn lgr36_straight() -> Result<String> {
    let v = weighted("lgr36", &[0, 0, 0], 1)?;
    check_numerator(&v.series.numerator, &LGR36_STRAIGHT)?;
    check_denominator(&v.series, &[(1, 14)])?;
    ensure(v.canonical_degree == -4, || {
        format!("K = O({})", v.canonical_degree)
    })?;
    let f = fano(
        &v.apply_all(&parse_ops("section:1,section:1,section:1")?)?,
        16,
        9,
    )?;
    Ok(format!("K = O(-4); triple hyperplane section: {f}"))
}

fn lgr36_weighted() -> Result<String> {
    let v = weighted("lgr36", &[1, 0, 0], 2)?;
    check_denominator(&v.series, &[(1, 5), (2, 4), (3, 5)])?;
    ensure(v.canonical_degree == -8, || {
        format!("K = O({})", v.canonical_degree)
    })?;
    let num = &v.series.numerator;
    let head = [(0, 1), (2, -1), (3, -4), (4, -7), (5, 12)];
    let tail = [(15, -12), (16, 7), (17, 4), (18, 1), (20, -1)];
    for (e, c) in head.iter().chain(&tail) {
        ensure(num.coeff(*e) == Q::from_integer((*c).into()), || {
            format!("coefficient of t^{e} is {}, expected {c}", num.coeff(*e))
        })?;
    }
    ensure(num.max_exp() == Some(20), || format!("numerator {num}"))?;
    let x = v.apply_all(&parse_ops("section:3,section:3,section:2")?)?;
    calabi_yau(&x, q(64, 9)).map(|s| format!("K = O(-8); after (3,3,2): {s}"))
}

fn fl13_straight() -> Result<String> {
    let v = weighted("fl13", &[0, 0, 0, 0], 1)?;
    check_numerator(&v.series.numerator, &FL13_STRAIGHT)?;
    check_denominator(&v.series, &[(1, 15)])?;
    let f = fano(&v.apply_all(&parse_ops("section:1,section:1")?)?, 20, 11)?;
    Ok(format!("two hyperplane sections: {f}"))
}

fn fl13_example(mu: &[i64], u: i64, weights: &[(i64, usize)], want: Q) -> Result<String> {
    let v = weighted("fl13", mu, u)?;
    check_denominator(&v.series, weights)?;
    ensure(v.canonical_degree == -6, || {
        format!("K = O({})", v.canonical_degree)
    })?;
    let x = v.apply_all(&parse_ops("cone:1,section:2,section:2,section:3")?)?;
    calabi_yau(&x, want).map(|s| format!("K = O(-6); cone + (2,2,3): {s}"))
}

fn dc2_report(label: &str, v: Result<ConstructedVariety>, reference: i64) -> Check {
    let name = format!("{label} D.c2 estimate");
    match v.and_then(|v| quasipoly_fit(&v, None)) {
        Ok(qp) => {
            let est = qp.dc2_estimate();
            let agrees = est == Q::from_integer(reference.into());
            Check::info(
                Suite::Examples,
                &name,
                agrees,
                format!("12 x mean linear coefficient = {est}, reference value {reference}"),
            )
        }
        Err(e) => Check::info(Suite::Examples, &name, false, e.to_string()),
    }
}

pub fn examples_suite() -> Vec<Check> {
    let s = Suite::Examples;
    vec![
        Check::hard(s, "lgr36 straight, K and Fano genus 9", lgr36_straight()),
        Check::hard(
            s,
            "lgr36 mu=(1,0,0) u=2 and its CY3 section",
            lgr36_weighted(),
        ),
        Check::hard(s, "fl13 straight and Fano genus 11", fl13_straight()),
        Check::hard(
            s,
            "fl13 mu=(0,0,1,1) u=0 and its CY3 section",
            fl13_example(&[0, 0, 1, 1], 0, &[(1, 4), (2, 7), (3, 4)], q(76, 9)),
        ),
        Check::hard(
            s,
            "fl13 mu=(0,1,1,1) u=-1 and its CY3 section",
            fl13_example(&[0, 1, 1, 1], -1, &[(1, 3), (2, 9), (3, 3)], q(127, 18)),
        ),
        dc2_report(
            "lgr36 (3,3,2)",
            construct("lgr36", &[1, 0, 0], 2, "section:3,section:3,section:2"),
            48,
        ),
        dc2_report(
            "fl13 (0,0,1,1) cone + (2,2,3)",
            construct(
                "fl13",
                &[0, 0, 1, 1],
                0,
                "cone:1,section:2,section:2,section:3",
            ),
            48,
        ),
        dc2_report(
            "fl13 (0,1,1,1) cone + (2,2,3)",
            construct(
                "fl13",
                &[0, 1, 1, 1],
                -1,
                "cone:1,section:2,section:2,section:3",
            ),
            46,
        ),
    ]
}

fn gb_matches(
    id: AppendixIdeal,
    weights: &[i64],
    variety: &str,
    mu: &[i64],
    u: i64,
) -> Result<String> {
    let ideal = appendix_ideal(id, weights)?;
    let want = make_weighted(&entry(variety)?, &Coweight::new(mu.to_vec()), u)?.series;
    let gre = quotient_hilbert_series(&ideal, &MonomialOrder::grevlex(weights))?;
    let lex = quotient_hilbert_series(&ideal, &MonomialOrder::lex(weights))?;
    ensure(gre == want, || {
        format!("grevlex quotient {gre}, Weyl series {want}")
    })?;
    ensure(lex == gre, || {
        format!("lex quotient {lex}, grevlex quotient {gre}")
    })?;
    Ok(format!(
        "{} generators; grevlex = lex = Weyl series",
        ideal.generators.len()
    ))
}

fn weight2_pure_powers() -> Result<String> {
    let ideal = appendix_ideal(AppendixIdeal::Lgr36, &LGR36_WEIGHTS_MU100_U2)?;
    let keep: Vec<usize> = (0..ideal.nvars())
        .filter(|&i| ideal.weights[i] == 2)
        .collect();
    let stratum = restrict_to_stratum(&ideal, &keep);
    let found: Vec<String> = keep
        .iter()
        .filter(|&&i| pure_power_present(&stratum, i, 2))
        .map(|&i| ideal.names[i].clone())
        .collect();
    let want = ["x7", "x8", "x10"];
    let missing: Vec<&str> = want
        .iter()
        .copied()
        .filter(|w| !found.iter().any(|f| f == w))
        .collect();
    ensure(missing.is_empty(), || {
        format!("no pure square in {missing:?}; found {found:?}")
    })?;
    Ok(format!(
        "pure squares on the weight-2 stratum: {}",
        found.join(", ")
    ))
}

pub fn appendix_suite() -> Vec<Check> {
    let s = Suite::Appendix;
    vec![
        Check::hard(
            s,
            "lgr36 ideal, unit weights vs straight series",
            gb_matches(AppendixIdeal::Lgr36, &[1; 14], "lgr36", &[0, 0, 0], 1),
        ),
        Check::hard(
            s,
            "fl13 ideal, unit weights vs straight series",
            gb_matches(AppendixIdeal::Fl13, &[1; 15], "fl13", &[0, 0, 0, 0], 1),
        ),
        Check::hard(
            s,
            "lgr36 ideal, weights of mu=(1,0,0) u=2",
            gb_matches(
                AppendixIdeal::Lgr36,
                &LGR36_WEIGHTS_MU100_U2,
                "lgr36",
                &[1, 0, 0],
                2,
            ),
        ),
        Check::hard(
            s,
            "fl13 ideal, weights of mu=(0,0,1,1) u=0",
            gb_matches(
                AppendixIdeal::Fl13,
                &FL13_WEIGHTS_MU0011_U0,
                "fl13",
                &[0, 0, 1, 1],
                0,
            ),
        ),
        Check::hard(
            s,
            "fl13 ideal, weights of mu=(0,1,1,1) u=-1",
            gb_matches(
                AppendixIdeal::Fl13,
                &FL13_WEIGHTS_MU0111_UM1,
                "fl13",
                &[0, 1, 1, 1],
                -1,
            ),
        ),
        Check::hard(s, "lgr36 weight-2 stratum", weight2_pure_powers()),
    ]
}

/// Admissible `(mu, u)` with `mu` dominant in `[0, mu_bound]` and the `u_span`
/// smallest admissible values of `u`.
pub fn compact_grid(
    entry: &CatalogEntry,
    mu_bound: i64,
    u_span: i64,
) -> Result<Vec<(Coweight, i64)>> {
    let mut out = Vec::new();
    for mu in dominant_coweights(entry, mu_bound)? {
        if let Some(u) = minimal_u(entry, &mu)? {
            out.extend((0..u_span).map(|k| (mu.clone(), u + k)));
        }
    }
    Ok(out)
}

/// Outcome of comparing one closed form against the Weyl sum on a grid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub points: usize,
    pub corrected_agree: usize,
    pub stated_agree: usize,
    pub palindromic: usize,
    /// First disagreement of the corrected form, if any.
    pub first_failure: Option<String>,
}

fn same_to_order(a: &HilbertSeries, b: &HilbertSeries, order: usize) -> Result<bool> {
    Ok(a.same_function(b) && a.expand_raw(order)? == b.expand_raw(order)?)
}

pub fn compact_grid_report(id: &str, mu_bound: i64, u_span: i64) -> Result<GridReport> {
    let e = entry(id)?;
    let form = match id {
        "lgr36" => compact_lgr36,
        "fl13" => compact_fl13,
        other => {
            return Err(Error::Validation(format!("no closed form for {other}")));
        }
    };
    let mut r = GridReport::default();
    for (mu, u) in compact_grid(&e, mu_bound, u_span)? {
        let weyl = make_weighted(&e, &mu, u)?.series;
        r.points += 1;
        if numerator_symmetry_check(&weyl)?.palindromic {
            r.palindromic += 1;
        }
        if same_to_order(&form(&mu, u, CompactVariant::Corrected)?, &weyl, GRID_ORDER)? {
            r.corrected_agree += 1;
        } else if r.first_failure.is_none() {
            r.first_failure = Some(format!("mu={mu} u={u}"));
        }
        if same_to_order(&form(&mu, u, CompactVariant::AsStated)?, &weyl, GRID_ORDER)? {
            r.stated_agree += 1;
        }
    }
    Ok(r)
}

fn grid_checks(id: &str, mu_bound: i64, u_span: i64) -> Vec<Check> {
    let s = Suite::Compact;
    match compact_grid_report(id, mu_bound, u_span) {
        Ok(r) => {
            let ok = r.points >= 20 && r.corrected_agree == r.points && r.palindromic == r.points;
            let corrected = if ok {
                Ok(format!(
                    "{} grid points agree to order {GRID_ORDER}; all numerators palindromic",
                    r.points
                ))
            } else {
                Err(Error::Internal(format!(
                    "{}/{} points agree, {} palindromic, first failure {:?}",
                    r.corrected_agree, r.points, r.palindromic, r.first_failure
                )))
            };
            vec![
                Check::hard(
                    s,
                    &format!("{id} corrected closed form vs Weyl sum"),
                    corrected,
                ),
                Check::info(
                    s,
                    &format!("{id} closed form as stated vs Weyl sum"),
                    r.stated_agree == r.points,
                    format!("{}/{} points agree", r.stated_agree, r.points),
                ),
            ]
        }
        Err(e) => vec![Check::hard(s, &format!("{id} grid"), Err(e))],
    }
}

pub fn compact_suite() -> Vec<Check> {
    let mut out = grid_checks("lgr36", 2, 3);
    out.extend(grid_checks("fl13", 2, 3));
    out
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Examples => examples_suite(),
        Suite::Appendix => appendix_suite(),
        Suite::Compact => compact_suite(),
        Suite::All => {
            let mut out = examples_suite();
            out.extend(appendix_suite());
            out.extend(compact_suite());
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets() {
        assert_eq!(
            weight_multiset(&[1, 1, 2, 3, 3, 3]),
            vec![(1, 2), (2, 1), (3, 3)]
        );
        assert!(weight_multiset(&[]).is_empty());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Examples, Suite::Appendix, Suite::Compact, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn grids_are_large_enough() {
        assert!(compact_grid(&entry("lgr36").unwrap(), 2, 3).unwrap().len() >= 20);
        assert!(compact_grid(&entry("fl13").unwrap(), 2, 3).unwrap().len() >= 20);
    }

    #[test]
    fn worked_examples_pass() {
        let checks = examples_suite();
        assert_eq!(checks.iter().filter(|c| c.hard).count(), 5);
        for c in &checks {
            assert!(!c.failed_hard(), "{}: {}", c.name, c.detail);
        }
    }
}
