use proptest::prelude::*;

use wflag::catalog::{catalog, entry, make_weighted, CatalogEntry};
use wflag::construct::{minimal_u, ConstructedVariety, Op};
use wflag::ideals::{
    buchberger, normal_form, quotient_hilbert_series, Monomial, MonomialOrder, WeightedIdeal,
    WeightedPolynomial,
};
use wflag::lattice::{weyl_group, Coweight};
use wflag::series::{compact_fl13, compact_lgr36, numerator_symmetry_check, q_int, CompactVariant};

const ORDER: usize = 30;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

fn admissible(e: &CatalogEntry, mu: &[i64], shift: i64) -> Option<(Coweight, i64)> {
    let mu = Coweight::new(mu.to_vec());
    let u = minimal_u(e, &mu).unwrap()?;
    Some((mu, u + shift))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn lgr36_closed_form_matches_weyl_sum(mu in prop::collection::vec(-2i64..=2, 3), shift in 0i64..4) {
        let e = entry("lgr36").unwrap();
        let (mu, u) = admissible(&e, &mu, shift).unwrap();
        let weyl = make_weighted(&e, &mu, u).unwrap().series;
        let closed = compact_lgr36(&mu, u, CompactVariant::Corrected).unwrap();
        prop_assert_eq!(closed.expand(ORDER).unwrap(), weyl.expand(ORDER).unwrap());
        prop_assert!(closed.same_function(&weyl));
    }

    #[test]
    fn fl13_closed_form_matches_weyl_sum(mu in prop::collection::vec(-2i64..=3, 4), shift in 0i64..4) {
        let e = entry("fl13").unwrap();
        let (mu, u) = admissible(&e, &mu, shift).unwrap();
        let weyl = make_weighted(&e, &mu, u).unwrap().series;
        let closed = compact_fl13(&mu, u, CompactVariant::Corrected).unwrap();
        prop_assert_eq!(closed.expand(ORDER).unwrap(), weyl.expand(ORDER).unwrap());
    }

    #[test]
    fn series_is_weyl_invariant(id in prop::sample::select(vec!["lgr36", "fl13", "fl12", "g2"]),
                                raw in prop::collection::vec(-2i64..=2, 6),
                                pick in any::<prop::sample::Index>(),
                                shift in 0i64..2) {
        let e = entry(id).unwrap();
        let Some((mu, u)) = admissible(&e, &raw[..e.coweight_len()], shift) else {
            return Ok(());
        };
        let group = weyl_group(&e.root_system().unwrap()).unwrap();
        let w = pick.get(&group);
        let base = make_weighted(&e, &mu, u).unwrap().series;
        let image = make_weighted(&e, &w.apply_transpose(&mu), u).unwrap().series;
        prop_assert_eq!(base, image);
    }

    #[test]
    fn numerators_are_gorenstein(idx in 0usize..8, raw in prop::collection::vec(0i64..=2, 7), shift in 0i64..3) {
        let rows: Vec<_> = catalog().into_iter().filter(|e| !e.slow_path).collect();
        let e = &rows[idx];
        let Some((mu, u)) = admissible(e, &raw[..e.coweight_len()], shift) else {
            return Ok(());
        };
        // half-integral pairings on the spin entry
        let Ok(v) = make_weighted(e, &mu, u) else { return Ok(()) };
        let sym = numerator_symmetry_check(&v.series).unwrap();
        prop_assert!(sym.palindromic, "{} {} {}", e.id, mu, u);
        prop_assert_eq!(v.canonical_degree, sym.adjunction - v.ambient_weights.iter().sum::<i64>());
    }

    #[test]
    fn construction_bookkeeping(picks in prop::collection::vec((0u8..3, 1i64..=4, any::<prop::sample::Index>()), 1..6)) {
        let base: ConstructedVariety = make_weighted(&entry("fl13").unwrap(), &Coweight::new(vec![0, 0, 1, 1]), 0)
            .unwrap()
            .into();
        let mut v = base;
        for (kind, d, idx) in picks {
            let op = match kind {
                0 => Op::Cone(d),
                1 => Op::Section { degree: *idx.get(&v.ambient_weights), quasilinear: true },
                _ => Op::Section { degree: d, quasilinear: false },
            };
            let Ok(next) = v.apply(op) else { continue };
            prop_assert_eq!(next.series_canonical_degree().unwrap(), next.canonical_degree);
            match op {
                Op::Cone(w) => {
                    prop_assert_eq!(next.canonical_degree, v.canonical_degree - w);
                    let back = next.apply(Op::Section { degree: w, quasilinear: true }).unwrap();
                    prop_assert_eq!(&back.series, &v.series);
                    prop_assert_eq!(back.canonical_degree, v.canonical_degree);
                }
                Op::Section { degree, quasilinear: true } => {
                    prop_assert_eq!(&next.series.numerator, &v.series.numerator);
                    prop_assert_eq!(next.canonical_degree, v.canonical_degree + degree);
                }
                Op::Section { degree, quasilinear: false } => {
                    prop_assert_eq!(next.series.numerator.clone(), v.series.numerator.mul_one_minus(degree));
                }
            }
            v = next;
        }
    }
}

fn quadric(coeffs: &[i64]) -> WeightedPolynomial {
    // monomials of degree 2 in three variables
    let monos = [
        [2, 0, 0],
        [1, 1, 0],
        [1, 0, 1],
        [0, 2, 0],
        [0, 1, 1],
        [0, 0, 2],
    ];
    WeightedPolynomial::from_terms(
        &[1, 1, 1],
        monos
            .iter()
            .zip(coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (Monomial(m.to_vec()), q_int(c))),
    )
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn reduced_bases_are_fixed_points(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 1..4),
                                      lex in any::<bool>()) {
        let gens: Vec<_> = rows.iter().map(|r| quadric(r)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let names = vec!["x".to_string(), "y".into(), "z".into()];
        let labels = (1..=gens.len()).map(|i| format!("f{i}")).collect();
        let ideal = WeightedIdeal::new(names, vec![1, 1, 1], gens, labels).unwrap();
        let order = if lex { MonomialOrder::lex(&[1, 1, 1]) } else { MonomialOrder::grevlex(&[1, 1, 1]) };
        let gb = buchberger(&ideal, &order).unwrap();
        let again = buchberger(&gb, &order).unwrap();
        prop_assert_eq!(&again.generators, &gb.generators);
        for g in &ideal.generators {
            prop_assert!(normal_form(g, &gb, &order).unwrap().is_zero());
        }
        let other = if lex { MonomialOrder::grevlex(&[1, 1, 1]) } else { MonomialOrder::lex(&[1, 1, 1]) };
        prop_assert_eq!(
            quotient_hilbert_series(&ideal, &order).unwrap(),
            quotient_hilbert_series(&ideal, &other).unwrap()
        );
    }
}
