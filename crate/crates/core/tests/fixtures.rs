mod common;

use modcurve::error::Error;
use modcurve::exactlinalg::{echelon_reduce, RatMatrix};
use modcurve::ingest::{parse_basis, BasisFile};
use modcurve::surface::gamma0_invariants;
use modcurve::weierstrass::{
    monomials, subspace_dimension, weierstrass_test, wronskian_criterion, SpanStatus,
};
use modcurve::wronskian::{cusp_order_identity_check, span_valuations};
use modcurve::{HyperellipticStatus, QSeries};

use common::{evaluate, fixture, golden_rows};

const LEVELS: [u64; 8] = [34, 35, 37, 38, 44, 54, 55, 60];

fn signature(n: u64) -> modcurve::SurfaceSignature {
    gamma0_invariants(n as i64).unwrap().signature
}

#[test]
fn fixtures_have_the_expected_genus() {
    for n in LEVELS {
        let basis = fixture(n);
        assert_eq!(basis.genus() as u32, signature(n).genus, "X_0({n})");
        assert!(basis.prec >= 11);
        for f in &basis.forms {
            assert!(
                f.series.valuation().unwrap() >= 1,
                "X_0({n}) {} is not cuspidal",
                f.label
            );
        }
    }
}

#[test]
fn fixtures_round_trip_through_text() {
    for n in LEVELS {
        let basis = fixture(n);
        let text = BasisFile::from_cusp_basis(&basis).to_text();
        assert_eq!(parse_basis(&text).unwrap(), basis, "X_0({n})");
    }
}

#[test]
fn published_combinations_evaluate_to_their_expansions() {
    for (name, n) in [("x0_34_m4_rows.txt", 34), ("x0_55_m4_rows.txt", 55)] {
        let basis = fixture(n);
        let (prec, rows) = golden_rows(name, basis.genus());
        for row in rows {
            assert_eq!(
                evaluate(&row.combination, &basis.series(), prec),
                row.expansion,
                "{name}: {}",
                row.combination_text
            );
        }
    }
}

#[test]
fn x0_34_rows_match_the_published_rows_up_to_scalar() {
    let basis = fixture(34);
    let report = weierstrass_test(&basis, 4, &signature(34), None).unwrap();
    let (prec, rows) = golden_rows("x0_34_m4_rows.txt", 3);
    assert_eq!(report.rows.len(), rows.len());
    for (ours, theirs) in report.rows.iter().zip(&rows) {
        let ours = ours.truncate(prec);
        let v = ours.valuation().unwrap();
        let c = theirs.expansion.coeffs()[v].clone() / ours.coeffs()[v].clone();
        assert_eq!(
            ours.scale(&c),
            theirs.expansion,
            "{}",
            theirs.combination_text
        );
    }
}

#[test]
fn x0_34_monomial_pivots_and_span_valuations() {
    let basis = fixture(34);
    let series: Vec<QSeries> = monomials(&basis, 4)
        .unwrap()
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    assert_eq!(series.len(), 6);
    let rows = series.iter().map(|s| s.coeffs()[..11].to_vec()).collect();
    let ech = echelon_reduce(&RatMatrix::from_rows(rows).unwrap());
    assert_eq!(ech.pivots, vec![2, 3, 4, 5, 6, 7]);
    let sv = span_valuations(&series).unwrap();
    assert_eq!(sv.valuations, vec![2, 3, 4, 5, 6, 7]);
    assert_eq!(sv.total, 27);
    assert!(cusp_order_identity_check(&series, 4).unwrap().holds);
}

#[test]
fn x0_34_weight_two_is_not_weierstrass() {
    let basis = fixture(34);
    let report = weierstrass_test(&basis, 2, &signature(34), None).unwrap();
    assert_eq!(report.gap_sequence, vec![1, 2, 3]);
    assert_eq!(report.verdict(), Some(false));
}

#[test]
fn x0_55_weight_four_is_weierstrass() {
    let basis = fixture(55);
    let report = weierstrass_test(
        &basis,
        4,
        &signature(55),
        Some(HyperellipticStatus::NotHyperelliptic),
    )
    .unwrap();
    assert_eq!(report.expected_dim, 12);
    assert_eq!(report.monomial_count, 15);
    assert_eq!(report.relations.len(), 3);
    assert_eq!(
        report.gap_sequence,
        vec![2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 14]
    );
    assert_eq!(report.verdict(), Some(true));
    // The Wronskian order is the gap sum, 93, against the bound 1 + 12 * 15 / 2 = 91.
    let w = wronskian_criterion(&report.rows, 4).unwrap();
    assert_eq!((w.order, w.bound), (93, 91));
    assert!(w.is_weierstrass);
}

#[test]
fn relations_annihilate_the_monomials() {
    let basis = fixture(55);
    let report = weierstrass_test(&basis, 4, &signature(55), None).unwrap();
    let series: Vec<QSeries> = monomials(&basis, 4)
        .unwrap()
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    for rel in &report.relations {
        let mut acc = QSeries::zero(report.precision);
        for (c, s) in rel.iter().zip(&series) {
            acc = &acc + &s.scale(c);
        }
        assert!(acc.is_zero());
    }
}

#[test]
fn hyperelliptic_x0_35_spans_m_plus_one_dimensions() {
    let basis = fixture(35);
    let sig = signature(35);
    assert_eq!(subspace_dimension(&basis, 6).unwrap(), 7);
    let report = weierstrass_test(&basis, 6, &sig, None).unwrap();
    assert_eq!(report.rank, 7);
    assert_eq!(report.expected_dim, 10);
    assert_eq!(report.span_status, SpanStatus::NotGuaranteed);
    assert_eq!(report.verdict(), None);
    let err = weierstrass_test(&basis, 6, &sig, Some(HyperellipticStatus::Hyperelliptic));
    assert!(matches!(
        err,
        Err(Error::HyperellipticUnsupported {
            degree: 3,
            rank: 7,
            expected: 10
        })
    ));
}

#[test]
fn genus_two_monomials_are_a_basis_of_their_span() {
    let basis = fixture(37);
    assert_eq!(basis.genus(), 2);
    for m in (4..=12u32).step_by(2) {
        assert_eq!(
            subspace_dimension(&basis, m).unwrap(),
            m as usize / 2 + 1,
            "m = {m}"
        );
    }
}

#[test]
fn rank_deficit_on_a_non_hyperelliptic_curve_is_an_error() {
    // X_0(35) mislabelled as non-hyperelliptic.
    let basis = fixture(35);
    let err = weierstrass_test(
        &basis,
        4,
        &signature(35),
        Some(HyperellipticStatus::NotHyperelliptic),
    );
    assert!(matches!(
        err,
        Err(Error::RankDeficit {
            rank: 5,
            expected: 6
        })
    ));
}

#[test]
fn gap_and_wronskian_verdicts_agree_on_other_levels() {
    for n in [38u64, 44, 54, 60] {
        let basis = fixture(n);
        for m in [2u32, 4] {
            let report = weierstrass_test(&basis, m, &signature(n), None).unwrap();
            let w = wronskian_criterion(&report.rows, m).unwrap();
            assert_eq!(w.is_weierstrass, report.is_weierstrass, "X_0({n}), m = {m}");
            assert_eq!(w.order, report.gap_sequence.iter().sum::<usize>());
        }
    }
}

#[test]
fn short_fixture_is_a_precision_error() {
    let basis = fixture(34);
    let short = modcurve::CuspBasis::from_series(
        "34",
        basis.series().iter().map(|s| s.truncate(10)).collect(),
    )
    .unwrap();
    assert!(matches!(
        weierstrass_test(&short, 4, &signature(34), None),
        Err(Error::Precision(_))
    ));
}

#[test]
fn complete_gap_sequences_lie_in_the_window() {
    for n in [34u64, 38, 44, 54, 55, 60] {
        let basis = fixture(n);
        for m in [4u32, 6] {
            let report = weierstrass_test(&basis, m, &signature(n), None).unwrap();
            assert_eq!(report.rank, report.expected_dim, "X_0({n}), m = {m}");
            let lo = m as usize / 2;
            assert!(
                report
                    .gap_sequence
                    .iter()
                    .all(|&i| (lo..=report.criterion_bound).contains(&i)),
                "X_0({n}), m = {m}: {:?}",
                report.gap_sequence
            );
        }
    }
}
