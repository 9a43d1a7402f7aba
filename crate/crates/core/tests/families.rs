mod common;

use polyseq::families::{
    cheby_series_p, family_ak_closed, family_hessenberg, family_pnh_closed, hermite_exp_p, operator_form_h,
};
use polyseq::linearization::{lin_tensor_direct, required_size};
use polyseq::matrix::{lower_tri_inverse, poly_of_matrix};
use polyseq::orthogonal::{orthogonality_table, ThreeTermRecurrence};
use polyseq::rational::{int, ratio};
use polyseq::{Error, FamilyParams, HSpec, SequencePair};

fn params() -> Vec<(FamilyParams, HSpec)> {
    let mut out = Vec::new();
    for (a, b) in [(int(1), int(0)), (ratio(-2, 3), ratio(5, 2)), (int(3), int(-1))] {
        out.push((
            FamilyParams::chebyshev(a.clone(), b.clone()).unwrap(),
            HSpec::Chebyshev { a: a.clone(), b: b.clone() },
        ));
        out.push((
            FamilyParams::hermite(a.clone(), b.clone()).unwrap(),
            HSpec::Hermite { a: a.clone(), b: b.clone() },
        ));
        out.push((FamilyParams::charlier(a.clone()).unwrap(), HSpec::Charlier { a }));
    }
    out
}

#[test]
fn operator_form_matches_entrywise_h() {
    let size = 9;
    for (p, _) in params() {
        let h = family_hessenberg(&p, size);
        let op = operator_form_h(&p, size);
        // X D loses its last diagonal entry to truncation.
        assert_eq!(op.first_difference(&h, size - 1, size), None, "{p:?}");
    }
}

#[test]
fn closed_forms_agree_with_generic_computation() {
    let n_max = 5;
    let size = required_size(n_max);
    for (p, spec) in params() {
        let pair = SequencePair::from_spec(&spec, size).unwrap();
        for n in 0..=n_max {
            let generic = poly_of_matrix(&pair.polys()[n], pair.h());
            let closed = family_pnh_closed(&p, n, size).unwrap();
            assert_eq!(closed.first_difference(&generic, generic.exact_rows(), size), None, "{p:?} n={n}");
        }
        let tensor = lin_tensor_direct(&pair, n_max).unwrap();
        for k in 0..=2 * n_max {
            assert_eq!(family_ak_closed(&p, k, n_max).unwrap(), tensor.slice(k).to_vec(), "{p:?} k={k}");
        }
    }
}

#[test]
fn families_are_orthogonal_with_expected_norms() {
    let n_max = 6;
    for (p, spec) in params() {
        let pair = SequencePair::from_spec(&spec, required_size(n_max)).unwrap();
        let g = orthogonality_table(&pair, n_max).unwrap();
        for (n, row) in g.iter().enumerate() {
            for (m, v) in row.iter().enumerate() {
                let want = if n == m { p.weight(n) } else { int(0) };
                assert_eq!(v, &want, "{p:?} ({n},{m})");
            }
        }
        let r = ThreeTermRecurrence::from_spec(&spec, 8).unwrap();
        assert_eq!(r.alpha_product(5), p.weight(5));
    }
}

#[test]
fn series_reproduce_p() {
    let size = 10;
    for (p, spec) in params() {
        let pair = SequencePair::from_spec(&spec, size).unwrap();
        match spec {
            HSpec::Chebyshev { .. } => {
                assert_eq!(cheby_series_p(&p, size).unwrap().rows(), pair.p().rows());
                assert_eq!(hermite_exp_p(&p, size, false).unwrap_err(), Error::WrongFamily {
                    expected: "hermite",
                    got: "chebyshev",
                });
            }
            HSpec::Hermite { .. } => {
                assert_eq!(hermite_exp_p(&p, size, false).unwrap().rows(), pair.p().rows());
                assert_eq!(hermite_exp_p(&p, size, true).unwrap().rows(), pair.a().rows());
                assert_eq!(lower_tri_inverse(pair.p()).unwrap().rows(), pair.a().rows());
            }
            _ => assert!(cheby_series_p(&p, size).is_err()),
        }
    }
}
