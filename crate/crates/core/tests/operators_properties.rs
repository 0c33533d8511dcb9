//! Operator-level laws checked extensionally on the generator family.

use std::sync::Arc;

use derivkit::chart::Chart;
use derivkit::forms::random::{random_vector_form, rng_from_seed};
use derivkit::forms::{BundleForm, ScalarForm};
use derivkit::operators::{Connection, DerivationOp, GeneratorFamily, LieFlavor};

fn charts() -> [Arc<Chart>; 2] {
    [Arc::new(Chart::standard(2).unwrap()), Arc::new(Chart::twisted_builtin(2).unwrap())]
}

#[test]
fn interior_commutators_follow_the_algebraic_bracket() {
    for chart in charts() {
        let family = GeneratorFamily::new(chart.dim(), 2, 3, 2);
        for (k, l) in [(1, 1), (1, 2), (2, 2), (0, 2)] {
            let kf = random_vector_form(&mut rng_from_seed(10 + k as u64), chart.dim(), k, 2);
            let lf = random_vector_form(&mut rng_from_seed(20 + l as u64), chart.dim(), l, 2);
            let lhs = DerivationOp::interior(&kf).graded_commutator(&DerivationOp::interior(&lf));
            let rhs = DerivationOp::interior(&kf.nr_bracket(&lf).unwrap());
            assert_eq!(family.compare(&lhs, &rhs, false).unwrap(), None, "{} k={k} l={l}", chart.label());
        }
    }
}

#[test]
fn lie_derivatives_of_a_flat_connection_follow_the_differential_bracket() {
    for chart in charts() {
        let flat = Connection::trivial(chart.clone(), 2).unwrap();
        let family = GeneratorFamily::new(chart.dim(), 2, 4, 2);
        for (k, l) in [(0, 0), (0, 1), (1, 1)] {
            let kf = random_vector_form(&mut rng_from_seed(30 + k as u64), chart.dim(), k, 1);
            let lf = random_vector_form(&mut rng_from_seed(40 + l as u64), chart.dim(), l, 1);
            let lhs = flat
                .lie_derivative(&kf, LieFlavor::Full)
                .graded_commutator(&flat.lie_derivative(&lf, LieFlavor::Full));
            let rhs = flat.lie_derivative(&kf.fn_bracket(&lf).unwrap(), LieFlavor::Full);
            assert_eq!(family.compare(&lhs, &rhs, false).unwrap(), None, "{} k={k} l={l}", chart.label());
        }
    }
}

/// `∇∇u = F ∧ u` with `F = dω + ω ∧ ω` computed entrywise.
#[test]
fn connection_squares_to_its_curvature() {
    let chart = Arc::new(Chart::twisted_builtin(2).unwrap());
    let rank = 2;
    let conn = Connection::random(&mut rng_from_seed(5), chart.clone(), rank, 2).unwrap();
    let omega = conn.omega();
    let dim = chart.dim();
    let curvature: Vec<Vec<ScalarForm>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    (0..rank).fold(omega[i][j].exterior_d(), |acc, m| {
                        acc.add(&omega[i][m].wedge(&omega[m][j]).unwrap())
                    })
                })
                .collect()
        })
        .collect();
    let by_curvature = DerivationOp::new(2, "F", move |u: &BundleForm| {
        let comps = (0..rank)
            .map(|i| {
                (0..rank).fold(ScalarForm::zero(dim), |acc, j| acc.add(&curvature[i][j].wedge(u.component(j)).unwrap()))
            })
            .collect();
        BundleForm::from_components(dim, comps)
    });
    let nabla = conn.nabla();
    let family = GeneratorFamily::new(dim, rank, 6, 2);
    assert_eq!(family.compare(&nabla.compose(&nabla), &by_curvature, false).unwrap(), None);
    assert!(family.find_nonzero(&by_curvature, false).unwrap().is_some());
}
