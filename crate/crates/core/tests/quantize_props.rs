mod common;

use geomquant::cbcst::{Cbcst, CbcstBuilder};
use geomquant::cybe::GeomRMatrix;
use geomquant::fixtures;
use geomquant::geom::{FormalDiffeo, VectorField};
use geomquant::lie::{LieAction, LieAlgebra};
use geomquant::poly::{HSeries, MPoly, Matrix};
use geomquant::quantize::{check_rack_case, quantize, QuantumTuple, RMatrixQ};
use num_rational::BigRational;

const ORDER: usize = 3;
const SEEDS: u64 = 21;

#[test]
fn random_quantizations_solve_the_braid_equation() {
    for seed in 0..SEEDS {
        let c = common::random_tuple(seed);
        let r = c.to_rmatrix().unwrap();
        let rq = quantize(&c, ORDER).unwrap();
        let braid = rq.check_braid().unwrap();
        assert!(braid.passed, "seed {}: {:?}", seed, braid.witness);
        let limit = rq.check_classical_limit(&r);
        assert!(limit.passed, "seed {}: {}", seed, limit.detail);
        assert_eq!(rq.is_unitary().unwrap(), r.check_unitarity(), "seed {}", seed);
    }
}

#[test]
fn random_quantizations_have_the_expected_first_order_terms() {
    for seed in 0..SEEDS {
        let r = common::random_tuple(seed).to_rmatrix().unwrap();
        let b = CbcstBuilder::from_rmatrix(&r).unwrap();
        let rq = quantize(b.cbcst(), 2).unwrap();
        let item = rq.check_first_order(&b).unwrap();
        assert!(item.passed, "seed {}: {:?}", seed, item.witness);
    }
}

#[test]
fn exponentiated_tuples_are_equivariant() {
    for seed in 0..SEEDS {
        let q = QuantumTuple::new(&common::random_tuple(seed), ORDER).unwrap();
        let eq = q.check_psi_equivariance().unwrap();
        assert!(eq.passed, "seed {}: {:?}", seed, eq.witness);
        let inv = q.check_inverse_action().unwrap();
        assert!(inv.passed, "seed {}: {:?}", seed, inv.witness);
    }
}

#[test]
fn racks_fix_the_first_factor() {
    for seed in 0..12 {
        let r = common::random_rack(seed);
        assert!(r.check_cybe().passed, "seed {}", seed);
        let (rq, item) = check_rack_case(&r, ORDER).unwrap();
        assert!(item.passed, "seed {}: {:?}", seed, item.witness);
        assert!(rq.check_braid().unwrap().passed, "seed {}", seed);
        assert!(rq.check_classical_limit(&r).passed, "seed {}", seed);
    }
}

#[test]
fn rack_case_rejects_a_terms() {
    assert!(check_rack_case(&fixtures::rmatrix(), ORDER).is_err());
}

#[test]
fn identity_r_matrix() {
    let id = RMatrixQ::identity(2, 4);
    assert!(id.check_braid().unwrap().passed);
    assert!(id.is_unitary().unwrap());
    assert!(id.classical_limit().is_zero());
    assert!(id.check_classical_limit(&GeomRMatrix::zero(2)).passed);
}

#[test]
fn perturbed_second_order_coefficient_breaks_the_braid_equation() {
    let rq = quantize(&fixtures::cbcst().specialize_eps(&BigRational::from_integer(1.into())), ORDER).unwrap();
    let mut images = rq.map().images().to_vec();
    let m = images[0].arity();
    let bumped = images[0].coeff(2) + &MPoly::var(m, 0).pow(2);
    images[0].set_coeff(2, bumped);
    let bad = RMatrixQ::new(3, FormalDiffeo::new(images).unwrap()).unwrap();
    let item = bad.check_braid().unwrap();
    assert!(!item.passed);
    let order: usize = item.detail.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(order <= 3, "{}", item.detail);
    assert!(item.witness[0].location.contains("coordinate"));
}

#[test]
fn trivial_tuple_quantizes_to_the_identity() {
    let n = 1;
    let c = Cbcst::new(
        n,
        LieAlgebra::abelian(1),
        LieAlgebra::abelian(1),
        LieAction::zero(1, 1),
        vec![VectorField::zero(n)],
        vec![VectorField::zero(n)],
        Matrix::identity(1),
        vec![MPoly::var(n, 0)],
    )
    .unwrap();
    assert!(c.validate().passed());
    assert!(c.to_rmatrix().unwrap().is_zero());
    let rq = quantize(&c, 4).unwrap();
    assert!(rq.map().is_identity());
    assert!(quantize(&c, 1).is_err());
}

#[test]
fn translation_tuple_needs_equivariance() {
    let n = 1;
    let c = Cbcst::new(
        n,
        LieAlgebra::abelian(1),
        LieAlgebra::abelian(1),
        LieAction::zero(1, 1),
        vec![VectorField::coordinate(n, 0)],
        vec![VectorField::zero(n)],
        Matrix::identity(1),
        vec![MPoly::var(n, 0)],
    )
    .unwrap();
    let rep = c.validate();
    assert!(rep.failures().any(|i| i.name.contains("equivarian")));
    assert!(quantize(&c, 2).is_err());
}

#[test]
fn series_and_quantization_share_truncation() {
    let rq = quantize(&fixtures::cbcst().specialize_eps(&BigRational::from_integer(0.into())), 2).unwrap();
    assert_eq!(rq.order(), 2);
    assert!(rq.map().images().iter().all(|s: &HSeries| s.order() == 2));
    assert!(rq.is_unitary().unwrap());
}
