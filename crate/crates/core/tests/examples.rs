//! Worked examples for each public operation, with expected values either
//! quoted from the source displays or computed independently by hand.

use cmtriv::criteria::{
    compute_alpha_beta_d, d_is_admissible, genus_bound, j_inverse_between, j_inverse_on_quotient, prime_behavior,
};
use cmtriv::matrix::{determinant, kernel_basis, rank_mod_p, smith_p_local};
use cmtriv::oracle::{enumerate_span, oracle_agree, oracle_quotient_order, OracleOp};
use cmtriv::wedge::{knot_invariants, knot_matrix, wedge};
use cmtriv::{
    build_model, classify, named_construction_str, verify_lemma, Automorphism, CaseTag, ConstructionExtras, Error,
    GaloisModel, Lattice, LemmaId, ModelParams, Outcome, PLocal, PMatrix, Prime, PrimeLabel, Val,
};

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn v(xs: &[i64]) -> Vec<PLocal> {
    xs.iter().map(|&x| PLocal::from_int(x)).collect()
}

fn lat(prime: u64, vs: &[&[i64]]) -> Lattice {
    Lattice::from_i64(vs[0].len(), p(prime), vs)
}

fn deg6(prime: u64, a: i64, b: i64, c: i64) -> GaloisModel {
    build_model(ModelParams::deg6(prime, a, b, c).unwrap(), true).unwrap()
}

fn deg4ng(prime: u64, a: i64, b: i64) -> GaloisModel {
    build_model(ModelParams::deg4ng(prime, a, b).unwrap(), true).unwrap()
}

fn construction(m: &GaloisModel, name: &str) -> Lattice {
    named_construction_str(m, name, &ConstructionExtras::default()).unwrap()
}

// scalars and matrices

#[test]
fn valuations() {
    assert_eq!(PLocal::from_int(50).valuation(p(5)), Val::Fin(2));
    assert_eq!(PLocal::zero().valuation(p(5)), Val::Inf);
    assert_eq!(PLocal::from_ratio(3, 4, p(5)).unwrap().valuation(p(5)), Val::Fin(0));
    assert_eq!(PLocal::from_ratio(1, 5, p(5)), Err(Error::NotPIntegral));
}

#[test]
fn smith_rank_determinant_kernel() {
    let m = PMatrix::from_i64(p(5), &[&[1, 0, 0], &[0, 2, 1], &[0, -1, 2]]);
    assert_eq!(smith_p_local(&m).exponents, vec![Val::Fin(0), Val::Fin(0), Val::Fin(1)]);
    assert_eq!(smith_p_local(&PMatrix::zeros(2, 2, p(5))).exponents, vec![Val::Inf, Val::Inf]);

    let k = |a: i64, b: i64| PMatrix::from_i64(p(3), &[&[1, 0, 0], &[0, 1, a], &[-1, 0, a + b], &[0, -1, b]]);
    assert_eq!(rank_mod_p(&k(1, 2)), 2);
    assert_eq!(rank_mod_p(&k(1, 1)), 3);

    let m = PMatrix::from_i64(p(5), &[&[1, 1], &[-2, 2]]);
    assert_eq!(determinant(&m).unwrap(), PLocal::from_int(4));
    assert!(matches!(determinant(&PMatrix::zeros(2, 3, p(5))), Err(Error::NonSquare { .. })));

    let row = PMatrix::from_i64(p(5), &[&[1, -1]]);
    let ker = kernel_basis(&row);
    assert_eq!(ker.len(), 1);
    assert_eq!(lat(5, &[&[1, 1]]), Lattice::from_generators(2, p(5), &ker).unwrap());
    assert!(kernel_basis(&PMatrix::identity(3, p(5))).is_empty());
}

// lattices

#[test]
fn lattice_membership_and_inclusion() {
    let m = deg4ng(5, 1, 4);
    let kinf = construction(&m, "k_inf");
    assert_eq!(kinf, lat(5, &[&[1, 1, 0], &[0, 1, -1]]));
    let j_gamma_xa = m.j().apply(&v(&[1, 1, 0]));
    assert!(kinf.contains(&j_gamma_xa));
    assert!(!lat(5, &[&[0, 0, 1]]).contains(&v(&[0, 1, 0])));
    assert_eq!(lat(3, &[&[1, 0, 0], &[2, 0, 0]]), lat(3, &[&[1, 0, 0]]));

    let m = deg6(5, 1, 4, 0);
    let lpm = construction(&m, "L_prime_m");
    assert!(lpm.is_subset(&construction(&m, "R_m_1")).unwrap());
    assert!(!m.ambient().is_subset(&lpm).unwrap());
}

#[test]
fn lattice_sum_intersection_quotient_saturation() {
    let m = deg6(5, 1, 1, 1);
    assert!(m.decomposition_sum().is_full());

    let z1 = m.d(PrimeLabel::P1).sum(&m.d(PrimeLabel::P1Bar)).unwrap();
    let z2 = m.d(PrimeLabel::P2).sum(&m.d(PrimeLabel::P2Bar)).unwrap();
    assert_eq!(z1.intersect(&z2).unwrap(), lat(5, &[&[3, 3, 1, 3], &[0, 9, -1, -3]]));

    let amb = Lattice::ambient(3, p(3));
    let sub = lat(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 3]]);
    let q = Lattice::quotient_invariants(&amb, &sub).unwrap();
    assert_eq!((q.torsion_exponents, q.free_rank), (vec![1], 0));
    assert_eq!(Lattice::quotient_invariants(&amb, &Lattice::zero(3, p(3))).unwrap().free_rank, 3);
    assert_eq!(Lattice::quotient_invariants(&sub, &amb), Err(Error::NotIncluded));

    assert_eq!(lat(5, &[&[5, 25]]).saturate(), lat(5, &[&[1, 5]]));
    assert_eq!(lat(5, &[&[5, 0]]).saturate(), lat(5, &[&[1, 0]]));
}

// wedge and knot

#[test]
fn wedge_and_knot_matrices() {
    let (a, b) = (7, -3);
    let w = wedge(&v(&[1, a, b]), &v(&[0, 0, 1]));
    assert_eq!(w.coords, v(&[0, 1, a]));

    let m = build_model(ModelParams::deg4ng(5, a, b).unwrap(), false).unwrap();
    let expected = PMatrix::from_i64(p(5), &[&[1, 0, 0], &[0, 1, a], &[-1, 0, a + b], &[0, -1, b]]);
    assert_eq!(knot_matrix(&m), expected);

    assert!(knot_invariants(&deg6(5, 1, 1, 1)).trivial);
    assert!(!knot_invariants(&deg6(7, 1, 1, 1)).trivial);
    let k = knot_invariants(&deg4ng(5, 1, 4));
    assert!(!k.trivial);
    assert_eq!(k.cokernel.torsion_order_exponent(), 1);
}

// models

#[test]
fn model_tables() {
    let m = deg6(5, 1, 1, 1);
    assert_eq!(m.primes().len(), 6);
    let d1 = m.prime_data(PrimeLabel::P1).unwrap();
    assert_eq!((d1.inertia_gen.clone(), d1.second_gen.clone()), (v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])));
    let d1b = m.prime_data(PrimeLabel::P1Bar).unwrap();
    assert_eq!((d1b.inertia_gen.clone(), d1b.second_gen.clone()), (v(&[1, -1, 1, 3]), v(&[0, -1, 0, 0])));
    assert_eq!(m.decomposition_lattice(PrimeLabel::P1).unwrap(), lat(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
    assert_eq!(m.inertia_lattice(PrimeLabel::P3Bar).unwrap(), lat(5, &[&[1, -1, -1, 1]]));
    assert!(matches!(m.decomposition_lattice(PrimeLabel::P), Err(Error::UnknownLabel(_))));

    let bq = build_model(ModelParams::deg4bq(5, 2, 1).unwrap(), true).unwrap();
    let qb = bq.prime_data(PrimeLabel::QBar).unwrap();
    assert_eq!((qb.inertia_gen.clone(), qb.second_gen.clone()), (v(&[1, 1, 1]), v(&[0, 0, -1])));
}

#[test]
fn model_constraints() {
    let bad = build_model(ModelParams::deg4ng(3, 0, 1).unwrap(), true);
    assert!(matches!(bad, Err(Error::InconsistentParameters(_))));
    assert!(build_model(ModelParams::deg4ng(3, 0, 1).unwrap(), false).is_ok());
    assert_eq!(Prime::new(4), Err(Error::EvenPrime(4)));
}

#[test]
fn automorphisms() {
    let m = deg6(5, 1, 1, 1);
    let s = m.automorphism_matrix(Automorphism::Sigma).unwrap();
    let s3 = s.matrix.pow(3).unwrap();
    assert_eq!(s3.mul_vec(&v(&[1, 0, 0, 0])).unwrap(), v(&[1, -1, 1, 3]));
    assert_eq!(s.matrix.pow(6).unwrap(), PMatrix::identity(4, p(5)));
    assert_eq!(s.apply_lattice(&m.d(PrimeLabel::P1)), m.d(PrimeLabel::P2Bar));
    assert!(m.automorphism_matrix(Automorphism::Tau).is_err());

    let ng = deg4ng(5, 1, 2);
    assert_eq!(ng.sigma().matrix.pow(4).unwrap(), PMatrix::identity(3, p(5)));

    let bq = build_model(ModelParams::deg4bq(5, 2, 1).unwrap(), true).unwrap();
    let sigma = bq.automorphism_matrix(Automorphism::Sigma).unwrap().matrix;
    let tau = bq.automorphism_matrix(Automorphism::Tau).unwrap().matrix;
    let id = PMatrix::identity(3, p(5));
    assert_eq!(sigma.mul(&sigma).unwrap(), id);
    assert_eq!(tau.mul(&tau).unwrap(), id);
    assert_eq!(sigma.mul(&tau).unwrap().mul_vec(&v(&[0, 1, 0])).unwrap(), v(&[0, -1, 0]));
}

#[test]
fn named_constructions() {
    let m = deg6(5, 1, 4, 0);
    assert_eq!(construction(&m, "R_m_1"), lat(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, -1], &[0, 0, 0, 5]]));
    let m = deg6(5, 1, 1, 1);
    assert_eq!(construction(&m, "N_variant1"), lat(5, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1]]));
    let err = named_construction_str(&m, "R_m_1", &ConstructionExtras::default()).unwrap_err();
    assert_eq!(err, Error::ConstructionUndefined("m = 0".into()));
    assert!(matches!(
        named_construction_str(&m, "no_such_field", &ConstructionExtras::default()),
        Err(Error::UnknownConstruction(_))
    ));
}

// criteria

#[test]
fn classification_examples() {
    let r = classify(&deg6(5, 1, 1, 1));
    assert_eq!((r.x_tilde_trivial, r.case), (Some(true), CaseTag::Sufficient));
    let r = classify(&deg6(7, 1, 1, 1));
    assert_eq!((r.x_tilde_trivial, r.case), (Some(false), CaseTag::CaseA));
    let r = classify(&deg6(5, 1, 4, 0));
    assert_eq!((r.x_tilde_trivial, r.case), (Some(false), CaseTag::CaseB));
    let r = classify(&build_model(ModelParams::deg6(5, 0, 0, 0).unwrap(), false).unwrap());
    assert!(!r.constraints_ok);
    assert_eq!(r.x_tilde_trivial, None);
}

#[test]
fn prime_behavior_examples() {
    let m = deg4ng(5, 1, 4);
    let kinf = construction(&m, "k_inf");
    for l in m.labels() {
        let b = prime_behavior(&kinf, &m, l).unwrap();
        assert!(b.non_split && !b.unramified, "{l}");
        assert!(prime_behavior(&m.ambient(), &m, l).unwrap().splits_completely);
    }
    let m = deg6(5, 1, 4, 0);
    assert!(prime_behavior(&construction(&m, "R_m_1"), &m, PrimeLabel::P1).unwrap().splits_completely);
}

#[test]
fn j_inverse_examples() {
    let m = deg6(5, 1, 1, 1);
    assert!(j_inverse_on_quotient(&m, &construction(&m, "D_cap")).unwrap());
    assert!(j_inverse_on_quotient(&m, &m.ambient()).unwrap());
    assert_eq!(j_inverse_on_quotient(&m, &m.d(PrimeLabel::P1)), Err(Error::ActionUndefined));

    let (a, b) = (1, 4);
    let m = deg4ng(5, a, b);
    let h = lat(5, &[&[1, a, 0], &[0, a + b, -(a + b)]]);
    assert!(j_inverse_between(&m, &h, &construction(&m, "k_inf")).unwrap());
}

#[test]
fn alpha_beta_d() {
    for prime in [5, 7] {
        let r = compute_alpha_beta_d(&deg6(prime, 1, 1, 1)).unwrap();
        assert_eq!(r.alpha, PLocal::from_int(2));
        assert_eq!(r.beta, PLocal::from_ratio(4, 3, p(prime)).unwrap());
    }
    let r = compute_alpha_beta_d(&deg6(7, 1, 1, 1)).unwrap();
    assert_eq!((r.d, r.sign), (0, -1));
    assert!(compute_alpha_beta_d(&deg6(5, 1, 4, 0)).is_err());
}

/// Any admissible d gives a k∞ with the claimed properties, not just the
/// default one.
#[test]
fn case_a_k_inf_for_every_admissible_d() {
    let m = deg6(7, 1, 1, 1);
    let r = compute_alpha_beta_d(&m).unwrap();
    let mut tried = 0;
    for d in 0..6 {
        if !d_is_admissible(&r.alpha, &r.beta, r.sign, m.prime(), d) {
            continue;
        }
        tried += 1;
        let kinf = named_construction_str(&m, "k_inf_caseA", &ConstructionExtras { d: Some(d) }).unwrap();
        assert!(Lattice::quotient_invariants(&m.ambient(), &kinf).unwrap().is_free_of_rank(1), "d = {d}");
        assert_eq!(m.j().apply_lattice(&kinf), kinf, "d = {d}");
        assert!(j_inverse_on_quotient(&m, &kinf).unwrap(), "d = {d}");
        for l in m.labels() {
            assert!(prime_behavior(&kinf, &m, l).unwrap().non_split, "d = {d}, {l}");
        }
    }
    assert!(tried >= 5);
}

#[test]
fn genus_bounds() {
    assert_eq!(genus_bound(0, 2, 0), 2);
    assert_eq!(genus_bound(0, 3, 0), 2);
    assert_eq!(genus_bound(0, 1, 0), 1);
}

#[test]
fn lemma_examples() {
    let pass = |m: &GaloisModel, id: LemmaId| {
        let r = verify_lemma(m, id).unwrap();
        assert_eq!(r.outcome, Outcome::Pass, "{id}: {:?}", r.failures().collect::<Vec<_>>());
    };
    pass(&deg6(5, 1, 4, 0), LemmaId::RmPatterns);
    pass(&deg6(5, 1, 1, 1), LemmaId::MProperties);
    pass(&deg4ng(3, 1, 1), LemmaId::KiDeg4);
    pass(&deg6(7, 1, 1, 1), LemmaId::KiDeg6CaseA);
    assert_eq!("unknown_name".parse::<LemmaId>(), Err(Error::UnknownLemma("unknown_name".into())));
}

// oracle

#[test]
fn oracle_examples() {
    let l = lat(3, &[&[1, 2]]);
    assert_eq!(enumerate_span(&l, 2).unwrap().len(), 9);
    assert_eq!(enumerate_span(&Lattice::zero(2, p(3)), 2).unwrap().len(), 1);
    assert_eq!(enumerate_span(&Lattice::ambient(2, p(3)), 1).unwrap().len(), 9);

    let amb = Lattice::ambient(2, p(3));
    assert_eq!(oracle_quotient_order(&amb, &l, 2).unwrap(), 9);
    assert_eq!(oracle_quotient_order(&l, &l, 2).unwrap(), 1);
    let m = deg4ng(3, 1, 2);
    assert_eq!(oracle_quotient_order(&m.ambient(), &construction(&m, "P_n"), 2).unwrap(), 3);

    let (e1, e2) = (lat(5, &[&[1, 0, 0]]), lat(5, &[&[0, 1, 0]]));
    for op in [OracleOp::Sum, OracleOp::Intersect, OracleOp::ContainsSample] {
        assert!(oracle_agree(&e1, &e1, 3, op).unwrap());
        assert!(oracle_agree(&e1, &e2, 3, op).unwrap());
    }
}
