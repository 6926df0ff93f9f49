use proptest::prelude::*;

use cmtriv::matrix::{determinant, kernel_basis, rank_mod_p, smith_p_local};
use cmtriv::oracle::{enumerate_span, predicted_image_size};
use cmtriv::wedge::wedge;
use cmtriv::{build_model, Lattice, ModelParams, PLocal, PMatrix, Prime, Val, Variant};

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![3u64, 5, 7]).prop_map(|p| Prime::new(p).unwrap())
}

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-30i64..=30, n), 0..=max)
}

fn to_local(vs: &[Vec<i64>]) -> Vec<Vec<PLocal>> {
    vs.iter().map(|v| v.iter().map(|&x| PLocal::from_int(x)).collect()).collect()
}

fn lattice(n: usize, p: Prime, vs: &[Vec<i64>]) -> Lattice {
    Lattice::from_generators(n, p, &to_local(vs)).unwrap()
}

fn matrix() -> impl Strategy<Value = (Prime, PMatrix)> {
    (prime(), 1usize..=4, 1usize..=4).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(prop::collection::vec(-40i64..=40, c), r)
            .prop_map(move |rows| (p, PMatrix::from_rows(p, &to_local(&rows)).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn smith_reconstructs((_p, m) in matrix()) {
        let s = smith_p_local(&m);
        let d = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        prop_assert!(d.is_diagonal());
        prop_assert_eq!(s.exponents.len(), m.rows().min(m.cols()));
        for (i, e) in s.exponents.iter().enumerate() {
            prop_assert_eq!(d.get(i, i).valuation(m.prime()), *e);
        }
        let sorted = s.exponents.windows(2).all(|w| w[0] <= w[1]);
        prop_assert!(sorted);
        prop_assert!(determinant(&s.left).unwrap().is_unit(m.prime()));
        prop_assert!(determinant(&s.right).unwrap().is_unit(m.prime()));
        let units = s.exponents.iter().filter(|e| **e == Val::Fin(0)).count();
        prop_assert_eq!(rank_mod_p(&m), units);
    }

    #[test]
    fn kernel_is_annihilated((_p, m) in matrix()) {
        for v in kernel_basis(&m) {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(PLocal::is_zero));
        }
        prop_assert_eq!(kernel_basis(&m).len(), m.cols() - smith_p_local(&m).rank());
    }

    #[test]
    fn canonical_form_is_span_invariant(p in prime(), vs in vectors(3, 4), perm in 0usize..24, scale in 1i64..=4) {
        let l = lattice(3, p, &vs);
        let mut shuffled = vs.clone();
        shuffled.reverse();
        if !shuffled.is_empty() {
            let r = perm % shuffled.len();
            shuffled.rotate_left(r);
        }
        // a unit multiple of a generator, plus a combination of two
        let unit = if scale % p.get() as i64 == 0 { 1 } else { scale };
        if let Some(first) = shuffled.first_mut() {
            for x in first.iter_mut() { *x *= unit; }
        }
        if shuffled.len() >= 2 {
            let s: Vec<i64> = shuffled[0].iter().zip(&shuffled[1]).map(|(a, b)| a + b).collect();
            shuffled.push(s);
        }
        prop_assert_eq!(&l, &lattice(3, p, &shuffled));
        prop_assert_eq!(Lattice::from_generators(3, p, l.basis()).unwrap(), l);
    }

    #[test]
    fn lattice_lattice_laws(p in prime(), a in vectors(3, 3), b in vectors(3, 3)) {
        let (l1, l2) = (lattice(3, p, &a), lattice(3, p, &b));
        let cap = l1.intersect(&l2).unwrap();
        let cup = l1.sum(&l2).unwrap();
        prop_assert!(cap.is_subset(&l1).unwrap() && cap.is_subset(&l2).unwrap());
        prop_assert!(l1.is_subset(&cup).unwrap() && l2.is_subset(&cup).unwrap());
        prop_assert_eq!(l1.sum(&cap).unwrap(), l1.clone());
        prop_assert_eq!(l1.intersect(&cup).unwrap(), l1.clone());
        prop_assert_eq!(cap.clone(), l2.intersect(&l1).unwrap());
        prop_assert_eq!(cup.clone(), l2.sum(&l1).unwrap());
        // rank additivity
        prop_assert_eq!(cap.rank() + cup.rank(), l1.rank() + l2.rank());
        for v in l1.basis() {
            prop_assert!(l1.contains(v));
            prop_assert_eq!(l2.contains(v), cap.contains(v));
        }
    }

    #[test]
    fn saturation_properties(p in prime(), vs in vectors(3, 3)) {
        let l = lattice(3, p, &vs);
        let s = l.saturate();
        prop_assert!(l.is_subset(&s).unwrap());
        prop_assert_eq!(s.rank(), l.rank());
        prop_assert!(s.cokernel().torsion_exponents.is_empty());
        prop_assert_eq!(s.saturate(), s.clone());
        let q = Lattice::quotient_invariants(&s, &l).unwrap();
        prop_assert!(q.is_finite());
        prop_assert_eq!(q.torsion_exponents, l.cokernel().torsion_exponents);
    }

    #[test]
    fn image_size_matches_enumeration(p in prime(), vs in vectors(2, 3), k in 1u32..=3) {
        let l = lattice(2, p, &vs);
        prop_assert_eq!(enumerate_span(&l, k).unwrap().len() as u128, predicted_image_size(&l, k));
    }

    #[test]
    fn wedge_is_bilinear_and_alternating(
        u in prop::collection::vec(-20i64..=20, 4),
        v in prop::collection::vec(-20i64..=20, 4),
        w in prop::collection::vec(-20i64..=20, 4),
        s in -5i64..=5,
    ) {
        let [u, v, w] = [u, v, w].map(|x| x.into_iter().map(PLocal::from_int).collect::<Vec<_>>());
        let uv = wedge(&u, &v).coords;
        let vu = wedge(&v, &u).coords;
        prop_assert!(uv.iter().zip(&vu).all(|(a, b)| (a + b).is_zero()));
        let su_w: Vec<PLocal> = u.iter().zip(&w).map(|(a, b)| &(a * &PLocal::from_int(s)) + b).collect();
        let lhs = wedge(&su_w, &v).coords;
        let uw = wedge(&w, &v).coords;
        for i in 0..lhs.len() {
            prop_assert_eq!(&lhs[i], &(&(&uv[i] * &PLocal::from_int(s)) + &uw[i]));
        }
    }

    #[test]
    fn automorphisms_preserve_decomposition_data(p in prime(), a in -12i64..=12, b in -12i64..=12, c in -12i64..=12) {
        for v in Variant::ALL {
            let params = ModelParams::new(v, p.get(), a, b, c).unwrap();
            let m = build_model(params, false).unwrap();
            let j = m.j();
            let jj = j.matrix.mul(&j.matrix).unwrap();
            prop_assert_eq!(jj, PMatrix::identity(m.ambient_rank(), m.prime()));
            prop_assert_eq!(j.apply_lattice(&m.inertia_sum()), m.inertia_sum());
            prop_assert_eq!(j.apply_lattice(&m.decomposition_sum()), m.decomposition_sum());
        }
    }
}
