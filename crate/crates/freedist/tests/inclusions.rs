use freedist::inclusions::{
    cr_fefferman, fefferman_transversality, lambda2_matrix, lambda2_rep, octonion_spin_check, sl4_basis, spinorial_fefferman, su22_four_form_check, su22_rep,
    volume_pairing, RepMap,
};
use freedist::lie::build_so;
use freedist::linalg::Mat;
use freedist::scalar::{q, Scalar};
use proptest::prelude::*;

/// 2×2 minors of A in the basis e_i∧e_j, i < j.
fn compound(a: &Mat) -> Mat {
    let ps: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    Mat::from_fn(6, 6, |r, c| {
        let ((k, l), (i, j)) = (ps[r], ps[c]);
        &a[(k, i)] * &a[(l, j)] - &a[(k, j)] * &a[(l, i)]
    })
}

fn half() -> Scalar {
    q(1) / q(2)
}

fn is_half(s: &Option<Scalar>) -> bool {
    matches!(s, Some(c) if *c == half() || *c == -half())
}

#[test]
fn lambda2_is_onto_so33() {
    let r = lambda2_rep();
    assert_eq!((r.source.len(), r.target_dim(), r.image_rank()), (15, 6, 15));
    assert!(r.is_injective());
    assert!(r.bracket_failures().is_empty());
    assert!(r.preserves_form());
    assert_eq!(r.form_signature(), (3, 3, 0));
    assert!(r.onto_orthogonal());
    assert_eq!(r.form, volume_pairing());
}

#[test]
fn sign_flipped_images_are_not_a_representation() {
    let r = lambda2_rep();
    let bad = RepMap { images: r.images.iter().map(|m| m.scale(&q(-1))).collect(), ..r };
    assert!(!bad.bracket_failures().is_empty());
    assert!(bad.preserves_form());
}

#[test]
fn su22_is_onto_so42() {
    let s = su22_rep();
    assert_eq!(s.rep.source.len(), 15);
    assert!(s.real_structure);
    assert_eq!(s.real_dim, 6);
    assert_eq!(s.form_sign, -1);
    assert!(s.form_real);
    assert!(s.rep.is_injective());
    assert!(s.rep.bracket_failures().is_empty());
    assert_eq!(s.rep.form_signature(), (4, 2, 0));
    assert!(s.rep.onto_orthogonal());
}

#[test]
fn four_form_normalization() {
    let r = su22_four_form_check();
    assert!(is_half(&r.scale), "{:?}", r.scale);
    assert_eq!((r.su22_annihilating, r.su22_total, r.u22_annihilating_mu2), (15, 15, 16));
    assert_eq!(r.stabilizer_dim, 21);
    assert!(r.stabilizer_closed && r.form_alternating);
    for (c, d) in &r.scan {
        assert_eq!(*d == 21, *c == half() || *c == -half(), "c = {c}");
    }
}

#[test]
fn octonion_spin43() {
    let r = octonion_spin_check();
    assert!(is_half(&r.scale));
    assert_eq!((r.stabilizer_dim, r.unit_stabilizer_dim), (21, 14));
    assert!(r.stabilizer_closed);
    assert!(r.scan.iter().all(|(c, d)| (*d == 21) == (*c == half() || *c == -half())));
}

#[test]
fn cr_fefferman_dims() {
    let t = cr_fefferman();
    assert_eq!((t.dim_ghat, t.dim_phat, t.dim_g, t.dim_p, t.dim_g_cap_phat), (21, 15, 15, 10, 9));
    assert!(t.transverse && t.dimension_identity);
    assert!(!t.cap_is_p);
    assert_eq!(t.fiber_dim, 1);
}

#[test]
fn spinorial_fefferman_dims() {
    for (n, dims) in [(2, (15, 12, 10, 7)), (3, (28, 22, 21, 15))] {
        let t = spinorial_fefferman(n);
        assert_eq!((t.dim_ghat, t.dim_phat, t.dim_g, t.dim_p), dims);
        assert!(t.transverse && t.cap_is_p && t.dimension_identity);
        assert_eq!(t.fiber_dim, 0);
        // the subalgebra is so(n+1,n)
        assert_eq!(t.dim_g, build_so(n).unwrap().dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Independent oracle: ρ(X) = C₂(I + X) − I − C₂(X).
    #[test]
    fn lambda2_matches_minors(v in prop::collection::vec(-5i64..=5, 16)) {
        let x = Mat::from_i64(4, 4, &v);
        let want = compound(&Mat::identity(4).add(&x)).sub(&Mat::identity(6)).sub(&compound(&x));
        prop_assert_eq!(lambda2_matrix(&x), want);
    }

    /// Λ² of a group element is the compound matrix and a homomorphism.
    #[test]
    fn compound_is_multiplicative(a in prop::collection::vec(-3i64..=3, 16), b in prop::collection::vec(-3i64..=3, 16)) {
        let (a, b) = (Mat::from_i64(4, 4, &a), Mat::from_i64(4, 4, &b));
        prop_assert_eq!(compound(&a.mul(&b)), compound(&a).mul(&compound(&b)));
        let (x, y) = (lambda2_matrix(&a), lambda2_matrix(&b));
        prop_assert_eq!(lambda2_matrix(&a.commutator(&b)), x.commutator(&y));
    }

    #[test]
    fn fefferman_dimension_identity(a in prop::collection::vec(-2i64..=2, 15 * 4), b in prop::collection::vec(-2i64..=2, 15 * 5)) {
        let ghat = sl4_basis();
        let span = |c: &[i64], k: usize| -> Vec<Mat> {
            (0..k).map(|i| {
                ghat.iter().enumerate().fold(Mat::zeros(4, 4), |m, (j, e)| m.add(&e.scale(&q(c[i * 15 + j]))))
            }).collect()
        };
        let (g, ph) = (span(&a, 4), span(&b, 5));
        let t = fefferman_transversality(&ghat, &g, &ph, &g);
        prop_assert!(t.dimension_identity);
        prop_assert!(t.dim_sum <= t.dim_ghat);
        prop_assert_eq!(t.transverse, t.dim_sum == 15);
    }
}
