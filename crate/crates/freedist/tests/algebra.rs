use freedist::lie::{build_so, so_metric, Block};
use freedist::linalg::{rank_of, signature, subspace_intersection, subspace_sum, Mat};
use freedist::scalar::{q, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn mat(rows: usize, cols: usize, v: &[i64]) -> Mat {
    Mat::from_fn(rows, cols, |r, c| q(v[r * cols + c]))
}

#[test]
fn kernels_of_trivial_maps() {
    assert!(Mat::identity(3).kernel().is_empty());
    assert_eq!(Mat::zeros(2, 3).kernel().len(), 3);
}

#[test]
fn intersections_of_coordinate_lines() {
    let e = |i: usize| (0..3).map(|k| if k == i { q(1) } else { q(0) }).collect::<Vec<Scalar>>();
    assert_eq!(subspace_intersection(&[e(0)], &[e(0)]).unwrap().len(), 1);
    assert!(subspace_intersection(&[e(0)], &[e(1)]).unwrap().is_empty());
}

#[test]
fn so_dimensions() {
    assert_eq!(build_so(2).unwrap().dim(), 10);
    let g = build_so(3).unwrap();
    assert_eq!(g.dim(), 21);
    assert_eq!(g.p_indices().len(), 15);
    for n in 2..=5 {
        let g = build_so(n).unwrap();
        let dims: Vec<usize> = (-2..=2).map(|k| g.indices_of_grade(k).len()).collect();
        let m = n * (n - 1) / 2;
        assert_eq!(dims, vec![m, n, n * n, n, m]);
        assert_eq!(g.dim() - g.p_indices().len(), n * (n + 1) / 2);
    }
}

#[test]
fn bracket_basics() {
    let g = build_so(3).unwrap();
    for i in 0..g.dim() {
        assert!(g.bracket(&g.unit(i), &g.unit(i)).unwrap().iter().all(|x| x.is_zero()));
    }
    let w = g.indices_of_grade(-1);
    let c = g.bracket(&g.unit(w[0]), &g.unit(w[1])).unwrap();
    assert!(c.iter().enumerate().all(|(k, x)| x.is_zero() || g.grade(k) == -2));
    assert!(c.iter().any(|x| !x.is_zero()));
}

#[test]
fn grading_element() {
    let g = build_so(2).unwrap();
    let e = g.grading_element().unwrap().element;
    // ε₀ = Id in the A block
    let mut want = vec![q(0); g.dim()];
    want[g.index(Block::A(0, 0))] = q(1);
    want[g.index(Block::A(1, 1))] = q(1);
    assert_eq!(e, want);
    let g = build_so(3).unwrap();
    let e = g.grading_element().unwrap().element;
    let b = g.unit(g.index(Block::B(0, 2)));
    assert_eq!(g.bracket(&e, &b).unwrap(), b.iter().map(|x| x * q(2)).collect::<Vec<_>>());
    let w = g.unit(g.index(Block::W(1)));
    assert_eq!(g.bracket(&e, &w).unwrap(), w.iter().map(|x| -x.clone()).collect::<Vec<_>>());
    let a = g.unit(g.index(Block::A(0, 2)));
    assert!(g.bracket(&e, &a).unwrap().iter().all(|x| x.is_zero()));
}

#[test]
fn nilradical_identities() {
    let r = build_so(3).unwrap().nilradical_check();
    assert!(r.ok());
    assert_eq!((r.wedge_rank, r.dim_g2), (3, 3));
    let g = build_so(2).unwrap();
    let b = g.indices_of_grade(2);
    assert!(g.bracket(&g.unit(b[0]), &g.unit(b[0])).unwrap().iter().all(|x| x.is_zero()));
    let r = build_so(4).unwrap().nilradical_check();
    assert_eq!(r.wedge_rank, 6);
}

#[test]
fn killing_form() {
    let g = build_so(3).unwrap();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            assert_eq!(g.killing_form(&g.unit(i), &g.unit(j)), g.killing_form(&g.unit(j), &g.unit(i)));
        }
    }
    for k in 1..=2 {
        let (pos, neg) = (g.indices_of_grade(k), g.indices_of_grade(-k));
        let m = Mat::from_fn(pos.len(), neg.len(), |r, c| g.killing_form(&g.unit(pos[r]), &g.unit(neg[c])));
        assert_eq!(m.rank(), pos.len());
    }
    // p⊥ is Killing-orthogonal to p
    for &i in &g.nilradical_indices() {
        for &j in &g.p_indices() {
            assert!(g.killing_form(&g.unit(i), &g.unit(j)).is_zero());
        }
    }
}

#[test]
fn metric_signature() {
    for n in 2..=5 {
        assert_eq!(signature(&so_metric(n)), (n + 1, n, 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(r in 1usize..6, c in 1usize..7, v in prop::collection::vec(-3i64..=3, 42)) {
        let m = mat(r, c, &v);
        prop_assert_eq!(m.rank() + m.kernel().len(), c);
        prop_assert_eq!(m.rank(), m.rank_alt());
        for k in m.kernel() {
            prop_assert!(m.mul_vec(&k).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_back_substitutes(r in 1usize..6, c in 1usize..6, v in prop::collection::vec(-4i64..=4, 36), x in prop::collection::vec(-4i64..=4, 6)) {
        let m = mat(r, c, &v);
        let x0: Vec<Scalar> = x[..c].iter().map(|&t| q(t)).collect();
        let b = m.mul_vec(&x0);
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn inverse_when_full_rank(v in prop::collection::vec(-5i64..=5, 16)) {
        let m = mat(4, 4, &v);
        match m.inverse() {
            Some(inv) => prop_assert_eq!(m.mul(&inv), Mat::identity(4)),
            None => prop_assert!(m.rank() < 4),
        }
    }

    #[test]
    fn intersection_dimension_identity(a in prop::collection::vec(-2i64..=2, 15), b in prop::collection::vec(-2i64..=2, 15)) {
        let span = |v: &[i64]| (0..3).map(|i| v[5 * i..5 * i + 5].iter().map(|&t| q(t)).collect()).collect::<Vec<Vec<Scalar>>>();
        let (sa, sb) = (span(&a), span(&b));
        let cap = subspace_intersection(&sa, &sb).unwrap();
        let sum = subspace_sum(&sa, &sb).unwrap();
        prop_assert_eq!(rank_of(&sa) + rank_of(&sb), cap.len() + sum.len());
    }

    /// Structure-constant bracket against the matrix commutator.
    #[test]
    fn bracket_is_matrix_commutator(n in 2usize..=4, x in prop::collection::vec(-3i64..=3, 36), y in prop::collection::vec(-3i64..=3, 36)) {
        let g = build_so(n).unwrap();
        let d = g.dim();
        let xv: Vec<Scalar> = x[..d].iter().map(|&t| q(t)).collect();
        let yv: Vec<Scalar> = y[..d].iter().map(|&t| q(t)).collect();
        let br = g.bracket(&xv, &yv).unwrap();
        let mx = g.alg.to_matrix(&xv);
        let my = g.alg.to_matrix(&yv);
        prop_assert_eq!(g.alg.to_matrix(&br), mx.commutator(&my));
        // grade additivity on homogeneous parts
        let gx = g.grade(x[d % 36].unsigned_abs() as usize % d);
        let gy = g.grade(y[d % 36].unsigned_abs() as usize % d);
        let hx: Vec<Scalar> = (0..d).map(|k| if g.grade(k) == gx { xv[k].clone() } else { q(0) }).collect();
        let hy: Vec<Scalar> = (0..d).map(|k| if g.grade(k) == gy { yv[k].clone() } else { q(0) }).collect();
        let hb = g.bracket(&hx, &hy).unwrap();
        prop_assert!(hb.iter().enumerate().all(|(k, c)| c.is_zero() || g.grade(k) == gx + gy));
    }
}
