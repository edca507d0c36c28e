use freedist::models::{
    conformal_shift_failures, conformal_signature, conformal_structure, flat_curvature, nonflat_example, normality_check, standard_commutator_failures,
    standard_model, twisted_product, TwistSigns,
};
use freedist::poly::{lie_bracket, Poly, PolyVectorField};
use freedist::scalar::{q, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit(len: usize, nv: usize, k: usize) -> Vec<Poly> {
    (0..len).map(|c| if c == k { Poly::one(nv) } else { Poly::zero(nv) }).collect()
}

#[test]
fn commutator_tables() {
    for n in 2..=5 {
        let m = standard_model(n).unwrap();
        assert_eq!(m.len(), n + n * (n - 1) / 2);
        assert!(standard_commutator_failures(&m).unwrap().is_empty(), "n={n}");
        assert!(flat_curvature(&m).unwrap().is_zero());
    }
}

#[test]
fn rank_three_frame() {
    let m = standard_model(3).unwrap();
    assert_eq!(m.len(), 6);
    let (x1, x2) = (m.index_of("X1").unwrap(), m.index_of("X2").unwrap());
    assert_eq!(m.lie(x1, x2).unwrap(), m.fields[m.index_of("U12").unwrap()]);
    assert_eq!(m.lie(x2, x1).unwrap(), m.fields[m.index_of("U12").unwrap()].scale(&q(-1)));
    for a in 3..6 {
        for b in 0..6 {
            assert!(m.lie(a, b).unwrap().is_zero());
        }
    }
}

#[test]
fn free_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=4 {
        let m = standard_model(n).unwrap();
        for _ in 0..5 {
            let pt: Vec<Scalar> = (0..m.nvars()).map(|_| q(rng.gen_range(-20..=20))).collect();
            assert!(m.is_free_at(&pt));
            assert_eq!(m.freeness_rank(&pt), m.nvars());
        }
    }
}

#[test]
fn nonflat_brackets() {
    let m = nonflat_example(4).unwrap();
    let (x1, x2) = (m.index_of("X1'").unwrap(), m.index_of("X2'").unwrap());
    let (u12, u34) = (m.index_of("U12").unwrap(), m.index_of("U34").unwrap());
    assert_eq!(m.lie(u12, x1).unwrap(), m.fields[u34]);
    assert_eq!(m.lie(x1, x2).unwrap(), m.fields[u12]);
    let (x3, x4) = (m.index_of("X3").unwrap(), m.index_of("X4").unwrap());
    let k = flat_curvature(&m).unwrap();
    let nv = m.nvars();
    assert!(k.get(x3, x4, m.len(), nv).iter().all(|p| p.is_zero()));
    assert_eq!(k.get(u12, x1, m.len(), nv), unit(m.len(), nv, u34));
    assert_eq!(k.get(x1, u12, m.len(), nv), unit(m.len(), nv, u34).iter().map(|p| p.neg()).collect::<Vec<_>>());
    assert_eq!(k.entries.len(), 1);
    assert!(normality_check(&m, &k).is_normal());
    assert!(nonflat_example(3).is_err());
}

#[test]
fn normality_detects_planted_curvature() {
    let m = standard_model(4).unwrap();
    let mut k = flat_curvature(&m).unwrap();
    assert!(normality_check(&m, &k).is_normal());
    let (x1, x2, u34) = (m.index_of("X1").unwrap(), m.index_of("X2").unwrap(), m.index_of("U34").unwrap());
    k.set(x1, x2, unit(m.len(), m.nvars(), u34));
    let r = normality_check(&m, &k);
    assert!(!r.is_normal());
    assert!(!r.offenders().is_empty());
}

#[test]
fn twisted_mixed_bracket() {
    let m = standard_model(2).unwrap();
    let tp = twisted_product(&m, &m, TwistSigns::WORKING).unwrap();
    let f = &tp.frame;
    assert_eq!(f.len(), 4 + 2 + 4);
    let (x1, y2) = (f.index_of("X~1").unwrap(), f.index_of("Y~2").unwrap());
    assert_eq!(f.lie(x1, y2).unwrap(), f.fields[f.index_of("T12").unwrap()]);
    assert!(tp.relation_failures(&m, &m).unwrap().is_empty());
    let lit = twisted_product(&m, &m, TwistSigns::LITERAL).unwrap();
    assert!(!lit.relation_failures(&m, &m).unwrap().is_empty());
}

#[test]
fn twisted_curvature_is_direct_sum() {
    let (a, b) = (nonflat_example(4).unwrap(), standard_model(2).unwrap());
    let tp = twisted_product(&a, &b, TwistSigns::WORKING).unwrap();
    assert!(tp.relation_failures(&a, &b).unwrap().is_empty());
    assert!(tp.direct_sum_failures(&a, &b).unwrap().is_empty());
    assert!(!flat_curvature(&tp.frame).unwrap().is_zero());
}

#[test]
fn conformal_structure_rank_three() {
    let m = standard_model(3).unwrap();
    let sigma = q(3);
    let g = conformal_structure(&m, &sigma).unwrap();
    let pt = vec![q(0); m.nvars()];
    assert_eq!(conformal_signature(&g, &pt), (3, 3, 0));
    let (u12, x3) = (m.index_of("U12").unwrap(), m.index_of("X3").unwrap());
    assert_eq!(g[u12][x3].as_constant().unwrap() * &sigma, q(1));
    for i in 0..3 {
        for j in 0..3 {
            assert!(g[i][j].is_zero());
            assert!(g[3 + i][3 + j].is_zero());
        }
    }
    assert!(conformal_shift_failures(&g).is_empty());
    assert!(conformal_structure(&m, &q(0)).is_err());
    assert!(conformal_structure(&standard_model(2).unwrap(), &sigma).is_err());
}

fn small_poly(nv: usize, c: &[i64]) -> Poly {
    // constant, linear and x0·x1 terms
    let mut p = Poly::constant(nv, q(c[0]));
    for i in 0..nv {
        p = p.add(&Poly::var(nv, i).scale(&q(c[1 + i])));
    }
    p.add(&Poly::var(nv, 0).mul(&Poly::var(nv, 1)).scale(&q(c[1 + nv])))
}

fn field(nv: usize, c: &[i64]) -> PolyVectorField {
    let w = nv + 2;
    PolyVectorField { comps: (0..nv).map(|i| small_poly(nv, &c[i * w..(i + 1) * w])).collect() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jacobi_on_polynomial_fields(a in prop::collection::vec(-3i64..=3, 15), b in prop::collection::vec(-3i64..=3, 15), c in prop::collection::vec(-3i64..=3, 15)) {
        let (f, g, h) = (field(3, &a), field(3, &b), field(3, &c));
        let t1 = lie_bracket(&f, &lie_bracket(&g, &h).unwrap()).unwrap();
        let t2 = lie_bracket(&g, &lie_bracket(&h, &f).unwrap()).unwrap();
        let t3 = lie_bracket(&h, &lie_bracket(&f, &g).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
        prop_assert_eq!(lie_bracket(&f, &g).unwrap(), lie_bracket(&g, &f).unwrap().scale(&q(-1)));
    }

    /// Curvature of the homogeneous model vanishes wherever it is evaluated.
    #[test]
    fn standard_model_flat_pointwise(n in 2usize..=4, i in 0usize..10, j in 0usize..10) {
        let m = standard_model(n).unwrap();
        let (i, j) = (i % m.len(), j % m.len());
        let lie = m.lie_in_frame(i, j).unwrap();
        let alg = m.algebraic_bracket(i, j);
        for (p, c) in lie.iter().zip(&alg) {
            prop_assert_eq!(p.as_constant(), Some(c.clone()));
        }
    }
}
