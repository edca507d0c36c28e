use freedist::kostant::{adjoint_scalar, ChainVector, Kostant};
use freedist::lie::{build_so, Block};
use freedist::scalar::q;
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn complexes_square_to_zero() {
    for n in 2..=4 {
        let g = build_so(n).unwrap();
        let k = Kostant::new(&g);
        assert!(k.codifferential(2).unwrap().compose(&k.codifferential(3).unwrap()).is_zero(), "n={n}");
        assert!(k.codifferential(1).unwrap().compose(&k.codifferential(2).unwrap()).is_zero(), "n={n}");
        assert!(k.differential(1).compose(&k.differential(0)).is_zero(), "n={n}");
        assert!(k.differential(2).compose(&k.differential(1)).is_zero(), "n={n}");
    }
}

#[test]
fn codifferential_has_the_bracket_term() {
    let g = build_so(3).unwrap();
    let k = Kostant::new(&g);
    let nil = k.nilradical();
    let pos = |b: Block| nil.iter().position(|&i| i == g.index(b)).unwrap();
    let (a, b, m) = (pos(Block::V(0)), pos(Block::V(1)), pos(Block::B(0, 1)));
    let v = g.index(Block::A(2, 2));
    let src = k.space(2).index_of(&[a, b], v).unwrap();
    let col = &k.codifferential(2).unwrap().columns[src];
    let t = k.space(1).index_of(&[m], v).unwrap();
    assert!(col.iter().any(|(i, x)| *i == t && !x.is_zero()));
}

#[test]
fn codifferential_preserves_homogeneity() {
    for n in 2..=3 {
        let g = build_so(n).unwrap();
        let k = Kostant::new(&g);
        for c in 1..=3 {
            let (src, dst) = (k.space(c), k.space(c - 1));
            for (j, col) in k.codifferential(c).unwrap().columns.iter().enumerate() {
                assert!(col.iter().all(|(i, _)| dst.homogeneity(*i) == src.homogeneity(j)));
            }
        }
    }
}

#[test]
fn degree_zero_differential_is_the_bracket() {
    let g = build_so(2).unwrap();
    let k = Kostant::new(&g);
    let nil = k.nilradical().to_vec();
    // u_a dual to z_a under the Cartan involution: v_j ↔ −w_j, B_kl ↔ C_kl
    let z = |i: usize| match g.blocks[i] {
        Block::V(j) => g.unit(g.index(Block::W(j))).iter().map(|x| -x.clone()).collect::<Vec<_>>(),
        Block::B(a, b) => g.unit(g.index(Block::C(a, b))),
        _ => unreachable!(),
    };
    let d0 = k.differential(0);
    let s1 = k.space(1);
    for v in 0..g.dim() {
        let col = &d0.columns[k.space(0).index_of(&[], v).unwrap()];
        for (a, &u) in nil.iter().enumerate() {
            let br = g.bracket(&z(u), &g.unit(v)).unwrap();
            for (e, want) in br.iter().enumerate() {
                let idx = s1.index_of(&[a], e).unwrap();
                let got = col.iter().find(|(i, _)| *i == idx).map(|(_, x)| x.clone()).unwrap_or_else(|| q(0));
                assert_eq!(&got, want);
            }
        }
    }
}

#[test]
fn codifferential_is_transpose() {
    for n in 2..=3 {
        let g = build_so(n).unwrap();
        let k = Kostant::new(&g);
        for c in 0..2 {
            assert_eq!(adjoint_scalar(&k.differential(c), &k.codifferential(c + 1).unwrap()), Some(q(1)));
        }
    }
}

#[test]
fn homology_rank_bookkeeping() {
    for n in 2..=3 {
        let g = build_so(n).unwrap();
        let k = Kostant::new(&g);
        let d2 = k.codifferential(2).unwrap().to_dense();
        let d3 = k.codifferential(3).unwrap().to_dense();
        let ker = d2.cols() - d2.rank();
        assert_eq!(ker, d3.rank() + k.homology().total_dim(), "n={n}");
    }
}

#[test]
fn harmonic_locations() {
    for (n, dim) in [(2, 4), (3, 27)] {
        let g = build_so(n).unwrap();
        let h = Kostant::new(&g).homology();
        assert_eq!(h.total_dim(), dim);
        assert!(h.support.iter().filter(|b| b.dim > 0).all(|b| b.wedge == (1, 2) && b.g == 0 && b.homogeneity == 3));
        assert!(h.support.iter().filter(|b| b.dim > 0).all(|b| b.g >= 0));
    }
    let g = build_so(4).unwrap();
    let h = Kostant::new(&g).homology();
    assert!(h.present((1, 2), -2));
    assert!(h.support.iter().any(|b| b.dim > 0 && b.g < 0));
}

#[test]
fn minimal_homogeneity_examples() {
    let g = build_so(3).unwrap();
    let k = Kostant::new(&g);
    let nil = k.nilradical();
    let pos = |b: Block| nil.iter().position(|&i| i == g.index(b)).unwrap();
    let sp = k.space(2);
    let a = sp.index_of(&[pos(Block::V(0)), pos(Block::B(1, 2))], g.index(Block::A(0, 1))).unwrap();
    let b = sp.index_of(&[pos(Block::B(0, 1)), pos(Block::B(0, 2))], g.index(Block::W(2))).unwrap();
    let ch = |v: Vec<usize>| ChainVector { c: 2, coords: v.into_iter().map(|i| (i, q(1))).collect() };
    assert_eq!(k.minimal_homogeneity(&ch(vec![a])), Ok(3));
    assert_eq!(k.minimal_homogeneity(&ch(vec![b])), Ok(3));
    assert_eq!(k.minimal_homogeneity(&ch(vec![a, b])), Ok(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// ∂*∂* kills random chains, not only basis columns.
    #[test]
    fn random_chains_are_killed(coeffs in prop::collection::vec((0usize..2000, -5i64..=5), 1..12)) {
        let g = build_so(3).unwrap();
        let k = Kostant::new(&g);
        let (d2, d3) = (k.codifferential(2).unwrap(), k.codifferential(3).unwrap());
        let dim = k.space(3).dim();
        let mut v: Vec<(usize, freedist::scalar::Scalar)> = coeffs.iter().map(|&(i, c)| (i % dim, q(c))).collect();
        v.sort_by_key(|p| p.0);
        v.dedup_by_key(|p| p.0);
        v.retain(|p| !p.1.is_zero());
        prop_assert!(d2.apply(&d3.apply(&v)).is_empty());
    }
}
