//! Chains Λᶜp⊥ ⊗ g, the codifferential ∂* and differential ∂, and H₂ = ker ∂*₂ / im ∂*₃
//! split by homogeneity.

use crate::lie::{Block, GradedLieAlgebra};
use crate::linalg::{to_sparse, Echelon, Mat, SparseVec};
use crate::scalar::{q, Scalar};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KostantError {
    #[error("minimal homogeneity of the zero chain is undefined")]
    ZeroChain,
    #[error("wedge degree {0} out of range")]
    Degree(usize),
}

/// Canonical basis of Λᶜp⊥ ⊗ g: increasing tuples of p⊥ positions times a g index.
#[derive(Clone, Debug)]
pub struct ChainSpace {
    pub c: usize,
    pub wedges: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    dim_g: usize,
    wedge_grades: Vec<i32>,
    g_grades: Vec<i32>,
}

impl ChainSpace {
    pub fn dim(&self) -> usize {
        self.wedges.len() * self.dim_g
    }

    pub fn index_of(&self, wedge: &[usize], k: usize) -> Option<usize> {
        self.index.get(wedge).map(|w| w * self.dim_g + k)
    }

    pub fn split(&self, idx: usize) -> (&[usize], usize) {
        (&self.wedges[idx / self.dim_g], idx % self.dim_g)
    }

    pub fn homogeneity(&self, idx: usize) -> i32 {
        self.wedge_grades[idx / self.dim_g] + self.g_grades[idx % self.dim_g]
    }
}

/// Element of a chain space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub c: usize,
    pub coords: SparseVec,
}

/// Sparse linear map stored by columns.
#[derive(Clone, Debug)]
pub struct SparseMap {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMap {
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, x) in v {
            for (i, y) in &self.columns[*j] {
                *acc.entry(*i).or_insert_with(Scalar::zero) += x * y;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMap) -> SparseMap {
        SparseMap { rows: self.rows, columns: other.columns.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }
}

/// One block `(g_i ∧ g_j) ⊗ g_k` and how much of H₂ it can represent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSupport {
    pub wedge: (i32, i32),
    pub g: i32,
    pub homogeneity: i32,
    pub dim: usize,
}

impl BlockSupport {
    pub fn name(&self) -> String {
        format!("(g{}∧g{})⊗g{}", self.wedge.0, self.wedge.1, self.g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub c: usize,
    pub dims: BTreeMap<i32, usize>,
    pub support: Vec<BlockSupport>,
}

impl HomologyReport {
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn present(&self, wedge: (i32, i32), g: i32) -> bool {
        self.support.iter().any(|b| b.wedge == wedge && b.g == g && b.dim > 0)
    }
}

/// Sign-sorts a wedge of distinct indices; `None` if an index repeats.
fn sort_wedge(mut w: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut odd = false;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, odd))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn sign(odd: bool) -> Scalar {
    if odd {
        q(-1)
    } else {
        q(1)
    }
}

/// Complex data for so(n+1,n): p⊥ basis, dual g₋ basis and cached brackets.
pub struct Kostant<'a> {
    pub alg: &'a GradedLieAlgebra,
    /// g indices of the p⊥ basis u_a.
    nil: Vec<usize>,
    /// g₋ element z_a with u_a(z_b) = δ_ab, as (g index, coefficient).
    dual: Vec<(usize, Scalar)>,
    /// {u_a, u_b} in u-coordinates.
    nil_bracket: Vec<Vec<SparseVec>>,
    /// {z_a, z_b} in z-coordinates.
    dual_bracket: Vec<Vec<SparseVec>>,
    /// Sign override on one ∂* term, for mutation checks.
    pub perturb: bool,
}

impl<'a> Kostant<'a> {
    pub fn new(alg: &'a GradedLieAlgebra) -> Self {
        let nil = alg.nilradical_indices();
        let pos: HashMap<usize, usize> = nil.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        // the Cartan involution M -> -Mᵗ sends v_j to -w_j and B_kl to C_kl
        let dual: Vec<(usize, Scalar)> = nil
            .iter()
            .map(|&i| match alg.blocks[i] {
                Block::V(j) => (alg.index(Block::W(j)), q(-1)),
                Block::B(k, l) => (alg.index(Block::C(k, l)), q(1)),
                _ => unreachable!("nilradical holds only v and B blocks"),
            })
            .collect();
        let dpos: HashMap<usize, usize> = dual.iter().enumerate().map(|(a, (i, _))| (*i, a)).collect();
        let m = nil.len();
        let mut nil_bracket = vec![vec![Vec::new(); m]; m];
        let mut dual_bracket = vec![vec![Vec::new(); m]; m];
        for a in 0..m {
            for b in 0..m {
                let br = alg.bracket(&alg.unit(nil[a]), &alg.unit(nil[b])).unwrap();
                nil_bracket[a][b] = to_sparse(&br).into_iter().map(|(k, x)| (pos[&k], x)).collect();
                let (za, ca) = &dual[a];
                let (zb, cb) = &dual[b];
                let br = alg.bracket(&alg.unit(*za), &alg.unit(*zb)).unwrap();
                let f = ca * cb;
                dual_bracket[a][b] = to_sparse(&br)
                    .into_iter()
                    .map(|(k, x)| {
                        let t = dpos[&k];
                        (t, &f * &x / &dual[t].1)
                    })
                    .collect();
            }
        }
        Kostant { alg, nil, dual, nil_bracket, dual_bracket, perturb: false }
    }

    pub fn nilradical(&self) -> &[usize] {
        &self.nil
    }

    pub fn space(&self, c: usize) -> ChainSpace {
        let wedges = combinations(self.nil.len(), c);
        let index = wedges.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let wedge_grades = wedges.iter().map(|w| w.iter().map(|&a| self.alg.grade(self.nil[a])).sum()).collect();
        let g_grades = (0..self.alg.dim()).map(|k| self.alg.grade(k)).collect();
        ChainSpace { c, wedges, index, dim_g: self.alg.dim(), wedge_grades, g_grades }
    }

    fn g_bracket(&self, i: usize, k: usize) -> SparseVec {
        to_sparse(&self.alg.bracket(&self.alg.unit(i), &self.alg.unit(k)).unwrap())
    }

    fn add_term(acc: &mut BTreeMap<usize, Scalar>, idx: usize, x: Scalar) {
        let e = acc.entry(idx).or_insert_with(Scalar::zero);
        *e += x;
    }

    /// ∂*((u_1∧…∧u_c)⊗v) = Σ_{j<k} (−1)^{j+k} ({u_j,u_k}∧…û_j…û_k…)⊗v + Σ_j (−1)^j (…û_j…)⊗{u_j,v},
    /// indices counted from 1.
    pub fn codifferential(&self, c: usize) -> Result<SparseMap, KostantError> {
        if c == 0 {
            return Err(KostantError::Degree(c));
        }
        let src = self.space(c);
        let dst = self.space(c - 1);
        let mut columns = Vec::with_capacity(src.dim());
        for idx in 0..src.dim() {
            let (wedge, k) = src.split(idx);
            let mut acc = BTreeMap::new();
            for j in 0..c {
                for l in j + 1..c {
                    let s = sign((j + l) % 2 == 1);
                    let rest: Vec<usize> =
                        wedge.iter().enumerate().filter(|&(t, _)| t != j && t != l).map(|(_, &a)| a).collect();
                    for (m, x) in &self.nil_bracket[wedge[j]][wedge[l]] {
                        let mut w = vec![*m];
                        w.extend(&rest);
                        if let Some((w, odd)) = sort_wedge(w) {
                            let t = dst.index_of(&w, k).unwrap();
                            Self::add_term(&mut acc, t, &s * x * sign(odd));
                        }
                    }
                }
            }
            for j in 0..c {
                let mut s = sign(j % 2 == 0);
                if self.perturb && idx == 0 && j == 0 {
                    s = -s;
                }
                let rest: Vec<usize> = wedge.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &a)| a).collect();
                for (kk, x) in self.g_bracket(self.nil[wedge[j]], k) {
                    let t = dst.index_of(&rest, kk).unwrap();
                    Self::add_term(&mut acc, t, &s * &x);
                }
            }
            columns.push(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect());
        }
        Ok(SparseMap { rows: dst.dim(), columns })
    }

    /// Cochain differential of g₋ with values in g, with u_a read as the functional dual to z_a:
    /// ∂(α⊗e) = dα⊗e + Σ_a u_a∧α ⊗ {z_a, e}, where du_m = −Σ_{a<b} u_m({z_a,z_b}) u_a∧u_b.
    pub fn differential(&self, c: usize) -> SparseMap {
        let src = self.space(c);
        let dst = self.space(c + 1);
        let m = self.nil.len();
        let mut columns = Vec::with_capacity(src.dim());
        for idx in 0..src.dim() {
            let (wedge, k) = src.split(idx);
            let mut acc = BTreeMap::new();
            // dα with α = u_{w_0} ∧ … ; d is a derivation
            for (pos, &wm) in wedge.iter().enumerate() {
                let s = sign(pos % 2 == 1);
                for a in 0..m {
                    for b in a + 1..m {
                        let coeff = self.dual_bracket[a][b].iter().find(|(t, _)| *t == wm).map(|(_, x)| x.clone());
                        let Some(coeff) = coeff else { continue };
                        let mut w: Vec<usize> = wedge[..pos].to_vec();
                        w.push(a);
                        w.push(b);
                        w.extend(&wedge[pos + 1..]);
                        if let Some((w, odd)) = sort_wedge(w) {
                            let t = dst.index_of(&w, k).unwrap();
                            Self::add_term(&mut acc, t, -(&s * &coeff) * sign(odd));
                        }
                    }
                }
            }
            for a in 0..m {
                let mut w = vec![a];
                w.extend(wedge);
                let Some((w, odd)) = sort_wedge(w) else { continue };
                let (zi, zc) = &self.dual[a];
                for (kk, x) in self.g_bracket(*zi, k) {
                    let t = dst.index_of(&w, kk).unwrap();
                    Self::add_term(&mut acc, t, zc * &x * sign(odd));
                }
            }
            columns.push(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect());
        }
        SparseMap { rows: dst.dim(), columns }
    }

    pub fn minimal_homogeneity(&self, v: &ChainVector) -> Result<i32, KostantError> {
        let sp = self.space(v.c);
        v.coords.iter().filter(|(_, x)| !x.is_zero()).map(|(i, _)| sp.homogeneity(*i)).min().ok_or(KostantError::ZeroChain)
    }

    /// H₂ = ker ∂*₂ / im ∂*₃ per homogeneity, with block support.
    pub fn homology(&self) -> HomologyReport {
        let c2 = self.space(2);
        let d2 = self.codifferential(2).unwrap();
        let d3 = self.codifferential(3).unwrap();
        let c3 = self.space(3);
        let c1 = self.space(1);
        let mut by_h2: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for i in 0..c2.dim() {
            by_h2.entry(c2.homogeneity(i)).or_default().push(i);
        }
        let mut by_h3: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for i in 0..c3.dim() {
            by_h3.entry(c3.homogeneity(i)).or_default().push(i);
        }
        let mut dims = BTreeMap::new();
        let mut support = Vec::new();
        for (&h, idx2) in &by_h2 {
            let local: HashMap<usize, usize> = idx2.iter().enumerate().map(|(a, &i)| (i, a)).collect();
            // rows of ∂*₂ restricted to this homogeneity
            let mut rows1: Vec<usize> = idx2.iter().flat_map(|&i| d2.columns[i].iter().map(|(r, _)| *r)).collect();
            rows1.sort_unstable();
            rows1.dedup();
            debug_assert!(rows1.iter().all(|&r| c1.homogeneity(r) == h));
            let rpos: HashMap<usize, usize> = rows1.iter().enumerate().map(|(a, &r)| (r, a)).collect();
            let column_of = |i: usize| -> Vec<Scalar> {
                let mut v = vec![Scalar::zero(); rows1.len()];
                for (r, x) in &d2.columns[i] {
                    v[rpos[r]] = x.clone();
                }
                v
            };
            let mut ker_rank = Echelon::new();
            for &i in idx2 {
                ker_rank.insert_dense(&column_of(i));
            }
            let ker_dim = idx2.len() - ker_rank.rank();
            let mut image = Echelon::new();
            for &i in by_h3.get(&h).map(|v| v.as_slice()).unwrap_or(&[]) {
                let col: SparseVec = d3.columns[i].iter().map(|(r, x)| (local[r], x.clone())).collect();
                debug_assert!(d3.columns[i].iter().all(|(r, _)| c2.homogeneity(*r) == h));
                image.insert(col);
            }
            dims.insert(h, ker_dim - image.rank());
            // blocks of this homogeneity
            let mut blocks: BTreeMap<(i32, i32, i32), Vec<usize>> = BTreeMap::new();
            for &i in idx2 {
                let (w, k) = c2.split(i);
                let g0 = self.alg.grade(self.nil[w[0]]);
                let g1 = self.alg.grade(self.nil[w[1]]);
                let key = (g0.min(g1), g0.max(g1), self.alg.grade(k));
                blocks.entry(key).or_default().push(i);
            }
            for ((a, b, k), members) in blocks {
                let cols: Vec<Vec<Scalar>> = members.iter().map(|&i| column_of(i)).collect();
                let kernel = if rows1.is_empty() {
                    (0..members.len())
                        .map(|t| (0..members.len()).map(|s| if s == t { q(1) } else { q(0) }).collect())
                        .collect()
                } else {
                    Mat::from_columns(&cols, rows1.len()).kernel()
                };
                let mut e = image.clone();
                let mut extra = 0;
                for kv in kernel {
                    let sv: SparseVec =
                        kv.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(t, x)| (local[&members[t]], x.clone())).collect();
                    let mut sorted = sv;
                    sorted.sort_by_key(|(i, _)| *i);
                    if e.insert(sorted) {
                        extra += 1;
                    }
                }
                support.push(BlockSupport { wedge: (a, b), g: k, homogeneity: h, dim: extra });
            }
        }
        HomologyReport { c: 2, dims, support }
    }
}

/// Whether ∂*ᶜ⁺¹ equals a scalar multiple of the transpose of ∂ᶜ; returns the scalar.
pub fn adjoint_scalar(d: &SparseMap, dstar: &SparseMap) -> Option<Scalar> {
    let mut ratio: Option<Scalar> = None;
    let dt = d.to_dense().transpose();
    let ds = dstar.to_dense();
    if (dt.rows(), dt.cols()) != (ds.rows(), ds.cols()) {
        return None;
    }
    for r in 0..dt.rows() {
        for c in 0..dt.cols() {
            let (a, b) = (&dt[(r, c)], &ds[(r, c)]);
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let x = b / a;
                    match &ratio {
                        None => ratio = Some(x),
                        Some(y) if *y == x => {}
                        Some(_) => return None,
                    }
                }
                _ => return None,
            }
        }
    }
    ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_so;

    #[test]
    fn wedge_sorting() {
        assert_eq!(sort_wedge(vec![2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_wedge(vec![1, 0]), Some((vec![0, 1], true)));
        assert_eq!(sort_wedge(vec![1, 1]), None);
    }

    #[test]
    fn squares_vanish_n2() {
        let g = build_so(2).unwrap();
        let k = Kostant::new(&g);
        assert!(k.codifferential(2).unwrap().compose(&k.codifferential(3).unwrap()).is_zero());
        assert!(k.differential(1).compose(&k.differential(0)).is_zero());
    }

    #[test]
    fn zero_chain_has_no_homogeneity() {
        let g = build_so(2).unwrap();
        let k = Kostant::new(&g);
        assert_eq!(k.minimal_homogeneity(&ChainVector { c: 2, coords: vec![] }), Err(KostantError::ZeroChain));
    }
}
