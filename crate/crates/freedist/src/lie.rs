//! so(n+1,n) in block form, its |2|-grading, Killing form and grading element, plus a
//! generic matrix Lie algebra used for the other real forms.

use crate::linalg::{to_sparse, Echelon, LinalgError, Mat, SparseVec};
use crate::scalar::{q, Scalar};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not in the algebra")]
    NotInAlgebra,
    #[error("grading element system: {0}")]
    Grading(LinalgError),
}

/// Real matrix Lie algebra given by a basis of matrices, with coordinates read off a
/// fixed set of entries.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    size: usize,
    basis: Vec<Mat>,
    positions: Vec<(usize, usize)>,
    reader: Mat,
    structure: Vec<Vec<SparseVec>>,
}

impl MatrixAlgebra {
    /// `basis` must be linearly independent and closed under commutator.
    pub fn new(basis: Vec<Mat>) -> Result<Self, LieError> {
        let size = basis.first().map_or(0, |m| m.rows());
        let flat: Vec<Vec<Scalar>> = basis.iter().map(|m| m.entries().to_vec()).collect();
        // pivots of the basis-as-rows matrix give entries that determine coordinates
        let (_, pivots) = Mat::from_rows(&flat, size * size).rref();
        if pivots.len() != basis.len() {
            return Err(LieError::NotInAlgebra);
        }
        let positions: Vec<(usize, usize)> = pivots.iter().map(|&p| (p / size, p % size)).collect();
        let sub = Mat::from_fn(basis.len(), basis.len(), |r, c| basis[c][positions[r]].clone());
        let reader = sub.inverse().ok_or(LieError::NotInAlgebra)?;
        let mut alg = MatrixAlgebra { size, basis, positions, reader, structure: Vec::new() };
        let d = alg.dim();
        let mut structure = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let c = alg.coords(&alg.basis[i].commutator(&alg.basis[j]))?;
                let s = to_sparse(&c);
                structure[j][i] = s.iter().map(|(k, x)| (*k, -x.clone())).collect();
                structure[i][j] = s;
            }
        }
        alg.structure = structure;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn structure(&self, i: usize, j: usize) -> &SparseVec {
        &self.structure[i][j]
    }

    /// Coordinates of a matrix, checked by reconstruction.
    pub fn coords(&self, m: &Mat) -> Result<Vec<Scalar>, LieError> {
        let rhs: Vec<Scalar> = self.positions.iter().map(|&p| m[p].clone()).collect();
        let c = self.reader.mul_vec(&rhs);
        if &self.to_matrix(&c) != m {
            return Err(LieError::NotInAlgebra);
        }
        Ok(c)
    }

    pub fn to_matrix(&self, c: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.size, self.size);
        for (x, b) in c.iter().zip(&self.basis) {
            if !x.is_zero() {
                m = m.add(&b.scale(x));
            }
        }
        m
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        let d = self.dim();
        for v in [x, y] {
            if v.len() != d {
                return Err(LieError::DimensionMismatch { expected: d, got: v.len() });
            }
        }
        let mut out = vec![Scalar::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in &self.structure[i][j] {
                    out[*k] += &f * c;
                }
            }
        }
        Ok(out)
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// Matrix of `ad x` in the basis.
    pub fn ad(&self, x: &[Scalar]) -> Mat {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for j in 0..d {
            let col = self.bracket(x, &self.unit(j)).expect("same algebra");
            for k in 0..d {
                m[(k, j)] = col[k].clone();
            }
        }
        m
    }

    /// Gram matrix of the trace form `tr(ad x ad y)` on the basis.
    pub fn killing_matrix(&self) -> Mat {
        let d = self.dim();
        let ads: Vec<Mat> = (0..d).map(|i| self.ad(&self.unit(i))).collect();
        Mat::from_fn(d, d, |i, j| ads[i].mul(&ads[j]).trace())
    }

    pub fn killing_form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.ad(x).mul(&self.ad(y)).trace()
    }

    /// First failing basis triple of the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, Vec<Scalar>)> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&self.bracket(&ei, &ej).unwrap(), &ek).unwrap();
                    let b = self.bracket(&self.bracket(&ej, &ek).unwrap(), &ei).unwrap();
                    let c = self.bracket(&self.bracket(&ek, &ei).unwrap(), &ej).unwrap();
                    let s: Vec<Scalar> = (0..d).map(|t| &a[t] + &b[t] + &c[t]).collect();
                    if s.iter().any(|x| !x.is_zero()) {
                        return Some((i, j, k, s));
                    }
                }
            }
        }
        None
    }

    /// Overrides one structure constant pair; used to build deliberately broken algebras.
    pub fn perturb_structure(&mut self, i: usize, j: usize, k: usize, delta: Scalar) {
        let mut dense = vec![Scalar::zero(); self.dim()];
        for (t, x) in &self.structure[i][j] {
            dense[*t] = x.clone();
        }
        dense[k] += delta;
        let s = to_sparse(&dense);
        self.structure[j][i] = s.iter().map(|(t, x)| (*t, -x.clone())).collect();
        self.structure[i][j] = s;
    }

    /// Basis of the subalgebra annihilating a linear action: `act(basis_i)` gives the image
    /// vector of each basis element; returns coordinate vectors spanning the kernel.
    pub fn annihilator(&self, act: impl Fn(&Mat) -> Vec<Scalar>) -> Vec<Vec<Scalar>> {
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(act).collect();
        let rows = cols.first().map_or(0, |c| c.len());
        Mat::from_columns(&cols, rows).kernel()
    }

    /// Whether the span of the given coordinate vectors is closed under bracket.
    pub fn is_subalgebra(&self, span: &[Vec<Scalar>]) -> bool {
        let mut e = Echelon::new();
        for v in span {
            e.insert_dense(v);
        }
        for (a, x) in span.iter().enumerate() {
            for y in &span[a + 1..] {
                if !e.contains(&to_sparse(&self.bracket(x, y).unwrap())) {
                    return false;
                }
            }
        }
        true
    }
}

/// so(n+1,n) block data. Stored as the matrix
/// `[[A, v, B], [w, 0, -vᵗ], [C, -wᵗ, -Aᵗ]]`, which preserves the metric
/// `[[0,0,I],[0,1,0],[I,0,0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockElement {
    pub n: usize,
    pub a: Mat,
    pub v: Vec<Scalar>,
    pub b: Mat,
    pub w: Vec<Scalar>,
    pub c: Mat,
}

impl BlockElement {
    pub fn zero(n: usize) -> Self {
        BlockElement {
            n,
            a: Mat::zeros(n, n),
            v: vec![Scalar::zero(); n],
            b: Mat::zeros(n, n),
            w: vec![Scalar::zero(); n],
            c: Mat::zeros(n, n),
        }
    }

    pub fn is_valid(&self) -> bool {
        let neg = |m: &Mat| m.scale(&q(-1));
        self.b.transpose() == neg(&self.b) && self.c.transpose() == neg(&self.c)
    }

    pub fn to_matrix(&self) -> Mat {
        let n = self.n;
        let mut m = Mat::zeros(2 * n + 1, 2 * n + 1);
        for i in 0..n {
            m[(i, n)] = self.v[i].clone();
            m[(n, n + 1 + i)] = -self.v[i].clone();
            m[(n, i)] = self.w[i].clone();
            m[(n + 1 + i, n)] = -self.w[i].clone();
            for j in 0..n {
                m[(i, j)] = self.a[(i, j)].clone();
                m[(n + 1 + j, n + 1 + i)] = -self.a[(i, j)].clone();
                m[(i, n + 1 + j)] = self.b[(i, j)].clone();
                m[(n + 1 + i, j)] = self.c[(i, j)].clone();
            }
        }
        m
    }

    pub fn from_matrix(n: usize, m: &Mat) -> Self {
        BlockElement {
            n,
            a: Mat::from_fn(n, n, |i, j| m[(i, j)].clone()),
            v: (0..n).map(|i| m[(i, n)].clone()).collect(),
            b: Mat::from_fn(n, n, |i, j| m[(i, n + 1 + j)].clone()),
            w: (0..n).map(|i| m[(n, i)].clone()).collect(),
            c: Mat::from_fn(n, n, |i, j| m[(n + 1 + i, j)].clone()),
        }
    }
}

/// Which block a basis vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    C(usize, usize),
    W(usize),
    A(usize, usize),
    V(usize),
    B(usize, usize),
}

impl Block {
    pub fn grade(&self) -> i32 {
        match self {
            Block::C(..) => -2,
            Block::W(_) => -1,
            Block::A(..) => 0,
            Block::V(_) => 1,
            Block::B(..) => 2,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Block::C(k, l) => format!("C{}{}", k + 1, l + 1),
            Block::W(j) => format!("w{}", j + 1),
            Block::A(i, j) => format!("A{}{}", i + 1, j + 1),
            Block::V(j) => format!("v{}", j + 1),
            Block::B(k, l) => format!("B{}{}", k + 1, l + 1),
        }
    }
}

/// so(n+1,n) with its grading and basis labels.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    pub n: usize,
    pub alg: MatrixAlgebra,
    pub blocks: Vec<Block>,
}

/// Coordinate vector of a grading element in a [`GradedLieAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingElement {
    pub element: Vec<Scalar>,
}

/// Outcome of the nilradical identities.
#[derive(Clone, Debug)]
pub struct NilradicalReport {
    pub wedge_rank: usize,
    pub dim_g1: usize,
    pub dim_g2: usize,
    pub failures: Vec<String>,
}

impl NilradicalReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn block_order(n: usize) -> Vec<Block> {
    let mut out = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            out.push(Block::C(k, l));
        }
    }
    out.extend((0..n).map(Block::W));
    for i in 0..n {
        for j in 0..n {
            out.push(Block::A(i, j));
        }
    }
    out.extend((0..n).map(Block::V));
    for k in 0..n {
        for l in k + 1..n {
            out.push(Block::B(k, l));
        }
    }
    out
}

fn block_matrix(n: usize, b: Block) -> Mat {
    let mut e = BlockElement::zero(n);
    match b {
        Block::C(k, l) => {
            e.c[(k, l)] = q(1);
            e.c[(l, k)] = q(-1);
        }
        Block::W(j) => e.w[j] = q(1),
        Block::A(i, j) => e.a[(i, j)] = q(1),
        Block::V(j) => e.v[j] = q(1),
        Block::B(k, l) => {
            e.b[(k, l)] = q(1);
            e.b[(l, k)] = q(-1);
        }
    }
    e.to_matrix()
}

/// The metric `[[0,0,I],[0,1,0],[I,0,0]]` on R^(2n+1).
pub fn so_metric(n: usize) -> Mat {
    Mat::from_fn(2 * n + 1, 2 * n + 1, |r, c| {
        if (r == n && c == n) || (r < n && c == r + n + 1) || (c < n && r == c + n + 1) {
            q(1)
        } else {
            q(0)
        }
    })
}

pub fn build_so(n: usize) -> Result<GradedLieAlgebra, LieError> {
    if n == 0 {
        return Err(LieError::ZeroRank);
    }
    let blocks = block_order(n);
    let basis = blocks.iter().map(|&b| block_matrix(n, b)).collect();
    Ok(GradedLieAlgebra { n, alg: MatrixAlgebra::new(basis)?, blocks })
}

impl GradedLieAlgebra {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn grade(&self, i: usize) -> i32 {
        self.blocks[i].grade()
    }

    pub fn label(&self, i: usize) -> String {
        self.blocks[i].label()
    }

    pub fn indices_of_grade(&self, g: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grade(i) == g).collect()
    }

    /// Basis index of a block entry.
    pub fn index(&self, b: Block) -> usize {
        self.blocks.iter().position(|&x| x == b).expect("block in basis")
    }

    /// Parabolic p = nonnegative grades.
    pub fn p_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grade(i) >= 0).collect()
    }

    /// Nilradical p⊥ = g1 ⊕ g2.
    pub fn nilradical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grade(i) > 0).collect()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        self.alg.bracket(x, y)
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        self.alg.unit(i)
    }

    pub fn killing_form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.alg.killing_form(x, y)
    }

    /// First basis pair whose bracket leaves grade `g_i + g_j`.
    pub fn grade_violation(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let target = self.grade(i) + self.grade(j);
                if self.alg.structure(i, j).iter().any(|(k, _)| self.grade(*k) != target) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn grading_element(&self) -> Result<GradingElement, LieError> {
        let g0 = self.indices_of_grade(0);
        let d = self.dim();
        // unknown x in g0; equations [x, e_k] = grade(k) e_k for every k
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in 0..d {
            let cols: Vec<Vec<Scalar>> =
                g0.iter().map(|&i| self.alg.bracket(&self.unit(i), &self.unit(k)).unwrap()).collect();
            for t in 0..d {
                rows.push(cols.iter().map(|c| c[t].clone()).collect::<Vec<_>>());
                rhs.push(if t == k { q(self.grade(k) as i64) } else { q(0) });
            }
        }
        let m = Mat::from_rows(&rows, g0.len());
        let x = m.solve(&rhs).map_err(LieError::Grading)?;
        if !m.kernel().is_empty() {
            return Err(LieError::Grading(LinalgError::DimensionMismatch("grading element not unique".into())));
        }
        let mut element = vec![Scalar::zero(); d];
        for (c, &i) in x.into_iter().zip(&g0) {
            element[i] = c;
        }
        Ok(GradingElement { element })
    }

    pub fn nilradical_check(&self) -> NilradicalReport {
        let g1 = self.indices_of_grade(1);
        let g2 = self.indices_of_grade(2);
        let mut failures = Vec::new();
        let mut wedge = Echelon::new();
        let mut pairs = 0;
        for (a, &i) in g1.iter().enumerate() {
            for &j in &g1[a + 1..] {
                pairs += 1;
                let b = self.alg.bracket(&self.unit(i), &self.unit(j)).unwrap();
                if b.iter().enumerate().any(|(k, x)| !x.is_zero() && self.grade(k) != 2) {
                    failures.push(format!("[{},{}] leaves g2", self.label(i), self.label(j)));
                }
                wedge.insert_dense(&b);
            }
        }
        let wedge_rank = wedge.rank();
        if wedge_rank != g2.len() || pairs != g2.len() {
            failures.push(format!("wedge map rank {} from {} pairs onto g2 of dim {}", wedge_rank, pairs, g2.len()));
        }
        for &i in self.nilradical_indices().iter() {
            for &j in &g2 {
                let b = self.alg.bracket(&self.unit(i), &self.unit(j)).unwrap();
                if b.iter().any(|x| !x.is_zero()) {
                    failures.push(format!("[{},{}] != 0", self.label(i), self.label(j)));
                }
            }
        }
        for &i in &self.p_indices() {
            for &j in &self.nilradical_indices() {
                let b = self.alg.bracket(&self.unit(i), &self.unit(j)).unwrap();
                if b.iter().enumerate().any(|(k, x)| !x.is_zero() && self.grade(k) <= 0) {
                    failures.push(format!("p⊥ not an ideal at [{},{}]", self.label(i), self.label(j)));
                }
            }
        }
        NilradicalReport { wedge_rank, dim_g1: g1.len(), dim_g2: g2.len(), failures }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        assert_eq!(build_so(2).unwrap().dim(), 10);
        let g = build_so(3).unwrap();
        assert_eq!(g.dim(), 21);
        assert_eq!(g.p_indices().len(), 15);
        assert!(matches!(build_so(0), Err(LieError::ZeroRank)));
    }

    #[test]
    fn basis_preserves_metric() {
        for n in 1..=4 {
            let g = build_so(n).unwrap();
            let s = so_metric(n);
            for m in g.alg.basis() {
                assert!(m.transpose().mul(&s).add(&s.mul(m)).is_zero());
            }
        }
    }

    #[test]
    fn block_roundtrip() {
        let g = build_so(3).unwrap();
        for m in g.alg.basis() {
            let b = BlockElement::from_matrix(3, m);
            assert!(b.is_valid());
            assert_eq!(&b.to_matrix(), m);
        }
    }
}

/// Basis of gl(n): elementary matrices E_rc in row-major order.
pub fn gl_basis(n: usize) -> Vec<Mat> {
    (0..n * n).map(|k| Mat::from_fn(n, n, |r, c| if r * n + c == k { q(1) } else { q(0) })).collect()
}

/// Basis of {m : mᵗG + Gm = 0} for a symmetric nondegenerate G.
pub fn orthogonal_basis(g: &Mat) -> Vec<Mat> {
    let n = g.rows();
    let gl = gl_basis(n);
    let cols: Vec<Vec<Scalar>> = gl.iter().map(|e| e.transpose().mul(g).add(&g.mul(e)).entries().to_vec()).collect();
    let ker = Mat::from_columns(&cols, n * n).kernel();
    ker.iter()
        .map(|c| {
            let mut m = Mat::zeros(n, n);
            for (x, e) in c.iter().zip(&gl) {
                if !x.is_zero() {
                    m = m.add(&e.scale(x));
                }
            }
            m
        })
        .collect()
}

/// A k-linear form on R^dim stored densely, index (i₁,…,i_k) ↦ i₁·dim^(k−1) + … + i_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiForm {
    pub dim: usize,
    pub rank: usize,
    pub data: Vec<Scalar>,
}

impl MultiForm {
    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let len = dim.pow(rank as u32);
        let data = (0..len).map(|k| f(&Self::unflatten(dim, rank, k))).collect();
        MultiForm { dim, rank, data }
    }

    fn unflatten(dim: usize, rank: usize, mut k: usize) -> Vec<usize> {
        let mut idx = vec![0; rank];
        for s in (0..rank).rev() {
            idx[s] = k % dim;
            k /= dim;
        }
        idx
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.data[self.flatten(idx)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        MultiForm { dim: self.dim, rank: self.rank, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        MultiForm { dim: self.dim, rank: self.rank, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Infinitesimal action (m·T)(e_i…) = −Σ_s T(…, m e_{i_s}, …).
    pub fn act(&self, m: &Mat) -> MultiForm {
        let d = self.dim;
        MultiForm::from_fn(d, self.rank, |idx| {
            let mut acc = Scalar::zero();
            let mut j = idx.to_vec();
            for s in 0..idx.len() {
                for k in 0..d {
                    let c = &m[(k, idx[s])];
                    if c.is_zero() {
                        continue;
                    }
                    j[s] = k;
                    acc -= c * self.get(&j);
                }
                j[s] = idx[s];
            }
            acc
        })
    }

    /// Pullback along a linear map: (φ*T)(e_i…) = T(φ e_i, …).
    pub fn pullback(&self, phi: &Mat) -> MultiForm {
        let d = phi.cols();
        let cols: Vec<Vec<Scalar>> = (0..d).map(|c| phi.column(c)).collect();
        MultiForm::from_fn(d, self.rank, |idx| {
            let mut acc = Scalar::zero();
            for k in 0..self.data.len() {
                let t = &self.data[k];
                if t.is_zero() {
                    continue;
                }
                let tgt = Self::unflatten(self.dim, self.rank, k);
                let mut p = t.clone();
                for (s, &i) in idx.iter().enumerate() {
                    p *= &cols[i][tgt[s]];
                    if p.is_zero() {
                        break;
                    }
                }
                acc += p;
            }
            acc
        })
    }

    /// Whether swapping any two slots flips the sign.
    pub fn is_alternating(&self) -> bool {
        (0..self.data.len()).all(|k| {
            let idx = Self::unflatten(self.dim, self.rank, k);
            (0..self.rank).all(|a| {
                (a + 1..self.rank).all(|b| {
                    let mut j = idx.clone();
                    j.swap(a, b);
                    self.data[k] == -self.get(&j).clone()
                })
            })
        })
    }
}

/// Stabilizer of a collection of forms inside a matrix algebra given by basis matrices.
#[derive(Clone, Debug)]
pub struct StabilizerAlgebra {
    pub basis: Vec<Mat>,
}

impl StabilizerAlgebra {
    pub fn of(ambient: &[Mat], forms: &[&MultiForm]) -> StabilizerAlgebra {
        let cols: Vec<Vec<Scalar>> =
            ambient.iter().map(|m| forms.iter().flat_map(|f| f.act(m).data).collect()).collect();
        let rows = cols.first().map_or(0, |c| c.len());
        let ker = Mat::from_columns(&cols, rows).kernel();
        let basis = ker
            .iter()
            .map(|c| {
                let mut m = Mat::zeros(ambient[0].rows(), ambient[0].cols());
                for (x, b) in c.iter().zip(ambient) {
                    if !x.is_zero() {
                        m = m.add(&b.scale(x));
                    }
                }
                m
            })
            .collect();
        StabilizerAlgebra { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exhaustive commutator closure on the basis.
    pub fn is_closed(&self) -> bool {
        let mut e = Echelon::new();
        for b in &self.basis {
            e.insert_dense(b.entries());
        }
        self.basis.iter().enumerate().all(|(i, a)| {
            self.basis[i + 1..].iter().all(|b| e.contains(&to_sparse(a.commutator(b).entries())))
        })
    }
}
