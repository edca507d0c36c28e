//! Standard tractor bundle T = (cov, scal, vec) ≅ H* ⊕ R ⊕ H of rank 2n+1: the metric h,
//! splitting changes by Υ, the tractor derivative, and V-preferred splittings.
//!
//! Conventions. A tractor is a column (cov; scal; vec) in a frame X_1..X_n of H and its dual.
//! For covectors or vectors a, b we write {a, b} = b aᵗ − a bᵗ, so T₋₂ ∋ U_pj ↔ e_j e_pᵗ − e_p e_jᵗ
//! and {Υ₂, X} = S X for Υ₂ ↔ S. The pairing of S ∈ Λ²H* with W ∈ Λ²H is ½ Σ S_ij W_ij.
//! Along a frame direction Z the tractor connection is Z + ρ(Z) with
//! ρ(Z) = [[−Γᵗ, P₁, −P₂], [−Z₋₁ᵗ, 0, −P₁ᵗ], [Z₋₂, Z₋₁, Γ]], an element of so(n+1,n).

use crate::jet::{JMat, Jet};
use crate::linalg::{rank_of, Mat};
use crate::models::ModelFrame;
use crate::poly::Poly;
use crate::scalar::{half, q, Scalar};
use num_traits::Zero;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TractorError {
    #[error("V is not generic at the base point: {0}")]
    Genericity(String),
    #[error("V has a component in the R slot")]
    CentralComponent,
    #[error("mu is degenerate")]
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TractorSection {
    pub cov: Vec<Jet>,
    pub scal: Jet,
    pub vec: Vec<Jet>,
}

impl TractorSection {
    pub fn n(&self) -> usize {
        self.vec.len()
    }

    pub fn from_scalars(cov: &[Scalar], scal: Scalar, vec: &[Scalar]) -> Self {
        TractorSection {
            cov: cov.iter().map(|x| Jet::scalar(x.clone())).collect(),
            scal: Jet::scalar(scal),
            vec: vec.iter().map(|x| Jet::scalar(x.clone())).collect(),
        }
    }

    /// Column (cov; scal; vec).
    pub fn to_column(&self) -> Vec<Jet> {
        self.cov.iter().cloned().chain(std::iter::once(self.scal.clone())).chain(self.vec.iter().cloned()).collect()
    }

    pub fn from_column(c: &[Jet]) -> Self {
        let n = (c.len() - 1) / 2;
        TractorSection { cov: c[..n].to_vec(), scal: c[n].clone(), vec: c[n + 1..].to_vec() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_column(&self.to_column().iter().zip(o.to_column()).map(|(a, b)| a.add(&b)).collect::<Vec<_>>())
    }

    pub fn scale(&self, c: &Jet) -> Self {
        Self::from_column(&self.to_column().iter().map(|a| a.mul(c)).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.to_column().iter().all(|x| x.is_zero())
    }

    pub fn values(&self) -> Vec<Scalar> {
        self.to_column().iter().map(|x| x.value()).collect()
    }
}

fn dot(a: &[Jet], b: &[Jet]) -> Jet {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

/// {a, b} = b aᵗ − a bᵗ.
pub fn wedge(a: &[Jet], b: &[Jet]) -> JMat {
    let n = a.len();
    let mut m = JMat::zeros(n, n, a[0].nvars(), a[0].order.min(b[0].order));
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, b[i].mul(&a[j]).sub(&a[i].mul(&b[j])));
        }
    }
    m
}

/// h(s, t) = ½(w(Y) + v(X) + τν).
pub fn h_metric(s: &TractorSection, t: &TractorSection) -> Jet {
    dot(&t.cov, &s.vec).add(&dot(&s.cov, &t.vec)).add(&s.scal.mul(&t.scal)).scale(&half())
}

/// Gram matrix of h on the basis (cov; scal; vec).
pub fn h_gram(n: usize) -> Mat {
    crate::lie::so_metric(n).scale(&half())
}

/// Change of Weyl structure by Υ = (Υ₁, Υ₂); Υ₂ stored as a skew matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylShift {
    pub ups1: Vec<Jet>,
    pub ups2: JMat,
}

impl WeylShift {
    pub fn zero(n: usize, nvars: usize, order: i32) -> Self {
        WeylShift { ups1: vec![Jet::zero(nvars, order); n], ups2: JMat::zeros(n, n, nvars, order) }
    }

    pub fn from_scalars(ups1: &[Scalar], ups2: &Mat) -> Self {
        WeylShift { ups1: ups1.iter().map(|x| Jet::scalar(x.clone())).collect(), ups2: JMat::from_scalars(ups2, 0, 0) }
    }

    pub fn n(&self) -> usize {
        self.ups1.len()
    }

    pub fn is_zero(&self) -> bool {
        self.ups1.iter().all(|x| x.is_zero()) && self.ups2.is_zero()
    }

    /// M = [[0, Υ₁, −Υ₂], [0, 0, −Υ₁ᵗ], [0, 0, 0]].
    pub fn generator(&self) -> JMat {
        let n = self.n();
        let z = &self.ups1[0];
        let mut m = JMat::zeros(2 * n + 1, 2 * n + 1, z.nvars(), self.ups2.min_order().min(z.order));
        for i in 0..n {
            m.set(i, n, self.ups1[i].clone());
            m.set(n, n + 1 + i, self.ups1[i].neg());
        }
        m.set_block(0, n + 1, &self.ups2.neg());
        m
    }

    /// exp(M) = I + M + ½M².
    pub fn matrix(&self) -> JMat {
        let m = self.generator();
        let z = m.get(0, 0);
        JMat::identity(m.rows, z.nvars(), z.order).add(&m).add(&m.mul(&m).scale(&half()))
    }

    pub fn inverse_matrix(&self) -> JMat {
        self.neg().matrix()
    }

    pub fn neg(&self) -> Self {
        WeylShift { ups1: self.ups1.iter().map(|x| x.neg()).collect(), ups2: self.ups2.neg() }
    }

    fn from_matrix(e: &JMat) -> Self {
        let n = (e.rows - 1) / 2;
        let z = e.get(0, 0);
        let nm = e.sub(&JMat::identity(e.rows, z.nvars(), z.order));
        let log = nm.sub(&nm.mul(&nm).scale(&half()));
        WeylShift { ups1: (0..n).map(|i| log.get(i, n).clone()).collect(), ups2: log.block(0, n + 1, n, n).neg() }
    }

    /// Shift equal to applying `self` and then `next`.
    pub fn then(&self, next: &WeylShift) -> WeylShift {
        Self::from_matrix(&next.matrix().mul(&self.matrix()))
    }
}

/// (v, τ, X) ↦ (v + τΥ₁ − {Υ₂, X} − ½Υ₁(X)Υ₁, τ − Υ₁(X), X).
pub fn upsilon_action(s: &TractorSection, u: &WeylShift) -> TractorSection {
    let ux = dot(&u.ups1, &s.vec);
    let sx = u.ups2.mul_vec(&s.vec);
    let cov = (0..s.n())
        .map(|i| s.cov[i].add(&s.scal.mul(&u.ups1[i])).sub(&sx[i]).sub(&ux.mul(&u.ups1[i]).scale(&half())))
        .collect();
    TractorSection { cov, scal: s.scal.sub(&ux), vec: s.vec.clone() }
}

/// Pieces of ρ(Z) in the current splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionParts {
    pub z1: Vec<Jet>,
    pub z2: JMat,
    pub gamma: JMat,
    pub p1: Vec<Jet>,
    pub p2: JMat,
}

pub fn decompose(rho: &JMat) -> ConnectionParts {
    let n = (rho.rows - 1) / 2;
    ConnectionParts {
        z1: (0..n).map(|i| rho.get(n + 1 + i, n).clone()).collect(),
        z2: rho.block(n + 1, 0, n, n),
        gamma: rho.block(n + 1, n + 1, n, n),
        p1: (0..n).map(|i| rho.get(i, n).clone()).collect(),
        p2: rho.block(0, n + 1, n, n).neg(),
    }
}

pub fn assemble(p: &ConnectionParts) -> JMat {
    let n = p.z1.len();
    let z = &p.z1[0];
    let mut m = JMat::zeros(2 * n + 1, 2 * n + 1, z.nvars(), z.order);
    m.set_block(0, 0, &p.gamma.transpose().neg());
    m.set_block(0, n + 1, &p.p2.neg());
    m.set_block(n + 1, 0, &p.z2);
    m.set_block(n + 1, n + 1, &p.gamma);
    for i in 0..n {
        m.set(i, n, p.p1[i].clone());
        m.set(n, n + 1 + i, p.p1[i].neg());
        m.set(n + 1 + i, n, p.z1[i].clone());
        m.set(n, i, p.z1[i].neg());
    }
    m
}

/// Rho-tensor blocks at a splitting, in the adapted basis of H ⊕ T₋₂. Entry [a][b] is P(Z_a)(Z_b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoTensor {
    pub p11: JMat,
    pub p12: JMat,
    pub p21: JMat,
    pub p22: JMat,
}

/// Frame, connection matrices ρ(Z_i) for each frame field, in one splitting.
#[derive(Clone, Debug)]
pub struct SplittingData {
    pub n: usize,
    pub frame: ModelFrame,
    pub rho: Vec<JMat>,
    pub order: i32,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|k| (k + 1..n).map(move |l| (k, l))).collect()
}

/// Skew matrix of U_kl.
pub fn u_matrix(n: usize, k: usize, l: usize, nvars: usize, order: i32) -> JMat {
    let mut w = JMat::zeros(n, n, nvars, order);
    w.set(l, k, Jet::constant(nvars, order, q(1)));
    w.set(k, l, Jet::constant(nvars, order, q(-1)));
    w
}

/// Coordinates of a skew matrix in the U_kl basis.
fn skew_coords(w: &JMat) -> Vec<Jet> {
    pairs(w.rows).iter().map(|&(k, l)| w.get(l, k).clone()).collect()
}

impl SplittingData {
    /// Flat splitting of a homogeneous frame: Γ = 0, P = 0.
    pub fn flat(frame: &ModelFrame, order: i32) -> Self {
        let nv = frame.nvars();
        let alg = &frame.alg;
        let rho = frame
            .g_image
            .iter()
            .map(|img| {
                // odd grades change sign so that X_j has Z₋₁ = e_j
                let signed: Vec<Scalar> =
                    img.iter().enumerate().map(|(i, x)| if alg.grade(i) % 2 != 0 { -x.clone() } else { x.clone() }).collect();
                JMat::from_scalars(&alg.alg.to_matrix(&signed), nv, order)
            })
            .collect();
        SplittingData { n: frame.n, frame: frame.clone(), rho, order }
    }

    pub fn nvars(&self) -> usize {
        self.frame.nvars()
    }

    /// Derivative of a jet along frame field i.
    pub fn field_apply(&self, i: usize, f: &Jet) -> Jet {
        let mut acc = f.zero_like();
        acc.order = f.order - 1;
        for (c, p) in self.frame.fields[i].comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = f.deriv(c);
            acc = acc.add(&Jet::from_poly(p.clone(), f.order).mul(&d));
        }
        acc
    }

    /// Derivative along Σ c_i Z_i.
    pub fn dir_apply(&self, c: &[Jet], f: &Jet) -> Jet {
        let mut acc = f.zero_like();
        acc.order = f.order - 1;
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                acc = acc.add(&ci.mul(&self.field_apply(i, f)));
            }
        }
        acc
    }

    pub fn dir_rho(&self, c: &[Jet]) -> JMat {
        let mut acc = self.rho[0].map(|x| x.zero_like());
        for (ci, r) in c.iter().zip(&self.rho) {
            if !ci.is_zero() {
                acc = acc.add(&r.scale_jet(ci));
            }
        }
        acc
    }

    /// Z + ρ(Z) with Z = Σ c_i Z_i.
    pub fn tractor_derivative_matrix(&self, c: &[Jet], s: &TractorSection) -> TractorSection {
        let col = s.to_column();
        let d: Vec<Jet> = col.iter().map(|x| self.dir_apply(c, x)).collect();
        let r = self.dir_rho(c).mul_vec(&col);
        TractorSection::from_column(&d.iter().zip(&r).map(|(a, b)| a.add(b)).collect::<Vec<_>>())
    }

    /// The three-slot display: (∇v + τP₁ − {P₂, X}, ∇τ − v(Z₋₁) − P₁(X), ∇X + τZ₋₁ + {Z₋₂, v}).
    pub fn tractor_derivative(&self, c: &[Jet], s: &TractorSection) -> TractorSection {
        let p = decompose(&self.dir_rho(c));
        let dv: Vec<Jet> = s.cov.iter().map(|x| self.dir_apply(c, x)).collect();
        let dx: Vec<Jet> = s.vec.iter().map(|x| self.dir_apply(c, x)).collect();
        let nab_v: Vec<Jet> = dv.iter().zip(p.gamma.transpose().mul_vec(&s.cov)).map(|(a, b)| a.sub(&b)).collect();
        let nab_x: Vec<Jet> = dx.iter().zip(p.gamma.mul_vec(&s.vec)).map(|(a, b)| a.add(&b)).collect();
        let p2x = p.p2.mul_vec(&s.vec);
        let z2v = p.z2.mul_vec(&s.cov);
        let n = s.n();
        TractorSection {
            cov: (0..n).map(|i| nab_v[i].add(&s.scal.mul(&p.p1[i])).sub(&p2x[i])).collect(),
            scal: self.dir_apply(c, &s.scal).sub(&dot(&s.cov, &p.z1)).sub(&dot(&p.p1, &s.vec)),
            vec: (0..n).map(|i| nab_x[i].add(&s.scal.mul(&p.z1[i])).add(&z2v[i])).collect(),
        }
    }

    /// ρ' = E ρ E⁻¹ − Z(E) E⁻¹ for the new splitting s' = E s.
    pub fn connection_change(&self, u: &WeylShift) -> SplittingData {
        let e = u.matrix();
        let einv = u.inverse_matrix();
        let rho = self
            .rho
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let ze = e.map(|x| self.field_apply(i, x));
                e.mul(r).mul(&einv).sub(&ze.mul(&einv))
            })
            .collect();
        SplittingData { n: self.n, frame: self.frame.clone(), rho, order: self.order }
    }

    /// ρ(Z_i)ρ-curvature: Z_i ρ_j − Z_j ρ_i + [ρ_i, ρ_j] − ρ([Z_i, Z_j]).
    pub fn curvature(&self, i: usize, j: usize) -> JMat {
        let nv = self.nvars();
        let coeff: Vec<Jet> = self.frame.lie_in_frame(i, j).unwrap().into_iter().map(|p| Jet::from_poly(p, self.order)).collect();
        let zi = self.rho[j].map(|x| self.field_apply(i, x));
        let zj = self.rho[i].map(|x| self.field_apply(j, x));
        let _ = nv;
        zi.sub(&zj).add(&self.rho[i].commutator(&self.rho[j])).sub(&self.dir_rho(&coeff))
    }

    /// Coefficients over the frame of the adapted directions e_1..e_n ∈ H, then U_kl ∈ T₋₂.
    pub fn adapted_directions(&self) -> Option<Vec<Vec<Jet>>> {
        let cols: Vec<Vec<Jet>> = self
            .rho
            .iter()
            .map(|r| {
                let p = decompose(r);
                p.z1.iter().cloned().chain(skew_coords(&p.z2)).collect()
            })
            .collect();
        let inv = JMat::from_columns(&cols).inverse()?;
        Some((0..inv.cols).map(|a| inv.column(a)).collect())
    }

    /// Rho-tensor in the adapted basis.
    pub fn rho_tensor(&self) -> Option<RhoTensor> {
        let dirs = self.adapted_directions()?;
        let n = self.n;
        let m = dirs.len();
        let pm = self.p_matrix(&dirs);
        Some(RhoTensor {
            p11: pm.block(0, 0, n, n),
            p12: pm.block(0, n, n, m - n),
            p21: pm.block(n, 0, m - n, n),
            p22: pm.block(n, n, m - n, m - n),
        })
    }

    fn p_matrix(&self, dirs: &[Vec<Jet>]) -> JMat {
        let m = dirs.len();
        let n = self.n;
        let z = self.rho[0].get(0, 0);
        let mut pm = JMat::zeros(m, m, z.nvars(), z.order);
        for (a, c) in dirs.iter().enumerate() {
            let p = decompose(&self.dir_rho(c));
            for b in 0..n {
                pm.set(a, b, p.p1[b].clone());
            }
            for (t, x) in skew_coords(&p.p2).into_iter().enumerate() {
                pm.set(a, n + t, x);
            }
        }
        pm
    }

    /// Action of ∇ along a direction on H ⊕ T₋₂ coordinates: Γ on H, W ↦ ΓW + WΓᵗ on T₋₂.
    fn nabla_matrix(&self, c: &[Jet]) -> JMat {
        let n = self.n;
        let gamma = decompose(&self.dir_rho(c)).gamma;
        let ps = pairs(n);
        let m = n + ps.len();
        let z = gamma.get(0, 0);
        let mut out = JMat::zeros(m, m, z.nvars(), z.order);
        out.set_block(0, 0, &gamma);
        for (b, &(k, l)) in ps.iter().enumerate() {
            let w = u_matrix(n, k, l, z.nvars(), z.order);
            let img = gamma.mul(&w).add(&w.mul(&gamma.transpose()));
            for (t, x) in skew_coords(&img).into_iter().enumerate() {
                out.set(n + t, n + b, x);
            }
        }
        out
    }

    /// ∇_Z of a bilinear form on H ⊕ T₋₂ given in the adapted basis.
    fn nabla_form(&self, c: &[Jet], form: &JMat) -> JMat {
        let nab = self.nabla_matrix(c);
        form.map(|x| self.dir_apply(c, x)).sub(&nab.transpose().mul(form)).sub(&form.mul(&nab))
    }
}

/// Extends vectors (assumed independent at the origin) to a basis and returns the dual covectors
/// of the given ones.
fn duals(vecs: &[Vec<Jet>]) -> Result<Vec<Vec<Jet>>, TractorError> {
    let n = vecs[0].len();
    let r = vecs.len();
    let z = &vecs[0][0];
    let mut basis: Vec<Vec<Jet>> = vecs.to_vec();
    let mut values: Vec<Vec<Scalar>> = vecs.iter().map(|v| v.iter().map(|x| x.value()).collect()).collect();
    if rank_of(&values) < r {
        return Err(TractorError::Genericity("projection to H is not injective".into()));
    }
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let e: Vec<Scalar> = (0..n).map(|k| if k == i { q(1) } else { q(0) }).collect();
        values.push(e.clone());
        if rank_of(&values) == basis.len() + 1 {
            basis.push(e.iter().map(|x| Jet::constant(z.nvars(), z.order, x.clone())).collect());
        } else {
            values.pop();
        }
    }
    let inv = JMat::from_columns(&basis).inverse().ok_or_else(|| TractorError::Genericity("frame not invertible".into()))?;
    Ok((0..r).map(|p| inv.row(p)).collect())
}

/// μ: A → H* read off a section frame with no R component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuMap {
    pub a: Vec<Vec<Jet>>,
    pub images: Vec<Vec<Jet>>,
}

impl MuMap {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// [ν_j(Y_k)].
    pub fn on_a(&self) -> JMat {
        let r = self.rank();
        let z = &self.a[0][0];
        let mut m = JMat::zeros(r, r, z.nvars(), z.order);
        for j in 0..r {
            for k in 0..r {
                m.set(j, k, dot(&self.images[j], &self.a[k]));
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.on_a();
        m == m.transpose()
    }

    /// Whether μ vanishes on the radical of g = μ|A×A.
    pub fn kills_isotropic(&self) -> bool {
        let g = self.on_a().values();
        let rad = g.kernel();
        rad.iter().all(|c| {
            (0..self.a[0].len()).all(|i| {
                let mut s = Scalar::zero();
                for (j, cj) in c.iter().enumerate() {
                    s += cj * self.images[j][i].value();
                }
                s.is_zero()
            })
        })
    }

    /// Strong extension to H → H*, zero on μ(A)⊥: M = Nᵗ G⁻¹ N over the sections with μ ≠ 0.
    pub fn extend_strong(&self) -> Result<JMat, TractorError> {
        let idx: Vec<usize> = (0..self.rank()).filter(|&j| self.images[j].iter().any(|x| !x.is_zero())).collect();
        let n = self.a[0].len();
        let z = &self.a[0][0];
        if idx.is_empty() {
            return Ok(JMat::zeros(n, n, z.nvars(), z.order));
        }
        let mut g = JMat::zeros(idx.len(), idx.len(), z.nvars(), z.order);
        for (p, &j) in idx.iter().enumerate() {
            for (s, &k) in idx.iter().enumerate() {
                g.set(p, s, dot(&self.images[j], &self.a[k]));
            }
        }
        let gi = g.inverse().ok_or(TractorError::Degenerate)?;
        let nm = JMat::from_columns(&idx.iter().map(|&j| self.images[j].clone()).collect::<Vec<_>>()).transpose();
        Ok(nm.transpose().mul(&gi).mul(&nm))
    }

    /// Extension for a merely V-preferred splitting, with a caller-chosen complement F:
    /// symmetric M with M Y_j = ν_j, zero on μ(A)⊥, and M(F) ⊂ F⊥. Solved at the base point.
    pub fn extend_with_complement(&self, f: &[Vec<Scalar>]) -> Option<Mat> {
        let n = self.a[0].len();
        let sym: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let col = |i: usize, j: usize| sym.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs = Vec::new();
        let a: Vec<Vec<Scalar>> = self.a.iter().map(|v| v.iter().map(|x| x.value()).collect()).collect();
        let nu: Vec<Vec<Scalar>> = self.images.iter().map(|v| v.iter().map(|x| x.value()).collect()).collect();
        for (y, v) in a.iter().zip(&nu) {
            for i in 0..n {
                let mut row = vec![Scalar::zero(); sym.len()];
                for k in 0..n {
                    row[col(i, k)] += &y[k];
                }
                rows.push(row);
                rhs.push(v[i].clone());
            }
        }
        let perp = Mat::from_rows(&nu, n).kernel();
        for u in &perp {
            for i in 0..n {
                let mut row = vec![Scalar::zero(); sym.len()];
                for k in 0..n {
                    row[col(i, k)] += &u[k];
                }
                rows.push(row);
                rhs.push(Scalar::zero());
            }
        }
        for x in f {
            for y in f {
                let mut row = vec![Scalar::zero(); sym.len()];
                for i in 0..n {
                    for k in 0..n {
                        row[col(i, k)] += &x[i] * &y[k];
                    }
                }
                rows.push(row);
                rhs.push(Scalar::zero());
            }
        }
        let sol = Mat::from_rows(&rows, sym.len()).solve(&rhs).ok()?;
        Some(Mat::from_fn(n, n, |i, j| sol[col(i, j)].clone()))
    }
}

pub fn mu_extraction(v: &[TractorSection]) -> Result<MuMap, TractorError> {
    if v.iter().any(|s| !s.scal.is_zero()) {
        return Err(TractorError::CentralComponent);
    }
    Ok(MuMap { a: v.iter().map(|s| s.vec.clone()).collect(), images: v.iter().map(|s| s.cov.clone()).collect() })
}

/// Output of the normalization for V.
#[derive(Clone, Debug)]
pub struct Normalized {
    /// Nonzero shifts in the order applied, tagged by stage.
    pub shifts: Vec<(u8, WeylShift)>,
    pub total: WeylShift,
    /// h-orthogonal frame of V in the final splitting.
    pub sections: Vec<TractorSection>,
}

fn apply_all(v: &[TractorSection], u: &WeylShift) -> Vec<TractorSection> {
    v.iter().map(|s| upsilon_action(s, u)).collect()
}

fn combine(a: &TractorSection, ca: &Jet, b: &TractorSection, cb: &Jet) -> TractorSection {
    a.scale(ca).add(&b.scale(cb))
}

/// Congruence-diagonalizes h on the span of `v`, pivoting only on units.
fn orthogonalize(v: &[TractorSection]) -> Result<Vec<TractorSection>, TractorError> {
    let mut w = v.to_vec();
    let r = w.len();
    let one = w[0].scal.lift(&q(1));
    for k in 0..r {
        let g = |a: &TractorSection, b: &TractorSection| h_metric(a, b);
        if g(&w[k], &w[k]).value().is_zero() {
            let swap = (k + 1..r).find(|&i| !g(&w[i], &w[i]).value().is_zero());
            if let Some(i) = swap {
                w.swap(k, i);
            } else if let Some((i, j)) =
                (k..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).find(|&(i, j)| !g(&w[i], &w[j]).value().is_zero())
            {
                let plus = w[i].add(&w[j]);
                w[i] = if g(&plus, &plus).value().is_zero() { combine(&w[i], &one, &w[j], &one.neg()) } else { plus };
                w.swap(k, i);
            } else {
                let rest_zero = (k..r).all(|i| (k..r).all(|j| g(&w[i], &w[j]).is_zero()));
                if rest_zero {
                    break;
                }
                return Err(TractorError::Genericity("h on V degenerates at the base point".into()));
            }
        }
        let d = g(&w[k], &w[k]);
        let di = d.inv().expect("unit pivot");
        for i in k + 1..r {
            let f = g(&w[i], &w[k]).mul(&di);
            if !f.is_zero() {
                w[i] = combine(&w[i], &one, &w[k], &f.neg());
            }
        }
    }
    Ok(w)
}

/// Three stages: kill the R slot, symmetrize μ, and (strong) kill μ on iso(A).
pub fn normalize_splitting_for_v(v: &[TractorSection], strong: bool) -> Result<Normalized, TractorError> {
    let n = v[0].n();
    let z = v[0].scal.clone();
    let mut cur = v.to_vec();
    let mut shifts: Vec<(u8, WeylShift)> = Vec::new();
    let zero_shift = WeylShift {
        ups1: vec![z.zero_like(); n],
        ups2: JMat::zeros(n, n, z.nvars(), z.order),
    };
    // stage 1: one section at a time, Υ₁ = τ_j Y*_j leaves the other R slots alone
    if cur.iter().any(|s| !s.scal.is_zero()) {
        let d = duals(&cur.iter().map(|s| s.vec.clone()).collect::<Vec<_>>())?;
        for j in 0..cur.len() {
            let t = cur[j].scal.clone();
            if t.is_zero() {
                continue;
            }
            let u = WeylShift { ups1: d[j].iter().map(|x| x.mul(&t)).collect(), ups2: zero_shift.ups2.clone() };
            cur = apply_all(&cur, &u);
            shifts.push((1, u));
        }
    }
    // stage 2
    let mut w = orthogonalize(&cur)?;
    let ys: Vec<Vec<Jet>> = w.iter().map(|s| s.vec.clone()).collect();
    let ystar = duals(&ys)?;
    let r = w.len();
    for l in 0..r {
        let mut s2 = zero_shift.ups2.clone();
        let mut any = false;
        for k in l + 1..r {
            let c = dot(&w[l].cov, &ys[k]);
            if !c.is_zero() {
                any = true;
                s2 = s2.add(&wedge(&ystar[l], &ystar[k]).scale_jet(&c));
            }
        }
        if any {
            let u = WeylShift { ups1: zero_shift.ups1.clone(), ups2: s2 };
            w = apply_all(&w, &u);
            shifts.push((2, u));
        }
    }
    // stage 3
    if strong {
        for j in 0..r {
            if !h_metric(&w[j], &w[j]).is_zero() {
                continue;
            }
            let tau = w[j].cov.clone();
            if tau.iter().all(|x| x.is_zero()) {
                continue;
            }
            let u = WeylShift { ups1: zero_shift.ups1.clone(), ups2: wedge(&ystar[j], &tau) };
            w = apply_all(&w, &u);
            shifts.push((3, u));
        }
    }
    let total = shifts.iter().fold(zero_shift, |acc, (_, u)| acc.then(u));
    Ok(Normalized { shifts, total, sections: w })
}

/// exp(−Σ x_i ρ(Z_i)) s₀: parallel for the flat splitting of a homogeneous frame.
pub fn parallel_section(data: &SplittingData, s0: &[Scalar]) -> TractorSection {
    let nv = data.nvars();
    let order = data.order;
    let mut x = data.rho[0].map(|e| e.zero_like());
    for (i, r) in data.rho.iter().enumerate() {
        x = x.add(&r.scale_jet(&Jet::var(nv, order, i)));
    }
    let m = x.neg();
    let e = JMat::identity(m.rows, nv, order).add(&m).add(&m.mul(&m).scale(&half())).add(&m.mul(&m).mul(&m).scale(&Scalar::new(1.into(), 6.into())));
    let col: Vec<Jet> = s0.iter().map(|c| Jet::constant(nv, order, c.clone())).collect();
    TractorSection::from_column(&e.mul_vec(&col))
}

/// Largest order to which every frame derivative of `s` is killed by the tractor connection,
/// or `None` if it fails at the origin.
pub fn is_parallel(data: &SplittingData, s: &TractorSection) -> bool {
    let m = data.frame.len();
    (0..m).all(|i| {
        let c: Vec<Jet> = (0..m).map(|k| Jet::constant(data.nvars(), data.order, if k == i { q(1) } else { q(0) })).collect();
        data.tractor_derivative_matrix(&c, s).is_zero()
    })
}

/// One bullet of the maximal-rank theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bullet {
    pub name: String,
    pub pass: bool,
    pub witness: String,
    /// Jet order to which the identity was checked.
    pub order: i32,
}

#[derive(Clone, Debug)]
pub struct MaxPrefReport {
    pub bullets: Vec<Bullet>,
    pub shifts: usize,
}

impl MaxPrefReport {
    pub fn all_pass(&self) -> bool {
        self.bullets.iter().all(|b| b.pass)
    }
}

fn check_zero(name: &str, m: &JMat, labels: &dyn Fn(usize, usize) -> String) -> Bullet {
    let order = m.min_order();
    let mut witness = String::new();
    for r in 0..m.rows {
        for c in 0..m.cols {
            if !m.get(r, c).is_zero() {
                let _ = write!(witness, "{} = {}; ", labels(r, c), m.get(r, c).poly);
                break;
            }
        }
        if !witness.is_empty() {
            break;
        }
    }
    Bullet { name: name.into(), pass: witness.is_empty() && order >= 0, witness, order }
}

/// Λ²μ on T₋₂ in the U_kl basis.
pub fn lambda2(mu: &JMat) -> JMat {
    let n = mu.rows;
    let ps = pairs(n);
    let z = mu.get(0, 0);
    let mut out = JMat::zeros(ps.len(), ps.len(), z.nvars(), z.order);
    for (a, &(k, l)) in ps.iter().enumerate() {
        for (b, &(p, s)) in ps.iter().enumerate() {
            out.set(a, b, mu.get(k, p).mul(mu.get(l, s)).sub(&mu.get(k, s).mul(mu.get(l, p))));
        }
    }
    out
}

/// Runs the normalization on V spanned by the given sections and checks the bullets of the
/// maximal-rank theorem (rank n) or items 2, 3 and 5 of the general theorem (rank < n).
pub fn verify_maxpref_properties(data: &SplittingData, v: &[TractorSection]) -> Result<MaxPrefReport, TractorError> {
    let n = data.n;
    let norm = normalize_splitting_for_v(v, true)?;
    let d = data.connection_change(&norm.total);
    let mu_map = mu_extraction(&norm.sections)?;
    let mu = mu_map.extend_strong()?;
    let dirs = d.adapted_directions().ok_or_else(|| TractorError::Genericity("splitting of T not invertible".into()))?;
    let ps = pairs(n);
    let lab = |i: usize| if i < n { format!("X{}", i + 1) } else { format!("U{}{}", ps[i - n].0 + 1, ps[i - n].1 + 1) };
    let pm = d.p_matrix(&dirs);
    let m = dirs.len();
    let z = mu.get(0, 0);
    let mut mu_t = JMat::zeros(m, m, z.nvars(), z.order);
    mu_t.set_block(0, 0, &mu);
    mu_t.set_block(n, n, &lambda2(&mu));
    let mut bullets = Vec::new();
    let pair_lab = |r: usize, c: usize| format!("({},{})", lab(r), lab(c));
    if v.len() == n {
        let mut nab_mu = Vec::new();
        let mut nab_p = Vec::new();
        for c in &dirs {
            nab_mu.push(d.nabla_form(c, &mu_t).block(0, 0, n, n));
            nab_p.push(d.nabla_form(c, &pm));
        }
        let stack = |ms: &[JMat]| -> JMat {
            let mut out = JMat::zeros(ms.len() * ms[0].rows, ms[0].cols, z.nvars(), z.order);
            for (i, x) in ms.iter().enumerate() {
                out.set_block(i * x.rows, 0, x);
            }
            out
        };
        let nm = stack(&nab_mu);
        bullets.push(check_zero("nabla mu = 0", &nm, &|r, c| format!("nabla_{} mu({},{})", lab(r / n), lab(r % n), lab(c))));
        let p21 = pm.block(n, 0, m - n, n);
        let p12 = pm.block(0, n, n, m - n);
        bullets.push(check_zero("P21 = 0", &p21, &|r, c| format!("P21{}", pair_lab(r + n, c))));
        bullets.push(check_zero("P12 = 0", &p12, &|r, c| format!("P12{}", pair_lab(r, c + n))));
        let p11 = pm.block(0, 0, n, n).add(&mu);
        bullets.push(check_zero("P11 = -mu on H", &p11, &|r, c| format!("(P11+mu){}", pair_lab(r, c))));
        let p22 = pm.block(n, n, m - n, m - n).add(&lambda2(&mu));
        bullets.push(check_zero("P22 = -mu on T-2", &p22, &|r, c| format!("(P22+mu){}", pair_lab(r + n, c + n))));
        let np = stack(&nab_p);
        bullets.push(check_zero("nabla P = 0", &np, &|r, c| format!("nabla_{} P{}", lab(r / m), pair_lab(r % m, c))));
    } else {
        // X ∈ A: P(Z)₁(X) + μ(X)(Z) = 0 and P(U)₁(X) = 0
        let r = v.len();
        let mut item3 = JMat::zeros(n, r, z.nvars(), z.order);
        let mut item5 = JMat::zeros(m - n, r, z.nvars(), z.order);
        for (j, (y, nu)) in mu_map.a.iter().zip(&mu_map.images).enumerate() {
            for a in 0..n {
                item3.set(a, j, dot(&pm.row(a)[..n], y).add(&nu[a]));
            }
            for a in n..m {
                item5.set(a - n, j, dot(&pm.row(a)[..n], y));
            }
        }
        bullets.push(check_zero("P11 = -mu + eta, eta in H* x A-perp", &item3, &|a, j| format!("(P11+mu)({}, Y{})", lab(a), j + 1)));
        bullets.push(check_zero("P21 in T2* x A-perp", &item5, &|a, j| format!("P21({}, Y{})", lab(a + n), j + 1)));
        let g = mu_map.on_a();
        let mut nab = Vec::new();
        for c in &dirs {
            let nm = d.nabla_form(c, &mu_t).block(0, 0, n, n);
            let ya = JMat::from_columns(&mu_map.a);
            nab.push(ya.transpose().mul(&nm).mul(&ya));
        }
        let mut stacked = JMat::zeros(nab.len() * r, r, z.nvars(), z.order);
        for (i, x) in nab.iter().enumerate() {
            stacked.set_block(i * r, 0, x);
        }
        let _ = g;
        bullets.push(check_zero("nabla mu = 0 on A x A", &stacked, &|row, c| format!("nabla_{} mu(Y{},Y{})", lab(row / r), row % r + 1, c + 1)));
    }
    Ok(MaxPrefReport { bullets, shifts: norm.shifts.len() })
}

/// Whether a nonzero (v, τ, 0) can be preserved: rank of (v, τ) ↦ vec slots of ∇→_{Z_i}(v, τ, 0)
/// over all frame directions, at the origin, for constant sections.
pub fn central_cov_injectivity(data: &SplittingData) -> usize {
    let n = data.n;
    let mut cols = Vec::new();
    for b in 0..=n {
        let mut col = Vec::new();
        for r in &data.rho {
            let v = r.values();
            for i in 0..n {
                col.push(v[(n + 1 + i, b)].clone());
            }
        }
        cols.push(col);
    }
    rank_of(&cols)
}

/// Converts a polynomial into a jet of the data's order.
pub fn jet_of(data: &SplittingData, p: &Poly) -> Jet {
    Jet::from_poly(p.clone(), data.order)
}
