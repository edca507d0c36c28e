//! sl(4,R) ≅ so(3,3) and su(2,2) ≅ so(4,2) through Λ², the four-form Re(v) − c μ² on R^(4,4),
//! and the Fefferman transversality counts.

use crate::lie::{build_so, gl_basis, orthogonal_basis, so_metric, MultiForm, StabilizerAlgebra};
use crate::linalg::{rank_of, signature, subspace_intersection, Mat};
use crate::octonion::{alternator_four_form, theta, Zorn, ZornRule};
use crate::scalar::{q, qf, GaussScalar, Scalar};
use num_traits::Zero;

/// Linear map from a matrix Lie algebra (given by basis matrices) to matrices.
#[derive(Clone, Debug)]
pub struct RepMap {
    pub source: Vec<Mat>,
    pub images: Vec<Mat>,
    /// Symmetric form preserved on the target space.
    pub form: Mat,
}

impl RepMap {
    pub fn target_dim(&self) -> usize {
        self.form.rows()
    }

    pub fn image_rank(&self) -> usize {
        rank_of(&self.images.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>())
    }

    pub fn is_injective(&self) -> bool {
        self.image_rank() == self.source.len()
    }

    /// Basis pairs (i, j) with ρ([s_i, s_j]) ≠ [ρ s_i, ρ s_j]; also fails when [s_i, s_j]
    /// leaves the source span.
    pub fn bracket_failures(&self) -> Vec<(usize, usize)> {
        let d = self.source.len();
        let size = self.source[0].rows();
        let src = Mat::from_columns(&self.source.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>(), size * size);
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let br = self.source[i].commutator(&self.source[j]);
                let ok = match src.solve(br.entries()) {
                    Ok(c) => {
                        let mut img = Mat::zeros(self.target_dim(), self.target_dim());
                        for (x, m) in c.iter().zip(&self.images) {
                            if !x.is_zero() {
                                img = img.add(&m.scale(x));
                            }
                        }
                        img == self.images[i].commutator(&self.images[j])
                    }
                    Err(_) => false,
                };
                if !ok {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn preserves_form(&self) -> bool {
        self.images.iter().all(|m| m.transpose().mul(&self.form).add(&self.form.mul(m)).is_zero())
    }

    pub fn form_signature(&self) -> (usize, usize, usize) {
        signature(&self.form)
    }

    /// Image equals the full orthogonal algebra of the form.
    pub fn onto_orthogonal(&self) -> bool {
        self.preserves_form() && self.image_rank() == orthogonal_basis(&self.form).len()
    }
}

pub(crate) fn pairs4() -> Vec<(usize, usize)> {
    (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect()
}

/// e_i ∧ e_k as (index, sign), or None when i = k.
fn wedge_index(i: usize, k: usize) -> Option<(usize, Scalar)> {
    if i == k {
        return None;
    }
    let ps = pairs4();
    let (a, b, s) = if i < k { (i, k, q(1)) } else { (k, i, q(-1)) };
    Some((ps.iter().position(|&p| p == (a, b)).unwrap(), s))
}

/// Induced action of a 4×4 matrix on Λ²R⁴ in the basis e_i∧e_j, i < j.
pub fn lambda2_matrix(x: &Mat) -> Mat {
    let ps = pairs4();
    let mut m = Mat::zeros(6, 6);
    for (c, &(i, j)) in ps.iter().enumerate() {
        for k in 0..4 {
            if let Some((r, s)) = wedge_index(k, j) {
                m[(r, c)] += &x[(k, i)] * &s;
            }
            if let Some((r, s)) = wedge_index(i, k) {
                m[(r, c)] += &x[(k, j)] * &s;
            }
        }
    }
    m
}

/// Sign of the permutation (i, j, k, l) of 0..4, zero on repeats.
fn perm_sign(idx: [usize; 4]) -> i64 {
    let mut v = idx;
    let mut s = 1;
    for a in 0..4 {
        for b in a + 1..4 {
            if v[a] == v[b] {
                return 0;
            }
            if v[a] > v[b] {
                s = -s;
            }
        }
    }
    v.sort();
    s
}

/// α ∧ β = ⟨α, β⟩ e₁∧e₂∧e₃∧e₄ on Λ²R⁴.
pub fn volume_pairing() -> Mat {
    let ps = pairs4();
    Mat::from_fn(6, 6, |a, b| q(perm_sign([ps[a].0, ps[a].1, ps[b].0, ps[b].1])))
}

/// sl(4, R): off-diagonal E_ij, then E_kk − E_{k+1,k+1}.
pub fn sl4_basis() -> Vec<Mat> {
    let gl = gl_basis(4);
    let mut out: Vec<Mat> = (0..16).filter(|k| k / 4 != k % 4).map(|k| gl[k].clone()).collect();
    for k in 0..3 {
        out.push(gl[5 * k].sub(&gl[5 * (k + 1)]));
    }
    out
}

pub fn lambda2_rep() -> RepMap {
    let source = sl4_basis();
    let images = source.iter().map(lambda2_matrix).collect();
    RepMap { source, images, form: volume_pairing() }
}

/// Complex matrix as real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMat {
    pub re: Mat,
    pub im: Mat,
}

impl CMat {
    pub fn real(re: Mat) -> Self {
        let n = re.rows();
        let c = re.cols();
        CMat { re, im: Mat::zeros(n, c) }
    }

    pub fn get(&self, r: usize, c: usize) -> GaussScalar {
        GaussScalar::new(self.re[(r, c)].clone(), self.im[(r, c)].clone())
    }

    pub fn mul(&self, o: &CMat) -> CMat {
        CMat { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }

    /// [[re, −im], [im, re]] acting on (Re z, Im z).
    pub fn realify(&self) -> Mat {
        let n = self.re.rows();
        let m = self.re.cols();
        Mat::from_fn(2 * n, 2 * m, |r, c| {
            let (br, bc) = (r / n, c / m);
            let (i, j) = (r % n, c % m);
            match (br, bc) {
                (0, 0) | (1, 1) => self.re[(i, j)].clone(),
                (0, 1) => -self.im[(i, j)].clone(),
                _ => self.im[(i, j)].clone(),
            }
        })
    }

    /// Induced action on Λ²C⁴.
    pub fn lambda2(&self) -> CMat {
        // Λ² is linear over C: split X = A + iB
        CMat { re: lambda2_matrix(&self.re), im: lambda2_matrix(&self.im) }
    }
}

/// Anti-diagonal hermitian form of signature (2,2).
pub fn su22_hermitian() -> Mat {
    Mat::from_fn(4, 4, |r, c| if r + c == 3 { q(1) } else { q(0) })
}

/// Real basis of su(2,2) = {X : X*J + JX = 0, tr X = 0}.
pub fn su22_basis() -> Vec<CMat> {
    let j = su22_hermitian();
    let gl = gl_basis(4);
    // unknowns: 16 real parts, then 16 imaginary parts
    let mut cols = Vec::new();
    for (part, e) in (0..2).flat_map(|p| gl.iter().map(move |e| (p, e))) {
        let x = if part == 0 { CMat::real(e.clone()) } else { CMat { re: Mat::zeros(4, 4), im: e.clone() } };
        // X*J + JX with X* = Aᵗ − iBᵗ
        let re = x.re.transpose().mul(&j).add(&j.mul(&x.re));
        let im = j.mul(&x.im).sub(&x.im.transpose().mul(&j));
        let mut col: Vec<Scalar> = re.entries().to_vec();
        col.extend(im.entries().iter().cloned());
        col.push(x.re.trace());
        col.push(x.im.trace());
        cols.push(col);
    }
    let ker = Mat::from_columns(&cols, 34).kernel();
    ker.iter()
        .map(|c| {
            let mut re = Mat::zeros(4, 4);
            let mut im = Mat::zeros(4, 4);
            for (k, x) in c.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if k < 16 {
                    re = re.add(&gl[k].scale(x));
                } else {
                    im = im.add(&gl[k - 16].scale(x));
                }
            }
            CMat { re, im }
        })
        .collect()
}

/// Hermitian form induced on Λ²C⁴: H(e_i∧e_j, e_k∧e_l) = h_ik h_jl − h_il h_jk.
pub fn lambda2_hermitian(h: &Mat) -> Mat {
    let ps = pairs4();
    Mat::from_fn(6, 6, |a, b| {
        let ((i, j), (k, l)) = (ps[a], ps[b]);
        &h[(i, k)] * &h[(j, l)] - &h[(i, l)] * &h[(j, k)]
    })
}

#[derive(Clone, Debug)]
pub struct Su22Report {
    pub rep: RepMap,
    /// σ² = id for the conjugate-linear σ with ⟨σα, β⟩ = H(α, β).
    pub real_structure: bool,
    pub real_dim: usize,
    /// Sign applied to the volume pairing so that the real form has signature (4,2).
    pub form_sign: i64,
    /// Whether the volume pairing is real on the fixed subspace.
    pub form_real: bool,
}

pub fn su22_rep() -> Su22Report {
    let qv = volume_pairing();
    let hm = lambda2_hermitian(&su22_hermitian());
    // σ(α) = S ᾱ with S = Q⁻¹ Hᵗ
    let s = qv.inverse().expect("volume pairing is nondegenerate").mul(&hm.transpose());
    let real_structure = s.mul(&s) == Mat::identity(6);
    // on R¹² = (Re α, Im α): σ = [[S, 0], [0, −S]]
    let sig = Mat::from_fn(12, 12, |r, c| match (r / 6, c / 6) {
        (0, 0) => s[(r, c)].clone(),
        (1, 1) => -s[(r - 6, c - 6)].clone(),
        _ => Scalar::zero(),
    });
    let fixed = sig.sub(&Mat::identity(12)).kernel();
    let real_dim = fixed.len();
    let basis = Mat::from_columns(&fixed, 12);
    // ⟨α, β⟩ for α, β in the fixed space: real part of αᵗ Q β, imaginary part must vanish
    let cq = CMat::real(qv.clone());
    let as_c = |v: &[Scalar]| CMat { re: Mat::from_columns(&[v[..6].to_vec()], 6), im: Mat::from_columns(&[v[6..].to_vec()], 6) };
    let mut form = Mat::zeros(real_dim, real_dim);
    let mut form_real = true;
    for a in 0..real_dim {
        for b in 0..real_dim {
            let x = as_c(&fixed[a]);
            let y = as_c(&fixed[b]);
            let xt = CMat { re: x.re.transpose(), im: x.im.transpose() };
            let v = xt.mul(&cq).mul(&y);
            form_real &= v.im[(0, 0)].is_zero();
            form[(a, b)] = v.re[(0, 0)].clone();
        }
    }
    let form_sign = if signature(&form).0 == 4 { 1 } else { -1 };
    let form = form.scale(&q(form_sign));
    let source = su22_basis();
    let images = source
        .iter()
        .map(|x| {
            let act = x.lambda2().realify();
            let cols: Vec<Vec<Scalar>> = fixed.iter().map(|v| basis.solve(&act.mul_vec(v)).expect("σ commutes with su(2,2)")).collect();
            Mat::from_columns(&cols, real_dim)
        })
        .collect();
    let rep = RepMap { source: source.iter().map(|x| x.realify()).collect(), images, form };
    Su22Report { rep, real_structure, real_dim, form_sign, form_real }
}

fn cdet4(m: &[[GaussScalar; 4]; 4]) -> GaussScalar {
    let mut acc = GaussScalar::zero();
    for p in permutations4() {
        let s = perm_sign(p);
        let mut t = GaussScalar::real(q(s));
        for (r, &c) in p.iter().enumerate() {
            t = &t * &m[r][c];
            if t.is_zero() {
                break;
            }
        }
        acc = &acc + &t;
    }
    acc
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if perm_sign(p) != 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The complex coordinate vector of a real basis vector of R⁸ = (Re z, Im z).
fn complex_unit(k: usize) -> [GaussScalar; 4] {
    let mut z: [GaussScalar; 4] = Default::default();
    for (i, zi) in z.iter_mut().enumerate() {
        *zi = if k == i {
            GaussScalar::one()
        } else if k == i + 4 {
            GaussScalar::i()
        } else {
            GaussScalar::zero()
        };
    }
    z
}

impl Default for GaussScalar {
    fn default() -> Self {
        GaussScalar::zero()
    }
}

/// Re(dz₁∧dz₂∧dz₃∧dz₄) on R⁸.
pub fn re_volume_form() -> MultiForm {
    MultiForm::from_fn(8, 4, |idx| {
        let cols: Vec<[GaussScalar; 4]> = idx.iter().map(|&k| complex_unit(k)).collect();
        let m: [[GaussScalar; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()));
        cdet4(&m).re
    })
}

/// Real metric Re h and Kähler form μ = Im h on R⁸, h(x, y) = x̄ᵗ J y.
pub fn real_metric_and_kahler() -> (Mat, Mat) {
    let j = CMat::real(su22_hermitian());
    let big = j.realify();
    // Re h(x, y) = xᵗ [[J, 0], [0, J]] y and Im h(x, y) = xᵗ [[0, J], [−J, 0]] y for real J
    let g = Mat::from_fn(8, 8, |r, c| if r / 4 == c / 4 { big[(r, c)].clone() } else { Scalar::zero() });
    let mu = Mat::from_fn(8, 8, |r, c| match (r / 4, c / 4) {
        (0, 1) => j.re[(r, c - 4)].clone(),
        (1, 0) => -j.re[(r - 4, c)].clone(),
        _ => Scalar::zero(),
    });
    (g, mu)
}

/// μ∧μ with the shuffle convention: 2(μ_ab μ_cd − μ_ac μ_bd + μ_ad μ_bc).
pub fn kahler_square(mu: &Mat) -> MultiForm {
    MultiForm::from_fn(8, 4, |i| {
        let m = |a: usize, b: usize| mu[(i[a], i[b])].clone();
        (m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2)) * q(2)
    })
}

/// Candidate normalizations searched for the four-forms, in order.
pub fn candidate_scales() -> Vec<Scalar> {
    let mut out = Vec::new();
    for (n, d) in [(1, 1), (1, 2), (2, 1), (1, 4), (4, 1), (1, 3), (3, 1), (1, 6), (6, 1), (3, 2), (2, 3), (1, 8), (8, 1)] {
        out.push(qf(n, d));
        out.push(qf(-n, d));
    }
    out
}

/// Dimensions of stab(A + cB) in an ambient algebra for each candidate c, computed from the
/// two action matrices.
pub fn stabilizer_dims(ambient: &[Mat], a: &MultiForm, b: &MultiForm, cs: &[Scalar]) -> Vec<(Scalar, usize)> {
    let ma: Vec<Vec<Scalar>> = ambient.iter().map(|m| a.act(m).data).collect();
    let mb: Vec<Vec<Scalar>> = ambient.iter().map(|m| b.act(m).data).collect();
    // rows where anything happens
    let rows: Vec<usize> = (0..ma[0].len()).filter(|&r| ma.iter().chain(&mb).any(|c| !c[r].is_zero())).collect();
    cs.iter()
        .map(|c| {
            let cols: Vec<Vec<Scalar>> =
                ma.iter().zip(&mb).map(|(x, y)| rows.iter().map(|&r| &x[r] + &(c * &y[r])).collect()).collect();
            (c.clone(), Mat::from_columns(&cols, rows.len()).kernel().len())
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct FourFormReport {
    /// su(2,2) generators (realified) annihilating Re(v) − cμ².
    pub su22_annihilating: usize,
    pub su22_total: usize,
    /// u(2,2) generators annihilating μ² alone.
    pub u22_annihilating_mu2: usize,
    /// The normalization c found, with the stabilizer dimension for every candidate.
    pub scale: Option<Scalar>,
    pub scan: Vec<(Scalar, usize)>,
    pub stabilizer_dim: usize,
    pub stabilizer_closed: bool,
    pub form_alternating: bool,
}

pub fn su22_four_form_check() -> FourFormReport {
    let (g, mu) = real_metric_and_kahler();
    let rev = re_volume_form();
    let mu2 = kahler_square(&mu);
    let so44 = orthogonal_basis(&g);
    let scan = stabilizer_dims(&so44, &rev, &mu2, &candidate_scales().iter().map(|c| -c.clone()).collect::<Vec<_>>());
    let scan: Vec<(Scalar, usize)> = scan.into_iter().map(|(c, d)| (-c, d)).collect();
    let scale = scan.iter().find(|(_, d)| *d == 21).map(|(c, _)| c.clone());
    let c = scale.clone().unwrap_or_else(|| q(1));
    let form = rev.add(&mu2.scale(&-c));
    let su = su22_basis();
    let su22_annihilating = su.iter().filter(|x| form.act(&x.realify()).is_zero()).count();
    let mut u22: Vec<Mat> = su.iter().map(|x| x.realify()).collect();
    u22.push(CMat { re: Mat::zeros(4, 4), im: Mat::identity(4) }.realify());
    let u22_annihilating_mu2 = u22.iter().filter(|m| mu2.act(m).is_zero()).count();
    let stab = StabilizerAlgebra::of(&so44, &[&form]);
    FourFormReport {
        su22_annihilating,
        su22_total: su.len(),
        u22_annihilating_mu2,
        scale,
        scan,
        stabilizer_dim: stab.dim(),
        stabilizer_closed: stab.is_closed(),
        form_alternating: form.is_alternating(),
    }
}

/// 4-form on O' built from the octonions: 1* ∧ θ + c·N([x,y,z], w), θ taken on imaginary parts.
pub fn octonion_four_form_parts() -> (MultiForm, MultiForm) {
    let basis: Vec<Zorn> = (0..8).map(Zorn::basis).collect();
    let one = Zorn::unit();
    let im = |x: &Zorn| x.sub(&one.scale(&(x.inner(&one))));
    let th = |a: &Zorn, b: &Zorn, c: &Zorn| theta(&im(a), &im(b), &im(c)).unwrap();
    let e = |x: &Zorn| x.inner(&one);
    let wedge = MultiForm::from_fn(8, 4, |i| {
        let x: Vec<&Zorn> = i.iter().map(|&k| &basis[k]).collect();
        e(x[0]) * th(x[1], x[2], x[3]) - e(x[1]) * th(x[0], x[2], x[3]) + e(x[2]) * th(x[0], x[1], x[3])
            - e(x[3]) * th(x[0], x[1], x[2])
    });
    (wedge, alternator_four_form(ZornRule::Corrected))
}

#[derive(Clone, Debug)]
pub struct OctonionSpinReport {
    pub scale: Option<Scalar>,
    pub scan: Vec<(Scalar, usize)>,
    pub stabilizer_dim: usize,
    pub stabilizer_closed: bool,
    /// Stabilizer of the unit inside that algebra: g₂'.
    pub unit_stabilizer_dim: usize,
}

pub fn octonion_spin_check() -> OctonionSpinReport {
    let g = Mat::from_fn(8, 8, |r, c| Zorn::basis(r).inner(&Zorn::basis(c)));
    let so44 = orthogonal_basis(&g);
    let (wedge, alt) = octonion_four_form_parts();
    let scan = stabilizer_dims(&so44, &wedge, &alt, &candidate_scales());
    let scale = scan.iter().find(|(_, d)| *d == 21).map(|(c, _)| c.clone());
    let form = wedge.add(&alt.scale(&scale.clone().unwrap_or_else(|| q(1))));
    let stab = StabilizerAlgebra::of(&so44, &[&form]);
    let one = Zorn::unit().coords();
    let unit_stabilizer_dim = stab.dim()
        - rank_of(&stab.basis.iter().map(|m| m.mul_vec(&one)).collect::<Vec<_>>());
    OctonionSpinReport { scale, scan, stabilizer_dim: stab.dim(), stabilizer_closed: stab.is_closed(), unit_stabilizer_dim }
}

/// Matrices of an algebra preserving a subspace S (columns of `s`).
pub fn subspace_stabilizer(ambient: &[Mat], s: &[Vec<Scalar>]) -> Vec<Mat> {
    let dim = ambient[0].rows();
    // annihilator of S: covectors vanishing on S
    let ann = Mat::from_rows(s, dim).kernel();
    let cols: Vec<Vec<Scalar>> = ambient
        .iter()
        .map(|m| {
            let mut col = Vec::new();
            for v in s {
                let mv = m.mul_vec(v);
                for a in &ann {
                    col.push(a.iter().zip(&mv).fold(Scalar::zero(), |acc, (x, y)| acc + x * y));
                }
            }
            col
        })
        .collect();
    let rows = cols[0].len();
    combine(ambient, &Mat::from_columns(&cols, rows).kernel())
}

/// Matrices of an algebra fixing a vector.
pub fn vector_stabilizer(ambient: &[Mat], v: &[Scalar]) -> Vec<Mat> {
    let cols: Vec<Vec<Scalar>> = ambient.iter().map(|m| m.mul_vec(v)).collect();
    combine(ambient, &Mat::from_columns(&cols, v.len()).kernel())
}

fn combine(ambient: &[Mat], coeffs: &[Vec<Scalar>]) -> Vec<Mat> {
    coeffs
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
        .collect()
}

fn flat(ms: &[Mat]) -> Vec<Vec<Scalar>> {
    ms.iter().map(|m| m.entries().to_vec()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversality {
    pub dim_ghat: usize,
    pub dim_phat: usize,
    pub dim_g: usize,
    /// Parabolic of g: stabilizer of the reduced isotropic plane inside g.
    pub dim_p: usize,
    pub dim_g_cap_phat: usize,
    pub dim_sum: usize,
    pub transverse: bool,
    /// dim(sub) + dim(phat) − dim(sub ∩ phat) = dim(sub + phat).
    pub dimension_identity: bool,
    /// g ∩ p̂ equals p as subspaces.
    pub cap_is_p: bool,
    /// dim p − dim(g ∩ p̂).
    pub fiber_dim: isize,
}

/// Subspaces given by spanning matrices inside a common ĝ.
pub fn fefferman_transversality(ghat: &[Mat], sub: &[Mat], phat: &[Mat], p: &[Mat]) -> Transversality {
    let (g, ph, pp) = (flat(sub), flat(phat), flat(p));
    let cap = subspace_intersection(&g, &ph).unwrap_or_default();
    let dim_sum = rank_of(&[g.clone(), ph.clone()].concat());
    let dim_ghat = rank_of(&flat(ghat));
    let dim_g = rank_of(&g);
    let dim_phat = rank_of(&ph);
    let dim_p = rank_of(&pp);
    let cap_is_p = cap.len() == dim_p && rank_of(&[cap.clone(), pp.clone()].concat()) == dim_p;
    Transversality {
        dim_ghat,
        dim_phat,
        dim_g,
        dim_p,
        dim_g_cap_phat: cap.len(),
        dim_sum,
        transverse: dim_sum == dim_ghat,
        dimension_identity: dim_g + dim_phat - cap.len() == dim_sum,
        cap_is_p,
        fiber_dim: dim_p as isize - cap.len() as isize,
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|k| if k == i { q(1) } else { q(0) }).collect()
}

/// so(4,2) = stab(τ) ⊂ so(4,3) with τ = (−e₁, 0, e₁) of negative norm; p̂ stabilizes the cov
/// 3-plane B and p stabilizes C = B ∩ τ⊥ inside so(4,2).
pub fn cr_fefferman() -> Transversality {
    let so = build_so(3).unwrap();
    let ghat: Vec<Mat> = so.alg.basis().to_vec();
    let b: Vec<Vec<Scalar>> = (0..3).map(|i| unit_vec(7, i)).collect();
    let phat = subspace_stabilizer(&ghat, &b);
    let mut tau = vec![q(0); 7];
    tau[0] = q(-1);
    tau[4] = q(1);
    let g = vector_stabilizer(&ghat, &tau);
    let gram = so_metric(3);
    let perp: Vec<Scalar> = gram.mul_vec(&tau);
    // C = {x ∈ B : ⟨τ, x⟩ = 0}
    let cvecs = Mat::from_rows(&[b.iter().map(|v| v.iter().zip(&perp).fold(Scalar::zero(), |a, (x, y)| a + x * y)).collect::<Vec<_>>()], 3)
        .kernel()
        .iter()
        .map(|c| (0..7).map(|k| (0..3).fold(Scalar::zero(), |a, j| a + &c[j] * &b[j][k])).collect())
        .collect::<Vec<Vec<Scalar>>>();
    let p = subspace_stabilizer(&g, &cvecs);
    fefferman_transversality(&ghat, &g, &phat, &p)
}

/// so(n+1,n) = stab(e) ⊂ so(n+1,n+1) for a unit e; p̂ stabilizes an isotropic (n+1)-plane and
/// p stabilizes its intersection with e⊥ inside so(n+1,n).
pub fn spinorial_fefferman(n: usize) -> Transversality {
    let d = 2 * n + 2;
    let m = n + 1;
    let gram = Mat::from_fn(d, d, |r, c| if r + m == c || c + m == r { q(1) } else { q(0) });
    let ghat = orthogonal_basis(&gram);
    let b: Vec<Vec<Scalar>> = (0..m).map(|i| unit_vec(d, i)).collect();
    let phat = subspace_stabilizer(&ghat, &b);
    let mut e = vec![q(0); d];
    e[0] = q(1);
    e[m] = q(1);
    let g = vector_stabilizer(&ghat, &e);
    let cvecs: Vec<Vec<Scalar>> = (1..m).map(|i| unit_vec(d, i)).collect();
    let p = subspace_stabilizer(&g, &cvecs);
    fefferman_transversality(&ghat, &g, &phat, &p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_pairing_is_split() {
        assert_eq!(signature(&volume_pairing()), (3, 3, 0));
    }

    #[test]
    fn diagonal_acts_diagonally() {
        let h = Mat::from_i64(4, 4, &[1, 0, 0, 0, 0, 2, 0, 0, 0, 0, -4, 0, 0, 0, 0, 1]);
        let m = lambda2_matrix(&h);
        let weights: Vec<i64> = pairs4().iter().map(|&(i, j)| [1, 2, -4, 1][i] + [1, 2, -4, 1][j]).collect();
        assert_eq!(m, Mat::from_fn(6, 6, |r, c| if r == c { q(weights[r]) } else { q(0) }));
    }

    #[test]
    fn su22_has_fifteen_generators() {
        assert_eq!(su22_basis().len(), 15);
    }
}
