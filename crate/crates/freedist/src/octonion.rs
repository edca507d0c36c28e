//! Split octonions as Zorn vector-matrices, the three-form θ and the alternator four-form,
//! isotropic 3-planes in Im O', octonionic triples and g₂' inside so(4,3).

use crate::lie::{build_so, orthogonal_basis, Block, GradedLieAlgebra, MultiForm, StabilizerAlgebra};
use crate::linalg::{rank_of, subspace_intersection, Mat};
use crate::poly::Poly;
use crate::scalar::{half, q, Scalar};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OctonionError {
    #[error("element is not imaginary")]
    NotImaginary,
    #[error("plane is not isotropic or not 3-dimensional")]
    NotIsotropicPlane,
    #[error("theta(x, y, z) = {0}, expected 1")]
    NotTriple(String),
    #[error("closed-orbit plane where an open one is required")]
    ClosedOrbit,
}

/// Coefficient ring for Zorn arithmetic: exact scalars or polynomials.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_as(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, c: &Scalar) -> Self;
    fn vanishes(&self) -> bool;
}

impl Coeff for Scalar {
    fn zero_as(&self) -> Self {
        Scalar::zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self * c
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl Coeff for Poly {
    fn zero_as(&self) -> Self {
        Poly::zero(self.nvars())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

/// Which lower-left entry to use in the product: the displayed `a′w + a w′` or `a′w + b w′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZornRule {
    Displayed,
    Corrected,
}

/// [[a, v], [w, b]].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zorn<T: Coeff = Scalar> {
    pub a: T,
    pub v: [T; 3],
    pub w: [T; 3],
    pub b: T,
}

fn dot3<T: Coeff>(x: &[T; 3], y: &[T; 3]) -> T {
    x[0].times(&y[0]).plus(&x[1].times(&y[1])).plus(&x[2].times(&y[2]))
}

fn cross<T: Coeff>(x: &[T; 3], y: &[T; 3]) -> [T; 3] {
    [
        x[1].times(&y[2]).minus(&x[2].times(&y[1])),
        x[2].times(&y[0]).minus(&x[0].times(&y[2])),
        x[0].times(&y[1]).minus(&x[1].times(&y[0])),
    ]
}

fn map3<T: Coeff>(x: &[T; 3], f: impl Fn(&T) -> T) -> [T; 3] {
    [f(&x[0]), f(&x[1]), f(&x[2])]
}

fn zip3<T: Coeff>(x: &[T; 3], y: &[T; 3], f: impl Fn(&T, &T) -> T) -> [T; 3] {
    [f(&x[0], &y[0]), f(&x[1], &y[1]), f(&x[2], &y[2])]
}

impl<T: Coeff> Zorn<T> {
    /// Coordinates (a, v₁, v₂, v₃, w₁, w₂, w₃, b).
    pub fn from_coords(c: &[T]) -> Self {
        Zorn { a: c[0].clone(), v: [c[1].clone(), c[2].clone(), c[3].clone()], w: [c[4].clone(), c[5].clone(), c[6].clone()], b: c[7].clone() }
    }

    pub fn coords(&self) -> Vec<T> {
        let mut out = vec![self.a.clone()];
        out.extend(self.v.iter().cloned());
        out.extend(self.w.iter().cloned());
        out.push(self.b.clone());
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_coords(&self.coords().iter().zip(o.coords()).map(|(x, y)| x.plus(&y)).collect::<Vec<_>>())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_coords(&self.coords().iter().zip(o.coords()).map(|(x, y)| x.minus(&y)).collect::<Vec<_>>())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_coords(&self.coords().iter().map(|x| x.scaled(c)).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|x| x.vanishes())
    }

    pub fn mul_with(&self, o: &Self, rule: ZornRule) -> Self {
        let ww = cross(&self.w, &o.w);
        let vv = cross(&self.v, &o.v);
        let second = match rule {
            ZornRule::Displayed => &self.a,
            ZornRule::Corrected => &self.b,
        };
        Zorn {
            a: self.a.times(&o.a).plus(&dot3(&self.v, &o.w)),
            v: zip3(&zip3(&map3(&o.v, |x| self.a.times(x)), &map3(&self.v, |x| o.b.times(x)), |x, y| x.plus(y)), &ww, |x, y| x.plus(y)),
            w: zip3(&zip3(&map3(&self.w, |x| o.a.times(x)), &map3(&o.w, |x| second.times(x)), |x, y| x.plus(y)), &vv, |x, y| x.minus(y)),
            b: self.b.times(&o.b).plus(&dot3(&o.v, &self.w)),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_with(o, ZornRule::Corrected)
    }

    /// x̄ = [[b, −v], [−w, a]].
    pub fn conj(&self) -> Self {
        let z = self.a.zero_as();
        Zorn { a: self.b.clone(), v: map3(&self.v, |x| z.minus(x)), w: map3(&self.w, |x| z.minus(x)), b: self.a.clone() }
    }

    /// N(x, x) = ab − v·w.
    pub fn norm(&self) -> T {
        self.a.times(&self.b).minus(&dot3(&self.v, &self.w))
    }

    /// Polarization of N.
    pub fn inner(&self, o: &Self) -> T {
        self.a
            .times(&o.b)
            .plus(&o.a.times(&self.b))
            .minus(&dot3(&self.v, &o.w))
            .minus(&dot3(&o.v, &self.w))
            .scaled(&half())
    }

    pub fn is_imaginary(&self) -> bool {
        self.a.plus(&self.b).vanishes()
    }
}

impl Zorn<Scalar> {
    pub fn unit() -> Self {
        Self::from_coords(&[q(1), q(0), q(0), q(0), q(0), q(0), q(0), q(1)])
    }

    pub fn basis(i: usize) -> Self {
        Self::from_coords(&(0..8).map(|k| if k == i { q(1) } else { q(0) }).collect::<Vec<_>>())
    }

    pub fn from_i64(c: [i64; 8]) -> Self {
        Self::from_coords(&c.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    /// Imaginary element from coordinates (t, v, w) ↦ [[t, v], [w, −t]].
    pub fn imaginary(t: Scalar, v: [Scalar; 3], w: [Scalar; 3]) -> Self {
        Zorn { a: t.clone(), v, w, b: -t }
    }

    /// Coordinates in the Im O' basis: (0,e_i,0,0), (0,0,e_i,0), (1,0,0,−1).
    pub fn im_coords(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = self.v.to_vec();
        out.extend(self.w.iter().cloned());
        out.push(self.a.clone());
        out
    }
}

/// Basis of Im O' in the order (0,e_i,0,0), (0,0,e_i,0), (1,0,0,−1).
pub fn im_basis() -> Vec<Zorn> {
    let mut out: Vec<Zorn> = (1..7).map(Zorn::basis).collect();
    out.push(Zorn::from_i64([1, 0, 0, 0, 0, 0, 0, -1]));
    out
}

pub fn im_from_coords(c: &[Scalar]) -> Zorn {
    Zorn::imaginary(c[6].clone(), [c[0].clone(), c[1].clone(), c[2].clone()], [c[3].clone(), c[4].clone(), c[5].clone()])
}

/// Generic octonion with symbolic coordinates `x_{8k}..x_{8k+7}` out of `nvars`.
pub fn symbolic(nvars: usize, k: usize) -> Zorn<Poly> {
    Zorn::from_coords(&(0..8).map(|i| Poly::var(nvars, 8 * k + i)).collect::<Vec<_>>())
}

/// Generic imaginary octonion using variables `7k..7k+6`.
pub fn symbolic_imaginary(nvars: usize, k: usize) -> Zorn<Poly> {
    let v = |i: usize| Poly::var(nvars, 7 * k + i);
    Zorn { a: v(6), v: [v(0), v(1), v(2)], w: [v(3), v(4), v(5)], b: v(6).neg() }
}

pub fn alternator_with<T: Coeff>(x: &Zorn<T>, y: &Zorn<T>, z: &Zorn<T>, rule: ZornRule) -> Zorn<T> {
    x.mul_with(y, rule).mul_with(z, rule).sub(&x.mul_with(&y.mul_with(z, rule), rule))
}

/// [x, y, z] = (xy)z − x(yz).
pub fn alternator<T: Coeff>(x: &Zorn<T>, y: &Zorn<T>, z: &Zorn<T>) -> Zorn<T> {
    alternator_with(x, y, z, ZornRule::Corrected)
}

/// θ(x, y, z) = N(xy, z) on Im O'.
pub fn theta<T: Coeff>(x: &Zorn<T>, y: &Zorn<T>, z: &Zorn<T>) -> Result<T, OctonionError> {
    if !(x.is_imaginary() && y.is_imaginary() && z.is_imaginary()) {
        return Err(OctonionError::NotImaginary);
    }
    Ok(x.mul(y).inner(z))
}

/// θ as a 3-form in the Im O' basis.
pub fn theta_form() -> MultiForm {
    let b = im_basis();
    MultiForm::from_fn(7, 3, |i| theta(&b[i[0]], &b[i[1]], &b[i[2]]).unwrap())
}

/// N([x,y,z], w) on O' in the coordinate basis.
pub fn alternator_four_form(rule: ZornRule) -> MultiForm {
    let b: Vec<Zorn> = (0..8).map(Zorn::basis).collect();
    MultiForm::from_fn(8, 4, |i| alternator_with(&b[i[0]], &b[i[1]], &b[i[2]], rule).inner(&b[i[3]]))
}

/// Gram matrix of N on a list of octonions.
pub fn gram(xs: &[Zorn]) -> Mat {
    Mat::from_fn(xs.len(), xs.len(), |i, j| xs[i].inner(&xs[j]))
}

/// Gram matrix of N on the Im O' basis: signature (3,4).
pub fn im_metric() -> Mat {
    gram(&im_basis())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicPlane {
    pub basis: [Zorn; 3],
}

impl IsotropicPlane {
    pub fn new(x: Zorn, y: Zorn, z: Zorn) -> Result<Self, OctonionError> {
        let b = [x, y, z];
        if b.iter().any(|e| !e.is_imaginary()) {
            return Err(OctonionError::NotImaginary);
        }
        let coords: Vec<Vec<Scalar>> = b.iter().map(|e| e.im_coords()).collect();
        if !gram(&b).is_zero() || rank_of(&coords) != 3 {
            return Err(OctonionError::NotIsotropicPlane);
        }
        Ok(IsotropicPlane { basis: b })
    }

    pub fn coords(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|e| e.im_coords()).collect()
    }

    /// New basis Σ_j m[i][j] b_j.
    pub fn rebased(&self, m: &Mat) -> Result<Self, OctonionError> {
        let e = |i: usize| {
            let c: Vec<Scalar> = (0..7)
                .map(|k| (0..3).fold(Scalar::zero(), |acc, j| acc + &m[(i, j)] * &self.basis[j].im_coords()[k]))
                .collect();
            im_from_coords(&c)
        };
        Self::new(e(0), e(1), e(2))
    }

    /// Span of all products b_i b_j, as Zorn coordinate vectors.
    pub fn products(&self) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for x in &self.basis {
            for y in &self.basis {
                out.push(x.mul(y).coords());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orbit {
    /// θ vanishes on B; `z` spans B·B and B is the two-sided kernel of multiplication by `z`.
    Closed { z: Zorn },
    Open { theta: Scalar },
}

/// Two-sided kernel of x ↦ xz and x ↦ zx on Im O', as Im coordinates.
pub fn two_sided_kernel(z: &Zorn) -> Vec<Vec<Scalar>> {
    let b = im_basis();
    let cols: Vec<Vec<Scalar>> =
        b.iter().map(|e| e.mul(z).coords().into_iter().chain(z.mul(e).coords()).collect()).collect();
    Mat::from_columns(&cols, 16).kernel()
}

pub fn classify_isotropic_plane(p: &IsotropicPlane) -> Orbit {
    let [x, y, z] = &p.basis;
    let t = theta(x, y, z).unwrap();
    if !t.is_zero() {
        return Orbit::Open { theta: t };
    }
    let prods = p.products();
    let span = crate::linalg::span_basis(&prods);
    let z = Zorn::from_coords(&span[0]);
    Orbit::Closed { z }
}

/// Whether B·B ⊆ B.
pub fn closed_under_product(p: &IsotropicPlane) -> bool {
    let mine: Vec<Vec<Scalar>> = p.basis.iter().map(|e| e.coords()).collect();
    p.products().iter().all(|v| crate::linalg::in_span(&mine, v))
}

/// span{(0,e₁,0,0), (0,0,e₂,0), (0,0,e₃,0)}.
pub fn canonical_closed_plane() -> IsotropicPlane {
    IsotropicPlane::new(Zorn::basis(1), Zorn::basis(5), Zorn::basis(6)).unwrap()
}

/// Pairing used by the triple relations: ⟨x, y⟩ = −2N(x, y). With it every relation of the
/// multiplication table holds; with N itself the signs of (xy)(yz) = −y and xa = x are reversed
/// for every rescaling of the triple.
pub fn lemma_pairing(x: &Zorn, y: &Zorn) -> Scalar {
    x.inner(y) * q(-2)
}

/// λ(x, y, z) = ⟨xy, z⟩ = −2θ(x, y, z).
pub fn lambda(x: &Zorn, y: &Zorn, z: &Zorn) -> Result<Scalar, OctonionError> {
    Ok(theta(x, y, z)? * q(-2))
}

/// First triple with λ = 1 among small multiples of pure v- and w-vectors, in a fixed order.
pub fn find_triple() -> [Zorn; 3] {
    let mut cands = Vec::new();
    for c in [1i64, -1, 2, -2] {
        for i in 1..7 {
            cands.push(Zorn::basis(i).scale(&q(c)));
        }
    }
    for x in &cands {
        for y in &cands {
            for z in &cands {
                if let Ok(p) = IsotropicPlane::new(x.clone(), y.clone(), z.clone()) {
                    if lambda(x, y, z).unwrap() == q(1) {
                        return p.basis;
                    }
                }
            }
        }
    }
    unreachable!("the search space contains an octonionic triple")
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub pass: bool,
}

/// The multiplication table of an octonionic triple.
pub fn triple_table_check(x: &Zorn, y: &Zorn, z: &Zorn) -> Result<Vec<Relation>, OctonionError> {
    let plane = IsotropicPlane::new(x.clone(), y.clone(), z.clone())?;
    let t = lambda(x, y, z)?;
    if t != q(1) {
        return Err(OctonionError::NotTriple(crate::scalar::fmt_scalar(&t)));
    }
    let _ = plane;
    // N-orthogonality relations do not depend on the pairing normalization
    let (xy, yz, zx) = (x.mul(y), y.mul(z), z.mul(x));
    let a = xy.mul(z).sub(&z.mul(&xy));
    let zero = |e: &Zorn| e.is_zero();
    let one = Zorn::unit();
    let mut r = Vec::new();
    let mut push = |name: &str, pass: bool| r.push(Relation { name: name.into(), pass });
    push("(xy)(xy) = 0", zero(&xy.mul(&xy)));
    push("xy orthogonal to x, y", xy.inner(x).is_zero() && xy.inner(y).is_zero());
    push("lambda(yz, zx, xy) = -1", lambda(&yz, &zx, &xy)? == q(-1));
    let b = xy.mul(&yz);
    push("<b, zx> = -1 for b = (xy)(yz)", lemma_pairing(&b, &zx) == q(-1));
    push("(xy)(yz) = -y", b == y.scale(&q(-1)));
    push("(yz)(zx) = -z", yz.mul(&zx) == z.scale(&q(-1)));
    push("(zx)(xy) = -x", zx.mul(&xy) == x.scale(&q(-1)));
    push("a is imaginary", a.conj() == a.scale(&q(-1)));
    for (e, n) in [(x, "x"), (y, "y"), (z, "z")] {
        push(&format!("{n}a = {n} = -a{n}"), e.mul(&a) == *e && a.mul(e) == e.scale(&q(-1)));
    }
    // a(yz) = yz, matching the zx and xy entries of the same display row
    for (e, n) in [(&yz, "yz"), (&zx, "zx"), (&xy, "xy")] {
        push(&format!("a({n}) = {n} = -({n})a"), a.mul(e) == *e && e.mul(&a) == e.scale(&q(-1)));
    }
    push("a = (yz)x - x(yz)", a == yz.mul(x).sub(&x.mul(&yz)));
    push("a = (zx)y - y(zx)", a == zx.mul(y).sub(&y.mul(&zx)));
    push("a a = 1", a.mul(&a) == one);
    let all = [one.clone(), x.clone(), y.clone(), z.clone(), xy.clone(), yz.clone(), zx.clone(), a.clone()];
    push("1, x, y, z, xy, yz, zx, a independent", rank_of(&all.iter().map(|e| e.coords()).collect::<Vec<_>>()) == 8);
    push("squares of x, y, z, xy, yz, zx vanish", [x, y, z, &xy, &yz, &zx].iter().all(|e| e.mul(e).is_zero()));
    push(
        "x(xy) = x(zx) = y(yz) = y(xy) = z(zx) = z(yz) = 0",
        [x.mul(&xy), x.mul(&zx), y.mul(&yz), y.mul(&xy), z.mul(&zx), z.mul(&yz)].iter().all(zero),
    );
    Ok(r)
}

/// Linear isometry from the tractor model R^7 = (cov, scal, vec) with metric h = ½·so_metric
/// to (Im O', −½N): cov_i ↦ x, y, z; scal ↦ a; vec_i ↦ 2yz, 2zx, 2xy. Columns are Im coordinates.
pub fn tractor_frame(x: &Zorn, y: &Zorn, z: &Zorn) -> Mat {
    let (xy, yz, zx) = (x.mul(y), y.mul(z), z.mul(x));
    let a = xy.mul(z).sub(&z.mul(&xy));
    let two = q(2);
    let cols = [x.clone(), y.clone(), z.clone(), a, yz.scale(&two), zx.scale(&two), xy.scale(&two)];
    Mat::from_columns(&cols.iter().map(|e| e.im_coords()).collect::<Vec<_>>(), 7)
}

/// g₂' = stab(θ) inside so(Im O', N).
pub fn g2_in_im() -> StabilizerAlgebra {
    StabilizerAlgebra::of(&orthogonal_basis(&im_metric()), &[&theta_form()])
}

#[derive(Clone, Debug)]
pub struct G2Decomposition {
    pub dim: usize,
    pub closed: bool,
    /// Dimension of g₂' ∩ g₀.
    pub g0_dim: usize,
    pub g0_traceless: bool,
    /// g₂' ∩ (g₋₂ ⊕ g₋₁).
    pub negative_dim: usize,
    /// Rank of the projection g₂' → g₋₂ ⊕ g₋₁ and its kernel.
    pub projection_rank: usize,
    pub projection_kernel: usize,
    /// Scalars c, d with (grade 1) = c·⋆(grade −2) and (grade 2) = d·⋆(grade −1) on all of g₂',
    /// when they exist.
    pub diag_scalars: Option<(Scalar, Scalar)>,
    /// Grade pattern of each element of g₂' modulo g₀: empty list means the pattern fails.
    pub failures: Vec<String>,
}

/// Hodge identification of a skew 3×3 block with a 3-vector: (M₂₃, M₃₁, M₁₂).
fn star(m: &Mat, r0: usize, c0: usize) -> [Scalar; 3] {
    [m[(r0 + 1, c0 + 2)].clone(), m[(r0 + 2, c0)].clone(), m[(r0, c0 + 1)].clone()]
}

/// Grade parts of so(4,3) coordinates in the block basis.
fn graded_parts(so: &GradedLieAlgebra, c: &[Scalar]) -> [Vec<Scalar>; 5] {
    let mut out: [Vec<Scalar>; 5] = Default::default();
    for g in -2..=2 {
        out[(g + 2) as usize] = so.indices_of_grade(g).iter().map(|&i| c[i].clone()).collect();
    }
    out
}

/// Decomposes g₂' = stab(θ) for the open plane spanned by the given triple, using the grading of
/// so(4,3) in which the triple spans the cov slot.
pub fn g2_graded_decomposition(x: &Zorn, y: &Zorn, z: &Zorn) -> Result<G2Decomposition, OctonionError> {
    let plane = IsotropicPlane::new(x.clone(), y.clone(), z.clone())?;
    if let Orbit::Closed { .. } = classify_isotropic_plane(&plane) {
        return Err(OctonionError::ClosedOrbit);
    }
    let phi = tractor_frame(x, y, z);
    let th = theta_form().pullback(&phi);
    let so = build_so(3).unwrap();
    let stab = StabilizerAlgebra::of(so.alg.basis(), &[&th]);
    let coords: Vec<Vec<Scalar>> = stab.basis.iter().map(|m| so.alg.coords(m).unwrap()).collect();
    let sel = |grades: &[i32]| -> Vec<Vec<Scalar>> {
        (0..so.dim())
            .filter(|&i| grades.contains(&so.grade(i)))
            .map(|i| so.unit(i))
            .collect()
    };
    let g0_dim = subspace_intersection(&coords, &sel(&[0])).map(|v| v.len()).unwrap_or(0);
    let g0_traceless = subspace_intersection(&coords, &sel(&[0]))
        .unwrap_or_default()
        .iter()
        .all(|c| so.alg.to_matrix(c).trace().is_zero());
    let negative_dim = subspace_intersection(&coords, &sel(&[-2, -1])).map(|v| v.len()).unwrap_or(0);
    let neg_proj: Vec<Vec<Scalar>> = coords.iter().map(|c| {
        let p = graded_parts(&so, c);
        p[0].iter().chain(&p[1]).cloned().collect()
    }).collect();
    let projection_rank = rank_of(&neg_proj);
    // grade pattern (X′, X, Θ, X′, X) with the Hodge identification
    let mut ratios: (Option<Scalar>, Option<Scalar>) = (None, None);
    let mut failures = Vec::new();
    for (k, m) in stab.basis.iter().enumerate() {
        // C block (grade −2) sits bottom-left, v column (grade 1) top-middle,
        // w row (grade −1) middle-left, B block (grade 2) top-right
        let c_star = star(m, 4, 0);
        let v_col = [m[(0, 3)].clone(), m[(1, 3)].clone(), m[(2, 3)].clone()];
        let w_row = [m[(3, 0)].clone(), m[(3, 1)].clone(), m[(3, 2)].clone()];
        let b_star = star(m, 0, 4);
        for (src, tgt, slot, name) in [(&c_star, &v_col, &mut ratios.0, "g1 vs g-2"), (&w_row, &b_star, &mut ratios.1, "g2 vs g-1")] {
            for i in 0..3 {
                if src[i].is_zero() {
                    if !tgt[i].is_zero() {
                        failures.push(format!("element {k}: {name} slot {i}"));
                    }
                    continue;
                }
                let r = &tgt[i] / &src[i];
                match slot {
                    None => *slot = Some(r),
                    Some(s) if *s != r => failures.push(format!("element {k}: {name} ratio")),
                    _ => {}
                }
            }
        }
    }
    let diag_scalars = match (ratios, failures.is_empty()) {
        ((Some(c), Some(d)), true) => Some((c, d)),
        _ => None,
    };
    Ok(G2Decomposition {
        dim: stab.dim(),
        closed: stab.is_closed(),
        g0_dim,
        g0_traceless,
        negative_dim,
        projection_rank,
        projection_kernel: stab.dim() - projection_rank,
        diag_scalars,
        failures,
    })
}

/// Index of a block entry in the so(4,3) basis, exposed for reports.
pub fn so43_index(b: Block) -> usize {
    build_so(3).unwrap().index(b)
}

/// The 3-dimensional span H_Id = {[[0,a,0],[0,0,b],[c,0,0]]} in sl(3).
pub fn h_id() -> Vec<Mat> {
    vec![Mat::from_i64(3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 0]), Mat::from_i64(3, 3, &[0, 0, 0, 0, 0, 1, 0, 0, 0]), Mat::from_i64(3, 3, &[0, 0, 0, 0, 0, 0, 1, 0, 0])]
}

#[derive(Clone, Debug)]
pub struct Sl3Report {
    pub torus_preserves: bool,
    pub bracket_dim: usize,
    pub bracket_is_transpose: bool,
    pub intersection_dim: usize,
}

pub fn sl3_example_check() -> Sl3Report {
    let h = h_id();
    let flat = |ms: &[Mat]| -> Vec<Vec<Scalar>> { ms.iter().map(|m| m.entries().to_vec()).collect() };
    let hs = flat(&h);
    let torus = [Mat::from_i64(3, 3, &[1, 0, 0, 0, -1, 0, 0, 0, 0]), Mat::from_i64(3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, -1])];
    let torus_preserves = torus.iter().all(|t| h.iter().all(|x| crate::linalg::in_span(&hs, t.commutator(x).entries())));
    let mut br = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            br.push(h[i].commutator(&h[j]));
        }
    }
    let brs = flat(&br);
    let bracket_dim = rank_of(&brs);
    let ht = flat(&h.iter().map(|m| m.transpose()).collect::<Vec<_>>());
    let bracket_is_transpose = rank_of(&[brs.clone(), ht.clone()].concat()) == 3 && bracket_dim == 3;
    let intersection_dim = subspace_intersection(&hs, &brs).map(|v| v.len()).unwrap_or(0);
    Sl3Report { torus_preserves, bracket_dim, bracket_is_transpose, intersection_dim }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_is_identity() {
        let x = Zorn::from_i64([2, -1, 3, 0, 5, 1, -2, 7]);
        assert_eq!(Zorn::unit().mul(&x), x);
        assert_eq!(x.mul(&Zorn::unit()), x);
    }

    #[test]
    fn im_signature() {
        assert_eq!(crate::linalg::signature(&im_metric()), (3, 4, 0));
    }

    #[test]
    fn triple_found() {
        let [x, y, z] = find_triple();
        assert_eq!(lambda(&x, &y, &z).unwrap(), q(1));
        assert!(triple_table_check(&x, &y, &z).unwrap().iter().all(|r| r.pass));
    }
}

/// Exact polynomial identities in symbolic coordinates, under a chosen product rule.
pub fn symbolic_identities(rule: ZornRule) -> Vec<Relation> {
    let mut out = Vec::new();
    let n16 = 16;
    let (x, y) = (symbolic(n16, 0), symbolic(n16, 1));
    out.push(Relation { name: "[x, x, y] = 0".into(), pass: alternator_with(&x, &x, &y, rule).is_zero() });
    out.push(Relation { name: "[x, y, y] = 0".into(), pass: alternator_with(&x, &y, &y, rule).is_zero() });
    out.push(Relation { name: "N(xy) = N(x) N(y)".into(), pass: x.mul_with(&y, rule).norm() == x.norm().mul(&y.norm()) });
    let (xi, yi) = (symbolic_imaginary(14, 0), symbolic_imaginary(14, 1));
    let th = |a: &Zorn<Poly>, b: &Zorn<Poly>, c: &Zorn<Poly>| a.mul_with(b, rule).inner(c);
    out.push(Relation { name: "theta(x, x, y) = 0".into(), pass: th(&xi, &xi, &yi).is_zero() });
    out.push(Relation { name: "theta(x, y, y) = 0".into(), pass: th(&xi, &yi, &yi).is_zero() });
    out.push(Relation { name: "theta(x, y, x) = 0".into(), pass: th(&xi, &yi, &xi).is_zero() });
    let n24 = 24;
    let (a, b, c) = (symbolic(n24, 0), symbolic(n24, 1), symbolic(n24, 2));
    out.push(Relation {
        name: "N([x, y, z], z) = 0".into(),
        pass: alternator_with(&a, &b, &c, rule).inner(&c).is_zero(),
    });
    out.push(Relation {
        name: "N([x, y, z], x) = 0".into(),
        pass: alternator_with(&a, &b, &c, rule).inner(&a).is_zero(),
    });
    out
}

/// Cayley transform (I − K)(I + K)⁻¹ of K ∈ so(G): an exact rational isometry of G.
pub fn cayley_isometry(k: &Mat) -> Option<Mat> {
    let i = Mat::identity(k.rows());
    Some(i.sub(k).mul(&i.add(k).inverse()?))
}

/// Image of a plane under a linear map on Im coordinates.
pub fn transform_plane(p: &IsotropicPlane, m: &Mat) -> Result<IsotropicPlane, OctonionError> {
    let e = |i: usize| im_from_coords(&m.mul_vec(&p.basis[i].im_coords()));
    IsotropicPlane::new(e(0), e(1), e(2))
}

/// Closed-orbit data checks: B·B ≠ 0, B·B ⊆ B and B is the two-sided kernel of z.
pub fn closed_plane_report(p: &IsotropicPlane) -> Vec<Relation> {
    let mut out = Vec::new();
    let prods = p.products();
    out.push(Relation { name: "B B != 0".into(), pass: rank_of(&prods) > 0 });
    out.push(Relation { name: "B B contained in B".into(), pass: closed_under_product(p) });
    if let Orbit::Closed { z } = classify_isotropic_plane(p) {
        let ker = two_sided_kernel(&z);
        let same = rank_of(&[ker.clone(), p.coords()].concat()) == 3 && ker.len() == 3;
        out.push(Relation { name: "B = two-sided kernel of z".into(), pass: same });
        out.push(Relation { name: "dim B B = 1".into(), pass: rank_of(&prods) == 1 });
    } else {
        out.push(Relation { name: "plane classified Closed".into(), pass: false });
    }
    out
}
