//! Coordinate models of free n-distributions: the homogeneous model, the non-flat
//! example for n ≥ 4, twisted products, curvature, normality and the n = 3 conformal structure.

use crate::lie::{build_so, Block, GradedLieAlgebra};
use crate::linalg::{signature, Mat};
use crate::poly::{express_in_frame, lie_bracket, Poly, PolyError, PolyJson, PolyVectorField};
use crate::scalar::{half, q, Scalar};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("rank {0} not supported here (need at least {1})")]
    Rank(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("function precondition fails: {0}")]
    Precondition(String),
    #[error("volume form must be nonzero")]
    ZeroVolume,
}

/// A frame of polynomial vector fields together with its identification with g₋.
#[derive(Clone, Debug)]
pub struct ModelFrame {
    pub name: String,
    pub n: usize,
    pub coords: Vec<String>,
    pub fields: Vec<PolyVectorField>,
    pub labels: Vec<String>,
    /// Indices of the grade −1 fields.
    pub h_part: Vec<usize>,
    /// Image of each field in g₋ ⊂ so(n+1,n).
    pub g_image: Vec<Vec<Scalar>>,
    pub alg: GradedLieAlgebra,
}

/// Nonzero curvature entries κ(e_i, e_j), i < j, in frame coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Curvature {
    pub entries: BTreeMap<(usize, usize), Vec<Poly>>,
}

impl Curvature {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// κ(e_i, e_j) with antisymmetry applied.
    pub fn get(&self, i: usize, j: usize, len: usize, nvars: usize) -> Vec<Poly> {
        if i < j {
            self.entries.get(&(i, j)).cloned().unwrap_or_else(|| vec![Poly::zero(nvars); len])
        } else if i > j {
            self.get(j, i, len, nvars).iter().map(|p| p.neg()).collect()
        } else {
            vec![Poly::zero(nvars); len]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: Vec<Poly>) {
        let (key, v) = if i < j { ((i, j), value) } else { ((j, i), value.iter().map(|p| p.neg()).collect()) };
        if v.iter().all(|p| p.is_zero()) {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            out.push((k, l));
        }
    }
    out
}

fn w_bracket(alg: &GradedLieAlgebra, k: usize, l: usize) -> Vec<Scalar> {
    alg.bracket(&alg.unit(alg.index(Block::W(k))), &alg.unit(alg.index(Block::W(l)))).unwrap()
}

impl ModelFrame {
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Frame coordinates of a g₋ element.
    pub fn g_to_frame(&self, x: &[Scalar]) -> Vec<Scalar> {
        let cols: Vec<Vec<Scalar>> = self.g_image.clone();
        Mat::from_columns(&cols, self.alg.dim()).solve(x).expect("element lies in g₋")
    }

    /// {e_i, e_j} in frame coordinates, read off from g₋.
    pub fn algebraic_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        let b = self.alg.bracket(&self.g_image[i], &self.g_image[j]).unwrap();
        self.g_to_frame(&b)
    }

    pub fn lie(&self, i: usize, j: usize) -> Result<PolyVectorField, PolyError> {
        lie_bracket(&self.fields[i], &self.fields[j])
    }

    /// Lie bracket [e_i, e_j] in frame coordinates.
    pub fn lie_in_frame(&self, i: usize, j: usize) -> Result<Vec<Poly>, PolyError> {
        express_in_frame(&self.fields, &self.lie(i, j)?)
    }

    /// Λ²H → T/H at a point: rank of H together with all brackets of H.
    pub fn freeness_rank(&self, point: &[Scalar]) -> usize {
        let mut vs: Vec<Vec<Scalar>> = self.h_part.iter().map(|&i| self.fields[i].eval(point)).collect();
        for (a, &i) in self.h_part.iter().enumerate() {
            for &j in &self.h_part[a + 1..] {
                vs.push(self.lie(i, j).unwrap().eval(point));
            }
        }
        crate::linalg::rank_of(&vs)
    }

    pub fn is_free_at(&self, point: &[Scalar]) -> bool {
        let h = self.h_part.len();
        self.freeness_rank(point) == self.nvars() && h + h * (h - 1) / 2 == self.nvars()
    }

    pub fn to_json(&self) -> FrameJson {
        FrameJson {
            name: self.name.clone(),
            coords: self.coords.clone(),
            fields: self
                .labels
                .iter()
                .zip(&self.fields)
                .map(|(l, f)| FieldJson {
                    label: l.clone(),
                    comps: f
                        .comps
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(i, p)| (self.coords[i].clone(), PolyJson::from(p)))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub label: String,
    pub comps: Vec<(String, PolyJson)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameJson {
    pub name: String,
    pub coords: Vec<String>,
    pub fields: Vec<FieldJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureEntryJson {
    pub pair: (String, String),
    pub value: Vec<(String, PolyJson)>,
}

pub fn curvature_json(frame: &ModelFrame, k: &Curvature) -> Vec<CurvatureEntryJson> {
    k.entries
        .iter()
        .map(|(&(i, j), v)| CurvatureEntryJson {
            pair: (frame.labels[i].clone(), frame.labels[j].clone()),
            value: v.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(m, p)| (frame.labels[m].clone(), PolyJson::from(p))).collect(),
        })
        .collect()
}

/// X_j = ∂/∂x_j + ½ Σ_p x_p U_pj, U_kl = ∂/∂x_kl.
pub fn standard_model(n: usize) -> Result<ModelFrame, ModelError> {
    if n < 2 {
        return Err(ModelError::Rank(n, 2));
    }
    let pairs = pair_index(n);
    let nv = n + pairs.len();
    let mut coords: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();
    coords.extend(pairs.iter().map(|(k, l)| format!("x{}{}", k + 1, l + 1)));
    let upos = |k: usize, l: usize| -> (usize, Scalar) {
        if k < l {
            (n + pairs.iter().position(|&p| p == (k, l)).unwrap(), q(1))
        } else {
            (n + pairs.iter().position(|&p| p == (l, k)).unwrap(), q(-1))
        }
    };
    let mut fields = Vec::new();
    for j in 0..n {
        let mut f = PolyVectorField::coordinate(nv, j);
        for p in 0..n {
            if p != j {
                let (c, s) = upos(p, j);
                f.comps[c] = f.comps[c].add(&Poly::var(nv, p).scale(&(s * half())));
            }
        }
        fields.push(f);
    }
    for i in 0..pairs.len() {
        fields.push(PolyVectorField::coordinate(nv, n + i));
    }
    let mut labels: Vec<String> = (1..=n).map(|j| format!("X{j}")).collect();
    labels.extend(pairs.iter().map(|(k, l)| format!("U{}{}", k + 1, l + 1)));
    let alg = build_so(n).expect("n ≥ 2");
    let mut g_image: Vec<Vec<Scalar>> = (0..n).map(|j| alg.unit(alg.index(Block::W(j)))).collect();
    g_image.extend(pairs.iter().map(|&(k, l)| w_bracket(&alg, k, l)));
    Ok(ModelFrame { name: format!("standard({n})"), n, coords, fields, labels, h_part: (0..n).collect(), g_image, alg })
}

/// Replaces X₁ by X₁ + x₁₂U₃₄ + ½x₂U₂₁ and X₂ by X₂ − ½x₁U₁₂.
pub fn nonflat_example(n: usize) -> Result<ModelFrame, ModelError> {
    if n < 4 {
        return Err(ModelError::Rank(n, 4));
    }
    let mut m = standard_model(n)?;
    let nv = m.nvars();
    let coord = |name: &str| m.coords.iter().position(|c| c == name).unwrap();
    let (x1, x2, x12) = (coord("x1"), coord("x2"), coord("x12"));
    let u34 = coord("x34");
    let u12 = coord("x12");
    let mut f1 = m.fields[0].clone();
    f1.comps[u34] = f1.comps[u34].add(&Poly::var(nv, x12));
    // U₂₁ = −U₁₂
    f1.comps[u12] = f1.comps[u12].sub(&Poly::var(nv, x2).scale(&half()));
    let mut f2 = m.fields[1].clone();
    f2.comps[u12] = f2.comps[u12].sub(&Poly::var(nv, x1).scale(&half()));
    m.fields[0] = f1;
    m.fields[1] = f2;
    m.labels[0] = "X1'".into();
    m.labels[1] = "X2'".into();
    m.name = format!("nonflat({n})");
    Ok(m)
}

/// [X_i, X_j] = U_ij and [U, ·] = 0 on the homogeneous model; returns failures.
pub fn standard_commutator_failures(m: &ModelFrame) -> Result<Vec<String>, ModelError> {
    let n = m.n;
    let mut bad = Vec::new();
    let u = |k: usize, l: usize| -> PolyVectorField {
        let (a, b, s) = if k < l { (k, l, q(1)) } else { (l, k, q(-1)) };
        m.fields[m.index_of(&format!("U{}{}", a + 1, b + 1)).unwrap()].scale(&s)
    };
    for p in 0..n {
        for j in 0..n {
            let br = m.lie(p, j)?;
            let expect = if p == j { PolyVectorField::zero(m.nvars()) } else { u(p, j) };
            if br != expect {
                bad.push(format!("[X{},X{}] != U{}{}", p + 1, j + 1, p + 1, j + 1));
            }
        }
    }
    for a in n..m.len() {
        for b in 0..m.len() {
            if !m.lie(a, b)?.is_zero() {
                bad.push(format!("[{},{}] != 0", m.labels[a], m.labels[b]));
            }
        }
    }
    Ok(bad)
}

/// κ(e_i,e_j) = [e_i,e_j] − {e_i,e_j} for the connection annihilating the frame.
pub fn flat_curvature(frame: &ModelFrame) -> Result<Curvature, ModelError> {
    let nv = frame.nvars();
    let mut k = Curvature::default();
    for i in 0..frame.len() {
        for j in i + 1..frame.len() {
            let lie = frame.lie_in_frame(i, j)?;
            let alg = frame.algebraic_bracket(i, j);
            let v: Vec<Poly> = lie.iter().zip(&alg).map(|(p, c)| p.sub(&Poly::constant(nv, c.clone()))).collect();
            k.set(i, j, v);
        }
    }
    Ok(k)
}

fn frame_to_g(frame: &ModelFrame, v: &[Poly]) -> Vec<Poly> {
    let nv = frame.nvars();
    let mut out = vec![Poly::zero(nv); frame.alg.dim()];
    for (c, img) in v.iter().zip(&frame.g_image) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(img) {
            if !x.is_zero() {
                *o = o.add(&c.scale(x));
            }
        }
    }
    out
}

fn apply_mat(m: &Mat, v: &[Poly], nv: usize) -> Vec<Poly> {
    (0..m.rows())
        .map(|r| {
            let mut acc = Poly::zero(nv);
            for (c, p) in v.iter().enumerate() {
                let x = &m[(r, c)];
                if !x.is_zero() && !p.is_zero() {
                    acc = acc.add(&p.scale(x));
                }
            }
            acc
        })
        .collect()
}

/// Killing-dual elements Z^l ∈ p⊥ with K(Z^l, e_m) = δ_lm.
pub fn dual_frame(frame: &ModelFrame) -> Vec<Vec<Scalar>> {
    let alg = &frame.alg;
    let nil = alg.nilradical_indices();
    let m = Mat::from_fn(frame.len(), nil.len(), |r, c| alg.killing_form(&frame.g_image[r], &alg.unit(nil[c])));
    (0..frame.len())
        .map(|l| {
            let rhs: Vec<Scalar> = (0..frame.len()).map(|r| if r == l { q(1) } else { q(0) }).collect();
            let sol = m.solve(&rhs).expect("Killing form pairs g₋ with p⊥");
            let mut z = vec![Scalar::zero(); alg.dim()];
            for (c, x) in nil.iter().zip(sol) {
                z[*c] = x;
            }
            z
        })
        .collect()
}

/// Values of ∂*κ on a frame field, in g-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub values: Vec<(String, Vec<Poly>)>,
}

impl NormalityReport {
    pub fn is_normal(&self) -> bool {
        self.values.iter().all(|(_, v)| v.iter().all(|p| p.is_zero()))
    }

    pub fn offenders(&self) -> Vec<String> {
        self.values.iter().filter(|(_, v)| v.iter().any(|p| !p.is_zero())).map(|(l, _)| l.clone()).collect()
    }
}

/// (∂*κ)(X) = Σ_l {Z^l, κ(Z_l, X)} − ½ κ({Z^l, X}₋, Z_l).
pub fn normality_check(frame: &ModelFrame, k: &Curvature) -> NormalityReport {
    let nv = frame.nvars();
    let len = frame.len();
    let alg = &frame.alg;
    let duals = dual_frame(frame);
    let ads: Vec<Mat> = duals.iter().map(|z| alg.alg.ad(z)).collect();
    let mut values = Vec::new();
    for x in 0..len {
        let mut acc = vec![Poly::zero(nv); alg.dim()];
        for l in 0..len {
            let kv = frame_to_g(frame, &k.get(l, x, len, nv));
            let t = apply_mat(&ads[l], &kv, nv);
            acc = acc.iter().zip(&t).map(|(a, b)| a.add(b)).collect();
            let mut br = alg.bracket(&duals[l], &frame.g_image[x]).unwrap();
            for (i, c) in br.iter_mut().enumerate() {
                if alg.grade(i) >= 0 {
                    *c = Scalar::zero();
                }
            }
            let dir = frame.g_to_frame(&br);
            for (m, c) in dir.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let kv = frame_to_g(frame, &k.get(m, l, len, nv));
                let s = -(c * half());
                acc = acc.iter().zip(&kv).map(|(a, b)| a.add(&b.scale(&s))).collect();
            }
        }
        values.push((frame.labels[x].clone(), acc));
    }
    NormalityReport { values }
}

/// Signs in x^k = s_x·x_k and y^k = s_y·y_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistSigns {
    pub x: i64,
    pub y: i64,
}

impl TwistSigns {
    /// Signs under which [X̃_j, Ỹ_k] = X_j ⊗ Y_k.
    pub const WORKING: TwistSigns = TwistSigns { x: 1, y: 1 };
    /// X_j·x^k = −δ and Y_j·y^k = δ as displayed.
    pub const LITERAL: TwistSigns = TwistSigns { x: -1, y: 1 };
}

/// The twisted product frame plus its derivative data.
#[derive(Clone, Debug)]
pub struct TwistedProduct {
    pub frame: ModelFrame,
    /// X_j·x^k = a δ_jk and Y_j·y^k = b δ_jk.
    pub a: Scalar,
    pub b: Scalar,
    pub n1: usize,
    pub n2: usize,
}

fn derivative_constant(m: &ModelFrame, s: i64) -> Result<Scalar, ModelError> {
    let nv = m.nvars();
    let mut a: Option<Scalar> = None;
    for (fi, f) in m.fields.iter().enumerate() {
        // x^k = s · x_k, the first n coordinates
        for k in 0..m.h_part.len() {
            let val = f.apply(&Poly::var(nv, k).scale(&q(s)));
            let pos = m.h_part.iter().position(|&h| h == fi);
            match pos {
                Some(j) if j == k => {
                    let c = val.as_constant().ok_or_else(|| ModelError::Precondition(format!("{}·x^{} = {}", m.labels[fi], k + 1, val)))?;
                    if let Some(prev) = &a {
                        if *prev != c {
                            return Err(ModelError::Precondition(format!("{}·x^{} = {}", m.labels[fi], k + 1, c)));
                        }
                    }
                    a = Some(c);
                }
                _ => {
                    if !val.is_zero() {
                        return Err(ModelError::Precondition(format!("{}·x^{} = {}", m.labels[fi], k + 1, val)));
                    }
                }
            }
        }
    }
    a.ok_or_else(|| ModelError::Precondition("empty frame".into()))
}

/// X̃_j = σ(X_j) − ½ Σ_k y^k ∂t_jk and Ỹ_k = σ(Y_k) + ½ Σ_j x^j ∂t_jk on M₁ × M₂ × (H₁⊗H₂).
pub fn twisted_product(m1: &ModelFrame, m2: &ModelFrame, signs: TwistSigns) -> Result<TwistedProduct, ModelError> {
    let a = derivative_constant(m1, signs.x)?;
    let b = derivative_constant(m2, signs.y)?;
    if a.is_zero() || b.is_zero() {
        return Err(ModelError::Precondition("degenerate coordinate functions".into()));
    }
    let (n1, n2) = (m1.n, m2.n);
    let (v1, v2) = (m1.nvars(), m2.nvars());
    let nv = v1 + v2 + n1 * n2;
    let mut coords: Vec<String> = m1.coords.clone();
    coords.extend(m2.coords.iter().map(|c| c.replacen('x', "y", 1)));
    for j in 0..n1 {
        for k in 0..n2 {
            coords.push(format!("t{}{}", j + 1, k + 1));
        }
    }
    let t = |j: usize, k: usize| v1 + v2 + j * n2 + k;
    let map1: Vec<usize> = (0..v1).collect();
    let map2: Vec<usize> = (v1..v1 + v2).collect();
    let lift = |f: &PolyVectorField, map: &[usize]| -> PolyVectorField {
        let mut g = PolyVectorField::zero(nv);
        for (i, c) in f.comps.iter().enumerate() {
            g.comps[map[i]] = c.relabel(nv, map);
        }
        g
    };
    let xfun = |j: usize| Poly::var(nv, j).scale(&q(signs.x));
    let yfun = |k: usize| Poly::var(nv, v1 + k).scale(&q(signs.y));
    let mut fields = Vec::new();
    let mut labels = Vec::new();
    for (j, &fi) in m1.h_part.iter().enumerate() {
        let mut f = lift(&m1.fields[fi], &map1);
        for k in 0..n2 {
            f.comps[t(j, k)] = f.comps[t(j, k)].sub(&yfun(k).scale(&half()));
        }
        fields.push(f);
        labels.push(format!("X~{}", j + 1));
    }
    for (k, &fi) in m2.h_part.iter().enumerate() {
        let mut f = lift(&m2.fields[fi], &map2);
        for j in 0..n1 {
            f.comps[t(j, k)] = f.comps[t(j, k)].add(&xfun(j).scale(&half()));
        }
        fields.push(f);
        labels.push(format!("Y~{}", k + 1));
    }
    let rest1: Vec<usize> = (0..m1.len()).filter(|i| !m1.h_part.contains(i)).collect();
    let rest2: Vec<usize> = (0..m2.len()).filter(|i| !m2.h_part.contains(i)).collect();
    for &i in &rest1 {
        fields.push(lift(&m1.fields[i], &map1));
        labels.push(format!("s{}", m1.labels[i]));
    }
    for &i in &rest2 {
        fields.push(lift(&m2.fields[i], &map2));
        labels.push(format!("s{}", m2.labels[i].replacen('U', "V", 1)));
    }
    for j in 0..n1 {
        for k in 0..n2 {
            fields.push(PolyVectorField::coordinate(nv, t(j, k)));
            labels.push(format!("T{}{}", j + 1, k + 1));
        }
    }
    let n = n1 + n2;
    let alg = build_so(n).expect("n ≥ 2");
    let embed = |img: &[Scalar], src: &GradedLieAlgebra, off: usize| -> Vec<Scalar> {
        // g₋ of the factor sits inside g₋ of the product via index shift
        let mut out = vec![Scalar::zero(); alg.dim()];
        for (i, x) in img.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let blk = match src.blocks[i] {
                Block::W(j) => Block::W(j + off),
                Block::C(k, l) => Block::C(k + off, l + off),
                other => panic!("{} is not in g₋", other.label()),
            };
            out[alg.index(blk)] = x.clone();
        }
        out
    };
    let mut g_image = Vec::new();
    for &fi in &m1.h_part {
        g_image.push(embed(&m1.g_image[fi], &m1.alg, 0));
    }
    for &fi in &m2.h_part {
        g_image.push(embed(&m2.g_image[fi], &m2.alg, n1));
    }
    for &i in &rest1 {
        g_image.push(embed(&m1.g_image[i], &m1.alg, 0));
    }
    for &i in &rest2 {
        g_image.push(embed(&m2.g_image[i], &m2.alg, n1));
    }
    for j in 0..n1 {
        for k in 0..n2 {
            g_image.push(w_bracket(&alg, j, n1 + k));
        }
    }
    let frame = ModelFrame {
        name: format!("twisted({},{})", m1.name, m2.name),
        n,
        coords,
        fields,
        labels,
        h_part: (0..n).collect(),
        g_image,
        alg,
    };
    Ok(TwistedProduct { frame, a, b, n1, n2 })
}

impl TwistedProduct {
    /// The three commutator displays; returns failures.
    pub fn relation_failures(&self, m1: &ModelFrame, m2: &ModelFrame) -> Result<Vec<String>, ModelError> {
        let f = &self.frame;
        let nv = f.nvars();
        let (v1, v2) = (m1.nvars(), m2.nvars());
        let lift = |x: &PolyVectorField, off: usize| -> PolyVectorField {
            let map: Vec<usize> = (off..off + x.nvars()).collect();
            let mut g = PolyVectorField::zero(nv);
            for (i, c) in x.comps.iter().enumerate() {
                g.comps[map[i]] = c.relabel(nv, &map);
            }
            g
        };
        let mut bad = Vec::new();
        for j in 0..self.n1 {
            for k in 0..self.n1 {
                let lhs = f.lie(j, k)?;
                let rhs = lift(&lie_bracket(&m1.fields[m1.h_part[j]], &m1.fields[m1.h_part[k]])?, 0);
                if lhs != rhs {
                    bad.push(format!("[X~{},X~{}] != s[X{},X{}]", j + 1, k + 1, j + 1, k + 1));
                }
            }
        }
        for j in 0..self.n2 {
            for k in 0..self.n2 {
                let lhs = f.lie(self.n1 + j, self.n1 + k)?;
                let rhs = lift(&lie_bracket(&m2.fields[m2.h_part[j]], &m2.fields[m2.h_part[k]])?, v1);
                if lhs != rhs {
                    bad.push(format!("[Y~{},Y~{}] != s[Y{},Y{}]", j + 1, k + 1, j + 1, k + 1));
                }
            }
        }
        for j in 0..self.n1 {
            for k in 0..self.n2 {
                let lhs = f.lie(j, self.n1 + k)?;
                let rhs = PolyVectorField::coordinate(nv, v1 + v2 + j * self.n2 + k);
                if lhs != rhs {
                    bad.push(format!("[X~{},Y~{}] != X{}(x)Y{}", j + 1, k + 1, j + 1, k + 1));
                }
            }
        }
        Ok(bad)
    }

    /// Product frame index of factor field `i` (factor 1 or 2).
    fn product_index(&self, m1: &ModelFrame, m2: &ModelFrame, factor: usize, i: usize) -> usize {
        let (m, base_h, base_rest, other_rest) = if factor == 1 {
            (m1, 0, self.n1 + self.n2, 0)
        } else {
            (m2, self.n1, self.n1 + self.n2, m1.len() - m1.h_part.len())
        };
        if let Some(p) = m.h_part.iter().position(|&h| h == i) {
            return base_h + p;
        }
        let rest: Vec<usize> = (0..m.len()).filter(|j| !m.h_part.contains(j)).collect();
        base_rest + other_rest + rest.iter().position(|&j| j == i).unwrap()
    }

    /// Product curvature against κ¹ ⊕ κ² carried to the product frame; returns mismatches.
    pub fn direct_sum_failures(&self, m1: &ModelFrame, m2: &ModelFrame) -> Result<Vec<String>, ModelError> {
        let f = &self.frame;
        let nv = f.nvars();
        let k = flat_curvature(f)?;
        let mut expected = Curvature::default();
        for (factor, m, off) in [(1, m1, 0), (2, m2, m1.nvars())] {
            let map: Vec<usize> = (off..off + m.nvars()).collect();
            for (&(i, j), v) in &flat_curvature(m)?.entries {
                let mut val = vec![Poly::zero(nv); f.len()];
                for (c, p) in v.iter().enumerate() {
                    val[self.product_index(m1, m2, factor, c)] = p.relabel(nv, &map);
                }
                expected.set(self.product_index(m1, m2, factor, i), self.product_index(m1, m2, factor, j), val);
            }
        }
        let mut bad = Vec::new();
        for key in k.entries.keys().chain(expected.entries.keys()) {
            if k.entries.get(key) != expected.entries.get(key) {
                bad.push(format!("κ({},{})", f.labels[key.0], f.labels[key.1]));
            }
        }
        bad.dedup();
        Ok(bad)
    }
}

/// g(U, X) = (U ∧ X)/σ on T₋₂ × H for n = 3, zero on H × H and T₋₂ × T₋₂.
pub fn conformal_structure(frame: &ModelFrame, sigma: &Scalar) -> Result<Vec<Vec<Poly>>, ModelError> {
    if frame.n != 3 || frame.len() != 6 {
        return Err(ModelError::Rank(frame.n, 3));
    }
    if sigma.is_zero() {
        return Err(ModelError::ZeroVolume);
    }
    let nv = frame.nvars();
    let pairs = pair_index(3);
    let mut g = vec![vec![Poly::zero(nv); 6]; 6];
    for (p, &(k, l)) in pairs.iter().enumerate() {
        for j in 0..3 {
            let e = levi_civita(k, l, j);
            if e != 0 {
                let v = Poly::constant(nv, q(e) / sigma);
                g[3 + p][j] = v.clone();
                g[j][3 + p] = v;
            }
        }
    }
    Ok(g)
}

fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    if a == b || b == c || a == c {
        return 0;
    }
    let inversions = [(a, b), (a, c), (b, c)].iter().filter(|(x, y)| x > y).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn conformal_signature(g: &[Vec<Poly>], point: &[Scalar]) -> (usize, usize, usize) {
    let m = Mat::from_fn(g.len(), g.len(), |r, c| g[r][c].eval(point));
    signature(&m)
}

/// g(U + Y, X) = g(U, X) for U in T₋₂, Y and X in H; returns failures.
pub fn conformal_shift_failures(g: &[Vec<Poly>]) -> Vec<String> {
    let mut bad = Vec::new();
    for u in 3..6 {
        for y in 0..3 {
            for x in 0..3 {
                let lhs = g[u][x].add(&g[y][x]);
                if lhs != g[u][x] {
                    bad.push(format!("g(e{u}+e{y}, e{x})"));
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_sizes() {
        assert_eq!(standard_model(3).unwrap().len(), 6);
        assert!(standard_model(1).is_err());
        assert!(nonflat_example(3).is_err());
    }

    #[test]
    fn algebraic_bracket_matches_model() {
        let m = standard_model(3).unwrap();
        let b = m.algebraic_bracket(0, 1);
        let u12 = m.index_of("U12").unwrap();
        assert_eq!(b[u12], q(1));
        assert!(flat_curvature(&m).unwrap().is_zero());
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita(0, 1, 2), 1);
        assert_eq!(levi_civita(1, 0, 2), -1);
        assert_eq!(levi_civita(2, 0, 1), 1);
        assert_eq!(levi_civita(0, 0, 1), 0);
    }
}
