//! Sparse multivariate polynomials over Q and polynomial vector fields.

use crate::scalar::{q, Scalar};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("coordinate systems differ: {0} vs {1} variables")]
    Mismatch(usize, usize),
    #[error("{0}")]
    NotExpressible(String),
}

pub type Monomial = Vec<u32>;

/// Polynomial in a fixed number of variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly { nvars, terms: BTreeMap::from([(m, Scalar::one())]) }
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let nvars = m.len();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).min()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.degree() {
            None => Some(Scalar::zero()),
            Some(0) => Some(self.constant_term()),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "polynomial variable count mismatch");
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&q(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "polynomial variable count mismatch");
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn deriv(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                r.add_term(m2, c * q(m[i] as i64));
            }
        }
        r
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    /// Drops every term of total degree above `max`.
    pub fn truncate(&self, max: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.iter().sum::<u32>() <= max).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Substitutes polynomial `vals[i]` for variable i.
    pub fn compose(&self, vals: &[Poly]) -> Poly {
        let nv = vals.first().map(|p| p.nvars).unwrap_or(0);
        let mut r = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&vals[i].pow(e));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Embeds into a larger coordinate system; variable i goes to `map[i]`.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut r = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; nvars];
            for (i, &e) in m.iter().enumerate() {
                m2[map[i]] += e;
            }
            r.add_term(m2, c.clone());
        }
        r
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            let cs = crate::scalar::fmt_scalar(c);
            parts.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", cs, mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("z{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

/// JSON form of a polynomial: (exponents, numerator, denominator) triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<(Vec<u32>, String, String)>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson { terms: p.terms.iter().map(|(m, c)| (m.clone(), c.numer().to_string(), c.denom().to_string())).collect() }
    }
}

impl PolyJson {
    pub fn to_poly(&self, nvars: usize) -> Option<Poly> {
        let mut p = Poly::zero(nvars);
        for (m, n, d) in &self.terms {
            if m.len() != nvars {
                return None;
            }
            let c = Scalar::new(n.parse().ok()?, d.parse().ok()?);
            p.add_term(m.clone(), c);
        }
        Some(p)
    }
}

/// Vector field Σ f_i ∂/∂z_i with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    pub comps: Vec<Poly>,
}

impl PolyVectorField {
    pub fn zero(nvars: usize) -> Self {
        PolyVectorField { comps: vec![Poly::zero(nvars); nvars] }
    }

    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut f = Self::zero(nvars);
        f.comps[i] = Poly::one(nvars);
        f
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        PolyVectorField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PolyVectorField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PolyVectorField { comps: self.comps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_poly(&self, f: &Poly) -> Self {
        PolyVectorField { comps: self.comps.iter().map(|a| a.mul(f)).collect() }
    }

    /// Derivative of a function along the field.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut r = Poly::zero(f.nvars());
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                r = r.add(&c.mul(&f.deriv(i)));
            }
        }
        r
    }

    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.comps.iter().map(|p| p.eval(point)).collect()
    }
}

/// [f, g]_i = f(g_i) − g(f_i).
pub fn lie_bracket(f: &PolyVectorField, g: &PolyVectorField) -> Result<PolyVectorField, PolyError> {
    if f.nvars() != g.nvars() {
        return Err(PolyError::Mismatch(f.nvars(), g.nvars()));
    }
    Ok(PolyVectorField { comps: g.comps.iter().zip(&f.comps).map(|(gi, fi)| f.apply(gi).sub(&g.apply(fi))).collect() })
}

/// Writes `target` as Σ c_l fields[l] with polynomial c_l. Elimination only pivots on
/// nonzero constants, which suffices for the unipotent frames of the models.
pub fn express_in_frame(fields: &[PolyVectorField], target: &PolyVectorField) -> Result<Vec<Poly>, PolyError> {
    let nv = target.nvars();
    let m = fields.len();
    // augmented rows: coordinate i, columns = fields then target
    let mut rows: Vec<Vec<Poly>> =
        (0..nv).map(|i| fields.iter().map(|f| f.comps[i].clone()).chain(std::iter::once(target.comps[i].clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..nv).find(|&i| rows[i][c].as_constant().map(|x| !x.is_zero()).unwrap_or(false)) else {
            if (r..nv).any(|i| !rows[i][c].is_zero()) {
                return Err(PolyError::NotExpressible(format!("no constant pivot in column {c}")));
            }
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / rows[r][c].constant_term();
        rows[r] = rows[r].iter().map(|x| x.scale(&inv)).collect();
        for i in 0..nv {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x = x.sub(&y.mul(&f));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..nv).any(|i| !rows[i][m].is_zero()) {
        return Err(PolyError::NotExpressible("target leaves the span of the frame".into()));
    }
    let mut out = vec![Poly::zero(nv); m];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][m].clone();
    }
    Ok(out)
}
