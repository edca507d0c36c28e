//! Truncated Taylor jets at the origin and small dense matrices over them.
//! A jet with `order = k` is exact in every monomial of total degree ≤ k.

use crate::poly::Poly;
use crate::scalar::{q, Scalar};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub poly: Poly,
    pub order: i32,
}

impl Jet {
    pub fn from_poly(poly: Poly, order: i32) -> Self {
        let p = if order >= 0 { poly.truncate(order as u32) } else { Poly::zero(poly.nvars()) };
        Jet { poly: p, order }
    }

    pub fn constant(nvars: usize, order: i32, c: Scalar) -> Self {
        Jet { poly: Poly::constant(nvars, c), order }
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::constant(0, 0, c)
    }

    pub fn zero(nvars: usize, order: i32) -> Self {
        Self::constant(nvars, order, Scalar::zero())
    }

    pub fn var(nvars: usize, order: i32, i: usize) -> Self {
        Self::from_poly(Poly::var(nvars, i), order)
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.nvars(), self.order)
    }

    pub fn lift(&self, c: &Scalar) -> Self {
        Self::constant(self.nvars(), self.order, c.clone())
    }

    pub fn value(&self) -> Scalar {
        self.poly.constant_term()
    }

    /// Zero in every degree the jet is exact in.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Jet) -> Jet {
        Jet { poly: self.poly.add(&o.poly), order: self.order.min(o.order) }.trimmed()
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        Jet { poly: self.poly.sub(&o.poly), order: self.order.min(o.order) }.trimmed()
    }

    pub fn neg(&self) -> Jet {
        Jet { poly: self.poly.neg(), order: self.order }
    }

    pub fn scale(&self, c: &Scalar) -> Jet {
        Jet { poly: self.poly.scale(c), order: self.order }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        if order < 0 {
            return Jet::zero(self.nvars(), order);
        }
        let a = self.poly.truncate(order as u32);
        let b = o.poly.truncate(order as u32);
        Jet { poly: a.mul(&b).truncate(order as u32), order }
    }

    fn trimmed(self) -> Jet {
        if self.order < 0 {
            Jet { poly: Poly::zero(self.poly.nvars()), order: self.order }
        } else {
            Jet { poly: self.poly.truncate(self.order as u32), order: self.order }
        }
    }

    /// Inverse as a geometric series; `None` when the value at the origin vanishes.
    pub fn inv(&self) -> Option<Jet> {
        let c0 = self.value();
        if c0.is_zero() {
            return None;
        }
        let ic = Scalar::one() / &c0;
        // self = c0 (1 + r), r without constant term
        let r = Jet { poly: self.poly.scale(&ic).sub(&Poly::one(self.nvars())), order: self.order };
        let mut acc = self.lift(&Scalar::one());
        let mut term = acc.clone();
        for _ in 0..self.order.max(0) {
            term = term.mul(&r).neg();
            acc = acc.add(&term);
        }
        Some(acc.scale(&ic))
    }

    pub fn deriv(&self, i: usize) -> Jet {
        Jet { poly: self.poly.deriv(i), order: self.order - 1 }.trimmed()
    }
}

/// Dense matrix of jets, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JMat {
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<Jet>,
}

impl JMat {
    pub fn zeros(rows: usize, cols: usize, nvars: usize, order: i32) -> Self {
        JMat { rows, cols, e: vec![Jet::zero(nvars, order); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize, order: i32) -> Self {
        let mut m = Self::zeros(n, n, nvars, order);
        for i in 0..n {
            m.set(i, i, Jet::constant(nvars, order, q(1)));
        }
        m
    }

    pub fn from_scalars(m: &crate::linalg::Mat, nvars: usize, order: i32) -> Self {
        JMat {
            rows: m.rows(),
            cols: m.cols(),
            e: m.entries().iter().map(|x| Jet::constant(nvars, order, x.clone())).collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Jet>]) -> Self {
        let rows = cols[0].len();
        let mut m = JMat { rows, cols: cols.len(), e: vec![cols[0][0].zero_like(); rows * cols.len()] };
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Jet {
        &self.e[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Jet) {
        self.e[r * self.cols + c] = x;
    }

    pub fn column(&self, c: usize) -> Vec<Jet> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Jet> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> JMat {
        JMat { rows, cols, e: (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).map(|(r, c)| self.get(r0 + r, c0 + c).clone()).collect() }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &JMat) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn transpose(&self) -> JMat {
        let mut m = JMat { rows: self.cols, cols: self.rows, e: self.e.clone() };
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn add(&self, o: &JMat) -> JMat {
        JMat { rows: self.rows, cols: self.cols, e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &JMat) -> JMat {
        JMat { rows: self.rows, cols: self.cols, e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> JMat {
        JMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> JMat {
        JMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn scale_jet(&self, s: &Jet) -> JMat {
        JMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn mul(&self, o: &JMat) -> JMat {
        assert_eq!(self.cols, o.rows, "jet matrix shape mismatch");
        let z = self.e.first().or(o.e.first()).map(|x| x.zero_like()).unwrap_or_else(|| Jet::zero(0, 0));
        let mut m = JMat { rows: self.rows, cols: o.cols, e: vec![z.clone(); self.rows * o.cols] };
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = m.get(r, c).add(&a.mul(b));
                        m.set(r, c, v);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Jet]) -> Vec<Jet> {
        let col = JMat::from_columns(&[v.to_vec()]);
        self.mul(&col).column(0)
    }

    pub fn commutator(&self, o: &JMat) -> JMat {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    pub fn min_order(&self) -> i32 {
        self.e.iter().map(|x| x.order).min().unwrap_or(i32::MAX)
    }

    /// Gauss-Jordan inverse; pivots must be units.
    pub fn inverse(&self) -> Option<JMat> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let z = self.get(0, 0);
        let mut a = self.clone();
        let mut inv = JMat::identity(n, z.nvars(), z.order);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).value().is_zero())?;
            if p != c {
                for k in 0..n {
                    let (x, y) = (a.get(c, k).clone(), a.get(p, k).clone());
                    a.set(c, k, y);
                    a.set(p, k, x);
                    let (x, y) = (inv.get(c, k).clone(), inv.get(p, k).clone());
                    inv.set(c, k, y);
                    inv.set(p, k, x);
                }
            }
            let pi = a.get(c, c).inv()?;
            for k in 0..n {
                let x = a.get(c, k).mul(&pi);
                a.set(c, k, x);
                let x = inv.get(c, k).mul(&pi);
                inv.set(c, k, x);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for k in 0..n {
                    let x = a.get(r, k).sub(&a.get(c, k).mul(&f));
                    a.set(r, k, x);
                    let x = inv.get(r, k).sub(&inv.get(c, k).mul(&f));
                    inv.set(r, k, x);
                }
            }
        }
        Some(inv)
    }

    /// Applies a derivation entrywise.
    pub fn map(&self, f: impl Fn(&Jet) -> Jet) -> JMat {
        JMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(f).collect() }
    }

    pub fn values(&self) -> crate::linalg::Mat {
        crate::linalg::Mat::from_fn(self.rows, self.cols, |r, c| self.get(r, c).value())
    }
}
