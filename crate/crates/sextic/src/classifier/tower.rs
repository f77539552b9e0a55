//! Arithmetic in a triangular tower Q[x_0, ..., x_{L-1}] / (T_0, ..., T_{L-1}), where T_i is
//! monic in x_i with coefficients in the previous level.
//!
//! An element of level L is a dense vector of length D_L = d_0 ... d_{L-1} indexed in mixed
//! radix with x_0 least significant, so lower-level elements embed by zero padding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ffactor::modp;

pub type Q = BigRational;
pub type Elem = Vec<Q>;

#[derive(Clone, Debug, Default)]
pub struct Tower {
    degs: Vec<usize>,
    /// mods[i][k] is the coefficient of x_i^k in T_i (k < d_i), an element of level i.
    mods: Vec<Vec<Elem>>,
}

fn add_into(acc: &mut [Q], b: &[Q]) {
    for (a, x) in acc.iter_mut().zip(b) {
        if !x.is_zero() {
            *a += x;
        }
    }
}

fn sub_into(acc: &mut [Q], b: &[Q]) {
    for (a, x) in acc.iter_mut().zip(b) {
        if !x.is_zero() {
            *a -= x;
        }
    }
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

impl Tower {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn levels(&self) -> usize {
        self.degs.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degs
    }

    /// D_L, the Q-dimension of level L.
    pub fn dim(&self, level: usize) -> usize {
        self.degs[..level].iter().product()
    }

    pub fn top(&self) -> usize {
        self.degs.len()
    }

    /// Adjoin a root of the monic polynomial with the given coefficients (degree d, the leading
    /// 1 omitted), each an element of the current top level. Empty coefficient vectors
    /// record only the degree, for towers that are never multiplied in.
    pub fn push(&mut self, lower: Vec<Elem>) {
        let d = self.dim(self.top());
        assert!(lower.iter().all(|c| c.is_empty() || c.len() == d));
        self.degs.push(lower.len());
        self.mods.push(lower);
    }

    pub fn modulus(&self, level: usize) -> &[Elem] {
        &self.mods[level]
    }

    pub fn zero(&self, level: usize) -> Elem {
        vec![Q::zero(); self.dim(level)]
    }

    pub fn constant(&self, level: usize, c: Q) -> Elem {
        let mut v = self.zero(level);
        v[0] = c;
        v
    }

    /// The generator x_i viewed at `level` > i.
    pub fn generator(&self, i: usize, level: usize) -> Elem {
        let mut v = self.zero(level);
        v[self.dim(i)] = Q::one();
        v
    }

    pub fn embed(&self, a: &[Q], level: usize) -> Elem {
        let mut v = a.to_vec();
        v.resize(self.dim(level), Q::zero());
        v
    }

    pub fn add(&self, a: &[Q], b: &[Q]) -> Elem {
        let mut v = a.to_vec();
        add_into(&mut v, b);
        v
    }

    pub fn sub(&self, a: &[Q], b: &[Q]) -> Elem {
        let mut v = a.to_vec();
        sub_into(&mut v, b);
        v
    }

    pub fn mul(&self, level: usize, a: &[Q], b: &[Q]) -> Elem {
        if level == 0 {
            return vec![&a[0] * &b[0]];
        }
        let d = self.degs[level - 1];
        let w = self.dim(level - 1);
        let blocks_a: Vec<&[Q]> = a.chunks(w).collect();
        let blocks_b: Vec<&[Q]> = b.chunks(w).collect();
        let mut prod: Vec<Elem> = vec![vec![Q::zero(); w]; 2 * d - 1];
        for (i, x) in blocks_a.iter().enumerate() {
            if is_zero(x) {
                continue;
            }
            for (k, y) in blocks_b.iter().enumerate() {
                if is_zero(y) {
                    continue;
                }
                let p = self.mul(level - 1, x, y);
                add_into(&mut prod[i + k], &p);
            }
        }
        // x^m = -sum t_i x^(m-d+i)
        for m in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[m], vec![Q::zero(); w]);
            if is_zero(&c) {
                continue;
            }
            for (i, t) in self.mods[level - 1].iter().enumerate() {
                if is_zero(t) {
                    continue;
                }
                let p = self.mul(level - 1, &c, t);
                sub_into(&mut prod[m - d + i], &p);
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    /// Evaluate an integer polynomial at an element of `level` (Horner).
    pub fn eval_int_poly(&self, level: usize, coeffs: &[BigInt], x: &[Q]) -> Elem {
        let mut acc = self.zero(level);
        for c in coeffs.iter().rev() {
            acc = self.mul(level, &acc, x);
            acc[0] += Q::from_integer(c.clone());
        }
        acc
    }

    /// Remainder of an integer polynomial (ascending) modulo a monic polynomial over `level`
    /// given by its lower coefficients; returns the remainder coefficients.
    pub fn rem_int_poly(&self, level: usize, coeffs: &[BigInt], modulus: &[Elem]) -> Vec<Elem> {
        let d = modulus.len();
        let mut r: Vec<Elem> = coeffs.iter().map(|c| self.constant(level, Q::from_integer(c.clone()))).collect();
        while r.len() > d {
            let top = r.pop().unwrap();
            let k = r.len() - d;
            if is_zero(&top) {
                continue;
            }
            for (i, t) in modulus.iter().enumerate() {
                let p = self.mul(level, &top, t);
                sub_into(&mut r[k + i], &p);
            }
        }
        r
    }

    /// Image of an element under x_i -> beta_i modulo p; None if a denominator vanishes.
    pub fn reduce(&self, level: usize, a: &[Q], beta: &[u64], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (idx, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let den = modp::reduce_big(c.denom(), p);
            if den == 0 {
                return None;
            }
            let mut v = modp::mulm(modp::reduce_big(c.numer(), p), modp::invm(den, p), p);
            let mut rest = idx;
            for i in 0..level {
                let e = rest % self.degs[i];
                rest /= self.degs[i];
                if e > 0 {
                    v = modp::mulm(v, modp::powm(beta[i], e as u64, p), p);
                }
            }
            acc = (acc + v) % p;
        }
        Some(acc)
    }
}
