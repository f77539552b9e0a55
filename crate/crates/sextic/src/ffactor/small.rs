//! Allocation-free factor-degree patterns mod p for polynomials of degree at most 8 with
//! machine-integer coefficients; the hot loop of the census.

use crate::partition::{DegreePattern, Partition};

const CAP: usize = 17;

// p < 2^32, so products fit a u64
#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn invm(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

#[derive(Clone, Copy)]
struct Poly {
    c: [u64; CAP],
    /// Degree + 1; zero for the zero polynomial.
    len: usize,
}

impl Poly {
    const ZERO: Poly = Poly { c: [0; CAP], len: 0 };

    fn trim(mut self) -> Self {
        while self.len > 0 && self.c[self.len - 1] == 0 {
            self.len -= 1;
        }
        self
    }

    fn x() -> Self {
        let mut v = Self::ZERO;
        v.c[1] = 1;
        v.len = 2;
        v
    }
}

fn rem(mut a: Poly, m: &Poly, p: u64) -> Poly {
    let lead = m.c[m.len - 1];
    let inv = if lead == 1 { 1 } else { invm(lead, p) };
    if p < 1 << 16 {
        // coefficients stay unreduced below 2^40 until the end; only the leading one is reduced
        while a.len >= m.len {
            let top = a.c[a.len - 1] % p;
            let shift = a.len - m.len;
            if top != 0 {
                let q = mulm(top, inv, p);
                for i in 0..m.len - 1 {
                    a.c[shift + i] += (p - m.c[i]) * q;
                }
            }
            a.c[a.len - 1] = 0;
            a.len -= 1;
        }
        for x in &mut a.c[..a.len] {
            *x %= p;
        }
        return a.trim();
    }
    while a.len >= m.len {
        let q = mulm(a.c[a.len - 1], inv, p);
        let shift = a.len - m.len;
        for i in 0..m.len {
            a.c[shift + i] = (a.c[shift + i] + p - mulm(q, m.c[i], p)) % p;
        }
        a = a.trim();
    }
    a
}

fn mulmod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.len == 0 || b.len == 0 {
        return Poly::ZERO;
    }
    let mut r = Poly::ZERO;
    r.len = a.len + b.len - 1;
    if p < 1 << 16 {
        // at most 9 products below 2^32 each; reduce once per coefficient
        for i in 0..a.len {
            for j in 0..b.len {
                r.c[i + j] += a.c[i] * b.c[j];
            }
        }
        return rem(r, m, p);
    } else {
        for i in 0..a.len {
            for j in 0..b.len {
                r.c[i + j] = (r.c[i + j] + mulm(a.c[i], b.c[j], p)) % p;
            }
        }
    }
    rem(r.trim(), m, p)
}

fn powmod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut r = Poly::ZERO;
    r.c[0] = 1;
    r.len = 1;
    let mut b = *base;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn gcd(mut a: Poly, mut b: Poly, p: u64) -> Poly {
    while b.len > 0 {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Quotient of f by a divisor g.
fn div(f: &Poly, g: &Poly, p: u64) -> Poly {
    let mut a = *f;
    let mut q = Poly::ZERO;
    let inv = invm(g.c[g.len - 1], p);
    q.len = f.len - g.len + 1;
    while a.len >= g.len {
        let t = mulm(a.c[a.len - 1], inv, p);
        let shift = a.len - g.len;
        q.c[shift] = t;
        for i in 0..g.len {
            a.c[shift + i] = (a.c[shift + i] + p - mulm(t, g.c[i], p)) % p;
        }
        a = a.trim();
    }
    q.trim()
}

/// Factor degrees of f mod p (ascending coefficients, degree 1..=8, p < 2^32), or None when
/// p divides the leading coefficient or f is not squarefree mod p.
pub fn degree_pattern_small(c: &[i64], p: u64) -> Option<DegreePattern> {
    let n = c.len().checked_sub(1).filter(|&n| (1..=8).contains(&n))?;
    debug_assert!(p < 1 << 32);
    let mut f = Poly::ZERO;
    for (i, &x) in c.iter().enumerate() {
        f.c[i] = x.rem_euclid(p as i64) as u64;
    }
    f.len = n + 1;
    if f.c[n] == 0 {
        return None;
    }
    let inv = invm(f.c[n], p);
    for x in &mut f.c[..=n] {
        *x = mulm(*x, inv, p);
    }
    let mut d = Poly::ZERO;
    for i in 1..=n {
        d.c[i - 1] = mulm(f.c[i], i as u64 % p, p);
    }
    d.len = n;
    let d = d.trim();
    if d.len == 0 || gcd(f, d, p).len > 1 {
        return None;
    }
    let mut parts = Vec::with_capacity(n);
    let x = Poly::x();
    let mut h = x;
    let mut deg = 0;
    while f.len > 1 {
        deg += 1;
        if 2 * deg > f.len - 1 {
            parts.push(f.len - 1);
            break;
        }
        h = powmod(&h, p, &f, p);
        let mut hx = h;
        hx.c[1] = (hx.c[1] + p - 1) % p;
        hx.len = hx.len.max(2);
        let g = gcd(f, hx.trim(), p);
        if g.len > 1 {
            for _ in 0..(g.len - 1) / deg {
                parts.push(deg);
            }
            f = div(&f, &g, p);
            h = rem(h, &f, p);
        }
    }
    Some(Partition::from_usizes(parts))
}
