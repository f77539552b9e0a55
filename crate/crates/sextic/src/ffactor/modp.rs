//! Polynomials over F_p for word-sized primes (p < 2^32).
//!
//! Coefficient vectors are ascending and trimmed; the empty vector is zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

pub type Fp = Vec<u64>;

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'w: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'w;
            }
        }
        return false;
    }
    true
}

const SIEVE_LIMIT: u64 = 1 << 16;

static SMALL_PRIMES: once_cell::sync::Lazy<Vec<u64>> = once_cell::sync::Lazy::new(|| {
    let n = SIEVE_LIMIT as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            for j in (i * i..n).step_by(i) {
                composite[j] = true;
            }
        }
    }
    out
});

/// Primes in increasing order starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    SMALL_PRIMES.iter().copied().chain((SIEVE_LIMIT..).filter(|&n| is_prime(n)))
}

pub fn primes_upto(b: u64) -> Vec<u64> {
    primes().take_while(|&p| p <= b).collect()
}

pub fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &[u64]) -> isize {
    a.len() as isize - 1
}

pub fn reduce_big(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

pub fn from_ints(c: &[BigInt], p: u64) -> Fp {
    trim(c.iter().map(|x| reduce_big(x, p)).collect())
}

pub fn from_i64(c: &[i64], p: u64) -> Fp {
    trim(c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let s = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                if x >= y {
                    x - y
                } else {
                    x + p - y
                }
            })
            .collect(),
    )
}

pub fn scale(a: &[u64], k: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| mulm(x, k, p)).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] += x as u128 * y as u128;
            if v[i + j] >= pp * pp * 8 {
                v[i + j] %= pp;
            }
        }
    }
    trim(v.into_iter().map(|x| (x % pp) as u64).collect())
}

/// Quotient and remainder; b nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let inv = invm(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + db], inv, p);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (i, &bc) in b.iter().enumerate() {
            let t = mulm(c, bc, p);
            let x = r[i + k];
            r[i + k] = if x >= t { x - t } else { x + p - t };
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Fp {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, invm(l, p), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Extended gcd: (g, s, t) with s a + t b = g monic.
pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let l = *r0.last().unwrap_or(&1);
    let li = invm(l, p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

pub fn derivative(a: &[u64], p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, i as u64 % p, p))
            .collect(),
    )
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Fp {
    rem(&mul(a, b, p), m, p)
}

/// base^e mod m for a big exponent given as little-endian u64 limbs.
pub fn powmod(base: &[u64], e: u64, m: &[u64], p: u64) -> Fp {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, m, p);
        }
    }
    rem(&r, m, p)
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
}

/// Squarefree decomposition of a monic polynomial: (factor, multiplicity), factors monic.
pub fn squarefree_decomposition(f: &[u64], p: u64) -> Vec<(Fp, usize)> {
    let f = monic(f, p);
    if f.len() <= 1 {
        return vec![];
    }
    let df = derivative(&f, p);
    if df.is_empty() {
        // f is a p-th power
        let root: Fp = f.iter().step_by(p as usize).copied().collect();
        return squarefree_decomposition(&root, p)
            .into_iter()
            .map(|(g, m)| (g, m * p as usize))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = gcd(&f, &df, p);
    let mut w = divrem(&f, &c, p).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        let root: Fp = c.iter().step_by(p as usize).copied().collect();
        for (g, m) in squarefree_decomposition(&root, p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(usize, Fp)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            out.push((f.len() - 1, f));
            break;
        }
        h = powmod(&h, p, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((d, g));
        }
    }
    out
}

/// Split a product of distinct monic irreducibles of degree d (Cantor-Zassenhaus).
pub fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let g = gcd(&a, f, p);
        let cand = if g.len() > 1 {
            g
        } else {
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut acc = a.clone();
                let mut c = a.clone();
                for _ in 1..d {
                    c = mulmod(&c, &c, f, p);
                    acc = add(&acc, &c, p);
                }
                acc
            } else {
                // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
                let mut c = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    c = powmod(&c, p, f, p);
                    acc = mulmod(&acc, &c, f, p);
                }
                let e = powmod(&acc, (p - 1) / 2, f, p);
                sub(&e, &[1], p)
            };
            gcd(&b, f, p)
        };
        if cand.len() > 1 && cand.len() < f.len() {
            let other = divrem(f, &cand, p).0;
            let mut out = equal_degree(&cand, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// Degrees of the irreducible factors of a squarefree monic polynomial.
pub fn squarefree_pattern(f: &[u64], p: u64) -> Vec<usize> {
    let mut v = Vec::new();
    for (d, g) in distinct_degree(f, p) {
        for _ in 0..(g.len() - 1) / d {
            v.push(d);
        }
    }
    v
}

/// Distinct roots in F_p of a squarefree polynomial, by splitting gcd(f, x^p - x).
pub fn roots<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<u64> {
    let f = monic(f, p);
    if f.len() <= 1 {
        return vec![];
    }
    let xp = powmod(&[0, 1], p, &f, p);
    let lin = gcd(&sub(&xp, &[0, 1], p), &f, p);
    if lin.len() <= 1 {
        return vec![];
    }
    let mut out: Vec<u64> = equal_degree(&lin, 1, p, rng)
        .into_iter()
        .map(|g| (p - g[0]) % p)
        .collect();
    out.sort_unstable();
    out
}

pub fn is_zero_mod(c: &[BigInt], p: u64) -> bool {
    c.iter().all(|x| (x % BigInt::from(p)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn arithmetic() {
        let p = 7;
        let a = vec![1, 2, 3];
        let b = vec![5, 1];
        let (q, r) = divrem(&mul(&a, &b, p), &b, p);
        assert_eq!(q, a);
        assert!(r.is_empty());
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), g);
    }

    #[test]
    fn primes_iter() {
        assert_eq!(primes_upto(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        let around: Vec<u64> = primes().skip_while(|&p| p < SIEVE_LIMIT - 100).take(12).collect();
        let direct: Vec<u64> = (SIEVE_LIMIT - 100..).filter(|&n| is_prime(n)).take(12).collect();
        assert_eq!(around, direct);
        assert_eq!(primes_upto(SIEVE_LIMIT).len(), 6542);
        assert!(is_prime(4294967291));
    }

    #[test]
    fn sqf_decomposition() {
        // (x+1)^2 (x+2)^3 over F_5, and x^5 - x^... p-th powers over F_3
        let p = 5;
        let f = mul(&mul(&[1, 1], &[1, 1], p), &mul(&[2, 1], &mul(&[2, 1], &[2, 1], p), p), p);
        let d = squarefree_decomposition(&f, p);
        assert_eq!(d, vec![(vec![1, 1], 2), (vec![2, 1], 3)]);
        let p = 3;
        let g = mul(&mul(&[1, 1], &[1, 1], p), &[1, 1], p); // (x+1)^3
        assert_eq!(squarefree_decomposition(&g, p), vec![(vec![1, 1], 3)]);
    }

    #[test]
    fn ddf_edf() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2u64, 3, 5, 13] {
            // x^8 - x over F_p is a product of all monic irreducibles of degree 1..8 dividing...
            let f = from_i64(&[0, -1, 0, 0, 0, 0, 0, 0, 1], p);
            let sq = squarefree_decomposition(&f, p);
            for (g, _) in sq {
                for (d, h) in distinct_degree(&g, p) {
                    let parts = equal_degree(&h, d, p, &mut rng);
                    let prod = parts.iter().fold(vec![1u64], |acc, x| mul(&acc, x, p));
                    assert_eq!(prod, h);
                    assert!(parts.iter().all(|x| x.len() - 1 == d));
                }
            }
        }
    }

    #[test]
    fn roots_mod_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = from_i64(&[-6, 11, -6, 1], 101); // (x-1)(x-2)(x-3)
        assert_eq!(roots(&f, 101, &mut rng), vec![1, 2, 3]);
    }
}
