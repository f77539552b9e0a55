//! Linear Hensel lifting of a mod-p factorization to p^k.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::modp::{self, Fp};
use crate::polycore::IntPoly;

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn to_int(a: &[u64]) -> IntPoly {
    IntPoly::new(a.iter().map(|&x| BigInt::from(x)).collect())
}

/// Inverse of a modulo m (gcd assumed 1).
pub fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lift monic factors mod p of f (lead coprime to p) to monic factors mod p^k
/// whose product is lc(f)^-1 f mod p^k.
pub fn lift(f: &IntPoly, factors: &[Fp], p: u64, k: u32) -> Vec<IntPoly> {
    let m = num_traits::pow(BigInt::from(p), k as usize);
    let inv = modinv(&f.lead(), &m);
    let fm = reduce(&f.scale(&inv), &m);
    lift_monic(&fm, factors, p, k, &m)
}

fn lift_monic(f: &IntPoly, factors: &[Fp], p: u64, k: u32, m: &BigInt) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![reduce(f, m)];
    }
    let half = factors.len() / 2;
    let (a, b) = factors.split_at(half);
    let g0 = a.iter().fold(vec![1u64], |acc, x| modp::mul(&acc, x, p));
    let h0 = b.iter().fold(vec![1u64], |acc, x| modp::mul(&acc, x, p));
    let (g, h) = lift_two(f, &g0, &h0, p, k);
    let mut out = lift_monic(&g, a, p, k, m);
    out.extend(lift_monic(&h, b, p, k, m));
    out
}

/// f monic mod p^k with f = g0 h0 mod p, g0 and h0 monic and coprime.
pub fn lift_two(f: &IntPoly, g0: &[u64], h0: &[u64], p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = modp::xgcd(g0, h0, p);
    assert_eq!(one, vec![1], "Hensel factors must be coprime mod p");
    let pb = BigInt::from(p);
    let mut g = to_int(g0);
    let mut h = to_int(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let e = reduce(&(f - &(&g * &h)), &next);
        debug_assert!(e.coeffs().iter().all(|c| c.is_multiple_of(&pj)));
        let ep: Fp = modp::trim(
            e.coeffs()
                .iter()
                .map(|c| (c / &pj).mod_floor(&pb).to_u64().unwrap())
                .collect(),
        );
        if !ep.is_empty() {
            let dg = modp::rem(&modp::mul(&ep, &t, p), g0, p);
            let dh = modp::rem(&modp::mul(&ep, &s, p), h0, p);
            g = &g + &to_int(&dg).scale(&pj);
            h = &h + &to_int(&dh).scale(&pj);
        }
        pj = next;
    }
    (reduce(&g, &pj), reduce(&h, &pj))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_reconstructs_each_level() {
        // (x^2+1)(x^4+2x+2) mod 5 lifted to 5^6
        let a = IntPoly::from_i64(&[1, 0, 1]);
        let b = IntPoly::from_i64(&[2, 2, 0, 0, 1]);
        let f = &a * &b;
        let p = 5;
        let ga = modp::from_ints(a.coeffs(), p);
        let gb = modp::from_ints(b.coeffs(), p);
        for k in 1..7 {
            let (g, h) = lift_two(&f, &ga, &gb, p, k);
            let m = num_traits::pow(BigInt::from(p), k as usize);
            assert_eq!(reduce(&(&g * &h), &m), reduce(&f, &m));
            // the true factors are recovered exactly once p^k exceeds the coefficients
            if k >= 2 {
                assert_eq!(g, reduce(&a, &m));
                assert_eq!(h, reduce(&b, &m));
            }
        }
    }
}
