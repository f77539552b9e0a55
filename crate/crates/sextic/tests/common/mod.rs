#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use sextic::IntPoly;

/// The twenty cyclic sextics of height at most 6, ascending coefficients.
pub const CYCLIC_SEXTICS: [[i64; 7]; 20] = [
    [1, 0, 0, -1, 0, 0, 1],
    [1, 0, 0, 1, 0, 0, 1],
    [1, -1, 1, -1, 1, -1, 1],
    [1, 1, 1, 1, 1, 1, 1],
    [1, 1, 3, 0, 5, 2, 1],
    [1, -1, 3, 0, 5, -2, 1],
    [1, 2, 5, 0, 3, 1, 1],
    [1, -2, 5, 0, 3, -1, 1],
    [1, -3, 2, 1, 4, 2, 1],
    [1, 3, 2, -1, 4, -2, 1],
    [1, -2, 4, -1, 2, 3, 1],
    [1, 2, 4, 1, 2, -3, 1],
    [1, 0, 5, 0, 6, 0, 1],
    [1, 0, 6, 0, 5, 0, 1],
    [1, -3, -6, 4, 5, -1, -1],
    [1, 3, -6, -4, 5, 1, -1],
    [1, -1, -5, 4, 6, -3, -1],
    [1, 1, -5, -4, 6, 3, -1],
    [1, -3, 6, -6, 0, 0, 3],
    [1, 3, 6, 6, 0, 0, 3],
];

/// Row blocks sharing one absolute-invariant triple.
pub const BLOCKS: [&[usize]; 7] = [&[0, 1], &[2, 3], &[4, 5, 6, 7], &[8, 9, 10, 11], &[12, 13], &[14, 15, 16, 17], &[18, 19]];

/// Coefficients of p(x + k).
pub fn taylor_shift(p: &[BigInt], k: &BigInt) -> Vec<BigInt> {
    let mut c = p.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * k;
            c[j] += t;
        }
    }
    c
}

fn variations(c: &[BigInt]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Roots in the open interval (0, 1) of a squarefree polynomial, by Descartes' rule and
/// interval bisection.
fn roots_unit(q: &[BigInt]) -> usize {
    let n = q.len() - 1;
    // (x + 1)^n q(1 / (x + 1))
    let mut rev: Vec<BigInt> = q.iter().rev().cloned().collect();
    rev = taylor_shift(&rev, &BigInt::one());
    match variations(&rev) {
        0 => 0,
        1 => 1,
        _ => {
            // 2^n q(x / 2) covers (0, 1/2); its shift by 1 covers (1/2, 1)
            let left: Vec<BigInt> = q.iter().enumerate().map(|(i, c)| c << (n - i)).collect();
            let right = taylor_shift(&left, &BigInt::one());
            let mid = usize::from(right[0].is_zero());
            roots_unit(&left) + mid + roots_unit(&right)
        }
    }
}

/// Distinct real roots: exact evaluation at every integer of [-B, B] plus Descartes
/// bisection inside each unit cell.
pub fn brute_force_real_roots(f: &IntPoly) -> usize {
    let g = f.div_exact(&f.gcd(&f.derivative())).expect("gcd divides f");
    let c = g.coeffs();
    let lead = c.last().unwrap().abs();
    let b: BigInt = c.iter().map(|x| x.abs()).max().unwrap() / &lead + 2;
    let mut count = 0;
    let mut k = -b.clone();
    while k < b {
        let shifted = taylor_shift(c, &k);
        if shifted[0].is_zero() {
            count += 1;
        }
        count += roots_unit(&shifted);
        k += 1;
    }
    count
}
