//! Factorization over F_p and over Z, degree patterns and irreducibility.

pub mod hensel;
pub mod modp;
pub mod small;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{DegreePattern, Partition};
use crate::polycore::IntPoly;
use modp::Fp;

pub const DEFAULT_SEED: u64 = 0x5e71c;

/// Complete factorization of f mod p: f = lead * prod factor^mult.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPFactorization {
    pub p: u64,
    pub lead: u64,
    pub factors: Vec<(Fp, usize)>,
}

impl ModPFactorization {
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat(g.len() - 1).take(*m))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Multiply the factorization back out.
    pub fn product(&self) -> Fp {
        let p = self.p;
        let mut acc = vec![self.lead % p];
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = modp::mul(&acc, g, p);
            }
        }
        acc
    }
}

pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<ModPFactorization> {
    factor_mod_p_seeded(f, p, DEFAULT_SEED)
}

/// Squarefree decomposition, distinct-degree split, then seeded Cantor-Zassenhaus.
pub fn factor_mod_p_seeded(f: &IntPoly, p: u64, seed: u64) -> Result<ModPFactorization> {
    if !modp::is_prime(p) || p >= 1 << 32 {
        return Err(Error::Contract(format!("{} is not a supported prime", p)));
    }
    let fp = modp::from_ints(f.coeffs(), p);
    if fp.is_empty() {
        return Err(Error::Degenerate(format!("polynomial vanishes mod {}", p)));
    }
    let lead = *fp.last().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut factors = Vec::new();
    for (g, m) in modp::squarefree_decomposition(&fp, p) {
        for (d, h) in modp::distinct_degree(&g, p) {
            for q in modp::equal_degree(&h, d, p, &mut rng) {
                factors.push((q, m));
            }
        }
    }
    factors.sort();
    Ok(ModPFactorization { p, lead, factors })
}

/// Mod-p factor degrees of f; the prime must not divide the discriminant or the leading coefficient.
pub fn degree_pattern(f: &IntPoly, p: u64) -> Result<DegreePattern> {
    let n = f
        .degree()
        .ok_or_else(|| Error::Degenerate("degree pattern of zero".into()))?;
    let fp = modp::from_ints(f.coeffs(), p);
    if fp.len() != n + 1 {
        return Err(Error::RamifiedPrime(p));
    }
    let fm = modp::monic(&fp, p);
    let g = modp::gcd(&fm, &modp::derivative(&fm, p), p);
    if g.len() > 1 {
        return Err(Error::RamifiedPrime(p));
    }
    let pat = modp::squarefree_pattern(&fm, p);
    if pat.iter().sum::<usize>() != n {
        return Err(Error::Internal(format!("pattern mod {} does not sum to {}", p, n)));
    }
    Ok(Partition::from_usizes(pat))
}

/// Integer factorization: f = content * prod factor^mult, factors primitive with positive lead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZFactorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl ZFactorization {
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m as u32);
        }
        acc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat(g.degree().unwrap()).take(*m))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Yun's squarefree decomposition over Z of a primitive polynomial with positive lead.
fn squarefree_z(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let df = f.derivative();
    let a0 = f.gcd(&df);
    if a0.deg_i() <= 0 {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let mut c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.deg_i() > 0 {
            out.push((a.primitive_part(), i));
        }
        b = b.div_exact(&a).expect("Yun step divides b");
        if b.deg_i() <= 0 {
            break;
        }
        c = d.div_exact(&a).expect("Yun step divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Pick a prime p not dividing the lead, with f squarefree mod p; among the first
/// `tries` such primes take one giving the fewest factors.
pub fn choose_prime(f: &IntPoly, tries: usize) -> (u64, Vec<Fp>) {
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut seen = 0;
    let n = f.degree().unwrap();
    for p in modp::primes() {
        let fp = modp::from_ints(f.coeffs(), p);
        if fp.len() != n + 1 {
            continue;
        }
        let fm = modp::monic(&fp, p);
        if modp::gcd(&fm, &modp::derivative(&fm, p), p).len() > 1 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ p);
        let mut fs = Vec::new();
        for (d, h) in modp::distinct_degree(&fm, p) {
            fs.extend(modp::equal_degree(&h, d, p, &mut rng));
        }
        fs.sort();
        if best.as_ref().map_or(true, |b| fs.len() < b.1.len()) {
            best = Some((p, fs));
        }
        seen += 1;
        if seen >= tries || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best.unwrap()
}

/// Mignotte-type bound on the coefficients of any factor of f.
fn factor_coeff_bound(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap();
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    // ||h||_inf <= C(n, n/2) ||f||_2 <= 2^n * (isqrt(norm2) + 1)
    let sq = norm2.sqrt() + BigInt::one();
    (BigInt::one() << n) * sq
}

/// Factor a primitive squarefree polynomial with positive lead into irreducibles.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree().unwrap();
    if n <= 1 {
        return vec![f.clone()];
    }
    let (p, modf) = choose_prime(f, 8);
    if modf.len() == 1 {
        return vec![f.clone()];
    }
    let lc = f.lead();
    let bound = factor_coeff_bound(f) * &lc.abs() * 2u32;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let lifted = hensel::lift(f, &modf, p, k);
    recombine(f, lifted, &pk)
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2u32 > *m {
        r - m
    } else {
        r
    }
}

/// Zassenhaus subset recombination of Hensel-lifted monic factors modulo pk.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut found = None;
        for subset in itertools::Itertools::combinations(0..r, s) {
            let lc = g.lead();
            // quick constant-term test
            let mut c0 = lc.clone();
            for &i in &subset {
                c0 = (c0 * lifted[i].coeff(0)).mod_floor(pk);
            }
            let c0 = symmetric_mod(&c0, pk);
            if c0.is_zero() {
                if !g.coeff(0).is_zero() {
                    continue;
                }
            } else if !(g.coeff(0) * &lc).is_multiple_of(&c0) {
                continue;
            }
            let mut cand = IntPoly::constant(lc.clone());
            for &i in &subset {
                cand = &cand * &lifted[i];
                cand = IntPoly::new(cand.coeffs().iter().map(|c| c.mod_floor(pk)).collect());
            }
            let cand = IntPoly::new(cand.coeffs().iter().map(|c| symmetric_mod(c, pk)).collect())
                .primitive_part();
            if let Some(q) = g.div_exact(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                g = q.primitive_part();
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h)
                    .collect();
            }
            None => s += 1,
        }
    }
    if g.deg_i() > 0 {
        out.push(g);
    }
    out
}

/// Complete factorization over Z.
pub fn factor_over_z(f: &IntPoly) -> Result<ZFactorization> {
    if f.is_zero() {
        return Err(Error::Degenerate("factorization of the zero polynomial".into()));
    }
    let mut content = f.content();
    if f.lead().is_negative() {
        content = -content;
    }
    let prim = f.div_scalar_exact(&content);
    let mut factors = Vec::new();
    if prim.deg_i() > 0 {
        // pull out powers of x first
        let zeros = prim.coeffs().iter().take_while(|c| c.is_zero()).count();
        let rest = IntPoly::new(prim.coeffs()[zeros..].to_vec());
        if zeros > 0 {
            factors.push((IntPoly::from_i64(&[0, 1]), zeros));
        }
        if rest.deg_i() > 0 {
            for (g, m) in squarefree_z(&rest) {
                for h in factor_squarefree(&g) {
                    factors.push((h, m));
                }
            }
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(ZFactorization { content, factors })
}

/// Irreducibility over Q with trivial content. Fast paths: a prime with an irreducible
/// reduction, or degree-set intersection over several primes, before full factorization.
pub fn is_irreducible(f: &IntPoly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if !f.content().is_one() {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f.coeff(0).is_zero() {
        return false;
    }
    let full = (1u64 << n) | 1;
    let mut sums = u64::MAX;
    let mut good = 0;
    for p in modp::primes().take(40) {
        if let Ok(pat) = degree_pattern(f, p) {
            sums &= pat.subset_sums();
            good += 1;
            if sums & ((1u64 << (n + 1)) - 1) == full {
                return true;
            }
            if good >= 12 {
                break;
            }
        }
    }
    let fz = factor_over_z(f).expect("nonzero");
    fz.factors.len() == 1 && fz.factors[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn mod_p_examples() {
        let f = factor_mod_p(&p(&[1, 0, 1]), 2).unwrap();
        assert_eq!(f.factors, vec![(vec![1, 1], 2)]);
        let f = factor_mod_p(&p(&[1, 1, 1, 1, 1, 1, 1]), 3).unwrap();
        assert_eq!(f.degrees(), vec![6]);
        let f = factor_mod_p(&p(&[1, 0, 0, -1, 0, 0, 1]), 5).unwrap();
        assert_eq!(f.degrees().iter().sum::<usize>(), 6);
        assert!(factor_mod_p(&p(&[3, 3]), 3).is_err());
    }

    #[test]
    fn pattern_examples() {
        let cyc = p(&[1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(degree_pattern(&cyc, 3).unwrap().to_string(), "(6)");
        assert_eq!(degree_pattern(&cyc, 2).unwrap().to_string(), "(3,3)");
        assert_eq!(degree_pattern(&p(&[1, 0, 1]), 2), Err(Error::RamifiedPrime(2)));
        assert_eq!(degree_pattern(&cyc, 7), Err(Error::RamifiedPrime(7)));
    }

    #[test]
    fn z_examples() {
        let f = factor_over_z(&p(&[-1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.degrees(), vec![2, 2, 1, 1]);
        assert_eq!(f.product(), p(&[-1, 0, 0, 0, 0, 0, 1]));
        let f = factor_over_z(&p(&[1, 0, 0, -1, 0, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        let a = p(&[1, 0, 1]);
        let b = p(&[2, 2, 0, 0, 1]);
        let f = factor_over_z(&(&a * &b)).unwrap();
        assert_eq!(f.factors, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn z_with_content_and_powers() {
        let a = p(&[1, 2]);
        let b = p(&[-3, 0, 1]);
        let f = (&(&a * &a) * &b).scale(&BigInt::from(-6));
        let f = &f * &p(&[0, 0, 1]);
        let z = factor_over_z(&f).unwrap();
        assert_eq!(z.product(), f);
        assert_eq!(z.content, BigInt::from(-6));
        assert_eq!(z.degrees(), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but reducible mod every prime
        let f = p(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f));
        let g = &f * &p(&[1, 0, -10, 0, 1]).shift(&BigInt::from(1));
        let z = factor_over_z(&g).unwrap();
        assert_eq!(z.degrees(), vec![4, 4]);
    }

    #[test]
    fn irreducible_examples() {
        assert!(is_irreducible(&p(&[1, 1, 1, 1, 1, 1, 1])));
        assert!(!is_irreducible(&p(&[-1, 0, 0, 0, 0, 0, 1])));
        assert!(is_irreducible(&p(&[1, 0, 5, 0, 6, 0, 1])));
        assert!(!is_irreducible(&p(&[2, 0, 2])));
    }
}
