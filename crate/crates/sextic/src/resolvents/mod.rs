//! Resolvent polynomials R_G(F, f) = prod over cosets sigma H of (x - (sigma . F)(alpha)).
//!
//! Roots of f are refined numerically with certified inclusion radii, the resolvent is
//! expanded in fixed point with a propagated error bound, and every coefficient is rounded
//! only when both the bound and the distance to the nearest integer are below 1/4.

pub mod multivar;
pub mod numeric;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffactor::{self, modp};
use crate::groups::{self, Permutation, TransitiveGroup};
use crate::partition::{DegreePattern, Partition};
use crate::polycore::IntPoly;

pub use multivar::{act_exponent, Exponent, InvariantPoly};
use numeric::{log_add, Cx};

/// Default precision ceiling in bits.
pub const MAX_PRECISION: u32 = 1 << 16;

/// H = Stab_G(F) with left coset representatives of G/H.
#[derive(Clone, Debug)]
pub struct Stabilizer {
    pub subgroup: Vec<Permutation>,
    pub cosets: Vec<Permutation>,
    pub index: usize,
}

/// Stabilizer of F in the group generated by `elements` (which must be closed).
pub fn stabilizer_of(f: &InvariantPoly, elements: &[Permutation]) -> Stabilizer {
    let mut seen: HashMap<InvariantPoly, ()> = HashMap::new();
    let mut subgroup = Vec::new();
    let mut cosets = Vec::new();
    for s in elements {
        let img = f.act(s);
        if img == *f {
            subgroup.push(*s);
        }
        if seen.insert(img, ()).is_none() {
            cosets.push(*s);
        }
    }
    let index = cosets.len();
    Stabilizer { subgroup, cosets, index }
}

pub fn stabilizer(f: &InvariantPoly, g: &TransitiveGroup) -> Stabilizer {
    stabilizer_of(f, &g.elements)
}

/// Sorted orbit lengths of `gal` acting by left multiplication on the cosets G/Stab_G(F).
pub fn orbit_lengths(f: &InvariantPoly, ambient: &[Permutation], gal: &[Permutation]) -> Partition {
    let st = stabilizer_of(f, ambient);
    let images: Vec<InvariantPoly> = st.cosets.iter().map(|s| f.act(s)).collect();
    let pos: HashMap<&InvariantPoly, usize> = images.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut orbit_of = vec![usize::MAX; images.len()];
    let mut lengths = Vec::new();
    for start in 0..images.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = lengths.len();
        let mut stack = vec![start];
        orbit_of[start] = id;
        let mut len = 0;
        while let Some(i) = stack.pop() {
            len += 1;
            for g in gal {
                let j = match pos.get(&images[i].act(g)) {
                    Some(&j) => j,
                    None => panic!("group does not preserve the coset space"),
                };
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    stack.push(j);
                }
            }
        }
        lengths.push(len);
    }
    Partition::from_usizes(lengths)
}

/// The smallest monomial, by total degree then exponent vector, whose orbit sum under G
/// has stabilizer exactly G inside S6. Returns None if no such monomial has exponents <= 3.
pub fn orbit_sum_invariant(g: &TransitiveGroup) -> Option<InvariantPoly> {
    let s6 = groups::s6();
    let mut exps: Vec<Exponent> = Vec::new();
    for code in 1..4096u32 {
        let mut e = [0u8; 6];
        let mut c = code;
        for k in e.iter_mut() {
            *k = (c % 4) as u8;
            c /= 4;
        }
        exps.push(e);
    }
    exps.sort_by_key(|e| (e.iter().map(|&k| k as u32).sum::<u32>(), *e));
    exps.into_iter().find_map(|e| {
        let f = InvariantPoly::orbit_sum(e, &g.elements).ok()?;
        (stabilizer(&f, s6).subgroup.len() == g.order()).then_some(f)
    })
}

/// A named invariant used by the decision procedure.
#[derive(Clone, Debug)]
pub struct NamedInvariant {
    pub name: &'static str,
    pub poly: InvariantPoly,
    pub index: usize,
}

fn build_catalog() -> Vec<NamedInvariant> {
    let by = |l: &str| groups::by_label(l).expect("known label");
    let polys: Vec<(&'static str, InvariantPoly)> = vec![
        ("matching", InvariantPoly::parse("x1*x2 + x3*x4 + x5*x6").unwrap()),
        ("triple-split", InvariantPoly::parse("x1*x2*x3 + x4*x5*x6").unwrap()),
        ("pair-sum", InvariantPoly::parse("x1 + x2").unwrap()),
        ("pgl25-orbit", InvariantPoly::orbit_sum([0, 0, 1, 1, 2, 2], &by("g14").elements).unwrap()),
        ("2a4-orbit", InvariantPoly::orbit_sum([0, 0, 0, 0, 1, 2], &by("g6").elements).unwrap()),
    ];
    polys
        .into_iter()
        .map(|(name, poly)| {
            let index = stabilizer(&poly, groups::s6()).index;
            NamedInvariant { name, poly, index }
        })
        .collect()
}

static CATALOG: Lazy<Vec<NamedInvariant>> = Lazy::new(build_catalog);

/// Default invariants in the order the classifier applies them; all are taken over S6.
pub fn default_invariants() -> &'static [NamedInvariant] {
    &CATALOG
}

static PATTERNS: Lazy<Vec<Vec<Partition>>> = Lazy::new(|| {
    let s6 = &groups::s6().elements;
    CATALOG
        .iter()
        .map(|inv| groups::table().iter().map(|g| orbit_lengths(&inv.poly, s6, &g.elements)).collect())
        .collect()
});

/// Expected factor-degree pattern of the k-th default resolvent for a polynomial whose
/// Galois group is the group with the given 1-based index.
pub fn expected_pattern(k: usize, group_index: usize) -> &'static Partition {
    &PATTERNS[k][group_index - 1]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolventResult {
    pub resolvent: IntPoly,
    pub index: usize,
    pub squarefree: bool,
    /// Irreducible factor degrees over Q; present only when squarefree.
    pub factor_degrees: Option<DegreePattern>,
    /// Working precision in bits at which the coefficients were certified.
    pub precision: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct ResolventOptions {
    pub initial_precision: Option<u32>,
    pub max_precision: u32,
    pub factor: bool,
}

impl Default for ResolventOptions {
    fn default() -> Self {
        ResolventOptions { initial_precision: None, max_precision: MAX_PRECISION, factor: true }
    }
}

pub fn resolvent(f_inv: &InvariantPoly, g: &TransitiveGroup, f: &IntPoly) -> Result<ResolventResult> {
    resolvent_with(f_inv, &g.elements, f, &ResolventOptions::default())
}

/// R_G(F, f) for a monic integer polynomial f of degree 6. The labeling of roots is the
/// numeric one, so for G != S6 the caller must ensure Gal(f) is inside G for that labeling.
pub fn resolvent_with(
    f_inv: &InvariantPoly,
    ambient: &[Permutation],
    f: &IntPoly,
    opts: &ResolventOptions,
) -> Result<ResolventResult> {
    if f.degree() != Some(6) || !f.is_monic() {
        return Err(Error::Contract("resolvent needs a monic sextic".into()));
    }
    let st = stabilizer_of(f_inv, ambient);
    let m = st.index;
    let mut prec = opts.initial_precision.unwrap_or_else(|| initial_precision(f_inv, f, m));
    loop {
        if prec > opts.max_precision {
            return Err(Error::Precision(opts.max_precision));
        }
        match attempt(f_inv, &st.cosets, f, prec)? {
            Some(coeffs) => {
                let resolvent = IntPoly::new(coeffs);
                let squarefree = is_squarefree(&resolvent);
                let factor_degrees = if squarefree && opts.factor {
                    Some(Partition::from_usizes(ffactor::factor_over_z(&resolvent)?.degrees()))
                } else {
                    None
                };
                return Ok(ResolventResult { resolvent, index: m, squarefree, factor_degrees, precision: prec });
            }
            None => prec *= 2,
        }
    }
}

fn root_bound_log2(f: &IntPoly) -> f64 {
    // Cauchy bound 1 + max |a_i|
    let h = f.coeffs().iter().map(|c| numeric::log2_fixed(c, 0)).fold(0.0f64, f64::max);
    log_add(h, 0.0)
}

fn initial_precision(f_inv: &InvariantPoly, f: &IntPoly, m: usize) -> u32 {
    let b = root_bound_log2(f).min(8.0);
    let v = (f_inv.l1_norm() as f64).log2() + f_inv.total_degree() as f64 * (b + 0.5);
    let need = m as f64 * (v.max(0.0) + 1.0) + 64.0;
    (need.ceil() as u32).next_power_of_two().max(128)
}

/// One certified evaluation at `prec` bits; None means the precision was insufficient.
fn attempt(f_inv: &InvariantPoly, cosets: &[Permutation], f: &IntPoly, prec: u32) -> Result<Option<Vec<BigInt>>> {
    let roots = match numeric::certified_roots(f, prec) {
        Ok(r) => r,
        Err(Error::Precision(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let ctx = roots.ctx;
    let p = ctx.prec as f64;
    let eps = log_add(roots.log2_err, 1.0 - p);
    let b1 = log_add(roots.log2_bound, 0.0); // log2(B + 1)
    let maxe = f_inv.max_exponent() as usize;
    let pows: Vec<Vec<Cx>> = roots
        .roots
        .iter()
        .map(|z| {
            let mut v = vec![ctx.from_int(&BigInt::one())];
            for k in 1..=maxe {
                v.push(ctx.mul(&v[k - 1], z));
            }
            v
        })
        .collect();

    // value error: sum |c| d (eps + 2^(1-P)) (B+1)^d ; magnitude: sum |c| (B+1)^d
    let mut lv = f64::NEG_INFINITY;
    let mut ld = f64::NEG_INFINITY;
    for (e, c) in f_inv.terms() {
        let d: u32 = e.iter().map(|&k| k as u32).sum();
        let lc = (c.unsigned_abs() as f64).log2();
        lv = log_add(lv, lc + d as f64 * b1);
        ld = log_add(ld, lc + (d.max(1) as f64).log2() + eps + d as f64 * b1);
    }

    let values: Vec<Cx> = cosets
        .iter()
        .map(|s| {
            let mut acc = ctx.zero();
            for (e, c) in f_inv.terms() {
                let mut t = ctx.from_int(&BigInt::from(*c));
                for i in 0..6 {
                    if e[i] > 0 {
                        t = ctx.mul(&t, &pows[s.apply(i)][e[i] as usize]);
                    }
                }
                acc = ctx.add(&acc, &t);
            }
            acc
        })
        .collect();

    // prod (x - v_k), coefficients ascending
    let m = values.len();
    let mut poly: Vec<Cx> = vec![ctx.from_int(&BigInt::one())];
    for v in &values {
        let mut next = vec![ctx.zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] = ctx.add(&next[j + 1], c);
            next[j] = ctx.sub(&next[j], &ctx.mul(c, v));
        }
        poly = next;
    }
    // error <= m (delta + 2^(1-P)) (1 + V + delta)^m
    let lm = (m as f64).log2();
    let growth = m as f64 * log_add(log_add(lv, 0.0), ld);
    let lerr = lm + log_add(ld, 1.0 - p) + growth;
    if lerr >= -2.0 {
        return Ok(None);
    }
    let one = BigInt::one() << ctx.prec as usize;
    let half = BigInt::one() << (ctx.prec as usize - 1);
    let quarter = BigInt::one() << (ctx.prec as usize - 2);
    let mut out = Vec::with_capacity(m + 1);
    for c in &poly {
        let r = (&c.re + &half).div_floor(&one);
        let dist = (&c.re - &r * &one).abs();
        if dist >= quarter || c.im.abs() >= quarter {
            if lerr < -8.0 {
                return Err(Error::Contract(
                    "resolvent coefficients are not integral: Gal(f) is not contained in G for this labeling".into(),
                ));
            }
            return Ok(None);
        }
        out.push(r);
    }
    Ok(Some(out))
}

/// Exact squarefreeness: a prime with a squarefree reduction settles it, otherwise gcd(R, R').
pub fn is_squarefree(r: &IntPoly) -> bool {
    let n = match r.degree() {
        Some(n) => n,
        None => return false,
    };
    if n <= 1 {
        return true;
    }
    for p in modp::primes().skip(3).take(6) {
        if modp::reduce_big(&r.lead(), p) == 0 {
            continue;
        }
        let rp = modp::from_ints(r.coeffs(), p);
        let g = modp::gcd(&rp, &modp::derivative(&rp, p), p);
        if modp::deg(&g) == 0 {
            return true;
        }
    }
    r.gcd(&r.derivative()).deg_i() == 0
}

/// Sorted orbit lengths compared with the factor degrees of a squarefree resolvent.
pub fn orbit_length_check(r: &ResolventResult, ambient: &[Permutation], f_inv: &InvariantPoly, gal: &TransitiveGroup) -> Result<bool> {
    let degs = match (&r.factor_degrees, r.squarefree) {
        (Some(d), true) => d,
        _ => return Err(Error::Contract("orbit-length check needs a squarefree, factored resolvent".into())),
    };
    Ok(*degs == orbit_lengths(f_inv, ambient, &gal.elements))
}

/// Characteristic polynomial of multiplication by t(alpha) on Q[x]/(f), f monic.
pub fn tschirnhausen_with(f: &IntPoly, t: &IntPoly) -> Result<IntPoly> {
    let n = match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => n,
        _ => return Err(Error::Contract("Tschirnhausen transform needs a monic polynomial".into())),
    };
    let reduce = |g: &IntPoly| -> IntPoly {
        let mut c = g.coeffs().to_vec();
        while c.len() > n {
            let top = c.pop().unwrap();
            let k = c.len() - n;
            for (i, a) in f.coeffs()[..n].iter().enumerate() {
                c[k + i] -= &top * a;
            }
        }
        IntPoly::new(c)
    };
    // column j holds t(alpha) * alpha^j in the power basis
    let tr = reduce(t);
    let mut cols = Vec::with_capacity(n);
    let mut cur = tr.clone();
    for _ in 0..n {
        cols.push(cur.clone());
        cur = reduce(&(&cur * &IntPoly::from_i64(&[0, 1])));
    }
    let a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| cols[j].coeff(i)).collect()).collect();
    Ok(IntPoly::new(charpoly(&a)))
}

/// Faddeev-LeVerrier over Z; returns ascending coefficients of det(xI - A).
pub fn charpoly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let matmul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
            .collect()
    };
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut am = matmul(a, &mk);
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = am;
        let amk = matmul(a, &mk);
        let tr: BigInt = (0..n).map(|i| amk[i][i].clone()).sum();
        c[n - k] = -(tr / BigInt::from(k));
    }
    c
}

/// A random small Tschirnhausen transform of f with squarefree result.
pub fn tschirnhausen(f: &IntPoly, seed: u64) -> Result<IntPoly> {
    let n = f.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::Contract("Tschirnhausen transform needs degree at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        if c[1..].iter().all(|&x| x == 0) {
            c[1] = 1;
        }
        let g = tschirnhausen_with(f, &IntPoly::from_i64(&c))?;
        if is_squarefree(&g) {
            return Ok(g);
        }
    }
    Err(Error::NotSquarefree("no squarefree Tschirnhausen transform found".into()))
}

/// Degree of the resolvent root values' minimal information: every default invariant
/// applied to a group gives the orbit-length vector used to separate candidates.
pub fn pattern_vector(group_index: usize) -> Vec<&'static Partition> {
    (0..CATALOG.len()).map(|k| expected_pattern(k, group_index)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stabilizer_indices() {
        let s6 = groups::s6();
        for (txt, idx) in [("x1+x2+x3+x4+x5+x6", 1), ("x1", 6), ("x1*x2+x3*x4+x5*x6", 15)] {
            let st = stabilizer(&InvariantPoly::parse(txt).unwrap(), s6);
            assert_eq!(st.index, idx, "{}", txt);
            assert_eq!(st.subgroup.len() * st.index, 720);
        }
    }

    #[test]
    fn catalog_indices() {
        let idx: Vec<usize> = default_invariants().iter().map(|i| i.index).collect();
        assert_eq!(idx, vec![15, 10, 15, 6, 30]);
    }

    #[test]
    fn trivial_resolvents() {
        let f = IntPoly::from_i64(&[1, 0, 0, -1, 0, 0, 1]);
        let r = resolvent(&InvariantPoly::parse("x1").unwrap(), groups::s6(), &f).unwrap();
        assert_eq!(r.resolvent, f);
        let r = resolvent(&InvariantPoly::parse("x1+x2+x3+x4+x5+x6").unwrap(), groups::s6(), &f).unwrap();
        assert_eq!(r.resolvent, IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn tschirnhausen_examples() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(tschirnhausen_with(&f, &IntPoly::from_i64(&[1, 1])).unwrap(), IntPoly::from_i64(&[2, -2, 1]));
        let g = IntPoly::from_i64(&[1, 0, 0, -1, 0, 0, 1]);
        assert_eq!(tschirnhausen_with(&g, &IntPoly::from_i64(&[0, 1])).unwrap(), g);
    }
}
