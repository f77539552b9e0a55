//! |Gal(f)| from an exactly verified splitting field.
//!
//! A permutation group G' in the numeric labeling of the roots is guessed from a
//! trivially-stabilized orbit sum. Its stabilizer chain dictates a triangular tower:
//! each level adjoins a root whose defining polynomial is either the full cofactor of the
//! roots adjoined so far or an orbit polynomial recovered by interpolation and rounding.
//! Every claim is then checked exactly: the orbit polynomials divide f, the interpolated
//! roots satisfy f, all roots are distinct, and every defining polynomial is irreducible
//! (Dedekind at degree-one primes of the base, or a norm over Q). The order is the
//! product of the defining degrees. A wrong guess fails verification and the next group
//! is tried.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tower::{self, Elem, Tower, Q};
use crate::error::{Error, Result};
use crate::ffactor::{self, modp};
use crate::groups::{self, Permutation};
use crate::polycore::{self, IntPoly};
use crate::resolvents::numeric::{self, CertifiedRoots, Ctx, Cx};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub order: usize,
    /// Label of the conjugacy class of the verified group.
    pub label: String,
    /// Degrees of the successive extensions.
    pub degrees: Vec<usize>,
}

/// Largest prime tried when certifying irreducibility at degree-one primes.
const DEDEKIND_PRIME_BOUND: u64 = 40_000;
const PRECISIONS: [u32; 4] = [256, 768, 2048, 6144];

pub fn oracle_order(f: &IntPoly) -> Result<usize> {
    oracle_order_with(f).map(|r| r.order)
}

struct Conjugate {
    class: usize,
    elements: Vec<Permutation>,
}

static CONJUGATES: Lazy<Vec<Conjugate>> = Lazy::new(|| {
    let mut out = Vec::new();
    let mut classes: Vec<_> = groups::table().iter().collect();
    classes.sort_by_key(|g| (g.order(), g.index));
    for g in classes {
        for elements in g.conjugates() {
            out.push(Conjugate { class: g.index, elements });
        }
    }
    out
});

pub fn oracle_order_with(f: &IntPoly) -> Result<OracleReport> {
    if f.degree() != Some(6) {
        return Err(Error::Degenerate("oracle needs a sextic".into()));
    }
    let g = polycore::monic_associate(f)?;
    let fac = ffactor::factor_over_z(&g)?;
    if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
        return Err(Error::Reducible);
    }
    let disc = polycore::discriminant(&g)?;
    let square = super::is_square(&disc)?;
    let bound = numeric::log2_fixed(&g.coeffs().iter().map(|c| c.abs()).max().unwrap(), 0).max(0.0) + 1.0;
    let mut tried: Vec<usize> = Vec::new();
    for &base in &PRECISIONS {
        let prec = base + (16.0 * bound) as u32;
        let roots = match numeric::certified_roots(&g, prec) {
            Ok(r) => r,
            Err(Error::Precision(_)) => continue,
            Err(e) => return Err(e),
        };
        let mut need_more = false;
        for conj in passing_conjugates(&roots) {
            if conj.class == 16 || (conj.class == 15 && square) {
                // transitive cofactor towers; no interpolation involved
            }
            match build(&g, &disc, square, &roots, &conj.elements) {
                Outcome::Verified(degrees) => {
                    return Ok(OracleReport {
                        order: degrees.iter().product(),
                        label: groups::by_index(conj.class).label.to_string(),
                        degrees,
                    })
                }
                Outcome::NeedPrecision => need_more = true,
                Outcome::Rejected => tried.push(conj.class),
            }
        }
        if !need_more {
            break;
        }
    }
    Err(Error::Internal(format!("no splitting-field tower verified for {} (rejected {:?})", f, tried)))
}

/// Conjugates whose orbit sum of x2 x3^2 x4^3 x5^4 x6^5 is numerically an integer.
fn passing_conjugates(roots: &CertifiedRoots) -> Vec<&'static Conjugate> {
    let ctx = roots.ctx;
    let pows: Vec<Vec<Cx>> = roots
        .roots
        .iter()
        .map(|z| {
            let mut v = vec![ctx.from_int(&BigInt::one())];
            for k in 1..=5 {
                v.push(ctx.mul(&v[k - 1], z));
            }
            v
        })
        .collect();
    let mut values: HashMap<Permutation, Cx> = HashMap::new();
    for s in groups::all_permutations() {
        let mut t = ctx.from_int(&BigInt::one());
        for i in 1..6 {
            t = ctx.mul(&t, &pows[s.apply(i)][i]);
        }
        values.insert(*s, t);
    }
    let tol = BigInt::one() << (ctx.prec as usize).saturating_sub(40);
    let one = BigInt::one() << ctx.prec as usize;
    CONJUGATES
        .iter()
        .filter(|c| {
            let mut acc = ctx.zero();
            for e in &c.elements {
                acc = ctx.add(&acc, &values[e]);
            }
            let r = (&acc.re + (&one >> 1usize)).div_floor(&one);
            (&acc.re - r * &one).abs() < tol && acc.im.abs() < tol
        })
        .collect()
}

enum Outcome {
    Verified(Vec<usize>),
    NeedPrecision,
    Rejected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// Defining polynomial is f divided by the roots adjoined so far.
    Cofactor,
    /// Defining polynomial is a proper orbit factor, interpolated.
    Orbit,
    /// The root already lies in the current field.
    Expression,
}

struct Level {
    point: usize,
    orbit: Vec<usize>,
    kind: Kind,
}

enum Tail {
    /// One root left: it lies in the field once the others do.
    Last,
    /// Two roots left, swapped by nothing, with square discriminant.
    SquareDiscriminant,
}

fn chain(elements: &[Permutation], square: bool) -> (Vec<Level>, Tail) {
    let mut stab: Vec<Permutation> = elements.to_vec();
    let mut remaining: Vec<usize> = (0..6).collect();
    let mut levels = Vec::new();
    loop {
        if remaining.len() == 1 {
            return (levels, Tail::Last);
        }
        if remaining.len() == 2 && square && stab.len() == 1 {
            return (levels, Tail::SquareDiscriminant);
        }
        let orbit_of = |q: usize| {
            let mut o: Vec<usize> = stab.iter().map(|s| s.apply(q)).collect();
            o.sort_unstable();
            o.dedup();
            o
        };
        let point = *remaining.iter().max_by_key(|&&q| (orbit_of(q).len(), std::cmp::Reverse(q))).unwrap();
        let orbit = orbit_of(point);
        let kind = if orbit.len() == 1 {
            Kind::Expression
        } else if orbit == remaining {
            Kind::Cofactor
        } else {
            Kind::Orbit
        };
        stab.retain(|s| s.apply(point) == point);
        remaining.retain(|&q| q != point);
        levels.push(Level { point, orbit, kind });
    }
}

/// Numeric interpolation of field elements over the embeddings given by the group.
struct Interpolator<'a> {
    ctx: Ctx,
    roots: &'a [Cx],
    elements: &'a [Permutation],
    /// Points adjoined at the variable levels, in order.
    var_points: Vec<usize>,
    dims: Vec<usize>,
}

impl<'a> Interpolator<'a> {
    /// Flat coefficients, scaled by `den` and rounded, of the element of the first `level`
    /// variable levels whose image under sigma is value(sigma).
    fn interpolate(&self, level: usize, den: &BigInt, value: impl Fn(&Permutation) -> Cx) -> Option<Elem> {
        let mut entries: BTreeMap<Vec<usize>, Cx> = BTreeMap::new();
        for s in self.elements {
            let key: Vec<usize> = self.var_points[..level].iter().map(|&q| s.apply(q)).collect();
            entries.entry(key).or_insert_with(|| value(s));
        }
        let flat = self.lagrange(level, entries.into_iter().collect());
        let one = BigInt::one() << self.ctx.prec as usize;
        let quarter = &one >> 2usize;
        flat.iter()
            .map(|c| {
                let re = &c.re * den;
                let im = &c.im * den;
                let r = (&re + (&one >> 1usize)).div_floor(&one);
                if (&re - &r * &one).abs() >= quarter || im.abs() >= quarter {
                    return None;
                }
                Some(BigRational::new(r, den.clone()))
            })
            .collect()
    }

    fn lagrange(&self, level: usize, entries: Vec<(Vec<usize>, Cx)>) -> Vec<Cx> {
        let ctx = &self.ctx;
        if level == 0 {
            return vec![entries.into_iter().next().map(|e| e.1).unwrap_or_else(|| ctx.zero())];
        }
        let d = self.dims[level - 1];
        let mut groups_by_prefix: BTreeMap<Vec<usize>, Vec<(usize, Cx)>> = BTreeMap::new();
        for (key, v) in entries {
            let last = key[level - 1];
            groups_by_prefix.entry(key[..level - 1].to_vec()).or_default().push((last, v));
        }
        let mut coeff_entries: Vec<Vec<(Vec<usize>, Cx)>> = vec![Vec::new(); d];
        for (prefix, pts) in groups_by_prefix {
            let nodes: Vec<&Cx> = pts.iter().map(|(i, _)| &self.roots[*i]).collect();
            let mut coeffs = vec![ctx.zero(); d];
            for (i, (_, w)) in pts.iter().enumerate() {
                // w * prod_{j != i} (x - z_j) / (z_i - z_j)
                let mut basis = vec![ctx.from_int(&BigInt::one())];
                let mut denom = ctx.from_int(&BigInt::one());
                for (j, z) in nodes.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    let mut next = vec![ctx.zero(); basis.len() + 1];
                    for (k, b) in basis.iter().enumerate() {
                        next[k + 1] = ctx.add(&next[k + 1], b);
                        next[k] = ctx.sub(&next[k], &ctx.mul(b, z));
                    }
                    basis = next;
                    denom = ctx.mul(&denom, &ctx.sub(nodes[i], z));
                }
                let scale = ctx.div(w, &denom);
                for (k, b) in basis.iter().enumerate().take(d) {
                    coeffs[k] = ctx.add(&coeffs[k], &ctx.mul(b, &scale));
                }
            }
            for (k, c) in coeffs.into_iter().enumerate() {
                coeff_entries[k].push((prefix.clone(), c));
            }
        }
        coeff_entries.into_iter().flat_map(|e| self.lagrange(level - 1, e)).collect()
    }
}

/// Elementary symmetric functions e_0..e_n of the given values.
fn elementary(ctx: &Ctx, vals: &[&Cx]) -> Vec<Cx> {
    let mut e = vec![ctx.from_int(&BigInt::one())];
    for v in vals {
        let mut next = e.clone();
        next.push(ctx.zero());
        for k in 1..next.len() {
            next[k] = ctx.add(&next[k], &ctx.mul(&e[k - 1], v));
        }
        e = next;
    }
    e
}

/// A root of f inside the tower: a generator or an explicit element.
#[derive(Clone)]
enum Root {
    Generator(usize),
    Element(Elem),
}

fn build(g: &IntPoly, disc: &BigInt, square: bool, roots: &CertifiedRoots, elements: &[Permutation]) -> Outcome {
    let (levels, tail) = chain(elements, square);
    let need_arith = levels.iter().any(|l| l.kind != Kind::Cofactor);
    let var_points: Vec<usize> = levels.iter().filter(|l| l.kind != Kind::Expression).map(|l| l.point).collect();
    let dims: Vec<usize> = levels.iter().filter(|l| l.kind != Kind::Expression).map(|l| l.orbit.len()).collect();
    let interp = Interpolator { ctx: roots.ctx, roots: &roots.roots, elements, var_points, dims: dims.clone() };
    let absd = disc.abs();

    let mut tower = Tower::new();
    let mut found: Vec<Root> = Vec::new();
    // for each variable level: its kind and the roots adjoined before it
    let mut var_info: Vec<(Kind, usize)> = Vec::new();
    for lv in &levels {
        let top = tower.top();
        let den = num_traits::pow(absd.clone(), 2 * top);
        match lv.kind {
            Kind::Cofactor => {
                if need_arith {
                    match cofactor(&tower, g, &found) {
                        Some(m) => tower.push(m),
                        None => return Outcome::Rejected,
                    }
                } else {
                    tower.push(vec![Vec::new(); lv.orbit.len()]);
                }
                var_info.push((Kind::Cofactor, found.len()));
                found.push(Root::Generator(top));
            }
            Kind::Orbit => {
                let d = lv.orbit.len();
                let mut lower = Vec::with_capacity(d);
                for k in 0..d {
                    // coefficient of x^k is (-1)^(d-k) e_{d-k}
                    let el = interp.interpolate(top, &den, |s| {
                        let vals: Vec<&Cx> = lv.orbit.iter().map(|&o| &roots.roots[s.apply(o)]).collect();
                        let e = elementary(&roots.ctx, &vals);
                        if (d - k) % 2 == 0 {
                            e[d - k].clone()
                        } else {
                            roots.ctx.neg(&e[d - k])
                        }
                    });
                    match el {
                        Some(el) => lower.push(el),
                        None => return Outcome::NeedPrecision,
                    }
                }
                let rem = tower.rem_int_poly(top, g.coeffs(), &lower);
                if !rem.iter().all(|r| tower::is_zero(r)) {
                    return Outcome::Rejected;
                }
                tower.push(lower);
                var_info.push((Kind::Orbit, found.len()));
                found.push(Root::Generator(top));
            }
            Kind::Expression => {
                if top == 0 {
                    return Outcome::Rejected;
                }
                let p = match interp.interpolate(top, &den, |s| roots.roots[s.apply(lv.point)].clone()) {
                    Some(p) => p,
                    None => return Outcome::NeedPrecision,
                };
                if !tower::is_zero(&tower.eval_int_poly(top, g.coeffs(), &p)) {
                    return Outcome::Rejected;
                }
                found.push(Root::Element(p));
            }
        }
    }

    // distinct roots: compare at the top level
    if need_arith {
        let top = tower.top();
        let flat: Vec<Elem> = found
            .iter()
            .map(|r| match r {
                Root::Generator(i) => tower.generator(*i, top),
                Root::Element(e) => tower.embed(e, top),
            })
            .collect();
        for i in 0..flat.len() {
            for j in 0..i {
                if flat[i] == flat[j] {
                    return Outcome::Rejected;
                }
            }
        }
    }
    let expected = match tail {
        Tail::Last => 5,
        Tail::SquareDiscriminant => 4,
    };
    if found.len() != expected {
        return Outcome::Rejected;
    }
    if !certify_irreducible(g, disc, &tower, &found, &var_info) {
        return Outcome::Rejected;
    }
    Outcome::Verified(tower.degrees().to_vec())
}

/// Lower coefficients of f / prod (x - r) over the current top level.
fn cofactor(tower: &Tower, g: &IntPoly, found: &[Root]) -> Option<Vec<Elem>> {
    let top = tower.top();
    let mut poly: Vec<Elem> = g.coeffs().iter().map(|c| tower.constant(top, Q::from_integer(c.clone()))).collect();
    for r in found {
        let r = match r {
            Root::Generator(i) => tower.generator(*i, top),
            Root::Element(e) => tower.embed(e, top),
        };
        // synthetic division by (x - r)
        let n = poly.len() - 1;
        let mut q = vec![tower.zero(top); n];
        let mut carry = tower.zero(top);
        for k in (0..n).rev() {
            carry = tower.add(&poly[k + 1], &tower.mul(top, &carry, &r));
            q[k] = carry.clone();
        }
        let rem = tower.add(&poly[0], &tower.mul(top, &carry, &r));
        if !tower::is_zero(&rem) {
            return None;
        }
        poly = q;
    }
    poly.pop();
    Some(poly)
}

/// Every defining polynomial irreducible over its base field.
fn certify_irreducible(g: &IntPoly, disc: &BigInt, tower: &Tower, found: &[Root], var_info: &[(Kind, usize)]) -> bool {
    let degs = tower.degrees();
    let full: Vec<u64> = degs.iter().map(|&d| 1u64 | (1u64 << d)).collect();
    let mut masks: Vec<u64> = degs.iter().map(|&d| (1u64 << (d + 1)) - 1).collect();
    // level 0 is f itself, already irreducible over Q
    if !masks.is_empty() {
        masks[0] = full[0];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd);
    for p in modp::primes().skip(1).take_while(|&p| p < DEDEKIND_PRIME_BOUND) {
        if masks == full {
            break;
        }
        if modp::reduce_big(disc, p) == 0 {
            continue;
        }
        let fp = modp::from_ints(g.coeffs(), p);
        let mut beta: Vec<u64> = Vec::new();
        let mut reduced_roots: Vec<u64> = Vec::new();
        'levels: for (v, &(kind, before)) in var_info.iter().enumerate() {
            // reductions of the roots found before this level
            while reduced_roots.len() < before {
                let r = match &found[reduced_roots.len()] {
                    Root::Generator(i) => beta[*i],
                    Root::Element(e) => match tower.reduce(tower.levels(), &tower.embed(e, tower.levels()), &beta_padded(&beta, degs.len()), p) {
                        Some(x) => x,
                        None => break 'levels,
                    },
                };
                reduced_roots.push(r);
            }
            let tp: Vec<u64> = match kind {
                Kind::Cofactor => {
                    let mut h = fp.clone();
                    for &r in &reduced_roots[..before] {
                        let (q, rem) = modp::divrem(&h, &[(p - r) % p, 1], p);
                        if !rem.is_empty() && modp::deg(&rem) >= 0 && rem.iter().any(|&x| x != 0) {
                            break 'levels;
                        }
                        h = q;
                    }
                    h
                }
                _ => {
                    let mut c = Vec::with_capacity(degs[v] + 1);
                    for m in tower.modulus(v) {
                        match tower.reduce(v, m, &beta, p) {
                            Some(x) => c.push(x),
                            None => break 'levels,
                        }
                    }
                    c.push(1);
                    c
                }
            };
            let tp = modp::trim(tp);
            let dt = modp::derivative(&tp, p);
            if modp::deg(&modp::gcd(&tp, &dt, p)) != 0 {
                break;
            }
            let pat = modp::squarefree_pattern(&tp, p);
            masks[v] &= crate::partition::Partition::from_usizes(pat).subset_sums();
            match modp::roots(&tp, p, &mut rng).first() {
                Some(&b) => beta.push(b),
                None => break,
            }
        }
    }
    for v in 0..degs.len() {
        if masks[v] != full[v] {
            // the norm argument is available over a base of one variable level
            let ok = v == 1 && var_info[0].0 == Kind::Cofactor && trager_irreducible(g, tower, v, var_info[v].1, found);
            if !ok {
                return false;
            }
        }
    }
    true
}

fn beta_padded(beta: &[u64], n: usize) -> Vec<u64> {
    let mut b = beta.to_vec();
    b.resize(n, 0);
    b
}

/// Irreducibility of the level-1 defining polynomial T(y, x) over Q(y)/(f) via the norm
/// Res_y(f(y), T(y, x - k y)) for small shifts k.
fn trager_irreducible(g: &IntPoly, tower: &Tower, v: usize, before: usize, found: &[Root]) -> bool {
    let _ = (before, found);
    let n = g.degree().unwrap();
    let coeffs: Vec<Elem> = {
        let mut c = tower.modulus(v).to_vec();
        c.push(tower.constant(v, Q::one()));
        c
    };
    let d = coeffs.len() - 1;
    let den = coeffs
        .iter()
        .flat_map(|e| e.iter().map(|q| q.denom().clone()))
        .fold(BigInt::one(), |a, b| a.lcm(&b));
    let npts = n * d + 1;
    for k in 0..4i64 {
        let mut xs = Vec::with_capacity(npts);
        let mut ys = Vec::with_capacity(npts);
        for c in 0..npts as i64 {
            // T(y, c - k y) as a polynomial in y with integer coefficients (times den)
            let mut acc = IntPoly::zero();
            let lin = IntPoly::from_i64(&[c, -k]);
            let mut pw = IntPoly::one();
            for coef in &coeffs {
                let cy = IntPoly::new(coef.iter().map(|q| (q * Q::from_integer(den.clone())).to_integer()).collect());
                acc = &acc + &(&cy * &pw);
                pw = &pw * &lin;
            }
            if acc.is_zero() {
                xs.push(BigInt::from(c));
                ys.push(Q::zero());
                continue;
            }
            let res = match polycore::resultant(g, &acc) {
                Ok(r) => r,
                Err(_) => return false,
            };
            xs.push(BigInt::from(c));
            ys.push(Q::new(res, num_traits::pow(den.clone(), n)));
        }
        let norm = match newton_interpolate(&xs, &ys) {
            Some(p) => p,
            None => return false,
        };
        if norm.degree() == Some(n * d) && ffactor::is_irreducible(&norm.primitive_part()) {
            return true;
        }
    }
    false
}

/// Exact interpolation over Q, returning an integer polynomial when all coefficients are integral.
fn newton_interpolate(xs: &[BigInt], ys: &[Q]) -> Option<IntPoly> {
    let n = xs.len();
    let mut dd: Vec<Q> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = Q::from_integer(&xs[i] - &xs[i - j]);
            dd[i] = num / den;
        }
    }
    // expand Newton form
    let mut poly: Vec<Q> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![Q::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * Q::from_integer(xs[i].clone());
        }
        next[0] += &dd[i];
        poly = next;
    }
    if poly.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(IntPoly::new(poly.into_iter().map(|c| c.to_integer()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_order_six() {
        assert_eq!(oracle_order(&IntPoly::from_i64(&[1, 1, 1, 1, 1, 1, 1])).unwrap(), 6);
        assert_eq!(oracle_order(&IntPoly::from_i64(&[1, 0, 5, 0, 6, 0, 1])).unwrap(), 6);
    }

    #[test]
    fn pure_sextic() {
        // x^6 - 2: order 12
        assert_eq!(oracle_order(&IntPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 1])).unwrap(), 12);
    }

    #[test]
    fn generic_sextic_is_full() {
        assert_eq!(oracle_order(&IntPoly::from_i64(&[1, 1, 0, 0, 0, 0, 1])).unwrap(), 720);
    }
}
