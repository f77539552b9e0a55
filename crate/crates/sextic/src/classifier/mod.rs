//! Decision procedure for the Galois group of an integer sextic, and an exact
//! splitting-field oracle for |Gal(f)|.

mod oracle;
pub mod tower;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffactor::{self, modp};
use crate::groups::{self, TransitiveGroup};
use crate::partition::{CycleType, DegreePattern, Partition};
use crate::polycore::{self, IntPoly};
use crate::resolvents::{self, default_invariants, expected_pattern};

pub use oracle::{oracle_order, oracle_order_with, OracleReport};

/// Exact test whether an integer is a perfect square. Zero is a contract violation.
pub fn is_square(d: &BigInt) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::Contract("square test of zero discriminant".into()));
    }
    if d.is_negative() {
        return Ok(false);
    }
    let r = d.sqrt();
    Ok(&r * &r == *d)
}

/// s (s ln s + 2 ln s + 3) for r = 2s non-real roots.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NrBound {
    pub r: usize,
    pub s: usize,
    pub n: f64,
}

pub fn nr_bound(r: usize) -> Result<NrBound> {
    if r % 2 == 1 {
        return Err(Error::Contract(format!("odd number {} of non-real roots", r)));
    }
    let s = r / 2;
    let n = if s == 0 {
        0.0
    } else {
        let l = (s as f64).ln();
        s as f64 * (s as f64 * l + 2.0 * l + 3.0)
    };
    Ok(NrBound { r, s, n })
}

/// Published thresholds for prime degree p: with r non-real roots, Gal is A_p or S_p once p
/// exceeds the listed value.
pub const PRIME_DEGREE_THRESHOLDS: [(usize, u64); 4] = [(4, 7), (6, 13), (8, 23), (10, 37)];

/// True if, for an irreducible polynomial of prime degree p with r non-real roots,
/// the published case list forces Gal in {A_p, S_p}.
pub fn forces_alternating_or_symmetric(p: u64, r: usize) -> bool {
    PRIME_DEGREE_THRESHOLDS.iter().any(|&(rr, t)| rr == r && p > t)
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeBudget {
    /// Largest prime sampled.
    pub bound: u64,
    /// Stop once this many consecutive good primes leave the evidence unchanged.
    pub stable_after: usize,
}

impl Default for PrimeBudget {
    fn default() -> Self {
        PrimeBudget { bound: 211, stable_after: 10 }
    }
}

/// Degree patterns at good primes, in order of p, until the pattern set has been stable for
/// `stable_after` consecutive good primes or p exceeds the bound.
pub fn sample_patterns(f: &IntPoly, budget: &PrimeBudget) -> Result<Vec<(u64, DegreePattern)>> {
    sample_patterns_until(f, budget, |_| false)
}

/// As [`sample_patterns`], also stopping as soon as `done` holds for the observed set.
fn sample_patterns_until(
    f: &IntPoly,
    budget: &PrimeBudget,
    mut done: impl FnMut(&BTreeSet<DegreePattern>) -> bool,
) -> Result<Vec<(u64, DegreePattern)>> {
    let primes = modp::primes_upto(budget.bound);
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut stable = 0;
    for &p in &primes {
        let pat = match ffactor::degree_pattern(f, p) {
            Ok(pat) => pat,
            Err(Error::RamifiedPrime(_)) => continue,
            Err(e) => return Err(e),
        };
        let fresh = seen.insert(pat.clone());
        out.push((p, pat));
        stable = if fresh { 0 } else { stable + 1 };
        if stable >= budget.stable_after || done(&seen) {
            break;
        }
    }
    if out.is_empty() && !primes.is_empty() {
        return Err(Error::Config(format!("no good prime below {}", budget.bound)));
    }
    Ok(out)
}

/// The 11 partitions of 6, used to encode cycle-type sets as bitmasks.
static PARTITIONS_OF_SIX: Lazy<Vec<Partition>> = Lazy::new(|| {
    let mut out: Vec<Partition> = groups::all_permutations().iter().map(|p| p.cycle_type()).collect();
    out.sort();
    out.dedup();
    out
});

fn type_bit(t: &CycleType) -> u16 {
    PARTITIONS_OF_SIX.iter().position(|x| x == t).map_or(0, |i| 1 << i)
}

static GROUP_TYPE_MASKS: Lazy<Vec<u16>> =
    Lazy::new(|| groups::table().iter().map(|g| g.cycle_types().iter().map(type_bit).fold(0, |a, b| a | b)).collect());

/// Fast equivalent of [`groups::candidates`] on bitmask-encoded evidence.
fn candidates_mask(observed: u16, square: bool) -> Vec<usize> {
    groups::table()
        .iter()
        .filter(|g| observed & !GROUP_TYPE_MASKS[g.index - 1] == 0 && g.in_a6() == square)
        .map(|g| g.index)
        .collect()
}

/// Certify Gal(f) = S6 from mod-p factor degrees alone. The patterns must prove
/// irreducibility (their subset sums meet only in 0 and 6) and no proper transitive group may
/// contain every observed cycle type. Returns the good primes used with their patterns, or
/// None when `max_primes` good primes do not settle it.
pub fn certify_full_symmetric(f: &IntPoly, max_primes: usize) -> Result<Option<Vec<(u64, DegreePattern)>>> {
    if f.degree() != Some(6) {
        return Err(Error::Degenerate(format!("expected a sextic, got degree {:?}", f.degree())));
    }
    let small: Option<Vec<i64>> = f.coeffs().iter().map(num_traits::ToPrimitive::to_i64).collect();
    let mut used = Vec::new();
    let mut sums = u64::MAX;
    let mut mask = 0u16;
    for p in modp::primes().take_while(|&p| p < 1000) {
        if used.len() >= max_primes {
            break;
        }
        let pat = match &small {
            Some(c) => match ffactor::small::degree_pattern_small(c, p) {
                Some(pat) => pat,
                None => continue,
            },
            None => match ffactor::degree_pattern(f, p) {
                Ok(pat) => pat,
                Err(Error::RamifiedPrime(_)) => continue,
                Err(e) => return Err(e),
            },
        };
        sums &= pat.subset_sums();
        mask |= type_bit(&pat);
        used.push((p, pat));
        let irreducible = sums == 1 | 1 << 6;
        if irreducible && !GROUP_TYPE_MASKS[..15].iter().any(|&g| mask & !g == 0) {
            return Ok(Some(used));
        }
        // a polynomial whose patterns still share a proper subset sum is most likely reducible
        if !irreducible && used.len() >= 8 {
            return Ok(None);
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolventRecord {
    pub invariant: String,
    pub index: usize,
    /// Polynomial actually used, when a Tschirnhausen transform was needed.
    pub transformed: Option<String>,
    pub factor_degrees: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub layer: String,
    pub candidates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationCertificate {
    /// Ascending coefficients of the input polynomial.
    pub input: String,
    pub primes: Vec<u64>,
    pub patterns: Vec<String>,
    pub real_roots: usize,
    pub disc_square: bool,
    pub resolvents: Vec<ResolventRecord>,
    pub trace: Vec<TraceStep>,
    pub label: String,
}

impl ClassificationCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    /// Conjugation type (2)^s padded to degree 6.
    pub fn conjugation_type(&self) -> CycleType {
        Partition::involution((6 - self.real_roots) / 2, 6)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub budget: PrimeBudget,
    /// Stop sampling primes once a single candidate remains.
    pub early_exit: bool,
    pub max_precision: u32,
    pub tschirnhausen_seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: PrimeBudget::default(),
            early_exit: true,
            max_precision: resolvents::MAX_PRECISION,
            tschirnhausen_seed: 0x75c4,
        }
    }
}

/// Intermediate facts shared by the classifier and the census.
#[derive(Clone, Debug)]
pub struct Evidence {
    pub monic: IntPoly,
    pub disc: BigInt,
    pub real_roots: usize,
    pub square: bool,
}

/// Monic associate, irreducibility, real roots and discriminant of a sextic.
pub fn gather_evidence(f: &IntPoly) -> Result<Evidence> {
    if f.degree() != Some(6) {
        return Err(Error::Degenerate(format!("expected a sextic, got degree {:?}", f.degree())));
    }
    let g = polycore::monic_associate(f)?;
    if !ffactor::is_irreducible(&g) {
        return Err(Error::Reducible);
    }
    let real_roots = polycore::sturm_real_roots(&g)?;
    let disc = polycore::discriminant(&g)?;
    let square = is_square(&disc)?;
    Ok(Evidence { monic: g, disc, real_roots, square })
}

fn labels(c: &[usize]) -> Vec<String> {
    c.iter().map(|&i| groups::by_index(i).label.to_string()).collect()
}

pub fn classify(f: &IntPoly) -> Result<(String, ClassificationCertificate)> {
    classify_with(f, &ClassifyOptions::default())
}

pub fn classify_with(f: &IntPoly, opts: &ClassifyOptions) -> Result<(String, ClassificationCertificate)> {
    let ev = gather_evidence(f)?;
    classify_evidence(f, &ev, opts)
}

/// The decision procedure after the irreducibility check.
pub fn classify_evidence(f: &IntPoly, ev: &Evidence, opts: &ClassifyOptions) -> Result<(String, ClassificationCertificate)> {
    let g = &ev.monic;
    let mut trace = vec![TraceStep { layer: "start".into(), candidates: labels(&(1..=16).collect::<Vec<_>>()) }];

    let conj = Partition::involution((6 - ev.real_roots) / 2, 6);
    let conj_bit = type_bit(&conj);
    let after_real: Vec<usize> =
        (1..=16).filter(|&i| conj_bit & !GROUP_TYPE_MASKS[i - 1] == 0).collect();
    trace.push(TraceStep { layer: format!("real-roots {} conj {}", ev.real_roots, conj), candidates: labels(&after_real) });
    let after_disc: Vec<usize> =
        after_real.iter().copied().filter(|&i| groups::by_index(i).in_a6() == ev.square).collect();
    trace.push(TraceStep {
        layer: format!("discriminant {}", if ev.square { "square" } else { "non-square" }),
        candidates: labels(&after_disc),
    });

    let mut mask = conj_bit;
    let sampled = sample_patterns_until(g, &opts.budget, |seen| {
        if !opts.early_exit {
            return false;
        }
        let m = seen.iter().map(type_bit).fold(conj_bit, |a, b| a | b);
        candidates_mask(m, ev.square).len() <= 1
    })?;
    for (_, p) in &sampled {
        mask |= type_bit(p);
    }
    let mut cands = candidates_mask(mask, ev.square);
    trace.push(TraceStep { layer: "signature".into(), candidates: labels(&cands) });
    if cands.is_empty() {
        return Err(Error::InconsistentEvidence(format!(
            "no transitive group contains the observed cycle types of {}",
            f
        )));
    }

    let mut records = Vec::new();
    let mut work = g.clone();
    let mut transformed = None;
    let mut seed = opts.tschirnhausen_seed;
    for (k, inv) in default_invariants().iter().enumerate() {
        if cands.len() <= 1 {
            break;
        }
        let first = expected_pattern(k, cands[0]);
        if cands.iter().all(|&c| expected_pattern(k, c) == first) {
            continue;
        }
        let ropts = resolvents::ResolventOptions { max_precision: opts.max_precision, ..Default::default() };
        let mut attempts = 0;
        let res = loop {
            let r = resolvents::resolvent_with(&inv.poly, &groups::s6().elements, &work, &ropts)?;
            if r.squarefree {
                break r;
            }
            attempts += 1;
            if attempts > 16 {
                return Err(Error::NotSquarefree(format!("resolvent {} stays non-squarefree", inv.name)));
            }
            work = resolvents::tschirnhausen(g, seed)?;
            seed = seed.wrapping_add(1);
            transformed = Some(polycore::format_coeffs(work.coeffs()));
        };
        let degs = res.factor_degrees.clone().expect("squarefree resolvent is factored");
        cands.retain(|&c| expected_pattern(k, c) == &degs);
        records.push(ResolventRecord {
            invariant: inv.poly.to_string(),
            index: res.index,
            transformed: transformed.clone(),
            factor_degrees: degs.to_string(),
        });
        trace.push(TraceStep { layer: format!("resolvent {}", inv.name), candidates: labels(&cands) });
        if cands.is_empty() {
            return Err(Error::InconsistentEvidence(format!("resolvent {} excludes every candidate", inv.name)));
        }
    }
    if cands.len() != 1 {
        return Err(Error::Internal(format!("candidates {:?} were not separated", labels(&cands))));
    }
    let label = groups::by_index(cands[0]).label.to_string();
    let cert = ClassificationCertificate {
        input: polycore::format_coeffs(f.coeffs()),
        primes: sampled.iter().map(|(p, _)| *p).collect(),
        patterns: sampled.iter().map(|(_, t)| t.to_string()).collect(),
        real_roots: ev.real_roots,
        disc_square: ev.square,
        resolvents: records,
        trace,
        label: label.clone(),
    };
    Ok((label, cert))
}

/// Checks the soundness conditions of a certificate against the group it names.
pub fn certificate_is_sound(cert: &ClassificationCertificate) -> bool {
    let g: &TransitiveGroup = match groups::by_label(&cert.label) {
        Some(g) => g,
        None => return false,
    };
    let types = g.cycle_types();
    let patterns_ok = cert
        .patterns
        .iter()
        .all(|p| Partition::parse(p).map_or(false, |t| types.contains(&t)));
    let shrinking = cert.trace.windows(2).all(|w| w[1].candidates.iter().all(|c| w[0].candidates.contains(c)));
    patterns_ok
        && types.contains(&cert.conjugation_type())
        && g.in_a6() == cert.disc_square
        && shrinking
        && cert.trace.last().map_or(false, |t| t.candidates == vec![cert.label.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares() {
        assert!(is_square(&BigInt::from(49)).unwrap());
        assert!(!is_square(&BigInt::from(-4)).unwrap());
        assert!(!is_square(&BigInt::from(50)).unwrap());
        assert!(is_square(&BigInt::zero()).is_err());
    }

    #[test]
    fn nr_values() {
        assert_eq!(nr_bound(2).unwrap().n, 3.0);
        assert!((nr_bound(4).unwrap().n - 11.545).abs() < 1e-3);
        assert_eq!(nr_bound(0).unwrap().n, 0.0);
        assert!(nr_bound(3).is_err());
        assert!(forces_alternating_or_symmetric(11, 4));
        assert!(!forces_alternating_or_symmetric(7, 4));
    }

    #[test]
    fn cyclic_examples() {
        for c in [[1, 1, 1, 1, 1, 1, 1], [1, 0, 0, -1, 0, 0, 1]] {
            let (l, cert) = classify(&IntPoly::from_i64(&c)).unwrap();
            assert_eq!(l, "g1");
            assert!(certificate_is_sound(&cert));
        }
        assert_eq!(classify(&IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1])).unwrap_err(), Error::Reducible);
    }

    #[test]
    fn empty_budget_gives_no_patterns() {
        let f = IntPoly::from_i64(&[1, 1, 1, 1, 1, 1, 1]);
        assert!(sample_patterns(&f, &PrimeBudget { bound: 1, stable_after: 10 }).unwrap().is_empty());
    }
}
