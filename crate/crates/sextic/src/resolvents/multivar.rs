//! Sparse integer polynomials in x1..x6 and the permutation action on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::Permutation;

pub type Exponent = [u8; 6];

/// F in Z[x1..x6] as a sorted term list with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantPoly {
    terms: Vec<(Exponent, i64)>,
}

impl InvariantPoly {
    /// Collects like terms and drops zeros. Requires some term of positive degree.
    pub fn new(terms: impl IntoIterator<Item = (Exponent, i64)>) -> Result<Self> {
        let p = Self::collect(terms);
        if !p.terms.iter().any(|(e, _)| e.iter().any(|&k| k > 0)) {
            return Err(Error::Degenerate("invariant must have a term of positive degree".into()));
        }
        Ok(p)
    }

    fn collect(terms: impl IntoIterator<Item = (Exponent, i64)>) -> Self {
        let mut m: BTreeMap<Exponent, i64> = BTreeMap::new();
        for (e, c) in terms {
            *m.entry(e).or_insert(0) += c;
        }
        InvariantPoly { terms: m.into_iter().filter(|&(_, c)| c != 0).collect() }
    }

    /// Sum of the monomials with the given exponent vectors.
    pub fn from_monomials(es: &[Exponent]) -> Result<Self> {
        Self::new(es.iter().map(|&e| (e, 1)))
    }

    /// Orbit sum of one monomial under a set of permutations (distinct images, coefficient 1).
    pub fn orbit_sum(e: Exponent, elements: &[Permutation]) -> Result<Self> {
        let mut imgs: Vec<Exponent> = elements.iter().map(|s| act_exponent(&e, s)).collect();
        imgs.sort_unstable();
        imgs.dedup();
        Self::from_monomials(&imgs)
    }

    pub fn terms(&self) -> &[(Exponent, i64)] {
        &self.terms
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&k| k as usize).sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    pub fn max_exponent(&self) -> u8 {
        self.terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0)
    }

    /// Sum of |coefficients|.
    pub fn l1_norm(&self) -> u128 {
        self.terms.iter().map(|(_, c)| c.unsigned_abs() as u128).sum()
    }

    /// sigma . F = F(x_{sigma(1)}, ..., x_{sigma(6)}). This is a left action.
    pub fn act(&self, s: &Permutation) -> Self {
        Self::collect(self.terms.iter().map(|(e, c)| (act_exponent(e, s), *c)))
    }

    pub fn is_fixed_by(&self, s: &Permutation) -> bool {
        self.act(s) == *self
    }

    /// Exact evaluation at integer points.
    pub fn eval_i128(&self, x: &[i128; 6]) -> i128 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = *c as i128;
                for i in 0..6 {
                    v *= x[i].pow(e[i] as u32);
                }
                v
            })
            .sum()
    }

    /// Parse a sum of terms such as "x1*x2 + x3*x4 - 2*x5^2*x6".
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty invariant".into()));
        }
        let mut chunks: Vec<(i64, &str)> = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut sign = 1i64;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign = if bytes[0] == b'-' { -1 } else { 1 };
            start = 1;
        }
        for i in start..bytes.len() {
            if bytes[i] == b'+' || bytes[i] == b'-' {
                chunks.push((sign, &s[start..i]));
                sign = if bytes[i] == b'-' { -1 } else { 1 };
                start = i + 1;
            }
        }
        chunks.push((sign, &s[start..]));
        let mut terms = Vec::new();
        for (sign, t) in chunks {
            terms.push(parse_term(t).map(|(e, c)| (e, sign * c))?);
        }
        Self::new(terms)
    }
}

fn parse_term(t: &str) -> Result<(Exponent, i64)> {
    let bad = || Error::Parse(format!("bad term {:?}", t));
    if t.is_empty() {
        return Err(bad());
    }
    let mut e = [0u8; 6];
    let mut c = 1i64;
    for f in t.split('*') {
        if let Some(rest) = f.strip_prefix('x') {
            let (var, pow) = match rest.split_once('^') {
                Some((v, p)) => (v, p.parse::<u8>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let k: usize = var.parse().map_err(|_| bad())?;
            if !(1..=6).contains(&k) {
                return Err(Error::Parse(format!("variable x{} out of range 1..6", k)));
            }
            e[k - 1] = e[k - 1].checked_add(pow).ok_or_else(bad)?;
        } else {
            let v: i64 = f.parse().map_err(|_| bad())?;
            c = c.checked_mul(v).ok_or_else(bad)?;
        }
    }
    Ok((e, c))
}

/// Exponent vector of the monomial sigma . x^e, i.e. e'[sigma(i)] = e[i].
pub fn act_exponent(e: &Exponent, s: &Permutation) -> Exponent {
    let mut out = [0u8; 6];
    for i in 0..6 {
        out[s.apply(i)] = e[i];
    }
    out
}

impl fmt::Display for InvariantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.unsigned_abs();
            let vars: Vec<String> = (0..6)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e[i]) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", a)?;
            } else if a == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", a, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let p = InvariantPoly::parse("x1*x2 + x3*x4 − 2*x5^2*x6").unwrap();
        assert_eq!(p.terms().len(), 3);
        let q = InvariantPoly::parse(&p.to_string()).unwrap();
        assert_eq!(p, q);
        assert!(InvariantPoly::parse("3").is_err());
        assert!(InvariantPoly::parse("x7").is_err());
        assert!(InvariantPoly::parse("x1 +").is_err());
    }

    #[test]
    fn left_action() {
        let f = InvariantPoly::parse("x1*x2^2").unwrap();
        let a = Permutation::parse("(1,2,3)").unwrap();
        let b = Permutation::parse("(1,4)").unwrap();
        assert_eq!(f.act(&b).act(&a), f.act(&a.compose(&b)));
        // (1,2,3): x1 -> x2, x2 -> x3
        assert_eq!(f.act(&a), InvariantPoly::parse("x2*x3^2").unwrap());
    }
}
