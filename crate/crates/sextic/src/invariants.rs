//! Igusa-Clebsch invariants of binary sextics, absolute invariants and GL2 equivalence classes.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{self, BinaryForm, IntPoly};

/// Invariants of degrees 2, 4, 6, 10 in the coefficients; J10 is the discriminant of the form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IgusaTuple {
    #[serde(with = "rational_str")]
    pub j2: BigRational,
    #[serde(with = "rational_str")]
    pub j4: BigRational,
    #[serde(with = "rational_str")]
    pub j6: BigRational,
    #[serde(with = "rational_str")]
    pub j10: BigRational,
}

/// t1 = J2^5 / J10, t2 = J4^5 / J10^2, t3 = J6^5 / J10^3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbsoluteTriple {
    #[serde(with = "rational_str")]
    pub t1: BigRational,
    #[serde(with = "rational_str")]
    pub t2: BigRational,
    #[serde(with = "rational_str")]
    pub t3: BigRational,
}

/// Rationals as "num/den" strings (den omitted when 1).
pub mod rational_str {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn format(q: &BigRational) -> String {
        if q.is_integer() {
            q.numer().to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    }

    pub fn parse(s: &str) -> Option<BigRational> {
        match s.split_once('/') {
            Some((n, d)) => {
                let d: num_bigint::BigInt = d.trim().parse().ok()?;
                if d == 0.into() {
                    return None;
                }
                Some(BigRational::new(n.trim().parse().ok()?, d))
            }
            None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
        }
    }

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {:?}", s)))
    }
}

impl fmt::Display for IgusaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = rational_str::format;
        write!(f, "[{}, {}, {}, {}]", r(&self.j2), r(&self.j4), r(&self.j6), r(&self.j10))
    }
}

impl fmt::Display for AbsoluteTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = rational_str::format;
        write!(f, "({}, {}, {})", r(&self.t1), r(&self.t2), r(&self.t3))
    }
}

// Closed forms in a0..a6 for F = sum a_i x^i y^(6-i): (coefficient, exponent of each a_i).
const I2_TERMS: [(i64, [u8; 7]); 4] = [
    (6, [0, 0, 0, 2, 0, 0, 0]), (-16, [0, 0, 1, 0, 1, 0, 0]), (40, [0, 1, 0, 0, 0, 1, 0]),
    (-240, [1, 0, 0, 0, 0, 0, 1]),
];

const I4_TERMS: [(i64, [u8; 7]); 16] = [
    (4, [0, 0, 2, 0, 2, 0, 0]), (-12, [0, 0, 2, 1, 0, 1, 0]), (48, [0, 0, 3, 0, 0, 0, 1]),
    (-12, [0, 1, 0, 1, 2, 0, 0]), (36, [0, 1, 0, 2, 0, 1, 0]), (4, [0, 1, 1, 0, 1, 1, 0]),
    (-180, [0, 1, 1, 1, 0, 0, 1]), (-80, [0, 2, 0, 0, 0, 2, 0]), (300, [0, 2, 0, 0, 1, 0, 1]),
    (48, [1, 0, 0, 0, 3, 0, 0]), (-180, [1, 0, 0, 1, 1, 1, 0]), (324, [1, 0, 0, 2, 0, 0, 1]),
    (300, [1, 0, 1, 0, 0, 2, 0]), (-504, [1, 0, 1, 0, 1, 0, 1]), (-540, [1, 1, 0, 0, 0, 1, 1]),
    (1620, [2, 0, 0, 0, 0, 0, 2]),
];

const I6_TERMS: [(i64, [u8; 7]); 56] = [
    (8, [0, 0, 2, 2, 2, 0, 0]), (-24, [0, 0, 2, 3, 0, 1, 0]), (-24, [0, 0, 3, 0, 3, 0, 0]),
    (76, [0, 0, 3, 1, 1, 1, 0]), (60, [0, 0, 3, 2, 0, 0, 1]), (-36, [0, 0, 4, 0, 0, 2, 0]),
    (-160, [0, 0, 4, 0, 1, 0, 1]), (-24, [0, 1, 0, 3, 2, 0, 0]), (72, [0, 1, 0, 4, 0, 1, 0]),
    (76, [0, 1, 1, 1, 3, 0, 0]), (-238, [0, 1, 1, 2, 1, 1, 0]), (-198, [0, 1, 1, 3, 0, 0, 1]),
    (28, [0, 1, 2, 0, 2, 1, 0]), (26, [0, 1, 2, 1, 0, 2, 0]), (492, [0, 1, 2, 1, 1, 0, 1]),
    (616, [0, 1, 3, 0, 0, 1, 1]), (-36, [0, 2, 0, 0, 4, 0, 0]), (26, [0, 2, 0, 1, 2, 1, 0]),
    (176, [0, 2, 0, 2, 0, 2, 0]), (330, [0, 2, 0, 2, 1, 0, 1]), (64, [0, 2, 1, 0, 1, 2, 0]),
    (-640, [0, 2, 1, 0, 2, 0, 1]), (-1860, [0, 2, 1, 1, 0, 1, 1]),
    (-900, [0, 2, 2, 0, 0, 0, 2]), (-320, [0, 3, 0, 0, 0, 3, 0]), (1600, [0, 3, 0, 0, 1, 1, 1]),
    (2250, [0, 3, 0, 1, 0, 0, 2]), (60, [1, 0, 0, 2, 3, 0, 0]), (-198, [1, 0, 0, 3, 1, 1, 0]),
    (162, [1, 0, 0, 4, 0, 0, 1]), (-160, [1, 0, 1, 0, 4, 0, 0]), (492, [1, 0, 1, 1, 2, 1, 0]),
    (330, [1, 0, 1, 2, 0, 2, 0]), (-468, [1, 0, 1, 2, 1, 0, 1]), (-640, [1, 0, 2, 0, 1, 2, 0]),
    (424, [1, 0, 2, 0, 2, 0, 1]), (-876, [1, 0, 2, 1, 0, 1, 1]), (-96, [1, 0, 3, 0, 0, 0, 2]),
    (616, [1, 1, 0, 0, 3, 1, 0]), (-1860, [1, 1, 0, 1, 1, 2, 0]), (-876, [1, 1, 0, 1, 2, 0, 1]),
    (1818, [1, 1, 0, 2, 0, 1, 1]), (1600, [1, 1, 1, 0, 0, 3, 0]), (3472, [1, 1, 1, 0, 1, 1, 1]),
    (3060, [1, 1, 1, 1, 0, 0, 2]), (-2240, [1, 2, 0, 0, 0, 2, 1]),
    (-18600, [1, 2, 0, 0, 1, 0, 2]), (-900, [2, 0, 0, 0, 2, 2, 0]),
    (-96, [2, 0, 0, 0, 3, 0, 1]), (2250, [2, 0, 0, 1, 0, 3, 0]), (3060, [2, 0, 0, 1, 1, 1, 1]),
    (-10044, [2, 0, 0, 2, 0, 0, 2]), (-18600, [2, 0, 1, 0, 0, 2, 1]),
    (20664, [2, 0, 1, 0, 1, 0, 2]), (59940, [2, 1, 0, 0, 0, 1, 2]),
    (-119880, [3, 0, 0, 0, 0, 0, 3]),
];
fn eval_terms(terms: &[(i64, [u8; 7])], a: &[BigInt]) -> BigInt {
    let mut pows: Vec<Vec<BigInt>> = a
        .iter()
        .map(|x| {
            let mut v = vec![BigInt::one()];
            for k in 1..=5 {
                let next = &v[k - 1] * x;
                v.push(next);
            }
            v
        })
        .collect();
    pows.truncate(7);
    terms
        .iter()
        .map(|(c, e)| {
            let mut t = BigInt::from(*c);
            for i in 0..7 {
                if e[i] > 0 {
                    t *= &pows[i][e[i] as usize];
                }
            }
            t
        })
        .sum()
}

/// Discriminant of the binary form, also when the x^6 coefficient vanishes.
pub fn form_discriminant(form: &BinaryForm) -> Result<BigInt> {
    let c = form.coeffs();
    let n = form.degree();
    if !c[n].is_zero() {
        return polycore::discriminant(&IntPoly::new(c.to_vec()));
    }
    if n >= 1 && !c[n - 1].is_zero() && n - 1 >= 1 {
        let g = IntPoly::new(c[..n].to_vec());
        let d = if n - 1 == 1 { BigInt::one() } else { polycore::discriminant(&g)? };
        return Ok(&c[n - 1] * &c[n - 1] * d);
    }
    Ok(BigInt::zero())
}

pub fn igusa(form: &BinaryForm) -> Result<IgusaTuple> {
    if form.degree() != 6 {
        return Err(Error::Degenerate(format!("Igusa invariants need a sextic form, got degree {}", form.degree())));
    }
    if form.is_zero() {
        return Err(Error::Degenerate("Igusa invariants of the zero form".into()));
    }
    let a = form.coeffs();
    let q = |x: BigInt| BigRational::from_integer(x);
    Ok(IgusaTuple {
        j2: q(eval_terms(&I2_TERMS, a)),
        j4: q(eval_terms(&I4_TERMS, a)),
        j6: q(eval_terms(&I6_TERMS, a)),
        j10: q(form_discriminant(form)?),
    })
}

pub fn absolute(j: &IgusaTuple) -> Result<AbsoluteTriple> {
    if j.j10.is_zero() {
        return Err(Error::NotSquarefree("J10 vanishes".into()));
    }
    let p5 = |x: &BigRational| num_traits::pow(x.clone(), 5);
    Ok(AbsoluteTriple {
        t1: p5(&j.j2) / &j.j10,
        t2: p5(&j.j4) / num_traits::pow(j.j10.clone(), 2),
        t3: p5(&j.j6) / num_traits::pow(j.j10.clone(), 3),
    })
}

pub fn absolute_of(form: &BinaryForm) -> Result<AbsoluteTriple> {
    absolute(&igusa(form)?)
}

/// Indices of the forms grouped by equal absolute invariants, in order of first appearance.
pub fn equivalence_classes(forms: &[BinaryForm]) -> Result<Vec<Vec<usize>>> {
    let mut index: HashMap<AbsoluteTriple, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        let t = match absolute_of(f) {
            Ok(t) => t,
            Err(Error::NotSquarefree(_)) => {
                return Err(Error::NotSquarefree(format!("form #{} {:?} has zero discriminant", i, f.coeffs())))
            }
            Err(e) => return Err(e),
        };
        match index.get(&t) {
            Some(&k) => classes[k].push(i),
            None => {
                index.insert(t, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    Ok(classes)
}
