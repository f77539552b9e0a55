//! Dense integer polynomials, binary forms, resultants and Sturm counting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense polynomial over Z, coefficients in ascending degree.
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// x - c
    pub fn linear_root(c: &BigInt) -> Self {
        Self::new(vec![-c, BigInt::one()])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1, handy in loops.
    pub fn deg_i(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divide every coefficient by `k`; caller guarantees exactness.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// f(x + c)
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut acc = Self::zero();
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    /// f(-x)
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// x^n f(1/x) for n = degree.
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// Pseudo-remainder: lc(g)^(deg f - deg g + 1) f mod g.
    pub fn pseudo_rem(&self, g: &Self) -> Self {
        assert!(!g.is_zero(), "pseudo_rem by zero");
        let dg = g.deg_i();
        let lg = g.lead();
        let mut r = self.clone();
        if r.deg_i() < dg {
            return r;
        }
        let mut steps = r.deg_i() - dg + 1;
        while !r.is_zero() && r.deg_i() >= dg {
            let shift = (r.deg_i() - dg) as usize;
            let lr = r.lead();
            let mut v: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lg).collect();
            for (i, gc) in g.coeffs.iter().enumerate() {
                v[i + shift] -= &lr * gc;
            }
            r = Self::new(v);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lg, steps as usize));
        }
        r
    }

    /// Exact division in Z[x]; None when g does not divide self.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dn, dg) = (self.deg_i(), g.deg_i());
        if dn < dg {
            return None;
        }
        let lg = g.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); (dn - dg + 1) as usize];
        for k in (0..q.len()).rev() {
            let top = &r[k + dg as usize];
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(&lg);
            if !rem.is_zero() {
                return None;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                r[i + k] -= &qq * gc;
            }
            q[k] = qq;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Gcd in Z[x] by primitive remainder sequences; primitive, positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.deg_i() >= other.deg_i() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.scale(&cont)
    }

    /// f / gcd(f, f'), primitive.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative()).primitive_part();
        if g.deg_i() <= 0 {
            return self.primitive_part();
        }
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides")
            .primitive_part()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", a)?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Parse "a0,a1,...,an" (ascending). Accepts the Unicode minus sign.
pub fn parse_coeffs(s: &str) -> Result<IntPoly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    let mut v = Vec::new();
    for tok in s.split(',') {
        let t = tok.trim().replace('\u{2212}', "-");
        let t = t.strip_prefix('+').unwrap_or(&t);
        let c: BigInt = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {:?}", tok.trim())))?;
        v.push(c);
    }
    Ok(IntPoly::new(v))
}

/// Ascending comma-separated text form, the inverse of [`parse_coeffs`] (with explicit length).
pub fn format_coeffs(c: &[BigInt]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Max absolute coefficient.
pub fn height(f: &IntPoly) -> Result<BigInt> {
    f.coeffs
        .iter()
        .map(|c| c.abs())
        .max()
        .ok_or_else(|| Error::Degenerate("height of the zero polynomial".into()))
}

/// g(x) = a_n^(n-1) f(x / a_n): monic with the same splitting field.
pub fn monic_associate(f: &IntPoly) -> Result<IntPoly> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::Degenerate("monic associate needs degree >= 1".into())),
    };
    if f.is_monic() {
        return Ok(f.clone());
    }
    let a = f.lead();
    // coefficient i of g is a_i * a^(n-1-i)
    let mut pw = BigInt::one();
    let mut v = vec![BigInt::zero(); n + 1];
    v[n] = BigInt::one();
    for i in (0..n).rev() {
        v[i] = f.coeff(i) * &pw;
        pw *= &a;
    }
    Ok(IntPoly::new(v))
}

/// Binary form sum a_i x^i y^(n-i), stored with an explicit degree (a_n may vanish).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn height(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::Degenerate("height of the zero form".into()));
        }
        Ok(self.coeffs.iter().map(|c| c.abs()).max().unwrap())
    }

    /// Divide by the content and make the first nonzero coefficient (ascending) positive.
    pub fn primitive(&self) -> Self {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return self.clone();
        }
        if self.coeffs.iter().find(|c| !c.is_zero()).unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_primitive(&self) -> bool {
        *self == self.primitive()
    }

    /// Substitute (x, y) -> (a x + b y, c x + d y).
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Self {
        let n = self.degree();
        let px = IntPoly::from_i64(&[m[0][1], m[0][0]]); // in t = x/y: a t + b
        let py = IntPoly::from_i64(&[m[1][1], m[1][0]]); // c t + d
        let mut acc = IntPoly::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = &px.pow(i as u32) * &py.pow((n - i) as u32);
            acc = &acc + &term.scale(a);
        }
        let mut v: Vec<BigInt> = acc.into_coeffs();
        v.resize(n + 1, BigInt::zero());
        Self::new(v)
    }

    /// Swap x and y.
    pub fn swap(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", format_coeffs(&self.coeffs))
    }
}

/// y^n f(x/y). Requires deg f <= n.
pub fn homogenize(f: &IntPoly, n: usize) -> Result<BinaryForm> {
    if f.deg_i() > n as isize {
        return Err(Error::Degenerate(format!(
            "degree {} exceeds form degree {}",
            f.deg_i(),
            n
        )));
    }
    Ok(BinaryForm::new((0..=n).map(|i| f.coeff(i)).collect()))
}

/// F(x, 1).
pub fn dehomogenize(form: &BinaryForm) -> IntPoly {
    IntPoly::new(form.coeffs.clone())
}

/// Fraction-free Gaussian elimination (Bareiss); exact determinant.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester-matrix resultant.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::Degenerate("resultant with the zero polynomial".into())),
    };
    if m == 0 && n == 0 {
        return Ok(BigInt::one());
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for (i, c) in f.coeffs.iter().enumerate().rev() {
            mat[r][r + (m - i)] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.coeffs.iter().enumerate().rev() {
            mat[n + r][r + (n - i)] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// (-1)^(n(n-1)/2) res(f, f') / a_n.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return Err(Error::Degenerate("discriminant needs degree >= 2".into())),
    };
    let r = resultant(f, &f.derivative())?;
    let d = r / f.lead();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Sturm sequence of the squarefree part of f.
pub fn sturm_sequence(f: &IntPoly) -> Vec<IntPoly> {
    let p0 = f.squarefree_part();
    let p1 = p0.derivative();
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.deg_i() <= 0 {
            break;
        }
        let mut r = a.pseudo_rem(b);
        // pseudo_rem scales by lc(b)^k; undo the sign of that factor
        let k = a.deg_i() - b.deg_i() + 1;
        if b.lead().is_negative() && k % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let r = -&r;
        let c = r.content();
        seq.push(r.div_scalar_exact(&c));
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign_of(c: &BigInt) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots over all of R (signs at -inf and +inf).
pub fn sturm_real_roots(f: &IntPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::Degenerate("Sturm count of the zero polynomial".into()));
    }
    if f.deg_i() == 0 {
        return Ok(0);
    }
    let seq = sturm_sequence(f);
    let at_pos = sign_changes(seq.iter().map(|p| sign_of(&p.lead())));
    let at_neg = sign_changes(seq.iter().map(|p| {
        let s = sign_of(&p.lead());
        if p.deg_i() % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    Ok(at_neg - at_pos)
}

/// Sturm count on the half-open interval (a, b].
pub fn sturm_count_interval(seq: &[IntPoly], a: &BigInt, b: &BigInt) -> usize {
    let va = sign_changes(seq.iter().map(|p| sign_of(&p.eval(a))));
    let vb = sign_changes(seq.iter().map(|p| sign_of(&p.eval(b))));
    va.saturating_sub(vb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&p(&[1, 0, 0, -1, 0, 0, 1])).unwrap(), 1.into());
        assert_eq!(height(&p(&[1, 3, 6, 6, 0, 0, 3])).unwrap(), 6.into());
        assert_eq!(height(&p(&[0, 0, 0, 0, 0, 0, 1])).unwrap(), 1.into());
        assert!(matches!(height(&IntPoly::zero()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn monic_examples() {
        let f = p(&[1, 1, 0, 0, 0, 0, 1]);
        assert_eq!(monic_associate(&f).unwrap(), f);
        assert_eq!(monic_associate(&p(&[1, 1, 2])).unwrap(), p(&[2, 1, 1]));
    }

    #[test]
    fn homogenize_examples() {
        let f = homogenize(&p(&[1, 0, 1]), 2).unwrap();
        assert_eq!(f.coeffs(), BinaryForm::from_i64(&[1, 0, 1]).coeffs());
        let g = BinaryForm::from_i64(&[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(dehomogenize(&g), p(&[1, 0, 0, 0, 0, 0, 1]));
        assert!(homogenize(&p(&[1, 0, 0, 1]), 2).is_err());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-2, 1])).unwrap(), (-1).into());
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap(), 1.into());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-1, 0, 1])).unwrap(), 4.into());
        assert_eq!(discriminant(&p(&[1, -2, 1])).unwrap(), 0.into());
        // known values: disc(x^6 - x^3 + 1) = -3^9, disc(Phi_7) = -7^5
        assert_eq!(discriminant(&p(&[1, 0, 0, -1, 0, 0, 1])).unwrap(), (-19683).into());
        assert_eq!(discriminant(&p(&[1, 1, 1, 1, 1, 1, 1])).unwrap(), (-16807).into());
        // cubic: -4p^3 - 27q^2
        assert_eq!(discriminant(&p(&[1, -1, 0, 1])).unwrap(), (-23).into());
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_real_roots(&p(&[1, 0, 0, 0, 0, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_real_roots(&p(&[-2, 0, 0, 0, 0, 0, 1])).unwrap(), 2);
        let mut f = IntPoly::one();
        for r in 1..=6 {
            f = &f * &IntPoly::linear_root(&BigInt::from(r));
        }
        assert_eq!(sturm_real_roots(&f).unwrap(), 6);
        // repeated roots count once
        let g = &f * &IntPoly::linear_root(&BigInt::from(3));
        assert_eq!(sturm_real_roots(&g).unwrap(), 6);
        // negative leading coefficient
        assert_eq!(sturm_real_roots(&(-&f)).unwrap(), 6);
    }

    #[test]
    fn parse_roundtrip() {
        let f = parse_coeffs("1, 0,0,\u{2212}1,0,0,+1").unwrap();
        assert_eq!(f, p(&[1, 0, 0, -1, 0, 0, 1]));
        assert_eq!(f.to_string(), "x^6 - x^3 + 1");
        assert!(parse_coeffs("1,a").is_err());
        assert!(parse_coeffs("").is_err());
    }

    #[test]
    fn form_primitive_and_transform() {
        let f = BinaryForm::from_i64(&[0, -2, 4, 0, 0, 0, 6]);
        assert_eq!(f.primitive(), BinaryForm::from_i64(&[0, 1, -2, 0, 0, 0, -3]));
        assert_eq!(f.primitive().primitive(), f.primitive());
        let g = BinaryForm::from_i64(&[1, 2, 3]);
        // (x,y) -> (x+y, y): x^0..: 1*y^2 + 2 (x+y) y + 3 (x+y)^2
        assert_eq!(g.transform([[1, 1], [0, 1]]), BinaryForm::from_i64(&[6, 8, 3]));
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[1, 0, 1]);
        let b = p(&[2, 2, 0, 0, 1]);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a).unwrap(), b);
        assert!(ab.div_exact(&p(&[1, 1])).is_none());
        assert_eq!(ab.gcd(&(&a * &p(&[3, 1]))), a);
        assert_eq!(p(&[1, 2, 1]).squarefree_part(), p(&[1, 1]));
    }

    #[test]
    fn shift_and_reverse() {
        assert_eq!(p(&[0, 0, 1]).shift(&BigInt::from(1)), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 2, 3]).reverse(), p(&[3, 2, 1]));
    }
}
