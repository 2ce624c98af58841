//! Exact coefficients: rationals and the field Q(k) of rational functions in
//! the level parameter `k`, plus truncated q-series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Dense univariate polynomial in `k`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }
    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }
    pub fn one() -> Poly {
        Poly(vec![Rat::one()])
    }
    pub fn x() -> Poly {
        Poly(vec![Rat::zero(), Rat::one()])
    }
    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }
    pub fn lead(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }
    pub fn constant_term(&self) -> Rat {
        self.0.first().cloned().unwrap_or_else(Rat::zero)
    }
    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = o.0.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            });
        }
        Poly::new(c)
    }
    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|x| -x).collect())
    }
    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }
    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|x| x * s).collect())
    }
    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.0.len() - 1;
        if self.0.len() < d.0.len() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let mut q = vec![Rat::zero(); r.len() - dd];
        let inv = Rat::one() / d.lead();
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&(Rat::one() / l))
    }
    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
    /// Scale to primitive integer coefficients with positive leading term;
    /// returns the integer vector and the rational factor `self = factor * ints`.
    fn integer_form(&self) -> (Vec<BigInt>, Rat) {
        if self.is_zero() {
            return (Vec::new(), Rat::one());
        }
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &l).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let ints: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
        (ints, BigRational::new(g, l))
    }
}

fn fmt_int_poly(c: &[BigInt]) -> String {
    let mut s = String::new();
    for (d, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let m = a.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        if d == 0 || !m.is_one() {
            s.push_str(&m.to_string());
        }
        match d {
            0 => {}
            1 => s.push('k'),
            _ => s.push_str(&format!("k^{d}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// An element of Q(k) in canonical form.
///
/// Constant values are always stored as `Q`; `F` holds a reduced fraction
/// with monic denominator whose numerator or denominator has positive degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    F(Box<(Poly, Poly)>),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Q(Rat::zero())
    }
    pub fn one() -> Scalar {
        Scalar::Q(Rat::one())
    }
    pub fn int(n: i64) -> Scalar {
        Scalar::Q(rint(n))
    }
    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::Q(rat(n, d))
    }
    pub fn rational(r: Rat) -> Scalar {
        Scalar::Q(r)
    }
    /// The level parameter `k`.
    pub fn k() -> Scalar {
        Scalar::F(Box::new((Poly::x(), Poly::one())))
    }
    /// `k + c`.
    pub fn k_plus(c: i64) -> Scalar {
        Scalar::k() + Scalar::int(c)
    }
    pub fn from_polys(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }
    fn reduce(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let d = den.lead();
            if num.is_constant() {
                return Scalar::Q(num.lead() / d);
            }
            return Scalar::F(Box::new((num.scale(&(Rat::one() / d)), Poly::one())));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_constant() { (num, den) } else { (num.divrem(&g).0, den.divrem(&g).0) };
        let l = d.lead();
        if !l.is_one() {
            let inv = Rat::one() / l;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        if d.is_constant() && n.is_constant() {
            return Scalar::Q(n.lead());
        }
        Scalar::F(Box::new((n, d)))
    }
    pub fn num_den(&self) -> (Poly, Poly) {
        match self {
            Scalar::Q(r) => (Poly::constant(r.clone()), Poly::one()),
            Scalar::F(b) => (b.0.clone(), b.1.clone()),
        }
    }
    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Q(r) if r.is_zero())
    }
    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Q(r) if r.is_one())
    }
    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Q(_))
    }
    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Scalar::Q(r) => Some(r),
            _ => None,
        }
    }
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Q(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Q(r) => Ok(Scalar::Q(r.recip())),
            Scalar::F(b) => Ok(Self::reduce(b.1.clone(), b.0.clone())),
        }
    }
    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self * &o.inv()?)
    }
    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
    /// Evaluate at `k = x`; `None` if `x` is a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        match self {
            Scalar::Q(r) => Some(r.clone()),
            Scalar::F(b) => {
                let d = b.1.eval(x);
                if d.is_zero() {
                    None
                } else {
                    Some(b.0.eval(x) / d)
                }
            }
        }
    }
    /// Maximum of numerator and denominator degrees.
    pub fn k_degree(&self) -> usize {
        match self {
            Scalar::Q(_) => 0,
            Scalar::F(b) => b.0.degree().unwrap_or(0).max(b.1.degree().unwrap_or(0)),
        }
    }

    /// Parse `"3/2"`, `"k"`, `"-6k^2-12k-5"`, `"(k+1)/(k+2)"`, `"(2k+1)/3"`.
    pub fn parse(s: &str) -> Result<Scalar> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad scalar '{s}'"));
        if s.is_empty() {
            return Err(bad());
        }
        let (ns, ds) = split_fraction(&s).ok_or_else(bad)?;
        let num = parse_poly(ns).ok_or_else(bad)?;
        let den = match ds {
            Some(d) => parse_poly(d).ok_or_else(bad)?,
            None => Poly::one(),
        };
        Scalar::from_polys(num, den)
    }
}

fn strip_parens(s: &str) -> &str {
    if s.starts_with('(') && s.ends_with(')') {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

fn split_fraction(s: &str) -> Option<(&str, Option<&str>)> {
    let mut depth = 0i32;
    let mut slash = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if slash.is_some() {
                    return None;
                }
                slash = Some(i);
            }
            _ => {}
        }
    }
    Some(match slash {
        Some(i) => (strip_parens(&s[..i]), Some(strip_parens(&s[i + 1..]))),
        None => (strip_parens(s), None),
    })
}

/// Polynomial with integer coefficients in `k`, e.g. `-6k^2+12k-5`.
fn parse_poly(s: &str) -> Option<Poly> {
    if s.contains(['(', ')', '/']) {
        return None;
    }
    let mut coeffs: Vec<Rat> = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    if b.is_empty() {
        return None;
    }
    while i < b.len() {
        let mut sign = 1i64;
        if b[i] == b'+' || b[i] == b'-' {
            if b[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i != 0 {
            return None;
        }
        let st = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let c: BigInt = if st == i { BigInt::one() } else { s[st..i].parse().ok()? };
        let mut deg = 0usize;
        if i < b.len() && b[i] == b'*' {
            i += 1;
        }
        if i < b.len() && b[i] == b'k' {
            i += 1;
            deg = 1;
            if i < b.len() && b[i] == b'^' {
                i += 1;
                let st = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                deg = s[st..i].parse().ok()?;
            }
        } else if st == i {
            return None;
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Rat::zero());
        }
        coeffs[deg] += BigRational::from_integer(c * sign);
    }
    Some(Poly::new(coeffs))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::F(b) => {
                let (ni, nf) = b.0.integer_form();
                let (di, df) = b.1.integer_form();
                // value = (nf/df) * ni/di
                let c = nf / df;
                let ni: Vec<BigInt> = ni.iter().map(|x| x * c.numer()).collect();
                let di: Vec<BigInt> = di.iter().map(|x| x * c.denom()).collect();
                if di.len() == 1 {
                    if di[0].is_one() {
                        write!(f, "{}", fmt_int_poly(&ni))
                    } else {
                        write!(f, "({})/{}", fmt_int_poly(&ni), di[0])
                    }
                } else {
                    write!(f, "({})/({})", fmt_int_poly(&ni), fmt_int_poly(&di))
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Q(a), Scalar::F(b)) | (Scalar::F(b), Scalar::Q(a)) => {
                let num = b.0.add(&b.1.scale(a));
                Scalar::reduce(num, b.1.clone())
            }
            (Scalar::F(a), Scalar::F(b)) => {
                if a.1 == b.1 {
                    return Scalar::reduce(a.0.add(&b.0), a.1.clone());
                }
                let num = a.0.mul(&b.1).add(&b.0.mul(&a.1));
                Scalar::reduce(num, a.1.mul(&b.1))
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Q(a), Scalar::F(b)) | (Scalar::F(b), Scalar::Q(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::F(Box::new((b.0.scale(a), b.1.clone())))
            }
            (Scalar::F(a), Scalar::F(b)) => Scalar::reduce(a.0.mul(&b.0), a.1.mul(&b.1)),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::F(b) => Scalar::F(Box::new((b.0.neg(), b.1.clone()))),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => self + &(-o),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if let (Scalar::Q(a), Scalar::Q(b)) = (&mut *self, o) {
            *a += b;
            return;
        }
        *self = &*self + o;
    }
}

impl std::ops::Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

impl std::ops::Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        &self / &o
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Scalar {
        Scalar::Q(r)
    }
}

/// Apply one of the four field operations.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: char) -> Result<Scalar> {
    match op {
        '+' => Ok(a + b),
        '-' | '−' => Ok(a - b),
        '*' | '×' => Ok(a * b),
        '/' | '÷' => a.checked_div(b),
        _ => Err(Error::Parse(format!("unknown operator '{op}'"))),
    }
}

/// Truncated power series `q^offset * Σ_{i=0}^{order} coeffs[i] q^i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QSeries {
    #[serde(with = "rat_string")]
    pub offset: Rat,
    pub coeffs: Vec<Scalar>,
}

mod rat_string {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};
    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl QSeries {
    /// Series known through `q^order`.
    pub fn new(offset: Rat, mut coeffs: Vec<Scalar>, order: usize) -> QSeries {
        coeffs.resize(order + 1, Scalar::zero());
        QSeries { offset, coeffs }
    }
    pub fn from_ints(c: &[i64], order: usize) -> QSeries {
        QSeries::new(Rat::zero(), c.iter().map(|&x| Scalar::int(x)).collect(), order)
    }
    pub fn one(order: usize) -> QSeries {
        QSeries::from_ints(&[1], order)
    }
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn truncate(&self, order: usize) -> QSeries {
        QSeries::new(self.offset.clone(), self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }
    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }
    /// Cauchy product; offsets add, order is the minimum of the two.
    pub fn mul(&self, o: &QSeries) -> QSeries {
        let n = self.order().min(o.order());
        let mut c = vec![Scalar::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !o.coeffs[j].is_zero() {
                    c[i + j] += &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        QSeries { offset: &self.offset + &o.offset, coeffs: c }
    }
    /// Sum of two series with equal offsets.
    pub fn add(&self, o: &QSeries) -> Result<QSeries> {
        if self.offset != o.offset {
            return Err(Error::Incompatible("q-series offsets differ".into()));
        }
        let n = self.order().min(o.order());
        let c = (0..=n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect();
        Ok(QSeries { offset: self.offset.clone(), coeffs: c })
    }
    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<QSeries> {
        let a0 = self.coeffs[0].inv()?;
        let n = self.order();
        let mut b = vec![Scalar::zero(); n + 1];
        b[0] = a0.clone();
        for m in 1..=n {
            let mut s = Scalar::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    s += &(&self.coeffs[i] * &b[m - i]);
                }
            }
            b[m] = -(&s * &a0);
        }
        Ok(QSeries { offset: -&self.offset, coeffs: b })
    }
    /// `∏_{j ∈ js} (1 - q^j)^{power}` (power may be negative) through `q^order`.
    pub fn euler_product(js: impl IntoIterator<Item = usize>, power: i64, order: usize) -> QSeries {
        let mut acc = QSeries::one(order);
        for j in js {
            if j == 0 || j > order {
                continue;
            }
            let mut c = vec![0i64; j + 1];
            c[0] = 1;
            c[j] = -1;
            let f = QSeries::from_ints(&c, order);
            let f = if power < 0 { f.inverse().expect("unit") } else { f };
            for _ in 0..power.unsigned_abs() {
                acc = acc.mul(&f);
            }
        }
        acc
    }
    /// Integer coefficients, if all coefficients are integers.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())).collect()
    }
}

/// Product of two q-series (convenience wrapper).
pub fn qseries_product(a: &QSeries, b: &QSeries) -> QSeries {
    a.mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        Scalar::parse(x).unwrap()
    }

    #[test]
    fn cancellation() {
        let a = s("(k+1)/(k+2)");
        assert_eq!(&a * &s("k+2"), s("k+1"));
        assert_eq!(&s("1/2") + &s("1/3"), s("5/6"));
        assert_eq!(s("(k^2+3k+2)/(k+1)"), s("k+2"));
        assert_eq!(s("(2k+2)/(4k+4)"), Scalar::frac(1, 2));
    }

    #[test]
    fn display_roundtrip() {
        for t in ["0", "5/6", "k", "-6k^2-12k-5", "(k+1)/(k+2)", "(2k+1)/3", "(-6k^2-12k-5)/(k+2)", "(k^3-1)/(2k+7)"] {
            let x = s(t);
            assert_eq!(s(&x.to_string()), x, "{t}");
        }
        assert_eq!(s("(k+1)/(2k+4)").to_string(), "(k+1)/(2k+4)");
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
        assert!(Scalar::parse("1/(k-k)").is_err());
        assert!(scalar_arith(&Scalar::one(), &Scalar::zero(), '÷').is_err());
    }

    #[test]
    fn eval_pole() {
        let a = s("1/(k+2)");
        assert_eq!(a.eval(&rint(-2)), None);
        assert_eq!(a.eval(&rint(0)), Some(rat(1, 2)));
    }

    #[test]
    fn geometric_series() {
        let one_minus_q = QSeries::from_ints(&[1, -1], 15);
        let geo = QSeries::from_ints(&[1; 16], 15);
        assert_eq!(one_minus_q.mul(&geo), QSeries::one(15));
    }

    #[test]
    fn offsets_add() {
        let a = QSeries::new(rat(1, 2), vec![Scalar::one()], 3);
        assert_eq!(a.mul(&a).offset, rint(1));
    }

    #[test]
    fn pentagonal_against_direct_expansion() {
        // oracle: expand the finite product with plain integer arithmetic
        let mut direct = vec![0i64; 21];
        direct[0] = 1;
        for j in 1..=20 {
            for i in (j..=20).rev() {
                direct[i] -= direct[i - j];
            }
        }
        let p = QSeries::euler_product(1..=20, 1, 20);
        let got: Vec<i64> = p.integer_coeffs().unwrap().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(got, direct);
        assert_eq!(&got[..13], &[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
    }
}
