//! Sparse commutative multivariate polynomials over [`Scalar`].

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Monomial as sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(usize, u32)>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Monomial, Scalar>,
}

pub fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }
    pub fn constant(c: Scalar) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }
    pub fn one() -> MPoly {
        MPoly::constant(Scalar::one())
    }
    pub fn var(i: usize) -> MPoly {
        let mut p = MPoly::zero();
        p.add_term(vec![(i, 1)], Scalar::one());
        p
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&Scalar::int(-1)))
    }
    pub fn scale(&self, s: &Scalar) -> MPoly {
        if s.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }
    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        r
    }
    pub fn pow(&self, e: u32) -> MPoly {
        let mut r = MPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }
    /// Partial derivative in variable `v`.
    pub fn diff(&self, v: usize) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|&(x, _)| x == v) {
                let e = m[pos].1;
                let mut m2 = m.clone();
                if e == 1 {
                    m2.remove(pos);
                } else {
                    m2[pos].1 -= 1;
                }
                r.add_term(m2, c * &Scalar::int(e as i64));
            }
        }
        r
    }
    /// Substitute each variable `v` by `sub(v)`.
    pub fn substitute(&self, sub: &dyn Fn(usize) -> MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for &(v, e) in m {
                t = t.mul(&sub(v).pow(e));
            }
            r = r.add(&t);
        }
        r
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|x| x.1).sum()).max().unwrap_or(0)
    }
    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mono: Vec<String> = m.iter().map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) }).collect();
            let mono = mono.join("*");
            parts.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => format!("{c}"),
                (false, true) => mono,
                (false, false) if c == &Scalar::int(-1) => format!("-{mono}"),
                _ => format!("({c})*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|v| format!("x{v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let p = x.add(&y).pow(2);
        let q = x.mul(&x).add(&x.mul(&y).scale(&Scalar::int(2))).add(&y.mul(&y));
        assert_eq!(p, q);
        assert_eq!(p.diff(0), x.add(&y).scale(&Scalar::int(2)));
        assert!(p.sub(&q).is_zero());
    }
}
