//! Jet schemes and arc spaces: truncated jet ideals generated by `T^m f`, and
//! the Poisson vertex algebra structure induced on `ℂ[JX]` from a Poisson
//! bracket on `ℂ[X]`.
//!
//! Jet variable `x_{i,(-m-1)}` is stored as MPoly variable `m·N + i` and has
//! weight `m + 1`; `T x_{i,(-m-1)} = (m+1) x_{i,(-m-2)}`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::MatrixLie;
use crate::poly::{MPoly, Monomial};
use crate::scalar::Scalar;

/// Polynomial ring in the jets of `N` named variables.
#[derive(Clone, Debug)]
pub struct JetRing {
    pub names: Vec<String>,
}

/// `λ`-polynomial with jet-polynomial coefficients, lowest power first.
pub type LambdaPoly = Vec<MPoly>;

impl JetRing {
    pub fn new(names: &[&str]) -> JetRing {
        JetRing { names: names.iter().map(|s| s.to_string()).collect() }
    }
    pub fn n(&self) -> usize {
        self.names.len()
    }
    pub fn jvar(&self, i: usize, m: usize) -> usize {
        m * self.n() + i
    }
    pub fn split(&self, v: usize) -> (usize, usize) {
        (v % self.n(), v / self.n())
    }
    pub fn var(&self, i: usize, m: usize) -> MPoly {
        MPoly::var(self.jvar(i, m))
    }
    pub fn var_name(&self, v: usize) -> String {
        let (i, m) = self.split(v);
        format!("{}(-{})", self.names[i], m + 1)
    }
    pub fn display(&self, f: &MPoly) -> String {
        f.fmt_with(&|v| self.var_name(v))
    }
    pub fn weight_of(&self, m: &Monomial) -> usize {
        m.iter().map(|&(v, e)| (self.split(v).1 + 1) * e as usize).sum()
    }

    /// The derivation `T`.
    pub fn t(&self, f: &MPoly) -> MPoly {
        let vars: std::collections::BTreeSet<usize> = f.terms.keys().flat_map(|m| m.iter().map(|x| x.0)).collect();
        let mut out = MPoly::zero();
        for v in vars {
            let (i, m) = self.split(v);
            let tv = self.var(i, m + 1).scale(&Scalar::int(m as i64 + 1));
            out = out.add(&f.diff(v).mul(&tv));
        }
        out
    }
    pub fn t_pow(&self, f: &MPoly, k: usize) -> MPoly {
        let mut g = f.clone();
        for _ in 0..k {
            g = self.t(&g);
        }
        g
    }

    /// Parse a polynomial in single-letter base variables, e.g. `x^2+y^3`,
    /// `2xy - 3/2 x*y^2`. Letters not yet in the ring are appended.
    pub fn parse(&mut self, s: &str) -> Result<MPoly> {
        let mut out = MPoly::zero();
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (k, c) in cleaned.chars().enumerate() {
            if (c == '+' || c == '-') && k > 0 && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = c == '-';
            } else if (c == '+' || c == '-') && k == 0 {
                neg = c == '-';
            } else {
                cur.push(c);
            }
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let mut coeff = String::new();
            let chars: Vec<char> = t.chars().collect();
            let mut i = 0;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                coeff.push(chars[i]);
                i += 1;
            }
            let mut c = if coeff.is_empty() { Scalar::one() } else { Scalar::parse(&coeff)? };
            if neg {
                c = -c;
            }
            let mut term = MPoly::constant(c);
            while i < chars.len() {
                match chars[i] {
                    '*' => i += 1,
                    ch if ch.is_ascii_alphabetic() => {
                        let name = ch.to_string();
                        let idx = match self.names.iter().position(|x| *x == name) {
                            Some(p) => p,
                            None => {
                                self.names.push(name);
                                self.names.len() - 1
                            }
                        };
                        i += 1;
                        let mut e = 1u32;
                        if i < chars.len() && chars[i] == '^' {
                            i += 1;
                            let mut d = String::new();
                            while i < chars.len() && chars[i].is_ascii_digit() {
                                d.push(chars[i]);
                                i += 1;
                            }
                            e = d.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                        }
                        term = term.mul(&MPoly::var(idx).pow(e));
                    }
                    other => return Err(Error::Parse(format!("unexpected {other:?} in {s:?}"))),
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

/// Re-index a polynomial written in base variables `0..N` (the parse output)
/// into the ring's `(-1)`-jets; needed because parsing may grow `N`.
pub fn base_to_jets(r: &JetRing, f: &MPoly) -> MPoly {
    f.substitute(&|v| r.var(v, 0))
}

#[derive(Clone, Debug, Serialize)]
pub struct JetIdealTruncation {
    pub names: Vec<String>,
    pub order: usize,
    /// `generators[i][m] = T^m f_i`.
    #[serde(skip)]
    pub generators: Vec<Vec<MPoly>>,
    pub strings: Vec<Vec<String>>,
    /// Every `T^m` of a source monomial of degree `d` is homogeneous of
    /// weight `m + d`.
    pub weights_ok: bool,
}

/// `{T^m f_i : 0 ≤ m ≤ order}` with `f_i` given in `(-1)`-jets.
pub fn jet_ideal(r: &JetRing, gens: &[MPoly], order: usize) -> Result<JetIdealTruncation> {
    if order > 20 {
        return Err(Error::Unsupported("jet order above 20".into()));
    }
    let mut generators = Vec::new();
    let mut weights_ok = true;
    for f in gens {
        let mut list = vec![f.clone()];
        for m in 1..=order {
            list.push(r.t(&list[m - 1]));
        }
        for (mono, c) in &f.terms {
            let single = MPoly::constant(c.clone()).mul(&MPoly { terms: [(mono.clone(), Scalar::one())].into_iter().collect() });
            let d = r.weight_of(mono);
            let mut g = single;
            for m in 0..=order {
                weights_ok &= g.terms.keys().all(|x| r.weight_of(x) == m + d);
                g = r.t(&g);
            }
        }
        generators.push(list);
    }
    let strings = generators.iter().map(|l| l.iter().map(|g| r.display(g)).collect()).collect();
    Ok(JetIdealTruncation { names: r.names.clone(), order, generators, strings, weights_ok })
}

/// Independent oracle: `T^m f = m! [t^m] f(Σ_j x_{(-j-1)} t^j)`.
pub fn arc_oracle(r: &JetRing, f: &MPoly, order: usize) -> Vec<MPoly> {
    // series in t with MPoly coefficients
    let series_of = |i: usize| -> Vec<MPoly> { (0..=order).map(|j| r.var(i, j)).collect() };
    let mul = |a: &[MPoly], b: &[MPoly]| -> Vec<MPoly> {
        let mut c = vec![MPoly::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j <= order && !x.is_zero() && !y.is_zero() {
                    c[i + j] = c[i + j].add(&x.mul(y));
                }
            }
        }
        c
    };
    let mut total = vec![MPoly::zero(); order + 1];
    for (mono, c) in &f.terms {
        let mut acc = vec![MPoly::zero(); order + 1];
        acc[0] = MPoly::constant(c.clone());
        for &(v, e) in mono {
            let (i, m) = r.split(v);
            assert_eq!(m, 0, "oracle expects base variables");
            let s = series_of(i);
            for _ in 0..e {
                acc = mul(&acc, &s);
            }
        }
        for (t, a) in total.iter_mut().zip(acc) {
            *t = t.add(&a);
        }
    }
    let mut fact = Scalar::one();
    total
        .into_iter()
        .enumerate()
        .map(|(m, p)| {
            if m > 0 {
                fact = &fact * &Scalar::int(m as i64);
            }
            p.scale(&fact)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub left: usize,
    pub right: usize,
    pub combined: usize,
    pub equal: bool,
}

/// `J(X × Y) ≅ JX × JY` on truncated generator lists: the jet ideal of the
/// union of relations (right variables relabelled after the left ones) equals
/// the union of the two jet ideals.
pub fn jet_of_product(a: &[&str], b: &[&str], order: usize) -> Result<ProductReport> {
    let mut ra = JetRing::new(&[]);
    let fa: Vec<MPoly> = a.iter().map(|s| ra.parse(s)).collect::<Result<_>>()?;
    let mut rb = JetRing::new(&[]);
    let fb: Vec<MPoly> = b.iter().map(|s| rb.parse(s)).collect::<Result<_>>()?;
    let na = ra.n();
    let mut names = ra.names.clone();
    names.extend(rb.names.iter().map(|x| format!("{x}'")));
    let rc = JetRing { names };
    let fa_c: Vec<MPoly> = fa.iter().map(|f| base_to_jets(&rc, f)).collect();
    let fb_c: Vec<MPoly> = fb.iter().map(|f| f.substitute(&|v| rc.var(v + na, 0))).collect();
    let mut all = fa_c.clone();
    all.extend(fb_c.iter().cloned());
    let joint = jet_ideal(&rc, &all, order)?;
    // separate truncations in their own rings, then relabelled
    let ja = jet_ideal(&ra, &fa.iter().map(|f| base_to_jets(&ra, f)).collect::<Vec<_>>(), order)?;
    let jb = jet_ideal(&rb, &fb.iter().map(|f| base_to_jets(&rb, f)).collect::<Vec<_>>(), order)?;
    let relabel = |r: &JetRing, off: usize, g: &MPoly| {
        g.substitute(&|v| {
            let (i, m) = r.split(v);
            rc.var(i + off, m)
        })
    };
    let mut sep: Vec<MPoly> = ja.generators.iter().flatten().map(|g| relabel(&ra, 0, g)).collect();
    sep.extend(jb.generators.iter().flatten().map(|g| relabel(&rb, na, g)));
    let joint_flat: Vec<MPoly> = joint.generators.iter().flatten().cloned().collect();
    Ok(ProductReport {
        left: ja.generators.iter().flatten().count(),
        right: jb.generators.iter().flatten().count(),
        combined: joint_flat.len(),
        equal: sep == joint_flat,
    })
}

/// Poisson vertex algebra on `ℂ[J𝔤*]`-type rings: `{x_i λ x_j}` given on
/// base generators as `λ`-polynomials in base variables.
#[derive(Clone, Debug)]
pub struct JetPva {
    pub ring: JetRing,
    /// `table[i][j] = {x_i λ x_j}`.
    pub table: Vec<Vec<LambdaPoly>>,
}

fn lp_trim(mut a: LambdaPoly) -> LambdaPoly {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn lp_add(a: &LambdaPoly, b: &LambdaPoly) -> LambdaPoly {
    let n = a.len().max(b.len());
    let z = MPoly::zero();
    lp_trim((0..n).map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))).collect())
}

fn lp_scale_poly(a: &LambdaPoly, p: &MPoly) -> LambdaPoly {
    lp_trim(a.iter().map(|x| x.mul(p)).collect())
}

pub fn lp_eq(a: &LambdaPoly, b: &LambdaPoly) -> bool {
    lp_trim(a.clone()) == lp_trim(b.clone())
}

impl JetPva {
    /// Kirillov–Kostant structure `{x_λ y} = [x, y]` on `ℂ[J𝔤*]`.
    pub fn kirillov_kostant(l: &MatrixLie) -> JetPva {
        let names: Vec<&str> = l.names.iter().map(|s| s.as_str()).collect();
        let ring = JetRing::new(&names);
        let d = l.dim();
        let mut table = vec![vec![Vec::new(); d]; d];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut p = MPoly::zero();
                for (k, c) in l.bracket(i, j) {
                    p = p.add(&ring.var(*k, 0).scale(c));
                }
                *slot = lp_trim(vec![p]);
            }
        }
        JetPva { ring, table }
    }

    /// Jacobi identity of the table on base generators (the finite Poisson
    /// bracket; only `λ⁰` entries are supported here).
    pub fn validate(&self) -> Result<()> {
        let d = self.ring.n();
        if self.table.iter().flatten().any(|x| x.len() > 1) {
            return Ok(());
        }
        let br = |i: usize, p: &MPoly| -> MPoly {
            // {x_i, p} for p in base variables
            let mut out = MPoly::zero();
            for j in 0..d {
                let dp = p.diff(self.ring.jvar(j, 0));
                if !dp.is_zero() {
                    if let Some(t) = self.table[i][j].first() {
                        out = out.add(&dp.mul(t));
                    }
                }
            }
            out
        };
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let bc = self.table[b][c].first().cloned().unwrap_or_default();
                    let ac = self.table[a][c].first().cloned().unwrap_or_default();
                    let ab = self.table[a][b].first().cloned().unwrap_or_default();
                    // {a,{b,c}} - {b,{a,c}} - {{a,b},c}
                    let lhs = br(a, &bc).sub(&br(b, &ac));
                    let mut rhs = MPoly::zero();
                    for k in 0..d {
                        let dk = ab.diff(self.ring.jvar(k, 0));
                        if !dk.is_zero() {
                            rhs = rhs.add(&dk.mul(&self.table[k][c].first().cloned().unwrap_or_default()));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::JacobiViolation(format!("generators {a}, {b}, {c}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(λ + T)` applied to a λ-polynomial.
    fn lam_plus_t(&self, a: &LambdaPoly) -> LambdaPoly {
        let mut out = vec![MPoly::zero(); a.len() + 1];
        for (j, c) in a.iter().enumerate() {
            out[j + 1] = out[j + 1].add(c);
            out[j] = out[j].add(&self.ring.t(c));
        }
        lp_trim(out)
    }

    /// `{f_λ g}` by the master formula
    /// `Σ ∂g/∂u_j^{(n)} (λ+T)^n {u_i_{λ+T} u_j}_→ (-λ-T)^m ∂f/∂u_i^{(m)}`,
    /// with `u^{(m)} = m! x_{(-m-1)}`.
    pub fn bracket(&self, f: &MPoly, g: &MPoly) -> LambdaPoly {
        let vars = |p: &MPoly| -> std::collections::BTreeSet<usize> { p.terms.keys().flat_map(|m| m.iter().map(|x| x.0)).collect() };
        let fact = |m: usize| -> Scalar { (1..=m as i64).fold(Scalar::one(), |a, b| &a * &Scalar::int(b)) };
        let mut out: LambdaPoly = Vec::new();
        for vf in vars(f) {
            let (i, m) = self.ring.split(vf);
            let df = f.diff(vf).scale(&fact(m).inv().expect("nonzero"));
            // (-λ-T)^m ∂f
            let mut x: LambdaPoly = vec![df];
            for _ in 0..m {
                x = self.lam_plus_t(&x).iter().map(|p| p.scale(&Scalar::int(-1))).collect();
            }
            for vg in vars(g) {
                let (j, n) = self.ring.split(vg);
                let dg = g.diff(vg).scale(&fact(n).inv().expect("nonzero"));
                // Σ_k P_k (λ+T)^k x
                let mut y: LambdaPoly = Vec::new();
                let mut pw = x.clone();
                for pk in &self.table[i][j] {
                    y = lp_add(&y, &lp_scale_poly(&pw, pk));
                    pw = self.lam_plus_t(&pw);
                }
                for _ in 0..n {
                    y = self.lam_plus_t(&y);
                }
                out = lp_add(&out, &lp_scale_poly(&y, &dg));
            }
        }
        lp_trim(out)
    }

    /// `-{a_{-λ-T} b}` from `{a_μ b} = Σ μ^j B_j`.
    pub fn skew_of(&self, ab: &LambdaPoly) -> LambdaPoly {
        let mut out: LambdaPoly = Vec::new();
        for (j, bj) in ab.iter().enumerate() {
            let mut t = vec![bj.clone()];
            for _ in 0..j {
                t = self.lam_plus_t(&t).iter().map(|p| p.scale(&Scalar::int(-1))).collect();
            }
            out = lp_add(&out, &t);
        }
        out.iter().map(|p| p.scale(&Scalar::int(-1))).collect()
    }

    /// `{a_{λ+T} c}_→ b`.
    fn right_arrow(&self, ac: &LambdaPoly, b: &MPoly) -> LambdaPoly {
        let mut out: LambdaPoly = Vec::new();
        let mut pw: LambdaPoly = vec![b.clone()];
        for cj in ac {
            out = lp_add(&out, &lp_scale_poly(&pw, cj));
            pw = self.lam_plus_t(&pw);
        }
        out
    }

    fn bracket2(&self, a: &MPoly, b_lp: &LambdaPoly) -> BTreeMap<(usize, usize), MPoly> {
        // {a_λ Σ μ^j C_j} as coefficients of λ^i μ^j
        let mut out = BTreeMap::new();
        for (j, cj) in b_lp.iter().enumerate() {
            for (i, x) in self.bracket(a, cj).into_iter().enumerate() {
                if !x.is_zero() {
                    add2(&mut out, (i, j), &x);
                }
            }
        }
        out
    }

    pub fn check_triple(&self, a: &MPoly, b: &MPoly, c: &MPoly) -> PvaResiduals {
        let ab = self.bracket(a, b);
        let ba = self.bracket(b, a);
        // sesquilinearity
        let ta_b = self.bracket(&self.ring.t(a), b);
        let lam_ab: LambdaPoly = std::iter::once(MPoly::zero()).chain(ab.iter().map(|p| p.scale(&Scalar::int(-1)))).collect();
        let ses_left = lp_eq(&ta_b, &lam_ab);
        let a_tb = self.bracket(a, &self.ring.t(b));
        let ses_right = lp_eq(&a_tb, &self.lam_plus_t(&ab));
        let skew = lp_eq(&ba, &self.skew_of(&ab));
        // Jacobi: {a_λ{b_μ c}} - {b_μ{a_λ c}} = {{a_λ b}_{λ+μ} c}
        let bc = self.bracket(b, c);
        let ac = self.bracket(a, c);
        let mut lhs = self.bracket2(a, &bc);
        for ((j, i), x) in self.bracket2(b, &ac) {
            add2(&mut lhs, (i, j), &x.scale(&Scalar::int(-1)));
        }
        let mut rhs = BTreeMap::new();
        for (i, di) in ab.iter().enumerate() {
            for (l, e) in self.bracket(di, c).into_iter().enumerate() {
                // λ^i (λ+μ)^l
                for s in 0..=l {
                    let coef = Scalar::rational(crate::vertex::binom(l as i64, s as u32));
                    add2(&mut rhs, (i + s, l - s), &e.scale(&coef));
                }
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        rhs.retain(|_, v| !v.is_zero());
        let jacobi = lhs == rhs;
        // Leibniz on both sides
        let a_bc = self.bracket(a, &b.mul(c));
        let leib_left = lp_eq(&a_bc, &lp_add(&lp_scale_poly(&ab, c), &lp_scale_poly(&ac, b)));
        let ab_c = self.bracket(&a.mul(b), c);
        let leib_right = lp_eq(&ab_c, &lp_add(&self.right_arrow(&ac, b), &self.right_arrow(&bc, a)));
        PvaResiduals { sesquilinearity: ses_left && ses_right, skew, jacobi, leibniz: leib_left && leib_right }
    }

    /// Random homogeneous jet polynomial of weight in `1..=cap`.
    pub fn random_poly<R: Rng>(&self, cap: usize, rng: &mut R) -> MPoly {
        let w = rng.gen_range(1..=cap);
        let mut out = MPoly::zero();
        let terms = rng.gen_range(1..=2);
        for _ in 0..terms {
            let mut left = w;
            let mut p = MPoly::constant(Scalar::int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
            while left > 0 {
                let m = rng.gen_range(0..left);
                let i = rng.gen_range(0..self.ring.n());
                p = p.mul(&self.ring.var(i, m));
                left -= m + 1;
            }
            out = out.add(&p);
        }
        if out.is_zero() {
            self.ring.var(0, 0)
        } else {
            out
        }
    }

    /// PVA axioms on random triples of weight `≤ cap`.
    pub fn verify_axioms(&self, cap: usize, trials: usize, seed: u64) -> PvaReport {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut passed = 0;
        let mut weights_ok = true;
        for _ in 0..trials {
            let a = self.random_poly(cap, &mut rng);
            let b = self.random_poly(cap, &mut rng);
            let c = self.random_poly(cap, &mut rng);
            if self.check_triple(&a, &b, &c).all() {
                passed += 1;
            }
            let wa = self.ring.weight_of(a.terms.keys().next().expect("nonzero"));
            let wb = self.ring.weight_of(b.terms.keys().next().expect("nonzero"));
            for (j, x) in self.bracket(&a, &b).iter().enumerate() {
                weights_ok &= x.terms.keys().all(|m| self.ring.weight_of(m) + j + 1 == wa + wb);
            }
        }
        PvaReport { trials, passed, weights_ok, seed, pass: passed == trials && weights_ok }
    }

    /// `x_(m) p = m! [λ^m] {x_λ p}`.
    pub fn mode(&self, i: usize, m: usize, p: &MPoly) -> MPoly {
        let b = self.bracket(&self.ring.var(i, 0), p);
        let fact = (1..=m as i64).fold(Scalar::one(), |a, k| &a * &Scalar::int(k));
        b.get(m).cloned().unwrap_or_default().scale(&fact)
    }
}

fn add2(map: &mut BTreeMap<(usize, usize), MPoly>, k: (usize, usize), x: &MPoly) {
    let e = map.entry(k).or_default();
    *e = e.add(x);
}

#[derive(Clone, Debug, Serialize)]
pub struct PvaResiduals {
    pub sesquilinearity: bool,
    pub skew: bool,
    pub jacobi: bool,
    pub leibniz: bool,
}

impl PvaResiduals {
    pub fn all(&self) -> bool {
        self.sesquilinearity && self.skew && self.jacobi && self.leibniz
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PvaReport {
    pub trials: usize,
    pub passed: usize,
    /// The `λ^j` coefficient of `{a_λ b}` has weight `wt a + wt b - j - 1`.
    pub weights_ok: bool,
    pub seed: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JgActionReport {
    pub n: usize,
    pub checks: usize,
    pub failures: usize,
    pub pass: bool,
}

/// All jet monomials of weight exactly `w`.
pub fn jet_monomials(r: &JetRing, w: usize) -> Vec<MPoly> {
    fn rec(r: &JetRing, left: usize, min_var: usize, cur: &mut Vec<usize>, out: &mut Vec<MPoly>) {
        if left == 0 {
            let mut p = MPoly::one();
            for &v in cur.iter() {
                p = p.mul(&MPoly::var(v));
            }
            out.push(p);
            return;
        }
        for v in min_var..r.n() * left {
            let wt = r.split(v).1 + 1;
            if wt <= left {
                cur.push(v);
                rec(r, left - wt, v, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(r, w, 0, &mut Vec::new(), &mut out);
    out
}

/// `[x_(m), y_(n)] = [x, y]_(m+n)` on `ℂ[J sl_n*]` monomials of weight ≤ 3,
/// for basis elements `x, y` and `0 ≤ m, n ≤ 3`.
pub fn jg_action_check(n: usize) -> Result<JgActionReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported("jg_action_check needs n ≤ 3".into()));
    }
    let l = crate::lie::sl(n);
    let pva = JetPva::kirillov_kostant(&l);
    pva.validate()?;
    let d = l.dim();
    let mut monos = Vec::new();
    for w in 1..=3 {
        monos.extend(jet_monomials(&pva.ring, w));
    }
    let mut cache: BTreeMap<(usize, usize, usize), MPoly> = BTreeMap::new();
    let mut act = |i: usize, m: usize, pi: usize, p: &MPoly| -> MPoly { cache.entry((i, m, pi)).or_insert_with(|| pva.mode(i, m, p)).clone() };
    let mut checks = 0;
    let mut failures = 0;
    // mode actions applied to arbitrary polynomials (not cached)
    let apply = |i: usize, m: usize, p: &MPoly| pva.mode(i, m, p);
    for (pi, p) in monos.iter().enumerate() {
        for x in 0..d {
            for y in 0..d {
                for m in 0..=3 {
                    for k in 0..=3 {
                        let yp = act(y, k, pi, p);
                        let xp = act(x, m, pi, p);
                        let lhs = apply(x, m, &yp).sub(&apply(y, k, &xp));
                        let mut rhs = MPoly::zero();
                        for (z, c) in l.bracket(x, y) {
                            rhs = rhs.add(&apply(*z, m + k, p).scale(c));
                        }
                        checks += 1;
                        if lhs != rhs {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(JgActionReport { n, checks, failures, pass: failures == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_x() -> (JetRing, MPoly) {
        let mut r = JetRing::new(&[]);
        let f = r.parse("x^2").unwrap();
        let f = base_to_jets(&r, &f);
        (r, f)
    }

    #[test]
    fn x_squared_jets() {
        let (r, f) = ring_x();
        let j = jet_ideal(&r, &[f], 2).unwrap();
        assert_eq!(j.strings[0][0], "x(-1)^2");
        assert_eq!(j.strings[0][1], "(2)*x(-1)*x(-2)");
        let expect = r.var(0, 1).pow(2).scale(&Scalar::int(2)).add(&r.var(0, 0).mul(&r.var(0, 2)).scale(&Scalar::int(4)));
        assert_eq!(j.generators[0][2], expect);
        assert!(j.weights_ok);
    }

    #[test]
    fn constants_and_products() {
        let r = JetRing::new(&["x"]);
        assert!(r.t(&MPoly::constant(Scalar::int(5))).is_zero());
        let mut r = JetRing::new(&[]);
        let f = r.parse("xy").unwrap();
        let f = base_to_jets(&r, &f);
        let tf = r.t(&f);
        let expect = r.var(0, 1).mul(&r.var(1, 0)).add(&r.var(0, 0).mul(&r.var(1, 1)));
        assert_eq!(tf, expect);
    }

    #[test]
    fn oracle_matches() {
        for s in ["x^2", "xy", "x^2+y^3"] {
            let mut r = JetRing::new(&[]);
            let f = r.parse(s).unwrap();
            let f = base_to_jets(&r, &f);
            let j = jet_ideal(&r, std::slice::from_ref(&f), 10).unwrap();
            assert_eq!(j.generators[0], arc_oracle(&r, &f, 10), "{s}");
        }
    }

    #[test]
    fn product_of_jets() {
        let r = jet_of_product(&["x^2"], &["y^3-y"], 4).unwrap();
        assert!(r.equal);
        let r = jet_of_product(&["x^2"], &[], 3).unwrap();
        assert_eq!(r.right, 0);
        assert!(r.equal);
    }

    #[test]
    fn kirillov_kostant_sl2() {
        let l = crate::lie::sl(2);
        let p = JetPva::kirillov_kostant(&l);
        p.validate().unwrap();
        let (e, f, h) = (l.index("e12").unwrap(), l.index("e21").unwrap(), l.index("h1").unwrap());
        let ef = p.bracket(&p.ring.var(e, 0), &p.ring.var(f, 0));
        assert_eq!(ef, vec![p.ring.var(h, 0)]);
        let tef = p.bracket(&p.ring.t(&p.ring.var(e, 0)), &p.ring.var(f, 0));
        assert_eq!(tef, vec![MPoly::zero(), p.ring.var(h, 0).scale(&Scalar::int(-1))]);
        let rep = p.verify_axioms(3, 30, 11);
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn jg_action_sl2() {
        let r = jg_action_check(2).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn mode_beyond_weight_vanishes() {
        let l = crate::lie::sl(2);
        let p = JetPva::kirillov_kostant(&l);
        let x = p.ring.var(0, 0);
        assert!(p.mode(1, 3, &x).is_zero());
    }

    #[test]
    fn broken_table_is_rejected() {
        let l = crate::lie::sl(3);
        let mut p = JetPva::kirillov_kostant(&l);
        let (a, b) = (l.index("e12").unwrap(), l.index("e21").unwrap());
        p.table[a][b] = p.table[a][b].iter().map(|q| q.scale(&Scalar::int(2))).collect();
        p.table[b][a] = p.table[b][a].iter().map(|q| q.scale(&Scalar::int(2))).collect();
        assert!(matches!(p.validate(), Err(Error::JacobiViolation(_))));
    }

    #[test]
    fn jg_action_sl3() {
        assert!(jg_action_check(3).unwrap().pass);
    }
}
