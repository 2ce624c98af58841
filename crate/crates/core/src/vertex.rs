//! Lambda-bracket engine for vertex superalgebras given by generators and a
//! table of brackets that are linear in the generators (plus a central term).
//!
//! Every field is `a(z) = Σ a_(n) z^{-n-1}`; states are PBW monomials of
//! creation modes `a_(n)`, `n ≤ -1`, applied to `|0⟩`, with factors sorted by
//! `(generator index, mode)`. Termination relies on a positive "standard"
//! grading `sw` under which the bracket table is homogeneous.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rint, Rat, Scalar};

pub type Gen = u32;
pub type Mode = i32;
/// Sorted list of creation modes.
pub type Mono = Vec<(Gen, Mode)>;

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    pub odd: bool,
    /// Conformal weight (eigenvalue of `L_0` on the generator).
    #[serde(serialize_with = "ser_rat")]
    pub weight: Rat,
    /// Doubled standard weight; must be positive.
    pub sw2: i64,
    /// Fermionic charge.
    pub charge: i32,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `Σ c · T^(t) g` (divided powers) plus a multiple of `|0⟩` (key `None`).
pub type LinComb = BTreeMap<(Option<Gen>, u32), Scalar>;

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub gens: Vec<Generator>,
    /// `table[(a,b)][j]` is `a_(j) b`.
    table: HashMap<(Gen, Gen), Vec<LinComb>>,
}

pub fn binom(m: i64, j: u32) -> Rat {
    let mut num = Rat::one();
    for i in 0..j as i64 {
        num *= rint(m - i);
        num /= rint(i + 1);
    }
    num
}

fn binom_s(m: i64, j: u32) -> Scalar {
    Scalar::Q(binom(m, j))
}

impl Presentation {
    pub fn new(name: &str, gens: Vec<Generator>) -> Presentation {
        Presentation { name: name.into(), gens, table: HashMap::new() }
    }
    pub fn gen_index(&self, name: &str) -> Result<Gen> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as Gen).ok_or_else(|| Error::UnknownGenerator(name.into()))
    }
    pub fn gen(&self, g: Gen) -> &Generator {
        &self.gens[g as usize]
    }
    /// Set `a_(j) b` for all `j`; entries beyond the vector are zero.
    pub fn set_bracket(&mut self, a: Gen, b: Gen, coeffs: Vec<LinComb>) {
        let mut c = coeffs;
        for lc in c.iter_mut() {
            lc.retain(|_, v| !v.is_zero());
        }
        while c.last().is_some_and(|x| x.is_empty()) {
            c.pop();
        }
        if c.is_empty() {
            self.table.remove(&(a, b));
        } else {
            self.table.insert((a, b), c);
        }
    }
    pub fn bracket(&self, a: Gen, b: Gen) -> &[LinComb] {
        self.table.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }
    /// Fill in `[b_λ a]` from `[a_λ b]` by skew symmetry.
    pub fn set_bracket_with_skew(&mut self, a: Gen, b: Gen, coeffs: Vec<LinComb>) {
        self.set_bracket(a, b, coeffs);
        if a != b {
            let sk = self.skew_of(a, b);
            self.set_bracket(b, a, sk);
        }
    }
    fn parity_sign(&self, a: Gen, b: Gen) -> Scalar {
        if self.gen(a).odd && self.gen(b).odd {
            Scalar::int(-1)
        } else {
            Scalar::one()
        }
    }
    /// `b_(n) a = -p(a,b) Σ_i (-1)^{n+i} T^(i) (a_(n+i) b)` computed from the table.
    fn skew_of(&self, a: Gen, b: Gen) -> Vec<LinComb> {
        let ab = self.bracket(a, b).to_vec();
        let p = self.parity_sign(a, b);
        let mut out = vec![LinComb::new(); ab.len()];
        for (n, slot) in out.iter_mut().enumerate() {
            for (m, lc) in ab.iter().enumerate().skip(n) {
                let i = (m - n) as u32;
                let sign = if (n as u32 + i).is_multiple_of(2) { -&p } else { p.clone() };
                for ((g, t), c) in lc {
                    if g.is_none() && i > 0 {
                        continue;
                    }
                    let mult = if g.is_none() { Scalar::one() } else { binom_s((*t + i) as i64, i) };
                    let e = slot.entry((*g, *t + i)).or_insert_with(Scalar::zero);
                    *e = &*e + &(&(&sign * &mult) * c);
                }
            }
            slot.retain(|_, v| !v.is_zero());
        }
        out
    }
    /// Check skew consistency and weight/charge/parity homogeneity of the table.
    pub fn validate(&self) -> Result<()> {
        for g in &self.gens {
            if g.sw2 <= 0 {
                return Err(Error::InvalidPresentation(format!("generator {} needs positive standard weight", g.name)));
            }
        }
        let n = self.gens.len() as Gen;
        for a in 0..n {
            for b in 0..n {
                let ga = self.gen(a);
                let gb = self.gen(b);
                for (j, lc) in self.bracket(a, b).iter().enumerate() {
                    for (g, t) in lc.keys() {
                        let (w, sw2, ch, odd) = match g {
                            None => (Rat::zero(), 0, 0, false),
                            Some(g) => {
                                let gg = self.gen(*g);
                                (&gg.weight + rint(*t as i64), gg.sw2 + 2 * *t as i64, gg.charge, gg.odd)
                            }
                        };
                        let ew = &ga.weight + &gb.weight - rint(j as i64 + 1);
                        let esw = ga.sw2 + gb.sw2 - 2 * (j as i64 + 1);
                        if w != ew || sw2 != esw || ch != ga.charge + gb.charge || odd != (ga.odd ^ gb.odd) {
                            return Err(Error::InvalidPresentation(format!("bracket {}_({j}){} is not homogeneous", ga.name, gb.name)));
                        }
                    }
                }
                let sk = self.skew_of(a, b);
                let ba = self.bracket(b, a);
                let len = sk.len().max(ba.len());
                for j in 0..len {
                    let x = sk.get(j).cloned().unwrap_or_default();
                    let y = ba.get(j).cloned().unwrap_or_default();
                    if x != y {
                        return Err(Error::InvalidPresentation(format!("skew symmetry fails for ({}, {}) at j={j}", ga.name, gb.name)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Finite linear combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct State {
    pub terms: BTreeMap<Mono, Scalar>,
}

impl State {
    pub fn zero() -> State {
        State::default()
    }
    pub fn vacuum() -> State {
        State::mono(Vec::new(), Scalar::one())
    }
    pub fn mono(m: Mono, c: Scalar) -> State {
        let mut s = State::zero();
        s.add_term(m, c);
        s
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, m: Mono, c: Scalar) {
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
    pub fn add_scaled(&mut self, o: &State, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &o.terms {
            self.add_term(m.clone(), if c.is_one() { x.clone() } else { x * c });
        }
    }
    pub fn add(&self, o: &State) -> State {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }
    pub fn sub(&self, o: &State) -> State {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::int(-1));
        r
    }
    pub fn scale(&self, c: &Scalar) -> State {
        let mut r = State::zero();
        r.add_scaled(self, c);
        r
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// Apply a map to every coefficient (e.g. specialization of `k`).
    pub fn map_coeffs(&self, f: &dyn Fn(&Scalar) -> Scalar) -> State {
        let mut r = State::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }
    pub fn display(&self, p: &Presentation) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono: String = m.iter().map(|(g, n)| format!("{}({})", p.gen(*g).name, n)).collect();
            let neg = matches!(c, Scalar::Q(r) if r.is_negative());
            let abs = if neg { -c } else { c.clone() };
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if !abs.is_one() {
                if abs.is_rational() {
                    out.push_str(&format!("{abs}*"));
                } else {
                    out.push_str(&format!("({abs})*"));
                }
            }
            out.push_str(&mono);
            out.push_str("|0>");
        }
        out
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in &self.terms {
            write!(f, "[{c}] {m:?}; ")?;
        }
        Ok(())
    }
}

/// λ-polynomial `Σ λ^j/j! · coeffs[j]`.
pub type LambdaPoly = Vec<State>;

pub fn lambda_poly_eq(a: &LambdaPoly, b: &LambdaPoly) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|j| {
        let x = a.get(j).cloned().unwrap_or_default();
        let y = b.get(j).cloned().unwrap_or_default();
        x == y
    })
}

fn trim(mut p: LambdaPoly) -> LambdaPoly {
    while p.last().is_some_and(|s| s.is_zero()) {
        p.pop();
    }
    p
}

type GenKey = (Gen, Mode, Mono);
type ModeKey = (Mono, Mode, Mono);

/// Evaluation engine with memoization.
pub struct Engine {
    pub p: Presentation,
    gen_cache: RefCell<HashMap<GenKey, State>>,
    mode_cache: RefCell<HashMap<ModeKey, State>>,
}

impl Clone for Engine {
    /// Clones the presentation; caches start empty.
    fn clone(&self) -> Engine {
        Engine::new_unchecked(self.p.clone())
    }
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Engine({}, {} generators)", self.p.name, self.p.gens.len())
    }
}

impl Engine {
    pub fn new(p: Presentation) -> Result<Engine> {
        p.validate()?;
        Ok(Engine::new_unchecked(p))
    }
    /// Build without validating the table (used for negative controls).
    pub fn new_unchecked(p: Presentation) -> Engine {
        Engine { p, gen_cache: RefCell::new(HashMap::new()), mode_cache: RefCell::new(HashMap::new()) }
    }
    pub fn clear_cache(&self) {
        self.gen_cache.borrow_mut().clear();
        self.mode_cache.borrow_mut().clear();
    }

    pub fn mono_sw2(&self, m: &Mono) -> i64 {
        m.iter().map(|(g, n)| self.p.gen(*g).sw2 - 2 * (*n as i64 + 1)).sum()
    }
    pub fn mono_weight(&self, m: &Mono) -> Rat {
        let mut w = Rat::zero();
        for (g, n) in m {
            w += &self.p.gen(*g).weight - rint(*n as i64 + 1);
        }
        w
    }
    pub fn mono_charge(&self, m: &Mono) -> i32 {
        m.iter().map(|(g, _)| self.p.gen(*g).charge).sum()
    }
    pub fn mono_odd(&self, m: &Mono) -> bool {
        m.iter().filter(|(g, _)| self.p.gen(*g).odd).count() % 2 == 1
    }
    fn state_max_sw2(&self, s: &State) -> i64 {
        s.terms.keys().map(|m| self.mono_sw2(m)).max().unwrap_or(0)
    }
    /// Conformal weight of a homogeneous state.
    pub fn weight(&self, s: &State) -> Result<Option<Rat>> {
        let mut w: Option<Rat> = None;
        for m in s.terms.keys() {
            let x = self.mono_weight(m);
            if w.as_ref().is_some_and(|y| y != &x) {
                return Err(Error::NonHomogeneous("mixed conformal weights".into()));
            }
            w = Some(x);
        }
        Ok(w)
    }

    /// Single generator state `g_(-1)|0⟩`.
    pub fn gen_state(&self, g: Gen) -> State {
        State::mono(vec![(g, -1)], Scalar::one())
    }
    pub fn named(&self, name: &str) -> Result<State> {
        Ok(self.gen_state(self.p.gen_index(name)?))
    }

    /// `g_(m)` applied to a monomial.
    pub fn apply_gen_mono(&self, g: Gen, m: Mode, mono: &Mono) -> State {
        let gg = self.p.gen(g);
        if gg.sw2 + self.mono_sw2(mono) - 2 * (m as i64 + 1) < 0 {
            return State::zero();
        }
        if mono.is_empty() {
            return if m < 0 { State::mono(vec![(g, m)], Scalar::one()) } else { State::zero() };
        }
        let f1 = mono[0];
        if m < 0 && (g, m) <= f1 {
            if (g, m) == f1 && gg.odd {
                return State::zero();
            }
            let mut v = Vec::with_capacity(mono.len() + 1);
            v.push((g, m));
            v.extend_from_slice(mono);
            return State::mono(v, Scalar::one());
        }
        let key = (g, m, mono.clone());
        if let Some(s) = self.gen_cache.borrow().get(&key) {
            return s.clone();
        }
        let rest: Mono = mono[1..].to_vec();
        let mut out = State::zero();
        // x f1 rest = ± f1 (x rest) + [x, f1] rest
        let inner = self.apply_gen_mono(g, m, &rest);
        let sign = if gg.odd && self.p.gen(f1.0).odd { Scalar::int(-1) } else { Scalar::one() };
        let moved = self.apply_gen_state(f1.0, f1.1, &inner);
        out.add_scaled(&moved, &sign);
        let comm = self.commutator_on(g, m, f1.0, f1.1, &State::mono(rest, Scalar::one()));
        out.add_scaled(&comm, &Scalar::one());
        self.gen_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// `[g_(m), h_(n)] w` for generators `g`, `h`.
    fn commutator_on(&self, g: Gen, m: Mode, h: Gen, n: Mode, w: &State) -> State {
        let mut out = State::zero();
        for (j, lc) in self.p.bracket(g, h).iter().enumerate() {
            let cj = binom_s(m as i64, j as u32);
            if cj.is_zero() {
                continue;
            }
            let pmode = m + n - j as Mode;
            for ((gg, t), c) in lc {
                match gg {
                    None => {
                        if pmode == -1 {
                            out.add_scaled(w, &(&cj * c));
                        }
                    }
                    Some(x) => {
                        let b = binom_s(pmode as i64, *t);
                        if b.is_zero() {
                            continue;
                        }
                        let sign = if t % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
                        let coef = &(&(&cj * c) * &b) * &sign;
                        let r = self.apply_gen_state(*x, pmode - *t as Mode, w);
                        out.add_scaled(&r, &coef);
                    }
                }
            }
        }
        out
    }

    pub fn apply_gen_state(&self, g: Gen, m: Mode, s: &State) -> State {
        let mut out = State::zero();
        for (mono, c) in &s.terms {
            let r = self.apply_gen_mono(g, m, mono);
            out.add_scaled(&r, c);
        }
        out
    }

    /// Apply modes right to left: `word = [x_1, …, x_r]` gives `x_1 ⋯ x_r s`.
    pub fn apply_word(&self, word: &[(Gen, Mode)], s: &State) -> State {
        let mut cur = s.clone();
        for (g, m) in word.iter().rev() {
            cur = self.apply_gen_state(*g, *m, &cur);
        }
        cur
    }

    /// `a_(p)` for a monomial state `a` applied to a monomial `w`.
    fn mono_mode(&self, a: &Mono, p: Mode, w: &Mono) -> State {
        if a.is_empty() {
            return if p == -1 { State::mono(w.clone(), Scalar::one()) } else { State::zero() };
        }
        if self.mono_sw2(a) + self.mono_sw2(w) - 2 * (p as i64 + 1) < 0 {
            return State::zero();
        }
        let (g, q) = a[0];
        let s = (-q - 1) as u32;
        let xmode = |r: Mode| -> (Scalar, Mode) {
            // (T^(s) g)_(r) = (-1)^s C(r,s) g_(r-s)
            let c = binom_s(r as i64, s);
            let c = if s % 2 == 1 { -c } else { c };
            (c, r - s as Mode)
        };
        let wstate = State::mono(w.clone(), Scalar::one());
        if a.len() == 1 {
            let (c, mm) = xmode(p);
            if c.is_zero() {
                return State::zero();
            }
            return self.apply_gen_state(g, mm, &wstate).scale(&c);
        }
        let key = (a.clone(), p, w.clone());
        if let Some(r) = self.mode_cache.borrow().get(&key) {
            return r.clone();
        }
        let b: Mono = a[1..].to_vec();
        let sw_b = self.mono_sw2(&b);
        let sw_x = self.p.gen(g).sw2 + 2 * s as i64;
        let sw_w = self.mono_sw2(w);
        let sign = if self.p.gen(g).odd && self.mono_odd(&b) { Scalar::int(-1) } else { Scalar::one() };
        let mut out = State::zero();
        // (x_(-1) b)_(p) w = Σ_i x_(-1-i) b_(p+i) w + p(x,b) Σ_i b_(p-1-i) x_(i) w
        let mut i: i64 = 0;
        loop {
            let bm = p as i64 + i;
            if 2 * (bm + 1) > sw_b + sw_w {
                break;
            }
            let bw = self.mono_mode(&b, bm as Mode, w);
            if !bw.is_zero() {
                let (c, mm) = xmode(-1 - i as Mode);
                if !c.is_zero() {
                    out.add_scaled(&self.apply_gen_state(g, mm, &bw), &c);
                }
            }
            i += 1;
        }
        let mut i: i64 = 0;
        while 2 * (i + 1) <= sw_x + sw_w {
            let (c, mm) = xmode(i as Mode);
            if !c.is_zero() {
                let xw = self.apply_gen_state(g, mm, &wstate);
                for (m2, c2) in &xw.terms {
                    let r = self.mono_mode(&b, p - 1 - i as Mode, m2);
                    out.add_scaled(&r, &(&(&c * c2) * &sign));
                }
            }
            i += 1;
        }
        self.mode_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// `a_(m) v` for arbitrary states.
    pub fn mode_action(&self, a: &State, m: Mode, v: &State) -> State {
        let mut out = State::zero();
        for (am, ac) in &a.terms {
            for (vm, vc) in &v.terms {
                let r = self.mono_mode(am, m, vm);
                out.add_scaled(&r, &(ac * vc));
            }
        }
        out
    }

    /// `:ab: = a_(-1) b`.
    pub fn normally_ordered(&self, a: &State, b: &State) -> State {
        self.mode_action(a, -1, b)
    }

    /// `[a_λ b]` as the list of `a_(j) b`, `j ≥ 0`.
    pub fn lambda_bracket(&self, a: &State, b: &State) -> LambdaPoly {
        let top = (self.state_max_sw2(a) + self.state_max_sw2(b)) / 2;
        let mut out = Vec::new();
        for j in 0..=top.max(0) {
            out.push(self.mode_action(a, j as Mode, b));
        }
        trim(out)
    }

    /// Translation `T`, a derivation with `[T, g_(n)] = -n g_(n-1)`.
    pub fn translate(&self, a: &State) -> State {
        let mut out = State::zero();
        for (m, c) in &a.terms {
            out.add_scaled(&self.translate_mono(m), c);
        }
        out
    }
    fn translate_mono(&self, m: &[(Gen, Mode)]) -> State {
        if m.is_empty() {
            return State::zero();
        }
        let (g, n) = m[0];
        let rest = State::mono(m[1..].to_vec(), Scalar::one());
        let mut out = self.apply_gen_state(g, n - 1, &rest).scale(&Scalar::int(-(n as i64)));
        let tr = self.translate_mono(&m[1..]);
        out.add_scaled(&self.apply_gen_state(g, n, &tr), &Scalar::one());
        out
    }
    /// Divided power `T^i/i!`.
    pub fn translate_div(&self, a: &State, i: u32) -> State {
        let mut cur = a.clone();
        for j in 1..=i {
            cur = self.translate(&cur).scale(&Scalar::frac(1, j as i64));
        }
        cur
    }

    /// State of a table entry.
    pub fn lincomb_state(&self, lc: &LinComb) -> State {
        let mut out = State::zero();
        for ((g, t), c) in lc {
            match g {
                None => out.add_term(Vec::new(), c.clone()),
                Some(g) => out.add_term(vec![(*g, -1 - *t as Mode)], c.clone()),
            }
        }
        out
    }

    /// Parse `"e(-1)f(-2)|0>"`, `"2*e(-1)|0> - (k+1)*h(-2)|0>"`.
    pub fn parse_state(&self, expr: &str) -> Result<State> {
        let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |m: &str| Error::Parse(format!("{m} in '{expr}'"));
        let mut out = State::zero();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        if chars.is_empty() {
            return Err(bad("empty expression"));
        }
        while i < chars.len() {
            let mut sign = Scalar::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = Scalar::int(-1);
                }
                i += 1;
            }
            // optional coefficient: parenthesized scalar or rational literal followed by '*'
            let mut coef = Scalar::one();
            if i < chars.len() && chars[i] == '(' {
                let mut depth = 0;
                let st = i;
                while i < chars.len() {
                    if chars[i] == '(' {
                        depth += 1;
                    } else if chars[i] == ')' {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    i += 1;
                }
                let inner: String = chars[st + 1..i].iter().collect();
                coef = Scalar::parse(&inner)?;
                i += 1;
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                }
            } else if i < chars.len() && chars[i].is_ascii_digit() {
                let st = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let lit: String = chars[st..i].iter().collect();
                coef = Scalar::parse(&lit)?;
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                }
            }
            let mut word = Vec::new();
            loop {
                if i + 3 <= chars.len() && chars[i..i + 3] == ['|', '0', '>'] {
                    i += 3;
                    break;
                }
                let st = i;
                while i < chars.len() && chars[i] != '(' && chars[i] != '|' {
                    i += 1;
                }
                if i >= chars.len() || chars[i] != '(' || st == i {
                    return Err(bad("expected generator mode or |0>"));
                }
                let name: String = chars[st..i].iter().collect();
                let g = self.p.gen_index(&name)?;
                i += 1;
                let st = i;
                while i < chars.len() && chars[i] != ')' {
                    i += 1;
                }
                let m: Mode = chars[st..i].iter().collect::<String>().parse().map_err(|_| bad("bad mode"))?;
                i += 1;
                word.push((g, m));
            }
            let st = self.apply_word(&word, &State::vacuum());
            out.add_scaled(&st, &(&sign * &coef));
        }
        Ok(out)
    }

    // ---- second evaluation path: Wick recursion ----

    /// `[a_λ b]` computed from the table through the non-commutative Wick
    /// formula, sesquilinearity and skew symmetry; only `(-1)`-products use
    /// the mode machinery.
    pub fn lambda_bracket_wick(&self, a: &State, b: &State) -> LambdaPoly {
        let mut out: LambdaPoly = Vec::new();
        for (am, ac) in &a.terms {
            for (bm, bc) in &b.terms {
                let r = self.wick_mono(am, bm);
                add_poly(&mut out, &r, &(ac * bc));
            }
        }
        trim(out)
    }

    fn wick_mono(&self, a: &Mono, b: &Mono) -> LambdaPoly {
        if b.is_empty() || a.is_empty() {
            return Vec::new();
        }
        let (g, q) = b[0];
        let s = (-q - 1) as u32;
        let rest: Mono = b[1..].to_vec();
        let rest_state = State::mono(rest.clone(), Scalar::one());
        let x_state = State::mono(vec![(g, q)], Scalar::one());
        // [a_λ x] with x = T^(s) g: (λ+T)^s/s! [a_λ g]
        let ag = self.wick_mono_gen(a, g);
        let ax = self.lambda_shift_translate(&ag, s);
        let a_state = State::mono(a.clone(), Scalar::one());
        let pa = self.mono_odd(a);
        let px = self.p.gen(g).odd;
        let sign = if pa && px { Scalar::int(-1) } else { Scalar::one() };
        let mut out: LambdaPoly = Vec::new();
        // :[a_λ x] b':
        for (j, c) in ax.iter().enumerate() {
            let t = self.normally_ordered(c, &rest_state);
            add_at(&mut out, j, &t, &Scalar::one());
        }
        // p(a,x) :x [a_λ b']:
        if !rest.is_empty() {
            let ab = self.wick_mono_state(&a_state, &rest);
            for (j, c) in ab.iter().enumerate() {
                let t = self.normally_ordered(&x_state, c);
                add_at(&mut out, j, &t, &sign);
            }
            // ∫_0^λ [[a_λ x]_μ b'] dμ: coefficient of λ^n/n! is Σ C(n,j) (c_j)_(n-1-j) b'
            for (j, cj) in ax.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let inner = self.lambda_bracket_wick(cj, &rest_state);
                for (l, v) in inner.iter().enumerate() {
                    let n = j + l + 1;
                    add_at(&mut out, n, v, &binom_s(n as i64, j as u32));
                }
            }
        }
        trim(out)
    }

    fn wick_mono_state(&self, a: &State, b: &Mono) -> LambdaPoly {
        let mut out = Vec::new();
        for (am, ac) in &a.terms {
            add_poly(&mut out, &self.wick_mono(am, b), ac);
        }
        out
    }

    /// `[a_λ g]` for a generator `g`: table lookup if `a` is a generator,
    /// otherwise skew symmetry applied to `[g_λ a]`.
    fn wick_mono_gen(&self, a: &Mono, g: Gen) -> LambdaPoly {
        if a.len() == 1 {
            let (h, q) = a[0];
            let s = (-q - 1) as u32;
            // [T^(s) h _λ g] = (-λ)^s/s! [h_λ g]
            let base: LambdaPoly = self.p.bracket(h, g).iter().map(|lc| self.lincomb_state(lc)).collect();
            let mut out = Vec::new();
            let sign = if s.is_multiple_of(2) { Scalar::one() } else { Scalar::int(-1) };
            for (j, c) in base.iter().enumerate() {
                // λ^s/s! · λ^j/j! = C(s+j, s) λ^{s+j}/(s+j)!
                add_at(&mut out, j + s as usize, c, &(&sign * &binom_s((s as usize + j) as i64, s)));
            }
            return trim(out);
        }
        let gstate = self.gen_state(g);
        let ga = self.lambda_bracket_wick(&gstate, &State::mono(a.clone(), Scalar::one()));
        let p = if self.p.gen(g).odd && self.mono_odd(a) { Scalar::int(-1) } else { Scalar::one() };
        self.skew(&ga, &p)
    }

    /// From `[b_λ a]` return `[a_λ b] = -p Σ_j (-λ-T)^j/j! b_(j)a`.
    pub fn skew(&self, ba: &LambdaPoly, p: &Scalar) -> LambdaPoly {
        let mut out = Vec::new();
        for u in 0..ba.len() {
            let mut acc = State::zero();
            for (j, c) in ba.iter().enumerate().skip(u) {
                let sign = if j % 2 == 0 { -p } else { p.clone() };
                acc.add_scaled(&self.translate_div(c, (j - u) as u32), &sign);
            }
            out.push(acc);
        }
        trim(out)
    }

    /// `(λ+T)^s/s!` applied to a λ-polynomial.
    fn lambda_shift_translate(&self, p: &LambdaPoly, s: u32) -> LambdaPoly {
        let mut out = Vec::new();
        for (j, c) in p.iter().enumerate() {
            for u in 0..=s {
                let v = s - u;
                let t = self.translate_div(c, v);
                add_at(&mut out, j + u as usize, &t, &binom_s((j + u as usize) as i64, u));
            }
        }
        trim(out)
    }
}

fn add_at(p: &mut LambdaPoly, j: usize, s: &State, c: &Scalar) {
    if p.len() <= j {
        p.resize(j + 1, State::zero());
    }
    p[j].add_scaled(s, c);
}

fn add_poly(p: &mut LambdaPoly, q: &LambdaPoly, c: &Scalar) {
    for (j, s) in q.iter().enumerate() {
        add_at(p, j, s, c);
    }
}

/// Residuals of the vertex-algebra identities on one triple.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomResiduals {
    pub sesquilinearity: bool,
    pub skew: bool,
    pub jacobi: bool,
    pub wick_left: bool,
    pub wick_right: bool,
    pub two_paths: bool,
}

impl AxiomResiduals {
    pub fn all(&self) -> bool {
        self.sesquilinearity && self.skew && self.jacobi && self.wick_left && self.wick_right && self.two_paths
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub presentation: String,
    pub trials: usize,
    pub weight_cap: i64,
    pub seed: u64,
    pub passed: usize,
    pub pass: bool,
}

impl Engine {
    fn sign_ab(&self, a: &State, b: &State) -> Scalar {
        let pa = a.terms.keys().next().is_some_and(|m| self.mono_odd(m));
        let pb = b.terms.keys().next().is_some_and(|m| self.mono_odd(m));
        if pa && pb {
            Scalar::int(-1)
        } else {
            Scalar::one()
        }
    }

    /// Check all identities on the triple `(a, b, c)` of parity-homogeneous states.
    pub fn check_triple(&self, a: &State, b: &State, c: &State) -> AxiomResiduals {
        let ab = self.lambda_bracket(a, b);
        let ba = self.lambda_bracket(b, a);
        let pab = self.sign_ab(a, b);
        // sesquilinearity
        let ta = self.translate(a);
        let tab = self.lambda_bracket(&ta, b);
        let ses1 = {
            // [Ta_λ b] = -λ [a_λ b]: coefficient j is -j·(a_(j-1)b)
            let mut rhs = Vec::new();
            for (j, s) in ab.iter().enumerate() {
                add_at(&mut rhs, j + 1, s, &Scalar::int(-(j as i64 + 1)));
            }
            lambda_poly_eq(&tab, &rhs)
        };
        let tb = self.translate(b);
        let atb = self.lambda_bracket(a, &tb);
        let ses2 = {
            let mut rhs = Vec::new();
            for (j, s) in ab.iter().enumerate() {
                add_at(&mut rhs, j + 1, s, &Scalar::int(j as i64 + 1));
                add_at(&mut rhs, j, &self.translate(s), &Scalar::one());
            }
            lambda_poly_eq(&atb, &rhs)
        };
        let skew = lambda_poly_eq(&ba, &self.skew(&ab, &pab));
        // Jacobi in modes: a_(m) b_(n) c - p b_(n) a_(m) c = Σ C(m,j) (a_(j)b)_(m+n-j) c
        let top_a = self.state_max_sw2(a) / 2 + self.state_max_sw2(b) / 2 + self.state_max_sw2(c) / 2 + 1;
        let mut jacobi = true;
        for m in 0..=top_a.min(4) as Mode {
            for n in 0..=top_a.min(4) as Mode {
                let bc = self.mode_action(b, n, c);
                let lhs1 = self.mode_action(a, m, &bc);
                let ac = self.mode_action(a, m, c);
                let lhs2 = self.mode_action(b, n, &ac);
                let lhs = lhs1.sub(&lhs2.scale(&pab));
                let mut rhs = State::zero();
                for (j, s) in ab.iter().enumerate() {
                    if j as Mode > m {
                        break;
                    }
                    rhs.add_scaled(&self.mode_action(s, m + n - j as Mode, c), &binom_s(m as i64, j as u32));
                }
                if lhs != rhs {
                    jacobi = false;
                }
            }
        }
        // left Wick: a_(n)(b_(-1)c) = (a_(n)b)_(-1)c + p b_(-1)(a_(n)c) + Σ_{j<n} C(n,j)(a_(j)b)_(n-1-j)c
        let bc = self.normally_ordered(b, c);
        let abc = self.lambda_bracket(a, &bc);
        let ac = self.lambda_bracket(a, c);
        let top = abc.len().max(ab.len() + ac.len() + 2);
        let mut wl = true;
        for n in 0..top {
            let mut rhs = State::zero();
            if let Some(s) = ab.get(n) {
                rhs.add_scaled(&self.normally_ordered(s, c), &Scalar::one());
            }
            if let Some(s) = ac.get(n) {
                rhs.add_scaled(&self.normally_ordered(b, s), &pab);
            }
            for j in 0..n {
                if let Some(s) = ab.get(j) {
                    rhs.add_scaled(&self.mode_action(s, (n - 1 - j) as Mode, c), &binom_s(n as i64, j as u32));
                }
            }
            let lhs = abc.get(n).cloned().unwrap_or_default();
            if lhs != rhs {
                wl = false;
            }
        }
        // right Wick: (a_(-1)b)_(n) c = Σ_j a_(-1-j) b_(n+j) c + p Σ_j b_(n-1-j) a_(j) c
        let nab = self.normally_ordered(a, b);
        let nabc = self.lambda_bracket(&nab, c);
        let swc = self.state_max_sw2(c);
        let mut wr = true;
        for n in 0..nabc.len() + 2 {
            let mut rhs = State::zero();
            let mut j = 0i64;
            while 2 * (n as i64 + j + 1) <= self.state_max_sw2(b) + swc {
                let bc = self.mode_action(b, (n as i64 + j) as Mode, c);
                rhs.add_scaled(&self.mode_action(a, (-1 - j) as Mode, &bc), &Scalar::one());
                j += 1;
            }
            let mut j = 0i64;
            while 2 * (j + 1) <= self.state_max_sw2(a) + swc {
                let acj = self.mode_action(a, j as Mode, c);
                rhs.add_scaled(&self.mode_action(b, (n as i64 - 1 - j) as Mode, &acj), &pab);
                j += 1;
            }
            let lhs = nabc.get(n).cloned().unwrap_or_default();
            if lhs != rhs {
                wr = false;
            }
        }
        let two = lambda_poly_eq(&ab, &self.lambda_bracket_wick(a, b));
        AxiomResiduals { sesquilinearity: ses1 && ses2, skew, jacobi, wick_left: wl, wick_right: wr, two_paths: two }
    }

    /// All PBW monomials with doubled standard weight exactly `sw2`.
    pub fn monomials_sw2(&self, sw2: i64) -> Vec<Mono> {
        let mut modes: Vec<(Gen, Mode, i64)> = Vec::new();
        for (g, gen) in self.p.gens.iter().enumerate() {
            let mut n: Mode = -1;
            loop {
                let w = gen.sw2 - 2 * (n as i64 + 1);
                if w > sw2 {
                    break;
                }
                modes.push((g as Gen, n, w));
                n -= 1;
            }
        }
        modes.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enum_monos(&modes, 0, sw2, &mut cur, &mut out);
        out
    }
    fn enum_monos(&self, modes: &[(Gen, Mode, i64)], start: usize, left: i64, cur: &mut Mono, out: &mut Vec<Mono>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..modes.len() {
            let (g, n, w) = modes[i];
            if w > left {
                continue;
            }
            let odd = self.p.gen(g).odd;
            cur.push((g, n));
            self.enum_monos(modes, if odd { i + 1 } else { i }, left - w, cur, out);
            cur.pop();
        }
    }

    /// Random monomial state with doubled standard weight in `1..=cap2`.
    pub fn random_state<R: Rng>(&self, cap2: i64, rng: &mut R) -> State {
        loop {
            let w = rng.gen_range(1..=cap2);
            let ms = self.monomials_sw2(w);
            if ms.is_empty() {
                continue;
            }
            let m = ms[rng.gen_range(0..ms.len())].clone();
            let c = Scalar::int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
            let mut s = State::mono(m.clone(), c);
            // optionally add a second monomial of the same weight and parity
            if rng.gen_bool(0.3) {
                let odd = self.mono_odd(&m);
                let same: Vec<&Mono> = ms.iter().filter(|x| self.mono_odd(x) == odd).collect();
                let m2 = same[rng.gen_range(0..same.len())].clone();
                s.add_term(m2, Scalar::int(rng.gen_range(1..=2)));
            }
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Randomized axiom suite on states of standard weight ≤ `weight_cap`.
    pub fn verify_axioms(&self, weight_cap: i64, trials: usize, seed: u64) -> Result<AxiomReport> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut passed = 0;
        for _ in 0..trials {
            let a = self.random_state(2 * weight_cap, &mut rng);
            let b = self.random_state(2 * weight_cap, &mut rng);
            let c = self.random_state(2 * weight_cap, &mut rng);
            let r = self.check_triple(&a, &b, &c);
            if !r.all() {
                return Err(Error::AxiomViolation {
                    axiom: format!("{r:?}"),
                    detail: format!("a = {}, b = {}, c = {}", a.display(&self.p), b.display(&self.p), c.display(&self.p)),
                });
            }
            passed += 1;
        }
        Ok(AxiomReport { presentation: self.p.name.clone(), trials, weight_cap, seed, passed, pass: passed == trials })
    }

    /// Dimension of the span of the states (exact rank over Q(k)).
    pub fn span_rank(&self, states: &[State]) -> usize {
        let (rows, ncols) = states_to_rows(states);
        crate::linalg::rank(&rows, ncols)
    }
}

/// Coordinates of states against the union of their monomial supports.
pub fn states_to_rows(states: &[State]) -> (Vec<Vec<Scalar>>, usize) {
    let mut idx: BTreeMap<Mono, usize> = BTreeMap::new();
    for s in states {
        for m in s.terms.keys() {
            let n = idx.len();
            idx.entry(m.clone()).or_insert(n);
        }
    }
    let ncols = idx.len();
    let rows = states
        .iter()
        .map(|s| {
            let mut r = vec![Scalar::zero(); ncols];
            for (m, c) in &s.terms {
                r[idx[m]] = c.clone();
            }
            r
        })
        .collect();
    (rows, ncols)
}

/// Express `target` as a combination of `basis` states, if possible.
pub fn solve_in_span(basis: &[State], target: &State) -> Option<Vec<Scalar>> {
    let mut all = basis.to_vec();
    all.push(target.clone());
    let (rows, _) = states_to_rows(&all);
    let t = rows.last().unwrap().clone();
    let cols: Vec<Vec<Scalar>> = rows[..basis.len()].to_vec();
    crate::linalg::solve_columns(&cols, &t)
}

/// Convenience: build a `LinComb` from `(generator, derivative order, coeff)` triples.
pub fn lin(terms: &[(Option<Gen>, u32, Scalar)]) -> LinComb {
    let mut lc = LinComb::new();
    for (g, t, c) in terms {
        let e = lc.entry((*g, *t)).or_insert_with(Scalar::zero);
        *e = &*e + c;
    }
    lc.retain(|_, v| !v.is_zero());
    lc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg() -> Engine {
        let mut p = Presentation::new("heis", vec![Generator { name: "b".into(), odd: false, weight: rint(1), sw2: 2, charge: 0 }]);
        p.set_bracket(0, 0, vec![LinComb::new(), lin(&[(None, 0, Scalar::one())])]);
        Engine::new(p).unwrap()
    }

    fn fermion() -> Engine {
        let mut p = Presentation::new(
            "bc",
            vec![
                Generator { name: "psi".into(), odd: true, weight: rint(0), sw2: 1, charge: -1 },
                Generator { name: "psis".into(), odd: true, weight: rint(1), sw2: 1, charge: 1 },
            ],
        );
        p.set_bracket_with_skew(0, 1, vec![lin(&[(None, 0, Scalar::one())])]);
        Engine::new(p).unwrap()
    }

    #[test]
    fn heisenberg_basics() {
        let e = heisenberg();
        let b = e.named("b").unwrap();
        assert_eq!(e.lambda_bracket(&b, &b), vec![State::zero(), State::vacuum()]);
        let bb = e.normally_ordered(&b, &b);
        assert_eq!(bb, State::mono(vec![(0, -1), (0, -1)], Scalar::one()));
        assert_eq!(e.translate(&State::vacuum()), State::zero());
        assert_eq!(e.translate(&b), State::mono(vec![(0, -2)], Scalar::one()));
        assert_eq!(e.normally_ordered(&State::vacuum(), &b), b);
        for m in 0..4 {
            assert!(e.mode_action(&b, m, &State::vacuum()).is_zero());
        }
        // b_(1) :bb: = 2b
        assert_eq!(e.mode_action(&b, 1, &bb), b.scale(&Scalar::int(2)));
    }

    #[test]
    fn fermion_square_vanishes() {
        let e = fermion();
        let ps = e.named("psis").unwrap();
        assert!(e.normally_ordered(&ps, &ps).is_zero());
        let p = e.named("psi").unwrap();
        assert_eq!(e.lambda_bracket(&p, &ps), vec![State::vacuum()]);
    }

    #[test]
    fn parse_and_display() {
        let e = heisenberg();
        let s = e.parse_state("b(-1)b(-2)|0> - 1/2*b(-3)|0>").unwrap();
        assert_eq!(e.parse_state(&s.display(&e.p)).unwrap(), s);
        assert!(e.parse_state("x(-1)|0>").is_err());
        assert!(e.parse_state("b(-1)").is_err());
    }

    #[test]
    fn axioms_small() {
        heisenberg().verify_axioms(3, 20, 1).unwrap();
        fermion().verify_axioms(3, 20, 2).unwrap();
    }

    #[test]
    fn corrupted_table_detected() {
        // [b_λ b] = 1 (no λ) breaks skew symmetry
        let mut p = Presentation::new("bad", vec![Generator { name: "b".into(), odd: false, weight: rint(1), sw2: 2, charge: 0 }]);
        p.set_bracket(0, 0, vec![lin(&[(None, 0, Scalar::one())])]);
        assert!(p.validate().is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(-1, 3), rint(-1));
        assert_eq!(binom(5, 2), rint(10));
        assert_eq!(binom(2, 3), rint(0));
        assert_eq!(binom(-2, 2), rint(3));
    }
}
