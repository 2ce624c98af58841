//! Finite-dimensional BRST reduction: `C(𝔤) = U(gl_n) ⊗ Cl(𝔫 ⊕ 𝔫*)`, its
//! classical limit `C[𝔤*] ⊗ Cl̄`, the differentials `ad Q` and `ad Q̄`, and
//! filtered cohomology.
//!
//! Kazhdan degrees (undoubled): `x ∈ 𝔤_j ↦ 1 - j`, `x*_α ↦ ht α`,
//! `x_α ↦ 1 - ht α`. Products add degrees, brackets lower them by one, and
//! `Q` is homogeneous of degree 1 in the classical limit. Reports index
//! degrees doubled, so that the invariant of order `i` sits in degree `2i`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{eij_name, LieData};
use crate::linalg::rank;
use crate::scalar::{rat, Rat};

pub type Word = Vec<u16>;

/// Linear combination of normally ordered words.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Elem(pub BTreeMap<Word, Rat>);

impl Elem {
    pub fn zero() -> Elem {
        Elem::default()
    }
    pub fn constant(c: Rat) -> Elem {
        let mut e = Elem::zero();
        e.add_term(Vec::new(), c);
        e
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            let w: Vec<Word> = self.0.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
            for k in w {
                self.0.remove(&k);
            }
        }
    }
    pub fn add_scaled(&mut self, o: &Elem, c: &Rat) {
        for (w, v) in &o.0 {
            self.add_term(w.clone(), v * c);
        }
    }
    pub fn add(&self, o: &Elem) -> Elem {
        let mut r = self.clone();
        r.add_scaled(o, &Rat::one());
        r
    }
    pub fn sub(&self, o: &Elem) -> Elem {
        let mut r = self.clone();
        r.add_scaled(o, &-Rat::one());
        r
    }
    pub fn scale(&self, c: &Rat) -> Elem {
        let mut r = Elem::zero();
        r.add_scaled(self, c);
        r
    }
}

/// Generated superalgebra with a bracket table on generators; either the
/// enveloping (quantum) algebra or its supercommutative Poisson limit.
pub struct SuperAlg {
    pub names: Vec<String>,
    pub odd: Vec<bool>,
    pub degree: Vec<i64>,
    pub charge: Vec<i32>,
    pub quantum: bool,
    table: HashMap<(u16, u16), Elem>,
    cache: RefCell<HashMap<(u16, Word), Elem>>,
}

impl SuperAlg {
    pub fn gen(&self, g: u16) -> Elem {
        let mut e = Elem::zero();
        e.add_term(vec![g], Rat::one());
        e
    }
    fn bracket_gen(&self, a: u16, b: u16) -> Elem {
        self.table.get(&(a, b)).cloned().unwrap_or_default()
    }
    pub fn word_odd(&self, w: &[u16]) -> bool {
        w.iter().filter(|g| self.odd[**g as usize]).count() % 2 == 1
    }
    pub fn word_degree(&self, w: &[u16]) -> i64 {
        w.iter().map(|g| self.degree[*g as usize]).sum()
    }
    pub fn word_charge(&self, w: &[u16]) -> i32 {
        w.iter().map(|g| self.charge[*g as usize]).sum()
    }
    fn sign(&self, a: u16, b: u16) -> Rat {
        if self.odd[a as usize] && self.odd[b as usize] {
            -Rat::one()
        } else {
            Rat::one()
        }
    }

    /// `g · w` in normal form.
    fn mul_gen_word(&self, g: u16, w: &Word) -> Elem {
        if w.is_empty() || g < w[0] {
            let mut v = vec![g];
            v.extend_from_slice(w);
            let mut e = Elem::zero();
            e.add_term(v, Rat::one());
            return e;
        }
        if g == w[0] && self.odd[g as usize] {
            // g² = ½[g,g] in the quantum case, 0 classically
            if !self.quantum {
                return Elem::zero();
            }
            let half = self.bracket_gen(g, g).scale(&rat(1, 2));
            return self.mul(&half, &word_elem(&w[1..]));
        }
        if g == w[0] {
            let mut v = vec![g];
            v.extend_from_slice(w);
            let mut e = Elem::zero();
            e.add_term(v, Rat::one());
            return e;
        }
        let key = (g, w.clone());
        if let Some(r) = self.cache.borrow().get(&key) {
            return r.clone();
        }
        let rest: Word = w[1..].to_vec();
        let inner = self.mul_gen_word(g, &rest);
        let mut out = Elem::zero();
        for (iw, c) in &inner.0 {
            out.add_scaled(&self.mul_gen_word(w[0], iw), &(c * self.sign(g, w[0])));
        }
        if self.quantum {
            let br = self.bracket_gen(g, w[0]);
            if !br.is_zero() {
                out.add_scaled(&self.mul(&br, &word_elem(&rest)), &Rat::one());
            }
        }
        self.cache.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (aw, ac) in &a.0 {
            let mut cur = Elem::zero();
            for (bw, bc) in &b.0 {
                cur.add_term(bw.clone(), ac * bc);
            }
            for g in aw.iter().rev() {
                let mut nxt = Elem::zero();
                for (w, c) in &cur.0 {
                    nxt.add_scaled(&self.mul_gen_word(*g, w), c);
                }
                cur = nxt;
            }
            out.add_scaled(&cur, &Rat::one());
        }
        out
    }

    fn parity_split(&self, a: &Elem) -> [(bool, Elem); 2] {
        let mut ev = Elem::zero();
        let mut od = Elem::zero();
        for (w, c) in &a.0 {
            if self.word_odd(w) {
                od.add_term(w.clone(), c.clone());
            } else {
                ev.add_term(w.clone(), c.clone());
            }
        }
        [(false, ev), (true, od)]
    }

    /// Supercommutator (quantum) or Poisson bracket (classical).
    pub fn bracket(&self, a: &Elem, b: &Elem) -> Elem {
        if !self.quantum {
            let mut out = Elem::zero();
            for (aw, ac) in &a.0 {
                for (bw, bc) in &b.0 {
                    out.add_scaled(&self.poisson_words(aw, bw), &(ac * bc));
                }
            }
            return out;
        }
        let mut out = Elem::zero();
        for (pa, ea) in self.parity_split(a) {
            for (pb, eb) in self.parity_split(b) {
                if ea.is_zero() || eb.is_zero() {
                    continue;
                }
                let s = if pa && pb { Rat::one() } else { -Rat::one() };
                out.add_scaled(&self.mul(&ea, &eb), &Rat::one());
                out.add_scaled(&self.mul(&eb, &ea), &s);
            }
        }
        out
    }

    fn poisson_words(&self, a: &[u16], b: &[u16]) -> Elem {
        if a.is_empty() || b.is_empty() {
            return Elem::zero();
        }
        if a.len() == 1 && b.len() == 1 {
            return self.bracket_gen(a[0], b[0]);
        }
        if b.len() > 1 {
            // {a, v b'} = {a, v} b' + (-1)^{|a||v|} v {a, b'}
            let v = b[0];
            let rest = &b[1..];
            let mut out = self.mul(&self.poisson_words(a, &[v]), &word_elem(rest));
            let s = if self.word_odd(a) && self.odd[v as usize] { -Rat::one() } else { Rat::one() };
            out.add_scaled(&self.mul(&self.gen(v), &self.poisson_words(a, rest)), &s);
            return out;
        }
        // {v a', b} = v {a', b} + (-1)^{|a'||b|} {v, b} a'
        let v = a[0];
        let rest = &a[1..];
        let mut out = self.mul(&self.gen(v), &self.poisson_words(rest, b));
        let s = if self.word_odd(rest) && self.word_odd(b) { -Rat::one() } else { Rat::one() };
        out.add_scaled(&self.mul(&self.poisson_words(&[v], b), &word_elem(rest)), &s);
        out
    }

    /// `ad q (a) = [q, a]` for odd `q`.
    pub fn ad(&self, q: &Elem, a: &Elem) -> Elem {
        self.bracket(q, a)
    }

    pub fn max_degree(&self, a: &Elem) -> i64 {
        a.0.keys().map(|w| self.word_degree(w)).max().unwrap_or(i64::MIN)
    }

    pub fn display(&self, a: &Elem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.0.iter()
            .map(|(w, c)| {
                let m: Vec<&str> = w.iter().map(|g| self.names[*g as usize].as_str()).collect();
                if m.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    m.join("·")
                } else {
                    format!("({c})·{}", m.join("·"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn word_elem(w: &[u16]) -> Elem {
    let mut e = Elem::zero();
    e.add_term(w.to_vec(), Rat::one());
    e
}

/// Generator layout for `C(gl_n)`.
pub struct FiniteBrst {
    pub n: usize,
    pub data: LieData,
    pub alg: SuperAlg,
    /// Generator of `e_ij`.
    pub u: BTreeMap<(usize, usize), u16>,
    /// Generators of `x*_α` and `x_α`, indexed by positive root.
    pub xs: Vec<u16>,
    pub x: Vec<u16>,
    pub q: Elem,
}

impl std::fmt::Debug for FiniteBrst {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteBrst(gl{}, {})", self.n, if self.alg.quantum { "quantum" } else { "classical" })
    }
}

fn root_sort_key(i: usize, j: usize) -> (u8, i64, usize) {
    // negative roots < Cartan < positive roots, each by height then index
    let ht = j as i64 - i as i64;
    match ht.signum() {
        -1 => (0, -ht, i),
        0 => (1, 0, i),
        _ => (2, ht, i),
    }
}

impl FiniteBrst {
    pub fn new(n: usize, quantum: bool) -> Result<FiniteBrst> {
        if !(2..=4).contains(&n) {
            return Err(Error::Unsupported("finite BRST needs 2 ≤ n ≤ 4".into()));
        }
        let data = LieData::new(n);
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| root_sort_key(i, j));
        let mut names = Vec::new();
        let mut odd = Vec::new();
        let mut degree = Vec::new();
        let mut charge = Vec::new();
        let mut u = BTreeMap::new();
        for &(i, j) in &pairs {
            u.insert((i, j), names.len() as u16);
            names.push(eij_name(i, j));
            odd.push(false);
            degree.push(1 - (j as i64 - i as i64));
            charge.push(0);
        }
        let mut xs = Vec::new();
        for &(i, j) in &data.pos_roots {
            xs.push(names.len() as u16);
            names.push(format!("x*{}{}", i + 1, j + 1));
            odd.push(true);
            degree.push((j - i) as i64);
            charge.push(1);
        }
        let mut x = Vec::new();
        for &(i, j) in &data.pos_roots {
            x.push(names.len() as u16);
            names.push(format!("x{}{}", i + 1, j + 1));
            odd.push(true);
            degree.push(1 - (j - i) as i64);
            charge.push(-1);
        }
        let mut table = HashMap::new();
        for (&(a, b), &ga) in &u {
            for (&(c, d), &gb) in &u {
                // [e_ab, e_cd] = δ_bc e_ad - δ_da e_cb
                let mut e = Elem::zero();
                if b == c {
                    e.add_term(vec![u[&(a, d)]], Rat::one());
                }
                if d == a {
                    e.add_term(vec![u[&(c, b)]], -Rat::one());
                }
                if !e.is_zero() {
                    table.insert((ga, gb), e);
                }
            }
        }
        for r in 0..data.pos_roots.len() {
            table.insert((x[r], xs[r]), Elem::constant(Rat::one()));
            table.insert((xs[r], x[r]), Elem::constant(Rat::one()));
        }
        let alg = SuperAlg { names, odd, degree, charge, quantum, table, cache: RefCell::new(HashMap::new()) };
        let mut fb = FiniteBrst { n, data, alg, u, xs, x, q: Elem::zero() };
        fb.q = fb.build_q();
        Ok(fb)
    }

    fn chi(&self, r: usize) -> Rat {
        let (i, j) = self.data.pos_roots[r];
        // χ(x) = tr(f x); f has ones on the subdiagonal
        if j == i + 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    }

    /// `ρ(x_a) = Σ c_{a,β}^γ x_γ x*_β` for `a = e_ij`, with `c` the
    /// 𝔫-component of `[x_a, x_β]`.
    pub fn rho(&self, i: usize, j: usize) -> Elem {
        let mut out = Elem::zero();
        for (b, &(k, l)) in self.data.pos_roots.iter().enumerate() {
            // [e_ij, e_kl] = δ_jk e_il - δ_li e_kj
            let mut terms = Vec::new();
            if j == k {
                terms.push(((i, l), Rat::one()));
            }
            if l == i {
                terms.push(((k, j), -Rat::one()));
            }
            for ((p, q), c) in terms {
                if let Some(g) = self.data.root_index(p, q) {
                    let t = self.alg.mul(&self.alg.gen(self.x[g]), &self.alg.gen(self.xs[b]));
                    out.add_scaled(&t, &c);
                }
            }
        }
        out
    }

    /// `Q = Σ (x_α - χ(x_α)) x*_α - ½ Σ c_{αβ}^γ x*_α x*_β x_γ`.
    fn build_q(&self) -> Elem {
        let a = &self.alg;
        let mut q = Elem::zero();
        for (r, &(i, j)) in self.data.pos_roots.iter().enumerate() {
            let mut xm = a.gen(self.u[&(i, j)]);
            xm.add_term(Vec::new(), -self.chi(r));
            q.add_scaled(&a.mul(&xm, &a.gen(self.xs[r])), &Rat::one());
        }
        let r = self.data.pos_roots.len();
        for al in 0..r {
            for be in 0..r {
                if let Some((g, c)) = self.data.n_bracket(al, be) {
                    let c = c.as_rational().expect("rational structure constant").clone();
                    let t = a.mul(&a.gen(self.xs[al]), &a.mul(&a.gen(self.xs[be]), &a.gen(self.x[g])));
                    q.add_scaled(&t, &(c * rat(-1, 2)));
                }
            }
        }
        q
    }

    pub fn q_squared_zero(&self) -> bool {
        if self.alg.quantum {
            self.alg.mul(&self.q, &self.q).is_zero()
        } else {
            self.alg.bracket(&self.q, &self.q).is_zero()
        }
    }

    /// `[ρ(x), ρ(y)] = ρ([x, y])` on all pairs of positive root vectors.
    pub fn rho_is_homomorphism(&self) -> bool {
        let pr = &self.data.pos_roots;
        for a in 0..pr.len() {
            for b in 0..pr.len() {
                let lhs = self.alg.bracket(&self.rho(pr[a].0, pr[a].1), &self.rho(pr[b].0, pr[b].1));
                let rhs = match self.data.n_bracket(a, b) {
                    Some((g, c)) => self.rho(pr[g].0, pr[g].1).scale(c.as_rational().expect("rational")),
                    None => Elem::zero(),
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// `[Q, x_α] = (x_α - χ(x_α)) + ρ(x_α)` for every positive root.
    pub fn moment_map_check(&self) -> bool {
        self.data.pos_roots.iter().enumerate().all(|(r, &(i, j))| {
            let lhs = self.alg.ad(&self.q, &self.alg.gen(self.x[r]));
            let mut rhs = self.alg.gen(self.u[&(i, j)]);
            rhs.add_term(Vec::new(), -self.chi(r));
            rhs.add_scaled(&self.rho(i, j), &Rat::one());
            lhs == rhs
        })
    }

    /// All normally ordered words with at most `len` letters.
    pub fn words_up_to(&self, len: usize) -> Vec<Word> {
        let ng = self.alg.names.len() as u16;
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<Word> = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &frontier {
                let start = w.last().copied().unwrap_or(0);
                for g in start..ng {
                    if w.last() == Some(&g) && self.alg.odd[g as usize] {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// `(ad Q)² = 0`, charge `+1` and filtration checks on every word of
    /// length `≤ len`.
    pub fn differential_checks(&self, len: usize) -> DifferentialChecks {
        let mut out = DifferentialChecks { words: 0, square_zero: true, raises_charge: true, preserves_filtration: true };
        for w in self.words_up_to(len) {
            out.words += 1;
            let e = word_elem(&w);
            let d = self.alg.ad(&self.q, &e);
            let dd = self.alg.ad(&self.q, &d);
            out.square_zero &= dd.is_zero();
            let ch = self.alg.word_charge(&w);
            out.raises_charge &= d.0.keys().all(|v| self.alg.word_charge(v) == ch + 1);
            out.preserves_filtration &= d.is_zero() || self.alg.max_degree(&d) <= self.alg.word_degree(&w);
        }
        out
    }

    /// `J_a = x_a + ρ(x_a)` for `a = e_ij`, `i ≥ j`.
    pub fn j(&self, i: usize, j: usize) -> Elem {
        self.alg.gen(self.u[&(i, j)]).add(&self.rho(i, j))
    }

    /// Generators of the subcomplex `C₋`: `(name, element, degree, charge)`.
    pub fn minus_generators(&self) -> Vec<(String, Elem, i64, i32)> {
        let mut out = Vec::new();
        let mut lower: Vec<(usize, usize)> = (0..self.n).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
        lower.sort_by_key(|&(i, j)| root_sort_key(i, j));
        for (i, j) in lower {
            out.push((format!("J{}", eij_name(i, j)), self.j(i, j), 1 + (i - j) as i64, 0));
        }
        for (r, &(i, j)) in self.data.pos_roots.iter().enumerate() {
            out.push((self.alg.names[self.xs[r] as usize].clone(), self.alg.gen(self.xs[r]), (j - i) as i64, 1));
        }
        out
    }

    /// Ordered monomials in the `C₋` generators with degree `≤ p`, grouped by
    /// charge; each entry is the product computed in `C`.
    pub fn minus_basis(&self, p: i64) -> BTreeMap<i32, Vec<(i64, Elem)>> {
        let gens = self.minus_generators();
        let mut out: BTreeMap<i32, Vec<(i64, Elem)>> = BTreeMap::new();
        let mut stack: Vec<(usize, Vec<usize>, i64)> = vec![(0, Vec::new(), 0)];
        while let Some((start, chosen, deg)) = stack.pop() {
            let mut e = Elem::constant(Rat::one());
            for &g in chosen.iter().rev() {
                e = self.alg.mul(&gens[g].1, &e);
            }
            let ch: i32 = chosen.iter().map(|&g| gens[g].3).sum();
            out.entry(ch).or_default().push((deg, e));
            for g in start..gens.len() {
                if deg + gens[g].2 > p {
                    continue;
                }
                let odd = gens[g].3 == 1;
                let mut c = chosen.clone();
                c.push(g);
                stack.push((if odd { g + 1 } else { g }, c, deg + gens[g].2));
            }
        }
        out
    }

    /// Cohomology of `K_p C₋` for `p ≤ max_p` (undoubled degrees).
    pub fn filtered_cohomology(&self, max_p: i64) -> Result<Vec<FiniteEntry>> {
        let mut out = Vec::new();
        for p in 0..=max_p {
            let basis = self.minus_basis(p);
            let maxc = basis.keys().copied().max().unwrap_or(0);
            let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
            for c in 0..=maxc {
                let src = basis.get(&c).cloned().unwrap_or_default();
                let tgt = basis.get(&(c + 1)).cloned().unwrap_or_default();
                let images: Vec<Elem> = src.iter().map(|(_, e)| self.alg.ad(&self.q, e)).collect();
                let r = elems_rank(&images);
                let tgt_e: Vec<Elem> = tgt.iter().map(|x| x.1.clone()).collect();
                let rt = elems_rank(&tgt_e);
                let mut both = tgt_e.clone();
                both.extend(images.iter().cloned());
                if elems_rank(&both) != rt {
                    return Err(Error::ClosureFailure(format!("ad Q leaves K_{p} C₋ at charge {c}")));
                }
                ranks.insert(c, r);
            }
            for c in -1..=maxc.max(1) {
                let dim = basis.get(&c).map(|v| v.len()).unwrap_or(0);
                let r_out = ranks.get(&c).copied().unwrap_or(0);
                let r_in = ranks.get(&(c - 1)).copied().unwrap_or(0);
                out.push(FiniteEntry { doubled_degree: 2 * p, charge: c, cochains: dim, dim: dim - r_out - r_in });
            }
        }
        Ok(out)
    }

    /// Central elements `p_1 = Σ e_ii` and `Ω = Σ e_ij e_ji` and their products
    /// up to PBW degree 2 are `ad Q`-closed.
    pub fn center_closed(&self) -> bool {
        let a = &self.alg;
        let mut p1 = Elem::zero();
        let mut om = Elem::zero();
        for i in 0..self.n {
            p1.add_scaled(&a.gen(self.u[&(i, i)]), &Rat::one());
            for j in 0..self.n {
                om.add_scaled(&a.mul(&a.gen(self.u[&(i, j)]), &a.gen(self.u[&(j, i)])), &Rat::one());
            }
        }
        let cands = [p1.clone(), om.clone(), a.mul(&p1, &p1), a.mul(&p1, &om)];
        cands.iter().all(|z| a.ad(&self.q, z).is_zero())
    }
}

fn elems_rank(es: &[Elem]) -> usize {
    let mut idx: BTreeMap<&Word, usize> = BTreeMap::new();
    for e in es {
        for w in e.0.keys() {
            let n = idx.len();
            idx.entry(w).or_insert(n);
        }
    }
    if idx.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rat>> = es
        .iter()
        .map(|e| {
            let mut r = vec![Rat::zero(); idx.len()];
            for (w, c) in &e.0 {
                r[idx[w]] = c.clone();
            }
            r
        })
        .collect();
    rank(&rows, idx.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferentialChecks {
    pub words: usize,
    pub square_zero: bool,
    pub raises_charge: bool,
    pub preserves_filtration: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteEntry {
    pub doubled_degree: i64,
    pub charge: i32,
    pub cochains: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteCohomology {
    pub n: usize,
    pub quantum: bool,
    /// Filtered (quantum) or graded (classical) dimensions per doubled degree.
    pub entries: Vec<FiniteEntry>,
    /// `dim H⁰` at doubled degrees `0..=max_doubled`.
    pub h0: Vec<usize>,
    /// The invariant-polynomial count in the same degrees.
    pub expected_h0: Vec<usize>,
    pub higher_vanish: bool,
    pub pass: bool,
}

/// Number of monomials `p_1^{a_1} ⋯ p_n^{a_n}` with `Σ 2i a_i = d`.
pub fn invariant_count(n: usize, d: usize) -> usize {
    let mut c = vec![0usize; d + 1];
    c[0] = 1;
    for i in 1..=n {
        let w = 2 * i;
        for t in w..=d {
            c[t] += c[t - w];
        }
    }
    c[d]
}

/// Cohomology through doubled degree `max_doubled`. Quantum tables are
/// cumulative (filtered); classical tables are graded.
pub fn finite_cohomology(n: usize, max_doubled: i64, quantum: bool) -> Result<FiniteCohomology> {
    if n > 3 || max_doubled > 6 {
        return Err(Error::Unsupported("finite cohomology needs n ≤ 3 and degree ≤ 6".into()));
    }
    let fb = FiniteBrst::new(n, quantum)?;
    let max_p = max_doubled / 2;
    let raw = fb.filtered_cohomology(max_p)?;
    let mut entries = Vec::new();
    for d in 0..=max_doubled {
        for e in raw.iter().filter(|e| e.doubled_degree == 2 * (d / 2)) {
            let mut e = e.clone();
            e.doubled_degree = d;
            if !quantum {
                // graded pieces: odd doubled degrees are empty
                if d % 2 == 1 {
                    e.cochains = 0;
                    e.dim = 0;
                } else if d >= 2 {
                    let prev = raw.iter().find(|x| x.doubled_degree == d - 2 && x.charge == e.charge);
                    if let Some(pr) = prev {
                        e.cochains -= pr.cochains;
                        e.dim -= pr.dim;
                    }
                }
            }
            entries.push(e);
        }
    }
    let h0: Vec<usize> = (0..=max_doubled).map(|d| entries.iter().find(|e| e.doubled_degree == d && e.charge == 0).map(|e| e.dim).unwrap_or(0)).collect();
    let expected_h0: Vec<usize> =
        (0..=max_doubled as usize).map(|d| if quantum { (0..=d).map(|t| invariant_count(n, t)).sum() } else { invariant_count(n, d) }).collect();
    let higher_vanish = entries.iter().all(|e| e.charge == 0 || e.dim == 0);
    Ok(FiniteCohomology { n, quantum, pass: higher_vanish && h0 == expected_h0, higher_vanish, entries, h0, expected_h0 })
}

/// Classical `ad Q̄ = d₊ + d₋` by bidegree `(#x*, #x)`.
#[derive(Clone, Debug, Serialize)]
pub struct DpmReport {
    pub words: usize,
    pub only_two_components: bool,
    pub d_minus_squared: bool,
    pub d_plus_squared: bool,
    pub anticommute: bool,
}

impl FiniteBrst {
    fn bidegree(&self, w: &[u16]) -> (usize, usize) {
        let s = w.iter().filter(|g| self.alg.charge[**g as usize] == 1).count();
        let x = w.iter().filter(|g| self.alg.charge[**g as usize] == -1).count();
        (s, x)
    }
    fn split(&self, a: &Elem, from: &Word) -> (Elem, Elem, bool) {
        let (s0, x0) = self.bidegree(from);
        let d = self.alg.ad(&self.q, a);
        let mut plus = Elem::zero();
        let mut minus = Elem::zero();
        let mut ok = true;
        for (w, c) in &d.0 {
            match self.bidegree(w) {
                (s, x) if s == s0 + 1 && x == x0 => plus.add_term(w.clone(), c.clone()),
                (s, x) if s == s0 && x + 1 == x0 => minus.add_term(w.clone(), c.clone()),
                _ => ok = false,
            }
        }
        (plus, minus, ok)
    }
    fn d_part(&self, a: &Elem, plus: bool) -> Elem {
        let mut out = Elem::zero();
        for (w, c) in &a.0 {
            let (p, m, _) = self.split(&word_elem(w), w);
            out.add_scaled(if plus { &p } else { &m }, c);
        }
        out
    }

    pub fn dpm_checks(&self, len: usize) -> DpmReport {
        let mut r = DpmReport { words: 0, only_two_components: true, d_minus_squared: true, d_plus_squared: true, anticommute: true };
        for w in self.words_up_to(len) {
            r.words += 1;
            let e = word_elem(&w);
            let (p, m, ok) = self.split(&e, &w);
            r.only_two_components &= ok;
            r.d_plus_squared &= self.d_part(&p, true).is_zero();
            r.d_minus_squared &= self.d_part(&m, false).is_zero();
            r.anticommute &= self.d_part(&p, false).add(&self.d_part(&m, true)).is_zero();
        }
        r
    }

    /// Apply `x_α ↦ x_α + s·χ(x_α)` to every even generator (classical only).
    fn shift(&self, a: &Elem, s: &Rat) -> Elem {
        let mut out = Elem::zero();
        for (w, c) in &a.0 {
            let mut t = Elem::constant(c.clone());
            for g in w {
                let mut f = self.alg.gen(*g);
                if let Some(r) = self.x_root_of_u(*g) {
                    f.add_term(Vec::new(), s * self.chi(r));
                }
                t = self.alg.mul(&t, &f);
            }
            out.add_scaled(&t, &Rat::one());
        }
        out
    }
    fn x_root_of_u(&self, g: u16) -> Option<usize> {
        self.data.pos_roots.iter().position(|&(i, j)| self.u[&(i, j)] == g)
    }

    /// Koszul check: `d₋` on `C[𝔤*] ⊗ Λ(𝔫)`, in coordinates `y_α = x_α - χ(x_α)`,
    /// is homogeneous; its homology vanishes in positive degree and `H_0`
    /// matches polynomials in the `𝔟₋` coordinates, through weight `max_w`.
    pub fn koszul_check(&self, max_w: usize) -> Result<KoszulReport> {
        if self.alg.quantum {
            return Err(Error::Unsupported("Koszul check is classical".into()));
        }
        let evens: Vec<u16> = self.u.values().copied().collect();
        let r = self.data.pos_roots.len();
        let b_minus = evens.len() - r;
        // pieces P(N, i): N = polynomial degree, i = number of x's
        let piece = |nn: usize, i: usize| -> Vec<Word> {
            let mut polys: Vec<Word> = vec![Vec::new()];
            for _ in 0..nn {
                let mut next = Vec::new();
                for w in &polys {
                    for &g in &evens {
                        if w.last().is_none_or(|&l| l <= g) {
                            let mut v = w.clone();
                            v.push(g);
                            next.push(v);
                        }
                    }
                }
                polys = next;
            }
            let mut odds: Vec<Word> = vec![Vec::new()];
            for _ in 0..i {
                let mut next = Vec::new();
                for w in &odds {
                    for &g in &self.x {
                        if w.last().is_none_or(|&l| l < g) {
                            let mut v = w.clone();
                            v.push(g);
                            next.push(v);
                        }
                    }
                }
                odds = next;
            }
            let mut out = Vec::new();
            for p in &polys {
                for o in &odds {
                    let mut v = p.clone();
                    v.extend_from_slice(o);
                    out.push(v);
                }
            }
            out
        };
        let mut homogeneous = true;
        let mut rows_out = Vec::new();
        for w in 0..=max_w {
            let mut ranks = vec![0usize; w + 2];
            let mut dims = vec![0usize; w + 2];
            for i in 0..=w.min(r) {
                let src = piece(w - i, i);
                dims[i] = src.len();
                if i == 0 {
                    continue;
                }
                let mut imgs = Vec::new();
                for s in &src {
                    // s is a monomial in y-coordinates; map to x, apply d₋, map back
                    let xs = self.shift(&word_elem(s), &-Rat::one());
                    let dm = self.d_part(&xs, false);
                    let back = self.shift(&dm, &Rat::one());
                    homogeneous &= back.0.keys().all(|v| {
                        let (_, nx) = self.bidegree(v);
                        nx + 1 == i && v.len() - nx == w - i + 1
                    });
                    imgs.push(back);
                }
                ranks[i] = elems_rank(&imgs);
            }
            for i in 0..=w.min(r) {
                let h = dims[i] - ranks[i] - ranks.get(i + 1).copied().unwrap_or(0);
                let expect = if i == 0 { binomial(b_minus + w - 1, w) } else { 0 };
                rows_out.push(KoszulRow { weight: w, x_count: i, dim: h, expected: expect });
            }
        }
        let pass = homogeneous && rows_out.iter().all(|x| x.dim == x.expected);
        Ok(KoszulReport { homogeneous, rows: rows_out, pass })
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k == 0 {
        return 1;
    }
    if n < k {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r as usize
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulRow {
    /// Polynomial degree plus number of odd factors.
    pub weight: usize,
    pub x_count: usize,
    pub dim: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub homogeneous: bool,
    pub rows: Vec<KoszulRow>,
    pub pass: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relations() {
        let f = FiniteBrst::new(2, true).unwrap();
        let a = &f.alg;
        let x = a.gen(f.x[0]);
        let xs = a.gen(f.xs[0]);
        assert!(a.mul(&x, &x).is_zero());
        let anti = a.mul(&x, &xs).add(&a.mul(&xs, &x));
        assert_eq!(anti, Elem::constant(Rat::one()));
    }

    #[test]
    fn q_gl2_has_no_cubic_term() {
        let f = FiniteBrst::new(2, true).unwrap();
        assert!(f.q.0.keys().all(|w| w.len() <= 2));
        assert!(f.rho(0, 1).is_zero());
        assert!(f.q_squared_zero());
    }

    #[test]
    fn gl3_q_and_rho() {
        for quantum in [true, false] {
            let f = FiniteBrst::new(3, quantum).unwrap();
            assert!(f.q.0.keys().any(|w| w.len() == 3));
            assert!(f.q_squared_zero());
            assert!(f.rho_is_homomorphism());
            assert!(f.moment_map_check());
        }
        let f = FiniteBrst::new(3, true).unwrap();
        assert_eq!(f.rho(0, 1).0.len(), 1);
    }

    #[test]
    fn invariant_counts() {
        let cum: Vec<usize> = (0..=4).map(|d| (0..=d).map(|t| invariant_count(2, t)).sum()).collect();
        assert_eq!(cum, vec![1, 1, 2, 2, 4]);
    }

    #[test]
    fn gl2_cohomology() {
        let q = finite_cohomology(2, 4, true).unwrap();
        assert_eq!(q.h0, vec![1, 1, 2, 2, 4]);
        assert!(q.pass, "{q:?}");
        let c = finite_cohomology(2, 4, false).unwrap();
        assert!(c.pass, "{c:?}");
        // gr of the quantum filtration equals the classical grading
        for d in 2..=4 {
            assert_eq!(q.h0[d] - q.h0[d - 2], c.h0[d] + c.h0[d - 1]);
        }
    }

    #[test]
    fn differential_and_center() {
        let f = FiniteBrst::new(2, true).unwrap();
        let r = f.differential_checks(3);
        assert!(r.square_zero && r.raises_charge && r.preserves_filtration);
        assert!(f.center_closed());
    }

    #[test]
    fn classical_dpm_and_koszul() {
        let f = FiniteBrst::new(2, false).unwrap();
        let r = f.dpm_checks(3);
        assert!(r.only_two_components && r.d_minus_squared && r.d_plus_squared && r.anticommute);
        let k = f.koszul_check(3).unwrap();
        assert!(k.pass, "{k:?}");
    }

    #[test]
    fn gl3_cohomology_and_differential() {
        let q = finite_cohomology(3, 6, true).unwrap();
        assert!(q.pass, "{q:?}");
        let c = finite_cohomology(3, 6, false).unwrap();
        assert!(c.pass, "{c:?}");
        for quantum in [true, false] {
            let f = FiniteBrst::new(3, quantum).unwrap();
            let r = f.differential_checks(2);
            assert!(r.square_zero && r.raises_charge && r.preserves_filtration);
        }
    }
}
