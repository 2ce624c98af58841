//! Explicit W-algebra generators from the column determinant, the Miura
//! map to a Heisenberg algebra, and the Virasoro / W₃ certificates.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::brst::{virasoro_shape, w_character, Brst};
use crate::error::{Error, Result};
use crate::free_fields::heisenberg;
use crate::lie::{eij_name, Form, Kind, Mat};
use crate::linalg::rank;
use crate::poly::MPoly;
use crate::scalar::{Rat, Scalar};
use crate::vertex::{solve_in_span, states_to_rows, Engine, Gen, Mode, Mono, State};

/// `(n-1)(1 - n(n+1)(n+k-1)^2/(n+k))`.
pub fn central_charge_formula(n: usize) -> Scalar {
    let n_ = n as i64;
    let a = Scalar::k_plus(n_ - 1);
    let b = Scalar::k_plus(n_);
    let t = &(&Scalar::int(n_ * (n_ + 1)) * &(&a * &a)) / &b;
    &Scalar::int(n_ - 1) * &(&Scalar::one() - &t)
}

/// `α = k + n - 1`.
pub fn alpha(n: usize, k: &Scalar) -> Scalar {
    k + &Scalar::int(n as i64 - 1)
}

/// Polynomial in `τ` with state coefficients, `Σ s_j τ^j` (τ to the right).
type TauPoly = Vec<State>;

fn tau_left(e: &Engine, x: &TauPoly) -> TauPoly {
    // τ s τ^j = (T s) τ^j + s τ^{j+1}, since τ acts on modes like T and kills |0⟩
    let mut out = vec![State::zero(); x.len() + 1];
    for (j, s) in x.iter().enumerate() {
        out[j].add_scaled(&e.translate(s), &Scalar::one());
        out[j + 1].add_scaled(s, &Scalar::one());
    }
    out
}

fn mode_left(e: &Engine, g: Gen, x: &TauPoly) -> TauPoly {
    x.iter().map(|s| e.apply_gen_state(g, -1, s)).collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting the largest element at `pos` adds n-1-pos inversions
            let sign = if (n - 1 - pos).is_multiple_of(2) { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// `W^(0..=n)` from `cdet B`, as states of `V(𝔟₋) ⊂ C₋` for gl_n.
/// `cdet B = Σ_i W^(i) (ατ)^{n-i}` with `[τ, x_(-m)] = m x_(-m-1)`.
pub fn column_determinant(b: &Brst, k: &Scalar) -> Result<Vec<State>> {
    if b.cx.kind != Kind::Gl {
        return Err(Error::Unsupported("column determinant is defined over gl_n".into()));
    }
    let n = b.cx.n;
    let e = &b.minus;
    let al = alpha(n, k);
    let gen = |i: usize, j: usize| e.p.gen_index(&format!("J{}", eij_name(i, j)));
    let mut total: TauPoly = vec![State::zero(); n + 1];
    for (sigma, sign) in permutations(n) {
        if (0..n).any(|c| sigma[c] + 1 < c) {
            continue;
        }
        let mut x: TauPoly = vec![State::vacuum()];
        for c in (0..n).rev() {
            let r = sigma[c];
            x = if r == c {
                let mut t: TauPoly = tau_left(e, &x).iter().map(|s| s.scale(&al)).collect();
                for (j, s) in mode_left(e, gen(c, c)?, &x).into_iter().enumerate() {
                    t[j].add_scaled(&s, &Scalar::one());
                }
                t
            } else if r > c {
                mode_left(e, gen(r, c)?, &x)
            } else {
                x.iter().map(|s| s.scale(&Scalar::int(-1))).collect()
            };
        }
        for (j, s) in x.iter().enumerate() {
            total[j].add_scaled(s, &Scalar::int(sign));
        }
    }
    (0..=n)
        .map(|i| {
            let p = al.pow((n - i) as u32);
            let inv = p.inv().map_err(|_| Error::Unsupported("α = 0".into()))?;
            Ok(total[n - i].scale(&inv))
        })
        .collect()
}

/// Variable index of `∂^m J_i` in the differential polynomial ring.
pub fn jvar(n: usize, i: usize, m: usize) -> usize {
    m * n + i
}

fn total_derivative(n: usize, p: &MPoly) -> MPoly {
    let mut out = MPoly::zero();
    for v in p.terms.keys().flat_map(|m| m.iter().map(|x| x.0)).collect::<std::collections::BTreeSet<_>>() {
        out = out.add(&p.diff(v).mul(&MPoly::var(v + n)));
    }
    out
}

/// Coefficients `Υ(W^(i))`, `i = 0..=n`, of
/// `:(α∂+J₁)…(α∂+J_n): = Σ_i Υ(W^(i)) (α∂)^{n-i}`, as differential polynomials
/// in the variables `∂^m J_i` (see [`jvar`]).
pub fn miura_rhs(n: usize, k: &Scalar) -> Result<Vec<MPoly>> {
    let al = alpha(n, k);
    let mut x: Vec<MPoly> = vec![MPoly::one()];
    for i in (0..n).rev() {
        let mut out = vec![MPoly::zero(); x.len() + 1];
        for (j, p) in x.iter().enumerate() {
            out[j] = out[j].add(&total_derivative(n, p).scale(&al));
            out[j + 1] = out[j + 1].add(&p.scale(&al));
            out[j] = out[j].add(&MPoly::var(jvar(n, i, 0)).mul(p));
        }
        x = out;
    }
    (0..=n)
        .map(|i| {
            let inv = al.pow((n - i) as u32).inv().map_err(|_| Error::Unsupported("α = 0".into()))?;
            Ok(x[n - i].scale(&inv))
        })
        .collect()
}

fn factorial(m: usize) -> Scalar {
    Scalar::int((1..=m as i64).product())
}

/// Projection `C₋ → V(𝔥)`: drop monomials with `J_{e_ij}` (i > j) or `ψ*`,
/// send `J_{e_ii}(-1-m)` to `∂^m J_i / m!`.
pub fn project_to_heisenberg(b: &Brst, s: &State) -> MPoly {
    let n = b.cx.n;
    let diag: BTreeMap<Gen, usize> = (0..n).filter_map(|i| b.minus.p.gen_index(&format!("J{}", eij_name(i, i))).ok().map(|g| (g, i))).collect();
    let mut out = MPoly::zero();
    'mono: for (m, c) in &s.terms {
        let mut t = MPoly::constant(c.clone());
        for &(g, mode) in m {
            let Some(&i) = diag.get(&g) else { continue 'mono };
            let d = (-mode - 1) as usize;
            t = t.mul(&MPoly::var(jvar(n, i, d)).scale(&factorial(d).inv().expect("nonzero")));
        }
        out = out.add(&t);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MiuraReport {
    pub n: usize,
    pub alpha: Scalar,
    /// `Υ(W^(i))` in the `J` variables, `i = 1..=n`.
    pub images: Vec<String>,
    pub identity_holds: bool,
}

pub fn jvar_name(n: usize, v: usize) -> String {
    let (m, i) = (v / n, v % n);
    match m {
        0 => format!("J{}", i + 1),
        1 => format!("TJ{}", i + 1),
        _ => format!("T^{m}J{}", i + 1),
    }
}

/// Check that the projected column determinant matches the Miura product.
pub fn miura_identity(n: usize, k: &Scalar) -> Result<MiuraReport> {
    let b = Brst::new(Kind::Gl, n, &Form::KTrace)?;
    let w = column_determinant(&b, k)?;
    let rhs = miura_rhs(n, k)?;
    for i in 0..=n {
        let lhs = project_to_heisenberg(&b, &w[i]);
        if lhs != rhs[i] {
            return Err(Error::MiuraMismatch(format!(
                "W^({i}): column determinant gives {}, product gives {}",
                lhs.fmt_with(&|v| jvar_name(n, v)),
                rhs[i].fmt_with(&|v| jvar_name(n, v))
            )));
        }
    }
    Ok(MiuraReport { n, alpha: alpha(n, k), images: rhs[1..].iter().map(|p| p.fmt_with(&|v| jvar_name(n, v))).collect(), identity_holds: true })
}

/// Heisenberg algebra of `J_1..J_{n-1}` with `[J_i λ J_j] = (k+n)(δ_ij - 1/n) λ`
/// (the sl_n constraint `J_n = -Σ J_i` eliminated).
pub fn sl_heisenberg(n: usize, k: &Scalar) -> Result<Engine> {
    let kn = k + &Scalar::int(n as i64);
    let inv_n = Scalar::frac(1, n as i64);
    let gram: Mat = (0..n - 1).map(|i| (0..n - 1).map(|j| &kn * &(&Scalar::int((i == j) as i64) - &inv_n)).collect()).collect();
    let names: Vec<String> = (1..n).map(|i| format!("J{i}")).collect();
    Engine::new(heisenberg(&format!("heisenberg-sl{n}"), &names, &gram))
}

/// Impose `J_n = -Σ_{i<n} J_i` (and its derivatives).
pub fn sl_constrain(n: usize, p: &MPoly) -> MPoly {
    p.substitute(&|v| {
        let (m, i) = (v / n, v % n);
        if i + 1 == n {
            let mut s = MPoly::zero();
            for j in 0..n - 1 {
                s = s.sub(&MPoly::var(jvar(n, j, m)));
            }
            s
        } else {
            MPoly::var(v)
        }
    })
}

/// Differential polynomial (variables from [`jvar`]) as a Heisenberg state.
pub fn mpoly_to_state(n: usize, p: &MPoly) -> State {
    let mut out = State::zero();
    for (mono, c) in &p.terms {
        let mut modes: Mono = Vec::new();
        let mut coef = c.clone();
        for &(v, e) in mono {
            let (m, i) = (v / n, v % n);
            for _ in 0..e {
                modes.push((i as Gen, -1 - m as Mode));
                coef = &coef * &factorial(m);
            }
        }
        modes.sort();
        out.add_term(modes, coef);
    }
    out
}

/// Miura images `Υ(W^(i))`, `i = 0..=n`, as states of the sl_n Heisenberg algebra.
pub fn sl_images(n: usize, k: &Scalar) -> Result<Vec<State>> {
    Ok(miura_rhs(n, k)?.iter().map(|p| mpoly_to_state(n, &sl_constrain(n, p))).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct VirasoroCertificate {
    pub n: usize,
    pub central_charge: Scalar,
    /// `W^(2) = s L`.
    pub scale: Scalar,
    pub matches_formula: bool,
}

/// Normalize the weight-2 Miura image to a Virasoro field and read off `c`.
pub fn virasoro_certificate(n: usize, k: &Scalar) -> Result<VirasoroCertificate> {
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported("virasoro certificate for 2 ≤ n ≤ 4".into()));
    }
    let e = sl_heisenberg(n, k)?;
    let w = sl_images(n, k)?.swap_remove(2);
    let ww = e.lambda_bracket(&w, &w);
    let w1 = ww.get(1).cloned().unwrap_or_default();
    let (m, c0) = w.terms.iter().next().ok_or_else(|| Error::NotVirasoro("W^(2) vanishes".into()))?;
    let c1 = w1.terms.get(m).cloned().unwrap_or_else(Scalar::zero);
    let s = (&c1 / c0) * Scalar::frac(1, 2);
    if s.is_zero() || w1 != w.scale(&(&s * &Scalar::int(2))) {
        return Err(Error::NotVirasoro("W^(2)_(1) W^(2) is not proportional to W^(2)".into()));
    }
    let sinv = s.inv()?;
    let l = w.scale(&sinv);
    let s2 = &sinv * &sinv;
    let ll: Vec<State> = ww.iter().map(|x| x.scale(&s2)).collect();
    let c = virasoro_shape(&e, &l, &ll)?;
    let formula = match k {
        Scalar::Q(r) => central_charge_formula(n).eval(r).map(Scalar::Q),
        _ if k == &Scalar::k() => Some(central_charge_formula(n)),
        _ => None,
    };
    Ok(VirasoroCertificate { n, matches_formula: formula.as_ref() == Some(&c), central_charge: c, scale: s })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityRow {
    pub k: Scalar,
    pub dual_k: Scalar,
    pub c: Scalar,
    pub c_dual: Scalar,
    pub equal: bool,
}

/// Compare `c(k)` and `c(ᴸk)` with `(k+n)(ᴸk+n) = 1`, using the engine-computed
/// symbolic central charge.
pub fn duality_check(n: usize, levels: &[Rat]) -> Result<Vec<DualityRow>> {
    let c = virasoro_certificate(n, &Scalar::k())?.central_charge;
    let n_ = Rat::from_integer((n as i64).into());
    levels
        .iter()
        .map(|k| {
            let kn = k + &n_;
            if num_traits::Zero::is_zero(&kn) {
                return Err(Error::CriticalLevel);
            }
            let lk = kn.recip() - &n_;
            let a = c.eval(k).ok_or(Error::DivisionByZero)?;
            let b = c.eval(&lk).ok_or(Error::DivisionByZero)?;
            Ok(DualityRow { k: Scalar::Q(k.clone()), dual_k: Scalar::Q(lk), equal: a == b, c: Scalar::Q(a), c_dual: Scalar::Q(b) })
        })
        .collect()
}

/// Ordered normally ordered monomials in `T^(a) W^(i)` of total weight `w`.
/// `fields[i]` has weight `weights[i]`; the vacuum is included at weight 0.
pub fn differential_monomials(e: &Engine, fields: &[State], weights: &[i64], w: i64) -> Vec<(String, State)> {
    let mut atoms: Vec<(String, i64, State)> = Vec::new();
    for (i, f) in fields.iter().enumerate() {
        let mut a = 0;
        while weights[i] + a <= w {
            let name = match a {
                0 => format!("W{}", weights[i]),
                1 => format!("TW{}", weights[i]),
                _ => format!("T^({a})W{}", weights[i]),
            };
            atoms.push((name, weights[i] + a, e.translate_div(f, a as u32)));
            a += 1;
        }
    }
    let mut out = Vec::new();
    fn go(
        e: &Engine,
        atoms: &[(String, i64, State)],
        start: usize,
        left: i64,
        name: &mut Vec<String>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<(String, State)>,
    ) {
        if left == 0 {
            let mut s = State::vacuum();
            for &i in chosen.iter().rev() {
                s = e.normally_ordered(&atoms[i].2, &s);
            }
            let nm = if name.is_empty() { "1".to_string() } else { name.join(" ") };
            out.push((nm, s));
            return;
        }
        for i in start..atoms.len() {
            if atoms[i].1 <= left {
                name.push(atoms[i].0.clone());
                chosen.push(i);
                go(e, atoms, i, left - atoms[i].1, name, chosen, out);
                chosen.pop();
                name.pop();
            }
        }
    }
    go(e, &atoms, 0, w, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureTerm {
    pub bracket: String,
    pub lambda_power: usize,
    /// Nonzero expansion coefficients, `(monomial, coefficient)`.
    pub expansion: Vec<(String, Scalar)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct W3Report {
    pub k: Scalar,
    pub lambda_degree_23: usize,
    pub lambda_degree_33: usize,
    pub terms: Vec<ClosureTerm>,
    pub closed: bool,
}

/// Expand `[W2_λ W3]` and `[W3_λ W3]` in the Miura image for sl₃ in terms of
/// ordered monomials in `W2`, `W3` and their derivatives.
pub fn w3_closure(k: &Scalar) -> Result<W3Report> {
    let e = sl_heisenberg(3, k)?;
    let im = sl_images(3, k)?;
    let fields = [im[2].clone(), im[3].clone()];
    let weights = [2, 3];
    let mut terms = Vec::new();
    let mut degs = [0, 0];
    for (slot, (a, wa, label)) in [(0usize, 2i64, "[W2_λ W3]"), (1, 3, "[W3_λ W3]")].into_iter().enumerate() {
        let br = e.lambda_bracket(&fields[a], &fields[1]);
        degs[slot] = br.len().saturating_sub(1);
        for (j, s) in br.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let w = wa + 3 - j as i64 - 1;
            let basis = differential_monomials(&e, &fields, &weights, w);
            let states: Vec<State> = basis.iter().map(|x| x.1.clone()).collect();
            let x = solve_in_span(&states, s).ok_or_else(|| Error::ClosureFailure(format!("{label} λ^{j} term is outside the W-span")))?;
            let expansion = basis.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(b, c)| (b.0.clone(), c)).collect();
            terms.push(ClosureTerm { bracket: label.into(), lambda_power: j, expansion });
        }
    }
    Ok(W3Report { k: k.clone(), lambda_degree_23: degs[0], lambda_degree_33: degs[1], terms, closed: true })
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityRow {
    pub weight: i64,
    pub monomials: usize,
    pub rank: usize,
    pub expected: usize,
}

/// Rank of the Miura images of ordered monomials in the generators, by weight.
pub fn injectivity_ranks(n: usize, k: &Scalar, max_weight: i64) -> Result<Vec<InjectivityRow>> {
    let e = sl_heisenberg(n, k)?;
    let im = sl_images(n, k)?;
    let fields: Vec<State> = im[2..].to_vec();
    let weights: Vec<i64> = (2..=n as i64).collect();
    let expect = w_character(n, 2, max_weight as usize);
    (0..=max_weight)
        .map(|w| {
            let mons = differential_monomials(&e, &fields, &weights, w);
            let states: Vec<State> = mons.into_iter().map(|x| x.1).collect();
            let (rows, nc) = states_to_rows(&states);
            let expected = expect.coeff(w as usize).as_rational().and_then(|r| r.to_integer().try_into().ok()).unwrap_or(0);
            Ok(InjectivityRow { weight: w, monomials: states.len(), rank: if nc == 0 { 0 } else { rank(&rows, nc) }, expected })
        })
        .collect()
}

/// `Q̂_(0) W^(i) = 0` in `C₋` for the gl_n column-determinant generators.
pub fn generators_closed(b: &Brst, k: &Scalar) -> Result<Vec<bool>> {
    let w = column_determinant(b, k)?;
    Ok(w.iter().map(|s| b.d(s).is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        for (s, sign) in p {
            let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| s[i] > s[j]).count();
            assert_eq!(sign, if inv % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn gl2_column_determinant() {
        let b = Brst::new(Kind::Gl, 2, &Form::KTrace).unwrap();
        let k = Scalar::k();
        let w = column_determinant(&b, &k).unwrap();
        let s = |x: &str| b.minus.parse_state(x).unwrap();
        assert_eq!(w[0], State::vacuum());
        assert_eq!(w[1], s("Je11(-1)|0> + Je22(-1)|0>"));
        let al = alpha(2, &k);
        let expect = s("Je11(-1)Je22(-1)|0> + Je21(-1)|0>").add(&s("Je22(-2)|0>").scale(&al));
        assert_eq!(w[2], expect);
    }

    #[test]
    fn miura_n2_expansion() {
        let k = Scalar::k();
        let r = miura_rhs(2, &k).unwrap();
        // :J1 J2: + α T J2
        let expect = MPoly::var(jvar(2, 0, 0)).mul(&MPoly::var(jvar(2, 1, 0))).add(&MPoly::var(jvar(2, 1, 1)).scale(&alpha(2, &k)));
        assert_eq!(r[2], expect);
        assert_eq!(r[1], MPoly::var(0).add(&MPoly::var(1)));
    }

    #[test]
    fn identity_small() {
        miura_identity(2, &Scalar::k()).unwrap();
        miura_identity(3, &Scalar::k()).unwrap();
    }

    #[test]
    fn sl2_central_charge() {
        let c = virasoro_certificate(2, &Scalar::k()).unwrap();
        assert!(c.matches_formula);
        assert_eq!(c.central_charge.to_string(), "(-6k^2-11k-4)/(k+2)");
    }

    #[test]
    fn gl_generators_closed() {
        let b = Brst::new(Kind::Gl, 2, &Form::KTrace).unwrap();
        assert!(generators_closed(&b, &Scalar::k()).unwrap().iter().all(|x| *x));
    }

    #[test]
    fn w3_closure_specializes() {
        let sym = w3_closure(&Scalar::k()).unwrap();
        let one = w3_closure(&Scalar::int(1)).unwrap();
        assert!(sym.closed && one.closed);
        assert_eq!(sym.terms.len(), one.terms.len());
        for (a, b) in sym.terms.iter().zip(&one.terms) {
            assert_eq!((&a.bracket, a.lambda_power), (&b.bracket, b.lambda_power));
            let at_one: Vec<(String, Scalar)> =
                a.expansion.iter().map(|(m, c)| (m.clone(), Scalar::Q(c.eval(&crate::scalar::rint(1)).unwrap()))).filter(|(_, c)| !c.is_zero()).collect();
            assert_eq!(at_one, b.expansion);
        }
    }
}
