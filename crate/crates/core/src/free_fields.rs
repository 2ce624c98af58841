//! Concrete presentations: affine vertex algebras, charged fermions,
//! Heisenberg and Virasoro algebras, and the BRST complex `V^κ(𝔤) ⊗ F`.

use crate::error::{Error, Result};
use crate::lie::{gl, sl, Form, Kind, LieData, Mat, MatrixLie};
use crate::scalar::{rint, Rat, Scalar};
use crate::vertex::{lin, Engine, Gen, Generator, LinComb, Presentation, State};

/// Affine presentation with `[x_λ y] = [x,y] + λ κ(x,y)`.
pub fn affine(name: &str, l: &MatrixLie, gram: &Mat) -> Presentation {
    let gens = l.names.iter().map(|nm| Generator { name: nm.clone(), odd: false, weight: rint(1), sw2: 2, charge: 0 }).collect();
    let mut p = Presentation::new(name, gens);
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let j0: Vec<_> = l.bracket(a, b).iter().map(|(g, c)| (Some(*g as Gen), 0, c.clone())).collect();
            let j1 = vec![(None, 0, gram[a][b].clone())];
            p.set_bracket(a as Gen, b as Gen, vec![lin(&j0), lin(&j1)]);
        }
    }
    p
}

#[derive(Clone, Debug)]
pub struct AffinePreset {
    pub lie: MatrixLie,
    pub gram: Mat,
    pub engine: Engine,
}

/// `V^κ(gl_n)` or `V^κ(sl_n)`.
pub fn build_affine(kind: Kind, n: usize, form: &Form) -> Result<AffinePreset> {
    if n < 2 {
        return Err(Error::Unsupported("n ≥ 2 required".into()));
    }
    let lie = match kind {
        Kind::Gl => gl(n),
        Kind::Sl => sl(n),
    };
    let gram = form.gram(&lie)?;
    let name = format!("affine-{}{n}", if kind == Kind::Gl { "gl" } else { "sl" });
    let engine = Engine::new(affine(&name, &lie, &gram))?;
    Ok(AffinePreset { lie, gram, engine })
}

pub fn psi_name(i: usize, j: usize) -> String {
    format!("psi{}{}", i + 1, j + 1)
}
pub fn psis_name(i: usize, j: usize) -> String {
    format!("psi*{}{}", i + 1, j + 1)
}

/// Charged fermions `ψ_α, ψ*_α` (α ∈ Δ₊) with `[ψ_α λ ψ*_β] = δ_{αβ}`;
/// conformal weights `1 - ht α` and `ht α`.
pub fn fermions(n: usize) -> Presentation {
    let d = LieData::new(n);
    let mut gens = Vec::new();
    for &(i, j) in &d.pos_roots {
        gens.push(Generator { name: psi_name(i, j), odd: true, weight: rint(1 - (j - i) as i64), sw2: 1, charge: -1 });
    }
    for &(i, j) in &d.pos_roots {
        gens.push(Generator { name: psis_name(i, j), odd: true, weight: rint((j - i) as i64), sw2: 1, charge: 1 });
    }
    let r = d.pos_roots.len() as Gen;
    let mut p = Presentation::new(&format!("fermions-{n}"), gens);
    for a in 0..r {
        p.set_bracket_with_skew(a, a + r, vec![lin(&[(None, 0, Scalar::one())])]);
    }
    p
}

/// Tensor product: generators concatenated, mixed brackets zero.
pub fn tensor(name: &str, a: &Presentation, b: &Presentation) -> Presentation {
    let off = a.gens.len() as Gen;
    let mut gens = a.gens.clone();
    gens.extend(b.gens.iter().cloned());
    let mut p = Presentation::new(name, gens);
    let shift = |lc: &LinComb, o: Gen| -> LinComb { lc.iter().map(|((g, t), c)| ((g.map(|x| x + o), *t), c.clone())).collect() };
    for x in 0..a.gens.len() as Gen {
        for y in 0..a.gens.len() as Gen {
            p.set_bracket(x, y, a.bracket(x, y).iter().map(|lc| shift(lc, 0)).collect());
        }
    }
    for x in 0..b.gens.len() as Gen {
        for y in 0..b.gens.len() as Gen {
            p.set_bracket(x + off, y + off, b.bracket(x, y).iter().map(|lc| shift(lc, off)).collect());
        }
    }
    p
}

/// Heisenberg algebra with `[J_i λ J_j] = gram[i][j] λ`.
pub fn heisenberg(name: &str, names: &[String], gram: &Mat) -> Presentation {
    let gens = names.iter().map(|nm| Generator { name: nm.clone(), odd: false, weight: rint(1), sw2: 2, charge: 0 }).collect();
    let mut p = Presentation::new(name, gens);
    for i in 0..names.len() {
        for j in 0..names.len() {
            p.set_bracket(i as Gen, j as Gen, vec![LinComb::new(), lin(&[(None, 0, gram[i][j].clone())])]);
        }
    }
    p
}

/// Virasoro algebra with `[L_λ L] = TL + 2λL + (c/12) λ³`.
pub fn virasoro(name: &str, c: &Scalar) -> Presentation {
    let mut p = Presentation::new(name, vec![Generator { name: "L".into(), odd: false, weight: rint(2), sw2: 4, charge: 0 }]);
    p.set_bracket(
        0,
        0,
        vec![lin(&[(Some(0), 1, Scalar::one())]), lin(&[(Some(0), 0, Scalar::int(2))]), LinComb::new(), lin(&[(None, 0, c * &Scalar::frac(1, 2))])],
    );
    p
}

/// The complex `C^κ(𝔤) = V^κ(𝔤) ⊗ F` with conformal weights from
/// `L = L_sug + Tρ∨ + L_F`: `e_ij` has weight `1 - (j - i)`.
#[derive(Debug)]
pub struct Complex {
    pub kind: Kind,
    pub n: usize,
    pub lie: MatrixLie,
    pub gram: Mat,
    pub data: LieData,
    pub engine: Engine,
    /// Number of Lie generators; fermions follow.
    pub n_lie: usize,
}

impl Complex {
    pub fn psi(&self, root: usize) -> Gen {
        (self.n_lie + root) as Gen
    }
    pub fn psis(&self, root: usize) -> Gen {
        (self.n_lie + self.data.pos_roots.len() + root) as Gen
    }
    pub fn lie_gen(&self, name: &str) -> Gen {
        self.lie.index(name).expect("basis element") as Gen
    }
}

pub fn build_complex(kind: Kind, n: usize, form: &Form) -> Result<Complex> {
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported("complex needs 2 ≤ n ≤ 4".into()));
    }
    let aff = build_affine(kind, n, form)?;
    let mut ap = aff.engine.p.clone();
    for (idx, nm) in aff.lie.names.iter().enumerate() {
        let m = &aff.lie.mats[idx];
        // weight from the ad(ρ∨)-grading: e_ij sits in degree j - i
        let mut w = None;
        for i in 0..n {
            for j in 0..n {
                if !m[i][j].is_zero() {
                    let x = 1 - (j as i64 - i as i64);
                    assert!(w.is_none() || w == Some(x), "basis element {nm} not homogeneous");
                    w = Some(x);
                }
            }
        }
        ap.gens[idx].weight = rint(w.unwrap_or(1));
    }
    let name = format!("complex-{}{n}", if kind == Kind::Gl { "gl" } else { "sl" });
    let p = tensor(&name, &ap, &fermions(n));
    let engine = Engine::new(p)?;
    Ok(Complex { kind, n, n_lie: aff.lie.dim(), lie: aff.lie, gram: aff.gram, data: LieData::new(n), engine })
}

/// `ρ̂(x_α) = Σ c_{α,β}^γ :ψ_γ ψ*_β:` inside the fermion presentation.
pub fn hat_rho_embedding(n: usize, e: &Engine) -> Vec<State> {
    let d = LieData::new(n);
    let r = d.pos_roots.len();
    (0..r)
        .map(|a| {
            let mut s = State::zero();
            for b in 0..r {
                if let Some((g, c)) = d.n_bracket(a, b) {
                    let psi = e.gen_state(g as Gen);
                    let psis = e.gen_state((r + b) as Gen);
                    s.add_scaled(&e.normally_ordered(&psi, &psis), &c);
                }
            }
            s
        })
        .collect()
}

/// Named presets selectable from the CLI.
pub fn preset(name: &str) -> Result<Engine> {
    let e = match name {
        "affine-sl2" => build_affine(Kind::Sl, 2, &Form::KNormalized)?.engine,
        "affine-sl3" => build_affine(Kind::Sl, 3, &Form::KNormalized)?.engine,
        "affine-gl2" => build_affine(Kind::Gl, 2, &Form::KTrace)?.engine,
        "affine-gl3" => build_affine(Kind::Gl, 3, &Form::KTrace)?.engine,
        "fermions-2" => Engine::new(fermions(2))?,
        "fermions-3" => Engine::new(fermions(3))?,
        "complex-sl2" => build_complex(Kind::Sl, 2, &Form::KNormalized)?.engine,
        "complex-sl3" => build_complex(Kind::Sl, 3, &Form::KNormalized)?.engine,
        "heisenberg" => Engine::new(heisenberg("heisenberg", &["b".to_string()], &vec![vec![Scalar::one()]]))?,
        // symbolic central charge carried by the parameter `k`
        "virasoro" => Engine::new(virasoro("virasoro", &Scalar::k()))?,
        "w-sl2" => Engine::new(virasoro("w-sl2", &crate::miura::central_charge_formula(2)))?,
        _ => return Err(Error::UnknownGenerator(format!("preset {name}"))),
    };
    Ok(e)
}

pub const PRESETS: &[&str] =
    &["affine-sl2", "affine-sl3", "affine-gl2", "affine-gl3", "fermions-2", "fermions-3", "complex-sl2", "complex-sl3", "heisenberg", "virasoro", "w-sl2"];

/// Coefficients of `∏_{m≥1} (1 - q^m)^{-d}` through `q^order`.
pub fn colored_partitions(d: usize, order: usize) -> Vec<i64> {
    let mut c = vec![0i64; order + 1];
    c[0] = 1;
    for _ in 0..d {
        for m in 1..=order {
            for i in m..=order {
                c[i] += c[i - m];
            }
        }
    }
    c
}

/// Graded dimensions (by conformal weight) of the span of PBW monomials,
/// counted by direct enumeration.
pub fn pbw_dims_by_weight(e: &Engine, max_sw2: i64) -> Vec<(Rat, usize)> {
    let mut out: std::collections::BTreeMap<Rat, usize> = std::collections::BTreeMap::new();
    for w in 0..=max_sw2 {
        for m in e.monomials_sw2(w) {
            *out.entry(e.mono_weight(&m)).or_default() += 1;
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_brackets() {
        let a = build_affine(Kind::Sl, 2, &Form::KNormalized).unwrap();
        let e = &a.engine;
        let ee = e.named("e12").unwrap();
        let f = e.named("e21").unwrap();
        let h = e.named("h1").unwrap();
        let ef = e.lambda_bracket(&ee, &f);
        assert_eq!(ef[0], h);
        assert_eq!(ef[1], State::vacuum().scale(&Scalar::k()));
        let hh = e.lambda_bracket(&h, &h);
        assert!(hh[0].is_zero());
        assert_eq!(hh[1], State::vacuum().scale(&(&Scalar::int(2) * &Scalar::k())));
        // e_(0) f_(-1)|0> = h, e_(1) f_(-1)|0> = k|0>
        assert_eq!(e.mode_action(&ee, 0, &f), h);
    }

    #[test]
    fn gl2_trace_form_modes() {
        let a = build_affine(Kind::Gl, 2, &Form::KTrace).unwrap();
        let e = &a.engine;
        let ee = e.named("e12").unwrap();
        let f = e.named("e21").unwrap();
        let h = e.named("e11").unwrap().sub(&e.named("e22").unwrap());
        assert_eq!(e.mode_action(&ee, 0, &f), h);
        assert_eq!(e.mode_action(&ee, 1, &f), State::vacuum().scale(&Scalar::k()));
    }

    #[test]
    fn vacuum_annihilated() {
        let e = preset("complex-sl2").unwrap();
        for g in 0..e.p.gens.len() as Gen {
            for m in 0..3 {
                assert!(e.mode_action(&e.gen_state(g), m, &State::vacuum()).is_zero());
            }
        }
    }

    #[test]
    fn complex_generator_count() {
        let c = build_complex(Kind::Gl, 2, &Form::KTrace).unwrap();
        assert_eq!(c.engine.p.gens.len(), 6);
        let c = build_complex(Kind::Sl, 3, &Form::KNormalized).unwrap();
        assert_eq!(c.engine.p.gens.len(), 8 + 6);
    }

    #[test]
    fn affine_graded_dims() {
        // V^k(sl_2): PBW count equals ∏(1-q^m)^{-3}
        let e = preset("affine-sl2").unwrap();
        let dims = pbw_dims_by_weight(&e, 10);
        let expect = colored_partitions(3, 5);
        for (w, d) in dims {
            assert_eq!(d as i64, expect[w.to_integer().try_into().unwrap_or(0usize)]);
        }
    }

    #[test]
    fn fermion_graded_dims() {
        // F for n=2 by standard weight: Λ(ψ*[t^-1]) ⊗ Λ(ψ[t^-1]t^-1) with both of weight ½ + depth
        let e = preset("fermions-2").unwrap();
        // independent count: two fermions, modes of weight 1/2, 3/2, …: ∏(1+q^{m-1/2})^2
        let mut poly = [0i64; 13];
        poly[0] = 1;
        for m in 0..6 {
            let w = 2 * m + 1; // doubled weight
            for _ in 0..2 {
                for i in (w..13).rev() {
                    poly[i] += poly[i - w];
                }
            }
        }
        for (w2, expect) in poly.iter().enumerate() {
            assert_eq!(e.monomials_sw2(w2 as i64).len() as i64, *expect);
        }
    }

    #[test]
    fn hat_rho_is_homomorphism() {
        let e = Engine::new(fermions(2)).unwrap();
        assert!(hat_rho_embedding(2, &e)[0].is_zero());
        let e = Engine::new(fermions(3)).unwrap();
        let rho = hat_rho_embedding(3, &e);
        let d = LieData::new(3);
        // e12 = root 0, e23 = root 1, e13 = root 2
        assert_eq!(rho[0].len(), 1);
        for a in 0..3 {
            for b in 0..3 {
                let br = e.lambda_bracket(&rho[a], &rho[b]);
                let expect = match d.n_bracket(a, b) {
                    Some((g, c)) => rho[g].scale(&c),
                    None => State::zero(),
                };
                assert_eq!(br.first().cloned().unwrap_or_default(), expect);
                assert!(br.iter().skip(1).all(|s| s.is_zero()));
            }
        }
    }

    #[test]
    fn presets_validate() {
        for p in PRESETS {
            preset(p).unwrap();
        }
        assert!(preset("nope").is_err());
    }

    #[test]
    fn complex_axioms_low_weight() {
        let e = preset("complex-sl2").unwrap();
        let r = e.verify_axioms(3, 10, 3).unwrap();
        assert!(r.pass);
    }
}
