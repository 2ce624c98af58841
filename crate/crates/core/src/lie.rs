//! Finite-dimensional Lie data for gl_n and sl_n.
//!
//! Matrix units are `e(i,j)` with 0-based indices; positive roots are the
//! pairs `i < j` with height `j - i`. The principal triple is
//! `e = Σ i(n-i) e_{i,i+1}`, `h = Σ (n+1-2i) e_{ii}`, `f = Σ e_{i+1,i}`
//! (1-based in these formulas).

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::solve_columns;
use crate::poly::MPoly;
use crate::scalar::Scalar;

pub type Mat = Vec<Vec<Scalar>>;

pub fn mat_zero(n: usize) -> Mat {
    vec![vec![Scalar::zero(); n]; n]
}

pub fn mat_unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = mat_zero(n);
    m[i][j] = Scalar::one();
    m
}

pub fn mat_identity(n: usize) -> Mat {
    let mut m = mat_zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let mut c = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        for (l, bl) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bl[j].is_zero() {
                    c[i][j] += &(&a[i][l] * &bl[j]);
                }
            }
        }
    }
    c
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn mat_scale(a: &Mat, s: &Scalar) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    mat_add(a, &mat_scale(b, &Scalar::int(-1)))
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

pub fn trace(a: &Mat) -> Scalar {
    let mut t = Scalar::zero();
    for (i, r) in a.iter().enumerate() {
        t += &r[i];
    }
    t
}

pub fn is_zero_mat(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Coefficients `c_1..c_n` of `det(tI - A) = t^n + Σ c_i t^{n-i}`
/// (Faddeev–LeVerrier).
pub fn invariant_polys(n: usize, a: &Mat) -> Result<Vec<Scalar>> {
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("expected {n}x{n} matrix")));
    }
    let mut c = Vec::with_capacity(n);
    let mut m = mat_zero(n);
    let mut prev = Scalar::one();
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k)/k
        let mut mk = mat_mul(a, &m);
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &prev;
        }
        let ck = -(&trace(&mat_mul(a, &mk)) * &Scalar::frac(1, k as i64));
        m = mk;
        prev = ck.clone();
        c.push(ck);
    }
    Ok(c)
}

/// Companion matrix: ones on the subdiagonal, last column `-a_1, …, -a_n`,
/// so that `det(tI - A) = t^n + a_n t^{n-1} + … + a_1`.
pub fn companion(a: &[Scalar]) -> Mat {
    let n = a.len();
    let mut m = mat_zero(n);
    for i in 1..n {
        m[i][i - 1] = Scalar::one();
    }
    for (i, ai) in a.iter().enumerate() {
        m[i][n - 1] = -ai;
    }
    m
}

/// A Lie algebra of n×n matrices with a chosen basis.
#[derive(Clone, Debug)]
pub struct MatrixLie {
    pub n: usize,
    pub names: Vec<String>,
    pub mats: Vec<Mat>,
    brackets: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl MatrixLie {
    pub fn new(n: usize, basis: Vec<(String, Mat)>) -> Result<MatrixLie> {
        let (names, mats): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        let mut l = MatrixLie { n, names, mats, brackets: Vec::new() };
        let d = l.dim();
        let mut br = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let c = commutator(&l.mats[i], &l.mats[j]);
                let co = l.coords(&c).ok_or_else(|| Error::InvalidPresentation(format!("[{},{}] leaves the span", l.names[i], l.names[j])))?;
                br[i][j] = co.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            }
        }
        l.brackets = br;
        Ok(l)
    }
    pub fn dim(&self) -> usize {
        self.mats.len()
    }
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.brackets[i][j]
    }
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }
    /// Coordinates of a matrix in this basis, if it lies in the span.
    pub fn coords(&self, m: &Mat) -> Option<Vec<Scalar>> {
        let flat = |a: &Mat| a.iter().flatten().cloned().collect::<Vec<_>>();
        let cols: Vec<Vec<Scalar>> = self.mats.iter().map(flat).collect();
        solve_columns(&cols, &flat(m))
    }
    pub fn to_matrix(&self, v: &[Scalar]) -> Mat {
        let mut m = mat_zero(self.n);
        for (c, b) in v.iter().zip(&self.mats) {
            if !c.is_zero() {
                m = mat_add(&m, &mat_scale(b, c));
            }
        }
        m
    }
    /// Gram matrix of `tr(xy)`.
    pub fn trace_gram(&self) -> Mat {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| trace(&mat_mul(&self.mats[i], &self.mats[j]))).collect()).collect()
    }
    /// Gram matrix of the Killing form of the ambient gl_n,
    /// `2n tr(xy) - 2 tr(x) tr(y)`.
    pub fn gl_killing_gram(&self) -> Mat {
        let d = self.dim();
        let n = Scalar::int(2 * self.n as i64);
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| &(&n * &trace(&mat_mul(&self.mats[i], &self.mats[j]))) - &(&Scalar::int(2) * &(&trace(&self.mats[i]) * &trace(&self.mats[j]))))
                    .collect()
            })
            .collect()
    }
    /// Killing form computed intrinsically, `tr(ad x ad y)` on this algebra.
    pub fn killing_gram(&self) -> Mat {
        let d = self.dim();
        let ad: Vec<Mat> = (0..d)
            .map(|i| {
                let mut m = mat_zero(d);
                for j in 0..d {
                    for (t, c) in self.bracket(i, j) {
                        m[*t][j] = c.clone();
                    }
                }
                m
            })
            .collect();
        (0..d).map(|i| (0..d).map(|j| trace(&mat_mul(&ad[i], &ad[j]))).collect()).collect()
    }
    /// Check symmetry and invariance `κ([x,y],z) = κ(x,[y,z])` of a Gram matrix.
    pub fn check_invariant_form(&self, g: &Mat) -> Result<()> {
        let d = self.dim();
        if g.len() != d || g.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidForm("wrong size".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if g[i][j] != g[j][i] {
                    return Err(Error::InvalidForm(format!("not symmetric at ({i},{j})")));
                }
            }
        }
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let mut l = Scalar::zero();
                    for (t, c) in self.bracket(x, y) {
                        l += &(c * &g[*t][z]);
                    }
                    let mut r = Scalar::zero();
                    for (t, c) in self.bracket(y, z) {
                        r += &(c * &g[x][*t]);
                    }
                    if l != r {
                        return Err(Error::InvalidForm(format!("not invariant on ({},{},{})", self.names[x], self.names[y], self.names[z])));
                    }
                }
            }
        }
        Ok(())
    }
    /// Antisymmetry and Jacobi on all basis triples.
    pub fn check_jacobi(&self) -> bool {
        let d = self.dim();
        let br = |v: &[Scalar], j: usize| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); d];
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (t, s) in self.bracket(i, j) {
                    out[*t] += &(c * s);
                }
            }
            out
        };
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); d];
            v[i] = Scalar::one();
            v
        };
        for a in 0..d {
            for b in 0..d {
                let ab = br(&unit(a), b);
                let ba = br(&unit(b), a);
                if ab.iter().zip(&ba).any(|(x, y)| !(x + y).is_zero()) {
                    return false;
                }
                for c in 0..d {
                    // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                    let t1 = br(&ab, c);
                    let t2 = br(&br(&unit(b), c), a);
                    let t3 = br(&br(&unit(c), a), b);
                    if (0..d).any(|i| !(&(&t1[i] + &t2[i]) + &t3[i]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn eij_name(i: usize, j: usize) -> String {
    format!("e{}{}", i + 1, j + 1)
}

pub fn gl(n: usize) -> MatrixLie {
    let basis = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (eij_name(i, j), mat_unit(n, i, j))).collect();
    MatrixLie::new(n, basis).expect("gl_n closes")
}

/// sl_n with basis: off-diagonal `e_ij` and `h_i = e_ii - e_{i+1,i+1}`.
pub fn sl(n: usize) -> MatrixLie {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push((eij_name(i, j), mat_unit(n, i, j)));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push((format!("h{}", i + 1), mat_sub(&mat_unit(n, i, i), &mat_unit(n, i + 1, i + 1))));
    }
    MatrixLie::new(n, basis).expect("sl_n closes")
}

/// Which algebra a construction refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Gl,
    Sl,
}

/// Invariant forms available to the affine constructions.
#[derive(Clone, Debug)]
pub enum Form {
    /// `k · tr(xy)`.
    KTrace,
    /// `k · κ₀`, with `κ₀ = tr(xy) - tr x tr y / n` (this is `tr` on sl_n).
    KNormalized,
    /// Explicit Gram matrix in the basis of the algebra.
    Explicit(Mat),
}

impl Form {
    pub fn gram(&self, l: &MatrixLie) -> Result<Mat> {
        let g = match self {
            Form::KTrace => mat_scale(&l.trace_gram(), &Scalar::k()),
            Form::KNormalized => {
                let t = l.trace_gram();
                let d = l.dim();
                let inv_n = Scalar::frac(1, l.n as i64);
                let tr: Vec<Scalar> = l.mats.iter().map(trace).collect();
                let g0: Mat = (0..d).map(|i| (0..d).map(|j| &t[i][j] - &(&inv_n * &(&tr[i] * &tr[j]))).collect()).collect();
                mat_scale(&g0, &Scalar::k())
            }
            Form::Explicit(m) => m.clone(),
        };
        l.check_invariant_form(&g)?;
        Ok(g)
    }
}

/// Root and triple data for gl_n / sl_n.
#[derive(Clone, Debug)]
pub struct LieData {
    pub n: usize,
    /// Positive roots `(i, j)`, `i < j`, ordered by height then `i`.
    pub pos_roots: Vec<(usize, usize)>,
    pub e: Mat,
    pub h: Mat,
    pub f: Mat,
}

impl LieData {
    pub fn new(n: usize) -> LieData {
        assert!(n >= 1);
        let mut pos_roots = Vec::new();
        for ht in 1..n {
            for i in 0..n - ht {
                pos_roots.push((i, i + ht));
            }
        }
        let mut e = mat_zero(n);
        let mut h = mat_zero(n);
        let mut f = mat_zero(n);
        for i in 0..n {
            let i1 = i as i64 + 1;
            h[i][i] = Scalar::int(n as i64 + 1 - 2 * i1);
            if i + 1 < n {
                e[i][i + 1] = Scalar::int(i1 * (n as i64 - i1));
                f[i + 1][i] = Scalar::one();
            }
        }
        LieData { n, pos_roots, e, h, f }
    }
    pub fn height(&self, a: usize) -> usize {
        let (i, j) = self.pos_roots[a];
        j - i
    }
    pub fn root_index(&self, i: usize, j: usize) -> Option<usize> {
        self.pos_roots.iter().position(|&r| r == (i, j))
    }
    /// Structure constants of 𝔫: `[x_a, x_b] = Σ c x_g`, returned as `(g, c)`.
    pub fn n_bracket(&self, a: usize, b: usize) -> Option<(usize, Scalar)> {
        let (i, j) = self.pos_roots[a];
        let (k, l) = self.pos_roots[b];
        if j == k {
            Some((self.root_index(i, l).unwrap(), Scalar::one()))
        } else if l == i {
            Some((self.root_index(k, j).unwrap(), Scalar::int(-1)))
        } else {
            None
        }
    }
    /// `χ(x) = tr(f x)`, which is 1 on the simple root vectors.
    pub fn chi(&self, x: &Mat) -> Scalar {
        trace(&mat_mul(&self.f, x))
    }
    pub fn check_triple(&self) -> bool {
        let c = |a: &Mat, b: &Mat| commutator(a, b);
        c(&self.e, &self.f) == self.h
            && c(&self.h, &self.e) == mat_scale(&self.e, &Scalar::int(2))
            && c(&self.h, &self.f) == mat_scale(&self.f, &Scalar::int(-2))
    }
}

/// `p_i` restricted to `f + diag(h_1..h_n)`, as a polynomial in the `h`'s
/// (variable `j` is `h_{j+1}`).
pub fn kostant_slice_restriction(n: usize, i: usize) -> Result<MPoly> {
    if i == 0 || i > n {
        return Err(Error::DimensionMismatch(format!("index {i} out of 1..={n}")));
    }
    // Faddeev–LeVerrier over the polynomial ring.
    let mut a: Vec<Vec<MPoly>> = vec![vec![MPoly::zero(); n]; n];
    for r in 0..n {
        a[r][r] = MPoly::var(r);
        if r + 1 < n {
            a[r + 1][r] = MPoly::one();
        }
    }
    let mul = |x: &Vec<Vec<MPoly>>, y: &Vec<Vec<MPoly>>| -> Vec<Vec<MPoly>> {
        let mut z = vec![vec![MPoly::zero(); n]; n];
        for p in 0..n {
            for q in 0..n {
                let mut s = MPoly::zero();
                for l in 0..n {
                    if !x[p][l].is_zero() && !y[l][q].is_zero() {
                        s = s.add(&x[p][l].mul(&y[l][q]));
                    }
                }
                z[p][q] = s;
            }
        }
        z
    };
    let mut m = vec![vec![MPoly::zero(); n]; n];
    let mut prev = MPoly::one();
    let mut out = MPoly::zero();
    for k in 1..=i {
        let mut mk = mul(&a, &m);
        for (r, row) in mk.iter_mut().enumerate() {
            row[r] = row[r].add(&prev);
        }
        let am = mul(&a, &mk);
        let mut tr = MPoly::zero();
        for (r, row) in am.iter().enumerate() {
            tr = tr.add(&row[r]);
        }
        let ck = tr.scale(&Scalar::frac(-1, k as i64));
        m = mk;
        prev = ck.clone();
        out = ck;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct KostantReport {
    pub n: usize,
    pub samples: usize,
    pub stays_in_f_plus_b: bool,
    pub invariants_preserved: bool,
    pub invariants_separate: bool,
    pub pass: bool,
}

fn random_unipotent<R: Rng>(n: usize, rng: &mut R) -> (Mat, Mat) {
    let mut g = mat_identity(n);
    for i in 0..n {
        for j in i + 1..n {
            g[i][j] = Scalar::int(rng.gen_range(-5..=5));
        }
    }
    // inverse of I + N is Σ (-N)^k
    let nil = mat_sub(&g, &mat_identity(n));
    let mut inv = mat_identity(n);
    let mut p = mat_identity(n);
    for _ in 1..n {
        p = mat_mul(&p, &mat_scale(&nil, &Scalar::int(-1)));
        inv = mat_add(&inv, &p);
    }
    (g, inv)
}

/// Randomized check that the unipotent group moves slice points inside
/// `f + 𝔟` without changing invariants, and that invariants separate slice points.
pub fn verify_kostant_freeness<R: Rng>(n: usize, samples: usize, rng: &mut R) -> Result<KostantReport> {
    if n > 4 || samples == 0 {
        return Err(Error::Unsupported("need n ≤ 4 and samples ≥ 1".into()));
    }
    let data = LieData::new(n);
    let mut in_fb = true;
    let mut preserved = true;
    let mut seen: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut separate = true;
    for _ in 0..samples {
        let a: Vec<Scalar> = (0..n).map(|_| Scalar::int(rng.gen_range(-5..=5))).collect();
        let x = companion(&a);
        let (g, gi) = random_unipotent(n, rng);
        let y = mat_mul(&mat_mul(&g, &x), &gi);
        let d = mat_sub(&y, &data.f);
        for i in 0..n {
            for j in 0..i {
                if !d[i][j].is_zero() {
                    in_fb = false;
                }
            }
        }
        let px = invariant_polys(n, &x)?;
        if px != invariant_polys(n, &y)? {
            preserved = false;
        }
        for (a2, p2) in &seen {
            if a2 != &a && p2 == &px {
                separate = false;
            }
        }
        seen.push((a, px));
    }
    Ok(KostantReport {
        n,
        samples,
        stays_in_f_plus_b: in_fb,
        invariants_preserved: preserved,
        invariants_separate: separate,
        pass: in_fb && preserved && separate,
    })
}

/// Rank check of `𝔤 = 𝔞 + [𝔤, f]` with `𝔞` the span of the last column.
pub fn slice_transversal(n: usize) -> bool {
    let g = gl(n);
    let data = LieData::new(n);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for m in &g.mats {
        rows.push(commutator(m, &data.f).into_iter().flatten().collect());
    }
    for i in 0..n {
        rows.push(mat_unit(n, i, n - 1).into_iter().flatten().collect());
    }
    crate::linalg::rank(&rows, n * n) == n * n
}

/// `t`-weights of the action `ρ(t) = t·Ad(t^{h/2})` on `f` and on the basis of 𝔟.
/// Returns `(weight of f, weights on 𝔟)`; the action preserves `f + 𝔟` with
/// positive weights on 𝔟 when the first is 0 and the rest are positive.
pub fn cstar_weights(n: usize) -> (i64, Vec<i64>) {
    let data = LieData::new(n);
    // ad(h) e_ij = (h_i - h_j) e_ij, so Ad(t^{h/2}) scales by t^{(h_i-h_j)/2}
    let hd: Vec<i64> = (0..n).map(|i| data.h[i][i].as_rational().unwrap().to_integer().try_into().unwrap()).collect();
    let w = |i: usize, j: usize| 1 + (hd[i] - hd[j]) / 2;
    let mut fw = None;
    for i in 0..n - 1 {
        let x = w(i + 1, i);
        assert!(fw.is_none() || fw == Some(x));
        fw = Some(x);
    }
    let mut bw = Vec::new();
    for i in 0..n {
        for j in i..n {
            bw.push(w(i, j));
        }
    }
    (fw.unwrap_or(0), bw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triple_and_jacobi() {
        for n in 2..=4 {
            assert!(LieData::new(n).check_triple(), "n={n}");
            assert!(gl(n).check_jacobi());
            assert!(sl(n).check_jacobi());
        }
    }

    #[test]
    fn normalized_form_on_highest_root() {
        // κ₀(θ,θ)=2 for the coroot-normalized highest root vector h_θ = e11 - enn
        for n in 2..=4 {
            let l = sl(n);
            let g = Form::KNormalized.gram(&l).unwrap();
            let mut v = vec![Scalar::zero(); l.dim()];
            for i in 0..n - 1 {
                v[l.index(&format!("h{}", i + 1)).unwrap()] = Scalar::one();
            }
            let mut s = Scalar::zero();
            for i in 0..l.dim() {
                for j in 0..l.dim() {
                    s += &(&(&v[i] * &v[j]) * &g[i][j]);
                }
            }
            assert_eq!(s, &Scalar::int(2) * &Scalar::k());
        }
    }

    #[test]
    fn killing_of_gl() {
        for n in 2..=3 {
            let l = gl(n);
            assert_eq!(l.killing_gram(), l.gl_killing_gram());
        }
    }

    #[test]
    fn non_invariant_form_rejected() {
        let l = sl(2);
        let mut g = mat_zero(l.dim());
        g[0][0] = Scalar::one();
        assert!(matches!(Form::Explicit(g).gram(&l), Err(Error::InvalidForm(_))));
    }

    #[test]
    fn companion_char_poly() {
        let a = [Scalar::int(3), Scalar::int(-2)];
        // det(tI - A) = t^2 + a2 t + a1
        assert_eq!(invariant_polys(2, &companion(&a)).unwrap(), vec![Scalar::int(-2), Scalar::int(3)]);
        assert_eq!(invariant_polys(3, &mat_zero(3)).unwrap(), vec![Scalar::zero(); 3]);
        assert!(invariant_polys(3, &mat_zero(2)).is_err());
        // symbolic entries
        let a = [Scalar::k(), Scalar::k_plus(1), Scalar::int(5)];
        let p = invariant_polys(3, &companion(&a)).unwrap();
        assert_eq!(p, vec![Scalar::int(5), Scalar::k_plus(1), Scalar::k()]);
    }

    #[test]
    fn conjugation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = 3;
            let a: Mat = (0..n).map(|_| (0..n).map(|_| Scalar::int(rng.gen_range(-5..=5))).collect()).collect();
            // g = lower unipotent * upper unipotent, with explicit inverses
            let (u, ui) = random_unipotent(n, &mut rng);
            let (v, vi) = random_unipotent(n, &mut rng);
            let vt: Mat = (0..n).map(|i| (0..n).map(|j| v[j][i].clone()).collect()).collect();
            let vti: Mat = (0..n).map(|i| (0..n).map(|j| vi[j][i].clone()).collect()).collect();
            let g = mat_mul(&u, &vt);
            let gi = mat_mul(&vti, &ui);
            assert_eq!(mat_mul(&g, &gi), mat_identity(n));
            let b = mat_mul(&mat_mul(&g, &a), &gi);
            assert_eq!(invariant_polys(n, &a).unwrap(), invariant_polys(n, &b).unwrap());
        }
    }

    #[test]
    fn slice_restriction() {
        let h1 = MPoly::var(0);
        let h2 = MPoly::var(1);
        assert_eq!(kostant_slice_restriction(2, 1).unwrap(), h1.add(&h2).scale(&Scalar::int(-1)));
        assert_eq!(kostant_slice_restriction(2, 2).unwrap(), h1.mul(&h2));
        for n in 2..=4 {
            let mut tr = MPoly::zero();
            for j in 0..n {
                tr = tr.add(&MPoly::var(j));
            }
            assert_eq!(kostant_slice_restriction(n, 1).unwrap(), tr.scale(&Scalar::int(-1)));
        }
        // n = 3, i = 3: -h1 h2 h3 (f contributes nothing)
        let p = kostant_slice_restriction(3, 3).unwrap();
        assert_eq!(p, MPoly::var(0).mul(&MPoly::var(1)).mul(&MPoly::var(2)).scale(&Scalar::int(-1)));
    }

    #[test]
    fn kostant_freeness() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..=4 {
            let r = verify_kostant_freeness(n, 100, &mut rng).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn identity_fixes_slice() {
        let x = companion(&[Scalar::int(1), Scalar::int(2)]);
        let i = mat_identity(2);
        assert_eq!(mat_mul(&mat_mul(&i, &x), &i), x);
    }

    #[test]
    fn transversal_and_cstar() {
        for n in 2..=4 {
            assert!(slice_transversal(n));
        }
        for n in 2..=3 {
            let (fw, bw) = cstar_weights(n);
            assert_eq!(fw, 0);
            assert!(bw.iter().all(|&w| w > 0));
        }
    }

    #[test]
    fn chi_vanishes_on_derived_n() {
        for n in 2..=4 {
            let d = LieData::new(n);
            for a in 0..d.pos_roots.len() {
                for b in 0..d.pos_roots.len() {
                    let (i, j) = d.pos_roots[a];
                    let (k, l) = d.pos_roots[b];
                    let c = commutator(&mat_unit(n, i, j), &mat_unit(n, k, l));
                    assert!(d.chi(&c).is_zero());
                }
            }
            for i in 0..n - 1 {
                assert!(d.chi(&mat_unit(n, i, i + 1)).is_one());
            }
        }
    }
}
