//! Admissible levels and weights for `sl_n`, nilpotent-orbit partitions,
//! Verma and minimal-series characters of the W-algebra, and the
//! denominator identity.
//!
//! Finite weights are vectors in `ℚ^n` with coordinate sum zero (the
//! `ε`-basis, roots `ε_i - ε_j` of square length 2). A real affine root is
//! `(i, j, m)`, meaning `ε_i - ε_j + mδ`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_fields::colored_partitions;
use crate::scalar::{rat, rint, QSeries, Rat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelClass {
    NotAdmissible,
    Admissible,
    Nondegenerate,
}

/// `(p, q)` with `k + n = p/q` in lowest terms, if `k + n > 0`.
pub fn level_pq(n: usize, k: &Rat) -> Option<(i64, i64)> {
    let s = k + rint(n as i64);
    if !s.is_positive() {
        return None;
    }
    Some((s.numer().to_i64()?, s.denom().to_i64()?))
}

pub fn is_admissible_level(n: usize, k: &Rat) -> LevelClass {
    match level_pq(n, k) {
        Some((p, q)) if p >= n as i64 && q >= n as i64 => LevelClass::Nondegenerate,
        Some((p, _)) if p >= n as i64 => LevelClass::Admissible,
        _ => LevelClass::NotAdmissible,
    }
}

/// Partition of the orbit `𝕆_q`: `(n)` if `q ≥ n`, else `(q, …, q, s)`.
pub fn orbit_partition(n: usize, q: usize) -> Result<Vec<usize>> {
    if q == 0 {
        return Err(Error::Unsupported("q must be positive".into()));
    }
    if q >= n {
        return Ok(vec![n]);
    }
    let mut out = vec![q; n / q];
    if !n.is_multiple_of(q) {
        out.push(n % q);
    }
    Ok(out)
}

/// All partitions of `n`, parts non-increasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn dominates(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// Nilpotent in Jordan form with the given block sizes.
fn jordan(parts: &[usize]) -> Vec<Vec<i64>> {
    let n: usize = parts.iter().sum();
    let mut m = vec![vec![0i64; n]; n];
    let mut off = 0;
    for &b in parts {
        for i in 0..b.saturating_sub(1) {
            m[off + i][off + i + 1] = 1;
        }
        off += b;
    }
    m
}

/// `(ad x)^{2q} = 0`, by applying `ad x` to every matrix unit.
fn ad_power_vanishes(x: &[Vec<i64>], q: usize) -> bool {
    let n = x.len();
    let ad = |y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for l in 0..n {
                    s += x[i][l] * y[l][j] - y[i][l] * x[l][j];
                }
                out[i][j] = s;
            }
        }
        out
    };
    for a in 0..n {
        for b in 0..n {
            let mut y = vec![vec![0i64; n]; n];
            y[a][b] = 1;
            for _ in 0..2 * q {
                y = ad(&y);
            }
            if y.iter().flatten().any(|v| *v != 0) {
                return false;
            }
        }
    }
    true
}

/// The unique dominance-maximal partition whose Jordan nilpotent satisfies
/// `(ad x)^{2q} = 0`, found by brute force.
pub fn orbit_partition_brute(n: usize, q: usize) -> Option<Vec<usize>> {
    let ok: Vec<Vec<usize>> = partitions(n).into_iter().filter(|p| ad_power_vanishes(&jordan(p), q)).collect();
    ok.iter().find(|a| ok.iter().all(|b| dominates(a, b))).cloned()
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRow {
    pub n: usize,
    pub q: usize,
    pub partition: Vec<usize>,
    pub brute_force: Option<Vec<usize>>,
    pub ok: bool,
}

/// Formula for all `n, q ≤ 8`, with the brute-force check for `n ≤ brute_n`.
pub fn orbit_table(max_n: usize, max_q: usize, brute_n: usize) -> Result<Vec<OrbitRow>> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        for q in 1..=max_q {
            let partition = orbit_partition(n, q)?;
            let brute_force = if n <= brute_n { orbit_partition_brute(n, q) } else { None };
            let ok = partition.iter().sum::<usize>() == n && brute_force.as_ref().is_none_or(|b| *b == partition);
            rows.push(OrbitRow { n, q, partition, brute_force, ok });
        }
    }
    Ok(rows)
}

/// `q^{γ(Ω)/2(k+n)} ∏_{j≥1} (1 - q^j)^{-(n-1)}`.
pub fn verma_w_character(n: usize, k: &Rat, gamma_omega: &Rat, order: usize) -> Result<QSeries> {
    let kn = k + rint(n as i64);
    if kn.is_zero() {
        return Err(Error::CriticalLevel);
    }
    let offset = gamma_omega / (rint(2) * kn);
    let c = colored_partitions(n - 1, order).into_iter().map(Scalar::int).collect();
    Ok(QSeries::new(offset, c, order))
}

fn rho(n: usize) -> Vec<Rat> {
    (0..n).map(|i| rat(n as i64 - 1 - 2 * i as i64, 2)).collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fundamental weight `ω_i` (`1 ≤ i ≤ n-1`) in ε-coordinates.
fn omega(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|j| if j < i { Rat::one() } else { Rat::zero() } - rat(i as i64, n as i64)).collect()
}

/// Dominant integral affine weights of level `l` as Dynkin labels `a_0..a_{n-1}`.
pub fn dominant_integral(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n - 1 {
            let mut v = vec![left];
            v.extend_from_slice(cur);
            out.push(v);
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, l, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn rotate(a: &[usize]) -> Vec<usize> {
    let n = a.len();
    (0..n).map(|i| a[(i + n - 1) % n]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRep {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classes {
    pub n: usize,
    pub p: i64,
    pub q: i64,
    pub count: usize,
    /// `|P̂₊^{p-n}| · |P̂₊^{q-n}| / n`, meaningful only for a free action.
    pub naive_count: Rational,
    pub action_free: bool,
    pub reps: Vec<ClassRep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Rational(pub String);

/// `(P̂₊^{p-n} × P̂₊^{q-n}) / ℤ_n` by orbit enumeration.
pub fn nondegenerate_classes(n: usize, p: i64, q: i64) -> Result<Classes> {
    if p < n as i64 || q < n as i64 || p.gcd(&q) != 1 {
        return Err(Error::Unsupported(format!("({p},{q}) is not a nondegenerate pair for n = {n}")));
    }
    let a = dominant_integral(n, (p - n as i64) as usize);
    let b = dominant_integral(n, (q - n as i64) as usize);
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    let mut action_free = true;
    for x in &a {
        for y in &b {
            if seen.contains(&(x.clone(), y.clone())) {
                continue;
            }
            let mut orbit = BTreeSet::new();
            let (mut u, mut v) = (x.clone(), y.clone());
            for _ in 0..n {
                orbit.insert((u.clone(), v.clone()));
                u = rotate(&u);
                v = rotate(&v);
            }
            action_free &= orbit.len() == n;
            for o in &orbit {
                seen.insert(o.clone());
            }
            reps.push(ClassRep { lambda: x.clone(), mu: y.clone(), orbit_size: orbit.len() });
        }
    }
    let naive = Rat::new((a.len() * b.len()).into(), (n as i64).into());
    Ok(Classes { n, p, q, count: reps.len(), naive_count: Rational(naive.to_string()), action_free, reps })
}

/// `λ̄ + ρ` for the class `[(λ, μ)] ↦ λ̄ - (p/q)(μ̄ + ρ)`.
pub fn shifted_finite_part(n: usize, p: i64, q: i64, lam: &[usize], mu: &[usize]) -> Vec<Rat> {
    let kappa = rat(p, q);
    let r = rho(n);
    let mut v = r.clone();
    for i in 1..n {
        let w = omega(n, i);
        for j in 0..n {
            v[j] += rint(lam[i] as i64) * &w[j];
            v[j] -= &kappa * rint(mu[i] as i64) * &w[j];
        }
    }
    for j in 0..n {
        v[j] -= &kappa * &r[j];
    }
    v
}

/// Simple roots of the integral root system of `v` (`v = λ̄ + ρ`) at
/// `k + n = κ`, found among positive integral roots with `m ≤ 2·den κ`.
fn integral_simple_roots(n: usize, v: &[Rat], kappa: &Rat) -> Vec<(usize, usize, i64)> {
    let mbound = 4 * kappa.denom().to_i64().unwrap_or(1);
    let mut pos = Vec::new();
    for m in 0..=mbound {
        for i in 0..n {
            for j in 0..n {
                if i == j || (m == 0 && i > j) {
                    continue;
                }
                let c = &v[i] - &v[j] + kappa * rint(m);
                if c.is_integer() {
                    pos.push((i, j, m));
                }
            }
        }
    }
    let positive = |(i, j, m): (usize, usize, i64)| m > 0 || (m == 0 && i < j);
    pos.iter()
        .copied()
        .filter(|&(i, j, m)| {
            // s_β permutes the other positive integral roots
            pos.iter().all(|&(a, b, m2)| {
                if (a, b, m2) == (i, j, m) {
                    return true;
                }
                let mut f = vec![0i64; n];
                f[a] += 1;
                f[b] -= 1;
                let c = f[i] - f[j];
                f[i] -= c;
                f[j] += c;
                match (f.iter().position(|x| *x == 1), f.iter().position(|x| *x == -1)) {
                    (Some(x), Some(y)) => positive((x, y, m2 - c * m)),
                    _ => m2 - c * m > 0,
                }
            })
        })
        .collect()
}

fn pairing(v: &[Rat], root: (usize, usize, i64), kappa: &Rat) -> Rat {
    &v[root.0] - &v[root.1] + kappa * rint(root.2)
}

fn reflect(v: &[Rat], root: (usize, usize, i64), kappa: &Rat) -> Vec<Rat> {
    let c = pairing(v, root, kappa);
    let mut u = v.to_vec();
    u[root.0] -= &c;
    u[root.1] += &c;
    u
}

fn exponent(v: &[Rat], kappa: &Rat) -> Rat {
    let r = rho(v.len());
    (dot(v, v) - dot(&r, &r)) / (rint(2) * kappa)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlternatingSum {
    /// `γ(Ω)/2(k+n)` of the highest weight.
    #[serde(serialize_with = "ser_rat")]
    pub offset: Rat,
    /// `Σ ε(w) q^{E(w) - E(1)}` through the order.
    pub numerator: Vec<i64>,
    pub elements: usize,
    pub max_length: usize,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `Σ_{w ∈ Ŵ(λ)} ε(w) q^{γ(Ω of w∘λ)/2(k+n)}` with `v = λ̄ + ρ`, by a
/// length-increasing walk over simple reflections of the integral Weyl
/// group, pruned once exponents exceed the order.
pub fn alternating_sum(v: &[Rat], kappa: &Rat, order: usize, length_cap: usize) -> Result<AlternatingSum> {
    let n = v.len();
    let simple = integral_simple_roots(n, v, kappa);
    if simple.len() != n {
        return Err(Error::Unsupported(format!("integral root system has {} simple roots, expected {n}", simple.len())));
    }
    if simple.iter().any(|&r| !pairing(v, r, kappa).is_positive()) {
        return Err(Error::Unsupported("weight is not regular dominant".into()));
    }
    let e0 = exponent(v, kappa);
    let mut numerator = vec![0i64; order + 1];
    let mut seen: HashSet<Vec<Rat>> = HashSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((v.to_vec(), 1i64, 0usize));
    seen.insert(v.to_vec());
    let mut max_length = 0;
    while let Some((u, sign, len)) = queue.pop_front() {
        let d = exponent(&u, kappa) - &e0;
        if !d.is_integer() || d.is_negative() {
            return Err(Error::Unsupported(format!("non-integral exponent shift {d}")));
        }
        let di = d.to_integer().to_usize().expect("small");
        numerator[di] += sign;
        max_length = max_length.max(len);
        for &r in &simple {
            if !pairing(&u, r, kappa).is_positive() {
                continue;
            }
            let w = reflect(&u, r, kappa);
            let dw = exponent(&w, kappa) - &e0;
            if dw > rint(order as i64) || seen.contains(&w) {
                continue;
            }
            if len + 1 > length_cap {
                return Err(Error::CapInsufficient(len + 1));
            }
            seen.insert(w.clone());
            queue.push_back((w, -sign, len + 1));
        }
    }
    Ok(AlternatingSum { offset: e0, numerator, elements: seen.len(), max_length })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCharacter {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    /// Conformal weight relative to the vacuum class.
    #[serde(serialize_with = "ser_rat")]
    pub conformal_weight: Rat,
    pub character: QSeries,
    pub nonnegative_integral: bool,
}

/// FKW character of a class, normalized to start at `q^0`; the offset of
/// the returned series is `γ(Ω)/2(k+n)` of the highest weight.
pub fn fkw_character(n: usize, p: i64, q: i64, lam: &[usize], mu: &[usize], order: usize, length_cap: usize) -> Result<(QSeries, AlternatingSum)> {
    let kappa = rat(p, q);
    let v = shifted_finite_part(n, p, q, lam, mu);
    let alt = alternating_sum(&v, &kappa, order, length_cap)?;
    let num = QSeries::from_ints(&alt.numerator, order);
    let den = QSeries::euler_product(1..=order, -((n as i64) - 1), order);
    let mut ch = num.mul(&den);
    ch.offset = alt.offset.clone();
    Ok((ch, alt))
}

pub fn class_characters(n: usize, p: i64, q: i64, order: usize, length_cap: usize) -> Result<Vec<ClassCharacter>> {
    let classes = nondegenerate_classes(n, p, q)?;
    let vac_l = dominant_integral(n, (p - n as i64) as usize).into_iter().max().expect("nonempty");
    let vac_m = dominant_integral(n, (q - n as i64) as usize).into_iter().max().expect("nonempty");
    let (_, vac) = fkw_character(n, p, q, &vac_l, &vac_m, 0, length_cap)?;
    let mut out = Vec::new();
    for r in classes.reps {
        let (character, alt) = fkw_character(n, p, q, &r.lambda, &r.mu, order, length_cap)?;
        let nonnegative_integral = character.integer_coeffs().is_some_and(|c| c.iter().all(|x| !x.is_negative()));
        out.push(ClassCharacter { lambda: r.lambda, mu: r.mu, conformal_weight: &alt.offset - &vac.offset, character, nonnegative_integral });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DenominatorReport {
    pub n: usize,
    pub p: i64,
    pub q: i64,
    pub order: usize,
    pub alternating_sum: Vec<i64>,
    pub infinite_product: Vec<i64>,
    pub matches_infinite_product: bool,
    /// Comparison with `∏_{j=1}^{n-1} (1 - q^j)^{n-1}`.
    pub matches_finite_product: bool,
}

/// The trivial model `(p, q) = (n, n+1)`: the alternating sum over
/// `Ŵ(λ)`, `λ = -(k+n)ρ + kΛ₀`, against `∏_{j≥1}(1-q^j)^{n-1}`.
pub fn denominator_identity(n: usize, order: usize) -> Result<DenominatorReport> {
    let (p, q) = (n as i64, n as i64 + 1);
    let zero_l = vec![0usize; n];
    let mut zero_m = vec![0usize; n];
    zero_m[0] = 1;
    let v = shifted_finite_part(n, p, q, &zero_l, &zero_m);
    let alt = alternating_sum(&v, &rat(p, q), order, 10_000)?;
    let to_ints = |s: &QSeries| -> Vec<i64> { s.integer_coeffs().expect("integral").iter().map(|x| x.to_i64().expect("small")).collect() };
    let inf = to_ints(&QSeries::euler_product(1..=order, n as i64 - 1, order));
    let fin = to_ints(&QSeries::euler_product(1..n, n as i64 - 1, order));
    Ok(DenominatorReport {
        n,
        p,
        q,
        order,
        matches_infinite_product: alt.numerator == inf,
        matches_finite_product: alt.numerator == fin,
        alternating_sum: alt.numerator,
        infinite_product: inf,
    })
}

/// Closed-form minimal-model numerator for `n = 2`:
/// `Σ_{j∈ℤ} q^{A_j} - q^{B_j}` with
/// `A_j = ((2pqj + qr - ps)² - (qr - ps)²)/4pq`,
/// `B_j = ((2pqj + qr + ps)² - (qr - ps)²)/4pq`.
pub fn virasoro_numerator(p: i64, q: i64, r: i64, s: i64, order: usize) -> Vec<i64> {
    let mut out = vec![0i64; order + 1];
    let base = (q * r - p * s).pow(2);
    let bound = (order as i64 + 2).max(4);
    for j in -bound..=bound {
        let a = ((2 * p * q * j + q * r - p * s).pow(2) - base) / (4 * p * q);
        let b = ((2 * p * q * j + q * r + p * s).pow(2) - base) / (4 * p * q);
        if (0..=order as i64).contains(&a) {
            out[a as usize] += 1;
        }
        if (0..=order as i64).contains(&b) {
            out[b as usize] -= 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_classes() {
        assert_eq!(is_admissible_level(2, &rat(-1, 2)), LevelClass::Nondegenerate);
        assert_eq!(is_admissible_level(2, &rint(0)), LevelClass::Admissible);
        assert_eq!(is_admissible_level(3, &rat(-1, 2)), LevelClass::Admissible);
        assert_eq!(is_admissible_level(2, &rat(-3, 2)), LevelClass::NotAdmissible);
        assert_eq!(is_admissible_level(2, &rint(-2)), LevelClass::NotAdmissible);
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit_partition(4, 3).unwrap(), vec![3, 1]);
        assert_eq!(orbit_partition(2, 5).unwrap(), vec![2]);
        assert_eq!(orbit_partition(6, 3).unwrap(), vec![3, 3]);
        assert!(orbit_table(8, 8, 4).unwrap().iter().all(|r| r.ok));
    }

    #[test]
    fn verma() {
        let v = verma_w_character(2, &rint(1), &rint(0), 6).unwrap();
        assert_eq!(v.integer_coeffs().unwrap().iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), vec![1, 1, 2, 3, 5, 7, 11]);
        let v = verma_w_character(3, &rint(1), &rint(0), 3).unwrap();
        assert_eq!(v.integer_coeffs().unwrap().iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), vec![1, 2, 5, 10]);
        let v = verma_w_character(2, &rint(1), &rint(6), 2).unwrap();
        assert_eq!(v.offset, rint(1));
        assert_eq!(verma_w_character(2, &rint(-2), &rint(0), 2), Err(Error::CriticalLevel));
    }

    #[test]
    fn classes() {
        assert_eq!(nondegenerate_classes(2, 3, 4).unwrap().count, 3);
        assert_eq!(nondegenerate_classes(2, 2, 3).unwrap().count, 1);
        let c = nondegenerate_classes(3, 4, 5).unwrap();
        assert!(c.count >= 1);
    }

    #[test]
    fn pentagonal() {
        let r = denominator_identity(2, 20).unwrap();
        assert!(r.matches_infinite_product, "{r:?}");
        assert!(!r.matches_finite_product);
        let r3 = denominator_identity(3, 12).unwrap();
        assert!(r3.matches_infinite_product, "{r3:?}");
    }

    #[test]
    fn ising() {
        let chars = class_characters(2, 3, 4, 10, 1000).unwrap();
        assert_eq!(chars.len(), 3);
        let mut hs: Vec<Rat> = chars.iter().map(|c| c.conformal_weight.clone()).collect();
        hs.sort();
        assert_eq!(hs, vec![rint(0), rat(1, 16), rat(1, 2)]);
        for c in &chars {
            assert!(c.nonnegative_integral);
            assert!(c.character.coeffs[0].is_one());
            let (r, s) = (c.lambda[1] as i64 + 1, c.mu[1] as i64 + 1);
            let alt = fkw_character(2, 3, 4, &c.lambda, &c.mu, 10, 1000).unwrap().1;
            assert_eq!(alt.numerator, virasoro_numerator(3, 4, r, s, 10));
        }
        for i in 0..3 {
            for j in 0..i {
                assert_ne!(chars[i].character.coeffs, chars[j].character.coeffs);
            }
        }
    }

    #[test]
    fn trivial_model_character() {
        let chars = class_characters(2, 2, 3, 15, 1000).unwrap();
        assert_eq!(chars.len(), 1);
        let c = chars[0].character.integer_coeffs().unwrap();
        assert!(c[0].is_one() && c[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn potts_weights() {
        let chars = class_characters(3, 4, 5, 6, 1000).unwrap();
        let mut hs: Vec<Rat> = chars.iter().map(|c| c.conformal_weight.clone()).collect();
        hs.sort();
        assert_eq!(hs, vec![rint(0), rat(1, 15), rat(1, 15), rat(2, 5), rat(2, 3), rat(2, 3)]);
        assert!(chars.iter().all(|c| c.nonnegative_integral));
    }

    #[test]
    fn length_cap() {
        let v = shifted_finite_part(2, 3, 4, &[1, 0], &[2, 0]);
        let full = alternating_sum(&v, &rat(3, 4), 12, 1000).unwrap();
        assert!(matches!(alternating_sum(&v, &rat(3, 4), 12, 1), Err(Error::CapInsufficient(2))));
        let more = alternating_sum(&v, &rat(3, 4), 12, full.max_length).unwrap();
        assert_eq!(full.numerator, more.numerator);
    }
}
