//! Exact linear algebra over Q and Q(k).

use num_traits::{One, Zero};

use crate::scalar::{Poly, Rat, Scalar};

/// Minimal field interface used by the elimination routines.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Inverse of a nonzero element.
    fn inv(&self) -> Self;
    /// Rough size, used to pick cheap pivots.
    fn weight(&self) -> usize;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        Scalar::inv(self).expect("pivot is nonzero")
    }
    fn weight(&self) -> usize {
        match self {
            Scalar::Q(r) => Field::weight(r),
            Scalar::F(_) => 1000 * (1 + self.k_degree()),
        }
    }
}

/// Row-reduce in place to reduced echelon form; returns pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(r) {
            if !row[c].is_zero() {
                let w = row[c].weight();
                if best.is_none_or(|(_, bw)| w < bw) {
                    best = Some((i, w));
                }
            }
        }
        let Some((p, _)) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        if inv != F::one() {
            for x in m[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    row[j] = row[j].sub(&f.mul(pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let piv = rref(&mut a, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &pc) in piv.iter().enumerate() {
            if !a[r][free].is_zero() {
                v[pc] = F::zero().sub(&a[r][free]);
            }
        }
        out.push(v);
    }
    out
}

/// Solve `Σ_j x_j cols[j] = target`, with `cols` given as column vectors.
pub fn solve_columns<F: Field>(cols: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = cols.len();
    let rows = target.len();
    let mut a: Vec<Vec<F>> = (0..rows)
        .map(|i| {
            let mut r: Vec<F> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let piv = rref(&mut a, n + 1);
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (r, &pc) in piv.iter().enumerate() {
        x[pc] = a[r][n].clone();
    }
    Some(x)
}

/// Specialize a matrix over Q(k) at `k = x`; `None` if an entry has a pole there.
pub fn specialize(m: &[Vec<Scalar>], x: &Rat) -> Option<Vec<Vec<Rat>>> {
    m.iter().map(|row| row.iter().map(|e| e.eval(x)).collect()).collect()
}

/// Fraction-free (Bareiss) rank of a matrix over Q(k); rows are first
/// cleared of denominators so the elimination runs in Q[k].
pub fn bareiss_rank(m: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut a: Vec<Vec<Poly>> = m
        .iter()
        .map(|row| {
            let mut l = Poly::one();
            for e in row {
                let (_, d) = e.num_den();
                if !d.is_constant() {
                    let g = l.gcd(&d);
                    l = l.mul(&d.divrem(&g).0);
                }
            }
            row.iter()
                .map(|e| {
                    let (n, d) = e.num_den();
                    n.mul(&l.divrem(&d).0)
                })
                .collect()
        })
        .collect();
    let nrows = a.len();
    let mut prev = Poly::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].degree().unwrap_or(0)) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = v.divrem(&prev).0;
            }
            a[i][c] = Poly::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    fn s(x: &str) -> Scalar {
        Scalar::parse(x).unwrap()
    }

    #[test]
    fn rank_generic_vs_special() {
        // det = k^2 - 4 vanishes at k = 2 only
        let m = vec![vec![s("k"), s("2")], vec![s("2"), s("k")]];
        assert_eq!(rank(&m, 2), 2);
        assert_eq!(bareiss_rank(&m, 2), 2);
        let sp = specialize(&m, &rint(2)).unwrap();
        assert_eq!(rank(&sp, 2), 1);
    }

    #[test]
    fn bareiss_matches_field_rank() {
        let m = vec![vec![s("1/(k+1)"), s("k"), s("0")], vec![s("1"), s("k^2+k"), s("0")], vec![s("k"), s("3"), s("1/2")]];
        assert_eq!(rank(&m, 3), bareiss_rank(&m, 3));
        assert_eq!(rank(&m, 3), 2);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = vec![vec![rint(1), rint(2), rint(3)], vec![rint(2), rint(4), rint(6)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let d: Rat = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(Zero::is_zero(&d));
            }
        }
        let cols = vec![vec![rint(1), rint(0)], vec![rint(1), rint(1)]];
        let x = solve_columns(&cols, &[rint(3), rint(1)]).unwrap();
        assert_eq!(x, vec![rint(2), rint(1)]);
        let cols = vec![vec![rint(1), rint(1)]];
        assert!(solve_columns(&cols, &[rint(1), rat(1, 2)]).is_none());
    }
}
