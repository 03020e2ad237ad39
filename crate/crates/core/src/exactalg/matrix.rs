//! Determinants and adjugates over ℚ[t,t⁻¹] by fraction-free elimination.

use super::LaurentPoly;

pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

/// Bareiss determinant. Every intermediate division is exact in the
/// Laurent ring, so no fractions appear.
pub fn det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a: LaurentMatrix = m.to_vec();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            a.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num.exact_div(&prev).expect("Bareiss step is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Classical adjugate: `adj(m)·m = m·adj(m) = det(m)·I`.
pub fn adjugate(m: &[Vec<LaurentPoly>]) -> LaurentMatrix {
    let n = m.len();
    if n == 1 {
        return vec![vec![LaurentPoly::one()]];
    }
    let mut out = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: LaurentMatrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            out[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    out
}

pub fn transpose(m: &[Vec<LaurentPoly>]) -> LaurentMatrix {
    let n = m.len();
    let k = m.first().map_or(0, |r| r.len());
    (0..k).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> LaurentMatrix {
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    let mut acc = LaurentPoly::zero();
                    for l in 0..k {
                        if !row[l].is_zero() && !b[l][j].is_zero() {
                            acc += &(&row[l] * &b[l][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
