//! Smith normal form over the Euclidean domain ℚ[t,t⁻¹], tracking the row
//! transform and its inverse.

use crate::exactalg::matrix::LaurentMatrix;
use crate::exactalg::LaurentPoly;

pub struct Smith {
    /// Normalized diagonal `d₀ | d₁ | …`.
    pub diagonal: Vec<LaurentPoly>,
    /// `P` with `P·R·Q = diag` for some invertible `Q`.
    pub p: LaurentMatrix,
    pub p_inv: LaurentMatrix,
}

fn identity(n: usize) -> LaurentMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                .collect()
        })
        .collect()
}

struct State {
    r: LaurentMatrix,
    p: LaurentMatrix,
    p_inv: LaurentMatrix,
}

impl State {
    fn n(&self) -> usize {
        self.r.len()
    }

    /// row_i += c·row_k
    fn add_row(&mut self, i: usize, k: usize, c: &LaurentPoly) {
        for m in [&mut self.r, &mut self.p] {
            let src: Vec<LaurentPoly> = m[k].iter().map(|x| x * c).collect();
            for (dst, s) in m[i].iter_mut().zip(src) {
                *dst += &s;
            }
        }
        // P⁻¹ ← P⁻¹·E⁻¹: column k −= c·column i
        for row in self.p_inv.iter_mut() {
            let s = &row[i] * c;
            row[k] -= &s;
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.r.swap(i, k);
        self.p.swap(i, k);
        for row in self.p_inv.iter_mut() {
            row.swap(i, k);
        }
    }

    fn scale_row(&mut self, i: usize, u: &LaurentPoly, u_inv: &LaurentPoly) {
        for x in self.r[i].iter_mut().chain(self.p[i].iter_mut()) {
            *x = &*x * u;
        }
        for row in self.p_inv.iter_mut() {
            row[i] = &row[i] * u_inv;
        }
    }

    /// col_j −= c·col_k (column operations do not touch `P`).
    fn sub_col(&mut self, j: usize, k: usize, c: &LaurentPoly) {
        for row in self.r.iter_mut() {
            let s = &row[k] * c;
            row[j] -= &s;
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in self.r.iter_mut() {
            row.swap(j, k);
        }
    }
}

pub fn smith(r: &LaurentMatrix) -> Smith {
    let n = r.len();
    let mut st = State { r: r.clone(), p: identity(n), p_inv: identity(n) };
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !st.r[i][j].is_zero())
                .min_by_key(|&(i, j)| (st.r[i][j].span(), i, j));
            let Some((pi, pj)) = pivot else {
                break;
            };
            if pi != k {
                st.swap_rows(pi, k);
            }
            if pj != k {
                st.swap_cols(pj, k);
            }
            let mut clean = true;
            for i in k + 1..st.n() {
                if st.r[i][k].is_zero() {
                    continue;
                }
                let (q, rem) = st.r[i][k].div_rem(&st.r[k][k]);
                st.add_row(i, k, &-q);
                clean &= rem.is_zero();
            }
            for j in k + 1..st.n() {
                if st.r[k][j].is_zero() {
                    continue;
                }
                let (q, rem) = st.r[k][j].div_rem(&st.r[k][k]);
                st.sub_col(j, k, &q);
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..n).find(|&i| (k + 1..n).any(|j| !st.r[k][k].divides(&st.r[i][j])));
            match bad {
                Some(i) => st.add_row(k, i, &LaurentPoly::one()),
                None => break,
            }
        }
        let d = st.r[k][k].clone();
        if !d.is_zero() {
            let nd = d.normalize();
            let u = nd.exact_div(&d).unwrap();
            let u_inv = d.exact_div(&nd).unwrap();
            st.scale_row(k, &u, &u_inv);
        }
    }
    let diagonal = (0..n).map(|i| st.r[i][i].clone()).collect();
    Smith { diagonal, p: st.p, p_inv: st.p_inv }
}
