//! Exact signatures of Hermitian matrices over ℚ(i).

use num_traits::{Signed, Zero};

use crate::exactalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gauss { re, im }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -&self.im }
    }

    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn add(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn div_real(&self, d: &Rational) -> Gauss {
        Gauss { re: &self.re / d, im: &self.im / d }
    }
}

/// Signature of a Hermitian matrix by congruence diagonalisation.
///
/// A zero diagonal with a nonzero off-diagonal entry `h_ij` is repaired by
/// adding `conj(h_ij)` times basis vector `j` to basis vector `i`, which makes
/// the new diagonal entry `2|h_ij|² > 0`.
pub fn signature(mut h: Vec<Vec<Gauss>>) -> i64 {
    let mut sig = 0i64;
    loop {
        let n = h.len();
        if n == 0 {
            return sig;
        }
        if let Some(k) = (0..n).find(|&k| !h[k][k].re.is_zero()) {
            h.swap(0, k);
            for row in h.iter_mut() {
                row.swap(0, k);
            }
            let d = h[0][0].re.clone();
            sig += if d.is_positive() { 1 } else { -1 };
            let mut next = vec![Vec::with_capacity(n - 1); n - 1];
            for i in 1..n {
                let f = h[i][0].div_real(&d);
                for j in 1..n {
                    next[i - 1].push(h[i][j].sub(&f.mul(&h[0][j])));
                }
            }
            h = next;
            continue;
        }
        let Some((i, j)) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !h[i][j].is_zero())
        else {
            return sig;
        };
        let c = h[i][j].conj();
        // column i += c·column j, then row i += conj(c)·row j
        for r in 0..n {
            let add = h[r][j].mul(&c);
            h[r][i] = h[r][i].add(&add);
        }
        let cc = c.conj();
        for col in 0..n {
            let add = h[j][col].mul(&cc);
            h[i][col] = h[i][col].add(&add);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn g(re: i64, im: i64) -> Gauss {
        Gauss::new(int(re), int(im))
    }

    #[test]
    fn diagonal_and_hyperbolic() {
        assert_eq!(signature(vec![vec![g(2, 0), g(0, 0)], vec![g(0, 0), g(-3, 0)]]), 0);
        assert_eq!(signature(vec![vec![g(0, 0), g(0, 1)], vec![g(0, -1), g(0, 0)]]), 0);
        assert_eq!(signature(vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(5, 0)]]), 2);
        assert_eq!(signature(vec![vec![g(0, 0), g(0, 0)], vec![g(0, 0), g(-1, 0)]]), -1);
        assert_eq!(signature(Vec::new()), 0);
    }

    #[test]
    fn complex_entries() {
        // [[1, i],[−i, 1]] has eigenvalues 0 and 2
        assert_eq!(signature(vec![vec![g(1, 0), g(0, 1)], vec![g(0, -1), g(1, 0)]]), 1);
        // [[1, 2i],[−2i, 1]] has eigenvalues −1 and 3
        assert_eq!(signature(vec![vec![g(1, 0), g(0, 2)], vec![g(0, -2), g(1, 0)]]), 0);
    }
}
