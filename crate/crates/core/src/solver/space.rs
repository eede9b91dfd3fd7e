//! Subspaces of F^N held as RREF bases over raw symbol indices.

use crate::algebra::matrix::rref_in_place;
use crate::algebra::{Domain, Matrix};

/// Row space given by its reduced row echelon basis; the ambient
/// dimension is carried by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct Sub {
    pub rows: usize,
    pub data: Vec<u16>,
}

impl Sub {
    pub fn dim(&self) -> usize {
        self.rows
    }

    /// Row space of `rows` stacked rows of length `n`.
    pub fn span(dom: &Domain, n: usize, mut data: Vec<u16>, rows: usize) -> Sub {
        let rank = rref_in_place(dom, &mut data, rows, n, n).len();
        data.truncate(rank * n);
        Sub { rows: rank, data }
    }

    pub fn from_matrix(m: &Matrix) -> Sub {
        Sub::span(m.domain(), m.cols(), m.data().to_vec(), m.rows())
    }

    /// `d` rows: the basis followed by zero rows.
    pub fn padded(&self, dom: &Domain, n: usize, d: usize) -> Matrix {
        let mut data = self.data.clone();
        data.resize(d * n, 0);
        Matrix::new(dom, d, n, data).expect("basis fits in d rows")
    }

    pub fn block_nonzero(&self, n: usize, start: usize, len: usize) -> bool {
        (0..self.rows).any(|r| self.data[r * n + start..r * n + start + len].iter().any(|&v| v != 0))
    }
}

pub(crate) fn sum<'a>(dom: &Domain, n: usize, parts: impl IntoIterator<Item = &'a Sub>) -> Sub {
    let mut data = Vec::new();
    let mut rows = 0;
    for p in parts {
        data.extend_from_slice(&p.data);
        rows += p.rows;
    }
    Sub::span(dom, n, data, rows)
}

fn rank_of(dom: &Domain, n: usize, parts: &[&Sub]) -> usize {
    let mut data = Vec::new();
    let mut rows = 0;
    for p in parts {
        data.extend_from_slice(&p.data);
        rows += p.rows;
    }
    rref_in_place(dom, &mut data, rows, n, n).len()
}

/// `small ⊆ big`.
pub(crate) fn contains(dom: &Domain, n: usize, big: &Sub, small: &Sub) -> bool {
    small.rows == 0 || rank_of(dom, n, &[big, small]) == big.rows
}

/// `target ⊆ Σ parts`.
pub(crate) fn covers(dom: &Domain, n: usize, parts: &[&Sub], target: &Sub) -> bool {
    if target.rows == 0 {
        return true;
    }
    let base = rank_of(dom, n, parts);
    let mut all = parts.to_vec();
    all.push(target);
    rank_of(dom, n, &all) == base
}

/// Vectors of `w` vanishing on columns `start..start+len`.
pub(crate) fn restrict_zero(dom: &Domain, n: usize, w: &Sub, start: usize, len: usize) -> Sub {
    let k = w.rows;
    if k == 0 {
        return Sub::default();
    }
    // Left kernel of the column block: null space of its transpose (len × k).
    let mut t = vec![0u16; len * k];
    for r in 0..k {
        for c in 0..len {
            t[c * k + r] = w.data[r * n + start + c];
        }
    }
    let pivots = rref_in_place(dom, &mut t, len, k, k);
    let mut kernel = Vec::new();
    let mut rows = 0;
    for f in (0..k).filter(|c| !pivots.contains(c)) {
        let mut coeff = vec![0u16; k];
        coeff[f] = dom.one();
        for (i, &p) in pivots.iter().enumerate() {
            coeff[p] = dom.neg(t[i * k + f]);
        }
        let mut row = vec![0u16; n];
        for (r, &c) in coeff.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let v = w.data[r * n + j];
                if v != 0 {
                    row[j] = dom.add(row[j], dom.mul(c, v));
                }
            }
        }
        kernel.extend(row);
        rows += 1;
    }
    Sub::span(dom, n, kernel, rows)
}

/// `coeff · basis` for an RREF `coeff` (k × dim basis); the product of two
/// RREF matrices of this shape is again in RREF.
pub(crate) fn combine(dom: &Domain, n: usize, coeff: &Matrix, basis: &Sub) -> Sub {
    let k = coeff.rows();
    let w = basis.rows;
    let mut data = vec![0u16; k * n];
    for r in 0..k {
        for j in 0..w {
            let c = coeff.get(r, j);
            if c == 0 {
                continue;
            }
            for col in 0..n {
                let v = basis.data[j * n + col];
                if v != 0 {
                    data[r * n + col] = dom.add(data[r * n + col], dom.mul(c, v));
                }
            }
        }
    }
    Sub { rows: k, data }
}

/// Number of `k`-dimensional subspaces of a `w`-dimensional space over
/// `q` elements.
pub(crate) fn gaussian_binomial(w: usize, k: usize, q: usize) -> f64 {
    if k > w {
        return 0.0;
    }
    let q = q as f64;
    (0..k).fold(1.0, |acc, i| acc * (q.powi((w - i) as i32) - 1.0) / (q.powi((i + 1) as i32) - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restrict_and_contain() {
        let f = Domain::prime_field(3).unwrap();
        // span{(1,1,0), (0,1,1)}; vectors with zero first coordinate: (0,1,1).
        let w = Sub::span(&f, 3, vec![1, 1, 0, 0, 1, 1], 2);
        let z = restrict_zero(&f, 3, &w, 0, 1);
        assert_eq!(z, Sub::span(&f, 3, vec![0, 1, 1], 1));
        assert!(contains(&f, 3, &w, &z));
        assert!(!z.block_nonzero(3, 0, 1));
        assert_eq!(gaussian_binomial(3, 1, 3), 13.0);
        assert_eq!(gaussian_binomial(4, 2, 2), 35.0);
    }
}
