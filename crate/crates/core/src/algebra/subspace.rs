//! Exhaustive enumeration of matrices and of subspaces (as RREF bases).

use super::{Domain, Matrix};

/// `|domain|^(rows*cols)`, or `None` on overflow.
pub fn count_matrices(domain: &Domain, rows: usize, cols: usize) -> Option<u64> {
    (domain.size() as u64).checked_pow(u32::try_from(rows * cols).ok()?)
}

/// The matrix whose entries are the base-|domain| digits of `index`, entry
/// (0,0) least significant.
pub fn matrix_from_index(domain: &Domain, rows: usize, cols: usize, mut index: u64) -> Matrix {
    let q = domain.size() as u64;
    let data = (0..rows * cols)
        .map(|_| {
            let v = (index % q) as u16;
            index /= q;
            v
        })
        .collect();
    Matrix::from_raw(domain, rows, cols, data)
}

/// Every rows×cols matrix, in index order.
pub fn all_matrices(domain: &Domain, rows: usize, cols: usize) -> impl Iterator<Item = Matrix> + '_ {
    let total = count_matrices(domain, rows, cols).expect("matrix space too large to enumerate");
    (0..total).map(move |i| matrix_from_index(domain, rows, cols, i))
}

/// Canonical bases of all `rank`-dimensional subspaces of `domain^dim`: every
/// full-rank rank×dim matrix in reduced row echelon form. Ordered by pivot set
/// (lexicographic), then by free entries. Field domains only.
pub fn rref_bases(domain: &Domain, rank: usize, dim: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    if rank > dim {
        return out;
    }
    let mut pivots: Vec<usize> = (0..rank).collect();
    loop {
        // Free slots: (row i, column c) with c > pivot[i] and c not a pivot.
        let free: Vec<(usize, usize)> = (0..rank)
            .flat_map(|i| {
                let pv = &pivots;
                (pv[i] + 1..dim)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let q = domain.size() as u64;
        let combos = q.pow(free.len() as u32);
        for idx in 0..combos {
            let mut m = Matrix::zeros(domain, rank, dim);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, domain.one());
            }
            let mut rest = idx;
            for &(i, c) in &free {
                m.set(i, c, (rest % q) as u16);
                rest /= q;
            }
            out.push(m);
        }
        // Next pivot combination.
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < dim - rank + i {
                pivots[i] += 1;
                for j in i + 1..rank {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Mixed-radix counter over independent finite choices.
#[derive(Debug, Clone)]
pub struct MatrixOdometer {
    radices: Vec<u64>,
    digits: Vec<u64>,
    done: bool,
}

impl MatrixOdometer {
    pub fn new(radices: Vec<u64>) -> Self {
        let done = radices.contains(&0);
        let digits = vec![0; radices.len()];
        MatrixOdometer {
            radices,
            digits,
            done,
        }
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Advance; returns false after the last combination.
    pub fn advance(&mut self) -> bool {
        for i in 0..self.digits.len() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                return true;
            }
            self.digits[i] = 0;
        }
        self.done = true;
        false
    }

    pub fn is_done(&self) -> bool {
        self.done
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_binomial(q: u64, n: u32, k: u32) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts() {
        for p in [2u32, 3] {
            let f = Domain::field(p, 1).unwrap();
            for n in 0..=3usize {
                for k in 0..=n {
                    let bases = rref_bases(&f, k, n);
                    assert_eq!(
                        bases.len() as u64,
                        gaussian_binomial(p as u64, n as u32, k as u32),
                        "p={p} n={n} k={k}"
                    );
                    for b in &bases {
                        assert_eq!(b.rank().unwrap(), k);
                        assert_eq!(&b.row_basis().unwrap(), b);
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_enumeration_is_exhaustive() {
        let f = Domain::field(2, 1).unwrap();
        let all: Vec<Matrix> = all_matrices(&f, 2, 2).collect();
        assert_eq!(all.len(), 16);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn odometer_covers_product() {
        let mut o = MatrixOdometer::new(vec![2, 3]);
        let mut n = 1;
        while o.advance() {
            n += 1;
        }
        assert_eq!(n, 6);
        assert!(o.is_done());
    }
}
