use std::fmt;

use super::{AlgebraError, Domain};

/// Dense row-major matrix over a [`Domain`].
///
/// Products keep operand order (`self · rhs`), so the type is valid over
/// the non-commutative ring alphabets as well. Rank, reduction and solving
/// need a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl Matrix {
    pub fn new(domain: &Domain, rows: usize, cols: usize, data: Vec<u16>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::ShapeError(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v as usize >= domain.size()) {
            return Err(AlgebraError::Parse(format!("symbol index {bad} outside {domain}")));
        }
        Ok(Matrix {
            domain: domain.clone(),
            rows,
            cols,
            data,
        })
    }

    pub(crate) fn from_raw(domain: &Domain, rows: usize, cols: usize, data: Vec<u16>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            domain: domain.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(domain: &Domain, rows: usize, cols: usize) -> Self {
        Self::from_raw(domain, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(domain: &Domain, n: usize) -> Self {
        Self::scalar(domain, n, domain.one())
    }

    /// `value` on the diagonal.
    pub fn scalar(domain: &Domain, n: usize, value: u16) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.data[i * n + i] = value;
        }
        m
    }

    /// The n×n matrix with a single one at (row, col), 0-based.
    pub fn unit(domain: &Domain, n: usize, row: usize, col: usize) -> Self {
        assert!(row < n && col < n, "unit position outside {n}x{n}");
        let mut m = Self::zeros(domain, n, n);
        m.data[row * n + col] = domain.one();
        m
    }

    pub fn from_rows(domain: &Domain, rows: &[Vec<u16>]) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::ShapeError("ragged rows".into()));
        }
        Self::new(domain, rows.len(), cols, rows.concat())
    }

    /// Matrix of integer constants `c · 1`.
    pub fn from_ints(domain: &Domain, rows: &[&[u64]]) -> Result<Self, AlgebraError> {
        let converted: Vec<Vec<u16>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| domain.from_int(c)).collect())
            .collect();
        Self::from_rows(domain, &converted)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u16] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(&self.domain, self.rows)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, AlgebraError> {
        self.domain.check_same(&rhs.domain)?;
        if self.cols != rhs.rows {
            return Err(AlgebraError::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let d = &self.domain;
        let mut out = vec![0u16; self.rows * rhs.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for t in 0..self.cols {
                let a = self.data[i * self.cols + t];
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[t * rhs.cols..(t + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    if b != 0 {
                        *o = d.add(*o, d.mul(a, b));
                    }
                }
            }
        }
        Ok(Self::from_raw(d, self.rows, rhs.cols, out))
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(u16, u16) -> u16) -> Result<Matrix, AlgebraError> {
        self.domain.check_same(&rhs.domain)?;
        if self.shape() != rhs.shape() {
            return Err(AlgebraError::ShapeError(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self::from_raw(&self.domain, self.rows, self.cols, data))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, AlgebraError> {
        let d = self.domain.clone();
        self.zip_with(rhs, |a, b| d.add(a, b))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, AlgebraError> {
        let d = self.domain.clone();
        self.zip_with(rhs, |a, b| d.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|&a| self.domain.neg(a)).collect();
        Self::from_raw(&self.domain, self.rows, self.cols, data)
    }

    /// In-place `self += rhs`; shapes must agree.
    pub(crate) fn add_assign(&mut self, rhs: &Matrix) {
        debug_assert_eq!(self.shape(), rhs.shape());
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a = self.domain.add(*a, b);
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0u16; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        Self::from_raw(&self.domain, self.cols, self.rows, data)
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix, AlgebraError> {
        let first = parts
            .first()
            .ok_or_else(|| AlgebraError::ShapeError("empty hstack".into()))?;
        let rows = first.rows;
        for p in parts {
            first.domain.check_same(&p.domain)?;
            if p.rows != rows {
                return Err(AlgebraError::ShapeError("hstack row counts differ".into()));
            }
        }
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for p in parts {
                data.extend_from_slice(p.row(r));
            }
        }
        Ok(Self::from_raw(&first.domain, rows, cols, data))
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix, AlgebraError> {
        let first = parts
            .first()
            .ok_or_else(|| AlgebraError::ShapeError("empty vstack".into()))?;
        let cols = first.cols;
        for p in parts {
            first.domain.check_same(&p.domain)?;
            if p.cols != cols {
                return Err(AlgebraError::ShapeError("vstack column counts differ".into()));
            }
        }
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let data = parts.iter().flat_map(|p| p.data.iter().copied()).collect();
        Ok(Self::from_raw(&first.domain, rows, cols, data))
    }

    /// Submatrix of the given size starting at (row, col).
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Result<Matrix, AlgebraError> {
        if row + rows > self.rows || col + cols > self.cols {
            return Err(AlgebraError::ShapeError(format!(
                "block {rows}x{cols} at ({row},{col}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in row..row + rows {
            data.extend_from_slice(&self.data[r * self.cols + col..r * self.cols + col + cols]);
        }
        Ok(Self::from_raw(&self.domain, rows, cols, data))
    }

    /// Overwrite the block at (row, col) with `src`.
    pub fn set_block(&mut self, row: usize, col: usize, src: &Matrix) -> Result<(), AlgebraError> {
        self.domain.check_same(&src.domain)?;
        if row + src.rows > self.rows || col + src.cols > self.cols {
            return Err(AlgebraError::ShapeError("set_block outside target".into()));
        }
        for r in 0..src.rows {
            let dst = (row + r) * self.cols + col;
            self.data[dst..dst + src.cols].copy_from_slice(src.row(r));
        }
        Ok(())
    }

    /// Block-diagonal matrix with `k` copies of `self`.
    pub fn repeat_diag(&self, k: usize) -> Matrix {
        let mut out = Self::zeros(&self.domain, self.rows * k, self.cols * k);
        for i in 0..k {
            out.set_block(i * self.rows, i * self.cols, self)
                .expect("block fits by construction");
        }
        out
    }

    /// Reduced row echelon form and pivot columns. Pivot rule: scan columns
    /// left to right, take the first row (from the current position) with a
    /// nonzero entry.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>), AlgebraError> {
        self.domain.require_field()?;
        let mut data = self.data.clone();
        let pivots = rref_in_place(&self.domain, &mut data, self.rows, self.cols, self.cols);
        Ok((Self::from_raw(&self.domain, self.rows, self.cols, data), pivots))
    }

    pub fn rank(&self) -> Result<usize, AlgebraError> {
        Ok(self.rref()?.1.len())
    }

    /// Canonical basis of the row space: the nonzero rows of the RREF.
    pub fn row_basis(&self) -> Result<Matrix, AlgebraError> {
        let (r, pivots) = self.rref()?;
        Ok(Self::from_raw(
            &self.domain,
            pivots.len(),
            self.cols,
            r.data[..pivots.len() * self.cols].to_vec(),
        ))
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &Matrix) -> Result<bool, AlgebraError> {
        Ok(self.solve_left(other)?.is_some())
    }

    /// Some X with `X · self = rhs`, or `None` when no such X exists. Free
    /// variables are set to zero, so the answer is deterministic.
    pub fn solve_left(&self, rhs: &Matrix) -> Result<Option<Matrix>, AlgebraError> {
        self.domain.require_field()?;
        self.domain.check_same(&rhs.domain)?;
        if self.cols != rhs.cols {
            return Err(AlgebraError::ShapeError(format!(
                "solve_left: {}x{} system, {}x{} right-hand side",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        // Row vector equations x·A = b become Aᵀ xᵀ = bᵀ.
        let m = self.rows;
        let k = rhs.rows;
        let n = self.cols;
        let width = m + k;
        let mut aug = vec![0u16; n * width];
        for c in 0..n {
            for r in 0..m {
                aug[c * width + r] = self.data[r * n + c];
            }
            for r in 0..k {
                aug[c * width + m + r] = rhs.data[r * n + c];
            }
        }
        let pivots = rref_in_place(&self.domain, &mut aug, n, width, m);
        for row in pivots.len()..n {
            if aug[row * width + m..(row + 1) * width].iter().any(|&v| v != 0) {
                return Ok(None);
            }
        }
        let mut x = vec![0u16; k * m];
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..k {
                x[j * m + pc] = aug[i * width + m + j];
            }
        }
        Ok(Some(Self::from_raw(&self.domain, k, m, x)))
    }

    /// JSON literal `[[..],[..]]` of symbols.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|r| {
                    serde_json::Value::Array(
                        self.row(r).iter().map(|&v| self.domain.symbol_to_json(v)).collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(domain: &Domain, value: &serde_json::Value) -> Result<Matrix, AlgebraError> {
        let rows = value
            .as_array()
            .ok_or_else(|| AlgebraError::Parse(format!("matrix literal must be a list, got `{value}`")))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| AlgebraError::Parse(format!("matrix row must be a list, got `{row}`")))?
                    .iter()
                    .map(|x| domain.symbol_from_json(x))
                    .collect::<Result<Vec<u16>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(domain, &parsed)
    }

    pub fn parse(domain: &Domain, text: &str) -> Result<Matrix, AlgebraError> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| AlgebraError::Parse(format!("bad matrix literal `{text}`: {e}")))?;
        Self::from_json(domain, &value)
    }
}

/// Gauss-Jordan elimination on a row-major buffer, restricted to pivots in
/// the first `pivot_cols` columns. Returns the pivot columns in order.
pub(crate) fn rref_in_place(
    d: &Domain,
    data: &mut [u16],
    rows: usize,
    cols: usize,
    pivot_cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..pivot_cols {
        if next == rows {
            break;
        }
        let Some(p) = (next..rows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if p != next {
            for j in 0..cols {
                data.swap(p * cols + j, next * cols + j);
            }
        }
        let inv = d.inv(data[next * cols + c]).expect("nonzero field element");
        for j in 0..cols {
            data[next * cols + j] = d.mul(inv, data[next * cols + j]);
        }
        for r in 0..rows {
            if r == next {
                continue;
            }
            let f = data[r * cols + c];
            if f == 0 {
                continue;
            }
            let nf = d.neg(f);
            for j in 0..cols {
                let v = data[next * cols + j];
                if v != 0 {
                    data[r * cols + j] = d.add(data[r * cols + j], d.mul(nf, v));
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}{}", self.domain, self.rows, self.cols, self)
    }
}
