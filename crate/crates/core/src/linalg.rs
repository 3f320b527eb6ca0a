//! Dense Gaussian elimination over GF(2^m).

use crate::field::{Field, FieldElement};

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>, cols: usize) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [FieldElement] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    /// `self · x`.
    pub fn apply(&self, x: &[FieldElement], f: &Field) -> Vec<FieldElement> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| acc + f.mul(a, b))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Row `src` times `factor` added into row `dst`, columns `from..`.
    fn eliminate(&mut self, dst: usize, src: usize, factor: FieldElement, from: usize, f: &Field) {
        let cols = self.cols;
        let (d, s) = if dst > src {
            let (head, tail) = self.data.split_at_mut(dst * cols);
            (&mut tail[from..cols], &head[src * cols + from..(src + 1) * cols])
        } else {
            let (head, tail) = self.data.split_at_mut(src * cols);
            (&mut head[dst * cols + from..(dst + 1) * cols], &tail[from..cols])
        };
        f.axpy(d, factor, s);
    }
}

/// The kernel vector whose highest nonzero column is as low as possible,
/// normalized to a one in that column. `None` if the columns are independent.
///
/// Columns are eliminated left to right and the scan stops at the first
/// column without a pivot.
pub fn lowest_kernel_vector(mut a: Matrix, f: &Field) -> Option<Vec<FieldElement>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut free = None;
    for c in 0..a.cols {
        let r = pivots.len();
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            free = Some(c);
            break;
        };
        a.swap_rows(r, p);
        let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
        let cols = a.cols;
        f.scale_slice(&mut a.row_mut(r)[c..cols], inv);
        for i in r + 1..a.rows {
            let factor = a.get(i, c);
            if !factor.is_zero() {
                a.eliminate(i, r, factor, c, f);
            }
        }
        pivots.push(c);
    }
    let free = free?;
    let mut x = vec![FieldElement::ZERO; a.cols];
    x[free] = FieldElement::ONE;
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let row = a.row(k);
        let mut acc = FieldElement::ZERO;
        for j in pc + 1..=free {
            acc += f.mul(row[j], x[j]);
        }
        x[pc] = acc;
    }
    Some(x)
}

/// Some solution of `a · x = b` (free variables set to zero), or `None` if
/// the system is inconsistent.
pub fn solve(a: &Matrix, b: &[FieldElement], f: &Field) -> Option<Vec<FieldElement>> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for (r, &br) in b.iter().enumerate() {
        aug.row_mut(r)[..n].copy_from_slice(a.row(r));
        aug.set(r, n, br);
    }
    let mut pivots = Vec::new();
    for c in 0..n {
        let r = pivots.len();
        let Some(p) = (r..aug.rows).find(|&i| !aug.get(i, c).is_zero()) else {
            continue;
        };
        aug.swap_rows(r, p);
        let inv = f.inv(aug.get(r, c)).expect("nonzero pivot");
        f.scale_slice(&mut aug.row_mut(r)[c..=n], inv);
        for i in 0..aug.rows {
            let factor = aug.get(i, c);
            if i != r && !factor.is_zero() {
                aug.eliminate(i, r, factor, c, f);
            }
        }
        pivots.push(c);
    }
    if (pivots.len()..aug.rows).any(|r| !aug.get(r, n).is_zero()) {
        return None;
    }
    let mut x = vec![FieldElement::ZERO; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, n);
    }
    Some(x)
}
