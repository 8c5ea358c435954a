//! Dense exact-rational matrices, sized for per-degree transition matrices.

use std::fmt;
use std::ops::Mul;

use num::{One, Signed, Zero};

use crate::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Unit diagonal and zeros strictly above it.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| self[(i, i)].is_one() && (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    /// `v · self` for a row vector `v`.
    pub fn left_apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rat::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                if !x.is_zero() {
                    *o += vi * x;
                }
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let scale = a[(col, col)].recip();
            a.scale_row(col, &scale);
            inv.scale_row(col, &scale);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.sub_row_multiple(r, col, &f);
                    inv.sub_row_multiple(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    /// Inverse of a lower unitriangular matrix by forward substitution.
    /// Returns `None` if the matrix is not lower unitriangular.
    pub fn unitriangular_inverse(&self) -> Option<Self> {
        if !self.is_lower_unitriangular() {
            return None;
        }
        let n = self.rows;
        let mut inv = Self::identity(n);
        // inv[i][j] = -Σ_{j<=m<i} a[i][m] inv[m][j]
        for i in 0..n {
            for j in 0..i {
                let mut acc = Rat::zero();
                for m in j..i {
                    if !self[(i, m)].is_zero() && !inv[(m, j)].is_zero() {
                        acc += &self[(i, m)] * &inv[(m, j)];
                    }
                }
                inv[(i, j)] = -acc;
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let scale = a[(row, col)].recip();
            a.scale_row(row, &scale);
            for r in 0..self.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.sub_row_multiple(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : self · x = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Rat) {
        for j in 0..self.cols {
            let x = &mut self.data[r * self.cols + j];
            if !x.is_zero() {
                *x *= s;
            }
        }
    }

    /// row[target] -= f · row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &Rat) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let d = s * f;
            self.data[target * self.cols + j] -= d;
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let row = rhs.left_apply(self.row(i));
            for (j, x) in row.into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
