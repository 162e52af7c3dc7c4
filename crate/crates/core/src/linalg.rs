//! Dense exact linear algebra over a [`ScalarField`].

use std::fmt;

use num_traits::Zero;

use crate::coord::Rational;
use crate::error::{Error, Result};
use crate::field::ScalarField;

pub type Vector = Vec<Rational>;

/// Row-major dense matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, num_traits::One::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` disambiguates the shape when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::domain(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]], cols: usize) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Matrix::from_rows(rows, cols).expect("consistent shape")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Applies `field` reduction to every entry.
    pub fn reduced(&self, field: &ScalarField) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|x| field.reduce(x))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `self · rhs`.
    pub fn mul(&self, field: &ScalarField, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, field.add(&cur, &field.mul(a, b)));
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, field: &ScalarField, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| {
                        field.add(&acc, &field.mul(a, b))
                    })
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, field: &ScalarField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| field.pivot_cost(m.get(i, c)));
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let lead = m.get(r, c).clone();
            for j in c..m.cols {
                let v = field.div(m.get(r, j), &lead);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), &field.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, field: &ScalarField) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn nullspace(&self, field: &ScalarField) -> Vec<Vector> {
        let (r, pivots) = self.rref(field);
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    pub fn has_full_column_rank(&self, field: &ScalarField) -> bool {
        self.rank(field) == self.cols
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally grown span that remembers how each reduced vector was
/// assembled from the inserted ones.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    field: ScalarField,
    dim: usize,
    rows: Vec<BasisRow>,
    labels: usize,
}

#[derive(Clone, Debug)]
struct BasisRow {
    vec: Vector,
    pivot: usize,
    combo: Vector,
}

impl SpanBasis {
    pub fn new(field: ScalarField, dim: usize) -> Self {
        SpanBasis {
            field,
            dim,
            rows: Vec::new(),
            labels: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> (Vector, Vector) {
        let f = &self.field;
        let mut residual = v.to_vec();
        let mut combo = vec![Rational::zero(); self.labels];
        for row in &self.rows {
            let x = &residual[row.pivot];
            if x.is_zero() {
                continue;
            }
            let factor = f.div(x, &row.vec[row.pivot]);
            for (r, b) in residual.iter_mut().zip(&row.vec) {
                if !b.is_zero() {
                    *r = f.sub(r, &f.mul(&factor, b));
                }
            }
            for (c, b) in combo.iter_mut().zip(&row.combo) {
                if !b.is_zero() {
                    *c = f.add(c, &f.mul(&factor, b));
                }
            }
        }
        (residual, combo)
    }

    /// Coefficients `c` with `v = Σ c[l] · inserted[l]`, if `v` lies in the span.
    pub fn express(&self, v: &[Rational]) -> Option<Vector> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let (residual, combo) = self.reduce(v);
        residual.iter().all(Zero::is_zero).then_some(combo)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.express(v).is_some()
    }

    /// Inserts `v` if it is independent; returns its label.
    pub fn insert(&mut self, v: &[Rational]) -> Option<usize> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let (residual, mut combo) = self.reduce(v);
        let pivot = residual.iter().position(|x| !x.is_zero())?;
        let label = self.labels;
        self.labels += 1;
        for row in &mut self.rows {
            row.combo.push(Rational::zero());
        }
        // residual = v - Σ combo·inserted
        for c in combo.iter_mut() {
            *c = self.field.neg(c);
        }
        combo.push(self.field.one());
        self.rows.push(BasisRow {
            vec: residual,
            pivot,
            combo,
        });
        Some(label)
    }
}
