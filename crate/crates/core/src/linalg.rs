//! Exact rational linear algebra: determinants, linear solving, affine hulls,
//! and primitive integer hyperplane equations.

// Elimination updates one row from another row of the same matrix; the
// indexed form is the readable one there.
#![allow(clippy::needless_range_loop)]

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{Int, Rat, denominator_lcm};

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<Vec<Rat>>,
    cols: usize,
}

impl QMatrix {
    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
        }
        Ok(QMatrix { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        QMatrix { rows, cols: n }
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let n = entries.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            entries[i].clone()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        QMatrix { rows, cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    /// Exact determinant by rational Gaussian elimination with first-nonzero
    /// pivoting.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.nrows();
        let mut m = self.rows.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !m[r][col].is_zero()) {
                Some(r) => r,
                None => return Ok(Rat::zero()),
            };
            if pivot_row != col {
                m.swap(pivot_row, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for row in col + 1..n {
                if m[row][col].is_zero() {
                    continue;
                }
                let factor = &m[row][col] / &pivot;
                for j in col..n {
                    let sub = &factor * &m[col][j];
                    m[row][j] -= sub;
                }
            }
        }
        Ok(det)
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                got: rhs.nrows(),
            });
        }
        let rows = (0..self.nrows())
            .map(|i| {
                (0..rhs.ncols())
                    .map(|j| {
                        let mut acc = Rat::zero();
                        for k in 0..self.ncols() {
                            acc += &self.rows[i][k] * &rhs.rows[k][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(QMatrix {
            rows,
            cols: rhs.ncols(),
        })
    }

    pub fn apply(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                got: v.len(),
            });
        }
        Ok(self.rows.iter().map(|row| dot(row, v)).collect())
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|row| row[j].clone()).collect())
            .collect();
        QMatrix {
            rows,
            cols: self.nrows(),
        }
    }

    /// Exact inverse via Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.nrows();
        let mut m = self.rows.clone();
        let mut inv = QMatrix::identity(n).rows;
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            m.swap(pivot_row, col);
            inv.swap(pivot_row, col);
            let pivot = m[col][col].clone();
            for j in 0..n {
                m[col][j] /= &pivot;
                inv[col][j] /= &pivot;
            }
            for row in 0..n {
                if row == col || m[row][col].is_zero() {
                    continue;
                }
                let factor = m[row][col].clone();
                for j in 0..n {
                    let a = &factor * &m[col][j];
                    m[row][j] -= a;
                    let b = &factor * &inv[col][j];
                    inv[row][j] -= b;
                }
            }
        }
        Ok(QMatrix { rows: inv, cols: n })
    }

    /// Solves `self * x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[Rat]) -> Result<Vec<Rat>> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if rhs.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                got: rhs.len(),
            });
        }
        let n = self.nrows();
        let mut m = self.rows.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            m.swap(pivot_row, col);
            b.swap(pivot_row, col);
            let pivot = m[col][col].clone();
            for row in 0..n {
                if row == col || m[row][col].is_zero() {
                    continue;
                }
                let factor = &m[row][col] / &pivot;
                for j in col..n {
                    let sub = &factor * &m[col][j];
                    m[row][j] -= sub;
                }
                let sub = &factor * &b[col];
                b[row] -= sub;
            }
        }
        for col in 0..n {
            b[col] /= &m[col][col];
        }
        Ok(b)
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn sub_points(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_points(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_point(c: &Rat, p: &[Rat]) -> Vec<Rat> {
    p.iter().map(|x| c * x).collect()
}

/// Affine parametrization of a point set: a base point plus an independent
/// list of direction vectors spanning the affine hull.
#[derive(Clone, Debug)]
pub struct AffineHull {
    /// Dimension of the affine hull (0 for a single point).
    pub dim: usize,
    pub base: Vec<Rat>,
    /// `dim` linearly independent directions, chosen greedily from
    /// `point - base` differences in input order.
    pub basis: Vec<Vec<Rat>>,
}

/// Computes the affine hull of a nonempty point set.
pub fn affine_hull(points: &[Vec<Rat>]) -> Result<AffineHull> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let ambient = first.len();
    for p in points {
        if p.len() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: p.len(),
            });
        }
    }
    let base = first.clone();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    // Row-echelon copies of the accepted directions, for rank tests.
    let mut echelon: Vec<Vec<Rat>> = Vec::new();
    for p in &points[1..] {
        if basis.len() == ambient {
            break;
        }
        let dir = sub_points(p, &base);
        let mut reduced = dir.clone();
        reduce_against(&mut reduced, &echelon);
        if reduced.iter().any(|x| !x.is_zero()) {
            echelon.push(reduced);
            echelon.sort_by_key(|row| leading_index(row));
            basis.push(dir);
        }
    }
    Ok(AffineHull {
        dim: basis.len(),
        base,
        basis,
    })
}

fn leading_index(row: &[Rat]) -> usize {
    row.iter().position(|x| !x.is_zero()).unwrap_or(row.len())
}

fn reduce_against(v: &mut [Rat], echelon: &[Vec<Rat>]) {
    for row in echelon {
        let lead = leading_index(row);
        if lead == row.len() || v[lead].is_zero() {
            continue;
        }
        let factor = &v[lead] / &row[lead];
        for j in lead..v.len() {
            let sub = &factor * &row[j];
            v[j] -= sub;
        }
    }
}

/// Coordinates of `point` in the affine frame `(base, basis)`, if it lies in
/// the hull.
pub fn coordinates_in_affine_basis(hull: &AffineHull, point: &[Rat]) -> Option<Vec<Rat>> {
    let d = hull.base.len();
    let k = hull.basis.len();
    let target = sub_points(point, &hull.base);
    // Solve basis^T stacked as columns: d x k system, consistent iff the
    // point lies in the hull.
    let mut aug: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rat> = hull.basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut row_cursor = 0;
    for col in 0..k {
        let pivot = (row_cursor..d).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(pivot, row_cursor);
        let pv = aug[row_cursor][col].clone();
        for j in col..=k {
            aug[row_cursor][j] /= &pv;
        }
        for r in 0..d {
            if r == row_cursor || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for j in col..=k {
                let sub = &factor * &aug[row_cursor][j];
                aug[r][j] -= sub;
            }
        }
        pivot_rows.push(row_cursor);
        row_cursor += 1;
    }
    // Consistency: rows below the pivots must have zero rhs.
    for r in row_cursor..d {
        if !aug[r][k].is_zero() {
            return None;
        }
    }
    Some((0..k).map(|i| aug[pivot_rows[i]][k].clone()).collect())
}

/// A rational hyperplane `{x : alpha . x = a}` in primitive integer form:
/// `gcd` of all entries of `(alpha, a)` is 1 and `alpha != 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntHyperplane {
    pub alpha: Vec<Int>,
    pub a: Int,
}

impl IntHyperplane {
    pub fn dot(&self, x: &[Rat]) -> Rat {
        debug_assert_eq!(self.alpha.len(), x.len());
        let mut acc = Rat::zero();
        for (c, v) in self.alpha.iter().zip(x) {
            acc += Rat::from_integer(c.clone()) * v;
        }
        acc
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.dot(x) == Rat::from_integer(self.a.clone())
    }

    pub fn negated(&self) -> IntHyperplane {
        IntHyperplane {
            alpha: self.alpha.iter().map(|c| -c).collect(),
            a: -self.a.clone(),
        }
    }

    /// Last normal coordinate; its sign classifies the hyperplane as upper,
    /// lower, or vertical with respect to the final axis.
    pub fn last_coefficient(&self) -> &Int {
        self.alpha.last().expect("hyperplane in R^0")
    }
}

/// Primitive integer equation of the affine hull of `points`, which must span
/// exactly dimension `d - 1` in `R^d`. Sign convention: the first nonzero
/// entry of `alpha` is positive.
pub fn hyperplane_equation(points: &[Vec<Rat>]) -> Result<IntHyperplane> {
    let hull = affine_hull(points)?;
    let d = hull.base.len();
    if d == 0 || hull.dim != d - 1 {
        return Err(Error::NotAHyperplane);
    }
    // Null space of the (d-1) x d direction matrix is one-dimensional.
    let mut m: Vec<Vec<Rat>> = hull.basis.clone();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row_cursor = 0;
    for col in 0..d {
        let pivot = match (row_cursor..m.len()).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        m.swap(pivot, row_cursor);
        let pv = m[row_cursor][col].clone();
        for j in col..d {
            m[row_cursor][j] /= &pv;
        }
        for r in 0..m.len() {
            if r == row_cursor || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in col..d {
                let sub = &factor * &m[row_cursor][j];
                m[r][j] -= sub;
            }
        }
        pivot_cols.push(col);
        row_cursor += 1;
    }
    let free_col = (0..d)
        .find(|c| !pivot_cols.contains(c))
        .expect("rank d-1 matrix in R^d has a free column");
    let mut alpha = vec![Rat::zero(); d];
    alpha[free_col] = Rat::one();
    for (row, &col) in pivot_cols.iter().enumerate() {
        alpha[col] = -m[row][free_col].clone();
    }
    let a = dot(&alpha, &hull.base);
    Ok(primitive_hyperplane(&alpha, &a))
}

/// Clears denominators jointly, divides by the common gcd (including the
/// offset), and normalizes the sign of the first nonzero normal entry.
pub fn primitive_hyperplane(alpha: &[Rat], a: &Rat) -> IntHyperplane {
    let scale = denominator_lcm(alpha.iter().chain(std::iter::once(a)));
    let scale_rat = Rat::from_integer(scale);
    let mut ints: Vec<Int> = alpha
        .iter()
        .map(|c| (c * &scale_rat).to_integer())
        .collect();
    let mut offset = (a * &scale_rat).to_integer();
    let mut g = Int::zero();
    for c in ints.iter().chain(std::iter::once(&offset)) {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
        offset /= &g;
    }
    if let Some(first) = ints.iter().find(|c| !c.is_zero())
        && first.is_negative()
    {
        for c in ints.iter_mut() {
            *c = -c.clone();
        }
        offset = -offset;
    }
    IntHyperplane {
        alpha: ints,
        a: offset,
    }
}
