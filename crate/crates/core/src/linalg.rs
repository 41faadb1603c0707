//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Multivector, Rational};
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{cols} columns"),
                found: format!("{} columns", bad.len()),
            });
        }
        let n = rows.len();
        Ok(RationalMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `true` when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: RationalMatrix,
    pub rank: usize,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn row_reduce(m: &RationalMatrix) -> RowReduction {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, found);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowReduction {
        rref: RationalMatrix::from_rows(a).expect("rectangular"),
        rank: r,
        pivots,
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    row_reduce(m).rank
}

/// Incrementally maintained echelon basis over sparse coordinate vectors.
///
/// Each stored row is normalised to pivot 1 and has zeros in every other row's
/// pivot column.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; inserts it and returns `true` if independent.
    pub fn insert(&mut self, v: BTreeMap<usize, Rational>) -> bool {
        let reduced = self.reduce(v);
        let Some((&pivot, lead)) = reduced.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row: BTreeMap<usize, Rational> = reduced.iter().map(|(&c, x)| (c, x * &inv)).collect();
        for other in self.rows.values_mut() {
            if let Some(factor) = other.get(&pivot).cloned() {
                for (&c, x) in &row {
                    let e = other.entry(c).or_insert_with(Rational::zero);
                    *e -= &factor * x;
                    if e.is_zero() {
                        other.remove(&c);
                    }
                }
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    /// Remainder of `v` after eliminating all pivot columns.
    pub fn reduce(&self, mut v: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        for (pivot, row) in &self.rows {
            let Some(factor) = v.get(pivot).cloned() else {
                continue;
            };
            for (&c, x) in row {
                let e = v.entry(c).or_insert_with(Rational::zero);
                *e -= &factor * x;
                if e.is_zero() {
                    v.remove(&c);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: BTreeMap<usize, Rational>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Sparse coordinates of a multivector keyed by blade bitmask.
pub fn sparse_coordinates(x: &Multivector) -> BTreeMap<usize, Rational> {
    x.terms()
        .map(|(b, c)| (b.bits() as usize, c.clone()))
        .collect()
}

/// Positions of the first-seen linearly independent vectors.
pub fn basis_positions(vectors: &[Multivector]) -> Vec<usize> {
    let mut echelon = EchelonBasis::new();
    vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| echelon.insert(sparse_coordinates(v)))
        .map(|(i, _)| i)
        .collect()
}

/// Greedy first-seen basis of the span of `vectors`, preserving input order.
pub fn extract_basis(vectors: &[Multivector]) -> Vec<Multivector> {
    basis_positions(vectors)
        .into_iter()
        .map(|i| vectors[i].clone())
        .collect()
}

/// Dimension of the span of `vectors`.
pub fn span_rank(vectors: &[Multivector]) -> usize {
    basis_positions(vectors).len()
}

/// Coordinate matrix with one row per multivector (columns indexed by blade bitmask).
pub fn coordinate_matrix(vectors: &[Multivector]) -> Result<RationalMatrix> {
    let Some(first) = vectors.first() else {
        return Ok(RationalMatrix::zeros(0, 0));
    };
    let sig = first.signature();
    let mut rows = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.signature() != sig {
            return Err(Error::SignatureMismatch(sig, v.signature()));
        }
        rows.push(v.coordinates());
    }
    RationalMatrix::from_rows(rows)
}
