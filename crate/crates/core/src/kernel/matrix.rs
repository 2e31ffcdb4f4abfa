use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{int, lcm_of_denominators, Rational};
use super::vector::RationalVector;
use super::KernelError;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<RationalVector>,
    cols: usize,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<RationalVector>) -> Result<Self, KernelError> {
        let cols = rows.first().map_or(0, RationalVector::dim);
        for r in &rows {
            r.check_dim(cols)?;
        }
        Ok(RationalMatrix { rows, cols })
    }

    /// Empty matrix with a declared column count (for `0 x n` shapes).
    pub fn empty(cols: usize) -> Self {
        RationalMatrix { rows: Vec::new(), cols }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self, KernelError> {
        Self::from_rows(rows.iter().map(|r| RationalVector::from_ints(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix {
            rows: (0..n).map(|i| RationalVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let rows = (0..n)
            .map(|i| {
                let mut c = vec![Rational::zero(); n];
                c[i] = entries[i].clone();
                RationalVector::new(c)
            })
            .collect();
        RationalMatrix { rows, cols: n }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols)
    }

    pub fn rows(&self) -> &[RationalVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RationalVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| RationalVector::new(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        RationalMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        RationalVector::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| RationalVector::new(t.rows.iter().map(|c| r.dot(c)).collect()))
            .collect();
        RationalMatrix {
            rows,
            cols: other.cols,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.cols);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_integer(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|c| c.is_integer()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, c)| i == j || c.is_zero()))
    }

    /// Exact rank by Bareiss fraction-free elimination on an integer
    /// rescaling of the rows.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.integer_multiple()).collect();
        bareiss_rank(&mut m, self.cols)
    }

    pub fn determinant(&self) -> Result<Rational, KernelError> {
        if !self.is_square() {
            return Err(KernelError::NotSquare(self.shape()));
        }
        let n = self.cols;
        let mut m: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.coords().to_vec()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &pivot;
                for c in col..n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self, KernelError> {
        if !self.is_square() {
            return Err(KernelError::NotSquare(self.shape()));
        }
        let n = self.cols;
        let mut aug: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.coords().to_vec();
                row.extend((0..n).map(|j| if i == j { int(1) } else { Rational::zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return Err(KernelError::Singular);
        }
        Ok(RationalMatrix {
            rows: aug
                .into_iter()
                .map(|r| RationalVector::new(r[n..].to_vec()))
                .collect(),
            cols: n,
        })
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<RationalVector> {
        let mut m: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.coords().to_vec()).collect();
        let pivots = rref(&mut m, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = int(1);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[row][f].clone();
                }
                RationalVector::new(v)
            })
            .collect()
    }

    /// Some solution of `M x = b`, if the system is consistent.
    pub fn solve(&self, b: &RationalVector) -> Option<RationalVector> {
        let mut aug: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .zip(b.iter())
            .map(|(r, bi)| {
                let mut row = r.coords().to_vec();
                row.push(bi.clone());
                row
            })
            .collect();
        let pivots = rref(&mut aug, self.cols);
        if aug
            .iter()
            .skip(pivots.len())
            .any(|r| !r[self.cols].is_zero())
        {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[row][self.cols].clone();
        }
        Some(RationalVector::new(x))
    }

    /// Indices of a maximal linearly independent subset of the rows, chosen greedily in order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut basis: Vec<Vec<BigInt>> = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut trial = basis.clone();
            trial.push(r.integer_multiple());
            if bareiss_rank(&mut trial.clone(), self.cols) > basis.len() {
                basis = trial;
                chosen.push(i);
            }
        }
        chosen
    }
}

/// Reduced row echelon form in place over the first `cols` columns; returns pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        let inv = Rational::one() / &m[row][col];
        for c in m[row].iter_mut() {
            *c *= &inv;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..m[r].len() {
                let sub = &f * &m[row][c];
                m[r][c] -= sub;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank >= m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            let lead = m[r][col].clone();
            for c in 0..cols {
                let v = (&pivot * &m[r][c] - &lead * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank of a list of vectors (treated as matrix rows).
pub fn rank_of(vectors: &[RationalVector]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => RationalMatrix {
            rows: vectors.to_vec(),
            cols: v.dim(),
        }
        .rank(),
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Integer denominators are cleared row by row; exposed for callers that need integer rows.
pub fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    m.rows.iter().map(|r| r.integer_multiple()).collect()
}

pub fn common_denominator(m: &RationalMatrix) -> BigInt {
    lcm_of_denominators(m.rows.iter().flat_map(|r| r.iter()))
}
