//! Exact integer linear algebra: sparse matrices and a fraction-free row
//! echelon basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Square matrix stored as sparse rows; row `i` lists `(j, M[i][j])` for the
/// non-zero entries, sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.rows[i].push((i, BigInt::one()));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<BigInt>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zero(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            m.rows[i] = row
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add_entry(&mut self, i: usize, j: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                row[k].1 += v;
                if row[k].1.is_zero() {
                    row.remove(k);
                }
            }
            Err(k) => row.insert(k, (j, v.clone())),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.dim]; self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                out[i][j.to_owned()] = v.clone();
            }
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, m) in &self.rows[i] {
                out[*j] += x * m;
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        SparseMatrix {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
                .collect(),
        }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn direct_sum(&self, other: &SparseMatrix) -> Self {
        let mut rows = self.rows.clone();
        rows.extend(
            other
                .rows
                .iter()
                .map(|r| r.iter().map(|(j, v)| (j + self.dim, v.clone())).collect()),
        );
        SparseMatrix {
            dim: self.dim + other.dim,
            rows,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &SparseMatrix) -> Self {
        let n = other.dim;
        let mut m = Self::zero(self.dim * n);
        for (i, ra) in self.rows.iter().enumerate() {
            for k in 0..n {
                let row = &mut m.rows[i * n + k];
                for (j, a) in ra {
                    for (l, b) in &other.rows[k] {
                        row.push((j * n + l, a * b));
                    }
                }
            }
        }
        m
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn kron_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Greatest common divisor of the entries, zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the content so the entries are coprime.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

/// Row echelon basis of a subspace of `ℚ^n`, kept with primitive integer rows
/// so no rational arithmetic is needed.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis. The result is zero iff `v` lies in the
    /// span.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let g = row[p].gcd(&v[p]);
            let a = &row[p] / &g;
            let b = &v[p] / &g;
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                *x = &a * &*x - &b * r;
            }
            v = primitive(&v);
        }
        v
    }

    /// Adds `v` to the basis if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if r[p].is_negative() {
            r.iter_mut().for_each(|x| *x = -&*x);
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}
