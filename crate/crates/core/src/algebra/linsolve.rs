//! Exact sparse Gauss–Jordan elimination over Gaussian rationals.
//!
//! Equations are inserted one row at a time and reduced against the pivots
//! found so far, so a caller can stop as soon as the rank saturates.
//! Column order is the caller's unknown order; kernel bases come out in
//! reduced row echelon form with respect to it and are therefore canonical.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Scalar;

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

fn axpy(row: &SparseRow, factor: &Scalar, pivot: &SparseRow) -> SparseRow {
    // row - factor * pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(factor * &pivot[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row-echelon form of a homogeneous linear system.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    // pivot column -> row with leading entry 1 at that column
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ncols
    }

    /// Reduces a row against the current pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|e| !e.1.is_zero());
        row.sort_by_key(|e| e.0);
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            if let Some(p) = self.pivots.get(&col) {
                let f = row[k].1.clone();
                row = axpy(&row, &f, p);
                // entries before position k are untouched (pivot rows start at col)
            } else {
                k += 1;
            }
        }
        row
    }

    /// Inserts an equation; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((col, lead)) = row.first().cloned() else {
            return false;
        };
        assert!(col < self.ncols, "column out of range");
        let inv = lead.inv().expect("nonzero pivot");
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.pivots.insert(col, row);
        true
    }

    /// Back-substitutes so that every pivot column is zero in all other
    /// rows (reduced row echelon form).
    fn reduced_pivots(&self) -> BTreeMap<usize, SparseRow> {
        let mut out: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let c = r[k].0;
                if let Some(p) = out.get(&c) {
                    let f = r[k].1.clone();
                    r = axpy(&r, &f, p);
                } else {
                    k += 1;
                }
            }
            out.insert(col, r);
        }
        out
    }

    /// A basis of the solution space of the homogeneous system, in reduced
    /// row echelon form (each vector's first nonzero entry is 1).
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let rref = self.reduced_pivots();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if rref.contains_key(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.ncols];
            v[free] = Scalar::one();
            for (&p, row) in &rref {
                if let Some((_, val)) = row.iter().find(|e| e.0 == free) {
                    v[p] = -val;
                }
            }
            basis.push(v);
        }
        canonical_basis(basis)
    }
}

/// Reduced row echelon form of a list of dense vectors, zero rows removed.
pub fn canonical_basis(vectors: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let Some(ncols) = vectors.first().map(|v| v.len()) else {
        return Vec::new();
    };
    let mut ech = Echelon::new(ncols);
    for v in vectors {
        ech.insert(to_sparse(&v));
    }
    ech.reduced_pivots()
        .into_values()
        .map(|r| to_dense(&r, ncols))
        .collect()
}

/// Rank of a list of dense vectors.
pub fn rank(vectors: &[Vec<Scalar>]) -> usize {
    let Some(ncols) = vectors.first().map(|v| v.len()) else {
        return 0;
    };
    let mut ech = Echelon::new(ncols);
    for v in vectors {
        ech.insert(to_sparse(v));
    }
    ech.rank()
}

/// Solves `A x = b` where `A` is given by its dense columns; returns one
/// solution if the system is consistent.
pub fn solve(columns: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let nrows = rhs.len();
    let ncols = columns.len();
    // augmented unknown vector (x, t) with A x - t b = 0, then normalize t = 1
    let mut ech = Echelon::new(ncols + 1);
    for r in 0..nrows {
        let mut row: SparseRow = columns
            .iter()
            .enumerate()
            .filter(|(_, c)| !c[r].is_zero())
            .map(|(k, c)| (k, c[r].clone()))
            .collect();
        if !rhs[r].is_zero() {
            row.push((ncols, -rhs[r].clone()));
        }
        ech.insert(row);
    }
    if ech.pivots.contains_key(&ncols) {
        return None;
    }
    let rref = ech.reduced_pivots();
    let mut x = vec![Scalar::zero(); ncols];
    for (&p, row) in &rref {
        if let Some((_, val)) = row.iter().find(|e| e.0 == ncols) {
            x[p] = -val;
        }
    }
    Some(x)
}

pub fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

pub fn to_dense(r: &SparseRow, ncols: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); ncols];
    for (c, x) in r {
        v[*c] = x.clone();
    }
    v
}
