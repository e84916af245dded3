//! Dense exact linear algebra over Q(i): reduced row-echelon forms, kernels,
//! linear solves, and canonical subspace bases.
//!
//! Everything here is deterministic. `rref` produces the unique reduced
//! row-echelon form with monic pivots, so subspaces compare by structural
//! equality of their `SubspaceBasis`.

use std::fmt;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for j in 0..n {
            m.set(j, j, GaussianRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Shape("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(Error::Shape("matrix needs at least one column".into()));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows in matrix".into()));
        }
        let n_rows = rows.len();
        Ok(ExactMatrix {
            rows: n_rows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussianRational,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major flattening, the vectorization used for span computations.
    pub fn vectorize(&self) -> Vec<GaussianRational> {
        self.entries.clone()
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn conjugate(&self) -> Self {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c).conj())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c) + other.at(r, c)
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c) - other.at(r, c)
        }))
    }

    pub fn neg(&self) -> Self {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| -self.at(r, c))
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * k)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c) + &(a * b);
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![GaussianRational::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.at(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    out[r] += &(a * &v[c]);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> Result<GaussianRational> {
        if self.rows != self.cols {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        let mut t = GaussianRational::zero();
        for j in 0..self.rows {
            t += self.at(j, j);
        }
        Ok(t)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    /// `Some(c)` iff the matrix equals `c · Id`.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.at(0, 0).clone();
        for r in 0..self.rows {
            for j in 0..self.cols {
                let expect_diag = r == j;
                let e = self.at(r, j);
                if expect_diag && e != &c {
                    return None;
                }
                if !expect_diag && !e.is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn vstack(blocks: &[&ExactMatrix]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Shape("vstack of nothing".into()));
        }
        let cols = blocks[0].cols;
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Shape("vstack with differing column counts".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for b in blocks {
            entries.extend_from_slice(&b.entries);
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn rref_with_transform(&self) -> RrefData {
        let mut r = self.clone();
        let mut e = ExactMatrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pivot_row) = (lead..self.rows).find(|&rr| !r.at(rr, col).is_zero()) else {
                continue;
            };
            if pivot_row != lead {
                r.swap_rows(pivot_row, lead);
                e.swap_rows(pivot_row, lead);
            }
            let inv = r.at(lead, col).recip().expect("pivot is nonzero");
            r.scale_row(lead, &inv);
            e.scale_row(lead, &inv);
            for rr in 0..self.rows {
                if rr == lead || r.at(rr, col).is_zero() {
                    continue;
                }
                let factor = r.at(rr, col).clone();
                r.row_sub_scaled(rr, lead, &factor);
                e.row_sub_scaled(rr, lead, &factor);
            }
            pivots.push(col);
            lead += 1;
        }
        RrefData {
            reduced: r,
            transform: e,
            pivots,
        }
    }

    /// Same elimination without carrying the row transform — much cheaper
    /// for tall matrices when only the reduced form and pivots are needed.
    fn rref_plain(&self) -> (ExactMatrix, Vec<usize>) {
        let mut r = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pivot_row) = (lead..self.rows).find(|&rr| !r.at(rr, col).is_zero()) else {
                continue;
            };
            if pivot_row != lead {
                r.swap_rows(pivot_row, lead);
            }
            let inv = r.at(lead, col).recip().expect("pivot is nonzero");
            r.scale_row(lead, &inv);
            for rr in 0..self.rows {
                if rr == lead || r.at(rr, col).is_zero() {
                    continue;
                }
                let factor = r.at(rr, col).clone();
                r.row_sub_scaled(rr, lead, &factor);
            }
            pivots.push(col);
            lead += 1;
        }
        (r, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: &GaussianRational) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.entries[idx].is_zero() {
                self.entries[idx] = &self.entries[idx] * k;
            }
        }
    }

    /// row[dst] -= k · row[src]
    fn row_sub_scaled(&mut self, dst: usize, src: usize, k: &GaussianRational) {
        for c in 0..self.cols {
            let s = self.entries[src * self.cols + c].clone();
            if s.is_zero() {
                continue;
            }
            let idx = dst * self.cols + c;
            self.entries[idx] -= &(&s * k);
        }
    }

    /// The unique reduced row-echelon form (monic pivots, pivot columns
    /// cleared above and below). Row space is preserved exactly.
    pub fn rref(&self) -> ExactMatrix {
        self.rref_plain().0
    }

    pub fn rank(&self) -> usize {
        self.rref_plain().1.len()
    }

    /// Canonical basis of `{v : self·v = 0}`.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let (reduced, pivot_set) = self.rref_plain();
        let mut vectors = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[free] = GaussianRational::one();
            for (r, &p) in pivot_set.iter().enumerate() {
                v[p] = -reduced.at(r, free);
            }
            vectors.push(v);
        }
        SubspaceBasis::from_vectors(self.cols, vectors).expect("kernel vectors have ambient length")
    }

    /// One exact solution of `self·x = b` if the system is consistent,
    /// via one augmented elimination. The solution is verified by
    /// multiplication before returning.
    pub fn solve(&self, b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(b.len(), self.rows, "rhs length must equal row count");
        let augmented = ExactMatrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (reduced, pivots) = augmented.rref_plain();
        // A pivot in the rhs column means the system is inconsistent.
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.at(r, self.cols).clone();
        }
        let check = self.mul_vec(&x).expect("solution length matches");
        assert!(
            check.iter().zip(b).all(|(got, want)| got == want),
            "solver produced a non-solution"
        );
        Some(x)
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let data = self.rref_with_transform();
        if data.pivots.len() == self.rows {
            Some(data.transform)
        } else {
            None
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<GaussianRational>> = Vec::deserialize(deserializer)?;
        ExactMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

struct RrefData {
    reduced: ExactMatrix,
    transform: ExactMatrix,
    pivots: Vec<usize>,
}

/// Reusable solver for many right-hand sides against a fixed matrix.
///
/// Holds `transform` with `transform · a = reduced` (reduced row-echelon), so
/// each solve costs one matrix-vector product plus a consistency scan.
pub struct LinearSolver {
    reduced: ExactMatrix,
    transform: ExactMatrix,
    pivots: Vec<usize>,
    cols: usize,
}

impl LinearSolver {
    pub fn new(a: &ExactMatrix) -> Self {
        let data = a.rref_with_transform();
        LinearSolver {
            reduced: data.reduced,
            transform: data.transform,
            pivots: data.pivots,
            cols: a.cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Particular solution with free variables set to zero, or `None` if the
    /// system is inconsistent.
    pub fn solve(&self, b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        let y = self.transform.mul_vec(b).expect("rhs length checked by caller");
        // Rows beyond the rank must have zero rhs.
        if y[self.pivots.len()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (r, &p) in self.pivots.iter().enumerate() {
            x[p] = y[r].clone();
        }
        // With free variables zero, reduced·x reproduces y by construction,
        // so a·x = b exactly.
        Some(x)
    }

    pub fn reduced(&self) -> &ExactMatrix {
        &self.reduced
    }
}

/// Canonical basis of the intersection of the kernels of the given square
/// operators on the ambient space. Computed incrementally — each operator is
/// restricted to the kernel found so far — which is far cheaper than one
/// stacked elimination; the result is the same canonical echelon basis.
pub fn joint_kernel(ops: &[&ExactMatrix], ambient_dim: usize) -> Result<SubspaceBasis> {
    let mut current = SubspaceBasis::full(ambient_dim);
    for op in ops {
        if op.rows() != ambient_dim || op.cols() != ambient_dim {
            return Err(Error::Shape(format!(
                "joint kernel needs {ambient_dim}x{ambient_dim} operators, got {}x{}",
                op.rows(),
                op.cols()
            )));
        }
        if current.is_empty() {
            break;
        }
        let span = current.to_matrix().expect("nonempty").transpose();
        let restricted = op.mul(&span)?;
        let small = restricted.kernel_basis();
        let vectors = small
            .vectors()
            .iter()
            .map(|w| current.linear_combination(w))
            .collect();
        current = SubspaceBasis::from_vectors(ambient_dim, vectors)?;
    }
    Ok(current)
}

/// A linear subspace held in canonical form: the rows of the unique reduced
/// row-echelon representative of any spanning set. Two `SubspaceBasis` values
/// are equal iff the subspaces are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<GaussianRational>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<GaussianRational>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Shape(format!(
                "subspace vectors must have ambient length {ambient_dim}"
            )));
        }
        if vectors.is_empty() {
            return Ok(SubspaceBasis {
                ambient_dim,
                vectors,
                pivots: Vec::new(),
            });
        }
        let m = ExactMatrix::from_rows(vectors)?;
        let data = m.rref_with_transform();
        let kept: Vec<Vec<GaussianRational>> = (0..data.pivots.len())
            .map(|r| data.reduced.row(r).to_vec())
            .collect();
        Ok(SubspaceBasis {
            ambient_dim,
            pivots: data.pivots,
            vectors: kept,
        })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|j| {
                let mut v = vec![GaussianRational::zero(); ambient_dim];
                v[j] = GaussianRational::one();
                v
            })
            .collect();
        SubspaceBasis {
            ambient_dim,
            vectors,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<GaussianRational>] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> &[GaussianRational] {
        &self.vectors[j]
    }

    /// Rows of the canonical basis as a matrix (dim × ambient). Empty bases
    /// have no matrix form.
    pub fn to_matrix(&self) -> Option<ExactMatrix> {
        if self.vectors.is_empty() {
            None
        } else {
            Some(ExactMatrix::from_rows(self.vectors.clone()).expect("stored rows are rectangular"))
        }
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        self.reduce(v).iter().all(GaussianRational::is_zero)
    }

    /// Residual of `v` after subtracting its projection onto the span, using
    /// the echelon structure (pivot columns identify coefficients directly).
    pub fn reduce(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (j, entry) in self.vectors[row].iter().enumerate() {
                if !entry.is_zero() {
                    w[j] -= &(&c * entry);
                }
            }
        }
        w
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates_of(&self, v: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates in this basis.
    pub fn linear_combination(&self, coords: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
        let mut out = vec![GaussianRational::zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (j, entry) in row.iter().enumerate() {
                if !entry.is_zero() {
                    out[j] += &(c * entry);
                }
            }
        }
        out
    }

    /// Matrix of an ambient operator restricted to this subspace, in this
    /// basis. Fails with [`Error::Domain`] if the operator does not preserve
    /// the subspace.
    pub fn restrict_operator(&self, op: &ExactMatrix) -> Result<ExactMatrix> {
        if op.rows() != self.ambient_dim || op.cols() != self.ambient_dim {
            return Err(Error::Shape(format!(
                "operator is {}x{}, ambient dimension is {}",
                op.rows(),
                op.cols(),
                self.ambient_dim
            )));
        }
        if self.is_empty() {
            return Err(Error::Shape("cannot restrict to a zero subspace".into()));
        }
        let mut columns = Vec::with_capacity(self.dim());
        for v in &self.vectors {
            let w = op.mul_vec(v)?;
            let coords = self.coordinates_of(&w).ok_or_else(|| {
                Error::Domain("operator does not preserve the subspace".into())
            })?;
            columns.push(coords);
        }
        Ok(ExactMatrix::from_fn(self.dim(), self.dim(), |r, c| {
            columns[c][r].clone()
        }))
    }

    /// Entrywise complex conjugation. The result is again canonical because
    /// conjugation fixes monic pivots and zeros.
    pub fn conjugated(&self) -> SubspaceBasis {
        SubspaceBasis {
            ambient_dim: self.ambient_dim,
            vectors: self
                .vectors
                .iter()
                .map(|row| row.iter().map(GaussianRational::conj).collect())
                .collect(),
            pivots: self.pivots.clone(),
        }
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SubspaceBasis dim {} in ambient {} [",
            self.dim(),
            self.ambient_dim
        )?;
        for v in &self.vectors {
            let row: Vec<String> = v.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceBasisWire {
    ambient_dim: usize,
    vectors: Vec<Vec<GaussianRational>>,
}

impl Serialize for SubspaceBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceBasisWire {
            ambient_dim: self.ambient_dim,
            vectors: self.vectors.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SubspaceBasis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = SubspaceBasisWire::deserialize(deserializer)?;
        SubspaceBasis::from_vectors(wire.ambient_dim, wire.vectors)
            .map_err(serde::de::Error::custom)
    }
}
