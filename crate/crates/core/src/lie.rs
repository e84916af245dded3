//! Lie algebras presented by an explicit matrix basis over Q(i), or by raw
//! structure constants. Brackets, adjoint matrices, the Killing form and
//! centers are all computed from the cached structure constants, so every
//! operation is realization-independent once the algebra is built.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::matrix::{ExactMatrix, LinearSolver, SubspaceBasis};
use crate::report::Report;
use crate::util::fingerprint_json;

/// An element of a [`MatrixLieAlgebra`], held as coordinates in its basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieElement {
    pub algebra: String,
    pub coords: Vec<GaussianRational>,
}

struct Realization {
    ambient_size: usize,
    basis: Vec<ExactMatrix>,
    solver: LinearSolver,
}

pub struct MatrixLieAlgebra {
    name: String,
    dim: usize,
    realization: Option<Realization>,
    /// `structure[i][j]` = coordinates of `[b_i, b_j]`.
    structure: Vec<Vec<Vec<GaussianRational>>>,
    killing: OnceLock<ExactMatrix>,
}

impl Clone for MatrixLieAlgebra {
    fn clone(&self) -> Self {
        let killing = OnceLock::new();
        if let Some(k) = self.killing.get() {
            let _ = killing.set(k.clone());
        }
        MatrixLieAlgebra {
            name: self.name.clone(),
            dim: self.dim,
            realization: self.realization.as_ref().map(|r| Realization {
                ambient_size: r.ambient_size,
                basis: r.basis.clone(),
                solver: LinearSolver::new(&span_matrix(r.ambient_size, &r.basis)),
            }),
            structure: self.structure.clone(),
            killing,
        }
    }
}

impl PartialEq for MatrixLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dim == other.dim
            && self.ambient_size() == other.ambient_size()
            && self.basis_matrices() == other.basis_matrices()
            && self.structure == other.structure
    }
}

impl fmt::Debug for MatrixLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MatrixLieAlgebra({}, dim {}, ambient {:?})",
            self.name,
            self.dim,
            self.ambient_size()
        )
    }
}

/// Columns are the vectorized basis matrices.
fn span_matrix(ambient_size: usize, basis: &[ExactMatrix]) -> ExactMatrix {
    let vecs: Vec<Vec<GaussianRational>> = basis.iter().map(ExactMatrix::vectorize).collect();
    ExactMatrix::from_fn(ambient_size * ambient_size, basis.len(), |r, c| {
        vecs[c][r].clone()
    })
}

impl MatrixLieAlgebra {
    /// Builds from an explicit matrix basis, computing structure constants.
    ///
    /// Fails with [`Error::Closure`] if some bracket of basis elements leaves
    /// the span. A linearly dependent basis is accepted here and reported by
    /// [`MatrixLieAlgebra::verify`], so corrupt inputs can still be examined.
    pub fn from_basis(
        name: impl Into<String>,
        ambient_size: usize,
        basis: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let name = name.into();
        if basis.is_empty() {
            return Err(Error::Shape(format!("algebra '{name}' needs a nonempty basis")));
        }
        if ambient_size == 0 {
            return Err(Error::Shape(format!("algebra '{name}' needs ambient size ≥ 1")));
        }
        for (idx, m) in basis.iter().enumerate() {
            if m.rows() != ambient_size || m.cols() != ambient_size {
                return Err(Error::Shape(format!(
                    "basis element {idx} of '{name}' is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    ambient_size,
                    ambient_size
                )));
            }
        }
        let dim = basis.len();
        let solver = LinearSolver::new(&span_matrix(ambient_size, &basis));
        let zero = vec![GaussianRational::zero(); dim];
        let mut structure = vec![vec![zero.clone(); dim]; dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let bracket = basis[i].commutator(&basis[j])?;
                let coords = solver
                    .solve(&bracket.vectorize())
                    .ok_or(Error::Closure { i, j })?;
                structure[j][i] = coords.iter().map(|c| -c).collect();
                structure[i][j] = coords;
            }
        }
        Ok(MatrixLieAlgebra {
            name,
            dim,
            realization: Some(Realization {
                ambient_size,
                basis,
                solver,
            }),
            structure,
            killing: OnceLock::new(),
        })
    }

    /// Builds from a raw structure-constant table `structure[i][j]` =
    /// coordinates of `[b_i, b_j]`. Only shapes are validated; run
    /// [`MatrixLieAlgebra::verify`] to check the algebra laws.
    pub fn from_structure_constants(
        name: impl Into<String>,
        dim: usize,
        structure: Vec<Vec<Vec<GaussianRational>>>,
    ) -> Result<Self> {
        let name = name.into();
        if dim == 0 {
            return Err(Error::Shape(format!("algebra '{name}' needs dimension ≥ 1")));
        }
        if structure.len() != dim
            || structure
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::Shape(format!(
                "structure constants of '{name}' must form a {dim}x{dim} table of length-{dim} vectors"
            )));
        }
        Ok(MatrixLieAlgebra {
            name,
            dim,
            realization: None,
            structure,
            killing: OnceLock::new(),
        })
    }

    /// Ingests a user-supplied spec (matrix basis or structure constants) and
    /// rejects it unless all algebra laws verify.
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        let algebra = match spec {
            AlgebraSpec::Matrix {
                name,
                ambient_size,
                basis,
            } => MatrixLieAlgebra::from_basis(name.clone(), *ambient_size, basis.clone())?,
            AlgebraSpec::Structure {
                name,
                dim,
                structure_constants,
            } => {
                let zero = vec![GaussianRational::zero(); *dim];
                let mut table = vec![vec![zero.clone(); *dim]; *dim];
                for entry in structure_constants {
                    if entry.i >= *dim || entry.j >= *dim {
                        return Err(Error::Shape(format!(
                            "structure entry ({}, {}) out of range for dim {dim}",
                            entry.i, entry.j
                        )));
                    }
                    if entry.coeffs.len() != *dim {
                        return Err(Error::Shape(format!(
                            "structure entry ({}, {}) has {} coefficients, expected {dim}",
                            entry.i,
                            entry.j,
                            entry.coeffs.len()
                        )));
                    }
                    table[entry.i][entry.j] = entry.coeffs.clone();
                    table[entry.j][entry.i] = entry.coeffs.iter().map(|c| -c).collect();
                }
                // Explicit entries win over the antisymmetric fill, so a
                // deliberately inconsistent table survives to verification.
                for entry in structure_constants {
                    table[entry.i][entry.j] = entry.coeffs.clone();
                }
                MatrixLieAlgebra::from_structure_constants(name.clone(), *dim, table)?
            }
        };
        let report = algebra.verify();
        if !report.passed() {
            let failed: Vec<String> = report
                .failures()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect();
            return Err(Error::Structure(format!(
                "algebra '{}' failed verification — {}",
                algebra.name,
                failed.join("; ")
            )));
        }
        Ok(algebra)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        match &self.realization {
            Some(r) => AlgebraSpec::Matrix {
                name: self.name.clone(),
                ambient_size: r.ambient_size,
                basis: r.basis.clone(),
            },
            None => {
                let mut entries = Vec::new();
                for i in 0..self.dim {
                    for j in (i + 1)..self.dim {
                        if self.structure[i][j].iter().any(|c| !c.is_zero()) {
                            entries.push(StructureEntry {
                                i,
                                j,
                                coeffs: self.structure[i][j].clone(),
                            });
                        }
                    }
                }
                AlgebraSpec::Structure {
                    name: self.name.clone(),
                    dim: self.dim,
                    structure_constants: entries,
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_size(&self) -> Option<usize> {
        self.realization.as_ref().map(|r| r.ambient_size)
    }

    pub fn basis_matrices(&self) -> Option<&[ExactMatrix]> {
        self.realization.as_ref().map(|r| r.basis.as_slice())
    }

    pub fn is_realized(&self) -> bool {
        self.realization.is_some()
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> &[GaussianRational] {
        &self.structure[i][j]
    }

    pub fn fingerprint(&self) -> String {
        fingerprint_json("algebra", &self.to_spec())
    }

    pub fn element(&self, coords: Vec<GaussianRational>) -> Result<LieElement> {
        if coords.len() != self.dim {
            return Err(Error::Shape(format!(
                "element has {} coordinates but '{}' has dimension {}",
                coords.len(),
                self.name,
                self.dim
            )));
        }
        Ok(LieElement {
            algebra: self.name.clone(),
            coords,
        })
    }

    pub fn zero_element(&self) -> LieElement {
        LieElement {
            algebra: self.name.clone(),
            coords: vec![GaussianRational::zero(); self.dim],
        }
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        let mut coords = vec![GaussianRational::zero(); self.dim];
        coords[i] = GaussianRational::one();
        LieElement {
            algebra: self.name.clone(),
            coords,
        }
    }

    fn check_element(&self, x: &LieElement) -> Result<()> {
        if x.algebra != self.name {
            return Err(Error::Mismatch(format!(
                "element of '{}' used with algebra '{}'",
                x.algebra, self.name
            )));
        }
        if x.coords.len() != self.dim {
            return Err(Error::Shape(format!(
                "element has {} coordinates but '{}' has dimension {}",
                x.coords.len(),
                self.name,
                self.dim
            )));
        }
        Ok(())
    }

    /// Expresses an ambient matrix in the basis.
    pub fn element_from_matrix(&self, m: &ExactMatrix) -> Result<LieElement> {
        let r = self.require_realization()?;
        if m.rows() != r.ambient_size || m.cols() != r.ambient_size {
            return Err(Error::Shape(format!(
                "matrix is {}x{}, ambient size of '{}' is {}",
                m.rows(),
                m.cols(),
                self.name,
                r.ambient_size
            )));
        }
        let coords = r.solver.solve(&m.vectorize()).ok_or_else(|| {
            Error::Domain(format!("matrix does not lie in the span of '{}'", self.name))
        })?;
        Ok(LieElement {
            algebra: self.name.clone(),
            coords,
        })
    }

    pub fn matrix_of(&self, x: &LieElement) -> Result<ExactMatrix> {
        self.check_element(x)?;
        let r = self.require_realization()?;
        let mut out = ExactMatrix::zeros(r.ambient_size, r.ambient_size);
        for (c, b) in x.coords.iter().zip(&r.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c))?;
            }
        }
        Ok(out)
    }

    fn require_realization(&self) -> Result<&Realization> {
        self.realization
            .as_ref()
            .ok_or_else(|| Error::NoRealization(self.name.clone()))
    }

    /// `[x, y]` in basis coordinates, via the cached structure constants.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = vec![GaussianRational::zero(); self.dim];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let scale = xi * yj;
                for (m, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[m] += &(&scale * c);
                    }
                }
            }
        }
        Ok(LieElement {
            algebra: self.name.clone(),
            coords: out,
        })
    }

    /// Matrix of `y ↦ [x, y]` in the basis of the algebra.
    pub fn ad_matrix(&self, x: &LieElement) -> Result<ExactMatrix> {
        self.check_element(x)?;
        let mut out = ExactMatrix::zeros(self.dim, self.dim);
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (m, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        let cur = out.at(m, j) + &(xi * c);
                        out.set(m, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    fn ad_of_basis(&self, i: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.dim, self.dim, |m, j| self.structure[i][j][m].clone())
    }

    /// Gram matrix of the Killing form on the basis, computed from structure
    /// constants (trace of composed adjoints), so it is independent of any
    /// particular matrix realization.
    pub fn killing_gram(&self) -> &ExactMatrix {
        self.killing.get_or_init(|| {
            ExactMatrix::from_fn(self.dim, self.dim, |a, b| {
                let mut acc = GaussianRational::zero();
                for p in 0..self.dim {
                    for q in 0..self.dim {
                        let left = &self.structure[a][q][p];
                        if left.is_zero() {
                            continue;
                        }
                        let right = &self.structure[b][p][q];
                        if !right.is_zero() {
                            acc += &(left * right);
                        }
                    }
                }
                acc
            })
        })
    }

    /// `trace(ad(x) ∘ ad(y))`.
    pub fn killing(&self, x: &LieElement, y: &LieElement) -> Result<GaussianRational> {
        self.check_element(x)?;
        self.check_element(y)?;
        let gram = self.killing_gram();
        let gy = gram.mul_vec(&y.coords)?;
        let mut acc = GaussianRational::zero();
        for (xi, gyi) in x.coords.iter().zip(&gy) {
            if !xi.is_zero() && !gyi.is_zero() {
                acc += &(xi * gyi);
            }
        }
        Ok(acc)
    }

    /// Canonical basis of `{x : [x, y] = 0 for all y}`, the joint kernel of
    /// the stacked adjoint matrices of the basis.
    pub fn center(&self) -> SubspaceBasis {
        let ads: Vec<ExactMatrix> = (0..self.dim).map(|i| self.ad_of_basis(i)).collect();
        let refs: Vec<&ExactMatrix> = ads.iter().collect();
        ExactMatrix::vstack(&refs)
            .expect("adjoint stack is rectangular")
            .kernel_basis()
    }

    /// Checks basis independence (when realized), closure of the realization
    /// against the cached constants, antisymmetry, and the Jacobi identity on
    /// all basis triples. Violations are report content, never errors.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();

        if let Some(r) = &self.realization {
            let independent = r.solver.rank() == self.dim;
            report.push(
                "independence",
                independent,
                format!("rank {} of {}", r.solver.rank(), self.dim),
            );
            let mut closure_failures = Vec::new();
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let mut expect = ExactMatrix::zeros(r.ambient_size, r.ambient_size);
                    for (m, c) in self.structure[i][j].iter().enumerate() {
                        if !c.is_zero() {
                            expect = expect.add(&r.basis[m].scale(c)).expect("shapes agree");
                        }
                    }
                    let actual = r.basis[i].commutator(&r.basis[j]).expect("shapes agree");
                    if actual.sub(&expect).expect("shapes agree").is_zero() {
                        continue;
                    }
                    closure_failures.push(format!("({i},{j})"));
                }
            }
            report.push(
                "closure",
                closure_failures.is_empty(),
                if closure_failures.is_empty() {
                    "all basis brackets lie in the span".to_string()
                } else {
                    format!("failed at {}", closure_failures.join(", "))
                },
            );
        } else {
            report.note("no matrix realization; independence and closure are vacuous".to_string());
        }

        let mut antisym_failures = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let ok = self.structure[i][j]
                    .iter()
                    .zip(&self.structure[j][i])
                    .all(|(a, b)| (a + b).is_zero());
                if !ok {
                    antisym_failures.push(format!("({i},{j})"));
                }
            }
        }
        report.push(
            "antisymmetry",
            antisym_failures.is_empty(),
            if antisym_failures.is_empty() {
                String::new()
            } else {
                format!("failed at {}", antisym_failures.join(", "))
            },
        );

        let mut jacobi_failures = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    if !self.jacobi_holds(i, j, k) {
                        jacobi_failures.push(format!("({i},{j},{k})"));
                    }
                }
            }
        }
        report.push(
            "jacobi",
            jacobi_failures.is_empty(),
            if jacobi_failures.is_empty() {
                String::new()
            } else {
                format!("violated at {}", jacobi_failures.join(", "))
            },
        );

        report
    }

    fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        // [b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]] = 0
        let mut acc = vec![GaussianRational::zero(); self.dim];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = &self.structure[b][c];
            for (l, coeff) in inner.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (m, c2) in self.structure[a][l].iter().enumerate() {
                    if !c2.is_zero() {
                        acc[m] += &(coeff * c2);
                    }
                }
            }
        }
        acc.iter().all(GaussianRational::is_zero)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<GaussianRational>,
}

/// Wire format for algebras: an explicit matrix basis, or a sparse
/// structure-constant table (entries for i < j imply the antisymmetric
/// counterparts unless explicitly overridden).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Matrix {
        name: String,
        ambient_size: usize,
        basis: Vec<ExactMatrix>,
    },
    Structure {
        name: String,
        dim: usize,
        structure_constants: Vec<StructureEntry>,
    },
}

impl Serialize for MatrixLieAlgebra {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatrixLieAlgebra {
    /// Structural parse of engine-emitted algebra data: shapes and closure are
    /// validated, but the full law verification of
    /// [`MatrixLieAlgebra::from_spec`] is not repeated here.
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let spec = AlgebraSpec::deserialize(deserializer)?;
        let built = match &spec {
            AlgebraSpec::Matrix {
                name,
                ambient_size,
                basis,
            } => MatrixLieAlgebra::from_basis(name.clone(), *ambient_size, basis.clone()),
            AlgebraSpec::Structure { .. } => MatrixLieAlgebra::from_spec(&spec),
        };
        built.map_err(serde::de::Error::custom)
    }
}

/// The su(2) basis used throughout the examples: `H0 = diag(i, -i)`,
/// `X = [[0,1],[-1,0]]`, `Y = [[0,i],[i,0]]`.
pub fn su2() -> MatrixLieAlgebra {
    let g = |re: i64, im: i64| GaussianRational::from_parts(re, 1, im, 1);
    let h0 = ExactMatrix::from_rows(vec![vec![g(0, 1), g(0, 0)], vec![g(0, 0), g(0, -1)]])
        .expect("static");
    let x = ExactMatrix::from_rows(vec![vec![g(0, 0), g(1, 0)], vec![g(-1, 0), g(0, 0)]])
        .expect("static");
    let y = ExactMatrix::from_rows(vec![vec![g(0, 0), g(0, 1)], vec![g(0, 1), g(0, 0)]])
        .expect("static");
    MatrixLieAlgebra::from_basis("su(2)", 2, vec![h0, x, y]).expect("su(2) closes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, 1, im, 1)
    }

    fn gl2() -> MatrixLieAlgebra {
        let mut basis = Vec::new();
        for r in 0..2 {
            for c in 0..2 {
                let mut m = ExactMatrix::zeros(2, 2);
                m.set(r, c, GaussianRational::one());
                basis.push(m);
            }
        }
        MatrixLieAlgebra::from_basis("gl(2)", 2, basis).unwrap()
    }

    #[test]
    fn su2_bracket_h0_x_is_2y() {
        let l = su2();
        let h0 = l.basis_element(0);
        let x = l.basis_element(1);
        let got = l.bracket(&h0, &x).unwrap();
        let mut expected = l.zero_element();
        expected.coords[2] = g(2, 0);
        assert_eq!(got, expected);
    }

    #[test]
    fn bracket_with_self_vanishes() {
        let l = su2();
        for i in 0..3 {
            let x = l.basis_element(i);
            assert_eq!(l.bracket(&x, &x).unwrap(), l.zero_element());
        }
        let mixed = l
            .element(vec![g(1, 0), g(-2, 0), g(3, 0)])
            .unwrap();
        assert_eq!(l.bracket(&mixed, &mixed).unwrap(), l.zero_element());
    }

    #[test]
    fn gl2_elementary_bracket() {
        // [E21, E12] = E22 - E11 (basis order E11, E12, E21, E22)
        let l = gl2();
        let e21 = l.basis_element(2);
        let e12 = l.basis_element(1);
        let got = l.bracket(&e21, &e12).unwrap();
        assert_eq!(
            got.coords,
            vec![g(-1, 0), g(0, 0), g(0, 0), g(1, 0)]
        );
    }

    #[test]
    fn killing_on_su2() {
        let l = su2();
        let h0 = l.basis_element(0);
        let x = l.basis_element(1);
        assert_eq!(l.killing(&h0, &h0).unwrap(), g(-8, 0));
        assert_eq!(l.killing(&h0, &x).unwrap(), g(0, 0));
        // symmetry on all basis pairs
        for i in 0..3 {
            for j in 0..3 {
                let a = l.basis_element(i);
                let b = l.basis_element(j);
                assert_eq!(l.killing(&a, &b).unwrap(), l.killing(&b, &a).unwrap());
            }
        }
    }

    #[test]
    fn killing_is_ad_invariant_on_su2() {
        // killing([z,x],y) + killing(x,[z,y]) = 0
        let l = su2();
        for zi in 0..3 {
            for xi in 0..3 {
                for yi in 0..3 {
                    let z = l.basis_element(zi);
                    let x = l.basis_element(xi);
                    let y = l.basis_element(yi);
                    let lhs = l.killing(&l.bracket(&z, &x).unwrap(), &y).unwrap()
                        + l.killing(&x, &l.bracket(&z, &y).unwrap()).unwrap();
                    assert!(lhs.is_zero());
                }
            }
        }
    }

    #[test]
    fn ad_matrix_of_h0() {
        let l = su2();
        let h0 = l.basis_element(0);
        let ad = l.ad_matrix(&h0).unwrap();
        let expected = ExactMatrix::from_rows(vec![
            vec![g(0, 0), g(0, 0), g(0, 0)],
            vec![g(0, 0), g(0, 0), g(-2, 0)],
            vec![g(0, 0), g(2, 0), g(0, 0)],
        ])
        .unwrap();
        assert_eq!(ad, expected);
        assert_eq!(l.ad_matrix(&l.zero_element()).unwrap(), ExactMatrix::zeros(3, 3));
        // ad(x)·x = 0
        let x = l.element(vec![g(1, 0), g(2, 0), g(-1, 0)]).unwrap();
        let applied = l.ad_matrix(&x).unwrap().mul_vec(&x.coords).unwrap();
        assert!(applied.iter().all(GaussianRational::is_zero));
    }

    #[test]
    fn ad_is_a_homomorphism_on_basis_pairs() {
        let l = su2();
        for i in 0..3 {
            for j in 0..3 {
                let x = l.basis_element(i);
                let y = l.basis_element(j);
                let lhs = l.ad_matrix(&l.bracket(&x, &y).unwrap()).unwrap();
                let rhs = l
                    .ad_matrix(&x)
                    .unwrap()
                    .commutator(&l.ad_matrix(&y).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn center_of_su2_is_trivial_and_abelian_center_is_everything() {
        assert_eq!(su2().center().dim(), 0);

        // 2-dimensional abelian algebra via zero structure constants.
        let zero = vec![GaussianRational::zero(); 2];
        let table = vec![vec![zero.clone(); 2]; 2];
        let ab = MatrixLieAlgebra::from_structure_constants("ab(2)", 2, table).unwrap();
        assert_eq!(ab.center(), SubspaceBasis::full(2));
    }

    #[test]
    fn verify_passes_on_su2() {
        let report = su2().verify();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn verify_reports_duplicated_basis_vector() {
        let g2 = su2();
        let basis = g2.basis_matrices().unwrap().to_vec();
        let dup = vec![
            basis[0].clone(),
            basis[1].clone(),
            basis[2].clone(),
            basis[2].clone(),
        ];
        // Brackets still close inside the span, so construction succeeds.
        let l = MatrixLieAlgebra::from_basis("dup", 2, dup).unwrap();
        let report = l.verify();
        assert!(!report.passed());
        assert!(report.failures().any(|c| c.name == "independence"));
    }

    #[test]
    fn verify_reports_injected_antisymmetry_failure() {
        let l = su2();
        let mut table = vec![vec![vec![GaussianRational::zero(); 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                table[i][j] = l.structure_constants(i, j).to_vec();
            }
        }
        // c[1][0] should be -c[0][1]; corrupt it.
        table[1][0] = table[0][1].clone();
        let bad = MatrixLieAlgebra::from_structure_constants("bad", 3, table).unwrap();
        let report = bad.verify();
        assert!(report.failures().any(|c| c.name == "antisymmetry"));
    }

    #[test]
    fn spec_ingestion_rejects_violations_and_accepts_su2() {
        let l = su2();
        let spec = l.to_spec();
        let round = MatrixLieAlgebra::from_spec(&spec).unwrap();
        assert_eq!(round, l);

        // Structure-constant route with a deliberate Jacobi break:
        // [b0,[b1,b2]] = [b0,b1] = b2 ≠ 0 while the other two cyclic terms vanish.
        let e = |v: Vec<(usize, i64)>| -> Vec<GaussianRational> {
            let mut out = vec![GaussianRational::zero(); 3];
            for (idx, val) in v {
                out[idx] = g(val, 0);
            }
            out
        };
        let bad = AlgebraSpec::Structure {
            name: "broken".into(),
            dim: 3,
            structure_constants: vec![
                StructureEntry { i: 0, j: 1, coeffs: e(vec![(2, 1)]) },
                StructureEntry { i: 0, j: 2, coeffs: e(vec![(1, -1)]) },
                StructureEntry { i: 1, j: 2, coeffs: e(vec![(1, 1)]) },
            ],
        };
        assert!(matches!(
            MatrixLieAlgebra::from_spec(&bad),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn killing_gram_nondegenerate_on_su2() {
        let l = su2();
        assert_eq!(l.killing_gram().rank(), 3);
        let _ = Rational::zero();
    }
}
