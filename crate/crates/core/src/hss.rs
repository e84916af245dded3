//! The classical irreducible compact Hermitian symmetric pairs.
//!
//! Four families are constructed, each as a compact real form realized by
//! matrices over Q(i) with rational coordinates in a fixed real basis:
//!
//! | family           | g       | k            | complex dim |
//! |------------------|---------|--------------|-------------|
//! | grassmannian p,q | su(p+q) | s(u(p)⊕u(q)) | p·q         |
//! | quadric n        | so(n+2) | so(n)⊕so(2)  | n           |
//! | sp_un n          | sp(n)   | u(n)         | n(n+1)/2    |
//! | so2n_un n        | so(2n)  | u(n)         | n(n−1)/2    |
//!
//! Only the isotropy subalgebra k is written down per family. The complement
//! p is *computed* as the Killing-orthogonal complement, the center generator
//! z is computed from the joint adjoint kernel of k and normalized so that the
//! ambient matrix of z has spectrum in i·Z (minimally, with a deterministic
//! sign), and p± are computed as the ±λi eigenspaces of ad(z) on the
//! complexified complement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::lie::{LieElement, MatrixLieAlgebra};
use crate::matrix::{ExactMatrix, LinearSolver, SubspaceBasis};
use crate::rational::Rational;
use crate::report::Report;
use crate::spectrum::imaginary_rational_spectrum;
use crate::util::fingerprint_json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Grassmannian,
    Quadric,
    SpUn,
    So2nUn,
}

impl Family {
    pub fn all() -> [Family; 4] {
        [Family::Grassmannian, Family::Quadric, Family::SpUn, Family::So2nUn]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Grassmannian => "grassmannian",
            Family::Quadric => "quadric",
            Family::SpUn => "sp_un",
            Family::So2nUn => "so2n_un",
        }
    }

    pub fn param_doc(&self) -> &'static str {
        match self {
            Family::Grassmannian => "[p, q] with p >= 1, q >= 1",
            Family::Quadric => "[n] with n >= 3",
            Family::SpUn => "[n] with n >= 1",
            Family::So2nUn => "[n] with n >= 2",
        }
    }

    pub fn complex_dim_doc(&self) -> &'static str {
        match self {
            Family::Grassmannian => "p*q",
            Family::Quadric => "n",
            Family::SpUn => "n(n+1)/2",
            Family::So2nUn => "n(n-1)/2",
        }
    }

    pub fn space_doc(&self) -> &'static str {
        match self {
            Family::Grassmannian => "SU(p+q)/S(U(p)xU(q))",
            Family::Quadric => "SO(n+2)/(SO(n)xSO(2))",
            Family::SpUn => "Sp(n)/U(n)",
            Family::So2nUn => "SO(2n)/U(n)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub family: Family,
    pub params: Vec<u32>,
}

impl PairSpec {
    pub fn grassmannian(p: u32, q: u32) -> Self {
        PairSpec {
            family: Family::Grassmannian,
            params: vec![p, q],
        }
    }

    pub fn quadric(n: u32) -> Self {
        PairSpec {
            family: Family::Quadric,
            params: vec![n],
        }
    }

    pub fn sp_un(n: u32) -> Self {
        PairSpec {
            family: Family::SpUn,
            params: vec![n],
        }
    }

    pub fn so2n_un(n: u32) -> Self {
        PairSpec {
            family: Family::So2nUn,
            params: vec![n],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Parameter(msg));
        match self.family {
            Family::Grassmannian => {
                if self.params.len() != 2 {
                    return fail(format!("grassmannian takes [p, q], got {:?}", self.params));
                }
                if self.params[0] < 1 || self.params[1] < 1 {
                    return fail(format!(
                        "grassmannian needs p >= 1 and q >= 1, got {:?}",
                        self.params
                    ));
                }
            }
            Family::Quadric => {
                if self.params.len() != 1 {
                    return fail(format!("quadric takes [n], got {:?}", self.params));
                }
                if self.params[0] < 3 {
                    return fail(format!("quadric needs n >= 3, got {}", self.params[0]));
                }
            }
            Family::SpUn => {
                if self.params.len() != 1 {
                    return fail(format!("sp_un takes [n], got {:?}", self.params));
                }
                if self.params[0] < 1 {
                    return fail(format!("sp_un needs n >= 1, got {}", self.params[0]));
                }
            }
            Family::So2nUn => {
                if self.params.len() != 1 {
                    return fail(format!("so2n_un takes [n], got {:?}", self.params));
                }
                if self.params[0] < 2 {
                    return fail(format!("so2n_un needs n >= 2, got {}", self.params[0]));
                }
            }
        }
        Ok(())
    }

    /// Closed-form complex dimension of G/K.
    pub fn complex_dim(&self) -> usize {
        match self.family {
            Family::Grassmannian => (self.params[0] * self.params[1]) as usize,
            Family::Quadric => self.params[0] as usize,
            Family::SpUn => {
                let n = self.params[0] as usize;
                n * (n + 1) / 2
            }
            Family::So2nUn => {
                let n = self.params[0] as usize;
                n * (n - 1) / 2
            }
        }
    }

    pub fn ambient_size(&self) -> usize {
        match self.family {
            Family::Grassmannian => (self.params[0] + self.params[1]) as usize,
            Family::Quadric => (self.params[0] + 2) as usize,
            Family::SpUn | Family::So2nUn => 2 * self.params[0] as usize,
        }
    }

    pub fn g_name(&self) -> String {
        match self.family {
            Family::Grassmannian => format!("su({})", self.params[0] + self.params[1]),
            Family::Quadric => format!("so({})", self.params[0] + 2),
            Family::SpUn => format!("sp({})", self.params[0]),
            Family::So2nUn => format!("so({})", 2 * self.params[0]),
        }
    }

    pub fn k_name(&self) -> String {
        match self.family {
            Family::Grassmannian => format!("s(u({})+u({}))", self.params[0], self.params[1]),
            Family::Quadric => format!("so({})+so(2)", self.params[0]),
            Family::SpUn | Family::So2nUn => format!("u({})", self.params[0]),
        }
    }

    pub fn fingerprint(&self) -> String {
        fingerprint_json("pair", self)
    }
}

fn gone() -> GaussianRational {
    GaussianRational::one()
}

fn gi() -> GaussianRational {
    GaussianRational::i()
}

fn mat(n: usize, entries: &[(usize, usize, GaussianRational)]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    for (r, c, v) in entries {
        m.set(*r, *c, v.clone());
    }
    m
}

/// su(m): diagonals i(E_jj − E_{j+1,j+1}), then for j < k the pair
/// E_jk − E_kj and i(E_jk + E_kj).
fn su_basis(m: usize) -> Vec<ExactMatrix> {
    let mut basis = Vec::new();
    for j in 0..m.saturating_sub(1) {
        basis.push(mat(m, &[(j, j, gi()), (j + 1, j + 1, -gi())]));
    }
    for j in 0..m {
        for k in (j + 1)..m {
            basis.push(mat(m, &[(j, k, gone()), (k, j, -gone())]));
            basis.push(mat(m, &[(j, k, gi()), (k, j, gi())]));
        }
    }
    basis
}

/// so(m): A_jk = E_jk − E_kj for j < k.
fn so_basis(m: usize) -> Vec<ExactMatrix> {
    let mut basis = Vec::new();
    for j in 0..m {
        for k in (j + 1)..m {
            basis.push(mat(m, &[(j, k, gone()), (k, j, -gone())]));
        }
    }
    basis
}

/// Embeds an anti-Hermitian n×n generator into sp(n) as diag(a, conj(a)).
fn sp_embed_u(n: usize, entries: &[(usize, usize, GaussianRational)]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2 * n, 2 * n);
    for (r, c, v) in entries {
        m.set(*r, *c, v.clone());
        m.set(n + *r, n + *c, v.conj());
    }
    m
}

/// The u(n) block of sp(n).
fn sp_un_k_raw(n: usize) -> Vec<ExactMatrix> {
    let mut basis = Vec::new();
    for j in 0..n {
        for k in (j + 1)..n {
            basis.push(sp_embed_u(n, &[(j, k, gone()), (k, j, -gone())]));
            basis.push(sp_embed_u(n, &[(j, k, gi()), (k, j, gi())]));
        }
    }
    for j in 0..n {
        basis.push(sp_embed_u(n, &[(j, j, gi())]));
    }
    basis
}

/// sp(n) ⊂ gl(2n): the u(n) block plus [[0, B], [−conj(B), 0]] with B
/// symmetric, split into real and imaginary symmetric parts.
fn sp_basis(n: usize) -> Vec<ExactMatrix> {
    let mut basis = sp_un_k_raw(n);
    let m = 2 * n;
    for j in 0..n {
        for k in j..n {
            let sym: Vec<(usize, usize)> = if j == k {
                vec![(j, j)]
            } else {
                vec![(j, k), (k, j)]
            };
            let mut re = ExactMatrix::zeros(m, m);
            for (r, c) in &sym {
                re.set(*r, n + *c, gone());
                re.set(n + *r, *c, -gone());
            }
            basis.push(re);
            let mut im = ExactMatrix::zeros(m, m);
            for (r, c) in &sym {
                im.set(*r, n + *c, gi());
                im.set(n + *r, *c, gi());
            }
            basis.push(im);
        }
    }
    basis
}

/// Embeds X + iY ∈ u(n) into so(2n) as [[X, −Y], [Y, X]].
fn so2n_un_k_raw(n: usize) -> Vec<ExactMatrix> {
    let m = 2 * n;
    let mut basis = Vec::new();
    for j in 0..n {
        for k in (j + 1)..n {
            // X = E_jk − E_kj
            basis.push(mat(
                m,
                &[
                    (j, k, gone()),
                    (k, j, -gone()),
                    (n + j, n + k, gone()),
                    (n + k, n + j, -gone()),
                ],
            ));
            // Y = E_jk + E_kj
            basis.push(mat(
                m,
                &[
                    (j, n + k, -gone()),
                    (k, n + j, -gone()),
                    (n + j, k, gone()),
                    (n + k, j, gone()),
                ],
            ));
        }
    }
    for j in 0..n {
        // Y = E_jj
        basis.push(mat(m, &[(j, n + j, -gone()), (n + j, j, gone())]));
    }
    basis
}

fn grassmannian_k_raw(p: usize, q: usize) -> Vec<ExactMatrix> {
    let m = p + q;
    let mut basis = Vec::new();
    // su(p) block
    for j in 0..p.saturating_sub(1) {
        basis.push(mat(m, &[(j, j, gi()), (j + 1, j + 1, -gi())]));
    }
    for j in 0..p {
        for k in (j + 1)..p {
            basis.push(mat(m, &[(j, k, gone()), (k, j, -gone())]));
            basis.push(mat(m, &[(j, k, gi()), (k, j, gi())]));
        }
    }
    // su(q) block
    for j in p..(m - 1) {
        basis.push(mat(m, &[(j, j, gi()), (j + 1, j + 1, -gi())]));
    }
    for j in p..m {
        for k in (j + 1)..m {
            basis.push(mat(m, &[(j, k, gone()), (k, j, -gone())]));
            basis.push(mat(m, &[(j, k, gi()), (k, j, gi())]));
        }
    }
    // trace-balanced center direction: i·diag(q, …, q, −p, …, −p)
    let mut z = ExactMatrix::zeros(m, m);
    for j in 0..p {
        z.set(j, j, gi().scale(&Rational::from_int(q as i64)));
    }
    for j in p..m {
        z.set(j, j, gi().scale(&Rational::from_int(-(p as i64))));
    }
    basis.push(z);
    basis
}

fn quadric_k_raw(n: usize) -> Vec<ExactMatrix> {
    let m = n + 2;
    let mut basis = Vec::new();
    for j in 0..n {
        for k in (j + 1)..n {
            basis.push(mat(m, &[(j, k, gone()), (k, j, -gone())]));
        }
    }
    basis.push(mat(m, &[(n, n + 1, gone()), (n + 1, n, -gone())]));
    basis
}

fn build_g(spec: &PairSpec) -> Result<MatrixLieAlgebra> {
    let ambient = spec.ambient_size();
    let basis = match spec.family {
        Family::Grassmannian => su_basis(ambient),
        Family::Quadric | Family::So2nUn => so_basis(ambient),
        Family::SpUn => sp_basis(spec.params[0] as usize),
    };
    MatrixLieAlgebra::from_basis(spec.g_name(), ambient, basis)
}

fn raw_k_matrices(spec: &PairSpec) -> Vec<ExactMatrix> {
    match spec.family {
        Family::Grassmannian => {
            grassmannian_k_raw(spec.params[0] as usize, spec.params[1] as usize)
        }
        Family::Quadric => quadric_k_raw(spec.params[0] as usize),
        Family::SpUn => sp_un_k_raw(spec.params[0] as usize),
        Family::So2nUn => so2n_un_k_raw(spec.params[0] as usize),
    }
}

/// The full algebraic record of one compact Hermitian symmetric pair.
///
/// All bases are canonical echelon bases in g-coordinates. The basis of the
/// `k` subalgebra is exactly the rows of `k_basis` realized as matrices, in
/// order, so homomorphism images index it stably.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermitianPair {
    pub spec: PairSpec,
    pub g: MatrixLieAlgebra,
    pub k: MatrixLieAlgebra,
    pub k_basis: SubspaceBasis,
    pub p_basis: SubspaceBasis,
    pub z: LieElement,
    pub z_in_k: Vec<GaussianRational>,
    pub lambda: Rational,
    pub p_plus: SubspaceBasis,
    pub p_minus: SubspaceBasis,
}

/// Lex-positivity of the first nonzero entry, scanning row-major. Fixes the
/// overall sign of z deterministically.
fn first_nonzero_is_positive(m: &ExactMatrix) -> bool {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.at(r, c);
            if v.is_zero() {
                continue;
            }
            if !v.re.is_zero() {
                return v.re.is_positive();
            }
            return v.im.is_positive();
        }
    }
    true
}

pub fn build_pair(spec: &PairSpec) -> Result<HermitianPair> {
    spec.validate()?;
    let g = build_g(spec)?;
    let dim_g = g.dim();

    // k as a canonical echelon subspace of g, then as its own algebra.
    let raw = raw_k_matrices(spec);
    let mut coords = Vec::with_capacity(raw.len());
    for m in &raw {
        coords.push(g.element_from_matrix(m)?.coords);
    }
    let k_basis = SubspaceBasis::from_vectors(dim_g, coords)?;
    if k_basis.dim() != raw.len() {
        return Err(Error::Structure(format!(
            "isotropy basis of {} is dependent: {} of {} vectors survive",
            spec.g_name(),
            k_basis.dim(),
            raw.len()
        )));
    }
    let k_matrices: Vec<ExactMatrix> = k_basis
        .vectors()
        .iter()
        .map(|row| -> Result<ExactMatrix> { g.matrix_of(&g.element(row.clone())?) })
        .collect::<Result<_>>()?;
    let k = MatrixLieAlgebra::from_basis(spec.k_name(), spec.ambient_size(), k_matrices)?;

    // p = Killing-orthogonal complement of k in g.
    let mk = k_basis.to_matrix().expect("k is nonempty");
    let p_basis = mk.mul(g.killing_gram())?.kernel_basis();
    if k_basis.dim() + p_basis.dim() != dim_g {
        return Err(Error::Structure(format!(
            "dim k ({}) + dim p ({}) != dim g ({})",
            k_basis.dim(),
            p_basis.dim(),
            dim_g
        )));
    }

    // Center of k: must be a line.
    let center = k.center();
    if center.dim() != 1 {
        return Err(Error::Structure(format!(
            "center of {} has dimension {}, expected 1",
            k.name(),
            center.dim()
        )));
    }
    let zc_in_k = center.vector(0).to_vec();
    let zc_in_g = k_basis.linear_combination(&zc_in_k);
    let zc_matrix = g.matrix_of(&g.element(zc_in_g.clone())?)?;

    // Normalize: the ambient spectrum of z must be i·Z, minimally.
    let spectrum = imaginary_rational_spectrum(&zc_matrix)?;
    let mut t = Rational::zero();
    for (r, _) in &spectrum {
        if !r.is_zero() {
            t = t.lcm(&r.recip().expect("nonzero").abs());
        }
    }
    if t.is_zero() {
        return Err(Error::Structure(
            "center generator acts with zero spectrum".into(),
        ));
    }
    for (r, _) in &spectrum {
        if !(r * &t).is_integer() {
            return Err(Error::Structure(format!(
                "normalized center spectrum contains non-integer {}",
                r * &t
            )));
        }
    }
    let mut scale = GaussianRational::from_rational(t);
    if !first_nonzero_is_positive(&zc_matrix.scale(&scale)) {
        scale = -scale;
    }
    let z_in_k: Vec<GaussianRational> = zc_in_k.iter().map(|c| c * &scale).collect();
    let z_coords: Vec<GaussianRational> = zc_in_g.iter().map(|c| c * &scale).collect();
    let z = g.element(z_coords)?;

    // ad(z) on p must square to a negative rational scalar.
    let ad_z = g.ad_matrix(&z)?;
    let restricted = p_basis.restrict_operator(&ad_z)?;
    let squared = restricted.mul(&restricted)?;
    let c = squared
        .as_scalar()
        .ok_or_else(|| Error::Structure("ad(z)² is not scalar on the complement".into()))?;
    if !c.im.is_zero() || !c.re.is_negative() {
        return Err(Error::Structure(format!(
            "ad(z)² = {c}·Id on the complement; expected a negative rational"
        )));
    }
    let lambda = (-&c.re)
        .sqrt()
        .ok_or_else(|| Error::Structure(format!("-({}) is not a rational square", c.re)))?;

    // p± as exact eigenspaces of ad(z), expressed back in g-coordinates.
    let eigenspace = |sign: i64| -> Result<SubspaceBasis> {
        let shift = ExactMatrix::identity(p_basis.dim()).scale(&GaussianRational::new(
            Rational::zero(),
            &lambda * &Rational::from_int(sign),
        ));
        let kernel = restricted.sub(&shift)?.kernel_basis();
        let vectors = kernel
            .vectors()
            .iter()
            .map(|v| p_basis.linear_combination(v))
            .collect();
        SubspaceBasis::from_vectors(dim_g, vectors)
    };
    let p_plus = eigenspace(1)?;
    let p_minus = eigenspace(-1)?;
    if p_plus.dim() != p_basis.dim() / 2 || p_minus.dim() != p_basis.dim() / 2 {
        return Err(Error::Structure(format!(
            "eigenspace dimensions {} and {} do not halve dim p = {}",
            p_plus.dim(),
            p_minus.dim(),
            p_basis.dim()
        )));
    }
    if p_plus.conjugated() != p_minus {
        return Err(Error::Structure(
            "coordinate conjugation does not map p+ onto p-".into(),
        ));
    }

    Ok(HermitianPair {
        spec: spec.clone(),
        g,
        k,
        k_basis,
        p_basis,
        z,
        z_in_k,
        lambda,
        p_plus,
        p_minus,
    })
}

impl HermitianPair {
    pub fn fingerprint(&self) -> String {
        self.spec.fingerprint()
    }

    /// λ as the integer weight of the isotropy character; integral by the
    /// lattice normalization of z.
    pub fn lambda_int(&self) -> i64 {
        self.lambda
            .to_i64()
            .expect("lambda is a positive integer by construction")
    }

    /// g-coordinates of an element of k given in k-basis coordinates.
    pub fn k_to_g_coords(&self, k_coords: &[GaussianRational]) -> Vec<GaussianRational> {
        self.k_basis.linear_combination(k_coords)
    }

    pub fn p_sign_basis(&self, plus: bool) -> &SubspaceBasis {
        if plus {
            &self.p_plus
        } else {
            &self.p_minus
        }
    }

    /// Matrix of ad(x) restricted to an ad-stable subspace of g, in the
    /// subspace's canonical basis.
    pub fn ad_restricted(&self, x: &LieElement, sub: &SubspaceBasis) -> Result<ExactMatrix> {
        sub.restrict_operator(&self.g.ad_matrix(x)?)
    }

    /// Curvature of the canonical invariant connection at the base point: the
    /// k-component of `[a, b]` for `a, b ∈ p`, expressed in the basis of `k`.
    /// The p-component of the bracket is verified to vanish exactly.
    pub fn curvature_at_base(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        for (label, v) in [("first", a), ("second", b)] {
            if v.algebra != self.g.name() {
                return Err(Error::Mismatch(format!(
                    "{label} argument belongs to '{}', expected '{}'",
                    v.algebra,
                    self.g.name()
                )));
            }
            if !self.p_basis.contains(&v.coords) {
                return Err(Error::Domain(format!(
                    "{label} argument is not in the complement p"
                )));
            }
        }
        let bracket = self.g.bracket(a, b)?;
        let k_dim = self.k_basis.dim();
        let p_dim = self.p_basis.dim();
        let combined = ExactMatrix::from_fn(self.g.dim(), k_dim + p_dim, |r, c| {
            if c < k_dim {
                self.k_basis.vector(c)[r].clone()
            } else {
                self.p_basis.vector(c - k_dim)[r].clone()
            }
        });
        let solution = LinearSolver::new(&combined)
            .solve(&bracket.coords)
            .ok_or_else(|| Error::Structure("bracket escapes k ⊕ p".into()))?;
        if solution[k_dim..].iter().any(|c| !c.is_zero()) {
            return Err(Error::Structure(
                "bracket of complement elements has a nonzero p-component".into(),
            ));
        }
        self.k.element(solution[..k_dim].to_vec())
    }

    /// Structural verification: every claim the construction relies on is
    /// re-checked from the stored data. Failures are report content.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let g = &self.g;
        let gram = g.killing_gram();

        let ortho = (|| -> Result<bool> {
            let mk = self
                .k_basis
                .to_matrix()
                .ok_or_else(|| Error::Structure("k basis is empty".into()))?;
            let mp = self
                .p_basis
                .to_matrix()
                .ok_or_else(|| Error::Structure("p basis is empty".into()))?;
            Ok(mk.mul(gram)?.mul(&mp.transpose())?.is_zero())
        })();
        report.push(
            "killing_orthogonality",
            matches!(ortho, Ok(true)),
            "B(k, p) = 0",
        );

        report.push(
            "killing_nondegenerate_on_g",
            gram.rank() == g.dim(),
            format!("rank {} of {}", gram.rank(), g.dim()),
        );

        report.push(
            "k_plus_p_spans_g",
            self.k_basis.dim() + self.p_basis.dim() == g.dim(),
            format!(
                "dim k = {}, dim p = {}, dim g = {}",
                self.k_basis.dim(),
                self.p_basis.dim(),
                g.dim()
            ),
        );

        let contained =
            |rows_a: &SubspaceBasis, rows_b: &SubspaceBasis, target: &SubspaceBasis| -> bool {
                rows_a.vectors().iter().all(|a| {
                    rows_b.vectors().iter().all(|b| {
                        let ea = g.element(a.clone()).expect("row length");
                        let eb = g.element(b.clone()).expect("row length");
                        let br = g.bracket(&ea, &eb).expect("same algebra");
                        target.contains(&br.coords)
                    })
                })
            };
        report.push(
            "bracket_kk_in_k",
            contained(&self.k_basis, &self.k_basis, &self.k_basis),
            "[k, k] in k",
        );
        report.push(
            "bracket_kp_in_p",
            contained(&self.k_basis, &self.p_basis, &self.p_basis),
            "[k, p] in p",
        );
        report.push(
            "bracket_pp_in_k",
            contained(&self.p_basis, &self.p_basis, &self.k_basis),
            "[p, p] in k",
        );

        report.push(
            "center_k_one_dimensional",
            self.k.center().dim() == 1,
            format!("dim = {}", self.k.center().dim()),
        );

        let minus_lambda_sq = -&(&self.lambda * &self.lambda);
        let ad_ok = (|| -> Result<bool> {
            let restricted = self.ad_restricted(&self.z, &self.p_basis)?;
            let sq = restricted.mul(&restricted)?;
            Ok(sq.as_scalar() == Some(GaussianRational::from_rational(minus_lambda_sq.clone())))
        })();
        report.push(
            "ad_z_squares_to_minus_lambda_sq",
            matches!(ad_ok, Ok(true)),
            format!("target scalar {minus_lambda_sq}"),
        );
        report.push(
            "lambda_positive",
            self.lambda.is_positive(),
            format!("lambda = {}", self.lambda),
        );

        let eigen_check = |basis: &SubspaceBasis, sign: i64| -> bool {
            let ad_z = match g.ad_matrix(&self.z) {
                Ok(m) => m,
                Err(_) => return false,
            };
            basis.vectors().iter().all(|v| {
                let image = ad_z.mul_vec(v).expect("length");
                let eig = GaussianRational::new(
                    Rational::zero(),
                    &self.lambda * &Rational::from_int(sign),
                );
                let scaled: Vec<GaussianRational> = v.iter().map(|c| c * &eig).collect();
                image == scaled
            })
        };
        report.push(
            "p_plus_is_eigenspace",
            eigen_check(&self.p_plus, 1) && self.p_plus.dim() == self.p_basis.dim() / 2,
            "ad(z) = +lambda·i on p+",
        );
        report.push(
            "p_minus_is_eigenspace",
            eigen_check(&self.p_minus, -1) && self.p_minus.dim() == self.p_basis.dim() / 2,
            "ad(z) = -lambda·i on p-",
        );

        let all_brackets_zero = |basis: &SubspaceBasis| -> bool {
            let vs = basis.vectors();
            for i in 0..vs.len() {
                for j in i..vs.len() {
                    let a = g.element(vs[i].clone()).expect("row length");
                    let b = g.element(vs[j].clone()).expect("row length");
                    let br = g.bracket(&a, &b).expect("same algebra");
                    if br.coords.iter().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
            true
        };
        report.push(
            "type_11_plus",
            all_brackets_zero(&self.p_plus),
            "[p+, p+] = 0",
        );
        report.push(
            "type_11_minus",
            all_brackets_zero(&self.p_minus),
            "[p-, p-] = 0",
        );
        report.push(
            "bracket_p_plus_p_minus_in_k",
            contained(&self.p_plus, &self.p_minus, &self.k_basis),
            "[p+, p-] in kC",
        );

        report.push(
            "conjugation_swaps_p_plus_minus",
            self.p_plus.conjugated() == self.p_minus,
            "conj(p+) = p-",
        );

        let expected = self.spec.complex_dim();
        report.push(
            "complex_dimension_formula",
            self.p_plus.dim() == expected && self.p_minus.dim() == expected,
            format!(
                "dim p+ = {}, dim p- = {}, formula gives {}",
                self.p_plus.dim(),
                self.p_minus.dim(),
                expected
            ),
        );

        report
    }
}
