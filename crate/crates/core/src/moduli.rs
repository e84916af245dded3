//! The bilinear compatibility maps on invariant tensors, verification of
//! candidate triples, equivalence under a given conjugator, and emission of
//! the quadratic moduli systems.
//!
//! Three maps are in play, all built from the bracket of the target algebra:
//! the wedge-valued squares on h⊗p+ and h⊗p− (integrability obstructions for
//! the holomorphic structure and the field), and a mixed map into the full
//! tensor square h⊗p⊗p with no wedge and no symmetrization (the compatibility
//! between a holomorphic structure and a field). For the Higgs kind the
//! second argument of the mixed map lives in h⊗p−; for the co-Higgs kind in
//! h⊗p+.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::{EtaSpec, TargetAlgebra};
use crate::gaussian::GaussianRational;
use crate::hss::HermitianPair;
use crate::invariant::{invariant_space, InvariantElement, InvariantSpace, Sign};
use crate::matrix::ExactMatrix;
use crate::report::Report;
use crate::system::{
    DuplicateNote, Monomial, QuadraticEquation, QuadraticSystem, SystemContext,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleKind {
    Higgs,
    #[serde(rename = "cohiggs")]
    CoHiggs,
}

impl TripleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TripleKind::Higgs => "higgs",
            TripleKind::CoHiggs => "cohiggs",
        }
    }

    /// Which half of the complexified complement carries the field.
    pub fn phi_sign(&self) -> Sign {
        match self {
            TripleKind::Higgs => Sign::Minus,
            TripleKind::CoHiggs => Sign::Plus,
        }
    }
}

/// A candidate datum (η, β, φ). β always lives in h⊗p+; φ in h⊗p+ for the
/// co-Higgs kind and h⊗p− for the Higgs kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuliTriple {
    pub kind: TripleKind,
    pub beta: InvariantElement,
    pub phi: InvariantElement,
}

impl ModuliTriple {
    pub fn new(kind: TripleKind, beta: InvariantElement, phi: InvariantElement) -> Result<Self> {
        if beta.sign != Sign::Plus {
            return Err(Error::Domain(
                "beta must live in the plus half of the complement".into(),
            ));
        }
        if phi.sign != kind.phi_sign() {
            return Err(Error::Domain(format!(
                "phi for kind '{}' must carry sign '{}'",
                kind.as_str(),
                kind.phi_sign().as_str()
            )));
        }
        if beta.context != phi.context {
            return Err(Error::Mismatch(
                "beta and phi reference different (pair, target, eta) contexts".into(),
            ));
        }
        Ok(ModuliTriple { kind, beta, phi })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WedgeSpace {
    /// h ⊗ Λ²p+
    WedgePlus,
    /// h ⊗ Λ²p−
    WedgeMinus,
    /// h ⊗ p_first ⊗ p_second, full tensor square
    Mixed { first: Sign, second: Sign },
}

/// A value in one of the three codomains. Wedge coordinates are indexed by
/// strictly increasing pairs (k < l); mixed coordinates by the full pair
/// grid. The h-index is always major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WedgeValue {
    pub space: WedgeSpace,
    pub dim_h: usize,
    pub dim_p_first: usize,
    pub dim_p_second: usize,
    pub coords: Vec<GaussianRational>,
}

impl WedgeValue {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GaussianRational::is_zero)
    }

    /// Position of h_m ⊗ (p_k ∧ p_l), k < l, in wedge coordinates.
    pub fn wedge_index(dim_p: usize, m: usize, k: usize, l: usize) -> usize {
        debug_assert!(k < l && l < dim_p);
        let pair_count = dim_p * (dim_p - 1) / 2;
        // pairs (k, l) with k < l in lex order
        let offset = k * dim_p - k * (k + 1) / 2 + (l - k - 1);
        m * pair_count + offset
    }

    /// Position of h_m ⊗ p_k ⊗ q_l in mixed coordinates.
    pub fn mixed_index(dim_p1: usize, dim_p2: usize, m: usize, k: usize, l: usize) -> usize {
        debug_assert!(k < dim_p1 && l < dim_p2);
        (m * dim_p1 + k) * dim_p2 + l
    }
}

fn check_wedge_args(
    h: &TargetAlgebra,
    a: &InvariantElement,
    b: &InvariantElement,
    sign: Sign,
) -> Result<()> {
    if a.sign != sign || b.sign != sign {
        return Err(Error::Domain(format!(
            "both arguments must carry sign '{}'",
            sign.as_str()
        )));
    }
    if a.context != b.context {
        return Err(Error::Mismatch(
            "arguments reference different (pair, target, eta) contexts".into(),
        ));
    }
    if a.dim_h != h.dim() || b.dim_h != h.dim() {
        return Err(Error::Shape(format!(
            "tensor h-dimension {} does not match '{}' of dimension {}",
            a.dim_h,
            h.name(),
            h.dim()
        )));
    }
    if a.dim_p != b.dim_p {
        return Err(Error::Shape("tensor p-dimensions differ".into()));
    }
    Ok(())
}

fn wedge_map(
    h: &TargetAlgebra,
    a: &InvariantElement,
    b: &InvariantElement,
    sign: Sign,
) -> Result<WedgeValue> {
    check_wedge_args(h, a, b, sign)?;
    let dim_h = h.dim();
    let dim_p = a.dim_p;
    let pair_count = dim_p * (dim_p - 1) / 2;
    let mut coords = vec![GaussianRational::zero(); dim_h * pair_count];
    for i in 0..dim_h {
        for j in 0..dim_h {
            let bracket = h.algebra.structure_constants(i, j);
            if bracket.iter().all(GaussianRational::is_zero) {
                continue;
            }
            for k in 0..dim_p {
                for l in (k + 1)..dim_p {
                    let factor = a.component(i, k) * b.component(j, l)
                        - a.component(i, l) * b.component(j, k);
                    if factor.is_zero() {
                        continue;
                    }
                    for (m, c) in bracket.iter().enumerate() {
                        if !c.is_zero() {
                            let idx = WedgeValue::wedge_index(dim_p, m, k, l);
                            coords[idx] += &(&factor * c);
                        }
                    }
                }
            }
        }
    }
    Ok(WedgeValue {
        space: match sign {
            Sign::Plus => WedgeSpace::WedgePlus,
            Sign::Minus => WedgeSpace::WedgeMinus,
        },
        dim_h,
        dim_p_first: dim_p,
        dim_p_second: dim_p,
        coords,
    })
}

/// Bilinear extension of (h₁⊗p, h₂⊗q) ↦ \[h₁,h₂\] ⊗ (p ∧ q) on h ⊗ p+.
pub fn m_plus(
    h: &TargetAlgebra,
    a: &InvariantElement,
    b: &InvariantElement,
) -> Result<WedgeValue> {
    wedge_map(h, a, b, Sign::Plus)
}

/// Mirror of [`m_plus`] on h ⊗ p−.
pub fn m_minus(
    h: &TargetAlgebra,
    a: &InvariantElement,
    b: &InvariantElement,
) -> Result<WedgeValue> {
    wedge_map(h, a, b, Sign::Minus)
}

/// Bilinear extension of (h₁⊗p, h₂⊗q) ↦ \[h₁,h₂\] ⊗ p ⊗ q with no wedge and
/// no symmetrization; the two arguments may carry different signs.
pub fn m_mixed(
    h: &TargetAlgebra,
    a: &InvariantElement,
    b: &InvariantElement,
) -> Result<WedgeValue> {
    if a.context != b.context {
        return Err(Error::Mismatch(
            "arguments reference different (pair, target, eta) contexts".into(),
        ));
    }
    if a.dim_h != h.dim() || b.dim_h != h.dim() {
        return Err(Error::Shape("tensor h-dimension mismatch".into()));
    }
    let dim_h = h.dim();
    let (p1, p2) = (a.dim_p, b.dim_p);
    let mut coords = vec![GaussianRational::zero(); dim_h * p1 * p2];
    for i in 0..dim_h {
        for j in 0..dim_h {
            let bracket = h.algebra.structure_constants(i, j);
            if bracket.iter().all(GaussianRational::is_zero) {
                continue;
            }
            for k in 0..p1 {
                let ak = a.component(i, k);
                if ak.is_zero() {
                    continue;
                }
                for l in 0..p2 {
                    let factor = ak * b.component(j, l);
                    if factor.is_zero() {
                        continue;
                    }
                    for (m, c) in bracket.iter().enumerate() {
                        if !c.is_zero() {
                            let idx = WedgeValue::mixed_index(p1, p2, m, k, l);
                            coords[idx] += &(&factor * c);
                        }
                    }
                }
            }
        }
    }
    Ok(WedgeValue {
        space: WedgeSpace::Mixed {
            first: a.sign,
            second: b.sign,
        },
        dim_h,
        dim_p_first: p1,
        dim_p_second: p2,
        coords,
    })
}

/// Integrability of an invariant almost-holomorphic structure: true iff the
/// wedge square of β vanishes exactly.
pub fn verify_holomorphic(h: &TargetAlgebra, beta: &InvariantElement) -> Result<bool> {
    Ok(m_plus(h, beta, beta)?.is_zero())
}

/// The three vanishing conditions a triple must satisfy, as a report.
pub fn verify_triple(h: &TargetAlgebra, t: &ModuliTriple) -> Result<Report> {
    let mut report = Report::new();
    let bb = m_plus(h, &t.beta, &t.beta)?;
    report.push("m_plus(beta,beta)=0", bb.is_zero(), "");
    match t.kind {
        TripleKind::CoHiggs => {
            let pp = m_plus(h, &t.phi, &t.phi)?;
            report.push("m_plus(phi,phi)=0", pp.is_zero(), "");
        }
        TripleKind::Higgs => {
            let pp = m_minus(h, &t.phi, &t.phi)?;
            report.push("m_minus(phi,phi)=0", pp.is_zero(), "");
        }
    }
    let mixed = m_mixed(h, &t.beta, &t.phi)?;
    report.push("m_mixed(beta,phi)=0", mixed.is_zero(), "");
    Ok(report)
}

/// The adjoint operator Ad(conj): h → h in basis coordinates. Requires a
/// matrix realization of h and an invertible conjugator.
pub fn ad_operator(h: &TargetAlgebra, conj: &ExactMatrix) -> Result<ExactMatrix> {
    let inv = conj.inverse().ok_or(Error::SingularConjugator)?;
    let dim = h.dim();
    let mut columns = Vec::with_capacity(dim);
    for i in 0..dim {
        let b = h
            .algebra
            .matrix_of(&h.algebra.basis_element(i))?;
        let image = conj.mul(&b)?.mul(&inv)?;
        columns.push(h.algebra.element_from_matrix(&image)?.coords);
    }
    Ok(ExactMatrix::from_fn(dim, dim, |r, c| columns[c][r].clone()))
}

/// η conjugated by the given element: each image m becomes conj⁻¹·m·conj.
pub fn conjugate_eta(
    h: &TargetAlgebra,
    conj: &ExactMatrix,
    eta: &EtaSpec,
) -> Result<EtaSpec> {
    let inv = conj.inverse().ok_or(Error::SingularConjugator)?;
    let mut images = Vec::with_capacity(eta.images.len());
    for img in &eta.images {
        let m = h.algebra.matrix_of(&h.algebra.element(img.clone())?)?;
        let moved = inv.mul(&m)?.mul(conj)?;
        images.push(h.algebra.element_from_matrix(&moved)?.coords);
    }
    Ok(EtaSpec::new(images))
}

/// (Ad(conj) ⊗ Id) applied to a tensor, rebound to the given context string.
pub fn transport_element(
    h: &TargetAlgebra,
    conj: &ExactMatrix,
    elt: &InvariantElement,
    new_context: String,
) -> Result<InvariantElement> {
    let ad = ad_operator(h, conj)?;
    let mut coords = vec![GaussianRational::zero(); elt.coords.len()];
    for i_new in 0..elt.dim_h {
        for i_old in 0..elt.dim_h {
            let a = ad.at(i_new, i_old);
            if a.is_zero() {
                continue;
            }
            for k in 0..elt.dim_p {
                let v = elt.component(i_old, k);
                if !v.is_zero() {
                    coords[i_new * elt.dim_p + k] += &(a * v);
                }
            }
        }
    }
    Ok(InvariantElement {
        sign: elt.sign,
        dim_h: elt.dim_h,
        dim_p: elt.dim_p,
        coords,
        context: new_context,
    })
}

/// Transports a triple along a conjugator: η ↦ conj⁻¹·η·conj and both tensor
/// components by Ad(conj) ⊗ Id. The result satisfies
/// [`equivalent_under`]`(conj, original, transported)`.
pub fn transport_triple(
    pair: &HermitianPair,
    h: &TargetAlgebra,
    conj: &ExactMatrix,
    eta: &EtaSpec,
    t: &ModuliTriple,
) -> Result<(EtaSpec, ModuliTriple)> {
    let eta2 = conjugate_eta(h, conj, eta)?;
    let ctx = eta2.fingerprint(pair, h);
    let beta = transport_element(h, conj, &t.beta, ctx.clone())?;
    let phi = transport_element(h, conj, &t.phi, ctx)?;
    Ok((
        eta2,
        ModuliTriple {
            kind: t.kind,
            beta,
            phi,
        },
    ))
}

/// Decides the equivalence relation for a *given* conjugator: true iff
/// dη₂(x) = conj⁻¹·dη₁(x)·conj on every k-basis element, and
/// β₂ = (Ad(conj)⊗Id)β₁, and φ₂ = (Ad(conj)⊗Id)φ₁, all exactly.
pub fn equivalent_under(
    pair: &HermitianPair,
    h: &TargetAlgebra,
    conj: &ExactMatrix,
    eta1: &EtaSpec,
    t1: &ModuliTriple,
    eta2: &EtaSpec,
    t2: &ModuliTriple,
) -> Result<bool> {
    eta1.check_against(pair, h)?;
    eta2.check_against(pair, h)?;
    if t1.kind != t2.kind {
        return Err(Error::Mismatch("triples have different kinds".into()));
    }
    for (label, t, eta) in [("first", t1, eta1), ("second", t2, eta2)] {
        let expect = eta.fingerprint(pair, h);
        if t.beta.context != expect {
            return Err(Error::Mismatch(format!(
                "{label} triple does not reference its supplied eta"
            )));
        }
    }
    let moved = conjugate_eta(h, conj, eta1)?;
    if moved.images != eta2.images {
        return Ok(false);
    }
    let ctx2 = eta2.fingerprint(pair, h);
    let beta_moved = transport_element(h, conj, &t1.beta, ctx2.clone())?;
    if beta_moved.coords != t2.beta.coords {
        return Ok(false);
    }
    let phi_moved = transport_element(h, conj, &t1.phi, ctx2)?;
    Ok(phi_moved.coords == t2.phi.coords)
}

/// Parametric search for a conjugator relating two triples: the constraints
/// are linear in the conjugator, so its candidates form a kernel; the search
/// scans small rational combinations of the kernel basis for an invertible
/// one. Intended for small targets (gl(2)); returns `None` when no candidate
/// in the scanned grid is invertible.
pub fn find_conjugator(
    pair: &HermitianPair,
    h: &TargetAlgebra,
    eta1: &EtaSpec,
    t1: &ModuliTriple,
    eta2: &EtaSpec,
    t2: &ModuliTriple,
) -> Result<Option<ExactMatrix>> {
    eta1.check_against(pair, h)?;
    eta2.check_against(pair, h)?;
    let n = h
        .algebra
        .ambient_size()
        .ok_or_else(|| Error::NoRealization(h.name().to_string()))?;

    // Each condition "X·A = B·X" is one n²×n² linear block on vec(X).
    let mut blocks: Vec<ExactMatrix> = Vec::new();
    let mut push_sylvester = |a: &ExactMatrix, b: &ExactMatrix| {
        let block = ExactMatrix::from_fn(n * n, n * n, |row, col| {
            let (r, c) = (row / n, row % n);
            let (p, q) = (col / n, col % n);
            // entry of X·A − B·X at (r, c), coefficient of X[p][q]
            let mut v = GaussianRational::zero();
            if p == r {
                v += a.at(q, c);
            }
            if q == c {
                v -= &(b.at(r, p).clone());
            }
            v
        });
        blocks.push(block);
    };

    // η-compatibility: X·dη₂(x_a) = dη₁(x_a)·X.
    for a in 0..pair.k_basis.dim() {
        let m1 = h.algebra.matrix_of(&h.algebra.element(eta1.images[a].clone())?)?;
        let m2 = h.algebra.matrix_of(&h.algebra.element(eta2.images[a].clone())?)?;
        push_sylvester(&m2, &m1);
    }
    // Tensor transport: for each p-index, X·B1_k = B2_k·X.
    let mut push_component = |e1: &InvariantElement, e2: &InvariantElement| -> Result<()> {
        if e1.dim_p != e2.dim_p {
            return Err(Error::Shape("tensor p-dimensions differ".into()));
        }
        for k in 0..e1.dim_p {
            let b1 = h.algebra.matrix_of(&h.algebra.element(e1.h_slice(k))?)?;
            let b2 = h.algebra.matrix_of(&h.algebra.element(e2.h_slice(k))?)?;
            push_sylvester(&b1, &b2);
        }
        Ok(())
    };
    push_component(&t1.beta, &t2.beta)?;
    push_component(&t1.phi, &t2.phi)?;

    let refs: Vec<&ExactMatrix> = blocks.iter().collect();
    let kernel = ExactMatrix::vstack(&refs)?.kernel_basis();
    if kernel.is_empty() {
        return Ok(None);
    }

    // Scan small rational combinations for an invertible representative.
    let weights: Vec<GaussianRational> = vec![
        GaussianRational::zero(),
        GaussianRational::one(),
        -GaussianRational::one(),
        GaussianRational::from_int(2),
        GaussianRational::i(),
    ];
    let dim = kernel.dim();
    let combos = weights.len().pow(dim.min(4) as u32);
    for mask in 0..combos {
        let mut idx = mask;
        let mut coeffs = vec![GaussianRational::zero(); dim];
        for c in coeffs.iter_mut().take(dim.min(4)) {
            *c = weights[idx % weights.len()].clone();
            idx /= weights.len();
        }
        if coeffs.iter().all(GaussianRational::is_zero) {
            continue;
        }
        let vec_x = kernel.linear_combination(&coeffs);
        let candidate = ExactMatrix::from_fn(n, n, |r, c| vec_x[r * n + c].clone());
        if candidate.inverse().is_some() {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Expands the vanishing conditions on coordinates of the invariant spaces
/// into explicit quadratic equations, one per nonzero codomain coordinate.
/// Equations are normalized to a monic leading coefficient; identically-zero
/// coordinates are pruned but logged, and structurally equal equations are
/// merged with a duplicate note.
pub fn emit_system(
    pair: &HermitianPair,
    h: &TargetAlgebra,
    eta: &EtaSpec,
    kind: TripleKind,
) -> Result<QuadraticSystem> {
    eta.check_against(pair, h)?;
    let beta_space = invariant_space(pair, h, eta, Sign::Plus)?;
    let phi_space = invariant_space(pair, h, eta, kind.phi_sign())?;

    let x_names: Vec<String> = (1..=beta_space.dim()).map(|i| format!("x{i}")).collect();
    let y_names: Vec<String> = (1..=phi_space.dim()).map(|i| format!("y{i}")).collect();
    let mut variables = x_names.clone();
    variables.extend(y_names.iter().cloned());

    let mut pending: Vec<(String, Vec<Monomial>)> = Vec::new();

    // Quadratic map on one space: Σ v_a v_b M(B_a, B_b).
    let mut quadratic_source = |space: &InvariantSpace,
                                names: &[String],
                                map_name: &str,
                                map: &dyn Fn(&InvariantElement, &InvariantElement) -> Result<WedgeValue>|
     -> Result<()> {
        let dim = space.dim();
        if dim == 0 {
            return Ok(());
        }
        let basis: Vec<InvariantElement> = (0..dim)
            .map(|a| {
                let mut coords = vec![GaussianRational::zero(); dim];
                coords[a] = GaussianRational::one();
                space.element(&coords)
            })
            .collect::<Result<_>>()?;
        let mut values: Vec<Vec<(usize, usize, GaussianRational)>> = Vec::new();
        let mut codomain_len = 0usize;
        for a in 0..dim {
            for b in a..dim {
                let mut w = map(&basis[a], &basis[b])?;
                if a != b {
                    let w_rev = map(&basis[b], &basis[a])?;
                    for (c, v) in w.coords.iter_mut().zip(&w_rev.coords) {
                        *c += v;
                    }
                }
                codomain_len = w.coords.len();
                values.push(
                    w.coords
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(idx, v)| (a * dim + b, idx, v.clone()))
                        .collect(),
                );
            }
        }
        for coord in 0..codomain_len {
            let mut monomials = Vec::new();
            for entry in values.iter().flatten() {
                let (pair_code, idx, v) = entry;
                if *idx != coord {
                    continue;
                }
                let (a, b) = (pair_code / dim, pair_code % dim);
                monomials.push(Monomial {
                    vars: vec![names[a].clone(), names[b].clone()],
                    coeff: v.clone(),
                });
            }
            pending.push((format!("{map_name}@coord({coord})"), monomials));
        }
        Ok(())
    };

    quadratic_source(&beta_space, &x_names, "m_plus(beta,beta)", &|a, b| {
        m_plus(h, a, b)
    })?;
    match kind {
        TripleKind::CoHiggs => {
            quadratic_source(&phi_space, &y_names, "m_plus(phi,phi)", &|a, b| {
                m_plus(h, a, b)
            })?;
        }
        TripleKind::Higgs => {
            quadratic_source(&phi_space, &y_names, "m_minus(phi,phi)", &|a, b| {
                m_minus(h, a, b)
            })?;
        }
    }

    // Mixed map: monomial x_a·y_b with coefficient m_mixed(B_a, Φ_b).
    if beta_space.dim() > 0 && phi_space.dim() > 0 {
        let beta_basis: Vec<InvariantElement> = (0..beta_space.dim())
            .map(|a| {
                let mut coords = vec![GaussianRational::zero(); beta_space.dim()];
                coords[a] = GaussianRational::one();
                beta_space.element(&coords)
            })
            .collect::<Result<_>>()?;
        let phi_basis: Vec<InvariantElement> = (0..phi_space.dim())
            .map(|b| {
                let mut coords = vec![GaussianRational::zero(); phi_space.dim()];
                coords[b] = GaussianRational::one();
                phi_space.element(&coords)
            })
            .collect::<Result<_>>()?;
        let mut codomain_len = 0usize;
        let mut values: Vec<(usize, usize, Vec<GaussianRational>)> = Vec::new();
        for (a, ba) in beta_basis.iter().enumerate() {
            for (b, pb) in phi_basis.iter().enumerate() {
                let w = m_mixed(h, ba, pb)?;
                codomain_len = w.coords.len();
                values.push((a, b, w.coords));
            }
        }
        for coord in 0..codomain_len {
            let mut monomials = Vec::new();
            for (a, b, coords) in &values {
                if !coords[coord].is_zero() {
                    monomials.push(Monomial {
                        vars: vec![x_names[*a].clone(), y_names[*b].clone()],
                        coeff: coords[coord].clone(),
                    });
                }
            }
            pending.push((format!("m_mixed(beta,phi)@coord({coord})"), monomials));
        }
    }

    // Normalize, prune, dedupe.
    let mut equations: Vec<QuadraticEquation> = Vec::new();
    let mut identically_zero = Vec::new();
    let mut duplicates = Vec::new();
    for (provenance, monomials) in pending {
        let eq = QuadraticEquation {
            monomials,
            provenance,
        }
        .normalized(&variables);
        if eq.monomials.is_empty() {
            identically_zero.push(eq.provenance);
            continue;
        }
        if let Some(pos) = equations.iter().position(|e| e.same_form(&eq)) {
            duplicates.push(DuplicateNote {
                provenance: eq.provenance,
                equal_to: pos,
            });
            continue;
        }
        equations.push(eq);
    }

    Ok(QuadraticSystem {
        variables,
        equations,
        identically_zero,
        duplicates,
        context: SystemContext {
            pair: pair.fingerprint(),
            target: h.fingerprint(),
            eta: eta.fingerprint(pair, h),
            kind,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::verify_eta;
    use crate::hss::{build_pair, PairSpec};

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, 1, im, 1)
    }

    struct Cp1 {
        pair: HermitianPair,
        h: TargetAlgebra,
        eta: EtaSpec,
        plus: InvariantSpace,
        minus: InvariantSpace,
    }

    fn cp1() -> Cp1 {
        let pair = build_pair(&PairSpec::grassmannian(1, 1)).unwrap();
        let h = TargetAlgebra::gl(2).unwrap();
        let eta = EtaSpec::new(vec![vec![g(0, 1), g(0, 0), g(0, 0), g(0, -1)]]);
        assert!(verify_eta(&pair, &h, &eta).unwrap().passed());
        let plus = invariant_space(&pair, &h, &eta, Sign::Plus).unwrap();
        let minus = invariant_space(&pair, &h, &eta, Sign::Minus).unwrap();
        Cp1 {
            pair,
            h,
            eta,
            plus,
            minus,
        }
    }

    #[test]
    fn m_plus_vanishes_on_a_line() {
        let c = cp1();
        let beta = c.plus.element(&[g(3, 1)]).unwrap();
        let w = m_plus(&c.h, &beta, &beta).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.coords.len(), 0, "wedge of a 1-dim space is trivial");
        assert!(verify_holomorphic(&c.h, &beta).unwrap());
    }

    #[test]
    fn m_mixed_cp1_higgs_pairing() {
        let c = cp1();
        // beta = E21 ⊗ p+, phi = E12 ⊗ p-.
        let beta = c.plus.element(&[g(1, 0)]).unwrap();
        let phi = c.minus.element(&[g(1, 0)]).unwrap();
        let w = m_mixed(&c.h, &beta, &phi).unwrap();
        // [E21, E12] = E22 − E11: coordinates at h-index 0 (E11) and 3 (E22).
        assert!(!w.is_zero());
        assert_eq!(w.coords.len(), 4);
        assert_eq!(w.coords[0], g(-1, 0));
        assert_eq!(w.coords[3], g(1, 0));
        assert_eq!(w.coords[1], g(0, 0));
        assert_eq!(w.coords[2], g(0, 0));

        // Co-Higgs pairing: [E21, E21] = 0.
        let phi_plus = c.plus.element(&[g(3, 0)]).unwrap();
        let w2 = m_mixed(&c.h, &beta, &phi_plus).unwrap();
        assert!(w2.is_zero());

        // Bilinearity: zero argument kills the value.
        let zero = c.plus.element(&[g(0, 0)]).unwrap();
        assert!(m_mixed(&c.h, &zero, &phi).unwrap().is_zero());
    }

    #[test]
    fn verify_triple_cp1_cases() {
        let c = cp1();
        let beta = c.plus.element(&[g(1, 0)]).unwrap();
        let phi_minus = c.minus.element(&[g(1, 0)]).unwrap();
        let zero_beta = c.plus.element(&[g(0, 0)]).unwrap();

        // Higgs with both nonzero: the mixed term blocks it.
        let t = ModuliTriple::new(TripleKind::Higgs, beta.clone(), phi_minus.clone()).unwrap();
        let report = verify_triple(&c.h, &t).unwrap();
        assert!(!report.passed());
        assert!(report.failures().any(|x| x.name == "m_mixed(beta,phi)=0"));

        // Higgs with beta = 0 passes.
        let t0 = ModuliTriple::new(TripleKind::Higgs, zero_beta, phi_minus).unwrap();
        assert!(verify_triple(&c.h, &t0).unwrap().passed());

        // Co-Higgs with phi parallel to beta passes.
        let phi_plus = c.plus.element(&[g(3, 0)]).unwrap();
        let tc = ModuliTriple::new(TripleKind::CoHiggs, beta, phi_plus).unwrap();
        assert!(verify_triple(&c.h, &tc).unwrap().passed());
    }

    #[test]
    fn triple_constructor_enforces_signs_and_context() {
        let c = cp1();
        let beta = c.plus.element(&[g(1, 0)]).unwrap();
        let phi_plus = c.plus.element(&[g(1, 0)]).unwrap();
        let phi_minus = c.minus.element(&[g(1, 0)]).unwrap();
        assert!(ModuliTriple::new(TripleKind::Higgs, beta.clone(), phi_plus).is_err());
        assert!(ModuliTriple::new(TripleKind::CoHiggs, beta.clone(), phi_minus.clone()).is_err());

        let other_eta = EtaSpec::zero(&c.pair, &c.h);
        let other_space = invariant_space(&c.pair, &c.h, &other_eta, Sign::Minus).unwrap();
        assert_eq!(other_space.dim(), 0);
        let foreign = InvariantElement {
            sign: Sign::Minus,
            dim_h: 4,
            dim_p: 1,
            coords: vec![g(0, 0); 4],
            context: other_space.context,
        };
        assert!(matches!(
            ModuliTriple::new(TripleKind::Higgs, beta, foreign),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn equivalence_under_identity_and_diagonal() {
        let c = cp1();
        let beta = c.plus.element(&[g(1, 0)]).unwrap();
        let phi = c.minus.element(&[g(1, 0)]).unwrap();
        let t = ModuliTriple::new(TripleKind::Higgs, beta, phi).unwrap();

        let id = ExactMatrix::identity(2);
        assert!(equivalent_under(&c.pair, &c.h, &id, &c.eta, &t, &c.eta, &t).unwrap());

        // h = diag(1, 2): η is fixed, β scales by 2 (Ad on E21), φ by 1/2.
        let mut d = ExactMatrix::identity(2);
        d.set(1, 1, g(2, 0));
        let (eta2, t2) = transport_triple(&c.pair, &c.h, &d, &c.eta, &t).unwrap();
        assert_eq!(eta2.images, c.eta.images);
        assert_eq!(t2.beta.coords[2], g(2, 0));
        assert_eq!(
            t2.phi.coords[1],
            GaussianRational::from_parts(1, 2, 0, 1)
        );
        assert!(equivalent_under(&c.pair, &c.h, &d, &c.eta, &t, &eta2, &t2).unwrap());

        // Tampering breaks it.
        let mut t3 = t2.clone();
        t3.phi.coords = t3.phi.coords.iter().map(|v| -v).collect();
        assert!(!equivalent_under(&c.pair, &c.h, &d, &c.eta, &t, &eta2, &t3).unwrap());

        // Singular conjugator is rejected.
        let zero = ExactMatrix::zeros(2, 2);
        assert!(matches!(
            equivalent_under(&c.pair, &c.h, &zero, &c.eta, &t, &eta2, &t2),
            Err(Error::SingularConjugator)
        ));
    }

    #[test]
    fn find_conjugator_recovers_diagonal_transport() {
        let c = cp1();
        let beta = c.plus.element(&[g(1, 0)]).unwrap();
        let phi = c.minus.element(&[g(1, 0)]).unwrap();
        let t = ModuliTriple::new(TripleKind::Higgs, beta, phi).unwrap();
        let mut d = ExactMatrix::identity(2);
        d.set(1, 1, g(3, 0));
        let (eta2, t2) = transport_triple(&c.pair, &c.h, &d, &c.eta, &t).unwrap();
        let found = find_conjugator(&c.pair, &c.h, &c.eta, &t, &eta2, &t2)
            .unwrap()
            .expect("a conjugator exists");
        assert!(equivalent_under(&c.pair, &c.h, &found, &c.eta, &t, &eta2, &t2).unwrap());
    }

    #[test]
    fn emit_cp1_higgs_system_is_x1_y1() {
        let c = cp1();
        let sys = emit_system(&c.pair, &c.h, &c.eta, TripleKind::Higgs).unwrap();
        assert_eq!(sys.variables, vec!["x1", "y1"]);
        assert_eq!(sys.equations.len(), 1);
        let eq = &sys.equations[0];
        assert_eq!(eq.monomials.len(), 1);
        assert_eq!(eq.monomials[0].vars, vec!["x1", "y1"]);
        assert_eq!(eq.monomials[0].coeff, g(1, 0));
        // The duplicate codomain coordinate was merged, not dropped silently.
        assert_eq!(sys.duplicates.len(), 1);
        assert_eq!(sys.duplicates[0].equal_to, 0);
    }

    #[test]
    fn emit_cp1_cohiggs_system_is_empty() {
        let c = cp1();
        let sys = emit_system(&c.pair, &c.h, &c.eta, TripleKind::CoHiggs).unwrap();
        assert_eq!(sys.variables, vec!["x1", "y1"]);
        assert!(sys.equations.is_empty());
        // [E21, E21] = 0 prunes all four mixed coordinates.
        assert_eq!(sys.identically_zero.len(), 4);
    }

    #[test]
    fn emit_with_no_invariants_is_the_empty_system() {
        let c = cp1();
        let eta = EtaSpec::zero(&c.pair, &c.h);
        let sys = emit_system(&c.pair, &c.h, &eta, TripleKind::Higgs).unwrap();
        assert!(sys.variables.is_empty());
        assert!(sys.equations.is_empty());
    }
}
