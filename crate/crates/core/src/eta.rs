//! Target algebras and homomorphism data.
//!
//! A bundle datum enters as the linear map dη: k → h, given by one image
//! vector per canonical k-basis element. `verify_eta` checks that dη respects
//! brackets and that the center generator z acts on h with spectrum in i·Z;
//! `decompose_target` then splits h into the integer weight spaces of
//! ad(dη(z)), the grading every downstream invariant computation keys on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::hss::{HermitianPair, PairSpec};
use crate::lie::{AlgebraSpec, LieElement, MatrixLieAlgebra};
use crate::matrix::{ExactMatrix, SubspaceBasis};
use crate::report::Report;
use crate::spectrum::{imaginary_rational_spectrum, integer_weight_eigenspaces};
use crate::util::fingerprint_json;

/// The complex Lie algebra h = Lie(H).
#[derive(Clone, Debug, PartialEq)]
pub struct TargetAlgebra {
    pub algebra: MatrixLieAlgebra,
}

impl TargetAlgebra {
    /// gl(n) with the elementary-matrix basis E_jk in row-major order.
    pub fn gl(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("gl(n) needs n >= 1".into()));
        }
        let mut basis = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let mut m = ExactMatrix::zeros(n, n);
                m.set(j, k, GaussianRational::one());
                basis.push(m);
            }
        }
        Ok(TargetAlgebra {
            algebra: MatrixLieAlgebra::from_basis(format!("gl({n})"), n, basis)?,
        })
    }

    /// sl(n): the diagonal differences E_jj − E_{j+1,j+1} first, then the
    /// off-diagonal E_jk in row-major order.
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter("sl(n) needs n >= 2".into()));
        }
        let mut basis = Vec::with_capacity(n * n - 1);
        for j in 0..(n - 1) {
            let mut m = ExactMatrix::zeros(n, n);
            m.set(j, j, GaussianRational::one());
            m.set(j + 1, j + 1, -GaussianRational::one());
            basis.push(m);
        }
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    continue;
                }
                let mut m = ExactMatrix::zeros(n, n);
                m.set(j, k, GaussianRational::one());
                basis.push(m);
            }
        }
        Ok(TargetAlgebra {
            algebra: MatrixLieAlgebra::from_basis(format!("sl({n})"), n, basis)?,
        })
    }

    /// Fully verified ingestion of a user-supplied algebra.
    pub fn custom(spec: &AlgebraSpec) -> Result<Self> {
        Ok(TargetAlgebra {
            algebra: MatrixLieAlgebra::from_spec(spec)?,
        })
    }

    pub fn from_target_spec(spec: &TargetSpec) -> Result<Self> {
        match spec {
            TargetSpec::Builtin { builtin, n } => match builtin.as_str() {
                "gl" => TargetAlgebra::gl(*n),
                "sl" => TargetAlgebra::sl(*n),
                other => Err(Error::Parameter(format!(
                    "unknown builtin target '{other}' (expected 'gl' or 'sl')"
                ))),
            },
            TargetSpec::Custom(spec) => TargetAlgebra::custom(spec),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    pub fn fingerprint(&self) -> String {
        self.algebra.fingerprint()
    }
}

/// Wire form of a target algebra: a builtin constructor or a full spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetSpec {
    Builtin { builtin: String, n: usize },
    Custom(AlgebraSpec),
}

/// Homomorphism data: one image in h per canonical k-basis vector. The pair
/// and target fields are optional context used by file-based workflows; when
/// present they must match the pair and target actually supplied.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EtaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetSpec>,
    pub images: Vec<Vec<GaussianRational>>,
}

impl EtaSpec {
    pub fn new(images: Vec<Vec<GaussianRational>>) -> Self {
        EtaSpec {
            pair: None,
            target: None,
            images,
        }
    }

    /// The trivial homomorphism into the given target.
    pub fn zero(pair: &HermitianPair, h: &TargetAlgebra) -> Self {
        EtaSpec::new(vec![
            vec![GaussianRational::zero(); h.dim()];
            pair.k_basis.dim()
        ])
    }

    /// The defining embedding k ⊂ g ⊂ gl(n), padded into the top-left block,
    /// for gl targets with n at least the ambient size of g. In the
    /// elementary-matrix basis of gl(n) the image coordinates are just the
    /// padded matrix entries.
    pub fn inclusion(pair: &HermitianPair, n: usize) -> Result<Self> {
        let ambient = pair
            .g
            .ambient_size()
            .ok_or_else(|| Error::NoRealization(pair.g.name().to_string()))?;
        if n < ambient {
            return Err(Error::Parameter(format!(
                "inclusion needs gl(n) with n >= {ambient}, got n = {n}"
            )));
        }
        let mut images = Vec::with_capacity(pair.k_basis.dim());
        for m in pair.k.basis_matrices().expect("catalog pairs are realized") {
            let mut padded = ExactMatrix::zeros(n, n);
            for r in 0..ambient {
                for c in 0..ambient {
                    padded.set(r, c, m.at(r, c).clone());
                }
            }
            images.push(padded.vectorize());
        }
        Ok(EtaSpec::new(images))
    }

    pub fn fingerprint(&self, pair: &HermitianPair, h: &TargetAlgebra) -> String {
        fingerprint_json("eta", &(pair.fingerprint(), h.fingerprint(), &self.images))
    }

    /// Shape checks plus consistency with any context recorded in the data.
    pub fn check_against(&self, pair: &HermitianPair, h: &TargetAlgebra) -> Result<()> {
        if let Some(p) = &self.pair {
            if p != &pair.spec {
                return Err(Error::Mismatch(format!(
                    "eta spec was written for pair {:?}, supplied {:?}",
                    p, pair.spec
                )));
            }
        }
        if let Some(t) = &self.target {
            let named = TargetAlgebra::from_target_spec(t)?;
            if named.fingerprint() != h.fingerprint() {
                return Err(Error::Mismatch(format!(
                    "eta spec was written for target '{}', supplied '{}'",
                    named.name(),
                    h.name()
                )));
            }
        }
        if self.images.len() != pair.k_basis.dim() {
            return Err(Error::Shape(format!(
                "eta has {} images but k has dimension {}",
                self.images.len(),
                pair.k_basis.dim()
            )));
        }
        for (a, img) in self.images.iter().enumerate() {
            if img.len() != h.dim() {
                return Err(Error::Shape(format!(
                    "image {a} has {} coordinates but '{}' has dimension {}",
                    img.len(),
                    h.name(),
                    h.dim()
                )));
            }
        }
        Ok(())
    }

    /// dη applied to an element of k given in k-basis coordinates.
    pub fn apply(&self, h: &TargetAlgebra, k_coords: &[GaussianRational]) -> LieElement {
        let mut out = vec![GaussianRational::zero(); h.dim()];
        for (c, img) in k_coords.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            for (j, v) in img.iter().enumerate() {
                if !v.is_zero() {
                    out[j] += &(c * v);
                }
            }
        }
        h.algebra
            .element(out)
            .expect("image length was checked against dim h")
    }

    /// dη(z) for the normalized center generator of the pair.
    pub fn image_of_z(&self, pair: &HermitianPair, h: &TargetAlgebra) -> LieElement {
        self.apply(h, &pair.z_in_k)
    }
}

/// Checks that dη preserves brackets on all k-basis pairs and that ad(dη(z))
/// has spectrum in i·Z. A passing report is the precondition for every
/// downstream operation on this η.
pub fn verify_eta(pair: &HermitianPair, h: &TargetAlgebra, eta: &EtaSpec) -> Result<Report> {
    eta.check_against(pair, h)?;
    let mut report = Report::new();
    let k = &pair.k;

    let mut bracket_failures = Vec::new();
    for a in 0..k.dim() {
        for b in (a + 1)..k.dim() {
            let kb = k
                .bracket(&k.basis_element(a), &k.basis_element(b))
                .expect("basis elements are well formed");
            let lhs = eta.apply(h, &kb.coords);
            let img_a = h.algebra.element(eta.images[a].clone())?;
            let img_b = h.algebra.element(eta.images[b].clone())?;
            let rhs = h.algebra.bracket(&img_a, &img_b)?;
            if lhs.coords != rhs.coords {
                bracket_failures.push(format!("({a},{b})"));
            }
        }
    }
    report.push(
        "bracket_preservation",
        bracket_failures.is_empty(),
        if bracket_failures.is_empty() {
            format!(
                "all {} basis pairs",
                k.dim() * k.dim().saturating_sub(1) / 2
            )
        } else {
            format!("failed at basis pairs {}", bracket_failures.join(", "))
        },
    );

    let d_eta_z = eta.image_of_z(pair, h);
    let ad_z = h.algebra.ad_matrix(&d_eta_z)?;
    let integral = integer_weight_eigenspaces(&ad_z);
    report.push(
        "zk_integrality",
        integral.is_ok(),
        match &integral {
            Ok(spaces) => format!("ad(dη(z)) weights {:?}", spaces.keys().collect::<Vec<_>>()),
            Err(e) => e.to_string(),
        },
    );

    // Advisory: the ad-level check cannot see central components of dη(z).
    // When h is realized, inspect the matrix-level spectrum and flag (not
    // reject) anything the lattice cannot certify.
    if h.algebra.is_realized() {
        let z_matrix = h.algebra.matrix_of(&d_eta_z)?;
        match imaginary_rational_spectrum(&z_matrix) {
            Ok(spectrum) => {
                let non_integral: Vec<String> = spectrum
                    .iter()
                    .filter(|(r, _)| !r.is_integer())
                    .map(|(r, _)| format!("{r}·i"))
                    .collect();
                if !non_integral.is_empty() {
                    report.note(format!(
                        "matrix-level spectrum of dη(z) contains {}; the central component \
                         is not certified by the ad-level lattice and a global homomorphism \
                         is a user obligation",
                        non_integral.join(", ")
                    ));
                }
            }
            Err(e) => {
                report.note(format!(
                    "matrix-level spectrum of dη(z) could not be certified: {e}"
                ));
            }
        }
    }

    Ok(report)
}

/// The isotypical decomposition of h under the action of the isotropy center
/// through η: integer weight k labels the i·k eigenspace of ad(dη(z)).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZkDecomposition {
    pub weights: Vec<i64>,
    pub components: BTreeMap<i64, SubspaceBasis>,
    pub eta: String,
}

impl ZkDecomposition {
    pub fn component(&self, weight: i64) -> Option<&SubspaceBasis> {
        self.components.get(&weight)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(SubspaceBasis::dim).sum()
    }

    /// True iff `v` (coordinates in the h basis) lies in the given weight
    /// component; a missing component contains only zero.
    pub fn lies_in_weight(&self, weight: i64, v: &[GaussianRational]) -> bool {
        match self.component(weight) {
            Some(space) => space.contains(v),
            None => v.iter().all(GaussianRational::is_zero),
        }
    }
}

/// Eigenspace decomposition of h under ad(dη(z)). Component dimensions sum to
/// dim h; the weight-0 component always contains dη(z) itself.
pub fn decompose_target(
    pair: &HermitianPair,
    h: &TargetAlgebra,
    eta: &EtaSpec,
) -> Result<ZkDecomposition> {
    eta.check_against(pair, h)?;
    let d_eta_z = eta.image_of_z(pair, h);
    let ad_z = h.algebra.ad_matrix(&d_eta_z)?;
    let components = integer_weight_eigenspaces(&ad_z).map_err(|e| match e {
        Error::NonIntegralWeight(msg) => Error::NonIntegralWeight(msg),
        other => Error::NonIntegralWeight(format!(
            "ad(dη(z)) does not decompose into integer weight spaces: {other}"
        )),
    })?;
    let decomposition = ZkDecomposition {
        weights: components.keys().copied().collect(),
        components,
        eta: eta.fingerprint(pair, h),
    };
    if decomposition.total_dim() != h.dim() {
        return Err(Error::Structure(format!(
            "weight components span {} of dim {}",
            decomposition.total_dim(),
            h.dim()
        )));
    }
    if !decomposition.lies_in_weight(0, &d_eta_z.coords) {
        return Err(Error::Structure(
            "dη(z) escaped the weight-0 component".into(),
        ));
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hss::build_pair;
    use crate::rational::Rational;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, 1, im, 1)
    }

    fn cp1_gl2_standard() -> (HermitianPair, TargetAlgebra, EtaSpec) {
        let pair = build_pair(&PairSpec::grassmannian(1, 1)).unwrap();
        let h = TargetAlgebra::gl(2).unwrap();
        // dη(H0) = diag(i, -i) in the basis (E11, E12, E21, E22).
        let eta = EtaSpec::new(vec![vec![g(0, 1), g(0, 0), g(0, 0), g(0, -1)]]);
        (pair, h, eta)
    }

    #[test]
    fn cp1_standard_eta_verifies() {
        let (pair, h, eta) = cp1_gl2_standard();
        let report = verify_eta(&pair, &h, &eta).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn zero_eta_always_verifies() {
        let pair = build_pair(&PairSpec::quadric(3)).unwrap();
        let h = TargetAlgebra::gl(3).unwrap();
        let eta = EtaSpec::zero(&pair, &h);
        let report = verify_eta(&pair, &h, &eta).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn cp2_inclusion_verifies_and_corruption_is_named() {
        let pair = build_pair(&PairSpec::grassmannian(1, 2)).unwrap();
        let h = TargetAlgebra::gl(3).unwrap();
        let eta = EtaSpec::inclusion(&pair, 3).unwrap();
        let report = verify_eta(&pair, &h, &eta).unwrap();
        assert!(report.passed(), "{}", report.render_text());

        // Corrupt one image; some bracket pair must be reported by index.
        let mut bad = eta.clone();
        bad.images[0][1] = g(1, 0);
        let report = verify_eta(&pair, &h, &bad).unwrap();
        assert!(!report.passed());
        let failure = report
            .failures()
            .find(|c| c.name == "bracket_preservation")
            .expect("bracket check must fail");
        assert!(failure.detail.contains("(0,"));
    }

    #[test]
    fn shape_errors_are_hard() {
        let (pair, h, _) = cp1_gl2_standard();
        let eta = EtaSpec::new(vec![]);
        assert!(matches!(verify_eta(&pair, &h, &eta), Err(Error::Shape(_))));
    }

    #[test]
    fn decompose_cp1_standard() {
        let (pair, h, eta) = cp1_gl2_standard();
        let dec = decompose_target(&pair, &h, &eta).unwrap();
        assert_eq!(dec.weights, vec![-2, 0, 2]);
        assert_eq!(dec.component(-2).unwrap().dim(), 1);
        assert_eq!(dec.component(0).unwrap().dim(), 2);
        assert_eq!(dec.component(2).unwrap().dim(), 1);
        // E21 (index 2 in the lex basis) sits in weight -2.
        let e21 = vec![g(0, 0), g(0, 0), g(1, 0), g(0, 0)];
        assert!(dec.lies_in_weight(-2, &e21));
        let e11 = vec![g(1, 0), g(0, 0), g(0, 0), g(0, 0)];
        assert!(dec.lies_in_weight(0, &e11));
    }

    #[test]
    fn decompose_zero_eta_is_single_weight() {
        let (pair, h, _) = cp1_gl2_standard();
        let eta = EtaSpec::zero(&pair, &h);
        let dec = decompose_target(&pair, &h, &eta).unwrap();
        assert_eq!(dec.weights, vec![0]);
        assert_eq!(dec.component(0).unwrap().dim(), 4);
    }

    #[test]
    fn decompose_scaled_eta_doubles_weights() {
        let pair = build_pair(&PairSpec::grassmannian(1, 1)).unwrap();
        let h = TargetAlgebra::gl(2).unwrap();
        let eta = EtaSpec::new(vec![vec![g(0, 2), g(0, 0), g(0, 0), g(0, -2)]]);
        let report = verify_eta(&pair, &h, &eta).unwrap();
        assert!(report.passed());
        let dec = decompose_target(&pair, &h, &eta).unwrap();
        assert_eq!(dec.weights, vec![-4, 0, 4]);
    }

    #[test]
    fn bracket_grading_on_cp1() {
        // [h_a, h_b] ⊆ h_{a+b} on component basis pairs.
        let (pair, h, eta) = cp1_gl2_standard();
        let dec = decompose_target(&pair, &h, &eta).unwrap();
        for (&wa, ca) in &dec.components {
            for (&wb, cb) in &dec.components {
                for va in ca.vectors() {
                    for vb in cb.vectors() {
                        let ea = h.algebra.element(va.clone()).unwrap();
                        let eb = h.algebra.element(vb.clone()).unwrap();
                        let br = h.algebra.bracket(&ea, &eb).unwrap();
                        assert!(
                            dec.lies_in_weight(wa + wb, &br.coords),
                            "grading violated at weights {wa}, {wb}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn non_integral_center_action_is_rejected() {
        let pair = build_pair(&PairSpec::grassmannian(1, 1)).unwrap();
        let h = TargetAlgebra::gl(2).unwrap();
        // dη(H0) = diag(i/2, 0): ad eigenvalues {±i/2, 0} are not integral.
        let eta = EtaSpec::new(vec![vec![
            GaussianRational::new(Rational::zero(), Rational::new(1, 2)),
            g(0, 0),
            g(0, 0),
            g(0, 0),
        ]]);
        let report = verify_eta(&pair, &h, &eta).unwrap();
        assert!(!report.passed());
        assert!(matches!(
            decompose_target(&pair, &h, &eta),
            Err(Error::NonIntegralWeight(_))
        ));
    }

    #[test]
    fn sl2_target_mirrors_the_gl2_computation() {
        // sl(2) basis order: (E11 − E22, E12, E21). dη(H0) = i·(E11 − E22).
        let pair = build_pair(&PairSpec::grassmannian(1, 1)).unwrap();
        let h = TargetAlgebra::sl(2).unwrap();
        assert_eq!(h.dim(), 3);
        let eta = EtaSpec::new(vec![vec![g(0, 1), g(0, 0), g(0, 0)]]);
        let report = verify_eta(&pair, &h, &eta).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        let dec = decompose_target(&pair, &h, &eta).unwrap();
        assert_eq!(dec.weights, vec![-2, 0, 2]);
        assert_eq!(dec.component(0).unwrap().dim(), 1);

        let plus = crate::invariant::invariant_space(
            &pair,
            &h,
            &eta,
            crate::invariant::Sign::Plus,
        )
        .unwrap();
        assert_eq!(plus.dim(), 1);
        // E21 is basis index 2.
        assert_eq!(plus.basis.vector(0)[2], g(1, 0));

        // The mixed bracket lands on the single diagonal direction, so the
        // emitted system has one equation and no duplicate codomain slot.
        let sys = crate::moduli::emit_system(&pair, &h, &eta, crate::moduli::TripleKind::Higgs)
            .unwrap();
        assert_eq!(sys.variables, vec!["x1", "y1"]);
        assert_eq!(sys.equations.len(), 1);
        assert!(sys.duplicates.is_empty());
    }

    #[test]
    fn custom_structure_constant_target_works_end_to_end() {
        // A 3-dimensional rotation-style algebra given by raw constants.
        let e = |idx: usize, val: i64| -> Vec<GaussianRational> {
            let mut out = vec![GaussianRational::zero(); 3];
            out[idx] = g(val, 0);
            out
        };
        let spec = crate::lie::AlgebraSpec::Structure {
            name: "rot3".into(),
            dim: 3,
            structure_constants: vec![
                crate::lie::StructureEntry { i: 0, j: 1, coeffs: e(2, 1) },
                crate::lie::StructureEntry { i: 1, j: 2, coeffs: e(0, 1) },
                crate::lie::StructureEntry { i: 0, j: 2, coeffs: e(1, -1) },
            ],
        };
        let h = TargetAlgebra::custom(&spec).unwrap();
        assert!(!h.algebra.is_realized());

        let pair = build_pair(&PairSpec::grassmannian(1, 1)).unwrap();
        let eta = EtaSpec::zero(&pair, &h);
        let report = verify_eta(&pair, &h, &eta).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        // Unrealized targets carry no matrix-level advisory.
        assert!(report.notes.iter().all(|n| !n.contains("matrix-level")));
        let dec = decompose_target(&pair, &h, &eta).unwrap();
        assert_eq!(dec.weights, vec![0]);
        // Conjugation needs a realization.
        assert!(matches!(
            crate::moduli::ad_operator(&h, &ExactMatrix::identity(3)),
            Err(Error::NoRealization(_))
        ));
    }

    #[test]
    fn advisory_note_for_central_half_weight() {
        // dη(H0) = diag(i/2, -i/2): integral ad-spectrum {0, ±i} but
        // half-integral matrix spectrum — passes with a note.
        let pair = build_pair(&PairSpec::grassmannian(1, 1)).unwrap();
        let h = TargetAlgebra::gl(2).unwrap();
        let half = GaussianRational::new(Rational::zero(), Rational::new(1, 2));
        let eta = EtaSpec::new(vec![vec![half.clone(), g(0, 0), g(0, 0), -&half]]);
        let report = verify_eta(&pair, &h, &eta).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert!(!report.notes.is_empty());
    }
}
