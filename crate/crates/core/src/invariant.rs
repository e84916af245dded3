//! K-invariant tensors in h ⊗ p+ and h ⊗ p−.
//!
//! Invariance is imposed infinitesimally (the isotropy group of a simply
//! connected compact Hermitian space is connected): an element is invariant
//! iff it is annihilated by dη(x)⊗Id + Id⊗ad(x)|p± for every k-basis x, which
//! is one joint kernel computation. Tensor coordinates are ordered with the
//! h-index major and the p-index minor; that ordering is part of the wire
//! format.

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::{EtaSpec, TargetAlgebra, ZkDecomposition};
use crate::gaussian::GaussianRational;
use crate::hss::HermitianPair;
use crate::matrix::{ExactMatrix, SubspaceBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_plus(&self) -> bool {
        matches!(self, Sign::Plus)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        match s.as_str() {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(de::Error::custom(format!(
                "sign must be \"+\" or \"-\", got {other:?}"
            ))),
        }
    }
}

/// A tensor in h ⊗ p_sign, as coordinates over the basis
/// {h_i ⊗ p_j} with index i·dim_p + j.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantElement {
    pub sign: Sign,
    pub dim_h: usize,
    pub dim_p: usize,
    pub coords: Vec<GaussianRational>,
    pub context: String,
}

impl InvariantElement {
    pub fn component(&self, h_index: usize, p_index: usize) -> &GaussianRational {
        &self.coords[h_index * self.dim_p + p_index]
    }

    /// The h-coordinate vector paired with a fixed p-basis index.
    pub fn h_slice(&self, p_index: usize) -> Vec<GaussianRational> {
        (0..self.dim_h)
            .map(|i| self.coords[i * self.dim_p + p_index].clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GaussianRational::is_zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        InvariantElement {
            sign: self.sign,
            dim_h: self.dim_h,
            dim_p: self.dim_p,
            coords: self.coords.iter().map(|v| v * c).collect(),
            context: self.context.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.sign != other.sign || self.context != other.context {
            return Err(Error::Mismatch(
                "cannot add invariant elements from different contexts".into(),
            ));
        }
        if self.coords.len() != other.coords.len() {
            return Err(Error::Shape("tensor coordinate lengths differ".into()));
        }
        Ok(InvariantElement {
            sign: self.sign,
            dim_h: self.dim_h,
            dim_p: self.dim_p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
            context: self.context.clone(),
        })
    }
}

/// Canonical basis of the K-invariants of h ⊗ p_sign.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSpace {
    pub sign: Sign,
    pub dim_h: usize,
    pub dim_p: usize,
    pub basis: SubspaceBasis,
    pub context: String,
}

impl InvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// The element with the given coordinates in the invariant basis;
    /// invariant by construction.
    pub fn element(&self, space_coords: &[GaussianRational]) -> Result<InvariantElement> {
        if space_coords.len() != self.dim() {
            return Err(Error::Shape(format!(
                "expected {} invariant-space coordinates, got {}",
                self.dim(),
                space_coords.len()
            )));
        }
        Ok(InvariantElement {
            sign: self.sign,
            dim_h: self.dim_h,
            dim_p: self.dim_p,
            coords: self.basis.linear_combination(space_coords),
            context: self.context.clone(),
        })
    }

    /// Wraps raw tensor coordinates, requiring membership in the invariant
    /// span.
    pub fn element_from_tensor(&self, coords: Vec<GaussianRational>) -> Result<InvariantElement> {
        if coords.len() != self.dim_h * self.dim_p {
            return Err(Error::Shape(format!(
                "tensor has {} coordinates, expected {}",
                coords.len(),
                self.dim_h * self.dim_p
            )));
        }
        if !self.basis.contains(&coords) {
            return Err(Error::Domain(
                "tensor is not K-invariant for this homomorphism".into(),
            ));
        }
        Ok(InvariantElement {
            sign: self.sign,
            dim_h: self.dim_h,
            dim_p: self.dim_p,
            coords,
            context: self.context.clone(),
        })
    }
}

impl Serialize for InvariantSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("InvariantSpace", 4)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("tensor_dims", &[self.dim_h, self.dim_p])?;
        st.serialize_field("basis", &self.basis.vectors().to_vec())?;
        st.serialize_field("context", &self.context)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for InvariantSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            sign: Sign,
            tensor_dims: [usize; 2],
            basis: Vec<Vec<GaussianRational>>,
            #[serde(default)]
            context: String,
        }
        let wire = Wire::deserialize(deserializer)?;
        let ambient = wire.tensor_dims[0] * wire.tensor_dims[1];
        let basis = SubspaceBasis::from_vectors(ambient, wire.basis).map_err(de::Error::custom)?;
        Ok(InvariantSpace {
            sign: wire.sign,
            dim_h: wire.tensor_dims[0],
            dim_p: wire.tensor_dims[1],
            basis,
            context: wire.context,
        })
    }
}

/// `kron(H, Id) + kron(Id, P)` acting on h ⊗ p with h-major indexing.
fn tensor_operator(h_op: &ExactMatrix, p_op: &ExactMatrix) -> ExactMatrix {
    let m = h_op.rows();
    let p = p_op.rows();
    ExactMatrix::from_fn(m * p, m * p, |row, col| {
        let (i, k) = (row / p, row % p);
        let (j, l) = (col / p, col % p);
        let mut v = GaussianRational::zero();
        if k == l {
            v += h_op.at(i, j);
        }
        if i == j {
            v += p_op.at(k, l);
        }
        v
    })
}

/// The operators whose joint kernel is the invariant space: one per k-basis
/// element.
fn invariance_operators(
    pair: &HermitianPair,
    h: &TargetAlgebra,
    eta: &EtaSpec,
    sign: Sign,
) -> Result<Vec<ExactMatrix>> {
    let p_sub = pair.p_sign_basis(sign.is_plus());
    let mut ops = Vec::with_capacity(pair.k_basis.dim());
    for a in 0..pair.k_basis.dim() {
        let x = pair.g.element(pair.k_basis.vector(a).to_vec())?;
        let p_op = pair.ad_restricted(&x, p_sub)?;
        let h_op = h.algebra.ad_matrix(&h.algebra.element(eta.images[a].clone())?)?;
        ops.push(tensor_operator(&h_op, &p_op));
    }
    Ok(ops)
}

/// Canonical basis of the joint kernel of
/// {dη(x)⊗Id + Id⊗ad(x)|p_sign : x in the k basis} on h ⊗ p_sign.
pub fn invariant_space(
    pair: &HermitianPair,
    h: &TargetAlgebra,
    eta: &EtaSpec,
    sign: Sign,
) -> Result<InvariantSpace> {
    eta.check_against(pair, h)?;
    let ops = invariance_operators(pair, h, eta, sign)?;
    let refs: Vec<&ExactMatrix> = ops.iter().collect();
    let ambient = h.dim() * pair.p_sign_basis(sign.is_plus()).dim();
    let basis = crate::matrix::joint_kernel(&refs, ambient)?;
    Ok(InvariantSpace {
        sign,
        dim_h: h.dim(),
        dim_p: pair.p_sign_basis(sign.is_plus()).dim(),
        basis,
        context: eta.fingerprint(pair, h),
    })
}

/// Exact invariance test for a single tensor.
pub fn is_invariant(
    pair: &HermitianPair,
    h: &TargetAlgebra,
    eta: &EtaSpec,
    elt: &InvariantElement,
) -> Result<bool> {
    eta.check_against(pair, h)?;
    let ops = invariance_operators(pair, h, eta, elt.sign)?;
    for op in &ops {
        if !op.mul_vec(&elt.coords)?.iter().all(GaussianRational::is_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every basis vector of the invariant space lies in
/// h_{−λ} ⊗ p+ (plus sign) or h_{+λ} ⊗ p− (minus sign), λ the integer
/// weight of the isotropy character.
pub fn verify_weight_containment(
    inv: &InvariantSpace,
    dec: &ZkDecomposition,
    pair: &HermitianPair,
) -> Result<bool> {
    if inv.context != dec.eta {
        return Err(Error::Mismatch(format!(
            "invariant space context {} vs decomposition context {}",
            inv.context, dec.eta
        )));
    }
    let weight = match inv.sign {
        Sign::Plus => -pair.lambda_int(),
        Sign::Minus => pair.lambda_int(),
    };
    for v in inv.basis.vectors() {
        for p_index in 0..inv.dim_p {
            let slice: Vec<GaussianRational> = (0..inv.dim_h)
                .map(|i| v[i * inv.dim_p + p_index].clone())
                .collect();
            if !dec.lies_in_weight(weight, &slice) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
