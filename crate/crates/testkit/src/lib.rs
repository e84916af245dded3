//! Shared test support: deterministic sampling, valid homomorphism
//! generators for every catalog family, and independent oracles used to
//! cross-check the main pipeline.
//!
//! Everything here is deliberately separate from the production code paths it
//! checks: the m-map oracle works from the elementary-matrix product rule and
//! raw index arithmetic, and the weight-bookkeeping oracle is a hand-written
//! table. Nothing in this crate reads the structure-constant caches it is
//! meant to audit.

#![allow(clippy::needless_range_loop)]

use hermod_core::eta::{EtaSpec, TargetAlgebra};
use hermod_core::gaussian::GaussianRational;
use hermod_core::hss::{build_pair, Family, HermitianPair, PairSpec};
use hermod_core::matrix::{ExactMatrix, LinearSolver, SubspaceBasis};
use hermod_core::moduli::conjugate_eta;
use hermod_core::rational::Rational;

/// SplitMix64: tiny, seedable, stable across platforms.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Small rational with numerator in [-3, 3] and denominator in {1, 2}.
    pub fn rational(&mut self) -> Rational {
        Rational::new(self.int_in(-3, 3), self.int_in(1, 2))
    }

    pub fn gaussian(&mut self) -> GaussianRational {
        GaussianRational::new(self.rational(), self.rational())
    }

    pub fn gaussian_vec(&mut self, len: usize) -> Vec<GaussianRational> {
        (0..len).map(|_| self.gaussian()).collect()
    }

    /// A random invertible matrix over Q(i) with small entries.
    pub fn invertible_matrix(&mut self, n: usize) -> ExactMatrix {
        loop {
            let m = ExactMatrix::from_fn(n, n, |_, _| self.gaussian());
            if m.inverse().is_some() {
                return m;
            }
        }
    }

    /// A random invertible matrix with small Gaussian-integer entries; keeps
    /// downstream exact arithmetic cheap.
    pub fn invertible_int_matrix(&mut self, n: usize) -> ExactMatrix {
        loop {
            let m = ExactMatrix::from_fn(n, n, |_, _| {
                GaussianRational::new(
                    Rational::from_int(self.int_in(-2, 2)),
                    Rational::from_int(self.int_in(-1, 1)),
                )
            });
            if m.inverse().is_some() {
                return m;
            }
        }
    }
}

/// One valid homomorphism sample: the pair, the target, the images, and a
/// label describing how it was produced.
pub struct EtaSample {
    pub pair: HermitianPair,
    pub target: TargetAlgebra,
    pub eta: EtaSpec,
    pub label: String,
}

/// Coefficient of the normalized center generator in each k-basis element,
/// splitting k = R·z ⊕ [k, k].
fn center_coefficients(pair: &HermitianPair) -> Vec<GaussianRational> {
    let k = &pair.k;
    let dim = k.dim();
    let mut derived = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let br = k.bracket(&k.basis_element(i), &k.basis_element(j)).unwrap();
            derived.push(br.coords);
        }
    }
    let derived = SubspaceBasis::from_vectors(dim, derived).unwrap();
    // Columns: z then the derived-subalgebra basis.
    let cols: Vec<Vec<GaussianRational>> = std::iter::once(pair.z_in_k.clone())
        .chain(derived.vectors().iter().cloned())
        .collect();
    let matrix = ExactMatrix::from_fn(dim, cols.len(), |r, c| cols[c][r].clone());
    let solver = LinearSolver::new(&matrix);
    (0..dim)
        .map(|a| {
            let mut e = vec![GaussianRational::zero(); dim];
            e[a] = GaussianRational::one();
            solver.solve(&e).expect("k = R·z + [k,k] for catalog pairs")[0].clone()
        })
        .collect()
}

/// The character x ↦ weight·i·(z-coefficient of x) placed in the top-left
/// slot of gl(n). Always a valid homomorphism with integral center action.
pub fn character_eta(pair: &HermitianPair, n: usize, weight: i64) -> EtaSpec {
    let coeffs = center_coefficients(pair);
    let images = coeffs
        .iter()
        .map(|c| {
            let mut img = vec![GaussianRational::zero(); n * n];
            img[0] = c * &GaussianRational::new(Rational::zero(), Rational::from_int(weight));
            img
        })
        .collect();
    EtaSpec::new(images)
}

/// For the two u(n)-isotropy families: the tautological map onto u(n) ⊂ gl(n)
/// (top-left block for sp(n); X + iY for the so(2n) embedding).
pub fn unitary_block_eta(pair: &HermitianPair) -> EtaSpec {
    let n = match pair.spec.family {
        Family::SpUn | Family::So2nUn => pair.spec.params[0] as usize,
        _ => panic!("unitary_block_eta needs a u(n)-isotropy family"),
    };
    let images = pair
        .k
        .basis_matrices()
        .unwrap()
        .iter()
        .map(|m| {
            let block = match pair.spec.family {
                Family::SpUn => ExactMatrix::from_fn(n, n, |r, c| m.at(r, c).clone()),
                Family::So2nUn => ExactMatrix::from_fn(n, n, |r, c| {
                    m.at(r, c) + &(m.at(n + r, c) * &GaussianRational::i())
                }),
                _ => unreachable!(),
            };
            block.vectorize()
        })
        .collect();
    EtaSpec::new(images)
}

/// For quadrics: the so(n) block acts by its defining representation on the
/// first n coordinates of gl(n+1) and the so(2) angle by the character
/// i·weight in the last diagonal slot.
pub fn quadric_vector_eta(pair: &HermitianPair, weight: i64) -> EtaSpec {
    assert_eq!(pair.spec.family, Family::Quadric);
    let n = pair.spec.params[0] as usize;
    let images = pair
        .k
        .basis_matrices()
        .unwrap()
        .iter()
        .map(|m| {
            let mut img = ExactMatrix::zeros(n + 1, n + 1);
            for r in 0..n {
                for c in 0..n {
                    img.set(r, c, m.at(r, c).clone());
                }
            }
            let angle = m.at(n, n + 1);
            img.set(
                n,
                n,
                angle * &GaussianRational::new(Rational::zero(), Rational::from_int(weight)),
            );
            img.vectorize()
        })
        .collect();
    EtaSpec::new(images)
}

fn push_conjugates(
    samples: &mut Vec<EtaSample>,
    pair: &HermitianPair,
    target: &TargetAlgebra,
    eta: &EtaSpec,
    label: &str,
    rng: &mut Rng,
    count: usize,
) {
    let n = target.algebra.ambient_size().expect("gl targets are realized");
    for idx in 0..count {
        let conj = rng.invertible_int_matrix(n);
        let moved = conjugate_eta(target, &conj, eta).expect("conjugation stays valid");
        samples.push(EtaSample {
            pair: pair.clone(),
            target: target.clone(),
            eta: moved,
            label: format!("{label}^conj{idx}"),
        });
    }
}

/// At least 20 valid homomorphism samples for the family, all into gl(n)
/// targets with n ≤ 4, deterministically generated from the seed.
pub fn eta_samples(family: Family, seed: u64) -> Vec<EtaSample> {
    let mut rng = Rng::new(seed);
    let mut samples = Vec::new();

    fn push_basics(
        samples: &mut Vec<EtaSample>,
        pair: &HermitianPair,
        target: &TargetAlgebra,
        rng: &mut Rng,
    ) {
        samples.push(EtaSample {
            pair: pair.clone(),
            target: target.clone(),
            eta: EtaSpec::zero(pair, target),
            label: format!("{}:zero", pair.spec.g_name()),
        });
        for weight in [1i64, 2] {
            let eta = character_eta(pair, target.algebra.ambient_size().unwrap(), weight);
            let label = format!("{}:char{}", pair.spec.g_name(), weight);
            samples.push(EtaSample {
                pair: pair.clone(),
                target: target.clone(),
                eta: eta.clone(),
                label: label.clone(),
            });
            push_conjugates(samples, pair, target, &eta, &label, rng, 1);
        }
    }

    match family {
        Family::Grassmannian => {
            for (p, q, conjugates) in [(1u32, 1u32, 5usize), (1, 2, 4), (2, 2, 2)] {
                let pair = build_pair(&PairSpec::grassmannian(p, q)).unwrap();
                let n = (p + q) as usize;
                let target = TargetAlgebra::gl(n).unwrap();
                let inclusion = EtaSpec::inclusion(&pair, n).unwrap();
                let label = format!("su({n}):inclusion");
                samples.push(EtaSample {
                    pair: pair.clone(),
                    target: target.clone(),
                    eta: inclusion.clone(),
                    label: label.clone(),
                });
                push_conjugates(
                    &mut samples,
                    &pair,
                    &target,
                    &inclusion,
                    &label,
                    &mut rng,
                    conjugates,
                );
                push_basics(&mut samples, &pair, &target, &mut rng);
            }
        }
        Family::Quadric => {
            let pair = build_pair(&PairSpec::quadric(3)).unwrap();
            let target = TargetAlgebra::gl(4).unwrap();
            for weight in [1i64, 2] {
                let eta = quadric_vector_eta(&pair, weight);
                let label = format!("so(5):vector+char{weight}");
                samples.push(EtaSample {
                    pair: pair.clone(),
                    target: target.clone(),
                    eta: eta.clone(),
                    label: label.clone(),
                });
                push_conjugates(&mut samples, &pair, &target, &eta, &label, &mut rng, 5);
            }
            push_basics(&mut samples, &pair, &target, &mut rng);
            let small_target = TargetAlgebra::gl(2).unwrap();
            push_basics(&mut samples, &pair, &small_target, &mut rng);
        }
        Family::SpUn => {
            for (n, conjugates) in [(1u32, 5usize), (2, 3)] {
                let pair = build_pair(&PairSpec::sp_un(n)).unwrap();
                let ambient = 2 * n as usize;
                let target = TargetAlgebra::gl(ambient).unwrap();
                let inclusion = EtaSpec::inclusion(&pair, ambient).unwrap();
                let label = format!("sp({n}):inclusion");
                samples.push(EtaSample {
                    pair: pair.clone(),
                    target: target.clone(),
                    eta: inclusion.clone(),
                    label: label.clone(),
                });
                push_conjugates(
                    &mut samples,
                    &pair,
                    &target,
                    &inclusion,
                    &label,
                    &mut rng,
                    conjugates,
                );
                push_basics(&mut samples, &pair, &target, &mut rng);

                let block_target = TargetAlgebra::gl(n as usize).unwrap();
                let block = unitary_block_eta(&pair);
                let label = format!("sp({n}):u-block");
                samples.push(EtaSample {
                    pair: pair.clone(),
                    target: block_target.clone(),
                    eta: block.clone(),
                    label: label.clone(),
                });
                push_conjugates(
                    &mut samples,
                    &pair,
                    &block_target,
                    &block,
                    &label,
                    &mut rng,
                    1,
                );
            }
        }
        Family::So2nUn => {
            for (n, conjugates) in [(2u32, 4usize), (3, 3)] {
                let pair = build_pair(&PairSpec::so2n_un(n)).unwrap();
                let block_target = TargetAlgebra::gl(n as usize).unwrap();
                let block = unitary_block_eta(&pair);
                let label = format!("so({}):u-block", 2 * n);
                samples.push(EtaSample {
                    pair: pair.clone(),
                    target: block_target.clone(),
                    eta: block.clone(),
                    label: label.clone(),
                });
                push_conjugates(
                    &mut samples,
                    &pair,
                    &block_target,
                    &block,
                    &label,
                    &mut rng,
                    conjugates,
                );
                push_basics(&mut samples, &pair, &block_target, &mut rng);
                if n == 2 {
                    let target = TargetAlgebra::gl(4).unwrap();
                    let inclusion = EtaSpec::inclusion(&pair, 4).unwrap();
                    let label = "so(4):inclusion".to_string();
                    samples.push(EtaSample {
                        pair: pair.clone(),
                        target: target.clone(),
                        eta: inclusion.clone(),
                        label: label.clone(),
                    });
                    push_conjugates(
                        &mut samples,
                        &pair,
                        &target,
                        &inclusion,
                        &label,
                        &mut rng,
                        3,
                    );
                }
            }
        }
    }
    samples
}

/// The catalog slice the acceptance structural suites sweep.
pub fn acceptance_catalog() -> Vec<PairSpec> {
    let mut specs = Vec::new();
    for p in 1u32..=4 {
        for q in 1u32..=4 {
            if p + q <= 5 {
                specs.push(PairSpec::grassmannian(p, q));
            }
        }
    }
    for n in 3u32..=5 {
        specs.push(PairSpec::quadric(n));
    }
    for n in 1u32..=3 {
        specs.push(PairSpec::sp_un(n));
    }
    for n in 2u32..=4 {
        specs.push(PairSpec::so2n_un(n));
    }
    specs
}

/// Independent expansion oracles for gl(n) targets, written directly from the
/// elementary-matrix product rule [E_ab, E_cd] = δ_bc·E_ad − δ_da·E_cb and
/// raw index arithmetic. Tensor coordinates have the h-index major
/// (h-index (r, c) ↦ r·n + c).
pub mod gl_oracle {
    use super::GaussianRational;

    /// Adds `coeff · [E_i, E_j]` into `acc` at the given codomain slot.
    fn add_bracket(
        acc: &mut [GaussianRational],
        n: usize,
        i: usize,
        j: usize,
        slot_count: usize,
        slot: usize,
        coeff: &GaussianRational,
    ) {
        let (r1, c1) = (i / n, i % n);
        let (r2, c2) = (j / n, j % n);
        if c1 == r2 {
            let m = r1 * n + c2;
            acc[m * slot_count + slot] += coeff;
        }
        if c2 == r1 {
            let m = r2 * n + c1;
            acc[m * slot_count + slot] -= coeff;
        }
    }

    /// Term-by-term expansion of the wedge map on h ⊗ p (h = gl(n)).
    pub fn m_wedge(
        n: usize,
        dim_p: usize,
        a: &[GaussianRational],
        b: &[GaussianRational],
    ) -> Vec<GaussianRational> {
        let pair_count = dim_p * (dim_p - 1) / 2;
        let mut acc = vec![GaussianRational::zero(); n * n * pair_count];
        let mut slot = vec![vec![0usize; dim_p]; dim_p];
        let mut next = 0usize;
        for k in 0..dim_p {
            for l in (k + 1)..dim_p {
                slot[k][l] = next;
                next += 1;
            }
        }
        for i in 0..n * n {
            for k in 0..dim_p {
                let av = &a[i * dim_p + k];
                if av.is_zero() {
                    continue;
                }
                for j in 0..n * n {
                    for l in 0..dim_p {
                        if k == l {
                            continue;
                        }
                        let bv = &b[j * dim_p + l];
                        if bv.is_zero() {
                            continue;
                        }
                        let coeff = av * bv;
                        if k < l {
                            add_bracket(&mut acc, n, i, j, pair_count, slot[k][l], &coeff);
                        } else {
                            // p_k ∧ p_l = −(p_l ∧ p_k)
                            add_bracket(&mut acc, n, i, j, pair_count, slot[l][k], &(-&coeff));
                        }
                    }
                }
            }
        }
        acc
    }

    /// Term-by-term expansion of the mixed map (full tensor square, no
    /// wedge, no symmetrization).
    pub fn m_mixed(
        n: usize,
        dim_p1: usize,
        dim_p2: usize,
        a: &[GaussianRational],
        b: &[GaussianRational],
    ) -> Vec<GaussianRational> {
        let mut acc = vec![GaussianRational::zero(); n * n * dim_p1 * dim_p2];
        for i in 0..n * n {
            for k in 0..dim_p1 {
                let av = &a[i * dim_p1 + k];
                if av.is_zero() {
                    continue;
                }
                for j in 0..n * n {
                    for l in 0..dim_p2 {
                        let bv = &b[j * dim_p2 + l];
                        if bv.is_zero() {
                            continue;
                        }
                        let coeff = av * bv;
                        add_bracket(&mut acc, n, i, j, dim_p1 * dim_p2, k * dim_p2 + l, &coeff);
                    }
                }
            }
        }
        acc
    }
}

/// Pure weight bookkeeping for the rank-1 end-to-end check: the projective
/// line with the standard diag(i, −i) action on gl(2). No matrices, no
/// kernels — just the weight table.
pub mod cp1_oracle {
    /// gl(2) basis weights under ad(diag(i, -i)) in the lex basis
    /// (E11, E12, E21, E22).
    pub const H_WEIGHTS: [i64; 4] = [0, 2, -2, 0];

    /// The isotropy character weight.
    pub const LAMBDA: i64 = 2;

    pub fn h_indices_of_weight(w: i64) -> Vec<usize> {
        H_WEIGHTS
            .iter()
            .enumerate()
            .filter(|(_, ww)| **ww == w)
            .map(|(i, _)| i)
            .collect()
    }

    /// Expected invariant dimensions (plus, minus): the isotropy algebra is
    /// its own center here, so zero total weight is the whole invariance
    /// condition. The tangent half carries weight +λ, so the h-part must
    /// carry −λ (and +λ for the cotangent half).
    pub fn invariant_dims() -> (usize, usize) {
        (
            h_indices_of_weight(-LAMBDA).len(),
            h_indices_of_weight(LAMBDA).len(),
        )
    }

    /// The h-basis slots the invariant lines must occupy: E21 for the plus
    /// half, E12 for the minus half.
    pub fn invariant_h_indices() -> (usize, usize) {
        (2, 1)
    }

    /// [E21, E12] = E22 − E11 ≠ 0: exactly one independent equation
    /// x1·y1 = 0 survives normalization (it appears on both diagonal
    /// codomain slots with opposite signs).
    pub fn higgs_equation_count() -> usize {
        1
    }

    /// [E21, E21] = 0: the co-Higgs system is empty.
    pub fn cohiggs_equation_count() -> usize {
        0
    }
}
