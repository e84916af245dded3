//! Exact spectral decomposition for matrices whose eigenvalues lie in i·Q.
//!
//! The route is minimal polynomial → substitute x = i·y → rational roots by
//! the rational-root theorem → eigenspaces as exact kernels. Semisimplicity is
//! certified by eigenspace dimensions summing to the ambient dimension; no
//! characteristic polynomial factorization, no floating point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::matrix::{ExactMatrix, SubspaceBasis};
use crate::rational::Rational;

/// Monic minimal polynomial of a square matrix over Q(i), returned as
/// coefficients `c_0..c_d` with `c_d = 1`.
pub fn minimal_polynomial(a: &ExactMatrix) -> Result<Vec<GaussianRational>> {
    if a.rows() != a.cols() {
        return Err(Error::Shape("minimal polynomial of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut power = ExactMatrix::identity(n);
    let mut seen: Vec<Vec<GaussianRational>> = Vec::new();
    for d in 0..=n {
        let vec_d = power.vectorize();
        if d > 0 {
            let span = ExactMatrix::from_fn(n * n, d, |r, c| seen[c][r].clone());
            if let Some(coeffs) = span.solve(&vec_d) {
                // power^d = Σ coeffs_j power^j  ⇒  μ = x^d − Σ coeffs_j x^j.
                let mut mu: Vec<GaussianRational> = coeffs.iter().map(|c| -c).collect();
                mu.push(GaussianRational::one());
                return Ok(mu);
            }
        }
        seen.push(vec_d);
        power = power.mul(a)?;
    }
    // Cayley–Hamilton guarantees a dependency at degree ≤ n.
    Err(Error::Structure(
        "no polynomial dependency up to the ambient dimension".into(),
    ))
}

/// If every coefficient of `mu(x)` after substituting `x = i·y` and dividing
/// by `i^deg` is real, returns that real polynomial in `y`.
fn as_polynomial_in_iy(mu: &[GaussianRational]) -> Option<Vec<Rational>> {
    let d = mu.len() - 1;
    let mut out = Vec::with_capacity(mu.len());
    for (j, c) in mu.iter().enumerate() {
        // multiply c_j by i^(j-d), i.e. i^((j + 4d - d) mod 4)
        let k = (4 + j % 4 + 4 - d % 4) % 4;
        let rotated = match k {
            0 => c.clone(),
            1 => c * &GaussianRational::i(),
            2 => -c,
            _ => -(c * &GaussianRational::i()),
        };
        if !rotated.im.is_zero() {
            return None;
        }
        out.push(rotated.re);
    }
    Some(out)
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero are unbounded");
    let isqrt = n.sqrt();
    let limit = isqrt
        .to_u64()
        .expect("divisor enumeration bound exceeds u64");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::from(1u8);
    for _ in 1..=limit {
        if n.is_multiple_of(&d) {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Divides `p` by `(y - r)`, assuming `r` is a root. Returns the quotient.
fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let d = p.len() - 1;
    let mut q = vec![Rational::zero(); d];
    let mut carry = p[d].clone();
    for j in (0..d).rev() {
        q[j] = carry.clone();
        carry = &p[j] + &(&carry * r);
    }
    debug_assert!(carry.is_zero(), "deflation by a non-root");
    q
}

/// All rational roots of `p` with multiplicity, plus the degree of the
/// root-free remaining factor (0 means `p` splits over Q).
pub fn rational_roots(p: &[Rational]) -> (Vec<(Rational, usize)>, usize) {
    let mut work: Vec<Rational> = p.to_vec();
    while work.len() > 1 && work.last().unwrap().is_zero() {
        work.pop();
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    // Zero roots first.
    let mut zero_mult = 0usize;
    while work.len() > 1 && work[0].is_zero() {
        work.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    'outer: while work.len() > 1 {
        // Integer polynomial with the same roots.
        let den_lcm = work
            .iter()
            .fold(BigInt::from(1u8), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = work
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let lead = ints.last().unwrap();
        let constant = &ints[0];
        for num in positive_divisors(constant) {
            for den in positive_divisors(lead) {
                for sign in [1i8, -1] {
                    let cand = Rational::from_big(
                        if sign == 1 { num.clone() } else { -&num },
                        den.clone(),
                    );
                    if eval_poly(&work, &cand).is_zero() {
                        let mut mult = 0usize;
                        while work.len() > 1 && eval_poly(&work, &cand).is_zero() {
                            work = deflate(&work, &cand);
                            mult += 1;
                        }
                        roots.push((cand, mult));
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    (roots, work.len() - 1)
}

/// Exact eigen-decomposition of a matrix that is diagonalizable over Q(i)
/// with all eigenvalues of the form i·r, r ∈ Q. Returns the distinct `r`
/// values with their eigenspaces, sorted ascending.
pub fn imaginary_rational_spectrum(
    a: &ExactMatrix,
) -> Result<Vec<(Rational, SubspaceBasis)>> {
    let n = a.rows();
    let mu = minimal_polynomial(a)?;
    let p = as_polynomial_in_iy(&mu).ok_or_else(|| {
        Error::Structure("matrix spectrum is not contained in i·Q".into())
    })?;
    let (roots, leftover) = rational_roots(&p);
    if leftover != 0 {
        return Err(Error::Structure(
            "matrix has an eigenvalue outside i·Q".into(),
        ));
    }
    if roots.iter().any(|(_, m)| *m > 1) {
        return Err(Error::Structure(
            "matrix is not semisimple (repeated minimal-polynomial root)".into(),
        ));
    }
    let mut out = Vec::new();
    let mut total = 0usize;
    for (r, _) in roots {
        let shift = ExactMatrix::identity(n)
            .scale(&GaussianRational::new(Rational::zero(), r.clone()));
        let space = a.sub(&shift)?.kernel_basis();
        if space.is_empty() {
            return Err(Error::Structure(
                "minimal-polynomial root without an eigenvector".into(),
            ));
        }
        total += space.dim();
        out.push((r, space));
    }
    if total != n {
        return Err(Error::Structure(format!(
            "eigenspaces span dimension {total} of {n}; matrix is defective"
        )));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Like [`imaginary_rational_spectrum`], but demanding eigenvalues in i·Z;
/// keys are the integer weights.
pub fn integer_weight_eigenspaces(a: &ExactMatrix) -> Result<BTreeMap<i64, SubspaceBasis>> {
    let spectrum = imaginary_rational_spectrum(a)?;
    let mut out = BTreeMap::new();
    for (r, space) in spectrum {
        let k = r.to_i64().ok_or_else(|| {
            Error::NonIntegralWeight(format!("eigenvalue {r}·i is not an integer multiple of i"))
        })?;
        out.insert(k, space);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(Rational::from_int(re), Rational::from_int(im))
    }

    #[test]
    fn minimal_polynomial_of_diagonal() {
        // diag(i, -i): μ(x) = x² + 1
        let a = ExactMatrix::from_rows(vec![vec![g(0, 1), g(0, 0)], vec![g(0, 0), g(0, -1)]])
            .unwrap();
        let mu = minimal_polynomial(&a).unwrap();
        assert_eq!(mu, vec![g(1, 0), g(0, 0), g(1, 0)]);
    }

    #[test]
    fn roots_of_small_polynomials() {
        // (y-1)(y+2) = y² + y − 2
        let p = vec![
            Rational::from_int(-2),
            Rational::from_int(1),
            Rational::from_int(1),
        ];
        let (roots, leftover) = rational_roots(&p);
        assert_eq!(leftover, 0);
        assert_eq!(
            roots,
            vec![(Rational::from_int(1), 1), (Rational::from_int(-2), 1)]
        );
        // y² + 1 has no rational roots.
        let q = vec![
            Rational::from_int(1),
            Rational::from_int(0),
            Rational::from_int(1),
        ];
        let (roots, leftover) = rational_roots(&q);
        assert!(roots.is_empty());
        assert_eq!(leftover, 2);
        // y·(2y − 1)
        let r = vec![
            Rational::from_int(0),
            Rational::from_int(-1),
            Rational::from_int(2),
        ];
        let (roots, leftover) = rational_roots(&r);
        assert_eq!(leftover, 0);
        assert_eq!(
            roots,
            vec![(Rational::zero(), 1), (Rational::new(1, 2), 1)]
        );
    }

    #[test]
    fn spectrum_of_rotation_block() {
        // [[0, 1], [-1, 0]] has eigenvalues ±i.
        let a = ExactMatrix::from_rows(vec![vec![g(0, 0), g(1, 0)], vec![g(-1, 0), g(0, 0)]])
            .unwrap();
        let spec = imaginary_rational_spectrum(&a).unwrap();
        let rs: Vec<Rational> = spec.iter().map(|(r, _)| r.clone()).collect();
        assert_eq!(rs, vec![Rational::from_int(-1), Rational::from_int(1)]);
        assert!(spec.iter().all(|(_, s)| s.dim() == 1));

        let weights = integer_weight_eigenspaces(&a).unwrap();
        assert_eq!(weights.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
    }

    #[test]
    fn non_integral_and_defective_inputs_are_rejected() {
        // diag(i/2, -i/2) is integral only after scaling.
        let half_i = GaussianRational::new(Rational::zero(), Rational::new(1, 2));
        let a = ExactMatrix::from_rows(vec![
            vec![half_i.clone(), g(0, 0)],
            vec![g(0, 0), -&half_i],
        ])
        .unwrap();
        assert!(imaginary_rational_spectrum(&a).is_ok());
        assert!(matches!(
            integer_weight_eigenspaces(&a),
            Err(Error::NonIntegralWeight(_))
        ));

        // Nilpotent Jordan block: spectrum {0} but defective.
        let jordan =
            ExactMatrix::from_rows(vec![vec![g(0, 0), g(1, 0)], vec![g(0, 0), g(0, 0)]]).unwrap();
        assert!(imaginary_rational_spectrum(&jordan).is_err());

        // Real eigenvalues (diag(1, 2)) are not in i·Q.
        let real = ExactMatrix::from_rows(vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(2, 0)]])
            .unwrap();
        assert!(imaginary_rational_spectrum(&real).is_err());
    }
}
