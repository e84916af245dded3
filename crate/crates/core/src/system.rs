//! Quadratic moduli systems: explicit homogeneous degree-2 equations on the
//! coordinates of the invariant spaces, plus an exact solver for systems in
//! at most two variables.
//!
//! The JSON form of [`QuadraticSystem`] is the interchange contract for
//! external solvers; everything in it is deterministic for fixed inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::moduli::TripleKind;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    /// Exactly two variable names (a square is a repeated name).
    pub vars: Vec<String>,
    pub coeff: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticEquation {
    pub monomials: Vec<Monomial>,
    pub provenance: String,
}

impl QuadraticEquation {
    /// Canonical form: variables inside each monomial sorted by system order,
    /// like monomials merged, zero coefficients dropped, monomials sorted,
    /// and the whole equation scaled so the leading coefficient is 1.
    pub fn normalized(mut self, variable_order: &[String]) -> Self {
        let index = |name: &str| -> usize {
            variable_order
                .iter()
                .position(|v| v == name)
                .unwrap_or(usize::MAX)
        };
        let mut merged: BTreeMap<(usize, usize), GaussianRational> = BTreeMap::new();
        for mono in self.monomials.drain(..) {
            assert_eq!(mono.vars.len(), 2, "moduli equations are quadratic");
            let mut key = (index(&mono.vars[0]), index(&mono.vars[1]));
            if key.0 > key.1 {
                key = (key.1, key.0);
            }
            let slot = merged.entry(key).or_insert_with(GaussianRational::zero);
            *slot += &mono.coeff;
        }
        merged.retain(|_, v| !v.is_zero());
        let lead = merged.values().next().cloned();
        let monomials = merged
            .into_iter()
            .map(|((a, b), coeff)| Monomial {
                vars: vec![variable_order[a].clone(), variable_order[b].clone()],
                coeff: match &lead {
                    Some(l) => &coeff / l,
                    None => coeff,
                },
            })
            .collect();
        QuadraticEquation {
            monomials,
            provenance: self.provenance,
        }
    }

    /// Structural equality of the monomial lists (provenance ignored).
    pub fn same_form(&self, other: &Self) -> bool {
        self.monomials == other.monomials
    }

    pub fn evaluate(&self, assignment: &BTreeMap<String, GaussianRational>) -> Result<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for mono in &self.monomials {
            let mut term = mono.coeff.clone();
            for var in &mono.vars {
                let value = assignment.get(var).ok_or_else(|| {
                    Error::Shape(format!("no value supplied for variable '{var}'"))
                })?;
                term = &term * value;
            }
            acc += &term;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DuplicateNote {
    pub provenance: String,
    pub equal_to: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemContext {
    pub pair: String,
    pub target: String,
    pub eta: String,
    pub kind: TripleKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticSystem {
    pub variables: Vec<String>,
    pub equations: Vec<QuadraticEquation>,
    /// Provenance of codomain coordinates that produced the zero equation.
    pub identically_zero: Vec<String>,
    /// Provenance of equations merged into an earlier structural equal.
    pub duplicates: Vec<DuplicateNote>,
    pub context: SystemContext,
}

impl QuadraticSystem {
    pub fn assignment(&self, values: &[GaussianRational]) -> Result<BTreeMap<String, GaussianRational>> {
        if values.len() != self.variables.len() {
            return Err(Error::Shape(format!(
                "system has {} variables, got {} values",
                self.variables.len(),
                values.len()
            )));
        }
        Ok(self
            .variables
            .iter()
            .cloned()
            .zip(values.iter().cloned())
            .collect())
    }

    pub fn evaluate_at(&self, values: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        let assignment = self.assignment(values)?;
        self.equations
            .iter()
            .map(|eq| eq.evaluate(&assignment))
            .collect()
    }

    pub fn is_satisfied_by(&self, values: &[GaussianRational]) -> Result<bool> {
        Ok(self
            .evaluate_at(values)?
            .iter()
            .all(GaussianRational::is_zero))
    }
}

/// A line through the origin in the plane, as the normal form
/// `normal[0]·x + normal[1]·y = 0` with monic leading coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub normal: [GaussianRational; 2],
    pub multiplicity: usize,
}

impl Line {
    fn new(a: GaussianRational, b: GaussianRational, multiplicity: usize) -> Self {
        let lead = if a.is_zero() { b.clone() } else { a.clone() };
        let inv = lead.recip().expect("a line has a nonzero normal");
        Line {
            normal: [&a * &inv, &b * &inv],
            multiplicity,
        }
    }

    /// Direction vector of the line (kernel of the normal form).
    fn direction(&self) -> [GaussianRational; 2] {
        [self.normal[1].clone(), -&self.normal[0]]
    }
}

/// Exact description of the zero set of a small homogeneous system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum ZeroSet {
    /// No constraints: the whole coordinate space.
    Full { vars: usize },
    /// Only the origin.
    Origin { vars: usize },
    /// A finite union of lines through the origin (two variables).
    Lines { vars: usize, lines: Vec<Line> },
    /// An irreducible conic `c20·x² + c11·xy + c02·y² = 0` given by its
    /// equation (its lines are not rational over Q(i)).
    Conic {
        vars: usize,
        coeffs: [GaussianRational; 3],
    },
}

impl ZeroSet {
    pub fn describe(&self) -> String {
        match self {
            ZeroSet::Full { vars: 0 } => "the full space (a single point; no variables)".into(),
            ZeroSet::Full { vars: 1 } => "the full line (no constraints)".into(),
            ZeroSet::Full { .. } => "the full plane (no constraints)".into(),
            ZeroSet::Origin { .. } => "the origin only".into(),
            ZeroSet::Lines { lines, .. } => {
                let parts: Vec<String> = lines
                    .iter()
                    .map(|l| {
                        let base = format!("line {}·x + {}·y = 0", l.normal[0], l.normal[1]);
                        if l.multiplicity > 1 {
                            format!("{base} (multiplicity {})", l.multiplicity)
                        } else {
                            base
                        }
                    })
                    .collect();
                format!("union of {}", parts.join(" and "))
            }
            ZeroSet::Conic { coeffs, .. } => format!(
                "irreducible conic {}·x² + {}·xy + {}·y² = 0",
                coeffs[0], coeffs[1], coeffs[2]
            ),
        }
    }
}

/// Binary quadratic coefficients (c20, c11, c02) of an equation in the two
/// system variables.
fn binary_coefficients(
    eq: &QuadraticEquation,
    v0: &str,
    v1: &str,
) -> Result<[GaussianRational; 3]> {
    let mut out = [
        GaussianRational::zero(),
        GaussianRational::zero(),
        GaussianRational::zero(),
    ];
    for mono in &eq.monomials {
        let slot = match (mono.vars[0].as_str(), mono.vars[1].as_str()) {
            (a, b) if a == v0 && b == v0 => 0,
            (a, b) if (a == v0 && b == v1) || (a == v1 && b == v0) => 1,
            (a, b) if a == v1 && b == v1 => 2,
            _ => {
                return Err(Error::Shape(format!(
                    "equation mentions variables outside {{{v0}, {v1}}}"
                )))
            }
        };
        out[slot] += &mono.coeff;
    }
    Ok(out)
}

enum Factorization {
    Zero,
    Split(Vec<Line>),
    Irreducible,
}

/// Factors c20·x² + c11·xy + c02·y² over Q(i) via an exact discriminant
/// square root.
fn factor_binary(c: &[GaussianRational; 3]) -> Factorization {
    let [c20, c11, c02] = c;
    if c20.is_zero() && c11.is_zero() && c02.is_zero() {
        return Factorization::Zero;
    }
    if c20.is_zero() {
        // y · (c11·x + c02·y)
        if c11.is_zero() {
            return Factorization::Split(vec![Line::new(
                GaussianRational::zero(),
                GaussianRational::one(),
                2,
            )]);
        }
        let l1 = Line::new(GaussianRational::zero(), GaussianRational::one(), 1);
        let l2 = Line::new(c11.clone(), c02.clone(), 1);
        return Factorization::Split(merge_lines(vec![l1, l2]));
    }
    let four = GaussianRational::from_int(4);
    let disc = &(c11 * c11) - &(&four * &(c20 * c02));
    match disc.sqrt() {
        None => Factorization::Irreducible,
        Some(w) => {
            let two_a = &GaussianRational::from_int(2) * c20;
            if w.is_zero() {
                // double root t = -c11 / (2 c20): factor (x - t·y)²
                let t = &(-c11) / &two_a;
                return Factorization::Split(vec![Line::new(GaussianRational::one(), -&t, 2)]);
            }
            let t1 = &(&(-c11) + &w) / &two_a;
            let t2 = &(&(-c11) - &w) / &two_a;
            Factorization::Split(merge_lines(vec![
                Line::new(GaussianRational::one(), -&t1, 1),
                Line::new(GaussianRational::one(), -&t2, 1),
            ]))
        }
    }
}

fn merge_lines(lines: Vec<Line>) -> Vec<Line> {
    let mut out: Vec<Line> = Vec::new();
    for l in lines {
        if let Some(existing) = out.iter_mut().find(|e| e.normal == l.normal) {
            existing.multiplicity += l.multiplicity;
        } else {
            out.push(l);
        }
    }
    sort_lines(&mut out);
    out
}

fn sort_lines(lines: &mut [Line]) {
    lines.sort_by_key(|l| format!("{},{}", l.normal[0], l.normal[1]));
}

fn evaluate_binary(c: &[GaussianRational; 3], x: &GaussianRational, y: &GaussianRational) -> GaussianRational {
    &(&(&c[0] * x) * x) + &(&(&c[1] * x) * y) + &(&(&c[2] * y) * y)
}

fn proportional(a: &[GaussianRational; 3], b: &[GaussianRational; 3]) -> bool {
    // all 2x2 minors of the coefficient rows vanish
    for i in 0..3 {
        for j in (i + 1)..3 {
            if !(&(&a[i] * &b[j]) - &(&a[j] * &b[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

#[allow(clippy::large_enum_variant)]
enum PlaneState {
    Full,
    Conic([GaussianRational; 3]),
    Lines(Vec<Line>),
    Origin,
}

/// Exact zero set of a system in at most two variables. Larger systems are
/// refused with [`Error::Unsupported`]; callers fall back to the JSON form
/// for external tools.
pub fn solve_small(sys: &QuadraticSystem) -> Result<ZeroSet> {
    let vars = sys.variables.len();
    if vars > 2 {
        return Err(Error::Unsupported(format!(
            "exact solving handles at most 2 variables, system has {vars}"
        )));
    }
    if vars == 0 {
        return Ok(ZeroSet::Full { vars: 0 });
    }
    if vars == 1 {
        let v = &sys.variables[0];
        let mut constrained = false;
        for eq in &sys.equations {
            for mono in &eq.monomials {
                if mono.vars.iter().any(|n| n != v) {
                    return Err(Error::Shape(
                        "equation mentions a variable outside the system".into(),
                    ));
                }
                if !mono.coeff.is_zero() {
                    constrained = true;
                }
            }
        }
        return Ok(if constrained {
            ZeroSet::Origin { vars: 1 }
        } else {
            ZeroSet::Full { vars: 1 }
        });
    }

    let v0 = sys.variables[0].clone();
    let v1 = sys.variables[1].clone();
    let mut state = PlaneState::Full;
    for eq in &sys.equations {
        let coeffs = binary_coefficients(eq, &v0, &v1)?;
        let factored = factor_binary(&coeffs);
        state = match (state, factored) {
            (s, Factorization::Zero) => s,
            (PlaneState::Full, Factorization::Split(lines)) => PlaneState::Lines(lines),
            (PlaneState::Full, Factorization::Irreducible) => PlaneState::Conic(coeffs),
            (PlaneState::Origin, _) => PlaneState::Origin,
            (PlaneState::Lines(lines), _) => {
                let kept: Vec<Line> = lines
                    .into_iter()
                    .filter(|l| {
                        let d = l.direction();
                        evaluate_binary(&coeffs, &d[0], &d[1]).is_zero()
                    })
                    .collect();
                if kept.is_empty() {
                    PlaneState::Origin
                } else {
                    PlaneState::Lines(kept)
                }
            }
            (PlaneState::Conic(prev), Factorization::Irreducible) => {
                if proportional(&prev, &coeffs) {
                    PlaneState::Conic(prev)
                } else {
                    // Distinct irreducible binary quadratics share no line:
                    // a common root would make both the same minimal
                    // polynomial up to scale.
                    PlaneState::Origin
                }
            }
            (PlaneState::Conic(prev), Factorization::Split(lines)) => {
                // A rational line inside an irreducible conic would make it
                // reducible, so only lines on which the conic vanishes
                // survive — i.e. none.
                let kept: Vec<Line> = lines
                    .into_iter()
                    .filter(|l| {
                        let d = l.direction();
                        evaluate_binary(&prev, &d[0], &d[1]).is_zero()
                    })
                    .collect();
                if kept.is_empty() {
                    PlaneState::Origin
                } else {
                    PlaneState::Lines(kept)
                }
            }
        };
    }
    Ok(match state {
        PlaneState::Full => ZeroSet::Full { vars: 2 },
        PlaneState::Origin => ZeroSet::Origin { vars: 2 },
        PlaneState::Conic(coeffs) => ZeroSet::Conic { vars: 2, coeffs },
        PlaneState::Lines(mut lines) => {
            sort_lines(&mut lines);
            ZeroSet::Lines { vars: 2, lines }
        }
    })
}
