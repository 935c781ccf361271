//! Hermitian operator bases grouped into d+1 axes.
//!
//! The MUM construction consumes an orthonormal basis of the traceless
//! Hermitian operators on C^d, split into d+1 groups ("axes") of d−1 elements
//! each. This module provides the three standard families:
//!
//! - the rescaled Pauli matrices for d = 2, one per axis;
//! - the Gell-Mann matrices for any d, with axis α ≤ d collecting the
//!   off-diagonal elements σ_{k,α−1} (k ≠ α−1) and axis d+1 the diagonal
//!   family σ_{kk};
//! - the Heisenberg-Weyl observables V_{kl}, Hermitian combinations of the
//!   Weyl operators W_{kl}, grouped by the same index scheme.
//!
//! plus a validated constructor for user-supplied bases. Every constructor
//! checks Hermiticity, tracelessness, orthonormality, and counts before
//! handing the basis out.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::operator::{pauli_matrices, Operator, C64, ONE, ZERO};
use crate::{Error, Result};

/// Absolute bound on |Tr F| for basis elements.
const TRACELESS_TOL: f64 = 1e-12;
/// Relative bound on ‖F − F†‖_F for basis elements.
const HERMITIAN_TOL: f64 = 1e-12;
/// Bound on |Tr(F_i F_j) − δ_ij| over all pairs.
const ORTHONORMAL_TOL: f64 = 1e-10;

/// Provenance of an axis basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisLabel {
    Pauli,
    GellMann,
    HeisenbergWeyl,
    Custom,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisLabel::Pauli => "pauli",
            BasisLabel::GellMann => "gell-mann",
            BasisLabel::HeisenbergWeyl => "heisenberg-weyl",
            BasisLabel::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// d+1 axes of d−1 orthonormal traceless Hermitian operators each.
#[derive(Clone, Debug, Serialize)]
pub struct AxisBasis {
    dim: usize,
    label: BasisLabel,
    axes: Vec<Vec<Operator>>,
}

impl<'de> serde::Deserialize<'de> for AxisBasis {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            label: BasisLabel,
            axes: Vec<Vec<Operator>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        AxisBasis::new(raw.dim, raw.label, raw.axes).map_err(D::Error::custom)
    }
}

impl AxisBasis {
    /// Validate and wrap a grouped operator family.
    pub fn new(dim: usize, label: BasisLabel, axes: Vec<Vec<Operator>>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        if axes.len() != dim + 1 {
            return Err(Error::BadPartition(format!(
                "expected {} axes, got {}",
                dim + 1,
                axes.len()
            )));
        }
        for (a, axis) in axes.iter().enumerate() {
            if axis.len() != dim - 1 {
                return Err(Error::BadPartition(format!(
                    "axis {} has {} operators, expected {}",
                    a + 1,
                    axis.len(),
                    dim - 1
                )));
            }
        }
        let flat: Vec<&Operator> = axes.iter().flatten().collect();
        for (i, op) in flat.iter().enumerate() {
            if op.dim() != dim {
                return Err(Error::DimMismatch {
                    left: dim,
                    right: op.dim(),
                });
            }
            let herm_dev = op.hermitian_deviation();
            if herm_dev > HERMITIAN_TOL {
                return Err(Error::NonHermitian {
                    index: i,
                    deviation: herm_dev,
                });
            }
            let tr = op.trace().norm();
            if tr > TRACELESS_TOL {
                return Err(Error::NonTraceless {
                    index: i,
                    trace_abs: tr,
                });
            }
        }
        let mut max_dev: f64 = 0.0;
        for i in 0..flat.len() {
            for j in i..flat.len() {
                let ip = flat[i].frobenius_inner(flat[j]).expect("dims checked");
                let target = if i == j { ONE } else { ZERO };
                max_dev = max_dev.max((ip - target).norm());
            }
        }
        if max_dev > ORTHONORMAL_TOL {
            return Err(Error::NonOrthonormal { deviation: max_dev });
        }
        Ok(AxisBasis { dim, label, axes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> BasisLabel {
        self.label
    }

    pub fn axes(&self) -> &[Vec<Operator>] {
        &self.axes
    }

    /// Elements of one axis, `axis` running 1..=d+1.
    pub fn axis(&self, axis: usize) -> Result<&[Operator]> {
        if axis == 0 || axis > self.dim + 1 {
            return Err(Error::BadAxis {
                axis,
                max: self.dim + 1,
            });
        }
        Ok(&self.axes[axis - 1])
    }
}

/// The d = 2 basis of rescaled Pauli matrices, σ_x/√2, σ_y/√2, σ_z/√2,
/// one per axis.
pub fn pauli_axis_basis() -> AxisBasis {
    let axes = pauli_matrices()
        .into_iter()
        .map(|s| vec![s.scaled_re(1.0 / 2.0_f64.sqrt())])
        .collect();
    AxisBasis::new(2, BasisLabel::Pauli, axes).expect("pauli basis is orthonormal")
}

/// Off-diagonal Gell-Mann element σ_{a,b}, a ≠ b.
///
/// For a < b this is the symmetric (|a⟩⟨b| + |b⟩⟨a|)/√2; for a > b the
/// antisymmetric i(|a⟩⟨b| − |b⟩⟨a|)/√2, following the standard sign
/// convention (at d = 2: σ_{01} = σ_x/√2, σ_{10} = σ_y/√2).
pub fn gell_mann_off_diagonal(dim: usize, a: usize, b: usize) -> Result<Operator> {
    if dim < 2 || a >= dim || b >= dim || a == b {
        return Err(Error::BadDimension(dim));
    }
    let r = 1.0 / 2.0_f64.sqrt();
    Ok(if a < b {
        Operator::from_fn(dim, |i, j| {
            if (i, j) == (a, b) || (i, j) == (b, a) {
                C64::new(r, 0.0)
            } else {
                ZERO
            }
        })
    } else {
        Operator::from_fn(dim, |i, j| {
            if (i, j) == (a, b) {
                C64::new(0.0, r)
            } else if (i, j) == (b, a) {
                C64::new(0.0, -r)
            } else {
                ZERO
            }
        })
    })
}

/// Diagonal Gell-Mann element σ_{kk}, 1 ≤ k ≤ d−1:
/// √(1/k(k+1)) (Σ_{j<k} |j⟩⟨j| − k|k⟩⟨k|).
pub fn gell_mann_diagonal(dim: usize, k: usize) -> Result<Operator> {
    if dim < 2 || k == 0 || k >= dim {
        return Err(Error::BadDimension(dim));
    }
    let norm = 1.0 / ((k * (k + 1)) as f64).sqrt();
    Ok(Operator::from_fn(dim, |i, j| {
        if i != j {
            ZERO
        } else if i < k {
            C64::new(norm, 0.0)
        } else if i == k {
            C64::new(-(k as f64) * norm, 0.0)
        } else {
            ZERO
        }
    }))
}

/// The Gell-Mann basis for dimension d, grouped into d+1 axes.
///
/// Axis α ∈ 1..=d holds {σ_{k,α−1} | k ≠ α−1} in ascending k; axis d+1 holds
/// the diagonal family {σ_{kk} | k = 1..d−1}.
pub fn gell_mann_basis(dim: usize) -> Result<AxisBasis> {
    if dim < 2 {
        return Err(Error::BadDimension(dim));
    }
    let mut axes = Vec::with_capacity(dim + 1);
    for alpha in 1..=dim {
        let col = alpha - 1;
        let axis = (0..dim)
            .filter(|&k| k != col)
            .map(|k| gell_mann_off_diagonal(dim, k, col))
            .collect::<Result<Vec<_>>>()?;
        axes.push(axis);
    }
    let diag = (1..dim)
        .map(|k| gell_mann_diagonal(dim, k))
        .collect::<Result<Vec<_>>>()?;
    axes.push(diag);
    AxisBasis::new(dim, BasisLabel::GellMann, axes)
}

/// Weyl operator W_{kl} = Σ_m ω^{km} |m+l mod d⟩⟨m| with ω = exp(2πi/d).
pub fn weyl_operator(dim: usize, k: usize, l: usize) -> Result<Operator> {
    if dim < 2 {
        return Err(Error::BadDimension(dim));
    }
    let (k, l) = (k % dim, l % dim);
    Ok(Operator::from_fn(dim, |row, col| {
        if row == (col + l) % dim {
            omega_pow(dim, k * col)
        } else {
            ZERO
        }
    }))
}

pub(crate) fn omega_pow(dim: usize, exponent: usize) -> C64 {
    let angle = 2.0 * std::f64::consts::PI * (exponent % dim) as f64 / dim as f64;
    C64::new(angle.cos(), angle.sin())
}

/// All d² Weyl operators, row-major in (k, l).
pub fn weyl_operators(dim: usize) -> Result<Vec<Operator>> {
    (0..dim * dim)
        .map(|idx| weyl_operator(dim, idx / dim, idx % dim))
        .collect()
}

/// Heisenberg-Weyl observable V_{kl}: a Hermitian quadrature of one Weyl
/// operator, (1∓i)/(2√d) W + (1±i)/(2√d) W†.
///
/// The indices (k, l) and (−k, −l) label the two orthogonal quadratures of
/// the same pair space span{W_{kl}, W_{kl}†}, so both are built on the
/// canonical pair representative: the lexicographically smaller index gets
/// the coefficient of its own branch (upper sign for k ≤ l), its conjugate
/// partner the flipped one. On self-paired indices (2k ≡ 2l ≡ 0) the
/// combination degenerates to the single Hermitian unit ±W/√d or ±iW/√d.
pub fn hw_observable(dim: usize, k: usize, l: usize) -> Result<Operator> {
    if dim < 2 || k >= dim || l >= dim || (k, l) == (0, 0) {
        return Err(Error::BadDimension(dim));
    }
    let partner = ((dim - k) % dim, (dim - l) % dim);
    let rep = std::cmp::min((k, l), partner);
    let w = weyl_operator(dim, rep.0, rep.1)?;
    let s = 1.0 / (2.0 * (dim as f64).sqrt());
    let rep_coeff = if rep.0 <= rep.1 {
        C64::new(s, -s)
    } else {
        C64::new(s, s)
    };
    let c = if (k, l) == rep {
        rep_coeff
    } else {
        rep_coeff.conj()
    };
    Ok(&w.scaled(c) + &w.adjoint().scaled(c.conj()))
}

/// The Heisenberg-Weyl observable basis, grouped like the Gell-Mann one:
/// axis α ∈ 1..=d holds {V_{k,α−1} | k ≠ α−1}, axis d+1 holds {V_{kk}}.
///
/// The V_{kl} are Hermitian and traceless by construction for every d, but
/// orthonormality is verified at run time and a failing dimension is
/// rejected with `NonOrthonormal` rather than silently accepted.
pub fn hw_observable_basis(dim: usize) -> Result<AxisBasis> {
    if dim < 2 {
        return Err(Error::BadDimension(dim));
    }
    let mut axes = Vec::with_capacity(dim + 1);
    for alpha in 1..=dim {
        let col = alpha - 1;
        let axis = (0..dim)
            .filter(|&k| k != col)
            .map(|k| hw_observable(dim, k, col))
            .collect::<Result<Vec<_>>>()?;
        axes.push(axis);
    }
    let diag = (1..dim)
        .map(|k| hw_observable(dim, k, k))
        .collect::<Result<Vec<_>>>()?;
    axes.push(diag);
    AxisBasis::new(dim, BasisLabel::HeisenbergWeyl, axes)
}

/// Build a basis from a flat operator list and an index partition into
/// d+1 groups of d−1. All type invariants are verified.
pub fn custom_axis_basis(operators: &[Operator], partition: &[Vec<usize>]) -> Result<AxisBasis> {
    if operators.is_empty() {
        return Err(Error::BadPartition("empty operator list".into()));
    }
    let dim = operators[0].dim();
    if operators.len() != dim * dim - 1 {
        return Err(Error::BadPartition(format!(
            "expected {} operators for dimension {}, got {}",
            dim * dim - 1,
            dim,
            operators.len()
        )));
    }
    let mut seen = vec![false; operators.len()];
    let mut axes = Vec::with_capacity(partition.len());
    for group in partition {
        let mut axis = Vec::with_capacity(group.len());
        for &idx in group {
            if idx >= operators.len() {
                return Err(Error::BadPartition(format!("index {idx} out of range")));
            }
            if seen[idx] {
                return Err(Error::BadPartition(format!("index {idx} used twice")));
            }
            seen[idx] = true;
            axis.push(operators[idx].clone());
        }
        axes.push(axis);
    }
    AxisBasis::new(dim, BasisLabel::Custom, axes)
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Unitary eigenvector families generating the d+1 Weyl mutually unbiased
/// bases, for prime d.
///
/// Axis α is the cyclic group generated by one Weyl operator (the diagonal
/// W_{10}, the shift W_{01}, and the mixed W_{1b}), listed as its powers
/// g, g², …, g^{d−1}. For d = 2 the mixed generator is phase-corrected to
/// σ_y so that every axis element is an involution. The family satisfies
/// U_{α,k}† = U_{α,d−k} and Tr(U U'†) = d·δ, which is the κ = 1
/// normalization expected by [`crate::mum::mums_from_u_operators`].
pub fn weyl_mub_u_family(dim: usize) -> Result<Vec<Vec<Operator>>> {
    if !is_prime(dim) {
        return Err(Error::BadDimension(dim));
    }
    if dim == 2 {
        let [sx, sy, sz] = pauli_matrices();
        return Ok(vec![vec![sz], vec![sx], vec![sy]]);
    }
    let mut generators = vec![weyl_operator(dim, 1, 0)?, weyl_operator(dim, 0, 1)?];
    for b in 1..dim {
        generators.push(weyl_operator(dim, 1, b)?);
    }
    Ok(generators
        .into_iter()
        .map(|g| {
            let mut axis = Vec::with_capacity(dim - 1);
            let mut power = g.clone();
            for _ in 1..dim {
                axis.push(power.clone());
                power = &power * &g;
            }
            axis
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::pauli_matrices;
    use crate::Tolerance;

    #[test]
    fn pauli_axes_are_rescaled_paulis() {
        let basis = pauli_axis_basis();
        let r = 1.0 / 2.0_f64.sqrt();
        for (axis, sigma) in basis.axes().iter().zip(pauli_matrices()) {
            assert_eq!(axis.len(), 1);
            assert!(axis[0].max_abs_diff(&sigma.scaled_re(r)) < 1e-15);
            let n = axis[0].frobenius_inner(&axis[0]).unwrap();
            assert!((n.re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gell_mann_d2_recovers_rescaled_paulis() {
        // Evaluating the σ_{kl} formulas at d = 2 must land on σ_y/√2 (axis
        // 1), σ_x/√2 (axis 2), σ_z/√2 (axis 3) entrywise.
        let basis = gell_mann_basis(2).unwrap();
        let [sx, sy, sz] = pauli_matrices();
        let r = 1.0 / 2.0_f64.sqrt();
        assert!(basis.axes()[0][0].max_abs_diff(&sy.scaled_re(r)) < 1e-15);
        assert!(basis.axes()[1][0].max_abs_diff(&sx.scaled_re(r)) < 1e-15);
        assert!(basis.axes()[2][0].max_abs_diff(&sz.scaled_re(r)) < 1e-15);
    }

    #[test]
    fn gell_mann_diagonal_d3() {
        let s11 = gell_mann_diagonal(3, 1).unwrap();
        let r = 1.0 / 2.0_f64.sqrt();
        let expected = Operator::from_diagonal(&[
            C64::new(r, 0.0),
            C64::new(-r, 0.0),
            ZERO,
        ]);
        assert!(s11.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn gell_mann_counts_and_orthonormality() {
        for d in 2..=6 {
            let basis = gell_mann_basis(d).unwrap();
            let total: usize = basis.axes().iter().map(Vec::len).sum();
            assert_eq!(total, d * d - 1);
        }
    }

    #[test]
    fn weyl_d2_are_pauli_z_and_x() {
        let [sx, _, sz] = pauli_matrices();
        assert!(weyl_operator(2, 1, 0).unwrap().max_abs_diff(&sz) < 1e-15);
        assert!(weyl_operator(2, 0, 1).unwrap().max_abs_diff(&sx) < 1e-15);
    }

    #[test]
    fn weyl_d3_unitarity_and_action() {
        let tol = Tolerance::default();
        for w in weyl_operators(3).unwrap() {
            let gram = &w.adjoint() * &w;
            assert!(gram.max_abs_diff(&Operator::identity(3)) < 1e-12);
            let scale = w.proportional_to_unitary(&tol).unwrap();
            assert!((scale.unwrap() - 1.0).abs() < 1e-12);
        }
        // W_{11}|0⟩ = |1⟩ and W_{11}|1⟩ = ω|2⟩.
        let w11 = weyl_operator(3, 1, 1).unwrap();
        assert!((w11.entry(1, 0) - ONE).norm() < 1e-15);
        assert!((w11.entry(2, 1) - omega_pow(3, 1)).norm() < 1e-15);
    }

    #[test]
    fn weyl_orthogonality() {
        for d in [2usize, 3, 4] {
            let ws = weyl_operators(d).unwrap();
            for (i, a) in ws.iter().enumerate() {
                for (j, b) in ws.iter().enumerate() {
                    let ip = b.adjoint().frobenius_inner(&a.adjoint()).unwrap();
                    let expected = if i == j { d as f64 } else { 0.0 };
                    assert!(
                        (ip - C64::new(expected, 0.0)).norm() < 1e-12,
                        "d={d} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn weyl_composition_phases() {
        // W_{k₁l₁} W_{k₂l₂} = ω^{k₁ l₂} W_{k₁+k₂, l₁+l₂} (indices mod d).
        for d in [2usize, 3, 4] {
            for k1 in 0..d {
                for l1 in 0..d {
                    for k2 in 0..d {
                        for l2 in 0..d {
                            let lhs = &weyl_operator(d, k1, l1).unwrap()
                                * &weyl_operator(d, k2, l2).unwrap();
                            let rhs = weyl_operator(d, (k1 + k2) % d, (l1 + l2) % d)
                                .unwrap()
                                .scaled(omega_pow(d, k1 * l2));
                            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hw_observables_d3() {
        let basis = hw_observable_basis(3).unwrap();
        let total: usize = basis.axes().iter().map(Vec::len).sum();
        assert_eq!(total, 8);

        // V_{11} is the k ≤ l combination of W_{11} and its adjoint.
        let w11 = weyl_operator(3, 1, 1).unwrap();
        let s = 1.0 / (2.0 * 3.0_f64.sqrt());
        let expected = &w11.scaled(C64::new(s, -s)) + &w11.adjoint().scaled(C64::new(s, s));
        let v11 = hw_observable(3, 1, 1).unwrap();
        assert!(v11.max_abs_diff(&expected) < 1e-15);
        // V_{11} sits in the diagonal axis (axis 4, first slot).
        assert!(basis.axes()[3][0].max_abs_diff(&v11) < 1e-15);
    }

    #[test]
    fn hw_observable_basis_other_dims() {
        // The two-branch definition stays orthonormal at least up to d = 5;
        // the constructor verifies rather than assumes.
        for d in [2usize, 4, 5] {
            assert!(hw_observable_basis(d).is_ok(), "d = {d}");
        }
    }

    #[test]
    fn custom_round_trips_gell_mann() {
        let gm = gell_mann_basis(3).unwrap();
        let flat: Vec<Operator> = gm.axes().iter().flatten().cloned().collect();
        let partition: Vec<Vec<usize>> = (0..4).map(|a| vec![2 * a, 2 * a + 1]).collect();
        let rebuilt = custom_axis_basis(&flat, &partition).unwrap();
        for (axis, orig) in rebuilt.axes().iter().zip(gm.axes()) {
            for (op, expected) in axis.iter().zip(orig) {
                assert!(op.max_abs_diff(expected) < 1e-15);
            }
        }
    }

    #[test]
    fn custom_rejects_bad_partition() {
        let gm = gell_mann_basis(3).unwrap();
        let flat: Vec<Operator> = gm.axes().iter().flatten().cloned().collect();
        let bad = vec![vec![0, 1, 2], vec![3], vec![4, 5], vec![6, 7]];
        assert!(matches!(
            custom_axis_basis(&flat, &bad),
            Err(Error::BadPartition(_))
        ));
    }

    #[test]
    fn custom_rejects_identity_component() {
        let gm = gell_mann_basis(3).unwrap();
        let mut flat: Vec<Operator> = gm.axes().iter().flatten().cloned().collect();
        flat[0] = Operator::identity(3).scaled_re(1.0 / 3.0_f64.sqrt());
        let partition: Vec<Vec<usize>> = (0..4).map(|a| vec![2 * a, 2 * a + 1]).collect();
        assert!(matches!(
            custom_axis_basis(&flat, &partition),
            Err(Error::NonTraceless { .. })
        ));
    }

    #[test]
    fn weyl_mub_family_layout() {
        let fam2 = weyl_mub_u_family(2).unwrap();
        assert_eq!(fam2.len(), 3);
        let [sx, sy, sz] = pauli_matrices();
        assert!(fam2[0][0].max_abs_diff(&sz) < 1e-15);
        assert!(fam2[1][0].max_abs_diff(&sx) < 1e-15);
        assert!(fam2[2][0].max_abs_diff(&sy) < 1e-15);

        let fam3 = weyl_mub_u_family(3).unwrap();
        assert_eq!(fam3.len(), 4);
        for axis in &fam3 {
            assert_eq!(axis.len(), 2);
            // U† = U_{d−k} within the axis.
            assert!(axis[0].adjoint().max_abs_diff(&axis[1]) < 1e-12);
        }

        assert!(matches!(weyl_mub_u_family(4), Err(Error::BadDimension(4))));
    }
}
