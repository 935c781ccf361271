//! Dense complex-matrix substrate shared by every other module.
//!
//! Everything in this crate is a small (d ≤ ~16) square matrix over
//! `Complex<f64>`: states, POVM effects, channel eigenvectors, Choi matrices.
//! [`Operator`] wraps `nalgebra::DMatrix` and adds the handful of predicates
//! the measurement and channel layers need — Hermitian eigensystems, PSD
//! tests, Frobenius inner products, Kronecker products, and a
//! proportional-to-unitary test.
//!
//! All eigendecompositions assume Hermitian input; the crate never needs
//! non-Hermitian spectra.

use nalgebra::DMatrix;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result, Tolerance};

/// Double-precision complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense `d × d` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    mat: DMatrix<C64>,
}

impl Operator {
    /// Wrap a square matrix.
    pub fn from_matrix(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        Ok(Operator { mat })
    }

    /// Build entrywise from a closure over (row, col).
    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Operator {
            mat: DMatrix::from_fn(dim, dim, f),
        }
    }

    /// Build from row-major nested entries; every row must have length `dim`.
    pub fn from_entries(entries: &[Vec<C64>]) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 || entries.iter().any(|row| row.len() != dim) {
            return Err(Error::NotSquare {
                rows: dim,
                cols: entries.first().map_or(0, Vec::len),
            });
        }
        Ok(Operator::from_fn(dim, |i, j| entries[i][j]))
    }

    pub fn zeros(dim: usize) -> Self {
        Operator {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Operator {
            mat: DMatrix::identity(dim, dim),
        }
    }

    /// The matrix unit |i⟩⟨j|.
    pub fn ket_bra(dim: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(i, j)] = ONE;
        Operator { mat: m }
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        Operator::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { ZERO })
    }

    /// Projector |ψ⟩⟨ψ| onto a (not necessarily normalized) vector.
    pub fn projector(psi: &[C64]) -> Self {
        let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        Operator::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj() / norm_sq)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Operator {
        Operator {
            mat: self.mat.adjoint(),
        }
    }

    pub fn transpose(&self) -> Operator {
        Operator {
            mat: self.mat.transpose(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn scaled(&self, c: C64) -> Operator {
        Operator {
            mat: self.mat.clone() * c,
        }
    }

    pub fn scaled_re(&self, c: f64) -> Operator {
        self.scaled(C64::new(c, 0.0))
    }

    /// Hilbert-Schmidt inner product Tr(A†B).
    pub fn frobenius_inner(&self, other: &Operator) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise |a_ij − b_ij|; panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff: dimension mismatch");
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Kronecker product; the right factor varies fastest.
    pub fn kron(&self, other: &Operator) -> Operator {
        Operator {
            mat: self.mat.kronecker(&other.mat),
        }
    }

    /// Transpose the second tensor factor of an operator on a
    /// `dim_a · dim_b` dimensional product space.
    pub fn partial_transpose_second(&self, dim_a: usize, dim_b: usize) -> Result<Operator> {
        if dim_a * dim_b != self.dim() {
            return Err(Error::DimMismatch {
                left: dim_a * dim_b,
                right: self.dim(),
            });
        }
        Ok(Operator::from_fn(self.dim(), |r, c| {
            let (i, a) = (r / dim_b, r % dim_b);
            let (j, b) = (c / dim_b, c % dim_b);
            self.mat[(i * dim_b + b, j * dim_b + a)]
        }))
    }

    /// ‖A − A†‖_F / max(1, ‖A‖_F).
    pub fn hermitian_deviation(&self) -> f64 {
        let dev = (self - &self.adjoint()).frobenius_norm();
        dev / f64::max(1.0, self.frobenius_norm())
    }

    pub fn is_hermitian(&self, tol: &Tolerance) -> bool {
        self.hermitian_deviation() <= tol.eq_tol
    }

    fn require_hermitian(&self, tol: &Tolerance) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev > tol.eq_tol {
            return Err(Error::NonHermitianInput { deviation: dev });
        }
        Ok(())
    }

    /// Eigensystem of a Hermitian operator.
    ///
    /// Eigenvalues come back ascending; the columns of the returned operator
    /// are the matching orthonormal eigenvectors.
    pub fn hermitian_eigensystem(&self, tol: &Tolerance) -> Result<(Vec<f64>, Operator)> {
        self.require_hermitian(tol)?;
        let eig = self.mat.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = Operator::from_fn(self.dim(), |i, j| eig.eigenvectors[(i, order[j])]);
        Ok((eigenvalues, vectors))
    }

    /// Eigenvalues only (ascending), Hermitian input.
    pub fn hermitian_eigenvalues(&self, tol: &Tolerance) -> Result<Vec<f64>> {
        self.require_hermitian(tol)?;
        let mut vals: Vec<f64> = self.mat.clone().symmetric_eigenvalues().iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        Ok(vals)
    }

    pub fn min_eigenvalue(&self, tol: &Tolerance) -> Result<f64> {
        Ok(self.hermitian_eigenvalues(tol)?[0])
    }

    /// PSD within `psd_tol`: smallest eigenvalue ≥ −psd_tol.
    pub fn is_psd(&self, tol: &Tolerance) -> Result<bool> {
        Ok(self.min_eigenvalue(tol)? >= -tol.psd_tol)
    }

    /// If `A = c·U` for a positive scale `c` and unitary `U`, return `c`.
    ///
    /// Tests whether A†A is proportional to the identity; returns the scale
    /// when it is, `None` otherwise, and `ZeroOperator` on numerically zero
    /// input.
    pub fn proportional_to_unitary(&self, tol: &Tolerance) -> Result<Option<f64>> {
        let norm = self.frobenius_norm();
        if norm <= tol.eq_tol {
            return Err(Error::ZeroOperator);
        }
        let gram = &self.adjoint() * self;
        let c_sq = gram.trace().re / self.dim() as f64;
        if c_sq <= 0.0 {
            return Ok(None);
        }
        let target = Operator::identity(self.dim()).scaled_re(c_sq);
        if (&gram - &target).frobenius_norm() <= tol.eq_tol * f64::max(1.0, c_sq) {
            Ok(Some(c_sq.sqrt()))
        } else {
            Ok(None)
        }
    }

    /// If `A = z·B` for a complex scalar `z`, return `z`.
    pub fn proportional_to(&self, other: &Operator, tol: &Tolerance) -> Option<C64> {
        let denom = other.frobenius_norm().powi(2);
        if denom <= tol.eq_tol {
            return None;
        }
        let z = other.frobenius_inner(self).ok()? / denom;
        if (self - &other.scaled(z)).frobenius_norm()
            <= tol.eq_tol * f64::max(1.0, self.frobenius_norm())
        {
            Some(z)
        } else {
            None
        }
    }

    /// ‖[A, B]‖_F.
    pub fn commutator_norm(&self, other: &Operator) -> f64 {
        (&(self * other) - &(other * self)).frobenius_norm()
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator {
            mat: &self.mat * &rhs.mat,
        }
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator {
            mat: -self.mat.clone(),
        }
    }
}

// JSON form: {"dim": d, "entries": [[[re, im], ...], ...]} row-major.
#[derive(Serialize, Deserialize)]
struct MatrixLiteral {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for Operator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| {
                        let z = self.entry(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixLiteral {
            dim: self.dim(),
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Operator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let lit = MatrixLiteral::deserialize(deserializer)?;
        if lit.entries.len() != lit.dim || lit.entries.iter().any(|row| row.len() != lit.dim) {
            return Err(D::Error::custom(format!(
                "entries array is not {0}x{0}",
                lit.dim
            )));
        }
        Ok(Operator::from_fn(lit.dim, |i, j| {
            C64::new(lit.entries[i][j][0], lit.entries[i][j][1])
        }))
    }
}

/// The three Pauli matrices (x, y, z order).
pub fn pauli_matrices() -> [Operator; 3] {
    let i = C64::i();
    [
        Operator::from_entries(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap(),
        Operator::from_entries(&[vec![ZERO, -i], vec![i, ZERO]]).unwrap(),
        Operator::from_entries(&[vec![ONE, ZERO], vec![ZERO, -ONE]]).unwrap(),
    ]
}
