//! Dense complex operators and kets.
//!
//! Matrices are stored row-major. Everything here is small (dim ≤ 16 in practice),
//! so the arithmetic is the textbook triple loop.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute elementwise tolerance used for every equality and validity test.
pub const EPS: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Wire form of a complex number: `[re, im]`.
type WireComplex = [f64; 2];

fn to_wire(z: Complex64) -> WireComplex {
    [z.re, z.im]
}

fn from_wire(w: WireComplex) -> Complex64 {
    Complex64::new(w[0], w[1])
}

/// Square matrix of complex amplitudes.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<WireComplex>>", into = "Vec<Vec<WireComplex>>")]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. `data.len()` must be `dim * dim`.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::NotSquare {
                rows: dim,
                cols: data.len().checked_div(dim).unwrap_or(0),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend(row);
        }
        Self::new(dim, data)
    }

    /// Real-valued convenience constructor, mostly for tests and fixed operators.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        Self { dim: n, data }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest absolute elementwise difference. Panics on a dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Elementwise equality within `tol`. Matrices of different dimension are never equal.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    /// Product that reports a dimension mismatch instead of panicking.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        Ok(Self { dim: n, data })
    }

    /// `trace(self · rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Result<Complex64> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let n = self.dim;
        let mut acc = ZERO;
        for r in 0..n {
            for k in 0..n {
                acc += self.data[r * n + k] * rhs.data[k * n + r];
            }
        }
        Ok(acc)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let n = self.dim;
        let herm = DMatrix::from_fn(n, n, |r, c| (self.get(r, c) + self.get(c, r).conj()) * 0.5);
        let mut values: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// Checks that the matrix is a density operator: Hermitian within [`EPS`], unit
    /// trace within [`EPS`] and no eigenvalue below `-psd_tol`.
    pub fn validate_density(&self, psd_tol: f64) -> Result<()> {
        if !self.is_hermitian(EPS) {
            return Err(Error::InvalidDensity("not Hermitian".into()));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > EPS {
            return Err(Error::NonUnitTrace(tr.re));
        }
        let min = self.hermitian_eigenvalues()[0];
        if min < -psd_tol {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl TryFrom<Vec<Vec<WireComplex>>> for ComplexMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<WireComplex>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(from_wire).collect())
                .collect(),
        )
    }
}

impl From<ComplexMatrix> for Vec<Vec<WireComplex>> {
    fn from(m: ComplexMatrix) -> Self {
        (0..m.dim)
            .map(|r| m.row(r).iter().copied().map(to_wire).collect())
            .collect()
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("dimension mismatch")
    }
}

/// Column vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<WireComplex>", into = "Vec<WireComplex>")]
pub struct Ket {
    amplitudes: Vec<Complex64>,
}

impl Ket {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidKet("no amplitudes".into()));
        }
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= EPS
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rescales to unit norm. Fails for the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm <= EPS {
            return Err(Error::InvalidKet("zero vector cannot be normalized".into()));
        }
        Ok(Self {
            amplitudes: self.amplitudes.iter().map(|a| a / norm).collect(),
        })
    }

    /// Applies the global phase that makes the first non-negligible amplitude real
    /// and non-negative.
    pub fn with_canonical_phase(&self) -> Self {
        let Some(lead) = self.amplitudes.iter().find(|a| a.norm() > EPS) else {
            return self.clone();
        };
        let phase = lead.conj() / lead.norm();
        let mut amplitudes: Vec<Complex64> = self.amplitudes.iter().map(|a| a * phase).collect();
        // Pin the leading amplitude to the real axis exactly.
        if let Some(first) = amplitudes.iter_mut().find(|a| a.norm() > EPS) {
            *first = Complex64::new(first.norm(), 0.0);
        }
        Self { amplitudes }
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(self.amplitudes[r] * self.amplitudes[c].conj());
            }
        }
        ComplexMatrix { dim: n, data }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor(&self, other: &Ket) -> Ket {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ket { amplitudes }
    }

    /// Recovers `|v⟩` from a rank-1 projector `|v⟩⟨v|`, in canonical phase.
    ///
    /// The column through the largest diagonal entry is proportional to `|v⟩`; this is
    /// the largest-eigenvalue eigenvector without running an eigensolver.
    pub fn from_rank_one_projector(p: &ComplexMatrix) -> Result<Self> {
        if !is_projector(p) || (p.trace() - ONE).norm() > EPS {
            return Err(Error::NotRankOneProjector(
                "expected Hermitian idempotent with unit trace".into(),
            ));
        }
        let (pivot, weight) =
            (0..p.dim())
                .map(|i| (i, p.get(i, i).re))
                .fold((0, f64::NEG_INFINITY), |best, cur| {
                    if cur.1 > best.1 {
                        cur
                    } else {
                        best
                    }
                });
        let scale = weight.sqrt();
        let amplitudes = p.column(pivot).into_iter().map(|z| z / scale).collect();
        Ok(Ket { amplitudes }.with_canonical_phase())
    }
}

impl TryFrom<Vec<WireComplex>> for Ket {
    type Error = Error;

    fn try_from(amps: Vec<WireComplex>) -> Result<Self> {
        Self::new(amps.into_iter().map(from_wire).collect())
    }
}

impl From<Ket> for Vec<WireComplex> {
    fn from(k: Ket) -> Self {
        k.amplitudes.into_iter().map(to_wire).collect()
    }
}

/// Kronecker product; `a` is the leftmost (most significant) factor.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut data = vec![ZERO; n * n];
    for ar in 0..na {
        for ac in 0..na {
            let x = a.data[ar * na + ac];
            if x == ZERO {
                continue;
            }
            for br in 0..nb {
                for bc in 0..nb {
                    data[(ar * nb + br) * n + ac * nb + bc] = x * b.data[br * nb + bc];
                }
            }
        }
    }
    ComplexMatrix { dim: n, data }
}

/// `½(ab + ba)`.
pub fn symmetric_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ab = a.try_mul(b)?;
    let ba = b.try_mul(a)?;
    Ok((&ab + &ba).scale_real(0.5))
}

/// Hermitian and idempotent within [`EPS`].
pub fn is_projector(m: &ComplexMatrix) -> bool {
    m.is_hermitian(EPS) && (m * m).approx_eq(m, EPS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[c(1.0), c(-1.0)])
    }

    fn half_plus(m: &ComplexMatrix) -> ComplexMatrix {
        (&ComplexMatrix::identity(2) + m).scale_real(0.5)
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0]]).unwrap_err();
        assert!(matches!(err, Error::NotSquare { .. }));
        assert!(ComplexMatrix::new(0, vec![]).is_err());
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_zz_is_diagonal() {
        let zz = tensor(&pauli_z(), &pauli_z());
        let expected = ComplexMatrix::diagonal(&[c(1.0), c(-1.0), c(-1.0), c(1.0)]);
        assert_eq!(zz, expected);
    }

    #[test]
    fn tensor_of_projectors_is_a_state() {
        let rho = tensor(&half_plus(&pauli_z()), &half_plus(&pauli_x()));
        assert_eq!(rho.dim(), 4);
        assert!((rho.trace() - c(1.0)).norm() <= EPS);
        assert!(rho.is_hermitian(EPS));
        assert!(rho.hermitian_eigenvalues().iter().all(|&v| v >= -1e-12));
    }

    #[test]
    fn tensor_left_factor_is_most_significant() {
        // X ⊗ I flips the first qubit: |00⟩ -> |10⟩, i.e. basis index 0 -> 2.
        let xi = tensor(&pauli_x(), &ComplexMatrix::identity(2));
        assert_eq!(xi.get(2, 0), c(1.0));
        assert_eq!(xi.get(1, 0), c(0.0));
    }

    #[test]
    fn symmetric_product_of_commuting_is_product() {
        let a = ComplexMatrix::diagonal(&[c(2.0), c(3.0)]);
        let b = ComplexMatrix::diagonal(&[c(-1.0), c(5.0)]);
        assert_eq!(symmetric_product(&a, &b).unwrap(), &a * &b);
    }

    #[test]
    fn symmetric_product_of_projector_with_itself() {
        let p = half_plus(&pauli_x());
        assert!(symmetric_product(&p, &p).unwrap().approx_eq(&p, EPS));
    }

    #[test]
    fn symmetric_product_zero_plus() {
        // ½(Π₀Π₊ + Π₊Π₀) = ¼(I + X + Z) because XZ + ZX = 0.
        let got = symmetric_product(&half_plus(&pauli_z()), &half_plus(&pauli_x())).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.5, 0.25], &[0.25, 0.0]]).unwrap();
        assert!(got.approx_eq(&expected, EPS), "{got:?}");
    }

    #[test]
    fn symmetric_product_dimension_mismatch() {
        let err = symmetric_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(4));
        assert_eq!(
            err.unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                found: 4
            }
        );
    }

    #[test]
    fn projector_checks() {
        assert!(is_projector(&half_plus(&pauli_z())));
        assert!(is_projector(&ComplexMatrix::identity(3)));
        let not = (&(&ComplexMatrix::identity(2) + &pauli_x()) + &pauli_z()).scale_real(0.5);
        assert!(!is_projector(&not));
        // It squares to ¾I + ½X + ½Z.
        let sq = &not * &not;
        let expected = ComplexMatrix::from_real_rows(&[&[1.25, 0.5], &[0.5, 0.25]]).unwrap();
        assert!(sq.approx_eq(&expected, EPS));
    }

    #[test]
    fn canonical_phase_makes_leading_amplitude_real() {
        let i = Complex64::new(0.0, 1.0);
        let k = Ket::new(vec![
            c(0.0),
            i * std::f64::consts::FRAC_1_SQRT_2,
            c(-std::f64::consts::FRAC_1_SQRT_2),
        ])
        .unwrap();
        let canon = k.with_canonical_phase();
        assert_eq!(canon.amplitudes()[0], c(0.0));
        assert_eq!(canon.amplitudes()[1].im, 0.0);
        assert!(canon.amplitudes()[1].re > 0.0);
        assert!((canon.amplitudes()[2] - i * std::f64::consts::FRAC_1_SQRT_2).norm() <= EPS);
    }

    #[test]
    fn rank_one_factorization_recovers_ket() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let k = Ket::new(vec![c(0.0), Complex64::new(0.0, s), c(0.0), c(-s)]).unwrap();
        let back = Ket::from_rank_one_projector(&k.projector()).unwrap();
        assert!(back.projector().approx_eq(&k.projector(), EPS));
        let canon = k.with_canonical_phase();
        for (a, b) in back.amplitudes().iter().zip(canon.amplitudes()) {
            assert!((a - b).norm() <= EPS);
        }
        assert_eq!(back.amplitudes()[1].im, 0.0);
        assert!(Ket::from_rank_one_projector(&ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn eigenvalues_of_non_positive_symmetric_product() {
        let m = ComplexMatrix::from_real_rows(&[&[0.5, 0.25], &[0.25, 0.0]]).unwrap();
        let ev = m.hermitian_eigenvalues();
        let s2 = 2f64.sqrt();
        assert!((ev[0] - (1.0 - s2) / 4.0).abs() < 1e-12);
        assert!((ev[1] - (1.0 + s2) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn density_validation() {
        assert!(half_plus(&pauli_z()).validate_density(1e-10).is_ok());
        assert!(matches!(
            ComplexMatrix::identity(2).validate_density(1e-10),
            Err(Error::NonUnitTrace(_))
        ));
        let indefinite = ComplexMatrix::from_real_rows(&[&[0.5, 0.25], &[0.25, 0.5]]).unwrap();
        assert!(indefinite.validate_density(1e-10).is_ok());
        let negative = ComplexMatrix::from_real_rows(&[&[1.5, 0.0], &[0.0, -0.5]]).unwrap();
        assert!(matches!(
            negative.validate_density(1e-10),
            Err(Error::InvalidDensity(_))
        ));
    }

    #[test]
    fn json_encoding() {
        let m = ComplexMatrix::new(
            2,
            vec![
                c(1.0),
                Complex64::new(0.0, -0.5),
                Complex64::new(0.0, 0.5),
                c(0.0),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, "[[[1.0,0.0],[0.0,-0.5]],[[0.0,0.5],[0.0,0.0]]]");
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ComplexMatrix>("[[[1,0],[0,0]]]").is_err());

        let k: Ket = serde_json::from_str("[[0.6,0],[0,0.8]]").unwrap();
        assert!(k.is_normalized());
        assert_eq!(serde_json::to_string(&k).unwrap(), "[[0.6,0.0],[0.0,0.8]]");
    }
}
