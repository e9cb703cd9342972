//! Sub-ensemble decomposition of a density operator over a rank-1 measurement basis.
//!
//! For outcomes `|f⟩` the terms `R_f = ½(ρΠ_f + Π_fρ)` sum to ρ and have trace
//! `⟨f|ρ|f⟩`. Projecting `R_a` onto a second basis gives the Margenau–Hill joint
//! quasi-probability `q(a,b) = Re trace(Π_b Π_a ρ)`, whose marginals are the Born
//! distributions of either basis but whose entries can be negative.

use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::operator::{is_projector, symmetric_product, tensor, ComplexMatrix, Ket, EPS};
use crate::states::{standard_ket, BasisLabel};

/// Eigenvalue floor for accepting a density matrix. Looser than [`EPS`] to absorb
/// eigensolver round-off.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// Complete orthonormal set of rank-1 outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    name: Option<String>,
    labels: Vec<String>,
    vectors: Vec<Ket>,
    projectors: Vec<ComplexMatrix>,
}

impl MeasurementBasis {
    /// Validates orthonormality and completeness within [`EPS`]. Outcomes are
    /// labelled by their index.
    pub fn new(vectors: Vec<Ket>) -> Result<Self> {
        let labels = (0..vectors.len()).map(|i| i.to_string()).collect();
        Self::with_labels(vectors, labels)
    }

    pub fn with_labels(vectors: Vec<Ket>, labels: Vec<String>) -> Result<Self> {
        let dim = vectors.first().map(Ket::dim).unwrap_or(0);
        if dim == 0 {
            return Err(Error::InvalidBasis("empty basis".into()));
        }
        if vectors.len() != dim {
            return Err(Error::InvalidBasis(format!(
                "{} vectors for dimension {dim}",
                vectors.len()
            )));
        }
        if labels.len() != dim {
            return Err(Error::InvalidBasis(format!(
                "{} labels for {dim} outcomes",
                labels.len()
            )));
        }
        if let Some(k) = vectors.iter().find(|k| k.dim() != dim) {
            return Err(Error::InvalidBasis(format!(
                "mixed dimensions {dim} and {}",
                k.dim()
            )));
        }
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate().skip(i) {
                let expected = if i == j { 1.0 } else { 0.0 };
                let overlap = u.inner(v);
                if (overlap.re - expected).abs() > EPS || overlap.im.abs() > EPS {
                    return Err(Error::InvalidBasis(format!(
                        "<{i}|{j}> = {overlap}, expected {expected}"
                    )));
                }
            }
        }
        let projectors: Vec<ComplexMatrix> = vectors.iter().map(Ket::projector).collect();
        let completeness = projectors
            .iter()
            .fold(ComplexMatrix::zeros(dim), |acc, p| &acc + p);
        if !completeness.approx_eq(&ComplexMatrix::identity(dim), EPS) {
            return Err(Error::InvalidBasis(
                "projectors do not sum to identity".into(),
            ));
        }
        Ok(Self {
            name: None,
            labels,
            vectors,
            projectors,
        })
    }

    /// Product basis named by a string over `Z` and `X`, one letter per qubit.
    /// `Z` has outcomes `0`, `1`; `X` has `+`, `-`; labels concatenate.
    pub fn named(name: &str) -> Result<Self> {
        let factors: Vec<[BasisLabel; 2]> = name
            .chars()
            .map(|c| match c {
                'Z' => Ok([BasisLabel::Zero, BasisLabel::One]),
                'X' => Ok([BasisLabel::Plus, BasisLabel::Minus]),
                _ => Err(Error::UnknownLabel(name.to_string())),
            })
            .collect::<Result<_>>()?;
        if factors.is_empty() {
            return Err(Error::UnknownLabel(name.to_string()));
        }
        let mut outcomes: Vec<Vec<BasisLabel>> = vec![Vec::new()];
        for pair in factors {
            outcomes = outcomes
                .into_iter()
                .flat_map(|prefix| {
                    pair.iter().map(move |&b| {
                        let mut next = prefix.clone();
                        next.push(b);
                        next
                    })
                })
                .collect();
        }
        let labels = outcomes
            .iter()
            .map(|o| o.iter().map(|b| b.symbol()).collect())
            .collect();
        let vectors = outcomes
            .iter()
            .map(|o| {
                o[1..]
                    .iter()
                    .fold(standard_ket(o[0]), |k, &b| k.tensor(&standard_ket(b)))
            })
            .collect();
        let mut basis = Self::with_labels(vectors, labels)?;
        // Pauli-form projectors are exact in binary; ket outer products pick up
        // rounding from 1/√2.
        basis.projectors = outcomes
            .iter()
            .map(|o| {
                let factors: Vec<ComplexMatrix> = o.iter().map(|b| b.projector()).collect();
                product_assignment(&factors)
            })
            .collect();
        basis.name = Some(name.to_string());
        Ok(basis)
    }

    /// Tags the basis with a name used in place of its vectors when serialized.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vectors(&self) -> &[Ket] {
        &self.vectors
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// Born probabilities `⟨f|ρ|f⟩`.
    pub fn born_probabilities(&self, rho: &ComplexMatrix) -> Result<Vec<f64>> {
        self.check_dim(rho)?;
        self.projectors()
            .iter()
            .map(|p| Ok(p.trace_product(rho)?.re))
            .collect()
    }

    fn check_dim(&self, m: &ComplexMatrix) -> Result<()> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        Ok(())
    }
}

impl Serialize for MeasurementBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.name {
            Some(name) => s.serialize_str(name),
            None => self.vectors.serialize(s),
        }
    }
}

/// One term `R_f` of the decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SubensembleOperator {
    pub outcome_index: usize,
    pub label: String,
    pub operator: ComplexMatrix,
    /// `trace(R_f)`, equal to the Born probability of `f`.
    pub weight: f64,
}

/// `R_f = ½(ρ|f⟩⟨f| + |f⟩⟨f|ρ)` for every outcome of `basis`.
pub fn decompose(
    rho: &ComplexMatrix,
    basis: &MeasurementBasis,
) -> Result<Vec<SubensembleOperator>> {
    basis.check_dim(rho)?;
    rho.validate_density(PSD_TOLERANCE)?;
    basis
        .projectors
        .iter()
        .zip(&basis.labels)
        .enumerate()
        .map(|(outcome_index, (p, label))| {
            let operator = symmetric_product(rho, p)?;
            let weight = operator.trace().re;
            Ok(SubensembleOperator {
                outcome_index,
                label: label.clone(),
                operator,
                weight,
            })
        })
        .collect()
}

/// Trace-normalized symmetric product of two rank-1 projectors: the operator for
/// assigning both outcomes at once. For a Z eigenstate and an X eigenstate this
/// is `½(I ± X ± Z)`.
pub fn assignment_operator(pa: &ComplexMatrix, pb: &ComplexMatrix) -> Result<ComplexMatrix> {
    if pa.dim() != pb.dim() {
        return Err(Error::DimensionMismatch {
            expected: pa.dim(),
            found: pb.dim(),
        });
    }
    for p in [pa, pb] {
        if !is_projector(p) || (p.trace().re - 1.0).abs() > EPS {
            return Err(Error::NotRankOneProjector(
                "assignment needs rank-1 projectors".into(),
            ));
        }
    }
    let s = symmetric_product(pa, pb)?;
    let weight = s.trace().re;
    if weight <= EPS {
        return Err(Error::OrthogonalProjectors(weight));
    }
    Ok(s.scale_real(1.0 / weight))
}

/// Margenau–Hill joint quasi-probabilities over two bases.
#[derive(Debug, Clone, PartialEq)]
pub struct JointQuasiDistribution {
    pub basis_a: MeasurementBasis,
    pub basis_b: MeasurementBasis,
    /// `q[a][b]`.
    pub q: Vec<Vec<f64>>,
}

impl JointQuasiDistribution {
    /// `Σ_b q(a,b)` for each `a`.
    pub fn marginal_a(&self) -> Vec<f64> {
        self.q.iter().map(|row| row.iter().sum()).collect()
    }

    /// `Σ_a q(a,b)` for each `b`.
    pub fn marginal_b(&self) -> Vec<f64> {
        (0..self.basis_b.dim())
            .map(|b| self.q.iter().map(|row| row[b]).sum())
            .collect()
    }

    pub fn total(&self) -> f64 {
        self.q.iter().flatten().sum()
    }

    pub fn negativity(&self) -> f64 {
        negativity_of(self.q.iter().flatten().copied())
    }

    /// CSV with the B outcome labels as the header row and A labels leading each row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "a\\b,{}", self.basis_b.labels().join(","));
        for (label, row) in self.basis_a.labels().iter().zip(&self.q) {
            let cells: Vec<String> = row.iter().map(|x| format!("{}", x + 0.0)).collect();
            let _ = writeln!(out, "{label},{}", cells.join(","));
        }
        out
    }
}

impl Serialize for JointQuasiDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("JointQuasiDistribution", 3)?;
        st.serialize_field("basisA", &self.basis_a)?;
        st.serialize_field("basisB", &self.basis_b)?;
        st.serialize_field("q", &self.q)?;
        st.end()
    }
}

/// `q(a,b) = trace(Π_b R_a)` with `R_a` from [`decompose`] over `basis_a`.
pub fn mh_joint(
    rho: &ComplexMatrix,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> Result<JointQuasiDistribution> {
    basis_b.check_dim(rho)?;
    let parts = decompose(rho, basis_a)?;
    let projectors_b = basis_b.projectors();
    let q = parts
        .iter()
        .map(|r| {
            projectors_b
                .iter()
                .map(|pb| Ok(pb.trace_product(&r.operator)?.re))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(JointQuasiDistribution {
        basis_a: basis_a.clone(),
        basis_b: basis_b.clone(),
        q,
    })
}

/// Total magnitude of the negative entries of `d`.
pub fn negativity(d: &JointQuasiDistribution) -> f64 {
    d.negativity()
}

/// `Σ max(0, -x)` over the values.
pub fn negativity_of<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().map(|x| (-x).max(0.0)).sum()
}

/// Tensor product of single-system operators, leftmost first, e.g. `R(0+) ⊗ R(0-)`.
pub fn product_assignment(parts: &[ComplexMatrix]) -> ComplexMatrix {
    let mut iter = parts.iter();
    let first = iter.next().expect("at least one factor").clone();
    iter.fold(first, |acc, m| tensor(&acc, m))
}
