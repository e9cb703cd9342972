//! Sub-ensemble decompositions of quantum states over measurement bases.
//!
//! A density operator ρ can be written as a mixture over the outcomes `f` of any
//! rank-1 projective measurement by the symmetric products
//! `R_f = ½(ρ|f⟩⟨f| + |f⟩⟨f|ρ)`. The terms are Hermitian and their traces are the
//! Born probabilities, but they are generally not positive semidefinite, so the
//! joint quasi-probabilities they induce (the Margenau–Hill distribution) can be
//! negative.
//!
//! The crate is organised bottom-up:
//!
//! * [`operator`]: dense complex matrices and kets.
//! * [`pauli`]: n-qubit Pauli strings and real Pauli expansions.
//! * [`states`]: qubit kets, Bloch vectors and the two-system product preparations.
//! * [`subensemble`]: decompositions, eigenvalue-assignment operators, joint
//!   quasi-distributions and their negativity.
//! * [`scenario`]: the four-outcome entangled measurement that excludes one product
//!   preparation per outcome, with the per-sub-ensemble contribution tables.

pub mod error;
pub mod numfmt;
pub mod operator;
pub mod pauli;
pub mod scenario;
pub mod states;
pub mod subensemble;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use operator::{is_projector, symmetric_product, tensor, ComplexMatrix, Ket, EPS};
pub use pauli::{pauli_expand, pauli_synthesize, Pauli, PauliExpansion, PauliString};
pub use scenario::{
    contribution_table, eta_basis, eta_expansion, eta_projector, outcome_probability,
    verify_paradox, verify_paradox_with, ContributionTable, EtaBasis, ParadoxReport,
};
pub use states::{
    bloch_to_density, density_to_bloch, pbr_input, standard_ket, BasisLabel, BlochVector,
    InputPair, PreparationLabel, ProductPreparation,
};
pub use subensemble::{
    assignment_operator, decompose, mh_joint, negativity, JointQuasiDistribution, MeasurementBasis,
    SubensembleOperator,
};
