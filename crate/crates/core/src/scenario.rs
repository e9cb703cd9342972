//! The two-system exclusion scenario.
//!
//! Two qubits are each prepared in `|0⟩` or `|+⟩` and measured in a basis of four
//! entangled states `η₁…η₄`. Every outcome has zero probability for exactly one
//! of the four product inputs. Decomposing each single-system preparation into
//! trace-1 eigenvalue-assignment operators (`|0⟩ = ½R(0+) + ½R(0-)`,
//! `|+⟩ = ½R(0+) + ½R(1+)`) splits every input into four sub-ensembles, one of
//! which, `(0+;0+)`, is shared by all inputs. The zero outcomes come from negative
//! contributions of the other sub-ensembles cancelling the shared one.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numfmt::format_sig;
use crate::operator::{is_projector, ComplexMatrix, Ket, EPS};
use crate::pauli::{pauli_synthesize, PauliExpansion};
use crate::states::{pbr_input, BasisLabel, InputPair, PreparationLabel};
use crate::subensemble::{assignment_operator, product_assignment, MeasurementBasis};

/// Pauli coefficients of the four outcome projectors, normalized to trace 1.
pub const ETA_TERMS: [[(&str, f64); 4]; 4] = [
    [("II", 0.25), ("XX", 0.25), ("ZZ", -0.25), ("YY", 0.25)],
    [("II", 0.25), ("XZ", 0.25), ("ZX", -0.25), ("YY", -0.25)],
    [("II", 0.25), ("XZ", -0.25), ("ZX", 0.25), ("YY", -0.25)],
    [("II", 0.25), ("XX", -0.25), ("ZZ", 0.25), ("YY", 0.25)],
];

/// Outcome 1 excludes `00`; the other exclusions are derived.
pub const ANCHOR_EXCLUSION: (usize, InputPair) = (1, InputPair::ALL[0]);

/// Printed contributions for input `00`, rows `(0+;0+)`, `(0+;0-)`, `(0-;0+)`, `(0-;0-)`.
pub const REFERENCE_TABLE_00: [[f64; 4]; 4] = [
    [0.25, 0.25, 0.25, 0.25],
    [-0.25, 0.75, -0.25, 0.75],
    [-0.25, -0.25, 0.75, 0.75],
    [0.25, 0.25, 0.25, 0.25],
];

fn check_index(i: usize) -> Result<usize> {
    if (1..=4).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::IndexOutOfRange(i))
    }
}

/// Pauli expansion of outcome `i` (1-based).
pub fn eta_expansion(i: usize) -> Result<PauliExpansion> {
    PauliExpansion::from_terms(2, ETA_TERMS[check_index(i)?])
}

pub fn eta_expansions() -> [PauliExpansion; 4] {
    [1, 2, 3, 4].map(|i| eta_expansion(i).expect("static terms"))
}

/// `|η_i⟩⟨η_i|` as a 4×4 matrix.
pub fn eta_projector(i: usize) -> Result<ComplexMatrix> {
    Ok(pauli_synthesize(&eta_expansion(i)?))
}

/// `trace(Π · ρ(a)⊗ρ(b))` clamped to `[0, 1]`.
fn born(projector: &ComplexMatrix, input: InputPair) -> f64 {
    raw_born(projector, input).clamp(0.0, 1.0)
}

fn raw_born(projector: &ComplexMatrix, input: InputPair) -> f64 {
    let rho = pbr_input(input.first, input.second).density;
    projector
        .trace_product(&rho)
        .map(|z| z.re)
        .unwrap_or(f64::NAN)
}

/// Simultaneous assignment of a Z outcome and an X outcome to one system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub z: BasisLabel,
    pub x: BasisLabel,
}

impl Assignment {
    pub const fn new(z: BasisLabel, x: BasisLabel) -> Self {
        Self { z, x }
    }

    /// `½(I ± X ± Z)`.
    pub fn operator(self) -> ComplexMatrix {
        assignment_operator(&self.z.projector(), &self.x.projector())
            .expect("Z and X eigenstates always overlap")
    }

    /// The two equally weighted assignments composing a preparation.
    pub fn components(prep: PreparationLabel) -> [Assignment; 2] {
        use BasisLabel::{Minus, One, Plus, Zero};
        match prep {
            PreparationLabel::Zero => [Self::new(Zero, Plus), Self::new(Zero, Minus)],
            PreparationLabel::Plus => [Self::new(Zero, Plus), Self::new(One, Plus)],
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.z, self.x)
    }
}

/// Sub-ensemble of both systems, written `(0+;0-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubensembleLabel {
    pub first: Assignment,
    pub second: Assignment,
}

impl SubensembleLabel {
    pub const COMMON: SubensembleLabel = SubensembleLabel {
        first: Assignment::new(BasisLabel::Zero, BasisLabel::Plus),
        second: Assignment::new(BasisLabel::Zero, BasisLabel::Plus),
    };

    pub fn operator(self) -> ComplexMatrix {
        product_assignment(&[self.first.operator(), self.second.operator()])
    }
}

impl fmt::Display for SubensembleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.first, self.second)
    }
}

impl Serialize for SubensembleLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContributionRow {
    pub label: SubensembleLabel,
    /// Mixture weight of the sub-ensemble in the input state.
    pub weight: f64,
    /// `trace(Π_i · R(s)⊗R(t))` for outcomes 1..4.
    pub entries: [f64; 4],
}

/// Per-sub-ensemble contributions to each outcome for one input.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContributionTable {
    pub input: InputPair,
    pub rows: Vec<ContributionRow>,
}

impl ContributionTable {
    fn build(projectors: &[ComplexMatrix], input: InputPair) -> Self {
        let mut rows = Vec::with_capacity(4);
        for first in Assignment::components(input.first) {
            for second in Assignment::components(input.second) {
                let label = SubensembleLabel { first, second };
                let op = label.operator();
                let mut entries = [0.0; 4];
                for (e, p) in entries.iter_mut().zip(projectors) {
                    *e = p.trace_product(&op).map(|z| z.re).unwrap_or(f64::NAN);
                }
                rows.push(ContributionRow {
                    label,
                    weight: 0.25,
                    entries,
                });
            }
        }
        Self { input, rows }
    }

    pub fn row(&self, label: SubensembleLabel) -> Option<&ContributionRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// `Σ_rows weight · entry` per outcome: the Born probabilities.
    pub fn mixture_probabilities(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for row in &self.rows {
            for (o, e) in out.iter_mut().zip(row.entries) {
                *o += row.weight * e;
            }
        }
        out
    }

    pub fn entries(&self) -> Vec<[f64; 4]> {
        self.rows.iter().map(|r| r.entries).collect()
    }

    /// Fixed-width table, one row per sub-ensemble.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input {}", self.input);
        let _ = writeln!(
            out,
            "{:<12}{:>12}{:>12}{:>12}{:>12}",
            "sub-ensemble", "eta=1", "eta=2", "eta=3", "eta=4"
        );
        for row in &self.rows {
            let _ = write!(out, "{:<12}", row.label.to_string());
            for e in row.entries {
                let _ = write!(out, "{:>12}", format_sig(e, 6));
            }
            out.push('\n');
        }
        let _ = write!(out, "{:<12}", "probability");
        for p in self.mixture_probabilities() {
            let _ = write!(out, "{:>12}", format_sig(p, 6));
        }
        out.push('\n');
        out
    }
}

/// The four-outcome entangled measurement with its exclusion map.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaBasis {
    expansions: [PauliExpansion; 4],
    projectors: Vec<ComplexMatrix>,
    kets: Vec<Ket>,
    excluded: [InputPair; 4],
}

impl EtaBasis {
    /// Builds the basis from Pauli expansions and verifies it: rank-1, orthogonal,
    /// complete, and each outcome excluding exactly one input, bijectively.
    pub fn from_expansions(expansions: [PauliExpansion; 4]) -> Result<Self> {
        if let Some(e) = expansions.iter().find(|e| e.num_qubits() != 2) {
            return Err(Error::Inconsistent(format!(
                "outcome expansion on {} qubits",
                e.num_qubits()
            )));
        }
        let projectors: Vec<ComplexMatrix> = expansions.iter().map(pauli_synthesize).collect();
        if let Some(msg) = basis_defect(&projectors) {
            return Err(Error::Inconsistent(msg));
        }
        let kets = projectors
            .iter()
            .map(Ket::from_rank_one_projector)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Inconsistent(e.to_string()))?;
        for (k, p) in kets.iter().zip(&projectors) {
            if !k.projector().approx_eq(p, EPS) {
                return Err(Error::Inconsistent(
                    "ket does not reproduce projector".into(),
                ));
            }
        }
        let excluded = derive_exclusions(&projectors).map_err(Error::Inconsistent)?;
        Ok(Self {
            expansions,
            projectors,
            kets,
            excluded,
        })
    }

    pub fn expansion(&self, i: usize) -> Result<&PauliExpansion> {
        Ok(&self.expansions[check_index(i)?])
    }

    pub fn projector(&self, i: usize) -> Result<&ComplexMatrix> {
        Ok(&self.projectors[check_index(i)?])
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn ket(&self, i: usize) -> Result<&Ket> {
        Ok(&self.kets[check_index(i)?])
    }

    /// The input that outcome `i` never occurs for.
    pub fn excluded_input(&self, i: usize) -> Result<InputPair> {
        Ok(self.excluded[check_index(i)?])
    }

    /// The outcome (1-based) that never occurs for `input`.
    pub fn excluding_outcome(&self, input: InputPair) -> usize {
        self.excluded
            .iter()
            .position(|&p| p == input)
            .expect("exclusion map is a bijection")
            + 1
    }

    /// As a generic measurement basis with outcomes labelled `1`..`4`.
    pub fn measurement_basis(&self) -> MeasurementBasis {
        MeasurementBasis::with_labels(self.kets.clone(), (1..=4).map(|i| i.to_string()).collect())
            .expect("validated at construction")
            .with_name("eta")
    }

    pub fn outcome_probability(&self, i: usize, input: InputPair) -> Result<f64> {
        Ok(born(self.projector(i)?, input))
    }

    pub fn outcome_probabilities(&self, input: InputPair) -> [f64; 4] {
        [0, 1, 2, 3].map(|k| born(&self.projectors[k], input))
    }

    pub fn contribution_table(&self, input: InputPair) -> ContributionTable {
        ContributionTable::build(&self.projectors, input)
    }
}

/// Describes the first failed basis property, if any.
fn basis_defect(projectors: &[ComplexMatrix]) -> Option<String> {
    for (i, p) in projectors.iter().enumerate() {
        if !is_projector(p) || (p.trace().re - 1.0).abs() > EPS {
            return Some(format!("outcome {} is not a rank-1 projector", i + 1));
        }
    }
    let zero = ComplexMatrix::zeros(4);
    for i in 0..projectors.len() {
        for j in i + 1..projectors.len() {
            if !(&projectors[i] * &projectors[j]).approx_eq(&zero, EPS) {
                return Some(format!(
                    "outcomes {} and {} are not orthogonal",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    let sum = projectors.iter().fold(zero, |acc, p| &acc + p);
    if !sum.approx_eq(&ComplexMatrix::identity(4), EPS) {
        return Some("outcome projectors do not sum to the identity".into());
    }
    None
}

/// For each outcome, the unique input with zero probability.
fn derive_exclusions(projectors: &[ComplexMatrix]) -> std::result::Result<[InputPair; 4], String> {
    let mut excluded = [InputPair::ALL[0]; 4];
    for (k, p) in projectors.iter().enumerate() {
        let zeros: Vec<InputPair> = InputPair::ALL
            .into_iter()
            .filter(|&input| raw_born(p, input).abs() <= EPS)
            .collect();
        match zeros.as_slice() {
            [only] => excluded[k] = *only,
            _ => {
                return Err(format!(
                    "outcome {} has {} zero-probability inputs",
                    k + 1,
                    zeros.len()
                ))
            }
        }
    }
    for input in InputPair::ALL {
        if !excluded.contains(&input) {
            return Err(format!("input {input} is excluded by no outcome"));
        }
    }
    let (anchor_outcome, anchor_input) = ANCHOR_EXCLUSION;
    if excluded[anchor_outcome - 1] != anchor_input {
        return Err(format!(
            "outcome {anchor_outcome} excludes {} instead of {anchor_input}",
            excluded[anchor_outcome - 1]
        ));
    }
    Ok(excluded)
}

pub fn eta_basis() -> Result<EtaBasis> {
    EtaBasis::from_expansions(eta_expansions())
}

pub fn outcome_probability(i: usize, a: PreparationLabel, b: PreparationLabel) -> Result<f64> {
    Ok(born(&eta_projector(i)?, InputPair::new(a, b)))
}

pub fn contribution_table(a: PreparationLabel, b: PreparationLabel) -> ContributionTable {
    let projectors: Vec<ComplexMatrix> = eta_expansions().iter().map(pauli_synthesize).collect();
    ContributionTable::build(&projectors, InputPair::new(a, b))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowReport {
    pub label: SubensembleLabel,
    pub entries: [f64; 4],
    /// Outcomes (1-based) this sub-ensemble contributes negatively to.
    pub negatives: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputReport {
    pub input: InputPair,
    pub excluded_outcome: Option<usize>,
    pub born_probability: Option<f64>,
    pub rows: Vec<RowReport>,
    /// Sub-ensembles contributing negatively to the excluded outcome.
    pub negative_contributors: Vec<SubensembleLabel>,
    /// Contribution of `(0+;0+)` to the excluded outcome.
    pub common_contribution: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParadoxReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    pub inputs: Vec<InputReport>,
}

impl ParadoxReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for input in &self.inputs {
            match (input.excluded_outcome, input.born_probability) {
                (Some(k), Some(p)) => {
                    let _ = writeln!(
                        out,
                        "input {}: outcome eta={k} excluded, probability {}",
                        input.input,
                        format_sig(p, 6)
                    );
                    let labels: Vec<String> = input
                        .negative_contributors
                        .iter()
                        .map(|l| {
                            let row = input.rows.iter().find(|r| r.label == *l).expect("row");
                            format!("{l} {}", format_sig(row.entries[k - 1], 6))
                        })
                        .collect();
                    let _ = writeln!(out, "  negative contributions: {}", labels.join(", "));
                    if let Some(c) = input.common_contribution {
                        let _ = writeln!(
                            out,
                            "  common sub-ensemble {} contributes {}",
                            SubensembleLabel::COMMON,
                            format_sig(c, 6)
                        );
                    }
                }
                _ => {
                    let _ = writeln!(out, "input {}: no unique excluded outcome", input.input);
                }
            }
        }
        out.push('\n');
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {:<28} {}", c.name, c.detail);
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed {
                "all checks passed"
            } else {
                "verification FAILED"
            }
        );
        out
    }
}

/// Verifies the shipped measurement.
pub fn verify_paradox() -> ParadoxReport {
    verify_paradox_with(&eta_expansions())
}

/// Runs every scenario check against the given outcome expansions. Never fails;
/// defects show up as failed checks.
pub fn verify_paradox_with(expansions: &[PauliExpansion; 4]) -> ParadoxReport {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        });
    };

    if expansions.iter().any(|e| e.num_qubits() != 2) {
        push(
            "two_qubit_expansions",
            false,
            "every outcome must act on 2 qubits".into(),
        );
        return ParadoxReport {
            passed: false,
            checks,
            inputs: Vec::new(),
        };
    }
    let projectors: Vec<ComplexMatrix> = expansions.iter().map(pauli_synthesize).collect();

    let rank_one = projectors
        .iter()
        .all(|p| is_projector(p) && (p.trace().re - 1.0).abs() <= EPS);
    push(
        "rank_one_projectors",
        rank_one,
        "Hermitian, idempotent, trace 1".into(),
    );

    let zero = ComplexMatrix::zeros(4);
    let mut worst_overlap: f64 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            worst_overlap =
                worst_overlap.max((&projectors[i] * &projectors[j]).max_abs_diff(&zero));
        }
    }
    push(
        "mutually_orthogonal",
        worst_overlap <= EPS,
        format!("max |P_i P_j| = {worst_overlap:.3e}"),
    );

    let sum = projectors.iter().fold(zero, |acc, p| &acc + p);
    let completeness = sum.max_abs_diff(&ComplexMatrix::identity(4));
    push(
        "complete",
        completeness <= EPS,
        format!("max |sum P_i - I| = {completeness:.3e}"),
    );

    let kets_ok = projectors
        .iter()
        .all(|p| Ket::from_rank_one_projector(p).is_ok_and(|k| k.projector().approx_eq(p, EPS)));
    push(
        "kets_reproduce_projectors",
        kets_ok,
        "rank-1 factorization".into(),
    );

    let exclusions = derive_exclusions(&projectors);
    push(
        "exclusion_bijection",
        exclusions.is_ok(),
        match &exclusions {
            Ok(map) => {
                let pairs: Vec<String> = map
                    .iter()
                    .enumerate()
                    .map(|(k, p)| format!("{}:{p}", k + 1))
                    .collect();
                pairs.join(" ")
            }
            Err(msg) => msg.clone(),
        },
    );

    let tables: Vec<ContributionTable> = InputPair::ALL
        .iter()
        .map(|&input| ContributionTable::build(&projectors, input))
        .collect();

    let worst_row = tables
        .iter()
        .flat_map(|t| &t.rows)
        .map(|r| (r.entries.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    push(
        "rows_sum_to_one",
        worst_row <= EPS,
        format!("max |row sum - 1| = {worst_row:.3e}"),
    );

    let mut worst_bridge: f64 = 0.0;
    for t in &tables {
        let mix = t.mixture_probabilities();
        for (p, m) in projectors.iter().zip(mix) {
            worst_bridge = worst_bridge.max((raw_born(p, t.input) - m).abs());
        }
    }
    push(
        "mixture_matches_born",
        worst_bridge <= EPS,
        format!("max |mixture - Born| = {worst_bridge:.3e}"),
    );

    let worst_common = tables
        .iter()
        .filter_map(|t| t.row(SubensembleLabel::COMMON))
        .flat_map(|r| r.entries)
        .map(|e| (e - 0.25).abs())
        .fold(0.0, f64::max);
    push(
        "common_row_flat",
        worst_common <= EPS,
        format!("max |(0+;0+) entry - 1/4| = {worst_common:.3e}"),
    );

    let worst_reference = tables[0]
        .rows
        .iter()
        .zip(REFERENCE_TABLE_00)
        .flat_map(|(r, want)| r.entries.iter().zip(want).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max);
    push(
        "reference_table_00",
        worst_reference <= EPS,
        format!("max deviation = {worst_reference:.3e}"),
    );

    let mixtures_ok = [
        (
            PreparationLabel::Zero,
            Assignment::components(PreparationLabel::Zero),
        ),
        (
            PreparationLabel::Plus,
            Assignment::components(PreparationLabel::Plus),
        ),
    ]
    .iter()
    .all(|(prep, [a, b])| {
        let mix = (&a.operator() + &b.operator()).scale_real(0.5);
        mix.approx_eq(&prep.density(), EPS)
    });
    push(
        "assignment_mixtures",
        mixtures_ok,
        "rho(0) = (R(0+)+R(0-))/2, rho(+) = (R(0+)+R(1+))/2".into(),
    );

    let inputs: Vec<InputReport> = tables
        .iter()
        .map(|t| {
            let excluded_outcome = exclusions
                .as_ref()
                .ok()
                .map(|map| map.iter().position(|&p| p == t.input).expect("bijection") + 1);
            let rows: Vec<RowReport> = t
                .rows
                .iter()
                .map(|r| RowReport {
                    label: r.label,
                    entries: r.entries,
                    negatives: (1..=4).filter(|&k| r.entries[k - 1] < -EPS).collect(),
                })
                .collect();
            let negative_contributors = excluded_outcome
                .map(|k| {
                    rows.iter()
                        .filter(|r| r.entries[k - 1] < -EPS)
                        .map(|r| r.label)
                        .collect()
                })
                .unwrap_or_default();
            let common_contribution = excluded_outcome
                .and_then(|k| t.row(SubensembleLabel::COMMON).map(|r| r.entries[k - 1]));
            InputReport {
                input: t.input,
                excluded_outcome,
                born_probability: excluded_outcome
                    .map(|k| raw_born(&projectors[k - 1], t.input).clamp(0.0, 1.0)),
                rows,
                negative_contributors,
                common_contribution,
            }
        })
        .collect();

    let paired = &inputs[0];
    let expected_pair = [
        Assignment::components(PreparationLabel::Zero),
        Assignment::components(PreparationLabel::Zero),
    ];
    let cross = [
        SubensembleLabel {
            first: expected_pair[0][0],
            second: expected_pair[1][1],
        },
        SubensembleLabel {
            first: expected_pair[0][1],
            second: expected_pair[1][0],
        },
    ];
    let cancel_ok = paired.excluded_outcome == Some(1)
        && paired.negative_contributors == cross
        && paired
            .rows
            .iter()
            .filter(|r| cross.contains(&r.label))
            .all(|r| (r.entries[0] + 0.25).abs() <= EPS);
    push(
        "negative_cancellation_00",
        cancel_ok,
        format!(
            "eta=1 for 00 cancelled by {} and {} at -1/4",
            cross[0], cross[1]
        ),
    );

    let passed = checks.iter().all(|c| c.passed);
    ParadoxReport {
        passed,
        checks,
        inputs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli_expand;
    use PreparationLabel::{Plus, Zero};

    #[test]
    fn first_and_last_projectors() {
        let e1 = pauli_expand(&eta_projector(1).unwrap(), 2).unwrap();
        let want = PauliExpansion::from_terms(
            2,
            [("II", 0.25), ("XX", 0.25), ("ZZ", -0.25), ("YY", 0.25)],
        )
        .unwrap();
        assert!(e1.approx_eq(&want, EPS));
        let e4 = pauli_expand(&eta_projector(4).unwrap(), 2).unwrap();
        let want = PauliExpansion::from_terms(
            2,
            [("II", 0.25), ("XX", -0.25), ("ZZ", 0.25), ("YY", 0.25)],
        )
        .unwrap();
        assert!(e4.approx_eq(&want, EPS));
        for i in 1..=4 {
            assert!(is_projector(&eta_projector(i).unwrap()));
        }
    }

    #[test]
    fn second_projector_synthesizes_from_terms() {
        let e = PauliExpansion::from_terms(
            2,
            [("II", 0.25), ("XZ", 0.25), ("ZX", -0.25), ("YY", -0.25)],
        )
        .unwrap();
        assert!(pauli_synthesize(&e).approx_eq(&eta_projector(2).unwrap(), EPS));
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(eta_projector(0).unwrap_err(), Error::IndexOutOfRange(0));
        assert_eq!(eta_projector(5).unwrap_err(), Error::IndexOutOfRange(5));
        assert!(outcome_probability(7, Zero, Zero).is_err());
    }

    #[test]
    fn basis_exclusions() {
        let basis = eta_basis().unwrap();
        let got: Vec<String> = (1..=4)
            .map(|i| basis.excluded_input(i).unwrap().to_string())
            .collect();
        assert_eq!(got, ["00", "0+", "+0", "++"]);
        for input in InputPair::ALL {
            let k = basis.excluding_outcome(input);
            assert!(basis.outcome_probability(k, input).unwrap() <= EPS);
        }
        let sum = basis
            .projectors()
            .iter()
            .fold(ComplexMatrix::zeros(4), |a, p| &a + p);
        assert!(sum.approx_eq(&ComplexMatrix::identity(4), EPS));
        let mb = basis.measurement_basis();
        assert_eq!(mb.dim(), 4);
        assert_eq!(mb.name(), Some("eta"));
    }

    #[test]
    fn probabilities() {
        assert_eq!(outcome_probability(1, Zero, Zero).unwrap(), 0.0);
        assert!((outcome_probability(2, Zero, Zero).unwrap() - 0.25).abs() <= EPS);
        assert!((outcome_probability(1, Plus, Plus).unwrap() - 0.5).abs() <= EPS);
    }

    #[test]
    fn table_for_zero_zero() {
        let t = contribution_table(Zero, Zero);
        let labels: Vec<String> = t.rows.iter().map(|r| r.label.to_string()).collect();
        assert_eq!(labels, ["(0+;0+)", "(0+;0-)", "(0-;0+)", "(0-;0-)"]);
        for (row, want) in t.rows.iter().zip(REFERENCE_TABLE_00) {
            for (a, b) in row.entries.iter().zip(want) {
                assert!((a - b).abs() <= EPS, "{}: {:?}", row.label, row.entries);
            }
        }
    }

    #[test]
    fn table_rows_for_plus_inputs() {
        let t = contribution_table(Zero, Plus);
        let labels: Vec<String> = t.rows.iter().map(|r| r.label.to_string()).collect();
        assert_eq!(labels, ["(0+;0+)", "(0+;1+)", "(0-;0+)", "(0-;1+)"]);
        let t = contribution_table(Plus, Plus);
        assert_eq!(t.rows[0].entries, [0.25; 4]);
        assert!(t.mixture_probabilities()[3].abs() <= EPS);
    }

    #[test]
    fn shipped_scenario_verifies() {
        let report = verify_paradox();
        assert!(report.passed, "{}", report.render());
        let first = &report.inputs[0];
        assert_eq!(first.excluded_outcome, Some(1));
        let names: Vec<String> = first
            .negative_contributors
            .iter()
            .map(|l| l.to_string())
            .collect();
        assert_eq!(names, ["(0+;0-)", "(0-;0+)"]);
        assert_eq!(first.common_contribution, Some(0.25));
        let last = &report.inputs[3];
        assert_eq!(last.excluded_outcome, Some(4));
        assert_eq!(last.common_contribution, Some(0.25));
        for input in &report.inputs {
            assert!(input.born_probability.unwrap() <= EPS);
        }
    }

    #[test]
    fn corrupted_coefficient_fails_verification() {
        for k in 0..4 {
            for (pauli, _) in ETA_TERMS[k] {
                let mut expansions = eta_expansions();
                expansions[k]
                    .add_term(pauli.parse().unwrap(), 0.01)
                    .unwrap();
                let report = verify_paradox_with(&expansions);
                assert!(
                    !report.passed,
                    "corrupting {pauli} in outcome {} went unnoticed",
                    k + 1
                );
                assert!(EtaBasis::from_expansions(expansions).is_err());
            }
        }
    }

    #[test]
    fn render_layout() {
        let text = contribution_table(Zero, Zero).render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "input 00");
        assert_eq!(
            lines[3],
            "(0+;0-)        -0.250000    0.750000   -0.250000    0.750000"
        );
        assert_eq!(
            lines[6],
            "probability            0    0.250000    0.250000    0.500000"
        );
    }
}
