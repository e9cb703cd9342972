//! Qubit kets, Bloch vectors, and the product preparations of two systems each
//! prepared in `|0⟩` or `|+⟩`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{tensor, ComplexMatrix, Ket, EPS};
use crate::pauli::Pauli;

/// Eigenstates of Z (`0`, `1`) and of X (`+`, `-`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Zero,
    One,
    Plus,
    Minus,
}

impl BasisLabel {
    pub fn symbol(self) -> char {
        match self {
            BasisLabel::Zero => '0',
            BasisLabel::One => '1',
            BasisLabel::Plus => '+',
            BasisLabel::Minus => '-',
        }
    }

    /// `(I ± Z)/2` or `(I ± X)/2`, built from Pauli matrices so every entry is exact.
    pub fn projector(self) -> ComplexMatrix {
        let (pauli, sign) = match self {
            BasisLabel::Zero => (Pauli::Z, 1.0),
            BasisLabel::One => (Pauli::Z, -1.0),
            BasisLabel::Plus => (Pauli::X, 1.0),
            BasisLabel::Minus => (Pauli::X, -1.0),
        };
        (&Pauli::I.matrix() + &pauli.matrix().scale_real(sign)).scale_real(0.5)
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(BasisLabel::Zero),
            "1" => Ok(BasisLabel::One),
            "+" => Ok(BasisLabel::Plus),
            "-" | "−" => Ok(BasisLabel::Minus),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// `|0⟩=(1,0)`, `|1⟩=(0,1)`, `|±⟩=(1,±1)/√2`.
pub fn standard_ket(label: BasisLabel) -> Ket {
    let amps: [f64; 2] = match label {
        BasisLabel::Zero => [1.0, 0.0],
        BasisLabel::One => [0.0, 1.0],
        BasisLabel::Plus => [FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        BasisLabel::Minus => [FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    };
    Ket::from_real(&amps).expect("two amplitudes")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_physical(&self) -> bool {
        self.norm() <= 1.0 + EPS
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() <= EPS
    }
}

/// `(I + xX + yY + zZ)/2`.
pub fn bloch_to_density(b: BlochVector) -> Result<ComplexMatrix> {
    if !b.is_physical() {
        return Err(Error::UnphysicalBloch(b.norm()));
    }
    let parts = [
        (Pauli::I, 1.0),
        (Pauli::X, b.x),
        (Pauli::Y, b.y),
        (Pauli::Z, b.z),
    ];
    let sum = parts.iter().fold(ComplexMatrix::zeros(2), |acc, &(p, w)| {
        &acc + &p.matrix().scale_real(w)
    });
    Ok(sum.scale_real(0.5))
}

/// `(trace(Xm), trace(Ym), trace(Zm))` for a 2×2 Hermitian unit-trace `m`.
pub fn density_to_bloch(m: &ComplexMatrix) -> Result<BlochVector> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m.dim(),
        });
    }
    if !m.is_hermitian(EPS) {
        return Err(Error::InvalidDensity("not Hermitian".into()));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > EPS || tr.im.abs() > EPS {
        return Err(Error::NonUnitTrace(tr.re));
    }
    let component = |p: Pauli| p.matrix().trace_product(m).expect("2x2").re;
    Ok(BlochVector::new(
        component(Pauli::X),
        component(Pauli::Y),
        component(Pauli::Z),
    ))
}

/// The two single-system preparations, `|0⟩` and `|+⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreparationLabel {
    Zero,
    Plus,
}

impl PreparationLabel {
    pub const ALL: [PreparationLabel; 2] = [PreparationLabel::Zero, PreparationLabel::Plus];

    pub fn ket(self) -> Ket {
        standard_ket(self.basis_label())
    }

    pub fn density(self) -> ComplexMatrix {
        self.basis_label().projector()
    }

    pub fn basis_label(self) -> BasisLabel {
        match self {
            PreparationLabel::Zero => BasisLabel::Zero,
            PreparationLabel::Plus => BasisLabel::Plus,
        }
    }

    pub fn symbol(self) -> char {
        self.basis_label().symbol()
    }
}

/// Preparation of both systems, written `00`, `0+`, `+0` or `++`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InputPair {
    pub first: PreparationLabel,
    pub second: PreparationLabel,
}

impl InputPair {
    /// The four inputs in the order `00`, `0+`, `+0`, `++`.
    pub const ALL: [InputPair; 4] = [
        InputPair::new(PreparationLabel::Zero, PreparationLabel::Zero),
        InputPair::new(PreparationLabel::Zero, PreparationLabel::Plus),
        InputPair::new(PreparationLabel::Plus, PreparationLabel::Zero),
        InputPair::new(PreparationLabel::Plus, PreparationLabel::Plus),
    ];

    pub const fn new(first: PreparationLabel, second: PreparationLabel) -> Self {
        Self { first, second }
    }
}

impl fmt::Display for InputPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first.symbol(), self.second.symbol())
    }
}

impl FromStr for InputPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let prep = |c: char| match c {
            '0' => Ok(PreparationLabel::Zero),
            '+' => Ok(PreparationLabel::Plus),
            _ => Err(Error::UnknownLabel(s.to_string())),
        };
        let chars: Vec<char> = s.chars().collect();
        match chars.as_slice() {
            [a, b] => Ok(InputPair::new(prep(*a)?, prep(*b)?)),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

impl Serialize for InputPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InputPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductPreparation {
    pub labels: InputPair,
    pub density: ComplexMatrix,
}

/// `ρ(a) ⊗ ρ(b)` with `ρ(zero) = (I+Z)/2`, `ρ(plus) = (I+X)/2`.
pub fn pbr_input(a: PreparationLabel, b: PreparationLabel) -> ProductPreparation {
    ProductPreparation {
        labels: InputPair::new(a, b),
        density: tensor(&a.density(), &b.density()),
    }
}
