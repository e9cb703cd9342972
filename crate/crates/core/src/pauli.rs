//! n-qubit Pauli strings and real-coefficient Pauli expansions.
//!
//! Qubit 0 is the leftmost letter and the leftmost tensor factor, so `XZ` is `X ⊗ Z`.
//! Strings order lexicographically with `I < X < Y < Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{tensor, ComplexMatrix, EPS};

/// Coefficients below this magnitude are dropped from an expansion. Far below
/// [`EPS`], so dropping them cannot break a round trip at n ≤ 4.
const COEFF_CUTOFF: f64 = 1e-15;

/// Expansions are capped here; 4ⁿ traces of 2ⁿ×2ⁿ products gets slow beyond it.
pub const MAX_QUBITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> ComplexMatrix {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        let i = Complex64::new(0.0, 1.0);
        let data = match self {
            Pauli::I => vec![l, o, o, l],
            Pauli::X => vec![o, l, l, o],
            Pauli::Y => vec![o, -i, i, o],
            Pauli::Z => vec![l, o, o, -l],
        };
        ComplexMatrix::new(2, data).expect("2x2")
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Tensor product of single-qubit Paulis, e.g. `XZ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidPauliString(String::new()));
        }
        Ok(Self { letters })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            letters: vec![Pauli::I; n.max(1)],
        }
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn num_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let mut iter = self.letters.iter();
        let first = iter.next().expect("non-empty").matrix();
        iter.fold(first, |acc, p| tensor(&acc, &p.matrix()))
    }

    /// All 4ⁿ strings on `n` qubits in lexicographic order.
    pub fn all(n: usize) -> Vec<PauliString> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Pauli>| {
                    Pauli::ALL.iter().map(move |&p| {
                        let mut next = prefix.clone();
                        next.push(p);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(|letters| Self { letters }).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.letters {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(Pauli::from_letter)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidPauliString(s.to_string()))?;
        Self::new(letters).map_err(|_| Error::InvalidPauliString(s.to_string()))
    }
}

/// Real-weighted sum of n-qubit Pauli strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireExpansion", into = "WireExpansion")]
pub struct PauliExpansion {
    n: usize,
    coeffs: BTreeMap<PauliString, f64>,
}

impl PauliExpansion {
    /// Empty expansion (the zero operator) on `n` qubits.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<'a, I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let mut e = Self::zero(n);
        for (s, c) in terms {
            e.add_term(s.parse()?, c)?;
        }
        Ok(e)
    }

    /// Adds `coeff` to the weight of `pauli`.
    pub fn add_term(&mut self, pauli: PauliString, coeff: f64) -> Result<()> {
        if pauli.num_qubits() != self.n {
            return Err(Error::QubitCountMismatch {
                expected: self.n,
                found: pauli.num_qubits(),
                pauli: pauli.to_string(),
            });
        }
        if !coeff.is_finite() {
            return Err(Error::NonFiniteCoefficient(pauli.to_string()));
        }
        *self.coeffs.entry(pauli).or_insert(0.0) += coeff;
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<PauliString, f64> {
        &self.coeffs
    }

    /// Weight of `pauli`, zero when absent.
    pub fn coeff(&self, pauli: &str) -> f64 {
        pauli
            .parse::<PauliString>()
            .ok()
            .and_then(|p| self.coeffs.get(&p).copied())
            .unwrap_or(0.0)
    }

    /// Largest absolute coefficient difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(0.0);
                let b = other.coeffs.get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n && self.max_abs_diff(other) <= tol
    }
}

#[derive(Serialize, Deserialize)]
struct WireExpansion {
    n: usize,
    coeffs: BTreeMap<String, f64>,
}

impl TryFrom<WireExpansion> for PauliExpansion {
    type Error = Error;

    fn try_from(w: WireExpansion) -> Result<Self> {
        let mut e = PauliExpansion::zero(w.n);
        for (s, c) in w.coeffs {
            e.add_term(s.parse()?, c)?;
        }
        Ok(e)
    }
}

impl From<PauliExpansion> for WireExpansion {
    fn from(e: PauliExpansion) -> Self {
        WireExpansion {
            n: e.n,
            coeffs: e
                .coeffs
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }
}

/// Qubit count for a dimension, if it is a power of two.
pub fn qubit_count(dim: usize) -> Option<usize> {
    dim.is_power_of_two().then(|| dim.trailing_zeros() as usize)
}

/// Expands a Hermitian `2ⁿ×2ⁿ` matrix as `Σ_P c_P P` with `c_P = trace(P·m)/2ⁿ`.
pub fn pauli_expand(m: &ComplexMatrix, n: usize) -> Result<PauliExpansion> {
    let dim = m.dim();
    if qubit_count(dim) != Some(n) {
        return Err(if dim.is_power_of_two() {
            Error::DimensionMismatch {
                expected: 1 << n,
                found: dim,
            }
        } else {
            Error::NotPowerOfTwo(dim)
        });
    }
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::DimensionMismatch {
            expected: 1 << n.clamp(1, MAX_QUBITS),
            found: dim,
        });
    }
    let mut e = PauliExpansion::zero(n);
    for p in PauliString::all(n) {
        let c = p.matrix().trace_product(m)? / dim as f64;
        if c.im.abs() > EPS {
            return Err(Error::NonHermitian {
                pauli: p.to_string(),
                imag: c.im,
            });
        }
        if c.re.abs() > COEFF_CUTOFF {
            e.coeffs.insert(p, c.re);
        }
    }
    Ok(e)
}

/// `Σ_P c_P P` as a dense matrix.
pub fn pauli_synthesize(e: &PauliExpansion) -> ComplexMatrix {
    let dim = 1usize << e.n.max(1);
    e.coeffs
        .iter()
        .fold(ComplexMatrix::zeros(dim), |acc, (p, &c)| {
            &acc + &p.matrix().scale_real(c)
        })
}
