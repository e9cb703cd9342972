#![allow(dead_code)]

use num_complex::Complex64;
use quasiprob_core::{ComplexMatrix, Ket, MeasurementBasis};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random Hermitian matrix with O(1) entries.
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::new(dim, (0..dim * dim).map(|_| gaussian(rng)).collect()).unwrap();
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Random full-rank density matrix, G G† / trace.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::new(dim, (0..dim * dim).map(|_| gaussian(rng)).collect()).unwrap();
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    let mut rho = m.scale_real(1.0 / tr);
    // Force exact Hermiticity after rounding.
    rho = (&rho + &rho.adjoint()).scale_real(0.5);
    rho
}

/// Random pure state |ψ⟩⟨ψ|.
pub fn random_pure(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let k = Ket::new((0..dim).map(|_| gaussian(rng)).collect()).unwrap();
    k.normalized().unwrap().projector()
}

/// Random orthonormal basis by twice-iterated Gram–Schmidt on Gaussian vectors.
pub fn random_basis(rng: &mut ChaCha8Rng, dim: usize) -> MeasurementBasis {
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while vectors.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for u in &vectors {
                let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= overlap * y;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        vectors.push(v.into_iter().map(|x| x / norm).collect());
    }
    MeasurementBasis::new(vectors.into_iter().map(|v| Ket::new(v).unwrap()).collect()).unwrap()
}
