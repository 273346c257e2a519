//! Truncated Fock-basis reference for squeezed light through beam-splitter
//! loss. Shares no code with the covariance-matrix route.
#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Density matrix of a two-mode state, block diagonal in the photon-number
/// difference `m2 - m1`. Block `d` is indexed by `m1 - max(0, -d)`.
pub struct FockTwoMode {
    pub cutoff: usize,
    pub blocks: BTreeMap<i64, DMatrix<f64>>,
}

#[derive(Debug, Clone, Copy)]
pub struct FockCoherence {
    pub entropy: f64,
    pub nbar1: f64,
    pub nbar2: f64,
    pub coherence: f64,
    pub trace: f64,
}

/// Smallest cutoff whose discarded squeezed-vacuum weight is below `tail`.
pub fn cutoff_for(s: f64, tail: f64) -> usize {
    let t2 = s.tanh().powi(2);
    if t2 == 0.0 {
        return 1;
    }
    (tail.ln() / t2.ln()).ceil().max(1.0) as usize
}

/// Weight of the squeezed vacuum beyond `cutoff` photons.
pub fn tail_weight(s: f64, cutoff: usize) -> f64 {
    s.tanh().powi(2 * cutoff as i32)
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let lg = |x: usize| libm::lgamma(x as f64 + 1.0);
    lg(n) - lg(k) - lg(n - k)
}

/// `<n - j| A_j |n>` for a beam splitter of transmissivity `eta`.
fn loss_amplitude(n: usize, j: usize, eta: f64) -> f64 {
    if j > n {
        return 0.0;
    }
    let kept = (n - j) as f64;
    let lost = j as f64;
    if eta == 1.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    if eta == 0.0 {
        return if j == n { 1.0 } else { 0.0 };
    }
    (0.5 * ln_binomial(n, j) + 0.5 * kept * eta.ln() + 0.5 * lost * (1.0 - eta).ln()).exp()
}

/// Squeezed vacuum `sum_n tanh^n(s)/cosh(s) |n, n>` truncated at `cutoff`
/// and renormalised, with each mode sent through pure loss of
/// transmissivity `eta1`, `eta2`.
pub fn lossy_squeezed_vacuum(s: f64, eta1: f64, eta2: f64, cutoff: usize) -> FockTwoMode {
    let t = s.tanh();
    let mut amps: Vec<f64> = (0..cutoff).map(|n| t.powi(n as i32) / s.cosh()).collect();
    let norm = amps.iter().map(|c| c * c).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|c| *c /= norm);

    let mut blocks: BTreeMap<i64, DMatrix<f64>> = BTreeMap::new();
    for j in 0..cutoff {
        for k in 0..cutoff {
            let d = j as i64 - k as i64;
            let offset = (-d).max(0) as usize;
            let mut v = DVector::zeros(cutoff);
            let mut any = false;
            for n in j.max(k)..cutoff {
                let w = amps[n] * loss_amplitude(n, j, eta1) * loss_amplitude(n, k, eta2);
                if w != 0.0 {
                    v[n - j - offset] = w;
                    any = true;
                }
            }
            if any {
                let block = blocks
                    .entry(d)
                    .or_insert_with(|| DMatrix::zeros(cutoff, cutoff));
                block.ger(1.0, &v, &v, 1.0);
            }
        }
    }
    FockTwoMode { cutoff, blocks }
}

fn bose_bits(n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    ((n + 1.0) * (n + 1.0).log2()) - n * n.log2()
}

/// Relative entropy to the product of thermal states with the same
/// occupations, read entirely off the Fock-basis density matrix.
pub fn fock_coherence(state: &FockTwoMode) -> FockCoherence {
    let mut entropy = 0.0;
    let (mut nbar1, mut nbar2, mut trace) = (0.0, 0.0, 0.0);
    for (&d, block) in &state.blocks {
        let offset = (-d).max(0) as usize;
        for i in 0..block.nrows() {
            let p = block[(i, i)];
            let m1 = (i + offset) as f64;
            nbar1 += p * m1;
            nbar2 += p * (m1 + d as f64);
            trace += p;
        }
        let eig = SymmetricEigen::new(block.clone());
        for &l in eig.eigenvalues.iter() {
            if l > 1e-300 {
                entropy -= l * l.log2();
            }
        }
    }
    // -Tr rho log2 tau(n) = g(n) exactly when n is the state's own occupation
    let mut cross = 0.0;
    for (&d, block) in &state.blocks {
        let offset = (-d).max(0) as usize;
        for i in 0..block.nrows() {
            let p = block[(i, i)];
            if p == 0.0 {
                continue;
            }
            let m1 = (i + offset) as f64;
            let m2 = m1 + d as f64;
            cross -= p * (log2_thermal(nbar1, m1) + log2_thermal(nbar2, m2));
        }
    }
    FockCoherence {
        entropy,
        nbar1,
        nbar2,
        coherence: cross - entropy,
        trace,
    }
}

/// `log2` of the thermal occupation probability `n^m / (n + 1)^(m + 1)`.
fn log2_thermal(nbar: f64, m: f64) -> f64 {
    if nbar == 0.0 {
        return if m == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    m * nbar.log2() - (m + 1.0) * (nbar + 1.0).log2()
}

/// Bose entropy of both occupations, for comparing the cross term.
pub fn thermal_reference_bits(c: &FockCoherence) -> f64 {
    bose_bits(c.nbar1) + bose_bits(c.nbar2)
}
