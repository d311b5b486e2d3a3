//! Desk-checked oracles shared by the integration tests: naive O(N²) DFT,
//! convolution-with-folding products, and a straight-line reimplementation
//! of one splitting step in one dimension. Everything here is deliberately
//! written with explicit loops and textbook formulas, independent of the
//! library's FFT/permutation machinery.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use zakharov::{Grid, SpectralField};

pub fn random_coeffs(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn random_field(grid: &Grid, rng: &mut impl Rng) -> SpectralField {
    SpectralField::from_coeffs(grid, random_coeffs(rng, grid.len())).unwrap()
}

/// Field with real values at the collocation nodes (physical wave data).
pub fn real_node_field(grid: &Grid, rng: &mut impl Rng) -> SpectralField {
    let values: Vec<Complex64> = (0..grid.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
        .collect();
    SpectralField::from_node_values(grid, &values).unwrap()
}

/// Forward DFT by direct summation: c_j = (1/2K) Σ_k v(x_k) e^{−i j x_k}
/// over j = −K..K−1 (lexicographic), nodes x_k = kπ/K.
pub fn naive_coeffs_1d(values: &[Complex64], degree: usize) -> Vec<Complex64> {
    let n = 2 * degree;
    assert_eq!(values.len(), n);
    let k_f = degree as f64;
    (0..n)
        .map(|jm| {
            let j = jm as f64 - k_f;
            let mut sum = Complex64::new(0.0, 0.0);
            for (km, v) in values.iter().enumerate() {
                let x = (km as f64 - k_f) * std::f64::consts::PI / k_f;
                sum += v * Complex64::new(0.0, -j * x).exp();
            }
            sum / n as f64
        })
        .collect()
}

/// Evaluation by direct summation: v(x_k) = Σ_j c_j e^{i j x_k}.
pub fn naive_values_1d(coeffs: &[Complex64], degree: usize) -> Vec<Complex64> {
    let n = 2 * degree;
    assert_eq!(coeffs.len(), n);
    let k_f = degree as f64;
    (0..n)
        .map(|km| {
            let x = (km as f64 - k_f) * std::f64::consts::PI / k_f;
            let mut sum = Complex64::new(0.0, 0.0);
            for (jm, c) in coeffs.iter().enumerate() {
                let j = jm as f64 - k_f;
                sum += c * Complex64::new(0.0, j * x).exp();
            }
            sum
        })
        .collect()
}

/// Collocation product as an aliased convolution: p_m = Σ over pairs (j, l)
/// with j + l ≡ m modulo 2K.
pub fn product_by_folding_1d(
    a: &[Complex64],
    b: &[Complex64],
    degree: usize,
) -> Vec<Complex64> {
    let n = 2 * degree;
    let k = degree as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (jm, aj) in a.iter().enumerate() {
        let j = jm as i64 - k;
        for (lm, bl) in b.iter().enumerate() {
            let l = lm as i64 - k;
            let m = (j + l + k).rem_euclid(2 * k) - k; // fold into −K..K−1
            out[(m + k) as usize] += aj * bl;
        }
    }
    out
}

fn desk_sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// One splitting step in one dimension, written out longhand from the
/// update formulas: interpolated |ψ|² source, averaged wave field v, the
/// node-wise potential phase, the free Schrödinger phase, and the literal
/// entries of the wave propagator acting on (u + source, u̇).
pub fn desk_split_step_1d(
    psi: &[Complex64],
    u: &[Complex64],
    udot: &[Complex64],
    tau: f64,
    degree: usize,
) -> (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>) {
    let n = 2 * degree;
    let k_f = degree as f64;
    let psi_nodes = naive_values_1d(psi, degree);
    let source_nodes: Vec<Complex64> = psi_nodes
        .iter()
        .map(|p| Complex64::new(p.norm_sqr(), 0.0))
        .collect();
    let source = naive_coeffs_1d(&source_nodes, degree);

    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for jm in 0..n {
        let omega = (jm as f64 - k_f).abs();
        let half = desk_sinc(0.5 * tau * omega);
        v[jm] = desk_sinc(tau * omega) * u[jm]
            + 0.5 * tau * half * half * udot[jm]
            + (desk_sinc(tau * omega) - 1.0) * source[jm];
    }
    let v_nodes = naive_values_1d(&v, degree);

    let rotated: Vec<Complex64> = psi_nodes
        .iter()
        .zip(&v_nodes)
        .map(|(p, vv)| (Complex64::new(0.0, -tau) * vv).exp() * p)
        .collect();
    let mut psi_next = naive_coeffs_1d(&rotated, degree);
    for (jm, c) in psi_next.iter_mut().enumerate() {
        let j = jm as f64 - k_f;
        *c *= Complex64::new(0.0, -tau * j * j).exp();
    }

    let mut u_next = vec![Complex64::new(0.0, 0.0); n];
    let mut udot_next = vec![Complex64::new(0.0, 0.0); n];
    for jm in 0..n {
        let omega = (jm as f64 - k_f).abs();
        let shifted = u[jm] + source[jm];
        u_next[jm] = (tau * omega).cos() * shifted + tau * desk_sinc(tau * omega) * udot[jm]
            - source[jm];
        udot_next[jm] = -omega * (tau * omega).sin() * shifted + (tau * omega).cos() * udot[jm];
    }
    (psi_next, u_next, udot_next)
}

pub fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
