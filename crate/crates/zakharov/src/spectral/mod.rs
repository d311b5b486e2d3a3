//! Fourier collocation on the torus [−π, π)^d.
//!
//! The ansatz space is span{ e^{i j·x} : j ∈ 𝒦 } with 𝒦 = {−K, …, K−1}^d and
//! collocation nodes x_k = kπ/K for k ∈ 𝒦. Trigonometric interpolation ℐ is
//! realized by the discrete Fourier transform; the forward transform carries
//! the 1/(2K)^d normalization, so sampling a polynomial from the ansatz space
//! recovers its coefficients exactly. The row j = −K has no +K partner and is
//! kept as-is (no Hermitian symmetrization). Products of interpolants are
//! formed at the nodes and transformed back, which folds mode sums into 𝒦
//! modulo 2K per axis; this aliasing is part of the discretization, not an
//! artifact to remove.
//!
//! Coefficients and node values are both stored flat in lexicographic order
//! over 𝒦 (axis 0 slowest). Fields are immutable after construction and every
//! operation returns a fresh field, so sharing across threads is safe.

mod symbols;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

pub use symbols::{phi, resolvent_scan, sinc, OmegaSymbol, ResolventScan};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Collocation grid: mode set {−K, …, K−1}^d plus cached FFT plans.
///
/// Cloning is cheap (the heavy parts sit behind an `Arc`); two grids compare
/// equal when they have the same dimension and degree.
#[derive(Clone)]
pub struct Grid {
    inner: Arc<GridInner>,
}

struct GridInner {
    dim: usize,
    degree: usize,
    points_per_axis: usize,
    len: usize,
    /// |j| per flat slot.
    omega: Vec<f64>,
    /// Involutive permutation between lexicographic and FFT index order
    /// (per-axis rotation by K).
    perm: Vec<u32>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Grid {
    /// A grid with modes {−K, …, K−1}^d. Supports d = 1, 2, 3.
    pub fn new(dim: usize, degree: usize) -> Result<Grid> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Invalid(format!(
                "grid dimension must be 1, 2 or 3, got {dim}"
            )));
        }
        if degree == 0 {
            return Err(Error::Invalid("grid degree K must be at least 1".into()));
        }
        let n = 2 * degree;
        let len = n.pow(dim as u32);
        if len > u32::MAX as usize {
            return Err(Error::Invalid(format!("grid with {len} slots is too large")));
        }

        let mut omega = vec![0.0; len];
        let mut perm = vec![0u32; len];
        for slot in 0..len {
            // Decode axis indices (axis 0 slowest), accumulate |j|² and the
            // per-axis rotation by K.
            let mut stride = len / n;
            let mut s = slot;
            let mut shifted = 0usize;
            let mut sq = 0i64;
            for _ in 0..dim {
                let idx = s / stride;
                s %= stride;
                let j = idx as i64 - degree as i64;
                sq += j * j;
                shifted = shifted * n + (idx + degree) % n;
                stride = (stride / n).max(1);
            }
            omega[slot] = (sq as f64).sqrt();
            perm[slot] = shifted as u32;
        }

        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);

        Ok(Grid {
            inner: Arc::new(GridInner {
                dim,
                degree,
                points_per_axis: n,
                len,
                omega,
                perm,
                fwd,
                inv,
            }),
        })
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    /// K: modes run through {−K, …, K−1} per axis.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// 2K collocation points per axis.
    pub fn points_per_axis(&self) -> usize {
        self.inner.points_per_axis
    }

    /// Total number of modes (and nodes), (2K)^d.
    pub fn len(&self) -> usize {
        self.inner.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// |j| for every flat slot, lexicographic order.
    pub fn omega(&self) -> &[f64] {
        &self.inner.omega
    }

    /// Flat slot of a mode tuple; panics when the tuple is out of range.
    pub fn slot(&self, mode: &[i64]) -> usize {
        assert_eq!(mode.len(), self.dim(), "mode tuple has wrong dimension");
        let k = self.degree() as i64;
        let n = self.points_per_axis();
        let mut slot = 0usize;
        for &j in mode {
            assert!(
                (-k..k).contains(&j),
                "mode component {j} outside [{}, {})",
                -k,
                k
            );
            slot = slot * n + (j + k) as usize;
        }
        slot
    }

    /// Mode tuple of a flat slot.
    pub fn mode_at(&self, slot: usize) -> Vec<i64> {
        let n = self.points_per_axis();
        let k = self.degree() as i64;
        let mut out = vec![0i64; self.dim()];
        let mut s = slot;
        for a in (0..self.dim()).rev() {
            out[a] = (s % n) as i64 - k;
            s /= n;
        }
        out
    }

    /// Collocation node of a flat slot, components in [−π, π).
    pub fn node_at(&self, slot: usize) -> Vec<f64> {
        let h = std::f64::consts::PI / self.degree() as f64;
        self.mode_at(slot).iter().map(|&k| k as f64 * h).collect()
    }

    fn permuted(&self, src: &[Complex64]) -> Vec<Complex64> {
        let perm = &self.inner.perm;
        let mut out = vec![ZERO; src.len()];
        for (slot, &p) in perm.iter().enumerate() {
            out[slot] = src[p as usize];
        }
        out
    }

    fn fft_axes(&self, buf: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.points_per_axis();
        let dim = self.dim();
        let mut scratch = vec![ZERO; fft.get_inplace_scratch_len()];
        // Last axis is contiguous; rustfft transforms each length-n chunk.
        fft.process_with_scratch(buf, &mut scratch);
        let mut lane = vec![ZERO; n];
        for axis in 0..dim.saturating_sub(1) {
            let stride = n.pow((dim - 1 - axis) as u32);
            let outer = n.pow(axis as u32);
            let block = stride * n;
            for o in 0..outer {
                for i in 0..stride {
                    let base = o * block + i;
                    for (t, v) in lane.iter_mut().enumerate() {
                        *v = buf[base + t * stride];
                    }
                    fft.process_with_scratch(&mut lane, &mut scratch);
                    for (t, v) in lane.iter().enumerate() {
                        buf[base + t * stride] = *v;
                    }
                }
            }
        }
    }

    /// Node values → coefficients, carrying the 1/(2K)^d normalization.
    pub(crate) fn coeffs_from_values(&self, values: &[Complex64]) -> Vec<Complex64> {
        let mut buf = self.permuted(values);
        self.fft_axes(&mut buf, &self.inner.fwd.clone());
        let scale = 1.0 / self.len() as f64;
        let mut out = self.permuted(&buf);
        for c in &mut out {
            *c *= scale;
        }
        out
    }

    /// Coefficients → node values (unnormalized synthesis).
    pub(crate) fn values_from_coeffs(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut buf = self.permuted(coeffs);
        self.fft_axes(&mut buf, &self.inner.inv.clone());
        self.permuted(&buf)
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("dim", &self.dim())
            .field("degree", &self.degree())
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.degree() == other.degree()
    }
}

impl Eq for Grid {}

/// Trigonometric polynomial stored by its Fourier coefficients.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

fn check_same_grid(a: &Grid, b: &Grid) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch {
            left_dim: a.dim(),
            left_degree: a.degree(),
            right_dim: b.dim(),
            right_degree: b.degree(),
        })
    }
}

impl SpectralField {
    pub fn zeros(grid: &Grid) -> SpectralField {
        SpectralField {
            grid: grid.clone(),
            coeffs: vec![ZERO; grid.len()],
        }
    }

    pub fn from_coeffs(grid: &Grid, coeffs: Vec<Complex64>) -> Result<SpectralField> {
        if coeffs.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                actual: coeffs.len(),
            });
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs,
        })
    }

    pub fn single_mode(grid: &Grid, mode: &[i64], amplitude: Complex64) -> SpectralField {
        let mut coeffs = vec![ZERO; grid.len()];
        coeffs[grid.slot(mode)] = amplitude;
        SpectralField {
            grid: grid.clone(),
            coeffs,
        }
    }

    /// Trigonometric interpolation of sampled node values (forward DFT with
    /// the 1/(2K)^d normalization).
    pub fn from_node_values(grid: &Grid, values: &[Complex64]) -> Result<SpectralField> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs: grid.coeffs_from_values(values),
        })
    }

    /// Interpolate a function by sampling it at the collocation nodes.
    /// Frequencies outside the mode set fold back in modulo 2K per axis.
    pub fn interpolate(grid: &Grid, f: impl Fn(&[f64]) -> Complex64) -> SpectralField {
        let h = std::f64::consts::PI / grid.degree() as f64;
        let n = grid.points_per_axis();
        let k = grid.degree() as i64;
        let dim = grid.dim();
        let mut values = vec![ZERO; grid.len()];
        let mut coords = [0.0f64; 3];
        for (slot, v) in values.iter_mut().enumerate() {
            let mut s = slot;
            for a in (0..dim).rev() {
                coords[a] = ((s % n) as i64 - k) as f64 * h;
                s /= n;
            }
            *v = f(&coords[..dim]);
        }
        SpectralField {
            grid: grid.clone(),
            coeffs: grid.coeffs_from_values(&values),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of a mode tuple; panics when the tuple is out of range.
    pub fn coeff(&self, mode: &[i64]) -> Complex64 {
        self.coeffs[self.grid.slot(mode)]
    }

    /// Values at the collocation nodes, lexicographic node order.
    pub fn node_values(&self) -> Vec<Complex64> {
        self.grid.values_from_coeffs(&self.coeffs)
    }

    /// ℐ(f(self)): evaluate at the nodes, map values, interpolate back.
    pub fn map_nodes(&self, f: impl Fn(Complex64) -> Complex64) -> SpectralField {
        let mut values = self.node_values();
        for v in &mut values {
            *v = f(*v);
        }
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.grid.coeffs_from_values(&values),
        }
    }

    /// ℐ(f(self, other)) with both factors evaluated at the nodes.
    pub fn zip_nodes(
        &self,
        other: &SpectralField,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<SpectralField> {
        check_same_grid(&self.grid, &other.grid)?;
        let mut values = self.node_values();
        let rhs = other.node_values();
        for (v, r) in values.iter_mut().zip(&rhs) {
            *v = f(*v, *r);
        }
        Ok(SpectralField {
            grid: self.grid.clone(),
            coeffs: self.grid.coeffs_from_values(&values),
        })
    }

    /// Collocation product ℐ(self · other): node-wise multiplication, so mode
    /// sums leaving the grid alias back in.
    pub fn product(&self, other: &SpectralField) -> Result<SpectralField> {
        self.zip_nodes(other, |a, b| a * b)
    }

    /// ℐ(|self|²) as a field (real at the nodes by construction).
    pub fn abs_squared(&self) -> SpectralField {
        self.map_nodes(|z| Complex64::new(z.norm_sqr(), 0.0))
    }

    /// Apply a diagonal Fourier multiplier: coefficient of mode j scales by
    /// `symbol(|j|)`.
    pub fn apply(&self, symbol: &OmegaSymbol) -> Result<SpectralField> {
        let omega = self.grid.omega();
        let mut coeffs = self.coeffs.clone();
        for (slot, c) in coeffs.iter_mut().enumerate() {
            let m = symbol.eval(omega[slot]);
            if !(m.re.is_finite() && m.im.is_finite()) {
                return Err(Error::NonFiniteSymbol {
                    mode: self.grid.mode_at(slot),
                    omega: omega[slot],
                });
            }
            *c *= m;
        }
        Ok(SpectralField {
            grid: self.grid.clone(),
            coeffs,
        })
    }

    /// ℐ(φ(scale · self)) with φ(ξ) = (e^ξ − 1)/ξ applied at the nodes.
    pub fn phi_pointwise(&self, scale: Complex64) -> SpectralField {
        self.map_nodes(|z| phi(scale * z))
    }

    /// Sobolev norm (Σ_j max(|j|, 1)^{2s} |v_j|²)^{1/2}.
    pub fn norm_sobolev(&self, s: f64) -> f64 {
        let omega = self.grid.omega();
        let mut sum = 0.0;
        for (slot, c) in self.coeffs.iter().enumerate() {
            let w = omega[slot].max(1.0).powf(2.0 * s);
            sum += w * c.norm_sqr();
        }
        sum.sqrt()
    }

    /// Plain ℓ² norm of the coefficients (Sobolev index 0).
    pub fn norm_l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Re-express the field on a finer grid of the same dimension: shared
    /// modes copy over, the new high modes are zero. Exact, since the modes
    /// of the coarse grid are a subset of the fine grid's.
    pub fn embed_into(&self, target: &Grid) -> Result<SpectralField> {
        if target.dim() != self.grid.dim() || target.degree() < self.grid.degree() {
            return Err(Error::GridMismatch {
                left_dim: self.grid.dim(),
                left_degree: self.grid.degree(),
                right_dim: target.dim(),
                right_degree: target.degree(),
            });
        }
        let mut out = SpectralField::zeros(target);
        for (slot, &c) in self.coeffs.iter().enumerate() {
            let mode = self.grid.mode_at(slot);
            out.coeffs[target.slot(&mode)] = c;
        }
        Ok(out)
    }

    pub fn add(&self, other: &SpectralField) -> Result<SpectralField> {
        check_same_grid(&self.grid, &other.grid)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SpectralField {
            grid: self.grid.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &SpectralField) -> Result<SpectralField> {
        check_same_grid(&self.grid, &other.grid)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(SpectralField {
            grid: self.grid.clone(),
            coeffs,
        })
    }

    pub fn scaled(&self, factor: Complex64) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// self + factor · other, the workhorse of Runge-Kutta stages.
    pub fn axpy(&self, factor: f64, other: &SpectralField) -> Result<SpectralField> {
        check_same_grid(&self.grid, &other.grid)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b * factor)
            .collect();
        Ok(SpectralField {
            grid: self.grid.clone(),
            coeffs,
        })
    }
}

/// Pair norm (‖v‖²_{s+1} + ‖v̇‖²_s)^{1/2} for wave field/velocity pairs.
pub fn pair_norm(v: &SpectralField, vdot: &SpectralField, s: f64) -> Result<f64> {
    check_same_grid(v.grid(), vdot.grid())?;
    let a = v.norm_sobolev(s + 1.0);
    let b = vdot.norm_sobolev(s);
    Ok((a * a + b * b).sqrt())
}
