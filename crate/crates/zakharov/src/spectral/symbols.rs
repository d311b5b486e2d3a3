//! Diagonal Fourier multipliers and the scalar special functions they use.
//!
//! Ω denotes the multiplier that scales mode j by |j| (so Ω² = −Δ). Every
//! symbol here is a scalar map ω ↦ m(ω) evaluated at ω = |j| per mode:
//!
//! * `schroedinger_phase(t)`: e^{−i t ω²}, the free Schrödinger flow.
//! * `sinc_scaled(t)`: sinc(tω) = sin(tω)/(tω), the time average of cos(sω)
//!   over s ∈ [0, t].
//! * `half_sinc_squared(τ)`: sinc(τω/2)², which is 2(1 − cos(τω))/(τω)².
//! * `recovery_resolvent(τ)`: (Ω²φ(iτΩ²) + 1)^{−1}, mode-wise
//!   iτ/(e^{iτω²} − 1 + iτ). Under d·τ·K² ≤ c < 2π the weighted gain
//!   max(|j|,1)²·|multiplier| stays bounded by a constant depending only on
//!   c; right above τ|j|² = 2π the denominator collapses to O(τ) and the
//!   gain grows without bound as τ → 0. `resolvent_scan` measures both.
//!
//! φ(ξ) = (e^ξ − 1)/ξ with φ(0) = 1 ties the pieces together through the
//! identity e^ξ − e^η = (ξ − η) φ(ξ − η) e^η.

use std::sync::Arc;

use num_complex::Complex64;

/// Below this argument size, sinc and φ switch to their Taylor forms; the
/// truncation error at the branch point is below 1e-17.
const SERIES_THRESHOLD: f64 = 1e-4;

/// sin(x)/x extended continuously by sinc(0) = 1.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_THRESHOLD {
        let x2 = x * x;
        1.0 + x2 * (-1.0 / 6.0 + x2 / 120.0)
    } else {
        x.sin() / x
    }
}

/// e^z − 1 without the cancellation the naive form suffers for small |z|:
/// e^re·cos(im) − 1 splits into expm1(re)·cos(im) − 2sin²(im/2), and every
/// piece stays O(|z|) with full relative accuracy.
fn exp_m1(z: Complex64) -> Complex64 {
    let half_sin = (0.5 * z.im).sin();
    Complex64::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * half_sin * half_sin,
        z.re.exp() * z.im.sin(),
    )
}

/// φ(ξ) = (e^ξ − 1)/ξ extended continuously by φ(0) = 1.
pub fn phi(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_THRESHOLD {
        let one = Complex64::new(1.0, 0.0);
        one + z * (Complex64::new(0.5, 0.0) + z * (Complex64::new(1.0 / 6.0, 0.0) + z / 24.0))
    } else {
        exp_m1(z) / z
    }
}

/// Scalar multiplier evaluated at ω = |j| for every mode j.
#[derive(Clone)]
pub struct OmegaSymbol {
    eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl OmegaSymbol {
    pub fn new(eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> OmegaSymbol {
        OmegaSymbol {
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, omega: f64) -> Complex64 {
        (self.eval)(omega)
    }

    /// e^{−i t ω²}.
    pub fn schroedinger_phase(t: f64) -> OmegaSymbol {
        OmegaSymbol::new(move |omega| Complex64::new(0.0, -t * omega * omega).exp())
    }

    /// ω², the symbol of −Δ.
    pub fn omega_squared() -> OmegaSymbol {
        OmegaSymbol::new(|omega| Complex64::new(omega * omega, 0.0))
    }

    /// sinc(tω).
    pub fn sinc_scaled(t: f64) -> OmegaSymbol {
        OmegaSymbol::new(move |omega| Complex64::new(sinc(t * omega), 0.0))
    }

    /// sinc(tω) − 1; vanishes on mode 0, so constants pass through untouched.
    pub fn sinc_scaled_minus_one(t: f64) -> OmegaSymbol {
        OmegaSymbol::new(move |omega| Complex64::new(sinc(t * omega) - 1.0, 0.0))
    }

    /// sinc(τω/2)².
    pub fn half_sinc_squared(tau: f64) -> OmegaSymbol {
        OmegaSymbol::new(move |omega| {
            let s = sinc(0.5 * tau * omega);
            Complex64::new(s * s, 0.0)
        })
    }

    /// (Ω²φ(iτΩ²) + 1)^{−1}, mode-wise iτ/(e^{iτω²} − 1 + iτ).
    pub fn recovery_resolvent(tau: f64) -> OmegaSymbol {
        OmegaSymbol::new(move |omega| {
            let itau = Complex64::new(0.0, tau);
            itau / (Complex64::new(0.0, tau * omega * omega).exp() - 1.0 + itau)
        })
    }

    /// (Ω² + 1)^{−1}, the elliptic limit of the recovery resolvent.
    pub fn helmholtz_inverse() -> OmegaSymbol {
        OmegaSymbol::new(|omega| Complex64::new(1.0 / (omega * omega + 1.0), 0.0))
    }
}

impl std::fmt::Debug for OmegaSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OmegaSymbol").finish_non_exhaustive()
    }
}

/// Worst-case resolvent gains over the one-dimensional mode range |j| ≤ K.
#[derive(Clone, Copy, Debug)]
pub struct ResolventScan {
    /// max over modes of max(|j|,1)² · |(Ω²φ(iτΩ²)+1)^{−1} multiplier|.
    pub two_derivative_gain: f64,
    /// max over modes of |(Ω²+1)^{−1} − (Ω²φ(iτΩ²)+1)^{−1} multiplier| / τ.
    pub difference_over_tau: f64,
}

/// Scan the recovery resolvent over integer |j| in [0, K] at step size τ.
pub fn resolvent_scan(degree: usize, tau: f64) -> ResolventScan {
    let resolvent = OmegaSymbol::recovery_resolvent(tau);
    let elliptic = OmegaSymbol::helmholtz_inverse();
    let mut gain = 0.0f64;
    let mut diff = 0.0f64;
    for j in 0..=degree {
        let omega = j as f64;
        let m = resolvent.eval(omega);
        let weight = omega.max(1.0).powi(2);
        gain = gain.max(weight * m.norm());
        diff = diff.max((elliptic.eval(omega) - m).norm() / tau);
    }
    ResolventScan {
        two_derivative_gain: gain,
        difference_over_tau: diff,
    }
}
