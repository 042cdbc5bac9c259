//! Spectral zeta function `ζ(s) = Σ_j k_j^{−2s}` of a metric-graph Laplace
//! operator, evaluated from a contour representation instead of eigenvalue
//! sums.
//!
//! Rotating the resolvent contour onto the imaginary axis splits the zeta
//! function into exactly summable and rapidly convergent parts:
//!
//! ```text
//! ζ(s) = ζ_P(s)                                    — per-bond pole lattices
//!      + (sin πs / π) · [ I₀(s) + I₁(s) ]          — two finite integrals
//!      + Σ_{m∈{1,3,5}} τ_m(s)                       — exact small-t monomials
//!      + ν · sinc(πs)/2                             — leading large-t power
//!      − (sin πs / π) Σ_{n≤K} n·b_n/(2s+n)          — large-t log series
//! ```
//!
//! with `I₀(s) = ∫₀¹ t^{−2s} (d/dt log g − d₁t − d₃t³ − d₅t⁵) dt` (the
//! subtraction pushes the integrand to `O(t^{7−2s})`, extending validity to
//! `s < 7/2`) and `I₁(s) = ∫₁^T t^{−2s} (d/dt log g − ν/t + Σ_{n≤K} n b_n
//! t^{−n−1}) dt` plus the analytic tail beyond the cutoff `T`.  All
//! subtraction data — `d_m`, `ν`, `C`, `b_n` — are the exact series
//! coefficients carried by [`SecularForm`].
//!
//! Below a matching point `t_m` the subtracted integrand is evaluated from
//! the extended odd series `Σ_{j≥3} d_{2j+1} t^{2j+1}` instead of as a
//! numerical difference: the difference form cancels to rounding there, and
//! its ulp-level mismatch `α·t` would integrate against `t^{−2s}` into a
//! genuinely divergent computed value for `s > 1`.  The series form is
//! smooth and exact to its truncation, which the choice of `t_m` keeps at
//! rounding level.
//!
//! Two values come out in closed form:
//!
//! * `ζ(0)  = ζ_P(0) + ν/2`,
//! * `ζ′(0) = ζ_P′(0) + log(C / g(0))`, so the spectral determinant is
//!   `det′(−Δ) = exp(−ζ′(0))` with every integral cancelling analytically.
//!
//! The representation is meromorphic: `s = 1/2` is the genuine Weyl pole of
//! the spectral zeta, and `s = −1/2` is a pole exactly when `b_1 ≠ 0`
//! (reported as a divergent vacuum energy rather than a number).

use serde::Serialize;

use crate::error::GraphZetaError;
use crate::quadrature;
use crate::secular::{AsymptoticData, SecularForm, B_SERIES_LEN};
use crate::specfun;

/// Number of large-`t` log-series terms subtracted inside `I₁`; the
/// remaining `B_SERIES_LEN − K_SUB` terms form the analytic tail beyond
/// the cutoff.
const K_SUB: usize = 12;
/// Domain of the evaluator in `s` (upper edge set by the `t⁷` residual of
/// the small-`t` subtraction).
pub const S_MIN: f64 = -0.5;
pub const S_MAX: f64 = 3.49;

/// The additive pieces of one zeta evaluation, in the order they appear in
/// the representation.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaParts {
    /// Exactly summed per-bond lattice zeta `ζ_P(s)`.
    pub pole_part: f64,
    /// `(sin πs/π)·I₀(s)` plus the exact monomial terms `τ_m(s)`.
    pub integral_0_1: f64,
    /// `(sin πs/π)·I₁(s)` including the analytic tail beyond the cutoff.
    pub integral_1_inf: f64,
    /// `ν·sinc(πs)/2 − (sin πs/π)·Σ n·b_n/(2s+n)`.
    pub boundary_terms: f64,
}

/// One evaluated point of the spectral zeta function.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaValue {
    pub s: f64,
    pub value: f64,
    pub parts: ZetaParts,
    /// Quadrature error estimate propagated through the prefactors.
    pub est_error: f64,
}

/// Contour-representation evaluator bound to one secular form.
#[derive(Debug, Clone)]
pub struct ZetaEvaluator {
    form: SecularForm,
    /// Upper integration cutoff: beyond it the log series through
    /// `B_SERIES_LEN` terms is converged to rounding.
    t_cut: f64,
    /// Matching point of the small-`t` integrand: series below, direct
    /// difference above.
    t_series: f64,
}

/// Radius of convergence estimate for the large-`t` log series: the series
/// stems from `log(poly ratio)`, so the relevant scale is the largest root
/// of the pencil polynomial (Fujiwara-type bound from the ratios).
fn series_radius(asym: &AsymptoticData) -> f64 {
    let mut r = 0.0f64;
    for (j, &b) in asym.b.iter().enumerate() {
        let n = (j + 1) as f64;
        // |b_n| ~ r^n / n  ⇒  r ≈ (n·|b_n|)^{1/n}
        let est = (n * b.abs()).powf(1.0 / n);
        r = r.max(est);
    }
    r
}

/// Residual of the small-`t` subtraction by its exact series:
/// `Σ_{j≥3} d_{2j+1} t^{2j+1}` (the first three orders are subtracted
/// separately and integrate in closed form).
fn series_residual(d: &[f64], t: f64) -> f64 {
    let u = t * t;
    let mut p = 0.0;
    for &dj in d.iter().skip(3).rev() {
        p = p * u + dj;
    }
    p * t.powi(7)
}

impl ZetaEvaluator {
    pub fn new(form: SecularForm) -> Self {
        let radius = series_radius(form.asymptotic());
        let t_cut = (50.0 / form.graph().min_length())
            .max(8.0 * radius)
            .max(2.0);
        // matching point: far inside the series' convergence disc (set by
        // the longest bond), shrunk until the last retained term is at
        // rounding level relative to the residual itself
        let l_max = form
            .graph()
            .lengths()
            .iter()
            .cloned()
            .fold(f64::MIN, f64::max);
        let d = &form.asymptotic().d_series;
        let mut t_series = (0.5 / l_max).min(0.9);
        for _ in 0..100 {
            let last = d[d.len() - 1] * t_series.powi(2 * d.len() as i32 - 1);
            let r = series_residual(d, t_series);
            if last.abs() <= 1e-12 * r.abs().max(1e-300) || t_series <= 1e-3 {
                break;
            }
            t_series *= 0.85;
        }
        ZetaEvaluator {
            form,
            t_cut,
            t_series,
        }
    }

    pub fn form(&self) -> &SecularForm {
        &self.form
    }

    /// `ζ(0) = ζ_P(0) + ν/2`, exact.
    pub fn zeta_at_zero(&self) -> f64 {
        self.form.pole_zeta_at0() + self.form.asymptotic().nu as f64 / 2.0
    }

    /// `ζ′(0) = ζ_P′(0) + log(C/g₀)`, exact — every integral cancels.
    pub fn zeta_prime_at_zero(&self) -> f64 {
        let asym = self.form.asymptotic();
        self.form.pole_zeta_deriv0() + (asym.c_lead / asym.g0).ln()
    }

    /// Spectral determinant over nonzero modes, `exp(−ζ′(0))`.
    pub fn spectral_determinant(&self) -> f64 {
        (-self.zeta_prime_at_zero()).exp()
    }

    /// Vacuum (Casimir) energy `ζ(−1/2)/2`.  Divergent — reported as an
    /// error — when the form's `b_1 ≠ 0`, i.e. when the large-`t` expansion
    /// carries a `1/t` term that makes the mode sum physically cutoff
    /// dependent.
    pub fn vacuum_energy(&self) -> Result<f64, GraphZetaError> {
        Ok(self.zeta(-0.5)?.value / 2.0)
    }

    /// Evaluate `ζ(s)` on the valid strip `s ∈ [S_MIN, S_MAX]`, `s ≠ 1/2`.
    pub fn zeta(&self, s: f64) -> Result<ZetaValue, GraphZetaError> {
        if !(S_MIN..=S_MAX).contains(&s) {
            return Err(GraphZetaError::OutOfDomain {
                s,
                lo: S_MIN,
                hi: S_MAX,
            });
        }
        let asym = self.form.asymptotic();
        if s == -0.5 && asym.b[0] != 0.0 {
            return Err(GraphZetaError::DivergentZeta {
                s,
                reason: format!(
                    "the large-t expansion has b_1 = {} ≠ 0, so ζ has a pole at s = −1/2 \
                     and the vacuum energy requires a length-derivative regularization",
                    asym.b[0]
                ),
            });
        }
        let pole_part = self.form.pole_zeta(s).map_err(|e| match e {
            GraphZetaError::HurwitzPole => GraphZetaError::DivergentZeta {
                s,
                reason: "s = 1/2 is the Weyl pole of the spectral zeta (residue 𝓛/2π)".into(),
            },
            other => other,
        })?;

        let pi = std::f64::consts::PI;
        let sin_factor = (pi * s).sin() / pi;
        let ds = &asym.d_series;
        let (d1, d3, d5) = (ds[0], ds[1], ds[2]);
        let nu = asym.nu as f64;

        // I₀ on [0, t_m]: the subtracted integrand from its exact series —
        // smooth, positive-exponent power of t, no cancellation
        let t_m = self.t_series;
        let (i0a, e0a) = integrate_form(
            |t| {
                let u = t * t;
                let mut p = 0.0;
                for &dj in ds.iter().skip(3).rev() {
                    p = p * u + dj;
                }
                Ok(t.powf(7.0 - 2.0 * s) * p)
            },
            0.0,
            t_m,
            1e-13,
        )?;
        // I₀ on [t_m, 1]: direct difference (cancellation bounded by the
        // series scale at t_m)
        let (i0b, e0b) = integrate_form(
            |t| {
                let dl = self.form.dlog_g(t)?;
                let sub = d1 * t + d3 * t.powi(3) + d5 * t.powi(5);
                Ok(t.powf(-2.0 * s) * (dl - sub))
            },
            t_m,
            1.0,
            1e-12,
        )?;
        let i0 = i0a + i0b;
        let e0 = e0a + e0b + 1e-12 * i0a.abs();

        // τ_m: the removed monomials, integrated exactly:
        // (sin πs/π)∫₀¹ d_m t^{m−2s} dt = −d_m(−1)^{s₀} sinc(π(s−s₀))/2
        let tau = |d: f64, s0: f64| -> f64 {
            let sign = if (s0 as i64) % 2 == 0 { 1.0 } else { -1.0 };
            -d * sign * specfun::sinc(pi * (s - s0)) / 2.0
        };
        let integral_0_1 = sin_factor * i0 + tau(d1, 1.0) + tau(d3, 2.0) + tau(d5, 3.0);

        // I₁: [1, T] with ν/t and K_SUB log-series terms removed …
        let b = &asym.b;
        let (i1, e1) = integrate_form(
            |t| {
                let dl = self.form.dlog_g(t)?;
                let mut sub = nu / t;
                let inv = 1.0 / t;
                let mut p = inv * inv; // t^{-n-1} starting at n = 1
                for (j, &bn) in b.iter().take(K_SUB).enumerate() {
                    sub -= (j + 1) as f64 * bn * p;
                    p *= inv;
                }
                Ok(t.powf(-2.0 * s) * (dl - sub))
            },
            1.0,
            self.t_cut,
            1e-12,
        )?;
        // … plus the analytic tail of the un-subtracted remainder beyond T
        let mut tail = 0.0;
        for (j, &bn) in b.iter().enumerate().skip(K_SUB).take(B_SERIES_LEN - K_SUB) {
            if bn == 0.0 {
                continue;
            }
            let n = (j + 1) as f64;
            tail -= n * bn * self.t_cut.powf(-2.0 * s - n) / (2.0 * s + n);
        }
        let integral_1_inf = sin_factor * (i1 + tail);

        // boundary terms: the ν/t and subtracted-series pieces on [1, ∞).
        // Vanishing coefficients are skipped: at s = −1/2 the n = 1
        // denominator is zero, and reaching this point with s = −1/2 means
        // b_1 = 0 — the term is absent, not 0/0.
        let mut series = 0.0;
        for (j, &bn) in b.iter().take(K_SUB).enumerate() {
            if bn == 0.0 {
                continue;
            }
            let n = (j + 1) as f64;
            series += n * bn / (2.0 * s + n);
        }
        let boundary_terms = nu * specfun::sinc(pi * s) / 2.0 - sin_factor * series;

        let value = pole_part + integral_0_1 + integral_1_inf + boundary_terms;
        Ok(ZetaValue {
            s,
            value,
            parts: ZetaParts {
                pole_part,
                integral_0_1,
                integral_1_inf,
                boundary_terms,
            },
            est_error: sin_factor.abs() * (e0 + e1 + tail.abs() * 1e-13) + 1e-14 * value.abs(),
        })
    }
}

/// Adaptive integration of a fallible integrand: form errors (sign changes,
/// non-real determinants, …) abort the quadrature and surface as errors.
pub(crate) fn integrate_form(
    f: impl Fn(f64) -> Result<f64, GraphZetaError>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64), GraphZetaError> {
    let mut pending: Option<GraphZetaError> = None;
    let result = quadrature::integrate(
        |t| match f(t) {
            Ok(v) => v,
            Err(e) => {
                if pending.is_none() {
                    pending = Some(e);
                }
                0.0
            }
        },
        a,
        b,
        tol,
    );
    if let Some(e) = pending {
        return Err(e);
    }
    result
}
