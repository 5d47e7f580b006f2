//! Analytic companions to the simulator: the order-statistic distribution
//! of the true error pattern's RMRE, and the closed-form decoding
//! complexity models used to cross-check the instrumented counters.
//!
//! For AWGN/BPSK, the LLR of a bit transmitted as +1 is Gaussian with
//! mean 2/sigma^2 and variance 4/sigma^2. Writing F and f for its CDF and
//! density, the probability that the most reliable erroneous bit has
//! rank i is
//!
//! ```text
//! P_0 = (1 - F(0))^N
//! P_i = N! / ((i-1)! (N-i)!) *
//!       Int_0^inf  [F(t) - F(-t)]^(i-1) f(-t) [1 - F(t)]^(N-i) dt
//! ```
//!
//! The combinatorial factor overflows 64-bit integers long before
//! N = 127, so everything is computed in log space, and the integral is
//! mapped onto (0, 1) and evaluated with adaptive Simpson quadrature.

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::real::Real;

/// CDF/density evaluators for the LLR of a +1 transmission.
#[derive(Clone, Copy, Debug)]
pub struct LlrDensity<F: Real> {
    mean: F,
    sd: F,
}

impl<F: Real> LlrDensity<F> {
    pub fn new(ebn0_db: F, rate: F) -> Result<Self> {
        Ok(Self::from_params(&ChannelParams::new(ebn0_db, rate)?))
    }

    pub fn from_params(params: &ChannelParams<F>) -> Self {
        let two = F::from_f64_lossy(2.0);
        let mean = two / params.sigma2();
        let sd = two / params.sigma2().sqrt();
        Self { mean, sd }
    }

    pub fn mean(&self) -> F {
        self.mean
    }

    pub fn sd(&self) -> F {
        self.sd
    }

    fn z(&self, t: F) -> F {
        (t - self.mean) / self.sd
    }

    pub fn pdf(&self, t: F) -> F {
        let z = self.z(t);
        let half = F::from_f64_lossy(0.5);
        let inv_sqrt_2pi = F::from_f64_lossy(0.398_942_280_401_432_7);
        (-half * z * z).exp() * inv_sqrt_2pi / self.sd
    }

    pub fn ln_pdf(&self, t: F) -> F {
        let z = self.z(t);
        let half = F::from_f64_lossy(0.5);
        let ln_sqrt_2pi = F::from_f64_lossy(0.918_938_533_204_672_7);
        -half * z * z - ln_sqrt_2pi - self.sd.ln()
    }

    /// Cumulative distribution, via the complementary error function so
    /// both tails stay accurate.
    pub fn cdf(&self, t: F) -> F {
        let half = F::from_f64_lossy(0.5);
        let inv_sqrt2 = F::from_f64_lossy(std::f64::consts::FRAC_1_SQRT_2);
        half * (-self.z(t) * inv_sqrt2).complementary_erf()
    }

    /// Survival function 1 - F(t).
    pub fn sf(&self, t: F) -> F {
        let half = F::from_f64_lossy(0.5);
        let inv_sqrt2 = F::from_f64_lossy(std::f64::consts::FRAC_1_SQRT_2);
        half * (self.z(t) * inv_sqrt2).complementary_erf()
    }
}

/// The distribution P_0..P_N of the true error pattern's RMRE.
#[derive(Clone, Debug)]
pub struct RmreDistribution<F: Real> {
    pub n: usize,
    pub ebn0_db: F,
    pub rate: F,
    /// `p[i]` is the probability of RMRE = i, for i in 0..=n.
    pub p: Vec<F>,
}

impl<F: Real> RmreDistribution<F> {
    pub fn sum(&self) -> F {
        self.p.iter().fold(F::zero(), |a, &b| a + b)
    }

    /// Total-variation distance against an empirical histogram of RMRE
    /// values (`counts[i]` = occurrences of RMRE = i).
    pub fn total_variation(&self, counts: &[u64], trials: u64) -> f64 {
        let mut tv = 0.0;
        for i in 0..=self.n {
            let emp = counts.get(i).copied().unwrap_or(0) as f64 / trials as f64;
            let ana = self.p[i].to_f64().unwrap_or(0.0);
            tv += (emp - ana).abs();
        }
        tv / 2.0
    }
}

/// Adaptive Simpson quadrature with absolute tolerance.
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson<F: Real>(
    f: &impl Fn(F) -> F,
    a: F,
    b: F,
    fa: F,
    fm: F,
    fb: F,
    tol: F,
    depth: u32,
    worst: &mut F,
) -> F {
    let two = F::from_f64_lossy(2.0);
    let six = F::from_f64_lossy(6.0);
    let fifteen = F::from_f64_lossy(15.0);
    let h = b - a;
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let flm = f(lm);
    let frm = f(rm);
    let whole = h / six * (fa + two * two * fm + fb);
    let left = (m - a) / six * (fa + two * two * flm + fm);
    let right = (b - m) / six * (fm + two * two * frm + fb);
    let delta = left + right - whole;
    if depth == 0 {
        let err = delta.abs() / fifteen;
        if err > *worst {
            *worst = err;
        }
        return left + right + delta / fifteen;
    }
    if delta.abs() <= fifteen * tol {
        return left + right + delta / fifteen;
    }
    let half_tol = tol / two;
    adaptive_simpson(f, a, m, fa, flm, fm, half_tol, depth - 1, worst)
        + adaptive_simpson(f, m, b, fm, frm, fb, half_tol, depth - 1, worst)
}

/// Integrates over (0, 1) with a fixed seed grid of panels, each refined
/// adaptively. The seed grid guards against integrands whose support is a
/// single narrow peak (the high-rank order statistics), which a single
/// top-level panel would miss entirely.
fn integrate_unit_interval<F: Real>(f: impl Fn(F) -> F, tol: F) -> Result<F> {
    const PANELS: usize = 128;
    let two = F::from_f64_lossy(2.0);
    let panels = F::from_usize(PANELS).expect("panel count fits scalar");
    let panel_tol = tol / panels;
    let mut worst = F::zero();
    let mut total = F::zero();
    for p in 0..PANELS {
        let a = F::from_usize(p).expect("panel index") / panels;
        let b = F::from_usize(p + 1).expect("panel index") / panels;
        let fa = f(a);
        let fb = f(b);
        let fm = f((a + b) / two);
        total += adaptive_simpson(&f, a, b, fa, fm, fb, panel_tol, 40, &mut worst);
    }
    if worst > panel_tol {
        return Err(Error::QuadratureNonConvergence {
            achieved: (worst * panels).to_f64().unwrap_or(f64::NAN),
            requested: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(total)
}

/// Computes the RMRE distribution by log-space quadrature.
///
/// `abs_tol` is the absolute tolerance per P_i (1e-10 is the default used
/// by the CLI for f64).
pub fn rmre_distribution<F: Real>(
    n: usize,
    ebn0_db: F,
    rate: F,
    abs_tol: F,
) -> Result<RmreDistribution<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("code length must be >= 1".into()));
    }
    let den = LlrDensity::new(ebn0_db, rate)?;
    let nf = F::from_usize(n).expect("n fits scalar");
    let one = F::one();

    let mut p = Vec::with_capacity(n + 1);
    p.push(den.sf(F::zero()).powi(n as i32));

    let ln_gamma_n1 = (nf + one).lgamma();
    for i in 1..=n {
        let i_f = F::from_usize(i).expect("i fits scalar");
        let ln_coeff = ln_gamma_n1 - i_f.lgamma() - (nf - i_f + one).lgamma();
        let integrand = move |u: F| -> F {
            if u <= F::zero() || u >= one {
                return F::zero();
            }
            // substitution t = u / (1 - u), dt = du / (1 - u)^2
            let t = u / (one - u);
            let mut ln_val = ln_coeff + den.ln_pdf(-t);
            if i > 1 {
                let q = den.cdf(t) - den.cdf(-t);
                if q <= F::zero() {
                    return F::zero();
                }
                ln_val += (i_f - one) * q.ln();
            }
            if i < n {
                let sf = den.sf(t);
                if sf <= F::zero() {
                    return F::zero();
                }
                ln_val += (nf - i_f) * sf.ln();
            }
            let jac = (one - u) * (one - u);
            ln_val.exp() / jac
        };
        p.push(integrate_unit_interval(integrand, abs_tol)?);
    }
    Ok(RmreDistribution {
        n,
        ebn0_db,
        rate,
        p,
    })
}

/// Inputs for the closed-form decoding complexity models: guess counts,
/// the average parity-checks-per-test constant, and the elimination-depth
/// moments, all measured or estimated elsewhere.
#[derive(Clone, Copy, Debug)]
pub struct ComplexityModel {
    pub n: usize,
    pub k_info: usize,
    /// Mean guesses of the plain decoder (T1).
    pub t1: f64,
    /// Mean guesses of the elimination-aided decoder (T2).
    pub t2: f64,
    /// Average parity-check equations consumed per verification.
    pub c: f64,
    /// E[M].
    pub e_m: f64,
    /// E[M (M + 3) / 2].
    pub e_m_m3_half: f64,
}

/// The three closed-form operation counts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexityEstimates {
    pub orbgrand: f64,
    pub with_partial_ge: f64,
    pub with_reduced_ge: f64,
}

/// Evaluates the three models:
///
/// ```text
/// O_plain   = T1 c N
/// O_partial = E[M] (N+1) (N-K) + T2 c N
/// O_reduced = E[M(M+3)/2] (N-K) + T2 c N
/// ```
pub fn complexity_models(model: &ComplexityModel) -> ComplexityEstimates {
    let n = model.n as f64;
    let r = (model.n - model.k_info) as f64;
    let verify1 = model.t1 * model.c * n;
    let verify2 = model.t2 * model.c * n;
    ComplexityEstimates {
        orbgrand: verify1,
        with_partial_ge: model.e_m * (n + 1.0) * r + verify2,
        with_reduced_ge: model.e_m_m3_half * r + verify2,
    }
}
