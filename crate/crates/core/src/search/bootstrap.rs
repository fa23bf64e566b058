use num_bigint::BigInt;
use serde::Serialize;

use crate::classify::bm_coefficient;
use crate::error::{Error, Result};
use crate::{BigRational, RatInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum BootstrapMode {
    /// `L1 = I`, `L2 = L` with `|det L| = k`.
    Identity { k: u64 },
    /// A coprime pair with `p = |det L1|`, `q = |det L2|`.
    Pair { p: u64, q: u64 },
}

/// One point of the deficit recursion: the bound
/// `|L1 A + L2 A| >= (C - alpha) |A| - D1 |A|^{1 - sigma1}`, with `D` the
/// fixed coefficient entering every step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BootstrapState {
    pub d: u32,
    #[serde(flatten)]
    pub mode: BootstrapMode,
    pub alpha: f64,
    /// Saturates at `+inf` once it leaves the `f64` range; the bound is then
    /// vacuous but the recursion for `alpha` is unaffected.
    #[serde(rename = "D1", serialize_with = "serialize_extended")]
    pub d1: f64,
    pub sigma1: f64,
    #[serde(rename = "D")]
    pub big_d: f64,
    /// Contraction constant of the pair step.
    pub c: Option<f64>,
    pub m: u64,
    pub sigma2: Option<f64>,
    #[serde(rename = "D2", serialize_with = "serialize_extended_opt")]
    pub d2: Option<f64>,
}

/// Finite values as JSON numbers, infinities as the strings `"inf"`/`"-inf"`.
fn serialize_extended<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

fn serialize_extended_opt<S: serde::Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_extended(v, s),
        None => s.serialize_none(),
    }
}

fn check_nonneg(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::InvalidParameter(format!("{name} must be finite and nonnegative, got {x}")));
    }
    Ok(())
}

impl BootstrapState {
    pub fn identity(d: u32, k: u64, alpha: f64, d1: f64, sigma1: f64, big_d: f64) -> Result<Self> {
        if d == 0 || k == 0 {
            return Err(Error::InvalidParameter("d and k must be positive".into()));
        }
        Self::build(d, BootstrapMode::Identity { k }, alpha, d1, sigma1, big_d, None)
    }

    pub fn pair(d: u32, p: u64, q: u64, alpha: f64, d1: f64, sigma1: f64, big_d: f64) -> Result<Self> {
        if d == 0 || p == 0 || q == 0 {
            return Err(Error::InvalidParameter("d, p and q must be positive".into()));
        }
        let c = pair_constant_c(p, q, d).midpoint_f64();
        Self::build(d, BootstrapMode::Pair { p, q }, alpha, d1, sigma1, big_d, Some(c))
    }

    fn build(
        d: u32,
        mode: BootstrapMode,
        alpha: f64,
        d1: f64,
        sigma1: f64,
        big_d: f64,
        c: Option<f64>,
    ) -> Result<Self> {
        for (name, x) in [("alpha", alpha), ("D1", d1), ("sigma1", sigma1), ("D", big_d)] {
            check_nonneg(name, x)?;
        }
        Ok(BootstrapState {
            d,
            mode,
            alpha,
            d1,
            sigma1,
            big_d,
            c,
            m: 0,
            sigma2: None,
            d2: None,
        })
    }

    fn require_positive_alpha(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {}", self.alpha)));
        }
        Ok(())
    }
}

/// `c = 1 / (2 max(p, q) (p^{1/d} + q^{1/d})^{2d})`, enclosed.
pub fn pair_constant_c(p: u64, q: u64, d: u32) -> RatInterval {
    let tol = BigRational::new(BigInt::from(1), BigInt::from(1) << 80);
    let b = bm_coefficient(&BigInt::from(p), &BigInt::from(q), d, &tol);
    let two_max = BigRational::from_integer(BigInt::from(2 * p.max(q)));
    let one = BigRational::from_integer(BigInt::from(1));
    RatInterval::new(
        &one / (&two_max * b.hi() * b.hi()),
        &one / (&two_max * b.lo() * b.lo()),
    )
}

/// `alpha <- max(alpha - 1/k^2, alpha (k^2 - 1)/k^2)`, `D1 <- D + k^2 D1`.
pub fn bootstrap_step_identity(state: &BootstrapState) -> Result<BootstrapState> {
    let BootstrapMode::Identity { k } = state.mode else {
        return Err(Error::InvalidParameter("identity step needs an identity-mode state".into()));
    };
    state.require_positive_alpha()?;
    let k2 = (k as f64) * (k as f64);
    let mut next = state.clone();
    next.alpha = (state.alpha - 1.0 / k2).max(state.alpha * (k2 - 1.0) / k2);
    next.d1 = state.big_d + k2 * state.d1;
    next.m += 1;
    Ok(next)
}

/// `alpha <- (1 - c^2) alpha`, `D1 <- 4 p^2 q^2 D1 + D`.
pub fn bootstrap_step_pair(state: &BootstrapState) -> Result<BootstrapState> {
    let BootstrapMode::Pair { p, q } = state.mode else {
        return Err(Error::InvalidParameter("pair step needs a pair-mode state".into()));
    };
    state.require_positive_alpha()?;
    let c = state.c.expect("pair states carry c");
    let mut next = state.clone();
    next.alpha = (1.0 - c * c) * state.alpha;
    next.d1 = 4.0 * (p as f64).powi(2) * (q as f64).powi(2) * state.d1 + state.big_d;
    next.m += 1;
    Ok(next)
}

fn step(state: &BootstrapState) -> Result<BootstrapState> {
    match state.mode {
        BootstrapMode::Identity { .. } => bootstrap_step_identity(state),
        BootstrapMode::Pair { .. } => bootstrap_step_pair(state),
    }
}

/// `sigma2 = min(sigma1/2, sigma1 (log k^2 - log(k^2 - 1)) / (2 log(k^2 + 1)))`
/// and `D2 = eps + D2'`. For `k = 1` the second term is infinite.
pub fn final_constants_identity(d: u32, k: u64, sigma1: f64, big_d: f64, eps: f64, d2_prime: f64) -> Result<(f64, f64)> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidParameter("d and k must be positive".into()));
    }
    for (name, x) in [("sigma1", sigma1), ("D", big_d), ("eps", eps), ("D2'", d2_prime)] {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {x}")));
        }
    }
    if k == 1 {
        return Ok((sigma1 / 2.0, eps + d2_prime));
    }
    let k2 = (k as f64) * (k as f64);
    let rate = sigma1 * (k2.ln() - (k2 - 1.0).ln()) / (2.0 * (k2 + 1.0).ln());
    Ok(((sigma1 / 2.0).min(rate), eps + d2_prime))
}

/// Iterates from `state` until `alpha <= eps`, returning every state
/// including the first. Fails after `max_steps` steps.
pub fn run_to_target(state: &BootstrapState, eps: f64, max_steps: u64) -> Result<Vec<BootstrapState>> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("target eps must be positive, got {eps}")));
    }
    let mut trace = vec![state.clone()];
    let mut cur = state.clone();
    while cur.alpha > eps {
        if cur.m - state.m >= max_steps {
            return Err(Error::BudgetExceeded(format!("alpha still {} after {max_steps} steps", cur.alpha)));
        }
        cur = step(&cur)?;
        trace.push(cur.clone());
    }
    Ok(trace)
}

/// Steps of the identity recursion from `alpha0` down to `eps`: the
/// subtractive phase while `alpha >= 1`, then
/// `ceil(log(alpha / eps) / log(k^2 / (k^2 - 1)))` proportional steps.
pub fn closed_form_steps(alpha0: f64, eps: f64, k: u64) -> u64 {
    if alpha0 <= eps {
        return 0;
    }
    let k2 = (k as f64) * (k as f64);
    if k == 1 {
        return 1;
    }
    let mut alpha = alpha0;
    let mut steps = 0u64;
    if alpha >= 1.0 {
        let s = ((alpha - 1.0) * k2).floor() + 1.0;
        steps += s as u64;
        alpha -= s / k2;
        if alpha <= eps {
            return steps;
        }
    }
    steps + ((alpha / eps).ln() / (k2 / (k2 - 1.0)).ln()).ceil() as u64
}

/// `sigma2` read off the recursion itself for `|A| = e^{log_a}`: run
/// `m = floor(sigma1 log|A| / (2 log(k^2 + 1)))` identity steps from
/// `alpha0 = 1/2` and measure the decay exponent of `alpha`, capped by the
/// `sigma1/2` exponent of the error term. Values are renormalized on the fly
/// (both updates are homogeneous in the regime used), so no underflow occurs.
pub fn iterated_sigma2(k: u64, sigma1: f64, log_a: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParameter("iterated extraction needs k >= 2".into()));
    }
    if !(sigma1 > 0.0 && log_a > 0.0) {
        return Err(Error::InvalidParameter("sigma1 and log|A| must be positive".into()));
    }
    let k2 = (k as f64) * (k as f64);
    let m = (sigma1 * log_a / (2.0 * (k2 + 1.0).ln())).floor() as u64;
    let mut state = BootstrapState::identity(1, k, 0.5, 1.0, sigma1, 1.0)?;
    let (mut log_alpha_shift, mut log_d_shift) = (0.0f64, 0.0f64);
    const TINY: f64 = 1e-150;
    const HUGE: f64 = 1e150;
    for _ in 0..m {
        state = bootstrap_step_identity(&state)?;
        if state.alpha < TINY {
            state.alpha /= TINY;
            log_alpha_shift += TINY.ln();
        }
        if state.d1 > HUGE {
            state.d1 /= HUGE;
            state.big_d /= HUGE;
            log_d_shift += HUGE.ln();
        }
    }
    let log_alpha = state.alpha.ln() + log_alpha_shift - 0.5f64.ln();
    let log_d1 = state.d1.ln() + log_d_shift;
    // the choice of m keeps D1 <= 2 (k^2 + 1)^m
    if log_d1 > 2f64.ln() + m as f64 * (k2 + 1.0).ln() + 1e-9 {
        return Err(Error::Internal("error coefficient outgrew (k^2+1)^m".into()));
    }
    let decay = -log_alpha / log_a;
    Ok((sigma1 / 2.0).min(decay))
}
