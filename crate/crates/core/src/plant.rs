//! Leader-follower α-L formation dynamics.
//!
//! The follower only learns the leader's bearing `α` through the network, so
//! between transmissions it runs a predictor `α̂` and feeds it into a
//! feedback-linearizing controller. Substituting that controller into the
//! α-L kinematics gives the reduced closed loop simulated here:
//!
//! ```text
//! L̇  = K_L (L_d − L) + (g_v(L) + n₁)(cos α − cos α̂)
//! α̇  = ((g_v(L) + n₁)/L)(sin α̂ − sin α) + K_α(α_d − α̂) + g_ω(α) + n₂ − g_ω(α̂)
//! α̂̇ = K_α(α_d − α̂)
//! ```
//!
//! with the leader laws `g_v(L) = v_gain·L` and `g_ω(α) = w_gain·α`.

use thiserror::Error;

use crate::trigger::TriggerParams;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlantError {
    #[error("inter-vehicle distance must be positive, got L = {0}")]
    NonPositiveDistance(f64),
    #[error("integration step must be positive, got dt = {0}")]
    NonPositiveStep(f64),
}

/// Physical formation state: separation `l` in meters, leader bearing `alpha`
/// in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVec {
    pub l: f64,
    pub alpha: f64,
}

impl StateVec {
    pub const fn new(l: f64, alpha: f64) -> Self {
        Self { l, alpha }
    }

    /// `max(|l|, |alpha|)`.
    pub fn inf_norm(&self) -> f64 {
        self.l.abs().max(self.alpha.abs())
    }

    /// ∞-norm after weighting each component; the unweighted norm mixes
    /// meters and radians.
    pub fn scaled_inf_norm(&self, scale: StateScale) -> f64 {
        (self.l * scale.l)
            .abs()
            .max((self.alpha * scale.alpha).abs())
    }

    pub fn minus(&self, other: &StateVec) -> StateVec {
        StateVec::new(self.l - other.l, self.alpha - other.alpha)
    }
}

/// Per-component weights used wherever `|x|` is taken over a mixed-unit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateScale {
    pub l: f64,
    pub alpha: f64,
}

impl Default for StateScale {
    fn default() -> Self {
        Self { l: 1.0, alpha: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantParams {
    pub k_l: f64,
    pub k_alpha: f64,
    pub l_d: f64,
    pub alpha_d: f64,
    /// Center-to-front length of the follower; only enters the controller.
    pub d: f64,
    pub v_gain: f64,
    pub w_gain: f64,
    /// Essential bound `M` on the leader disturbances `n₁`, `n₂`.
    pub noise_bound: f64,
}

impl Default for PlantParams {
    fn default() -> Self {
        Self {
            k_l: 1.0,
            k_alpha: 1.0,
            l_d: 4.0,
            alpha_d: 20f64.to_radians(),
            d: 0.2,
            v_gain: 0.8,
            w_gain: 2.2,
            noise_bound: 0.0,
        }
    }
}

impl PlantParams {
    pub fn setpoint(&self) -> StateVec {
        StateVec::new(self.l_d, self.alpha_d)
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.k_l > 0.0) {
            return Err(format!("k_l must be > 0, got {}", self.k_l));
        }
        if !(self.k_alpha > 0.0) {
            return Err(format!("k_alpha must be > 0, got {}", self.k_alpha));
        }
        if !(self.l_d > 0.0) {
            return Err(format!("l_d must be > 0, got {}", self.l_d));
        }
        if !(self.d > 0.0) {
            return Err(format!("d must be > 0, got {}", self.d));
        }
        if !(self.noise_bound >= 0.0) {
            return Err(format!(
                "noise_bound must be >= 0, got {}",
                self.noise_bound
            ));
        }
        if !self.alpha_d.is_finite() || !self.v_gain.is_finite() || !self.w_gain.is_finite() {
            return Err("alpha_d, v_gain and w_gain must be finite".into());
        }
        Ok(())
    }

    /// Constants bounding the bearing estimation error `e = α − α̂` of this
    /// plant, in the form `d|e|/dt ≤ L_e|e| + L_x|x̄| + L_w|w|` with `W(e) = |e|`.
    ///
    /// From the closed loop,
    /// `ė = (v_gain + n₁/L)(sin α̂ − sin α) + w_gain·e + n₂`, and
    /// `|sin α̂ − sin α| ≤ |e|`, so `L_e = |w_gain| + |v_gain| + M/l_floor`,
    /// `L_x = 0`, `L_w = 1` whenever `L ≥ l_floor`.
    pub fn estimation_error_bounds(&self, l_floor: f64) -> TriggerParams {
        TriggerParams {
            l_e: self.w_gain.abs() + self.v_gain.abs() + self.noise_bound / l_floor,
            l_x: 0.0,
            l_w: 1.0,
            w1: 1.0,
            w2: 1.0,
            chi1_bar: 1.0,
            c1: 1.0,
            c_chi: 0.0,
            m_bound: self.noise_bound,
        }
    }

    fn g_v(&self, l: f64) -> f64 {
        self.v_gain * l
    }

    fn g_omega(&self, alpha: f64) -> f64 {
        self.w_gain * alpha
    }
}

/// True formation state plus the follower's bearing predictor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimState {
    pub x: StateVec,
    pub alpha_hat: f64,
}

impl SimState {
    pub fn new(l: f64, alpha: f64, alpha_hat: f64) -> Self {
        Self {
            x: StateVec::new(l, alpha),
            alpha_hat,
        }
    }

    /// Bearing estimation error `α − α̂`.
    pub fn est_error(&self) -> f64 {
        self.x.alpha - self.alpha_hat
    }
}

/// Vector-space operations needed by [`rk4`]. The derivative is represented
/// with the same type as the state.
pub trait OdeState: Copy {
    /// `self + h·rate`
    fn step_by(&self, h: f64, rate: &Self) -> Self;
}

impl OdeState for f64 {
    fn step_by(&self, h: f64, rate: &Self) -> Self {
        self + h * rate
    }
}

impl OdeState for SimState {
    fn step_by(&self, h: f64, rate: &Self) -> Self {
        SimState {
            x: StateVec::new(self.x.l + h * rate.x.l, self.x.alpha + h * rate.x.alpha),
            alpha_hat: self.alpha_hat + h * rate.alpha_hat,
        }
    }
}

/// One classical fourth-order Runge-Kutta step of an autonomous system.
pub fn rk4<S, E, F>(y: S, dt: f64, mut f: F) -> Result<S, E>
where
    S: OdeState,
    F: FnMut(&S) -> Result<S, E>,
{
    let k1 = f(&y)?;
    let k2 = f(&y.step_by(0.5 * dt, &k1))?;
    let k3 = f(&y.step_by(0.5 * dt, &k2))?;
    let k4 = f(&y.step_by(dt, &k3))?;
    Ok(y.step_by(dt / 6.0, &k1)
        .step_by(dt / 3.0, &k2)
        .step_by(dt / 3.0, &k3)
        .step_by(dt / 6.0, &k4))
}

/// Time derivative of `(L, α, α̂)`; the returned [`SimState`] holds rates.
pub fn closed_loop_rhs(
    s: &SimState,
    n1: f64,
    n2: f64,
    p: &PlantParams,
) -> Result<SimState, PlantError> {
    let SimState {
        x: StateVec { l, alpha },
        alpha_hat,
    } = *s;
    if !(l > 0.0) {
        return Err(PlantError::NonPositiveDistance(l));
    }
    let v1 = p.g_v(l) + n1;
    let l_dot = p.k_l * (p.l_d - l) + v1 * (alpha.cos() - alpha_hat.cos());
    let alpha_dot = v1 / l * (alpha_hat.sin() - alpha.sin())
        + p.k_alpha * (p.alpha_d - alpha_hat)
        + p.g_omega(alpha)
        + n2
        - p.g_omega(alpha_hat);
    let alpha_hat_dot = p.k_alpha * (p.alpha_d - alpha_hat);
    Ok(SimState::new(l_dot, alpha_dot, alpha_hat_dot))
}

/// RK4 step of the closed loop with the disturbance held constant.
pub fn rk4_step(
    s: &SimState,
    dt: f64,
    noise: (f64, f64),
    p: &PlantParams,
) -> Result<SimState, PlantError> {
    if !(dt > 0.0) {
        return Err(PlantError::NonPositiveStep(dt));
    }
    rk4(*s, dt, |y| closed_loop_rhs(y, noise.0, noise.1, p))
}

/// Follower inputs `(v₂, ω₂)` of the feedback-linearizing law, given the
/// follower-side bearing `phi` and the leader inputs `(v1, omega1)`.
pub fn controller_outputs(
    l: f64,
    phi: f64,
    alpha_hat: f64,
    v1: f64,
    omega1: f64,
    p: &PlantParams,
) -> (f64, f64) {
    let (s_phi, c_phi) = phi.sin_cos();
    let (s_hat, c_hat) = alpha_hat.sin_cos();
    let a = p.k_l * (p.l_d - l) - c_hat * v1;
    let b = p.k_alpha * (p.alpha_d - alpha_hat) + s_hat / l * v1 - omega1;
    let v2 = -c_phi * a - l * s_phi * b;
    let omega2 = -s_phi / p.d * a + l / p.d * c_phi * b;
    (v2, omega2)
}

/// Open-loop α-L kinematics `(L̇, α̇)` for arbitrary leader and follower
/// inputs.
pub fn alpha_l_kinematics(
    x: StateVec,
    phi: f64,
    v1: f64,
    omega1: f64,
    v2: f64,
    omega2: f64,
    d: f64,
) -> (f64, f64) {
    let (s_phi, c_phi) = phi.sin_cos();
    let (s_a, c_a) = x.alpha.sin_cos();
    let l_dot = v1 * c_a - v2 * c_phi - d * omega2 * s_phi;
    let alpha_dot = (-v1 * s_a - v2 * s_phi + d * omega2 * c_phi) / x.l + omega1;
    (l_dot, alpha_dot)
}

/// Closed-form solution of the predictor `α̂̇ = K_α(α_d − α̂)`.
pub fn flow_map(alpha_hat0: f64, t: f64, p: &PlantParams) -> f64 {
    p.alpha_d + (alpha_hat0 - p.alpha_d) * (-p.k_alpha * t).exp()
}
