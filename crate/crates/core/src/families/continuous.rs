//! Closed-form volumes and surface bounds of `K_{d,r}` and `C_{d,r}`. The
//! only floating-point code in the crate; used for trend checks, never for
//! geometric decisions.

use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::gamma::gamma;

/// Volume of the Euclidean unit ball in `R^n`.
fn unit_ball(n: usize) -> f64 {
    PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0 + 1.0)
}

/// `W_n = ∫_0^{π/2} sin^n θ dθ`.
fn wallis(n: usize) -> f64 {
    PI.sqrt() * gamma((n as f64 + 1.0) / 2.0) / (2.0 * gamma(n as f64 / 2.0 + 1.0))
}

/// `v(K_{d,r}) = c_1(d) r^{d+1}`, `c_1(d) = 2/(d+1) · π^{(d-1)/2} / Γ((d+1)/2)`.
pub fn c1(d: usize) -> f64 {
    2.0 / (d as f64 + 1.0) * unit_ball(d - 1)
}

/// `v(C_{d,r}) = c_2(d) r^{d+1}`, from
/// `2(d-2) π^{(d-2)/2} / Γ(d/2) · ∫ (sin^{d-3} - 2 sin^{d-1} + sin^{d+1})`.
/// The `sin^{d-3}` term is rewritten with `(d-2) W_{d-3} = (d-1) W_{d-1}`,
/// which keeps the expression finite at `d = 2`.
pub fn c2(d: usize) -> f64 {
    let df = d as f64;
    let prefactor = 2.0 * PI.powf((df - 2.0) / 2.0) / gamma(df / 2.0);
    let bracket = (df - 1.0) * wallis(d - 1) - 2.0 * (df - 2.0) * wallis(d - 1) + (df - 2.0) * wallis(d + 1);
    prefactor * bracket
}

/// Surface of the bounding box `[-r, r]^{d-1} × [0, r^2]` of `C_{d,r}` is at
/// most `c_3(d) r^d` for `r >= 1`; by monotonicity of surface area under
/// inclusion of convex bodies it bounds `s'(C_{d,r})`.
pub fn c3(d: usize) -> f64 {
    2f64.powi(d as i32) + (d as f64 - 1.0) * 2f64.powi(d as i32 - 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuousModel {
    pub d: usize,
    pub r: i64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    /// `v(K_{d,r})`.
    pub v_k: f64,
    /// Lateral surface of `K_{d,r}`: `∫_0^{r^2} (d-1) ω_{d-1} (r^2-x)^{(d-2)/2} dx
    /// = 2(d-1) ω_{d-1} r^d / d`.
    pub s_k: f64,
    pub v_c: f64,
    pub s_c_bound: f64,
}

pub fn continuous_model(d: usize, r: i64) -> ContinuousModel {
    assert!(d >= 2, "the bodies live in dimension >= 2");
    let rf = r as f64;
    let df = d as f64;
    ContinuousModel {
        d,
        r,
        c1: c1(d),
        c2: c2(d),
        c3: c3(d),
        v_k: c1(d) * rf.powi(d as i32 + 1),
        s_k: 2.0 * (df - 1.0) * unit_ball(d - 1) * rf.powi(d as i32) / df,
        v_c: c2(d) * rf.powi(d as i32 + 1),
        s_c_bound: c3(d) * rf.powi(d as i32),
    }
}
