use crate::error::{check_dim, Error, Result};
use crate::exact::{to_f64, Polynomial, Rational};
use crate::realization::GroupContext;

/// A polynomial prepared for repeated floating-point evaluation.
struct FloatPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl FloatPoly {
    fn new(p: &Polynomial) -> Self {
        FloatPoly {
            terms: p
                .terms()
                .map(|(alpha, c)| {
                    let powers = alpha
                        .exponents()
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(k, &e)| (k, i32::from(e)))
                        .collect();
                    (to_f64(c), powers)
                })
                .collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, powers)| powers.iter().fold(*c, |acc, &(k, e)| acc * x[k].powi(e)))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ShootResult {
    pub dt: f64,
    pub steps: usize,
    /// Sample times and states, including both endpoints.
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    /// `sum_j P_j^{v0}(gamma)^2` at the start.
    pub hamiltonian0: f64,
    /// Largest deviation of that quantity along the integration.
    pub max_drift: f64,
}

/// Fixed-step RK4 for `gamma' = -sum_{j <= r} P_j^{v0}(gamma) X_j(gamma)`
/// from the origin, tracking `sum_j P_j^{v0}(gamma)^2`.
pub fn normal_shoot(ctx: &GroupContext, v0: &[Rational], horizon: f64, dt: f64) -> Result<ShootResult> {
    check_dim(ctx.dim(), v0.len())?;
    if !(dt > 0.0 && dt.is_finite()) || !(horizon >= 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidParameters(format!(
            "need dt > 0 and a finite horizon, got dt={dt}, T={horizon}"
        )));
    }
    let n = ctx.dim();
    let r = ctx.rank();
    let exact = ctx.abnormal_variety_generators(v0)?;
    let p: Vec<FloatPoly> = exact.iter().map(FloatPoly::new).collect();
    let fields: Vec<Vec<(usize, FloatPoly)>> = (0..r)
        .map(|j| {
            ctx.fields()[j]
                .components()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, FloatPoly::new(c)))
                .collect()
        })
        .collect();
    let rhs = |x: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for j in 0..r {
            let pj = p[j].eval(x);
            if pj == 0.0 {
                continue;
            }
            for (k, c) in &fields[j] {
                out[*k] -= pj * c.eval(x);
            }
        }
        out
    };
    // The drift is measured exactly at the floating-point state, so that it
    // reflects the integrator rather than rounding in the evaluation.
    let h0_exact: Rational = v0[..r].iter().map(|c| c * c).sum();
    let drift = |x: &[f64]| -> Result<f64> {
        let xq = x
            .iter()
            .map(|&xi| {
                Rational::from_float(xi).ok_or_else(|| Error::InvalidParameters("state left the finite range".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut h = -h0_exact.clone();
        for q in &exact {
            let val = q.eval(&xq)?;
            h += &val * &val;
        }
        Ok(to_f64(&h).abs())
    };

    let steps = (horizon / dt).round() as usize;
    let every = (steps / 100).max(1);
    let mut x = vec![0.0; n];
    // Kahan compensation for the state update.
    let mut carry = vec![0.0; n];
    let mut max_drift: f64 = 0.0;
    let mut times = vec![0.0];
    let mut states = vec![x.clone()];
    let axpy = |x: &[f64], k: &[f64], a: f64| -> Vec<f64> { x.iter().zip(k).map(|(xi, ki)| xi + a * ki).collect() };
    for step in 1..=steps {
        let k1 = rhs(&x);
        let k2 = rhs(&axpy(&x, &k1, dt / 2.0));
        let k3 = rhs(&axpy(&x, &k2, dt / 2.0));
        let k4 = rhs(&axpy(&x, &k3, dt));
        for i in 0..n {
            let inc = dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) - carry[i];
            let next = x[i] + inc;
            carry[i] = (next - x[i]) - inc;
            x[i] = next;
        }
        max_drift = max_drift.max(drift(&x)?);
        if step % every == 0 || step == steps {
            times.push(step as f64 * dt);
            states.push(x.clone());
        }
    }
    Ok(ShootResult {
        dt,
        steps,
        times,
        states,
        hamiltonian0: to_f64(&h0_exact),
        max_drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn straight_line_and_rest() {
        let g = GroupContext::new(2, 4).unwrap();
        let mut v0 = vec![int(0); g.dim()];
        v0[0] = int(-1);
        let s = normal_shoot(&g, &v0, 1.0, 1e-2).unwrap();
        let end = s.states.last().unwrap();
        assert!((end[0] - 1.0).abs() < 1e-12);
        assert!(end[1..].iter().all(|x| x.abs() < 1e-12));
        assert_eq!(s.hamiltonian0, 1.0);

        let rest = normal_shoot(&g, &vec![int(0); g.dim()], 1.0, 1e-2).unwrap();
        assert!(rest.states.last().unwrap().iter().all(|&x| x == 0.0));
        assert!(normal_shoot(&g, &v0, 1.0, 0.0).is_err());
    }
}
