use num_bigint::BigInt;

use super::{adjoint_integrate, DevelopedCurve, Piecewise};
use crate::error::{check_dim, Result};
use crate::exact::{Rational, UniPoly};
use crate::realization::GroupContext;

/// Checks a dual curve through the coframe: solves `sum_k X_{jk}(gamma) xi_k = lambda_j`
/// (the frame matrix is unit upper triangular) and verifies
/// `xi_k' = -sum_{j <= r} sum_i (d X_{ji} / d x_k)(gamma) h_j xi_i`
/// exactly at `samples` interior rational times.
pub fn theta_frame_check_lambda(
    ctx: &GroupContext,
    curve: &DevelopedCurve,
    lambda: &[Piecewise],
    samples: usize,
) -> Result<bool> {
    let n = ctx.dim();
    let r = ctx.rank();
    check_dim(n, lambda.len())?;
    let pieces = curve.num_pieces();
    // xi per piece
    let mut xi: Vec<Vec<UniPoly>> = Vec::with_capacity(pieces);
    for p in 0..pieces {
        let g = curve.on_piece(p);
        let mut x = vec![UniPoly::zero(); n];
        for j in (0..n).rev() {
            let mut v = lambda[j].pieces()[p].clone();
            for (k, xk) in x.iter().enumerate().skip(j + 1) {
                let entry = ctx.fields()[j].component(k);
                if entry.is_zero() || xk.is_zero() {
                    continue;
                }
                v = &v - &(&entry.compose_uni(&g)? * xk);
            }
            x[j] = v;
        }
        xi.push(x);
    }
    // d X_{ji} / d x_k for generators j
    let mut partials = Vec::with_capacity(r);
    for j in 0..r {
        let f = &ctx.fields()[j];
        let mut rows = Vec::with_capacity(n);
        for k in 0..n {
            let mut row = Vec::new();
            for i in 0..n {
                let d = f.component(i).partial(k)?;
                if !d.is_zero() {
                    row.push((i, d));
                }
            }
            rows.push(row);
        }
        partials.push(rows);
    }
    let breaks = curve.controls.breaks();
    for s in 0..samples {
        let t = Rational::new(BigInt::from(2 * s + 1), BigInt::from(2 * samples));
        let p = (0..pieces).find(|&p| t <= breaks[p + 1]).unwrap_or(pieces - 1);
        let x = curve.eval(&t);
        let h: Vec<Rational> = curve.controls.pieces()[p].h.iter().map(|q| q.eval(&t)).collect();
        let xi_t: Vec<Rational> = xi[p].iter().map(|q| q.eval(&t)).collect();
        for k in 0..n {
            let lhs = xi[p][k].derivative().eval(&t);
            let mut rhs = Rational::from_integer(0.into());
            for j in 0..r {
                for (i, d) in &partials[j][k] {
                    rhs -= d.eval(&x)? * &h[j] * &xi_t[*i];
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`theta_frame_check_lambda`] for the dual curve starting at `v0`.
pub fn theta_frame_check(ctx: &GroupContext, curve: &DevelopedCurve, v0: &[Rational], samples: usize) -> Result<bool> {
    let dual = adjoint_integrate(ctx, curve, v0)?;
    theta_frame_check_lambda(ctx, curve, &dual.lambda, samples)
}
