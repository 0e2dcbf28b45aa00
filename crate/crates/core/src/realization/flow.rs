use num_bigint::BigInt;
use num_traits::One;

use super::GroupContext;
use crate::error::{Error, Result};
use crate::exact::{PolyVectorField, Polynomial, Rational, UniPoly};

/// `int_0^t p dt` where `t` is variable 0.
fn integrate_in_t(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.nvars());
    for (alpha, c) in p.terms() {
        let e = alpha.get(0);
        out.add_term(
            alpha.with_incremented(0),
            c / Rational::from_integer(BigInt::from(e + 1)),
        );
    }
    out
}

/// The flow `y(t, x)` of `X_l` with `y(0, x) = x`, as polynomials in the
/// `n + 1` variables `(t, x_1, ..., x_n)`. Component `k` of a basis field
/// only involves lower coordinates, so components are integrated in
/// increasing order.
pub fn symbolic_flow(ctx: &GroupContext, l: usize) -> Result<Vec<Polynomial>> {
    let field = ctx.field(l)?;
    let n = ctx.dim();
    let m = n + 1;
    let mut y: Vec<Polynomial> = (0..n).map(|k| Polynomial::var(m, k + 1)).collect();
    for k in 0..n {
        let comp = field.component(k);
        if comp.is_zero() {
            continue;
        }
        if (k..n).any(|j| comp.depends_on(j)) {
            return Err(Error::Residual(format!(
                "component {} of X{} depends on a coordinate of equal or higher index",
                k + 1,
                l + 1
            )));
        }
        let rhs = comp.compose(&y)?;
        y[k] = &Polynomial::var(m, k + 1) + &integrate_in_t(&rhs);
    }
    Ok(y)
}

/// Composes the flows `exp(x_1 X_1) ∘ ... ∘ exp(x_n X_n)(0)` symbolically and
/// checks that the result is the identity map.
pub fn check_exponential_coordinates(ctx: &GroupContext) -> Result<bool> {
    let n = ctx.dim();
    let mut y = vec![Polynomial::zero(n); n];
    for l in (0..n).rev() {
        let flow = symbolic_flow(ctx, l)?;
        let mut values = Vec::with_capacity(n + 1);
        values.push(Polynomial::var(n, l));
        values.extend(y.iter().cloned());
        y = flow.iter().map(|p| p.compose(&values)).collect::<Result<_>>()?;
    }
    Ok(y.iter().enumerate().all(|(k, p)| *p == Polynomial::var(n, k)))
}

/// `exp(sum_i a_i X_i)(0)`: the time-one flow from the origin of a field
/// with constant coefficients.
pub fn exp_at_origin(ctx: &GroupContext, coeffs: &[Rational]) -> Result<Vec<Rational>> {
    let n = ctx.dim();
    crate::error::check_dim(n, coeffs.len())?;
    let field = PolyVectorField::linear_combination(n, ctx.fields(), coeffs)?;
    let mut y = vec![UniPoly::zero(); n];
    for k in 0..n {
        let comp = field.component(k);
        if comp.is_zero() {
            continue;
        }
        y[k] = comp.compose_uni(&y)?.antiderivative();
    }
    Ok(y.iter().map(|p| p.eval(&Rational::one())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn heisenberg_flows() {
        let g = GroupContext::new(2, 2).unwrap();
        let f1 = symbolic_flow(&g, 0).unwrap();
        assert_eq!(f1[0], &Polynomial::var(4, 1) + &Polynomial::var(4, 0));
        let f2 = symbolic_flow(&g, 1).unwrap();
        let t = Polynomial::var(4, 0);
        let x1 = Polynomial::var(4, 1);
        assert_eq!(f2[1], &Polynomial::var(4, 2) + &t);
        assert_eq!(f2[2], &Polynomial::var(4, 3) - &(&t * &x1));
        let f3 = symbolic_flow(&g, 2).unwrap();
        assert_eq!(f3[2], &Polynomial::var(4, 3) + &t);
        // exp(a X1 + b X2 + c X3)(0) = (a, b, c - ab/2)
        let e = exp_at_origin(&g, &[int(2), int(3), int(1)]).unwrap();
        assert_eq!(e, vec![int(2), int(3), int(-2)]);
        assert!(check_exponential_coordinates(&g).unwrap());
    }

    #[test]
    fn rank_two_step_four_chart() {
        let g = GroupContext::new(2, 4).unwrap();
        assert!(check_exponential_coordinates(&g).unwrap());
    }
}
