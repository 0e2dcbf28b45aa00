use std::fmt;

use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::{check_dim, Result};

/// A vector field `sum_k f_k(x) d/dx_k` with polynomial components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    components: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        for c in &components {
            check_dim(n, c.nvars())?;
        }
        Ok(PolyVectorField { components })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            components: vec![Polynomial::zero(n); n],
        }
    }

    /// The constant field `d/dx_k` (0-based).
    pub fn coordinate(n: usize, k: usize) -> Self {
        let mut f = Self::zero(n);
        f.components[k] = Polynomial::one(n);
        f
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Polynomial {
        &self.components[k]
    }

    pub(crate) fn component_mut(&mut self, k: usize) -> &mut Polynomial {
        &mut self.components[k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// The derivation `X(p) = sum_k X_k dp/dx_k`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars(), p.nvars())?;
        let mut out = Polynomial::zero(p.nvars());
        for (k, xk) in self.components.iter().enumerate() {
            if xk.is_zero() || !p.depends_on(k) {
                continue;
            }
            out = &out + &(xk * &p.partial(k)?);
        }
        Ok(out)
    }

    /// `[X, Y]_l = sum_k (X_k d_k Y_l - Y_k d_k X_l)`.
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        check_dim(self.nvars(), other.nvars())?;
        let n = self.nvars();
        let mut out = Vec::with_capacity(n);
        for l in 0..n {
            let a = self.apply(&other.components[l])?;
            let b = other.apply(&self.components[l])?;
            out.push(&a - &b);
        }
        Ok(PolyVectorField { components: out })
    }

    /// Components evaluated at the origin.
    pub fn eval_at_zero(&self) -> Vec<Rational> {
        self.components.iter().map(Polynomial::constant_term).collect()
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &PolyVectorField, c: &Rational) {
        assert_eq!(self.nvars(), other.nvars(), "vector field dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// `sum_i coeffs[i] * fields[i]`
    pub fn linear_combination(n: usize, fields: &[PolyVectorField], coeffs: &[Rational]) -> Result<PolyVectorField> {
        check_dim(fields.len(), coeffs.len())?;
        let mut out = Self::zero(n);
        for (f, c) in fields.iter().zip(coeffs) {
            check_dim(n, f.nvars())?;
            out.add_scaled(f, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        check_dim(self.nvars(), other.nvars())?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::from_integer(1.into()));
        Ok(out)
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}) d{}", k + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn heisenberg() -> (PolyVectorField, PolyVectorField) {
        // X1 = d1, X2 = d2 - x1 d3
        let mut x2 = PolyVectorField::coordinate(3, 1);
        *x2.component_mut(2) = Polynomial::var(3, 0).scale(&int(-1));
        (PolyVectorField::coordinate(3, 0), x2)
    }

    #[test]
    fn bracket_sign_convention() {
        let (x1, x2) = heisenberg();
        let b = x2.bracket(&x1).unwrap();
        assert_eq!(b, PolyVectorField::coordinate(3, 2));
        assert_eq!(x1.bracket(&x2).unwrap().eval_at_zero(), vec![int(0), int(0), int(-1)]);
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi() {
        let (x1, x2) = heisenberg();
        let mut x3 = PolyVectorField::zero(3);
        *x3.component_mut(0) = &Polynomial::var(3, 1) * &Polynomial::var(3, 2);
        let ab = x1.bracket(&x2).unwrap();
        let ba = x2.bracket(&x1).unwrap();
        assert_eq!(ab, ba.scale(&int(-1)));
        let j = PolyVectorField::linear_combination(
            3,
            &[
                x1.bracket(&x2.bracket(&x3).unwrap()).unwrap(),
                x2.bracket(&x3.bracket(&x1).unwrap()).unwrap(),
                x3.bracket(&x1.bracket(&x2).unwrap()).unwrap(),
            ],
            &[int(1), int(1), int(1)],
        )
        .unwrap();
        assert!(j.is_zero());
    }

    #[test]
    fn rejects_mismatched_dimensions() {
        assert!(PolyVectorField::zero(2).bracket(&PolyVectorField::zero(3)).is_err());
        assert!(PolyVectorField::new(vec![Polynomial::zero(2)]).is_err());
    }
}
