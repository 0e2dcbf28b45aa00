use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, MultiIndex, Rational, UniPoly};
use crate::error::{check_dim, Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

/// One entry of the JSON form of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialTerm {
    pub exp: Vec<u16>,
    pub num: String,
    pub den: String,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_k` (0-based).
    pub fn var(nvars: usize, k: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, k), Rational::one())
    }

    pub fn monomial(alpha: MultiIndex, c: Rational) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(alpha, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (alpha, c) in terms {
            check_dim(nvars, alpha.len())?;
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    /// Adds `c x^alpha` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        debug_assert_eq!(alpha.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        assert_eq!(self.nvars, other.nvars, "polynomial dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (alpha, a) in &other.terms {
            self.add_term(alpha.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        check_dim(self.nvars, x.len())?;
        let mut total = Rational::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in alpha.exponents().iter().enumerate() {
                if e > 0 {
                    term *= num_traits::pow(x[k].clone(), e as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// `d/dx_k` (0-based `k`).
    pub fn partial(&self, k: usize) -> Result<Polynomial> {
        if k >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                len: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (alpha, c) in &self.terms {
            let e = alpha.get(k);
            if e > 0 {
                let lowered = alpha.with_decremented(k).expect("positive exponent");
                out.add_term(lowered, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    pub(crate) fn depends_on(&self, k: usize) -> bool {
        self.terms.keys().any(|a| a.get(k) > 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::total).max()
    }

    /// Largest weighted degree of a monomial, `None` for the zero polynomial.
    pub fn weighted_degree(&self, degrees: &[usize]) -> Result<Option<usize>> {
        let mut best = None;
        for alpha in self.terms.keys() {
            let d = super::weighted_degree(alpha, degrees)?;
            best = Some(best.map_or(d, |b: usize| b.max(d)));
        }
        Ok(best)
    }

    /// Substitutes `x_k -> values[k]`.
    pub fn compose(&self, values: &[Polynomial]) -> Result<Polynomial> {
        check_dim(self.nvars, values.len())?;
        let m = values.first().map_or(0, Polynomial::nvars);
        for v in values {
            check_dim(m, v.nvars)?;
        }
        Ok(substitute(self, values, Polynomial::one(m)))
    }

    /// Substitutes univariate polynomials `x_k -> values[k](t)`.
    pub fn compose_uni(&self, values: &[UniPoly]) -> Result<UniPoly> {
        check_dim(self.nvars, values.len())?;
        Ok(substitute(self, values, UniPoly::one()))
    }

    /// Embeds into a ring with more variables: `x_k -> x_{offset + k}`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Polynomial {
        assert!(offset + self.nvars <= nvars);
        let mut out = Polynomial::zero(nvars);
        for (alpha, c) in &self.terms {
            let mut e = vec![0u16; nvars];
            e[offset..offset + self.nvars].copy_from_slice(alpha.exponents());
            out.add_term(MultiIndex::from_exponents(e), c.clone());
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<PolynomialTerm> {
        self.terms
            .iter()
            .map(|(alpha, c)| PolynomialTerm {
                exp: alpha.exponents().to_vec(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(nvars: usize, terms: &[PolynomialTerm]) -> Result<Polynomial> {
        let mut out = Polynomial::zero(nvars);
        for t in terms {
            check_dim(nvars, t.exp.len())?;
            let c = parse_num_den(&t.num, &t.den)?;
            out.add_term(MultiIndex::from_exponents(t.exp.clone()), c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_terms()).expect("terms serialize")
    }

    /// Human-readable form with custom variable names.
    pub fn format_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (alpha, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(alpha, &name);
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub(crate) fn parse_num_den(num: &str, den: &str) -> Result<Rational> {
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator {num:?}")))?;
    let d: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

fn format_monomial(alpha: &MultiIndex, name: &impl Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (k, &e) in alpha.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(name(k)),
            _ => parts.push(format!("{}^{}", name(k), e)),
        }
    }
    parts.join("*")
}

/// Commutative algebras a polynomial can be evaluated in.
pub(crate) trait Substitutable: Clone {
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_scaled_ref(&mut self, other: &Self, c: &Rational);
    fn zero_like(&self) -> Self;
}

impl Substitutable for Polynomial {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_scaled_ref(&mut self, other: &Self, c: &Rational) {
        self.add_scaled(other, c)
    }
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars)
    }
}

impl Substitutable for UniPoly {
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_scaled_ref(&mut self, other: &Self, c: &Rational) {
        *self = &*self + &other.scale(c);
    }
    fn zero_like(&self) -> Self {
        UniPoly::zero()
    }
}

/// Evaluates `p` on algebra elements, caching powers of each substituted value.
pub(crate) fn substitute<T: Substitutable>(p: &Polynomial, values: &[T], one: T) -> T {
    let mut powers: Vec<Vec<T>> = vec![vec![one.clone()]; values.len()];
    let mut total = one.zero_like();
    for (alpha, c) in &p.terms {
        let mut term = one.clone();
        for (k, &e) in alpha.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[k].len() <= e as usize {
                let next = powers[k].last().expect("nonempty").mul_ref(&values[k]);
                powers[k].push(next);
            }
            term = term.mul_ref(&powers[k][e as usize]);
        }
        total.add_scaled_ref(&term, c);
    }
    total
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(|k| format!("x{}", k + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn x(n: usize, k: usize) -> Polynomial {
        Polynomial::var(n, k)
    }

    #[test]
    fn arithmetic_examples() {
        let n = 3;
        assert_eq!(&x(n, 0) + &x(n, 0), x(n, 0).scale(&int(2)));
        let lhs = &(&x(n, 0) + &x(n, 1)) * &(&x(n, 0) - &x(n, 1));
        let rhs = &x(n, 0).pow(2) - &x(n, 1).pow(2);
        assert_eq!(lhs, rhs);
        let p = &x(n, 0) + &Polynomial::constant(n, rat(3, 2));
        let prod = &p * &Polynomial::zero(n);
        assert!(prod.is_zero());
        assert_eq!(prod.terms().count(), 0);
        assert!(x(2, 0).checked_add(&x(3, 0)).is_err());
        assert!(x(2, 0).checked_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn evaluation() {
        let n = 4;
        let gk = &x(n, 0).pow(2).scale(&rat(1, 2)) - &x(n, 1);
        assert_eq!(gk.eval(&[int(2), int(2), int(0), int(0)]).unwrap(), int(0));
        let p = &gk + &Polynomial::constant(n, rat(-7, 3));
        assert_eq!(p.eval(&vec![int(0); n]).unwrap(), rat(-7, 3));
        let q = &x(n, 0) * &x(n, 1);
        assert_eq!(q.eval(&[int(3), int(5), int(9), int(1)]).unwrap(), int(15));
        assert!(q.eval(&[int(1)]).is_err());
    }

    #[test]
    fn partials() {
        let n = 2;
        assert_eq!(x(n, 0).pow(2).partial(0).unwrap(), x(n, 0).scale(&int(2)));
        assert!(x(n, 1).partial(0).unwrap().is_zero());
        let p = (&x(n, 0).pow(2) * &x(n, 1)).scale(&rat(1, 2));
        assert_eq!(p.partial(1).unwrap(), x(n, 0).pow(2).scale(&rat(1, 2)));
        assert!(p.partial(2).is_err());
    }

    #[test]
    fn composition_and_display() {
        let p = &x(2, 0).pow(2).scale(&rat(1, 2)) - &x(2, 1);
        assert_eq!(p.to_string(), "-x2 + 1/2*x1^2");
        let t = UniPoly::monomial(1, int(1));
        let half_t2 = UniPoly::monomial(2, rat(1, 2));
        assert!(p.compose_uni(&[t, half_t2]).unwrap().is_zero());
        let sub = p.compose(&[x(1, 0), Polynomial::zero(1)]).unwrap();
        assert_eq!(sub, x(1, 0).pow(2).scale(&rat(1, 2)));
    }

    #[test]
    fn json_terms_sorted() {
        let p = &(&x(2, 1) + &x(2, 0).pow(2)) + &Polynomial::constant(2, rat(-1, 3));
        let terms = p.to_json_terms();
        assert_eq!(terms[0].exp, vec![0, 0]);
        assert_eq!(terms[0].num, "-1");
        assert_eq!(terms[0].den, "3");
        assert_eq!(terms[1].exp, vec![0, 1]);
        assert_eq!(terms[2].exp, vec![2, 0]);
        assert_eq!(Polynomial::from_json_terms(2, &terms).unwrap(), p);
    }
}
