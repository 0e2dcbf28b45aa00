//! Extremal polynomials `P_i^v(x) = sum_{alpha,k} (-1)^{|alpha|}/alpha! c_{i alpha}^k v_k x^alpha`,
//! stored bilinearly in `(x, v)`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exact::{format_rational, parse_num_den, sign_power, MultiIndex, Polynomial, Rational};
use crate::realization::GroupContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalPolynomial {
    i: usize,
    n: usize,
    table: BTreeMap<(MultiIndex, usize), Rational>,
    /// `slices[k]` is the coefficient of `v_k`, a polynomial in `x`.
    slices: Vec<Polynomial>,
}

/// One entry of the JSON form of the bilinear table (1-based `k`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub alpha: Vec<u16>,
    pub k: usize,
    pub num: String,
    pub den: String,
}

impl ExtremalPolynomial {
    pub fn build(ctx: &GroupContext, i: usize) -> Result<Self> {
        let n = ctx.dim();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i + 1, len: n });
        }
        let mut table = BTreeMap::new();
        let mut slices = vec![Polynomial::zero(n); n];
        for (alpha, c) in ctx.gsc_table(i) {
            if c.is_empty() {
                continue;
            }
            let w = sign_power(alpha.total()) / alpha.factorial_rational();
            for (&k, ck) in c {
                let entry = &w * ck;
                slices[k].add_term(alpha.clone(), entry.clone());
                table.insert((alpha.clone(), k), entry);
            }
        }
        Ok(ExtremalPolynomial { i, n, table, slices })
    }

    pub fn index(&self) -> usize {
        self.i
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &BTreeMap<(MultiIndex, usize), Rational> {
        &self.table
    }

    pub fn entry(&self, alpha: &MultiIndex, k: usize) -> Rational {
        self.table
            .get(&(alpha.clone(), k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `v_k`.
    pub fn slice(&self, k: usize) -> &Polynomial {
        &self.slices[k]
    }

    pub fn slices(&self) -> &[Polynomial] {
        &self.slices
    }

    /// `P_i^v` for a fixed covector `v`.
    pub fn specialize_v(&self, v: &[Rational]) -> Result<Polynomial> {
        check_dim(self.n, v.len())?;
        let mut out = Polynomial::zero(self.n);
        for (k, vk) in v.iter().enumerate() {
            out.add_scaled(&self.slices[k], vk);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TableEntry> {
        self.table
            .iter()
            .map(|((alpha, k), c)| {
                let f = format_rational(c);
                let (num, den) = f
                    .split_once('/')
                    .map_or((f.clone(), "1".to_string()), |(a, b)| (a.into(), b.into()));
                TableEntry {
                    alpha: alpha.exponents().to_vec(),
                    k: k + 1,
                    num,
                    den,
                }
            })
            .collect()
    }

    pub fn from_json(i: usize, n: usize, entries: &[TableEntry]) -> Result<Self> {
        let mut table = BTreeMap::new();
        let mut slices = vec![Polynomial::zero(n); n];
        for e in entries {
            check_dim(n, e.alpha.len())?;
            if !(1..=n).contains(&e.k) {
                return Err(Error::IndexOutOfRange { index: e.k, len: n });
            }
            let c = parse_num_den(&e.num, &e.den)?;
            let alpha = MultiIndex::from_exponents(e.alpha.clone());
            slices[e.k - 1].add_term(alpha.clone(), c.clone());
            table.insert((alpha, e.k - 1), c);
        }
        Ok(ExtremalPolynomial { i, n, table, slices })
    }

    /// Text rendering `sum_k (slice_k) v_k` with the slices in `x`.
    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .slices
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| format!("({p}) v{}", k + 1))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl GroupContext {
    /// All extremal polynomials, built once on first use.
    pub fn extremal_polynomials(&self) -> &[ExtremalPolynomial] {
        self.extremal_cache().get_or_init(|| {
            (0..self.dim())
                .into_par_iter()
                .map(|i| ExtremalPolynomial::build(self, i).expect("index in range"))
                .collect()
        })
    }

    pub fn extremal_polynomial(&self, i: usize) -> Result<&ExtremalPolynomial> {
        self.extremal_polynomials().get(i).ok_or(Error::IndexOutOfRange {
            index: i + 1,
            len: self.dim(),
        })
    }

    /// `P_i^v` for every `i`.
    pub fn specialize_all(&self, v: &[Rational]) -> Result<Vec<Polynomial>> {
        self.extremal_polynomials().iter().map(|p| p.specialize_v(v)).collect()
    }

    /// `X_i P_j^v = sum_k c_{ij}^k P_k^v`, slice by slice in `v`.
    pub fn check_derivative_identity(&self, i: usize, j: usize) -> Result<bool> {
        let xi = self.field(i)?;
        let pj = self.extremal_polynomial(j)?;
        let eps = self.extremal_polynomials();
        let n = self.dim();
        for m in 0..n {
            let lhs = xi.apply(pj.slice(m))?;
            let mut rhs = Polynomial::zero(n);
            for (&k, c) in self.sc(i, j) {
                rhs.add_scaled(eps[k].slice(m), c);
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The derivative identity for every pair; returns the failing pairs.
    pub fn derivative_sweep(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.dim();
        self.extremal_polynomials();
        let rows: Vec<Result<Vec<(usize, usize)>>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut bad = Vec::new();
                for j in 0..n {
                    if !self.check_derivative_identity(i, j)? {
                        bad.push((i, j));
                    }
                }
                Ok(bad)
            })
            .collect();
        let mut out = Vec::new();
        for r in rows {
            out.extend(r?);
        }
        Ok(out)
    }

    /// `[P_1^v, ..., P_r^v]`, the generators of the abnormal variety `Z_v`.
    pub fn abnormal_variety_generators(&self, v: &[Rational]) -> Result<Vec<Polynomial>> {
        (0..self.rank())
            .map(|i| self.extremal_polynomials()[i].specialize_v(v))
            .collect()
    }

    /// `[P_1^v, ..., P_{r1+r2}^v]`, the generators of the Goh variety. With
    /// `require_head_zero`, rejects `v` unless `v_1 = ... = v_{r1+r2} = 0`.
    pub fn goh_variety_generators(&self, v: &[Rational], require_head_zero: bool) -> Result<Vec<Polynomial>> {
        check_dim(self.dim(), v.len())?;
        let head = self.basis().dim_through(2);
        if require_head_zero {
            if let Some(k) = v[..head].iter().position(|x| !x.is_zero()) {
                return Err(Error::InvalidParameters(format!(
                    "Goh covector must vanish on the first two layers, but v{} != 0",
                    k + 1
                )));
            }
        }
        (0..head)
            .map(|i| self.extremal_polynomials()[i].specialize_v(v))
            .collect()
    }

    pub fn nontriviality_report(&self, v: &[Rational]) -> Result<NontrivialityReport> {
        check_dim(self.dim(), v.len())?;
        let r = self.rank();
        let head = self.basis().dim_through(2);
        let polys = self.specialize_all(v)?;
        let v_is_zero = v.iter().all(Zero::is_zero);
        let zero_generators: Vec<usize> = (0..r).filter(|&i| polys[i].is_zero()).collect();
        let second_layer_zero = (r..head).all(|i| polys[i].is_zero());
        let tail_zero = v[r..].iter().all(Zero::is_zero);
        let generators_ok = v_is_zero || zero_generators.len() < r;
        let second_layer_ok = !second_layer_zero || tail_zero;
        Ok(NontrivialityReport {
            v_is_zero,
            zero_generators,
            second_layer_zero,
            consistent: generators_ok && second_layer_ok,
        })
    }

    /// For `v` vanishing on the first layer: `X_k P_i^v` for generators
    /// `k, i` equals the combination of second-layer polynomials given by
    /// the structure constants, with no other terms.
    pub fn check_horizontal_closure(&self, v: &[Rational]) -> Result<bool> {
        check_dim(self.dim(), v.len())?;
        let r = self.rank();
        if v[..r].iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidParameters("v must vanish on the first layer".into()));
        }
        let polys = self.specialize_all(v)?;
        let degrees = self.degrees();
        for k in 0..r {
            for i in 0..r {
                let lhs = self.field(k)?.apply(&polys[i])?;
                let mut rhs = Polynomial::zero(self.dim());
                for (&l, c) in self.sc(k, i) {
                    if degrees[l] != 2 {
                        return Ok(false);
                    }
                    rhs.add_scaled(&polys[l], c);
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NontrivialityReport {
    pub v_is_zero: bool,
    /// Generators `i` (0-based) with `P_i^v = 0`.
    pub zero_generators: Vec<usize>,
    /// Whether every second-layer polynomial vanishes.
    pub second_layer_zero: bool,
    /// Both implications hold: some generator polynomial is nonzero unless
    /// `v = 0`, and vanishing second-layer polynomials force `v_{r+1..n} = 0`.
    pub consistent: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn unit(n: usize, ks: &[(usize, i64)]) -> Vec<Rational> {
        let mut v = vec![int(0); n];
        for &(k, c) in ks {
            v[k] = int(c);
        }
        v
    }

    #[test]
    fn gole_karidi_polynomial() {
        let g = GroupContext::new(2, 4).unwrap();
        let v = unit(8, &[(4, 1), (5, 1)]);
        let p3 = g.extremal_polynomial(2).unwrap().specialize_v(&v).unwrap();
        let expected = &Polynomial::var(8, 0).pow(2).scale(&rat(1, 2)) - &Polynomial::var(8, 1);
        assert_eq!(p3, expected);
    }

    #[test]
    fn constant_term_is_v() {
        let g = GroupContext::new(2, 3).unwrap();
        let n = g.dim();
        for i in 0..n {
            let ep = g.extremal_polynomial(i).unwrap();
            for k in 0..n {
                let want = if k == i { int(1) } else { int(0) };
                assert_eq!(ep.entry(&MultiIndex::zero(n), k), want);
            }
        }
        assert!(g
            .specialize_all(&vec![int(0); n])
            .unwrap()
            .iter()
            .all(Polynomial::is_zero));
    }

    #[test]
    fn derivative_identity_and_degree_bound() {
        let g = GroupContext::new(2, 4).unwrap();
        assert!(g.derivative_sweep().unwrap().is_empty());
        assert!(g.check_derivative_identity(3, 3).unwrap());
        let d = g.degrees();
        let v: Vec<Rational> = (0..g.dim()).map(|k| rat(k as i64 + 1, 3)).collect();
        for i in 0..g.dim() {
            let p = g.extremal_polynomial(i).unwrap().specialize_v(&v).unwrap();
            assert!(p.weighted_degree(&d).unwrap().unwrap_or(0) <= g.step() - d[i]);
        }
    }

    #[test]
    fn varieties_and_report() {
        let g = GroupContext::new(2, 4).unwrap();
        let v = unit(8, &[(4, 1), (5, 1)]);
        let goh = g.goh_variety_generators(&v, true).unwrap();
        assert_eq!(goh.len(), 3);
        assert!(g.goh_variety_generators(&unit(8, &[(0, 1)]), true).is_err());
        let report = g.nontriviality_report(&v).unwrap();
        assert!(report.consistent && !report.v_is_zero);
        assert!(g.check_horizontal_closure(&v).unwrap());
        for k in 0..8 {
            let r = g.nontriviality_report(&unit(8, &[(k, 1)])).unwrap();
            assert!(r.consistent);
            assert!(r.zero_generators.len() < 2);
        }
        let json = g.extremal_polynomial(2).unwrap().to_json();
        let back = ExtremalPolynomial::from_json(2, 8, &json).unwrap();
        assert_eq!(&back, g.extremal_polynomial(2).unwrap());
    }
}
