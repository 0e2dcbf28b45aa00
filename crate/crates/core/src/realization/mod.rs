//! Polynomial vector-field realization of a Hall basis, structure
//! constants and generalized structure constants.

mod cache;
mod flow;

pub use cache::{cache_path, default_cache_dir, CacheFile, CACHE_ENV, CACHE_FORMAT_VERSION, ORDERING_KEY};
pub use flow::{check_exponential_coordinates, exp_at_origin, symbolic_flow};

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{sign_power, MultiIndex, PolyVectorField, Polynomial, Rational};
use crate::extremal::ExtremalPolynomial;
use crate::hall::{HallBasis, DEFAULT_MAX_DIM};

/// Sparse coefficient vector over basis indices.
pub type SparseVec = BTreeMap<usize, Rational>;

/// A failed iterated-bracket case `(i, q, beta)`.
pub type SweepFailure = (usize, usize, MultiIndex);

/// How to obtain a [`GroupContext`].
#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_dim: usize,
    /// Directory for cached constant tables; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_dim: DEFAULT_MAX_DIM,
            cache_dir: None,
        }
    }
}

/// A free nilpotent group: Hall basis, its vector fields and both
/// constant tables, certified against the fields.
#[derive(Debug)]
pub struct GroupContext {
    basis: HallBasis,
    fields: Vec<PolyVectorField>,
    sc: Vec<Vec<SparseVec>>,
    gsc: Vec<BTreeMap<MultiIndex, SparseVec>>,
    extremal: OnceLock<Vec<ExtremalPolynomial>>,
}

/// The generator field `X_i = sum_{i ≺ l} (-1)^{|I(l)|}/I(l)! x^{I(l)} d/dx_l`.
pub fn generator_field(basis: &HallBasis, i: usize) -> Result<PolyVectorField> {
    if i >= basis.rank() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            len: basis.rank(),
        });
    }
    let n = basis.dim();
    let mut field = PolyVectorField::zero(n);
    for e in basis.elements().iter().filter(|e| e.ell0 == i) {
        let c = sign_power(e.multi.total()) / e.multi.factorial_rational();
        *field.component_mut(e.index) = Polynomial::monomial(e.multi.clone(), c);
    }
    Ok(field)
}

/// All basis fields: generators directly, brackets from their children.
pub fn basis_fields(basis: &HallBasis) -> Result<Vec<PolyVectorField>> {
    let mut fields: Vec<PolyVectorField> = Vec::with_capacity(basis.dim());
    for e in basis.elements() {
        let f = match e.children {
            None => generator_field(basis, e.index)?,
            Some((a, b)) => fields[a].bracket(&fields[b])?,
        };
        fields.push(f);
    }
    Ok(fields)
}

fn sparse_at_zero(f: &PolyVectorField) -> SparseVec {
    f.eval_at_zero()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Whether `f - sum_k coeffs[k] X_k` vanishes identically.
pub(crate) fn residual_vanishes(f: &PolyVectorField, coeffs: &SparseVec, fields: &[PolyVectorField]) -> bool {
    let mut r = f.clone();
    for (&k, c) in coeffs {
        r.add_scaled(&fields[k], &-c);
    }
    r.is_zero()
}

/// `c_{ij}^k`, read at the origin and certified by the residual
/// `[X_i, X_j] - sum_k c_{ij}^k X_k = 0`.
pub fn structure_constants(fields: &[PolyVectorField]) -> Result<Vec<Vec<SparseVec>>> {
    let n = fields.len();
    let lower: Vec<Vec<SparseVec>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..i)
                .map(|j| {
                    let b = fields[i].bracket(&fields[j])?;
                    let c = sparse_at_zero(&b);
                    if !residual_vanishes(&b, &c, fields) {
                        return Err(Error::Residual(format!(
                            "[X{}, X{}] is not the combination read at the origin",
                            i + 1,
                            j + 1
                        )));
                    }
                    Ok(c)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut sc = vec![vec![SparseVec::new(); n]; n];
    for (i, row) in lower.into_iter().enumerate() {
        for (j, c) in row.into_iter().enumerate() {
            sc[j][i] = c.iter().map(|(&k, v)| (k, -v)).collect();
            sc[i][j] = c;
        }
    }
    Ok(sc)
}

/// Checks that a given table matches the fields exactly.
pub fn verify_structure_constants(fields: &[PolyVectorField], sc: &[Vec<SparseVec>]) -> Result<()> {
    let n = fields.len();
    if sc.len() != n || sc.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: sc.len(),
        });
    }
    (0..n).into_par_iter().try_for_each(|i| {
        for j in 0..n {
            let b = fields[i].bracket(&fields[j])?;
            if !residual_vanishes(&b, &sc[i][j], fields) {
                return Err(Error::Residual(format!(
                    "structure constants of [X{}, X{}] do not match the fields",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    })
}

/// Iterated brackets `[...[[F, X_1], X_1], ..., X_n]` of a fixed start field,
/// one copy of `X_j` per unit of `alpha_j`, ascending in `j`, memoized on
/// the multi-index.
pub struct IteratedBrackets<'a> {
    fields: &'a [PolyVectorField],
    memo: HashMap<MultiIndex, PolyVectorField>,
}

impl<'a> IteratedBrackets<'a> {
    pub fn new(start: PolyVectorField, fields: &'a [PolyVectorField]) -> Self {
        let n = fields.len();
        let mut memo = HashMap::new();
        memo.insert(MultiIndex::zero(n), start);
        IteratedBrackets { fields, memo }
    }

    pub fn get(&mut self, alpha: &MultiIndex) -> Result<&PolyVectorField> {
        if !self.memo.contains_key(alpha) {
            let u = alpha.last_nonzero().expect("zero index is always memoized");
            let prev = alpha.with_decremented(u).expect("positive entry");
            let fields = self.fields;
            let p = self.get(&prev)?;
            let f = if p.is_zero() { p.clone() } else { p.bracket(&fields[u])? };
            self.memo.insert(alpha.clone(), f);
        }
        Ok(&self.memo[alpha])
    }
}

/// `c_{i alpha}^k` for every `alpha` with `d(i) + d(alpha) <= s`, by folding
/// brackets of the concrete fields, each result certified by residual.
pub fn generalized_structure_constants(
    basis: &HallBasis,
    fields: &[PolyVectorField],
) -> Result<Vec<BTreeMap<MultiIndex, SparseVec>>> {
    let degrees = basis.degrees();
    let s = basis.step();
    (0..basis.dim())
        .into_par_iter()
        .map(|i| {
            let mut table = BTreeMap::new();
            let mut folds = IteratedBrackets::new(fields[i].clone(), fields);
            for alpha in MultiIndex::enumerate_weighted(&degrees, s - degrees[i]) {
                let f = folds.get(&alpha)?;
                let c = sparse_at_zero(f);
                if !residual_vanishes(f, &c, fields) {
                    return Err(Error::Residual(format!(
                        "[X{}, X_alpha] with alpha = {alpha} leaves the span of the basis",
                        i + 1
                    )));
                }
                table.insert(alpha, c);
            }
            Ok(table)
        })
        .collect()
}

/// The same table recomputed from `sc` alone by iterating the adjoint action.
pub fn refold_generalized_constants(basis: &HallBasis, sc: &[Vec<SparseVec>]) -> Vec<BTreeMap<MultiIndex, SparseVec>> {
    let degrees = basis.degrees();
    let s = basis.step();
    (0..basis.dim())
        .map(|i| {
            let mut table: BTreeMap<MultiIndex, SparseVec> = BTreeMap::new();
            for alpha in MultiIndex::enumerate_weighted(&degrees, s - degrees[i]) {
                let c = match alpha.last_nonzero() {
                    None => SparseVec::from([(i, Rational::one())]),
                    Some(u) => {
                        let prev = &table[&alpha.with_decremented(u).expect("positive entry")];
                        ad_right(prev, u, sc)
                    }
                };
                table.insert(alpha, c);
            }
            table
        })
        .collect()
}

/// Coefficients of `[sum_k v_k X_k, X_u]`.
pub(crate) fn ad_right(v: &SparseVec, u: usize, sc: &[Vec<SparseVec>]) -> SparseVec {
    let mut out = SparseVec::new();
    for (&k, a) in v {
        for (&m, c) in &sc[k][u] {
            let e = out.entry(m).or_insert_with(Rational::zero);
            *e += a * c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl GroupContext {
    /// Builds the group with default options (cap 1000, no disk cache).
    pub fn new(r: usize, s: usize) -> Result<Self> {
        Self::build(r, s, &BuildOptions::default())
    }

    pub fn build(r: usize, s: usize, opts: &BuildOptions) -> Result<Self> {
        let basis = HallBasis::build_with_cap(r, s, opts.max_dim)?;
        let fields = basis_fields(&basis)?;
        let cached = match &opts.cache_dir {
            Some(dir) => cache::load(dir, &basis, &fields)?,
            None => None,
        };
        let (sc, gsc) = match cached {
            Some(tables) => tables,
            None => {
                let sc = structure_constants(&fields)?;
                let gsc = generalized_structure_constants(&basis, &fields)?;
                if let Some(dir) = &opts.cache_dir {
                    cache::store(dir, &basis, &sc, &gsc)?;
                }
                (sc, gsc)
            }
        };
        Ok(GroupContext {
            basis,
            fields,
            sc,
            gsc,
            extremal: OnceLock::new(),
        })
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn step(&self) -> usize {
        self.basis.step()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.basis.degrees()
    }

    pub fn fields(&self) -> &[PolyVectorField] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> Result<&PolyVectorField> {
        self.fields.get(i).ok_or(Error::IndexOutOfRange {
            index: i + 1,
            len: self.dim(),
        })
    }

    /// `c_{ij}^k` as a sparse vector over `k`.
    pub fn sc(&self, i: usize, j: usize) -> &SparseVec {
        &self.sc[i][j]
    }

    pub fn sc_table(&self) -> &[Vec<SparseVec>] {
        &self.sc
    }

    /// `c_{i alpha}^k`; zero outside the stored range `d(i) + d(alpha) <= s`.
    pub fn gsc(&self, i: usize, alpha: &MultiIndex) -> SparseVec {
        self.gsc[i].get(alpha).cloned().unwrap_or_default()
    }

    pub fn gsc_table(&self, i: usize) -> &BTreeMap<MultiIndex, SparseVec> {
        &self.gsc[i]
    }

    pub(crate) fn extremal_cache(&self) -> &OnceLock<Vec<ExtremalPolynomial>> {
        &self.extremal
    }

    /// Jacobi identity on the table, for all `i, j, p`.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        (0..n).into_par_iter().all(|i| {
            for j in 0..n {
                for p in 0..n {
                    let mut total = ad_right(&self.sc[i][j], p, &self.sc);
                    for (h, c) in ad_right(&self.sc[j][p], i, &self.sc) {
                        *total.entry(h).or_insert_with(Rational::zero) += c;
                    }
                    for (h, c) in ad_right(&self.sc[p][i], j, &self.sc) {
                        *total.entry(h).or_insert_with(Rational::zero) += c;
                    }
                    if total.values().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
            true
        })
    }

    /// `c_{ij}^k != 0` only when `d(k) = d(i) + d(j)`, and likewise for the
    /// generalized table; `c_{i0} = e_i`.
    pub fn check_grading(&self) -> bool {
        let d = self.degrees();
        let n = self.dim();
        let sc_ok = (0..n).all(|i| (0..n).all(|j| self.sc[i][j].keys().all(|&k| d[k] == d[i] + d[j])));
        let gsc_ok = (0..n).all(|i| {
            self.gsc[i].iter().all(|(alpha, c)| {
                let da = crate::exact::weighted_degree(alpha, &d).expect("matching length");
                c.keys().all(|&k| d[k] == d[i] + da)
            }) && self.gsc[i].get(&MultiIndex::zero(n)) == Some(&SparseVec::from([(i, Rational::one())]))
        });
        sc_ok && gsc_ok
    }

    /// Both sides of `[[X_i, X_q], X_beta] = sum_{l in A} c_{l beta} [X_i, X_{beta - I(l) + e_l}]`
    /// with `A = {l : q ≺ l, I(l) <= beta}` and
    /// `c_{l beta} = beta! / ((beta - I(l))! I(l)!)`, compared as fields.
    pub fn check_rr_identity(&self, i: usize, q: usize, beta: &MultiIndex) -> Result<bool> {
        let mut left = IteratedBrackets::new(self.field(i)?.bracket(self.field(q)?)?, &self.fields);
        let mut right = IteratedBrackets::new(self.fields[i].clone(), &self.fields);
        self.rr_with(&mut left, &mut right, q, beta)
    }

    fn rr_with(
        &self,
        left: &mut IteratedBrackets<'_>,
        right: &mut IteratedBrackets<'_>,
        q: usize,
        beta: &MultiIndex,
    ) -> Result<bool> {
        if q >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: q + 1,
                len: self.rank(),
            });
        }
        crate::error::check_dim(self.dim(), beta.len())?;
        let lhs = left.get(beta)?.clone();
        let mut rhs = PolyVectorField::zero(self.dim());
        let beta_fact = beta.factorial_rational();
        for e in self.basis.elements() {
            if e.ell0 != q || !e.multi.le(beta) {
                continue;
            }
            let rest = beta.sub(&e.multi).expect("I(l) <= beta");
            let c = &beta_fact / (rest.factorial_rational() * e.multi.factorial_rational());
            let target = rest.with_incremented(e.index);
            rhs.add_scaled(right.get(&target)?, &c);
        }
        Ok(lhs == rhs)
    }

    /// Runs the identity for every `i`, generator `q` and `|beta| <= max_order`.
    /// Returns the number of cases checked and the failures.
    pub fn rr_sweep(&self, max_order: usize) -> Result<(usize, Vec<SweepFailure>)> {
        let n = self.dim();
        let betas = MultiIndex::enumerate_total(n, max_order);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..self.rank()).map(move |q| (i, q))).collect();
        let results: Vec<Result<(usize, Vec<_>)>> = pairs
            .par_iter()
            .map(|&(i, q)| {
                let mut left = IteratedBrackets::new(self.fields[i].bracket(&self.fields[q])?, &self.fields);
                let mut right = IteratedBrackets::new(self.fields[i].clone(), &self.fields);
                let mut failures = Vec::new();
                for beta in &betas {
                    if !self.rr_with(&mut left, &mut right, q, beta)? {
                        failures.push((i, q, beta.clone()));
                    }
                }
                Ok((betas.len(), failures))
            })
            .collect();
        let mut count = 0;
        let mut failures = Vec::new();
        for r in results {
            let (c, f) = r?;
            count += c;
            failures.extend(f);
        }
        Ok((count, failures))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn heisenberg_fields_and_constants() {
        let g = GroupContext::new(2, 2).unwrap();
        assert_eq!(g.field(0).unwrap(), &PolyVectorField::coordinate(3, 0));
        let x2 = g.field(1).unwrap();
        assert_eq!(x2.component(1), &Polynomial::one(3));
        assert_eq!(x2.component(2), &Polynomial::var(3, 0).scale(&int(-1)));
        assert_eq!(g.sc(1, 0), &SparseVec::from([(2, int(1))]));
        assert_eq!(g.sc(0, 1), &SparseVec::from([(2, int(-1))]));
        assert!(g.sc(0, 0).is_empty());
        assert!(generator_field(g.basis(), 2).is_err());
    }

    #[test]
    fn fields_are_coordinate_directions_at_origin() {
        let g = GroupContext::new(2, 4).unwrap();
        for (l, f) in g.fields().iter().enumerate() {
            let at0 = f.eval_at_zero();
            for (k, c) in at0.iter().enumerate() {
                assert_eq!(c, &if k == l { int(1) } else { int(0) });
            }
        }
        assert!(g.check_jacobi());
        assert!(g.check_grading());
    }

    #[test]
    fn generalized_constants_examples() {
        let g = GroupContext::new(2, 4).unwrap();
        let n = g.dim();
        let e2 = MultiIndex::unit(n, 1);
        assert_eq!(g.gsc(2, &e2), SparseVec::from([(4, int(1))]));
        let two_e1 = MultiIndex::unit(n, 0).with_incremented(0);
        assert_eq!(g.gsc(2, &two_e1), SparseVec::from([(5, int(1))]));
        assert_eq!(g.gsc(3, &MultiIndex::zero(n)), SparseVec::from([(3, int(1))]));
        assert_eq!(refold_generalized_constants(g.basis(), g.sc_table()), g.gsc);
        // X_l = [X_{l0}, X_{I(l)}]
        for e in g.basis().elements() {
            assert_eq!(g.gsc(e.ell0, &e.multi), SparseVec::from([(e.index, int(1))]));
        }
    }

    #[test]
    fn rank_three_bracket() {
        let g = GroupContext::new(3, 3).unwrap();
        assert_eq!(g.sc(2, 0), &SparseVec::from([(4, int(1))]));
    }

    #[test]
    fn rr_identity_small() {
        let g = GroupContext::new(2, 3).unwrap();
        let n = g.dim();
        assert!(g.check_rr_identity(2, 0, &MultiIndex::zero(n)).unwrap());
        assert!(g.check_rr_identity(1, 1, &MultiIndex::unit(n, 0)).unwrap());
        let (count, failures) = g.rr_sweep(2).unwrap();
        assert!(count > 0);
        assert!(failures.is_empty(), "{failures:?}");
    }
}
