//! Stratified quotients `G = F / ker(pi)` of a free group, described by a
//! selection `S` of basis indices and the matrix `zeta` of `pi_*`, together
//! with lifted curves and their dual curves.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{coefficient_matrix, curve_rows, develop, ControlLaw, DevelopedCurve, Piecewise};
use crate::error::{check_dim, Error, Result};
use crate::exact::{format_rational, linalg, parse_rational, Rational, UniPoly};
use crate::realization::{exp_at_origin, GroupContext, SparseVec};

/// JSON form of a quotient: `S` is 1-based, `zeta` is `n x m` with
/// rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub r: usize,
    pub s: usize,
    #[serde(rename = "S")]
    pub selection: Vec<usize>,
    pub zeta: Vec<Vec<String>>,
}

/// A validated quotient: `pi_* Y_i = sum_j zeta_{ij} X_j` with
/// `X_j = pi_* Y_{s_j}`. Indices are 0-based.
#[derive(Clone, Debug)]
pub struct QuotientGroup<'a> {
    free: &'a GroupContext,
    selection: Vec<usize>,
    zeta: Vec<Vec<Rational>>,
    /// `c-bar_{ab}^j` on the quotient basis.
    induced: Vec<Vec<SparseVec>>,
}

fn sparse_row(row: &[Rational]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j, c.clone()))
        .collect()
}

fn push_sparse(target: &mut SparseVec, k: usize, c: Rational) {
    let e = target.entry(k).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        target.remove(&k);
    }
}

impl<'a> QuotientGroup<'a> {
    /// Validates `(S, zeta)` and computes the induced constants
    /// `c-bar_{ab}^j = sum_k c_{s_a s_b}^k zeta_{kj}`.
    pub fn new(free: &'a GroupContext, selection: Vec<usize>, zeta: Vec<Vec<Rational>>) -> Result<Self> {
        let n = free.dim();
        let r = free.rank();
        let m = selection.len();
        check_dim(n, zeta.len())?;
        if let Some(row) = zeta.iter().find(|row| row.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: row.len(),
            });
        }
        if selection.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidQuotient("selection must be strictly increasing".into()));
        }
        if selection.last().is_some_and(|&s| s >= n) {
            return Err(Error::InvalidQuotient(format!("selection index exceeds n = {n}")));
        }
        if m < r || selection[..r].iter().enumerate().any(|(a, &s)| a != s) {
            return Err(Error::InvalidQuotient(format!(
                "selection must start with the generators 1..{r}"
            )));
        }
        for (a, &s) in selection.iter().enumerate() {
            for (j, z) in zeta[s].iter().enumerate() {
                if *z != if a == j { Rational::one() } else { Rational::zero() } {
                    return Err(Error::QuotientUnitRow { row: s + 1, col: a + 1 });
                }
            }
        }
        let degrees = free.degrees();
        for (i, row) in zeta.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let dj = degrees[selection[j]];
                if !z.is_zero() && degrees[i] != dj {
                    return Err(Error::QuotientLayer {
                        i: i + 1,
                        j: j + 1,
                        di: degrees[i],
                        dj,
                    });
                }
            }
        }

        let rows: Vec<SparseVec> = zeta.iter().map(|row| sparse_row(row)).collect();
        let push = |v: &SparseVec| {
            let mut out = SparseVec::new();
            for (&k, c) in v {
                for (&j, z) in &rows[k] {
                    push_sparse(&mut out, j, c * z);
                }
            }
            out
        };
        let induced: Vec<Vec<SparseVec>> = selection
            .iter()
            .map(|&sa| selection.iter().map(|&sb| push(free.sc(sa, sb))).collect())
            .collect();

        for i in 0..n {
            for j in 0..i {
                let lhs = push(free.sc(i, j));
                let mut rhs = SparseVec::new();
                for (&a, za) in &rows[i] {
                    for (&b, zb) in &rows[j] {
                        for (&k, c) in &induced[a][b] {
                            push_sparse(&mut rhs, k, za * zb * c);
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::QuotientHomomorphism { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(QuotientGroup {
            free,
            selection,
            zeta,
            induced,
        })
    }

    /// `S = 1..n`, `zeta = I`.
    pub fn identity(free: &'a GroupContext) -> Result<Self> {
        let n = free.dim();
        Self::coordinate(free, (0..n).collect())
    }

    /// The quotient by the span of the unselected basis vectors: selected
    /// rows are unit rows, the others vanish. Valid exactly when the
    /// unselected vectors span an ideal.
    pub fn coordinate(free: &'a GroupContext, selection: Vec<usize>) -> Result<Self> {
        let n = free.dim();
        let m = selection.len();
        let mut zeta = vec![vec![Rational::zero(); m]; n];
        for (a, &s) in selection.iter().enumerate() {
            if s < n {
                zeta[s][a] = Rational::one();
            }
        }
        Self::new(free, selection, zeta)
    }

    pub fn from_spec(free: &'a GroupContext, spec: &QuotientSpec) -> Result<Self> {
        if spec.r != free.rank() || spec.s != free.step() {
            return Err(Error::InvalidQuotient(format!(
                "quotient is over rank {} step {}, free group is rank {} step {}",
                spec.r,
                spec.s,
                free.rank(),
                free.step()
            )));
        }
        if spec.selection.contains(&0) {
            return Err(Error::InvalidQuotient("selection indices are 1-based".into()));
        }
        let zeta = spec
            .zeta
            .iter()
            .map(|row| row.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(free, spec.selection.iter().map(|s| s - 1).collect(), zeta)
    }

    pub fn from_json_str(free: &'a GroupContext, s: &str) -> Result<Self> {
        let spec: QuotientSpec = serde_json::from_str(s)?;
        Self::from_spec(free, &spec)
    }

    pub fn to_spec(&self) -> QuotientSpec {
        QuotientSpec {
            r: self.free.rank(),
            s: self.free.step(),
            selection: self.selection.iter().map(|s| s + 1).collect(),
            zeta: self
                .zeta
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn free(&self) -> &'a GroupContext {
        self.free
    }

    /// Dimension `m` of the quotient.
    pub fn dim(&self) -> usize {
        self.selection.len()
    }

    pub fn selection(&self) -> &[usize] {
        &self.selection
    }

    pub fn zeta(&self) -> &[Vec<Rational>] {
        &self.zeta
    }

    /// `c-bar_{ab}^j` as a sparse vector over `j`.
    pub fn induced(&self, a: usize, b: usize) -> &SparseVec {
        &self.induced[a][b]
    }

    pub fn induced_table(&self) -> &[Vec<SparseVec>] {
        &self.induced
    }

    /// `v_i = sum_j zeta_{ij} lambda0_j`.
    pub fn pullback(&self, lambda0: &[Rational]) -> Result<Vec<Rational>> {
        check_dim(self.dim(), lambda0.len())?;
        linalg::mat_vec(&self.zeta, lambda0)
    }

    /// `pi_*` on Lie algebra coordinates: `w_j = sum_i zeta_{ij} y_i`.
    pub fn push_forward(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        check_dim(self.free.dim(), y.len())?;
        let mut w = vec![Rational::zero(); self.dim()];
        for (yi, row) in y.iter().zip(&self.zeta) {
            if yi.is_zero() {
                continue;
            }
            for (wj, z) in w.iter_mut().zip(row) {
                *wj += yi * z;
            }
        }
        Ok(w)
    }
}

/// The lift of a quotient curve: the free curve with the same controls.
pub fn lift_curve(q: &QuotientGroup, h: &ControlLaw) -> Result<DevelopedCurve> {
    develop(q.free, h)
}

/// Bernoulli numbers with `B_1 = +1/2`.
fn bernoulli_plus(count: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(count);
    for m in 0..count {
        let mut acc = Rational::one();
        let mut binom = Rational::one();
        for (k, bk) in b.iter().enumerate() {
            acc -= &binom * bk / Rational::from_integer((m - k + 1).into());
            binom = binom * Rational::from_integer((m - k).into()) / Rational::from_integer((k + 1).into());
        }
        b.push(acc);
    }
    b
}

fn poly_bracket(consts: &[Vec<SparseVec>], x: &[UniPoly], y: &[UniPoly]) -> Vec<UniPoly> {
    let mut out = vec![UniPoly::zero(); x.len()];
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in y.iter().enumerate() {
            if yb.is_zero() || consts[a][b].is_empty() {
                continue;
            }
            let p = xa * yb;
            for (&k, c) in &consts[a][b] {
                out[k] = &out[k] + &p.scale(c);
            }
        }
    }
    out
}

/// Exponential coordinates of the first kind `Omega(t)` of the curve
/// `g' = g sum_j h_j X_j`, `g(0) = e`, in a nilpotent algebra given by its
/// constants, where `X_1..X_r` are the first `r` basis vectors. Solves
/// `Omega' = sum_k B_k/k! ad_Omega^k (A)` by Picard iteration, which
/// terminates because the algebra is nilpotent.
pub fn log_development(consts: &[Vec<SparseVec>], h: &ControlLaw) -> Result<Vec<Piecewise>> {
    let m = consts.len();
    let r = h.rank();
    if r > m {
        return Err(Error::DimensionMismatch { expected: m, found: r });
    }
    let bern = bernoulli_plus(m + 1);
    let mut start = vec![Rational::zero(); m];
    let mut per_piece: Vec<Vec<UniPoly>> = Vec::new();
    for piece in h.pieces() {
        let mut a = vec![UniPoly::zero(); m];
        a[..r].clone_from_slice(&piece.h);
        let rate = |omega: &[UniPoly]| {
            let mut total = a.clone();
            let mut term = a.clone();
            let mut kfact = Rational::one();
            for (k, bk) in bern.iter().enumerate().skip(1) {
                term = poly_bracket(consts, omega, &term);
                if term.iter().all(UniPoly::is_zero) {
                    break;
                }
                kfact *= Rational::from_integer(k.into());
                if !bk.is_zero() {
                    let c = bk / &kfact;
                    for (t, x) in total.iter_mut().zip(&term) {
                        *t = &*t + &x.scale(&c);
                    }
                }
            }
            total
        };
        let mut omega: Vec<UniPoly> = start.iter().map(|c| UniPoly::constant(c.clone())).collect();
        let mut settled = false;
        for _ in 0..=m {
            let next: Vec<UniPoly> = rate(&omega)
                .iter()
                .zip(&start)
                .map(|(p, s)| p.integrate_from(&piece.t0, s))
                .collect();
            if next == omega {
                settled = true;
                break;
            }
            omega = next;
        }
        let f = rate(&omega);
        if !settled || omega.iter().zip(&f).any(|(o, fo)| o.derivative() != *fo) {
            return Err(Error::Residual(
                "Picard iteration for log coordinates did not close".into(),
            ));
        }
        for (s, o) in start.iter_mut().zip(&omega) {
            *s = o.eval(&piece.t1);
        }
        per_piece.push(omega);
    }
    let breaks = h.breaks();
    (0..m)
        .map(|k| Piecewise::new(breaks.clone(), per_piece.iter().map(|o| o[k].clone()).collect()))
        .collect()
}

/// Flow commutation `pi(Psi_t(y)) = Phi_t(pi(y))` along the lift of `h`.
/// The free log coordinates are tied to the developed curve by
/// `exp(Omega_F(t)) = kappa(t)` at the sample times `k/samples`; then
/// `zeta^T Omega_F = Omega_G` is checked as an identity in `t`, where
/// `Omega_G` comes from the induced constants alone.
pub fn check_flow_commutation(q: &QuotientGroup, h: &ControlLaw, samples: usize) -> Result<bool> {
    let free = q.free;
    let kappa = lift_curve(q, h)?;
    let omega_f = log_development(free.sc_table(), h)?;
    for s in 0..=samples {
        let t = Rational::new(s.into(), samples.max(1).into());
        let coeffs: Vec<Rational> = omega_f.iter().map(|o| o.eval(&t)).collect();
        if exp_at_origin(free, &coeffs)? != kappa.eval(&t) {
            return Ok(false);
        }
    }
    let omega_g = log_development(q.induced_table(), h)?;
    for (j, og) in omega_g.iter().enumerate() {
        for p in 0..og.pieces().len() {
            let mut pushed = UniPoly::zero();
            for (of, row) in omega_f.iter().zip(&q.zeta) {
                if !row[j].is_zero() {
                    pushed = &pushed + &of.pieces()[p].scale(&row[j]);
                }
            }
            if pushed != og.pieces()[p] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks `lambda_a' = -sum_{b <= r} sum_k c_{ab}^k h_b lambda_k` exactly on
/// every piece, for any table of constants.
fn solves_frame_equations(consts: &[Vec<SparseVec>], h: &ControlLaw, lambda: &[Piecewise]) -> bool {
    for (p, piece) in h.pieces().iter().enumerate() {
        let lam: Vec<&UniPoly> = lambda.iter().map(|l| &l.pieces()[p]).collect();
        for (a, la) in lam.iter().enumerate() {
            let mut rate = UniPoly::zero();
            for (b, hb) in piece.h.iter().enumerate() {
                if hb.is_zero() {
                    continue;
                }
                for (&k, c) in &consts[a][b] {
                    if !lam[k].is_zero() {
                        rate = &rate - &(hb * lam[k]).scale(c);
                    }
                }
            }
            if la.derivative() != rate {
                return false;
            }
        }
    }
    true
}

/// A quotient dual curve `lambda_a(t) = P^v_{s_a}(kappa(t))` with `v`
/// pulled back from `lambda0`, and the lifted curve it lives on.
#[derive(Clone, Debug)]
pub struct QuotientDual {
    pub kappa: DevelopedCurve,
    pub v: Vec<Rational>,
    pub lambda: Vec<Piecewise>,
}

pub fn quotient_dual_curve(q: &QuotientGroup, h: &ControlLaw, lambda0: &[Rational]) -> Result<QuotientDual> {
    let v = q.pullback(lambda0)?;
    for (a, &s) in q.selection.iter().enumerate() {
        if v[s] != lambda0[a] {
            return Err(Error::Residual(format!(
                "pulled-back covector disagrees at selected index {}",
                s + 1
            )));
        }
    }
    let kappa = lift_curve(q, h)?;
    let lambda = q
        .selection
        .iter()
        .map(|&s| kappa.compose(&q.free.extremal_polynomial(s)?.specialize_v(&v)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuotientDual { kappa, v, lambda })
}

/// `lambda_a(t) = P^v_{s_a}(kappa(t))` solves the quotient frame equations
/// with the induced constants and starts at `lambda0`.
pub fn quotient_dual_check(q: &QuotientGroup, h: &ControlLaw, lambda0: &[Rational]) -> Result<bool> {
    let dual = quotient_dual_curve(q, h, lambda0)?;
    let zero = Rational::zero();
    if dual.lambda.iter().zip(lambda0).any(|(l, l0)| l.eval(&zero) != *l0) {
        return Ok(false);
    }
    Ok(solves_frame_equations(q.induced_table(), h, &dual.lambda))
}

/// `mu_i = sum_j zeta_{ij} lambda_j` solves the free frame equations along
/// the lifted curve.
pub fn check_pullback(q: &QuotientGroup, dual: &QuotientDual) -> bool {
    let breaks = dual.kappa.controls.breaks();
    let mu: Vec<Piecewise> = q
        .zeta
        .iter()
        .map(|row| {
            let polys = (0..breaks.len() - 1)
                .map(|p| {
                    row.iter().zip(&dual.lambda).fold(UniPoly::zero(), |acc, (z, l)| {
                        if z.is_zero() {
                            acc
                        } else {
                            &acc + &l.pieces()[p].scale(z)
                        }
                    })
                })
                .collect();
            Piecewise::new(breaks.clone(), polys).expect("breaks come from the same control law")
        })
        .collect();
    solves_frame_equations(q.free.sc_table(), &dual.kappa.controls, &mu)
}

/// Basis of `{lambda0 in R^m : P^{v(lambda0)}_i(kappa) = 0 for i = 1..r}`.
pub fn find_quotient_abnormal_covectors(q: &QuotientGroup, h: &ControlLaw) -> Result<Vec<Vec<Rational>>> {
    let kappa = lift_curve(q, h)?;
    let free_rows = coefficient_matrix(&curve_rows(q.free, &kappa, 0..q.free.rank())?);
    let rows: Vec<Vec<Rational>> = free_rows
        .iter()
        .map(|row| {
            (0..q.dim())
                .map(|j| {
                    row.iter()
                        .zip(&q.zeta)
                        .filter(|(c, z)| !c.is_zero() && !z[j].is_zero())
                        .fold(Rational::zero(), |acc, (c, z)| acc + c * &z[j])
                })
                .collect()
        })
        .collect();
    linalg::nullspace(&rows, q.dim())
}

/// The quotient abnormal space maps injectively, through `v = zeta lambda0`,
/// into the free abnormal space of the lift.
pub fn check_corank_monotone(q: &QuotientGroup, h: &ControlLaw) -> Result<bool> {
    let quotient = find_quotient_abnormal_covectors(q, h)?;
    let free = crate::curve::find_abnormal_covectors(q.free, &lift_curve(q, h)?)?;
    let mut images = Vec::with_capacity(quotient.len());
    for l in &quotient {
        let v = q.pullback(l)?;
        if !linalg::in_span(&free, &v)? {
            return Ok(false);
        }
        images.push(v);
    }
    Ok(linalg::rank(&images, q.free.dim())? == quotient.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::verify_master_identity;
    use crate::exact::{int, rat};

    fn unit_rows(n: usize, m: usize, map: &[(usize, usize)]) -> Vec<Vec<Rational>> {
        let mut z = vec![vec![int(0); m]; n];
        for &(i, j) in map {
            z[i][j] = int(1);
        }
        z
    }

    fn gk() -> ControlLaw {
        ControlLaw::polynomial(vec![UniPoly::one(), UniPoly::t()])
    }

    #[test]
    fn bernoulli() {
        assert_eq!(
            bernoulli_plus(7),
            vec![int(1), rat(1, 2), rat(1, 6), int(0), rat(-1, 30), int(0), rat(1, 42)]
        );
    }

    #[test]
    fn heisenberg_log_coordinates() {
        let g = GroupContext::new(2, 2).unwrap();
        let om = log_development(g.sc_table(), &gk()).unwrap();
        assert_eq!(om[2].pieces()[0], UniPoly::monomial(3, rat(-1, 12)));
    }

    #[test]
    fn identity_quotient() {
        let g = GroupContext::new(2, 3).unwrap();
        let q = QuotientGroup::identity(&g).unwrap();
        assert_eq!(q.induced_table(), g.sc_table());
        let v0 = vec![int(1), int(-2), rat(1, 2), int(3), int(1)];
        assert!(quotient_dual_check(&q, &gk(), &v0).unwrap());
        assert!(verify_master_identity(&g, &develop(&g, &gk()).unwrap(), &v0).unwrap());
        let c = develop(&g, &gk()).unwrap();
        assert_eq!(
            find_quotient_abnormal_covectors(&q, &gk()).unwrap(),
            crate::curve::find_abnormal_covectors(&g, &c).unwrap()
        );
        assert!(check_flow_commutation(&q, &gk(), 4).unwrap());
    }

    #[test]
    fn heisenberg_quotient() {
        let g = GroupContext::new(2, 3).unwrap();
        let q = QuotientGroup::coordinate(&g, vec![0, 1, 2]).unwrap();
        assert_eq!(q.induced(1, 0).get(&2), Some(&int(1)));
        assert!(q.induced(2, 0).is_empty() && q.induced(2, 1).is_empty());
        let l0 = vec![int(2), rat(-1, 3), int(5)];
        assert!(quotient_dual_check(&q, &gk(), &l0).unwrap());
        let dual = quotient_dual_curve(&q, &gk(), &l0).unwrap();
        assert!(check_pullback(&q, &dual));
        assert!(find_quotient_abnormal_covectors(&q, &gk()).unwrap().is_empty());
        assert!(check_flow_commutation(&q, &gk(), 4).unwrap());
        assert!(check_corank_monotone(&q, &gk()).unwrap());
    }

    #[test]
    fn rank_two_step_four_identifications() {
        let g = GroupContext::new(2, 4).unwrap();
        // Y5 -> X4 and the whole top layer onto one vector.
        let ok = unit_rows(8, 5, &[(0, 0), (1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (6, 4), (7, 4)]);
        let q = QuotientGroup::new(&g, vec![0, 1, 2, 3, 5], ok).unwrap();
        assert!(check_flow_commutation(&q, &gk(), 3).unwrap());
        // Y5 -> X4 alone is not compatible with brackets.
        let bad = unit_rows(8, 7, &[(0, 0), (1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (6, 5), (7, 6)]);
        let err = QuotientGroup::new(&g, vec![0, 1, 2, 3, 5, 6, 7], bad).unwrap_err();
        assert!(matches!(err, Error::QuotientHomomorphism { .. }), "{err}");
    }

    #[test]
    fn projected_gole_karidi_covector() {
        let g = GroupContext::new(2, 4).unwrap();
        let q = QuotientGroup::coordinate(&g, (0..6).collect()).unwrap();
        let mut l0 = vec![int(0); 6];
        l0[4] = int(1);
        l0[5] = int(1);
        assert!(quotient_dual_check(&q, &gk(), &l0).unwrap());
        let dual = quotient_dual_curve(&q, &gk(), &l0).unwrap();
        assert!(dual.lambda[0].is_zero() && dual.lambda[1].is_zero());
        assert!(check_pullback(&q, &dual));
        let ab = find_quotient_abnormal_covectors(&q, &gk()).unwrap();
        assert!(linalg::in_span(&ab, &l0).unwrap());
        assert!(check_corank_monotone(&q, &gk()).unwrap());
    }

    #[test]
    fn validation_errors() {
        let g = GroupContext::new(2, 3).unwrap();
        let mut z = unit_rows(5, 3, &[(0, 0), (1, 1), (2, 2)]);
        z[2][0] = int(1);
        let e = QuotientGroup::new(&g, vec![0, 1, 2], z).unwrap_err();
        assert!(matches!(e, Error::QuotientUnitRow { row: 3, col: 3 }), "{e}");
        let mut z = unit_rows(5, 3, &[(0, 0), (1, 1), (2, 2)]);
        z[3][0] = int(1);
        let e = QuotientGroup::new(&g, vec![0, 1, 2], z).unwrap_err();
        assert!(
            matches!(
                e,
                Error::QuotientLayer {
                    i: 4,
                    j: 1,
                    di: 3,
                    dj: 1
                }
            ),
            "{e}"
        );
        // Killing X3 but keeping X4 is not an ideal quotient.
        let e = QuotientGroup::coordinate(&g, vec![0, 1, 3, 4]).unwrap_err();
        assert!(matches!(e, Error::QuotientHomomorphism { .. }), "{e}");
        assert!(QuotientGroup::coordinate(&g, vec![0, 2]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = GroupContext::new(2, 3).unwrap();
        let q = QuotientGroup::coordinate(&g, vec![0, 1, 2]).unwrap();
        let s = serde_json::to_string(&q.to_spec()).unwrap();
        assert!(s.contains("\"S\":[1,2,3]"));
        let back = QuotientGroup::from_json_str(&g, &s).unwrap();
        assert_eq!(back.zeta(), q.zeta());
        let wrong = s.replace("\"s\":3", "\"s\":4");
        assert!(QuotientGroup::from_json_str(&g, &wrong).is_err());
    }
}
