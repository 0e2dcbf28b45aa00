use num_traits::One;
use serde::Serialize;

use super::{adjoint_integrate, DevelopedCurve};
use crate::error::{Error, Result};
use crate::exact::{format_rational, linalg, Rational, UniPoly};
use crate::realization::GroupContext;

/// Rows of the linear system in `v` expressing `P_i^v(gamma(t))` for the
/// given indices: one row per (index, piece, power of t).
pub(crate) fn curve_rows(
    ctx: &GroupContext,
    curve: &DevelopedCurve,
    indices: std::ops::Range<usize>,
) -> Result<Vec<(usize, usize, Vec<UniPoly>)>> {
    let n = ctx.dim();
    let mut out = Vec::new();
    for i in indices {
        let ep = ctx.extremal_polynomial(i)?;
        for p in 0..curve.num_pieces() {
            let g = curve.on_piece(p);
            let per_slot = (0..n)
                .map(|k| ep.slice(k).compose_uni(&g))
                .collect::<Result<Vec<_>>>()?;
            out.push((i, p, per_slot));
        }
    }
    Ok(out)
}

pub(crate) fn coefficient_matrix(blocks: &[(usize, usize, Vec<UniPoly>)]) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for (_, _, per_slot) in blocks {
        let deg = per_slot.iter().filter_map(UniPoly::degree).max();
        let Some(deg) = deg else { continue };
        for m in 0..=deg {
            rows.push(per_slot.iter().map(|q| q.coeff(m)).collect());
        }
    }
    rows
}

/// Basis of `{v : P_i^v(gamma(t)) = 0 for all t, i = 1..r}`; its dimension
/// is the corank.
pub fn find_abnormal_covectors(ctx: &GroupContext, curve: &DevelopedCurve) -> Result<Vec<Vec<Rational>>> {
    let blocks = curve_rows(ctx, curve, 0..ctx.rank())?;
    linalg::nullspace(&coefficient_matrix(&blocks), ctx.dim())
}

/// Basis of `{v : P_i^v(gamma(t)) = 0 for all t, i = 1..r1+r2}`.
pub fn find_goh_covectors(ctx: &GroupContext, curve: &DevelopedCurve) -> Result<Vec<Vec<Rational>>> {
    let head = ctx.basis().dim_through(2);
    let blocks = curve_rows(ctx, curve, 0..head)?;
    linalg::nullspace(&coefficient_matrix(&blocks), ctx.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strictness {
    /// Some covector makes the curve a normal extremal for one of the signs.
    NormalCapable,
    /// No covector solves the normal equations for either sign.
    Candidate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictnessReport {
    pub verdict: Strictness,
    /// A solution `v` of `P_j^v(gamma) = sigma h_j` for `sigma = +1`, if any.
    pub plus: Option<Vec<Rational>>,
    /// Same for `sigma = -1`.
    pub minus: Option<Vec<Rational>>,
}

/// Tries to solve `P_j^v(gamma(t)) = sigma h_j(t)`, `j = 1..r`, for both
/// signs `sigma`.
pub fn strictness_check(ctx: &GroupContext, curve: &DevelopedCurve) -> Result<StrictnessReport> {
    let blocks = curve_rows(ctx, curve, 0..ctx.rank())?;
    let solve = |sigma: &Rational| -> Result<Option<Vec<Rational>>> {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (j, p, per_slot) in &blocks {
            let h = &curve.controls.pieces()[*p].h[*j];
            let deg = per_slot
                .iter()
                .filter_map(UniPoly::degree)
                .chain(h.degree())
                .max()
                .unwrap_or(0);
            for m in 0..=deg {
                rows.push(per_slot.iter().map(|q| q.coeff(m)).collect());
                rhs.push(sigma * h.coeff(m));
            }
        }
        linalg::solve(&rows, &rhs, ctx.dim())
    };
    let plus = solve(&Rational::one())?;
    let minus = solve(&-Rational::one())?;
    let verdict = if plus.is_none() && minus.is_none() {
        Strictness::Candidate
    } else {
        Strictness::NormalCapable
    };
    Ok(StrictnessReport { verdict, plus, minus })
}

/// The classification report, with covectors rendered as rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub corank: usize,
    pub abnormal_basis: Vec<Vec<String>>,
    pub goh_basis: Vec<Vec<String>>,
    pub strict: &'static str,
}

impl ClassificationReport {
    pub fn build(ctx: &GroupContext, curve: &DevelopedCurve) -> Result<Self> {
        let render = |b: Vec<Vec<Rational>>| -> Vec<Vec<String>> {
            b.iter().map(|v| v.iter().map(format_rational).collect()).collect()
        };
        let abnormal = find_abnormal_covectors(ctx, curve)?;
        let goh = find_goh_covectors(ctx, curve)?;
        let strict = match strictness_check(ctx, curve)?.verdict {
            Strictness::Candidate => "candidate",
            Strictness::NormalCapable => "normal-capable",
        };
        Ok(ClassificationReport {
            corank: abnormal.len(),
            abnormal_basis: render(abnormal),
            goh_basis: render(goh),
            strict,
        })
    }
}

/// Common zeros of several polynomials on an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonZeros {
    /// All polynomials vanish identically.
    Everywhere,
    /// Isolating intervals of the common zeros; `(a, a)` is an exact root.
    At(Vec<(Rational, Rational)>),
}

impl CommonZeros {
    pub fn is_empty(&self) -> bool {
        matches!(self, CommonZeros::At(v) if v.is_empty())
    }
}

/// Common zeros in `[a, b]`, via the gcd and Sturm root isolation.
pub fn common_zeros(polys: &[UniPoly], a: &Rational, b: &Rational) -> CommonZeros {
    let g = polys.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
    if g.is_zero() {
        CommonZeros::Everywhere
    } else {
        CommonZeros::At(g.isolate_roots(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorReport {
    /// 0-based indices of the third-layer components examined.
    pub components: Vec<usize>,
    /// The third-layer components of `lambda`, per piece.
    pub lambda: Vec<Vec<UniPoly>>,
    /// Common zeros per piece.
    pub zeros: Vec<CommonZeros>,
}

impl IndicatorReport {
    /// The third-layer part of `lambda` never vanishes on `[0, 1]`.
    pub fn nonvanishing(&self) -> bool {
        self.zeros.iter().all(CommonZeros::is_empty)
    }
}

/// Decides whether the third-layer components of the dual curve from `v0`
/// have a common zero on `[0, 1]`. Rank 2, step at least 3.
pub fn regular_abnormal_indicator(
    ctx: &GroupContext,
    curve: &DevelopedCurve,
    v0: &[Rational],
) -> Result<IndicatorReport> {
    if ctx.rank() != 2 || ctx.step() < 3 {
        return Err(Error::InvalidParameters(
            "indicator needs rank 2 and step at least 3".into(),
        ));
    }
    let dual = adjoint_integrate(ctx, curve, v0)?;
    let components: Vec<usize> = (0..ctx.dim()).filter(|&k| ctx.degrees()[k] == 3).collect();
    let breaks = curve.controls.breaks();
    let mut lambda = Vec::new();
    let mut zeros = Vec::new();
    for p in 0..curve.num_pieces() {
        let polys: Vec<UniPoly> = components.iter().map(|&k| dual.lambda[k].pieces()[p].clone()).collect();
        zeros.push(common_zeros(&polys, &breaks[p], &breaks[p + 1]));
        lambda.push(polys);
    }
    Ok(IndicatorReport {
        components,
        lambda,
        zeros,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{develop, ControlLaw};
    use crate::exact::{int, rat};

    fn gk(ctx: &GroupContext) -> DevelopedCurve {
        develop(
            ctx,
            &ControlLaw::polynomial(vec![UniPoly::one(), UniPoly::monomial(1, int(1))]),
        )
        .unwrap()
    }

    fn e(n: usize, ks: &[usize]) -> Vec<Rational> {
        let mut v = vec![int(0); n];
        for &k in ks {
            v[k] = int(1);
        }
        v
    }

    #[test]
    fn heisenberg_has_no_abnormal_covectors() {
        let g = GroupContext::new(2, 2).unwrap();
        assert!(find_abnormal_covectors(&g, &gk(&g)).unwrap().is_empty());
        let line = develop(&g, &ControlLaw::polynomial(vec![UniPoly::one(), UniPoly::zero()])).unwrap();
        let s = strictness_check(&g, &line).unwrap();
        assert_eq!(s.verdict, Strictness::NormalCapable);
        assert_eq!(s.plus.unwrap()[0], int(1));
        assert_eq!(s.minus.unwrap()[0], int(-1));
    }

    #[test]
    fn gole_karidi_is_goh_and_strict() {
        let g = GroupContext::new(2, 4).unwrap();
        let c = gk(&g);
        let v = e(8, &[4, 5]);
        let goh = find_goh_covectors(&g, &c).unwrap();
        assert!(linalg::in_span(&goh, &v).unwrap());
        let ab = find_abnormal_covectors(&g, &c).unwrap();
        assert!(ab.len() >= goh.len());
        assert_eq!(strictness_check(&g, &c).unwrap().verdict, Strictness::Candidate);
        let ind = regular_abnormal_indicator(&g, &c, &v).unwrap();
        assert!(ind.nonvanishing());
        assert_eq!(ind.lambda[0][1], UniPoly::one());
    }

    #[test]
    fn constant_curve_corank() {
        let g = GroupContext::new(2, 3).unwrap();
        let c = develop(&g, &ControlLaw::zero(2)).unwrap();
        assert_eq!(find_abnormal_covectors(&g, &c).unwrap().len(), g.dim() - 2);
        assert_eq!(strictness_check(&g, &c).unwrap().verdict, Strictness::NormalCapable);
        let zero = vec![int(0); g.dim()];
        let ind = regular_abnormal_indicator(&g, &c, &zero).unwrap();
        assert_eq!(ind.zeros[0], CommonZeros::Everywhere);
    }

    #[test]
    fn synthetic_common_zero() {
        let l4 = UniPoly::from_coeffs(vec![rat(-1, 2), int(1)]);
        let z = common_zeros(&[l4, UniPoly::zero()], &int(0), &int(1));
        assert_eq!(z, CommonZeros::At(vec![(rat(1, 2), rat(1, 2))]));
        let z = common_zeros(&[UniPoly::one(), UniPoly::zero()], &int(0), &int(1));
        assert!(z.is_empty());
    }
}
