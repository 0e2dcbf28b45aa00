//! Horizontal curves driven by piecewise-polynomial controls, their exact
//! development, dual curves, and extremal classification.

mod classify;
mod random;
mod shoot;
mod theta;

pub(crate) use classify::{coefficient_matrix, curve_rows};
pub use classify::{
    common_zeros, find_abnormal_covectors, find_goh_covectors, regular_abnormal_indicator, strictness_check,
    ClassificationReport, CommonZeros, IndicatorReport, Strictness, StrictnessReport,
};
pub use random::{random_control_law, random_covector, random_rational};
pub use shoot::{normal_shoot, ShootResult};
pub use theta::{theta_frame_check, theta_frame_check_lambda};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exact::{format_rational, parse_rational, sign_power, to_f64, Polynomial, Rational, UniPoly};
use crate::realization::GroupContext;

/// A function of `t` given by one polynomial per interval. Polynomials are
/// in absolute time `t`, not shifted to the interval start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piecewise {
    breaks: Vec<Rational>,
    polys: Vec<UniPoly>,
}

impl Piecewise {
    pub fn new(breaks: Vec<Rational>, polys: Vec<UniPoly>) -> Result<Self> {
        if breaks.len() != polys.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: polys.len() + 1,
                found: breaks.len(),
            });
        }
        Ok(Piecewise { breaks, polys })
    }

    pub fn single(t0: Rational, t1: Rational, p: UniPoly) -> Self {
        Piecewise {
            breaks: vec![t0, t1],
            polys: vec![p],
        }
    }

    pub fn breaks(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn piece_index(&self, t: &Rational) -> usize {
        let last = self.polys.len() - 1;
        (0..last).find(|&p| t <= &self.breaks[p + 1]).unwrap_or(last)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.polys[self.piece_index(t)].eval(t)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let last = self.polys.len() - 1;
        let p = (0..last).find(|&p| t <= to_f64(&self.breaks[p + 1])).unwrap_or(last);
        self.polys[p].eval_f64(t)
    }

    pub fn derivative(&self) -> Piecewise {
        Piecewise {
            breaks: self.breaks.clone(),
            polys: self.polys.iter().map(UniPoly::derivative).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(UniPoly::is_zero)
    }

    pub fn to_json(&self) -> PiecewiseJson {
        PiecewiseJson {
            breaks: self.breaks.iter().map(format_rational).collect(),
            pieces: self
                .polys
                .iter()
                .map(|p| p.coeffs().iter().map(format_rational).collect())
                .collect(),
        }
    }
}

impl std::fmt::Display for Piecewise {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.polys.len() == 1 {
            return write!(f, "{}", self.polys[0]);
        }
        let parts: Vec<String> = self
            .polys
            .iter()
            .enumerate()
            .map(|(p, q)| {
                format!(
                    "{q} on [{}, {}]",
                    format_rational(&self.breaks[p]),
                    format_rational(&self.breaks[p + 1])
                )
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseJson {
    pub breaks: Vec<String>,
    pub pieces: Vec<Vec<String>>,
}

/// One interval of a control law: `h_j(t)` for `t` in `[t0, t1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlPiece {
    pub t0: Rational,
    pub t1: Rational,
    pub h: Vec<UniPoly>,
}

/// Controls `h = (h_1, ..., h_r)` on `[0, 1]`, polynomial on each piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlLaw {
    pieces: Vec<ControlPiece>,
}

/// JSON form of one control piece; `coeffs[j]` lists the ascending
/// coefficients of `h_j` in absolute time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlPieceJson {
    pub t0: String,
    pub t1: String,
    pub coeffs: Vec<Vec<String>>,
}

impl ControlLaw {
    pub fn new(pieces: Vec<ControlPiece>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidControl(m));
        let Some(first) = pieces.first() else {
            return bad("no pieces".into());
        };
        if !first.t0.is_zero() {
            return bad("first piece must start at 0".into());
        }
        if !pieces.last().expect("nonempty").t1.is_one() {
            return bad("last piece must end at 1".into());
        }
        let r = first.h.len();
        for (p, piece) in pieces.iter().enumerate() {
            if piece.t0 >= piece.t1 {
                return bad(format!("piece {} has empty interval", p + 1));
            }
            if piece.h.len() != r {
                return bad(format!("piece {} has {} controls, expected {r}", p + 1, piece.h.len()));
            }
            if p > 0 && pieces[p - 1].t1 != piece.t0 {
                return bad(format!("pieces {} and {} are not contiguous", p, p + 1));
            }
        }
        Ok(ControlLaw { pieces })
    }

    /// A single polynomial piece on `[0, 1]`.
    pub fn polynomial(h: Vec<UniPoly>) -> Self {
        ControlLaw {
            pieces: vec![ControlPiece {
                t0: Rational::zero(),
                t1: Rational::one(),
                h,
            }],
        }
    }

    /// The constant control `h = 0` with `r` components.
    pub fn zero(r: usize) -> Self {
        Self::polynomial(vec![UniPoly::zero(); r])
    }

    pub fn rank(&self) -> usize {
        self.pieces[0].h.len()
    }

    pub fn pieces(&self) -> &[ControlPiece] {
        &self.pieces
    }

    pub fn breaks(&self) -> Vec<Rational> {
        let mut b: Vec<Rational> = self.pieces.iter().map(|p| p.t0.clone()).collect();
        b.push(self.pieces.last().expect("nonempty").t1.clone());
        b
    }

    /// `h_j` as a piecewise polynomial.
    pub fn component(&self, j: usize) -> Piecewise {
        Piecewise {
            breaks: self.breaks(),
            polys: self.pieces.iter().map(|p| p.h[j].clone()).collect(),
        }
    }

    /// The controls of `t -> gamma(phi(t))` for a single-piece law:
    /// `h(phi(t)) phi'(t)`. Requires `phi(0) = 0` and `phi(1) = 1`.
    pub fn reparametrize(&self, phi: &UniPoly) -> Result<Self> {
        if self.pieces.len() != 1 {
            return Err(Error::InvalidControl("reparametrization needs a single piece".into()));
        }
        if !phi.eval(&Rational::zero()).is_zero() || !phi.eval(&Rational::one()).is_one() {
            return Err(Error::InvalidControl("time change must fix 0 and 1".into()));
        }
        let dphi = phi.derivative();
        Ok(Self::polynomial(
            self.pieces[0].h.iter().map(|h| &h.compose(phi) * &dphi).collect(),
        ))
    }

    pub fn to_json(&self) -> Vec<ControlPieceJson> {
        self.pieces
            .iter()
            .map(|p| ControlPieceJson {
                t0: format_rational(&p.t0),
                t1: format_rational(&p.t1),
                coeffs: p
                    .h
                    .iter()
                    .map(|h| h.coeffs().iter().map(format_rational).collect())
                    .collect(),
            })
            .collect()
    }

    pub fn from_json(pieces: &[ControlPieceJson]) -> Result<Self> {
        let pieces = pieces
            .iter()
            .map(|p| {
                Ok(ControlPiece {
                    t0: parse_rational(&p.t0)?,
                    t1: parse_rational(&p.t1)?,
                    h: p.coeffs
                        .iter()
                        .map(|c| {
                            Ok(UniPoly::from_coeffs(
                                c.iter().map(|x| parse_rational(x)).collect::<Result<_>>()?,
                            ))
                        })
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pieces)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let pieces: Vec<ControlPieceJson> = serde_json::from_str(s)?;
        Self::from_json(&pieces)
    }
}

/// `L = (int_0^1 sum_j h_j^2)^(1/2)`; the integral is exact.
pub fn length(h: &ControlLaw) -> f64 {
    to_f64(&energy(h)).sqrt()
}

/// `int_0^1 sum_j h_j^2`, exactly.
pub fn energy(h: &ControlLaw) -> Rational {
    let mut total = Rational::zero();
    for p in &h.pieces {
        for hj in &p.h {
            total += (hj * hj).definite_integral(&p.t0, &p.t1);
        }
    }
    total
}

/// A horizontal curve from the origin, developed exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DevelopedCurve {
    pub gamma: Vec<Piecewise>,
    pub controls: ControlLaw,
}

impl DevelopedCurve {
    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    /// `gamma` on piece `p`, one polynomial per coordinate.
    pub fn on_piece(&self, p: usize) -> Vec<UniPoly> {
        self.gamma.iter().map(|g| g.polys[p].clone()).collect()
    }

    pub fn num_pieces(&self) -> usize {
        self.controls.pieces.len()
    }

    pub fn eval(&self, t: &Rational) -> Vec<Rational> {
        self.gamma.iter().map(|g| g.eval(t)).collect()
    }

    /// Substitutes the curve into a polynomial, piece by piece.
    pub fn compose(&self, p: &Polynomial) -> Result<Piecewise> {
        let polys = (0..self.num_pieces())
            .map(|k| p.compose_uni(&self.on_piece(k)))
            .collect::<Result<Vec<_>>>()?;
        Piecewise::new(self.controls.breaks(), polys)
    }
}

/// Integrates `gamma_l' = h_{l0} (-1)^{|I(l)|}/I(l)! gamma^{I(l)}` in
/// increasing `l`, piece by piece, from `gamma(0) = 0`.
pub fn develop(ctx: &GroupContext, h: &ControlLaw) -> Result<DevelopedCurve> {
    check_dim(ctx.rank(), h.rank())?;
    let n = ctx.dim();
    let mut start = vec![Rational::zero(); n];
    let mut per_piece: Vec<Vec<UniPoly>> = Vec::with_capacity(h.pieces.len());
    for piece in &h.pieces {
        let mut g: Vec<UniPoly> = Vec::with_capacity(n);
        for e in ctx.basis().elements() {
            let mut rate = piece.h[e.ell0].clone();
            if !e.is_generator() {
                let coeff = sign_power(e.multi.total()) / e.multi.factorial_rational();
                rate = rate.scale(&coeff);
                for &c in &e.chain {
                    if rate.is_zero() {
                        break;
                    }
                    rate = &rate * &g[c];
                }
            }
            g.push(rate.integrate_from(&piece.t0, &start[e.index]));
        }
        for (k, gk) in g.iter().enumerate() {
            start[k] = gk.eval(&piece.t1);
        }
        per_piece.push(g);
    }
    let breaks = h.breaks();
    let gamma = (0..n)
        .map(|k| Piecewise {
            breaks: breaks.clone(),
            polys: per_piece.iter().map(|g| g[k].clone()).collect(),
        })
        .collect();
    Ok(DevelopedCurve {
        gamma,
        controls: h.clone(),
    })
}

/// Checks `gamma' = sum_j h_j X_j(gamma)` exactly on every piece, using the
/// vector fields directly.
pub fn check_horizontal(ctx: &GroupContext, curve: &DevelopedCurve) -> Result<bool> {
    for p in 0..curve.num_pieces() {
        let g = curve.on_piece(p);
        let h = &curve.controls.pieces[p].h;
        for (l, gl) in g.iter().enumerate() {
            let mut rhs = UniPoly::zero();
            for (j, hj) in h.iter().enumerate() {
                let comp = ctx.field(j)?.component(l);
                if comp.is_zero() || hj.is_zero() {
                    continue;
                }
                rhs = &rhs + &(hj * &comp.compose_uni(&g)?);
            }
            if gl.derivative() != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A covector curve `lambda(t)` with `lambda(0) = v0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCurve {
    pub lambda: Vec<Piecewise>,
    pub v0: Vec<Rational>,
}

/// Solves `lambda_i' = -sum_{j <= r} sum_k c_{ij}^k h_j lambda_k`,
/// `lambda(0) = v0`. `c_{ij}^k != 0` forces `k > i`, so components are
/// integrated in decreasing order; the result is then re-substituted.
pub fn adjoint_integrate(ctx: &GroupContext, curve: &DevelopedCurve, v0: &[Rational]) -> Result<DualCurve> {
    let n = ctx.dim();
    check_dim(n, v0.len())?;
    check_dim(n, curve.dim())?;
    let r = ctx.rank();
    let pieces = &curve.controls.pieces;
    let mut start = v0.to_vec();
    let mut per_piece: Vec<Vec<UniPoly>> = Vec::with_capacity(pieces.len());
    for piece in pieces {
        let mut lam = vec![UniPoly::zero(); n];
        for i in (0..n).rev() {
            let rate = adjoint_rate(ctx, i, &piece.h, &lam, r);
            lam[i] = rate.integrate_from(&piece.t0, &start[i]);
        }
        for i in 0..n {
            if lam[i].derivative() != adjoint_rate(ctx, i, &piece.h, &lam, r) {
                return Err(Error::Residual(format!("adjoint equation fails for lambda_{}", i + 1)));
            }
        }
        for (i, li) in lam.iter().enumerate() {
            start[i] = li.eval(&piece.t1);
        }
        per_piece.push(lam);
    }
    let breaks = curve.controls.breaks();
    let lambda = (0..n)
        .map(|k| Piecewise {
            breaks: breaks.clone(),
            polys: per_piece.iter().map(|g| g[k].clone()).collect(),
        })
        .collect();
    Ok(DualCurve {
        lambda,
        v0: v0.to_vec(),
    })
}

fn adjoint_rate(ctx: &GroupContext, i: usize, h: &[UniPoly], lam: &[UniPoly], r: usize) -> UniPoly {
    let mut rate = UniPoly::zero();
    for (j, hj) in h.iter().enumerate().take(r) {
        if hj.is_zero() {
            continue;
        }
        for (&k, c) in ctx.sc(i, j) {
            if !lam[k].is_zero() {
                rate = &rate - (&(hj * &lam[k]).scale(c));
            }
        }
    }
    rate
}

/// `lambda_i(t) = P_i^{v0}(gamma(t))` for every `i`, as exact piecewise
/// polynomials; the two sides are computed independently.
pub fn verify_master_identity(ctx: &GroupContext, curve: &DevelopedCurve, v0: &[Rational]) -> Result<bool> {
    let dual = adjoint_integrate(ctx, curve, v0)?;
    for (i, lam) in dual.lambda.iter().enumerate() {
        let p = ctx.extremal_polynomial(i)?.specialize_v(v0)?;
        if curve.compose(&p)? != *lam {
            return Ok(false);
        }
    }
    Ok(true)
}
