//! Rank 3, step 4: with `v = e7 + 2 e18`, `P_4^v = x2^2 - x1`, and the
//! curves `(t^2, t, phi(t))` are Goh extremals for every `phi`.

use extremal_lab::curve::{develop, find_goh_covectors, ControlLaw};
use extremal_lab::exact::{int, linalg, Rational, UniPoly};
use extremal_lab::GroupContext;

fn main() -> extremal_lab::Result<()> {
    let g = GroupContext::new(3, 4)?;
    let mut v = vec![Rational::from_integer(0.into()); g.dim()];
    v[6] = int(1);
    v[17] = int(2);
    for i in 3..6 {
        println!("P_{}^v = {}", i + 1, g.extremal_polynomial(i)?.specialize_v(&v)?);
    }
    let phis = [
        UniPoly::zero(),
        UniPoly::from_coeffs(vec![int(0), int(1), int(-3)]),
        UniPoly::from_coeffs(vec![int(0), int(-1), int(0), int(2)]),
    ];
    for phi in phis {
        let h = ControlLaw::polynomial(vec![UniPoly::monomial(1, int(2)), UniPoly::one(), phi.derivative()]);
        let goh = find_goh_covectors(&g, &develop(&g, &h)?)?;
        println!(
            "phi = {phi}: {} Goh covectors, v among them: {}",
            goh.len(),
            linalg::in_span(&goh, &v)?
        );
    }
    Ok(())
}
