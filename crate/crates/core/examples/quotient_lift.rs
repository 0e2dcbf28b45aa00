//! Quotients of free groups: the Heisenberg group as a quotient of rank 2
//! step 3, a rank 2 step 4 quotient that identifies brackets, and a
//! rejected identification. Lifted curves carry quotient dual curves.

use extremal_lab::curve::ControlLaw;
use extremal_lab::exact::{format_rational, rat, UniPoly};
use extremal_lab::quotient::{
    check_flow_commutation, check_pullback, find_quotient_abnormal_covectors, quotient_dual_check, quotient_dual_curve,
    QuotientGroup,
};
use extremal_lab::GroupContext;

fn main() -> extremal_lab::Result<()> {
    let h = ControlLaw::polynomial(vec![UniPoly::one(), UniPoly::t()]);

    let f3 = GroupContext::new(2, 3)?;
    let heis = QuotientGroup::coordinate(&f3, vec![0, 1, 2])?;
    for (k, c) in heis.induced(1, 0) {
        println!(
            "Heisenberg: [X2, X1] has coefficient {} on X{}",
            format_rational(c),
            k + 1
        );
    }
    let l0 = vec![rat(1, 2), rat(-3, 1), rat(2, 1)];
    println!("  dual check: {}", quotient_dual_check(&heis, &h, &l0)?);
    println!(
        "  pullback: {}",
        check_pullback(&heis, &quotient_dual_curve(&heis, &h, &l0)?)
    );
    println!(
        "  abnormal covectors: {:?}",
        find_quotient_abnormal_covectors(&heis, &h)?
    );
    println!("  flow commutation: {}", check_flow_commutation(&heis, &h, 4)?);

    let f4 = GroupContext::new(2, 4)?;
    let q = QuotientGroup::from_json_str(&f4, include_str!("../fixtures/quotients/r2s4_identify.json"))?;
    println!("rank 2 step 4 quotient of dimension {}", q.dim());
    println!("  flow commutation: {}", check_flow_commutation(&q, &h, 4)?);
    let err = QuotientGroup::from_json_str(&f4, include_str!("../fixtures/quotients/r2s4_rejected.json")).unwrap_err();
    println!("  rejected: {err}");
    Ok(())
}
