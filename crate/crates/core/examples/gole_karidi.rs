//! The curve `h = (1, t)` in the free group of rank 2 and step 4: its
//! abnormal and Goh covectors, the strictness test and the regular
//! indicator for `v = e5 + e6`.

use extremal_lab::curve::{develop, regular_abnormal_indicator, strictness_check, ClassificationReport, ControlLaw};
use extremal_lab::exact::{parse_rational_list, UniPoly};
use extremal_lab::GroupContext;

fn main() -> extremal_lab::Result<()> {
    let g = GroupContext::new(2, 4)?;
    let v = parse_rational_list("0,0,0,0,1,1,0,0")?;
    println!("P_3^v = {}", g.extremal_polynomial(2)?.specialize_v(&v)?);

    let curve = develop(&g, &ControlLaw::polynomial(vec![UniPoly::one(), UniPoly::t()]))?;
    let report = ClassificationReport::build(&g, &curve)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    let strict = strictness_check(&g, &curve)?;
    println!(
        "strictness: {:?} (sigma = +1: {:?}, sigma = -1: {:?})",
        strict.verdict, strict.plus, strict.minus
    );
    let ind = regular_abnormal_indicator(&g, &curve, &v)?;
    println!(
        "lambda on layer 3: {:?}",
        ind.lambda[0].iter().map(|p| p.to_string()).collect::<Vec<_>>()
    );
    println!("indicator nonvanishing: {}", ind.nonvanishing());
    Ok(())
}
