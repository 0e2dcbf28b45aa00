//! Exact development of a piecewise-polynomial control law into a
//! horizontal curve, with its length and energy.

use extremal_lab::curve::{check_horizontal, develop, energy, length, ControlLaw};
use extremal_lab::exact::format_rational;
use extremal_lab::GroupContext;

const CONTROLS: &str = include_str!("../fixtures/controls/two_piece.json");

fn main() -> extremal_lab::Result<()> {
    let g = GroupContext::new(2, 4)?;
    let h = ControlLaw::from_json_str(CONTROLS)?;
    let curve = develop(&g, &h)?;
    for (k, gk) in curve.gamma.iter().enumerate() {
        println!("gamma_{} = {gk}", k + 1);
    }
    println!("horizontal: {}", check_horizontal(&g, &curve)?);
    println!("length {:.12}, energy {}", length(&h), format_rational(&energy(&h)));
    Ok(())
}
