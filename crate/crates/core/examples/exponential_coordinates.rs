//! The chart `x -> exp(x1 X1) ... exp(xn Xn)(0)` is the identity for the
//! realized fields, checked by composing symbolic flows.

use extremal_lab::exact::{format_rational, int};
use extremal_lab::realization::{check_exponential_coordinates, exp_at_origin, symbolic_flow};
use extremal_lab::GroupContext;

fn main() -> extremal_lab::Result<()> {
    for (r, s) in [(2, 4), (3, 3)] {
        let g = GroupContext::new(r, s)?;
        println!(
            "rank {r} step {s}: chart is the identity: {}",
            check_exponential_coordinates(&g)?
        );
    }
    let g = GroupContext::new(2, 3)?;
    for (k, y) in symbolic_flow(&g, 1)?.iter().enumerate() {
        let name = |v: usize| if v == 0 { "t".to_string() } else { format!("x{v}") };
        println!("flow of X2, component {}: {}", k + 1, y.format_with(name));
    }
    let e = exp_at_origin(&g, &[int(1), int(1), int(0), int(0), int(0)])?;
    println!(
        "exp(X1 + X2)(0) = ({})",
        e.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    );
    Ok(())
}
