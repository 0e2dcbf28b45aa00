//! Extremal polynomials `P_i`: the bilinear table, a specialization at a
//! covector, and the derivative identity linking them.

use extremal_lab::exact::parse_rational_list;
use extremal_lab::GroupContext;

fn main() -> extremal_lab::Result<()> {
    let g = GroupContext::new(2, 4)?;
    for i in 0..g.dim() {
        println!("P_{} = {}", i + 1, g.extremal_polynomial(i)?.display());
    }
    let v = parse_rational_list("0,0,0,0,1,1,0,0")?;
    for (i, p) in g.specialize_all(&v)?.iter().enumerate() {
        println!("P_{}^v = {p}", i + 1);
    }
    println!("derivative identity failures: {:?}", g.derivative_sweep()?);
    println!("nontriviality: {:?}", g.nontriviality_report(&v)?);
    Ok(())
}
