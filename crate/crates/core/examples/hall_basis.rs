//! Hall bases of free nilpotent Lie algebras: layer dimensions against the
//! Witt formula, and the canonical chains of a small basis.

use extremal_lab::hall::{witt_dimensions, HallBasis};

fn main() -> extremal_lab::Result<()> {
    for (r, s) in [(2, 6), (3, 4)] {
        let b = HallBasis::build(r, s)?;
        println!(
            "rank {r} step {s}: n = {}, layers {:?}, witt {:?}",
            b.dim(),
            b.layer_dims(),
            witt_dimensions(r, s)
        );
    }

    let b = HallBasis::build(2, 5)?;
    println!("\n{b}");
    let (ell0, multi, chain) = b.canonical_chain(13)?;
    println!(
        "X14 starts at X{} with chain {:?} and multiplicities {:?}",
        ell0 + 1,
        chain.iter().map(|c| c + 1).collect::<Vec<_>>(),
        multi.exponents()
    );
    Ok(())
}
