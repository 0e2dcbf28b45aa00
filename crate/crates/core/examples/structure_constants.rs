//! Structure constants of a free nilpotent Lie algebra read off its
//! polynomial vector fields, with the Jacobi and grading checks and a few
//! generalized constants `c_{i alpha}^k`.

use extremal_lab::exact::{format_rational, MultiIndex};
use extremal_lab::GroupContext;

fn main() -> extremal_lab::Result<()> {
    let g = GroupContext::new(2, 4)?;
    for (k, field) in g.fields().iter().enumerate().take(3) {
        println!("X{} = {field}", k + 1);
    }
    for i in 0..g.dim() {
        for j in 0..i {
            for (k, c) in g.sc(i, j) {
                println!("[X{}, X{}] = {} X{}", i + 1, j + 1, format_rational(c), k + 1);
            }
        }
    }
    println!("jacobi: {}, grading: {}", g.check_jacobi(), g.check_grading());

    // [[X3, X1], X2] in terms of the basis.
    let alpha = MultiIndex::from_exponents(vec![1, 1, 0, 0, 0, 0, 0, 0]);
    for (k, c) in g.gsc(2, &alpha) {
        println!("[[X3, X1], X2] has coefficient {} on X{}", format_rational(&c), k + 1);
    }
    let (count, failures) = g.rr_sweep(3)?;
    println!(
        "iterated-bracket identity: {} cases, {} failures",
        count,
        failures.len()
    );
    Ok(())
}
