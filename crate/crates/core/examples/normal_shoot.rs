//! Floating-point integration of normal extremals and the conservation of
//! the Hamiltonian `sum_j P_j^2 / 2`, at two step sizes.

use extremal_lab::curve::{normal_shoot, random_covector};
use extremal_lab::GroupContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> extremal_lab::Result<()> {
    let g = GroupContext::new(2, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let v0 = random_covector(&mut rng, g.dim());
        let coarse = normal_shoot(&g, &v0, 1.0, 2e-2)?;
        let fine = normal_shoot(&g, &v0, 1.0, 1e-2)?;
        println!(
            "H0 = {:.6}: drift {:.3e} at dt = 2e-2, {:.3e} at dt = 1e-2 (ratio {:.1})",
            coarse.hamiltonian0,
            coarse.max_drift,
            fine.max_drift,
            coarse.max_drift / fine.max_drift
        );
        println!("  gamma(1) = {:?}", fine.states.last().map(|s| &s[..3]));
    }
    Ok(())
}
