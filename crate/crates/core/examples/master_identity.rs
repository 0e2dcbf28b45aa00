//! Dual curves two ways: integrating the adjoint equations, and evaluating
//! the extremal polynomials along the curve. Random trials must agree
//! exactly; the frame cross-check samples the same identity.

use extremal_lab::curve::{
    adjoint_integrate, develop, random_control_law, random_covector, theta_frame_check, verify_master_identity,
};
use extremal_lab::GroupContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> extremal_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (r, s) in [(2, 3), (2, 4), (3, 3)] {
        let g = GroupContext::new(r, s)?;
        let mut agree = 0;
        for _ in 0..10 {
            let h = random_control_law(&mut rng, r, 3);
            let v0 = random_covector(&mut rng, g.dim());
            let curve = develop(&g, &h)?;
            if verify_master_identity(&g, &curve, &v0)? && theta_frame_check(&g, &curve, &v0, 5)? {
                agree += 1;
            }
        }
        println!("rank {r} step {s}: {agree}/10 trials agree");
    }

    let g = GroupContext::new(2, 3)?;
    let h = random_control_law(&mut rng, 2, 2);
    let v0 = random_covector(&mut rng, g.dim());
    let dual = adjoint_integrate(&g, &develop(&g, &h)?, &v0)?;
    for (i, l) in dual.lambda.iter().enumerate() {
        println!("lambda_{} = {l}", i + 1);
    }
    Ok(())
}
