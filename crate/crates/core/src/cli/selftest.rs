//! Invariant suites run against one group, plus a corrupted-cache
//! negative control.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{build_options, verdict, GlobalArgs, Outcome};
use crate::curve::{check_horizontal, develop, random_control_law, random_covector, verify_master_identity};
use crate::error::{Error, Result};
use crate::hall::{witt_dimensions, HallBasis};
use crate::realization::{cache_path, check_exponential_coordinates, BuildOptions, CacheFile, GroupContext};

struct Suite {
    name: &'static str,
    passed: usize,
    total: usize,
}

/// Builds the group through a scratch cache, tampers with one stored
/// constant and expects the reload to be rejected.
fn corrupted_cache_rejected(r: usize, s: usize, max_dim: usize, seed: u64) -> Result<bool> {
    let dir = std::env::temp_dir().join(format!("extremal-lab-selftest-{}-{seed}", std::process::id()));
    let opts = BuildOptions {
        max_dim,
        cache_dir: Some(dir.clone()),
    };
    let outcome = (|| {
        GroupContext::build(r, s, &opts)?;
        let path = cache_path(&dir, r, s);
        let mut file: CacheFile = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
        let Some(entry) = file.sc.first_mut() else {
            return Ok(true);
        };
        entry.num = format!("{}1", entry.num.trim_start_matches('-'));
        std::fs::write(&path, serde_json::to_string(&file)?)?;
        match GroupContext::build(r, s, &opts) {
            Err(Error::CorruptCache { .. }) => Ok(true),
            _ => Ok(false),
        }
    })();
    let _ = std::fs::remove_dir_all(&dir);
    outcome
}

pub(super) fn run(g: &GlobalArgs, r: usize, s: usize, trials: usize) -> Result<Outcome> {
    let ctx = GroupContext::build(r, s, &build_options(g))?;
    let mut suites = Vec::new();
    let mut add = |name, passed, total| suites.push(Suite { name, passed, total });

    let mut witt_ok = 0;
    let mut witt_total = 0;
    for rr in 2..=3 {
        for ss in 1..=6 {
            witt_total += 1;
            let b = HallBasis::build(rr, ss)?;
            if b.layer_dims() == witt_dimensions(rr, ss).as_slice() {
                witt_ok += 1;
            }
        }
    }
    add("witt dimensions", witt_ok, witt_total);
    add("hall chains", usize::from(ctx.basis().validate_chains().is_ok()), 1);
    add("jacobi", usize::from(ctx.check_jacobi()), 1);
    add("grading", usize::from(ctx.check_grading()), 1);
    let (count, failures) = ctx.rr_sweep(3)?;
    add("iterated bracket identity", count - failures.len(), count);
    let pairs = ctx.dim() * ctx.dim();
    add(
        "extremal derivative identity",
        pairs - ctx.derivative_sweep()?.len(),
        pairs,
    );
    add(
        "exponential coordinates",
        usize::from(check_exponential_coordinates(&ctx)?),
        1,
    );
    add(
        "corrupted cache rejected",
        usize::from(corrupted_cache_rejected(r, s, g.max_dim as usize, g.seed)?),
        1,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut master = 0;
    for _ in 0..trials {
        let h = random_control_law(&mut rng, r, 3);
        let v0 = random_covector(&mut rng, ctx.dim());
        let curve = develop(&ctx, &h)?;
        if check_horizontal(&ctx, &curve)? && verify_master_identity(&ctx, &curve, &v0)? {
            master += 1;
        }
    }
    if trials > 0 {
        add("master identity trials", master, trials);
    }

    let ok = suites.iter().all(|s| s.passed == s.total);
    let mut text = format!("selftest rank {r} step {s} (n = {}), seed {}\n", ctx.dim(), g.seed);
    for s in &suites {
        text += &format!(
            "{:<30} {:>6}/{:<6} {}\n",
            s.name,
            s.passed,
            s.total,
            verdict(s.passed == s.total)
        );
    }
    text += &format!("{}\n", verdict(ok));
    let json = json!({
        "r": r,
        "s": s,
        "seed": g.seed,
        "suites": suites.iter().map(|s| json!({"suite": s.name, "passed": s.passed, "total": s.total})).collect::<Vec<_>>(),
        "pass": ok,
    });
    Ok(Outcome { ok, text, json })
}
