//! The `extremal-lab` command line: argument parsing, dispatch and exit
//! codes. Every subcommand renders either text or JSON and is
//! deterministic given its flags and seed.

mod reproduce;
mod selftest;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::curve::{
    check_horizontal, develop, energy, length, normal_shoot, regular_abnormal_indicator, theta_frame_check,
    verify_master_identity, ClassificationReport, CommonZeros, ControlLaw,
};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, parse_rational_list, Rational};
use crate::hall::DEFAULT_MAX_DIM;
use crate::quotient::{
    check_corank_monotone, check_flow_commutation, check_pullback, find_quotient_abnormal_covectors, lift_curve,
    quotient_dual_check, quotient_dual_curve, QuotientGroup, QuotientSpec,
};
use crate::realization::{default_cache_dir, BuildOptions, CacheFile, GroupContext};

pub use reproduce::ReproduceItem;

#[derive(Debug, Parser)]
#[command(
    name = "extremal-lab",
    version,
    about = "Exact extremal curves in free nilpotent Lie groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for cached constant tables (default: $EXTREMAL_LAB_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Never read or write the constant cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Refuse groups of dimension above this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_dim: u64,
    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hall basis of the free Lie algebra of rank r and step s.
    Basis { r: usize, s: usize },
    /// Structure constants c_ij^k, or the generalized table c_{i alpha}^k.
    Constants {
        r: usize,
        s: usize,
        #[arg(long)]
        generalized: bool,
    },
    /// The extremal polynomial P_i, optionally specialized at a covector.
    ExtremalPoly {
        r: usize,
        s: usize,
        /// 1-based index.
        i: usize,
        /// Covector: `0,1,1/2,...` or `e5+e6`.
        #[arg(long)]
        v: Option<String>,
    },
    /// Generators of the abnormal variety Z_v, or of the Goh variety.
    Variety {
        r: usize,
        s: usize,
        #[arg(long)]
        v: String,
        #[arg(long)]
        goh: bool,
    },
    /// Develops a control law into a horizontal curve.
    Develop {
        r: usize,
        s: usize,
        #[arg(long)]
        controls: PathBuf,
    },
    /// Checks the master identity and the frame cross-check for (h, v0).
    Verify {
        r: usize,
        s: usize,
        #[arg(long)]
        controls: PathBuf,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Abnormal and Goh covectors and the strictness verdict of a curve.
    Classify {
        r: usize,
        s: usize,
        #[arg(long)]
        controls: PathBuf,
        /// Also report the regular-abnormal indicator for this covector.
        #[arg(long)]
        v: Option<String>,
    },
    /// Integrates the normal Hamiltonian system in floating point.
    Shoot {
        r: usize,
        s: usize,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
    },
    /// Length and energy of a control law.
    Length {
        #[arg(long)]
        controls: PathBuf,
    },
    /// Lifts a quotient curve to the free group.
    Lift {
        #[arg(long)]
        quotient: PathBuf,
        #[arg(long)]
        controls: PathBuf,
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Checks a quotient dual curve, its pullback and flow commutation.
    QuotientCheck {
        #[arg(long)]
        quotient: PathBuf,
        #[arg(long)]
        controls: PathBuf,
        #[arg(long)]
        lambda0: String,
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Abnormal covectors of a lifted curve, in quotient coordinates.
    QuotientClassify {
        #[arg(long)]
        quotient: PathBuf,
        #[arg(long)]
        controls: PathBuf,
    },
    /// Reruns a worked example against the shipped reference data.
    Reproduce { item: ReproduceItem },
    /// Runs the invariant suites on one group.
    Selftest {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 4)]
        s: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

/// What a subcommand produced.
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn pass(text: String, json: Value) -> Self {
        Outcome { ok: true, text, json }
    }
}

pub(crate) fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Exit code for an error: 3 for the resource cap, 1 for failed
/// certification, 2 for bad input.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceCap { .. } => 3,
        Error::Residual(_) | Error::CorruptCache { .. } => 1,
        _ => 2,
    }
}

/// Parses and runs a command line, printing to stdout/stderr; returns the
/// process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let rendered = if cli.global.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize") + "\n"
            } else {
                out.text
            };
            // A closed pipe (`| head`) is not an error.
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub(crate) fn build_options(g: &GlobalArgs) -> BuildOptions {
    BuildOptions {
        max_dim: g.max_dim as usize,
        cache_dir: if g.no_cache {
            None
        } else {
            g.cache_dir.clone().or_else(default_cache_dir)
        },
    }
}

pub(crate) fn group(g: &GlobalArgs, r: usize, s: usize) -> Result<GroupContext> {
    GroupContext::build(r, s, &build_options(g))
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn read_controls(path: &Path) -> Result<ControlLaw> {
    ControlLaw::from_json_str(&read_input(path)?)
}

/// A covector of length `n`: either a full comma list or a sparse sum of
/// unit vectors such as `e5+e6` or `e7+2e18-1/2e3`.
pub fn parse_covector(s: &str, n: usize) -> Result<Vec<Rational>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if !s.contains('e') {
        let v = parse_rational_list(&s)?;
        crate::error::check_dim(n, v.len())?;
        return Ok(v);
    }
    let mut v = vec![Rational::from_integer(0.into()); n];
    let mut terms = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    for term in terms {
        let (coeff, idx) = term
            .split_once('e')
            .ok_or_else(|| Error::Parse(format!("bad covector term {term:?}")))?;
        let coeff = match coeff.trim_start_matches('+') {
            "" => Rational::from_integer(1.into()),
            "-" => Rational::from_integer((-1).into()),
            c => parse_rational(c.strip_suffix('*').unwrap_or(c))?,
        };
        let k: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad covector index in {term:?}")))?;
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        v[k - 1] += coeff;
    }
    Ok(v)
}

pub(crate) fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn format_vector(v: &[Rational]) -> String {
    format!("({})", rational_strings(v).join(", "))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Basis { r, s } => {
            let ctx = crate::hall::HallBasis::build_with_cap(*r, *s, g.max_dim as usize)?;
            let text = format!(
                "free Lie algebra of rank {r}, step {s}: n = {}, layers {:?}\n{ctx}",
                ctx.dim(),
                ctx.layer_dims()
            );
            let json = json!({"r": r, "s": s, "n": ctx.dim(), "layers": ctx.layer_dims(), "elements": ctx.to_json()});
            Ok(Outcome::pass(text, json))
        }
        Command::Constants { r, s, generalized } => {
            let ctx = group(g, *r, *s)?;
            let file = CacheFile::from_tables(
                ctx.basis(),
                ctx.sc_table(),
                &(0..ctx.dim()).map(|i| ctx.gsc_table(i).clone()).collect::<Vec<_>>(),
            );
            let mut text = String::new();
            if *generalized {
                for i in 0..ctx.dim() {
                    for (alpha, c) in ctx.gsc_table(i) {
                        if c.is_empty() || alpha.is_zero() {
                            continue;
                        }
                        text += &format!("c[X{}; {:?}] = {}\n", i + 1, alpha.exponents(), sparse_text(c));
                    }
                }
            } else {
                for i in 0..ctx.dim() {
                    for j in 0..i {
                        let c = ctx.sc(i, j);
                        if !c.is_empty() {
                            text += &format!("[X{}, X{}] = {}\n", i + 1, j + 1, sparse_text(c));
                        }
                    }
                }
            }
            let mut json = serde_json::to_value(&file)?;
            if !generalized {
                json.as_object_mut().expect("object").remove("gsc");
            }
            Ok(Outcome::pass(text, json))
        }
        Command::ExtremalPoly { r, s, i, v } => {
            let ctx = group(g, *r, *s)?;
            let idx = i.checked_sub(1).ok_or(Error::IndexOutOfRange {
                index: 0,
                len: ctx.dim(),
            })?;
            let ep = ctx.extremal_polynomial(idx)?;
            match v {
                None => Ok(Outcome::pass(
                    format!("P_{i} = {}\n", ep.display()),
                    json!({"i": i, "table": ep.to_json()}),
                )),
                Some(v) => {
                    let v = parse_covector(v, ctx.dim())?;
                    let p = ep.specialize_v(&v)?;
                    Ok(Outcome::pass(
                        format!("P_{i}^v = {p}\n"),
                        json!({"i": i, "v": rational_strings(&v), "poly": p.to_json()}),
                    ))
                }
            }
        }
        Command::Variety { r, s, v, goh } => {
            let ctx = group(g, *r, *s)?;
            let v = parse_covector(v, ctx.dim())?;
            let gens = if *goh {
                ctx.goh_variety_generators(&v, false)?
            } else {
                ctx.abnormal_variety_generators(&v)?
            };
            let report = ctx.nontriviality_report(&v)?;
            let name = if *goh { "G_v" } else { "Z_v" };
            let mut text = format!("{name} is cut out by:\n");
            for (k, p) in gens.iter().enumerate() {
                text += &format!("  P_{}^v = {p}\n", k + 1);
            }
            text += &format!(
                "v = 0: {}; generators vanishing identically: {:?}; second-layer v = 0: {}; consistent: {}\n",
                report.v_is_zero,
                report.zero_generators.iter().map(|k| k + 1).collect::<Vec<_>>(),
                report.second_layer_zero,
                report.consistent
            );
            let json = json!({
                "variety": name,
                "generators": gens.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                "report": report,
            });
            Ok(Outcome {
                ok: report.consistent,
                text,
                json,
            })
        }
        Command::Develop { r, s, controls } => {
            let ctx = group(g, *r, *s)?;
            let h = read_controls(controls)?;
            let curve = develop(&ctx, &h)?;
            let ok = check_horizontal(&ctx, &curve)?;
            let mut text = String::new();
            for (k, gk) in curve.gamma.iter().enumerate() {
                text += &format!("gamma_{} = {gk}\n", k + 1);
            }
            text += &format!("horizontal: {}\n", verdict(ok));
            let json = json!({"gamma": curve.gamma.iter().map(|p| p.to_json()).collect::<Vec<_>>(), "horizontal": ok});
            Ok(Outcome { ok, text, json })
        }
        Command::Verify {
            r,
            s,
            controls,
            v,
            samples,
        } => {
            let ctx = group(g, *r, *s)?;
            let h = read_controls(controls)?;
            let v0 = parse_covector(v, ctx.dim())?;
            let curve = develop(&ctx, &h)?;
            let horizontal = check_horizontal(&ctx, &curve)?;
            let master = verify_master_identity(&ctx, &curve, &v0)?;
            let theta = theta_frame_check(&ctx, &curve, &v0, *samples)?;
            let ok = horizontal && master && theta;
            let text = format!(
                "horizontal: {}\nlambda = P^v(gamma): {}\nframe cross-check at {samples} samples: {}\n",
                verdict(horizontal),
                verdict(master),
                verdict(theta)
            );
            let json = json!({"horizontal": horizontal, "master_identity": master, "theta_frame": theta, "ok": ok});
            Ok(Outcome { ok, text, json })
        }
        Command::Classify { r, s, controls, v } => {
            let ctx = group(g, *r, *s)?;
            let h = read_controls(controls)?;
            let curve = develop(&ctx, &h)?;
            let report = ClassificationReport::build(&ctx, &curve)?;
            let mut text = format!("corank: {}\n", report.corank);
            for b in &report.abnormal_basis {
                text += &format!("  abnormal v = ({})\n", b.join(", "));
            }
            text += &format!("Goh covectors: {}\n", report.goh_basis.len());
            for b in &report.goh_basis {
                text += &format!("  Goh v = ({})\n", b.join(", "));
            }
            text += &format!("strictness: {}\n", report.strict);
            let mut json = serde_json::to_value(&report)?;
            if let Some(v) = v {
                let v0 = parse_covector(v, ctx.dim())?;
                let ind = regular_abnormal_indicator(&ctx, &curve, &v0)?;
                text += &format!(
                    "regular indicator: {}\n",
                    if ind.nonvanishing() { "nonvanishing" } else { "vanishes" }
                );
                for (p, z) in ind.zeros.iter().enumerate() {
                    match z {
                        CommonZeros::Everywhere => text += &format!("  piece {}: common zero everywhere\n", p + 1),
                        CommonZeros::At(roots) => {
                            for (a, b) in roots {
                                text += &format!(
                                    "  piece {}: common zero in [{}, {}]\n",
                                    p + 1,
                                    format_rational(a),
                                    format_rational(b)
                                );
                            }
                        }
                    }
                }
                json["indicator_nonvanishing"] = json!(ind.nonvanishing());
            }
            Ok(Outcome::pass(text, json))
        }
        Command::Shoot { r, s, v, horizon, dt } => {
            let ctx = group(g, *r, *s)?;
            let v0 = parse_covector(v, ctx.dim())?;
            let res = normal_shoot(&ctx, &v0, *horizon, *dt)?;
            let last = res.states.last().cloned().unwrap_or_default();
            let text = format!(
                "steps: {}\nH(0) = {:.12e}\nmax |H(t) - H(0)| = {:.3e}\ngamma(T) = {:?}\n",
                res.steps, res.hamiltonian0, res.max_drift, last
            );
            let json = serde_json::to_value(&res)?;
            Ok(Outcome::pass(text, json))
        }
        Command::Length { controls } => {
            let h = read_controls(controls)?;
            let (l, e) = (length(&h), energy(&h));
            Ok(Outcome::pass(
                format!("length: {l:.15}\nenergy: {}\n", format_rational(&e)),
                json!({"length": l, "energy": format_rational(&e)}),
            ))
        }
        Command::Lift {
            quotient,
            controls,
            samples,
        } => {
            let spec: QuotientSpec = serde_json::from_str(&read_input(quotient)?)?;
            let ctx = group(g, spec.r, spec.s)?;
            let q = QuotientGroup::from_spec(&ctx, &spec)?;
            let h = read_controls(controls)?;
            let kappa = lift_curve(&q, &h)?;
            let ok = check_flow_commutation(&q, &h, *samples)?;
            let mut text = String::new();
            for (k, gk) in kappa.gamma.iter().enumerate() {
                text += &format!("kappa_{} = {gk}\n", k + 1);
            }
            text += &format!("flow commutation: {}\n", verdict(ok));
            let json =
                json!({"kappa": kappa.gamma.iter().map(|p| p.to_json()).collect::<Vec<_>>(), "flow_commutation": ok});
            Ok(Outcome { ok, text, json })
        }
        Command::QuotientCheck {
            quotient,
            controls,
            lambda0,
            samples,
        } => {
            let spec: QuotientSpec = serde_json::from_str(&read_input(quotient)?)?;
            let ctx = group(g, spec.r, spec.s)?;
            let q = QuotientGroup::from_spec(&ctx, &spec)?;
            let h = read_controls(controls)?;
            let l0 = parse_covector(lambda0, q.dim())?;
            let dual_ok = quotient_dual_check(&q, &h, &l0)?;
            let pull_ok = check_pullback(&q, &quotient_dual_curve(&q, &h, &l0)?);
            let flow_ok = check_flow_commutation(&q, &h, *samples)?;
            let ok = dual_ok && pull_ok && flow_ok;
            let text = format!(
                "v = {}\nlambda_i = P^v_(s_i)(kappa) solves the quotient equations: {}\npullback solves the free equations: {}\nflow commutation: {}\n",
                format_vector(&q.pullback(&l0)?),
                verdict(dual_ok),
                verdict(pull_ok),
                verdict(flow_ok)
            );
            let json = json!({"dual": dual_ok, "pullback": pull_ok, "flow_commutation": flow_ok, "ok": ok});
            Ok(Outcome { ok, text, json })
        }
        Command::QuotientClassify { quotient, controls } => {
            let spec: QuotientSpec = serde_json::from_str(&read_input(quotient)?)?;
            let ctx = group(g, spec.r, spec.s)?;
            let q = QuotientGroup::from_spec(&ctx, &spec)?;
            let h = read_controls(controls)?;
            let basis = find_quotient_abnormal_covectors(&q, &h)?;
            let monotone = check_corank_monotone(&q, &h)?;
            let mut text = format!("quotient corank: {}\n", basis.len());
            for b in &basis {
                text += &format!("  lambda0 = {}\n", format_vector(b));
            }
            text += &format!("embeds into the free abnormal space: {}\n", verdict(monotone));
            let json = json!({
                "corank": basis.len(),
                "abnormal_basis": basis.iter().map(|b| rational_strings(b)).collect::<Vec<_>>(),
                "embeds": monotone,
            });
            Ok(Outcome {
                ok: monotone,
                text,
                json,
            })
        }
        Command::Reproduce { item } => reproduce::run(g, *item),
        Command::Selftest { r, s, trials } => selftest::run(g, *r, *s, *trials),
    }
}

fn sparse_text(c: &crate::realization::SparseVec) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|(k, q)| {
            if *q == Rational::from_integer(1.into()) {
                format!("X{}", k + 1)
            } else {
                format!("{} X{}", format_rational(q), k + 1)
            }
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn covector_notation() {
        let v = parse_covector("e5+e6", 8).unwrap();
        assert_eq!(v[4], int(1));
        assert_eq!(v[5], int(1));
        let v = parse_covector("e7 + 2e18 - 1/2e3", 32).unwrap();
        assert_eq!(
            (v[6].clone(), v[17].clone(), v[2].clone()),
            (int(1), int(2), rat(-1, 2))
        );
        assert_eq!(parse_covector("1,0,-1/3", 3).unwrap()[2], rat(-1, 3));
        assert!(parse_covector("1,0", 3).is_err());
        assert!(parse_covector("e9", 8).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::ResourceCap {
                r: 4,
                s: 6,
                dim: 964,
                cap: 100
            }),
            3
        );
        assert_eq!(exit_code(&Error::Residual("x".into())), 1);
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
    }
}
