//! `ftq` — exact verification of additive character sums, discrepancy
//! operators, and pattern counts over quotient rings `F_p[t] / (Q)`.
//!
//! Every subcommand reads its instance from flags, computes exactly
//! (floating point appears only in final magnitudes), and prints one
//! machine-readable document to stdout: JSON by default, a flat CSV with
//! `--out csv`. The randomized subcommands derive all randomness from
//! `--seed` through the generator named in their output, so a rerun with
//! the same flags is byte-identical regardless of `--threads`.
//!
//! Exit codes: 0 success, 1 the verification suite reported a violation,
//! 2 malformed input, 3 precondition violation, 4 internal invariant
//! breach.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ftq::addpoly::{is_good_equidistribution, reduce_family, AdditivePoly, ReductionCertificate};
use ftq::combinat::{
    check_constant_condition, count_patterns, count_solutions_three, free_set_bound,
    greedy_free_set, is_intersective_upto, max_free_set, monochromatic_count, schur_count,
    Coloring,
};
use ftq::ergodic::{
    char_sum, check_character_bound, root_count_check, te_discrepancy, vdc_check, BoundReport,
    MultiplierAnalysis,
};
use ftq::ffield::{
    distinct_degree_profile, enumerate_monic, is_irreducible, smallest_irreducible_factor, Poly,
};
use ftq::quotient::ResidueCtx;
use ftq::subgroup::{image_subgroup, parts_image_subgroup, span_indices, Subspace};
use ftq::text::{parse_poly, parse_ypoly};
use ftq::ypoly::YPoly;
use ftq::{verify, Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// The one random generator the CLI uses; named in the output of every
/// randomized subcommand next to the seed that drove it.
const GENERATOR: &str = "ChaCha8";

/// Trials per invocation of the randomized difference check.
const VDC_TRIALS: usize = 100;

#[derive(Parser)]
#[command(
    name = "ftq",
    version,
    about = "Exact character sums, discrepancy bounds, and pattern counts over F_p[t]/(Q)",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,

    /// Seed for randomized subcommands; identical seeds reproduce output
    /// byte for byte.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Absolute tolerance when comparing floating-point magnitudes.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Worker threads for the data-parallel kernels (0 = library default).
    /// Affects wall-clock time only, never results.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

/// Flags shared by every subcommand that works in a fixed quotient ring.
#[derive(Args)]
struct RingArgs {
    /// Prime characteristic of the coefficient field.
    #[arg(long)]
    p: u64,

    /// Monic modulus polynomial in t, e.g. "t^3+t+1".
    #[arg(long)]
    modulus: String,
}

impl RingArgs {
    fn ctx(&self) -> Result<Arc<ResidueCtx>> {
        ResidueCtx::new(parse_poly(self.p, &self.modulus)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Least norm of an irreducible factor of the modulus: p^(smallest factor degree).
    Lpf {
        #[command(flatten)]
        ring: RingArgs,
    },

    /// Distinct-degree factor profile of the modulus.
    Factor {
        #[command(flatten)]
        ring: RingArgs,
    },

    /// Normalized character sum (1/q) Σ_x e(⟨s, P(x)⟩) at one frequency s.
    Charsum {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial in y with t-polynomial coefficients, e.g. "y^3+(t)*y".
        #[arg(long)]
        ypoly: String,
        /// Frequency s, as a polynomial in t.
        #[arg(long)]
        c: String,
    },

    /// Multiplier operator norm: the largest nonzero-frequency character sum magnitude.
    Mnorm {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
    },

    /// Check |m(s)|^(2^(k-1)) ≤ p^(2·⌊log_p d⌋)·(k-1)/lpf(Q) at every frequency
    /// of one or many moduli.
    BoundSweep {
        /// Prime characteristic of the coefficient field.
        #[arg(long)]
        p: u64,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
        /// Single modulus to check (alternative to --modulus-deg-range).
        #[arg(long)]
        modulus: Option<String>,
        /// Inclusive degree range "A..B"; sweeps every monic modulus in it.
        #[arg(long, value_name = "A..B")]
        modulus_deg_range: Option<String>,
        /// Restrict a degree-range sweep to irreducible moduli.
        #[arg(long)]
        irreducible_only: bool,
    },

    /// Limiting shift-average discrepancy along multiples of a shift m:
    /// 0 exactly when gcd(m, Q) = 1, otherwise 1 with an extremal witness.
    Te {
        #[command(flatten)]
        ring: RingArgs,
        /// Shift m, as a polynomial in t.
        #[arg(long)]
        c: String,
    },

    /// Iterated difference check: seeded random functions and subgroups must
    /// satisfy the depth-k mean-to-difference inequality.
    Vdc {
        #[command(flatten)]
        ring: RingArgs,
        /// Differencing depth (1..=3).
        #[arg(long)]
        k: u32,
    },

    /// Count roots of P in the ring and compare with the degree bound d·q/lpf(Q).
    Roots {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
    },

    /// Split P into its constant term and additive parts P_r(y^r) with r coprime to p.
    Decompose {
        /// Prime characteristic of the coefficient field.
        #[arg(long)]
        p: u64,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
    },

    /// Largest base-p digit sum over the exponents of P (the differencing depth driver).
    Ddeg {
        /// Prime characteristic of the coefficient field.
        #[arg(long)]
        p: u64,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
    },

    /// Reduce a family of additive polynomials to one monic generator of the
    /// sum of their images, with composition witnesses.
    Reduce {
        /// Prime characteristic of the coefficient field.
        #[arg(long)]
        p: u64,
        /// ';'-separated additive polynomials in y, e.g. "y^25 - y ; y^125 + y^5".
        #[arg(long)]
        etas: String,
    },

    /// Decide whether P equidistributes in every quotient ring (constant
    /// coefficients only), with a reduction certificate either way.
    Goodeq {
        /// Prime characteristic of the coefficient field.
        #[arg(long)]
        p: u64,
        /// Polynomial in y with constant coefficients.
        #[arg(long)]
        ypoly: String,
    },

    /// F_p-span of the image of P and of its additive-part images in one ring.
    Subgroup {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
    },

    /// Count pairs (a, a + P(y)) with a ∈ A and a + P(y) ∈ B against the
    /// character-sum deviation bound.
    Sarkozy {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
        /// CSV file of residues forming the left set A (one polynomial per line).
        #[arg(long, value_name = "FILE")]
        set_a: String,
        /// CSV file of residues forming the right set B.
        #[arg(long, value_name = "FILE")]
        set_b: String,
        /// Also report whether P - P(r) has a root modulo every prime power
        /// of degree up to this depth.
        #[arg(long)]
        depth: Option<usize>,
    },

    /// Largest set with no two elements differing by a nonzero value of P
    /// (exact up to 64 ring elements, greedy lower bound above).
    Freeset {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
    },

    /// Count solutions of P1(x) + P2(y) + P3(z) = c exactly, against the
    /// subgroup main term and character tail bound.
    Solve3 {
        #[command(flatten)]
        ring: RingArgs,
        /// Three ';'-separated polynomials in y, each vanishing at 0.
        #[arg(long)]
        ypoly: String,
        /// Target value c, as a polynomial in t.
        #[arg(long, default_value = "0")]
        c: String,
    },

    /// Count monochromatic solutions of x - y = P(z), x - z = Qp(w) sharing
    /// one color class.
    Mono {
        #[command(flatten)]
        ring: RingArgs,
        /// Two ';'-separated polynomials "P ; Qp".
        #[arg(long)]
        ypoly: String,
        /// CSV file "residue,color" assigning every ring element a color.
        #[arg(long, value_name = "FILE")]
        coloring: String,
    },

    /// Count monochromatic solutions of P(x) + P(y) = P(z).
    Schur {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial in y with t-polynomial coefficients.
        #[arg(long)]
        ypoly: String,
        /// CSV file "residue,color" assigning every ring element a color.
        #[arg(long, value_name = "FILE")]
        coloring: String,
    },

    /// Check whether the constant term of Qp lies in the span of its
    /// additive-part images over the degree-k extension field.
    Constcond {
        /// Prime characteristic of the coefficient field.
        #[arg(long)]
        p: u64,
        /// Polynomial in y with constant coefficients.
        #[arg(long)]
        ypoly: String,
        /// Extension degree k ≥ 1.
        #[arg(long)]
        k: usize,
    },

    /// Run the whole verification suite; one line per check, nonzero exit on
    /// any violation.
    VerifyAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: usize) {
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: usize) {}

/// Write one line to stdout; if the consumer closed the pipe (e.g.
/// `ftq ... | head`), stop quietly instead of panicking.
fn out_line(text: impl std::fmt::Display) {
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{text}").is_err() {
        std::process::exit(0);
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Lpf { ring } => {
            let ctx = ring.ctx()?;
            out_line(ctx.lpf());
        }
        Command::Factor { ring } => {
            let q = parse_poly(ring.p, &ring.modulus)?;
            let profile = distinct_degree_profile(&q)?;
            let degrees: Vec<Value> =
                profile.degree_multiset.iter().map(|(d, m)| json!([d, m])).collect();
            emit(
                cli.out,
                &json!({
                    "p": ring.p,
                    "Q": q.to_string(),
                    "degree_profile": degrees,
                    "smallest_irreducible_factor": smallest_irreducible_factor(&q)?.to_string(),
                    "lpf": ftq::ffield::lpf(&q)?,
                }),
            );
        }
        Command::Charsum { ring, ypoly, c } => {
            let ctx = ring.ctx()?;
            let poly = parse_ypoly(ring.p, ypoly)?;
            let s = ctx.residue(&parse_poly(ring.p, c)?)?;
            let z = char_sum(&poly, &ctx, &s)?;
            emit(
                cli.out,
                &json!({
                    "p": ring.p,
                    "Q": ctx.modulus().to_string(),
                    "P": poly.to_string(),
                    "s": s.rep().to_string(),
                    "re": z.re,
                    "im": z.im,
                    "abs": z.norm(),
                }),
            );
        }
        Command::Mnorm { ring, ypoly } => {
            let ctx = ring.ctx()?;
            let poly = parse_ypoly(ring.p, ypoly)?;
            let analysis = MultiplierAnalysis::new(&poly, &ctx)?;
            emit(
                cli.out,
                &json!({
                    "p": ring.p,
                    "Q": ctx.modulus().to_string(),
                    "P": poly.to_string(),
                    "norm": analysis.norm(),
                    "argmax": ctx.poly_at(analysis.argmax()).to_string(),
                    "lpf": ctx.lpf(),
                }),
            );
        }
        Command::BoundSweep { p, ypoly, modulus, modulus_deg_range, irreducible_only } => {
            let poly = parse_ypoly(*p, ypoly)?;
            let moduli = sweep_moduli(*p, modulus, modulus_deg_range, *irreducible_only)?;
            let mut reports: Vec<BoundReport> = Vec::new();
            for q in &moduli {
                let ctx = ResidueCtx::new(q.clone())?;
                reports.extend(check_character_bound(&poly, &ctx)?);
            }
            match cli.out {
                OutFormat::Csv => {
                    out_line(BoundReport::csv_header());
                    for report in &reports {
                        out_line(report.csv_row());
                    }
                }
                OutFormat::Json => {
                    let violations = reports.iter().filter(|r| !r.satisfied).count();
                    let max_ratio = reports
                        .iter()
                        .filter(|r| r.rhs > 0.0)
                        .map(|r| r.lhs / r.rhs)
                        .fold(0.0_f64, f64::max);
                    emit(
                        cli.out,
                        &json!({
                            "instances": reports.len(),
                            "violations": violations,
                            "max_ratio": max_ratio,
                        }),
                    );
                }
            }
        }
        Command::Te { ring, c } => {
            let ctx = ring.ctx()?;
            let m = parse_poly(ring.p, c)?;
            let (discrepancy, witness) = te_discrepancy(&m, &ctx)?;
            emit(
                cli.out,
                &json!({
                    "p": ring.p,
                    "Q": ctx.modulus().to_string(),
                    "m": m.to_string(),
                    "discrepancy": discrepancy,
                    "witness": witness.map(|f| complex_rows(&f)),
                }),
            );
        }
        Command::Vdc { ring, k } => {
            let ctx = ring.ctx()?;
            let report = vdc_trials(&ctx, *k, cli.seed, cli.tolerance)?;
            emit(cli.out, &report);
        }
        Command::Roots { ring, ypoly } => {
            let ctx = ring.ctx()?;
            let poly = parse_ypoly(ring.p, ypoly)?;
            let (count, bound) = root_count_check(&poly, &ctx)?;
            emit(
                cli.out,
                &json!({
                    "q": ctx.size(),
                    "Q": ctx.modulus().to_string(),
                    "P": poly.to_string(),
                    "count": count,
                    "bound": bound,
                    "ok": (count as f64) <= bound + cli.tolerance,
                }),
            );
        }
        Command::Decompose { p, ypoly } => {
            let poly = parse_ypoly(*p, ypoly)?;
            let decomposition = poly.decompose();
            let parts: Vec<Value> = decomposition
                .parts
                .iter()
                .map(|(r, part)| json!([r, part.to_ypoly().to_string()]))
                .collect();
            emit(
                cli.out,
                &json!({
                    "p": *p,
                    "P": poly.to_string(),
                    "constant": decomposition.a0.to_string(),
                    "parts": parts,
                }),
            );
        }
        Command::Ddeg { p, ypoly } => {
            out_line(parse_ypoly(*p, ypoly)?.d_deg());
        }
        Command::Reduce { p, etas } => {
            let family = parse_additive_list(*p, etas)?;
            let cert = reduce_family(&family)?;
            emit(cli.out, &certificate_json(&cert)?);
        }
        Command::Goodeq { p, ypoly } => {
            let poly = parse_ypoly(*p, ypoly)?;
            let (good, cert) = is_good_equidistribution(&poly)?;
            emit(
                cli.out,
                &json!({
                    "p": *p,
                    "P": poly.to_string(),
                    "good": good,
                    "certificate": certificate_json(&cert)?,
                }),
            );
        }
        Command::Subgroup { ring, ypoly } => {
            let ctx = ring.ctx()?;
            let poly = parse_ypoly(ring.p, ypoly)?;
            let image = image_subgroup(&poly, &ctx)?;
            let parts = parts_image_subgroup(&poly, &ctx)?;
            let constant = ctx.residue(&poly.constant_term())?;
            emit(
                cli.out,
                &json!({
                    "q": ctx.size(),
                    "Q": ctx.modulus().to_string(),
                    "P": poly.to_string(),
                    "image": subspace_json(&image),
                    "parts": subspace_json(&parts),
                    "constant_in_parts": parts.contains_index(constant.index()),
                }),
            );
        }
        Command::Sarkozy { ring, ypoly, set_a, set_b, depth } => {
            let ctx = ring.ctx()?;
            let poly = parse_ypoly(ring.p, ypoly)?;
            let a = load_set(&ctx, set_a)?;
            let b = load_set(&ctx, set_b)?;
            let count = count_patterns(&a, &b, &poly, &ctx)?;
            let intersective = match depth {
                None => Value::Null,
                Some(depth) => {
                    let (holds, witness) = is_intersective_upto(&poly, *depth)?;
                    json!({
                        "depth": depth,
                        "holds": holds,
                        "witness": witness.map(|w| w.to_string()),
                    })
                }
            };
            emit(
                cli.out,
                &json!({
                    "q": ctx.size(),
                    "Q": ctx.modulus().to_string(),
                    "P": poly.to_string(),
                    "a_size": a.len(),
                    "b_size": b.len(),
                    "count": count.count,
                    "expected": count.expected,
                    "deviation": count.deviation,
                    "bound": count.bound,
                    "ok": count.within_bound(cli.tolerance),
                    "intersective": intersective,
                }),
            );
        }
        Command::Freeset { ring, ypoly } => {
            let ctx = ring.ctx()?;
            let poly = parse_ypoly(ring.p, ypoly)?;
            let (mode, size, set) = match max_free_set(&poly, &ctx) {
                Ok((size, set)) => ("exact", size, set),
                Err(Error::RingTooLarge(..)) => {
                    let (size, set) = greedy_free_set(&poly, &ctx)?;
                    ("greedy-lower-bound", size, set)
                }
                Err(e) => return Err(e),
            };
            let bound = free_set_bound(&poly, &ctx)?;
            let members: Vec<String> =
                set.iter().map(|&idx| ctx.poly_at(idx).to_string()).collect();
            emit(
                cli.out,
                &json!({
                    "q": ctx.size(),
                    "Q": ctx.modulus().to_string(),
                    "P": poly.to_string(),
                    "mode": mode,
                    "size": size,
                    "bound": bound,
                    "ok": (size as f64) <= bound + cli.tolerance,
                    "members": members,
                }),
            );
        }
        Command::Solve3 { ring, ypoly, c } => {
            let ctx = ring.ctx()?;
            let polys = parse_ypoly_list(ring.p, ypoly, 3)?;
            let target = ctx.residue(&parse_poly(ring.p, c)?)?;
            let (count, solvable) =
                count_solutions_three(&polys[0], &polys[1], &polys[2], &target, &ctx)?;
            emit(
                cli.out,
                &json!({
                    "q": ctx.size(),
                    "Q": ctx.modulus().to_string(),
                    "P": polys.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "c": target.rep().to_string(),
                    "count": count.count,
                    "expected": count.expected,
                    "deviation": count.deviation,
                    "bound": count.bound,
                    "solvable": solvable,
                    "ok": count.within_bound(cli.tolerance),
                }),
            );
        }
        Command::Mono { ring, ypoly, coloring } => {
            let ctx = ring.ctx()?;
            let polys = parse_ypoly_list(ring.p, ypoly, 2)?;
            let coloring = Coloring::from_csv(&ctx, &read_text(coloring)?)?;
            let count = monochromatic_count(&coloring, &polys[0], &polys[1])?;
            emit(
                cli.out,
                &json!({
                    "q": ctx.size(),
                    "Q": ctx.modulus().to_string(),
                    "P": polys[0].to_string(),
                    "Qp": polys[1].to_string(),
                    "colors": coloring.num_colors(),
                    "count": count,
                }),
            );
        }
        Command::Schur { ring, ypoly, coloring } => {
            let ctx = ring.ctx()?;
            let poly = parse_ypoly(ring.p, ypoly)?;
            let coloring = Coloring::from_csv(&ctx, &read_text(coloring)?)?;
            let count = schur_count(&coloring, &poly)?;
            emit(
                cli.out,
                &json!({
                    "q": ctx.size(),
                    "Q": ctx.modulus().to_string(),
                    "P": poly.to_string(),
                    "colors": coloring.num_colors(),
                    "count": count,
                }),
            );
        }
        Command::Constcond { p, ypoly, k } => {
            let poly = parse_ypoly(*p, ypoly)?;
            let holds = check_constant_condition(&poly, *k)?;
            emit(
                cli.out,
                &json!({
                    "p": *p,
                    "P": poly.to_string(),
                    "k": *k,
                    "holds": holds,
                }),
            );
        }
        Command::VerifyAll => return verify_all(cli.out),
    }
    Ok(ExitCode::SUCCESS)
}

/// Print one line (or JSON record) per check; exit 1 if any check failed.
fn verify_all(out: OutFormat) -> Result<ExitCode> {
    let outcomes = verify::run_all();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    match out {
        OutFormat::Json => {
            let docs: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "passed": o.passed,
                        "instances": o.instances,
                        "details": o.details,
                    })
                })
                .collect();
            out_line(format!("{:#}", json!({ "checks": docs, "passed": passed, "total": outcomes.len() })));
        }
        OutFormat::Csv => {
            for outcome in &outcomes {
                out_line(format!(
                    "{}: {} — {} instances; {}",
                    outcome.name,
                    if outcome.passed { "PASS" } else { "FAIL" },
                    outcome.instances,
                    outcome.details
                ));
            }
            out_line(format!("verification suite: {passed}/{} checks passed", outcomes.len()));
        }
    }
    Ok(if passed == outcomes.len() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Seeded difference-inequality trials: random functions against random
/// subgroups, all drawn from one ChaCha8 stream.
fn vdc_trials(ctx: &Arc<ResidueCtx>, k: u32, seed: u64, tolerance: f64) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = ctx.size();
    let mut violations = 0usize;
    let mut max_gap = f64::MIN;
    for _ in 0..VDC_TRIALS {
        let f: Vec<Complex64> = (0..q)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let generators: Vec<usize> =
            (0..rng.gen_range(0..=ctx.dim())).map(|_| rng.gen_range(0..q)).collect();
        let subgroup = span_indices(ctx, &generators);
        let (lhs, rhs) = vdc_check(&f, &subgroup, k)?;
        let gap = lhs - rhs;
        max_gap = max_gap.max(gap);
        if gap > tolerance {
            violations += 1;
        }
    }
    Ok(json!({
        "generator": GENERATOR,
        "seed": seed,
        "q": q,
        "Q": ctx.modulus().to_string(),
        "k": k,
        "trials": VDC_TRIALS,
        "violations": violations,
        "max_gap": max_gap,
        "ok": violations == 0,
    }))
}

fn certificate_json(cert: &ReductionCertificate) -> Result<Value> {
    Ok(json!({
        "inputs": cert.inputs.iter().map(|a| a.to_ypoly().to_string()).collect::<Vec<_>>(),
        "eta": cert.eta.to_ypoly().to_string(),
        "zetas": cert.zetas.iter().map(|a| a.to_ypoly().to_string()).collect::<Vec<_>>(),
        "verified": cert.verify()?,
    }))
}

fn subspace_json(space: &Subspace) -> Value {
    json!({
        "rank": space.rank(),
        "size": space.size(),
        "basis": space.basis_polys().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn complex_rows(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

/// The moduli a sweep runs over: either the one named modulus or every
/// monic polynomial in the inclusive degree range "A..B".
fn sweep_moduli(
    p: u64,
    modulus: &Option<String>,
    range: &Option<String>,
    irreducible_only: bool,
) -> Result<Vec<Poly>> {
    match (modulus, range) {
        (Some(q), None) => Ok(vec![parse_poly(p, q)?]),
        (None, Some(range)) => {
            let (lo, hi) = range
                .split_once("..")
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .filter(|&(a, b): &(usize, usize)| a >= 1 && a <= b)
                .ok_or_else(|| {
                    Error::Parse(format!("expected a degree range like \"1..4\", got {range:?}"))
                })?;
            let mut moduli = Vec::new();
            for degree in lo..=hi {
                for q in enumerate_monic(p, degree) {
                    if !irreducible_only || is_irreducible(&q)? {
                        moduli.push(q);
                    }
                }
            }
            Ok(moduli)
        }
        _ => Err(Error::Parse(
            "exactly one of --modulus and --modulus-deg-range is required".into(),
        )),
    }
}

fn parse_ypoly_list(p: u64, text: &str, expect: usize) -> Result<Vec<YPoly>> {
    let polys: Vec<YPoly> =
        text.split(';').map(|part| parse_ypoly(p, part.trim())).collect::<Result<_>>()?;
    if polys.len() != expect {
        return Err(Error::Parse(format!(
            "expected {expect} ';'-separated polynomials, got {}",
            polys.len()
        )));
    }
    Ok(polys)
}

fn parse_additive_list(p: u64, text: &str) -> Result<Vec<AdditivePoly>> {
    text.split(';')
        .map(|part| AdditivePoly::try_from_ypoly(&parse_ypoly(p, part.trim())?))
        .collect()
}

fn read_text(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

/// Load a residue set: one polynomial per line, optional "residue" header,
/// blank lines and '#' comments ignored.
fn load_set(ctx: &Arc<ResidueCtx>, path: &str) -> Result<BTreeSet<usize>> {
    let text = read_text(path)?;
    let mut set = BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (lineno == 0 && line == "residue") {
            continue;
        }
        let poly = parse_poly(ctx.prime(), line)
            .map_err(|e| Error::Parse(format!("{path}:{}: {e}", lineno + 1)))?;
        set.insert(ctx.residue(&poly)?.index());
    }
    Ok(set)
}

fn emit(out: OutFormat, doc: &Value) {
    match out {
        OutFormat::Json => out_line(format!("{doc:#}")),
        OutFormat::Csv => {
            let fields = doc.as_object().expect("csv output is built from a flat object");
            let cells: Vec<String> = fields.values().map(csv_cell).collect();
            out_line(fields.keys().cloned().collect::<Vec<_>>().join(","));
            out_line(cells.join(","));
        }
    }
}

fn csv_cell(value: &Value) -> String {
    let text = match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text
    }
}
