//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hodgeci_core::fermat::{
    associated_poly_closed, fermat_context, linear_cycle, linear_intersection_closed,
    linear_period_closed, fermat_verdict, LinearCycleSpec,
};
use hodgeci_core::hodge::{colon_equality, tangent};
use hodgeci_core::mpoly::{bounded_monomials, euler_omega_check, jacobian, monomials_of_degree};
use hodgeci_core::periods::{
    complete_intersection_series, intersection_prepared, period_prepared, top_form_period,
    top_form_sign, ContextOptions, HypersurfaceContext, PreparedCycle,
};
use hodgeci_core::{CycloField, GradedIdeal, Monomial, Poly, PolyRing};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(60);
const LIMIT_3: Duration = Duration::from_secs(120);
const LIMIT_4: Duration = Duration::from_secs(120);
const LIMIT_5: Duration = Duration::from_secs(60);
const LIMIT_6: Duration = Duration::from_secs(300);
const LIMIT_7: Duration = Duration::from_secs(10);
const LIMIT_8: Duration = Duration::from_secs(300);

const PERTURBATION_SEEDS: [u64; 5] = [11, 23, 37, 41, 53];
const PERTURBATION_TERMS: usize = 6;
const PERTURBATION_COEFF: i64 = 3;
const WORKER_COUNTS: [usize; 2] = [1, 4];

type Outcome = std::result::Result<String, String>;
type Criterion = (u32, fn() -> Outcome, Duration);

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let ctx = fermat_context(2, 3).map_err(err)?;
    let spec = LinearCycleSpec::new(2, 3, vec![3, 3]).map_err(err)?;
    let cycle = linear_cycle(&spec).map_err(err)?;
    let r = ctx.ring();
    check(
        cycle.summands[0].fs == vec![r.parse("x0 + x1").unwrap(), r.parse("x2 + x3").unwrap()],
        || "linear cycle is not {x0+x1 = x2+x3 = 0}".into(),
    )?;
    let prepared = PreparedCycle::new(&ctx, &cycle).map_err(err)?;
    let rep = intersection_prepared(&ctx, &prepared, &prepared).map_err(err)?;
    let closed = linear_intersection_closed(&spec, &spec).map_err(err)?;
    let quarter = hodgeci_core::Rational::new(1.into(), 4.into());
    check(rep.value == BigInt::from(-1), || {
        format!("value {}", rep.value)
    })?;
    check(rep.c == quarter, || format!("c = {}", rep.c))?;
    check(rep.c_scaled == BigInt::from(4), || {
        format!("c(d-1)^4 = {}", rep.c_scaled)
    })?;
    check(closed == rep.value, || format!("closed form {closed}"))?;
    Ok(format!("value=-1 c=1/4 c(d-1)^4=4 closed={closed}"))
}

fn criterion_2() -> Outcome {
    let mut pairs_total = 0usize;
    let mut literal_holds = 0usize;
    for (n, d) in [(2, 3), (2, 4), (2, 5), (4, 3), (4, 4), (4, 5)] {
        let ctx = fermat_context(n, d).map_err(err)?;
        let specs = LinearCycleSpec::all(n, d).map_err(err)?;
        let prepared: Vec<PreparedCycle> = specs
            .par_iter()
            .map(|s| PreparedCycle::new(&ctx, &linear_cycle(s)?))
            .collect::<hodgeci_core::Result<_>>()
            .map_err(err)?;
        let idx: Vec<(usize, usize)> = (0..specs.len())
            .flat_map(|i| (0..specs.len()).map(move |j| (i, j)))
            .collect();
        let results: Vec<std::result::Result<bool, String>> = idx
            .par_iter()
            .map(|&(i, j)| {
                let rep = intersection_prepared(&ctx, &prepared[i], &prepared[j]).map_err(err)?;
                let closed = linear_intersection_closed(&specs[i], &specs[j]).map_err(err)?;
                let m = specs[i].meet_dim(&specs[j]);
                check(rep.value == closed, || {
                    format!(
                        "(n,d)=({n},{d}) {:?} x {:?} (m={m}): engine {} closed {closed}",
                        specs[i].alphas(),
                        specs[j].alphas(),
                        rep.value
                    )
                })?;
                check(rep.congruence_holds, || {
                    format!(
                        "(n,d)=({n},{d}) {:?} x {:?}: C={} deg products {}",
                        specs[i].alphas(),
                        specs[j].alphas(),
                        rep.c_scaled,
                        &rep.deg_delta * &rep.deg_mu
                    )
                })?;
                let literal = (&rep.c_scaled - &rep.value)
                    .mod_floor(&BigInt::from(d))
                    .is_zero();
                Ok(literal)
            })
            .collect();
        for r in results {
            literal_holds += r? as usize;
            pairs_total += 1;
        }
    }
    Ok(format!(
        "{pairs_total} ordered pairs match (1-(1-d)^(m+1))/d, all integral; \
         C = deg(delta)deg(mu) mod d on all; C = delta.mu mod d on {literal_holds}/{pairs_total}"
    ))
}

fn criterion_3() -> Outcome {
    let mut count = 0usize;
    let mut zeros = 0usize;
    for (n, d) in [(2, 3), (2, 4), (2, 5), (4, 3)] {
        let ctx = fermat_context(n, d).map_err(err)?;
        let spec = LinearCycleSpec::standard(n, d).map_err(err)?;
        let prepared = PreparedCycle::new(&ctx, &linear_cycle(&spec).map_err(err)?).map_err(err)?;
        let bounds = vec![(d - 2) as u16; n as usize + 2];
        for m in bounded_monomials(n as usize + 2, ctx.sigma(), &bounds) {
            let p = ctx.ring().term(m.clone(), ctx.ring().field().one());
            let engine = period_prepared(&ctx, &prepared, &p).map_err(err)?;
            let closed = linear_period_closed(n, d, m.exps()).map_err(err)?;
            check(engine == closed, || {
                format!(
                    "(n,d)=({n},{d}) x^{:?}: engine {engine} closed {closed}",
                    m.exps()
                )
            })?;
            count += 1;
            zeros += engine.is_zero() as usize;
        }
    }
    Ok(format!("{count} monomials agree ({zeros} zero periods)"))
}

fn binomial_profile(k: usize, d: u32, e_max: u32) -> Vec<usize> {
    complete_intersection_series(k, &vec![d - 1; k], e_max)
        .into_iter()
        .map(|v| usize::try_from(v).unwrap())
        .collect()
}

fn verify_jacobian_ring(ctx: &HypersurfaceContext) -> std::result::Result<(), String> {
    let (n, d) = (ctx.n(), ctx.d());
    let sigma = ctx.socle();
    let j = ctx.jacobian_ideal();
    let rep = j.gorenstein_check(sigma).map_err(err)?;
    check(rep.passes(), || {
        format!("(n,d)=({n},{d}) gorenstein check failed: {rep:?}")
    })?;
    let hilb = j.hilbert_function(sigma + 1).map_err(err)?;
    let want = binomial_profile(n as usize + 2, d, sigma + 1);
    check(hilb.dims == want, || {
        format!("(n,d)=({n},{d}) Hilbert {:?} expected {want:?}", hilb.dims)
    })
}

fn perturbed_cubic(seed: u64) -> hodgeci_core::Result<Poly> {
    let ring = PolyRing::new(4, CycloField::new(6)?)?;
    let field = ring.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cubics = monomials_of_degree(4, 3);
    let mut f = ring.parse("x0^3 + x1^3 + x2^3 + x3^3")?;
    for _ in 0..PERTURBATION_TERMS {
        let m = cubics[rng.gen_range(0..cubics.len())].clone();
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-PERTURBATION_COEFF..=PERTURBATION_COEFF);
        }
        f = &f + &ring.term(m, field.from_int(c));
    }
    Ok(f)
}

fn criterion_4() -> Outcome {
    let mut fermats = 0;
    for n in [2, 4] {
        for d in 2..=5 {
            verify_jacobian_ring(&fermat_context(n, d).map_err(err)?)?;
            fermats += 1;
        }
    }
    let mut perturbed = Vec::new();
    for seed in PERTURBATION_SEEDS {
        let f = perturbed_cubic(seed).map_err(err)?;
        let opts = ContextOptions {
            force_dense: true,
            ..ContextOptions::default()
        };
        let ctx = HypersurfaceContext::with_options(2, 3, f.clone(), opts)
            .map_err(|e| format!("seed {seed}: F = {f}: {e}"))?;
        check(!ctx.jacobian_ideal().uses_monomial_path(), || {
            "perturbation took the monomial path".into()
        })?;
        verify_jacobian_ring(&ctx).map_err(|e| format!("seed {seed}: {e}"))?;
        perturbed.push(seed);
    }
    Ok(format!(
        "{fermats} Fermat rings and perturbed cubics (seeds {perturbed:?}) are Gorenstein with binomial Hilbert profile"
    ))
}

/// prod_j sum_{l=0}^{d-2} beta^l x_{2j-2}^{d-2-l} x_{2j-1}^l, scaled by c.
fn prop_form(ring: &PolyRing, r: usize, d: u32, beta: &hodgeci_core::CycloScalar, c: i64) -> Poly {
    let mut out = ring.one().scale_int(c);
    for j in 0..r {
        let mut factor = ring.zero();
        for l in 0..=d - 2 {
            let mut e = vec![0u16; 2 * r];
            e[2 * j] = (d - 2 - l) as u16;
            e[2 * j + 1] = l as u16;
            factor = &factor + &ring.term(Monomial::new(&e), beta.pow(l as i64).unwrap());
        }
        out = &out * &factor;
    }
    out
}

fn criterion_5() -> Outcome {
    let mut checked = 0usize;
    let mut witnesses = 0usize;
    for r in 1..=2usize {
        for d in 3..=5u32 {
            let field = CycloField::new(6).map_err(err)?;
            let ring = PolyRing::new(2 * r, field.clone()).map_err(err)?;
            let gens = (0..2 * r)
                .map(|i| ring.var(i).unwrap().pow(d - 1))
                .collect::<Vec<_>>();
            let ideal = GradedIdeal::new(&ring, gens).map_err(err)?;
            let z = field.zeta();
            let betas = [
                field.one(),
                field.from_int(-1),
                field.from_int(2),
                z.clone(),
                &field.one() + &z,
            ];
            let scalars = [(1i64, 1i64), (1, -1), (2, 3)];
            for (i1, b1) in betas.iter().enumerate() {
                for (i2, b2) in betas.iter().enumerate() {
                    if i1 == i2 {
                        continue;
                    }
                    for &(c1, c2) in &scalars {
                        let r1 = prop_form(&ring, r, d, b1, c1);
                        let r2 = prop_form(&ring, r, d, b2, c2);
                        let sum = &r1 + &r2;
                        let critical = (d - 2) * r as u32;
                        for e in 0..=2 * critical {
                            let rep = colon_equality(&ideal, &r1, &r2, e).map_err(err)?;
                            let label =
                                || format!("r={r} d={d} beta=({b1},{b2}) c=({c1},{c2}) e={e}");
                            check(rep.lhs_in_rhs, || format!("{}: lhs not in rhs", label()))?;
                            if e != critical {
                                check(rep.holds, || format!("{}: equality fails", label()))?;
                            } else {
                                check(!rep.holds, || format!("{}: equality holds", label()))?;
                                let w = rep
                                    .witness
                                    .ok_or_else(|| format!("{}: no witness", label()))?;
                                let in_rhs = ideal.contains(&(&w * &sum)).map_err(err)?;
                                let in_lhs = ideal.contains(&(&w * &r1)).map_err(err)?
                                    && ideal.contains(&(&w * &r2)).map_err(err)?;
                                check(in_rhs && !in_lhs, || {
                                    format!("{}: witness {w} does not separate", label())
                                })?;
                                witnesses += 1;
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{checked} (r,d,beta,c,e) cases; equality off the critical degree, {witnesses} verified witnesses at e=(d-2)r"
    ))
}

fn verdict_key(v: &hodgeci_core::fermat::VerdictReport) -> (bool, bool, usize, usize, usize) {
    (
        v.equal,
        v.meet_in_delta,
        v.dim_meet,
        v.dim_delta_tangent,
        v.ambient_dim,
    )
}

fn criterion_6() -> Outcome {
    let grid = [1i64, -1, 2, 3];
    let mut summary = String::new();
    for (n, d) in [(6u32, 4u32), (6, 3)] {
        let ctx = fermat_context(n, d).map_err(err)?;
        check(ctx.jacobian_ideal().uses_monomial_path(), || {
            "dense path used".into()
        })?;
        let base = fermat_verdict(&ctx, 0, None, 1, 1).map_err(err)?;
        for &a in &grid {
            for &b in &grid {
                let v = fermat_verdict(&ctx, 0, None, a, b).map_err(err)?;
                check(verdict_key(&v) == verdict_key(&base), || {
                    format!("(n,d)=({n},{d}) verdict differs at (a,b)=({a},{b})")
                })?;
            }
        }
        if d == 4 {
            check(base.equal && base.expected_equal && base.consistent, || {
                format!("(6,4,0) verdict {base:?}")
            })?;
            check(base.dim_meet == 292 && base.ambient_dim == 330, || {
                format!("(6,4,0) dim_meet {} of {}", base.dim_meet, base.ambient_dim)
            })?;
            check(base.codim_formula_value == 38 && base.codim_matches, || {
                "(6,4,0) codim formula mismatch".into()
            })?;
        } else {
            check(
                !base.equal && !base.expected_equal && base.consistent,
                || format!("(6,3,0) verdict {base:?}"),
            )?;
            check(base.dim_delta_tangent > base.dim_meet, || {
                format!(
                    "(6,3,0) delta tangent {} not above meet {}",
                    base.dim_delta_tangent, base.dim_meet
                )
            })?;
        }
        let _ = write!(
            summary,
            "({n},{d},0): equal={} meet={} delta={} ambient={}; ",
            base.equal, base.dim_meet, base.dim_delta_tangent, base.ambient_dim
        );
    }
    for (d, want) in [(3u32, 0usize), (4, 1)] {
        let ctx = fermat_context(2, d).map_err(err)?;
        let p =
            associated_poly_closed(&LinearCycleSpec::standard(2, d).map_err(err)?).map_err(err)?;
        let rep = tangent(&ctx, &p, false).map_err(err)?;
        check(rep.codim == want, || {
            format!("(2,{d}) line codim {}", rep.codim)
        })?;
        let _ = write!(summary, "(2,{d}) line codim {}; ", rep.codim);
    }
    summary.push_str("invariant over (a,b) in {1,-1,2,3}^2");
    Ok(summary)
}

fn criterion_7() -> Outcome {
    let mut cases = 0;
    for n in 0..=4u32 {
        let k = n as usize + 2;
        let ring = PolyRing::new(k, CycloField::rationals()).map_err(err)?;
        let sign = BigInt::from(top_form_sign(n));
        for l in 1..=3u32 {
            let f: Vec<Poly> = (0..k).map(|i| ring.var(i).unwrap().pow(l)).collect();
            check(euler_omega_check(&f).map_err(err)?, || {
                format!("euler check fails n={n} l={l}")
            })?;
            let det = jacobian(&f).map_err(err)?.det().map_err(err)?;
            let v = top_form_period(&f, &det).map_err(err)?;
            let want = ring
                .field()
                .from_bigint(num_traits::pow(BigInt::from(l), k) * &sign);
            check(v.tpi_power == n + 1 && v.algebraic == want, || {
                format!("n={n} l={l}: Q=det Jac gives {v}")
            })?;
            if l == 1 {
                let v = top_form_period(&f, &ring.one()).map_err(err)?;
                check(
                    v.tpi_power == n + 1 && v.algebraic == ring.field().from_bigint(sign.clone()),
                    || format!("n={n}: Q=1 gives {v}"),
                )?;
            }
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} (n,l) cases match l^(n+2)(-1)^binom(n+2,2)(2*pi*i)^(n+1); euler checks pass"
    ))
}

/// A transcript of reports spanning every module.
fn transcript() -> std::result::Result<String, String> {
    let mut out = String::new();
    let ctx = fermat_context(2, 4).map_err(err)?;
    let specs = LinearCycleSpec::all(2, 4).map_err(err)?;
    let prepared: Vec<PreparedCycle> = specs
        .par_iter()
        .map(|s| PreparedCycle::new(&ctx, &linear_cycle(s)?))
        .collect::<hodgeci_core::Result<_>>()
        .map_err(err)?;
    for a in &prepared {
        for b in &prepared {
            let _ = writeln!(out, "{:?}", intersection_prepared(&ctx, a, b).map_err(err)?);
        }
        let p = a.associated_polynomial();
        let _ = writeln!(out, "{p}");
        let _ = writeln!(out, "{:?}", tangent(&ctx, p, true).map_err(err)?);
    }
    for m in bounded_monomials(4, ctx.sigma(), &[2, 2, 2, 2]) {
        let p = ctx.ring().term(m, ctx.ring().field().one());
        let _ = writeln!(
            out,
            "{}",
            period_prepared(&ctx, &prepared[0], &p).map_err(err)?
        );
    }
    let v = fermat_verdict(&fermat_context(6, 3).map_err(err)?, 0, None, 2, -1).map_err(err)?;
    let _ = writeln!(out, "{v:?}");
    for seed in PERTURBATION_SEEDS {
        let opts = ContextOptions {
            force_dense: true,
            ..ContextOptions::default()
        };
        let f = perturbed_cubic(seed).map_err(err)?;
        let ctx = HypersurfaceContext::with_options(2, 3, f, opts).map_err(err)?;
        let j = ctx.jacobian_ideal();
        let _ = writeln!(out, "{:?}", j.gorenstein_check(ctx.socle()).map_err(err)?);
        let _ = writeln!(out, "{}", ctx.hessian_det());
        let lhs = j.colon_slice(ctx.hessian_det(), 1).map_err(err)?;
        let _ = writeln!(out, "{:?}", lhs.basis());
    }
    Ok(out)
}

fn criterion_8() -> Outcome {
    let mut runs = Vec::new();
    for &threads in WORKER_COUNTS.iter().chain(WORKER_COUNTS.iter()) {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(err)?;
        runs.push((threads, pool.install(transcript)?));
    }
    let (_, first) = &runs[0];
    for (threads, t) in &runs[1..] {
        check(t == first, || {
            format!("transcript differs with {threads} workers")
        })?;
    }
    Ok(format!(
        "{} runs over worker counts {WORKER_COUNTS:?} byte-identical ({} bytes)",
        runs.len(),
        first.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, criterion_1, LIMIT_1),
        (2, criterion_2, LIMIT_2),
        (3, criterion_3, LIMIT_3),
        (4, criterion_4, LIMIT_4),
        (5, criterion_5, LIMIT_5),
        (6, criterion_6, LIMIT_6),
        (7, criterion_7, LIMIT_7),
        (8, criterion_8, LIMIT_8),
    ];
    let mut failed = 0;
    for (id, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(s) if elapsed <= limit => (true, s),
            Ok(s) => (false, format!("{s}; over time limit")),
            Err(e) => (false, e),
        };
        failed += !ok as usize;
        println!(
            "criterion {id}: {} [{:.2}s / limit {}s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
