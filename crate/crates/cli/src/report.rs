//! Command dispatch and report rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use hodgeci_core::exactalg::rational_num_den;
use hodgeci_core::fermat::{fermat_context_with, fermat_poly, fermat_ring, fermat_verdict};
use hodgeci_core::hodge::{colon_equality, tangent, tangent_meet, TangentReport};
use hodgeci_core::periods::{
    cycle_class, intersection_prepared, period_prepared, validate_cycle, ContextOptions,
    HypersurfaceContext, PeriodValue, PreparedCycle,
};
use hodgeci_core::{CycloScalar, Error, GradedIdeal, Poly, PolyRing, Rational};
use serde_json::{json, Value};

use crate::problem::{self, Problem, ProblemError, Query};
use crate::{Command, Format, Global};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum Failure {
    Problem(ProblemError),
    Engine(Error),
    /// An engine error raised while handling the named cycle.
    Cycle(String, Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn rat(r: &Rational) -> Value {
    Value::String(rational_num_den(r))
}

fn scalar(c: &CycloScalar) -> Value {
    Value::Array(c.coords().iter().map(rat).collect())
}

fn period_json(v: &PeriodValue) -> Value {
    json!({
        "tpi_power": v.tpi_power,
        "inv_factorial": v.inv_factorial,
        "factorial_power": v.factorial_power,
        "algebraic_coords": scalar(&v.algebraic),
        "text": v.to_string(),
    })
}

fn tangent_json(t: &TangentReport) -> Value {
    json!({
        "ambient_dim": t.ambient_dim,
        "tangent_dim": t.tangent_dim,
        "codim": t.codim,
        "basis": t.basis.as_ref().map(|b| b.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
    })
}

/// Accumulates one result per query in both output formats.
struct Report {
    command: &'static str,
    text: String,
    results: Vec<Value>,
}

impl Report {
    fn new(command: &'static str) -> Report {
        Report {
            command,
            text: String::new(),
            results: Vec::new(),
        }
    }

    fn push(&mut self, text: String, value: Value) {
        self.text.push_str(&text);
        self.results.push(value);
    }

    fn finish(self, format: Format) -> String {
        match format {
            Format::Text => self.text,
            Format::Json => {
                let v = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "results": self.results,
                });
                let mut s = serde_json::to_string_pretty(&v).expect("json");
                s.push('\n');
                s
            }
        }
    }
}

fn load_problem(path: &Path) -> Res<Problem> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file = problem::parse_problem(&bytes).map_err(Failure::Problem)?;
    Ok(problem::load(file)?)
}

fn options(g: &Global) -> ContextOptions {
    ContextOptions {
        max_dim: g.max_dim,
        ..ContextOptions::default()
    }
}

fn surface(p: &Problem) -> Poly {
    p.f.clone()
        .unwrap_or_else(|| fermat_poly(&p.ring, p.file.header.d))
}

fn context(p: &Problem, g: &Global) -> Res<HypersurfaceContext> {
    let h = &p.file.header;
    Ok(HypersurfaceContext::with_options(
        h.n,
        h.d,
        surface(p),
        options(g),
    )?)
}

/// Validated cycles, prepared once per name.
struct Cycles<'a> {
    problem: &'a Problem,
    ctx: &'a HypersurfaceContext,
    ci_check: bool,
    cache: BTreeMap<String, PreparedCycle>,
}

impl<'a> Cycles<'a> {
    fn new(problem: &'a Problem, ctx: &'a HypersurfaceContext, g: &Global) -> Cycles<'a> {
        Cycles {
            problem,
            ctx,
            ci_check: g.ci_check,
            cache: BTreeMap::new(),
        }
    }

    fn get(&mut self, name: &str) -> Res<&PreparedCycle> {
        if !self.cache.contains_key(name) {
            let cycle = self
                .problem
                .cycle(name)
                .ok_or_else(|| Failure::Usage(format!("unknown cycle `{name}`")))?;
            if self.ci_check {
                validate_cycle(self.ctx, cycle, true).map_err(|e| with_cycle(name, e))?;
            }
            let prepared = PreparedCycle::new(self.ctx, cycle).map_err(|e| with_cycle(name, e))?;
            self.cache.insert(name.to_string(), prepared);
        }
        Ok(&self.cache[name])
    }
}

fn with_cycle(name: &str, e: Error) -> Failure {
    Failure::Cycle(name.to_string(), e)
}

fn names_or_all(p: &Problem, names: &[String]) -> Vec<String> {
    if names.is_empty() {
        p.cycles.iter().map(|(n, _)| n.clone()).collect()
    } else {
        names.to_vec()
    }
}

fn validate(p: &Problem, g: &Global, names: &[String]) -> Res<String> {
    let ctx = context(p, g)?;
    let mut rep = Report::new("validate");
    for name in names_or_all(p, names) {
        let cycle = p
            .cycle(&name)
            .ok_or_else(|| Failure::Usage(format!("unknown cycle `{name}`")))?;
        let v = validate_cycle(&ctx, cycle, g.ci_check).map_err(|e| with_cycle(&name, e))?;
        let degs: Vec<String> = v.summand_degrees.iter().map(|d| d.to_string()).collect();
        rep.push(
            format!(
                "cycle {name}: valid, deg = {}, summand degrees = [{}], ci_checked = {}\n",
                v.degree,
                degs.join(", "),
                v.ci_checked
            ),
            json!({
                "cycle": name,
                "degree": v.degree.to_string(),
                "summand_degrees": degs,
                "ci_checked": v.ci_checked,
            }),
        );
    }
    Ok(rep.finish(g.format))
}

fn class(p: &Problem, g: &Global, names: &[String]) -> Res<String> {
    let ctx = context(p, g)?;
    let mut cycles = Cycles::new(p, &ctx, g);
    let mut rep = Report::new("class");
    for name in names_or_all(p, names) {
        cycles.get(&name)?;
        let c = cycle_class(&ctx, p.cycle(&name).unwrap())?;
        rep.push(
            format!(
                "cycle {name}:\n  deg = {}\n  theta_coeff = {}\n  primitive_scale = {}\n  P = {}\n  P mod J = {}\n  theta_multiple = {}\n",
                c.degree,
                c.theta_coeff,
                c.primitive_scale,
                c.primitive_poly,
                c.primitive_normal_form,
                c.is_theta_multiple
            ),
            json!({
                "cycle": name,
                "degree": c.degree.to_string(),
                "theta_coeff": rat(&c.theta_coeff),
                "primitive_scale": rat(&c.primitive_scale),
                "primitive_poly": c.primitive_poly.to_string(),
                "primitive_normal_form": c.primitive_normal_form.to_string(),
                "is_theta_multiple": c.is_theta_multiple,
            }),
        );
    }
    Ok(rep.finish(g.format))
}

fn period(p: &Problem, g: &Global, cycle: &Option<String>, poly: &Option<String>) -> Res<String> {
    let queries: Vec<(String, String)> = match (cycle, poly) {
        (Some(c), Some(q)) => vec![(c.clone(), q.clone())],
        (None, None) => p
            .file
            .queries
            .iter()
            .filter_map(|q| match q {
                Query::Period(c, q) => Some((c.clone(), q.clone())),
                _ => None,
            })
            .collect(),
        _ => return Err(Failure::Usage("give both a cycle and a polynomial".into())),
    };
    if queries.is_empty() {
        return Err(Failure::Usage("no period queries".into()));
    }
    let ctx = context(p, g)?;
    let mut cycles = Cycles::new(p, &ctx, g);
    let mut rep = Report::new("period");
    for (name, text) in queries {
        let poly = p.ring.parse(&text)?;
        let v = period_prepared(&ctx, cycles.get(&name)?, &poly)?;
        rep.push(
            format!("cycle = {name}\nP = {poly}\nperiod = {v}\n"),
            json!({"cycle": name, "polynomial": poly.to_string(), "period": period_json(&v)}),
        );
    }
    Ok(rep.finish(g.format))
}

fn intersect(p: &Problem, g: &Global, names: &[String]) -> Res<String> {
    let pairs: Vec<(String, String)> = match names {
        [a, b] => vec![(a.clone(), b.clone())],
        [] => {
            let from_file: Vec<_> = p
                .file
                .queries
                .iter()
                .filter_map(|q| match q {
                    Query::Intersect(a, b) => Some((a.clone(), b.clone())),
                    _ => None,
                })
                .collect();
            if from_file.is_empty() {
                let all = names_or_all(p, &[]);
                let mut v = Vec::new();
                for i in 0..all.len() {
                    for j in i..all.len() {
                        v.push((all[i].clone(), all[j].clone()));
                    }
                }
                v
            } else {
                from_file
            }
        }
        _ => return Err(Failure::Usage("intersect takes two cycle names".into())),
    };
    let ctx = context(p, g)?;
    let mut cycles = Cycles::new(p, &ctx, g);
    let mut rep = Report::new("intersect");
    for (a, b) in pairs {
        cycles.get(&a)?;
        cycles.get(&b)?;
        let r = intersection_prepared(&ctx, &cycles.cache[&a], &cycles.cache[&b])?;
        rep.push(
            format!(
                "{a}.{b} = {}\n  c = {}\n  c*(d-1)^(n+2) = {}\n  deg {a} = {}\n  deg {b} = {}\n  c*(d-1)^(n+2) = deg*deg mod d: {}\n",
                r.value, r.c, r.c_scaled, r.deg_delta, r.deg_mu, r.congruence_holds
            ),
            json!({
                "a": a,
                "b": b,
                "value": r.value.to_string(),
                "c": rat(&r.c),
                "c_scaled": r.c_scaled.to_string(),
                "deg_a": r.deg_delta.to_string(),
                "deg_b": r.deg_mu.to_string(),
                "congruence_holds": r.congruence_holds,
            }),
        );
    }
    Ok(rep.finish(g.format))
}

fn tangent_text(label: &str, t: &TangentReport) -> String {
    let mut s = format!(
        "tangent {label}: ambient = {}, dim = {}, codim = {}\n",
        t.ambient_dim, t.tangent_dim, t.codim
    );
    for (i, b) in t.basis.iter().flatten().enumerate() {
        let _ = writeln!(s, "  v{} = {b}", i + 1);
    }
    s
}

fn tangent_cmd(p: &Problem, g: &Global, names: &[String]) -> Res<String> {
    let queries: Vec<(String, Option<String>)> = match names {
        [a] => vec![(a.clone(), None)],
        [a, b] => vec![(a.clone(), Some(b.clone()))],
        [] => {
            let from_file: Vec<_> = p
                .file
                .queries
                .iter()
                .filter_map(|q| match q {
                    Query::Tangent(a, b) => Some((a.clone(), b.clone())),
                    _ => None,
                })
                .collect();
            if from_file.is_empty() {
                names_or_all(p, &[])
                    .into_iter()
                    .map(|a| (a, None))
                    .collect()
            } else {
                from_file
            }
        }
        _ => {
            return Err(Failure::Usage(
                "tangent takes one or two cycle names".into(),
            ))
        }
    };
    let ctx = context(p, g)?;
    let mut cycles = Cycles::new(p, &ctx, g);
    let mut rep = Report::new("tangent");
    for (a, b) in queries {
        let pa = cycles.get(&a)?.associated_polynomial().clone();
        let (label, t) = match &b {
            None => (a.clone(), tangent(&ctx, &pa, g.basis)?),
            Some(b) => {
                let pb = cycles.get(b)?.associated_polynomial().clone();
                (
                    format!("{a} meet {b}"),
                    tangent_meet(&ctx, &pa, &pb, g.basis)?,
                )
            }
        };
        let mut v = tangent_json(&t);
        v["cycles"] = json!(std::iter::once(&a).chain(b.as_ref()).collect::<Vec<_>>());
        rep.push(tangent_text(&label, &t), v);
    }
    Ok(rep.finish(g.format))
}

fn resolve_form(
    p: &Problem,
    ctx: Option<&HypersurfaceContext>,
    g: &Global,
    text: &str,
) -> Res<Poly> {
    match (p.cycle(text), ctx) {
        (Some(_), Some(ctx)) => Ok(Cycles::new(p, ctx, g)
            .get(text)?
            .associated_polynomial()
            .clone()),
        (Some(_), None) => Err(Failure::Usage(
            "cycle names need the surface context".into(),
        )),
        (None, _) => Ok(p.ring.parse(text)?),
    }
}

fn colon_eq(
    p: &Problem,
    g: &Global,
    r1: &str,
    r2: &str,
    degree: Option<u32>,
    ideal: &Option<String>,
) -> Res<String> {
    let uses_cycles = p.cycle(r1).is_some() || p.cycle(r2).is_some();
    let ctx = if ideal.is_none() || uses_cycles {
        Some(context(p, g)?)
    } else {
        None
    };
    let i = match ideal {
        Some(text) => {
            let gens = text
                .split(';')
                .map(|t| p.ring.parse(t.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            GradedIdeal::new(&p.ring, gens)?.with_max_dim(g.max_dim)
        }
        None => ctx.as_ref().unwrap().jacobian_ideal().clone(),
    };
    let a = resolve_form(p, ctx.as_ref(), g, r1)?;
    let b = resolve_form(p, ctx.as_ref(), g, r2)?;
    let e = degree.unwrap_or(p.file.header.d);
    let r = colon_equality(&i, &a, &b, e)?;
    let mut rep = Report::new("colon-eq");
    let mut text = format!(
        "holds = {}\ndegree = {e}\nlhs_dim = {}\nrhs_dim = {}\nambient_dim = {}\n",
        r.holds, r.lhs_dim, r.rhs_dim, r.ambient_dim
    );
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "witness = {w}");
    }
    rep.push(
        text,
        json!({
            "holds": r.holds,
            "degree": e,
            "lhs_dim": r.lhs_dim,
            "rhs_dim": r.rhs_dim,
            "ambient_dim": r.ambient_dim,
            "lhs_in_rhs": r.lhs_in_rhs,
            "witness": r.witness.as_ref().map(|w| w.to_string()),
        }),
    );
    Ok(rep.finish(g.format))
}

fn join(v: &[u32]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[allow(clippy::too_many_arguments)]
fn verdict_cmd(
    g: &Global,
    n: u32,
    d: u32,
    m: i64,
    a: i64,
    b: i64,
    alphas: &Option<Vec<u32>>,
) -> Res<String> {
    let ctx = fermat_context_with(n, d, options(g))?;
    let v = fermat_verdict(&ctx, m, alphas.clone(), a, b)?;
    let codim = v.ambient_dim - v.dim_meet;
    let mut text = format!(
        "equal={} expected={} consistent={} codim={codim}\n",
        v.equal, v.expected_equal, v.consistent
    );
    let _ = write!(
        text,
        "dim_meet = {}\ndim_delta_tangent = {}\nambient_dim = {}\ncodim_formula = {} (matches: {})\nalphas_a = {}\nalphas_b = {}\n",
        v.dim_meet,
        v.dim_delta_tangent,
        v.ambient_dim,
        v.codim_formula_value,
        v.codim_matches,
        join(&v.alphas_a),
        join(&v.alphas_b)
    );
    if let Some(w) = &v.witness {
        let _ = writeln!(text, "witness = {w}");
    }
    let mut rep = Report::new("fermat-verdict");
    rep.push(
        text,
        json!({
            "n": n, "d": d, "m": m, "a": a, "b": b,
            "alphas_a": v.alphas_a,
            "alphas_b": v.alphas_b,
            "ambient_dim": v.ambient_dim,
            "dim_meet": v.dim_meet,
            "dim_delta_tangent": v.dim_delta_tangent,
            "meet_in_delta": v.meet_in_delta,
            "codim": codim,
            "codim_formula": v.codim_formula_value.to_string(),
            "codim_matches": v.codim_matches,
            "equal": v.equal,
            "expected_equal": v.expected_equal,
            "consistent": v.consistent,
            "witness": v.witness.as_ref().map(|w| w.to_string()),
        }),
    );
    Ok(rep.finish(g.format))
}

fn hilbert(
    g: &Global,
    file: &Option<std::path::PathBuf>,
    n: Option<u32>,
    d: Option<u32>,
) -> Res<String> {
    let (ring, f, n, d): (PolyRing, Poly, u32, u32) = match (file, n, d) {
        (Some(path), None, None) => {
            let p = load_problem(path)?;
            let (n, d) = (p.file.header.n, p.file.header.d);
            (p.ring.clone(), surface(&p), n, d)
        }
        (None, Some(n), Some(d)) => {
            let ring = fermat_ring(n, d)?;
            let f = fermat_poly(&ring, d);
            (ring, f, n, d)
        }
        _ => {
            return Err(Failure::Usage(
                "give either a problem file or both --n and --d".into(),
            ))
        }
    };
    let partials = (0..ring.num_vars())
        .map(|i| f.partial(i))
        .collect::<Result<Vec<_>, _>>()?;
    let ideal = GradedIdeal::new(&ring, partials)?.with_max_dim(g.max_dim);
    let top = d.saturating_sub(2) * (n + 2) + 1;
    let dims = ideal.hilbert_function(top)?.dims;
    let line = dims
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut rep = Report::new("hilbert");
    rep.push(format!("{line}\n"), json!({"n": n, "d": d, "dims": dims}));
    Ok(rep.finish(g.format))
}

pub fn run(command: &Command, g: &Global) -> Res<String> {
    match command {
        Command::Validate { file, cycles } => validate(&load_problem(file)?, g, cycles),
        Command::Class { file, cycles } => class(&load_problem(file)?, g, cycles),
        Command::Period { file, cycle, poly } => period(&load_problem(file)?, g, cycle, poly),
        Command::Intersect { file, cycles } => intersect(&load_problem(file)?, g, cycles),
        Command::Tangent { file, cycles } => tangent_cmd(&load_problem(file)?, g, cycles),
        Command::ColonEq {
            file,
            r1,
            r2,
            degree,
            ideal,
        } => colon_eq(&load_problem(file)?, g, r1, r2, *degree, ideal),
        Command::FermatVerdict {
            n,
            d,
            m,
            a,
            b,
            alphas,
        } => verdict_cmd(g, *n, *d, *m, *a, *b, alphas),
        Command::Hilbert { file, n, d } => hilbert(g, file, *n, *d),
    }
}
