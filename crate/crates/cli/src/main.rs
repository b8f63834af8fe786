mod instance;
mod parser;
mod report;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use sigma_kernel_core::curve::{
    check_nonsingular, enumerate_chains, enumerate_points_over, ClosedPoint, NonsingularVerdict,
};
use sigma_kernel_core::diffring::{rational_points, FixedPrime, SigmaIdeal};
use sigma_kernel_core::divisor::{approximate, divisor_degree, principal_divisor, Divisor};
use sigma_kernel_core::extensions::ExtensionTower;
use sigma_kernel_core::ground::SigmaRule;
use sigma_kernel_core::morphism::{
    crt_check, fiber, sigma_free_rank, verify_multiplicity, MultiplicityVerdict,
    SeparationVerdict, SigmaFiniteMorphism,
};
use sigma_kernel_core::multipoly::MPoly;
use sigma_kernel_core::scalar::Scalar;
use sigma_kernel_core::skew::NakayamaVerdict;

use instance::Loaded;
use parser::print_expression;
use report::{nat_value, sigma_degree_value, ReportBuilder};

const USAGE: &str = "usage: sigma-kernel <command> <instance.json> [--depth N] [--effort N] [--window N] [--out report.json]

commands: parse-check closure points limit-degree sigma-degree nonsingular
          divisor approx fiber verify-multiplicity sigma-free-rank crt-check
          nakayama-check";

struct Opts {
    command: String,
    path: String,
    depth: u32,
    effort: u64,
    window: u32,
    out: Option<String>,
}

fn parse_args(args: &[String]) -> Result<Opts> {
    if args.len() < 2 {
        bail!("{}", USAGE);
    }
    let mut opts = Opts {
        command: args[0].clone(),
        path: args[1].clone(),
        depth: 6,
        effort: 24,
        window: 3,
        out: None,
    };
    let mut i = 2;
    while i < args.len() {
        let flag = args[i].as_str();
        let val = args
            .get(i + 1)
            .ok_or_else(|| anyhow!("flag {} needs a value", flag))?;
        match flag {
            "--depth" => opts.depth = val.parse().context("--depth")?,
            "--effort" => opts.effort = val.parse().context("--effort")?,
            "--window" => opts.window = val.parse().context("--window")?,
            "--out" => opts.out = Some(val.clone()),
            other => bail!("unknown flag {}\n{}", other, USAGE),
        }
        i += 2;
    }
    Ok(opts)
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {:#}", e);
            std::process::exit(1);
        }
    }
}

fn run(args: &[String]) -> Result<()> {
    let opts = parse_args(args)?;
    let loaded = instance::build(instance::load(&opts.path)?)?;
    let mut rb = ReportBuilder::new(&opts.command, opts.depth, opts.effort, opts.window);
    let result = match opts.command.as_str() {
        "parse-check" => cmd_parse_check(&loaded)?,
        "closure" => cmd_closure(&loaded, &opts)?,
        "points" => cmd_points(&loaded)?,
        "limit-degree" => cmd_limit_degree(&loaded, &opts, &mut rb)?,
        "sigma-degree" => cmd_sigma_degree(&loaded, &opts, &mut rb)?,
        "nonsingular" => cmd_nonsingular(&loaded, &opts, &mut rb)?,
        "divisor" => cmd_divisor(&loaded, &opts, &mut rb)?,
        "approx" => cmd_approx(&loaded, &opts, &mut rb)?,
        "fiber" => cmd_fiber(&loaded, &opts, &mut rb)?,
        "verify-multiplicity" => cmd_verify_multiplicity(&loaded, &opts, &mut rb)?,
        "sigma-free-rank" => cmd_sigma_free_rank(&loaded, &opts)?,
        "crt-check" => cmd_crt_check(&loaded, &opts)?,
        "nakayama-check" => cmd_nakayama(&loaded)?,
        other => bail!("unknown command '{}'\n{}", other, USAGE),
    };
    let text = rb.finish(result);
    match &opts.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path))?,
        None => print!("{}", text),
    }
    Ok(())
}

fn query(l: &Loaded) -> Result<&instance::QuerySection> {
    l.instance
        .query
        .as_ref()
        .ok_or_else(|| anyhow!("instance has no query section"))
}

fn query_point(l: &Loaded) -> Result<Vec<MPoly>> {
    let q = query(l)?;
    let point = q
        .point
        .as_ref()
        .ok_or_else(|| anyhow!("query has no point"))?;
    instance::parse_all(point, &l.ring)
}

fn universe_points(
    l: &Loaded,
    depth: u32,
    effort: u64,
) -> Result<Vec<ClosedPoint>> {
    let c = instance::curve(l)?;
    let q = query(l)?;
    let universe = q
        .universe
        .as_ref()
        .ok_or_else(|| anyhow!("query has no universe"))?;
    let mut out = Vec::new();
    for prime in universe {
        let p = instance::parse_all(prime, &l.ring)?;
        out.extend(enumerate_points_over(&c, &p, depth, effort)?);
    }
    Ok(out)
}

fn fixedness_str(f: &FixedPrime) -> &'static str {
    match f {
        FixedPrime::Fixed => "fixed",
        FixedPrime::NotFixed => "not-fixed",
        FixedPrime::UndecidedAtBound => "undecided-at-bound",
    }
}

fn point_value(p: &ClosedPoint) -> Value {
    json!({
        "point": p.key(),
        "residue_dl": p.residue_dl(),
        "level_degrees": p.level_degrees,
        "fixedness": fixedness_str(&p.fixedness),
    })
}

fn divisor_value(d: &Divisor) -> Value {
    let entries: Vec<Value> = d
        .entries
        .values()
        .map(|(p, n)| {
            json!({
                "point": p.key(),
                "coeff": n,
                "residue_dl": p.residue_dl(),
            })
        })
        .collect();
    json!({ "entries": entries, "degree": divisor_degree(d) })
}

fn cmd_parse_check(l: &Loaded) -> Result<Value> {
    let mut sources: Vec<String> = Vec::new();
    let inst = &l.instance;
    sources.extend(inst.ring.relations.iter().cloned());
    if let Some(s) = &inst.sigma_set {
        sources.extend(s.ideal.iter().cloned());
        sources.extend(s.primes.iter().flatten().cloned());
    }
    if let Some(t) = &inst.tower {
        sources.extend(t.relations.iter().cloned());
    }
    if let Some(m) = &inst.morphism {
        sources.push(m.minpoly.clone());
        sources.extend(m.base_relation.iter().cloned());
        sources.extend(m.level0_sigma.iter().flatten().cloned());
        sources.extend(m.lifts.iter().flatten().flatten().cloned());
    }
    if let Some(q) = &inst.query {
        sources.extend(q.point.iter().flatten().cloned());
        sources.extend(q.num.iter().cloned());
        sources.extend(q.den.iter().cloned());
        sources.extend(q.universe.iter().flatten().flatten().cloned());
        for p in q.prescriptions.iter().flatten() {
            sources.extend(p.point.iter().cloned());
        }
    }
    let mut entries = Vec::new();
    for src in &sources {
        let p = instance::parse_one(src, &l.ring)?;
        let canonical = print_expression(&p);
        let again = instance::parse_one(&canonical, &l.ring)?;
        if !again.sub(&p).is_zero() {
            bail!("round-trip failed for '{}' -> '{}'", src, canonical);
        }
        entries.push(json!({ "input": src, "canonical": canonical }));
    }
    Ok(json!({ "count": entries.len(), "expressions": entries }))
}

fn cmd_closure(l: &Loaded, opts: &Opts) -> Result<Value> {
    let s = l
        .instance
        .sigma_set
        .as_ref()
        .ok_or_else(|| anyhow!("instance has no sigma_set section"))?;
    let mut gens = l.relations.clone();
    gens.extend(instance::parse_all(&s.ideal, &l.ring)?);
    let ideal = SigmaIdeal::new(l.ring.clone(), gens);
    let printed = |gens: &[MPoly]| -> Vec<String> {
        let mut v: Vec<String> = gens.iter().map(print_expression).collect();
        v.sort();
        v
    };
    let sigma = ideal.sigma_close(opts.depth);
    let mixed = ideal.well_mixed_close(opts.depth, opts.effort);
    let perfect = ideal.perfect_close(opts.depth, opts.effort);
    Ok(json!({
        "sigma_closure": { "count": sigma.gens.len(), "gens": printed(&sigma.gens) },
        "well_mixed_closure": { "count": mixed.gens.len(), "gens": printed(&mixed.gens) },
        "perfect_closure": { "count": perfect.gens.len(), "gens": printed(&perfect.gens) },
    }))
}

fn cmd_points(l: &Loaded) -> Result<Value> {
    let gf = l
        .gf
        .as_ref()
        .ok_or_else(|| anyhow!("points needs a finite ground field"))?;
    let e = match &l.ring.ground.sigma {
        SigmaRule::Frobenius { e } => *e,
        SigmaRule::Identity => 0,
        _ => bail!("points needs a Frobenius or identity sigma"),
    };
    let ideal = SigmaIdeal::new(l.ring.clone(), l.relations.clone());
    let pts = rational_points(&ideal, gf, e);
    let rendered: Vec<Value> = pts
        .iter()
        .map(|p| Value::Array(p.iter().map(|c| json!(c)).collect()))
        .collect();
    Ok(json!({ "count": pts.len(), "points": rendered }))
}

fn tower(l: &Loaded) -> Result<ExtensionTower> {
    let t = l
        .instance
        .tower
        .as_ref()
        .ok_or_else(|| anyhow!("instance has no tower section"))?;
    let mut rels = l.relations.clone();
    rels.extend(instance::parse_all(&t.relations, &l.ring)?);
    Ok(ExtensionTower::new(l.ring.clone(), rels))
}

fn cmd_limit_degree(l: &Loaded, opts: &Opts, rb: &mut ReportBuilder) -> Result<Value> {
    let t = tower(l)?;
    let (dl, seq) = t.limit_degree(opts.depth, opts.window)?;
    rb.warn_all(seq.warnings.iter().map(|w| format!("unverified irreducibility at {}", w.var)));
    let d: Vec<Value> = seq.d.iter().map(|n| nat_value(*n)).collect();
    Ok(json!({
        "dl": nat_value(dl),
        "degree_sequence": d,
        "stabilization_window": seq.stabilization.map(|(a, b)| json!([a + 1, b + 1])),
    }))
}

fn cmd_sigma_degree(l: &Loaded, opts: &Opts, rb: &mut ReportBuilder) -> Result<Value> {
    let t = tower(l)?;
    let r = t.sigma_degree(opts.depth, opts.window)?;
    rb.warn_all(r.warnings.iter().map(|w| format!("unverified irreducibility at {}", w.var)));
    Ok(json!({
        "dl": nat_value(r.dl),
        "trdeg": r.trdeg,
        "sigma_trdeg": r.sigma_trdeg,
        "dd": sigma_degree_value(&r.dd),
        "dt": r.dt,
        "separable": format!("{:?}", r.separable),
        "effective_dd": r.effective_dd.as_ref().map(sigma_degree_value),
    }))
}

fn cmd_nonsingular(l: &Loaded, opts: &Opts, rb: &mut ReportBuilder) -> Result<Value> {
    let c = instance::curve(l)?;
    let p0 = query_point(l)?;
    let chains = enumerate_chains(&c, &p0, opts.depth, opts.effort)?;
    let mut entries = Vec::new();
    for ch in &chains {
        rb.warn_all(ch.warnings.iter().cloned());
        let verdict = match check_nonsingular(&c, ch, opts.depth)? {
            NonsingularVerdict::DVRCertificate(v) => json!({
                "kind": "dvr",
                "e_steps": v.e_steps,
                "uniformizer": print_expression(&v.uniformizer),
            }),
            NonsingularVerdict::Singular { witness, e_step } => json!({
                "kind": "singular",
                "witness": witness,
                "e_step": e_step,
            }),
            NonsingularVerdict::Undetermined { reason } => json!({
                "kind": "undetermined",
                "reason": reason,
            }),
        };
        entries.push(json!({
            "point": point_value(ch),
            "verdict": verdict,
        }));
    }
    Ok(json!({ "points": entries }))
}

fn cmd_divisor(l: &Loaded, opts: &Opts, rb: &mut ReportBuilder) -> Result<Value> {
    let c = instance::curve(l)?;
    let q = query(l)?;
    let num = instance::parse_one(
        q.num.as_ref().ok_or_else(|| anyhow!("query has no num"))?,
        &l.ring,
    )?;
    let den = match &q.den {
        Some(d) => instance::parse_one(d, &l.ring)?,
        None => MPoly::one(&l.ring.ground.kind),
    };
    let universe = universe_points(l, opts.depth, opts.effort)?;
    for p in &universe {
        rb.warn_all(p.warnings.iter().cloned());
    }
    let d = principal_divisor(&c, &num, &den, &universe)?;
    Ok(json!({
        "num": print_expression(&num),
        "den": print_expression(&den),
        "divisor": divisor_value(&d),
    }))
}

fn cmd_approx(l: &Loaded, opts: &Opts, rb: &mut ReportBuilder) -> Result<Value> {
    let c = instance::curve(l)?;
    let q = query(l)?;
    let universe = universe_points(l, opts.depth, opts.effort)?;
    let specs = q
        .prescriptions
        .as_ref()
        .ok_or_else(|| anyhow!("query has no prescriptions"))?;
    let mut prescriptions: Vec<(ClosedPoint, i64)> = Vec::new();
    for spec in specs {
        let p0 = instance::parse_all(&spec.point, &l.ring)?;
        let pts = enumerate_points_over(&c, &p0, opts.depth, opts.effort)?;
        let pt = pts
            .get(spec.chain)
            .ok_or_else(|| anyhow!("no chain {} over the prescribed point", spec.chain))?;
        prescriptions.push((pt.clone(), spec.exponent));
    }
    let (num, den) = approximate(&c, &prescriptions, &universe, opts.effort as usize)?;
    let mut achieved = Vec::new();
    for p in &universe {
        rb.warn_all(p.warnings.iter().cloned());
        let v = sigma_kernel_core::curve::valuation(&c, p, &num, &den)?;
        achieved.push(json!({ "point": p.key(), "valuation": v }));
    }
    Ok(json!({
        "num": print_expression(&num),
        "den": print_expression(&den),
        "valuations": achieved,
    }))
}

fn morphism(l: &Loaded) -> Result<SigmaFiniteMorphism> {
    let c = instance::curve(l)?;
    Ok(match instance::lifts(l)? {
        Some(lifts) => SigmaFiniteMorphism::with_lifts(c, lifts),
        None => SigmaFiniteMorphism::new(c),
    })
}

fn cmd_fiber(l: &Loaded, opts: &Opts, rb: &mut ReportBuilder) -> Result<Value> {
    let m = morphism(l)?;
    let p0 = query_point(l)?;
    let fb = fiber(&m, &p0, opts.depth, opts.effort)?;
    rb.warn_all(fb.warnings.iter().cloned());
    let points: Vec<Value> = fb
        .points
        .iter()
        .map(|p| {
            json!({
                "point": point_value(&p.point),
                "e": p.e,
                "residue_dl": p.residue_dl,
                "stabilizer": p.stabilizer,
            })
        })
        .collect();
    Ok(json!({ "base": fb.base, "empty": fb.empty, "points": points }))
}

fn cmd_verify_multiplicity(l: &Loaded, opts: &Opts, rb: &mut ReportBuilder) -> Result<Value> {
    let m = morphism(l)?;
    let p0 = query_point(l)?;
    let r = verify_multiplicity(&m, &p0, opts.depth, opts.window, opts.effort)?;
    rb.warn_all(r.warnings.iter().cloned());
    let verdict = match r.verdict {
        MultiplicityVerdict::Match => "Match",
        MultiplicityVerdict::Mismatch => "Mismatch",
        MultiplicityVerdict::EmptyFiber => "EmptyFiber",
        MultiplicityVerdict::Undetermined => "Undetermined",
    };
    let breakdown: Vec<Value> = r
        .breakdown
        .iter()
        .map(|(key, e, dl, stab)| {
            json!({ "point": key, "e": e, "residue_dl": dl, "stabilizer": stab })
        })
        .collect();
    Ok(json!({
        "lhs": r.lhs,
        "rhs": r.rhs,
        "verdict": verdict,
        "breakdown": breakdown,
        "outside_hypotheses": r.outside_hypotheses,
    }))
}

fn cmd_sigma_free_rank(l: &Loaded, opts: &Opts) -> Result<Value> {
    let m = morphism(l)?;
    let ranks = sigma_free_rank(&m, opts.depth, opts.window)?;
    Ok(json!({ "ranks": ranks }))
}

fn cmd_crt_check(l: &Loaded, opts: &Opts) -> Result<Value> {
    let s = l
        .instance
        .sigma_set
        .as_ref()
        .ok_or_else(|| anyhow!("instance has no sigma_set section"))?;
    if s.primes.is_empty() {
        bail!("sigma_set has no primes");
    }
    let mut primes = Vec::new();
    for p in &s.primes {
        primes.push(instance::parse_all(p, &l.ring)?);
    }
    let r = crt_check(&l.ring, &l.relations, &primes, opts.depth, opts.effort)?;
    let separation: Vec<Value> = r
        .separation
        .iter()
        .map(|((i, j), v)| {
            let v = match v {
                SeparationVerdict::Separated => "separated",
                SeparationVerdict::NotSeparated => "not-separated",
                SeparationVerdict::Undecided => "undecided",
            };
            json!({ "pair": [i, j], "verdict": v })
        })
        .collect();
    Ok(json!({
        "separation": separation,
        "kernel_ok": r.kernel_ok,
        "surjective_ok": r.surjective_ok,
        "checked_depth": r.depth,
    }))
}

fn cmd_nakayama(l: &Loaded) -> Result<Value> {
    let m = instance::module(l)?;
    let kind = &l.ring.ground.kind;
    let samples = [
        Scalar::from_i64(kind, 2),
        Scalar::from_i64(kind, 3),
        Scalar::from_i64(kind, -1),
    ];
    m.verify_semilinearity(&samples)
        .map_err(|e| anyhow!("{}", e))?;
    match m.nakayama_check() {
        NakayamaVerdict::Verified => Ok(json!({ "verdict": "Verified" })),
        NakayamaVerdict::Counterexample { witness } => {
            let w: Vec<String> = witness.iter().map(|s| format!("{}", s)).collect();
            Ok(json!({ "verdict": "Counterexample", "witness": w }))
        }
    }
}
