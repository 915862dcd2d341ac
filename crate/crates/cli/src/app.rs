//! Argument parsing and command dispatch.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use mconvex::atlas::minimizer_atlas;
use mconvex::function::{
    check_m_convex_fn, check_mnat_fn, convolution, elongation_fn, fn_quotient_levels, flag_constants, minimizer,
    quotient_a, quotient_b, quotient_c, quotient_d, sparse_paving_quotient, truncation_fn, MFunc, MNatFunc,
};
use mconvex::lattice::{LatticePoint, Rat, SubsetMask};
use mconvex::lift::{
    box_lift_capped, compatible_lifts_capped, k_polymatroid_lift_capped, project_phi_set, LiftCertificate,
    Surjection,
};
use mconvex::linking::{induce, induce_mnat, product};
use mconvex::quotient::{check_exchange, quotient_suite_methods, QuotientReport, Verdict, ALL_METHODS};
use mconvex::set::{
    check_m_convex, check_mnat_convex, check_submodular, greedy_vertex, set_to_submodular, submodular_to_set,
    vertex_set, MConvexSet, MNatSet, SubmodularFn,
};
use mconvex::{flags, generator, ops};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::json::*;
use crate::{caps, registry, selftest};

type Res<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "mcq", version, about = "Quotients of M-convex sets and M-convex functions")]
pub struct Cli {
    /// Add vertex coordinates and layer structure to set and flag output.
    #[arg(long, global = true)]
    pub emit_coords: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Certify an instance.
    Check {
        kind: CheckKind,
        #[arg(long = "in")]
        input: String,
    },
    /// Set to submodular table or table to set.
    Convert {
        #[arg(long = "in")]
        input: String,
    },
    /// Greedy vertices, for every order or one order.
    Vertices {
        #[arg(long = "in")]
        input: String,
        /// Comma-separated coordinates, highest priority first.
        #[arg(long)]
        order: Option<String>,
    },
    /// Structural operations on sets.
    Ops {
        #[command(subcommand)]
        op: OpCmd,
    },
    /// Run the quotient deciders on two sets or tables.
    Quotient {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        /// `all` or a comma-separated list of decider ids 1..10.
        #[arg(long, default_value = "all")]
        methods: String,
        #[arg(long)]
        caps: Option<String>,
        /// Include constructed witnesses in the report.
        #[arg(long)]
        witnesses: bool,
    },
    /// Induce a set through a linking set.
    Induce {
        #[arg(long)]
        w: String,
        #[arg(long)]
        gamma: String,
    },
    /// Product of two linking sets.
    LinkProduct {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Lift {
        #[command(subcommand)]
        kind: LiftCmd,
    },
    Flag {
        action: FlagAction,
        #[arg(long = "in")]
        input: String,
    },
    Fn {
        #[command(subcommand)]
        cmd: FnCmd,
    },
    /// Seeded random instances.
    Gen {
        kind: GenKind,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        scale: i64,
        /// Curvature of generated functions.
        #[arg(long, default_value_t = 1)]
        curvature: i64,
        /// Rank of sparse paving functions.
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// List the shipped fixtures or print one.
    Fixtures { name: Option<String> },
    /// Cross-check the deciders on seeded instances.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = selftest::DEFAULT_COUNT)]
        count: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CheckKind {
    MConvex,
    Mnat,
    Submodular,
    MFunc,
    MnatFunc,
}

#[derive(Subcommand, Debug)]
pub enum OpCmd {
    Restrict {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        mask: SubsetMask,
    },
    Project {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        mask: SubsetMask,
    },
    Sum {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        other: String,
    },
    Translate {
        #[arg(long = "in")]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    Truncate {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    Elongate {
        #[arg(long = "in")]
        input: String,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    Box {
        #[arg(long = "in")]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
    },
    Plank {
        #[arg(long = "in")]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: i64,
        #[arg(long, allow_hyphen_values = true)]
        beta: i64,
    },
    Minor {
        #[arg(long = "in")]
        input: String,
        /// Bitmask of the removed elements.
        #[arg(long)]
        mask: SubsetMask,
        #[arg(long, value_enum, default_value_t = MinorKind::Basic)]
        kind: MinorKind,
        /// Rank of the basic minor.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorKind {
    Deletion,
    Contraction,
    Basic,
}

#[derive(Subcommand, Debug)]
pub enum LiftCmd {
    Matroid {
        #[arg(long = "in")]
        input: String,
    },
    Kpoly {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        k: i64,
    },
    /// Lift through an explicit certificate.
    Box {
        #[arg(long = "in")]
        input: String,
        /// Fiber sizes, one per coordinate.
        #[arg(long)]
        fibers: String,
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
    },
    Compatible {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FlagAction {
    Check,
    Complete,
    MnatComplete,
    Constants,
}

#[derive(Subcommand, Debug)]
pub enum FnCmd {
    Minimizer {
        #[arg(long)]
        f: String,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    Atlas {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Convolve {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Quotient {
        level: Level,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Truncate {
        #[arg(long)]
        f: String,
    },
    Elongate {
        #[arg(long)]
        f: String,
    },
    SparsePaving {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Level {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
    /// All four levels.
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GenKind {
    Submodular,
    MConvex,
    Mnat,
    QuotientPair,
    NonQuotientPair,
    MFunc,
    SparsePaving,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `mcq` on an argument vector, including the program name.
pub fn run<I, T>(args: I, env_caps: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let err = CliError::usage(e.to_string().trim_end().to_string());
            return Outcome { code: 2, stdout: String::new(), stderr: render(&err.to_json()) };
        }
    };
    match dispatch(&cli, env_caps) {
        Ok((code, v)) => Outcome { code, stdout: render(&doc(v)), stderr: String::new() },
        Err(err) => Outcome { code: 2, stdout: String::new(), stderr: render(&err.to_json()) },
    }
}

fn verdict_code(b: bool) -> i32 {
    if b {
        0
    } else {
        1
    }
}

fn ok(v: Value) -> Res<(i32, Value)> {
    Ok((0, v))
}

pub fn load(src: &str) -> Res<Value> {
    if let Some(name) = src.strip_prefix("fixture:") {
        return registry::fixture(name).ok_or_else(|| CliError::usage(format!("unknown fixture {name:?}")));
    }
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::io(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(src).map_err(|e| CliError::io(format!("{src}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

pub fn parse_ints(s: &str) -> Res<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::usage(format!("{t:?} is not an integer"))))
        .collect()
}

fn parse_rats(s: &str) -> Res<Vec<Rat>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(parse_rat).collect()
}

/// A certified M-convex set from a point list or a submodular table.
pub fn load_set(src: &str) -> Res<MConvexSet> {
    set_from_value(&load(src)?)
}

pub fn set_from_value(v: &Value) -> Res<MConvexSet> {
    if v.get("table").is_some() {
        let (g, t) = raw_table(v)?;
        return Ok(submodular_to_set(&SubmodularFn::new(g, t)?)?);
    }
    let (g, p) = raw_points(v)?;
    Ok(MConvexSet::new(g, p)?)
}

fn load_mnat(src: &str) -> Res<MNatSet> {
    let (g, p) = raw_points(&load(src)?)?;
    Ok(MNatSet::new(g, p)?)
}

pub fn load_fn(src: &str) -> Res<MFunc> {
    let (g, p) = raw_values(&load(src)?)?;
    Ok(MFunc::new(g, p)?)
}

fn set_out(s: &MConvexSet, emit: bool) -> Res<Value> {
    with_coords(set_to_json(s), s.ground(), s.points(), emit)
}

fn mnat_out(s: &MNatSet, emit: bool) -> Res<Value> {
    with_coords(mnat_to_json(s), s.ground(), s.points(), emit)
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::True => json!(true),
        Verdict::False => json!(false),
        Verdict::Skipped(r) => json!({ "skipped": r }),
    }
}

pub fn report_json(r: &QuotientReport, witnesses: bool) -> Res<Value> {
    let verdicts: serde_json::Map<String, Value> =
        r.verdicts.iter().map(|(k, v)| (k.to_string(), verdict_json(v))).collect();
    let consensus = r.consensus()?;
    let mut out = json!({ "verdicts": verdicts, "consensus": consensus });
    if witnesses {
        let w = &r.witnesses;
        let mut m = serde_json::Map::new();
        if let Some(g) = &w.gpoly {
            m.insert("gpoly".into(), mnat_to_json(g));
        }
        if let Some(t) = &w.lifted {
            m.insert("lifted".into(), table_to_json(t));
        }
        if let Some((g, sel)) = &w.induction {
            m.insert("induction".into(), json!({ "linking": linking_to_json(g), "selector": sel }));
        }
        if let Some(gw) = &w.green {
            m.insert(
                "green".into(),
                json!({
                    "gamma": linking_to_json(&gw.gamma),
                    "delta": linking_to_json(&gw.delta),
                    "x": linking_to_json(&gw.x),
                }),
            );
        }
        if let Some((a, b, c)) = &w.lifts {
            m.insert("lifts".into(), json!({ "p": set_to_json(a), "q": set_to_json(b), "certificate": cert_to_json(c) }));
        }
        out["witnesses"] = Value::Object(m);
    }
    Ok(out)
}

pub fn parse_methods(s: &str) -> Res<Vec<u8>> {
    if s.trim() == "all" {
        return Ok(ALL_METHODS.to_vec());
    }
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let m: u8 = t.parse().map_err(|_| CliError::usage(format!("method {t:?} is not a number")))?;
        if !ALL_METHODS.contains(&m) {
            return Err(CliError::usage(format!("method {m} is not in 1..10")));
        }
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(CliError::usage("no methods selected"));
    }
    out.sort_unstable();
    Ok(out)
}

fn dispatch(cli: &Cli, env_caps: Option<&str>) -> Res<(i32, Value)> {
    let emit = cli.emit_coords;
    match &cli.cmd {
        Cmd::Check { kind, input } => check(*kind, &load(input)?),
        Cmd::Convert { input } => {
            let v = load(input)?;
            if v.get("table").is_some() {
                let (g, t) = raw_table(&v)?;
                ok(set_out(&submodular_to_set(&SubmodularFn::new(g, t)?)?, emit)?)
            } else {
                let (g, p) = raw_points(&v)?;
                ok(table_to_json(&set_to_submodular(&MConvexSet::new(g, p)?)?))
            }
        }
        Cmd::Vertices { input, order } => {
            let t = set_to_submodular(&load_set(input)?)?;
            match order {
                Some(o) => {
                    let order: Vec<usize> = parse_ints(o)?.into_iter().map(|i| i as usize).collect();
                    ok(json!({ "vertex": greedy_vertex(&t, &order)? }))
                }
                None => ok(json!({ "vertices": points_to_json(&vertex_set(&t)) })),
            }
        }
        Cmd::Ops { op } => run_op(op, emit),
        Cmd::Quotient { p, q, methods, caps: flag, witnesses } => {
            let caps = caps::resolve(env_caps, flag.as_deref())?;
            let (p, q) = (load_set(p)?, load_set(q)?);
            let report = quotient_suite_methods(&p, &q, &caps, &parse_methods(methods)?)?;
            let code = match report.consensus()? {
                Some(b) => verdict_code(b),
                None => 1,
            };
            Ok((code, report_json(&report, *witnesses)?))
        }
        Cmd::Induce { w, gamma } => {
            let g = linking_from_json(&load(gamma)?)?;
            let wv = load(w)?;
            let (ground, pts) = raw_points(&wv)?;
            if check_m_convex(&pts)? {
                ok(set_out(&induce(&MConvexSet::new(ground, pts)?, &g)?, emit)?)
            } else {
                ok(mnat_out(&induce_mnat(&MNatSet::new(ground, pts)?, &g)?, emit)?)
            }
        }
        Cmd::LinkProduct { a, b } => {
            let (a, b) = (linking_from_json(&load(a)?)?, linking_from_json(&load(b)?)?);
            ok(linking_to_json(&product(&a, &b)?))
        }
        Cmd::Lift { kind } => run_lift(kind, env_caps, emit),
        Cmd::Flag { action, input } => run_flag(*action, input, emit),
        Cmd::Fn { cmd } => run_fn(cmd),
        Cmd::Gen { kind, seed, n, scale, curvature, rank } => run_gen(*kind, *seed, *n, *scale, *curvature, *rank),
        Cmd::Fixtures { name } => match name {
            None => ok(json!({ "fixtures": registry::names() })),
            Some(n) => {
                let v = registry::fixture(n).ok_or_else(|| CliError::usage(format!("unknown fixture {n:?}")))?;
                ok(v)
            }
        },
        Cmd::Selftest { seed, count } => {
            let caps = caps::resolve(env_caps, None)?;
            let (agree, v) = selftest::run(*seed, *count, &caps)?;
            Ok((verdict_code(agree), v))
        }
    }
}

fn check(kind: CheckKind, v: &Value) -> Res<(i32, Value)> {
    let result = match kind {
        CheckKind::MConvex => {
            let (g, p) = raw_points(v)?;
            p.iter().try_for_each(|x| g.check_point(x))?;
            check_m_convex(&p)?
        }
        CheckKind::Mnat => {
            let (g, p) = raw_points(v)?;
            p.iter().try_for_each(|x| g.check_point(x))?;
            check_mnat_convex(&p)?
        }
        CheckKind::Submodular => {
            let (g, t) = raw_table(v)?;
            SubmodularFn::from_trusted(g, t.clone())?;
            check_submodular(&t)? && t[0] == 0
        }
        CheckKind::MFunc => {
            let (g, p) = raw_values(v)?;
            check_m_convex_fn(&MFunc::from_trusted(g, p)?)?
        }
        CheckKind::MnatFunc => {
            let (g, p) = raw_values(v)?;
            check_mnat_fn(&MNatFunc::from_trusted(g, p)?)?
        }
    };
    Ok((verdict_code(result), json!({ "result": result })))
}

fn run_op(op: &OpCmd, emit: bool) -> Res<(i32, Value)> {
    match op {
        OpCmd::Restrict { input, mask } => ok(set_out(&ops::restrict(&load_set(input)?, *mask)?, emit)?),
        OpCmd::Project { input, mask } => ok(mnat_out(&ops::project(&load_set(input)?, *mask)?, emit)?),
        OpCmd::Sum { input, other } => ok(set_out(&ops::minkowski_sum(&load_set(input)?, &load_set(other)?)?, emit)?),
        OpCmd::Translate { input, by } => ok(set_out(&ops::translate(&load_set(input)?, &parse_ints(by)?)?, emit)?),
        OpCmd::Truncate { input, k } => ok(set_out(&ops::truncate(&load_set(input)?, *k)?, emit)?),
        OpCmd::Elongate { input, k } => ok(set_out(&ops::elongate(&load_set(input)?, *k)?, emit)?),
        OpCmd::Box { input, lo, hi } => {
            let r = ops::intersect_box(&load_mnat(input)?, &parse_ints(lo)?, &parse_ints(hi)?)?;
            ok(intersection_json(&r, emit)?)
        }
        OpCmd::Plank { input, alpha, beta } => {
            let r = ops::intersect_plank(&load_mnat(input)?, *alpha, *beta)?;
            ok(intersection_json(&r, emit)?)
        }
        OpCmd::Minor { input, mask, kind, k } => {
            let p = load_set(input)?;
            let out = match (kind, k) {
                (MinorKind::Deletion, None) => ops::deletion(&p, *mask)?,
                (MinorKind::Contraction, None) => ops::contraction(&p, *mask)?,
                (MinorKind::Basic, Some(k)) => ops::basic_minor(&p, *mask, *k)?,
                (MinorKind::Basic, None) => return Err(CliError::usage("basic minors need --k")),
                (_, Some(_)) => return Err(CliError::usage("--k applies to basic minors only")),
            };
            let (lo, hi) = ops::minor_range(&p, *mask)?;
            let mut v = set_out(&out, emit)?;
            v["rank_range"] = json!([lo, hi]);
            ok(v)
        }
    }
}

fn intersection_json(r: &ops::Intersection, emit: bool) -> Res<Value> {
    let mut v = mnat_out(&r.set, emit)?;
    v["upper"] = json!(r.tables.upper);
    v["lower"] = json!(r.tables.lower);
    Ok(v)
}

fn lift_json(m: &MConvexSet, cert: &LiftCertificate, p: &MConvexSet, emit: bool) -> Res<Value> {
    let back = project_phi_set(m.points(), &cert.phi, &cert.v)?;
    Ok(json!({
        "lift": set_out(m, emit)?,
        "certificate": cert_to_json(cert),
        "round_trip": back == p.points(),
    }))
}

fn run_lift(kind: &LiftCmd, env_caps: Option<&str>, emit: bool) -> Res<(i32, Value)> {
    let caps = caps::resolve(env_caps, None)?;
    match kind {
        LiftCmd::Matroid { input } => {
            let p = load_set(input)?;
            let (m, c) = k_polymatroid_lift_capped(&p, 1, caps.lift_ground)?;
            ok(lift_json(&m, &c, &p, emit)?)
        }
        LiftCmd::Kpoly { input, k } => {
            let p = load_set(input)?;
            let (m, c) = k_polymatroid_lift_capped(&p, *k, caps.lift_ground)?;
            ok(lift_json(&m, &c, &p, emit)?)
        }
        LiftCmd::Box { input, fibers, shift, lo, hi } => {
            let p = load_set(input)?;
            let sizes: Vec<usize> = parse_ints(fibers)?
                .into_iter()
                .map(|s| usize::try_from(s).map_err(|_| CliError::usage("fiber sizes must be nonnegative")))
                .collect::<Res<_>>()?;
            let phi = Surjection::from_fiber_sizes(&sizes)?;
            let cert = LiftCertificate::new(phi, parse_ints(shift)?, parse_ints(lo)?, parse_ints(hi)?)?;
            let m = box_lift_capped(&p, &cert, caps.lift_ground)?;
            ok(json!({ "lift": set_out(&m, emit)?, "certificate": cert_to_json(&cert) }))
        }
        LiftCmd::Compatible { p, q } => {
            let (p, q) = (load_set(p)?, load_set(q)?);
            let (m, n, cert) = compatible_lifts_capped(&p, &q, caps.lift_ground)?;
            let quotient = check_exchange(&m, &n)?;
            Ok((
                verdict_code(quotient),
                json!({
                    "p": set_out(&m, emit)?,
                    "q": set_out(&n, emit)?,
                    "certificate": cert_to_json(&cert),
                    "quotient": quotient,
                }),
            ))
        }
    }
}

fn run_flag(action: FlagAction, input: &str, emit: bool) -> Res<(i32, Value)> {
    let v = load(input)?;
    match action {
        FlagAction::Check => {
            let f = flag_from_json(&v)?;
            let is_flag = flags::check_flag(&f)?;
            let mnat = is_flag && flags::is_mnat_flag(&f)?;
            let mut out = flag_with_coords(&f, emit)?;
            out["result"] = json!(is_flag);
            out["consecutive"] = json!(flags::is_consecutive(&f));
            out["mnat"] = json!(mnat);
            Ok((verdict_code(is_flag), out))
        }
        FlagAction::Complete => ok(flag_with_coords(&flags::complete_flag(&flag_from_json(&v)?)?, emit)?),
        FlagAction::MnatComplete => ok(flag_with_coords(&flags::mnat_completion(&flag_from_json(&v)?)?, emit)?),
        FlagAction::Constants => {
            let chain = chain_from_json(&v)?;
            let (c, h) = flag_constants(&chain)?;
            ok(json!({ "constants": c.iter().map(rat_to_json).collect::<Vec<_>>(), "function": values_to_json(&h) }))
        }
    }
}

fn run_fn(cmd: &FnCmd) -> Res<(i32, Value)> {
    match cmd {
        FnCmd::Minimizer { f, u } => {
            let f = load_fn(f)?;
            ok(set_to_json(&minimizer(&f, &parse_rats(u)?)?))
        }
        FnCmd::Atlas { f, g } => {
            let atlas = minimizer_atlas(&load_fn(f)?, &load_fn(g)?)?;
            let entries: Vec<Value> = atlas
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "u": e.u.iter().map(rat_to_json).collect::<Vec<_>>(),
                        "f": points_to_json(e.fcell.points()),
                        "g": points_to_json(e.gcell.points()),
                        "h": points_to_json(e.hcell.points()),
                    })
                })
                .collect();
            ok(json!({ "entries": entries }))
        }
        FnCmd::Convolve { f, g } => ok(values_to_json(&convolution(&load_fn(f)?, &load_fn(g)?)?)),
        FnCmd::Quotient { level, f, g } => {
            let (f, g) = (load_fn(f)?, load_fn(g)?);
            let v = match level {
                Level::A => quotient_a(&f, &g)?,
                Level::B => quotient_b(&f, &g)?.0,
                Level::C => Verdict::from_bool(quotient_c(&f, &g)?),
                Level::D => Verdict::from_result(quotient_d(&f, &g))?,
                Level::All => {
                    let levels = fn_quotient_levels(&f, &g)?;
                    let m: serde_json::Map<String, Value> =
                        levels.iter().map(|(k, v)| (k.to_string(), verdict_json(v))).collect();
                    let decided: Vec<bool> = levels.values().filter_map(Verdict::as_bool).collect();
                    let code = verdict_code(!decided.is_empty() && decided.iter().all(|b| *b));
                    return Ok((code, json!({ "levels": m })));
                }
            };
            Ok((verdict_code(v == Verdict::True), json!({ "verdict": verdict_json(&v) })))
        }
        FnCmd::Truncate { f } => ok(values_to_json(&truncation_fn(&load_fn(f)?)?)),
        FnCmd::Elongate { f } => ok(values_to_json(&elongation_fn(&load_fn(f)?)?)),
        FnCmd::SparsePaving { f, g } => {
            let h = sparse_paving_quotient(&load_fn(f)?, &load_fn(g)?)?;
            let certified = check_mnat_fn(&h)?;
            Ok((verdict_code(certified), json!({ "function": values_to_json(&h), "certified": certified })))
        }
    }
}

fn pair_json(p: &SubmodularFn, q: &SubmodularFn) -> Value {
    json!({ "p": table_to_json(p), "q": table_to_json(q) })
}

fn run_gen(kind: GenKind, seed: u64, n: usize, scale: i64, curvature: i64, rank: usize) -> Res<(i32, Value)> {
    let v = match kind {
        GenKind::Submodular => table_to_json(&generator::gen_submodular(seed, n, scale)?),
        GenKind::MConvex => set_to_json(&generator::gen_mconvex(seed, n, scale)?),
        GenKind::Mnat => mnat_to_json(&generator::gen_mnat(seed, n, scale)?),
        GenKind::QuotientPair => {
            let (p, q) = generator::gen_quotient_pair(seed, n, scale)?;
            pair_json(&p, &q)
        }
        GenKind::NonQuotientPair => {
            let (p, q) = generator::gen_non_quotient_pair(seed, n, scale)?;
            pair_json(&p, &q)
        }
        GenKind::MFunc => {
            let p = generator::gen_mconvex(seed, n, scale)?;
            values_to_json(&generator::gen_m_func(seed, &p, curvature)?)
        }
        GenKind::SparsePaving => values_to_json(&generator::gen_sparse_paving(seed, n, rank)?),
    };
    ok(v)
}

/// Unlabelled ground of size `n`, for documents built by hand.

pub fn points_json(n: usize, pts: &[LatticePoint]) -> Value {
    doc(json!({ "ground": { "size": n }, "points": points_to_json(pts) }))
}
