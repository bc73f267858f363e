//! Command-line front end. `run` parses arguments, dispatches to a solver and
//! returns the exit code together with the rendered output.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use decmin::applications::{
    brute_semimatchings, decmin_root_vector, decmin_semimatching, is_root_vector, megiddo_discrete,
    MegiddoProblem, SemiMatchingProblem,
};
use decmin::base::Ceiling;
use decmin::brute::decmin_points;
use decmin::canonical::{canonical, canonical_from_decmin, cheapest_decmin, duality_gap};
use decmin::engine::{basic_decmin, is_decmin, strongly_poly_decmin};
use decmin::error::Error;
use decmin::matroid::{all_bases, decmin_basis_sum, inout_decmin_orientation, MatroidRef, MatroidSpec};
use decmin::orientation::{
    all_orientations, capacitated_decmin_orientation, cheapest_decmin_orientation_bounded,
    decmin_korient, decmin_orientation_bounded, decmin_orientation_min_t, expand_capacities,
    is_k_arc_connected, Bounds, Graph, Orientation,
};
use decmin::setfn::{graph_induced, ExplicitTable, SetFunction, NO_LOWER, NO_UPPER};
use decmin::subset::Subset;
use decmin::vector::{sorted_dec, IntVec};
use decmin::BaseHandle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "decmin", version, about = "Dec-min elements of M-convex sets")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Cross-check the answer by brute force when the instance is small enough.
    #[arg(long, global = true)]
    pub verify: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Strong,
    Basic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dec-min element of the base-polyhedron of a set-function table.
    Decmin {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_enum, default_value_t = Method::Strong)]
        method: Method,
        /// Per-element costs; returns the cheapest dec-min element.
        #[arg(long)]
        cost: Option<String>,
    },
    /// Canonical chain, partition and essential values.
    Canonical {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Square-sum of a member and the gap to the dual bound of the canonical `π*`.
    Certify {
        #[command(flatten)]
        table: TableArgs,
        /// Member to certify; the computed dec-min element by default.
        #[arg(long)]
        m: Option<String>,
    },
    /// Dec-min orientation of a graph file.
    Orient {
        #[arg(long)]
        graph: PathBuf,
        /// Node bounds file with `b v f g` lines.
        #[arg(long)]
        bounds: Option<PathBuf>,
        /// Require a k-arc-connected orientation.
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated nodes whose total in-degree is minimized first.
        #[arg(long)]
        t: Option<String>,
        /// Cheapest dec-min orientation under the edge costs.
        #[arg(long)]
        cheapest: bool,
        /// Split every edge according to its capacity.
        #[arg(long)]
        capacitated: bool,
        /// Orientation whose in- and out-degree vectors are both dec-min.
        #[arg(long)]
        inout: bool,
    },
    /// Dec-min semi-matching or degree-constrained bipartite subgraph.
    Semimatch {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Bases of several matroids with dec-min sum vector.
    MatroidSum {
        /// JSON array of matroid descriptions on a common ground set.
        #[arg(long)]
        matroids: PathBuf,
        #[arg(long)]
        lower: Option<String>,
        #[arg(long)]
        upper: Option<String>,
    },
    /// Integral flow with dec-min source out-flows.
    Megiddo {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Dec-min root vector of k disjoint spanning arborescences.
    Rootvec {
        /// Digraph in the graph file format; every edge is read as an arc `u → v`.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    /// Check a member for dec-minimality, or run a seeded randomized self-check.
    Verify {
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        lower: Option<String>,
        #[arg(long)]
        upper: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random instances for the self-check.
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(clap::Args, Debug)]
pub struct TableArgs {
    /// Set-function table `{"n": k, "values": {"mask": int | "-inf"}}`.
    #[arg(long)]
    pub table: PathBuf,
    /// Comma-separated lower bounds; `-` leaves an element unbounded.
    #[arg(long)]
    pub lower: Option<String>,
    #[arg(long)]
    pub upper: Option<String>,
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Infeasible { reason: String, witness: Vec<usize> },
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible { reason, witness } => Failure::Infeasible { reason, witness },
            Error::Empty => Failure::Infeasible {
                reason: "the feasible set is empty".into(),
                witness: vec![],
            },
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Ok(v) => Outcome {
            code: 0,
            stdout: render(&v, format),
            stderr: String::new(),
        },
        Err(Failure::Infeasible { reason, witness }) => {
            let v = json!({ "infeasible": reason, "witness": witness });
            Outcome {
                code: 2,
                stdout: render(&v, format),
                stderr: format!("infeasible: {reason}\n"),
            }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Mismatch(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("verification failed: {msg}\n"),
        },
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{v}\n"),
        Format::Text => {
            let Value::Object(map) = v else {
                return format!("{v}\n");
            };
            let mut out = String::new();
            for (k, val) in map {
                out.push_str(&format!("{k}: {}\n", text_value(val)));
            }
            out
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(text_value).collect::<Vec<_>>().join(" ")
        }
        Value::Array(items) => items.iter().map(text_value).collect::<Vec<_>>().join(" | "),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Res<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Comma-separated integers; `-` maps to `open`.
fn parse_vec(s: &str, open: Option<i64>) -> Res<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .map(|t| match (t, open) {
            ("-", Some(o)) => Ok(o),
            _ => t.parse().map_err(|_| usage(format!("bad integer {t:?} in {s:?}"))),
        })
        .collect()
}

fn parse_nodes(s: &str) -> Res<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("bad node {t:?}"))))
        .collect()
}

fn check_len(v: &[i64], n: usize, what: &str) -> Res<()> {
    if v.len() != n {
        return Err(usage(format!("{what} has {} entries, expected {n}", v.len())));
    }
    Ok(())
}

struct TableInstance {
    table: Arc<ExplicitTable>,
    handle: BaseHandle,
    lower: Option<Vec<i64>>,
    upper: Option<Vec<i64>>,
}

fn load_table(path: &Path, lower: Option<&String>, upper: Option<&String>) -> Res<TableInstance> {
    let table = Arc::new(ExplicitTable::from_json(&read_json(path)?)?);
    let n = table.ground_size();
    let lower = lower.map(|s| parse_vec(s, Some(NO_LOWER))).transpose()?;
    let upper = upper.map(|s| parse_vec(s, Some(NO_UPPER))).transpose()?;
    for (v, what) in [(&lower, "--lower"), (&upper, "--upper")] {
        if let Some(v) = v {
            check_len(v, n, what)?;
        }
    }
    let handle = BaseHandle::new(table.clone())?
        .with_box(lower.clone(), upper.clone())?
        .with_ceiling(Ceiling::from_env()?);
    let inst = TableInstance {
        table,
        handle,
        lower,
        upper,
    };
    inst.check_nonempty()?;
    Ok(inst)
}

impl TableInstance {
    /// Fails with a violating set when the box misses the base-polyhedron.
    fn check_nonempty(&self) -> Res<()> {
        let p = self.table.as_ref();
        let n = p.ground_size();
        let full = Subset::full(n);
        let Some(total) = p.eval(full) else {
            return Err(Failure::Infeasible {
                reason: "p(S) is undefined, so the base-polyhedron is empty".into(),
                witness: full.to_vec(),
            });
        };
        let lo = self.lower.clone().unwrap_or_else(|| vec![NO_LOWER; n]);
        let hi = self.upper.clone().unwrap_or_else(|| vec![NO_UPPER; n]);
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            let s = (0..n).find(|&s| lo[s] > hi[s]).unwrap_or(0);
            return Err(Failure::Infeasible {
                reason: format!("lower bound exceeds upper bound at element {s}"),
                witness: vec![s],
            });
        }
        let bounded_sum = |x: Subset, v: &[i64], open: i64| -> Option<i64> {
            x.iter().try_fold(0i64, |acc, s| (v[s] != open).then(|| acc + v[s]))
        };
        for bits in 0..(1u64 << n) {
            let x = Subset::from_elems((0..n).filter(|&s| bits >> s & 1 == 1));
            // p(X) ≤ g̃(X).
            if let (Some(px), Some(gx)) = (p.eval(x), bounded_sum(x, &hi, NO_UPPER)) {
                if px > gx {
                    return Err(Failure::Infeasible {
                        reason: "p(X) exceeds the upper bounds on X".into(),
                        witness: x.to_vec(),
                    });
                }
            }
            // f̃(X) ≤ p(S) − p(S − X).
            if let (Some(fx), Some(pc)) = (bounded_sum(x, &lo, NO_LOWER), p.eval(full.minus(x))) {
                if fx > total - pc {
                    return Err(Failure::Infeasible {
                        reason: "the lower bounds on X exceed the room p(S) − p(S − X)".into(),
                        witness: x.to_vec(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Dec-min members by enumeration. Unbounded sets are scanned in the cube
    /// spanned by the values of the dec-min element `m`, which holds every
    /// dec-min member since they are all value-equivalent to `m`.
    fn brute(&self, m: &[i64]) -> Res<Vec<IntVec>> {
        let search = match self.handle.search_box() {
            Ok(b) => b,
            Err(Error::Invalid(_)) => {
                let lo = *m.iter().min().unwrap_or(&0);
                let hi = *m.iter().max().unwrap_or(&0);
                (vec![lo; m.len()], vec![hi; m.len()])
            }
            Err(e) => return Err(e.into()),
        };
        let points = self.handle.enumerate(&search)?.points;
        if points.is_empty() {
            return Err(Error::Empty.into());
        }
        Ok(decmin_points(&points))
    }
}

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Res<()> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(msg()))
    }
}

/// Dec-min value of a list of candidate vectors, for comparison.
fn best_of(points: &[IntVec]) -> Option<IntVec> {
    decmin_points(points).first().map(|p| sorted_dec(p))
}

fn execute(cli: &Cli) -> Res<Value> {
    let verify = cli.verify;
    match &cli.command {
        Command::Decmin { table, method, cost } => {
            let t = load_table(&table.table, table.lower.as_ref(), table.upper.as_ref())?;
            let b = &t.handle;
            let cost = cost.as_ref().map(|c| parse_vec(c, None)).transpose()?;
            let (m, betas) = match (&cost, method) {
                (Some(c), _) => {
                    check_len(c, b.len(), "--cost")?;
                    let m = cheapest_decmin(b, c)?;
                    let betas = canonical_from_decmin(b, &m)?.betas;
                    (m, betas)
                }
                (None, Method::Strong) => {
                    let r = strongly_poly_decmin(b)?;
                    (r.m, r.betas)
                }
                (None, Method::Basic) => {
                    let m = basic_decmin(b, &b.initial_member()?)?;
                    let betas = canonical_from_decmin(b, &m)?.betas;
                    (m, betas)
                }
            };
            if verify {
                let members = t.brute(&m)?;
                expect(members.contains(&m), || format!("{m:?} is not a brute-force dec-min element"))?;
                if let Some(c) = &cost {
                    let price = |x: &IntVec| x.iter().zip(c).map(|(a, b)| a * b).sum::<i64>();
                    let least = members.iter().map(price).min();
                    expect(least == Some(price(&m)), || format!("cost of {m:?} is not the least"))?;
                }
            }
            let mut out = json!({ "m": m, "betas": betas });
            if let Some(c) = &cost {
                out["cost"] = json!(m.iter().zip(c).map(|(a, b)| a * b).sum::<i64>());
            }
            Ok(out)
        }
        Command::Canonical { table } => {
            let t = load_table(&table.table, table.lower.as_ref(), table.upper.as_ref())?;
            let d = canonical(&t.handle)?;
            if verify {
                for m in t.brute(&d.m)? {
                    let other = canonical_from_decmin(&t.handle, &m)?;
                    expect(other.chain == d.chain && other.betas == d.betas, || {
                        format!("decomposition differs when computed from {m:?}")
                    })?;
                }
            }
            Ok(json!({
                "m": d.m,
                "chain": d.chain,
                "partition": d.partition,
                "betas": d.betas,
                "r": d.r,
                "delta_star": d.delta_star,
                "pi_star": d.pi_star,
                "value_fixed": d.value_fixed,
            }))
        }
        Command::Certify { table, m } => {
            let t = load_table(&table.table, table.lower.as_ref(), table.upper.as_ref())?;
            let b = &t.handle;
            let d = canonical(b)?;
            let m = match m {
                Some(s) => {
                    let m = parse_vec(s, None)?;
                    check_len(&m, b.len(), "--m")?;
                    if !b.is_member(&m)? {
                        return Err(usage(format!("{m:?} is not a member")));
                    }
                    m
                }
                None => d.m.clone(),
            };
            let gap = duality_gap(b, &m, &d.pi_star)?;
            if verify {
                let members = t.brute(&d.m)?;
                let is_min = members.contains(&m);
                expect(is_min == (gap.gap == 0), || {
                    format!("gap {} disagrees with brute-force dec-minimality {is_min}", gap.gap)
                })?;
            }
            Ok(json!({ "W": gap.square_sum, "gap": gap.gap, "pi_star": d.pi_star }))
        }
        Command::Orient {
            graph,
            bounds,
            k,
            t,
            cheapest,
            capacitated,
            inout,
        } => orient(
            graph,
            bounds.as_deref(),
            *k,
            t.as_deref(),
            *cheapest,
            *capacitated,
            *inout,
            verify,
        ),
        Command::Semimatch { instance } => {
            let p: SemiMatchingProblem =
                serde_json::from_value(read_json(instance)?).map_err(|e| usage(e.to_string()))?;
            let r = decmin_semimatching(&p)?;
            if verify {
                let all = brute_semimatchings(&p)?;
                let degs: Vec<IntVec> = all.iter().map(|f| f.degrees.clone()).collect();
                let best = best_of(&degs);
                expect(best == Some(sorted_dec(&r.degrees)), || {
                    format!("degrees {:?} are not dec-min", r.degrees)
                })?;
                let least = all
                    .iter()
                    .filter(|f| Some(sorted_dec(&f.degrees)) == best)
                    .map(|f| f.cost)
                    .min();
                expect(least == Some(r.cost), || format!("cost {} is not the least", r.cost))?;
            }
            Ok(json!({ "z": r.z, "degrees": r.degrees, "cost": r.cost }))
        }
        Command::MatroidSum { matroids, lower, upper } => {
            let specs: Vec<MatroidSpec> =
                serde_json::from_value(read_json(matroids)?).map_err(|e| usage(e.to_string()))?;
            let ms: Vec<MatroidRef> = specs.iter().map(MatroidSpec::build).collect::<Result<_, _>>()?;
            if ms.is_empty() {
                return Err(usage("no matroids given"));
            }
            let n = ms[0].ground_size();
            let bounds = match (lower, upper) {
                (None, None) => None,
                _ => {
                    let k = ms.len() as i64;
                    let lo = lower.as_ref().map_or(Ok(vec![0; n]), |s| parse_vec(s, Some(0)))?;
                    let hi = upper.as_ref().map_or(Ok(vec![k; n]), |s| parse_vec(s, Some(k)))?;
                    check_len(&lo, n, "--lower")?;
                    check_len(&hi, n, "--upper")?;
                    Some((lo, hi))
                }
            };
            let r = decmin_basis_sum(&ms, bounds.clone())?;
            if verify {
                let sums = all_basis_sums(&ms)?;
                let sums: Vec<IntVec> = match &bounds {
                    Some((lo, hi)) => sums
                        .into_iter()
                        .filter(|s| s.iter().enumerate().all(|(e, &x)| lo[e] <= x && x <= hi[e]))
                        .collect(),
                    None => sums,
                };
                expect(best_of(&sums) == Some(sorted_dec(&r.sum)), || {
                    format!("sum {:?} is not dec-min", r.sum)
                })?;
            }
            Ok(json!({ "bases": r.bases, "sum": r.sum }))
        }
        Command::Megiddo { instance } => {
            let p = MegiddoProblem::parse(&read(instance)?)?;
            let r = megiddo_discrete(&p)?;
            if verify {
                let members = megiddo_brute(&p, r.amount)?;
                expect(members.contains(&r.out_flow), || {
                    format!("out-flow {:?} is not dec-min", r.out_flow)
                })?;
            }
            Ok(json!({ "flow": r.flow, "out_flow": r.out_flow, "amount": r.amount }))
        }
        Command::Rootvec { graph, k } => {
            let g = Graph::parse(&read(graph)?)?;
            let arcs: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.u, e.v)).collect();
            let m = decmin_root_vector(g.n, &arcs, *k)?;
            if verify {
                let members = root_vectors(g.n, &arcs, *k)?;
                expect(best_of(&members) == Some(sorted_dec(&m)) && members.contains(&m), || {
                    format!("{m:?} is not a dec-min root vector")
                })?;
            }
            Ok(json!({ "m": m }))
        }
        Command::Verify {
            table,
            m,
            lower,
            upper,
            seed,
            count,
        } => match (table, m, seed) {
            (Some(path), Some(m), _) => {
                let t = load_table(path, lower.as_ref(), upper.as_ref())?;
                let m = parse_vec(m, None)?;
                check_len(&m, t.handle.len(), "--m")?;
                let member = t.handle.is_member(&m)?;
                let check = if member { Some(is_decmin(&t.handle, &m)?) } else { None };
                let decmin = check.as_ref().is_some_and(|c| c.is_decmin);
                if verify && member {
                    let reference = strongly_poly_decmin(&t.handle)?.m;
                    let members = t.brute(&reference)?;
                    expect(members.contains(&m) == decmin, || "dec-min test disagrees with brute force".into())?;
                }
                Ok(json!({
                    "member": member,
                    "decmin": decmin,
                    "witness": check.and_then(|c| c.witness).map(|(s, t)| vec![s, t]),
                }))
            }
            (None, None, Some(seed)) => self_check(*seed, *count),
            (None, None, None) => Err(usage("verify needs --table and --m, or --seed")),
            _ => Err(usage("verify needs both --table and --m")),
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn orient(
    graph: &Path,
    bounds: Option<&Path>,
    k: Option<usize>,
    t: Option<&str>,
    cheapest: bool,
    capacitated: bool,
    inout: bool,
    verify: bool,
) -> Res<Value> {
    let g = Graph::parse(&read(graph)?)?;
    let b = match bounds {
        Some(p) => Bounds::parse(&read(p)?, g.n)?,
        None => Bounds::free(g.n),
    };
    let modes = [k.is_some(), t.is_some(), cheapest, capacitated, inout];
    if modes.iter().filter(|&&x| x).count() > 1 {
        return Err(usage("--k, --t, --cheapest, --capacitated and --inout are exclusive"));
    }
    if capacitated {
        if bounds.is_some() {
            return Err(usage("--capacitated takes no bounds"));
        }
        let r = capacitated_decmin_orientation(&g)?;
        if verify {
            let plain = expand_capacities(&g);
            let degs = brute_indegrees(&plain, &Bounds::free(g.n), |_| true)?;
            expect(best_of(&degs) == Some(sorted_dec(&r.indeg)), || {
                format!("in-degrees {:?} are not dec-min", r.indeg)
            })?;
        }
        return Ok(json!({ "z": r.z, "indeg": r.indeg }));
    }
    if inout {
        return match inout_decmin_orientation(&g)? {
            Some(o) => Ok(orientation_json(&g, &o)),
            None => Err(Failure::Infeasible {
                reason: "no orientation has both degree vectors dec-min".into(),
                witness: vec![],
            }),
        };
    }
    if let Some(t) = t {
        let t_set = parse_nodes(t)?;
        if t_set.iter().any(|&v| v >= g.n) {
            return Err(usage("--t node out of range"));
        }
        let r = decmin_orientation_min_t(&g, &b, &t_set)?;
        if verify {
            let t_sum = |d: &IntVec| t_set.iter().map(|&v| d[v]).sum::<i64>();
            let all = brute_indegrees(&g, &b, |_| true)?;
            let least = all.iter().map(t_sum).min();
            let ours = r.orientation.indeg(&g);
            expect(least == Some(t_sum(&ours)), || "T-in-degree is not least".into())?;
            let degs: Vec<IntVec> = all.into_iter().filter(|d| Some(t_sum(d)) == least).collect();
            expect(best_of(&degs) == Some(sorted_dec(&ours)), || "not dec-min among T-minimal".into())?;
        }
        let mut out = orientation_json(&g, &r.orientation);
        out["x_t"] = json!(r.x_t);
        return Ok(out);
    }
    let o = match k {
        Some(k) => decmin_korient(&g, k, &b)?,
        None if cheapest => cheapest_decmin_orientation_bounded(&g, &b)?,
        None => decmin_orientation_bounded(&g, &b)?,
    };
    if verify {
        let k_ok = |o: &Orientation| k.is_none_or(|k| is_k_arc_connected(&g, o, k));
        let all: Vec<Orientation> = feasible_orientations(&g, &b)?.into_iter().filter(k_ok).collect();
        let degs: Vec<IntVec> = all.iter().map(|o| o.indeg(&g)).collect();
        let ours = o.indeg(&g);
        let best = best_of(&degs);
        expect(best == Some(sorted_dec(&ours)), || format!("in-degrees {ours:?} are not dec-min"))?;
        if cheapest {
            let least = all
                .iter()
                .filter(|x| Some(sorted_dec(&x.indeg(&g))) == best)
                .map(|x| x.cost(&g))
                .min();
            expect(least == Some(o.cost(&g)), || "cost is not the least".into())?;
        }
    }
    let mut out = orientation_json(&g, &o);
    if cheapest {
        out["cost"] = json!(o.cost(&g));
    }
    Ok(out)
}

fn orientation_json(g: &Graph, o: &Orientation) -> Value {
    let r = o.report(g);
    json!({ "arcs": r.arcs, "indeg": r.indeg })
}

fn feasible_orientations(g: &Graph, b: &Bounds) -> Res<Vec<Orientation>> {
    Ok(all_orientations(g)?
        .filter(|o| o.respects_fixed(g))
        .filter(|o| {
            o.indeg(g)
                .iter()
                .enumerate()
                .all(|(v, &d)| b.lower[v] <= d && d <= b.upper[v])
        })
        .collect())
}

fn brute_indegrees(g: &Graph, b: &Bounds, keep: impl Fn(&Orientation) -> bool) -> Res<Vec<IntVec>> {
    Ok(feasible_orientations(g, b)?
        .into_iter()
        .filter(|o| keep(o))
        .map(|o| o.indeg(g))
        .collect())
}

fn all_basis_sums(ms: &[MatroidRef]) -> Res<Vec<IntVec>> {
    let n = ms[0].ground_size();
    let mut sums = vec![vec![0i64; n]];
    for m in ms {
        let bases = all_bases(m.as_ref())?;
        let mut next = Vec::with_capacity(sums.len() * bases.len());
        for s in &sums {
            for b in &bases {
                let mut t = s.clone();
                for &e in b {
                    t[e] += 1;
                }
                next.push(t);
            }
        }
        next.sort();
        next.dedup();
        if next.len() > 1 << 20 {
            return Err(Error::CeilingExceeded {
                what: "basis-sum vectors",
                actual: next.len() as u64,
                limit: 1 << 20,
            }
            .into());
        }
        sums = next;
    }
    Ok(sums)
}

/// Dec-min out-flow vectors, from the set function `X ↦ M − maxflow(S − X → T)`.
fn megiddo_brute(p: &MegiddoProblem, amount: i64) -> Res<Vec<IntVec>> {
    let k = p.sources.len();
    Ceiling::from_env()?.check_subsets(k)?;
    let table = ExplicitTable::from_fn(k, |x| {
        let rest: Vec<usize> = (0..k).filter(|&i| !x.contains(i)).map(|i| p.sources[i]).collect();
        if rest.is_empty() {
            return Some(amount);
        }
        let sub = MegiddoProblem {
            sources: rest,
            ..p.clone()
        };
        sub.max_amount().ok().map(|f| amount - f)
    })?;
    let b = BaseHandle::new(Arc::new(table))?.with_box(Some(vec![0; k]), None)?;
    Ok(decmin::brute::decmin_members(&b)?)
}

fn root_vectors(n: usize, arcs: &[(usize, usize)], k: i64) -> Res<Vec<IntVec>> {
    let mut out = vec![];
    let mut m = vec![0i64; n];
    loop {
        if is_root_vector(n, arcs, k, &m)? {
            out.push(m.clone());
        }
        let mut i = 0;
        while i < n {
            if m[i] < k {
                m[i] += 1;
                break;
            }
            m[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(out);
        }
    }
}

/// Random graph-induced instances with random boxes, each solved by both
/// algorithms and compared with enumeration.
fn self_check(seed: u64, count: usize) -> Res<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solved = 0;
    let mut empty = 0;
    for i in 0..count {
        let n = rng.gen_range(2..=5);
        let edges: Vec<(usize, usize, i64)> = (0..rng.gen_range(1..=8))
            .map(|_| {
                let u = rng.gen_range(0..n);
                let v = (u + rng.gen_range(1..n)) % n;
                (u, v, 1)
            })
            .collect();
        let p = graph_induced(n, &edges)?;
        let shift: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let table = ExplicitTable::from_fn(n, |x| p.eval(x).map(|v| v + x.sum(&shift)))?;
        let lower: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=1)).collect();
        let upper: Vec<i64> = lower.iter().map(|l| l + rng.gen_range(1..=4)).collect();
        let b = BaseHandle::new(Arc::new(table))?.with_box(Some(lower), Some(upper))?;
        let members = match decmin::brute::decmin_members(&b) {
            Ok(m) => m,
            Err(Error::Empty) => {
                empty += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let strong = strongly_poly_decmin(&b)?.m;
        let basic = basic_decmin(&b, &b.initial_member()?)?;
        for (name, m) in [("strong", &strong), ("basic", &basic)] {
            expect(members.contains(m), || format!("instance {i}: {name} gave {m:?}"))?;
        }
        solved += 1;
    }
    Ok(json!({ "seed": seed, "instances": solved, "empty": empty, "mismatches": 0 }))
}
