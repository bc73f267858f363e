//! Reductions to dec-min problems: semi-matchings with degree bounds,
//! integral Megiddo flows, and root vectors of arborescence packings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::base::{BaseHandle, MembershipOracle, Modularity};
use crate::canonical::canonical_from_decmin;
use crate::engine::decmin;
use crate::error::{Error, Result};
use crate::netflow::{feasible_m_flow, max_flow, min_cost_flow, Digraph, FlowOutcome, FlowProblem};
use crate::orientation::{
    cheapest_decmin_orientation_bounded, decmin_orientation_bounded, Bounds, Edge, Graph,
};
use crate::setfn::{RootVectorFn, NO_UPPER};
use crate::vector::IntVec;

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteEdge {
    pub s: usize,
    pub t: usize,
    /// Largest multiplicity of the edge in `F`.
    #[serde(default = "one")]
    pub cap: i64,
    /// Cost per copy of the edge in `F`.
    #[serde(default)]
    pub cost: i64,
}

/// Degree-constrained subgraphs `F` of a bipartite graph `(S, T; E)`.
///
/// Degrees on `T` are exact when `m_t` is given. Otherwise they follow
/// `bounds_t` (default `[0, ∞)`) and `|F|` is `gamma`, or as large as possible
/// when `gamma` is absent. With neither `m_t`, `bounds_t` nor `gamma`, every node
/// of `T` gets degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiMatchingProblem {
    pub s: usize,
    pub t: usize,
    pub edges: Vec<BipartiteEdge>,
    #[serde(default)]
    pub m_t: Option<Vec<i64>>,
    #[serde(default)]
    pub bounds_s: Option<(Vec<i64>, Vec<i64>)>,
    #[serde(default)]
    pub bounds_t: Option<(Vec<i64>, Vec<i64>)>,
    #[serde(default)]
    pub gamma: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiMatching {
    /// Multiplicity of every edge in `F`.
    pub z: Vec<i64>,
    /// `d_F(s)` for `s ∈ S`.
    pub degrees: IntVec,
    pub cost: i64,
}

impl SemiMatchingProblem {
    /// Simple semi-matching instance: every node of `T` gets degree 1.
    pub fn simple(s: usize, t: usize, edges: &[(usize, usize)]) -> Self {
        SemiMatchingProblem {
            s,
            t,
            edges: edges
                .iter()
                .map(|&(s, t)| BipartiteEdge { s, t, cap: 1, cost: 0 })
                .collect(),
            m_t: None,
            bounds_s: None,
            bounds_t: None,
            gamma: None,
        }
    }

    fn validate(&self) -> Result<()> {
        for e in &self.edges {
            if e.s >= self.s || e.t >= self.t {
                return Err(Error::invalid("edge endpoint out of range"));
            }
            if e.cap < 0 {
                return Err(Error::invalid("negative edge capacity"));
            }
        }
        let check = |v: &Option<Vec<i64>>, len: usize| match v {
            Some(v) if v.len() != len => Err(Error::LengthMismatch {
                expected: len,
                got: v.len(),
            }),
            _ => Ok(()),
        };
        check(&self.m_t, self.t)?;
        for (b, len) in [(&self.bounds_s, self.s), (&self.bounds_t, self.t)] {
            if let Some((lo, hi)) = b {
                check(&Some(lo.clone()), len)?;
                check(&Some(hi.clone()), len)?;
            }
        }
        Ok(())
    }

    fn has_costs(&self) -> bool {
        self.edges.iter().any(|e| e.cost != 0)
    }

    /// Exact `T`-degrees, if the instance fixes them.
    fn exact_t(&self) -> Option<Vec<i64>> {
        match (&self.m_t, &self.bounds_t, self.gamma) {
            (Some(m), _, _) => Some(m.clone()),
            (None, None, None) => Some(vec![1; self.t]),
            _ => None,
        }
    }

    fn t_bounds(&self) -> (Vec<i64>, Vec<i64>) {
        if let Some(m) = self.exact_t() {
            return (m.clone(), m);
        }
        self.bounds_t
            .clone()
            .unwrap_or_else(|| (vec![0; self.t], vec![NO_UPPER; self.t]))
    }

    fn total_cap(&self) -> i64 {
        self.edges.iter().map(|e| e.cap).sum()
    }
}

/// Flow model: source → `s` → (edges) → `t` → sink, node `σ = s + t`,
/// `τ = σ + 1`. Arc ids: edges first, then `σ → s`, then `t → τ`.
struct SemiFlow<'a> {
    p: &'a SemiMatchingProblem,
    gamma: i64,
}

impl<'a> SemiFlow<'a> {
    fn problem(&self, s_bounds: &[(i64, i64)], with_costs: bool) -> FlowProblem {
        let p = self.p;
        let (sigma, tau) = (p.s + p.t, p.s + p.t + 1);
        let mut fp = FlowProblem::new(p.s + p.t + 2);
        let big = self.p.total_cap();
        for e in &p.edges {
            fp.add_arc(e.s, p.s + e.t, 0, e.cap, if with_costs { e.cost } else { 0 });
        }
        for (s, &(lo, hi)) in s_bounds.iter().enumerate() {
            fp.add_arc(sigma, s, lo.max(0), hi.min(big), 0);
        }
        let (tl, tu) = p.t_bounds();
        for t in 0..p.t {
            fp.add_arc(p.s + t, tau, tl[t].max(0), tu[t].min(big), 0);
        }
        fp.demand[sigma] = -self.gamma;
        fp.demand[tau] = self.gamma;
        fp
    }

    fn default_s_bounds(&self) -> Vec<(i64, i64)> {
        match &self.p.bounds_s {
            Some((lo, hi)) => lo.iter().copied().zip(hi.iter().copied()).collect(),
            None => vec![(0, NO_UPPER); self.p.s],
        }
    }

    fn solution(&self, fp: &FlowProblem, z: &[i64]) -> SemiMatching {
        let m = self.p.edges.len();
        let z_e = z[..m].to_vec();
        let degrees = z[m..m + self.p.s].to_vec();
        let cost = self.p.edges.iter().zip(&z_e).map(|(e, x)| e.cost * x).sum();
        debug_assert!(fp.is_feasible_flow(z));
        SemiMatching { z: z_e, degrees, cost }
    }
}

/// `S`-degree vectors of the feasible subgraphs with `|F| = γ`, tested by one
/// feasible-flow computation each.
#[derive(Clone, Debug)]
pub struct SemiMatchingOracle {
    p: SemiMatchingProblem,
    gamma: i64,
}

impl SemiMatchingOracle {
    fn flow(&self) -> SemiFlow<'_> {
        SemiFlow {
            p: &self.p,
            gamma: self.gamma,
        }
    }

    fn realize(&self, y: &[i64]) -> Option<Vec<i64>> {
        let f = self.flow();
        let bounds: Vec<(i64, i64)> = f
            .default_s_bounds()
            .iter()
            .zip(y)
            .map(|(&(lo, hi), &v)| if lo <= v && v <= hi { (v, v) } else { (1, 0) })
            .collect();
        if bounds.iter().any(|&(lo, hi)| lo > hi) || y.iter().sum::<i64>() != self.gamma {
            return None;
        }
        match feasible_m_flow(&f.problem(&bounds, false)).ok()? {
            FlowOutcome::Flow(z) => Some(z),
            FlowOutcome::Violating(_) => None,
        }
    }
}

impl MembershipOracle for SemiMatchingOracle {
    fn ground_size(&self) -> usize {
        self.p.s
    }

    fn contains(&self, y: &[i64]) -> bool {
        self.realize(y).is_some()
    }

    fn initial_member(&self) -> Option<IntVec> {
        let f = self.flow();
        let fp = f.problem(&f.default_s_bounds(), false);
        match feasible_m_flow(&fp).ok()? {
            FlowOutcome::Flow(z) => Some(f.solution(&fp, &z).degrees),
            FlowOutcome::Violating(_) => None,
        }
    }
}

/// The target `|F|`: given, implied by exact `T`-degrees, or the largest
/// feasible value.
fn semimatching_gamma(p: &SemiMatchingProblem) -> Result<i64> {
    if let Some(g) = p.gamma {
        return Ok(g);
    }
    if let Some(m) = p.exact_t() {
        return Ok(m.iter().sum());
    }
    // Circulate through a return arc τ → σ rewarded per unit.
    let f = SemiFlow { p, gamma: 0 };
    let mut fp = f.problem(&f.default_s_bounds(), false);
    let (sigma, tau) = (p.s + p.t, p.s + p.t + 1);
    let back = fp.add_arc(tau, sigma, 0, p.total_cap(), -1);
    match min_cost_flow(&fp) {
        Ok((z, _)) => Ok(z[back]),
        Err(Error::Infeasible { witness, .. }) => Err(infeasible_semimatching(p, witness)),
        Err(e) => Err(e),
    }
}

fn infeasible_semimatching(p: &SemiMatchingProblem, witness: Vec<usize>) -> Error {
    Error::infeasible(
        "no subgraph meets the degree specification",
        witness.into_iter().filter(|&v| v < p.s + p.t).collect(),
    )
}

fn semimatching_handle(p: &SemiMatchingProblem) -> Result<(Arc<SemiMatchingOracle>, BaseHandle)> {
    p.validate()?;
    let gamma = semimatching_gamma(p)?;
    let oracle = Arc::new(SemiMatchingOracle { p: p.clone(), gamma });
    if oracle.initial_member().is_none() {
        let f = oracle.flow();
        let witness = match feasible_m_flow(&f.problem(&f.default_s_bounds(), false))? {
            FlowOutcome::Violating(x) => x,
            FlowOutcome::Flow(_) => vec![],
        };
        return Err(infeasible_semimatching(p, witness));
    }
    Ok((oracle.clone(), BaseHandle::from_membership(oracle)))
}

/// Graph on `S ∪ T` (nodes `0..s`, then `s..s+t`); an edge in `F` is oriented
/// toward `S`, so `ϱ(s) = d_F(s)` and `ϱ(t) = d_G(t) − d_F(t)`.
fn semimatching_graph(p: &SemiMatchingProblem) -> Result<(Graph, Bounds)> {
    let mut g = Graph::new(p.s + p.t);
    for e in &p.edges {
        g.add_edge(Edge {
            cost_uv: 0,
            cost_vu: e.cost,
            ..Edge::new(e.s, p.s + e.t)
        })?;
    }
    let deg = g.degrees();
    let m_t = p.exact_t().expect("orientation route needs exact T-degrees");
    let (slo, shi) = p
        .bounds_s
        .clone()
        .unwrap_or_else(|| (vec![0; p.s], vec![NO_UPPER; p.s]));
    let mut lower = slo;
    let mut upper = shi;
    for t in 0..p.t {
        lower.push(deg[p.s + t] - m_t[t]);
        upper.push(deg[p.s + t] - m_t[t]);
    }
    Ok((g, Bounds::new(lower, upper)?))
}

/// Solves the problem as a `T`-specified orientation problem; needs unit
/// capacities and exact `T`-degrees.
pub fn semimatching_via_orientation(p: &SemiMatchingProblem) -> Result<SemiMatching> {
    p.validate()?;
    if p.edges.iter().any(|e| e.cap != 1) || p.exact_t().is_none() || p.gamma.is_some() {
        return Err(Error::invalid(
            "the orientation route needs unit capacities and exact T-degrees",
        ));
    }
    let (g, b) = semimatching_graph(p)?;
    let o = if p.has_costs() {
        cheapest_decmin_orientation_bounded(&g, &b)?
    } else {
        decmin_orientation_bounded(&g, &b)?
    };
    let z: Vec<i64> = o.forward.iter().map(|&f| (!f) as i64).collect();
    let mut degrees = vec![0; p.s];
    for (e, &x) in p.edges.iter().zip(&z) {
        degrees[e.s] += x;
    }
    let cost = p.edges.iter().zip(&z).map(|(e, x)| e.cost * x).sum();
    Ok(SemiMatching { z, degrees, cost })
}

/// Subgraph meeting the specification whose `S`-degree vector is dec-min,
/// cheapest among those when edges carry costs. Uses the orientation route
/// when it applies and the flow-backed M-convex set otherwise.
pub fn decmin_semimatching(p: &SemiMatchingProblem) -> Result<SemiMatching> {
    p.validate()?;
    if p.edges.iter().all(|e| e.cap == 1) && p.exact_t().is_some() && p.gamma.is_none() {
        return semimatching_via_orientation(p);
    }
    semimatching_via_flow(p)
}

/// Flow-backed route: dec-min `S`-degree vector by the basic algorithm on the
/// membership oracle, then the cheapest subgraph realizing any dec-min vector.
pub fn semimatching_via_flow(p: &SemiMatchingProblem) -> Result<SemiMatching> {
    let (oracle, handle) = semimatching_handle(p)?;
    let y = decmin(&handle)?;
    let f = oracle.flow();
    if !p.has_costs() {
        let z = oracle.realize(&y).ok_or(Error::Empty)?;
        let fp = f.problem(&y.iter().map(|&v| (v, v)).collect::<Vec<_>>(), false);
        return Ok(f.solution(&fp, &z));
    }
    // The dec-min vectors are those in the small box of the canonical blocks
    // with every block total fixed; one min-cost flow over that set.
    let d = canonical_from_decmin(&handle, &y)?;
    let (slo, shi): (Vec<i64>, Vec<i64>) = f.default_s_bounds().into_iter().unzip();
    let mut fp = f.problem(&vec![(0, 0); p.s], true);
    let sigma = p.s + p.t;
    let first_s_arc = p.edges.len();
    let hub0 = fp.n;
    fp.n += d.len();
    fp.demand.resize(fp.n, 0);
    for (i, block) in d.partition.iter().enumerate() {
        let total: i64 = block.iter().map(|&s| y[s]).sum();
        fp.add_arc(sigma, hub0 + i, total, total, 0);
        for &s in block {
            let a = first_s_arc + s;
            // Re-route σ → s through the block hub.
            fp.arcs[a] = (hub0 + i, s);
            fp.lower[a] = slo[s].max(d.betas[i] - 1).max(0);
            fp.upper[a] = shi[s].min(d.betas[i]);
        }
    }
    let (z, _) = min_cost_flow(&fp)?;
    Ok(f.solution(&fp, &z))
}

/// `Σ d_F(s)(d_F(s) + 1)`, the load-balancing objective.
pub fn harvey_objective(degrees: &[i64]) -> i64 {
    degrees.iter().map(|d| d * (d + 1)).sum()
}

/// Every multiplicity vector meeting the specification, by enumeration.
pub fn brute_semimatchings(p: &SemiMatchingProblem) -> Result<Vec<SemiMatching>> {
    p.validate()?;
    let slots: u64 = p.edges.iter().map(|e| (e.cap + 1) as u64).product();
    if slots > 1 << 16 {
        return Err(Error::CeilingExceeded {
            what: "semi-matching candidates",
            actual: slots,
            limit: 1 << 16,
        });
    }
    let gamma = match (p.gamma, p.exact_t()) {
        (Some(g), _) => Some(g),
        (None, Some(m)) => Some(m.iter().sum()),
        _ => None,
    };
    let (tl, tu) = p.t_bounds();
    let (slo, shi) = p
        .bounds_s
        .clone()
        .unwrap_or_else(|| (vec![0; p.s], vec![NO_UPPER; p.s]));
    let mut out = vec![];
    let mut z = vec![0; p.edges.len()];
    loop {
        let mut ds = vec![0; p.s];
        let mut dt = vec![0; p.t];
        for (e, &x) in p.edges.iter().zip(&z) {
            ds[e.s] += x;
            dt[e.t] += x;
        }
        let total: i64 = z.iter().sum();
        let ok = gamma.is_none_or(|g| g == total)
            && (0..p.s).all(|s| slo[s] <= ds[s] && ds[s] <= shi[s])
            && (0..p.t).all(|t| tl[t] <= dt[t] && dt[t] <= tu[t]);
        if ok {
            let cost = p.edges.iter().zip(&z).map(|(e, x)| e.cost * x).sum();
            out.push(SemiMatching {
                z: z.clone(),
                degrees: ds,
                cost,
            });
        }
        let mut i = 0;
        while i < z.len() {
            if z[i] < p.edges[i].cap {
                z[i] += 1;
                break;
            }
            z[i] = 0;
            i += 1;
        }
        if i == z.len() {
            break;
        }
    }
    if gamma.is_none() {
        let best = out.iter().map(|f| f.z.iter().sum::<i64>()).max();
        out.retain(|f| Some(f.z.iter().sum::<i64>()) == best);
    }
    Ok(out)
}

/// Flow from `sources` to `sinks` with capacities on the arcs; nodes outside
/// both sets conserve flow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MegiddoProblem {
    pub n: usize,
    pub arcs: Vec<(usize, usize, i64)>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    /// Flow amount; the maximum when absent.
    #[serde(default)]
    pub amount: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MegiddoFlow {
    pub flow: Vec<i64>,
    /// Net out-flow of every source, in the order given.
    pub out_flow: IntVec,
    pub amount: i64,
}

impl MegiddoProblem {
    /// Parses `p megiddo n m`, `a u v cap` lines, `S: …` and `T: …` node
    /// lists and an optional `M amount` line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut declared = 0;
        let mut arcs = vec![];
        let mut sources = vec![];
        let mut sinks = vec![];
        let mut amount = None;
        for (lineno, line) in text.lines().enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let num = |s: &str| s.parse::<i64>().map_err(|_| bad(&format!("bad number {s:?}")));
            let nodes = |ts: &[&str]| -> Result<Vec<usize>> {
                ts.iter().map(|t| num(t).map(|v| v as usize)).collect()
            };
            match toks.first().copied() {
                None | Some("c") | Some("#") => {}
                Some("p") if toks.len() == 4 && toks[1] == "megiddo" => {
                    n = Some(num(toks[2])? as usize);
                    declared = num(toks[3])? as usize;
                }
                Some("a") if toks.len() == 4 => {
                    let (u, v, c) = (num(toks[1])?, num(toks[2])?, num(toks[3])?);
                    if u < 0 || v < 0 || c < 0 {
                        return Err(bad("negative arc data"));
                    }
                    arcs.push((u as usize, v as usize, c));
                }
                Some("S:") => sources = nodes(&toks[1..])?,
                Some("T:") => sinks = nodes(&toks[1..])?,
                Some("M") if toks.len() == 2 => amount = Some(num(toks[1])?),
                _ => return Err(bad("unrecognized line")),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `p megiddo` header".into()))?;
        if arcs.len() != declared {
            return Err(Error::Parse(format!(
                "header declares {declared} arcs, found {}",
                arcs.len()
            )));
        }
        let p = MegiddoProblem {
            n,
            arcs,
            sources,
            sinks,
            amount,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.arcs.iter().any(|&(u, v, c)| u >= n || v >= n || c < 0) {
            return Err(Error::invalid("arc out of range or with negative capacity"));
        }
        let mut role = vec![0u8; n];
        for (list, mark) in [(&self.sources, 1u8), (&self.sinks, 2u8)] {
            for &v in list {
                if v >= n || role[v] != 0 {
                    return Err(Error::invalid("sources and sinks must be distinct nodes in range"));
                }
                role[v] = mark;
            }
        }
        if self.sources.is_empty() || self.sinks.is_empty() {
            return Err(Error::invalid("need at least one source and one sink"));
        }
        Ok(())
    }

    /// Flow problem with source `σ = n` and sink `τ = n + 1`; arc ids: the
    /// input arcs, then `σ → s` per source, then `t → τ` per sink.
    fn problem(&self, amount: i64, out: &[(i64, i64)]) -> FlowProblem {
        let mut fp = FlowProblem::new(self.n + 2);
        let (sigma, tau) = (self.n, self.n + 1);
        for &(u, v, c) in &self.arcs {
            fp.add_arc(u, v, 0, c, 0);
        }
        for (&s, &(lo, hi)) in self.sources.iter().zip(out) {
            fp.add_arc(sigma, s, lo, hi, 0);
        }
        for &t in &self.sinks {
            fp.add_arc(t, tau, 0, amount, 0);
        }
        fp.demand[sigma] = -amount;
        fp.demand[tau] = amount;
        fp
    }

    pub fn max_amount(&self) -> Result<i64> {
        let mut d = Digraph::new(self.n + 2);
        let cap: i64 = self.arcs.iter().map(|a| a.2).sum();
        for &(u, v, c) in &self.arcs {
            d.add_arc(u, v, c);
        }
        for &s in &self.sources {
            d.add_arc(self.n, s, cap);
        }
        for &t in &self.sinks {
            d.add_arc(t, self.n + 1, cap);
        }
        Ok(max_flow(&d, self.n, self.n + 1)?.value)
    }
}

/// Out-flow vectors of the integral flows of a fixed amount.
#[derive(Clone, Debug)]
pub struct MegiddoOracle {
    p: MegiddoProblem,
    amount: i64,
}

impl MegiddoOracle {
    fn realize(&self, y: &[i64]) -> Option<Vec<i64>> {
        if y.iter().any(|&v| v < 0) || y.iter().sum::<i64>() != self.amount {
            return None;
        }
        let out: Vec<(i64, i64)> = y.iter().map(|&v| (v, v)).collect();
        match feasible_m_flow(&self.p.problem(self.amount, &out)).ok()? {
            FlowOutcome::Flow(z) => Some(z),
            FlowOutcome::Violating(_) => None,
        }
    }
}

impl MembershipOracle for MegiddoOracle {
    fn ground_size(&self) -> usize {
        self.p.sources.len()
    }

    fn contains(&self, y: &[i64]) -> bool {
        self.realize(y).is_some()
    }

    fn initial_member(&self) -> Option<IntVec> {
        let out = vec![(0, self.amount); self.p.sources.len()];
        let fp = self.p.problem(self.amount, &out);
        match feasible_m_flow(&fp).ok()? {
            FlowOutcome::Flow(z) => Some(z[self.p.arcs.len()..self.p.arcs.len() + self.p.sources.len()].to_vec()),
            FlowOutcome::Violating(_) => None,
        }
    }
}

/// Integral flow of the requested amount whose source out-flows are dec-min,
/// so that the net-in-flows on the sources are inc-max.
pub fn megiddo_discrete(p: &MegiddoProblem) -> Result<MegiddoFlow> {
    p.validate()?;
    let max = p.max_amount()?;
    let amount = p.amount.unwrap_or(max);
    if amount < 0 {
        return Err(Error::invalid("negative flow amount"));
    }
    if amount > max {
        return Err(Error::infeasible(
            format!("amount {amount} exceeds the maximum flow {max}"),
            p.sources.clone(),
        ));
    }
    let oracle = Arc::new(MegiddoOracle {
        p: p.clone(),
        amount,
    });
    let y = decmin(&BaseHandle::from_membership(oracle.clone()))?;
    let z = oracle.realize(&y).ok_or(Error::Empty)?;
    Ok(MegiddoFlow {
        flow: z[..p.arcs.len()].to_vec(),
        out_flow: y,
        amount,
    })
}

/// Dec-min root vector of `k` arc-disjoint spanning arborescences: `m ≥ 0`,
/// `m̃(V) = k` and `m̃(X) ≥ k − ϱ(X)` for every non-empty `X`.
pub fn decmin_root_vector(n: usize, arcs: &[(usize, usize)], k: i64) -> Result<IntVec> {
    if k < 1 {
        return Err(Error::invalid("k must be positive"));
    }
    if arcs.iter().any(|&(u, v)| u >= n || v >= n) {
        return Err(Error::invalid("arc endpoint out of range"));
    }
    let p = Arc::new(RootVectorFn::new(n, arcs, k)?);
    let b = BaseHandle::with_modularity(p, Modularity::Intersecting)?.with_box(Some(vec![0; n]), None)?;
    // Sets without entering arcs need k roots each, so two disjoint ones
    // rule out every root vector.
    let mut d = Digraph::new(n);
    for &(u, v) in arcs {
        d.add_arc(u, v, 1);
    }
    let ancestors: Vec<Vec<bool>> = (0..n).map(|v| d.reaching(v)).collect();
    for a in 0..n {
        for c in a + 1..n {
            if (0..n).all(|x| !(ancestors[a][x] && ancestors[c][x])) {
                let witness = (0..n).filter(|&x| ancestors[a][x] || ancestors[c][x]).collect();
                return Err(Error::infeasible(
                    "two disjoint node sets have no entering arcs",
                    witness,
                ));
            }
        }
    }
    match decmin(&b) {
        Err(Error::Empty) => Err(Error::infeasible(
            format!("the digraph has no {k} arc-disjoint spanning arborescences"),
            vec![],
        )),
        other => other,
    }
}

/// Edmonds' condition for a candidate root vector, by subset scan.
pub fn is_root_vector(n: usize, arcs: &[(usize, usize)], k: i64, m: &[i64]) -> Result<bool> {
    if m.len() != n || m.iter().any(|&x| x < 0) || m.iter().sum::<i64>() != k {
        return Ok(false);
    }
    if n > 20 {
        return Err(Error::CeilingExceeded {
            what: "nodes for root-vector scan",
            actual: n as u64,
            limit: 20,
        });
    }
    for x in 1u64..(1 << n) {
        let inside = |v: usize| x >> v & 1 == 1;
        let entering = arcs.iter().filter(|&&(u, v)| !inside(u) && inside(v)).count() as i64;
        let mx: i64 = (0..n).filter(|&v| inside(v)).map(|v| m[v]).sum();
        if mx < k - entering {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::value_equivalent;

    #[test]
    fn semimatching_examples() {
        let p = SemiMatchingProblem::simple(2, 1, &[(0, 0), (1, 0)]);
        let r = decmin_semimatching(&p).unwrap();
        assert!(value_equivalent(&r.degrees, &[1, 0]));
        let k22 = SemiMatchingProblem::simple(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(decmin_semimatching(&k22).unwrap().degrees, vec![1, 1]);
        let star = SemiMatchingProblem::simple(1, 2, &[(0, 0), (0, 1)]);
        assert_eq!(decmin_semimatching(&star).unwrap().degrees, vec![2]);
    }

    #[test]
    fn flow_route_agrees_on_examples() {
        let k22 = SemiMatchingProblem::simple(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(semimatching_via_flow(&k22).unwrap().degrees, vec![1, 1]);
        let mut p = SemiMatchingProblem::simple(2, 1, &[(0, 0), (1, 0)]);
        p.edges[0].cost = 3;
        let r = semimatching_via_flow(&p).unwrap();
        assert_eq!((r.degrees.clone(), r.cost), (vec![0, 1], 0));
        assert_eq!(semimatching_via_orientation(&p).unwrap().degrees, vec![0, 1]);
    }

    #[test]
    fn semimatching_capacities_and_cardinality() {
        let mut p = SemiMatchingProblem::simple(2, 1, &[(0, 0), (1, 0)]);
        p.edges[0].cap = 3;
        p.edges[1].cap = 1;
        p.m_t = Some(vec![4]);
        assert_eq!(decmin_semimatching(&p).unwrap().degrees, vec![3, 1]);
        let mut q = SemiMatchingProblem::simple(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        q.bounds_t = Some((vec![0, 0], vec![1, 1]));
        let r = decmin_semimatching(&q).unwrap();
        assert_eq!(r.z.iter().sum::<i64>(), 2);
        assert_eq!(r.degrees, vec![1, 1]);
        q.gamma = Some(1);
        assert!(value_equivalent(&decmin_semimatching(&q).unwrap().degrees, &[1, 0]));
    }

    #[test]
    fn infeasible_semimatching_has_witness() {
        let mut p = SemiMatchingProblem::simple(1, 2, &[(0, 0), (0, 1)]);
        p.bounds_s = Some((vec![0], vec![1]));
        assert!(matches!(decmin_semimatching(&p), Err(Error::Infeasible { .. })));
    }

    fn two_sources(double: bool) -> MegiddoProblem {
        let mut arcs = vec![(0, 2, 1), (1, 2, 1)];
        if double {
            arcs.push((0, 2, 1));
        }
        MegiddoProblem {
            n: 3,
            arcs,
            sources: vec![0, 1],
            sinks: vec![2],
            amount: Some(2),
        }
    }

    #[test]
    fn megiddo_examples() {
        assert_eq!(megiddo_discrete(&two_sources(false)).unwrap().out_flow, vec![1, 1]);
        assert_eq!(megiddo_discrete(&two_sources(true)).unwrap().out_flow, vec![1, 1]);
        let mut zero = two_sources(false);
        zero.amount = Some(0);
        let r = megiddo_discrete(&zero).unwrap();
        assert!(r.flow.iter().all(|&x| x == 0));
        let mut over = two_sources(false);
        over.amount = Some(3);
        assert!(matches!(megiddo_discrete(&over), Err(Error::Infeasible { .. })));
        let parsed = MegiddoProblem::parse("p megiddo 3 2\na 0 2 1\na 1 2 1\nS: 0 1\nT: 2\nM 2\n").unwrap();
        assert_eq!(parsed, two_sources(false));
    }

    #[test]
    fn root_vector_examples() {
        let cycle = [(0, 1), (1, 2), (2, 0)];
        let m = decmin_root_vector(3, &cycle, 1).unwrap();
        assert!(value_equivalent(&m, &[1, 0, 0]));
        assert!(matches!(decmin_root_vector(2, &[], 1), Err(Error::Infeasible { .. })));
        let doubled = [(0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (2, 0)];
        let m = decmin_root_vector(3, &doubled, 2).unwrap();
        assert!(value_equivalent(&m, &[1, 1, 0]));
        assert!(is_root_vector(3, &doubled, 2, &m).unwrap());
    }
}
