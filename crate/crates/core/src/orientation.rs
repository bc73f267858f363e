//! Orientations of undirected multigraphs with dec-min in-degree vectors.
//!
//! The in-degree vectors of the orientations of `G` are the integral points of
//! the base-polyhedron of `i_G`. Exchanges correspond to reversing dipaths, so
//! the solvers here work directly on the digraph instead of through the set
//! function.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::canonical::{decomposition_from_tight_sets, CanonicalDecomposition};
use crate::engine::strongly_poly_decmin;
use crate::error::{Error, Result};
use crate::netflow::{arc_disjoint_paths_at_least, feasible_m_flow, max_flow, min_cost_flow};
use crate::netflow::{Digraph, FlowOutcome, FlowProblem};
use crate::setfn::{graph_induced, SetFunction, NO_LOWER, NO_UPPER};
use crate::subset::{Subset, MAX_GROUND};
use crate::vector::IntVec;
use crate::BaseHandle;

/// One edge copy. `fixed` edges must be oriented `u → v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Capacity for the capacitated problem.
    pub ell: i64,
    /// Cost of orienting the edge `u → v`.
    pub cost_uv: i64,
    /// Cost of orienting the edge `v → u`.
    pub cost_vu: i64,
    pub fixed: bool,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Edge {
            u,
            v,
            ell: 1,
            cost_uv: 0,
            cost_vu: 0,
            fixed: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: vec![] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(Edge::new(u, v))?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<usize> {
        if e.u >= self.n || e.v >= self.n {
            return Err(Error::invalid(format!("edge {}-{} out of range", e.u, e.v)));
        }
        if e.u == e.v {
            return Err(Error::invalid(format!("loop at node {}", e.u)));
        }
        if e.ell < 1 {
            return Err(Error::invalid("edge capacity must be at least 1"));
        }
        self.edges.push(e);
        Ok(self.edges.len() - 1)
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn is_mixed(&self) -> bool {
        self.edges.iter().any(|e| e.fixed)
    }

    fn reject_mixed(&self) -> Result<()> {
        if self.is_mixed() {
            return Err(Error::invalid(
                "dec-min orientation of mixed graphs is not supported; pre-oriented arcs are only allowed for the min-cost routine",
            ));
        }
        Ok(())
    }

    /// The function `i_G` weighted by `ell`.
    pub fn induced_function(&self) -> Result<crate::setfn::CutFunction> {
        let edges: Vec<(usize, usize, i64)> = self.edges.iter().map(|e| (e.u, e.v, e.ell)).collect();
        graph_induced(self.n, &edges)
    }

    /// Parses `p orient n m` followed by `e u v [mult] [ell] [cost_uv cost_vu]`
    /// and `a u v` (pre-oriented arc) lines. Nodes are 0-based; `c` starts a
    /// comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut g: Option<Graph> = None;
        let mut declared = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let num = |s: &str| s.parse::<i64>().map_err(|_| bad(&format!("bad number {s:?}")));
            match toks.first().copied() {
                None | Some("c") | Some("#") => continue,
                Some("p") => {
                    if toks.len() != 4 || toks[1] != "orient" {
                        return Err(bad("expected `p orient n m`"));
                    }
                    g = Some(Graph::new(num(toks[2])? as usize));
                    declared = num(toks[3])? as usize;
                }
                Some(kind @ ("e" | "a")) => {
                    let g = g.as_mut().ok_or_else(|| bad("edge before header"))?;
                    if toks.len() < 3 {
                        return Err(bad("edge needs two endpoints"));
                    }
                    let (u, v) = (num(toks[1])?, num(toks[2])?);
                    if u < 0 || v < 0 {
                        return Err(bad("negative node index"));
                    }
                    let rest: Vec<i64> = toks[3..].iter().map(|t| num(t)).collect::<Result<_>>()?;
                    if kind == "a" && !rest.is_empty() {
                        return Err(bad("arc lines take no attributes"));
                    }
                    if rest.len() > 4 || rest.len() == 3 {
                        return Err(bad("expected `e u v [mult] [ell] [cost_uv cost_vu]`"));
                    }
                    let mult = rest.first().copied().unwrap_or(1);
                    if mult < 1 {
                        return Err(bad("multiplicity must be positive"));
                    }
                    let mut e = Edge::new(u as usize, v as usize);
                    e.fixed = kind == "a";
                    if let Some(&ell) = rest.get(1) {
                        e.ell = ell;
                    }
                    if rest.len() == 4 {
                        e.cost_uv = rest[2];
                        e.cost_vu = rest[3];
                    }
                    for _ in 0..mult {
                        g.add_edge(e.clone()).map_err(|err| bad(&err.to_string()))?;
                    }
                }
                Some(other) => return Err(bad(&format!("unknown line type {other:?}"))),
            }
        }
        let g = g.ok_or_else(|| Error::Parse("missing `p orient` header".into()))?;
        if declared != g.edges.len() {
            return Err(Error::Parse(format!(
                "header declares {declared} edges, found {}",
                g.edges.len()
            )));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p orient {} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            if e.fixed {
                let _ = writeln!(out, "a {} {}", e.u, e.v);
            } else {
                let _ = writeln!(out, "e {} {} 1 {} {} {}", e.u, e.v, e.ell, e.cost_uv, e.cost_vu);
            }
        }
        out
    }
}

/// Node bounds `f ≤ ϱ ≤ g`; `NO_LOWER`/`NO_UPPER` mark missing sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl Bounds {
    pub fn free(n: usize) -> Self {
        Bounds {
            lower: vec![NO_LOWER; n],
            upper: vec![NO_UPPER; n],
        }
    }

    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::LengthMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(f, g)| f > g) {
            return Err(Error::invalid("lower bound exceeds upper bound"));
        }
        Ok(Bounds { lower, upper })
    }

    pub fn exact(m: &[i64]) -> Self {
        Bounds {
            lower: m.to_vec(),
            upper: m.to_vec(),
        }
    }

    /// Parses `b v f g` lines; `-` leaves a side open. Unlisted nodes are free.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut b = Bounds::free(n);
        for (lineno, line) in text.lines().enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            match toks.first().copied() {
                None | Some("c") | Some("#") => continue,
                Some("b") if toks.len() == 4 => {
                    let v: usize = toks[1].parse().map_err(|_| bad("bad node"))?;
                    if v >= n {
                        return Err(bad("node out of range"));
                    }
                    let side = |s: &str, open: i64| -> Result<i64> {
                        if s == "-" {
                            Ok(open)
                        } else {
                            s.parse().map_err(|_| bad(&format!("bad bound {s:?}")))
                        }
                    };
                    b.lower[v] = side(toks[2], NO_LOWER)?;
                    b.upper[v] = side(toks[3], NO_UPPER)?;
                    if b.lower[v] > b.upper[v] {
                        return Err(bad("lower bound exceeds upper bound"));
                    }
                }
                _ => return Err(bad("expected `b v f g`")),
            }
        }
        Ok(b)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.lower.len(),
            });
        }
        Ok(())
    }
}

/// Direction of every edge copy: `forward[e]` means `u → v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub forward: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationReport {
    pub arcs: Vec<(usize, usize)>,
    pub indeg: Vec<i64>,
}

impl Orientation {
    /// Every edge oriented as listed.
    pub fn as_listed(g: &Graph) -> Self {
        Orientation {
            forward: vec![true; g.edges.len()],
        }
    }

    pub fn arc(&self, g: &Graph, e: usize) -> (usize, usize) {
        let ed = &g.edges[e];
        if self.forward[e] {
            (ed.u, ed.v)
        } else {
            (ed.v, ed.u)
        }
    }

    pub fn indeg(&self, g: &Graph) -> IntVec {
        let mut d = vec![0; g.n];
        for e in 0..g.edges.len() {
            d[self.arc(g, e).1] += 1;
        }
        d
    }

    pub fn cost(&self, g: &Graph) -> i64 {
        g.edges
            .iter()
            .zip(&self.forward)
            .map(|(e, &f)| if f { e.cost_uv } else { e.cost_vu })
            .sum()
    }

    pub fn digraph(&self, g: &Graph) -> Digraph {
        let mut d = Digraph::new(g.n);
        for e in 0..g.edges.len() {
            let (a, b) = self.arc(g, e);
            d.add_arc(a, b, 1);
        }
        d
    }

    pub fn report(&self, g: &Graph) -> OrientationReport {
        OrientationReport {
            arcs: (0..g.edges.len()).map(|e| self.arc(g, e)).collect(),
            indeg: self.indeg(g),
        }
    }

    pub fn respects_fixed(&self, g: &Graph) -> bool {
        g.edges.iter().zip(&self.forward).all(|(e, &f)| !e.fixed || f)
    }
}

/// Working state for path reversals over the non-fixed edges.
struct Reorienter<'a> {
    g: &'a Graph,
    fwd: Vec<bool>,
    movable: Vec<bool>,
    indeg: Vec<i64>,
    /// `(edge, other end)` pairs per node.
    adj: Vec<Vec<(usize, usize)>>,
}

impl<'a> Reorienter<'a> {
    fn new(g: &'a Graph, o: &Orientation, movable: Vec<bool>) -> Self {
        let mut adj = vec![vec![]; g.n];
        for (i, e) in g.edges.iter().enumerate() {
            adj[e.u].push((i, e.v));
            adj[e.v].push((i, e.u));
        }
        Reorienter {
            g,
            indeg: o.indeg(g),
            fwd: o.forward.clone(),
            movable,
            adj,
        }
    }

    fn head(&self, e: usize) -> usize {
        let ed = &self.g.edges[e];
        if self.fwd[e] {
            ed.v
        } else {
            ed.u
        }
    }

    fn orientation(&self) -> Orientation {
        Orientation {
            forward: self.fwd.clone(),
        }
    }

    /// Nodes with a dipath of movable arcs to `t` (including `t`).
    fn reaching(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.g.n];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(x) = queue.pop_front() {
            for &(e, y) in &self.adj[x] {
                if self.movable[e] && self.head(e) == x && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Reverses a shortest dipath of movable arcs from `s` to `t`.
    fn reverse_path(&mut self, s: usize, t: usize) -> bool {
        let mut pred: Vec<Option<usize>> = vec![None; self.g.n];
        let mut seen = vec![false; self.g.n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &(e, y) in &self.adj[x] {
                if self.movable[e] && self.head(e) == y && !seen[y] {
                    seen[y] = true;
                    pred[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] || s == t {
            return false;
        }
        let mut x = t;
        while x != s {
            let e = pred[x].unwrap();
            let ed = &self.g.edges[e];
            let tail = if ed.u == x { ed.v } else { ed.u };
            self.fwd[e] = !self.fwd[e];
            x = tail;
        }
        self.indeg[s] += 1;
        self.indeg[t] -= 1;
        true
    }

    fn movable_digraph(&self) -> Digraph {
        let mut d = Digraph::new(self.g.n);
        for e in 0..self.g.edges.len() {
            if self.movable[e] {
                let h = self.head(e);
                let ed = &self.g.edges[e];
                let tail = if h == ed.v { ed.u } else { ed.v };
                d.add_arc(tail, h, 1);
            }
        }
        d
    }

    /// An improving pair `(s, t)`: a dipath from `s` to `t` (or `k + 1`
    /// arc-disjoint ones when `k > 0`) with `ϱ(t) ≥ ϱ(s) + 2`, `ϱ(s) < g(s)`
    /// and `ϱ(t) > f(t)`. Tries the largest `ϱ(t)` first, then the smallest `ϱ(s)`.
    fn improving_pair(&self, b: &Bounds, k: usize) -> Option<(usize, usize)> {
        let n = self.g.n;
        let mut ts: Vec<usize> = (0..n).filter(|&t| self.indeg[t] > b.lower[t]).collect();
        ts.sort_by_key(|&t| (-self.indeg[t], t));
        let lowest = (0..n).map(|v| self.indeg[v]).min().unwrap_or(0);
        let digraph = (k > 0).then(|| self.movable_digraph());
        for t in ts {
            if self.indeg[t] < lowest + 2 {
                break;
            }
            let reach = self.reaching(t);
            let mut ss: Vec<usize> = (0..n)
                .filter(|&s| {
                    reach[s]
                        && s != t
                        && self.indeg[s] + 2 <= self.indeg[t]
                        && self.indeg[s] < b.upper[s]
                })
                .collect();
            ss.sort_by_key(|&s| (self.indeg[s], s));
            for s in ss {
                match &digraph {
                    None => return Some((s, t)),
                    Some(d) => {
                        if arc_disjoint_paths_at_least(d, s, t, k + 1) {
                            return Some((s, t));
                        }
                    }
                }
            }
        }
        None
    }

    fn improve(&mut self, b: &Bounds, k: usize) {
        while let Some((s, t)) = self.improving_pair(b, k) {
            let moved = self.reverse_path(s, t);
            debug_assert!(moved);
        }
    }
}

/// An improving dipath of `o`, as its end pair `(s, t)`; `None` iff `o` is
/// dec-min among the `(f, g)`-bounded orientations (that keep `k`-arc-connectivity
/// when `k > 0`).
pub fn improving_pair(g: &Graph, o: &Orientation, b: &Bounds, k: usize) -> Result<Option<(usize, usize)>> {
    b.check(g.n)?;
    let movable = g.edges.iter().map(|e| !e.fixed).collect();
    Ok(Reorienter::new(g, o, movable).improving_pair(b, k))
}

fn in_bounds(indeg: &[i64], b: &Bounds) -> bool {
    (0..indeg.len()).all(|v| b.lower[v] <= indeg[v] && indeg[v] <= b.upper[v])
}

/// Orientation within the bounds honoring fixed edges, of least cost when
/// `with_costs`; found by one flow computation.
fn flow_orientation(g: &Graph, b: &Bounds, with_costs: bool) -> Result<Orientation> {
    b.check(g.n)?;
    let n = g.n;
    let deg = g.degrees();
    let mut fixed_in = vec![0; n];
    let mut free_deg = vec![0; n];
    for e in &g.edges {
        if e.fixed {
            fixed_in[e.v] += 1;
        } else {
            free_deg[e.u] += 1;
            free_deg[e.v] += 1;
        }
    }
    let free: Vec<usize> = (0..g.edges.len()).filter(|&e| !g.edges[e].fixed).collect();
    let hub = n + free.len();
    let mut p = FlowProblem::new(hub + 1);
    let mut into_v = vec![0; g.edges.len()];
    for (j, &e) in free.iter().enumerate() {
        let ed = &g.edges[e];
        let x = n + j;
        p.demand[x] = -1;
        into_v[e] = p.add_arc(x, ed.v, 0, 1, ed.cost_uv);
        p.add_arc(x, ed.u, 0, 1, ed.cost_vu);
    }
    for v in 0..n {
        let lo = b.lower[v].max(0).max(fixed_in[v]) - fixed_in[v];
        let hi = b.upper[v].min(deg[v]) - fixed_in[v];
        if lo > hi || hi < 0 {
            return Err(Error::infeasible(
                format!("no orientation meets the bounds at node {v}"),
                vec![v],
            ));
        }
        p.add_arc(v, hub, lo, hi.min(free_deg[v]).max(lo), 0);
    }
    p.demand[hub] = free.len() as i64;
    let z = if with_costs {
        min_cost_flow(&p)
            .map_err(|err| match err {
                Error::Infeasible { witness, .. } => Error::infeasible(
                    "no orientation meets the bounds",
                    witness.into_iter().filter(|&v| v < n).collect(),
                ),
                other => other,
            })?
            .0
    } else {
        match feasible_m_flow(&p)? {
            FlowOutcome::Flow(z) => z,
            FlowOutcome::Violating(x) => {
                return Err(Error::infeasible(
                    "no orientation meets the bounds",
                    x.into_iter().filter(|&v| v < n).collect(),
                ))
            }
        }
    };
    let mut forward = vec![true; g.edges.len()];
    for &e in &free {
        forward[e] = z[into_v[e]] == 1;
    }
    let o = Orientation { forward };
    if !in_bounds(&o.indeg(g), b) {
        return Err(Error::infeasible("no orientation meets the bounds", vec![]));
    }
    Ok(o)
}

/// Orientation with in-degree vector `m`. When none exists the error carries a
/// set `X` with `i_G(X) > m̃(X)`.
pub fn orient_with_indegrees(g: &Graph, m: &[i64]) -> Result<Orientation> {
    if m.len() != g.n {
        return Err(Error::LengthMismatch {
            expected: g.n,
            got: m.len(),
        });
    }
    if m.iter().sum::<i64>() != g.edges.len() as i64 {
        return Err(Error::infeasible(
            "in-degrees must sum to the number of edges",
            (0..g.n).collect(),
        ));
    }
    let mut plain = g.clone();
    for e in &mut plain.edges {
        e.fixed = false;
        e.ell = 1;
    }
    match flow_orientation(&plain, &Bounds::exact(m), false) {
        Ok(o) => Ok(o),
        Err(Error::Infeasible { witness, .. }) => {
            let witness = if g.n <= MAX_GROUND {
                let p = plain.induced_function()?;
                let r = p
                    .maximize_shifted(m, Subset::EMPTY, Subset::full(g.n))
                    .ok_or(Error::Empty)?;
                r.set.to_vec()
            } else {
                witness
            };
            Err(Error::infeasible(
                "some node set induces more edges than its in-degree total",
                witness,
            ))
        }
        Err(e) => Err(e),
    }
}

/// Dec-min orientation.
pub fn decmin_orientation(g: &Graph) -> Result<Orientation> {
    g.reject_mixed()?;
    let o = Orientation::as_listed(g);
    let mut r = Reorienter::new(g, &o, vec![true; g.edges.len()]);
    r.improve(&Bounds::free(g.n), 0);
    Ok(r.orientation())
}

/// Dec-min orientation among those with `f ≤ ϱ ≤ g`.
pub fn decmin_orientation_bounded(g: &Graph, b: &Bounds) -> Result<Orientation> {
    g.reject_mixed()?;
    let o = flow_orientation(g, b, false)?;
    let mut r = Reorienter::new(g, &o, vec![true; g.edges.len()]);
    r.improve(b, 0);
    Ok(r.orientation())
}

/// Smallest tight set of every node for the in-degree vector of `o`: the nodes
/// with a dipath to it, cut down by the bounds.
fn reach_tight_sets(g: &Graph, o: &Orientation, b: &Bounds) -> Vec<Vec<bool>> {
    let r = Reorienter::new(g, o, g.edges.iter().map(|e| !e.fixed).collect());
    (0..g.n)
        .map(|t| {
            let mut set = vec![false; g.n];
            set[t] = true;
            if r.indeg[t] > b.lower[t] {
                let reach = r.reaching(t);
                for v in 0..g.n {
                    if reach[v] && r.indeg[v] < b.upper[v] {
                        set[v] = true;
                    }
                }
            }
            set
        })
        .collect()
}

/// Canonical decomposition of the in-degree vectors of the `(f, g)`-bounded
/// orientations, read off a dec-min orientation by reachability.
pub fn orientation_canonical(g: &Graph, o: &Orientation, b: &Bounds) -> Result<CanonicalDecomposition> {
    b.check(g.n)?;
    let m = o.indeg(g);
    if !in_bounds(&m, b) {
        return Err(Error::invalid("orientation violates the bounds"));
    }
    if let Some((s, t)) = improving_pair(g, o, b, 0)? {
        return Err(Error::NotDecMin { s, t });
    }
    Ok(decomposition_from_tight_sets(&m, &reach_tight_sets(g, o, b)))
}

/// Least-cost orientation honoring fixed edges and the bounds.
pub fn min_cost_orientation(g: &Graph, b: &Bounds) -> Result<Orientation> {
    flow_orientation(g, b, true)
}

/// Cheapest dec-min `(f, g)`-bounded orientation.
///
/// Let `Z_i` be the nodes with a dipath (in one dec-min orientation) to a node
/// of `C_i` above its lower bound. No arc enters `Z_i`, nodes of `Z_i − C_i`
/// sit at their upper bound and nodes of `C_i − Z_i` at their lower bound, and
/// every dec-min orientation shares these properties. Together with the small
/// box of the canonical partition they describe all dec-min orientations, so
/// one min-cost flow finishes the job.
pub fn cheapest_decmin_orientation_bounded(g: &Graph, b: &Bounds) -> Result<Orientation> {
    g.reject_mixed()?;
    let d = decmin_orientation_bounded(g, b)?;
    let dec = orientation_canonical(g, &d, b)?;
    let m = d.indeg(g);
    let r = Reorienter::new(g, &d, vec![true; g.edges.len()]);
    let n = g.n;
    let block_of = dec.block_of();
    let mut small = Bounds {
        lower: (0..n)
            .map(|v| b.lower[v].max(dec.betas[block_of[v]] - 1))
            .collect(),
        upper: (0..n).map(|v| b.upper[v].min(dec.betas[block_of[v]])).collect(),
    };
    let mut toward: Vec<Option<bool>> = vec![None; g.edges.len()];
    for chain in &dec.chain {
        let mut inside = vec![false; n];
        for &v in chain {
            inside[v] = true;
        }
        let mut z = vec![false; n];
        for t in (0..n).filter(|&t| inside[t] && m[t] > b.lower[t]) {
            for (v, hit) in r.reaching(t).into_iter().enumerate() {
                z[v] |= hit;
            }
        }
        for v in 0..n {
            if z[v] && !inside[v] {
                small.lower[v] = m[v];
            }
            if inside[v] && !z[v] {
                small.upper[v] = m[v];
            }
        }
        for (e, ed) in g.edges.iter().enumerate() {
            if z[ed.u] != z[ed.v] {
                toward[e] = Some(z[ed.u]);
            }
        }
    }
    let mut fixed = g.clone();
    for (e, dir) in toward.iter().enumerate() {
        if let Some(fwd) = *dir {
            let ed = &mut fixed.edges[e];
            if !fwd {
                std::mem::swap(&mut ed.u, &mut ed.v);
                std::mem::swap(&mut ed.cost_uv, &mut ed.cost_vu);
            }
            ed.fixed = true;
        }
    }
    let o = flow_orientation(&fixed, &small, true)?;
    let forward = o
        .forward
        .iter()
        .enumerate()
        .map(|(e, &f)| if toward[e] == Some(false) { !f } else { f })
        .collect();
    Ok(Orientation { forward })
}

/// Result of the in-degree-of-`T` minimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinTResult {
    pub orientation: Orientation,
    /// Nodes with a dipath to an element of `T` above its lower bound.
    pub x_t: Vec<usize>,
    pub bounds: Bounds,
}

/// Among the `(f, g)`-bounded orientations with least total in-degree on `T`,
/// a dec-min one.
pub fn decmin_orientation_min_t(g: &Graph, b: &Bounds, t_set: &[usize]) -> Result<MinTResult> {
    g.reject_mixed()?;
    let n = g.n;
    let mut in_t = vec![false; n];
    for &t in t_set {
        if t >= n {
            return Err(Error::invalid("node of T out of range"));
        }
        in_t[t] = true;
    }
    let o = flow_orientation(g, b, false)?;
    let mut r = Reorienter::new(g, &o, vec![true; g.edges.len()]);
    'outer: loop {
        for t in (0..n).filter(|&t| in_t[t] && r.indeg[t] > b.lower[t]) {
            let reach = r.reaching(t);
            if let Some(s) = (0..n).find(|&s| reach[s] && !in_t[s] && r.indeg[s] < b.upper[s]) {
                r.reverse_path(s, t);
                continue 'outer;
            }
        }
        break;
    }
    let mut x_t = vec![false; n];
    for t in (0..n).filter(|&t| in_t[t] && r.indeg[t] > b.lower[t]) {
        for (v, hit) in r.reaching(t).into_iter().enumerate() {
            x_t[v] |= hit;
        }
    }
    let mut nb = b.clone();
    for v in 0..n {
        if x_t[v] && !in_t[v] {
            nb.lower[v] = b.upper[v];
        }
        if in_t[v] && !x_t[v] {
            nb.upper[v] = b.lower[v];
        }
    }
    // Edges between X_T and the rest already leave X_T; they stay that way.
    let movable: Vec<bool> = g.edges.iter().map(|e| x_t[e.u] == x_t[e.v]).collect();
    let mut r2 = Reorienter::new(g, &r.orientation(), movable);
    r2.improve(&nb, 0);
    Ok(MinTResult {
        orientation: r2.orientation(),
        x_t: (0..n).filter(|&v| x_t[v]).collect(),
        bounds: nb,
    })
}

/// Whether every non-empty proper node set has at least `k` entering arcs.
pub fn is_k_arc_connected(g: &Graph, o: &Orientation, k: usize) -> bool {
    connectivity_deficiency(&o.digraph(g), g.n, k) == 0
}

fn connectivity_deficiency(d: &Digraph, n: usize, k: usize) -> usize {
    if k == 0 || n <= 1 {
        return 0;
    }
    let mut total = 0;
    for v in 1..n {
        for (s, t) in [(0, v), (v, 0)] {
            let f = max_flow(d, s, t).map(|f| f.value as usize).unwrap_or(0);
            total += k.saturating_sub(f);
        }
    }
    total
}

/// Largest number of edges a backtracking search will try.
pub const BACKTRACK_EDGE_LIMIT: usize = 24;

fn k_connected_start(g: &Graph, b: &Bounds, k: usize) -> Result<Orientation> {
    let n = g.n;
    // A set with fewer than 2k incident edges cannot get k arcs in and k out.
    if n > 1 {
        let mut und = Digraph::new(n);
        for e in &g.edges {
            und.add_arc(e.u, e.v, 1);
            und.add_arc(e.v, e.u, 1);
        }
        for v in 1..n {
            let f = max_flow(&und, 0, v)?;
            if f.value < 2 * k as i64 {
                let side: Vec<usize> = (0..n).filter(|&x| f.source_side[x]).collect();
                return Err(Error::infeasible(
                    format!("node set has {} incident edges, fewer than 2k = {}", f.value, 2 * k),
                    side,
                ));
            }
        }
    }
    let mut o = flow_orientation(g, b, false)?;
    let mut deficiency = connectivity_deficiency(&o.digraph(g), n, k);
    // Single reversals that keep the bounds, while they help.
    while deficiency > 0 {
        let indeg = o.indeg(g);
        let mut best: Option<(usize, usize)> = None;
        for e in 0..g.edges.len() {
            let (tail, head) = o.arc(g, e);
            if indeg[head] - 1 < b.lower[head] || indeg[tail] + 1 > b.upper[tail] {
                continue;
            }
            o.forward[e] = !o.forward[e];
            let d = connectivity_deficiency(&o.digraph(g), n, k);
            o.forward[e] = !o.forward[e];
            if d < deficiency && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, e));
            }
        }
        match best {
            Some((d, e)) => {
                o.forward[e] = !o.forward[e];
                deficiency = d;
            }
            None => break,
        }
    }
    if deficiency == 0 {
        return Ok(o);
    }
    if g.edges.len() > BACKTRACK_EDGE_LIMIT {
        return Err(Error::CeilingExceeded {
            what: "edges for orientation backtracking",
            actual: g.edges.len() as u64,
            limit: BACKTRACK_EDGE_LIMIT as u64,
        });
    }
    let mut forward = vec![true; g.edges.len()];
    let mut indeg = vec![0; n];
    let mut remaining = g.degrees();
    if backtrack(g, b, k, 0, &mut forward, &mut indeg, &mut remaining) {
        return Ok(Orientation { forward });
    }
    Err(Error::infeasible(
        format!("no {k}-arc-connected orientation meets the bounds"),
        vec![],
    ))
}

fn backtrack(
    g: &Graph,
    b: &Bounds,
    k: usize,
    e: usize,
    forward: &mut Vec<bool>,
    indeg: &mut Vec<i64>,
    remaining: &mut Vec<i64>,
) -> bool {
    if e == g.edges.len() {
        let o = Orientation {
            forward: forward.clone(),
        };
        return is_k_arc_connected(g, &o, k);
    }
    let ed = &g.edges[e];
    remaining[ed.u] -= 1;
    remaining[ed.v] -= 1;
    for fwd in [true, false] {
        let (tail, head) = if fwd { (ed.u, ed.v) } else { (ed.v, ed.u) };
        indeg[head] += 1;
        let ok = indeg[head] <= b.upper[head]
            && indeg[tail] + remaining[tail] >= b.lower[tail]
            && indeg[head] + remaining[head] >= b.lower[head];
        forward[e] = fwd;
        if ok && backtrack(g, b, k, e + 1, forward, indeg, remaining) {
            return true;
        }
        indeg[head] -= 1;
    }
    remaining[ed.u] += 1;
    remaining[ed.v] += 1;
    false
}

/// Dec-min orientation among the `k`-arc-connected `(f, g)`-bounded ones.
pub fn decmin_korient(g: &Graph, k: usize, b: &Bounds) -> Result<Orientation> {
    g.reject_mixed()?;
    b.check(g.n)?;
    if k == 0 {
        return decmin_orientation_bounded(g, b);
    }
    let o = k_connected_start(g, b, k)?;
    let mut r = Reorienter::new(g, &o, vec![true; g.edges.len()]);
    r.improve(b, k);
    Ok(r.orientation())
}

/// Integer orientation of a capacitated graph: `z[e]` units go `u → v` and
/// `ell − z[e]` go `v → u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacitatedOrientation {
    pub z: Vec<i64>,
    pub indeg: Vec<i64>,
}

/// Dec-min capacitated orientation, solved on the capacity-weighted `i_G`
/// without expanding edges into copies.
pub fn capacitated_decmin_orientation(g: &Graph) -> Result<CapacitatedOrientation> {
    g.reject_mixed()?;
    let p = std::sync::Arc::new(g.induced_function()?);
    let a = p.modular_part().to_vec();
    let handle = BaseHandle::new(p)?;
    let m = strongly_poly_decmin(&handle)?.m;
    // m = a + net-in-flow(z), with a(v) the capacity on listed edges leaving v.
    let mut fp = FlowProblem::new(g.n);
    for e in &g.edges {
        fp.add_arc(e.u, e.v, 0, e.ell, 0);
    }
    fp.demand = (0..g.n).map(|v| m[v] - a[v]).collect();
    match feasible_m_flow(&fp)? {
        FlowOutcome::Flow(z) => {
            let mut indeg = vec![0; g.n];
            for (e, &x) in g.edges.iter().zip(&z) {
                indeg[e.v] += x;
                indeg[e.u] += e.ell - x;
            }
            Ok(CapacitatedOrientation { z, indeg })
        }
        FlowOutcome::Violating(x) => Err(Error::infeasible(
            "dec-min vector has no realizing orientation",
            x,
        )),
    }
}

/// Graph with every capacitated edge replaced by `ell` unit copies.
pub fn expand_capacities(g: &Graph) -> Graph {
    let mut out = Graph::new(g.n);
    for e in &g.edges {
        for _ in 0..e.ell {
            let mut c = e.clone();
            c.ell = 1;
            out.edges.push(c);
        }
    }
    out
}

/// Every orientation of `g`, edges as listed being bit `e` of the counter.
pub fn all_orientations(g: &Graph) -> Result<impl Iterator<Item = Orientation> + '_> {
    let m = g.edges.len();
    if m > BACKTRACK_EDGE_LIMIT {
        return Err(Error::CeilingExceeded {
            what: "edges for orientation enumeration",
            actual: m as u64,
            limit: BACKTRACK_EDGE_LIMIT as u64,
        });
    }
    Ok((0..1u64 << m).map(move |mask| Orientation {
        forward: (0..m).map(|e| mask >> e & 1 == 0).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::value_equivalent;

    fn path() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn bounds(lower: Vec<i64>, upper: Vec<i64>) -> Bounds {
        Bounds::new(lower, upper).unwrap()
    }

    #[test]
    fn indegree_examples() {
        let g = path();
        assert_eq!(orient_with_indegrees(&g, &[0, 1, 1]).unwrap().indeg(&g), vec![0, 1, 1]);
        assert_eq!(orient_with_indegrees(&g, &[0, 2, 0]).unwrap().indeg(&g), vec![0, 2, 0]);
        match orient_with_indegrees(&g, &[2, 0, 0]) {
            Err(Error::Infeasible { witness, .. }) => assert_eq!(witness, vec![1, 2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn plain_examples() {
        for g in [cycle(4), cycle(3)] {
            let o = decmin_orientation(&g).unwrap();
            assert!(o.indeg(&g).iter().all(|&d| d == 1));
        }
        let o = decmin_orientation(&path()).unwrap();
        assert!(value_equivalent(&o.indeg(&path()), &[1, 1, 0]));
    }

    #[test]
    fn bounded_examples() {
        let g = path();
        let o = decmin_orientation_bounded(&g, &bounds(vec![0; 3], vec![1; 3])).unwrap();
        assert!(o.indeg(&g).iter().all(|&d| d <= 1));
        let o = decmin_orientation_bounded(&g, &bounds(vec![0, 2, 0], vec![2, 2, 2])).unwrap();
        assert_eq!(o.indeg(&g), vec![0, 2, 0]);
        let c = cycle(4);
        let o = decmin_orientation_bounded(&c, &bounds(vec![0; 4], vec![1; 4])).unwrap();
        assert_eq!(o.indeg(&c), vec![1; 4]);
        assert!(decmin_orientation_bounded(&g, &bounds(vec![2, 2, 0], vec![2, 2, 2])).is_err());
    }

    #[test]
    fn canonical_examples() {
        let c = cycle(4);
        let o = decmin_orientation(&c).unwrap();
        let d = orientation_canonical(&c, &o, &Bounds::free(4)).unwrap();
        assert_eq!((d.betas.clone(), d.chain.clone()), (vec![1], vec![vec![0, 1, 2, 3]]));
        let p = path();
        let o = decmin_orientation(&p).unwrap();
        let d = orientation_canonical(&p, &o, &Bounds::free(3)).unwrap();
        assert_eq!((d.betas.clone(), d.r.clone()), (vec![1], vec![2]));
    }

    #[test]
    fn cheapest_examples() {
        let mut g = path();
        g.edges[0].cost_uv = 1;
        let o = cheapest_decmin_orientation_bounded(&g, &Bounds::free(3)).unwrap();
        assert_eq!(o.cost(&g), 0);
        let mut c = cycle(4);
        c.edges[0].cost_uv = 5;
        let o = cheapest_decmin_orientation_bounded(&c, &Bounds::free(4)).unwrap();
        assert_eq!(o.cost(&c), 0);
        assert_eq!(o.indeg(&c), vec![1; 4]);
    }

    #[test]
    fn min_t_examples() {
        let g = path();
        let r = decmin_orientation_min_t(&g, &bounds(vec![0; 3], vec![2; 3]), &[1]).unwrap();
        assert_eq!(r.orientation.indeg(&g), vec![1, 0, 1]);
        let c = cycle(4);
        let r = decmin_orientation_min_t(&c, &Bounds::free(4), &[0]).unwrap();
        let m = r.orientation.indeg(&c);
        assert_eq!(m[0], 0);
        assert!(value_equivalent(&m, &[0, 1, 1, 2]));
    }

    #[test]
    fn k_connected_examples() {
        let c = cycle(4);
        let o = decmin_korient(&c, 1, &Bounds::free(4)).unwrap();
        assert_eq!(o.indeg(&c), vec![1; 4]);
        let mut doubled = cycle(4);
        let extra = doubled.edges.clone();
        doubled.edges.extend(extra);
        let o = decmin_korient(&doubled, 2, &Bounds::free(4)).unwrap();
        assert_eq!(o.indeg(&doubled), vec![2; 4]);
        assert!(is_k_arc_connected(&doubled, &o, 2));
        let dp = Graph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2)]).unwrap();
        assert!(decmin_korient(&dp, 1, &Bounds::free(3)).is_ok());
        let p = path();
        assert!(matches!(
            decmin_korient(&p, 1, &Bounds::free(3)),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn capacitated_examples() {
        let mut g = Graph::new(2);
        g.add_edge(Edge { ell: 5, ..Edge::new(0, 1) }).unwrap();
        let r = capacitated_decmin_orientation(&g).unwrap();
        assert!(value_equivalent(&r.indeg, &[3, 2]));
        g.edges[0].ell = 4;
        assert_eq!(capacitated_decmin_orientation(&g).unwrap().indeg, vec![2, 2]);
        let mut c = cycle(4);
        for e in &mut c.edges {
            e.ell = 2;
        }
        assert_eq!(capacitated_decmin_orientation(&c).unwrap().indeg, vec![2; 4]);
    }

    #[test]
    fn parse_round_trip() {
        let text = "c sample\np orient 3 3\ne 0 1 2\ne 1 2 1 3 4 5\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.edges.len(), 3);
        assert_eq!((g.edges[2].ell, g.edges[2].cost_uv, g.edges[2].cost_vu), (3, 4, 5));
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert!(Graph::parse("p orient 2 1\ne 0 0\n").is_err());
        assert!(Graph::parse("p orient 2 2\ne 0 1\n").is_err());
        let b = Bounds::parse("b 0 1 -\nb 2 - 3\n", 3).unwrap();
        assert_eq!(b.lower, vec![1, NO_LOWER, NO_LOWER]);
        assert_eq!(b.upper, vec![NO_UPPER, NO_UPPER, 3]);
    }

    #[test]
    fn mixed_graphs_rejected() {
        let g = Graph::parse("p orient 2 2\na 0 1\ne 0 1\n").unwrap();
        assert!(decmin_orientation(&g).is_err());
        let o = min_cost_orientation(&g, &Bounds::free(2)).unwrap();
        assert!(o.respects_fixed(&g));
    }
}
