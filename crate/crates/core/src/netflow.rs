//! Max-flow/min-cut, Menger path counting, feasible flows with lower bounds and
//! min-cost flows.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};

/// Stand-in for an unbounded capacity. Large enough for every instance this crate
/// builds, small enough that sums of a few thousand never overflow.
pub const INF_CAP: i64 = 1 << 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub cap: i64,
    pub cost: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Digraph {
    pub n: usize,
    pub arcs: Vec<Arc>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { n, arcs: Vec::new() }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        self.add_arc_with_cost(from, to, cap, 0)
    }

    pub fn add_arc_with_cost(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        assert!(from < self.n && to < self.n, "arc endpoint out of range");
        self.arcs.push(Arc { from, to, cap, cost });
        self.arcs.len() - 1
    }

    /// Number of arcs entering each node.
    pub fn in_degrees(&self) -> Vec<i64> {
        let mut d = vec![0; self.n];
        for a in &self.arcs {
            d[a.to] += 1;
        }
        d
    }

    /// Number of arcs entering the node set given by `mask`.
    pub fn in_degree_of(&self, mask: &[bool]) -> i64 {
        self.arcs
            .iter()
            .filter(|a| mask[a.to] && !mask[a.from])
            .count() as i64
    }

    /// Nodes that can reach `t` along arcs.
    pub fn reaching(&self, t: usize) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.n];
        for a in &self.arcs {
            rev[a.to].push(a.from);
        }
        let mut seen = vec![false; self.n];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for &u in &rev[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// Residual network with paired forward/backward edges (`e ^ 1` is the partner).
#[derive(Clone, Debug)]
pub(crate) struct Network {
    n: usize,
    head: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    pub(crate) fn new(n: usize) -> Self {
        Network {
            n,
            head: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub(crate) fn add(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let e = self.head.len();
        self.head.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[u].push(e);
        self.head.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
        self.adj[v].push(e + 1);
        e
    }

    /// Flow currently on forward edge `e`.
    pub(crate) fn flow(&self, e: usize) -> i64 {
        self.cap[e + 1]
    }

    /// Edmonds–Karp; stops once `limit` units have been pushed.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        let mut pred = vec![usize::MAX; self.n];
        while total < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.head[e];
                    if self.cap[e] > 0 && v != s && pred[v] == usize::MAX {
                        pred[v] = e;
                        if v == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut bottleneck = limit - total;
            let mut v = t;
            while v != s {
                let e = pred[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.head[e ^ 1];
            }
            total += bottleneck;
        }
        total
    }

    /// Nodes reachable from `s` in the residual network.
    pub(crate) fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Successive shortest paths with Dijkstra potentials. Requires every edge with
    /// positive residual capacity to have non-negative cost on entry.
    fn min_cost_flow(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let mut potential = vec![0i64; self.n];
        let mut flow = 0;
        let mut cost = 0;
        while flow < limit {
            let mut dist = vec![i64::MAX; self.n];
            let mut pred = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut heap = BinaryHeap::from([Reverse((0i64, s))]);
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &e in &self.adj[u] {
                    if self.cap[e] <= 0 {
                        continue;
                    }
                    let v = self.head[e];
                    let nd = d + self.cost[e] + potential[u] - potential[v];
                    if nd < dist[v] {
                        dist[v] = nd;
                        pred[v] = e;
                        heap.push(Reverse((nd, v)));
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            for v in 0..self.n {
                if dist[v] != i64::MAX {
                    potential[v] += dist[v];
                }
            }
            let mut bottleneck = limit - flow;
            let mut v = t;
            while v != s {
                let e = pred[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                cost += bottleneck * self.cost[e];
                v = self.head[e ^ 1];
            }
            flow += bottleneck;
        }
        (flow, cost)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: i64,
    /// Flow per arc of the input digraph.
    pub flow: Vec<i64>,
    /// Source side of a minimum cut (the smallest one).
    pub source_side: Vec<bool>,
}

impl MaxFlow {
    pub fn cut_capacity(&self, d: &Digraph) -> i64 {
        d.arcs
            .iter()
            .filter(|a| self.source_side[a.from] && !self.source_side[a.to])
            .map(|a| a.cap)
            .sum()
    }
}

pub fn max_flow(d: &Digraph, s: usize, t: usize) -> Result<MaxFlow> {
    if s == t {
        return Err(Error::invalid("source equals sink"));
    }
    if s >= d.n || t >= d.n {
        return Err(Error::invalid("terminal out of range"));
    }
    let mut net = Network::new(d.n);
    let ids: Vec<usize> = d
        .arcs
        .iter()
        .map(|a| {
            if a.cap < 0 {
                return Err(Error::invalid("negative capacity"));
            }
            Ok(net.add(a.from, a.to, a.cap, 0))
        })
        .collect::<Result<_>>()?;
    let value = net.max_flow(s, t, i64::MAX);
    Ok(MaxFlow {
        value,
        flow: ids.iter().map(|&e| net.flow(e)).collect(),
        source_side: net.residual_reach(s),
    })
}

/// Whether `k` arc-disjoint `s`-`t` dipaths exist; every arc counts as one unit.
pub fn arc_disjoint_paths_at_least(d: &Digraph, s: usize, t: usize, k: usize) -> bool {
    if k == 0 || s == t {
        return true;
    }
    let mut net = Network::new(d.n);
    for a in &d.arcs {
        net.add(a.from, a.to, 1, 0);
    }
    net.max_flow(s, t, k as i64) >= k as i64
}

/// Arc bounds and a target net-in-flow `demand` (in-flow minus out-flow) per node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlowProblem {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub cost: Vec<i64>,
    pub demand: Vec<i64>,
}

impl FlowProblem {
    pub fn new(n: usize) -> Self {
        FlowProblem {
            n,
            demand: vec![0; n],
            ..Default::default()
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, upper: i64, cost: i64) -> usize {
        assert!(from < self.n && to < self.n, "arc endpoint out of range");
        self.arcs.push((from, to));
        self.lower.push(lower);
        self.upper.push(upper);
        self.cost.push(cost);
        self.arcs.len() - 1
    }

    pub fn net_in_flow(&self, z: &[i64]) -> Vec<i64> {
        let mut psi = vec![0; self.n];
        for (&(u, v), &x) in self.arcs.iter().zip(z) {
            psi[v] += x;
            psi[u] -= x;
        }
        psi
    }

    /// `ϱ_f(Z) − δ_g(Z)` for the node set `mask`.
    pub fn lower_bound_of(&self, mask: &[bool]) -> i64 {
        let mut total = 0;
        for (i, &(u, v)) in self.arcs.iter().enumerate() {
            if mask[v] && !mask[u] {
                total += self.lower[i];
            } else if mask[u] && !mask[v] {
                total -= self.upper[i];
            }
        }
        total
    }

    pub fn is_feasible_flow(&self, z: &[i64]) -> bool {
        z.len() == self.arcs.len()
            && z
                .iter()
                .enumerate()
                .all(|(i, &x)| self.lower[i] <= x && x <= self.upper[i])
            && self.net_in_flow(z) == self.demand
    }

    pub fn flow_cost(&self, z: &[i64]) -> i64 {
        z.iter().zip(&self.cost).map(|(x, c)| x * c).sum()
    }

    fn validate(&self) -> Result<()> {
        if self.demand.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: self.demand.len(),
            });
        }
        let m = self.arcs.len();
        if self.lower.len() != m || self.upper.len() != m || self.cost.len() != m {
            return Err(Error::invalid("arc attribute lengths differ"));
        }
        if self.lower.iter().zip(&self.upper).any(|(l, u)| l > u) {
            return Err(Error::invalid("lower bound exceeds upper bound"));
        }
        if self.demand.iter().sum::<i64>() != 0 {
            return Err(Error::invalid("net-in-flow targets do not sum to zero"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowOutcome {
    Flow(Vec<i64>),
    /// A node set maximizing `ϱ_f(Z) − δ_g(Z) − m̃(Z)`, which is positive.
    Violating(Vec<usize>),
}

/// Shifts lower bounds to zero (and saturates negative-cost arcs when `saturate`)
/// and attaches a super source and sink carrying the node excesses.
struct Reduced {
    net: Network,
    ids: Vec<usize>,
    base: Vec<i64>,
    source: usize,
    sink: usize,
    required: i64,
}

fn reduce(p: &FlowProblem, saturate: bool) -> Reduced {
    let n = p.n;
    let mut net = Network::new(n + 2);
    let (source, sink) = (n, n + 1);
    let mut base = p.lower.clone();
    let mut ids = Vec::with_capacity(p.arcs.len());
    for (i, &(u, v)) in p.arcs.iter().enumerate() {
        let room = p.upper[i] - p.lower[i];
        if saturate && p.cost[i] < 0 {
            base[i] = p.upper[i];
            let e = net.add(u, v, 0, p.cost[i]);
            net.cap[e + 1] = room;
            ids.push(e);
        } else {
            ids.push(net.add(u, v, room, p.cost[i]));
        }
    }
    let psi = p.net_in_flow(&base);
    let mut required = 0;
    for v in 0..n {
        let excess = p.demand[v] - psi[v];
        if excess < 0 {
            net.add(source, v, -excess, 0);
        } else if excess > 0 {
            net.add(v, sink, excess, 0);
            required += excess;
        }
    }
    Reduced {
        net,
        ids,
        base,
        source,
        sink,
        required,
    }
}

impl Reduced {
    /// Arc flows of the original problem. A saturated arc's stored flow runs
    /// backwards from its upper bound.
    fn flows(&self, p: &FlowProblem, saturate: bool) -> Vec<i64> {
        self.ids
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                if saturate && p.cost[i] < 0 {
                    self.base[i] - self.net.cap[e]
                } else {
                    self.base[i] + self.net.flow(e)
                }
            })
            .collect()
    }
}

pub fn feasible_m_flow(p: &FlowProblem) -> Result<FlowOutcome> {
    p.validate()?;
    let mut r = reduce(p, false);
    let pushed = r.net.max_flow(r.source, r.sink, r.required);
    if pushed == r.required {
        return Ok(FlowOutcome::Flow(r.flows(p, false)));
    }
    let side = r.net.residual_reach(r.source);
    Ok(FlowOutcome::Violating((0..p.n).filter(|&v| side[v]).collect()))
}

/// Minimum-cost feasible flow and its cost.
pub fn min_cost_flow(p: &FlowProblem) -> Result<(Vec<i64>, i64)> {
    p.validate()?;
    let mut r = reduce(p, true);
    let (pushed, _) = r.net.min_cost_flow(r.source, r.sink, r.required);
    if pushed < r.required {
        let side = r.net.residual_reach(r.source);
        return Err(Error::infeasible(
            "no flow meets the bounds and net-in-flow targets",
            (0..p.n).filter(|&v| side[v]).collect(),
        ));
    }
    let z = r.flows(p, true);
    let cost = p.flow_cost(&z);
    Ok((z, cost))
}
