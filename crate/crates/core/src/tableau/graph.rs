//! Completion graphs and the ALCQ expansion rules.
//!
//! Every label entry, edge and distinctness pair records the branch points it
//! depends on. A clash carries the union of the dependencies involved, and the
//! search backjumps over branch points that did not contribute to it.
//!
//! Rule order per round: unfolding, `⊓` and `∀` to saturation, then choose,
//! `≤` merging, `⊔`, and finally `≥` generation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::concept::{CId, ConceptPool, Nnf};
use crate::model::Individual;

pub(crate) type NodeId = usize;

/// Branch points an entry depends on.
pub(crate) type Deps = BTreeSet<u32>;

const MAX_BRANCHES: usize = 5_000_000;

fn union(a: &Deps, b: &Deps) -> Deps {
    a.union(b).copied().collect()
}

/// The TBox after absorption: `A ⊑ C` axioms with a named left side are
/// unfolded lazily, everything else is internalised into every node.
#[derive(Debug, Clone)]
pub(crate) struct CompiledTbox {
    pub pool: ConceptPool,
    pub unfold: HashMap<String, Vec<CId>>,
    pub general: Vec<CId>,
}

#[derive(Debug, Clone)]
pub(crate) struct Edge {
    pub role: String,
    pub target: NodeId,
    pub deps: Deps,
}

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub label: BTreeMap<CId, Deps>,
    pub parent: Option<NodeId>,
    pub named: bool,
    pub alive: bool,
    pub succ: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Open,
    Direct,
    Indirect,
}

#[derive(Debug, Clone)]
pub(crate) struct Graph {
    pub nodes: Vec<Node>,
    pub names: BTreeMap<Individual, NodeId>,
    distinct: BTreeMap<(NodeId, NodeId), Deps>,
    forward: Vec<NodeId>,
    clash: Option<Deps>,
}

fn ordered(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph {
            nodes: Vec::new(),
            names: BTreeMap::new(),
            distinct: BTreeMap::new(),
            forward: Vec::new(),
            clash: None,
        }
    }

    fn raise(&mut self, deps: Deps) {
        if self.clash.is_none() {
            self.clash = Some(deps);
        }
    }

    fn new_node(&mut self, tb: &CompiledTbox, named: bool, parent: Option<NodeId>, deps: &Deps) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(Node { label: BTreeMap::new(), parent, named, alive: true, succ: Vec::new() });
        self.forward.push(id);
        for &c in &tb.general {
            self.add_with(tb, id, c, deps.clone());
        }
        id
    }

    pub fn individual(&mut self, tb: &CompiledTbox, ind: &Individual) -> NodeId {
        if let Some(&n) = self.names.get(ind) {
            return self.find(n);
        }
        let n = self.new_node(tb, true, None, &Deps::new());
        self.names.insert(ind.clone(), n);
        n
    }

    /// The live node `ind` was merged into, if the individual is present.
    pub fn node_of(&self, ind: &Individual) -> Option<NodeId> {
        self.names.get(ind).map(|&n| self.find(n))
    }

    pub fn find(&self, mut n: NodeId) -> NodeId {
        while self.forward[n] != n {
            n = self.forward[n];
        }
        n
    }

    pub fn add(&mut self, tb: &CompiledTbox, x: NodeId, c: CId) -> bool {
        self.add_with(tb, x, c, Deps::new())
    }

    fn add_with(&mut self, tb: &CompiledTbox, x: NodeId, c: CId, deps: Deps) -> bool {
        if self.nodes[x].label.contains_key(&c) {
            return false;
        }
        if matches!(tb.pool.get(c), Nnf::Bottom) {
            self.raise(deps.clone());
        } else if let Some(other) = self.nodes[x].label.get(&tb.pool.neg(c)) {
            let d = union(&deps, other);
            self.raise(d);
        }
        self.nodes[x].label.insert(c, deps);
        true
    }

    pub fn add_edge(&mut self, x: NodeId, role: &str, y: NodeId) {
        self.add_edge_with(x, role, y, Deps::new());
    }

    fn add_edge_with(&mut self, x: NodeId, role: &str, y: NodeId, deps: Deps) {
        if !self.has_edge(x, role, y) {
            self.nodes[x].succ.push(Edge { role: role.to_string(), target: y, deps });
        }
    }

    pub fn has_edge(&self, x: NodeId, role: &str, y: NodeId) -> bool {
        self.nodes[x].succ.iter().any(|e| e.role == role && e.target == y)
    }

    pub fn set_distinct(&mut self, x: NodeId, y: NodeId) {
        self.set_distinct_with(x, y, Deps::new());
    }

    fn set_distinct_with(&mut self, x: NodeId, y: NodeId, deps: Deps) {
        if x == y {
            self.raise(deps);
        } else {
            self.distinct.entry(ordered(x, y)).or_insert(deps);
        }
    }

    fn distinct_deps(&self, x: NodeId, y: NodeId) -> Option<&Deps> {
        self.distinct.get(&ordered(x, y))
    }

    /// Live `role`-successors of `x` with the dependencies of the edge.
    fn successors(&self, x: NodeId, role: &str) -> Vec<(NodeId, &Deps)> {
        let mut out: Vec<(NodeId, &Deps)> = self.nodes[x]
            .succ
            .iter()
            .filter(|e| e.role == role && self.nodes[e.target].alive)
            .map(|e| (e.target, &e.deps))
            .collect();
        out.sort_unstable_by_key(|p| p.0);
        out
    }

    fn successors_with(&self, x: NodeId, role: &str, c: CId) -> Vec<(NodeId, &Deps)> {
        self.successors(x, role).into_iter().filter(|(y, _)| self.nodes[*y].label.contains_key(&c)).collect()
    }

    /// Dependencies of an `≤`-concept entry together with the successors it
    /// counts: their edges, their filler entries and their distinctness.
    fn at_most_deps(&self, entry: &Deps, with: &[(NodeId, &Deps)], c: CId) -> Deps {
        let mut d = entry.clone();
        for (i, (y, ed)) in with.iter().enumerate() {
            d.extend(ed.iter().copied());
            d.extend(self.nodes[*y].label[&c].iter().copied());
            for (z, _) in &with[i + 1..] {
                if let Some(dd) = self.distinct_deps(*y, *z) {
                    d.extend(dd.iter().copied());
                }
            }
        }
        d
    }

    /// Whether `k` members of `nodes` are pairwise distinct.
    fn has_distinct_clique(&self, nodes: &[NodeId], k: usize) -> bool {
        if k <= 1 {
            return nodes.len() >= k;
        }
        if nodes.len() < k {
            return false;
        }
        for (i, &n) in nodes.iter().enumerate() {
            let rest: Vec<NodeId> =
                nodes[i + 1..].iter().copied().filter(|&m| self.distinct_deps(n, m).is_some()).collect();
            if self.has_distinct_clique(&rest, k - 1) {
                return true;
            }
        }
        false
    }

    /// Removes `x` and its anonymous descendants.
    fn prune(&mut self, x: NodeId) {
        let mut doomed = vec![x];
        let mut i = 0;
        while i < doomed.len() {
            let n = doomed[i];
            for e in &self.nodes[n].succ {
                let t = &self.nodes[e.target];
                if !t.named && t.parent == Some(n) && t.alive {
                    doomed.push(e.target);
                }
            }
            i += 1;
        }
        let set: BTreeSet<NodeId> = doomed.into_iter().collect();
        for &n in &set {
            self.nodes[n].alive = false;
            self.nodes[n].succ.clear();
        }
        for node in self.nodes.iter_mut().filter(|n| n.alive) {
            node.succ.retain(|e| !set.contains(&e.target));
        }
        self.distinct.retain(|(a, b), _| !set.contains(a) && !set.contains(b));
    }

    /// Merges node `from` into node `into` with no branch dependencies.
    pub fn merge(&mut self, tb: &CompiledTbox, from: NodeId, into: NodeId) {
        self.merge_with(tb, from, into, &Deps::new());
    }

    fn merge_with(&mut self, tb: &CompiledTbox, from: NodeId, into: NodeId, deps: &Deps) {
        if from == into {
            return;
        }
        if let Some(d) = self.distinct_deps(from, into) {
            let d = union(d, deps);
            self.raise(d);
            return;
        }
        let label: Vec<(CId, Deps)> = self.nodes[from].label.iter().map(|(c, d)| (*c, union(d, deps))).collect();
        for (c, d) in label {
            self.add_with(tb, into, c, d);
        }
        let outgoing = std::mem::take(&mut self.nodes[from].succ);
        for e in outgoing {
            if !self.nodes[e.target].alive {
                continue;
            }
            if !self.nodes[e.target].named && self.nodes[e.target].parent == Some(from) {
                self.prune(e.target);
            } else {
                let t = if e.target == from { into } else { e.target };
                self.add_edge_with(into, &e.role, t, union(&e.deps, deps));
            }
        }
        for w in 0..self.nodes.len() {
            if !self.nodes[w].alive || w == from {
                continue;
            }
            if self.nodes[w].succ.iter().any(|e| e.target == from) {
                let old = std::mem::take(&mut self.nodes[w].succ);
                for e in old {
                    if e.target == from {
                        self.add_edge_with(w, &e.role, into, union(&e.deps, deps));
                    } else {
                        self.add_edge_with(w, &e.role, e.target, e.deps);
                    }
                }
            }
        }
        let pairs: Vec<((NodeId, NodeId), Deps)> = self
            .distinct
            .iter()
            .filter(|((a, b), _)| *a == from || *b == from)
            .map(|(k, d)| (*k, d.clone()))
            .collect();
        for ((a, b), d) in pairs {
            self.distinct.remove(&(a, b));
            let other = if a == from { b } else { a };
            self.set_distinct_with(into, other, union(&d, deps));
        }
        self.nodes[from].alive = false;
        self.forward[from] = into;
    }

    fn blocking(&self) -> Vec<Block> {
        let mut out = vec![Block::Open; self.nodes.len()];
        for x in 0..self.nodes.len() {
            let node = &self.nodes[x];
            if !node.alive || node.named {
                continue;
            }
            let Some(p) = node.parent else { continue };
            if out[p] != Block::Open {
                out[x] = Block::Indirect;
                continue;
            }
            let mut anc = Some(p);
            while let Some(a) = anc {
                if self.nodes[a].named {
                    break;
                }
                if node.label.keys().all(|c| self.nodes[a].label.contains_key(c)) {
                    out[x] = Block::Direct;
                    break;
                }
                anc = self.nodes[a].parent;
            }
        }
        out
    }

    /// Applies the deterministic rules until nothing changes or a clash appears.
    fn saturate(&mut self, tb: &CompiledTbox) {
        loop {
            let mut changed = false;
            let blk = self.blocking();
            for (x, b) in blk.iter().enumerate() {
                if !self.nodes[x].alive || *b == Block::Indirect {
                    continue;
                }
                let label: Vec<(CId, Deps)> = self.nodes[x].label.iter().map(|(c, d)| (*c, d.clone())).collect();
                for (c, deps) in label {
                    match tb.pool.get(c) {
                        Nnf::Name(a) => {
                            for &d in tb.unfold.get(a).into_iter().flatten() {
                                changed |= self.add_with(tb, x, d, deps.clone());
                            }
                        }
                        Nnf::And(cs) => {
                            for &d in cs {
                                changed |= self.add_with(tb, x, d, deps.clone());
                            }
                        }
                        Nnf::Forall(r, d) => {
                            let targets: Vec<(NodeId, Deps)> =
                                self.successors(x, r).into_iter().map(|(y, ed)| (y, union(ed, &deps))).collect();
                            for (y, dd) in targets {
                                changed |= self.add_with(tb, y, *d, dd);
                            }
                        }
                        Nnf::AtMost(n, r, d) => {
                            let with = self.successors_with(x, r, *d);
                            let ids: Vec<NodeId> = with.iter().map(|p| p.0).collect();
                            if self.has_distinct_clique(&ids, *n as usize + 1) {
                                let dd = self.at_most_deps(&deps, &with, *d);
                                self.raise(dd);
                            }
                        }
                        _ => {}
                    }
                    if self.clash.is_some() {
                        return;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }
}

enum Step {
    /// Alternatives of a new branch point; `trigger` explains the failure
    /// when there are none.
    Branch { alts: Vec<Graph>, trigger: Deps },
    Generate { x: NodeId, n: u32, role: String, filler: CId, deps: Deps },
    Complete,
}

fn merge_pair(g: &Graph, y: NodeId, z: NodeId) -> (NodeId, NodeId) {
    match (g.nodes[y].named, g.nodes[z].named) {
        (false, true) => (y, z),
        (true, false) => (z, y),
        _ => (y.max(z), y.min(z)),
    }
}

/// The next nondeterministic or generating step. Alternatives are tagged
/// with branch point `b`.
fn next_step(g: &Graph, tb: &CompiledTbox, b: u32) -> Step {
    let blk = g.blocking();
    let active: Vec<NodeId> =
        (0..g.nodes.len()).filter(|&x| g.nodes[x].alive && blk[x] != Block::Indirect).collect();
    let tag = |d: &Deps| {
        let mut d = d.clone();
        d.insert(b);
        d
    };

    for &x in &active {
        for (&c, deps) in &g.nodes[x].label {
            if let Nnf::AtMost(_, r, d) = tb.pool.get(c) {
                let nd = tb.pool.neg(*d);
                for (y, ed) in g.successors(x, r) {
                    let l = &g.nodes[y].label;
                    if !l.contains_key(d) && !l.contains_key(&nd) {
                        let trigger = union(deps, ed);
                        let dd = tag(&trigger);
                        let mut yes = g.clone();
                        yes.add_with(tb, y, *d, dd.clone());
                        let mut no = g.clone();
                        no.add_with(tb, y, nd, dd);
                        return Step::Branch { alts: vec![yes, no], trigger };
                    }
                }
            }
        }
    }

    for &x in &active {
        for (&c, deps) in &g.nodes[x].label {
            if let Nnf::AtMost(n, r, d) = tb.pool.get(c) {
                let with = g.successors_with(x, r, *d);
                if with.len() > *n as usize {
                    let trigger = g.at_most_deps(deps, &with, *d);
                    let dd = tag(&trigger);
                    let mut alts = Vec::new();
                    for i in 0..with.len() {
                        for j in i + 1..with.len() {
                            let (y, z) = (with[i].0, with[j].0);
                            if g.distinct_deps(y, z).is_some() {
                                continue;
                            }
                            let (from, into) = merge_pair(g, y, z);
                            let mut alt = g.clone();
                            alt.merge_with(tb, from, into, &dd);
                            alts.push(alt);
                        }
                    }
                    return Step::Branch { alts, trigger };
                }
            }
        }
    }

    for &x in &active {
        for (&c, deps) in &g.nodes[x].label {
            if let Nnf::Or(cs) = tb.pool.get(c) {
                if cs.iter().any(|d| g.nodes[x].label.contains_key(d)) {
                    continue;
                }
                let dd = tag(deps);
                let alts = cs
                    .iter()
                    .map(|&d| {
                        let mut alt = g.clone();
                        alt.add_with(tb, x, d, dd.clone());
                        alt
                    })
                    .collect();
                return Step::Branch { alts, trigger: deps.clone() };
            }
        }
    }

    for &x in &active {
        if blk[x] != Block::Open {
            continue;
        }
        for (&c, deps) in &g.nodes[x].label {
            if let Nnf::AtLeast(n, r, d) = tb.pool.get(c) {
                let ids: Vec<NodeId> = g.successors_with(x, r, *d).iter().map(|p| p.0).collect();
                if !g.has_distinct_clique(&ids, *n as usize) {
                    return Step::Generate { x, n: *n, role: r.clone(), filler: *d, deps: deps.clone() };
                }
            }
        }
    }
    Step::Complete
}

struct Frame {
    branch: u32,
    alts: std::vec::IntoIter<Graph>,
    failure: Deps,
}

/// Searches for a clash-free complete expansion of `g`.
pub(crate) fn expand(tb: &CompiledTbox, g: Graph) -> Option<Graph> {
    let mut frames: Vec<Frame> = Vec::new();
    let mut next_branch = 0u32;
    let mut current = g;
    loop {
        assert!((next_branch as usize) < MAX_BRANCHES, "tableau search exceeded {MAX_BRANCHES} branch points");
        let mut failure = loop {
            if let Some(d) = current.clash.take() {
                break d;
            }
            current.saturate(tb);
            if let Some(d) = current.clash.take() {
                break d;
            }
            match next_step(&current, tb, next_branch) {
                Step::Branch { alts, trigger } => {
                    let branch = next_branch;
                    next_branch += 1;
                    if alts.is_empty() {
                        break trigger;
                    }
                    let mut alts = alts.into_iter();
                    current = alts.next().expect("non-empty");
                    frames.push(Frame { branch, alts, failure: Deps::new() });
                }
                Step::Generate { x, n, role, filler, deps } => {
                    let fresh: Vec<NodeId> = (0..n)
                        .map(|_| {
                            let y = current.new_node(tb, false, Some(x), &deps);
                            current.add_with(tb, y, filler, deps.clone());
                            current.add_edge_with(x, &role, y, deps.clone());
                            y
                        })
                        .collect();
                    for i in 0..fresh.len() {
                        for j in i + 1..fresh.len() {
                            current.set_distinct_with(fresh[i], fresh[j], deps.clone());
                        }
                    }
                }
                Step::Complete => return Some(current),
            }
        };
        // Backjump to the innermost branch point the clash depends on.
        loop {
            let frame = frames.last_mut()?;
            if !failure.contains(&frame.branch) {
                frames.pop();
                continue;
            }
            failure.remove(&frame.branch);
            frame.failure.extend(failure.iter().copied());
            if let Some(alt) = frame.alts.next() {
                current = alt;
                break;
            }
            let frame = frames.pop().expect("present");
            failure = frame.failure;
        }
    }
}
