use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use super::graph::{LazyGraph, Vertex};
use crate::error::{Error, Result};
use crate::glueing::{glue_one_sided, make_admissible, SumSpace};
use crate::limits::{InverseSystem, DEFAULT_WINDOW};
use crate::mutation::{self, Mutation};
use crate::space::FiniteSpace;
use crate::subset::{Subset, CAPACITY};

/// The ball `B_N` around the basepoint with distances and the induced edges.
#[derive(Clone, Debug)]
pub struct Exploration {
    graph: LazyGraph,
    horizon: usize,
    dist: BTreeMap<Vertex, usize>,
    adj: BTreeMap<Vertex, Vec<Vertex>>,
}

/// Breadth-first exploration to depth `horizon`, checking that every
/// neighbour relation met is symmetric.
pub fn explore(g: &LazyGraph, horizon: usize) -> Result<Exploration> {
    let mut dist = BTreeMap::new();
    let mut adj = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(g.basepoint(), 0);
    queue.push_back(g.basepoint());
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        let ns = g.neighbors(v);
        for &u in &ns {
            if !g.neighbors(u).contains(&v) {
                return Err(Error::Graph(format!("{} is a neighbour of {} but not conversely", g.label(u), g.label(v))));
            }
            if d < horizon && !dist.contains_key(&u) {
                dist.insert(u, d + 1);
                queue.push_back(u);
            }
        }
        adj.insert(v, ns);
    }
    for ns in adj.values_mut() {
        ns.retain(|u| dist.contains_key(u));
    }
    Ok(Exploration { graph: g.clone(), horizon, dist, adj })
}

/// One unbounded-candidate component of `B_N − K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Least member.
    pub id: Vertex,
    pub members: BTreeSet<Vertex>,
    /// Meets the sphere of radius `N`.
    pub escapes: bool,
}

/// Components of `B_N − K` for a removed set `K` (normally the ball `B_n`).
#[derive(Clone, Debug)]
pub struct ComponentStage {
    pub radius: usize,
    pub horizon: usize,
    pub removed: BTreeSet<Vertex>,
    pub components: Vec<Component>,
    owner: BTreeMap<Vertex, usize>,
}

impl Exploration {
    pub fn graph(&self) -> &LazyGraph {
        &self.graph
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn distance(&self, v: Vertex) -> Option<usize> {
        self.dist.get(&v).copied()
    }

    /// Vertices of `B_N` in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.dist.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn on_sphere(&self, v: Vertex) -> bool {
        self.dist.get(&v) == Some(&self.horizon)
    }

    pub fn ball(&self, n: usize) -> BTreeSet<Vertex> {
        self.dist.iter().filter(|&(_, &d)| d <= n).map(|(&v, _)| v).collect()
    }

    /// The stage for `K = B_n`.
    pub fn stage(&self, n: usize) -> Result<ComponentStage> {
        if n >= self.horizon {
            return Err(Error::Precondition(format!("radius {n} must be below the horizon {}", self.horizon)));
        }
        Ok(self.stage_without(n, self.ball(n)))
    }

    /// Components of `B_N − removed`, tagged with `radius`.
    pub fn stage_without(&self, radius: usize, removed: BTreeSet<Vertex>) -> ComponentStage {
        let rest: Vec<Vertex> = self.dist.keys().copied().filter(|v| !removed.contains(v)).collect();
        let pos: BTreeMap<Vertex, usize> = rest.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::<usize>::new(rest.len());
        for (i, v) in rest.iter().enumerate() {
            for u in &self.adj[v] {
                if let Some(&j) = pos.get(u) {
                    uf.union(i, j);
                }
            }
        }
        let force = mutation::is_active(Mutation::ForceEscapes);
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut components: Vec<Component> = Vec::new();
        // `rest` is sorted, so the first member met is the least.
        for (i, &v) in rest.iter().enumerate() {
            let root = uf.find_mut(i);
            let k = *by_root.entry(root).or_insert_with(|| {
                components.push(Component { id: v, members: BTreeSet::new(), escapes: force });
                components.len() - 1
            });
            components[k].members.insert(v);
            if self.on_sphere(v) {
                components[k].escapes = true;
            }
        }
        let owner = components.iter().enumerate().flat_map(|(k, c)| c.members.iter().map(move |&v| (v, k))).collect();
        ComponentStage { radius, horizon: self.horizon, removed, components, owner }
    }
}

impl ComponentStage {
    pub fn escaping(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.escapes)
    }

    pub fn escaping_ids(&self) -> Vec<Vertex> {
        self.escaping().map(|c| c.id).collect()
    }

    pub fn escaping_count(&self) -> usize {
        self.escaping().count()
    }

    pub fn component_of(&self, v: Vertex) -> Option<&Component> {
        self.owner.get(&v).map(|&k| &self.components[k])
    }

    pub fn component(&self, id: Vertex) -> Option<&Component> {
        self.component_of(id).filter(|c| c.id == id)
    }
}

/// Components of `B_N − B_n` for `N > n`.
pub fn stage_components(g: &LazyGraph, n: usize, horizon: usize) -> Result<ComponentStage> {
    explore(g, horizon)?.stage(n)
}

/// The bonding map from the escaping components of `fine` to those of
/// `coarse`: each goes to the coarse component containing it.
pub fn bonding(coarse: &ComponentStage, fine: &ComponentStage) -> Result<BTreeMap<Vertex, Vertex>> {
    if coarse.horizon != fine.horizon {
        return Err(Error::Precondition("bonded stages must share their horizon".into()));
    }
    if !coarse.removed.is_subset(&fine.removed) {
        return Err(Error::Precondition("the fine stage must remove at least what the coarse stage removes".into()));
    }
    let mut map = BTreeMap::new();
    for u in fine.escaping() {
        let target = coarse.component_of(u.id).ok_or_else(|| Error::Invariant(format!("{:?} lies in no coarse component", u.id)))?;
        if u.members.iter().any(|v| !target.members.contains(v)) {
            return Err(Error::Invariant(format!("fine component {:?} straddles coarse components", u.id)));
        }
        if !target.escapes {
            return Err(Error::Invariant(format!("escaping {:?} inside a bounded component", u.id)));
        }
        map.insert(u.id, target.id);
    }
    let hit: BTreeSet<&Vertex> = map.values().collect();
    if let Some(c) = coarse.escaping().find(|c| !hit.contains(&c.id)) {
        return Err(Error::Invariant(format!("coarse component {:?} receives no fine component", c.id)));
    }
    Ok(map)
}

/// Stages at increasing radii with their bonding maps (`bonds[k]` runs from
/// stage `k + 1` into stage `k`).
#[derive(Clone, Debug)]
pub struct EndApproximation {
    pub stages: Vec<ComponentStage>,
    pub bonds: Vec<BTreeMap<Vertex, Vertex>>,
}

pub fn approximate(g: &LazyGraph, radii: &[usize], horizon: usize) -> Result<EndApproximation> {
    if radii.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("radii must be nondecreasing".into()));
    }
    let ex = explore(g, horizon)?;
    let stages = radii.iter().map(|&n| ex.stage(n)).collect::<Result<Vec<_>>>()?;
    let bonds = stages.windows(2).map(|w| bonding(&w[0], &w[1])).collect::<Result<Vec<_>>>()?;
    Ok(EndApproximation { stages, bonds })
}

impl EndApproximation {
    /// Escaping components as an inverse system of finite sets.
    pub fn to_inverse_system(&self) -> InverseSystem {
        let ids: Vec<Vec<Vertex>> = self.stages.iter().map(|s| s.escaping_ids()).collect();
        let sizes = ids.iter().map(|v| v.len()).collect();
        let bonds = self
            .bonds
            .iter()
            .enumerate()
            .map(|(k, b)| {
                ids[k + 1].iter().map(|u| ids[k].iter().position(|c| *c == b[u]).expect("bond lands on an escaping component")).collect()
            })
            .collect();
        InverseSystem::new(sizes, bonds).expect("bonds are maps of escaping components")
    }

    /// Graphviz rendering: one rank per stage, bonds as fine-to-coarse edges.
    pub fn to_dot(&self, g: &LazyGraph) -> String {
        let node = |r: usize, v: Vertex| format!("\"r{r}:{}\"", g.label(v));
        let mut out = String::from("digraph ends {\n  rankdir=BT;\n");
        for s in &self.stages {
            let _ = write!(out, "  subgraph cluster_r{} {{\n    label=\"radius {}\";\n    rank=same;\n", s.radius, s.radius);
            for c in s.escaping() {
                let _ = writeln!(out, "    {} [label=\"{}\"];", node(s.radius, c.id), g.label(c.id));
            }
            out.push_str("  }\n");
        }
        for (k, b) in self.bonds.iter().enumerate() {
            let (lo, hi) = (self.stages[k].radius, self.stages[k + 1].radius);
            for (u, c) in b {
                let _ = writeln!(out, "  {} -> {};", node(hi, *u), node(lo, *c));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EndCount {
    pub count: usize,
    pub certified: bool,
    /// Escaping counts at radii `0..=depth`.
    pub counts: Vec<usize>,
}

/// Number of escaping components at `depth`, certified when the trailing
/// window of bonds is bijective or the graph's exact end count agrees.
pub fn end_count(g: &LazyGraph, depth: usize, horizon: usize) -> Result<EndCount> {
    if horizon <= depth {
        return Err(Error::Precondition("the horizon must exceed the depth".into()));
    }
    let radii: Vec<usize> = (0..=depth).collect();
    let approx = approximate(g, &radii, horizon)?;
    let sys = approx.to_inverse_system();
    let count = sys.sizes()[depth];
    let window = DEFAULT_WINDOW.min(depth);
    let stable = window > 0
        && (depth - window..depth).all(|k| {
            let b = sys.bond(k);
            let mut seen = vec![false; sys.sizes()[k]];
            b.iter().all(|&v| !std::mem::replace(&mut seen[v], true)) && seen.iter().all(|&s| s)
        });
    let certified = stable || g.exact_ends() == Some(count);
    Ok(EndCount { count, certified, counts: sys.sizes().to_vec() })
}

/// A closed set `F` of the graph with a finite description: an explicit
/// finite vertex set plus selected stage components `(radius, id)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FSet {
    pub finite: BTreeSet<Vertex>,
    pub components: BTreeSet<(usize, Vertex)>,
}

impl FSet {
    pub fn union(&self, other: &FSet) -> FSet {
        FSet {
            finite: self.finite.union(&other.finite).copied().collect(),
            components: self.components.union(&other.components).copied().collect(),
        }
    }
}

/// `f_K(F)` for `K = B_n`: the escaping components `U` such that `U ∩ F`
/// escapes to the horizon. Finite explicit sets are bounded and never do.
pub fn f_k_eval(ex: &Exploration, n: usize, f: &FSet) -> Result<BTreeSet<Vertex>> {
    let stage = ex.stage(n)?;
    let mut cache: BTreeMap<usize, ComponentStage> = BTreeMap::new();
    let mut reach = BTreeSet::new();
    for &(r, id) in &f.components {
        if !cache.contains_key(&r) {
            cache.insert(r, ex.stage(r)?);
        }
        let v = cache[&r].component(id).ok_or_else(|| Error::Graph(format!("no component {} at radius {r}", ex.graph().label(id))))?;
        if v.escapes {
            reach.extend(v.members.iter().copied().filter(|&u| ex.on_sphere(u)));
        }
    }
    Ok(stage.escaping().filter(|u| u.members.iter().any(|v| reach.contains(v))).map(|u| u.id).collect())
}

/// The finite model `B_N +_f E` of the stage compactification: `B_N`
/// discrete, `E` the escaping components, `f` sending each sphere vertex to
/// its component.
#[derive(Clone, Debug)]
pub struct StageModel {
    pub vertices: Vec<Vertex>,
    pub ends: Vec<Vertex>,
    pub ball: FiniteSpace,
    /// `None` when there are no escaping components.
    pub sum: Option<SumSpace>,
}

pub fn stage_space(g: &LazyGraph, n: usize, horizon: usize) -> Result<StageModel> {
    let ex = explore(g, horizon)?;
    let stage = ex.stage(n)?;
    let vertices: Vec<Vertex> = ex.vertices().collect();
    if vertices.len() > CAPACITY {
        return Err(Error::Capacity { needed: vertices.len(), cap: CAPACITY });
    }
    let ends = stage.escaping_ids();
    let ball = FiniteSpace::discrete_labeled(vertices.iter().map(|&v| g.label(v)).collect())?;
    if ends.is_empty() {
        return Ok(StageModel { vertices, ends, ball, sum: None });
    }
    if vertices.len() + ends.len() > CAPACITY {
        return Err(Error::Capacity { needed: vertices.len() + ends.len(), cap: CAPACITY });
    }
    let remainder = FiniteSpace::discrete_labeled(ends.iter().map(|&v| format!("end{}", g.label(v))).collect())?;
    let gen = vertices
        .iter()
        .map(|&v| match stage.component_of(v) {
            Some(c) if c.escapes && ex.on_sphere(v) => Subset::singleton(ends.iter().position(|&e| e == c.id).expect("escaping id")),
            _ => Subset::EMPTY,
        })
        .collect();
    let f = make_admissible(&ball, &remainder, gen)?;
    let sum = glue_one_sided(f)?;
    Ok(StageModel { vertices, ends, ball, sum: Some(sum) })
}

/// A proper map at stage level: escaping components of `g1 − j⁻¹(B_n)` to
/// components of `g2 − B_n`.
#[derive(Clone, Debug)]
pub struct ComponentMap {
    pub source: ComponentStage,
    pub target: ComponentStage,
    pub map: BTreeMap<Vertex, Vertex>,
}

const SEARCH_LIMIT: usize = 1 << 12;

/// Distance in `g` from the basepoint to `v`, searching at most `limit` levels.
fn distance_to(g: &LazyGraph, v: Vertex, limit: usize) -> Result<usize> {
    let mut seen = BTreeSet::from([g.basepoint()]);
    let mut frontier = vec![g.basepoint()];
    for d in 0..=limit {
        if frontier.contains(&v) {
            return Ok(d);
        }
        let mut next = Vec::new();
        for u in frontier {
            for w in g.neighbors(u) {
                if seen.insert(w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Err(Error::Graph(format!("{} is not within {limit} steps of the basepoint", g.label(v))))
}

/// Extend a graph map `j: g1 -> g2` (given on `B_N` of `g1`) to the stage
/// components for `K = B_n` in `g2`.
pub fn extend_proper_map(g1: &LazyGraph, g2: &LazyGraph, j: &dyn Fn(Vertex) -> Vertex, n: usize, horizon: usize) -> Result<ComponentMap> {
    let ex1 = explore(g1, horizon)?;
    let d0 = distance_to(g2, j(g1.basepoint()), SEARCH_LIMIT)?;
    let wide = explore(g2, d0 + horizon)?;
    let mut image_dist = BTreeMap::new();
    for v in ex1.vertices() {
        let jv = j(v);
        let d = wide.distance(jv).ok_or_else(|| Error::Graph(format!("j is not a graph map near {}", g1.label(v))))?;
        for &u in &ex1.adj[&v] {
            let ju = j(u);
            if ju != jv && !g2.neighbors(jv).contains(&ju) {
                return Err(Error::Graph(format!("j sends the edge {}-{} to non-adjacent vertices", g1.label(v), g1.label(u))));
            }
        }
        image_dist.insert(v, d);
    }
    let removed: BTreeSet<Vertex> = image_dist.iter().filter(|&(_, &d)| d <= n).map(|(&v, _)| v).collect();
    if let Some(v) = removed.iter().find(|&&v| ex1.on_sphere(v)) {
        return Err(Error::Properness(format!("{} reaches the horizon but maps into the ball of radius {n}", g1.label(*v))));
    }
    let h2 = image_dist.values().copied().max().unwrap_or(0);
    if h2 <= n {
        return Err(Error::Properness(format!("the image of the truncation stays inside the ball of radius {n}")));
    }
    let target = explore(g2, h2)?.stage(n)?;
    let source = ex1.stage_without(n, removed);
    let mut map = BTreeMap::new();
    for u in source.escaping() {
        let hits: BTreeSet<Vertex> = u
            .members
            .iter()
            .map(|&v| target.component_of(j(v)).map(|c| c.id))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Graph(format!("j sends part of {} into the removed ball", g1.label(u.id))))?;
        if hits.len() != 1 {
            return Err(Error::Graph(format!("j maps component {} into {} components", g1.label(u.id), hits.len())));
        }
        map.insert(u.id, *hits.iter().next().expect("one hit"));
    }
    Ok(ComponentMap { source, target, map })
}

/// The naturality square of the extension against bondings at radii
/// `n1 < n2` of `g2`.
pub fn extension_is_natural(
    g1: &LazyGraph,
    g2: &LazyGraph,
    j: &dyn Fn(Vertex) -> Vertex,
    n1: usize,
    n2: usize,
    horizon: usize,
) -> Result<bool> {
    let coarse = extend_proper_map(g1, g2, j, n1, horizon)?;
    let fine = extend_proper_map(g1, g2, j, n2, horizon)?;
    let down1 = bonding(&coarse.source, &fine.source)?;
    Ok(fine.map.iter().all(|(u, t)| {
        let via_source = coarse.map[&down1[u]];
        let via_target = coarse.target.component_of(*t).map(|c| c.id);
        via_target == Some(via_source)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_stage() {
        let s = stage_components(&LazyGraph::line(), 2, 10).unwrap();
        assert_eq!(s.escaping_ids(), vec![(-10, 0), (3, 0)]);
        let right = s.component((3, 0)).unwrap();
        assert_eq!(right.members.len(), 8);
    }

    #[test]
    fn tree_stage() {
        let s = stage_components(&LazyGraph::tree2(), 2, 10).unwrap();
        assert_eq!(s.escaping_count(), 8);
        let ids: Vec<i64> = s.escaping_ids().into_iter().map(|v| v.0).collect();
        assert_eq!(ids, (8..16).collect::<Vec<_>>());
    }

    #[test]
    fn finite_graph_past_its_diameter() {
        let g = LazyGraph::finite_from_json("p", r#"{"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(stage_components(&g, 3, 6).unwrap().escaping_count(), 0);
        let m = stage_space(&g, 3, 6).unwrap();
        assert!(m.sum.is_none());
        assert_eq!(m.ball.len(), 3);
    }

    #[test]
    fn asymmetric_graph_is_rejected() {
        let g = LazyGraph::new("bad", (0, 0), |(v, _)| vec![(v + 1, 0)], None);
        assert!(matches!(explore(&g, 3), Err(Error::Graph(_))));
    }

    #[test]
    fn bonding_examples() {
        let ex = explore(&LazyGraph::line(), 12).unwrap();
        let b = bonding(&ex.stage(1).unwrap(), &ex.stage(5).unwrap()).unwrap();
        assert_eq!(b.into_iter().collect::<Vec<_>>(), vec![((-12, 0), (-12, 0)), ((6, 0), (2, 0))]);
        let ex = explore(&LazyGraph::tree2(), 8).unwrap();
        let b = bonding(&ex.stage(1).unwrap(), &ex.stage(2).unwrap()).unwrap();
        assert_eq!(b.len(), 8);
        assert!(b.iter().all(|(u, c)| u.0 / 2 == c.0));
        let s = ex.stage(3).unwrap();
        let same = bonding(&s, &s).unwrap();
        assert!(same.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn end_counts() {
        let c = end_count(&LazyGraph::line(), 5, 25).unwrap();
        assert_eq!((c.count, c.certified), (2, true));
        let c = end_count(&LazyGraph::grid2(), 5, 25).unwrap();
        assert_eq!((c.count, c.certified), (1, true));
        let c = end_count(&LazyGraph::star(4), 3, 20).unwrap();
        assert_eq!((c.count, c.certified), (4, true));
        let c = end_count(&LazyGraph::tree2(), 4, 8).unwrap();
        assert_eq!((c.count, c.certified), (32, false));
    }

    #[test]
    fn f_k_examples() {
        let ex = explore(&LazyGraph::line(), 10).unwrap();
        assert!(f_k_eval(&ex, 2, &FSet::default()).unwrap().is_empty());
        let ray = FSet { components: BTreeSet::from([(0, (1, 0))]), ..FSet::default() };
        assert_eq!(f_k_eval(&ex, 2, &ray).unwrap(), BTreeSet::from([(3, 0)]));
        let finite = FSet { finite: (0..=10).map(|v| (v, 0)).collect(), ..FSet::default() };
        assert!(f_k_eval(&ex, 2, &finite).unwrap().is_empty());
        let unknown = FSet { components: BTreeSet::from([(0, (5, 0))]), ..FSet::default() };
        assert!(f_k_eval(&ex, 2, &unknown).is_err());
    }

    #[test]
    fn stage_space_examples() {
        let m = stage_space(&LazyGraph::line(), 2, 10).unwrap();
        let sum = m.sum.unwrap();
        assert_eq!(sum.right().len(), 2);
        let right_ray: Subset = m.vertices.iter().enumerate().filter(|(_, v)| v.0 >= 3).map(|(i, _)| i).collect();
        let right_end = m.ends.iter().position(|&e| e == (3, 0)).unwrap();
        let cl = sum.total().closure(right_ray);
        assert!(cl.contains(m.vertices.len() + right_end));
        assert!(!cl.contains(m.vertices.len() + 1 - right_end));

        let m = stage_space(&LazyGraph::star(3), 1, 8).unwrap();
        let sum = m.sum.unwrap();
        for (k, &e) in m.ends.iter().enumerate() {
            let ray: Subset = m.vertices.iter().enumerate().filter(|(_, v)| v.0 == e.0).map(|(i, _)| i).collect();
            let hit = sum.f().eval(ray);
            assert_eq!(hit, Subset::singleton(k));
        }
    }

    #[test]
    fn proper_map_examples() {
        let line = LazyGraph::line();
        let id = |v: Vertex| v;
        let m = extend_proper_map(&line, &line, &id, 2, 10).unwrap();
        assert!(m.map.iter().all(|(a, b)| a == b) && m.map.len() == 2);

        let half = LazyGraph::star(1);
        let fold = |(v, _): Vertex| if v == 0 { (0, 0) } else { (1, v.abs()) };
        let m = extend_proper_map(&line, &half, &fold, 2, 10).unwrap();
        assert_eq!(m.map.len(), 2);
        assert!(m.map.values().all(|&t| t == (1, 3)));

        let include = |(r, d): Vertex| if r == 0 { (0, 0) } else { (d, 0) };
        let m = extend_proper_map(&half, &line, &include, 2, 10).unwrap();
        assert_eq!(m.map.into_iter().collect::<Vec<_>>(), vec![((1, 3), (3, 0))]);

        let constant = |_: Vertex| (0, 0);
        assert!(matches!(extend_proper_map(&line, &line, &constant, 2, 10), Err(Error::Properness(_))));
        assert!(extension_is_natural(&line, &half, &fold, 1, 4, 10).unwrap());
    }

    #[test]
    fn dot_export_names_every_bond() {
        let a = approximate(&LazyGraph::line(), &[0, 1, 2], 6).unwrap();
        let dot = a.to_dot(&LazyGraph::line());
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.starts_with("digraph ends {"));
    }
}
