use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use super::laws::{all, ensure, must, AnyLaw, Law, Verdict, Verdict::*};
use super::Rng;
use crate::ends::{bonding, explore, extension_is_natural, f_k_eval, stage_space, FSet, LazyGraph, Vertex};
use crate::error::Error;

/// Where a case's graph comes from.
#[derive(Clone, Debug, Serialize)]
pub(crate) enum Source {
    Builtin(String),
    Finite { vertices: usize, edges: Vec<(usize, usize)> },
}

impl Source {
    pub(crate) fn graph(&self) -> LazyGraph {
        match self {
            Source::Builtin(spec) => LazyGraph::from_spec(spec).expect("built-in name"),
            Source::Finite { vertices, edges } => {
                let names = (0..*vertices).map(|v| v.to_string()).collect();
                let edges: Vec<(String, String)> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
                LazyGraph::finite("random", names, &edges).expect("indices in range")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub(crate) struct EndsCase {
    source: Source,
    /// Radii, increasing, each below the horizon.
    radii: Vec<usize>,
    horizon: usize,
    /// Closed sets as (finite vertices, (radius, component id)).
    fsets: Vec<(Vec<Vertex>, Vec<(usize, Vertex)>)>,
    /// Index into [`MAPS`] for naturality cases.
    map: usize,
}

struct EndsLaw {
    id: &'static str,
    gen: fn(&mut Rng) -> EndsCase,
    check: fn(&EndsCase) -> Verdict,
}

impl Law for EndsLaw {
    type Case = EndsCase;

    fn id(&self) -> &'static str {
        self.id
    }

    fn generate(&self, rng: &mut Rng) -> EndsCase {
        (self.gen)(rng)
    }

    fn check(&self, case: &EndsCase) -> Verdict {
        (self.check)(case)
    }

    /// Drop a vertex or an edge of a finite graph, or lower the horizon.
    fn shrink(&self, c: &EndsCase) -> Vec<EndsCase> {
        let mut out = Vec::new();
        let top = c.radii.last().copied().unwrap_or(0);
        if c.horizon > top + 1 {
            out.push(EndsCase { horizon: c.horizon - 1, ..c.clone() });
        }
        if let Source::Finite { vertices, edges } = &c.source {
            for v in (1..*vertices).rev() {
                let edges = edges
                    .iter()
                    .filter(|(a, b)| *a != v && *b != v)
                    .map(|&(a, b)| (a - usize::from(a > v), b - usize::from(b > v)))
                    .collect();
                out.push(EndsCase { source: Source::Finite { vertices: vertices - 1, edges }, ..c.clone() });
            }
            for k in 0..edges.len() {
                let mut e = edges.clone();
                e.remove(k);
                out.push(EndsCase { source: Source::Finite { vertices: *vertices, edges: e }, ..c.clone() });
            }
        }
        out
    }

    fn describe(&self, c: &EndsCase) -> Value {
        serde_json::to_value(c).unwrap_or_else(|e| json!({ "error": e.to_string() }))
    }
}

pub(crate) fn laws() -> Vec<Box<dyn AnyLaw>> {
    let laws = [
        EndsLaw { id: "ends.partition", gen: gen_stage, check: partition },
        EndsLaw { id: "ends.bond-functoriality", gen: gen_triple, check: bond_functoriality },
        EndsLaw { id: "ends.f-k-additivity", gen: gen_fsets, check: f_k_additivity },
        EndsLaw { id: "ends.stage-model", gen: gen_stage, check: stage_model },
        EndsLaw { id: "ends.naturality", gen: gen_natural, check: naturality },
    ];
    laws.into_iter().map(|l| Box::new(l) as Box<dyn AnyLaw>).collect()
}

/// Largest horizon used for each built-in, keeping balls small.
fn max_horizon(spec: &str) -> usize {
    match spec {
        "tree2" => 8,
        "grid2" => 9,
        _ => 12,
    }
}

const BUILTINS: [&str; 6] = ["line", "grid2", "tree2", "ladder", "star:3", "star:5"];

fn gen_source(rng: &mut Rng) -> (Source, usize) {
    if rng.chance(0.5) {
        let spec = *rng.pick(&BUILTINS);
        (Source::Builtin(spec.to_string()), rng.range(2, max_horizon(spec)))
    } else {
        let n = rng.range(2, 14);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.below(v), v)).collect();
        for _ in 0..rng.below(n / 2 + 1) {
            let (a, b) = (rng.below(n), rng.below(n));
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        (Source::Finite { vertices: n, edges }, rng.range(1, 6))
    }
}

fn sorted_radii(rng: &mut Rng, count: usize, horizon: usize) -> Vec<usize> {
    let mut r: Vec<usize> = (0..count).map(|_| rng.below(horizon)).collect();
    r.sort_unstable();
    r
}

fn gen_stage(rng: &mut Rng) -> EndsCase {
    let (source, horizon) = gen_source(rng);
    let radii = sorted_radii(rng, 1, horizon);
    EndsCase { source, radii, horizon, fsets: vec![], map: 0 }
}

fn gen_triple(rng: &mut Rng) -> EndsCase {
    let (source, horizon) = gen_source(rng);
    let radii = sorted_radii(rng, 3, horizon);
    EndsCase { source, radii, horizon, fsets: vec![], map: 0 }
}

/// BFS distances up to `horizon` using nothing but the neighbour function.
fn distances(g: &LazyGraph, horizon: usize) -> BTreeMap<Vertex, usize> {
    let mut dist = BTreeMap::from([(g.basepoint(), 0)]);
    let mut frontier = vec![g.basepoint()];
    for d in 1..=horizon {
        let mut next = Vec::new();
        for v in frontier {
            for u in g.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(u) {
                    e.insert(d);
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Components of `B_N − B_n` by depth-first search, with escape flags.
fn components_oracle(g: &LazyGraph, n: usize, horizon: usize) -> Vec<(Vertex, BTreeSet<Vertex>, bool)> {
    let dist = distances(g, horizon);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (&v, &d) in &dist {
        if d <= n || !seen.insert(v) {
            continue;
        }
        let mut members = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if dist.get(&w).is_some_and(|&dw| dw > n) && seen.insert(w) {
                    members.insert(w);
                    stack.push(w);
                }
            }
        }
        let escapes = members.iter().any(|u| dist[u] == horizon);
        out.push((*members.iter().next().expect("nonempty"), members, escapes));
    }
    out.sort();
    out
}

fn partition(c: &EndsCase) -> Verdict {
    let g = c.source.graph();
    let n = c.radii[0];
    let ex = must!(explore(&g, c.horizon), "explore");
    let stage = must!(ex.stage(n), "stage");
    let mut got: Vec<(Vertex, BTreeSet<Vertex>, bool)> = stage.components.iter().map(|k| (k.id, k.members.clone(), k.escapes)).collect();
    got.sort();
    let want = components_oracle(&g, n, c.horizon);
    if got.len() != want.len() {
        return Fail(format!("{} components, search finds {}", got.len(), want.len()));
    }
    for (a, b) in got.iter().zip(&want) {
        if a.0 != b.0 || a.1 != b.1 {
            return Fail(format!("component {} has the wrong members", g.label(a.0)));
        }
        if a.2 != b.2 {
            return Fail(format!("component {} has escapes = {}, search says {}", g.label(a.0), a.2, b.2));
        }
    }
    Pass
}

fn bond_functoriality(c: &EndsCase) -> Verdict {
    let g = c.source.graph();
    let ex = must!(explore(&g, c.horizon), "explore");
    let s: Vec<_> = c.radii.iter().map(|&r| ex.stage(r)).collect::<Result<_, _>>().unwrap_or_default();
    if s.len() != 3 {
        return Vacuous;
    }
    let ab = must!(bonding(&s[0], &s[1]), "bond");
    let bc = must!(bonding(&s[1], &s[2]), "bond");
    let ac = must!(bonding(&s[0], &s[2]), "bond");
    let composed: BTreeMap<Vertex, Vertex> = bc.iter().map(|(u, v)| (*u, ab[v])).collect();
    let identity = must!(bonding(&s[1], &s[1]), "bond");
    all([
        ensure(composed == ac, || format!("bonds at radii {:?} do not compose", c.radii)),
        ensure(identity.iter().all(|(u, v)| u == v), || "the bond of a stage to itself is not the identity".into()),
    ])
}

fn gen_fsets(rng: &mut Rng) -> EndsCase {
    let mut c = gen_stage(rng);
    let g = c.source.graph();
    let Ok(ex) = explore(&g, c.horizon) else { return c };
    let verts: Vec<Vertex> = ex.vertices().collect();
    for _ in 0..2 {
        let finite = (0..rng.below(3)).map(|_| *rng.pick(&verts)).collect();
        let mut comps = Vec::new();
        for _ in 0..rng.below(3) {
            let r = rng.below(c.horizon);
            if let Ok(st) = ex.stage(r) {
                if !st.components.is_empty() {
                    comps.push((r, rng.pick(&st.components).id));
                }
            }
        }
        c.fsets.push((finite, comps));
    }
    c
}

fn fset(d: &(Vec<Vertex>, Vec<(usize, Vertex)>)) -> FSet {
    FSet { finite: d.0.iter().copied().collect(), components: d.1.iter().copied().collect() }
}

fn f_k_additivity(c: &EndsCase) -> Verdict {
    if c.fsets.len() != 2 {
        return Vacuous;
    }
    let g = c.source.graph();
    let ex = must!(explore(&g, c.horizon), "explore");
    let n = c.radii[0];
    let (a, b) = (fset(&c.fsets[0]), fset(&c.fsets[1]));
    let eval = |f: &FSet| f_k_eval(&ex, n, f);
    let (fa, fb, fab) = match (eval(&a), eval(&b), eval(&a.union(&b))) {
        (Ok(x), Ok(y), Ok(z)) => (x, y, z),
        (Err(Error::Graph(_)), _, _) | (_, Err(Error::Graph(_)), _) => return Vacuous,
        (x, y, z) => return Fail(format!("evaluation failed: {:?}", [x.err(), y.err(), z.err()])),
    };
    // Independent reading: U is hit when one of its sphere vertices lies in
    // an escaping component named by F.
    let dist = distances(&g, c.horizon);
    let oracle = |f: &FSet| -> BTreeSet<Vertex> {
        let named: Vec<BTreeSet<Vertex>> = f
            .components
            .iter()
            .filter_map(|&(r, id)| components_oracle(&g, r, c.horizon).into_iter().find(|k| k.0 == id && k.2).map(|k| k.1))
            .collect();
        components_oracle(&g, n, c.horizon)
            .into_iter()
            .filter(|k| k.2 && k.1.iter().any(|v| dist[v] == c.horizon && named.iter().any(|s| s.contains(v))))
            .map(|k| k.0)
            .collect()
    };
    let union: BTreeSet<Vertex> = fa.union(&fb).copied().collect();
    all([
        ensure(fab == union, || format!("f_K(F ∪ G) has {} components, f_K(F) ∪ f_K(G) has {}", fab.len(), union.len())),
        ensure(fa == oracle(&a) && fb == oracle(&b), || "f_K disagrees with a direct search".into()),
    ])
}

fn stage_model(c: &EndsCase) -> Verdict {
    let g = c.source.graph();
    let n = c.radii[0];
    let model = match stage_space(&g, n, c.horizon) {
        Ok(m) => m,
        Err(Error::Capacity { .. }) => return Vacuous,
        Err(e) => return Fail(format!("stage model: {e}")),
    };
    let want = components_oracle(&g, n, c.horizon);
    let ends: Vec<Vertex> = want.iter().filter(|k| k.2).map(|k| k.0).collect();
    if model.ends != ends {
        return Fail(format!("model has {} end points, search finds {}", model.ends.len(), ends.len()));
    }
    let Some(sum) = &model.sum else {
        return ensure(ends.is_empty(), || "escaping components but no glued model".into());
    };
    let dist = distances(&g, c.horizon);
    for (p, v) in model.vertices.iter().enumerate() {
        let expect = if dist[v] == c.horizon {
            want.iter().position(|k| k.2 && k.1.contains(v)).map(|e| ends.iter().position(|&x| x == want[e].0))
        } else {
            None
        };
        let got = sum.f().gen(p);
        let ok = match expect.flatten() {
            Some(e) => got.len() == 1 && got.contains(e),
            None => got.is_empty(),
        };
        if !ok {
            return Fail(format!("vertex {} is glued to {got:?}", g.label(*v)));
        }
    }
    all([
        ensure(sum.is_dense_left(), || "the ball is not dense in the stage model".into()),
        ensure(sum.total().is_closed(sum.right_set()), || "the end points are not closed".into()),
    ])
}

type GraphMap = fn(Vertex) -> Vertex;

/// Graph maps used for naturality: (source, target, map).
const MAPS: [(&str, &str, GraphMap); 7] = [
    ("line", "line", |v| v),
    ("line", "line", |(x, _)| (x + 2, 0)),
    ("line", "line", |(x, _)| (-x, 0)),
    ("ladder", "line", |(x, _)| (x, 0)),
    ("line", "ladder", |(x, _)| (x, 0)),
    ("ladder", "ladder", |(x, s)| (x, 1 - s)),
    ("tree2", "tree2", |v| v),
];

fn gen_natural(rng: &mut Rng) -> EndsCase {
    let map = rng.below(MAPS.len());
    let horizon = rng.range(3, 8);
    let radii = sorted_radii(rng, 2, horizon);
    EndsCase { source: Source::Builtin(MAPS[map].0.into()), radii, horizon, fsets: vec![], map }
}

fn naturality(c: &EndsCase) -> Verdict {
    let (from, to, j) = MAPS[c.map];
    let (g1, g2) = (LazyGraph::from_spec(from).expect("built-in"), LazyGraph::from_spec(to).expect("built-in"));
    let (n1, n2) = (c.radii[0], c.radii[1]);
    match extension_is_natural(&g1, &g2, &j, n1, n2, c.horizon) {
        Ok(true) => Pass,
        Ok(false) => Fail(format!("the extension of {from} -> {to} does not commute with bonds at {n1} < {n2}")),
        Err(Error::Properness(_)) => Vacuous,
        Err(e) => Fail(format!("extension failed: {e}")),
    }
}
