use petgraph::unionfind::UnionFind;
use serde::Serialize;
use serde_json::{json, Value};

use super::laws::{all, ensure, hyp, must, AnyLaw, Law, Verdict, Verdict::*};
use super::Rng;
use crate::coarse::{generated_words, is_coarse_map, is_quasi_inverse, CoarseStructure, Relation};
use crate::subset::Subset;

type Pairs = Vec<(usize, usize)>;

/// A structure on `0..ground`, optionally a second one on `0..target` with
/// a map between them, and a seed for the relations sampled inside a check.
#[derive(Clone, Debug, Serialize)]
pub(crate) struct CoarseCase {
    ground: usize,
    gens: Vec<Pairs>,
    target: usize,
    target_gens: Vec<Pairs>,
    map: Vec<usize>,
    seed: u64,
}

impl CoarseCase {
    fn structure(&self) -> crate::error::Result<CoarseStructure> {
        build(self.ground, &self.gens)
    }

    fn target_structure(&self) -> crate::error::Result<CoarseStructure> {
        build(self.target, &self.target_gens)
    }
}

fn build(n: usize, gens: &[Pairs]) -> crate::error::Result<CoarseStructure> {
    let gens = gens.iter().map(|g| Relation::from_pairs(n, g.iter().copied())).collect::<crate::error::Result<Vec<_>>>()?;
    CoarseStructure::unlabeled(n, gens)
}

fn drop_point(pairs: &[Pairs], p: usize) -> Vec<Pairs> {
    let re = |v: usize| v - usize::from(v > p);
    pairs.iter().map(|g| g.iter().filter(|&&(a, b)| a != p && b != p).map(|&(a, b)| (re(a), re(b))).collect()).collect()
}

struct CoarseLaw {
    id: &'static str,
    gen: fn(&mut Rng) -> CoarseCase,
    check: fn(&CoarseCase) -> Verdict,
}

impl Law for CoarseLaw {
    type Case = CoarseCase;

    fn id(&self) -> &'static str {
        self.id
    }

    fn generate(&self, rng: &mut Rng) -> CoarseCase {
        (self.gen)(rng)
    }

    fn check(&self, case: &CoarseCase) -> Verdict {
        (self.check)(case)
    }

    /// Remove a ground point, an unused target point, or a generator.
    fn shrink(&self, c: &CoarseCase) -> Vec<CoarseCase> {
        let mut out = Vec::new();
        if c.ground > 1 {
            for p in (0..c.ground).rev() {
                let mut map = c.map.clone();
                if map.len() == c.ground {
                    map.remove(p);
                }
                out.push(CoarseCase { ground: c.ground - 1, gens: drop_point(&c.gens, p), map, ..c.clone() });
            }
        }
        if c.target > 1 {
            for q in (0..c.target).rev().filter(|q| !c.map.contains(q)) {
                let map = c.map.iter().map(|&v| v - usize::from(v > q)).collect();
                out.push(CoarseCase { target: c.target - 1, target_gens: drop_point(&c.target_gens, q), map, ..c.clone() });
            }
        }
        for k in 0..c.gens.len() {
            let mut gens = c.gens.clone();
            gens.remove(k);
            out.push(CoarseCase { gens, ..c.clone() });
        }
        out
    }

    fn describe(&self, c: &CoarseCase) -> Value {
        serde_json::to_value(c).unwrap_or_else(|e| json!({ "error": e.to_string() }))
    }
}

pub(crate) fn laws() -> Vec<Box<dyn AnyLaw>> {
    let laws = [
        CoarseLaw { id: "coarse.axioms", gen: gen_structure, check: axioms },
        CoarseLaw { id: "coarse.preorder", gen: gen_structure, check: preorder },
        CoarseLaw { id: "coarse.monotone-image", gen: gen_map, check: monotone_image },
        CoarseLaw { id: "coarse.coproduct", gen: gen_blocks, check: coproduct },
        CoarseLaw { id: "coarse.generative-search", gen: gen_tiny, check: generative_search },
    ];
    laws.into_iter().map(|l| Box::new(l) as Box<dyn AnyLaw>).collect()
}

fn random_gens(rng: &mut Rng, n: usize, max_gens: usize, density: f64) -> Vec<Pairs> {
    (0..rng.below(max_gens + 1))
        .map(|_| (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|_| rng.chance(density)).collect())
        .collect()
}

fn gen_structure(rng: &mut Rng) -> CoarseCase {
    let n = rng.range(1, 10);
    let gens = random_gens(rng, n, 3, 1.5 / (n * n) as f64 + 0.02);
    CoarseCase { ground: n, gens, target: 0, target_gens: vec![], map: vec![], seed: rng.next_u64() }
}

/// Equivalence classes generated by the pairs, by union-find.
fn classes(n: usize, gens: &[Pairs]) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(n);
    for &(a, b) in gens.iter().flatten() {
        uf.union(a, b);
    }
    uf.into_labeling()
}

fn random_relation(rng: &mut Rng, n: usize, within: Option<&[usize]>) -> Relation {
    let p = rng.range(1, 5) as f64 / 8.0;
    let pairs = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| within.is_none_or(|c| c[a] == c[b]))
        .filter(|_| rng.chance(p))
        .collect::<Vec<_>>();
    Relation::from_pairs(n, pairs).expect("in range")
}

const SAMPLES: usize = 1000;

fn axioms(c: &CoarseCase) -> Verdict {
    let cs = hyp!(c.structure());
    let n = c.ground;
    let cls = classes(n, &c.gens);
    let oracle = |e: &Relation| e.pairs().all(|(a, b)| cls[a] == cls[b]);
    let mut rng = Rng::new(c.seed);
    let ctl = |e: &Relation| cs.controlled(e).unwrap_or(false);
    if !ctl(&Relation::diagonal(n)) {
        return Fail("the diagonal is not controlled".into());
    }
    for g in cs.generators() {
        if !ctl(g) {
            return Fail(format!("generator {g:?} is not controlled"));
        }
    }
    for _ in 0..SAMPLES {
        let bias = rng.chance(0.7).then_some(cls.as_slice());
        let a = random_relation(&mut rng, n, bias);
        let bias = rng.chance(0.7).then_some(cls.as_slice());
        let b = random_relation(&mut rng, n, bias);
        let (ca, cb) = (ctl(&a), ctl(&b));
        if ca != oracle(&a) {
            return Fail(format!("controlled({a:?}) = {ca}, the generated equivalence says {}", oracle(&a)));
        }
        if ca && cb {
            let checks = [("union", a.union(&b)), ("composition", b.compose(&a)), ("inverse", a.inverse())];
            for (what, r) in checks {
                if !ctl(&r) {
                    return Fail(format!("{what} of controlled {a:?} and {b:?} is not controlled"));
                }
            }
        }
        if ca {
            let mut sub = a.clone();
            for (x, y) in a.pairs().collect::<Vec<_>>() {
                if rng.chance(0.5) {
                    sub.remove(x, y);
                }
            }
            if !ctl(&sub) {
                return Fail(format!("{sub:?} is inside controlled {a:?} but not controlled"));
            }
        }
    }
    Pass
}

fn preorder(c: &CoarseCase) -> Verdict {
    let cs = hyp!(c.structure());
    let n = c.ground;
    let cls = classes(n, &c.gens);
    // a ≼ b iff every point of a shares a class with a point of b.
    let oracle = |a: Subset, b: Subset| a.iter().all(|x| b.iter().any(|y| cls[x] == cls[y]));
    let mut rng = Rng::new(c.seed);
    for _ in 0..SAMPLES {
        let (a, b, d) = (rng.subset(n, 0.4), rng.subset(n, 0.4), rng.subset(n, 0.4));
        if !cs.preceq(a, a) {
            return Fail(format!("{a:?} ≼ {a:?} fails"));
        }
        if cs.preceq(a, b) != oracle(a, b) {
            return Fail(format!("{a:?} ≼ {b:?} is {}, the classes say {}", cs.preceq(a, b), oracle(a, b)));
        }
        if cs.preceq(a, b) && cs.preceq(b, d) && !cs.preceq(a, d) {
            return Fail(format!("≼ is not transitive on {a:?}, {b:?}, {d:?}"));
        }
        if (a & b).is_subset(a) && !cs.preceq(a & b, a) {
            return Fail("a subset is not below its superset".into());
        }
        if cs.sim(a, b) != cs.sim(b, a) {
            return Fail("∼ is not symmetric".into());
        }
    }
    Pass
}

/// A map `f` with target generators containing the image of each source
/// generator, so images of controlled sets are controlled. Most maps send
/// distinct classes to disjoint blocks, which makes them coarse.
fn gen_map(rng: &mut Rng) -> CoarseCase {
    let mut c = gen_structure(rng);
    c.ground = c.ground.min(8);
    c.gens = c.gens.into_iter().map(|g| g.into_iter().filter(|&(a, b)| a < c.ground && b < c.ground).collect()).collect();
    let cls = classes(c.ground, &c.gens);
    if rng.chance(0.75) {
        // Each class maps onto its own block, so fibres stay inside classes.
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); c.ground];
        c.target = 0;
        for p in 0..c.ground {
            let b = &mut blocks[cls[p]];
            if b.is_empty() || rng.chance(0.3) {
                b.push(c.target);
                c.target += 1;
            }
            c.map.push(*rng.pick(b));
        }
    } else {
        c.target = rng.range(1, 6);
        c.map = (0..c.ground).map(|_| rng.below(c.target)).collect();
    }
    let m = c.target;
    c.target_gens = c.gens.iter().map(|g| g.iter().map(|&(a, b)| (c.map[a], c.map[b])).collect()).collect();
    c.target_gens.extend(random_gens(rng, m, 1, 0.1));
    c
}

fn monotone_image(c: &CoarseCase) -> Verdict {
    let (x, y) = (hyp!(c.structure()), hyp!(c.target_structure()));
    if c.map.len() != c.ground || !hyp!(is_coarse_map(&c.map, &x, &y)) {
        return Vacuous;
    }
    let image = |a: Subset| -> Subset { a.iter().map(|p| c.map[p]).collect() };
    let mut rng = Rng::new(c.seed);
    for _ in 0..SAMPLES {
        let (a, b) = (rng.subset(c.ground, 0.4), rng.subset(c.ground, 0.4));
        if x.preceq(a, b) && !y.preceq(image(a), image(b)) {
            return Fail(format!("{a:?} ≼ {b:?} but f({a:?}) = {:?} is not ≼ f({b:?}) = {:?}", image(a), image(b)));
        }
    }
    Pass
}

/// A block structure: `π: X → Γ` surjective with `ζ` random on `Γ`.
fn gen_blocks(rng: &mut Rng) -> CoarseCase {
    let gamma = rng.range(1, 5);
    let n = rng.range(gamma, 10);
    let mut map: Vec<usize> = (0..n).map(|x| if x < gamma { x } else { rng.below(gamma) }).collect();
    rng.shuffle(&mut map);
    let target_gens = random_gens(rng, gamma, 2, 0.2);
    CoarseCase { ground: n, gens: vec![], target: gamma, target_gens, map, seed: rng.next_u64() }
}

const SECTION_CAP: usize = 512;

fn coproduct(c: &CoarseCase) -> Verdict {
    let zeta = hyp!(c.target_structure());
    let pi = &c.map;
    if pi.len() != c.ground || (0..c.target).any(|q| !pi.contains(&q)) {
        return Vacuous;
    }
    let eps = must!(zeta.pullback_coarse(pi, (0..c.ground).map(|i| format!("x{i}")).collect()), "pullback structure");
    let blocks: Vec<Vec<usize>> = (0..c.target).map(|q| (0..c.ground).filter(|&x| pi[x] == q).collect()).collect();
    let count: usize = blocks.iter().map(|b| b.len()).product();
    let mut rng = Rng::new(c.seed);
    let sections: Vec<Vec<usize>> = if count <= SECTION_CAP {
        (0..count)
            .map(|mut code| {
                blocks
                    .iter()
                    .map(|b| {
                        let v = b[code % b.len()];
                        code /= b.len();
                        v
                    })
                    .collect()
            })
            .collect()
    } else {
        (0..SECTION_CAP).map(|_| blocks.iter().map(|b| *rng.pick(b)).collect()).collect()
    };
    if !must!(is_coarse_map(pi, &eps, &zeta), "coarse check") {
        return Fail("π is not coarse".into());
    }
    for iota in &sections {
        if !must!(is_coarse_map(iota, &zeta, &eps), "coarse check") {
            return Fail(format!("the section {iota:?} is not coarse"));
        }
        if !must!(is_quasi_inverse(pi, iota, &eps, &zeta), "quasi-inverse check") {
            return Fail(format!("π and the section {iota:?} are not quasi-inverse"));
        }
    }
    let image = |a: Subset| -> Subset { a.iter().map(|p| pi[p]).collect() };
    all([
        ensure(eps.is_connected() == zeta.is_connected(), || "connectivity is not inherited".into()),
        ensure((0..1u64 << c.ground).map(Subset).all(|a| eps.is_bounded(a) == zeta.is_bounded(image(a))), || {
            "a set is bounded without its image being bounded, or the converse".into()
        }),
    ])
}

fn gen_tiny(rng: &mut Rng) -> CoarseCase {
    let n = rng.range(1, 4);
    let gens = random_gens(rng, n, 2, 0.15);
    CoarseCase { ground: n, gens, target: 0, target_gens: vec![], map: vec![], seed: 0 }
}

/// Encode a relation on `n ≤ 4` points as a 16-bit mask, bit `x·n + y`.
fn encode(r: &Relation, n: usize) -> usize {
    r.pairs().fold(0, |acc, (x, y)| acc | 1 << (x * n + y))
}

fn decode(mask: usize, n: usize) -> Relation {
    Relation::from_pairs(n, (0..n * n).filter(|b| mask >> b & 1 == 1).map(|b| (b / n, b % n))).expect("in range")
}

/// Controlled relations are exactly the subsets of relations reachable from
/// the diagonal and the generators, checked on every relation.
fn generative_search(c: &CoarseCase) -> Verdict {
    if c.ground > 4 {
        return Vacuous;
    }
    let cs = hyp!(c.structure());
    search_agrees(&cs, 4096)
}

/// `controlled` against a breadth-first search of the words generating the
/// family, on every relation of a ground of at most 4 points: a relation is
/// under some finite union of words iff each of its pairs is in some word.
pub(crate) fn search_agrees(cs: &CoarseStructure, cap: usize) -> Verdict {
    let n = cs.len();
    let words = hyp!(generated_words(n, cs.generators(), cap));
    let covered = words.iter().fold(0usize, |acc, w| acc | encode(w, n));
    let marked: Vec<bool> = (0..1usize << (n * n)).map(|m| m & !covered == 0).collect();
    for (m, &want) in marked.iter().enumerate() {
        let r = decode(m, n);
        let got = must!(cs.controlled(&r), "controlled");
        if got != want {
            return Fail(format!("controlled({r:?}) = {got}, the search says {want}"));
        }
    }
    Pass
}
