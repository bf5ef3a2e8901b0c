//! Laws of finite spaces, glueings, pullbacks and pushforwards.

use super::laws::{all, boxed, ensure, hyp, must, AnyLaw, InstLaw, Verdict, Verdict::*};
use super::{
    gen_admissible, gen_admissible_below, gen_any_map, gen_closed_subspace, gen_continuous_map, gen_map, gen_pair, gen_quotient, gen_space,
    Inst, Rng,
};
use crate::error::{Error, Result};
use crate::glueing::{check_pair, decompose, decompose_partition, glue, glue_one_sided, AdmissibleMap, AdmissiblePair, SumSpace};
use crate::space::{compress, FiniteSpace, SpaceMap};
use crate::subset::Subset;
use crate::transport::{compose_through, cube_squares_hold, is_complete, pullback, pushforward, SumMap};

fn subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..1u64 << n).map(Subset)
}

fn space(rng: &mut Rng, lo: usize, hi: usize) -> FiniteSpace {
    let n = rng.range(lo, hi);
    gen_space(rng, n)
}

/// Map `k` of the instance, required to be continuous.
fn cont(i: &Inst, k: usize) -> Result<SpaceMap> {
    let m = i.map(k)?;
    if m.is_continuous() {
        Ok(m)
    } else {
        Err(Error::NotContinuous(format!("map {k}")))
    }
}

/// Tables 0 and 1 as an admissible pair between spaces 0 and 1.
fn pair_of(i: &Inst) -> Result<AdmissiblePair> {
    check_pair(i.table(0)?, i.table(1)?)
}

fn sorted(mut v: Vec<Subset>) -> Vec<Subset> {
    v.sort_by_key(|s| s.0);
    v
}

/// Down-sets of the specialization order, straight from the definition.
fn down_sets(x: &FiniteSpace) -> Vec<Subset> {
    let n = x.len();
    subsets(n).filter(|&a| a.iter().all(|p| (0..n).all(|q| !x.below(q, p) || a.contains(q)))).collect()
}

pub(crate) fn glueing() -> Vec<Box<dyn AnyLaw>> {
    boxed(vec![
        InstLaw { id: "space.closed-sets", gen: gen_one_space, check: closed_sets },
        InstLaw { id: "space.kuratowski", gen: gen_one_space, check: kuratowski },
        InstLaw { id: "space.continuity", gen: gen_space_map, check: continuity_three_ways },
        InstLaw { id: "space.product", gen: gen_two_small, check: product },
        InstLaw { id: "space.subspace", gen: gen_space_with_subset, check: subspace_traces },
        InstLaw { id: "glue.admissible-validation", gen: gen_raw_table, check: admissible_validation },
        InstLaw { id: "glue.tau-axioms", gen: gen_glue, check: tau_axioms },
        InstLaw { id: "glue.closure-formula", gen: gen_glue, check: closure_formula },
        InstLaw { id: "glue.embedding", gen: gen_glue, check: embedding },
        InstLaw { id: "glue.decompose-glue", gen: gen_glue, check: decompose_glue },
        InstLaw { id: "glue.glue-decompose", gen: gen_space_with_subset, check: glue_decompose },
        InstLaw { id: "glue.density", gen: gen_glue, check: density },
        InstLaw { id: "glue.one-sided-closed", gen: gen_one_sided, check: one_sided_closed },
    ])
}

pub(crate) fn transport() -> Vec<Box<dyn AnyLaw>> {
    boxed(vec![
        InstLaw { id: "transport.continuity-criterion", gen: gen_sum_map, check: continuity_criterion },
        InstLaw { id: "transport.cube", gen: gen_cube, check: cube },
        InstLaw { id: "transport.pullback-continuity", gen: gen_pullback, check: pullback_continuity },
        InstLaw { id: "transport.pullback-coarsest", gen: gen_pullback, check: pullback_coarsest },
        InstLaw { id: "transport.pushforward-finest", gen: gen_pushforward, check: pushforward_finest },
        InstLaw { id: "transport.double-pullback", gen: gen_double_pullback, check: double_pullback },
        InstLaw { id: "transport.push-pull-surjective", gen: gen_surjective, check: push_pull_surjective },
        InstLaw { id: "transport.push-pull", gen: gen_continuous_pair, check: push_pull },
        InstLaw { id: "transport.pull-push", gen: gen_continuous_pair_forward, check: pull_push },
        InstLaw { id: "transport.identity", gen: gen_one_sided, check: identity_transport },
        InstLaw { id: "transport.cube-pullback", gen: gen_pullback_cube, check: pullback_cube },
        InstLaw { id: "transport.cube-pushforward", gen: gen_pushforward_cube, check: pushforward_cube },
        InstLaw { id: "transport.compactness", gen: gen_complete, check: compactness },
    ])
}

// ---- spaces -------------------------------------------------------------

fn gen_one_space(rng: &mut Rng) -> Inst {
    Inst::new(vec![space(rng, 1, 6)])
}

fn closed_sets(i: &Inst) -> Verdict {
    let x = i.space(0);
    let listed = sorted(must!(x.enumerate_closed_sets(), "enumerate_closed_sets"));
    let fixed: Vec<Subset> = subsets(x.len()).filter(|&a| x.closure(a) == a).collect();
    let down = down_sets(x);
    all([
        ensure(listed == fixed, || format!("enumerated {listed:?} but closure fixes {fixed:?}")),
        ensure(fixed == down, || format!("closure fixes {fixed:?} but the down-sets are {down:?}")),
        ensure(fixed.iter().all(|&a| x.is_closed(a)) && subsets(x.len()).filter(|&a| x.is_closed(a)).count() == fixed.len(), || {
            "is_closed disagrees with the closure operator".into()
        }),
    ])
}

fn kuratowski(i: &Inst) -> Verdict {
    let x = i.space(0);
    let down = down_sets(x);
    let oracle = |a: Subset| down.iter().filter(|&&c| a.is_subset(c)).fold(x.full(), |acc, &c| acc & c);
    for a in subsets(x.len()) {
        let c = x.closure(a);
        if c != oracle(a) {
            return Fail(format!("Cl{a:?} = {c:?}, the least closed superset is {:?}", oracle(a)));
        }
        if !a.is_subset(c) || x.closure(c) != c {
            return Fail(format!("closure not extensive or not idempotent at {a:?}"));
        }
        for b in subsets(x.len()) {
            if x.closure(a | b) != c | x.closure(b) {
                return Fail(format!("Cl({a:?} ∪ {b:?}) is not the union of the closures"));
            }
        }
    }
    ensure(x.closure(Subset::EMPTY).is_empty(), || "Cl(∅) is nonempty".into())
}

fn gen_space_map(rng: &mut Rng) -> Inst {
    let x = space(rng, 1, 5);
    let y = space(rng, 1, 5);
    let m = gen_any_map(rng, &x, &y);
    let mut i = Inst::new(vec![x, y]);
    i.push_map(0, 1, &m);
    i
}

fn continuity_three_ways(i: &Inst) -> Verdict {
    let m = hyp!(i.map(0));
    let a = m.is_continuous();
    let b = m.maps_closures_into_closures();
    let c = must!(m.preimages_closed(), "preimage oracle");
    ensure(a == b && b == c, || format!("specialization {a}, closures {b}, preimages of closed sets {c}"))
}

fn gen_two_small(rng: &mut Rng) -> Inst {
    Inst::new(vec![space(rng, 1, 3), space(rng, 1, 3)])
}

fn product(i: &Inst) -> Verdict {
    let (x, y) = (i.space(0), i.space(1));
    let p = must!(x.product(y), "product");
    let m = y.len();
    for a in 0..p.len() {
        for b in 0..p.len() {
            let want = x.below(a / m, b / m) && y.below(a % m, b % m);
            if p.below(a, b) != want {
                return Fail(format!("product order wrong at ({a},{b})"));
            }
        }
    }
    let px = must!(SpaceMap::new(p.clone(), x.clone(), (0..p.len()).map(|k| k / m).collect()), "projection");
    let py = must!(SpaceMap::new(p.clone(), y.clone(), (0..p.len()).map(|k| k % m).collect()), "projection");
    ensure(px.is_continuous() && py.is_continuous(), || "a projection is not continuous".into())
}

fn gen_space_with_subset(rng: &mut Rng) -> Inst {
    let x = space(rng, 1, 6);
    // The subset is encoded as a map from a discrete space onto its points.
    let a: Vec<usize> = (0..x.len()).filter(|_| rng.chance(0.5)).collect();
    let a = if a.is_empty() { vec![rng.below(x.len())] } else { a };
    let d = FiniteSpace::discrete(a.len()).expect("nonempty");
    let m = SpaceMap::new(d.clone(), x.clone(), a).expect("indices in range");
    let mut i = Inst::new(vec![x, d]);
    i.push_map(1, 0, &m);
    i
}

fn chosen_subset(i: &Inst) -> Subset {
    i.maps[0].2.iter().copied().collect()
}

fn subspace_traces(i: &Inst) -> Verdict {
    let x = i.space(0);
    let a = chosen_subset(i);
    let s = must!(x.subspace(a), "subspace");
    let own = sorted(must!(s.enumerate_closed_sets(), "enumerate"));
    let mut traces: Vec<Subset> = down_sets(x).into_iter().map(|c| compress(c & a, a)).collect();
    traces.sort_by_key(|s| s.0);
    traces.dedup();
    ensure(own == traces, || format!("closed sets {own:?} but traces {traces:?}"))
}

// ---- glueing ------------------------------------------------------------

fn gen_raw_table(rng: &mut Rng) -> Inst {
    let x = space(rng, 1, 3);
    let y = space(rng, 1, 3);
    let gen = (0..x.len())
        .map(|_| {
            let raw = rng.subset(y.len(), 0.4);
            if rng.chance(0.85) {
                y.closure(raw)
            } else {
                raw
            }
        })
        .collect();
    let mut i = Inst::new(vec![x, y]);
    i.tables.push((0, 1, gen));
    i
}

/// `make_admissible` accepts exactly the closed monotone tables, and what
/// it accepts glues with the closure formula on point closures.
fn admissible_validation(i: &Inst) -> Verdict {
    let (x, y) = (i.space(0), i.space(1));
    let gen = &i.tables[0].2;
    let closed = gen.iter().all(|&g| y.closure(g) == g);
    let monotone = (0..x.len()).all(|p| (0..x.len()).all(|q| !x.below(q, p) || gen[q].is_subset(gen[p])));
    let accepted = i.table(0);
    if accepted.is_ok() != (closed && monotone) {
        return Fail(format!("make_admissible accepted = {}, but closed = {closed} and monotone = {monotone}", accepted.is_ok()));
    }
    let Ok(f) = accepted else { return Pass };
    for p in 0..x.len() {
        if f.eval(x.point_closure(p)) != gen[p] {
            return Fail(format!("f(Cl{{{p}}}) = {:?} differs from its generator {:?}", f.eval(x.point_closure(p)), gen[p]));
        }
    }
    let s = must!(glue_one_sided(f.clone()), "glue rejected an accepted table");
    ensure((0..x.len()).all(|p| s.total().closure(Subset::singleton(p)) == s.join_halves(x.point_closure(p), gen[p])), || {
        "closure of a left point is not Cl{p} ∪ f(Cl{p})".into()
    })
}

fn gen_glue(rng: &mut Rng) -> Inst {
    let x = space(rng, 1, 4);
    let y = space(rng, 1, 4);
    let pair = gen_pair(rng, &x, &y);
    let mut i = Inst::new(vec![x, y]);
    i.push_table(0, 1, &pair.f);
    i.push_table(1, 0, &pair.g);
    i
}

fn glued(i: &Inst) -> std::result::Result<SumSpace, Verdict> {
    let pair = pair_of(i).map_err(|_| Vacuous)?;
    glue(i.space(0), i.space(1), pair).map_err(|e| Fail(format!("glue rejected an admissible pair: {e}")))
}

macro_rules! glued {
    ($i:expr) => {
        match glued($i) {
            Ok(s) => s,
            Err(v) => return v,
        }
    };
}

pub(crate) fn tau_axioms(i: &Inst) -> Verdict {
    let s = glued!(i);
    let n = s.total().len();
    let family: Vec<Subset> = subsets(n).filter(|&d| s.is_glue_closed(d)).collect();
    let member = |d: Subset| family.binary_search_by_key(&d.0, |s| s.0).is_ok();
    if !member(Subset::EMPTY) || !member(Subset::full(n)) {
        return Fail("the four-condition family misses ∅ or the whole space".into());
    }
    for &a in &family {
        for &b in &family {
            if !member(a | b) || !member(a & b) {
                return Fail(format!("family not closed under ∪/∩ at {a:?}, {b:?}"));
            }
        }
    }
    let closed: Vec<Subset> = subsets(n).filter(|&d| s.total().is_closed(d)).collect();
    ensure(family == closed, || format!("four-condition family {family:?} but the total space closes {closed:?}"))
}

pub(crate) fn closure_formula(i: &Inst) -> Verdict {
    let s = glued!(i);
    let (x, y) = (s.left().clone(), s.right().clone());
    for a in must!(x.enumerate_closed_sets(), "enumerate") {
        let want = s.join_halves(a, s.f().eval(a));
        let got = s.total().closure(s.join_halves(a, Subset::EMPTY));
        if got != want {
            return Fail(format!("Cl(A) = {got:?} for closed A = {a:?}, expected A ∪ f(A) = {want:?}"));
        }
    }
    for b in must!(y.enumerate_closed_sets(), "enumerate") {
        let want = s.join_halves(s.g().eval(b), b);
        let got = s.total().closure(s.join_halves(Subset::EMPTY, b));
        if got != want {
            return Fail(format!("Cl(B) = {got:?} for closed B = {b:?}, expected g(B) ∪ B = {want:?}"));
        }
    }
    Pass
}

pub(crate) fn embedding(i: &Inst) -> Verdict {
    let s = glued!(i);
    let l = must!(s.total().subspace(s.left_set()), "subspace");
    let r = must!(s.total().subspace(s.right_set()), "subspace");
    all([
        ensure(l.same_structure(s.left()), || "X is not embedded".into()),
        ensure(r.same_structure(s.right()), || "Y is not embedded".into()),
    ])
}

pub(crate) fn decompose_glue(i: &Inst) -> Verdict {
    let s = glued!(i);
    let open = s.total().is_open(s.left_set());
    if open != s.g().is_empty() {
        return Fail(format!("X open is {open} but g = ∅ is {}", s.g().is_empty()));
    }
    let d = if open {
        must!(decompose(s.total(), s.left_set()), "decompose")
    } else {
        if decompose(s.total(), s.left_set()).is_ok() {
            return Fail("decompose accepted a set that is not open".into());
        }
        must!(decompose_partition(s.total(), s.left_set()), "decompose_partition")
    };
    all([
        ensure(d.left.same_structure(s.left()) && d.right.same_structure(s.right()), || "halves changed".into()),
        ensure(d.pair.f.generators() == s.f().generators(), || {
            format!("f came back as {:?}, was {:?}", d.pair.f.generators(), s.f().generators())
        }),
        ensure(d.pair.g.generators() == s.g().generators(), || {
            format!("g came back as {:?}, was {:?}", d.pair.g.generators(), s.g().generators())
        }),
        ensure(must!(d.reglues_to(s.total()), "reglue"), || "regluing changed the total space".into()),
    ])
}

fn glue_decompose(i: &Inst) -> Verdict {
    let z = i.space(0);
    let xs = z.interior(chosen_subset(i));
    if xs.is_empty() || xs == z.full() {
        return Vacuous;
    }
    let d = must!(decompose(z, xs), "decompose of an open set");
    ensure(must!(d.reglues_to(z), "reglue"), || format!("glueing the halves along {xs:?} does not give back the space"))
}

pub(crate) fn density(i: &Inst) -> Verdict {
    let s = glued!(i);
    let t = s.total();
    let left_oracle = t.closure(s.left_set()) == t.full();
    let right_oracle = t.closure(s.right_set()) == t.full();
    all([
        ensure(s.is_dense_left() == left_oracle, || format!("is_dense_left = {} but Cl X = Z is {left_oracle}", s.is_dense_left())),
        ensure(s.is_dense_right() == right_oracle, || format!("is_dense_right = {} but Cl Y = Z is {right_oracle}", s.is_dense_right())),
        ensure((s.f().eval(s.left().full()) == s.right().full()) == left_oracle, || "f(X) = Y disagrees with density".into()),
    ])
}

fn gen_one_sided(rng: &mut Rng) -> Inst {
    let x = space(rng, 1, 4);
    let y = space(rng, 1, 4);
    let f = gen_admissible(rng, &x, &y);
    let mut i = Inst::new(vec![x, y]);
    i.push_table(0, 1, &f);
    i
}

fn one_sided_closed(i: &Inst) -> Verdict {
    let f = hyp!(i.table(0));
    let s = must!(glue_one_sided(f), "glue");
    ensure(s.total().is_closed(s.right_set()), || "Y is not closed although g = ∅".into())
}

// ---- transport ----------------------------------------------------------

fn gen_sum_map(rng: &mut Rng) -> Inst {
    let (x, y, z, w) = (space(rng, 1, 6), space(rng, 1, 6), space(rng, 1, 6), space(rng, 1, 6));
    let p1 = if rng.chance(0.3) { AdmissiblePair::one_sided(AdmissibleMap::empty(&x, &y)) } else { gen_pair(rng, &x, &y) };
    let p2 = gen_pair(rng, &z, &w);
    let psi = gen_continuous_map(rng, &x, &z);
    let phi = gen_continuous_map(rng, &y, &w);
    let mut i = Inst::new(vec![x, y, z, w]);
    i.push_table(0, 1, &p1.f);
    i.push_table(1, 0, &p1.g);
    i.push_table(2, 3, &p2.f);
    i.push_table(3, 2, &p2.g);
    i.push_map(0, 2, &psi);
    i.push_map(1, 3, &phi);
    i
}

fn continuity_criterion(i: &Inst) -> Verdict {
    let p1 = hyp!(pair_of(i));
    let p2 = hyp!(i.table(2).and_then(|f| check_pair(f, i.table(3)?)));
    let s1 = must!(glue(i.space(0), i.space(1), p1), "glue");
    let s2 = must!(glue(i.space(2), i.space(3), p2), "glue");
    let m = hyp!(SumMap::new(s1, s2, hyp!(i.map(0)), hyp!(i.map(1))));
    let diagram = m.diagram_continuity();
    let oracle = must!(m.total_map().preimages_closed(), "preimage oracle");
    all([
        ensure(diagram == oracle, || format!("diagram criterion says {diagram}, preimages of closed sets say {oracle}")),
        ensure(m.is_continuous() == oracle, || "specialization test disagrees with the oracle".into()),
    ])
}

fn gen_cube(rng: &mut Rng) -> Inst {
    let s = |rng: &mut Rng| space(rng, 1, 3);
    let (x1, w1, x2, w2) = (s(rng), s(rng), s(rng), s(rng));
    let (y1, y2, z1, z2) = (s(rng), s(rng), s(rng), s(rng));
    let mu = gen_continuous_map(rng, &x1, &x2);
    let nu = gen_continuous_map(rng, &w1, &w2);
    let psi = gen_continuous_map(rng, &y1, &y2);
    let phi = gen_continuous_map(rng, &z1, &z2);
    let f2 = gen_admissible(rng, &x2, &w2);
    let bound = pullback(&f2, &mu, &nu).expect("maps fit");
    let f1 = gen_admissible_below(rng, &x1, &w1, bound.generators());
    let pi2 = gen_admissible(rng, &y2, &x2);
    let pi1_upper: Vec<Subset> = (0..y1.len()).map(|y| mu.preimage(pi2.eval(y2.point_closure(psi.apply(y))))).collect();
    let pi1 = gen_admissible_below(rng, &y1, &x1, &pi1_upper);
    let sigma2 = gen_admissible(rng, &w2, &z2);
    let s1_upper: Vec<Subset> = (0..w1.len()).map(|w| phi.preimage(sigma2.eval(w2.point_closure(nu.apply(w))))).collect();
    let sigma1 = gen_admissible_below(rng, &w1, &z1, &s1_upper);
    let mut i = Inst::new(vec![x1, w1, x2, w2, y1, y2, z1, z2]);
    i.push_map(0, 2, &mu);
    i.push_map(1, 3, &nu);
    i.push_map(4, 5, &psi);
    i.push_map(6, 7, &phi);
    i.push_table(0, 1, &f1);
    i.push_table(2, 3, &f2);
    i.push_table(4, 0, &pi1);
    i.push_table(5, 2, &pi2);
    i.push_table(1, 6, &sigma1);
    i.push_table(3, 7, &sigma2);
    i
}

/// `μ + ν` is continuous between the one-sided glueings along `f1`, `f2`.
fn base_continuous(f1: &AdmissibleMap, f2: &AdmissibleMap, mu: &SpaceMap, nu: &SpaceMap) -> Result<bool> {
    let m = SumMap::new(glue_one_sided(f1.clone())?, glue_one_sided(f2.clone())?, mu.clone(), nu.clone())?;
    Ok(m.is_continuous())
}

fn sum_continuous(f1: AdmissibleMap, f2: AdmissibleMap, psi: SpaceMap, phi: SpaceMap) -> Verdict {
    let s1 = must!(glue_one_sided(f1), "glue");
    let s2 = must!(glue_one_sided(f2), "glue");
    let m = must!(SumMap::new(s1, s2, psi, phi), "sum map");
    ensure(m.is_continuous() && m.diagram_continuity(), || "the induced map of glued spaces is not continuous".into())
}

fn cube(i: &Inst) -> Verdict {
    let (mu, nu, psi, phi) = (hyp!(cont(i, 0)), hyp!(cont(i, 1)), hyp!(cont(i, 2)), hyp!(cont(i, 3)));
    let (f1, f2) = (hyp!(i.table(0)), hyp!(i.table(1)));
    let (pi1, pi2, sigma1, sigma2) = (hyp!(i.table(2)), hyp!(i.table(3)), hyp!(i.table(4)), hyp!(i.table(5)));
    if !hyp!(base_continuous(&f1, &f2, &mu, &nu)) || !cube_squares_hold(&pi1, &pi2, &sigma1, &sigma2, &psi, &mu, &nu, &phi) {
        return Vacuous;
    }
    let c1 = must!(compose_through(&sigma1, &f1, &pi1), "compose");
    let c2 = must!(compose_through(&sigma2, &f2, &pi2), "compose");
    sum_continuous(c1, c2, psi, phi)
}

fn gen_pullback(rng: &mut Rng) -> Inst {
    let (x, w, y, z) = (space(rng, 1, 3), space(rng, 1, 3), space(rng, 1, 3), space(rng, 1, 3));
    let f = gen_admissible(rng, &x, &w);
    let pi = gen_continuous_map(rng, &y, &x);
    let varpi = gen_continuous_map(rng, &z, &w);
    let star = pullback(&f, &pi, &varpi).expect("maps fit");
    let other = gen_admissible(rng, &y, &z);
    let other = if rng.chance(0.5) { other.meet(&star).expect("same shape") } else { other };
    let mut i = Inst::new(vec![x, w, y, z]);
    i.push_table(0, 1, &f);
    i.push_table(2, 3, &other);
    i.push_map(2, 0, &pi);
    i.push_map(3, 1, &varpi);
    i
}

pub(crate) fn pullback_continuity(i: &Inst) -> Verdict {
    let (f, pi, varpi) = (hyp!(i.table(0)), hyp!(cont(i, 0)), hyp!(cont(i, 1)));
    let star = must!(pullback(&f, &pi, &varpi), "pullback");
    sum_continuous(star, f, pi, varpi)
}

pub(crate) fn pullback_coarsest(i: &Inst) -> Verdict {
    let (f, other, pi, varpi) = (hyp!(i.table(0)), hyp!(i.table(1)), hyp!(cont(i, 0)), hyp!(cont(i, 1)));
    let star = must!(pullback(&f, &pi, &varpi), "pullback");
    let continuous = must!(base_continuous(&other, &f, &pi, &varpi), "sum map");
    ensure(continuous == other.le(&star), || format!("pi + varpi continuous from f' is {continuous}, but f' ⊆ f* is {}", other.le(&star)))
}

fn gen_pushforward(rng: &mut Rng) -> Inst {
    let (x, y, z) = (space(rng, 1, 3), space(rng, 1, 3), space(rng, 1, 4));
    let (w, varpi) = gen_closed_subspace(rng, &z);
    let pi = gen_continuous_map(rng, &x, &y);
    let f = gen_admissible(rng, &x, &w);
    let pushed = pushforward(&f, &pi, &varpi).expect("continuous maps");
    let other = gen_admissible(rng, &y, &z);
    let other = if rng.chance(0.5) { other.join(&pushed).expect("same shape") } else { other };
    let mut i = Inst::new(vec![x, w, y, z]);
    i.push_table(0, 1, &f);
    i.push_table(2, 3, &other);
    i.push_map(0, 2, &pi);
    i.push_map(1, 3, &varpi);
    i
}

fn pushforward_finest(i: &Inst) -> Verdict {
    let (f, other, pi, varpi) = (hyp!(i.table(0)), hyp!(i.table(1)), hyp!(cont(i, 0)), hyp!(cont(i, 1)));
    if !varpi.is_injective() || !varpi.is_closed_map() {
        return Vacuous;
    }
    let pushed = must!(pushforward(&f, &pi, &varpi), "pushforward");
    let into_pushed = must!(base_continuous(&f, &pushed, &pi, &varpi), "sum map");
    let into_other = must!(base_continuous(&f, &other, &pi, &varpi), "sum map");
    all([
        ensure(into_pushed, || "pi + varpi is not continuous into the pushforward glueing".into()),
        ensure(!into_other || pushed.le(&other), || "a glueing receiving pi + varpi continuously lies below f_*".into()),
    ])
}

fn gen_double_pullback(rng: &mut Rng) -> Inst {
    let mut sp: Vec<FiniteSpace> = (0..6).map(|_| space(rng, 1, 3)).collect();
    let f = gen_admissible(rng, &sp[0], &sp[1]);
    let pi = gen_any_map(rng, &sp[2], &sp[0]);
    let varpi = gen_any_map(rng, &sp[3], &sp[1]);
    let rho = gen_any_map(rng, &sp[4], &sp[2]);
    let varrho = gen_any_map(rng, &sp[5], &sp[3]);
    let mut i = Inst::new(std::mem::take(&mut sp));
    i.push_table(0, 1, &f);
    i.push_map(2, 0, &pi);
    i.push_map(3, 1, &varpi);
    i.push_map(4, 2, &rho);
    i.push_map(5, 3, &varrho);
    i
}

fn double_pullback(i: &Inst) -> Verdict {
    let f = hyp!(i.table(0));
    let (pi, varpi, rho, varrho) = (hyp!(i.map(0)), hyp!(i.map(1)), hyp!(i.map(2)), hyp!(i.map(3)));
    let once = must!(pullback(&f, &must!(rho.then(&pi), "compose"), &must!(varrho.then(&varpi), "compose")), "pullback");
    let twice = must!(pullback(&must!(pullback(&f, &pi, &varpi), "pullback"), &rho, &varrho), "pullback");
    ensure(once.le(&twice), || format!("f** = {:?} is not inside (f*)* = {:?}", once.generators(), twice.generators()))
}

fn gen_surjective(rng: &mut Rng) -> Inst {
    let y = space(rng, 1, 4);
    let z = space(rng, 1, 4);
    let k = rng.range(1, y.len());
    let (x, pi) = gen_quotient(rng, &y, k);
    let k = rng.range(1, z.len());
    let (w, varpi) = gen_quotient(rng, &z, k);
    let f = gen_admissible(rng, &x, &w);
    let mut i = Inst::new(vec![x, w, y, z]);
    i.push_table(0, 1, &f);
    i.push_map(2, 0, &pi);
    i.push_map(3, 1, &varpi);
    i
}

fn push_pull_surjective(i: &Inst) -> Verdict {
    let (f, pi, varpi) = (hyp!(i.table(0)), hyp!(cont(i, 0)), hyp!(cont(i, 1)));
    if !pi.is_surjective() || !varpi.is_surjective() {
        return Vacuous;
    }
    let back = must!(pushforward(&must!(pullback(&f, &pi, &varpi), "pullback"), &pi, &varpi), "pushforward");
    ensure(back == f, || format!("(f*)_* = {:?} but f = {:?}", back.generators(), f.generators()))
}

fn gen_continuous_pair(rng: &mut Rng) -> Inst {
    let (x, w, y, z) = (space(rng, 1, 3), space(rng, 1, 3), space(rng, 1, 4), space(rng, 1, 4));
    let f = gen_admissible(rng, &x, &w);
    let pi = gen_continuous_map(rng, &y, &x);
    let varpi = gen_continuous_map(rng, &z, &w);
    let mut i = Inst::new(vec![x, w, y, z]);
    i.push_table(0, 1, &f);
    i.push_map(2, 0, &pi);
    i.push_map(3, 1, &varpi);
    i
}

fn push_pull(i: &Inst) -> Verdict {
    let (f, pi, varpi) = (hyp!(i.table(0)), hyp!(cont(i, 0)), hyp!(cont(i, 1)));
    let back = must!(pushforward(&must!(pullback(&f, &pi, &varpi), "pullback"), &pi, &varpi), "pushforward");
    ensure(back.le(&f), || format!("(f*)_* = {:?} is not inside f = {:?}", back.generators(), f.generators()))
}

fn gen_continuous_pair_forward(rng: &mut Rng) -> Inst {
    let (x, w, y, z) = (space(rng, 1, 4), space(rng, 1, 4), space(rng, 1, 3), space(rng, 1, 3));
    let f = gen_admissible(rng, &x, &w);
    let pi = gen_continuous_map(rng, &x, &y);
    let varpi = gen_continuous_map(rng, &w, &z);
    let mut i = Inst::new(vec![x, w, y, z]);
    i.push_table(0, 1, &f);
    i.push_map(0, 2, &pi);
    i.push_map(1, 3, &varpi);
    i
}

fn pull_push(i: &Inst) -> Verdict {
    let (f, pi, varpi) = (hyp!(i.table(0)), hyp!(cont(i, 0)), hyp!(cont(i, 1)));
    let back = must!(pullback(&must!(pushforward(&f, &pi, &varpi), "pushforward"), &pi, &varpi), "pullback");
    ensure(f.le(&back), || format!("(f_*)* = {:?} does not contain f = {:?}", back.generators(), f.generators()))
}

fn identity_transport(i: &Inst) -> Verdict {
    let f = hyp!(i.table(0));
    let (ix, iw) = (SpaceMap::identity(f.source()), SpaceMap::identity(f.target()));
    all([
        ensure(must!(pullback(&f, &ix, &iw), "pullback") == f, || "pullback along identities changed f".into()),
        ensure(must!(pushforward(&f, &ix, &iw), "pushforward") == f, || "pushforward along identities changed f".into()),
    ])
}

/// Index of `(a, b)` in `p × q` where `q` has `m` points.
fn pair_index(a: usize, b: usize, m: usize) -> usize {
    a * m + b
}

fn gen_pullback_cube(rng: &mut Rng) -> Inst {
    let s = |rng: &mut Rng, hi| space(rng, 1, hi);
    let (x1, w1, x2, w2) = (s(rng, 3), s(rng, 3), s(rng, 3), s(rng, 3));
    let mu = gen_continuous_map(rng, &x1, &x2);
    let nu = gen_continuous_map(rng, &w1, &w2);
    let f2 = gen_admissible(rng, &x2, &w2);
    let f1 = gen_admissible_below(rng, &x1, &w1, pullback(&f2, &mu, &nu).expect("maps fit").generators());
    let (y1, v, z1, u) = (s(rng, 3), s(rng, 2), s(rng, 3), s(rng, 2));
    let pi1 = gen_continuous_map(rng, &y1, &x1);
    let vm = gen_continuous_map(rng, &y1, &v);
    let y2 = v.product(&x2).expect("small");
    let psi =
        SpaceMap::new(y1.clone(), y2.clone(), (0..y1.len()).map(|y| pair_index(vm.apply(y), mu.apply(pi1.apply(y)), x2.len())).collect())
            .expect("in range");
    let pi2 = SpaceMap::new(y2.clone(), x2.clone(), (0..y2.len()).map(|k| k % x2.len()).collect()).expect("in range");
    let varpi1 = gen_continuous_map(rng, &z1, &w1);
    let um = gen_continuous_map(rng, &z1, &u);
    let z2 = u.product(&w2).expect("small");
    let phi = SpaceMap::new(
        z1.clone(),
        z2.clone(),
        (0..z1.len()).map(|z| pair_index(um.apply(z), nu.apply(varpi1.apply(z)), w2.len())).collect(),
    )
    .expect("in range");
    let varpi2 = SpaceMap::new(z2.clone(), w2.clone(), (0..z2.len()).map(|k| k % w2.len()).collect()).expect("in range");
    let mut i = Inst::new(vec![x1, w1, x2, w2, y1, y2, z1, z2]);
    for (a, b, m) in [(0, 2, &mu), (1, 3, &nu), (4, 0, &pi1), (5, 2, &pi2), (6, 1, &varpi1), (7, 3, &varpi2), (4, 5, &psi), (6, 7, &phi)] {
        i.push_map(a, b, m);
    }
    i.push_table(0, 1, &f1);
    i.push_table(2, 3, &f2);
    i
}

fn commutes(a: &SpaceMap, b: &SpaceMap, c: &SpaceMap, d: &SpaceMap) -> Result<bool> {
    Ok(a.then(b)?.table() == c.then(d)?.table())
}

fn pullback_cube(i: &Inst) -> Verdict {
    let ms: Vec<SpaceMap> = hyp!((0..8).map(|k| cont(i, k)).collect::<Result<Vec<_>>>());
    let (mu, nu, pi1, pi2, varpi1, varpi2, psi, phi) = (&ms[0], &ms[1], &ms[2], &ms[3], &ms[4], &ms[5], &ms[6], &ms[7]);
    let (f1, f2) = (hyp!(i.table(0)), hyp!(i.table(1)));
    if !hyp!(commutes(psi, pi2, pi1, mu)) || !hyp!(commutes(phi, varpi2, varpi1, nu)) || !hyp!(base_continuous(&f1, &f2, mu, nu)) {
        return Vacuous;
    }
    let s1 = must!(pullback(&f1, pi1, varpi1), "pullback");
    let s2 = must!(pullback(&f2, pi2, varpi2), "pullback");
    sum_continuous(s1, s2, psi.clone(), phi.clone())
}

fn gen_pushforward_cube(rng: &mut Rng) -> Inst {
    let s = |rng: &mut Rng, hi| space(rng, 1, hi);
    let (x1, w1, y1, y2, z1, z2, u, v) = (s(rng, 3), s(rng, 3), s(rng, 3), s(rng, 3), s(rng, 3), s(rng, 3), s(rng, 2), s(rng, 2));
    let pi1 = gen_continuous_map(rng, &x1, &y1);
    let psi = gen_continuous_map(rng, &y1, &y2);
    let um = gen_continuous_map(rng, &x1, &u);
    let x2 = x1.product(&u).expect("small");
    let mu = SpaceMap::new(x1.clone(), x2.clone(), (0..x1.len()).map(|x| pair_index(x, um.apply(x), u.len())).collect()).expect("in range");
    let pi2 = SpaceMap::new(x2.clone(), y2.clone(), (0..x2.len()).map(|k| psi.apply(pi1.apply(k / u.len()))).collect()).expect("in range");
    let varpi1 = gen_continuous_map(rng, &w1, &z1);
    let phi = gen_continuous_map(rng, &z1, &z2);
    let vm = gen_continuous_map(rng, &w1, &v);
    let w2 = w1.product(&v).expect("small");
    let nu = SpaceMap::new(w1.clone(), w2.clone(), (0..w1.len()).map(|w| pair_index(w, vm.apply(w), v.len())).collect()).expect("in range");
    let varpi2 =
        SpaceMap::new(w2.clone(), z2.clone(), (0..w2.len()).map(|k| phi.apply(varpi1.apply(k / v.len()))).collect()).expect("in range");
    let f2 = gen_admissible(rng, &x2, &w2);
    let f1 = gen_admissible_below(rng, &x1, &w1, pullback(&f2, &mu, &nu).expect("maps fit").generators());
    let mut i = Inst::new(vec![x1, w1, x2, w2, y1, y2, z1, z2]);
    for (a, b, m) in [(0, 2, &mu), (1, 3, &nu), (0, 4, &pi1), (2, 5, &pi2), (1, 6, &varpi1), (3, 7, &varpi2), (4, 5, &psi), (6, 7, &phi)] {
        i.push_map(a, b, m);
    }
    i.push_table(0, 1, &f1);
    i.push_table(2, 3, &f2);
    i
}

fn pushforward_cube(i: &Inst) -> Verdict {
    let ms: Vec<SpaceMap> = hyp!((0..8).map(|k| cont(i, k)).collect::<Result<Vec<_>>>());
    let (mu, nu, pi1, pi2, varpi1, varpi2, psi, phi) = (&ms[0], &ms[1], &ms[2], &ms[3], &ms[4], &ms[5], &ms[6], &ms[7]);
    let (f1, f2) = (hyp!(i.table(0)), hyp!(i.table(1)));
    if !hyp!(commutes(mu, pi2, pi1, psi)) || !hyp!(commutes(nu, varpi2, varpi1, phi)) || !hyp!(base_continuous(&f1, &f2, mu, nu)) {
        return Vacuous;
    }
    let s1 = must!(pushforward(&f1, pi1, varpi1), "pushforward");
    let s2 = must!(pushforward(&f2, pi2, varpi2), "pushforward");
    sum_continuous(s1, s2, psi.clone(), phi.clone())
}

fn gen_complete(rng: &mut Rng) -> Inst {
    let (x, y, z) = (space(rng, 1, 3), space(rng, 1, 3), space(rng, 1, 4));
    let k = rng.range(1, z.len());
    let (w, varpi) = gen_quotient(rng, &z, k);
    let f = gen_admissible(rng, &x, &w);
    let floor = AdmissibleMap::full(&x, &w).meet(&AdmissibleMap::empty(&x, &w)).expect("same shape");
    let c = w.point_closure(rng.below(w.len()));
    let lift = crate::glueing::make_admissible(&x, &w, vec![c; x.len()]).expect("constant table");
    let f = f.join(&floor).and_then(|f| f.join(&lift)).expect("same shape");
    let pi = gen_map(rng, &y, &x);
    let mut i = Inst::new(vec![x, w, y, z]);
    i.push_table(0, 1, &f);
    i.push_map(2, 0, &pi);
    i.push_map(3, 1, &varpi);
    i
}

fn compactness(i: &Inst) -> Verdict {
    let (f, pi, varpi) = (hyp!(i.table(0)), hyp!(i.map(0)), hyp!(i.map(1)));
    if !is_complete(&f) || !varpi.is_surjective() {
        return Vacuous;
    }
    let star = must!(pullback(&f, &pi, &varpi), "pullback");
    ensure(is_complete(&star), || format!("f* = {:?} kills a nonempty closed set", star.generators()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::laws::Law;

    #[test]
    fn every_law_passes_a_few_trials() {
        for law in glueing().into_iter().chain(transport()) {
            for s in 0..40 {
                let v = law.verdict(s);
                assert!(!matches!(v, Fail(_)), "{} failed on seed {s}: {v:?}", law.id());
            }
        }
    }

    #[test]
    fn instlaw_shrinks_by_points() {
        let law = InstLaw { id: "t", gen: gen_glue, check: |_| Pass };
        let case = law.generate(&mut Rng::new(3));
        assert!(law.shrink(&case).iter().all(|c| c.size() + 1 == case.size()));
    }
}
