use serde_json::{json, Value};

use super::laws::{all, boxed, ensure, hyp, must, AnyLaw, InstLaw, Law, Verdict, Verdict::*};
use super::{gen_admissible, gen_admissible_below, gen_continuous_map, gen_quotient, gen_space, Inst, Rng};
use crate::error::Result;
use crate::glueing::{glue_one_sided, make_admissible, AdmissibleMap};
use crate::limits::{detect_stabilization, factor_cone, sum_limit, Arrow, InverseSystem, SumDiagram};
use crate::space::{FiniteSpace, SpaceMap};
use crate::subset::Subset;
use crate::transport::{pullback, SumMap};

pub(crate) fn laws() -> Vec<Box<dyn AnyLaw>> {
    let mut laws = boxed(vec![
        InstLaw { id: "limits.single-object", gen: gen_single, check: single_object },
        InstLaw { id: "limits.codirected", gen: gen_codirected, check: codirected },
        InstLaw { id: "limits.remainder-families", gen: gen_shaped, check: remainder_families },
        InstLaw { id: "limits.cone-universal", gen: gen_cone, check: cone_universal },
    ]);
    laws.push(Box::new(WindowLaw));
    laws
}

fn space(rng: &mut Rng, lo: usize, hi: usize) -> FiniteSpace {
    let n = rng.range(lo, hi);
    gen_space(rng, n)
}

/// The diagram stored in an instance: space 0 is `X`, spaces `1..=k` the
/// remainders with tables `f_c`, and every map between remainders an arrow.
pub(crate) fn diagram_of(i: &Inst, k: usize) -> Result<SumDiagram> {
    let objects = (0..k).map(|c| Ok((format!("o{c}"), glue_one_sided(i.table(c)?)?))).collect::<Result<Vec<_>>>()?;
    let arrows = i
        .maps
        .iter()
        .enumerate()
        .filter(|(_, (a, b, _))| (1..=k).contains(a) && (1..=k).contains(b))
        .map(|(m, (a, b, _))| Ok(Arrow { from: a - 1, to: b - 1, phi: i.map(m)? }))
        .collect::<Result<Vec<_>>>()?;
    SumDiagram::new(i.space(0).clone(), objects, arrows)
}

/// Add `Cl y` above random points of `x` until `f(X) = Y`.
fn make_dense(rng: &mut Rng, f: AdmissibleMap) -> AdmissibleMap {
    let (x, y) = (f.source().clone(), f.target().clone());
    let mut gen = f.generators().to_vec();
    for v in (y.full() - f.eval(x.full())).iter() {
        let at = rng.below(x.len());
        for p in 0..x.len() {
            if x.below(at, p) {
                gen[p] = gen[p] | y.point_closure(v);
            }
        }
    }
    make_admissible(&x, &y, gen).expect("unions of closed sets along up-sets stay admissible")
}

fn gen_single(rng: &mut Rng) -> Inst {
    let x = space(rng, 1, 3);
    let y = space(rng, 1, 3);
    let f = gen_admissible(rng, &x, &y);
    let mut i = Inst::new(vec![x, y]);
    i.push_table(0, 1, &f);
    i
}

pub(crate) fn single_object(i: &Inst) -> Verdict {
    let d = hyp!(diagram_of(i, 1));
    let o = &d.objects()[0];
    let lim = must!(sum_limit(&d), "limit");
    let closure = o.total().closure(o.left_set());
    let dense_ok = match &lim.dense {
        Some(s) => o.total().subspace(closure).is_ok_and(|c| s.total().same_structure(&c)),
        None => closure == o.left_set(),
    };
    all([
        ensure(lim.full.total().same_structure(o.total()), || "the limit of one object is not that object".into()),
        ensure(lim.projections[0].phi().table().iter().enumerate().all(|(a, &b)| a == b), || "projection is not the identity".into()),
        ensure(lim.projections[0].is_continuous(), || "projection not continuous".into()),
        ensure(dense_ok, || "the dense part is not the closure of X".into()),
    ])
}

/// A tree of quotients below a dense least object 0; every ancestor has
/// an arrow to each descendant.
fn gen_codirected(rng: &mut Rng) -> Inst {
    let x = space(rng, 1, 3);
    let y0 = space(rng, 1, 4);
    let f0 = gen_admissible(rng, &x, &y0);
    let f0 = make_dense(rng, f0);
    let k = rng.range(1, 4);
    let mut i = Inst::new(vec![x.clone(), y0]);
    let mut fs = vec![f0];
    // For each object, its ancestors with the composite table into it.
    let mut from: Vec<Vec<(usize, Vec<usize>)>> = vec![vec![]];
    for c in 1..k {
        let p = rng.below(c);
        let yp = i.space(p + 1).clone();
        let m = rng.range(1, yp.len());
        let (yc, q) = gen_quotient(rng, &yp, m);
        let gen = fs[p].generators().iter().map(|&g| yc.closure(q.image(g))).collect();
        fs.push(make_admissible(&x, &yc, gen).expect("closure of an image of a monotone table"));
        let mut anc: Vec<(usize, Vec<usize>)> = from[p].iter().map(|(a, t)| (*a, t.iter().map(|&v| q.apply(v)).collect())).collect();
        anc.push((p, q.table().to_vec()));
        i.spaces.push(yc);
        from.push(anc);
    }
    for (c, f) in fs.iter().enumerate() {
        i.push_table(0, c + 1, f);
    }
    for (c, anc) in from.into_iter().enumerate() {
        for (a, t) in anc {
            i.maps.push((a + 1, c + 1, t));
        }
    }
    i
}

fn codirected(i: &Inst) -> Verdict {
    let k = i.spaces.len() - 1;
    let d = hyp!(diagram_of(i, k));
    // Object 0 must be the least one: it reaches every other object.
    if (1..k).any(|c| !d.arrows().iter().any(|a| a.from == 0 && a.to == c)) {
        return Vacuous;
    }
    let o = &d.objects()[0];
    if !o.is_dense_left() {
        return Vacuous;
    }
    let lim = must!(sum_limit(&d), "limit");
    let Some(dense) = &lim.dense else {
        return Fail("a dense least object gave an empty dense limit".into());
    };
    all([
        ensure(lim.families.len() == o.right().len(), || {
            format!("{} matching families over a least remainder of {} points", lim.families.len(), o.right().len())
        }),
        ensure(dense.total().same_structure(o.total()), || "the dense limit is not isomorphic to the least object".into()),
        ensure(lim.full.total().same_structure(o.total()), || "the full limit differs from the least object".into()),
        ensure(lim.projections.iter().all(|p| p.is_continuous()), || "a projection is not continuous".into()),
    ])
}

/// Random shapes: one object, a pair without arrows, one arrow, a chain
/// with its composite, or a cospan. Tables of arrow sources are drawn below
/// the pullbacks along their arrows so that every arrow is continuous.
fn gen_shaped(rng: &mut Rng) -> Inst {
    let x = space(rng, 1, 2);
    let shape = rng.below(5);
    let k = [1, 2, 2, 3, 3][shape];
    let ys: Vec<FiniteSpace> = (0..k).map(|_| space(rng, 1, 3)).collect();
    // (from, to) in an order where targets come first.
    let arrows: Vec<(usize, usize)> = match shape {
        2 => vec![(0, 1)],
        3 => vec![(1, 2), (0, 1)],
        4 => vec![(0, 2), (1, 2)],
        _ => vec![],
    };
    let mut phis: Vec<Option<SpaceMap>> = vec![None; arrows.len()];
    for (n, &(a, b)) in arrows.iter().enumerate() {
        phis[n] = Some(gen_continuous_map(rng, &ys[a], &ys[b]));
    }
    let mut fs: Vec<Option<AdmissibleMap>> = vec![None; k];
    for c in (0..k).rev() {
        let mut upper: Vec<Subset> = vec![ys[c].full(); x.len()];
        for (n, &(a, b)) in arrows.iter().enumerate() {
            if a == c {
                let target = fs[b].as_ref().expect("targets first");
                let id = SpaceMap::identity(&x);
                let pb = pullback(target, &id, phis[n].as_ref().expect("set")).expect("maps fit");
                for (u, g) in upper.iter_mut().zip(pb.generators()) {
                    *u = *u & *g;
                }
            }
        }
        fs[c] = Some(gen_admissible_below(rng, &x, &ys[c], &upper));
    }
    let mut i = Inst::new(std::iter::once(x).chain(ys).collect());
    for (c, f) in fs.iter().enumerate() {
        i.push_table(0, c + 1, f.as_ref().expect("set"));
    }
    for (n, &(a, b)) in arrows.iter().enumerate() {
        i.push_map(a + 1, b + 1, phis[n].as_ref().expect("set"));
    }
    if shape == 3 {
        let composite = phis[1].as_ref().unwrap().then(phis[0].as_ref().unwrap()).expect("composable");
        i.push_map(1, 3, &composite);
    }
    i
}

/// Tuples of remainder points compatible with every arrow, by brute force.
fn families_oracle(d: &SumDiagram) -> Vec<Vec<usize>> {
    let sizes: Vec<usize> = d.objects().iter().map(|o| o.right().len()).collect();
    let total: usize = sizes.iter().product();
    (0..total)
        .map(|mut code| {
            sizes
                .iter()
                .map(|&s| {
                    let v = code % s;
                    code /= s;
                    v
                })
                .collect::<Vec<usize>>()
        })
        .filter(|fam| d.arrows().iter().all(|a| a.phi.apply(fam[a.from]) == fam[a.to]))
        .collect()
}

pub(crate) fn remainder_families(i: &Inst) -> Verdict {
    let k = i.spaces.len() - 1;
    families_agree(&hyp!(diagram_of(i, k)))
}

/// The limit's remainder is the brute-force set of matching families with
/// the product order, `f` and the dense part computed pointwise.
pub(crate) fn families_agree(d: &SumDiagram) -> Verdict {
    let k = d.objects().len();
    let mut oracle = families_oracle(&d);
    oracle.sort();
    if oracle.is_empty() {
        return ensure(sum_limit(&d).is_err(), || "a limit was built without any matching family".into());
    }
    let lim = must!(sum_limit(&d), "limit");
    let x = d.base();
    let objs = d.objects();
    let r = lim.full.right();
    let mut fams = lim.families.clone();
    fams.sort();
    if fams != oracle || d.matching_families() != lim.families {
        return Fail(format!("families {:?}, brute force gives {oracle:?}", lim.families));
    }
    for (a, fa) in lim.families.iter().enumerate() {
        for (b, fb) in lim.families.iter().enumerate() {
            let want = (0..k).all(|c| objs[c].right().below(fa[c], fb[c]));
            if r.below(a, b) != want {
                return Fail(format!("remainder order at {fa:?}, {fb:?} is not the product order"));
            }
        }
    }
    for p in 0..x.len() {
        let want: Subset = (0..lim.families.len()).filter(|&a| (0..k).all(|c| objs[c].f().gen(p).contains(lim.families[a][c]))).collect();
        if lim.full.f().gen(p) != want {
            return Fail(format!("f(Cl{{{p}}}) in the limit is {:?}, expected {want:?}", lim.full.f().gen(p)));
        }
    }
    let dense_oracle: Vec<usize> = lim.full.f().eval(x.full()).iter().collect();
    all([
        ensure(lim.full.left().same_structure(x), || "left half changed".into()),
        ensure(lim.dense_families == dense_oracle, || format!("dense part {:?}, closure of X gives {dense_oracle:?}", lim.dense_families)),
        ensure(lim.projections.iter().all(|p| p.is_continuous()), || "a projection is not continuous".into()),
        ensure(
            d.arrows().iter().all(|a| {
                let via: Vec<usize> = lim.projections[a.from].phi().table().iter().map(|&y| a.phi.apply(y)).collect();
                via == lim.projections[a.to].phi().table()
            }),
            || "projections do not commute with the arrows".into(),
        ),
    ])
}

/// A shaped diagram plus a cone from `X +_h V` built from random families.
fn gen_cone(rng: &mut Rng) -> Inst {
    let mut i = gen_shaped(rng);
    let k = i.spaces.len() - 1;
    let Ok(d) = diagram_of(&i, k) else { return i };
    let fams = families_oracle(&d);
    if fams.is_empty() {
        return i;
    }
    let v = space(rng, 1, 2);
    let x = i.space(0).clone();
    let chosen: Vec<&Vec<usize>> = (0..v.len()).map(|_| rng.pick(&fams)).collect();
    let mut upper = vec![v.full(); x.len()];
    let mut legs = Vec::new();
    for c in 0..k {
        let table = chosen.iter().map(|f| f[c]).collect();
        let leg = SpaceMap::new(v.clone(), d.objects()[c].right().clone(), table).expect("in range");
        let pb = pullback(d.objects()[c].f(), &SpaceMap::identity(&x), &leg).expect("maps fit");
        for (u, g) in upper.iter_mut().zip(pb.generators()) {
            *u = *u & *g;
        }
        legs.push(leg);
    }
    let h = gen_admissible_below(rng, &x, &v, &upper);
    i.spaces.push(v);
    i.push_table(0, k + 1, &h);
    for (c, leg) in legs.iter().enumerate() {
        i.push_map(k + 1, c + 1, leg);
    }
    i
}

pub(crate) fn cone_universal(i: &Inst) -> Verdict {
    let Some(&(_, last, _)) = i.tables.last() else { return Vacuous };
    if last + 1 != i.spaces.len() || i.tables.len() + 1 != i.spaces.len() {
        return Vacuous;
    }
    let k = i.spaces.len() - 2;
    let d = hyp!(diagram_of(i, k));
    let h = hyp!(i.table(k));
    let apex = hyp!(glue_one_sided(h));
    let legs: Vec<SpaceMap> =
        hyp!(i.maps.iter().enumerate().filter(|(_, m)| m.0 == k + 1).map(|(n, _)| i.map(n)).collect::<Result<Vec<_>>>());
    if legs.len() != k {
        return Vacuous;
    }
    // The cone must be continuous and commute with the arrows.
    for (c, leg) in legs.iter().enumerate() {
        let m = hyp!(SumMap::new(apex.clone(), d.objects()[c].clone(), SpaceMap::identity(d.base()), leg.clone()));
        if !m.is_continuous() {
            return Vacuous;
        }
    }
    let commutes = |a: &Arrow| (0..apex.right().len()).all(|w| a.phi.apply(legs[a.from].apply(w)) == legs[a.to].apply(w));
    if !d.arrows().iter().all(commutes) {
        return Vacuous;
    }
    let lim = must!(sum_limit(&d), "limit");
    let Some(u) = factor_cone(&lim, &legs) else {
        return Fail("a commuting cone does not factor through the limit".into());
    };
    let factor = must!(SpaceMap::new(apex.right().clone(), lim.full.right().clone(), u.clone()), "factor");
    let m = must!(SumMap::new(apex.clone(), lim.full.clone(), SpaceMap::identity(d.base()), factor), "factor");
    all([
        ensure((0..k).all(|c| (0..u.len()).all(|w| lim.families[u[w]][c] == legs[c].apply(w))), || {
            "the factorization does not recover the legs".into()
        }),
        ensure(m.is_continuous(), || "the factorization is not continuous".into()),
    ])
}

/// Stabilization is monotone in the window and agrees with a direct scan.
struct WindowLaw;

#[derive(Clone, Debug)]
struct System {
    sizes: Vec<usize>,
    bonds: Vec<Vec<usize>>,
}

impl Law for WindowLaw {
    type Case = System;

    fn id(&self) -> &'static str {
        "limits.stabilization-window"
    }

    fn generate(&self, rng: &mut Rng) -> System {
        let len = rng.range(1, 9);
        let mut sizes = vec![rng.range(1, 3)];
        let mut bonds = Vec::new();
        for k in 1..len {
            let prev = sizes[k - 1];
            let (size, bond) = if rng.chance(0.6) {
                let mut perm: Vec<usize> = (0..prev).collect();
                rng.shuffle(&mut perm);
                (prev, perm)
            } else {
                let size = rng.range(1, 3);
                (size, (0..size).map(|_| rng.below(prev)).collect())
            };
            sizes.push(size);
            bonds.push(bond);
        }
        System { sizes, bonds }
    }

    fn check(&self, s: &System) -> Verdict {
        let sys = must!(InverseSystem::new(s.sizes.clone(), s.bonds.clone()), "system");
        let bijective = |k: usize| {
            let mut seen = vec![false; s.sizes[k]];
            s.bonds[k].len() == s.sizes[k] && s.bonds[k].iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        };
        let mut last: Option<usize> = Some(0);
        for w in 1..=s.bonds.len() + 1 {
            let got = must!(detect_stabilization(&sys, w), "detect");
            let scan = (0..s.bonds.len()).find(|&n| n + w <= s.bonds.len() && (n..n + w).all(bijective));
            if got != scan {
                return Fail(format!("window {w}: reported {got:?}, direct scan {scan:?}"));
            }
            match (last, got) {
                (None, Some(_)) => return Fail(format!("window {w} stabilizes although a smaller one did not")),
                (Some(a), Some(b)) if b < a => return Fail(format!("window {w} reports stage {b}, before {a}")),
                _ => {}
            }
            last = got;
        }
        Pass
    }

    fn shrink(&self, s: &System) -> Vec<System> {
        if s.sizes.len() <= 1 {
            return vec![];
        }
        let mut out = vec![System { sizes: s.sizes[..s.sizes.len() - 1].to_vec(), bonds: s.bonds[..s.bonds.len() - 1].to_vec() }];
        // Dropping the first stage keeps every other bond intact.
        out.push(System { sizes: s.sizes[1..].to_vec(), bonds: s.bonds[1..].to_vec() });
        out
    }

    fn describe(&self, s: &System) -> Value {
        json!({ "sizes": s.sizes, "bonds": s.bonds })
    }
}
