//! Exhaustive sweeps over every small instance, run in parallel.

use rayon::prelude::*;

use super::enumerate::{all_admissible, all_continuous_maps, all_maps, representatives_up_to, spaces_up_to};
use super::laws::{ensure, Verdict};
use super::{coarse_laws, limit_laws, topology_laws, Inst};
use crate::coarse::{CoarseStructure, Relation};
use crate::glueing::{check_pair, decompose, decompose_partition, glue_one_sided, AdmissibleMap, SumSpace};
use crate::limits::{Arrow, SumDiagram};
use crate::space::{FiniteSpace, SpaceMap};
use crate::subset::Subset;
use crate::transport::pullback;

/// Outcome of one sweep.
#[derive(Clone, Debug, Default)]
pub struct Sweep {
    pub name: String,
    /// Instances on which every check ran.
    pub cases: u64,
    /// Instances whose hypotheses failed.
    pub vacuous: u64,
    pub violations: u64,
    /// The first few violation messages.
    pub examples: Vec<String>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn merge(mut self, other: Sweep) -> Sweep {
        self.cases += other.cases;
        self.vacuous += other.vacuous;
        self.violations += other.violations;
        self.examples.extend(other.examples);
        self.examples.truncate(5);
        self
    }

    fn record(&mut self, what: &str, v: Verdict) {
        match v {
            Verdict::Pass => self.cases += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Fail(m) => {
                self.violations += 1;
                if self.examples.len() < 5 {
                    self.examples.push(format!("{what}: {m}"));
                }
            }
        }
    }
}

fn collect(name: &str, parts: impl ParallelIterator<Item = Sweep>) -> Sweep {
    let total = parts.reduce(Sweep::default, Sweep::merge);
    Sweep { name: name.to_string(), ..total }
}

/// Every admissible pair between labelled topologies on at most `max`
/// points: the four-condition family, the closure formula, both embeddings,
/// decomposition and density.
pub fn glue_sweep(max: usize) -> Sweep {
    let spaces = spaces_up_to(max);
    let jobs: Vec<(&FiniteSpace, &FiniteSpace)> = spaces.iter().flat_map(|x| spaces.iter().map(move |y| (x, y))).collect();
    let checks: [(&str, fn(&Inst) -> Verdict); 5] = [
        ("tau", topology_laws::tau_axioms),
        ("closure", topology_laws::closure_formula),
        ("embedding", topology_laws::embedding),
        ("decompose", topology_laws::decompose_glue),
        ("density", topology_laws::density),
    ];
    collect(
        "glue",
        jobs.into_par_iter().map(|(x, y)| {
            let mut s = Sweep::default();
            let gs = all_admissible(y, x);
            for f in all_admissible(x, y) {
                for g in &gs {
                    let Ok(pair) = check_pair(f.clone(), g.clone()) else { continue };
                    let mut i = Inst::new(vec![x.clone(), y.clone()]);
                    i.push_table(0, 1, &pair.f);
                    i.push_table(1, 0, &pair.g);
                    let verdict = checks.iter().map(|(_, c)| c(&i)).find(|v| *v != Verdict::Pass).unwrap_or(Verdict::Pass);
                    s.record("glue", verdict);
                }
            }
            s
        }),
    )
}

/// Every labelled topology on at most `max` points split along every
/// nonempty proper subset glues back to itself; open subsets go through
/// [`decompose`], the others through [`decompose_partition`].
pub fn decompose_sweep(max: usize) -> Sweep {
    collect(
        "decompose",
        spaces_up_to(max).into_par_iter().map(|z| {
            let mut s = Sweep::default();
            for a in (1..(1u64 << z.len()) - 1).map(Subset) {
                let split = if z.is_open(a) { decompose(&z, a) } else { decompose_partition(&z, a) };
                let v = match split.and_then(|d| d.reglues_to(&z)) {
                    Ok(true) => Verdict::Pass,
                    Ok(false) => Verdict::Fail(format!("splitting along {a:?} does not reglue")),
                    Err(e) => Verdict::Fail(format!("decompose along {a:?}: {e}")),
                };
                s.record("decompose", v);
            }
            s
        }),
    )
}

/// Every admissible `f: X -> W`, continuous `π: Y -> X`, `ϖ: Z -> W` and
/// admissible `f': Y -> Z`, with `X, W` up to `small` points and `Y, Z` up
/// to `large`, one space per homeomorphism class: `π + ϖ` is continuous
/// from the `f'` glueing exactly when `f' ⊆ f*`, and always from `f*`.
pub fn pullback_sweep(small: usize, large: usize) -> Sweep {
    let smalls = representatives_up_to(small);
    let larges = representatives_up_to(large);
    let mut jobs = Vec::new();
    for x in &smalls {
        for w in &smalls {
            for y in &larges {
                for z in &larges {
                    jobs.push((x, w, y, z));
                }
            }
        }
    }
    collect(
        "pullback",
        jobs.into_par_iter().map(|(x, w, y, z)| {
            let mut s = Sweep::default();
            let sources: Vec<Vec<Subset>> = all_admissible(y, z).iter().map(|o| o.generators().to_vec()).collect();
            let pis = all_continuous_maps(y, x);
            let varpis = all_continuous_maps(z, w);
            for f in all_admissible(x, w) {
                for pi in &pis {
                    for varpi in &varpis {
                        let star = pullback(&f, pi, varpi).expect("maps fit");
                        let check = SumContinuity::new(&f, pi, varpi);
                        let star_gen = star.generators();
                        s.record("continuity", ensure(check.holds(star_gen), || "π + ϖ is not continuous from f*".into()));
                        for other in &sources {
                            let below = other.iter().zip(star_gen).all(|(a, b)| a.is_subset(*b));
                            let cont = check.holds(other);
                            s.record(
                                "coarsest",
                                ensure(cont == below, || format!("f' = {other:?}: continuous {cont}, below f* = {star_gen:?} {below}")),
                            );
                        }
                    }
                }
            }
            s
        }),
    )
}

/// Continuity of `π + ϖ: Y +_{f'} Z -> X +_f W` for continuous `π`, `ϖ`, as
/// preservation of point closures by the total map. A right point `z` has
/// closure `Cl_Z{z}`, sent into `Cl_W{ϖ z}` by continuity of `ϖ`; a left
/// point `y` has closure `Cl_Y{y} ∪ f'{y}`, whose left part lands in
/// `Cl_X{π y}` by continuity of `π`. What remains is `ϖ(f'{y}) ⊆ f{π y}`.
struct SumContinuity {
    /// `ϖ(B)` for every subset `B` of `Z`, by mask.
    image: Vec<Subset>,
    /// `f{π y}` for every `y`.
    bound: Vec<Subset>,
}

impl SumContinuity {
    fn new(f: &AdmissibleMap, pi: &SpaceMap, varpi: &SpaceMap) -> SumContinuity {
        let image = (0..1u64 << varpi.domain().len()).map(|m| varpi.image(Subset(m))).collect();
        let bound = (0..pi.domain().len()).map(|y| f.gen(pi.apply(y))).collect();
        SumContinuity { image, bound }
    }

    fn holds(&self, gen: &[Subset]) -> bool {
        gen.iter().zip(&self.bound).all(|(g, b)| self.image[g.0 as usize].is_subset(*b))
    }
}

/// Every diagram over a base of at most `base` points whose remainders have
/// at most `rem` points, in three shapes: one object, two objects without
/// arrows, and two objects with one arrow. Checks the matching families
/// and, for every cone from a remainder of at most `apex` points, the
/// factorization.
pub fn limit_sweep(base: usize, rem: usize, apex: usize) -> Sweep {
    let xs = representatives_up_to(base);
    let ys = representatives_up_to(rem);
    let vs = representatives_up_to(apex);
    let mut jobs = Vec::new();
    for x in &xs {
        for y1 in &ys {
            jobs.push((x, y1, None));
            for y2 in &ys {
                jobs.push((x, y1, Some(y2)));
            }
        }
    }
    collect(
        "limits",
        jobs.into_par_iter().map(|(x, y1, y2)| {
            let mut s = Sweep::default();
            let f1s = all_admissible(x, y1);
            let mut diagrams: Vec<(Inst, SumDiagram)> = Vec::new();
            match y2 {
                None => {
                    for f1 in &f1s {
                        let mut i = Inst::new(vec![x.clone(), y1.clone()]);
                        i.push_table(0, 1, f1);
                        s.record("single", limit_laws::single_object(&i));
                        let d = limit_laws::diagram_of(&i, 1).expect("one object");
                        diagrams.push((i, d));
                    }
                }
                Some(y2) => {
                    let f2s = all_admissible(x, y2);
                    let o1s: Vec<SumSpace> = f1s.iter().map(|f| glue_one_sided(f.clone()).expect("small")).collect();
                    let o2s: Vec<SumSpace> = f2s.iter().map(|f| glue_one_sided(f.clone()).expect("small")).collect();
                    let phis: Vec<Option<SpaceMap>> = std::iter::once(None).chain(all_maps(y1, y2).into_iter().map(Some)).collect();
                    for (f1, o1) in f1s.iter().zip(&o1s) {
                        for (f2, o2) in f2s.iter().zip(&o2s) {
                            for phi in &phis {
                                let arrows = phi.iter().map(|p| Arrow { from: 0, to: 1, phi: p.clone() }).collect();
                                let objects = vec![("o0".to_string(), o1.clone()), ("o1".to_string(), o2.clone())];
                                let Ok(d) = SumDiagram::new(x.clone(), objects, arrows) else { continue };
                                if vs.is_empty() {
                                    s.record("families", limit_laws::families_agree(&d));
                                    continue;
                                }
                                let mut i = Inst::new(vec![x.clone(), y1.clone(), y2.clone()]);
                                i.push_table(0, 1, f1);
                                i.push_table(0, 2, f2);
                                if let Some(phi) = phi {
                                    i.push_map(1, 2, phi);
                                }
                                diagrams.push((i, d));
                            }
                        }
                    }
                }
            }
            for (i, d) in diagrams {
                s.record("families", limit_laws::families_agree(&d));
                cones(&mut s, &i, &d, &vs);
            }
            s
        }),
    )
}

/// Every commuting cone `id + φ_c` from `X +_h V` with `V` in `vs`.
fn cones(s: &mut Sweep, i: &Inst, d: &SumDiagram, vs: &[FiniteSpace]) {
    let k = d.objects().len();
    for v in vs {
        let legs: Vec<Vec<SpaceMap>> = d.objects().iter().map(|o| all_maps(v, o.right())).collect();
        let mut idx = vec![0usize; k];
        loop {
            let chosen: Vec<&SpaceMap> = (0..k).map(|c| &legs[c][idx[c]]).collect();
            for h in all_admissible(i.space(0), v) {
                let mut j = i.clone();
                j.spaces.push(v.clone());
                j.push_table(0, k + 1, &h);
                for (c, leg) in chosen.iter().enumerate() {
                    j.push_map(k + 1, c + 1, leg);
                }
                s.record("cone", limit_laws::cone_universal(&j));
            }
            let mut c = 0;
            while c < k {
                idx[c] += 1;
                if idx[c] < legs[c].len() {
                    break;
                }
                idx[c] = 0;
                c += 1;
            }
            if c == k {
                break;
            }
        }
    }
}

/// Every set partition of `0..n`, as class labels.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for p in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let classes = v.iter().max().map_or(0, |m| m + 1);
                (0..=classes).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
        debug_assert!(out.iter().all(|v| v.len() == p + 1));
    }
    out
}

/// Controlled relations against the generated-family search, on every
/// relation of the ground. Grounds below `exhaustive` use every single
/// generator relation; larger grounds up to `max` use each partition once as
/// a full equivalence and once as a chain of pairs, which reaches every
/// coarse structure a finite set carries.
pub fn coarse_sweep(exhaustive: usize, max: usize) -> Sweep {
    let mut jobs: Vec<(usize, Vec<Relation>)> = Vec::new();
    for n in 1..=max {
        if n < exhaustive {
            jobs.push((n, vec![]));
            for m in 0..1u64 << (n * n) {
                let r = Relation::from_pairs(n, (0..n * n).filter(|b| m >> b & 1 == 1).map(|b| (b / n, b % n))).expect("in range");
                jobs.push((n, vec![r]));
            }
        } else {
            for p in partitions(n) {
                let full = Relation::from_pairs(n, (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| p[a] == p[b]));
                let chain = Relation::from_pairs(n, (0..n).filter_map(|a| (a + 1..n).find(|&b| p[a] == p[b]).map(|b| (a, b))));
                jobs.push((n, vec![full.expect("in range")]));
                jobs.push((n, vec![chain.expect("in range")]));
            }
        }
    }
    collect(
        "coarse",
        jobs.into_par_iter().map(|(n, gens)| {
            let mut s = Sweep::default();
            let v = match CoarseStructure::unlabeled(n, gens) {
                Ok(cs) => coarse_laws::search_agrees(&cs, 1 << 16),
                Err(e) => Verdict::Fail(format!("structure: {e}")),
            };
            s.record("search", v);
            s
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transport::SumMap;

    #[test]
    fn closure_check_matches_total_map_continuity() {
        let reps = representatives_up_to(2);
        for x in &reps {
            for w in &reps {
                for y in &reps {
                    for z in &reps {
                        let sources = all_admissible(y, z);
                        for f in all_admissible(x, w) {
                            let target = glue_one_sided(f.clone()).unwrap();
                            for pi in all_continuous_maps(y, x) {
                                for varpi in all_continuous_maps(z, w) {
                                    let check = SumContinuity::new(&f, &pi, &varpi);
                                    for o in &sources {
                                        let from = glue_one_sided(o.clone()).unwrap();
                                        let m = SumMap::new(from, target.clone(), pi.clone(), varpi.clone()).unwrap();
                                        assert_eq!(check.holds(o.generators()), m.is_continuous());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_counts_are_bell_numbers() {
        let counts: Vec<usize> = (0..=5).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn small_sweeps_pass() {
        for s in [glue_sweep(2), decompose_sweep(3), pullback_sweep(1, 2), limit_sweep(1, 2, 1), coarse_sweep(2, 3)] {
            assert!(s.passed(), "{}: {:?}", s.name, s.examples);
            assert!(s.cases > 0, "{} ran nothing", s.name);
        }
    }
}
