//! Seeded generators, exhaustive enumerations and the law suites.
//!
//! Randomness comes from SplitMix64 (state advance `0x9E3779B97F4A7C15`,
//! the standard xor-shift-multiply finalizer). Trial `i` of a run with seed
//! `s` uses the generator seeded with [`trial_seed`]`(s, i)`, so trials are
//! independent and reports do not depend on scheduling.

pub mod enumerate;
mod inst;
mod laws;
pub mod sweeps;

mod coarse_laws;
mod ends_laws;
mod limit_laws;
mod topology_laws;

use rand_core::{Rng as _, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::glueing::{make_admissible, AdmissibleMap, AdmissiblePair};
use crate::space::{FiniteSpace, SpaceMap};
use crate::subset::Subset;

pub use inst::Inst;
pub use laws::{replay, run_law_ids, run_laws, run_laws_with, suite_law_ids, Failure, LawReport, LawSummary, RunOptions, SUITES};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed of trial `i`: the first SplitMix64 output for state `seed + i·γ`.
pub fn trial_seed(seed: u64, i: u64) -> u64 {
    SplitMix64::seed_from_u64(seed.wrapping_add(i.wrapping_mul(GOLDEN))).next_u64()
}

/// A SplitMix64 stream with the small helpers the generators need.
#[derive(Clone, Debug)]
pub struct Rng(SplitMix64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n` by multiply-shift; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// True with probability `p`, resolved to 1/2^32.
    pub fn chance(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 32) as f64) < p * 4_294_967_296.0
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    /// Each index of `0..n` independently with probability `p`.
    pub fn subset(&mut self, n: usize, p: f64) -> Subset {
        (0..n).filter(|_| self.chance(p)).collect()
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            items.swap(i, self.below(i + 1));
        }
    }
}

/// A random preorder on `n` points: points fall into random classes, the
/// classes carry the reachability closure of a random DAG.
pub fn gen_space(rng: &mut Rng, n: usize) -> FiniteSpace {
    assert!((1..=crate::subset::CAPACITY).contains(&n), "space size out of range");
    let k = if rng.chance(0.5) { n } else { rng.range(1, n) };
    let class: Vec<usize> = (0..n).map(|i| if k == n { i } else { rng.below(k) }).collect();
    let mut order: Vec<usize> = (0..k).collect();
    rng.shuffle(&mut order);
    let p = *rng.pick(&[0.0, 0.2, 0.4, 0.7]);
    // reach[a] holds every class below class a.
    let mut reach: Vec<Subset> = (0..k).map(Subset::singleton).collect();
    for j in 0..k {
        for i in 0..j {
            if rng.chance(p) {
                let (lo, hi) = (order[i], order[j]);
                reach[hi].insert(lo);
            }
        }
    }
    for j in 0..k {
        let hi = order[j];
        let mut acc = reach[hi];
        for lo in reach[hi] {
            acc = acc | reach[lo];
        }
        reach[hi] = acc;
    }
    let closures = (0..n).map(|x| (0..n).filter(|&y| reach[class[x]].contains(class[y])).collect()).collect();
    FiniteSpace::from_closures(FiniteSpace::default_labels(n), closures).expect("reachability is a preorder")
}

/// Points of `x` ordered so that every point comes after the points strictly
/// below it.
fn bottom_up(x: &FiniteSpace) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by_key(|&p| (x.point_closure(p).len(), p));
    order
}

/// A random admissible map `x -> y` with `gen(p) ⊆ upper[p]`; `upper` must
/// be a monotone table of closed sets.
pub fn gen_admissible_below(rng: &mut Rng, x: &FiniteSpace, y: &FiniteSpace, upper: &[Subset]) -> AdmissibleMap {
    let p = *rng.pick(&[0.0, 0.1, 0.25, 0.5, 0.8]);
    let mut gen: Vec<Option<Subset>> = vec![None; x.len()];
    for v in bottom_up(x) {
        let cl = x.point_closure(v);
        if let Some(twin) = cl.iter().find(|&u| u != v && x.below(v, u) && gen[u].is_some()) {
            gen[v] = gen[twin];
            continue;
        }
        let lower = cl.iter().filter_map(|u| gen[u]).fold(Subset::EMPTY, |a, b| a | b);
        let extra = rng.subset(y.len(), p) & upper[v];
        gen[v] = Some(y.closure(lower | extra) & upper[v]);
    }
    let gen = gen.into_iter().map(|g| g.expect("every point visited")).collect();
    make_admissible(x, y, gen).expect("sweep produces a monotone closed table")
}

pub fn gen_admissible(rng: &mut Rng, x: &FiniteSpace, y: &FiniteSpace) -> AdmissibleMap {
    gen_admissible_below(rng, x, y, &vec![y.full(); x.len()])
}

/// A random admissible pair: `g(q)` is drawn below the largest closed set
/// compatible with `f` in both pair conditions.
pub fn gen_pair(rng: &mut Rng, x: &FiniteSpace, y: &FiniteSpace) -> AdmissiblePair {
    let f = gen_admissible(rng, x, y);
    let upper: Vec<Subset> = (0..y.len())
        .map(|q| {
            let cl = y.point_closure(q);
            let fits: Subset = (0..x.len()).filter(|&p| f.gen(p).is_subset(cl)).collect();
            let bound = (0..x.len()).filter(|&p| f.gen(p).contains(q)).fold(x.full(), |acc, p| acc & x.point_closure(p));
            fits & bound
        })
        .collect();
    let g = gen_admissible_below(rng, y, x, &upper);
    crate::glueing::check_pair(f, g).expect("g is drawn inside the pair bounds")
}

/// A random point map (not necessarily continuous).
pub fn gen_map(rng: &mut Rng, x: &FiniteSpace, y: &FiniteSpace) -> SpaceMap {
    let table = (0..x.len()).map(|_| rng.below(y.len())).collect();
    SpaceMap::new(x.clone(), y.clone(), table).expect("indices in range")
}

/// A random continuous map: points are assigned top-down, each inside the
/// intersection of the closures of the images of the points above it.
/// Falls back to a constant map after a few dead ends.
pub fn gen_continuous_map(rng: &mut Rng, x: &FiniteSpace, y: &FiniteSpace) -> SpaceMap {
    let mut order = bottom_up(x);
    order.reverse();
    'attempt: for _ in 0..8 {
        let mut img: Vec<Option<usize>> = vec![None; x.len()];
        for &v in &order {
            let mut allowed = y.full();
            let mut twin = None;
            for u in 0..x.len() {
                if let Some(w) = img[u] {
                    if x.below(v, u) {
                        allowed = allowed & y.point_closure(w);
                        if x.below(u, v) {
                            twin = Some(w);
                        }
                    }
                }
            }
            let choice = match twin {
                Some(w) => w,
                None => {
                    let opts: Vec<usize> = allowed.iter().collect();
                    if opts.is_empty() {
                        continue 'attempt;
                    }
                    *rng.pick(&opts)
                }
            };
            img[v] = Some(choice);
        }
        let table = img.into_iter().map(|w| w.expect("assigned")).collect();
        let m = SpaceMap::new(x.clone(), y.clone(), table).expect("indices in range");
        debug_assert!(m.is_continuous());
        return m;
    }
    SpaceMap::constant(x, y, rng.below(y.len())).expect("nonempty codomain")
}

/// A continuous map, or any map, with equal odds.
pub fn gen_any_map(rng: &mut Rng, x: &FiniteSpace, y: &FiniteSpace) -> SpaceMap {
    if rng.chance(0.5) {
        gen_continuous_map(rng, x, y)
    } else {
        gen_map(rng, x, y)
    }
}

/// A random quotient of `y` onto `k` points together with the quotient map,
/// which is continuous and surjective.
pub fn gen_quotient(rng: &mut Rng, y: &FiniteSpace, k: usize) -> (FiniteSpace, SpaceMap) {
    let k = k.clamp(1, y.len());
    let mut q: Vec<usize> = (0..y.len()).map(|i| if i < k { i } else { rng.below(k) }).collect();
    rng.shuffle(&mut q);
    let x = y.quotient(&q, FiniteSpace::default_labels(k)).expect("surjective labelling");
    let m = SpaceMap::new(y.clone(), x.clone(), q).expect("indices in range");
    (x, m)
}

/// A nonempty closed subspace of `z` with its (closed, injective) inclusion.
pub fn gen_closed_subspace(rng: &mut Rng, z: &FiniteSpace) -> (FiniteSpace, SpaceMap) {
    let seed = rng.subset(z.len(), 0.4) | Subset::singleton(rng.below(z.len()));
    let c = z.closure(seed);
    let w = z.subspace(c).expect("nonempty");
    let m = SpaceMap::new(w.clone(), z.clone(), c.iter().collect()).expect("indices in range");
    (w, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::validate_space;

    #[test]
    fn determinism() {
        let a = gen_space(&mut Rng::new(5), 5);
        let b = gen_space(&mut Rng::new(5), 5);
        assert_eq!(a, b);
        let y = gen_space(&mut Rng::new(6), 4);
        assert_eq!(gen_admissible(&mut Rng::new(1), &a, &y), gen_admissible(&mut Rng::new(1), &a, &y));
        assert_ne!(trial_seed(7, 0), trial_seed(7, 1));
        assert_eq!(trial_seed(7, 3), trial_seed(7, 3));
    }

    #[test]
    fn one_point_space() {
        for s in 0..20 {
            assert_eq!(gen_space(&mut Rng::new(s), 1).len(), 1);
        }
    }

    #[test]
    fn generated_spaces_validate() {
        let mut rng = Rng::new(11);
        for _ in 0..1000 {
            let x = gen_space(&mut rng, 6);
            let below: Vec<Vec<bool>> = (0..6).map(|a| (0..6).map(|b| x.below(a, b)).collect()).collect();
            assert!(validate_space(x.labels().to_vec(), &below).is_ok());
        }
    }

    #[test]
    fn generated_maps_pass_validation() {
        let mut rng = Rng::new(12);
        let pt = FiniteSpace::point("y");
        for _ in 0..1000 {
            let n = rng.range(1, 5);
            let x = gen_space(&mut rng, n);
            let m = rng.range(1, 4);
            let y = gen_space(&mut rng, m);
            let f = gen_admissible(&mut rng, &x, &y);
            assert!(make_admissible(&x, &y, f.generators().to_vec()).is_ok());
            let one = gen_admissible(&mut rng, &x, &pt);
            assert!(one.generators().iter().all(|g| g.len() <= 1));
            let pair = gen_pair(&mut rng, &x, &y);
            assert!(crate::glueing::check_pair(pair.f, pair.g).is_ok());
            assert!(gen_continuous_map(&mut rng, &x, &y).is_continuous());
            let (q, m) = gen_quotient(&mut rng, &x, 2);
            assert!(m.is_continuous() && m.is_surjective() && q.len() <= 2);
            let (_, i) = gen_closed_subspace(&mut rng, &x);
            assert!(i.is_continuous() && i.is_injective() && i.is_closed_map());
        }
    }

    #[test]
    fn rng_ranges() {
        let mut rng = Rng::new(0);
        for _ in 0..1000 {
            assert!(rng.below(3) < 3);
            let r = rng.range(2, 4);
            assert!((2..=4).contains(&r));
        }
        assert!(!Rng::new(1).chance(0.0));
        assert!(Rng::new(1).chance(1.0));
    }
}
