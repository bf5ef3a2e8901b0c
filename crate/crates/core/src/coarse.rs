//! Finitely generated coarse structures on finite ground sets.
//!
//! A structure is stored as the antichain of maximal controlled relations
//! obtained by saturating `{Δ} ∪ generators` under unions, compositions and
//! inverses. On a finite ground set unions collapse the antichain to one
//! element, the equivalence relation generated by the generators, but the
//! worklist does not rely on that.
//!
//! Properness is vacuous here (every subset of a finite set is
//! topologically bounded) and coarse connectivity means every pair of
//! points is controlled.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{Subset, CAPACITY};

/// Default bound on relation insertions during saturation.
pub const SATURATION_CAP: usize = 10_000;

/// A relation on `0..n`; `rows[x]` holds every `y` with `(x, y)` in it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    rows: Vec<Subset>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation { n, rows: vec![Subset::EMPTY; n] }
    }

    pub fn diagonal(n: usize) -> Relation {
        Relation { n, rows: (0..n).map(Subset::singleton).collect() }
    }

    pub fn full(n: usize) -> Relation {
        Relation { n, rows: vec![Subset::full(n); n] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Relation> {
        if n > CAPACITY {
            return Err(Error::Capacity { needed: n, cap: CAPACITY });
        }
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::UnknownPoint(format!("({x},{y})")));
            }
            r.rows[x].insert(y);
        }
        Ok(r)
    }

    pub fn from_rows(rows: Vec<Subset>) -> Relation {
        let n = rows.len();
        debug_assert!(rows.iter().all(|r| r.is_subset(Subset::full(n))));
        Relation { n, rows }
    }

    /// `a × a`.
    pub fn square(n: usize, a: Subset) -> Relation {
        Relation { n, rows: (0..n).map(|x| if a.contains(x) { a } else { Subset::EMPTY }).collect() }
    }

    /// `{(f(s), g(s))}` for two maps out of a common domain into `0..n`.
    pub fn graph(n: usize, f: &[usize], g: &[usize]) -> Relation {
        let mut r = Relation::empty(n);
        for (&a, &b) in f.iter().zip(g) {
            r.rows[a].insert(b);
        }
        r
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Subset] {
        &self.rows
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.rows[x].remove(y);
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(x, r)| r.iter().map(move |y| (x, y)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation { n: self.n, rows: self.rows.iter().zip(&other.rows).map(|(a, b)| *a | *b).collect() }
    }

    pub fn inverse(&self) -> Relation {
        let mut r = Relation::empty(self.n);
        for (x, y) in self.pairs() {
            r.rows[y].insert(x);
        }
        r
    }

    /// `self ∘ first`: pairs `(x, z)` with `(x, y) ∈ first` and `(y, z) ∈ self`.
    pub fn compose(&self, first: &Relation) -> Relation {
        let rows = first.rows.iter().map(|r| r.iter().fold(Subset::EMPTY, |acc, y| acc | self.rows[y])).collect();
        Relation { n: self.n, rows }
    }

    /// `𝔅(b, self) = {x : ∃y ∈ b, (x, y) ∈ self}`.
    pub fn neighbourhood(&self, b: Subset) -> Subset {
        (0..self.n).filter(|&x| self.rows[x].intersects(b)).collect()
    }

    /// `{(f x, f x')}` as a relation on `0..m`.
    pub fn image(&self, f: &[usize], m: usize) -> Relation {
        let mut r = Relation::empty(m);
        for (x, y) in self.pairs() {
            r.rows[f[x]].insert(f[y]);
        }
        r
    }

    /// `{(x, x') : (π x, π x') ∈ self}` on the domain of `pi`.
    pub fn preimage(&self, pi: &[usize]) -> Relation {
        let rows = pi.iter().map(|&p| (0..pi.len()).filter(|&x| self.rows[p].contains(pi[x])).collect()).collect();
        Relation { n: pi.len(), rows }
    }
}

/// A coarse structure on a finite labelled ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseStructure {
    ground: Vec<String>,
    generators: Vec<Relation>,
    maxima: Vec<Relation>,
}

/// Insert `r` into an antichain of maxima unless it is dominated; drop the
/// elements it dominates. Returns whether it was inserted.
fn absorb(maxima: &mut Vec<Relation>, r: Relation) -> bool {
    if maxima.iter().any(|m| r.is_subset(m)) {
        return false;
    }
    maxima.retain(|m| !m.is_subset(&r));
    maxima.push(r);
    true
}

impl CoarseStructure {
    pub fn new(ground: Vec<String>, generators: Vec<Relation>) -> Result<CoarseStructure> {
        CoarseStructure::with_cap(ground, generators, SATURATION_CAP)
    }

    pub fn with_cap(ground: Vec<String>, generators: Vec<Relation>, cap: usize) -> Result<CoarseStructure> {
        let n = ground.len();
        if n > CAPACITY {
            return Err(Error::Capacity { needed: n, cap: CAPACITY });
        }
        let mut seen = BTreeSet::new();
        for l in &ground {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if let Some(g) = generators.iter().find(|g| g.n != n) {
            return Err(Error::Mismatch(format!("generator on {} points over a ground of {n}", g.n)));
        }
        let mut maxima = Vec::new();
        let mut queue = VecDeque::new();
        let mut inserted = 0usize;
        for r in std::iter::once(Relation::diagonal(n)).chain(generators.iter().cloned()) {
            if absorb(&mut maxima, r.clone()) {
                queue.push_back(r);
            }
        }
        while let Some(s) = queue.pop_front() {
            if !maxima.contains(&s) {
                continue;
            }
            let mut fresh = vec![s.inverse(), s.compose(&s)];
            for m in &maxima {
                fresh.push(s.union(m));
                fresh.push(s.compose(m));
                fresh.push(m.compose(&s));
            }
            for r in fresh {
                if absorb(&mut maxima, r.clone()) {
                    inserted += 1;
                    if inserted > cap {
                        return Err(Error::SaturationOverflow(inserted));
                    }
                    queue.push_back(r);
                }
            }
        }
        maxima.sort();
        Ok(CoarseStructure { ground, generators, maxima })
    }

    pub fn unlabeled(n: usize, generators: Vec<Relation>) -> Result<CoarseStructure> {
        CoarseStructure::new((0..n).map(|i| format!("p{i}")).collect(), generators)
    }

    /// Only subsets of the diagonal are controlled.
    pub fn trivial(ground: Vec<String>) -> Result<CoarseStructure> {
        CoarseStructure::new(ground, vec![])
    }

    /// Every relation is controlled.
    pub fn maximal(ground: Vec<String>) -> Result<CoarseStructure> {
        let n = ground.len();
        CoarseStructure::new(ground, vec![Relation::full(n)])
    }

    /// The bounded structure of a finite metric: generated by the pairs at
    /// distance at most `r`, one generator per radius.
    pub fn metric_ball(ground: Vec<String>, dist: &[Vec<f64>], radii: &[f64]) -> Result<CoarseStructure> {
        let n = ground.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare { rows: dist.len(), points: n });
        }
        for x in 0..n {
            for y in 0..n {
                if dist[x][y] < 0.0 || dist[x][y] != dist[y][x] || (x == y && dist[x][y] != 0.0) {
                    return Err(Error::Precondition(format!("d({},{}) is not a metric value", ground[x], ground[y])));
                }
            }
        }
        let gens = radii
            .iter()
            .map(|&r| Relation::from_pairs(n, (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| dist[x][y] <= r)))
            .collect::<Result<Vec<_>>>()?;
        CoarseStructure::new(ground, gens)
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn generators(&self) -> &[Relation] {
        &self.generators
    }

    pub fn maxima(&self) -> &[Relation] {
        &self.maxima
    }

    pub fn controlled(&self, e: &Relation) -> Result<bool> {
        if e.n != self.len() {
            return Err(Error::Mismatch(format!("relation on {} points, ground has {}", e.n, self.len())));
        }
        Ok(self.maxima.iter().any(|m| e.is_subset(m)))
    }

    fn dominated(&self, e: &Relation) -> bool {
        self.maxima.iter().any(|m| e.is_subset(m))
    }

    pub fn is_bounded(&self, a: Subset) -> bool {
        self.dominated(&Relation::square(self.len(), a))
    }

    /// `a ≼ b`: `a ⊆ 𝔅(b, s)` for some controlled `s`.
    pub fn preceq(&self, a: Subset, b: Subset) -> bool {
        self.maxima.iter().any(|m| a.is_subset(m.neighbourhood(b)))
    }

    pub fn sim(&self, a: Subset, b: Subset) -> bool {
        self.preceq(a, b) && self.preceq(b, a)
    }

    /// Every pair of points is controlled.
    pub fn is_connected(&self) -> bool {
        self.dominated(&Relation::full(self.len()))
    }

    /// Maximal bounded sets: the classes `{y : (x, y) ∈ s}` of the maxima
    /// that are themselves bounded, deduplicated.
    fn bounded_witnesses(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self
            .maxima
            .iter()
            .flat_map(|m| m.rows.iter().copied())
            .chain((0..self.len()).map(Subset::singleton))
            .filter(|&b| self.is_bounded(b))
            .collect();
        out.sort_by_key(|s| s.0);
        out.dedup();
        out
    }

    /// Subsets tested for the bounded-preimage clause.
    fn bounded_test_sets(&self) -> Vec<Subset> {
        if self.len() <= 12 {
            (0..1u64 << self.len()).map(Subset).filter(|&b| self.is_bounded(b)).collect()
        } else {
            self.bounded_witnesses()
        }
    }

    /// `(ε, ζ)` with `ζ` induced by `π⁻¹` of the maxima of `self` along `pi`.
    pub fn pullback_coarse(&self, pi: &[usize], ground: Vec<String>) -> Result<CoarseStructure> {
        if pi.len() != ground.len() {
            return Err(Error::TableSize { expected: ground.len(), got: pi.len() });
        }
        if let Some(&p) = pi.iter().find(|&&p| p >= self.len()) {
            return Err(Error::UnknownPoint(format!("index {p}")));
        }
        let gens = self.maxima.iter().map(|m| m.preimage(pi)).collect();
        CoarseStructure::new(ground, gens)
    }
}

fn check_table(f: &[usize], from: &CoarseStructure, to: &CoarseStructure) -> Result<()> {
    if f.len() != from.len() {
        return Err(Error::TableSize { expected: from.len(), got: f.len() });
    }
    if let Some(&y) = f.iter().find(|&&y| y >= to.len()) {
        return Err(Error::UnknownPoint(format!("index {y}")));
    }
    Ok(())
}

/// Images of controlled sets are controlled and preimages of bounded sets
/// are bounded.
pub fn is_coarse_map(f: &[usize], from: &CoarseStructure, to: &CoarseStructure) -> Result<bool> {
    check_table(f, from, to)?;
    if !from.maxima.iter().all(|m| to.dominated(&m.image(f, to.len()))) {
        return Ok(false);
    }
    Ok(to.bounded_test_sets().into_iter().all(|b| {
        let pre: Subset = (0..f.len()).filter(|&x| b.contains(f[x])).collect();
        from.is_bounded(pre)
    }))
}

/// `{(f s, g s)}` is controlled.
pub fn are_close(f: &[usize], g: &[usize], target: &CoarseStructure) -> Result<bool> {
    if f.len() != g.len() {
        return Err(Error::Mismatch(format!("domains of {} and {} points", f.len(), g.len())));
    }
    if let Some(&y) = f.iter().chain(g).find(|&&y| y >= target.len()) {
        return Err(Error::UnknownPoint(format!("index {y}")));
    }
    Ok(target.dominated(&Relation::graph(target.len(), f, g)))
}

/// `f: X → Y` and `g: Y → X` compose to maps close to the identities.
pub fn is_quasi_inverse(f: &[usize], g: &[usize], x: &CoarseStructure, y: &CoarseStructure) -> Result<bool> {
    check_table(f, x, y)?;
    check_table(g, y, x)?;
    if !is_coarse_map(f, x, y)? {
        return Err(Error::NotCoarse("the forward map f".into()));
    }
    if !is_coarse_map(g, y, x)? {
        return Err(Error::NotCoarse("the backward map g".into()));
    }
    let fg: Vec<usize> = g.iter().map(|&v| f[v]).collect();
    let gf: Vec<usize> = f.iter().map(|&v| g[v]).collect();
    let id_y: Vec<usize> = (0..y.len()).collect();
    let id_x: Vec<usize> = (0..x.len()).collect();
    Ok(are_close(&fg, &id_y, y)? && are_close(&gf, &id_x, x)?)
}

/// Every composite of the diagonal, the generators and their inverses, by
/// breadth-first search. Composition distributes over unions, so the
/// generated family is exactly the finite unions of these words.
pub fn generated_words(n: usize, generators: &[Relation], cap: usize) -> Result<Vec<Relation>> {
    let mut words: Vec<Relation> = Vec::new();
    let mut seen: HashSet<Relation> = HashSet::new();
    let mut push = |r: Relation, words: &mut Vec<Relation>| -> Result<()> {
        if !seen.contains(&r) {
            seen.insert(r.clone());
            if seen.len() > cap {
                return Err(Error::OracleCap { points: seen.len(), cap });
            }
            words.push(r);
        }
        Ok(())
    };
    push(Relation::diagonal(n), &mut words)?;
    for g in generators {
        push(g.clone(), &mut words)?;
        push(g.inverse(), &mut words)?;
    }
    let mut next = 0;
    while next < words.len() {
        let s = words[next].clone();
        next += 1;
        for i in 0..words.len() {
            let m = words[i].clone();
            push(s.compose(&m), &mut words)?;
            push(m.compose(&s), &mut words)?;
        }
    }
    Ok(words)
}

/// Every relation reachable from `{Δ} ∪ generators` by unions, compositions
/// and inverses, found by breadth-first search. Exponential; for oracles.
pub fn generated_family(n: usize, generators: &[Relation], cap: usize) -> Result<Vec<Relation>> {
    if n <= 8 {
        packed_family(n, generators, cap)
    } else {
        row_family(n, generators, cap)
    }
}

fn row_family(n: usize, generators: &[Relation], cap: usize) -> Result<Vec<Relation>> {
    let mut family: Vec<Relation> = Vec::new();
    let mut seen: HashSet<Relation> = HashSet::new();
    let mut queue: VecDeque<Relation> = VecDeque::new();
    let push = |r: Relation, family: &mut Vec<Relation>, seen: &mut HashSet<Relation>, queue: &mut VecDeque<Relation>| -> Result<()> {
        if seen.insert(r.clone()) {
            if seen.len() > cap {
                return Err(Error::OracleCap { points: seen.len(), cap });
            }
            family.push(r.clone());
            queue.push_back(r);
        }
        Ok(())
    };
    for r in std::iter::once(Relation::diagonal(n)).chain(generators.iter().cloned()) {
        push(r, &mut family, &mut seen, &mut queue)?;
    }
    while let Some(s) = queue.pop_front() {
        push(s.inverse(), &mut family, &mut seen, &mut queue)?;
        let snapshot = family.clone();
        for m in &snapshot {
            push(s.union(m), &mut family, &mut seen, &mut queue)?;
            push(s.compose(m), &mut family, &mut seen, &mut queue)?;
            push(m.compose(&s), &mut family, &mut seen, &mut queue)?;
        }
    }
    Ok(family)
}

/// The same search with relations packed into a `u64`, bit `x * n + y`.
fn packed_family(n: usize, generators: &[Relation], cap: usize) -> Result<Vec<Relation>> {
    let row_mask = (1u64 << n) - 1;
    let row = |r: u64, x: usize| r >> (x * n) & row_mask;
    let pack = |r: &Relation| r.pairs().fold(0u64, |acc, (x, y)| acc | 1 << (x * n + y));
    let inverse = |r: u64| {
        let mut out = 0u64;
        for x in 0..n {
            for y in 0..n {
                if r >> (x * n + y) & 1 == 1 {
                    out |= 1 << (y * n + x);
                }
            }
        }
        out
    };
    // `s ∘ first`.
    let compose = |s: u64, first: u64| {
        let mut out = 0u64;
        for x in 0..n {
            let mut ys = row(first, x);
            let mut acc = 0u64;
            while ys != 0 {
                acc |= row(s, ys.trailing_zeros() as usize);
                ys &= ys - 1;
            }
            out |= acc << (x * n);
        }
        out
    };
    let mut family: Vec<u64> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut push = |r: u64, family: &mut Vec<u64>| -> Result<()> {
        if seen.insert(r) {
            if seen.len() > cap {
                return Err(Error::OracleCap { points: seen.len(), cap });
            }
            family.push(r);
        }
        Ok(())
    };
    push(pack(&Relation::diagonal(n)), &mut family)?;
    for g in generators {
        push(pack(g), &mut family)?;
    }
    let mut next = 0;
    while next < family.len() {
        let s = family[next];
        next += 1;
        push(inverse(s), &mut family)?;
        let known = family.len();
        for i in 0..known {
            let m = family[i];
            push(s | m, &mut family)?;
            push(compose(s, m), &mut family)?;
            push(compose(m, s), &mut family)?;
        }
    }
    Ok(family.into_iter().map(|r| Relation::from_rows((0..n).map(|x| Subset(row(r, x))).collect())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn controlled_examples() {
        let cs = CoarseStructure::trivial(labels(3)).unwrap();
        assert!(cs.controlled(&Relation::diagonal(3)).unwrap());
        assert!(!cs.controlled(&Relation::full(3)).unwrap());
        assert!(cs.controlled(&Relation::diagonal(2)).is_err());
        let g = Relation::from_pairs(3, [(0, 1)]).unwrap();
        let cs = CoarseStructure::unlabeled(3, vec![g.clone()]).unwrap();
        assert!(cs.controlled(&g).unwrap());
        assert!(cs.controlled(&Relation::from_pairs(3, [(1, 0), (1, 1)]).unwrap()).unwrap());
        assert!(!cs.controlled(&Relation::from_pairs(3, [(0, 2)]).unwrap()).unwrap());
        assert_eq!(cs.maxima().len(), 1);
    }

    #[test]
    fn bounded_and_preceq_examples() {
        let cs = CoarseStructure::trivial(labels(3)).unwrap();
        assert!(cs.is_bounded(Subset::EMPTY));
        assert!(cs.is_bounded(Subset::singleton(1)));
        assert!(!cs.is_bounded(Subset::from_indices([0, 1])));
        let a = Subset::singleton(0);
        let b = Subset::from_indices([0, 2]);
        assert!(cs.preceq(a, b) && cs.preceq(b, b));
        assert!(!cs.preceq(Subset::singleton(1), Subset::singleton(2)));
        assert!(cs.preceq(Subset::EMPTY, Subset::EMPTY));
    }

    #[test]
    fn map_examples() {
        let x = CoarseStructure::trivial(labels(2)).unwrap();
        let full1 = CoarseStructure::maximal(labels(1)).unwrap();
        assert!(is_coarse_map(&[0, 1], &x, &x).unwrap());
        assert!(!is_coarse_map(&[0, 0], &x, &full1).unwrap());
        let bounded = CoarseStructure::maximal(labels(2)).unwrap();
        assert!(is_coarse_map(&[0, 0], &bounded, &full1).unwrap());
        assert!(!is_coarse_map(&[0, 1], &bounded, &x).unwrap());

        assert!(are_close(&[0, 1], &[0, 1], &x).unwrap());
        assert!(!are_close(&[0, 1], &[0, 0], &x).unwrap());
        assert!(are_close(&[0, 1], &[1, 0], &bounded).unwrap());

        assert!(is_quasi_inverse(&[0, 1], &[0, 1], &x, &x).unwrap());
        assert!(!is_quasi_inverse(&[1, 0], &[0, 1], &x, &x).unwrap());
        let err = is_quasi_inverse(&[0, 1], &[0, 1], &bounded, &x).unwrap_err();
        assert_eq!(err, Error::NotCoarse("the forward map f".into()));
    }

    #[test]
    fn pullback_examples() {
        let gamma = CoarseStructure::maximal(labels(2)).unwrap();
        let eps = gamma.pullback_coarse(&[0, 1, 1, 0], labels(4)).unwrap();
        assert!(eps.controlled(&Relation::full(4)).unwrap());
        let one = CoarseStructure::trivial(labels(1)).unwrap();
        assert!(one.pullback_coarse(&[0, 0, 0], labels(3)).unwrap().is_connected());

        let pi = [0, 0, 1, 1, 2, 2];
        let g = Relation::from_pairs(3, [(0, 1)]).unwrap();
        let zeta = CoarseStructure::unlabeled(3, vec![g.clone()]).unwrap();
        let eps = zeta.pullback_coarse(&pi, labels(6)).unwrap();
        let family = generated_family(3, &[g], 1 << 12).unwrap();
        for bits in 0..1u64 << 12 {
            // Relations supported on the first four points, padded to six.
            let rows: Vec<Subset> = (0..6).map(|x| if x < 4 { Subset((bits >> (3 * x)) & 0b111) } else { Subset::EMPTY }).collect();
            let e = Relation::from_rows(rows);
            let chased = family.iter().any(|s| e.image(&pi, 3).is_subset(s));
            assert_eq!(eps.controlled(&e).unwrap(), chased);
        }
        let iota = [0, 2, 4];
        assert!(is_coarse_map(&pi, &eps, &zeta).unwrap());
        assert!(is_coarse_map(&iota, &zeta, &eps).unwrap());
        assert!(is_quasi_inverse(&pi, &iota, &eps, &zeta).unwrap());
    }

    #[test]
    fn metric_balls() {
        let d = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 4.0], vec![5.0, 4.0, 0.0]];
        let cs = CoarseStructure::metric_ball(labels(3), &d, &[1.0]).unwrap();
        assert!(cs.is_bounded(Subset::from_indices([0, 1])));
        assert!(!cs.is_bounded(Subset::from_indices([1, 2])));
        let cs = CoarseStructure::metric_ball(labels(3), &d, &[1.0, 4.0]).unwrap();
        assert!(cs.is_connected());
        assert!(CoarseStructure::metric_ball(labels(2), &[vec![0.0, 1.0], vec![2.0, 0.0]], &[1.0]).is_err());
    }

    #[test]
    fn packed_search_matches_row_search() {
        let gens = [
            vec![Relation::from_pairs(3, [(0, 1)]).unwrap()],
            vec![Relation::from_pairs(3, [(0, 1), (2, 2)]).unwrap(), Relation::from_pairs(3, [(2, 0)]).unwrap()],
            vec![Relation::from_pairs(4, [(0, 1), (1, 2)]).unwrap()],
            vec![],
        ];
        for g in &gens {
            let n = g.first().map_or(2, Relation::ground_len);
            let mut a = packed_family(n, g, 1 << 12).unwrap();
            let mut b = row_family(n, g, 1 << 12).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn words_cover_the_generated_family() {
        // Down-closures agree: a relation lies under a family member iff each
        // of its pairs lies in some word.
        for mask in 0..1u64 << 9 {
            let g = Relation::from_rows((0..3).map(|x| Subset(mask >> (3 * x) & 0b111)).collect());
            let family = generated_family(3, std::slice::from_ref(&g), 1 << 12).unwrap();
            let words = generated_words(3, std::slice::from_ref(&g), 1 << 12).unwrap();
            let cover = words.iter().fold(Relation::empty(3), |acc, w| acc.union(w));
            let top = family.iter().fold(Relation::empty(3), |acc, w| acc.union(w));
            assert!(family.contains(&top));
            assert_eq!(cover, top, "{g:?}");
            assert!(words.iter().all(|w| family.contains(w)));
        }
    }

    #[test]
    fn saturation_cap() {
        let g = Relation::from_pairs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(CoarseStructure::with_cap(labels(4), vec![g], 0).unwrap_err(), Error::SaturationOverflow(1));
    }

    fn relation(n: usize) -> impl Strategy<Value = Relation> {
        proptest::collection::vec(0..1u64 << n, n).prop_map(|rows| Relation::from_rows(rows.into_iter().map(Subset).collect()))
    }

    proptest! {
        #[test]
        fn agrees_with_generative_search(gens in proptest::collection::vec(relation(3), 0..3), e in relation(3)) {
            let cs = CoarseStructure::unlabeled(3, gens.clone()).unwrap();
            let family = generated_family(3, &gens, 1 << 12).unwrap();
            prop_assert_eq!(cs.controlled(&e).unwrap(), family.iter().any(|s| e.is_subset(s)));
        }

        #[test]
        fn axioms_hold(gens in proptest::collection::vec(relation(5), 0..3), a in relation(5), b in relation(5)) {
            let cs = CoarseStructure::unlabeled(5, gens).unwrap();
            let ca = cs.controlled(&a).unwrap();
            let cb = cs.controlled(&b).unwrap();
            if ca {
                prop_assert!(cs.controlled(&a.inverse()).unwrap());
                let mut sub = a.clone();
                if let Some((x, y)) = a.pairs().next() { sub.remove(x, y); }
                prop_assert!(cs.controlled(&sub).unwrap());
            }
            if ca && cb {
                prop_assert!(cs.controlled(&a.union(&b)).unwrap());
                prop_assert!(cs.controlled(&a.compose(&b)).unwrap());
            }
        }
    }
}
