//! Finite topological spaces stored as specialization preorders.
//!
//! Every finite topology is Alexandrov, so a space is fully described by its
//! point closures `Cl{p}`. Closed sets are exactly the down-sets of the
//! preorder `x <= y  <=>  x ∈ Cl{y}`.

use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::subset::{Subset, CAPACITY};

/// Largest space the explicit closed-set oracle will enumerate.
pub const ORACLE_CAP: usize = 16;

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    labels: Vec<String>,
    closures: Vec<Subset>,
}

/// An immutable finite space; clones share storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace(Arc<Inner>);

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, l) in self.0.labels.iter().enumerate() {
            let cl: Vec<&str> = self.0.closures[i].iter().map(|j| self.label(j)).collect();
            m.entry(l, &cl);
        }
        m.finish()
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::EmptySpace);
    }
    if labels.len() > CAPACITY {
        return Err(Error::Capacity { needed: labels.len(), cap: CAPACITY });
    }
    // At most 64 labels: pairwise comparison beats hashing.
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Validate a point list and specialization matrix, `below[x][y]` meaning
/// `x ∈ Cl{y}`.
pub fn validate_space(labels: Vec<String>, below: &[Vec<bool>]) -> Result<FiniteSpace> {
    check_labels(&labels)?;
    let n = labels.len();
    if below.len() != n || below.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: below.len(), points: n });
    }
    for x in 0..n {
        if !below[x][x] {
            return Err(Error::NotReflexive(labels[x].clone()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !below[a][b] {
                continue;
            }
            for c in 0..n {
                if below[b][c] && !below[a][c] {
                    return Err(Error::NotTransitive { a: labels[a].clone(), b: labels[b].clone(), c: labels[c].clone() });
                }
            }
        }
    }
    let closures = (0..n).map(|y| (0..n).filter(|&x| below[x][y]).collect()).collect();
    Ok(FiniteSpace(Arc::new(Inner { labels, closures })))
}

impl FiniteSpace {
    /// Build from point closures, checking reflexivity and transitivity.
    pub fn from_closures(labels: Vec<String>, closures: Vec<Subset>) -> Result<FiniteSpace> {
        check_labels(&labels)?;
        let n = labels.len();
        if closures.len() != n {
            return Err(Error::NotSquare { rows: closures.len(), points: n });
        }
        let full = Subset::full(n);
        for (y, &cl) in closures.iter().enumerate() {
            if !cl.is_subset(full) {
                return Err(Error::Mismatch(format!("closure of {:?} names points outside the space", labels[y])));
            }
            if !cl.contains(y) {
                return Err(Error::NotReflexive(labels[y].clone()));
            }
            for b in cl {
                if let Some(a) = (closures[b] - cl).first() {
                    return Err(Error::NotTransitive { a: labels[a].clone(), b: labels[b].clone(), c: labels[y].clone() });
                }
            }
        }
        Ok(FiniteSpace(Arc::new(Inner { labels, closures })))
    }

    /// Points labelled `p0, p1, ..`.
    pub fn default_labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    pub fn discrete(n: usize) -> Result<FiniteSpace> {
        Self::discrete_labeled(Self::default_labels(n))
    }

    pub fn discrete_labeled(labels: Vec<String>) -> Result<FiniteSpace> {
        let closures = (0..labels.len()).map(Subset::singleton).collect();
        Self::from_closures(labels, closures)
    }

    pub fn indiscrete(n: usize) -> Result<FiniteSpace> {
        Self::from_closures(Self::default_labels(n), vec![Subset::full(n); n])
    }

    pub fn point(label: &str) -> FiniteSpace {
        Self::discrete_labeled(vec![label.to_string()]).expect("one point is valid")
    }

    /// Points `s0, s1` with `s0 ∈ Cl{s1}`.
    pub fn sierpinski() -> FiniteSpace {
        Self::from_closures(vec!["s0".into(), "s1".into()], vec![Subset::singleton(0), Subset::full(2)]).expect("chain is valid")
    }

    /// The chain `p0 <= p1 <= ..`.
    pub fn chain(n: usize) -> Result<FiniteSpace> {
        Self::from_closures(Self::default_labels(n), (1..=n).map(Subset::full).collect())
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn point_closure(&self, i: usize) -> Subset {
        self.0.closures[i]
    }

    pub fn point_closures(&self) -> &[Subset] {
        &self.0.closures
    }

    /// `x ∈ Cl{y}`.
    pub fn below(&self, x: usize, y: usize) -> bool {
        self.0.closures[y].contains(x)
    }

    /// Union of the point closures of the members of `a`.
    pub fn closure(&self, a: Subset) -> Subset {
        debug_assert!(a.is_subset(self.full()), "subset outside the space");
        a.iter().fold(Subset::EMPTY, |acc, i| acc | self.0.closures[i])
    }

    pub fn interior(&self, a: Subset) -> Subset {
        let n = self.len();
        self.closure(a.complement(n)).complement(n)
    }

    pub fn is_closed(&self, a: Subset) -> bool {
        a.is_subset(self.full()) && self.closure(a) == a
    }

    pub fn is_open(&self, a: Subset) -> bool {
        self.is_closed(a.complement(self.len()))
    }

    pub fn is_discrete(&self) -> bool {
        self.0.closures.iter().enumerate().all(|(i, &c)| c == Subset::singleton(i))
    }

    /// Same points in the same order with the same closures, ignoring labels.
    pub fn same_structure(&self, other: &FiniteSpace) -> bool {
        self.0.closures == other.0.closures
    }

    pub fn relabel(&self, labels: Vec<String>) -> Result<FiniteSpace> {
        if labels.len() != self.len() {
            return Err(Error::Mismatch("relabelling changes the point count".into()));
        }
        Self::from_closures(labels, self.0.closures.clone())
    }

    /// Every closed set, by brute force over all subsets.
    pub fn enumerate_closed_sets(&self) -> Result<Vec<Subset>> {
        let n = self.len();
        if n > ORACLE_CAP {
            return Err(Error::OracleCap { points: n, cap: ORACLE_CAP });
        }
        Ok((0..1u64 << n).map(Subset).filter(|&a| self.is_down_set(a)).collect())
    }

    /// Down-set test straight from the relation, independent of `closure`.
    fn is_down_set(&self, a: Subset) -> bool {
        (0..self.len()).all(|y| !a.contains(y) || (0..self.len()).all(|x| !self.below(x, y) || a.contains(x)))
    }

    /// The subspace on `a`, points renumbered in increasing order.
    pub fn subspace(&self, a: Subset) -> Result<FiniteSpace> {
        if a.is_empty() {
            return Err(Error::EmptySpace);
        }
        if !a.is_subset(self.full()) {
            return Err(Error::Mismatch("subspace names points outside the space".into()));
        }
        let keep: Vec<usize> = a.iter().collect();
        let labels = keep.iter().map(|&i| self.label(i).to_string()).collect();
        let closures = keep.iter().map(|&i| compress(self.0.closures[i], a)).collect();
        Self::from_closures(labels, closures)
    }

    /// Product with the componentwise preorder; pair `(i, j)` has index
    /// `i * other.len() + j`.
    pub fn product(&self, other: &FiniteSpace) -> Result<FiniteSpace> {
        let (n, m) = (self.len(), other.len());
        if n * m > CAPACITY {
            return Err(Error::Capacity { needed: n * m, cap: CAPACITY });
        }
        let mut labels = Vec::with_capacity(n * m);
        let mut closures = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                labels.push(format!("({},{})", self.label(i), other.label(j)));
                let mut cl = Subset::EMPTY;
                for a in self.point_closure(i) {
                    for b in other.point_closure(j) {
                        cl.insert(a * m + b);
                    }
                }
                closures.push(cl);
            }
        }
        Self::from_closures(labels, closures)
    }

    /// The quotient by a surjection `q` onto `0..m`: `C` is closed iff
    /// `q⁻¹(C)` is closed.
    pub fn quotient(&self, q: &[usize], labels: Vec<String>) -> Result<FiniteSpace> {
        let m = labels.len();
        if q.len() != self.len() {
            return Err(Error::TableSize { expected: self.len(), got: q.len() });
        }
        if let Some(&bad) = q.iter().find(|&&c| c >= m) {
            return Err(Error::Mismatch(format!("quotient index {bad} out of range")));
        }
        let preimage = |c: Subset| -> Subset { (0..q.len()).filter(|&i| c.contains(q[i])).collect() };
        let closures = (0..m)
            .map(|c| {
                let mut cur = Subset::singleton(c);
                loop {
                    let next = self.closure(preimage(cur)).map_through(q) | cur;
                    if next == cur {
                        break cur;
                    }
                    cur = next;
                }
            })
            .collect();
        Self::from_closures(labels, closures)
    }

    /// Component id of every point: the least index of its component, where
    /// connectivity is generated by comparability.
    pub fn connected_components(&self) -> Vec<usize> {
        let n = self.len();
        let mut uf = UnionFind::<usize>::new(n);
        for y in 0..n {
            for x in self.point_closure(y) {
                uf.union(x, y);
            }
        }
        let mut least = vec![usize::MAX; n];
        for p in 0..n {
            let r = uf.find_mut(p);
            least[r] = least[r].min(p);
        }
        (0..n).map(|p| least[uf.find_mut(p)]).collect()
    }

    /// Components as point sets, ordered by least member.
    pub fn components(&self) -> Vec<Subset> {
        let ids = self.connected_components();
        let mut out: Vec<(usize, Subset)> = Vec::new();
        for (p, &id) in ids.iter().enumerate() {
            match out.iter_mut().find(|(i, _)| *i == id) {
                Some((_, s)) => s.insert(p),
                None => out.push((id, Subset::singleton(p))),
            }
        }
        out.into_iter().map(|(_, s)| s).collect()
    }
}

/// Re-index the members of `s` that lie in `a` to positions within `a`.
pub fn compress(s: Subset, a: Subset) -> Subset {
    let mut out = Subset::EMPTY;
    for (k, i) in a.iter().enumerate() {
        if s.contains(i) {
            out.insert(k);
        }
    }
    out
}

/// Inverse of [`compress`]: positions within `a` back to ambient indices.
pub fn expand(s: Subset, a: Subset) -> Subset {
    let idx: Vec<usize> = a.iter().collect();
    s.iter().map(|k| idx[k]).collect()
}

/// A total function between the points of two spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    table: Vec<usize>,
}

impl SpaceMap {
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, table: Vec<usize>) -> Result<SpaceMap> {
        if table.len() != domain.len() {
            return Err(Error::TableSize { expected: domain.len(), got: table.len() });
        }
        if let Some(x) = table.iter().position(|&y| y >= codomain.len()) {
            return Err(Error::Mismatch(format!("{:?} is sent outside the codomain", domain.label(x))));
        }
        Ok(SpaceMap { domain, codomain, table })
    }

    pub fn identity(space: &FiniteSpace) -> SpaceMap {
        SpaceMap { domain: space.clone(), codomain: space.clone(), table: (0..space.len()).collect() }
    }

    pub fn constant(domain: &FiniteSpace, codomain: &FiniteSpace, y: usize) -> Result<SpaceMap> {
        Self::new(domain.clone(), codomain.clone(), vec![y; domain.len()])
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn image(&self, a: Subset) -> Subset {
        a.map_through(&self.table)
    }

    pub fn preimage(&self, b: Subset) -> Subset {
        (0..self.table.len()).filter(|&x| b.contains(self.table[x])).collect()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &SpaceMap) -> Result<SpaceMap> {
        if self.codomain != then.domain {
            return Err(Error::Mismatch("composed maps do not meet".into()));
        }
        let table = self.table.iter().map(|&y| then.table[y]).collect();
        Self::new(self.domain.clone(), then.codomain.clone(), table)
    }

    /// Continuity as preservation of specialization.
    pub fn is_continuous(&self) -> bool {
        (0..self.domain.len()).all(|y| {
            let my = self.table[y];
            self.domain.point_closure(y).iter().all(|x| self.codomain.below(self.table[x], my))
        })
    }

    /// Continuity as `m(Cl{x}) ⊆ Cl{m x}`.
    pub fn maps_closures_into_closures(&self) -> bool {
        (0..self.domain.len()).all(|x| self.image(self.domain.point_closure(x)).is_subset(self.codomain.point_closure(self.table[x])))
    }

    /// Continuity as "preimages of closed sets are closed", by enumeration.
    pub fn preimages_closed(&self) -> Result<bool> {
        if self.domain.len() > ORACLE_CAP {
            return Err(Error::OracleCap { points: self.domain.len(), cap: ORACLE_CAP });
        }
        Ok(self.codomain.enumerate_closed_sets()?.into_iter().all(|c| self.domain.is_closed(self.preimage(c))))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = Subset::EMPTY;
        self.table.iter().all(|&y| {
            let fresh = !seen.contains(y);
            seen.insert(y);
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.domain.full()) == self.codomain.full()
    }

    /// Images of closed sets are closed. Closed sets are unions of point
    /// closures and images preserve unions, so generators suffice.
    pub fn is_closed_map(&self) -> bool {
        (0..self.domain.len()).all(|x| self.codomain.is_closed(self.image(self.domain.point_closure(x))))
    }
}
