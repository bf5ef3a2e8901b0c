//! Exhaustive enumeration of small spaces, maps and admissible maps.

use crate::glueing::{make_admissible, AdmissibleMap};
use crate::space::{FiniteSpace, SpaceMap};
use crate::subset::Subset;

/// Every preorder on `n` labelled points (1, 4, 29, 355 for `n = 1..=4`).
pub fn labeled_topologies(n: usize) -> Vec<FiniteSpace> {
    assert!((1..=4).contains(&n), "labelled enumeration is limited to 4 points");
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out = Vec::new();
    for bits in 0..1u64 << off.len() {
        let mut closures: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for (k, &(a, b)) in off.iter().enumerate() {
            if bits >> k & 1 == 1 {
                closures[b].insert(a);
            }
        }
        let transitive = (0..n).all(|b| closures[b].iter().all(|a| closures[a].is_subset(closures[b])));
        if transitive {
            out.push(FiniteSpace::from_closures(FiniteSpace::default_labels(n), closures).expect("preorder"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical_form(x: &FiniteSpace, perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| {
            let mut closures = vec![0u64; x.len()];
            for v in 0..x.len() {
                closures[p[v]] = x.point_closure(v).map_through(p).0;
            }
            closures
        })
        .min()
        .expect("at least one permutation")
}

/// One representative per homeomorphism class (1, 3, 9, 33 for `n = 1..=4`).
pub fn topology_representatives(n: usize) -> Vec<FiniteSpace> {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    labeled_topologies(n).into_iter().filter(|x| seen.insert(canonical_form(x, &perms))).collect()
}

/// All labelled topologies on `1..=max` points.
pub fn spaces_up_to(max: usize) -> Vec<FiniteSpace> {
    (1..=max).flat_map(labeled_topologies).collect()
}

pub fn representatives_up_to(max: usize) -> Vec<FiniteSpace> {
    (1..=max).flat_map(topology_representatives).collect()
}

/// Every admissible map `x -> y`, by filtering all tables of closed sets.
pub fn all_admissible(x: &FiniteSpace, y: &FiniteSpace) -> Vec<AdmissibleMap> {
    let closed = y.enumerate_closed_sets().expect("small target");
    let mut out = Vec::new();
    let mut idx = vec![0usize; x.len()];
    loop {
        let gen = idx.iter().map(|&i| closed[i]).collect();
        if let Ok(f) = make_admissible(x, y, gen) {
            out.push(f);
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < closed.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return out;
        }
    }
}

/// Every point map `x -> y`.
pub fn all_maps(x: &FiniteSpace, y: &FiniteSpace) -> Vec<SpaceMap> {
    let total = y.len().pow(x.len() as u32);
    (0..total)
        .map(|mut code| {
            let table = (0..x.len())
                .map(|_| {
                    let v = code % y.len();
                    code /= y.len();
                    v
                })
                .collect();
            SpaceMap::new(x.clone(), y.clone(), table).expect("indices in range")
        })
        .collect()
}

pub fn all_continuous_maps(x: &FiniteSpace, y: &FiniteSpace) -> Vec<SpaceMap> {
    all_maps(x, y).into_iter().filter(|m| m.is_continuous()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let labeled: Vec<usize> = (1..=4).map(|n| labeled_topologies(n).len()).collect();
        assert_eq!(labeled, [1, 4, 29, 355]);
        let reps: Vec<usize> = (1..=4).map(|n| topology_representatives(n).len()).collect();
        assert_eq!(reps, [1, 3, 9, 33]);
    }

    #[test]
    fn admissible_counts() {
        let pt = FiniteSpace::point("p");
        assert_eq!(all_admissible(&pt, &pt).len(), 2);
        // Monotone maps from the two-point chain into the lattice of the
        // discrete two-point space's closed sets: pairs a ⊆ b of subsets.
        let s = FiniteSpace::sierpinski();
        let d = FiniteSpace::discrete(2).unwrap();
        assert_eq!(all_admissible(&s, &d).len(), 9);
        assert_eq!(all_maps(&d, &s).len(), 4);
        assert_eq!(all_continuous_maps(&d, &s).len(), 4);
        assert_eq!(all_continuous_maps(&s, &d).len(), 2);
    }
}
