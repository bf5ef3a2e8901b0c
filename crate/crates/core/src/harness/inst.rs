use serde_json::{json, Value};

use crate::error::Result;
use crate::glueing::{make_admissible, AdmissibleMap};
use crate::space::{compress, FiniteSpace, SpaceMap};
use crate::subset::Subset;

/// A bundle of spaces with point maps and admissible tables between them,
/// kept as raw data so that it can be shrunk point by point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inst {
    pub spaces: Vec<FiniteSpace>,
    /// `(domain, codomain, table)`.
    pub maps: Vec<(usize, usize, Vec<usize>)>,
    /// `(source, target, generators)`.
    pub tables: Vec<(usize, usize, Vec<Subset>)>,
}

impl Inst {
    pub fn new(spaces: Vec<FiniteSpace>) -> Inst {
        Inst { spaces, maps: vec![], tables: vec![] }
    }

    pub fn push_map(&mut self, from: usize, to: usize, m: &SpaceMap) {
        self.maps.push((from, to, m.table().to_vec()));
    }

    pub fn push_table(&mut self, from: usize, to: usize, f: &AdmissibleMap) {
        self.tables.push((from, to, f.generators().to_vec()));
    }

    pub fn space(&self, i: usize) -> &FiniteSpace {
        &self.spaces[i]
    }

    pub fn map(&self, k: usize) -> Result<SpaceMap> {
        let (a, b, t) = &self.maps[k];
        SpaceMap::new(self.spaces[*a].clone(), self.spaces[*b].clone(), t.clone())
    }

    /// Rebuilt through `make_admissible`, so validation applies again.
    pub fn table(&self, k: usize) -> Result<AdmissibleMap> {
        let (a, b, g) = &self.tables[k];
        make_admissible(&self.spaces[*a], &self.spaces[*b], g.clone())
    }

    /// Delete point `p` of space `s`, restricting every map and table.
    /// `None` when the space would become empty or a map hits `p`.
    pub fn remove_point(&self, s: usize, p: usize) -> Option<Inst> {
        let x = &self.spaces[s];
        if x.len() <= 1 {
            return None;
        }
        let keep = x.full() - Subset::singleton(p);
        let mut out = self.clone();
        out.spaces[s] = x.subspace(keep).ok()?;
        for (a, b, t) in out.maps.iter_mut() {
            if *b == s {
                if t.contains(&p) {
                    return None;
                }
                for v in t.iter_mut() {
                    if *v > p {
                        *v -= 1;
                    }
                }
            }
            if *a == s {
                t.remove(p);
            }
        }
        for (a, b, g) in out.tables.iter_mut() {
            if *b == s {
                for v in g.iter_mut() {
                    *v = compress(*v - Subset::singleton(p), keep);
                }
            }
            if *a == s {
                g.remove(p);
            }
        }
        Some(out)
    }

    /// One-point deletions, largest spaces first.
    pub fn shrink_candidates(&self) -> Vec<Inst> {
        let mut order: Vec<usize> = (0..self.spaces.len()).collect();
        order.sort_by_key(|&s| std::cmp::Reverse(self.spaces[s].len()));
        order.into_iter().flat_map(|s| (0..self.spaces[s].len()).rev().filter_map(move |p| self.remove_point(s, p))).collect()
    }

    pub fn size(&self) -> usize {
        self.spaces.iter().map(|s| s.len()).sum()
    }

    pub fn to_json(&self) -> Value {
        let spaces: Vec<Value> = self
            .spaces
            .iter()
            .map(|x| {
                let cl: Vec<Vec<usize>> = (0..x.len()).map(|p| x.point_closure(p).iter().collect()).collect();
                json!({ "points": x.len(), "closures": cl })
            })
            .collect();
        let maps: Vec<Value> = self.maps.iter().map(|(a, b, t)| json!({ "from": a, "to": b, "table": t })).collect();
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|(a, b, g)| {
                let g: Vec<Vec<usize>> = g.iter().map(|s| s.iter().collect()).collect();
                json!({ "from": a, "to": b, "generators": g })
            })
            .collect();
        json!({ "spaces": spaces, "maps": maps, "admissible": tables })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removal_restricts_everything() {
        let x = FiniteSpace::chain(3).unwrap();
        let y = FiniteSpace::discrete(2).unwrap();
        let f = make_admissible(&x, &y, vec![Subset::EMPTY, Subset::singleton(1), Subset::full(2)]).unwrap();
        let mut inst = Inst::new(vec![x.clone(), y.clone()]);
        inst.push_table(0, 1, &f);
        inst.push_map(1, 0, &SpaceMap::new(y, x, vec![0, 2]).unwrap());
        let smaller = inst.remove_point(1, 0).unwrap();
        assert_eq!(smaller.tables[0].2, vec![Subset::EMPTY, Subset::singleton(0), Subset::singleton(0)]);
        assert_eq!(smaller.maps[0].2, vec![2]);
        assert!(inst.remove_point(0, 2).is_none());
        assert!(smaller.table(0).is_ok() && smaller.map(0).is_ok());
    }
}
