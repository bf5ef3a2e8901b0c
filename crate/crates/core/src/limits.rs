//! Limits of finite diagrams of glueings that share their left half, and
//! staged inverse systems.
//!
//! A diagram object is `X +_{f_c} Y_c`; an arrow is `id + φ`. The limit
//! consists of the diagonal copy of `X` together with the matching families
//! `(y_c)` of remainder points (`φ_a(y_from) = y_to` for every arrow), with
//! the subspace topology of the product of the total spaces. Mixed families
//! are excluded because every arrow fixes `X`.

use crate::error::{Error, Result};
use crate::glueing::{check_pair, glue, glue_one_sided, make_admissible, SumSpace};
use crate::space::{compress, FiniteSpace, SpaceMap};
use crate::subset::{Subset, CAPACITY};
use crate::transport::SumMap;

/// An arrow `id + φ` between two diagram objects.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub phi: SpaceMap,
}

#[derive(Clone, Debug)]
pub struct SumDiagram {
    base: FiniteSpace,
    names: Vec<String>,
    objects: Vec<SumSpace>,
    arrows: Vec<Arrow>,
}

impl SumDiagram {
    /// Checks that every object has left half `base`, that every arrow is a
    /// continuous `id + φ`, and that an arrow parallel to a composable pair
    /// equals their composite.
    pub fn new(base: FiniteSpace, objects: Vec<(String, SumSpace)>, arrows: Vec<Arrow>) -> Result<SumDiagram> {
        if objects.is_empty() {
            return Err(Error::Diagram("a diagram needs at least one object".into()));
        }
        let (names, objects): (Vec<String>, Vec<SumSpace>) = objects.into_iter().unzip();
        for (name, o) in names.iter().zip(&objects) {
            if !o.left().same_structure(&base) {
                return Err(Error::Diagram(format!("object {name:?} does not have the shared left half")));
            }
        }
        for (k, a) in arrows.iter().enumerate() {
            if a.from >= objects.len() || a.to >= objects.len() {
                return Err(Error::Diagram(format!("arrow {k} names a missing object")));
            }
            let (src, dst) = (&objects[a.from], &objects[a.to]);
            if a.phi.domain() != src.right() || a.phi.codomain() != dst.right() {
                return Err(Error::Diagram(format!("arrow {k} does not run between the remainders")));
            }
            let m = SumMap::new(src.clone(), dst.clone(), SpaceMap::identity(src.left()), a.phi.clone())
                .map_err(|e| Error::Diagram(format!("arrow {k}: {e}")))?;
            if !m.diagram_continuity() {
                return Err(Error::Diagram(format!("arrow {k} is not continuous as id + phi")));
            }
        }
        for a in &arrows {
            for b in arrows.iter().filter(|b| b.from == a.to) {
                let composite: Vec<usize> = a.phi.table().iter().map(|&y| b.phi.apply(y)).collect();
                for c in arrows.iter().filter(|c| c.from == a.from && c.to == b.to) {
                    if c.phi.table() != composite.as_slice() {
                        return Err(Error::Diagram(format!(
                            "non-functorial: {} -> {} -> {} disagrees with the direct arrow",
                            names[a.from], names[a.to], names[b.to]
                        )));
                    }
                }
            }
        }
        Ok(SumDiagram { base, names, objects, arrows })
    }

    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn objects(&self) -> &[SumSpace] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Remainder families `(y_c)` compatible with every arrow, in
    /// lexicographic order.
    pub fn matching_families(&self) -> Vec<Vec<usize>> {
        let k = self.objects.len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        self.extend_families(&mut cur, &mut out);
        debug_assert!(out.iter().all(|f| f.len() == k));
        out
    }

    fn extend_families(&self, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let c = cur.len();
        if c == self.objects.len() {
            out.push(cur.clone());
            return;
        }
        for y in 0..self.objects[c].right().len() {
            cur.push(y);
            // Check arrows whose endpoints are both fixed now.
            let ok = self.arrows.iter().all(|a| a.from.max(a.to) != c || a.phi.apply(cur[a.from]) == cur[a.to]);
            if ok {
                self.extend_families(cur, out);
            }
            cur.pop();
        }
    }
}

/// The limit: the full matching-family space and its `X`-dense part, both
/// as glueings over the shared left half, with projections to each object.
#[derive(Clone, Debug)]
pub struct Limit {
    /// Every matching family, glued to `X`.
    pub full: SumSpace,
    /// The families of `full`, as object-wise remainder indices.
    pub families: Vec<Vec<usize>>,
    /// The closure of `X` inside `full`; `None` when it has no remainder
    /// points (the limit in the dense category is then `X` itself).
    pub dense: Option<SumSpace>,
    /// Indices into `families` of the remainder points of `dense`.
    pub dense_families: Vec<usize>,
    /// `id + φ_c` from `full` to each object.
    pub projections: Vec<SumMap>,
}

pub fn sum_limit(d: &SumDiagram) -> Result<Limit> {
    let x = d.base.clone();
    let n = x.len();
    let families = d.matching_families();
    if families.is_empty() {
        return Err(Error::Diagram("the limit has no remainder points, so X cannot be split off".into()));
    }
    let size = n + families.len();
    if size > CAPACITY {
        return Err(Error::Capacity { needed: size, cap: CAPACITY });
    }
    let objs = &d.objects;
    // Specialization in the product of the total spaces, with limit points
    // coordinatized object by object: `x` sits at `x` in every object, a
    // family at its remainder points.
    let fam_below = |a: &[usize], b: &[usize]| objs.iter().enumerate().all(|(c, o)| o.right().below(a[c], b[c]));
    let x_below_fam = |p: usize, b: &[usize]| objs.iter().enumerate().all(|(c, o)| o.g().gen(b[c]).contains(p));
    let fam_below_x = |a: &[usize], p: usize| objs.iter().enumerate().all(|(c, o)| o.f().gen(p).contains(a[c]));
    let fam_closures: Vec<Subset> =
        families.iter().map(|b| (0..families.len()).filter(|&a| fam_below(&families[a], b)).collect()).collect();
    let labels: Vec<String> = families.iter().map(|fam| family_label(d, fam)).collect();
    let right = FiniteSpace::from_closures(labels, fam_closures)?;
    let f_gen: Vec<Subset> = (0..n).map(|p| (0..families.len()).filter(|&a| fam_below_x(&families[a], p)).collect()).collect();
    let g_gen: Vec<Subset> = families.iter().map(|b| (0..n).filter(|&p| x_below_fam(p, b)).collect()).collect();
    let f = make_admissible(&x, &right, f_gen)?;
    let g = make_admissible(&right, &x, g_gen)?;
    let full = glue(&x, &right, check_pair(f, g)?)?;

    let dense_set = full.f().eval(x.full());
    let dense_families: Vec<usize> = dense_set.iter().collect();
    let dense = if dense_families.is_empty() {
        None
    } else {
        let r = right.subspace(dense_set)?;
        let f = make_admissible(&x, &r, full.f().generators().iter().map(|&s| compress(s, dense_set)).collect())?;
        let g = make_admissible(&r, &x, dense_set.iter().map(|a| full.g().gen(a)).collect())?;
        Some(glue(&x, &r, check_pair(f, g)?)?)
    };

    let projections = d
        .objects
        .iter()
        .enumerate()
        .map(|(c, o)| {
            let table = families.iter().map(|fam| fam[c]).collect();
            let phi = SpaceMap::new(full.right().clone(), o.right().clone(), table)?;
            SumMap::new(full.clone(), o.clone(), SpaceMap::identity(full.left()), phi)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Limit { full, families, dense, dense_families, projections })
}

fn family_label(d: &SumDiagram, fam: &[usize]) -> String {
    let parts: Vec<&str> = fam.iter().enumerate().map(|(c, &y)| d.objects[c].right().label(y)).collect();
    format!("({})", parts.join(","))
}

/// The remainder part of the unique factorization of a cone `(id + φ_c)`
/// through the full limit: each point goes to the family of its images.
/// `None` if some family does not match the diagram.
pub fn factor_cone(limit: &Limit, cone: &[SpaceMap]) -> Option<Vec<usize>> {
    let m = cone.first()?.domain().len();
    (0..m)
        .map(|w| {
            let fam: Vec<usize> = cone.iter().map(|phi| phi.apply(w)).collect();
            limit.families.iter().position(|f| *f == fam)
        })
        .collect()
}

/// Two copies of the two-point compactification of the discrete space
/// `{x-, x+}`: each is `X + {-inf, +inf}` with `x- -> -inf` and `x+ -> +inf`.
/// Their product (no arrows) contains the mixed ends `(-inf, +inf)` and
/// `(+inf, -inf)`, which lie outside the closure of `X`.
pub fn two_compactification_product() -> SumDiagram {
    let x = FiniteSpace::discrete_labeled(vec!["x-".into(), "x+".into()]).expect("valid");
    let ends = FiniteSpace::discrete_labeled(vec!["-inf".into(), "+inf".into()]).expect("valid");
    let f = make_admissible(&x, &ends, vec![Subset::singleton(0), Subset::singleton(1)]).expect("monotone on a discrete space");
    let copy = glue_one_sided(f).expect("two points each side");
    SumDiagram::new(x, vec![("first".into(), copy.clone()), ("second".into(), copy)], vec![]).expect("valid diagram")
}

/// A chain of finite sets with bonding maps `stage(n+1) -> stage(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSystem {
    sizes: Vec<usize>,
    bonds: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StageInfo {
    pub size: usize,
    /// Flags of the bond from this stage's successor into it.
    pub bond_injective: Option<bool>,
    pub bond_surjective: Option<bool>,
}

impl InverseSystem {
    pub fn new(sizes: Vec<usize>, bonds: Vec<Vec<usize>>) -> Result<InverseSystem> {
        if sizes.is_empty() {
            return Err(Error::Diagram("an inverse system needs a stage".into()));
        }
        if bonds.len() + 1 != sizes.len() {
            return Err(Error::Diagram(format!("{} stages need {} bonds", sizes.len(), sizes.len() - 1)));
        }
        for (k, b) in bonds.iter().enumerate() {
            if b.len() != sizes[k + 1] || b.iter().any(|&v| v >= sizes[k]) {
                return Err(Error::Diagram(format!("bond {} -> {k} is not a map of the stages", k + 1)));
            }
        }
        Ok(InverseSystem { sizes, bonds })
    }

    /// Every stage a single point.
    pub fn constant(len: usize) -> InverseSystem {
        InverseSystem::new(vec![1; len], vec![vec![0]; len.saturating_sub(1)]).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Bond from stage `k + 1` to stage `k`.
    pub fn bond(&self, k: usize) -> &[usize] {
        &self.bonds[k]
    }

    /// The composite bond from stage `hi` down to stage `lo`.
    pub fn composite(&self, lo: usize, hi: usize) -> Vec<usize> {
        let mut map: Vec<usize> = (0..self.sizes[hi]).collect();
        for k in (lo..hi).rev() {
            for v in map.iter_mut() {
                *v = self.bonds[k][*v];
            }
        }
        map
    }

    fn bond_flags(&self, k: usize) -> (bool, bool) {
        let b = &self.bonds[k];
        let mut hit = vec![0usize; self.sizes[k]];
        for &v in b {
            hit[v] += 1;
        }
        (hit.iter().all(|&h| h <= 1), hit.iter().all(|&h| h >= 1))
    }

    fn bijective(&self, k: usize) -> bool {
        let (i, s) = self.bond_flags(k);
        i && s
    }
}

/// Per-stage sizes and flags for the first `depth` stages.
pub fn system_stages(s: &InverseSystem, depth: usize) -> Result<Vec<StageInfo>> {
    if depth > s.len() {
        return Err(Error::Precondition(format!("only {} stages are available", s.len())));
    }
    Ok((0..depth)
        .map(|k| {
            let flags = (k + 1 < s.len()).then(|| s.bond_flags(k));
            StageInfo { size: s.sizes[k], bond_injective: flags.map(|f| f.0), bond_surjective: flags.map(|f| f.1) }
        })
        .collect())
}

/// Least `n` such that the `window` bonds between stages `n..n+window` are
/// all bijections.
pub fn detect_stabilization(s: &InverseSystem, window: usize) -> Result<Option<usize>> {
    if window == 0 {
        return Err(Error::Precondition("the stabilization window must be at least 1".into()));
    }
    let bonds = s.bonds.len();
    if bonds < window {
        return Ok(None);
    }
    Ok((0..=bonds - window).find(|&n| (n..n + window).all(|k| s.bijective(k))))
}

pub const DEFAULT_WINDOW: usize = 3;

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[usize]) -> Subset {
        Subset::from_indices(xs.iter().copied())
    }

    #[test]
    fn single_object_limit_is_the_object() {
        let x = FiniteSpace::sierpinski();
        let y = FiniteSpace::discrete(2).unwrap();
        let o = glue_one_sided(make_admissible(&x, &y, vec![s(&[0]), s(&[0, 1])]).unwrap()).unwrap();
        let d = SumDiagram::new(x, vec![("o".into(), o.clone())], vec![]).unwrap();
        let lim = sum_limit(&d).unwrap();
        assert!(lim.dense.unwrap().total().same_structure(o.total()));
        assert!(lim.full.total().same_structure(o.total()));
        assert!(lim.projections[0].is_continuous());
    }

    #[test]
    fn product_of_compactifications_is_not_dense() {
        let d = two_compactification_product();
        let lim = sum_limit(&d).unwrap();
        assert_eq!(lim.families.len(), 4);
        assert!(!lim.full.is_dense_left());
        assert_eq!(lim.dense_families, vec![0, 3]);
        assert!(lim.dense.unwrap().is_dense_left());
        let labels: Vec<&str> = lim.full.right().labels().iter().map(|l| l.as_str()).collect();
        assert_eq!(labels, ["(-inf,-inf)", "(-inf,+inf)", "(+inf,-inf)", "(+inf,+inf)"]);
    }

    #[test]
    fn non_functorial_diagram_is_rejected() {
        let x = FiniteSpace::point("x");
        let y = FiniteSpace::discrete(2).unwrap();
        let o = glue_one_sided(crate::glueing::AdmissibleMap::empty(&x, &y)).unwrap();
        let swap = SpaceMap::new(y.clone(), y.clone(), vec![1, 0]).unwrap();
        let arrows = vec![
            Arrow { from: 0, to: 1, phi: swap.clone() },
            Arrow { from: 1, to: 2, phi: swap },
            Arrow { from: 0, to: 2, phi: SpaceMap::new(y.clone(), y.clone(), vec![1, 0]).unwrap() },
        ];
        let objs = vec![("a".into(), o.clone()), ("b".into(), o.clone()), ("c".into(), o)];
        assert!(matches!(SumDiagram::new(x, objs, arrows), Err(Error::Diagram(_))));
    }

    #[test]
    fn stage_examples() {
        let c = InverseSystem::constant(6);
        let info = system_stages(&c, 6).unwrap();
        assert!(info.iter().all(|i| i.size == 1));
        assert_eq!(info[0].bond_injective, Some(true));
        assert_eq!(info[5].bond_injective, None);
        assert_eq!(detect_stabilization(&c, 3).unwrap(), Some(0));

        let sizes: Vec<usize> = (0..6).map(|n| 1 << n).collect();
        let bonds = (1..6).map(|n| (0..1usize << n).map(|v| v / 2).collect()).collect();
        let b = InverseSystem::new(sizes, bonds).unwrap();
        let info = system_stages(&b, 6).unwrap();
        assert!(info[..5].iter().all(|i| i.bond_injective == Some(false) && i.bond_surjective == Some(true)));
        assert_eq!(detect_stabilization(&b, 1).unwrap(), None);
        assert!(detect_stabilization(&b, 0).is_err());
        assert!(system_stages(&b, 7).is_err());
    }

    #[test]
    fn larger_windows_never_report_earlier() {
        // Bijective bonds only from stage 2 on.
        let sizes = vec![1, 2, 2, 2, 2, 2];
        let bonds = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1]];
        let sys = InverseSystem::new(sizes, bonds).unwrap();
        assert_eq!(detect_stabilization(&sys, 1).unwrap(), Some(1));
        assert_eq!(detect_stabilization(&sys, 3).unwrap(), Some(1));
        assert_eq!(detect_stabilization(&sys, 4).unwrap(), Some(1));
        assert_eq!(detect_stabilization(&sys, 5).unwrap(), None);
        assert_eq!(sys.composite(0, 3), vec![0, 0]);
    }
}
