//! Admissible maps, admissible pairs and the glued space `X +_{f,g} Y`.

use crate::error::{Error, Result};
use crate::mutation::{self, Mutation};
use crate::space::{compress, FiniteSpace, SpaceMap};
use crate::subset::{Subset, CAPACITY};

/// A union- and ∅-preserving map `Closed(X) -> Closed(Y)`, stored by its
/// values on point closures: `gen[x] = f(Cl{x})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleMap {
    source: FiniteSpace,
    target: FiniteSpace,
    gen: Vec<Subset>,
}

/// Validate a generator table. Each value must be closed in the target and
/// the table must be monotone: `x' ∈ Cl{x}` implies `gen(x') ⊆ gen(x)`.
pub fn make_admissible(source: &FiniteSpace, target: &FiniteSpace, gen: Vec<Subset>) -> Result<AdmissibleMap> {
    if gen.len() != source.len() {
        return Err(Error::TableSize { expected: source.len(), got: gen.len() });
    }
    for (x, &g) in gen.iter().enumerate() {
        if !g.is_subset(target.full()) {
            return Err(Error::Mismatch(format!("gen({:?}) names points outside the target", source.label(x))));
        }
        let missing = target.closure(g) - g;
        if let Some(y) = missing.first() {
            return Err(Error::GeneratorNotClosed { point: source.label(x).to_string(), missing: target.label(y).to_string() });
        }
    }
    if !mutation::is_active(Mutation::SkipMonotonicity) {
        for x in 0..source.len() {
            for lower in source.point_closure(x) {
                if !gen[lower].is_subset(gen[x]) {
                    return Err(Error::NotMonotone { lower: source.label(lower).to_string(), upper: source.label(x).to_string() });
                }
            }
        }
    }
    Ok(AdmissibleMap { source: source.clone(), target: target.clone(), gen })
}

impl AdmissibleMap {
    /// The constant-∅ map.
    pub fn empty(source: &FiniteSpace, target: &FiniteSpace) -> AdmissibleMap {
        AdmissibleMap { source: source.clone(), target: target.clone(), gen: vec![Subset::EMPTY; source.len()] }
    }

    /// Every nonempty closed set goes to the whole target.
    pub fn full(source: &FiniteSpace, target: &FiniteSpace) -> AdmissibleMap {
        AdmissibleMap { source: source.clone(), target: target.clone(), gen: vec![target.full(); source.len()] }
    }

    pub fn identity(space: &FiniteSpace) -> AdmissibleMap {
        AdmissibleMap { source: space.clone(), target: space.clone(), gen: space.point_closures().to_vec() }
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn generators(&self) -> &[Subset] {
        &self.gen
    }

    /// `f(Cl{x})`.
    pub fn gen(&self, x: usize) -> Subset {
        self.gen[x]
    }

    /// `f(A)` for a closed `A`.
    pub fn apply(&self, a: Subset) -> Result<Subset> {
        if !self.source.is_closed(a) {
            return Err(Error::NotClosed(format!("{a:?} in the source of an admissible map")));
        }
        Ok(self.eval(a))
    }

    /// Union of generators over `a`. For any `a` this equals `f(Cl a)`.
    pub fn eval(&self, a: Subset) -> Subset {
        a.iter().fold(Subset::EMPTY, |acc, x| acc | self.gen[x])
    }

    pub fn is_empty(&self) -> bool {
        self.gen.iter().all(|g| g.is_empty())
    }

    /// Pointwise inclusion `self ⊆ other`.
    pub fn le(&self, other: &AdmissibleMap) -> bool {
        self.gen.len() == other.gen.len() && self.gen.iter().zip(&other.gen).all(|(a, b)| a.is_subset(*b))
    }

    /// Generatorwise intersection; admissible and below both inputs.
    pub fn meet(&self, other: &AdmissibleMap) -> Result<AdmissibleMap> {
        self.same_shape(other)?;
        let gen = self.gen.iter().zip(&other.gen).map(|(a, b)| *a & *b).collect();
        make_admissible(&self.source, &self.target, gen)
    }

    /// Generatorwise union, the least admissible map above both inputs.
    pub fn join(&self, other: &AdmissibleMap) -> Result<AdmissibleMap> {
        self.same_shape(other)?;
        let gen = self.gen.iter().zip(&other.gen).map(|(a, b)| *a | *b).collect();
        make_admissible(&self.source, &self.target, gen)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AdmissibleMap) -> Result<AdmissibleMap> {
        if self.target != next.source {
            return Err(Error::Mismatch("composed admissible maps do not meet".into()));
        }
        let gen = self.gen.iter().map(|&g| next.eval(g)).collect();
        make_admissible(&self.source, &next.target, gen)
    }

    fn same_shape(&self, other: &AdmissibleMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch("admissible maps between different spaces".into()));
        }
        Ok(())
    }
}

/// Admissible maps `f: X -> Y`, `g: Y -> X` with `g∘f(A) ⊆ A` and
/// `f∘g(B) ⊆ B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    pub f: AdmissibleMap,
    pub g: AdmissibleMap,
}

pub fn check_pair(f: AdmissibleMap, g: AdmissibleMap) -> Result<AdmissiblePair> {
    if f.source != g.target || f.target != g.source {
        return Err(Error::Mismatch("f and g must run between the same two spaces".into()));
    }
    let (x, y) = (f.source.clone(), f.target.clone());
    for p in 0..x.len() {
        if !g.eval(f.gen(p)).is_subset(x.point_closure(p)) {
            return Err(Error::PairViolation(format!("g(f(Cl{{{:?}}})) escapes Cl{{{:?}}}", x.label(p), x.label(p))));
        }
    }
    for q in 0..y.len() {
        if !f.eval(g.gen(q)).is_subset(y.point_closure(q)) {
            return Err(Error::PairViolation(format!("f(g(Cl{{{:?}}})) escapes Cl{{{:?}}}", y.label(q), y.label(q))));
        }
    }
    Ok(AdmissiblePair { f, g })
}

impl AdmissiblePair {
    /// The pair `(f, ∅)`, which is always admissible.
    pub fn one_sided(f: AdmissibleMap) -> AdmissiblePair {
        let g = AdmissibleMap::empty(f.target(), f.source());
        AdmissiblePair { f, g }
    }

    pub fn left(&self) -> &FiniteSpace {
        self.f.source()
    }

    pub fn right(&self) -> &FiniteSpace {
        self.f.target()
    }
}

/// `X +_{f,g} Y`: left points occupy indices `0..|X|` of the total space,
/// right points follow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SumSpace {
    pair: AdmissiblePair,
    total: FiniteSpace,
}

pub const LEFT_PREFIX: &str = "L:";
pub const RIGHT_PREFIX: &str = "R:";

pub fn glue(x: &FiniteSpace, y: &FiniteSpace, pair: AdmissiblePair) -> Result<SumSpace> {
    if pair.left() != x || pair.right() != y {
        return Err(Error::Mismatch("the pair does not run between the given spaces".into()));
    }
    let (n, m) = (x.len(), y.len());
    if n + m > CAPACITY {
        return Err(Error::Capacity { needed: n + m, cap: CAPACITY });
    }
    let drop_f = mutation::is_active(Mutation::DropGlueF);
    let mut closures = Vec::with_capacity(n + m);
    for p in 0..n {
        let f_part = if drop_f { Subset::EMPTY } else { pair.f.gen(p).shifted(n) };
        closures.push(x.point_closure(p) | f_part);
    }
    for q in 0..m {
        closures.push(y.point_closure(q).shifted(n) | pair.g.gen(q));
    }
    let labels =
        x.labels().iter().map(|l| format!("{LEFT_PREFIX}{l}")).chain(y.labels().iter().map(|l| format!("{RIGHT_PREFIX}{l}"))).collect();
    let total = FiniteSpace::from_closures(labels, closures)?;
    Ok(SumSpace { pair, total })
}

/// Glue along `(f, ∅)`.
pub fn glue_one_sided(f: AdmissibleMap) -> Result<SumSpace> {
    let (x, y) = (f.source().clone(), f.target().clone());
    glue(&x, &y, AdmissiblePair::one_sided(f))
}

impl SumSpace {
    pub fn left(&self) -> &FiniteSpace {
        self.pair.left()
    }

    pub fn right(&self) -> &FiniteSpace {
        self.pair.right()
    }

    pub fn pair(&self) -> &AdmissiblePair {
        &self.pair
    }

    pub fn f(&self) -> &AdmissibleMap {
        &self.pair.f
    }

    pub fn g(&self) -> &AdmissibleMap {
        &self.pair.g
    }

    pub fn total(&self) -> &FiniteSpace {
        &self.total
    }

    /// Indices of the left half inside the total space.
    pub fn left_set(&self) -> Subset {
        Subset::full(self.left().len())
    }

    pub fn right_set(&self) -> Subset {
        Subset::full(self.total.len()) - self.left_set()
    }

    pub fn embed_left(&self) -> SpaceMap {
        SpaceMap::new(self.left().clone(), self.total.clone(), (0..self.left().len()).collect()).expect("left indices lie in the total")
    }

    pub fn embed_right(&self) -> SpaceMap {
        let n = self.left().len();
        SpaceMap::new(self.right().clone(), self.total.clone(), (n..n + self.right().len()).collect())
            .expect("right indices lie in the total")
    }

    /// Total-space indices of a left subset and a right subset.
    pub fn join_halves(&self, a: Subset, b: Subset) -> Subset {
        a | b.shifted(self.left().len())
    }

    /// Split a total-space subset into its left and right parts.
    pub fn split(&self, d: Subset) -> (Subset, Subset) {
        let n = self.left().len();
        (d.window(0, n), d.window(n, self.right().len()))
    }

    /// The four-condition closedness test that defines the glued topology.
    pub fn is_glue_closed(&self, d: Subset) -> bool {
        let (a, b) = self.split(d);
        self.left().is_closed(a) && self.right().is_closed(b) && self.f().eval(a).is_subset(b) && self.g().eval(b).is_subset(a)
    }

    /// `X` is dense iff `f(X) = Y`.
    pub fn is_dense_left(&self) -> bool {
        self.f().eval(self.left().full()) == self.right().full()
    }

    /// `Y` is dense iff `g(Y) = X`.
    pub fn is_dense_right(&self) -> bool {
        self.g().eval(self.right().full()) == self.left().full()
    }
}

/// The result of splitting a space along an open subset.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub left: FiniteSpace,
    pub right: FiniteSpace,
    pub pair: AdmissiblePair,
    /// Ambient indices of the left and right points, in order.
    pub left_points: Subset,
    pub right_points: Subset,
}

/// Split `z` along an open `xs`: `f(A) = Cl_Z(A) ∩ Y`, `g(B) = Cl_Z(B) ∩ X`.
pub fn decompose(z: &FiniteSpace, xs: Subset) -> Result<Decomposition> {
    if !z.is_open(xs) {
        return Err(Error::NotOpen(format!("{xs:?} is not open")));
    }
    decompose_partition(z, xs)
}

/// The same split along any nonempty proper subset. When `xs` is not open
/// `g` is nonempty, and the two-sided glueing still reproduces `z`.
pub fn decompose_partition(z: &FiniteSpace, xs: Subset) -> Result<Decomposition> {
    if !xs.is_subset(z.full()) {
        return Err(Error::Precondition(format!("{xs:?} is not a subset of the space")));
    }
    let ys = z.full() - xs;
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::Precondition("both sides of a decomposition must be nonempty".into()));
    }
    let left = z.subspace(xs)?;
    let right = z.subspace(ys)?;
    let f_gen = xs.iter().map(|p| compress(z.point_closure(p), ys)).collect();
    let g_gen = ys.iter().map(|q| compress(z.point_closure(q), xs)).collect();
    let f = make_admissible(&left, &right, f_gen)?;
    let g = make_admissible(&right, &left, g_gen)?;
    let pair = check_pair(f, g)?;
    Ok(Decomposition { left, right, pair, left_points: xs, right_points: ys })
}

impl Decomposition {
    /// Map total indices of `glue(left, right, pair)` back to ambient ones.
    pub fn ambient_index(&self) -> Vec<usize> {
        self.left_points.iter().chain(self.right_points.iter()).collect()
    }

    /// True iff gluing the halves reproduces the ambient topology.
    pub fn reglues_to(&self, z: &FiniteSpace) -> Result<bool> {
        let s = glue(&self.left, &self.right, self.pair.clone())?;
        let idx = self.ambient_index();
        Ok((0..idx.len()).all(|t| s.total().point_closure(t).map_through(&idx) == z.point_closure(idx[t])))
    }
}

/// Hausdorff criterion for `X +_f Y` on discrete halves: `f` kills every
/// (finite, hence compact) closed set, and every `a != b` in `Y` is separated
/// by closed `A ∪ B = X` with `b ∉ f(A)` and `a ∉ f(B)`.
pub fn hausdorff_criterion(x: &FiniteSpace, y: &FiniteSpace, f: &AdmissibleMap) -> Result<bool> {
    if !x.is_discrete() || !y.is_discrete() {
        return Err(Error::Precondition("the Hausdorff criterion needs discrete halves".into()));
    }
    if f.source() != x || f.target() != y {
        return Err(Error::Mismatch("f does not run between the given spaces".into()));
    }
    if !f.is_empty() {
        return Ok(false);
    }
    let closed = x.enumerate_closed_sets()?;
    let separated = |a: usize, b: usize| {
        closed.iter().any(|&sa| {
            // f is monotone, so the least complementary closed set is best.
            let sb = x.closure(x.full() - sa);
            !f.eval(sa).contains(b) && !f.eval(sb).contains(a)
        })
    };
    Ok((0..y.len()).all(|a| (0..y.len()).all(|b| a == b || separated(a, b))))
}

/// Compactness criterion. On a finite space every closed set is compact, so
/// its hypothesis ("A not compact") never holds and it is vacuously true.
pub fn compactness_criterion(_f: &AdmissibleMap) -> bool {
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[usize]) -> Subset {
        Subset::from_indices(xs.iter().copied())
    }

    #[test]
    fn make_admissible_examples() {
        let sier = FiniteSpace::sierpinski();
        let pt = FiniteSpace::point("y");
        assert!(make_admissible(&sier, &pt, vec![Subset::EMPTY; 2]).unwrap().is_empty());
        assert!(make_admissible(&sier, &pt, vec![Subset::EMPTY, s(&[0])]).is_ok());
        assert_eq!(
            make_admissible(&sier, &pt, vec![s(&[0]), Subset::EMPTY]),
            Err(Error::NotMonotone { lower: "s0".into(), upper: "s1".into() })
        );
        assert!(matches!(make_admissible(&pt, &sier, vec![s(&[1])]), Err(Error::GeneratorNotClosed { .. })));
    }

    #[test]
    fn apply_examples() {
        let x = FiniteSpace::point("x");
        let y = FiniteSpace::point("y");
        let f = make_admissible(&x, &y, vec![s(&[0])]).unwrap();
        assert_eq!(f.apply(Subset::EMPTY).unwrap(), Subset::EMPTY);
        assert_eq!(f.apply(s(&[0])).unwrap(), s(&[0]));
        let sier = FiniteSpace::sierpinski();
        let h = AdmissibleMap::identity(&sier);
        assert!(h.apply(s(&[1])).is_err());
    }

    #[test]
    fn check_pair_examples() {
        let sier = FiniteSpace::sierpinski();
        let d = FiniteSpace::discrete(2).unwrap();
        let f = make_admissible(&sier, &d, vec![s(&[0]), s(&[0, 1])]).unwrap();
        assert!(check_pair(f.clone(), AdmissibleMap::empty(&d, &sier)).is_ok());
        let x = FiniteSpace::point("x");
        let y = FiniteSpace::point("y");
        let p = check_pair(AdmissibleMap::full(&x, &y), AdmissibleMap::full(&y, &x));
        assert!(p.is_ok());
        // g(f(Cl s0)) = g({d0}) must stay inside Cl{s0} = {s0}.
        let g = make_admissible(&d, &sier, vec![s(&[0, 1]), s(&[0, 1])]).unwrap();
        assert!(matches!(check_pair(f, g), Err(Error::PairViolation(_))));
    }

    #[test]
    fn glue_examples() {
        let x = FiniteSpace::point("x");
        let y = FiniteSpace::point("y");
        let sum = glue_one_sided(make_admissible(&x, &y, vec![s(&[0])]).unwrap()).unwrap();
        assert_eq!(sum.total().point_closure(0), s(&[0, 1]));
        assert_eq!(sum.total().point_closure(1), s(&[1]));
        assert_eq!(sum.total().labels(), ["L:x", "R:y"]);
        assert!(sum.is_dense_left());
        let coprod = glue_one_sided(AdmissibleMap::empty(&x, &y)).unwrap();
        assert!(coprod.total().is_discrete());
        assert!(!coprod.is_dense_left());
    }

    #[test]
    fn decompose_examples() {
        let sier = FiniteSpace::sierpinski();
        let d = decompose(&sier, s(&[1])).unwrap();
        assert_eq!(d.pair.f.generators(), [s(&[0])]);
        assert_eq!(d.pair.g.generators(), [Subset::EMPTY]);
        assert!(d.reglues_to(&sier).unwrap());
        let disc = FiniteSpace::discrete(2).unwrap();
        let d = decompose(&disc, s(&[0])).unwrap();
        assert!(d.pair.f.is_empty() && d.pair.g.is_empty());
        assert!(matches!(decompose(&sier, s(&[0])), Err(Error::NotOpen(_))));
    }

    #[test]
    fn hausdorff_examples() {
        let x = FiniteSpace::discrete(2).unwrap();
        let y = FiniteSpace::discrete(2).unwrap();
        assert!(hausdorff_criterion(&x, &y, &AdmissibleMap::empty(&x, &y)).unwrap());
        assert!(!hausdorff_criterion(&x, &y, &AdmissibleMap::full(&x, &y)).unwrap());
        let sier = FiniteSpace::sierpinski();
        assert!(hausdorff_criterion(&sier, &y, &AdmissibleMap::empty(&sier, &y)).is_err());
    }
}
