//! Maps between glued spaces, composition of admissible maps, pullbacks and
//! pushforwards.
//!
//! Every arrow involved (`ψ⁻¹`, `φ⁻¹`, `f`, `g`, closures of images) preserves
//! unions, so inclusions between composites are checked on point closures.

use crate::error::{Error, Result};
use crate::glueing::{make_admissible, AdmissibleMap, SumSpace};
use crate::space::{FiniteSpace, SpaceMap};
use crate::subset::Subset;

/// `ψ + φ` from `X +_{f,g} Y` to `Z +_{h,j} W`.
#[derive(Clone, Debug)]
pub struct SumMap {
    from: SumSpace,
    to: SumSpace,
    psi: SpaceMap,
    phi: SpaceMap,
}

impl SumMap {
    /// Both halves must be continuous and must match the two glueings.
    pub fn new(from: SumSpace, to: SumSpace, psi: SpaceMap, phi: SpaceMap) -> Result<SumMap> {
        if psi.domain() != from.left() || psi.codomain() != to.left() {
            return Err(Error::Mismatch("psi does not run between the left halves".into()));
        }
        if phi.domain() != from.right() || phi.codomain() != to.right() {
            return Err(Error::Mismatch("phi does not run between the right halves".into()));
        }
        if !psi.is_continuous() {
            return Err(Error::NotContinuous("psi".into()));
        }
        if !phi.is_continuous() {
            return Err(Error::NotContinuous("phi".into()));
        }
        Ok(SumMap { from, to, psi, phi })
    }

    pub fn from(&self) -> &SumSpace {
        &self.from
    }

    pub fn to(&self) -> &SumSpace {
        &self.to
    }

    pub fn psi(&self) -> &SpaceMap {
        &self.psi
    }

    pub fn phi(&self) -> &SpaceMap {
        &self.phi
    }

    /// The induced map of total spaces.
    pub fn total_map(&self) -> SpaceMap {
        let shift = self.to.left().len();
        let table = self.psi.table().iter().copied().chain(self.phi.table().iter().map(|&w| w + shift)).collect();
        SpaceMap::new(self.from.total().clone(), self.to.total().clone(), table).expect("halves fit the totals")
    }

    /// Continuity through the diagram criterion: `f(ψ⁻¹ A) ⊆ φ⁻¹(h A)` for
    /// `A = Cl{z}` and `g(φ⁻¹ B) ⊆ ψ⁻¹(j B)` for `B = Cl{w}`.
    pub fn diagram_continuity(&self) -> bool {
        let (f, g) = (self.from.f(), self.from.g());
        let (h, j) = (self.to.f(), self.to.g());
        let z = self.to.left();
        let w = self.to.right();
        (0..z.len()).all(|p| {
            let a = z.point_closure(p);
            f.eval(self.psi.preimage(a)).is_subset(self.phi.preimage(h.eval(a)))
        }) && (0..w.len()).all(|q| {
            let b = w.point_closure(q);
            g.eval(self.phi.preimage(b)).is_subset(self.psi.preimage(j.eval(b)))
        })
    }

    /// Continuity of the total map, by specialization.
    pub fn is_continuous(&self) -> bool {
        self.total_map().is_continuous()
    }
}

/// The identity of the halves viewed as a map `X +_{f,g} Y -> X +_{f',g'} Y`.
pub fn identity_sum_map(from: &SumSpace, to: &SumSpace) -> Result<SumMap> {
    SumMap::new(from.clone(), to.clone(), SpaceMap::identity(from.left()), SpaceMap::identity(from.right()))
}

/// `f_{ΣΠ} = Σ ∘ f ∘ Π` for `Π: Y -> X`, `f: X -> W`, `Σ: W -> Z`.
pub fn compose_through(sigma: &AdmissibleMap, f: &AdmissibleMap, pi: &AdmissibleMap) -> Result<AdmissibleMap> {
    if pi.target() != f.source() || f.target() != sigma.source() {
        return Err(Error::Mismatch("Π, f and Σ do not form a chain".into()));
    }
    let gen = pi.generators().iter().map(|&a| sigma.eval(f.eval(a))).collect();
    make_admissible(pi.source(), sigma.target(), gen)
}

/// `Π(A) = Cl_X(π(A))` for a point map `π: Y -> X`. With `π` continuous this
/// is also the pushforward half `Σ(A) = Cl_Z(ϖ(A))`.
pub fn closure_of_image(pi: &SpaceMap) -> Result<AdmissibleMap> {
    let (y, x) = (pi.domain(), pi.codomain());
    let gen = (0..y.len()).map(|p| x.closure(pi.image(y.point_closure(p)))).collect();
    make_admissible(y, x, gen)
}

/// `Σ(A) = Cl_Z(ϖ⁻¹(A))` for a point map `ϖ: Z -> W`.
pub fn closure_of_preimage(varpi: &SpaceMap) -> Result<AdmissibleMap> {
    let (z, w) = (varpi.domain(), varpi.codomain());
    let gen = (0..w.len()).map(|q| z.closure(varpi.preimage(w.point_closure(q)))).collect();
    make_admissible(w, z, gen)
}

/// `Π(A) = π⁻¹(A)` for a continuous `π: X -> Y`.
pub fn preimage_map(pi: &SpaceMap) -> Result<AdmissibleMap> {
    if !pi.is_continuous() {
        return Err(Error::NotContinuous("preimages of a discontinuous map are not closed".into()));
    }
    let (x, y) = (pi.domain(), pi.codomain());
    let gen = (0..y.len()).map(|q| pi.preimage(y.point_closure(q))).collect();
    make_admissible(y, x, gen)
}

/// Pullback `f*(A) = Cl_Z(ϖ⁻¹(f(Cl_X(π(A)))))` of `f: X -> W` along
/// `π: Y -> X` and `ϖ: Z -> W`. Defined for any point maps.
pub fn pullback(f: &AdmissibleMap, pi: &SpaceMap, varpi: &SpaceMap) -> Result<AdmissibleMap> {
    if pi.codomain() != f.source() || varpi.codomain() != f.target() {
        return Err(Error::Mismatch("pullback maps must land in the source and target of f".into()));
    }
    let (x, y, z) = (f.source(), pi.domain(), varpi.domain());
    let gen = (0..y.len()).map(|p| z.closure(varpi.preimage(f.eval(x.closure(pi.image(y.point_closure(p))))))).collect();
    make_admissible(y, z, gen)
}

/// Pushforward `f_*(A) = Cl_Z(ϖ(f(π⁻¹(A))))` of `f: X -> W` along continuous
/// `π: X -> Y` and `ϖ: W -> Z`.
pub fn pushforward(f: &AdmissibleMap, pi: &SpaceMap, varpi: &SpaceMap) -> Result<AdmissibleMap> {
    if pi.domain() != f.source() || varpi.domain() != f.target() {
        return Err(Error::Mismatch("pushforward maps must start at the source and target of f".into()));
    }
    if !pi.is_continuous() {
        return Err(Error::NotContinuous("pi".into()));
    }
    if !varpi.is_continuous() {
        return Err(Error::NotContinuous("varpi".into()));
    }
    let (y, z) = (pi.codomain(), varpi.codomain());
    let gen = (0..y.len()).map(|q| z.closure(varpi.image(f.eval(pi.preimage(y.point_closure(q)))))).collect();
    make_admissible(y, z, gen)
}

/// `left ⊆ right` as maps `Closed(A) -> Closed(B)`, tested on point closures
/// of `A`. Both sides must preserve unions.
pub fn included_on_generators(a: &FiniteSpace, left: impl Fn(Subset) -> Subset, right: impl Fn(Subset) -> Subset) -> bool {
    (0..a.len()).all(|p| {
        let c = a.point_closure(p);
        left(c).is_subset(right(c))
    })
}

/// The two inclusion squares of the cube lemma:
/// `Π1 ∘ ψ⁻¹ ⊆ μ⁻¹ ∘ Π2` on `Closed(Y2)` and `Σ1 ∘ ν⁻¹ ⊆ φ⁻¹ ∘ Σ2` on
/// `Closed(W2)`.
#[allow(clippy::too_many_arguments)]
pub fn cube_squares_hold(
    pi1: &AdmissibleMap,
    pi2: &AdmissibleMap,
    sigma1: &AdmissibleMap,
    sigma2: &AdmissibleMap,
    psi: &SpaceMap,
    mu: &SpaceMap,
    nu: &SpaceMap,
    phi: &SpaceMap,
) -> bool {
    included_on_generators(pi2.source(), |a| pi1.eval(psi.preimage(a)), |a| mu.preimage(pi2.eval(a)))
        && included_on_generators(sigma2.source(), |b| sigma1.eval(nu.preimage(b)), |b| phi.preimage(sigma2.eval(b)))
}

/// Finite reading of compactness transfer: if every nonempty closed set of
/// `X` has nonempty image under `f` and `ϖ` is surjective, every nonempty
/// closed set of `Y` has nonempty image under `f*`. Properness is vacuous on
/// finite spaces.
pub fn is_complete(f: &AdmissibleMap) -> bool {
    f.generators().iter().all(|g| !g.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glueing::{glue_one_sided, AdmissibleMap};

    fn s(xs: &[usize]) -> Subset {
        Subset::from_indices(xs.iter().copied())
    }

    #[test]
    fn identity_corollary_example() {
        let x = FiniteSpace::sierpinski();
        let y = FiniteSpace::discrete(2).unwrap();
        let small = make_admissible(&x, &y, vec![Subset::EMPTY, s(&[0])]).unwrap();
        let big = AdmissibleMap::full(&x, &y);
        let a = glue_one_sided(small.clone()).unwrap();
        let b = glue_one_sided(big).unwrap();
        assert!(identity_sum_map(&a, &b).unwrap().diagram_continuity());
        assert!(!identity_sum_map(&b, &a).unwrap().diagram_continuity());
        assert!(!identity_sum_map(&b, &a).unwrap().is_continuous());
    }

    #[test]
    fn compose_through_examples() {
        let x = FiniteSpace::sierpinski();
        let w = FiniteSpace::discrete(2).unwrap();
        let f = make_admissible(&x, &w, vec![s(&[1]), s(&[0, 1])]).unwrap();
        let id_x = AdmissibleMap::identity(&x);
        let id_w = AdmissibleMap::identity(&w);
        assert_eq!(compose_through(&id_w, &f, &id_x).unwrap(), f);
        let none = AdmissibleMap::empty(&x, &x);
        assert!(compose_through(&id_w, &f, &none).unwrap().is_empty());
        assert!(compose_through(&f, &f, &id_x).is_err());
    }

    #[test]
    fn pullback_examples() {
        let x = FiniteSpace::point("x");
        let w = FiniteSpace::point("w");
        let f = AdmissibleMap::full(&x, &w);
        let y = FiniteSpace::discrete(2).unwrap();
        let pi = SpaceMap::constant(&y, &x, 0).unwrap();
        let star = pullback(&f, &pi, &SpaceMap::identity(&w)).unwrap();
        assert_eq!(star.generators(), [s(&[0]), s(&[0])]);

        let sx = FiniteSpace::sierpinski();
        let g = make_admissible(&sx, &y, vec![s(&[0]), s(&[0, 1])]).unwrap();
        let same = pullback(&g, &SpaceMap::identity(&sx), &SpaceMap::identity(&y)).unwrap();
        assert_eq!(same, g);
    }

    #[test]
    fn pushforward_examples() {
        let x = FiniteSpace::sierpinski();
        let w = FiniteSpace::discrete(2).unwrap();
        let f = make_admissible(&x, &w, vec![Subset::EMPTY, s(&[1])]).unwrap();
        let same = pushforward(&f, &SpaceMap::identity(&x), &SpaceMap::identity(&w)).unwrap();
        assert_eq!(same, f);
        let pt = FiniteSpace::point("*");
        let collapse = SpaceMap::constant(&w, &pt, 0).unwrap();
        let pushed = pushforward(&f, &SpaceMap::identity(&x), &collapse).unwrap();
        assert_eq!(pushed.generators(), [Subset::EMPTY, s(&[0])]);
        let bad = SpaceMap::new(x.clone(), w.clone(), vec![0, 1]).unwrap();
        assert!(matches!(pushforward(&f, &SpaceMap::identity(&x), &bad), Err(Error::Mismatch(_))));
        assert!(matches!(
            pushforward(&AdmissibleMap::empty(&w, &w), &SpaceMap::new(w.clone(), x.clone(), vec![0, 1]).unwrap(), &SpaceMap::identity(&w)),
            Ok(_)
        ));
        assert!(matches!(pushforward(&AdmissibleMap::empty(&x, &w), &bad, &SpaceMap::identity(&w)), Err(Error::NotContinuous(_))));
    }

    #[test]
    fn pullback_makes_projection_continuous() {
        let x = FiniteSpace::sierpinski();
        let w = FiniteSpace::discrete(2).unwrap();
        let f = make_admissible(&x, &w, vec![s(&[0]), s(&[0, 1])]).unwrap();
        let y = FiniteSpace::chain(3).unwrap();
        let pi = SpaceMap::new(y.clone(), x.clone(), vec![0, 0, 1]).unwrap();
        let varpi = SpaceMap::identity(&w);
        let star = pullback(&f, &pi, &varpi).unwrap();
        let m = SumMap::new(glue_one_sided(star).unwrap(), glue_one_sided(f).unwrap(), pi, varpi).unwrap();
        assert!(m.diagram_continuity() && m.is_continuous());
    }
}
