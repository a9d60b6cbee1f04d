//! Endo-maps on a finite lattice and their Galois adjoints.
//!
//! Adjoints are computed from their defining formulas by full enumeration:
//! the right adjoint of `f` is `b ↦ ⋁{b' | f(b') ≤ b}` and the left adjoint
//! of `g` is `b ↦ ⋀{b' | b ≤ g(b')}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::lattice::{Elem, FiniteLattice};

/// Declared flavor of a map. Operations demand the flavor they need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    JoinPreserving,
    MeetPreserving,
    Unclassified,
}

/// A total map `L → L`, stored as an image table.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    lattice: Arc<FiniteLattice>,
    values: Vec<Elem>,
    kind: MapKind,
}

impl PartialEq for LatticeMap {
    /// Maps compare by lattice and table; the declared flavor is not part of identity.
    fn eq(&self, other: &Self) -> bool {
        same_lattice(&self.lattice, &other.lattice) && self.values == other.values
    }
}

impl Eq for LatticeMap {}

/// Why a map fails to preserve joins (or, dually, meets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreservationFailure {
    /// The empty join (meet) is not preserved: `f(⊥) ≠ ⊥` (`f(⊤) ≠ ⊤`).
    Unit { image: Elem },
    /// A binary join (meet) is not preserved.
    Pair { a: Elem, b: Elem },
}

/// A pair `(b, b')` where `left(b) ≤ b'` and `b ≤ right(b')` disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdjunctionFailure {
    pub b: Elem,
    pub b_prime: Elem,
}

/// A point where `f*(b) ≠ ¬g*(¬b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftMismatch {
    pub at: Elem,
    pub right_adjoint: Elem,
    pub negated_dual_adjoint: Elem,
}

pub(crate) fn same_lattice(a: &Arc<FiniteLattice>, b: &Arc<FiniteLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LatticeMap {
    pub fn identity(lattice: &Arc<FiniteLattice>) -> Self {
        LatticeMap {
            lattice: lattice.clone(),
            values: lattice.elements().collect(),
            kind: MapKind::JoinPreserving,
        }
    }

    /// Constant map; classified as join-preserving when the constant is
    /// bottom and meet-preserving when it is top.
    pub fn constant(lattice: &Arc<FiniteLattice>, value: Elem) -> Result<Self> {
        lattice.check(value)?;
        let kind = if value == lattice.bottom() {
            MapKind::JoinPreserving
        } else if value == lattice.top() {
            MapKind::MeetPreserving
        } else {
            MapKind::Unclassified
        };
        Ok(LatticeMap {
            lattice: lattice.clone(),
            values: vec![value; lattice.size()],
            kind,
        })
    }

    /// Unclassified map from an image table indexed by element id.
    pub fn from_table(lattice: &Arc<FiniteLattice>, values: Vec<Elem>) -> Result<Self> {
        if values.len() != lattice.size() {
            return Err(AlgebraError::TableSize {
                got: values.len(),
                expected: lattice.size(),
            });
        }
        for &v in &values {
            lattice.check(v)?;
        }
        Ok(LatticeMap {
            lattice: lattice.clone(),
            values,
            kind: MapKind::Unclassified,
        })
    }

    pub fn from_fn(lattice: &Arc<FiniteLattice>, f: impl Fn(Elem) -> Elem) -> Result<Self> {
        Self::from_table(lattice, lattice.elements().map(f).collect())
    }

    /// The join-preserving map extending an assignment on join-irreducibles:
    /// `f(x) = ⋁{assign(j) | j ≤ x}`.
    pub fn from_generators(
        lattice: &Arc<FiniteLattice>,
        assignments: &[(Elem, Elem)],
    ) -> Result<Self> {
        let irr = lattice.join_irreducibles();
        let mut image: Vec<Option<Elem>> = vec![None; irr.len()];
        for &(j, v) in assignments {
            lattice.check(j)?;
            lattice.check(v)?;
            let slot = irr
                .binary_search(&j)
                .map_err(|_| AlgebraError::NotJoinIrreducible(lattice.name(j)))?;
            if image[slot].replace(v).is_some() {
                return Err(AlgebraError::DuplicateGenerator(lattice.name(j)));
            }
        }
        let image: Vec<Elem> = image
            .into_iter()
            .zip(irr)
            .map(|(v, &j)| v.ok_or_else(|| AlgebraError::MissingGenerator(lattice.name(j))))
            .collect::<Result<_>>()?;
        let values = lattice
            .elements()
            .map(|x| {
                lattice.join_all(
                    irr.iter()
                        .zip(&image)
                        .filter(|(&j, _)| lattice.leq(j, x))
                        .map(|(_, &v)| v),
                )
            })
            .collect();
        LatticeMap {
            lattice: lattice.clone(),
            values,
            kind: MapKind::Unclassified,
        }
        .into_join_preserving()
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.values[x.index()]
    }

    pub fn try_apply(&self, x: Elem) -> Result<Elem> {
        self.lattice.check(x)?;
        Ok(self.apply(x))
    }

    /// `f(⊥) = ⊥` and `f(a ∨ b) = f(a) ∨ f(b)` for all pairs.
    pub fn validate_join_preserving(&self) -> std::result::Result<(), PreservationFailure> {
        let l = &self.lattice;
        let at_bottom = self.apply(l.bottom());
        if at_bottom != l.bottom() {
            return Err(PreservationFailure::Unit { image: at_bottom });
        }
        for a in l.elements() {
            for b in l.elements().filter(|&b| b > a) {
                if self.apply(l.join(a, b)) != l.join(self.apply(a), self.apply(b)) {
                    return Err(PreservationFailure::Pair { a, b });
                }
            }
        }
        Ok(())
    }

    /// `f(⊤) = ⊤` and `f(a ∧ b) = f(a) ∧ f(b)` for all pairs.
    pub fn validate_meet_preserving(&self) -> std::result::Result<(), PreservationFailure> {
        let l = &self.lattice;
        let at_top = self.apply(l.top());
        if at_top != l.top() {
            return Err(PreservationFailure::Unit { image: at_top });
        }
        for a in l.elements() {
            for b in l.elements().filter(|&b| b > a) {
                if self.apply(l.meet(a, b)) != l.meet(self.apply(a), self.apply(b)) {
                    return Err(PreservationFailure::Pair { a, b });
                }
            }
        }
        Ok(())
    }

    /// Validates and tags the map as join-preserving.
    pub fn into_join_preserving(mut self) -> Result<Self> {
        if self.kind != MapKind::JoinPreserving {
            self.validate_join_preserving()
                .map_err(|w| AlgebraError::NotJoinPreserving(self.describe_failure(&w, "∨")))?;
            self.kind = MapKind::JoinPreserving;
        }
        Ok(self)
    }

    /// Validates and tags the map as meet-preserving.
    pub fn into_meet_preserving(mut self) -> Result<Self> {
        if self.kind != MapKind::MeetPreserving {
            self.validate_meet_preserving()
                .map_err(|w| AlgebraError::NotMeetPreserving(self.describe_failure(&w, "∧")))?;
            self.kind = MapKind::MeetPreserving;
        }
        Ok(self)
    }

    fn describe_failure(&self, w: &PreservationFailure, op: &str) -> String {
        let l = &self.lattice;
        match *w {
            PreservationFailure::Unit { image } => format!("empty {op} maps to {}", l.name(image)),
            PreservationFailure::Pair { a, b } => format!("at ({}, {})", l.name(a), l.name(b)),
        }
    }

    fn ensure_same(&self, other: &LatticeMap) -> Result<()> {
        if same_lattice(&self.lattice, &other.lattice) {
            Ok(())
        } else {
            Err(AlgebraError::LatticeMismatch)
        }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &LatticeMap) -> Result<LatticeMap> {
        self.ensure_same(other)?;
        let kind = match (self.kind, other.kind) {
            (MapKind::JoinPreserving, MapKind::JoinPreserving) => MapKind::JoinPreserving,
            (MapKind::MeetPreserving, MapKind::MeetPreserving) => MapKind::MeetPreserving,
            _ => MapKind::Unclassified,
        };
        Ok(LatticeMap {
            lattice: self.lattice.clone(),
            values: other.values.iter().map(|&x| self.apply(x)).collect(),
            kind,
        })
    }

    pub fn pointwise_join(&self, other: &LatticeMap) -> Result<LatticeMap> {
        self.ensure_same(other)?;
        let l = &self.lattice;
        let kind = match (self.kind, other.kind) {
            (MapKind::JoinPreserving, MapKind::JoinPreserving) => MapKind::JoinPreserving,
            _ => MapKind::Unclassified,
        };
        Ok(LatticeMap {
            lattice: l.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| l.join(a, b))
                .collect(),
            kind,
        })
    }

    pub fn pointwise_meet(&self, other: &LatticeMap) -> Result<LatticeMap> {
        self.ensure_same(other)?;
        let l = &self.lattice;
        let kind = match (self.kind, other.kind) {
            (MapKind::MeetPreserving, MapKind::MeetPreserving) => MapKind::MeetPreserving,
            _ => MapKind::Unclassified,
        };
        Ok(LatticeMap {
            lattice: l.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| l.meet(a, b))
                .collect(),
            kind,
        })
    }

    /// `i`-fold self composition; `f^0` is the identity.
    pub fn power(&self, i: usize) -> LatticeMap {
        let mut acc = LatticeMap::identity(&self.lattice);
        if self.kind != MapKind::JoinPreserving {
            acc.kind = self.kind;
        }
        for _ in 0..i {
            acc = self.compose(&acc).expect("same lattice");
        }
        acc
    }

    /// Pointwise `self ≤ other`.
    pub fn leq(&self, other: &LatticeMap) -> bool {
        same_lattice(&self.lattice, &other.lattice)
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(&a, &b)| self.lattice.leq(a, b))
    }

    /// Right adjoint of a join-preserving map.
    pub fn right_adjoint(&self) -> Result<AdjointPair> {
        let f = self.clone().into_join_preserving()?;
        let l = &f.lattice;
        let values = l
            .elements()
            .map(|b| l.join_all(l.elements().filter(|&b2| l.leq(f.apply(b2), b))))
            .collect();
        let right = LatticeMap {
            lattice: l.clone(),
            values,
            kind: MapKind::MeetPreserving,
        };
        let pair = AdjointPair { left: f, right };
        pair.check()?;
        Ok(pair)
    }

    /// Left adjoint of a meet-preserving map.
    pub fn left_adjoint(&self) -> Result<AdjointPair> {
        let g = self.clone().into_meet_preserving()?;
        let l = &g.lattice;
        let left = LatticeMap {
            lattice: l.clone(),
            values: l
                .elements()
                .map(|b| l.meet_all(l.elements().filter(|&b2| l.leq(b, g.apply(b2)))))
                .collect(),
            kind: MapKind::JoinPreserving,
        };
        let pair = AdjointPair { left, right: g };
        pair.check()?;
        Ok(pair)
    }

    /// De Morgan dual `b ↦ ¬f(¬b)` on a Boolean carrier.
    pub fn de_morgan_dual(&self) -> Result<LatticeMap> {
        let l = &self.lattice;
        if !l.is_boolean() {
            return Err(AlgebraError::NotBoolean);
        }
        let neg = |x: Elem| l.complement(x).expect("Boolean lattice");
        let kind = match self.kind {
            MapKind::JoinPreserving => MapKind::MeetPreserving,
            MapKind::MeetPreserving => MapKind::JoinPreserving,
            MapKind::Unclassified => MapKind::Unclassified,
        };
        Ok(LatticeMap {
            lattice: l.clone(),
            values: l.elements().map(|b| neg(self.apply(neg(b)))).collect(),
            kind,
        })
    }

    /// `⋁_{i≥1} f^i`, computed as the stable point of `F₁ = f`, `F_{k+1} = f ∨ f∘F_k`.
    pub fn lfp_join(&self) -> Result<LatticeMap> {
        if self.kind != MapKind::JoinPreserving {
            return Err(AlgebraError::NotJoinPreserving(
                "flavor not validated".into(),
            ));
        }
        self.stabilize(|a, b| a.pointwise_join(b))
    }

    /// `⋀_{i≥1} g^i`, computed as the stable point of `G₁ = g`, `G_{k+1} = g ∧ g∘G_k`.
    pub fn gfp_meet(&self) -> Result<LatticeMap> {
        if self.kind != MapKind::MeetPreserving {
            return Err(AlgebraError::NotMeetPreserving(
                "flavor not validated".into(),
            ));
        }
        self.stabilize(|a, b| a.pointwise_meet(b))
    }

    /// `⋁_{i≥0} f^i`.
    pub fn lfp_join_reflexive(&self) -> Result<LatticeMap> {
        LatticeMap::identity(&self.lattice).pointwise_join(&self.lfp_join()?)
    }

    /// `⋀_{i≥0} g^i`.
    pub fn gfp_meet_reflexive(&self) -> Result<LatticeMap> {
        let mut id = LatticeMap::identity(&self.lattice);
        id.kind = MapKind::MeetPreserving;
        id.pointwise_meet(&self.gfp_meet()?)
    }

    fn stabilize(
        &self,
        combine: impl Fn(&LatticeMap, &LatticeMap) -> Result<LatticeMap>,
    ) -> Result<LatticeMap> {
        let l = &self.lattice;
        // Each point moves monotonically along a chain, so at most
        // |L|·height(L) rounds can change anything.
        let cap = l.size() * l.height().max(1) + 1;
        let mut current = self.clone();
        for _ in 0..cap {
            let next = combine(self, &self.compose(&current)?)?;
            if next.values == current.values {
                return Ok(next);
            }
            current = next;
        }
        Err(AlgebraError::Internal(format!(
            "fixed-point iteration exceeded {cap} rounds"
        )))
    }

    /// Renders the map as `x ↦ f(x)` lines.
    pub fn table(&self) -> Vec<(String, String)> {
        self.lattice
            .elements()
            .map(|x| (self.lattice.name(x), self.lattice.name(self.apply(x))))
            .collect()
    }
}

/// A Galois connection `left ⊣ right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointPair {
    pub(crate) left: LatticeMap,
    pub(crate) right: LatticeMap,
}

impl AdjointPair {
    /// Pairs two maps after checking the adjunction exhaustively.
    pub fn new(left: LatticeMap, right: LatticeMap) -> Result<Self> {
        let left = left.into_join_preserving()?;
        let right = right.into_meet_preserving()?;
        let pair = AdjointPair { left, right };
        pair.check()?;
        Ok(pair)
    }

    pub fn left(&self) -> &LatticeMap {
        &self.left
    }

    pub fn right(&self) -> &LatticeMap {
        &self.right
    }

    fn check(&self) -> Result<()> {
        verify_adjunction(&self.left, &self.right)?.map_err(|w| {
            let l = self.left.lattice();
            AlgebraError::Internal(format!(
                "computed adjoint fails the adjunction at ({}, {})",
                l.name(w.b),
                l.name(w.b_prime)
            ))
        })
    }
}

/// Exhaustive check of `f(b) ≤ b'  ⟺  b ≤ g(b')` over all pairs.
pub fn verify_adjunction(
    f: &LatticeMap,
    g: &LatticeMap,
) -> Result<std::result::Result<(), AdjunctionFailure>> {
    f.ensure_same(g)?;
    let l = f.lattice();
    for b in l.elements() {
        let fb = f.apply(b);
        for b_prime in l.elements() {
            if l.leq(fb, b_prime) != l.leq(b, g.apply(b_prime)) {
                return Ok(Err(AdjunctionFailure { b, b_prime }));
            }
        }
    }
    Ok(Ok(()))
}

/// Checks `f*(b) = ¬g*(¬b)` on a Boolean carrier, where `g` is the de Morgan
/// dual of `f` and `g*` its left adjoint.
pub fn check_demorgan_lift(f: &LatticeMap) -> Result<std::result::Result<(), LiftMismatch>> {
    let l = f.lattice().clone();
    if !l.is_boolean() {
        return Err(AlgebraError::NotBoolean);
    }
    let f_star = f.right_adjoint()?.right;
    let g_star = f.de_morgan_dual()?.left_adjoint()?.left;
    let neg = |x: Elem| l.complement(x).expect("Boolean lattice");
    Ok(lift_mismatch(&l, &f_star, |b| neg(g_star.apply(neg(b)))))
}

/// The same comparison on a distributive carrier with Heyting negation.
///
/// `g` is built as `b ↦ ¬f(¬b)` and `g*` from its defining meet formula even
/// when `g` fails to preserve meets, so a mismatch is a witness that the
/// duality does not lift without an involutive negation.
pub fn check_demorgan_lift_heyting(
    f: &LatticeMap,
) -> Result<std::result::Result<(), LiftMismatch>> {
    let l = f.lattice().clone();
    let f_star = f.right_adjoint()?.right;
    let neg = |x: Elem| l.heyting_negation(x);
    let mut g = Vec::with_capacity(l.size());
    for b in l.elements() {
        g.push(neg(f.apply(neg(b)?))?);
    }
    let g_star: Vec<Elem> = l
        .elements()
        .map(|b| l.meet_all(l.elements().filter(|&b2| l.leq(b, g[b2.index()]))))
        .collect();
    let mut negated = Vec::with_capacity(l.size());
    for b in l.elements() {
        negated.push(neg(g_star[neg(b)?.index()])?);
    }
    Ok(lift_mismatch(&l, &f_star, |b| negated[b.index()]))
}

fn lift_mismatch(
    l: &FiniteLattice,
    f_star: &LatticeMap,
    other: impl Fn(Elem) -> Elem,
) -> std::result::Result<(), LiftMismatch> {
    for b in l.elements() {
        let (lhs, rhs) = (f_star.apply(b), other(b));
        if lhs != rhs {
            return Err(LiftMismatch {
                at: b,
                right_adjoint: lhs,
                negated_dual_adjoint: rhs,
            });
        }
    }
    Ok(())
}

impl fmt::Display for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.table();
        let width = rows
            .iter()
            .map(|(x, _)| x.chars().count())
            .max()
            .unwrap_or(0);
        for (x, y) in rows {
            writeln!(f, "{x:<width$}  ↦  {y}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin() -> (Arc<FiniteLattice>, LatticeMap) {
        let l = Arc::new(FiniteLattice::powerset(&["h", "t"]).unwrap());
        let (h, t) = (l.world_set(&["h"]).unwrap(), l.world_set(&["t"]).unwrap());
        let f = LatticeMap::from_generators(&l, &[(h, l.top()), (t, l.top())]).unwrap();
        (l, f)
    }

    fn honest() -> (Arc<FiniteLattice>, LatticeMap) {
        let l = Arc::new(FiniteLattice::powerset(&["h0", "t0", "h1"]).unwrap());
        let w = |n: &str| l.world_set(&[n]).unwrap();
        let f = LatticeMap::from_generators(
            &l,
            &[
                (w("h0"), w("h1")),
                (w("t0"), l.bottom()),
                (w("h1"), l.bottom()),
            ],
        )
        .unwrap();
        (l, f)
    }

    /// Right adjoint straight from the defining join, kept apart from the
    /// implementation so the two can be compared.
    fn oracle_right(f: &LatticeMap) -> Vec<Elem> {
        let l = f.lattice();
        let mut out = Vec::new();
        for b in l.elements() {
            let mut acc = l.bottom();
            for b2 in l.elements() {
                if l.leq(f.apply(b2), b) {
                    acc = l.join(acc, b2);
                }
            }
            out.push(acc);
        }
        out
    }

    #[test]
    fn generator_extension() {
        let (l, f) = coin();
        assert_eq!(f.apply(l.top()), l.top());
        assert_eq!(f.apply(l.bottom()), l.bottom());
        assert_eq!(
            LatticeMap::from_generators(
                &l,
                &[(Elem::new(1), Elem::new(1)), (Elem::new(2), Elem::new(2))]
            )
            .unwrap(),
            LatticeMap::identity(&l)
        );

        let (l, h) = honest();
        let w = |n: &str| l.world_set(&[n]).unwrap();
        assert_eq!(h.apply(l.world_set(&["h0", "t0"]).unwrap()), w("h1"));
        assert_eq!(h.apply(l.top()), w("h1"));
        assert!(h.validate_join_preserving().is_ok());
    }

    #[test]
    fn generator_errors() {
        let (l, _) = coin();
        assert_eq!(
            LatticeMap::from_generators(&l, &[(Elem::new(1), l.top())]),
            Err(AlgebraError::MissingGenerator("{t}".into()))
        );
        assert!(matches!(
            LatticeMap::from_generators(&l, &[(l.top(), l.top())]),
            Err(AlgebraError::NotJoinIrreducible(_))
        ));
        assert_eq!(
            LatticeMap::from_generators(&l, &[(Elem::new(9), l.top())]),
            Err(AlgebraError::ForeignElement(9))
        );
    }

    #[test]
    fn join_preservation_verdicts() {
        let (l, _) = coin();
        let (h, t) = (Elem::new(1), Elem::new(2));
        let bad = LatticeMap::from_table(&l, vec![l.bottom(), l.top(), l.top(), h]).unwrap();
        assert_eq!(
            bad.validate_join_preserving(),
            Err(PreservationFailure::Pair { a: h, b: t })
        );
        assert!(LatticeMap::constant(&l, l.bottom())
            .unwrap()
            .validate_join_preserving()
            .is_ok());
        assert!(matches!(
            bad.right_adjoint(),
            Err(AlgebraError::NotJoinPreserving(_))
        ));
    }

    #[test]
    fn coin_right_adjoint() {
        let (l, f) = coin();
        let pair = f.right_adjoint().unwrap();
        let expected = vec![l.bottom(), l.bottom(), l.bottom(), l.top()];
        assert_eq!(oracle_right(&f), expected);
        assert_eq!(pair.right().values(), expected.as_slice());
        assert!(verify_adjunction(&f, pair.right()).unwrap().is_ok());

        let id = LatticeMap::identity(&l);
        assert_eq!(id.right_adjoint().unwrap().right().values(), id.values());
    }

    #[test]
    fn honest_right_adjoint() {
        let (l, h) = honest();
        let h1 = l.world_set(&["h1"]).unwrap();
        let star = h.right_adjoint().unwrap();
        assert_eq!(oracle_right(&h)[h1.index()], l.top());
        assert_eq!(star.right().apply(h1), l.top());
    }

    #[test]
    fn left_adjoints() {
        let (l, f) = coin();
        let g = f.de_morgan_dual().unwrap();
        assert_eq!(g.values(), &[l.bottom(), l.bottom(), l.bottom(), l.top()]);
        let pair = g.left_adjoint().unwrap();
        assert_eq!(pair.left().apply(Elem::new(1)), l.top());
        assert_eq!(pair.left().apply(l.bottom()), l.bottom());

        let top = LatticeMap::constant(&l, l.top()).unwrap();
        assert_eq!(
            top.left_adjoint().unwrap().left(),
            &LatticeMap::constant(&l, l.bottom()).unwrap()
        );
        let id = LatticeMap::identity(&l);
        assert_eq!(id.left_adjoint().unwrap().left(), &id);
    }

    #[test]
    fn dual_requires_boolean() {
        let l = Arc::new(crate::lattice::tests::chain3());
        let id = LatticeMap::identity(&l);
        assert_eq!(id.de_morgan_dual(), Err(AlgebraError::NotBoolean));
        let (l, _) = coin();
        let id = LatticeMap::identity(&l);
        assert_eq!(id.de_morgan_dual().unwrap(), id);
    }

    #[test]
    fn adjunction_counterexample() {
        let (l, f) = coin();
        let id = LatticeMap::identity(&l);
        let h = Elem::new(1);
        // Scan order visits ⊥ first; ({h},{h}) is the first failing pair with
        // b ≠ ⊥, and ⊥ never fails since f(⊥) = ⊥ ≤ anything and ⊥ ≤ anything.
        assert_eq!(
            verify_adjunction(&f, &id).unwrap(),
            Err(AdjunctionFailure { b: h, b_prime: h })
        );
        assert!(verify_adjunction(&id, &id).unwrap().is_ok());
    }

    #[test]
    fn composition_and_powers() {
        let (l, f) = coin();
        let id = LatticeMap::identity(&l);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&f).unwrap(), f);
        assert_eq!(f.pointwise_join(&f).unwrap(), f);
        assert_eq!(f.power(0), id);
        assert_eq!(f.power(2), f);

        let (l, h) = honest();
        let h0 = l.world_set(&["h0"]).unwrap();
        assert_eq!(h.power(2).apply(h0), l.bottom());

        let other = Arc::new(FiniteLattice::powerset(&["x", "y"]).unwrap());
        let foreign = LatticeMap::identity(&other);
        // Structurally different world names make a different lattice.
        assert_eq!(h.compose(&foreign), Err(AlgebraError::LatticeMismatch));
    }

    #[test]
    fn fixed_points() {
        let (l, f) = coin();
        assert_eq!(f.lfp_join().unwrap(), f);
        let id = LatticeMap::identity(&l);
        assert_eq!(id.lfp_join().unwrap(), id);
        let star = f.right_adjoint().unwrap().right;
        assert!(
            verify_adjunction(&f.lfp_join().unwrap(), &star.gfp_meet().unwrap())
                .unwrap()
                .is_ok()
        );

        let (l, h) = honest();
        let h0 = l.world_set(&["h0"]).unwrap();
        let h1 = l.world_set(&["h1"]).unwrap();
        assert_eq!(h.lfp_join().unwrap().apply(h0), h1);
        assert_eq!(h.lfp_join_reflexive().unwrap().apply(h0), l.join(h0, h1));
        let hs = h.right_adjoint().unwrap().right;
        assert!(
            verify_adjunction(&h.lfp_join().unwrap(), &hs.gfp_meet().unwrap())
                .unwrap()
                .is_ok()
        );
        assert!(verify_adjunction(
            &h.lfp_join_reflexive().unwrap(),
            &hs.gfp_meet_reflexive().unwrap()
        )
        .unwrap()
        .is_ok());
    }

    #[test]
    fn demorgan_lift() {
        let (l, f) = coin();
        assert!(check_demorgan_lift(&f).unwrap().is_ok());
        assert!(check_demorgan_lift(&LatticeMap::identity(&l))
            .unwrap()
            .is_ok());
        let c = Arc::new(crate::lattice::tests::chain3());
        assert_eq!(
            check_demorgan_lift(&LatticeMap::identity(&c)),
            Err(AlgebraError::NotBoolean)
        );
    }

    #[test]
    fn heyting_lift_witness_on_chain() {
        let c = Arc::new(crate::lattice::tests::chain3());
        let m = c.find("m").unwrap();
        let id = LatticeMap::identity(&c);
        let w = check_demorgan_lift_heyting(&id).unwrap().unwrap_err();
        assert_eq!(w.at, m);
        assert_eq!(w.right_adjoint, m);
        assert_eq!(w.negated_dual_adjoint, c.top());
    }
}
