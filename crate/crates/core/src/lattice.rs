//! Finite complete lattices.
//!
//! Two carriers are supported. Explicit posets keep a dense order matrix with
//! join and meet tables computed once at build time. Powersets of a world list
//! are represented by bitmasks, where the order and the lattice operations are
//! bitwise and need no tables.

use std::collections::HashMap;
use std::fmt;

use crate::error::{AlgebraError, Result};

/// Environment variable overriding [`Limits::max_cells`].
pub const MAX_LATTICE_ENV: &str = "ADJOINT_KIT_MAX_LATTICE";

/// Dense element index, `0..size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(usize);

impl Elem {
    pub const fn new(index: usize) -> Self {
        Elem(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Size caps applied at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of order-table cells (elements squared) for explicit posets.
    pub max_cells: usize,
    /// Maximum number of worlds for powerset carriers.
    pub max_worlds: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cells: 1 << 16,
            max_worlds: 16,
        }
    }
}

impl Limits {
    /// Defaults, with `max_cells` taken from `ADJOINT_KIT_MAX_LATTICE` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cells) = std::env::var(MAX_LATTICE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.max_cells = cells;
        }
        limits
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Table {
        leq: Vec<bool>,
        join: Vec<Elem>,
        meet: Vec<Elem>,
    },
    Powerset {
        worlds: Vec<String>,
    },
}

/// A validated finite lattice. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    size: usize,
    labels: Vec<String>,
    repr: Repr,
    bottom: Elem,
    top: Elem,
    distributive: bool,
    boolean: bool,
    complement: Option<Vec<Elem>>,
    irreducibles: Vec<Elem>,
    height: usize,
}

/// Result of [`FiniteLattice::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_distributive: bool,
    pub is_boolean: bool,
    pub complement_table: Option<Vec<Elem>>,
}

impl FiniteLattice {
    /// Builds a lattice from labels and generating order pairs `(lower, upper)`.
    ///
    /// The pairs are closed reflexively and transitively before validation.
    pub fn build_from_order<S: AsRef<str>>(labels: &[S], leq_pairs: &[(S, S)]) -> Result<Self> {
        Self::build_from_order_with(labels, leq_pairs, Limits::from_env())
    }

    pub fn build_from_order_with<S: AsRef<str>>(
        labels: &[S],
        leq_pairs: &[(S, S)],
        limits: Limits,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if n.saturating_mul(n) > limits.max_cells {
            return Err(AlgebraError::LatticeTooLarge {
                elements: n,
                max_cells: limits.max_cells,
            });
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| AlgebraError::UnknownLabel(s.to_string()))
        };

        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in leq_pairs {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(AlgebraError::NotAPoset(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }

        // Elements sorted by the number of elements below them form a linear
        // extension; the first upper bound in that order is the only candidate
        // for a least one.
        let below_count: Vec<usize> = (0..n)
            .map(|i| (0..n).filter(|&j| leq[j * n + i]).count())
            .collect();
        let mut ascending: Vec<usize> = (0..n).collect();
        ascending.sort_by_key(|&i| (below_count[i], i));
        let mut descending = ascending.clone();
        descending.reverse();

        let mut join = vec![Elem(0); n * n];
        let mut meet = vec![Elem(0); n * n];
        for a in 0..n {
            for b in a..n {
                let lub = bound(
                    &ascending,
                    n,
                    |c| leq[a * n + c] && leq[b * n + c],
                    |x, y| leq[x * n + y],
                );
                let glb = bound(
                    &descending,
                    n,
                    |c| leq[c * n + a] && leq[c * n + b],
                    |x, y| leq[y * n + x],
                );
                let lub = lub.ok_or_else(|| AlgebraError::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    missing: "join",
                })?;
                let glb = glb.ok_or_else(|| AlgebraError::NotALattice {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                    missing: "meet",
                })?;
                join[a * n + b] = Elem(lub);
                join[b * n + a] = Elem(lub);
                meet[a * n + b] = Elem(glb);
                meet[b * n + a] = Elem(glb);
            }
        }
        let bottom = Elem(ascending[0]);
        let top = Elem(descending[0]);
        if (0..n).any(|i| !leq[bottom.0 * n + i] || !leq[i * n + top.0]) {
            return Err(AlgebraError::Internal("lattice without bounds".into()));
        }

        let mut lattice = FiniteLattice {
            size: n,
            labels,
            repr: Repr::Table { leq, join, meet },
            bottom,
            top,
            distributive: false,
            boolean: false,
            complement: None,
            irreducibles: Vec::new(),
            height: 0,
        };
        let class = lattice.compute_classification();
        lattice.distributive = class.is_distributive;
        lattice.boolean = class.is_boolean;
        lattice.complement = class.complement_table;
        lattice.irreducibles = lattice.compute_irreducibles();
        lattice.height = lattice.compute_height(&ascending);
        Ok(lattice)
    }

    /// The Boolean lattice of all subsets of `worlds`.
    pub fn powerset<S: AsRef<str>>(worlds: &[S]) -> Result<Self> {
        Self::powerset_with(worlds, Limits::from_env())
    }

    pub fn powerset_with<S: AsRef<str>>(worlds: &[S], limits: Limits) -> Result<Self> {
        if worlds.len() > limits.max_worlds {
            return Err(AlgebraError::TooManyWorlds {
                worlds: worlds.len(),
                max: limits.max_worlds,
            });
        }
        let worlds: Vec<String> = worlds.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, w) in worlds.iter().enumerate() {
            if worlds[..i].contains(w) {
                return Err(AlgebraError::DuplicateLabel(w.clone()));
            }
        }
        let size = 1usize << worlds.len();
        let irreducibles = (0..worlds.len()).map(|i| Elem(1 << i)).collect();
        let height = worlds.len();
        Ok(FiniteLattice {
            size,
            labels: Vec::new(),
            repr: Repr::Powerset { worlds },
            bottom: Elem(0),
            top: Elem(size - 1),
            distributive: true,
            boolean: true,
            complement: None,
            irreducibles,
            height,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (0..self.size).map(Elem)
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.size
    }

    pub fn check(&self, e: Elem) -> Result<Elem> {
        if self.contains(e) {
            Ok(e)
        } else {
            Err(AlgebraError::ForeignElement(e.0))
        }
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        match &self.repr {
            Repr::Table { leq, .. } => leq[a.0 * self.size + b.0],
            Repr::Powerset { .. } => a.0 & !b.0 == 0,
        }
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        match &self.repr {
            Repr::Table { join, .. } => join[a.0 * self.size + b.0],
            Repr::Powerset { .. } => Elem(a.0 | b.0),
        }
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        match &self.repr {
            Repr::Table { meet, .. } => meet[a.0 * self.size + b.0],
            Repr::Powerset { .. } => Elem(a.0 & b.0),
        }
    }

    /// Join of an arbitrary family; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary family; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Checked join of a set of elements.
    pub fn join_of(&self, items: &[Elem]) -> Result<Elem> {
        for &e in items {
            self.check(e)?;
        }
        Ok(self.join_all(items.iter().copied()))
    }

    /// Checked meet of a set of elements.
    pub fn meet_of(&self, items: &[Elem]) -> Result<Elem> {
        for &e in items {
            self.check(e)?;
        }
        Ok(self.meet_all(items.iter().copied()))
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean
    }

    /// Classification flags, recomputed by exhaustive scan.
    pub fn classify(&self) -> Classification {
        self.compute_classification()
    }

    /// Boolean complement, `None` on non-Boolean lattices.
    pub fn complement(&self, a: Elem) -> Option<Elem> {
        match &self.repr {
            Repr::Powerset { .. } => Some(Elem(!a.0 & self.top.0)),
            Repr::Table { .. } => self.complement.as_ref().map(|c| c[a.0]),
        }
    }

    /// Relative pseudo-complement: the largest `x` with `x ∧ a ≤ b`.
    pub fn heyting_implication(&self, a: Elem, b: Elem) -> Result<Elem> {
        if !self.distributive {
            return Err(AlgebraError::NotDistributive);
        }
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.repr {
            Repr::Powerset { .. } => Elem((!a.0 | b.0) & self.top.0),
            Repr::Table { .. } => {
                self.join_all(self.elements().filter(|&x| self.leq(self.meet(x, a), b)))
            }
        })
    }

    pub fn heyting_negation(&self, a: Elem) -> Result<Elem> {
        self.heyting_implication(a, self.bottom)
    }

    /// Nonbottom elements that are not the join of two strictly smaller elements.
    pub fn join_irreducibles(&self) -> &[Elem] {
        &self.irreducibles
    }

    pub fn is_join_irreducible(&self, e: Elem) -> bool {
        self.irreducibles.binary_search(&e).is_ok()
    }

    /// Number of edges in a longest chain from bottom to top.
    pub fn height(&self) -> usize {
        self.height
    }

    /// World names of a powerset carrier.
    pub fn worlds(&self) -> Option<&[String]> {
        match &self.repr {
            Repr::Powerset { worlds } => Some(worlds),
            Repr::Table { .. } => None,
        }
    }

    /// Element labels of an explicit poset carrier.
    pub fn labels(&self) -> Option<&[String]> {
        match &self.repr {
            Repr::Table { .. } => Some(&self.labels),
            Repr::Powerset { .. } => None,
        }
    }

    /// Powerset element holding exactly the named worlds.
    pub fn world_set<S: AsRef<str>>(&self, names: &[S]) -> Result<Elem> {
        let worlds = self.worlds().ok_or(AlgebraError::NotBoolean)?;
        let mut mask = 0usize;
        for n in names {
            let i = worlds
                .iter()
                .position(|w| w == n.as_ref())
                .ok_or_else(|| AlgebraError::UnknownLabel(n.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Ok(Elem(mask))
    }

    /// Worlds contained in a powerset element.
    pub fn members(&self, e: Elem) -> Option<Vec<&str>> {
        let worlds = self.worlds()?;
        Some(
            worlds
                .iter()
                .enumerate()
                .filter(|(i, _)| e.0 & (1 << i) != 0)
                .map(|(_, w)| w.as_str())
                .collect(),
        )
    }

    /// Element by label (explicit posets) or by single world name (powersets).
    pub fn find(&self, name: &str) -> Option<Elem> {
        match &self.repr {
            Repr::Table { .. } => self.labels.iter().position(|l| l == name).map(Elem),
            Repr::Powerset { worlds } => {
                worlds.iter().position(|w| w == name).map(|i| Elem(1 << i))
            }
        }
    }

    /// Human-readable name: the label, or `{w1,w2}` for powerset elements.
    pub fn name(&self, e: Elem) -> String {
        match &self.repr {
            Repr::Table { .. } => self
                .labels
                .get(e.0)
                .cloned()
                .unwrap_or_else(|| format!("#{}", e.0)),
            Repr::Powerset { .. } => {
                let members = self.members(e).unwrap_or_default();
                format!("{{{}}}", members.join(","))
            }
        }
    }

    fn compute_classification(&self) -> Classification {
        if let Repr::Powerset { .. } = self.repr {
            return Classification {
                is_distributive: true,
                is_boolean: true,
                complement_table: Some(self.elements().map(|e| Elem(!e.0 & self.top.0)).collect()),
            };
        }
        let els: Vec<Elem> = self.elements().collect();
        let distributive = els.iter().all(|&x| {
            els.iter().all(|&y| {
                els.iter().all(|&z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        });
        if !distributive {
            return Classification {
                is_distributive: false,
                is_boolean: false,
                complement_table: None,
            };
        }
        // Complements are unique in a distributive lattice.
        let complement: Option<Vec<Elem>> = els
            .iter()
            .map(|&x| {
                els.iter()
                    .copied()
                    .find(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
            })
            .collect();
        Classification {
            is_distributive: true,
            is_boolean: complement.is_some(),
            complement_table: complement,
        }
    }

    fn compute_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&x| {
                x != self.bottom
                    && self.join_all(self.elements().filter(|&y| y != x && self.leq(y, x))) != x
            })
            .collect()
    }

    fn compute_height(&self, ascending: &[usize]) -> usize {
        let mut h = vec![0usize; self.size];
        for (pos, &x) in ascending.iter().enumerate() {
            for &y in &ascending[..pos] {
                if self.leq(Elem(y), Elem(x)) && y != x {
                    h[x] = h[x].max(h[y] + 1);
                }
            }
        }
        h[self.top.0]
    }
}

/// First element in `order` satisfying `is_bound` that is below every other bound.
fn bound(
    order: &[usize],
    n: usize,
    is_bound: impl Fn(usize) -> bool,
    below: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let candidate = order.iter().copied().find(|&c| is_bound(c))?;
    (0..n)
        .filter(|&c| is_bound(c))
        .all(|c| below(candidate, c))
        .then_some(candidate)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn diamond() -> FiniteLattice {
        FiniteLattice::build_from_order(
            &["bot", "H", "T", "top"],
            &[("bot", "H"), ("bot", "T"), ("H", "top"), ("T", "top")],
        )
        .unwrap()
    }

    pub(crate) fn chain3() -> FiniteLattice {
        FiniteLattice::build_from_order(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap()
    }

    fn m3() -> FiniteLattice {
        FiniteLattice::build_from_order(
            &["0", "a", "b", "c", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        )
        .unwrap()
    }

    fn n5() -> FiniteLattice {
        FiniteLattice::build_from_order(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap()
    }

    /// Distributivity by brute force over all triples, independent of the
    /// classification code path.
    fn brute_distributive(l: &FiniteLattice) -> bool {
        let e: Vec<Elem> = l.elements().collect();
        for &x in &e {
            for &y in &e {
                for &z in &e {
                    if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn diamond_bounds() {
        let l = diamond();
        assert_eq!(l.size(), 4);
        assert_eq!(l.name(l.bottom()), "bot");
        assert_eq!(l.name(l.top()), "top");
        let h = l.find("H").unwrap();
        let t = l.find("T").unwrap();
        assert_eq!(l.join(h, t), l.top());
        assert_eq!(l.meet(h, t), l.bottom());
        assert!(l.is_boolean());
    }

    #[test]
    fn two_chain() {
        let l = FiniteLattice::build_from_order(&["bot", "top"], &[("bot", "top")]).unwrap();
        assert_eq!(l.size(), 2);
        assert_ne!(l.bottom(), l.top());
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let pairs: [(&str, &str); 0] = [];
        let err = FiniteLattice::build_from_order(&["a", "b"], &pairs).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::NotALattice {
                a: "a".into(),
                b: "b".into(),
                missing: "join"
            }
        );
    }

    #[test]
    fn cycle_is_not_a_poset() {
        let err =
            FiniteLattice::build_from_order(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAPoset(..)));
    }

    #[test]
    fn size_cap_applies_to_tables() {
        let labels: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let pairs: Vec<(String, String)> = (0..4)
            .map(|i| (i.to_string(), (i + 1).to_string()))
            .collect();
        let limits = Limits {
            max_cells: 16,
            max_worlds: 16,
        };
        assert!(matches!(
            FiniteLattice::build_from_order_with(&labels, &pairs, limits),
            Err(AlgebraError::LatticeTooLarge { .. })
        ));
    }

    #[test]
    fn powerset_shapes() {
        let l = FiniteLattice::powerset(&["h", "t"]).unwrap();
        assert_eq!(l.size(), 4);
        assert!(l.is_boolean());
        let h = l.world_set(&["h"]).unwrap();
        let t = l.world_set(&["t"]).unwrap();
        assert_eq!(l.complement(h), Some(t));
        assert_eq!(l.join_of(&[h, t]).unwrap(), l.top());

        let empty: [&str; 0] = [];
        let l0 = FiniteLattice::powerset(&empty).unwrap();
        assert_eq!(l0.size(), 1);
        assert_eq!(l0.bottom(), l0.top());

        assert_eq!(
            FiniteLattice::powerset(&["h0", "t0", "h1"]).unwrap().size(),
            8
        );
    }

    #[test]
    fn too_many_worlds() {
        let worlds: Vec<String> = (0..17).map(|i| format!("w{i}")).collect();
        assert!(matches!(
            FiniteLattice::powerset(&worlds),
            Err(AlgebraError::TooManyWorlds {
                worlds: 17,
                max: 16
            })
        ));
    }

    #[test]
    fn empty_join_and_meet() {
        for l in [diamond(), FiniteLattice::powerset(&["h", "t"]).unwrap()] {
            assert_eq!(l.join_of(&[]).unwrap(), l.bottom());
            assert_eq!(l.meet_of(&[]).unwrap(), l.top());
            assert_eq!(
                l.join_of(&[Elem::new(99)]),
                Err(AlgebraError::ForeignElement(99))
            );
        }
    }

    #[test]
    fn classification_matches_brute_force() {
        for (l, expect) in [
            (m3(), false),
            (n5(), false),
            (diamond(), true),
            (chain3(), true),
        ] {
            assert_eq!(brute_distributive(&l), expect);
            assert_eq!(l.is_distributive(), expect);
        }
        assert!(!chain3().is_boolean());
    }

    #[test]
    fn heyting_on_powerset_and_chain() {
        let l = FiniteLattice::powerset(&["h", "t"]).unwrap();
        let h = l.world_set(&["h"]).unwrap();
        let t = l.world_set(&["t"]).unwrap();
        // Oracle: enumerate every x with x ∧ {h} ≤ {t}.
        let oracle = l.join_all(l.elements().filter(|&x| l.leq(l.meet(x, h), t)));
        assert_eq!(oracle, t);
        assert_eq!(l.heyting_implication(h, t).unwrap(), t);
        for a in l.elements() {
            assert_eq!(l.heyting_implication(a, a).unwrap(), l.top());
            assert_eq!(l.heyting_negation(a).unwrap(), l.complement(a).unwrap());
        }

        let c = chain3();
        let m = c.find("m").unwrap();
        let not_m = c.heyting_negation(m).unwrap();
        assert_eq!(not_m, c.bottom());
        assert_eq!(c.heyting_negation(not_m).unwrap(), c.top());
        assert!(matches!(
            m3().heyting_negation(Elem::new(1)),
            Err(AlgebraError::NotDistributive)
        ));
    }

    #[test]
    fn join_irreducibles_examples() {
        let l = FiniteLattice::powerset(&["h", "t"]).unwrap();
        assert_eq!(
            l.join_irreducibles(),
            &[l.world_set(&["h"]).unwrap(), l.world_set(&["t"]).unwrap()]
        );

        let c = chain3();
        // Oracle: x ≠ ⊥ and x = a ∨ b forces x ∈ {a, b}.
        let oracle: Vec<Elem> = c
            .elements()
            .filter(|&x| {
                x != c.bottom()
                    && c.elements()
                        .all(|a| c.elements().all(|b| c.join(a, b) != x || a == x || b == x))
            })
            .collect();
        assert_eq!(oracle, vec![c.find("m").unwrap(), c.find("1").unwrap()]);
        assert_eq!(c.join_irreducibles(), oracle.as_slice());

        let p = FiniteLattice::powerset(&["a", "b", "c"]).unwrap();
        assert_eq!(p.join_irreducibles().len(), 3);
    }

    #[test]
    fn heights() {
        assert_eq!(chain3().height(), 2);
        assert_eq!(diamond().height(), 2);
        assert_eq!(n5().height(), 3);
        assert_eq!(
            FiniteLattice::powerset(&["a", "b", "c"]).unwrap().height(),
            3
        );
    }

    #[test]
    fn env_limit_override() {
        // Only reads the variable; never sets it, since tests share the process.
        let l = Limits::from_env();
        if std::env::var(MAX_LATTICE_ENV).is_err() {
            assert_eq!(l, Limits::default());
        }
    }
}
