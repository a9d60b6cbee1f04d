//! Actions under choice and sequencing: finite sets of words over the action
//! labels, truncated at a fixed word length.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{AlgebraError, Result};

pub const DEFAULT_WORD_BOUND: usize = 3;

/// A word of generator indices; the empty word is the unit action.
pub type Word = Vec<usize>;

/// A quantale element: a finite set of words.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QElem(BTreeSet<Word>);

impl QElem {
    pub fn zero() -> Self {
        QElem(BTreeSet::new())
    }

    pub fn unit() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        QElem(BTreeSet::from([w]))
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        QElem(words.into_iter().collect())
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &[usize]) -> bool {
        self.0.contains(w)
    }

    pub fn join(&self, other: &QElem) -> QElem {
        QElem(self.0.union(&other.0).cloned().collect())
    }

    pub fn leq(&self, other: &QElem) -> bool {
        self.0.is_subset(&other.0)
    }

    fn max_len(&self) -> usize {
        self.0.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// The bounded quantale over a list of generator labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionQuantale {
    generators: Vec<String>,
    bound: usize,
}

impl ActionQuantale {
    pub fn new<S: AsRef<str>>(generators: &[S], max_word_length: usize) -> Result<Self> {
        if max_word_length == 0 {
            return Err(AlgebraError::ZeroWordBound);
        }
        let generators: Vec<String> = generators.iter().map(|g| g.as_ref().to_string()).collect();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(AlgebraError::DuplicateAction(g.clone()));
            }
        }
        Ok(ActionQuantale {
            generators,
            bound: max_word_length,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn letter(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| AlgebraError::UnknownAction(name.to_string()))
    }

    /// Parses a word of generator names.
    pub fn word<S: AsRef<str>>(&self, letters: &[S]) -> Result<QElem> {
        let w = letters
            .iter()
            .map(|l| self.letter(l.as_ref()))
            .collect::<Result<Word>>()?;
        self.check_word(&w)?;
        Ok(QElem::word(w))
    }

    fn check_word(&self, w: &[usize]) -> Result<()> {
        if w.len() > self.bound {
            return Err(AlgebraError::WordLengthExceeded {
                length: w.len(),
                bound: self.bound,
            });
        }
        if let Some(&bad) = w.iter().find(|&&g| g >= self.generators.len()) {
            return Err(AlgebraError::UnknownAction(format!("#{bad}")));
        }
        Ok(())
    }

    pub fn check(&self, x: &QElem) -> Result<()> {
        x.words().try_for_each(|w| self.check_word(w))
    }

    /// Pairwise concatenation; fails instead of truncating.
    pub fn compose(&self, x: &QElem, y: &QElem) -> Result<QElem> {
        let mut out = BTreeSet::new();
        for u in x.words() {
            for v in y.words() {
                let length = u.len() + v.len();
                if length > self.bound {
                    return Err(AlgebraError::WordLengthExceeded {
                        length,
                        bound: self.bound,
                    });
                }
                out.insert(u.iter().chain(v).copied().collect());
            }
        }
        Ok(QElem(out))
    }

    /// Every word of length at most the bound, shortest first.
    pub fn all_words(&self) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..self.bound {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..self.generators.len()).map(move |g| {
                        let mut next = w.clone();
                        next.push(g);
                        next
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    pub fn display(&self, x: &QElem) -> String {
        let words: Vec<String> = x
            .words()
            .map(|w| {
                if w.is_empty() {
                    "ε".to_string()
                } else {
                    w.iter()
                        .map(|&g| self.generators[g].as_str())
                        .collect::<Vec<_>>()
                        .join("·")
                }
            })
            .collect();
        format!("{{{}}}", words.join(", "))
    }

    /// Associativity, unit and distributivity over all words within the bound.
    pub fn check_laws(&self) -> Vec<QuantaleViolation> {
        let words = self.all_words();
        let mut out = Vec::new();
        let single = |w: &Word| QElem::word(w.clone());
        for u in &words {
            let x = single(u);
            if self.compose(&QElem::unit(), &x).ok() != Some(x.clone())
                || self.compose(&x, &QElem::unit()).ok() != Some(x.clone())
            {
                out.push(QuantaleViolation::UnitLaw {
                    at: self.display(&x),
                });
            }
            for v in &words {
                for w in &words {
                    if u.len() + v.len() + w.len() <= self.bound {
                        let (y, z) = (single(v), single(w));
                        let left = self.compose(&x, &y).and_then(|xy| self.compose(&xy, &z));
                        let right = self.compose(&y, &z).and_then(|yz| self.compose(&x, &yz));
                        if left != right {
                            out.push(QuantaleViolation::Associativity {
                                x: self.display(&x),
                                y: self.display(&y),
                                z: self.display(&z),
                            });
                        }
                    }
                    if u.len() + v.len().max(w.len()) <= self.bound {
                        let yz = single(v).join(&single(w));
                        let left = self.compose(&x, &yz);
                        let right = self
                            .compose(&x, &single(v))
                            .and_then(|a| Ok(a.join(&self.compose(&x, &single(w))?)));
                        let left_r = self.compose(&yz, &x);
                        let right_r = self
                            .compose(&single(v), &x)
                            .and_then(|a| Ok(a.join(&self.compose(&single(w), &x)?)));
                        if left != right || left_r != right_r {
                            out.push(QuantaleViolation::Distributivity {
                                x: self.display(&x),
                                y: self.display(&yz),
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// The agent's view of composite actions: letterwise by default, with
/// optional per-word overrides (an override for the empty word redefines `f'(1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    letters: Vec<usize>,
    overrides: BTreeMap<Word, QElem>,
}

impl Lift {
    pub fn letterwise(letters: Vec<usize>) -> Self {
        Lift {
            letters,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, word: Word, image: QElem) -> Self {
        self.overrides.insert(word, image);
        self
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn image_of_word(&self, w: &[usize]) -> QElem {
        match self.overrides.get(w) {
            Some(image) => image.clone(),
            None => QElem::word(w.iter().map(|&g| self.letters[g]).collect()),
        }
    }

    pub fn apply(&self, x: &QElem) -> QElem {
        x.words()
            .fold(QElem::zero(), |acc, w| acc.join(&self.image_of_word(w)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantaleViolation {
    UnitLaw {
        at: String,
    },
    Associativity {
        x: String,
        y: String,
        z: String,
    },
    Distributivity {
        x: String,
        y: String,
    },
    EmptyNotPreserved {
        agent: String,
        image: String,
    },
    JoinNotPreserved {
        agent: String,
        x: String,
        y: String,
    },
    UnitNotBelow {
        agent: String,
        image: String,
    },
    UnitNotEqual {
        agent: String,
        image: String,
    },
    CompositionNotLax {
        agent: String,
        x: String,
        y: String,
        lhs: String,
        rhs: String,
    },
    CompositionNotEqual {
        agent: String,
        x: String,
        y: String,
        lhs: String,
        rhs: String,
    },
}

impl fmt::Display for QuantaleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use QuantaleViolation::*;
        match self {
            UnitLaw { at } => write!(f, "unit law fails at {at}"),
            Associativity { x, y, z } => write!(f, "composition not associative on {x}, {y}, {z}"),
            Distributivity { x, y } => {
                write!(f, "composition with {x} does not distribute over {y}")
            }
            EmptyNotPreserved { agent, image } => {
                write!(f, "lift of {agent} maps the empty choice to {image}")
            }
            JoinNotPreserved { agent, x, y } => write!(
                f,
                "lift of {agent} does not preserve the join of {x} and {y}"
            ),
            UnitNotBelow { agent, image } => write!(f, "1 is not below f'_{agent}(1) = {image}"),
            UnitNotEqual { agent, image } => write!(f, "f'_{agent}(1) = {image} differs from 1"),
            CompositionNotLax {
                agent,
                x,
                y,
                lhs,
                rhs,
            } => {
                write!(f, "f'_{agent}({x}•{y}) = {lhs} is not below f'_{agent}({x})•f'_{agent}({y}) = {rhs}")
            }
            CompositionNotEqual {
                agent,
                x,
                y,
                lhs,
                rhs,
            } => {
                write!(f, "f'_{agent}({x}•{y}) = {lhs} differs from f'_{agent}({x})•f'_{agent}({y}) = {rhs}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuantaleReport {
    pub violations: Vec<QuantaleViolation>,
    /// Composable pairs whose lifted composite leaves the word bound.
    pub skipped_pairs: usize,
    pub non_paranoid: bool,
}

impl QuantaleReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl ActionQuantale {
    /// Quantale laws plus, for each named lift, join preservation,
    /// `1 ≤ f'(1)` and `f'(x•y) ≤ f'(x)•f'(y)` (equalities when `non_paranoid`).
    pub fn check_epistemic_quantale(
        &self,
        lifts: &[(String, Lift)],
        non_paranoid: bool,
    ) -> QuantaleReport {
        let mut report = QuantaleReport {
            violations: self.check_laws(),
            non_paranoid,
            ..QuantaleReport::default()
        };
        for (agent, lift) in lifts {
            self.check_lift(agent, &|x| lift.apply(x), non_paranoid, &mut report);
        }
        report
    }

    /// The lift laws for an arbitrary map on quantale elements.
    pub fn check_lift(
        &self,
        agent: &str,
        f: &dyn Fn(&QElem) -> QElem,
        non_paranoid: bool,
        report: &mut QuantaleReport,
    ) {
        let words = self.all_words();
        let agent = agent.to_string();
        let empty = f(&QElem::zero());
        if !empty.is_empty() {
            report
                .violations
                .push(QuantaleViolation::EmptyNotPreserved {
                    agent: agent.clone(),
                    image: self.display(&empty),
                });
        }
        let unit = QElem::unit();
        let f_unit = f(&unit);
        if !unit.leq(&f_unit) {
            report.violations.push(QuantaleViolation::UnitNotBelow {
                agent: agent.clone(),
                image: self.display(&f_unit),
            });
        } else if non_paranoid && f_unit != unit {
            report.violations.push(QuantaleViolation::UnitNotEqual {
                agent: agent.clone(),
                image: self.display(&f_unit),
            });
        }
        for u in &words {
            let x = QElem::word(u.clone());
            let fx = f(&x);
            for v in &words {
                let y = QElem::word(v.clone());
                let fy = f(&y);
                if fx.join(&fy) != f(&x.join(&y)) {
                    report.violations.push(QuantaleViolation::JoinNotPreserved {
                        agent: agent.clone(),
                        x: self.display(&x),
                        y: self.display(&y),
                    });
                }
                if u.len() + v.len() > self.bound {
                    continue;
                }
                let lhs = self.compose(&x, &y).map(|xy| f(&xy));
                let rhs = if fx.max_len() + fy.max_len() > self.bound {
                    Err(())
                } else {
                    self.compose(&fx, &fy).map_err(|_| ())
                };
                let (Ok(lhs), Ok(rhs)) = (lhs, rhs) else {
                    report.skipped_pairs += 1;
                    continue;
                };
                if lhs.leq(&rhs) && (!non_paranoid || lhs == rhs) {
                    continue;
                }
                let lax = lhs.leq(&rhs);
                let (x, y, lhs, rhs) = (
                    self.display(&x),
                    self.display(&y),
                    self.display(&lhs),
                    self.display(&rhs),
                );
                let agent = agent.clone();
                report.violations.push(if lax {
                    QuantaleViolation::CompositionNotEqual {
                        agent,
                        x,
                        y,
                        lhs,
                        rhs,
                    }
                } else {
                    QuantaleViolation::CompositionNotLax {
                        agent,
                        x,
                        y,
                        lhs,
                        rhs,
                    }
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(bound: usize) -> ActionQuantale {
        ActionQuantale::new(&["a", "abar"], bound).unwrap()
    }

    #[test]
    fn composition_and_unit() {
        let q = q(2);
        let a = q.word(&["a"]).unwrap();
        let abar = q.word(&["abar"]).unwrap();
        assert_eq!(
            q.compose(&a, &abar).unwrap(),
            q.word(&["a", "abar"]).unwrap()
        );
        assert_eq!(q.compose(&QElem::unit(), &a).unwrap(), a);
        assert_eq!(q.compose(&QElem::zero(), &a).unwrap(), QElem::zero());
        let err = q.compose(&a, &q.word(&["a", "abar"]).unwrap()).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::WordLengthExceeded {
                length: 3,
                bound: 2
            }
        );
        assert_eq!(
            ActionQuantale::new(&["a"], 0),
            Err(AlgebraError::ZeroWordBound)
        );
        assert_eq!(
            q.display(&q.word(&["a", "abar"]).unwrap().join(&QElem::unit())),
            "{ε, a·abar}"
        );
    }

    #[test]
    fn all_words_counts() {
        assert_eq!(q(3).all_words().len(), 1 + 2 + 4 + 8);
        assert!(q(3).check_laws().is_empty());
    }

    #[test]
    fn letterwise_lift() {
        let q = q(2);
        let lift = Lift::letterwise(vec![0, 0]);
        let w = q.word(&["abar", "abar"]).unwrap();
        assert_eq!(lift.apply(&w), q.word(&["a", "a"]).unwrap());
        let report = q.check_epistemic_quantale(&[("A".into(), lift)], true);
        assert!(report.passes(), "{report:?}");
        assert_eq!(report.skipped_pairs, 0);
    }

    #[test]
    fn unit_overrides() {
        let q = q(2);
        let loose = Lift::letterwise(vec![0, 1])
            .with_override(vec![], QElem::from_words([vec![], vec![0]]));
        let lax = q.check_epistemic_quantale(&[("A".into(), loose.clone())], false);
        assert!(!lax
            .violations
            .iter()
            .any(|v| matches!(v, QuantaleViolation::UnitNotBelow { .. })));
        let strict = q.check_epistemic_quantale(&[("A".into(), loose)], true);
        assert!(strict
            .violations
            .iter()
            .any(|v| matches!(v, QuantaleViolation::UnitNotEqual { .. })));

        let broken = Lift::letterwise(vec![0, 1]).with_override(vec![], QElem::word(vec![0]));
        let report = q.check_epistemic_quantale(&[("A".into(), broken)], false);
        assert!(report
            .violations
            .contains(&QuantaleViolation::UnitNotBelow {
                agent: "A".into(),
                image: "{a}".into()
            }));
    }
}
