//! The curved t-adic category D built from a directed pair A inside B, and
//! the cyclic words underlying its reduced bar complex.
//!
//! Morphisms of D are power series a_0 + t a_1 + ... with a_0 in A and all
//! higher coefficients in B; t has degree 2, and the curvature is t times the
//! identity of every object. Everything here works with the weight-truncated
//! pieces, which are finite-dimensional: a letter is a generator of B tagged
//! with a t-weight, and a cyclic word is a closed composable chain of letters
//! with a marked leftmost slot.

use std::fmt;

use crate::cat::{AInftyCategory, GenId, ObjId};
use crate::error::CatError;

/// One tensor factor: a generator of B carrying a power of t. Its effective
/// degree is the generator degree plus twice the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub weight: u32,
    pub gen: GenId,
}

/// A closed chain of letters, stored leftmost-first: `word[0]` is the marked
/// slot x_n, `word[n]` is the first-applied letter x_0, and the target of
/// `word[0]` equals the source of `word[n]`.
pub type CyclicWord = Vec<Letter>;

#[derive(Clone, Debug)]
pub struct CurvedCategory {
    a: AInftyCategory,
    b: AInftyCategory,
    /// b-generator -> a-generator for generators lying in the directed part.
    in_a: Vec<Option<GenId>>,
    /// b-generators of the augmentation ideal of A, in enumeration order.
    aug_in_b: Vec<GenId>,
    max_weight: u32,
}

impl CurvedCategory {
    /// Assemble D from the pair A inside B, retaining t-weights up to
    /// `max_weight`. `a` must be exactly the directed subcategory of `b`:
    /// its generators embed by (name, endpoints, degree), the image consists
    /// of all upward generators plus the units, and the operations of `b`
    /// restrict to those of `a` on embedded tuples.
    pub fn build(
        a: AInftyCategory,
        b: AInftyCategory,
        max_weight: u32,
    ) -> Result<CurvedCategory, CatError> {
        b.require_unital()?;
        a.require_unital()?;
        a.require_directed()?;
        if a.object_labels() != b.object_labels() {
            return Err(CatError::NotSubcategory { reason: "object lists differ".into() });
        }
        if a.field() != b.field() {
            return Err(CatError::NotSubcategory { reason: "coefficient fields differ".into() });
        }
        let mut embed = Vec::with_capacity(a.gen_count());
        for g in a.gens() {
            let hit = b.gens().iter().position(|h| {
                h.name == g.name
                    && h.source == g.source
                    && h.target == g.target
                    && h.degree == g.degree
            });
            match hit {
                Some(i) => embed.push(i),
                None => {
                    return Err(CatError::NotSubcategory {
                        reason: format!("generator {} has no counterpart upstairs", g.name),
                    })
                }
            }
        }
        let mut in_a: Vec<Option<GenId>> = vec![None; b.gen_count()];
        for (ai, &bi) in embed.iter().enumerate() {
            in_a[bi] = Some(ai);
        }
        // units must correspond, and the directed part must be full
        for obj in 0..b.object_count() {
            let (ea, eb) = (a.unit(obj).unwrap(), b.unit(obj).unwrap());
            if in_a[eb] != Some(ea) {
                return Err(CatError::NotSubcategory {
                    reason: format!("units of object {} disagree", a.object_labels()[obj]),
                });
            }
        }
        for (id, g) in b.gens().iter().enumerate() {
            let should_survive = g.source < g.target || b.unit(g.source) == Some(id);
            if should_survive != in_a[id].is_some() {
                return Err(CatError::NotSubcategory {
                    reason: format!(
                        "generator {} of the ambient category {} the directed subcategory",
                        g.name,
                        if should_survive { "is missing from" } else { "wrongly appears in" }
                    ),
                });
            }
        }
        // operations restrict: on embedded tuples, b's outputs stay embedded
        // and agree with a's table
        for (key, comb) in b.ops() {
            let Some(akey) = key.iter().map(|&g| in_a[g]).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let mut acomb = Vec::new();
            for (out, c) in comb {
                match in_a[*out] {
                    Some(ai) => acomb.push((ai, c.clone())),
                    None => {
                        return Err(CatError::NotSubcategory {
                            reason: format!(
                                "operation on embedded inputs leaves the directed part (output {})",
                                b.gen(*out).name
                            ),
                        })
                    }
                }
            }
            acomb.sort_by_key(|(g, _)| *g);
            if a.mu(&akey).cloned().unwrap_or_default() != acomb {
                return Err(CatError::NotSubcategory {
                    reason: "operations disagree on an embedded tuple".into(),
                });
            }
        }
        for (key, comb) in a.ops() {
            let bkey: Vec<GenId> = key.iter().map(|&g| embed[g]).collect();
            if b.mu(&bkey).is_none() && !comb.is_empty() {
                return Err(CatError::NotSubcategory {
                    reason: "the subcategory has operations the ambient category lacks".into(),
                });
            }
        }
        let aug_in_b: Vec<GenId> =
            a.augmentation_ideal()?.into_iter().map(|g| embed[g]).collect();
        Ok(CurvedCategory { a, b, in_a, aug_in_b, max_weight })
    }

    /// Convenience constructor computing the directed subcategory itself.
    pub fn from_ambient(b: AInftyCategory, max_weight: u32) -> Result<CurvedCategory, CatError> {
        let a = b.directed_subcategory()?;
        Self::build(a, b, max_weight)
    }

    pub fn directed(&self) -> &AInftyCategory {
        &self.a
    }

    pub fn ambient(&self) -> &AInftyCategory {
        &self.b
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn field(&self) -> crate::scalar::Field {
        self.b.field()
    }

    /// Whether a b-generator lies in the directed subcategory.
    pub fn lies_in_directed(&self, gen: GenId) -> bool {
        self.in_a[gen].is_some()
    }

    pub fn is_unit(&self, gen: GenId) -> bool {
        self.b.is_unit(gen)
    }

    /// The curvature letter t e_j at an object.
    pub fn curvature_letter(&self, object: ObjId) -> Letter {
        Letter { weight: 1, gen: self.b.unit(object).expect("checked unital") }
    }

    pub fn effective_degree(&self, l: Letter) -> i64 {
        self.b.gen(l.gen).degree + 2 * l.weight as i64
    }

    pub fn reduced_degree(&self, l: Letter) -> i64 {
        self.effective_degree(l) - 1
    }

    /// Membership in `D_+ = A_+ + t B[[t]]`: weight-0 letters must be non-unit
    /// generators of the directed part.
    pub fn letter_in_augmentation(&self, l: Letter) -> bool {
        l.weight >= 1 || (self.lies_in_directed(l.gen) && !self.is_unit(l.gen))
    }

    /// Membership in D itself (the marked slot): weight-0 letters may be any
    /// generator of the directed part, units included.
    pub fn letter_in_curved(&self, l: Letter) -> bool {
        l.weight >= 1 || self.lies_in_directed(l.gen)
    }

    /// Degree of a cyclic word: the marked slot is unshifted, interior slots
    /// carry the `[1]` shift.
    pub fn word_degree(&self, word: &[Letter]) -> i64 {
        if word.is_empty() {
            return 0;
        }
        self.effective_degree(word[0])
            + word[1..].iter().map(|&l| self.reduced_degree(l)).sum::<i64>()
    }

    pub fn word_weight(&self, word: &[Letter]) -> u32 {
        word.iter().map(|l| l.weight).sum()
    }

    pub fn word_valid(&self, word: &[Letter]) -> bool {
        if word.is_empty() {
            return false;
        }
        if !self.letter_in_curved(word[0]) {
            return false;
        }
        if !word[1..].iter().all(|&l| self.letter_in_augmentation(l)) {
            return false;
        }
        let closed = self.b.gen(word[0].gen).target == self.b.gen(word[word.len() - 1].gen).source;
        closed
            && word
                .windows(2)
                .all(|w| self.b.gen(w[0].gen).source == self.b.gen(w[1].gen).target)
    }

    /// All letters available at or below a weight bound, in a fixed order.
    fn letters_up_to(&self, max: u32) -> Vec<Letter> {
        let mut out = Vec::new();
        for &g in &self.aug_in_b {
            out.push(Letter { weight: 0, gen: g });
        }
        for w in 1..=max {
            for g in 0..self.b.gen_count() {
                out.push(Letter { weight: w, gen: g });
            }
        }
        out
    }

    /// Every cyclic word of total weight <= `weight_bound`, each exactly
    /// once, sorted. Finiteness comes from directedness (weight-0 letters
    /// strictly descend the object order when read leftwards) together with
    /// the weight bound. An optional degree window filters the output only.
    pub fn cyclic_words(&self, weight_bound: u32, window: Option<(i64, i64)>) -> Vec<CyclicWord> {
        assert!(weight_bound <= self.max_weight, "weight bound exceeds the truncation level");
        let letters = self.letters_up_to(weight_bound);
        let mut words = Vec::new();
        // marked slot: anything in D
        let mut heads: Vec<Letter> = letters
            .iter()
            .copied()
            .filter(|&l| self.letter_in_curved(l))
            .collect();
        for obj in 0..self.b.object_count() {
            let e = self.b.unit(obj).expect("unital");
            heads.push(Letter { weight: 0, gen: e });
        }
        heads.sort();
        heads.dedup();
        for head in heads {
            if head.weight > weight_bound {
                continue;
            }
            let mut stack = vec![head];
            self.extend_cyclic(
                &letters,
                weight_bound - head.weight,
                &mut stack,
                &mut words,
            );
        }
        words.retain(|w| match window {
            Some((lo, hi)) => {
                let d = self.word_degree(w);
                lo <= d && d <= hi
            }
            None => true,
        });
        words.sort();
        words
    }

    fn extend_cyclic(
        &self,
        letters: &[Letter],
        budget: u32,
        stack: &mut Vec<Letter>,
        out: &mut Vec<CyclicWord>,
    ) {
        let close_at = self.b.gen(stack[0].gen).target;
        let cur = self.b.gen(stack.last().unwrap().gen).source;
        if cur == close_at {
            out.push(stack.clone());
        }
        // weight-0 interior letters strictly decrease the current source, so
        // with no budget left the word can only close if we are still above
        // the closing object
        if budget == 0 && cur <= close_at {
            return;
        }
        for &l in letters {
            if l.weight > budget || !self.letter_in_augmentation(l) {
                continue;
            }
            if self.b.gen(l.gen).target != cur {
                continue;
            }
            stack.push(l);
            self.extend_cyclic(letters, budget - l.weight, stack, out);
            stack.pop();
        }
    }

    pub fn display_word(&self, word: &[Letter]) -> String {
        let mut s = String::new();
        for (i, l) in word.iter().enumerate() {
            if i > 0 {
                s.push_str(" | ");
            }
            match l.weight {
                0 => s.push_str(&self.b.gen(l.gen).name),
                1 => s.push_str(&format!("t {}", self.b.gen(l.gen).name)),
                w => s.push_str(&format!("t^{} {}", w, self.b.gen(l.gen).name)),
            }
        }
        format!("[{s}]")
    }
}

impl fmt::Display for CurvedCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "curved category on {} objects over {}, weights <= {}",
            self.b.object_count(),
            self.b.field(),
            self.max_weight
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::testutil::{point_category, trivial_extension_of_point};

    fn point_curved(p: u32) -> CurvedCategory {
        let b = point_category(Field::Rationals);
        CurvedCategory::from_ambient(b, p).unwrap()
    }

    #[test]
    fn truncation_at_zero_recovers_the_directed_part() {
        let cc = point_curved(0);
        let words = cc.cyclic_words(0, None);
        // only the unit word [e] survives at weight 0
        assert_eq!(words.len(), 1);
        assert_eq!(cc.word_degree(&words[0]), 0);
        assert_eq!(cc.word_weight(&words[0]), 0);
    }

    #[test]
    fn empty_category_has_no_words() {
        let b = crate::cat::CategoryBuilder::new(Field::Rationals).build().unwrap();
        let cc = CurvedCategory::from_ambient(b, 3).unwrap();
        assert!(cc.cyclic_words(3, None).is_empty());
    }

    /// One object, B = K e, weight bound 1: exactly [e], [t e], [e | t e].
    /// Interior weight-0 letters are impossible since A_+ = 0, and the
    /// leftmost unit may carry weight 0 only in the marked slot.
    #[test]
    fn words_of_the_point_at_weight_one() {
        let cc = point_curved(1);
        let words = cc.cyclic_words(1, None);
        let shown: Vec<String> = words.iter().map(|w| cc.display_word(w)).collect();
        assert_eq!(shown, vec!["[e]".to_string(), "[e | t e]".into(), "[t e]".into()]);
        for w in &words {
            assert!(cc.word_valid(w));
        }
    }

    #[test]
    fn non_unit_diagonal_generators_drop_out_of_the_directed_part() {
        let b = trivial_extension_of_point(Field::Rationals, 2);
        let a = point_category(Field::Rationals);
        // hom_B(X, X) = K e + K q, but the directed subcategory keeps K e only
        assert!(CurvedCategory::build(a, b, 1).is_ok());
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        // a misses the upward arrow of b, so it is not the full directed part
        let b = crate::testutil::a2_quiver(Field::Rationals, 0);
        let mut only_units = crate::cat::CategoryBuilder::new(Field::Rationals);
        let x1 = only_units.add_object("X1");
        let x2 = only_units.add_object("X2");
        let e1 = only_units.add_generator("e1", x1, x1, 0).unwrap();
        let e2 = only_units.add_generator("e2", x2, x2, 0).unwrap();
        only_units.set_unit(x1, e1).unwrap();
        only_units.set_unit(x2, e2).unwrap();
        only_units.add_term(&[e1, e1], e1, Field::Rationals.one()).unwrap();
        only_units.add_term(&[e2, e2], e2, Field::Rationals.one()).unwrap();
        let a = only_units.build().unwrap();
        assert!(matches!(
            CurvedCategory::build(a, b, 1),
            Err(CatError::NotSubcategory { .. })
        ));
    }

    #[test]
    fn weight_one_words_of_the_extension_point() {
        // B = K e + K q, |q| = 1: weight-1 words are
        //   [t e], [t q], [e | t e], [e | t q]
        // (interior weight-0 letters would need A_+ which is zero).
        let b = trivial_extension_of_point(Field::Rationals, 1);
        let cc = CurvedCategory::from_ambient(b, 1).unwrap();
        let words = cc.cyclic_words(1, None);
        assert_eq!(words.len(), 5); // the four above plus the weight-0 word [e]
        let degrees: Vec<i64> = words.iter().map(|w| cc.word_degree(w)).collect();
        let mut sorted = degrees.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 2, 3]);
        // degree window filters reporting only
        let windowed = cc.cyclic_words(1, Some((2, 2)));
        assert_eq!(windowed.len(), 2);
    }
}
