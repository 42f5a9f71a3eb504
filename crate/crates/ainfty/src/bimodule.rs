//! A-infinity bimodules over a category A: duals, shifts, trivial extensions
//! and quotients B/A.
//!
//! Action tuples are stored in the same normalization as category operations:
//! `mu(a_r, ..., a_1, q, b_s, ..., b_1)` leftmost-first, with output degree
//! `sum of input degrees + 1 - r - s`. A bimodule is valid exactly when its
//! trivial extension A + Q (zero on tuples with two or more module entries)
//! satisfies the category A-infinity relations, and that is how validation
//! is implemented.

use std::collections::BTreeMap;

use crate::cat::{display_tuple, AInftyCategory, CategoryBuilder, GenId, Generator, LinComb};
use crate::error::CatError;
use crate::scalar::Scalar;

/// Inputs of one action component, leftmost-first on both sides of the
/// single module slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ActionKey {
    pub left: Vec<GenId>,
    pub module: usize,
    pub right: Vec<GenId>,
}

#[derive(Clone, Debug)]
pub struct Bimodule {
    base: AInftyCategory,
    gens: Vec<Generator>,
    ops: BTreeMap<ActionKey, LinComb>,
}

impl Bimodule {
    pub fn new(
        base: AInftyCategory,
        gens: Vec<Generator>,
        terms: impl IntoIterator<Item = (ActionKey, usize, Scalar)>,
    ) -> Result<Bimodule, CatError> {
        let mut acc: BTreeMap<ActionKey, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (key, out, coeff) in terms {
            for &a in key.left.iter().chain(&key.right) {
                if a >= base.gen_count() {
                    return Err(CatError::UnknownGenerator(a));
                }
            }
            if key.module >= gens.len() || out >= gens.len() {
                return Err(CatError::UnknownGenerator(key.module.max(out)));
            }
            if coeff.field() != base.field() {
                return Err(CatError::MixedField { expected: base.field(), found: coeff.field() });
            }
            let slot = acc
                .entry(key)
                .or_default()
                .entry(out)
                .or_insert_with(|| base.field().zero());
            *slot = slot.add(&coeff);
        }
        let mut ops = BTreeMap::new();
        for (key, terms) in acc {
            let comb: LinComb = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if comb.is_empty() {
                continue;
            }
            Self::check_entry(&base, &gens, &key, &comb)?;
            ops.insert(key, comb);
        }
        Ok(Bimodule { base, gens, ops })
    }

    /// Composability, endpoint and degree-rule checks for one action entry.
    fn check_entry(
        base: &AInftyCategory,
        gens: &[Generator],
        key: &ActionKey,
        comb: &LinComb,
    ) -> Result<(), CatError> {
        let arity = key.left.len() + 1 + key.right.len();
        // (source, target, degree) of the full chain, leftmost-first
        let chain: Vec<(usize, usize, i64)> = key
            .left
            .iter()
            .map(|&g| {
                let x = base.gen(g);
                (x.source, x.target, x.degree)
            })
            .chain([(gens[key.module].source, gens[key.module].target, gens[key.module].degree)])
            .chain(key.right.iter().map(|&g| {
                let x = base.gen(g);
                (x.source, x.target, x.degree)
            }))
            .collect();
        let show = || {
            let mut parts: Vec<String> =
                key.left.iter().map(|&g| base.gen(g).name.clone()).collect();
            parts.push(format!("[{}]", gens[key.module].name));
            parts.extend(key.right.iter().map(|&g| base.gen(g).name.clone()));
            parts.join(", ")
        };
        for w in chain.windows(2) {
            if w[0].0 != w[1].1 {
                return Err(CatError::NotComposable { inputs: show() });
            }
        }
        let expected: i64 = chain.iter().map(|c| c.2).sum::<i64>() + 2 - arity as i64;
        for (out, _) in comb {
            let o = &gens[*out];
            if o.source != chain.last().unwrap().0 || o.target != chain[0].1 {
                return Err(CatError::BadAction {
                    inputs: show(),
                    output: o.name.clone(),
                    reason: "output does not connect the chain endpoints".into(),
                });
            }
            if o.degree != expected {
                return Err(CatError::BadAction {
                    inputs: show(),
                    output: o.name.clone(),
                    reason: format!("degree {} violates the rule (expected {expected})", o.degree),
                });
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &AInftyCategory {
        &self.base
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn ops(&self) -> impl Iterator<Item = (&ActionKey, &LinComb)> {
        self.ops.iter()
    }

    pub fn action(&self, key: &ActionKey) -> Option<&LinComb> {
        self.ops.get(key)
    }

    /// The square-zero extension A + Q: operations of A on pure-A tuples, the
    /// action on tuples with exactly one module entry, zero otherwise.
    ///
    /// Module generators keep their names, so they must not collide with the
    /// category's generator names on the same hom pair.
    pub fn trivial_extension(&self) -> Result<AInftyCategory, CatError> {
        let a = &self.base;
        let mut b = CategoryBuilder::new(a.field());
        for label in a.object_labels() {
            b.add_object(label.clone());
        }
        for g in a.gens() {
            b.add_generator(g.name.clone(), g.source, g.target, g.degree)?;
        }
        let offset = a.gen_count();
        for m in &self.gens {
            b.add_generator(m.name.clone(), m.source, m.target, m.degree)?;
        }
        for obj in 0..a.object_count() {
            if let Some(e) = a.unit(obj) {
                b.set_unit(obj, e)?;
            }
        }
        for (key, comb) in a.ops() {
            for (out, c) in comb {
                b.add_term(key, *out, c.clone())?;
            }
        }
        for (key, comb) in &self.ops {
            let mut full = key.left.clone();
            full.push(offset + key.module);
            full.extend_from_slice(&key.right);
            for (out, c) in comb {
                b.add_term(&full, offset + *out, c.clone())?;
            }
        }
        b.build()
    }

    /// Bimodule A-infinity relations, checked through the trivial extension.
    pub fn validate(&self) -> Result<(), CatError> {
        self.trivial_extension()?.validate()
    }

    /// Shift `Q[n]`: generator degrees drop by n, and an action component with
    /// right part (b_s, ..., b_1) is rescaled by
    /// `(-1)^{n (||b_1|| + ... + ||b_s|| + 1)}`.
    ///
    /// The exponent is forced: in any A-infinity relation of `A + Q[n]`, terms
    /// whose inner composition contains the module slot rescale by the sign
    /// of both action factors, terms with the module slot in the tail also
    /// absorb the changed tail parity, and only this exponent scales every
    /// term of a relation uniformly. Double shifts compose to the identity.
    pub fn shift(&self, n: i64) -> Bimodule {
        let gens = self
            .gens
            .iter()
            .map(|g| Generator {
                name: g.name.clone(),
                source: g.source,
                target: g.target,
                degree: g.degree - n,
            })
            .collect();
        let ops = self
            .ops
            .iter()
            .map(|(key, comb)| {
                let right_parity: i64 =
                    key.right.iter().map(|&g| self.base.reduced_degree(g)).sum();
                let comb = comb
                    .iter()
                    .map(|(out, c)| (*out, c.koszul(n * (right_parity + 1))))
                    .collect();
                (key.clone(), comb)
            })
            .collect();
        Bimodule { base: self.base.clone(), gens, ops }
    }
}

/// The dual diagonal bimodule A^v: one generator g* : X_k -> X_j of degree
/// -|g| for every generator g : X_j -> X_k, with action
///
///   mu(a_r, ..., a_1, g*, b_s, ..., b_1)
///     = sum_h (-1)^{||g*|| + 1} [g : mu_A(b_s, ..., b_1, h, a_r, ..., a_1)] h*
///
/// where [g : -] extracts the coefficient of g. The sign exponent is pinned
/// by requiring A + A^v to satisfy the A-infinity relations (see the tests
/// and conventions.md).
pub fn dual_bimodule(a: &AInftyCategory) -> Result<Bimodule, CatError> {
    let gens: Vec<Generator> = a
        .gens()
        .iter()
        .map(|g| Generator {
            name: format!("{}*", g.name),
            source: g.target,
            target: g.source,
            degree: -g.degree,
        })
        .collect();
    let mut terms = Vec::new();
    for (key, comb) in a.ops() {
        for (g_out, c) in comb {
            let dual_reduced = -a.gen(*g_out).degree - 1;
            for pos in 0..key.len() {
                let action = ActionKey {
                    left: key[pos + 1..].to_vec(),
                    module: *g_out,
                    right: key[..pos].to_vec(),
                };
                terms.push((action, key[pos], c.koszul(dual_reduced + 1)));
            }
        }
    }
    Bimodule::new(a.clone(), gens, terms)
}

/// The quotient bimodule Q = B/A for A the directed subcategory of B, with
/// the induced A-action. `a` must embed into `b` generator by generator
/// (matching name, endpoints and degree) with matching operations on pure-A
/// tuples; the module basis consists of the B-generators missing from A.
pub fn quotient_bimodule(b: &AInftyCategory, a: &AInftyCategory) -> Result<Bimodule, CatError> {
    if a.object_labels() != b.object_labels() {
        return Err(CatError::NotSubcategory { reason: "object lists differ".into() });
    }
    if a.field() != b.field() {
        return Err(CatError::NotSubcategory { reason: "coefficient fields differ".into() });
    }
    let mut embed: Vec<GenId> = Vec::with_capacity(a.gen_count());
    for g in a.gens() {
        let hit = b.gens().iter().position(|h| {
            h.name == g.name && h.source == g.source && h.target == g.target && h.degree == g.degree
        });
        match hit {
            Some(i) => embed.push(i),
            None => {
                return Err(CatError::NotSubcategory {
                    reason: format!("generator {} of the subcategory is missing upstairs", g.name),
                })
            }
        }
    }
    let mut from_b: Vec<Option<GenId>> = vec![None; b.gen_count()];
    for (ai, &bi) in embed.iter().enumerate() {
        from_b[bi] = Some(ai);
    }
    let mut module_of: Vec<Option<usize>> = vec![None; b.gen_count()];
    let mut gens = Vec::new();
    for (id, g) in b.gens().iter().enumerate() {
        if from_b[id].is_none() {
            module_of[id] = Some(gens.len());
            gens.push(g.clone());
        }
    }
    // the A-operations must be the restriction of the B-operations
    for (key, comb) in a.ops() {
        let bkey: Vec<GenId> = key.iter().map(|&g| embed[g]).collect();
        let bcomb: LinComb = b
            .mu(&bkey)
            .map(|c| {
                c.iter().filter_map(|(out, s)| from_b[*out].map(|ai| (ai, s.clone()))).collect()
            })
            .unwrap_or_default();
        if &bcomb != comb {
            return Err(CatError::NotSubcategory {
                reason: format!("operations disagree on ({})", display_tuple(a.gens(), key)),
            });
        }
    }
    let mut terms = Vec::new();
    for (key, comb) in b.ops() {
        let module_slots: Vec<usize> =
            key.iter().enumerate().filter(|(_, &g)| from_b[g].is_none()).map(|(i, _)| i).collect();
        if module_slots.len() != 1 {
            continue;
        }
        let pos = module_slots[0];
        let left: Option<Vec<GenId>> = key[..pos].iter().map(|&g| from_b[g]).collect();
        let right: Option<Vec<GenId>> = key[pos + 1..].iter().map(|&g| from_b[g]).collect();
        let (Some(left), Some(right)) = (left, right) else { continue };
        let action = ActionKey { left, module: module_of[key[pos]].unwrap(), right };
        for (out, c) in comb {
            if let Some(m) = module_of[*out] {
                terms.push((action.clone(), m, c.clone()));
            }
        }
    }
    Bimodule::new(a.clone(), gens, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::CategoryBuilder;
    use crate::scalar::Field;
    use crate::testutil::{
        a2_quiver, a3_with_composition, point_category, trivial_extension_of_point,
    };

    #[test]
    fn dual_of_point_category() {
        let a = point_category(Field::Rationals);
        let q = dual_bimodule(&a).unwrap();
        assert_eq!(q.gen_count(), 1);
        assert_eq!(q.gens()[0].degree, 0);
        q.validate().unwrap();
    }

    #[test]
    fn dual_of_a2_reverses_the_arrow() {
        let a = a2_quiver(Field::Rationals, 0);
        let q = dual_bimodule(&a).unwrap();
        let rev = q.gens().iter().find(|g| g.name == "u*").unwrap();
        assert_eq!((rev.source, rev.target, rev.degree), (1, 0, 0));
        q.validate().unwrap();
    }

    #[test]
    fn dual_of_a3_with_composition_validates() {
        let a = a3_with_composition(Field::Rationals);
        dual_bimodule(&a).unwrap().validate().unwrap();
    }

    #[test]
    fn dual_with_odd_degree_arrows_validates() {
        for d in [-1, 1, 2, 3] {
            let a = a2_quiver(Field::Rationals, d);
            dual_bimodule(&a).unwrap().validate().unwrap();
        }
    }

    /// One object, unital, with a single mu^3(x,x,x) = y. The extension by
    /// the dual then has genuinely interacting action components of arities
    /// 2 and 3, which pins the sign exponent beyond the associative case.
    #[test]
    fn dual_with_higher_operations_validates() {
        let f = Field::Rationals;
        let mut b = CategoryBuilder::new(f);
        let o = b.add_object("X");
        let e = b.add_generator("e", o, o, 0).unwrap();
        let x = b.add_generator("x", o, o, 1).unwrap();
        let y = b.add_generator("y", o, o, 2).unwrap();
        b.set_unit(o, e).unwrap();
        b.add_term(&[e, e], e, f.one()).unwrap();
        for (g, deg) in [(x, 1), (y, 2)] {
            b.add_term(&[g, e], g, f.one()).unwrap();
            b.add_term(&[e, g], g, f.one().koszul(deg)).unwrap();
        }
        b.add_term(&[x, x, x], y, f.one()).unwrap();
        let a = b.build().unwrap();
        a.validate().unwrap();
        dual_bimodule(&a).unwrap().validate().unwrap();
    }

    #[test]
    fn shift_round_trip_is_identity() {
        let a = a2_quiver(Field::Rationals, 1);
        let q = dual_bimodule(&a).unwrap();
        let back = q.shift(3).shift(-3);
        assert_eq!(q.gens(), back.gens());
        assert_eq!(q.ops().collect::<Vec<_>>(), back.ops().collect::<Vec<_>>());
        assert_eq!(q.shift(0).ops().collect::<Vec<_>>(), q.ops().collect::<Vec<_>>());
    }

    #[test]
    fn shifted_duals_validate_for_all_fibre_dimensions() {
        // Q = A^v[1-d]; odd shifts exercise the re-signing.
        for d in [1, 2, 3] {
            for arrow_degree in [0, 1] {
                let a = a2_quiver(Field::Rationals, arrow_degree);
                let q = dual_bimodule(&a).unwrap().shift(1 - d);
                q.validate().unwrap();
                let dual_arrow = q.gens().iter().find(|g| g.name == "u*").unwrap();
                assert_eq!(dual_arrow.degree, -arrow_degree - 1 + d);
            }
        }
    }

    #[test]
    fn trivial_extension_validates_and_quotient_recovers_the_module() {
        for d in [1, 2, 3] {
            let a = a3_with_composition(Field::Rationals);
            let q = dual_bimodule(&a).unwrap().shift(1 - d);
            let ext = q.trivial_extension().unwrap();
            ext.validate().unwrap();
            let back = quotient_bimodule(&ext, &a).unwrap();
            back.validate().unwrap();
            assert_eq!(back.gens(), q.gens());
            assert_eq!(back.ops().collect::<Vec<_>>(), q.ops().collect::<Vec<_>>());
        }
    }

    #[test]
    fn quotient_by_the_directed_subcategory() {
        // point with hom = K e + K q: Q = hom / K e is one-dimensional
        let c = trivial_extension_of_point(Field::Rationals, 2);
        let a = c.directed_subcategory().unwrap();
        let q = quotient_bimodule(&c, &a).unwrap();
        assert_eq!(q.gen_count(), 1);
        assert_eq!(q.gens()[0].name, "q");
        q.validate().unwrap();
    }

    #[test]
    fn quotient_rejects_non_subcategories() {
        let c = trivial_extension_of_point(Field::Rationals, 2);
        let a_wrong = a3_with_composition(Field::Rationals);
        assert!(matches!(
            quotient_bimodule(&c, &a_wrong),
            Err(CatError::NotSubcategory { .. })
        ));
    }
}
