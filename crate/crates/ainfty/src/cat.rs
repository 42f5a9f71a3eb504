//! Finite A-infinity categories over R = K^m, presented by explicit
//! structure-constant tables.
//!
//! Conventions (see conventions.md at the crate root for the full table):
//!
//! * operations are written `mu^n(a_n, ..., a_1)` with `a_1` applied first;
//!   tuples are stored leftmost-first, so `key[0] = a_n` and `key[n-1] = a_1`;
//! * `a_1: X_0 -> X_1, ..., a_n: X_{n-1} -> X_n`, output in `hom(X_0, X_n)`;
//! * degrees are cohomological, `|mu^n| = |a_n| + ... + |a_1| + 2 - n`;
//! * the reduced degree is `||a|| = |a| - 1`; the A-infinity relations read
//!   `sum (-1)^{||a_1|| + ... + ||a_i||} mu(..., mu(a_{i+j}, ..., a_{i+1}), a_i, ..., a_1) = 0`;
//! * strict units satisfy `mu^1(e) = 0`, `mu^2(a, e) = a`,
//!   `mu^2(e, a) = (-1)^{|a|} a`, and every `mu^n`, n >= 3, with a unit
//!   input vanishes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::CatError;
use crate::scalar::{Field, Scalar};

/// Index of an object within a category's ordered object list.
pub type ObjId = usize;
/// Index of a morphism generator.
pub type GenId = usize;

/// A linear combination of generators, sorted by id, no zero coefficients.
pub type LinComb = Vec<(GenId, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct AInftyCategory {
    field: Field,
    objects: Vec<String>,
    gens: Vec<Generator>,
    units: Vec<Option<GenId>>,
    /// Structure constants keyed by input tuples, leftmost-first.
    ops: BTreeMap<Vec<GenId>, LinComb>,
    max_arity: usize,
}

/// Accumulating builder; all structural invariants are enforced in `build`.
pub struct CategoryBuilder {
    field: Field,
    objects: Vec<String>,
    gens: Vec<Generator>,
    units: Vec<Option<GenId>>,
    ops: BTreeMap<Vec<GenId>, BTreeMap<GenId, Scalar>>,
}

impl CategoryBuilder {
    pub fn new(field: Field) -> Self {
        CategoryBuilder {
            field,
            objects: Vec::new(),
            gens: Vec::new(),
            units: Vec::new(),
            ops: BTreeMap::new(),
        }
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> ObjId {
        self.objects.push(label.into());
        self.units.push(None);
        self.objects.len() - 1
    }

    pub fn add_generator(
        &mut self,
        name: impl Into<String>,
        source: ObjId,
        target: ObjId,
        degree: i64,
    ) -> Result<GenId, CatError> {
        let name = name.into();
        if source >= self.objects.len() {
            return Err(CatError::UnknownObject(source));
        }
        if target >= self.objects.len() {
            return Err(CatError::UnknownObject(target));
        }
        if self
            .gens
            .iter()
            .any(|g| g.name == name && g.source == source && g.target == target)
        {
            return Err(CatError::DuplicateGenerator { name });
        }
        self.gens.push(Generator { name, source, target, degree });
        Ok(self.gens.len() - 1)
    }

    pub fn set_unit(&mut self, object: ObjId, gen: GenId) -> Result<(), CatError> {
        let g = self.gens.get(gen).ok_or(CatError::UnknownGenerator(gen))?;
        if g.source != object || g.target != object || g.degree != 0 {
            return Err(CatError::BadUnit { object, name: g.name.clone() });
        }
        self.units[object] = Some(gen);
        Ok(())
    }

    pub fn generator_degree(&self, gen: GenId) -> i64 {
        self.gens[gen].degree
    }

    /// Accumulate one structure-constant term `mu(inputs) += coeff * output`.
    pub fn add_term(
        &mut self,
        inputs: &[GenId],
        output: GenId,
        coeff: Scalar,
    ) -> Result<(), CatError> {
        for &g in inputs.iter().chain([&output]) {
            if g >= self.gens.len() {
                return Err(CatError::UnknownGenerator(g));
            }
        }
        if coeff.field() != self.field {
            return Err(CatError::MixedField { expected: self.field, found: coeff.field() });
        }
        let slot = self
            .ops
            .entry(inputs.to_vec())
            .or_default()
            .entry(output)
            .or_insert_with(|| self.field.zero());
        *slot = slot.add(&coeff);
        Ok(())
    }

    pub fn build(self) -> Result<AInftyCategory, CatError> {
        let gens = self.gens;
        let show = |ids: &[GenId]| display_tuple(&gens, ids);
        let mut ops: BTreeMap<Vec<GenId>, LinComb> = BTreeMap::new();
        let mut max_arity = 0;
        for (key, terms) in self.ops {
            let comb: LinComb = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if comb.is_empty() {
                continue;
            }
            assert!(!key.is_empty(), "curvature terms are not part of flat categories");
            // composability of the input chain
            for w in key.windows(2) {
                if gens[w[0]].source != gens[w[1]].target {
                    return Err(CatError::NotComposable { inputs: show(&key) });
                }
            }
            let chain_source = gens[*key.last().unwrap()].source;
            let chain_target = gens[key[0]].target;
            let expected: i64 =
                key.iter().map(|&g| gens[g].degree).sum::<i64>() + 2 - key.len() as i64;
            for (out, _) in &comb {
                let o = &gens[*out];
                if o.source != chain_source || o.target != chain_target {
                    return Err(CatError::OutputEndpoints {
                        inputs: show(&key),
                        output: o.name.clone(),
                    });
                }
                if o.degree != expected {
                    return Err(CatError::DegreeRule {
                        inputs: show(&key),
                        output: o.name.clone(),
                        expected,
                        found: o.degree,
                    });
                }
            }
            max_arity = max_arity.max(key.len());
            ops.insert(key, comb);
        }
        Ok(AInftyCategory {
            field: self.field,
            objects: self.objects,
            gens,
            units: self.units,
            ops,
            max_arity,
        })
    }
}

pub(crate) fn display_tuple(gens: &[Generator], ids: &[GenId]) -> String {
    let mut s = String::new();
    for (i, &g) in ids.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", gens[g].name);
    }
    s
}

pub(crate) fn display_comb(gens: &[Generator], comb: &[(GenId, Scalar)]) -> String {
    if comb.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (g, c)) in comb.iter().enumerate() {
        if i > 0 {
            s.push_str(" + ");
        }
        let _ = write!(s, "{}*{}", c, gens[*g].name);
    }
    s
}

impl AInftyCategory {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen(&self, id: GenId) -> &Generator {
        &self.gens[id]
    }

    pub fn unit(&self, object: ObjId) -> Option<GenId> {
        self.units[object]
    }

    pub fn is_unit(&self, gen: GenId) -> bool {
        self.units[self.gens[gen].source] == Some(gen) && self.gens[gen].source == self.gens[gen].target
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn ops(&self) -> impl Iterator<Item = (&Vec<GenId>, &LinComb)> {
        self.ops.iter()
    }

    /// Structure constants of `mu(key)`, leftmost-first key; `None` when zero.
    pub fn mu(&self, key: &[GenId]) -> Option<&LinComb> {
        self.ops.get(key)
    }

    pub fn hom_basis(&self, source: ObjId, target: ObjId) -> Vec<GenId> {
        (0..self.gens.len())
            .filter(|&g| self.gens[g].source == source && self.gens[g].target == target)
            .collect()
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn reduced_degree(&self, gen: GenId) -> i64 {
        self.gens[gen].degree - 1
    }

    /// All objects carry a designated strict unit.
    pub fn require_unital(&self) -> Result<(), CatError> {
        match self.units.iter().position(Option::is_none) {
            None => Ok(()),
            Some(obj) => Err(CatError::NotUnital {
                reason: format!("object {} has no designated unit", self.objects[obj]),
            }),
        }
    }

    /// Every non-unit generator points strictly upward in the object order and
    /// the diagonal consists of units only.
    pub fn require_directed(&self) -> Result<(), CatError> {
        for (id, g) in self.gens.iter().enumerate() {
            if self.is_unit(id) {
                continue;
            }
            if g.source >= g.target {
                return Err(CatError::NotDirected {
                    reason: format!(
                        "generator {} : {} -> {} does not increase the object order",
                        g.name, self.objects[g.source], self.objects[g.target]
                    ),
                });
            }
        }
        Ok(())
    }

    /// Full validation: strict unit axioms (for designated units) plus the
    /// A-infinity relations on every composable tuple up to the arity where
    /// composite terms can still be nonzero.
    pub fn validate(&self) -> Result<(), CatError> {
        self.validate_units()?;
        self.validate_relations()
    }

    fn validate_units(&self) -> Result<(), CatError> {
        let show = |ids: &[GenId]| display_tuple(&self.gens, ids);
        for (obj, unit) in self.units.iter().enumerate() {
            let Some(e) = *unit else { continue };
            if self.mu(&[e]).is_some() {
                return Err(CatError::UnitAxiom {
                    inputs: show(&[e]),
                    expected: "0".into(),
                    found: display_comb(&self.gens, self.mu(&[e]).unwrap()),
                });
            }
            for (id, g) in self.gens.iter().enumerate() {
                // mu^2(a, e) = a for a leaving the unit's object
                if g.source == obj {
                    let found = self.ops.get(&vec![id, e]).cloned().unwrap_or_default();
                    let expected = vec![(id, self.field.one())];
                    if found != expected {
                        return Err(CatError::UnitAxiom {
                            inputs: show(&[id, e]),
                            expected: display_comb(&self.gens, &expected),
                            found: display_comb(&self.gens, &found),
                        });
                    }
                }
                // mu^2(e, a) = (-1)^{|a|} a for a arriving at the unit's object
                if g.target == obj {
                    let found = self.ops.get(&vec![e, id]).cloned().unwrap_or_default();
                    let expected = vec![(id, self.field.one().koszul(g.degree))];
                    if found != expected {
                        return Err(CatError::UnitAxiom {
                            inputs: show(&[e, id]),
                            expected: display_comb(&self.gens, &expected),
                            found: display_comb(&self.gens, &found),
                        });
                    }
                }
            }
        }
        // higher operations with a unit input must vanish
        for (key, comb) in &self.ops {
            if key.len() >= 3 && key.iter().any(|&g| self.is_unit(g)) && !comb.is_empty() {
                return Err(CatError::UnitAxiom {
                    inputs: show(key),
                    expected: "0".into(),
                    found: display_comb(&self.gens, comb),
                });
            }
        }
        Ok(())
    }

    fn validate_relations(&self) -> Result<(), CatError> {
        if self.max_arity == 0 {
            return Ok(());
        }
        let max_len = 2 * self.max_arity - 1;
        for chain in self.composable_chains(max_len) {
            let residual = self.relation_residual(&chain);
            if !residual.is_empty() {
                return Err(CatError::RelationViolation {
                    inputs: display_tuple(&self.gens, &chain),
                    residual: display_comb(&self.gens, &residual),
                });
            }
        }
        Ok(())
    }

    /// The A-infinity relation residual on one composable tuple.
    pub fn relation_residual(&self, chain: &[GenId]) -> LinComb {
        let n = chain.len();
        let mut acc: BTreeMap<GenId, Scalar> = BTreeMap::new();
        for j in 1..=n.min(self.max_arity) {
            for start in 0..=(n - j) {
                let Some(inner) = self.mu(&chain[start..start + j]) else { continue };
                // Koszul sign: the odd operator passes the letters applied
                // before the chunk, i.e. everything to its right.
                let tail_parity: i64 =
                    chain[start + j..].iter().map(|&g| self.reduced_degree(g)).sum();
                for (mid, c_in) in inner {
                    let mut key = Vec::with_capacity(n - j + 1);
                    key.extend_from_slice(&chain[..start]);
                    key.push(*mid);
                    key.extend_from_slice(&chain[start + j..]);
                    let Some(outer) = self.mu(&key) else { continue };
                    for (out, c_out) in outer {
                        let term = c_in.mul(c_out).koszul(tail_parity);
                        let slot = acc.entry(*out).or_insert_with(|| self.field.zero());
                        *slot = slot.add(&term);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// All composable tuples of length 1..=max_len, leftmost-first.
    fn composable_chains(&self, max_len: usize) -> Vec<Vec<GenId>> {
        let mut by_len: Vec<Vec<Vec<GenId>>> =
            vec![(0..self.gens.len()).map(|g| vec![g]).collect()];
        for _ in 1..max_len {
            let prev = by_len.last().unwrap();
            let mut next = Vec::new();
            for chain in prev {
                let head_target = self.gens[chain[0]].target;
                for g in 0..self.gens.len() {
                    if self.gens[g].source == head_target {
                        let mut longer = Vec::with_capacity(chain.len() + 1);
                        longer.push(g);
                        longer.extend_from_slice(chain);
                        next.push(longer);
                    }
                }
            }
            by_len.push(next);
        }
        by_len.into_iter().flatten().collect()
    }

    /// Directed subcategory: full morphisms upward, units on the diagonal,
    /// nothing downward. Requires a strictly unital input.
    pub fn directed_subcategory(&self) -> Result<AInftyCategory, CatError> {
        self.require_unital()?;
        let mut b = CategoryBuilder::new(self.field);
        for label in &self.objects {
            b.add_object(label.clone());
        }
        let mut keep: Vec<Option<GenId>> = vec![None; self.gens.len()];
        for (id, g) in self.gens.iter().enumerate() {
            if g.source < g.target || self.is_unit(id) {
                let new_id = b.add_generator(g.name.clone(), g.source, g.target, g.degree)?;
                keep[id] = Some(new_id);
            }
        }
        for (obj, unit) in self.units.iter().enumerate() {
            b.set_unit(obj, keep[unit.expect("unital")].expect("units survive"))?;
        }
        for (key, comb) in &self.ops {
            let Some(new_key) = key.iter().map(|&g| keep[g]).collect::<Option<Vec<_>>>() else {
                continue;
            };
            for (out, c) in comb {
                if let Some(new_out) = keep[*out] {
                    b.add_term(&new_key, new_out, c.clone())?;
                }
            }
        }
        b.build()
    }

    /// Basis of the augmentation ideal: all generators except the units.
    pub fn augmentation_ideal(&self) -> Result<Vec<GenId>, CatError> {
        self.require_unital()?;
        Ok((0..self.gens.len()).filter(|&g| !self.is_unit(g)).collect())
    }

    /// Composable words in the augmentation ideal of a directed category,
    /// i.e. a basis of the tensor algebra `T(A_+[1])` over R. Letters carry the
    /// shift: a word's degree is the sum of `|letter| - 1`.
    ///
    /// Directedness bounds word lengths by m - 1, which is what makes the
    /// enumeration terminate; non-directed input is rejected up front.
    pub fn tensor_algebra_words(&self) -> Result<Vec<TensorWord>, CatError> {
        self.require_directed()?;
        let aug = self.augmentation_ideal()?;
        let mut words: Vec<TensorWord> = (0..self.objects.len())
            .map(|obj| TensorWord { letters: Vec::new(), source: obj, target: obj, degree: 0 })
            .collect();
        let mut frontier: Vec<TensorWord> = aug
            .iter()
            .map(|&g| TensorWord {
                letters: vec![g],
                source: self.gens[g].source,
                target: self.gens[g].target,
                degree: self.gens[g].degree - 1,
            })
            .collect();
        while !frontier.is_empty() {
            words.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for w in &frontier {
                for &g in &aug {
                    // extend by a new first-applied letter on the right
                    if self.gens[g].target != w.source {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(g);
                    assert!(
                        letters.len() < self.objects.len().max(1),
                        "directed words must stay shorter than the object count"
                    );
                    next.push(TensorWord {
                        letters,
                        source: self.gens[g].source,
                        target: w.target,
                        degree: w.degree + self.gens[g].degree - 1,
                    });
                }
            }
            frontier = next;
        }
        words.sort();
        Ok(words)
    }
}

/// A composable word of augmentation-ideal generators, leftmost-first, with
/// the `[1]`-shifted degree. The empty word at an object is the R summand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorWord {
    pub source: ObjId,
    pub target: ObjId,
    pub degree: i64,
    pub letters: Vec<GenId>,
}
