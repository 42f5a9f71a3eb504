//! Bundled example categories: combinatorial models of vanishing-cycle
//! categories small enough to compute with, shipped both as generators here
//! and as category files under `fixtures/`.
//!
//! Derivations are documented on each generator. Gradings of the cycles are
//! a free choice; the ones below are pinned so that the regression tables in
//! the acceptance suite reproduce.

use crate::bimodule::{dual_bimodule, Bimodule};
use crate::cat::{AInftyCategory, CategoryBuilder};
use crate::curved::CurvedCategory;
use crate::error::CatError;
use crate::scalar::Field;

/// A directed category inside its ambient category, plus the fibre dimension
/// used by the Donaldson complex.
#[derive(Clone, Debug)]
pub struct ModelPair {
    pub directed: AInftyCategory,
    pub ambient: AInftyCategory,
    pub fibre_dim: i64,
}

impl ModelPair {
    pub fn curved(&self, max_weight: u32) -> Result<CurvedCategory, CatError> {
        CurvedCategory::build(self.directed.clone(), self.ambient.clone(), max_weight)
    }

    pub fn quotient(&self) -> Result<Bimodule, CatError> {
        crate::bimodule::quotient_bimodule(&self.ambient, &self.directed)
    }
}

/// The empty collection of vanishing cycles: no objects at all.
pub fn empty_model(field: Field) -> ModelPair {
    let b = CategoryBuilder::new(field).build().expect("empty build cannot fail");
    ModelPair { directed: b.clone(), ambient: b, fibre_dim: 1 }
}

/// The chain-of-spheres model: A is the directed A_m quiver (arrows
/// u_j : X_j -> X_{j+1} in degree 0, consecutive compositions zero) and
/// B = A + A^v[1 - d] is its trivial extension by the shifted dual diagonal
/// bimodule. For d = 3 the dual generators sit in degree 2, matching the
/// cohomology of the 2-sphere fibres of the corresponding ALE space; higher
/// compositions play no role in this family.
pub fn am_quiver(m: usize, d: i64, field: Field) -> Result<ModelPair, CatError> {
    let mut bld = CategoryBuilder::new(field);
    let objects: Vec<usize> = (1..=m).map(|j| bld.add_object(format!("X{j}"))).collect();
    let units: Vec<usize> = objects
        .iter()
        .map(|&x| bld.add_generator(format!("e{}", x + 1), x, x, 0))
        .collect::<Result<_, _>>()?;
    let arrows: Vec<usize> = (0..m.saturating_sub(1))
        .map(|j| bld.add_generator(format!("u{}", j + 1), objects[j], objects[j + 1], 0))
        .collect::<Result<_, _>>()?;
    for (&x, &e) in objects.iter().zip(&units) {
        bld.set_unit(x, e)?;
        bld.add_term(&[e, e], e, field.one())?;
    }
    for (j, &u) in arrows.iter().enumerate() {
        bld.add_term(&[u, units[j]], u, field.one())?;
        bld.add_term(&[units[j + 1], u], u, field.one())?;
    }
    let a = bld.build()?;
    let q = dual_bimodule(&a)?.shift(1 - d);
    let ambient = q.trivial_extension()?;
    Ok(ModelPair { directed: a, ambient, fibre_dim: d })
}

/// Vanishing cycles of the one-variable Morsification with m critical
/// points: the fibre is the m + 1 points {1, ..., m+1} and the j-th cycle is
/// the 0-sphere L_j = {j, j+1}. Morphisms are spanned by shared points, all
/// in degree 0 (constant gradings), and composition matches points:
/// `[x]` after `[y]` is `[x]` when x = y and zero otherwise. In the basis
///
///   `e_j = [j] + [j+1]` (the unit),  `s_j = [j+1]`  in hom(X_j, X_j),
///   `u_j = [j+1] : X_j -> X_{j+1}`,  `v_j = [j+1] : X_{j+1} -> X_j`,
///
/// the only products beyond unit rows are
///   s s = s,  u s = u,  s v = v,  v u = s,  u v = e - s,
/// and non-neighbouring cycles are disjoint. The directed part is the A_m
/// quiver on the u_j. The fibre dimension is 1.
pub fn branched_cover(m: usize, field: Field) -> Result<ModelPair, CatError> {
    if m < 2 {
        return Err(CatError::Unsupported {
            reason: "the branched-cover model needs at least two vanishing cycles".into(),
        });
    }
    let mut bld = CategoryBuilder::new(field);
    let objects: Vec<usize> = (1..=m).map(|j| bld.add_object(format!("X{j}"))).collect();
    let mut units = Vec::new();
    let mut loops = Vec::new();
    for (j, &x) in objects.iter().enumerate() {
        units.push(bld.add_generator(format!("e{}", j + 1), x, x, 0)?);
        loops.push(bld.add_generator(format!("s{}", j + 1), x, x, 0)?);
    }
    let mut ups = Vec::new();
    let mut downs = Vec::new();
    for j in 0..m - 1 {
        ups.push(bld.add_generator(format!("u{}", j + 1), objects[j], objects[j + 1], 0)?);
        downs.push(bld.add_generator(format!("v{}", j + 1), objects[j + 1], objects[j], 0)?);
    }
    for (j, &x) in objects.iter().enumerate() {
        bld.set_unit(x, units[j])?;
    }
    let one = field.one();
    for j in 0..m {
        let (e, s) = (units[j], loops[j]);
        bld.add_term(&[e, e], e, one.clone())?;
        bld.add_term(&[s, e], s, one.clone())?;
        bld.add_term(&[e, s], s, one.clone())?;
        bld.add_term(&[s, s], s, one.clone())?;
    }
    for j in 0..m - 1 {
        let (u, v) = (ups[j], downs[j]);
        let (e_lo, s_lo) = (units[j], loops[j]);
        let (e_hi, s_hi) = (units[j + 1], loops[j + 1]);
        bld.add_term(&[u, e_lo], u, one.clone())?;
        bld.add_term(&[e_hi, u], u, one.clone())?;
        bld.add_term(&[v, e_hi], v, one.clone())?;
        bld.add_term(&[e_lo, v], v, one.clone())?;
        bld.add_term(&[u, s_lo], u, one.clone())?;
        bld.add_term(&[s_lo, v], v, one.clone())?;
        bld.add_term(&[v, u], s_lo, one.clone())?;
        bld.add_term(&[u, v], e_hi, one.clone())?;
        bld.add_term(&[u, v], s_hi, one.neg())?;
    }
    let ambient = bld.build()?;
    let directed = ambient.directed_subcategory()?;
    Ok(ModelPair { directed, ambient, fibre_dim: 1 })
}

/// Two identical vanishing cycles S^{d-1} in the cotangent fibre direction,
/// for d = 2: the fibre is an annulus and both cycles are its core circle.
/// After a small perturbation any ordered pair of cycles meets in two
/// points, one per degree 0 and 1, so every hom space is a copy of the
/// cohomology of the circle and composition is the cup product carried
/// across the identifications:
///
///   hom(X_i, X_j) = K g0_{ij} + K g1_{ij},  |g0| = 0, |g1| = 1,
///   g^r after g^s = g^{r+s} (zero when r + s > 1).
///
/// No immersed polygon forces higher products here, and the regression
/// tables confirm that none are needed. The fibre dimension is 2.
pub fn two_spheres(d: i64, field: Field) -> Result<ModelPair, CatError> {
    if d != 2 {
        return Err(CatError::Unsupported {
            reason: "the two-spheres model is implemented for fibre dimension 2".into(),
        });
    }
    let mut bld = CategoryBuilder::new(field);
    let x1 = bld.add_object("X1");
    let x2 = bld.add_object("X2");
    // gens[i][j][r] : X_{i+1} -> X_{j+1}, degree r
    let mut gens = [[[0usize; 2]; 2]; 2];
    for (i, &src) in [x1, x2].iter().enumerate() {
        for (j, &tgt) in [x1, x2].iter().enumerate() {
            for (r, slot) in gens[i][j].iter_mut().enumerate() {
                let name = if i == j {
                    if r == 0 { format!("e{}", i + 1) } else { format!("f{}", i + 1) }
                } else if i < j {
                    format!("a{r}")
                } else {
                    format!("b{r}")
                };
                *slot = bld.add_generator(name, src, tgt, r as i64)?;
            }
        }
    }
    bld.set_unit(x1, gens[0][0][0])?;
    bld.set_unit(x2, gens[1][1][0])?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for r in 0..2usize {
                    for s in 0..2usize {
                        if r + s > 1 {
                            continue;
                        }
                        // mu^2(y, x) = (-1)^{|x|} y after x
                        let x = gens[i][j][r];
                        let y = gens[j][k][s];
                        let out = gens[i][k][r + s];
                        bld.add_term(&[y, x], out, field.one().koszul(r as i64))?;
                    }
                }
            }
        }
    }
    let ambient = bld.build()?;
    let directed = ambient.directed_subcategory()?;
    Ok(ModelPair { directed, ambient, fibre_dim: 2 })
}

/// Dispatch by model name, as used by the command line and the bundled
/// fixture files. Returns the pair together with provenance notes suitable
/// for a file header. Unspecified parameters take the model's default.
pub fn generate(
    name: &str,
    m: Option<usize>,
    d: Option<i64>,
    field: Field,
) -> Result<(ModelPair, Vec<String>), CatError> {
    match name {
        "empty" => Ok((
            empty_model(field),
            vec!["empty collection of vanishing cycles: no objects".to_string()],
        )),
        "am-quiver" => {
            let m = m.unwrap_or(2);
            let d = d.unwrap_or(3);
            let pair = am_quiver(m, d, field)?;
            Ok((
                pair,
                vec![
                    format!("chain of {m} spheres, fibre dimension {d}"),
                    "directed part: A_m quiver with degree-0 arrows and zero consecutive compositions".to_string(),
                    format!("ambient category: trivial extension by the dual diagonal bimodule shifted by {}", 1 - d),
                ],
            ))
        }
        "branched-cover" => {
            let m = m.unwrap_or(2);
            let pair = branched_cover(m, field)?;
            Ok((
                pair,
                vec![
                    format!("{} points in the fibre, cycles L_j = {{j, j+1}} as 0-spheres, fibre dimension 1", m + 1),
                    "morphisms are spanned by shared points in degree 0; composition matches points".to_string(),
                    "basis: e_j = [j] + [j+1] (unit), s_j = [j+1], u_j, v_j the crossing points".to_string(),
                ],
            ))
        }
        "two-spheres" => {
            let d = d.unwrap_or(2);
            let pair = two_spheres(d, field)?;
            Ok((
                pair,
                vec![
                    "two identical circles in the annulus after perturbation, fibre dimension 2".to_string(),
                    "every hom space is H*(S^1); composition is the cup product".to_string(),
                ],
            ))
        }
        other => Err(CatError::Unsupported {
            reason: format!(
                "unknown model `{other}` (available: empty, am-quiver, branched-cover, two-spheres)"
            ),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_models_validate() {
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(5)] {
            for m in 1..=4 {
                for d in [1, 2, 3] {
                    let pair = am_quiver(m, d, field).unwrap();
                    pair.ambient.validate().unwrap();
                    pair.directed.validate().unwrap();
                }
            }
            for m in 2..=4 {
                let pair = branched_cover(m, field).unwrap();
                pair.ambient.validate().unwrap();
                pair.directed.validate().unwrap();
            }
            let pair = two_spheres(2, field).unwrap();
            pair.ambient.validate().unwrap();
            pair.directed.validate().unwrap();
        }
    }

    #[test]
    fn directed_parts_match_the_directed_subcategory() {
        let field = Field::Rationals;
        for pair in [
            am_quiver(3, 3, field).unwrap(),
            branched_cover(2, field).unwrap(),
            two_spheres(2, field).unwrap(),
        ] {
            // CurvedCategory::build re-verifies the pair structurally
            pair.curved(1).unwrap();
        }
    }

    #[test]
    fn branched_cover_hom_dimensions() {
        let pair = branched_cover(3, Field::Rationals).unwrap();
        let b = &pair.ambient;
        for j in 0..3 {
            assert_eq!(b.hom_basis(j, j).len(), 2, "self-homs are two points of the 0-sphere");
        }
        for j in 0..2 {
            assert_eq!(b.hom_basis(j, j + 1).len(), 1);
            assert_eq!(b.hom_basis(j + 1, j).len(), 1);
        }
        assert_eq!(b.hom_basis(0, 2).len(), 0, "non-neighbouring cycles are disjoint");
        // the directed part has exactly one arrow generator per step
        let a = &pair.directed;
        assert_eq!(a.gen_count(), 3 + 2);
    }

    #[test]
    fn two_spheres_hom_dimensions() {
        let pair = two_spheres(2, Field::Rationals).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(pair.ambient.hom_basis(i, j).len(), 2);
            }
        }
    }

    /// Frozen enumeration fixture: generator counts of the weight-graded
    /// cyclic word basis for the m = 2 branched cover, truncation 5.
    #[test]
    fn branched_cover_word_counts_per_weight() {
        let pair = branched_cover(2, Field::Rationals).unwrap();
        let cc = pair.curved(5).unwrap();
        let words = cc.cyclic_words(5, None);
        let mut per_weight = [0usize; 6];
        for w in &words {
            per_weight[cc.word_weight(w) as usize] += 1;
        }
        assert_eq!(per_weight, [2, 12, 60, 312, 1644, 8700]);
    }

    /// Q = B/A for the branched cover keeps the diagonal non-units and the
    /// downward crossing point.
    #[test]
    fn branched_cover_quotient_basis() {
        let pair = branched_cover(2, Field::Rationals).unwrap();
        let q = pair.quotient().unwrap();
        let names: Vec<&str> = q.gens().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["s1", "s2", "v1"]);
        q.validate().unwrap();
    }

    #[test]
    fn am_quiver_is_a_split_extension() {
        // B = A + A^v[1-d]: the quotient bimodule recovers the shifted dual
        let pair = am_quiver(2, 3, Field::Rationals).unwrap();
        let q = pair.quotient().unwrap();
        let dual = dual_bimodule(&pair.directed).unwrap().shift(1 - 3);
        assert_eq!(q.gens(), dual.gens());
        assert_eq!(q.ops().collect::<Vec<_>>(), dual.ops().collect::<Vec<_>>());
    }

    #[test]
    fn unsupported_parameters_are_rejected() {
        assert!(branched_cover(1, Field::Rationals).is_err());
        assert!(two_spheres(3, Field::Rationals).is_err());
    }
}
