//! The reduced Connes complex of the t-adic category without curvature
//! (cyclic coinvariants, graded by t-weight) and the Donaldson complex.
//!
//! A weight-w generator in normal form is a cyclic word whose marked slot
//! carries a positive t-power; rotating block-wise (one t-letter together
//! with the weight-0 letters following it) reaches every other normal form
//! of the same underlying cyclic chain. Coinvariants are taken with Koszul
//! signs: an orbit dies when some rotation fixes the word with sign -1
//! (which cannot happen in characteristic 2).
//!
//! The weight-1 piece has trivial rotations, and after shifting degrees down
//! by d + 2 it is precisely the Donaldson complex `(B[d] (x) T(A_+[1]))^diag`,
//! with the differential inherited from the composition terms.

use std::collections::{BTreeMap, HashMap};

use crate::complex::FiniteChainComplex;
use crate::curved::{CurvedCategory, CyclicWord};
use crate::error::BuildError;
use crate::hochschild::{assemble, assemble_basis, cyclic_differential, DiffPart, WordComplex};

/// One weight piece of the reduced Connes complex.
#[derive(Clone, Debug)]
pub struct ConnesWeightPiece {
    pub weight: u32,
    pub complex: FiniteChainComplex,
    /// Orbit representatives (lexicographically smallest rotation) per degree.
    pub reps: BTreeMap<i64, Vec<CyclicWord>>,
}

#[derive(Clone, Debug)]
pub struct ConnesComplex {
    /// Pieces of weight 1..=p. Weight 0 is empty: a closed chain of
    /// augmentation-ideal letters cannot exist in a directed category.
    pub pieces: Vec<ConnesWeightPiece>,
}

impl ConnesComplex {
    pub fn betti(&self) -> Result<crate::hochschild::BettiRows, BuildError> {
        self.pieces
            .iter()
            .map(|p| {
                let h = p.complex.homology_dims()?;
                Ok((p.weight, h.into_iter().map(|(k, d)| (-k, d)).collect()))
            })
            .collect()
    }
}

/// Words of weight exactly w whose marked slot carries a t-power, i.e. the
/// normal forms of the weight-w cyclic generators.
fn normal_form_words(cc: &CurvedCategory, w: u32) -> Vec<CyclicWord> {
    cc.cyclic_words(w, None)
        .into_iter()
        .filter(|word| cc.word_weight(word) == w && word[0].weight >= 1)
        .collect()
}

/// Length of the leading block: the marked t-letter together with the
/// weight-0 letters following it.
fn leading_block_len(word: &[crate::curved::Letter]) -> usize {
    1 + word[1..].iter().take_while(|l| l.weight == 0).count()
}

/// Rotate the leading block to the right end; returns the rotated word and
/// the Koszul parity of moving the block past the rest.
fn block_rotate(cc: &CurvedCategory, word: &[crate::curved::Letter]) -> (CyclicWord, i64) {
    let k = leading_block_len(word);
    let block: i64 = word[..k].iter().map(|&l| cc.reduced_degree(l)).sum();
    let rest: i64 = word[k..].iter().map(|&l| cc.reduced_degree(l)).sum();
    let mut out = Vec::with_capacity(word.len());
    out.extend_from_slice(&word[k..]);
    out.extend_from_slice(&word[..k]);
    (out, block * rest)
}

/// The signed rotation orbit of a normal-form word: members with the parity
/// relating them to the input, plus whether the orbit dies in coinvariants
/// (a rotation fixes the word with odd parity, in characteristic != 2).
fn orbit(cc: &CurvedCategory, word: &CyclicWord) -> (Vec<(CyclicWord, i64)>, bool) {
    let mut members = vec![(word.clone(), 0i64)];
    let (mut current, mut parity) = (word.clone(), 0i64);
    loop {
        let (next, step) = block_rotate(cc, &current);
        parity += step;
        if &next == word {
            let killed =
                parity.rem_euclid(2) == 1 && cc.field().characteristic() != 2;
            return (members, killed);
        }
        members.push((next.clone(), parity));
        current = next;
    }
}

/// The reduced Connes complex of the weight-truncated category (no
/// curvature), one finite complex per weight 1..=p. Over positive
/// characteristic the cyclic-homology interpretation is only conjectural;
/// the reporting layer attaches a warning, the complexes themselves are
/// defined over any field.
pub fn connes_complex(cc: &CurvedCategory, p: u32) -> Result<ConnesComplex, BuildError> {
    let field = cc.field();
    let mut pieces = Vec::new();
    for w in 1..=p {
        let words = normal_form_words(cc, w);
        // orbit bookkeeping: representative and relative parity per word
        let mut reps: Vec<CyclicWord> = Vec::new();
        let mut lookup: HashMap<CyclicWord, Option<(CyclicWord, i64)>> = HashMap::new();
        for word in &words {
            if lookup.contains_key(word) {
                continue;
            }
            let (members, killed) = orbit(cc, word);
            let (rep, rep_parity) =
                members.iter().min_by(|a, b| a.0.cmp(&b.0)).expect("orbit nonempty").clone();
            if killed {
                for (m, _) in members {
                    lookup.insert(m, None);
                }
            } else {
                reps.push(rep.clone());
                for (m, parity) in members {
                    lookup.insert(m, Some((rep.clone(), parity - rep_parity)));
                }
            }
        }
        let project = |rep: &CyclicWord| {
            let mut merged: BTreeMap<CyclicWord, crate::scalar::Scalar> = BTreeMap::new();
            for (out, coeff) in cyclic_differential(cc, rep, w, DiffPart::WeightPreserving) {
                match lookup.get(&out).expect("the image stays within weight w") {
                    None => {} // killed orbit
                    Some((orep, parity)) => {
                        let v = coeff.koszul(*parity);
                        let slot = merged.entry(orep.clone()).or_insert_with(|| field.zero());
                        *slot = slot.add(&v);
                    }
                }
            }
            merged.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        };
        let (complex, basis) = assemble_basis(
            field,
            reps,
            |r| cc.word_degree(r),
            project,
            |r| cc.display_word(r),
        )?;
        pieces.push(ConnesWeightPiece { weight: w, complex, reps: basis });
    }
    Ok(ConnesComplex { pieces })
}

/// The Donaldson complex for fibre dimension d: the weight-1 cyclic piece
/// `(t B[1] (x) T(A_+[1]))^diag` with the composition differential, with
/// degrees lowered by d + 2 so that a word t b (x) a_k (x) ... (x) a_1 sits
/// in degree |b| - d + sum (|a_i| - 1).
pub fn donaldson_complex(cc: &CurvedCategory, fibre_dim: i64) -> Result<WordComplex, BuildError> {
    let words = normal_form_words(cc, 1);
    let wc = assemble(cc, words, 1, DiffPart::WeightPreserving)?;
    let shift = fibre_dim + 2;
    Ok(WordComplex {
        complex: wc.complex.shift_degrees(-shift),
        basis: wc.basis.into_iter().map(|(k, v)| (k - shift, v)).collect(),
    })
}

/// Betti numbers of the Donaldson complex in homological degrees.
pub fn donaldson_betti(
    cc: &CurvedCategory,
    fibre_dim: i64,
) -> Result<BTreeMap<i64, usize>, BuildError> {
    let wc = donaldson_complex(cc, fibre_dim)?;
    let h = wc.complex.homology_dims()?;
    Ok(h.into_iter().map(|(k, d)| (-k, d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SparseMatrix;
    use crate::models;
    use crate::scalar::{Field, Scalar};
    use crate::testutil::trivial_extension_of_point;

    fn nonzero(h: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
        h.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (*k, *d)).collect()
    }

    /// Independent oracle: the coinvariant dimension per degree equals
    /// (number of all C_+-letter cyclic words) minus rank(1 - signed
    /// single-step rotation) on their span.
    fn coinvariant_dims_by_quotient(
        cc: &CurvedCategory,
        w: u32,
    ) -> BTreeMap<i64, usize> {
        let field = cc.field();
        let all: Vec<CyclicWord> = cc
            .cyclic_words(w, None)
            .into_iter()
            .filter(|word| {
                cc.word_weight(word) == w && cc.letter_in_augmentation(word[0])
            })
            .collect();
        let mut by_degree: BTreeMap<i64, Vec<CyclicWord>> = BTreeMap::new();
        for word in all {
            by_degree.entry(cc.word_degree(&word)).or_default().push(word);
        }
        let mut out = BTreeMap::new();
        for (deg, words) in by_degree {
            let index: std::collections::HashMap<&CyclicWord, usize> =
                words.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
            for (col, word) in words.iter().enumerate() {
                // single-step rotation: marked slot moves to the right end
                let head = cc.reduced_degree(word[0]);
                let rest: i64 = word[1..].iter().map(|&l| cc.reduced_degree(l)).sum();
                let mut rotated = word[1..].to_vec();
                rotated.push(word[0]);
                let sign = field.one().koszul(head * rest);
                // (1 - tau) column
                let mut column: BTreeMap<usize, Scalar> = BTreeMap::new();
                *column.entry(col).or_insert_with(|| field.zero()) = field.one();
                let r = index[&rotated];
                let slot = column.entry(r).or_insert_with(|| field.zero());
                *slot = slot.sub(&sign);
                for (row, v) in column {
                    if !v.is_zero() {
                        triplets.push((row, col, v));
                    }
                }
            }
            let m = SparseMatrix::from_triplets(field, words.len(), words.len(), triplets)
                .unwrap();
            let dim = words.len() - m.rank();
            if dim > 0 {
                out.insert(deg, dim);
            }
        }
        out
    }

    #[test]
    fn coinvariant_dimensions_match_the_quotient_oracle() {
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
            for dq in [1, 2] {
                let b = trivial_extension_of_point(field, dq);
                let cc = CurvedCategory::from_ambient(b, 3).unwrap();
                let connes = connes_complex(&cc, 3).unwrap();
                for piece in &connes.pieces {
                    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
                    for (deg, list) in &piece.reps {
                        if !list.is_empty() {
                            dims.insert(*deg, list.len());
                        }
                    }
                    assert_eq!(
                        dims,
                        coinvariant_dims_by_quotient(&cc, piece.weight),
                        "weight {} over {field}",
                        piece.weight
                    );
                }
            }
        }
    }

    #[test]
    fn weight_one_orbits_are_fixed_points() {
        let pair = models::branched_cover(2, Field::Rationals).unwrap();
        let cc = pair.curved(1).unwrap();
        let words = normal_form_words(&cc, 1);
        for w in &words {
            let (members, killed) = orbit(&cc, w);
            assert_eq!(members.len(), 1);
            assert!(!killed);
        }
    }

    #[test]
    fn weight_one_connes_piece_is_the_shifted_donaldson_complex() {
        for pair in [
            models::branched_cover(2, Field::Rationals).unwrap(),
            models::two_spheres(2, Field::Rationals).unwrap(),
            models::am_quiver(3, 3, Field::Rationals).unwrap(),
        ] {
            let cc = pair.curved(1).unwrap();
            let connes = connes_complex(&cc, 1).unwrap();
            let piece = &connes.pieces[0];
            let don = donaldson_complex(&cc, pair.fibre_dim).unwrap();
            let shift = pair.fibre_dim + 2;
            let hc: BTreeMap<i64, usize> = piece.complex.homology_dims().unwrap();
            let hd: BTreeMap<i64, usize> = don.complex.homology_dims().unwrap();
            let shifted: BTreeMap<i64, usize> =
                hd.into_iter().map(|(k, d)| (k + shift, d)).collect();
            assert_eq!(nonzero(&hc), nonzero(&shifted));
            // generators correspond degree by degree under the same shift
            for (deg, list) in &don.basis {
                assert_eq!(
                    list.len(),
                    piece.reps.get(&(deg + shift)).map_or(0, Vec::len)
                );
            }
        }
    }

    /// m = 1, B = K e + K q: the Donaldson complex is B[d] with zero
    /// differential (no augmentation letters exist).
    #[test]
    fn donaldson_of_the_extension_point_is_shifted_b() {
        let b = trivial_extension_of_point(Field::Rationals, 1);
        let cc = CurvedCategory::from_ambient(b, 1).unwrap();
        let d = 2;
        let don = donaldson_complex(&cc, d).unwrap();
        // words [t e], [t q] in degrees -d and 1 - d
        let h = nonzero(&don.complex.homology_dims().unwrap());
        assert_eq!(h, BTreeMap::from([(-d, 1), (1 - d, 1)]));
        assert!(don.complex.differential(-d).unwrap().is_zero());
    }

    /// Weight-2 coinvariants of the extension point by explicit orbit
    /// counting: the four normal-form words in each relevant degree pair up
    /// under rotation, and the self-fixed ones survive or die by the sign.
    #[test]
    fn weight_two_orbit_count_of_the_extension_point() {
        // |q| = 1: letters te, tq have reduced degrees 1, 2.
        // Normal-form weight-2 words: [t^2 e], [t^2 q], [te|te], [te|tq],
        // [tq|te], [tq|tq].
        // Rotation identifies [te|tq] ~ [tq|te] (one orbit), fixes [te|te]
        // with parity ||te||^2 = 1 (killed over Q), fixes [tq|tq] with parity
        // ||tq||^2 = 0 (survives).
        let b = trivial_extension_of_point(Field::Rationals, 1);
        let cc = CurvedCategory::from_ambient(b, 2).unwrap();
        let connes = connes_complex(&cc, 2).unwrap();
        let piece = &connes.pieces[1];
        let counts: BTreeMap<i64, usize> =
            piece.reps.iter().map(|(d, l)| (*d, l.len())).collect();
        // degrees: [t^2 e] -> 4, [t^2 q] -> 5, [te|te] -> 3 (killed),
        // [te|tq] ~ [tq|te] -> 4, [tq|tq] -> 5
        assert_eq!(counts, BTreeMap::from([(4, 2), (5, 2)]));
        // over F2 the killed orbit survives
        let b2 = trivial_extension_of_point(Field::Prime(2), 1);
        let cc2 = CurvedCategory::from_ambient(b2, 2).unwrap();
        let connes2 = connes_complex(&cc2, 2).unwrap();
        let counts2: BTreeMap<i64, usize> =
            connes2.pieces[1].reps.iter().map(|(d, l)| (*d, l.len())).collect();
        assert_eq!(counts2, BTreeMap::from([(3, 1), (4, 2), (5, 2)]));
    }
}
