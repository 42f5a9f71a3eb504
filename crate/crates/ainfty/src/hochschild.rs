//! The truncated reduced cyclic bar complex of the curved category, its
//! Betti tables, and the weight spectral sequence.
//!
//! On a word x_n (x) ... (x) x_0 (marked slot x_n leftmost) the differential
//! has three families of terms, with ||x|| the reduced effective degree:
//!
//! * compositions of consecutive chunks,
//!   (-1)^{||x_0|| + ... + ||x_{i-1}||} ... mu^j(x_{i+j-1}, ..., x_i) ... ,
//! * wrap-around compositions, putting
//!   mu(x_{i-1}, ..., x_0, x_n, ..., x_{i+j}) into the marked slot with sign
//!   (-1)^{(||x_0|| + .. + ||x_{i-1}||)(||x_i|| + .. + ||x_n||) + ||x_i|| + .. + ||x_{i+j-1}||},
//! * insertions of the curvature t e at every position strictly to the right
//!   of the marked slot, with the chunk-composition sign.
//!
//! The first two preserve t-weight, the third raises it by one; terms above
//! the truncation weight are discarded, as are terms placing a weight-0 unit
//! in an interior slot (the complex is reduced). d composed with itself must
//! vanish identically; a nonzero square aborts with the offending word, which
//! is the master self-test for the sign conventions.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::complex::FiniteChainComplex;
use crate::curved::{CurvedCategory, CyclicWord, Letter};
use crate::error::BuildError;
use crate::matrix::{SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// Which families of differential terms to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiffPart {
    /// d1 + d2 + d3: the full differential of the truncated complex.
    Full,
    /// d1 + d2 only: the associated graded (fixed t-weight) differential.
    WeightPreserving,
    /// d3 only: curvature insertions, raising the weight by one.
    InsertionOnly,
}

/// All differential terms on one word, merged, truncated at `weight_bound`.
pub fn cyclic_differential(
    cc: &CurvedCategory,
    word: &[Letter],
    weight_bound: u32,
    part: DiffPart,
) -> Vec<(CyclicWord, Scalar)> {
    let b = cc.ambient();
    let field = cc.field();
    let n = word.len() - 1;
    // suffix[j] = sum of reduced degrees of word[j..]; the tail of the first
    // i applied letters is suffix[n - i + 1]
    let mut suffix = vec![0i64; word.len() + 1];
    for j in (0..word.len()).rev() {
        suffix[j] = suffix[j + 1] + cc.reduced_degree(word[j]);
    }
    let tail_parity = |i: usize| suffix[n - i + 1];
    let mut acc: BTreeMap<CyclicWord, Scalar> = BTreeMap::new();
    let mut add = |w: CyclicWord, s: Scalar| {
        let slot = acc.entry(w).or_insert_with(|| field.zero());
        *slot = slot.add(&s);
    };

    if part != DiffPart::InsertionOnly {
        // chunk compositions: replace (x_{i+j-1}, ..., x_i) by mu^j
        for i in 0..=n {
            for j in 1..=(n - i + 1).min(b.max_arity()) {
                let lo = n - i + 1 - j;
                let hi = n - i;
                let key: Vec<usize> = word[lo..=hi].iter().map(|l| l.gen).collect();
                let Some(comb) = b.mu(&key) else { continue };
                let chunk_weight: u32 = word[lo..=hi].iter().map(|l| l.weight).sum();
                let parity = tail_parity(i);
                for (g_out, c) in comb {
                    let letter = Letter { weight: chunk_weight, gen: *g_out };
                    if lo > 0 {
                        // interior slot: quotient by weight-0 units
                        if !cc.letter_in_augmentation(letter) {
                            continue;
                        }
                    } else {
                        debug_assert!(
                            cc.letter_in_curved(letter),
                            "marked-slot output left the curved category"
                        );
                    }
                    let mut w = Vec::with_capacity(word.len() - j + 1);
                    w.extend_from_slice(&word[..lo]);
                    w.push(letter);
                    w.extend_from_slice(&word[hi + 1..]);
                    add(w, c.koszul(parity));
                }
            }
        }
        // wrap-around compositions: mu(x_{i-1}, ..., x_0, x_n, ..., x_{i+j})
        // becomes the new marked slot, the remaining (x_{i+j-1}, ..., x_i)
        // keep their order
        for i in 1..=n {
            let arity_cap = b.max_arity();
            let j_min = (n + 1).saturating_sub(arity_cap);
            for j in j_min..=(n - i) {
                let mut key: Vec<usize> =
                    word[n - i + 1..=n].iter().map(|l| l.gen).collect();
                key.extend(word[0..=n - i - j].iter().map(|l| l.gen));
                let Some(comb) = b.mu(&key) else { continue };
                let chunk_weight: u32 = word[n - i + 1..=n]
                    .iter()
                    .chain(&word[0..=n - i - j])
                    .map(|l| l.weight)
                    .sum();
                let low = tail_parity(i);
                let high = suffix[0] - low;
                let mid = suffix[n - i - j + 1] - suffix[n - i + 1];
                let parity = low * high + mid;
                for (g_out, c) in comb {
                    let letter = Letter { weight: chunk_weight, gen: *g_out };
                    debug_assert!(
                        cc.letter_in_curved(letter),
                        "marked-slot output left the curved category"
                    );
                    let mut w = Vec::with_capacity(j + 1);
                    w.push(letter);
                    w.extend_from_slice(&word[n - i - j + 1..=n - i]);
                    add(w, c.koszul(parity));
                }
            }
        }
    }

    if part != DiffPart::WeightPreserving {
        let total: u32 = word.iter().map(|l| l.weight).sum();
        if total < weight_bound {
            // curvature insertions at every position except left of the
            // marked slot; t e_k sits at the source of x_i
            for i in 0..=n {
                let source = b.gen(word[n - i].gen).source;
                let te = cc.curvature_letter(source);
                let mut w = Vec::with_capacity(word.len() + 1);
                w.extend_from_slice(&word[..=n - i]);
                w.push(te);
                w.extend_from_slice(&word[n - i + 1..]);
                add(w, field.one().koszul(tail_parity(i)));
            }
        }
    }

    acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
}

/// Betti rows keyed by truncation level or weight, in homological degrees.
pub type BettiRows = Vec<(u32, BTreeMap<i64, usize>)>;

/// A chain complex together with the word basis behind each degree.
#[derive(Clone, Debug)]
pub struct WordComplex {
    pub complex: FiniteChainComplex,
    pub basis: BTreeMap<i64, Vec<CyclicWord>>,
}

impl WordComplex {
    pub fn word_index(&self) -> HashMap<&CyclicWord, (i64, usize)> {
        let mut index = HashMap::new();
        for (&deg, words) in &self.basis {
            for (i, w) in words.iter().enumerate() {
                index.insert(w, (deg, i));
            }
        }
        index
    }
}

/// Assemble a chain complex on an arbitrary ordered basis of words: group by
/// degree, build the differential matrices, and verify d after d = 0. The
/// span must be closed under the differential (failure is reported with the
/// escaping word) and every term must raise the degree by exactly one.
pub(crate) fn assemble_basis<W: Ord + Clone + std::hash::Hash>(
    field: crate::scalar::Field,
    words: Vec<W>,
    degree_of: impl Fn(&W) -> i64,
    differential: impl Fn(&W) -> Vec<(W, Scalar)>,
    display: impl Fn(&W) -> String,
) -> Result<(FiniteChainComplex, BTreeMap<i64, Vec<W>>), BuildError> {
    let mut basis: BTreeMap<i64, Vec<W>> = BTreeMap::new();
    for w in words {
        basis.entry(degree_of(&w)).or_default().push(w);
    }
    for list in basis.values_mut() {
        list.sort();
        list.dedup();
    }
    if basis.is_empty() {
        return Ok((FiniteChainComplex::empty(field), basis));
    }
    let mut index: HashMap<W, (i64, usize)> = HashMap::new();
    for (&deg, ws) in &basis {
        for (i, w) in ws.iter().enumerate() {
            index.insert(w.clone(), (deg, i));
        }
    }
    let min_deg = *basis.keys().next().unwrap();
    let max_deg = *basis.keys().last().unwrap();
    let span = (max_deg - min_deg + 1) as usize;
    let dim_at = |deg: i64| basis.get(&deg).map_or(0, Vec::len);
    let dims: Vec<usize> = (0..span).map(|i| dim_at(min_deg + i as i64)).collect();
    let mut diffs = Vec::with_capacity(span.saturating_sub(1));
    for step in 0..span.saturating_sub(1) {
        let deg = min_deg + step as i64;
        let mut triplets = Vec::new();
        if let Some(cols) = basis.get(&deg) {
            for (col, w) in cols.iter().enumerate() {
                for (out, coeff) in differential(w) {
                    let Some(&(odeg, row)) = index.get(&out) else {
                        return Err(BuildError::NotClosed { word: display(w) });
                    };
                    assert_eq!(odeg, deg + 1, "differential must raise the degree by one");
                    triplets.push((row, col, coeff));
                }
            }
        }
        let m = SparseMatrix::from_triplets(field, dim_at(deg + 1), dim_at(deg), triplets)
            .expect("assembled entries are well-formed");
        diffs.push(m);
    }
    let complex = FiniteChainComplex::new(field, min_deg, dims, diffs)?;
    if let Err(crate::error::ComplexError::NotAComplex { degree, column }) = complex.verify_dd() {
        let word = &basis[&degree][column];
        return Err(BuildError::ConventionViolation { degree, word: display(word) });
    }
    Ok((complex, basis))
}

/// Assemble the cyclic-word complex with the chosen differential terms.
pub(crate) fn assemble(
    cc: &CurvedCategory,
    words: Vec<CyclicWord>,
    weight_bound: u32,
    part: DiffPart,
) -> Result<WordComplex, BuildError> {
    let (complex, basis) = assemble_basis(
        cc.field(),
        words,
        |w| cc.word_degree(w),
        |w| cyclic_differential(cc, w, weight_bound, part),
        |w| cc.display_word(w),
    )?;
    Ok(WordComplex { complex, basis })
}

/// The truncated complex C*/F^{p+1}: all cyclic words of weight <= p with
/// the full differential.
pub fn hochschild_complex(cc: &CurvedCategory, p: u32) -> Result<WordComplex, BuildError> {
    assemble(cc, cc.cyclic_words(p, None), p, DiffPart::Full)
}

/// Homology of C*/F^{p+1}, reported in homological degrees (the sign of the
/// cohomological grading is reversed). Degrees in range appear even if zero.
pub fn truncated_hochschild_betti(
    cc: &CurvedCategory,
    p: u32,
) -> Result<BTreeMap<i64, usize>, BuildError> {
    let wc = hochschild_complex(cc, p)?;
    let h = wc.complex.homology_dims()?;
    Ok(h.into_iter().map(|(k, d)| (-k, d)).collect())
}

/// Betti rows for p = 0..=p_max, computed in parallel.
pub fn betti_rows(
    cc: &CurvedCategory,
    p_max: u32,
) -> Result<BettiRows, BuildError> {
    (0..=p_max)
        .into_par_iter()
        .map(|p| truncated_hochschild_betti(cc, p).map(|row| (p, row)))
        .collect()
}

/// The E^1 page of the weight spectral sequence: homology of each fixed
/// weight column under d1 + d2, the ranks of the maps induced by the
/// curvature insertions, and the resulting E^2 dimensions.
///
/// Degrees here are cohomological; weight w sits in spectral-sequence column
/// p = -w.
#[derive(Clone, Debug)]
pub struct E1Page {
    /// `columns[w]`: homology dims of the weight-w column per degree.
    pub columns: Vec<BTreeMap<i64, usize>>,
    /// `d1_ranks[w][k]`: rank of the induced map from (w, k) to (w+1, k+1).
    pub d1_ranks: Vec<BTreeMap<i64, usize>>,
    /// `e2[w][k]`: E^2 dimension where both adjacent d1 maps are inside the
    /// computed window, i.e. for w < columns.len() - 1.
    pub e2: Vec<BTreeMap<i64, usize>>,
}

impl E1Page {
    pub fn max_weight(&self) -> u32 {
        self.columns.len() as u32 - 1
    }
}

pub fn e1_page(cc: &CurvedCategory, p_max: u32) -> Result<E1Page, BuildError> {
    // fixed-weight columns of the associated graded
    let graded: Vec<WordComplex> = (0..=p_max)
        .map(|w| {
            let words: Vec<CyclicWord> = cc
                .cyclic_words(w, None)
                .into_iter()
                .filter(|word| cc.word_weight(word) == w)
                .collect();
            assemble(cc, words, w, DiffPart::WeightPreserving)
        })
        .collect::<Result<_, _>>()?;
    let columns: Vec<BTreeMap<i64, usize>> = graded
        .iter()
        .map(|wc| wc.complex.homology_dims().map_err(BuildError::from))
        .collect::<Result<_, _>>()?;

    // edge column: homology of the weight-0 part is R in degree 0
    let m = cc.ambient().object_count();
    let edge_ok = columns[0].iter().all(|(k, d)| (*k == 0) == (*d > 0))
        && columns[0].get(&0).copied().unwrap_or(0) == m;
    if !(edge_ok || (m == 0 && columns[0].is_empty())) {
        return Err(BuildError::EdgeColumn {
            expected: m,
            found: format!("{:?}", columns[0]),
        });
    }

    let mut d1_ranks: Vec<BTreeMap<i64, usize>> = Vec::new();
    for w in 0..p_max {
        let (src, tgt) = (&graded[w as usize], &graded[(w + 1) as usize]);
        let tgt_index = tgt.word_index();
        let mut ranks = BTreeMap::new();
        for (&deg, words) in &src.basis {
            // cycles in the source column at this degree
            let cycles: Vec<SparseVec> = match src.complex.differential(deg) {
                Some(d) => d.kernel_basis(),
                None => (0..words.len()).map(|j| vec![(j, cc.field().one())]).collect(),
            };
            if cycles.is_empty() {
                continue;
            }
            // insertion matrix into the next column
            let tgt_dim = tgt.basis.get(&(deg + 1)).map_or(0, Vec::len);
            let mut triplets = Vec::new();
            for (col, word) in words.iter().enumerate() {
                for (out, coeff) in cyclic_differential(cc, word, w + 1, DiffPart::InsertionOnly) {
                    let (odeg, row) = *tgt_index
                        .get(&out)
                        .expect("insertion image must be an enumerated weight-(w+1) word");
                    assert_eq!(odeg, deg + 1);
                    triplets.push((row, col, coeff));
                }
            }
            let ins = SparseMatrix::from_triplets(cc.field(), tgt_dim, words.len(), triplets)
                .expect("well-formed insertion matrix");
            // images of cycles must again be cycles
            let images: Vec<SparseVec> = cycles.iter().map(|z| ins.apply(z)).collect();
            if let Some(d_next) = tgt.complex.differential(deg + 1) {
                for (z, img) in cycles.iter().zip(&images) {
                    if !d_next.apply(img).is_empty() {
                        let lead = &src.basis[&deg][z[0].0];
                        return Err(BuildError::InducedMapIllDefined {
                            word: cc.display_word(lead),
                        });
                    }
                }
            }
            // rank of the induced map on homology: images modulo the
            // boundaries entering degree deg + 1 of the target column
            let boundaries = tgt
                .complex
                .differential(deg)
                .cloned()
                .unwrap_or_else(|| SparseMatrix::zero(cc.field(), tgt_dim, 0));
            let mut img_triplets = Vec::new();
            for (j, img) in images.iter().enumerate() {
                for (i, v) in img {
                    img_triplets.push((*i, j, v.clone()));
                }
            }
            let img_mat =
                SparseMatrix::from_triplets(cc.field(), tgt_dim, images.len(), img_triplets)
                    .expect("well-formed image matrix");
            let rank = img_mat.rank_mod(&boundaries);
            if rank > 0 {
                ranks.insert(deg, rank);
            }
        }
        d1_ranks.push(ranks);
    }

    let mut e2: Vec<BTreeMap<i64, usize>> = Vec::new();
    for w in 0..p_max as usize {
        let mut row = BTreeMap::new();
        for (&k, &h) in &columns[w] {
            let out = d1_ranks[w].get(&k).copied().unwrap_or(0);
            let inc = if w == 0 {
                0
            } else {
                d1_ranks[w - 1].get(&(k - 1)).copied().unwrap_or(0)
            };
            row.insert(k, h - out - inc);
        }
        e2.push(row);
    }

    Ok(E1Page { columns, d1_ranks, e2 })
}
