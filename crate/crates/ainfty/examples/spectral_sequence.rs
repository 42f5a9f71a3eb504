//! The weight spectral sequence on two fixtures.
//!
//! For the split extension (am-quiver, B = A + A^v[-2]) the d1 differential
//! has full rank everywhere and E2 vanishes in every bidegree inside the
//! window. The branched cover is not split and keeps nonzero E2 classes.

use ainfty::hochschild::e1_page;
use ainfty::models::{am_quiver, branched_cover, ModelPair};
use ainfty::scalar::Field;
use std::collections::BTreeMap;

fn show(name: &str, pair: &ModelPair, pmax: u32) {
    let cc = pair.curved(pmax).unwrap();
    let page = e1_page(&cc, pmax).unwrap();
    println!("{name}:");
    for (w, col) in page.columns.iter().enumerate() {
        let nz: BTreeMap<i64, usize> =
            col.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (-k, *d)).collect();
        println!("  E1 weight {w}: {nz:?}");
    }
    for (w, ranks) in page.d1_ranks.iter().enumerate() {
        let nz: BTreeMap<i64, usize> = ranks.iter().map(|(k, r)| (-k, *r)).collect();
        println!("  d1 ranks {w} -> {}: {nz:?}", w + 1);
    }
    for (w, e2) in page.e2.iter().enumerate() {
        let nz: BTreeMap<i64, usize> =
            e2.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (-k, *d)).collect();
        println!("  E2 weight {w}: {nz:?}");
    }
    println!();
}

fn main() {
    let split = am_quiver(2, 3, Field::Rationals).unwrap();
    show("split extension am-quiver(m=2, d=3)", &split, 4);
    let cover = branched_cover(2, Field::Rationals).unwrap();
    show("branched cover (m=2)", &cover, 4);
}
