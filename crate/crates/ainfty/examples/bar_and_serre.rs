//! Truncated bar complexes and the structural checks around them:
//!
//! * B*/F^1 computes the dual of the self-morphisms of the simple module;
//! * the cone of curvature insertions inside B*/F^2 is acyclic;
//! * consequently B*/F^2 has the homology of the one-module-letter quotient
//!   T(A_+[1]) (x) t Q[1] (x) T(A_+[1]) with Q = B/A.

use ainfty::bar::{bar_betti, insert_a_check, serre_step_report, simple_hom_complex};
use ainfty::models::two_spheres;
use ainfty::report::BettiReport;
use ainfty::scalar::Field;
use std::collections::BTreeMap;

fn main() {
    let pair = two_spheres(2, Field::Rationals).unwrap();
    let cc = pair.curved(2).unwrap();

    let mut report = BettiReport::new(Field::Rationals, "two-spheres d=2");
    for p in 0..=2 {
        report.push_row(p, bar_betti(&cc, p).unwrap());
    }
    println!("bar complex Betti rows:");
    print!("{}", report.render_table("p"));

    let hom = simple_hom_complex(&pair.directed).unwrap();
    let hom_h: BTreeMap<i64, usize> = hom
        .homology_dims()
        .unwrap()
        .into_iter()
        .filter(|(_, d)| *d > 0)
        .collect();
    println!("self-morphisms of the simple module (cohomological degrees): {hom_h:?}");

    let cone = insert_a_check(&cc).unwrap();
    println!(
        "insertion cone: {} chain generators, acyclic = {}",
        cone.dims.values().sum::<usize>(),
        cone.acyclic()
    );

    let serre = serre_step_report(&cc).unwrap();
    println!(
        "B*/F^2 homology matches the quotient step: {} ({:?})",
        serre.matches(),
        serre
            .step_homology
            .iter()
            .filter(|(_, d)| **d > 0)
            .collect::<BTreeMap<_, _>>()
    );
}
