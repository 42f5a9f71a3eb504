//! Betti tables for two identical circle vanishing cycles (fibre dimension
//! 2), over Q and over Z/2. The total space deformation retracts to a disc
//! cotangent bundle of the 2-sphere, and the rows approximate the loop-space
//! cohomology of S^2: over Z/2 extra torsion classes appear in the middle
//! degrees.

use ainfty::hochschild::betti_rows;
use ainfty::models::two_spheres;
use ainfty::report::BettiReport;
use ainfty::scalar::Field;

fn main() {
    for field in [Field::Rationals, Field::Prime(2)] {
        let pair = two_spheres(2, field).unwrap();
        let cc = pair.curved(3).unwrap();
        let mut report = BettiReport::new(field, "two-spheres d=2");
        for (p, row) in betti_rows(&cc, 3).unwrap() {
            report.push_row(p, row);
        }
        println!("two identical cycles, d = 2, over {field}:");
        print!("{}", report.render_table("p"));
        println!();
    }
}
