//! Building a category by hand through the API, validating it, and running
//! the pipeline on it: a one-object category K e + K q with q^2 = 0 and
//! |q| = 1 (the sphere-like extension of the ground field).
//!
//! Also demonstrates the file format round trip.

use ainfty::cat::CategoryBuilder;
use ainfty::curved::CurvedCategory;
use ainfty::format::{parse_category, serialize_category};
use ainfty::hochschild::betti_rows;
use ainfty::report::BettiReport;
use ainfty::scalar::Field;

fn main() {
    let field = Field::Rationals;
    let mut b = CategoryBuilder::new(field);
    let x = b.add_object("X");
    let e = b.add_generator("e", x, x, 0).unwrap();
    let q = b.add_generator("q", x, x, 1).unwrap();
    b.set_unit(x, e).unwrap();
    b.add_term(&[e, e], e, field.one()).unwrap();
    b.add_term(&[q, e], q, field.one()).unwrap();
    // mu^2(e, q) = (-1)^{|q|} q under the unit convention
    b.add_term(&[e, q], q, field.one().neg()).unwrap();
    let cat = b.build().unwrap();
    cat.validate().unwrap();
    println!("built and validated: {} generators over {}", cat.gen_count(), cat.field());

    let text = serialize_category(&cat, &["one object, hom = K e + K q, q^2 = 0"]);
    println!("--- file form ---\n{text}-----------------");
    let back = parse_category(&text, None).unwrap();
    assert_eq!(back.gens(), cat.gens());

    let cc = CurvedCategory::from_ambient(cat, 4).unwrap();
    let mut report = BettiReport::new(field, &text);
    for (p, row) in betti_rows(&cc, 4).unwrap() {
        report.push_row(p, row);
    }
    println!("truncated cyclic bar homology:");
    print!("{}", report.render_table("p"));
}
