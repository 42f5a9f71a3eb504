//! Small hand-built categories shared across unit tests.

use crate::cat::{AInftyCategory, CategoryBuilder};
use crate::scalar::Field;

/// One object, hom = K e, mu^2(e, e) = e.
pub fn point_category(field: Field) -> AInftyCategory {
    let mut b = CategoryBuilder::new(field);
    let x = b.add_object("X");
    let e = b.add_generator("e", x, x, 0).unwrap();
    b.add_term(&[e, e], e, field.one()).unwrap();
    b.set_unit(x, e).unwrap();
    b.build().unwrap()
}

/// One object, hom = K e + K q with |q| = dq, unital mu^2, q^2 = 0.
pub fn trivial_extension_of_point(field: Field, dq: i64) -> AInftyCategory {
    let mut b = CategoryBuilder::new(field);
    let x = b.add_object("X");
    let e = b.add_generator("e", x, x, 0).unwrap();
    let q = b.add_generator("q", x, x, dq).unwrap();
    b.add_term(&[e, e], e, field.one()).unwrap();
    b.add_term(&[q, e], q, field.one()).unwrap();
    b.add_term(&[e, q], q, field.one().koszul(dq)).unwrap();
    b.set_unit(x, e).unwrap();
    b.build().unwrap()
}

/// Directed A2 quiver: one arrow u: X1 -> X2 of the given degree.
pub fn a2_quiver(field: Field, arrow_degree: i64) -> AInftyCategory {
    let mut b = CategoryBuilder::new(field);
    let x1 = b.add_object("X1");
    let x2 = b.add_object("X2");
    let e1 = b.add_generator("e1", x1, x1, 0).unwrap();
    let e2 = b.add_generator("e2", x2, x2, 0).unwrap();
    let u = b.add_generator("u", x1, x2, arrow_degree).unwrap();
    b.set_unit(x1, e1).unwrap();
    b.set_unit(x2, e2).unwrap();
    b.add_term(&[e1, e1], e1, field.one()).unwrap();
    b.add_term(&[e2, e2], e2, field.one()).unwrap();
    b.add_term(&[u, e1], u, field.one()).unwrap();
    b.add_term(&[e2, u], u, field.one().koszul(arrow_degree)).unwrap();
    b.build().unwrap()
}

/// A3 linear quiver with composition: a: X1 -> X2, b: X2 -> X3, mu^2(b,a) = c.
pub fn a3_with_composition(field: Field) -> AInftyCategory {
    let f = field;
    let mut bld = CategoryBuilder::new(f);
    let x1 = bld.add_object("X1");
    let x2 = bld.add_object("X2");
    let x3 = bld.add_object("X3");
    let e1 = bld.add_generator("e1", x1, x1, 0).unwrap();
    let e2 = bld.add_generator("e2", x2, x2, 0).unwrap();
    let e3 = bld.add_generator("e3", x3, x3, 0).unwrap();
    let a = bld.add_generator("a", x1, x2, 0).unwrap();
    let b = bld.add_generator("b", x2, x3, 0).unwrap();
    let c = bld.add_generator("c", x1, x3, 0).unwrap();
    for (o, e) in [(x1, e1), (x2, e2), (x3, e3)] {
        bld.set_unit(o, e).unwrap();
    }
    for (e, _) in [(e1, x1), (e2, x2), (e3, x3)] {
        bld.add_term(&[e, e], e, f.one()).unwrap();
    }
    for (g, es, et) in [(a, e1, e2), (b, e2, e3), (c, e1, e3)] {
        bld.add_term(&[g, es], g, f.one()).unwrap();
        bld.add_term(&[et, g], g, f.one()).unwrap();
    }
    bld.add_term(&[b, a], c, f.one()).unwrap();
    bld.build().unwrap()
}
