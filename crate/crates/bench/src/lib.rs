//! Shared fixtures for the kernel benchmarks.

use fano4::fan::{product_fan, projective_space_fan, split_bundle_fan, star_subdivision, Fan};

/// P² × S₄: the largest catalog fan (9 rays, 18 maximal cones).
pub fn k4_fan() -> Fan {
    let p2 = projective_space_fan(2).unwrap();
    let mut s4 = projective_space_fan(2).unwrap();
    for sigma in [[0usize, 1], [0, 2], [1, 2]] {
        s4 = star_subdivision(&s4, &sigma).unwrap();
    }
    product_fan(&p2, &s4).unwrap()
}

/// The degree-(0,0,2) bundle fan (6 rays, 9 maximal cones).
pub fn bundle_fan() -> Fan {
    split_bundle_fan(&[0, 0, 2]).unwrap().into_fan()
}
