//! Shared fixtures for the benchmarks: deterministic matrices and algebras
//! sized like the ones the verification suite exercises.

use std::sync::Arc;

use oprime_core::algebra::{build_algebra, GFunctional, GenReductiveAlgebra};
use oprime_core::linalg::{rat, ratio, Rational, RationalMatrix};
use oprime_core::roots::{build_root_system, cartan_by_name, Weight};

/// A dense-ish rational matrix with entries drawn from a fixed cycle of
/// small fractions (deterministic, no RNG).
pub fn dense_matrix(rows: usize, cols: usize) -> RationalMatrix {
    let pool: Vec<Rational> = vec![
        rat(1),
        rat(-2),
        ratio(1, 2),
        rat(3),
        ratio(-2, 3),
        rat(0),
        ratio(5, 4),
    ];
    let mut m = RationalMatrix::zero(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, pool[(r * cols + c) % pool.len()].clone());
        }
    }
    m
}

pub fn gl2_like() -> (Arc<GenReductiveAlgebra>, GFunctional) {
    let rs = Arc::new(build_root_system(cartan_by_name("A1").unwrap()).unwrap());
    let algebra = build_algebra(rs, &[Weight::from_ints(&[0])]).unwrap();
    let g = algebra.functional(&[rat(3)]).unwrap();
    (algebra, g)
}

pub fn sl3() -> Arc<GenReductiveAlgebra> {
    let rs = Arc::new(build_root_system(cartan_by_name("A2").unwrap()).unwrap());
    build_algebra(rs, &[]).unwrap()
}
