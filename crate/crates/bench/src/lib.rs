//! Shared fixtures for the benchmarks.

use inq_core::{Algebra, Element, Tensor, C64};

/// A dense, deterministic tensor with no special structure.
pub fn dense_tensor(alg: &Algebra, salt: u64) -> Tensor {
    let coeffs = (0..alg.tensor_dim() as u64)
        .map(|x| {
            let h = x.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt.wrapping_mul(0xbf58_476d_1ce4_e5b9));
            C64::new(((h >> 11) % 1000) as f64 / 500.0 - 1.0, ((h >> 31) % 1000) as f64 / 500.0 - 1.0)
        })
        .collect();
    alg.devectorize(coeffs).expect("length matches")
}

/// `e_{1n} ⊗ e_{1n}` in `M_n ⊗ M_n`.
pub fn corner_square(alg: &Algebra) -> Tensor {
    let n = alg.dims()[0];
    let e = Element::unit(alg, 0, 0, n - 1).expect("single factor");
    alg.tensor(&e, &e).expect("same algebra")
}
