//! Seeded random cochains and chains for the randomized trials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comp_module::{CompModule, Complex};
use crate::operad::Operad;
use crate::scalar::{FieldSpec, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max_terms` coordinates with small nonzero integer coefficients.
fn random_coords(rng: &mut ChaCha8Rng, field: FieldSpec, dim: usize, max_terms: usize) -> Vec<(usize, Scalar)> {
    if dim == 0 {
        return Vec::new();
    }
    let terms = rng.gen_range(1..=max_terms.min(dim).max(1));
    (0..terms)
        .map(|_| {
            let c = loop {
                let c = rng.gen_range(-3i64..=3);
                if c != 0 && !field.from_i64(c).is_zero() {
                    break c;
                }
            };
            (rng.gen_range(0..dim), field.from_i64(c))
        })
        .collect()
}

pub fn random_cochain<O: Operad>(op: &O, arity: usize, complex: Complex, rng: &mut ChaCha8Rng) -> O::Elem {
    let coords = random_coords(rng, op.field(), op.dim(arity, complex), 4);
    op.from_coords(arity, complex, &coords)
}

pub fn random_chain<M: CompModule>(m: &M, degree: usize, complex: Complex, rng: &mut ChaCha8Rng) -> M::Elem {
    let coords = random_coords(rng, m.field(), m.dim(degree, complex), 4);
    m.from_coords(degree, complex, &coords)
}
