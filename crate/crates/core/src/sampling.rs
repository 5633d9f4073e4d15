//! Seeded random GRS codes for property checks and verification suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::grs::{GrsCode, InnerProduct};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_nonzero(f: &Field, rng: &mut SampleRng) -> Elem {
    f.exp(rng.gen_range(0..f.order() as i64 - 1))
}

/// GRS_k(a, v) with n distinct random points and random nonzero multipliers.
pub fn random_grs(f: &Arc<Field>, n: usize, k: usize, rng: &mut SampleRng) -> Result<GrsCode> {
    if n > f.order() as usize || k > n || k == 0 {
        return Err(Error::BadParameters(format!("no [{n},{k}] GRS code over GF({})", f.order())));
    }
    let mut pts: Vec<Elem> = f.elements().collect();
    pts.shuffle(rng);
    pts.truncate(n);
    let v = (0..n).map(|_| random_nonzero(f, rng)).collect();
    GrsCode::new(f, pts, v, k, 0, false)
}

/// GRS_k on every field element with unit multipliers; its Gram matrices
/// are power sums and mostly vanish.
pub fn full_field_grs(f: &Arc<Field>, k: usize) -> Result<GrsCode> {
    let n = f.order() as usize;
    GrsCode::new(f, f.elements().collect(), vec![Elem::ONE; n], k, 0, false)
}

/// A full-field code on a random n-subset with a few random coordinate
/// scalings; tends to keep a large hull.
pub fn planted_grs(f: &Arc<Field>, n: usize, k: usize, scalings: usize, rng: &mut SampleRng) -> Result<GrsCode> {
    let full = full_field_grs(f, k)?;
    let mut idx: Vec<usize> = (0..full.n()).collect();
    idx.shuffle(rng);
    idx.truncate(n);
    idx.sort_unstable();
    let a = idx.iter().map(|&i| full.points()[i]).collect();
    let mut code = GrsCode::new(f, a, vec![Elem::ONE; n], k, 0, false)?;
    for _ in 0..scalings {
        let pos = rng.gen_range(0..n);
        code = code.scale_coordinate(pos, random_nonzero(f, rng))?;
    }
    Ok(code)
}

/// Draws codes until one has hull at least `min_hull` under `inner`.
#[allow(clippy::too_many_arguments)]
pub fn sample_with_hull(
    f: &Arc<Field>,
    inner: InnerProduct,
    min_hull: usize,
    n_range: (usize, usize),
    k_range: (usize, usize),
    planted: bool,
    rng: &mut SampleRng,
    max_tries: usize,
) -> Result<GrsCode> {
    for _ in 0..max_tries {
        let n = rng.gen_range(n_range.0..=n_range.1.min(f.order() as usize));
        let k = rng.gen_range(k_range.0..=k_range.1.min(n));
        let code = if planted {
            let s = rng.gen_range(0..3);
            planted_grs(f, n, k, s, rng)?
        } else {
            random_grs(f, n, k, rng)?
        };
        if code.hull(inner)?.hull_dim >= min_hull {
            return Ok(code);
        }
    }
    Err(Error::BadParameters(format!("no code with hull >= {min_hull} in {max_tries} draws")))
}
