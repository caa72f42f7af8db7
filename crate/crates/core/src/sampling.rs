//! Deterministic sample points in coordinate boxes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{symmetric_grid, Q};

const SEED: u64 = 0x636f_6973_6f00;

/// Points of the tensor grid `symmetric_grid(radius, grid)^dim` in
/// lexicographic order. When the grid has more than `cap` points, a fixed
/// pseudo-random subset of `cap` grid points (always containing the centre) is
/// returned instead, still in lexicographic order.
pub fn box_grid(dim: usize, radius: &Q, grid: usize, cap: usize) -> Vec<Vec<Q>> {
    let axis = symmetric_grid(radius, grid);
    if dim == 0 {
        return vec![Vec::new()];
    }
    if axis.is_empty() || cap == 0 {
        return Vec::new();
    }
    let total = (axis.len() as u128).checked_pow(dim as u32);
    let decode = |mut flat: u128| -> Vec<Q> {
        let mut p = vec![Q::default(); dim];
        for slot in p.iter_mut().rev() {
            *slot = axis[(flat % axis.len() as u128) as usize].clone();
            flat /= axis.len() as u128;
        }
        p
    };
    match total {
        Some(t) if t <= cap as u128 => (0..t).map(decode).collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ((dim as u64) << 8) ^ grid as u64);
            let centre = centre_index(axis.len(), dim);
            let mut flats: Vec<u128> = vec![centre];
            // draw per-axis digits since the flat index space may not fit in usize
            let per_axis = axis.len();
            let mut guard = 0;
            while flats.len() < cap && guard < cap * 20 {
                guard += 1;
                let mut flat: u128 = 0;
                for _ in 0..dim {
                    let d = rng.gen_range(0..per_axis) as u128;
                    flat = flat * per_axis as u128 + d;
                }
                if !flats.contains(&flat) {
                    flats.push(flat);
                }
            }
            flats.sort_unstable();
            flats.into_iter().map(decode).collect()
        }
    }
}

fn centre_index(per_axis: usize, dim: usize) -> u128 {
    let mid = (per_axis / 2) as u128;
    (0..dim).fold(0u128, |acc, _| acc * per_axis as u128 + mid)
}
