//! Fixed instance sets shared by the benchmarks in `benches/`.

use p3pack::generators::{gen_delta, gen_random_clawfree_connected, gen_random_cubic_connected, ClawFreeMethod};
use p3pack::Graph;

/// Connected claw-free graphs of order `n`, `count` seeds from 0, mixing
/// both generator methods. Seeds the generator rejects are skipped.
pub fn clawfree(n: usize, connectivity: usize, count: usize) -> Vec<Graph> {
    (0..count as u64 * 4)
        .filter_map(|s| {
            let m = if s % 2 == 0 { ClawFreeMethod::LineGraph } else { ClawFreeMethod::LocalComplete };
            gen_random_clawfree_connected(n, connectivity, s, m).ok()
        })
        .take(count)
        .collect()
}

/// `F^Δ` of random 2-edge-connected cubic multigraphs on `n` vertices.
pub fn delta(n: usize, count: usize) -> Vec<Graph> {
    (0..count as u64).filter_map(|s| gen_random_cubic_connected(n, 2, s).ok()).map(|f| gen_delta(&f)).collect()
}
