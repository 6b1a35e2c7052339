//! Exhaustive oracle for the exact solver.

use super::{is_valid, Coloring, ColoringMode, Target};
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;

/// Largest item count the oracle accepts (Bell(9) = 21147 partitions).
pub const BRUTE_FORCE_CAP: usize = 9;

/// Minimum number of classes over all set partitions of the items that
/// pass [`is_valid`]. Partitions are enumerated as restricted growth strings.
pub fn brute_force_chromatic(h: &OrientedHypergraph, mode: ColoringMode) -> Result<usize> {
    mode.check_applicable(h)?;
    let items = match mode.target() {
        Target::Vertex => h.vertex_count(),
        Target::Edge => h.edge_count(),
    };
    if items > BRUTE_FORCE_CAP {
        return Err(Error::OracleCapExceeded { cap: BRUTE_FORCE_CAP, items });
    }
    if items == 0 {
        return Ok(0);
    }
    let mut rgs = vec![1; items];
    let mut best = items;
    loop {
        let k = *rgs.iter().max().expect("nonempty");
        if k < best && is_valid(h, &Coloring::new(mode.target(), rgs.clone())?, mode)? {
            best = k;
        }
        if !next_rgs(&mut rgs) {
            return Ok(best);
        }
    }
}

/// Advances to the next restricted growth string (`a[0] = 1`,
/// `a[i] ≤ 1 + max(a[..i])`). Returns false after the last one.
fn next_rgs(a: &mut [usize]) -> bool {
    for i in (1..a.len()).rev() {
        let prefix_max = *a[..i].iter().max().expect("nonempty prefix");
        if a[i] <= prefix_max {
            a[i] += 1;
            a[i + 1..].iter_mut().for_each(|x| *x = 1);
            return true;
        }
    }
    false
}
