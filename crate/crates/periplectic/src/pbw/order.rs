use std::cmp::Ordering;

use crate::superlinalg::{indices, parity};
use crate::yangian::GenTriple;

/// Position of an index in `1, -1, 2, -2, …`: absolute value first, then
/// the positive sign.
fn index_key(i: i32) -> (u32, bool) {
    (i.unsigned_abs(), i < 0)
}

fn pair_key(i: i32, j: i32) -> ((u32, bool), (u32, bool)) {
    (index_key(i), index_key(j))
}

/// Total order on triples: by `r`, then `|i|`, sign of `i`, `|j|`, sign of
/// `j`, positive before negative.
pub fn compare(a: &GenTriple, b: &GenTriple) -> Ordering {
    (a.r, pair_key(a.i, a.j)).cmp(&(b.r, pair_key(b.i, b.j)))
}

/// Membership in the admissible set `J`. For `i ≠ -j` exactly one of
/// `(i,j,r)`, `(-j,-i,r)` belongs, the smaller index pair, except that
/// `(1,1,r)` is always left out. For `i = -j` membership holds iff `ī + r`
/// is odd.
pub fn is_admissible(g: &GenTriple) -> bool {
    let (i, j) = (g.i, g.j);
    if i == -j {
        return (parity(i) + g.r as usize) % 2 == 1;
    }
    if (i, j) == (1, 1) {
        return false;
    }
    if (i, j) == (-1, -1) {
        return true;
    }
    pair_key(i, j) < pair_key(-j, -i)
}

/// `(a, b)` must be swapped: `a > b`, or `a = b` odd.
pub fn is_misordered(a: &GenTriple, b: &GenTriple) -> bool {
    match compare(a, b) {
        Ordering::Greater => true,
        Ordering::Equal => a.parity() == 1,
        Ordering::Less => false,
    }
}

/// The admissible triples with `r < max_r`, in increasing order.
pub fn admissible_triples(n_half: usize, max_r: u32) -> Vec<GenTriple> {
    let mut out: Vec<GenTriple> = all_triples(n_half, max_r).into_iter().filter(is_admissible).collect();
    out.sort_by(compare);
    out
}

/// Every triple with `r < max_r`, in increasing order.
pub fn all_triples(n_half: usize, max_r: u32) -> Vec<GenTriple> {
    let idx = indices(n_half);
    let mut out = Vec::new();
    for r in 0..max_r {
        for &i in &idx {
            for &j in &idx {
                out.push(GenTriple::new(i, j, r));
            }
        }
    }
    out.sort_by(compare);
    out
}

/// A word is in normal form when every letter is admissible and no adjacent
/// pair is misordered.
pub fn is_normal_word(w: &[GenTriple]) -> bool {
    w.iter().all(is_admissible) && w.windows(2).all(|p| !is_misordered(&p[0], &p[1]))
}
