use super::oracle::graded_dims;
use super::order::admissible_triples;
use crate::report::{CheckReport, Recorder};
use crate::yangian::GenTriple;

/// Number of normal words: non-decreasing words over `J`, a letter repeated
/// only when even, with total degree `Σ r ≤ degree` and length `≤ length`.
/// The empty word counts once.
pub fn pbw_count(n_half: usize, degree: u32, length: usize) -> u64 {
    let letters = admissible_triples(n_half, degree + 1);
    fn walk(letters: &[GenTriple], from: usize, budget: u32, left: usize) -> u64 {
        let mut total = 1;
        if left == 0 {
            return total;
        }
        for (k, g) in letters.iter().enumerate().skip(from) {
            if g.r > budget {
                break;
            }
            let next = if g.parity() == 0 { k } else { k + 1 };
            total += walk(letters, next, budget - g.r, left - 1);
        }
        total
    }
    walk(&letters, 0, degree, length)
}

/// Monomials of total degree `≤ degree` and length `≤ length` in the free
/// supercommutative algebra with `even[r]` even and `odd[r]` odd generators
/// of degree `r`: the coefficients of `Π (1+xy^r)^{odd_r} / (1-xy^r)^{even_r}`.
pub fn supersymmetric_count(even: &[usize], odd: &[usize], degree: u32, length: usize) -> u64 {
    let d = degree as usize;
    // a[l][k]: monomials of length l and degree k
    let mut a = vec![vec![0u64; d + 1]; length + 1];
    a[0][0] = 1;
    for r in 0..=d {
        for _ in 0..odd.get(r).copied().unwrap_or(0) {
            for l in (1..=length).rev() {
                for k in (r..=d).rev() {
                    a[l][k] += a[l - 1][k - r];
                }
            }
        }
        for _ in 0..even.get(r).copied().unwrap_or(0) {
            for l in 1..=length {
                for k in r..=d {
                    a[l][k] += a[l - 1][k - r];
                }
            }
        }
    }
    a.iter().flatten().sum()
}

/// The count predicted by the enveloping algebra of the twisted current
/// algebra, with graded dimensions from its concrete model.
pub fn oracle_count(n_half: usize, degree: u32, length: usize) -> u64 {
    let (even, odd): (Vec<usize>, Vec<usize>) = (0..=degree).map(|r| graded_dims(n_half, r)).unzip();
    supersymmetric_count(&even, &odd, degree, length)
}

/// Every cell `(d, m)` with `d ≤ degree`, `m ≤ length`.
pub fn check_counts(n_half: usize, degree: u32, length: usize) -> CheckReport {
    let mut rec = Recorder::new("pbw-count")
        .param("N", n_half)
        .param("degree", degree)
        .param("length", length);
    let mut table = Vec::new();
    for d in 0..=degree {
        let mut row = Vec::new();
        for m in 0..=length {
            let (got, want) = (pbw_count(n_half, d, m), oracle_count(n_half, d, m));
            rec.check(got == want, || {
                format!("d ≤ {d}, m ≤ {m}: {got} normal words, oracle {want}")
            });
            row.push(got);
        }
        table.push(row);
    }
    rec.param("counts", table).finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    /// Multisets over `{even0, odd0, even1, odd1, …}` by brute force.
    fn brute_force(degree: u32, length: usize) -> u64 {
        // (degree, odd) for one even and one odd generator per degree
        let gens: Vec<(u32, bool)> = (0..=degree).flat_map(|r| [(r, false), (r, true)]).collect();
        let mut count = 0;
        for m in 0..=length {
            for pick in (0..gens.len()).combinations_with_replacement(m) {
                let odd_repeat = pick.iter().tuple_windows().any(|(a, b)| a == b && gens[*a].1);
                let deg: u32 = pick.iter().map(|&k| gens[k].0).sum();
                if !odd_repeat && deg <= degree {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn small_cell_is_eleven() {
        assert_eq!(pbw_count(1, 1, 2), 11);
        assert_eq!(oracle_count(1, 1, 2), 11);
        assert_eq!(brute_force(1, 2), 11);
        assert_eq!(pbw_count(1, 0, 0), 1);
    }

    #[test]
    fn n1_cells_agree_with_both_oracles() {
        for d in 0..=4 {
            for m in 0..=4 {
                let got = pbw_count(1, d, m);
                assert_eq!(got, oracle_count(1, d, m), "d={d} m={m}");
                assert_eq!(got, brute_force(d, m), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn n2_small_cells_agree() {
        let r = check_counts(2, 2, 3);
        assert!(r.passed(), "{:?}", r.witnesses);
    }
}
