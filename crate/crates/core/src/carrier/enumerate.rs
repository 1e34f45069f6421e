//! Enumeration of small positively ordered monoid tables.
//!
//! Element 0 is always the identity and the least element. Tables are
//! enumerated with labels; [`canonical`] picks one representative per
//! isomorphism class by minimizing the encoding over relabelings of the
//! nonzero elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FiniteCuTable;

/// Every commutative, associative addition table on `{0..n-1}` with 0 as
/// identity, flattened row-major, in lexicographic order.
pub fn monoid_tables(n: usize) -> Vec<Vec<usize>> {
    assert!(n >= 1);
    let mut add = vec![usize::MAX; n * n];
    for i in 0..n {
        add[i] = i;
        add[i * n] = i;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    fill(n, &cells, 0, &mut add, &mut out);
    out
}

fn fill(n: usize, cells: &[(usize, usize)], k: usize, add: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == cells.len() {
        out.push(add.clone());
        return;
    }
    let (i, j) = cells[k];
    for v in 0..n {
        add[i * n + j] = v;
        add[j * n + i] = v;
        if associative_so_far(n, add) {
            fill(n, cells, k + 1, add, out);
        }
    }
    add[i * n + j] = usize::MAX;
    add[j * n + i] = usize::MAX;
}

fn associative_so_far(n: usize, add: &[usize]) -> bool {
    let get = |a: usize, b: usize| add[a * n + b];
    for a in 1..n {
        for b in 1..n {
            let ab = get(a, b);
            if ab == usize::MAX {
                continue;
            }
            for c in 1..n {
                let bc = get(b, c);
                if bc == usize::MAX {
                    continue;
                }
                let (l, r) = (get(ab, c), get(a, bc));
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// Every partial order on `{0..n-1}` with 0 least, flattened row-major.
pub fn partial_orders(n: usize) -> Vec<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
            leq[i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => leq[i * n + j] = true,
                2 => leq[j * n + i] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| !leq[a * n + b] || (0..n).all(|c| !leq[b * n + c] || leq[a * n + c]))
        });
        if transitive {
            out.push(leq);
        }
    }
    out
}

fn compatible(n: usize, add: &[usize], leq: &[bool]) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| !leq[x * n + y] || (0..n).all(|z| leq[add[x * n + z] * n + add[y * n + z]]))
    })
}

fn build(n: usize, add: &[usize], leq: &[bool]) -> FiniteCuTable {
    FiniteCuTable::from_fns(n, |a, b| add[a * n + b], |a, b| leq[a * n + b]).expect("enumerated tables are well formed")
}

/// Every labelled valid table of size `n`.
pub fn valid_tables(n: usize) -> Vec<FiniteCuTable> {
    let orders = partial_orders(n);
    let mut out = Vec::new();
    for add in monoid_tables(n) {
        for leq in &orders {
            if compatible(n, &add, leq) {
                out.push(build(n, &add, leq));
            }
        }
    }
    out
}

fn encoding(t: &FiniteCuTable) -> (Vec<usize>, Vec<bool>) {
    (t.add_rows().concat(), t.leq_rows().concat())
}

/// The isomorphic copy with the smallest encoding, relabeling `1..n-1`.
pub fn canonical(t: &FiniteCuTable) -> FiniteCuTable {
    let n = t.len();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = t.clone();
    let mut best_enc = encoding(t);
    permute(&mut rest, 0, &mut |p| {
        let perm: Vec<usize> = std::iter::once(0).chain(p.iter().copied()).collect();
        let r = t.relabel(&perm);
        let e = encoding(&r);
        if e < best_enc {
            best_enc = e;
            best = r;
        }
    });
    best
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// One table per isomorphism class, sizes `1..=max_n`, sorted by size then
/// encoding.
pub fn valid_tables_up_to_iso(max_n: usize) -> Vec<FiniteCuTable> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut seen: Vec<FiniteCuTable> = valid_tables(n).iter().map(canonical).collect();
        seen.sort_by_key(encoding);
        seen.dedup();
        out.extend(seen);
    }
    out
}

/// `count` labelled valid tables with sizes drawn from `1..=max_n`, from a
/// fixed seed.
pub fn random_valid_tables(count: usize, max_n: usize, seed: u64) -> Vec<FiniteCuTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pools: Vec<Vec<FiniteCuTable>> = (1..=max_n).map(valid_tables).collect();
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            pools[n - 1].choose(&mut rng).expect("the saturating chain is always valid").clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        // the monoids on {0,1} are ℤ/2 and 1+1=1
        assert_eq!(monoid_tables(1).len(), 1);
        assert_eq!(monoid_tables(2).len(), 2);
        assert_eq!(partial_orders(3).len(), 3);
        // 0 < 1 is forced, and ℤ/2 is not compatible with it
        assert_eq!(valid_tables(2).len(), 1);
    }

    #[test]
    fn every_enumerated_table_validates() {
        for t in valid_tables(3) {
            assert!(t.validate_pom().is_valid());
        }
    }

    #[test]
    fn canonical_is_an_isomorphism_invariant() {
        for t in valid_tables(3) {
            let c = canonical(&t);
            assert!(t.isomorphism_to(&c).is_some());
            assert_eq!(canonical(&t.relabel(&[0, 2, 1])), c);
        }
    }

    #[test]
    fn random_tables_are_reproducible() {
        let a = random_valid_tables(20, 4, 7);
        assert_eq!(a, random_valid_tables(20, 4, 7));
        assert!(a.iter().all(|t| t.validate_pom().is_valid()));
    }
}
