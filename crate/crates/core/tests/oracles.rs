//! Library results against naive oracles written from the definitions.
//!
//! On finite tables `≪` is `≤`, so the oracles below only use the order.

use cusg::axioms::{self, Axiom, Mode};
use cusg::carrier::enumerate::valid_tables_up_to_iso;
use cusg::dimension::{self, DimBounds, DimOutcome, DimValue};
use cusg::selftest::{suite, CHAIN_DIMS};
use cusg::{Carrier, Elem, FiniteCuTable};

/// Largest number of summands the dimension oracle tries.
const R: usize = 3;

fn sum(t: &FiniteCuTable, xs: &[usize]) -> usize {
    xs.iter().fold(0, |a, &b| t.add(a, b))
}

/// Non-decreasing lists over `1..len` with between 1 and `r` entries.
fn summand_lists(len: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for l in &layer {
            for y in l.last().copied().unwrap_or(1)..len {
                let mut m = l.clone();
                m.push(y);
                next.push(m);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Tries every matrix `z[j][k]` with `z[j][k] ≤ y_j`.
fn has_witness(t: &FiniteCuTable, xp: usize, x: usize, ys: &[usize], n: usize) -> bool {
    let cols = n + 1;
    let cells = ys.len() * cols;
    let choices: Vec<Vec<usize>> = ys.iter().map(|&y| (0..t.len()).filter(|&z| t.leq(z, y)).collect()).collect();
    let mut pick = vec![0usize; cells];
    loop {
        let z = |j: usize, k: usize| choices[j][pick[j * cols + k]];
        let columns_ok = (0..cols).all(|k| t.leq(sum(t, &(0..ys.len()).map(|j| z(j, k)).collect::<Vec<_>>()), x));
        let all: Vec<usize> = (0..ys.len()).flat_map(|j| (0..cols).map(move |k| (j, k))).map(|(j, k)| z(j, k)).collect();
        if columns_ok && t.leq(xp, sum(t, &all)) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == cells {
                return false;
            }
            pick[i] += 1;
            if pick[i] < choices[i / cols].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// `dim ≤ n` over instances with at most `R` summands.
fn oracle_dim_at_most(t: &FiniteCuTable, n: usize) -> bool {
    for ys in summand_lists(t.len(), R) {
        let s = sum(t, &ys);
        for x in (0..t.len()).filter(|&x| t.leq(x, s)) {
            for xp in (0..t.len()).filter(|&xp| t.leq(xp, x)) {
                if !has_witness(t, xp, x, &ys, n) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn dimension_matches_brute_force() {
    for c in suite(4) {
        let t = c.table().unwrap();
        for n in 0..=1 {
            let check = dimension::check_dim_at_most(&c, n, DimBounds::default(), false).unwrap();
            if let DimOutcome::No { counterexample } = &check.outcome {
                assert!(counterexample.ys.len() <= R, "shortest counterexample longer than the oracle width");
            }
            assert_eq!(check.is_yes(), oracle_dim_at_most(t, n), "{} at n={n}", c.describe());
        }
    }
}

#[test]
fn chain_dimension_fixture() {
    for (m, &expected) in CHAIN_DIMS.iter().enumerate() {
        let c = Carrier::chain(m + 1);
        let oracle = (0..=1).find(|&n| oracle_dim_at_most(c.table().unwrap(), n));
        assert_eq!(oracle, Some(expected), "oracle on C_{}", m + 1);
        assert_eq!(dimension::dim(&c, 3, DimBounds::default()).unwrap(), DimValue::Exact { n: expected });
    }
    assert_eq!(dimension::dim(&Carrier::trivial(), 3, DimBounds::default()).unwrap(), DimValue::Exact { n: 0 });
}

#[test]
fn counterexamples_have_no_witness() {
    for c in suite(4) {
        let check = dimension::check_dim_at_most(&c, 0, DimBounds::default(), false).unwrap();
        if let DimOutcome::No { counterexample: ce } = check.outcome {
            let idx = |e: &Elem| e.idx().unwrap();
            let ys: Vec<usize> = ce.ys.iter().map(idx).collect();
            assert!(!has_witness(c.table().unwrap(), idx(&ce.x_prime), idx(&ce.x), &ys, 0));
        }
    }
}

fn oracle_o5(t: &FiniteCuTable) -> bool {
    let e = 0..t.len();
    for z in e.clone() {
        for x in e.clone() {
            for y in e.clone().filter(|&y| t.leq(t.add(x, y), z)) {
                for xp in e.clone().filter(|&xp| t.leq(xp, x)) {
                    for yp in e.clone().filter(|&yp| t.leq(yp, y)) {
                        let ok = e.clone().any(|c| t.leq(t.add(xp, c), z) && t.leq(z, t.add(x, c)) && t.leq(yp, c));
                        if !ok {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn oracle_o6(t: &FiniteCuTable) -> bool {
    let e = 0..t.len();
    for x in e.clone() {
        for y in e.clone() {
            for z in e.clone().filter(|&z| t.leq(x, t.add(y, z))) {
                for xp in e.clone().filter(|&xp| t.leq(xp, x)) {
                    let ok = e.clone().any(|v| {
                        t.leq(v, x) && t.leq(v, y) && e.clone().any(|w| t.leq(w, x) && t.leq(w, z) && t.leq(xp, t.add(v, w)))
                    });
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn o5_and_o6_match_naive_checks() {
    let mut smallest = [None::<usize>; 2];
    for c in suite(5) {
        let t = c.table().unwrap();
        for (i, (axiom, oracle)) in [(Axiom::O5, oracle_o5(t)), (Axiom::O6, oracle_o6(t))].into_iter().enumerate() {
            let v = axioms::check_axiom(&c, axiom, Mode::Direct, None, 0).unwrap().verdict;
            assert_eq!(v.holds(), oracle, "{axiom} on {}", c.describe());
            if let Some(w) = v.witness() {
                assert!(axioms::replay(&c, axiom, Mode::Direct, w).unwrap());
            }
            if !oracle && smallest[i].is_none() {
                smallest[i] = Some(t.len());
            }
        }
    }
    // the suite is ordered by size, so these are the smallest failing sizes
    println!("smallest O5 failure: {:?}, smallest O6 failure: {:?}", smallest[0], smallest[1]);
    assert_eq!(smallest, [Some(4), Some(4)]);
}

/// Tables on `0..n` with 0 as identity and least element, counted up to
/// relabelling the nonzero elements.
fn count_classes(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let off: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut orders = Vec::new();
    for bits in 0u32..(1 << off.len()) {
        let mut le = vec![vec![false; n]; n];
        for a in 0..n {
            le[a][a] = true;
            le[0][a] = true;
        }
        for (k, &(i, j)) in off.iter().enumerate() {
            le[i][j] = bits & (1 << k) != 0;
        }
        let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(le[a][b] && le[b][a])));
        let trans = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c])));
        if antisym && trans {
            orders.push(le);
        }
    }
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut code = vec![0usize; pairs.len()];
    loop {
        let mut add = vec![vec![0; n]; n];
        for a in 0..n {
            add[0][a] = a;
            add[a][0] = a;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            add[i][j] = code[k];
            add[j][i] = code[k];
        }
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| add[add[a][b]][c] == add[a][add[b][c]])));
        if assoc {
            for le in &orders {
                let compatible = (0..n).all(|a| (0..n).all(|b| !le[a][b] || (0..n).all(|c| le[add[a][c]][add[b][c]])));
                if compatible {
                    let canon = perms
                        .iter()
                        .map(|p| {
                            let mut v = Vec::new();
                            let mut inv = vec![0; n];
                            for (i, &pi) in p.iter().enumerate() {
                                inv[pi] = i;
                            }
                            for a in 0..n {
                                for b in 0..n {
                                    v.push(p[add[inv[a]][inv[b]]]);
                                    v.push(le[inv[a]][inv[b]] as usize);
                                }
                            }
                            v
                        })
                        .min()
                        .unwrap();
                    seen.insert(canon);
                }
            }
        }
        let mut k = 0;
        loop {
            if k == code.len() {
                return seen.len();
            }
            code[k] += 1;
            if code[k] < n {
                break;
            }
            code[k] = 0;
            k += 1;
        }
    }
}

/// Permutations of `0..n` fixing 0.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 1..n {
        let mut next = Vec::new();
        for p in &out {
            for v in 1..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

#[test]
fn enumeration_counts_match() {
    let lib = |n: usize| valid_tables_up_to_iso(n).iter().filter(|t| t.len() == n).count();
    for n in 1..=4 {
        assert_eq!(lib(n), count_classes(n), "tables with {n} elements");
    }
}

/// Multisets over `1..len` as multiplicity vectors, each bounded by `caps`
/// and with at most `max_len` entries in total.
fn multisets(len: usize, caps: &[usize], max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for y in 1..len {
        let mut next = Vec::new();
        for l in &out {
            for m in 0..=caps[y].min(max_len - l.len()) {
                let mut v = l.clone();
                v.extend(std::iter::repeat_n(y, m));
                next.push(v);
            }
        }
        out = next;
    }
    out.retain(|l| !l.is_empty());
    out
}

fn verdict_over(c: &Carrier, n: usize, lists: &[Vec<usize>]) -> bool {
    let t = c.table().unwrap();
    let space = c.elements().unwrap();
    lists.iter().all(|ys| {
        let s = sum(t, ys);
        let ye: Vec<Elem> = ys.iter().map(|&y| Elem::Idx(y)).collect();
        (0..t.len()).filter(|&x| t.leq(x, s)).all(|x| {
            (0..t.len())
                .filter(|&xp| t.leq(xp, x))
                .all(|xp| dimension::find_witness(c, &Elem::Idx(xp), &Elem::Idx(x), &ye, n, &space).is_some())
        })
    })
}

#[test]
fn stabilization_cap_is_sound() {
    for c in suite(4) {
        let t = c.table().unwrap();
        let caps: Vec<usize> = (0..t.len()).map(|y| t.stabilization_index(y).max(1)).collect();
        let capped = multisets(t.len(), &caps, usize::MAX);
        let wide = multisets(t.len(), &vec![6; t.len()], 6);
        for n in 0..=1 {
            let lib = dimension::check_dim_at_most(&c, n, DimBounds::default(), false).unwrap().is_yes();
            assert_eq!(verdict_over(&c, n, &capped), verdict_over(&c, n, &wide), "{} n={n}", c.describe());
            assert_eq!(verdict_over(&c, n, &capped), lib, "{} n={n}", c.describe());
        }
    }
}
