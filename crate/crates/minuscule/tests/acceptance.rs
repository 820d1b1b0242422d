//! End-to-end acceptance checks: one test per criterion, each printing a
//! single PASS/FAIL line (run with `--nocapture` to see them all).

use minuscule::cartan::{catalog, CartanData, Weight};
use minuscule::folding::class_by_peaks;
use minuscule::heap::minuscule_strata;
use minuscule::schubert::{
    structure_constants, structure_constants_cached, LocalizationTable, SchubertContext,
};
use minuscule::taquin::{m_coeff, t_coeff};
use minuscule::verify::run_suite;
use minuscule::weyl::WeylElement;
use num_bigint::BigInt;
use num_traits::One;
use std::time::{Duration, Instant};

fn report(n: usize, name: &str, budget: Duration, ok: bool, started: Instant) {
    let elapsed = started.elapsed();
    let verdict = if ok && elapsed <= budget { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {n} ({name}): {verdict} [{elapsed:.2?}]");
    assert!(ok, "criterion {n} ({name}) checks failed");
    assert!(
        elapsed <= budget,
        "criterion {n} ({name}) exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn context(tag: &str, marked: &str, max_len: usize) -> (CartanData, Weight, SchubertContext) {
    let data = catalog(tag).unwrap();
    let i = data.node_index(marked).unwrap();
    let lambda = Weight::fundamental(data.n(), i);
    let ctx = SchubertContext::new(&data, &lambda, max_len);
    (data, lambda, ctx)
}

#[test]
fn criterion_1_betti_tables() {
    let t0 = Instant::now();
    let cases: [(&str, &str, usize, &[usize]); 5] = [
        ("F4", "1", 8, &[1, 1, 1, 1, 2, 2, 2, 2, 2]),
        ("E6", "1", 8, &[1, 1, 1, 1, 2, 2, 2, 2, 3]),
        (
            "E7",
            "1",
            16,
            &[1, 1, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 6, 6, 7],
        ),
        ("E7", "7", 13, &[1, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3]),
        (
            "E8",
            "8",
            28,
            &[
                1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4, 4, 5, 5, 6, 6, 6, 6, 7, 7, 7, 7, 7,
                7, 8,
            ],
        ),
    ];
    let mut ok = true;
    for (tag, marked, max_len, expected) in cases {
        let (_, _, ctx) = context(tag, marked, max_len);
        let betti = ctx.betti();
        if betti != *expected {
            println!("  {tag}/{marked}: Betti numbers {betti:?}, expected {expected:?}");
            ok = false;
        }
    }
    report(1, "Betti tables", Duration::from_secs(5), ok, t0);
}

#[test]
fn criterion_2_rank8_numbers() {
    let t0 = Instant::now();
    let r = run_suite("e8-numbers", 0).unwrap();
    if !r.ok() {
        println!("{}", r.summary());
    }
    report(2, "rank-8 numbers", Duration::from_secs(60), r.ok(), t0);
}

#[test]
fn criterion_3_f4_ring() {
    let t0 = Instant::now();
    let (data, lambda, ctx) = context("F4", "1", 8);
    let ok = std::cell::Cell::new(true);
    let expect = |cond: bool, msg: &str| {
        if !cond {
            println!("  {msg}");
            ok.set(false);
        }
    };

    // Degrees of the cycles, level by level, as unordered multisets.
    let degs = ctx.degrees();
    let expected_degs: [&[i64]; 8] = [
        &[1],
        &[1],
        &[1],
        &[2],
        &[2, 4],
        &[2, 8],
        &[12, 16],
        &[16, 40],
    ];
    for (d, want) in expected_degs.iter().enumerate() {
        let mut got: Vec<BigInt> = degs[d].clone();
        got.sort();
        let want: Vec<BigInt> = want.iter().map(|&x| BigInt::from(x)).collect();
        expect(got == want, &format!("level {d} degrees {got:?}, expected {want:?}"));
    }

    // The two degree-4 generators, labeled by the peaks of their heaps.
    let strata = minuscule_strata(&data, &lambda, 8, true);
    let class = |d: usize, peaks: &[(usize, usize)]| -> WeylElement {
        class_by_peaks(&strata, d, peaks).unwrap().elem.clone()
    };
    let s41 = class(4, &[(1, 2)]);
    let s42 = class(4, &[(3, 1)]);
    // The two degree-8 classes, told apart by the degree of their duals.
    let by_dual_degree = |deg: i64| -> WeylElement {
        let hits: Vec<WeylElement> = ctx.strata[8]
            .iter()
            .filter(|s| {
                let pd = ctx.poincare_dual(&s.elem).unwrap();
                ctx.degree(&pd) == BigInt::from(deg)
            })
            .map(|s| s.elem.clone())
            .collect();
        assert_eq!(hits.len(), 1);
        hits[0].clone()
    };
    let s81 = by_dual_degree(40);
    let s82 = by_dual_degree(16);

    // Products in the small cohomology ring, from the torus-fixed-point
    // oracle.
    let product = |u: &WeylElement, v: &WeylElement| -> Vec<(WeylElement, BigInt)> {
        structure_constants(&ctx, u, v)
            .unwrap()
            .terms
            .into_iter()
            .collect()
    };
    let want = |pairs: &[(&WeylElement, i64)]| -> Vec<(WeylElement, BigInt)> {
        let mut v: Vec<(WeylElement, BigInt)> = pairs
            .iter()
            .map(|(w, c)| ((*w).clone(), BigInt::from(*c)))
            .collect();
        v.sort();
        v
    };
    expect(
        product(&s42, &s42) == want(&[(&s81, 1), (&s82, 1)]),
        "square of the short-root generator",
    );
    expect(
        product(&s41, &s42) == want(&[(&s81, 3), (&s82, 2)]),
        "mixed product of the degree-4 generators",
    );
    expect(
        product(&s41, &s41) == want(&[(&s81, 8), (&s82, 6)]),
        "square of the long-root generator",
    );
    // The self-intersection degree needs the dual class at codimension 11,
    // so enumerate the 15-dimensional space in full.
    let full_ctx = SchubertContext::new(&data, &lambda, 15);
    expect(
        full_ctx.self_product_degree(&s42) == Some(BigInt::from(56)),
        "self-intersection degree of the short-root generator",
    );
    report(3, "F4/P1 ring data", Duration::from_secs(30), ok.get(), t0);
}

#[test]
fn criterion_4_folding_tables() {
    let t0 = Instant::now();
    let r = run_suite("folding-tables", 0).unwrap();
    if !r.ok() {
        println!("{}", r.summary());
    }
    report(4, "folding tables", Duration::from_secs(120), r.ok(), t0);
}

#[test]
fn criterion_5_oracle_agreement() {
    let t0 = Instant::now();
    let r = run_suite("oracle-agreement", 0).unwrap();
    if !r.ok() {
        println!("{}", r.summary());
    }
    report(5, "oracle agreement", Duration::from_secs(900), r.ok(), t0);
}

#[test]
fn criterion_6_property_suites() {
    let t0 = Instant::now();
    let mut ok = true;
    for name in [
        "confluence",
        "associativity",
        "chevalley",
        "recursion-taquin",
        "recursion-bruhat",
    ] {
        let r = run_suite(name, 0xC0FFEE).unwrap();
        if !r.ok() {
            println!("{}", r.summary());
            ok = false;
        }
    }
    report(6, "property suites", Duration::from_secs(600), ok, t0);
}

// ---------------------------------------------------------------------------
// Criterion 7: two-row Grassmannians against a classical tableau counter.

/// Littlewood-Richardson coefficient c^nu_{lam,mu} by direct enumeration of
/// column-strict fillings of nu/lam with content mu whose reverse reading
/// word is a lattice word.
fn lr_coeff(lam: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    let rows = nu.len();
    let lam_r = |r: usize| lam.get(r).copied().unwrap_or(0);
    if lam.len() > rows || (0..rows).any(|r| lam_r(r) > nu[r]) {
        return 0;
    }
    let total: usize = nu.iter().sum::<usize>() - lam.iter().sum::<usize>();
    if total != mu.iter().sum::<usize>() {
        return 0;
    }
    // Cells in reverse reading order: rows top to bottom, right to left.
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (lam_r(r)..nu[r]).rev().map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0usize; nu.iter().copied().max().unwrap_or(0)]; rows];
    let mut placed = vec![0usize; mu.len()];
    let mut count = 0u64;
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        mu: &[usize],
        placed: &mut Vec<usize>,
        lam_r: &dyn Fn(usize) -> usize,
        count: &mut u64,
    ) {
        if k == cells.len() {
            *count += 1;
            return;
        }
        let (r, c) = cells[k];
        for val in 1..=mu.len() {
            if placed[val - 1] == mu[val - 1] {
                continue;
            }
            // Lattice condition: every prefix of the reverse reading word
            // holds at least as many (val-1)s as vals.
            if val > 1 && placed[val - 1] + 1 > placed[val - 2] {
                continue;
            }
            // Row weakly increases left to right (cell to the right already
            // placed since we fill right to left).
            if c + 1 < grid[r].len() && grid[r][c + 1] != 0 && grid[r][c + 1] < val {
                continue;
            }
            // Column strictly increases top to bottom.
            if r > 0 && c >= lam_r(r - 1) && grid[r - 1][c] >= val {
                continue;
            }
            grid[r][c] = val;
            placed[val - 1] += 1;
            rec(k + 1, cells, grid, mu, placed, lam_r, count);
            placed[val - 1] -= 1;
            grid[r][c] = 0;
        }
    }
    rec(0, &cells, &mut grid, mu, &mut placed, &lam_r, &mut count);
    count
}

/// One-line notation of a word of adjacent transpositions, under one of the
/// two composition orders.
fn one_line(n: usize, word: &[u8], positions: bool) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    for &i in word {
        let i = i as usize;
        if positions {
            p.swap(i, i + 1);
        } else {
            let a = p.iter().position(|&x| x == i + 1).unwrap();
            let b = p.iter().position(|&x| x == i + 2).unwrap();
            p.swap(a, b);
        }
    }
    p
}

/// Partition of a Grassmannian permutation with its unique descent at `k`.
fn grassmannian_partition(p: &[usize], k: usize) -> Option<Vec<usize>> {
    let n = p.len();
    // Increasing everywhere except possibly at position k.
    if !(0..k - 1).all(|i| p[i] < p[i + 1]) || !(k..n - 1).all(|i| p[i] < p[i + 1]) {
        return None;
    }
    let mut lam: Vec<usize> = (0..k).map(|i| p[k - 1 - i] - (k - i)).collect();
    if lam.first().map_or(false, |&l| l > n - k) {
        return None;
    }
    while lam.last() == Some(&0) {
        lam.pop();
    }
    Some(lam)
}

#[test]
fn criterion_7_grassmannian_cross_check() {
    let t0 = Instant::now();
    let mut ok = true;
    for n in [4usize, 5] {
        let tag = format!("A{}", n - 1);
        let data = catalog(&tag).unwrap();
        let k = 2usize;
        let lambda = Weight::fundamental(data.n(), k - 1);
        let max = k * (n - k);
        let strata = minuscule_strata(&data, &lambda, max, false);
        let ctx = SchubertContext::new(&data, &lambda, max);
        let mut table = LocalizationTable::new();

        // Fix the composition convention: the one mapping every stratum
        // element to a distinct partition in the k x (n-k) box of the right
        // size.
        let mut convention: Option<bool> = None;
        for &positions in &[true, false] {
            let all_ok = strata.iter().flatten().all(|s| {
                grassmannian_partition(&one_line(n, &s.elem.word, positions), k)
                    .map_or(false, |lam| lam.iter().sum::<usize>() == s.elem.len())
            });
            if all_ok {
                convention = Some(positions);
                break;
            }
        }
        let positions = convention.expect("one composition order must work");
        let partition = |w: &WeylElement| -> Vec<usize> {
            grassmannian_partition(&one_line(n, &w.word, positions), k).unwrap()
        };

        let elems: Vec<&minuscule::heap::StratumHeap> = strata.iter().flatten().collect();
        for w in &elems {
            let h = &w.heap;
            let full = h.full_mask();
            let nu = partition(&w.elem);
            for u in &elems {
                for v in &elems {
                    if u.elem.len() + v.elem.len() != w.elem.len() {
                        continue;
                    }
                    // Tableau-combinatorics value inside the heap of w.
                    let tm = match (
                        h.ideal_of_element(&u.elem),
                        h.ideal_of_element(&v.elem),
                    ) {
                        (Some(um), Some(vm)) => {
                            let t = t_coeff(h, um, vm, full);
                            let m = m_coeff(h, um, vm, full);
                            assert!(m.is_one(), "multiplicity must be 1 in type A");
                            t
                        }
                        _ => 0,
                    };
                    // Fixed-point-localization oracle value.
                    let c = structure_constants_cached(&ctx, &u.elem, &v.elem, &mut table)
                        .unwrap()
                        .coeff(&w.elem);
                    // Independent classical tableau count.
                    let lr = lr_coeff(&partition(&u.elem), &partition(&v.elem), &nu);
                    if BigInt::from(tm) != c || tm != lr {
                        println!(
                            "  G({k},{n}): u={} v={} w={}: t={tm} oracle={c} tableaux={lr}",
                            u.elem.display(&data),
                            v.elem.display(&data),
                            w.elem.display(&data)
                        );
                        ok = false;
                    }
                }
            }
        }
    }
    report(7, "Grassmannian cross-check", Duration::from_secs(30), ok, t0);
}
