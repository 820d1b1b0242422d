//! Diagram foldings: quotient Dynkin diagrams by an automorphism, transport
//! Weyl elements and Schubert classes across the induced inclusion, and
//! solve for push-forward matrices from invariance, projection-formula and
//! cap-product constraints.

use crate::cartan::{pairing_simple_coroot, CartanData, CartanError, Weight};
use crate::heap::{build_heap, minuscule_strata, ColoredHeap, HeapError, StratumHeap};
use crate::schubert::SchubertContext;
use crate::weyl::{canonicalize, min_coset_rep, Parabolic, WeylElement};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum FoldError {
    #[error("permutation does not preserve the Cartan matrix at ({0},{1})")]
    NotAutomorphism(usize, usize),
    #[error("orbit {0} contains an internal bond")]
    BondedOrbit(usize),
    #[error("orbits do not partition the node set")]
    NotPartition,
    #[error("folded matrix entry not independent of the orbit representative")]
    Inconsistent,
    #[error("element is not minuscule or cominuscule for the marked weight")]
    NotMinuscule,
    #[error("heap error: {0}")]
    Heap(#[from] HeapError),
    #[error("cartan error: {0}")]
    Cartan(#[from] CartanError),
}

/// A permutation of the nodes of a diagram preserving its Cartan matrix.
#[derive(Debug, Clone)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn new(data: &CartanData, perm: Vec<usize>) -> Result<DiagramAutomorphism, FoldError> {
        let n = data.n();
        assert_eq!(perm.len(), n);
        for i in 0..n {
            for j in 0..n {
                if data.a[perm[i]][perm[j]] != data.a[i][j] {
                    return Err(FoldError::NotAutomorphism(i, j));
                }
            }
        }
        Ok(DiagramAutomorphism { perm })
    }

    pub fn identity(n: usize) -> DiagramAutomorphism {
        DiagramAutomorphism {
            perm: (0..n).collect(),
        }
    }

    /// Cycle decomposition, each orbit sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                orbit.push(i);
                i = self.perm[i];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// The action on Weyl elements: relabel the reduced word.
    pub fn apply(&self, data: &CartanData, w: &WeylElement) -> WeylElement {
        let word: Vec<u8> = w.word.iter().map(|&i| self.perm[i as usize] as u8).collect();
        canonicalize(data, &word)
    }
}

/// An ambient diagram together with its quotient by a folding.
#[derive(Debug, Clone)]
pub struct FoldedPair {
    pub ambient: CartanData,
    pub folded: CartanData,
    /// Folded node -> the ambient nodes in its orbit.
    pub orbits: Vec<Vec<usize>>,
    /// Ambient node -> folded node.
    pub orbit_of: Vec<usize>,
}

/// Fold along explicit orbits; the orbit order fixes the folded node order.
/// Entries of the folded matrix are `a[m][n] = Σ_{j∈orbit n} a[i][j]` for any
/// `i ∈ orbit m` (checked independent of the choice).
pub fn fold_with_orbits(data: &CartanData, orbits: &[Vec<usize>]) -> Result<FoldedPair, FoldError> {
    let n = data.n();
    let mut orbit_of = vec![usize::MAX; n];
    for (m, orbit) in orbits.iter().enumerate() {
        for &i in orbit {
            if i >= n || orbit_of[i] != usize::MAX {
                return Err(FoldError::NotPartition);
            }
            orbit_of[i] = m;
        }
    }
    if orbit_of.iter().any(|&m| m == usize::MAX) {
        return Err(FoldError::NotPartition);
    }
    for (m, orbit) in orbits.iter().enumerate() {
        for &i in orbit {
            for &j in orbit {
                if i != j && data.a[i][j] != 0 {
                    return Err(FoldError::BondedOrbit(m));
                }
            }
        }
    }
    let k = orbits.len();
    let mut a = vec![vec![0i64; k]; k];
    for (m, om) in orbits.iter().enumerate() {
        for (nn, on) in orbits.iter().enumerate() {
            let val: i64 = on.iter().map(|&j| data.a[om[0]][j]).sum();
            for &i in om {
                let check: i64 = on.iter().map(|&j| data.a[i][j]).sum();
                if check != val {
                    return Err(FoldError::Inconsistent);
                }
            }
            a[m][nn] = val;
        }
    }
    let nodes: Vec<String> = orbits
        .iter()
        .map(|o| {
            o.iter()
                .map(|&i| data.nodes[i].clone())
                .collect::<Vec<_>>()
                .join("")
        })
        .collect();
    let folded = CartanData::new(nodes, a, None)?;
    Ok(FoldedPair {
        ambient: data.clone(),
        folded,
        orbits: orbits.to_vec(),
        orbit_of,
    })
}

/// Fold along the cycles of an automorphism (orbits ordered by least node).
pub fn fold(data: &CartanData, theta: &DiagramAutomorphism) -> Result<FoldedPair, FoldError> {
    fold_with_orbits(data, &theta.orbits())
}

impl FoldedPair {
    /// `i(w)`: replace each folded generator by the product of its orbit
    /// (pairwise commuting by the no-internal-bond invariant).
    pub fn lift_element(&self, w: &WeylElement) -> WeylElement {
        let mut word: Vec<u8> = Vec::new();
        for &m in &w.word {
            for &j in &self.orbits[m as usize] {
                word.push(j as u8);
            }
        }
        canonicalize(&self.ambient, &word)
    }

    /// An ambient fundamental weight restricting to the folded fundamental
    /// weight of the marked node: the one at the least orbit representative
    /// (the choices are conjugate under the folding symmetry).
    pub fn ambient_weight(&self, folded_marked: usize) -> Weight {
        Weight::fundamental(self.ambient.n(), self.orbits[folded_marked][0])
    }
}

/// A graded-poset isomorphism between two heaps, found by backtracking.
/// Returns the image index of every element of `h1`, respecting covers both
/// ways, or None.
pub fn poset_isomorphism(h1: &ColoredHeap, h2: &ColoredHeap) -> Option<Vec<usize>> {
    if h1.len() != h2.len() {
        return None;
    }
    let n = h1.len();
    // Invariant fingerprints for pruning: (|below|, |above|).
    let key = |h: &ColoredHeap, e: usize| (h.below[e].count_ones(), h.above[e].count_ones());
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        h1: &ColoredHeap,
        h2: &ColoredHeap,
        e: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        key: &dyn Fn(&ColoredHeap, usize) -> (u32, u32),
    ) -> bool {
        if e == h1.len() {
            return true;
        }
        for f in 0..h2.len() {
            if used[f] || key(h1, e) != key(h2, f) {
                continue;
            }
            // Covers with already-mapped elements must match exactly.
            let ok = (0..e).all(|e2| {
                let below12 = h1.below[e] >> e2 & 1 == 1;
                let below21 = h1.below[e2] >> e & 1 == 1;
                let f2 = image[e2];
                below12 == (h2.below[f] >> f2 & 1 == 1)
                    && below21 == (h2.below[f2] >> f & 1 == 1)
            });
            if !ok {
                continue;
            }
            image[e] = f;
            used[f] = true;
            if rec(h1, h2, e + 1, image, used, key) {
                return true;
            }
            used[f] = false;
            image[e] = usize::MAX;
        }
        false
    }
    if rec(h1, h2, 0, &mut image, &mut used, &key) {
        Some(image)
    } else {
        None
    }
}

/// `ι̅(w)`: the unique equal-length minuscule representative of `i(w)`
/// modulo the ambient parabolic. Returns the element and the heap
/// isomorphism from the folded heap onto the ambient one.
pub fn unfold_minuscule(
    pair: &FoldedPair,
    folded_lambda: &Weight,
    ambient_lambda: &Weight,
    w: &WeylElement,
) -> Result<(WeylElement, Vec<usize>), FoldError> {
    let h_folded = build_heap(&pair.folded, folded_lambda, &w.word)?;
    let lifted = pair.lift_element(w);
    let marked: Vec<usize> = (0..pair.ambient.n())
        .filter(|&i| pairing_simple_coroot(&pair.ambient, ambient_lambda, i) > 0)
        .collect();
    let p = Parabolic::new(marked);
    let u = min_coset_rep(&pair.ambient, &lifted, &p);
    if u.len() != w.len() {
        return Err(FoldError::NotMinuscule);
    }
    let h_ambient = build_heap(&pair.ambient, ambient_lambda, &u.word)?;
    let iso = poset_isomorphism(&h_folded, &h_ambient).ok_or(FoldError::NotMinuscule)?;
    Ok((u, iso))
}

/// `ι_* σ_w = τ_{ι̅(w)}` for minuscule `w`: a single class of equal length.
pub fn pushforward_minuscule(
    pair: &FoldedPair,
    folded_lambda: &Weight,
    ambient_lambda: &Weight,
    w: &WeylElement,
) -> Result<WeylElement, FoldError> {
    unfold_minuscule(pair, folded_lambda, ambient_lambda, w).map(|(u, _)| u)
}

/// `ι^* τ^v = σ^w` when `v = ι̅(w)`, zero when `v` is not in the image.
/// Requires every folded class of degree `l(v)` to be minuscule (checked);
/// refuses otherwise.
pub fn pullback_minuscule(
    pair: &FoldedPair,
    folded_lambda: &Weight,
    ambient_lambda: &Weight,
    v: &WeylElement,
    cominuscule: bool,
) -> Result<Option<WeylElement>, FoldError> {
    let strata = minuscule_strata(&pair.folded, folded_lambda, v.len(), cominuscule);
    // Hypothesis: the whole degree-l(v) stratum of the folded space consists
    // of minuscule classes; minuscule_strata only enumerates those, so
    // compare against the full coset enumeration.
    let all = crate::weyl::enumerate_min_reps(&pair.folded, folded_lambda, v.len());
    if strata.get(v.len()).map(|s| s.len()) != all.get(v.len()).map(|s| s.len()) {
        return Err(FoldError::NotMinuscule);
    }
    for s in &strata[v.len()] {
        let (u, _) = unfold_minuscule(pair, folded_lambda, ambient_lambda, &s.elem)?;
        if u == *v {
            return Ok(Some(s.elem.clone()));
        }
    }
    Ok(None)
}

/// The two diagrams of the bond-splitting construction: `bonded` adds one
/// node `x` attached to node `delta` by a `p`-fold bond (`⟨α_x, α_δ^∨⟩ =
/// −p`), `split` adds `p` nodes each attached to `delta` by a simple bond.
/// Folding the `p` new nodes of `split` recovers `bonded`.
pub struct ExtensionPushforward {
    pub bonded: CartanData,
    pub split: CartanData,
    /// `w' = s_x w` on the bonded diagram.
    pub extended: WeylElement,
    /// `w_i = s_{β_i} w` on the split diagram; `ι_*σ_{w'} = Σ_i τ_{w_i}`.
    pub images: Vec<WeylElement>,
}

pub fn pushforward_extension(
    data0: &CartanData,
    delta: usize,
    p: usize,
    w: &WeylElement,
) -> Result<ExtensionPushforward, FoldError> {
    let n = data0.n();
    assert!(p >= 1 && delta < n);
    let grow = |extra: usize, bond_to_delta: i64| -> Result<CartanData, CartanError> {
        let mut nodes = data0.nodes.clone();
        let mut a = vec![vec![0i64; n + extra]; n + extra];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = data0.a[i][j];
            }
        }
        for k in 0..extra {
            nodes.push(format!("x{}", k + 1));
            a[n + k][n + k] = 2;
            a[n + k][delta] = -1;
            a[delta][n + k] = bond_to_delta;
        }
        CartanData::new(nodes, a, None)
    };
    let bonded = grow(1, -(p as i64))?;
    let split = grow(p, -1)?;
    let mut ext_word = vec![n as u8];
    ext_word.extend_from_slice(&w.word);
    let extended = canonicalize(&bonded, &ext_word);
    if extended.len() != w.len() + 1 {
        return Err(FoldError::NotMinuscule);
    }
    let mut images = Vec::with_capacity(p);
    for k in 0..p {
        let mut word = vec![(n + k) as u8];
        word.extend_from_slice(&w.word);
        let wi = canonicalize(&split, &word);
        if wi.len() != w.len() + 1 {
            return Err(FoldError::NotMinuscule);
        }
        images.push(wi);
    }
    Ok(ExtensionPushforward {
        bonded,
        split,
        extended,
        images,
    })
}

/// One consistent assignment of push-forward matrices: `images[d][i][j]` is
/// the coefficient of the `j`-th ambient class in the image of the `i`-th
/// folded class of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardCandidate {
    pub images: Vec<Vec<Vec<i64>>>,
}

impl PushforwardCandidate {
    /// The pull-back coefficients of the `j`-th ambient class of degree `d`
    /// over the folded classes of that degree (adjoint matrix column).
    pub fn pullback_coeffs(&self, d: usize, j: usize) -> Vec<i64> {
        self.images[d].iter().map(|row| row[j]).collect()
    }
}

/// A cap-product oracle: `τ^u ∩ τ_w` expanded over ambient classes of degree
/// `l(w) − l(u)`.
pub type CapOracle<'a> = dyn Fn(&WeylElement, &WeylElement) -> SchubertCap + 'a;
pub type SchubertCap = BTreeMap<WeylElement, i64>;

/// Determine the push-forward matrices degree by degree.
///
/// Constraints imposed while searching:
///   1. images are invariant under the folding symmetry `g` of the ambient
///      diagram (coefficients constant on `g`-orbits of classes);
///   2. the projection formula `h ∩ ι_*σ = ι_*(h ∩ σ)` links each degree to
///      the one below (coefficients nonnegative integers);
///   3. for every scheduled test class `u`, the cap `τ^u ∩ ι_*σ` must again
///      be `g`-invariant (it equals `ι_*(ι^*τ^u ∩ σ)`).
/// `solve_row(d, i)` selects which folded classes are solved for; skipped
/// classes get an empty row and impose no constraint (their Chevalley
/// shadow must not be needed by any solved class above them).
/// Returns every assignment that survives; the caller may filter further
/// (e.g. by ring constraints on the adjoint pull-back).
pub fn solve_pushforward(
    folded: &SchubertContext,
    ambient: &SchubertContext,
    g: &DiagramAutomorphism,
    max_degree: usize,
    cap_tests: &[(usize, WeylElement)],
    cap: &CapOracle,
    solve_row: &dyn Fn(usize, usize) -> bool,
) -> Vec<PushforwardCandidate> {
    assert!(folded.strata.len() > max_degree && ambient.strata.len() > max_degree);
    // g-action on each ambient stratum, as an index permutation.
    let g_index: Vec<Vec<usize>> = (0..=max_degree)
        .map(|d| {
            ambient.strata[d]
                .iter()
                .map(|s| {
                    let gw = g.apply(&ambient.data, &s.elem);
                    ambient
                        .find(&gw)
                        .expect("g must permute the stratum")
                        .1
                })
                .collect()
        })
        .collect();

    let mut states = vec![PushforwardCandidate {
        images: vec![vec![vec![1]]],
    }];

    for d in 1..=max_degree {
        let nf = folded.strata[d].len();
        let na = ambient.strata[d].len();
        // g-orbits of ambient classes at degree d.
        let mut orbit_id = vec![usize::MAX; na];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for j in 0..na {
            if orbit_id[j] != usize::MAX {
                continue;
            }
            let mut o = vec![j];
            let mut k = g_index[d][j];
            while k != j {
                o.push(k);
                k = g_index[d][k];
            }
            for &m in &o {
                orbit_id[m] = orbits.len();
            }
            orbits.push(o);
        }
        // Chevalley matrices: down-cap coefficients within ambient and folded.
        let na_dn = ambient.strata[d - 1].len();
        let amb_down: Vec<Vec<i64>> = (0..na)
            .map(|j| {
                (0..na_dn)
                    .map(|v| {
                        ambient
                            .cover_coeff(&ambient.strata[d - 1][v], &ambient.strata[d][j])
                            .unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        let nf_dn = folded.strata[d - 1].len();
        let fold_down: Vec<Vec<i64>> = (0..nf)
            .map(|i| {
                (0..nf_dn)
                    .map(|k| {
                        folded
                            .cover_coeff(&folded.strata[d - 1][k], &folded.strata[d][i])
                            .unwrap_or(0)
                    })
                    .collect()
            })
            .collect();

        let mut next_states: Vec<PushforwardCandidate> = Vec::new();
        for state in &states {
            // Per folded class, enumerate the images compatible with the
            // projection formula against this state's degree d−1 images.
            let mut per_class: Vec<Vec<Vec<i64>>> = Vec::with_capacity(nf);
            for i in 0..nf {
                if !solve_row(d, i) {
                    per_class.push(vec![Vec::new()]);
                    continue;
                }
                // b[v] = coefficient of ambient class v (degree d−1) in
                // ι_*(h ∩ σ_i).
                debug_assert!(
                    (0..nf_dn).all(|k| fold_down[i][k] == 0 || !state.images[d - 1][k].is_empty()),
                    "solved class covers a skipped class"
                );
                let mut b = vec![0i64; na_dn];
                for k in 0..nf_dn {
                    let c = fold_down[i][k];
                    if c == 0 {
                        continue;
                    }
                    for (v, bv) in b.iter_mut().enumerate() {
                        *bv += c * state.images[d - 1][k][v];
                    }
                }
                per_class.push(enumerate_images(&orbits, &amb_down, &b, na));
            }
            if per_class.iter().any(|s| s.is_empty()) {
                continue;
            }
            // Cross product over folded classes.
            let mut combos: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
            for sols in &per_class {
                let mut grown = Vec::new();
                for c in &combos {
                    for s in sols {
                        let mut c2 = c.clone();
                        c2.push(s.clone());
                        grown.push(c2);
                    }
                }
                combos = grown;
            }
            for combo in combos {
                let mut st = state.clone();
                st.images.push(combo);
                next_states.push(st);
            }
        }
        states = next_states;
        assert!(
            states.len() <= 4096,
            "push-forward search space exploded at degree {d}"
        );

        // Scheduled cap-symmetry pruning.
        for (du, u) in cap_tests.iter().filter(|(du, _)| *du == d) {
            states.retain(|st| {
                (0..nf).all(|i| {
                    let mut total: SchubertCap = BTreeMap::new();
                    for (j, &c) in st.images[*du][i].iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for (v, cv) in cap(u, &ambient.strata[*du][j].elem) {
                            *total.entry(v).or_insert(0) += c * cv;
                        }
                    }
                    total.iter().all(|(v, cv)| {
                        let gv = g.apply(&ambient.data, v);
                        total.get(&gv).copied().unwrap_or(0) == *cv
                    })
                })
            });
        }
    }
    states
}

/// Nonnegative integer, `g`-invariant solutions `x` of
/// `Σ_j x_j · down[j][v] = b[v]` for all `v`, enumerated over orbit
/// variables by bounded depth-first search.
fn enumerate_images(
    orbits: &[Vec<usize>],
    down: &[Vec<i64>],
    b: &[i64],
    na: usize,
) -> Vec<Vec<i64>> {
    // Column of the aggregated matrix for one orbit variable.
    let agg: Vec<Vec<i64>> = orbits
        .iter()
        .map(|o| {
            (0..b.len())
                .map(|v| o.iter().map(|&j| down[j][v]).sum())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut y = vec![0i64; orbits.len()];
    fn rec(
        k: usize,
        agg: &[Vec<i64>],
        residual: &mut Vec<i64>,
        y: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if k == agg.len() {
            if residual.iter().all(|&r| r == 0) {
                out.push(y.clone());
            }
            return;
        }
        let mut bound = i64::MAX;
        for (v, &a) in agg[k].iter().enumerate() {
            if a > 0 {
                bound = bound.min(residual[v] / a);
            }
        }
        if bound == i64::MAX {
            // Variable unconstrained by any positive column entry: it can
            // only be zero, otherwise the image has no Chevalley shadow.
            bound = 0;
        }
        for val in 0..=bound {
            y[k] = val;
            for (v, &a) in agg[k].iter().enumerate() {
                residual[v] -= val * a;
            }
            if residual.iter().all(|&r| r >= 0) {
                rec(k + 1, agg, residual, y, out);
            }
            for (v, &a) in agg[k].iter().enumerate() {
                residual[v] += val * a;
            }
        }
        y[k] = 0;
    }
    let mut residual = b.to_vec();
    rec(0, &agg, &mut residual, &mut y, &mut out);
    // Expand orbit variables back to per-class coefficients.
    out.into_iter()
        .map(|ys| {
            let mut x = vec![0i64; na];
            for (k, o) in orbits.iter().enumerate() {
                for &j in o {
                    x[j] = ys[k];
                }
            }
            x
        })
        .collect()
}

/// `τ^u ∩ ι_*σ` for a candidate image row: expansion over ambient elements.
pub fn cap_candidate(
    ambient: &SchubertContext,
    candidate: &PushforwardCandidate,
    d: usize,
    i: usize,
    u: &WeylElement,
    cap: &CapOracle,
) -> SchubertCap {
    let mut total: SchubertCap = BTreeMap::new();
    for (j, &c) in candidate.images[d][i].iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (v, cv) in cap(u, &ambient.strata[d][j].elem) {
            *total.entry(v).or_insert(0) += c * cv;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

/// Check the multiplicativity of the adjoint pull-back on a known product:
/// `ι^*τ^{u} ∪ ι^*τ^{v} = ι^*(τ^u ∪ τ^v)`, with all products expanded via
/// the structure-constant oracles of the two contexts.
pub fn pullback_ring_test(
    folded: &SchubertContext,
    ambient: &SchubertContext,
    candidate: &PushforwardCandidate,
    u: &WeylElement,
    v: &WeylElement,
) -> bool {
    let (du, ju) = ambient.find(u).expect("u must be an enumerated class");
    let (dv, jv) = ambient.find(v).expect("v must be an enumerated class");
    let dw = du + dv;
    if candidate.images.len() <= dw {
        return true;
    }
    let pu = candidate.pullback_coeffs(du, ju);
    let pv = candidate.pullback_coeffs(dv, jv);
    // LHS: product of pull-backs in the folded ring.
    let mut lhs = vec![num_bigint::BigInt::from(0); folded.strata[dw].len()];
    for (i1, &c1) in pu.iter().enumerate() {
        if c1 == 0 {
            continue;
        }
        for (i2, &c2) in pv.iter().enumerate() {
            if c2 == 0 {
                continue;
            }
            let prod = crate::schubert::structure_constants(
                folded,
                &folded.strata[du][i1].elem,
                &folded.strata[dv][i2].elem,
            )
            .expect("folded stratum enumerated");
            for (w, c) in prod.terms {
                let (_, iw) = folded.find(&w).unwrap();
                lhs[iw] += c * c1 * c2;
            }
        }
    }
    // RHS: pull back the ambient product term by term.
    let mut rhs = vec![num_bigint::BigInt::from(0); folded.strata[dw].len()];
    let prod = crate::schubert::structure_constants(ambient, u, v).expect("ambient enumerated");
    for (w, c) in prod.terms {
        let (_, jw) = ambient.find(&w).unwrap();
        for (iw, &pc) in candidate.pullback_coeffs(dw, jw).iter().enumerate() {
            rhs[iw] += &c * pc;
        }
    }
    lhs == rhs
}

/// Find a stratum class by the peak signature of its heap (the sorted
/// `(color, occurrence)` pairs of its maximal elements), the canonical way
/// class labels are pinned down.
pub fn class_by_peaks<'a>(
    strata: &'a [Vec<StratumHeap>],
    degree: usize,
    peaks: &[(usize, usize)],
) -> Option<&'a StratumHeap> {
    let mut want: Vec<(usize, usize)> = peaks.to_vec();
    want.sort_unstable();
    strata.get(degree)?.iter().find(|s| {
        s.heap.peak_signature(s.heap.full_mask()) == want
    })
}

/// JSON description of a folding instance.
#[derive(Debug, Deserialize)]
pub struct FoldingSpec {
    pub ambient: String,
    /// Orbits given by ambient node labels, in folded node order.
    pub orbits: Vec<Vec<String>>,
    pub marked_folded: usize,
}

impl FoldingSpec {
    pub fn parse(json: &str) -> Result<FoldingSpec, serde_json::Error> {
        serde_json::from_str(json)
    }

    pub fn build(&self) -> Result<FoldedPair, FoldError> {
        let data = crate::cartan::catalog(&self.ambient)
            .unwrap_or_else(|_| panic!("unknown catalog diagram {}", self.ambient));
        let orbits: Vec<Vec<usize>> = self
            .orbits
            .iter()
            .map(|o| {
                o.iter()
                    .map(|l| {
                        data.node_index(l)
                            .unwrap_or_else(|| panic!("unknown node label {l}"))
                    })
                    .collect()
            })
            .collect();
        fold_with_orbits(&data, &orbits)
    }
}

/// Does `a` equal `b` after relabeling nodes (and optionally transposing)?
/// Brute force over permutations; diagrams are small.
pub fn matches_catalog(a: &CartanData, b: &CartanData) -> Option<(Vec<usize>, bool)> {
    if a.n() != b.n() {
        return None;
    }
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm over permutations.
    fn try_perm(a: &CartanData, b: &CartanData, perm: &[usize], transpose: bool) -> bool {
        let n = a.n();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = a.a[i][j];
                let rhs = if transpose {
                    b.a[perm[j]][perm[i]]
                } else {
                    b.a[perm[i]][perm[j]]
                };
                lhs == rhs
            })
        })
    }
    fn permute(
        k: usize,
        perm: &mut Vec<usize>,
        a: &CartanData,
        b: &CartanData,
    ) -> Option<(Vec<usize>, bool)> {
        if k == perm.len() {
            for &t in &[false, true] {
                if try_perm(a, b, perm, t) {
                    return Some((perm.clone(), t));
                }
            }
            return None;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            if let Some(r) = permute(k + 1, perm, a, b) {
                return Some(r);
            }
            perm.swap(k, i);
        }
        None
    }
    permute(0, &mut perm, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::catalog;

    #[test]
    fn identity_fold() {
        let a3 = catalog("A3").unwrap();
        let theta = DiagramAutomorphism::identity(3);
        let pair = fold(&a3, &theta).unwrap();
        assert_eq!(pair.folded.a, a3.a);
        let w = canonicalize(&a3, &[0, 1]);
        assert_eq!(pair.lift_element(&w), w);
    }

    #[test]
    fn e6_folds_to_f4() {
        let e6 = catalog("E6").unwrap();
        // Bourbaki E6 symmetry: 1↔6, 3↔5, 4 and 2 fixed.
        let perm: Vec<usize> = vec![5, 1, 4, 3, 2, 0];
        let theta = DiagramAutomorphism::new(&e6, perm).unwrap();
        let pair = fold_with_orbits(&e6, &[vec![0, 5], vec![2, 4], vec![3], vec![1]]).unwrap();
        let f4 = catalog("F4").unwrap();
        assert_eq!(pair.folded.a, f4.a);
        let _ = theta;
    }

    #[test]
    fn folding_spec_json() {
        let spec = FoldingSpec::parse(
            r#"{"ambient":"E6","orbits":[["1","6"],["3","5"],["4"],["2"]],"marked_folded":1}"#,
        )
        .unwrap();
        let pair = spec.build().unwrap();
        assert_eq!(pair.folded.a, catalog("F4").unwrap().a);
    }

    #[test]
    fn affine_e7_folds_to_twisted_f4() {
        let e7a = catalog("affine-E7-1").unwrap();
        // The order-2 symmetry of the affine E7 diagram: 0↔7, 1↔6, 3↔5.
        let zero = e7a.node_index("0").unwrap();
        let idx = |s: &str| e7a.node_index(s).unwrap();
        let orbits = vec![
            vec![zero, idx("7")],
            vec![idx("1"), idx("6")],
            vec![idx("3"), idx("5")],
            vec![idx("4")],
            vec![idx("2")],
        ];
        let pair = fold_with_orbits(&e7a, &orbits).unwrap();
        let twisted = catalog("tw-affine-F4-2").unwrap();
        assert!(matches_catalog(&pair.folded, &twisted).is_some());
    }

    #[test]
    fn unfold_preserves_heap_shape() {
        // Spinor B3 inside D4: fold D4 by its 3↔4 symmetry.
        let d4 = catalog("D4").unwrap();
        let pair = fold_with_orbits(&d4, &[vec![0], vec![1], vec![2, 3]]).unwrap();
        let b3 = catalog("B3").unwrap();
        assert!(matches_catalog(&pair.folded, &b3).is_some());
        let folded_lambda = Weight::fundamental(3, 2);
        let ambient_lambda = pair.ambient_weight(2);
        // All minuscule elements of the folded spinor space up to length 6.
        let strata = minuscule_strata(&pair.folded, &folded_lambda, 6, false);
        for level in &strata {
            for s in level {
                let (u, iso) =
                    unfold_minuscule(&pair, &folded_lambda, &ambient_lambda, &s.elem).unwrap();
                assert_eq!(u.len(), s.elem.len());
                assert_eq!(iso.len(), s.elem.len());
            }
        }
    }

    #[test]
    fn extension_split() {
        // p = 1: no folding, single image.
        let a2 = catalog("A2").unwrap();
        let w = canonicalize(&a2, &[1, 0]);
        let ext = pushforward_extension(&a2, 0, 1, &w).unwrap();
        assert_eq!(ext.images.len(), 1);
        assert_eq!(ext.extended.len(), 3);
        // p = 2: two images, and the bonded diagram has the double bond.
        let ext2 = pushforward_extension(&a2, 0, 2, &w).unwrap();
        assert_eq!(ext2.images.len(), 2);
        assert_eq!(ext2.bonded.a[0][2], -2);
        assert_eq!(ext2.bonded.a[2][0], -1);
    }
}
