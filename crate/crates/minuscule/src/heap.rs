//! Heaps of fully commutative Weyl group elements: construction from reduced
//! words, order ideals as bitsets, peaks, slant decomposition, and systems of
//! colored posets.
//!
//! Convention: a word `s_{c_1} … s_{c_l}` is read with the *first* letter at
//! the *top* of the heap. Internally elements carry a canonical index
//! 0..l-1 running bottom-up (index `e` is word position `l-1-e`); index order
//! is the colexicographically least linear extension. Order ideals are
//! `u128` bitmasks over that indexing, so heaps are capped at 128 elements.

use crate::cartan::{pairing_simple_coroot, reflect_weight, CartanData, Rat, Weight};
use crate::weyl::{canonicalize, WeylElement};
use std::collections::HashSet;
use thiserror::Error;

/// An order ideal (downward-closed subset) of a heap, as a bitmask over
/// canonical indices.
pub type IdealMask = u128;

#[derive(Debug, Error)]
pub enum HeapError {
    #[error("word is not minuscule or cominuscule for the given weight")]
    NotMinuscule,
    #[error("heap has more than 128 elements")]
    TooLarge,
    #[error("subset is not downward closed")]
    NotIdeal,
    #[error("no element with color {0} and rank {1}")]
    BadGenerator(usize, usize),
    #[error("attachment color {0} is not a maximal color of the base posets")]
    AttachmentNotMaximal(usize),
}

/// Walk the word right to left; every step must subtract exactly one simple
/// root from the running weight, i.e. `⟨w_k(Λ), α_{i_k}^∨⟩ = 1`.
fn minuscule_on(data: &CartanData, word: &[u8], lambda: &Weight) -> bool {
    let mut mu = lambda.clone();
    for &i in word.iter().rev() {
        if pairing_simple_coroot(data, &mu, i as usize) != 1 {
            return false;
        }
        mu = reflect_weight(data, i as usize, &mu);
    }
    true
}

/// `w` is Λ-minuscule: some (equivalently every) reduced word subtracts one
/// simple root per step when applied to `Λ`.
pub fn is_lambda_minuscule(data: &CartanData, word: &[u8], lambda: &Weight) -> bool {
    minuscule_on(data, word, lambda)
}

/// `w` is Λ-cominuscule: Λ-minuscule on the transposed root data.
pub fn is_lambda_cominuscule(data: &CartanData, word: &[u8], lambda: &Weight) -> bool {
    minuscule_on(&data.transpose(), word, lambda)
}

/// The heap of a Λ-(co)minuscule element: its elements ordered by the
/// transitive closure of "later letter is below earlier letter when the
/// colors do not commute".
#[derive(Debug, Clone)]
pub struct ColoredHeap {
    pub data: CartanData,
    pub lambda: Weight,
    /// True when built as Λ-minuscule, false when Λ-cominuscule. When both
    /// hold we record minuscule.
    pub minuscule: bool,
    /// Color (node index) per element, indexed bottom-up.
    pub colors: Vec<u8>,
    /// Strict down-set of each element.
    pub below: Vec<IdealMask>,
    /// Strict up-set of each element.
    pub above: Vec<IdealMask>,
}

fn closure_from_colors(data: &CartanData, colors: &[u8]) -> (Vec<IdealMask>, Vec<IdealMask>) {
    let l = colors.len();
    let mut below = vec![0u128; l];
    let mut above = vec![0u128; l];
    for f in 0..l {
        for e in 0..f {
            if data.a[colors[e] as usize][colors[f] as usize] != 0 {
                below[f] |= below[e] | (1u128 << e);
            }
        }
    }
    for f in 0..l {
        let mut m = below[f];
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            above[e] |= 1u128 << f;
        }
    }
    (below, above)
}

impl ColoredHeap {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn full_mask(&self) -> IdealMask {
        if self.colors.is_empty() {
            0
        } else {
            (1u128 << self.colors.len()) - 1
        }
    }

    pub fn is_ideal(&self, mask: IdealMask) -> bool {
        let mut m = mask;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.below[e] & !mask != 0 {
                return false;
            }
        }
        true
    }

    /// Minimal elements of an arbitrary subset (as a submask).
    pub fn minimal_in(&self, set: IdealMask) -> IdealMask {
        let mut out = 0u128;
        let mut m = set;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.below[e] & set == 0 {
                out |= 1u128 << e;
            }
        }
        out
    }

    /// Maximal elements of an arbitrary subset (as a submask).
    pub fn maximal_in(&self, set: IdealMask) -> IdealMask {
        let mut out = 0u128;
        let mut m = set;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.above[e] & set == 0 {
                out |= 1u128 << e;
            }
        }
        out
    }

    /// Hasse covering pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let l = self.len();
        let mut out = Vec::new();
        for f in 0..l {
            let mut m = self.below[f];
            while m != 0 {
                let e = m.trailing_zeros() as usize;
                m &= m - 1;
                // e ⋖ f iff nothing lies strictly between.
                if self.below[f] & self.above[e] == 0 {
                    out.push((e, f));
                }
            }
        }
        out
    }

    /// All order ideals, each built by adding elements in increasing index
    /// order (which visits every ideal exactly once).
    pub fn ideals(&self) -> Vec<IdealMask> {
        let mut out = Vec::new();
        let l = self.len();
        let mut stack = vec![(0u128, 0usize)];
        while let Some((mask, start)) = stack.pop() {
            out.push(mask);
            for e in start..l {
                if mask & (1u128 << e) == 0 && self.below[e] & !mask == 0 {
                    stack.push((mask | (1u128 << e), e + 1));
                }
            }
        }
        out
    }

    /// Order ideals of a given cardinality.
    pub fn ideals_of_size(&self, k: usize) -> Vec<IdealMask> {
        self.ideals()
            .into_iter()
            .filter(|m| m.count_ones() as usize == k)
            .collect()
    }

    /// The Weyl group element of an ideal: colors multiplied top-down
    /// (decreasing canonical index is always a reverse linear extension).
    pub fn ideal_to_element(&self, mask: IdealMask) -> WeylElement {
        debug_assert!(self.is_ideal(mask));
        let mut word: Vec<u8> = Vec::with_capacity(mask.count_ones() as usize);
        for e in (0..self.len()).rev() {
            if mask & (1u128 << e) != 0 {
                word.push(self.colors[e]);
            }
        }
        canonicalize(&self.data, &word)
    }

    /// The unique order ideal whose element is `u` (None when `u ≰ w`).
    pub fn ideal_of_element(&self, u: &WeylElement) -> Option<IdealMask> {
        let target = u.len();
        let mut seen: HashSet<IdealMask> = HashSet::new();
        self.peel(self.full_mask(), u, target, &mut seen)
    }

    fn peel(
        &self,
        mask: IdealMask,
        u: &WeylElement,
        target: usize,
        seen: &mut HashSet<IdealMask>,
    ) -> Option<IdealMask> {
        if !seen.insert(mask) {
            return None;
        }
        let size = mask.count_ones() as usize;
        if size == target {
            return (self.ideal_to_element(mask) == *u).then_some(mask);
        }
        let mut peaks = self.maximal_in(mask);
        while peaks != 0 {
            let e = peaks.trailing_zeros() as usize;
            peaks &= peaks - 1;
            let next = mask & !(1u128 << e);
            if crate::weyl::bruhat_leq(&self.data, u, &self.ideal_to_element(next)) {
                if let Some(found) = self.peel(next, u, target, seen) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// Number of elements in `mask` colored like `e` and `≤ e` in the heap
    /// order (the `k` of the `(α,k)` notation).
    pub fn color_rank(&self, e: usize, mask: IdealMask) -> usize {
        let mut k = 1;
        let mut m = self.below[e] & mask;
        while m != 0 {
            let f = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.colors[f] == self.colors[e] {
                k += 1;
            }
        }
        k
    }

    /// The element `(α,k)` — the k-th lowest α-colored element of `mask`.
    pub fn element_by_color_rank(&self, color: usize, k: usize, mask: IdealMask) -> Option<usize> {
        let mut count = 0;
        for e in 0..self.len() {
            if mask & (1u128 << e) != 0 && self.colors[e] as usize == color {
                count += 1;
                if count == k {
                    return Some(e);
                }
            }
        }
        None
    }

    /// Smallest order ideal containing the elements `(α_i, k_i)`.
    pub fn ideal_from_generators(&self, gens: &[(usize, usize)]) -> Result<IdealMask, HeapError> {
        let mut mask = 0u128;
        for &(color, k) in gens {
            let e = self
                .element_by_color_rank(color, k, self.full_mask())
                .ok_or(HeapError::BadGenerator(color, k))?;
            mask |= self.below[e] | (1u128 << e);
        }
        Ok(mask)
    }

    /// Maximal elements of an ideal.
    pub fn peaks(&self, mask: IdealMask) -> Vec<usize> {
        let mut out = Vec::new();
        let mut m = self.maximal_in(mask);
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    /// Sorted `(color, k)` pairs of the maximal elements of an ideal; this
    /// determines the ideal (its generators).
    pub fn peak_signature(&self, mask: IdealMask) -> Vec<(usize, usize)> {
        let mut sig: Vec<(usize, usize)> = self
            .peaks(mask)
            .into_iter()
            .map(|e| (self.colors[e] as usize, self.color_rank(e, mask)))
            .collect();
        sig.sort();
        sig
    }

    /// Node set `S(x)`: all nodes of the diagram except the colors of the
    /// peaks of the full heap.
    pub fn recursion_support(&self) -> Vec<usize> {
        let peak_colors: HashSet<u8> = self
            .peaks(self.full_mask())
            .into_iter()
            .map(|e| self.colors[e])
            .collect();
        (0..self.data.n())
            .filter(|i| !peak_colors.contains(&(*i as u8)))
            .collect()
    }

    /// Sub-poset induced on the elements of `set` (any subset, not
    /// necessarily an ideal), reindexed in increasing old-index order.
    /// Returns the new heap-shaped poset and the old indices in new order.
    /// The (co)minuscule flags of the result are inherited, not re-checked.
    pub fn restrict(&self, set: IdealMask) -> (ColoredHeap, Vec<usize>) {
        let mut old: Vec<usize> = Vec::new();
        for e in 0..self.len() {
            if set & (1u128 << e) != 0 {
                old.push(e);
            }
        }
        let k = old.len();
        let mut below = vec![0u128; k];
        let mut above = vec![0u128; k];
        for (fi, &f) in old.iter().enumerate() {
            for (ei, &e) in old.iter().enumerate().take(fi) {
                if self.below[f] & (1u128 << e) != 0 {
                    below[fi] |= 1u128 << ei;
                    above[ei] |= 1u128 << fi;
                }
            }
        }
        let colors = old.iter().map(|&e| self.colors[e]).collect();
        (
            ColoredHeap {
                data: self.data.clone(),
                lambda: self.lambda.clone(),
                minuscule: self.minuscule,
                colors,
                below,
                above,
            },
            old,
        )
    }

    /// Extend the heap by one element colored `i` on top (the heap of
    /// `s_i · w` when the heap is `H(w)` and the extension is length
    /// increasing).
    pub fn extend_top(&self, i: usize) -> ColoredHeap {
        let l = self.len();
        assert!(l < 128, "heap capacity exceeded");
        let mut below = self.below.clone();
        let mut above = self.above.clone();
        let mut down = 0u128;
        for e in 0..l {
            if self.data.a[self.colors[e] as usize][i] != 0 {
                down |= below[e] | (1u128 << e);
            }
        }
        below.push(down);
        above.push(0);
        let mut m = down;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            above[e] |= 1u128 << l;
        }
        let mut colors = self.colors.clone();
        colors.push(i as u8);
        ColoredHeap {
            data: self.data.clone(),
            lambda: self.lambda.clone(),
            minuscule: self.minuscule,
            colors,
            below,
            above,
        }
    }

    /// The set of colors appearing in `mask`, sorted.
    pub fn colors_in(&self, mask: IdealMask) -> Vec<usize> {
        let mut set: Vec<usize> = Vec::new();
        let mut m = mask;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            let c = self.colors[e] as usize;
            if !set.contains(&c) {
                set.push(c);
            }
        }
        set.sort();
        set
    }

    /// Order on colors induced by the rooted tree: `α ≤ β` iff
    /// `(α,1) ≤ (β,1)` in the heap.
    pub fn color_leq(&self, alpha: usize, beta: usize) -> bool {
        let full = self.full_mask();
        let a = self.element_by_color_rank(alpha, 1, full).expect("color present");
        let b = self.element_by_color_rank(beta, 1, full).expect("color present");
        a == b || self.below[b] & (1u128 << a) != 0
    }

    /// Multiplicity of a color.
    pub fn color_multiplicity(&self, color: usize) -> usize {
        self.colors.iter().filter(|&&c| c as usize == color).count()
    }

    /// A heap is slant-irreducible when every color that is non-maximal in
    /// the rooted-tree order colors at least two elements.
    pub fn is_slant_irreducible(&self) -> bool {
        let cols = self.colors_in(self.full_mask());
        for &alpha in &cols {
            let non_maximal = cols
                .iter()
                .any(|&beta| beta != alpha && self.color_leq(alpha, beta));
            if non_maximal && self.color_multiplicity(alpha) < 2 {
                return false;
            }
        }
        true
    }

    /// Decompose into slant-irreducible components. The first component
    /// contains the minimal element; the rest hang above attachment points.
    pub fn slant_decompose(&self) -> Vec<ColoredHeap> {
        if self.is_empty() {
            return vec![self.clone()];
        }
        let full = self.full_mask();
        let cols = self.colors_in(full);
        // Root color: color of the unique minimal element.
        let minimal = self.minimal_in(full);
        let root_color = self.colors[minimal.trailing_zeros() as usize] as usize;
        for &alpha in &cols {
            if self.color_multiplicity(alpha) != 1 {
                continue;
            }
            let non_maximal = cols
                .iter()
                .any(|&beta| beta != alpha && self.color_leq(alpha, beta));
            if !non_maximal {
                continue;
            }
            let p = self
                .element_by_color_rank(alpha, 1, full)
                .expect("color present");
            // Connected components of the color set minus alpha, in the
            // diagram restricted to the colors of the heap.
            for comp in color_components(&self.data, &cols, alpha) {
                if comp.contains(&root_color) {
                    continue;
                }
                let mut part = 0u128;
                for e in 0..self.len() {
                    if comp.contains(&(self.colors[e] as usize)) {
                        part |= 1u128 << e;
                    }
                }
                // Valid slant split: the whole branch sits strictly above p.
                if part & !self.above[p] != 0 {
                    continue;
                }
                let (lower, _) = self.restrict(full & !part);
                let (upper, _) = self.restrict(part);
                let mut out = lower.slant_decompose();
                out.extend(upper.slant_decompose());
                return out;
            }
        }
        vec![self.clone()]
    }

    /// Every slant component is supported on a finite-type diagram.
    pub fn is_slant_finite_dimensional(&self) -> bool {
        self.slant_decompose()
            .iter()
            .all(|h| h.data.subdiagram(&h.colors_in(h.full_mask())).is_finite_type())
    }

    /// GraphViz rendering: rooted-tree elements solid, peaks as diamonds.
    pub fn to_dot(&self) -> String {
        let full = self.full_mask();
        let peaks: HashSet<usize> = self.peaks(full).into_iter().collect();
        let mut s = String::from("digraph heap {\n  rankdir=BT;\n");
        for e in 0..self.len() {
            let c = self.colors[e] as usize;
            let rooted = self.color_rank(e, full) == 1;
            let shape = if peaks.contains(&e) {
                "diamond"
            } else {
                "circle"
            };
            let style = if rooted { "filled" } else { "solid" };
            s.push_str(&format!(
                "  n{e} [label=\"{}\", shape={shape}, style={style}];\n",
                self.data.nodes[c]
            ));
        }
        for (e, f) in self.covers() {
            s.push_str(&format!("  n{e} -> n{f};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Connected components of `cols − {alpha}` in the diagram.
fn color_components(data: &CartanData, cols: &[usize], alpha: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = cols.iter().cloned().filter(|&c| c != alpha).collect();
    let mut seen: HashSet<usize> = HashSet::new();
    let mut comps = Vec::new();
    for &start in &rest {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for &d in &rest {
                if !seen.contains(&d) && data.a[c][d] != 0 {
                    seen.insert(d);
                    comp.push(d);
                    stack.push(d);
                }
            }
        }
        comp.sort();
        comps.push(comp);
    }
    comps
}

/// Build the heap of a Λ-(co)minuscule element from a reduced word.
pub fn build_heap(
    data: &CartanData,
    lambda: &Weight,
    word: &[u8],
) -> Result<ColoredHeap, HeapError> {
    if word.len() > 128 {
        return Err(HeapError::TooLarge);
    }
    let minuscule = is_lambda_minuscule(data, word, lambda);
    let cominuscule = minuscule || is_lambda_cominuscule(data, word, lambda);
    if !minuscule && !cominuscule {
        return Err(HeapError::NotMinuscule);
    }
    let colors: Vec<u8> = word.iter().rev().cloned().collect();
    let (below, above) = closure_from_colors(data, &colors);
    let heap = ColoredHeap {
        data: data.clone(),
        lambda: lambda.clone(),
        minuscule,
        colors,
        below,
        above,
    };
    check_color_lengths(&heap);
    Ok(heap)
}

/// For fundamental Λ, no color of a Λ-minuscule heap is shorter than the
/// marked root, and no color of a Λ-cominuscule heap is longer. A violation
/// indicates corrupted input data, so it panics.
fn check_color_lengths(h: &ColoredHeap) {
    let Some(node) = h.lambda.is_fundamental() else {
        return;
    };
    let base: Rat = h.data.length_sq(node);
    for &c in &h.colors {
        let len = h.data.length_sq(c as usize);
        if h.minuscule {
            assert!(len >= base, "minuscule heap with a color shorter than the marked root");
        } else {
            assert!(len <= base, "cominuscule heap with a color longer than the marked root");
        }
    }
}

/// One element of a (co)minuscule stratum: the element, its heap, and the
/// running weight on the working data (transposed data in the cominuscule
/// case).
#[derive(Debug, Clone)]
pub struct StratumHeap {
    pub elem: WeylElement,
    pub heap: ColoredHeap,
    pub weight: Weight,
}

/// All Λ-minuscule (or Λ-cominuscule, per the flag) elements, stratified by
/// length up to `max_len`, each with a heap grown along a reduced word.
/// Stops early when no element extends.
pub fn minuscule_strata(
    data: &CartanData,
    lambda: &Weight,
    max_len: usize,
    cominuscule: bool,
) -> Vec<Vec<StratumHeap>> {
    let wd = if cominuscule { data.transpose() } else { data.clone() };
    let empty = ColoredHeap {
        data: data.clone(),
        lambda: lambda.clone(),
        minuscule: !cominuscule,
        colors: Vec::new(),
        below: Vec::new(),
        above: Vec::new(),
    };
    let mut strata: Vec<Vec<StratumHeap>> = Vec::new();
    let mut frontier = vec![StratumHeap {
        elem: WeylElement::identity(),
        heap: empty,
        weight: lambda.clone(),
    }];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(lambda.rt.clone());
    for _len in 0..=max_len {
        let mut next: Vec<StratumHeap> = Vec::new();
        for s in &frontier {
            for i in 0..data.n() {
                if pairing_simple_coroot(&wd, &s.weight, i) == 1 {
                    let nw = reflect_weight(&wd, i, &s.weight);
                    if seen.insert(nw.rt.clone()) {
                        let mut word = vec![i as u8];
                        word.extend_from_slice(&s.elem.word);
                        next.push(StratumHeap {
                            elem: canonicalize(data, &word),
                            heap: s.heap.extend_top(i),
                            weight: nw,
                        });
                    }
                }
            }
        }
        next.sort_by(|a, b| a.elem.word.cmp(&b.elem.word));
        if frontier.is_empty() {
            break;
        }
        strata.push(std::mem::take(&mut frontier));
        frontier = next;
    }
    strata
}

/// A system of colored posets closed under ideal embeddings, represented by
/// its maximal members. Ideals of the system are identified across members
/// by the Weyl group element they generate.
#[derive(Debug, Clone)]
pub struct PosetSystem {
    pub data: CartanData,
    pub members: Vec<ColoredHeap>,
    /// Descriptor of each member when built from a base family and
    /// attachments: (base index, S1, S2).
    pub index: Vec<(usize, Vec<usize>, Vec<usize>)>,
}

/// A poset to adjoin above a maximal color of the base family.
#[derive(Debug, Clone)]
pub struct Attachment {
    /// Node index in the base diagram at which the poset is attached.
    pub color: usize,
    /// The attached poset, over its own diagram; its unique minimal element
    /// is the marked node of that diagram.
    pub heap: ColoredHeap,
    /// Bond entries: (a[color][attached_min_color], a[attached_min_color][color]).
    pub bond: (i64, i64),
}

/// Build the system containing all ways of adjoining the attachment posets
/// above the maximal colors of the base family, together with the truncated
/// base posets this requires.
pub fn build_poset_system(
    base: &[ColoredHeap],
    attachments: &[Attachment],
) -> Result<PosetSystem, HeapError> {
    assert!(!base.is_empty());
    let d0 = &base[0].data;
    let n0 = d0.n();
    // Maximal colors of the rooted tree, computed on the first base member
    // (all members share the same rooted tree).
    let h0 = &base[0];
    let cols = h0.colors_in(h0.full_mask());
    let s0: Vec<usize> = cols
        .iter()
        .cloned()
        .filter(|&a| !cols.iter().any(|&b| b != a && h0.color_leq(a, b)))
        .collect();
    for att in attachments {
        if !s0.contains(&att.color) {
            return Err(HeapError::AttachmentNotMaximal(att.color));
        }
    }

    // Combined diagram: base nodes, then each attachment's nodes in order.
    let mut nodes: Vec<String> = d0.nodes.clone();
    let mut offsets: Vec<usize> = Vec::new();
    for (k, att) in attachments.iter().enumerate() {
        offsets.push(nodes.len());
        for name in &att.heap.data.nodes {
            nodes.push(format!("{name}#{k}"));
        }
    }
    let n = nodes.len();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n0 {
        for j in 0..n0 {
            a[i][j] = d0.a[i][j];
        }
    }
    for (k, att) in attachments.iter().enumerate() {
        let off = offsets[k];
        let da = &att.heap.data;
        for i in 0..da.n() {
            for j in 0..da.n() {
                a[off + i][off + j] = da.a[i][j];
            }
        }
        let min_color = att
            .heap
            .lambda
            .is_fundamental()
            .expect("attachment poset has a fundamental marked node");
        a[att.color][off + min_color] = att.bond.0;
        a[off + min_color][att.color] = att.bond.1;
    }
    for i in 0..n {
        a[i][i] = 2;
    }
    let data = CartanData::new(nodes, a, None).expect("combined matrix is a valid Cartan matrix");
    let mut lambda = Weight::zero(n);
    lambda.wt[..n0].copy_from_slice(&base[0].lambda.wt);
    lambda.rt[..n0].copy_from_slice(&base[0].lambda.rt);

    let mut members = Vec::new();
    let mut index = Vec::new();
    for (bi, h) in base.iter().enumerate() {
        for s1_bits in 0u32..(1 << s0.len()) {
            let s1: Vec<usize> = s0
                .iter()
                .enumerate()
                .filter(|(k, _)| s1_bits & (1 << k) != 0)
                .map(|(_, &c)| c)
                .collect();
            // Truncate: drop everything ≥ (α,2) for α ∈ S0−S1.
            let mut keep = h.full_mask();
            for &alpha in &s0 {
                if s1.contains(&alpha) {
                    continue;
                }
                if let Some(e) = h.element_by_color_rank(alpha, 2, h.full_mask()) {
                    keep &= !(self_and_above(h, e));
                }
            }
            for s2_bits in 0u32..(1 << s0.len()) {
                if s2_bits & !s1_bits != 0 {
                    continue;
                }
                let s2: Vec<usize> = s0
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| s2_bits & (1 << k) != 0)
                    .map(|(_, &c)| c)
                    .collect();
                // Only attach where an attachment poset was provided.
                if s2.iter().any(|c| !attachments.iter().any(|a| a.color == *c)) {
                    continue;
                }
                let member =
                    assemble_member(&data, &lambda, h, keep, &s2, attachments, &offsets)?;
                members.push(member);
                index.push((bi, s1.clone(), s2.clone()));
            }
        }
    }
    Ok(PosetSystem {
        data,
        members,
        index,
    })
}

fn self_and_above(h: &ColoredHeap, e: usize) -> IdealMask {
    h.above[e] | (1u128 << e)
}

fn assemble_member(
    data: &CartanData,
    lambda: &Weight,
    base: &ColoredHeap,
    keep: IdealMask,
    s2: &[usize],
    attachments: &[Attachment],
    offsets: &[usize],
) -> Result<ColoredHeap, HeapError> {
    // Collect colors bottom-up: the truncated base first, then each attached
    // poset (everything in an attachment lies above its attachment point,
    // and attachments to distinct maximal colors are incomparable, so any
    // concatenation order gives a linear extension).
    let (trunc, _) = base.restrict(keep);
    let mut colors: Vec<u8> = trunc.colors.clone();
    for (k, att) in attachments.iter().enumerate() {
        if !s2.contains(&att.color) {
            continue;
        }
        for &c in &att.heap.colors {
            colors.push((offsets[k] + c as usize) as u8);
        }
    }
    if colors.len() > 128 {
        return Err(HeapError::TooLarge);
    }
    let (below, above) = closure_from_colors(data, &colors);
    Ok(ColoredHeap {
        data: data.clone(),
        lambda: lambda.clone(),
        minuscule: base.minuscule,
        colors,
        below,
        above,
    })
}

impl PosetSystem {
    /// The trivial system consisting of the given heaps as members.
    pub fn from_members(members: Vec<ColoredHeap>) -> PosetSystem {
        assert!(!members.is_empty());
        let data = members[0].data.clone();
        let index = (0..members.len()).map(|i| (i, Vec::new(), Vec::new())).collect();
        PosetSystem {
            data,
            members,
            index,
        }
    }

    /// All ideals of the system, as Weyl group elements (the direct-limit
    /// identification of ideals across members).
    pub fn ideal_elements(&self) -> Vec<WeylElement> {
        let mut set: HashSet<WeylElement> = HashSet::new();
        for m in &self.members {
            for mask in m.ideals() {
                set.insert(m.ideal_to_element(mask));
            }
        }
        let mut out: Vec<WeylElement> = set.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.word.cmp(&b.word)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::catalog;
    use crate::weyl::{bruhat_leq, is_reduced};

    fn f4_w7() -> Vec<u8> {
        vec![0, 2, 1, 3, 2, 1, 0]
    }

    #[test]
    fn minuscule_tests() {
        let a2 = catalog("A2").unwrap();
        let w1 = Weight::fundamental(2, 0);
        assert!(is_lambda_minuscule(&a2, &[], &w1));
        assert!(is_lambda_minuscule(&a2, &[1, 0], &w1));
        assert!(!is_lambda_minuscule(&a2, &[1], &w1));
        let f4 = catalog("F4").unwrap();
        let p1 = Weight::fundamental(4, 0);
        assert!(is_lambda_cominuscule(&f4, &f4_w7(), &p1));
        assert!(!is_lambda_minuscule(&f4, &f4_w7(), &p1));
    }

    #[test]
    fn heap_structure_f4() {
        let f4 = catalog("F4").unwrap();
        let p1 = Weight::fundamental(4, 0);
        let h = build_heap(&f4, &p1, &f4_w7()).unwrap();
        assert_eq!(h.len(), 7);
        // Unique minimal element colored 1 (the marked node).
        let min = h.minimal_in(h.full_mask());
        assert_eq!(min.count_ones(), 1);
        assert_eq!(h.colors[min.trailing_zeros() as usize], 0);
        // Two peaks, colored 1 and 3.
        let peaks = h.peaks(h.full_mask());
        let mut peak_colors: Vec<u8> = peaks.iter().map(|&e| h.colors[e]).collect();
        peak_colors.sort();
        assert_eq!(peak_colors, vec![0, 2]);
        // Every linear extension, read top-down, is a reduced word for w.
        let w = h.ideal_to_element(h.full_mask());
        assert_eq!(w.word.len(), 7);
        assert!(is_reduced(&f4, &w.word));
    }

    #[test]
    fn ideals_match_bruhat_interval() {
        // |ideals(H(w))| = |{u ∈ W^P : u ≤ w}| on a B3 minuscule element.
        let b3 = catalog("B3").unwrap();
        let p3 = Weight::fundamental(3, 2);
        // Maximal ϖ3-minuscule element of B3 (spinor variety, dim 6).
        let strata = minuscule_strata(&b3, &p3, 10, false);
        let top = strata.last().unwrap()[0].clone();
        let ideal_count = top.heap.ideals().len();
        // Count minimal coset representatives below w by brute force.
        let all = crate::weyl::enumerate_min_reps(&b3, &p3, 20);
        let mut interval = 0;
        for stratum in &all {
            for s in stratum {
                if bruhat_leq(&b3, &s.elem, &top.elem) {
                    interval += 1;
                }
            }
        }
        assert_eq!(ideal_count, interval);
        assert_eq!(ideal_count, 8);
    }

    #[test]
    fn ideal_element_roundtrip() {
        let f4 = catalog("F4").unwrap();
        let p1 = Weight::fundamental(4, 0);
        let h = build_heap(&f4, &p1, &f4_w7()).unwrap();
        for mask in h.ideals() {
            let u = h.ideal_to_element(mask);
            assert_eq!(u.len() as u32, mask.count_ones());
            assert_eq!(h.ideal_of_element(&u), Some(mask));
        }
    }

    #[test]
    fn generators_and_signature() {
        let f4 = catalog("F4").unwrap();
        let p1 = Weight::fundamental(4, 0);
        let h = build_heap(&f4, &p1, &f4_w7()).unwrap();
        for mask in h.ideals() {
            if mask == 0 {
                continue;
            }
            let sig = h.peak_signature(mask);
            let back = h.ideal_from_generators(&sig).unwrap();
            assert_eq!(back, mask);
        }
    }

    #[test]
    fn strata_counts_grassmannian() {
        // A3, Λ=ϖ2: all of W^P is minuscule; Betti numbers 1,1,2,1,1.
        let a3 = catalog("A3").unwrap();
        let w2 = Weight::fundamental(3, 1);
        let strata = minuscule_strata(&a3, &w2, 10, false);
        let counts: Vec<usize> = strata.iter().map(|s| s.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn slant_decomposition() {
        // A3, Λ=ϖ1: the full minuscule heap is a chain colored 1,2,3;
        // colors 2 and 3 occur once and are above the root, so the chain
        // splits into three one-element components.
        let a3 = catalog("A3").unwrap();
        let w1 = Weight::fundamental(3, 0);
        let h = build_heap(&a3, &w1, &[2, 1, 0]).unwrap();
        let comps = h.slant_decompose();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.is_slant_irreducible()));
        assert!(h.is_slant_finite_dimensional());
        // The F4 length-7 heap is slant-irreducible.
        let f4 = catalog("F4").unwrap();
        let p1 = Weight::fundamental(4, 0);
        let h7 = build_heap(&f4, &p1, &f4_w7()).unwrap();
        assert!(h7.is_slant_irreducible());
        assert_eq!(h7.slant_decompose().len(), 1);
    }

    #[test]
    fn system_basics() {
        let a3 = catalog("A3").unwrap();
        let w2 = Weight::fundamental(3, 1);
        let strata = minuscule_strata(&a3, &w2, 10, false);
        let top = strata.last().unwrap()[0].heap.clone();
        let sys = PosetSystem::from_members(vec![top]);
        assert_eq!(sys.ideal_elements().len(), 6);
    }

    #[test]
    fn poset_system_construction() {
        // Base: the A1 one-element heap marked at its node; attach another
        // A1 poset above it with a single bond. Members: (S1,S2) ∈
        // {(∅,∅),({1},∅),({1},{1})} up to the base truncation; since the
        // base has its color occurring once, truncation is trivial and the
        // system has members of sizes 1,1,2.
        let a1 = catalog("A1").unwrap();
        let l = Weight::fundamental(1, 0);
        let base = build_heap(&a1, &l, &[0]).unwrap();
        let att = Attachment {
            color: 0,
            heap: build_heap(&a1, &l, &[0]).unwrap(),
            bond: (-1, -1),
        };
        let sys = build_poset_system(&[base], &[att]).unwrap();
        let mut sizes: Vec<usize> = sys.members.iter().map(|m| m.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2]);
        // The combined diagram is A2.
        assert!(sys.data.is_finite_type());
    }

    #[test]
    fn e8_adjoint_ideal_degree() {
        // E8, Λ=ϖ8: the ideal generated by (α_2,1) has degree 6.
        let e8 = catalog("E8").unwrap();
        let w8 = Weight::fundamental(8, 7);
        let strata = minuscule_strata(&e8, &w8, 6, true);
        let found = strata[6].iter().any(|s| {
            let full = s.heap.full_mask();
            s.heap.peak_signature(full) == vec![(1, 1)]
        });
        assert!(found);
        // And no shorter cominuscule element has that peak signature with
        // the peak being its only generator beyond degree 6 truncation.
        for d in 0..6 {
            for s in &strata[d] {
                let full = s.heap.full_mask();
                assert_ne!(s.heap.peak_signature(full), vec![(1, 1)]);
            }
        }
    }
}
