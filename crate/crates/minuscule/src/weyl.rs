//! Weyl group elements as reduced words: reduction, canonical forms, Bruhat
//! order, minimal coset representatives, and stratified enumeration of W^P.
//!
//! Elements are stored as their canonical reduced word — the
//! lexicographically least reduced word, obtained by repeatedly taking the
//! smallest left descent. This gives a unique key per group element without
//! needing a faithful matrix representation, and works uniformly in
//! Kac-Moody type.

use crate::cartan::{
    pairing_simple_coroot, reflect_root, reflect_weight, CartanData, RootVector, Weight,
};
use std::collections::HashMap;

/// A Weyl group element, stored by its canonical (lex-least) reduced word of
/// 0-based node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub word: Vec<u8>,
}

impl WeylElement {
    pub fn identity() -> WeylElement {
        WeylElement { word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Render using the diagram's node ids, e.g. "s1 s3 s2".
    pub fn display(&self, data: &CartanData) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word
            .iter()
            .map(|&i| format!("s{}", data.nodes[i as usize]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A parabolic subgroup, given by the marked nodes (the generators of W_P are
/// the *unmarked* nodes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parabolic {
    pub marked: Vec<usize>,
}

impl Parabolic {
    pub fn new(marked: Vec<usize>) -> Parabolic {
        Parabolic { marked }
    }

    pub fn is_marked(&self, i: usize) -> bool {
        self.marked.contains(&i)
    }

    /// The dominant weight Σ ϖ_i over the marked nodes.
    pub fn weight(&self, n: usize) -> Weight {
        let mut w = Weight::zero(n);
        for &i in &self.marked {
            w.wt[i] = 1;
        }
        w
    }
}

/// `w(β)` for a word `w = s_{i_1}…s_{i_l}` acting on a root vector
/// (letters applied right to left).
pub fn apply_word_to_root(data: &CartanData, word: &[u8], beta: &RootVector) -> RootVector {
    let mut v = beta.clone();
    for &i in word.iter().rev() {
        v = reflect_root(data, i as usize, &v);
    }
    v
}

/// `w(λ)` for a mixed weight.
pub fn apply_word_to_weight(data: &CartanData, word: &[u8], lambda: &Weight) -> Weight {
    let mut v = lambda.clone();
    for &i in word.iter().rev() {
        v = reflect_weight(data, i as usize, &v);
    }
    v
}

/// `w^{-1}(α_i)` — apply the letters left to right.
fn inverse_image_of_simple(data: &CartanData, word: &[u8], i: usize) -> RootVector {
    let mut v = RootVector::simple(data.n(), i);
    for &k in word.iter() {
        v = reflect_root(data, k as usize, &v);
    }
    v
}

/// The root sequence `β_k = s_{i_1}…s_{i_{k-1}}(α_{i_k})`; the word is reduced
/// iff every `β_k` is positive.
pub fn root_sequence(data: &CartanData, word: &[u8]) -> Vec<RootVector> {
    (0..word.len())
        .map(|k| {
            let mut v = RootVector::simple(data.n(), word[k] as usize);
            for &i in word[..k].iter().rev() {
                v = reflect_root(data, i as usize, &v);
            }
            v
        })
        .collect()
}

pub fn is_reduced(data: &CartanData, word: &[u8]) -> bool {
    root_sequence(data, word).iter().all(|b| b.is_positive())
}

/// Produce some reduced word for the element of `word` by repeatedly deleting
/// exchange pairs.
pub fn reduce(data: &CartanData, word: &[u8]) -> Vec<u8> {
    let mut w: Vec<u8> = word.to_vec();
    'outer: loop {
        // Find the first position k whose prefix-reflected root is negative.
        for k in 0..w.len() {
            let mut v = RootVector::simple(data.n(), w[k] as usize);
            let mut bad = v.is_negative();
            let mut j_del = None;
            for jj in (0..k).rev() {
                v = reflect_root(data, w[jj] as usize, &v);
                if v.is_negative() {
                    bad = true;
                    // Just before this reflection v was α_{w[jj]}.
                    j_del = Some(jj);
                    break;
                }
            }
            if bad {
                let j = j_del.expect("a negative prefix root has an exchange position");
                // Delete positions j and k.
                let mut nw = Vec::with_capacity(w.len() - 2);
                for (p, &c) in w.iter().enumerate() {
                    if p != j && p != k {
                        nw.push(c);
                    }
                }
                w = nw;
                continue 'outer;
            }
        }
        return w;
    }
}

/// Reduced word for `s_i·w` given a reduced `word` with `l(s_i w) < l(w)`:
/// delete the unique position whose prefix root is `α_i`.
fn left_descend(data: &CartanData, word: &[u8], i: usize) -> Vec<u8> {
    let alpha = RootVector::simple(data.n(), i);
    for k in 0..word.len() {
        let mut v = RootVector::simple(data.n(), word[k] as usize);
        for &j in word[..k].iter().rev() {
            v = reflect_root(data, j as usize, &v);
        }
        if v == alpha {
            let mut nw = word.to_vec();
            nw.remove(k);
            return nw;
        }
    }
    panic!("left_descend called without a left descent");
}

/// Canonical (lex-least) reduced word of the element given by any word.
pub fn canonicalize(data: &CartanData, word: &[u8]) -> WeylElement {
    let mut w = reduce(data, word);
    let mut out = Vec::with_capacity(w.len());
    while !w.is_empty() {
        let mut found = None;
        for i in 0..data.n() {
            if inverse_image_of_simple(data, &w, i).is_negative() {
                found = Some(i);
                break;
            }
        }
        let i = found.expect("a nonempty reduced word has a left descent");
        out.push(i as u8);
        w = left_descend(data, &w, i);
    }
    WeylElement { word: out }
}

/// Group multiplication (concatenate and reduce to canonical form).
pub fn multiply(data: &CartanData, u: &WeylElement, v: &WeylElement) -> WeylElement {
    let mut w = u.word.clone();
    w.extend_from_slice(&v.word);
    canonicalize(data, &w)
}

pub fn inverse(data: &CartanData, u: &WeylElement) -> WeylElement {
    let rev: Vec<u8> = u.word.iter().rev().cloned().collect();
    canonicalize(data, &rev)
}

/// `i` is a left descent of `w` iff `w^{-1}(α_i) < 0`.
pub fn is_left_descent(data: &CartanData, w: &WeylElement, i: usize) -> bool {
    inverse_image_of_simple(data, &w.word, i).is_negative()
}

/// `i` is a right descent of `w` iff `w(α_i) < 0`.
pub fn is_right_descent(data: &CartanData, w: &WeylElement, i: usize) -> bool {
    apply_word_to_root(data, &w.word, &RootVector::simple(data.n(), i)).is_negative()
}

/// Strong Bruhat order, by the first-letter recursion on canonical words.
pub fn bruhat_leq(data: &CartanData, u: &WeylElement, w: &WeylElement) -> bool {
    let mut u_word = u.word.clone();
    let mut w_word = w.word.clone();
    loop {
        if u_word.len() > w_word.len() {
            return false;
        }
        if u_word.is_empty() {
            return true;
        }
        // First letter of the canonical word of w is a left descent of w.
        let i = w_word[0] as usize;
        w_word.remove(0);
        if inverse_image_of_simple(data, &u_word, i).is_negative() {
            u_word = left_descend(data, &u_word, i);
            // Keep u_word canonical-ish (any reduced word works for descents,
            // but re-canonicalize to keep the first-letter logic valid for w
            // only; u may be any reduced word).
        }
    }
}

/// Minimal length representative of the coset `w·W_P`.
pub fn min_coset_rep(data: &CartanData, w: &WeylElement, p: &Parabolic) -> WeylElement {
    let mut word = w.word.clone();
    'outer: loop {
        for j in 0..data.n() {
            if p.is_marked(j) {
                continue;
            }
            let img = apply_word_to_root(data, &word, &RootVector::simple(data.n(), j));
            if img.is_negative() {
                // w·s_j is shorter: delete the position whose suffix root is α_j.
                let alpha = RootVector::simple(data.n(), j);
                for k in (0..word.len()).rev() {
                    let mut v = RootVector::simple(data.n(), word[k] as usize);
                    for &m in word[k + 1..].iter() {
                        v = reflect_root(data, m as usize, &v);
                    }
                    if v == alpha {
                        word.remove(k);
                        continue 'outer;
                    }
                }
                unreachable!("right descent without an exchange position");
            }
        }
        return canonicalize(data, &word);
    }
}

/// `w` is the minimal representative of `w·W_P` iff `w(α_j) > 0` for every
/// unmarked `j`.
pub fn is_min_rep(data: &CartanData, w: &WeylElement, p: &Parabolic) -> bool {
    (0..data.n())
        .filter(|j| !p.is_marked(*j))
        .all(|j| !apply_word_to_root(data, &w.word, &RootVector::simple(data.n(), j)).is_negative())
}

/// One stratum entry of a W^P enumeration: the element and `w(Λ)`.
#[derive(Debug, Clone)]
pub struct StratumElem {
    pub elem: WeylElement,
    pub weight: Weight,
}

/// BFS on the W-orbit of a dominant weight `Λ`: stratum `ℓ` contains exactly
/// the length-`ℓ` minimal representatives of `W/W_P` for `P = Stab(Λ)`,
/// each with its weight `w(Λ)`. Terminates early when the orbit is finite.
pub fn enumerate_min_reps(data: &CartanData, lambda: &Weight, max_len: usize) -> Vec<Vec<StratumElem>> {
    assert!(lambda.is_dominant(data), "enumerate_min_reps needs a dominant weight");
    let mut strata: Vec<Vec<StratumElem>> = Vec::new();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut frontier = vec![(Vec::<u8>::new(), lambda.clone())];
    seen.insert(lambda.rt.clone(), ());
    for _len in 0..=max_len {
        let mut stratum: Vec<StratumElem> = frontier
            .iter()
            .map(|(word, weight)| StratumElem {
                elem: canonicalize(data, word),
                weight: weight.clone(),
            })
            .collect();
        stratum.sort_by(|a, b| a.elem.word.cmp(&b.elem.word));
        let next: Vec<(Vec<u8>, Weight)> = {
            let mut next = Vec::new();
            for (word, weight) in &frontier {
                for i in 0..data.n() {
                    if pairing_simple_coroot(data, weight, i) > 0 {
                        let nw = reflect_weight(data, i, weight);
                        if seen.insert(nw.rt.clone(), ()).is_none() {
                            let mut nword = vec![i as u8];
                            nword.extend_from_slice(word);
                            next.push((nword, nw));
                        }
                    }
                }
            }
            next
        };
        strata.push(stratum);
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    strata
}

/// Longest element of a finite Weyl group (None when the group is infinite
/// within the safety cap).
pub fn longest_element(data: &CartanData) -> Option<WeylElement> {
    let n = data.n();
    let rho = Weight::from_coeffs(vec![1; n]);
    let mut word: Vec<u8> = Vec::new();
    let mut mu = rho;
    // w_0 has length = number of positive roots; cap generously.
    for _ in 0..100_000 {
        let mut step = None;
        for i in 0..n {
            if pairing_simple_coroot(data, &mu, i) > 0 {
                step = Some(i);
                break;
            }
        }
        match step {
            Some(i) => {
                mu = reflect_weight(data, i, &mu);
                word.insert(0, i as u8);
            }
            None => return Some(canonicalize(data, &word)),
        }
    }
    None
}

/// Longest element of the parabolic subgroup W_P (generated by the unmarked
/// nodes), expressed in the ambient group.
pub fn longest_parabolic_element(data: &CartanData, p: &Parabolic) -> Option<WeylElement> {
    let keep: Vec<usize> = (0..data.n()).filter(|i| !p.is_marked(*i)).collect();
    if keep.is_empty() {
        return Some(WeylElement::identity());
    }
    let sub = data.subdiagram(&keep);
    let w0 = longest_element(&sub)?;
    let word: Vec<u8> = w0.word.iter().map(|&i| keep[i as usize] as u8).collect();
    Some(canonicalize(data, &word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::catalog;

    #[test]
    fn a2_reduced_words() {
        let a2 = catalog("A2").unwrap();
        assert!(is_reduced(&a2, &[0, 1, 0]));
        assert_eq!(canonicalize(&a2, &[0, 1, 0]).word, vec![0, 1, 0]);
        assert!(!is_reduced(&a2, &[0, 0]));
        assert!(canonicalize(&a2, &[0, 0]).word.is_empty());
        // s1 s2 s1 = s2 s1 s2.
        assert_eq!(canonicalize(&a2, &[1, 0, 1]).word, vec![0, 1, 0]);
    }

    #[test]
    fn f4_length_seven_word() {
        let f4 = catalog("F4").unwrap();
        // s1 s3 s2 s4 s3 s2 s1, 0-based.
        let w = [0u8, 2, 1, 3, 2, 1, 0];
        assert!(is_reduced(&f4, &w));
        assert_eq!(canonicalize(&f4, &w).len(), 7);
    }

    #[test]
    fn bruhat_basics() {
        let a2 = catalog("A2").unwrap();
        let e = WeylElement::identity();
        let s1 = canonicalize(&a2, &[0]);
        let s2 = canonicalize(&a2, &[1]);
        let w0 = canonicalize(&a2, &[0, 1, 0]);
        assert!(bruhat_leq(&a2, &e, &w0));
        assert!(!bruhat_leq(&a2, &s1, &s2));
        assert!(bruhat_leq(&a2, &s1, &w0));
        assert!(bruhat_leq(&a2, &canonicalize(&a2, &[0, 1]), &w0));
    }

    #[test]
    fn coset_reps() {
        let a2 = catalog("A2").unwrap();
        let p2 = Parabolic::new(vec![1]);
        // s2 s1 · W_{P2} = {s2 s1, s2}; the minimal representative is s2.
        let w = canonicalize(&a2, &[1, 0]);
        assert_eq!(min_coset_rep(&a2, &w, &p2).word, vec![1]);
        // s1 s2 is already minimal: s1 s2 (α_1) = α_2 > 0.
        let w2 = canonicalize(&a2, &[0, 1]);
        assert_eq!(min_coset_rep(&a2, &w2, &p2).word, vec![0, 1]);
        // With node 1 marked, W_P = ⟨s2⟩: s1 is already a minimal rep.
        let p1 = Parabolic::new(vec![0]);
        let s1 = canonicalize(&a2, &[0]);
        assert_eq!(min_coset_rep(&a2, &s1, &p1).word, vec![0]);
        let s1s2 = canonicalize(&a2, &[0, 1]);
        assert_eq!(min_coset_rep(&a2, &s1s2, &p1).word, vec![0]);
        assert!(is_min_rep(&a2, &WeylElement::identity(), &p1));
    }

    #[test]
    fn grassmannian_betti_a3p2() {
        let a3 = catalog("A3").unwrap();
        let strata = enumerate_min_reps(&a3, &Weight::fundamental(3, 1), 10);
        let counts: Vec<usize> = strata.iter().map(|s| s.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn finite_orbit_terminates_early() {
        let a2 = catalog("A2").unwrap();
        let strata = enumerate_min_reps(&a2, &Weight::fundamental(2, 0), 9);
        assert_eq!(strata.len(), 3);
        assert_eq!(strata.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn longest_elements() {
        let a2 = catalog("A2").unwrap();
        assert_eq!(longest_element(&a2).unwrap().len(), 3);
        let f4 = catalog("F4").unwrap();
        assert_eq!(longest_element(&f4).unwrap().len(), 24);
        let p1 = Parabolic::new(vec![0]);
        // W_P for F4/P1 is a C3/B3 group: 9 positive roots.
        assert_eq!(longest_parabolic_element(&f4, &p1).unwrap().len(), 9);
    }

    #[test]
    fn min_rep_length_additivity() {
        let f4 = catalog("F4").unwrap();
        let p = Parabolic::new(vec![0]);
        let w0 = longest_element(&f4).unwrap();
        let rep = min_coset_rep(&f4, &w0, &p);
        assert_eq!(rep.len(), 24 - 9);
        // w = rep · w_P with lengths adding.
        let w0p = longest_parabolic_element(&f4, &p).unwrap();
        assert_eq!(multiply(&f4, &rep, &w0p), w0);
    }
}
