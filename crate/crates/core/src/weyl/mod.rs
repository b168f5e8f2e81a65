//! Weyl group elements, reduced words, dominantization and parity action.
//!
//! An element `w` is stored as the integral weight `w(rho)`, which determines
//! it because `rho` is regular. Words are read left to right:
//! `[i1, i2, ..., ik]` is `s_{i1} s_{i2} ... s_{ik}`.

mod enumerate;

pub use enumerate::{
    count_min_coset_reps, enumerate_min_coset_reps, CosetView, CosetVisitor, EnumContext,
    EnumOptions, EnumOutcome, MAXR,
};

use std::collections::HashMap;

use crate::rootsys::{ParityWeight, RootSystem, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    image: Vec<i64>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            image: vec![1; rs.rank()],
        }
    }

    /// The element `s_{word[0]} s_{word[1]} ...`.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut x = vec![1; rs.rank()];
        for &i in word.iter().rev() {
            rs.reflect_int(&mut x, i);
        }
        WeylElement { image: x }
    }

    /// Builds an element from its image of `rho`; `None` if the vector is not
    /// a Weyl conjugate of `rho`.
    pub fn from_image(rs: &RootSystem, image: Vec<i64>) -> Option<Self> {
        let mut x = image.clone();
        let mut steps = 0;
        while let Some(j) = x.iter().position(|&v| v < 0) {
            rs.reflect_int(&mut x, j);
            steps += 1;
            if steps > rs.num_pos() {
                return None;
            }
        }
        (x.iter().all(|&v| v == 1)).then_some(WeylElement { image })
    }

    /// `w(rho)` in fundamental coordinates.
    pub fn image(&self) -> &[i64] {
        &self.image
    }

    /// The lexicographically smallest reduced word, by repeatedly stripping
    /// the smallest left descent `j` (those with `<w rho, alpha_j^vee> < 0`).
    pub fn word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut x = self.image.clone();
        let mut word = Vec::new();
        while let Some(j) = x.iter().position(|&v| v < 0) {
            rs.reflect_int(&mut x, j);
            word.push(j);
        }
        word
    }

    pub fn length(&self, rs: &RootSystem) -> usize {
        self.word(rs).len()
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let mut w = self.word(rs);
        w.reverse();
        WeylElement::from_word(rs, &w)
    }

    /// `self * other`.
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> Self {
        let mut x = other.image.clone();
        for &i in self.word(rs).iter().rev() {
            rs.reflect_int(&mut x, i);
        }
        WeylElement { image: x }
    }

    /// `s_i * self`.
    pub fn left_mul(&self, rs: &RootSystem, i: usize) -> Self {
        let mut x = self.image.clone();
        rs.reflect_int(&mut x, i);
        WeylElement { image: x }
    }

    pub fn apply(&self, rs: &RootSystem, lambda: &Weight) -> Weight {
        apply_word(rs, &self.word(rs), lambda)
    }

    pub fn apply_int(&self, rs: &RootSystem, lambda: &[i64]) -> Vec<i64> {
        let mut x = lambda.to_vec();
        for &i in self.word(rs).iter().rev() {
            rs.reflect_int(&mut x, i);
        }
        x
    }

    /// Image of a root given in simple-root coordinates.
    pub fn apply_root(&self, rs: &RootSystem, a: &[i64]) -> Vec<i64> {
        let mut v = a.to_vec();
        for &i in self.word(rs).iter().rev() {
            rs.reflect_root(&mut v, i);
        }
        v
    }

    /// Indices of positive roots `alpha` with `w alpha < 0`, i.e. with
    /// `<w^{-1} rho, alpha^vee> < 0`.
    pub fn inversions(&self, rs: &RootSystem) -> Vec<usize> {
        let inv = self.inverse(rs);
        (0..rs.num_pos())
            .filter(|&k| rs.pair_int(&inv.image, k) < 0)
            .collect()
    }
}

/// Applies `s_{word[0]} ... s_{word[k-1]}` to a weight (rightmost first).
pub fn apply_word(rs: &RootSystem, word: &[usize], lambda: &Weight) -> Weight {
    let mut l = lambda.clone();
    for &i in word.iter().rev() {
        l = rs.reflect_weight(&l, i);
    }
    l
}

pub fn apply_weyl(rs: &RootSystem, w: &WeylElement, lambda: &Weight) -> Weight {
    w.apply(rs, lambda)
}

/// Greedy dominantization: repeatedly reflect in the smallest simple index
/// with a negative coordinate. Returns `(lambda_dom, w, word)` with
/// `lambda = w lambda_dom`, where `word` spells `w` left to right.
pub fn dominantize(rs: &RootSystem, lambda: &Weight) -> (Weight, WeylElement, Vec<usize>) {
    let mut l = lambda.clone();
    let mut word = Vec::new();
    while let Some(i) = l.0.iter().position(|x| x < &num_traits::Zero::zero()) {
        l = rs.reflect_weight(&l, i);
        word.push(i);
    }
    let w = WeylElement::from_word(rs, &word);
    (l, w, word)
}

/// Reduced word `beta_1 ... beta_l` of `w` and the coroots
/// `gamma_i^vee = s_{beta_l} ... s_{beta_{i+1}} beta_i^vee` (simple-coroot
/// coordinates), which run through the coroots of the inversion set of `w`.
pub fn reduced_word_and_inversions(
    rs: &RootSystem,
    w: &WeylElement,
) -> (Vec<usize>, Vec<Vec<i64>>) {
    let word = w.word(rs);
    let r = rs.rank();
    let gammas = (0..word.len())
        .map(|i| {
            let mut c = vec![0; r];
            c[word[i]] = 1;
            for &b in word[i + 1..].iter() {
                rs.reflect_coroot(&mut c, b);
            }
            c
        })
        .collect();
    (word, gammas)
}

/// `w delta mod 2` via an integral lift.
pub fn parity_action(rs: &RootSystem, w: &WeylElement, delta: &ParityWeight) -> ParityWeight {
    ParityWeight::from_ints(&w.apply_int(rs, &delta.to_ints()))
}

/// Applies a word to a parity weight.
pub fn parity_word(rs: &RootSystem, word: &[usize], delta: &ParityWeight) -> ParityWeight {
    let mut x = delta.to_ints();
    for &i in word.iter().rev() {
        rs.reflect_int(&mut x, i);
    }
    ParityWeight::from_ints(&x)
}

/// All elements of the subgroup generated by the given simple reflections,
/// each with a reduced word, in breadth-first order.
pub fn parabolic_subgroup(rs: &RootSystem, gens: &[usize]) -> Vec<(WeylElement, Vec<usize>)> {
    let id = WeylElement::identity(rs);
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out = vec![(id.clone(), Vec::new())];
    seen.insert(id.image.clone(), 0);
    let mut k = 0;
    while k < out.len() {
        let (w, word) = out[k].clone();
        for &i in gens {
            let u = w.left_mul(rs, i);
            if !seen.contains_key(&u.image) {
                let mut wd = vec![i];
                wd.extend(&word);
                seen.insert(u.image.clone(), out.len());
                out.push((u, wd));
            }
        }
        k += 1;
    }
    out
}

/// The longest element, characterised by `w0 rho = -rho`.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    WeylElement {
        image: vec![-1; rs.rank()],
    }
}
