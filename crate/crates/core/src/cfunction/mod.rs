//! Germs of the rank-one c-functions `c(s) = zeta*(1-s)/zeta*(1+s)` and
//! `c(s, xi)` at integers, the product over an inversion set as a formal
//! multiset, and pole data.
//!
//! Only the parity of `chi o alpha^vee` matters for orders at integers, so a
//! character is carried as a bit: `true` means the nontrivial quadratic one.

pub mod numeric;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::rootsys::{q, ParityWeight, RootSystem, Weight, Q};
use crate::weyl::{parity_action, WeylElement};

/// Whether `chi o alpha^vee` is nontrivial, i.e. `<delta, alpha^vee>` is odd.
pub fn char_parity(delta: &ParityWeight, coroot: &[i64]) -> bool {
    let s: i64 = delta
        .0
        .iter()
        .zip(coroot)
        .map(|(&d, &c)| d as i64 * c)
        .sum();
    s.rem_euclid(2) == 1
}

/// Order of vanishing at an integer (negative for a pole), with the value
/// when it is forced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermOrder {
    pub order: i32,
    pub value: Option<i64>,
}

/// Germ of `c(n + s)` (trivial character) or `c(n + s, xi)` at `s = 0`.
pub fn c_order_at_integer(n: i64, nontrivial: bool) -> GermOrder {
    match (nontrivial, n) {
        (true, 0) => GermOrder {
            order: 0,
            value: Some(1),
        },
        (true, _) => GermOrder {
            order: 0,
            value: None,
        },
        (false, 1) => GermOrder {
            order: -1,
            value: None,
        },
        (false, -1) => GermOrder {
            order: 1,
            value: None,
        },
        (false, 0) => GermOrder {
            order: 0,
            value: Some(-1),
        },
        (false, _) => GermOrder {
            order: 0,
            value: None,
        },
    }
}

/// One factor `c~_n(eps <mu, alpha^vee>, chi o alpha^vee)` of a product over an inversion set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorGerm {
    pub base: i64,
    pub slope: Q,
    pub nontrivial: bool,
    pub coroot: Vec<i64>,
}

/// Factors of `c(w, lambda0 + eps mu, chi)`, one per inversion of `w`.
pub fn factor_germs(
    rs: &RootSystem,
    w: &WeylElement,
    lambda0: &[i64],
    mu: &Weight,
    delta: &ParityWeight,
) -> Vec<FactorGerm> {
    w.inversions(rs)
        .into_iter()
        .map(|k| FactorGerm {
            base: rs.pair_int(lambda0, k),
            slope: rs.pair(mu, k),
            nontrivial: char_parity(delta, &rs.coroots[k]),
            coroot: rs.coroots[k].clone(),
        })
        .collect()
}

/// `S(w)` (positive-root indices) and `o_w = -#S(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleData {
    pub roots: Vec<usize>,
    pub order: i64,
}

/// Inversions `alpha` of `w` with `<lambda0, alpha^vee> = 1` and `<delta0, alpha^vee>` even.
pub fn pole_data(
    rs: &RootSystem,
    w: &WeylElement,
    lambda0: &[i64],
    delta0: &ParityWeight,
) -> PoleData {
    let roots: Vec<usize> = w
        .inversions(rs)
        .into_iter()
        .filter(|&k| rs.pair_int(lambda0, k) == 1 && !char_parity(delta0, &rs.coroots[k]))
        .collect();
    let order = -(roots.len() as i64);
    PoleData { roots, order }
}

/// Argument `a + b eps` of a factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arg {
    pub constant: Q,
    pub slope: Q,
}

impl Arg {
    fn neg(&self) -> Arg {
        Arg {
            constant: -self.constant.clone(),
            slope: -self.slope.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    /// Representative of `{s, -s}` together with the sign taken.
    fn canonical(&self) -> (Arg, bool) {
        let first = if self.constant.is_zero() {
            &self.slope
        } else {
            &self.constant
        };
        if first.is_negative() {
            (self.neg(), false)
        } else {
            (self.clone(), true)
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", self.constant)
        } else {
            write!(f, "{}+{}e", self.constant, self.slope)
        }
    }
}

/// A product of factors `c(arg, parity)` reduced by `c(s) c(-s) = 1`.
///
/// Each key is a canonical argument; the multiplicity counts `c(s)` as +1 and
/// `c(-s)` as -1. At `s = 0` the factor is `+-1` and squares to 1, so its
/// multiplicity is kept mod 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMultiset {
    factors: BTreeMap<(Arg, bool), i64>,
}

impl CMultiset {
    pub fn new() -> Self {
        CMultiset::default()
    }

    pub fn push(&mut self, arg: Arg, nontrivial: bool) {
        let zero = arg.is_zero();
        let (a, positive) = arg.canonical();
        let e = self.factors.entry((a.clone(), nontrivial)).or_insert(0);
        *e += if positive || zero { 1 } else { -1 };
        if zero {
            *e = e.rem_euclid(2);
        }
        if *e == 0 {
            self.factors.remove(&(a, nontrivial));
        }
    }

    pub fn extend(&mut self, other: &CMultiset) {
        for ((a, p), &m) in &other.factors {
            for _ in 0..m.abs() {
                let arg = if m > 0 || a.is_zero() {
                    a.clone()
                } else {
                    a.neg()
                };
                self.push(arg, *p);
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors with nonzero multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = (&Arg, bool, i64)> {
        self.factors.iter().map(|((a, p), &m)| (a, *p, m))
    }

    /// Total order at `eps = 0` when every argument is `n + b eps` with `n`
    /// an integer.
    pub fn order_at_zero(&self) -> Option<i64> {
        let mut o = 0;
        for (a, p, m) in self.iter() {
            if !a.constant.is_integer() {
                return None;
            }
            let n = a.constant.to_integer();
            let n: i64 = num_traits::ToPrimitive::to_i64(&n)?;
            o += m * c_order_at_integer(n, p).order as i64;
        }
        Some(o)
    }
}

/// `c(w, lambda + eps mu, chi)` as a multiset over the inversion set of `w`.
pub fn c_multiset(
    rs: &RootSystem,
    w: &WeylElement,
    lambda: &Weight,
    mu: &Weight,
    delta: &ParityWeight,
) -> CMultiset {
    let mut m = CMultiset::new();
    for k in w.inversions(rs) {
        m.push(
            Arg {
                constant: rs.pair(lambda, k),
                slope: rs.pair(mu, k),
            },
            char_parity(delta, &rs.coroots[k]),
        );
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleOutcome {
    pub ok: bool,
    /// A factor left over after cancelling the two sides.
    pub offending: Option<String>,
}

/// Checks `c(w1 w2, lambda, chi) = c(w1, w2 lambda, w2 chi) c(w2, lambda, chi)`.
pub fn cocycle_check(
    rs: &RootSystem,
    w1: &WeylElement,
    w2: &WeylElement,
    lambda: &Weight,
    mu: &Weight,
    delta: &ParityWeight,
) -> CocycleOutcome {
    let lhs = c_multiset(rs, &w1.compose(rs, w2), lambda, mu, delta);
    let mut rhs = c_multiset(
        rs,
        w1,
        &w2.apply(rs, lambda),
        &w2.apply(rs, mu),
        &parity_action(rs, w2, delta),
    );
    rhs.extend(&c_multiset(rs, w2, lambda, mu, delta));
    if lhs == rhs {
        return CocycleOutcome {
            ok: true,
            offending: None,
        };
    }
    // report one factor present on one side only
    let mut diff = lhs.clone();
    for (a, p, m) in rhs.iter() {
        for _ in 0..m.abs() {
            let arg = if m > 0 || a.is_zero() {
                a.neg()
            } else {
                a.clone()
            };
            diff.push(arg, p);
        }
    }
    let offending = diff
        .iter()
        .next()
        .map(|(a, p, m)| format!("c({a}{})^{m}", if p { ", xi" } else { "" }));
    CocycleOutcome {
        ok: false,
        offending,
    }
}

/// Sum of the germ orders of the factors of `c(w, lambda0 + eps mu, chi)`.
pub fn total_order(germs: &[FactorGerm]) -> i64 {
    germs
        .iter()
        .map(|g| c_order_at_integer(g.base, g.nontrivial).order as i64)
        .sum()
}

/// Rational weight with small random coordinates, for property checks.
pub fn random_weight<R: Rng>(r: usize, rng: &mut R) -> Weight {
    Weight(
        (0..r)
            .map(|_| q(rng.gen_range(-20..=20)) / q(rng.gen_range(1..=7)))
            .collect(),
    )
}

/// Random parity weight.
pub fn random_parity<R: Rng>(r: usize, rng: &mut R) -> ParityWeight {
    ParityWeight((0..r).map(|_| rng.gen_range(0..2)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{longest_element, parabolic_subgroup};
    use rand::SeedableRng;

    #[test]
    fn parity_examples() {
        let d = ParityWeight::fundamental(4, 0);
        assert!(char_parity(&d, &[1, 0, 0, 0]));
        assert!(!char_parity(&d, &[0, 1, 0, 0]));
        assert!(!char_parity(
            &ParityWeight::from_ints(&[0, 0, 0, 0]),
            &[1, 2, 3, 2]
        ));
    }

    #[test]
    fn germ_orders() {
        assert_eq!(c_order_at_integer(1, false).order, -1);
        assert_eq!(c_order_at_integer(-1, false).order, 1);
        assert_eq!(c_order_at_integer(0, false).value, Some(-1));
        assert_eq!(c_order_at_integer(5, true).order, 0);
        assert_eq!(c_order_at_integer(0, true).value, Some(1));
    }

    #[test]
    fn pole_data_examples() {
        let rs = RootSystem::parse("F4").unwrap();
        let l0 = [0, 0, 1, 0];
        let d0 = ParityWeight::parse_bits("1000").unwrap();
        assert_eq!(
            pole_data(&rs, &WeylElement::identity(&rs), &l0, &d0).order,
            0
        );
        // scan all positive roots for the long element
        let expect = (0..rs.num_pos())
            .filter(|&k| rs.pair_int(&l0, k) == 1 && !char_parity(&d0, &rs.coroots[k]))
            .count() as i64;
        assert_eq!(
            pole_data(&rs, &longest_element(&rs), &l0, &d0).order,
            -expect
        );
        // W_L = <s1, s2> when delta0 = 0101 fixes the zero set {1, 2, 4}
        let d0 = ParityWeight::parse_bits("0101").unwrap();
        for (w, _) in parabolic_subgroup(&rs, &[0]) {
            assert!(pole_data(&rs, &w, &l0, &d0).roots.is_empty());
        }
    }

    #[test]
    fn order_additivity() {
        let rs = RootSystem::parse("F4").unwrap();
        let l0 = [1, 0, 1, 1];
        let d0 = ParityWeight::parse_bits("1100").unwrap();
        for (w, _) in parabolic_subgroup(&rs, &[0, 1, 2, 3])
            .into_iter()
            .step_by(7)
        {
            let g = factor_germs(&rs, &w, &l0, &rs.rho(), &d0);
            assert_eq!(total_order(&g), pole_data(&rs, &w, &l0, &d0).order);
            let m = c_multiset(&rs, &w, &Weight::from_ints(&l0), &rs.rho(), &d0);
            assert_eq!(m.order_at_zero(), Some(total_order(&g)));
        }
    }

    #[test]
    fn simple_pair_cancels() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let rs = RootSystem::parse("G2").unwrap();
        let s = WeylElement::from_word(&rs, &[1]);
        let l = random_weight(2, &mut rng);
        let out = cocycle_check(&rs, &s, &s, &l, &rs.rho(), &ParityWeight::fundamental(2, 1));
        assert!(out.ok);
        let e = WeylElement::identity(&rs);
        assert!(cocycle_check(&rs, &s, &e, &l, &rs.rho(), &ParityWeight::fundamental(2, 0)).ok);
    }

    #[test]
    fn zero_arguments_square_to_one() {
        let mut m = CMultiset::new();
        let z = Arg {
            constant: Q::zero(),
            slope: Q::zero(),
        };
        m.push(z.clone(), false);
        assert!(!m.is_trivial());
        m.push(z, false);
        assert!(m.is_trivial());
    }
}
