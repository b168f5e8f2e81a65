//! Root systems in exact arithmetic.
//!
//! Conventions: `cartan[i][j] = <alpha_i, alpha_j^vee>`, so row `i` is the
//! simple root `alpha_i` written in fundamental-weight coordinates. Weights are
//! stored in fundamental-weight coordinates, roots in simple-root coordinates
//! and coroots in simple-coroot coordinates. Long roots have squared length 2.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan type such as `E8` or `B4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub const fn new(family: Family, rank: usize) -> Self {
        CartanType { family, rank }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.family, Family::E | Family::F | Family::G)
    }

    /// Whether the type exists (e.g. `E5` and `D2` do not).
    pub fn is_valid(&self) -> bool {
        let n = self.rank;
        match self.family {
            Family::A => n >= 1,
            Family::B => n >= 2,
            Family::C => n >= 3,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }

    /// Bourbaki Cartan matrix in the `<alpha_i, alpha_j^vee>` convention.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |c: &mut Vec<Vec<i64>>, a: usize, b: usize| {
            c[a][b] = -1;
            c[b][a] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for k in 0..n.saturating_sub(1) {
                    link(&mut c, k, k + 1);
                }
                if self.family == Family::B && n >= 2 {
                    c[n - 2][n - 1] = -2;
                }
                if self.family == Family::C && n >= 2 {
                    c[n - 1][n - 2] = -2;
                }
            }
            Family::D => {
                for k in 0..n - 2 {
                    link(&mut c, k, k + 1);
                }
                link(&mut c, n - 3, n - 1);
            }
            Family::E => {
                for (a, b) in [(0, 2), (2, 3), (1, 3), (3, 4)] {
                    link(&mut c, a, b);
                }
                for k in 4..n - 1 {
                    link(&mut c, k, k + 1);
                }
            }
            Family::F => {
                c = vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -2, 0],
                    vec![0, -1, 2, -1],
                    vec![0, 0, -1, 2],
                ];
            }
            Family::G => {
                c = vec![vec![2, -1], vec![-3, 2]];
            }
        }
        c
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Lie algebra name: `sl_{n+1}`, `so_{2n+1}`, `sp_{2n}`, `so_{2n}`, `e6`...
    pub fn algebra_name(&self) -> String {
        let n = self.rank;
        match self.family {
            Family::A => format!("sl{}", n + 1),
            Family::B => format!("so{}", 2 * n + 1),
            Family::C => format!("sp{}", 2 * n),
            Family::D => format!("so{}", 2 * n),
            Family::E => format!("e{n}"),
            Family::F => "f4".into(),
            Family::G => "g2".into(),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        let t = CartanType { family, rank };
        if t.is_valid() {
            Ok(t)
        } else {
            Err(Error::UnknownType(s.to_string()))
        }
    }
}

/// A weight in fundamental-weight coordinates: entry `i` is `<lambda, alpha_i^vee>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(r: usize) -> Self {
        Weight(vec![Q::zero(); r])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    pub fn fundamental(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i] = 1;
        Weight::from_ints(&v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer coordinates, if integral and small.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| {
                if x.is_integer() {
                    x.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// A weight modulo twice the weight lattice: entry `i` is `<delta, alpha_i^vee> mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParityWeight(pub Vec<u8>);

impl ParityWeight {
    pub fn from_ints(v: &[i64]) -> Self {
        ParityWeight(v.iter().map(|x| x.rem_euclid(2) as u8).collect())
    }

    pub fn fundamental(r: usize, i: usize) -> Self {
        let mut v = vec![0u8; r];
        v[i] = 1;
        ParityWeight(v)
    }

    pub fn to_ints(&self) -> Vec<i64> {
        self.0.iter().map(|&b| b as i64).collect()
    }

    /// Bit string such as `0101`.
    pub fn bits(&self) -> String {
        self.0
            .iter()
            .map(|b| if *b == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn parse_bits(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(0u8),
                '1' => Some(1u8),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(ParityWeight)
    }
}

/// Fundamental, simple-root and dominance views of one weight.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightCoordinates {
    pub fundamental: Vec<Q>,
    pub simple: Vec<Q>,
    pub is_dominant: bool,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub name: String,
    /// The Cartan type when the matrix is a standard (Bourbaki) one.
    pub cartan_type: Option<CartanType>,
    pub cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i) / 2`, long roots normalised to 1.
    pub sym: Vec<Q>,
    /// Positive roots in simple-root coordinates, sorted by height; `pos[i]` is `alpha_i` for `i < rank`.
    pub pos: Vec<Vec<i64>>,
    /// Coroots of `pos` in simple-coroot coordinates (always integral).
    pub coroots: Vec<Vec<i64>>,
    /// Whether each positive root is long.
    pub long: Vec<bool>,
    pub highest: Vec<i64>,
    pub cartan_inv: Vec<Vec<Q>>,
    /// Node `i` of this system corresponds to node `dual_perm[i]` of its dual
    /// written in Bourbaki order (identity for E types, reversal for G2/F4).
    pub dual_perm: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn new(t: CartanType) -> Result<Self> {
        if !t.is_valid() {
            return Err(Error::UnknownType(t.to_string()));
        }
        let mut rs = RootSystem::from_cartan(&t.to_string(), t.cartan_matrix())?;
        rs.cartan_type = Some(t);
        if matches!(t.family, Family::F | Family::G) {
            rs.dual_perm = (0..t.rank).rev().collect();
        }
        Ok(rs)
    }

    pub fn parse(s: &str) -> Result<Self> {
        RootSystem::new(s.parse()?)
    }

    /// Builds a root system from any Cartan matrix of finite type.
    pub fn from_cartan(name: &str, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let r = cartan.len();
        if r == 0 || cartan.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidCartan(name.to_string()));
        }
        for i in 0..r {
            for j in 0..r {
                if (i == j && cartan[i][j] != 2)
                    || (i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)))
                {
                    return Err(Error::InvalidCartan(name.to_string()));
                }
            }
        }
        let sym = symmetrizer(&cartan).ok_or_else(|| Error::InvalidCartan(name.to_string()))?;
        let pos = positive_roots(&cartan).ok_or_else(|| Error::InvalidCartan(name.to_string()))?;
        let cartan_inv = invert(&cartan).ok_or_else(|| Error::InvalidCartan(name.to_string()))?;
        let mut rs = RootSystem {
            name: name.to_string(),
            cartan_type: None,
            sym,
            pos,
            coroots: Vec::new(),
            long: Vec::new(),
            highest: Vec::new(),
            cartan_inv,
            dual_perm: (0..r).collect(),
            index: HashMap::new(),
            cartan,
        };
        rs.index = rs
            .pos
            .iter()
            .enumerate()
            .map(|(k, a)| (a.clone(), k))
            .collect();
        let max_norm = rs.pos.iter().map(|a| rs.root_norm(a)).max().unwrap();
        rs.coroots = rs.pos.iter().map(|a| rs.coroot_of(a)).collect();
        rs.long = rs.pos.iter().map(|a| rs.root_norm(a) == max_norm).collect();
        rs.highest = rs.pos.last().unwrap().clone();
        if !rs.is_irreducible() {
            rs.highest.clear();
        }
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn num_pos(&self) -> usize {
        self.pos.len()
    }

    /// Marks: the simple-root coefficients of the highest root.
    pub fn marks(&self) -> &[i64] {
        &self.highest
    }

    pub fn is_irreducible(&self) -> bool {
        components(&self.cartan, &(0..self.rank()).collect::<Vec<_>>()).len() == 1
    }

    pub fn root_index(&self, a: &[i64]) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Index of a root (positive or negative) together with its sign.
    pub fn signed_root_index(&self, a: &[i64]) -> Option<(usize, bool)> {
        if let Some(k) = self.root_index(a) {
            return Some((k, true));
        }
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        self.root_index(&neg).map(|k| (k, false))
    }

    pub fn height(&self, a: &[i64]) -> i64 {
        a.iter().sum()
    }

    /// `(alpha_i, alpha_j)`.
    pub fn simple_ip(&self, i: usize, j: usize) -> Q {
        q(self.cartan[i][j]) * &self.sym[j]
    }

    /// Inner product of two vectors in simple-root coordinates.
    pub fn ip_roots(&self, a: &[i64], b: &[i64]) -> Q {
        let r = self.rank();
        let mut s = Q::zero();
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                if b[j] != 0 && self.cartan[i][j] != 0 {
                    s += q(a[i] * b[j] * self.cartan[i][j]) * &self.sym[j];
                }
            }
        }
        s
    }

    /// `(beta, beta) / 2`.
    pub fn root_norm(&self, a: &[i64]) -> Q {
        self.ip_roots(a, a) / q(2)
    }

    /// Coroot of a root given in simple-root coordinates, in simple-coroot coordinates.
    pub fn coroot_of(&self, a: &[i64]) -> Vec<i64> {
        let n = self.root_norm(a);
        a.iter()
            .zip(&self.sym)
            .map(|(&b, d)| {
                let c = q(b) * d / &n;
                assert!(c.is_integer(), "non-integral coroot");
                c.to_integer().to_i64().unwrap()
            })
            .collect()
    }

    /// `<lambda, beta^vee>` for the positive root with index `k`.
    pub fn pair(&self, lambda: &Weight, k: usize) -> Q {
        self.pair_coroot(lambda, &self.coroots[k])
    }

    /// `<lambda, c>` for a coroot given in simple-coroot coordinates.
    pub fn pair_coroot(&self, lambda: &Weight, c: &[i64]) -> Q {
        let mut s = Q::zero();
        for (x, &ck) in lambda.0.iter().zip(c) {
            if ck != 0 {
                s += x * q(ck);
            }
        }
        s
    }

    /// Integer pairing `<lambda, beta^vee>` for integral lambda.
    pub fn pair_int(&self, lambda: &[i64], k: usize) -> i64 {
        lambda
            .iter()
            .zip(&self.coroots[k])
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `<beta, alpha_j^vee>` for beta in simple-root coordinates.
    pub fn root_pair_simple(&self, a: &[i64], j: usize) -> i64 {
        a.iter()
            .enumerate()
            .map(|(k, &x)| x * self.cartan[k][j])
            .sum()
    }

    /// A root (simple-root coordinates) as a weight.
    pub fn root_to_weight(&self, a: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|j| self.root_pair_simple(a, j))
            .collect()
    }

    /// `s_i lambda` in fundamental coordinates.
    pub fn reflect_weight(&self, lambda: &Weight, i: usize) -> Weight {
        let c = lambda.0[i].clone();
        if c.is_zero() {
            return lambda.clone();
        }
        Weight(
            lambda
                .0
                .iter()
                .zip(&self.cartan[i])
                .map(|(x, &a)| x - &c * q(a))
                .collect(),
        )
    }

    /// `s_i lambda` for integral weights.
    pub fn reflect_int(&self, lambda: &mut [i64], i: usize) {
        let c = lambda[i];
        if c != 0 {
            for (x, a) in lambda.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    /// `s_i a` for a root in simple-root coordinates.
    pub fn reflect_root(&self, a: &mut [i64], i: usize) {
        let p = self.root_pair_simple(a, i);
        a[i] -= p;
    }

    /// `s_i c` for a coroot in simple-coroot coordinates.
    pub fn reflect_coroot(&self, c: &mut [i64], i: usize) {
        let p: i64 = c
            .iter()
            .enumerate()
            .map(|(k, &x)| x * self.cartan[i][k])
            .sum();
        c[i] -= p;
    }

    pub fn rho(&self) -> Weight {
        Weight::from_ints(&vec![1; self.rank()])
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    /// Simple-root coordinates of a weight: solves `lambda_i = sum_j c_j C[j][i]`.
    pub fn to_simple(&self, lambda: &Weight) -> Vec<Q> {
        let r = self.rank();
        (0..r)
            .map(|j| {
                let mut s = Q::zero();
                for i in 0..r {
                    if !lambda.0[i].is_zero() {
                        s += &lambda.0[i] * &self.cartan_inv[i][j];
                    }
                }
                s
            })
            .collect()
    }

    /// Fundamental coordinates of a vector given in simple-root coordinates.
    pub fn from_simple(&self, c: &[Q]) -> Weight {
        let r = self.rank();
        Weight(
            (0..r)
                .map(|i| {
                    let mut s = Q::zero();
                    for (j, cj) in c.iter().enumerate() {
                        if self.cartan[j][i] != 0 {
                            s += cj * q(self.cartan[j][i]);
                        }
                    }
                    s
                })
                .collect(),
        )
    }

    pub fn weight_coordinates(&self, lambda: &Weight) -> WeightCoordinates {
        WeightCoordinates {
            fundamental: lambda.0.clone(),
            simple: self.to_simple(lambda),
            is_dominant: lambda.is_dominant(),
        }
    }

    /// `(lambda, mu)` for weights.
    pub fn inner(&self, lambda: &Weight, mu: &Weight) -> Q {
        // (alpha_j, mu) = mu_j d_j
        self.to_simple(lambda)
            .iter()
            .enumerate()
            .map(|(j, c)| c * &mu.0[j] * &self.sym[j])
            .fold(Q::zero(), |a, b| a + b)
    }

    /// The dual root system (transposed Cartan matrix), keeping this numbering:
    /// node `i` of the dual is `alpha_i^vee`.
    pub fn dual(&self) -> RootSystem {
        let r = self.rank();
        let ct: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| self.cartan[j][i]).collect())
            .collect();
        let mut d = RootSystem::from_cartan(&format!("{}^vee", self.name), ct)
            .expect("dual of a valid system");
        if let Some(t) = self.cartan_type {
            if matches!(t.family, Family::A | Family::D | Family::E) {
                d.cartan_type = Some(t);
                d.name = self.name.clone();
            }
        }
        d
    }

    /// Whether the weight is a root of this system; returns its signed index.
    pub fn weight_to_root(&self, lambda: &Weight) -> Option<(usize, bool)> {
        let c = self.to_simple(lambda);
        if !c.iter().all(|x| x.is_integer()) {
            return None;
        }
        let v: Vec<i64> = c.iter().map(|x| x.to_integer().to_i64().unwrap()).collect();
        self.signed_root_index(&v)
    }
}

/// Symmetrizer `d` with `C[i][j] d_j = C[j][i] d_i`, max entry 1 per component.
fn symmetrizer(c: &[Vec<i64>]) -> Option<Vec<Q>> {
    let r = c.len();
    let mut d: Vec<Option<Q>> = vec![None; r];
    for comp in components(c, &(0..r).collect::<Vec<_>>()) {
        d[comp[0]] = Some(Q::one());
        let mut changed = true;
        while changed {
            changed = false;
            for &i in &comp {
                for &j in &comp {
                    if c[i][j] != 0 && d[i].is_some() && d[j].is_none() {
                        let v = d[i].clone().unwrap() * q(c[j][i]) / q(c[i][j]);
                        d[j] = Some(v);
                        changed = true;
                    }
                }
            }
        }
        let m = comp.iter().map(|&i| d[i].clone().unwrap()).max().unwrap();
        for &i in &comp {
            d[i] = Some(d[i].take().unwrap() / &m);
        }
    }
    let d: Vec<Q> = d.into_iter().collect::<Option<Vec<_>>>()?;
    for i in 0..r {
        for j in 0..r {
            if q(c[i][j]) * &d[j] != q(c[j][i]) * &d[i] {
                return None;
            }
        }
    }
    Some(d)
}

/// Positive roots by closure under simple reflections from the simple roots.
/// Returns `None` if the closure does not terminate quickly (not finite type).
fn positive_roots(c: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let r = c.len();
    let mut pos: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = pos.iter().cloned().collect();
    let mut frontier = pos.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for i in 0..r {
                let p: i64 = (0..r).map(|k| a[k] * c[k][i]).sum();
                let mut b = a.clone();
                b[i] -= p;
                if b.iter().all(|&x| x >= 0) && b.iter().any(|&x| x > 0) && seen.insert(b.clone()) {
                    next.push(b);
                }
            }
        }
        if seen.len() > 10_000 {
            return None;
        }
        pos.extend(next.iter().cloned());
        frontier = next;
    }
    // by height; within a height, reverse lexicographic so that pos[i] = alpha_i
    pos.sort_by(|a, b| {
        a.iter()
            .sum::<i64>()
            .cmp(&b.iter().sum::<i64>())
            .then_with(|| b.cmp(a))
    });
    Some(pos)
}

fn invert(c: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let r = c.len();
    let mut a: Vec<Vec<Q>> = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v: Vec<Q> = row.iter().map(|&x| q(x)).collect();
            v.extend((0..r).map(|j| if i == j { Q::one() } else { Q::zero() }));
            v
        })
        .collect();
    for col in 0..r {
        let p = (col..r).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = Q::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[r..].to_vec()).collect())
}

/// Connected components of the Dynkin diagram restricted to `nodes`.
pub fn components(c: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = nodes.to_vec();
    let mut out = Vec::new();
    while let Some(start) = left.first().copied() {
        let mut comp = vec![start];
        left.retain(|&x| x != start);
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            let (nbrs, rest): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&j| c[i][j] != 0);
            comp.extend(nbrs);
            left = rest;
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A connected Cartan matrix identified with a standard type. `order[s]` is
/// the index (in the given matrix) of Bourbaki node `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identified {
    pub cartan_type: CartanType,
    pub order: Vec<usize>,
}

/// Identifies a connected Cartan matrix with a standard type by searching for a
/// node bijection that matches the Bourbaki matrix entry by entry.
pub fn identify_connected(c: &[Vec<i64>]) -> Option<Identified> {
    let n = c.len();
    let families = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];
    for fam in families {
        let t = CartanType::new(fam, n);
        if !t.is_valid() {
            continue;
        }
        let std = t.cartan_matrix();
        let mut order = Vec::with_capacity(n);
        let mut used = vec![false; n];
        if match_nodes(&std, c, &mut order, &mut used) {
            return Some(Identified {
                cartan_type: t,
                order,
            });
        }
    }
    None
}

fn match_nodes(
    std: &[Vec<i64>],
    c: &[Vec<i64>],
    order: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let s = order.len();
    if s == std.len() {
        return true;
    }
    for cand in 0..c.len() {
        if used[cand] {
            continue;
        }
        let ok = (0..s).all(|t| std[s][t] == c[cand][order[t]] && std[t][s] == c[order[t]][cand]);
        if ok {
            used[cand] = true;
            order.push(cand);
            if match_nodes(std, c, order, used) {
                return true;
            }
            order.pop();
            used[cand] = false;
        }
    }
    false
}

/// Identifies every component of a (possibly reducible) Cartan matrix.
/// Returns `(type, nodes in Bourbaki order)` per component.
pub fn identify(c: &[Vec<i64>]) -> Option<Vec<(CartanType, Vec<usize>)>> {
    let all: Vec<usize> = (0..c.len()).collect();
    components(c, &all)
        .into_iter()
        .map(|comp| {
            let sub: Vec<Vec<i64>> = comp
                .iter()
                .map(|&i| comp.iter().map(|&j| c[i][j]).collect())
                .collect();
            identify_connected(&sub)
                .map(|id| (id.cartan_type, id.order.iter().map(|&k| comp[k]).collect()))
        })
        .collect()
}

/// Simple system of a closed, symmetric set of roots (given as positive roots
/// of `rs` by index): the positive members that are not a sum of two others.
/// Returns the Cartan matrix of the subsystem and its simple roots.
pub fn subsystem_base(rs: &RootSystem, pos_members: &[usize]) -> (Vec<Vec<i64>>, Vec<usize>) {
    let set: std::collections::HashSet<usize> = pos_members.iter().copied().collect();
    let mut simple = Vec::new();
    for &k in pos_members {
        let a = &rs.pos[k];
        let decomposable = pos_members.iter().any(|&j| {
            if j == k {
                return false;
            }
            let diff: Vec<i64> = a.iter().zip(&rs.pos[j]).map(|(x, y)| x - y).collect();
            rs.root_index(&diff)
                .map(|i| set.contains(&i))
                .unwrap_or(false)
        });
        if !decomposable {
            simple.push(k);
        }
    }
    let c = simple
        .iter()
        .map(|&i| {
            simple
                .iter()
                .map(|&j| {
                    let p = rs.ip_roots(&rs.pos[i], &rs.pos[j]) * q(2)
                        / rs.ip_roots(&rs.pos[j], &rs.pos[j]);
                    p.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    (c, simple)
}

/// Type label such as `B4` or `A2xA1xA1` (components by decreasing rank; `1` when empty).
pub fn type_label(types: &[CartanType]) -> String {
    if types.is_empty() {
        return "1".into();
    }
    let mut v = types.to_vec();
    v.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.family.cmp(&b.family)));
    v.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join("x")
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        for (t, n) in [
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("A1", 1),
            ("B4", 16),
            ("C4", 16),
            ("D8", 56),
        ] {
            assert_eq!(RootSystem::parse(t).unwrap().num_pos(), n, "{t}");
        }
    }

    #[test]
    fn highest_roots_and_marks() {
        let cases: [(&str, &[i64]); 5] = [
            ("G2", &[3, 2]),
            ("F4", &[2, 3, 4, 2]),
            ("E6", &[1, 2, 2, 3, 2, 1]),
            ("E7", &[2, 2, 3, 4, 3, 2, 1]),
            ("E8", &[2, 3, 4, 6, 5, 4, 3, 2]),
        ];
        for (t, m) in cases {
            let rs = RootSystem::parse(t).unwrap();
            assert_eq!(rs.marks(), m, "{t}");
            let h = rs.height(&rs.highest);
            assert_eq!(rs.pos.iter().filter(|a| rs.height(a) == h).count(), 1);
        }
    }

    #[test]
    fn pairing_basics() {
        let rs = RootSystem::parse("E8").unwrap();
        let rho = rs.rho();
        for i in 0..8 {
            assert_eq!(rs.pair(&rho, i), q(1));
            for j in 0..8 {
                let v = rs.pair(&rs.fundamental(i), j);
                assert_eq!(v, q((i == j) as i64));
            }
        }
        let top = rs.num_pos() - 1;
        assert_eq!(rs.pair(&rho, top), q(29));
    }

    #[test]
    fn rho_of_a2_in_simple_coordinates() {
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.to_simple(&rs.rho()), vec![q(1), q(1)]);
    }

    #[test]
    fn alpha1_of_f4_is_row_one() {
        let rs = RootSystem::parse("F4").unwrap();
        let w = rs.from_simple(&[q(1), q(0), q(0), q(0)]);
        assert_eq!(w, Weight::from_ints(&rs.cartan[0]));
    }

    #[test]
    fn symmetrized_matrix_is_positive_definite() {
        for t in ["G2", "F4", "E6", "E7", "E8", "B5", "C5", "D6"] {
            let rs = RootSystem::parse(t).unwrap();
            let r = rs.rank();
            // leading principal minors of the Gram matrix
            for k in 1..=r {
                let m: Vec<Vec<Q>> = (0..k)
                    .map(|i| (0..k).map(|j| rs.simple_ip(i, j)).collect())
                    .collect();
                assert!(det(&m) > Q::zero(), "{t} minor {k}");
            }
        }
    }

    fn det(m: &[Vec<Q>]) -> Q {
        let n = m.len();
        let mut a = m.to_vec();
        let mut d = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                a.swap(p, c);
                d = -d;
            }
            d *= &a[c][c];
            for i in c + 1..n {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
            }
        }
        d
    }

    #[test]
    fn inner_product_matches_coroot_pairing() {
        let rs = RootSystem::parse("F4").unwrap();
        let lam = Weight::from_ints(&[3, -1, 2, 5]);
        for (k, a) in rs.pos.iter().enumerate() {
            let aw = Weight::from_ints(&rs.root_to_weight(a));
            assert_eq!(rs.inner(&lam, &aw), rs.root_norm(a) * rs.pair(&lam, k));
        }
    }

    #[test]
    fn identification_round_trips() {
        for t in ["A5", "B3", "C3", "D5", "E6", "E7", "E8", "F4", "G2", "B2"] {
            let ct: CartanType = t.parse().unwrap();
            let id = identify_connected(&ct.cartan_matrix()).unwrap();
            assert_eq!(id.cartan_type, ct);
        }
        // B and C are distinguished by orientation.
        let mut c = CartanType::new(Family::B, 4).cartan_matrix();
        c.reverse();
        for row in c.iter_mut() {
            row.reverse();
        }
        assert_eq!(
            identify_connected(&c).unwrap().cartan_type.to_string(),
            "B4"
        );
    }

    #[test]
    fn dual_of_b_is_c() {
        let b = RootSystem::parse("B3").unwrap();
        let d = b.dual();
        assert_eq!(
            identify_connected(&d.cartan)
                .unwrap()
                .cartan_type
                .to_string(),
            "C3"
        );
    }

    #[test]
    fn unknown_type_rejected() {
        assert!("E9".parse::<CartanType>().is_err());
        assert!("X2".parse::<CartanType>().is_err());
    }
}
