//! Square-integrability check for one distinguished case.
//!
//! For every minimal representative `w'` of `W / W(Sigma_L)` the exponent
//! `w' lambda0` is classified by the Langlands criterion, the pole order
//! `o = -#S(w')` is read off the inversion signature, and the alternating
//! sums over `W_L = {w_{S_L}}` decide how far the leading terms cancel. The
//! outcome is `m`, the smallest certified exact order among square-integrable
//! exponents, and `k_bd`, the cancellation depth the argument needs.

use std::collections::HashMap;
use std::path::PathBuf;
use std::time::Instant;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nilpotent::ArthurCase;
use crate::rootsys::{
    identify, q, subsystem_base, type_label, ParityWeight, RootSystem, Weight, Q,
};
use crate::weyl::{
    enumerate_min_coset_reps, parabolic_subgroup, parity_action, CosetView, CosetVisitor,
    EnumContext, EnumOptions, WeylElement,
};

/// Everything about a case that does not depend on the coset.
#[derive(Clone, Debug)]
pub struct CaseSetup {
    pub rs: RootSystem,
    pub lambda0: Vec<i64>,
    pub delta0: ParityWeight,
    /// Simple roots orthogonal to `lambda0` (0-based).
    pub sigma_prime: Vec<usize>,
    /// Those among `sigma_prime` with `<delta0, alpha^vee>` even.
    pub sigma_l: Vec<usize>,
    /// Stabilizer of `lambda0` and of `delta0` mod 2.
    pub wl: Vec<WeylElement>,
    pub wl_type: String,
    /// `W_L` is generated by the commuting reflections in `sigma_l`.
    pub supported: bool,
    /// Positive roots with `<lambda0, alpha^vee> = 1` and `<delta0, alpha^vee>` even.
    pub p1: Vec<usize>,
    /// Deformation direction.
    pub mu: Weight,
}

/// Computes `Sigma'`, `Sigma_L`, `W_L` and `P_1` for `(lambda0, delta0)`.
pub fn case_setup(
    rs: &RootSystem,
    lambda0: &[i64],
    delta0: &ParityWeight,
    mu: &Weight,
) -> CaseSetup {
    let r = rs.rank();
    let sigma_prime: Vec<usize> = (0..r).filter(|&i| lambda0[i] == 0).collect();
    let sigma_l: Vec<usize> = sigma_prime
        .iter()
        .copied()
        .filter(|&i| delta0.0[i] == 0)
        .collect();
    let wl: Vec<WeylElement> = parabolic_subgroup(rs, &sigma_prime)
        .into_iter()
        .map(|(w, _)| w)
        .filter(|w| &parity_action(rs, w, delta0) == delta0)
        .collect();
    let commuting = sigma_l
        .iter()
        .tuple_combinations()
        .all(|(&a, &b)| rs.cartan[a][b] == 0);
    let supported = commuting && wl.len() == 1 << sigma_l.len();
    let p1 = (0..rs.num_pos())
        .filter(|&k| {
            rs.pair_int(lambda0, k) == 1 && rs.pair_int(&delta0.to_ints(), k).rem_euclid(2) == 0
        })
        .collect();
    let wl_type = wl_type_label(rs, lambda0, delta0, &wl);
    CaseSetup {
        rs: rs.clone(),
        lambda0: lambda0.to_vec(),
        delta0: delta0.clone(),
        sigma_prime,
        sigma_l,
        wl,
        wl_type,
        supported,
        p1,
        mu: mu.clone(),
    }
}

/// Type of the reflection subgroup of `W_L`; when `W_L` is larger and every
/// element is an involution, `W_L` is elementary abelian and is labelled as a
/// product of `A1` factors of the right order.
pub fn wl_type_label(
    rs: &RootSystem,
    lambda0: &[i64],
    delta0: &ParityWeight,
    wl: &[WeylElement],
) -> String {
    let d = delta0.to_ints();
    let refl: Vec<usize> = (0..rs.num_pos())
        .filter(|&k| rs.pair_int(lambda0, k) == 0)
        .filter(|&k| {
            // s_beta delta = delta - <delta, beta^vee> beta
            let c = rs.pair_int(&d, k);
            let b = rs.root_to_weight(&rs.pos[k]);
            d.iter()
                .zip(&b)
                .all(|(x, y)| (x - c * y).rem_euclid(2) == x.rem_euclid(2))
        })
        .collect();
    let (types, order) = if refl.is_empty() {
        (vec![], 1u128)
    } else {
        let (cartan, _) = subsystem_base(rs, &refl);
        let comps = identify(&cartan).unwrap_or_default();
        let types: Vec<_> = comps.iter().map(|(t, _)| *t).collect();
        let order = types.iter().map(|t| t.weyl_order()).product();
        (types, order)
    };
    if order == wl.len() as u128 {
        return type_label(&types);
    }
    let id = WeylElement::identity(rs);
    let involutive = wl.iter().all(|w| w.compose(rs, w) == id);
    if involutive && wl.len().is_power_of_two() {
        let k = wl.len().trailing_zeros() as usize;
        return vec!["A1"; k].join("x");
    }
    format!("order {}", wl.len())
}

/// Langlands' criterion: every simple-root coordinate of `mu0` is negative.
pub fn langlands_negative(rs: &RootSystem, mu0: &Weight) -> bool {
    rs.to_simple(mu0).iter().all(|c| c.is_negative())
}

/// Precomputed data for the alternating sums of a supported case.
pub struct Kernel {
    pub setup: CaseSetup,
    /// `w_{S_L} mu` for each subset mask of `sigma_l`.
    pub nus: Vec<Weight>,
    /// `<w_{S_L} mu, alpha^vee>` for `alpha` in `p1`, by mask.
    pub pairings: Vec<Vec<Q>>,
    /// Bit masks (over `p1`) of the nontrivial `W_L`-orbits on `p1`.
    pub orbit_masks: Vec<u128>,
}

impl Kernel {
    pub fn new(setup: &CaseSetup) -> Result<Self> {
        let rs = &setup.rs;
        let n = setup.sigma_l.len();
        let mut nus = Vec::with_capacity(1 << n);
        for mask in 0..1usize << n {
            let mut v = setup.mu.clone();
            for (b, &i) in setup.sigma_l.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v = rs.reflect_weight(&v, i);
                }
            }
            nus.push(v);
        }
        let pairings: Vec<Vec<Q>> = nus
            .iter()
            .map(|v| setup.p1.iter().map(|&k| rs.pair(v, k)).collect())
            .collect();
        for (mask, row) in pairings.iter().enumerate() {
            if let Some(j) = row.iter().position(|x| x.is_zero()) {
                return Err(Error::ZeroDenominator(format!(
                    "<w mu, alpha^vee> = 0 for subset mask {mask} and root {:?}",
                    rs.pos[setup.p1[j]]
                )));
            }
        }
        let index: HashMap<&Vec<i64>, usize> = setup
            .p1
            .iter()
            .enumerate()
            .map(|(j, &k)| (&rs.pos[k], j))
            .collect();
        // W_L is a group, so the orbit of a root is its set of images
        let orbit_of = setup.p1.iter().map(|&k| {
            setup.wl.iter().fold(0u128, |m, w| {
                m | 1u128
                    << index
                        .get(&w.apply_root(rs, &rs.pos[k]))
                        .expect("W_L permutes P1")
            })
        });
        let mut orbit_masks: Vec<u128> = orbit_of.filter(|m| m.count_ones() > 1).collect();
        orbit_masks.sort_unstable();
        orbit_masks.dedup();
        Ok(Kernel {
            setup: setup.clone(),
            nus,
            pairings,
            orbit_masks,
        })
    }

    /// Part of a signature that can influence the alternating sums: roots in
    /// nontrivial orbits that are only partly inverted. Fully inverted orbits
    /// and fixed roots contribute the same factor to every `c_{S_L}`.
    pub fn reduce(&self, sig: u128) -> u128 {
        let mut key = 0;
        for &m in &self.orbit_masks {
            let hit = sig & m;
            if hit != 0 && hit != m {
                key |= hit;
            }
        }
        key
    }

    /// `c_{S_L} = (-1)^{#S_L} / prod_{alpha in S} <w_{S_L} mu, alpha^vee>` for
    /// `S` given as a mask over `p1`.
    pub fn coefficients(&self, s: u128) -> Vec<Q> {
        self.pairings
            .iter()
            .enumerate()
            .map(|(mask, row)| {
                let mut p = Q::one();
                for (j, x) in row.iter().enumerate() {
                    if s >> j & 1 == 1 {
                        p *= x;
                    }
                }
                let sign = if (mask as u32).count_ones() % 2 == 0 {
                    Q::one()
                } else {
                    -Q::one()
                };
                sign / p
            })
            .collect()
    }

    /// Entries of `sum_{T <= S_L} c_{S_L} (w_{S_L} mu)^{(x) k}`, indexed by
    /// multisets of coordinates of size `k`.
    pub fn tensor(&self, coef: &[Q], t: usize, k: usize) -> Vec<Q> {
        let r = self.setup.rs.rank();
        (0..r)
            .combinations_with_replacement(k)
            .map(|idx| {
                let mut s = Q::zero();
                for (mask, c) in coef.iter().enumerate() {
                    if mask & t == t {
                        let mut v = c.clone();
                        for &i in &idx {
                            v *= &self.nus[mask].0[i];
                        }
                        s += v;
                    }
                }
                s
            })
            .collect()
    }

    /// Largest `d <= kmax` with all tensors for `|T| + k <= d` zero; `-1` when
    /// the scalar sum itself is nonzero.
    pub fn depth(&self, coef: &[Q], kmax: i32) -> i32 {
        let n = self.setup.sigma_l.len();
        for dd in 0..=kmax {
            for t in 0..1usize << n {
                let size = t.count_ones() as i32;
                if size > dd {
                    continue;
                }
                let k = (dd - size) as usize;
                if self.tensor(coef, t, k).iter().any(|x| !x.is_zero()) {
                    return dd - 1;
                }
            }
        }
        kmax
    }

    /// `sum_{S_L} c_{S_L} (w_{S_L} mu, nu)^e` for a weight `nu` given by its
    /// simple-root coordinates.
    pub fn certificate(&self, coef: &[Q], nu_simple: &[Q], e: u32) -> Q {
        let rs = &self.setup.rs;
        let mut s = Q::zero();
        for (mask, c) in coef.iter().enumerate() {
            // (lambda, beta) = sum_k <lambda, alpha_k^vee> (alpha_k, alpha_k)/2 b_k
            let x: Q = (0..rs.rank())
                .map(|k| &self.nus[mask].0[k] * &rs.sym[k] * &nu_simple[k])
                .fold(Q::zero(), |a, b| a + b);
            s += c * num_traits::pow(x, e as usize);
        }
        s
    }
}

/// The symmetric tensor `sum_{T <= S_L <= Sigma_L} (-1)^{#S_L} [prod_{alpha in S}
/// <w_{S_L} mu, alpha^vee>^{-1}] (w_{S_L} mu)^{(x) k}`. `s` lists positive-root
/// indices, `t` simple-root indices from `sigma_l`.
pub fn tensor_sum(setup: &CaseSetup, s: &[usize], t: &[usize], k: usize) -> Result<Vec<Q>> {
    let rs = &setup.rs;
    let n = setup.sigma_l.len();
    let mut tmask = 0usize;
    for i in t {
        let b = setup
            .sigma_l
            .iter()
            .position(|x| x == i)
            .ok_or_else(|| Error::Mismatch(format!("{} is not in Sigma_L", i + 1)))?;
        tmask |= 1 << b;
    }
    let mut coef = Vec::with_capacity(1 << n);
    let mut nus = Vec::with_capacity(1 << n);
    for mask in 0..1usize << n {
        let mut v = setup.mu.clone();
        for (b, &i) in setup.sigma_l.iter().enumerate() {
            if mask >> b & 1 == 1 {
                v = rs.reflect_weight(&v, i);
            }
        }
        let mut p = Q::one();
        for &a in s {
            let x = rs.pair(&v, a);
            if x.is_zero() {
                return Err(Error::ZeroDenominator(format!("root {:?}", rs.pos[a])));
            }
            p *= x;
        }
        let sign = if mask.count_ones() % 2 == 0 {
            Q::one()
        } else {
            -Q::one()
        };
        coef.push(sign / p);
        nus.push(v);
    }
    Ok((0..rs.rank())
        .combinations_with_replacement(k)
        .map(|idx| {
            let mut acc = Q::zero();
            for (mask, c) in coef.iter().enumerate() {
                if mask & tmask == tmask {
                    let mut v = c.clone();
                    for &i in &idx {
                        v *= &nus[mask].0[i];
                    }
                    acc += v;
                }
            }
            acc
        })
        .collect())
}

/// A good coset attaining the smallest certified order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub order: i64,
    pub o: i64,
    pub depth: i32,
    /// `w' rho` in fundamental coordinates.
    pub rho_image: Vec<i64>,
    pub length: u32,
}

/// Aggregate over a block of cosets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub good: u64,
    pub bad: u64,
    pub best: Option<Witness>,
    /// Smallest `o + d + 1` over bad cosets.
    pub min_bad_bound: Option<i64>,
    /// Smallest `o` over bad cosets.
    pub min_bad_o: Option<i64>,
    pub max_depth: i32,
    /// Cosets whose depth reached `kmax`.
    pub depth_capped: u64,
    /// Good cosets that would have improved the minimum but did not certify.
    pub uncertified: u64,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl BlockSummary {
    fn better(w: &Witness, than: &Option<Witness>) -> bool {
        match than {
            None => true,
            Some(b) => (w.order, w.o) < (b.order, b.o),
        }
    }
}

#[derive(Clone)]
struct KeyInfo {
    depth: i32,
    coef: Vec<Q>,
}

struct Visitor<'a> {
    kernel: &'a Kernel,
    kmax: i32,
    /// `2 rho` in simple-root coordinates.
    rho2: Vec<i64>,
}

impl CosetVisitor for Visitor<'_> {
    type Acc = BlockSummary;
    type Scratch = HashMap<u128, KeyInfo>;

    fn scratch(&self) -> Self::Scratch {
        HashMap::new()
    }

    fn visit(&self, cache: &mut Self::Scratch, acc: &mut BlockSummary, v: &CosetView) {
        let key = self.kernel.reduce(v.signature);
        let info = cache.entry(key).or_insert_with(|| {
            let coef = self.kernel.coefficients(key);
            let depth = self.kernel.depth(&coef, self.kmax);
            KeyInfo { depth, coef }
        });
        let d = info.depth;
        let o = -(v.signature.count_ones() as i64);
        acc.max_depth = acc.max_depth.max(d);
        if d >= self.kmax {
            acc.depth_capped += 1;
        }
        let bound = o + d as i64 + 1;
        if v.lambda_simple.iter().all(|&z| z < 0) {
            acc.good += 1;
            let cand = Witness {
                order: bound,
                o,
                depth: d,
                rho_image: vec![],
                length: v.length,
            };
            if BlockSummary::better(&cand, &acc.best) {
                // w'^{-1} (2 rho) in simple-root coordinates
                let r = self.rho2.len();
                let nu: Vec<Q> = (0..r)
                    .map(|t| {
                        q((0..r)
                            .map(|k| self.rho2[k] * v.inverse_columns[k][t] as i64)
                            .sum())
                    })
                    .collect();
                if !self
                    .kernel
                    .certificate(&info.coef, &nu, (d + 1) as u32)
                    .is_zero()
                {
                    acc.best = Some(Witness {
                        rho_image: v.rho_image.iter().map(|&x| x as i64).collect(),
                        ..cand
                    });
                } else {
                    acc.uncertified += 1;
                }
            }
        } else {
            acc.bad += 1;
            acc.min_bad_bound = min_opt(acc.min_bad_bound, Some(bound));
            acc.min_bad_o = min_opt(acc.min_bad_o, Some(o));
        }
    }

    fn merge(&self, into: &mut BlockSummary, other: BlockSummary) {
        into.good += other.good;
        into.bad += other.bad;
        if let Some(w) = other.best {
            if BlockSummary::better(&w, &into.best) {
                into.best = Some(w);
            }
        }
        into.min_bad_bound = min_opt(into.min_bad_bound, other.min_bad_bound);
        into.min_bad_o = min_opt(into.min_bad_o, other.min_bad_o);
        into.max_depth = into.max_depth.max(other.max_depth);
        into.depth_capped += other.depth_capped;
        into.uncertified += other.uncertified;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// `m` certified and every bad coset vanishes past it.
    Verified,
    /// `W_L` is not generated by commuting reflections in `Sigma_L`.
    Unsupported,
    /// No good coset certified its exact order.
    Inconclusive,
    /// Some bad coset could not be pushed past `m` within `kmax`.
    Failed,
}

/// The outcome for one case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub group: String,
    pub fixed_type: String,
    pub orbit: String,
    pub lambda0: Vec<i64>,
    pub delta0: String,
    pub supported: bool,
    pub status: Status,
    /// 1-based simple-root indices.
    #[serde(rename = "sigma_L")]
    pub sigma_l: Vec<usize>,
    pub wl_order: usize,
    pub wl_type: String,
    pub m: Option<i64>,
    pub k_bd: Option<i64>,
    pub good_count: u64,
    pub bad_count: u64,
    pub witness: Option<Witness>,
    /// Smallest `o + d + 1` over bad cosets.
    pub min_bad_bound: Option<i64>,
    /// Depth a bad coset of smallest `o` needs to clear `m`.
    pub max_bad_depth_required: Option<i64>,
    pub kmax: i32,
    pub mu: Vec<String>,
    pub log_b: String,
    pub elapsed_sec: f64,
    pub checkpoint: Option<String>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub kmax: i32,
    pub workers: usize,
    /// Deformation direction in fundamental coordinates; `rho` when `None`.
    pub mu: Option<Vec<i64>>,
    pub journal: Option<PathBuf>,
    pub prefix_depth: usize,
    pub block_limit: Option<usize>,
    pub progress: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            kmax: 3,
            workers: 1,
            mu: None,
            journal: None,
            prefix_depth: 6,
            block_limit: None,
            progress: false,
        }
    }
}

/// `(m, k_bd, status)` from the merged summary.
pub fn conclude(
    setup: &CaseSetup,
    s: &BlockSummary,
) -> (Option<i64>, Option<i64>, Status, Option<i64>) {
    let Some(best) = &s.best else {
        return (None, None, Status::Inconclusive, None);
    };
    let m = best.order;
    let bad_required = s.min_bad_o.map(|o| m - o);
    let status = match s.min_bad_bound {
        Some(b) if b <= m => Status::Failed,
        _ => Status::Verified,
    };
    let k = (best.depth as i64).max(bad_required.unwrap_or(-1));
    let k_bd = if setup.sigma_l.is_empty() || k < 0 {
        None
    } else {
        Some(k)
    };
    (Some(m), k_bd, status, bad_required)
}

/// Runs the coset enumeration for a prepared case.
pub fn verify_setup(
    setup: &CaseSetup,
    opts: &VerifyOptions,
    journal_key: &str,
) -> Result<(BlockSummary, u64)> {
    let kernel = Kernel::new(setup)?;
    let rs = &setup.rs;
    let rho2: Vec<i64> = rs
        .to_simple(&rs.rho())
        .iter()
        .map(|x| {
            (x * q(2))
                .to_integer()
                .try_into()
                .expect("2 rho is integral")
        })
        .collect();
    let visitor = Visitor {
        kernel: &kernel,
        kmax: opts.kmax,
        rho2,
    };
    let ctx = EnumContext {
        rs,
        sigma_l: setup.sigma_l.clone(),
        lambda0: setup.lambda0.clone(),
        designated: setup.p1.clone(),
    };
    let eo = EnumOptions {
        workers: opts.workers.max(1),
        prefix_depth: opts.prefix_depth,
        journal: opts.journal.clone(),
        journal_key: journal_key.to_string(),
        block_limit: opts.block_limit,
        progress: opts.progress,
    };
    let out = enumerate_min_coset_reps(&ctx, &visitor, &eo)?;
    Ok((out.acc, out.visited))
}

/// Full check of one distinguished case.
pub fn verify_case(case: &ArthurCase, opts: &VerifyOptions) -> Result<CaseVerdict> {
    let start = Instant::now();
    let rs = RootSystem::parse(&case.group)?;
    let mu = match &opts.mu {
        Some(v) if v.len() == rs.rank() => Weight::from_ints(v),
        Some(v) => {
            return Err(Error::Mismatch(format!(
                "mu has {} coordinates, rank is {}",
                v.len(),
                rs.rank()
            )))
        }
        None => rs.rho(),
    };
    let setup = case_setup(&rs, &case.lambda0, &case.delta0, &mu);
    let mut verdict = CaseVerdict {
        group: case.group.clone(),
        fixed_type: case.fixed_type.clone(),
        orbit: case.saturation_label.clone(),
        lambda0: case.lambda0.clone(),
        delta0: case.delta0.bits(),
        supported: setup.supported,
        status: Status::Unsupported,
        sigma_l: setup.sigma_l.iter().map(|i| i + 1).collect(),
        wl_order: setup.wl.len(),
        wl_type: setup.wl_type.clone(),
        m: None,
        k_bd: None,
        good_count: 0,
        bad_count: 0,
        witness: None,
        min_bad_bound: None,
        max_bad_depth_required: None,
        kmax: opts.kmax,
        mu: mu.0.iter().map(|x| x.to_string()).collect(),
        log_b: "rho".into(),
        elapsed_sec: 0.0,
        checkpoint: opts.journal.as_ref().map(|p| p.display().to_string()),
    };
    if !setup.supported {
        verdict.elapsed_sec = start.elapsed().as_secs_f64();
        return Ok(verdict);
    }
    let key = format!(
        "{} {} {} kmax={} mu={} depth={}",
        case.group,
        case.fixed_type,
        case.saturation_label,
        opts.kmax,
        verdict.mu.join(","),
        opts.prefix_depth
    );
    let (summary, _) = verify_setup(&setup, opts, &key)?;
    let (m, k_bd, status, req) = conclude(&setup, &summary);
    verdict.status = status;
    verdict.m = m;
    verdict.k_bd = k_bd;
    verdict.good_count = summary.good;
    verdict.bad_count = summary.bad;
    verdict.witness = summary.best.clone();
    verdict.min_bad_bound = summary.min_bad_bound;
    verdict.max_bad_depth_required = req;
    verdict.elapsed_sec = start.elapsed().as_secs_f64();
    Ok(verdict)
}

/// One expected row of the verdict table; `None` marks NA.
#[derive(Clone, Copy, Debug)]
pub struct ExpectedVerdict {
    pub group: &'static str,
    pub fixed_type: &'static str,
    pub orbit: &'static str,
    pub wl_type: &'static str,
    pub supported: bool,
    pub m: Option<i64>,
    pub k_bd: Option<i64>,
}

macro_rules! row {
    ($g:expr, $f:expr, $o:expr, $t:expr, $s:expr, $m:expr, $k:expr) => {
        ExpectedVerdict {
            group: $g,
            fixed_type: $f,
            orbit: $o,
            wl_type: $t,
            supported: $s,
            m: $m,
            k_bd: $k,
        }
    };
}

/// The published verdict table.
pub const EXPECTED_VERDICTS: &[ExpectedVerdict] = &[
    row!("G2", "sl2+sl2", "G2(a1)", "1", true, Some(-2), None),
    row!("F4", "sp6+sl2", "F4(a3)", "A1", true, Some(-5), Some(0)),
    row!("F4", "sp6+sl2", "F4(a2)", "1", true, Some(-4), None),
    row!("F4", "so9", "F4(a3)", "A1xA1", true, Some(-6), Some(1)),
    row!("F4", "so9", "F4(a1)", "1", true, Some(-4), None),
    row!("E6", "sl6+sl2", "E6(a3)", "1", true, Some(-6), None),
    row!("E7", "so12+sl2", "E7(a5)", "A1xA1", true, Some(-9), Some(1)),
    row!("E7", "so12+sl2", "E7(a4)", "A1", true, Some(-8), Some(0)),
    row!("E7", "so12+sl2", "E7(a3)", "1", true, Some(-7), None),
    row!("E7", "sl8", "E6(a1)", "A1", false, None, None),
    row!("E8", "e7+sl2", "D5+A2", "A2xA1xA1", false, None, None),
    row!(
        "E8",
        "e7+sl2",
        "D7(a1)",
        "A1xA1xA1",
        true,
        Some(-11),
        Some(2)
    ),
    row!("E8", "e7+sl2", "E8(a7)", "A2xA2xA1", false, None, None),
    row!("E8", "e7+sl2", "E8(b5)", "A1xA1", true, Some(-10), Some(1)),
    row!("E8", "e7+sl2", "E8(b4)", "A1", true, Some(-9), Some(0)),
    row!("E8", "e7+sl2", "E8(a3)", "1", true, Some(-8), None),
    row!("E8", "so16", "E8(a7)", "A2xA1xA1xA1", false, None, None),
    row!("E8", "so16", "E8(b6)", "A1xA1xA1", true, Some(-11), Some(2)),
    row!("E8", "so16", "E8(a6)", "A1xA1", true, Some(-10), Some(1)),
    row!("E8", "so16", "E8(a5)", "A1", true, Some(-9), Some(0)),
    row!("E8", "so16", "E8(a4)", "1", true, Some(-8), None),
];

/// Whether a verdict agrees with the expected row in support, `m` and `k_bd`.
pub fn matches_expected_verdict(v: &CaseVerdict, e: &ExpectedVerdict) -> bool {
    if !e.supported {
        return !v.supported && v.m.is_none();
    }
    v.supported && v.status == Status::Verified && v.m == e.m && v.k_bd == e.k_bd
}

pub fn find_expected_verdict(
    group: &str,
    fixed_type: &str,
    orbit: &str,
) -> Option<&'static ExpectedVerdict> {
    EXPECTED_VERDICTS
        .iter()
        .find(|e| e.group == group && e.fixed_type == fixed_type && e.orbit == orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::arthur_cases;

    fn case(group: &str, fixed: &str, orbit: &str) -> ArthurCase {
        arthur_cases(group.parse().unwrap())
            .unwrap()
            .into_iter()
            .find(|c| c.fixed_type == fixed && c.saturation_label == orbit)
            .unwrap()
    }

    #[test]
    fn setup_examples() {
        let rs = RootSystem::parse("F4").unwrap();
        let s = case_setup(
            &rs,
            &[0, 0, 1, 0],
            &ParityWeight::parse_bits("0101").unwrap(),
            &rs.rho(),
        );
        assert_eq!(s.sigma_l, vec![0]);
        assert!(s.supported);
        assert_eq!(s.wl_type, "A1");
        let rs = RootSystem::parse("E7").unwrap();
        let s = case_setup(
            &rs,
            &[1, 0, 0, 1, 0, 1, 0],
            &ParityWeight::parse_bits("1111111").unwrap(),
            &rs.rho(),
        );
        assert!(s.sigma_l.is_empty());
        assert_eq!(s.wl.len(), 2);
        assert!(!s.supported);
        assert_eq!(s.wl_type, "A1");
    }

    #[test]
    fn wl_types_of_all_cases() {
        for t in ["G2", "F4", "E6", "E7", "E8"] {
            let rs = RootSystem::parse(t).unwrap();
            for c in arthur_cases(rs.cartan_type.unwrap()).unwrap() {
                let s = case_setup(&rs, &c.lambda0, &c.delta0, &rs.rho());
                let e =
                    find_expected_verdict(&c.group, &c.fixed_type, &c.saturation_label).unwrap();
                assert_eq!(
                    s.wl_type, e.wl_type,
                    "{} {} {}",
                    c.group, c.fixed_type, c.saturation_label
                );
                assert_eq!(
                    s.supported, e.supported,
                    "{} {} {}",
                    c.group, c.fixed_type, c.saturation_label
                );
            }
        }
    }

    #[test]
    fn langlands_examples() {
        let rs = RootSystem::parse("G2").unwrap();
        assert!(langlands_negative(&rs, &rs.rho().neg()));
        assert!(!langlands_negative(&rs, &Weight::from_ints(&[1, 0])));
    }

    #[test]
    fn tensor_sum_examples() {
        let rs = RootSystem::parse("G2").unwrap();
        let s = case_setup(
            &rs,
            &[1, 0],
            &ParityWeight::parse_bits("11").unwrap(),
            &rs.rho(),
        );
        let v = tensor_sum(&s, &[], &[], 0).unwrap();
        assert_eq!(v, vec![Q::one()]);
        let rs = RootSystem::parse("F4").unwrap();
        let s = case_setup(
            &rs,
            &[0, 0, 1, 0],
            &ParityWeight::parse_bits("1000").unwrap(),
            &rs.rho(),
        );
        assert_eq!(s.sigma_l.len(), 2);
        // T = Sigma_L leaves a single term
        let all = s.sigma_l.clone();
        let v = tensor_sum(&s, &s.p1[..1], &all, 1).unwrap();
        assert!(v.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn g2_verdict() {
        let v = verify_case(&case("G2", "sl2+sl2", "G2(a1)"), &VerifyOptions::default()).unwrap();
        assert_eq!(v.m, Some(-2));
        assert_eq!(v.k_bd, None);
        assert_eq!(v.status, Status::Verified);
    }

    #[test]
    fn f4_verdicts() {
        for c in arthur_cases("F4".parse().unwrap()).unwrap() {
            let v = verify_case(&c, &VerifyOptions::default()).unwrap();
            let e = find_expected_verdict(&c.group, &c.fixed_type, &c.saturation_label).unwrap();
            assert!(matches_expected_verdict(&v, e), "{v:#?}");
        }
    }
}
