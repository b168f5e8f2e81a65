//! Depth-first enumeration of minimal left coset representatives of
//! `W / W(Sigma_L)`.
//!
//! Each `u != e` hangs below `s_j u` where `j` is the smallest left descent of
//! `u`, so every representative is reached exactly once. Children of `w` are
//! the `s_j w` with `<w rho, alpha_j^vee> > 0` whose smallest left descent is
//! `j` and whose new inversion `w^{-1} alpha_j` is not a simple root of
//! `Sigma_L`. The tree is cut at a fixed prefix depth into blocks that are
//! processed independently and merged in block order.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// Largest supported rank.
pub const MAXR: usize = 8;

/// Static data for one enumeration.
pub struct EnumContext<'a> {
    pub rs: &'a RootSystem,
    pub sigma_l: Vec<usize>,
    /// Dominant integral weight tracked along the traversal (fundamental coordinates).
    pub lambda0: Vec<i64>,
    /// Positive-root indices whose inversion status is reported (at most 128).
    pub designated: Vec<usize>,
}

/// What a visitor sees for one representative `w'`.
pub struct CosetView<'a> {
    /// `w' rho`, fundamental coordinates.
    pub rho_image: &'a [i32],
    /// `w' lambda0`, fundamental coordinates.
    pub lambda_image: &'a [i64],
    /// `w' lambda0` in simple-root coordinates, multiplied by `simple_scale`.
    pub lambda_simple: &'a [i64],
    pub simple_scale: i64,
    /// Column `k` is `w'^{-1} alpha_k` in simple-root coordinates.
    pub inverse_columns: &'a [[i32; MAXR]],
    /// Bit `b` is set iff `w'` sends the designated root `b` negative.
    pub signature: u128,
    pub length: u32,
    /// Left-multiplication sequence that built `w'` from the identity
    /// (`w' = s_{path[last]} ... s_{path[0]}`).
    pub path: &'a [u8],
}

/// A per-block aggregation over the coset stream.
pub trait CosetVisitor: Sync {
    type Acc: Default + Send + Serialize + DeserializeOwned;
    type Scratch: Send;
    fn scratch(&self) -> Self::Scratch;
    fn visit(&self, scratch: &mut Self::Scratch, acc: &mut Self::Acc, view: &CosetView);
    /// Folds `other` (a later block) into `into`. Must be associative.
    fn merge(&self, into: &mut Self::Acc, other: Self::Acc);
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub workers: usize,
    pub prefix_depth: usize,
    /// Append-only journal of completed blocks; recorded blocks are skipped on resume.
    pub journal: Option<PathBuf>,
    /// Identifies the computation a journal belongs to.
    pub journal_key: String,
    /// Stop (with `Error::Interrupted`) after this many newly processed blocks.
    pub block_limit: Option<usize>,
    /// Progress lines go to stderr when set.
    pub progress: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            workers: 1,
            prefix_depth: 6,
            journal: None,
            journal_key: String::new(),
            block_limit: None,
            progress: false,
        }
    }
}

#[derive(Debug)]
pub struct EnumOutcome<A> {
    pub acc: A,
    pub visited: u64,
    pub blocks: usize,
    pub resumed_blocks: usize,
}

#[derive(Clone)]
struct State {
    x: [i32; MAXR],
    y: [i64; MAXR],
    z: [i64; MAXR],
    m: [[i32; MAXR]; MAXR],
    sig: u128,
    len: u32,
}

struct Tables {
    r: usize,
    cartan: [[i32; MAXR]; MAXR],
    scale: i64,
    /// mixed-radix code of a positive root -> designated bit, or 255
    lookup: Vec<u8>,
    strides: [usize; MAXR],
    in_sigma_l: [bool; MAXR],
}

impl Tables {
    fn new(ctx: &EnumContext) -> Result<Self> {
        let rs = ctx.rs;
        let r = rs.rank();
        if r > MAXR {
            return Err(Error::Mismatch(format!("rank {r} exceeds {MAXR}")));
        }
        if ctx.designated.len() > 128 {
            return Err(Error::Mismatch("more than 128 designated roots".into()));
        }
        let mut cartan = [[0i32; MAXR]; MAXR];
        for i in 0..r {
            for j in 0..r {
                cartan[i][j] = rs.cartan[i][j] as i32;
            }
        }
        // Scale so that simple-root coordinates of integral weights are integers.
        let scale = rs
            .cartan_inv
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::from(1), |acc, x| {
                num_integer::lcm(acc, x.denom().clone())
            })
            .to_i64()
            .unwrap();
        let mut strides = [0usize; MAXR];
        let mut size = 1usize;
        for k in 0..r {
            strides[k] = size;
            size *= (rs.highest[k] + 1) as usize;
        }
        let mut lookup = vec![255u8; size];
        for (b, &k) in ctx.designated.iter().enumerate() {
            let code: usize = rs.pos[k]
                .iter()
                .zip(&strides)
                .map(|(&c, &s)| c as usize * s)
                .sum();
            lookup[code] = b as u8;
        }
        let mut in_sigma_l = [false; MAXR];
        for &i in &ctx.sigma_l {
            in_sigma_l[i] = true;
        }
        Ok(Tables {
            r,
            cartan,
            scale,
            lookup,
            strides,
            in_sigma_l,
        })
    }

    fn root_state(&self, ctx: &EnumContext) -> State {
        let r = self.r;
        let mut x = [0i32; MAXR];
        let mut y = [0i64; MAXR];
        let mut z = [0i64; MAXR];
        let mut m = [[0i32; MAXR]; MAXR];
        let simple = ctx
            .rs
            .to_simple(&crate::rootsys::Weight::from_ints(&ctx.lambda0));
        for k in 0..r {
            x[k] = 1;
            y[k] = ctx.lambda0[k];
            z[k] = (simple[k].clone() * crate::rootsys::q(self.scale))
                .to_integer()
                .to_i64()
                .unwrap();
            m[k][k] = 1;
        }
        State {
            x,
            y,
            z,
            m,
            sig: 0,
            len: 0,
        }
    }

    /// The child `s_j w` if it belongs to the tree.
    #[inline(always)]
    fn child(&self, s: &State, j: usize) -> Option<State> {
        let r = self.r;
        let xj = s.x[j];
        if xj <= 0 {
            return None;
        }
        let mut x = s.x;
        for k in 0..r {
            x[k] -= xj * self.cartan[j][k];
        }
        if x[..j].iter().any(|&v| v < 0) {
            return None;
        }
        let col = s.m[j];
        let h: i32 = col[..r].iter().sum();
        if h == 1 {
            let b = col[..r].iter().position(|&c| c == 1).unwrap();
            if self.in_sigma_l[b] {
                return None;
            }
        }
        let mut n = State {
            x,
            y: s.y,
            z: s.z,
            m: s.m,
            sig: s.sig,
            len: s.len + 1,
        };
        let yj = s.y[j];
        if yj != 0 {
            for k in 0..r {
                n.y[k] -= yj * self.cartan[j][k] as i64;
            }
            n.z[j] -= yj * self.scale;
        }
        for k in 0..r {
            let c = self.cartan[k][j];
            if c != 0 && k != j {
                for t in 0..r {
                    n.m[k][t] -= c * col[t];
                }
            }
        }
        for t in 0..r {
            n.m[j][t] = -col[t];
        }
        let code: usize = (0..r).map(|t| col[t] as usize * self.strides[t]).sum();
        let b = self.lookup[code];
        if b != 255 {
            n.sig |= 1u128 << b;
        }
        Some(n)
    }
}

struct Walker<'t, 'v, V: CosetVisitor> {
    t: &'t Tables,
    visitor: &'v V,
    count: u64,
    path: Vec<u8>,
}

impl<'t, 'v, V: CosetVisitor> Walker<'t, 'v, V> {
    fn emit(&mut self, s: &State, scratch: &mut V::Scratch, acc: &mut V::Acc) {
        let r = self.t.r;
        let view = CosetView {
            rho_image: &s.x[..r],
            lambda_image: &s.y[..r],
            lambda_simple: &s.z[..r],
            simple_scale: self.t.scale,
            inverse_columns: &s.m[..r],
            signature: s.sig,
            length: s.len,
            path: &self.path,
        };
        self.visitor.visit(scratch, acc, &view);
        self.count += 1;
    }

    fn subtree(&mut self, s: &State, scratch: &mut V::Scratch, acc: &mut V::Acc) {
        self.emit(s, scratch, acc);
        for j in 0..self.t.r {
            if let Some(c) = self.t.child(s, j) {
                self.path.push(j as u8);
                self.subtree(&c, scratch, acc);
                self.path.pop();
            }
        }
    }

    /// Nodes shallower than `depth`; collects the prefixes at exactly `depth`.
    fn shallow(
        &mut self,
        s: &State,
        depth: usize,
        scratch: &mut V::Scratch,
        acc: &mut V::Acc,
        out: &mut Vec<Vec<u8>>,
    ) {
        if self.path.len() == depth {
            out.push(self.path.clone());
            return;
        }
        self.emit(s, scratch, acc);
        for j in 0..self.t.r {
            if let Some(c) = self.t.child(s, j) {
                self.path.push(j as u8);
                self.shallow(&c, depth, scratch, acc, out);
                self.path.pop();
            }
        }
    }
}

fn replay(t: &Tables, root: &State, prefix: &[u8]) -> State {
    let mut s = root.clone();
    for &j in prefix {
        s = t.child(&s, j as usize).expect("prefix lies in the tree");
    }
    s
}

fn prefix_text(p: &[u8]) -> String {
    p.iter()
        .map(|j| j.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Journal contents: block prefix text -> serialized aggregate.
fn read_journal(path: &PathBuf, key: &str) -> Result<std::collections::HashMap<String, String>> {
    let mut out = std::collections::HashMap::new();
    if !path.exists() {
        return Ok(out);
    }
    let f = File::open(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
    for (n, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| Error::Checkpoint(e.to_string()))?;
        if n == 0 {
            let want = format!("CASE {key}");
            if line.trim_end() != want {
                return Err(Error::Checkpoint(format!(
                    "journal belongs to `{line}`, expected `{want}`"
                )));
            }
            continue;
        }
        let Some(rest) = line.strip_prefix("PREFIX") else {
            return Err(Error::Checkpoint(format!("malformed line {}", n + 1)));
        };
        let Some(pos) = rest.find(" DONE") else {
            // a torn final line from an interrupted write is ignored
            continue;
        };
        let prefix = rest[..pos].trim().to_string();
        let payload = rest[pos + 5..].trim().to_string();
        out.insert(prefix, payload);
    }
    Ok(out)
}

/// Visits every minimal representative of `W / W(Sigma_L)`.
pub fn enumerate_min_coset_reps<V: CosetVisitor>(
    ctx: &EnumContext,
    visitor: &V,
    opts: &EnumOptions,
) -> Result<EnumOutcome<V::Acc>> {
    let t = Tables::new(ctx)?;
    let root = t.root_state(ctx);

    let mut acc = V::Acc::default();
    let mut walker = Walker {
        t: &t,
        visitor,
        count: 0,
        path: Vec::new(),
    };
    let mut prefixes = Vec::new();
    {
        let mut scratch = visitor.scratch();
        walker.shallow(
            &root,
            opts.prefix_depth,
            &mut scratch,
            &mut acc,
            &mut prefixes,
        );
    }

    let done = match &opts.journal {
        Some(p) => read_journal(p, &opts.journal_key)?,
        None => Default::default(),
    };
    let journal = match &opts.journal {
        Some(p) => {
            let fresh = !p.exists();
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .map_err(|e| Error::Checkpoint(format!("{}: {e}", p.display())))?;
            if fresh {
                writeln!(f, "CASE {}", opts.journal_key)?;
            }
            Some(Mutex::new(f))
        }
        None => None,
    };

    let mut restored: Vec<Option<V::Acc>> = Vec::with_capacity(prefixes.len());
    for p in &prefixes {
        let key = prefix_text(p);
        let r = match done.get(&key) {
            Some(payload) => {
                let (count, a): (u64, V::Acc) = serde_json::from_str(payload)
                    .map_err(|e| Error::Checkpoint(format!("block `{key}`: {e}")))?;
                Some((count, a))
            }
            None => None,
        };
        restored.push(r.map(|(c, a)| {
            walker.count += c;
            a
        }));
    }
    let resumed_blocks = restored.iter().filter(|r| r.is_some()).count();
    let todo: Vec<usize> = (0..prefixes.len())
        .filter(|&i| restored[i].is_none())
        .collect();
    let limit = opts.block_limit.unwrap_or(usize::MAX);
    let todo_now: Vec<usize> = todo.iter().copied().take(limit).collect();
    let total = prefixes.len();
    let visited_new = AtomicU64::new(0);
    let finished = AtomicU64::new(resumed_blocks as u64);
    let started = std::time::Instant::now();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Mismatch(e.to_string()))?;
    let results: Vec<Result<(usize, V::Acc)>> = pool.install(|| {
        todo_now
            .par_iter()
            .map_init(
                || visitor.scratch(),
                |scratch, &bi| {
                    let prefix = &prefixes[bi];
                    let start = replay(&t, &root, prefix);
                    let mut w = Walker {
                        t: &t,
                        visitor,
                        count: 0,
                        path: prefix.clone(),
                    };
                    let mut a = V::Acc::default();
                    w.subtree(&start, scratch, &mut a);
                    visited_new.fetch_add(w.count, Ordering::Relaxed);
                    if let Some(j) = &journal {
                        let payload = serde_json::to_string(&(w.count, &a))
                            .map_err(|e| Error::Checkpoint(e.to_string()))?;
                        let mut f = j.lock().unwrap();
                        writeln!(f, "PREFIX {} DONE {}", prefix_text(prefix), payload)?;
                        f.flush()?;
                    }
                    let k = finished.fetch_add(1, Ordering::Relaxed) + 1;
                    if opts.progress && (k % 64 == 0 || k as usize == total) {
                        let secs = started.elapsed().as_secs_f64().max(1e-9);
                        eprintln!(
                            "  block {k}/{total}  {:.2e} cosets/s",
                            visited_new.load(Ordering::Relaxed) as f64 / secs
                        );
                    }
                    Ok((bi, a))
                },
            )
            .collect()
    });
    let mut fresh: Vec<Option<V::Acc>> = (0..total).map(|_| None).collect();
    for r in results {
        let (bi, a) = r?;
        fresh[bi] = Some(a);
    }
    if todo_now.len() < todo.len() {
        return Err(Error::Interrupted {
            done: resumed_blocks + todo_now.len(),
            total,
        });
    }
    for (bi, slot) in restored.into_iter().enumerate() {
        let a = slot
            .or_else(|| fresh[bi].take())
            .expect("every block processed");
        visitor.merge(&mut acc, a);
    }
    Ok(EnumOutcome {
        acc,
        visited: walker.count + visited_new.into_inner(),
        blocks: total,
        resumed_blocks,
    })
}

struct Counter;

impl CosetVisitor for Counter {
    type Acc = u64;
    type Scratch = ();
    fn scratch(&self) {}
    fn visit(&self, _: &mut (), acc: &mut u64, _: &CosetView) {
        *acc += 1;
    }
    fn merge(&self, into: &mut u64, other: u64) {
        *into += other;
    }
}

/// Number of minimal coset representatives (by enumeration).
pub fn count_min_coset_reps(rs: &RootSystem, sigma_l: &[usize], workers: usize) -> Result<u64> {
    let ctx = EnumContext {
        rs,
        sigma_l: sigma_l.to_vec(),
        lambda0: vec![0; rs.rank()],
        designated: vec![],
    };
    let opts = EnumOptions {
        workers,
        prefix_depth: 4,
        ..Default::default()
    };
    Ok(enumerate_min_coset_reps(&ctx, &Counter, &opts)?.acc)
}
