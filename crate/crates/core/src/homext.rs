//! Generic hom/ext between dimension vectors.
//!
//! Values are generic over *pairs* of representations: `ext(α,β)` is the
//! minimum of `dim Ext¹(M,N)` over `(M,N)` of dimensions `(α,β)`, so for the
//! Kronecker null root `hom(δ,δ) = ext(δ,δ) = 0`.
//!
//! `ext(α,β)` is computed by Schofield's subdimension-vector recursion: it is
//! the maximum of `−⟨α′,β⟩` over generic subdimension vectors `α′` of `α`,
//! where `α′` is generic iff `ext(α′, α−α′) = 0`. `hom` follows from
//! `hom − ext = ⟨α,β⟩`. The Schur test uses the same subvectors: `α` is
//! Schur iff `⟨β,α⟩ − ⟨α,β⟩ > 0` for every generic `0 ≠ β ≠ α`.
//!
//! [`hom_randomized`] and [`end_randomized`] are independent checks that
//! evaluate the intertwiner map on random representations.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg;
use crate::quiver_core::{DimVector, FormData, Quiver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomExtError {
    #[error("dimension vector {0} has a negative entry")]
    NegativeEntry(DimVector),
    #[error("dimension vector {0} is too large for subvector enumeration")]
    TooLarge(DimVector),
    #[error("randomized hom needs {needed} unknowns, cap is {cap}")]
    CapExceeded { needed: u64, cap: u64 },
}

type Key = (Box<[i64]>, Box<[i64]>);

/// Memoized generic hom/ext values for one quiver.
///
/// Reads take a shared lock and insertions an exclusive one, so a table can
/// be shared between threads.
#[derive(Debug)]
pub struct HomExtTable {
    euler: Vec<Vec<i64>>,
    /// `bounds[i]`: arrows `(t, h)` with `max(t, h) = i`.
    bounds: Vec<Vec<(usize, usize)>>,
    ext_memo: RwLock<HashMap<Key, u64>>,
    zero_memo: RwLock<HashMap<Key, bool>>,
}

/// Largest entry accepted by the enumeration. Larger vectors are far beyond
/// what the recursion can finish anyway.
const MAX_ENTRY: i64 = 1 << 20;

impl HomExtTable {
    pub fn new(forms: &FormData) -> Self {
        let euler = forms.euler_i64();
        let n = euler.len();
        let mut bounds = vec![Vec::new(); n];
        for (t, row) in euler.iter().enumerate() {
            for (h, &e) in row.iter().enumerate() {
                if t != h && e < 0 {
                    bounds[t.max(h)].push((t, h));
                }
            }
        }
        HomExtTable {
            euler,
            bounds,
            ext_memo: RwLock::new(HashMap::new()),
            zero_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.ext_memo.read().map(|m| m.len()).unwrap_or(0)
    }

    fn small(&self, d: &DimVector) -> Result<Vec<i64>, HomExtError> {
        assert_eq!(
            d.len(),
            self.euler.len(),
            "dimension vector has wrong length"
        );
        let v = d.to_i64().ok_or_else(|| HomExtError::TooLarge(d.clone()))?;
        if v.iter().any(|&x| x < 0) {
            return Err(HomExtError::NegativeEntry(d.clone()));
        }
        if v.iter().any(|&x| x > MAX_ENTRY) {
            return Err(HomExtError::TooLarge(d.clone()));
        }
        Ok(v)
    }

    fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.euler[i];
            for (j, &bj) in b.iter().enumerate() {
                s += ai * row[j] * bj;
            }
        }
        s
    }

    /// `E b`, so that `⟨x,b⟩ = w·x`.
    fn right_col(&self, b: &[i64]) -> Vec<i64> {
        self.euler
            .iter()
            .map(|row| row.iter().zip(b).map(|(e, x)| e * x).sum())
            .collect()
    }

    /// Proper nonzero subvectors `x` of `b` with `−w·x > floor`, sorted by
    /// that value, largest first (lexicographic among equal values).
    ///
    /// Only `x` that can be subrepresentations of a general representation
    /// are produced: its arrow maps have full rank, so an arrow `t → h`
    /// forces `x_h ≥ x_t − max(0, b_t − b_h)`.
    fn candidates(&self, w: &[i64], b: &[i64], floor: i64) -> Vec<(i64, Vec<i64>)> {
        let n = b.len();
        // Upper bound on −w·x over the remaining coordinates, for pruning.
        let mut tail_gain = vec![0i64; n + 1];
        for i in (0..n).rev() {
            tail_gain[i] = tail_gain[i + 1] + (-w[i]).max(0) * b[i];
        }
        struct Walk<'a> {
            w: &'a [i64],
            b: &'a [i64],
            floor: i64,
            tail_gain: Vec<i64>,
            bounds: &'a [Vec<(usize, usize)>],
            x: Vec<i64>,
            out: Vec<(i64, Vec<i64>)>,
        }
        impl Walk<'_> {
            fn rec(&mut self, i: usize, acc: i64) {
                if acc + self.tail_gain[i] <= self.floor {
                    return;
                }
                if i == self.b.len() {
                    let zero = self.x.iter().all(|&v| v == 0);
                    let full = self.x.iter().zip(self.b).all(|(a, c)| a == c);
                    if !zero && !full {
                        self.out.push((acc, self.x.clone()));
                    }
                    return;
                }
                let (mut lo, mut hi) = (0, self.b[i]);
                for &(t, h) in &self.bounds[i] {
                    let slack = (self.b[t] - self.b[h]).max(0);
                    if h == i {
                        lo = lo.max(self.x[t] - slack);
                    } else {
                        hi = hi.min(self.x[h] + slack);
                    }
                }
                for v in lo..=hi {
                    self.x[i] = v;
                    self.rec(i + 1, acc - self.w[i] * v);
                }
                self.x[i] = 0;
            }
        }
        let mut walk = Walk {
            w,
            b,
            floor,
            tail_gain,
            bounds: &self.bounds,
            x: vec![0; n],
            out: Vec::new(),
        };
        walk.rec(0, 0);
        let mut out = walk.out;
        out.sort_by(|p, q| q.0.cmp(&p.0).then_with(|| p.1.cmp(&q.1)));
        out
    }

    fn ext_raw(&self, a: &[i64], b: &[i64]) -> u64 {
        if a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
            return 0;
        }
        let key: Key = (a.into(), b.into());
        if let Some(&v) = self.ext_memo.read().expect("memo lock").get(&key) {
            return v;
        }
        let mut best = (-self.euler(a, b)).max(0);
        let w = self.right_col(b);
        for (val, sub) in self.candidates(&w, a, best) {
            if val <= best {
                break;
            }
            let rest: Vec<i64> = a.iter().zip(&sub).map(|(x, y)| x - y).collect();
            if self.ext_is_zero(&sub, &rest) {
                best = val;
                break;
            }
        }
        let v = best as u64;
        self.ext_memo.write().expect("memo lock").insert(key, v);
        v
    }

    fn ext_is_zero(&self, a: &[i64], b: &[i64]) -> bool {
        if a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
            return true;
        }
        if self.euler(a, b) < 0 {
            return false;
        }
        let key: Key = (a.into(), b.into());
        if let Some(&v) = self.ext_memo.read().expect("memo lock").get(&key) {
            return v == 0;
        }
        if let Some(&z) = self.zero_memo.read().expect("memo lock").get(&key) {
            return z;
        }
        let w = self.right_col(b);
        let mut zero = true;
        for (_, sub) in self.candidates(&w, a, 0) {
            let rest: Vec<i64> = a.iter().zip(&sub).map(|(x, y)| x - y).collect();
            if self.ext_is_zero(&sub, &rest) {
                zero = false;
                break;
            }
        }
        self.zero_memo.write().expect("memo lock").insert(key, zero);
        zero
    }

    /// Generic `ext(α,β)`.
    pub fn ext_generic(&self, a: &DimVector, b: &DimVector) -> Result<u64, HomExtError> {
        let (a, b) = (self.small(a)?, self.small(b)?);
        Ok(self.ext_raw(&a, &b))
    }

    /// Whether generic `ext(α,β)` vanishes; cheaper than computing its value.
    pub fn ext_vanishes(&self, a: &DimVector, b: &DimVector) -> Result<bool, HomExtError> {
        let (a, b) = (self.small(a)?, self.small(b)?);
        Ok(self.ext_is_zero(&a, &b))
    }

    /// Generic `hom(α,β) = ⟨α,β⟩ + ext(α,β)`.
    pub fn hom_generic(&self, a: &DimVector, b: &DimVector) -> Result<u64, HomExtError> {
        let (a, b) = (self.small(a)?, self.small(b)?);
        let e = self.ext_raw(&a, &b) as i64;
        let h = self.euler(&a, &b) + e;
        debug_assert!(h >= 0, "generic hom came out negative");
        Ok(h.max(0) as u64)
    }

    /// `α ⊥ β`: generic hom and ext both vanish.
    pub fn left_orthogonal(&self, a: &DimVector, b: &DimVector) -> Result<bool, HomExtError> {
        let (a, b) = (self.small(a)?, self.small(b)?);
        // hom = ext = 0 forces ⟨α,β⟩ = 0.
        if self.euler(&a, &b) != 0 {
            return Ok(false);
        }
        Ok(self.ext_is_zero(&a, &b))
    }

    /// Schofield's Schur criterion: `⟨β,d⟩ − ⟨d,β⟩ > 0` for every generic
    /// subdimension vector `β` of `d` other than `0` and `d`.
    pub fn is_schur_vector(&self, d: &DimVector) -> Result<bool, HomExtError> {
        let dd = self.small(d)?;
        if dd.iter().all(|&x| x == 0) {
            return Ok(false);
        }
        // θ(x) = ⟨x,d⟩ − ⟨d,x⟩ = x·(E − Eᵀ)d; candidates are x with θ(x) ≤ 0,
        // i.e. −θ(x) > −1.
        let n = dd.len();
        let w: Vec<i64> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (self.euler[i][j] - self.euler[j][i]) * dd[j])
                    .sum()
            })
            .collect();
        for (_, sub) in self.candidates(&w, &dd, -1) {
            let rest: Vec<i64> = dd.iter().zip(&sub).map(|(x, y)| x - y).collect();
            if self.ext_is_zero(&sub, &rest) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `sub` is a generic subdimension vector of `b`.
    pub fn is_generic_subvector(
        &self,
        sub: &DimVector,
        b: &DimVector,
    ) -> Result<bool, HomExtError> {
        if !sub.le(b) {
            return Ok(false);
        }
        let rest = b - sub;
        let (s, r) = (self.small(sub)?, self.small(&rest)?);
        Ok(self.ext_is_zero(&s, &r))
    }

    /// All generic subdimension vectors of `b`, including `0` and `b`.
    pub fn generic_subvectors(&self, b: &DimVector) -> Result<Vec<DimVector>, HomExtError> {
        let bb = self.small(b)?;
        let mut out = Vec::new();
        let mut x = vec![0i64; bb.len()];
        loop {
            let rest: Vec<i64> = bb.iter().zip(&x).map(|(p, q)| p - q).collect();
            if self.ext_is_zero(&x, &rest) {
                out.push(DimVector::from_i64(&x));
            }
            let mut i = 0;
            loop {
                if i == bb.len() {
                    return Ok(out);
                }
                if x[i] < bb[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }
}

/// Options for [`hom_randomized`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomizedOptions {
    pub trials: u32,
    /// Entries are drawn uniformly from `[-range, range]`.
    pub range: i64,
    pub seed: u64,
    /// Upper bound on `s(α)·s(β)`.
    pub cap: u64,
}

impl Default for RandomizedOptions {
    fn default() -> Self {
        RandomizedOptions {
            trials: 8,
            range: 1000,
            seed: 0x5eed,
            cap: 4096,
        }
    }
}

/// Minimum over random representation pairs of `dim Hom(M,N)`, computed as
/// the kernel dimension of `φ ↦ (φ_h M_a − N_a φ_t)_a` with exact rank.
///
/// `M` and `N` are drawn independently, matching the pair definition of
/// generic hom. Stops early once a trial reaches `max(0, ⟨α,β⟩)`, which no
/// representation pair can beat.
pub fn hom_randomized(
    q: &Quiver,
    a: &DimVector,
    b: &DimVector,
    opts: RandomizedOptions,
) -> Result<u64, HomExtError> {
    randomized(q, a, b, opts, false)
}

/// Minimum over random representations `M` of dimension `d` of
/// `dim End(M)`; equals 1 exactly when `d` is a Schur root (with high
/// probability).
pub fn end_randomized(
    q: &Quiver,
    d: &DimVector,
    opts: RandomizedOptions,
) -> Result<u64, HomExtError> {
    randomized(q, d, d, opts, true)
}

fn randomized(
    q: &Quiver,
    a: &DimVector,
    b: &DimVector,
    opts: RandomizedOptions,
    same: bool,
) -> Result<u64, HomExtError> {
    let n = q.vertex_count();
    let small = |d: &DimVector| -> Result<Vec<usize>, HomExtError> {
        assert_eq!(d.len(), n, "dimension vector has wrong length");
        d.entries()
            .iter()
            .map(|x| {
                if x.sign() == num_bigint::Sign::Minus {
                    Err(HomExtError::NegativeEntry(d.clone()))
                } else {
                    x.to_usize().ok_or_else(|| HomExtError::TooLarge(d.clone()))
                }
            })
            .collect()
    };
    let (av, bv) = (small(a)?, small(b)?);
    let sa: u64 = av.iter().map(|&x| x as u64).sum();
    let sb: u64 = bv.iter().map(|&x| x as u64).sum();
    if sa * sb > opts.cap {
        return Err(HomExtError::CapExceeded {
            needed: sa * sb,
            cap: opts.cap,
        });
    }
    let mut offset = vec![0usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + av[i] * bv[i];
    }
    let cols = offset[n];
    if cols == 0 {
        return Ok(0);
    }
    let forms = FormData::new(q);
    let euler = forms.euler_form(a, b).to_i64().unwrap_or(0);
    // Identity maps always lie in End(M).
    let lower = if same { euler.max(1) } else { euler.max(0) } as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best = u64::MAX;
    for _ in 0..opts.trials.max(1) {
        let mut random = |r: usize, c: usize| -> Vec<Vec<i64>> {
            (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| rng.gen_range(-opts.range..=opts.range))
                        .collect()
                })
                .collect()
        };
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for &(t, h) in q.arrows() {
            let m = random(av[h], av[t]);
            let nn = if same {
                m.clone()
            } else {
                random(bv[h], bv[t])
            };
            for r in 0..bv[h] {
                for c in 0..av[t] {
                    let mut row = vec![BigInt::zero(); cols];
                    // (φ_h M_a)[r][c] = Σ_k φ_h[r][k] M_a[k][c]
                    for k in 0..av[h] {
                        row[offset[h] + r * av[h] + k] += m[k][c];
                    }
                    // (N_a φ_t)[r][c] = Σ_k N_a[r][k] φ_t[k][c]
                    for k in 0..bv[t] {
                        row[offset[t] + k * av[t] + c] -= nn[r][k];
                    }
                    rows.push(row);
                }
            }
        }
        let rank = linalg::rank(rows);
        best = best.min((cols - rank) as u64);
        if best <= lower {
            break;
        }
    }
    Ok(best)
}
