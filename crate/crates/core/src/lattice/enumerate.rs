//! Counting vectors of a lattice coset by norm.
//!
//! The pruned search follows Fincke-Pohst: the Gram matrix is factored
//! exactly as `U^T D U`, and coordinates are fixed from last to first while
//! the remaining norm budget shrinks. Pruning uses `f64` copies of the exact
//! factors widened by a small slack, so it can only admit extra candidates;
//! every leaf is then accepted or rejected on its exact integer norm.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::rational::Rat;

const EPS: f64 = 1e-7;

/// Search strategy for [`count_by_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Depth-first search over the exact `U^T D U` factorization.
    #[default]
    Pruned,
    /// Scan the bounding box of the ellipsoid; only for dimension at most 8.
    Box,
}

pub const BOX_MAX_DIM: usize = 8;

fn lcm_of_denoms<'a>(it: impl Iterator<Item = &'a Rat>) -> BigInt {
    it.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

fn to_i128(b: &BigInt) -> Result<i128> {
    b.to_i128().ok_or_else(|| Error::Dimension("lattice entries too large for exact search".into()))
}

fn to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Everything the search needs, in integer and float form.
struct Kernel {
    n: usize,
    d: Vec<f64>,
    u: Vec<Vec<f64>>,
    lam: Vec<f64>,
    /// `gram * gram_den`, integral.
    g: Vec<Vec<i128>>,
    /// Scaled coordinates are `z_i = step * k_i + off_i`.
    off: Vec<i128>,
    step: i128,
    /// Exact norm is `zGz / scale`.
    scale: BigInt,
    bound_q: i128,
    bound_f: f64,
}

impl Kernel {
    fn new(gram: &RatMatrix, shift: &[Rat], max_norm: &Rat) -> Result<Kernel> {
        let n = gram.len();
        let (d, u) = linalg::udu(gram).ok_or(Error::NotPositiveDefinite)?;
        let gram_den = lcm_of_denoms(gram.iter().flatten());
        let g = gram
            .iter()
            .map(|row| row.iter().map(|x| to_i128(&(x * Rat::from_integer(gram_den.clone())).to_integer())).collect())
            .collect::<Result<Vec<Vec<i128>>>>()?;
        let step_big = lcm_of_denoms(shift.iter());
        let off = shift
            .iter()
            .map(|x| to_i128(&(x * Rat::from_integer(step_big.clone())).to_integer()))
            .collect::<Result<Vec<_>>>()?;
        let scale = &gram_den * &step_big * &step_big;
        let bound = (max_norm * Rat::from_integer(scale.clone())).floor().to_integer();
        Ok(Kernel {
            n,
            d: d.iter().map(to_f64).collect(),
            u: u.iter().map(|row| row.iter().map(to_f64).collect()).collect(),
            lam: shift.iter().map(to_f64).collect(),
            g,
            off,
            step: to_i128(&step_big)?,
            scale,
            bound_q: to_i128(&bound)?,
            bound_f: to_f64(max_norm),
        })
    }

    fn tol(&self) -> f64 {
        EPS * (1.0 + self.bound_f.abs())
    }
}

/// Partial assignment of the coordinates above `level`.
#[derive(Clone)]
struct Frame {
    level: usize,
    y: Vec<f64>,
    rem: f64,
    q: i128,
    /// `acc[l] = sum_{j > level} g[l][j] z_j`.
    acc: Vec<i128>,
}

impl Kernel {
    fn root(&self) -> Frame {
        Frame {
            level: self.n - 1,
            y: vec![0.0; self.n],
            rem: self.bound_f + self.tol(),
            q: 0,
            acc: vec![0; self.n],
        }
    }

    /// Calls `visit` for each admissible value at `f.level` with the child frame
    /// (its `level` is meaningless when `f.level == 0`).
    fn children(&self, f: &Frame, mut visit: impl FnMut(Frame)) {
        let i = f.level;
        let center: f64 = -(i + 1..self.n).map(|j| self.u[i][j] * f.y[j]).sum::<f64>();
        let rad = (f.rem.max(0.0) / self.d[i]).sqrt();
        let lo = (center - rad - self.lam[i] - EPS).ceil() as i64;
        let hi = (center + rad - self.lam[i] + EPS).floor() as i64;
        for k in lo..=hi {
            let yv = k as f64 + self.lam[i];
            let t = yv - center;
            let rem = f.rem - self.d[i] * t * t;
            if rem < -self.tol() {
                continue;
            }
            let z = self.step * k as i128 + self.off[i];
            let q = f.q + self.g[i][i] * z * z + 2 * z * f.acc[i];
            let mut child = Frame { level: i.saturating_sub(1), y: f.y.clone(), rem, q, acc: f.acc.clone() };
            child.y[i] = yv;
            for l in 0..i {
                child.acc[l] += self.g[l][i] * z;
            }
            visit(child);
        }
    }

    /// Exhausts the subtree below `f`, recursing in place on per-level buffers.
    fn search(&self, f: &Frame, tally: &mut Tally) {
        let mut y = f.y.clone();
        let mut acc = vec![vec![0i128; self.n]; f.level + 1];
        acc[f.level].copy_from_slice(&f.acc);
        self.descend(f.level, &mut y, f.rem, f.q, &mut acc, tally);
    }

    fn descend(&self, i: usize, y: &mut [f64], rem: f64, q: i128, acc: &mut [Vec<i128>], tally: &mut Tally) {
        let center: f64 = -(i + 1..self.n).map(|j| self.u[i][j] * y[j]).sum::<f64>();
        let rad = (rem.max(0.0) / self.d[i]).sqrt();
        let lo = (center - rad - self.lam[i] - EPS).ceil() as i64;
        let hi = (center + rad - self.lam[i] + EPS).floor() as i64;
        let tol = self.tol();
        let gii = self.g[i][i];
        let cross = acc[i][i];
        for k in lo..=hi {
            let yv = k as f64 + self.lam[i];
            let t = yv - center;
            let rest = rem - self.d[i] * t * t;
            if rest < -tol {
                continue;
            }
            let z = self.step * k as i128 + self.off[i];
            let qn = q + gii * z * z + 2 * z * cross;
            if i == 0 {
                if qn <= self.bound_q {
                    tally.add(qn);
                }
                continue;
            }
            y[i] = yv;
            let (lower, upper) = acc.split_at_mut(i);
            let next = &mut lower[i - 1];
            for l in 0..i {
                next[l] = upper[0][l] + self.g[l][i] * z;
            }
            self.descend(i - 1, y, rest, qn, acc, tally);
        }
    }

    fn run_pruned(&self) -> HashMap<i128, u64> {
        // split the top two levels into independent subtrees
        let mut frames = vec![self.root()];
        for _ in 0..2.min(self.n - 1) {
            let mut next = Vec::new();
            for f in &frames {
                self.children(f, |c| next.push(c));
            }
            frames = next;
        }
        frames
            .par_iter()
            .map(|f| {
                let mut tally = Tally::new(self.bound_q);
                self.search(f, &mut tally);
                tally.into_map()
            })
            .reduce(HashMap::new, merge)
    }

    fn run_box(&self, gram: &RatMatrix) -> Result<HashMap<i128, u64>> {
        if self.n > BOX_MAX_DIM {
            return Err(Error::Dimension(format!(
                "box enumeration supports dimension at most {BOX_MAX_DIM}, got {}",
                self.n
            )));
        }
        let inv = linalg::inverse(gram).ok_or(Error::NotPositiveDefinite)?;
        let ranges: Vec<(i64, i64)> = (0..self.n)
            .map(|i| {
                let w = (self.bound_f.max(0.0) * to_f64(&inv[i][i])).sqrt();
                ((-w - self.lam[i] - EPS).ceil() as i64, (w - self.lam[i] + EPS).floor() as i64)
            })
            .collect();
        let mut counts = HashMap::new();
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            return Ok(counts);
        }
        let mut k: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            let z: Vec<i128> = (0..self.n).map(|i| self.step * k[i] as i128 + self.off[i]).collect();
            let q: i128 = (0..self.n)
                .map(|i| (0..self.n).map(|j| self.g[i][j] * z[j]).sum::<i128>() * z[i])
                .sum();
            if q <= self.bound_q {
                *counts.entry(q).or_insert(0) += 1;
            }
            // odometer
            let mut i = 0;
            loop {
                if i == self.n {
                    return Ok(counts);
                }
                if k[i] < ranges[i].1 {
                    k[i] += 1;
                    break;
                }
                k[i] = ranges[i].0;
                i += 1;
            }
        }
    }
}

/// Leaf counts keyed by scaled norm; dense when the bound is small.
enum Tally {
    Dense(Vec<u64>),
    Sparse(HashMap<i128, u64>),
}

impl Tally {
    const DENSE_LIMIT: i128 = 1 << 22;

    fn new(bound: i128) -> Tally {
        if (0..Self::DENSE_LIMIT).contains(&bound) {
            Tally::Dense(vec![0; bound as usize + 1])
        } else {
            Tally::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn add(&mut self, q: i128) {
        match self {
            Tally::Dense(v) => v[q as usize] += 1,
            Tally::Sparse(m) => *m.entry(q).or_insert(0) += 1,
        }
    }

    fn into_map(self) -> HashMap<i128, u64> {
        match self {
            Tally::Dense(v) => v.into_iter().enumerate().filter(|(_, c)| *c > 0).map(|(q, c)| (q as i128, c)).collect(),
            Tally::Sparse(m) => m,
        }
    }
}

fn merge(mut a: HashMap<i128, u64>, b: HashMap<i128, u64>) -> HashMap<i128, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Exact counts of `x in L + shift` with `<x, x> <= max_norm`, keyed by norm.
/// `shift` is in basis coordinates.
pub fn count_by_norm(gram: &RatMatrix, shift: &[Rat], max_norm: &Rat, strategy: Strategy) -> Result<BTreeMap<Rat, u64>> {
    let n = gram.len();
    if shift.len() != n {
        return Err(Error::Dimension(format!("shift has length {}, lattice has rank {n}", shift.len())));
    }
    if n == 0 {
        let mut m = BTreeMap::new();
        if *max_norm < Rat::zero() {
            return Ok(m);
        }
        m.insert(Rat::zero(), 1);
        return Ok(m);
    }
    let kernel = Kernel::new(gram, shift, max_norm)?;
    let raw = match strategy {
        Strategy::Pruned => kernel.run_pruned(),
        Strategy::Box => kernel.run_box(gram)?,
    };
    Ok(raw
        .into_iter()
        .map(|(q, c)| (Rat::new(BigInt::from(q), kernel.scale.clone()), c))
        .collect())
}
