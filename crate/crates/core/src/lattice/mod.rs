//! Positive definite lattices with exact rational Gram matrices, their cosets,
//! theta series and lattice-VOA characters, and the characteristic-vector
//! description of the shadow of an integral self-dual lattice.
//!
//! A lattice is stored as basis rows together with a diagonal metric, so the
//! Gram matrix is `B diag(m) B^T`. With the identity metric this is the usual
//! picture of basis vectors in `R^n`; a non-trivial metric lets Gram-only
//! input and Construction A stay rational without square roots.

mod builtins;
mod enumerate;

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

pub use builtins::{a, by_name, d, d_plus, e6, e7, e8, z};
pub use enumerate::{count_by_norm, Strategy, BOX_MAX_DIM};

use crate::error::{Error, Result};
use crate::gf2;
use crate::linalg::{self, RatMatrix};
use crate::modforms;
use crate::qseries::QSeries;
use crate::rational::{fmt_rat, parse_rat, pow2, rat, rat_to_json, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: RatMatrix,
    metric: Vec<Rat>,
    gram: RatMatrix,
}

impl Lattice {
    /// Lattice spanned by `rows` under the standard inner product.
    pub fn from_basis(rows: RatMatrix) -> Result<Lattice> {
        let n = rows.len();
        Lattice::with_metric(rows, vec![Rat::one(); n])
    }

    /// Lattice spanned by `rows` under `<u, v> = sum_i metric_i u_i v_i`.
    pub fn with_metric(rows: RatMatrix, metric: Vec<Rat>) -> Result<Lattice> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) || metric.len() != n {
            return Err(Error::Dimension(format!("basis must be {n}x{n} with a metric of length {n}")));
        }
        let gram = linalg::gram_of_rows(&rows, &metric);
        if linalg::udu(&gram).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Lattice { basis: rows, metric, gram })
    }

    /// Lattice with the given Gram matrix; the working basis is the exact
    /// factor `U^T` of `G = U^T D U` with metric `D`.
    pub fn from_gram(gram: RatMatrix) -> Result<Lattice> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("gram matrix must be square".into()));
        }
        if (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::Parse("gram matrix is not symmetric".into()));
        }
        let (d, u) = linalg::udu(&gram).ok_or(Error::NotPositiveDefinite)?;
        let basis = (0..n).map(|i| (0..n).map(|k| u[k][i].clone()).collect()).collect();
        Ok(Lattice { basis, metric: d, gram })
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (n, m) = (self.dim(), other.dim());
        let pad = |row: &[Rat], before: usize, after: usize| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); before];
            v.extend_from_slice(row);
            v.resize(before + row.len() + after, Rat::zero());
            v
        };
        let basis = self
            .basis
            .iter()
            .map(|r| pad(r, 0, m))
            .chain(other.basis.iter().map(|r| pad(r, n, 0)))
            .collect();
        let gram = self
            .gram
            .iter()
            .map(|r| pad(r, 0, m))
            .chain(other.gram.iter().map(|r| pad(r, n, 0)))
            .collect();
        let metric = self.metric.iter().chain(&other.metric).cloned().collect();
        Lattice { basis, metric, gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn metric(&self) -> &[Rat] {
        &self.metric
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(Rat::is_integer)
    }

    /// Integral with some odd norm.
    pub fn is_odd(&self) -> bool {
        self.is_integral() && (0..self.dim()).any(|i| is_odd_integer(&self.gram[i][i]))
    }

    pub fn det(&self) -> Rat {
        linalg::det(&self.gram)
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_integral() && self.det().is_one()
    }

    /// The dual lattice, with Gram matrix `G^{-1}` and basis `G^{-1} B`.
    pub fn dual(&self) -> Lattice {
        let inv = linalg::inverse(&self.gram).expect("positive definite gram is invertible");
        let n = self.dim();
        let basis = (0..n).map(|i| linalg::vec_mul(&inv[i], &self.basis)).collect();
        Lattice { basis, metric: self.metric.clone(), gram: inv }
    }

    /// Plain text: first line `n`, then `n` rows of `n` rationals. The rows are
    /// a basis, or the Gram matrix when `gram` is set. `#` starts a comment.
    pub fn parse_text(text: &str, gram: bool) -> Result<Lattice> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty lattice file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the dimension".into()))?;
        let rows = lines
            .by_ref()
            .take(n)
            .map(|l| l.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(parse_rat).collect())
            .collect::<Result<RatMatrix>>()?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("expected {n} rows of {n} entries")));
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after matrix".into()));
        }
        if gram {
            Lattice::from_gram(rows)
        } else {
            Lattice::from_basis(rows)
        }
    }

    /// `{x in L : <x, x> even}` for an odd integral lattice.
    pub fn even_sublattice(&self) -> Result<Lattice> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let n = self.dim();
        let p = (0..n).find(|&i| is_odd_integer(&self.gram[i][i])).ok_or(Error::LatticeIsEven)?;
        let two = rat(2);
        let rows = (0..n)
            .map(|i| {
                if i == p {
                    self.basis[p].iter().map(|x| x * &two).collect()
                } else if is_odd_integer(&self.gram[i][i]) {
                    self.basis[i].iter().zip(&self.basis[p]).map(|(x, y)| x + y).collect()
                } else {
                    self.basis[i].clone()
                }
            })
            .collect();
        Lattice::with_metric(rows, self.metric.clone())
    }

    /// One characteristic vector, as 0/1 coordinates in the basis.
    pub fn characteristic_vector(&self) -> Result<Vec<Rat>> {
        self.require_self_dual()?;
        let n = self.dim();
        if n >= gf2::MAX_COLS {
            return Err(Error::Dimension(format!("characteristic vectors need rank below {}", gf2::MAX_COLS)));
        }
        let rows: Vec<u64> = (0..n)
            .map(|i| (0..n).filter(|&j| is_odd_integer(&self.gram[i][j])).fold(0, |acc, j| acc | 1 << j))
            .collect();
        let rhs: Vec<bool> = (0..n).map(|i| is_odd_integer(&self.gram[i][i])).collect();
        let a = gf2::solve(&rows, &rhs, n).ok_or(Error::NotSelfDual)?;
        Ok((0..n).map(|j| if a >> j & 1 == 1 { Rat::one() } else { Rat::zero() }).collect())
    }

    /// The shadow `{w/2 : w characteristic}` as a coset of `L`; for an even
    /// lattice this is `L` itself.
    pub fn shadow_coset(&self) -> Result<Coset> {
        let k = self.characteristic_vector()?;
        let half = Rat::new(1.into(), 2.into());
        Coset::new(self.clone(), k.iter().map(|x| x * &half).collect())
    }

    fn require_self_dual(&self) -> Result<()> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        if !self.det().is_one() {
            return Err(Error::NotSelfDual);
        }
        Ok(())
    }
}

fn is_odd_integer(r: &Rat) -> bool {
    r.is_integer() && r.numer().bit(0)
}

/// `L + shift`, with `shift` in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    lattice: Lattice,
    shift: Vec<Rat>,
}

impl Coset {
    pub fn new(lattice: Lattice, shift: Vec<Rat>) -> Result<Coset> {
        if shift.len() != lattice.dim() {
            return Err(Error::Dimension(format!(
                "shift has length {}, lattice has rank {}",
                shift.len(),
                lattice.dim()
            )));
        }
        Ok(Coset { lattice, shift })
    }

    pub fn zero(lattice: Lattice) -> Coset {
        let n = lattice.dim();
        Coset { lattice, shift: vec![Rat::zero(); n] }
    }

    /// Coset of the ambient vector `v`, i.e. `v = sum_i s_i b_i`.
    pub fn from_ambient(lattice: Lattice, v: &[Rat]) -> Result<Coset> {
        let n = lattice.dim();
        if v.len() != n {
            return Err(Error::Dimension(format!("vector has length {}, lattice has rank {n}", v.len())));
        }
        let bt: RatMatrix = (0..n).map(|i| (0..n).map(|j| lattice.basis[j][i].clone()).collect()).collect();
        let s = linalg::solve(&bt, v).expect("basis is nonsingular");
        Coset::new(lattice, s)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn shift(&self) -> &[Rat] {
        &self.shift
    }

    /// Same lattice and shifts differing by a lattice vector.
    pub fn same_as(&self, other: &Coset) -> bool {
        self.lattice == other.lattice && self.shift.iter().zip(&other.shift).all(|(a, b)| (a - b).is_integer())
    }
}

/// Exact counts of coset vectors by norm, up to `max_norm` inclusive.
pub fn enumerate_by_norm(co: &Coset, max_norm: &Rat) -> Result<BTreeMap<Rat, u64>> {
    enumerate_with(co, max_norm, Strategy::default())
}

pub fn enumerate_with(co: &Coset, max_norm: &Rat, strategy: Strategy) -> Result<BTreeMap<Rat, u64>> {
    count_by_norm(&co.lattice.gram, &co.shift, max_norm, strategy)
}

/// `sum_{x in L + shift} q^{<x,x>/2}`, known below grid exponent `prec`.
pub fn theta(co: &Coset, prec: i64) -> Result<QSeries> {
    let prec = prec.max(1);
    let max_norm = Rat::new((prec - 1).into(), 24.into());
    let counts = enumerate_by_norm(co, &max_norm)?;
    let terms = counts
        .into_iter()
        .map(|(norm, c)| {
            let e = &norm * rat(24);
            if !e.is_integer() {
                return Err(Error::OffGrid(fmt_rat(&norm)));
            }
            let e = e.to_integer().to_i64().ok_or_else(|| Error::OffGrid(fmt_rat(&norm)))?;
            Ok((e, Rat::from_integer(c.into())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QSeries::from_terms(terms, prec))
}

/// `theta(L + shift) / eta^n`, the character of the lattice-VOA module.
pub fn lattice_character(co: &Coset, prec: i64) -> Result<QSeries> {
    let n = co.lattice.dim() as i64;
    let th = theta(co, prec + 2 * n)?;
    let inv = modforms::eta_inv_pow(n as u32, prec);
    Ok(th.mul(&inv).truncate(prec))
}

/// Characteristic vectors counted by norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicCounts {
    pub counts: BTreeMap<Rat, u64>,
    pub min_norm: Rat,
    pub min_count: u64,
}

/// Characteristic vectors of norm at most `max_norm`; the radius grows in
/// steps of 8 until at least one is found.
pub fn characteristic_vectors(l: &Lattice, max_norm: &Rat) -> Result<CharacteristicCounts> {
    let co = l.shadow_coset()?;
    let quarter = Rat::new(1.into(), 4.into());
    let mut radius = max_norm.clone().max(Rat::zero());
    loop {
        let counts: BTreeMap<Rat, u64> = enumerate_by_norm(&co, &(&radius * &quarter))?
            .into_iter()
            .map(|(norm, c)| (norm * rat(4), c))
            .collect();
        if let Some((m, c)) = counts.iter().next() {
            let (min_norm, min_count) = (m.clone(), *c);
            return Ok(CharacteristicCounts { counts, min_norm, min_count });
        }
        radius += rat(8);
    }
}

/// Theta series of the shadow `{w/2 : w characteristic}`.
pub fn shadow_theta(l: &Lattice, prec: i64) -> Result<QSeries> {
    theta(&l.shadow_coset()?, prec)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part2 {
    pub applicable: bool,
    pub bound_met: bool,
    pub count_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub n: usize,
    pub norm1: u64,
    pub norm2: u64,
    pub char_min: Rat,
    pub char_count: u64,
    /// Characteristic vectors of norm exactly `n - 8`.
    pub char_count_n_minus_8: u64,
    pub dim_v1: Rat,
    pub dim_v1_ok: bool,
    pub part1: bool,
    pub part2: Part2,
}

impl CorollaryReport {
    pub fn passes(&self) -> bool {
        let p2 = &self.part2;
        self.part1 && self.dim_v1_ok && (!p2.applicable || (p2.bound_met && p2.count_ok))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "norm1": self.norm1,
            "norm2": self.norm2,
            "char_min": rat_to_json(&self.char_min),
            "char_count": self.char_count,
            "part1": self.part1,
            "part2": {
                "applicable": self.part2.applicable,
                "bound_met": self.part2.bound_met,
                "count_ok": self.part2.count_ok,
            },
        })
    }
}

/// Checks the lattice analogues of the fermion and long-shadow theorems:
/// the shortest characteristic norm is `n` exactly for `Z^n` (detected by its
/// `2n` vectors of norm 1), and without norm-1 vectors there are at least
/// `2n(23-n)` norm-2 vectors, with equality exactly when no characteristic
/// vector is shorter than `n-8`, in which case there are `2^{n-11} n` of norm `n-8`.
pub fn corollary_check(l: &Lattice) -> Result<CorollaryReport> {
    l.require_self_dual()?;
    let n = l.dim();
    let ni = n as i64;
    let short = enumerate_by_norm(&Coset::zero(l.clone()), &rat(2))?;
    let norm1 = short.get(&rat(1)).copied().unwrap_or(0);
    let norm2 = short.get(&rat(2)).copied().unwrap_or(0);
    let target = rat(ni - 8);
    let chars = characteristic_vectors(l, &target)?;
    let at_target = chars.counts.get(&target).copied().unwrap_or(0);

    let part1 = (chars.min_norm == rat(ni)) == (norm1 == 2 * n as u64);
    let applicable = norm1 == 0;
    let bound = rat(2 * ni * (23 - ni));
    let r2 = rat(norm2 as i64);
    let (bound_met, count_ok) = if applicable {
        let equality = r2 == bound;
        let no_short = chars.min_norm >= target;
        let count = !equality || Rat::from_integer(at_target.into()) == pow2(ni - 11) * rat(ni);
        (r2 >= bound, equality == no_short && count)
    } else {
        (false, false)
    };

    // dim (V_L)_1 read off the character against n + r2
    let vac = -2 * ni;
    let ch = lattice_character(&Coset::zero(l.clone()), vac + 49)?;
    let dim_v1 = ch.coeff(vac + 48).unwrap_or_default();
    let dim_v1_ok = dim_v1 == rat(ni) + &r2;

    Ok(CorollaryReport {
        n,
        norm1,
        norm2,
        char_min: chars.min_norm,
        char_count: chars.min_count,
        char_count_n_minus_8: at_target,
        dim_v1,
        dim_v1_ok,
        part1,
        part2: Part2 { applicable, bound_met, count_ok },
    })
}

/// Norm counts as a JSON object keyed by the printed norm.
pub fn counts_to_json(counts: &BTreeMap<Rat, u64>) -> Value {
    Value::Object(counts.iter().map(|(k, v)| (fmt_rat(k), json!(v))).collect())
}
