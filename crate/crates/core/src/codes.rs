//! Binary linear codes of length below 64, their weight enumerators and
//! shadows, and Construction A.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf2;
use crate::lattice::Lattice;
use crate::rational::{frac, rat, Rat};

/// Generators are kept in reduced row-echelon form, bit `j` = coordinate `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryCode {
    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<BinaryCode> {
        if n >= gf2::MAX_COLS {
            return Err(Error::Dimension(format!("code length must be below {}", gf2::MAX_COLS)));
        }
        if rows.iter().any(|r| r >> n != 0) {
            return Err(Error::Dimension(format!("generator has bits beyond length {n}")));
        }
        let k = rows.len();
        let mut rows = rows;
        gf2::rref(&mut rows, n);
        if rows.len() != k {
            return Err(Error::Parse("generator rows are linearly dependent".into()));
        }
        Ok(BinaryCode { n, rows })
    }

    /// First line `n k`, then `k` rows of `n` bits (spaces ignored).
    pub fn parse(text: &str) -> Result<BinaryCode> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code file".into()))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header entry {t:?}"))))
            .collect::<Result<_>>()?;
        let [n, k] = header[..] else {
            return Err(Error::Parse("header must be \"n k\"".into()));
        };
        let rows = lines
            .by_ref()
            .take(k)
            .map(|l| {
                let bits: Vec<char> = l.chars().filter(|c| !c.is_whitespace()).collect();
                if bits.len() != n {
                    return Err(Error::Parse(format!("row {l:?} does not have {n} bits")));
                }
                bits.iter().enumerate().try_fold(0u64, |acc, (j, c)| match c {
                    '0' => Ok(acc),
                    '1' => Ok(acc | 1 << j),
                    _ => Err(Error::Parse(format!("bad bit {c:?}"))),
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        if rows.len() != k || lines.next().is_some() {
            return Err(Error::Parse(format!("expected exactly {k} rows")));
        }
        BinaryCode::from_rows(n, rows)
    }

    /// `{00, 11}`.
    pub fn rep2() -> BinaryCode {
        BinaryCode::from_rows(2, vec![0b11]).expect("valid code")
    }

    /// The extended Hamming code of length 8.
    pub fn e8code() -> BinaryCode {
        let rows = ["11110000", "00111100", "00001111", "01010101"]
            .iter()
            .map(|s| s.bytes().enumerate().filter(|(_, b)| *b == b'1').fold(0u64, |acc, (j, _)| acc | 1 << j))
            .collect();
        BinaryCode::from_rows(8, rows).expect("valid code")
    }

    pub fn by_name(name: &str) -> Result<BinaryCode> {
        match name.trim().to_ascii_lowercase().as_str() {
            "rep2" => Ok(BinaryCode::rep2()),
            "e8code" | "e8" | "hamming8" => Ok(BinaryCode::e8code()),
            _ => Err(Error::UnknownBuiltin(name.to_string())),
        }
    }

    pub fn direct_sum(&self, other: &BinaryCode) -> Result<BinaryCode> {
        let rows = self.rows.iter().copied().chain(other.rows.iter().map(|r| r << self.n)).collect();
        BinaryCode::from_rows(self.n + other.n, rows)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// All `2^k` codewords, in Gray-code order.
    pub fn codewords(&self) -> impl Iterator<Item = u64> + '_ {
        let k = self.dim();
        let mut word = 0u64;
        (0u64..1 << k).map(move |i| {
            if i > 0 {
                word ^= self.rows[i.trailing_zeros() as usize];
            }
            word
        })
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dim() == self.n
            && self.rows.iter().all(|a| self.rows.iter().all(|b| gf2::weight(a & b).is_multiple_of(2)))
    }
}

fn tally(words: impl Iterator<Item = u64>) -> BTreeMap<u32, u64> {
    let mut m = BTreeMap::new();
    for w in words {
        *m.entry(gf2::weight(w)).or_insert(0) += 1;
    }
    m
}

pub fn weight_enumerator(c: &BinaryCode) -> BTreeMap<u32, u64> {
    tally(c.codewords())
}

/// Weights of the shadow `{v : v.c = wt(c)/2 mod 2 for all c in C}`.
pub fn code_shadow_weights(c: &BinaryCode) -> Result<BTreeMap<u32, u64>> {
    if !c.is_self_dual() {
        return Err(Error::CodeNotSelfDual);
    }
    // the condition is affine on C, so checking the generators suffices
    let rhs: Vec<bool> = c.rows.iter().map(|&g| gf2::weight(g) / 2 % 2 == 1).collect();
    let v = gf2::solve(&c.rows, &rhs, c.n).ok_or(Error::CodeNotSelfDual)?;
    Ok(tally(c.codewords().map(|w| w ^ v)))
}

/// `{x / sqrt 2 : x in Z^n, x mod 2 in C}`, with the `sqrt 2` carried by a
/// metric of `1/2` on every coordinate.
pub fn construction_a(c: &BinaryCode) -> Lattice {
    let n = c.n;
    let covered = c.rows.iter().fold(0u64, |acc, r| acc | 1 << r.trailing_zeros());
    let bit_row = |r: u64| -> Vec<Rat> { (0..n).map(|j| rat((r >> j & 1) as i64)).collect() };
    let rows = c
        .rows
        .iter()
        .map(|&r| bit_row(r))
        .chain((0..n).filter(|j| covered >> j & 1 == 0).map(|j| {
            let mut v = vec![rat(0); n];
            v[j] = rat(2);
            v
        }))
        .collect();
    Lattice::with_metric(rows, vec![frac(1, 2); n]).expect("construction A basis is nondegenerate")
}

pub fn weights_to_json(w: &BTreeMap<u32, u64>) -> Value {
    let inner: serde_json::Map<String, Value> = w.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({ "weights": inner })
}
