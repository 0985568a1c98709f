//! Exact rationals, half-integral ranks, and their text/JSON encodings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any integer `e`, negative exponents giving dyadic fractions.
pub fn pow2(e: i64) -> Rat {
    let p = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Prints `num/den`, omitting the denominator when it is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `7`, `-3/2`, `23.5`, `23½` or `1e0`-free decimals exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some(stripped) = s.strip_suffix('½') {
        let whole = if stripped.is_empty() { Rat::zero() } else { parse_rat(stripped)? };
        let half = frac(1, 2);
        return Ok(if whole.is_negative() { whole - half } else { whole + half });
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((w, f)) = s.split_once('.') {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = w.starts_with('-');
        let w = if w.is_empty() || w == "-" { BigInt::zero() } else { BigInt::from_str(w).map_err(|_| bad())? };
        let scale = num_traits::pow(BigInt::from(10), f.len());
        let frac_part = Rat::new(BigInt::from_str(f).map_err(|_| bad())?, scale);
        let whole = Rat::from_integer(w);
        return Ok(if neg { whole - frac_part } else { whole + frac_part });
    }
    BigInt::from_str(s).map(Rat::from_integer).map_err(|_| bad())
}

pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rat).collect()
}

fn big_to_json(n: &BigInt) -> Value {
    // arbitrary_precision keeps integers of any size lossless
    Value::Number(serde_json::Number::from_str(&n.to_string()).expect("integer literal"))
}

/// `[num, den]` in lowest terms with positive denominator.
pub fn rat_to_json(r: &Rat) -> Value {
    Value::Array(vec![big_to_json(r.numer()), big_to_json(r.denom())])
}

fn big_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| Error::Parse(format!("not an integer: {n}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v.as_array().map(Vec::as_slice) {
        Some([n, d]) => {
            let d = big_from_json(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rat::new(big_from_json(n)?, d))
        }
        _ => Err(Error::Parse(format!("expected [num, den], got {v}"))),
    }
}

pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// A nonnegative half-integer such as the rank of a self-dual SVOA or the
/// dimension of a lattice. Stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(u32);

impl Rank {
    pub fn from_halves(twice: u32) -> Self {
        Rank(twice)
    }

    pub fn integer(c: u32) -> Self {
        Rank(2 * c)
    }

    pub fn from_rat(r: &Rat) -> Result<Self> {
        let twice = r * rat(2);
        match rat_to_i64(&twice) {
            Some(t) if t >= 0 => Ok(Rank(t as u32)),
            _ => Err(Error::Parse(format!("rank must be a nonnegative half-integer, got {}", fmt_rat(r)))),
        }
    }

    /// `2c`, the exponent of the pure fermion term.
    pub fn twice(self) -> i64 {
        self.0 as i64
    }

    pub fn floor(self) -> i64 {
        (self.0 / 2) as i64
    }

    pub fn is_integral(self) -> bool {
        self.0.is_even()
    }

    pub fn to_rat(self) -> Rat {
        frac(self.0 as i64, 2)
    }

    /// Number of y-powers in a character polynomial minus one, `⌊c/8⌋`.
    pub fn top_index(self) -> usize {
        (self.0 / 16) as usize
    }

    pub fn checked_sub_halves(self, halves: u32) -> Option<Rank> {
        self.0.checked_sub(halves).map(Rank)
    }
}

impl std::ops::Add for Rank {
    type Output = Rank;
    fn add(self, rhs: Rank) -> Rank {
        Rank(self.0 + rhs.0)
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Rank {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rank> {
        Rank::from_rat(&parse_rat(s)?)
    }
}
