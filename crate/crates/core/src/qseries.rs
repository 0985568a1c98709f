//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! Exponents live on the grid `(1/48)·Z`. A series is known on the half-open
//! exponent window `[min_exp, prec)` (both in grid units); coefficients at or
//! beyond `prec` are unknown rather than zero, and every operation reports the
//! largest precision its inputs actually determine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, frac, rat_from_json, rat_to_json, Rat};

/// Grid slots per unit power of `q`.
pub const GRID: i64 = 48;

/// Default absolute cutoff: integer q-order 26.
pub const DEFAULT_PREC: i64 = GRID * 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    min_exp: i64,
    coeffs: Vec<Rat>,
    prec: i64,
}

/// Result of comparing two series on their common window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agreement {
    /// Exclusive cutoff of the compared window.
    pub overlap_prec: i64,
    /// First grid exponent where the two series differ, if any.
    pub first_mismatch: Option<i64>,
}

impl Agreement {
    pub fn equal(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl QSeries {
    /// Builds a series from the coefficient list starting at `min_exp`.
    /// Missing trailing slots up to `prec` are zero; slots at or above `prec` are dropped.
    pub fn from_coeffs(min_exp: i64, mut coeffs: Vec<Rat>, prec: i64) -> QSeries {
        assert!(prec > min_exp, "precision {prec} must exceed leading exponent {min_exp}");
        coeffs.resize((prec - min_exp) as usize, Rat::zero());
        let mut s = QSeries { min_exp, coeffs, prec };
        s.normalize();
        s
    }

    /// Builds a series from sparse `(grid exponent, coefficient)` terms.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I, prec: i64) -> QSeries {
        let terms: Vec<(i64, Rat)> = terms.into_iter().filter(|(e, _)| *e < prec).collect();
        let min_exp = terms.iter().map(|(e, _)| *e).min().unwrap_or(prec - 1).min(prec - 1);
        let mut coeffs = vec![Rat::zero(); (prec - min_exp) as usize];
        for (e, c) in terms {
            coeffs[(e - min_exp) as usize] += c;
        }
        QSeries::from_coeffs(min_exp, coeffs, prec)
    }

    pub fn zero(prec: i64) -> QSeries {
        QSeries { min_exp: prec - 1, coeffs: vec![Rat::zero()], prec }
    }

    pub fn one(prec: i64) -> QSeries {
        QSeries::monomial(0, Rat::one(), prec)
    }

    pub fn monomial(exp: i64, coeff: Rat, prec: i64) -> QSeries {
        if exp >= prec {
            return QSeries::zero(prec);
        }
        QSeries::from_terms([(exp, coeff)], prec)
    }

    fn normalize(&mut self) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.min_exp += k as i64;
            }
            None => {
                self.min_exp = self.prec - 1;
                self.coeffs = vec![Rat::zero()];
            }
        }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the first nonzero coefficient, or `prec` when none is known.
    pub fn valuation(&self) -> i64 {
        if self.is_zero() {
            self.prec
        } else {
            self.min_exp
        }
    }

    pub fn leading(&self) -> Option<(i64, &Rat)> {
        if self.is_zero() {
            None
        } else {
            Some((self.min_exp, &self.coeffs[0]))
        }
    }

    /// Coefficient of `q^{exp/48}`; `None` when `exp` is at or beyond the precision.
    pub fn coeff(&self, exp: i64) -> Option<Rat> {
        if exp >= self.prec {
            None
        } else if exp < self.min_exp {
            Some(Rat::zero())
        } else {
            Some(self.coeffs[(exp - self.min_exp) as usize].clone())
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.min_exp + k as i64, c))
    }

    /// Lowers the precision to `prec` (no-op if already lower).
    pub fn truncate(&self, prec: i64) -> QSeries {
        if prec >= self.prec {
            return self.clone();
        }
        if prec <= self.min_exp {
            return QSeries::zero(prec);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate((prec - self.min_exp) as usize);
        QSeries::from_coeffs(self.min_exp, coeffs, prec)
    }

    /// Multiplies by `q^{k/48}`.
    pub fn shift(&self, k: i64) -> QSeries {
        QSeries { min_exp: self.min_exp + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    pub fn scale(&self, s: &Rat) -> QSeries {
        QSeries::from_coeffs(self.min_exp, self.coeffs.iter().map(|c| c * s).collect(), self.prec)
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let prec = self.prec.min(other.prec);
        let min_exp = self.min_exp.min(other.min_exp).min(prec - 1);
        let mut coeffs = vec![Rat::zero(); (prec - min_exp) as usize];
        for s in [self, other] {
            for (e, c) in s.terms().take_while(|(e, _)| *e < prec) {
                coeffs[(e - min_exp) as usize] += c;
            }
        }
        QSeries::from_coeffs(min_exp, coeffs, prec)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| -c).collect(), prec: self.prec }
    }

    /// Cauchy product. The result is known below
    /// `min(prec_a + val_b, prec_b + val_a)`, the first exponent an unknown
    /// coefficient of either factor could reach.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let (va, vb) = (self.valuation(), other.valuation());
        let prec = (self.prec + vb).min(other.prec + va);
        let min_exp = va + vb;
        if self.is_zero() || other.is_zero() || prec <= min_exp {
            return QSeries::zero(prec);
        }
        let len = (prec - min_exp) as usize;
        let a: Vec<(usize, &Rat)> = self.sparse_from(va, len);
        let b: Vec<(usize, &Rat)> = other.sparse_from(vb, len);
        let mut out = vec![Rat::zero(); len];
        for &(i, x) in &a {
            for &(j, y) in &b {
                if i + j >= len {
                    break;
                }
                out[i + j] += x * y;
            }
        }
        QSeries::from_coeffs(min_exp, out, prec)
    }

    /// Nonzero terms with offsets relative to `base`, restricted to offsets below `len`.
    fn sparse_from(&self, base: i64, len: usize) -> Vec<(usize, &Rat)> {
        self.terms()
            .map(|(e, c)| ((e - base) as usize, c))
            .take_while(|(k, _)| *k < len)
            .collect()
    }

    /// Multiplicative inverse; relative precision is preserved.
    pub fn inv(&self) -> Result<QSeries> {
        if self.is_zero() {
            return Err(Error::NonInvertible);
        }
        let v = self.min_exp;
        let len = self.coeffs.len();
        let a0_inv = self.coeffs[0].recip();
        let a: Vec<(usize, &Rat)> = self.sparse_from(v, len).into_iter().skip(1).collect();
        let mut b: Vec<Rat> = Vec::with_capacity(len);
        b.push(a0_inv.clone());
        for k in 1..len {
            let mut acc = Rat::zero();
            for &(i, ai) in &a {
                if i > k {
                    break;
                }
                let bk = &b[k - i];
                if !bk.is_zero() {
                    acc += ai * bk;
                }
            }
            b.push(-acc * &a0_inv);
        }
        Ok(QSeries::from_coeffs(-v, b, -v + len as i64))
    }

    /// Square root with leading coefficient 1. Requires leading coefficient 1
    /// and an even leading grid exponent.
    pub fn sqrt(&self) -> Result<QSeries> {
        let (v, lead) = self
            .leading()
            .ok_or_else(|| Error::NoGridSqrt("series is zero to precision".into()))?;
        if !lead.is_one() {
            return Err(Error::NoGridSqrt(format!("leading coefficient {} is not 1", fmt_rat(lead))));
        }
        if v % 2 != 0 {
            return Err(Error::NoGridSqrt(format!("leading grid exponent {v} is odd")));
        }
        let len = self.coeffs.len();
        let half = frac(1, 2);
        let mut s: Vec<Rat> = Vec::with_capacity(len);
        let mut nonzero: Vec<usize> = Vec::new();
        s.push(Rat::one());
        for k in 1..len {
            // s_k = (a_k - sum_{0<i<k} s_i s_{k-i}) / 2
            let mut acc = self.coeffs[k].clone();
            for &i in &nonzero {
                if i >= k {
                    break;
                }
                let sj = &s[k - i];
                if !sj.is_zero() {
                    acc -= &s[i] * sj;
                }
            }
            let sk = acc * &half;
            if !sk.is_zero() {
                nonzero.push(k);
            }
            s.push(sk);
        }
        Ok(QSeries::from_coeffs(v / 2, s, v / 2 + len as i64))
    }

    /// Integer power by square-and-multiply; negative powers go through `inv`.
    /// `a^0` is 1 with the relative precision of `a`.
    pub fn pow(&self, k: i64) -> Result<QSeries> {
        if k == 0 {
            let rel = self.prec - self.valuation();
            return Ok(QSeries::one(rel.max(1)));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result: Option<QSeries> = None;
        let mut power = base;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => power.clone(),
                    Some(r) => r.mul(&power),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            power = power.mul(&power);
        }
        Ok(result.expect("k != 0"))
    }

    /// Compares on the common window `[.., min(prec_a, prec_b))`.
    pub fn agreement(&self, other: &QSeries) -> Agreement {
        let overlap_prec = self.prec.min(other.prec);
        let lo = self.min_exp.min(other.min_exp);
        let first_mismatch = (lo..overlap_prec).find(|&e| self.coeff(e) != other.coeff(e));
        Agreement { overlap_prec, first_mismatch }
    }

    pub fn agrees(&self, other: &QSeries) -> bool {
        self.agreement(other).equal()
    }

    /// True when every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "den": GRID,
            "min_exp": self.min_exp,
            "prec": self.prec,
            "coeffs": self.coeffs.iter().map(rat_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<QSeries> {
        let bad = |what: &str| Error::Parse(format!("series JSON: {what}"));
        if v.get("den").and_then(Value::as_i64) != Some(GRID) {
            return Err(bad("den must be 48"));
        }
        let min_exp = v.get("min_exp").and_then(Value::as_i64).ok_or_else(|| bad("missing min_exp"))?;
        let prec = v.get("prec").and_then(Value::as_i64).ok_or_else(|| bad("missing prec"))?;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coeffs"))?
            .iter()
            .map(rat_from_json)
            .collect::<Result<Vec<_>>>()?;
        if prec <= min_exp || coeffs.len() as i64 != prec - min_exp {
            return Err(bad("coefficient count must equal prec - min_exp"));
        }
        Ok(QSeries::from_coeffs(min_exp, coeffs, prec))
    }
}

/// Formats a grid exponent as a reduced fraction of a power of q.
pub fn fmt_exp(e: i64) -> String {
    fmt_rat(&frac(e, GRID))
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}*q^({})", fmt_rat(&mag), fmt_exp(e))?;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^({}))", fmt_exp(self.prec))
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const P: i64 = 48 * 8;

    /// Series in integer powers of q: `sum c_k q^k`.
    fn poly(cs: &[i64], prec: i64) -> QSeries {
        QSeries::from_terms(cs.iter().enumerate().map(|(k, &c)| (48 * k as i64, rat(c))), prec)
    }

    #[test]
    fn cancellation_and_identity() {
        let s = &poly(&[1, 1], P) + &poly(&[1, -1], P);
        assert!(s.agrees(&QSeries::monomial(0, rat(2), P)));
        let f = poly(&[3, 0, -2, 5], P);
        assert_eq!(&f + &QSeries::zero(P), f);
        let h = QSeries::monomial(24, rat(1), P);
        assert_eq!(&h + &h, QSeries::monomial(24, rat(2), P));
    }

    #[test]
    fn add_takes_min_precision() {
        let a = poly(&[1, 2, 3], 100);
        let b = poly(&[1], 60);
        assert_eq!((&a + &b).prec(), 60);
    }

    #[test]
    fn zero_has_canonical_form() {
        let z = &poly(&[1, 1], P) - &poly(&[1, 1], P);
        assert!(z.is_zero());
        assert_eq!(z, QSeries::zero(P));
        assert_eq!(z.valuation(), P);
    }

    #[test]
    fn products() {
        let p = &poly(&[1, 1], P) * &poly(&[1, -1], P);
        assert!(p.agrees(&poly(&[1, 0, -1], P)));
        let m = &QSeries::monomial(-1, rat(1), P) * &QSeries::monomial(1, rat(1), P);
        assert_eq!(m.leading(), Some((0, &rat(1))));
    }

    #[test]
    fn mul_precision_tracks_unknown_tail() {
        // q^1 known below q^2 times 1 known below q^5: product known below q^3
        let a = QSeries::monomial(48, rat(1), 96);
        let b = QSeries::one(240);
        assert_eq!(a.mul(&b).prec(), 96);
        let c = QSeries::monomial(48, rat(1), 480);
        assert_eq!(c.mul(&QSeries::one(96)).prec(), 144);
    }

    #[test]
    fn geometric_inverse() {
        let inv = poly(&[1, -1], P).inv().unwrap();
        assert_eq!(inv.prec(), P);
        for k in 0..8 {
            assert_eq!(inv.coeff(48 * k).unwrap(), rat(1));
        }
        let q = QSeries::monomial(2, rat(1), P);
        let qi = q.inv().unwrap();
        assert_eq!(qi.leading(), Some((-2, &rat(1))));
        assert_eq!(qi.prec(), P - 4);
        assert_eq!(QSeries::zero(P).inv(), Err(Error::NonInvertible));
    }

    #[test]
    fn sqrt_of_square_and_errors() {
        let s = poly(&[1, 1], P);
        assert!((&s * &s).sqrt().unwrap().agrees(&s));
        assert!(QSeries::one(P).sqrt().unwrap().agrees(&QSeries::one(P)));
        assert!(matches!(poly(&[2], P).sqrt(), Err(Error::NoGridSqrt(_))));
        assert!(matches!(QSeries::monomial(1, rat(1), P).sqrt(), Err(Error::NoGridSqrt(_))));
    }

    #[test]
    fn sqrt_of_one_plus_two_q() {
        // oracle: solve s^2 = 1 + 2q coefficientwise by hand
        // s = 1 + q - q^2/2 + q^3/2 - 5q^4/8 + ...
        let r = poly(&[1, 2], P).sqrt().unwrap();
        let want = [rat(1), rat(1), frac(-1, 2), frac(1, 2), frac(-5, 8), frac(7, 8)];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(&r.coeff(48 * k as i64).unwrap(), w);
        }
    }

    #[test]
    fn powers() {
        let s = poly(&[1, 1], P);
        assert!(s.pow(2).unwrap().agrees(&poly(&[1, 2, 1], P)));
        assert!(s.pow(0).unwrap().agrees(&QSeries::one(P)));
        let back = s.pow(-3).unwrap().mul(&s.pow(3).unwrap());
        assert!(back.agrees(&QSeries::one(P)));
        assert!(QSeries::zero(P).pow(-1).is_err());
    }

    #[test]
    fn display_is_readable() {
        let s = QSeries::from_terms([(-16, rat(1)), (32, rat(248)), (40, frac(-1, 2))], 96);
        assert_eq!(s.to_string(), "1*q^(-1/3) + 248*q^(2/3) - 1/2*q^(5/6) + O(q^(2))");
    }

    #[test]
    fn json_layout() {
        let s = QSeries::from_terms([(-1, rat(1)), (0, frac(2, -4))], 1);
        assert_eq!(
            s.to_json().to_string(),
            r#"{"coeffs":[[1,1],[-1,2]],"den":48,"min_exp":-1,"prec":1}"#
        );
        assert_eq!(QSeries::from_json(&s.to_json()).unwrap(), s);
    }
}
