//! The named q-series every character is built from: the Dedekind eta
//! function, the theta series of `Z` and `E8`, the single-fermion character
//! `chi_half`, the `E8` lattice character `chi8`, and the fermion shadow.
//!
//! Every constructor takes an absolute exclusive cutoff in grid units
//! (see [`crate::qseries::GRID`]) and returns a series known at least that far.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::qseries::{QSeries, GRID};
use crate::rational::{rat, Rat};

/// Coefficients of `prod_{n>=1} (1 + sign*q^n)` below `q^len`.
fn product_one_plus(sign: i64, len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    if len == 0 {
        return c;
    }
    c[0] = BigInt::one();
    for n in 1..len {
        for k in (n..len).rev() {
            let t = &c[k - n] * sign;
            c[k] += t;
        }
    }
    c
}

/// Embeds integer-q coefficients, placed at `lead + 48*k`, truncated at `prec`.
fn embed(lead: i64, coeffs: Vec<BigInt>, prec: i64) -> QSeries {
    QSeries::from_terms(
        coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (lead + GRID * k as i64, Rat::from_integer(c))),
        prec,
    )
}

/// Number of integer q-powers needed so that `lead + 48*len >= prec`.
fn span(lead: i64, prec: i64) -> usize {
    ((prec - lead).max(0) + GRID - 1).div_euclid(GRID) as usize
}

/// `eta = q^{1/24} prod (1 - q^n)`.
pub fn eta(prec: i64) -> QSeries {
    embed(2, product_one_plus(-1, span(2, prec)), prec.max(3))
}

/// `Theta_Z = sum_{n in Z} q^{n^2/2}`.
pub fn theta_z(prec: i64) -> QSeries {
    let prec = prec.max(1);
    let mut terms = vec![(0, rat(1))];
    let mut n = 1i64;
    while 24 * n * n < prec {
        terms.push((24 * n * n, rat(2)));
        n += 1;
    }
    QSeries::from_terms(terms, prec)
}

/// `sigma_3(n)` by trial division.
pub fn sigma3(n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(3);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(3);
            }
        }
        d += 1;
    }
    s
}

/// `Theta_E8 = 1 + 240 sum sigma_3(n) q^n`.
pub fn theta_e8(prec: i64) -> QSeries {
    let len = span(0, prec).max(1);
    let coeffs = (0..len)
        .map(|n| if n == 0 { BigInt::one() } else { sigma3(n as u64) * 240 })
        .collect();
    embed(0, coeffs, prec.max(1))
}

/// `chi_half = sqrt(Theta_Z / eta)`, the character of the single fermion.
pub fn chi_half(prec: i64) -> QSeries {
    // theta/eta starts at q^{-1/24}; the root keeps relative precision
    // and halves the leading exponent.
    let quotient = theta_z(prec + 1).mul(&eta(prec + 3).inv().expect("eta is invertible"));
    quotient.sqrt().expect("theta/eta has a grid square root").truncate(prec.max(0))
}

/// `chi_8 = Theta_E8 / eta^8`, the character of the `E8` lattice VOA.
pub fn chi8(prec: i64) -> QSeries {
    let rel = prec + 16;
    let eta8_inv = eta(rel + 16).pow(-8).expect("eta is invertible");
    theta_e8(rel).mul(&eta8_inv).truncate(prec.max(-15))
}

/// `q^{1/24} prod (1 + q^n)`, the character of the fermion shadow.
pub fn chi_fermi_shadow(prec: i64) -> QSeries {
    embed(2, product_one_plus(1, span(2, prec)), prec.max(3))
}

/// `eta^{-n}`, known through `prec`.
pub fn eta_inv_pow(n: u32, prec: i64) -> QSeries {
    if n == 0 {
        return QSeries::one(prec.max(1));
    }
    let lead = -2 * n as i64;
    let rel = prec - lead;
    eta(rel + 2).pow(-(n as i64)).expect("eta is invertible").truncate(prec.max(lead + 1))
}
