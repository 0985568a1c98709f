//! Character polynomials of self-dual SVOAs and their shadows.
//!
//! The character of a self-dual SVOA of rank `c` is a weighted-homogeneous
//! polynomial `P(x, y) = sum_i A_i x^{2c-16i} y^i` in the fermion character
//! `x = chi_half` and the `E8` character `y = chi8`. Its shadow is obtained by
//! substituting `sqrt(2) * chi_fermi_shadow` for `x` and scaling by
//! `1/sqrt(2)` when `c` is half-integral; the two irrational factors combine
//! into the exact multiplier `2^{floor(c) - 8i}` on the `i`-th term.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg;
use crate::modforms::{chi8, chi_fermi_shadow, chi_half};
use crate::qseries::{QSeries, GRID};
use crate::rational::{fmt_rat, frac, pow2, rat, rat_from_json, rat_to_json, Rank, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterPoly {
    rank: Rank,
    coeffs: Vec<Rat>,
    is_voa: bool,
}

impl CharacterPoly {
    /// Validated constructor: exactly `floor(c/8) + 1` coefficients summing to 1.
    /// `is_voa` marks a pure VOA, whose shadow is itself; it needs `c` in `8Z`.
    pub fn new(rank: Rank, coeffs: Vec<Rat>, is_voa: bool) -> Result<CharacterPoly> {
        if coeffs.len() != rank.top_index() + 1 {
            return Err(Error::InvalidPoly(format!(
                "rank {rank} needs {} coefficients, got {}",
                rank.top_index() + 1,
                coeffs.len()
            )));
        }
        if is_voa && rank.twice() % 16 != 0 {
            return Err(Error::InvalidPoly(format!("a self-dual VOA has rank in 8Z, got {rank}")));
        }
        check_normalized(&coeffs)?;
        Ok(CharacterPoly { rank, coeffs, is_voa })
    }

    /// A formal "character" that may carry terms past `floor(c/8)`, i.e. negative
    /// powers of `x`. Only used to evaluate the generic three-term formula at
    /// ranks where it is not a polynomial.
    pub fn laurent(rank: Rank, coeffs: Vec<Rat>) -> Result<CharacterPoly> {
        if coeffs.is_empty() {
            return Err(Error::InvalidPoly("empty coefficient list".into()));
        }
        check_normalized(&coeffs)?;
        Ok(CharacterPoly { rank, coeffs, is_voa: false })
    }

    /// `V_Fermi^{⊗r}`: rank `r/2`, `P = x^r`.
    pub fn fermions(r: u32) -> CharacterPoly {
        let rank = Rank::from_halves(r);
        let mut coeffs = vec![Rat::zero(); rank.top_index() + 1];
        coeffs[0] = Rat::one();
        CharacterPoly { rank, coeffs, is_voa: false }
    }

    /// The lattice VOA of `E8`, `P = y`.
    pub fn e8() -> CharacterPoly {
        CharacterPoly { rank: Rank::integer(8), coeffs: vec![Rat::zero(), Rat::one()], is_voa: true }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_voa(&self) -> bool {
        self.is_voa
    }

    pub fn is_laurent(&self) -> bool {
        self.coeffs.len() > self.rank.top_index() + 1
    }

    /// Index of the last nonzero coefficient.
    pub fn top_nonzero(&self) -> usize {
        self.coeffs.iter().rposition(|a| !a.is_zero()).unwrap_or(0)
    }

    /// True for `P = x^{2c}`.
    pub fn is_pure_fermion(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c": rat_to_json(&self.rank.to_rat()),
            "A": self.coeffs.iter().map(rat_to_json).collect::<Vec<_>>(),
            "is_voa": self.is_voa,
        })
    }

    pub fn from_json(v: &Value) -> Result<CharacterPoly> {
        let rank = Rank::from_rat(&rat_from_json(v.get("c").ok_or_else(|| Error::Parse("missing c".into()))?)?)?;
        let coeffs = v
            .get("A")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing A".into()))?
            .iter()
            .map(rat_from_json)
            .collect::<Result<Vec<_>>>()?;
        let is_voa = v.get("is_voa").and_then(Value::as_bool).unwrap_or(false);
        CharacterPoly::new(rank, coeffs, is_voa)
    }
}

fn check_normalized(coeffs: &[Rat]) -> Result<()> {
    let sum: Rat = coeffs.iter().sum();
    if sum.is_one() {
        Ok(())
    } else {
        Err(Error::NotNormalized(fmt_rat(&sum)))
    }
}

/// Grid exponent of the vacuum, `-c/24`.
pub fn vacuum_exp(rank: Rank) -> i64 {
    -rank.twice()
}

/// `sum_i A_i X^{m-i} Y^i` by Horner's rule, all series at precision `prec`.
fn homogeneous(coeffs: &[Rat], x: &QSeries, y: &QSeries, prec: i64) -> QSeries {
    let mut acc = QSeries::one(prec).scale(&coeffs[0]);
    let mut ypow = QSeries::one(prec);
    for a in &coeffs[1..] {
        ypow = ypow.mul(y);
        acc = acc.mul(x).add(&ypow.scale(a));
    }
    acc
}

/// `chi_V = P(chi_half, chi8)`, known below the absolute grid cutoff `prec`.
pub fn character(p: &CharacterPoly, prec: i64) -> Result<QSeries> {
    check_normalized(&p.coeffs)?;
    let c2 = p.rank.twice();
    let m = p.top_nonzero();
    let coeffs = &p.coeffs[..=m];
    // every term x^{2c-16i} y^i starts at q^{-c/24}
    let rel = (prec + c2).max(1);
    let x = chi_half(rel - 1);
    let y = chi8(rel - 16);
    let x16 = x.pow(16)?;
    let base = x.pow(c2 - 16 * m as i64)?;
    let body = homogeneous(coeffs, &x16, &y, rel);
    Ok(base.mul(&body).truncate(prec))
}

/// The shadow character `alpha * P(sqrt(2) chi_fermi_shadow, chi8)`, with the
/// convention that a pure VOA is its own shadow.
pub fn shadow_character(p: &CharacterPoly, prec: i64) -> Result<QSeries> {
    if p.is_voa {
        return character(p, prec);
    }
    check_normalized(&p.coeffs)?;
    let c2 = p.rank.twice();
    let m = p.top_nonzero();
    let coeffs = &p.coeffs[..=m];
    // term i starts at grid exponent 4c - 48i; the i = m term is lowest
    let lowest = 2 * c2 - GRID * m as i64;
    let rel = (prec - lowest).max(1);
    let s = chi_fermi_shadow(2 + rel);
    let y = chi8(rel - 16);
    let s16 = s.pow(16)?.scale(&pow2(8));
    let base = s.pow(c2 - 16 * m as i64)?.scale(&pow2(p.rank.floor() - 8 * m as i64));
    let body = homogeneous(coeffs, &s16, &y, rel);
    Ok(base.mul(&body).truncate(prec))
}

/// Minimal conformal weight: leading exponent plus `c/24`.
pub fn minimal_weight(s: &QSeries, rank: Rank) -> Result<Rat> {
    let (e, _) = s.leading().ok_or(Error::WeightBeyondPrecision)?;
    Ok(frac(e, GRID) + rank.to_rat() / rat(24))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowReport {
    pub h: Rat,
    pub dim_at_h: Rat,
    pub shadow_char: QSeries,
}

impl ShadowReport {
    pub fn to_json(&self) -> Value {
        json!({
            "h": rat_to_json(&self.h),
            "dim_at_h": rat_to_json(&self.dim_at_h),
            "shadow_char": self.shadow_char.to_json(),
        })
    }
}

pub fn shadow_report(p: &CharacterPoly, prec: i64) -> Result<ShadowReport> {
    let shadow_char = shadow_character(p, prec)?;
    let h = minimal_weight(&shadow_char, p.rank)?;
    let dim_at_h = shadow_char.leading().map(|(_, c)| c.clone()).expect("nonzero after minimal_weight");
    Ok(ShadowReport { h, dim_at_h, shadow_char })
}

/// Basis characters `x^{2c-16i} y^i` for `i = 0..len`, known through `prec`.
fn basis_characters(rank: Rank, count: usize, prec: i64) -> Result<Vec<QSeries>> {
    (0..count)
        .map(|i| {
            let mut coeffs = vec![Rat::zero(); count];
            coeffs[i] = Rat::one();
            let unit = CharacterPoly { rank, coeffs, is_voa: false };
            character(&unit, prec)
        })
        .collect()
}

/// Recovers `A` from the leading coefficients of `chi_V` at
/// `q^{-c/24 + k/2}`, `k = 0, 1, ...`. At least `floor(c/8) + 1` values are
/// required; any further values must be reproduced by the solution.
pub fn decompose(rank: Rank, prefix: &[Rat]) -> Result<CharacterPoly> {
    let n = rank.top_index() + 1;
    if prefix.len() < n {
        return Err(Error::InconsistentPrefix(format!(
            "rank {rank} needs {n} leading coefficients, got {}",
            prefix.len()
        )));
    }
    let vac = vacuum_exp(rank);
    let prec = vac + 24 * prefix.len() as i64;
    let basis = basis_characters(rank, n, prec)?;
    let matrix: linalg::RatMatrix = (0..prefix.len())
        .map(|k| basis.iter().map(|b| b.coeff(vac + 24 * k as i64).expect("within precision")).collect())
        .collect();
    let coeffs = linalg::solve(&matrix[..n].to_vec(), &prefix[..n])
        .ok_or_else(|| Error::InconsistentPrefix("singular leading system".into()))?;
    for (k, row) in matrix.iter().enumerate().skip(n) {
        let got: Rat = row.iter().zip(&coeffs).map(|(m, a)| m * a).sum();
        if got != prefix[k] {
            return Err(Error::InconsistentPrefix(format!(
                "coefficient {k} is {} but the solution gives {}",
                fmt_rat(&prefix[k]),
                fmt_rat(&got)
            )));
        }
    }
    CharacterPoly::new(rank, coeffs, false)
}

/// Decomposes a full character series and checks the result reproduces it
/// on the whole known window.
pub fn decompose_series(rank: Rank, s: &QSeries) -> Result<CharacterPoly> {
    let vac = vacuum_exp(rank);
    let n = rank.top_index() + 1;
    let prefix = (0..n)
        .map(|k| {
            s.coeff(vac + 24 * k as i64)
                .ok_or_else(|| Error::InconsistentPrefix("series too short to decompose".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = decompose(rank, &prefix)?;
    let check = character(&p, s.prec())?;
    match check.agreement(s).first_mismatch {
        None => Ok(p),
        Some(e) => Err(Error::InconsistentPrefix(format!(
            "series is not a character polynomial of rank {rank}: mismatch at q^({})",
            crate::qseries::fmt_exp(e)
        ))),
    }
}

/// `2c(23½ - c)`, the least possible `dim V_1` when `dim V_{1/2} = 0`.
pub fn dim_one_bound(rank: Rank) -> Rat {
    let c = rank.to_rat();
    rat(2) * &c * (frac(47, 2) - &c)
}

/// The generic three-term expansion
/// `x^{2c} - (c/8) x^{2c-16}(x^16 - y) + D x^{2c-32}(x^16 - y)^2`,
/// `D = (dim V_1 - 2c(23½-c)) / 16^2`, re-expanded in the `x^{2c-16i} y^i` basis.
fn three_term_coeffs(rank: Rank, dim_one: &Rat) -> Result<Vec<Rat>> {
    if rank.twice() >= 48 {
        return Err(Error::FormulaOutOfRange(format!("rank {rank} is not below 24")));
    }
    let c = rank.to_rat();
    let d = (dim_one - dim_one_bound(rank)) / rat(256);
    let c8 = &c / rat(8);
    Ok(vec![Rat::one() - &c8 + &d, &c8 - rat(2) * &d, d])
}

/// The character polynomial of a rank `c < 24` SVOA with `dim V_{1/2} = 0`
/// and the given `dim V_1`.
pub fn three_term(rank: Rank, dim_one: &Rat) -> Result<CharacterPoly> {
    let mut coeffs = three_term_coeffs(rank, dim_one)?;
    let keep = rank.top_index() + 1;
    if coeffs[keep.min(3)..].iter().any(|a| !a.is_zero()) {
        return Err(Error::FormulaOutOfRange(format!(
            "at rank {rank} the polynomial has {keep} terms and forces dim V_1 = {}",
            fmt_rat(&dim_one_bound(rank))
        )));
    }
    coeffs.resize(keep, Rat::zero());
    CharacterPoly::new(rank, coeffs, false)
}

/// Like [`three_term`] but keeps all three terms, allowing negative powers of
/// `x` when `c < 16`.
pub fn three_term_laurent(rank: Rank, dim_one: &Rat) -> Result<CharacterPoly> {
    let mut coeffs = three_term_coeffs(rank, dim_one)?;
    coeffs.resize(coeffs.len().max(rank.top_index() + 1), Rat::zero());
    CharacterPoly::laurent(rank, coeffs)
}

/// `(2c(23½ - c), 2^{floor(c)-11} c)`: the least `dim V_1` and the number of
/// shadow states of weight `c/8 - 1` when the bound is met.
pub fn long_shadow_bounds(rank: Rank) -> (Rat, Rat) {
    (dim_one_bound(rank), pow2(rank.floor() - 11) * rank.to_rat())
}

/// `dim V'_{c/8-2} = alpha 2^{c-24} (dim V_1 - 2c(23½-c))`; `alpha 2^c = 2^{floor(c)}`.
pub fn shadow_deficit(rank: Rank, dim_one: &Rat) -> Result<Rat> {
    if rank.twice() >= 48 {
        return Err(Error::FormulaOutOfRange(format!("rank {rank} is not below 24")));
    }
    Ok(pow2(rank.floor() - 24) * (dim_one - dim_one_bound(rank)))
}

/// Shadow multiplicity factor for a tensor product: 2 when both ranks are
/// half-integral, otherwise 1.
pub fn lemma_factor(a: Rank, b: Rank) -> i64 {
    if !a.is_integral() && !b.is_integral() {
        2
    } else {
        1
    }
}

/// `P_{V⊗W} = P_V P_W`, re-expanded at rank `c + d`.
pub fn tensor(p: &CharacterPoly, q: &CharacterPoly) -> CharacterPoly {
    let rank = p.rank + q.rank;
    let len = (p.coeffs.len() + q.coeffs.len() - 1).max(rank.top_index() + 1);
    let mut coeffs = vec![Rat::zero(); len];
    for (i, a) in p.coeffs.iter().enumerate() {
        for (j, b) in q.coeffs.iter().enumerate() {
            coeffs[i + j] += a * b;
        }
    }
    // trailing zeros beyond the polynomial range are not Laurent terms
    while coeffs.len() > rank.top_index() + 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    CharacterPoly { rank, coeffs, is_voa: p.is_voa && q.is_voa }
}

/// Divides `P_V` by `x^r`: the SVOA left after splitting off `r` free fermions.
pub fn strip_fermions(p: &CharacterPoly, r: u32) -> Result<CharacterPoly> {
    let rank = p.rank.checked_sub_halves(r).ok_or_else(|| {
        Error::FermionCountExceeded(format!("cannot remove {r} fermions from rank {}", p.rank))
    })?;
    let keep = rank.top_index() + 1;
    if p.coeffs.iter().skip(keep).any(|a| !a.is_zero()) {
        return Err(Error::FermionCountExceeded(format!(
            "P is not divisible by x^{r} at rank {}",
            p.rank
        )));
    }
    let mut coeffs = p.coeffs.clone();
    coeffs.truncate(keep);
    coeffs.resize(keep, Rat::zero());
    Ok(CharacterPoly { rank, coeffs, is_voa: p.is_voa && r == 0 })
}

/// Outcome of checking the shadow weight bound and the vanishing pattern it forces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Verdict {
    pub rank: Rank,
    pub h: Rat,
    pub dim_at_h: Rat,
    /// `h <= c/8`.
    pub bound_holds: bool,
    /// `A_k = 0` for every `k > c/8 - h`.
    pub vanishing_holds: bool,
    /// `h = c/8`.
    pub extremal: bool,
    /// `P = x^{2c}`.
    pub pure_fermion: bool,
}

impl Theorem1Verdict {
    pub fn passes(&self) -> bool {
        self.bound_holds && self.vanishing_holds && self.extremal == self.pure_fermion
    }
}

pub fn theorem1_check(p: &CharacterPoly) -> Result<Theorem1Verdict> {
    // resolves every weight up to c/8 + 1
    let prec = 2 * p.rank.twice() + GRID;
    let report = shadow_report(p, prec)?;
    let c8 = p.rank.to_rat() / rat(8);
    let room = &c8 - &report.h;
    let vanishing_holds = p
        .coeffs
        .iter()
        .enumerate()
        .all(|(k, a)| rat(k as i64) <= room || a.is_zero());
    Ok(Theorem1Verdict {
        rank: p.rank,
        bound_holds: report.h <= c8,
        vanishing_holds,
        extremal: report.h == c8,
        pure_fermion: p.is_pure_fermion(),
        h: report.h,
        dim_at_h: report.dim_at_h,
    })
}

/// True when every known coefficient of both the character and the shadow
/// is nonnegative, the physicality condition on a candidate polynomial.
pub fn is_physical(p: &CharacterPoly, prec: i64) -> Result<bool> {
    Ok(character(p, prec)?.is_nonnegative() && shadow_character(p, prec)?.is_nonnegative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms;
    use proptest::prelude::*;

    const P: i64 = GRID * 6;

    fn r(c: &str) -> Rank {
        c.parse().unwrap()
    }

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(n, d)| frac(n, d)).collect()
    }

    fn poly(c: &str, a: &[(i64, i64)]) -> CharacterPoly {
        CharacterPoly::new(r(c), rats(a), false).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(CharacterPoly::new(r("16"), rats(&[(1, 1), (0, 1)]), false), Err(Error::InvalidPoly(_))));
        assert!(matches!(CharacterPoly::new(r("8"), rats(&[(1, 1), (1, 1)]), false), Err(Error::NotNormalized(_))));
        assert!(matches!(CharacterPoly::new(r("12"), rats(&[(0, 1), (1, 1)]), true), Err(Error::InvalidPoly(_))));
        assert!(CharacterPoly::new(r("16"), rats(&[(0, 1), (0, 1), (1, 1)]), true).is_ok());
    }

    #[test]
    fn single_fermion_character() {
        let ch = character(&poly("1/2", &[(1, 1)]), P).unwrap();
        assert!(ch.prec() >= P);
        assert!(ch.agrees(&modforms::chi_half(P)));
    }

    #[test]
    fn e8_character() {
        let ch = character(&poly("8", &[(0, 1), (1, 1)]), P).unwrap();
        assert!(ch.agrees(&modforms::chi8(P)));
        assert_eq!(ch.coeff(-16 + 48), Some(rat(248)));
    }

    #[test]
    fn rank16_long_shadow_character() {
        let p = poly("16", &[(-1, 1), (2, 1), (0, 1)]);
        let ch = character(&p, P).unwrap();
        // direct route: -x^32 + 2 x^16 y
        let x = modforms::chi_half(P + 64);
        let y = modforms::chi8(P + 64);
        let direct = &x.pow(32).unwrap().neg() + &x.pow(16).unwrap().mul(&y).scale(&rat(2));
        assert!(ch.agrees(&direct));
        assert!(direct.prec() >= P);
        assert_eq!(ch.leading(), Some((-32, &rat(1))));
        assert_eq!(ch.coeff(-32 + 24), Some(rat(0)));
        assert_eq!(ch.coeff(-32 + 48), Some(rat(240)));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(r("8"), &rats(&[(1, 1), (0, 1), (248, 1)])).unwrap().coeffs(), rats(&[(0, 1), (1, 1)]));
        assert_eq!(decompose(r("1/2"), &[rat(1)]).unwrap().coeffs(), &[rat(1)]);
        let vb = decompose(r("47/2"), &rats(&[(1, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(vb, three_term(r("47/2"), &rat(0)).unwrap());
        assert_eq!(vb.coeffs(), rats(&[(-31, 16), (47, 16), (0, 1)]));
        assert!(matches!(
            decompose(r("8"), &rats(&[(1, 1), (0, 1), (247, 1)])),
            Err(Error::InconsistentPrefix(_))
        ));
        assert!(matches!(decompose(r("16"), &[rat(1)]), Err(Error::InconsistentPrefix(_))));
    }

    #[test]
    fn decompose_round_trips_random_polys() {
        let p = poly("37/2", &[(3, 1), (-5, 2), (1, 2)]);
        let ch = character(&p, GRID * 3).unwrap();
        assert_eq!(decompose_series(r("37/2"), &ch).unwrap(), p);
        assert!(decompose_series(r("37/2"), &ch.add(&QSeries::monomial(48 * 2, rat(1), GRID * 3))).is_err());
    }

    #[test]
    fn three_term_examples() {
        assert_eq!(three_term(r("16"), &rat(240)).unwrap().coeffs(), rats(&[(-1, 1), (2, 1), (0, 1)]));
        assert_eq!(three_term(r("8"), &rat(248)).unwrap().coeffs(), rats(&[(0, 1), (1, 1)]));
        assert_eq!(three_term(r("12"), &rat(276)).unwrap().coeffs(), rats(&[(-1, 2), (3, 2)]));
        assert!(matches!(three_term(r("12"), &rat(275)), Err(Error::FormulaOutOfRange(_))));
        assert!(matches!(three_term(r("24"), &rat(0)), Err(Error::FormulaOutOfRange(_))));
        assert_eq!(three_term(r("0"), &rat(0)).unwrap().coeffs(), &[rat(1)]);
        let l = three_term_laurent(r("12"), &rat(275)).unwrap();
        assert!(l.is_laurent());
        assert_eq!(l.coeffs(), rats(&[(-129, 256), (193, 128), (-1, 256)]));
    }

    #[test]
    fn three_term_character_matches_formula() {
        // chi^{2c} - (c/8) chi^{2c-16}(chi^16 - chi_8) + D chi^{2c-32}(chi^16 - chi_8)^2 directly
        let c = r("39/2");
        let dim1 = rat(200);
        let x = modforms::chi_half(P + 64);
        let y = modforms::chi8(P + 64);
        let diff = &x.pow(16).unwrap() - &y;
        let d = (&dim1 - dim_one_bound(c)) / rat(256);
        let direct = &(&x.pow(39).unwrap() - &x.pow(23).unwrap().mul(&diff).scale(&frac(39, 16)))
            + &x.pow(7).unwrap().mul(&diff.pow(2).unwrap()).scale(&d);
        let ch = character(&three_term(c, &dim1).unwrap(), P).unwrap();
        assert!(ch.agrees(&direct));
        assert_eq!(ch.coeff(-39 + 48), Some(rat(200)));
    }

    #[test]
    fn shadow_examples() {
        let s = shadow_character(&poly("1/2", &[(1, 1)]), P).unwrap();
        assert!(s.agrees(&modforms::chi_fermi_shadow(P)));
        assert_eq!(s.leading(), Some((2, &rat(1))));

        let rep = shadow_report(&poly("16", &[(-1, 1), (2, 1), (0, 1)]), P).unwrap();
        assert_eq!(rep.shadow_char.leading(), Some((16, &rat(512))));
        assert_eq!(rep.h, rat(1));
        assert_eq!(rep.dim_at_h, rat(512));

        let e8 = shadow_character(&poly("8", &[(0, 1), (1, 1)]), P).unwrap();
        assert!(e8.agrees(&modforms::chi8(P)));
        assert!(shadow_character(&CharacterPoly::e8(), P).unwrap().agrees(&modforms::chi8(P)));
    }

    #[test]
    fn minimal_weights() {
        for twice in [1u32, 2, 7, 16, 32, 47] {
            let p = CharacterPoly::fermions(twice);
            let s = shadow_character(&p, 2 * twice as i64 + GRID).unwrap();
            assert_eq!(minimal_weight(&s, p.rank()).unwrap(), frac(twice as i64, 16));
            let ch = character(&p, GRID).unwrap();
            assert_eq!(minimal_weight(&ch, p.rank()).unwrap(), rat(0));
        }
        assert_eq!(minimal_weight(&QSeries::zero(10), r("1")), Err(Error::WeightBeyondPrecision));
    }

    #[test]
    fn theorem1_examples() {
        let v = theorem1_check(&poly("16", &[(1, 1), (0, 1), (0, 1)])).unwrap();
        assert!(v.passes() && v.extremal && v.pure_fermion);
        assert_eq!(v.h, rat(2));

        let v = theorem1_check(&poly("16", &[(-1, 1), (2, 1), (0, 1)])).unwrap();
        assert!(v.passes() && !v.extremal);
        assert_eq!(v.h, rat(1));

        let v = theorem1_check(&poly("8", &[(0, 1), (1, 1)])).unwrap();
        assert!(v.passes());
        assert_eq!(v.h, rat(0));
    }

    #[test]
    fn bounds_and_deficit() {
        assert_eq!(long_shadow_bounds(r("8")), (rat(248), rat(1)));
        assert_eq!(long_shadow_bounds(r("47/2")), (rat(0), rat(96256)));
        assert_eq!(long_shadow_bounds(r("22")), (rat(66), rat(45056)));
        assert_eq!(shadow_deficit(r("16"), &rat(240)).unwrap(), rat(0));
        assert_eq!(shadow_deficit(r("16"), &rat(496)).unwrap(), rat(1));
        assert_eq!(shadow_deficit(r("47/2"), &rat(0)).unwrap(), rat(0));
        assert!(shadow_deficit(r("24"), &rat(0)).is_err());
    }

    #[test]
    fn deficit_is_the_shadow_coefficient_two_below() {
        for (c, dim1) in [("12", 280), ("16", 300), ("20", 139), ("41/2", 150), ("47/2", 5)] {
            let rank = r(c);
            let dim1 = rat(dim1);
            let p = three_term_laurent(rank, &dim1).unwrap();
            // weight c/8 - 2 sits at grid exponent -2c + 6c - 96
            let e = 2 * rank.twice() - 96;
            let s = shadow_character(&p, e + 1).unwrap();
            assert_eq!(s.coeff(e), Some(shadow_deficit(rank, &dim1).unwrap()), "rank {c}");
        }
    }

    #[test]
    fn multiplier_identity_by_dyadic_bookkeeping() {
        // alpha * sqrt(2)^{2c-16i} written as 2^{e/2}: e = -[c half-integral] + (2c - 16i)
        for twice in 0u32..=96 {
            let rank = Rank::from_halves(twice);
            for i in 0..=rank.top_index() as i64 {
                let alpha_halves = if rank.is_integral() { 0 } else { -1 };
                let e = alpha_halves + (twice as i64 - 16 * i);
                assert_eq!(e % 2, 0);
                assert_eq!(e / 2, rank.floor() - 8 * i);
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let f = CharacterPoly::fermions(1);
        let ff = tensor(&f, &f);
        assert_eq!(ff, CharacterPoly::fermions(2));
        let lhs = shadow_character(&ff, P).unwrap();
        let sf = shadow_character(&f, P).unwrap();
        assert!(lhs.agrees(&sf.mul(&sf).scale(&rat(lemma_factor(f.rank(), f.rank())))));

        let unit = CharacterPoly::fermions(0);
        let p = poly("16", &[(-1, 1), (2, 1), (0, 1)]);
        assert_eq!(tensor(&p, &unit), p);

        let e = poly("8", &[(0, 1), (1, 1)]);
        let ee = tensor(&e, &e);
        assert_eq!(ee.coeffs(), rats(&[(0, 1), (0, 1), (1, 1)]));
        assert_eq!(lemma_factor(e.rank(), e.rank()), 1);
        assert!(tensor(&CharacterPoly::e8(), &CharacterPoly::e8()).is_voa());
    }

    #[test]
    fn strip_examples() {
        let p = CharacterPoly::fermions(32);
        assert_eq!(strip_fermions(&p, 32).unwrap(), CharacterPoly::fermions(0));
        assert_eq!(strip_fermions(&p, 0).unwrap(), p);
        let xy = poly("16", &[(0, 1), (1, 1), (0, 1)]);
        let w = strip_fermions(&xy, 16).unwrap();
        assert_eq!(w, poly("8", &[(0, 1), (1, 1)]));
        let hv = shadow_report(&xy, P).unwrap().h;
        let hw = shadow_report(&w, P).unwrap().h;
        assert_eq!(hv - hw, rat(1));
        assert!(matches!(strip_fermions(&poly("8", &[(0, 1), (1, 1)]), 1), Err(Error::FermionCountExceeded(_))));
        assert!(matches!(strip_fermions(&CharacterPoly::fermions(2), 3), Err(Error::FermionCountExceeded(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = poly("47/2", &[(-31, 16), (47, 16), (0, 1)]);
        assert_eq!(
            p.to_json().to_string(),
            r#"{"A":[[-31,16],[47,16],[0,1]],"c":[47,2],"is_voa":false}"#
        );
        assert_eq!(CharacterPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn shared_across_threads() {
        fn check<T: Send + Sync>() {}
        check::<CharacterPoly>();
        check::<ShadowReport>();
    }

    fn arb_poly() -> impl Strategy<Value = CharacterPoly> {
        (0u32..48).prop_flat_map(|twice| {
            let n = Rank::from_halves(twice).top_index();
            (Just(twice), proptest::collection::vec((-20i64..20, 1i64..5), n)).prop_map(|(twice, tail)| {
                let rank = Rank::from_halves(twice);
                let tail: Vec<Rat> = tail.into_iter().map(|(a, b)| frac(a, b)).collect();
                let head = Rat::one() - tail.iter().sum::<Rat>();
                let mut coeffs = vec![head];
                coeffs.extend(tail);
                CharacterPoly::new(rank, coeffs, false).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn character_starts_with_vacuum(p in arb_poly()) {
            let ch = character(&p, vacuum_exp(p.rank()) + 30).unwrap();
            prop_assert_eq!(ch.leading(), Some((vacuum_exp(p.rank()), &rat(1))));
        }

        #[test]
        fn shadow_weight_is_set_by_top_coefficient(p in arb_poly()) {
            // the i-th term starts at weight c/8 - i with coefficient A_i 2^{floor(c) - 8i}
            let v = theorem1_check(&p).unwrap();
            let m = p.top_nonzero() as i64;
            prop_assert_eq!(&v.h, &(p.rank().to_rat() / rat(8) - rat(m)));
            prop_assert_eq!(&v.dim_at_h, &(&p.coeffs()[m as usize] * pow2(p.rank().floor() - 8 * m)));
            prop_assert!(v.passes());
        }
    }
}
