//! Dimensions of reductive Lie algebras and the table of rank `c` SVOAs
//! meeting the weight-one bound `dim V_1 = 2c(23.5 - c)`.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{rat_to_json, Rank, Rat};
use crate::svoa;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    U1,
}

/// A component `X_{rank,level}^multiplicity` of an affine Kac-Moody label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieLabel {
    pub family: Family,
    pub rank: u32,
    pub level: u32,
    pub multiplicity: u32,
}

impl LieLabel {
    pub fn new(family: Family, rank: u32, level: u32, multiplicity: u32) -> Result<LieLabel> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::U1 => rank == 1,
        };
        if !ok || level == 0 || multiplicity == 0 {
            return Err(Error::InvalidLabel(format!("{family:?}{rank} level {level} multiplicity {multiplicity}")));
        }
        Ok(LieLabel { family, rank, level, multiplicity })
    }

    /// Simply laced at level one, the shape of a lattice VOA's weight-one algebra.
    pub fn is_lattice_type(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E | Family::U1) && self.level == 1
    }
}

/// Dimension of one simple (or abelian) component.
fn simple_dim(family: Family, n: u64) -> u64 {
    match family {
        Family::A => n * (n + 2),
        Family::B | Family::C => n * (2 * n + 1),
        Family::D => n * (2 * n - 1),
        Family::E => match n {
            6 => 78,
            7 => 133,
            _ => 248,
        },
        Family::F => 52,
        Family::G => 14,
        Family::U1 => 1,
    }
}

/// Multiplicity times the dimension of the simple algebra; the level is ignored.
pub fn dim_simple(l: &LieLabel) -> u64 {
    l.multiplicity as u64 * simple_dim(l.family, l.rank as u64)
}

impl fmt::Display for LieLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::U1 => write!(f, "U1")?,
            fam => write!(f, "{fam:?}{}", self.rank)?,
        }
        if self.level != 1 {
            write!(f, ",{}", self.level)?;
        }
        if self.multiplicity != 1 {
            write!(f, "^{}", self.multiplicity)?;
        }
        Ok(())
    }
}

impl FromStr for LieLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<LieLabel> {
        match parse_labels(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }
}

/// Parses a product of components such as `A11E6`, `D8,2 B4`, `A_{1,2}^{15}`
/// or `U1^23`. The empty string is the empty product.
pub fn parse_labels(s: &str) -> Result<Vec<LieLabel>> {
    let bad = || Error::InvalidLabel(s.to_string());
    let chars: Vec<char> = s.chars().filter(|c| !matches!(c, '_' | '{' | '}') && !c.is_whitespace()).collect();
    let mut i = 0;
    let number = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>().parse().ok()
    };
    let mut out = Vec::new();
    while i < chars.len() {
        let family = match chars[i].to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            'U' => Family::U1,
            _ => return Err(bad()),
        };
        i += 1;
        let rank = number(&mut i).ok_or_else(bad)?;
        let mut level = 1;
        if i < chars.len() && chars[i] == ',' {
            i += 1;
            level = number(&mut i).ok_or_else(bad)?;
        }
        let mut multiplicity = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            multiplicity = number(&mut i).ok_or_else(bad)?;
        }
        out.push(LieLabel::new(family, rank, level, multiplicity)?);
    }
    Ok(out)
}

/// `(2c, dim V_1, weight-one algebra)` for each rank in the table.
const TABLE: [(u32, u64, &str); 20] = [
    (16, 248, "E8"),
    (24, 276, "D12"),
    (28, 266, "E7^2"),
    (30, 255, "A15"),
    (31, 248, "E8,2"),
    (32, 240, "D8^2"),
    (34, 221, "A11 E6"),
    (35, 210, "C10"),
    (36, 198, "D6^3"),
    (37, 185, "E7,2 F4"),
    (38, 171, "A7^2 D5"),
    (39, 156, "D8,2 B4"),
    (40, 140, "D4^5"),
    (41, 123, "A9,2 A4"),
    (42, 105, "A3^7"),
    (43, 86, "D4,2^2 C2^3"),
    (44, 66, "A1^22"),
    (45, 45, "A1,2^15"),
    (46, 23, "U1^23"),
    (47, 0, ""),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub rank: Rank,
    pub dim_one: u64,
    pub labels: Vec<LieLabel>,
}

pub fn table() -> Vec<TableEntry> {
    TABLE
        .iter()
        .map(|&(twice, dim_one, labels)| TableEntry {
            rank: Rank::from_halves(twice),
            dim_one,
            labels: parse_labels(labels).expect("table labels parse"),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCheck {
    pub rank: Rank,
    /// `2c(23.5 - c)`, recomputed from the rank.
    pub expected: Rat,
    pub stored: u64,
    pub lie_sum: u64,
    pub labels: Vec<LieLabel>,
    pub lattice_candidate: bool,
    pub pass: bool,
}

impl TableCheck {
    pub fn labels_text(&self) -> String {
        if self.labels.is_empty() {
            "0".to_string()
        } else {
            self.labels.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c": rat_to_json(&self.rank.to_rat()),
            "expected": rat_to_json(&self.expected),
            "lie_sum": self.lie_sum,
            "pass": self.pass,
        })
    }
}

pub fn check_entry(e: &TableEntry) -> TableCheck {
    let expected = svoa::dim_one_bound(e.rank);
    let lie_sum: u64 = e.labels.iter().map(dim_simple).sum();
    let stored = Rat::from_integer(e.dim_one.into());
    let pass = stored == expected && Rat::from_integer(lie_sum.into()) == expected;
    TableCheck {
        rank: e.rank,
        expected,
        stored: e.dim_one,
        lie_sum,
        labels: e.labels.clone(),
        lattice_candidate: e.rank.is_integral() && e.labels.iter().all(LieLabel::is_lattice_type),
        pass,
    }
}

pub fn verify_table() -> Vec<TableCheck> {
    table().iter().map(check_entry).collect()
}

pub fn report_to_json(rows: &[TableCheck]) -> Value {
    Value::Array(rows.iter().map(TableCheck::to_json).collect())
}
