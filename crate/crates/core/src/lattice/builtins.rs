//! Named lattices: `Z^n`, the root lattices `A_n`, `D_n`, `E6`, `E7`, `E8`
//! and the glue lattices `D_n^+`.

use num_traits::{One, Zero};

use super::Lattice;
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::rational::{frac, rat, Rat};

fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()
}

/// `e_i + sign * e_j`.
fn pair(n: usize, i: usize, j: usize, sign: i64) -> Vec<Rat> {
    let mut v = unit(n, i);
    v[j] = rat(sign);
    v
}

fn build(rows: RatMatrix) -> Lattice {
    Lattice::from_basis(rows).expect("builtin basis is nondegenerate")
}

pub fn z(n: usize) -> Lattice {
    build(linalg::identity(n))
}

/// `{x in Z^n : sum x_i even}`, for `n >= 2`.
pub fn d(n: usize) -> Lattice {
    assert!(n >= 2, "D_n needs n >= 2");
    let mut rows: RatMatrix = (0..n - 1).map(|i| pair(n, i, i + 1, -1)).collect();
    rows.push(pair(n, n - 2, n - 1, 1));
    build(rows)
}

/// `D_n` glued with `(1/2, ..., 1/2)`, for `n` divisible by 4; unimodular.
pub fn d_plus(n: usize) -> Lattice {
    assert!(n >= 4 && n.is_multiple_of(4), "D_n^+ needs n divisible by 4");
    // drop e_1 - e_2 from the D_n basis; the glue vector restores it
    let mut rows: RatMatrix = (1..n - 1).map(|i| pair(n, i, i + 1, -1)).collect();
    rows.push(pair(n, n - 2, n - 1, 1));
    rows.push(vec![frac(1, 2); n]);
    build(rows)
}

pub fn e8() -> Lattice {
    d_plus(8)
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> Lattice {
    let mut g = linalg::identity(n);
    for row in g.iter_mut() {
        for x in row.iter_mut() {
            *x *= rat(2);
        }
    }
    for &(i, j) in edges {
        g[i][j] = rat(-1);
        g[j][i] = rat(-1);
    }
    Lattice::from_gram(g).expect("Cartan matrix of finite type is positive definite")
}

/// Root lattice `A_n`, from its Cartan matrix.
pub fn a(n: usize) -> Lattice {
    assert!(n >= 1, "A_n needs n >= 1");
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    from_edges(n, &edges)
}

pub fn e6() -> Lattice {
    from_edges(6, &[(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)])
}

pub fn e7() -> Lattice {
    from_edges(7, &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)])
}

/// `z1`..`z24`, `e6`, `e7`, `e8`, `aN`, `dN`, `dNplus`.
pub fn by_name(name: &str) -> Result<Lattice> {
    let lower = name.trim().to_ascii_lowercase();
    let unknown = || Error::UnknownBuiltin(name.to_string());
    match lower.as_str() {
        "e6" => return Ok(e6()),
        "e7" => return Ok(e7()),
        "e8" => return Ok(e8()),
        _ => {}
    }
    let (family, rest) = lower.split_at(lower.chars().next().map_or(0, char::len_utf8));
    let (digits, plus) = match rest.strip_suffix("plus").or_else(|| rest.strip_suffix('+')) {
        Some(d) => (d, true),
        None => (rest, false),
    };
    let n: usize = digits.parse().map_err(|_| unknown())?;
    match (family, plus) {
        ("z", false) if (1..=24).contains(&n) => Ok(z(n)),
        ("a", false) if n >= 1 => Ok(a(n)),
        ("d", false) if n >= 2 => Ok(d(n)),
        ("d", true) if n >= 4 && n.is_multiple_of(4) => Ok(d_plus(n)),
        _ => Err(unknown()),
    }
}
