//! Linear algebra over the two-element field with rows packed in `u64`
//! (bit `j` is column `j`), enough for codes and lattices up to length 64.

pub const MAX_COLS: usize = 64;

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<u64>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let bit = 1u64 << col;
        let Some(p) = (r..rows.len()).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i] & bit != 0 {
                rows[i] ^= rows[r];
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// One solution `x` (as a bitmask) of `A x = b`, where row `i` of `A` is
/// `a_rows[i]` and `b_i = rhs[i]`; `None` when inconsistent.
pub fn solve(a_rows: &[u64], rhs: &[bool], ncols: usize) -> Option<u64> {
    assert!(ncols < MAX_COLS, "augmented column needs a spare bit");
    let aug_bit = 1u64 << ncols;
    let mut rows: Vec<u64> = a_rows
        .iter()
        .zip(rhs)
        .map(|(&r, &b)| if b { r | aug_bit } else { r })
        .collect();
    let pivots = rref(&mut rows, ncols + 1);
    let mut x = 0u64;
    for (row, &col) in rows.iter().zip(&pivots) {
        if col == ncols {
            return None;
        }
        if row & aug_bit != 0 {
            x |= 1 << col;
        }
    }
    Some(x)
}

pub fn weight(v: u64) -> u32 {
    v.count_ones()
}
