//! Exact integer linear algebra on the tiny matrices a rank-4 lattice needs.
//!
//! Everything here works over i128 and never rounds. Matrix rows are lattice
//! vectors; dimensions are at most 4.

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// gcd of a whole vector; 0 for the zero vector.
pub(crate) fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by cofactor expansion; rows.len() == rows[0].len() <= 4.
pub(crate) fn det(rows: &[Vec<i128>]) -> i128 {
    let n = rows.len();
    match n {
        0 => 1,
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        _ => {
            let mut acc: i128 = 0;
            for j in 0..n {
                if rows[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                acc += s * rows[0][j] * det(&minor);
            }
            acc
        }
    }
}

pub(crate) fn det_i64(rows: &[&[i64]]) -> i128 {
    let m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    det(&m)
}

/// Solves B x = rhs by Cramer's rule, returning None when det(B) == 0 or a
/// coordinate is not integral. B given by rows.
pub(crate) fn solve_integer(rows: &[&[i64]], rhs: &[i128]) -> Option<Vec<i128>> {
    let n = rows.len();
    let base: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let d = det(&base);
    if d == 0 {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for col in 0..n {
        let mut m = base.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[col] = rhs[i];
        }
        let dc = det(&m);
        if dc % d != 0 {
            return None;
        }
        out.push(dc / d);
    }
    Some(out)
}

/// Solves B x = rhs over the rationals, returning the solution as
/// (numerators, common denominator) with denominator > 0, or None if singular.
pub(crate) fn solve_rational(rows: &[&[i64]], rhs: &[i128]) -> Option<(Vec<i128>, i128)> {
    let n = rows.len();
    let base: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let d = det(&base);
    if d == 0 {
        return None;
    }
    let mut nums = Vec::with_capacity(n);
    for col in 0..n {
        let mut m = base.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[col] = rhs[i];
        }
        nums.push(det(&m));
    }
    if d < 0 {
        Some((nums.into_iter().map(|x| -x).collect(), -d))
    } else {
        Some((nums, d))
    }
}

/// Rank over Q of an integer matrix, by fraction-free Gaussian elimination.
pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col];
        for i in row + 1..m.len() {
            let factor = m[i][col];
            if factor == 0 {
                continue;
            }
            for j in col..ncols {
                m[i][j] = m[i][j] * pivot - m[row][j] * factor;
            }
            // keep entries small; the gcd never changes the row space
            let g = m[i].iter().fold(0i128, |g, &x| {
                let (mut a, mut b) = (g.abs(), x.abs());
                while b != 0 {
                    (a, b) = (b, a % b);
                }
                a
            });
            if g > 1 {
                for x in m[i].iter_mut() {
                    *x /= g;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == m.len() {
            break;
        }
    }
    rank
}

/// Adjugate matrix: adj(B) · B = det(B) · I. Rows/columns up to 4.
pub(crate) fn adjugate(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = rows.len();
    let mut adj = vec![vec![0i128; n]; n];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // cofactor C_{j,i}: delete row j, column i
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != j)
                .map(|(_, rr)| {
                    rr.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != i)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            *entry = s * det(&minor);
        }
    }
    adj
}

/// One integer kernel vector of a (n-1) x n matrix of full rank, computed from
/// the signed maximal minors; None when the rank is deficient.
pub(crate) fn kernel_vector(rows: &[Vec<i128>], ncols: usize) -> Option<Vec<i128>> {
    debug_assert_eq!(rows.len() + 1, ncols);
    let mut out = Vec::with_capacity(ncols);
    for skip in 0..ncols {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let s = if skip % 2 == 0 { 1 } else { -1 };
        out.push(s * det(&minor));
    }
    if out.iter().all(|&x| x == 0) {
        None
    } else {
        Some(out)
    }
}

/// xorshift64* generator; deterministic sequences for probes and tie-break
/// randomization without an RNG dependency.
pub(crate) struct XorShift64(u64);

impl XorShift64 {
    pub(crate) fn new(seed: u64) -> Self {
        XorShift64(seed.max(1))
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub(crate) fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub(crate) fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % ((hi - lo + 1) as u64)) as i64
    }
}
