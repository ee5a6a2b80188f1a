//! Dense linear algebra over the prime field F_p.

/// Rank of the span of `rows` over F_p, by Gaussian elimination.
pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inverse(m[rank][c], p);
        for x in &mut m[rank] {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Multiplicative inverse of a nonzero residue modulo the prime `p`.
pub fn inverse(a: u64, p: u64) -> u64 {
    pow(a % p, p - 2, p)
}

pub fn pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// True iff `m` is `λ·I` for some `λ` in F_p. The empty matrix counts as scalar.
pub fn is_scalar(m: &[Vec<u64>], p: u64) -> bool {
    let Some(first) = m.first() else {
        return true;
    };
    let lambda = first[0] % p;
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &x)| x % p == if i == j { lambda } else { 0 })
    })
}
