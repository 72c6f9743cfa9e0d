//! Kernels of linear maps over `Z/n`, via Smith normal form.

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Bezout data `(g, s, u)` with `s a + u b = g`; when `a | b` the trivial
/// combination is returned so that the pivot row or column is untouched.
fn bezout(a: i128, b: i128) -> (i128, i128, i128) {
    if b % a == 0 {
        (a, 1, 0)
    } else {
        egcd(a, b)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generators of `{x in (Z/n)^cols : M x = 0}` for a row-major `rows x cols`
/// matrix with entries in `0..n`.
pub(crate) fn kernel_mod(matrix: &[Vec<u64>], cols: usize, n: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return Vec::new();
    }
    let modn = |v: i128| -> u64 { v.rem_euclid(n as i128) as u64 };
    let mut m: Vec<Vec<u64>> = matrix.iter().filter(|r| r.iter().any(|&v| v % n != 0)).cloned().collect();
    for r in &mut m {
        for v in r.iter_mut() {
            *v %= n;
        }
    }
    let rows = m.len();
    // q accumulates column operations: M q = P^-1 D.
    let mut q: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
    let mut diag = Vec::new();

    // Column op on (i, j): col_i <- a col_i + b col_j, col_j <- c col_i + d col_j.
    let col_op = |m: &mut Vec<Vec<u64>>, q: &mut Vec<Vec<u64>>, i: usize, j: usize, a: i128, b: i128, c: i128, d: i128| {
        for r in m.iter_mut().chain(q.iter_mut()) {
            let (x, y) = (r[i] as i128, r[j] as i128);
            r[i] = modn(a * x + b * y);
            r[j] = modn(c * x + d * y);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: the entry generating the largest ideal, i.e. least gcd with n.
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 {
                    let g = gcd(v, n);
                    if best.map_or(true, |(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        m.swap(t, pi);
        if pj != t {
            col_op(&mut m, &mut q, t, pj, 0, 1, 1, 0);
        }
        loop {
            let mut changed = false;
            for j in (t + 1)..cols {
                let b = m[t][j];
                if b == 0 {
                    continue;
                }
                let a = m[t][t];
                let (g, s, u) = bezout(a as i128, b as i128);
                col_op(&mut m, &mut q, t, j, s, u, -(b as i128) / g, (a as i128) / g);
                changed = true;
            }
            for i in (t + 1)..rows {
                let b = m[i][t];
                if b == 0 {
                    continue;
                }
                let a = m[t][t];
                let (g, s, u) = bezout(a as i128, b as i128);
                let (ai, bi) = (-(b as i128) / g, (a as i128) / g);
                for k in 0..cols {
                    let (x, y) = (m[t][k] as i128, m[i][k] as i128);
                    m[t][k] = modn(s * x + u * y);
                    m[i][k] = modn(ai * x + bi * y);
                }
                changed = true;
            }
            if !changed {
                break;
            }
            if m[t].iter().skip(t + 1).all(|&v| v == 0) && (t + 1..rows).all(|i| m[i][t] == 0) {
                break;
            }
        }
        diag.push(m[t][t]);
        t += 1;
    }
    let mut gens = Vec::new();
    for k in 0..cols {
        let scale = if k < diag.len() { n / gcd(diag[k], n) } else { 1 };
        if scale % n == 0 {
            continue;
        }
        gens.push((0..cols).map(|r| (q[r][k] * scale) % n).collect());
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn in_kernel(m: &[Vec<u64>], x: &[u64], n: u64) -> bool {
        m.iter().all(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<u64>() % n == 0)
    }

    fn span_size(gens: &[Vec<u64>], cols: usize, n: u64) -> usize {
        let mut set = std::collections::BTreeSet::from([vec![0u64; cols]]);
        loop {
            let mut next = set.clone();
            for v in &set {
                for g in gens {
                    next.insert(v.iter().zip(g).map(|(a, b)| (a + b) % n).collect());
                }
            }
            if next.len() == set.len() {
                return set.len();
            }
            set = next;
        }
    }

    fn brute_kernel_size(m: &[Vec<u64>], cols: usize, n: u64) -> usize {
        let total = (n as usize).pow(cols as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let x: Vec<u64> = (0..cols)
                    .map(|_| {
                        let d = (c % n as usize) as u64;
                        c /= n as usize;
                        d
                    })
                    .collect();
                in_kernel(m, &x, n)
            })
            .count()
    }

    #[test]
    fn kernel_matches_brute_force() {
        let cases: Vec<(Vec<Vec<u64>>, usize, u64)> = vec![
            (vec![vec![2, 4, 0]], 3, 6),
            (vec![vec![3, 2], vec![0, 4]], 2, 12),
            (vec![vec![1, 1, 1], vec![0, 2, 4]], 3, 8),
            (vec![vec![0, 0]], 2, 5),
            (vec![vec![6, 9, 4], vec![2, 3, 0], vec![1, 0, 5]], 3, 12),
        ];
        for (m, cols, n) in cases {
            let gens = kernel_mod(&m, cols, n);
            for g in &gens {
                assert!(in_kernel(&m, g, n), "{m:?} {g:?}");
            }
            assert_eq!(span_size(&gens, cols, n), brute_kernel_size(&m, cols, n), "{m:?} mod {n}");
        }
    }
}
