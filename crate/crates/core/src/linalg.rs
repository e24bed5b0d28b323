//! Integer linear algebra: Smith normal form over ℤ and linear systems over ℤ/m.

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, s, t) with s·a + t·b = g ≥ 0; prefers (s,t) = (1,0) when a | b
    if a != 0 && b % a == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i128, 0i128, 0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    ext_gcd(a, b).0
}

/// Smith normal form `P·A·Q = D` of an integer matrix.
///
/// Returns the diagonal (length `min(rows, cols)`, each entry dividing the
/// next, zeros last) and the column transform `Q`.
pub(crate) fn smith_columns(a: &[Vec<i64>], cols: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let mut q: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| (i == j) as i128).collect()).collect();
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        swap_cols(&mut q, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let (g, s, u) = ext_gcd(m[t][t], m[i][t]);
                    let (x, y) = (m[t][t] / g, m[i][t] / g);
                    for j in t..cols {
                        let (a, b) = (m[t][j], m[i][j]);
                        m[t][j] = s * a + u * b;
                        m[i][j] = -y * a + x * b;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let (g, s, u) = ext_gcd(m[t][t], m[t][j]);
                    let (x, y) = (m[t][t] / g, m[t][j] / g);
                    col_combine(&mut m, t, j, s, u, x, y);
                    col_combine(&mut q, t, j, s, u, x, y);
                    clean = false;
                }
            }
            if clean || (t + 1..rows).all(|i| m[i][t] == 0) && (t + 1..cols).all(|j| m[t][j] == 0) {
                // enforce divisibility of the remaining block
                let p = m[t][t];
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                    }
                    None => break,
                }
            }
        }
        if m[t][t] < 0 {
            for j in t..cols {
                m[t][j] = -m[t][j];
            }
        }
        t += 1;
    }
    let diag = (0..n).map(|i| m[i][i] as i64).collect();
    let q = q.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
    (diag, q)
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

// col_t ← s·col_t + u·col_j ; col_j ← -y·col_t + x·col_j
fn col_combine(m: &mut [Vec<i128>], t: usize, j: usize, s: i128, u: i128, x: i128, y: i128) {
    for row in m.iter_mut() {
        let (a, b) = (row[t], row[j]);
        row[t] = s * a + u * b;
        row[j] = -y * a + x * b;
    }
}

/// Solve `A·x ≡ b (mod m)`; returns one solution with free variables zero.
pub(crate) fn solve_mod(a: &[Vec<i64>], b: &[i64], cols: usize, modulus: u64) -> Option<Vec<i64>> {
    let md = modulus as i128;
    let rows = a.len();
    let red = |x: i128| x.rem_euclid(md);
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| red(x as i128)).collect()).collect();
    let mut rhs: Vec<i128> = b.iter().map(|&x| red(x as i128)).collect();
    let mut q: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| (i == j) as i128).collect()).collect();
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let mut best: Option<(usize, usize, i128)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 {
                    let g = gcd(m[i][j], md);
                    if best.map_or(true, |(_, _, bg)| g < bg) {
                        best = Some((i, j, g));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(t, pi);
        rhs.swap(t, pi);
        swap_cols(&mut m, t, pj);
        swap_cols(&mut q, t, pj);
        loop {
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let (g, s, u) = ext_gcd(m[t][t], m[i][t]);
                    let (x, y) = (m[t][t] / g, m[i][t] / g);
                    for j in t..cols {
                        let (p, r) = (m[t][j], m[i][j]);
                        m[t][j] = red(s * p + u * r);
                        m[i][j] = red(-y * p + x * r);
                    }
                    let (p, r) = (rhs[t], rhs[i]);
                    rhs[t] = red(s * p + u * r);
                    rhs[i] = red(-y * p + x * r);
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let (g, s, u) = ext_gcd(m[t][t], m[t][j]);
                    let (x, y) = (m[t][t] / g, m[t][j] / g);
                    col_combine(&mut m, t, j, s, u, x, y);
                    col_combine(&mut q, t, j, s, u, x, y);
                    for row in m.iter_mut() {
                        row[t] = red(row[t]);
                        row[j] = red(row[j]);
                    }
                    for row in q.iter_mut() {
                        row[t] = red(row[t]);
                        row[j] = red(row[j]);
                    }
                }
            }
            if (t + 1..rows).all(|i| m[i][t] == 0) && (t + 1..cols).all(|j| m[t][j] == 0) {
                break;
            }
        }
        t += 1;
    }
    let mut y = vec![0i128; cols];
    for i in 0..rows {
        let d = if i < n { m[i][i] } else { 0 };
        let g = gcd(d, md);
        if rhs[i] % g != 0 {
            return None;
        }
        if i < cols && d != 0 {
            let mg = md / g;
            if mg > 1 {
                let (_, inv, _) = ext_gcd((d / g).rem_euclid(mg), mg);
                y[i] = ((rhs[i] / g) * inv).rem_euclid(mg);
            }
        }
    }
    let x: Vec<i64> = (0..cols).map(|i| red((0..cols).map(|j| q[i][j] * y[j]).sum::<i128>()) as i64).collect();
    debug_assert!(a.iter().zip(b).all(|(r, bi)| red(r.iter().zip(&x).map(|(p, v)| *p as i128 * *v as i128).sum::<i128>() - *bi as i128) == 0));
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_small() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (d, _) = smith_columns(&a, 3);
        assert_eq!(d, vec![2, 6, 12]);
        let (d, _) = smith_columns(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(d, vec![1, 6]);
    }

    #[test]
    fn smith_column_transform_is_unimodular_and_correct() {
        // rowspace preserved: A·Q has the same rowspace as D up to row ops
        let a = vec![vec![1, 1, -1], vec![2, 0, 0], vec![0, 4, 2]];
        let (d, q) = smith_columns(&a, 3);
        let aq: Vec<Vec<i64>> =
            a.iter().map(|r| (0..3).map(|j| (0..3).map(|k| r[k] * q[k][j]).sum()).collect()).collect();
        let (d2, _) = smith_columns(&aq, 3);
        assert_eq!(d, d2);
    }

    #[test]
    fn mod_solver_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let m = [2u64, 4, 6, 8, 9, 12][rng.gen_range(0..6)];
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(1..4);
            let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let b: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..m as i64)).collect();
            let mut exists = false;
            let total = (m as usize).pow(cols as u32);
            for code in 0..total {
                let x: Vec<i64> = (0..cols).map(|k| ((code / (m as usize).pow(k as u32)) % m as usize) as i64).collect();
                if a.iter().zip(&b).all(|(r, bi)| (r.iter().zip(&x).map(|(p, v)| p * v).sum::<i64>() - bi).rem_euclid(m as i64) == 0) {
                    exists = true;
                    break;
                }
            }
            let sol = solve_mod(&a, &b, cols, m);
            assert_eq!(sol.is_some(), exists, "a={a:?} b={b:?} m={m}");
            if let Some(x) = sol {
                for (r, bi) in a.iter().zip(&b) {
                    assert_eq!((r.iter().zip(&x).map(|(p, v)| p * v).sum::<i64>() - bi).rem_euclid(m as i64), 0);
                }
            }
        }
    }
}
