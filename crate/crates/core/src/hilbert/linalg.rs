//! Linear-algebra colength engine for hypersurface quotients.
//!
//! `l(S/(m^[q] + (f))) = q^n - rank(mult_f)` where `mult_f` is
//! multiplication by `f` on the `q^n`-dimensional monomial basis of
//! `S/m^[q]`. For (weighted-)homogeneous `f` the matrix is block
//! diagonal across graded pieces and each block is eliminated
//! separately; this is what makes `q = 27` in four variables reachable.

use crate::error::Error;
use crate::ffpoly::{Polynomial, PrimeModulus};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct LinalgOptions {
    /// Maximum number of basis monomials allowed in one graded block.
    pub mem_cap_block: usize,
    /// Grading weights; defaults to unit weights.
    pub weights: Option<Vec<u32>>,
}

impl Default for LinalgOptions {
    fn default() -> Self {
        LinalgOptions { mem_cap_block: 1 << 19, weights: None }
    }
}

/// Monomials of `[0,q)^n` encoded in mixed radix `q`.
fn encode(exp: &[u32], q: u64) -> u64 {
    exp.iter().rev().fold(0u64, |acc, &e| acc * q + e as u64)
}

fn decode(mut code: u64, q: u64, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push((code % q) as u32);
        code /= q;
    }
    out
}

/// Groups the `q^n` basis monomials by weighted degree.
fn graded_blocks(n: usize, q: u64, weights: &[u32]) -> Vec<Vec<u64>> {
    let max_deg: usize = weights.iter().map(|&w| w as usize * (q as usize - 1)).sum();
    let mut blocks: Vec<Vec<u64>> = vec![Vec::new(); max_deg + 1];
    let mut exp = vec![0u32; n];
    loop {
        let deg: usize = exp
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as usize * w as usize)
            .sum();
        blocks[deg].push(encode(&exp, q));
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == n {
                return blocks;
            }
            exp[i] += 1;
            if (exp[i] as u64) < q {
                break;
            }
            exp[i] = 0;
            i += 1;
        }
    }
}

/// `l(S/(m^[q] + (f)))` via matrix rank. `q` must be a power of the
/// characteristic and `f` nonzero.
pub fn colength_linalg(f: &Polynomial, q: u64, opts: &LinalgOptions) -> Result<u64, Error> {
    let p = f.modulus();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_power(q) {
        return Err(Error::NotPowerOfP(q, p.p()));
    }
    let n = f.nvars();
    let total = (q as u64).pow(n as u32);
    let unit_weights = vec![1u32; n];
    let weights = opts.weights.as_deref().unwrap_or(&unit_weights);

    let rank_sum = if f.is_homogeneous(weights) {
        let fdeg: usize = f.terms()[0].0.weighted_degree(weights) as usize;
        let blocks = graded_blocks(n, q, weights);
        let mut sum = 0u64;
        for d in 0..blocks.len() {
            if blocks[d].is_empty() || d + fdeg >= blocks.len() {
                continue;
            }
            let target = &blocks[d + fdeg];
            if target.is_empty() {
                continue;
            }
            if blocks[d].len() > opts.mem_cap_block {
                return Err(Error::MemoryCap {
                    needed: blocks[d].len(),
                    cap: opts.mem_cap_block,
                });
            }
            sum += block_rank(f, q, &blocks[d], target, p)?;
        }
        sum
    } else {
        if total as usize > opts.mem_cap_block {
            return Err(Error::MemoryCap { needed: total as usize, cap: opts.mem_cap_block });
        }
        let all: Vec<u64> = (0..total).collect();
        block_rank(f, q, &all, &all, p)?
    };
    Ok(total - rank_sum)
}

/// Rank of multiplication-by-`f` from the span of `source` monomials to
/// the span of `target` monomials (codes in radix `q`).
fn block_rank(
    f: &Polynomial,
    q: u64,
    source: &[u64],
    target: &[u64],
    p: PrimeModulus,
) -> Result<u64, Error> {
    let n = f.nvars();
    let target_index: HashMap<u64, u32> = target
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as u32))
        .collect();
    // Build rows of the transpose: one sparse row per source monomial
    // (rank is transpose-invariant and this layout is column-major in
    // the original matrix).
    let mut rows: Vec<Vec<(u32, u32)>> = Vec::with_capacity(source.len());
    for &s in source {
        let exp = decode(s, q, n);
        let mut row: Vec<(u32, u32)> = Vec::new();
        for (m, c) in f.terms() {
            let mut t = Vec::with_capacity(n);
            let mut ok = true;
            for i in 0..n {
                let e = exp[i] + m.0[i];
                if e as u64 >= q {
                    ok = false;
                    break;
                }
                t.push(e);
            }
            if !ok {
                continue;
            }
            let code = encode(&t, q);
            if let Some(&idx) = target_index.get(&code) {
                row.push((idx, *c));
            }
        }
        if !row.is_empty() {
            row.sort_by_key(|&(c, _)| c);
            rows.push(row);
        }
    }
    Ok(sparse_rank(rows, target.len(), p))
}

/// Exact rank over `F_p` by sparse Gaussian elimination with a
/// min-column-count pivot heuristic (approximate Markowitz). Rows are
/// sparse, sorted by column.
pub(crate) fn sparse_rank(mut rows: Vec<Vec<(u32, u32)>>, ncols: usize, p: PrimeModulus) -> u64 {
    use std::collections::BinaryHeap;

    let nrows = rows.len();
    let mut active_row: Vec<bool> = vec![true; nrows];
    // Which rows touch each column; maintained lazily (stale entries are
    // skipped on read).
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut col_count: Vec<u32> = vec![0; ncols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
            col_count[c as usize] += 1;
        }
    }
    let mut heap: BinaryHeap<std::cmp::Reverse<(u32, u32)>> = (0..ncols)
        .filter(|&c| col_count[c] > 0)
        .map(|c| std::cmp::Reverse((col_count[c], c as u32)))
        .collect();
    let mut col_done: Vec<bool> = vec![false; ncols];

    let row_has = |row: &Vec<(u32, u32)>, c: u32| row.binary_search_by_key(&c, |&(c, _)| c).is_ok();

    let mut rank = 0u64;
    while let Some(std::cmp::Reverse((count, col))) = heap.pop() {
        let c = col as usize;
        if col_done[c] {
            continue;
        }
        // Revalidate the lazily maintained count. Duplicates can appear
        // when an entry cancels and fill-in later reintroduces it.
        col_rows[c].sort_unstable();
        col_rows[c].dedup();
        col_rows[c].retain(|&r| active_row[r as usize] && row_has(&rows[r as usize], col));
        let current = col_rows[c].len() as u32;
        if current == 0 {
            col_done[c] = true;
            continue;
        }
        if current != count {
            heap.push(std::cmp::Reverse((current, col)));
            continue;
        }
        // Pivot: the shortest active row containing this column.
        let &pivot = col_rows[c]
            .iter()
            .min_by_key(|&&r| rows[r as usize].len())
            .unwrap();
        let pr = pivot as usize;
        // Normalize the pivot row.
        let plc = rows[pr]
            .iter()
            .find(|&&(cc, _)| cc == col)
            .map(|&(_, v)| v)
            .unwrap();
        let inv = p.inv(plc);
        if inv != 1 {
            for (_, v) in rows[pr].iter_mut() {
                *v = p.mul(*v, inv);
            }
        }
        let pivot_row = std::mem::take(&mut rows[pr]);
        active_row[pr] = false;
        col_done[c] = true;
        rank += 1;

        let victims: Vec<u32> = col_rows[c]
            .iter()
            .copied()
            .filter(|&r| r != pivot)
            .collect();
        for r in victims {
            let ri = r as usize;
            let coeff = rows[ri]
                .iter()
                .find(|&&(cc, _)| cc == col)
                .map(|&(_, v)| v)
                .unwrap();
            let merged = row_sub_mul(&rows[ri], coeff, &pivot_row, p);
            // Register new fill-in columns.
            for &(cc, _) in &merged {
                if !row_has(&rows[ri], cc) {
                    col_rows[cc as usize].push(r);
                    let cnt = col_rows[cc as usize].len() as u32;
                    if !col_done[cc as usize] {
                        heap.push(std::cmp::Reverse((cnt, cc)));
                    }
                }
            }
            rows[ri] = merged;
            if rows[ri].is_empty() {
                active_row[ri] = false;
            }
        }
    }
    rank
}

/// `a - coeff * b` over sorted sparse rows.
fn row_sub_mul(
    a: &[(u32, u32)],
    coeff: u32,
    b: &[(u32, u32)],
    p: PrimeModulus,
) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if i == a.len() {
            let (c, v) = b[j];
            let v = p.neg(p.mul(coeff, v));
            if v != 0 {
                out.push((c, v));
            }
            j += 1;
        } else if j == b.len() {
            out.push(a[i]);
            i += 1;
        } else if a[i].0 < b[j].0 {
            out.push(a[i]);
            i += 1;
        } else if a[i].0 > b[j].0 {
            let (c, v) = b[j];
            let v = p.neg(p.mul(coeff, v));
            if v != 0 {
                out.push((c, v));
            }
            j += 1;
        } else {
            let v = p.sub(a[i].1, p.mul(coeff, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of multiplication by `f^power` on `S/m^[q]`, computed blockwise
/// as ranks of composed graded maps (never expanding `f^power`). This is
/// the work-horse behind Frobenius splitting numbers.
pub fn rank_of_power_blockwise(
    f: &Polynomial,
    q: u64,
    power: u64,
    opts: &LinalgOptions,
) -> Result<u64, Error> {
    let p = f.modulus();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_power(q) {
        return Err(Error::NotPowerOfP(q, p.p()));
    }
    let n = f.nvars();
    let unit_weights = vec![1u32; n];
    let weights = opts.weights.as_deref().unwrap_or(&unit_weights);
    if !f.is_homogeneous(weights) {
        return Err(Error::UnsupportedRingClass(
            "power ranks need a homogeneous hypersurface".into(),
        ));
    }
    if power == 0 {
        return Ok((q).pow(n as u32));
    }
    let fdeg: usize = f.terms()[0].0.weighted_degree(weights) as usize;
    let blocks = graded_blocks(n, q, weights);
    for b in &blocks {
        if b.len() > opts.mem_cap_block {
            return Err(Error::MemoryCap { needed: b.len(), cap: opts.mem_cap_block });
        }
    }
    let index: Vec<HashMap<u64, u32>> = blocks
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect())
        .collect();

    let mut total = 0u64;
    for start in 0..blocks.len() {
        if blocks[start].is_empty() {
            continue;
        }
        let final_deg = start + fdeg * power as usize;
        if final_deg >= blocks.len() || blocks[final_deg].is_empty() {
            continue;
        }
        // Image basis after each application of mult-by-f, kept in
        // reduced echelon form per target block.
        let mut vectors: Vec<Vec<u32>> = Vec::new();
        // Step 1: columns of the first block map.
        let mut deg = start + fdeg;
        for &s in &blocks[start] {
            if let Some(v) = apply_f(f, q, s, &index[deg], p, weights, deg, blocks[deg].len()) {
                vectors.push(v);
            }
        }
        let mut basis = echelonize(vectors, p);
        for _ in 1..power {
            if basis.is_empty() {
                break;
            }
            let next_deg = deg + fdeg;
            if next_deg >= blocks.len() || blocks[next_deg].is_empty() {
                basis.clear();
                break;
            }
            let mut next: Vec<Vec<u32>> = Vec::new();
            for v in &basis {
                if let Some(img) =
                    apply_f_vector(f, q, v, &blocks[deg], &index[next_deg], p, blocks[next_deg].len())
                {
                    next.push(img);
                }
            }
            basis = echelonize(next, p);
            deg = next_deg;
        }
        total += basis.len() as u64;
    }
    Ok(total)
}

/// Image of a single basis monomial under multiplication by `f`,
/// expressed in the target block; `None` when it maps to zero.
#[allow(clippy::too_many_arguments)]
fn apply_f(
    f: &Polynomial,
    q: u64,
    code: u64,
    target_index: &HashMap<u64, u32>,
    p: PrimeModulus,
    _weights: &[u32],
    _target_deg: usize,
    target_len: usize,
) -> Option<Vec<u32>> {
    let n = f.nvars();
    let exp = decode(code, q, n);
    let mut out = vec![0u32; target_len];
    let mut any = false;
    for (m, c) in f.terms() {
        let mut t = Vec::with_capacity(n);
        let mut ok = true;
        for i in 0..n {
            let e = exp[i] + m.0[i];
            if e as u64 >= q {
                ok = false;
                break;
            }
            t.push(e);
        }
        if !ok {
            continue;
        }
        if let Some(&idx) = target_index.get(&encode(&t, q)) {
            out[idx as usize] = p.add(out[idx as usize], *c);
            any = true;
        }
    }
    if any {
        Some(out)
    } else {
        None
    }
}

/// Image of a dense vector (over `source_block` monomials) under
/// multiplication by `f`.
fn apply_f_vector(
    f: &Polynomial,
    q: u64,
    v: &[u32],
    source_block: &[u64],
    target_index: &HashMap<u64, u32>,
    p: PrimeModulus,
    target_len: usize,
) -> Option<Vec<u32>> {
    let n = f.nvars();
    let mut out = vec![0u32; target_len];
    let mut any = false;
    for (i, &coeff) in v.iter().enumerate() {
        if coeff == 0 {
            continue;
        }
        let exp = decode(source_block[i], q, n);
        for (m, c) in f.terms() {
            let mut t = Vec::with_capacity(n);
            let mut ok = true;
            for k in 0..n {
                let e = exp[k] + m.0[k];
                if e as u64 >= q {
                    ok = false;
                    break;
                }
                t.push(e);
            }
            if !ok {
                continue;
            }
            if let Some(&idx) = target_index.get(&encode(&t, q)) {
                let add = p.mul(coeff, *c);
                out[idx as usize] = p.add(out[idx as usize], add);
                if out[idx as usize] != 0 {
                    any = true;
                }
            }
        }
    }
    // `any` may be stale after cancellation; verify.
    if any && out.iter().any(|&x| x != 0) {
        Some(out)
    } else {
        None
    }
}

/// Reduced echelon basis of a set of dense vectors.
fn echelonize(vectors: Vec<Vec<u32>>, p: PrimeModulus) -> Vec<Vec<u32>> {
    let mut basis: Vec<(usize, Vec<u32>)> = Vec::new(); // (pivot index, vector)
    for mut v in vectors {
        loop {
            let lead = match v.iter().position(|&x| x != 0) {
                None => break,
                Some(i) => i,
            };
            if let Some((_, b)) = basis.iter().find(|(pi, _)| *pi == lead) {
                let c = v[lead];
                for (x, y) in v.iter_mut().zip(b.iter()) {
                    *x = p.sub(*x, p.mul(c, *y));
                }
            } else {
                let inv = p.inv(v[lead]);
                if inv != 1 {
                    for x in v.iter_mut() {
                        *x = p.mul(*x, inv);
                    }
                }
                basis.push((lead, v));
                break;
            }
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_polynomial;

    fn poly(p: u64, vars: &[&str], s: &str) -> Polynomial {
        let p = PrimeModulus::new(p).unwrap();
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        parse_polynomial(s, p, &names).unwrap()
    }

    #[test]
    fn coordinate_hypersurface() {
        // f = x in n=2, q=4, p=2 -> 4 = q^(n-1)
        let f = poly(2, &["x", "y"], "x");
        assert_eq!(colength_linalg(&f, 4, &LinalgOptions::default()).unwrap(), 4);
    }

    #[test]
    fn small_dense_example() {
        // f = x+y, p=2, q=2 -> 2 (4 - rank 2)
        let f = poly(2, &["x", "y"], "x+y");
        assert_eq!(colength_linalg(&f, 2, &LinalgOptions::default()).unwrap(), 2);
    }

    #[test]
    fn quadric_closed_form() {
        // f = x^2+y^2+z^2, p=3, q=9 -> 121 = (3*81-1)/2
        let f = poly(3, &["x", "y", "z"], "x^2+y^2+z^2");
        assert_eq!(colength_linalg(&f, 9, &LinalgOptions::default()).unwrap(), 121);
    }

    #[test]
    fn rejects_bad_q() {
        let f = poly(3, &["x"], "x");
        assert!(matches!(
            colength_linalg(&f, 8, &LinalgOptions::default()),
            Err(Error::NotPowerOfP(8, 3))
        ));
    }

    #[test]
    fn memory_cap_is_typed() {
        let f = poly(2, &["x", "y"], "x+y");
        let opts = LinalgOptions { mem_cap_block: 2, weights: None };
        assert!(matches!(
            colength_linalg(&f, 4, &opts),
            Err(Error::MemoryCap { .. })
        ));
    }

    #[test]
    fn power_rank_matches_expanded_polynomial() {
        // rank(mult by f^k) computed by composition equals the rank of
        // the expanded power's multiplication matrix.
        let f = poly(5, &["x", "y"], "x^2+3*x*y+y^2");
        let q = 5;
        for k in 1..=3u32 {
            let expanded = f.pow(k);
            let direct = colength_linalg(&expanded, q, &LinalgOptions::default()).unwrap();
            let rank_direct = q * q - direct;
            let rank_comp =
                rank_of_power_blockwise(&f, q as u64, k as u64, &LinalgOptions::default()).unwrap();
            assert_eq!(rank_comp, rank_direct, "k={}", k);
        }
    }

    #[test]
    fn power_rank_regular_and_nonreduced() {
        // f = x: rank of x^(q-1) is q^(n-1)
        let f = poly(3, &["x", "y"], "x");
        assert_eq!(
            rank_of_power_blockwise(&f, 9, 8, &LinalgOptions::default()).unwrap(),
            9
        );
        // f = x^2: f^(q-1) = x^(2q-2) kills everything for q >= 2
        let f = poly(3, &["x", "y"], "x^2");
        assert_eq!(
            rank_of_power_blockwise(&f, 9, 8, &LinalgOptions::default()).unwrap(),
            0
        );
    }
}
