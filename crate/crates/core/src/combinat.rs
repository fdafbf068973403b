//! Enumeration helpers: compositions, permutations, packed words.

/// All compositions of `n` (ordered sequences of positive parts summing to
/// `n`), in lexicographic order. The only composition of 0 is empty.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Compositions of `n` with exactly `k` parts.
pub fn compositions_with_parts(n: usize, k: usize) -> Vec<Vec<usize>> {
    compositions(n)
        .into_iter()
        .filter(|c| c.len() == k)
        .collect()
}

/// Permutations of `1..=n` as one-line words, lexicographically.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn go(n: usize, current: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                current.push(v as u32);
                go(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    go(n, &mut current, &mut used, &mut out);
    out
}

/// All packed words of length `n`, sorted lexicographically.
///
/// Generated as ordered set partitions of the positions: each set partition
/// (as a restricted growth string) is combined with every ordering of its
/// blocks.
pub fn packed_words(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn go(i: usize, blocks: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
        let n = rgs.len();
        if i == n {
            for order in permutations(blocks) {
                out.push(rgs.iter().map(|&b| order[b]).collect());
            }
            return;
        }
        for b in 0..=blocks {
            rgs[i] = b;
            go(i + 1, blocks.max(b + 1), rgs, out);
        }
    }
    rgs[0] = 0;
    go(1, 1, &mut rgs, &mut out);
    out.sort();
    out
}

/// Positions `i` (1-based, `i < n`) with `w[i] > w[i+1]`.
pub fn descent_set(w: &[u32]) -> Vec<usize> {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn descent_count(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

pub fn rise_count(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] < p[1]).count()
}

/// Partial sums `i1, i1+i2, ...` of a composition (including the total).
pub fn partial_sums(c: &[usize]) -> Vec<usize> {
    c.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}
