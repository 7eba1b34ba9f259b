//! Index bookkeeping: permutations with signs, increasing tuples, shuffles.

/// All permutations of `0..m` in lexicographic order, each paired with its sign.
pub fn permutations(m: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::with_capacity(factorial(m));
    let mut current: Vec<usize> = (0..m).collect();
    loop {
        out.push((current.clone(), parity_sign(&current)));
        if !next_permutation(&mut current) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Sign of a permutation given as an image list, by counting inversions.
pub fn parity_sign(p: &[usize]) -> f64 {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// Strictly increasing `k`-tuples drawn from `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for r in (i + 1)..k {
                    c[r] = c[r - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `(k, l)`-shuffles of `k + l` positions: the positions routed to the left
/// factor, the positions routed to the right factor, and the shuffle sign.
pub fn shuffles(k: usize, l: usize) -> Vec<(Vec<usize>, Vec<usize>, f64)> {
    let m = k + l;
    combinations(m, k)
        .into_iter()
        .map(|left| {
            let right: Vec<usize> = (0..m).filter(|p| !left.contains(p)).collect();
            let image: Vec<usize> = left.iter().chain(right.iter()).copied().collect();
            let sign = parity_sign(&image);
            (left, right, sign)
        })
        .collect()
}

/// Sorts `idx`, returning the sign of the sorting permutation, or `None` if
/// an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut sorted = idx.to_vec();
    let mut sign = 1.0;
    // insertion sort keeps track of transpositions
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1] > sorted[j] {
            sorted.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sorted, sign))
    }
}

/// Iterates every tuple in `(0..n)^m` in row-major order.
pub struct TupleIter {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl TupleIter {
    pub fn new(n: usize, m: usize) -> Self {
        TupleIter {
            n,
            current: vec![0; m],
            done: n == 0 && m > 0,
        }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self.current.clone();
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.n {
                break;
            }
            self.current[i] = 0;
        }
        Some(item)
    }
}
