//! Ratcliff-Obershelp matching: take the longest common substring, then
//! recurse on the unmatched pieces to its left and right.
//!
//! Ties between equally long substrings go to the one starting earliest in
//! the first string, then earliest in the second (the `difflib` rule, without
//! its junk heuristics). The classic procedure is not symmetric, so the
//! distance uses the larger match count of the two argument orders.

use std::collections::HashMap;

struct Matcher<'a> {
    a: &'a [char],
    b: &'a [char],
    /// Positions of each character in `b`, ascending.
    b2j: HashMap<char, Vec<usize>>,
    // Run lengths of matches ending at b[j - 1], indexed by j; reset sparsely.
    prev: Vec<usize>,
    cur: Vec<usize>,
    prev_touched: Vec<usize>,
    cur_touched: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(a: &'a [char], b: &'a [char]) -> Self {
        let mut b2j: HashMap<char, Vec<usize>> = HashMap::new();
        for (j, &c) in b.iter().enumerate() {
            b2j.entry(c).or_default().push(j);
        }
        Matcher {
            a,
            b,
            b2j,
            prev: vec![0; b.len() + 1],
            cur: vec![0; b.len() + 1],
            prev_touched: Vec::new(),
            cur_touched: Vec::new(),
        }
    }

    /// Longest common substring of `a[alo..ahi]` and `b[blo..bhi]` as `(i, j, len)`.
    fn longest_match(&mut self, alo: usize, ahi: usize, blo: usize, bhi: usize) -> (usize, usize, usize) {
        let (mut best_i, mut best_j, mut best) = (alo, blo, 0);
        for i in alo..ahi {
            if let Some(js) = self.b2j.get(&self.a[i]) {
                let start = js.partition_point(|&j| j < blo);
                for &j in &js[start..] {
                    if j >= bhi {
                        break;
                    }
                    let k = self.prev[j] + 1;
                    self.cur[j + 1] = k;
                    self.cur_touched.push(j + 1);
                    if k > best {
                        best_i = i + 1 - k;
                        best_j = j + 1 - k;
                        best = k;
                    }
                }
            }
            for &t in &self.prev_touched {
                self.prev[t] = 0;
            }
            self.prev_touched.clear();
            std::mem::swap(&mut self.prev, &mut self.cur);
            std::mem::swap(&mut self.prev_touched, &mut self.cur_touched);
        }
        for &t in &self.prev_touched {
            self.prev[t] = 0;
        }
        self.prev_touched.clear();
        (best_i, best_j, best)
    }

    fn matched_total(&mut self) -> usize {
        let mut total = 0;
        let mut stack = vec![(0, self.a.len(), 0, self.b.len())];
        while let Some((alo, ahi, blo, bhi)) = stack.pop() {
            let (i, j, k) = self.longest_match(alo, ahi, blo, bhi);
            if k == 0 {
                continue;
            }
            total += k;
            if alo < i && blo < j {
                stack.push((alo, i, blo, j));
            }
            if i + k < ahi && j + k < bhi {
                stack.push((i + k, ahi, j + k, bhi));
            }
        }
        total
    }
}

/// Characters matched by the recursive procedure with `a` as the first string.
pub fn matching_characters(a: &[char], b: &[char]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    Matcher::new(a, b).matched_total()
}

/// `1 − 2M / (len(a) + len(b))` with `M` the larger of the two orders' match counts.
pub fn ratcliff_obershelp_distance(a: &[char], b: &[char]) -> f64 {
    let total = a.len() + b.len();
    if total == 0 {
        return 0.0;
    }
    let matched = matching_characters(a, b).max(matching_characters(b, a));
    1.0 - 2.0 * matched as f64 / total as f64
}
