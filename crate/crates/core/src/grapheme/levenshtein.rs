//! Unit-cost Levenshtein distance over codepoints.
//!
//! Bit-parallel column recurrence (Myers 1999, blocked as in Hyyrö 2003):
//! the shorter string is the pattern, packed into 64-row blocks, and each
//! text character advances every block by one column in O(1) word ops.

use std::collections::HashMap;

const WORD: usize = 64;
const HIGH: u64 = 1 << 63;

/// Per-character match masks for a pattern split into 64-row blocks.
struct PatternMasks {
    blocks: usize,
    latin1: Vec<u64>,
    other: HashMap<char, Vec<u64>>,
}

impl PatternMasks {
    fn new(pattern: &[char]) -> Self {
        let blocks = pattern.len().div_ceil(WORD);
        let mut latin1 = vec![0u64; 256 * blocks];
        let mut other: HashMap<char, Vec<u64>> = HashMap::new();
        for (i, &c) in pattern.iter().enumerate() {
            let (block, bit) = (i / WORD, i % WORD);
            if (c as u32) < 256 {
                latin1[c as usize * blocks + block] |= 1 << bit;
            } else {
                other.entry(c).or_insert_with(|| vec![0; blocks])[block] |= 1 << bit;
            }
        }
        PatternMasks { blocks, latin1, other }
    }

    #[inline]
    fn get(&self, c: char, block: usize) -> u64 {
        if (c as u32) < 256 {
            self.latin1[c as usize * self.blocks + block]
        } else {
            self.other.get(&c).map_or(0, |m| m[block])
        }
    }
}

/// Advances one block by one column. `hin` is the horizontal delta entering
/// from the block above; the return value is the delta at row `out`.
#[inline(always)]
fn advance_block(pv: &mut u64, mv: &mut u64, mut eq: u64, hin: i32, out: u64) -> i32 {
    let xv = eq | *mv;
    if hin < 0 {
        eq |= 1;
    }
    let xh = ((eq & *pv).wrapping_add(*pv) ^ *pv) | eq;
    let mut ph = *mv | !(xh | *pv);
    let mut mh = *pv & xh;

    let hout = if ph & out != 0 {
        1
    } else if mh & out != 0 {
        -1
    } else {
        0
    };

    ph <<= 1;
    mh <<= 1;
    match hin.cmp(&0) {
        std::cmp::Ordering::Less => mh |= 1,
        std::cmp::Ordering::Greater => ph |= 1,
        std::cmp::Ordering::Equal => {}
    }
    *pv = mh | !(xv | ph);
    *mv = ph & xv;
    hout
}

/// Raw edit distance (insertions, deletions and substitutions at unit cost).
pub fn levenshtein(a: &[char], b: &[char]) -> usize {
    let (pattern, text) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if pattern.is_empty() {
        return text.len();
    }
    let masks = PatternMasks::new(pattern);
    let blocks = masks.blocks;
    let mut pv = vec![!0u64; blocks];
    let mut mv = vec![0u64; blocks];
    let last = blocks - 1;
    // Row of the pattern's final character inside the last block.
    let last_bit = 1u64 << ((pattern.len() - 1) % WORD);
    let mut score = pattern.len();

    for &c in text {
        let mut carry = 1;
        for block in 0..last {
            carry = advance_block(&mut pv[block], &mut mv[block], masks.get(c, block), carry, HIGH);
        }
        let delta = advance_block(&mut pv[last], &mut mv[last], masks.get(c, last), carry, last_bit);
        score = score.wrapping_add_signed(delta as isize);
    }
    score
}

/// `levenshtein / max(len)`, 0 for two empty strings.
pub fn normalized_levenshtein(a: &[char], b: &[char]) -> f64 {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 0.0;
    }
    levenshtein(a, b) as f64 / longest as f64
}
