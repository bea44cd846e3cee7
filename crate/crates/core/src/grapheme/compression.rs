//! Normalized compression distance with gzip as the compressor.
//!
//! Lengths are gzip member sizes: the raw DEFLATE stream plus the fixed
//! 10-byte header and 8-byte trailer. The constant overhead keeps very short,
//! highly repetitive strings from dominating the ratio.

use std::cell::RefCell;

use flate2::{Compress, Compression, FlushCompress, Status};

/// DEFLATE level used for every length measurement.
pub const COMPRESSION_LEVEL: u32 = 9;

thread_local! {
    static COMPRESSOR: RefCell<(Compress, Vec<u8>)> = RefCell::new((
        Compress::new(Compression::new(COMPRESSION_LEVEL), false),
        vec![0; 4096],
    ));
}

/// Header (10 bytes) plus CRC32 and size trailer (8 bytes) of a gzip member.
pub const GZIP_OVERHEAD: usize = 18;

/// Byte length of `data` compressed into a gzip member without file name or comment.
pub fn compressed_len(data: &[u8]) -> usize {
    deflate_len(data) + GZIP_OVERHEAD
}

/// Byte length of the raw DEFLATE stream for `data`.
pub fn deflate_len(data: &[u8]) -> usize {
    COMPRESSOR.with(|cell| {
        let (compress, buf) = &mut *cell.borrow_mut();
        compress.reset();
        loop {
            let consumed = compress.total_in() as usize;
            // Only the length matters; the output buffer is overwritten each round.
            let status = compress
                .compress(&data[consumed..], buf, FlushCompress::Finish)
                .expect("in-memory deflate cannot fail");
            if status == Status::StreamEnd {
                return compress.total_out() as usize;
            }
        }
    })
}

/// NCD from precomputed single-string lengths. The pair is concatenated in
/// lexicographic order so the result does not depend on argument order.
pub fn ncd_with_lengths(a: &[u8], b: &[u8], a_len: usize, b_len: usize) -> f64 {
    let (first, second) = if a <= b { (a, b) } else { (b, a) };
    let mut joined = Vec::with_capacity(first.len() + second.len());
    joined.extend_from_slice(first);
    joined.extend_from_slice(second);
    let joint = compressed_len(&joined);
    let (lo, hi) = (a_len.min(b_len), a_len.max(b_len));
    let ncd = (joint as f64 - lo as f64) / hi as f64;
    ncd.clamp(0.0, 1.0)
}

/// `(C(xy) − min(C(x), C(y))) / max(C(x), C(y))`, clamped into [0, 1].
pub fn ncd(a: &[u8], b: &[u8]) -> f64 {
    ncd_with_lengths(a, b, compressed_len(a), compressed_len(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use flate2::write::GzEncoder;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::io::Write;

    fn reference_len(data: &[u8]) -> usize {
        let mut enc = GzEncoder::new(Vec::new(), Compression::new(COMPRESSION_LEVEL));
        enc.write_all(data).unwrap();
        enc.finish().unwrap().len()
    }

    fn random_text(rng: &mut ChaCha8Rng, n: usize) -> String {
        (0..n).map(|_| rng.random_range('a'..='z')).collect()
    }

    #[test]
    fn length_matches_streaming_encoder() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [0, 1, 10, 200, 5000, 70_000] {
            let s = random_text(&mut rng, n);
            assert_eq!(compressed_len(s.as_bytes()), reference_len(s.as_bytes()), "n = {n}");
        }
    }

    #[test]
    fn self_distance_is_small() {
        let s = "ab".repeat(100);
        assert!(ncd(s.as_bytes(), s.as_bytes()) < 0.2);
        let s = "ab".repeat(200);
        assert!(ncd(s.as_bytes(), s.as_bytes()) < 0.2);
    }

    #[test]
    fn unrelated_random_strings_are_far() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_text(&mut rng, 200);
            let b = random_text(&mut rng, 200);
            assert!(ncd(a.as_bytes(), b.as_bytes()) > 0.7);
        }
    }

    #[test]
    fn symmetric() {
        let (a, b) = (b"the quick brown fox", b"quick brown foxes jump");
        assert_eq!(ncd(a, b), ncd(b, a));
    }
}
