//! Shared generators for the randomized test suites. Everything is
//! seeded, so failures reproduce.

// Each test target compiles its own copy and uses a subset.
#![allow(dead_code)]

use coevents::measure::MeasureSpec;
use coevents::scalar::{ComplexScalar, Scalar};
use coevents::HistorySpace;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn space_of(n: usize) -> HistorySpace {
    HistorySpace::new((0..n).map(|i| format!("h{i}"))).unwrap()
}

pub fn random_complex(rng: &mut ChaCha8Rng, span: i64) -> ComplexScalar {
    ComplexScalar::new(
        Scalar::from_int(rng.gen_range(-span..=span)),
        Scalar::from_int(rng.gen_range(-span..=span)),
    )
}

/// Classical weights mixing zeros with positive rationals; at least one
/// positive weight so the whole space is never precluded.
pub fn random_classical(rng: &mut ChaCha8Rng, n: usize) -> MeasureSpec {
    let space = space_of(n);
    let mut weights: Vec<Scalar> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.35) {
                Scalar::from_int(0)
            } else {
                Scalar::ratio(rng.gen_range(1..=6), rng.gen_range(1..=4)).unwrap()
            }
        })
        .collect();
    if weights.iter().all(Scalar::is_zero) {
        let i = rng.gen_range(0..n);
        weights[i] = Scalar::from_int(1);
    }
    MeasureSpec::classical(&space, weights).unwrap()
}

/// Amplitude vector with small Gaussian-integer entries, retried until
/// the whole space is not precluded.
pub fn random_amplitude(rng: &mut ChaCha8Rng, n: usize) -> MeasureSpec {
    let space = space_of(n);
    loop {
        let amps: Vec<ComplexScalar> = (0..n).map(|_| random_complex(rng, 2)).collect();
        let total = amps.iter().fold(
            ComplexScalar::zero(coevents::NumericMode::Exact),
            |acc, a| acc.add(a),
        );
        if !total.is_zero() {
            return MeasureSpec::amplitude(&space, amps).unwrap();
        }
    }
}

/// Positive-semidefinite decoherence matrix built as a sum of one or two
/// rank-one outer products, so the measure is weakly positive by
/// construction. Retried until the whole space is not precluded.
pub fn random_decoherence(rng: &mut ChaCha8Rng, n: usize) -> MeasureSpec {
    let space = space_of(n);
    loop {
        let matrix = random_psd_block(rng, n);
        let spec = MeasureSpec::decoherence(&space, matrix).unwrap();
        if !spec
            .is_precluded(&space.full_event())
            .expect("psd measure evaluates")
        {
            return spec;
        }
    }
}

/// Sum of one or two outer products `v v*` with small integer entries.
pub fn random_psd_block(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<ComplexScalar>> {
    let rank = if rng.gen_bool(0.5) { 1 } else { 2 };
    let zero = || ComplexScalar::new(Scalar::from_int(0), Scalar::from_int(0));
    let mut matrix = vec![vec![zero(); n]; n];
    for _ in 0..rank {
        let v: Vec<ComplexScalar> = (0..n).map(|_| random_complex(rng, 2)).collect();
        for i in 0..n {
            for j in 0..n {
                let term = v[i].mul(&v[j].conj());
                matrix[i][j] = matrix[i][j].add(&term);
            }
        }
    }
    matrix
}

/// Block sizes of at least two summing to `n` (requires `n >= 4`).
pub fn random_block_sizes(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let size = if remaining < 4 {
            remaining
        } else {
            rng.gen_range(2..=(remaining - 2).clamp(2, 4))
        };
        sizes.push(size.max(2).min(remaining));
        remaining -= sizes.last().unwrap();
    }
    sizes
}

/// Block-diagonal positive-semidefinite decoherence spec with the given
/// block sizes, retried until no block (hence not the whole space) is
/// precluded outright.
pub fn random_block_diagonal(
    rng: &mut ChaCha8Rng,
    sizes: &[usize],
) -> (MeasureSpec, Vec<Vec<usize>>) {
    let n: usize = sizes.iter().sum();
    let space = space_of(n);
    let zero = || ComplexScalar::new(Scalar::from_int(0), Scalar::from_int(0));
    loop {
        let mut matrix = vec![vec![zero(); n]; n];
        let mut blocks = Vec::new();
        let mut offset = 0;
        for &size in sizes {
            let block = random_psd_block(rng, size);
            for i in 0..size {
                for j in 0..size {
                    matrix[offset + i][offset + j] = block[i][j].clone();
                }
            }
            blocks.push((offset..offset + size).collect::<Vec<usize>>());
            offset += size;
        }
        let spec = MeasureSpec::decoherence(&space, matrix).unwrap();
        let all_blocks_alive = blocks.iter().all(|members| {
            let mask = members.iter().fold(0u32, |m, &i| m | (1 << i));
            let event = space.event_from_mask(mask).unwrap();
            !spec.is_precluded(&event).expect("psd measure evaluates")
        });
        if all_blocks_alive {
            return (spec, blocks);
        }
    }
}
