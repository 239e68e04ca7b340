#![allow(dead_code)]

use hyperarr::arrangement::{Arrangement, Hyperplane};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn arr(dim: usize, rows: &[&[i64]]) -> Arrangement {
    Arrangement::from_int_rows(dim, rows).unwrap()
}

pub fn h(c: &[i64]) -> Hyperplane {
    Hyperplane::from_ints(c).unwrap()
}

pub fn star_plus() -> Arrangement {
    arr(
        3,
        &[&[0, 1, 0], &[0, 0, 1], &[1, 0, -1], &[1, 0, 1], &[1, -1, 0], &[1, 1, 0]],
    )
}

pub fn star7() -> Arrangement {
    arr(
        3,
        &[
            &[1, 0, 0],
            &[1, 1, 0],
            &[1, -1, 0],
            &[1, 2, 0],
            &[1, -2, 0],
            &[0, 1, -1],
            &[0, 0, 1],
        ],
    )
}

pub fn braid() -> Arrangement {
    arr(
        3,
        &[
            &[1, 1, 0],
            &[1, -1, 0],
            &[1, 0, 1],
            &[1, 0, -1],
            &[0, 1, 1],
            &[0, 1, -1],
        ],
    )
}

pub fn boolean(n: usize) -> Arrangement {
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    arr(n, &refs)
}

pub fn b_n(n: i64) -> Arrangement {
    let mut rows: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, -1]];
    rows.extend((1..=n).map(|k| vec![1, k, 0]));
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    arr(3, &refs)
}

/// Parameters on the moment curve for which no three planes share a line and no
/// three disjoint pairwise intersections lie in a common plane.
pub const GENERIC_PARAMS: [i64; 6] = [0, 1, 3, 7, 12, 20];

/// `n <= 6` planes in general position in `K^3`.
pub fn generic(n: usize) -> Arrangement {
    let rows: Vec<Vec<i64>> = GENERIC_PARAMS[..n].iter().map(|&s| vec![1, s, s * s]).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    arr(3, &refs)
}

pub fn xyz4() -> Arrangement {
    arr(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, -1], &[0, 1, -1]])
}

/// Distinct random hyperplanes with coefficients in `-c..=c`, rejecting
/// arrangements whose rank is below `dim`.
pub fn random_arrangement(rng: &mut ChaCha8Rng, dim: usize, n: usize, c: i64) -> Arrangement {
    loop {
        let mut hs: Vec<Hyperplane> = Vec::new();
        while hs.len() < n {
            let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-c..=c)).collect();
            if let Ok(h) = Hyperplane::from_ints(&v) {
                if !hs.contains(&h) {
                    hs.push(h);
                }
            }
        }
        let a = Arrangement::new(dim, hs).unwrap();
        if a.rank() == dim {
            return a;
        }
    }
}
