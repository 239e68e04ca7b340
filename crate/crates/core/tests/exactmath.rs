use hyperarr::exactmath::{
    pivot_index, poly_matrix_det, reduce_mod_form, subspace_dim, MultiPoly, RatMatrix, Rational,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Textbook Gauss-Jordan rank over `BigRational`, sharing no code with the library.
fn naive_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                let top = m[rank].clone();
                for (x, t) in m[i].iter_mut().zip(&top) {
                    *x -= t * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let r = rng.gen_range(1..=6);
    let c = rng.gen_range(1..=7);
    let sparse = rng.gen_bool(0.5);
    (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if sparse && rng.gen_bool(0.6) {
                        0
                    } else {
                        rng.gen_range(-3..=3)
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn rank_and_kernel_match_naive_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let rows = random_matrix(&mut rng);
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = RatMatrix::from_i64_rows(&refs);
        let rank = naive_rank(&rows);
        assert_eq!(m.rank(), rank, "{rows:?}");
        let k = m.kernel_basis();
        assert_eq!(k.len(), m.cols() - rank, "{rows:?}");
        assert_eq!(subspace_dim(&k), k.len());
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Rational::is_zero), "{rows:?}");
        }
    }
}

fn leibniz(m: &[Vec<MultiPoly>], n_vars: usize) -> MultiPoly {
    fn go(m: &[Vec<MultiPoly>], row: usize, used: &mut Vec<bool>, sign: bool, acc: MultiPoly, out: &mut MultiPoly) {
        if row == m.len() {
            *out = if sign { &*out - &acc } else { &*out + &acc };
            return;
        }
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            let inversions = used[c + 1..].iter().filter(|&&u| u).count();
            used[c] = true;
            go(m, row + 1, used, sign ^ (inversions % 2 == 1), &acc * &m[row][c], out);
            used[c] = false;
        }
    }
    let mut out = MultiPoly::zero(n_vars);
    go(m, 0, &mut vec![false; m.len()], false, MultiPoly::one(n_vars), &mut out);
    out
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> MultiPoly {
    let mut p = MultiPoly::one(n);
    for _ in 0..deg {
        let c: Vec<Rational> = (0..n).map(|_| Rational::from_int(rng.gen_range(-2..=2))).collect();
        p = &p * &MultiPoly::linear(&c);
    }
    p
}

#[test]
fn bareiss_matches_permutation_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let size = rng.gen_range(1..=4);
        let m: Vec<Vec<MultiPoly>> = (0..size)
            .map(|_| {
                (0..size)
                    .map(|_| {
                        let deg = rng.gen_range(0..=2);
                        random_form(&mut rng, 3, deg)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(poly_matrix_det(&m, 3).unwrap(), leibniz(&m, 3));
    }
}

#[test]
fn inverse_is_two_sided() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = RatMatrix::from_i64_rows(&refs);
        match m.inverse() {
            None => assert!(naive_rank(&rows) < n),
            Some(inv) => {
                for j in 0..n {
                    let col: Vec<Rational> = (0..n).map(|i| inv.get(i, j).clone()).collect();
                    let e = m.mul_vec(&col);
                    for (i, x) in e.iter().enumerate() {
                        assert_eq!(x.is_one(), i == j);
                        assert!(i == j || x.is_zero());
                    }
                }
            }
        }
    }
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -4i64..=4), 0..6).prop_map(|terms| {
        let mut p = MultiPoly::zero(3);
        for (e, c) in terms {
            let m = hyperarr::exactmath::Monomial::from_exponents(e);
            p.add_term(m, &Rational::from_int(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn reduction_is_a_normal_form(p in poly_strategy(), c in proptest::collection::vec(-3i64..=3, 3)) {
        prop_assume!(c.iter().any(|&x| x != 0));
        let coeffs: Vec<Rational> = c.iter().map(|&x| Rational::from_int(x)).collect();
        let alpha = MultiPoly::linear(&coeffs);
        let r = reduce_mod_form(&p, &alpha).unwrap();
        prop_assert!(!r.uses_var(pivot_index(&coeffs).unwrap()));
        prop_assert!((&p - &r).div_exact(&alpha).is_some());
        prop_assert_eq!(reduce_mod_form(&r, &alpha).unwrap(), r.clone());
        let multiple = &p * &alpha;
        prop_assert!(reduce_mod_form(&multiple, &alpha).unwrap().is_zero());
    }

    #[test]
    fn rational_field_laws(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, d);
        let reference = BigRational::new(BigInt::from(a), BigInt::from(b)) * BigRational::new(BigInt::from(c), BigInt::from(d));
        let prod = &x * &y;
        prop_assert_eq!(BigRational::new(prod.numer(), prod.denom()), reference);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.recip(), x.clone());
        }
        prop_assert!(prod.denom() >= BigInt::one());
    }
}
