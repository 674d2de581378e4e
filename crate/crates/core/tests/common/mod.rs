#![allow(dead_code)]

use minorlift::algebra::q;
use minorlift::{Monomial, Poly, RationalMatrix, Shape};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Homogeneous x-polynomial with up to `terms` monomials and coefficients in [-4, 4].
pub fn random_homogeneous(rng: &mut ChaCha8Rng, shape: Shape, degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(shape);
    for _ in 0..terms {
        let mut exps = vec![0u16; shape.num_vars()];
        for _ in 0..degree {
            exps[rng.gen_range(0..shape.num_x())] += 1;
        }
        p.add_term(Monomial::from_exponents(exps), q(rng.gen_range(-4..=4)));
    }
    p
}

/// Fillings of the diagram with entries in 1..=n, counted by brute force.
pub fn brute_ssyt(parts: &[u32], n: usize) -> u64 {
    let cells: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let total = (n as u64).pow(cells.len() as u32);
    let mut count = 0;
    for code in 0..total {
        let mut v = vec![vec![0u64; parts.first().copied().unwrap_or(0) as usize]; parts.len()];
        let mut c = code;
        for &(r, col) in &cells {
            v[r][col] = c % n as u64;
            c /= n as u64;
        }
        let ok = cells.iter().all(|&(r, col)| {
            (col == 0 || v[r][col - 1] <= v[r][col]) && (r == 0 || v[r - 1][col] < v[r][col])
        });
        count += ok as u64;
    }
    count
}

pub fn binom(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Entries of `left · X · right` as polynomials.
pub fn transformed_matrix(shape: Shape, left: &RationalMatrix, right: &RationalMatrix) -> Vec<Vec<Poly>> {
    let (m, n) = (shape.m, shape.n);
    let mut out = vec![vec![Poly::zero(shape); n]; m];
    for i in 0..m {
        for j in 0..n {
            for a in 0..m {
                for b in 0..n {
                    let c = &left[(i, a)] * &right[(b, j)];
                    out[i][j] += &Poly::x(shape, a + 1, b + 1).scale(&c);
                }
            }
        }
    }
    out
}
