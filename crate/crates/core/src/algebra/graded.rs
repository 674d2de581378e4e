use std::collections::HashMap;

use super::{Monomial, Poly, RationalMatrix, Shape};
use crate::error::{Error, Result};

/// Largest `mn` for which graded components are materialized.
pub const MAX_GRADED_VARS: usize = 12;
/// Largest degree for which graded components are materialized.
pub const MAX_GRADED_DEGREE: u32 = 8;

/// All x-monomials of total degree `degree`, in descending lexicographic order.
pub fn x_monomials(shape: &Shape, degree: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, nx: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos + 1 == nx {
            cur[pos] = left as u16;
            out.push(Monomial::from_exponents(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u16;
            rec(pos + 1, left - e, nx, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; shape.num_vars()];
    rec(0, degree, shape.num_x(), &mut cur, &mut out);
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Dimension of the degree-`degree` component of the ideal generated by `gens` in
/// `Q[x]`, as the exact rank of the coefficient matrix of all products
/// `monomial * generator` landing in that degree.
///
/// The matrix is split into the connected blocks of its row/column incidence graph and each
/// block is row-reduced separately; for torus-homogeneous generators the blocks are the
/// multidegree pieces.
pub fn graded_component_dim(shape: &Shape, gens: &[Poly], degree: u32) -> Result<usize> {
    if shape.num_x() > MAX_GRADED_VARS || degree > MAX_GRADED_DEGREE {
        return Err(Error::Infeasible(format!(
            "graded components are limited to mn <= {MAX_GRADED_VARS} and degree <= \
             {MAX_GRADED_DEGREE} (got mn = {}, degree = {degree})",
            shape.num_x()
        )));
    }
    for g in gens {
        shape.check_same(&g.shape())?;
        if !g.is_x_only() {
            return Err(Error::ReesVariable);
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }

    let columns = x_monomials(shape, degree);
    let col_of: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut rows: Vec<Vec<(usize, &super::Rational)>> = Vec::new();
    let mut multipliers: HashMap<u32, Vec<Monomial>> = HashMap::new();
    for g in gens {
        let Some(d) = g.homogeneous_degree() else { continue };
        if d > degree {
            continue;
        }
        let mults = multipliers.entry(degree - d).or_insert_with(|| x_monomials(shape, degree - d));
        for mu in mults.iter() {
            let row: Vec<(usize, &super::Rational)> =
                g.terms().map(|(m, c)| (col_of[&m.mul(mu)], c)).collect();
            rows.push(row);
        }
    }

    let mut parent: Vec<usize> = (0..columns.len()).collect();
    for row in &rows {
        let first = find(&mut parent, row[0].0);
        for &(c, _) in &row[1..] {
            let root = find(&mut parent, c);
            if root != first {
                parent[root] = first;
            }
        }
    }

    let mut blocks: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for c in 0..columns.len() {
        let root = find(&mut parent, c);
        blocks.entry(root).or_default().0.push(c);
    }
    for (r, row) in rows.iter().enumerate() {
        let root = find(&mut parent, row[0].0);
        blocks.get_mut(&root).unwrap().1.push(r);
    }

    let mut rank = 0;
    for (cols, row_ids) in blocks.values() {
        if row_ids.is_empty() {
            continue;
        }
        let local: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut mat = RationalMatrix::zeros(row_ids.len(), cols.len());
        for (i, &r) in row_ids.iter().enumerate() {
            for &(c, v) in &rows[r] {
                mat[(i, local[&c])] = v.clone();
            }
        }
        rank += mat.rank();
    }
    Ok(rank)
}

/// `dim [Q[x]]_degree = binomial(mn + degree - 1, degree)`.
pub fn ring_component_dim(shape: &Shape, degree: u32) -> usize {
    let k = shape.num_x() as u64;
    let d = degree as u64;
    let mut num: u128 = 1;
    for i in 0..d {
        num = num * (k + i) as u128 / (i + 1) as u128;
    }
    num as usize
}
