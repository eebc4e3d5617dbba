use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gca::{GradedElement, Monomial, Scalar};
use crate::linalg::{from_field, kernel, to_field, Field};

use super::GdgaModel;

/// Normal monomials of degree `k`, in monomial order. Degree-0 generators
/// make this infinite, so `max_length` bounds the number of factors then.
pub fn degree_basis(m: &GdgaModel, k: u32, max_length: Option<u32>) -> Result<Vec<Monomial>> {
    let t = m.table();
    let has_scalars = (0..t.len()).any(|i| t.degree(i) == 0);
    if has_scalars && max_length.is_none() {
        return Err(Error::InvalidParameter(format!(
            "model {} has degree-0 generators; a length bound is required",
            m.name()
        )));
    }
    let max_len = max_length.unwrap_or(u32::MAX);
    let mut out = Vec::new();
    let mut exps = vec![0u16; t.len()];
    enumerate(m, 0, k, max_len, &mut exps, &mut out);
    out.retain(|mono| m.rewrite().is_normal(mono));
    out.sort();
    Ok(out)
}

fn enumerate(m: &GdgaModel, i: usize, left: u32, len_left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    let t = m.table();
    if i == t.len() {
        if left == 0 {
            out.push(Monomial::from_exponents(t, exps.clone()).expect("odd exponents bounded"));
        }
        return;
    }
    let deg = t.degree(i);
    let max_e = if t.is_odd(i) {
        len_left.min(1)
    } else if deg == 0 {
        len_left
    } else {
        (left / deg).min(len_left)
    };
    for e in 0..=max_e {
        if e * deg > left {
            break;
        }
        exps[i] = e as u16;
        enumerate(m, i + 1, left - e * deg, len_left - e, exps, out);
    }
    exps[i] = 0;
}

/// Basis of the degree-`k` basic elements `{x : ι_a x = 0, L_a x = 0}`,
/// from one exact kernel computation over the monomial basis.
pub fn basic_subspace(m: &GdgaModel, k: u32, max_length: Option<u32>) -> Result<Vec<GradedElement>> {
    let basis = degree_basis(m, k, max_length)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    // Row index per (operator, output monomial).
    let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, Field)>> = Vec::with_capacity(basis.len());
    for mono in &basis {
        let x = GradedElement::monomial(m.table(), mono.clone(), Scalar::one());
        let mut col = Vec::new();
        for a in 0..m.dim() {
            for (op, img) in [(2 * a, m.apply_iota(a, &x)), (2 * a + 1, m.apply_lie(a, &x))] {
                for (mm, c) in img.terms() {
                    let next = row_index.len();
                    let r = *row_index.entry((op, mm.clone())).or_insert(next);
                    col.push((r, to_field(c)?));
                }
            }
        }
        columns.push(col);
    }
    let mut rows = vec![vec![Field::default(); basis.len()]; row_index.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            rows[r][j] = v;
        }
    }
    let ker = kernel(rows, basis.len());
    Ok(ker
        .into_iter()
        .map(|v| {
            let mut e = m.zero();
            for (mono, c) in basis.iter().zip(v.iter()) {
                e.add_term(mono.clone(), from_field(c));
            }
            e
        })
        .collect())
}
