//! Exact kernels over the Gaussian rationals.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gca::{Rational, Scalar};

pub type Field = Complex<Rational>;

/// Converts a π-free scalar to a field element.
pub fn to_field(s: &Scalar) -> Result<Field> {
    let mut out = Field::zero();
    for (k, re, im) in s.parts() {
        if k != 0 {
            return Err(Error::InvalidParameter(
                "linear algebra needs coefficients without powers of pi".into(),
            ));
        }
        out = out + Field::new(re.clone(), im.clone());
    }
    Ok(out)
}

pub fn from_field(x: &Field) -> Scalar {
    Scalar::from_parts(x.re.clone(), x.im.clone(), 0)
}

fn inv(x: &Field) -> Field {
    let n = &x.re * &x.re + &x.im * &x.im;
    Field::new(&x.re / &n, -&x.im / &n)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Field>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let s = inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = &*x * &s;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone();
                let (head, tail) = if i < r {
                    let (h, t) = rows.split_at_mut(r);
                    (&mut h[i], &t[0])
                } else {
                    let (h, t) = rows.split_at_mut(i);
                    (&mut t[0], &h[r])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &(&k * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : M v = 0}`, one vector per free column in column order,
/// normalized to 1 at that column.
pub fn kernel(mut rows: Vec<Vec<Field>>, ncols: usize) -> Vec<Vec<Field>> {
    let pivots = rref(&mut rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Field::zero(); ncols];
        v[free] = Field::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Field {
        Field::new(Rational::from_integer(n.into()), Rational::zero())
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = &(&v[0] + &(&q(2) * &v[1])) + &(&q(3) * &v[2]);
            assert!(s.is_zero());
        }
    }
}
