//! Separable exponential sums over tensor lattices.
//!
//! Every operator in this crate is a sum of the form
//! `U(x) = Σ_n c_n Π_a exp(i x_a ν_{a,n})` over a lattice `x ∈ X_0 × … × X_k`,
//! or its adjoint. Each factor is tabulated once per axis, so the inner
//! loops are complex multiply-adds. Work is split over the outermost axis;
//! every output entry is reduced in a fixed order, so results do not depend
//! on the thread count.

use num_complex::Complex64;
use rayon::prelude::*;

/// `exp(i · coord · freq)` for every `(coord, freq)` pair, row-major in coord.
pub(crate) struct AxisTable {
    len: usize,
    width: usize,
    data: Vec<Complex64>,
}

impl AxisTable {
    pub(crate) fn new(coords: &[f64], freqs: &[f64]) -> Self {
        let n = freqs.len();
        let mut data = Vec::with_capacity(coords.len() * n);
        for &x in coords {
            data.extend(freqs.iter().map(|&f| {
                let (s, c) = (x * f).sin_cos();
                Complex64::new(c, s)
            }));
        }
        AxisTable { len: coords.len(), width: n, data }
    }

    fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.width..(i + 1) * self.width]
    }
}

/// `U[i_0, …, i_k] = Σ_n coeffs[n] Π_a T_a[i_a, n]`, flat row-major output.
pub(crate) fn forward(tables: &[AxisTable], coeffs: &[Complex64]) -> Vec<Complex64> {
    assert!(!tables.is_empty());
    let inner: usize = tables[1..].iter().map(|t| t.len).product();
    let mut out = vec![Complex64::new(0.0, 0.0); tables[0].len * inner];
    out.par_chunks_mut(inner.max(1)).enumerate().for_each(|(i0, chunk)| {
        let partial: Vec<Complex64> =
            tables[0].row(i0).iter().zip(coeffs).map(|(t, c)| t * c).collect();
        forward_rec(&tables[1..], &partial, chunk);
    });
    out
}

fn forward_rec(tables: &[AxisTable], partial: &[Complex64], out: &mut [Complex64]) {
    match tables {
        [] => out[0] = partial.iter().sum(),
        [last] => {
            for (i, o) in out.iter_mut().enumerate() {
                *o = dot(last.row(i), partial);
            }
        }
        [head, rest @ ..] => {
            let inner: usize = rest.iter().map(|t| t.len).product();
            let mut buf = vec![Complex64::new(0.0, 0.0); partial.len()];
            for (i, chunk) in out.chunks_mut(inner).enumerate() {
                for ((b, t), p) in buf.iter_mut().zip(head.row(i)).zip(partial) {
                    *b = t * p;
                }
                forward_rec(rest, &buf, chunk);
            }
        }
    }
}

#[inline]
fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re - x.im * y.im;
        im += x.re * y.im + x.im * y.re;
    }
    Complex64::new(re, im)
}

/// `R[n] = Σ_{lattice} values[i] Π_a conj(T_a[i_a, n])`.
pub(crate) fn adjoint(tables: &[AxisTable], n: usize, values: &[Complex64]) -> Vec<Complex64> {
    assert!(!tables.is_empty());
    let inner: usize = tables[1..].iter().map(|t| t.len).product();
    let parts: Vec<Vec<Complex64>> = values
        .par_chunks(inner.max(1))
        .enumerate()
        .map(|(i0, chunk)| {
            let mut acc = adjoint_rec(&tables[1..], n, chunk);
            for (a, t) in acc.iter_mut().zip(tables[0].row(i0)) {
                *a *= t.conj();
            }
            acc
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for p in parts {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    out
}

fn adjoint_rec(tables: &[AxisTable], n: usize, values: &[Complex64]) -> Vec<Complex64> {
    match tables {
        [] => vec![values[0]; n],
        [last] => {
            let mut acc = vec![Complex64::new(0.0, 0.0); n];
            for (i, v) in values.iter().enumerate() {
                if *v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (a, t) in acc.iter_mut().zip(last.row(i)) {
                    a.re += t.re * v.re + t.im * v.im;
                    a.im += t.re * v.im - t.im * v.re;
                }
            }
            acc
        }
        [head, rest @ ..] => {
            let inner: usize = rest.iter().map(|t| t.len).product();
            let mut acc = vec![Complex64::new(0.0, 0.0); n];
            for (i, chunk) in values.chunks(inner).enumerate() {
                let sub = adjoint_rec(rest, n, chunk);
                for ((a, s), t) in acc.iter_mut().zip(sub).zip(head.row(i)) {
                    *a += s * t.conj();
                }
            }
            acc
        }
    }
}

/// Direct sum at arbitrary points: `Σ_n coeffs[n] exp(i Σ_a x_a ν_{a,n})`.
pub(crate) fn pointwise(freqs: &[Vec<f64>], coeffs: &[Complex64], x: &[f64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, c) in coeffs.iter().enumerate() {
        let phase: f64 = x.iter().zip(freqs).map(|(x, f)| x * f[n]).sum();
        let (s, co) = phase.sin_cos();
        acc += c * Complex64::new(co, s);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(coords: &[Vec<f64>], freqs: &[Vec<f64>], coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut pts = vec![vec![]];
        for axis in coords {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<f64>| {
                    axis.iter().map(move |&x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        pts.iter().map(|x| pointwise(freqs, coeffs, x)).collect()
    }

    #[test]
    fn forward_matches_direct_sum() {
        let coords = [vec![-1.0, 0.3, 2.0], vec![0.0, 1.5], vec![-0.5, 0.25, 0.7, 3.0]];
        let freqs = [vec![0.1, -0.7, 1.3], vec![0.4, 0.2, -1.1], vec![2.0, 0.0, 0.5]];
        let coeffs = vec![Complex64::new(1.0, 0.5), Complex64::new(-0.3, 2.0), Complex64::new(0.7, -0.1)];
        for k in 1..=3 {
            let tables: Vec<AxisTable> =
                (0..k).map(|a| AxisTable::new(&coords[a], &freqs[a])).collect();
            let fast = forward(&tables, &coeffs);
            let slow = brute(&coords[..k], &freqs[..k], &coeffs);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn adjoint_is_conjugate_transpose() {
        let coords = [vec![-1.0, 0.3, 2.0], vec![0.0, 1.5], vec![-0.5, 0.25, 0.7, 3.0]];
        let freqs = [vec![0.1, -0.7], vec![0.4, 0.2], vec![2.0, 0.0]];
        let tables: Vec<AxisTable> = (0..3).map(|a| AxisTable::new(&coords[a], &freqs[a])).collect();
        let vals: Vec<Complex64> =
            (0..24).map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.7).cos())).collect();
        let r = adjoint(&tables, 2, &vals);
        for n in 0..2 {
            let mut e = vec![Complex64::new(0.0, 0.0); 2];
            e[n] = Complex64::new(1.0, 0.0);
            let col = brute(&coords, &freqs, &e);
            let expect: Complex64 = col.iter().zip(&vals).map(|(c, v)| c.conj() * v).sum();
            assert!((r[n] - expect).norm() < 1e-13);
        }
    }
}
