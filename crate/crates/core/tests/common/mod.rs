#![allow(dead_code)]

use phaseforge_core::{Kind, Matrix, Realization};
use proptest::prelude::*;

/// Raw material for a random realization: order plus enough uniforms for
/// every entry of A, B, C and a sparsity mask.
#[derive(Debug, Clone)]
pub struct Draw {
    pub n: usize,
    pub values: Vec<f64>,
    pub mask: Vec<bool>,
    pub margin: f64,
}

pub fn draw(max_order: usize) -> impl Strategy<Value = Draw> {
    (1..=max_order).prop_flat_map(|n| {
        let len = n * n + 2 * n;
        (
            Just(n),
            prop::collection::vec(0.0f64..1.0, len),
            prop::collection::vec(any::<bool>(), len),
            0.2f64..2.0,
        )
            .prop_map(|(n, values, mask, margin)| Draw {
                n,
                values,
                mask,
                margin,
            })
    })
}

fn pieces(d: &Draw) -> (Matrix, Vec<f64>, Vec<f64>) {
    let n = d.n;
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let k = i * n + j;
            // sub-diagonal chain keeps every state reachable from state 0
            let keep = d.mask[k] || i == j + 1;
            a[(i, j)] = if keep {
                d.values[k] + if i == j + 1 { 0.05 } else { 0.0 }
            } else {
                0.0
            };
        }
    }
    let b: Vec<f64> = (0..n)
        .map(|i| {
            let k = n * n + i;
            if i == 0 {
                0.1 + d.values[k]
            } else if d.mask[k] {
                d.values[k]
            } else {
                0.0
            }
        })
        .collect();
    let mut c: Vec<f64> = (0..n)
        .map(|i| {
            let k = n * n + n + i;
            if d.mask[k] {
                d.values[k]
            } else {
                0.0
            }
        })
        .collect();
    c[n - 1] += 0.1;
    (a, b, c)
}

/// Metzler, diagonally dominant (hence Hurwitz) and excitable.
pub fn continuous(d: &Draw) -> Realization {
    let (mut a, b, c) = pieces(d);
    for i in 0..d.n {
        let off: f64 = (0..d.n).filter(|&j| j != i).map(|j| a[(i, j)]).sum();
        a[(i, i)] = -(off + d.margin);
    }
    Realization::new(Kind::Continuous, a, b, c).unwrap()
}

/// Nonnegative with row sums at most 0.9 (spectral radius < 1) and excitable.
pub fn discrete(d: &Draw) -> Realization {
    let (a, b, c) = pieces(d);
    let n = d.n;
    let mut scaled = Matrix::zeros(n, n);
    for i in 0..n {
        let s: f64 = a.row(i).iter().sum();
        let target = 0.9 * d.margin / 2.0;
        for j in 0..n {
            scaled[(i, j)] = if s > 0.0 { a[(i, j)] / s * target } else { 0.0 };
        }
    }
    Realization::new(Kind::Discrete, scaled, b, c).unwrap()
}
