//! Independent oracles shared by the integration tests. None of them touch
//! the continued-fraction machinery of the library.
#![allow(dead_code)]

use quadcf::{HpFloat, Precision};

/// Oracle working precision, well above the library default.
pub fn oracle_precision() -> Precision {
    Precision::new(70).unwrap()
}

pub fn hp_int(n: i64) -> HpFloat {
    HpFloat::from_int(n, oracle_precision())
}

/// `P_deg(x)` and `P_{deg-1}(x)` from `(k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}`.
fn legendre_values(deg: usize, x: &HpFloat) -> (HpFloat, HpFloat) {
    let mut prev = hp_int(1);
    let mut cur = x.clone();
    if deg == 0 {
        return (prev, hp_int(0));
    }
    for k in 1..deg as i64 {
        let next = (&(&hp_int(2 * k + 1) * x) * &cur - &hp_int(k) * &prev)
            .checked_div(&hp_int(k + 1))
            .unwrap();
        prev = std::mem::replace(&mut cur, next);
    }
    (cur, prev)
}

/// Zeros of the Legendre polynomial of degree `deg` in ascending order, by
/// Newton's method from the usual cosine estimates.
pub fn legendre_nodes(deg: usize) -> Vec<HpFloat> {
    let prec = oracle_precision();
    let tol = HpFloat::pow10(-65, prec);
    let one = hp_int(1);
    let d = hp_int(deg as i64);
    let mut nodes: Vec<HpFloat> = (0..deg)
        .map(|j| {
            let theta = std::f64::consts::PI * (j as f64 + 0.75) / (deg as f64 + 0.5);
            let mut x = HpFloat::from_f64(theta.cos(), prec);
            for _ in 0..100 {
                let (p, q) = legendre_values(deg, &x);
                let slope = (&d * &(&(&x * &p) - &q))
                    .checked_div(&(&(&x * &x) - &one))
                    .unwrap();
                let step = p.checked_div(&slope).unwrap();
                x = &x - &step;
                if step.abs() < tol {
                    break;
                }
            }
            x
        })
        .collect();
    nodes.sort();
    nodes
}

/// `½ ∫_{-1}^{1} ℓ_j(u) du` for the Lagrange basis on `nodes`.
pub fn lagrange_weights_u(nodes: &[HpFloat]) -> Vec<HpFloat> {
    (0..nodes.len())
        .map(|j| {
            // ascending coefficients of Π_{i≠j} (u - b_i)
            let mut coeffs = vec![hp_int(1)];
            let mut scale = hp_int(1);
            for (i, b) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![hp_int(0); coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    next[k + 1] = &next[k + 1] + c;
                    next[k] = &next[k] - &(c * b);
                }
                coeffs = next;
                scale = &scale * &(&nodes[j] - b);
            }
            let integral = coeffs
                .iter()
                .enumerate()
                .filter(|(k, _)| k % 2 == 0)
                .fold(hp_int(0), |acc, (k, c)| {
                    &acc + &c.checked_div(&hp_int(k as i64 + 1)).unwrap()
                });
            integral.checked_div(&scale).unwrap()
        })
        .collect()
}

pub fn close(a: &HpFloat, b: &HpFloat, tol: &HpFloat) -> bool {
    (a - b).abs() <= *tol
}
