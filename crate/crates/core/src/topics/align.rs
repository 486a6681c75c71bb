use alloc::vec;
use alloc::vec::Vec;

use super::TopicsError;
use crate::math::{ln, sqrt};

/// Jensen-Shannon divergence in nats.
pub fn js_divergence(p: &[f64], q: &[f64]) -> f64 {
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        let m = 0.5 * (a + b);
        if a > 0.0 {
            total += 0.5 * a * ln(a / m);
        }
        if b > 0.0 {
            total += 0.5 * b * ln(b / m);
        }
    }
    total.max(0.0)
}

/// Square root of the base-2 Jensen-Shannon divergence; a metric in `[0, 1]`.
pub fn js_distance(p: &[f64], q: &[f64]) -> f64 {
    sqrt(js_divergence(p, q) / core::f64::consts::LN_2).min(1.0)
}

/// Pairwise distances between the rows of `a` and the rows of `b`.
pub fn topic_distance_matrix(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|p| b.iter().map(|q| js_distance(p, q)).collect())
        .collect()
}

/// Match each topic (row) of `a` to a distinct topic of `b`, minimizing
/// the summed Jensen-Shannon distance. Entry `i` of the result is the
/// index in `b` paired with topic `i` of `a`.
pub fn match_topics(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<Vec<usize>, TopicsError> {
    if a.len() > b.len() {
        return Err(TopicsError::InvalidParameter("cannot match more topics than are available"));
    }
    Ok(hungarian(&topic_distance_matrix(a, b)))
}

/// Minimum-cost assignment of rows to distinct columns (rows <= columns).
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let m = cost[0].len();
    // 1-based potentials and matching, column 0 is a sentinel.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    let mut owner = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut min_to = vec![f64::INFINITY; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if reduced < min_to[j] {
                    min_to[j] = reduced;
                    way[j] = j0;
                }
                if min_to[j] < delta {
                    delta = min_to[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_to[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=m {
        if owner[j] != 0 {
            assignment[owner[j] - 1] = j - 1;
        }
    }
    assignment
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_bounds() {
        let p = [0.5, 0.5, 0.0];
        let q = [0.0, 0.0, 1.0];
        assert_eq!(js_distance(&p, &p), 0.0);
        assert!((js_distance(&p, &q) - 1.0).abs() < 1e-12);
        assert_eq!(js_distance(&p, &q), js_distance(&q, &p));
    }

    #[test]
    fn hungarian_small_cases() {
        let cost = vec![vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0], vec![3.0, 2.0, 2.0]];
        let a = hungarian(&cost);
        let total: f64 = a.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
        assert_eq!(total, 5.0);
        assert_eq!(hungarian(&[vec![9.0, 1.0, 5.0]]), [1]);
    }

    #[test]
    fn permuted_topics_are_recovered() {
        let a = vec![vec![0.9, 0.05, 0.05], vec![0.05, 0.9, 0.05], vec![0.05, 0.05, 0.9]];
        let b = vec![a[2].clone(), a[0].clone(), a[1].clone()];
        assert_eq!(match_topics(&a, &b).unwrap(), [1, 2, 0]);
        assert!(match_topics(&a, &b[..2]).is_err());
    }
}
